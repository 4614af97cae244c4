//! Seeded random closed terms for property tests and the soundness suite.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::normalize::{normalize_for, Congruence};
use crate::term::{query_bound, Atom, BasicForm, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn leaf<R: Rng>(rng: &mut R, atoms: &[Atom], with_atoms: bool) -> Term {
    let options = if with_atoms { 2 + atoms.len() } else { 2 };
    match rng.gen_range(0..options) {
        0 => Term::True,
        1 => Term::False,
        i => Term::Atom(atoms[i - 2].clone()),
    }
}

/// Term of depth at most `depth`; leaves are constants or atoms of `atoms`.
pub fn random_term<R: Rng>(rng: &mut R, atoms: &[Atom], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, atoms, !atoms.is_empty());
    }
    let x = random_term(rng, atoms, depth - 1);
    let y = random_term(rng, atoms, depth - 1);
    let z = random_term(rng, atoms, depth - 1);
    Term::cond(x, y, z)
}

/// Term whose query bound is at most `bound`.
pub fn random_term_bounded<R: Rng>(rng: &mut R, atoms: &[Atom], bound: usize) -> Term {
    if bound == 0 || atoms.is_empty() {
        return leaf(rng, atoms, false);
    }
    if rng.gen_bool(0.35) {
        return leaf(rng, atoms, true);
    }
    let cond_budget = rng.gen_range(1..=bound);
    let y = random_term_bounded(rng, atoms, cond_budget);
    let rest = bound - query_bound(&y);
    let x = random_term_bounded(rng, atoms, rest);
    let z = random_term_bounded(rng, atoms, rest);
    Term::cond(x, y, z)
}

/// Exact node count of the free basic form, computed without building it
/// (saturating).
pub fn basic_form_size(t: &Term) -> u128 {
    // (inner nodes, T leaves, F leaves)
    fn go(t: &Term) -> (u128, u128, u128) {
        match t {
            Term::True => (0, 1, 0),
            Term::False => (0, 0, 1),
            Term::Atom(_) => (1, 1, 1),
            Term::Cond(x, y, z) => {
                let (nx, tx, fx) = go(x);
                let (ny, ty, fy) = go(y);
                let (nz, tz, fz) = go(z);
                let mul = |a: u128, b: u128| a.saturating_mul(b);
                (
                    ny.saturating_add(mul(ty, nx)).saturating_add(mul(fy, nz)),
                    mul(ty, tx).saturating_add(mul(fy, tz)),
                    mul(ty, fx).saturating_add(mul(fy, fz)),
                )
            }
        }
    }
    let (nodes, t_leaves, f_leaves) = go(t);
    nodes.saturating_add(t_leaves).saturating_add(f_leaves)
}

/// Depth-bounded term whose free basic form stays under `max_form_size`
/// nodes; resamples otherwise.
pub fn random_term_tractable<R: Rng>(rng: &mut R, atoms: &[Atom], depth: usize, max_form_size: u128) -> Term {
    loop {
        let t = random_term(rng, atoms, depth);
        if basic_form_size(&t) <= max_form_size {
            return t;
        }
    }
}

/// Replace a random subterm of `t` by its `k`-canonical form.
fn normalize_somewhere<R: Rng>(rng: &mut R, t: &Term, k: Congruence) -> Term {
    let here = |t: &Term| normalize_for(t, k, None).map(|f| f.to_term()).unwrap_or_else(|_| t.clone());
    match t {
        Term::Cond(x, y, z) if rng.gen_bool(0.6) => match rng.gen_range(0..3) {
            0 => Term::cond(normalize_somewhere(rng, x, k), (**y).clone(), (**z).clone()),
            1 => Term::cond((**x).clone(), normalize_somewhere(rng, y, k), (**z).clone()),
            _ => Term::cond((**x).clone(), (**y).clone(), normalize_somewhere(rng, z, k)),
        },
        _ => here(t),
    }
}

fn flip_leaf<R: Rng>(rng: &mut R, t: &BasicForm) -> BasicForm {
    match t {
        BasicForm::True => BasicForm::False,
        BasicForm::False => BasicForm::True,
        BasicForm::Node(l, a, r) => {
            if rng.gen_bool(0.5) {
                BasicForm::node(flip_leaf(rng, l), a.clone(), (**r).clone())
            } else {
                BasicForm::node((**l).clone(), a.clone(), flip_leaf(rng, r))
            }
        }
    }
}

/// Pairs of query bound at most `bound`: a third independent, a third
/// related by a canonical rewrite under a random congruence, a third a near
/// miss obtained by flipping one leaf of a canonical form.
pub fn random_pair<R: Rng>(rng: &mut R, atoms: &[Atom], bound: usize) -> (Term, Term) {
    let t = random_term_bounded(rng, atoms, bound);
    let k = *Congruence::ALL.choose(rng).expect("non-empty");
    let other = match rng.gen_range(0..3) {
        0 => random_term_bounded(rng, atoms, bound),
        1 => normalize_somewhere(rng, &t, k),
        _ => {
            let form = normalize_for(&t, k, None).expect("default order covers the term");
            flip_leaf(rng, &form).to_term()
        }
    };
    if query_bound(&other) > bound {
        (t.clone(), t)
    } else if rng.gen_bool(0.5) {
        (t, other)
    } else {
        (other, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::basic_form;

    fn ab() -> Vec<Atom> {
        vec![Atom::new("a").unwrap(), Atom::new("b").unwrap()]
    }

    #[test]
    fn predicted_size_is_exact() {
        let mut r = rng(7);
        for _ in 0..300 {
            let t = random_term(&mut r, &ab(), 4);
            assert_eq!(basic_form_size(&t), basic_form(&t).size() as u128, "{t}");
        }
    }

    #[test]
    fn bounds_are_respected() {
        let mut r = rng(11);
        for bound in 0..5 {
            for _ in 0..100 {
                assert!(query_bound(&random_term_bounded(&mut r, &ab(), bound)) <= bound);
                let (x, y) = random_pair(&mut r, &ab(), bound);
                assert!(query_bound(&x) <= bound && query_bound(&y) <= bound);
            }
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a: Vec<Term> = (0..20).map(|i| random_term(&mut rng(i), &ab(), 5)).collect();
        let b: Vec<Term> = (0..20).map(|i| random_term(&mut rng(i), &ab(), 5)).collect();
        assert_eq!(a, b);
    }
}

//! Shared corpora and state-law checks for the integration tests.
#![allow(dead_code)]

use hmalab::random::{random_term_bounded, random_term_tractable, rng};
use hmalab::semantics::{apply, enumerate_states, reply, StateClass, TruncatedState};
use hmalab::term::{Alphabet, Atom, Term};

/// Largest free basic form admitted into the random corpora.
pub const MAX_FORM_SIZE: u128 = 3000;

pub fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

pub fn ab() -> Alphabet {
    Alphabet::from_names(&["a", "b"]).unwrap()
}

/// Closed terms of depth at most 6 over up to three atoms.
pub fn deep_corpus(seed: u64, count: usize) -> Vec<Term> {
    let mut r = rng(seed);
    let pool = atoms(&["a", "b", "c"]);
    (0..count)
        .map(|i| {
            let k = 1 + i % 3;
            random_term_tractable(&mut r, &pool[..k], 6, MAX_FORM_SIZE)
        })
        .collect()
}

pub fn bounded_terms(seed: u64, count: usize, bound: usize) -> Vec<Term> {
    let mut r = rng(seed);
    let pool = atoms(&["a", "b"]);
    (0..count).map(|_| random_term_bounded(&mut r, &pool, bound)).collect()
}

fn letter(b: bool) -> char {
    if b {
        'T'
    } else {
        'F'
    }
}

fn same_on_common_budget(x: &TruncatedState, y: &TruncatedState) -> bool {
    let d = x.depth().min(y.depth());
    x.truncate(d) == y.truncate(d)
}

/// Every enumerated state of `class` at each budget in `depths`.
fn states(class: StateClass, depths: impl IntoIterator<Item = usize>) -> Vec<TruncatedState> {
    depths.into_iter().flat_map(|d| enumerate_states(class, &ab(), d).unwrap()).collect()
}

/// a!(a•f) = a!f over repetition-proof states. Returns the number of checks.
pub fn rp_reply_stability(max_depth: usize) -> Result<usize, String> {
    let mut n = 0;
    for f in states(StateClass::Rp, 2..=max_depth) {
        for a in ab().atoms() {
            let once = f.apply_atom(a).unwrap();
            n += 1;
            if once.reply_atom(a).unwrap() != f.reply_atom(a).unwrap() {
                return Err(format!("{f:?} at {a}"));
            }
        }
    }
    Ok(n)
}

/// a!(a•f) = a!f and a•(a•f) = a•f over contractive states.
pub fn cr_idempotence(max_depth: usize) -> Result<usize, String> {
    let mut n = 0;
    for f in states(StateClass::Cr, 2..=max_depth) {
        for a in ab().atoms() {
            let once = f.apply_atom(a).unwrap();
            let twice = once.apply_atom(a).unwrap();
            n += 1;
            if once.reply_atom(a).unwrap() != f.reply_atom(a).unwrap() || !same_on_common_budget(&once, &twice) {
                return Err(format!("{f:?} at {a}"));
            }
        }
    }
    Ok(n)
}

/// b!(a•f) = a!f implies a•(b•(a•f)) = b•(a•f) over weakly memorizing states.
pub fn wm_conditional_stability(max_depth: usize) -> Result<usize, String> {
    let mut n = 0;
    for f in states(StateClass::Wm, 3..=max_depth) {
        for a in ab().atoms() {
            for b in ab().atoms().iter().filter(|b| *b != a) {
                let fa = f.apply_atom(a).unwrap();
                if fa.reply_atom(b).unwrap() != f.reply_atom(a).unwrap() {
                    continue;
                }
                let fab = fa.apply_atom(b).unwrap();
                let faba = fab.apply_atom(a).unwrap();
                n += 1;
                if !same_on_common_budget(&faba, &fab) {
                    return Err(format!("{f:?} at {a},{b}"));
                }
            }
        }
    }
    Ok(n)
}

/// t!(t'•(t•f)) = t!f and t•(t'•(t•f)) = t'•(t•f) over memorizing states,
/// for `pairs` random pairs.
pub fn mem_master_property(pairs: usize, seed: u64) -> Result<usize, String> {
    let fs = states(StateClass::Mem, [2]);
    let terms = bounded_terms(seed, 2 * pairs, 3);
    let mut n = 0;
    for pair in terms.chunks(2) {
        let (t, u) = (&pair[0], &pair[1]);
        for f in &fs {
            let tf = apply(t, f).unwrap();
            let utf = apply(u, &tf).unwrap();
            n += 1;
            if reply(t, &utf).unwrap() != reply(t, f).unwrap() || apply(t, &utf).unwrap() != utf {
                return Err(format!("t = {t}, t' = {u}, f = {f:?} (t!f = {})", letter(reply(t, f).unwrap())));
            }
        }
    }
    Ok(n)
}

/// t•f = f over static states for `count` random terms.
pub fn st_apply_is_identity(count: usize, seed: u64) -> Result<usize, String> {
    let fs = states(StateClass::St, [1]);
    let mut n = 0;
    for t in bounded_terms(seed, count, 5) {
        for f in &fs {
            n += 1;
            if &apply(&t, f).unwrap() != f {
                return Err(format!("{t} moves {f:?}"));
            }
        }
    }
    Ok(n)
}

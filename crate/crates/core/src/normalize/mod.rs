//! Canonical basic forms per congruence, and the counting results for
//! memorizing forms and repetition-free strings.

mod counting;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

pub use counting::{count_core_strings, count_mem, enumerate_core_strings, enumerate_mem_basic_forms, MAX_ENUMERATION_ATOMS};

use crate::rewrite::{normal_form, PatternTerm, RewriteSystem};
use crate::term::{atoms_of, Alphabet, Atom, BasicForm, Term};

/// The six congruences, finest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Congruence {
    Free,
    Rp,
    Cr,
    Wm,
    Mem,
    St,
}

impl Congruence {
    pub const ALL: [Congruence; 6] =
        [Congruence::Free, Congruence::Rp, Congruence::Cr, Congruence::Wm, Congruence::Mem, Congruence::St];

    pub fn name(self) -> &'static str {
        match self {
            Congruence::Free => "free",
            Congruence::Rp => "rp",
            Congruence::Cr => "cr",
            Congruence::Wm => "wm",
            Congruence::Mem => "mem",
            Congruence::St => "st",
        }
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Congruence {
    type Err = String;

    fn from_str(s: &str) -> Result<Congruence, String> {
        Congruence::ALL
            .into_iter()
            .find(|k| k.name() == s || (s == "fr" && *k == Congruence::Free))
            .ok_or_else(|| format!("unknown congruence `{s}` (expected free, rp, cr, wm, mem or st)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("atoms {0:?} are missing from the given order")]
    AtomsOutsideOrder(Vec<Atom>),
    #[error("enumeration over {size} atoms exceeds the limit of {limit}")]
    EnumerationGuard { size: usize, limit: usize },
}

/// CP normal form with stray atoms expanded to `T <| a |> F`.
pub fn basic_form(t: &Term) -> BasicForm {
    let nf = normal_form(&PatternTerm::from(t), &RewriteSystem::cp());
    expand_atoms(&nf)
}

fn expand_atoms(t: &PatternTerm) -> BasicForm {
    match t {
        PatternTerm::True => BasicForm::True,
        PatternTerm::False => BasicForm::False,
        PatternTerm::Atom(a) => BasicForm::node(BasicForm::True, a.clone(), BasicForm::False),
        PatternTerm::Cond(n) => {
            let [x, y, z] = n.parts();
            let PatternTerm::Atom(a) = y else {
                panic!("closed CP normal forms have atomic centres");
            };
            BasicForm::node(expand_atoms(x), a.clone(), expand_atoms(z))
        }
        PatternTerm::Var(_) => panic!("closed terms only"),
    }
}

/// Basic form built bottom-up by substituting branch forms into the leaves of
/// the condition's form. Same result as [`basic_form`].
pub fn basic_form_by_composition(t: &Term) -> BasicForm {
    build(t, &|l, a, r| BasicForm::node(l, a.clone(), r))
}

/// Bottom-up construction where every new node goes through `mk`.
fn build(t: &Term, mk: &dyn Fn(BasicForm, &Atom, BasicForm) -> BasicForm) -> BasicForm {
    match t {
        Term::True => BasicForm::True,
        Term::False => BasicForm::False,
        Term::Atom(a) => mk(BasicForm::True, a, BasicForm::False),
        Term::Cond(x, y, z) => {
            let cond = build(y, mk);
            let then_form = build(x, mk);
            let else_form = build(z, mk);
            compose(&cond, &then_form, &else_form, mk)
        }
    }
}

fn compose(
    cond: &BasicForm,
    then_form: &BasicForm,
    else_form: &BasicForm,
    mk: &dyn Fn(BasicForm, &Atom, BasicForm) -> BasicForm,
) -> BasicForm {
    match cond {
        BasicForm::True => then_form.clone(),
        BasicForm::False => else_form.clone(),
        BasicForm::Node(l, a, r) => {
            mk(compose(l, then_form, else_form, mk), a, compose(r, then_form, else_form, mk))
        }
    }
}

fn split(b: BasicForm) -> Result<(BasicForm, Atom, BasicForm), BasicForm> {
    match b {
        BasicForm::Node(l, a, r) => Ok((*l, a, *r)),
        leaf => Err(leaf),
    }
}

/// A child testing `a` again repeats the branch it would take on a repeated reply.
fn rp_node(left: BasicForm, a: &Atom, right: BasicForm) -> BasicForm {
    let left = match split(left) {
        Ok((l, b, _)) if &b == a => BasicForm::node(l.clone(), b, l),
        Ok((l, b, r)) => BasicForm::node(l, b, r),
        Err(leaf) => leaf,
    };
    let right = match split(right) {
        Ok((_, b, r)) if &b == a => BasicForm::node(r.clone(), b, r),
        Ok((l, b, r)) => BasicForm::node(l, b, r),
        Err(leaf) => leaf,
    };
    BasicForm::node(left, a.clone(), right)
}

fn cr_node(mut left: BasicForm, a: &Atom, mut right: BasicForm) -> BasicForm {
    while let BasicForm::Node(l, b, _) = &left {
        if b != a {
            break;
        }
        left = l.as_ref().clone();
    }
    while let BasicForm::Node(_, b, r) = &right {
        if b != a {
            break;
        }
        right = r.as_ref().clone();
    }
    BasicForm::node(left, a.clone(), right)
}

pub fn rp_basic_form(t: &Term) -> BasicForm {
    build(t, &rp_node)
}

pub fn cr_basic_form(t: &Term) -> BasicForm {
    build(t, &cr_node)
}

/// Drop every `a` node from the left spine, keeping its left child.
pub fn prune_pos(t: &BasicForm, a: &Atom) -> BasicForm {
    match t {
        BasicForm::Node(l, b, _) if b == a => prune_pos(l, a),
        BasicForm::Node(l, b, r) => BasicForm::node(prune_pos(l, a), b.clone(), r.as_ref().clone()),
        leaf => leaf.clone(),
    }
}

/// Drop every `a` node from the right spine, keeping its right child.
pub fn prune_neg(t: &BasicForm, a: &Atom) -> BasicForm {
    match t {
        BasicForm::Node(_, b, r) if b == a => prune_neg(r, a),
        BasicForm::Node(l, b, r) => BasicForm::node(l.as_ref().clone(), b.clone(), prune_neg(r, a)),
        leaf => leaf.clone(),
    }
}

fn wm_fix(t: &BasicForm) -> BasicForm {
    match t {
        BasicForm::Node(l, a, r) => BasicForm::node(prune_pos(&wm_fix(l), a), a.clone(), prune_neg(&wm_fix(r), a)),
        leaf => leaf.clone(),
    }
}

pub fn wm_basic_form(t: &Term) -> BasicForm {
    wm_fix(&basic_form_by_composition(t))
}

/// Basic form of `[value/a] t` for a basic form `t`.
pub fn restrict(t: &BasicForm, a: &Atom, value: bool) -> BasicForm {
    match t {
        BasicForm::Node(l, b, r) if b == a => restrict(if value { l } else { r }, a, value),
        BasicForm::Node(l, b, r) => BasicForm::node(restrict(l, a, value), b.clone(), restrict(r, a, value)),
        leaf => leaf.clone(),
    }
}

fn mem_fix(t: &BasicForm) -> BasicForm {
    match t {
        BasicForm::Node(l, a, r) => {
            BasicForm::node(mem_fix(&restrict(l, a, true)), a.clone(), mem_fix(&restrict(r, a, false)))
        }
        leaf => leaf.clone(),
    }
}

pub fn mem_basic_form(t: &Term) -> BasicForm {
    mem_fix(&basic_form_by_composition(t))
}

/// Value of `t` when every atom keeps a fixed truth value.
pub fn static_value(t: &Term, assignment: &BTreeMap<Atom, bool>) -> bool {
    match t {
        Term::True => true,
        Term::False => false,
        Term::Atom(a) => assignment[a],
        Term::Cond(x, y, z) => {
            if static_value(y, assignment) {
                static_value(x, assignment)
            } else {
                static_value(z, assignment)
            }
        }
    }
}

/// Full decision tree over `order` (level i tests the i-th atom) with the
/// truth table of `t` at the leaves.
pub fn st_canonical(t: &Term, order: &Alphabet) -> Result<BasicForm, NormalizeError> {
    st_canonical_over(t, order.atoms())
}

pub(crate) fn st_canonical_over(t: &Term, order: &[Atom]) -> Result<BasicForm, NormalizeError> {
    let missing: Vec<Atom> = atoms_of(t).into_iter().filter(|a| !order.contains(a)).collect();
    if !missing.is_empty() {
        return Err(NormalizeError::AtomsOutsideOrder(missing));
    }
    fn tree(t: &Term, order: &[Atom], assignment: &mut BTreeMap<Atom, bool>) -> BasicForm {
        let Some((a, rest)) = order.split_first() else {
            return BasicForm::constant(static_value(t, assignment));
        };
        assignment.insert(a.clone(), true);
        let l = tree(t, rest, assignment);
        assignment.insert(a.clone(), false);
        let r = tree(t, rest, assignment);
        assignment.remove(a);
        BasicForm::node(l, a.clone(), r)
    }
    Ok(tree(t, order, &mut BTreeMap::new()))
}

/// The canonical form of `t` for congruence `k`. For `st`, `order` defaults to
/// the atoms of `t` by name.
pub fn normalize_for(t: &Term, k: Congruence, order: Option<&[Atom]>) -> Result<BasicForm, NormalizeError> {
    Ok(match k {
        Congruence::Free => basic_form(t),
        Congruence::Rp => rp_basic_form(t),
        Congruence::Cr => cr_basic_form(t),
        Congruence::Wm => wm_basic_form(t),
        Congruence::Mem => mem_basic_form(t),
        Congruence::St => match order {
            Some(o) => st_canonical_over(t, o)?,
            None => st_canonical_over(t, &atoms_of(t).into_iter().collect::<Vec<_>>())?,
        },
    })
}

pub fn is_rp_basic(t: &BasicForm) -> bool {
    match t {
        BasicForm::Node(l, a, r) => {
            let left_ok = match l.as_ref() {
                BasicForm::Node(ll, b, lr) if b == a => ll == lr,
                _ => true,
            };
            let right_ok = match r.as_ref() {
                BasicForm::Node(rl, b, rr) if b == a => rl == rr,
                _ => true,
            };
            left_ok && right_ok && is_rp_basic(l) && is_rp_basic(r)
        }
        _ => true,
    }
}

pub fn is_cr_basic(t: &BasicForm) -> bool {
    match t {
        BasicForm::Node(l, a, r) => {
            l.central() != Some(a) && r.central() != Some(a) && is_cr_basic(l) && is_cr_basic(r)
        }
        _ => true,
    }
}

pub fn is_wm_basic(t: &BasicForm) -> bool {
    match t {
        BasicForm::Node(l, a, r) => {
            !crate::term::pos(l).contains(a)
                && !crate::term::neg(r).contains(a)
                && is_wm_basic(l)
                && is_wm_basic(r)
        }
        _ => true,
    }
}

/// No atom repeats along any root-to-leaf path.
pub fn is_mem_basic(t: &BasicForm) -> bool {
    fn go(t: &BasicForm, seen: &mut Vec<Atom>) -> bool {
        match t {
            BasicForm::Node(l, a, r) => {
                if seen.contains(a) {
                    return false;
                }
                seen.push(a.clone());
                let ok = go(l, seen) && go(r, seen);
                seen.pop();
                ok
            }
            _ => true,
        }
    }
    go(t, &mut Vec::new())
}

/// Full tree whose i-th level tests `order[i]`.
pub fn is_st_canonical(t: &BasicForm, order: &[Atom]) -> bool {
    match (t, order.split_first()) {
        (BasicForm::Node(l, a, r), Some((b, rest))) => a == b && is_st_canonical(l, rest) && is_st_canonical(r, rest),
        (BasicForm::True | BasicForm::False, None) => true,
        _ => false,
    }
}

pub fn is_canonical_shape(t: &BasicForm, k: Congruence, order: &[Atom]) -> bool {
    match k {
        Congruence::Free => true,
        Congruence::Rp => is_rp_basic(t),
        Congruence::Cr => is_cr_basic(t),
        Congruence::Wm => is_wm_basic(t) && is_cr_basic(t),
        Congruence::Mem => is_mem_basic(t),
        Congruence::St => is_st_canonical(t, order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::term::substitute_constant;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn bf(s: &str) -> BasicForm {
        BasicForm::try_from(&t(s)).unwrap()
    }

    #[test]
    fn free_forms() {
        assert_eq!(basic_form(&t("a")), bf("T <| a |> F"));
        assert_eq!(basic_form(&Term::True), BasicForm::True);
        assert_eq!(basic_form(&t("b <| a |> T")), bf("(T <| b |> F) <| a |> T"));
        assert_eq!(basic_form(&t("T <| (T <| a |> F) |> F")), bf("T <| a |> F"));
    }

    #[test]
    fn composition_agrees_with_rewriting() {
        for s in ["a <| (b <| c |> d) |> e", "(a && b) || !c", "(T <| a |> b) <| (b <| a |> F) |> (a || b)"] {
            assert_eq!(basic_form(&t(s)), basic_form_by_composition(&t(s)), "{s}");
        }
    }

    #[test]
    fn rp_forms() {
        assert_eq!(rp_basic_form(&t("(T <| a |> F) <| a |> F")), bf("(T <| a |> T) <| a |> F"));
        assert_eq!(rp_basic_form(&t("T <| a |> (T <| a |> F)")), bf("T <| a |> (F <| a |> F)"));
        assert_eq!(rp_basic_form(&t("T <| a |> F")), bf("T <| a |> F"));
    }

    #[test]
    fn cr_forms() {
        assert_eq!(cr_basic_form(&t("(T <| a |> F) <| a |> F")), bf("T <| a |> F"));
        assert_eq!(cr_basic_form(&t("T <| a |> (F <| a |> (T <| a |> F))")), bf("T <| a |> F"));
        assert_eq!(cr_basic_form(&t("(T <| b |> F) <| a |> T")), bf("(T <| b |> F) <| a |> T"));
    }

    #[test]
    fn wm_forms() {
        assert_eq!(
            wm_basic_form(&t("(((T <| a |> F) <| b |> F) <| c |> T) <| a |> F")),
            bf("((T <| b |> F) <| c |> T) <| a |> F")
        );
        assert_eq!(wm_basic_form(&t("(T <| a |> F) <| a |> T")), bf("T <| a |> T"));
        assert_eq!(wm_basic_form(&t("(T <| b |> F) <| a |> (T <| b |> F)")), bf("(T <| b |> F) <| a |> (T <| b |> F)"));
    }

    #[test]
    fn mem_forms() {
        assert_eq!(mem_basic_form(&t("(T <| a |> F) <| a |> F")), bf("T <| a |> F"));
        assert_eq!(mem_basic_form(&t("(T <| b |> F) <| a |> (F <| b |> T)")), bf("(T <| b |> F) <| a |> (F <| b |> T)"));
        assert_eq!(mem_basic_form(&t("T <| a |> (F <| b |> (T <| a |> F))")), bf("T <| a |> (F <| b |> F)"));
    }

    #[test]
    fn restriction_matches_substitution() {
        let a = Atom::new("a").unwrap();
        for s in ["(T <| a |> F) <| b |> (a <| a |> b)", "a <| (b <| a |> F) |> (!a)"] {
            let form = basic_form(&t(s));
            for v in [true, false] {
                let by_subst = basic_form(&substitute_constant(&form.to_term(), &a, v));
                assert_eq!(restrict(&form, &a, v), by_subst);
            }
        }
    }

    #[test]
    fn st_forms() {
        let a = Alphabet::from_names(&["a"]).unwrap();
        let ab = Alphabet::from_names(&["a", "b"]).unwrap();
        assert_eq!(st_canonical(&t("a"), &a).unwrap(), bf("T <| a |> F"));
        assert_eq!(st_canonical(&Term::True, &a).unwrap(), bf("T <| a |> T"));
        assert_eq!(st_canonical(&t("b && a"), &ab).unwrap(), bf("(T <| b |> F) <| a |> (F <| b |> F)"));
        assert!(st_canonical(&t("c"), &ab).is_err());
    }

    #[test]
    fn congruence_names() {
        assert_eq!("wm".parse::<Congruence>(), Ok(Congruence::Wm));
        assert!("xx".parse::<Congruence>().is_err());
        assert!(Congruence::Free < Congruence::St);
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::syntax::{parse_term, print_term, Style};
use crate::term::{Atom, Term};

use super::weight::Weight;

/// Rule variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Var {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A term that may contain variables. Conditional nodes are shared and cache
/// their weight and, per rewrite system, whether they are in normal form.
#[derive(Clone)]
pub enum PatternTerm {
    True,
    False,
    Atom(Atom),
    Var(Var),
    Cond(Arc<CondNode>),
}

pub struct CondNode {
    parts: [PatternTerm; 3],
    weight: OnceLock<Weight>,
    normal: [OnceLock<()>; 2],
}

impl CondNode {
    pub fn parts(&self) -> &[PatternTerm; 3] {
        &self.parts
    }

    pub(super) fn known_normal(&self, slot: usize) -> bool {
        self.normal[slot].get().is_some()
    }

    pub(super) fn mark_normal(&self, slot: usize) {
        let _ = self.normal[slot].set(());
    }
}

impl PartialEq for PatternTerm {
    fn eq(&self, other: &PatternTerm) -> bool {
        match (self, other) {
            (PatternTerm::True, PatternTerm::True) | (PatternTerm::False, PatternTerm::False) => true,
            (PatternTerm::Atom(a), PatternTerm::Atom(b)) => a == b,
            (PatternTerm::Var(a), PatternTerm::Var(b)) => a == b,
            (PatternTerm::Cond(a), PatternTerm::Cond(b)) => Arc::ptr_eq(a, b) || a.parts == b.parts,
            _ => false,
        }
    }
}

impl Eq for PatternTerm {}

impl Hash for PatternTerm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            PatternTerm::True => 0u8.hash(state),
            PatternTerm::False => 1u8.hash(state),
            PatternTerm::Atom(a) => {
                2u8.hash(state);
                a.hash(state);
            }
            PatternTerm::Var(v) => {
                3u8.hash(state);
                v.hash(state);
            }
            PatternTerm::Cond(n) => {
                4u8.hash(state);
                n.parts.hash(state);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Then,
    Cond,
    Else,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Then, Branch::Cond, Branch::Else];

    fn index(self) -> usize {
        match self {
            Branch::Then => 0,
            Branch::Cond => 1,
            Branch::Else => 2,
        }
    }
}

/// Path from the root; printed as `root` or e.g. `then.cond`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Position(pub Vec<Branch>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let names: Vec<&str> = self
            .0
            .iter()
            .map(|b| match b {
                Branch::Then => "then",
                Branch::Cond => "cond",
                Branch::Else => "else",
            })
            .collect();
        f.write_str(&names.join("."))
    }
}

impl PatternTerm {
    pub fn cond(then_branch: PatternTerm, condition: PatternTerm, else_branch: PatternTerm) -> PatternTerm {
        PatternTerm::Cond(Arc::new(CondNode {
            parts: [then_branch, condition, else_branch],
            weight: OnceLock::new(),
            normal: [OnceLock::new(), OnceLock::new()],
        }))
    }

    pub fn var(name: &str) -> PatternTerm {
        PatternTerm::Var(Var::new(name))
    }

    /// Parse with every identifier read as a variable.
    pub fn schema(text: &str) -> PatternTerm {
        let t = parse_term(text).unwrap_or_else(|e| panic!("bad schema `{text}`: {e}"));
        PatternTerm::from(&t).atoms_to_vars()
    }

    fn atoms_to_vars(&self) -> PatternTerm {
        match self {
            PatternTerm::Atom(a) => PatternTerm::var(a.name()),
            PatternTerm::Cond(n) => {
                let [x, y, z] = &n.parts;
                PatternTerm::cond(x.atoms_to_vars(), y.atoms_to_vars(), z.atoms_to_vars())
            }
            other => other.clone(),
        }
    }

    /// `None` when a variable occurs.
    pub fn to_term(&self) -> Option<Term> {
        Some(match self {
            PatternTerm::True => Term::True,
            PatternTerm::False => Term::False,
            PatternTerm::Atom(a) => Term::Atom(a.clone()),
            PatternTerm::Var(_) => return None,
            PatternTerm::Cond(n) => {
                let [x, y, z] = &n.parts;
                Term::cond(x.to_term()?, y.to_term()?, z.to_term()?)
            }
        })
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        fn go(t: &PatternTerm, out: &mut BTreeSet<Var>) {
            match t {
                PatternTerm::Var(v) => {
                    out.insert(v.clone());
                }
                PatternTerm::Cond(n) => n.parts.iter().for_each(|c| go(c, out)),
                _ => {}
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn vars_in_order(&self) -> Vec<Var> {
        fn go(t: &PatternTerm, out: &mut Vec<Var>) {
            match t {
                PatternTerm::Var(v) if !out.contains(v) => out.push(v.clone()),
                PatternTerm::Cond(n) => n.parts.iter().for_each(|c| go(c, out)),
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Variables are weighted like atoms.
    pub fn weight(&self) -> Weight {
        match self {
            PatternTerm::Cond(n) => n
                .weight
                .get_or_init(|| {
                    let [x, y, z] = &n.parts;
                    Weight::cond(&x.weight(), &y.weight(), &z.weight())
                })
                .clone(),
            _ => Weight::leaf(),
        }
    }

    pub fn subterm(&self, pos: &Position) -> Option<&PatternTerm> {
        let mut cur = self;
        for b in &pos.0 {
            match cur {
                PatternTerm::Cond(n) => cur = &n.parts[b.index()],
                _ => return None,
            }
        }
        Some(cur)
    }

    /// Copy of `self` with the subterm at `pos` replaced; siblings are shared.
    pub fn replace(&self, pos: &Position, new: PatternTerm) -> PatternTerm {
        fn go(t: &PatternTerm, path: &[Branch], new: PatternTerm) -> PatternTerm {
            let Some((first, rest)) = path.split_first() else {
                return new;
            };
            let PatternTerm::Cond(n) = t else {
                panic!("position leaves the term");
            };
            let mut parts = n.parts.clone();
            parts[first.index()] = go(&parts[first.index()], rest, new);
            let [x, y, z] = parts;
            PatternTerm::cond(x, y, z)
        }
        go(self, &pos.0, new)
    }

    pub fn size(&self) -> usize {
        match self {
            PatternTerm::Cond(n) => 1 + n.parts.iter().map(PatternTerm::size).sum::<usize>(),
            _ => 1,
        }
    }
}

impl From<&Term> for PatternTerm {
    fn from(t: &Term) -> PatternTerm {
        match t {
            Term::True => PatternTerm::True,
            Term::False => PatternTerm::False,
            Term::Atom(a) => PatternTerm::Atom(a.clone()),
            Term::Cond(x, y, z) => {
                PatternTerm::cond(PatternTerm::from(x.as_ref()), PatternTerm::from(y.as_ref()), PatternTerm::from(z.as_ref()))
            }
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Variables print by name; the syntax has no separate variable token.
        match self.to_term() {
            Some(t) => f.write_str(&print_term(&t, Style::Ternary)),
            None => f.write_str(&print_term(&self.vars_as_atoms(), Style::Ternary)),
        }
    }
}

impl fmt::Debug for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PatternTerm {
    fn vars_as_atoms(&self) -> Term {
        match self {
            PatternTerm::True => Term::True,
            PatternTerm::False => Term::False,
            PatternTerm::Atom(a) => Term::Atom(a.clone()),
            PatternTerm::Var(v) => Term::atom(v.name()).expect("variable names are valid identifiers"),
            PatternTerm::Cond(n) => {
                let [x, y, z] = &n.parts;
                Term::cond(x.vars_as_atoms(), y.vars_as_atoms(), z.vars_as_atoms())
            }
        }
    }
}

/// Match `pattern` against `subject`; variables of the subject are constants.
pub(super) fn matches(pattern: &PatternTerm, subject: &PatternTerm, binding: &mut Vec<(Var, PatternTerm)>) -> bool {
    match (pattern, subject) {
        (PatternTerm::Var(v), _) => match binding.iter().find(|(w, _)| w == v) {
            Some((_, bound)) => bound == subject,
            None => {
                binding.push((v.clone(), subject.clone()));
                true
            }
        },
        (PatternTerm::True, PatternTerm::True) | (PatternTerm::False, PatternTerm::False) => true,
        (PatternTerm::Atom(a), PatternTerm::Atom(b)) => a == b,
        (PatternTerm::Cond(p), PatternTerm::Cond(s)) => {
            p.parts.iter().zip(s.parts.iter()).all(|(pp, ss)| matches(pp, ss, binding))
        }
        _ => false,
    }
}

pub(super) fn instantiate(pattern: &PatternTerm, binding: &[(Var, PatternTerm)]) -> PatternTerm {
    match pattern {
        PatternTerm::Var(v) => binding
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, t)| t.clone())
            .unwrap_or_else(|| pattern.clone()),
        PatternTerm::Cond(n) => {
            let [x, y, z] = &n.parts;
            PatternTerm::cond(instantiate(x, binding), instantiate(y, binding), instantiate(z, binding))
        }
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_cache_and_agree() {
        let t = PatternTerm::schema("(T <| a |> F) <| b |> T");
        assert_eq!(t.weight().to_string(), "1024");
        assert_eq!(PatternTerm::schema("T").weight().to_string(), "2");
        assert_eq!(PatternTerm::schema("T <| a |> F").weight().to_string(), "16");
    }

    #[test]
    fn replace_and_subterm() {
        let t = PatternTerm::schema("a <| (b <| c |> d) |> e");
        let pos = Position(vec![Branch::Cond, Branch::Else]);
        assert_eq!(t.subterm(&pos), Some(&PatternTerm::var("d")));
        let r = t.replace(&pos, PatternTerm::True);
        assert_eq!(r, PatternTerm::schema("a <| (b <| c |> T) |> e"));
        assert_eq!(pos.to_string(), "cond.else");
    }

    #[test]
    fn schema_variables() {
        let t = PatternTerm::schema("x <| (y <| z |> u) |> v");
        let names: Vec<String> = t.vars_in_order().iter().map(|v| v.name().to_string()).collect();
        assert_eq!(names, ["x", "y", "z", "u", "v"]);
        assert_eq!(t.to_string(), "x <| (y <| z |> u) |> v");
        assert!(t.to_term().is_none());
    }
}

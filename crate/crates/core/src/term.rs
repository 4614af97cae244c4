//! Atoms, closed conditional terms, basic forms and alphabets.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid atom name `{0}`: expected [a-z][a-z0-9_]*")]
    InvalidAtom(String),
    #[error("`{0}` is reserved and cannot name an atom")]
    ReservedAtom(String),
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate atom `{0}` in alphabet")]
    DuplicateAtom(String),
    #[error("term is not a basic form")]
    NotBasic,
}

/// A propositional atom. Cheap to clone; ordered by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Atom, TermError> {
        if name == "T" || name == "F" {
            return Err(TermError::ReservedAtom(name.to_string()));
        }
        let mut chars = name.chars();
        let head_ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if head_ok && tail_ok {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(TermError::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A closed conditional expression. `Cond(x, y, z)` is x ◁ y ▷ z: if y then x else z.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    True,
    False,
    Atom(Atom),
    Cond(Box<Term>, Box<Term>, Box<Term>),
}

impl Term {
    pub fn atom(name: &str) -> Result<Term, TermError> {
        Atom::new(name).map(Term::Atom)
    }

    pub fn cond(then_branch: Term, condition: Term, else_branch: Term) -> Term {
        Term::Cond(Box::new(then_branch), Box::new(condition), Box::new(else_branch))
    }

    pub fn constant(value: bool) -> Term {
        if value {
            Term::True
        } else {
            Term::False
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Cond(x, y, z) => 1 + x.size() + y.size() + z.size(),
            _ => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Cond(x, y, z) => 1 + x.depth().max(y.depth()).max(z.depth()),
            _ => 0,
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self, crate::syntax::Style::Ternary))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self, crate::syntax::Style::Ternary))
    }
}

/// A term whose central conditions are atoms and whose leaves are constants.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasicForm {
    True,
    False,
    Node(Box<BasicForm>, Atom, Box<BasicForm>),
}

impl BasicForm {
    pub fn node(left: BasicForm, atom: Atom, right: BasicForm) -> BasicForm {
        BasicForm::Node(Box::new(left), atom, Box::new(right))
    }

    pub fn constant(value: bool) -> BasicForm {
        if value {
            BasicForm::True
        } else {
            BasicForm::False
        }
    }

    pub fn to_term(&self) -> Term {
        match self {
            BasicForm::True => Term::True,
            BasicForm::False => Term::False,
            BasicForm::Node(l, a, r) => Term::cond(l.to_term(), Term::Atom(a.clone()), r.to_term()),
        }
    }

    /// Central atom of a node, `None` for leaves.
    pub fn central(&self) -> Option<&Atom> {
        match self {
            BasicForm::Node(_, a, _) => Some(a),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BasicForm::Node(l, _, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    /// Length of the longest root-to-leaf path counted in nodes.
    pub fn height(&self) -> usize {
        match self {
            BasicForm::Node(l, _, r) => 1 + l.height().max(r.height()),
            _ => 0,
        }
    }
}

impl TryFrom<&Term> for BasicForm {
    type Error = TermError;

    fn try_from(t: &Term) -> Result<BasicForm, TermError> {
        match t {
            Term::True => Ok(BasicForm::True),
            Term::False => Ok(BasicForm::False),
            Term::Atom(_) => Err(TermError::NotBasic),
            Term::Cond(x, y, z) => match y.as_ref() {
                Term::Atom(a) => Ok(BasicForm::node(
                    BasicForm::try_from(x.as_ref())?,
                    a.clone(),
                    BasicForm::try_from(z.as_ref())?,
                )),
                _ => Err(TermError::NotBasic),
            },
        }
    }
}

impl From<&BasicForm> for Term {
    fn from(b: &BasicForm) -> Term {
        b.to_term()
    }
}

impl fmt::Debug for BasicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_term(), f)
    }
}

impl fmt::Display for BasicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_term(), f)
    }
}

/// A non-empty, duplicate-free, ordered list of atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    atoms: Vec<Atom>,
}

impl Alphabet {
    pub fn new(atoms: Vec<Atom>) -> Result<Alphabet, TermError> {
        if atoms.is_empty() {
            return Err(TermError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !seen.insert(a) {
                return Err(TermError::DuplicateAtom(a.to_string()));
            }
        }
        Ok(Alphabet { atoms })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Alphabet, TermError> {
        let atoms = names.iter().map(|n| Atom::new(n.as_ref())).collect::<Result<Vec<_>, _>>()?;
        Alphabet::new(atoms)
    }

    /// Name-ordered alphabet over a set of atoms.
    pub fn sorted<I: IntoIterator<Item = Atom>>(atoms: I) -> Result<Alphabet, TermError> {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        Alphabet::new(set.into_iter().collect())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, a: &Atom) -> Option<usize> {
        self.atoms.iter().position(|b| b == a)
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.index_of(a).is_some()
    }

    pub fn get(&self, i: usize) -> &Atom {
        &self.atoms[i]
    }

    /// The same alphabet with one extra atom whose name is not yet used.
    pub fn with_fresh_atom(&self) -> Alphabet {
        let fresh = fresh_atom(self.atoms.iter());
        let mut atoms = self.atoms.clone();
        atoms.push(fresh);
        Alphabet { atoms }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.atoms.iter().map(Atom::name).collect();
        f.write_str(&names.join(","))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// First of a, b, ..., z, a0, a1, ... not among `used`.
pub fn fresh_atom<'a, I: Iterator<Item = &'a Atom>>(used: I) -> Atom {
    let used: BTreeSet<&str> = used.map(Atom::name).collect();
    let singles = (b'a'..=b'z').map(|c| (c as char).to_string());
    let numbered = (0..).map(|i| format!("a{i}"));
    let name = singles.chain(numbered).find(|n| !used.contains(n.as_str())).expect("infinite supply");
    Atom(Arc::from(name.as_str()))
}

pub fn is_basic_form(t: &Term) -> bool {
    match t {
        Term::True | Term::False => true,
        Term::Atom(_) => false,
        Term::Cond(x, y, z) => matches!(y.as_ref(), Term::Atom(_)) && is_basic_form(x) && is_basic_form(z),
    }
}

pub fn atoms_of(t: &Term) -> BTreeSet<Atom> {
    fn go(t: &Term, out: &mut BTreeSet<Atom>) {
        match t {
            Term::True | Term::False => {}
            Term::Atom(a) => {
                out.insert(a.clone());
            }
            Term::Cond(x, y, z) => {
                go(x, out);
                go(y, out);
                go(z, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut out);
    out
}

pub fn basic_atoms(t: &BasicForm) -> BTreeSet<Atom> {
    atoms_of(&t.to_term())
}

/// Maximum number of atom evaluations along any evaluation path.
pub fn query_bound(t: &Term) -> usize {
    match t {
        Term::True | Term::False => 0,
        Term::Atom(_) => 1,
        Term::Cond(x, y, z) => query_bound(y) + query_bound(x).max(query_bound(z)),
    }
}

/// Central atoms along the left spine.
pub fn pos(t: &BasicForm) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    let mut cur = t;
    while let BasicForm::Node(l, a, _) = cur {
        out.insert(a.clone());
        cur = l;
    }
    out
}

/// Central atoms along the right spine.
pub fn neg(t: &BasicForm) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    let mut cur = t;
    while let BasicForm::Node(_, a, r) = cur {
        out.insert(a.clone());
        cur = r;
    }
    out
}

/// Replace every occurrence of `a` by the constant `value`.
pub fn substitute_constant(t: &Term, a: &Atom, value: bool) -> Term {
    match t {
        Term::Atom(b) if b == a => Term::constant(value),
        Term::Cond(x, y, z) => Term::cond(
            substitute_constant(x, a, value),
            substitute_constant(y, a, value),
            substitute_constant(z, a, value),
        ),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn bf(s: &str) -> BasicForm {
        BasicForm::try_from(&t(s)).unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(n).unwrap()).collect()
    }

    #[test]
    fn atom_names() {
        assert!(Atom::new("a").is_ok());
        assert!(Atom::new("x_1").is_ok());
        assert!(Atom::new("T").is_err());
        assert!(Atom::new("F").is_err());
        assert!(Atom::new("1a").is_err());
        assert!(Atom::new("").is_err());
        assert!(Atom::new("aB").is_err());
    }

    #[test]
    fn basic_form_recognition() {
        assert!(is_basic_form(&Term::True));
        assert!(!is_basic_form(&t("a")));
        assert!(is_basic_form(&t("(T <| b |> F) <| a |> F")));
        assert!(!is_basic_form(&t("T <| (T <| a |> F) |> F")));
    }

    #[test]
    fn atoms() {
        assert!(atoms_of(&Term::True).is_empty());
        assert_eq!(atoms_of(&t("T <| a |> F")), set(&["a"]));
        assert_eq!(atoms_of(&t("(T <| b |> F) <| a |> (F <| a |> T)")), set(&["a", "b"]));
    }

    #[test]
    fn query_bounds() {
        assert_eq!(query_bound(&Term::True), 0);
        assert_eq!(query_bound(&t("T <| a |> F")), 1);
        assert_eq!(query_bound(&t("(T <| b |> F) <| a |> (T <| b |> F)")), 2);
        assert_eq!(query_bound(&t("a <| (b <| c |> d) |> e")), 3);
    }

    #[test]
    fn spines() {
        assert!(pos(&BasicForm::True).is_empty());
        assert_eq!(pos(&bf("(T <| b |> F) <| a |> T")), set(&["a", "b"]));
        assert_eq!(neg(&bf("(T <| b |> F) <| a |> (F <| c |> T)")), set(&["a", "c"]));
    }

    #[test]
    fn substitution() {
        let a = Atom::new("a").unwrap();
        assert_eq!(substitute_constant(&t("T <| a |> F"), &a, true), t("T <| T |> F"));
        assert_eq!(substitute_constant(&t("b"), &a, false), t("b"));
        assert_eq!(substitute_constant(&t("a <| b |> a"), &a, true), t("T <| b |> T"));
    }

    #[test]
    fn alphabet_rules() {
        assert_eq!(Alphabet::new(vec![]), Err(TermError::EmptyAlphabet));
        assert!(Alphabet::from_names(&["a", "a"]).is_err());
        let ab = Alphabet::from_names(&["b", "a"]).unwrap();
        assert_eq!(ab.index_of(&Atom::new("a").unwrap()), Some(1));
        assert_eq!(ab.with_fresh_atom().get(2).name(), "c");
    }

    #[test]
    fn basic_form_conversion() {
        assert!(BasicForm::try_from(&t("a")).is_err());
        let b = bf("(T <| b |> F) <| a |> F");
        assert_eq!(b.to_term(), t("(T <| b |> F) <| a |> F"));
        assert_eq!(b.height(), 2);
    }
}

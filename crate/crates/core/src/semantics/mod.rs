//! Valuation states with a depth budget, per-class apply, and reply/apply of
//! terms.
//!
//! A state answers atom queries depending on the history of atoms already
//! evaluated. `reply(t, f)` is the outcome of evaluating `t` in `f`;
//! `apply(t, f)` is the state left behind.

mod state_file;
pub mod words;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

pub use state_file::{parse_state_file, write_state_file, StateFile};

use crate::normalize::Congruence;
use crate::term::{atoms_of, query_bound, Alphabet, Atom, Term};
use words::Word;

/// Default cap on free boolean choices when enumerating states.
pub const DEFAULT_MAX_CHOICES: usize = 24;

/// Cap on free choices, overridable with `HMALAB_MAX_CHOICES`.
pub fn max_choices() -> usize {
    std::env::var("HMALAB_MAX_CHOICES").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CHOICES)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StateClass {
    #[serde(rename = "FREE")]
    Free,
    #[serde(rename = "RP")]
    Rp,
    #[serde(rename = "CR")]
    Cr,
    #[serde(rename = "WM")]
    Wm,
    #[serde(rename = "MEM")]
    Mem,
    #[serde(rename = "ST")]
    St,
}

impl StateClass {
    pub const ALL: [StateClass; 6] =
        [StateClass::Free, StateClass::Rp, StateClass::Cr, StateClass::Wm, StateClass::Mem, StateClass::St];

    pub fn name(self) -> &'static str {
        match self {
            StateClass::Free => "FREE",
            StateClass::Rp => "RP",
            StateClass::Cr => "CR",
            StateClass::Wm => "WM",
            StateClass::Mem => "MEM",
            StateClass::St => "ST",
        }
    }
}

impl From<Congruence> for StateClass {
    fn from(k: Congruence) -> StateClass {
        match k {
            Congruence::Free => StateClass::Free,
            Congruence::Rp => StateClass::Rp,
            Congruence::Cr => StateClass::Cr,
            Congruence::Wm => StateClass::Wm,
            Congruence::Mem => StateClass::Mem,
            Congruence::St => StateClass::St,
        }
    }
}

impl From<StateClass> for Congruence {
    fn from(c: StateClass) -> Congruence {
        match c {
            StateClass::Free => Congruence::Free,
            StateClass::Rp => Congruence::Rp,
            StateClass::Cr => Congruence::Cr,
            StateClass::Wm => Congruence::Wm,
            StateClass::Mem => Congruence::Mem,
            StateClass::St => Congruence::St,
        }
    }
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateClass {
    type Err = String;

    fn from_str(s: &str) -> Result<StateClass, String> {
        StateClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown state class `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("atom `{0}` is not in the state's alphabet")]
    UnknownAtom(Atom),
    #[error("term needs depth {needed} but the state has {available}")]
    InsufficientDepth { needed: usize, available: usize },
    #[error("depth budget exhausted")]
    BudgetExhausted,
    #[error("{required} free choices exceed the limit of {limit} (set HMALAB_MAX_CHOICES to raise it)")]
    Guard { required: usize, limit: usize },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("state file line {line}: {message}")]
    Format { line: usize, message: String },
}

/// A non-empty string of atoms, written `a.b.c`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomString(Vec<Atom>);

impl AtomString {
    pub fn new(atoms: Vec<Atom>) -> Option<AtomString> {
        if atoms.is_empty() {
            None
        } else {
            Some(AtomString(atoms))
        }
    }

    pub fn single(a: Atom) -> AtomString {
        AtomString(vec![a])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parse(text: &str) -> Result<AtomString, crate::term::TermError> {
        let atoms = text.split('.').map(|p| Atom::new(p.trim())).collect::<Result<Vec<_>, _>>()?;
        Ok(AtomString(atoms))
    }

    fn to_word(&self, alphabet: &Alphabet) -> Result<Word, SemanticsError> {
        self.0
            .iter()
            .map(|a| alphabet.index_of(a).map(|i| i as u8).ok_or_else(|| SemanticsError::UnknownAtom(a.clone())))
            .collect()
    }

    fn from_word(w: &[u8], alphabet: &Alphabet) -> AtomString {
        AtomString(w.iter().map(|&i| alphabet.get(i as usize).clone()).collect())
    }
}

impl fmt::Display for AtomString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(Atom::name).collect();
        f.write_str(&names.join("."))
    }
}

impl fmt::Debug for AtomString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn alphabet_words(class: StateClass, alphabet: &Alphabet, depth: usize) -> Vec<AtomString> {
    words::admissible_words(class, alphabet.len(), depth).iter().map(|w| AtomString::from_word(w, alphabet)).collect()
}

/// Domain of a class-`class` state of budget `depth`, shortest strings first.
pub fn admissible_strings(class: StateClass, alphabet: &Alphabet, depth: usize) -> Vec<AtomString> {
    alphabet_words(class, alphabet, depth)
}

pub fn contract_runs(s: &AtomString) -> AtomString {
    let mut out: Vec<Atom> = Vec::new();
    for a in s.atoms() {
        if out.last() != Some(a) {
            out.push(a.clone());
        }
    }
    AtomString(out)
}

/// `a ↝ s`: prepend `a` unless `s` already starts with it.
pub fn leadsto(a: &Atom, s: &AtomString) -> AtomString {
    if s.atoms().first() == Some(a) {
        s.clone()
    } else {
        let mut out = vec![a.clone()];
        out.extend(s.atoms().iter().cloned());
        AtomString(out)
    }
}

/// `s` without `a`; `None` stands for the empty string.
pub fn remove_atom(s: &AtomString, a: &Atom) -> Option<AtomString> {
    AtomString::new(s.atoms().iter().filter(|b| *b != a).cloned().collect())
}

/// Strings of one class and budget, with an index.
#[derive(Debug)]
pub(crate) struct Domain {
    pub(crate) words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Domain {
    pub(crate) fn get(class: StateClass, n: usize, depth: usize) -> Arc<Domain> {
        type Cache = Mutex<HashMap<(StateClass, usize, usize), Arc<Domain>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("domain cache poisoned");
        guard
            .entry((class, n, depth))
            .or_insert_with(|| {
                let words = words::admissible_words(class, n, depth);
                let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
                Arc::new(Domain { words, index })
            })
            .clone()
    }

    pub(crate) fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub(crate) fn len(&self) -> usize {
        self.words.len()
    }
}

/// A valuation restricted to admissible strings of length at most `depth`.
#[derive(Clone)]
pub struct TruncatedState {
    class: StateClass,
    alphabet: Alphabet,
    depth: usize,
    domain: Arc<Domain>,
    values: Vec<bool>,
}

impl PartialEq for TruncatedState {
    fn eq(&self, other: &TruncatedState) -> bool {
        self.class == other.class
            && self.alphabet == other.alphabet
            && self.depth == other.depth
            && self.values == other.values
    }
}

impl Eq for TruncatedState {}

impl fmt::Debug for TruncatedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} L={} [{}]", self.class, self.depth, self.alphabet)?;
        for (s, v) in self.entries() {
            write!(f, " {s}={}", if v { 'T' } else { 'F' })?;
        }
        Ok(())
    }
}

impl TruncatedState {
    /// Table given by `value` on every admissible string. Not checked against
    /// the class constraint; see [`TruncatedState::check`].
    pub fn from_fn(
        class: StateClass,
        alphabet: &Alphabet,
        depth: usize,
        mut value: impl FnMut(&AtomString) -> bool,
    ) -> TruncatedState {
        let domain = Domain::get(class, alphabet.len(), depth);
        let values = domain.words.iter().map(|w| value(&AtomString::from_word(w, alphabet))).collect();
        TruncatedState { class, alphabet: alphabet.clone(), depth, domain, values }
    }

    pub(crate) fn from_word_fn(
        class: StateClass,
        alphabet: &Alphabet,
        depth: usize,
        mut value: impl FnMut(&[u8]) -> bool,
    ) -> TruncatedState {
        let domain = Domain::get(class, alphabet.len(), depth);
        let values = domain.words.iter().map(|w| value(w)).collect();
        TruncatedState { class, alphabet: alphabet.clone(), depth, domain, values }
    }

    /// Table from explicit entries; every admissible string must be present
    /// exactly once and the class constraint must hold.
    pub fn from_entries(
        class: StateClass,
        alphabet: &Alphabet,
        depth: usize,
        entries: &[(AtomString, bool)],
    ) -> Result<TruncatedState, SemanticsError> {
        let domain = Domain::get(class, alphabet.len(), depth);
        let mut values: Vec<Option<bool>> = vec![None; domain.len()];
        for (s, v) in entries {
            let w = s.to_word(alphabet)?;
            let i = domain
                .index_of(&w)
                .ok_or_else(|| SemanticsError::Constraint(format!("`{s}` is not an admissible {class} string at depth {depth}")))?;
            if values[i].replace(*v).is_some() {
                return Err(SemanticsError::Constraint(format!("`{s}` is given twice")));
            }
        }
        if let Some(i) = values.iter().position(Option::is_none) {
            let s = AtomString::from_word(&domain.words[i], alphabet);
            return Err(SemanticsError::Constraint(format!("no value for `{s}`")));
        }
        let state = TruncatedState {
            class,
            alphabet: alphabet.clone(),
            depth,
            domain,
            values: values.into_iter().map(|v| v.expect("checked")).collect(),
        };
        state.check()?;
        Ok(state)
    }

    pub fn class(&self) -> StateClass {
        self.class
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, s: &AtomString) -> Option<bool> {
        let w = s.to_word(&self.alphabet).ok()?;
        self.get_word(&w)
    }

    pub(crate) fn get_word(&self, w: &[u8]) -> Option<bool> {
        self.domain.index_of(w).map(|i| self.values[i])
    }

    pub fn entries(&self) -> Vec<(AtomString, bool)> {
        self.domain.words.iter().zip(&self.values).map(|(w, v)| (AtomString::from_word(w, &self.alphabet), *v)).collect()
    }

    /// The same valuation on a smaller budget.
    pub fn truncate(&self, depth: usize) -> TruncatedState {
        let depth = depth.min(self.depth);
        TruncatedState::from_word_fn(self.class, &self.alphabet, depth, |w| self.get_word(w).expect("shorter strings stay in the domain"))
    }

    /// First violated class constraint, if any.
    pub fn check(&self) -> Result<(), SemanticsError> {
        match self.class {
            StateClass::Rp => self.check_rp(),
            StateClass::Wm => self.check_wm(),
            _ => Ok(()),
        }
    }

    fn show(&self, w: &[u8]) -> String {
        AtomString::from_word(w, &self.alphabet).to_string()
    }

    fn check_rp(&self) -> Result<(), SemanticsError> {
        for (w, v) in self.domain.words.iter().zip(&self.values) {
            let n = w.len();
            if n >= 2 && w[n - 1] == w[n - 2] {
                let shorter = &w[..n - 1];
                if self.get_word(shorter) != Some(*v) {
                    return Err(SemanticsError::Constraint(format!(
                        "repetition: f({}) differs from f({})",
                        self.show(w),
                        self.show(shorter)
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_wm(&self) -> Result<(), SemanticsError> {
        let n = self.alphabet.len() as u8;
        let suffixes = words::admissible_words(StateClass::Cr, n as usize, self.depth);
        for prefix in &self.domain.words {
            let a = *prefix.last().expect("non-empty");
            for b in (0..n).filter(|&b| b != a) {
                let mut pb = prefix.clone();
                pb.push(b);
                let (Some(f_pb), Some(f_p)) = (self.get_word(&pb), self.get_word(prefix)) else {
                    continue;
                };
                if f_pb != f_p {
                    continue;
                }
                let mut pba = pb.clone();
                pba.push(a);
                if let Some(f_pba) = self.get_word(&pba) {
                    if f_pba != f_p {
                        return Err(SemanticsError::Constraint(format!(
                            "weak memory: f({}) = f({}) but f({}) differs",
                            self.show(&pb),
                            self.show(prefix),
                            self.show(&pba)
                        )));
                    }
                }
                for s in &suffixes {
                    let long = words::contract(&[pba.as_slice(), s].concat());
                    let short = words::contract(&[pb.as_slice(), s].concat());
                    if let (Some(x), Some(y)) = (self.get_word(&long), self.get_word(&short)) {
                        if x != y {
                            return Err(SemanticsError::Constraint(format!(
                                "weak memory: f({}) = f({}) but f({}) and f({}) differ",
                                self.show(&pb),
                                self.show(prefix),
                                self.show(&long),
                                self.show(&short)
                            )));
                        }
                    }
                }
            }
        }
        // The literal conditions above only see chains that fit the budget;
        // a truncation of a full state must also agree with its reduced
        // histories, whose justification may pass through longer strings.
        for (w, &v) in self.domain.words.iter().zip(&self.values) {
            let key = words::wm_reduce::<()>(w, &mut |p| Ok(self.get_word(p).expect("prefixes are in the domain")))
                .expect("reads never fail");
            if self.get_word(&key) != Some(v) {
                return Err(SemanticsError::Constraint(format!(
                    "weak memory: f({}) must equal f({}), every reply in between being the same",
                    self.show(w),
                    self.show(&key)
                )));
            }
        }
        Ok(())
    }

    /// `a • f`: the state after evaluating `a` once.
    pub fn apply_atom(&self, a: &Atom) -> Result<TruncatedState, SemanticsError> {
        let i = self.alphabet.index_of(a).ok_or_else(|| SemanticsError::UnknownAtom(a.clone()))? as u8;
        self.apply_index(i)
    }

    pub(crate) fn apply_index(&self, a: u8) -> Result<TruncatedState, SemanticsError> {
        let n = self.alphabet.len();
        let depth = match self.class {
            StateClass::St => return Ok(self.clone()),
            // Memorizing queries never grow past the alphabet size.
            StateClass::Mem if self.depth >= n => self.depth,
            _ if self.depth == 0 => return Err(SemanticsError::BudgetExhausted),
            _ => self.depth - 1,
        };
        let class = self.class;
        Ok(TruncatedState::from_word_fn(class, &self.alphabet, depth, |w| {
            let key = words::apply_key(class, a, w);
            self.get_word(&key).expect("apply stays inside the domain")
        }))
    }

    /// `a ! f`: the reply to a single atom.
    pub fn reply_atom(&self, a: &Atom) -> Result<bool, SemanticsError> {
        let i = self.alphabet.index_of(a).ok_or_else(|| SemanticsError::UnknownAtom(a.clone()))? as u8;
        self.get_word(&[i]).ok_or(SemanticsError::BudgetExhausted)
    }
}

/// Budget needed to evaluate `t` in a state of `class` over `n` atoms.
pub fn required_depth(t: &Term, class: StateClass, n: usize) -> usize {
    let qb = query_bound(t);
    match class {
        StateClass::St => qb.min(1),
        StateClass::Mem => qb.min(n),
        _ => qb,
    }
}

fn validate(t: &Term, f: &TruncatedState) -> Result<(), SemanticsError> {
    if let Some(a) = atoms_of(t).into_iter().find(|a| !f.alphabet.contains(a)) {
        return Err(SemanticsError::UnknownAtom(a));
    }
    let needed = required_depth(t, f.class, f.alphabet.len());
    if needed > f.depth {
        return Err(SemanticsError::InsufficientDepth { needed, available: f.depth });
    }
    Ok(())
}

fn eval(t: &Term, f: &TruncatedState) -> Result<(bool, TruncatedState), SemanticsError> {
    match t {
        Term::True => Ok((true, f.clone())),
        Term::False => Ok((false, f.clone())),
        Term::Atom(a) => Ok((f.reply_atom(a)?, f.apply_atom(a)?)),
        Term::Cond(x, y, z) => {
            let (b, g) = eval(y, f)?;
            eval(if b { x } else { z }, &g)
        }
    }
}

/// Reply and resulting state together.
pub fn evaluate(t: &Term, f: &TruncatedState) -> Result<(bool, TruncatedState), SemanticsError> {
    validate(t, f)?;
    eval(t, f)
}

pub fn reply(t: &Term, f: &TruncatedState) -> Result<bool, SemanticsError> {
    evaluate(t, f).map(|(b, _)| b)
}

pub fn apply(t: &Term, f: &TruncatedState) -> Result<TruncatedState, SemanticsError> {
    evaluate(t, f).map(|(_, g)| g)
}

pub fn class_constraint_check(f: &TruncatedState) -> bool {
    f.check().is_ok()
}

/// Positions whose values are chosen freely; the rest follow from them.
fn free_words(class: StateClass, n: usize, depth: usize) -> Vec<Word> {
    let all = words::admissible_words(class, n, depth);
    match class {
        StateClass::Rp => all.into_iter().filter(|w| words::strip_trailing_repeats(w).len() == w.len()).collect(),
        _ => all,
    }
}

/// Number of free boolean choices behind `enumerate_states`.
pub fn choice_count(class: StateClass, n: usize, depth: usize) -> usize {
    free_words(class, n, depth).len()
}

/// Every class-valid state of the given budget, each once.
pub fn enumerate_states(
    class: StateClass,
    alphabet: &Alphabet,
    depth: usize,
) -> Result<impl Iterator<Item = TruncatedState>, SemanticsError> {
    enumerate_states_with_limit(class, alphabet, depth, max_choices())
}

pub fn enumerate_states_with_limit(
    class: StateClass,
    alphabet: &Alphabet,
    depth: usize,
    limit: usize,
) -> Result<impl Iterator<Item = TruncatedState>, SemanticsError> {
    let free = free_words(class, alphabet.len(), depth);
    if free.len() > limit || free.len() >= 64 {
        return Err(SemanticsError::Guard { required: free.len(), limit });
    }
    let index: HashMap<Word, usize> = free.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let alphabet = alphabet.clone();
    let total: u64 = 1 << free.len();
    Ok((0..total).filter_map(move |mask| {
        let bit = |w: &[u8]| {
            let key = if class == StateClass::Rp { words::strip_trailing_repeats(w) } else { w.to_vec() };
            mask >> index[&key] & 1 == 1
        };
        let f = TruncatedState::from_word_fn(class, &alphabet, depth, bit);
        (class != StateClass::Wm || f.check().is_ok()).then_some(f)
    }))
}

//! Deciding `t =_K t'` by canonical forms and by a search over class-K
//! states, with distinguishing witnesses.

mod axioms;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use axioms::{axiom_soundness_suite, axioms_for, random_instance, tables, Axiom, AxiomReport, AxiomTable, SoundnessReport};

use crate::normalize::{normalize_for, Congruence, NormalizeError};
use crate::semantics::words::{self, Word};
use crate::semantics::{
    enumerate_states_with_limit, evaluate, max_choices, write_state_file, AtomString, SemanticsError, StateClass,
    TruncatedState,
};
use crate::term::{atoms_of, query_bound, Alphabet, Atom, Term};

pub const DEFAULT_PROBE_DEPTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("{required} free choices exceed the limit of {limit} (set HMALAB_MAX_CHOICES to raise it)")]
    Guard { required: usize, limit: usize },
    #[error("{congruence}: canonical forms say {canonical}, state search says {oracle} for `{left}` vs `{right}`")]
    Disagreement { congruence: Congruence, canonical: bool, oracle: bool, left: Term, right: Term },
    #[error("profile is not monotone: equal under {finer} but not under {coarser}")]
    NonMonotone { finer: Congruence, coarser: Congruence },
    #[error("witness does not separate the terms: {0}")]
    InvalidWitness(String),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Semantics(SemanticsError),
}

impl From<SemanticsError> for DecideError {
    fn from(e: SemanticsError) -> DecideError {
        match e {
            SemanticsError::Guard { required, limit } => DecideError::Guard { required, limit },
            other => DecideError::Semantics(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    CanonicalForm,
    Oracle,
    BothAgree,
}

/// Where a witness state tells the terms apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    Reply,
    After(AtomString),
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::Reply => f.write_str("reply"),
            Probe::After(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub state: TruncatedState,
    pub probe: Probe,
}

impl Witness {
    /// State file text with a `probe:` line.
    pub fn to_state_file(&self) -> String {
        match &self.probe {
            Probe::Reply => write_state_file(&self.state, Some(None)),
            Probe::After(s) => write_state_file(&self.state, Some(Some(s))),
        }
    }

    /// Whether the state really separates `left` and `right` at the probe.
    pub fn separates(&self, left: &Term, right: &Term) -> Result<bool, SemanticsError> {
        let (r1, g1) = evaluate(left, &self.state)?;
        let (r2, g2) = evaluate(right, &self.state)?;
        Ok(match &self.probe {
            Probe::Reply => r1 != r2,
            Probe::After(s) => match (g1.get(s), g2.get(s)) {
                (Some(x), Some(y)) => x != y,
                _ => false,
            },
        })
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: BTreeMap<String, &str> = self
            .state
            .entries()
            .into_iter()
            .map(|(s, v)| (s.to_string(), if v { "T" } else { "F" }))
            .collect();
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("class", &self.state.class())?;
        map.serialize_entry("alphabet", &self.state.alphabet().to_string())?;
        map.serialize_entry("depth", &self.state.depth())?;
        map.serialize_entry("probe", &self.probe.to_string())?;
        map.serialize_entry("entries", &entries)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub equivalent: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// How the state search visits states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Branch only on the table entries evaluation actually reads.
    Lazy,
    /// Walk every class state of the comparison budget.
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub probe_depth: usize,
    pub max_choices: usize,
    pub strategy: SearchStrategy,
    /// Extra atoms to include beyond those of the compared terms.
    pub alphabet: Option<Alphabet>,
}

impl Default for OracleConfig {
    fn default() -> OracleConfig {
        OracleConfig { probe_depth: DEFAULT_PROBE_DEPTH, max_choices: max_choices(), strategy: SearchStrategy::Lazy, alphabet: None }
    }
}

/// Alphabet for comparing `left` and `right` under `class`: given atoms
/// first, then the terms' atoms by name, padded with fresh atoms up to two.
/// Memorizing states also get one atom that neither term mentions: once
/// every atom has been evaluated such a state stops changing, so without a
/// spare atom distinct canonical forms can look alike.
pub fn comparison_alphabet(left: &Term, right: &Term, class: StateClass, extra: Option<&Alphabet>) -> Alphabet {
    let mut atoms: Vec<Atom> = extra.map(|a| a.atoms().to_vec()).unwrap_or_default();
    let used: BTreeSet<Atom> = atoms_of(left).into_iter().chain(atoms_of(right)).collect();
    for a in &used {
        if !atoms.contains(a) {
            atoms.push(a.clone());
        }
    }
    if class == StateClass::Mem && atoms.iter().all(|a| used.contains(a)) {
        atoms.push(crate::term::fresh_atom(atoms.iter()));
    }
    while atoms.len() < 2 {
        atoms.push(crate::term::fresh_atom(atoms.iter()));
    }
    Alphabet::new(atoms).expect("distinct and non-empty")
}

/// Budget of the states compared: both query bounds plus the probe depth.
pub fn comparison_depth(left: &Term, right: &Term, probe_depth: usize) -> usize {
    query_bound(left) + query_bound(right) + probe_depth
}

pub fn canonical_equivalent(left: &Term, right: &Term, k: Congruence) -> Result<Verdict, DecideError> {
    let order: Vec<Atom> = atoms_of(left).into_iter().chain(atoms_of(right)).collect::<BTreeSet<_>>().into_iter().collect();
    let a = normalize_for(left, k, Some(&order))?;
    let b = normalize_for(right, k, Some(&order))?;
    Ok(Verdict { equivalent: a == b, method: Method::CanonicalForm, witness: None })
}

pub fn oracle_equivalent(left: &Term, right: &Term, k: Congruence, config: &OracleConfig) -> Result<Verdict, DecideError> {
    let class = StateClass::from(k);
    let alphabet = comparison_alphabet(left, right, class, config.alphabet.as_ref());
    let depth = comparison_depth(left, right, config.probe_depth);
    let witness = match config.strategy {
        SearchStrategy::Lazy => lazy_search(left, right, class, &alphabet, depth, config)?,
        SearchStrategy::Exhaustive => exhaustive_search(left, right, class, &alphabet, depth, config)?,
    };
    if let Some(w) = &witness {
        if let Err(e) = w.state.check() {
            return Err(DecideError::InvalidWitness(e.to_string()));
        }
        if !w.separates(left, right)? {
            return Err(DecideError::InvalidWitness(w.to_state_file()));
        }
    }
    Ok(Verdict { equivalent: witness.is_none(), method: Method::Oracle, witness })
}

/// Both procedures together; an error if they disagree. When the state
/// search hits its guard the canonical comparison stands alone.
pub fn decide(left: &Term, right: &Term, k: Congruence, config: &OracleConfig) -> Result<Verdict, DecideError> {
    let canonical = canonical_equivalent(left, right, k)?;
    let oracle = match oracle_equivalent(left, right, k, config) {
        Ok(v) => v,
        Err(DecideError::Guard { .. }) => return Ok(canonical),
        Err(e) => return Err(e),
    };
    if oracle.equivalent != canonical.equivalent {
        return Err(DecideError::Disagreement {
            congruence: k,
            canonical: canonical.equivalent,
            oracle: oracle.equivalent,
            left: left.clone(),
            right: right.clone(),
        });
    }
    Ok(Verdict { equivalent: oracle.equivalent, method: Method::BothAgree, witness: oracle.witness })
}

/// Verdicts for all six congruences, finest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile(pub Vec<(Congruence, Verdict)>);

impl Profile {
    pub fn get(&self, k: Congruence) -> Option<&Verdict> {
        self.0.iter().find(|(c, _)| *c == k).map(|(_, v)| v)
    }

    pub fn flags(&self) -> Vec<(Congruence, bool)> {
        self.0.iter().map(|(k, v)| (*k, v.equivalent)).collect()
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k.name(), v)?;
        }
        map.end()
    }
}

pub fn equivalence_profile(left: &Term, right: &Term, config: &OracleConfig) -> Result<Profile, DecideError> {
    let profile = Profile(
        Congruence::ALL.into_iter().map(|k| decide(left, right, k, config).map(|v| (k, v))).collect::<Result<_, _>>()?,
    );
    let flags = profile.flags();
    for (i, (finer, eq)) in flags.iter().enumerate() {
        if let Some((coarser, _)) = flags[i + 1..].iter().find(|(_, e)| *eq && !e) {
            return Err(DecideError::NonMonotone { finer: *finer, coarser: *coarser });
        }
    }
    Ok(profile)
}

fn index_term(t: &Term, alphabet: &Alphabet) -> IndexedTerm {
    match t {
        Term::True => IndexedTerm::Const(true),
        Term::False => IndexedTerm::Const(false),
        Term::Atom(a) => IndexedTerm::Atom(alphabet.index_of(a).expect("alphabet covers the term") as u8),
        Term::Cond(x, y, z) => IndexedTerm::Cond(Box::new([index_term(x, alphabet), index_term(y, alphabet), index_term(z, alphabet)])),
    }
}

enum IndexedTerm {
    Const(bool),
    Atom(u8),
    Cond(Box<[IndexedTerm; 3]>),
}

type Assignment = BTreeMap<Word, bool>;

enum Outcome {
    Agree,
    Differ(Probe, Vec<(Word, bool)>),
}

/// Search over partial tables. Only entries that evaluation reads get
/// values, so each branch stands for every state extending it.
struct LazySearch<'a> {
    class: StateClass,
    alphabet: &'a Alphabet,
    terms: [IndexedTerm; 2],
    probes: Vec<Word>,
    limit: usize,
}

impl LazySearch<'_> {
    fn lookup(asg: &Assignment, key: &[u8]) -> Result<bool, Word> {
        asg.get(key).copied().ok_or_else(|| key.to_vec())
    }

    /// The freely chosen entry that decides `key`.
    fn base(&self, key: Word, asg: &Assignment) -> Result<Word, Word> {
        match self.class {
            StateClass::Rp => Ok(words::strip_trailing_repeats(&key)),
            StateClass::Wm => words::wm_reduce(&key, &mut |s| Self::lookup(asg, s)),
            _ => Ok(key),
        }
    }

    fn eval(&self, t: &IndexedTerm, history: &mut Word, asg: &Assignment) -> Result<bool, Word> {
        match t {
            IndexedTerm::Const(b) => Ok(*b),
            IndexedTerm::Atom(a) => {
                let key = self.base(words::history_key(self.class, history, &[*a]), asg)?;
                let v = Self::lookup(asg, &key)?;
                history.push(*a);
                Ok(v)
            }
            IndexedTerm::Cond(parts) => {
                let [x, y, z] = parts.as_ref();
                let b = self.eval(y, history, asg)?;
                self.eval(if b { x } else { z }, history, asg)
            }
        }
    }

    /// `Err` carries an entry the assignment leaves open but evaluation reads.
    fn check(&self, asg: &Assignment, with_probes: bool) -> Result<Outcome, Word> {
        let mut h1 = Vec::new();
        let mut h2 = Vec::new();
        let r1 = self.eval(&self.terms[0], &mut h1, asg)?;
        let r2 = self.eval(&self.terms[1], &mut h2, asg)?;
        if r1 != r2 {
            return Ok(Outcome::Differ(Probe::Reply, Vec::new()));
        }
        if !with_probes {
            return Ok(Outcome::Agree);
        }
        for p in &self.probes {
            let k1 = self.base(words::history_key(self.class, &h1, p), asg)?;
            let k2 = self.base(words::history_key(self.class, &h2, p), asg)?;
            if k1 == k2 {
                continue;
            }
            let probe = Probe::After(AtomString::new(p.iter().map(|&i| self.alphabet.get(i as usize).clone()).collect()).expect("probes are non-empty"));
            let extension = match (asg.get(&k1), asg.get(&k2)) {
                (Some(x), Some(y)) if x == y => continue,
                (Some(_), Some(_)) => Vec::new(),
                (Some(x), None) => vec![(k2, !x)],
                (None, Some(y)) => vec![(k1, !y)],
                (None, None) => {
                    let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
                    vec![(lo, false), (hi, true)]
                }
            };
            return Ok(Outcome::Differ(probe, extension));
        }
        Ok(Outcome::Agree)
    }

    fn search(&self, asg: &mut Assignment, with_probes: bool) -> Result<Option<(Assignment, Probe)>, DecideError> {
        match self.check(asg, with_probes) {
            Ok(Outcome::Agree) => Ok(None),
            Ok(Outcome::Differ(probe, extension)) => {
                let mut full = asg.clone();
                full.extend(extension);
                Ok(Some((full, probe)))
            }
            Err(key) => {
                if asg.len() >= self.limit {
                    return Err(DecideError::Guard { required: asg.len() + 1, limit: self.limit });
                }
                for v in [false, true] {
                    asg.insert(key.clone(), v);
                    let found = self.search(asg, with_probes);
                    if !matches!(found, Ok(None)) {
                        asg.remove(&key);
                        return found;
                    }
                }
                asg.remove(&key);
                Ok(None)
            }
        }
    }

    /// Full table at `depth`, open entries read as F.
    fn complete(&self, asg: &Assignment, depth: usize) -> TruncatedState {
        let read = |s: &[u8]| -> Result<bool, Word> { Ok(asg.get(s).copied().unwrap_or(false)) };
        TruncatedState::from_word_fn(self.class, self.alphabet, depth, |w| {
            let key = match self.class {
                StateClass::Rp => words::strip_trailing_repeats(w),
                StateClass::Wm => words::wm_reduce(w, &mut |s| read(s)).expect("reads never fail"),
                _ => w.to_vec(),
            };
            asg.get(&key).copied().unwrap_or(false)
        })
    }
}

fn probe_words(class: StateClass, n: usize, probe_depth: usize) -> Vec<Word> {
    words::admissible_words(class, n, probe_depth)
}

fn lazy_search(
    left: &Term,
    right: &Term,
    class: StateClass,
    alphabet: &Alphabet,
    depth: usize,
    config: &OracleConfig,
) -> Result<Option<Witness>, DecideError> {
    let search = LazySearch {
        class,
        alphabet,
        terms: [index_term(left, alphabet), index_term(right, alphabet)],
        probes: probe_words(class, alphabet.len(), config.probe_depth),
        limit: config.max_choices,
    };
    let mut asg = Assignment::new();
    // Reply differences first, then differences after evaluation.
    let found = match search.search(&mut asg, false)? {
        Some(hit) => Some(hit),
        None => search.search(&mut asg, true)?,
    };
    Ok(found.map(|(asg, probe)| Witness { state: search.complete(&asg, depth), probe }))
}

fn exhaustive_search(
    left: &Term,
    right: &Term,
    class: StateClass,
    alphabet: &Alphabet,
    depth: usize,
    config: &OracleConfig,
) -> Result<Option<Witness>, DecideError> {
    let probes: Vec<AtomString> = probe_words(class, alphabet.len(), config.probe_depth)
        .iter()
        .map(|w| AtomString::new(w.iter().map(|&i| alphabet.get(i as usize).clone()).collect()).expect("non-empty"))
        .collect();
    for f in enumerate_states_with_limit(class, alphabet, depth, config.max_choices)? {
        let (r1, g1) = evaluate(left, &f)?;
        let (r2, g2) = evaluate(right, &f)?;
        if r1 != r2 {
            return Ok(Some(Witness { state: f, probe: Probe::Reply }));
        }
        if let Some(p) = probes.iter().find(|p| g1.get(p) != g2.get(p)) {
            return Ok(Some(Witness { state: f, probe: Probe::After(p.clone()) }));
        }
    }
    Ok(None)
}

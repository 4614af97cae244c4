//! Axiom tables per congruence and their randomized soundness check.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{oracle_equivalent, DecideError, OracleConfig};
use crate::normalize::Congruence;
use crate::random::{random_term_bounded, rng};
use crate::syntax::parse_term;
use crate::term::{Atom, Term};

/// One equation. Identifiers are variables; those listed in `atom_vars`
/// range over atoms only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
    pub atom_vars: &'static [&'static str],
    /// A consequence checked alongside the axioms rather than one of them.
    pub derived: bool,
}

impl Axiom {
    const fn law(name: &'static str, lhs: &'static str, rhs: &'static str) -> Axiom {
        Axiom { name, lhs, rhs, atom_vars: &[], derived: false }
    }

    const fn scheme(name: &'static str, lhs: &'static str, rhs: &'static str, atom_vars: &'static [&'static str]) -> Axiom {
        Axiom { name, lhs, rhs, atom_vars, derived: false }
    }

    const fn consequence(name: &'static str, lhs: &'static str, rhs: &'static str) -> Axiom {
        Axiom { name, lhs, rhs, atom_vars: &[], derived: true }
    }

    pub fn sides(&self) -> (Term, Term) {
        (parse_term(self.lhs).expect("axiom text parses"), parse_term(self.rhs).expect("axiom text parses"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomTable {
    pub name: &'static str,
    pub axioms: &'static [Axiom],
}

const CP: &[Axiom] = &[
    Axiom::law("CP1", "x <| T |> y", "x"),
    Axiom::law("CP2", "x <| F |> y", "y"),
    Axiom::law("CP3", "T <| x |> F", "x"),
    Axiom::law("CP4", "x <| (y <| z |> u) |> v", "(x <| y |> v) <| z |> (x <| u |> v)"),
    Axiom::consequence("swap", "y <| x |> z", "z <| (F <| x |> T) |> y"),
];

const RP: &[Axiom] = &[
    Axiom::scheme("CPrp1", "(x <| a |> y) <| a |> z", "(x <| a |> x) <| a |> z", &["a"]),
    Axiom::scheme("CPrp2", "x <| a |> (y <| a |> z)", "x <| a |> (z <| a |> z)", &["a"]),
];

const CR: &[Axiom] = &[
    Axiom::scheme("CPcr1", "(x <| a |> y) <| a |> z", "x <| a |> z", &["a"]),
    Axiom::scheme("CPcr2", "x <| a |> (y <| a |> z)", "x <| a |> z", &["a"]),
];

const WM: &[Axiom] = &[
    Axiom::scheme("CPwm1", "((x <| a |> y) <| b |> z) <| a |> v", "(x <| b |> z) <| a |> v", &["a", "b"]),
    Axiom::scheme("CPwm2", "x <| a |> (y <| b |> (z <| a |> v))", "x <| a |> (y <| b |> v)", &["a", "b"]),
];

const MEM: &[Axiom] = &[
    Axiom::law("CPmem", "x <| y |> (z <| u |> (v <| y |> w))", "x <| y |> (z <| u |> w)"),
    Axiom::consequence("mem-inner-left", "x <| y |> ((z <| y |> u) <| v |> w)", "x <| y |> (u <| v |> w)"),
    Axiom::consequence("mem-outer-right", "(x <| y |> (z <| u |> v)) <| u |> w", "(x <| y |> z) <| u |> w"),
    Axiom::consequence("mem-outer-left", "((x <| y |> z) <| u |> v) <| y |> w", "(x <| u |> v) <| y |> w"),
    Axiom::consequence("mem-contr-right", "x <| y |> (v <| y |> w)", "x <| y |> w"),
    Axiom::consequence("mem-contr-left", "(x <| y |> z) <| y |> w", "x <| y |> w"),
];

const ST: &[Axiom] = &[
    Axiom::law("CPstat", "(x <| y |> z) <| u |> v", "(x <| u |> v) <| y |> (z <| u |> v)"),
    Axiom::law("CPcontr", "(x <| y |> z) <| y |> u", "x <| y |> u"),
    Axiom::consequence("CPstat'", "x <| y |> (z <| u |> v)", "(x <| y |> z) <| u |> (x <| y |> v)"),
    Axiom::consequence("CPcontr'", "x <| y |> (z <| y |> u)", "x <| y |> u"),
    Axiom::consequence("idem", "x <| y |> x", "x"),
];

/// The six tables, each listing what its congruence adds to the ones it
/// builds on.
pub fn tables() -> [AxiomTable; 6] {
    [
        AxiomTable { name: "CP", axioms: CP },
        AxiomTable { name: "CPrp", axioms: RP },
        AxiomTable { name: "CPcr", axioms: CR },
        AxiomTable { name: "CPwm", axioms: WM },
        AxiomTable { name: "CPmem", axioms: MEM },
        AxiomTable { name: "CPst", axioms: ST },
    ]
}

/// Everything that holds under `k` and gets checked: the base laws plus the
/// congruence's own table (weak memory also inherits contraction).
pub fn axioms_for(k: Congruence) -> Vec<Axiom> {
    let extra: &[&[Axiom]] = match k {
        Congruence::Free => &[],
        Congruence::Rp => &[RP],
        Congruence::Cr => &[CR],
        Congruence::Wm => &[CR, WM],
        Congruence::Mem => &[MEM],
        Congruence::St => &[ST],
    };
    CP.iter().chain(extra.iter().flat_map(|t| t.iter())).copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Up to three failing instances.
    pub failures: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub congruence: Congruence,
    pub samples: usize,
    pub rows: Vec<AxiomReport>,
}

impl SoundnessReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.failed == 0)
    }
}

fn instantiate(t: &Term, binding: &BTreeMap<Atom, Term>) -> Term {
    match t {
        Term::Atom(a) => binding.get(a).cloned().unwrap_or_else(|| t.clone()),
        Term::Cond(x, y, z) => Term::cond(instantiate(x, binding), instantiate(y, binding), instantiate(z, binding)),
        leaf => leaf.clone(),
    }
}

/// A closed instance over `atoms`: scheme atoms get atoms, other variables
/// get random terms of query bound at most `leaf_bound`.
pub fn random_instance<R: Rng>(axiom: &Axiom, atoms: &[Atom], leaf_bound: usize, rng: &mut R) -> (Term, Term) {
    let (lhs, rhs) = axiom.sides();
    let vars = crate::term::atoms_of(&lhs).into_iter().chain(crate::term::atoms_of(&rhs));
    let binding: BTreeMap<Atom, Term> = vars
        .map(|v| {
            let value = if axiom.atom_vars.contains(&v.name()) {
                Term::Atom(atoms.choose(rng).expect("atoms given").clone())
            } else {
                let bound = rng.gen_range(0..=leaf_bound);
                random_term_bounded(rng, atoms, bound)
            };
            (v, value)
        })
        .collect();
    (instantiate(&lhs, &binding), instantiate(&rhs, &binding))
}

/// `samples` random closed instances of every law in [`axioms_for`] over
/// the atoms `a` and `b`, each compared by the state search.
pub fn axiom_soundness_suite(
    k: Congruence,
    samples: usize,
    seed: u64,
    config: &OracleConfig,
) -> Result<SoundnessReport, DecideError> {
    let atoms = [Atom::new("a").expect("valid"), Atom::new("b").expect("valid")];
    let mut rng = rng(seed);
    let mut rows = Vec::new();
    for axiom in axioms_for(k) {
        let mut row = AxiomReport { name: axiom.name, passed: 0, failed: 0, failures: Vec::new() };
        for _ in 0..samples {
            let (l, r) = random_instance(&axiom, &atoms, 2, &mut rng);
            if oracle_equivalent(&l, &r, k, config)?.equivalent {
                row.passed += 1;
            } else {
                row.failed += 1;
                if row.failures.len() < 3 {
                    row.failures.push((l.to_string(), r.to_string()));
                }
            }
        }
        rows.push(row);
    }
    Ok(SoundnessReport { congruence: k, samples, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_for;

    #[test]
    fn tables_parse() {
        for table in tables() {
            for ax in table.axioms {
                let (l, r) = ax.sides();
                assert_ne!(l, r, "{}", ax.name);
            }
        }
        assert_eq!(axioms_for(Congruence::Wm).len(), CP.len() + 4);
    }

    #[test]
    fn laws_hold_for_canonical_forms() {
        let atoms = [Atom::new("a").unwrap(), Atom::new("b").unwrap()];
        let mut r = rng(3);
        for k in Congruence::ALL {
            for ax in axioms_for(k) {
                for _ in 0..20 {
                    let (l, rr) = random_instance(&ax, &atoms, 2, &mut r);
                    let order = atoms.to_vec();
                    assert_eq!(
                        normalize_for(&l, k, Some(&order)).unwrap(),
                        normalize_for(&rr, k, Some(&order)).unwrap(),
                        "{k} {}: {l} vs {rr}",
                        ax.name
                    );
                }
            }
        }
    }

    #[test]
    fn small_soundness_run() {
        for k in Congruence::ALL {
            let report = axiom_soundness_suite(k, 5, 1, &OracleConfig::default()).unwrap();
            assert!(report.all_passed(), "{report:?}");
        }
    }

    #[test]
    fn contraction_fails_without_memory() {
        // Contraction is not sound for free states.
        let report = axiom_soundness_suite(Congruence::Free, 1, 0, &OracleConfig::default()).unwrap();
        assert!(report.all_passed());
        let (l, r) = CR[0].sides();
        let binding: BTreeMap<Atom, Term> = [("x", "T"), ("y", "F"), ("z", "F")]
            .into_iter()
            .map(|(v, t)| (Atom::new(v).unwrap(), parse_term(t).unwrap()))
            .collect();
        let verdict =
            oracle_equivalent(&instantiate(&l, &binding), &instantiate(&r, &binding), Congruence::Free, &OracleConfig::default())
                .unwrap();
        assert!(!verdict.equivalent);
    }
}

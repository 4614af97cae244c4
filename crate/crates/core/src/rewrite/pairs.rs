use std::collections::BTreeMap;

use super::pattern::{Branch, PatternTerm, Position, Var};
use super::{normal_form, RewriteSystem, RuleId, SystemId};

/// An overlap of two rules and the two one-step results it yields.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub rules: (RuleId, RuleId),
    pub overlap: PatternTerm,
    pub left: PatternTerm,
    pub right: PatternTerm,
    /// Common reduct written out for the overlap of CP4 with itself.
    pub stated_reduct: Option<PatternTerm>,
}

#[derive(Debug, Clone)]
pub struct JoinOutcome {
    pub left_normal: PatternTerm,
    pub right_normal: PatternTerm,
    pub joinable: bool,
}

fn pair(rules: (RuleId, RuleId), overlap: &str, left: &str, right: &str) -> CriticalPair {
    CriticalPair {
        rules,
        overlap: PatternTerm::schema(overlap),
        left: PatternTerm::schema(left),
        right: PatternTerm::schema(right),
        stated_reduct: None,
    }
}

/// The overlaps of the system, transcribed rather than computed by unification.
pub fn critical_pairs(system: SystemId) -> Vec<CriticalPair> {
    use RuleId::*;
    let mut out = vec![
        pair((CP1, CP3), "T <| T |> F", "T", "T"),
        pair((CP1, CP4), "x <| (y <| T |> u) |> v", "x <| y |> v", "(x <| y |> v) <| T |> (x <| u |> v)"),
        pair((CP2, CP3), "T <| F |> F", "F", "F"),
        pair((CP2, CP4), "x <| (y <| F |> u) |> v", "x <| u |> v", "(x <| y |> v) <| F |> (x <| u |> v)"),
        pair((CP3, CP4), "x <| (T <| z |> F) |> v", "x <| z |> v", "(x <| T |> v) <| z |> (x <| F |> v)"),
        pair((CP3, CP4), "T <| (y <| z |> u) |> F", "y <| z |> u", "(T <| y |> F) <| z |> (T <| u |> F)"),
    ];
    let mut self_overlap = pair(
        (CP4, CP4),
        "x <| (w <| (y <| z |> u) |> r) |> v",
        "(x <| w |> v) <| (y <| z |> u) |> (x <| r |> v)",
        "x <| ((w <| y |> r) <| z |> (w <| u |> r)) |> v",
    );
    self_overlap.stated_reduct =
        Some(PatternTerm::schema("((x <| w |> v) <| y |> (x <| r |> v)) <| z |> ((x <| w |> v) <| u |> (x <| r |> v))"));
    out.push(self_overlap);
    if system == SystemId::Cpt {
        out.extend([
            pair((CP1, TTT), "T <| T |> T", "T", "T"),
            pair((CP2, TTT), "T <| F |> T", "T", "T"),
            pair((CP4, TTT), "T <| (y <| z |> u) |> T", "(T <| y |> T) <| z |> (T <| u |> T)", "T"),
            pair((CP4, TTT), "x <| (T <| z |> T) |> u", "(x <| T |> u) <| z |> (x <| T |> u)", "x <| T |> u"),
        ]);
    }
    out
}

/// Normalize both sides, variables acting as constants.
pub fn join(pair: &CriticalPair, system: &RewriteSystem) -> JoinOutcome {
    let left_normal = normal_form(&pair.left, system);
    let right_normal = normal_form(&pair.right, system);
    let joinable = left_normal == right_normal;
    JoinOutcome { left_normal, right_normal, joinable }
}

pub fn joinable(pair: &CriticalPair, system: &RewriteSystem) -> bool {
    join(pair, system).joinable
}

/// Equal up to a bijective renaming of variables.
pub fn alpha_equivalent(a: &PatternTerm, b: &PatternTerm) -> bool {
    fn go(a: &PatternTerm, b: &PatternTerm, fwd: &mut BTreeMap<Var, Var>, back: &mut BTreeMap<Var, Var>) -> bool {
        match (a, b) {
            (PatternTerm::Var(x), PatternTerm::Var(y)) => {
                let f = fwd.entry(x.clone()).or_insert_with(|| y.clone()).clone();
                let g = back.entry(y.clone()).or_insert_with(|| x.clone()).clone();
                &f == y && &g == x
            }
            (PatternTerm::Cond(m), PatternTerm::Cond(n)) => {
                m.parts().iter().zip(n.parts().iter()).all(|(p, q)| go(p, q, fwd, back))
            }
            (PatternTerm::Var(_), _) | (_, PatternTerm::Var(_)) => false,
            _ => a == b,
        }
    }
    go(a, b, &mut BTreeMap::new(), &mut BTreeMap::new())
}

/// Every result of contracting one `rule` redex anywhere in `t`.
pub fn one_step_reducts(t: &PatternTerm, system: &RewriteSystem, rule: RuleId) -> Vec<PatternTerm> {
    fn positions(t: &PatternTerm, path: &mut Vec<Branch>, out: &mut Vec<Position>) {
        out.push(Position(path.clone()));
        if let PatternTerm::Cond(n) = t {
            for (b, c) in Branch::ALL.iter().zip(n.parts()) {
                path.push(*b);
                positions(c, path, out);
                path.pop();
            }
        }
    }
    let Some(r) = system.rule(rule) else {
        return Vec::new();
    };
    let mut all = Vec::new();
    positions(t, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter_map(|pos| {
            let sub = t.subterm(&pos)?;
            r.apply_at_root(sub).map(|c| t.replace(&pos, c))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(critical_pairs(SystemId::Cp).len(), 7);
        assert_eq!(critical_pairs(SystemId::Cpt).len(), 11);
    }

    #[test]
    fn listed_pairs_are_one_step_results_of_their_overlaps() {
        let sys = RewriteSystem::cpt();
        for cp in critical_pairs(SystemId::Cpt) {
            let (r1, r2) = cp.rules;
            let via_first = one_step_reducts(&cp.overlap, &sys, r1);
            let via_second = one_step_reducts(&cp.overlap, &sys, r2);
            let forward = via_first.contains(&cp.left) && via_second.contains(&cp.right);
            let swapped = via_first.contains(&cp.right) && via_second.contains(&cp.left);
            assert!(forward || swapped, "{:?} on {}", cp.rules, cp.overlap);
        }
    }

    #[test]
    fn cp_pairs_join() {
        let sys = RewriteSystem::cp();
        for cp in critical_pairs(SystemId::Cp) {
            assert!(joinable(&cp, &sys), "{:?} on {}", cp.rules, cp.overlap);
        }
    }

    #[test]
    fn self_overlap_reduct_matches_written_form() {
        let sys = RewriteSystem::cp();
        let cp = critical_pairs(SystemId::Cp).into_iter().find(|c| c.rules == (RuleId::CP4, RuleId::CP4)).unwrap();
        let out = join(&cp, &sys);
        assert!(out.joinable);
        assert!(alpha_equivalent(&out.left_normal, cp.stated_reduct.as_ref().unwrap()));
    }

    #[test]
    fn last_extended_pair_does_not_join() {
        // x <| z |> x against x: the extended system has two normal forms here.
        let sys = RewriteSystem::cpt();
        let pairs = critical_pairs(SystemId::Cpt);
        let verdicts: Vec<bool> = pairs.iter().map(|c| joinable(c, &sys)).collect();
        assert_eq!(verdicts.iter().filter(|j| **j).count(), 10);
        let out = join(&pairs[10], &sys);
        assert_eq!(out.left_normal, PatternTerm::schema("x <| z |> x"));
        assert_eq!(out.right_normal, PatternTerm::schema("x"));
    }

    #[test]
    fn renaming() {
        let a = PatternTerm::schema("x <| y |> x");
        assert!(alpha_equivalent(&a, &PatternTerm::schema("p <| q |> p")));
        assert!(!alpha_equivalent(&a, &PatternTerm::schema("p <| q |> q")));
        assert!(!alpha_equivalent(&a, &PatternTerm::schema("p <| p |> p")));
    }
}

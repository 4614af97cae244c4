//! Left-to-right directed conditional axioms as a term rewriting system.

mod pattern;
mod pairs;
pub mod weight;

use std::fmt;

use serde::Serialize;

pub use pairs::{alpha_equivalent, critical_pairs, join, joinable, one_step_reducts, CriticalPair, JoinOutcome};
pub use pattern::{Branch, PatternTerm, Position, Var};
pub use weight::{HNat, Weight};

use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleId {
    CP1,
    CP2,
    CP3,
    CP4,
    TTT,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SystemId {
    /// CP1 to CP4.
    Cp,
    /// CP1 to CP4 plus `T <| x |> T -> T`.
    Cpt,
}

impl SystemId {
    fn slot(self) -> usize {
        match self {
            SystemId::Cp => 0,
            SystemId::Cpt => 1,
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemId::Cp => "cp",
            SystemId::Cpt => "cpt",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RewriteRule {
    pub id: RuleId,
    pub lhs: PatternTerm,
    pub rhs: PatternTerm,
}

impl RewriteRule {
    fn new(id: RuleId, lhs: &str, rhs: &str) -> RewriteRule {
        let rule = RewriteRule { id, lhs: PatternTerm::schema(lhs), rhs: PatternTerm::schema(rhs) };
        debug_assert!(rule.rhs.vars().is_subset(&rule.lhs.vars()));
        rule
    }

    /// Contract at the root of `t` if the left-hand side matches.
    pub fn apply_at_root(&self, t: &PatternTerm) -> Option<PatternTerm> {
        let mut binding = Vec::new();
        if pattern::matches(&self.lhs, t, &mut binding) {
            Some(pattern::instantiate(&self.rhs, &binding))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub id: SystemId,
    pub rules: Vec<RewriteRule>,
}

impl RewriteSystem {
    pub fn cp() -> RewriteSystem {
        RewriteSystem {
            id: SystemId::Cp,
            rules: vec![
                RewriteRule::new(RuleId::CP1, "x <| T |> y", "x"),
                RewriteRule::new(RuleId::CP2, "x <| F |> y", "y"),
                RewriteRule::new(RuleId::CP3, "T <| x |> F", "x"),
                RewriteRule::new(RuleId::CP4, "x <| (y <| z |> u) |> v", "(x <| y |> v) <| z |> (x <| u |> v)"),
            ],
        }
    }

    pub fn cpt() -> RewriteSystem {
        let mut sys = RewriteSystem::cp();
        sys.id = SystemId::Cpt;
        sys.rules.push(RewriteRule::new(RuleId::TTT, "T <| x |> T", "T"));
        sys
    }

    pub fn by_id(id: SystemId) -> RewriteSystem {
        match id {
            SystemId::Cp => RewriteSystem::cp(),
            SystemId::Cpt => RewriteSystem::cpt(),
        }
    }

    pub fn rule(&self, id: RuleId) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    fn contract_root(&self, t: &PatternTerm) -> Option<(RuleId, PatternTerm)> {
        if !matches!(t, PatternTerm::Cond(_)) {
            return None;
        }
        self.rules.iter().find_map(|r| r.apply_at_root(t).map(|out| (r.id, out)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Innermost,
    Outermost,
}

#[derive(Debug, Clone)]
pub struct Step {
    pub position: Position,
    pub rule: RuleId,
    pub before: PatternTerm,
    pub after: PatternTerm,
}

impl Step {
    pub fn weight_before(&self) -> Weight {
        self.before.weight()
    }

    pub fn weight_after(&self) -> Weight {
        self.after.weight()
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pos={} rule={} w_before={} w_after={}",
            self.position,
            self.rule,
            self.weight_before(),
            self.weight_after()
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct RewriteTrace {
    pub steps: Vec<Step>,
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Each step starts where the previous one ended.
    pub fn is_chained(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].after == w[1].before)
    }

    pub fn weights_decrease(&self) -> bool {
        self.steps.iter().all(|s| s.weight_after() < s.weight_before())
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

fn find_innermost(t: &PatternTerm, sys: &RewriteSystem, path: &mut Vec<Branch>) -> Option<RuleId> {
    let PatternTerm::Cond(node) = t else {
        return None;
    };
    if node.known_normal(sys.id.slot()) {
        return None;
    }
    for (branch, child) in Branch::ALL.iter().zip(node.parts()) {
        path.push(*branch);
        if let Some(r) = find_innermost(child, sys, path) {
            return Some(r);
        }
        path.pop();
    }
    if let Some((r, _)) = sys.contract_root(t) {
        return Some(r);
    }
    node.mark_normal(sys.id.slot());
    None
}

fn find_outermost(t: &PatternTerm, sys: &RewriteSystem, path: &mut Vec<Branch>) -> Option<RuleId> {
    let PatternTerm::Cond(node) = t else {
        return None;
    };
    if node.known_normal(sys.id.slot()) {
        return None;
    }
    if let Some((r, _)) = sys.contract_root(t) {
        return Some(r);
    }
    for (branch, child) in Branch::ALL.iter().zip(node.parts()) {
        path.push(*branch);
        if let Some(r) = find_outermost(child, sys, path) {
            return Some(r);
        }
        path.pop();
    }
    node.mark_normal(sys.id.slot());
    None
}

/// One contraction at the position chosen by `strategy`; `None` on normal forms.
pub fn rewrite_step_with(t: &PatternTerm, sys: &RewriteSystem, strategy: Strategy) -> Option<Step> {
    let mut path = Vec::new();
    let found = match strategy {
        Strategy::Innermost => find_innermost(t, sys, &mut path),
        Strategy::Outermost => find_outermost(t, sys, &mut path),
    };
    found?;
    let position = Position(path);
    let redex = t.subterm(&position).expect("position found by search");
    let (rule, contractum) = sys.contract_root(redex).expect("redex found by search");
    let after = t.replace(&position, contractum);
    Some(Step { position, rule, before: t.clone(), after })
}

/// Leftmost-innermost contraction, rules tried in order CP1..CP4, TTT.
pub fn rewrite_step(t: &PatternTerm, sys: &RewriteSystem) -> Option<Step> {
    rewrite_step_with(t, sys, Strategy::Innermost)
}

/// Normal form plus the full trace.
pub fn normalize_with(t: &PatternTerm, sys: &RewriteSystem, strategy: Strategy) -> (PatternTerm, RewriteTrace) {
    let mut cur = t.clone();
    let mut trace = RewriteTrace::default();
    while let Some(step) = rewrite_step_with(&cur, sys, strategy) {
        cur = step.after.clone();
        trace.steps.push(step);
    }
    (cur, trace)
}

pub fn normalize(t: &PatternTerm, sys: &RewriteSystem) -> (PatternTerm, RewriteTrace) {
    normalize_with(t, sys, Strategy::Innermost)
}

/// Normal form without keeping a trace.
pub fn normal_form_with(t: &PatternTerm, sys: &RewriteSystem, strategy: Strategy) -> PatternTerm {
    let mut cur = t.clone();
    while let Some(step) = rewrite_step_with(&cur, sys, strategy) {
        cur = step.after;
    }
    cur
}

pub fn normal_form(t: &PatternTerm, sys: &RewriteSystem) -> PatternTerm {
    normal_form_with(t, sys, Strategy::Innermost)
}

/// Closed-term convenience: innermost normal form as a `Term`.
pub fn normalize_term(t: &Term, sys: &RewriteSystem) -> Term {
    normal_form(&PatternTerm::from(t), sys).to_term().expect("closed input stays closed")
}

/// The shape every CP normal form has: constants, atoms, or conditionals whose
/// centres are atoms and which are not `T <| a |> F`.
pub fn is_cp_normal_shape(t: &PatternTerm) -> bool {
    match t {
        PatternTerm::Cond(node) => {
            let [x, y, z] = node.parts();
            let centre_ok = matches!(y, PatternTerm::Atom(_) | PatternTerm::Var(_));
            let not_identity = !(matches!(x, PatternTerm::True) && matches!(z, PatternTerm::False));
            centre_ok && not_identity && is_cp_normal_shape(x) && is_cp_normal_shape(z)
        }
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn p(s: &str) -> PatternTerm {
        PatternTerm::from(&parse_term(s).unwrap())
    }

    #[test]
    fn single_steps() {
        let cp = RewriteSystem::cp();
        let s = rewrite_step(&p("T <| T |> F"), &cp).unwrap();
        assert_eq!((s.after.clone(), s.rule, s.position.is_root()), (p("T"), RuleId::CP1, true));
        assert!(rewrite_step(&p("a"), &cp).is_none());
        let s = rewrite_step(&p("a <| (b <| c |> d) |> e"), &cp).unwrap();
        assert_eq!(s.after, p("(a <| b |> e) <| c |> (a <| d |> e)"));
        assert_eq!(s.rule, RuleId::CP4);
        assert!(s.position.is_root());
    }

    #[test]
    fn innermost_picks_leftmost_deepest() {
        let cp = RewriteSystem::cp();
        let s = rewrite_step(&p("(T <| T |> a) <| b |> (T <| F |> a)"), &cp).unwrap();
        assert_eq!(s.position.to_string(), "then");
        let s = rewrite_step(&p("T <| (T <| a |> F) |> F"), &cp).unwrap();
        assert_eq!((s.position.to_string(), s.rule), ("cond".to_string(), RuleId::CP3));
        let s = rewrite_step_with(&p("T <| (T <| a |> F) |> F"), &cp, Strategy::Outermost).unwrap();
        assert_eq!((s.position.to_string(), s.rule), ("root".to_string(), RuleId::CP3));
    }

    #[test]
    fn normal_forms() {
        let cp = RewriteSystem::cp();
        let cpt = RewriteSystem::cpt();
        // CP3 fires on T <| a |> F, so the normal form is the bare atom.
        let (nf, trace) = normalize(&p("T <| (T <| a |> F) |> F"), &cp);
        assert_eq!(nf, p("a"));
        assert!(trace.is_chained() && trace.weights_decrease());
        assert_eq!(normalize(&p("T <| a |> T"), &cpt).0, p("T"));
        assert_eq!(normalize(&p("T <| a |> T"), &cp).0, p("T <| a |> T"));
        assert_eq!(normalize(&p("T <| a |> b"), &cpt).0, p("T <| a |> b"));
    }

    #[test]
    fn trace_rendering() {
        let cp = RewriteSystem::cp();
        let (_, trace) = normalize(&p("T <| T |> F"), &cp);
        assert_eq!(trace.to_string(), "pos=root rule=CP1 w_before=16 w_after=2\n");
    }

    #[test]
    fn normal_shape() {
        assert!(is_cp_normal_shape(&p("(T <| b |> a) <| a |> F")));
        assert!(!is_cp_normal_shape(&p("T <| a |> F")));
        assert!(!is_cp_normal_shape(&p("a <| (b <| c |> d) |> e")));
    }
}

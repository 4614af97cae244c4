//! `(a && F) || b` and `F || b` have the same truth table but differ as
//! sequential programs: the first evaluates `a`, which may change how `b`
//! answers.
use hmalab::decide::{decide, OracleConfig, Probe};
use hmalab::normalize::Congruence;
use hmalab::semantics::{parse_state_file, reply, AtomString};
use hmalab::syntax::parse_term;

fn main() {
    let left = parse_term("(a && F) || b").unwrap();
    let right = parse_term("F || b").unwrap();
    let config = OracleConfig::default();
    for k in [Congruence::Free, Congruence::St] {
        let v = decide(&left, &right, k, &config).unwrap();
        println!("{k}: {}", if v.equivalent { "equivalent" } else { "different" });
        let Some(w) = v.witness else { continue };
        assert_eq!(w.probe, Probe::Reply);
        let at = |s: &str| w.state.get(&AtomString::parse(s).unwrap()).unwrap();
        println!("  f(b) = {}, f(a.b) = {}", at("b"), at("a.b"));
        // The witness survives a round trip through its text form.
        let state = parse_state_file(&w.to_state_file()).unwrap().state;
        println!("  replies: {} vs {}", reply(&left, &state).unwrap(), reply(&right, &state).unwrap());
    }
}

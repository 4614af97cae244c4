//! Rewrite to normal form with a weight trace, compare strategies and check
//! the critical pairs of both systems.
use hmalab::rewrite::{critical_pairs, join, normalize_with, PatternTerm, RewriteSystem, Strategy, SystemId};
use hmalab::syntax::parse_term;

fn main() {
    let t = PatternTerm::from(&parse_term("a <| (T <| b |> F) |> (c <| F |> d)").expect("valid term"));
    for strategy in [Strategy::Innermost, Strategy::Outermost] {
        let (nf, trace) = normalize_with(&t, &RewriteSystem::cp(), strategy);
        println!("{strategy:?}: {} steps to {nf}", trace.len());
        print!("{trace}");
    }

    for id in [SystemId::Cp, SystemId::Cpt] {
        let system = RewriteSystem::by_id(id);
        for pair in critical_pairs(id) {
            let outcome = join(&pair, &system);
            println!(
                "{id} {}/{}: {} ({})",
                pair.rules.0,
                pair.rules.1,
                if outcome.joinable { "joinable" } else { "NOT joinable" },
                pair.overlap
            );
        }
    }
}

//! Decide equivalence under one congruence and across the whole ladder.
use hmalab::decide::{decide, equivalence_profile, OracleConfig};
use hmalab::normalize::Congruence;
use hmalab::syntax::parse_term;

fn main() {
    let config = OracleConfig::default();
    let pairs = [
        ("(T <| a |> F) <| a |> F", "T <| a |> F"),
        ("T <| a |> T", "T"),
        ("a && b", "b && a"),
    ];
    for (l, r) in pairs {
        let (left, right) = (parse_term(l).expect("valid"), parse_term(r).expect("valid"));
        let profile = equivalence_profile(&left, &right, &config).expect("decidable");
        let flags: Vec<String> =
            profile.flags().iter().map(|(k, eq)| format!("{k}={}", if *eq { "yes" } else { "no" })).collect();
        println!("{l}  vs  {r}: {}", flags.join(" "));
    }

    let v = decide(&parse_term("a && b").unwrap(), &parse_term("b && a").unwrap(), Congruence::Mem, &config).unwrap();
    if let Some(w) = v.witness {
        println!("memorizing states that tell `a && b` from `b && a`:\n{}", w.to_state_file());
    }
}

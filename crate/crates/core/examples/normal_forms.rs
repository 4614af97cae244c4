//! Canonical forms of one term under each of the six congruences.
use hmalab::normalize::{normalize_for, Congruence};
use hmalab::syntax::{parse_term, print_term, Style};

fn main() {
    let t = parse_term("((T <| a |> F) <| b |> F) <| a |> (b || a)").expect("valid term");
    println!("term: {t}");
    for k in Congruence::ALL {
        let form = normalize_for(&t, k, None).expect("default order covers the term");
        println!("{k:>4}: {}  (size {})", print_term(&form.to_term(), Style::Sugared), form.size());
    }
}

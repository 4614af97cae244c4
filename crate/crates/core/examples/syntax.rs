//! Parse terms written with sugar and print them back in both styles.
use hmalab::syntax::{parse_term, parse_term_list, print_term, Style};
use hmalab::term::{atoms_of, query_bound};

fn main() {
    let t = parse_term("(a && F) || !b").expect("valid term");
    println!("ternary: {}", print_term(&t, Style::Ternary));
    println!("sugared: {}", print_term(&t, Style::Sugared));
    println!("atoms: {:?}, query bound: {}", atoms_of(&t), query_bound(&t));

    let file = "# one term per line\nT <| a |> F\na || b\n";
    for t in parse_term_list(file).expect("valid list") {
        println!("listed: {t}");
    }

    let err = parse_term("a <| b |> c <| d |> e").unwrap_err();
    println!("rejected: {err}");
}

//! Build truncated states of several classes and evaluate a term in them.
use hmalab::semantics::{evaluate, write_state_file, StateClass, TruncatedState};
use hmalab::syntax::parse_term;
use hmalab::term::Alphabet;

fn main() {
    let alphabet = Alphabet::from_names(&["a", "b"]).expect("valid atoms");
    let t = parse_term("b <| a |> (a && b)").expect("valid term");
    for class in [StateClass::Free, StateClass::Cr, StateClass::Mem, StateClass::St] {
        let depth = if class == StateClass::St { 1 } else { 4 };
        // Answer T exactly on strings of even length.
        let f = TruncatedState::from_fn(class, &alphabet, depth, |s| s.len() % 2 == 0);
        match f.check() {
            Ok(()) => {
                let (reply, after) = evaluate(&t, &f).expect("deep enough");
                println!("{class}: reply {}, state after:\n{}", if reply { 'T' } else { 'F' }, write_state_file(&after, None));
            }
            Err(e) => println!("{class}: not a valid state: {e}\n"),
        }
    }
}

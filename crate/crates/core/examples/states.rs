//! How many truncated states each class has, and how atoms act on them.
use hmalab::semantics::{choice_count, enumerate_states, StateClass};
use hmalab::term::{Alphabet, Atom};

fn main() {
    let ab = Alphabet::from_names(&["a", "b"]).unwrap();
    for class in StateClass::ALL {
        let depth = if class == StateClass::St { 1 } else { 3 };
        let states: Vec<_> = enumerate_states(class, &ab, depth).unwrap().collect();
        println!("{class}: depth {depth}, {} free choices, {} states", choice_count(class, 2, depth), states.len());
    }
    let a = Atom::new("a").unwrap();
    let f = enumerate_states(StateClass::Cr, &ab, 3).unwrap().nth(37).unwrap();
    let once = f.apply_atom(&a).unwrap();
    let twice = once.apply_atom(&a).unwrap();
    println!("contractive: a after a leaves the state as it was: {}", once.truncate(1) == twice.truncate(1));
}

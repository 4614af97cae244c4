//! Count memorizing basic forms and core strings, and list the small cases.
use hmalab::normalize::{count_core_strings, count_mem, enumerate_core_strings, enumerate_mem_basic_forms};
use hmalab::term::Alphabet;

fn main() {
    for n in 0..=5 {
        println!("atoms {n}: {} memorizing forms, {} core strings", count_mem(n), count_core_strings(n));
    }
    let ab = Alphabet::from_names(&["a", "b"]).unwrap();
    let forms = enumerate_mem_basic_forms(&ab).unwrap();
    println!("listed {} forms over a, b; the first five:", forms.len());
    for f in forms.iter().take(5) {
        println!("  {}", f.to_term());
    }
    let strings: Vec<String> = enumerate_core_strings(&ab).iter().map(|s| s.to_string()).collect();
    println!("core strings over a, b: {}", strings.join(" "));
}

use num_bigint::BigUint;

use crate::semantics::AtomString;
use crate::term::{Alphabet, Atom, BasicForm};

use super::NormalizeError;

/// Explicit enumeration of memorizing forms stops here; four atoms already give
/// more than 10^9 forms.
pub const MAX_ENUMERATION_ATOMS: usize = 3;

/// Number of memorizing basic forms over `n` atoms: a(0) = 2, a(n) = n·a(n-1)² + 2.
pub fn count_mem(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(2u32), |prev, i| BigUint::from(i) * &prev * &prev + 2u32)
}

/// Number of non-empty strings over `n` atoms with no atom repeated:
/// b(0) = 0, b(n) = n·(b(n-1) + 1).
pub fn count_core_strings(n: u32) -> BigUint {
    (1..=n).fold(BigUint::default(), |prev, i| BigUint::from(i) * (prev + 1u32))
}

/// Every basic form over `atoms` with no atom repeated on a path, each once.
pub fn enumerate_mem_basic_forms(atoms: &Alphabet) -> Result<Vec<BasicForm>, NormalizeError> {
    if atoms.len() > MAX_ENUMERATION_ATOMS {
        return Err(NormalizeError::EnumerationGuard { size: atoms.len(), limit: MAX_ENUMERATION_ATOMS });
    }
    Ok(forms_over(atoms.atoms()))
}

fn forms_over(atoms: &[Atom]) -> Vec<BasicForm> {
    let mut out = vec![BasicForm::True, BasicForm::False];
    for (i, a) in atoms.iter().enumerate() {
        let rest: Vec<Atom> = atoms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, b)| b.clone()).collect();
        let sub = forms_over(&rest);
        for l in &sub {
            for r in &sub {
                out.push(BasicForm::node(l.clone(), a.clone(), r.clone()));
            }
        }
    }
    out
}

/// All non-empty strings over `atoms` in which no atom occurs twice, shortest first.
pub fn enumerate_core_strings(atoms: &Alphabet) -> Vec<AtomString> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..atoms.len() {
        let mut next = Vec::new();
        for s in &layer {
            for i in 0..atoms.len() {
                if !s.contains(&i) {
                    let mut longer = s.clone();
                    longer.push(i);
                    next.push(longer);
                }
            }
        }
        out.extend(next.iter().map(|s| AtomString::new(s.iter().map(|&i| atoms.get(i).clone()).collect()).expect("non-empty")));
        layer = next;
    }
    out
}

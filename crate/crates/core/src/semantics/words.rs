//! Atom strings as index vectors into an alphabet, and the per-class string
//! operations behind apply.

use super::StateClass;

pub type Word = Vec<u8>;

/// Collapse runs of equal adjacent atoms.
pub fn contract(w: &[u8]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

/// Drop trailing repetitions of the last atom: `s a a ... a` becomes `s a`.
pub fn strip_trailing_repeats(w: &[u8]) -> Word {
    let mut end = w.len();
    while end >= 2 && w[end - 1] == w[end - 2] {
        end -= 1;
    }
    w[..end].to_vec()
}

/// Left concatenation with absorption on contracted strings.
pub fn leadsto(a: u8, w: &[u8]) -> Word {
    if w.first() == Some(&a) {
        w.to_vec()
    } else {
        let mut out = Vec::with_capacity(w.len() + 1);
        out.push(a);
        out.extend_from_slice(w);
        out
    }
}

pub fn remove(w: &[u8], a: u8) -> Word {
    w.iter().copied().filter(|&x| x != a).collect()
}

/// Memorizing apply: the query after evaluating `a` once more.
pub fn mem_step(a: u8, w: &[u8]) -> Word {
    if w.last() == Some(&a) {
        vec![a]
    } else {
        let mut out = Vec::with_capacity(w.len() + 1);
        out.push(a);
        out.extend(w.iter().copied().filter(|&x| x != a));
        out
    }
}

/// Where `(a • f)(w)` is read in `f`.
pub fn apply_key(class: StateClass, a: u8, w: &[u8]) -> Word {
    match class {
        StateClass::Free | StateClass::Rp => {
            let mut out = Vec::with_capacity(w.len() + 1);
            out.push(a);
            out.extend_from_slice(w);
            out
        }
        StateClass::Cr | StateClass::Wm => leadsto(a, w),
        StateClass::Mem => mem_step(a, w),
        StateClass::St => w.to_vec(),
    }
}

/// Where `(h • f)(w)` is read in `f` after the atoms of `history` were
/// evaluated in order.
pub fn history_key(class: StateClass, history: &[u8], w: &[u8]) -> Word {
    match class {
        StateClass::Free | StateClass::Rp => {
            let mut out = history.to_vec();
            out.extend_from_slice(w);
            out
        }
        StateClass::Cr | StateClass::Wm => {
            let mut out = history.to_vec();
            out.extend_from_slice(w);
            contract(&out)
        }
        StateClass::Mem => history.iter().rev().fold(w.to_vec(), |acc, &a| mem_step(a, &acc)),
        StateClass::St => w.to_vec(),
    }
}

/// Weak-memory representative of `w`: the shortest history leading to the
/// same state. Appending `x` is absorbed when every reply since the last `x`
/// in the reduced history equals the reply `x` got then; the query is
/// answered from memory and the state does not move. An immediate repeat is
/// the case with nothing in between. `value` is only asked about prefixes of
/// the reduced history.
pub fn wm_reduce<E>(w: &[u8], value: &mut dyn FnMut(&[u8]) -> Result<bool, E>) -> Result<Word, E> {
    let mut r: Word = Vec::with_capacity(w.len());
    for &x in w {
        if let Some(i) = r.iter().rposition(|&y| y == x) {
            let remembered = value(&r[..=i])?;
            let mut steady = true;
            for j in i + 1..r.len() {
                if value(&r[..=j])? != remembered {
                    steady = false;
                    break;
                }
            }
            if steady {
                continue;
            }
        }
        r.push(x);
    }
    Ok(r)
}

pub fn is_contracted(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

pub fn is_core(w: &[u8]) -> bool {
    w.iter().enumerate().all(|(i, x)| !w[..i].contains(x))
}

/// Admissible words of length 1..=depth, shortest first, then by index order.
pub fn admissible_words(class: StateClass, n: usize, depth: usize) -> Vec<Word> {
    let max_len = match class {
        StateClass::St => depth.min(1),
        StateClass::Mem => depth.min(n),
        _ => depth,
    };
    let mut out = Vec::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..n as u8 {
                let ok = match class {
                    StateClass::Free | StateClass::Rp | StateClass::St => true,
                    StateClass::Cr | StateClass::Wm => w.last() != Some(&x),
                    StateClass::Mem => !w.contains(&x),
                };
                if ok {
                    let mut longer = w.clone();
                    longer.push(x);
                    next.push(longer);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction() {
        assert_eq!(contract(&[0, 0, 1]), vec![0, 1]);
        assert_eq!(contract(&[0]), vec![0]);
        assert_eq!(contract(&[0, 1, 1, 0]), vec![0, 1, 0]);
        assert_eq!(strip_trailing_repeats(&[0, 1, 1, 1]), vec![0, 1]);
        assert_eq!(strip_trailing_repeats(&[0, 0, 1]), vec![0, 0, 1]);
    }

    #[test]
    fn absorption() {
        assert_eq!(leadsto(0, &[0]), vec![0]);
        assert_eq!(leadsto(0, &[1]), vec![0, 1]);
        assert_eq!(leadsto(0, &[0, 1]), vec![0, 1]);
        for w in admissible_words(StateClass::Cr, 3, 4) {
            for a in 0..3 {
                let once = leadsto(a, &w);
                assert!(is_contracted(&once));
                assert_eq!(leadsto(a, &once), once);
            }
        }
    }

    #[test]
    fn weak_memory_looks_past_several_atoms() {
        let steady = |_: &[u8]| -> Result<bool, ()> { Ok(true) };
        // a c a collapses to a c; the later a is still answered from memory.
        assert_eq!(wm_reduce(&[0, 2, 0, 1, 0], &mut { steady }).unwrap(), vec![0, 2, 1]);
        assert_eq!(wm_reduce(&[0, 2, 1, 0], &mut { steady }).unwrap(), vec![0, 2, 1]);
        // A changed reply in between forces the query.
        let mut flip = |w: &[u8]| -> Result<bool, ()> { Ok(w.len() != 2) };
        assert_eq!(wm_reduce(&[0, 2, 1, 0], &mut flip).unwrap(), vec![0, 2, 1, 0]);
        assert_eq!(wm_reduce(&[0, 0, 1, 1], &mut flip).unwrap(), vec![0, 1]);
    }

    #[test]
    fn memorizing_steps() {
        assert_eq!(mem_step(0, &[1, 0]), vec![0]);
        assert_eq!(mem_step(0, &[0, 1]), vec![0, 1]);
        assert_eq!(mem_step(0, &[1]), vec![0, 1]);
        assert_eq!(remove(&[0, 1], 0), vec![1]);
        assert_eq!(remove(&[1], 0), vec![1]);
        assert!(remove(&[0], 0).is_empty());
    }

    #[test]
    fn history_keys_compose_single_steps() {
        let classes = [StateClass::Free, StateClass::Rp, StateClass::Cr, StateClass::Wm, StateClass::Mem, StateClass::St];
        for class in classes {
            for w in admissible_words(class, 2, 2) {
                let h = [0u8, 1, 1, 0];
                let stepwise = h.iter().rev().fold(w.clone(), |acc, &a| apply_key(class, a, &acc));
                assert_eq!(history_key(class, &h, &w), stepwise, "{class:?} {w:?}");
            }
        }
    }

    #[test]
    fn domains() {
        assert_eq!(admissible_words(StateClass::Cr, 2, 2), vec![vec![0], vec![1], vec![0, 1], vec![1, 0]]);
        assert_eq!(admissible_words(StateClass::Mem, 2, 99).len(), 4);
        assert_eq!(admissible_words(StateClass::St, 2, 5).len(), 2);
        assert_eq!(admissible_words(StateClass::Free, 2, 3).len(), 14);
    }
}

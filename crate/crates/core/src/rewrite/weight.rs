//! Termination weights. Every weight is a power of two, so only the exponent is
//! stored, itself in hereditary binary: a number is the set of exponents of its
//! one bits, each exponent again such a number. Towers like `2^(2^(2^...))` stay
//! small and comparisons remain exact.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

/// Natural number. Values below 2^64 are kept as machine words; larger ones
/// as a strictly descending list of binary exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HNat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(u64),
    /// Invariant: the leading exponent is at least 64.
    Big(Arc<Vec<HNat>>),
}

impl Default for HNat {
    fn default() -> HNat {
        HNat::zero()
    }
}

impl HNat {
    pub fn zero() -> HNat {
        HNat(Repr::Small(0))
    }

    pub fn one() -> HNat {
        HNat(Repr::Small(1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn from_u64(n: u64) -> HNat {
        HNat(Repr::Small(n))
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.0 {
            Repr::Small(n) => Some(n),
            Repr::Big(_) => None,
        }
    }

    /// Descending exponents of the one bits.
    fn exponents(&self) -> Vec<HNat> {
        match &self.0 {
            Repr::Small(n) => (0..64u64).rev().filter(|i| n >> i & 1 == 1).map(HNat::from_u64).collect(),
            Repr::Big(e) => e.as_ref().clone(),
        }
    }

    fn from_exponents(exps: Vec<HNat>) -> HNat {
        match exps.first().map(HNat::to_u64) {
            None => HNat::zero(),
            Some(Some(top)) if top < 64 => {
                HNat(Repr::Small(exps.iter().fold(0, |acc, e| acc | 1 << e.to_u64().expect("below top"))))
            }
            Some(_) => HNat(Repr::Big(Arc::new(exps))),
        }
    }

    /// Exact value when it has at most `max_bits` bits.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        if let Repr::Small(n) = self.0 {
            return (u64::from(64 - n.leading_zeros()) <= max_bits).then(|| BigUint::from(n));
        }
        let mut acc = BigUint::default();
        for e in self.exponents() {
            let e = e.to_u64().filter(|&e| e < max_bits)?;
            acc.set_bit(e, true);
        }
        Some(acc)
    }

    pub fn add(&self, other: &HNat) -> HNat {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(sum) = a.checked_add(*b) {
                return HNat(Repr::Small(sum));
            }
        }
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Ascending merge of the two exponent lists with a single carry.
        let (xs, ys) = (self.exponents(), other.exponents());
        let (mut xs, mut ys) = (xs.iter().rev().peekable(), ys.iter().rev().peekable());
        let mut carry: Option<HNat> = None;
        let mut bits = Vec::new();
        loop {
            let low = [xs.peek().copied(), ys.peek().copied(), carry.as_ref()].into_iter().flatten().min().cloned();
            let Some(low) = low else { break };
            let mut count = 0;
            if xs.peek() == Some(&&low) {
                xs.next();
                count += 1;
            }
            if ys.peek() == Some(&&low) {
                ys.next();
                count += 1;
            }
            if carry.as_ref() == Some(&low) {
                carry = None;
                count += 1;
            }
            if count >= 2 {
                carry = Some(low.succ());
            }
            if count % 2 == 1 {
                bits.push(low);
            }
        }
        bits.reverse();
        HNat::from_exponents(bits)
    }

    pub fn succ(&self) -> HNat {
        self.add(&HNat::one())
    }

    /// `self * 2^k`.
    pub fn shl(&self, k: &HNat) -> HNat {
        if let (Repr::Small(n), Some(k)) = (&self.0, k.to_u64()) {
            if k < 64 && n.leading_zeros() as u64 >= k {
                return HNat(Repr::Small(n << k));
            }
        }
        HNat::from_exponents(self.exponents().iter().map(|e| e.add(k)).collect())
    }
}

impl PartialOrd for HNat {
    fn partial_cmp(&self, other: &HNat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HNat {
    // Descending exponent lists compare lexicographically, a strict prefix being smaller.
    fn cmp(&self, other: &HNat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            (Repr::Small(_), Repr::Big(_)) => Ordering::Less,
            (Repr::Big(_), Repr::Small(_)) => Ordering::Greater,
            (Repr::Big(a), Repr::Big(b)) if Arc::ptr_eq(a, b) => Ordering::Equal,
            (Repr::Big(a), Repr::Big(b)) => a.iter().cmp(b.iter()),
        }
    }
}

impl fmt::Display for HNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.to_biguint(256) {
            return write!(f, "{n}");
        }
        let parts: Vec<String> = self.exponents().iter().map(|e| format!("2^({e})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for HNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A weight `2^k`, ordered by `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    log2: HNat,
}

impl Weight {
    /// Weight of a leaf: 2.
    pub fn leaf() -> Weight {
        Weight { log2: HNat::one() }
    }

    /// `(w(x) * w(z)) ^ w(y)`.
    pub fn cond(then_w: &Weight, cond_w: &Weight, else_w: &Weight) -> Weight {
        Weight { log2: then_w.log2.add(&else_w.log2).shl(&cond_w.log2) }
    }

    pub fn log2(&self) -> &HNat {
        &self.log2
    }

    /// Exact decimal value when it has at most `max_bits` bits.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        let k = self.log2.to_u64().filter(|&k| k < max_bits)?;
        let mut n = BigUint::default();
        n.set_bit(k, true);
        Some(n)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_biguint(256) {
            Some(n) => write!(f, "{n}"),
            None if self.log2.to_biguint(256).is_some() => write!(f, "2^{}", self.log2),
            None => write!(f, "2^({})", self.log2),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

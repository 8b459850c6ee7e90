//! Certified rational enclosures of real algebraic numbers.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;

use crate::rat::Rat;

/// Default enclosure precision: width at most `2^-64`.
pub const DEFAULT_BITS: u32 = 64;

/// A closed interval `[lo, hi]` known to contain some real number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    lo: Rat,
    hi: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootError {
    /// `p(lo)` and `p(hi)` have the same strict sign.
    NoSignChange,
    InvalidBracket,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::NoSignChange => f.write_str("polynomial has no sign change on the bracket"),
            RootError::InvalidBracket => f.write_str("bracket has lo > hi"),
        }
    }
}

/// `2^-bits`.
pub fn tolerance(bits: u32) -> Rat {
    Rat::from_big(BigInt::from(1), BigInt::from(1) << bits as usize)
}

impl Enclosure {
    pub fn exact(x: Rat) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    /// Panics when `lo > hi`.
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty enclosure");
        Enclosure { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn midpoint(&self) -> Rat {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// `Some` ordering of every point of the interval against `x`, or `None`
    /// when the interval straddles or touches `x` without being exactly `x`.
    pub fn compare(&self, x: &Rat) -> Option<Ordering> {
        if self.hi < *x {
            Some(Ordering::Less)
        } else if self.lo > *x {
            Some(Ordering::Greater)
        } else if self.is_exact() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Image under `x -> a x + b`.
    pub fn affine(&self, a: &Rat, b: &Rat) -> Enclosure {
        let p = a * &self.lo + b;
        let q = a * &self.hi + b;
        if p <= q {
            Enclosure { lo: p, hi: q }
        } else {
            Enclosure { lo: q, hi: p }
        }
    }

    /// Image under a monotone map, given as a closure. `increasing` selects
    /// the orientation.
    pub fn map_monotone(&self, increasing: bool, f: impl Fn(&Rat) -> Rat) -> Enclosure {
        let (a, b) = (f(&self.lo), f(&self.hi));
        if increasing {
            Enclosure::new(a, b)
        } else {
            Enclosure::new(b, a)
        }
    }

    /// The positive real `k`-th root of `x >= 0`.
    pub fn nth_root(x: &Rat, k: u32, bits: u32) -> Enclosure {
        assert!(!x.is_negative() && k >= 1);
        if let Some(r) = x.exact_root(k) {
            return Enclosure::exact(r);
        }
        let hi = x.clone().max(Rat::one());
        let target = x.clone();
        bisect_monotone(Rat::zero(), hi, bits, |t| t.pow(k).cmp(&target))
    }

    /// Decimal rendering `[lo, hi]` truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> alloc::string::String {
        if self.is_exact() {
            self.lo.to_decimal(digits)
        } else {
            alloc::format!("[{}, {}]", self.lo.to_decimal(digits), self.hi.to_decimal(digits))
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Bisection for an increasing predicate: `probe(t)` reports how `g(t)`
/// compares with the target value.
pub fn bisect_monotone(mut lo: Rat, mut hi: Rat, bits: u32, probe: impl Fn(&Rat) -> Ordering) -> Enclosure {
    let tol = tolerance(bits);
    match probe(&lo) {
        Ordering::Equal => return Enclosure::exact(lo),
        Ordering::Greater => return Enclosure::exact(lo),
        Ordering::Less => {}
    }
    if probe(&hi) == Ordering::Equal {
        return Enclosure::exact(hi);
    }
    while &hi - &lo > tol {
        let mid = lo.midpoint(&hi);
        match probe(&mid) {
            Ordering::Equal => return Enclosure::exact(mid),
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
        }
    }
    Enclosure::new(lo, hi)
}

/// Polynomial with rational coefficients, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial { coeffs: coeffs.iter().map(|&c| Rat::int(c)).collect() }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
        Polynomial { coeffs: (0..n).map(|i| get(self, i) + get(other, i)).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Polynomial { coeffs: Vec::new() };
        }
        let mut coeffs = alloc::vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// A root in `[lo, hi]` given a sign change, to width `2^-bits`.
    pub fn root_in(&self, lo: &Rat, hi: &Rat, bits: u32) -> Result<Enclosure, RootError> {
        if lo > hi {
            return Err(RootError::InvalidBracket);
        }
        let (flo, fhi) = (self.eval(lo), self.eval(hi));
        if flo.is_zero() {
            return Ok(Enclosure::exact(lo.clone()));
        }
        if fhi.is_zero() {
            return Ok(Enclosure::exact(hi.clone()));
        }
        if flo.signum() == fhi.signum() {
            return Err(RootError::NoSignChange);
        }
        let rising = flo.is_negative();
        Ok(bisect_monotone(lo.clone(), hi.clone(), bits, |t| {
            let v = self.eval(t);
            let ord = v.cmp(&Rat::zero());
            if rising {
                ord
            } else {
                ord.reverse()
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_root_of_perfect_cube_is_exact() {
        assert_eq!(Enclosure::nth_root(&Rat::new(1, 8), 3, 64), Enclosure::exact(Rat::new(1, 2)));
    }

    #[test]
    fn sqrt_two_enclosure() {
        let e = Enclosure::nth_root(&Rat::int(2), 2, 64);
        assert!(e.width() <= tolerance(64));
        assert!(e.lo().pow(2) < Rat::int(2));
        assert!(e.hi().pow(2) > Rat::int(2));
    }

    #[test]
    fn falling_polynomial_root() {
        // 1 - x^2 on [0, 3]: root 1 found exactly on a dyadic midpoint
        let p = Polynomial::from_ints(&[1, 0, -1]);
        let e = p.root_in(&Rat::zero(), &Rat::int(2), 64).unwrap();
        assert_eq!(e, Enclosure::exact(Rat::one()));
        assert_eq!(p.root_in(&Rat::int(2), &Rat::int(3), 8), Err(RootError::NoSignChange));
    }

    #[test]
    fn compare_straddling() {
        let e = Enclosure::new(Rat::new(1, 3), Rat::new(1, 2));
        assert_eq!(e.compare(&Rat::new(1, 4)), Some(Ordering::Greater));
        assert_eq!(e.compare(&Rat::one()), Some(Ordering::Less));
        assert_eq!(e.compare(&Rat::new(2, 5)), None);
    }
}

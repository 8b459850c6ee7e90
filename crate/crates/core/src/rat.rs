//! Exact rational numbers.
//!
//! [`Rat`] wraps an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Every coordinate, area, volume and first variation in
//! this crate is a `Rat`; nothing is rounded.

use alloc::string::String;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

/// Failure to parse a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRatError {
    /// Byte offset of the first offending character.
    pub position: usize,
    pub reason: &'static str,
}

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational at byte {}: {}", self.position, self.reason)
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        Rat(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    /// The midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rat) -> Rat {
        (self + other) / Rat::int(2)
    }

    pub fn min(self, other: Rat) -> Rat {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Exact `k`-th root when both numerator and denominator are perfect `k`-th powers.
    pub fn exact_root(&self, k: u32) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().nth_root(k);
        let d = self.denom().nth_root(k);
        if num_traits::pow(n.clone(), k as usize) == *self.numer()
            && num_traits::pow(d.clone(), k as usize) == *self.denom()
        {
            Some(Rat::from_big(n, d))
        } else {
            None
        }
    }

    /// Nearest `f64`, for human-readable output only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal expansion truncated toward zero after `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        let num = self.numer().abs();
        let den = self.denom().clone();
        let (int, mut rem) = num.div_rem(&den);
        let _ = write!(out, "{int}");
        if digits > 0 {
            out.push('.');
            let ten = BigInt::from(10);
            for _ in 0..digits {
                rem *= &ten;
                let (q, r) = rem.div_rem(&den);
                let _ = write!(out, "{q}");
                rem = r;
            }
        }
        out
    }

    /// Always `p/q`, including integers (`"1/1"`, `"0/1"`).
    pub fn to_pq(&self) -> String {
        alloc::format!("{}/{}", self.numer(), self.denom())
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p`, `-p`, `p/q` with decimal integers and `q != 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn parse_int(s: &str, offset: usize, signed: bool) -> Result<BigInt, ParseRatError> {
            let bytes = s.as_bytes();
            if bytes.is_empty() {
                return Err(ParseRatError { position: offset, reason: "empty integer" });
            }
            let start = usize::from(signed && (bytes[0] == b'-' || bytes[0] == b'+'));
            if start == bytes.len() {
                return Err(ParseRatError { position: offset + start, reason: "missing digits" });
            }
            if let Some(i) = bytes[start..].iter().position(|b| !b.is_ascii_digit()) {
                return Err(ParseRatError { position: offset + start + i, reason: "unexpected character" });
            }
            s.parse::<BigInt>()
                .map_err(|_| ParseRatError { position: offset, reason: "unparsable integer" })
        }

        match s.find('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(s, 0, true)?))),
            Some(slash) => {
                let num = parse_int(&s[..slash], 0, true)?;
                let den = parse_int(&s[slash + 1..], slash + 1, false)?;
                if den.is_zero() {
                    return Err(ParseRatError { position: slash + 1, reason: "zero denominator" });
                }
                Ok(Rat(BigRational::new(num, den)))
            }
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0.clone())
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

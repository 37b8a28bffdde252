//! Exact arithmetic in the quadratic field ℚ(√5).
//!
//! Every comparison against `φ = (√5 − 1)/2` or `γ = (2 − 3φ)/2` in this crate
//! goes through [`Q5::sign`]; floating point appears only in diagnostics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The real number `a + b·√5` with rational `a`, `b`.
///
/// The representation is unique because √5 is irrational, so derived
/// equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Q5 {
    a: BigRational,
    b: BigRational,
}

impl Q5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Q5 { a, b }
    }

    /// `a + b√5` with integer components.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Q5::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    /// `(an/ad) + (bn/bd)√5`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Q5::new(
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Q5::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_weight(w: &BigUint) -> Self {
        Q5::from_integer(BigInt::from(w.clone()))
    }

    pub fn zero() -> Self {
        Q5::default()
    }

    pub fn one() -> Self {
        Q5::from_ints(1, 0)
    }

    pub fn sqrt5() -> Self {
        Q5::from_ints(0, 1)
    }

    /// `φ = (√5 − 1)/2 ≈ 0.618`.
    pub fn phi() -> Self {
        Q5::from_ratios(-1, 2, 1, 2)
    }

    /// `γ = (2 − 3φ)/2 = (7 − 3√5)/4 ≈ 0.0729`.
    pub fn gamma() -> Self {
        Q5::from_ratios(7, 4, -3, 4)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the value lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, k: &BigRational) -> Self {
        Q5::new(&self.a * k, &self.b * k)
    }

    pub fn scale_int(&self, k: impl Into<BigInt>) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Exact sign of `a + b√5`.
    ///
    /// When `a` and `b` disagree in sign the larger of `a²` and `5b²` wins;
    /// they are never equal for non-zero rationals.
    pub fn sign(&self) -> Sign {
        let sa = self.a.signum();
        let sb = self.b.signum();
        let sa = rational_sign(&sa);
        let sb = rational_sign(&sb);
        match (sa, sb) {
            (Sign::NoSign, s) | (s, Sign::NoSign) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * BigRational::from_integer(5.into());
                if a2 > b2 {
                    sa
                } else {
                    -sa
                }
            }
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.sign() != Sign::Minus
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 5f64.sqrt()
    }
}

fn rational_sign(r: &BigRational) -> Sign {
    if r.is_zero() {
        Sign::NoSign
    } else if r.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

impl PartialOrd for Q5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q5 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for Q5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |r: &BigRational| {
            if r.abs().is_one() {
                String::new()
            } else {
                format!("{}·", r.abs())
            }
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{}√5", coeff(&self.b))
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {}√5", self.a, coeff(&self.b))
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Q5> for &'a Q5 {
            type Output = Q5;
            fn $method(self, rhs: &'a Q5) -> Q5 {
                let f: fn(&Q5, &Q5) -> Q5 = $body;
                f(self, rhs)
            }
        }
        impl $trait for Q5 {
            type Output = Q5;
            fn $method(self, rhs: Q5) -> Q5 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Q5> for Q5 {
            type Output = Q5;
            fn $method(self, rhs: &'a Q5) -> Q5 {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, |x, y| Q5::new(&x.a + &y.a, &x.b + &y.b));
binop!(Sub, sub, |x, y| Q5::new(&x.a - &y.a, &x.b - &y.b));
binop!(Mul, mul, |x, y| {
    let five = BigRational::from_integer(5.into());
    Q5::new(&x.a * &y.a + five * &x.b * &y.b, &x.a * &y.b + &x.b * &y.a)
});

impl Neg for Q5 {
    type Output = Q5;
    fn neg(self) -> Q5 {
        Q5::new(-self.a, -self.b)
    }
}

impl Neg for &Q5 {
    type Output = Q5;
    fn neg(self) -> Q5 {
        Q5::new(-&self.a, -&self.b)
    }
}

/// `⌊φ·w⌋`, computed as `⌊(isqrt(5w²) − w)/2⌋`.
///
/// `⌊√5·w⌋ = isqrt(5w²)` because `5w²` is never a perfect square for `w > 0`,
/// and halving commutes with the floor since `√5·w` is irrational.
pub fn floor_phi_times(w: &BigUint) -> BigUint {
    let root = (w * w * 5u32).sqrt();
    (root - w) / 2u32
}

/// `⌊(p + q√5)·k⌋ = p·k + isqrt(5q²k²)` for `q ≥ 0`.
pub fn floor_mul_surd(p: u64, q: u64, k: &BigUint) -> BigUint {
    let qk = BigUint::from(q) * k;
    BigUint::from(p) * k + (&qk * &qk * 5u32).sqrt()
}

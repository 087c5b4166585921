//! Exact arithmetic in the field Q(√5).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `a + b·√5` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadExt { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadExt { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn sqrt5() -> Self {
        QuadExt { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational integer this value equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn conjugate(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `a² − 5b²`, zero only for zero since √5 is irrational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadExt { a: &self.a / &n, b: -&self.b / &n })
    }

    /// The square root whose rational part is positive (or, when that part is
    /// zero, whose √5 part is positive).
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(QuadExt::zero());
        }
        let unsupported = || Error::UnsupportedConstant(self.to_string());
        // (p + q√5)² = a + b√5  ⇔  p² + 5q² = a, 2pq = b
        let root = if self.b.is_zero() {
            if let Some(p) = rational_sqrt(&self.a) {
                QuadExt::rational(p)
            } else {
                let q = rational_sqrt(&(&self.a / BigRational::from_integer(5.into()))).ok_or_else(unsupported)?;
                QuadExt { a: BigRational::zero(), b: q }
            }
        } else {
            // p² is a root of 4t² − 4at + 5b² = 0
            let disc = rational_sqrt(&self.norm()).ok_or_else(unsupported)?;
            let two = BigRational::from_integer(2.into());
            [(&self.a + &disc) / &two, (&self.a - &disc) / &two]
                .iter()
                .filter(|p2| p2.is_positive())
                .find_map(rational_sqrt)
                .map(|p| {
                    let q = &self.b / (&two * &p);
                    QuadExt { a: p, b: q }
                })
                .ok_or_else(unsupported)?
        };
        debug_assert_eq!(&(&root * &root), self);
        Ok(root)
    }
}

/// Non-negative rational square root, when one exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let int_sqrt = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(int_sqrt(r.numer())?, int_sqrt(r.denom())?))
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt { a: BigRational::zero(), b: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(BigRational::one())
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl From<BigRational> for QuadExt {
    fn from(r: BigRational) -> Self {
        QuadExt::rational(r)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let five = BigRational::from_integer(5.into());
        QuadExt {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

/// Panics on division by zero, like the rational type it wraps.
impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadExt) -> QuadExt {
        self * &rhs.inverse().expect("division by zero in Q(sqrt 5)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for QuadExt {
            type Output = QuadExt;
            fn $f(self, rhs: QuadExt) -> QuadExt {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &QuadExt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QuadExt> for QuadExt {
    fn sub_assign(&mut self, rhs: &QuadExt) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `3/2`, `r5`, `1+2*r5`, `-1/3-r5`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coef = |b: &BigRational| {
            if b.abs().is_one() {
                "r5".to_string()
            } else {
                format!("{}*r5", b.abs())
            }
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{}", coef(&self.b))
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{}", self.a, coef(&self.b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> QuadExt {
        QuadExt::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    #[test]
    fn multiplication_rule() {
        // (1+2√5)(3−√5) = 3 − 10 + (−1 + 6)√5
        assert_eq!(&q(1, 2) * &q(3, -1), q(-7, 5));
        assert_eq!(&QuadExt::sqrt5() * &QuadExt::sqrt5(), q(5, 0));
    }

    #[test]
    fn square_roots() {
        assert_eq!(q(4, 0).sqrt().unwrap(), q(2, 0));
        assert_eq!(q(5, 0).sqrt().unwrap(), QuadExt::sqrt5());
        assert_eq!(q(20, 0).sqrt().unwrap(), q(0, 2));
        // (1+√5)² = 6 + 2√5
        assert_eq!(q(6, 2).sqrt().unwrap(), q(1, 1));
        // (−2+√5)² = 9 − 4√5, positive rational part branch is 2 − √5
        assert_eq!(q(9, -4).sqrt().unwrap(), q(2, -1));
        assert_eq!(QuadExt::from_ratio(9, 4).sqrt().unwrap(), QuadExt::from_ratio(3, 2));
        assert!(matches!(q(2, 0).sqrt(), Err(Error::UnsupportedConstant(_))));
        assert!(matches!(q(-1, 0).sqrt(), Err(Error::UnsupportedConstant(_))));
        assert!(matches!(q(1, 1).sqrt(), Err(Error::UnsupportedConstant(_))));
    }

    #[test]
    fn display() {
        assert_eq!(q(0, 1).to_string(), "r5");
        assert_eq!(q(0, -1).to_string(), "-r5");
        assert_eq!(q(1, -2).to_string(), "1-2*r5");
        assert_eq!(QuadExt::from_ratio(3, 2).to_string(), "3/2");
    }

    fn arb_quad() -> impl Strategy<Value = QuadExt> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, da, b, db)| {
            QuadExt::new(BigRational::new(a.into(), da.into()), BigRational::new(b.into(), db.into()))
        })
    }

    proptest! {
        #[test]
        fn conjugate_product_is_rational(p in arb_quad()) {
            let prod = &p * &p.conjugate();
            prop_assert!(prod.is_rational());
            prop_assert_eq!(prod.a, p.norm());
        }

        #[test]
        fn inverse_round_trip(p in arb_quad()) {
            prop_assume!(!p.is_zero());
            prop_assert_eq!(&p * &p.inverse().unwrap(), QuadExt::one());
        }

        #[test]
        fn sqrt_of_square(p in arb_quad()) {
            let sq = &p * &p;
            let r = sq.sqrt().unwrap();
            prop_assert_eq!(&r * &r, sq);
            prop_assert!(r == p || r == -&p);
        }

        #[test]
        fn field_axioms(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
        }
    }
}

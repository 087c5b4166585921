use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::QuadExt;
use crate::error::{Error, Result};

/// Deepest principal part a division may produce.
pub const MAX_PRINCIPAL_DEPTH: i32 = 8;

/// Default truncation order: coefficients of `x^0 .. x^32`.
pub const DEFAULT_ORDER: i32 = 33;

/// A truncated Laurent series over Q(√5).
///
/// Coefficients are known exactly for every exponent below `order`; the
/// stored vector starts at `valuation` and its first entry is nonzero. A
/// series that vanishes to its order stores nothing and has
/// `valuation == order`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    valuation: i32,
    coeffs: Vec<QuadExt>,
    order: i32,
}

impl LaurentSeries {
    pub fn zero(order: i32) -> Self {
        LaurentSeries {
            valuation: order,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn constant(c: QuadExt, order: i32) -> Self {
        Self::from_coeffs(0, vec![c], order)
    }

    pub fn one(order: i32) -> Self {
        Self::constant(QuadExt::one(), order)
    }

    /// `x^k`, known below `order`.
    pub fn monomial(k: i32, order: i32) -> Self {
        Self::from_coeffs(k, vec![QuadExt::one()], order)
    }

    /// Series whose coefficient of `x^(start+i)` is `coeffs[i]`; terms at or
    /// beyond `order` are dropped and missing ones are zero.
    pub fn from_coeffs(start: i32, coeffs: Vec<QuadExt>, order: i32) -> Self {
        let mut s = LaurentSeries {
            valuation: start,
            coeffs,
            order,
        };
        let keep = (order - start).max(0) as usize;
        s.coeffs.truncate(keep);
        if (s.coeffs.len() as i32) < order - start {
            s.coeffs.resize((order - start) as usize, QuadExt::zero());
        }
        s.normalize();
        s
    }

    pub fn from_integers(start: i32, coeffs: &[i64], order: i32) -> Self {
        Self::from_coeffs(start, coeffs.iter().map(|&c| QuadExt::from_int(c)).collect(), order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.valuation += lead as i32;
        if self.coeffs.is_empty() {
            self.valuation = self.order;
        }
    }

    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// Zero to its full order.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `x^k`. Exponents below the valuation are zero;
    /// exponents at or past the order are unknown and rejected.
    pub fn coefficient(&self, k: i32) -> Result<QuadExt> {
        if k >= self.order {
            return Err(Error::OutOfRange {
                index: k,
                order: self.order,
            });
        }
        Ok(self.coeff_unchecked(k))
    }

    fn coeff_unchecked(&self, k: i32) -> QuadExt {
        if k < self.valuation {
            QuadExt::zero()
        } else {
            self.coeffs[(k - self.valuation) as usize].clone()
        }
    }

    /// Coefficients of `x^0 .. x^(len-1)`.
    pub fn coefficients(&self, len: usize) -> Result<Vec<QuadExt>> {
        (0..len as i32).map(|k| self.coefficient(k)).collect()
    }

    /// Coefficients of `x^0 .. x^(len-1)` as rational integers.
    pub fn integer_coefficients(&self, len: usize) -> Result<Vec<BigInt>> {
        self.coefficients(len)?
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                c.as_integer()
                    .ok_or_else(|| Error::Validation(format!("coefficient of x^{k} is {c}, not an integer")))
            })
            .collect()
    }

    /// Forgets every coefficient at or beyond `order`.
    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().take((order - self.valuation).max(0) as usize).cloned().collect();
        Self::from_coeffs(self.valuation.min(order), coeffs, order)
    }

    /// Equal on every exponent both series know.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        let order = self.order.min(other.order);
        self.truncate(order) == other.truncate(order)
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        Self::from_coeffs(self.valuation, self.coeffs.iter().map(|a| a * c).collect(), self.order)
    }

    /// `x^k · self`
    pub fn shift(&self, k: i32) -> Self {
        LaurentSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn div(&self, g: &LaurentSeries) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::DivisionByZero { order: g.order });
        }
        let relative = (self.order - self.valuation).min(g.order - g.valuation);
        let valuation = self.valuation - g.valuation;
        if self.is_zero() {
            return Ok(Self::zero(self.order - g.valuation));
        }
        if valuation < -MAX_PRINCIPAL_DEPTH {
            return Err(Error::Capacity(format!(
                "quotient has valuation {valuation}, below -{MAX_PRINCIPAL_DEPTH}"
            )));
        }
        let g0_inv = g.coeffs[0].inverse().expect("leading coefficient is nonzero");
        let mut q: Vec<QuadExt> = Vec::with_capacity(relative as usize);
        for i in 0..relative as usize {
            let mut acc = self.coeffs[i].clone();
            for j in 1..=i.min(g.coeffs.len() - 1) {
                acc -= &(&g.coeffs[j] * &q[i - j]);
            }
            q.push(&acc * &g0_inv);
        }
        Ok(Self::from_coeffs(valuation, q, valuation + relative))
    }

    pub fn inverse(&self) -> Result<Self> {
        LaurentSeries::one(self.order - self.valuation).div(self)
    }

    /// Square root with even valuation; the leading coefficient's root is the
    /// branch with positive rational part.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero(self.order.div_euclid(2)));
        }
        if self.valuation % 2 != 0 {
            return Err(Error::OddValuation(self.valuation));
        }
        let relative = (self.order - self.valuation) as usize;
        let s0 = self.coeffs[0].sqrt()?;
        let two_s0_inv = (&s0 + &s0).inverse().expect("nonzero root");
        let mut s = Vec::with_capacity(relative);
        s.push(s0);
        for i in 1..relative {
            let mut acc = self.coeffs[i].clone();
            for j in 1..i {
                acc -= &(&s[j] * &s[i - j]);
            }
            s.push(&acc * &two_s0_inv);
        }
        let v = self.valuation / 2;
        let root = Self::from_coeffs(v, s, v + relative as i32);
        debug_assert_eq!(&(&root * &root), self, "sqrt verification failed");
        Ok(root)
    }

    /// Integer powers; negative exponents divide.
    pub fn pow(&self, k: i32) -> Result<Self> {
        let mut result = LaurentSeries::one(self.order - self.valuation);
        let mut base = self.clone();
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if k < 0 {
            result.inverse()
        } else {
            Ok(result)
        }
    }

    /// The Catalan series by the convolution `C_{n+1} = Σ C_k C_{n-k}`.
    pub fn catalan(order: i32) -> Self {
        let n = order.max(0) as usize;
        let mut c: Vec<BigInt> = Vec::with_capacity(n);
        for m in 0..n {
            if m == 0 {
                c.push(BigInt::one());
            } else {
                let next = (0..m).map(|k| &c[k] * &c[m - 1 - k]).sum();
                c.push(next);
            }
        }
        Self::from_coeffs(
            0,
            c.into_iter().map(|v| QuadExt::rational(v.into())).collect(),
            order,
        )
    }
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, g: &LaurentSeries) -> LaurentSeries {
        let order = self.order.min(g.order);
        let start = self.valuation.min(g.valuation).min(order);
        let coeffs = (start..order)
            .map(|k| &self.coeff_unchecked(k) + &g.coeff_unchecked(k))
            .collect();
        LaurentSeries::from_coeffs(start, coeffs, order)
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, g: &LaurentSeries) -> LaurentSeries {
        self + &(-g)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, g: &LaurentSeries) -> LaurentSeries {
        let order = (self.valuation + g.order).min(g.valuation + self.order);
        let valuation = self.valuation + g.valuation;
        if self.is_zero() || g.is_zero() {
            return LaurentSeries::zero(order);
        }
        let len = (order - valuation).max(0) as usize;
        let mut out = vec![QuadExt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += &(a * b);
            }
        }
        LaurentSeries::from_coeffs(valuation, out, order)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $f(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `1 + 2*x^1 + (1+r5)*x^3 + O(x^5)`
impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let k = self.valuation + i as i32;
            let text = c.to_string();
            let text = if text.contains(['+', '-', '/']) && k != 0 { format!("({text})") } else { text };
            if k == 0 {
                write!(f, "{text}")?;
            } else {
                write!(f, "{text}*x^{k}")?;
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O(x^{})", self.order)
    }
}

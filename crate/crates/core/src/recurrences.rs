//! Refined counting tables for two classes defined by first-letter
//! recurrences, and the kernel check behind the closed form of the second.
//!
//! `a(n; j)` counts avoiders of length `n` starting with `j`. The auxiliary
//! `b(n; j)` counts those starting with `j, j+1` for `{1324,1342,2341}` and
//! those starting with `j, n-1` for `{1234,1243,1324}`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gf::{eval, parse, GfExpr};
use crate::perm::PatternTriple;
use crate::series::{LaurentSeries, QuadExt};

/// Power series in `x` whose coefficients are integer polynomials in `v`,
/// truncated below `x^x_order` and above `v^v_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    /// `coeffs[n][d]` is the coefficient of `x^n v^d`.
    coeffs: Vec<Vec<BigInt>>,
    v_degree: usize,
}

impl BivariateSeries {
    pub fn zero(x_order: usize, v_degree: usize) -> Self {
        BivariateSeries {
            coeffs: vec![vec![BigInt::zero(); v_degree + 1]; x_order],
            v_degree,
        }
    }

    /// A polynomial given as `(x power, v power, coefficient)` terms.
    pub fn from_terms(terms: &[(usize, usize, i64)], x_order: usize, v_degree: usize) -> Self {
        let mut s = Self::zero(x_order, v_degree);
        for &(i, j, c) in terms {
            if i < x_order && j <= v_degree {
                s.coeffs[i][j] += c;
            }
        }
        s
    }

    pub fn x_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn v_degree(&self) -> usize {
        self.v_degree
    }

    pub fn coefficient(&self, n: usize, d: usize) -> BigInt {
        self.coeffs
            .get(n)
            .and_then(|row| row.get(d))
            .cloned()
            .unwrap_or_default()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.x_order().min(other.x_order()), self.v_degree.min(other.v_degree));
        let (xo, vd) = (out.x_order(), out.v_degree);
        for (i, row) in self.coeffs.iter().enumerate().take(xo) {
            for (k, orow) in other.coeffs.iter().enumerate().take(xo - i) {
                for (d, c) in row.iter().enumerate().take(vd + 1) {
                    if c.is_zero() {
                        continue;
                    }
                    for (e, oc) in orow.iter().enumerate().take(vd + 1 - d) {
                        if !oc.is_zero() {
                            out.coeffs[i + k][d + e] += c * oc;
                        }
                    }
                }
            }
        }
        out
    }

    /// `1 / self`; the `x^0` coefficient must be the constant `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let unit = c0.iter().skip(1).all(Zero::is_zero) && c0[0].abs().is_one();
        if !unit {
            return Err(Error::InvalidInput("constant term is not ±1".into()));
        }
        let sign = c0[0].clone();
        let (xo, vd) = (self.x_order(), self.v_degree);
        let mut inv = Self::zero(xo, vd);
        inv.coeffs[0][0] = sign.clone();
        for n in 1..xo {
            let mut acc = vec![BigInt::zero(); vd + 1];
            for k in 1..=n {
                for (d, c) in self.coeffs[k].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (e, ic) in inv.coeffs[n - k].iter().enumerate().take(vd + 1 - d) {
                        acc[d + e] -= c * ic;
                    }
                }
            }
            for (d, v) in acc.into_iter().enumerate() {
                inv.coeffs[n][d] = v * &sign;
            }
        }
        Ok(inv)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }
}

/// Integer polynomial in `x` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPolynomial {
    /// `(x power, v power, coefficient)`
    pub terms: Vec<(u32, u32, i64)>,
}

impl KernelPolynomial {
    /// `xv(1-v^2) + x^2(1-3v+v^2) - v^2(1-v)^2`
    pub fn case241() -> Self {
        KernelPolynomial {
            terms: vec![
                (1, 1, 1),
                (1, 3, -1),
                (2, 0, 1),
                (2, 1, -3),
                (2, 2, 1),
                (0, 2, -1),
                (0, 3, 2),
                (0, 4, -1),
            ],
        }
    }

    pub fn v_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1).max().unwrap_or(0)
    }

    /// `K(x, v)` as a sum over monomials `c · x^i · v^j`, known below
    /// `x^order` at most.
    pub fn eval_monomials(&self, v: &LaurentSeries, order: i32) -> Result<LaurentSeries> {
        let order = order.min(v.order());
        let mut acc = LaurentSeries::zero(order);
        for &(i, j, c) in &self.terms {
            let vj = if j == 0 { LaurentSeries::one(order) } else { v.pow(j as i32)? };
            let term = &LaurentSeries::monomial(i as i32, order) * &vj;
            acc = &acc + &term.scale(&QuadExt::from_int(c));
        }
        Ok(acc)
    }

    /// Horner's rule in `v` with polynomial-in-`x` coefficients.
    pub fn eval_horner(&self, v: &LaurentSeries, order: i32) -> Result<LaurentSeries> {
        let order = order.min(v.order());
        let mut acc = LaurentSeries::zero(order);
        for j in (0..=self.v_degree()).rev() {
            let mut coeff = LaurentSeries::zero(order);
            for &(i, jj, c) in &self.terms {
                if jj == j {
                    coeff = &coeff + &LaurentSeries::monomial(i as i32, order).scale(&QuadExt::from_int(c));
                }
            }
            acc = &(&acc * v) + &coeff;
        }
        Ok(acc)
    }
}

impl fmt::Display for KernelPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, &(i, j, c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if idx > 0 { "+" } else { "" };
            write!(f, "{sign}{}", c.abs())?;
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
            if j > 0 {
                write!(f, "*v^{j}")?;
            }
        }
        Ok(())
    }
}

/// First-letter refined counts together with the auxiliary table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceTable {
    pub case_id: u32,
    pub n_max: usize,
    /// `a[n][j-1] = a(n; j)` for `1 <= j <= n`.
    a: Vec<Vec<BigUint>>,
    /// `b[n][j-1] = b(n; j)` for `1 <= j <= n`.
    b: Vec<Vec<BigUint>>,
}

impl RecurrenceTable {
    /// `a(n; j)`, zero outside `1..=n`.
    pub fn a(&self, n: usize, j: usize) -> BigUint {
        cell(&self.a, n, j)
    }

    pub fn b(&self, n: usize, j: usize) -> BigUint {
        cell(&self.b, n, j)
    }

    /// Number of avoiders of length `n`; 1 for the empty permutation.
    pub fn total(&self, n: usize) -> BigUint {
        if n == 0 {
            BigUint::one()
        } else {
            self.a[n].iter().sum()
        }
    }

    pub fn totals(&self) -> Vec<BigUint> {
        (0..=self.n_max).map(|n| self.total(n)).collect()
    }

    pub fn row_a(&self, n: usize) -> &[BigUint] {
        &self.a[n]
    }

    pub fn row_b(&self, n: usize) -> &[BigUint] {
        &self.b[n]
    }

    pub fn triple(&self) -> PatternTriple {
        let text = match self.case_id {
            231 => "1324,1342,2341",
            _ => "1234,1243,1324",
        };
        text.parse::<PatternTriple>().expect("valid triple").with_case_id(self.case_id)
    }
}

fn cell(t: &[Vec<BigUint>], n: usize, j: usize) -> BigUint {
    if j == 0 {
        return BigUint::zero();
    }
    t.get(n).and_then(|row| row.get(j - 1)).cloned().unwrap_or_default()
}

fn to_biguint(v: BigInt) -> BigUint {
    v.to_biguint().expect("counts are nonnegative")
}

/// `x^3 (1 - 2xv) / ((1 - 3xv + x^2 v^2)(1 - 2x))`, whose `x^n v^(j-1)`
/// coefficient counts avoiders of `{1324,1342,2341}` starting `j, j+1`.
pub fn case231_b_series(n_max: usize) -> BivariateSeries {
    let (xo, vd) = (n_max + 1, n_max);
    let num = BivariateSeries::from_terms(&[(3, 0, 1), (4, 1, -2)], xo, vd);
    let den = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, -3), (2, 2, 1)], xo, vd)
        .mul(&BivariateSeries::from_terms(&[(0, 0, 1), (1, 0, -2)], xo, vd));
    num.div(&den).expect("unit constant term")
}

/// Table for `{1324,1342,2341}`.
///
/// `a(n; j)` follows the first-letter recurrence for `j <= n-2`, and
/// `a(n; n) = a(n; n-1) = a(n-1)`. The recurrence is also used at `j = n-2`,
/// where `a(n; n-2) = a(n-1)` does not hold in general.
pub fn table_case231(n_max: usize) -> RecurrenceTable {
    let bs = case231_b_series(n_max);
    let mut a: Vec<Vec<BigUint>> = vec![Vec::new()];
    let mut b: Vec<Vec<BigUint>> = vec![Vec::new()];
    for n in 1..=n_max {
        let brow: Vec<BigUint> = (1..=n)
            .map(|j| if j + 2 <= n { to_biguint(bs.coefficient(n, j - 1)) } else { BigUint::zero() })
            .collect();
        let prev_total = if n == 1 { BigUint::one() } else { a[n - 1].iter().sum() };
        let mut row = Vec::with_capacity(n);
        let mut prefix = BigUint::zero();
        for j in 1..=n {
            if j + 2 <= n {
                prefix += &a[n - 1][j - 1];
                row.push(&prefix + &brow[j - 1]);
            } else {
                row.push(prev_total.clone());
            }
        }
        a.push(row);
        b.push(brow);
    }
    RecurrenceTable { case_id: 231, n_max, a, b }
}

/// Table for `{1234,1243,1324}` from the coupled recurrences, used for
/// `j <= n-3`, with the boundary values
/// `a(n; n) = a(n; n-1) = a(n; n-2) = a(n-1)`,
/// `b(n; n) = b(n; n-2) = a(n-2)` and `b(n; n-1) = 0`.
pub fn table_case241(n_max: usize) -> RecurrenceTable {
    let mut a: Vec<Vec<BigUint>> = vec![Vec::new()];
    let mut b: Vec<Vec<BigUint>> = vec![Vec::new()];
    let total = |a: &Vec<Vec<BigUint>>, m: usize| -> BigUint {
        if m == 0 {
            BigUint::one()
        } else {
            a[m].iter().sum()
        }
    };
    for n in 1..=n_max {
        match n {
            1 => {
                a.push(vec![BigUint::one()]);
                b.push(vec![BigUint::zero()]);
                continue;
            }
            2 => {
                a.push(vec![BigUint::one(), BigUint::one()]);
                b.push(vec![BigUint::zero(), BigUint::one()]);
                continue;
            }
            _ => {}
        }
        let prev = total(&a, n - 1);
        let prev2 = total(&a, n - 2);
        let mut brow = vec![BigUint::zero(); n];
        let mut bprefix = BigUint::zero();
        for j in 1..=n - 3 {
            if j >= 2 {
                bprefix += &b[n - 1][j - 2];
            }
            brow[j - 1] = &bprefix + &a[n - 2][j - 1];
        }
        brow[n - 3] = prev2.clone();
        brow[n - 2] = BigUint::zero();
        brow[n - 1] = prev2;
        let mut row = vec![BigUint::zero(); n];
        let mut prefix = BigUint::zero();
        for j in 1..=n - 3 {
            prefix += &a[n - 1][j - 1];
            row[j - 1] = &prefix + &brow[j - 1];
        }
        for slot in row.iter_mut().skip(n - 3) {
            *slot = prev.clone();
        }
        a.push(row);
        b.push(brow);
    }
    RecurrenceTable { case_id: 241, n_max, a, b }
}

/// Dense polynomial in `v`, lowest degree first.
type Poly = Vec<BigInt>;

fn poly_of(row: &[BigUint]) -> Poly {
    row.iter().map(|c| BigInt::from(c.clone())).collect()
}

fn poly_add(p: &Poly, q: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); p.len().max(q.len())];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in q.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn monomial(c: BigInt, k: usize) -> Poly {
    let mut p = vec![BigInt::zero(); k + 1];
    p[k] = c;
    p
}

/// Exact quotient by `1 - v`; `None` when `p(1) != 0`.
fn div_one_minus_v(p: &Poly) -> Option<Poly> {
    // p = (1 - v) q  gives  q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len());
    let mut acc = BigInt::zero();
    for c in p {
        acc += c;
        q.push(acc.clone());
    }
    if q.last().is_some_and(|c| !c.is_zero()) {
        return None;
    }
    q.pop();
    Some(q)
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// A level of the table that disagrees with the row-polynomial form of the
/// recurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFormMismatch {
    pub n: usize,
    pub which: char,
    pub from_table: Vec<BigInt>,
    pub from_polynomials: Vec<BigInt>,
}

/// Rebuilds `A(n; v) = Σ a(n; j) v^(j-1)` (and `B(n; v)` likewise) from the
/// row-polynomial form of the recurrences, starting from the table's own
/// earlier rows, and lists every level where the two disagree.
pub fn polynomial_form_check(table: &RecurrenceTable) -> Vec<PolynomialFormMismatch> {
    let mut out = Vec::new();
    let total = |m: usize| BigInt::from(table.total(m));
    for n in 3..=table.n_max {
        let prev_a = poly_of(table.row_a(n - 1));
        let table_a = trim(poly_of(table.row_a(n)));
        let table_b = trim(poly_of(table.row_b(n)));
        let (pa, pb) = match table.case_id {
            231 => {
                let shifted = poly_add(&prev_a, &monomial(-total(n - 1), n));
                let q = div_one_minus_v(&shifted).unwrap_or_default();
                let bpoly: Poly = poly_of(&table.row_b(n)[..n - 2]);
                (poly_add(&q, &bpoly), None)
            }
            _ => {
                let a1 = total(n - 1);
                let mut pa = Poly::new();
                for k in [n - 1, n - 2, n - 3] {
                    pa = poly_add(&pa, &monomial(a1.clone(), k));
                }
                let q = div_one_minus_v(&poly_add(&prev_a, &monomial(-a1.clone(), n - 3)))
                    .unwrap_or_default();
                pa = poly_add(&pa, &q);
                pa = poly_add(&pa, &poly_of(table.row_b(n)));
                pa = poly_add(&pa, &monomial(-total(n - 2), n - 1));

                let prev_b = poly_of(table.row_b(n - 1));
                let b1: BigInt = prev_b.iter().sum();
                let mut pb = poly_add(&monomial(total(n - 2), n - 1), &monomial(total(n - 2), n - 3));
                let mut vb = vec![BigInt::zero()];
                vb.extend(prev_b);
                let q = div_one_minus_v(&poly_add(&vb, &monomial(-b1, n - 3))).unwrap_or_default();
                pb = poly_add(&pb, &q);
                pb = poly_add(&pb, &poly_of(table.row_a(n - 2)));
                pb = poly_add(&pb, &monomial(total(n - 3), n - 2));
                (pa, Some(pb))
            }
        };
        let pa = trim(pa);
        if pa != table_a {
            out.push(PolynomialFormMismatch { n, which: 'A', from_table: table_a, from_polynomials: pa });
        }
        if let Some(pb) = pb.map(trim) {
            if pb != table_b {
                out.push(PolynomialFormMismatch { n, which: 'B', from_table: table_b, from_polynomials: pb });
            }
        }
    }
    out
}

/// Root of the kernel through `v = 1` whose radical carries `-4√5 x`.
pub const V_MINUS: &str = "(2+(r5-1)*x+sqrt(4-12*x+6*x^2-4*r5*x-2*r5*x^2))/4";
/// The conjugate root.
pub const V_PLUS: &str = "(2-(r5+1)*x+sqrt(4-12*x+6*x^2+4*r5*x+2*r5*x^2))/4";

/// A coefficient that should have vanished or been an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offending {
    pub what: String,
    pub exponent: i32,
    pub value: QuadExt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub order: i32,
    pub v_minus_at_zero: QuadExt,
    pub v_plus_at_zero: QuadExt,
    pub residual_minus_vanishes: bool,
    pub residual_plus_vanishes: bool,
    /// Horner and monomial-sum evaluations of the kernel agree.
    pub substitution_consistent: bool,
    /// The closed form has rational integer coefficients.
    pub closed_form_integral: bool,
    pub closed_form: Vec<BigInt>,
    pub first_offending: Option<Offending>,
}

impl KernelReport {
    pub fn is_ok(&self) -> bool {
        self.residual_minus_vanishes
            && self.residual_plus_vanishes
            && self.substitution_consistent
            && self.closed_form_integral
            && self.first_offending.is_none()
    }
}

fn first_nonzero(s: &LaurentSeries) -> Option<(i32, QuadExt)> {
    (s.valuation()..s.order())
        .map(|k| (k, s.coefficient(k).expect("below order")))
        .find(|(_, c)| !c.is_zero())
}

/// Substitutes both kernel roots into the kernel to order `order` and
/// expands `closed_form` (the generating function of `{1234,1243,1324}` in
/// terms of the roots) checking that its coefficients are integers.
pub fn kernel_roots_check(order: i32, closed_form: &GfExpr) -> Result<KernelReport> {
    if order < 4 {
        return Err(Error::InvalidInput(format!("order must be at least 4, got {order}")));
    }
    let k = KernelPolynomial::case241();
    let vm = eval(&parse(V_MINUS)?, order)?;
    let vp = eval(&parse(V_PLUS)?, order)?;
    let mut first_offending = None;
    let mut residual = |v: &LaurentSeries, name: &str| -> Result<(bool, bool)> {
        let mono = k.eval_monomials(v, order)?;
        let horner = k.eval_horner(v, order)?;
        let vanishes = match first_nonzero(&mono) {
            Some((e, c)) => {
                first_offending.get_or_insert(Offending { what: format!("K(x, {name})"), exponent: e, value: c });
                false
            }
            None => mono.order() >= order,
        };
        Ok((vanishes, mono == horner))
    };
    let (m_ok, m_cons) = residual(&vm, "v-")?;
    let (p_ok, p_cons) = residual(&vp, "v+")?;
    let f = eval(closed_form, order)?;
    let mut integral = f.valuation() >= 0;
    let mut closed = Vec::with_capacity(order as usize);
    for e in 0..order {
        let c = f.coefficient(e)?;
        match c.as_integer() {
            Some(v) => closed.push(v),
            None => {
                integral = false;
                first_offending.get_or_insert(Offending { what: "closed form".into(), exponent: e, value: c });
                break;
            }
        }
    }
    Ok(KernelReport {
        order,
        v_minus_at_zero: vm.coefficient(0)?,
        v_plus_at_zero: vp.coefficient(0)?,
        residual_minus_vanishes: m_ok,
        residual_plus_vanishes: p_ok,
        substitution_consistent: m_cons && p_cons,
        closed_form_integral: integral,
        closed_form: closed,
        first_offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{count_refined, count_shape, Shape, StatValue, StatisticKey};
    use crate::gf::Registry;

    #[test]
    fn bivariate_inverse() {
        let s = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, -1)], 6, 6);
        let inv = s.inverse().unwrap();
        for n in 0..6 {
            for d in 0..=6 {
                let want = if n == d { 1 } else { 0 };
                assert_eq!(inv.coefficient(n, d), BigInt::from(want));
            }
        }
        assert!(BivariateSeries::from_terms(&[(0, 0, 2)], 3, 3).inverse().is_err());
    }

    #[test]
    fn case231_b_closed_product() {
        // b(n; j) = f(j-1) 2^(n-j-2) with f = 1, 1, 2, 5, 13, ...
        let f = [1u64, 1, 2, 5, 13, 34, 89, 233];
        let bs = case231_b_series(10);
        for n in 3..=10usize {
            for j in 1..=n - 2 {
                let want = f[j - 1] * (1u64 << (n - j - 2));
                assert_eq!(bs.coefficient(n, j - 1), BigInt::from(want), "n={n} j={j}");
            }
        }
    }

    fn first_letter_counts(n: usize, t: &PatternTriple) -> Vec<BigUint> {
        let m = count_refined(n, t, StatisticKey::FirstLetter);
        (1..=n).map(|j| m.get(&StatValue::Single(j)).cloned().unwrap_or_default()).collect()
    }

    #[test]
    fn case231_matches_brute_force() {
        let table = table_case231(9);
        let t = table.triple();
        assert_eq!(table.total(4), BigUint::from(21u32));
        for n in 1..=9 {
            assert_eq!(table.row_a(n), first_letter_counts(n, &t).as_slice(), "n = {n}");
            for j in 1..=n.saturating_sub(2) {
                let s = Shape::FirstTwo { j1: j, j2: j + 1 };
                assert_eq!(table.b(n, j), count_shape(n, &t, s), "b({n};{j})");
            }
        }
        for n in 2..=9 {
            assert_eq!(table.a(n, n), table.total(n - 1));
        }
    }

    #[test]
    fn case241_matches_brute_force() {
        let table = table_case241(9);
        let t = table.triple();
        for n in 1..=9 {
            assert_eq!(table.row_a(n), first_letter_counts(n, &t).as_slice(), "n = {n}");
            for j in 1..=n {
                let s = Shape::FirstTwo { j1: j, j2: n - 1 };
                assert_eq!(table.b(n, j), count_shape(n, &t, s), "b({n};{j})");
            }
        }
        for n in 2..=12 {
            assert!(table_case241(12).b(n, n - 1).is_zero());
        }
        assert_eq!(table.a(4, 1), BigUint::from(3u32));
        assert_eq!(table.b(4, 1), BigUint::from(1u32));
    }

    #[test]
    fn polynomial_forms() {
        assert!(polynomial_form_check(&table_case231(12)).is_empty());
        let m = polynomial_form_check(&table_case241(12));
        assert!(m.is_empty(), "{m:?}");
    }

    #[test]
    fn totals_match_registry() {
        let reg = Registry::builtin();
        for (id, table) in [(231, table_case231(20)), (241, table_case241(20))] {
            let s = reg.case(id).unwrap().series(21).unwrap();
            let c = s.integer_coefficients(21).unwrap();
            let totals: Vec<BigInt> = table.totals().into_iter().map(BigInt::from).collect();
            assert_eq!(totals, c, "case {id}");
        }
    }

    #[test]
    fn kernel_vanishes() {
        let reg = Registry::builtin();
        let r = kernel_roots_check(30, &reg.case(241).unwrap().expr).unwrap();
        assert!(r.is_ok(), "{r:?}");
        assert_eq!(r.v_minus_at_zero, QuadExt::one());
        assert_eq!(r.v_plus_at_zero, QuadExt::one());
        assert_eq!(&r.closed_form[..5], &[1, 1, 2, 6, 21].map(BigInt::from));
    }

    #[test]
    fn kernel_detects_wrong_root() {
        let r = kernel_roots_check(10, &parse("1/(1-x)").unwrap()).unwrap();
        assert!(r.is_ok());
        let k = KernelPolynomial::case241();
        let v = eval(&parse("1+x").unwrap(), 10).unwrap();
        assert!(!k.eval_monomials(&v, 10).unwrap().is_zero());
        assert_eq!(k.eval_monomials(&v, 10).unwrap(), k.eval_horner(&v, 10).unwrap());
    }

    proptest::proptest! {
        #[test]
        fn substitution_distributes(coeffs in proptest::collection::vec(-5i64..5, 1..8), start in 0i32..3) {
            let v = LaurentSeries::from_integers(start, &coeffs, 12);
            let k = KernelPolynomial::case241();
            proptest::prop_assert_eq!(k.eval_monomials(&v, 12).unwrap(), k.eval_horner(&v, 12).unwrap());
        }
    }
}

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

/// Expression tree for a generating function in `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GfExpr {
    Rational(BigRational),
    /// `r5`
    Sqrt5,
    /// `x`
    X,
    /// `C`, the Catalan series
    Catalan,
    Sqrt(Box<GfExpr>),
    Neg(Box<GfExpr>),
    Add(Box<GfExpr>, Box<GfExpr>),
    Sub(Box<GfExpr>, Box<GfExpr>),
    Mul(Box<GfExpr>, Box<GfExpr>),
    Div(Box<GfExpr>, Box<GfExpr>),
    Pow(Box<GfExpr>, i32),
}

impl GfExpr {
    pub fn int(n: i64) -> Self {
        GfExpr::Rational(BigRational::from_integer(n.into()))
    }

    pub fn sqrt(e: GfExpr) -> Self {
        GfExpr::Sqrt(Box::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: GfExpr) -> Self {
        GfExpr::Neg(Box::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(l: GfExpr, r: GfExpr) -> Self {
        GfExpr::Add(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(l: GfExpr, r: GfExpr) -> Self {
        GfExpr::Sub(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: GfExpr, r: GfExpr) -> Self {
        GfExpr::Mul(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(l: GfExpr, r: GfExpr) -> Self {
        GfExpr::Div(Box::new(l), Box::new(r))
    }

    pub fn pow(e: GfExpr, k: i32) -> Self {
        GfExpr::Pow(Box::new(e), k)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            GfExpr::Rational(_) | GfExpr::Sqrt5 | GfExpr::X | GfExpr::Catalan => 1,
            GfExpr::Sqrt(e) | GfExpr::Neg(e) | GfExpr::Pow(e, _) => 1 + e.size(),
            GfExpr::Add(l, r) | GfExpr::Sub(l, r) | GfExpr::Mul(l, r) | GfExpr::Div(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Canonical text: every compound node and every rational constant is
    /// parenthesized, so parsing the output rebuilds this exact tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            GfExpr::Rational(r) => {
                out.push('(');
                if r.is_negative() {
                    out.push('-');
                }
                out.push_str(&r.abs().to_string());
                out.push(')');
            }
            GfExpr::Sqrt5 => out.push_str("r5"),
            GfExpr::X => out.push('x'),
            GfExpr::Catalan => out.push('C'),
            GfExpr::Sqrt(e) => {
                out.push_str("sqrt(");
                e.render_into(out);
                out.push(')');
            }
            GfExpr::Neg(e) => {
                out.push_str("(-");
                e.render_into(out);
                out.push(')');
            }
            GfExpr::Pow(e, k) => {
                out.push('(');
                e.render_into(out);
                out.push('^');
                out.push_str(&k.to_string());
                out.push(')');
            }
            GfExpr::Add(l, r) | GfExpr::Sub(l, r) | GfExpr::Mul(l, r) | GfExpr::Div(l, r) => {
                let op = match self {
                    GfExpr::Add(..) => '+',
                    GfExpr::Sub(..) => '-',
                    GfExpr::Mul(..) => '*',
                    _ => '/',
                };
                out.push('(');
                l.render_into(out);
                out.push(op);
                r.render_into(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for GfExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

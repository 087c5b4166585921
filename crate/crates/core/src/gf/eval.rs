use super::GfExpr;
use crate::error::{Error, Result};
use crate::series::{LaurentSeries, QuadExt};

/// Extra working precision tried before each retry.
const SLACK_STEPS: [i32; 4] = [4, 16, 48, 128];

/// Evaluates `e` to a series exact below `x^order`.
///
/// Division and negative valuations lose absolute precision, so the tree is
/// evaluated at a higher working order and retried until the result is known
/// far enough.
pub fn eval(e: &GfExpr, order: i32) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(Error::InvalidInput(format!("order must be at least 1, got {order}")));
    }
    let mut last_err = None;
    for slack in SLACK_STEPS {
        match eval_at(e, order + slack) {
            Ok(s) if s.order() >= order => return Ok(s.truncate(order)),
            Ok(s) => last_err = Some(Error::Validation(format!(
                "precision lost: result known only below x^{}",
                s.order()
            ))),
            // A denominator may vanish only to the working order.
            Err(err @ Error::DivisionByZero { .. }) => last_err = Some(err),
            Err(err) => return Err(err),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// Evaluates bottom-up with every leaf known below `x^work`.
pub fn eval_at(e: &GfExpr, work: i32) -> Result<LaurentSeries> {
    Ok(match e {
        GfExpr::Rational(r) => LaurentSeries::constant(QuadExt::rational(r.clone()), work),
        GfExpr::Sqrt5 => LaurentSeries::constant(QuadExt::sqrt5(), work),
        GfExpr::X => LaurentSeries::monomial(1, work),
        GfExpr::Catalan => LaurentSeries::catalan(work),
        GfExpr::Sqrt(a) => eval_at(a, work)?.sqrt()?,
        GfExpr::Neg(a) => -&eval_at(a, work)?,
        GfExpr::Add(a, b) => &eval_at(a, work)? + &eval_at(b, work)?,
        GfExpr::Sub(a, b) => &eval_at(a, work)? - &eval_at(b, work)?,
        GfExpr::Mul(a, b) => &eval_at(a, work)? * &eval_at(b, work)?,
        GfExpr::Div(a, b) => eval_at(a, work)?.div(&eval_at(b, work)?)?,
        GfExpr::Pow(a, k) => eval_at(a, work)?.pow(*k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::parse;
    use num_bigint::BigInt;

    fn ints(text: &str, n: i32) -> Vec<BigInt> {
        eval(&parse(text).unwrap(), n)
            .unwrap()
            .integer_coefficients(n as usize)
            .unwrap()
    }

    #[test]
    fn geometric() {
        assert_eq!(ints("1/(1-x)", 5), vec![BigInt::from(1); 5]);
    }

    #[test]
    fn radical_catalan_matches_atom() {
        let radical = eval(&parse("(1-sqrt(1-4*x))/(2*x)").unwrap(), 20).unwrap();
        let atom = eval(&GfExpr::Catalan, 20).unwrap();
        assert_eq!(radical, atom);
        assert_eq!(radical.order(), 20);
    }

    #[test]
    fn principal_parts_cancel() {
        // 1/x - 1/x + 1 with poles in the intermediate terms
        assert_eq!(ints("1/x+1-1/x", 6), vec![1.into(), 0.into(), 0.into(), 0.into(), 0.into(), 0.into()]);
        assert_eq!(ints("(x^-3+x^2)*x^3", 4), vec![1.into(), 0.into(), 0.into(), 0.into()]);
    }

    #[test]
    fn sqrt5_cancels() {
        assert_eq!(ints("(1+r5)*(1-r5)/(0-4)", 3), vec![1.into(), 0.into(), 0.into()]);
    }

    #[test]
    fn errors() {
        assert!(matches!(eval(&parse("1/(x-x)").unwrap(), 5), Err(Error::DivisionByZero { .. })));
        assert!(matches!(eval(&parse("sqrt(2)").unwrap(), 5), Err(Error::UnsupportedConstant(_))));
        assert!(matches!(eval(&parse("sqrt(x)").unwrap(), 5), Err(Error::OddValuation(1))));
        assert!(eval(&parse("x").unwrap(), 0).is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, NumAssign, One, Signed, Zero};

use crate::{Error, Result};

/// Exact scalar field used by every computation in this crate.
///
/// The intended models are `Ratio<I>` over a signed integer type; the `Ord`
/// bound rules out floating point, which would make exact polyhedron
/// comparisons meaningless.
pub trait Scalar: Num + NumAssign + Signed + Ord + Clone + fmt::Debug + fmt::Display {
    fn from_int(value: i64) -> Self;

    /// Panics if `denom` is zero.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Parses `"p/q"` or a plain integer string, in lowest terms.
    fn parse(text: &str) -> Result<Self>;

    /// A positive factor `s` such that `s * values` has integer entries with
    /// gcd 1. Returns one when all entries are zero.
    fn integer_normalizer(values: &[Self]) -> Self;
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + NumAssign + Clone + FromStr + From<i64> + fmt::Debug + fmt::Display,
{
    fn from_int(value: i64) -> Self {
        Ratio::from_integer(I::from(value))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(I::from(numer), I::from(denom))
    }

    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid rational literal {text:?}"));
        let (numer, denom) = match text.split_once('/') {
            Some((n, d)) => (
                I::from_str(n.trim()).map_err(|_| bad())?,
                I::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (I::from_str(text).map_err(|_| bad())?, I::one()),
        };
        if denom.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        Ok(Ratio::new(numer, denom))
    }

    fn integer_normalizer(values: &[Self]) -> Self {
        let mut denom_lcm = I::one();
        for v in values {
            if !v.is_zero() {
                denom_lcm = denom_lcm.lcm(v.denom());
            }
        }
        let mut numer_gcd = I::zero();
        for v in values {
            if !v.is_zero() {
                let scaled = v.numer().clone() * denom_lcm.clone() / v.denom().clone();
                numer_gcd = numer_gcd.gcd(&scaled);
            }
        }
        if numer_gcd.is_zero() {
            return Self::one();
        }
        Ratio::new(denom_lcm, numer_gcd)
    }
}

/// Exact dot product.
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x.clone() * y.clone();
    }
    acc
}

//! Rational functions with integer-polynomial numerator and denominator.
//!
//! Every `RatFunc` is kept in a canonical normal form:
//!
//! 1. the denominator is nonzero,
//! 2. numerator and denominator have no common polynomial factor
//!    (their primitive parts are coprime),
//! 3. their integer contents are coprime,
//! 4. the denominator's leading coefficient is positive.
//!
//! The form is unique, so structural equality (`PartialEq`) decides equality
//! of rational functions.  Evaluation returns `None` at a pole — correct
//! because in lowest terms numerator and denominator never vanish together.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::poly::{poly_gcd, IntPoly};

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Builds `num / den` and reduces to normal form.
    ///
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = IntPoly::new(num.coeffs().iter().map(|x| x / &c).collect());
            den = IntPoly::new(den.coeffs().iter().map(|x| x / &c).collect());
        }
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(IntPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(IntPoly::one())
    }

    pub fn from_rational(q: &BigRational) -> Self {
        RatFunc::new(
            IntPoly::new(vec![q.numer().clone()]),
            IntPoly::new(vec![q.denom().clone()]),
        )
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        // Cross-cancel before multiplying to keep intermediate degrees low.
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap_or_else(|| self.num.clone());
        let d1 = other.den.div_exact(&g1).unwrap_or_else(|| other.den.clone());
        let b = other.num.div_exact(&g2).unwrap_or_else(|| other.num.clone());
        let d2 = self.den.div_exact(&g2).unwrap_or_else(|| self.den.clone());
        RatFunc::new(a.mul(&b), d1.mul(&d2))
    }

    /// Division; panics when `other` is zero.
    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by the zero rational function");
        self.mul(&RatFunc {
            num: other.den.clone(),
            den: other.num.clone(),
        })
    }

    /// Reciprocal; panics on zero.
    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation; `None` exactly at poles.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let den_val = self.den.eval_rat(x);
        if den_val.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(x) / den_val)
    }

    /// Value at 1, the quantity the ν-calculus reads off (`None` = pole).
    pub fn value_at_one(&self) -> Option<BigRational> {
        self.eval(&BigRational::one())
    }

    /// Multiplies by the monomial `c·z^k`.
    pub fn mul_monomial(&self, c: &BigInt, k: usize) -> RatFunc {
        RatFunc::new(self.num.scale(c).mul_z_pow(k), self.den.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num.to_pretty())
        } else {
            write!(f, "({}) / ({})", self.num.to_pretty(), self.den.to_pretty())
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn normal_form_is_reduced_and_unique() {
        // (z²−1)/(z−1) reduces to z+1.
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1]));
        assert_eq!(r, RatFunc::from_poly(p(&[1, 1])));
        // Scalar content is reduced and the sign lives in the numerator.
        let s = RatFunc::new(p(&[2, 4]), p(&[-6]));
        assert_eq!(s.num(), &p(&[-1, -2]));
        assert_eq!(s.den(), &p(&[3]));
        // Same function, different raw inputs, identical normal form.
        let a = RatFunc::new(p(&[0, 2]), p(&[2, 2]));
        let b = RatFunc::new(p(&[0, -3]), p(&[-3, -3]));
        assert_eq!(a, b);
    }

    #[test]
    fn arithmetic() {
        let half = RatFunc::new(p(&[1]), p(&[2]));
        let third = RatFunc::new(p(&[1]), p(&[3]));
        assert_eq!(half.add(&third), RatFunc::new(p(&[5]), p(&[6])));
        let z = RatFunc::from_poly(p(&[0, 1]));
        let one_over_z1 = RatFunc::new(p(&[1]), p(&[1, 1]));
        // z · 1/(z+1) + 1/(z+1) = 1.
        let total = z.mul(&one_over_z1).add(&one_over_z1);
        assert_eq!(total, RatFunc::one());
        assert_eq!(one_over_z1.recip(), RatFunc::from_poly(p(&[1, 1])));
        let q = z.div(&one_over_z1); // z(z+1)
        assert_eq!(q, RatFunc::from_poly(p(&[0, 1, 1])));
        assert_eq!(q.sub(&q), RatFunc::zero());
    }

    #[test]
    fn evaluation_and_poles() {
        let r = RatFunc::new(p(&[1]), p(&[-1, 1])); // 1/(z−1)
        assert_eq!(r.eval(&BigRational::one()), None);
        assert_eq!(r.value_at_one(), None);
        assert_eq!(
            r.eval(&BigRational::from_integer(BigInt::from(3))).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        let s = RatFunc::new(p(&[1, 1]), p(&[1, 0, 1])); // (z+1)/(z²+1)
        assert_eq!(s.value_at_one().unwrap(), BigRational::one());
    }

    #[test]
    fn cyclotomic_quotients_reduce() {
        // Φ₂Φ₈/(Φ₃Φ₁₂) evaluated at 1 is 2·2/(3·1) = 4/3.
        let num = cyclotomic(2).mul(&cyclotomic(8));
        let den = cyclotomic(3).mul(&cyclotomic(12));
        let r = RatFunc::new(num, den);
        assert_eq!(
            r.value_at_one().unwrap(),
            BigRational::new(BigInt::from(4), BigInt::from(3))
        );
        // An unreduced presentation of the same function normalizes equally.
        let unreduced = RatFunc::new(
            cyclotomic(2).mul(&cyclotomic(8)).mul(&cyclotomic(5)),
            cyclotomic(3).mul(&cyclotomic(12)).mul(&cyclotomic(5)),
        );
        assert_eq!(r, unreduced);
    }

    #[test]
    fn display_formats() {
        let r = RatFunc::new(p(&[1, 1]), p(&[1, 0, 1]));
        assert_eq!(r.to_string(), "(z + 1) / (z^2 + 1)");
        assert_eq!(RatFunc::from_poly(p(&[0, 1])).to_string(), "z");
    }
}

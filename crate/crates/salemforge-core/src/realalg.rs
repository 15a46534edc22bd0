//! Real algebraic numbers as a square-free defining polynomial plus an
//! isolating interval.
//!
//! Representation invariant: either `lo == hi` and the value is that exact
//! rational (a root of `poly`), or `poly(lo)` and `poly(hi)` have strictly
//! opposite signs and `poly` has exactly one root in `(lo, hi)`.
//!
//! All comparisons (against rationals or other algebraic numbers) are exact,
//! by interval refinement plus a gcd witness for equality.  Floating-point
//! conversion and decimal rendering are provided for display only.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{poly_gcd, square_free_part, IntPoly, PolyError};
use crate::sturm::{cauchy_root_bound, sturm_count, Bound};

#[derive(Debug, Clone)]
pub struct RealAlgebraic {
    poly: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

impl RealAlgebraic {
    /// The unique root of `poly` in `(lo, hi]`.
    ///
    /// `poly` is replaced by its square-free part; the call fails unless the
    /// interval isolates exactly one distinct root.
    pub fn new_root_in(
        poly: &IntPoly,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Self, PolyError> {
        let sf = square_free_part(poly);
        if sf.is_constant() {
            return Err(PolyError::PrecisionUnreachable(
                "constant polynomial has no roots".into(),
            ));
        }
        let n = sturm_count(&sf, &Bound::At(lo.clone()), &Bound::At(hi.clone()));
        if n != 1 {
            return Err(PolyError::PrecisionUnreachable(format!(
                "interval isolates {n} roots, expected exactly 1"
            )));
        }
        if sf.sign_at(&hi) == 0 {
            return Ok(RealAlgebraic {
                poly: sf,
                lo: hi.clone(),
                hi,
            });
        }
        // Shrink the left endpoint until it has a definite, opposite sign.
        let mut lo = lo;
        let hi_sign = sf.sign_at(&hi);
        loop {
            let lo_sign = sf.sign_at(&lo);
            if lo_sign != 0 && lo_sign != hi_sign {
                break;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let ms = sf.sign_at(&mid);
            if ms == 0 {
                return Ok(RealAlgebraic {
                    poly: sf,
                    lo: mid.clone(),
                    hi: mid,
                });
            }
            if ms == hi_sign {
                // Root is left of mid, but the left endpoint is stuck at a
                // sign we cannot use; move lo up only while the root stays.
                let count = sturm_count(&sf, &Bound::At(lo.clone()), &Bound::At(mid.clone()));
                debug_assert!(count == 1);
                // Try a point just right of lo instead: bisect toward lo.
                let a = lo.clone();
                let mut b = mid;
                loop {
                    let m = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                    let s = sf.sign_at(&m);
                    if s == 0 {
                        return Ok(RealAlgebraic {
                            poly: sf,
                            lo: m.clone(),
                            hi: m,
                        });
                    }
                    if s != hi_sign {
                        return Ok(RealAlgebraic {
                            poly: sf,
                            lo: m,
                            hi: b,
                        });
                    }
                    b = m;
                    // The root lies in (a, b); keep halving.
                    if sturm_count(&sf, &Bound::At(a.clone()), &Bound::At(b.clone())) == 0 {
                        // Degenerate: the root was at `a` after all.
                        return Ok(RealAlgebraic {
                            poly: sf,
                            lo: a.clone(),
                            hi: a,
                        });
                    }
                }
            }
            lo = mid;
        }
        Ok(RealAlgebraic { poly: sf, lo, hi })
    }

    /// The largest real root of `poly` (`None` when there is none).
    pub fn largest_root(poly: &IntPoly) -> Option<Self> {
        let sf = square_free_part(poly);
        if sf.is_constant() {
            return None;
        }
        let bound = cauchy_root_bound(&sf);
        let total = sturm_count(&sf, &Bound::NegInf, &Bound::PosInf);
        if total == 0 {
            return None;
        }
        let mut lo = -bound.clone();
        let mut hi = bound;
        // Maintain: the largest root lies in (lo, hi] and count(hi, ∞) = 0.
        while sturm_count(&sf, &Bound::At(lo.clone()), &Bound::At(hi.clone())) > 1 {
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            if sturm_count(&sf, &Bound::At(mid.clone()), &Bound::At(hi.clone())) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RealAlgebraic::new_root_in(&sf, lo, hi).ok()
    }

    /// The unique root greater than a rational threshold; `None` unless the
    /// count is exactly one.
    pub fn unique_root_above(poly: &IntPoly, threshold: &BigRational) -> Option<Self> {
        let sf = square_free_part(poly);
        if sf.is_constant() {
            return None;
        }
        if sturm_count(&sf, &Bound::At(threshold.clone()), &Bound::PosInf) != 1 {
            return None;
        }
        let bound = cauchy_root_bound(&sf);
        RealAlgebraic::new_root_in(&sf, threshold.clone(), bound).ok()
    }

    pub fn from_rational(q: BigRational) -> Self {
        let poly = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]);
        RealAlgebraic {
            poly,
            lo: q.clone(),
            hi: q,
        }
    }

    /// Builds from a caller-certified isolating bracket.
    ///
    /// The endpoints must carry strictly opposite signs of `poly` (checked);
    /// the caller asserts that `poly` is square-free and has exactly **one**
    /// root in `(lo, hi)`.  Intended for situations where uniqueness is known
    /// from an external argument — e.g. an eigenvalue count obtained by a
    /// matrix congruence — and a Sturm-chain validation of a huge polynomial
    /// would dwarf the whole computation.
    pub fn from_sign_change_bracket(
        poly: IntPoly,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Self, PolyError> {
        if lo >= hi {
            return Err(PolyError::PrecisionUnreachable(
                "bracket endpoints out of order".into(),
            ));
        }
        let sl = poly.sign_at(&lo);
        let sh = poly.sign_at(&hi);
        if sl == 0 || sh == 0 || sl == sh {
            return Err(PolyError::PrecisionUnreachable(
                "bracket endpoints must have strictly opposite signs".into(),
            ));
        }
        Ok(RealAlgebraic { poly, lo, hi })
    }

    pub fn defining_poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn is_exact_rational(&self) -> bool {
        self.lo == self.hi
    }

    /// One bisection step (no-op on exact rationals).
    fn refine_once(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        let s = self.poly.sign_at(&mid);
        if s == 0 {
            self.lo = mid.clone();
            self.hi = mid;
            return;
        }
        if s == self.poly.sign_at(&self.hi) {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Bisects until `hi − lo ≤ width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        while &self.hi - &self.lo > *width {
            self.refine_once();
        }
    }

    /// Midpoint after refining the interval below `eps` (exact rationals are
    /// returned as-is).
    pub fn approx_rational(&mut self, eps: &BigRational) -> BigRational {
        self.refine_to(eps);
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    /// Display-quality `f64` approximation.
    pub fn approx_f64(&self) -> f64 {
        let mut me = self.clone();
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(17));
        me.refine_to(&eps);
        let mid = (&me.lo + &me.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact comparison against a rational number.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        if self.lo == self.hi {
            return self.lo.cmp(q);
        }
        if self.poly.sign_at(q) == 0 && *q > self.lo && *q <= self.hi {
            return Ordering::Equal;
        }
        let mut me = self.clone();
        loop {
            if *q <= me.lo {
                return Ordering::Greater;
            }
            if *q >= me.hi {
                return Ordering::Less;
            }
            me.refine_once();
            if me.lo == me.hi {
                return me.lo.cmp(q);
            }
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn cmp_alg(&self, other: &RealAlgebraic) -> Ordering {
        if self.is_exact_rational() {
            return other.cmp_rational(&self.lo).reverse();
        }
        if other.is_exact_rational() {
            return self.cmp_rational(&other.lo);
        }
        let g = poly_gcd(&self.poly, &other.poly);
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            // Non-exact intervals hold their root strictly inside, so touching
            // endpoints still separate the two numbers.
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            // Overlapping intervals: a common root of g in the overlap means
            // the two numbers coincide.
            if !g.is_constant() {
                let lo = if a.lo > b.lo { a.lo.clone() } else { b.lo.clone() };
                let hi = if a.hi < b.hi { a.hi.clone() } else { b.hi.clone() };
                if sturm_count(&g, &Bound::At(lo), &Bound::At(hi)) >= 1 {
                    // That root lies in both isolating intervals, hence is
                    // both numbers at once.
                    return Ordering::Equal;
                }
            }
            a.refine_once();
            b.refine_once();
            if a.is_exact_rational() {
                return b.cmp_rational(&a.lo).reverse();
            }
            if b.is_exact_rational() {
                return a.cmp_rational(&b.lo);
            }
        }
    }

    /// Decimal rendering with `sig` significant digits (round-half-up).
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig >= 1);
        let mut me = self.clone();
        let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(sig as u32 + 6));
        me.refine_to(&eps);
        let mid = (&me.lo + &me.hi) / BigRational::from_integer(BigInt::from(2));
        format_rational_sig(&mid, sig)
    }
}

/// Formats a rational with `sig` significant digits.
pub fn format_rational_sig(v: &BigRational, sig: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let av = v.abs();
    let n = av.numer().clone();
    let d = av.denom().clone();
    let ipart = &n / &d;
    // shift = number of digits kept after the decimal point before rounding.
    let shift: usize = if !ipart.is_zero() {
        let e = ipart.to_string().len();
        sig.saturating_sub(e)
    } else {
        // 0 < v < 1: count leading zeros after the point.
        let mut zeros = 0usize;
        let ten = BigInt::from(10);
        let mut scaled_num = n.clone();
        while &scaled_num / &d < BigInt::one() {
            scaled_num *= &ten;
            zeros += 1;
        }
        zeros + sig - 1
    };
    let scaled = round_div(&(&n * BigInt::from(10).pow(shift as u32)), &d);
    let s = scaled.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    // Digits before the decimal point (rounding may promote, e.g. 9.99 → 10.0,
    // which this split handles automatically).
    let int_digits = s.len() as isize - shift as isize;
    if int_digits >= 1 {
        let k = int_digits as usize;
        out.push_str(&s[..k]);
        if shift > 0 {
            out.push('.');
            out.push_str(&s[k..]);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-int_digits) as usize {
            out.push('0');
        }
        out.push_str(&s);
    }
    out
}

/// Rounds `n/d` to the nearest integer, ties away from zero (`d > 0`).
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    if n.is_negative() {
        -round_div(&-n, d)
    } else {
        (n * &two + d) / (d * &two)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_two_digits() {
        let r = RealAlgebraic::largest_root(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(r.to_decimal(12), "1.41421356237");
        assert_eq!(r.to_decimal(20), "1.4142135623730950488");
        assert!((r.approx_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn golden_ratio_and_plastic_number() {
        let phi = RealAlgebraic::largest_root(&p(&[-1, -1, 1])).unwrap();
        assert_eq!(phi.to_decimal(12), "1.61803398875");
        let plastic = RealAlgebraic::largest_root(&p(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(plastic.to_decimal(12), "1.32471795724");
    }

    #[test]
    fn lehmer_number_digits() {
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let tau = RealAlgebraic::largest_root(&lehmer).unwrap();
        assert_eq!(tau.to_decimal(12), "1.17628081826");
        assert_eq!(tau.to_decimal(21), "1.17628081825991750654");
    }

    #[test]
    fn exact_rational_roots() {
        let r = RealAlgebraic::largest_root(&p(&[-6, 1])).unwrap(); // z − 6
        assert_eq!(r.cmp_rational(&rat(6, 1)), Ordering::Equal);
        assert_eq!(r.cmp_rational(&rat(7, 1)), Ordering::Less);
        assert_eq!(r.to_decimal(5), "6.0000");
        let half = RealAlgebraic::from_rational(rat(1, 2));
        assert_eq!(half.to_decimal(3), "0.500");
    }

    #[test]
    fn comparisons() {
        let sqrt2 = RealAlgebraic::largest_root(&p(&[-2, 0, 1])).unwrap();
        let sqrt3 = RealAlgebraic::largest_root(&p(&[-3, 0, 1])).unwrap();
        assert_eq!(sqrt2.cmp_alg(&sqrt3), Ordering::Less);
        assert_eq!(sqrt3.cmp_alg(&sqrt2), Ordering::Greater);
        // Same number defined by different polynomials compares equal.
        let sqrt2_other = RealAlgebraic::new_root_in(
            &p(&[-2, 0, 1]).mul(&p(&[-5, 1])),
            rat(1, 1),
            rat(3, 2),
        )
        .unwrap();
        assert_eq!(sqrt2.cmp_alg(&sqrt2_other), Ordering::Equal);
        assert_eq!(sqrt2.cmp_rational(&rat(3, 2)), Ordering::Less);
        assert_eq!(sqrt2.cmp_rational(&rat(7, 5)), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&rat(1414, 1000)), Ordering::Greater);
    }

    #[test]
    fn unique_root_above_threshold() {
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let tau = RealAlgebraic::unique_root_above(&lehmer, &BigRational::one()).unwrap();
        assert_eq!(tau.to_decimal(12), "1.17628081826");
        // z² − 2 has two roots above −2, so no unique root there.
        assert!(RealAlgebraic::unique_root_above(&p(&[-2, 0, 1]), &rat(-2, 1)).is_none());
    }

    #[test]
    fn isolating_interval_constructor_validates() {
        let q = p(&[-2, 0, 1]);
        assert!(RealAlgebraic::new_root_in(&q, rat(-2, 1), rat(2, 1)).is_err());
        assert!(RealAlgebraic::new_root_in(&q, rat(0, 1), rat(1, 1)).is_err());
        let r = RealAlgebraic::new_root_in(&q, rat(1, 1), rat(2, 1)).unwrap();
        assert_eq!(r.to_decimal(6), "1.41421");
    }

    #[test]
    fn decimal_formatting_corner_cases() {
        assert_eq!(format_rational_sig(&rat(1, 3), 5), "0.33333");
        assert_eq!(format_rational_sig(&rat(2, 3), 5), "0.66667");
        assert_eq!(format_rational_sig(&rat(-1, 8), 3), "-0.125");
        assert_eq!(format_rational_sig(&rat(999, 100), 2), "10.0");
        assert_eq!(format_rational_sig(&rat(999995, 10000000), 5), "0.100000");
        assert_eq!(format_rational_sig(&rat(1, 200), 3), "0.00500");
        assert_eq!(
            format_rational_sig(&BigRational::from_str("123456789/1").unwrap(), 4),
            "123456789"
        );
    }
}

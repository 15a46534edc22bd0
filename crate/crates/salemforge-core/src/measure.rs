//! Mahler measure of integer polynomials, computed as a certified rational
//! interval.
//!
//! `M(p) = |a_n| · ∏ max(1, |α_i|)` over the complex roots `α_i`.  The
//! computation is exact-arithmetic throughout:
//!
//! 1. powers of `z` and cyclotomic factors are stripped (they contribute 1),
//! 2. the remaining core is split square-free (Yun), `M(f^m) = M(f)^m`,
//! 3. per square-free factor, roots are partitioned into modulus clusters by
//!    exact disk counts at rational radii; a thin annulus around the unit
//!    circle absorbs unimodular roots with a validated `[1, (1+δ)^k]`
//!    contribution, and outer clusters are bisected until the enclosing
//!    product interval is narrower than the requested precision.
//!
//! The result is an interval `[lo, hi]` of rationals with `hi − lo ≤
//! precision` that provably contains the measure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::disk::count_roots_in_disk_near;
use crate::poly::{
    square_free_decomposition, strip_trivial_factors, IntPoly, PolyError,
};
use crate::realalg::format_rational_sig;

/// A certified enclosure `lo ≤ M(p) ≤ hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl MeasureInterval {
    pub fn exact(v: BigRational) -> Self {
        MeasureInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn approx_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_decimal(&self, sig: usize) -> String {
        format_rational_sig(&self.midpoint(), sig)
    }

    fn mul(&self, other: &MeasureInterval) -> MeasureInterval {
        // All quantities are ≥ 0 here, so endpoint products are monotone.
        MeasureInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    fn pow(&self, e: usize) -> MeasureInterval {
        let mut out = MeasureInterval::exact(BigRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A rational strictly above every root modulus of `f`.
fn modulus_roof(f: &IntPoly) -> BigRational {
    let lead = f.leading_coeff().abs();
    let mut max = BigInt::zero();
    let n = f.deg();
    for k in 0..n {
        let a = f.coeff(k).abs();
        if a > max {
            max = a;
        }
    }
    BigRational::from_integer(BigInt::from(2)) + BigRational::new(max, lead)
}

/// Outer modulus cluster: exactly `count` roots with modulus in `(lo, hi)`.
struct Cluster {
    lo: BigRational,
    hi: BigRational,
    count: usize,
}

impl Cluster {
    /// Contribution interval `[lo^count, hi^count]`.
    fn contribution(&self) -> MeasureInterval {
        let mut lo = BigRational::one();
        let mut hi = BigRational::one();
        for _ in 0..self.count {
            lo *= &self.lo;
            hi *= &self.hi;
        }
        MeasureInterval { lo, hi }
    }
}

/// Measure interval of a square-free primitive polynomial.
fn measure_square_free(
    f: &IntPoly,
    precision: &BigRational,
) -> Result<MeasureInterval, PolyError> {
    let lead = BigRational::from_integer(f.leading_coeff().abs());
    if f.is_constant() {
        return Ok(MeasureInterval::exact(lead));
    }
    let n = f.deg();
    let roof = modulus_roof(f);
    // δ: the unit-circle annulus half-width.  Roots caught inside contribute
    // a factor within [1, (1+δ)^n], and that slack is amplified by the rest
    // of the product, which is at most the L1 norm (since M(f) ≤ Σ|c_k|).
    // Keeping (n+1)·δ·L1 below precision/8 bounds the amplified slack.
    let l1: BigInt = f.coeffs().iter().map(|c| c.abs()).sum();
    let mut delta = precision
        / (BigRational::from_integer(BigInt::from(8 * (n as i64 + 1)))
            * BigRational::from_integer(l1));
    let cap = big_rat(1, 100);
    if delta > cap {
        delta = cap;
    }
    let margin = &delta / BigRational::from_integer(BigInt::from(4));
    let fail = || PolyError::PrecisionUnreachable("degenerate disk counts persist".into());
    let one = BigRational::one();
    let (_, inside) =
        count_roots_in_disk_near(f, &(&one - &delta), &margin, 40).ok_or_else(fail)?;
    let (r_out, below_out) =
        count_roots_in_disk_near(f, &(&one + &delta), &margin, 40).ok_or_else(fail)?;
    let circle_cluster = below_out - inside;
    let outside = n - below_out;
    let mut clusters = vec![Cluster {
        lo: r_out,
        hi: roof,
        count: outside,
    }];
    let circle_contrib = Cluster {
        lo: one.clone(),
        hi: &one + &delta,
        count: circle_cluster,
    }
    .contribution();
    // Bisect outer clusters until the combined interval is tight enough.
    for _round in 0..20_000 {
        let mut total = MeasureInterval::exact(lead.clone());
        total = total.mul(&circle_contrib);
        for c in &clusters {
            if c.count > 0 {
                total = total.mul(&c.contribution());
            }
        }
        if total.width() <= *precision {
            return Ok(total);
        }
        // Split the widest-contributing nonempty cluster.
        let mut widest = 0usize;
        let mut widest_width = BigRational::zero();
        for (i, c) in clusters.iter().enumerate() {
            if c.count == 0 {
                continue;
            }
            let w = c.contribution().width();
            if w > widest_width {
                widest_width = w;
                widest = i;
            }
        }
        let target = clusters.remove(widest);
        let mid = (&target.lo + &target.hi) / BigRational::from_integer(BigInt::from(2));
        let split_margin =
            (&target.hi - &target.lo) / BigRational::from_integer(BigInt::from(64));
        let (r_mid, below_mid) =
            count_roots_in_disk_near(f, &mid, &split_margin, 40).ok_or_else(fail)?;
        let below_lo = n
            - clusters
                .iter()
                .filter(|c| c.lo >= target.lo)
                .map(|c| c.count)
                .sum::<usize>()
            - target.count;
        // `below_lo` = roots with modulus < target.lo; in-cluster split:
        let in_lower = below_mid - below_lo;
        let in_upper = target.count - in_lower;
        clusters.push(Cluster {
            lo: target.lo,
            hi: r_mid.clone(),
            count: in_lower,
        });
        clusters.push(Cluster {
            lo: r_mid,
            hi: target.hi,
            count: in_upper,
        });
    }
    Err(PolyError::PrecisionUnreachable(
        "cluster bisection did not converge".into(),
    ))
}

/// Mahler measure of `p` as a certified interval of width ≤ `precision`.
///
/// `p` must be nonzero.  The measure includes the `|leading coefficient|`
/// factor, so e.g. `M(2z − 1) = 2`.
pub fn mahler_measure(
    p: &IntPoly,
    precision: &BigRational,
) -> Result<MeasureInterval, PolyError> {
    assert!(!p.is_zero(), "Mahler measure of the zero polynomial");
    assert!(precision.is_positive(), "precision must be positive");
    let stripped = strip_trivial_factors(p);
    let core = &stripped.core;
    if core.is_constant() {
        return Ok(MeasureInterval::exact(BigRational::from_integer(
            core.coeff(0).abs(),
        )));
    }
    let content = BigRational::from_integer(core.content());
    let factors = square_free_decomposition(core);
    let total_mult: usize = factors.iter().map(|(_, m)| m).sum();
    // Work at a per-factor precision, retrying tighter if the product of
    // factor intervals overshoots the requested width.
    let mut working = precision / BigRational::from_integer(BigInt::from(4 * total_mult as i64));
    for _attempt in 0..8 {
        let mut total = MeasureInterval::exact(content.clone());
        for (f, mult) in &factors {
            let fi = measure_square_free(f, &working)?;
            total = total.mul(&fi.pow(*mult));
        }
        if total.width() <= *precision {
            return Ok(total);
        }
        working /= BigRational::from_integer(BigInt::from(64));
    }
    Err(PolyError::PrecisionUnreachable(
        "combined factor intervals stayed too wide".into(),
    ))
}

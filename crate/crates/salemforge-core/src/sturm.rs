//! Exact real-root counting via Sturm sequences.
//!
//! The chain is built over the integers with sign-controlled pseudo-remainders
//! (each member is a **positive** rational multiple of the textbook remainder,
//! so sign-change counts are identical to the classical rational chain).
//!
//! Counting convention: for `a < b`, [`sturm_count`] returns the number of
//! **distinct** real roots in the half-open interval `(a, b]`.  The input is
//! replaced by its square-free part first, so repeated roots count once.
//! Endpoints may be `−∞`/`+∞` via [`Bound`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{square_free_part, IntPoly};

/// An interval endpoint for root counting: a rational number or ±∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(BigRational),
    PosInf,
}

impl Bound {
    pub fn rational(n: i64, d: i64) -> Bound {
        Bound::At(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn integer(n: i64) -> Bound {
        Bound::At(BigRational::from_integer(BigInt::from(n)))
    }

    fn le(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, _) => true,
            (_, Bound::PosInf) => true,
            (Bound::PosInf, _) => false,
            (_, Bound::NegInf) => false,
            (Bound::At(a), Bound::At(b)) => a <= b,
        }
    }
}

/// Remainder of `a` by `b`, scaled by a **positive** constant, content-stripped.
fn positive_scaled_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.deg();
    let db = b.deg();
    debug_assert!(da >= db && db >= 1);
    let lead = b.leading_coeff();
    let lead_neg = lead.is_negative();
    let mut rem = a.clone();
    let mut negate = false;
    for k in (0..=da - db).rev() {
        let c = rem.coeff(k + db);
        if c.is_zero() {
            continue;
        }
        // rem := lead·rem − c·z^k·b multiplies the running value by `lead`.
        rem = rem.scale(&lead).sub(&b.scale(&c).mul_z_pow(k));
        if lead_neg {
            negate = !negate;
        }
    }
    if negate {
        rem = rem.neg();
    }
    if rem.is_zero() {
        return rem;
    }
    let content = rem.content();
    IntPoly::new(rem.coeffs().iter().map(|c| c / &content).collect())
}

/// The Sturm chain of the square-free part of `p`.
fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let p0 = square_free_part(p);
    if p0.is_constant() {
        return vec![p0];
    }
    let p1 = p0.derivative();
    let mut chain = vec![p0, p1];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_zero() || last.is_constant() {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let r = positive_scaled_rem(prev, last).neg();
        if r.is_zero() {
            // Only possible for non-square-free input, which we excluded.
            break;
        }
        chain.push(r);
    }
    chain
}

/// Sign-change count along the chain at a bound, skipping zero values.
fn sign_changes_at(chain: &[IntPoly], x: &Bound) -> usize {
    let mut count = 0;
    let mut prev: i8 = 0;
    for q in chain {
        let s = match x {
            Bound::NegInf => q.sign_at_neg_inf(),
            Bound::PosInf => q.sign_at_pos_inf(),
            Bound::At(v) => q.sign_at(v),
        };
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
///
/// `p` must be nonzero.  Returns 0 whenever `b ≤ a`.
pub fn sturm_count(p: &IntPoly, a: &Bound, b: &Bound) -> usize {
    assert!(!p.is_zero(), "root counting needs a nonzero polynomial");
    if !a.le(b) || a == b {
        return 0;
    }
    if p.is_constant() {
        return 0;
    }
    let chain = sturm_chain(p);
    let wa = sign_changes_at(&chain, a);
    let wb = sign_changes_at(&chain, b);
    wa.saturating_sub(wb)
}

/// Total number of distinct real roots.
pub fn count_real_roots(p: &IntPoly) -> usize {
    sturm_count(p, &Bound::NegInf, &Bound::PosInf)
}

/// A rational `B > 0` with every complex root of `p` of modulus `< B`
/// (Cauchy bound `1 + max |c_k| / |c_n|`).
pub fn cauchy_root_bound(p: &IntPoly) -> BigRational {
    let n = p.deg();
    let lead = p.leading_coeff().abs();
    let mut max = BigInt::zero();
    for k in 0..n {
        let a = p.coeff(k).abs();
        if a > max {
            max = a;
        }
    }
    BigRational::one() + BigRational::new(max, lead)
}

/// Isolating intervals for all distinct real roots of `p`, ascending.
/// Each returned `(a, b)` contains exactly one root, strictly inside, and
/// the rational endpoints are never roots themselves.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<(BigRational, BigRational)> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let outer = cauchy_root_bound(p) + BigRational::one();
    isolate_real_roots_between(p, &-outer.clone(), &outer)
}

/// Isolating intervals for the distinct real roots of `p` inside `(lo, hi)`,
/// ascending.  Both endpoints must be non-roots of `p`; interior split
/// points are nudged off roots, so every returned interval holds its root
/// strictly between two non-root rationals.
pub fn isolate_real_roots_between(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    let sf = square_free_part(p);
    if sf.is_constant() {
        return Vec::new();
    }
    assert!(lo < hi, "isolation needs lo < hi");
    assert!(
        sf.sign_at(lo) != 0 && sf.sign_at(hi) != 0,
        "isolation endpoints must not be roots"
    );
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sturm_count(&sf, &Bound::At(a.clone()), &Bound::At(b.clone())) {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                // Split near the middle at a non-root point: the fractions
                // j/(2j+1) → 1/2 are pairwise distinct, so one of them must
                // miss the finitely many roots.
                let width = &b - &a;
                let mut j = 1i64;
                let mid = loop {
                    let frac = BigRational::new(BigInt::from(j), BigInt::from(2 * j + 1));
                    let m = &a + &width * frac;
                    if sf.sign_at(&m) != 0 {
                        break m;
                    }
                    j += 1;
                };
                // Right pushed first so the left half is processed first,
                // keeping the output ascending.
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out
}

//! Exact integer polynomials in one variable.
//!
//! `IntPoly` stores coefficients in ascending order (`coeffs[k]` is the
//! coefficient of `z^k`) with no trailing zeros; the zero polynomial has an
//! empty coefficient vector.  All arithmetic is exact over the integers or
//! rationals — no floating point enters any predicate.
//!
//! Beyond ring arithmetic this module provides the number-theoretic
//! operations the rest of the crate is built on:
//!
//! * cyclotomic polynomials `Φ_n` (memoised, computed by exact division of
//!   `z^n − 1` by the `Φ_d` for proper divisors `d`),
//! * the two graph-to-disk substitutions `z^n · p(z + 1/z)` and
//!   `z^(n/2) · p(√z + 1/√z)` (the latter defined exactly when `p` has pure
//!   parity),
//! * stripping of trivial factors (powers of `z` and cyclotomic factors),
//! * square-free (Yun) decomposition and primitive-PRS gcd,
//! * reciprocal-polynomial predicates and reversals.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised by polynomial-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    /// The halved substitution needs every exponent to share the parity of
    /// the degree; mixed-parity input has no polynomial image.
    #[error("halved substitution requires a pure-parity polynomial (all exponents congruent to the degree mod 2)")]
    HalvedParityError,
    /// Root-interval refinement failed to reach the requested width.
    #[error("requested precision unreachable: {0}")]
    PrecisionUnreachable(String),
    /// A parse failure for the text coefficient format.
    #[error("cannot parse polynomial: {0}")]
    ParseError(String),
}

/// A univariate polynomial with arbitrary-precision integer coefficients.
///
/// Invariant: `coeffs` never ends with a zero, so `coeffs.len()` is
/// `degree + 1` (and `0` exactly for the zero polynomial).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience constructor from machine integers (ascending order).
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_i64(&[1])
    }

    /// The monomial `c · z^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    /// The polynomial `z^n − 1`.
    pub fn z_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] = BigInt::one();
        IntPoly::new(coeffs)
    }

    /// The polynomial `z^n + 1`.
    pub fn z_pow_plus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    ///
    /// Panics on the zero polynomial; use only where a zero input is a bug.
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    /// Coefficient of `z^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::new(out)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn mul_z_pow(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: usize) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `z ↦ z²`.
    pub fn subst_z_squared(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len() - 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        IntPoly::new(out)
    }

    /// Substitutes `z ↦ −z`.
    pub fn subst_neg_z(&self) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// Horner evaluation at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a rational point.
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// `den^deg · p(num/den)` — an integer whose sign equals `sign p(num/den)`
    /// when `den > 0`.  Used by sign queries to avoid rational blow-up.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        // Homogeneous Horner: after processing c_j the accumulator equals
        // Σ_{k ≥ j} c_k num^{k−j} den^{deg−k}, since den_pow grows after use.
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    /// Exact sign of `p(x)` at a rational point: −1, 0, or 1.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval_homogeneous(x.numer(), x.denom());
        match v.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Sign of `p(x)` as `x → +∞` (0 for the zero polynomial).
    pub fn sign_at_pos_inf(&self) -> i8 {
        match self.leading_coeff().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Sign of `p(x)` as `x → −∞`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        let s = self.sign_at_pos_inf();
        if s == 0 {
            return 0;
        }
        if self.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// Approximate evaluation in `f64` (for display only, never predicates).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Content: gcd of all coefficients (non-negative; 0 for the zero poly).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division over the integers; `None` if `divisor` does not divide
    /// `self` exactly (in `ℚ[z]` with an integral quotient).
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dn = self.degree()?;
        let dd = divisor.deg();
        if dn < dd {
            return None;
        }
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = &rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let prod = &q * d;
                rem[k + j] -= prod;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    /// Quotient and remainder for a **monic** divisor (exact over ℤ).
    pub fn divrem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.leading_coeff().is_one(), "divisor must be monic");
        let dd = divisor.deg();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let dn = rem.len() - 1;
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let prod = &q * d;
                rem[k + j] -= prod;
            }
            quot[k] = q;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Reversal within degree `n`: `z^n · p(1/z)`.  Requires `n ≥ deg p`.
    pub fn reverse(&self, n: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        assert!(n >= self.deg(), "reversal degree below polynomial degree");
        let mut out = vec![BigInt::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[n - k] = c.clone();
        }
        IntPoly::new(out)
    }

    /// Number of trailing zero coefficients (the exact power of `z` dividing
    /// `self`); 0 for the zero polynomial.
    pub fn z_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Divides out `z^k` (requires the low coefficients to vanish).
    pub fn shift_down(&self, k: usize) -> IntPoly {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        assert!(self.coeffs[..k].iter().all(|c| c.is_zero()));
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Parses the text format `c0 c1 c2 ...` (ascending coefficients).
    pub fn parse_text(s: &str) -> Result<IntPoly, PolyError> {
        let mut coeffs = Vec::new();
        for tok in s.split_whitespace() {
            let c = BigInt::from_str(tok)
                .map_err(|e| PolyError::ParseError(format!("bad coefficient {tok:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(IntPoly::new(coeffs))
    }

    /// Human-readable rendering like `z^4 - z^2 + 1` (descending powers).
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let lead_term = out.is_empty();
            if lead_term {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_mag {
                    out.push('*');
                }
                out.push('z');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    /// The text interchange format: ascending coefficients, space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_pretty())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("IntPoly", 1)?;
        let nums: Vec<serde_json::Number> = self
            .coeffs
            .iter()
            .map(|c| {
                serde_json::Number::from_str(&c.to_string())
                    .expect("integer string is a valid JSON number")
            })
            .collect();
        st.serialize_field("coeffs", &nums)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeffs: CoeffList,
        }
        struct CoeffList(Vec<BigInt>);
        impl<'de> Deserialize<'de> for CoeffList {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                struct V;
                impl<'de> Visitor<'de> for V {
                    type Value = CoeffList;
                    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                        write!(f, "a list of integers (numbers or strings)")
                    }
                    fn visit_seq<A: SeqAccess<'de>>(
                        self,
                        mut seq: A,
                    ) -> Result<CoeffList, A::Error> {
                        let mut out = Vec::new();
                        while let Some(v) = seq.next_element::<serde_json::Value>()? {
                            let s = match &v {
                                serde_json::Value::Number(n) => n.to_string(),
                                serde_json::Value::String(s) => s.clone(),
                                other => {
                                    return Err(serde::de::Error::custom(format!(
                                        "expected integer coefficient, got {other}"
                                    )))
                                }
                            };
                            let c = BigInt::from_str(&s).map_err(|e| {
                                serde::de::Error::custom(format!("bad coefficient {s:?}: {e}"))
                            })?;
                            out.push(c);
                        }
                        Ok(CoeffList(out))
                    }
                }
                d.deserialize_seq(V)
            }
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(IntPoly::new(raw.coeffs.0))
    }
}

// ---------------------------------------------------------------------------
// gcd / square-free machinery
// ---------------------------------------------------------------------------

/// Pseudo-remainder `prem(a, b)` with content stripped afterwards.
fn primitive_pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.deg();
    let db = b.deg();
    debug_assert!(da >= db);
    let lead = b.leading_coeff();
    let mut rem = a.clone();
    for k in (0..=da - db).rev() {
        let c = rem.coeff(k + db);
        if c.is_zero() {
            continue;
        }
        // rem := lead·rem − c·z^k·b   (kills the z^{k+db} term)
        let mut next = rem.scale(&lead);
        let sub = b.scale(&c).mul_z_pow(k);
        next = next.sub(&sub);
        rem = next;
    }
    debug_assert!(rem.degree().map_or(true, |d| d < db));
    rem.primitive_part()
}

/// Greatest common divisor via the primitive polynomial remainder sequence.
/// The result is primitive with positive leading coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let mut p = a.primitive_part();
    let mut q = b.primitive_part();
    if p.deg() < q.deg() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.is_zero() {
            return p.primitive_part();
        }
        if q.is_constant() {
            return IntPoly::one();
        }
        let r = primitive_pseudo_rem(&p, &q);
        p = q;
        q = r;
    }
}

/// Square-free part: `p / gcd(p, p')`, primitive with positive leading
/// coefficient.
pub fn square_free_part(p: &IntPoly) -> IntPoly {
    let p = p.primitive_part();
    if p.is_constant() {
        return p;
    }
    let g = poly_gcd(&p, &p.derivative());
    if g.is_constant() {
        return p;
    }
    p.div_exact(&g)
        .expect("gcd divides its argument")
        .primitive_part()
}

/// Yun square-free decomposition: returns pairwise-coprime square-free
/// primitive factors with multiplicities so that the product of
/// `factor^multiplicity` equals `p` up to a rational constant.
pub fn square_free_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let p = p.primitive_part();
    if p.is_constant() {
        return Vec::new();
    }
    let dp = p.derivative();
    let g = poly_gcd(&p, &dp);
    if g.is_constant() {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut b = p.div_exact(&g).expect("gcd divides").primitive_part();
    let mut c = dp.div_exact(&g).expect("gcd divides derivative");
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = poly_gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("factor divides").primitive_part();
        c = d.div_exact(&a).expect("factor divides");
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u64, IntPoly>>> = Lazy::new(|| {
    let mut m = HashMap::new();
    m.insert(1, IntPoly::from_i64(&[-1, 1]));
    Mutex::new(m)
});

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The `n`-th cyclotomic polynomial `Φ_n` (monic, irreducible, degree `φ(n)`).
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (z^n − 1) / ∏_{d | n, d < n} Φ_d, computed by exact division.
    let mut quot = IntPoly::z_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic(d);
        quot = quot
            .div_exact(&phi_d)
            .expect("cyclotomic factors divide z^n - 1");
    }
    CYCLOTOMIC_CACHE
        .lock()
        .unwrap()
        .insert(n, quot.clone());
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Φ_n(x0)` for an integer point, via `∏_{d|n} (x0^d − 1)^{μ(n/d)}`.
/// Returns `None` when a zero factor makes the product formula degenerate
/// (only happens for `|x0| ≤ 1`).
fn cyclotomic_value_at(n: u64, x0: &BigInt) -> Option<BigInt> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(n) {
        let mu = moebius(n / d);
        if mu == 0 {
            continue;
        }
        let v = x0.pow(d as u32) - BigInt::one();
        if v.is_zero() {
            return None;
        }
        if mu == 1 {
            num *= v;
        } else {
            den *= v;
        }
    }
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// Möbius function.
fn moebius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

// ---------------------------------------------------------------------------
// Chebyshev-type substitutions
// ---------------------------------------------------------------------------

/// Which substitution `chebyshev_substitute` performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstMode {
    /// `R(z) = z^deg(p) · p(z + 1/z)` — doubles the degree.
    Plain,
    /// `R(z) = z^(deg(p)/2) · p(√z + 1/√z)` — preserves the degree; defined
    /// exactly when every exponent of `p` is congruent to `deg p` mod 2.
    Halved,
}

/// Transports a polynomial through `x = z + 1/z` (plain) or `x = √z + 1/√z`
/// (halved).  Both use `z^k (z+1/z)^k = (z²+1)^k` resp.
/// `z^{k/2}(√z+1/√z)^k = (z+1)^k`.
pub fn chebyshev_substitute(p: &IntPoly, mode: SubstMode) -> Result<IntPoly, PolyError> {
    if p.is_zero() {
        return Ok(IntPoly::zero());
    }
    let n = p.deg();
    match mode {
        SubstMode::Plain => {
            let zsq_plus_1 = IntPoly::from_i64(&[1, 0, 1]);
            let mut acc = IntPoly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = zsq_plus_1.pow(k).scale(c).mul_z_pow(n - k);
                acc = acc.add(&term);
            }
            Ok(acc)
        }
        SubstMode::Halved => {
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() && (n - k) % 2 != 0 {
                    return Err(PolyError::HalvedParityError);
                }
            }
            let z_plus_1 = IntPoly::from_i64(&[1, 1]);
            let mut acc = IntPoly::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = z_plus_1.pow(k).scale(c).mul_z_pow((n - k) / 2);
                acc = acc.add(&term);
            }
            Ok(acc)
        }
    }
}

/// Inverse of the plain substitution: writes a reciprocal polynomial `p` of
/// even degree `2m` as `z^m · t(z + 1/z)` and returns the *trace polynomial*
/// `t` (degree `m`, integer coefficients).  Uses `z^k + z^{−k} = C_k(x)` with
/// `C_0 = 2`, `C_1 = x`, `C_k = x·C_{k−1} − C_{k−2}`.
///
/// Returns `None` when `p` is zero, of odd degree, or not reciprocal.
///
/// The transform translates root locations exactly: roots of `p` on the unit
/// circle ↔ roots of `t` in `[−2, 2]`; real root pairs `w, 1/w` with `w > 1`
/// ↔ real roots `> 2`; with `w < −1` ↔ real roots `< −2`; off-circle complex
/// quadruples ↔ nonreal roots of `t`.
pub fn inverse_chebyshev(p: &IntPoly) -> Option<IntPoly> {
    if p.is_zero() || p.deg() % 2 != 0 || !is_reciprocal(p) {
        return None;
    }
    let m = p.deg() / 2;
    let x = IntPoly::from_i64(&[0, 1]);
    let mut c_prev = IntPoly::from_i64(&[2]);
    let mut c_cur = x.clone();
    let mut t = IntPoly::new(vec![p.coeff(m)]);
    for k in 1..=m {
        t = t.add(&c_cur.scale(&p.coeff(m + k)));
        let next = x.mul(&c_cur).sub(&c_prev);
        c_prev = c_cur;
        c_cur = next;
    }
    Some(t)
}

// ---------------------------------------------------------------------------
// Trivial-factor stripping
// ---------------------------------------------------------------------------

/// Result of [`strip_trivial_factors`]: `p = core · z^z_power · ∏ Φ_n^mult`
/// (the core keeps the content of `p`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrippedPoly {
    pub core: IntPoly,
    /// `(n, multiplicity)` pairs, ascending in `n`.
    pub cyclotomic_factors: Vec<(u64, usize)>,
    pub z_power: usize,
}

/// Removes every factor of `z` and every cyclotomic factor from `p`.
///
/// Candidate cyclotomic indices are those `n` with `φ(n) ≤ deg p`, found by a
/// totient sieve; each candidate passes a cheap value filter
/// (`Φ_n(2) | p(2)` and `Φ_n(3) | p(3)`) before an exact trial division.
pub fn strip_trivial_factors(p: &IntPoly) -> StrippedPoly {
    if p.is_zero() || p.is_constant() {
        return StrippedPoly {
            core: p.clone(),
            cyclotomic_factors: Vec::new(),
            z_power: 0,
        };
    }
    let z_power = p.z_valuation();
    let mut core = p.shift_down(z_power);
    let mut factors: Vec<(u64, usize)> = Vec::new();
    if core.is_constant() {
        return StrippedPoly {
            core,
            cyclotomic_factors: factors,
            z_power,
        };
    }
    let deg = core.deg() as u64;
    // n/φ(n) stays below 5.4 for every n < 10^9, so 30·deg is a generous roof.
    let roof = 30 * deg + 100;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let mut p2 = core.eval_int(&two);
    let mut p3 = core.eval_int(&three);
    for n in 1..=roof {
        if euler_phi(n) > deg {
            continue;
        }
        if core.is_constant() {
            break;
        }
        // Value filter: if Φ_n divides core then Φ_n(x0) divides core(x0).
        if !p2.is_zero() {
            if let Some(v2) = cyclotomic_value_at(n, &two) {
                if !v2.is_zero() && !(&p2 % &v2).is_zero() {
                    continue;
                }
            }
        }
        if !p3.is_zero() {
            if let Some(v3) = cyclotomic_value_at(n, &three) {
                if !v3.is_zero() && !(&p3 % &v3).is_zero() {
                    continue;
                }
            }
        }
        let phi_n = cyclotomic(n);
        if phi_n.deg() > core.degree().unwrap_or(0) {
            continue;
        }
        let mut mult = 0;
        while let Some(q) = core.div_exact(&phi_n) {
            core = q;
            mult += 1;
            if core.is_constant() {
                break;
            }
        }
        if mult > 0 {
            factors.push((n, mult));
            p2 = core.eval_int(&two);
            p3 = core.eval_int(&three);
        }
    }
    StrippedPoly {
        core,
        cyclotomic_factors: factors,
        z_power,
    }
}

/// Rebuilds `z^z_power · ∏ Φ_n^mult · core` (inverse of the strip, for tests
/// and verification).
pub fn reassemble_stripped(s: &StrippedPoly) -> IntPoly {
    let mut p = s.core.mul_z_pow(s.z_power);
    for &(n, mult) in &s.cyclotomic_factors {
        p = p.mul(&cyclotomic(n).pow(mult));
    }
    p
}

/// True iff `z^deg(p) · p(1/z) = p` (palindromic coefficients).  Constants
/// and the zero polynomial count as reciprocal.
pub fn is_reciprocal(p: &IntPoly) -> bool {
    match p.degree() {
        None => true,
        Some(n) => (0..=n / 2).all(|k| p.coeff(k) == p.coeff(n - k)),
    }
}

/// Ordering of two rationals (helper re-export for neighbouring modules).
pub fn rat_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-1, 1]);
        assert_eq!(a.add(&b), p(&[0, 3, 3]));
        assert_eq!(a.sub(&b), p(&[2, 1, 3]));
        assert_eq!(a.mul(&b), p(&[-1, -1, -1, 3]));
        assert_eq!(a.degree(), Some(2));
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(b.pow(2), p(&[1, -2, 1]));
        assert_eq!(a.derivative(), p(&[2, 6]));
    }

    #[test]
    fn evaluation_and_signs() {
        let q = p(&[-2, 0, 1]); // z² − 2
        assert_eq!(q.eval_int(&BigInt::from(3)), BigInt::from(7));
        let x = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(
            q.eval_rat(&x),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );
        assert_eq!(q.sign_at(&x), 1);
        assert_eq!(q.sign_at(&BigRational::from_integer(BigInt::from(1))), -1);
        assert_eq!(q.sign_at_pos_inf(), 1);
        assert_eq!(q.sign_at_neg_inf(), 1);
        let c = p(&[0, 0, 0, -5]); // −5z³
        assert_eq!(c.sign_at_neg_inf(), 1);
        assert_eq!(c.sign_at_pos_inf(), -1);
    }

    #[test]
    fn division_exact_and_monic() {
        let a = p(&[-1, 0, 1]); // (z−1)(z+1)
        let d = p(&[1, 1]);
        assert_eq!(a.div_exact(&d), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        let (q, r) = p(&[1, 2, 3, 4]).divrem_monic(&p(&[1, 0, 1]));
        assert_eq!(q.mul(&p(&[1, 0, 1])).add(&r), p(&[1, 2, 3, 4]));
        assert!(r.degree().map_or(true, |x| x < 2));
    }

    #[test]
    fn gcd_and_square_free() {
        let f = p(&[-1, 1]); // z − 1
        let g = p(&[2, 1]); // z + 2
        let h = p(&[7, 1, 1]); // z² + z + 7 (irreducible)
        let prod = f.pow(3).mul(&g.pow(2)).mul(&h);
        let sf = square_free_part(&prod);
        assert_eq!(sf, f.mul(&g).mul(&h).primitive_part());
        let dec = square_free_decomposition(&prod);
        assert_eq!(dec.len(), 3);
        assert!(dec.contains(&(h.clone(), 1)));
        assert!(dec.contains(&(g.clone(), 2)));
        assert!(dec.contains(&(f.clone(), 3)));
        assert_eq!(poly_gcd(&f.mul(&g), &f.mul(&h)), f);
    }

    #[test]
    fn cyclotomic_known_values() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(30), p(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        // Degree is φ(n); product over divisors rebuilds z^n − 1.
        for n in 1..=30u64 {
            assert_eq!(cyclotomic(n).deg() as u64, euler_phi(n));
        }
        let mut prod = IntPoly::one();
        for d in divisors(24) {
            prod = prod.mul(&cyclotomic(d));
        }
        assert_eq!(prod, IntPoly::z_pow_minus_one(24));
    }

    #[test]
    fn moebius_and_phi() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(30), 8);
        // Value formula matches polynomial evaluation.
        for n in 1..=24u64 {
            let direct = cyclotomic(n).eval_int(&BigInt::from(2));
            assert_eq!(cyclotomic_value_at(n, &BigInt::from(2)), Some(direct));
        }
    }

    #[test]
    fn chebyshev_plain() {
        // x ↦ z² + 1 (degree 1 example).
        assert_eq!(
            chebyshev_substitute(&p(&[0, 1]), SubstMode::Plain).unwrap(),
            p(&[1, 0, 1])
        );
        // x² − 4 ↦ z⁴ − 2z² + 1 = (z²−1)².
        assert_eq!(
            chebyshev_substitute(&p(&[-4, 0, 1]), SubstMode::Plain).unwrap(),
            p(&[1, 0, -2, 0, 1])
        );
        // Multiplicativity: subst(ab) = subst(a)·subst(b).
        let a = p(&[-1, 2, 1]);
        let b = p(&[3, 0, 0, 1]);
        let lhs = chebyshev_substitute(&a.mul(&b), SubstMode::Plain).unwrap();
        let rhs = chebyshev_substitute(&a, SubstMode::Plain)
            .unwrap()
            .mul(&chebyshev_substitute(&b, SubstMode::Plain).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chebyshev_halved() {
        // x ↦ z + 1.
        assert_eq!(
            chebyshev_substitute(&p(&[0, 1]), SubstMode::Halved).unwrap(),
            p(&[1, 1])
        );
        // x² − d ↦ z² + (2−d)z + 1.
        for d in 0..6 {
            assert_eq!(
                chebyshev_substitute(&p(&[-d, 0, 1]), SubstMode::Halved).unwrap(),
                p(&[1, 2 - d, 1])
            );
        }
        // Mixed parity rejected.
        assert_eq!(
            chebyshev_substitute(&p(&[1, 1]), SubstMode::Halved),
            Err(PolyError::HalvedParityError)
        );
        // Odd pure-parity input allowed: x³ − 2x ↦ z³ + z² + z + 1 ... compute:
        // z^{3/2}((√z+1/√z)³ − 2(√z+1/√z)) = (z+1)³ − 2z(z+1) = z³+z²+z+1.
        assert_eq!(
            chebyshev_substitute(&p(&[0, -2, 0, 1]), SubstMode::Halved).unwrap(),
            p(&[1, 1, 1, 1])
        );
    }

    #[test]
    fn strip_factors_roundtrip() {
        // p = 3 · z² · Φ₁² · Φ₁₂ · (z² − z − 1)
        let core = p(&[-1, -1, 1]).scale(&BigInt::from(3));
        let full = core
            .mul_z_pow(2)
            .mul(&cyclotomic(1).pow(2))
            .mul(&cyclotomic(12));
        let s = strip_trivial_factors(&full);
        assert_eq!(s.z_power, 2);
        assert_eq!(s.cyclotomic_factors, vec![(1, 2), (12, 1)]);
        assert_eq!(s.core, core);
        assert_eq!(reassemble_stripped(&s), full);
        // A pure cyclotomic product strips to a constant.
        let c = cyclotomic(5).mul(&cyclotomic(8));
        let s2 = strip_trivial_factors(&c);
        assert!(s2.core.is_constant());
        assert_eq!(s2.cyclotomic_factors, vec![(5, 1), (8, 1)]);
    }

    #[test]
    fn reciprocal_predicate() {
        assert!(is_reciprocal(&p(&[1, 2, 1])));
        assert!(is_reciprocal(&p(&[1, -3, 1])));
        assert!(!is_reciprocal(&p(&[1, 2, 3])));
        assert!(is_reciprocal(&p(&[5])));
        assert!(is_reciprocal(&IntPoly::zero()));
        // Lehmer's degree-10 polynomial is reciprocal.
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(is_reciprocal(&lehmer));
        assert!(!is_reciprocal(&p(&[-1, 0, 1, 1]))); // z³+z²−1
    }

    #[test]
    fn reversal_and_valuation() {
        let q = p(&[0, 0, -1, 2]); // 2z³ − z²
        assert_eq!(q.z_valuation(), 2);
        assert_eq!(q.shift_down(2), p(&[-1, 2]));
        assert_eq!(p(&[-1, 0, 1, 1]).reverse(3), p(&[1, 1, 0, -1]));
        assert_eq!(p(&[1, 2]).reverse(3), p(&[0, 0, 2, 1]));
    }

    #[test]
    fn text_and_json_roundtrip() {
        let q = p(&[1, 0, -1, 0, 1]);
        assert_eq!(q.to_string(), "1 0 -1 0 1");
        assert_eq!(IntPoly::parse_text("1 0 -1 0 1").unwrap(), q);
        assert!(IntPoly::parse_text("1 x").is_err());
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, r#"{"coeffs":[1,0,-1,0,1]}"#);
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, q);
        // Huge coefficients survive the JSON round-trip bit-exactly.
        let big = IntPoly::new(vec![
            BigInt::from_str("123456789012345678901234567890123456789").unwrap(),
            BigInt::one(),
        ]);
        let js2 = serde_json::to_string(&big).unwrap();
        let back2: IntPoly = serde_json::from_str(&js2).unwrap();
        assert_eq!(back2, big);
        let from_strings: IntPoly =
            serde_json::from_str(r#"{"coeffs":["3","-4"]}"#).unwrap();
        assert_eq!(from_strings, p(&[3, -4]));
    }

    #[test]
    fn pretty_printing() {
        assert_eq!(p(&[1, 0, -1, 0, 1]).to_pretty(), "z^4 - z^2 + 1");
        assert_eq!(p(&[-2, 3]).to_pretty(), "3*z - 2");
        assert_eq!(IntPoly::zero().to_pretty(), "0");
    }

    #[test]
    fn inverse_chebyshev_round_trip() {
        // Lehmer's polynomial → trace polynomial → back.
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let t = inverse_chebyshev(&lehmer).unwrap();
        assert_eq!(t.deg(), 5);
        assert_eq!(chebyshev_substitute(&t, SubstMode::Plain).unwrap(), lehmer);
        // Generic reciprocal built from a seed trace polynomial.
        let seed = p(&[3, -1, 4, 1, 5]);
        let rec = chebyshev_substitute(&seed, SubstMode::Plain).unwrap();
        assert!(is_reciprocal(&rec));
        assert_eq!(inverse_chebyshev(&rec).unwrap(), seed);
        // Refused inputs: odd degree, non-reciprocal.
        assert!(inverse_chebyshev(&p(&[1, 2, 3])).is_none());
        assert!(inverse_chebyshev(&p(&[1, 1])).is_none());
    }
}

//! Reciprocal polynomials of graphs, the Salem-graph decision procedure,
//! the triviality test, and extraction of the associated reciprocal
//! algebraic number τ.
//!
//! A connected graph qualifies when it is nonbipartite with exactly one
//! adjacency eigenvalue λ > 2 and none below −2, or bipartite with exactly
//! one eigenvalue λ > 2 and only −λ below −2.  The graph is *trivial* when
//! λ ∈ ℤ (nonbipartite) or λ² ∈ ℤ (bipartite); then τ is only a reciprocal
//! quadratic Pisot number.  Otherwise the stripped core of the reciprocal
//! polynomial is the minimal polynomial of a genuine Salem number.
//!
//! Disconnected graphs are classified per component: the union qualifies
//! iff exactly one component qualifies and all others are cyclotomic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;
use thiserror::Error;

use crate::graph::{char_poly, tree_count_eigs_above, Graph};
use crate::poly::{
    chebyshev_substitute, inverse_chebyshev, is_reciprocal, square_free_decomposition,
    strip_trivial_factors, IntPoly, SubstMode,
};
use crate::realalg::RealAlgebraic;
use crate::sturm::{sturm_count, Bound};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SalemError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("graph does not have Salem type")]
    NotSalemError,
    #[error("component {0} is not cyclotomic")]
    NotCyclotomicComponent(usize),
    #[error("attachment vertices of component {component} do not lie in one color class")]
    ColorClassViolation { component: usize },
    #[error("invalid base graph: {0}")]
    InvalidBaseGraph(String),
}

/// Classification outcome.  `SalemNontrivial` carries τ (as a refinable real
/// algebraic number), its minimal polynomial, and the full reciprocal
/// polynomial of the graph.
#[derive(Debug, Clone)]
pub enum SalemClassification {
    Cyclotomic,
    SalemTrivial {
        tau: RealAlgebraic,
        quadratic: IntPoly,
    },
    SalemNontrivial {
        tau: RealAlgebraic,
        minpoly: IntPoly,
        reciprocal: IntPoly,
    },
    NotSalem {
        eigs_above_2: usize,
        eigs_below_minus_2: usize,
        bipartite: bool,
    },
}

impl SalemClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            SalemClassification::Cyclotomic => "Cyclotomic",
            SalemClassification::SalemTrivial { .. } => "SalemTrivial",
            SalemClassification::SalemNontrivial { .. } => "SalemNontrivial",
            SalemClassification::NotSalem { .. } => "NotSalem",
        }
    }

    pub fn is_salem(&self) -> bool {
        matches!(
            self,
            SalemClassification::SalemTrivial { .. } | SalemClassification::SalemNontrivial { .. }
        )
    }

    /// JSON rendering:
    /// `{"tag":…, "lambda_interval":[a,b], "tau":{"minpoly":[…],"approx":…}, "counts":{…}}`.
    pub fn to_json(&self, g: &Graph, sig: usize) -> serde_json::Value {
        let (above, below) = outside_counts_graph(g);
        let (bip, _) = g.is_bipartite();
        let counts = json!({
            "eigs_above_2": above,
            "eigs_below_minus_2": below,
            "bipartite": bip,
        });
        let mut obj = json!({ "tag": self.tag(), "counts": counts });
        let map = obj.as_object_mut().unwrap();
        if above == 1 {
            let chi = char_poly(g);
            let mut lambda = if g.is_forest() && g.n() > BIG_TREE_VERTICES {
                let (lo, hi) = forest_lambda_bracket(g);
                RealAlgebraic::from_sign_change_bracket(chi.clone(), lo, hi)
                    .unwrap_or_else(|_| {
                        RealAlgebraic::largest_root(&chi).expect("spectrum nonempty")
                    })
            } else {
                RealAlgebraic::largest_root(&chi).expect("spectrum nonempty")
            };
            lambda.refine_to(&decimal_width(sig + 2));
            let (lo, hi) = lambda.interval();
            map.insert(
                "lambda_interval".into(),
                json!([
                    crate::realalg::format_rational_sig(lo, sig),
                    crate::realalg::format_rational_sig(hi, sig)
                ]),
            );
        }
        match self {
            SalemClassification::SalemTrivial { tau, quadratic } => {
                map.insert(
                    "tau".into(),
                    json!({
                        "minpoly": poly_coeffs_json(quadratic),
                        "approx": tau.to_decimal(sig),
                    }),
                );
            }
            SalemClassification::SalemNontrivial { tau, minpoly, .. } => {
                map.insert(
                    "tau".into(),
                    json!({
                        "minpoly": poly_coeffs_json(minpoly),
                        "approx": tau.to_decimal(sig),
                    }),
                );
            }
            _ => {}
        }
        obj
    }
}

fn poly_coeffs_json(p: &IntPoly) -> serde_json::Value {
    serde_json::Value::Array(
        (0..=p.deg())
            .map(|k| serde_json::Value::String(p.coeff(k).to_string()))
            .collect(),
    )
}

fn decimal_width(sig: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(sig as u32))
}

// ---------------------------------------------------------------------------
// Reciprocal polynomial
// ---------------------------------------------------------------------------

/// Reciprocal polynomial of one connected graph in the stated mode.
pub fn reciprocal_poly_mode(chi: &IntPoly, mode: SubstMode) -> Result<IntPoly, crate::poly::PolyError> {
    chebyshev_substitute(chi, mode)
}

/// The reciprocal polynomial of a graph: `z^n·χ(z + 1/z)` for nonbipartite
/// graphs, `z^{n/2}·χ(√z + 1/√z)` for bipartite ones (where the parity of χ
/// makes the substitution polynomial).  Disconnected graphs multiply the
/// reciprocal polynomials of their components, each in its own natural mode.
pub fn reciprocal_poly(g: &Graph) -> IntPoly {
    assert!(g.n() >= 1, "reciprocal polynomial of the empty graph");
    let mut out = IntPoly::one();
    for comp in g.components() {
        let sub = induced(g, &comp);
        let chi = char_poly(&sub);
        let (bip, _) = sub.is_bipartite();
        let mode = if bip { SubstMode::Halved } else { SubstMode::Plain };
        let r = chebyshev_substitute(&chi, mode)
            .expect("bipartite characteristic polynomials have pure parity");
        out = out.mul(&r);
    }
    out
}

pub(crate) fn induced(g: &Graph, vertices: &[usize]) -> Graph {
    let mut index = vec![usize::MAX; g.n()];
    for (k, &v) in vertices.iter().enumerate() {
        index[v] = k;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|(i, j)| index[*i] != usize::MAX && index[*j] != usize::MAX)
        .map(|&(i, j)| (index[i], index[j]))
        .collect();
    Graph::new(vertices.len(), edges).expect("induced subgraph is valid")
}

// ---------------------------------------------------------------------------
// Spectral counts
// ---------------------------------------------------------------------------

/// Multiplicity of `k` as a root of `p`.
fn root_multiplicity_at_int(p: &IntPoly, k: i64) -> usize {
    let linear = IntPoly::from_i64(&[-k, 1]);
    let mut m = 0;
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (q, r) = cur.divrem_monic(&linear);
        if !r.is_zero() {
            break;
        }
        m += 1;
        cur = q;
    }
    m
}

/// (eigenvalues > 2, eigenvalues strictly < −2), both with multiplicity.
fn outside_counts(chi: &IntPoly) -> (usize, usize) {
    let mut above = 0usize;
    let mut below_le = 0usize;
    for (f, m) in square_free_decomposition(chi) {
        above += m * sturm_count(&f, &Bound::integer(2), &Bound::PosInf);
        below_le += m * sturm_count(&f, &Bound::NegInf, &Bound::integer(-2));
    }
    let at_minus2 = root_multiplicity_at_int(chi, -2);
    (above, below_le - at_minus2)
}

/// Same counts straight from a graph, taking the O(n) diagonal-congruence
/// shortcut on forests (whose symmetric spectra force the two counts equal)
/// instead of Sturm chains on the characteristic polynomial.
pub(crate) fn outside_counts_graph(g: &Graph) -> (usize, usize) {
    if g.is_forest() {
        let above = tree_count_eigs_above(g, &BigRational::from_integer(BigInt::from(2)));
        (above, above)
    } else {
        outside_counts(&char_poly(g))
    }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

/// Above this vertex count, connected trees take the congruence-and-bracket
/// route in [`classify_big_tree`]; Sturm chains on characteristic polynomials
/// of that size would dominate the runtime.
const BIG_TREE_VERTICES: usize = 60;

/// Classifies one connected graph (callers: see [`classify`]).
fn classify_connected(g: &Graph) -> SalemClassification {
    if g.is_forest() && g.n() > BIG_TREE_VERTICES {
        return classify_big_tree(g);
    }
    let chi = char_poly(g);
    let (bip, _) = g.is_bipartite();
    if bip {
        // Bipartite spectra are symmetric: χ(−x) = ±χ(x).
        let neg = chi.subst_neg_z();
        debug_assert!(neg == chi || neg == chi.neg());
    }
    let (above, below) = outside_counts(&chi);
    let salem_shape = if bip {
        above == 1 && below == 1
    } else {
        above == 1 && below == 0
    };
    if above == 0 && below == 0 {
        return SalemClassification::Cyclotomic;
    }
    if !salem_shape {
        return SalemClassification::NotSalem {
            eigs_above_2: above,
            eigs_below_minus_2: below,
            bipartite: bip,
        };
    }
    // λ > 2 exists and is unique; check triviality by integer scanning.
    if let Some(k) = trivial_parameter(&chi, bip, g.max_degree()) {
        // Nonbipartite: τ + 1/τ = λ = k.  Bipartite: τ + 1/τ = λ² − 2 = k − 2.
        let trace = if bip { k - 2 } else { k };
        let quadratic = IntPoly::from_i64(&[1, -trace, 1]);
        let tau = RealAlgebraic::largest_root(&quadratic).expect("real quadratic");
        return SalemClassification::SalemTrivial { tau, quadratic };
    }
    let reciprocal = reciprocal_poly(g);
    let stripped = strip_trivial_factors(&reciprocal);
    let minpoly = stripped.core;
    debug_assert!(is_reciprocal(&minpoly));
    debug_assert!(minpoly.deg() % 2 == 0);
    debug_assert_eq!(
        sturm_count(&minpoly, &Bound::integer(1), &Bound::PosInf),
        1
    );
    let tau = RealAlgebraic::unique_root_above(&minpoly, &BigRational::one())
        .expect("stripped core has one root above 1");
    SalemClassification::SalemNontrivial {
        tau,
        minpoly,
        reciprocal,
    }
}

/// Classification of a connected tree too large for polynomial root counting.
///
/// Eigenvalue counts come from the O(n) diagonal congruence; λ is bracketed
/// by bisection on that count and transported to a τ bracket through
/// τ + 1/τ = λ² − 2 with outward rational rounding.  The stripped core is
/// taken on trust as square-free with a single root > 1 — guaranteed here
/// because the tree has exactly one eigenvalue beyond 2 and every monic
/// integer factor with all roots in the closed unit disk is cyclotomic,
/// hence stripped.
fn classify_big_tree(g: &Graph) -> SalemClassification {
    debug_assert!(g.is_forest() && g.is_connected());
    let two = BigRational::from_integer(BigInt::from(2));
    let above = tree_count_eigs_above(g, &two);
    // Trees are bipartite: the spectrum is symmetric about 0.
    let below = above;
    if above == 0 {
        return SalemClassification::Cyclotomic;
    }
    if above != 1 {
        return SalemClassification::NotSalem {
            eigs_above_2: above,
            eigs_below_minus_2: below,
            bipartite: true,
        };
    }
    let chi = char_poly(g);
    if let Some(k) = trivial_parameter(&chi, true, g.max_degree()) {
        let quadratic = IntPoly::from_i64(&[1, -(k - 2), 1]);
        let tau = RealAlgebraic::largest_root(&quadratic).expect("real quadratic");
        return SalemClassification::SalemTrivial { tau, quadratic };
    }
    let reciprocal = chebyshev_substitute(&chi, SubstMode::Halved)
        .expect("bipartite characteristic polynomials have pure parity");
    let minpoly = strip_trivial_factors(&reciprocal).core;
    debug_assert!(is_reciprocal(&minpoly));
    debug_assert!(minpoly.deg() % 2 == 0);
    let (l_lo, l_hi) = forest_lambda_bracket(g);
    let (t_lo, t_hi) = tau_bracket_from_lambda(&l_lo, &l_hi);
    let tau = RealAlgebraic::from_sign_change_bracket(minpoly.clone(), t_lo, t_hi)
        .unwrap_or_else(|_| {
            // Degenerate bracket (an endpoint is a root of the core): fall
            // back to the Sturm-validated constructor.
            RealAlgebraic::unique_root_above(&minpoly, &BigRational::one())
                .expect("stripped core has one root above 1")
        });
    SalemClassification::SalemNontrivial {
        tau,
        minpoly,
        reciprocal,
    }
}

/// Certified rational bracket `(lo, hi]` around the unique eigenvalue λ > 2
/// of a forest: float-guided bisection of the diagonal-congruence count,
/// then exact recounts at the chosen endpoints (widening on any float lie).
fn forest_lambda_bracket(g: &Graph) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let delta = BigRational::from_integer(BigInt::from(g.max_degree() as i64));
    // Float pass.
    let mut flo = 2.0f64;
    let mut fhi = g.max_degree() as f64;
    for _ in 0..70 {
        let mid = 0.5 * (flo + fhi);
        if mid <= flo || mid >= fhi {
            break;
        }
        if float_count_above(g, mid) >= 1 {
            flo = mid;
        } else {
            fhi = mid;
        }
    }
    // Exact certification with a widening margin.
    let mut margin = 1e-11f64;
    loop {
        let lo = BigRational::from_float((flo - margin).max(2.0))
            .unwrap_or_else(|| two.clone())
            .max(two.clone());
        let hi = BigRational::from_float(fhi + margin)
            .unwrap_or_else(|| delta.clone())
            .min(delta.clone());
        if lo < hi
            && tree_count_eigs_above(g, &lo) == 1
            && tree_count_eigs_above(g, &hi) == 0
        {
            return (lo, hi);
        }
        margin *= 64.0;
        if margin > 2.0 * g.max_degree() as f64 {
            // Unreachable in practice: (2, Δ] always certifies.
            return (two, delta);
        }
    }
}

/// Floating-point version of the diagonal-congruence count (guidance only;
/// every answer that matters is recertified exactly).
fn float_count_above(g: &Graph, t: f64) -> usize {
    let adj = g.adj();
    let mut visited = vec![false; g.n()];
    let mut parents = vec![usize::MAX; g.n()];
    let mut d = vec![0.0f64; g.n()];
    let mut positives = 0usize;
    for root in 0..g.n() {
        if visited[root] {
            continue;
        }
        let mut order = vec![root];
        visited[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parents[w] = v;
                    order.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            let mut val = -t;
            for &w in &adj[v] {
                if parents[w] == v {
                    val -= 1.0 / d[w];
                }
            }
            d[v] = val;
        }
        positives += order.iter().filter(|&&v| d[v] > 0.0).count();
    }
    positives
}

/// Maps a λ bracket to an outward-rounded τ bracket via τ + 1/τ = λ² − 2,
/// i.e. τ = (c + √(c² − 4))/2 with c = λ² − 2, increasing in λ on λ ≥ 2.
/// The lower endpoint is clamped to 1 (τ > 1 and the core never vanishes
/// at 1, so the clamp preserves the strict sign change).
fn tau_bracket_from_lambda(l_lo: &BigRational, l_hi: &BigRational) -> (BigRational, BigRational) {
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(9));
    let c_lo = l_lo * l_lo - &two;
    let c_hi = l_hi * l_hi - &two;
    let disc_lo = &c_lo * &c_lo - &four;
    let disc_hi = &c_hi * &c_hi - &four;
    let s_lo = if disc_lo.is_positive() {
        sqrt_bounds(&disc_lo, &eps).0
    } else {
        BigRational::zero()
    };
    let s_hi = sqrt_bounds(&disc_hi, &eps).1;
    let one = BigRational::one();
    let t_lo = ((&c_lo + &s_lo) / &two).max(one);
    let t_hi = (&c_hi + &s_hi) / &two;
    (t_lo, t_hi)
}

/// Rational `(lo, hi)` with `lo² ≤ x ≤ hi²` and `hi − lo ≤ eps` (`x ≥ 0`),
/// seeded from the float square root and finished by bisection.
pub(crate) fn sqrt_bounds(x: &BigRational, eps: &BigRational) -> (BigRational, BigRational) {
    debug_assert!(!x.is_negative());
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let fx = x.to_f64().unwrap_or(f64::MAX).sqrt();
    let mut lo = BigRational::from_float((fx * 0.999_999).max(0.0)).unwrap_or_else(BigRational::zero);
    if &(&lo * &lo) > x {
        lo = BigRational::zero();
    }
    let mut hi = BigRational::from_float(fx * 1.000_001).unwrap_or_else(|| x.clone() + BigRational::one());
    while &(&hi * &hi) < x {
        hi = &hi * &two;
    }
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// If the unique eigenvalue λ > 2 is an integer (nonbipartite) or has an
/// integer square (bipartite), returns λ resp. λ²; otherwise `None`.
fn trivial_parameter(chi: &IntPoly, bipartite: bool, max_degree: usize) -> Option<i64> {
    if bipartite {
        // χ(x) = x^e·ψ(x²); test integer roots of ψ in (4, Δ²].
        let shifted = chi.shift_down(chi.z_valuation());
        // ψ(y) has ψ(x²) = shifted(x) — read off even coefficients.
        let mut psi_coeffs = Vec::new();
        for k in (0..=shifted.deg()).step_by(2) {
            psi_coeffs.push(shifted.coeff(k));
        }
        let psi = IntPoly::new(psi_coeffs);
        let top = (max_degree * max_degree) as i64;
        (5..=top).find(|&m| psi.eval_int(&BigInt::from(m)).is_zero())
    } else {
        let top = max_degree as i64;
        (3..=top).find(|&k| chi.eval_int(&BigInt::from(k)).is_zero())
    }
}

/// Full classification.  Connected graphs follow the eigenvalue-count
/// definition directly; disconnected graphs qualify iff exactly one
/// component qualifies and every other component is cyclotomic.
pub fn classify(g: &Graph) -> SalemClassification {
    assert!(g.n() >= 1, "classification of the empty graph");
    let comps = g.components();
    if comps.len() == 1 {
        return classify_connected(g);
    }
    let mut salem: Vec<SalemClassification> = Vec::new();
    let mut all_rest_cyclotomic = true;
    for comp in &comps {
        let sub = induced(g, comp);
        let c = classify_connected(&sub);
        match c {
            SalemClassification::Cyclotomic => {}
            SalemClassification::SalemTrivial { .. }
            | SalemClassification::SalemNontrivial { .. } => salem.push(c),
            SalemClassification::NotSalem { .. } => all_rest_cyclotomic = false,
        }
    }
    if salem.len() == 1 && all_rest_cyclotomic {
        return salem.pop().unwrap();
    }
    let chi = char_poly(g);
    let (above, below) = outside_counts(&chi);
    SalemClassification::NotSalem {
        eigs_above_2: above,
        eigs_below_minus_2: below,
        bipartite: g.is_bipartite().0,
    }
}

/// Whether the unique eigenvalue λ > 2 is integral (nonbipartite) or has an
/// integral square (bipartite).
pub fn is_trivial(g: &Graph) -> Result<bool, SalemError> {
    match classify(g) {
        SalemClassification::SalemTrivial { .. } => Ok(true),
        SalemClassification::SalemNontrivial { .. } => Ok(false),
        SalemClassification::Cyclotomic => Err(SalemError::PreconditionViolated(
            "need exactly one eigenvalue above 2, found 0".into(),
        )),
        SalemClassification::NotSalem { eigs_above_2, .. } => {
            if eigs_above_2 == 1 {
                // One eigenvalue above 2 but not of Salem type: fall back to
                // the raw integer test on the dominant eigenvalue.
                Ok(trivial_parameter(&char_poly(g), g.is_bipartite().0, g.max_degree()).is_some())
            } else {
                Err(SalemError::PreconditionViolated(format!(
                    "need exactly one eigenvalue above 2, found {eigs_above_2}"
                )))
            }
        }
    }
}

/// τ of a qualifying graph, refined so that the enclosing interval is
/// narrower than `precision`.
pub fn tau(g: &Graph, precision: &BigRational) -> Result<RealAlgebraic, SalemError> {
    let mut t = match classify(g) {
        SalemClassification::SalemTrivial { tau, .. } => tau,
        SalemClassification::SalemNontrivial { tau, .. } => tau,
        _ => return Err(SalemError::NotSalemError),
    };
    t.refine_to(precision);
    Ok(t)
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Joins a new vertex to chosen vertices of a cyclotomic bipartite forest of
/// graphs, one attachment set per component; within each component the
/// attachment vertices must lie in a single color class.  Returns the grown
/// graph (the new vertex has the highest index); classification of the
/// result is the caller's business.
pub fn construct_bipartite_salem(
    forest: &[Graph],
    attachments: &[Vec<usize>],
) -> Result<Graph, SalemError> {
    if forest.len() != attachments.len() {
        return Err(SalemError::PreconditionViolated(format!(
            "{} components but {} attachment sets",
            forest.len(),
            attachments.len()
        )));
    }
    let mut union = Graph::empty(0);
    let mut all_attach = Vec::new();
    for (idx, (comp, attach)) in forest.iter().zip(attachments).enumerate() {
        let chi = char_poly(comp);
        let (above, below) = outside_counts(&chi);
        if above != 0 || below != 0 {
            return Err(SalemError::NotCyclotomicComponent(idx));
        }
        let (bip, coloring) = comp.is_bipartite();
        if !bip {
            return Err(SalemError::ColorClassViolation { component: idx });
        }
        for &v in attach {
            if v >= comp.n() {
                return Err(SalemError::PreconditionViolated(format!(
                    "attachment vertex {v} outside component {idx}"
                )));
            }
        }
        if let Some(&first) = attach.first() {
            if attach.iter().any(|&v| coloring[v] != coloring[first]) {
                return Err(SalemError::ColorClassViolation { component: idx });
            }
        }
        let offset = union.n();
        all_attach.extend(attach.iter().map(|&v| v + offset));
        union = union.disjoint_union(comp);
    }
    let new_vertex = union.n();
    let mut edges: Vec<(usize, usize)> = union.edges().to_vec();
    for v in all_attach {
        edges.push((v, new_vertex));
    }
    Graph::new(new_vertex + 1, edges).map_err(|e| SalemError::PreconditionViolated(e.to_string()))
}

/// Line-graph construction: `h` must be one or two disjoint paths/cycles
/// plus one extra edge between distinct nonadjacent vertices.  Returns the
/// line graph of `h`, whose least eigenvalue is then ≥ −2.
pub fn construct_line_salem(h: &Graph) -> Result<Graph, SalemError> {
    let ok = h.edges().iter().any(|&e| {
        let mut edges: Vec<(usize, usize)> =
            h.edges().iter().copied().filter(|&x| x != e).collect();
        edges.sort_unstable();
        let base = Graph::new(h.n(), edges).expect("subset of valid edges");
        is_paths_and_cycles(&base, 2)
    });
    if !ok {
        return Err(SalemError::InvalidBaseGraph(
            "no edge removal leaves at most two disjoint paths/cycles".into(),
        ));
    }
    Ok(crate::graph::line_graph(h))
}

/// Certifies that `p` has the root pattern of a Salem number's minimal
/// polynomial — reciprocal of even degree ≥ 4, exactly one simple root
/// τ > 1, no root in (−∞, −1), every nonreal root on the unit circle — and
/// returns τ.  Exact: `p` is transported to its trace polynomial `t` with
/// `p = z^m·t(z + 1/z)`, where the conditions become "all roots of `t` real,
/// exactly one > 2, none < −2", each decidable by Sturm counts.
///
/// (Irreducibility is not checked; for the polynomials this crate feeds in —
/// stripped cores of reciprocal polynomials of graphs — the certified root
/// pattern forces irreducibility, since any proper monic factor free of
/// roots outside the closed unit disk would be cyclotomic.)
pub fn certify_salem_poly(p: &IntPoly) -> Result<RealAlgebraic, SalemError> {
    if p.is_zero() || p.deg() < 4 || p.deg() % 2 != 0 || !is_reciprocal(p) {
        return Err(SalemError::PreconditionViolated(
            "need a reciprocal polynomial of even degree at least 4".into(),
        ));
    }
    let t = inverse_chebyshev(p).expect("reciprocal of even degree");
    let mut real = 0usize;
    let mut above = 0usize;
    let mut below_le = 0usize;
    for (f, m) in square_free_decomposition(&t) {
        real += m * sturm_count(&f, &Bound::NegInf, &Bound::PosInf);
        above += m * sturm_count(&f, &Bound::integer(2), &Bound::PosInf);
        below_le += m * sturm_count(&f, &Bound::NegInf, &Bound::integer(-2));
    }
    // A root of t at exactly −2 is the circle point z = −1 and is permitted.
    let strictly_below = below_le - root_multiplicity_at_int(&t, -2);
    if real != t.deg() || above != 1 || strictly_below != 0 {
        return Err(SalemError::NotSalemError);
    }
    Ok(RealAlgebraic::unique_root_above(p, &BigRational::one())
        .expect("certified pattern has one root above 1"))
}

/// True iff every component is a path or a cycle and there are at most
/// `max_components` components containing at least one edge.
fn is_paths_and_cycles(g: &Graph, max_components: usize) -> bool {
    if g.degree_sequence().iter().any(|&d| d > 2) {
        return false;
    }
    // All degrees ≤ 2 ⇒ each component is a path or a cycle.
    let nontrivial = g
        .components()
        .iter()
        .filter(|c| c.len() >= 2)
        .count();
    nontrivial <= max_components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, count_eigs_poly, FamilySpec};
    use crate::measure::mahler_measure;
    use num_bigint::BigInt;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    fn lehmer() -> IntPoly {
        p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn reciprocal_closed_forms() {
        // Paths: 1 + z + … + z^k.
        for k in [2usize, 3, 5] {
            let g = build(FamilySpec::Path(k)).unwrap();
            let expect = IntPoly::new((0..=k).map(|_| BigInt::one()).collect());
            assert_eq!(reciprocal_poly(&g), expect, "Path({k})");
        }
        // Even cycles: (z^m − 1)².
        assert_eq!(
            reciprocal_poly(&build(FamilySpec::Cycle(4)).unwrap()),
            p(&[1, 0, -2, 0, 1])
        );
        assert_eq!(
            reciprocal_poly(&build(FamilySpec::Cycle(6)).unwrap()),
            p(&[1, 0, 0, -2, 0, 0, 1])
        );
        // Triangle (nonbipartite, plain substitution): (z³ − 1)².
        assert_eq!(
            reciprocal_poly(&build(FamilySpec::Cycle(3)).unwrap()),
            p(&[1, 0, 0, -2, 0, 0, 1])
        );
        // Fork tree on 4 vertices: (z + 1)(z³ + 1).
        assert_eq!(
            reciprocal_poly(&build(FamilySpec::Dn(4)).unwrap()),
            p(&[1, 1, 0, 1, 1])
        );
        // Every output is reciprocal.
        for spec in [
            FamilySpec::T(2, 3, 4),
            FamilySpec::Cycle(5),
            FamilySpec::E8,
            FamilySpec::Q(2, 3, 2),
        ] {
            let r = reciprocal_poly(&build(spec).unwrap());
            assert!(is_reciprocal(&r), "{spec}");
        }
    }

    #[test]
    fn classify_cyclotomic_families() {
        for spec in [
            FamilySpec::E6,
            FamilySpec::E7,
            FamilySpec::E8,
            FamilySpec::TildeE6,
            FamilySpec::TildeE7,
            FamilySpec::TildeE8,
            FamilySpec::TildeDn(9),
            FamilySpec::TildeAn(5),
            FamilySpec::TildeAn(6),
            FamilySpec::Path(7),
            FamilySpec::Dn(11),
        ] {
            let g = build(spec).unwrap();
            assert_eq!(classify(&g).tag(), "Cyclotomic", "{spec}");
        }
    }

    #[test]
    fn classify_lehmer_tree() {
        let g = build(FamilySpec::T(1, 2, 6)).unwrap();
        match classify(&g) {
            SalemClassification::SalemNontrivial {
                tau,
                minpoly,
                reciprocal,
            } => {
                assert_eq!(minpoly, lehmer());
                assert_eq!(tau.to_decimal(12), "1.17628081826");
                assert!(is_reciprocal(&reciprocal));
                // R_G = minpoly × cyclotomic debris; the measure agrees.
                let m = mahler_measure(&reciprocal, &BigRational::new(BigInt::one(), BigInt::from(1_000_000_000i64))).unwrap();
                let (lo, hi) = (m.lo.clone(), m.hi.clone());
                let tau_lo = BigRational::new(BigInt::from(117628081825u64), BigInt::from(100_000_000_000u64));
                let tau_hi = BigRational::new(BigInt::from(117628081826u64), BigInt::from(100_000_000_000u64));
                assert!(lo <= tau_hi && hi >= tau_lo);
            }
            other => panic!("expected SalemNontrivial, got {}", other.tag()),
        }
    }

    #[test]
    fn classify_trivial_star() {
        let g = build(FamilySpec::Star(5)).unwrap();
        match classify(&g) {
            SalemClassification::SalemTrivial { tau, quadratic } => {
                assert_eq!(quadratic, p(&[1, -3, 1]));
                assert_eq!(tau.to_decimal(12), "2.61803398875");
            }
            other => panic!("expected SalemTrivial, got {}", other.tag()),
        }
        assert!(is_trivial(&g).unwrap());
    }

    #[test]
    fn classify_two_above() {
        let g = build(FamilySpec::Q(3, 13, 3)).unwrap();
        match classify(&g) {
            SalemClassification::NotSalem {
                eigs_above_2,
                eigs_below_minus_2,
                bipartite,
            } => {
                assert_eq!(eigs_above_2, 2);
                assert_eq!(eigs_below_minus_2, 2);
                assert!(bipartite);
            }
            other => panic!("expected NotSalem, got {}", other.tag()),
        }
    }

    #[test]
    fn triviality_cases() {
        // Complete graph on 4 vertices: integer spectrum, λ = 3.
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_trivial(&k4).unwrap());
        assert!(!is_trivial(&build(FamilySpec::T(1, 2, 6)).unwrap()).unwrap());
        assert!(matches!(
            is_trivial(&build(FamilySpec::TildeE8).unwrap()),
            Err(SalemError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn tau_access() {
        let eps = BigRational::new(BigInt::one(), BigInt::from(100_000_000u64));
        let g = build(FamilySpec::T(1, 2, 6)).unwrap();
        let t = tau(&g, &eps).unwrap();
        let (lo, hi) = t.interval();
        assert!(hi - lo < eps);
        assert!(matches!(
            tau(&build(FamilySpec::Path(4)).unwrap(), &eps),
            Err(SalemError::NotSalemError)
        ));
    }

    #[test]
    fn disconnected_extension() {
        let lehmer_tree = build(FamilySpec::T(1, 2, 6)).unwrap();
        let e8 = build(FamilySpec::E8).unwrap();
        let u = lehmer_tree.disjoint_union(&e8);
        match classify(&u) {
            SalemClassification::SalemNontrivial { minpoly, .. } => {
                assert_eq!(minpoly, lehmer())
            }
            other => panic!("union with cyclotomic part should qualify, got {}", other.tag()),
        }
        // Mixed parity union: odd cycle is cyclotomic but nonbipartite.
        let c5 = build(FamilySpec::Cycle(5)).unwrap();
        let mixed = lehmer_tree.disjoint_union(&c5);
        match classify(&mixed) {
            SalemClassification::SalemNontrivial { minpoly, .. } => {
                assert_eq!(minpoly, lehmer())
            }
            other => panic!("mixed union should qualify, got {}", other.tag()),
        }
        // Two qualifying components: rejected with summed counts.
        let double = lehmer_tree.disjoint_union(&lehmer_tree);
        match classify(&double) {
            SalemClassification::NotSalem { eigs_above_2, .. } => assert_eq!(eigs_above_2, 2),
            other => panic!("double union must not qualify, got {}", other.tag()),
        }
    }

    #[test]
    fn bipartite_salem_construction() {
        // Fork tree on 9 vertices, new vertex joined to a fork tip: the
        // Lehmer tree.
        let d9 = build(FamilySpec::Dn(9)).unwrap();
        let grown = construct_bipartite_salem(&[d9.clone()], &[vec![7]]).unwrap();
        assert_eq!(grown.n(), 10);
        assert_eq!(
            char_poly(&grown),
            char_poly(&build(FamilySpec::T(1, 2, 6)).unwrap())
        );
        match classify(&grown) {
            SalemClassification::SalemNontrivial { minpoly, .. } => {
                assert_eq!(minpoly, lehmer())
            }
            other => panic!("expected the Lehmer tree, got {}", other.tag()),
        }
        // Degenerate growth can stay cyclotomic.
        let p2 = build(FamilySpec::Path(2)).unwrap();
        let still = construct_bipartite_salem(&[p2], &[vec![0]]).unwrap();
        assert_eq!(classify(&still).tag(), "Cyclotomic");
        // Error paths.
        assert_eq!(
            construct_bipartite_salem(&[build(FamilySpec::T(1, 2, 6)).unwrap()], &[vec![0]]),
            Err(SalemError::NotCyclotomicComponent(0))
        );
        assert_eq!(
            construct_bipartite_salem(
                &[build(FamilySpec::Path(3)).unwrap()],
                &[vec![0, 1]]
            ),
            Err(SalemError::ColorClassViolation { component: 0 })
        );
        assert_eq!(
            construct_bipartite_salem(&[build(FamilySpec::Cycle(5)).unwrap()], &[vec![0]]),
            Err(SalemError::ColorClassViolation { component: 0 })
        );
    }

    #[test]
    fn multi_component_growth() {
        // Two paths joined through a new center: a star-of-paths shape.
        let p2 = build(FamilySpec::Path(2)).unwrap();
        let p3 = build(FamilySpec::Path(3)).unwrap();
        let grown = construct_bipartite_salem(&[p2, p3], &[vec![0], vec![1]]).unwrap();
        assert_eq!(grown.n(), 6);
        assert!(grown.is_forest());
        // New vertex is 5 and has degree 2.
        assert_eq!(grown.degree_sequence()[5], 2);
    }

    #[test]
    fn line_graph_construction() {
        // Path(4) plus the chord (0,2): triangle with a tail.
        let base = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let lg = construct_line_salem(&base).unwrap();
        assert_eq!(lg.n(), 4);
        // Least eigenvalue of a line graph is ≥ −2: nothing strictly below.
        let chi = char_poly(&lg);
        let le = count_eigs_poly(&chi, &Bound::NegInf, &Bound::integer(-2));
        let at = root_multiplicity_at_int(&chi, -2).min(1);
        assert_eq!(le - at, 0);
        // Two paths plus a connecting edge also validates.
        let two = Graph::new(5, vec![(0, 1), (2, 3), (3, 4), (1, 3)]).unwrap();
        assert!(construct_line_salem(&two).is_ok());
        // A star does not reduce to paths/cycles by one edge removal.
        let star = build(FamilySpec::Star(4)).unwrap();
        assert!(matches!(
            construct_line_salem(&star),
            Err(SalemError::InvalidBaseGraph(_))
        ));
    }

    #[test]
    fn json_shape() {
        let g = build(FamilySpec::T(1, 2, 6)).unwrap();
        let cls = classify(&g);
        let js = cls.to_json(&g, 12);
        assert_eq!(js["tag"], "SalemNontrivial");
        assert_eq!(js["counts"]["eigs_above_2"], 1);
        assert_eq!(js["counts"]["bipartite"], true);
        assert_eq!(js["tau"]["approx"], "1.17628081826");
        let coeffs: Vec<String> = js["tau"]["minpoly"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect();
        assert_eq!(coeffs[0], "1");
        assert_eq!(coeffs.len(), 11);
        let li = js["lambda_interval"].as_array().unwrap();
        assert!(li[0].as_str().unwrap().starts_with("2.0065936"));
    }

    #[test]
    fn big_tree_route_matches_small_route() {
        // A 44-vertex Salem tree pushed through both classification routes:
        // Sturm chains on χ versus congruence counts plus a certified bracket.
        let d43 = build(FamilySpec::Dn(43)).unwrap();
        let grown = construct_bipartite_salem(&[d43], &[vec![41]]).unwrap();
        let fast = classify_big_tree(&grown);
        let slow = classify(&grown); // below the size threshold → Sturm route
        match (fast, slow) {
            (
                SalemClassification::SalemNontrivial {
                    minpoly: a,
                    tau: ta,
                    ..
                },
                SalemClassification::SalemNontrivial {
                    minpoly: b,
                    tau: tb,
                    ..
                },
            ) => {
                assert_eq!(a, b);
                assert_eq!(ta.to_decimal(15), tb.to_decimal(15));
            }
            (f, s) => panic!("route mismatch: fast {} vs slow {}", f.tag(), s.tag()),
        }
        // Cyclotomic and trivial outcomes on the fast route.
        assert_eq!(
            classify_big_tree(&build(FamilySpec::Dn(40)).unwrap()).tag(),
            "Cyclotomic"
        );
        match classify_big_tree(&build(FamilySpec::Star(9)).unwrap()) {
            SalemClassification::SalemTrivial { quadratic, .. } => {
                assert_eq!(quadratic, p(&[1, -7, 1]))
            }
            other => panic!("expected SalemTrivial, got {}", other.tag()),
        }
    }

    #[test]
    fn salem_poly_certification() {
        let tau = certify_salem_poly(&lehmer()).unwrap();
        assert_eq!(tau.to_decimal(12), "1.17628081826");
        // Reciprocal quadratic Pisot: wrong shape (degree 2).
        assert!(matches!(
            certify_salem_poly(&p(&[1, -3, 1])),
            Err(SalemError::PreconditionViolated(_))
        ));
        // Two roots above 1: (z² − 3z + 1)².
        let sq = p(&[1, -3, 1]).mul(&p(&[1, -3, 1]));
        assert!(matches!(
            certify_salem_poly(&sq),
            Err(SalemError::NotSalemError)
        ));
        // Nonreciprocal: refused outright.
        assert!(matches!(
            certify_salem_poly(&p(&[1, 2, 3, 4, 1])),
            Err(SalemError::PreconditionViolated(_))
        ));
        // Cyclotomic: no root beyond the unit circle.
        assert!(matches!(
            certify_salem_poly(&crate::poly::cyclotomic(12)),
            Err(SalemError::NotSalemError)
        ));
    }
}

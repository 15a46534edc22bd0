//! Growing-path families and graph Pisot numbers.
//!
//! A growth specification marks sites on a base graph where paths lengthen:
//! pendant sites sprout ever-longer paths, internal sites are edges under
//! increasing subdivision.  The Salem numbers of the grown graphs converge
//! to a Pisot number θ whose minimal polynomial is the noncyclotomic core of
//! the family's *leading polynomial* — the coefficient of the dominant
//! power in the expansion of the reciprocal polynomials `R_m`.
//!
//! For one site, `P = R₁ − R₀` and `(y² − 1)·R_m = y^{2m}·P − P*` for all
//! `m` (with `y = √z` on bipartite graphs and `y = z` otherwise); for
//! several sites the leading polynomial is the iterated difference of `R`
//! over length 0/1 at each site.  Internal sites reduce to two pendant
//! sites by breaking the edge in the middle.
//!
//! Bi-colored *Pisot graphs* encode the same limits combinatorially: white
//! vertices stand for growing paths and contribute the quotient `1/z` to
//! the rooted-tree recursion.  The derived-set families parameterized by k
//! realize `(k + √(k² + 4))/2` and `k + 1` this way.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde_json::json;
use thiserror::Error;

use crate::disk::count_roots_in_disk;
use crate::graph::{attach_path, Graph};
use crate::poly::{is_reciprocal, strip_trivial_factors, IntPoly};
use crate::ratfunc::RatFunc;
use crate::realalg::RealAlgebraic;
use crate::salem::{classify, induced, reciprocal_poly, SalemClassification};
use crate::sturm::{sturm_count, Bound};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PisotError {
    #[error("expected {expected} lengths (pendant sites then internal sites), got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("family is not eventually Salem: sampled length {length} classifies {tag}")]
    NotEventuallySalem { length: usize, tag: String },
    #[error("the quotient root must be a black vertex")]
    RootIsWhite,
    #[error("quotients need a connected acyclic colored graph")]
    NotTree,
    #[error("invalid growth site: {0}")]
    InvalidSite(String),
    #[error("white vertices must be pendant after white–white edge removal: {0}")]
    NormalFormViolation(String),
    #[error("leading-polynomial core failed Pisot certification: {0}")]
    NotPisot(String),
    #[error("malformed growth-spec JSON: {0}")]
    BadJson(String),
}

// ---------------------------------------------------------------------------
// Growth specifications
// ---------------------------------------------------------------------------

/// A base graph with marked growth sites: pendant sites `(vertex,
/// multiplicity)` where that many paths lengthen, and internal sites (edges)
/// under increasing subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSpec {
    base: Graph,
    pendant_sites: Vec<(usize, usize)>,
    internal_sites: Vec<(usize, usize)>,
}

impl GrowthSpec {
    pub fn new(
        base: Graph,
        pendant_sites: Vec<(usize, usize)>,
        internal_sites: Vec<(usize, usize)>,
    ) -> Result<Self, PisotError> {
        for &(v, mult) in &pendant_sites {
            if v >= base.n() {
                return Err(PisotError::InvalidSite(format!(
                    "pendant vertex {v} outside 0..{}",
                    base.n()
                )));
            }
            if mult == 0 {
                return Err(PisotError::InvalidSite(format!(
                    "pendant site at {v} needs multiplicity ≥ 1"
                )));
            }
        }
        for &(i, j) in &internal_sites {
            if !base.has_edge(i.min(j), i.max(j)) {
                return Err(PisotError::InvalidSite(format!(
                    "internal site ({i},{j}) is not an edge of the base"
                )));
            }
        }
        Ok(GrowthSpec {
            base,
            pendant_sites,
            internal_sites,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn pendant_sites(&self) -> &[(usize, usize)] {
        &self.pendant_sites
    }

    pub fn internal_sites(&self) -> &[(usize, usize)] {
        &self.internal_sites
    }

    /// Number of lengths [`attach_grown`](Self::attach_grown) expects.
    pub fn arity(&self) -> usize {
        self.pendant_sites.len() + self.internal_sites.len()
    }

    /// The concrete graph at the given lengths: pendant sites receive paths
    /// of that many vertices (0 = nothing), internal sites that many
    /// subdivision vertices (0 = the original edge).
    pub fn attach_grown(&self, lengths: &[usize]) -> Result<Graph, PisotError> {
        if lengths.len() != self.arity() {
            return Err(PisotError::LengthMismatch {
                expected: self.arity(),
                got: lengths.len(),
            });
        }
        let (pendant_lens, internal_lens) = lengths.split_at(self.pendant_sites.len());
        let subdivided: BTreeMap<(usize, usize), usize> = self
            .internal_sites
            .iter()
            .zip(internal_lens)
            .map(|(&(i, j), &s)| ((i.min(j), i.max(j)), s))
            .collect();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut next = self.base.n();
        for &(i, j) in self.base.edges() {
            match subdivided.get(&(i.min(j), i.max(j))) {
                Some(&s) if s > 0 => {
                    let mut prev = i;
                    for _ in 0..s {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                    edges.push((prev, j));
                }
                _ => edges.push((i, j)),
            }
        }
        for (&(v, mult), &m) in self.pendant_sites.iter().zip(pendant_lens) {
            for _ in 0..mult {
                let mut prev = v;
                for _ in 0..m {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
        }
        Ok(Graph::new(next, edges).expect("grown graph is simple"))
    }

    /// The limit-equivalent pendant-only specification: each internal edge
    /// is broken in the middle, leaving one pendant site at each endpoint.
    pub fn break_internal(&self) -> GrowthSpec {
        if self.internal_sites.is_empty() {
            return self.clone();
        }
        let drop: Vec<(usize, usize)> = self
            .internal_sites
            .iter()
            .map(|&(i, j)| (i.min(j), i.max(j)))
            .collect();
        let edges: Vec<(usize, usize)> = self
            .base
            .edges()
            .iter()
            .copied()
            .filter(|&(i, j)| !drop.contains(&(i.min(j), i.max(j))))
            .collect();
        let base = Graph::new(self.base.n(), edges).expect("edge removal keeps a simple graph");
        let mut pendant = self.pendant_sites.clone();
        for &(i, j) in &self.internal_sites {
            pendant.push((i, 1));
            pendant.push((j, 1));
        }
        GrowthSpec {
            base,
            pendant_sites: pendant,
            internal_sites: Vec::new(),
        }
    }

    /// JSON encoding `{"base": {"n":…, "edges":[[i,j],…]},
    /// "pendant":[{"v":…, "count":…},…], "internal":[[i,j],…]}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "base": {
                "n": self.base.n(),
                "edges": self.base.edges().iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            },
            "pendant": self.pendant_sites.iter()
                .map(|&(v, c)| json!({"v": v, "count": c}))
                .collect::<Vec<_>>(),
            "internal": self.internal_sites.iter()
                .map(|&(i, j)| json!([i, j]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, PisotError> {
        let bad = |msg: &str| PisotError::BadJson(msg.to_string());
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PisotError::BadJson(e.to_string()))?;
        let base_v = v.get("base").ok_or_else(|| bad("missing `base`"))?;
        let n = base_v
            .get("n")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| bad("missing `base.n`"))? as usize;
        let mut edges = Vec::new();
        for e in base_v
            .get("edges")
            .and_then(serde_json::Value::as_array)
            .ok_or_else(|| bad("missing `base.edges`"))?
        {
            let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("edge must be [i,j]"))?;
            let i = pair[0].as_u64().ok_or_else(|| bad("edge endpoint"))? as usize;
            let j = pair[1].as_u64().ok_or_else(|| bad("edge endpoint"))? as usize;
            edges.push((i, j));
        }
        let base = Graph::new(n, edges).map_err(|e| PisotError::BadJson(e.to_string()))?;
        let mut pendant = Vec::new();
        if let Some(arr) = v.get("pendant").and_then(serde_json::Value::as_array) {
            for p in arr {
                let site = p.get("v").and_then(serde_json::Value::as_u64).ok_or_else(|| bad("pendant `v`"))?;
                let count = p.get("count").and_then(serde_json::Value::as_u64).unwrap_or(1);
                pendant.push((site as usize, count as usize));
            }
        }
        let mut internal = Vec::new();
        if let Some(arr) = v.get("internal").and_then(serde_json::Value::as_array) {
            for e in arr {
                let pair = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("internal site must be [i,j]"))?;
                let i = pair[0].as_u64().ok_or_else(|| bad("internal endpoint"))? as usize;
                let j = pair[1].as_u64().ok_or_else(|| bad("internal endpoint"))? as usize;
                internal.push((i, j));
            }
        }
        GrowthSpec::new(base, pendant, internal)
    }
}

// ---------------------------------------------------------------------------
// Leading polynomials
// ---------------------------------------------------------------------------

/// `y²` as a polynomial in `z` for a growth site: `z` when the site's
/// component is bipartite (where `y = √z`), else `z²`.
fn y_squared_for_site(base: &Graph, v: usize) -> IntPoly {
    let mut comps = base.components();
    comps.iter_mut().for_each(|c| c.sort_unstable());
    let comp = comps
        .iter()
        .find(|c| c.contains(&v))
        .expect("vertex lies in some component");
    let sub = induced(base, comp);
    if sub.is_bipartite().0 {
        IntPoly::monomial(BigInt::one(), 1)
    } else {
        IntPoly::monomial(BigInt::one(), 2)
    }
}

/// Leading polynomial of a single pendant-growth site: `P = R₁ − R₀`,
/// where `R_m` is the reciprocal polynomial of the base with an `m`-vertex
/// path attached at `v`.  Self-checks the exact identity
/// `(y² − 1)·R_m = y^{2m}·P − P*` at `m = 2, 3` before returning.
pub fn leading_poly_single(base: &Graph, v: usize) -> Result<IntPoly, PisotError> {
    if v >= base.n() {
        return Err(PisotError::InvalidSite(format!(
            "vertex {v} outside 0..{}",
            base.n()
        )));
    }
    let r = |m: usize| {
        reciprocal_poly(&attach_path(base, v, m).expect("validated site"))
    };
    let p = r(1).sub(&r(0));
    let y2 = y_squared_for_site(base, v);
    let y2_minus_1 = y2.sub(&IntPoly::one());
    // P* from the m = 2 instance, then the identity must close at m = 3.
    let p_star = y2.pow(2).mul(&p).sub(&y2_minus_1.mul(&r(2)));
    assert_eq!(
        y2_minus_1.mul(&r(3)),
        y2.pow(3).mul(&p).sub(&p_star),
        "growing-path identity failed at m = 3"
    );
    Ok(p)
}

/// Verifies the growing-path identity for one site at a given `m`, reusing
/// `P` and `P*` derived from small lengths.  Used by the property suites.
pub fn growth_identity_holds(base: &Graph, v: usize, m: usize) -> bool {
    let r = |k: usize| reciprocal_poly(&attach_path(base, v, k).expect("valid site"));
    let p = r(1).sub(&r(0));
    let y2 = y_squared_for_site(base, v);
    let y2_minus_1 = y2.sub(&IntPoly::one());
    let p_star = y2.pow(2).mul(&p).sub(&y2_minus_1.mul(&r(2)));
    y2_minus_1.mul(&r(m)) == y2.pow(m).mul(&p).sub(&p_star)
}

/// Iterated leading polynomial over unit sites (multiplicities expanded):
/// the alternating sum of `R` over length 0/1 at each site.  Cross-checked
/// against the same difference taken at lengths 1/2, which must equal the
/// 0/1 version scaled by `∏ y²` over the sites.
fn leading_poly_units(base: &Graph, sites: &[usize]) -> IntPoly {
    let altsum = |offset: usize| {
        let mut acc = IntPoly::zero();
        for mask in 0u64..1 << sites.len() {
            let mut g = base.clone();
            let mut ones = 0u32;
            for (i, &v) in sites.iter().enumerate() {
                let m = offset + usize::from(mask >> i & 1 == 1);
                ones += u32::from(mask >> i & 1 == 1);
                if m > 0 {
                    g = attach_path(&g, v, m).expect("valid site");
                }
            }
            let term = reciprocal_poly(&g);
            let negate = (sites.len() as u32 - ones) % 2 == 1;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
        }
        acc
    };
    let p01 = altsum(0);
    let mut scale = IntPoly::one();
    for &v in sites {
        scale = scale.mul(&y_squared_for_site(base, v));
    }
    assert_eq!(
        altsum(1),
        scale.mul(&p01),
        "shifted differencing disagrees with the leading polynomial"
    );
    p01
}

/// Result of a limit computation: the leading polynomial, its Pisot core,
/// and the Pisot number θ.
#[derive(Debug, Clone)]
pub struct PisotLimit {
    pub leading: IntPoly,
    pub minpoly: IntPoly,
    pub theta: RealAlgebraic,
}

/// The Pisot limit of a growth family: certifies the family is eventually
/// Salem (samples at lengths 8, 12, 16), breaks internal sites into pendant
/// pairs, extracts the leading polynomial by iterated differencing, strips
/// powers of `z` and cyclotomic factors, and certifies the core is Pisot:
/// one root above 1, none on `(−∞, −1]`, all others of modulus
/// ≤ 1 − 10⁻⁹ (disk count on the reversed core).
pub fn pisot_limit(spec: &GrowthSpec) -> Result<PisotLimit, PisotError> {
    if spec.arity() == 0 {
        return Err(PisotError::InvalidSite("no growth sites".into()));
    }
    for m in [8usize, 12, 16] {
        let g = spec.attach_grown(&vec![m; spec.arity()])?;
        let cls = classify(&g);
        if !cls.is_salem() {
            return Err(PisotError::NotEventuallySalem {
                length: m,
                tag: cls.tag().to_string(),
            });
        }
    }
    let broken = spec.break_internal();
    let mut sites = Vec::new();
    for &(v, mult) in &broken.pendant_sites {
        sites.extend(std::iter::repeat(v).take(mult));
    }
    let leading = leading_poly_units(&broken.base, &sites);
    let stripped = strip_trivial_factors(&leading);
    let mut core = stripped.core;
    if core.leading_coeff() < BigInt::from(0) {
        core = core.neg();
    }
    if core.is_constant() {
        return Err(PisotError::NotPisot(
            "leading polynomial has no noncyclotomic part".into(),
        ));
    }
    let one = BigRational::one();
    let above = sturm_count(&core, &Bound::At(one.clone()), &Bound::PosInf);
    if above != 1 {
        return Err(PisotError::NotPisot(format!(
            "{above} distinct roots above 1"
        )));
    }
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let low = sturm_count(&core, &Bound::NegInf, &Bound::At(minus_one));
    if low != 0 {
        return Err(PisotError::NotPisot(format!(
            "{low} roots on (−∞, −1]"
        )));
    }
    // All non-dominant roots have modulus ≤ 1 − 1e−9 exactly when the
    // reversed core has exactly one root of modulus < 1/(1 − 1e−9).
    let billion = BigInt::from(1_000_000_000u64);
    let radius = BigRational::new(billion.clone(), &billion - BigInt::one());
    match count_roots_in_disk(&core.reverse(core.deg()), &radius) {
        Ok(1) => {}
        Ok(c) => {
            return Err(PisotError::NotPisot(format!(
                "{c} roots of modulus > 1 − 1e−9"
            )))
        }
        Err(_) => {
            return Err(PisotError::NotPisot(
                "borderline: a conjugate lies within 1e−9 of the unit circle".into(),
            ))
        }
    }
    // A degree-2 Pisot core can never be reciprocal (its second root would
    // be 1/θ on the unit-circle-reciprocal pattern, contradicting the graph
    // limit construction).
    if core.deg() == 2 {
        assert!(
            !is_reciprocal(&core),
            "quadratic Pisot core must not be reciprocal"
        );
    }
    let theta = RealAlgebraic::unique_root_above(&core, &one)
        .expect("certified single root above 1");
    Ok(PisotLimit {
        leading,
        minpoly: core,
        theta,
    })
}

// ---------------------------------------------------------------------------
// Pisot graphs (bi-colored)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexColor {
    Black,
    White,
}

/// A bi-colored graph in normal form: white vertices are pendant and stand
/// for growing paths.  White–white edges are removed on construction.
#[derive(Debug, Clone)]
pub struct PisotGraph {
    graph: Graph,
    color: Vec<VertexColor>,
}

impl PisotGraph {
    pub fn new(graph: Graph, color: Vec<VertexColor>) -> Result<Self, PisotError> {
        if color.len() != graph.n() {
            return Err(PisotError::NormalFormViolation(format!(
                "{} colors for {} vertices",
                color.len(),
                graph.n()
            )));
        }
        let edges: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(i, j)| {
                !(color[i] == VertexColor::White && color[j] == VertexColor::White)
            })
            .collect();
        let graph = Graph::new(graph.n(), edges).expect("edge removal keeps a simple graph");
        let adj = graph.adj();
        for v in 0..graph.n() {
            if color[v] == VertexColor::White && adj[v].len() != 1 {
                return Err(PisotError::NormalFormViolation(format!(
                    "white vertex {v} has degree {}",
                    adj[v].len()
                )));
            }
        }
        Ok(PisotGraph { graph, color })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn color(&self, v: usize) -> VertexColor {
        self.color[v]
    }

    pub fn white_count(&self) -> usize {
        self.color
            .iter()
            .filter(|&&c| c == VertexColor::White)
            .count()
    }

    /// The growth specification this colored graph encodes: the black
    /// subgraph with one pendant site per white vertex, grouped into
    /// multiplicities at the supporting black vertex.  Black vertices keep
    /// their relative order in the renumbering.
    pub fn growth_spec(&self) -> GrowthSpec {
        let n = self.graph.n();
        let blacks: Vec<usize> = (0..n)
            .filter(|&v| self.color[v] == VertexColor::Black)
            .collect();
        let black_index: BTreeMap<usize, usize> =
            blacks.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .filter(|&&(i, j)| {
                self.color[i] == VertexColor::Black && self.color[j] == VertexColor::Black
            })
            .map(|&(i, j)| (black_index[&i], black_index[&j]))
            .collect();
        let base = Graph::new(blacks.len(), edges).expect("black subgraph is simple");
        let adj = self.graph.adj();
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..n {
            if self.color[v] == VertexColor::White {
                let support = adj[v][0];
                *mult.entry(black_index[&support]).or_insert(0) += 1;
            }
        }
        GrowthSpec {
            base,
            pendant_sites: mult.into_iter().collect(),
            internal_sites: Vec::new(),
        }
    }
}

/// The rooted quotient of a colored tree: the usual recursion
/// `q = 1/(z + 1 − z·Σ children)` with every white leaf contributing `1/z`.
pub fn pisot_graph_quotient(pg: &PisotGraph, root: usize) -> Result<RatFunc, PisotError> {
    let g = pg.graph();
    if !g.is_forest() || !g.is_connected() {
        return Err(PisotError::NotTree);
    }
    if pg.color(root) == VertexColor::White {
        return Err(PisotError::RootIsWhite);
    }
    let n = g.n();
    let adj = g.adj();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    visited[root] = true;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    let z_plus_1 = RatFunc::from_poly(IntPoly::from_i64(&[1, 1]));
    let z = RatFunc::from_poly(IntPoly::from_i64(&[0, 1]));
    let white_q = RatFunc::new(IntPoly::one(), IntPoly::monomial(BigInt::one(), 1));
    let mut q: Vec<Option<RatFunc>> = vec![None; n];
    for &v in order.iter().rev() {
        if pg.color(v) == VertexColor::White {
            q[v] = Some(white_q.clone());
            continue;
        }
        let mut child_sum = RatFunc::zero();
        for &w in &adj[v] {
            if parent[w] == v {
                child_sum = child_sum.add(q[w].as_ref().expect("children precede parents"));
            }
        }
        q[v] = Some(z_plus_1.sub(&z.mul(&child_sum)).recip());
    }
    Ok(q[root].take().expect("root processed last"))
}

// ---------------------------------------------------------------------------
// Derived-set families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BertinDirection {
    Below,
    Above,
}

/// A derived-set family construction.  `inferred` marks the variants whose
/// subtrees are reconstructed from their stated sizes and quotients alone.
#[derive(Debug, Clone)]
pub struct BertinFamily {
    pub pisot_graph: PisotGraph,
    pub center: usize,
    pub inferred: bool,
}

/// The k-parameterized colored trees realizing `(k + √(k² + 4))/2` (without
/// the extra white, quotient `(z−1)/(z² − kz − 1)`, 2k whites) and `k + 1`
/// (with it, quotient `(z−1)/(z·(z − (k+1)))`, 2k + 1 whites).
///
/// Each of the k repeated units has quotient `1/(z−1)` at its root and the
/// optional extra subtree has quotient `1/z`: going below, the unit is a
/// black vertex with two white leaves (3 vertices) and the extra is one
/// white leaf; going above, the unit is an 11-vertex subtree and the extra
/// a 5-vertex chain realizing the same quotients with more black depth.
pub fn bertin_family(k: usize, direction: BertinDirection, extra_white: bool) -> BertinFamily {
    assert!(k >= 1, "derived-set families need k ≥ 1");
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut color = vec![VertexColor::Black];
    let mut next = 1usize;
    // A chain of `blacks` black vertices ending in one white, hanging from
    // `from`; quotient 1/z at its first black vertex.
    let chain = |edges: &mut Vec<(usize, usize)>,
                     color: &mut Vec<VertexColor>,
                     next: &mut usize,
                     from: usize,
                     blacks: usize| {
        let mut prev = from;
        for _ in 0..blacks {
            edges.push((prev, *next));
            color.push(VertexColor::Black);
            prev = *next;
            *next += 1;
        }
        edges.push((prev, *next));
        color.push(VertexColor::White);
        *next += 1;
    };
    for _ in 0..k {
        match direction {
            BertinDirection::Below => {
                // Black unit root with two white leaves.
                let b = next;
                edges.push((0, b));
                color.push(VertexColor::Black);
                next += 1;
                for _ in 0..2 {
                    edges.push((b, next));
                    color.push(VertexColor::White);
                    next += 1;
                }
            }
            BertinDirection::Above => {
                // 11-vertex unit: a black root carrying two 5-vertex chains.
                let b = next;
                edges.push((0, b));
                color.push(VertexColor::Black);
                next += 1;
                chain(&mut edges, &mut color, &mut next, b, 4);
                chain(&mut edges, &mut color, &mut next, b, 4);
            }
        }
    }
    if extra_white {
        match direction {
            BertinDirection::Below => {
                edges.push((0, next));
                color.push(VertexColor::White);
                next += 1;
            }
            BertinDirection::Above => {
                chain(&mut edges, &mut color, &mut next, 0, 4);
            }
        }
    }
    let graph = Graph::new(next, edges).expect("family tree is simple");
    let pisot_graph = PisotGraph::new(graph, color).expect("whites are pendant by construction");
    BertinFamily {
        pisot_graph,
        center: 0,
        inferred: direction == BertinDirection::Above,
    }
}

// ---------------------------------------------------------------------------
// The two small-Pisot figures
// ---------------------------------------------------------------------------

/// The colored tree whose family grows one arm of the Lehmer-number tree:
/// a black center carrying a leaf, a 2-vertex path, and one white vertex.
/// Quotient at the center: `(z+1)(z²+z+1)/(z(z³−z−1))`; the family is
/// `T(1,2,m)` and the limit is the plastic number, root of `z³ − z − 1`.
pub fn fig_smallpisot_left() -> PisotGraph {
    let graph = Graph::new(5, vec![(0, 1), (0, 2), (2, 3), (0, 4)]).expect("tree");
    let mut color = vec![VertexColor::Black; 5];
    color[4] = VertexColor::White;
    PisotGraph::new(graph, color).expect("normal form")
}

/// The colored tree with a black center, one black leaf, and two whites.
/// Quotient at the center: `(z+1)/(z²−z−1)`; the doubly-growing family
/// `T(1,m,m)` tends to the golden ratio, root of `z² − z − 1`.
pub fn fig_smallpisot_right() -> PisotGraph {
    let graph = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).expect("tree");
    let mut color = vec![VertexColor::Black; 4];
    color[2] = VertexColor::White;
    color[3] = VertexColor::White;
    PisotGraph::new(graph, color).expect("normal form")
}

// ---------------------------------------------------------------------------
// Convergence reports
// ---------------------------------------------------------------------------

/// One sampled family member: the lengths used, τ, and |τ − θ|.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub lengths: Vec<usize>,
    pub tau: RealAlgebraic,
    pub gap: BigRational,
}

/// A τ-convergence table for diagonal growth (all sites share each length).
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    pub theta: RealAlgebraic,
    pub minpoly: IntPoly,
    /// Strict τ increase down the table; guaranteed for pendant-only
    /// growth.
    pub monotone: bool,
    /// For specs with internal sites: the same table for the broken-edge
    /// pendant family, which converges to the same θ.
    pub dual_rows: Option<Vec<ConvergenceRow>>,
}

/// Samples the family at each length in the range, reporting τ and the gap
/// to the certified limit θ.  Every sampled member must classify Salem.
/// When internal sites are present, the broken-edge dual family is sampled
/// too; both share the limit by construction and the table exhibits it.
pub fn convergence_report(
    spec: &GrowthSpec,
    m_range: RangeInclusive<usize>,
) -> Result<ConvergenceReport, PisotError> {
    let limit = pisot_limit(spec)?;
    let eps = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(13));
    let theta_approx = limit.theta.clone().approx_rational(&eps);
    let sample = |s: &GrowthSpec| -> Result<Vec<ConvergenceRow>, PisotError> {
        let mut rows = Vec::new();
        for m in m_range.clone() {
            let lengths = vec![m; s.arity()];
            let g = s.attach_grown(&lengths)?;
            let tau = match classify(&g) {
                SalemClassification::SalemNontrivial { tau, .. }
                | SalemClassification::SalemTrivial { tau, .. } => tau,
                other => {
                    return Err(PisotError::NotEventuallySalem {
                        length: m,
                        tag: other.tag().to_string(),
                    })
                }
            };
            let gap = (tau.clone().approx_rational(&eps) - &theta_approx).abs();
            rows.push(ConvergenceRow { lengths, tau, gap });
        }
        Ok(rows)
    };
    let rows = sample(spec)?;
    let monotone = rows.windows(2).all(|w| {
        let a = w[0].tau.clone().approx_rational(&eps);
        let b = w[1].tau.clone().approx_rational(&eps);
        a < b
    });
    let dual_rows = if spec.internal_sites.is_empty() {
        None
    } else {
        Some(sample(&spec.break_internal())?)
    };
    Ok(ConvergenceReport {
        rows,
        theta: limit.theta,
        minpoly: limit.minpoly,
        monotone,
        dual_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, char_poly, FamilySpec};
    use crate::measure::mahler_measure;
    use num_traits::{ToPrimitive, Zero};

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(p(num), p(den))
    }

    #[test]
    fn attach_grown_shapes() {
        // A single vertex with one site grown by 2 is the 3-vertex path.
        let spec = GrowthSpec::new(Graph::empty(1), vec![(0, 1)], vec![]).unwrap();
        let g = spec.attach_grown(&[2]).unwrap();
        assert_eq!(char_poly(&g), char_poly(&build(FamilySpec::Path(3)).unwrap()));
        // Length mismatch is refused.
        assert_eq!(
            spec.attach_grown(&[1, 2]).unwrap_err(),
            PisotError::LengthMismatch { expected: 1, got: 2 }
        );
        // Subdividing an internal edge of the double fork keeps index 2.
        let td = build(FamilySpec::TildeDn(6)).unwrap();
        let spine_edge = (0, 1);
        let spec = GrowthSpec::new(td, vec![], vec![spine_edge]).unwrap();
        for s in 0..4 {
            let g = spec.attach_grown(&[s]).unwrap();
            let chi = char_poly(&g);
            assert_eq!(chi.eval_int(&BigInt::from(2)), BigInt::zero(), "s = {s}");
            assert_eq!(
                sturm_count(&chi, &Bound::integer(2), &Bound::PosInf),
                0,
                "s = {s}"
            );
        }
    }

    #[test]
    fn growth_spec_json_round_trip() {
        let base = build(FamilySpec::Path(4)).unwrap();
        let spec = GrowthSpec::new(base, vec![(1, 2)], vec![(2, 3)]).unwrap();
        let text = spec.to_json().to_string();
        let back = GrowthSpec::from_json(&text).unwrap();
        assert_eq!(back, spec);
        assert!(GrowthSpec::from_json("{}").is_err());
        assert!(GrowthSpec::from_json("{\"base\":{\"n\":2,\"edges\":[[0,1]]},\"pendant\":[{\"v\":7}]}").is_err());
    }

    #[test]
    fn leading_poly_examples() {
        // Growing the long arm of the Lehmer tree: core is the plastic
        // polynomial.
        let base = Graph::new(4, vec![(0, 1), (0, 2), (2, 3)]).unwrap();
        let lead = leading_poly_single(&base, 0).unwrap();
        let core = strip_trivial_factors(&lead).core;
        let core = if core.leading_coeff() < BigInt::zero() { core.neg() } else { core };
        assert_eq!(core, p(&[-1, -1, 0, 1]));
        // A bare path keeps growing cyclotomically: no root above 1.
        let path = build(FamilySpec::Path(2)).unwrap();
        let lead = leading_poly_single(&path, 1).unwrap();
        let core = strip_trivial_factors(&lead).core;
        assert_eq!(
            sturm_count(&core, &Bound::integer(1), &Bound::PosInf),
            0,
            "core {core} must have no root above 1"
        );
        // The identity holds well past the self-check, bipartite or not.
        let odd = build(FamilySpec::Cycle(5)).unwrap();
        for m in 2..=5 {
            assert!(growth_identity_holds(&base, 3, m));
            assert!(growth_identity_holds(&odd, 0, m));
        }
    }

    #[test]
    fn pisot_limits_of_figures() {
        let eps14 = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(14));
        let left = fig_smallpisot_left().growth_spec();
        let lim = pisot_limit(&left).unwrap();
        assert_eq!(lim.minpoly, p(&[-1, -1, 0, 1]));
        let t = lim.theta.clone().approx_rational(&eps14).to_f64().unwrap();
        assert!((t - 1.324717957244746).abs() < 1e-12, "plastic number, got {t}");
        let right = fig_smallpisot_right().growth_spec();
        let lim = pisot_limit(&right).unwrap();
        assert_eq!(lim.minpoly, p(&[-1, -1, 1]));
        let t = lim.theta.clone().approx_rational(&eps14).to_f64().unwrap();
        assert!((t - 1.618033988749895).abs() < 1e-12, "golden ratio, got {t}");
        // Mahler-measure cross-check: M(core) equals θ.
        let eps = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
        let m = mahler_measure(&lim.minpoly, &eps).unwrap();
        let diff = (m.midpoint() - lim.theta.clone().approx_rational(&eps)).abs();
        assert!(diff.to_f64().unwrap() < 1e-10);
    }

    #[test]
    fn pisot_limit_rejects_cyclotomic_families() {
        // Growing a bare path stays cyclotomic forever.
        let spec = GrowthSpec::new(build(FamilySpec::Path(3)).unwrap(), vec![(2, 1)], vec![])
            .unwrap();
        assert!(matches!(
            pisot_limit(&spec),
            Err(PisotError::NotEventuallySalem { length: 8, .. })
        ));
    }

    #[test]
    fn figure_quotients() {
        let left = fig_smallpisot_left();
        assert_eq!(
            pisot_graph_quotient(&left, 0).unwrap(),
            RatFunc::new(
                p(&[1, 1]).mul(&p(&[1, 1, 1])),
                IntPoly::monomial(BigInt::one(), 1).mul(&p(&[-1, -1, 0, 1]))
            )
        );
        let right = fig_smallpisot_right();
        assert_eq!(
            pisot_graph_quotient(&right, 0).unwrap(),
            rf(&[1, 1], &[-1, -1, 1])
        );
        // A single black root with one white child has quotient 1/z.
        let tiny = PisotGraph::new(
            Graph::new(2, vec![(0, 1)]).unwrap(),
            vec![VertexColor::Black, VertexColor::White],
        )
        .unwrap();
        assert_eq!(pisot_graph_quotient(&tiny, 0).unwrap(), rf(&[1], &[0, 1]));
        assert_eq!(
            pisot_graph_quotient(&tiny, 1).unwrap_err(),
            PisotError::RootIsWhite
        );
    }

    #[test]
    fn normal_form_rules() {
        // An edge between two whites is removed; the whites must then be
        // pendant on black support.
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let colors = vec![
            VertexColor::Black,
            VertexColor::White,
            VertexColor::White,
            VertexColor::Black,
        ];
        let pg = PisotGraph::new(g, colors).unwrap();
        assert_eq!(pg.graph().edges().len(), 3);
        assert_eq!(pg.white_count(), 2);
        // A white of degree 2 on black neighbors violates normal form.
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let colors = vec![VertexColor::Black, VertexColor::White, VertexColor::Black];
        assert!(matches!(
            PisotGraph::new(g, colors),
            Err(PisotError::NormalFormViolation(_))
        ));
    }

    #[test]
    fn bertin_quotients_exact() {
        for k in 1..=5i64 {
            for direction in [BertinDirection::Below, BertinDirection::Above] {
                let fam = bertin_family(k as usize, direction, false);
                assert_eq!(fam.pisot_graph.white_count(), 2 * k as usize);
                assert_eq!(
                    pisot_graph_quotient(&fam.pisot_graph, fam.center).unwrap(),
                    rf(&[-1, 1], &[-1, -k, 1]),
                    "k = {k} without extra white"
                );
                let fam = bertin_family(k as usize, direction, true);
                assert_eq!(fam.pisot_graph.white_count(), 2 * k as usize + 1);
                assert_eq!(
                    pisot_graph_quotient(&fam.pisot_graph, fam.center).unwrap(),
                    rf(&[-1, 1], &[0, -(k + 1), 1]),
                    "k = {k} with extra white"
                );
            }
        }
        assert!(bertin_family(1, BertinDirection::Above, false).inferred);
        assert!(!bertin_family(1, BertinDirection::Below, false).inferred);
        // Vertex counts: 3-vertex units below, 11-vertex units above with a
        // 5-vertex extra chain.
        assert_eq!(bertin_family(2, BertinDirection::Below, false).pisot_graph.graph().n(), 7);
        assert_eq!(bertin_family(2, BertinDirection::Above, false).pisot_graph.graph().n(), 23);
        assert_eq!(bertin_family(2, BertinDirection::Above, true).pisot_graph.graph().n(), 28);
    }

    #[test]
    fn bertin_limit_matches_quotient_denominator() {
        // The growth family of the k = 2 tree has Pisot core z² − 2z − 1.
        let fam = bertin_family(2, BertinDirection::Below, false);
        let lim = pisot_limit(&fam.pisot_graph.growth_spec()).unwrap();
        assert_eq!(lim.minpoly, p(&[-1, -2, 1]));
        // With the extra white the limit is the integer k + 1 = 3.
        let fam = bertin_family(2, BertinDirection::Below, true);
        let lim = pisot_limit(&fam.pisot_graph.growth_spec()).unwrap();
        assert_eq!(lim.minpoly, p(&[-3, 1]));
    }

    #[test]
    fn convergence_toward_plastic_number() {
        // The family is Salem from m = 6 on; the two earlier members are
        // still cyclotomic and a range touching them is refused.
        let spec = fig_smallpisot_left().growth_spec();
        assert!(matches!(
            convergence_report(&spec, 4..=20),
            Err(PisotError::NotEventuallySalem { length: 4, .. })
        ));
        let report = convergence_report(&spec, 6..=20).unwrap();
        assert!(report.monotone);
        assert_eq!(report.minpoly, p(&[-1, -1, 0, 1]));
        let gaps: Vec<f64> = report
            .rows
            .iter()
            .map(|r| r.gap.to_f64().unwrap())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "gaps shrink");
        assert!(*gaps.last().unwrap() < 3e-3);
        assert!(report.dual_rows.is_none());
    }

    #[test]
    fn internal_site_dual_family() {
        // Subdividing the outermost edge of the long arm of T(1,2,6) is
        // limit-equivalent to breaking it (which leaves the T(1,2,5+m) tree
        // plus a stray path); both series converge to the plastic number.
        let base = build(FamilySpec::T(1, 2, 6)).unwrap();
        let spec = GrowthSpec::new(base, vec![], vec![(8, 9)]).unwrap();
        let report = convergence_report(&spec, 6..=14).unwrap();
        assert_eq!(report.minpoly, p(&[-1, -1, 0, 1]));
        let dual = report.dual_rows.as_ref().expect("internal site emits dual");
        let last = report.rows.last().unwrap().gap.to_f64().unwrap();
        let dual_last = dual.last().unwrap().gap.to_f64().unwrap();
        assert!(last < 1e-2 && dual_last < 1e-2);
        // The broken spec certifies the identical Pisot core.
        let lim = pisot_limit(&spec.break_internal()).unwrap();
        assert_eq!(lim.minpoly, report.minpoly);
    }
}

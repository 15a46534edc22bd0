//! Rooted-tree quotient calculus.
//!
//! A rooted tree `T` has the quotient `q_T = ∏ᵢ Rᵢ / R_T`, the reciprocal
//! polynomials of its root-deleted subtrees over its own; equivalently `q_T`
//! obeys the recursion `q_T = 1/(z + 1 − z·q_{T′})` with `q_• = 1/(z+1)`,
//! where `q_{T′}` sums the quotients of the root's child subtrees.  The
//! ν-value is `q_T(1)` (∞ at a pole).
//!
//! Two constructions produce Salem trees from rooted cyclotomic trees:
//! joining a new center to roots with ν-sum > 2 (type a), and joining two
//! such trees by an edge between their centers subject to
//! `(ν₁ − 2)(ν₂ − 2) ≤ 1` (type b).  Every Salem tree arises one of these
//! two ways, and [`decompose_salem_tree`] finds a certifying center or
//! central edge by the walk that proves it.
//!
//! The module carries the full catalogue of rooted cyclotomic trees with
//! their printed quotients and ν-values, and the recipe table realizing all
//! graph Salem numbers below 1.3 as powers of fifteen bases.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{build, FamilySpec, Graph};
use crate::poly::{cyclotomic, strip_trivial_factors, IntPoly};
use crate::ratfunc::RatFunc;
use crate::realalg::RealAlgebraic;
use crate::salem::{
    certify_salem_poly, classify, induced, reciprocal_poly, SalemClassification,
};
use crate::sturm::{sturm_count, Bound};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootedError {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("root {root} outside 0..{n}")]
    RootOutOfRange { root: usize, n: usize },
    #[error("child {0} is not a cyclotomic tree")]
    NonCyclotomicChild(usize),
    #[error("input {which} is not a type-(a) Salem tree with finite ν: {reason}")]
    NotTypeA { which: usize, reason: String },
    #[error("graph is not a Salem tree")]
    NotSalemTree,
    #[error("unknown catalogue entry `{0}`")]
    UnknownEntry(String),
    #[error("invalid recipe: {0}")]
    BadRecipe(String),
}

// ---------------------------------------------------------------------------
// Rooted trees
// ---------------------------------------------------------------------------

/// A tree with a distinguished root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: Graph,
    root: usize,
}

impl RootedTree {
    pub fn new(graph: Graph, root: usize) -> Result<Self, RootedError> {
        if !graph.is_forest() || !graph.is_connected() {
            return Err(RootedError::NotATree(
                "need a connected acyclic graph".into(),
            ));
        }
        if root >= graph.n() {
            return Err(RootedError::RootOutOfRange {
                root,
                n: graph.n(),
            });
        }
        Ok(RootedTree { graph, root })
    }

    /// The single-vertex rooted tree `•`.
    pub fn single() -> Self {
        RootedTree {
            graph: Graph::empty(1),
            root: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The root's child subtrees: components of `T − root`, each rooted at
    /// its vertex that was adjacent to the root.
    pub fn children_subtrees(&self) -> Vec<RootedTree> {
        let adj = self.graph.adj();
        let mut comps: Vec<RootedTree> = Vec::new();
        let mut visited = vec![false; self.graph.n()];
        visited[self.root] = true;
        for &start in &adj[self.root] {
            if visited[start] {
                continue;
            }
            let mut comp = vec![start];
            visited[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for &w in &adj[v] {
                    if !visited[w] {
                        visited[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            let sub = induced(&self.graph, &comp);
            let child_root = comp.iter().position(|&v| v == start).expect("start in comp");
            comps.push(RootedTree {
                graph: sub,
                root: child_root,
            });
        }
        comps
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tree on {} vertices rooted at {}", self.graph.n(), self.root)
    }
}

// ---------------------------------------------------------------------------
// ν-values
// ---------------------------------------------------------------------------

/// The value `q_T(1)`: a rational number, or ∞ when the reduced quotient has
/// a pole at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuValue {
    Finite(BigRational),
    Infinite,
}

impl NuValue {
    pub fn finite(n: i64, d: i64) -> Self {
        NuValue::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, NuValue::Finite(_))
    }

    /// ν > 2, with ∞ counting as exceeding.
    pub fn exceeds_two(&self) -> bool {
        match self {
            NuValue::Infinite => true,
            NuValue::Finite(v) => *v > BigRational::from_integer(BigInt::from(2)),
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Infinite => write!(f, "∞"),
            NuValue::Finite(v) => {
                if v.denom().is_one() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
        }
    }
}

/// Sum of ν-values; any infinite summand makes the sum infinite.
pub fn nu_sum<I: IntoIterator<Item = NuValue>>(parts: I) -> NuValue {
    let mut acc = BigRational::zero();
    for p in parts {
        match p {
            NuValue::Infinite => return NuValue::Infinite,
            NuValue::Finite(v) => acc += v,
        }
    }
    NuValue::Finite(acc)
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// The quotient by the recursion `q_T = 1/(z + 1 − z·Σ_children q)`,
/// evaluated bottom-up in one reverse breadth-first pass; always reduced.
/// The recursion is tree-only; on cycle entries the defining ratio is used.
pub fn quotient(t: &RootedTree) -> RatFunc {
    if !t.graph.is_forest() {
        return quotient_direct(t);
    }
    let n = t.graph.n();
    let adj = t.graph.adj();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    visited[t.root] = true;
    order.push(t.root);
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
    let mut q: Vec<Option<RatFunc>> = vec![None; n];
    for &v in order.iter().rev() {
        let mut child_sum = RatFunc::zero();
        for &w in &adj[v] {
            if parent[w] == v {
                child_sum = child_sum.add(q[w].as_ref().expect("children precede parents"));
            }
        }
        q[v] = Some(z_plus_1.sub(&z.mul(&child_sum)).recip());
    }
    q[t.root].take().expect("root processed last")
}

/// The quotient as the ratio `∏ᵢ Rᵢ / R_T` of reciprocal polynomials of the
/// root's child subtrees over the whole tree; must equal [`quotient`].
pub fn quotient_direct(t: &RootedTree) -> RatFunc {
    let mut num = IntPoly::one();
    for c in t.children_subtrees() {
        num = num.mul(&reciprocal_poly(c.graph()));
    }
    RatFunc::new(num, reciprocal_poly(&t.graph))
}

/// ν(T) = q_T(1), with ∞ at a pole of the reduced quotient.
pub fn nu(t: &RootedTree) -> NuValue {
    match quotient(t).value_at_one() {
        Some(v) => NuValue::Finite(v),
        None => NuValue::Infinite,
    }
}

// ---------------------------------------------------------------------------
// Joins and the two Salem-tree constructions
// ---------------------------------------------------------------------------

/// Joins the roots of `t1` and `t2` by an edge; the root of `t1` is the root
/// of the result (`t2`'s vertices are shifted up by `t1.n()`).
pub fn join(t1: &RootedTree, t2: &RootedTree) -> RootedTree {
    let n1 = t1.graph.n();
    let mut edges: Vec<(usize, usize)> = t1.graph.edges().to_vec();
    edges.extend(t2.graph.edges().iter().map(|&(i, j)| (i + n1, j + n1)));
    edges.push((t1.root, n1 + t2.root));
    let graph = Graph::new(n1 + t2.graph.n(), edges).expect("join of valid trees");
    RootedTree {
        graph,
        root: t1.root,
    }
}

/// Joins a fresh center vertex to the root of every child; the center is the
/// highest index and becomes the root.
pub fn attach_center(children: &[RootedTree]) -> RootedTree {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut offset = 0usize;
    let mut roots = Vec::new();
    for c in children {
        edges.extend(c.graph.edges().iter().map(|&(i, j)| (i + offset, j + offset)));
        roots.push(offset + c.root);
        offset += c.graph.n();
    }
    let center = offset;
    for r in roots {
        edges.push((r, center));
    }
    let graph = Graph::new(center + 1, edges).expect("center join of valid trees");
    RootedTree {
        graph,
        root: center,
    }
}

/// Type-(a) construction: a new center joined to the roots of a collection of
/// rooted *cyclotomic* trees.  When the ν-sum exceeds 2 the result is a Salem
/// tree; at most 2 it stays cyclotomic.  The returned classification is the
/// exact spectral one, computed independently of the criterion.
pub fn salem_tree_type_a(
    children: &[RootedTree],
) -> Result<(RootedTree, SalemClassification), RootedError> {
    for (i, c) in children.iter().enumerate() {
        if !matches!(classify(c.graph()), SalemClassification::Cyclotomic) {
            return Err(RootedError::NonCyclotomicChild(i));
        }
    }
    let t = attach_center(children);
    let cls = classify(t.graph());
    #[cfg(debug_assertions)]
    {
        let s = nu_sum(children.iter().map(nu));
        debug_assert_eq!(
            s.exceeds_two(),
            cls.is_salem(),
            "ν(T′) = {s} disagrees with classification {}",
            cls.tag()
        );
        if !s.exceeds_two() {
            debug_assert_eq!(cls.tag(), "Cyclotomic");
        }
    }
    Ok((t, cls))
}

/// ν(T′) of a type-(a) Salem tree: children of the root all cyclotomic, sum
/// of their ν finite and > 2.
fn type_a_nu_prime(t: &RootedTree, which: usize) -> Result<BigRational, RootedError> {
    let children = t.children_subtrees();
    for (i, c) in children.iter().enumerate() {
        if !matches!(classify(c.graph()), SalemClassification::Cyclotomic) {
            return Err(RootedError::NotTypeA {
                which,
                reason: format!("child {i} of the root is not cyclotomic"),
            });
        }
    }
    match nu_sum(children.iter().map(nu)) {
        NuValue::Infinite => Err(RootedError::NotTypeA {
            which,
            reason: "ν(T′) is infinite".into(),
        }),
        NuValue::Finite(v) => {
            if v > BigRational::from_integer(BigInt::from(2)) {
                Ok(v)
            } else {
                Err(RootedError::NotTypeA {
                    which,
                    reason: format!("ν(T′) = {v} ≤ 2"),
                })
            }
        }
    }
}

/// Type-(b) construction: two type-(a) Salem trees with finite ν(T′) joined
/// by an edge between their roots.  Under `(ν₁ − 2)(ν₂ − 2) ≤ 1` the result
/// is a Salem tree; otherwise the classification reports the two eigenvalues
/// beyond 2 (two roots outside the unit circle).
pub fn salem_tree_type_b(
    t1: &RootedTree,
    t2: &RootedTree,
) -> Result<(RootedTree, SalemClassification), RootedError> {
    let nu1 = type_a_nu_prime(t1, 1)?;
    let nu2 = type_a_nu_prime(t2, 2)?;
    let t = join(t1, t2);
    let cls = classify(t.graph());
    let two = BigRational::from_integer(BigInt::from(2));
    let product_ok = (&nu1 - &two) * (&nu2 - &two) <= BigRational::one();
    debug_assert_eq!(
        product_ok,
        cls.is_salem(),
        "(ν₁−2)(ν₂−2) ≤ 1 disagrees with classification {}",
        cls.tag()
    );
    #[cfg(debug_assertions)]
    if !product_ok {
        debug_assert!(matches!(
            cls,
            SalemClassification::NotSalem { eigs_above_2: 2, .. }
        ));
    }
    Ok((t, cls))
}

// ---------------------------------------------------------------------------
// Complete decomposition of Salem trees
// ---------------------------------------------------------------------------

/// Certificate produced by [`decompose_salem_tree`]: a center whose deletion
/// leaves only cyclotomic components (type a), or a central edge such that
/// the tree is a type-(b) join across it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    TypeA { center: usize },
    TypeB { edge: (usize, usize) },
}

/// Walks the tree from vertex 0, always stepping into the unique
/// non-cyclotomic component of `T − t_i`.  The walk either reaches a vertex
/// whose deletion leaves all components cyclotomic (type a), or starts
/// bouncing across one edge (type b).
pub fn decompose_salem_tree(g: &Graph) -> Result<Decomposition, RootedError> {
    if !g.is_forest() || !g.is_connected() {
        return Err(RootedError::NotATree(
            "need a connected acyclic graph".into(),
        ));
    }
    if !classify(g).is_salem() {
        return Err(RootedError::NotSalemTree);
    }
    let adj = g.adj();
    let mut prev: Option<usize> = None;
    let mut cur = 0usize;
    for _ in 0..=g.n() {
        let mut salem_next: Option<usize> = None;
        let mut salem_count = 0usize;
        for comp in components_without(g, &adj, cur) {
            let sub = induced(g, &comp);
            if classify(&sub).is_salem() {
                salem_count += 1;
                let next = comp
                    .iter()
                    .copied()
                    .find(|v| adj[cur].contains(v))
                    .expect("component touches the deleted vertex");
                salem_next = Some(next);
            }
        }
        match salem_count {
            0 => return Ok(Decomposition::TypeA { center: cur }),
            1 => {
                let next = salem_next.expect("counted");
                if prev == Some(next) {
                    return Ok(Decomposition::TypeB {
                        edge: (cur.min(next), cur.max(next)),
                    });
                }
                prev = Some(cur);
                cur = next;
            }
            _ => unreachable!("interlacing allows at most one eigenvalue beyond 2 in T − v"),
        }
    }
    unreachable!("the walk terminates within n steps on a Salem tree")
}

/// Components of `g − removed`, as sorted vertex lists in `g`'s labels.
fn components_without(g: &Graph, adj: &[Vec<usize>], removed: usize) -> Vec<Vec<usize>> {
    let mut visited = vec![false; g.n()];
    visited[removed] = true;
    let mut out = Vec::new();
    for s in 0..g.n() {
        if visited[s] {
            continue;
        }
        let mut comp = vec![s];
        visited[s] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

// ---------------------------------------------------------------------------
// The catalogue of rooted cyclotomic trees
// ---------------------------------------------------------------------------

/// One catalogue entry: a named rooted cyclotomic tree together with its
/// printed quotient (as a reduced rational function) and printed ν-value.
#[derive(Debug, Clone)]
pub struct CatalogueEntry {
    pub name: String,
    pub tree: RootedTree,
    pub expected_quotient: RatFunc,
    pub expected_nu: NuValue,
}

fn entry(
    name: String,
    tree: RootedTree,
    num: IntPoly,
    den: IntPoly,
    expected_nu: NuValue,
) -> CatalogueEntry {
    CatalogueEntry {
        name,
        tree,
        expected_quotient: RatFunc::new(num, den),
        expected_nu,
    }
}

/// Printed data for one exceptional rooted tree: cyclotomic indices of the
/// quotient's numerator and denominator, and ν (`None` = ∞).
type EData = (&'static [u64], &'static [u64], Option<(i64, i64)>);

const E6_DATA: [EData; 4] = [
    (&[2, 8], &[3, 12], Some((4, 3))),
    (&[2, 5], &[3, 12], Some((10, 3))),
    (&[2, 3], &[12], Some((6, 1))),
    (&[2, 6], &[12], Some((2, 1))),
];
const E7_DATA: [EData; 7] = [
    (&[2, 10], &[18], Some((2, 1))),
    (&[2, 3, 6], &[18], Some((6, 1))),
    (&[2, 3, 4], &[18], Some((12, 1))),
    (&[3, 5], &[2, 18], Some((15, 2))),
    (&[2, 8], &[18], Some((4, 1))),
    (&[3, 12], &[2, 18], Some((3, 2))),
    (&[7], &[2, 18], Some((7, 2))),
];
const E8_DATA: [EData; 8] = [
    (&[2, 4, 12], &[30], Some((4, 1))),
    (&[2, 7], &[30], Some((14, 1))),
    (&[2, 3, 5], &[30], Some((30, 1))),
    (&[2, 4, 5], &[30], Some((20, 1))),
    (&[2, 3, 8], &[30], Some((12, 1))),
    (&[2, 3, 12], &[30], Some((6, 1))),
    (&[2, 18], &[30], Some((2, 1))),
    (&[2, 4, 8], &[30], Some((8, 1))),
];
const TILDE_E6_DATA: [EData; 3] = [
    (&[12], &[1, 1, 2, 3], None),
    (&[2, 6], &[1, 1, 3], None),
    (&[3], &[1, 1, 2], None),
];
const TILDE_E7_DATA: [EData; 5] = [
    (&[18], &[1, 1, 2, 3, 4], None),
    (&[2, 10], &[1, 1, 3, 4], None),
    (&[3, 6], &[1, 1, 2, 4], None),
    (&[2, 4], &[1, 1, 3], None),
    (&[8], &[1, 1, 2, 3], None),
];
const TILDE_E8_DATA: [EData; 9] = [
    (&[2, 14], &[1, 1, 3, 5], None),
    (&[2, 4, 8], &[1, 1, 3, 5], None),
    (&[2, 3, 6], &[1, 1, 5], None),
    (&[5], &[1, 1, 2, 3], None),
    (&[2, 4, 8], &[1, 1, 3, 5], None),
    (&[3, 12], &[1, 1, 2, 5], None),
    (&[2, 18], &[1, 1, 3, 5], None),
    (&[30], &[1, 1, 2, 3, 5], None),
    (&[9], &[1, 1, 2, 5], None),
];

/// Root vertices, in the canonical numbering of `graph::build`, for each
/// rooted variant of the exceptional trees.
const E6_ROOTS: [usize; 4] = [0, 1, 2, 5];
const E7_ROOTS: [usize; 7] = [0, 1, 2, 3, 4, 5, 6];
const E8_ROOTS: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
const TILDE_E6_ROOTS: [usize; 3] = [0, 1, 2];
const TILDE_E7_ROOTS: [usize; 5] = [0, 1, 2, 3, 7];
const TILDE_E8_ROOTS: [usize; 9] = [0, 1, 2, 3, 4, 5, 6, 7, 8];

fn phi_product(indices: &[u64]) -> IntPoly {
    let mut out = IntPoly::one();
    for &d in indices {
        out = out.mul(&cyclotomic(d));
    }
    out
}

fn nu_from(pair: Option<(i64, i64)>) -> NuValue {
    match pair {
        Some((n, d)) => NuValue::finite(n, d),
        None => NuValue::Infinite,
    }
}

fn make_e(tilde: bool, family: u32, k: usize) -> Result<CatalogueEntry, RootedError> {
    let (spec, data, roots): (FamilySpec, &[EData], &[usize]) = match (tilde, family) {
        (false, 6) => (FamilySpec::E6, &E6_DATA, &E6_ROOTS),
        (false, 7) => (FamilySpec::E7, &E7_DATA, &E7_ROOTS),
        (false, 8) => (FamilySpec::E8, &E8_DATA, &E8_ROOTS),
        (true, 6) => (FamilySpec::TildeE6, &TILDE_E6_DATA, &TILDE_E6_ROOTS),
        (true, 7) => (FamilySpec::TildeE7, &TILDE_E7_DATA, &TILDE_E7_ROOTS),
        (true, 8) => (FamilySpec::TildeE8, &TILDE_E8_DATA, &TILDE_E8_ROOTS),
        _ => {
            return Err(RootedError::UnknownEntry(format!(
                "{}E{family}",
                if tilde { "~" } else { "" }
            )))
        }
    };
    if k == 0 || k > data.len() {
        return Err(RootedError::UnknownEntry(format!(
            "{}E{family}({k})",
            if tilde { "~" } else { "" }
        )));
    }
    let (num_idx, den_idx, nu_pair) = data[k - 1];
    let tree = RootedTree {
        graph: build(spec).expect("fixed family"),
        root: roots[k - 1],
    };
    Ok(entry(
        format!("{}E{family}({k})", if tilde { "~" } else { "" }),
        tree,
        phi_product(num_idx),
        phi_product(den_idx),
        nu_from(nu_pair),
    ))
}

/// `A_n(a,b)`: the `(a+b−1)`-vertex path rooted at its `a`-th vertex
/// (`1 ≤ a ≤ b`); quotient `(z^a−1)(z^b−1) / ((z−1)(z^{a+b}−1))`,
/// ν = ab/(a+b).
fn make_a(a: usize, b: usize) -> Result<CatalogueEntry, RootedError> {
    if a < 1 || a > b {
        return Err(RootedError::UnknownEntry(format!(
            "A{}({a},{b})",
            a + b - 1
        )));
    }
    let n = a + b - 1;
    let tree = RootedTree {
        graph: build(FamilySpec::Path(n)).expect("path"),
        root: a - 1,
    };
    let num = IntPoly::z_pow_minus_one(a).mul(&IntPoly::z_pow_minus_one(b));
    let den = IntPoly::z_pow_minus_one(1).mul(&IntPoly::z_pow_minus_one(a + b));
    let nu_v = NuValue::finite((a * b) as i64, (a + b) as i64);
    Ok(entry(format!("A{n}({a},{b})"), tree, num, den, nu_v))
}

/// `D_n(a,b)`: the fork tree on `n = a+b` vertices rooted at spine vertex
/// `a−1` (`a ≥ 1`, `b ≥ 2`); quotient
/// `(z^a−1)(z^{b−1}+1) / ((z−1)(z^{a+b−1}+1))`, ν = a.
fn make_d(a: usize, b: usize) -> Result<CatalogueEntry, RootedError> {
    let n = a + b;
    if a < 1 || b < 2 || n < 4 {
        return Err(RootedError::UnknownEntry(format!("D{n}({a},{b})")));
    }
    let tree = RootedTree {
        graph: build(FamilySpec::Dn(n)).expect("fork tree"),
        root: a - 1,
    };
    let num = IntPoly::z_pow_minus_one(a).mul(&IntPoly::z_pow_plus_one(b - 1));
    let den = IntPoly::z_pow_minus_one(1).mul(&IntPoly::z_pow_plus_one(a + b - 1));
    Ok(entry(
        format!("D{n}({a},{b})"),
        tree,
        num,
        den,
        NuValue::finite(a as i64, 1),
    ))
}

/// `D_n(0)`: the fork tree rooted at a fork tip; quotient
/// `(z^n−1) / ((z−1)(z+1)(z^{n−1}+1))`, ν = n/4.
fn make_d0(n: usize) -> Result<CatalogueEntry, RootedError> {
    if n < 4 {
        return Err(RootedError::UnknownEntry(format!("D{n}(0)")));
    }
    let tree = RootedTree {
        graph: build(FamilySpec::Dn(n)).expect("fork tree"),
        root: n - 2,
    };
    let num = IntPoly::z_pow_minus_one(n);
    let den = IntPoly::z_pow_minus_one(1)
        .mul(&IntPoly::z_pow_plus_one(1))
        .mul(&IntPoly::z_pow_plus_one(n - 1));
    Ok(entry(
        format!("D{n}(0)"),
        tree,
        num,
        den,
        NuValue::finite(n as i64, 4),
    ))
}

/// `D̃_n(a,b)`: the double-fork tree on `n+1` vertices rooted at spine
/// vertex `a−2` (`2 ≤ a ≤ b`, `a+b = n`); quotient
/// `(z^{a−1}+1)(z^{b−1}+1) / ((z−1)(z^{a+b−2}−1))`, ν = ∞.
fn make_tilde_d(a: usize, b: usize) -> Result<CatalogueEntry, RootedError> {
    let n = a + b;
    if a < 2 || a > b {
        return Err(RootedError::UnknownEntry(format!("~D{n}({a},{b})")));
    }
    let tree = RootedTree {
        graph: build(FamilySpec::TildeDn(n)).expect("double fork"),
        root: a - 2,
    };
    let num = IntPoly::z_pow_plus_one(a - 1).mul(&IntPoly::z_pow_plus_one(b - 1));
    let den = IntPoly::z_pow_minus_one(1).mul(&IntPoly::z_pow_minus_one(a + b - 2));
    Ok(entry(
        format!("~D{n}({a},{b})"),
        tree,
        num,
        den,
        NuValue::Infinite,
    ))
}

/// `D̃_n(0)`: the double-fork tree rooted at a fork tip; quotient
/// `(z^{n−1}+1) / ((z−1)(z+1)(z^{n−2}−1))`, ν = ∞.
fn make_tilde_d0(n: usize) -> Result<CatalogueEntry, RootedError> {
    if n < 4 {
        return Err(RootedError::UnknownEntry(format!("~D{n}(0)")));
    }
    let tree = RootedTree {
        graph: build(FamilySpec::TildeDn(n)).expect("double fork"),
        root: n - 3,
    };
    let num = IntPoly::z_pow_plus_one(n - 1);
    let den = IntPoly::z_pow_minus_one(1)
        .mul(&IntPoly::z_pow_plus_one(1))
        .mul(&IntPoly::z_pow_minus_one(n - 2));
    Ok(entry(
        format!("~D{n}(0)"),
        tree,
        num,
        den,
        NuValue::Infinite,
    ))
}

/// `Ã_{2n−1}`: the 2n-cycle rooted anywhere; quotient
/// `(z^n+1) / ((z−1)(z^n−1))`, ν = ∞.
fn make_tilde_a(odd: usize) -> Result<CatalogueEntry, RootedError> {
    if odd < 3 || odd % 2 == 0 {
        return Err(RootedError::UnknownEntry(format!("~A{odd}")));
    }
    let half = (odd + 1) / 2;
    let tree = RootedTree {
        graph: build(FamilySpec::TildeAn(odd)).expect("even cycle"),
        root: 0,
    };
    let num = IntPoly::z_pow_plus_one(half);
    let den = IntPoly::z_pow_minus_one(1).mul(&IntPoly::z_pow_minus_one(half));
    Ok(entry(format!("~A{odd}"), tree, num, den, NuValue::Infinite))
}

/// The 36 exceptional rooted trees.
pub fn catalogue_fixed() -> Vec<CatalogueEntry> {
    let mut out = Vec::with_capacity(36);
    for (tilde, family, count) in [
        (false, 6u32, 4usize),
        (false, 7, 7),
        (false, 8, 8),
        (true, 6, 3),
        (true, 7, 5),
        (true, 8, 9),
    ] {
        for k in 1..=count {
            out.push(make_e(tilde, family, k).expect("fixed entry"));
        }
    }
    out
}

/// Every parametrized catalogue entry whose underlying tree has at most
/// `max_n` vertices (cycles: at most `max_n` vertices).
pub fn catalogue_families(max_n: usize) -> Vec<CatalogueEntry> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for a in 1..=(n + 1) / 2 {
            out.push(make_a(a, n + 1 - a).expect("path entry"));
        }
    }
    for n in 4..=max_n.max(3) {
        for a in 1..=n - 2 {
            out.push(make_d(a, n - a).expect("fork entry"));
        }
        out.push(make_d0(n).expect("fork-tip entry"));
    }
    for n in 4..=max_n.saturating_sub(1).max(3) {
        for a in 2..=n / 2 {
            out.push(make_tilde_d(a, n - a).expect("double-fork entry"));
        }
        out.push(make_tilde_d0(n).expect("double-fork-tip entry"));
    }
    let mut odd = 3;
    while odd + 1 <= max_n {
        out.push(make_tilde_a(odd).expect("cycle entry"));
        odd += 2;
    }
    out
}

/// Parses a catalogue entry name: `E8(1)`, `~E6(2)`, `A7(2,6)`, `D11(3,8)`,
/// `D9(0)`, `~D10(5,5)`, `~D9(0)`, `~A5`.
pub fn parse_entry(name: &str) -> Result<CatalogueEntry, RootedError> {
    let s = name.trim();
    let unknown = || RootedError::UnknownEntry(s.to_string());
    let (tilde, rest) = match s.strip_prefix('~') {
        Some(r) => (true, r.trim_start()),
        None => (false, s),
    };
    let mut chars = rest.chars();
    let letter = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let after = chars.as_str();
    let (sub, args) = match after.find('(') {
        Some(p) => {
            let close = after.rfind(')').ok_or_else(unknown)?;
            if close < p || !after[close + 1..].trim().is_empty() {
                return Err(unknown());
            }
            let inner = &after[p + 1..close];
            let parsed: Result<Vec<usize>, _> =
                inner.split(',').map(|t| t.trim().parse::<usize>()).collect();
            (&after[..p], Some(parsed.map_err(|_| unknown())?))
        }
        None => (after, None),
    };
    let sub: usize = sub.trim().parse().map_err(|_| unknown())?;
    match (letter, tilde, args.as_deref()) {
        ('E', _, Some([k])) => make_e(tilde, sub as u32, *k),
        ('A', false, Some([a, b])) => {
            if a + b != sub + 1 {
                return Err(unknown());
            }
            make_a(*a, *b)
        }
        ('A', true, None) => make_tilde_a(sub),
        ('D', false, Some([0])) => make_d0(sub),
        ('D', false, Some([a, b])) => {
            if a + b != sub {
                return Err(unknown());
            }
            make_d(*a, *b)
        }
        ('D', true, Some([0])) => make_tilde_d0(sub),
        ('D', true, Some([a, b])) => {
            if a + b != sub {
                return Err(unknown());
            }
            make_tilde_d(*a, *b)
        }
        _ => Err(unknown()),
    }
}

/// Result of sweeping the catalogue: entries checked, any quotient or ν
/// mismatches, and the pairs of distinct exceptional entries sharing one
/// printed quotient.
#[derive(Debug, Clone)]
pub struct CatalogueReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
    pub equal_quotient_pairs: Vec<(String, String)>,
}

/// Recomputes every catalogue quotient by the recursion and compares it, as
/// a reduced rational function, with the printed formula; likewise ν.
/// Families are materialized up to `max_family_n` vertices.
pub fn verify_catalogue(max_family_n: usize) -> CatalogueReport {
    let mut entries = catalogue_fixed();
    entries.extend(catalogue_families(max_family_n));
    let mismatches: Vec<String> = entries
        .par_iter()
        .filter_map(|e| {
            let q = quotient(&e.tree);
            if q != e.expected_quotient {
                return Some(format!(
                    "{}: computed quotient {} ≠ printed {}",
                    e.name, q, e.expected_quotient
                ));
            }
            let v = nu(&e.tree);
            if v != e.expected_nu {
                return Some(format!(
                    "{}: computed ν {} ≠ printed {}",
                    e.name, v, e.expected_nu
                ));
            }
            None
        })
        .collect();
    let fixed = catalogue_fixed();
    let mut equal_quotient_pairs = Vec::new();
    for i in 0..fixed.len() {
        for j in i + 1..fixed.len() {
            if fixed[i].expected_quotient == fixed[j].expected_quotient {
                equal_quotient_pairs.push((fixed[i].name.clone(), fixed[j].name.clone()));
            }
        }
    }
    CatalogueReport {
        checked: entries.len(),
        mismatches,
        equal_quotient_pairs,
    }
}

// ---------------------------------------------------------------------------
// The recipe table: every graph Salem number < 1.3
// ---------------------------------------------------------------------------

/// One recipe row: the Salem number is the `power`-th power of base number
/// `base`, realized by the rooted-tree recipe.  Comma-separated entries are
/// the children of one center (type a); a semicolon separates the child
/// lists of two centers joined by an edge (type b shape).
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub base: u32,
    pub power: u32,
    pub recipe: &'static str,
}

/// The 39 recipes realizing all graph Salem numbers below 1.3 as powers of
/// fifteen base numbers (indexed by their rank among known small Salem
/// numbers).
pub const SALEM_TABLE: &[TableRow] = &[
    TableRow { base: 1, power: 1, recipe: "D9(0)" },
    TableRow { base: 1, power: 2, recipe: "D11(3,8)" },
    TableRow { base: 1, power: 6, recipe: "E7(1),~D4(0);A5(2,4)" },
    TableRow { base: 1, power: 8, recipe: "E6(1),A2(1,2);E7(5),~E6(3)" },
    TableRow { base: 2, power: 2, recipe: "E8(7);E8(7)" },
    TableRow { base: 3, power: 2, recipe: "E7(6);E7(6)" },
    TableRow { base: 3, power: 5, recipe: "A1(1,1),A9(2,8);D15(8,7)" },
    TableRow { base: 4, power: 5, recipe: "E6(4),D7(1,6);D13(3,10)" },
    TableRow { base: 5, power: 2, recipe: "E6(1);E6(1)" },
    TableRow { base: 5, power: 3, recipe: "E6(1);~E8(7)" },
    TableRow { base: 5, power: 4, recipe: "E6(4),D18(12,6)" },
    TableRow { base: 5, power: 5, recipe: "A4(1,4),A4(1,4);D4(1,3),D8(1,7)" },
    TableRow { base: 5, power: 6, recipe: "A1(1,1),A3(2,2);D6(2,4),D8(4,4)" },
    TableRow { base: 7, power: 1, recipe: "D10(0)" },
    TableRow { base: 7, power: 4, recipe: "E6(1),A1(1,1);E6(1),A1(1,1)" },
    TableRow { base: 7, power: 5, recipe: "A7(2,6);D4(1,3),~D10(5,5)" },
    TableRow { base: 7, power: 6, recipe: "E7(3),D7(4,3);D9(1,8)" },
    TableRow { base: 10, power: 3, recipe: "E8(8);D8(0)" },
    TableRow { base: 12, power: 2, recipe: "D5(0);D5(0)" },
    TableRow { base: 12, power: 3, recipe: "E7(5);E7(6)" },
    TableRow { base: 12, power: 5, recipe: "E7(4),~E6(1);A7(3,5)" },
    TableRow { base: 15, power: 2, recipe: "D18(6,12)" },
    TableRow { base: 15, power: 4, recipe: "A1(1,1),D10(0);A1(1,1),D10(0)" },
    TableRow { base: 16, power: 4, recipe: "E7(1),D9(1,8),D8(2,6)" },
    TableRow { base: 19, power: 1, recipe: "D11(0)" },
    TableRow { base: 19, power: 3, recipe: "~E8(8);D4(2,2)" },
    TableRow { base: 19, power: 4, recipe: "E6(4),A1(1,1);E6(4),A1(1,1)" },
    TableRow { base: 19, power: 5, recipe: "~E6(2),A3(2,2);A3(1,3),D6(1,5)" },
    TableRow { base: 21, power: 2, recipe: "E7(1);E7(1)" },
    TableRow { base: 21, power: 5, recipe: "E6(3),A4(2,3);A6(1,6)" },
    TableRow { base: 23, power: 1, recipe: "E8(1)" },
    TableRow { base: 23, power: 2, recipe: "~E8(6)" },
    TableRow { base: 23, power: 3, recipe: "E7(2);D6(1,5)" },
    TableRow { base: 23, power: 4, recipe: "~E7(3),D12(9,3)" },
    TableRow { base: 35, power: 4, recipe: "E6(4),E7(1);A2(1,2),A6(1,6)" },
    TableRow { base: 41, power: 1, recipe: "D13(0)" },
    TableRow { base: 41, power: 2, recipe: "D6(0);D6(0)" },
    TableRow { base: 41, power: 3, recipe: "A7(2,6);D10(5,5)" },
    TableRow { base: 41, power: 4, recipe: "A2(1,2),A2(1,2);A6(2,5),D5(1,4)" },
];

/// Splits on commas at parenthesis depth 0.
fn split_top_level(s: &str) -> Result<Vec<String>, RootedError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(RootedError::BadRecipe(format!(
                        "unbalanced parentheses in `{s}`"
                    )));
                }
                cur.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(RootedError::BadRecipe(format!(
            "unbalanced parentheses in `{s}`"
        )));
    }
    parts.push(cur.trim().to_string());
    if parts.iter().any(String::is_empty) {
        return Err(RootedError::BadRecipe(format!("empty entry in `{s}`")));
    }
    Ok(parts)
}

/// Builds the rooted tree named by a recipe string: comma-separated
/// catalogue entries become children of one center; with a semicolon, the
/// two centers are joined by an edge and the left center is the root.
pub fn build_recipe(recipe: &str) -> Result<RootedTree, RootedError> {
    let sides: Vec<&str> = recipe.split(';').collect();
    if sides.len() > 2 {
        return Err(RootedError::BadRecipe(format!(
            "more than one semicolon in `{recipe}`"
        )));
    }
    let mut built = Vec::new();
    for side in &sides {
        let children: Vec<RootedTree> = split_top_level(side)?
            .iter()
            .map(|name| parse_entry(name).map(|e| e.tree))
            .collect::<Result<_, _>>()?;
        built.push(attach_center(&children));
    }
    match built.len() {
        1 => Ok(built.pop().expect("one side")),
        2 => {
            let right = built.pop().expect("two sides");
            let left = built.pop().expect("two sides");
            Ok(join(&left, &right))
        }
        _ => unreachable!("split yields at least one side"),
    }
}

/// Builds and classifies a recipe in one step.
pub fn table_row(recipe: &str) -> Result<(RootedTree, SalemClassification), RootedError> {
    let t = build_recipe(recipe)?;
    let cls = classify(t.graph());
    Ok((t, cls))
}

// ---------------------------------------------------------------------------
// The squaring law for self-joins
// ---------------------------------------------------------------------------

/// Artifacts of the squaring law for the self-join `T + T`.
#[derive(Debug, Clone)]
pub struct SquareLaw {
    /// The self-joined tree (root = the left copy's root).
    pub doubled: RootedTree,
    /// `den² − z·num²` for the reduced quotient `num/den` of `T`; its
    /// noncyclotomic core is the minimal polynomial of the doubled tree's
    /// Salem number τ.
    pub square_poly: IntPoly,
    /// Minimal polynomial of τ (noncyclotomic core of `square_poly`).
    pub tau_minpoly: IntPoly,
    /// Minimal polynomial of √τ — itself a Salem number.
    pub sqrt_minpoly: IntPoly,
    /// √τ as a certified real algebraic number.
    pub sqrt_tau: RealAlgebraic,
}

/// Squaring law: when the self-join of a rooted tree is a Salem tree with
/// number τ, then with `num/den` the reduced quotient of the tree,
/// `f = den² − z·num²` carries τ's minimal polynomial as its noncyclotomic
/// core, `f(z²) = (den(z²) − z·num(z²))·(den(z²) + z·num(z²))` splits
/// exactly, and the factor with a root beyond 1 is the minimal polynomial
/// of √τ, which is again a Salem number.
pub fn square_law(t: &RootedTree) -> Result<SquareLaw, RootedError> {
    let q = quotient(t);
    let (num, den) = (q.num(), q.den());
    let z = IntPoly::from_i64(&[0, 1]);
    let f = den.mul(den).sub(&z.mul(&num.mul(num)));
    let dz2 = den.subst_z_squared();
    let nz2 = num.subst_z_squared();
    let g = dz2.sub(&z.mul(&nz2));
    let h = dz2.add(&z.mul(&nz2));
    debug_assert_eq!(f.subst_z_squared(), g.mul(&h), "difference-of-squares split");
    let g_core = strip_trivial_factors(&g).core;
    let h_core = strip_trivial_factors(&h).core;
    let one_root_above = |p: &IntPoly| {
        !p.is_constant()
            && sturm_count(p, &Bound::At(BigRational::one()), &Bound::PosInf) == 1
    };
    let sqrt_minpoly = if one_root_above(&g_core) {
        debug_assert!(!one_root_above(&h_core));
        normalize_monic_sign(g_core)
    } else if one_root_above(&h_core) {
        normalize_monic_sign(h_core)
    } else {
        return Err(RootedError::NotSalemTree);
    };
    let sqrt_tau = certify_salem_poly(&sqrt_minpoly).map_err(|_| RootedError::NotSalemTree)?;
    let tau_minpoly = normalize_monic_sign(strip_trivial_factors(&f).core);
    Ok(SquareLaw {
        doubled: join(t, t),
        square_poly: f,
        tau_minpoly,
        sqrt_minpoly,
        sqrt_tau,
    })
}

/// Flips the overall sign so the leading coefficient is positive.
fn normalize_monic_sign(p: IntPoly) -> IntPoly {
    if p.leading_coeff() < BigInt::zero() {
        p.neg()
    } else {
        p
    }
}

//! Simple undirected graphs, named families, exact characteristic
//! polynomials, and spectral counting.
//!
//! Vertex numbering per family is frozen (documented on [`FamilySpec`]) so
//! that outputs are reproducible byte-for-byte.
//!
//! Characteristic polynomials are exact: forests use the classical rooted
//! recurrence (`φ(v) = x·∏φ(cᵢ) − Σⱼ ψ(cⱼ)·∏_{i≠j}φ(cᵢ)`), other graphs use
//! interpolation of `det(kI − A)` at integer points with fraction-free
//! (Bareiss) elimination.  Eigenvalue counting reduces to Sturm counts on the
//! characteristic polynomial; for forests an independent O(n) diagonal
//! congruence count (`tree_count_eigs_above`) is provided as well.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{square_free_decomposition, IntPoly};
use crate::realalg::RealAlgebraic;
use crate::sturm::{sturm_count, Bound};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("invalid vertex or edge reference: {0}")]
    InvalidReference(String),
    #[error("cannot parse graph: {0}")]
    ParseError(String),
}

/// A finite simple undirected graph with vertices `0..n`.
///
/// Edges are stored sorted as `(min, max)` pairs with no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph, GraphError> {
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (i, j) in edges {
            if i == j {
                return Err(GraphError::InvalidReference(format!("loop at vertex {i}")));
            }
            if i >= n || j >= n {
                return Err(GraphError::InvalidReference(format!(
                    "edge ({i},{j}) outside vertex range 0..{n}"
                )));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Graph { n, edges: norm })
    }

    /// Graph with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let e = (i.min(j), i.max(j));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn adj(&self) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            a[i].push(j);
            a[j].push(i);
        }
        a
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degree_sequence().into_iter().max().unwrap_or(0)
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adj();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True iff the graph has no cycles.
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.n
    }

    /// Disjoint union, with `other`'s vertices shifted up by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        for &(i, j) in &other.edges {
            edges.push((i + self.n, j + self.n));
        }
        Graph::new(self.n + other.n, edges).expect("shifted edges stay valid")
    }

    /// BFS two-coloring; the color vector is meaningful only when the first
    /// component of the result is `true`.
    pub fn is_bipartite(&self) -> (bool, Vec<u8>) {
        let adj = self.adj();
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return (false, color);
                    }
                }
            }
        }
        (true, color)
    }

    /// Text format: first line `n`, then one `i j` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for &(i, j) in &self.edges {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    pub fn parse_text(input: &str) -> Result<Graph, GraphError> {
        let mut lines = input.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| GraphError::ParseError("empty input".into()))?
            .trim()
            .parse()
            .map_err(|e| GraphError::ParseError(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let i: usize = it
                .next()
                .ok_or_else(|| GraphError::ParseError(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|e| GraphError::ParseError(format!("bad edge endpoint: {e}")))?;
            let j: usize = it
                .next()
                .ok_or_else(|| GraphError::ParseError(format!("bad edge line {line:?}")))?
                .parse()
                .map_err(|e| GraphError::ParseError(format!("bad edge endpoint: {e}")))?;
            if it.next().is_some() {
                return Err(GraphError::ParseError(format!(
                    "edge line {line:?} has extra tokens"
                )));
            }
            edges.push((i, j));
        }
        Graph::new(n, edges)
    }
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

/// Named graph families with frozen vertex numbering.
///
/// * `Path(n)`: vertices `0..n`, edges `(i, i+1)`; `n ≥ 1`.
/// * `Cycle(n)`: vertices `0..n` in a cycle; `n ≥ 3`.
/// * `Star(d)`: center `0`, leaves `1..=d`; `d ≥ 1`.
/// * `T(a,b,c)`: center `0`; arm of length `a` is `1..=a`, arm `b` is
///   `a+1..=a+b`, arm `c` is `a+b+1..=a+b+c`; all arms ≥ 1.
/// * `Q(a,b,c)`: two branch vertices `L = 0` and `R = b` joined by a path
///   through internal vertices `1..b−1`; `L` carries a pendant `b+1` and an
///   arm of length `a−1` on `b+2..=b+a`; `R` carries a pendant `a+b+1` and an
///   arm of length `c−1` on `a+b+2..=a+b+c`; requires `a ≥ 2`, `b ≥ 1`,
///   `c ≥ 2`.  Total `a+b+c+1` vertices.
/// * `E6/E7/E8`: path `0..=4` / `0..=5` / `0..=6` with an extra vertex
///   (the last index) attached to vertex `2`.
/// * `TildeE6`: path `0..=4`, arm `5−6` attached at `2`.
/// * `TildeE7`: path `0..=6`, vertex `7` attached at `3`.
/// * `TildeE8`: path `0..=7`, vertex `8` attached at `2`.
/// * `Dn(n)`: spine `0..=n−3`, fork tips `n−2, n−1` attached to `n−3`;
///   `n ≥ 4`.
/// * `TildeDn(n)`: spine `0..=n−4`, fork tips `n−3, n−2` at spine vertex 0,
///   fork tips `n−1, n` at spine vertex `n−4`; `n ≥ 4` (`n+1` vertices).
/// * `TildeAn(n)`: the cycle with `n+1` vertices; `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    T(usize, usize, usize),
    Q(usize, usize, usize),
    E6,
    E7,
    E8,
    TildeE6,
    TildeE7,
    TildeE8,
    Dn(usize),
    TildeDn(usize),
    TildeAn(usize),
    Star(usize),
}

/// Helper: path graph edges `0−1−…−(k−1)` offset by nothing.
fn path_edges(k: usize) -> Vec<(usize, usize)> {
    (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

pub fn build(spec: FamilySpec) -> Result<Graph, GraphError> {
    use FamilySpec::*;
    let bad = |msg: String| Err(GraphError::InvalidFamilyParams(msg));
    match spec {
        Path(n) => {
            if n < 1 {
                return bad(format!("Path needs n ≥ 1, got {n}"));
            }
            Graph::new(n, path_edges(n))
        }
        Cycle(n) => {
            if n < 3 {
                return bad(format!("Cycle needs n ≥ 3, got {n}"));
            }
            let mut e = path_edges(n);
            e.push((n - 1, 0));
            Graph::new(n, e)
        }
        Star(d) => {
            if d < 1 {
                return bad(format!("Star needs d ≥ 1, got {d}"));
            }
            Graph::new(d + 1, (1..=d).map(|i| (0, i)).collect())
        }
        T(a, b, c) => {
            if a < 1 || b < 1 || c < 1 {
                return bad(format!("T needs all arms ≥ 1, got ({a},{b},{c})"));
            }
            let mut edges = Vec::new();
            let mut idx = 1;
            for len in [a, b, c] {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, idx));
                    prev = idx;
                    idx += 1;
                }
            }
            Graph::new(a + b + c + 1, edges)
        }
        Q(a, b, c) => {
            if a < 2 || c < 2 || b < 1 {
                return bad(format!("Q needs a ≥ 2, b ≥ 1, c ≥ 2, got ({a},{b},{c})"));
            }
            let l = 0;
            let r = b;
            let mut edges = Vec::new();
            // Central path L = 0, 1, …, b−1, R = b.
            for i in 0..b {
                edges.push((i, i + 1));
            }
            // L's pendant and (a−1)-arm.
            edges.push((l, b + 1));
            let mut prev = l;
            for k in 0..a - 1 {
                edges.push((prev, b + 2 + k));
                prev = b + 2 + k;
            }
            // R's pendant and (c−1)-arm.
            edges.push((r, a + b + 1));
            let mut prev = r;
            for k in 0..c - 1 {
                edges.push((prev, a + b + 2 + k));
                prev = a + b + 2 + k;
            }
            Graph::new(a + b + c + 1, edges)
        }
        E6 => {
            let mut e = path_edges(5);
            e.push((2, 5));
            Graph::new(6, e)
        }
        E7 => {
            let mut e = path_edges(6);
            e.push((2, 6));
            Graph::new(7, e)
        }
        E8 => {
            let mut e = path_edges(7);
            e.push((2, 7));
            Graph::new(8, e)
        }
        TildeE6 => {
            let mut e = path_edges(5);
            e.push((2, 5));
            e.push((5, 6));
            Graph::new(7, e)
        }
        TildeE7 => {
            let mut e = path_edges(7);
            e.push((3, 7));
            Graph::new(8, e)
        }
        TildeE8 => {
            let mut e = path_edges(8);
            e.push((2, 8));
            Graph::new(9, e)
        }
        Dn(n) => {
            if n < 4 {
                return bad(format!("Dn needs n ≥ 4, got {n}"));
            }
            let mut e = path_edges(n - 2);
            e.push((n - 3, n - 2));
            e.push((n - 3, n - 1));
            Graph::new(n, e)
        }
        TildeDn(n) => {
            if n < 4 {
                return bad(format!("tildeDn needs n ≥ 4, got {n}"));
            }
            // Spine 0..=n−4 (n−3 vertices), forks at both spine ends.
            let mut e = path_edges(n - 3);
            e.push((0, n - 3));
            e.push((0, n - 2));
            e.push((n - 4, n - 1));
            e.push((n - 4, n));
            Graph::new(n + 1, e)
        }
        TildeAn(n) => {
            if n < 2 {
                return bad(format!("tildeAn needs n ≥ 2, got {n}"));
            }
            build(Cycle(n + 1))
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Path(n) => write!(f, "Path({n})"),
            Cycle(n) => write!(f, "Cycle({n})"),
            T(a, b, c) => write!(f, "T({a},{b},{c})"),
            Q(a, b, c) => write!(f, "Q({a},{b},{c})"),
            E6 => write!(f, "E6"),
            E7 => write!(f, "E7"),
            E8 => write!(f, "E8"),
            TildeE6 => write!(f, "~E6"),
            TildeE7 => write!(f, "~E7"),
            TildeE8 => write!(f, "~E8"),
            Dn(n) => write!(f, "D({n})"),
            TildeDn(n) => write!(f, "~D({n})"),
            TildeAn(n) => write!(f, "~A({n})"),
            Star(d) => write!(f, "Star({d})"),
        }
    }
}

impl FamilySpec {
    /// Parses the family grammar, case-insensitively: `T(1,2,6)`, `Q(3,13,3)`,
    /// `Path(5)`, `Cycle(6)`, `Star(4)`, `E6`, `~E7` (or `tildeE7`), `D(9)`,
    /// `~D(5)`, `~A(5)`.
    pub fn parse(s: &str) -> Result<FamilySpec, GraphError> {
        let t = s.trim().to_ascii_lowercase().replace(' ', "");
        let (name, args) = match t.find('(') {
            Some(p) => {
                if !t.ends_with(')') {
                    return Err(GraphError::ParseError(format!("unbalanced parens in {s:?}")));
                }
                let inner = &t[p + 1..t.len() - 1];
                let args: Result<Vec<usize>, _> =
                    inner.split(',').map(|x| x.parse::<usize>()).collect();
                (
                    &t[..p],
                    args.map_err(|e| GraphError::ParseError(format!("bad parameters in {s:?}: {e}")))?,
                )
            }
            None => (&t[..], Vec::new()),
        };
        let need = |k: usize, args: &Vec<usize>| -> Result<(), GraphError> {
            if args.len() == k {
                Ok(())
            } else {
                Err(GraphError::ParseError(format!(
                    "{s:?}: expected {k} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        use FamilySpec::*;
        let spec = match name {
            "path" | "p" => {
                need(1, &args)?;
                Path(args[0])
            }
            "cycle" | "c" => {
                need(1, &args)?;
                Cycle(args[0])
            }
            "star" => {
                need(1, &args)?;
                Star(args[0])
            }
            "t" => {
                need(3, &args)?;
                T(args[0], args[1], args[2])
            }
            "q" => {
                need(3, &args)?;
                Q(args[0], args[1], args[2])
            }
            "e6" => E6,
            "e7" => E7,
            "e8" => E8,
            "~e6" | "tildee6" => TildeE6,
            "~e7" | "tildee7" => TildeE7,
            "~e8" | "tildee8" => TildeE8,
            "d" | "dn" => {
                need(1, &args)?;
                Dn(args[0])
            }
            "~d" | "~dn" | "tilded" | "tildedn" => {
                need(1, &args)?;
                TildeDn(args[0])
            }
            "~a" | "~an" | "tildea" | "tildean" => {
                need(1, &args)?;
                TildeAn(args[0])
            }
            other => {
                return Err(GraphError::ParseError(format!(
                    "unknown family name {other:?} in {s:?}"
                )))
            }
        };
        Ok(spec)
    }
}

// ---------------------------------------------------------------------------
// Characteristic polynomial
// ---------------------------------------------------------------------------

/// Exact characteristic polynomial `det(xI − A)`.
pub fn char_poly(g: &Graph) -> IntPoly {
    if g.n == 0 {
        return IntPoly::one();
    }
    let mut result = IntPoly::one();
    for comp in g.components() {
        let sub = component_subgraph(g, &comp);
        let p = if sub.is_forest() {
            tree_char_poly(&sub)
        } else {
            dense_char_poly(&sub)
        };
        result = result.mul(&p);
    }
    result
}

fn component_subgraph(g: &Graph, vertices: &[usize]) -> Graph {
    let mut index = vec![usize::MAX; g.n];
    for (k, &v) in vertices.iter().enumerate() {
        index[v] = k;
    }
    let edges = g
        .edges
        .iter()
        .filter(|(i, j)| index[*i] != usize::MAX && index[*j] != usize::MAX)
        .map(|&(i, j)| (index[i], index[j]))
        .collect();
    Graph::new(vertices.len(), edges).expect("component subgraph is valid")
}

/// Char poly of a (connected or not) forest by the rooted-tree recurrence,
/// computed iteratively so deep paths cannot overflow the stack.
fn tree_char_poly(g: &Graph) -> IntPoly {
    debug_assert!(g.is_forest());
    let adj = g.adj();
    let mut parent = vec![usize::MAX; g.n];
    let mut visited = vec![false; g.n];
    let mut result = IntPoly::one();
    let x = IntPoly::from_i64(&[0, 1]);
    for root in 0..g.n {
        if visited[root] {
            continue;
        }
        // BFS order gives a valid elimination order when reversed.
        let mut order = vec![root];
        visited[root] = true;
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
        let mut phi: Vec<Option<IntPoly>> = vec![None; g.n];
        let mut psi: Vec<Option<IntPoly>> = vec![None; g.n];
        for &v in order.iter().rev() {
            let children: Vec<usize> = adj[v]
                .iter()
                .copied()
                .filter(|&w| parent[w] == v)
                .collect();
            if children.is_empty() {
                phi[v] = Some(x.clone());
                psi[v] = Some(IntPoly::one());
                continue;
            }
            // Prefix/suffix products of the children's φ.
            let k = children.len();
            let mut prefix = vec![IntPoly::one(); k + 1];
            for (i, &c) in children.iter().enumerate() {
                prefix[i + 1] = prefix[i].mul(phi[c].as_ref().unwrap());
            }
            let mut suffix = vec![IntPoly::one(); k + 1];
            for i in (0..k).rev() {
                suffix[i] = suffix[i + 1].mul(phi[children[i]].as_ref().unwrap());
            }
            let all = prefix[k].clone();
            let mut acc = x.mul(&all);
            for (i, &c) in children.iter().enumerate() {
                let others = prefix[i].mul(&suffix[i + 1]);
                acc = acc.sub(&psi[c].as_ref().unwrap().mul(&others));
            }
            phi[v] = Some(acc);
            psi[v] = Some(all);
        }
        result = result.mul(phi[root].as_ref().unwrap());
    }
    result
}

/// Char poly by exact interpolation: `det(kI − A)` for `k = 0..=n` via
/// fraction-free Bareiss elimination, then exact Lagrange interpolation.
fn dense_char_poly(g: &Graph) -> IntPoly {
    let n = g.n;
    let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|k| {
            let mut m = vec![vec![BigInt::zero(); n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = k.clone();
            }
            for &(i, j) in &g.edges {
                m[i][j] = BigInt::from(-1);
                m[j][i] = BigInt::from(-1);
            }
            bareiss_det(m)
        })
        .collect();
    interpolate_integer(&points, &values)
}

/// Exact determinant by Bareiss fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // Find a pivot row below.
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Lagrange interpolation through integer points, validated to be integral.
fn interpolate_integer(points: &[BigInt], values: &[BigInt]) -> IntPoly {
    let n = points.len();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in 0..n {
        // Build ∏_{j≠i} (x − x_j) iteratively.
        let mut basis: Vec<BigRational> = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if j == i {
                continue;
            }
            let xj = BigRational::from_integer(points[j].clone());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(&points[i] - &points[j]);
        }
        let scale = BigRational::from_integer(values[i].clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "char poly interpolation must be integral");
                c.to_integer()
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Eigenvalue counting
// ---------------------------------------------------------------------------

/// Number of **distinct** adjacency eigenvalues in `(a, b]`.
pub fn count_eigs(g: &Graph, a: &Bound, b: &Bound) -> usize {
    count_eigs_poly(&char_poly(g), a, b)
}

/// Same, starting from a precomputed characteristic polynomial.
pub fn count_eigs_poly(chi: &IntPoly, a: &Bound, b: &Bound) -> usize {
    sturm_count(chi, a, b)
}

/// Number of adjacency eigenvalues in `(a, b]` counted **with multiplicity**.
pub fn count_eigs_with_multiplicity(g: &Graph, a: &Bound, b: &Bound) -> usize {
    let chi = char_poly(g);
    square_free_decomposition(&chi)
        .iter()
        .map(|(f, m)| m * sturm_count(f, a, b))
        .sum()
}

/// Eigenvalues of a forest strictly greater than `t`, with multiplicity, by
/// an O(n) diagonal congruence of `A − tI` (no polynomials involved) — an
/// independent cross-check for the Sturm route.
///
/// Panics if `g` is not a forest.
pub fn tree_count_eigs_above(g: &Graph, t: &BigRational) -> usize {
    assert!(g.is_forest(), "diagonal congruence count requires a forest");
    let adj = g.adj();
    let mut visited = vec![false; g.n];
    let mut parents = vec![usize::MAX; g.n];
    let mut d: Vec<BigRational> = vec![BigRational::zero(); g.n];
    let mut cut = vec![false; g.n]; // v's edge to its parent removed
    let mut positives = 0usize;
    for root in 0..g.n {
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
        // Leaves-to-root elimination of A − tI.  When a child carries a zero
        // diagonal entry, exactly one such child is rewritten to 2, the
        // current vertex becomes −1/2, and its own upward edge is severed;
        // any remaining zero children stay zero (they count the eigenvalue
        // multiplicity of t itself).
        for &v in order.iter().rev() {
            let active: Vec<usize> = adj[v]
                .iter()
                .copied()
                .filter(|&w| parents[w] == v && !cut[w])
                .collect();
            if let Some(&c0) = active.iter().find(|&&w| d[w].is_zero()) {
                d[c0] = BigRational::from_integer(BigInt::from(2));
                d[v] = BigRational::new(BigInt::from(-1), BigInt::from(2));
                if parents[v] != usize::MAX {
                    cut[v] = true;
                }
            } else {
                let mut val = -t.clone();
                for &w in &active {
                    val -= BigRational::one() / &d[w];
                }
                d[v] = val;
            }
        }
        for &v in &order {
            if d[v].is_positive() {
                positives += 1;
            }
        }
    }
    positives
}

/// The index (largest eigenvalue) as an exactly refinable real algebraic
/// number.
pub fn index(g: &Graph) -> RealAlgebraic {
    assert!(g.n >= 1, "index of the empty graph");
    RealAlgebraic::largest_root(&char_poly(g)).expect("adjacency spectra are real")
}

// ---------------------------------------------------------------------------
// Graph edits
// ---------------------------------------------------------------------------

pub fn delete_vertex(g: &Graph, v: usize) -> Result<Graph, GraphError> {
    if v >= g.n {
        return Err(GraphError::InvalidReference(format!(
            "vertex {v} outside 0..{}",
            g.n
        )));
    }
    let edges = g
        .edges
        .iter()
        .filter(|&&(i, j)| i != v && j != v)
        .map(|&(i, j)| {
            (
                if i > v { i - 1 } else { i },
                if j > v { j - 1 } else { j },
            )
        })
        .collect();
    Graph::new(g.n - 1, edges)
}

pub fn subdivide_edge(g: &Graph, e: (usize, usize)) -> Result<Graph, GraphError> {
    let norm = (e.0.min(e.1), e.0.max(e.1));
    if !g.has_edge(norm.0, norm.1) {
        return Err(GraphError::InvalidReference(format!(
            "edge ({},{}) not present",
            e.0, e.1
        )));
    }
    let mut edges: Vec<(usize, usize)> =
        g.edges.iter().copied().filter(|&x| x != norm).collect();
    edges.push((norm.0, g.n));
    edges.push((norm.1, g.n));
    Graph::new(g.n + 1, edges)
}

/// Attaches an `m`-vertex path whose first vertex is joined to `v`.
pub fn attach_path(g: &Graph, v: usize, m: usize) -> Result<Graph, GraphError> {
    if v >= g.n {
        return Err(GraphError::InvalidReference(format!(
            "vertex {v} outside 0..{}",
            g.n
        )));
    }
    let mut edges = g.edges.clone();
    let mut prev = v;
    for k in 0..m {
        edges.push((prev, g.n + k));
        prev = g.n + k;
    }
    Graph::new(g.n + m, edges)
}

/// Line graph: vertices are the edges of `g` (in sorted order), adjacent when
/// they share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let m = g.edges.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = g.edges[i];
            let (c, d) = g.edges[j];
            if a == c || a == d || b == c || b == d {
                edges.push((i, j));
            }
        }
    }
    Graph::new(m, edges).expect("line graph construction is valid")
}

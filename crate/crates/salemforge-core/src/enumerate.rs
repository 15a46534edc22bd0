//! Exhaustive enumeration of small graphs and rooted trees, one
//! representative per isomorphism class.
//!
//! Connected graphs are generated by vertex augmentation: every connected
//! graph on `n` vertices arises from a connected graph on `n − 1` vertices
//! by adding one vertex joined to a nonempty subset (delete any non-cut
//! vertex to see this).  Candidates are deduplicated by a canonical form:
//! the minimum upper-triangle adjacency bitstring over all vertex orderings
//! compatible with iterated neighborhood-color refinement.
//!
//! Rooted trees are generated directly as level sequences in decreasing
//! lexicographic order (the constant-amortized-time successor rule).

use rayon::prelude::*;

use crate::graph::Graph;
use crate::rooted::RootedTree;

/// Bit index of the vertex pair `i < j` in the packed upper triangle.
fn pair_bit(i: usize, j: usize) -> u32 {
    debug_assert!(i < j);
    (j * (j - 1) / 2 + i) as u32
}

/// Packs a graph on `n ≤ 11` vertices into its upper-triangle bitstring.
#[cfg(test)]
fn pack(n: usize, edges: &[(usize, usize)]) -> u64 {
    debug_assert!(n * (n - 1) / 2 <= 64);
    let mut mask = 0u64;
    for &(u, v) in edges {
        mask |= 1 << pair_bit(u.min(v), u.max(v));
    }
    mask
}

/// Rebuilds the graph a canonical key encodes.
pub fn graph_from_key(n: usize, key: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if key >> pair_bit(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).expect("decoded edge list is simple")
}

/// Iterated neighborhood-color refinement: start from degrees, repeatedly
/// split classes by the multiset of neighbor colors, stop at a fixed point.
/// The resulting coloring is an isomorphism invariant.
fn refine_colors(adj: &[Vec<usize>]) -> Vec<u32> {
    let n = adj.len();
    let mut colors: Vec<u32> = adj.iter().map(|a| a.len() as u32).collect();
    let mut classes = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut nc: Vec<u32> = adj[v].iter().map(|&w| colors[w]).collect();
            nc.sort_unstable();
            sigs.push((colors[v], nc));
        }
        let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).expect("own signature present") as u32)
            .collect();
        let next_classes = sorted.len();
        if next_classes == classes {
            return next;
        }
        colors = next;
        classes = next_classes;
    }
}

/// Canonical form of a graph on at most 11 vertices: the minimum packed
/// adjacency bitstring over all vertex orderings that list the refinement
/// color classes in color order (isomorphic graphs share the invariant
/// coloring, hence the same minimum).
pub fn canonical_key(g: &Graph) -> u64 {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let adj = g.adj();
    let colors = refine_colors(&adj);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<u32> = colors.clone();
    seen.sort_unstable();
    seen.dedup();
    for &c in &seen {
        cells.push((0..n).filter(|&v| colors[v] == c).collect());
    }
    let edges = g.edges();
    let mut best = u64::MAX;
    let mut position = vec![0usize; n];
    assign_cells(&mut cells, 0, 0, &mut position, edges, &mut best);
    best
}

/// Recursively fixes the ordering inside each color cell and keeps the
/// minimum packed bitstring seen.
fn assign_cells(
    cells: &mut [Vec<usize>],
    cell_idx: usize,
    offset: usize,
    position: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut u64,
) {
    if cell_idx == cells.len() {
        let mut mask = 0u64;
        for &(u, v) in edges {
            let (a, b) = (position[u], position[v]);
            mask |= 1 << pair_bit(a.min(b), a.max(b));
        }
        if mask < *best {
            *best = mask;
        }
        return;
    }
    let len = cells[cell_idx].len();
    permute_cell(cells, cell_idx, 0, len, offset, position, edges, best);
}

/// Heap-style in-place permutation of one cell, descending into the next
/// cell at each complete arrangement.
#[allow(clippy::too_many_arguments)]
fn permute_cell(
    cells: &mut [Vec<usize>],
    cell_idx: usize,
    k: usize,
    len: usize,
    offset: usize,
    position: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut u64,
) {
    if k == len {
        for (i, &v) in cells[cell_idx].iter().enumerate() {
            position[v] = offset + i;
        }
        assign_cells(cells, cell_idx + 1, offset + len, position, edges, best);
        return;
    }
    for i in k..len {
        cells[cell_idx].swap(k, i);
        permute_cell(cells, cell_idx, k + 1, len, offset, position, edges, best);
        cells[cell_idx].swap(k, i);
    }
}

/// All connected graphs on exactly `n ≤ 11` vertices, one canonical
/// representative per isomorphism class, in increasing key order.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    connected_levels(n).pop().expect("n ≥ 1 level exists")
}

/// All connected graphs on `1..=n` vertices, smallest sizes first.
pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    connected_levels(n).into_iter().flatten().collect()
}

fn connected_levels(n: usize) -> Vec<Vec<Graph>> {
    assert!(n >= 1 && n <= 11, "enumeration supports 1..=11 vertices");
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::empty(1)]];
    for k in 2..=n {
        let parents = &levels[k - 2];
        let mut keys: Vec<u64> = parents
            .par_iter()
            .flat_map_iter(|g| {
                let base = g.edges().to_vec();
                (1u64..1 << (k - 1)).map(move |subset| {
                    let mut edges = base.clone();
                    for v in 0..k - 1 {
                        if subset >> v & 1 == 1 {
                            edges.push((v, k - 1));
                        }
                    }
                    canonical_key(&Graph::new(k, edges).expect("augmented simple graph"))
                })
            })
            .collect();
        keys.sort_unstable();
        keys.dedup();
        levels.push(keys.into_iter().map(|key| graph_from_key(k, key)).collect());
    }
    levels
}

/// All rooted trees on exactly `n` vertices, one per isomorphism class,
/// generated as canonical level sequences in decreasing lexicographic
/// order.  Vertex 0 is the root; parents precede children.
pub fn rooted_trees(n: usize) -> Vec<RootedTree> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut seq: Vec<usize> = (1..=n).collect();
    loop {
        out.push(tree_from_levels(&seq));
        // Stop at the star [1, 2, 2, …, 2].
        let Some(p) = (0..n).rev().find(|&i| seq[i] > 2) else {
            break;
        };
        let q = (0..p).rev().find(|&i| seq[i] == seq[p] - 1).expect("parent level exists");
        for i in p..n {
            seq[i] = seq[i - (p - q)];
        }
    }
    out
}

/// Rebuilds the rooted tree a level sequence encodes: the parent of
/// position `i` is the nearest earlier position one level up.
fn tree_from_levels(seq: &[usize]) -> RootedTree {
    let n = seq.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let parent = (0..i).rev().find(|&j| seq[j] == seq[i] - 1).expect("valid level sequence");
        edges.push((parent, i));
    }
    let graph = Graph::new(n, edges).expect("level sequence yields a tree");
    RootedTree::new(graph, 0).expect("connected and acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build, FamilySpec};

    #[test]
    fn connected_graph_counts() {
        // Classical counts of connected graphs up to isomorphism.
        let expected = [1usize, 1, 2, 6, 21, 112, 853, 11117];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(connected_graphs(i + 1).len(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn rooted_tree_counts() {
        let expected = [1usize, 1, 2, 4, 9, 20, 48, 115];
        for (i, &want) in expected.iter().enumerate() {
            assert_eq!(rooted_trees(i + 1).len(), want, "n = {}", i + 1);
        }
    }

    #[test]
    fn canonical_key_is_isomorphism_invariant() {
        // Relabeling a path must not change the key; a cycle must differ.
        let p4 = build(FamilySpec::Path(4)).unwrap();
        let p4_scrambled = Graph::new(4, vec![(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_key(&p4), canonical_key(&p4_scrambled));
        let c4 = build(FamilySpec::Cycle(4)).unwrap();
        assert_ne!(canonical_key(&p4), canonical_key(&c4));
        // Keys are idempotent: decoding and re-canonicalizing is stable.
        for g in connected_graphs(5) {
            assert_eq!(canonical_key(&g), pack(g.n(), g.edges()));
        }
    }

    #[test]
    fn enumerated_graphs_are_connected_and_distinct() {
        let graphs = connected_graphs(6);
        for g in &graphs {
            assert!(g.is_connected());
            assert_eq!(g.n(), 6);
        }
        let mut keys: Vec<u64> = graphs.iter().map(canonical_key).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), graphs.len());
    }

    #[test]
    fn rooted_trees_cover_both_three_vertex_shapes() {
        let trees = rooted_trees(3);
        let degrees_of_root: Vec<usize> = trees
            .iter()
            .map(|t| t.graph().adj()[t.root()].len())
            .collect();
        // Path rooted at an end (degree 1) and rooted at the middle
        // (degree 2).
        assert!(degrees_of_root.contains(&1));
        assert!(degrees_of_root.contains(&2));
    }

    #[test]
    fn up_to_collects_all_levels() {
        assert_eq!(connected_graphs_up_to(4).len(), 1 + 1 + 2 + 6);
    }
}

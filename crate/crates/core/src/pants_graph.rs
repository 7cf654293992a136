//! Trivalent trees, pants gluing graphs and combinatorial curve paths.
//!
//! A [`GluingGraph`] records which boundary slots of which pieces are glued,
//! with a Fenchel–Nielsen length and twist on every glued cuff. Pieces are
//! usually pairs of pants; the rotation and chain families use `n`-holed
//! spheres, so a piece carries its number of holes.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::hyp_trig::HypLength;
use crate::math;

#[derive(Clone, Debug, PartialEq)]
pub enum GraphError {
    /// Depth-0 binary trees do not exist.
    ZeroDepth,
    /// Genus below the smallest tree surface.
    GenusTooSmall(usize),
    EmptyTree,
    /// A vertex whose degree is neither 1 nor 3.
    NotTrivalent {
        vertex: usize,
        degree: usize,
    },
    Disconnected,
    /// A slot is glued twice, never, or does not exist.
    SlotMismatch {
        piece: usize,
        slot: usize,
    },
    BadEdge(usize),
    /// The path is empty, so it is not a curve.
    EmptyPath,
    /// Consecutive crossings do not share a piece.
    BrokenPath {
        position: usize,
    },
    NotClosed,
    UnknownPiece(usize),
    NoLeafHandles,
    InvalidLength(f64),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroDepth => write!(f, "binary tree depth must be at least 1"),
            Self::GenusTooSmall(g) => write!(f, "tree surfaces need genus at least 3, got {g}"),
            Self::EmptyTree => write!(f, "tree has fewer than two vertices"),
            Self::NotTrivalent { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}, expected 1 or 3")
            }
            Self::Disconnected => write!(f, "graph is not connected"),
            Self::SlotMismatch { piece, slot } => {
                write!(f, "slot {slot} of piece {piece} is not glued exactly once")
            }
            Self::BadEdge(e) => write!(f, "edge {e} does not exist"),
            Self::EmptyPath => write!(f, "empty path is not a curve"),
            Self::BrokenPath { position } => {
                write!(f, "crossings {position} and {} do not share a piece", position + 1)
            }
            Self::NotClosed => write!(f, "path does not end where it starts"),
            Self::UnknownPiece(p) => write!(f, "piece {p} does not exist"),
            Self::NoLeafHandles => write!(f, "graph has no leaf handles"),
            Self::InvalidLength(v) => write!(f, "cuff length {v} is not positive"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A finite tree whose vertices have degree 1 (leaves) or 3, with a
/// designated center vertex `O`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TrivalentTree {
    /// Neighbour lists. For every vertex except the center the first entry is
    /// the parent; the rest are children, left to right.
    adjacency: Vec<Vec<usize>>,
    center: usize,
}

impl TrivalentTree {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Leaves in breadth-first order from the center, children left to right.
    pub fn leaves(&self) -> Vec<usize> {
        self.bfs_order().into_iter().filter(|&v| self.degree(v) <= 1).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            for &w in nbrs {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// Graph distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Smallest graph distance from the center to a leaf.
    pub fn center_to_leaf(&self) -> usize {
        let dist = self.distances_from(self.center);
        self.leaves().iter().map(|&l| dist[l]).min().unwrap_or(0)
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = VecDeque::new();
        seen[self.center] = true;
        queue.push_back(self.center);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Checks the structural invariants: connected, acyclic, degrees 1 or 3.
    pub fn validate(&self) -> Result<(), GraphError> {
        let n = self.vertex_count();
        if n < 2 {
            return Err(GraphError::EmptyTree);
        }
        let edge_count: usize = self.adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        if edge_count != n - 1 || self.bfs_order().len() != n {
            return Err(GraphError::Disconnected);
        }
        for v in 0..n {
            let d = self.degree(v);
            if d != 1 && d != 3 {
                return Err(GraphError::NotTrivalent { vertex: v, degree: d });
            }
        }
        Ok(())
    }

    /// Is `sub` embedded in `self` with centers matched and child order
    /// preserved? Both trees must have been grown from their centers.
    pub fn contains_rooted(&self, sub: &TrivalentTree) -> bool {
        fn walk(big: &TrivalentTree, small: &TrivalentTree, bv: usize, sv: usize, root: bool) -> bool {
            let skip = usize::from(!root);
            let bc = &big.adjacency[bv][skip.min(big.adjacency[bv].len())..];
            let sc = &small.adjacency[sv][skip.min(small.adjacency[sv].len())..];
            if sc.is_empty() {
                return true;
            }
            if bc.len() != sc.len() {
                return false;
            }
            bc.iter().zip(sc).all(|(&b, &s)| walk(big, small, b, s, false))
        }
        walk(self, sub, self.center, sub.center, true)
    }
}

struct TreeBuilder {
    adjacency: Vec<Vec<usize>>,
}

impl TreeBuilder {
    fn add_child(&mut self, parent: usize) -> usize {
        let v = self.adjacency.len();
        self.adjacency.push(vec![parent]);
        self.adjacency[parent].push(v);
        v
    }

    fn grow_binary(&mut self, root: usize, depth: usize) {
        if depth <= 1 {
            return;
        }
        for _ in 0..2 {
            let child = self.add_child(root);
            self.grow_binary(child, depth - 1);
        }
    }
}

/// Three full binary trees of depth `n` joined at their roots by the center
/// vertex `O`: `3(2ⁿ − 1) + 1` vertices and `3·2ⁿ⁻¹` leaves.
pub fn build_joined_tree(n: usize) -> Result<TrivalentTree, GraphError> {
    if n == 0 {
        return Err(GraphError::ZeroDepth);
    }
    let mut b = TreeBuilder { adjacency: vec![Vec::new()] };
    for _ in 0..3 {
        let root = b.add_child(0);
        b.grow_binary(root, n);
    }
    Ok(TrivalentTree { adjacency: b.adjacency, center: 0 })
}

/// The `n` with `3·2ⁿ⁻¹ ≤ g < 3·2ⁿ`.
pub fn tree_depth_for_genus(g: usize) -> Result<usize, GraphError> {
    if g < 3 {
        return Err(GraphError::GenusTooSmall(g));
    }
    let mut n = 1;
    while 3usize << n <= g {
        n += 1;
    }
    Ok(n)
}

/// A tree with exactly `g` leaves sandwiched between the joined trees of
/// depth `n` and `n + 1`. Leaves of the depth-`n` tree are split into
/// cherries breadth-first, left to right, until `g` leaves exist.
pub fn build_tree_for_genus(g: usize) -> Result<TrivalentTree, GraphError> {
    let n = tree_depth_for_genus(g)?;
    let base = build_joined_tree(n)?;
    let leaves = base.leaves();
    let extra = g - leaves.len();
    let mut b = TreeBuilder { adjacency: base.adjacency };
    for &leaf in leaves.iter().take(extra) {
        b.add_child(leaf);
        b.add_child(leaf);
    }
    Ok(TrivalentTree { adjacency: b.adjacency, center: 0 })
}

/// One boundary slot of one piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Slot {
    pub piece: usize,
    pub slot: usize,
}

/// A glued cuff: slot `a` is identified with slot `b` with the given
/// Fenchel–Nielsen length and twist.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CuffEdge {
    pub a: Slot,
    pub b: Slot,
    pub length: f64,
    pub twist: f64,
}

impl CuffEdge {
    pub fn is_self_loop(&self) -> bool {
        self.a.piece == self.b.piece
    }
}

/// Pants decomposition multigraph.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GluingGraph {
    /// Number of boundary slots of each piece (3 for a pair of pants).
    pieces: Vec<usize>,
    edges: Vec<CuffEdge>,
    leaf_handles: BTreeSet<usize>,
    center: Option<usize>,
}

impl GluingGraph {
    /// Validates that every slot is glued exactly once and the graph is
    /// connected.
    pub fn new(
        pieces: Vec<usize>,
        edges: Vec<CuffEdge>,
        leaf_handles: BTreeSet<usize>,
        center: Option<usize>,
    ) -> Result<Self, GraphError> {
        if pieces.is_empty() {
            return Err(GraphError::EmptyTree);
        }
        let mut used: Vec<Vec<u8>> = pieces.iter().map(|&h| vec![0u8; h]).collect();
        for e in &edges {
            if !(e.length.is_finite() && e.length > 0.0) {
                return Err(GraphError::InvalidLength(e.length));
            }
            for s in [e.a, e.b] {
                let count = used
                    .get_mut(s.piece)
                    .and_then(|v| v.get_mut(s.slot))
                    .ok_or(GraphError::SlotMismatch { piece: s.piece, slot: s.slot })?;
                *count += 1;
            }
        }
        for (piece, slots) in used.iter().enumerate() {
            if let Some(slot) = slots.iter().position(|&c| c != 1) {
                return Err(GraphError::SlotMismatch { piece, slot });
            }
        }
        if let Some(&bad) = leaf_handles.iter().find(|&&e| e >= edges.len() || !edges[e].is_self_loop()) {
            return Err(GraphError::BadEdge(bad));
        }
        if let Some(c) = center {
            if c >= pieces.len() {
                return Err(GraphError::UnknownPiece(c));
            }
        }
        let graph = Self { pieces, edges, leaf_handles, center };
        if graph.distances_from(0).contains(&usize::MAX) {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn holes(&self, piece: usize) -> usize {
        self.pieces[piece]
    }

    pub fn edges(&self) -> &[CuffEdge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Option<&CuffEdge> {
        self.edges.get(e)
    }

    pub fn leaf_handles(&self) -> &BTreeSet<usize> {
        &self.leaf_handles
    }

    pub fn center(&self) -> Option<usize> {
        self.center
    }

    pub fn is_pants_graph(&self) -> bool {
        self.pieces.iter().all(|&h| h == 3)
    }

    /// Edge glued at a given slot.
    pub fn edge_at(&self, slot: Slot) -> Option<(usize, &CuffEdge)> {
        self.edges.iter().enumerate().find(|(_, e)| e.a == slot || e.b == slot)
    }

    /// Genus from the Euler characteristic, `χ = Σ (2 − holes)`.
    pub fn genus(&self) -> usize {
        let chi: isize = self.pieces.iter().map(|&h| 2 - h as isize).sum();
        (2 - chi) as usize / 2
    }

    /// Genus from the cycle rank, `1 + #edges − #pieces`. Agrees with
    /// [`genus`](Self::genus) for pants graphs.
    pub fn genus_from_cycle_rank(&self) -> usize {
        1 + self.edges.len() - self.pieces.len()
    }

    /// Graph distances between pieces, ignoring self-loops.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.pieces.len()];
        for e in &self.edges {
            if !e.is_self_loop() {
                adj[e.a.piece].push(e.b.piece);
                adj[e.b.piece].push(e.a.piece);
            }
        }
        let mut dist = vec![usize::MAX; self.pieces.len()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Same surface with one cuff's twist replaced.
    pub fn with_twist(&self, edge: usize, twist: f64) -> Result<Self, GraphError> {
        let mut out = self.clone();
        out.edges.get_mut(edge).ok_or(GraphError::BadEdge(edge))?.twist = twist;
        Ok(out)
    }
}

/// Replace trivalent vertices by pairs of pants and leaves by one-holed tori.
///
/// Every cuff has length `2·arccosh 2` and twist 0, so each pants is two
/// regular right-angled hexagons. Slot 0 of every non-center piece faces its
/// parent; a leaf's slots 1 and 2 are glued to each other.
pub fn surface_from_tree(tree: &TrivalentTree) -> Result<GluingGraph, GraphError> {
    tree.validate()?;
    let length = 2.0 * math::acosh2();
    let n = tree.vertex_count();
    let mut edges = Vec::new();
    let mut leaf_handles = BTreeSet::new();
    for v in 0..n {
        let nbrs = tree.neighbors(v);
        for (slot, &w) in nbrs.iter().enumerate() {
            if v < w {
                let w_slot = tree.neighbors(w).iter().position(|&x| x == v).expect("tree adjacency is symmetric");
                edges.push(CuffEdge {
                    a: Slot { piece: v, slot },
                    b: Slot { piece: w, slot: w_slot },
                    length,
                    twist: 0.0,
                });
            }
        }
        if nbrs.len() == 1 {
            leaf_handles.insert(edges.len());
            edges.push(CuffEdge { a: Slot { piece: v, slot: 1 }, b: Slot { piece: v, slot: 2 }, length, twist: 0.0 });
        }
    }
    GluingGraph::new(vec![3; n], edges, leaf_handles, Some(tree.center()))
}

/// Crossing of a glued cuff; `forward` goes from slot `a`'s piece to slot
/// `b`'s piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Crossing {
    pub edge: usize,
    pub forward: bool,
}

/// Combinatorial shadow of a curve: the cuffs it crosses, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurvePath {
    crossings: Vec<Crossing>,
    closed: bool,
}

impl CurvePath {
    /// Checks that consecutive crossings share a piece and, for closed
    /// paths, that the last crossing returns to the first piece.
    pub fn new(graph: &GluingGraph, crossings: Vec<Crossing>, closed: bool) -> Result<Self, GraphError> {
        if crossings.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        let ends = |c: &Crossing| -> Result<(usize, usize), GraphError> {
            let e = graph.edge(c.edge).ok_or(GraphError::BadEdge(c.edge))?;
            Ok(if c.forward { (e.a.piece, e.b.piece) } else { (e.b.piece, e.a.piece) })
        };
        for (i, pair) in crossings.windows(2).enumerate() {
            if ends(&pair[0])?.1 != ends(&pair[1])?.0 {
                return Err(GraphError::BrokenPath { position: i });
            }
        }
        let first = ends(&crossings[0])?.0;
        let last = ends(crossings.last().expect("non-empty"))?.1;
        if closed && first != last {
            return Err(GraphError::NotClosed);
        }
        Ok(Self { crossings, closed })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Pieces the path enters or leaves.
    pub fn pieces_visited(&self, graph: &GluingGraph) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for c in &self.crossings {
            if let Some(e) = graph.edge(c.edge) {
                out.insert(e.a.piece);
                out.insert(e.b.piece);
            }
        }
        out
    }
}

/// Sufficient criterion for a separating curve: a closed path that never
/// crosses a leaf handle stays in the sphere left after removing the leaf
/// tori. `false` means "not certified", not "non-separating".
pub fn separating_check(graph: &GluingGraph, path: &CurvePath) -> Result<bool, GraphError> {
    if path.crossings.is_empty() {
        return Err(GraphError::EmptyPath);
    }
    if !path.closed {
        return Err(GraphError::NotClosed);
    }
    Ok(!path.crossings.iter().any(|c| graph.leaf_handles.contains(&c.edge)))
}

/// Necessary condition for filling: every piece is visited by some path.
/// Returns whether all pieces are covered and the set of missed pieces.
pub fn coverage_check(graph: &GluingGraph, paths: &[CurvePath]) -> Result<(bool, BTreeSet<usize>), GraphError> {
    if paths.iter().any(|p| !p.closed) {
        return Err(GraphError::NotClosed);
    }
    let mut missed: BTreeSet<usize> = (0..graph.piece_count()).collect();
    for p in paths {
        for v in p.pieces_visited(graph) {
            missed.remove(&v);
        }
    }
    Ok((missed.is_empty(), missed))
}

/// Lower bound for a curve through `center` that must reach a leaf torus:
/// (distance from `center` to the nearest leaf piece) × `arccosh 2`.
pub fn min_length_through_center(graph: &GluingGraph, center: usize) -> Result<HypLength, GraphError> {
    if center >= graph.piece_count() {
        return Err(GraphError::UnknownPiece(center));
    }
    let dist = graph.distances_from(center);
    let nearest =
        graph.leaf_handles.iter().map(|&e| dist[graph.edges[e].a.piece]).min().ok_or(GraphError::NoLeafHandles)?;
    // A curve starting in a leaf piece still needs one seam to leave it.
    HypLength::new(nearest.max(1) as f64 * math::acosh2()).map_err(|_| GraphError::NoLeafHandles)
}

/// The closed path that loops once around a leaf handle.
pub fn handle_loop(graph: &GluingGraph, edge: usize) -> Result<CurvePath, GraphError> {
    if !graph.leaf_handles.contains(&edge) {
        return Err(GraphError::BadEdge(edge));
    }
    CurvePath::new(graph, vec![Crossing { edge, forward: true }], true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn joined_tree_counts() {
        for n in 1..=10usize {
            let t = build_joined_tree(n).unwrap();
            t.validate().unwrap();
            assert_eq!(t.vertex_count(), 3 * ((1 << n) - 1) + 1, "n = {n}");
            assert_eq!(t.leaves().len(), 3 * (1 << (n - 1)), "n = {n}");
            let dist = t.distances_from(t.center());
            assert!(t.leaves().iter().all(|&l| dist[l] == n));
            assert_eq!(t.center_to_leaf(), n);
        }
        let t = build_joined_tree(1).unwrap();
        assert_eq!((t.vertex_count(), t.leaves().len()), (4, 3));
        let t = build_joined_tree(2).unwrap();
        assert_eq!((t.vertex_count(), t.leaves().len(), t.center_to_leaf()), (10, 6, 2));
        assert_eq!(build_joined_tree(0), Err(GraphError::ZeroDepth));
    }

    #[test]
    fn genus_trees() {
        assert_eq!(build_tree_for_genus(6).unwrap(), build_joined_tree(2).unwrap());
        assert_eq!(build_tree_for_genus(3).unwrap(), build_joined_tree(1).unwrap());

        let t4 = build_tree_for_genus(4).unwrap();
        t4.validate().unwrap();
        assert_eq!(t4.leaves().len(), 4);
        assert!(t4.contains_rooted(&build_joined_tree(1).unwrap()));
        assert!(t4.center_to_leaf() >= 1);

        let t7 = build_tree_for_genus(7).unwrap();
        t7.validate().unwrap();
        assert_eq!(t7.leaves().len(), 7);
        assert!(t7.contains_rooted(&build_joined_tree(2).unwrap()));
        assert!(build_joined_tree(3).unwrap().contains_rooted(&t7));
        assert!(t7.center_to_leaf() >= 2);

        assert_eq!(build_tree_for_genus(2), Err(GraphError::GenusTooSmall(2)));
        assert_eq!(tree_depth_for_genus(5), Ok(1));
        assert_eq!(tree_depth_for_genus(12), Ok(3));
        assert_eq!(tree_depth_for_genus(11), Ok(2));
    }

    #[test]
    fn tree_surface_counts() {
        let s = surface_from_tree(&build_joined_tree(1).unwrap()).unwrap();
        assert_eq!(s.piece_count(), 4);
        assert_eq!(s.edges().len(), 6);
        assert_eq!(s.genus(), 3);
        assert_eq!(s.genus_from_cycle_rank(), 3);
        // 2 − 2g = −#pants
        assert_eq!(2 - 2 * s.genus() as isize, -(s.piece_count() as isize));
        assert!(s.edges().iter().all(|e| (e.length - 2.0 * 2f64.acosh()).abs() < 1e-15 && e.twist == 0.0));

        for n in 1..=6 {
            let t = build_joined_tree(n).unwrap();
            let s = surface_from_tree(&t).unwrap();
            assert_eq!(s.genus(), t.leaves().len());
            assert_eq!(s.genus_from_cycle_rank(), s.leaf_handles().len());
            assert_eq!(s.genus(), s.leaf_handles().len());
        }
        for g in 3..40 {
            let s = surface_from_tree(&build_tree_for_genus(g).unwrap()).unwrap();
            assert_eq!(s.genus(), g);
            assert_eq!(s.genus_from_cycle_rank(), g);
        }
    }

    #[test]
    fn empty_tree_rejected() {
        let empty = TrivalentTree { adjacency: Vec::new(), center: 0 };
        assert_eq!(surface_from_tree(&empty), Err(GraphError::EmptyTree));
        let path = TrivalentTree { adjacency: vec![vec![1], vec![0, 2], vec![1]], center: 0 };
        assert!(matches!(surface_from_tree(&path), Err(GraphError::NotTrivalent { .. })));
    }

    fn tree_edge_between(s: &GluingGraph, u: usize, v: usize) -> Crossing {
        let (e, edge) = s
            .edges()
            .iter()
            .enumerate()
            .find(|(_, e)| (e.a.piece, e.b.piece) == (u, v) || (e.a.piece, e.b.piece) == (v, u))
            .unwrap();
        Crossing { edge: e, forward: edge.a.piece == u }
    }

    #[test]
    fn separation_and_coverage() {
        let t = build_joined_tree(2).unwrap();
        let s = surface_from_tree(&t).unwrap();
        let o = t.center();
        let child = t.neighbors(o)[0];
        let inner =
            CurvePath::new(&s, vec![tree_edge_between(&s, o, child), tree_edge_between(&s, child, o)], true).unwrap();
        assert!(separating_check(&s, &inner).unwrap());

        let leaf = t.leaves()[0];
        let parent = t.neighbors(leaf)[0];
        let handle = *s.leaf_handles().iter().find(|&&e| s.edges()[e].a.piece == leaf).unwrap();
        let through = CurvePath::new(
            &s,
            vec![
                tree_edge_between(&s, parent, leaf),
                Crossing { edge: handle, forward: true },
                tree_edge_between(&s, leaf, parent),
            ],
            true,
        )
        .unwrap();
        assert!(!separating_check(&s, &through).unwrap());

        assert_eq!(CurvePath::new(&s, Vec::new(), true), Err(GraphError::EmptyPath));
        assert!(matches!(CurvePath::new(&s, vec![tree_edge_between(&s, o, child)], true), Err(GraphError::NotClosed)));

        // handle loops alone never cover the sphere part
        let loops: Vec<_> = s.leaf_handles().iter().map(|&e| handle_loop(&s, e).unwrap()).collect();
        let (covers, missed) = coverage_check(&s, &loops).unwrap();
        assert!(!covers);
        assert!(missed.contains(&o));
        assert_eq!(missed.len(), s.piece_count() - s.leaf_handles().len());

        let (covers, missed) = coverage_check(&s, &[]).unwrap();
        assert!(!covers);
        assert_eq!(missed.len(), s.piece_count());

        // every tree edge crossed back and forth covers everything
        let mut all = loops.clone();
        for (u, v) in t.edges() {
            all.push(CurvePath::new(&s, vec![tree_edge_between(&s, u, v), tree_edge_between(&s, v, u)], true).unwrap());
        }
        assert_eq!(coverage_check(&s, &all).unwrap(), (true, BTreeSet::new()));
    }

    #[test]
    fn handle_loops_never_cover() {
        for n in 1..=6 {
            let s = surface_from_tree(&build_joined_tree(n).unwrap()).unwrap();
            let loops: Vec<_> = s.leaf_handles().iter().map(|&e| handle_loop(&s, e).unwrap()).collect();
            assert!(!coverage_check(&s, &loops).unwrap().0, "n = {n}");
        }
    }

    #[test]
    fn center_lower_bound() {
        let a = 2f64.acosh();
        for n in 1..=8 {
            let s = surface_from_tree(&build_joined_tree(n).unwrap()).unwrap();
            let l = min_length_through_center(&s, s.center().unwrap()).unwrap();
            assert!((l.get() - n as f64 * a).abs() < 1e-12);
        }
        let s = surface_from_tree(&build_joined_tree(2).unwrap()).unwrap();
        let l = min_length_through_center(&s, 0).unwrap();
        assert!((l.get() - 2.63392).abs() < 1e-5);
        for g in 3..50 {
            let s = surface_from_tree(&build_tree_for_genus(g).unwrap()).unwrap();
            let n = tree_depth_for_genus(g).unwrap();
            let l = min_length_through_center(&s, s.center().unwrap()).unwrap();
            assert!(l.get() >= n as f64 * a - 1e-12, "g = {g}");
        }
    }

    proptest! {
        #[test]
        fn separating_is_monotone_under_sphere_detours(n in 1usize..4, picks in proptest::collection::vec(0usize..1000, 1..12)) {
            let t = build_joined_tree(n).unwrap();
            let s = surface_from_tree(&t).unwrap();
            let o = t.center();
            let mut crossings = vec![tree_edge_between(&s, o, t.neighbors(o)[0]), tree_edge_between(&s, t.neighbors(o)[0], o)];
            let base = CurvePath::new(&s, crossings.clone(), true).unwrap();
            prop_assert!(separating_check(&s, &base).unwrap());
            // insert back-and-forth detours across non-handle edges
            for p in picks {
                let pos = p % (crossings.len() + 1);
                let here = if pos == 0 {
                    let e = s.edges()[crossings[0].edge];
                    if crossings[0].forward { e.a.piece } else { e.b.piece }
                } else {
                    let e = s.edges()[crossings[pos - 1].edge];
                    if crossings[pos - 1].forward { e.b.piece } else { e.a.piece }
                };
                let nbrs = t.neighbors(here);
                let next = nbrs[p % nbrs.len()];
                crossings.insert(pos, tree_edge_between(&s, next, here));
                crossings.insert(pos, tree_edge_between(&s, here, next));
                let path = CurvePath::new(&s, crossings.clone(), true).unwrap();
                prop_assert!(separating_check(&s, &path).unwrap());
            }
        }
    }
}

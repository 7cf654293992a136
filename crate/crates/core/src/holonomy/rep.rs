use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::mat2::{uhp_distance, Mat2};
use super::surface::{FnSurface, MarkedPath, Step};
use super::{HolonomyError, Word};
use crate::math;
use crate::pants_graph::GluingGraph;

/// Holonomy of a Fenchel–Nielsen surface.
///
/// A fundamental domain is grown from one root polygon by repeatedly
/// attaching the polygon whose center lands closest to the root center.
/// Every crossing not used by this spanning tree is a generator; tree
/// crossings are trivial. The words read around tiling vertices are the
/// relators.
#[derive(Clone, Debug)]
pub struct HolonomyRep {
    surface: FnSurface,
    root: usize,
    /// Placement of each polygon in the fundamental domain.
    placements: Vec<Mat2>,
    /// Letter contributed by each directed crossing (0 for tree crossings).
    letters: Vec<i32>,
    generators: Vec<Mat2>,
    relators: Vec<Word>,
    /// Image of the root center; always `i`.
    base_point: (f64, f64),
    covering_radius: f64,
}

impl HolonomyRep {
    pub fn new(graph: &GluingGraph) -> Result<Self, HolonomyError> {
        let surface = FnSurface::new(graph)?;
        let n = surface.tiles().len();
        let roots: Vec<usize> = if n <= 64 { (0..n).collect() } else { vec![0] };
        let mut best: Option<(f64, usize, Vec<Mat2>, BTreeSet<usize>)> = None;
        for root in roots {
            let (placements, tree) = grow_domain(&surface, root);
            let r = covering_radius(&surface, &placements);
            if best.as_ref().is_none_or(|b| r < b.0 - 1e-12) {
                best = Some((r, root, placements, tree));
            }
        }
        let (covering_radius, root, placements, tree) = best.expect("at least one polygon");

        let crossings = surface.crossings();
        let mut letters = vec![0i32; crossings.len()];
        let mut generators = Vec::new();
        for (id, c) in crossings.iter().enumerate() {
            let canon = id.min(c.reverse);
            if id != canon || tree.contains(&canon) {
                continue;
            }
            let k = generators.len() as i32 + 1;
            letters[id] = k;
            letters[c.reverse] = -k;
            generators.push(placements[c.from] * c.transform * placements[c.to].inverse());
        }

        let mut seen = BTreeSet::new();
        let mut relators = Vec::new();
        for cycle in surface.vertex_cycles()? {
            let w = Word::new(cycle.iter().map(|&c| letters[c]).filter(|&l| l != 0).collect())?;
            let canon = w.canonical_cyclic();
            if !canon.is_empty() && seen.insert(canon.clone()) {
                relators.push(canon);
            }
        }

        let mut rep =
            Self { surface, root, placements, letters, generators, relators, base_point: (0.0, 1.0), covering_radius };
        // A gluing error leaves a residual comparable to the product of the
        // generator norms; rounding leaves about ε times that.
        for r in &rep.relators {
            let residual = rep.eval(r)?.distance_to_pm_identity();
            let scale: f64 = r
                .letters()
                .iter()
                .map(|&l| math::sqrt(rep.generators[l.unsigned_abs() as usize - 1].frobenius_sq()))
                .product();
            if residual > 1e-6 + 1e-9 * scale {
                return Err(HolonomyError::Construction(alloc::format!(
                    "relators fail to close (residual {residual:e}, scale {scale:e})"
                )));
            }
        }
        rep.covering_radius = rep.covering_radius.min(super::enumerate::tighter_covering_radius(&rep));
        Ok(rep)
    }

    pub fn surface(&self) -> &FnSurface {
        &self.surface
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn root_tile(&self) -> usize {
        self.root
    }

    pub fn placement(&self, tile: usize) -> Mat2 {
        self.placements[tile]
    }

    pub fn base_point(&self) -> (f64, f64) {
        self.base_point
    }

    /// Every point of the plane is this close to an orbit point of the base
    /// point.
    pub fn covering_radius(&self) -> f64 {
        self.covering_radius
    }

    /// Letter of a directed crossing, 0 if it lies in the spanning tree.
    pub fn letter(&self, crossing: usize) -> i32 {
        self.letters[crossing]
    }

    pub fn eval(&self, word: &Word) -> Result<Mat2, HolonomyError> {
        let mut m = Mat2::IDENTITY;
        for &l in word.letters() {
            let k = l.unsigned_abs() as usize - 1;
            let g = self.generators.get(k).ok_or(HolonomyError::UnknownGenerator(k))?;
            m = m * if l > 0 { *g } else { g.inverse() };
        }
        Ok(m)
    }

    /// Largest entry-wise distance of a relator image from `±I`.
    pub fn relator_residual(&self) -> f64 {
        self.relators
            .iter()
            .map(|r| self.eval(r).map(|m| m.distance_to_pm_identity()).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    pub fn path_word(&self, path: &MarkedPath) -> Result<Word, HolonomyError> {
        let crossings = self.surface.path_crossings(path)?;
        Ok(Word::new(crossings.iter().map(|&c| self.letters[c]).filter(|&l| l != 0).collect())?.reduced())
    }

    /// Loop around the cuff glued at `edge`, seen from its `a` side.
    pub fn cuff_word(&self, edge: usize) -> Result<Word, HolonomyError> {
        let e = self.surface.graph().edge(edge).ok_or(HolonomyError::UnknownEdge(edge))?;
        let k = self.surface.graph().holes(e.a.piece);
        let i = e.a.slot;
        self.path_word(&MarkedPath { piece: e.a.piece, steps: vec![Step::Seam(i), Step::Seam((i + k - 1) % k)] })
    }
}

/// Length of the closed geodesic in the class of `word`.
pub fn geodesic_length(rep: &HolonomyRep, word: &Word) -> Result<f64, HolonomyError> {
    if word.reduced().is_empty() {
        return Err(HolonomyError::TrivialWord);
    }
    let m = rep.eval(word)?;
    m.translation_length().ok_or(HolonomyError::NotHyperbolic { trace: m.trace() })
}

fn center_frame_inverse(z: (f64, f64)) -> Mat2 {
    let s = math::sqrt(z.1);
    // maps i to z
    Mat2::new(s, z.0 / s, 0.0, 1.0 / s).inverse()
}

fn grow_domain(surface: &FnSurface, root: usize) -> (Vec<Mat2>, BTreeSet<usize>) {
    let tiles = surface.tiles();
    let crossings = surface.crossings();
    let n = tiles.len();
    let mut placements: Vec<Option<Mat2>> = vec![None; n];
    placements[root] = Some(center_frame_inverse(tiles[root].center));
    let p = (0.0, 1.0);
    let mut tree = BTreeSet::new();
    for _ in 1..n {
        let mut best: Option<(f64, usize, Mat2)> = None;
        for (id, c) in crossings.iter().enumerate() {
            let (Some(from), None) = (placements[c.from], placements[c.to]) else {
                continue;
            };
            let m = from * c.transform;
            let d = uhp_distance(p, m.apply(tiles[c.to].center));
            if best.as_ref().is_none_or(|b| d < b.0 - 1e-12) {
                best = Some((d, id, m));
            }
        }
        let (_, id, m) = best.expect("surface is connected");
        let c = &crossings[id];
        placements[c.to] = Some(m);
        tree.insert(id.min(c.reverse));
    }
    (placements.into_iter().map(|m| m.expect("all placed")).collect(), tree)
}

fn covering_radius(surface: &FnSurface, placements: &[Mat2]) -> f64 {
    let p = (0.0, 1.0);
    surface
        .tiles()
        .iter()
        .zip(placements)
        .flat_map(|(t, m)| t.vertices.iter().map(move |&v| uhp_distance(p, m.apply(v))))
        .fold(0.0, f64::max)
}

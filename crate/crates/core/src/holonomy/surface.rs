//! A Fenchel–Nielsen surface cut into right-angled polygons.
//!
//! Each `k`-holed piece is a front and a back right-angled `2k`-gon. The
//! front polygon's sides in counterclockwise order are
//! `arc 0, seam 0, arc 1, seam 1, …` where arc `i` is half of cuff `i` and
//! seam `i` runs from cuff `i` to cuff `i + 1`. The back polygon is its
//! mirror image, so its sides in counterclockwise order are
//! `arc 0, seam k-1, arc k-1, seam k-2, …`.
//!
//! A point on cuff `i` is addressed by its position in `[0, ℓ)` following
//! the boundary orientation: the front arc covers `[0, ℓ/2]`, the back arc
//! `[ℓ/2, ℓ]`, position 0 is the foot of seam `i - 1` and `ℓ/2` the foot of
//! seam `i`. Gluing slot `i` of `P` to slot `j` of `Q` with twist `τ`
//! identifies position `x` on `P` with position `ℓ/2 - x - τ (mod ℓ)` on
//! `Q`. The rule is symmetric in `P` and `Q`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::mat2::{barycenter, uhp_distance, Mat2};
use super::HolonomyError;
use crate::hyp_trig::{self, HypLength};
use crate::math;
use crate::pants_graph::GluingGraph;

/// What a polygon side is glued to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideKind {
    /// Half of the cuff at this slot.
    Arc(usize),
    /// Seam shared with the other polygon of the same piece.
    Seam(usize),
}

#[derive(Clone, Debug)]
pub struct Tile {
    pub piece: usize,
    pub back: bool,
    pub sides: Vec<SideKind>,
    pub lengths: Vec<f64>,
    /// Frame at the start of each side, pointing along it with the interior
    /// on the left. Frame 0 is the identity.
    pub frames: Vec<Mat2>,
    pub vertices: Vec<(f64, f64)>,
    pub center: (f64, f64),
    pub circumradius: f64,
}

impl Tile {
    pub fn side_of(&self, kind: SideKind) -> Option<usize> {
        self.sides.iter().position(|&s| s == kind)
    }
}

/// Directed crossing from side `from_side` of tile `from` into tile `to`.
///
/// The point at distance `u` along the `from` side is the point at distance
/// `offset - u` along the `to` side; the crossing is valid for `u` in
/// `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct TileCrossing {
    pub from: usize,
    pub from_side: usize,
    pub to: usize,
    pub to_side: usize,
    pub offset: f64,
    pub lo: f64,
    pub hi: f64,
    /// Maps `to`-tile coordinates into `from`-tile coordinates.
    pub transform: Mat2,
    pub reverse: usize,
}

/// A step of a marked path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Step {
    /// Cross seam `idx` of the current piece.
    Seam(usize),
    /// Cross the cuff at `slot` at fraction `frac` of the current arc, then
    /// run along the cuff on the far side for the twist plus `wind` full
    /// turns before continuing.
    Cuff { slot: usize, frac: f64, wind: i32 },
}

/// Path starting in the front polygon of `piece`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedPath {
    pub piece: usize,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub struct FnSurface {
    graph: GluingGraph,
    tiles: Vec<Tile>,
    crossings: Vec<TileCrossing>,
    /// Crossing ids per tile and side, sorted by `lo`.
    by_side: Vec<Vec<Vec<usize>>>,
}

const EPS: f64 = 1e-10;

impl FnSurface {
    pub fn new(graph: &GluingGraph) -> Result<Self, HolonomyError> {
        let mut tiles = Vec::with_capacity(2 * graph.piece_count());
        for p in 0..graph.piece_count() {
            let k = graph.holes(p);
            let cuffs = (0..k)
                .map(|i| {
                    graph
                        .edge_at(crate::pants_graph::Slot { piece: p, slot: i })
                        .map(|(_, e)| e.length)
                        .ok_or(HolonomyError::Construction(alloc::format!("piece {p} slot {i} unglued")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let seams = piece_seams(p, &cuffs)?;
            let front_sides: Vec<SideKind> =
                (0..2 * k).map(|m| if m % 2 == 0 { SideKind::Arc(m / 2) } else { SideKind::Seam(m / 2) }).collect();
            let back_sides: Vec<SideKind> = (0..2 * k)
                .map(|m| {
                    let h = m / 2;
                    if m % 2 == 0 {
                        SideKind::Arc((k - h) % k)
                    } else {
                        SideKind::Seam((k - 1 - h) % k)
                    }
                })
                .collect();
            for (back, sides) in [(false, front_sides), (true, back_sides)] {
                let lengths: Vec<f64> = sides
                    .iter()
                    .map(|s| match *s {
                        SideKind::Arc(i) => cuffs[i] / 2.0,
                        SideKind::Seam(i) => seams[i],
                    })
                    .collect();
                tiles.push(build_tile(p, back, sides, lengths)?);
            }
        }

        let mut crossings: Vec<TileCrossing> = Vec::new();
        let push_pair =
            |crossings: &mut Vec<TileCrossing>, t: usize, m: usize, t2: usize, m2: usize, w: f64, lo: f64, hi: f64| {
                let id = crossings.len();
                let g = tiles[t].frames[m] * Mat2::translation(w) * Mat2::half_turn() * tiles[t2].frames[m2].inverse();
                let g2 = tiles[t2].frames[m2] * Mat2::translation(w) * Mat2::half_turn() * tiles[t].frames[m].inverse();
                let (lo2, hi2) = (w - hi, w - lo);
                crossings.push(TileCrossing {
                    from: t,
                    from_side: m,
                    to: t2,
                    to_side: m2,
                    offset: w,
                    lo,
                    hi,
                    transform: g,
                    reverse: id + 1,
                });
                crossings.push(TileCrossing {
                    from: t2,
                    from_side: m2,
                    to: t,
                    to_side: m,
                    offset: w,
                    lo: lo2,
                    hi: hi2,
                    transform: g2,
                    reverse: id,
                });
            };

        for p in 0..graph.piece_count() {
            let k = graph.holes(p);
            for i in 0..k {
                let (f, b) = (2 * p, 2 * p + 1);
                let mf = tiles[f].side_of(SideKind::Seam(i)).expect("front seam");
                let mb = tiles[b].side_of(SideKind::Seam(i)).expect("back seam");
                let len = tiles[f].lengths[mf];
                push_pair(&mut crossings, f, mf, b, mb, len, 0.0, len);
            }
        }
        for e in graph.edges() {
            let l = e.length;
            let half = l / 2.0;
            for (tp, a) in [(2 * e.a.piece, 0.0), (2 * e.a.piece + 1, half)] {
                for (tq, b) in [(2 * e.b.piece, 0.0), (2 * e.b.piece + 1, half)] {
                    let w = math::rem_euclid(half - b - e.twist - a, l);
                    if w <= EPS * l.max(1.0) || w >= l - EPS * l.max(1.0) {
                        continue;
                    }
                    let m = tiles[tp].side_of(SideKind::Arc(e.a.slot)).expect("arc side");
                    let m2 = tiles[tq].side_of(SideKind::Arc(e.b.slot)).expect("arc side");
                    push_pair(&mut crossings, tp, m, tq, m2, w, (w - half).max(0.0), w.min(half));
                }
            }
        }

        let mut by_side: Vec<Vec<Vec<usize>>> = tiles.iter().map(|t| vec![Vec::new(); t.sides.len()]).collect();
        for (id, c) in crossings.iter().enumerate() {
            by_side[c.from][c.from_side].push(id);
        }
        for sides in &mut by_side {
            for list in sides.iter_mut() {
                list.sort_by(|&x, &y| crossings[x].lo.total_cmp(&crossings[y].lo));
            }
        }
        Ok(Self { graph: graph.clone(), tiles, crossings, by_side })
    }

    pub fn graph(&self) -> &GluingGraph {
        &self.graph
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn crossings(&self) -> &[TileCrossing] {
        &self.crossings
    }

    pub fn crossings_at(&self, tile: usize, side: usize) -> &[usize] {
        &self.by_side[tile][side]
    }

    pub fn front_tile(&self, piece: usize) -> usize {
        2 * piece
    }

    /// Crossing through `side` of `tile` just past distance `u` along it.
    pub fn crossing_after(&self, tile: usize, side: usize, u: f64) -> Option<usize> {
        let tol = 1e-9;
        self.by_side[tile][side]
            .iter()
            .copied()
            .find(|&c| self.crossings[c].lo <= u + tol && self.crossings[c].hi > u + tol)
    }

    /// Crossings visited by a marked path, in order.
    pub fn path_crossings(&self, path: &MarkedPath) -> Result<Vec<usize>, HolonomyError> {
        if path.piece >= self.graph.piece_count() {
            return Err(HolonomyError::BadPath(alloc::format!("piece {} does not exist", path.piece)));
        }
        let start = self.front_tile(path.piece);
        let mut tile = start;
        let mut out = Vec::new();
        for step in &path.steps {
            match *step {
                Step::Seam(idx) => {
                    tile = self.cross_seam(tile, idx, &mut out)?;
                }
                Step::Cuff { slot, frac, wind } => {
                    if !(frac > 0.0 && frac < 1.0) {
                        return Err(HolonomyError::BadPath(alloc::format!("fraction {frac} outside (0, 1)")));
                    }
                    let t = &self.tiles[tile];
                    let side = t
                        .side_of(SideKind::Arc(slot))
                        .ok_or_else(|| HolonomyError::BadPath(alloc::format!("no cuff slot {slot}")))?;
                    let (_, edge) = self
                        .graph
                        .edge_at(crate::pants_graph::Slot { piece: t.piece, slot })
                        .ok_or_else(|| HolonomyError::BadPath(alloc::format!("slot {slot} unglued")))?;
                    let (l, tau) = (edge.length, edge.twist);
                    let half = l / 2.0;
                    let u = frac * half;
                    let c = self
                        .crossing_after(tile, side, u - 1e-8)
                        .ok_or_else(|| HolonomyError::BadPath(String::from("cuff crossing not found")))?;
                    out.push(c);
                    let cr = &self.crossings[c];
                    tile = cr.to;
                    let far_slot = match self.tiles[tile].sides[cr.to_side] {
                        SideKind::Arc(j) => j,
                        SideKind::Seam(_) => unreachable!("arc crossings land on arcs"),
                    };
                    let x = if self.tiles[cr.from].back { half + u } else { u };
                    let y = math::rem_euclid(half - x - tau, l);
                    let target = y + tau + wind as f64 * l;
                    let k = self.graph.holes(self.tiles[tile].piece);
                    let prev_seam = (far_slot + k - 1) % k;
                    let seam_at = |q: i64| if q.rem_euclid(2) == 0 { prev_seam } else { far_slot };
                    if target > y {
                        let mut q = math::floor(y / half) as i64 + 1;
                        while (q as f64) * half < target {
                            tile = self.cross_seam(tile, seam_at(q), &mut out)?;
                            q += 1;
                        }
                    } else {
                        let mut q = -math::floor(-y / half) as i64 - 1;
                        while (q as f64) * half > target {
                            tile = self.cross_seam(tile, seam_at(q), &mut out)?;
                            q -= 1;
                        }
                    }
                }
            }
        }
        if tile != start {
            return Err(HolonomyError::BadPath(String::from("path does not return to its starting polygon")));
        }
        Ok(out)
    }

    /// Holonomy of a closed marked path in the coordinates of its starting
    /// polygon: the product of the crossing transforms along the way.
    pub fn path_holonomy(&self, path: &MarkedPath) -> Result<Mat2, HolonomyError> {
        Ok(self.path_crossings(path)?.iter().fold(Mat2::IDENTITY, |m, &c| m * self.crossings[c].transform))
    }

    fn cross_seam(&self, tile: usize, idx: usize, out: &mut Vec<usize>) -> Result<usize, HolonomyError> {
        let side = self.tiles[tile]
            .side_of(SideKind::Seam(idx))
            .ok_or_else(|| HolonomyError::BadPath(alloc::format!("no seam {idx}")))?;
        let c = self.by_side[tile][side][0];
        out.push(c);
        Ok(self.crossings[c].to)
    }

    /// Closed loop around each tiling vertex: the crossings met while
    /// turning clockwise around a polygon corner.
    pub fn vertex_cycles(&self) -> Result<Vec<Vec<usize>>, HolonomyError> {
        let tol = 1e-9;
        let mut cycles = Vec::new();
        for (t, tile) in self.tiles.iter().enumerate() {
            for m in 0..tile.sides.len() {
                let start = (t, m, 0.0f64);
                let mut state = start;
                let mut cycle = Vec::new();
                loop {
                    let (tt, side, u) = state;
                    let c = self.crossing_after(tt, side, u).ok_or_else(|| {
                        HolonomyError::Construction(alloc::format!("no crossing at tile {tt} side {side}"))
                    })?;
                    cycle.push(c);
                    let cr = &self.crossings[c];
                    let v = cr.offset - u;
                    let n = self.tiles[cr.to].sides.len();
                    state = if (v - self.tiles[cr.to].lengths[cr.to_side]).abs() < tol {
                        (cr.to, (cr.to_side + 1) % n, 0.0)
                    } else {
                        (cr.to, cr.to_side, v)
                    };
                    if state.0 == start.0 && state.1 == start.1 && (state.2 - start.2).abs() < tol {
                        break;
                    }
                    if cycle.len() > 64 {
                        return Err(HolonomyError::Construction(String::from("vertex cycle does not close")));
                    }
                }
                cycles.push(cycle);
            }
        }
        Ok(cycles)
    }
}

fn piece_seams(p: usize, cuffs: &[f64]) -> Result<Vec<f64>, HolonomyError> {
    let k = cuffs.len();
    let len = |x: f64| HypLength::new(x).map_err(|e| HolonomyError::Construction(alloc::format!("piece {p}: {e}")));
    match k {
        0..=2 => Err(HolonomyError::Construction(alloc::format!("piece {p} has {k} holes"))),
        3 => (0..3)
            .map(|i| {
                let a = len(cuffs[i] / 2.0)?;
                let b = len(cuffs[(i + 1) % 3] / 2.0)?;
                let c = len(cuffs[(i + 2) % 3] / 2.0)?;
                Ok(hyp_trig::hexagon_opposite_side(a, b, c).get())
            })
            .collect(),
        _ => {
            let c = cuffs[0];
            if cuffs.iter().any(|&x| (x - c).abs() > 1e-12 * c.max(1.0)) {
                return Err(HolonomyError::Construction(alloc::format!("piece {p} has {k} holes but unequal cuffs")));
            }
            let half = hyp_trig::seam_half(len(c)?, k)
                .map_err(|e| HolonomyError::Construction(alloc::format!("piece {p}: {e}")))?;
            Ok(vec![2.0 * half.get(); k])
        }
    }
}

fn build_tile(piece: usize, back: bool, sides: Vec<SideKind>, lengths: Vec<f64>) -> Result<Tile, HolonomyError> {
    let n = sides.len();
    let turn = Mat2::rotation(math::FRAC_PI_2);
    let mut frames = Vec::with_capacity(n);
    let mut f = Mat2::IDENTITY;
    for &len in &lengths {
        frames.push(f);
        f = f * Mat2::translation(len) * turn;
    }
    let closure = f.distance_to_pm_identity();
    // Rounding in the walk grows with the frame entries and the order.
    let size = frames.iter().map(Mat2::frobenius_sq).fold(1.0, f64::max);
    if closure > f64::max(1e-8, 64.0 * f64::EPSILON * n as f64 * size) {
        return Err(HolonomyError::Construction(alloc::format!(
            "polygon of piece {piece} does not close (residual {closure:e})"
        )));
    }
    let vertices: Vec<(f64, f64)> = frames.iter().map(Mat2::apply_i).collect();
    let center = barycenter(&vertices);
    let circumradius = vertices.iter().map(|&v| uhp_distance(center, v)).fold(0.0, f64::max);
    Ok(Tile { piece, back, sides, lengths, frames, vertices, center, circumradius })
}

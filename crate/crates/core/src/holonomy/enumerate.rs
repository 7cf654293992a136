use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::mat2::{to_hyperboloid, uhp_distance, Mat2};
use super::{HolonomyError, HolonomyRep, Word};
use crate::math;

/// One unoriented primitive conjugacy class.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeodesicRecord {
    pub word: Word,
    pub length: f64,
}

/// Default cap on the number of developed polygons.
pub const DEFAULT_BUDGET: usize = 2_000_000;

struct Placed {
    tile: usize,
    mat: Mat2,
    parent: u32,
    letter: i32,
}

/// Disk coordinate of an upper half plane point, with `i` at the origin.
fn disk(z: (f64, f64)) -> (f64, f64) {
    // (z - i) / (z + i)
    let (x, y) = z;
    let den = x * x + (y + 1.0) * (y + 1.0);
    ((x * x + y * y - 1.0) / den, -2.0 * x / den)
}

struct Development {
    placed: Vec<Placed>,
}

impl Development {
    fn word(&self, mut idx: usize) -> Word {
        let mut letters = Vec::new();
        while idx != 0 {
            let p = &self.placed[idx];
            if p.letter != 0 {
                letters.push(p.letter);
            }
            idx = p.parent as usize;
        }
        letters.reverse();
        Word::new(letters).expect("non-zero letters").reduced()
    }
}

/// Develops every polygon meeting the disk of radius `radius` about the base
/// point, breadth first from the root polygon.
fn develop(rep: &HolonomyRep, radius: f64, budget: usize) -> Result<Development, HolonomyError> {
    const CELL: f64 = 1e-8;
    let surface = rep.surface();
    let tiles = surface.tiles();
    let crossings = surface.crossings();
    let p = rep.base_point();
    let root = rep.root_tile();

    let mut placed = Vec::new();
    let mut index: BTreeMap<(i64, i64), Vec<u32>> = BTreeMap::new();
    let key = |w: (f64, f64)| ((w.0 / CELL) as i64, (w.1 / CELL) as i64);

    let root_mat = rep.placement(root);
    let w0 = disk(root_mat.apply(tiles[root].center));
    index.entry(key(w0)).or_default().push(0);
    placed.push(Placed { tile: root, mat: root_mat, parent: 0, letter: 0 });
    let mut queue = VecDeque::from([0usize]);

    while let Some(idx) = queue.pop_front() {
        let (tile, mat) = (placed[idx].tile, placed[idx].mat);
        let center = mat.apply(tiles[tile].center);
        if uhp_distance(p, center) - tiles[tile].circumradius > radius {
            continue;
        }
        for side in 0..tiles[tile].sides.len() {
            for &c in surface.crossings_at(tile, side) {
                let cr = &crossings[c];
                let m = mat * cr.transform;
                let w = disk(m.apply(tiles[cr.to].center));
                let (kx, ky) = key(w);
                let mut found = false;
                'search: for dx in -1..=1 {
                    for dy in -1..=1 {
                        if let Some(list) = index.get(&(kx + dx, ky + dy)) {
                            for &j in list {
                                let q = &placed[j as usize];
                                if q.tile != cr.to {
                                    continue;
                                }
                                let wq = disk(q.mat.apply(tiles[q.tile].center));
                                if (wq.0 - w.0).abs() < CELL && (wq.1 - w.1).abs() < CELL {
                                    found = true;
                                    break 'search;
                                }
                            }
                        }
                    }
                }
                if found {
                    continue;
                }
                if placed.len() >= budget {
                    return Err(HolonomyError::Budget { polygons: placed.len() });
                }
                let new = placed.len();
                index.entry((kx, ky)).or_default().push(new as u32);
                placed.push(Placed { tile: cr.to, mat: m, parent: idx as u32, letter: rep.letter(c) });
                queue.push_back(new);
            }
        }
    }
    Ok(Development { placed })
}

/// Polygons developed while looking for orbit points near the domain.
const COVER_BUDGET: usize = 20_000;

/// Upper bound on the covering radius that lets each piece of the
/// fundamental domain use its own nearest orbit point.
///
/// Each tile is fanned into triangles from its center and each triangle is
/// split four ways, [`COVER_DEPTH`] times, with straight cuts in the Klein
/// model, so every piece is a geodesic triangle. Distance to a point is
/// convex, so over a piece it peaks at a vertex, and the piece is within
/// `min_q max_v d(v, q)` of the orbit. Any set of orbit points gives a valid
/// bound; the developed ones are those of a disk no larger than the vertex
/// bound.
pub(super) fn tighter_covering_radius(rep: &HolonomyRep) -> f64 {
    let r0 = rep.covering_radius();
    let mut radius = r0;
    let dev = loop {
        match develop(rep, radius, COVER_BUDGET) {
            Ok(dev) => break dev,
            Err(_) if radius > 0.5 => radius *= 0.75,
            Err(_) => return r0,
        }
    };
    let root = rep.root_tile();
    let root_inv = rep.placement(root).inverse();
    let orbit: Vec<[f64; 3]> = dev
        .placed
        .iter()
        .filter(|q| q.tile == root)
        .map(|q| to_hyperboloid((q.mat * root_inv).apply(rep.base_point())))
        .collect();

    // cosh of the distance between hyperboloid points
    let ch = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] - a[1] * b[1] - a[2] * b[2];
    let mut worst = 1.0f64;
    for (t, tile) in rep.surface().tiles().iter().enumerate() {
        let m = rep.placement(t);
        let center = to_hyperboloid(m.apply(tile.center));
        let verts: Vec<[f64; 3]> = tile.vertices.iter().map(|&v| to_hyperboloid(m.apply(v))).collect();
        // Orbit points that can beat the best single point for the whole tile.
        let whole =
            orbit.iter().map(|q| verts.iter().map(|v| ch(v, q)).fold(1.0, f64::max)).fold(f64::INFINITY, f64::min);
        let reach = math::acosh(whole) + tile.circumradius;
        let near: Vec<&[f64; 3]> =
            orbit.iter().filter(|q| math::acosh(ch(&center, q).max(1.0)) <= reach + 1e-9).collect();
        let mut pieces: Vec<[[f64; 2]; 3]> = (0..verts.len())
            .map(|i| [klein(&center), klein(&verts[i]), klein(&verts[(i + 1) % verts.len()])])
            .collect();
        for _ in 0..COVER_DEPTH {
            pieces = pieces.iter().flat_map(split).collect();
        }
        for piece in &pieces {
            let corners = piece.map(unklein);
            let best =
                near.iter().map(|q| corners.iter().map(|v| ch(v, q)).fold(1.0, f64::max)).fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
    }
    // Round the bound up past the error of the hyperboloid arithmetic.
    (math::acosh(worst) + 1e-9).min(r0)
}

/// Rounds of four-way splitting in [`tighter_covering_radius`].
const COVER_DEPTH: usize = 3;

fn klein(h: &[f64; 3]) -> [f64; 2] {
    [h[1] / h[0], h[2] / h[0]]
}

fn unklein(k: [f64; 2]) -> [f64; 3] {
    let x0 = 1.0 / math::sqrt(1.0 - k[0] * k[0] - k[1] * k[1]);
    [x0, k[0] * x0, k[1] * x0]
}

fn split(t: &[[f64; 2]; 3]) -> [[[f64; 2]; 3]; 4] {
    let mid = |a: [f64; 2], b: [f64; 2]| [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0];
    let [a, b, c] = *t;
    let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
}

/// Boundary point of the disk fixed by `m`, as an angle in `[0, 2π)`.
fn endpoint_angle(v: (f64, f64)) -> f64 {
    math::rem_euclid(-2.0 * math::atan2(v.1, v.0), 2.0 * math::PI)
}

/// Eigenvectors of a hyperbolic matrix, attracting first.
fn axis_vectors(m: &Mat2) -> [(f64, f64); 2] {
    let t = m.trace();
    let disc = math::sqrt((t * t - 4.0).max(0.0));
    let lam = [(t + disc) / 2.0, (t - disc) / 2.0];
    let mut out = [(0.0, 0.0); 2];
    for (k, &l) in lam.iter().enumerate() {
        // (b, λ - a) and (λ - d, c) both solve (M - λ) v = 0
        let v1 = (m.b, l - m.a);
        let v2 = (l - m.d, m.c);
        let n1 = v1.0 * v1.0 + v1.1 * v1.1;
        let n2 = v2.0 * v2.0 + v2.1 * v2.1;
        out[k] = if n1 >= n2 { v1 } else { v2 };
    }
    out
}

fn act(m: &Mat2, v: (f64, f64)) -> (f64, f64) {
    (m.a * v.0 + m.b * v.1, m.c * v.0 + m.d * v.1)
}

const AXIS_TOL: f64 = 1e-7;

/// Unordered endpoint pair, smaller angle first. Angles just below `2π` are
/// shifted below zero so nearby axes always get nearby keys.
fn axis_key(v: [(f64, f64); 2]) -> (f64, f64) {
    let wrap = |a: f64| if a > 2.0 * math::PI - AXIS_TOL { a - 2.0 * math::PI } else { a };
    let a = wrap(endpoint_angle(v[0]));
    let b = wrap(endpoint_angle(v[1]));
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn same_axis(x: (f64, f64), y: (f64, f64)) -> bool {
    (x.0 - y.0).abs() < AXIS_TOL && (x.1 - y.1).abs() < AXIS_TOL
}

/// Axes bucketed by their first angle.
#[derive(Default)]
struct AxisIndex {
    buckets: BTreeMap<i64, Vec<usize>>,
}

impl AxisIndex {
    const CELL: f64 = 1e-6;

    fn bucket(a: f64) -> i64 {
        math::floor(a / Self::CELL) as i64
    }

    fn insert(&mut self, key: (f64, f64), id: usize) {
        self.buckets.entry(Self::bucket(key.0)).or_default().push(id);
    }

    fn find(&self, axes: &[Axis], key: (f64, f64)) -> Option<usize> {
        let b = Self::bucket(key.0);
        (b - 1..=b + 1).filter_map(|k| self.buckets.get(&k)).flatten().copied().find(|&i| same_axis(axes[i].key, key))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

struct Axis {
    key: (f64, f64),
    length: f64,
    word: Word,
}

/// All closed geodesics of length at most `cutoff`, one record per
/// unoriented primitive conjugacy class, sorted by length then word.
///
/// Let `p` be the base point and `r` the covering radius, so every point of
/// the plane lies within `r` of an orbit point of `p`. A closed geodesic of
/// length `ℓ ≤ L` therefore has a lift whose axis passes within `r` of `p`,
/// and the matching deck transformation `h` satisfies
/// `sinh(d(p, hp)/2) = cosh(δ) sinh(ℓ/2) ≤ cosh(r) sinh(L/2)`, where `δ` is
/// the distance from `p` to the axis. All such `h` are found by developing
/// every polygon that can meet the disk of radius
/// `2 asinh(cosh r · sinh(L/2))`; a polygon can only meet it if the distance
/// from `p` to its center minus its circumradius is below the radius, so the
/// test used to prune the development never discards a needed polygon.
///
/// Two lifts near `p` of the same geodesic differ by some `γ` with
/// `d(p, γp) ≤ 2r + L/2`: moving along the target axis by a power of the
/// primitive element brings the image of the first foot point within `ℓ/2`
/// of the second. Axes are merged under all such `γ`.
pub fn enumerate_geodesics(
    rep: &HolonomyRep,
    cutoff: f64,
    budget: usize,
) -> Result<Vec<GeodesicRecord>, HolonomyError> {
    if cutoff.is_nan() || cutoff.is_infinite() {
        return Err(HolonomyError::InvalidCutoff(cutoff));
    }
    if cutoff <= 0.0 {
        return Ok(Vec::new());
    }
    let r = rep.covering_radius();
    let reach = 2.0 * math::asinh(math::cosh(r) * math::sinh(cutoff / 2.0));
    let merge = 2.0 * r + cutoff / 2.0;
    let dev = develop(rep, reach.max(merge), budget)?;
    let root = rep.root_tile();
    let root_inv = rep.placement(root).inverse();
    let tol = 1e-9;

    // group elements: copies of the root polygon
    let elements: Vec<(usize, Mat2)> =
        dev.placed.iter().enumerate().filter(|(_, q)| q.tile == root).map(|(i, q)| (i, q.mat * root_inv)).collect();

    let mut axes: Vec<Axis> = Vec::new();
    let mut index = AxisIndex::default();
    for &(idx, g) in &elements {
        let Some(length) = g.translation_length() else { continue };
        if length > cutoff + tol {
            continue;
        }
        let d = g.displacement_of_i();
        let cosh_delta = math::sinh(d / 2.0) / math::sinh(length / 2.0);
        if cosh_delta > math::cosh(r + tol) {
            continue;
        }
        let key = axis_key(axis_vectors(&g));
        let word = dev.word(idx);
        match index.find(&axes, key) {
            Some(i) => {
                let a = &mut axes[i];
                let shorter = length < a.length - tol
                    || ((length - a.length).abs() <= tol && (word.len(), &word) < (a.word.len(), &a.word));
                if shorter {
                    a.length = length;
                    a.word = word;
                }
            }
            None => {
                index.insert(key, axes.len());
                axes.push(Axis { key, length, word });
            }
        }
    }

    let mut uf = UnionFind((0..axes.len()).collect());
    let p = rep.base_point();
    for &(_, g) in &elements {
        if uhp_distance(p, g.apply_i()) > merge + tol {
            continue;
        }
        for i in 0..axes.len() {
            let v = axis_vectors_from_key(axes[i].key);
            let image = axis_key([act(&g, v[0]), act(&g, v[1])]);
            if let Some(j) = index.find(&axes, image) {
                uf.union(i, j);
            }
        }
    }

    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..axes.len() {
        let root = uf.find(i);
        let best = classes.entry(root).or_insert(i);
        let (a, b) = (&axes[i], &axes[*best]);
        if (a.word.len(), &a.word) < (b.word.len(), &b.word) {
            *best = i;
        }
    }
    let mut records: Vec<GeodesicRecord> = classes
        .values()
        .map(|&i| GeodesicRecord { word: axes[i].word.canonical_cyclic(), length: axes[i].length })
        .collect();
    records.sort_by(|x, y| x.length.total_cmp(&y.length));
    // Lengths within 1e-9 of the first in their run count as equal, so the
    // order inside a run comes from the word alone.
    let mut start = 0;
    while start < records.len() {
        let base = records[start].length;
        let end = start + records[start..].iter().take_while(|r| r.length - base <= 1e-9).count();
        records[start..end].sort_by_cached_key(|r| alloc::format!("{}", r.word));
        start = end;
    }
    Ok(records)
}

/// Homogeneous vectors of the two boundary points with the given angles.
fn axis_vectors_from_key(key: (f64, f64)) -> [(f64, f64); 2] {
    // angle = -2 atan2(v2, v1)
    let v = |a: f64| (math::cos(-a / 2.0), math::sin(-a / 2.0));
    [v(key.0), v(key.1)]
}

/// Smallest length among classes below `cutoff` and how many classes attain
/// it within `1e-9`.
pub fn systole_bruteforce(rep: &HolonomyRep, cutoff: f64, budget: usize) -> Result<(f64, usize), HolonomyError> {
    let records = enumerate_geodesics(rep, cutoff, budget)?;
    let first = records.first().ok_or(HolonomyError::NoGeodesic(cutoff))?.length;
    let sys = records.iter().map(|r| r.length).take_while(|&l| l - first <= 1e-9).fold(first, f64::min);
    let count = records.iter().filter(|r| (r.length - sys).abs() <= 1e-9).count();
    Ok((sys, count))
}

//! Corpus generators: stacked and flipped sphere triangulations, exhaustive
//! isomorphism-class enumeration, and random triangulated polygons.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a given seed yields the same corpus on every platform.
//!
//! [`exhaustive_sphere`] walks the flip graph breadth-first from a stacked
//! triangulation and keeps one representative per canonical code. It is
//! complete because the flip graph of simple sphere triangulations on a fixed
//! vertex count is connected (K. Wagner, 1936).

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::planar::{CanonicalCode, Embedding, RotationSystem};
use crate::triangulation::{Mode, Triangulation};

/// Largest vertex count [`exhaustive_sphere`] accepts without an override.
pub const EXHAUSTIVE_CAP: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exhaustive enumeration at n = {n} exceeds the cap of {cap}; pass an override to run it")]
    ResourceGuard { n: usize, cap: usize },
}

/// Parameters for one generated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub target_n: usize,
    pub seed: u64,
    pub flip_steps: usize,
    pub mode: Mode,
    /// Disk mode only.
    pub boundary_size: usize,
    /// Disk mode only.
    pub interior_points: usize,
}

impl GenSpec {
    pub fn sphere(target_n: usize, seed: u64, flip_steps: usize) -> Self {
        GenSpec { target_n, seed, flip_steps, mode: Mode::Sphere, boundary_size: 0, interior_points: 0 }
    }

    pub fn disk(boundary_size: usize, interior_points: usize, seed: u64) -> Self {
        GenSpec {
            target_n: boundary_size + interior_points,
            seed,
            flip_steps: 0,
            mode: Mode::Disk,
            boundary_size,
            interior_points,
        }
    }

    pub fn generate(&self) -> Result<Triangulation, GenError> {
        match self.mode {
            Mode::Sphere => {
                let t = stacked(self.target_n, self.seed)?;
                // Distinct stream for the flips so changing flip_steps keeps the stacking.
                random_flips(&t, self.flip_steps, self.seed ^ 0x9e37_79b9_7f4a_7c15)
            }
            Mode::Disk => {
                if self.boundary_size + self.interior_points != self.target_n {
                    return Err(GenError::InvalidParameter(format!(
                        "boundary {} + interior {} != target_n {}",
                        self.boundary_size, self.interior_points, self.target_n
                    )));
                }
                disk_polygon(self.boundary_size, self.interior_points, self.seed)
            }
        }
    }
}

/// Mutable counterclockwise neighbor lists of a simple graph.
#[derive(Clone, Debug)]
struct Rotations(Vec<Vec<usize>>);

impl Rotations {
    /// Builds rotations from counterclockwise triangles. Around each vertex
    /// `v`, a triangle `(v, a, b)` puts `a` immediately before `b`.
    fn from_triangles(n: usize, triangles: &[[usize; 3]]) -> Rotations {
        let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &[a, b, c] in triangles {
            succ[a].push((b, c));
            succ[b].push((c, a));
            succ[c].push((a, b));
        }
        let rot = succ
            .into_iter()
            .map(|pairs| {
                let next = |x: usize| pairs.iter().find(|p| p.0 == x).map(|p| p.1);
                // Boundary vertices have one neighbor with no predecessor;
                // interior rotations start at the smallest neighbor.
                let start = pairs
                    .iter()
                    .map(|p| p.0)
                    .find(|&x| !pairs.iter().any(|p| p.1 == x))
                    .unwrap_or_else(|| pairs.iter().map(|p| p.0).min().expect("vertex has a triangle"));
                let mut out = vec![start];
                let mut cur = start;
                while let Some(nx) = next(cur) {
                    if nx == start {
                        break;
                    }
                    out.push(nx);
                    cur = nx;
                }
                out
            })
            .collect();
        Rotations(rot)
    }

    fn pos(&self, v: usize, w: usize) -> usize {
        self.0[v].iter().position(|&x| x == w).expect("adjacent")
    }

    fn pred(&self, v: usize, w: usize) -> usize {
        let r = &self.0[v];
        r[(self.pos(v, w) + r.len() - 1) % r.len()]
    }

    fn insert_after(&mut self, v: usize, anchor: usize, x: usize) {
        let p = self.pos(v, anchor);
        self.0[v].insert(p + 1, x);
    }

    fn remove(&mut self, v: usize, w: usize) {
        let p = self.pos(v, w);
        self.0[v].remove(p);
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, r) in self.0.iter().enumerate() {
            out.extend(r.iter().filter(|&&w| v < w).map(|&w| (v, w)));
        }
        out
    }

    /// Flips edge `uv` to the opposite diagonal when that keeps the graph
    /// simple. Returns whether the flip happened.
    fn try_flip(&mut self, u: usize, v: usize) -> bool {
        // Face left of u->v is (u, v, x); face left of v->u is (v, u, y).
        let x = self.pred(v, u);
        let y = self.pred(u, v);
        if x == y || self.0[x].contains(&y) {
            return false;
        }
        self.remove(u, v);
        self.remove(v, u);
        self.insert_after(x, self.pred(x, v), y);
        self.insert_after(y, self.pred(y, u), x);
        true
    }

    fn into_embedding(self) -> Embedding {
        Embedding::from_rotation_system(&RotationSystem::new(self.0)).expect("generator keeps rotations consistent")
    }

    fn from_embedding(e: &Embedding) -> Rotations {
        Rotations(e.to_rotation_system().rotations)
    }
}

fn k4_triangles() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]
}

fn sphere(e: Embedding) -> Triangulation {
    Triangulation::new(e, Mode::Sphere, None).expect("generator output is a sphere triangulation")
}

/// Random stacked triangulation: starting from K4, repeatedly puts a new
/// vertex inside a uniformly chosen face.
pub fn stacked(target_n: usize, seed: u64) -> Result<Triangulation, GenError> {
    if target_n < 4 {
        return Err(GenError::InvalidParameter(format!("stacked needs n >= 4, got {target_n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triangles = k4_triangles();
    for x in 4..target_n {
        let i = rng.gen_range(0..triangles.len());
        let [a, b, c] = triangles[i];
        triangles[i] = [a, b, x];
        triangles.push([b, c, x]);
        triangles.push([c, a, x]);
    }
    Ok(sphere(Rotations::from_triangles(target_n, &triangles).into_embedding()))
}

/// Applies `steps` random flip attempts. Each attempt picks a uniform edge;
/// flips that would create a parallel edge are skipped.
pub fn random_flips(t: &Triangulation, steps: usize, seed: u64) -> Result<Triangulation, GenError> {
    if t.mode() != Mode::Sphere || t.n() < 4 {
        return Err(GenError::InvalidParameter("flips need a sphere triangulation with n >= 4".into()));
    }
    if steps == 0 {
        return Ok(t.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot = Rotations::from_embedding(t.embedding());
    for _ in 0..steps {
        let edges = rot.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        rot.try_flip(u, v);
    }
    Ok(sphere(rot.into_embedding()))
}

/// One triangulation per isomorphism class (up to reflection) on `n`
/// vertices, in increasing canonical-code order, each in canonical labeling.
pub fn exhaustive_sphere(n: usize, allow_beyond_cap: bool) -> Result<Vec<Triangulation>, GenError> {
    if n < 4 {
        return Err(GenError::InvalidParameter(format!("exhaustive enumeration needs n >= 4, got {n}")));
    }
    if n > EXHAUSTIVE_CAP && !allow_beyond_cap {
        return Err(GenError::ResourceGuard { n, cap: EXHAUSTIVE_CAP });
    }
    let start = stacked(n, 0)?;
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut found: Vec<(CanonicalCode, RotationSystem)> = Vec::new();
    let mut queue = VecDeque::new();

    let (code, rs) = start.embedding().canonical_form();
    seen.insert(code.clone());
    found.push((code, rs.clone()));
    queue.push_back(rs);

    while let Some(rs) = queue.pop_front() {
        let base = Rotations(rs.rotations);
        for (u, v) in base.edges() {
            let mut r = base.clone();
            if !r.try_flip(u, v) {
                continue;
            }
            let (code, canon) = r.into_embedding().canonical_form();
            if seen.insert(code.clone()) {
                found.push((code, canon.clone()));
                queue.push_back(canon);
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found
        .into_iter()
        .map(|(_, rs)| sphere(Embedding::from_rotation_system(&rs).expect("canonical form is valid")))
        .collect())
}

/// Random triangulated polygon: the boundary is `0..boundary_size` in
/// counterclockwise order, ears are cut at random, then `interior_points`
/// vertices are stacked into random finite faces.
pub fn disk_polygon(boundary_size: usize, interior_points: usize, seed: u64) -> Result<Triangulation, GenError> {
    if boundary_size < 3 {
        return Err(GenError::InvalidParameter(format!("boundary_size must be >= 3, got {boundary_size}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polygon: Vec<usize> = (0..boundary_size).collect();
    let mut triangles = Vec::new();
    while polygon.len() > 3 {
        let k = polygon.len();
        let i = rng.gen_range(0..k);
        triangles.push([polygon[(i + k - 1) % k], polygon[i], polygon[(i + 1) % k]]);
        polygon.remove(i);
    }
    triangles.push([polygon[0], polygon[1], polygon[2]]);
    let n = boundary_size + interior_points;
    for x in boundary_size..n {
        let i = rng.gen_range(0..triangles.len());
        let [a, b, c] = triangles[i];
        triangles[i] = [a, b, x];
        triangles.push([b, c, x]);
        triangles.push([c, a, x]);
    }
    let e = Rotations::from_triangles(n, &triangles).into_embedding();
    let outer = e.find_dart(1, 0);
    Ok(Triangulation::new(e, Mode::Disk, outer).expect("generator output is a disk triangulation"))
}

/// `count` random sphere triangulations on `n` vertices with per-instance
/// seeds drawn from `seed`.
pub fn random_sphere_corpus(count: usize, n: usize, seed: u64, flip_steps: usize) -> Result<Vec<(u64, Triangulation)>, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| rng.gen::<u64>())
        .collect::<Vec<_>>()
        .into_iter()
        .map(|s| GenSpec::sphere(n, s, flip_steps).generate().map(|t| (s, t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::validate_triangulation;

    #[test]
    fn stacked_four_is_k4() {
        let t = stacked(4, 123).unwrap();
        let k4 = RotationSystem::new(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]);
        assert_eq!(t.embedding().to_rotation_system(), k4);
    }

    #[test]
    fn stacked_is_valid_and_deterministic() {
        let a = stacked(10, 7).unwrap();
        let b = stacked(10, 7).unwrap();
        assert_eq!(a, b);
        assert!(validate_triangulation(a.embedding(), Mode::Sphere, None).is_pass());
        assert_eq!(a.m(), 24);
    }

    #[test]
    fn k4_flips_are_all_skipped() {
        let t = stacked(4, 0).unwrap();
        for (u, v) in Rotations::from_embedding(t.embedding()).edges() {
            let mut r = Rotations::from_embedding(t.embedding());
            assert!(!r.try_flip(u, v), "flip of {u}-{v} should be illegal on K4");
        }
        assert_eq!(random_flips(&t, 25, 1).unwrap(), t);
    }

    #[test]
    fn zero_flips_is_identity() {
        let t = stacked(8, 3).unwrap();
        assert_eq!(random_flips(&t, 0, 99).unwrap(), t);
    }

    #[test]
    fn flips_preserve_counts() {
        let t = stacked(12, 5).unwrap();
        let f = random_flips(&t, 200, 5).unwrap();
        assert_eq!((f.n(), f.m()), (12, 30));
        assert!(f.embedding().is_simple());
    }

    #[test]
    fn exhaustive_small_counts() {
        assert_eq!(exhaustive_sphere(4, false).unwrap().len(), 1);
        assert_eq!(exhaustive_sphere(5, false).unwrap().len(), 1);
        assert_eq!(exhaustive_sphere(6, false).unwrap().len(), 2);
    }

    #[test]
    fn exhaustive_guard() {
        assert_eq!(exhaustive_sphere(10, false), Err(GenError::ResourceGuard { n: 10, cap: 9 }));
        assert!(exhaustive_sphere(3, true).is_err());
    }

    #[test]
    fn disk_polygons() {
        let t = disk_polygon(3, 0, 1).unwrap();
        assert_eq!((t.n(), t.m()), (3, 3));
        let t = disk_polygon(4, 0, 1).unwrap();
        assert_eq!((t.n(), t.m()), (4, 5));
        let t = disk_polygon(6, 2, 9).unwrap();
        assert_eq!(t.n(), 8);
        assert_eq!(t.faces().face(t.outer_face()).len(), 6);
        assert!(validate_triangulation(t.embedding(), Mode::Disk, Some(t.outer_dart())).is_pass());
    }

    #[test]
    fn genspec_checks_disk_sizes() {
        let mut g = GenSpec::disk(5, 1, 0);
        g.target_n = 9;
        assert!(g.generate().is_err());
    }
}

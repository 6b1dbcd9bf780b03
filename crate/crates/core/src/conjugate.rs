//! The conjugated triangulation `H` of a triangulation `L`.
//!
//! `H` has a vertex at the midpoint of every edge of `L`. Inside each face of
//! `L` that carries medians, the three midpoints are joined into a triangle.
//! In sphere mode every face carries medians; in disk mode the outer face
//! does not, so midpoints of boundary edges end up with degree 2.
//!
//! `H` inherits its rotation system from `L`. Around the midpoint of edge
//! `u -> v`, counterclockwise: the two medians inside the face left of
//! `u -> v` (first toward the side at `v`, then toward the side at `u`), then
//! the two medians inside the face left of `v -> u` (side at `u`, then side
//! at `v`). The result is planar by construction.
//!
//! Median ids follow `L`'s face order. For each dart `x` on a median-carrying
//! face, one median joins `edge(x)` to `edge(next(x))`; its forward dart runs
//! in that direction and lies on the triangle, its reverse dart lies on the
//! face around the `L`-vertex shared by the two sides.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::planar::{Dart, Embedding, EmbeddingError, FaceSet};
use crate::triangulation::{Mode, Triangulation, TriangulationError};
use crate::verdict::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjugateError {
    #[error(transparent)]
    ModeViolation(#[from] TriangulationError),
    #[error("conjugate embedding is invalid: {0}")]
    Embedding(#[from] EmbeddingError),
    #[error("face {face} of H is in neither class: {reason}")]
    ClassificationDefect { face: usize, reason: String },
}

/// What a face of `H` corresponds to in `L`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FaceOrigin {
    /// Class 1: the median triangle inside this face of `L`.
    Triangle(usize),
    /// Class 2: the polygon around this vertex of `L`.
    Polygon(usize),
    /// Disk mode: the unbounded face, surrounding all boundary vertices of `L`.
    Outer,
}

/// Which class the drawing's unbounded face belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum InfiniteFaceClass {
    Class2,
    Separate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClassification {
    /// Origin of every face of `H`, indexed by face.
    pub origin: Vec<FaceOrigin>,
    pub class1: Vec<usize>,
    pub class2: Vec<usize>,
    pub infinite_face: usize,
    pub infinite_face_class: InfiniteFaceClass,
}

impl FaceClassification {
    /// Class-2 faces other than the unbounded one.
    pub fn class2_finite(&self) -> impl Iterator<Item = usize> + '_ {
        self.class2.iter().copied().filter(move |&f| f != self.infinite_face)
    }
}

#[derive(Clone, Debug)]
pub struct ConjugateGraph {
    embedding: Embedding,
    faces: FaceSet,
    source: Triangulation,
    mode: Mode,
    vertex_origin: Vec<usize>,
    median_face: Vec<usize>,
    median_corner: Vec<usize>,
    classification: FaceClassification,
    external_vertices: BTreeSet<usize>,
}

/// Builds `H` from `t`, checking that `t` is a triangulation in `mode`.
pub fn conjugate(t: &Triangulation, mode: Mode) -> Result<ConjugateGraph, ConjugateError> {
    let t = if t.mode() == mode {
        t.clone()
    } else {
        Triangulation::new(t.embedding().clone(), mode, Some(t.outer_dart()))?
    };
    let l = t.embedding();
    let lf = t.faces();

    let mut ends = Vec::new();
    let mut median_face = Vec::new();
    let mut median_corner = Vec::new();
    let mut median_of = vec![usize::MAX; l.dart_count()];
    for (fi, face) in lf.iter().enumerate() {
        if !t.carries_medians(fi) {
            continue;
        }
        for &x in face {
            let nx = l.face_successor(x);
            median_of[x.0] = ends.len();
            ends.push([x.edge(), nx.edge()]);
            median_face.push(fi);
            median_corner.push(l.head(x));
        }
    }

    let rotations = (0..l.edge_count())
        .map(|e| {
            let mut rot = Vec::with_capacity(4);
            for x in [Dart::forward(e), Dart::forward(e).twin()] {
                if t.carries_medians(lf.face_of(x)) {
                    rot.push(Dart::forward(median_of[x.0]));
                    rot.push(Dart::forward(median_of[l.face_predecessor(x).0]).twin());
                }
            }
            rot
        })
        .collect();
    let embedding = Embedding::from_darts(ends, rotations)?;
    let faces = embedding.faces()?;

    let mut h = ConjugateGraph {
        vertex_origin: (0..embedding.vertex_count()).collect(),
        embedding,
        faces,
        source: t,
        mode,
        median_face,
        median_corner,
        classification: FaceClassification {
            origin: Vec::new(),
            class1: Vec::new(),
            class2: Vec::new(),
            infinite_face: 0,
            infinite_face_class: InfiniteFaceClass::Separate,
        },
        external_vertices: BTreeSet::new(),
    };
    h.classification = classify_faces(&h)?;
    let inf = h.classification.infinite_face;
    h.faces = h.faces.clone().with_outer(h.faces.face(inf)[0]);
    if mode == Mode::Disk {
        h.external_vertices = h.faces.face(inf).iter().map(|&d| h.embedding.tail(d)).collect();
    }
    Ok(h)
}

/// Sorts the faces of `H` into median triangles and vertex polygons.
pub fn classify_faces(h: &ConjugateGraph) -> Result<FaceClassification, ConjugateError> {
    let l = h.source.embedding();
    let mut origin = Vec::with_capacity(h.faces.len());
    let mut polygon_seen = vec![false; l.vertex_count()];
    let mut outer = None;
    for (fi, face) in h.faces.iter().enumerate() {
        let defect = |reason: String| ConjugateError::ClassificationDefect { face: fi, reason };
        let all_forward = face.iter().all(|d| d.is_forward());
        let all_reverse = face.iter().all(|d| !d.is_forward());
        let same = |f: &dyn Fn(usize) -> usize| face.iter().all(|d| f(d.edge()) == f(face[0].edge()));
        let o = if all_forward && face.len() == 3 && same(&|k| h.median_face[k]) {
            FaceOrigin::Triangle(h.median_face[face[0].edge()])
        } else if all_reverse && same(&|k| h.median_corner[k]) && face.len() == l.degree(h.median_corner[face[0].edge()]) {
            let v = h.median_corner[face[0].edge()];
            if std::mem::replace(&mut polygon_seen[v], true) {
                return Err(defect(format!("second polygon around L-vertex {v}")));
            }
            FaceOrigin::Polygon(v)
        } else if all_reverse && h.mode == Mode::Disk && outer.is_none() {
            outer = Some(fi);
            FaceOrigin::Outer
        } else {
            return Err(defect(format!("boundary of length {} mixes medians of different faces or vertices", face.len())));
        };
        origin.push(o);
    }

    let class1: Vec<usize> = (0..origin.len()).filter(|&f| matches!(origin[f], FaceOrigin::Triangle(_))).collect();
    let class2: Vec<usize> = (0..origin.len()).filter(|&f| matches!(origin[f], FaceOrigin::Polygon(_))).collect();
    let (infinite_face, infinite_face_class) = match h.mode {
        Mode::Disk => {
            let f = outer.ok_or_else(|| ConjugateError::ClassificationDefect {
                face: usize::MAX,
                reason: "disk-mode H has no unbounded face".into(),
            })?;
            (f, InfiniteFaceClass::Separate)
        }
        Mode::Sphere => {
            let v = l.tail(h.source.outer_dart());
            let f = class2
                .iter()
                .copied()
                .find(|&f| origin[f] == FaceOrigin::Polygon(v))
                .ok_or_else(|| ConjugateError::ClassificationDefect {
                    face: usize::MAX,
                    reason: format!("no polygon around L-vertex {v}"),
                })?;
            (f, InfiniteFaceClass::Class2)
        }
    };
    Ok(FaceClassification { origin, class1, class2, infinite_face, infinite_face_class })
}

/// Degree theorem: all degrees are 2 or 4, only external vertices have
/// degree 2, and every inner vertex has degree 4.
pub fn degree_audit(h: &ConjugateGraph) -> Verdict {
    let e = &h.embedding;
    let mut failures = Vec::new();
    for v in 0..e.vertex_count() {
        let d = e.degree(v);
        let external = h.external_vertices.contains(&v);
        if d != 2 && d != 4 {
            failures.push(format!("vertex {v} has degree {d}"));
        } else if d == 2 && !external {
            failures.push(format!("vertex {v} has degree 2 but is not external"));
        }
    }
    Verdict::from_failures(failures)
}

/// Face-intersection theorems on `h`'s own classification.
pub fn face_intersection_audit(h: &ConjugateGraph) -> Verdict {
    audit_classification(h, &h.classification)
}

/// Checks that (a) median triangles share no edge, (b) vertex polygons share
/// no edge, (c) a triangle and a polygon share nothing or exactly one edge
/// with its two endpoints, and (d) bounded polygons only touch degree-4
/// vertices.
pub fn audit_classification(h: &ConjugateGraph, cls: &FaceClassification) -> Verdict {
    let e = &h.embedding;
    let edges_of = |f: usize| -> BTreeSet<usize> { h.faces.face(f).iter().map(|d| d.edge()).collect() };
    let verts_of = |f: usize| -> BTreeSet<usize> { h.faces.face(f).iter().map(|&d| e.tail(d)).collect() };
    let mut failures = Vec::new();

    for (clause, list) in [("a", &cls.class1), ("b", &cls.class2)] {
        for (i, &f) in list.iter().enumerate() {
            let ef = edges_of(f);
            for &g in &list[i + 1..] {
                if let Some(k) = ef.intersection(&edges_of(g)).next() {
                    failures.push(format!("({clause}) faces {f} and {g} share edge {k}"));
                }
            }
        }
    }
    for &f in &cls.class1 {
        let (ef, vf) = (edges_of(f), verts_of(f));
        for &g in &cls.class2 {
            let shared_e: Vec<usize> = ef.intersection(&edges_of(g)).copied().collect();
            let shared_v: BTreeSet<usize> = vf.intersection(&verts_of(g)).copied().collect();
            let ok = match shared_e.as_slice() {
                [] => shared_v.is_empty(),
                [k] => shared_v == BTreeSet::from(e.edge_ends(*k)),
                _ => false,
            };
            if !ok {
                failures.push(format!(
                    "(c) faces {f} and {g} share {} edges and {} vertices",
                    shared_e.len(),
                    shared_v.len()
                ));
            }
        }
    }
    for f in cls.class2_finite() {
        for v in verts_of(f) {
            if e.degree(v) != 4 {
                failures.push(format!("(d) vertex {v} on polygon {f} has degree {}", e.degree(v)));
            }
        }
    }
    Verdict::from_failures(failures)
}

impl ConjugateGraph {
    pub fn of(t: &Triangulation) -> Result<ConjugateGraph, ConjugateError> {
        conjugate(t, t.mode())
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn source(&self) -> &Triangulation {
        &self.source
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.embedding.vertex_count()
    }

    pub fn m(&self) -> usize {
        self.embedding.edge_count()
    }

    /// The `L`-edge subdivided by `H`-vertex `v`.
    pub fn vertex_origin(&self, v: usize) -> usize {
        self.vertex_origin[v]
    }

    /// The `L`-face containing median `k`.
    pub fn median_face(&self, k: usize) -> usize {
        self.median_face[k]
    }

    /// The `L`-vertex between the two sides joined by median `k`.
    pub fn median_corner(&self, k: usize) -> usize {
        self.median_corner[k]
    }

    pub fn classification(&self) -> &FaceClassification {
        &self.classification
    }

    /// Vertices on the unbounded face (disk mode only).
    pub fn external_vertices(&self) -> &BTreeSet<usize> {
        &self.external_vertices
    }

    /// `H`-vertices whose `L`-edge lies on `L`'s outer boundary (disk mode).
    pub fn boundary_edge_vertices(&self) -> BTreeSet<usize> {
        if self.mode == Mode::Sphere {
            return BTreeSet::new();
        }
        let t = &self.source;
        (0..self.n())
            .filter(|&v| {
                let d = Dart::forward(self.vertex_origin[v]);
                [d, d.twin()].iter().any(|&x| t.faces().face_of(x) == t.outer_face())
            })
            .collect()
    }

    pub fn class1_count(&self) -> usize {
        self.classification.class1.len()
    }

    pub fn class2_finite_count(&self) -> usize {
        self.classification.class2_finite().count()
    }

    /// Tab-separated map from each `H`-vertex to the `L`-edge it sits on.
    pub fn provenance_table(&self) -> String {
        let l = self.source.embedding();
        let mut s = String::from("h_vertex\tl_edge\tl_u\tl_v\n");
        for v in 0..self.n() {
            let e = self.vertex_origin[v];
            let [a, b] = l.edge_ends(e);
            let _ = writeln!(s, "{v}\t{e}\t{a}\t{b}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::RotationSystem;

    fn tri(rot: Vec<Vec<usize>>, mode: Mode, outer: Option<(usize, usize)>) -> Triangulation {
        let e = Embedding::from_rotation_system(&RotationSystem::new(rot)).unwrap();
        let outer = outer.map(|(u, v)| e.find_dart(u, v).unwrap());
        Triangulation::new(e, mode, outer).unwrap()
    }

    fn k4() -> Triangulation {
        tri(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]], Mode::Sphere, None)
    }

    fn triangle() -> Triangulation {
        tri(vec![vec![1, 2], vec![2, 0], vec![0, 1]], Mode::Sphere, None)
    }

    fn fan() -> Triangulation {
        tri(vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]], Mode::Disk, Some((1, 0)))
    }

    fn histogram(h: &ConjugateGraph) -> Vec<(usize, usize)> {
        h.embedding().stats().unwrap().degree_histogram.into_iter().collect()
    }

    #[test]
    fn k4_gives_octahedron() {
        let h = ConjugateGraph::of(&k4()).unwrap();
        assert_eq!((h.n(), h.m()), (6, 12));
        assert!(h.embedding().is_simple());
        assert_eq!(histogram(&h), vec![(4, 6)]);
        assert_eq!(h.faces().len(), 8);
        assert!(h.faces().lengths().all(|l| l == 3));
    }

    #[test]
    fn k4_classification() {
        let h = ConjugateGraph::of(&k4()).unwrap();
        let c = h.classification();
        assert_eq!((c.class1.len(), c.class2.len()), (4, 4));
        assert_eq!(h.class2_finite_count(), 3);
        assert_eq!(c.infinite_face_class, InfiniteFaceClass::Class2);
        assert!(degree_audit(&h).is_pass());
        assert!(face_intersection_audit(&h).is_pass());
    }

    #[test]
    fn triangle_gives_doubled_triangle() {
        let h = ConjugateGraph::of(&triangle()).unwrap();
        assert_eq!((h.n(), h.m()), (3, 6));
        assert!(!h.embedding().is_simple());
        let c = h.classification();
        assert_eq!(c.class1.len(), 2);
        assert_eq!(c.class2.len(), 3);
        assert!(c.class2.iter().all(|&f| h.faces().face(f).len() == 2));
        assert!(face_intersection_audit(&h).is_pass());
    }

    #[test]
    fn fan_disk() {
        let h = ConjugateGraph::of(&fan()).unwrap();
        assert_eq!((h.n(), h.m()), (5, 6));
        assert_eq!(histogram(&h), vec![(2, 4), (4, 1)]);
        // The chord 0-2 is the only L-edge with two finite faces.
        let chord = (0..5).find(|&v| h.embedding().degree(v) == 4).unwrap();
        assert_eq!(h.source().embedding().edge_ends(h.vertex_origin(chord)), [0, 2]);
        assert_eq!(h.classification().infinite_face_class, InfiniteFaceClass::Separate);
        assert_eq!(h.class2_finite_count(), 0);
        assert!(degree_audit(&h).is_pass());
        assert!(face_intersection_audit(&h).is_pass());
        let deg2: BTreeSet<usize> = (0..5).filter(|&v| h.embedding().degree(v) == 2).collect();
        assert_eq!(deg2, h.boundary_edge_vertices());
    }

    #[test]
    fn sphere_mode_rejects_disk_input() {
        assert!(matches!(conjugate(&fan(), Mode::Sphere), Err(ConjugateError::ModeViolation(_))));
    }

    #[test]
    fn deleted_edge_fails_degree_audit() {
        let mut h = ConjugateGraph::of(&k4()).unwrap();
        h.embedding = h.embedding.without_edge(0).unwrap();
        assert!(degree_audit(&h).is_fail());
    }

    #[test]
    fn reassigned_polygon_fails_clause_a() {
        let h = ConjugateGraph::of(&k4()).unwrap();
        let mut cls = h.classification().clone();
        let moved = cls.class2.pop().unwrap();
        cls.class1.push(moved);
        let v = audit_classification(&h, &cls);
        assert!(v.failures().iter().any(|f| f.starts_with("(a)")), "{v}");
    }

    #[test]
    fn provenance_lists_every_vertex() {
        let h = ConjugateGraph::of(&k4()).unwrap();
        assert_eq!(h.provenance_table().lines().count(), 7);
    }
}

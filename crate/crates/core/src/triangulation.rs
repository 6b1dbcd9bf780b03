use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::planar::text::{self, TextRecord};
use crate::planar::{Dart, Embedding, EmbeddingError, FaceSet};
use crate::verdict::Verdict;

/// Whether every face is a triangle (`Sphere`) or every face except the
/// designated outer face (`Disk`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Sphere,
    Disk,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sphere => "sphere",
            Mode::Disk => "disk",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sphere" => Ok(Mode::Sphere),
            "disk" => Ok(Mode::Disk),
            other => Err(format!("unknown mode `{other}` (expected sphere or disk)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("no dart {0} -> {1} to designate the outer face")]
    BadOuterDart(usize, usize),
    #[error("not a {mode} triangulation: {verdict}")]
    ModeViolation { mode: Mode, verdict: Verdict },
}

/// First dart of the longest face, lowest face index on ties.
pub fn default_outer_dart(faces: &FaceSet) -> Dart {
    let (mut best, mut len) = (0, 0);
    for (i, l) in faces.lengths().enumerate() {
        if l > len {
            best = i;
            len = l;
        }
    }
    faces.face(best)[0]
}

/// Checks triangulation-ness in the given mode. The outer face matters only
/// in disk mode; `None` picks [`default_outer_dart`].
pub fn validate_triangulation(e: &Embedding, mode: Mode, outer: Option<Dart>) -> Verdict {
    let faces = match e.faces() {
        Ok(f) => f,
        Err(err) => return Verdict::Fail(vec![err.to_string()]),
    };
    let mut failures = Vec::new();
    if !e.is_simple() {
        failures.push("graph has parallel edges".to_string());
    }
    let outer_face = match mode {
        Mode::Sphere => None,
        Mode::Disk => Some(faces.face_of(outer.unwrap_or_else(|| default_outer_dart(&faces)))),
    };
    for (i, face) in faces.iter().enumerate() {
        if Some(i) != outer_face && face.len() != 3 {
            failures.push(format!("face {i} has length {}", face.len()));
        }
    }
    if mode == Mode::Sphere {
        let (n, m) = (e.vertex_count() as i64, e.edge_count() as i64);
        if m != 3 * n - 6 {
            failures.push(format!("m = {m} but 3n - 6 = {}", 3 * n - 6));
        }
    }
    Verdict::from_failures(failures)
}

/// A validated planar triangulation together with its traced faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    embedding: Embedding,
    mode: Mode,
    outer: Dart,
    faces: FaceSet,
}

impl Triangulation {
    pub fn new(embedding: Embedding, mode: Mode, outer: Option<Dart>) -> Result<Self, TriangulationError> {
        let faces = embedding.faces()?;
        let outer = outer.unwrap_or_else(|| match mode {
            Mode::Disk => default_outer_dart(&faces),
            Mode::Sphere => Dart(0),
        });
        match validate_triangulation(&embedding, mode, Some(outer)) {
            Verdict::Pass => {}
            verdict => return Err(TriangulationError::ModeViolation { mode, verdict }),
        }
        let faces = faces.with_outer(outer);
        Ok(Triangulation { embedding, mode, outer, faces })
    }

    pub fn from_record(rec: &TextRecord, mode: Mode) -> Result<Self, TriangulationError> {
        let e = Embedding::from_rotation_system(&rec.rotation)?;
        let outer = match rec.outer {
            Some((u, v)) => Some(e.find_dart(u, v).ok_or(TriangulationError::BadOuterDart(u, v))?),
            None => None,
        };
        Triangulation::new(e, mode, outer)
    }

    pub fn to_text(&self, comments: &[String]) -> String {
        let outer = (self.embedding.tail(self.outer), self.embedding.head(self.outer));
        let outer = (self.mode == Mode::Disk).then_some(outer);
        text::write_record(&self.embedding.to_rotation_system(), outer, comments)
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// A dart on the outer face. In sphere mode this only fixes which face is
    /// drawn as unbounded.
    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn outer_face(&self) -> usize {
        self.faces.face_of(self.outer)
    }

    pub fn n(&self) -> usize {
        self.embedding.vertex_count()
    }

    pub fn m(&self) -> usize {
        self.embedding.edge_count()
    }

    /// Faces that receive medians: all in sphere mode, all finite ones in
    /// disk mode.
    pub fn carries_medians(&self, face: usize) -> bool {
        self.mode == Mode::Sphere || face != self.outer_face()
    }

    /// Vertices on the outer face boundary (disk mode); empty for spheres.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        if self.mode == Mode::Sphere {
            return Vec::new();
        }
        let mut vs: Vec<usize> = self.faces.face(self.outer_face()).iter().map(|&d| self.embedding.tail(d)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Number of vertices of degree 4.
    pub fn degree4_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.embedding.degree(v) == 4).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::RotationSystem;

    fn emb(rot: Vec<Vec<usize>>) -> Embedding {
        Embedding::from_rotation_system(&RotationSystem::new(rot)).unwrap()
    }

    fn k4() -> Embedding {
        emb(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]])
    }

    /// Square 0,1,2,3 (counterclockwise) with chord 0-2.
    fn fan() -> Embedding {
        emb(vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]])
    }

    #[test]
    fn k4_is_sphere_triangulation() {
        assert!(validate_triangulation(&k4(), Mode::Sphere, None).is_pass());
    }

    #[test]
    fn fan_is_disk_not_sphere() {
        let e = fan();
        assert!(validate_triangulation(&e, Mode::Disk, None).is_pass());
        let v = validate_triangulation(&e, Mode::Sphere, None);
        assert!(v.is_fail());
        assert!(v.failures().iter().any(|f| f.contains("length 4")));
    }

    #[test]
    fn fan_outer_face_is_square() {
        let t = Triangulation::new(fan(), Mode::Disk, None).unwrap();
        assert_eq!(t.faces().face(t.outer_face()).len(), 4);
        assert_eq!(t.boundary_vertices(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn triangle_sphere_and_disk() {
        let e = emb(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
        assert!(validate_triangulation(&e, Mode::Sphere, None).is_pass());
        let t = Triangulation::new(e.clone(), Mode::Disk, e.find_dart(1, 0)).unwrap();
        assert_eq!(t.faces().finite_count(), 1);
    }

    #[test]
    fn wrong_mode_is_reported() {
        assert!(matches!(
            Triangulation::new(fan(), Mode::Sphere, None),
            Err(TriangulationError::ModeViolation { .. })
        ));
    }

    #[test]
    fn mode_parses() {
        assert_eq!("disk".parse::<Mode>(), Ok(Mode::Disk));
        assert!("torus".parse::<Mode>().is_err());
    }
}

use std::collections::BTreeMap;

use super::{Dart, Embedding, EmbeddingError};

/// The faces of an embedding as closed dart walks.
///
/// Faces are numbered in order of their smallest dart, so the numbering is a
/// pure function of the embedding's dart ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
    outer: Option<usize>,
}

impl FaceSet {
    pub(crate) fn trace(e: &Embedding) -> Result<FaceSet, EmbeddingError> {
        let mut face_of = vec![usize::MAX; e.dart_count()];
        let mut faces = Vec::new();
        for start in e.darts() {
            if face_of[start.0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                face_of[d.0] = id;
                walk.push(d);
                d = e.face_successor(d);
                if d == start {
                    break;
                }
            }
            faces.push(walk);
        }
        let euler = e.vertex_count() as i64 - e.edge_count() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(EmbeddingError::NonPlanar(euler));
        }
        Ok(FaceSet { faces, face_of, outer: None })
    }

    /// Marks the face containing `dart` as the outer (infinite) face.
    pub fn with_outer(mut self, dart: Dart) -> FaceSet {
        self.outer = Some(self.face_of[dart.0]);
        self
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, i: usize) -> &[Dart] {
        &self.faces[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Dart]> {
        self.faces.iter().map(Vec::as_slice)
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.0]
    }

    pub fn outer_face_index(&self) -> Option<usize> {
        self.outer
    }

    /// Faces other than the outer one; all faces when no outer face is set.
    pub fn finite_count(&self) -> usize {
        self.faces.len() - usize::from(self.outer.is_some())
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().map(Vec::len)
    }
}

/// Basic counts of an embedded graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub f: usize,
    /// Finite faces: all faces but one.
    pub finite_faces: usize,
    pub cyclomatic: i64,
    pub degree_histogram: BTreeMap<usize, usize>,
}

impl GraphStats {
    pub fn of(e: &Embedding, faces: &FaceSet) -> GraphStats {
        let mut degree_histogram = BTreeMap::new();
        for v in 0..e.vertex_count() {
            *degree_histogram.entry(e.degree(v)).or_insert(0) += 1;
        }
        GraphStats {
            n: e.vertex_count(),
            m: e.edge_count(),
            f: faces.len(),
            finite_faces: faces.len() - 1,
            cyclomatic: e.cyclomatic_number(),
            degree_histogram,
        }
    }
}

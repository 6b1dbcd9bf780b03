//! Rotation-system embeddings of connected planar (multi)graphs.
//!
//! An [`Embedding`] stores every edge as a pair of darts. Dart `2e` runs from
//! the first end of edge `e` to the second, dart `2e + 1` runs back. Each
//! vertex keeps its outgoing darts in counterclockwise order.
//!
//! Faces are traced with the predecessor rule: after dart `(u, v)` the face
//! continues with `(v, w)` where `w` immediately precedes `u` in the
//! counterclockwise rotation at `v`. With counterclockwise rotations every
//! face lies to the left of its darts, so bounded faces of a plane drawing are
//! walked counterclockwise and the unbounded face clockwise. Face identities
//! (not counts) depend on this choice.

mod canon;
mod faces;
pub mod text;

pub use canon::CanonicalCode;
pub use faces::{FaceSet, GraphStats};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// A directed half of an edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub usize);

impl Dart {
    pub fn forward(edge: usize) -> Dart {
        Dart(2 * edge)
    }

    pub fn edge(self) -> usize {
        self.0 >> 1
    }

    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("embedding has no vertices")]
    Empty,
    #[error("vertex {vertex} lists neighbor {neighbor}, which is out of range")]
    VertexOutOfRange { vertex: usize, neighbor: usize },
    #[error("malformed rotation: {u} lists {v} but the reverse adjacency does not match")]
    MalformedRotation { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("dart {dart} is listed at vertex {listed_at} but leaves vertex {tail}")]
    DartMisplaced { dart: usize, listed_at: usize, tail: usize },
    #[error("dart {0} is missing from the rotations or listed twice")]
    DartCount(usize),
    #[error("embedding is disconnected: reached {reached} of {total} vertices")]
    Disconnected { reached: usize, total: usize },
    #[error("rotation system is not planar: n - m + f = {0}")]
    NonPlanar(i64),
}

/// Plain rotation lists: for each vertex, its neighbors in counterclockwise
/// order. This is the interchange form used by the text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<usize>>) -> Self {
        RotationSystem { rotations }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }
}

/// A connected embedded graph with stable edge and dart ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    ends: Vec<[usize; 2]>,
    rotations: Vec<Vec<Dart>>,
    slot: Vec<usize>,
}

impl Embedding {
    /// Builds an embedding from simple-graph rotation lists.
    ///
    /// Edges are numbered by scanning vertices in increasing order and each
    /// rotation in its listed order, creating edge `(v, w)` when `v < w`.
    pub fn from_rotation_system(rs: &RotationSystem) -> Result<Self, EmbeddingError> {
        let n = rs.vertex_count();
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        for (v, rot) in rs.rotations.iter().enumerate() {
            for &w in rot {
                if w >= n {
                    return Err(EmbeddingError::VertexOutOfRange { vertex: v, neighbor: w });
                }
                if w == v {
                    return Err(EmbeddingError::SelfLoop(v));
                }
            }
        }
        for (v, rot) in rs.rotations.iter().enumerate() {
            for &w in rot {
                let there = rs.rotations[w].iter().filter(|&&x| x == v).count();
                let here = rot.iter().filter(|&&x| x == w).count();
                if here != 1 || there != 1 {
                    return Err(EmbeddingError::MalformedRotation { u: v, v: w });
                }
            }
        }

        let mut ends = Vec::new();
        let mut edge_of = std::collections::HashMap::new();
        for (v, rot) in rs.rotations.iter().enumerate() {
            for &w in rot {
                if v < w {
                    edge_of.insert((v, w), ends.len());
                    ends.push([v, w]);
                }
            }
        }
        let rotations = rs
            .rotations
            .iter()
            .enumerate()
            .map(|(v, rot)| {
                rot.iter()
                    .map(|&w| {
                        if v < w {
                            Dart::forward(edge_of[&(v, w)])
                        } else {
                            Dart::forward(edge_of[&(w, v)]).twin()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_darts(ends, rotations)
    }

    /// Builds an embedding from explicit edge ends and dart rotations.
    /// Parallel edges are allowed; self-loops are not.
    pub fn from_darts(ends: Vec<[usize; 2]>, rotations: Vec<Vec<Dart>>) -> Result<Self, EmbeddingError> {
        let n = rotations.len();
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        for &[a, b] in &ends {
            if a >= n || b >= n {
                return Err(EmbeddingError::VertexOutOfRange { vertex: a.min(b), neighbor: a.max(b) });
            }
            if a == b {
                return Err(EmbeddingError::SelfLoop(a));
            }
        }
        let darts = 2 * ends.len();
        let mut slot = vec![usize::MAX; darts];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, d) in rot.iter().enumerate() {
                if d.0 >= darts || slot[d.0] != usize::MAX {
                    return Err(EmbeddingError::DartCount(d.0));
                }
                let tail = Self::tail_in(&ends, *d);
                if tail != v {
                    return Err(EmbeddingError::DartMisplaced { dart: d.0, listed_at: v, tail });
                }
                slot[d.0] = i;
            }
        }
        if let Some(missing) = slot.iter().position(|&s| s == usize::MAX) {
            return Err(EmbeddingError::DartCount(missing));
        }
        let emb = Embedding { ends, rotations, slot };
        let reached = emb.reachable_from(0);
        if reached != n {
            return Err(EmbeddingError::Disconnected { reached, total: n });
        }
        Ok(emb)
    }

    fn tail_in(ends: &[[usize; 2]], d: Dart) -> usize {
        ends[d.edge()][d.0 & 1]
    }

    fn reachable_from(&self, start: usize) -> usize {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &d in &self.rotations[v] {
                let w = self.head(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart)
    }

    pub fn tail(&self, d: Dart) -> usize {
        Self::tail_in(&self.ends, d)
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.twin())
    }

    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.ends
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rotations[v].iter().map(move |&d| self.head(d))
    }

    /// Next dart counterclockwise around the tail of `d`.
    pub fn next_ccw(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.tail(d)];
        rot[(self.slot[d.0] + 1) % rot.len()]
    }

    /// Previous dart counterclockwise around the tail of `d`.
    pub fn prev_ccw(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.tail(d)];
        rot[(self.slot[d.0] + rot.len() - 1) % rot.len()]
    }

    /// The dart following `d` on the face to its left.
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.prev_ccw(d.twin())
    }

    /// The dart preceding `d` on the face to its left.
    pub fn face_predecessor(&self, d: Dart) -> Dart {
        self.next_ccw(d).twin()
    }

    pub fn find_dart(&self, u: usize, v: usize) -> Option<Dart> {
        self.rotations.get(u)?.iter().copied().find(|&d| self.head(d) == v)
    }

    pub fn is_simple(&self) -> bool {
        self.rotations.iter().enumerate().all(|(v, rot)| {
            let mut heads: Vec<usize> = rot.iter().map(|&d| self.head(d)).collect();
            heads.sort_unstable();
            heads.windows(2).all(|w| w[0] != w[1]) && !heads.contains(&v)
        })
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.find_dart(u, v).is_some()
    }

    /// Neighbor lists (with multiplicity for parallel edges).
    pub fn to_rotation_system(&self) -> RotationSystem {
        RotationSystem::new((0..self.vertex_count()).map(|v| self.neighbors(v).collect()).collect())
    }

    /// Traces every face. Fails when the rotation system is not a sphere
    /// embedding.
    pub fn faces(&self) -> Result<FaceSet, EmbeddingError> {
        FaceSet::trace(self)
    }

    pub fn stats(&self) -> Result<GraphStats, EmbeddingError> {
        Ok(GraphStats::of(self, &self.faces()?))
    }

    /// m − n + 1; the rank of the cycle space of a connected graph.
    pub fn cyclomatic_number(&self) -> i64 {
        self.edge_count() as i64 - self.vertex_count() as i64 + 1
    }

    /// Same map with every rotation reversed.
    pub fn mirrored(&self) -> Embedding {
        let rotations = self.rotations.iter().map(|r| r.iter().rev().copied().collect()).collect();
        Embedding::from_darts(self.ends.clone(), rotations).expect("mirror of a valid embedding")
    }

    /// Renames vertex `v` to `perm[v]`. Edge ids keep their order.
    pub fn relabeled(&self, perm: &[usize]) -> Embedding {
        assert_eq!(perm.len(), self.vertex_count());
        let ends = self.ends.iter().map(|&[a, b]| [perm[a], perm[b]]).collect();
        let mut rotations = vec![Vec::new(); self.vertex_count()];
        for (v, rot) in self.rotations.iter().enumerate() {
            rotations[perm[v]] = rot.clone();
        }
        Embedding::from_darts(ends, rotations).expect("relabeling of a valid embedding")
    }

    /// Copy of the embedding without edge `e`; remaining edges keep their
    /// relative order and are renumbered densely.
    pub fn without_edge(&self, e: usize) -> Result<Embedding, EmbeddingError> {
        let remap = |d: Dart| -> Dart {
            let k = d.edge();
            let k = if k > e { k - 1 } else { k };
            Dart(2 * k + (d.0 & 1))
        };
        let ends = self.ends.iter().enumerate().filter(|&(k, _)| k != e).map(|(_, &x)| x).collect();
        let rotations = self
            .rotations
            .iter()
            .map(|r| r.iter().copied().filter(|d| d.edge() != e).map(remap).collect())
            .collect();
        Embedding::from_darts(ends, rotations)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        canon::canonical_code(self)
    }

    /// Relabels vertices into the order witnessed by the canonical code, so
    /// isomorphic inputs give identical rotation lists.
    pub fn canonical_form(&self) -> (CanonicalCode, RotationSystem) {
        canon::canonical_form(self)
    }
}

use std::fmt;

use super::{Dart, Embedding, RotationSystem};

/// Isomorphism invariant of a simple embedded graph, up to relabeling and
/// reflection. Compare codes for equality; the byte order is the
/// lexicographic order used to pick the canonical start.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

const UNSET: usize = usize::MAX;

/// BFS code from `start`: vertices are numbered in discovery order, and each
/// vertex lists its neighbors' numbers beginning at the dart it was entered
/// through, turning counterclockwise (or clockwise when `mirror`). Numbers
/// are shifted by one so that `0` can terminate each vertex's list.
fn bfs_code(e: &Embedding, start: Dart, mirror: bool, order: &mut Vec<usize>) -> Vec<u32> {
    let n = e.vertex_count();
    let mut label = vec![UNSET; n];
    let mut entry = vec![start; n];
    order.clear();
    let root = e.tail(start);
    label[root] = 0;
    order.push(root);
    let mut code = Vec::with_capacity(n + e.dart_count());
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        let mut d = entry[v];
        for _ in 0..e.degree(v) {
            let w = e.head(d);
            if label[w] == UNSET {
                label[w] = order.len();
                entry[w] = d.twin();
                order.push(w);
            }
            code.push(label[w] as u32 + 1);
            d = if mirror { e.prev_ccw(d) } else { e.next_ccw(d) };
        }
        code.push(0);
    }
    code
}

fn minimal_code(e: &Embedding) -> Vec<u32> {
    // TODO: prune starts by vertex degree first; every dart is tried today.
    let mut order = Vec::new();
    let mut best: Option<Vec<u32>> = None;
    for d in e.darts() {
        for mirror in [false, true] {
            let code = bfs_code(e, d, mirror, &mut order);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.expect("embedding has at least one edge")
}

fn to_bytes(code: &[u32]) -> CanonicalCode {
    CanonicalCode(code.iter().flat_map(|x| x.to_be_bytes()).collect())
}

pub(super) fn canonical_code(e: &Embedding) -> CanonicalCode {
    to_bytes(&minimal_code(e))
}

/// The minimal code read back as rotation lists: vertex `i` is the `i`-th
/// vertex discovered, and its list is the `i`-th code segment.
pub(super) fn canonical_form(e: &Embedding) -> (CanonicalCode, RotationSystem) {
    let code = minimal_code(e);
    let rotations = code
        .split(|&x| x == 0)
        .take(e.vertex_count())
        .map(|seg| seg.iter().map(|&x| x as usize - 1).collect())
        .collect();
    (to_bytes(&code), RotationSystem::new(rotations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Embedding {
        Embedding::from_rotation_system(&RotationSystem::new(vec![
            vec![1, 2, 3],
            vec![0, 3, 2],
            vec![0, 1, 3],
            vec![0, 2, 1],
        ]))
        .unwrap()
    }

    #[test]
    fn relabeled_k4_has_same_code() {
        let e = k4();
        let r = e.relabeled(&[2, 0, 3, 1]);
        assert_eq!(e.canonical_code(), r.canonical_code());
    }

    #[test]
    fn mirror_has_same_code() {
        let e = k4();
        assert_eq!(e.canonical_code(), e.mirrored().canonical_code());
    }

    #[test]
    fn canonical_form_is_fixed_point() {
        let e = k4().relabeled(&[3, 1, 0, 2]);
        let (code, rs) = e.canonical_form();
        let again = Embedding::from_rotation_system(&rs).unwrap();
        assert_eq!(again.canonical_code(), code);
        assert_eq!(again.canonical_form().1, rs);
    }
}

//! Exact small-scale vertex coloring.

use thiserror::Error;

use crate::planar::Embedding;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChromaticError {
    #[error("graph has {n} vertices, above the search cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticVerdict {
    /// Smallest color count that worked, if any count up to the cap did.
    pub gamma_upper: Option<usize>,
    pub within_cap: bool,
    pub coloring: Option<Vec<usize>>,
}

pub const DEFAULT_SIZE_CAP: usize = 30;

/// Tries `1..=color_cap` colors in turn with plain backtracking. Vertices are
/// taken in order of decreasing degree, and a vertex may open at most one new
/// color, which removes color-permutation symmetry.
pub fn chromatic_check(e: &Embedding, color_cap: usize, size_cap: usize) -> Result<ChromaticVerdict, ChromaticError> {
    let n = e.vertex_count();
    if n > size_cap {
        return Err(ChromaticError::SizeCapExceeded { n, cap: size_cap });
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut a: Vec<usize> = e.neighbors(v).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));

    for k in 1..=color_cap {
        let mut color = vec![usize::MAX; n];
        if extend(&adj, &order, 0, k, 0, &mut color) {
            return Ok(ChromaticVerdict { gamma_upper: Some(k), within_cap: true, coloring: Some(color) });
        }
    }
    Ok(ChromaticVerdict { gamma_upper: None, within_cap: false, coloring: None })
}

fn extend(adj: &[Vec<usize>], order: &[usize], i: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    for c in 0..k.min(used + 1) {
        if adj[v].iter().all(|&w| color[w] != c) {
            color[v] = c;
            if extend(adj, order, i + 1, k, used.max(c + 1), color) {
                return true;
            }
        }
    }
    color[v] = usize::MAX;
    false
}

/// Checks a coloring against the edge list alone.
pub fn is_proper_coloring(e: &Embedding, coloring: &[usize]) -> bool {
    coloring.len() == e.vertex_count() && e.edges().iter().all(|&[u, v]| coloring[u] != coloring[v])
}

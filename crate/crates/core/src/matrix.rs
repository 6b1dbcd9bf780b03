//! Vertex- and arc-adjacency matrices of oriented graphs.
//!
//! `F[i][j] = 1` iff there is an arc `i -> j`. `R[a][b] = 1` iff arc `a` ends
//! where arc `b` starts (the straight conversion). A 0/1 matrix is the `R` of
//! some digraph exactly when its 1-entries split into disjoint all-ones
//! blocks, one per vertex with the in-arcs as rows and the out-arcs as
//! columns; such a matrix is called quasicanonical. Rebuilding the digraph
//! from the blocks is the reverse conversion.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::conjugate::ConjugateGraph;
use crate::digraph::{arc_aligned_isomorphism, is_arc_aligned_isomorphism, Digraph};
use crate::euler::OrientedConjugate;
use crate::triangulation::{Mode, Triangulation};
use crate::verdict::Verdict;

const WORD: usize = 64;

/// Dense square 0/1 matrix, one bit per cell, rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    order: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    row_sums: Vec<usize>,
    col_sums: Vec<usize>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({})\n{}", self.order, self.to_text())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("rows {row_a} and {row_b} overlap without being equal")]
    NotQuasicanonical { row_a: usize, row_b: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl BitMatrix {
    pub fn zeros(order: usize) -> Self {
        let words_per_row = order.div_ceil(WORD);
        BitMatrix {
            order,
            words_per_row,
            bits: vec![0; order * words_per_row],
            row_sums: vec![0; order],
            col_sums: vec![0; order],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let mut m = BitMatrix::zeros(rows.len());
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), rows.len(), "row {i} has the wrong length");
            for (j, &x) in row.iter().enumerate() {
                assert!(x <= 1, "entry ({i}, {j}) is not 0/1");
                m.set(i, j, x == 1);
            }
        }
        m
    }

    pub fn identity(order: usize) -> Self {
        let mut m = BitMatrix::zeros(order);
        for i in 0..order {
            m.set(i, i, true);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if self.get(i, j) == value {
            return;
        }
        let w = &mut self.bits[i * self.words_per_row + j / WORD];
        *w ^= 1 << (j % WORD);
        if value {
            self.row_sums[i] += 1;
            self.col_sums[j] += 1;
        } else {
            self.row_sums[i] -= 1;
            self.col_sums[j] -= 1;
        }
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row_sums[i]
    }

    pub fn col_sum(&self, j: usize) -> usize {
        self.col_sums[j]
    }

    pub fn row_sums(&self) -> &[usize] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[usize] {
        &self.col_sums
    }

    pub fn total(&self) -> usize {
        self.row_sums.iter().sum()
    }

    /// Column indices of the 1-entries in row `i`.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.order).filter(|&j| self.get(i, j)).collect()
    }

    /// Recomputes the sum caches from the bits and compares.
    pub fn caches_consistent(&self) -> bool {
        (0..self.order).all(|i| self.row_sums[i] == self.row_words(i).iter().map(|w| w.count_ones() as usize).sum())
            && (0..self.order).all(|j| self.col_sums[j] == (0..self.order).filter(|&i| self.get(i, j)).count())
    }

    /// Order on the first line, then one row of `0`/`1` characters per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for i in 0..self.order {
            s.extend((0..self.order).map(|j| if self.get(i, j) { '1' } else { '0' }));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, MatrixError> {
        let err = |line: usize, message: String| MatrixError::Parse { line, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, first) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
        let order: usize = first.trim().parse().map_err(|_| err(ln + 1, format!("bad order `{}`", first.trim())))?;
        let mut m = BitMatrix::zeros(order);
        let mut rows = 0;
        for (ln, line) in lines {
            let line = line.trim();
            if rows == order {
                return Err(err(ln + 1, "more rows than the order".into()));
            }
            if line.len() != order {
                return Err(err(ln + 1, format!("row has {} cells, expected {order}", line.len())));
            }
            for (j, c) in line.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(rows, j, true),
                    other => return Err(err(ln + 1, format!("unexpected character `{other}`"))),
                }
            }
            rows += 1;
        }
        if rows != order {
            return Err(err(text.lines().count(), format!("{rows} rows, expected {order}")));
        }
        Ok(m)
    }
}

pub fn vertex_adjacency_matrix_of(d: &Digraph) -> BitMatrix {
    let mut m = BitMatrix::zeros(d.vertex_count());
    for &(t, h) in d.arcs() {
        m.set(t, h, true);
    }
    m
}

/// `F` of the oriented conjugate.
pub fn vertex_adjacency_matrix(d: &OrientedConjugate) -> BitMatrix {
    vertex_adjacency_matrix_of(d.digraph())
}

pub fn arc_adjacency_matrix_of(d: &Digraph) -> BitMatrix {
    let mut out = vec![Vec::new(); d.vertex_count()];
    for (a, &(t, _)) in d.arcs().iter().enumerate() {
        out[t].push(a);
    }
    let mut m = BitMatrix::zeros(d.arc_count());
    for (a, &(_, h)) in d.arcs().iter().enumerate() {
        for &b in &out[h] {
            m.set(a, b, true);
        }
    }
    m
}

/// `R` of the oriented conjugate (the straight conversion).
pub fn arc_adjacency_matrix(d: &OrientedConjugate) -> BitMatrix {
    arc_adjacency_matrix_of(d.digraph())
}

/// Zero diagonal and no symmetric pair of 1-entries.
pub fn antisymmetry_check(m: &BitMatrix) -> Verdict {
    for i in 0..m.order() {
        if m.get(i, i) {
            return Verdict::Fail(vec![format!("diagonal entry ({i}, {i}) is 1")]);
        }
        for j in i + 1..m.order() {
            if m.get(i, j) && m.get(j, i) {
                return Verdict::Fail(vec![format!("entries ({i}, {j}) and ({j}, {i}) are both 1")]);
            }
        }
    }
    Verdict::Pass
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiDecomposition {
    /// Ordered by smallest row.
    pub blocks: Vec<Block>,
    /// 1-entries not covered by any block.
    pub unassigned: usize,
}

impl QuasiDecomposition {
    pub fn all_blocks_sized(&self, rows: usize, cols: usize) -> bool {
        self.blocks.iter().all(|b| b.rows.len() == rows && b.cols.len() == cols)
    }

    /// One `rows | cols` line per block, ids separated by spaces.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        self.blocks.iter().map(|b| format!("{} | {}\n", join(&b.rows), join(&b.cols))).collect()
    }
}

/// Groups non-zero rows into classes of equal rows. Fails on the first pair
/// of rows that share a column without being equal. Once the row classes
/// have pairwise disjoint supports, every column meets exactly one class, so
/// the column-side condition holds automatically.
pub fn quasicanonical_decomposition(m: &BitMatrix) -> Result<QuasiDecomposition, MatrixError> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'rows: for i in (0..m.order()).filter(|&i| m.row_sum(i) > 0) {
        for class in &mut classes {
            let rep = class[0];
            let (a, b) = (m.row_words(rep), m.row_words(i));
            if a == b {
                class.push(i);
                continue 'rows;
            }
            if a.iter().zip(b).any(|(x, y)| x & y != 0) {
                return Err(MatrixError::NotQuasicanonical { row_a: rep, row_b: i });
            }
        }
        classes.push(vec![i]);
    }
    let blocks: Vec<Block> = classes
        .into_iter()
        .map(|rows| {
            let cols = m.row_support(rows[0]);
            Block { rows, cols }
        })
        .collect();
    let covered: usize = blocks.iter().map(|b| b.rows.len() * b.cols.len()).sum();
    Ok(QuasiDecomposition { blocks, unassigned: m.total() - covered })
}

/// Rebuilds a digraph whose arc-adjacency matrix is `m`, with arc `a` of the
/// result being row/column `a`. Vertices: one per block in block order, then
/// a fresh source for each zero column and a fresh sink for each zero row,
/// allocated in arc order.
pub fn reverse_convert(m: &BitMatrix) -> Result<Digraph, MatrixError> {
    let dec = quasicanonical_decomposition(m)?;
    let mut head = vec![usize::MAX; m.order()];
    let mut tail = vec![usize::MAX; m.order()];
    for (k, b) in dec.blocks.iter().enumerate() {
        for &r in &b.rows {
            head[r] = k;
        }
        for &c in &b.cols {
            tail[c] = k;
        }
    }
    let mut next = dec.blocks.len();
    for a in 0..m.order() {
        for end in [&mut tail[a], &mut head[a]] {
            if *end == usize::MAX {
                *end = next;
                next += 1;
            }
        }
    }
    Ok(Digraph::new(next, tail.into_iter().zip(head).collect()))
}

/// Straight conversion followed by reverse conversion, with the vertex
/// bijection back to `d` returned as the exhibit. Arcs keep their ids.
pub fn round_trip(d: &Digraph) -> Result<Vec<usize>, String> {
    let r = arc_adjacency_matrix_of(d);
    let g = reverse_convert(&r).map_err(|e| e.to_string())?;
    if arc_adjacency_matrix_of(&g) != r {
        return Err("rebuilt digraph has a different arc-adjacency matrix".into());
    }
    if g.vertex_count() != d.vertex_count() {
        return Err(format!("rebuilt digraph has {} vertices, original {}", g.vertex_count(), d.vertex_count()));
    }
    let phi = arc_aligned_isomorphism(d, &g).ok_or("no arc-aligned isomorphism")?;
    if phi.contains(&usize::MAX) {
        return Err("original has isolated vertices".into());
    }
    if !is_arc_aligned_isomorphism(d, &g, &phi) {
        return Err("exhibited map fails the independent check".into());
    }
    Ok(phi)
}

/// Divisibility facts for sphere instances with at least four vertices.
pub fn multiplicity_audit(h: &ConjugateGraph, f: &BitMatrix, r: &BitMatrix) -> Verdict {
    if h.mode() != Mode::Sphere {
        return Verdict::Skipped("disk mode".into());
    }
    if h.source().n() < 4 {
        return Verdict::Skipped(format!("n_L = {} < 4", h.source().n()));
    }
    let mut failures = Vec::new();
    let mut need = |ok: bool, msg: String| {
        if !ok {
            failures.push(msg);
        }
    };
    let sigma_r = r.total();
    need(f.order() == h.n(), format!("F order {} != n_H {}", f.order(), h.n()));
    need(r.order() == h.m(), format!("R order {} != m_H {}", r.order(), h.m()));
    need(r.order().is_multiple_of(6), format!("m_H = {} is not a multiple of 6", r.order()));
    need(f.order().is_multiple_of(3), format!("n_H = {} is not a multiple of 3", f.order()));
    need(sigma_r == 2 * h.m(), format!("sum of R = {sigma_r} != 2 m_H = {}", 2 * h.m()));
    need(sigma_r.is_multiple_of(12), format!("sum of R = {sigma_r} is not a multiple of 12"));
    need(sigma_r.is_multiple_of(4), format!("sum of R = {sigma_r} is not a multiple of 4"));
    Verdict::from_failures(failures)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    F,
    R,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::F => "F",
            MatrixKind::R => "R",
        })
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "F" | "f" => Ok(MatrixKind::F),
            "R" | "r" => Ok(MatrixKind::R),
            other => Err(format!("unknown matrix kind `{other}` (expected F or R)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactnessMetrics {
    pub order: usize,
    pub ones: usize,
    /// Fill ratio `ones / order^2`.
    pub sigma: Ratio<u64>,
    /// Cells per element, `1 / sigma`; `None` for an all-zero matrix.
    pub lambda: Option<Ratio<u64>>,
    /// At least two off-diagonal cells per element (the element and its
    /// forced zero mirror), `order^2 - order >= 2 * ones`, and order at least
    /// 5, which is what that bound gives when `ones = 2 * order`.
    pub capacity_ok: bool,
    /// The pipeline minimum: `F` needs order >= 6 and a multiple of 3, `R`
    /// order >= 12 and a multiple of 6.
    pub pipeline_min_ok: bool,
    pub minimum_order_ok: bool,
}

pub fn compactness_metrics(m: &BitMatrix, kind: MatrixKind) -> CompactnessMetrics {
    let (order, ones) = (m.order(), m.total());
    let cells = (order * order) as u64;
    let sigma = if cells == 0 { Ratio::from_integer(0) } else { Ratio::new(ones as u64, cells) };
    let lambda = (ones > 0).then(|| sigma.recip());
    let capacity_ok = order >= 5 && order * order - order >= 2 * ones;
    let pipeline_min_ok = match kind {
        MatrixKind::F => order >= 6 && order % 3 == 0,
        MatrixKind::R => order >= 12 && order % 6 == 0,
    };
    CompactnessMetrics {
        order,
        ones,
        sigma,
        lambda,
        capacity_ok,
        pipeline_min_ok,
        minimum_order_ok: capacity_ok && pipeline_min_ok,
    }
}

/// Prediction and observation for reverse-converting `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub n_l: usize,
    pub n_h: usize,
    pub degree4_count: usize,
    /// `n_H <= 12`, the predicted upper bound.
    pub within_bound: bool,
    /// `n_L^(4) >= n_L / 2`, the predicted necessary condition.
    pub degree4_condition: bool,
    /// Whether `F` actually decomposed.
    pub observed_feasible: bool,
    pub witness: Option<(usize, usize)>,
}

impl FeasibilityReport {
    /// The prediction compared is the `n_H` bound alone; the degree-4
    /// condition is reported but excludes the tetrahedron, which the bound
    /// explicitly admits.
    pub fn predicted_feasible(&self) -> bool {
        self.within_bound
    }

    /// Agreement only fails on an observed success the bound rules out; a
    /// failure below the bound is consistent with a necessary condition.
    pub fn agrees(&self) -> bool {
        self.predicted_feasible() || !self.observed_feasible
    }
}

pub fn reverse_feasibility_claim(t: &Triangulation, f: &BitMatrix) -> FeasibilityReport {
    let (n_l, n_h) = (t.n(), f.order());
    let degree4_count = t.degree4_count();
    let dec = quasicanonical_decomposition(f);
    FeasibilityReport {
        n_l,
        n_h,
        degree4_count,
        within_bound: n_h <= 12,
        degree4_condition: 2 * degree4_count >= n_l,
        observed_feasible: dec.is_ok(),
        witness: match dec {
            Err(MatrixError::NotQuasicanonical { row_a, row_b }) => Some((row_a, row_b)),
            _ => None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{euler_circuit, orient_along};
    use crate::planar::{Embedding, RotationSystem};

    fn conj(rot: Vec<Vec<usize>>, mode: Mode, outer: Option<(usize, usize)>) -> ConjugateGraph {
        let e = Embedding::from_rotation_system(&RotationSystem::new(rot)).unwrap();
        let outer = outer.map(|(u, v)| e.find_dart(u, v).unwrap());
        ConjugateGraph::of(&Triangulation::new(e, mode, outer).unwrap()).unwrap()
    }

    fn k4() -> ConjugateGraph {
        conj(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]], Mode::Sphere, None)
    }

    fn oriented(h: &ConjugateGraph, seed: Option<u64>) -> OrientedConjugate {
        orient_along(h, &euler_circuit(h, seed).unwrap())
    }

    #[test]
    fn k4_matrices() {
        let h = k4();
        let d = oriented(&h, None);
        let f = vertex_adjacency_matrix(&d);
        assert_eq!((f.order(), f.total()), (6, 12));
        assert!(f.row_sums().iter().all(|&s| s == 2));
        let r = arc_adjacency_matrix(&d);
        assert_eq!((r.order(), r.total()), (12, 24));
        assert!(r.row_sums().iter().all(|&s| s == 2));
        assert!(antisymmetry_check(&f).is_pass());
        assert!(antisymmetry_check(&r).is_pass());
        let dec = quasicanonical_decomposition(&r).unwrap();
        assert_eq!(dec.blocks.len(), 6);
        assert!(dec.all_blocks_sized(2, 2));
        assert_eq!(dec.unassigned, 0);
        assert!(multiplicity_audit(&h, &f, &r).is_pass());
    }

    #[test]
    fn fan_rows_are_out_degrees() {
        let h = conj(vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]], Mode::Disk, Some((1, 0)));
        let d = oriented(&h, None);
        let f = vertex_adjacency_matrix(&d);
        assert_eq!(f.order(), 5);
        assert_eq!(f.row_sums(), d.out_degrees().as_slice());
        assert!(matches!(multiplicity_audit(&h, &f, &arc_adjacency_matrix(&d)), Verdict::Skipped(_)));
    }

    #[test]
    fn trivial_matrices() {
        assert_eq!(vertex_adjacency_matrix_of(&Digraph::new(3, vec![])).total(), 0);
        let r = arc_adjacency_matrix_of(&Digraph::new(2, vec![(0, 1)]));
        assert_eq!((r.order(), r.total()), (1, 0));
    }

    #[test]
    fn symmetric_pair_fails() {
        let m = BitMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(antisymmetry_check(&m).is_fail());
        assert!(antisymmetry_check(&BitMatrix::identity(2)).is_fail());
    }

    #[test]
    fn identity_decomposes_into_singletons() {
        let dec = quasicanonical_decomposition(&BitMatrix::identity(4)).unwrap();
        assert_eq!(dec.blocks.len(), 4);
        assert!(dec.all_blocks_sized(1, 1));
    }

    #[test]
    fn overlapping_rows_rejected() {
        let m = BitMatrix::from_rows(&[vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![0; 4], vec![0; 4]]);
        assert_eq!(
            quasicanonical_decomposition(&m),
            Err(MatrixError::NotQuasicanonical { row_a: 0, row_b: 1 })
        );
        assert!(reverse_convert(&m).is_err());
    }

    #[test]
    fn k4_round_trip() {
        let d = oriented(&k4(), Some(5));
        let phi = round_trip(d.digraph()).unwrap();
        assert_eq!(phi.len(), 6);
    }

    #[test]
    fn reverse_convert_adds_sources_and_sinks() {
        let path = Digraph::new(3, vec![(0, 1), (1, 2)]);
        let g = reverse_convert(&arc_adjacency_matrix_of(&path)).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(arc_adjacency_matrix_of(&g), arc_adjacency_matrix_of(&path));
    }

    #[test]
    fn metrics_k4() {
        let d = oriented(&k4(), None);
        let mf = compactness_metrics(&vertex_adjacency_matrix(&d), MatrixKind::F);
        assert_eq!(mf.sigma, Ratio::new(1, 3));
        assert_eq!(mf.lambda, Some(Ratio::from_integer(3)));
        assert!(mf.minimum_order_ok);
        let mr = compactness_metrics(&arc_adjacency_matrix(&d), MatrixKind::R);
        assert_eq!(mr.sigma, Ratio::new(1, 6));
        assert_eq!(mr.lambda, Some(Ratio::from_integer(6)));
        assert!(mr.minimum_order_ok);
    }

    #[test]
    fn metrics_small_order_not_ok() {
        let c3 = vertex_adjacency_matrix_of(&Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]));
        assert!(!compactness_metrics(&c3, MatrixKind::F).minimum_order_ok);
        assert!(!compactness_metrics(&c3, MatrixKind::F).capacity_ok);
    }

    #[test]
    fn text_round_trip() {
        let d = oriented(&k4(), None);
        let r = arc_adjacency_matrix(&d);
        let back = BitMatrix::parse(&r.to_text()).unwrap();
        assert_eq!(back, r);
        assert!(back.caches_consistent());
        assert!(BitMatrix::parse("2\n01\n").is_err());
        assert!(BitMatrix::parse("2\n01\n2x\n").is_err());
    }

    #[test]
    fn k4_feasibility_recorded() {
        let h = k4();
        let f = vertex_adjacency_matrix(&oriented(&h, None));
        let rep = reverse_feasibility_claim(h.source(), &f);
        assert_eq!((rep.n_l, rep.n_h, rep.degree4_count), (4, 6, 0));
        assert!(rep.predicted_feasible());
        assert!(!rep.degree4_condition);
        assert!(rep.agrees());
    }
}

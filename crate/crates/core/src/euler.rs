//! Euler circuits of `H` and the orientation they induce.
//!
//! Every vertex of `H` has even degree and `H` is connected, so a closed walk
//! through every edge exists. Each traversal enters a vertex once, hence a
//! degree-4 vertex is passed exactly twice and a degree-2 vertex once.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::conjugate::ConjugateGraph;
use crate::digraph::Digraph;
use crate::planar::{Dart, Embedding};
use crate::verdict::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("not Eulerian: vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: usize, degree: usize },
    #[error("not Eulerian: circuit covers {covered} of {total} edges")]
    Uncovered { covered: usize, total: usize },
}

/// A closed walk given as a cyclic dart sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCircuit {
    darts: Vec<Dart>,
    visit_counts: Vec<usize>,
    seed: Option<u64>,
}

impl EulerCircuit {
    /// Wraps an arbitrary dart sequence; nothing is checked here.
    pub fn from_darts(e: &Embedding, darts: Vec<Dart>, seed: Option<u64>) -> Self {
        let mut visit_counts = vec![0; e.vertex_count()];
        for &d in &darts {
            visit_counts[e.head(d)] += 1;
        }
        EulerCircuit { darts, visit_counts, seed }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn visit_counts(&self) -> &[usize] {
        &self.visit_counts
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// One `step<TAB>dart<TAB>from<TAB>to` line per traversal step.
    pub fn dart_table(&self, e: &Embedding) -> String {
        let mut s = String::from("step\tdart\tfrom\tto\n");
        for (i, &d) in self.darts.iter().enumerate() {
            s.push_str(&format!("{i}\t{}\t{}\t{}\n", d.0, e.tail(d), e.head(d)));
        }
        s
    }
}

/// Hierholzer's algorithm from vertex 0. Without a seed the smallest unused
/// edge id is taken at every step; with a seed each vertex's edge order is
/// shuffled by ChaCha8.
pub fn euler_circuit_of(e: &Embedding, seed: Option<u64>) -> Result<EulerCircuit, EulerError> {
    for v in 0..e.vertex_count() {
        if e.degree(v) % 2 == 1 {
            return Err(EulerError::OddDegree { vertex: v, degree: e.degree(v) });
        }
    }
    let mut adj: Vec<Vec<Dart>> = (0..e.vertex_count())
        .map(|v| {
            let mut r = e.rotation(v).to_vec();
            r.sort_unstable_by_key(|d| d.edge());
            r
        })
        .collect();
    if let Some(s) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        for r in &mut adj {
            r.shuffle(&mut rng);
        }
    }
    let mut used = vec![false; e.edge_count()];
    let mut next = vec![0usize; e.vertex_count()];
    let mut stack: Vec<(usize, Option<Dart>)> = vec![(0, None)];
    let mut circuit = Vec::with_capacity(e.edge_count());
    while let Some(&(v, entered)) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].edge()] {
            next[v] += 1;
        }
        if let Some(&d) = adj[v].get(next[v]) {
            used[d.edge()] = true;
            stack.push((e.head(d), Some(d)));
        } else {
            stack.pop();
            circuit.extend(entered);
        }
    }
    circuit.reverse();
    if circuit.len() != e.edge_count() {
        return Err(EulerError::Uncovered { covered: circuit.len(), total: e.edge_count() });
    }
    Ok(EulerCircuit::from_darts(e, circuit, seed))
}

pub fn euler_circuit(h: &ConjugateGraph, seed: Option<u64>) -> Result<EulerCircuit, EulerError> {
    euler_circuit_of(h.embedding(), seed)
}

/// Checks that `c` is an Euler circuit of `e` that passes every vertex
/// `degree / 2` times.
pub fn verify_bi_euler_of(c: &EulerCircuit, e: &Embedding) -> Verdict {
    let mut failures = Vec::new();
    if c.len() != e.edge_count() {
        failures.push(format!("circuit has {} steps, graph has {} edges", c.len(), e.edge_count()));
    }
    let mut seen = vec![0usize; e.edge_count()];
    for &d in c.darts() {
        if d.edge() < seen.len() {
            seen[d.edge()] += 1;
        }
    }
    if let Some(k) = seen.iter().position(|&x| x != 1) {
        failures.push(format!("edge {k} traversed {} times", seen[k]));
    }
    for (i, w) in c.darts().windows(2).enumerate() {
        if e.head(w[0]) != e.tail(w[1]) {
            failures.push(format!("steps {i} and {} are not head-to-tail", i + 1));
            break;
        }
    }
    if let (Some(&first), Some(&last)) = (c.darts().first(), c.darts().last()) {
        if e.head(last) != e.tail(first) {
            failures.push("circuit does not close".into());
        }
    }
    let recount = EulerCircuit::from_darts(e, c.darts().to_vec(), c.seed());
    if recount.visit_counts() != c.visit_counts() {
        failures.push("cached visit counts disagree with the dart sequence".into());
    }
    if let Some(v) = (0..e.vertex_count()).find(|&v| recount.visit_counts()[v] * 2 != e.degree(v)) {
        failures.push(format!(
            "vertex {v} of degree {} visited {} times",
            e.degree(v),
            recount.visit_counts()[v]
        ));
    }
    Verdict::from_failures(failures)
}

pub fn verify_bi_euler(c: &EulerCircuit, h: &ConjugateGraph) -> Verdict {
    verify_bi_euler_of(c, h.embedding())
}

/// `H` with each edge directed the way the circuit traverses it. Arc `k`
/// is edge `k` of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedConjugate {
    digraph: Digraph,
    seed: Option<u64>,
}

impl OrientedConjugate {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.digraph.in_degrees()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.digraph.out_degrees()
    }

    /// In-degree equals out-degree everywhere, and there are no opposite
    /// arc pairs when `simple` is set.
    pub fn balance_check(&self, simple: bool) -> Verdict {
        let (ins, outs) = (self.in_degrees(), self.out_degrees());
        let mut failures: Vec<String> = (0..ins.len())
            .filter(|&v| ins[v] != outs[v])
            .map(|v| format!("vertex {v}: in {} out {}", ins[v], outs[v]))
            .collect();
        if simple && self.digraph.two_cycle_count() > 0 {
            failures.push(format!("{} directed 2-cycles", self.digraph.two_cycle_count()));
        }
        Verdict::from_failures(failures)
    }
}

pub fn orient_along_of(e: &Embedding, c: &EulerCircuit) -> OrientedConjugate {
    let mut arcs = vec![(0, 0); e.edge_count()];
    for &d in c.darts() {
        arcs[d.edge()] = (e.tail(d), e.head(d));
    }
    OrientedConjugate { digraph: Digraph::new(e.vertex_count(), arcs), seed: c.seed() }
}

pub fn orient_along(h: &ConjugateGraph, c: &EulerCircuit) -> OrientedConjugate {
    orient_along_of(h.embedding(), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::RotationSystem;
    use crate::triangulation::{Mode, Triangulation};

    fn conj(rot: Vec<Vec<usize>>, mode: Mode, outer: Option<(usize, usize)>) -> ConjugateGraph {
        let e = Embedding::from_rotation_system(&RotationSystem::new(rot)).unwrap();
        let outer = outer.map(|(u, v)| e.find_dart(u, v).unwrap());
        ConjugateGraph::of(&Triangulation::new(e, mode, outer).unwrap()).unwrap()
    }

    fn h_k4() -> ConjugateGraph {
        conj(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]], Mode::Sphere, None)
    }

    fn h_fan() -> ConjugateGraph {
        conj(vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]], Mode::Disk, Some((1, 0)))
    }

    #[test]
    fn octahedron_circuit() {
        let h = h_k4();
        for seed in [None, Some(1), Some(2), Some(3)] {
            let c = euler_circuit(&h, seed).unwrap();
            assert_eq!(c.len(), 12);
            assert!(c.visit_counts().iter().all(|&v| v == 2));
            assert!(verify_bi_euler(&c, &h).is_pass());
        }
    }

    #[test]
    fn triangle_multigraph_circuit() {
        let h = conj(vec![vec![1, 2], vec![2, 0], vec![0, 1]], Mode::Sphere, None);
        let c = euler_circuit(&h, None).unwrap();
        assert_eq!(c.len(), 6);
        assert!(verify_bi_euler(&c, &h).is_pass());
    }

    #[test]
    fn fan_circuit() {
        let h = h_fan();
        let c = euler_circuit(&h, None).unwrap();
        assert_eq!(c.len(), 6);
        assert!(verify_bi_euler(&c, &h).is_pass());
        for v in 0..h.n() {
            assert_eq!(c.visit_counts()[v], h.embedding().degree(v) / 2);
        }
        let d = orient_along(&h, &c);
        for v in 0..h.n() {
            if h.embedding().degree(v) == 2 {
                assert_eq!((d.in_degrees()[v], d.out_degrees()[v]), (1, 1));
            }
        }
    }

    #[test]
    fn truncated_circuit_fails() {
        let h = h_k4();
        let c = euler_circuit(&h, None).unwrap();
        let short = EulerCircuit::from_darts(h.embedding(), c.darts()[..11].to_vec(), None);
        assert!(verify_bi_euler(&short, &h).is_fail());
    }

    #[test]
    fn odd_degree_rejected() {
        let e = Embedding::from_rotation_system(&RotationSystem::new(vec![vec![1], vec![0]])).unwrap();
        assert_eq!(euler_circuit_of(&e, None), Err(EulerError::OddDegree { vertex: 0, degree: 1 }));
    }

    #[test]
    fn octahedron_orientation_is_two_in_two_out() {
        let h = h_k4();
        let d = orient_along(&h, &euler_circuit(&h, Some(9)).unwrap());
        assert!(d.in_degrees().iter().all(|&x| x == 2));
        assert!(d.out_degrees().iter().all(|&x| x == 2));
        assert!(d.balance_check(true).is_pass());
        assert_eq!(d.digraph().two_cycle_count(), 0);
    }

    #[test]
    fn orientation_is_deterministic() {
        let h = h_k4();
        let a = orient_along(&h, &euler_circuit(&h, Some(4)).unwrap());
        let b = orient_along(&h, &euler_circuit(&h, Some(4)).unwrap());
        assert_eq!(a, b);
    }
}

use std::collections::HashSet;

/// A directed multigraph with arcs identified by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Self {
        assert!(arcs.iter().all(|&(a, b)| a < vertex_count && b < vertex_count), "arc endpoint out of range");
        Digraph { vertex_count, arcs }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn tail(&self, a: usize) -> usize {
        self.arcs[a].0
    }

    pub fn head(&self, a: usize) -> usize {
        self.arcs[a].1
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(t, _) in &self.arcs {
            d[t] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(_, h) in &self.arcs {
            d[h] += 1;
        }
        d
    }

    /// Number of unordered vertex pairs joined by arcs in both directions.
    pub fn two_cycle_count(&self) -> usize {
        let set: HashSet<(usize, usize)> = self.arcs.iter().copied().collect();
        set.iter().filter(|&&(a, b)| a < b && set.contains(&(b, a))).count()
    }

    /// Arc table, one `arc<TAB>tail<TAB>head` line per arc.
    pub fn arc_table(&self) -> String {
        let mut s = String::from("arc\ttail\thead\n");
        for (i, (t, h)) in self.arcs.iter().enumerate() {
            s.push_str(&format!("{i}\t{t}\t{h}\n"));
        }
        s
    }
}

/// Finds a vertex bijection `phi` with `phi(tail_a(x)) = tail_b(x)` and
/// `phi(head_a(x)) = head_b(x)` for every arc `x` (arcs matched by index).
/// Vertices of `a` without arcs are not mapped and left as `usize::MAX`.
pub fn arc_aligned_isomorphism(a: &Digraph, b: &Digraph) -> Option<Vec<usize>> {
    if a.arc_count() != b.arc_count() {
        return None;
    }
    let mut phi = vec![usize::MAX; a.vertex_count()];
    let mut used = vec![false; b.vertex_count()];
    for (&(ta, ha), &(tb, hb)) in a.arcs.iter().zip(&b.arcs) {
        for (x, y) in [(ta, tb), (ha, hb)] {
            if phi[x] == usize::MAX {
                if used[y] {
                    return None;
                }
                phi[x] = y;
                used[y] = true;
            } else if phi[x] != y {
                return None;
            }
        }
    }
    Some(phi)
}

/// Independent check of a claimed arc-aligned isomorphism.
pub fn is_arc_aligned_isomorphism(a: &Digraph, b: &Digraph, phi: &[usize]) -> bool {
    if a.arc_count() != b.arc_count() || phi.len() != a.vertex_count() {
        return false;
    }
    let mapped: Vec<usize> = phi.iter().copied().filter(|&y| y != usize::MAX).collect();
    let distinct: HashSet<usize> = mapped.iter().copied().collect();
    distinct.len() == mapped.len()
        && a.arcs.iter().zip(&b.arcs).all(|(&(ta, ha), &(tb, hb))| phi[ta] == tb && phi[ha] == hb)
}

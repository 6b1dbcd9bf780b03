//! Checks against computations that share no code with the library.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use pctlab_core::fixtures;
use pctlab_core::generate::exhaustive_sphere;
use pctlab_core::planar::{Embedding, RotationSystem};

type Tri = [usize; 3];

/// Closed triangulated surfaces on exactly `n` labeled vertices that are
/// spheres, grown from triangle {0,1,2} by repeatedly closing the smallest
/// edge that lies in only one triangle.
fn labeled_spheres(n: usize) -> Vec<Vec<Tri>> {
    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }
    fn rec(n: usize, tris: &mut Vec<Tri>, count: &mut BTreeMap<(usize, usize), u8>, out: &mut Vec<Vec<Tri>>) {
        let open = count.iter().find(|(_, &c)| c == 1).map(|(&e, _)| e);
        let Some((a, b)) = open else {
            out.push(tris.clone());
            return;
        };
        for w in 0..n {
            if w == a || w == b {
                continue;
            }
            let mut t = [a, b, w];
            t.sort_unstable();
            if tris.contains(&t) {
                continue;
            }
            let es = [key(a, b), key(a, w), key(b, w)];
            if es.iter().any(|e| count.get(e).copied().unwrap_or(0) >= 2) {
                continue;
            }
            for e in es {
                *count.entry(e).or_insert(0) += 1;
            }
            tris.push(t);
            rec(n, tris, count, out);
            tris.pop();
            for e in es {
                let c = count.get_mut(&e).unwrap();
                *c -= 1;
                if *c == 0 {
                    count.remove(&e);
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut count = BTreeMap::new();
    for e in [(0, 1), (0, 2), (1, 2)] {
        count.insert(e, 1);
    }
    rec(n, &mut vec![[0, 1, 2]], &mut count, &mut out);
    out.retain(|tris| is_sphere(n, tris));
    out
}

/// Every vertex used, every link a single cycle, Euler characteristic 2.
fn is_sphere(n: usize, tris: &[Tri]) -> bool {
    let mut link: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut edges = BTreeSet::new();
    for &[a, b, c] in tris {
        link[a].push((b, c));
        link[b].push((a, c));
        link[c].push((a, b));
        edges.extend([(a, b), (a, c), (b, c)]);
    }
    for l in &link {
        if l.len() < 3 {
            return false;
        }
        // Walk the link from its first edge; it must return after using all.
        let (start, mut cur) = l[0];
        let mut prev_edge = 0;
        let mut steps = 1;
        while cur != start {
            let Some(i) = (0..l.len()).find(|&i| i != prev_edge && (l[i].0 == cur || l[i].1 == cur)) else {
                return false;
            };
            cur = if l[i].0 == cur { l[i].1 } else { l[i].0 };
            prev_edge = i;
            steps += 1;
            if steps > l.len() {
                return false;
            }
        }
        if steps != l.len() {
            return false;
        }
    }
    n as i64 - edges.len() as i64 + tris.len() as i64 == 2
}

/// Canonical adjacency bits: minimum over all vertex permutations that list
/// vertices by non-increasing degree.
fn graph_canon(n: usize, tris: &[Tri]) -> Vec<bool> {
    let mut adj = vec![vec![false; n]; n];
    for &[a, b, c] in tris {
        for (x, y) in [(a, b), (a, c), (b, c)] {
            adj[x][y] = true;
            adj[y][x] = true;
        }
    }
    let deg: Vec<usize> = adj.iter().map(|r| r.iter().filter(|&&x| x).count()).collect();
    let mut best: Option<Vec<bool>> = None;
    let mut perm: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, adj: &[Vec<bool>], deg: &[usize], perm: &mut Vec<usize>, used: &mut [bool], best: &mut Option<Vec<bool>>) {
        if perm.len() == n {
            let bits: Vec<bool> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| adj[perm[i]][perm[j]]).collect();
            if best.as_ref().is_none_or(|b| bits < *b) {
                *best = Some(bits);
            }
            return;
        }
        let want = (0..n).filter(|&v| !used[v]).map(|v| deg[v]).max().unwrap();
        for v in 0..n {
            if !used[v] && deg[v] == want {
                used[v] = true;
                perm.push(v);
                go(n, adj, deg, perm, used, best);
                perm.pop();
                used[v] = false;
            }
        }
    }
    go(n, &adj, &deg, &mut perm, &mut used, &mut best);
    best.unwrap()
}

fn brute_force_classes(n: usize) -> usize {
    let canon: HashSet<Vec<bool>> = labeled_spheres(n).iter().map(|t| graph_canon(n, t)).collect();
    canon.len()
}

#[test]
fn class_counts_match_brute_force() {
    for n in 4..=7 {
        let ours = exhaustive_sphere(n, false).unwrap().len();
        assert_eq!(ours, brute_force_classes(n), "n = {n}");
    }
}

#[test]
fn brute_force_small_counts() {
    assert_eq!(brute_force_classes(4), 1);
    assert_eq!(brute_force_classes(5), 1);
    assert_eq!(brute_force_classes(6), 2);
}

/// Rotation system of a convex polyhedron read off its coordinates: edges
/// join nearest neighbors, and each vertex's neighbors are sorted by angle
/// in the tangent plane seen from outside.
fn polyhedron_rotation(pts: &[[f64; 3]]) -> RotationSystem {
    let n = pts.len();
    let d = |a: usize, b: usize| (0..3).map(|k| (pts[a][k] - pts[b][k]).powi(2)).sum::<f64>();
    let min = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).map(|(a, b)| d(a, b)).fold(f64::MAX, f64::min);
    let rotations = (0..n)
        .map(|v| {
            let p = pts[v];
            let up = normalize(p);
            let nbrs: Vec<usize> = (0..n).filter(|&w| w != v && (d(v, w) - min).abs() < 1e-9).collect();
            let first = sub(pts[nbrs[0]], p);
            let x = normalize(sub(first, scale(up, dot(first, up))));
            let y = cross(up, x);
            let mut with_angle: Vec<(f64, usize)> = nbrs
                .iter()
                .map(|&w| {
                    let q = sub(pts[w], p);
                    (dot(q, y).atan2(dot(q, x)).rem_euclid(std::f64::consts::TAU), w)
                })
                .collect();
            with_angle.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            with_angle.into_iter().map(|(_, w)| w).collect()
        })
        .collect();
    RotationSystem::new(rotations)
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}
fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
fn normalize(a: [f64; 3]) -> [f64; 3] {
    scale(a, 1.0 / dot(a, a).sqrt())
}

fn same_map(rs: &RotationSystem, fixture: &Embedding) -> bool {
    Embedding::from_rotation_system(rs).unwrap().canonical_code() == fixture.canonical_code()
}

#[test]
fn octahedron_fixture_matches_coordinates() {
    let pts = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
    assert!(same_map(&polyhedron_rotation(&pts), fixtures::octahedron().embedding()));
}

#[test]
fn icosahedron_fixture_matches_coordinates() {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = Vec::new();
    for s in [1.0, -1.0] {
        for t in [g, -g] {
            pts.push([0.0, s, t]);
            pts.push([s, t, 0.0]);
            pts.push([t, 0.0, s]);
        }
    }
    let rs = polyhedron_rotation(&pts);
    assert!(same_map(&rs, fixtures::icosahedron().embedding()));
}

#[test]
fn tetrahedron_fixture_matches_coordinates() {
    let pts = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    assert!(same_map(&polyhedron_rotation(&pts), fixtures::tetrahedron().embedding()));
}

//! Named small triangulations.
//!
//! Rotations come from a planar drawing with vertex 0 in the middle and the
//! last vertex at infinity, so every list is counterclockwise.

use crate::planar::{Embedding, RotationSystem};
use crate::triangulation::{Mode, Triangulation};

fn sphere(rot: Vec<Vec<usize>>) -> Triangulation {
    let e = Embedding::from_rotation_system(&RotationSystem::new(rot)).expect("fixture rotation is valid");
    Triangulation::new(e, Mode::Sphere, None).expect("fixture is a sphere triangulation")
}

/// Two triangular faces glued along their boundary.
pub fn triangle() -> Triangulation {
    sphere(vec![vec![1, 2], vec![2, 0], vec![0, 1]])
}

pub fn tetrahedron() -> Triangulation {
    sphere(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]])
}

pub fn octahedron() -> Triangulation {
    let ring = |i: usize| 1 + (i + 4) % 4;
    let mut rot = vec![vec![1, 2, 3, 4]];
    for i in 0..4 {
        rot.push(vec![0, ring(i + 3), 5, ring(i + 1)]);
    }
    rot.push(vec![4, 3, 2, 1]);
    sphere(rot)
}

pub fn icosahedron() -> Triangulation {
    let u = |i: usize| 1 + i % 5;
    let w = |i: usize| 6 + i % 5;
    let mut rot = vec![vec![1, 2, 3, 4, 5]];
    for i in 0..5 {
        rot.push(vec![0, u(i + 4), w(i + 4), w(i), u(i + 1)]);
    }
    for i in 0..5 {
        rot.push(vec![w(i + 1), u(i + 1), u(i), w(i + 4), 11]);
    }
    rot.push(vec![10, 9, 8, 7, 6]);
    sphere(rot)
}

/// Square `0 1 2 3` with the chord `0-2`, outer face on the square.
pub fn fan() -> Triangulation {
    let e = Embedding::from_rotation_system(&RotationSystem::new(vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]]))
        .expect("fixture rotation is valid");
    let outer = e.find_dart(1, 0);
    Triangulation::new(e, Mode::Disk, outer).expect("fixture is a disk triangulation")
}

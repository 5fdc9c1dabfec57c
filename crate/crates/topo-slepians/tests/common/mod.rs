//! Shared test helpers: seeded random complex generation.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use topo_slepians::complex::SimplicialComplex;

/// Builds a random valid complex with `min_vertices..=max_vertices`
/// vertices. With `connected` a random spanning tree is included; with
/// `want_triangles` at least one filled triangle is guaranteed. Candidate
/// triangles over existing edges are filled in with probability 0.4.
pub fn random_complex(
    rng: &mut impl Rng,
    min_vertices: usize,
    max_vertices: usize,
    connected: bool,
    want_triangles: bool,
) -> SimplicialComplex {
    let v = rng.gen_range(min_vertices..=max_vertices);
    let mut edge_set: BTreeSet<[usize; 2]> = BTreeSet::new();
    if connected {
        for i in 1..v {
            let j = rng.gen_range(0..i);
            edge_set.insert([j, i]);
        }
    }
    for _ in 0..rng.gen_range(0..=2 * v) {
        let a = rng.gen_range(0..v);
        let b = rng.gen_range(0..v);
        if a != b {
            edge_set.insert([a.min(b), a.max(b)]);
        }
    }
    let mut forced: Option<[usize; 3]> = None;
    if want_triangles && v >= 3 {
        let mut picks = rand::seq::index::sample(rng, v, 3).into_vec();
        picks.sort_unstable();
        let t = [picks[0], picks[1], picks[2]];
        edge_set.insert([t[0], t[1]]);
        edge_set.insert([t[0], t[2]]);
        edge_set.insert([t[1], t[2]]);
        forced = Some(t);
    }

    let has_edge = |a: usize, b: usize| edge_set.contains(&[a.min(b), a.max(b)]);
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for a in 0..v {
        for b in (a + 1)..v {
            if !has_edge(a, b) {
                continue;
            }
            for c in (b + 1)..v {
                if has_edge(a, c) && has_edge(b, c) && rng.gen_bool(0.4) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    if let Some(t) = forced {
        if !triangles.contains(&t) {
            triangles.push(t);
        }
    }
    let edges: Vec<[usize; 2]> = edge_set.into_iter().collect();
    SimplicialComplex::build(v, &edges, &triangles).expect("random complex must be valid")
}

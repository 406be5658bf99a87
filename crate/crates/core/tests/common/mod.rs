//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use tda_core::complex::{build_complex, SimplicialComplex, VertexFunction};
use tda_core::gflinalg::{inverse, GF2Matrix};
use tda_core::quiver::{Arrow, IntervalSummand};

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> GF2Matrix {
    loop {
        let rows: Vec<Vec<u8>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
        let m = GF2Matrix::from_dense(&rows);
        if inverse(&m).is_some() {
            return m;
        }
    }
}

pub fn random_orientation<R: Rng>(rng: &mut R, n: usize) -> Vec<Arrow> {
    (0..n).map(|_| if rng.gen_bool(0.5) { Arrow::Forward } else { Arrow::Backward }).collect()
}

/// Random barcode on `0..=n` whose pointwise dimension stays at most `max_dim`.
pub fn random_barcode<R: Rng>(rng: &mut R, n: usize, max_dim: usize) -> Vec<IntervalSummand> {
    let mut load = vec![0usize; n + 1];
    let mut raw = Vec::new();
    for _ in 0..rng.gen_range(0..=3 * max_dim) {
        let b = rng.gen_range(0..=n);
        let d = rng.gen_range(b..=n);
        if (b..=d).all(|i| load[i] < max_dim) {
            for l in &mut load[b..=d] {
                *l += 1;
            }
            raw.push((b, d));
        }
    }
    raw.sort_unstable();
    let mut out: Vec<IntervalSummand> = Vec::new();
    for (b, d) in raw {
        match out.last_mut() {
            Some(s) if s.b == b && s.d == d => s.multiplicity += 1,
            _ => out.push(IntervalSummand { b, d, multiplicity: 1 }),
        }
    }
    out
}

/// Random graph on `nv` vertices with at most `max_edges` edges.
pub fn random_graph<R: Rng>(rng: &mut R, nv: usize, max_edges: usize) -> SimplicialComplex {
    let mut tuples: Vec<Vec<u32>> = (0..nv as u32).map(|v| vec![v]).collect();
    let mut all: Vec<(u32, u32)> = Vec::new();
    for u in 0..nv as u32 {
        for v in u + 1..nv as u32 {
            all.push((u, v));
        }
    }
    let m = rng.gen_range(0..=max_edges.min(all.len()));
    for _ in 0..m {
        let k = rng.gen_range(0..all.len());
        let (u, v) = all.swap_remove(k);
        tuples.push(vec![u, v]);
    }
    build_complex(&tuples).unwrap()
}

/// Random complex of dimension at most 2: a random graph plus some filled triangles.
pub fn random_complex<R: Rng>(rng: &mut R, nv: usize, max_edges: usize, triangles: usize) -> SimplicialComplex {
    let g = random_graph(rng, nv, max_edges);
    let mut tuples: Vec<Vec<u32>> = g.iter().cloned().collect();
    let edges = g.simplices(1).to_vec();
    for _ in 0..triangles {
        if edges.is_empty() {
            break;
        }
        let e = &edges[rng.gen_range(0..edges.len())];
        let w = rng.gen_range(0..nv as u32);
        if !e.contains(&w) {
            tuples.push(vec![e[0], e[1], w]);
        }
    }
    build_complex(&tuples).unwrap()
}

/// Injective random values: a shuffled grid with jitter.
pub fn injective_values<R: Rng>(rng: &mut R, nv: usize) -> VertexFunction {
    let mut vals: Vec<f64> = (0..nv).map(|i| i as f64 + rng.gen_range(0.05..0.95)).collect();
    for i in (1..nv).rev() {
        let j = rng.gen_range(0..=i);
        vals.swap(i, j);
    }
    VertexFunction::new(vals)
}

/// The 4-vertex circle with values −1, 0, 0.0001, 1 (min, two regular points, max).
pub fn circle() -> (SimplicialComplex, VertexFunction) {
    let k = build_complex(&[vec![0, 1], vec![1, 3], vec![3, 2], vec![2, 0]]).unwrap();
    (k, VertexFunction::new(vec![-1.0, 0.0, 0.0001, 1.0]))
}

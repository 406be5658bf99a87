//! Input generators for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tda_core::blocks::{lzz_to_blocks, BlockBarcode};
use tda_core::complex::{build_complex, SimplicialComplex, VertexFunction};
use tda_core::gflinalg::{inverse, GF2Matrix};
use tda_core::persistence::{lzz_barcode_graph_all, Barcode};
use tda_core::quiver::{from_barcode, Arrow, IntervalSummand, QuiverRep};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Triangulated `w × h` grid of vertices with a random injective function.
pub fn grid(w: usize, h: usize, seed: u64) -> (SimplicialComplex, VertexFunction) {
    let id = |x: usize, y: usize| (y * w + x) as u32;
    let mut tuples = Vec::new();
    for y in 0..h.saturating_sub(1) {
        for x in 0..w.saturating_sub(1) {
            tuples.push(vec![id(x, y), id(x + 1, y), id(x + 1, y + 1)]);
            tuples.push(vec![id(x, y), id(x, y + 1), id(x + 1, y + 1)]);
        }
    }
    (build_complex(&tuples).expect("grid"), injective(&mut rng(seed), w * h))
}

/// Random graph with `nv` vertices and about `ne` edges.
pub fn graph(nv: usize, ne: usize, seed: u64) -> (SimplicialComplex, VertexFunction) {
    let mut r = rng(seed);
    let mut tuples: Vec<Vec<u32>> = (0..nv as u32).map(|v| vec![v]).collect();
    for _ in 0..ne {
        let (u, v) = (r.gen_range(0..nv as u32), r.gen_range(0..nv as u32));
        if u != v {
            tuples.push(vec![u.min(v), u.max(v)]);
        }
    }
    (build_complex(&tuples).expect("graph"), injective(&mut r, nv))
}

fn injective<R: Rng>(r: &mut R, n: usize) -> VertexFunction {
    let mut vals: Vec<f64> = (0..n).map(|i| i as f64 + r.gen_range(0.05..0.95)).collect();
    for i in (1..n).rev() {
        vals.swap(i, r.gen_range(0..=i));
    }
    VertexFunction::new(vals)
}

/// A type-A module of length `n + 1` built from random intervals and scrambled by a basis change.
pub fn scrambled_module(n: usize, bars: usize, seed: u64) -> QuiverRep {
    let mut r = rng(seed);
    let orientation: Vec<Arrow> =
        (0..n).map(|_| if r.gen_bool(0.5) { Arrow::Forward } else { Arrow::Backward }).collect();
    let summands: Vec<IntervalSummand> = (0..bars)
        .map(|_| {
            let b = r.gen_range(0..=n);
            IntervalSummand { b, d: r.gen_range(b..=n), multiplicity: 1 }
        })
        .collect();
    let rep = from_barcode(n, &orientation, &summands).expect("module");
    let basis: Vec<GF2Matrix> = rep.dims.iter().map(|&d| invertible(&mut r, d)).collect();
    rep.change_basis(&basis)
}

fn invertible<R: Rng>(r: &mut R, n: usize) -> GF2Matrix {
    loop {
        let rows: Vec<Vec<u8>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(0..2)).collect()).collect();
        let m = GF2Matrix::from_dense(&rows);
        if inverse(&m).is_some() {
            return m;
        }
    }
}

/// Levelset barcode of a random graph and its block barcode.
pub fn graph_barcodes(nv: usize, ne: usize, seed: u64) -> (Barcode, BlockBarcode) {
    let (k, f) = graph(nv, ne, seed);
    let lzz = lzz_barcode_graph_all(&k, &f).expect("graph barcode");
    let blocks = lzz_to_blocks(&lzz);
    (lzz, blocks)
}

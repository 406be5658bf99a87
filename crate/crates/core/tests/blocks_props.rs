mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tda_core::blocks::{
    bottleneck_blocks, interleave_eps, levelset_blocks, phi_bijection, vanish_eps, Block, BlockBarcode, BlockKind,
};
use tda_core::complex::{betti, split_graph_at_levels, SimplicialComplex, VertexFunction};

fn graph(seed: u64, max_v: usize, max_e: usize) -> (SimplicialComplex, VertexFunction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=max_v);
    let g = common::random_graph(&mut rng, nv, max_e);
    (g, common::injective_values(&mut rng, nv))
}

/// `β_p(f⁻¹[x, y])`, computed on the graph subdivided at `x` and `y`.
fn interlevel_betti(g: &SimplicialComplex, f: &VertexFunction, x: f64, y: f64, p: usize) -> usize {
    let (split, fs) = split_graph_at_levels(g, f, &[x, y]).unwrap();
    let sub = split.span_subcomplex(|v| (x..=y).contains(&fs.value(v)));
    betti(&sub, p)
}

/// A value that avoids every vertex value.
fn generic<R: Rng>(rng: &mut R, cv: &[f64]) -> f64 {
    loop {
        let lo = cv.first().copied().unwrap_or(0.0) - 1.0;
        let hi = cv.last().copied().unwrap_or(0.0) + 1.0;
        let v = rng.gen_range(lo..hi);
        if !cv.contains(&v) {
            return v;
        }
    }
}

fn random_block<R: Rng>(rng: &mut R) -> Block {
    let a = (rng.gen_range(-8..8) as f64) * 0.25;
    let len = (rng.gen_range(1..8) as f64) * 0.25;
    match rng.gen_range(0..5) {
        0 => Block::o(a, a + len),
        1 => Block::co(a, a + len),
        2 => Block::oc(a, a + len),
        3 => Block::c(a, a + len),
        _ => Block::c(a + len, a),
    }
}

fn random_barcode<R: Rng>(rng: &mut R, degree: usize) -> BlockBarcode {
    let n = rng.gen_range(0..5);
    (0..n).map(|_| ((degree, random_block(rng)), rng.gen_range(1..3))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn blocks_match_interlevel_homology(seed in any::<u64>()) {
        let (g, f) = graph(seed, 7, 10);
        let blocks = levelset_blocks(&g, &f).unwrap();
        let cv = f.critical_values(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb10c);
        for _ in 0..12 {
            let (u, v) = (generic(&mut rng, &cv), generic(&mut rng, &cv));
            if u == v {
                continue;
            }
            let (x, y) = (u.min(v), u.max(v));
            for p in 0..=1 {
                let predicted: usize = blocks
                    .iter()
                    .filter(|((d, b), _)| *d == p && b.contains(x, y))
                    .map(|(_, m)| m)
                    .sum();
                prop_assert_eq!(predicted, interlevel_betti(&g, &f, x, y, p), "p = {}, ({}, {})", p, x, y);
            }
        }
    }

    #[test]
    fn phi_is_total(seed in any::<u64>()) {
        let (g, f) = graph(seed, 10, 16);
        let blocks = levelset_blocks(&g, &f).unwrap();
        let q = phi_bijection(&blocks);
        prop_assert!(q.diagnostics.is_empty(), "{:?}", q.diagnostics);
        for p in 0..=1 {
            let o: usize = blocks.iter().filter(|((d, b), _)| *d == p && b.kind == BlockKind::O).map(|(_, m)| m).sum();
            let c2: usize = blocks
                .iter()
                .filter(|((d, b), _)| *d == p + 1 && b.is_c2() && b.a > b.b)
                .map(|(_, m)| m)
                .sum();
            prop_assert_eq!(o, c2);
        }
    }

    #[test]
    fn bottleneck_is_a_pseudometric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_barcode(&mut rng, 0), random_barcode(&mut rng, 0), random_barcode(&mut rng, 0));
        prop_assert_eq!(bottleneck_blocks(&x, &x, 0), 0.0);
        let (dxy, dyz, dxz) = (bottleneck_blocks(&x, &y, 0), bottleneck_blocks(&y, &z, 0), bottleneck_blocks(&x, &z, 0));
        prop_assert_eq!(dxy, bottleneck_blocks(&y, &x, 0));
        prop_assert!(dxz <= dxy + dyz + 1e-9, "{} > {} + {}", dxz, dxy, dyz);
    }

    #[test]
    fn interleave_is_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b1, b2) = (random_block(&mut rng), random_block(&mut rng));
        prop_assert_eq!(interleave_eps(&b1, &b2), interleave_eps(&b2, &b1));
        prop_assert!(interleave_eps(&b1, &b2) <= vanish_eps(&b1).max(vanish_eps(&b2)));
    }

    #[test]
    fn stability(seed in any::<u64>()) {
        let (g, f) = graph(seed, 8, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x57ab);
        let fg = VertexFunction::new(f.values().iter().map(|v| v + rng.gen_range(-0.2..0.2)).collect());
        let delta = f.values().iter().zip(fg.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let (b1, b2) = (levelset_blocks(&g, &f).unwrap(), levelset_blocks(&g, &fg).unwrap());
        for p in 0..=1 {
            let d = bottleneck_blocks(&b1, &b2, p);
            prop_assert!(d <= delta + 1e-9, "degree {}: {} > {}", p, d, delta);
        }
    }
}

#[test]
fn circle_grid() {
    let (g, f) = common::circle();
    let blocks = levelset_blocks(&g, &f).unwrap();
    for &(x, y) in &[(-2.0, 2.0), (-0.5, 0.5), (-2.0, 0.5), (0.5, 2.0), (1.5, 2.0)] {
        for p in 0..=1 {
            let predicted: usize =
                blocks.iter().filter(|((d, b), _)| *d == p && b.contains(x, y)).map(|(_, m)| m).sum();
            assert_eq!(predicted, interlevel_betti(&g, &f, x, y, p), "p = {p}, ({x}, {y})");
        }
    }
}

#[test]
fn circle_perturbed() {
    let (g, f) = common::circle();
    let mut vals = f.values().to_vec();
    vals[3] += 0.1;
    let fg = VertexFunction::new(vals);
    let (b1, b2) = (levelset_blocks(&g, &f).unwrap(), levelset_blocks(&g, &fg).unwrap());
    for p in 0..=1 {
        assert!(bottleneck_blocks(&b1, &b2, p) <= 0.1 + 1e-9);
    }
}

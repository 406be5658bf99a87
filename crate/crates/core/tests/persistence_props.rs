mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tda_core::complex::{betti, homology_basis, induced_map, RelativePair, SimplicialComplex, VertexFunction};
use tda_core::multiset::Multiset;
use tda_core::persistence::{
    extended_barcode_all, extended_filtration, ordinary_barcode, zigzag_barcode, EpType, Interval, Ties, ZigzagDiagram,
};
use tda_core::quiver::Arrow;

/// Sublevel complexes at each distinct value, lowest first.
fn sublevels(k: &SimplicialComplex, f: &VertexFunction) -> (Vec<f64>, Vec<SimplicialComplex>) {
    let cv = f.critical_values(k);
    let subs = cv.iter().map(|&c| k.span_subcomplex(|v| f.value(v) <= c)).collect();
    (cv, subs)
}

/// Ordinary barcode from ranks of the maps H_p(K_s) → H_p(K_t), by inclusion-exclusion.
fn rank_oracle(k: &SimplicialComplex, f: &VertexFunction, p: usize) -> Multiset<(usize, Interval)> {
    let (cv, subs) = sublevels(k, f);
    let m = subs.len();
    let bases: Vec<_> = subs.iter().map(|s| homology_basis(s, p)).collect();
    let rank = |s: usize, t: usize| -> i64 {
        if s > t || t >= m {
            return 0;
        }
        let src = RelativePair::absolute(subs[s].clone());
        let dst = RelativePair::absolute(subs[t].clone());
        tda_core::gflinalg::rank(&induced_map(&src, &dst, &bases[s], &bases[t]).unwrap()) as i64
    };
    let mut out = Multiset::new();
    for s in 0..m {
        for t in s..m {
            // bars born exactly at s, alive through t, dead at t + 1
            let born_s = |t: usize| rank(s, t) - if s > 0 { rank(s - 1, t) } else { 0 };
            let count = born_s(t) - if t + 1 < m { born_s(t + 1) } else { 0 };
            assert!(count >= 0);
            if count > 0 {
                let hi = if t + 1 < m { cv[t + 1] } else { f64::INFINITY };
                out.insert((p, Interval::closed_open(cv[s], hi)), count as usize);
            }
        }
    }
    out
}

fn instance(seed: u64) -> (SimplicialComplex, VertexFunction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=9);
    let k = common::random_complex(&mut rng, nv, 16, 4);
    let f = if rng.gen_bool(0.3) {
        VertexFunction::new((0..nv).map(|_| rng.gen_range(0..4) as f64).collect())
    } else {
        common::injective_values(&mut rng, nv)
    };
    (k, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn ordinary_matches_rank_function(seed in any::<u64>()) {
        let (k, f) = instance(seed);
        for p in 0..=2 {
            prop_assert_eq!(ordinary_barcode(&k, &f, p).unwrap().bars, rank_oracle(&k, &f, p));
        }
    }

    #[test]
    fn ordinary_matches_equioriented_zigzag(seed in any::<u64>()) {
        let (k, f) = instance(seed);
        let (cv, subs) = sublevels(&k, &f);
        let arrows = vec![Arrow::Forward; subs.len() - 1];
        let d = ZigzagDiagram::of_complexes(subs, arrows).unwrap();
        for p in 0..=1 {
            let mut want = Multiset::new();
            for ((_, iv), m) in zigzag_barcode(&d, p).unwrap().bars.iter() {
                let (s, t) = (iv.lo as usize, iv.hi as usize);
                let hi = cv.get(t + 1).copied().unwrap_or(f64::INFINITY);
                want.insert((p, Interval::closed_open(cv[s], hi)), m);
            }
            prop_assert_eq!(ordinary_barcode(&k, &f, p).unwrap().bars, want);
        }
    }

    #[test]
    fn extended_invariants(seed in any::<u64>()) {
        let (k, f) = instance(seed);
        let e = extended_barcode_all(&k, &f, Ties::BreakByIndex).unwrap();
        e.check().unwrap();
        let dim = k.dim().unwrap_or(0);
        for p in 0..=dim {
            let bars = e.degree(p);
            let ext: usize = bars.iter().filter(|(iv, _)| iv.kind.is_essential()).map(|(_, m)| m).sum();
            prop_assert_eq!(ext, betti(&k, p), "degree {}", p);
            // the ordinary part is the finite part of sublevel persistence (on perturbed values)
            let ord: Multiset<(usize, Interval)> = bars
                .iter()
                .filter(|(iv, _)| iv.kind == EpType::Ord)
                .map(|(iv, m)| ((p, Interval::closed_open(iv.i as f64, iv.j as f64)), m))
                .collect();
            let ranks = f.vertex_order(&k);
            let mut r = vec![0.0; f.values().len()];
            for (i, &v) in ranks.iter().enumerate() {
                r[v as usize] = (i + 1) as f64;
            }
            let fr = VertexFunction::new(r);
            let finite = ordinary_barcode(&k, &fr, p).unwrap().bars.filter(|(_, iv)| iv.hi.is_finite());
            prop_assert_eq!(ord, finite);
        }
        // every position of the filtration is covered by exactly its Betti number of bars
        let spaces = extended_filtration(&k, &f, Ties::BreakByIndex).unwrap();
        let n = e.n();
        for p in 0..=dim {
            for (q, s) in spaces.iter().enumerate() {
                let b = tda_core::complex::relative_homology_basis(s, p).unwrap().betti();
                let covered: usize = e.degree(p).iter().filter(|(iv, _)| {
                    let (qb, qd) = iv.positions(n);
                    qb <= q && q <= qd
                }).map(|(_, m)| m).sum();
                prop_assert_eq!(covered, b);
            }
        }
    }
}

#[test]
fn ties_rejected_when_asked() {
    let (k, _) = common::circle();
    let f = VertexFunction::new(vec![0.0, 0.0, 1.0, 2.0]);
    assert!(extended_barcode_all(&k, &f, Ties::Reject).is_err());
    assert!(extended_barcode_all(&k, &f, Ties::BreakByIndex).is_ok());
}

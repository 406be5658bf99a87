mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tda_core::gflinalg::GF2Matrix;
use tda_core::quiver::{decompose, from_barcode, Arrow};

#[test]
fn decompose_recovers_conjugated_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(0..=12);
        let o = common::random_orientation(&mut rng, n);
        let seed = common::random_barcode(&mut rng, n, 6);
        let rep = from_barcode(n, &o, &seed).unwrap();
        let p: Vec<GF2Matrix> = rep.dims.iter().map(|&d| common::random_invertible(&mut rng, d)).collect();
        let got = decompose(&rep.change_basis(&p)).unwrap();
        assert_eq!(got, seed, "orientation {o:?}");
        for (i, &d) in rep.dims.iter().enumerate() {
            let covered: usize = got.iter().filter(|s| s.b <= i && i <= s.d).map(|s| s.multiplicity).sum();
            assert_eq!(covered, d);
        }
    }
}

#[test]
fn equioriented_matches_standard_pairing() {
    // a filtration of a vector space by inclusions: the elder rule is plain persistence
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let o = vec![Arrow::Forward; n];
        let seed = common::random_barcode(&mut rng, n, 5);
        let rep = from_barcode(n, &o, &seed).unwrap();
        let p: Vec<GF2Matrix> = rep.dims.iter().map(|&d| common::random_invertible(&mut rng, d)).collect();
        assert_eq!(decompose(&rep.change_basis(&p)).unwrap(), seed);
    }
}

//! Bottleneck distance between finite multisets with a diagonal-style "vanish" option.

use petgraph::algo::maximum_matching;
use petgraph::graph::UnGraph;

/// Least `t` admitting a perfect matching in which every matched pair costs at most `t` and
/// every unmatched item vanishes at cost at most `t`. Items are listed with repetition.
/// Returns `+∞` when no finite threshold works.
pub fn bottleneck<A, B>(
    left: &[A],
    right: &[B],
    pair_cost: impl Fn(&A, &B) -> f64,
    vanish_left: impl Fn(&A) -> f64,
    vanish_right: impl Fn(&B) -> f64,
) -> f64 {
    let (n1, n2) = (left.len(), right.len());
    let pairs: Vec<Vec<f64>> = left.iter().map(|a| right.iter().map(|b| pair_cost(a, b)).collect()).collect();
    let v1: Vec<f64> = left.iter().map(&vanish_left).collect();
    let v2: Vec<f64> = right.iter().map(&vanish_right).collect();

    let mut candidates: Vec<f64> = std::iter::once(0.0)
        .chain(pairs.iter().flatten().copied())
        .chain(v1.iter().copied())
        .chain(v2.iter().copied())
        .filter(|c| c.is_finite())
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let feasible = |t: f64| -> bool {
        // left side: items 0..n1 then dummies for the right items; right side likewise
        let size = n1 + n2;
        let mut g = UnGraph::<(), ()>::with_capacity(2 * size, 0);
        let nodes: Vec<_> = (0..2 * size).map(|_| g.add_node(())).collect();
        let r = |j: usize| nodes[size + j];
        for i in 0..n1 {
            for j in 0..n2 {
                if pairs[i][j] <= t {
                    g.add_edge(nodes[i], r(j), ());
                }
            }
            if v1[i] <= t {
                g.add_edge(nodes[i], r(n2 + i), ());
            }
        }
        for j in 0..n2 {
            if v2[j] <= t {
                g.add_edge(nodes[n1 + j], r(j), ());
            }
            for i in 0..n1 {
                g.add_edge(nodes[n1 + j], r(n2 + i), ());
            }
        }
        maximum_matching(&g).len() == size
    };

    if n1 + n2 == 0 {
        return 0.0;
    }
    if candidates.is_empty() || !feasible(*candidates.last().unwrap()) {
        return f64::INFINITY;
    }
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

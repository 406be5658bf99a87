//! Type-A quiver representations over GF(2) and their interval decomposition.

use thiserror::Error;

use crate::gflinalg::{column_reduce, Column, EliminationBasis, GF2Matrix};

/// Direction of the edge between vertices `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    /// `i → i+1`
    Forward,
    /// `i ← i+1`
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    MapCount { expected: usize, found: usize },
    OrientationLength { expected: usize, found: usize },
    MapShape { edge: usize, expected: (usize, usize), found: (usize, usize) },
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::MapCount { expected, found } => write!(f, "expected {expected} maps, found {found}"),
            Diagnostic::OrientationLength { expected, found } => {
                write!(f, "expected {expected} orientation flags, found {found}")
            }
            Diagnostic::MapShape { edge, expected, found } => write!(
                f,
                "map {edge} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("interval [{b}, {d}] out of range for a quiver with {n} edges")]
    IndexOutOfRange { b: usize, d: usize, n: usize },
    #[error("shape mismatch: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    ShapeMismatch(Vec<Diagnostic>),
}

/// A representation of the type-A quiver on vertices `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    pub dims: Vec<usize>,
    /// `maps[e]` goes from the tail to the head of edge `e`.
    pub maps: Vec<GF2Matrix>,
    pub orientation: Vec<Arrow>,
}

impl QuiverRep {
    pub fn new(dims: Vec<usize>, maps: Vec<GF2Matrix>, orientation: Vec<Arrow>) -> Result<Self, QuiverError> {
        let rep = QuiverRep { dims, maps, orientation };
        validate(&rep).map_err(QuiverError::ShapeMismatch)?;
        Ok(rep)
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.orientation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    fn expected_shape(&self, e: usize) -> (usize, usize) {
        match self.orientation[e] {
            Arrow::Forward => (self.dims[e + 1], self.dims[e]),
            Arrow::Backward => (self.dims[e], self.dims[e + 1]),
        }
    }

    /// Conjugates by invertible basis changes `p[i]` at every vertex:
    /// each map `A: V_t → V_h` becomes `p[h] · A · p[t]⁻¹`.
    pub fn change_basis(&self, p: &[GF2Matrix]) -> QuiverRep {
        let inv: Vec<GF2Matrix> =
            p.iter().map(|m| crate::gflinalg::inverse(m).expect("basis change must be invertible")).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(e, a)| {
                let (t, h) = match self.orientation[e] {
                    Arrow::Forward => (e, e + 1),
                    Arrow::Backward => (e + 1, e),
                };
                p[h].mul(a).and_then(|m| m.mul(&inv[t])).expect("shapes agree")
            })
            .collect();
        QuiverRep { dims: self.dims.clone(), maps, orientation: self.orientation.clone() }
    }
}

/// Interval `[b, d]` with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSummand {
    pub b: usize,
    pub d: usize,
    pub multiplicity: usize,
}

/// Checks the dimension bookkeeping of `rep`.
pub fn validate(rep: &QuiverRep) -> Result<(), Vec<Diagnostic>> {
    let n = rep.dims.len().saturating_sub(1);
    let mut diags = Vec::new();
    if rep.orientation.len() != n {
        diags.push(Diagnostic::OrientationLength { expected: n, found: rep.orientation.len() });
    }
    if rep.maps.len() != n {
        diags.push(Diagnostic::MapCount { expected: n, found: rep.maps.len() });
    }
    if diags.is_empty() {
        for (e, m) in rep.maps.iter().enumerate() {
            let expected = rep.expected_shape(e);
            let found = (m.rows(), m.cols());
            if expected != found {
                diags.push(Diagnostic::MapShape { edge: e, expected, found });
            }
        }
    }
    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

/// The interval module 𝕀(b, d) on `n` edges.
pub fn interval_module(n: usize, orientation: &[Arrow], b: usize, d: usize) -> Result<QuiverRep, QuiverError> {
    if b > d || d > n {
        return Err(QuiverError::IndexOutOfRange { b, d, n });
    }
    if orientation.len() != n {
        return Err(QuiverError::ShapeMismatch(vec![Diagnostic::OrientationLength {
            expected: n,
            found: orientation.len(),
        }]));
    }
    let dims: Vec<usize> = (0..=n).map(|i| usize::from(b <= i && i <= d)).collect();
    let maps = (0..n)
        .map(|e| {
            if b <= e && e < d {
                GF2Matrix::identity(1)
            } else {
                match orientation[e] {
                    Arrow::Forward => GF2Matrix::zeros(dims[e + 1], dims[e]),
                    Arrow::Backward => GF2Matrix::zeros(dims[e], dims[e + 1]),
                }
            }
        })
        .collect();
    QuiverRep::new(dims, maps, orientation.to_vec())
}

pub fn direct_sum(reps: &[QuiverRep]) -> Result<QuiverRep, QuiverError> {
    let Some(first) = reps.first() else {
        return Err(QuiverError::ShapeMismatch(vec![Diagnostic::MapCount { expected: 0, found: 0 }]));
    };
    for r in reps {
        if r.orientation != first.orientation {
            return Err(QuiverError::ShapeMismatch(vec![Diagnostic::OrientationLength {
                expected: first.orientation.len(),
                found: r.orientation.len(),
            }]));
        }
        validate(r).map_err(QuiverError::ShapeMismatch)?;
    }
    let n = first.len();
    let dims = (0..=n).map(|i| reps.iter().map(|r| r.dims[i]).sum()).collect();
    let maps = (0..n)
        .map(|e| GF2Matrix::block_diag(&reps.iter().map(|r| r.maps[e].clone()).collect::<Vec<_>>()))
        .collect();
    QuiverRep::new(dims, maps, first.orientation.clone())
}

/// Direct sum of interval modules for a barcode.
pub fn from_barcode(n: usize, orientation: &[Arrow], bars: &[IntervalSummand]) -> Result<QuiverRep, QuiverError> {
    let mut parts = vec![QuiverRep {
        dims: vec![0; n + 1],
        maps: (0..n).map(|_| GF2Matrix::zeros(0, 0)).collect(),
        orientation: orientation.to_vec(),
    }];
    for s in bars {
        for _ in 0..s.multiplicity {
            parts.push(interval_module(n, orientation, s.b, s.d)?);
        }
    }
    direct_sum(&parts)
}

/// An interval that is still open at the current vertex.
#[derive(Debug, Clone)]
struct Open {
    birth: usize,
    key: (u8, i64),
    gen: Column,
}

// Interval k may absorb interval l (generator g_k += g_l) iff key(l) <= key(k).
// Forward-born intervals are younger the later they start; backward-born
// ones (and those born at vertex 0) are younger the earlier they start.
fn forward_key(b: usize) -> (u8, i64) {
    (1, b as i64)
}

fn backward_key(b: usize) -> (u8, i64) {
    (0, -(b as i64))
}

/// Barcode of `rep`, sorted by `(b, d)` with multiplicities aggregated.
///
/// Sweeps left to right keeping a basis of the current space whose elements
/// generate the open intervals. At a forward map the images are reduced in
/// age order, and the ones that vanish close. At a backward map the image is
/// written in the current basis, and rows without a pivot close.
pub fn decompose(rep: &QuiverRep) -> Result<Vec<IntervalSummand>, QuiverError> {
    validate(rep).map_err(QuiverError::ShapeMismatch)?;
    let n = rep.len();
    let mut open: Vec<Open> =
        (0..rep.dims[0] as u32).map(|r| Open { birth: 0, key: backward_key(0), gen: vec![r] }).collect();
    let mut closed: Vec<(usize, usize)> = Vec::new();
    for e in 0..n {
        open.sort_by_key(|o| o.key);
        let mut next = Vec::with_capacity(rep.dims[e + 1]);
        match rep.orientation[e] {
            Arrow::Forward => {
                let a = &rep.maps[e];
                let images: Vec<Column> = open.iter().map(|o| a.mul_vec(&o.gen)).collect();
                let red = column_reduce(&GF2Matrix::from_columns(rep.dims[e + 1], images.clone()).expect("image rows"));
                for (idx, (o, img)) in open.into_iter().zip(images).enumerate() {
                    if red.reduced.column(idx).is_empty() {
                        closed.push((o.birth, e));
                    } else {
                        next.push(Open { gen: img, ..o });
                    }
                }
                for r in 0..rep.dims[e + 1] {
                    if !red.pivots.contains_key(&r) {
                        next.push(Open { birth: e + 1, key: forward_key(e + 1), gen: vec![r as u32] });
                    }
                }
            }
            Arrow::Backward => {
                let g = &rep.maps[e];
                let mut basis = EliminationBasis::new();
                for (l, o) in open.iter().enumerate() {
                    let independent = basis.insert(o.gen.clone(), vec![l as u32]);
                    debug_assert!(independent);
                }
                let coords: Vec<Column> = (0..rep.dims[e + 1])
                    .map(|c| basis.express(g.column(c)).expect("open generators span the space"))
                    .collect();
                let red = column_reduce(&GF2Matrix::from_columns(open.len(), coords).expect("coordinate rows"));
                for (row, o) in open.into_iter().enumerate() {
                    match red.pivots.get(&row) {
                        Some(&col) => next.push(Open { gen: red.ops.column(col).to_vec(), ..o }),
                        None => closed.push((o.birth, e)),
                    }
                }
                for col in red.zero_columns() {
                    next.push(Open { birth: e + 1, key: backward_key(e + 1), gen: red.ops.column(col).to_vec() });
                }
            }
        }
        open = next;
    }
    closed.extend(open.into_iter().map(|o| (o.birth, n)));
    Ok(aggregate(closed))
}

pub(crate) fn aggregate(mut bars: Vec<(usize, usize)>) -> Vec<IntervalSummand> {
    bars.sort_unstable();
    let mut out: Vec<IntervalSummand> = Vec::new();
    for (b, d) in bars {
        match out.last_mut() {
            Some(last) if last.b == b && last.d == d => last.multiplicity += 1,
            _ => out.push(IntervalSummand { b, d, multiplicity: 1 }),
        }
    }
    out
}

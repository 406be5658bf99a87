//! Simplicial complexes, vertex functions, (relative) chain complexes over
//! GF(2), homology bases and induced maps.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::gflinalg::{self, Column, EliminationBasis, GF2Matrix};

/// A simplex as a strictly increasing vertex tuple.
pub type Simplex = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertexInSimplex(Vec<u32>),
    #[error("empty vertex tuple")]
    EmptySimplex,
    #[error("subcomplex is not contained in the ambient complex")]
    SubNotContained,
    #[error("map is not an inclusion of pairs")]
    NotAnInclusion,
    #[error("cycle image could not be expressed in the target basis")]
    BasisMismatch,
    #[error("complex has dimension {0}, at most 1 is supported here")]
    DimensionTooHigh(usize),
    #[error("level {0} coincides with a vertex value")]
    LevelHitsVertex(f64),
    #[error("vertex {0} has no value")]
    MissingValue(u32),
    #[error("chain complex violates the boundary-of-boundary identity in degree {0}")]
    BoundarySquare(usize),
}

/// Face-closed set of simplices, stored per dimension in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    fn from_set(set: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in set {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        for level in &mut by_dim {
            level.sort();
        }
        let mut index = HashMap::new();
        for level in &by_dim {
            for (i, s) in level.iter().enumerate() {
                index.insert(s.clone(), i);
            }
        }
        SimplicialComplex { by_dim, index }
    }

    /// Dimension of the top simplex, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Simplices of dimension `p` (empty slice beyond the top dimension).
    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.by_dim.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn num_simplices(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index.contains_key(s)
    }

    /// Position of `s` inside `simplices(s.len() - 1)`.
    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_set(self.iter().chain(other.iter()).cloned().collect())
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_set(self.iter().filter(|s| other.contains(s)).cloned().collect())
    }

    /// Full subcomplex on the vertices satisfying `keep`.
    pub fn span_subcomplex(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        Self::from_set(self.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect())
    }

    /// Euler characteristic.
    pub fn euler(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }
}

/// Face closure of the given vertex tuples.
pub fn build_complex(tuples: &[Vec<u32>]) -> Result<SimplicialComplex, ComplexError> {
    let mut set = BTreeSet::new();
    for t in tuples {
        if t.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        let mut s = t.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertexInSimplex(t.clone()));
        }
        if set.contains(&s) {
            continue;
        }
        let k = s.len();
        for mask in 1u64..(1u64 << k) {
            let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            set.insert(face);
        }
    }
    Ok(SimplicialComplex::from_set(set))
}

/// Real values on vertices, indexed by vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    pub fn new(values: Vec<f64>) -> Self {
        VertexFunction { values }
    }

    pub fn value(&self, v: u32) -> f64 {
        self.values[v as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn try_value(&self, v: u32) -> Option<f64> {
        self.values.get(v as usize).copied()
    }

    /// Errors if some vertex of `k` has no value.
    pub fn check_total(&self, k: &SimplicialComplex) -> Result<(), ComplexError> {
        match k.vertices().into_iter().find(|&v| self.try_value(v).is_none()) {
            Some(v) => Err(ComplexError::MissingValue(v)),
            None => Ok(()),
        }
    }

    pub fn is_injective_on(&self, k: &SimplicialComplex) -> bool {
        let mut vals: Vec<f64> = k.vertices().iter().map(|&v| self.value(v)).collect();
        vals.sort_by(f64::total_cmp);
        vals.windows(2).all(|w| w[0] != w[1])
    }

    /// Vertices of `k` sorted by value, ties broken by vertex id.
    pub fn vertex_order(&self, k: &SimplicialComplex) -> Vec<u32> {
        let mut vs = k.vertices();
        vs.sort_by(|&a, &b| self.value(a).total_cmp(&self.value(b)).then(a.cmp(&b)));
        vs
    }

    /// Sorted distinct vertex values.
    pub fn critical_values(&self, k: &SimplicialComplex) -> Vec<f64> {
        let mut vals: Vec<f64> = k.vertices().iter().map(|&v| self.value(v)).collect();
        vals.sort_by(f64::total_cmp);
        vals.dedup();
        vals
    }
}

/// Regular values interleaving the critical values: midpoints, padded by 1 at both ends.
pub fn regular_values(critical: &[f64]) -> Vec<f64> {
    let n = critical.len();
    if n == 0 {
        return Vec::new();
    }
    let mut s = Vec::with_capacity(n + 1);
    s.push(critical[0] - 1.0);
    for w in critical.windows(2) {
        s.push(0.5 * (w[0] + w[1]));
    }
    s.push(critical[n - 1] + 1.0);
    s
}

/// `(ambient, sub)` with `sub ⊆ ambient`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativePair {
    pub ambient: SimplicialComplex,
    pub sub: SimplicialComplex,
}

impl RelativePair {
    pub fn new(ambient: SimplicialComplex, sub: SimplicialComplex) -> Result<Self, ComplexError> {
        if !sub.is_subcomplex_of(&ambient) {
            return Err(ComplexError::SubNotContained);
        }
        Ok(RelativePair { ambient, sub })
    }

    pub fn absolute(k: SimplicialComplex) -> Self {
        RelativePair { ambient: k, sub: SimplicialComplex::empty() }
    }

    /// Whether `self ⊆ other` as pairs.
    pub fn includes_into(&self, other: &RelativePair) -> bool {
        self.ambient.is_subcomplex_of(&other.ambient) && self.sub.is_subcomplex_of(&other.sub)
    }

    /// Cells of the quotient chain complex in degree `p`.
    pub fn cells(&self, p: usize) -> Vec<Simplex> {
        self.ambient.simplices(p).iter().filter(|s| !self.sub.contains(s)).cloned().collect()
    }
}

/// Quotient chain complex `C(ambient) / C(sub)` over GF(2).
#[derive(Debug, Clone)]
pub struct ChainComplexGF2 {
    cells: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, u32>>,
    /// `boundary[p]` is ∂_p : C_p → C_{p−1}; `boundary[0]` has zero rows.
    boundary: Vec<GF2Matrix>,
}

impl ChainComplexGF2 {
    pub fn of_pair(pair: &RelativePair) -> Result<Self, ComplexError> {
        let top = pair.ambient.dim().map_or(0, |d| d + 1);
        let cells: Vec<Vec<Simplex>> = (0..top).map(|p| pair.cells(p)).collect();
        let index: Vec<HashMap<Simplex, u32>> = cells
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(top);
        for p in 0..top {
            if p == 0 {
                boundary.push(GF2Matrix::zeros(0, cells[0].len()));
                continue;
            }
            let rows = cells[p - 1].len();
            let cols = cells[p]
                .iter()
                .map(|s| {
                    let faces: Vec<u32> = (0..s.len())
                        .filter_map(|skip| {
                            let face: Simplex =
                                s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                            index[p - 1].get(&face).copied()
                        })
                        .collect();
                    gflinalg::support_from_indices(faces)
                })
                .collect();
            boundary.push(GF2Matrix::from_columns(rows, cols).expect("faces index valid rows"));
        }
        for p in 1..top {
            if !boundary[p - 1].mul(&boundary[p]).map(|m| m.is_zero()).unwrap_or(false) {
                return Err(ComplexError::BoundarySquare(p));
            }
        }
        Ok(ChainComplexGF2 { cells, index, boundary })
    }

    pub fn cells(&self, p: usize) -> &[Simplex] {
        self.cells.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn cell_index(&self, p: usize, s: &[u32]) -> Option<u32> {
        self.index.get(p).and_then(|m| m.get(s).copied())
    }

    /// ∂_p, or an empty map outside the stored range.
    pub fn boundary(&self, p: usize) -> GF2Matrix {
        match self.boundary.get(p) {
            Some(m) => m.clone(),
            None => {
                let rows = if p == 0 { 0 } else { self.cells(p - 1).len() };
                GF2Matrix::zeros(rows, 0)
            }
        }
    }

    pub fn top(&self) -> usize {
        self.cells.len()
    }
}

pub fn chain_complex(k: &SimplicialComplex) -> ChainComplexGF2 {
    ChainComplexGF2::of_pair(&RelativePair::absolute(k.clone())).expect("absolute complexes are valid")
}

/// Basis of `H_p` with representatives and a projector onto their coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub degree: usize,
    /// Representative cycles, as supports over `cells`.
    pub cycles: Vec<Column>,
    cells: Vec<Simplex>,
    index: HashMap<Simplex, u32>,
    projector: EliminationBasis,
}

impl HomologyBasis {
    pub fn betti(&self) -> usize {
        self.cycles.len()
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    /// A representative written out as simplices.
    pub fn cycle_simplices(&self, k: usize) -> Vec<Simplex> {
        self.cycles[k].iter().map(|&i| self.cells[i as usize].clone()).collect()
    }

    /// Coordinates of the class of a chain given as simplices.
    /// Simplices outside the cell table (i.e. in the subcomplex) are dropped.
    pub fn coordinates_of_simplices(&self, chain: &[Simplex]) -> Option<Column> {
        let idx: Vec<u32> = chain.iter().filter_map(|s| self.index.get(s).copied()).collect();
        self.projector.express(&gflinalg::support_from_indices(idx))
    }
}

fn basis_from_chains(cc: &ChainComplexGF2, p: usize) -> HomologyBasis {
    let dp = cc.boundary(p);
    let dp1 = cc.boundary(p + 1);
    let mut projector = EliminationBasis::new();
    for col in gflinalg::column_reduce(&dp1).reduced.into_columns() {
        if !col.is_empty() {
            projector.insert(col, Vec::new());
        }
    }
    let kernel = if p < cc.top() { gflinalg::column_reduce(&dp).kernel_basis() } else { Vec::new() };
    let mut cycles = Vec::new();
    for z in kernel {
        let tag = vec![cycles.len() as u32];
        if projector.insert(z.clone(), tag) {
            cycles.push(z);
        }
    }
    let cells = cc.cells(p).to_vec();
    let index = cells.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
    HomologyBasis { degree: p, cycles, cells, index, projector }
}

pub fn homology_basis(k: &SimplicialComplex, p: usize) -> HomologyBasis {
    basis_from_chains(&chain_complex(k), p)
}

pub fn relative_homology_basis(pair: &RelativePair, p: usize) -> Result<HomologyBasis, ComplexError> {
    if !pair.sub.is_subcomplex_of(&pair.ambient) {
        return Err(ComplexError::SubNotContained);
    }
    Ok(basis_from_chains(&ChainComplexGF2::of_pair(pair)?, p))
}

pub fn betti(k: &SimplicialComplex, p: usize) -> usize {
    homology_basis(k, p).betti()
}

/// Matrix of `H_p(src) → H_p(dst)` induced by the inclusion of pairs.
pub fn induced_map(
    src: &RelativePair,
    dst: &RelativePair,
    src_basis: &HomologyBasis,
    dst_basis: &HomologyBasis,
) -> Result<GF2Matrix, ComplexError> {
    if !src.includes_into(dst) {
        return Err(ComplexError::NotAnInclusion);
    }
    let mut cols = Vec::with_capacity(src_basis.betti());
    for k in 0..src_basis.betti() {
        let chain = src_basis.cycle_simplices(k);
        cols.push(dst_basis.coordinates_of_simplices(&chain).ok_or(ComplexError::BasisMismatch)?);
    }
    Ok(GF2Matrix::from_columns(dst_basis.betti(), cols).expect("coordinates index the target basis"))
}

/// Subdivides every edge crossing one of the `levels` with a Steiner vertex
/// carrying that level as its value. New vertex ids follow the largest id in use.
pub fn split_graph_at_levels(
    g: &SimplicialComplex,
    f: &VertexFunction,
    levels: &[f64],
) -> Result<(SimplicialComplex, VertexFunction), ComplexError> {
    if let Some(d) = g.dim() {
        if d > 1 {
            return Err(ComplexError::DimensionTooHigh(d));
        }
    }
    f.check_total(g)?;
    for &v in &g.vertices() {
        if levels.contains(&f.value(v)) {
            return Err(ComplexError::LevelHitsVertex(f.value(v)));
        }
    }
    let mut values = f.values().to_vec();
    let max_id = g.vertices().into_iter().max().map_or(0, |m| m as usize + 1);
    values.resize(values.len().max(max_id), f64::NAN);
    let mut tuples: Vec<Vec<u32>> = g.simplices(0).to_vec();
    for e in g.simplices(1) {
        let (mut u, mut v) = (e[0], e[1]);
        if f.value(u) > f.value(v) {
            std::mem::swap(&mut u, &mut v);
        }
        let (lo, hi) = (f.value(u), f.value(v));
        let mut prev = u;
        for &s in levels.iter().filter(|&&s| lo < s && s < hi) {
            let w = values.len() as u32;
            values.push(s);
            tuples.push(vec![prev, w]);
            prev = w;
        }
        tuples.push(vec![prev, v]);
    }
    Ok((build_complex(&tuples)?, VertexFunction::new(values)))
}

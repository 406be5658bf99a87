//! Ordinary, extended, zigzag and levelset-zigzag barcodes.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::complex::{
    regular_values, relative_homology_basis, split_graph_at_levels, ComplexError, HomologyBasis, RelativePair,
    SimplicialComplex, VertexFunction,
};
use crate::gflinalg::{self, column_reduce, GF2Matrix};
use crate::multiset::Multiset;
use crate::quiver::{decompose, Arrow, IntervalSummand, QuiverError, QuiverRep};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PersistenceError {
    #[error("vertex values are not injective (enable tie-breaking to perturb them)")]
    NotInjective,
    #[error("complex has dimension {0}, at most 1 is supported here")]
    DimensionTooHigh(usize),
    #[error("zigzag step {0} is not an inclusion in the arrow's direction")]
    NotAnInclusion(usize),
    #[error("zigzag has {spaces} spaces but {arrows} arrows")]
    ArrowCount { spaces: usize, arrows: usize },
    #[error("levels do not interleave the critical values")]
    InvalidLevels,
    #[error("malformed interval: {0}")]
    MalformedInterval(String),
    #[error("malformed extended interval: {0}")]
    MalformedEPInterval(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A real interval with open or closed ends. Infinite ends are always open.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

/// Closedness pattern of an interval's two ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndpointKind {
    Closed,
    Open,
    ClosedOpen,
    OpenClosed,
}

impl Interval {
    /// Checked constructor. Flags on infinite ends are ignored.
    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Result<Self, PersistenceError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(PersistenceError::MalformedInterval("NaN endpoint".into()));
        }
        let iv = Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
            lo_closed: lo_closed && lo.is_finite(),
            hi_closed: hi_closed && hi.is_finite(),
        };
        if lo > hi {
            return Err(PersistenceError::MalformedInterval(format!("{lo} > {hi}")));
        }
        if lo == hi && !(iv.lo_closed && iv.hi_closed) {
            return Err(PersistenceError::MalformedInterval(format!("empty interval at {lo}")));
        }
        if lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(PersistenceError::MalformedInterval("interval outside the reals".into()));
        }
        Ok(iv)
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true).expect("valid closed interval")
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false).expect("valid open interval")
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, false).expect("valid half-open interval")
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, true).expect("valid half-open interval")
    }

    pub fn kind(&self) -> EndpointKind {
        match (self.lo_closed, self.hi_closed) {
            (true, true) => EndpointKind::Closed,
            (false, false) => EndpointKind::Open,
            (true, false) => EndpointKind::ClosedOpen,
            (false, true) => EndpointKind::OpenClosed,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    fn key(&self) -> (u64, u64, bool, bool) {
        (total_key(self.lo), total_key(self.hi), self.lo_closed, self.hi_closed)
    }
}

pub(crate) fn total_key(x: f64) -> u64 {
    // order-preserving bijection f64 -> u64 (same order as total_cmp)
    let b = x.to_bits();
    if b >> 63 == 1 {
        !b
    } else {
        b | (1 << 63)
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Interval {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Ordinary,
    Extended,
    Lzz,
    Zigzag,
}

/// Multiset of `(degree, interval)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode {
    pub flavor: Flavor,
    pub bars: Multiset<(usize, Interval)>,
}

impl Barcode {
    pub fn new(flavor: Flavor) -> Self {
        Barcode { flavor, bars: Multiset::new() }
    }

    pub fn degree(&self, p: usize) -> Multiset<Interval> {
        self.bars.iter().filter(|((d, _), _)| *d == p).map(|((_, iv), m)| (*iv, m)).collect()
    }

    pub fn merge(&mut self, other: &Barcode) {
        self.bars.extend(other.bars.iter().map(|(k, m)| (*k, m)));
    }
}

/// The four interval types of extended persistence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EpType {
    /// `[a_i, a_j)`, both ends in the sublevel half.
    Ord,
    /// `[ā_j, ā_i)`, both ends in the relative half.
    Rel,
    /// `[a_i, ā_j)` with `i ≤ j`.
    ExtPlus,
    /// `[a_j, ā_i)` with `i < j`.
    ExtMinus,
}

impl EpType {
    pub fn is_essential(self) -> bool {
        matches!(self, EpType::ExtPlus | EpType::ExtMinus)
    }
}

/// An extended persistence interval in critical-index form (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpInterval {
    pub kind: EpType,
    pub i: usize,
    pub j: usize,
}

impl EpInterval {
    pub fn new(kind: EpType, i: usize, j: usize) -> Result<Self, PersistenceError> {
        let ok = i >= 1 && if kind == EpType::ExtPlus { i <= j } else { i < j };
        if ok {
            Ok(EpInterval { kind, i, j })
        } else {
            Err(PersistenceError::MalformedEPInterval(format!("{kind:?} with i={i}, j={j}")))
        }
    }

    /// Birth as `(critical index, in relative half)`.
    pub fn birth(&self) -> (usize, bool) {
        match self.kind {
            EpType::Ord | EpType::ExtPlus => (self.i, false),
            EpType::Rel => (self.j, true),
            EpType::ExtMinus => (self.j, false),
        }
    }

    /// Death as `(critical index, in relative half)`.
    pub fn death(&self) -> (usize, bool) {
        match self.kind {
            EpType::Ord => (self.j, false),
            EpType::Rel | EpType::ExtMinus => (self.i, true),
            EpType::ExtPlus => (self.j, true),
        }
    }

    /// Closed position interval in the sequence `K_0 … K_n = (K,L_0) … (K,L_n)`.
    pub fn positions(&self, n: usize) -> (usize, usize) {
        match self.kind {
            EpType::Ord => (self.i, self.j - 1),
            EpType::ExtPlus => (self.i, 2 * n - self.j),
            EpType::ExtMinus => (self.j, 2 * n - self.i),
            EpType::Rel => (2 * n + 1 - self.j, 2 * n - self.i),
        }
    }

    /// Classifies a summand of the extended module on `2n + 1` positions.
    pub fn from_positions(qb: usize, qd: usize, n: usize) -> Option<EpInterval> {
        if qb > qd || qd >= 2 * n || qb == 0 {
            return None;
        }
        let iv = if qd < n {
            EpInterval { kind: EpType::Ord, i: qb, j: qd + 1 }
        } else if qb > n {
            EpInterval { kind: EpType::Rel, i: 2 * n - qd, j: 2 * n + 1 - qb }
        } else {
            let e = 2 * n - qd;
            if qb <= e {
                EpInterval { kind: EpType::ExtPlus, i: qb, j: e }
            } else {
                EpInterval { kind: EpType::ExtMinus, i: e, j: qb }
            }
        };
        Some(iv)
    }
}

impl fmt::Display for EpInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |(k, bar): (usize, bool)| if bar { format!("ā{k}") } else { format!("a{k}") };
        write!(f, "{:?} [{}, {})", self.kind, name(self.birth()), name(self.death()))
    }
}

/// Extended barcode; indices refer to `critical_values` (1-based, sorted, one per vertex).
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedBarcode {
    pub critical_values: Vec<f64>,
    pub bars: Multiset<(usize, EpInterval)>,
}

impl ExtendedBarcode {
    pub fn new(critical_values: Vec<f64>) -> Self {
        ExtendedBarcode { critical_values, bars: Multiset::new() }
    }

    pub fn n(&self) -> usize {
        self.critical_values.len()
    }

    /// `a_k`, with `a_0 = −∞` and `a_{n+1} = +∞`.
    pub fn value(&self, k: usize) -> f64 {
        if k == 0 {
            f64::NEG_INFINITY
        } else if k > self.n() {
            f64::INFINITY
        } else {
            self.critical_values[k - 1]
        }
    }

    pub fn degree(&self, p: usize) -> Multiset<EpInterval> {
        self.bars.iter().filter(|((d, _), _)| *d == p).map(|((_, iv), m)| (*iv, m)).collect()
    }

    pub fn check(&self) -> Result<(), PersistenceError> {
        let n = self.n();
        for ((_, iv), _) in self.bars.iter() {
            EpInterval::new(iv.kind, iv.i, iv.j)?;
            if iv.i.max(iv.j) > n {
                return Err(PersistenceError::MalformedEPInterval(format!("{iv} exceeds {n} critical values")));
            }
        }
        Ok(())
    }
}

/// How to handle repeated vertex values where injectivity is needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ties {
    Reject,
    BreakByIndex,
}

/// Lower-star sublevel persistence in degree `p` via the standard reduction.
pub fn ordinary_barcode(k: &SimplicialComplex, f: &VertexFunction, p: usize) -> Result<Barcode, PersistenceError> {
    f.check_total(k)?;
    let order = f.vertex_order(k);
    let mut rank = std::collections::HashMap::new();
    for (r, &v) in order.iter().enumerate() {
        rank.insert(v, r);
    }
    let top = |s: &[u32]| s.iter().map(|v| rank[v]).max().expect("nonempty simplex");
    let mut cells: Vec<&Vec<u32>> = k.iter().collect();
    cells.sort_by(|a, b| (top(a), a.len(), *a).cmp(&(top(b), b.len(), *b)));
    let pos: std::collections::HashMap<&Vec<u32>, u32> =
        cells.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
    let columns = cells
        .iter()
        .map(|s| {
            if s.len() == 1 {
                return Vec::new();
            }
            let faces = (0..s.len())
                .map(|skip| {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    pos[&face]
                })
                .collect();
            gflinalg::support_from_indices(faces)
        })
        .collect();
    let d = GF2Matrix::from_columns(cells.len(), columns).expect("face positions index rows");
    let red = column_reduce(&d);
    let value = |i: usize| f.value(order[top(cells[i])]);
    let mut bc = Barcode::new(Flavor::Ordinary);
    let mut paired = vec![false; cells.len()];
    for (&low, &col) in &red.pivots {
        paired[low] = true;
        paired[col] = true;
        if cells[low].len() == p + 1 {
            let (b, d) = (value(low), value(col));
            if b < d {
                bc.bars.insert((p, Interval::closed_open(b, d)), 1);
            }
        }
    }
    for i in 0..cells.len() {
        if cells[i].len() == p + 1 && !paired[i] && red.reduced.column(i).is_empty() {
            bc.bars.insert((p, Interval::closed_open(value(i), f64::INFINITY)), 1);
        }
    }
    Ok(bc)
}

/// A sequence of pairs related by inclusions in the arrows' directions.
#[derive(Debug, Clone)]
pub struct ZigzagDiagram {
    pub spaces: Vec<RelativePair>,
    pub arrows: Vec<Arrow>,
}

impl ZigzagDiagram {
    pub fn new(spaces: Vec<RelativePair>, arrows: Vec<Arrow>) -> Result<Self, PersistenceError> {
        if arrows.len() + 1 != spaces.len() && !(spaces.is_empty() && arrows.is_empty()) {
            return Err(PersistenceError::ArrowCount { spaces: spaces.len(), arrows: arrows.len() });
        }
        for (e, a) in arrows.iter().enumerate() {
            let ok = match a {
                Arrow::Forward => spaces[e].includes_into(&spaces[e + 1]),
                Arrow::Backward => spaces[e + 1].includes_into(&spaces[e]),
            };
            if !ok {
                return Err(PersistenceError::NotAnInclusion(e));
            }
        }
        Ok(ZigzagDiagram { spaces, arrows })
    }

    pub fn of_complexes(spaces: Vec<SimplicialComplex>, arrows: Vec<Arrow>) -> Result<Self, PersistenceError> {
        Self::new(spaces.into_iter().map(RelativePair::absolute).collect(), arrows)
    }
}

/// The representation obtained by applying `H_p` to a zigzag diagram.
pub fn zigzag_module(d: &ZigzagDiagram, p: usize) -> Result<QuiverRep, PersistenceError> {
    let bases: Vec<HomologyBasis> =
        d.spaces.iter().map(|s| relative_homology_basis(s, p)).collect::<Result<_, _>>()?;
    let mut maps = Vec::with_capacity(d.arrows.len());
    for (e, a) in d.arrows.iter().enumerate() {
        let (s, t) = match a {
            Arrow::Forward => (e, e + 1),
            Arrow::Backward => (e + 1, e),
        };
        maps.push(crate::complex::induced_map(&d.spaces[s], &d.spaces[t], &bases[s], &bases[t])?);
    }
    Ok(QuiverRep::new(bases.iter().map(HomologyBasis::betti).collect(), maps, d.arrows.clone())?)
}

pub fn zigzag_summands(d: &ZigzagDiagram, p: usize) -> Result<Vec<IntervalSummand>, PersistenceError> {
    if d.spaces.is_empty() {
        return Ok(Vec::new());
    }
    Ok(decompose(&zigzag_module(d, p)?)?)
}

/// Zigzag barcode in degree `p`; endpoints are diagram positions.
pub fn zigzag_barcode(d: &ZigzagDiagram, p: usize) -> Result<Barcode, PersistenceError> {
    let mut bc = Barcode::new(Flavor::Zigzag);
    for s in zigzag_summands(d, p)? {
        bc.bars.insert((p, Interval::closed(s.b as f64, s.d as f64)), s.multiplicity);
    }
    Ok(bc)
}

fn checked_order(k: &SimplicialComplex, f: &VertexFunction, ties: Ties) -> Result<Vec<u32>, PersistenceError> {
    f.check_total(k)?;
    if ties == Ties::Reject && !f.is_injective_on(k) {
        return Err(PersistenceError::NotInjective);
    }
    Ok(f.vertex_order(k))
}

/// `K_0 ⊆ … ⊆ K_n = (K, L_0) → (K, L_1) → … → (K, L_n)` as `2n + 1` pairs,
/// with `K_i` spanned by the `i` lowest vertices and `L_m` by the `m` highest.
pub fn extended_filtration(
    k: &SimplicialComplex,
    f: &VertexFunction,
    ties: Ties,
) -> Result<Vec<RelativePair>, PersistenceError> {
    let order = checked_order(k, f, ties)?;
    let n = order.len();
    let mut rank = vec![usize::MAX; order.iter().map(|&v| v as usize + 1).max().unwrap_or(0)];
    for (r, &v) in order.iter().enumerate() {
        rank[v as usize] = r;
    }
    let mut spaces = Vec::with_capacity(2 * n + 1);
    for q in 0..=n {
        spaces.push(RelativePair::absolute(k.span_subcomplex(|v| rank[v as usize] < q)));
    }
    for m in 1..=n {
        let l = k.span_subcomplex(|v| rank[v as usize] >= n - m);
        spaces.push(RelativePair::new(k.clone(), l)?);
    }
    Ok(spaces)
}

fn sorted_values(k: &SimplicialComplex, f: &VertexFunction, order: &[u32]) -> Vec<f64> {
    debug_assert_eq!(order.len(), k.simplices(0).len());
    order.iter().map(|&v| f.value(v)).collect()
}

/// Extended persistence barcodes for the listed degrees.
pub fn extended_barcode_degrees(
    k: &SimplicialComplex,
    f: &VertexFunction,
    degrees: &[usize],
    ties: Ties,
) -> Result<ExtendedBarcode, PersistenceError> {
    let order = checked_order(k, f, ties)?;
    let n = order.len();
    let mut out = ExtendedBarcode::new(sorted_values(k, f, &order));
    if n == 0 {
        return Ok(out);
    }
    let spaces = extended_filtration(k, f, ties)?;
    let diagram = ZigzagDiagram::new(spaces, vec![Arrow::Forward; 2 * n])?;
    for &p in degrees {
        for s in zigzag_summands(&diagram, p)? {
            let iv = EpInterval::from_positions(s.b, s.d, n).ok_or_else(|| {
                PersistenceError::MalformedEPInterval(format!("summand [{}, {}] on {n} vertices", s.b, s.d))
            })?;
            out.bars.insert((p, iv), s.multiplicity);
        }
    }
    Ok(out)
}

pub fn extended_barcode(
    k: &SimplicialComplex,
    f: &VertexFunction,
    p: usize,
    ties: Ties,
) -> Result<ExtendedBarcode, PersistenceError> {
    extended_barcode_degrees(k, f, &[p], ties)
}

/// All degrees `0..=dim K`.
pub fn extended_barcode_all(
    k: &SimplicialComplex,
    f: &VertexFunction,
    ties: Ties,
) -> Result<ExtendedBarcode, PersistenceError> {
    let degrees: Vec<usize> = (0..=k.dim().unwrap_or(0)).collect();
    extended_barcode_degrees(k, f, &degrees, ties)
}

/// Critical-value interval of a levelset-zigzag summand on positions `0..=2n`.
/// Odd positions `2i−1` are the slabs `X_{i−1}^i`, even positions `2i` the slices `X_i^i`.
pub fn lzz_position_interval(b: usize, d: usize, critical: &[f64]) -> Interval {
    let n = critical.len();
    let a = |k: usize| {
        if k == 0 {
            f64::NEG_INFINITY
        } else if k > n {
            f64::INFINITY
        } else {
            critical[k - 1]
        }
    };
    let (lo, lo_closed) = if b % 2 == 1 { (a(b.div_ceil(2)), true) } else { (a(b / 2), false) };
    let (hi, hi_closed) = if d % 2 == 1 { (a(d.div_ceil(2)), true) } else { (a(d / 2 + 1), false) };
    Interval::new(lo, hi, lo_closed, hi_closed).expect("summand positions give a valid interval")
}

/// Inverse of [`lzz_position_interval`]; `None` if an endpoint is not a critical value.
pub fn lzz_interval_positions(iv: &Interval, critical: &[f64]) -> Option<(usize, usize)> {
    let n = critical.len();
    let index = |x: f64| -> Option<usize> {
        if x == f64::NEG_INFINITY {
            Some(0)
        } else if x == f64::INFINITY {
            Some(n + 1)
        } else {
            critical.iter().position(|&c| c == x).map(|i| i + 1)
        }
    };
    let i = index(iv.lo)?;
    let j = index(iv.hi)?;
    let b = if iv.lo_closed { 2 * i - 1 } else { 2 * i };
    let d = if iv.hi_closed { 2 * j - 1 } else { (2 * j).checked_sub(2)? };
    (b <= d && d <= 2 * n).then_some((b, d))
}

/// The levelset zigzag `X_0^0 → X_0^1 ← X_1^1 → … ← X_n^n` of a graph, for
/// regular values `levels = s_0 < a_1 < s_1 < … < a_n < s_n`.
pub fn lzz_diagram_graph(
    g: &SimplicialComplex,
    f: &VertexFunction,
    levels: &[f64],
) -> Result<ZigzagDiagram, PersistenceError> {
    if let Some(d) = g.dim() {
        if d > 1 {
            return Err(PersistenceError::DimensionTooHigh(d));
        }
    }
    f.check_total(g)?;
    let cv = f.critical_values(g);
    let n = cv.len();
    if n == 0 {
        return ZigzagDiagram::new(Vec::new(), Vec::new());
    }
    let interleaved = levels.len() == n + 1
        && (0..n).all(|i| levels[i] < cv[i] && cv[i] < levels[i + 1]);
    if !interleaved {
        return Err(PersistenceError::InvalidLevels);
    }
    let (split, fs) = split_graph_at_levels(g, f, levels)?;
    let slab = |lo: f64, hi: f64| split.span_subcomplex(|v| lo <= fs.value(v) && fs.value(v) <= hi);
    let mut spaces = vec![slab(levels[0], levels[0])];
    let mut arrows = Vec::with_capacity(2 * n);
    for i in 1..=n {
        spaces.push(slab(levels[i - 1], levels[i]));
        spaces.push(slab(levels[i], levels[i]));
        arrows.push(Arrow::Forward);
        arrows.push(Arrow::Backward);
    }
    ZigzagDiagram::of_complexes(spaces, arrows)
}

pub fn lzz_barcode_graph_with_levels(
    g: &SimplicialComplex,
    f: &VertexFunction,
    p: usize,
    levels: &[f64],
) -> Result<Barcode, PersistenceError> {
    let diagram = lzz_diagram_graph(g, f, levels)?;
    let cv = f.critical_values(g);
    let mut bc = Barcode::new(Flavor::Lzz);
    for s in zigzag_summands(&diagram, p)? {
        bc.bars.insert((p, lzz_position_interval(s.b, s.d, &cv)), s.multiplicity);
    }
    Ok(bc)
}

/// Levelset zigzag barcode of a graph in degree `p`, over the critical values.
pub fn lzz_barcode_graph(g: &SimplicialComplex, f: &VertexFunction, p: usize) -> Result<Barcode, PersistenceError> {
    f.check_total(g)?;
    let levels = regular_values(&f.critical_values(g));
    lzz_barcode_graph_with_levels(g, f, p, &levels)
}

/// Degrees 0 and 1.
pub fn lzz_barcode_graph_all(g: &SimplicialComplex, f: &VertexFunction) -> Result<Barcode, PersistenceError> {
    let mut bc = lzz_barcode_graph(g, f, 0)?;
    bc.merge(&lzz_barcode_graph(g, f, 1)?);
    Ok(bc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    fn circle() -> (SimplicialComplex, VertexFunction) {
        let k = build_complex(&[vec![0, 1], vec![1, 3], vec![3, 2], vec![2, 0]]).unwrap();
        (k, VertexFunction::new(vec![-1.0, 0.0, 0.0001, 1.0]))
    }

    fn ms<T: Ord + Clone>(items: &[(T, usize)]) -> Multiset<T> {
        items.iter().cloned().collect()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(1.0, 0.0, true, true).is_err());
        assert!(Interval::new(1.0, 1.0, true, false).is_err());
        assert!(Interval::new(f64::NAN, 1.0, true, true).is_err());
        let iv = Interval::new(f64::NEG_INFINITY, 1.0, true, true).unwrap();
        assert_eq!(iv.kind(), EndpointKind::OpenClosed);
        assert_eq!(Interval::closed(-0.0, 1.0), Interval::closed(0.0, 1.0));
    }

    #[test]
    fn ordinary_circle() {
        let (k, f) = circle();
        let h0 = ordinary_barcode(&k, &f, 0).unwrap();
        assert_eq!(h0.bars, ms(&[((0, Interval::closed_open(-1.0, f64::INFINITY)), 1)]));
        let h1 = ordinary_barcode(&k, &f, 1).unwrap();
        assert_eq!(h1.bars, ms(&[((1, Interval::closed_open(1.0, f64::INFINITY)), 1)]));
        assert!(ordinary_barcode(&SimplicialComplex::empty(), &f, 0).unwrap().bars.is_empty());
    }

    #[test]
    fn extended_filtration_shapes() {
        let k = build_complex(&[vec![0]]).unwrap();
        let f = VertexFunction::new(vec![3.0]);
        let s = extended_filtration(&k, &f, Ties::Reject).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s[0].ambient.is_empty());
        assert_eq!(s[1], RelativePair::absolute(k.clone()));
        assert_eq!(s[2], RelativePair::new(k.clone(), k.clone()).unwrap());
        let (c, fc) = circle();
        assert_eq!(extended_filtration(&c, &fc, Ties::Reject).unwrap().len(), 9);
        let tie = build_complex(&[vec![0, 1]]).unwrap();
        let ft = VertexFunction::new(vec![0.0, 0.0]);
        assert_eq!(extended_filtration(&tie, &ft, Ties::Reject).unwrap_err(), PersistenceError::NotInjective);
        let s = extended_filtration(&tie, &ft, Ties::BreakByIndex).unwrap();
        assert_eq!(s[1].ambient.vertices(), vec![0]);
    }

    #[test]
    fn extended_circle() {
        let (k, f) = circle();
        let e0 = extended_barcode(&k, &f, 0, Ties::Reject).unwrap();
        assert_eq!(e0.bars, ms(&[((0, EpInterval { kind: EpType::ExtPlus, i: 1, j: 4 }), 1)]));
        let e1 = extended_barcode(&k, &f, 1, Ties::Reject).unwrap();
        assert_eq!(e1.bars, ms(&[((1, EpInterval { kind: EpType::ExtMinus, i: 1, j: 4 }), 1)]));
        let pt = build_complex(&[vec![0]]).unwrap();
        let e = extended_barcode(&pt, &VertexFunction::new(vec![0.0]), 0, Ties::Reject).unwrap();
        assert_eq!(e.bars, ms(&[((0, EpInterval { kind: EpType::ExtPlus, i: 1, j: 1 }), 1)]));
    }

    #[test]
    fn position_roundtrip() {
        for n in 1..5 {
            for qb in 1..2 * n {
                for qd in qb..2 * n {
                    let iv = EpInterval::from_positions(qb, qd, n).unwrap();
                    assert!(EpInterval::new(iv.kind, iv.i, iv.j).is_ok());
                    assert_eq!(iv.positions(n), (qb, qd));
                }
            }
        }
    }

    #[test]
    fn union_zigzag_of_two_points() {
        let a = build_complex(&[vec![0]]).unwrap();
        let b = build_complex(&[vec![1]]).unwrap();
        let d = ZigzagDiagram::of_complexes(vec![a.clone(), a.union(&b), b], vec![Arrow::Forward, Arrow::Backward])
            .unwrap();
        let s = zigzag_summands(&d, 0).unwrap();
        let got: Vec<(usize, usize)> = s.iter().map(|s| (s.b, s.d)).collect();
        assert_eq!(got, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn constant_zigzag() {
        let (k, _) = circle();
        let d =
            ZigzagDiagram::of_complexes(vec![k.clone(), k.clone(), k], vec![Arrow::Forward, Arrow::Backward]).unwrap();
        for p in 0..2 {
            let s = zigzag_summands(&d, p).unwrap();
            assert_eq!(s, vec![IntervalSummand { b: 0, d: 2, multiplicity: 1 }]);
        }
    }

    #[test]
    fn circle_levelset_zigzag_with_two_levels() {
        // only the extrema as critical values: slices at -2, 0.5, 2
        let (k, f) = circle();
        let (split, fs) = split_graph_at_levels(&k, &f, &[-2.0, 0.5, 2.0]).unwrap();
        let slab = |lo: f64, hi: f64| split.span_subcomplex(|v| lo <= fs.value(v) && fs.value(v) <= hi);
        let d = ZigzagDiagram::of_complexes(
            vec![slab(-2.0, -2.0), slab(-2.0, 0.5), slab(0.5, 0.5), slab(0.5, 2.0), slab(2.0, 2.0)],
            vec![Arrow::Forward, Arrow::Backward, Arrow::Forward, Arrow::Backward],
        )
        .unwrap();
        let got: Vec<(usize, usize)> = zigzag_summands(&d, 0).unwrap().iter().map(|s| (s.b, s.d)).collect();
        assert_eq!(got, vec![(1, 3), (2, 2)]);
    }

    #[test]
    fn lzz_circle() {
        let (k, f) = circle();
        let l0 = lzz_barcode_graph(&k, &f, 0).unwrap();
        assert_eq!(l0.bars, ms(&[((0, Interval::closed(-1.0, 1.0)), 1), ((0, Interval::open(-1.0, 1.0)), 1)]));
        assert!(lzz_barcode_graph(&k, &f, 1).unwrap().bars.is_empty());
        let e = build_complex(&[vec![0, 1]]).unwrap();
        let l = lzz_barcode_graph(&e, &VertexFunction::new(vec![0.0, 1.0]), 0).unwrap();
        assert_eq!(l.bars, ms(&[((0, Interval::closed(0.0, 1.0)), 1)]));
    }

    #[test]
    fn lzz_positions_roundtrip() {
        let cv = [-1.0, 0.5, 2.0];
        for b in 1..=6 {
            for d in b..=6 {
                let iv = lzz_position_interval(b, d, &cv);
                assert_eq!(lzz_interval_positions(&iv, &cv), Some((b, d)), "{iv}");
            }
        }
    }
}

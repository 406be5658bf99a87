//! Diamond moves, the Mayer-Vietoris pyramid, and the extended / levelset-zigzag bijection.
//!
//! Pyramid nodes live on integer coordinates `(a, b)` with `n ≤ a + b ≤ 3n + 2` and
//! `|a − b| ≤ n + 1`. Moving in `a` or `b` is an inclusion of pairs; each unit square is a
//! Mayer-Vietoris diamond whose bottom is the intersection and top the union of its sides.
//! A monotone path is recorded by its heights `h = a + b − n` at the indices `b − a + n + 1`.

use std::fmt;

use thiserror::Error;

use crate::complex::{regular_values, split_graph_at_levels, ComplexError, RelativePair, SimplicialComplex, VertexFunction};
use crate::multiset::Multiset;
use crate::persistence::{
    lzz_interval_positions, EpInterval, EpType, ExtendedBarcode, Flavor, Barcode, Interval, PersistenceError,
    ZigzagDiagram,
};
use crate::quiver::Arrow;

pub const DEFAULT_PYRAMID_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PyramidError {
    #[error("diamond index {k} is not interior to a zigzag with {len} positions")]
    IndexOutOfRange { k: usize, len: usize },
    #[error("pyramid for n = {n} exceeds the cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid monotone path: {0}")]
    InvalidPath(String),
    #[error("paths belong to pyramids of different sizes")]
    PathsNotConnected,
    #[error("interval [{0}, {1}] does not lie on the path")]
    IntervalNotOnPath(usize, usize),
    #[error("malformed interval: {0}")]
    MalformedInterval(String),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A graded barcode of positions: `(degree, (birth, death))`, both ends inclusive.
pub type PositionBarcode = Multiset<(usize, (usize, usize))>;

/// `Lower` replaces the union corner (a peak) by the intersection, `Raise` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiamondDirection {
    Lower,
    Raise,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiamondImage {
    pub image: PositionBarcode,
    /// `[k, k]` bars left unmatched by the weak form.
    pub unmatched: PositionBarcode,
}

/// Image of one bar under the move at `k`, ignoring the degree of `[k, k]`.
pub fn diamond_bar(bar: (usize, usize), k: usize) -> (usize, usize) {
    let (b, d) = bar;
    if b < k && d == k {
        (b, k - 1)
    } else if b < k && d + 1 == k {
        (b, k)
    } else if b == k && d > k {
        (k + 1, d)
    } else if b == k + 1 {
        (k, d)
    } else {
        (b, d)
    }
}

/// Moves a single graded bar; `None` when a `[k, k]` bar would drop below degree 0.
pub fn diamond_graded(p: usize, bar: (usize, usize), k: usize, dir: DiamondDirection) -> Option<(usize, (usize, usize))> {
    if bar == (k, k) {
        match dir {
            DiamondDirection::Lower => p.checked_sub(1).map(|q| (q, bar)),
            DiamondDirection::Raise => Some((p + 1, bar)),
        }
    } else {
        Some((p, diamond_bar(bar, k)))
    }
}

/// Transforms the barcode of one zigzag into that of the zigzag differing by the diamond at `k`.
/// With `strong`, `[k, k]` bars change degree by one; otherwise they are reported as unmatched.
pub fn diamond_move(
    bc: &PositionBarcode,
    len: usize,
    k: usize,
    dir: DiamondDirection,
    strong: bool,
) -> Result<DiamondImage, PyramidError> {
    if k == 0 || k + 1 >= len {
        return Err(PyramidError::IndexOutOfRange { k, len });
    }
    let mut out = DiamondImage::default();
    for (&(p, bar), m) in bc.iter() {
        if bar.0 > bar.1 || bar.1 >= len {
            return Err(PyramidError::MalformedInterval(format!("[{}, {}] on {len} positions", bar.0, bar.1)));
        }
        if bar == (k, k) && !strong {
            out.unmatched.insert((p, bar), m);
            continue;
        }
        match diamond_graded(p, bar, k, dir) {
            Some(moved) => out.image.insert(moved, m),
            None => out.unmatched.insert((p, bar), m),
        }
    }
    Ok(out)
}

/// Symbolic interlevel space of a critical-value grid with `n` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Interlevel {
    Empty,
    /// `X_i^j`
    Slab { i: usize, j: usize },
    /// `X_0^m ∪ X_k^n`
    Ends { m: usize, k: usize },
}

impl fmt::Display for Interlevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interlevel::Empty => write!(f, "∅"),
            Interlevel::Slab { i, j } => write!(f, "X{i}^{j}"),
            Interlevel::Ends { m, k } => write!(f, "X0^{m}∪X{k}^n"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PyramidNode {
    pub a: usize,
    pub b: usize,
    pub ambient: Interlevel,
    pub sub: Interlevel,
}

impl PyramidNode {
    /// The node at grid coordinates `(a, b)`, if it lies in the pyramid of size `n`.
    /// Pairs `(Y, Y)` are recorded as `∅`.
    pub fn at(n: usize, a: usize, b: usize) -> Option<PyramidNode> {
        let (ambient, sub) = Self::unreduced(n, a, b)?;
        let (ambient, sub) = if ambient == sub { (Interlevel::Empty, Interlevel::Empty) } else { (ambient, sub) };
        Some(PyramidNode { a, b, ambient, sub })
    }

    /// The pair at `(a, b)` before collapsing `(Y, Y)`; realizations use this form so that
    /// every grid step stays an inclusion of pairs.
    pub fn unreduced(n: usize, a: usize, b: usize) -> Option<(Interlevel, Interlevel)> {
        if a + b < n || a + b > 3 * n + 2 || a.abs_diff(b) > n + 1 {
            return None;
        }
        use Interlevel::*;
        Some(match (a <= n, b <= n) {
            (true, true) => (Slab { i: n - a, j: b }, Empty),
            (true, false) => (Slab { i: n - a, j: n }, Slab { i: 2 * n + 1 - b, j: n }),
            (false, true) => (Slab { i: 0, j: b }, Slab { i: 0, j: a - n - 1 }),
            (false, false) => {
                let (m, k) = (a - n - 1, 2 * n + 1 - b);
                (Slab { i: 0, j: n }, if k <= m { Slab { i: 0, j: n } } else { Ends { m, k } })
            }
        })
    }

    pub fn is_empty(&self) -> bool {
        self.ambient == Interlevel::Empty
    }

    pub fn label(&self) -> String {
        match self.sub {
            Interlevel::Empty => self.ambient.to_string(),
            sub => format!("({}, {})", self.ambient, sub),
        }
    }
}

/// A Mayer-Vietoris diamond, by the grid coordinates of its bottom corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diamond {
    pub a: usize,
    pub b: usize,
}

impl Diamond {
    pub fn bottom(&self) -> (usize, usize) {
        (self.a, self.b)
    }
    pub fn left(&self) -> (usize, usize) {
        (self.a + 1, self.b)
    }
    pub fn right(&self) -> (usize, usize) {
        (self.a, self.b + 1)
    }
    pub fn top(&self) -> (usize, usize) {
        (self.a + 1, self.b + 1)
    }
}

#[derive(Debug, Clone)]
pub struct Pyramid {
    pub n: usize,
    pub nodes: Vec<PyramidNode>,
    pub diamonds: Vec<Diamond>,
}

impl Pyramid {
    pub fn node(&self, a: usize, b: usize) -> Option<PyramidNode> {
        PyramidNode::at(self.n, a, b)
    }
}

pub fn build_pyramid(n: usize) -> Result<Pyramid, PyramidError> {
    build_pyramid_capped(n, DEFAULT_PYRAMID_CAP)
}

pub fn build_pyramid_capped(n: usize, cap: usize) -> Result<Pyramid, PyramidError> {
    if n == 0 || n > cap {
        return Err(PyramidError::TooLarge { n, cap });
    }
    let side = 2 * n + 2;
    let mut nodes = Vec::new();
    let mut diamonds = Vec::new();
    for a in 0..=side {
        for b in 0..=side {
            if let Some(node) = PyramidNode::at(n, a, b) {
                nodes.push(node);
                // Below the northern edge the sides meet in more than the symbolic bottom
                // (a whole levelset), so those squares are not Mayer-Vietoris diamonds.
                let below_north_edge = a > n && b > n && a + b == 3 * n;
                if !below_north_edge
                    && PyramidNode::at(n, a + 1, b + 1).is_some()
                    && PyramidNode::at(n, a + 1, b).is_some()
                    && PyramidNode::at(n, a, b + 1).is_some()
                {
                    diamonds.push(Diamond { a, b });
                }
            }
        }
    }
    Ok(Pyramid { n, nodes, diamonds })
}

/// A west-to-east path through the pyramid, one height per index `0..=2n+2`. Away from the
/// western and eastern columns the path stays strictly below the northern edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotonePath {
    n: usize,
    heights: Vec<usize>,
}

impl MonotonePath {
    pub fn new(n: usize, heights: Vec<usize>) -> Result<Self, PyramidError> {
        if n == 0 || heights.len() != 2 * n + 3 {
            return Err(PyramidError::InvalidPath(format!("expected {} heights", 2 * n + 3)));
        }
        if heights[0] % 2 != 1 {
            return Err(PyramidError::InvalidPath("the western height must be odd".into()));
        }
        if heights.iter().any(|&h| h > 2 * n + 2) {
            return Err(PyramidError::InvalidPath("height above the pyramid".into()));
        }
        if heights[2..=2 * n].iter().any(|&h| h > 2 * n + 1) {
            return Err(PyramidError::InvalidPath("path runs along the northern edge".into()));
        }
        if heights.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(PyramidError::InvalidPath("consecutive nodes are not adjacent".into()));
        }
        Ok(MonotonePath { n, heights })
    }

    /// The levelset zigzag along the southern edge; position `p` sits at index `p + 1`.
    pub fn lzz(n: usize) -> Self {
        let heights = (0..2 * n + 3).map(|i| (i % 2 == 0) as usize).collect();
        MonotonePath { n, heights }
    }

    /// `X_0^0 ⊆ … ⊆ X_0^n ⊆ (X_0^n, X_n^n) ⊆ … ⊆ (X_0^n, X_0^n)` on indices `1..=2n+2`.
    pub fn extended(n: usize) -> Self {
        let heights = (0..2 * n + 3).map(|i| if i == 0 { 1 } else { i - 1 }).collect();
        MonotonePath { n, heights }
    }

    /// `X_0^0 ⊆ … ⊆ X_0^n ⊇ X_1^n ⊇ … ⊇ X_n^n`.
    pub fn up_down(n: usize) -> Self {
        let heights = (0..2 * n + 3)
            .map(|i| match i {
                0 => 1,
                i if i <= n + 1 => i - 1,
                i if i <= 2 * n + 1 => 2 * n + 1 - i,
                _ => 1,
            })
            .collect();
        MonotonePath { n, heights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn coords(&self, index: usize) -> (usize, usize) {
        let (h, n) = (self.heights[index], self.n);
        ((h + 2 * n + 1 - index) / 2, (h + index - 1) / 2)
    }

    pub fn node(&self, index: usize) -> PyramidNode {
        let (a, b) = self.coords(index);
        PyramidNode::at(self.n, a, b).expect("path heights stay inside the pyramid")
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        self.heights
            .windows(2)
            .map(|w| if w[1] > w[0] { Arrow::Forward } else { Arrow::Backward })
            .collect()
    }

    fn is_peak(&self, k: usize) -> bool {
        k > 0 && k + 1 < self.len() && self.heights[k - 1] + 1 == self.heights[k] && self.heights[k + 1] + 1 == self.heights[k]
    }

    fn is_valley(&self, k: usize) -> bool {
        k > 0 && k + 1 < self.len() && self.heights[k - 1] == self.heights[k] + 1 && self.heights[k + 1] == self.heights[k] + 1
    }
}

/// One step of a path transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMove {
    /// Diamond move at an interior index.
    Diamond(usize, DiamondDirection),
    /// Swings an end of the path; the spaces involved are empty.
    Edge(usize),
}

/// The canonical sequence of moves from `from` to `to`: at every step, the lowest index
/// where the path can move toward its target.
pub fn move_sequence(from: &MonotonePath, to: &MonotonePath) -> Result<Vec<PathMove>, PyramidError> {
    if from.n != to.n {
        return Err(PyramidError::PathsNotConnected);
    }
    let mut cur = from.clone();
    let mut moves = Vec::new();
    let last = cur.len() - 1;
    while cur != *to {
        let step = (0..=last).find_map(|k| {
            let (h, t) = (cur.heights[k], to.heights[k]);
            if h == t {
                return None;
            }
            let lower = h > t;
            if k == 0 || k == last {
                let nb = cur.heights[if k == 0 { 1 } else { last - 1 }];
                let movable = if lower { nb + 1 == h && nb >= 1 } else { h + 1 == nb };
                return movable.then_some(PathMove::Edge(k));
            }
            if lower && cur.is_peak(k) {
                Some(PathMove::Diamond(k, DiamondDirection::Lower))
            } else if !lower && cur.is_valley(k) {
                Some(PathMove::Diamond(k, DiamondDirection::Raise))
            } else {
                None
            }
        });
        let step = step.expect("some index can always move toward a monotone target");
        let k = match step {
            PathMove::Diamond(k, _) | PathMove::Edge(k) => k,
        };
        if cur.heights[k] > to.heights[k] {
            cur.heights[k] -= 2;
        } else {
            cur.heights[k] += 2;
        }
        moves.push(step);
    }
    Ok(moves)
}

/// A bar after one move of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub moved: Option<PathMove>,
    pub degree: usize,
    pub bar: (usize, usize),
}

/// Follows one bar of `path1` through the canonical moves to `path2`. The first entry is the input.
pub fn trace_interval(
    path1: &MonotonePath,
    path2: &MonotonePath,
    degree: usize,
    bar: (usize, usize),
) -> Result<Vec<TraceStep>, PyramidError> {
    if bar.0 > bar.1 || bar.1 >= path1.len() {
        return Err(PyramidError::IntervalNotOnPath(bar.0, bar.1));
    }
    let mut steps = vec![TraceStep { moved: None, degree, bar }];
    let (mut p, mut cur) = (degree, bar);
    for mv in move_sequence(path1, path2)? {
        if let PathMove::Diamond(k, dir) = mv {
            let (q, next) = diamond_graded(p, cur, k, dir)
                .ok_or_else(|| PyramidError::MalformedInterval(format!("[{k}, {k}] in degree 0 at a peak")))?;
            p = q;
            cur = next;
        }
        steps.push(TraceStep { moved: Some(mv), degree: p, bar: cur });
    }
    Ok(steps)
}

/// Applies the canonical moves from `path1` to `path2` to a whole barcode.
pub fn transform_barcode(
    path1: &MonotonePath,
    path2: &MonotonePath,
    bc: &PositionBarcode,
) -> Result<PositionBarcode, PyramidError> {
    let mut out = PositionBarcode::new();
    for (&(p, bar), m) in bc.iter() {
        let steps = trace_interval(path1, path2, p, bar)?;
        let last = steps.last().expect("trace starts with the input");
        out.insert((last.degree, last.bar), m);
    }
    Ok(out)
}

/// Pyramid index of a levelset-zigzag position.
pub fn lzz_index(p: usize) -> usize {
    p + 1
}

/// Pyramid indices of a bar of the discrete extended sequence on `n` vertices. The space
/// `K = (K, L_0)` occupies indices `n + 1` and `n + 2`.
pub fn ep_indices(qb: usize, qd: usize, n: usize) -> (usize, usize) {
    let b = if qb <= n { qb + 1 } else { qb + 2 };
    let d = if qd < n { qd + 1 } else { qd + 2 };
    (b, d)
}

/// Realizes a pyramid node on a graph already split at the `levels`.
pub fn realize_node(
    split: &SimplicialComplex,
    fs: &VertexFunction,
    levels: &[f64],
    node: &PyramidNode,
) -> Result<RelativePair, PyramidError> {
    let n = levels.len() - 1;
    let realize = |s: Interlevel| {
        let slab = |i: usize, j: usize| split.span_subcomplex(|v| levels[i] <= fs.value(v) && fs.value(v) <= levels[j]);
        match s {
            Interlevel::Empty => SimplicialComplex::empty(),
            Interlevel::Slab { i, j } => slab(i, j),
            Interlevel::Ends { m, k } => slab(0, m).union(&slab(k, n)),
        }
    };
    let (ambient, sub) = PyramidNode::unreduced(n, node.a, node.b).expect("node lies in the pyramid");
    Ok(RelativePair::new(realize(ambient), realize(sub))?)
}

/// The zigzag of pairs along `path` for a graph whose distinct critical values number `path.n()`.
pub fn realize_path(g: &SimplicialComplex, f: &VertexFunction, path: &MonotonePath) -> Result<ZigzagDiagram, PyramidError> {
    let cv = f.critical_values(g);
    if cv.len() != path.n {
        return Err(PyramidError::InvalidPath(format!("graph has {} critical values, path expects {}", cv.len(), path.n)));
    }
    let levels = regular_values(&cv);
    let (split, fs) = split_graph_at_levels(g, f, &levels)?;
    let spaces = (0..path.len())
        .map(|i| realize_node(&split, &fs, &levels, &path.node(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ZigzagDiagram::new(spaces, path.arrows())?)
}

fn ep_lzz_pair(iv: &EpInterval, p: usize) -> Option<(usize, bool, bool)> {
    // (lzz degree, lo closed, hi closed)
    match iv.kind {
        EpType::Ord => Some((p, true, false)),
        EpType::ExtPlus => Some((p, true, true)),
        EpType::Rel => p.checked_sub(1).map(|q| (q, false, true)),
        EpType::ExtMinus => p.checked_sub(1).map(|q| (q, false, false)),
    }
}

/// Levelset-zigzag barcode corresponding to an extended barcode. Intervals collapsing to
/// the empty set because of tied critical values are dropped.
pub fn ep_to_lzz(bc: &ExtendedBarcode) -> Result<Barcode, PyramidError> {
    bc.check()?;
    let mut out = Barcode::new(Flavor::Lzz);
    for (&(p, iv), m) in bc.bars.iter() {
        let (q, lo_closed, hi_closed) = ep_lzz_pair(&iv, p)
            .ok_or_else(|| PyramidError::MalformedInterval(format!("{iv} in degree 0 has no shifted partner")))?;
        let (lo, hi) = (bc.value(iv.i), bc.value(iv.j));
        if let Ok(target) = Interval::new(lo, hi, lo_closed, hi_closed) {
            out.bars.insert((q, target), m);
        }
    }
    Ok(out)
}

/// Inverse of [`ep_to_lzz`] over the given critical values (one per vertex, sorted).
pub fn lzz_to_ep(bc: &Barcode, critical_values: &[f64]) -> Result<ExtendedBarcode, PyramidError> {
    let mut out = ExtendedBarcode::new(critical_values.to_vec());
    let n = critical_values.len();
    for (&(p, iv), m) in bc.bars.iter() {
        let idx = |x: f64| -> Result<usize, PyramidError> {
            critical_values
                .iter()
                .position(|&c| c == x)
                .map(|i| i + 1)
                .ok_or_else(|| PyramidError::MalformedInterval(format!("{iv}: {x} is not a critical value")))
        };
        let (i, j) = (idx(iv.lo)?, idx(iv.hi)?);
        debug_assert!(i <= n && j <= n);
        let (kind, q) = match (iv.lo_closed, iv.hi_closed) {
            (true, true) => (EpType::ExtPlus, p),
            (true, false) => (EpType::Ord, p),
            (false, true) => (EpType::Rel, p + 1),
            (false, false) => (EpType::ExtMinus, p + 1),
        };
        let ep = EpInterval::new(kind, i, j).map_err(|e| PyramidError::MalformedInterval(e.to_string()))?;
        out.bars.insert((q, ep), m);
    }
    Ok(out)
}

/// Pyramid-index barcode of a levelset-zigzag barcode over `critical` values.
pub fn lzz_position_barcode(bc: &Barcode, critical: &[f64]) -> Result<PositionBarcode, PyramidError> {
    let mut out = PositionBarcode::new();
    for (&(p, iv), m) in bc.bars.iter() {
        let (b, d) = lzz_interval_positions(&iv, critical)
            .ok_or_else(|| PyramidError::MalformedInterval(format!("{iv} is not over the critical values")))?;
        out.insert((p, (lzz_index(b), lzz_index(d))), m);
    }
    Ok(out)
}

/// Pyramid-index barcode of an extended barcode.
pub fn ep_position_barcode(bc: &ExtendedBarcode) -> PositionBarcode {
    let n = bc.n();
    bc.bars
        .iter()
        .map(|(&(p, iv), m)| {
            let (qb, qd) = iv.positions(n);
            ((p, ep_indices(qb, qd, n)), m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bars(items: &[(usize, (usize, usize))]) -> PositionBarcode {
        items.iter().map(|&x| (x, 1)).collect()
    }

    #[test]
    fn diamond_table() {
        let lower = |b: PositionBarcode| diamond_move(&b, 3, 1, DiamondDirection::Lower, true).unwrap().image;
        assert_eq!(lower(bars(&[(0, (0, 1))])), bars(&[(0, (0, 0))]));
        assert_eq!(lower(bars(&[(0, (1, 2))])), bars(&[(0, (2, 2))]));
        assert_eq!(lower(bars(&[(0, (0, 2))])), bars(&[(0, (0, 2))]));
        assert_eq!(lower(bars(&[(1, (1, 1))])), bars(&[(0, (1, 1))]));
        let weak = diamond_move(&bars(&[(1, (1, 1)), (0, (0, 0))]), 3, 1, DiamondDirection::Lower, false).unwrap();
        assert_eq!(weak.image, bars(&[(0, (0, 1))]));
        assert_eq!(weak.unmatched, bars(&[(1, (1, 1))]));
        assert!(matches!(
            diamond_move(&bars(&[]), 3, 0, DiamondDirection::Lower, true),
            Err(PyramidError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn diamond_is_involutive() {
        for len in 3..7 {
            for k in 1..len - 1 {
                for b in 0..len {
                    for d in b..len {
                        let once = diamond_graded(1, (b, d), k, DiamondDirection::Lower).unwrap();
                        let back = diamond_graded(once.0, once.1, k, DiamondDirection::Raise).unwrap();
                        assert_eq!(back, (1, (b, d)));
                    }
                }
            }
        }
    }

    #[test]
    fn pyramid_n1() {
        let p = build_pyramid(1).unwrap();
        let south = MonotonePath::lzz(1);
        let labels: Vec<String> = (1..=3).map(|i| south.node(i).label()).collect();
        assert_eq!(labels, ["X0^0", "X0^1", "X1^1"]);
        assert!(south.node(0).is_empty() && south.node(4).is_empty());
        assert!(p.diamonds.iter().all(|d| p.node(d.top().0, d.top().1).is_some()));
        assert!(matches!(build_pyramid(7), Err(PyramidError::TooLarge { .. })));
    }

    #[test]
    fn pyramid_n2_diamond_count() {
        // 13 unit squares with bottoms (x, h), |x| ≤ 2, 0 ≤ h ≤ 4 and matching parity,
        // minus the one at (0, 4) directly under the northern edge
        let p = build_pyramid(2).unwrap();
        assert_eq!(p.diamonds.len(), 12);
        assert!(!p.diamonds.contains(&Diamond { a: 3, b: 3 }));
        // seven columns holding 3, 4, 3, 4, 3, 4, 3 nodes
        assert_eq!(p.nodes.len(), 24);
    }

    #[test]
    fn pyramid_n3_center() {
        let p = build_pyramid(3).unwrap();
        let labels: Vec<String> = p.nodes.iter().map(PyramidNode::label).collect();
        for (m, k) in [(0, 2), (0, 3), (1, 3), (0, 1)] {
            let want = format!("(X0^3, X0^{m}∪X{k}^n)");
            assert!(labels.contains(&want), "{want}");
        }
    }

    #[test]
    fn paths() {
        let n = 3;
        let ep = MonotonePath::extended(n);
        assert!(ep.arrows()[1..].iter().all(|&a| a == Arrow::Forward));
        assert_eq!(ep.node(n + 1).label(), "X0^3");
        assert_eq!(ep.node(2 * n + 1).label(), "(X0^3, X1^3)");
        let ud = MonotonePath::up_down(n);
        assert_eq!(ud.node(2 * n + 1).label(), "X3^3");
        assert!(MonotonePath::new(n, vec![0; 2 * n + 3]).is_err());
        let l = MonotonePath::lzz(n);
        for to in [&ep, &ud] {
            let moves = move_sequence(&l, to).unwrap();
            assert!(moves.iter().all(|m| matches!(m, PathMove::Diamond(_, DiamondDirection::Raise) | PathMove::Edge(_))));
        }
        assert_eq!(trace_interval(&l, &l, 0, (2, 3)).unwrap().len(), 1);
    }

    fn circle_ep() -> ExtendedBarcode {
        let mut e = ExtendedBarcode::new(vec![-1.0, 0.0, 0.0001, 1.0]);
        e.bars.insert((0, EpInterval { kind: EpType::ExtPlus, i: 1, j: 4 }), 1);
        e.bars.insert((1, EpInterval { kind: EpType::ExtMinus, i: 1, j: 4 }), 1);
        e
    }

    #[test]
    fn circle_table() {
        let l = ep_to_lzz(&circle_ep()).unwrap();
        let want: Multiset<(usize, Interval)> =
            [((0, Interval::closed(-1.0, 1.0)), 1), ((0, Interval::open(-1.0, 1.0)), 1)].into_iter().collect();
        assert_eq!(l.bars, want);
        assert_eq!(lzz_to_ep(&l, &circle_ep().critical_values).unwrap(), circle_ep());
        assert!(ep_to_lzz(&ExtendedBarcode::new(vec![])).unwrap().bars.is_empty());
    }

    #[test]
    fn table_rows() {
        let cv = vec![0.0, 1.0, 2.0];
        let mut ord = ExtendedBarcode::new(cv.clone());
        ord.bars.insert((1, EpInterval { kind: EpType::Ord, i: 1, j: 3 }), 2);
        let l = ep_to_lzz(&ord).unwrap();
        assert_eq!(l.bars.count(&(1, Interval::closed_open(0.0, 2.0))), 2);
        let mut rel = Barcode::new(Flavor::Lzz);
        rel.bars.insert((0, Interval::open_closed(1.0, 2.0)), 1);
        let e = lzz_to_ep(&rel, &cv).unwrap();
        assert_eq!(e.bars.count(&(1, EpInterval { kind: EpType::Rel, i: 2, j: 3 })), 1);
        let mut bad = Barcode::new(Flavor::Lzz);
        bad.bars.insert((0, Interval::closed(0.5, 2.0)), 1);
        assert!(lzz_to_ep(&bad, &cv).is_err());
    }
}

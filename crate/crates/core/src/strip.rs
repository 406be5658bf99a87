//! The strip `𝕄`: symbolic points, the shift `T`, the maps `ρ` and `I(·)`, the bijection
//! `Ψ`, and the extended metric with its bottleneck distance.
//!
//! Points are stored as `(degree, face, a, b)`. The planar chart puts `𝕄` in the band
//! `{−π ≤ x + y ≤ π}` with `(x, y) ⪯ (x', y')` iff `x ≤ x'` and `y ≥ y'`, the injected line
//! `★` on the diagonal and the degree-0 copy of the fundamental domain at `0 ≤ y − x < 2π`.
//! Values enter the chart through `arctan`:
//!
//! | face | interval  | degree-0 chart           |
//! |------|-----------|--------------------------|
//! | S    | `[a, b]`  | `(at a, at b)`           |
//! | N    | `(a, b)`  | `(−π − at a, π − at b)`  |
//! | E    | `(a, b]`  | `(−π − at a, at b)`      |
//! | W    | `[a, b)`  | `(at a, π − at b)`       |
//!
//! Raising the degree by one is `(x, y) ↦ (−π − y, π − x)`.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use thiserror::Error;

use crate::blocks::gap;
use crate::matching::bottleneck;
use crate::multiset::Multiset;
use crate::persistence::{total_key, Barcode, ExtendedBarcode, Flavor, Interval};
use crate::pyramid::ep_to_lzz;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StripError {
    #[error("malformed strip point: {0}")]
    MalformedPoint(String),
    #[error("malformed interval: {0}")]
    MalformedInterval(String),
    #[error("malformed extended interval: {0}")]
    MalformedEPInterval(String),
    #[error("point has degree {0}, expected a point of the fundamental domain")]
    DegreeNotNormalized(i64),
    #[error("point has negative degree {0} and no barcode interval")]
    NegativeDegree(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    N,
    E,
    S,
    W,
}

impl Face {
    pub fn tag(self) -> &'static str {
        match self {
            Face::N => "N",
            Face::E => "E",
            Face::S => "S",
            Face::W => "W",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct StripPoint {
    pub degree: i64,
    pub face: Face,
    pub a: f64,
    pub b: f64,
}

impl StripPoint {
    pub fn new(degree: i64, face: Face, a: f64, b: f64) -> Result<Self, StripError> {
        let bad = |why: &str| Err(StripError::MalformedPoint(format!("{} ⟨{a}, {b}⟩: {why}", face.tag())));
        if a.is_nan() || b.is_nan() {
            return bad("NaN endpoint");
        }
        if a == f64::INFINITY || b == f64::NEG_INFINITY {
            return bad("endpoint on the wrong side");
        }
        let ok = match face {
            Face::S => a.is_finite() && b.is_finite() && a <= b,
            Face::N => a < b,
            Face::E => a < b && b.is_finite(),
            Face::W => a < b && a.is_finite(),
        };
        if !ok {
            return bad("endpoints violate the face constraints");
        }
        Ok(StripPoint { degree, face, a: a + 0.0, b: b + 0.0 })
    }

    fn key(&self) -> (i64, Face, u64, u64) {
        (self.degree, self.face, total_key(self.a), total_key(self.b))
    }
}

impl PartialEq for StripPoint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for StripPoint {}

impl PartialOrd for StripPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StripPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for StripPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for StripPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})@{}", self.face.tag(), self.a, self.b, self.degree)
    }
}

/// Multiset of strip points with multiplicities.
pub type StripDiagram = Multiset<StripPoint>;

pub fn apply_t(m: &StripPoint) -> StripPoint {
    StripPoint { degree: m.degree + 1, ..*m }
}

pub fn apply_t_inv(m: &StripPoint) -> StripPoint {
    StripPoint { degree: m.degree - 1, ..*m }
}

/// A finite union of disjoint, non-adjacent intervals, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RealSet(Vec<Interval>);

impl RealSet {
    pub fn empty() -> Self {
        RealSet(Vec::new())
    }

    pub fn reals() -> Self {
        RealSet(vec![Interval::open(f64::NEG_INFINITY, f64::INFINITY)])
    }

    pub fn from_intervals(mut ivs: Vec<Interval>) -> Self {
        ivs.sort_by(|x, y| x.lo.total_cmp(&y.lo).then(y.lo_closed.cmp(&x.lo_closed)));
        let mut out: Vec<Interval> = Vec::new();
        for iv in ivs {
            match out.last_mut() {
                Some(last) if iv.lo < last.hi || (iv.lo == last.hi && (last.hi_closed || iv.lo_closed)) => {
                    if iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed) {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    }
                }
                _ => out.push(iv),
            }
        }
        RealSet(out)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.0.iter().any(|iv| iv.contains(x))
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let (mut lo, mut lo_closed) = (f64::NEG_INFINITY, false);
        for iv in &self.0 {
            if let Ok(g) = Interval::new(lo, iv.lo, lo_closed, !iv.lo_closed) {
                out.push(g);
            }
            lo = iv.hi;
            lo_closed = !iv.hi_closed;
        }
        if let Ok(g) = Interval::new(lo, f64::INFINITY, lo_closed, false) {
            out.push(g);
        }
        RealSet(out)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for x in &self.0 {
            for y in &other.0 {
                let (lo, lo_closed) = match x.lo.total_cmp(&y.lo) {
                    Ordering::Less => (y.lo, y.lo_closed),
                    Ordering::Greater => (x.lo, x.lo_closed),
                    Ordering::Equal => (x.lo, x.lo_closed && y.lo_closed),
                };
                let (hi, hi_closed) = match x.hi.total_cmp(&y.hi) {
                    Ordering::Less => (x.hi, x.hi_closed),
                    Ordering::Greater => (y.hi, y.hi_closed),
                    Ordering::Equal => (x.hi, x.hi_closed && y.hi_closed),
                };
                if let Ok(iv) = Interval::new(lo, hi, lo_closed, hi_closed) {
                    out.push(iv);
                }
            }
        }
        RealSet::from_intervals(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

impl fmt::Display for RealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|iv| iv.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}

/// The pair of sets attached to a point of the fundamental domain.
pub fn rho(m: &StripPoint) -> Result<(RealSet, RealSet), StripError> {
    if m.degree != 0 {
        return Err(StripError::DegreeNotNormalized(m.degree));
    }
    let iv = |lo, hi, lc, hc| Interval::new(lo, hi, lc, hc).expect("face constraints give a valid interval");
    let (inf, ninf) = (f64::INFINITY, f64::NEG_INFINITY);
    let one = |i| RealSet(vec![i]);
    Ok(match m.face {
        Face::S => (one(iv(m.a, m.b, true, true)), RealSet::empty()),
        Face::W => {
            let y = if m.b == inf { RealSet::empty() } else { one(iv(m.b, inf, true, false)) };
            (one(iv(m.a, inf, true, false)), y)
        }
        Face::E => {
            let y = if m.a == ninf { RealSet::empty() } else { one(iv(ninf, m.a, false, true)) };
            (one(iv(ninf, m.b, false, true)), y)
        }
        Face::N => (RealSet::reals(), one(iv(m.a, m.b, false, false)).complement()),
    })
}

/// `(deg m, X ∖ Y)` where `(X, Y) = ρ(T^{−deg m} m)`.
pub fn interval_of(m: &StripPoint) -> (i64, Interval) {
    let base = StripPoint { degree: 0, ..*m };
    let (x, y) = rho(&base).expect("degree 0");
    let diff = x.difference(&y);
    match diff.intervals() {
        [iv] => (m.degree, *iv),
        _ => unreachable!("ρ pairs differ by one interval, got {diff}"),
    }
}

/// The strip point with the given degree and interval.
pub fn psi_inv(degree: i64, iv: &Interval) -> Result<StripPoint, StripError> {
    let iv = Interval::new(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed)
        .map_err(|e| StripError::MalformedInterval(e.to_string()))?;
    let face = match (iv.lo_closed, iv.hi_closed) {
        (true, true) => Face::S,
        (false, false) => Face::N,
        (false, true) => Face::E,
        (true, false) => Face::W,
    };
    StripPoint::new(degree, face, iv.lo, iv.hi)
}

pub fn ep_barcode_to_strip(e: &ExtendedBarcode) -> Result<StripDiagram, StripError> {
    let lzz = ep_to_lzz(e).map_err(|err| StripError::MalformedEPInterval(err.to_string()))?;
    lzz_to_strip(&lzz)
}

pub fn lzz_to_strip(bc: &Barcode) -> Result<StripDiagram, StripError> {
    let mut out = StripDiagram::new();
    for (&(p, iv), m) in bc.bars.iter() {
        out.insert(psi_inv(p as i64, &iv)?, m);
    }
    Ok(out)
}

pub fn strip_to_lzz(d: &StripDiagram) -> Result<Barcode, StripError> {
    let mut out = Barcode::new(Flavor::Lzz);
    for (pt, m) in d.iter() {
        let (deg, iv) = interval_of(pt);
        let p = usize::try_from(deg).map_err(|_| StripError::NegativeDegree(deg))?;
        out.bars.insert((p, iv), m);
    }
    Ok(out)
}

fn at(v: f64) -> f64 {
    if v.is_infinite() {
        FRAC_PI_2.copysign(v)
    } else {
        v.atan()
    }
}

fn raise(p: (f64, f64)) -> (f64, f64) {
    (-PI - p.1, PI - p.0)
}

fn lower(p: (f64, f64)) -> (f64, f64) {
    (PI - p.1, -PI - p.0)
}

/// Planar coordinates of a point.
pub fn to_planar(m: &StripPoint) -> (f64, f64) {
    let (ta, tb) = (at(m.a), at(m.b));
    let mut p = match m.face {
        Face::S => (ta, tb),
        Face::N => (-PI - ta, PI - tb),
        Face::E => (-PI - ta, tb),
        Face::W => (ta, PI - tb),
    };
    // two steps translate by (−2π, 2π)
    let q = m.degree.div_euclid(2) as f64;
    p = (p.0 - 2.0 * PI * q, p.1 + 2.0 * PI * q);
    if m.degree.rem_euclid(2) == 1 {
        p = raise(p);
    }
    p
}

fn in_open(v: f64, lo: f64, hi: f64) -> bool {
    lo < v && v < hi
}

/// Inverse of [`to_planar`] on the interior of the band away from the barrier lines
/// `x, y ∈ π/2 + πℤ`. Returns `None` elsewhere.
pub fn from_planar(x: f64, y: f64) -> Option<StripPoint> {
    if !(x.is_finite() && y.is_finite()) || !(-PI < x + y && x + y < PI) {
        return None;
    }
    let w = y - x;
    let deg = (w / (2.0 * PI)).floor() as i64;
    let mut p = (x, y);
    let q = deg.div_euclid(2) as f64;
    if deg.rem_euclid(2) == 1 {
        p = lower(p);
    }
    p = (p.0 + 2.0 * PI * q, p.1 - 2.0 * PI * q);
    let (x, y) = p;
    let (h, lo, hi) = (FRAC_PI_2, -3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2);
    let (face, a, b) = if in_open(x, -h, h) && in_open(y, -h, h) {
        (Face::S, x.tan(), y.tan())
    } else if in_open(x, lo, -h) && in_open(y, h, hi) {
        (Face::N, (-PI - x).tan(), (PI - y).tan())
    } else if in_open(x, lo, -h) && in_open(y, -h, h) {
        (Face::E, (-PI - x).tan(), y.tan())
    } else if in_open(x, -h, h) && in_open(y, h, hi) {
        (Face::W, x.tan(), (PI - y).tan())
    } else {
        return None;
    };
    StripPoint::new(deg, face, a, b).ok()
}

/// The extended metric on one coordinate: `|tan t − tan s|` within a branch of `tan`,
/// infinite across a barrier.
pub fn d0(s: f64, t: f64) -> f64 {
    if s == t {
        return 0.0;
    }
    let branch = |v: f64| ((v + FRAC_PI_2) / PI).floor();
    let on_barrier = |v: f64| ((v + FRAC_PI_2) / PI).fract() == 0.0;
    if branch(s) != branch(t) || on_barrier(s) || on_barrier(t) {
        return f64::INFINITY;
    }
    (t.tan() - s.tan()).abs()
}

/// `max(d₀(x, x'), d₀(y, y'))` in the planar chart.
pub fn planar_distance(s: &StripPoint, t: &StripPoint) -> f64 {
    let (p, q) = (to_planar(s), to_planar(t));
    d0(p.0, q.0).max(d0(p.1, q.1))
}

/// The strip metric in closed form. Finite only within one face of one copy, or between an
/// S point in degree `k` and an N point in degree `k − 1`, which share a cell of the chart.
pub fn d_strip(s: &StripPoint, t: &StripPoint) -> f64 {
    if s.degree == t.degree && s.face == t.face {
        return gap(s.a, t.a).max(gap(s.b, t.b));
    }
    let (lo, hi) = if s.degree < t.degree { (s, t) } else { (t, s) };
    if hi.degree == lo.degree + 1 && hi.face == Face::S && lo.face == Face::N {
        return gap(hi.a, lo.b).max(gap(hi.b, lo.a));
    }
    f64::INFINITY
}

/// Distance from a point to the boundary lines `x + y = ±π`. Only the half-open faces reach
/// them through a single cell of the chart.
pub fn boundary_cost(m: &StripPoint) -> f64 {
    match m.face {
        Face::E | Face::W => (m.b - m.a) / 2.0,
        Face::S | Face::N => f64::INFINITY,
    }
}

pub fn bottleneck_strip(d1: &StripDiagram, d2: &StripDiagram) -> f64 {
    let x: Vec<StripPoint> = d1.expanded().copied().collect();
    let y: Vec<StripPoint> = d2.expanded().copied().collect();
    bottleneck(&x, &y, d_strip, boundary_cost, boundary_cost)
}

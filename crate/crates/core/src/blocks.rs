//! Block barcodes of levelset persistence modules over `𝕌 = {(x, y) : x < y}`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::complex::{SimplicialComplex, VertexFunction};
use crate::matching::bottleneck;
use crate::multiset::Multiset;
use crate::persistence::{extended_barcode_all, total_key, Barcode, EpType, ExtendedBarcode, PersistenceError, Ties};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlockError {
    #[error("malformed block: {0}")]
    MalformedBlock(String),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// `(a, b)_BL = {a < x, y < b}`
    O,
    /// `[a, b)_BL = {a ≤ y < b}`
    Co,
    /// `(a, b]_BL = {a < x ≤ b}`
    Oc,
    /// `[a, b]_BL = {x ≤ b, y ≥ a}`; subtype c1 when `a < b`, c2 otherwise
    C,
}

impl BlockKind {
    pub fn tag(self) -> &'static str {
        match self {
            BlockKind::O => "o",
            BlockKind::Co => "co",
            BlockKind::Oc => "oc",
            BlockKind::C => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CSubkind {
    C1,
    C2,
}

#[derive(Debug, Clone, Copy)]
pub struct Block {
    pub kind: BlockKind,
    pub a: f64,
    pub b: f64,
}

impl Block {
    pub fn new(kind: BlockKind, a: f64, b: f64) -> Result<Self, BlockError> {
        let bad = |why: &str| Err(BlockError::MalformedBlock(format!("{} block ⟨{a}, {b}⟩: {why}", kind.tag())));
        if a.is_nan() || b.is_nan() {
            return bad("NaN endpoint");
        }
        if a == f64::INFINITY || b == f64::NEG_INFINITY {
            return bad("endpoint on the wrong side of the line");
        }
        match kind {
            BlockKind::O | BlockKind::Co | BlockKind::Oc if a >= b => bad("needs a < b"),
            BlockKind::C if a >= b && !(a.is_finite() && b.is_finite()) => bad("c2 blocks need finite ends"),
            _ => Ok(Block { kind, a: a + 0.0, b: b + 0.0 }),
        }
    }

    pub fn o(a: f64, b: f64) -> Self {
        Self::new(BlockKind::O, a, b).expect("valid o block")
    }
    pub fn co(a: f64, b: f64) -> Self {
        Self::new(BlockKind::Co, a, b).expect("valid co block")
    }
    pub fn oc(a: f64, b: f64) -> Self {
        Self::new(BlockKind::Oc, a, b).expect("valid oc block")
    }
    pub fn c(a: f64, b: f64) -> Self {
        Self::new(BlockKind::C, a, b).expect("valid c block")
    }

    pub fn subkind(&self) -> Option<CSubkind> {
        (self.kind == BlockKind::C).then_some(if self.a < self.b { CSubkind::C1 } else { CSubkind::C2 })
    }

    pub fn is_c2(&self) -> bool {
        self.subkind() == Some(CSubkind::C2)
    }

    /// Membership of `(x, y)`, `x < y`.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (a, b) = (self.a, self.b);
        match self.kind {
            BlockKind::O => a < x && y < b,
            BlockKind::Co => a <= y && y < b,
            BlockKind::Oc => a < x && x <= b,
            BlockKind::C => x <= b && y >= a,
        }
    }

    fn key(&self) -> (BlockKind, u64, u64) {
        (self.kind, total_key(self.a), total_key(self.b))
    }
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Block {}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Block {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = match self.kind {
            BlockKind::O => ('(', ')'),
            BlockKind::Co => ('[', ')'),
            BlockKind::Oc => ('(', ']'),
            BlockKind::C => ('[', ']'),
        };
        write!(f, "{l}{}, {}{r}_BL", self.a, self.b)
    }
}

/// Multiset of `(degree, block)` pairs.
pub type BlockBarcode = Multiset<(usize, Block)>;

/// One block per levelset-zigzag interval, typed by its ends. Infinite ends follow the
/// block list: `(−∞, b)` is co, `(a, ∞)` is oc, and `[a, ∞)`, `(−∞, b]` are c.
///
/// The c2 blocks `[b, a]_BL` in degree `p + 1` paired with open intervals do not appear in
/// the levelset zigzag; [`ep_to_blocks`] produces the full block barcode.
pub fn lzz_to_blocks(bc: &Barcode) -> BlockBarcode {
    bc.bars
        .iter()
        .map(|(&(p, iv), m)| {
            let kind = match (iv.lo.is_finite(), iv.hi.is_finite()) {
                (false, false) => BlockKind::O,
                (false, true) if iv.hi_closed => BlockKind::C,
                (false, true) => BlockKind::Co,
                (true, false) if iv.lo_closed => BlockKind::C,
                (true, false) => BlockKind::Oc,
                (true, true) => match (iv.lo_closed, iv.hi_closed) {
                    (true, true) => BlockKind::C,
                    (true, false) => BlockKind::Co,
                    (false, true) => BlockKind::Oc,
                    (false, false) => BlockKind::O,
                },
            };
            ((p, Block { kind, a: iv.lo, b: iv.hi }), m)
        })
        .collect()
}

/// Block barcode of `L_*(f)` from an extended barcode. An `ExtMinus` interval in degree
/// `q` contributes both `(a_i, a_j)_BL` in degree `q − 1` and `[a_j, a_i]_BL` in degree `q`.
/// Blocks that tied critical values make empty are dropped.
pub fn ep_to_blocks(e: &ExtendedBarcode) -> Result<BlockBarcode, BlockError> {
    e.check()?;
    let mut out = BlockBarcode::new();
    for (&(p, iv), m) in e.bars.iter() {
        let (ai, aj) = (e.value(iv.i), e.value(iv.j));
        let shifted = || {
            p.checked_sub(1).ok_or_else(|| BlockError::MalformedBlock(format!("{iv} in degree 0 has no lower partner")))
        };
        match iv.kind {
            EpType::Ord => {
                if let Ok(b) = Block::new(BlockKind::Co, ai, aj) {
                    out.insert((p, b), m);
                }
            }
            EpType::Rel => {
                let q = shifted()?;
                if let Ok(b) = Block::new(BlockKind::Oc, ai, aj) {
                    out.insert((q, b), m);
                }
            }
            EpType::ExtPlus => out.insert((p, Block::new(BlockKind::C, ai, aj)?), m),
            EpType::ExtMinus => {
                let q = shifted()?;
                if let Ok(b) = Block::new(BlockKind::O, ai, aj) {
                    out.insert((q, b), m);
                    out.insert((p, Block::new(BlockKind::C, aj, ai)?), m);
                }
            }
        }
    }
    Ok(out)
}

/// Block barcode of the levelset persistence of `(k, f)`; ties are broken by vertex id.
pub fn levelset_blocks(k: &SimplicialComplex, f: &VertexFunction) -> Result<BlockBarcode, BlockError> {
    ep_to_blocks(&extended_barcode_all(k, f, Ties::BreakByIndex)?)
}

/// Least `ε` with `K_B ~_{2ε} 0`.
pub fn vanish_eps(b: &Block) -> f64 {
    match b.kind {
        BlockKind::Co | BlockKind::Oc => (b.b - b.a) / 2.0,
        BlockKind::O => (b.b - b.a) / 4.0,
        BlockKind::C => f64::INFINITY,
    }
}

/// Endpoint gap: 0 for equal ends (including the same infinity), else `|x − y|`.
pub(crate) fn gap(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x - y).abs()
    }
}

/// Least `ε` with `K_{B1} ~_ε K_{B2}`.
pub fn interleave_eps(b1: &Block, b2: &Block) -> f64 {
    let both_vanish = vanish_eps(b1).max(vanish_eps(b2));
    if b1.kind == b2.kind {
        gap(b1.a, b2.a).max(gap(b1.b, b2.b)).min(both_vanish)
    } else {
        both_vanish
    }
}

fn expanded(bc: &BlockBarcode, degree: usize) -> Vec<Block> {
    bc.expanded().filter(|(p, _)| *p == degree).map(|(_, b)| *b).collect()
}

/// Bottleneck distance between the degree-`degree` parts. Unmatched blocks cost [`vanish_eps`].
pub fn bottleneck_blocks(b1: &BlockBarcode, b2: &BlockBarcode, degree: usize) -> f64 {
    let (x, y) = (expanded(b1, degree), expanded(b2, degree));
    bottleneck(&x, &y, interleave_eps, vanish_eps, vanish_eps)
}

/// An equivalence class of the degree-linking quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiClass {
    /// `(a, b)_BL` in degree `degree` with `[b, a]_BL` in degree `degree + 1`.
    Pair { degree: usize, o: Block, c2: Block, multiplicity: usize },
    Single { degree: usize, block: Block, multiplicity: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiDiagnostic {
    pub degree: usize,
    pub block: Block,
    pub unpaired: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhiQuotient {
    pub classes: Vec<PhiClass>,
    pub diagnostics: Vec<PhiDiagnostic>,
}

/// Pairs o blocks with their c2 partners one degree up. Leftover o blocks and strict c2
/// blocks (`a > b`, degree ≥ 1) are reported as diagnostics and kept as singletons.
pub fn phi_bijection(bc: &BlockBarcode) -> PhiQuotient {
    let mut out = PhiQuotient::default();
    let mut used = BlockBarcode::new();
    for (&(p, blk), m) in bc.iter() {
        if blk.kind != BlockKind::O || !blk.a.is_finite() || !blk.b.is_finite() {
            continue;
        }
        let partner = Block { kind: BlockKind::C, a: blk.b, b: blk.a };
        let k = m.min(bc.count(&(p + 1, partner)));
        if k > 0 {
            out.classes.push(PhiClass::Pair { degree: p, o: blk, c2: partner, multiplicity: k });
            used.insert((p, blk), k);
            used.insert((p + 1, partner), k);
        }
    }
    for (&(p, blk), m) in bc.iter() {
        let rest = m - used.count(&(p, blk));
        if rest == 0 {
            continue;
        }
        out.classes.push(PhiClass::Single { degree: p, block: blk, multiplicity: rest });
        let candidate = blk.kind == BlockKind::O || (blk.is_c2() && blk.a > blk.b && p >= 1);
        if candidate {
            out.diagnostics.push(PhiDiagnostic { degree: p, block: blk, unpaired: rest });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::{EpInterval, Interval};

    fn lzz(items: &[(usize, Interval)]) -> Barcode {
        let mut b = Barcode::new(crate::persistence::Flavor::Lzz);
        for &x in items {
            b.bars.insert(x, 1);
        }
        b
    }

    #[test]
    fn lzz_kinds() {
        let b = lzz_to_blocks(&lzz(&[(0, Interval::closed(-1.0, 1.0)), (0, Interval::open(-1.0, 1.0))]));
        let got: Vec<(usize, Block)> = b.expanded().copied().collect();
        assert_eq!(got, vec![(0, Block::o(-1.0, 1.0)), (0, Block::c(-1.0, 1.0))]);
        assert_eq!(Block::c(-1.0, 1.0).subkind(), Some(CSubkind::C1));
        assert_eq!(Block::c(1.0, 1.0).subkind(), Some(CSubkind::C2));
        assert!(lzz_to_blocks(&lzz(&[])).is_empty());
        let inf = lzz_to_blocks(&lzz(&[(0, Interval::closed_open(f64::NEG_INFINITY, 2.0))]));
        assert_eq!(inf.expanded().next().unwrap().1.kind, BlockKind::Co);
    }

    #[test]
    fn validation() {
        assert!(Block::new(BlockKind::O, 1.0, 1.0).is_err());
        assert!(Block::new(BlockKind::C, 2.0, 1.0).is_ok());
        assert!(Block::new(BlockKind::C, f64::INFINITY, 1.0).is_err());
        assert!(Block::new(BlockKind::Co, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn eps_values() {
        assert_eq!(vanish_eps(&Block::o(0.0, 4.0)), 1.0);
        assert_eq!(vanish_eps(&Block::co(0.0, 2.0)), 1.0);
        assert_eq!(vanish_eps(&Block::c(0.0, 1.0)), f64::INFINITY);
        assert_eq!(interleave_eps(&Block::co(0.0, 2.0), &Block::co(0.0, 2.0)), 0.0);
        assert_eq!(interleave_eps(&Block::co(0.0, 2.0), &Block::co(0.5, 2.5)), 0.5);
        assert_eq!(interleave_eps(&Block::c(0.0, 1.0), &Block::o(0.0, 1.0)), f64::INFINITY);
        // far apart but short: cheaper to let both vanish
        assert_eq!(interleave_eps(&Block::co(0.0, 1.0), &Block::co(10.0, 11.0)), 0.5);
        let inf = Block::co(f64::NEG_INFINITY, 1.0);
        assert_eq!(interleave_eps(&inf, &Block::co(f64::NEG_INFINITY, 1.5)), 0.5);
        assert_eq!(interleave_eps(&inf, &Block::co(0.0, 1.0)), f64::INFINITY);
    }

    #[test]
    fn bottleneck_examples() {
        let b: BlockBarcode = [((0, Block::co(0.0, 2.0)), 1)].into_iter().collect();
        assert_eq!(bottleneck_blocks(&b, &b, 0), 0.0);
        assert_eq!(bottleneck_blocks(&b, &BlockBarcode::new(), 0), 1.0);
        assert_eq!(bottleneck_blocks(&b, &BlockBarcode::new(), 1), 0.0);
    }

    fn circle_ep() -> ExtendedBarcode {
        let mut e = ExtendedBarcode::new(vec![-1.0, 0.0, 0.0001, 1.0]);
        e.bars.insert((0, EpInterval { kind: EpType::ExtPlus, i: 1, j: 4 }), 1);
        e.bars.insert((1, EpInterval { kind: EpType::ExtMinus, i: 1, j: 4 }), 1);
        e
    }

    #[test]
    fn circle_phi() {
        let b = ep_to_blocks(&circle_ep()).unwrap();
        let q = phi_bijection(&b);
        assert!(q.diagnostics.is_empty());
        assert!(q.classes.contains(&PhiClass::Pair {
            degree: 0,
            o: Block::o(-1.0, 1.0),
            c2: Block::c(1.0, -1.0),
            multiplicity: 1
        }));
        assert_eq!(q.classes.len(), 2);
    }

    #[test]
    fn phi_edge_cases() {
        let only_c: BlockBarcode = [((0, Block::c(0.0, 1.0)), 1)].into_iter().collect();
        let q = phi_bijection(&only_c);
        assert!(q.diagnostics.is_empty());
        assert_eq!(q.classes, vec![PhiClass::Single { degree: 0, block: Block::c(0.0, 1.0), multiplicity: 1 }]);
        let uneven: BlockBarcode =
            [((0, Block::o(0.0, 1.0)), 2), ((1, Block::c(1.0, 0.0)), 1)].into_iter().collect();
        let q = phi_bijection(&uneven);
        assert_eq!(q.classes.iter().filter(|c| matches!(c, PhiClass::Pair { .. })).count(), 1);
        assert_eq!(q.diagnostics, vec![PhiDiagnostic { degree: 0, block: Block::o(0.0, 1.0), unpaired: 1 }]);
    }
}

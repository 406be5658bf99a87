//! JSON documents read and written by the CLI.

use serde::{Deserialize, Serialize};
use tda_core::blocks::{Block, BlockBarcode, BlockKind};
use tda_core::complex::{build_complex, SimplicialComplex, VertexFunction};
use tda_core::persistence::{Barcode, EpInterval, EpType, ExtendedBarcode, Flavor, Interval};
use tda_core::quiver::Arrow;
use tda_core::strip::{Face, StripDiagram, StripPoint};

use crate::CliError;

/// Extended reals as JSON numbers, with `"inf"` and `"-inf"` for the infinities.
mod ext_real {
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum Raw {
        Num(f64),
        Str(String),
    }

    pub fn to_f64<E: Error>(raw: Raw) -> Result<f64, E> {
        match raw {
            Raw::Num(x) => Ok(x),
            Raw::Str(s) => match s.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(E::custom(format!("expected a number, \"inf\" or \"-inf\", found \"{other}\""))),
            },
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_infinite() {
            s.serialize_str(if *x > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*x)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        to_f64(Raw::deserialize(d)?)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
            struct W(f64);
            impl serde::Serialize for W {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    super::serialize(&self.0, s)
                }
            }
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for &x in xs {
                seq.serialize_element(&W(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Vec::<Raw>::deserialize(d)?.into_iter().map(to_f64).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, alias = "coordinates", skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrowTag {
    Forward,
    Backward,
}

/// A complex with vertex values or coordinates. Zigzag input additionally lists the
/// spaces (as simplex lists) and the arrows between consecutive spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub simplices: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spaces: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<ArrowTag>>,
}

impl ComplexFile {
    fn check_ids(&self) -> Result<(), CliError> {
        let mut ids: Vec<u32> = self.vertices.iter().map(|v| v.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliError::Parse(format!("vertex id {} listed twice", w[0])));
        }
        let all = self.simplices.iter().chain(self.spaces.iter().flatten().flatten());
        for s in all {
            if let Some(v) = s.iter().find(|v| ids.binary_search(v).is_err()) {
                return Err(CliError::Parse(format!("simplex {s:?} uses unknown vertex {v}")));
            }
        }
        Ok(())
    }

    /// The complex spanned by the listed vertices and simplices.
    pub fn complex(&self) -> Result<SimplicialComplex, CliError> {
        self.check_ids()?;
        let mut tuples: Vec<Vec<u32>> = self.vertices.iter().map(|v| vec![v.id]).collect();
        tuples.extend(self.simplices.iter().cloned());
        if tuples.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        build_complex(&tuples).map_err(|e| CliError::Parse(e.to_string()))
    }

    fn table(&self, value: impl Fn(&VertexEntry) -> Result<f64, CliError>) -> Result<VertexFunction, CliError> {
        let len = self.vertices.iter().map(|v| v.id as usize + 1).max().unwrap_or(0);
        let mut values = vec![f64::NAN; len];
        for v in &self.vertices {
            let x = value(v)?;
            if !x.is_finite() {
                return Err(CliError::Precondition(format!("vertex {} has non-finite value {x}", v.id)));
            }
            values[v.id as usize] = x;
        }
        Ok(VertexFunction::new(values))
    }

    pub fn function(&self) -> Result<VertexFunction, CliError> {
        self.table(|v| v.value.ok_or_else(|| CliError::Precondition(format!("vertex {} has no value", v.id))))
    }

    /// Coordinates as `(dimension, vertex id → point)`.
    pub fn coordinates(&self) -> Result<(usize, Vec<(u32, Vec<f64>)>), CliError> {
        let mut dim = None;
        let mut out = Vec::new();
        for v in &self.vertices {
            let c = v.coords.clone().ok_or_else(|| CliError::Precondition(format!("vertex {} has no coordinates", v.id)))?;
            match dim {
                None => dim = Some(c.len()),
                Some(d) if d != c.len() => {
                    return Err(CliError::Precondition(format!(
                        "vertex {} has {} coordinates, expected {d}",
                        v.id,
                        c.len()
                    )))
                }
                _ => {}
            }
            out.push((v.id, c));
        }
        Ok((dim.unwrap_or(0), out))
    }

    pub fn height(&self, u: &[f64]) -> Result<VertexFunction, CliError> {
        self.table(|v| {
            let c = v.coords.as_ref().ok_or_else(|| CliError::Precondition(format!("vertex {} has no coordinates", v.id)))?;
            Ok(c.iter().zip(u).map(|(a, b)| a * b).sum())
        })
    }

    pub fn zigzag(&self) -> Result<(Vec<SimplicialComplex>, Vec<Arrow>), CliError> {
        self.check_ids()?;
        let (Some(spaces), Some(arrows)) = (&self.spaces, &self.arrows) else {
            return Err(CliError::Precondition("zigzag mode needs \"spaces\" and \"arrows\"".into()));
        };
        let spaces = spaces
            .iter()
            .map(|s| {
                if s.is_empty() {
                    Ok(SimplicialComplex::empty())
                } else {
                    build_complex(s).map_err(|e| CliError::Parse(e.to_string()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arrows = arrows
            .iter()
            .map(|a| match a {
                ArrowTag::Forward => Arrow::Forward,
                ArrowTag::Backward => Arrow::Backward,
            })
            .collect();
        Ok((spaces, arrows))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FileFlavor {
    Ordinary,
    Extended,
    Lzz,
    Zigzag,
    Blocks,
    Strip,
}

impl FileFlavor {
    pub fn name(self) -> &'static str {
        match self {
            FileFlavor::Ordinary => "ordinary",
            FileFlavor::Extended => "extended",
            FileFlavor::Lzz => "lzz",
            FileFlavor::Zigzag => "zigzag",
            FileFlavor::Blocks => "blocks",
            FileFlavor::Strip => "strip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Entry {
    pub degree: i64,
    #[serde(with = "ext_real")]
    pub lo: f64,
    #[serde(with = "ext_real")]
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Critical-value indices of an extended interval's ends.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub birth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub death: Option<usize>,
    pub mult: usize,
}

impl Entry {
    fn plain(degree: i64, lo: f64, hi: f64, lo_closed: bool, hi_closed: bool, mult: usize) -> Self {
        Entry { degree, lo, hi, lo_closed, hi_closed, kind: None, birth: None, death: None, mult }
    }

    fn degree(&self) -> Result<usize, CliError> {
        usize::try_from(self.degree).map_err(|_| CliError::Parse(format!("negative degree {}", self.degree)))
    }

    fn tag(&self) -> Result<&str, CliError> {
        self.kind.as_deref().ok_or_else(|| CliError::Parse("entry is missing its \"type\"".into()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BarcodeFile {
    pub flavor: FileFlavor,
    #[serde(default, with = "ext_real::vec")]
    pub critical_values: Vec<f64>,
    pub entries: Vec<Entry>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

impl BarcodeFile {
    pub fn from_barcode(bc: &Barcode, critical_values: Vec<f64>) -> Self {
        let flavor = match bc.flavor {
            Flavor::Ordinary => FileFlavor::Ordinary,
            Flavor::Extended => FileFlavor::Extended,
            Flavor::Lzz => FileFlavor::Lzz,
            Flavor::Zigzag => FileFlavor::Zigzag,
        };
        let entries = bc
            .bars
            .iter()
            .map(|(&(p, iv), m)| Entry::plain(p as i64, iv.lo, iv.hi, iv.lo_closed, iv.hi_closed, m))
            .collect();
        BarcodeFile { flavor, critical_values, entries }
    }

    pub fn to_barcode(&self) -> Result<Barcode, CliError> {
        let flavor = match self.flavor {
            FileFlavor::Ordinary => Flavor::Ordinary,
            FileFlavor::Lzz => Flavor::Lzz,
            FileFlavor::Zigzag => Flavor::Zigzag,
            other => return Err(CliError::Unsupported(format!("{} file is not an interval barcode", other.name()))),
        };
        let mut bc = Barcode::new(flavor);
        for e in &self.entries {
            let iv = Interval::new(e.lo, e.hi, e.lo_closed, e.hi_closed).map_err(|err| bad(err.to_string()))?;
            bc.bars.insert((e.degree()?, iv), e.mult);
        }
        Ok(bc)
    }

    pub fn from_extended(e: &ExtendedBarcode) -> Self {
        let entries = e
            .bars
            .iter()
            .map(|(&(p, iv), m)| Entry {
                degree: p as i64,
                lo: e.value(iv.i),
                hi: e.value(iv.j),
                lo_closed: true,
                hi_closed: false,
                kind: Some(ep_tag(iv.kind).into()),
                birth: Some(iv.i),
                death: Some(iv.j),
                mult: m,
            })
            .collect();
        BarcodeFile { flavor: FileFlavor::Extended, critical_values: e.critical_values.clone(), entries }
    }

    pub fn to_extended(&self) -> Result<ExtendedBarcode, CliError> {
        self.expect(FileFlavor::Extended)?;
        let mut out = ExtendedBarcode::new(self.critical_values.clone());
        let n = self.critical_values.len();
        let index = |given: Option<usize>, x: f64| -> Result<usize, CliError> {
            match given {
                Some(k) if k <= n + 1 && out.value(k) == x => Ok(k),
                Some(k) => Err(bad(format!("index {k} does not carry the value {x}"))),
                None => {
                    let hits: Vec<usize> = (0..=n + 1).filter(|&k| out.value(k) == x).collect();
                    match hits[..] {
                        [k] => Ok(k),
                        [] => Err(bad(format!("{x} is not a critical value"))),
                        _ => Err(bad(format!("{x} is a repeated critical value, give \"birth\"/\"death\""))),
                    }
                }
            }
        };
        let mut bars = Vec::new();
        for e in &self.entries {
            let kind = match e.tag()? {
                "Ord" => EpType::Ord,
                "Rel" => EpType::Rel,
                "ExtPlus" => EpType::ExtPlus,
                "ExtMinus" => EpType::ExtMinus,
                other => return Err(bad(format!("unknown extended type \"{other}\""))),
            };
            let iv = EpInterval::new(kind, index(e.birth, e.lo)?, index(e.death, e.hi)?)
                .map_err(|err| bad(err.to_string()))?;
            bars.push(((e.degree()?, iv), e.mult));
        }
        out.bars.extend(bars);
        out.check().map_err(|err| bad(err.to_string()))?;
        Ok(out)
    }

    pub fn from_blocks(b: &BlockBarcode, critical_values: Vec<f64>) -> Self {
        let entries = b
            .iter()
            .map(|(&(p, blk), m)| {
                let (lc, hc) = match blk.kind {
                    BlockKind::O => (false, false),
                    BlockKind::Co => (true, false),
                    BlockKind::Oc => (false, true),
                    BlockKind::C => (true, true),
                };
                Entry { kind: Some(blk.kind.tag().into()), ..Entry::plain(p as i64, blk.a, blk.b, lc, hc, m) }
            })
            .collect();
        BarcodeFile { flavor: FileFlavor::Blocks, critical_values, entries }
    }

    pub fn to_blocks(&self) -> Result<BlockBarcode, CliError> {
        self.expect(FileFlavor::Blocks)?;
        let mut out = BlockBarcode::new();
        for e in &self.entries {
            let kind = match e.tag()? {
                "o" => BlockKind::O,
                "co" => BlockKind::Co,
                "oc" => BlockKind::Oc,
                "c" => BlockKind::C,
                other => return Err(bad(format!("unknown block type \"{other}\""))),
            };
            let blk = Block::new(kind, e.lo, e.hi).map_err(|err| bad(err.to_string()))?;
            out.insert((e.degree()?, blk), e.mult);
        }
        Ok(out)
    }

    pub fn from_strip(d: &StripDiagram, critical_values: Vec<f64>) -> Self {
        let entries = d
            .iter()
            .map(|(m, mult)| {
                let (lc, hc) = match m.face {
                    Face::S => (true, true),
                    Face::N => (false, false),
                    Face::E => (false, true),
                    Face::W => (true, false),
                };
                Entry { kind: Some(m.face.tag().into()), ..Entry::plain(m.degree, m.a, m.b, lc, hc, mult) }
            })
            .collect();
        BarcodeFile { flavor: FileFlavor::Strip, critical_values, entries }
    }

    pub fn to_strip(&self) -> Result<StripDiagram, CliError> {
        self.expect(FileFlavor::Strip)?;
        let mut out = StripDiagram::new();
        for e in &self.entries {
            let face = match e.tag()? {
                "N" => Face::N,
                "E" => Face::E,
                "S" => Face::S,
                "W" => Face::W,
                other => return Err(bad(format!("unknown strip face \"{other}\""))),
            };
            let m = StripPoint::new(e.degree, face, e.lo, e.hi).map_err(|err| bad(err.to_string()))?;
            out.insert(m, e.mult);
        }
        Ok(out)
    }

    fn expect(&self, flavor: FileFlavor) -> Result<(), CliError> {
        if self.flavor == flavor {
            Ok(())
        } else {
            Err(CliError::Unsupported(format!("expected a {} file, got {}", flavor.name(), self.flavor.name())))
        }
    }

    /// Parses the entries for their flavor without converting the file itself.
    pub fn validate(&self) -> Result<(), CliError> {
        match self.flavor {
            FileFlavor::Extended => self.to_extended().map(drop),
            FileFlavor::Blocks => self.to_blocks().map(drop),
            FileFlavor::Strip => self.to_strip().map(drop),
            _ => self.to_barcode().map(drop),
        }
    }

    pub fn retain_degree(&mut self, degree: Option<usize>) {
        if let Some(p) = degree {
            self.entries.retain(|e| e.degree == p as i64);
        }
    }
}

fn ep_tag(kind: EpType) -> &'static str {
    match kind {
        EpType::Ord => "Ord",
        EpType::Rel => "Rel",
        EpType::ExtPlus => "ExtPlus",
        EpType::ExtMinus => "ExtMinus",
    }
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    // serde_json appends "at line L column C" to its messages
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

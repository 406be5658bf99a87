use rayon::prelude::*;
use serde::Serialize;
use tda_core::blocks::{bottleneck_blocks, ep_to_blocks, lzz_to_blocks, BlockBarcode};
use tda_core::persistence::{
    extended_barcode_all, lzz_barcode_graph_all, ordinary_barcode, zigzag_barcode, Barcode, Flavor, PersistenceError,
    Ties, ZigzagDiagram,
};
use tda_core::pyramid::{ep_to_lzz, lzz_to_ep, PyramidError};
use tda_core::strip::{bottleneck_strip, ep_barcode_to_strip, lzz_to_strip, strip_to_lzz, StripDiagram, StripError};

use crate::format::{emit_json, BarcodeFile, ComplexFile, FileFlavor};
use crate::{CliError, Mode};

impl From<PersistenceError> for CliError {
    fn from(e: PersistenceError) -> Self {
        match e {
            PersistenceError::MalformedInterval(_) | PersistenceError::MalformedEPInterval(_) => {
                CliError::Parse(e.to_string())
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<PyramidError> for CliError {
    fn from(e: PyramidError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<StripError> for CliError {
    fn from(e: StripError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<tda_core::blocks::BlockError> for CliError {
    fn from(e: tda_core::blocks::BlockError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

fn ties(perturb: bool) -> Ties {
    if perturb {
        Ties::BreakByIndex
    } else {
        Ties::Reject
    }
}

pub struct BarcodeOptions {
    pub mode: Mode,
    pub degree: Option<usize>,
    pub perturb: bool,
    pub via_pyramid: bool,
}

pub fn barcode(input: &ComplexFile, opts: &BarcodeOptions) -> Result<BarcodeFile, CliError> {
    if opts.mode == Mode::Zigzag {
        let (spaces, arrows) = input.zigzag()?;
        let top = spaces.iter().filter_map(|s| s.dim()).max().unwrap_or(0);
        let d = ZigzagDiagram::of_complexes(spaces, arrows)?;
        let degrees: Vec<usize> = (0..=top).filter(|p| opts.degree.is_none_or(|q| q == *p)).collect();
        let parts = degrees.par_iter().map(|&p| zigzag_barcode(&d, p)).collect::<Result<Vec<_>, _>>()?;
        let mut bc = Barcode::new(Flavor::Zigzag);
        parts.iter().for_each(|b| bc.merge(b));
        return Ok(BarcodeFile::from_barcode(&bc, Vec::new()));
    }
    let k = input.complex()?;
    let f = input.function()?;
    let cv = f.critical_values(&k);
    let dim = k.dim().unwrap_or(0);
    let mut out = match opts.mode {
        Mode::Ordinary => {
            let parts = (0..=dim).into_par_iter().map(|p| ordinary_barcode(&k, &f, p)).collect::<Result<Vec<_>, _>>()?;
            let mut bc = Barcode::new(Flavor::Ordinary);
            parts.iter().for_each(|b| bc.merge(b));
            BarcodeFile::from_barcode(&bc, cv)
        }
        Mode::Extended => BarcodeFile::from_extended(&extended_barcode_all(&k, &f, ties(opts.perturb))?),
        Mode::Lzz if opts.via_pyramid => {
            let e = extended_barcode_all(&k, &f, ties(opts.perturb))?;
            BarcodeFile::from_barcode(&ep_to_lzz(&e)?, cv)
        }
        Mode::Lzz if dim > 1 => {
            return Err(CliError::Precondition(format!(
                "levelset zigzag of a {dim}-dimensional complex needs --via-pyramid"
            )))
        }
        Mode::Lzz => BarcodeFile::from_barcode(&lzz_barcode_graph_all(&k, &f)?, cv),
        Mode::Zigzag => unreachable!("handled above"),
    };
    out.retain_degree(opts.degree);
    Ok(out)
}

pub fn convert(input: &BarcodeFile, to: FileFlavor) -> Result<BarcodeFile, CliError> {
    use FileFlavor::*;
    input.validate()?;
    let cv = input.critical_values.clone();
    let unsupported =
        || CliError::Unsupported(format!("no conversion from {} to {}", input.flavor.name(), to.name()));
    Ok(match (input.flavor, to) {
        (a, b) if a == b => input.clone(),
        (Extended, Lzz) => BarcodeFile::from_barcode(&ep_to_lzz(&input.to_extended()?)?, cv),
        (Extended, Blocks) => BarcodeFile::from_blocks(&ep_to_blocks(&input.to_extended()?)?, cv),
        (Extended, Strip) => BarcodeFile::from_strip(&ep_barcode_to_strip(&input.to_extended()?)?, cv),
        (Lzz, Extended) => BarcodeFile::from_extended(&lzz_to_ep(&input.to_barcode()?, &cv)?),
        (Lzz, Blocks) => BarcodeFile::from_blocks(&lzz_to_blocks(&input.to_barcode()?), cv),
        (Lzz, Strip) => BarcodeFile::from_strip(&lzz_to_strip(&input.to_barcode()?)?, cv),
        (Strip, Lzz) => BarcodeFile::from_barcode(&strip_to_lzz(&input.to_strip()?)?, cv),
        (Strip, Extended) => BarcodeFile::from_extended(&lzz_to_ep(&strip_to_lzz(&input.to_strip()?)?, &cv)?),
        _ => return Err(unsupported()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DistanceKind {
    Blocks,
    Strip,
}

fn as_blocks(f: &BarcodeFile) -> Result<BlockBarcode, CliError> {
    match f.flavor {
        FileFlavor::Blocks => f.to_blocks(),
        FileFlavor::Extended => Ok(ep_to_blocks(&f.to_extended()?)?),
        FileFlavor::Lzz => Ok(lzz_to_blocks(&f.to_barcode()?)),
        other => Err(CliError::Unsupported(format!("{} files have no block barcode", other.name()))),
    }
}

fn as_strip(f: &BarcodeFile) -> Result<StripDiagram, CliError> {
    match f.flavor {
        FileFlavor::Strip => f.to_strip(),
        FileFlavor::Extended => Ok(ep_barcode_to_strip(&f.to_extended()?)?),
        FileFlavor::Lzz => Ok(lzz_to_strip(&f.to_barcode()?)?),
        other => Err(CliError::Unsupported(format!("{} files have no strip diagram", other.name()))),
    }
}

/// Bottleneck distance. Without `degree`, the block distance is the maximum over degrees.
pub fn distance(a: &BarcodeFile, b: &BarcodeFile, kind: DistanceKind, degree: Option<usize>) -> Result<f64, CliError> {
    if a.flavor != b.flavor {
        return Err(CliError::Unsupported(format!(
            "flavor mismatch: {} vs {}",
            a.flavor.name(),
            b.flavor.name()
        )));
    }
    match kind {
        DistanceKind::Blocks => {
            let (x, y) = (as_blocks(a)?, as_blocks(b)?);
            let degrees: Vec<usize> = match degree {
                Some(p) => vec![p],
                None => {
                    let mut ds: Vec<usize> = x.iter().chain(y.iter()).map(|((p, _), _)| *p).collect();
                    ds.sort_unstable();
                    ds.dedup();
                    ds
                }
            };
            Ok(degrees.par_iter().map(|&p| bottleneck_blocks(&x, &y, p)).reduce(|| 0.0, f64::max))
        }
        DistanceKind::Strip => {
            if degree.is_some() {
                return Err(CliError::Unsupported(
                    "the strip distance matches across adjacent degrees and takes no --degree".into(),
                ));
            }
            Ok(bottleneck_strip(&as_strip(a)?, &as_strip(b)?))
        }
    }
}

/// `x` with 12 significant digits, `inf` for infinity.
pub fn format_distance(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let trim = |s: String| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..12).contains(&exp) {
        trim(format!("{:.*}", (11 - exp).max(0) as usize, x))
    } else {
        let s = format!("{:.11e}", x);
        let (mantissa, e) = s.split_once('e').expect("exponent present");
        format!("{}e{}", trim(mantissa.to_string()), e)
    }
}

#[derive(Debug, Serialize)]
pub struct Projection {
    pub direction: Vec<f64>,
    pub barcode: BarcodeFile,
}

#[derive(Debug, Serialize)]
pub struct ProjectionSet {
    pub projections: Vec<Projection>,
}

/// Directions from a count (evenly spaced angles in the plane, a Fibonacci lattice on the
/// sphere) or an explicit `x,y;x,y` list, normalized.
pub fn directions(list: &str, dim: usize) -> Result<Vec<Vec<f64>>, CliError> {
    if let Ok(count) = list.trim().parse::<usize>() {
        return match dim {
            2 => Ok((0..count)
                .map(|k| {
                    let t = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect()),
            3 => {
                let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
                Ok((0..count)
                    .map(|k| {
                        let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                        let r = (1.0 - z * z).sqrt();
                        let t = golden * k as f64;
                        vec![r * t.cos(), r * t.sin(), z]
                    })
                    .collect())
            }
            _ => Err(CliError::Precondition(format!("coordinates must be 2- or 3-dimensional, got {dim}"))),
        };
    }
    list.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|part| {
            let v: Vec<f64> = part
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Parse(format!("bad direction component \"{x}\""))))
                .collect::<Result<_, _>>()?;
            if v.len() != dim {
                return Err(CliError::Precondition(format!("direction {part} has {} components, expected {dim}", v.len())));
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm.is_finite() && norm > 0.0) {
                return Err(CliError::Precondition(format!("direction {part} cannot be normalized")));
            }
            Ok(v.iter().map(|x| x / norm).collect())
        })
        .collect()
}

pub fn project(input: &ComplexFile, list: &str, perturb: bool) -> Result<ProjectionSet, CliError> {
    let k = input.complex()?;
    let (dim, _) = input.coordinates()?;
    if !(dim == 2 || dim == 3) && !input.vertices.is_empty() {
        return Err(CliError::Precondition(format!("coordinates must be 2- or 3-dimensional, got {dim}")));
    }
    let dirs = directions(list, dim.max(2))?;
    let projections = dirs
        .into_par_iter()
        .map(|u| {
            let f = input.height(&u)?;
            let e = extended_barcode_all(&k, &f, ties(perturb))?;
            Ok(Projection { direction: u, barcode: BarcodeFile::from_extended(&e) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ProjectionSet { projections })
}

pub fn render_projection(p: &ProjectionSet) -> String {
    emit_json(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(format_distance(0.1), "0.1");
        assert_eq!(format_distance(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_distance(12345.678), "12345.678");
        assert_eq!(format_distance(f64::INFINITY), "inf");
        assert_eq!(format_distance(0.0), "0");
        assert_eq!(format_distance(2.5e-9), "2.5e-9");
    }

    #[test]
    fn direction_sets() {
        let d = directions("4", 2).unwrap();
        assert_eq!(d.len(), 4);
        assert!((d[1][1] - 1.0).abs() < 1e-12);
        assert!(directions("0", 2).unwrap().is_empty());
        let e = directions("3,4; 0,2", 2).unwrap();
        assert_eq!(e, vec![vec![0.6, 0.8], vec![0.0, 1.0]]);
        assert!(directions("1,0,0", 2).is_err());
        for u in directions("10", 3).unwrap() {
            assert!((u.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}

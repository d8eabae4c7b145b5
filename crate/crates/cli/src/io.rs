use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use umbilic_core::complexpoly::WeightedSymmetricProfile;
use umbilic_core::surfacegen::GridSpec;

use crate::Exit;

fn floats(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let xs = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number {p:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if xs.len() != n {
        return Err(format!(
            "expected {n} comma-separated values, got {}",
            xs.len()
        ));
    }
    Ok(xs)
}

pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = floats(s, 3)?;
    Ok([v[0], v[1], v[2]])
}

pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected nR,nTheta,Rmax".into());
    }
    let n_r = parts[0]
        .trim()
        .parse()
        .map_err(|_| format!("bad nR {:?}", parts[0]))?;
    let n_theta = parts[1]
        .trim()
        .parse()
        .map_err(|_| format!("bad nTheta {:?}", parts[1]))?;
    let r_max = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("bad Rmax {:?}", parts[2]))?;
    let g = GridSpec {
        n_r,
        n_theta,
        r_max,
    };
    g.validate().map_err(|e| e.to_string())?;
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degrees(pub Vec<usize>);

/// `5` or an inclusive range `3..8`.
pub fn parse_degrees(s: &str) -> Result<Degrees, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad degree {t:?}"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(format!("empty degree range {s}"));
            }
            Ok(Degrees((lo..=hi).collect()))
        }
        None => Ok(Degrees(vec![num(s)?])),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    Many(Vec<WeightedSymmetricProfile>),
    One(WeightedSymmetricProfile),
}

pub fn read_profiles(path: &Path) -> Result<Vec<WeightedSymmetricProfile>, Exit> {
    let text = fs::read_to_string(path).map_err(|e| Exit {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let parsed: OneOrMany = serde_json::from_str(&text).map_err(|e| Exit {
        code: 2,
        message: format!("{}: not a profile or list of profiles: {e}", path.display()),
    })?;
    Ok(match parsed {
        OneOrMany::Many(v) => v,
        OneOrMany::One(p) => vec![p],
    })
}

pub fn read_one_profile(path: &Path) -> Result<WeightedSymmetricProfile, Exit> {
    read_profiles(path)?.into_iter().next().ok_or_else(|| Exit {
        code: 2,
        message: format!("{}: no profile", path.display()),
    })
}

pub fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Exit> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Exit {
            code: 2,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable report");
    s.push('\n');
    s
}

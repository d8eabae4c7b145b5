//! Seeded batches: guarded sampling of constrained profiles, batch
//! verification and the sweep table.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::batch::{item_rng, par_map, seq_map};
use crate::complexpoly::{
    poly_from_profile, sample_constrained, RootFinder, WeightedSymmetricProfile,
};
use crate::error::{Error, Result};
use crate::umbilic::{verify, UmbilicReport, VerifyOptions};

/// Draws allowed per item before giving up on the circle guard.
pub const MAX_DRAWS: usize = 1000;

/// Float text with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// RNG stream for sample `index` of degree `degree`.
pub fn stream_id(degree: usize, index: u64) -> u64 {
    ((degree as u64) << 40) | index
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledProfile {
    pub sample: u64,
    /// Draws rejected by the guard before this one.
    pub resamples: usize,
    pub circle_gap: f64,
    pub profile: WeightedSymmetricProfile,
}

/// Sample `index` of the seeded family: redraws from the item's own stream
/// until every root is farther than `guard` from the unit circle.
pub fn sample_guarded(
    degree: usize,
    seed: u64,
    index: u64,
    guard: f64,
    finder: &RootFinder,
) -> Result<SampledProfile> {
    let mut rng = item_rng(seed, stream_id(degree, index));
    for resamples in 0..MAX_DRAWS {
        let profile = sample_constrained(degree, &mut rng)?;
        if let Ok(roots) = finder.solve(&poly_from_profile(&profile)) {
            if roots.circle_gap > guard {
                return Ok(SampledProfile {
                    sample: index,
                    resamples,
                    circle_gap: roots.circle_gap,
                    profile,
                });
            }
        }
    }
    Err(Error::SamplerExhausted {
        attempts: MAX_DRAWS,
    })
}

pub fn generate(
    degree: usize,
    count: u64,
    seed: u64,
    guard: f64,
    finder: &RootFinder,
) -> Result<Vec<SampledProfile>> {
    let ids: Vec<u64> = (0..count).collect();
    par_map(&ids, |&i| sample_guarded(degree, seed, i, guard, finder))
        .into_iter()
        .collect()
}

pub fn verify_batch(
    profiles: &[WeightedSymmetricProfile],
    opts: &VerifyOptions,
) -> Vec<Result<UmbilicReport>> {
    par_map(profiles, |p| verify(p, opts))
}

pub fn verify_batch_seq(
    profiles: &[WeightedSymmetricProfile],
    opts: &VerifyOptions,
) -> Vec<Result<UmbilicReport>> {
    seq_map(profiles, |p| verify(p, opts))
}

#[derive(Debug)]
pub struct SweepRow {
    pub degree: usize,
    pub sample: u64,
    pub resamples: usize,
    pub outcome: Result<UmbilicReport>,
    pub micros: u128,
}

impl SweepRow {
    pub fn is_violation(&self) -> bool {
        !matches!(&self.outcome, Ok(r) if r.all_ok())
    }
}

#[derive(Debug)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.is_violation()).count()
    }

    pub fn resampled(&self) -> usize {
        self.rows.iter().map(|r| r.resamples).sum()
    }

    pub fn errors(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }

    /// One row per sample in (degree, sample) order, then a `#` summary
    /// line. The timing column is opt-in because it is not reproducible.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut out = String::new();
        out.push_str("N,sample,K,K_arg,twice_I,identity_ok,hamburger_ok,main_bound_ok,min_GN,circle_gap,resamples,status");
        if timing {
            out.push_str(",micros");
        }
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{},{},", row.degree, row.sample);
            match &row.outcome {
                Ok(r) => {
                    let _ = write!(
                        out,
                        "{},{},{},{},{},{},{},{},{},ok",
                        r.k,
                        r.k_argument,
                        r.twice_index,
                        r.identity_ok,
                        r.hamburger_ok,
                        r.main_bound_ok,
                        fmt17(r.min_gn),
                        fmt17(r.circle_gap),
                        row.resamples
                    );
                }
                Err(e) => {
                    let msg = e.to_string().replace([',', '\n'], ";");
                    let _ = write!(out, ",,,,,,,,{},error: {msg}", row.resamples);
                }
            }
            if timing {
                let _ = write!(out, ",{}", row.micros);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "# rows={} violations={} errors={} resampled={}",
            self.rows.len(),
            self.violations(),
            self.errors(),
            self.resampled()
        );
        out
    }
}

/// Samples `count` guarded profiles per degree and verifies each.
pub fn run_sweep(degrees: &[usize], count: u64, seed: u64, opts: &VerifyOptions) -> Sweep {
    let items: Vec<(usize, u64)> = degrees
        .iter()
        .flat_map(|&n| (0..count).map(move |i| (n, i)))
        .collect();
    let finder = opts.root_finder();
    let rows = par_map(&items, |&(degree, sample)| {
        let start = Instant::now();
        let (resamples, outcome) = match sample_guarded(degree, seed, sample, opts.guard, &finder) {
            Ok(s) => (s.resamples, verify(&s.profile, opts)),
            Err(e) => (0, Err(e)),
        };
        SweepRow {
            degree,
            sample,
            resamples,
            outcome,
            micros: start.elapsed().as_micros(),
        }
    });
    Sweep { rows }
}

//! Phase unwrapping along closed sample loops.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest admissible phase jump between consecutive samples.
pub const MAX_PHASE_STEP: f64 = FRAC_PI_2;
/// Allowed distance of the unwrapped total (in turns) from an integer.
pub const INTEGER_SLACK: f64 = 0.25;

/// Outcome of unwrapping a loop that did not (yet) certify.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoopFailure {
    /// A sample is zero or non-finite.
    Zero { index: usize, modulus: f64 },
    /// Consecutive samples differ in phase by at least `MAX_PHASE_STEP`.
    Coarse { max_step: f64 },
    /// Unwrapped total is not close to an integer number of turns.
    NonInteger { turns: f64 },
}

/// Unwrapped phase total of a closed loop, in turns.
///
/// The loop is closed implicitly: the step from the last sample back to the
/// first is included.
pub fn loop_turns(samples: &[Complex64], zero_floor: f64) -> Result<(f64, f64), LoopFailure> {
    let n = samples.len();
    if n < 3 {
        return Err(LoopFailure::Coarse {
            max_step: f64::INFINITY,
        });
    }
    for (index, s) in samples.iter().enumerate() {
        let modulus = s.norm();
        if !modulus.is_finite() || modulus <= zero_floor {
            return Err(LoopFailure::Zero { index, modulus });
        }
    }
    let mut total = 0.0;
    let mut max_step: f64 = 0.0;
    for i in 0..n {
        let a = samples[i];
        let b = samples[(i + 1) % n];
        // arg(b / a) without dividing
        let step = (b * a.conj()).arg();
        max_step = max_step.max(step.abs());
        total += step;
    }
    Ok((total / TAU, max_step))
}

/// Integer winding of a closed loop, certified by step size and integrality.
pub fn certified_winding(samples: &[Complex64], zero_floor: f64) -> Result<i64, LoopFailure> {
    let (turns, max_step) = loop_turns(samples, zero_floor)?;
    if max_step >= MAX_PHASE_STEP {
        return Err(LoopFailure::Coarse { max_step });
    }
    let rounded = turns.round();
    if (turns - rounded).abs() > INTEGER_SLACK {
        return Err(LoopFailure::NonInteger { turns });
    }
    Ok(rounded as i64)
}

/// Winding of `f` around the circle of radius `radius`, doubling the sample
/// count from `start` until certification or until `cap` is exceeded.
pub fn adaptive_circle_winding<F>(
    f: F,
    radius: f64,
    start: usize,
    cap: usize,
    zero_floor: f64,
) -> Result<(i64, usize)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut n = start.max(8);
    loop {
        let samples = (0..n)
            .map(|j| f(Complex64::from_polar(radius, TAU * j as f64 / n as f64)))
            .collect::<Result<Vec<_>>>()?;
        match certified_winding(&samples, zero_floor) {
            Ok(w) => return Ok((w, n)),
            Err(LoopFailure::Zero { index, modulus }) => {
                return Err(Error::ZeroOnContour { index, modulus })
            }
            Err(failure) => {
                if n * 2 > cap {
                    return Err(Error::WindingNotCertified(format!(
                        "{failure:?} at {n} samples on radius {radius}"
                    )));
                }
                n *= 2;
            }
        }
    }
}

//! Finitely supported power series F = Σ A_{nm} ξⁿ ξ̄ᵐ of a section and the
//! coefficient form of the Lagrangian condition.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Coefficients A_{nm}; absent entries are zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "SeriesRepr", into = "SeriesRepr")]
pub struct SectionSeries {
    entries: BTreeMap<(usize, usize), Complex64>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    n: usize,
    m: usize,
    re: f64,
    im: f64,
}

impl From<SeriesRepr> for SectionSeries {
    fn from(repr: SeriesRepr) -> Self {
        let mut s = SectionSeries::new();
        for e in repr.entries {
            s.add(e.n, e.m, Complex64::new(e.re, e.im));
        }
        s
    }
}

impl From<SectionSeries> for SeriesRepr {
    fn from(s: SectionSeries) -> Self {
        SeriesRepr {
            entries: s
                .entries
                .into_iter()
                .map(|((n, m), a)| EntryRepr {
                    n,
                    m,
                    re: a.re,
                    im: a.im,
                })
                .collect(),
        }
    }
}

impl SectionSeries {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `value` to A_{nm}.
    pub fn add(&mut self, n: usize, m: usize, value: Complex64) {
        *self.entries.entry((n, m)).or_insert(ZERO) += value;
    }

    pub fn set(&mut self, n: usize, m: usize, value: Complex64) {
        self.entries.insert((n, m), value);
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.entries.get(&(n, m)).copied().unwrap_or(ZERO)
    }

    /// A_{nm} with negative indices read as zero.
    fn at(&self, n: i64, m: i64) -> Complex64 {
        if n < 0 || m < 0 {
            ZERO
        } else {
            self.get(n as usize, m as usize)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_total_degree(&self) -> usize {
        self.entries.keys().map(|(n, m)| n + m).max().unwrap_or(0)
    }

    pub fn eval(&self, xi: Complex64) -> Complex64 {
        let xb = xi.conj();
        self.entries
            .iter()
            .map(|(&(n, m), &a)| a * xi.powu(n as u32) * xb.powu(m as u32))
            .sum()
    }
}

/// One instantiated condition and its normalised defect
/// |lhs − rhs| / (1 + Σ|terms|).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionDefect {
    pub n: usize,
    pub m: usize,
    pub defect: f64,
}

/// Defects per family: the raw coefficient relations (6)–(8) and their
/// rearranged forms I–V.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub eq6: Vec<ConditionDefect>,
    pub eq7: Vec<ConditionDefect>,
    pub eq8: Vec<ConditionDefect>,
    pub cond_i: Vec<ConditionDefect>,
    pub cond_ii: Vec<ConditionDefect>,
    pub cond_iii: Vec<ConditionDefect>,
    pub cond_iv: Vec<ConditionDefect>,
    pub cond_v: Vec<ConditionDefect>,
    /// Condition V is only checked when the series carries A_{n0} entries.
    pub v_checked: bool,
    pub max_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ConditionReport {
    pub fn families(&self) -> [(&'static str, &[ConditionDefect]); 8] {
        [
            ("eq6", &self.eq6),
            ("eq7", &self.eq7),
            ("eq8", &self.eq8),
            ("I", &self.cond_i),
            ("II", &self.cond_ii),
            ("III", &self.cond_iii),
            ("IV", &self.cond_iv),
            ("V", &self.cond_v),
        ]
    }

    pub fn family_max(defects: &[ConditionDefect]) -> f64 {
        defects.iter().map(|d| d.defect).fold(0.0, f64::max)
    }
}

fn defect(lhs: &[(f64, Complex64)], rhs: &[(f64, Complex64)]) -> f64 {
    let side = |terms: &[(f64, Complex64)]| terms.iter().map(|&(w, a)| a * w).sum::<Complex64>();
    let scale: f64 = lhs.iter().chain(rhs).map(|&(w, a)| (a * w).norm()).sum();
    (side(lhs) - side(rhs)).norm() / (1.0 + scale)
}

/// Evaluates every instantiation of the coefficient conditions whose indices
/// are non-negative and lie within total degree `max_total_degree + 2`.
pub fn check_series_conditions(series: &SectionSeries, tol: f64) -> ConditionReport {
    let mut report = ConditionReport {
        tolerance: tol,
        ..Default::default()
    };
    if series.is_empty() {
        report.pass = true;
        return report;
    }
    let b = series.max_total_degree() as i64 + 2;
    let a = |n: i64, m: i64| series.at(n, m);
    let conj = |n: i64, m: i64| series.at(n, m).conj();
    let f = |x: i64| x as f64;
    let push = |list: &mut Vec<ConditionDefect>, n: i64, m: i64, d: f64| {
        list.push(ConditionDefect {
            n: n as usize,
            m: m as usize,
            defect: d,
        })
    };

    push(
        &mut report.eq6,
        1,
        0,
        defect(&[(1.0, a(1, 0))], &[(1.0, conj(1, 0))]),
    );
    for n in 1..=b {
        // (n+1)A_{n+1,0} = conj A_{1n} − 2 conj A_{0,n−1}
        let d = defect(
            &[(f(n + 1), a(n + 1, 0))],
            &[(1.0, conj(1, n)), (-2.0, conj(0, n - 1))],
        );
        push(&mut report.eq7, n, 0, d);
    }
    for n in 1..=b {
        for m in 1..=n {
            let d = defect(
                &[(f(n + 1), a(n + 1, m)), (f(n - 2), a(n, m - 1))],
                &[(f(m + 1), conj(m + 1, n)), (f(m - 2), conj(m, n - 1))],
            );
            push(&mut report.eq8, n, m, d);
        }
    }
    for n in 1..=b {
        push(
            &mut report.cond_i,
            n,
            n - 1,
            defect(&[(1.0, a(n, n - 1))], &[(1.0, conj(n, n - 1))]),
        );
    }
    for n in 2..=b {
        let d = defect(
            &[
                (f(2 * (n - 2)), a(0, n - 2)),
                (f(-2 * (n - 1)), a(1, n - 1)),
                (f(2 * n), a(2, n)),
            ],
            &[(f(n * (n + 1)), conj(n + 1, 1))],
        );
        push(&mut report.cond_ii, n, 0, d);
    }
    for n in 0..=b {
        let d = defect(
            &[(f(n + 2), a(n + 2, 2)), (f(n - 1), a(n + 1, 1))],
            &[(3.0, conj(3, n + 1))],
        );
        push(&mut report.cond_iii, n, 0, d);
    }
    for n in 0..=b {
        for m in 0..=n {
            let d = defect(
                &[(f(n + 2), a(n + 2, m + 1)), (f(n - 1), a(n + 1, m))],
                &[(f(m + 2), conj(m + 2, n + 1)), (f(m - 1), conj(m + 1, n))],
            );
            push(&mut report.cond_iv, n, m, d);
        }
    }
    report.v_checked = series.iter().any(|((n, m), _)| m == 0 && n >= 1);
    if report.v_checked {
        for n in 2..=b {
            let d = defect(
                &[(f(n), a(n, 0))],
                &[(1.0, conj(1, n - 1)), (-2.0, conj(0, n - 2))],
            );
            push(&mut report.cond_v, n, 0, d);
        }
    }

    report.max_defect = report
        .families()
        .iter()
        .map(|(_, d)| ConditionReport::family_max(d))
        .fold(0.0, f64::max);
    report.pass = report.max_defect <= tol;
    report
}

/// Trigonometric polynomial Σ c_n e^{2inθ}.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    pub coeffs: Vec<Complex64>,
}

impl TrigPolynomial {
    pub fn eval(&self, theta: f64) -> Complex64 {
        let step = Complex64::from_polar(1.0, 2.0 * theta);
        self.coeffs
            .iter()
            .rev()
            .fold(ZERO, |acc, &c| acc * step + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == 0.0)
    }

    /// Upper bound on sup_θ |G(θ)|.
    pub fn sup_bound(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Upper bound on sup_θ |G′(θ)|.
    pub fn lipschitz_bound(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| 2.0 * n as f64 * c.norm())
            .sum()
    }
}

/// G_k(θ) = Σ_{n=0}^{k} (k−n+1) A_{n,k−n+1} e^{2inθ}, the R^k layer of ∂̄F.
pub fn fourier_g(series: &SectionSeries, k: usize) -> TrigPolynomial {
    TrigPolynomial {
        coeffs: (0..=k)
            .map(|n| series.get(n, k - n + 1) * (k - n + 1) as f64)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_series_passes() {
        let r = check_series_conditions(&SectionSeries::new(), 1e-12);
        assert!(r.pass);
        assert_eq!(r.max_defect, 0.0);
    }

    #[test]
    fn imaginary_a10_fails_eq6() {
        let mut s = SectionSeries::new();
        s.set(1, 0, c(0., 1.));
        let r = check_series_conditions(&s, 1e-12);
        assert!(!r.pass);
        assert!(r.eq6[0].defect > 0.5);
        assert!(ConditionReport::family_max(&r.cond_i) > 0.5);
    }

    #[test]
    fn real_a10_passes() {
        // F = ξ: ∂(ξ/w²) = 1/w² − 2ξξ̄/w³ is real, so F is Lagrangian;
        // the V family relates A_{n0} to A_{1,n−1} and A_{0,n−2}, all zero beyond A_10
        let mut s = SectionSeries::new();
        s.set(1, 0, c(2., 0.));
        let r = check_series_conditions(&s, 1e-14);
        assert!(r.pass, "{r:?}");
        assert!(r.v_checked);
    }

    #[test]
    fn g_layers() {
        let mut s = SectionSeries::new();
        s.set(0, 1, c(5., 0.));
        let g0 = fourier_g(&s, 0);
        assert_eq!(g0.coeffs, vec![c(5., 0.)]);
        assert_eq!(g0.eval(1.234), c(5., 0.));
        assert!(fourier_g(&s, 1).is_zero());
    }

    #[test]
    fn trig_eval_matches_direct_sum() {
        let g = TrigPolynomial {
            coeffs: vec![c(1., 0.), c(0., 2.), c(-1., 1.)],
        };
        let th = 0.37;
        let direct: Complex64 = g
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, &a)| a * Complex64::from_polar(1.0, 2.0 * n as f64 * th))
            .sum();
        assert!((g.eval(th) - direct).norm() < 1e-14);
        assert_eq!(g.lipschitz_bound(), 2.0 * 2.0 + 4.0 * 2f64.sqrt());
    }

    #[test]
    fn series_json_shape() {
        let mut s = SectionSeries::new();
        s.set(2, 1, c(0.5, -1.0));
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"entries":[{"n":2,"m":1,"re":0.5,"im":-1.0}]}"#);
        assert_eq!(serde_json::from_str::<SectionSeries>(&j).unwrap(), s);
    }

    #[test]
    fn eval_monomials() {
        let mut s = SectionSeries::new();
        s.set(2, 1, c(1., 0.));
        let xi = c(0.5, 0.5);
        assert!((s.eval(xi) - xi * xi * xi.conj()).norm() < 1e-15);
    }
}

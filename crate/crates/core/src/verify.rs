//! Named verification suites. Each suite runs a fixed battery of numerical
//! checks from a seed and reports the worst observed error per check.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fixtures::{
    nodes_for_step, random_compact_spectrum, random_point, random_quaternion, random_unit,
    rng, HardyGrids, HardyTestFunction, SincPowerFunction, TestRng,
};
use crate::grid::{LineSamples, UniformGrid};
use crate::hardy::{
    boundary_trace, cauchy_extend, hardy_membership, poisson_extend, poisson_from_cauchy, poisson_kernel,
    rk_halfspace, rk_reproduce, synthesize_hardy, BoundaryTrace,
};
use crate::paley_wiener::{growth_check, line_support_radius, membership_units, reproduce, synthesize_compact};
use crate::qft::{essential_deviation, iqft_left, plancherel_norm, qft_left, transfer_spectrum, default_frequency_grid};
use crate::quaternion::{coefficients, exp_q, series_eval, sin_q, sinc_q, ImaginaryUnit, Quaternion};
use crate::sampling::{
    estimate_tail_energy, l2_error_curve, sample_energy, sinc_power_partial_sum, truncation_bound, wks_reconstruct,
    SampleSet, DEFAULT_STRIP, DEFAULT_TRUNCATION,
};
use crate::slice::{cr_order, decompose, ext_l, represent_via, slice_preserving_defect, Domain, SliceFunction};

pub const DEFAULT_SEED: u64 = 7;

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }

    /// A yes/no outcome recorded as error 0 or 1 against tolerance 0.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub seed: u64,
}

impl Report {
    pub fn pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Entire,
    Structure,
    Qft,
    PwCompact,
    Hardy,
    Kernel,
    Sampling,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Algebra,
        Suite::Entire,
        Suite::Structure,
        Suite::Qft,
        Suite::PwCompact,
        Suite::Hardy,
        Suite::Kernel,
        Suite::Sampling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Entire => "entire",
            Suite::Structure => "structure",
            Suite::Qft => "qft",
            Suite::PwCompact => "pw-compact",
            Suite::Hardy => "hardy",
            Suite::Kernel => "kernel",
            Suite::Sampling => "sampling",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Series truncation used by the sampling suite.
    pub trunc_k: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trunc_k: DEFAULT_TRUNCATION,
        }
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<Report> {
    let mut g = rng(config.seed);
    let checks = match suite {
        Suite::Algebra => algebra(&mut g),
        Suite::Entire => entire(&mut g),
        Suite::Structure => structure(&mut g),
        Suite::Qft => qft(&mut g)?,
        Suite::PwCompact => pw_compact(&mut g)?,
        Suite::Hardy => hardy(&mut g)?,
        Suite::Kernel => kernel(&mut g)?,
        Suite::Sampling => sampling(&mut g, config.trunc_k)?,
    };
    Ok(Report {
        suite: suite.name().to_string(),
        checks,
        seed: config.seed,
    })
}

/// Maximum that propagates NaN, so a broken evaluation cannot pass.
fn worst(errors: impl IntoIterator<Item = f64>) -> f64 {
    errors
        .into_iter()
        .fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

fn diff(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm()
}

fn unit_quaternion_points(g: &mut TestRng, count: usize, radius: f64) -> Vec<Quaternion> {
    (0..count)
        .map(|_| loop {
            let v = random_quaternion(g, 1.0);
            let n = v.norm();
            if (0.1..=1.0).contains(&n) {
                break v * (radius * g.gen_range(0.0..=1.0f64) / n);
            }
        })
        .collect()
}

fn algebra(g: &mut TestRng) -> Vec<Check> {
    let basis = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let m = Quaternion::real(-1.0);
    let table = [
        [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K],
        [Quaternion::I, m, Quaternion::K, -Quaternion::J],
        [Quaternion::J, -Quaternion::K, m, Quaternion::I],
        [Quaternion::K, Quaternion::J, -Quaternion::I, m],
    ];
    let table_err = worst((0..16).map(|n| diff(basis[n / 4] * basis[n % 4], table[n / 4][n % 4])));

    let n = 10_000;
    let norm_err = worst((0..n).map(|_| {
        let (a, b) = (random_quaternion(g, 10.0), random_quaternion(g, 10.0));
        let s = a.norm() * b.norm();
        ((a * b).norm() - s).abs() / s
    }));
    let assoc_err = worst((0..n).map(|_| {
        let (a, b, c) = (random_quaternion(g, 10.0), random_quaternion(g, 10.0), random_quaternion(g, 10.0));
        diff((a * b) * c, a * (b * c)) / (a.norm() * b.norm() * c.norm())
    }));
    vec![
        Check::new("multiplication-table", table_err, 0.0),
        Check::new("norm-multiplicative", norm_err, 1e-12),
        Check::new("associativity", assoc_err, 1e-12),
    ]
}

fn entire(g: &mut TestRng) -> Vec<Check> {
    let points = unit_quaternion_points(g, 1000, 5.0);
    let exp_c = coefficients::exp(60);
    let sin_c = coefficients::sin(120);
    let sinc_c = coefficients::sinc(120);
    let series_check = |name: &str, f: fn(Quaternion) -> Quaternion, c: &[f64]| {
        Check::new(name, worst(points.iter().map(|&q| diff(f(q), series_eval(c, q)))), 1e-11)
    };
    let sym_err = worst(points.iter().flat_map(|&q| {
        [
            diff(exp_q(q.conj()), exp_q(q).conj()),
            diff(sin_q(q.conj()), sin_q(q).conj()),
            diff(sinc_q(q.conj()), sinc_q(q).conj()),
        ]
    }));
    let real_c: Vec<f64> = (0..20).map(|n| g.gen_range(-1.0..1.0) / (1..=n).map(f64::from).product::<f64>()).collect();
    let series_sym = worst(points.iter().map(|&q| {
        let (a, b) = (series_eval(&real_c, q.conj()), series_eval(&real_c, q).conj());
        diff(a, b)
    }));
    vec![
        series_check("exp-vs-series", exp_q, &exp_c),
        series_check("sin-vs-series", sin_q, &sin_c),
        series_check("sinc-vs-series", sinc_q, &sinc_c),
        Check::new("conjugate-symmetry-closed-forms", sym_err, 1e-13),
        Check::new("conjugate-symmetry-real-series", series_sym, 1e-13),
    ]
}

/// `exp(q) a + sin(q) b + sinc(q/2) c` with quaternion `a, b, c`.
fn random_regular(g: &mut TestRng) -> impl SliceFunction {
    let (a, b, c) = (random_quaternion(g, 1.0), random_quaternion(g, 1.0), random_quaternion(g, 1.0));
    move |q: Quaternion| exp_q(q) * a + sin_q(q) * b + sinc_q(q * 0.5) * c
}

fn structure(g: &mut TestRng) -> Vec<Check> {
    let f = random_regular(g);
    let points: Vec<Quaternion> = (0..100).map(|_| random_point(g, (-3.0, 3.0), (-3.0, 3.0))).collect();
    let probes: Vec<ImaginaryUnit> = (0..5).map(|_| random_unit(g)).collect();

    let rep_err = worst(points.iter().flat_map(|&q| probes.iter().map(move |&j| (q, j))).map(|(q, j)| {
        diff(represent_via(&f, j, q), f.eval(q))
    }));

    let quad = decompose(&f, probes[0]);
    let rec_err = worst(points.iter().map(|&q| diff(quad.recombine(q), f.eval(q))));
    let comp_err = worst((0..4).map(|m| slice_preserving_defect(&quad.component(m))));

    let ext = ext_l(|x, y| ImaginaryUnit::I.lift(Complex64::new(x, y).exp()), ImaginaryUnit::I, Domain::Whole);
    let ext_err = worst(points.iter().map(|&q| diff(ext.eval(q), exp_q(q))));

    vec![
        Check::new("representation-probe-independence", rep_err, 1e-11),
        Check::new("decompose-recombine", rec_err, 1e-11),
        Check::new("components-slice-preserving", comp_err, 1e-10),
        Check::new("ext-l-of-exp", ext_err, 1e-12),
    ]
}

/// A smooth real signal: a few modulated Gaussians.
fn random_real_signal(g: &mut TestRng, grid: UniformGrid) -> Result<LineSamples> {
    let terms: Vec<(f64, f64, f64, f64)> = (0..3)
        .map(|_| (g.gen_range(-1.0..1.0), g.gen_range(-4.0..4.0), g.gen_range(0.7..1.5), g.gen_range(0.0..3.0)))
        .collect();
    LineSamples::from_fn(grid, |x| {
        Quaternion::real(
            terms
                .iter()
                .map(|(a, c, s, w)| a * (-((x - c) / s).powi(2)).exp() * (w * x).cos())
                .sum(),
        )
    })
}

fn qft(g: &mut TestRng) -> Result<Vec<Check>> {
    let grid = UniformGrid::symmetric(20.0, 0.05)?;
    let mut round = Vec::new();
    let mut plancherel = Vec::new();
    let mut slice_valued = Vec::new();
    let mut conj_sym = Vec::new();
    let mut transfer = Vec::new();
    let pairs: Vec<(ImaginaryUnit, ImaginaryUnit)> = (0..5).map(|_| (random_unit(g), random_unit(g))).collect();
    for _ in 0..10 {
        let f = random_real_signal(g, grid)?;
        for &(i, j) in &pairs {
            let s = qft_left(&f, i)?;
            let back = iqft_left(&s)?;
            round.push(worst(back.values.iter().zip(&f.values).map(|(a, b)| diff(*a, *b))));
            let (a, b) = plancherel_norm(&f, &s);
            plancherel.push((a - b).abs() / a);
            let iq = i.as_quaternion();
            slice_valued.push(worst(s.values.iter().map(|v| {
                let c = v.dot(iq);
                diff(*v, Quaternion::real(v.w) + iq * c)
            })));
            conj_sym.push(worst((0..s.grid.n).map(|m| diff(s.values[m].conj(), s.values[s.grid.mirror(m)]))));
            let moved = transfer_spectrum(&s, j)?;
            let direct = qft_left(&f, j)?;
            transfer.push(moved.max_deviation(&direct)?);
        }
    }
    Ok(vec![
        Check::new("round-trip", worst(round), 1e-6),
        Check::new("plancherel-relative", worst(plancherel), 1e-6),
        Check::new("real-input-slice-valued", worst(slice_valued), 1e-12),
        Check::new("real-input-conjugate-symmetry", worst(conj_sym), 1e-12),
        Check::new("transfer-vs-direct", worst(transfer), 1e-10),
    ])
}

const BANDS: [f64; 3] = [1.0, 2.0, PI];

fn pw_compact(g: &mut TestRng) -> Result<Vec<Check>> {
    let line = UniformGrid::symmetric(100.0, 0.05)?;
    let mut growth = Vec::new();
    let mut support = Vec::new();
    let mut order = Vec::new();
    for n in 0..20 {
        let band = BANDS[n % 3];
        let unit = random_unit(g);
        let nodes = nodes_for_step(band, PI / (2.0 * line.max));
        let spec = random_compact_spectrum(g, band, nodes, unit, 8)?;
        let f = synthesize_compact(&spec)?;

        let points: Vec<Quaternion> = (0..20)
            .map(|_| random_point(g, (-7.0, 7.0), (-7.0, 7.0)))
            .map(|q| if q.norm() > 10.0 { q * (10.0 / q.norm()) } else { q })
            .collect();
        growth.push(growth_check(&f, &points)?.max_ratio);

        let samples = f.sample_line(line)?;
        for u in membership_units() {
            let (radius, bin) = line_support_radius(&samples, band, u, 1e-6)?;
            support.push((radius - band) / bin);
        }

        let u = random_unit(g);
        let at = crate::SlicePoint {
            re: g.gen_range(-2.0..2.0),
            im: g.gen_range(-2.0..2.0),
            unit: u,
        };
        order.push(2.0 - cr_order(&f, u, at, 1e-2)?);
    }
    Ok(vec![
        Check::new("growth-ratio", worst(growth), 1.0 + 1e-6),
        Check::new("support-excess-in-bins", worst(support), 1.0 + 1e-9),
        Check::new("cr-order-deficit", worst(order), 0.1),
    ])
}

fn hardy(g: &mut TestRng) -> Result<Vec<Check>> {
    let grids = HardyGrids::new(64.0, 1.0 / 16.0, 40.0)?;
    let mut three_way = Vec::new();
    for _ in 0..4 {
        let f = HardyTestFunction::random(g, 2, 4, false);
        let unit = random_unit(g);
        let s = f.half_line_spectrum(grids.cutoff, grids.spectrum_nodes, unit)?;
        let trace = boundary_trace(&s, random_unit(g), grids.trace)?;
        for _ in 0..5 {
            let q = random_point(g, (0.75, 3.0), (-3.0, 3.0));
            let a = synthesize_hardy(&s, q)?;
            let b = cauchy_extend(&trace, q)?;
            let c = poisson_extend(&trace, q)?;
            three_way.push(worst([diff(a, b), diff(a, c), diff(b, c)]));
        }
    }

    let ratio = worst((0..1000).map(|_| {
        let (x, y) = (g.gen_range(0.01..10.0), g.gen_range(-50.0..50.0));
        match (poisson_kernel(x, y), poisson_from_cauchy(x, y)) {
            (Ok(a), Ok(b)) => (a - b).abs() / a,
            _ => f64::NAN,
        }
    }));

    let f = HardyTestFunction::random(g, 2, 4, true);
    let s = f.half_line_spectrum(grids.cutoff, grids.spectrum_nodes, ImaginaryUnit::I)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let units = [ImaginaryUnit::I, ImaginaryUnit::J, ImaginaryUnit::new(r, r, 0.0)?];
    let traces = units
        .iter()
        .map(|u| boundary_trace(&s, *u, grids.trace).map(|t| t.samples()))
        .collect::<Result<Vec<_>>>()?;
    let essential = essential_deviation(&traces, default_frequency_grid(&grids.trace)?)?.max_deviation;

    let gauss = BoundaryTrace::new(
        ImaginaryUnit::I,
        LineSamples::from_fn(grids.trace, |y| Quaternion::real((-y * y).exp()))?,
    )?;
    let rejected = !hardy_membership(&gauss, 2.0, 1e-6)?;

    Ok(vec![
        Check::new("three-way-identity", worst(three_way), 1e-5),
        Check::new("poisson-closed-form-vs-ratio", ratio, 1e-12),
        Check::new("essential-ft-cross-unit", essential, 1e-8),
        Check::flag("gaussian-trace-rejected", rejected),
    ])
}

fn kernel(g: &mut TestRng) -> Result<Vec<Check>> {
    let line = UniformGrid::symmetric(100.0, 0.1)?;
    let mut reproduced = Vec::new();
    for band in [1.0, PI, 3.0] {
        let nodes = nodes_for_step(band, PI / (4.0 * line.max));
        let unit = random_unit(g);
        let spec = random_compact_spectrum(g, band, nodes, unit, 8)?;
        let f = synthesize_compact(&spec)?;
        let samples = f.sample_line(line)?;
        for _ in 0..50 {
            let q = random_point(g, (-5.0, 5.0), (-2.0, 2.0));
            reproduced.push(diff(reproduce(&samples, band, q)?, f.eval(q)));
        }
    }

    let trace_grid = UniformGrid::symmetric(30.0, 1.0 / 8.0)?;
    let f = HardyTestFunction::random(g, 2, 4, false);
    let trace = BoundaryTrace::from_samples(f.trace(random_unit(g), trace_grid)?)?;
    let mut rk = Vec::new();
    for _ in 0..10 {
        let q = random_point(g, (1.0, 3.0), (-2.0, 2.0));
        rk.push(diff(rk_reproduce(&trace, q)?, f.exact(q)));
    }

    let k11 = diff(rk_halfspace(Quaternion::ONE, Quaternion::ONE)?, Quaternion::real(0.5));
    Ok(vec![
        Check::new("pw-reproduce-vs-synthesis", worst(reproduced), 1e-5),
        Check::new("rk-reproduces-hardy-element", worst(rk), 1e-5),
        Check::new("rk-at-one-one", k11, 1e-10),
    ])
}

fn sampling(g: &mut TestRng, k: usize) -> Result<Vec<Check>> {
    let mut nodes = Vec::new();
    let mut consistency = Vec::new();
    let mut parseval = Vec::new();
    for band in BANDS {
        let f = SincPowerFunction::random(g, band, 3, false);
        let s = SampleSet::from_fn(band, k, |x| f.eval_at(Quaternion::real(x)))?;
        nodes.push(worst((-(k as i64)..=k as i64).map(|m| {
            diff(wks_reconstruct(&s, Quaternion::real(s.node(m))), s.sample(m))
        })));

        let energy = UniformGrid::symmetric(60.0, 0.05)?.integrate(|x| f.eval_at(Quaternion::real(x)).norm_sqr());
        parseval.push((sample_energy(&s) - energy).abs() / energy);

        // the synthesis grid is fixed by the default truncation so that K only
        // changes the series
        let x_max = PI * k.max(DEFAULT_TRUNCATION) as f64 / band;
        let unit = random_unit(g);
        let spec = random_compact_spectrum(g, band, nodes_for_step(band, PI / (2.0 * x_max)), unit, 6)?;
        let pw = synthesize_compact(&spec)?;
        let s = SampleSet::from_fn(band, k, |x| pw.eval_on_defining_slice(x, 0.0))?;
        for _ in 0..20 {
            let q = random_point(g, (-3.0, 3.0), (-1.0, 1.0));
            consistency.push(diff(wks_reconstruct(&s, q), pw.eval(q)));
        }
    }

    let mut checks = vec![
        Check::new("node-interpolation", worst(nodes), 1e-12),
        Check::new("series-vs-synthesis", worst(consistency), 1e-6),
        Check::new("parseval-relative", worst(parseval), 1e-5),
    ];

    for m in [0.25, 0.5] {
        let bound = 2.0 * (2.0 * m * PI).exp();
        let ratio = worst((0..50).map(|_| {
            let q = random_point(g, (-5.0, 5.0), (-m, m));
            sinc_power_partial_sum(q, 2.0, 1000) / bound
        }));
        checks.push(Check::new(format!("sinc-square-sum-over-bound-M{m}"), ratio, 1.0));
    }

    let mut dominated = Vec::new();
    for n in 0..20 {
        let band = BANDS[n % 3];
        let f = SincPowerFunction::random(g, band, 3, false);
        let full = SampleSet::from_fn(band, 2000, |x| f.eval_at(Quaternion::real(x)))?;
        let cut = full.truncate(60)?;
        let bound = truncation_bound(band, DEFAULT_STRIP, 2.0, estimate_tail_energy(&cut))?;
        for _ in 0..5 {
            let q = random_point(g, (-3.0, 3.0), (-DEFAULT_STRIP, DEFAULT_STRIP));
            dominated.push(diff(wks_reconstruct(&full, q), wks_reconstruct(&cut, q)) / bound);
        }
    }
    checks.push(Check::new("truncation-over-bound", worst(dominated), 1.0));

    let f = SincPowerFunction::random(g, PI, 3, false);
    let s = SampleSet::from_fn(PI, 500, |x| f.eval_at(Quaternion::real(x)))?;
    let curve = l2_error_curve(&f, &s, &[25, 50, 100, 200, 500])?;
    let growth = worst(curve.windows(2).map(|w| w[1] / w[0] - 1.0));
    let trend = worst(curve[..4].windows(2).map(|w| w[1] / w[0]));
    checks.push(Check::new("l2-curve-step-increase", growth, 0.05));
    checks.push(Check::new("l2-curve-ratio-over-first-four", trend, 1.0 - f64::EPSILON));
    checks.push(Check::new("l2-curve-final", curve[4], 1e-5));

    let f = SincPowerFunction::random(g, 2.0, 3, true);
    let s = SampleSet::from_fn(2.0, k, |x| f.eval_at(Quaternion::real(x)))?;
    let pts: Vec<(f64, f64)> = (0..40).map(|_| (g.gen_range(-3.0..3.0), g.gen_range(-1.0..1.0))).collect();
    let stats: Vec<(f64, f64)> = (0..8)
        .map(|_| {
            let u = random_unit(g);
            let errs: Vec<f64> = pts.iter().map(|&(x, y)| diff(wks_reconstruct(&s, u.at(x, y)), f.eval_at(u.at(x, y)))).collect();
            (worst(errs.iter().copied()), errs.iter().sum::<f64>() / errs.len() as f64)
        })
        .collect();
    let spread = worst(stats.iter().map(|(mx, mean)| (mx - stats[0].0).abs().max((mean - stats[0].1).abs())));
    checks.push(Check::new("slice-universality", spread, 1e-10));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("".parse::<Suite>().is_err());
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn nan_never_passes() {
        assert!(!Check::new("x", worst([0.0, f64::NAN, 1.0]), 1e300).pass);
        assert!(Check::flag("y", true).pass && !Check::flag("y", false).pass);
    }

    #[test]
    fn report_schema() {
        let r = Report {
            suite: "algebra".into(),
            checks: vec![Check::new("a", 0.5, 1.0)],
            seed: 3,
        };
        let j = serde_json::to_string(&r).unwrap();
        assert_eq!(
            j,
            r#"{"suite":"algebra","checks":[{"name":"a","max_error":0.5,"tolerance":1.0,"pass":true}],"seed":3}"#
        );
        assert!(r.pass());
    }
}

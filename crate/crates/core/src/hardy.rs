//! Hardy-space functions on the right half-space `re q > 0`.
//!
//! A function is represented either by its half-line spectrum `S` on
//! `(-∞, 0]`, through `f(q) = (2π)^{-1/2} ∫_{-∞}^{0} e^{qt} S(t) dt`, or by its
//! boundary values `F(y) = f(Iy)` on one slice, through the Cauchy or
//! Poisson integral. `e^{qt}` has real Taylor coefficients, so the synthesis
//! formula is the same on every slice.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{LineSamples, Spectrum, UniformGrid};
use crate::qft::{cos_sin_sums, qft_left, support_halfline_check, INV_SQRT_2PI};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::slice::{represent, Domain, SliceFunction};
use crate::sum::{pairwise_map_by, QPair};

/// Largest admissible `e^{-x T}` for synthesis at real part `x`.
pub const TRUNCATION_FLOOR: f64 = 1e-12;

/// Largest admissible `|S(-T)| / max|S|` for a half-line spectrum.
pub const DECAY_FLOOR: f64 = 1e-8;

/// Tolerance on the parity of the inputs of [`hardy_extend_symmetric`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// `K(z) = 1/(2πz)`, the Cauchy kernel of the half-plane.
pub fn cauchy_kernel(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("Cauchy kernel needs re z > 0, got {z}")));
    }
    Ok(1.0 / (2.0 * PI * z))
}

/// `P(x, y) = x / (π(x² + y²))`.
pub fn poisson_kernel(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Poisson kernel needs x > 0, got {x}")));
    }
    Ok(x / (PI * (x * x + y * y)))
}

/// `|K(z)|² / K(2x)` for `z = x + iy`.
pub fn poisson_from_cauchy(x: f64, y: f64) -> Result<f64> {
    let k = cauchy_kernel(Complex64::new(x, y))?;
    let k2 = cauchy_kernel(Complex64::new(2.0 * x, 0.0))?;
    Ok(k.norm_sqr() / k2.re)
}

/// A spectrum on the truncated half-line `[-T, 0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfLineSpectrum {
    pub cutoff: f64,
    pub grid: UniformGrid,
    pub unit: ImaginaryUnit,
    pub values: Vec<Quaternion>,
}

impl HalfLineSpectrum {
    pub fn new(cutoff: f64, n: usize, unit: ImaginaryUnit, values: Vec<Quaternion>) -> Result<Self> {
        let s = Self {
            cutoff,
            grid: UniformGrid::new(-cutoff, 0.0, n)?,
            unit,
            values,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(cutoff: f64, n: usize, unit: ImaginaryUnit, f: impl Fn(f64) -> Quaternion) -> Result<Self> {
        let grid = UniformGrid::new(-cutoff, 0.0, n)?;
        Self::new(cutoff, n, unit, (0..n).map(|i| f(grid.node(i))).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff > 0.0 && self.cutoff.is_finite()) {
            return Err(invalid("cutoff must be positive and finite"));
        }
        let tol = 1e-12 * self.cutoff;
        if (self.grid.min + self.cutoff).abs() > tol || self.grid.max != 0.0 || self.grid.n < 2 {
            return Err(invalid("half-line spectrum grid must cover exactly [-cutoff, 0]"));
        }
        self.as_spectrum().validate()?;
        let peak = self.as_spectrum().max_abs();
        if self.values[0].norm() > DECAY_FLOOR * peak {
            return Err(Error::Truncation(format!(
                "spectrum has not decayed at -T: |S(-T)| / max|S| = {:e}",
                self.values[0].norm() / peak
            )));
        }
        Ok(())
    }

    pub fn as_spectrum(&self) -> Spectrum {
        Spectrum {
            grid: self.grid,
            unit: self.unit,
            values: self.values.clone(),
        }
    }

    /// Smallest real part at which synthesis is admissible.
    pub fn min_real_part(&self) -> f64 {
        -TRUNCATION_FLOOR.ln() / self.cutoff
    }
}

/// `(2π)^{-1/2} ∫_{-T}^{0} e^{qt} S(t) dt`.
pub fn synthesize_hardy(s: &HalfLineSpectrum, q: Quaternion) -> Result<Quaternion> {
    if !(q.w > 0.0) {
        return Err(Error::Domain(format!("Hardy synthesis needs re q > 0, got {q}")));
    }
    if (-q.w * s.cutoff).exp() > TRUNCATION_FLOOR {
        return Err(Error::Truncation(format!(
            "re q = {} is below the admissible floor {} for cutoff {}",
            q.w,
            s.min_real_part(),
            s.cutoff
        )));
    }
    Ok(synthesize_unchecked(s, q))
}

fn synthesize_unchecked(s: &HalfLineSpectrum, q: Quaternion) -> Quaternion {
    let p = q.split();
    let QPair(c, sn) = pairwise_map_by(s.grid.n, |m| {
        let t = s.grid.node(m);
        let (sin, cos) = (p.im * t).sin_cos();
        let wv = s.values[m] * (s.grid.weight(m) * (p.re * t).exp());
        QPair(wv * cos, wv * sin)
    });
    (c + p.unit.as_quaternion() * sn) * INV_SQRT_2PI
}

/// Evaluator view of a half-line spectrum; inadmissible points give NaN.
#[derive(Debug, Clone)]
pub struct HardyFunction {
    pub spectrum: HalfLineSpectrum,
}

impl SliceFunction for HardyFunction {
    fn eval(&self, q: Quaternion) -> Quaternion {
        synthesize_hardy(&self.spectrum, q).unwrap_or(Quaternion::NAN)
    }

    fn domain(&self) -> Domain {
        Domain::RightHalf
    }
}

/// Boundary values `F(y) = f(I y)` on the imaginary axis of one slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryTrace {
    /// Unit of the slice whose imaginary axis carries the data.
    pub boundary: ImaginaryUnit,
    pub grid: UniformGrid,
    pub values: Vec<Quaternion>,
}

impl BoundaryTrace {
    pub fn new(unit: ImaginaryUnit, samples: LineSamples) -> Result<Self> {
        samples.validate()?;
        Ok(Self {
            boundary: unit,
            grid: samples.grid,
            values: samples.values,
        })
    }

    /// Uses the unit carried by the samples.
    pub fn from_samples(samples: LineSamples) -> Result<Self> {
        let unit = samples.unit.ok_or_else(|| invalid("line samples carry no unit"))?;
        Self::new(unit, samples)
    }

    pub fn samples(&self) -> LineSamples {
        LineSamples {
            grid: self.grid,
            unit: Some(self.boundary),
            values: self.values.clone(),
        }
    }

    pub fn unit(&self) -> ImaginaryUnit {
        self.boundary
    }

    pub fn validate(&self) -> Result<()> {
        self.samples().validate()
    }

    /// The trace on the slice of `to`, `α(0, y) + J β(0, y)`, with the stem
    /// pair read off from `F(±y)`. Needs a grid symmetric about zero.
    pub fn transport(&self, to: ImaginaryUnit) -> Result<BoundaryTrace> {
        self.validate()?;
        self.grid.require_symmetric()?;
        let (i, j) = (self.boundary.as_quaternion(), to.as_quaternion());
        let values = (0..self.grid.n)
            .map(|m| {
                let (p, n) = (self.values[m], self.values[self.grid.mirror(m)]);
                (p + n) * 0.5 + j * (i * (n - p) * 0.5)
            })
            .collect();
        Ok(BoundaryTrace {
            boundary: to,
            grid: self.grid,
            values,
        })
    }
}

/// The boundary trace of the synthesized function on the slice of `unit`.
pub fn boundary_trace(s: &HalfLineSpectrum, unit: ImaginaryUnit, grid: UniformGrid) -> Result<BoundaryTrace> {
    let u = unit.as_quaternion();
    let samples = LineSamples::from_fn(grid, |y| {
        let QPair(c, sn) = cos_sin_sums(&s.grid, &s.values, y);
        (c + u * sn) * INV_SQRT_2PI
    })?;
    BoundaryTrace::new(unit, samples)
}

fn check_interior(q: Quaternion) -> Result<()> {
    if q.w > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("extension needs re q > 0, got {q}")))
    }
}

/// `∫ P(x, y − s) F(s) ds` on the trace's own slice: trapezoid over the grid
/// with the leading endpoint correction, plus the kernel mass outside the
/// grid weighted by the end values.
///
/// The trapezoid rule resolves the kernel while `x` is a few grid steps or
/// more.
fn poisson_on_slice(trace: &BoundaryTrace, x: f64, y: f64) -> Quaternion {
    let g = &trace.grid;
    let kernel = |s: f64| x / (PI * (x * x + (y - s).powi(2)));
    let slope = |s: f64| 2.0 * x * (y - s) / (PI * (x * x + (y - s).powi(2)).powi(2));
    let inner: Quaternion = pairwise_map_by(g.n, |i| trace.values[i] * (g.weight(i) * kernel(g.node(i))));
    let (first, last) = (trace.values[0], trace.values[g.n - 1]);
    let h2 = g.step().powi(2) / 12.0;
    let correction = last * (h2 * slope(g.max)) - first * (h2 * slope(g.min));
    let left = 0.5 + ((g.min - y) / x).atan() / PI;
    let right = 0.5 - ((g.max - y) / x).atan() / PI;
    inner - correction + first * left + last * right
}

fn cauchy_on_slice(trace: &BoundaryTrace, x: f64, y: f64) -> Quaternion {
    let g = &trace.grid;
    let u = trace.boundary;
    let QPair(re, im) = pairwise_map_by(g.n, |i| {
        let k = 1.0 / (2.0 * PI * Complex64::new(x, y - g.node(i)));
        let wv = trace.values[i] * g.weight(i);
        QPair(wv * k.re, wv * k.im)
    });
    re + u.as_quaternion() * im
}

/// Lifts a slice evaluator on the trace's slice to the slice of `q`.
fn to_query_slice(unit: ImaginaryUnit, q: Quaternion, on_slice: impl Fn(f64, f64) -> Quaternion) -> Quaternion {
    let p = q.split();
    if p.im == 0.0 || p.unit == unit {
        return on_slice(p.re, p.im);
    }
    represent(on_slice(p.re, p.im), on_slice(p.re, -p.im), unit, p.unit)
}

/// Poisson extension of boundary values into the half-space.
pub fn poisson_extend(trace: &BoundaryTrace, q: Quaternion) -> Result<Quaternion> {
    check_interior(q)?;
    trace.validate()?;
    Ok(to_query_slice(trace.boundary, q, |x, y| poisson_on_slice(trace, x, y)))
}

/// Cauchy extension `∫ K(x + I(y − s)) F(s) ds`.
pub fn cauchy_extend(trace: &BoundaryTrace, q: Quaternion) -> Result<Quaternion> {
    check_interior(q)?;
    trace.validate()?;
    Ok(to_query_slice(trace.boundary, q, |x, y| cauchy_on_slice(trace, x, y)))
}

/// Splits `F = G₀ + G₁ J` with `G₀, G₁` valued in the slice of the trace's
/// unit `I` and `J` from its orthogonal frame.
pub fn symplectic_split(trace: &BoundaryTrace) -> (BoundaryTrace, BoundaryTrace, ImaginaryUnit) {
    let i = trace.boundary;
    let (j, k) = i.orthogonal_frame();
    let (iq, jq, kq) = (i.as_quaternion(), j.as_quaternion(), k.as_quaternion());
    let mut g0 = Vec::with_capacity(trace.values.len());
    let mut g1 = Vec::with_capacity(trace.values.len());
    for v in &trace.values {
        g0.push(i.at(v.w, v.dot(iq)));
        // (c + I d) J = c J + d K
        g1.push(i.at(v.dot(jq), v.dot(kq)));
    }
    let part = |values| BoundaryTrace {
        boundary: i,
        grid: trace.grid,
        values,
    };
    (part(g0), part(g1), j)
}

/// Poisson extension assembled from the two slice-valued halves of
/// [`symplectic_split`].
pub fn poisson_extend_split(trace: &BoundaryTrace, q: Quaternion) -> Result<Quaternion> {
    let (g0, g1, j) = symplectic_split(trace);
    let on_slice = |x: f64, y: f64| poisson_on_slice(&g0, x, y) + poisson_on_slice(&g1, x, y) * j.as_quaternion();
    check_interior(q)?;
    Ok(to_query_slice(trace.boundary, q, on_slice))
}

/// Discrete `Lᵖ` norm of the trace for `p ∈ [1, 2]`; `p` strictly between
/// uses the `p = 2` path.
pub fn trace_norm(trace: &BoundaryTrace, p: f64) -> Result<f64> {
    let s = trace.samples();
    if p == 1.0 {
        Ok(s.l1_norm())
    } else if (1.0..=2.0).contains(&p) {
        Ok(s.l2_norm_sqr().sqrt())
    } else {
        Err(invalid(format!("Hardy norms are supported for 1 ≤ p ≤ 2, got {p}")))
    }
}

/// Whether boundary values belong to a Hardy space: a finite `Lᵖ` norm and a
/// spectrum (along the trace's unit) below `tol·max|S|` on the positive
/// frequencies beyond the first bin.
pub fn hardy_membership(trace: &BoundaryTrace, p: f64, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    if !trace_norm(trace, p)?.is_finite() {
        return Ok(false);
    }
    let s = qft_left(&trace.samples(), trace.boundary)?;
    Ok(support_halfline_check(&s, tol * s.max_abs()))
}

fn is_even(s: &LineSamples, sign: f64, tol: f64) -> bool {
    (0..s.grid.n).all(|i| (s.values[i] - s.values[s.grid.mirror(i)] * sign).norm() <= tol)
}

/// Extension of `𝒜 + J𝓑` from an even real `𝒜` and an odd real `𝓑`:
/// `f(x + Jy) = ∫P(x, y−s)𝒜(s)ds + J ∫P(x, y−s)𝓑(s)ds`, a slice-preserving
/// Hardy function.
///
/// The pair must be real with the stated parity, and `𝒜 + I𝓑` must pass the
/// half-line support check along the probe unit `I` at `tol·max|S|`.
pub fn hardy_extend_symmetric(
    a: &LineSamples,
    b: &LineSamples,
    probe: ImaginaryUnit,
    tol: f64,
    q: Quaternion,
) -> Result<Quaternion> {
    let ext = SymmetricExtension::new(a, b, probe, tol)?;
    ext.try_eval(q)
}

/// Validated input of [`hardy_extend_symmetric`], reusable across points.
pub struct SymmetricExtension {
    a: BoundaryTrace,
    b: BoundaryTrace,
}

impl SymmetricExtension {
    pub fn new(a: &LineSamples, b: &LineSamples, probe: ImaginaryUnit, tol: f64) -> Result<Self> {
        a.validate()?;
        b.validate()?;
        if a.grid != b.grid {
            return Err(invalid("even and odd parts must share a grid"));
        }
        a.grid.require_symmetric()?;
        if !a.is_real(SYMMETRY_TOLERANCE) || !b.is_real(SYMMETRY_TOLERANCE) {
            return Err(Error::Invariant("even and odd parts must be real-valued".into()));
        }
        if !is_even(a, 1.0, SYMMETRY_TOLERANCE) {
            return Err(Error::Invariant("first input is not even".into()));
        }
        if !is_even(b, -1.0, SYMMETRY_TOLERANCE) {
            return Err(Error::Invariant("second input is not odd".into()));
        }
        let combined = LineSamples::from_fn(a.grid, |_| Quaternion::ZERO)?;
        let combined = LineSamples {
            values: (0..a.grid.n).map(|i| probe.at(a.values[i].w, b.values[i].w)).collect(),
            ..combined
        };
        let s = qft_left(&combined, probe)?;
        if !support_halfline_check(&s, tol * s.max_abs()) {
            return Err(Error::Invariant("spectrum of the pair is not supported on (-∞, 0]".into()));
        }
        let real_trace = |s: &LineSamples| BoundaryTrace {
            boundary: probe,
            grid: s.grid,
            values: s.values.iter().map(|v| Quaternion::real(v.w)).collect(),
        };
        Ok(Self {
            a: real_trace(a),
            b: real_trace(b),
        })
    }
}

impl SliceFunction for SymmetricExtension {
    fn eval(&self, q: Quaternion) -> Quaternion {
        let p = q.split();
        let a = poisson_on_slice(&self.a, p.re, p.im).w;
        let b = poisson_on_slice(&self.b, p.re, p.im).w;
        p.unit.at(a, b)
    }

    fn domain(&self) -> Domain {
        Domain::RightHalf
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Integration range of [`rk_halfspace`] in units of `1/σ`; `e^{-38} < 4e-17`.
const RK_DECAY_LENGTHS: f64 = 38.0;

/// `k(q₁, q₂) = ∫₀^∞ e^{-q₁t} e^{-q̄₂t} dt` by composite Gauss–Legendre.
///
/// Requires `re q₁ > 0` and `re q₂ ≥ 0`, so that `q₂` may sit on the boundary.
pub fn rk_halfspace(q1: Quaternion, q2: Quaternion) -> Result<Quaternion> {
    if !(q1.w > 0.0 && q2.w >= 0.0) {
        return Err(Error::Domain(format!(
            "reproducing kernel needs re q1 > 0 and re q2 ≥ 0, got {q1} and {q2}"
        )));
    }
    let (p1, p2) = (q1.split(), q2.split());
    let sigma = p1.re + p2.re;
    let omega = p1.im.abs() + p2.im.abs();
    let end = RK_DECAY_LENGTHS / sigma;
    let width = if omega > 0.0 { (2.0 / sigma).min(3.0 / omega) } else { 2.0 / sigma };
    let panels = (end / width).ceil() as usize;
    let h = end / panels as f64;
    let (nodes, weights) = gl16();
    // e^{-q₁t} e^{-q̄₂t} = e^{-σt}[cc + cs I₂ − sc I₁ − ss I₁I₂]
    let [cc, cs, sc, ss] = pairwise_map_by(panels, |k| {
        let a = k as f64 * h;
        let mut acc = Acc4::default();
        for (x, w) in nodes.iter().zip(weights) {
            let t = a + 0.5 * h * (x + 1.0);
            let e = (-sigma * t).exp() * w * 0.5 * h;
            let (s1, c1) = (p1.im * t).sin_cos();
            let (s2, c2) = (p2.im * t).sin_cos();
            acc = acc + Acc4([e * c1 * c2, e * c1 * s2, e * s1 * c2, e * s1 * s2]);
        }
        acc
    })
    .0;
    let (u1, u2) = (p1.unit.as_quaternion(), p2.unit.as_quaternion());
    Ok(Quaternion::real(cc) + u2 * cs - u1 * sc - u1 * u2 * ss)
}

#[derive(Debug, Clone, Copy, Default)]
struct Acc4([f64; 4]);

impl std::ops::Add for Acc4 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Acc4([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

/// `(2π)^{-1} ∫ k(q, I y) F(y) dy` for boundary values `F` on the slice `I`.
pub fn rk_reproduce(trace: &BoundaryTrace, q: Quaternion) -> Result<Quaternion> {
    check_interior(q)?;
    trace.validate()?;
    let g = &trace.grid;
    let mut terms = Vec::with_capacity(g.n);
    for i in 0..g.n {
        let k = rk_halfspace(q, trace.boundary.at(0.0, g.node(i)))?;
        terms.push(k * trace.values[i] * g.weight(i));
    }
    Ok(crate::sum::pairwise_q(&terms) / (2.0 * PI))
}

/// Discrete `L²` distance between `y ↦ f(x + Iy)` and the boundary values,
/// for each `x`, computed through the Poisson multiplier `e^{-x|t|}` on the
/// spectrum of the trace.
pub fn ntbl_error_sequence(trace: &BoundaryTrace, xs: &[f64]) -> Result<Vec<f64>> {
    let samples = trace.samples();
    let s = qft_left(&samples, trace.boundary)?;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("approach height must be positive, got {x}")));
        }
        let damped = Spectrum {
            values: (0..s.grid.n).map(|m| s.values[m] * (-x * s.grid.node(m).abs()).exp()).collect(),
            ..s.clone()
        };
        let level = crate::qft::iqft_left_on(&damped, samples.grid)?;
        let diff = LineSamples {
            values: level.values.iter().zip(&samples.values).map(|(a, b)| *a - *b).collect(),
            ..samples.clone()
        };
        out.push(diff.l2_norm_sqr().sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{rng, HardyGrids, HardyTestFunction};
    use crate::slice::{cr_order, is_slice_preserving};
    use crate::SlicePoint;

    #[test]
    fn kernel_examples() {
        let k1 = cauchy_kernel(Complex64::new(1.0, 0.0)).unwrap();
        assert!((k1.re - 1.0 / (2.0 * PI)).abs() < 1e-16 && k1.im == 0.0);
        let k2 = cauchy_kernel(Complex64::new(2.0, 0.0)).unwrap();
        assert!((k2.re - 1.0 / (4.0 * PI)).abs() < 1e-16);
        let mags: Vec<f64> = [1.0, 10.0, 100.0]
            .iter()
            .map(|r| cauchy_kernel(Complex64::from_polar(*r, 0.7)).unwrap().norm())
            .collect();
        assert!(mags[0] > mags[1] && mags[1] > mags[2]);
        assert!(cauchy_kernel(Complex64::new(0.0, 1.0)).is_err());

        assert!((poisson_kernel(1.0, 0.0).unwrap() - 1.0 / PI).abs() < 1e-16);
        assert_eq!(poisson_kernel(0.3, 2.0).unwrap(), poisson_kernel(0.3, -2.0).unwrap());
        assert!(poisson_kernel(0.0, 1.0).is_err());
        for (x, y) in [(0.1, 3.0), (2.0, -1.0), (5.0, 0.0)] {
            let (a, b) = (poisson_kernel(x, y).unwrap(), poisson_from_cauchy(x, y).unwrap());
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn poisson_mass_over_a_finite_window() {
        let x = 0.5;
        let grid = UniformGrid::symmetric(1e3 * x, 0.01).unwrap();
        let mass = grid.integrate(|y| poisson_kernel(x, y).unwrap());
        // arctangent antiderivative: (2/π) atan(L/x)
        let exact = 2.0 / PI * (1e3f64).atan();
        assert!((mass - exact).abs() < 1e-10);
        assert!((mass - 1.0).abs() > 6e-4);
    }

    #[test]
    fn constant_synthesis_has_elementary_form() {
        let c = 1.7;
        let s = HalfLineSpectrum::from_fn(30.0, 30_001, ImaginaryUnit::I, |t| {
            Quaternion::real(if t > -30.0 { c } else { 0.0 })
        })
        .unwrap();
        for x in [1.0, 2.5] {
            let v = synthesize_hardy(&s, Quaternion::real(x)).unwrap();
            let exact = c * (1.0 - (-30.0 * x).exp()) / ((2.0 * PI).sqrt() * x);
            // h²/12 endpoint term of the trapezoid rule at t = 0
            assert!((v.w - exact).abs() < 1e-6, "{} vs {exact}", v.w);
        }
        let zero = HalfLineSpectrum::from_fn(30.0, 11, ImaginaryUnit::I, |_| Quaternion::ZERO).unwrap();
        assert_eq!(synthesize_hardy(&zero, Quaternion::ONE).unwrap(), Quaternion::ZERO);
        assert!(matches!(synthesize_hardy(&zero, Quaternion::new(0.5, 1.0, 0.0, 0.0)), Err(Error::Truncation(_))));
        assert!(matches!(synthesize_hardy(&zero, Quaternion::new(-1.0, 1.0, 0.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn undecayed_spectra_are_rejected() {
        let r = HalfLineSpectrum::from_fn(5.0, 51, ImaginaryUnit::I, |t| Quaternion::real((0.1 * t).exp()));
        assert!(matches!(r, Err(Error::Truncation(_))));
    }

    #[test]
    fn synthesis_matches_closed_form_and_is_regular() {
        let f = HardyTestFunction::random(&mut rng(11), 3, 4, false);
        let s = f.half_line_spectrum(40.0, 1601, ImaginaryUnit::J).unwrap();
        let h = HardyFunction { spectrum: s };
        for q in [Quaternion::new(1.0, 0.0, 0.0, 2.0), Quaternion::new(0.8, 1.0, -1.0, 0.5)] {
            assert!((h.eval(q) - f.exact(q)).norm() < 1e-9);
        }
        let u = ImaginaryUnit::normalized(1.0, 2.0, 2.0).unwrap();
        let at = SlicePoint { re: 1.2, im: 0.3, unit: u };
        assert!(cr_order(&h, u, at, 1e-2).unwrap() > 1.9);
        assert!(h.eval(Quaternion::new(0.1, 1.0, 0.0, 0.0)).w.is_nan());
    }

    #[test]
    fn three_routes_agree() {
        let grids = HardyGrids::new(64.0, 1.0 / 16.0, 40.0).unwrap();
        let f = HardyTestFunction::random(&mut rng(2), 2, 4, false);
        let s = f.half_line_spectrum(grids.cutoff, grids.spectrum_nodes, ImaginaryUnit::I).unwrap();
        let trace = boundary_trace(&s, ImaginaryUnit::I, grids.trace).unwrap();
        for q in [Quaternion::new(1.0, 0.0, 0.0, 2.0), Quaternion::new(0.8, 0.5, 1.0, -0.3)] {
            let a = synthesize_hardy(&s, q).unwrap();
            let b = cauchy_extend(&trace, q).unwrap();
            let c = poisson_extend(&trace, q).unwrap();
            let d = poisson_extend_split(&trace, q).unwrap();
            assert!((a - b).norm() < 1e-5 && (a - c).norm() < 1e-5 && (c - d).norm() < 1e-14);
            assert!((a - f.exact(q)).norm() < 1e-8);
        }
    }

    #[test]
    fn poisson_examples() {
        let grid = UniformGrid::symmetric(50.0, 0.05).unwrap();
        let one = BoundaryTrace::new(ImaginaryUnit::I, LineSamples::from_fn(grid, |_| Quaternion::ONE).unwrap()).unwrap();
        for q in [Quaternion::new(0.5, 0.0, 3.0, 0.0), Quaternion::new(2.0, 1.0, 1.0, 1.0)] {
            assert!((poisson_extend(&one, q).unwrap() - Quaternion::ONE).norm() < 1e-12);
        }

        // boundary values of 1/(2π(z+1)) on a long window
        let grid = UniformGrid::symmetric(500.0, 0.05).unwrap();
        let k = |q: Quaternion| {
            let p = q.split();
            p.unit.lift(cauchy_kernel(Complex64::new(p.re + 1.0, p.im)).unwrap())
        };
        let trace = BoundaryTrace::new(ImaginaryUnit::I, LineSamples::from_fn(grid, |y| k(ImaginaryUnit::I.at(0.0, y))).unwrap()).unwrap();
        for q in [Quaternion::new(1.0, 0.5, 0.0, 0.0), Quaternion::new(0.7, 0.0, -1.0, 2.0)] {
            assert!((poisson_extend(&trace, q).unwrap() - k(q)).norm() < 1e-6);
        }
        // the 1/y decay of this trace leaks a few percent past the first bin
        let coarse = UniformGrid::symmetric(200.0, 0.1).unwrap();
        let trace = BoundaryTrace::new(ImaginaryUnit::I, LineSamples::from_fn(coarse, |y| k(ImaginaryUnit::I.at(0.0, y))).unwrap()).unwrap();
        assert!(hardy_membership(&trace, 2.0, 5e-2).unwrap());
        assert!(!hardy_membership(&trace, 2.0, 1e-6).unwrap());

        let odd = BoundaryTrace::new(ImaginaryUnit::J, LineSamples::from_fn(grid, |y| Quaternion::real(y * (-y * y).exp())).unwrap()).unwrap();
        let up = poisson_extend(&odd, ImaginaryUnit::J.at(0.5, 0.8)).unwrap();
        let down = poisson_extend(&odd, ImaginaryUnit::J.at(0.5, -0.8)).unwrap();
        assert!((up + down).norm() < 1e-14);
        assert!(poisson_extend(&odd, Quaternion::J).is_err());
    }

    #[test]
    fn membership_examples() {
        let grids = HardyGrids::new(64.0, 1.0 / 16.0, 40.0).unwrap();
        let gauss = BoundaryTrace::new(ImaginaryUnit::I, LineSamples::from_fn(grids.trace, |y| Quaternion::real((-y * y).exp())).unwrap()).unwrap();
        assert!(!hardy_membership(&gauss, 2.0, 1e-6).unwrap());
        assert!(!hardy_membership(&gauss, 1.0, 1e-6).unwrap());
        let zero = BoundaryTrace::new(ImaginaryUnit::I, LineSamples::zeros(grids.trace).unwrap()).unwrap();
        assert!(hardy_membership(&zero, 2.0, 1e-6).unwrap());
        assert!(hardy_membership(&zero, 3.0, 1e-6).is_err());

        let f = HardyTestFunction::random(&mut rng(4), 2, 4, false);
        let s = f.half_line_spectrum(grids.cutoff, grids.spectrum_nodes, ImaginaryUnit::K).unwrap();
        let trace = boundary_trace(&s, ImaginaryUnit::K, grids.trace).unwrap();
        assert!(hardy_membership(&trace, 2.0, 1e-6).unwrap());
    }

    #[test]
    fn symmetric_extension() {
        let grids = HardyGrids::new(64.0, 1.0 / 16.0, 40.0).unwrap();
        let f = HardyTestFunction::random(&mut rng(8), 2, 4, true);
        let i = ImaginaryUnit::I;
        let tr = f.trace(i, grids.trace).unwrap();
        let a = LineSamples::from_fn(grids.trace, |y| Quaternion::real(f.exact(i.at(0.0, y)).w)).unwrap();
        let b = LineSamples::from_fn(grids.trace, |y| Quaternion::real(f.exact(i.at(0.0, y)).x)).unwrap();
        assert_eq!(tr.values[5].x, b.values[5].w);
        let ext = SymmetricExtension::new(&a, &b, i, 1e-6).unwrap();
        assert!(is_slice_preserving(&ext, 1e-10));
        for q in [Quaternion::new(1.0, 0.0, 2.0, 0.0), Quaternion::new(0.6, -0.3, 0.2, 0.9)] {
            assert!((ext.eval(q) - f.exact(q)).norm() < 1e-6);
            assert!((hardy_extend_symmetric(&a, &b, i, 1e-6, q).unwrap() - ext.eval(q)).norm() == 0.0);
        }
        let zero = LineSamples::zeros(grids.trace).unwrap();
        assert_eq!(hardy_extend_symmetric(&zero, &zero, i, 1e-6, Quaternion::ONE).unwrap(), Quaternion::ZERO);
        assert!(matches!(SymmetricExtension::new(&b, &a, i, 1e-6), Err(Error::Invariant(_))));
        let swapped: Vec<Quaternion> = b.values.iter().map(|v| -*v).collect();
        let flipped = LineSamples { values: swapped, ..b.clone() };
        assert!(matches!(SymmetricExtension::new(&a, &flipped, i, 1e-6), Err(Error::Invariant(_))));
    }

    #[test]
    fn transported_trace_is_the_other_boundary() {
        let grid = UniformGrid::symmetric(20.0, 0.25).unwrap();
        let f = HardyTestFunction::random(&mut rng(14), 2, 3, false);
        let (i, j) = (ImaginaryUnit::I, ImaginaryUnit::normalized(0.3, -1.0, 0.5).unwrap());
        let tr = BoundaryTrace::from_samples(f.trace(i, grid).unwrap()).unwrap();
        let moved = tr.transport(j).unwrap();
        let direct = f.trace(j, grid).unwrap();
        let gap = |a: &[Quaternion], b: &[Quaternion]| a.iter().zip(b).map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max);
        assert!(gap(&moved.values, &direct.values) < 1e-13);
        assert!(gap(&tr.transport(i).unwrap().values, &tr.values) < 1e-15);
    }

    #[test]
    fn gauss_legendre_rule() {
        let (x, w) = gauss_legendre(16);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let int: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((int - 2.0 / 31.0).abs() < 1e-14);
    }

    /// Closed Laplace transform of the kernel written with product-to-sum
    /// identities.
    fn rk_oracle(q1: Quaternion, q2: Quaternion) -> Quaternion {
        let (p1, p2) = (q1.split(), q2.split());
        let s = p1.re + p2.re;
        let lc = |w: f64| s / (s * s + w * w);
        let ls = |w: f64| w / (s * s + w * w);
        let (a, b) = (p1.im, p2.im);
        let cc = 0.5 * (lc(a - b) + lc(a + b));
        let ss = 0.5 * (lc(a - b) - lc(a + b));
        let cs = 0.5 * (ls(a + b) - ls(a - b));
        let sc = 0.5 * (ls(a + b) + ls(a - b));
        let (u1, u2) = (p1.unit.as_quaternion(), p2.unit.as_quaternion());
        Quaternion::real(cc) + u2 * cs - u1 * sc - u1 * u2 * ss
    }

    #[test]
    fn reproducing_kernel_examples() {
        let k = rk_halfspace(Quaternion::ONE, Quaternion::ONE).unwrap();
        assert!((k - Quaternion::real(0.5)).norm() < 1e-10);
        let z = ImaginaryUnit::J.at(1.5, 2.0);
        let k = rk_halfspace(z, z).unwrap();
        assert!((k - Quaternion::real(1.0 / 3.0)).norm() < 1e-10);
        let k = rk_halfspace(z, z.conj()).unwrap();
        let half_inv = (z * 2.0).inverse().unwrap();
        assert!((k - half_inv).norm() < 1e-10);
        for (q1, q2) in [
            (Quaternion::new(0.5, 1.0, 2.0, 0.0), Quaternion::new(0.2, 0.0, -3.0, 1.0)),
            (Quaternion::new(2.0, 0.0, 0.0, 5.0), Quaternion::new(0.0, 7.0, 0.0, 0.0)),
        ] {
            assert!((rk_halfspace(q1, q2).unwrap() - rk_oracle(q1, q2)).norm() < 1e-12);
        }
        assert!(rk_halfspace(Quaternion::ZERO, Quaternion::ONE).is_err());
    }

    #[test]
    fn kernel_reproduces_hardy_element() {
        let grid = UniformGrid::symmetric(30.0, 1.0 / 8.0).unwrap();
        let f = HardyTestFunction::random(&mut rng(9), 2, 4, false);
        let u = ImaginaryUnit::normalized(0.0, 1.0, 1.0).unwrap();
        let trace = BoundaryTrace::from_samples(f.trace(u, grid).unwrap()).unwrap();
        let q = Quaternion::new(2.0, 1.0, 0.0, 0.0);
        assert!((rk_reproduce(&trace, q).unwrap() - f.exact(q)).norm() < 1e-5);
    }

    #[test]
    fn semigroup_and_boundary_recovery() {
        let grids = HardyGrids::new(64.0, 1.0 / 16.0, 40.0).unwrap();
        let f = HardyTestFunction::random(&mut rng(12), 2, 4, false);
        let trace = f.trace(ImaginaryUnit::I, grids.trace).unwrap();
        let trace = BoundaryTrace::from_samples(trace).unwrap();
        let x2 = 0.5;
        let lifted = LineSamples::from_fn(grids.trace, |y| poisson_extend(&trace, ImaginaryUnit::I.at(x2, y)).unwrap()).unwrap();
        let lifted = BoundaryTrace::new(ImaginaryUnit::I, lifted).unwrap();
        for q in [ImaginaryUnit::I.at(0.75, 1.0), Quaternion::new(1.0, 0.0, 0.3, -0.2)] {
            let two = poisson_extend(&lifted, q).unwrap();
            let one = poisson_extend(&trace, q + Quaternion::real(x2)).unwrap();
            assert!((two - one).norm() < 1e-5);
        }
        let errs = ntbl_error_sequence(&trace, &[1e-1, 1e-2, 1e-3]).unwrap();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }
}

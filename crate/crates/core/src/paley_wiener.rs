//! Band-limited functions on ℍ synthesized from a spectrum on `[-A, A]`:
//!
//! `f(x + Iy) = (2π)^{-1/2} ∫_{-A}^{A} e^{I(x+Iy)t} S(t) dt`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::{LineSamples, Spectrum, UniformGrid};
use crate::qft::{cos_sin_sums, qft_left_on, support_radius, INV_SQRT_2PI};
use crate::quaternion::{sinc_complex, ImaginaryUnit, Quaternion};
use crate::slice::{represent, SliceFunction};
use crate::sum::{pairwise_map_by, QPair};

/// Minimum quadrature density accepted by [`synthesize_compact`].
pub const MIN_NODES_PER_UNIT_BAND: f64 = 8.0;

/// Largest `|q|` accepted by [`growth_check`].
pub const GROWTH_CHECK_RADIUS: f64 = 10.0;

/// Slack allowed on the growth ratio.
pub const GROWTH_SLACK: f64 = 1e-6;

/// A spectrum supported in `[-band, band]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompactSpectrum {
    pub band: f64,
    pub grid: UniformGrid,
    pub unit: ImaginaryUnit,
    pub values: Vec<Quaternion>,
}

impl CompactSpectrum {
    pub fn new(band: f64, n: usize, unit: ImaginaryUnit, values: Vec<Quaternion>) -> Result<Self> {
        let s = Self {
            band,
            grid: UniformGrid::new(-band, band, n)?,
            unit,
            values,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(band: f64, n: usize, unit: ImaginaryUnit, f: impl Fn(f64) -> Quaternion) -> Result<Self> {
        let grid = UniformGrid::new(-band, band, n)?;
        Self::new(band, n, unit, (0..n).map(|i| f(grid.node(i))).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.band > 0.0 && self.band.is_finite()) {
            return Err(invalid("band must be positive and finite"));
        }
        let tol = 1e-12 * self.band;
        if (self.grid.min + self.band).abs() > tol || (self.grid.max - self.band).abs() > tol {
            return Err(invalid("compact spectrum grid must cover exactly [-band, band]"));
        }
        self.as_spectrum().validate()
    }

    pub fn as_spectrum(&self) -> Spectrum {
        Spectrum {
            grid: self.grid,
            unit: self.unit,
            values: self.values.clone(),
        }
    }

    pub fn l2_norm(&self) -> f64 {
        self.as_spectrum().l2_norm_sqr().sqrt()
    }

    /// `√(A/π)·‖S‖₂`, the growth constant of the synthesized function.
    pub fn growth_constant(&self) -> f64 {
        (self.band / PI).sqrt() * self.l2_norm()
    }
}

/// A band-limited slice regular function backed by its spectrum.
#[derive(Debug, Clone)]
pub struct PwFunction {
    spectrum: CompactSpectrum,
}

pub fn synthesize_compact(spectrum: &CompactSpectrum) -> Result<PwFunction> {
    spectrum.validate()?;
    let density = (spectrum.grid.n - 1) as f64 / (2.0 * spectrum.band);
    if density < MIN_NODES_PER_UNIT_BAND {
        return Err(invalid(format!(
            "{density:.2} nodes per unit bandwidth, need at least {MIN_NODES_PER_UNIT_BAND}"
        )));
    }
    Ok(PwFunction {
        spectrum: spectrum.clone(),
    })
}

impl PwFunction {
    pub fn spectrum(&self) -> &CompactSpectrum {
        &self.spectrum
    }

    pub fn band(&self) -> f64 {
        self.spectrum.band
    }

    /// Value at `x + I₀ y` on the slice of the defining unit.
    pub fn eval_on_defining_slice(&self, x: f64, y: f64) -> Quaternion {
        let s = &self.spectrum;
        let QPair(c, sn) = pairwise_map_by(s.grid.n, |m| {
            let t = s.grid.node(m);
            let (sin, cos) = (x * t).sin_cos();
            let wv = s.values[m] * (s.grid.weight(m) * (-y * t).exp());
            QPair(wv * cos, wv * sin)
        });
        (c + s.unit.as_quaternion() * sn) * INV_SQRT_2PI
    }

    /// Evaluation through the spectrum re-expressed for the query unit,
    /// `S_I(t) = E(t) + I B(t)` with `E` the even part of `S` and
    /// `B = −I₀·(odd part)`.
    pub fn eval_by_components(&self, q: Quaternion) -> Quaternion {
        let s = &self.spectrum;
        let p = q.split();
        let i = p.unit.as_quaternion();
        let i0 = s.unit.as_quaternion();
        let QPair(c, sn) = pairwise_map_by(s.grid.n, |m| {
            let t = s.grid.node(m);
            let (a, b) = (s.values[m], s.values[s.grid.mirror(m)]);
            let even = (a + b) * 0.5;
            let odd = (a - b) * 0.5;
            let sm = even - i * (i0 * odd);
            let (sin, cos) = (p.re * t).sin_cos();
            let wv = sm * (s.grid.weight(m) * (-p.im * t).exp());
            QPair(wv * cos, wv * sin)
        });
        (c + i * sn) * INV_SQRT_2PI
    }

    /// Samples of the restriction to the real line.
    pub fn sample_line(&self, grid: UniformGrid) -> Result<LineSamples> {
        let s = &self.spectrum;
        let u = s.unit.as_quaternion();
        LineSamples::from_fn(grid, |x| {
            let QPair(c, sn) = cos_sin_sums(&s.grid, &s.values, x);
            (c + u * sn) * INV_SQRT_2PI
        })
    }
}

impl SliceFunction for PwFunction {
    fn eval(&self, q: Quaternion) -> Quaternion {
        let p = q.split();
        let unit = self.spectrum.unit;
        if p.im == 0.0 || p.unit == unit {
            return self.eval_on_defining_slice(p.re, p.im);
        }
        represent(
            self.eval_on_defining_slice(p.re, p.im),
            self.eval_on_defining_slice(p.re, -p.im),
            unit,
            p.unit,
        )
    }
}

/// Per-point ratios `|f(q)| / (√(A/π)‖S‖₂ e^{A|im q|})`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthReport {
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub pass: bool,
}

pub fn growth_check(f: &PwFunction, points: &[Quaternion]) -> Result<GrowthReport> {
    let c = f.spectrum.growth_constant();
    let a = f.band();
    let mut ratios = Vec::with_capacity(points.len());
    for &q in points {
        if !(q.norm() <= GROWTH_CHECK_RADIUS) {
            return Err(Error::Domain(format!("growth check needs |q| ≤ {GROWTH_CHECK_RADIUS}, got {q}")));
        }
        let v = f.eval(q).norm();
        let bound = c * (a * q.imag_norm()).exp();
        ratios.push(if v == 0.0 { 0.0 } else { v / bound });
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(GrowthReport {
        pass: max_ratio <= 1.0 + GROWTH_SLACK,
        ratios,
        max_ratio,
    })
}

/// Probe units used by [`pw_membership`].
pub fn membership_units() -> [ImaginaryUnit; 2] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [
        ImaginaryUnit::I,
        ImaginaryUnit::new(0.0, r, r).expect("(j+k)/√2 is a unit"),
    ]
}

/// Frequency grid used to analyse line samples against a claimed band: step
/// `π/L` for a line of half-extent `L`, covering `2A` plus eight bins, capped
/// at the sampling band.
pub fn membership_frequency_grid(line: &UniformGrid, band: f64) -> Result<UniformGrid> {
    line.validate()?;
    if line.n < 2 {
        return Err(invalid("line samples need at least two nodes"));
    }
    let half = 0.5 * (line.max - line.min);
    let dt = PI / half;
    let nyquist = PI / line.step();
    let reach = (2.0 * band + 8.0 * dt).min(nyquist);
    let bins = (reach / dt).floor().max(1.0);
    UniformGrid::new(-bins * dt, bins * dt, 2 * bins as usize + 1)
}

/// Estimated support radius of the spectrum of line samples along `unit`,
/// thresholded at `tol·max|S|`, on [`membership_frequency_grid`].
pub fn line_support_radius(f: &LineSamples, band: f64, unit: ImaginaryUnit, tol: f64) -> Result<(f64, f64)> {
    let freq = membership_frequency_grid(&f.grid, band)?;
    let s = qft_left_on(f, unit, freq)?;
    let floor = tol * s.max_abs();
    Ok((support_radius(&s, floor), freq.step()))
}

/// Whether line samples look band-limited to `[-A, A]`: along two probe
/// units the spectrum stays below `tol·max|S|` beyond `A` plus one bin.
pub fn pw_membership(f: &LineSamples, band: f64, tol: f64) -> Result<bool> {
    if !(band > 0.0 && tol > 0.0) {
        return Err(invalid("band and tolerance must be positive"));
    }
    for unit in membership_units() {
        let (radius, bin) = line_support_radius(f, band, unit, tol)?;
        if radius > band + bin * (1.0 + 1e-9) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(A/π) ∫ sinc((A/π)(q − t)) f(t) dt` over the sampled line.
pub fn reproduce(samples: &LineSamples, band: f64, q: Quaternion) -> Result<Quaternion> {
    samples.validate()?;
    if !(band > 0.0) {
        return Err(invalid("band must be positive"));
    }
    let g = &samples.grid;
    let centre = 0.5 * (g.min + g.max);
    let half = 0.5 * (g.max - g.min);
    if (q.w - centre).abs() > 0.5 * half {
        return Err(Error::Domain(format!(
            "re(q) = {} is too close to the edge of the sampled window [{}, {}]",
            q.w, g.min, g.max
        )));
    }
    let p = q.split();
    let scale = band / PI;
    let QPair(re, im) = pairwise_map_by(g.n, |i| {
        let z = Complex64::new(scale * (p.re - g.node(i)), scale * p.im);
        let k = sinc_complex(z);
        let wv = samples.values[i] * g.weight(i);
        QPair(wv * k.re, wv * k.im)
    });
    Ok((re + p.unit.as_quaternion() * im) * scale)
}

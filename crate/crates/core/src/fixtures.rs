//! Seeded test data: random band-limited spectra and Hardy-space functions
//! with closed forms.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::grid::{LineSamples, UniformGrid};
use crate::hardy::HalfLineSpectrum;
use crate::paley_wiener::CompactSpectrum;
use crate::qft::INV_SQRT_2PI;
use crate::quaternion::{sinc_q, ImaginaryUnit, Quaternion};
use crate::slice::{Domain, SliceFunction};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[-scale, scale]`.
pub fn random_quaternion(rng: &mut TestRng, scale: f64) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
    )
}

/// Uniform on the unit sphere (rejection from the cube).
pub fn random_unit(rng: &mut TestRng) -> ImaginaryUnit {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if (0.01..=1.0).contains(&n2) {
            return ImaginaryUnit::normalized(v[0], v[1], v[2]).expect("nonzero vector");
        }
    }
}

/// Point `x + I y` with `x` in `xs`, `y` in `ys` and a random unit.
pub fn random_point(rng: &mut TestRng, xs: (f64, f64), ys: (f64, f64)) -> Quaternion {
    let x = rng.gen_range(xs.0..=xs.1);
    let y = rng.gen_range(ys.0..=ys.1);
    random_unit(rng).at(x, y)
}

/// Node count giving a spectrum grid on `[-band, band]` with step at most `step`.
pub fn nodes_for_step(band: f64, step: f64) -> usize {
    (2.0 * band / step).ceil() as usize + 1
}

/// A random smooth spectrum on `[-band, band]`:
/// `(1 − (t/A)²)^order · Σ_j c_j cos(ω_j t + φ_j)` with quaternion `c_j`.
pub fn random_compact_spectrum(
    rng: &mut TestRng,
    band: f64,
    n: usize,
    unit: ImaginaryUnit,
    order: i32,
) -> Result<CompactSpectrum> {
    let terms: Vec<(Quaternion, f64, f64)> = (0..3)
        .map(|_| (random_quaternion(rng, 1.0), rng.gen_range(0.0..3.0), rng.gen_range(0.0..2.0 * PI)))
        .collect();
    CompactSpectrum::from_fn(band, n, unit, |t| {
        let window = (1.0 - (t / band).powi(2)).max(0.0).powi(order);
        terms.iter().map(|(c, w, p)| *c * (w * t + p).cos()).sum::<Quaternion>() * window
    })
}

/// A random real, even spectrum; it synthesizes a slice-preserving function.
pub fn random_real_even_spectrum(
    rng: &mut TestRng,
    band: f64,
    n: usize,
    unit: ImaginaryUnit,
    order: i32,
) -> Result<CompactSpectrum> {
    let terms: Vec<(f64, f64)> = (0..3).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(0.0..3.0))).collect();
    CompactSpectrum::from_fn(band, n, unit, |t| {
        let window = (1.0 - (t / band).powi(2)).max(0.0).powi(order);
        Quaternion::real(terms.iter().map(|(c, w)| c * (w * t).cos()).sum::<f64>() * window)
    })
}

/// `f(q) = Σ_j sinc(A(q − s_j)/(4π))⁴ c_j`: band-limited to `[-A, A]` in
/// closed form, decaying like `|x|^{-4}` on the line.
#[derive(Debug, Clone, PartialEq)]
pub struct SincPowerFunction {
    pub band: f64,
    pub terms: Vec<(f64, Quaternion)>,
}

impl SincPowerFunction {
    /// Shifts in `[-3, 3]`; quaternion coefficients unless `real`.
    pub fn random(rng: &mut TestRng, band: f64, count: usize, real: bool) -> Self {
        let terms = (0..count)
            .map(|_| {
                let s = rng.gen_range(-3.0..3.0);
                let c = if real {
                    Quaternion::real(rng.gen_range(-1.0..1.0))
                } else {
                    random_quaternion(rng, 1.0)
                };
                (s, c)
            })
            .collect();
        Self { band, terms }
    }

    pub fn eval_at(&self, q: Quaternion) -> Quaternion {
        let a = self.band / (4.0 * PI);
        self.terms
            .iter()
            .map(|(s, c)| {
                let k = sinc_q((q - Quaternion::real(*s)) * a);
                let k2 = k * k;
                k2 * k2 * *c
            })
            .sum()
    }
}

impl SliceFunction for SincPowerFunction {
    fn eval(&self, q: Quaternion) -> Quaternion {
        self.eval_at(q)
    }
}

/// `f(q) = (2π)^{-1/2} Σ_j (−1)^m m! (q + a_j)^{-(m+1)} c_j`, a Hardy-space
/// function whose half-line spectrum is `Σ_j t^m e^{a_j t} c_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyTestFunction {
    pub order: i32,
    pub terms: Vec<(f64, Quaternion)>,
}

impl HardyTestFunction {
    /// Random decay rates in `[1, 2.5]`; quaternion coefficients unless
    /// `real` asks for a slice-preserving function.
    pub fn random(rng: &mut TestRng, count: usize, order: i32, real: bool) -> Self {
        let terms = (0..count)
            .map(|_| {
                let a = rng.gen_range(1.0..2.5);
                let c = if real {
                    Quaternion::real(rng.gen_range(-1.0..1.0))
                } else {
                    random_quaternion(rng, 1.0)
                };
                (a, c)
            })
            .collect();
        Self { order, terms }
    }

    pub fn spectrum_at(&self, t: f64) -> Quaternion {
        if t > 0.0 {
            return Quaternion::ZERO;
        }
        self.terms
            .iter()
            .map(|(a, c)| *c * (t.powi(self.order) * (a * t).exp()))
            .sum()
    }

    /// The spectrum on `[-cutoff, 0]` with `n` nodes.
    pub fn half_line_spectrum(&self, cutoff: f64, n: usize, unit: ImaginaryUnit) -> Result<HalfLineSpectrum> {
        HalfLineSpectrum::from_fn(cutoff, n, unit, |t| self.spectrum_at(t))
    }

    /// Closed-form value; also valid on the boundary `re q = 0`.
    pub fn exact(&self, q: Quaternion) -> Quaternion {
        let p = q.split();
        let m = self.order;
        let fact: f64 = (1..=m).map(f64::from).product();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        self.terms
            .iter()
            .map(|(a, c)| {
                let z = Complex64::new(p.re + a, p.im).powi(-(m + 1)) * (sign * fact * INV_SQRT_2PI);
                p.unit.lift(z) * *c
            })
            .sum()
    }

    /// Boundary values `y ↦ f(I y)`.
    pub fn trace(&self, unit: ImaginaryUnit, grid: UniformGrid) -> Result<LineSamples> {
        Ok(LineSamples::from_fn(grid, |y| self.exact(unit.at(0.0, y)))?.with_unit(unit))
    }
}

impl SliceFunction for HardyTestFunction {
    fn eval(&self, q: Quaternion) -> Quaternion {
        self.exact(q)
    }

    fn domain(&self) -> Domain {
        Domain::RightHalf
    }
}

/// Grids for Hardy experiments: a trace grid on `[-L, L]` and the matching
/// half-line spectrum grid with step `π/L` reaching at least `cutoff`.
#[derive(Debug, Clone, Copy)]
pub struct HardyGrids {
    pub trace: UniformGrid,
    pub cutoff: f64,
    pub spectrum_nodes: usize,
}

impl HardyGrids {
    pub fn new(half_extent: f64, step: f64, min_cutoff: f64) -> Result<Self> {
        let trace = UniformGrid::symmetric(half_extent, step)?;
        let dt = PI / half_extent;
        let bins = (min_cutoff / dt).ceil() as usize;
        Ok(Self {
            trace,
            cutoff: bins as f64 * dt,
            spectrum_nodes: bins + 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::{cr_order, is_slice_preserving};
    use crate::SlicePoint;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_compact_spectrum(&mut rng(7), 2.0, 101, ImaginaryUnit::I, 4).unwrap();
        let b = random_compact_spectrum(&mut rng(7), 2.0, 101, ImaginaryUnit::I, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values[0], Quaternion::ZERO);
    }

    #[test]
    fn hardy_closed_form_matches_its_laplace_integral() {
        let f = HardyTestFunction::random(&mut rng(3), 2, 4, false);
        let q = Quaternion::new(0.8, 0.3, -1.1, 0.4);
        let p = q.split();
        // brute-force midpoint rule of (2π)^{-1/2} ∫_{-60}^{0} e^{qt} S(t) dt
        let n = 600_000;
        let h = 60.0 / n as f64;
        let mut acc = Quaternion::ZERO;
        for k in 0..n {
            let t = -60.0 + (k as f64 + 0.5) * h;
            let e = p.unit.at((p.im * t).cos(), (p.im * t).sin()) * (p.re * t).exp();
            acc += e * f.spectrum_at(t) * h;
        }
        assert!((acc * INV_SQRT_2PI - f.exact(q)).norm() < 1e-9);
    }

    #[test]
    fn hardy_closed_form_is_slice_regular() {
        let f = HardyTestFunction::random(&mut rng(5), 3, 3, false);
        let u = random_unit(&mut rng(6));
        let at = SlicePoint { re: 0.7, im: -0.4, unit: u };
        assert!(cr_order(&f, u, at, 1e-2).unwrap() > 1.9);
        let g = HardyTestFunction::random(&mut rng(5), 3, 3, true);
        assert!(is_slice_preserving(&g, 1e-12));
        assert!(!is_slice_preserving(&f, 1e-3));
    }
}

//! The left-sided quaternion Fourier transform on the line
//!
//! `𝓕_I(F)(t) = (2π)^{-1/2} ∫ e^{-Ixt} F(x) dx`
//!
//! discretized with the composite trapezoid rule. The kernel multiplies the
//! data from the left. Writing `e^{-Ixt} = cos(xt) − I sin(xt)` splits every
//! transform into two unit-independent real-kernel sums, which is also how
//! spectra are moved between units.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::grid::{LineSamples, Spectrum, UniformGrid};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::sum::{pairwise_map_by, QPair};

pub(crate) const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// `(Σ w cos(s·t) v, Σ w sin(s·t) v)` over the nodes `s` of `grid`.
pub(crate) fn cos_sin_sums(grid: &UniformGrid, values: &[Quaternion], t: f64) -> QPair {
    pairwise_map_by(grid.n, |i| {
        let (s, c) = (grid.node(i) * t).sin_cos();
        let wv = values[i] * grid.weight(i);
        QPair(wv * c, wv * s)
    })
}

/// The frequency grid paired with a line grid: the full band
/// `[-π/Δx, π/Δx]` with as many nodes as the line, so that `Δt = π/L` when
/// the line is `[-L, L]`.
pub fn default_frequency_grid(line: &UniformGrid) -> Result<UniformGrid> {
    dual_grid(line)
}

/// The line grid paired with a frequency grid (the inverse of
/// [`default_frequency_grid`]).
pub fn default_line_grid(freq: &UniformGrid) -> Result<UniformGrid> {
    dual_grid(freq)
}

fn dual_grid(g: &UniformGrid) -> Result<UniformGrid> {
    g.validate()?;
    if g.n < 2 {
        return Err(invalid("need at least two nodes to derive a dual grid"));
    }
    let band = PI / g.step();
    UniformGrid::new(-band, band, g.n)
}

/// Left-sided transform on the default frequency grid.
pub fn qft_left(f: &LineSamples, unit: ImaginaryUnit) -> Result<Spectrum> {
    qft_left_on(f, unit, default_frequency_grid(&f.grid)?)
}

/// Left-sided transform evaluated at the nodes of `freq`.
pub fn qft_left_on(f: &LineSamples, unit: ImaginaryUnit, freq: UniformGrid) -> Result<Spectrum> {
    f.validate()?;
    freq.validate()?;
    let u = unit.as_quaternion();
    let values = (0..freq.n)
        .map(|m| {
            let QPair(c, s) = cos_sin_sums(&f.grid, &f.values, freq.node(m));
            (c - u * s) * INV_SQRT_2PI
        })
        .collect();
    Spectrum::new(freq, unit, values)
}

/// Right-sided counterpart `(2π)^{-1/2} ∫ F(x) e^{-Ixt} dx`; it differs from
/// [`qft_left`] whenever the data does not commute with the unit.
pub fn qft_right_on(f: &LineSamples, unit: ImaginaryUnit, freq: UniformGrid) -> Result<Spectrum> {
    f.validate()?;
    freq.validate()?;
    let u = unit.as_quaternion();
    let values = (0..freq.n)
        .map(|m| {
            let QPair(c, s) = cos_sin_sums(&f.grid, &f.values, freq.node(m));
            (c - s * u) * INV_SQRT_2PI
        })
        .collect();
    Spectrum::new(freq, unit, values)
}

/// Inverse transform `(2π)^{-1/2} ∫ e^{Ixt} S(t) dt` on the default line grid.
pub fn iqft_left(s: &Spectrum) -> Result<LineSamples> {
    iqft_left_on(s, default_line_grid(&s.grid)?)
}

/// Inverse transform evaluated at the nodes of `line`.
pub fn iqft_left_on(s: &Spectrum, line: UniformGrid) -> Result<LineSamples> {
    s.validate()?;
    line.validate()?;
    let u = s.unit.as_quaternion();
    let values = (0..line.n)
        .map(|i| {
            let QPair(c, sn) = cos_sin_sums(&s.grid, &s.values, line.node(i));
            (c + u * sn) * INV_SQRT_2PI
        })
        .collect();
    Ok(LineSamples::new(line, values)?.with_unit(s.unit))
}

/// Re-expresses a spectrum taken with unit `I` as the spectrum with unit `J`:
/// `½[S(t) + S(−t)] + ½ J I [S(−t) − S(t)]`.
pub fn transfer_spectrum(s: &Spectrum, to: ImaginaryUnit) -> Result<Spectrum> {
    s.validate()?;
    s.grid.require_symmetric()?;
    let ji = to.as_quaternion() * s.unit.as_quaternion();
    let values = (0..s.grid.n)
        .map(|m| {
            let (p, n) = (s.values[m], s.values[s.grid.mirror(m)]);
            (p + n) * 0.5 + ji * (n - p) * 0.5
        })
        .collect();
    Spectrum::new(s.grid, to, values)
}

/// Result of [`essential_ft`].
#[derive(Debug, Clone)]
pub struct EssentialFt {
    /// Spectrum computed along the first probe unit.
    pub spectrum: Spectrum,
    /// Largest nodewise disagreement between probe units.
    pub max_deviation: f64,
}

/// The unit-independent spectrum of a family of boundary traces.
///
/// Each trace carries its own unit and is transformed with that unit; the
/// transforms must agree within `tol`.
pub fn essential_ft(traces: &[LineSamples], tol: f64) -> Result<EssentialFt> {
    let first = traces.first().ok_or_else(|| invalid("no boundary traces supplied"))?;
    essential_ft_on(traces, default_frequency_grid(&first.grid)?, tol)
}

pub fn essential_ft_on(traces: &[LineSamples], freq: UniformGrid, tol: f64) -> Result<EssentialFt> {
    let report = essential_deviation(traces, freq)?;
    if report.max_deviation > tol {
        return Err(Error::Invariant(format!(
            "boundary traces disagree across units by {:e} (tolerance {tol:e})",
            report.max_deviation
        )));
    }
    Ok(report)
}

/// Like [`essential_ft_on`] but reports the deviation instead of enforcing it.
pub fn essential_deviation(traces: &[LineSamples], freq: UniformGrid) -> Result<EssentialFt> {
    let first = traces.first().ok_or_else(|| invalid("no boundary traces supplied"))?;
    let unit_of = |t: &LineSamples| t.unit.ok_or_else(|| invalid("boundary trace has no unit"));
    let spectrum = qft_left_on(first, unit_of(first)?, freq)?;
    let mut max_deviation: f64 = 0.0;
    for tr in &traces[1..] {
        let other = qft_left_on(tr, unit_of(tr)?, freq)?;
        for (a, b) in spectrum.values.iter().zip(&other.values) {
            max_deviation = max_deviation.max((*a - *b).norm());
        }
    }
    Ok(EssentialFt {
        spectrum,
        max_deviation,
    })
}

/// Smallest `R` with `|S(t)| ≤ tol` at every node `|t| > R`; infinite when an
/// outermost node already exceeds `tol`.
pub fn support_radius(s: &Spectrum, tol: f64) -> f64 {
    let above: Vec<usize> = (0..s.grid.n).filter(|&m| s.values[m].norm() > tol).collect();
    match (above.first(), above.last()) {
        (None, _) | (_, None) => 0.0,
        (Some(&lo), Some(&hi)) if lo == 0 || hi + 1 == s.grid.n => f64::INFINITY,
        (Some(&lo), Some(&hi)) => s.grid.node(lo).abs().max(s.grid.node(hi).abs()),
    }
}

/// Largest `|S(t)|` over nodes with `t > margin`.
pub fn positive_frequency_peak(s: &Spectrum, margin: f64) -> f64 {
    (0..s.grid.n)
        .filter(|&m| s.grid.node(m) > margin)
        .map(|m| s.values[m].norm())
        .fold(0.0, f64::max)
}

/// Whether the spectrum vanishes (within `tol`) on the positive half-line,
/// ignoring the first bin above zero.
pub fn support_halfline_check(s: &Spectrum, tol: f64) -> bool {
    positive_frequency_peak(s, s.grid.step()) <= tol
}

/// Discrete `(‖F‖², ‖S‖²)`.
pub fn plancherel_norm(f: &LineSamples, s: &Spectrum) -> (f64, f64) {
    (f.l2_norm_sqr(), s.l2_norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(extent: f64, step: f64, f: impl Fn(f64) -> Quaternion) -> LineSamples {
        LineSamples::from_fn(UniformGrid::symmetric(extent, step).unwrap(), f).unwrap()
    }

    fn gauss(x: f64) -> f64 {
        (-0.5 * x * x).exp()
    }

    #[test]
    fn box_spectrum() {
        let f = line(20.0, 1e-2, |x| Quaternion::real(if (-1.0..1.0).contains(&x) { 1.0 } else { 0.0 }));
        let s = qft_left_on(&f, ImaginaryUnit::I, UniformGrid::symmetric(10.0, 0.05).unwrap()).unwrap();
        let zero = s.values[s.grid.n / 2];
        assert!((zero.w - 2.0 * INV_SQRT_2PI).abs() < 1e-12);
        for (m, v) in s.values.iter().enumerate() {
            let t: f64 = s.grid.node(m);
            let exact = if t == 0.0 { 2.0 } else { 2.0 * t.sin() / t } * INV_SQRT_2PI;
            // half-open indicator sampled at step h: first-order in h·t
            assert!((v.w - exact).abs() < 5e-3 * (1.0 + t.abs()), "t={t}");
            assert!(v.y.abs() + v.z.abs() < 1e-15);
        }
    }

    #[test]
    fn zero_and_real_even_inputs() {
        let z = line(5.0, 0.1, |_| Quaternion::ZERO);
        assert!(qft_left(&z, ImaginaryUnit::J).unwrap().values.iter().all(|v| *v == Quaternion::ZERO));
        let f = line(12.0, 1e-2, |x| Quaternion::real(gauss(x)));
        let s = qft_left_on(&f, ImaginaryUnit::K, UniformGrid::symmetric(6.0, 0.1).unwrap()).unwrap();
        for m in 0..s.grid.n {
            let v = s.values[m];
            assert!(v.imag_norm() < 1e-15);
            assert!((v.w - gauss(s.grid.node(m))).abs() < 1e-12);
            assert_eq!(v.conj(), s.values[s.grid.mirror(m)]);
            assert!((v - s.values[s.grid.mirror(m)]).norm() < 1e-14);
        }
    }

    #[test]
    fn odd_gaussian_matches_analytic_and_transfers() {
        let f = line(12.0, 1e-2, |x| Quaternion::real(x * gauss(x)));
        let freq = UniformGrid::symmetric(6.0, 0.1).unwrap();
        let si = qft_left_on(&f, ImaginaryUnit::I, freq).unwrap();
        for m in 0..freq.n {
            let t = freq.node(m);
            let exact = ImaginaryUnit::I.at(0.0, -t * gauss(t));
            assert!((si.values[m] - exact).norm() < 1e-12);
        }
        let direct = qft_left_on(&f, ImaginaryUnit::J, freq).unwrap();
        let moved = transfer_spectrum(&si, ImaginaryUnit::J).unwrap();
        assert!(moved.max_deviation(&direct).unwrap() < 1e-10);
        let same = transfer_spectrum(&si, ImaginaryUnit::I).unwrap();
        assert!(same.max_deviation(&si).unwrap() < 1e-15);
    }

    #[test]
    fn transfer_requires_symmetric_grid() {
        let s = Spectrum::from_fn(UniformGrid::new(-1.0, 2.0, 4).unwrap(), ImaginaryUnit::I, |_| Quaternion::ONE).unwrap();
        assert!(matches!(transfer_spectrum(&s, ImaginaryUnit::J), Err(Error::AsymmetricGrid { .. })));
    }

    #[test]
    fn left_and_right_kernels_differ() {
        let f = line(8.0, 1e-2, |x| Quaternion::J * (x * gauss(x)));
        let freq = UniformGrid::symmetric(3.0, 0.5).unwrap();
        let l = qft_left_on(&f, ImaginaryUnit::I, freq).unwrap();
        let r = qft_right_on(&f, ImaginaryUnit::I, freq).unwrap();
        let gap = l.values.iter().zip(&r.values).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max);
        assert!(gap > 0.1);
    }

    #[test]
    fn round_trip_on_default_grids() {
        let bump = |x: f64| {
            let u = x / 5.0;
            if u.abs() < 1.0 { (-1.0 / (1.0 - u * u)).exp() } else { 0.0 }
        };
        let f = line(20.0, 1e-2, |x| Quaternion::new(1.0, -0.5, 2.0, 0.25) * bump(x) * (3.0 * x).cos());
        let s = qft_left(&f, ImaginaryUnit::normalized(1.0, 1.0, 1.0).unwrap()).unwrap();
        assert!((s.grid.step() - PI / 20.0).abs() < 1e-12);
        let back = iqft_left(&s).unwrap();
        let err = back.values.iter().zip(&f.values).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-6, "{err}");
        let (a, b) = plancherel_norm(&f, &s);
        assert!((a - b).abs() <= 1e-6 * a);
    }

    #[test]
    fn delta_spectrum_gives_constant() {
        let g = UniformGrid::symmetric(1.0, 0.1).unwrap();
        let s = Spectrum::from_fn(g, ImaginaryUnit::I, |t| {
            if t == 0.0 { Quaternion::real(10.0) } else { Quaternion::ZERO }
        })
        .unwrap();
        let f = iqft_left_on(&s, UniformGrid::symmetric(2.0, 0.5).unwrap()).unwrap();
        for v in f.values {
            assert!((v - Quaternion::real(INV_SQRT_2PI)).norm() < 1e-15);
        }
    }

    #[test]
    fn support_estimates() {
        let g = UniformGrid::symmetric(5.0, 0.01).unwrap();
        let boxed = Spectrum::from_fn(g, ImaginaryUnit::I, |t| Quaternion::real(if t.abs() <= 2.0 { 1.0 } else { 0.0 })).unwrap();
        assert!((support_radius(&boxed, 1e-6) - 2.0).abs() <= g.step());
        let zero = Spectrum::from_fn(g, ImaginaryUnit::I, |_| Quaternion::ZERO).unwrap();
        assert_eq!(support_radius(&zero, 1e-6), 0.0);
        let full = Spectrum::from_fn(g, ImaginaryUnit::I, |_| Quaternion::ONE).unwrap();
        assert_eq!(support_radius(&full, 1e-6), f64::INFINITY);

        let neg = Spectrum::from_fn(g, ImaginaryUnit::I, |t| {
            if t <= 0.0 { ImaginaryUnit::I.at((t).cos(), t.sin()) * t.exp() } else { Quaternion::ZERO }
        })
        .unwrap();
        assert!(support_halfline_check(&neg, 1e-12));
        let mirrored = Spectrum::from_fn(g, ImaginaryUnit::I, |t| neg.values[g.mirror(((t - g.min) / g.step()).round() as usize)]).unwrap();
        assert!(!support_halfline_check(&mirrored, 1e-3));
    }

    #[test]
    fn gaussian_plancherel() {
        let c = PI.powf(-0.25);
        let f = line(12.0, 1e-2, |x| Quaternion::real(c * gauss(x)));
        let s = qft_left(&f, ImaginaryUnit::J).unwrap();
        let (a, b) = plancherel_norm(&f, &s);
        assert!((a - 1.0).abs() < 1e-8 && (b - 1.0).abs() < 1e-8);
        let z = line(1.0, 0.5, |_| Quaternion::ZERO);
        assert_eq!(plancherel_norm(&z, &qft_left(&z, ImaginaryUnit::I).unwrap()), (0.0, 0.0));
    }

    #[test]
    fn essential_ft_rejects_and_accepts() {
        let g = UniformGrid::symmetric(8.0, 0.05).unwrap();
        let units = [ImaginaryUnit::I, ImaginaryUnit::J];
        let even: Vec<LineSamples> = units
            .iter()
            .map(|u| LineSamples::from_fn(g, |y| Quaternion::real(gauss(y))).unwrap().with_unit(*u))
            .collect();
        assert!(essential_ft(&even, 1e-8).is_ok());
        let slice_valued: Vec<LineSamples> = units
            .iter()
            .map(|u| LineSamples::from_fn(g, |y| u.at(0.0, y * gauss(y))).unwrap().with_unit(*u))
            .collect();
        assert!(essential_ft(&slice_valued, 1e-8).is_ok());
        let fixed: Vec<LineSamples> = units
            .iter()
            .map(|u| LineSamples::from_fn(g, |y| Quaternion::K * (y * gauss(y))).unwrap().with_unit(*u))
            .collect();
        assert!(matches!(essential_ft(&fixed, 1e-8), Err(Error::Invariant(_))));
    }
}

//! Sinc-series reconstruction of band-limited functions from their samples
//! at `πk/A`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grid::UniformGrid;
use crate::quaternion::{sinc_complex, sinc_q, Quaternion, SINC_SERIES_RADIUS};
use crate::slice::SliceFunction;
use crate::sum::{pairwise_map, pairwise_map_by, QPair};

pub const DEFAULT_TRUNCATION: usize = 200;
pub const DEFAULT_STRIP: f64 = 1.0;

/// Samples `f(πk/A)` for `k = -K..=K`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSet {
    pub band: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub values: Vec<Quaternion>,
}

impl SampleSet {
    pub fn new(band: f64, k: usize, values: Vec<Quaternion>) -> Result<Self> {
        let s = Self { band, k, values };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(band: f64, k: usize, f: impl Fn(f64) -> Quaternion) -> Result<Self> {
        if !(band.is_finite() && band > 0.0) {
            return Err(invalid(format!("band must be positive, got {band}")));
        }
        let values = (0..2 * k + 1).map(|i| f(node(band, i as i64 - k as i64))).collect();
        Self::new(band, k, values)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.band.is_finite() && self.band > 0.0) {
            return Err(invalid(format!("band must be positive, got {}", self.band)));
        }
        if self.values.len() != 2 * self.k + 1 {
            return Err(invalid(format!(
                "expected {} samples for K = {}, got {}",
                2 * self.k + 1,
                self.k,
                self.values.len()
            )));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("non-finite sample"));
        }
        Ok(())
    }

    pub fn node(&self, k: i64) -> f64 {
        node(self.band, k)
    }

    /// The stored sample at index `k`, `|k| ≤ K`.
    pub fn sample(&self, k: i64) -> Quaternion {
        self.values[(k + self.k as i64) as usize]
    }

    /// The central `2K' + 1` samples.
    pub fn truncate(&self, k: usize) -> Result<SampleSet> {
        if k > self.k {
            return Err(invalid(format!("cannot extend K = {} to {k}", self.k)));
        }
        let lo = self.k - k;
        Ok(SampleSet {
            band: self.band,
            k,
            values: self.values[lo..lo + 2 * k + 1].to_vec(),
        })
    }
}

fn node(band: f64, k: i64) -> f64 {
    PI * k as f64 / band
}

/// `sinc(z − k)` for `k = k0..k0+n`, sharing one `sin(πz)`.
struct ShiftedSinc {
    z: Complex64,
    n: i64,
    sin_r: Complex64,
}

impl ShiftedSinc {
    fn new(z: Complex64) -> Self {
        let n = z.re.round();
        let r = Complex64::new(z.re - n, z.im);
        Self {
            z,
            n: n as i64,
            sin_r: (PI * r).sin(),
        }
    }

    fn at(&self, k: i64) -> Complex64 {
        let w = self.z - k as f64;
        if w.norm() < SINC_SERIES_RADIUS {
            return sinc_complex(w);
        }
        let sign = if (self.n - k).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        self.sin_r * sign / (PI * w)
    }
}

/// `Σ_{|k|≤K} sinc(Aq/π − k) f(πk/A)`, the sinc factor on the left.
pub fn wks_reconstruct(s: &SampleSet, q: Quaternion) -> Quaternion {
    let p = q.split();
    let scale = s.band / PI;
    let sinc = ShiftedSinc::new(Complex64::new(p.re * scale, p.im * scale));
    let k0 = s.k as i64;
    let QPair(a, b) = pairwise_map_by(s.values.len(), |i| {
        let c = sinc.at(i as i64 - k0);
        let v = s.values[i];
        QPair(v * c.re, v * c.im)
    });
    a + p.unit.as_quaternion() * b
}

/// [`wks_reconstruct`] restricted to the strip `|im q| ≤ m`.
pub fn wks_reconstruct_checked(s: &SampleSet, q: Quaternion, m: f64) -> Result<Quaternion> {
    s.validate()?;
    if !q.is_finite() {
        return Err(invalid("non-finite query point"));
    }
    let im = q.imag_norm();
    if im > m {
        return Err(Error::Domain(format!("|im q| = {im} exceeds the strip bound {m}")));
    }
    Ok(wks_reconstruct(s, q))
}

/// Upper bound on the dropped terms `|k| > K` at `|im q| ≤ m`, from the
/// sinc p-sum bound `p′e^{pM′π}` with `M′ = Am/π` and the sample-tail
/// energy. Needs `1 < p ≤ 2` so the dual exponent dominates the ℓ² norm.
pub fn truncation_bound(band: f64, m: f64, p: f64, tail_energy: f64) -> Result<f64> {
    if !(p > 1.0 && p <= 2.0) {
        return Err(invalid(format!("exponent p must lie in (1, 2], got {p}")));
    }
    if !(m >= 0.0 && band > 0.0 && tail_energy >= 0.0) {
        return Err(invalid("band, strip bound and tail energy must be nonnegative"));
    }
    if tail_energy == 0.0 {
        return Ok(0.0);
    }
    let dual = p / (p - 1.0);
    let m_sinc = band * m / PI;
    let sinc_norm = (dual * (p * m_sinc * PI).exp()).powf(1.0 / p);
    Ok(sinc_norm * tail_energy.sqrt())
}

/// `Σ_{|k|>K} |f(πk/A)|²` extrapolated geometrically from the last decade
/// of samples. Infinite when the samples do not decay.
pub fn estimate_tail_energy(s: &SampleSet) -> f64 {
    let decade = (s.k / 10).max(4) & !1;
    if s.k < decade {
        return f64::INFINITY;
    }
    let e = |k: usize| s.sample(k as i64).norm_sqr() + s.sample(-(k as i64)).norm_sqr();
    let half = decade / 2;
    let late = pairwise_map(half, |j| e(s.k - j));
    let early = pairwise_map(half, |j| e(s.k - half - j));
    if late == 0.0 {
        return 0.0;
    }
    let ratio = late / early;
    if !(ratio < 1.0) {
        return f64::INFINITY;
    }
    late * ratio / (1.0 - ratio)
}

/// `(π/A) Σ_{|k|≤K} |f(πk/A)|²`.
pub fn sample_energy(s: &SampleSet) -> f64 {
    PI / s.band * pairwise_map(s.values.len(), |i| s.values[i].norm_sqr())
}

/// `Σ_{|k|≤K} |sinc(q − k)|^p`.
pub fn sinc_power_partial_sum(q: Quaternion, p: f64, k: usize) -> f64 {
    let k = k as i64;
    pairwise_map((2 * k + 1) as usize, |i| {
        sinc_q(q - Quaternion::real((i as i64 - k) as f64)).norm().powf(p)
    })
}

/// A line grid covering the samples with room for the sinc tails.
pub fn default_error_grid(s: &SampleSet) -> Result<UniformGrid> {
    let extent = 1.5 * node(s.band, s.k as i64) + 20.0;
    let step = (PI / (4.0 * s.band)).min(0.1);
    UniformGrid::symmetric(extent, step)
}

/// Discrete `L²(ℝ)` error of the series truncated at each `K` in `ks`.
pub fn l2_error_curve(f_true: &dyn SliceFunction, s: &SampleSet, ks: &[usize]) -> Result<Vec<f64>> {
    l2_error_curve_on(f_true, s, ks, &default_error_grid(s)?)
}

pub fn l2_error_curve_on(
    f_true: &dyn SliceFunction,
    s: &SampleSet,
    ks: &[usize],
    grid: &UniformGrid,
) -> Result<Vec<f64>> {
    s.validate()?;
    grid.validate()?;
    let exact: Vec<Quaternion> = grid.nodes().into_iter().map(|x| f_true.eval(Quaternion::real(x))).collect();
    ks.iter()
        .map(|&k| {
            let t = s.truncate(k)?;
            let e2 = pairwise_map(grid.len(), |i| {
                let x = grid.node(i);
                grid.weight(i) * (wks_reconstruct(&t, Quaternion::real(x)) - exact[i]).norm_sqr()
            });
            Ok(e2.sqrt())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_compact_spectrum, random_unit, rng, SincPowerFunction};
    use crate::paley_wiener::synthesize_compact;
    use crate::quaternion::ImaginaryUnit;

    fn sinc_samples(k: usize) -> SampleSet {
        SampleSet::from_fn(PI, k, |x| Quaternion::real(if x == 0.0 { 1.0 } else { 0.0 })).unwrap()
    }

    #[test]
    fn single_term_series_is_sinc() {
        let s = sinc_samples(10);
        for q in [Quaternion::new(0.3, 0.2, -0.5, 0.1), Quaternion::real(7.25), Quaternion::new(-2.0, 0.0, 1.5, 0.0)] {
            assert!((wks_reconstruct(&s, q) - sinc_q(q)).norm() < 1e-14);
        }
    }

    #[test]
    fn shifted_sinc_matches_direct_evaluation() {
        let z = Complex64::new(13.7, -0.8);
        let s = ShiftedSinc::new(z);
        for k in -20..=20 {
            let d = sinc_complex(z - k as f64);
            assert!((s.at(k) - d).norm() <= 1e-13 * d.norm().max(1.0), "k = {k}");
        }
    }

    #[test]
    fn nodes_are_interpolated() {
        let f = SincPowerFunction::random(&mut rng(1), 2.0, 3, false);
        let s = SampleSet::from_fn(2.0, 50, |x| f.eval_at(Quaternion::real(x))).unwrap();
        for m in -50..=50 {
            let q = Quaternion::real(s.node(m));
            assert!((wks_reconstruct(&s, q) - s.sample(m)).norm() < 1e-12);
        }
    }

    #[test]
    fn series_matches_synthesis_off_the_line() {
        let band = 2.0;
        let k = 200;
        let x_max = node(band, k as i64);
        let n = crate::fixtures::nodes_for_step(band, PI / (2.0 * x_max));
        let spec = random_compact_spectrum(&mut rng(2), band, n, ImaginaryUnit::I, 6).unwrap();
        let f = synthesize_compact(&spec).unwrap();
        let s = SampleSet::from_fn(band, k, |x| f.eval_on_defining_slice(x, 0.0)).unwrap();
        let q = Quaternion::new(0.3, 0.0, 0.4, 0.0);
        assert!((wks_reconstruct(&s, q) - f.eval(q)).norm() < 1e-6);
    }

    #[test]
    fn checked_reconstruction_guards_the_strip() {
        let s = sinc_samples(3);
        assert!(wks_reconstruct_checked(&s, Quaternion::new(0.0, 0.5, 0.0, 0.0), 1.0).is_ok());
        assert!(matches!(
            wks_reconstruct_checked(&s, Quaternion::new(0.0, 0.0, 1.5, 0.0), 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn truncation_bound_edges() {
        assert_eq!(truncation_bound(1.0, 1.0, 2.0, 0.0).unwrap(), 0.0);
        assert!(truncation_bound(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(truncation_bound(1.0, 1.0, 0.5, 1.0).is_err());
        let b = truncation_bound(PI, 0.25, 2.0, 1.0).unwrap();
        assert!((b - (2.0 * (0.5 * PI).exp()).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn bound_dominates_observed_truncation() {
        let band = 1.0;
        let f = SincPowerFunction::random(&mut rng(4), band, 3, false);
        let full = SampleSet::from_fn(band, 2000, |x| f.eval_at(Quaternion::real(x))).unwrap();
        let t = full.truncate(60).unwrap();
        let tail = estimate_tail_energy(&t);
        let bound = truncation_bound(band, 1.0, 2.0, tail).unwrap();
        let mut g = rng(5);
        for _ in 0..20 {
            let q = random_unit(&mut g).at(2.0, 0.7);
            let err = (wks_reconstruct(&full, q) - wks_reconstruct(&t, q)).norm();
            assert!(err <= bound, "{err} > {bound}");
        }
    }

    #[test]
    fn tail_estimate_of_geometric_samples() {
        let s = SampleSet::from_fn(PI, 40, |x| Quaternion::real(0.5f64.powf(x.abs() / 2.0))).unwrap();
        // |f_k|² = 2^{-|k|}, so the exact tail is 2·2^{-40}
        let exact = 2.0 * 2f64.powi(-40);
        assert!((estimate_tail_energy(&s) - exact).abs() < 1e-3 * exact);
        assert_eq!(estimate_tail_energy(&sinc_samples(40)), 0.0);
    }

    #[test]
    fn sample_energy_examples() {
        assert_eq!(sample_energy(&SampleSet::from_fn(1.0, 5, |_| Quaternion::ZERO).unwrap()), 0.0);
        assert_eq!(sample_energy(&sinc_samples(5)), 1.0);
    }

    #[test]
    fn sinc_power_sums_stay_below_the_bound() {
        for m in [0.25, 0.5] {
            let q = Quaternion::new(0.5, m, 0.0, 0.0);
            let bound = 2.0 * (2.0 * m * PI).exp();
            assert!(sinc_power_partial_sum(q, 2.0, 500) < bound);
        }
    }

    #[test]
    fn error_curve_examples() {
        let s = sinc_samples(20);
        let sinc = |q: Quaternion| sinc_q(q);
        let grid = UniformGrid::symmetric(40.0, 0.1).unwrap();
        for e in l2_error_curve_on(&sinc, &s, &[0, 5, 20], &grid).unwrap() {
            assert!(e < 1e-13);
        }
        let zero = SampleSet::from_fn(1.0, 10, |_| Quaternion::ZERO).unwrap();
        let z = |_: Quaternion| Quaternion::ZERO;
        assert_eq!(l2_error_curve_on(&z, &zero, &[1, 10], &grid).unwrap(), vec![0.0, 0.0]);
        assert!(l2_error_curve_on(&z, &zero, &[11], &grid).is_err());
    }

    #[test]
    fn json_schema() {
        let s = SampleSet::new(2.0, 0, vec![Quaternion::ONE]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"band":2.0,"K":0,"values":[[1.0,0.0,0.0,0.0]]}"#);
        assert_eq!(serde_json::from_str::<SampleSet>(&j).unwrap(), s);
    }
}

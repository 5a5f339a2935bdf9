//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export has a plain Rust counterpart in [`demo`], which is what the
//! native tests exercise.

use wasm_bindgen::prelude::*;

pub mod demo {
    use std::f64::consts::PI;

    use quatpw::fixtures::{nodes_for_step, random_compact_spectrum, rng};
    use quatpw::paley_wiener::synthesize_compact;
    use quatpw::qft::qft_left;
    use quatpw::quaternion::{exp_q, sin_q, sinc_q};
    use quatpw::sampling::{estimate_tail_energy, truncation_bound, wks_reconstruct_checked, SampleSet};
    use quatpw::slice::{represent_via, SliceFunction};
    use quatpw::{Error, ImaginaryUnit, LineSamples, Quaternion, Result, UniformGrid};

    /// Largest truncation the page offers.
    pub const MAX_TERMS: usize = 1000;

    /// `f(q)` for `f` in exp, sin, sinc, together with the value rebuilt
    /// through the representation formula from the slice of `probe`.
    pub fn entire(name: &str, q: Quaternion, probe: ImaginaryUnit) -> Result<(Quaternion, Quaternion)> {
        let f: fn(Quaternion) -> Quaternion = match name {
            "exp" => exp_q,
            "sin" => sin_q,
            "sinc" => sinc_q,
            other => return Err(Error::InvalidArgument(format!("unknown function {other:?}"))),
        };
        Ok((f(q), represent_via(&f, probe, q)))
    }

    /// Spectrum of a modulated Gaussian `e^{-(x−c)²/2σ²}(cos ωx + sin ωx·k)`
    /// under the kernel unit `unit`.
    pub struct LineSpectrum {
        pub frequencies: Vec<f64>,
        pub magnitudes: Vec<f64>,
        /// `[w, x, y, z]` per frequency, flattened.
        pub values: Vec<f64>,
    }

    pub fn gaussian_spectrum(centre: f64, width: f64, omega: f64, unit: ImaginaryUnit) -> Result<LineSpectrum> {
        if !(width > 0.05 && width <= 5.0) {
            return Err(Error::InvalidArgument("width must lie in (0.05, 5]".into()));
        }
        let grid = UniformGrid::symmetric(24.0, 0.02)?;
        let samples = LineSamples::from_fn(grid, |x| {
            let g = (-(x - centre).powi(2) / (2.0 * width * width)).exp();
            Quaternion::new((omega * x).cos(), 0.0, 0.0, (omega * x).sin()) * g
        })?;
        let s = qft_left(&samples, unit)?;
        let keep: Vec<usize> = (0..s.grid.n).filter(|&m| s.grid.node(m).abs() <= 12.0).collect();
        Ok(LineSpectrum {
            frequencies: keep.iter().map(|&m| s.grid.node(m)).collect(),
            magnitudes: keep.iter().map(|&m| s.values[m].norm()).collect(),
            values: keep.iter().flat_map(|&m| s.values[m].to_array()).collect(),
        })
    }

    /// Sinc-series reconstruction of a seeded band-limited function from
    /// `2K + 1` samples, compared with direct synthesis.
    pub struct Reconstruction {
        pub series: Quaternion,
        pub direct: Quaternion,
        pub error: f64,
        pub bound: f64,
    }

    pub fn reconstruct(band: f64, k: usize, seed: u64, q: Quaternion, strip: f64) -> Result<Reconstruction> {
        if !(band > 0.0 && band <= 10.0) {
            return Err(Error::InvalidArgument("band must lie in (0, 10]".into()));
        }
        if k == 0 || k > MAX_TERMS {
            return Err(Error::InvalidArgument(format!("K must lie in 1..={MAX_TERMS}")));
        }
        let reach = (PI * k as f64 / band).max(q.w.abs()) + 10.0;
        let n = nodes_for_step(band, (PI / (4.0 * reach)).min(0.05));
        let spectrum = random_compact_spectrum(&mut rng(seed), band, n, ImaginaryUnit::I, 8)?;
        let f = synthesize_compact(&spectrum)?;
        let samples = SampleSet::from_fn(band, k, |x| f.eval(Quaternion::real(x)))?;
        let series = wks_reconstruct_checked(&samples, q, strip)?;
        let direct = f.eval(q);
        let tail = estimate_tail_energy(&samples);
        let bound = if tail.is_finite() {
            truncation_bound(band, strip, 2.0, tail)?
        } else {
            f64::INFINITY
        };
        Ok(Reconstruction {
            series,
            direct,
            error: (series - direct).norm(),
            bound,
        })
    }
}

fn unit(x: f64, y: f64, z: f64) -> Result<quatpw::ImaginaryUnit, JsError> {
    Ok(quatpw::ImaginaryUnit::normalized(x, y, z)?)
}

/// `[f(q), f(q) via the probe slice]`, eight numbers.
#[wasm_bindgen]
pub fn entire(name: &str, w: f64, x: f64, y: f64, z: f64, px: f64, py: f64, pz: f64) -> Result<Vec<f64>, JsError> {
    let (direct, represented) = demo::entire(name, quatpw::Quaternion::new(w, x, y, z), unit(px, py, pz)?)?;
    Ok([direct.to_array(), represented.to_array()].concat())
}

#[wasm_bindgen]
pub struct LineSpectrum(demo::LineSpectrum);

#[wasm_bindgen]
impl LineSpectrum {
    #[wasm_bindgen(getter)]
    pub fn frequencies(&self) -> Vec<f64> {
        self.0.frequencies.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn magnitudes(&self) -> Vec<f64> {
        self.0.magnitudes.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.0.values.clone()
    }
}

#[wasm_bindgen]
pub fn gaussian_spectrum(centre: f64, width: f64, omega: f64, ux: f64, uy: f64, uz: f64) -> Result<LineSpectrum, JsError> {
    Ok(LineSpectrum(demo::gaussian_spectrum(centre, width, omega, unit(ux, uy, uz)?)?))
}

/// `[series w,x,y,z, direct w,x,y,z, error, bound]`.
#[wasm_bindgen]
pub fn reconstruct(band: f64, k: u32, seed: u32, w: f64, x: f64, y: f64, z: f64, strip: f64) -> Result<Vec<f64>, JsError> {
    let q = quatpw::Quaternion::new(w, x, y, z);
    let r = demo::reconstruct(band, k as usize, u64::from(seed), q, strip)?;
    Ok([r.series.to_array().as_slice(), &r.direct.to_array(), &[r.error, r.bound]].concat())
}

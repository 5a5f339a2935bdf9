//! Uniform grids and quaternion-valued data sampled on them.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion};
use crate::sum::pairwise_map;

/// Relative tolerance on `min + max` for a grid to count as symmetric.
const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// `n` equally spaced nodes covering `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformGrid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl UniformGrid {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        let g = Self { min, max, n };
        g.validate()?;
        Ok(g)
    }

    /// Grid on `[-extent, extent]` whose step is the largest not exceeding `step`.
    pub fn symmetric(extent: f64, step: f64) -> Result<Self> {
        if !(extent > 0.0 && step > 0.0 && extent.is_finite() && step.is_finite()) {
            return Err(invalid("extent and step must be positive and finite"));
        }
        let intervals = (2.0 * extent / step - 1e-9).ceil().max(1.0) as usize;
        Self::new(-extent, extent, intervals + 1)
    }

    /// Grid on `[min, max]` whose step is the largest not exceeding `step`.
    pub fn with_step(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && max > min) {
            return Err(invalid("need max > min and a positive step"));
        }
        let intervals = ((max - min) / step - 1e-9).ceil().max(1.0) as usize;
        Self::new(min, max, intervals + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyGrid);
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(invalid("grid bounds must be finite"));
        }
        if self.n == 1 && self.min != self.max {
            return Err(invalid("a one-node grid needs min == max"));
        }
        if self.n > 1 && self.max <= self.min {
            return Err(invalid("grid needs max > min"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn step(&self) -> f64 {
        if self.n > 1 {
            (self.max - self.min) / (self.n - 1) as f64
        } else {
            0.0
        }
    }

    /// Node `i`, measured from the midpoint so that mirrored nodes of a
    /// symmetric grid are exact negatives of each other.
    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        let mid = 0.5 * (self.min + self.max);
        mid + (i as f64 - 0.5 * (self.n - 1) as f64) * self.step()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// Composite trapezoid weight of node `i`.
    #[inline]
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.step();
        if i == 0 || i + 1 == self.n {
            0.5 * h
        } else {
            h
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (self.min + self.max).abs() <= SYMMETRY_TOLERANCE * self.step().max(f64::MIN_POSITIVE)
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::AsymmetricGrid {
                min: self.min,
                max: self.max,
            })
        }
    }

    /// Index of the node `-node(i)` on a symmetric grid.
    #[inline]
    pub fn mirror(&self, i: usize) -> usize {
        self.n - 1 - i
    }

    /// Trapezoid integral of `f` over the nodes.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        pairwise_map(self.n, |i| self.weight(i) * f(self.node(i)))
    }
}

fn check_values(grid: &UniformGrid, values: &[Quaternion]) -> Result<()> {
    grid.validate()?;
    if values.len() != grid.n {
        return Err(invalid(format!(
            "grid has {} nodes but {} values were supplied",
            grid.n,
            values.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(invalid(format!("non-finite value at node {i}")));
    }
    Ok(())
}

fn l2_sqr(grid: &UniformGrid, values: &[Quaternion]) -> f64 {
    pairwise_map(grid.n, |i| grid.weight(i) * values[i].norm_sqr())
}

/// Quaternion-valued samples of a function on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSamples {
    pub grid: UniformGrid,
    #[serde(default)]
    pub unit: Option<ImaginaryUnit>,
    pub values: Vec<Quaternion>,
}

impl LineSamples {
    pub fn new(grid: UniformGrid, values: Vec<Quaternion>) -> Result<Self> {
        let s = Self {
            grid,
            unit: None,
            values,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(grid: UniformGrid, f: impl Fn(f64) -> Quaternion) -> Result<Self> {
        grid.validate()?;
        Self::new(grid, (0..grid.n).map(|i| f(grid.node(i))).collect())
    }

    pub fn zeros(grid: UniformGrid) -> Result<Self> {
        Self::from_fn(grid, |_| Quaternion::ZERO)
    }

    pub fn with_unit(mut self, unit: ImaginaryUnit) -> Self {
        self.unit = Some(unit);
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_values(&self.grid, &self.values)
    }

    /// Trapezoid approximation of `∫|F|²`.
    pub fn l2_norm_sqr(&self) -> f64 {
        l2_sqr(&self.grid, &self.values)
    }

    /// Trapezoid approximation of `∫|F|`.
    pub fn l1_norm(&self) -> f64 {
        pairwise_map(self.grid.n, |i| self.grid.weight(i) * self.values[i].norm())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.imag_norm() <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// A spectrum on a uniform frequency grid, tagged with the unit of the
/// transform kernel that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Spectrum {
    pub grid: UniformGrid,
    pub unit: ImaginaryUnit,
    pub values: Vec<Quaternion>,
}

impl Spectrum {
    pub fn new(grid: UniformGrid, unit: ImaginaryUnit, values: Vec<Quaternion>) -> Result<Self> {
        let s = Self { grid, unit, values };
        s.validate()?;
        Ok(s)
    }

    pub fn from_fn(grid: UniformGrid, unit: ImaginaryUnit, f: impl Fn(f64) -> Quaternion) -> Result<Self> {
        grid.validate()?;
        Self::new(grid, unit, (0..grid.n).map(|i| f(grid.node(i))).collect())
    }

    pub fn validate(&self) -> Result<()> {
        check_values(&self.grid, &self.values)
    }

    pub fn l2_norm_sqr(&self) -> f64 {
        l2_sqr(&self.grid, &self.values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest nodewise distance to `other`; both must share grid and unit.
    pub fn max_deviation(&self, other: &Spectrum) -> Result<f64> {
        if self.unit != other.unit {
            return Err(Error::UnitMismatch);
        }
        if self.grid != other.grid {
            return Err(invalid("spectra live on different grids"));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max))
    }
}

//! Quaternion arithmetic, the sphere of imaginary units, slice coordinates
//! and the slice-preserving entire functions `exp`, `sin` and `sinc`.
//!
//! Every point of ℍ lies on some complex slice `ℂ_I = {x + I y}`. A
//! function with a power series in `q` and real coefficients acts on each
//! slice exactly like its complex counterpart, so the closed forms below
//! evaluate the complex function at `x + i y` and lift the result back
//! onto the slice of the argument.

use std::f64::consts::PI;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Accepted deviation of `|I|` from one when constructing an [`ImaginaryUnit`].
pub const UNIT_TOLERANCE: f64 = 1e-14;

/// `|dot|` above which two units count as parallel in [`ImaginaryUnit::orthogonal_frame`].
pub const PARALLEL_THRESHOLD: f64 = 1.0 - 1e-10;

/// Below this modulus `sinc` is summed from its power series.
pub const SINC_SERIES_RADIUS: f64 = 0.5;

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl From<f64> for Quaternion {
    fn from(r: f64) -> Self {
        Self::real(r)
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);
    pub const NAN: Self = Self::new(f64::NAN, f64::NAN, f64::NAN, f64::NAN);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Self::new(r, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product on ℝ⁴.
    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sqr();
        (n > 0.0).then(|| self.conj() / n)
    }

    /// Norm of the imaginary part.
    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 4] {
        self.into()
    }

    /// Slice coordinates `q = re + unit·im` with `im ≥ 0`.
    ///
    /// Real quaternions have no distinguished slice; they report the unit `i`.
    pub fn split(self) -> SlicePoint {
        let im = self.imag_norm();
        let unit = if im > 0.0 {
            ImaginaryUnit {
                x: self.x / im,
                y: self.y / im,
                z: self.z / im,
            }
        } else {
            ImaginaryUnit::I
        };
        SlicePoint {
            re: self.w,
            im,
            unit,
        }
    }

    /// `Σ_{n<N} qⁿ aₙ` by Horner's rule.
    pub fn series(self, coeffs: &[f64]) -> Self {
        series_eval(coeffs, self)
    }

    pub fn exp(self) -> Self {
        exp_q(self)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

/// A point of the unit sphere 𝕊 of purely imaginary quaternions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct ImaginaryUnit {
    x: f64,
    y: f64,
    z: f64,
}

impl TryFrom<[f64; 3]> for ImaginaryUnit {
    type Error = crate::Error;

    fn try_from(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }
}

impl From<ImaginaryUnit> for [f64; 3] {
    fn from(u: ImaginaryUnit) -> Self {
        [u.x, u.y, u.z]
    }
}

impl ImaginaryUnit {
    pub const I: Self = Self { x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Self = Self { x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Self = Self { x: 0.0, y: 0.0, z: 1.0 };

    /// Accepts `(x, y, z)` only if it already has unit length.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2 - 1.0).abs() > UNIT_TOLERANCE {
            return Err(invalid(format!(
                "imaginary unit must have norm 1, got {}",
                n2.sqrt()
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Scales `(x, y, z)` onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(invalid("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    pub fn components(self) -> [f64; 3] {
        self.into()
    }

    #[inline]
    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// The point `re + self·im` of the slice `ℂ_self`.
    #[inline]
    pub fn at(self, re: f64, im: f64) -> Quaternion {
        Quaternion::new(re, self.x * im, self.y * im, self.z * im)
    }

    /// Lifts a complex number `a + i b` to `a + self·b`.
    #[inline]
    pub fn lift(self, c: Complex64) -> Quaternion {
        self.at(c.re, c.im)
    }

    /// `(J, K)` completing `{1, I, J, K}` to an orthonormal basis with `K = I J`.
    ///
    /// `J` is Gram–Schmidt of the first standard unit (i, j, k order) not
    /// parallel to `I`.
    pub fn orthogonal_frame(self) -> (ImaginaryUnit, ImaginaryUnit) {
        let seed = [Self::I, Self::J, Self::K]
            .into_iter()
            .find(|e| self.dot(*e).abs() <= PARALLEL_THRESHOLD)
            .expect("a unit vector cannot be parallel to all three axes");
        let d = self.dot(seed);
        let j = Self::normalized(seed.x - d * self.x, seed.y - d * self.y, seed.z - d * self.z)
            .expect("non-parallel seed has a nonzero orthogonal part");
        let k = self.as_quaternion() * j.as_quaternion();
        let k = Self::normalized(k.x, k.y, k.z).expect("product of orthogonal units is a unit");
        (j, k)
    }

    /// The orthonormal basis `[1, I, J, K]` used by component decompositions.
    pub fn basis(self) -> [Quaternion; 4] {
        let (j, k) = self.orthogonal_frame();
        [
            Quaternion::ONE,
            self.as_quaternion(),
            j.as_quaternion(),
            k.as_quaternion(),
        ]
    }

    /// Deterministic, roughly uniform units on 𝕊 (Fibonacci lattice).
    pub fn fibonacci_sphere(count: usize) -> Vec<ImaginaryUnit> {
        let golden = PI * (3.0 - 5f64.sqrt());
        (0..count)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
                let r = (1.0 - z * z).sqrt();
                let phi = golden * i as f64;
                Self::normalized(r * phi.cos(), r * phi.sin(), z).expect("lattice point on sphere")
            })
            .collect()
    }
}

impl Neg for ImaginaryUnit {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// Slice coordinates of a quaternion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub re: f64,
    pub im: f64,
    pub unit: ImaginaryUnit,
}

impl SlicePoint {
    pub fn realize(self) -> Quaternion {
        self.unit.at(self.re, self.im)
    }

    pub fn as_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Evaluates a holomorphic function with real Taylor coefficients on the
/// slice of `q`.
#[inline]
pub fn lift_slice_preserving(q: Quaternion, g: impl FnOnce(Complex64) -> Complex64) -> Quaternion {
    let s = q.split();
    s.unit.lift(g(s.as_complex()))
}

pub fn exp_q(q: Quaternion) -> Quaternion {
    lift_slice_preserving(q, Complex64::exp)
}

pub fn sin_q(q: Quaternion) -> Quaternion {
    lift_slice_preserving(q, Complex64::sin)
}

/// `sin(πz)/(πz)` on the complex plane, with the series near the origin.
pub fn sinc_complex(z: Complex64) -> Complex64 {
    if z.norm() < SINC_SERIES_RADIUS {
        let w = -(PI * PI) * z * z;
        // Horner over Σ wᵏ/(2k+1)!, 14 terms exhaust f64 for |z| < 0.5.
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (0..14).rev() {
            acc = acc * w + 1.0 / odd_factorial(k);
        }
        acc
    } else {
        let pz = PI * z;
        pz.sin() / pz
    }
}

fn odd_factorial(k: usize) -> f64 {
    (1..=2 * k + 1).map(|n| n as f64).product()
}

/// Quaternionic sinc, `Σ q^{2k} (−π²)^k/(2k+1)!`.
pub fn sinc_q(q: Quaternion) -> Quaternion {
    lift_slice_preserving(q, sinc_complex)
}

/// `Σ_{n < coeffs.len()} qⁿ aₙ` evaluated directly in ℍ.
pub fn series_eval(coeffs: &[f64], q: Quaternion) -> Quaternion {
    coeffs
        .iter()
        .rev()
        .fold(Quaternion::ZERO, |acc, &a| acc * q + Quaternion::real(a))
}

/// Taylor coefficients of `exp`, `sin` and `sinc` (first `n` powers).
pub mod coefficients {
    use std::f64::consts::PI;

    pub fn exp(n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        let mut f = 1.0;
        for k in 0..n {
            if k > 0 {
                f /= k as f64;
            }
            out.push(f);
        }
        out
    }

    pub fn sin(n: usize) -> Vec<f64> {
        exp(n)
            .into_iter()
            .enumerate()
            .map(|(k, c)| match k % 4 {
                1 => c,
                3 => -c,
                _ => 0.0,
            })
            .collect()
    }

    /// Coefficients of `sinc` up to the power `q^{n-1}`.
    pub fn sinc(n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        let mut c = 1.0;
        for k in 0..n.div_ceil(2) {
            if k > 0 {
                c *= -(PI * PI) / ((2 * k) as f64 * (2 * k + 1) as f64);
            }
            out[2 * k] = c;
        }
        out
    }
}

//! Slice regular functions: evaluators, the representation formula, slice
//! extension, stem pairs, component decomposition and Cauchy–Riemann
//! residuals.

use crate::error::{Error, Result};
use crate::quaternion::{ImaginaryUnit, Quaternion, SlicePoint};

/// Where an evaluator is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// All of ℍ.
    Whole,
    /// The open right half-space `re q > 0`.
    RightHalf,
}

impl Domain {
    pub fn contains(self, q: Quaternion) -> bool {
        match self {
            Domain::Whole => q.is_finite(),
            Domain::RightHalf => q.is_finite() && q.w > 0.0,
        }
    }
}

/// A quaternion-valued function on ℍ or ℍ₊.
pub trait SliceFunction: Send + Sync {
    /// Value at `q`; callers guarantee `q` lies in [`SliceFunction::domain`].
    fn eval(&self, q: Quaternion) -> Quaternion;

    fn domain(&self) -> Domain {
        Domain::Whole
    }

    fn try_eval(&self, q: Quaternion) -> Result<Quaternion> {
        if !self.domain().contains(q) {
            return Err(Error::Domain(format!("{q} is outside {:?}", self.domain())));
        }
        let v = self.eval(q);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("evaluation at {q} is not finite")))
        }
    }
}

impl<F> SliceFunction for F
where
    F: Fn(Quaternion) -> Quaternion + Send + Sync,
{
    fn eval(&self, q: Quaternion) -> Quaternion {
        self(q)
    }
}

/// A closure with an explicit domain tag.
pub struct Tagged<F> {
    f: F,
    domain: Domain,
}

impl<F: Fn(Quaternion) -> Quaternion + Send + Sync> Tagged<F> {
    pub fn new(domain: Domain, f: F) -> Self {
        Self { f, domain }
    }
}

impl<F: Fn(Quaternion) -> Quaternion + Send + Sync> SliceFunction for Tagged<F> {
    fn eval(&self, q: Quaternion) -> Quaternion {
        (self.f)(q)
    }

    fn domain(&self) -> Domain {
        self.domain
    }
}

/// Value on the slice `ℂ_I` from the mirror pair `f(x + Jy)`, `f(x − Jy)`:
/// `½(1 − IJ) f(x+Jy) + ½(1 + IJ) f(x−Jy)`.
#[inline]
pub fn represent(f_plus: Quaternion, f_minus: Quaternion, j: ImaginaryUnit, i: ImaginaryUnit) -> Quaternion {
    let ij = i.as_quaternion() * j.as_quaternion();
    ((Quaternion::ONE - ij) * f_plus + (Quaternion::ONE + ij) * f_minus) * 0.5
}

/// Evaluates a slice function at `q` through the representation formula on
/// the slice `ℂ_J`.
pub fn represent_via(f: &dyn SliceFunction, j: ImaginaryUnit, q: Quaternion) -> Quaternion {
    let s = q.split();
    represent(f.eval(j.at(s.re, s.im)), f.eval(j.at(s.re, -s.im)), j, s.unit)
}

/// The slice extension of a function given on one slice.
///
/// `data(x, y)` is the value at `x + J y`; it must be defined for both signs
/// of `y`.
pub struct SliceExtension<F> {
    data: F,
    unit: ImaginaryUnit,
    domain: Domain,
}

pub fn ext_l<F>(data: F, unit: ImaginaryUnit, domain: Domain) -> SliceExtension<F>
where
    F: Fn(f64, f64) -> Quaternion + Send + Sync,
{
    SliceExtension { data, unit, domain }
}

impl<F: Fn(f64, f64) -> Quaternion + Send + Sync> SliceFunction for SliceExtension<F> {
    fn eval(&self, q: Quaternion) -> Quaternion {
        let s = q.split();
        represent((self.data)(s.re, s.im), (self.data)(s.re, -s.im), self.unit, s.unit)
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn try_eval(&self, q: Quaternion) -> Result<Quaternion> {
        if !self.domain.contains(q) {
            return Err(Error::Domain(format!("{q} is outside {:?}", self.domain)));
        }
        let s = q.split();
        let (p, m) = ((self.data)(s.re, s.im), (self.data)(s.re, -s.im));
        if !(p.is_finite() && m.is_finite()) {
            return Err(Error::Domain(format!("slice data unavailable at {} ± {}J", s.re, s.im)));
        }
        Ok(represent(p, m, self.unit, s.unit))
    }
}

/// The stem pair `(α, β)` of a slice function read off along one unit.
#[derive(Clone, Copy)]
pub struct StemPair<'a> {
    f: &'a dyn SliceFunction,
    unit: ImaginaryUnit,
}

pub fn stem_split(f: &dyn SliceFunction, unit: ImaginaryUnit) -> StemPair<'_> {
    StemPair { f, unit }
}

impl StemPair<'_> {
    /// `½[f(x+Iy) + f(x−Iy)]`.
    pub fn alpha(&self, x: f64, y: f64) -> Quaternion {
        (self.f.eval(self.unit.at(x, y)) + self.f.eval(self.unit.at(x, -y))) * 0.5
    }

    /// `½ I [f(x−Iy) − f(x+Iy)]`.
    pub fn beta(&self, x: f64, y: f64) -> Quaternion {
        self.unit.as_quaternion() * (self.f.eval(self.unit.at(x, -y)) - self.f.eval(self.unit.at(x, y))) * 0.5
    }

    /// Both stems from a single pair of evaluations.
    pub fn pair(&self, x: f64, y: f64) -> (Quaternion, Quaternion) {
        let p = self.f.eval(self.unit.at(x, y));
        let m = self.f.eval(self.unit.at(x, -y));
        ((p + m) * 0.5, self.unit.as_quaternion() * (m - p) * 0.5)
    }

    /// `α(x, y) + J β(x, y)` on any slice `J`.
    pub fn assemble(&self, x: f64, y: f64, j: ImaginaryUnit) -> Quaternion {
        let (a, b) = self.pair(x, y);
        a + j.as_quaternion() * b
    }
}

/// The four slice-preserving components `h_m` of a slice function along the
/// basis `{1, I, J, K}`, with `f = h₀ + h₁ I + h₂ J + h₃ K`.
pub struct ComponentQuad<'a> {
    stem: StemPair<'a>,
    basis: [Quaternion; 4],
    domain: Domain,
}

pub fn decompose(f: &dyn SliceFunction, unit: ImaginaryUnit) -> ComponentQuad<'_> {
    ComponentQuad {
        stem: stem_split(f, unit),
        basis: unit.basis(),
        domain: f.domain(),
    }
}

impl<'a> ComponentQuad<'a> {
    pub fn basis(&self) -> [Quaternion; 4] {
        self.basis
    }

    /// All four component values at `q`.
    pub fn components(&self, q: Quaternion) -> [Quaternion; 4] {
        let s = q.split();
        let (a, b) = self.stem.pair(s.re, s.im);
        let u = s.unit.as_quaternion();
        self.basis.map(|e| Quaternion::real(a.dot(e)) + u * b.dot(e))
    }

    pub fn recombine(&self, q: Quaternion) -> Quaternion {
        self.components(q)
            .iter()
            .zip(self.basis)
            .map(|(h, e)| *h * e)
            .sum()
    }

    /// The evaluator `h_m`.
    pub fn component(&self, m: usize) -> Component<'_, 'a> {
        assert!(m < 4, "component index {m} out of range");
        Component { quad: self, m }
    }
}

pub struct Component<'q, 'a> {
    quad: &'q ComponentQuad<'a>,
    m: usize,
}

impl SliceFunction for Component<'_, '_> {
    fn eval(&self, q: Quaternion) -> Quaternion {
        let s = q.split();
        let (a, b) = self.quad.stem.pair(s.re, s.im);
        let e = self.quad.basis[self.m];
        Quaternion::real(a.dot(e)) + s.unit.as_quaternion() * b.dot(e)
    }

    fn domain(&self) -> Domain {
        self.quad.domain
    }
}

/// Van der Corput radical inverse in `base`.
pub fn halton(mut index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// Half-width of the probe box used by structural checks.
pub const PROBE_BOX: f64 = 3.0;

/// Deterministic probe points: Halton `(x, y)` in the probe box paired with
/// Fibonacci-sphere units. Right half-space probes keep `x > 0`.
pub fn probe_points(domain: Domain, count: usize) -> Vec<Quaternion> {
    let units = ImaginaryUnit::fibonacci_sphere(64);
    (1..=count)
        .map(|i| {
            let (u, v) = (halton(i, 2), halton(i, 3));
            let x = match domain {
                Domain::Whole => PROBE_BOX * (2.0 * u - 1.0),
                Domain::RightHalf => PROBE_BOX * (0.05 + 0.95 * u),
            };
            units[i % units.len()].at(x, PROBE_BOX * (2.0 * v - 1.0))
        })
        .collect()
}

/// Number of probes used by [`slice_preserving_defect`].
pub const PRESERVING_PROBES: usize = 256;

/// `max |f(q̄) − conj f(q)|` over the deterministic probe set.
pub fn slice_preserving_defect(f: &dyn SliceFunction) -> f64 {
    probe_points(f.domain(), PRESERVING_PROBES)
        .into_iter()
        .map(|q| (f.eval(q.conj()) - f.eval(q).conj()).norm())
        .fold(0.0, f64::max)
}

pub fn is_slice_preserving(f: &dyn SliceFunction, tol: f64) -> bool {
    slice_preserving_defect(f) <= tol
}

/// Default finite-difference step for [`cr_residual`].
pub const CR_STEP: f64 = 1e-4;

/// `|½(∂ₓ + I ∂ᵧ) f_I|` at `at` by central differences with step `h`.
pub fn cr_residual(f: &dyn SliceFunction, unit: ImaginaryUnit, at: SlicePoint, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(crate::error::invalid("finite-difference step must be positive"));
    }
    let (x, y) = (at.re, at.im);
    let e = |dx: f64, dy: f64| f.try_eval(unit.at(x + dx, y + dy));
    let dfx = (e(h, 0.0)? - e(-h, 0.0)?) / (2.0 * h);
    let dfy = (e(0.0, h)? - e(0.0, -h)?) / (2.0 * h);
    Ok(((dfx + unit.as_quaternion() * dfy) * 0.5).norm())
}

/// Observed convergence order of [`cr_residual`] between steps `h` and `h/2`.
pub fn cr_order(f: &dyn SliceFunction, unit: ImaginaryUnit, at: SlicePoint, h: f64) -> Result<f64> {
    let r1 = cr_residual(f, unit, at, h)?;
    let r2 = cr_residual(f, unit, at, h / 2.0)?;
    Ok((r1 / r2).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{exp_q, sin_q};
    use std::f64::consts::PI;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn represent_trivial_units() {
        let (p, m) = (Quaternion::new(1.0, 2.0, 3.0, 4.0), Quaternion::new(-1.0, 0.5, 0.0, 2.0));
        let j = ImaginaryUnit::normalized(1.0, 1.0, 0.5).unwrap();
        assert!(close(represent(p, m, j, j), p, 1e-15));
        assert!(close(represent(p, m, j, -j), m, 1e-15));
    }

    #[test]
    fn represent_exp_across_slices() {
        let i = ImaginaryUnit::I;
        let v = represent(exp_q(i.at(0.0, PI / 2.0)), exp_q(i.at(0.0, -PI / 2.0)), i, ImaginaryUnit::J);
        assert!(close(v, Quaternion::J, 1e-15));
    }

    #[test]
    fn ext_l_examples() {
        let i = ImaginaryUnit::I;
        let ident = ext_l(|x, y| i.at(x, y), i, Domain::Whole);
        let exp = ext_l(|x, y| exp_q(i.at(x, y)), i, Domain::Whole);
        let twisted = ext_l(|x, y| i.at(x, y) * Quaternion::J, i, Domain::Whole);
        for q in probe_points(Domain::Whole, 100) {
            assert!(close(ident.eval(q), q, 1e-14));
            assert!(close(exp.eval(q), exp_q(q), 1e-12 * exp_q(q).norm().max(1.0)));
        }
        assert!(is_slice_preserving(&exp, 1e-10));
        assert!(!is_slice_preserving(&twisted, 1e-3));
    }

    #[test]
    fn stems_of_simple_functions() {
        let u = ImaginaryUnit::normalized(0.3, -0.4, 0.8).unwrap();
        let e = exp_q;
        let st = stem_split(&e, u);
        let (x, y) = (0.4, 1.3);
        assert!(close(st.alpha(x, y), Quaternion::real(x.exp() * y.cos()), 1e-14));
        assert!(close(st.beta(x, y), Quaternion::real(x.exp() * y.sin()), 1e-14));

        let c = Quaternion::new(1.0, 2.0, -1.0, 0.5);
        let constant = move |_q: Quaternion| c;
        let st = stem_split(&constant, u);
        assert_eq!(st.alpha(x, y), c);
        assert!(st.beta(x, y).norm() < 1e-15);

        let ident = |q: Quaternion| q;
        let st = stem_split(&ident, u);
        assert!(close(st.alpha(x, y), Quaternion::real(x), 1e-15));
        assert!(close(st.beta(x, y), Quaternion::real(y), 1e-15));
    }

    #[test]
    fn decompose_examples() {
        let f = |q: Quaternion| exp_q(q) * Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let quad = decompose(&f, ImaginaryUnit::I);
        for q in probe_points(Domain::Whole, 50) {
            let h = quad.components(q);
            let e = exp_q(q);
            let tol = 1e-12 * e.norm().max(1.0);
            assert!(close(h[0], e, tol) && close(h[1], e, tol));
            assert!(h[2].norm() < tol && h[3].norm() < tol);
        }

        let g = |q: Quaternion| q * Quaternion::J;
        let quad = decompose(&g, ImaginaryUnit::I);
        for q in probe_points(Domain::Whole, 50) {
            let h = quad.components(q);
            assert!(close(h[2], q, 1e-14));
            assert!(h[0].norm() + h[1].norm() + h[3].norm() < 1e-14);
        }
    }

    #[test]
    fn preserving_examples() {
        assert!(is_slice_preserving(&exp_q, 1e-10));
        assert!(is_slice_preserving(&|_q: Quaternion| Quaternion::real(2.5), 1e-15));
        let right_i = |q: Quaternion| q * Quaternion::I;
        let at_j = Quaternion::J;
        assert_eq!((right_i(at_j.conj()) - right_i(at_j).conj()).norm(), 0.0);
        let q = Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert!((right_i(q.conj()) - right_i(q).conj()).norm() > 1.0);
        assert!(!is_slice_preserving(&right_i, 1e-3));
    }

    #[test]
    fn cr_residual_examples() {
        let u = ImaginaryUnit::normalized(1.0, -2.0, 0.5).unwrap();
        let at = SlicePoint { re: 0.3, im: 0.7, unit: u };
        let order = cr_order(&exp_q, u, at, 1e-2).unwrap();
        assert!(order > 1.9, "{order}");
        let r1 = cr_residual(&sin_q, u, at, 1e-2).unwrap();
        let r2 = cr_residual(&sin_q, u, at, 1e-3).unwrap();
        assert!((r1 / r2).log10() > 1.9);

        let conj = |q: Quaternion| q.conj();
        let r = cr_residual(&conj, ImaginaryUnit::I, at, 1e-4).unwrap();
        assert!((r - 1.0).abs() < 1e-10);

        let c = |_q: Quaternion| Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(cr_residual(&c, u, at, 1e-4).unwrap(), 0.0);
    }

    #[test]
    fn cr_residual_respects_domain() {
        let f = Tagged::new(Domain::RightHalf, exp_q);
        let at = SlicePoint { re: 5e-5, im: 1.0, unit: ImaginaryUnit::I };
        assert!(matches!(cr_residual(&f, ImaginaryUnit::I, at, 1e-4), Err(Error::Domain(_))));
    }
}

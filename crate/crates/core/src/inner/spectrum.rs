//! Boundary spectrum estimates: zero accumulation points and atoms.

use num_complex::Complex;

use super::InnerFunctionSpec;
use crate::error::{Error, Result};
use crate::inner::ZeroKind;
use crate::scalar::Real;

/// Explicit zeros closer than this to the circle count as boundary clusters.
pub const EXPLICIT_CLUSTER_DEFECT: f64 = 1e-6;
/// Spectrum points closer than this are merged.
pub const MERGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    ZeroAccumulation,
    Atom,
    AtomAccumulation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint<T: Real = f64> {
    pub point: Complex<T>,
    pub kind: SpectrumKind,
}

/// Estimated spectrum of a (possibly truncated) inner function.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumEstimate<T: Real = f64> {
    pub points: Vec<SpectrumPoint<T>>,
}

impl<T: Real> SpectrumEstimate<T> {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn push(&mut self, point: Complex<T>, kind: SpectrumKind) {
        let tol = T::lit(MERGE_TOL);
        if let Some(existing) = self
            .points
            .iter_mut()
            .find(|p| (p.point - point).norm() < tol)
        {
            if kind == SpectrumKind::Atom {
                existing.kind = SpectrumKind::Atom;
            }
            return;
        }
        self.points.push(SpectrumPoint { point, kind });
    }

    /// Smallest angular distance from `zeta` to a spectrum point, with that point.
    pub fn nearest(&self, zeta: Complex<T>) -> Option<(T, Complex<T>)> {
        self.points
            .iter()
            .map(|p| ((zeta * p.point.conj()).arg().abs(), p.point))
            .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"))
    }

    /// Fails when `zeta` lies strictly inside an exclusion arc.
    pub fn check_clear(&self, zeta: Complex<T>, exclusion: T) -> Result<()> {
        if let Some((d, p)) = self.nearest(zeta) {
            if d < exclusion {
                return Err(Error::SpectrumProximity {
                    angle: zeta.arg().widen(),
                    spectrum_angle: p.arg().widen(),
                    exclusion: exclusion.widen(),
                });
            }
        }
        Ok(())
    }

    pub fn is_clear(&self, zeta: Complex<T>, exclusion: T) -> bool {
        self.check_clear(zeta, exclusion).is_ok()
    }
}

/// Spectrum estimate: accumulation points of generated zero families,
/// boundary clusters of explicit zeros, and every atom (whose accumulation
/// points coincide with the atom at angle 0 for the generated kinds).
pub fn spectrum<T: Real>(spec: &InnerFunctionSpec<T>) -> SpectrumEstimate<T> {
    let mut est = SpectrumEstimate::default();
    for fam in spec.blaschke_parts() {
        match fam.kind() {
            ZeroKind::Explicit(_) => {
                let zeros = fam.generate().unwrap_or_default();
                for p in zeros.iter().filter(|p| p.defect < T::lit(EXPLICIT_CLUSTER_DEFECT)) {
                    est.push(p.anchor, SpectrumKind::ZeroAccumulation);
                }
            }
            _ => {
                let w = fam.accumulation_point().expect("generated family");
                est.push(w, SpectrumKind::ZeroAccumulation);
            }
        }
    }
    for fam in spec.singular_parts() {
        for a in fam.generate() {
            est.push(Complex::from_polar(T::one(), a.theta), SpectrumKind::Atom);
        }
        if !fam.is_explicit() {
            est.push(
                Complex::from_polar(T::one(), fam.rotation()),
                SpectrumKind::AtomAccumulation,
            );
        }
    }
    est
}

//! Blaschke products, atomic singular inner functions and their finite
//! products, evaluated as second-order jets.

mod families;
mod spectrum;

pub use families::{
    Atom, AtomFamily, AtomKind, BlaschkeSum, ZeroFamily, ZeroKind, DEFAULT_TRUNCATION_CAP,
};
pub use spectrum::{spectrum, SpectrumEstimate, SpectrumKind, SpectrumPoint};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::DiscPoint;
use crate::jet::Jet2;
use crate::scalar::Real;

/// Evaluation points with `|z| <= 1 + BOUNDARY_TOL` are accepted.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Minimum distance between an evaluation point and an atom.
pub const ATOM_COLLISION_TOL: f64 = 1e-14;
/// Exponents with real part below this underflow to an exact zero jet.
pub const UNDERFLOW_EXPONENT: f64 = -745.0;
/// Default half-width of the arcs excluded around spectrum points.
pub const DEFAULT_EXCLUSION: f64 = 1e-3;

/// Finite product of Blaschke parts and atomic singular parts.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerFunctionSpec<T: Real = f64> {
    blaschke: Vec<ZeroFamily<T>>,
    singular: Vec<AtomFamily<T>>,
}

impl<T: Real> InnerFunctionSpec<T> {
    pub fn new(blaschke: Vec<ZeroFamily<T>>, singular: Vec<AtomFamily<T>>) -> Result<Self> {
        if blaschke.is_empty() && singular.is_empty() {
            return Err(Error::UnsupportedSpec("no Blaschke or singular part".into()));
        }
        Ok(Self { blaschke, singular })
    }

    pub fn blaschke(family: ZeroFamily<T>) -> Self {
        Self {
            blaschke: vec![family],
            singular: Vec::new(),
        }
    }

    pub fn singular(family: AtomFamily<T>) -> Self {
        Self {
            blaschke: Vec::new(),
            singular: vec![family],
        }
    }

    /// Product with another function.
    pub fn times(mut self, other: Self) -> Self {
        self.blaschke.extend(other.blaschke);
        self.singular.extend(other.singular);
        self
    }

    pub fn blaschke_parts(&self) -> &[ZeroFamily<T>] {
        &self.blaschke
    }

    pub fn singular_parts(&self) -> &[AtomFamily<T>] {
        &self.singular
    }

    /// True when every part is an explicit finite list.
    pub fn is_finite(&self) -> bool {
        self.blaschke.iter().all(ZeroFamily::is_explicit)
            && self.singular.iter().all(AtomFamily::is_explicit)
    }

    /// Sum of the parts' truncation bounds at radius `r`.
    pub fn truncation_bound(&self, r: T) -> T {
        self.blaschke
            .iter()
            .map(|f| f.truncation_bound(r))
            .chain(self.singular.iter().map(|f| f.truncation_bound(r)))
            .fold(T::zero(), |a, b| a + b)
    }

    /// Every generated family truncated at `factor` times its count.
    pub fn with_counts_scaled(&self, factor: usize) -> Result<Self> {
        Ok(Self {
            blaschke: self
                .blaschke
                .iter()
                .map(|f| f.with_count(f.count() * factor))
                .collect::<Result<_>>()?,
            singular: self
                .singular
                .iter()
                .map(|f| f.with_count(f.count() * factor))
                .collect::<Result<_>>()?,
        })
    }

    /// Rigid rotation of every zero and atom by `angle`.
    pub fn rotated(&self, angle: T) -> Self {
        Self {
            blaschke: self
                .blaschke
                .iter()
                .map(|f| f.clone().with_rotation(f.rotation() + angle))
                .collect(),
            singular: self
                .singular
                .iter()
                .map(|f| f.clone().with_rotation(f.rotation() + angle))
                .collect(),
        }
    }

    pub fn spectrum(&self) -> SpectrumEstimate<T> {
        spectrum(self)
    }
}

/// Atom with its boundary point precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparedAtom<T: Real = f64> {
    pub theta: T,
    pub gamma: T,
    pub point: Complex<T>,
}

/// Materialized inner function: zeros and atoms generated once for repeated evaluation.
#[derive(Debug, Clone)]
pub struct InnerFunction<T: Real = f64> {
    spec: InnerFunctionSpec<T>,
    zeros: Vec<Vec<DiscPoint<T>>>,
    atoms: Vec<Vec<PreparedAtom<T>>>,
    spectrum: SpectrumEstimate<T>,
}

impl<T: Real> InnerFunction<T> {
    pub fn new(spec: &InnerFunctionSpec<T>) -> Result<Self> {
        let zeros = spec
            .blaschke
            .iter()
            .map(ZeroFamily::generate)
            .collect::<Result<Vec<_>>>()?;
        let atoms = spec
            .singular
            .iter()
            .map(|f| {
                f.generate()
                    .into_iter()
                    .map(|a| PreparedAtom {
                        theta: a.theta,
                        gamma: a.gamma,
                        point: Complex::from_polar(T::one(), a.theta),
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            spec: spec.clone(),
            zeros,
            atoms,
            spectrum: spectrum(spec),
        })
    }

    pub fn spec(&self) -> &InnerFunctionSpec<T> {
        &self.spec
    }

    pub fn spectrum(&self) -> &SpectrumEstimate<T> {
        &self.spectrum
    }

    /// Zeros of each Blaschke part, ordered by modulus.
    pub fn zeros(&self) -> &[Vec<DiscPoint<T>>] {
        &self.zeros
    }

    pub fn atoms(&self) -> &[Vec<PreparedAtom<T>>] {
        &self.atoms
    }

    pub fn truncation_bound(&self, r: T) -> T {
        self.spec.truncation_bound(r)
    }

    fn check_domain(z: Complex<T>) -> Result<()> {
        if !(z.re.is_finite() && z.im.is_finite())
            || z.norm() > T::one() + T::lit(BOUNDARY_TOL)
        {
            return Err(Error::OutsideDisc {
                re: z.re.widen(),
                im: z.im.widen(),
            });
        }
        Ok(())
    }

    /// Jet of the product of all parts, in part order.
    pub fn eval(&self, z: Complex<T>) -> Result<Jet2<T>> {
        Self::check_domain(z)?;
        let mut jet = Jet2::one();
        for zs in &self.zeros {
            jet *= blaschke_jet(zs, z);
        }
        for atoms in &self.atoms {
            jet *= singular_jet(atoms, z)?;
        }
        Ok(jet)
    }

    /// Function value only.
    pub fn value(&self, z: Complex<T>) -> Result<Complex<T>> {
        Self::check_domain(z)?;
        let mut v = Complex::new(T::one(), T::zero());
        for zs in &self.zeros {
            v = v * blaschke_value(zs, z);
        }
        for atoms in &self.atoms {
            v = v * singular_value(atoms, z)?;
        }
        Ok(v)
    }

    /// `|Theta'(zeta)|` on the circle from the positive boundary sums
    /// `sum (1-|z_n|^2)/|zeta-z_n|^2 + 2 sum gamma_n/|zeta-e^{i theta_n}|^2`.
    pub fn boundary_derivative_modulus(&self, zeta: Complex<T>, exclusion: T) -> Result<T> {
        if (zeta.norm() - T::one()).abs() > T::lit(BOUNDARY_TOL) {
            return Err(Error::NotOnCircle {
                re: zeta.re.widen(),
                im: zeta.im.widen(),
            });
        }
        self.spectrum.check_clear(zeta, exclusion)?;
        let mut total = T::zero();
        for zs in &self.zeros {
            for p in zs {
                let d = p.distance_to(zeta);
                total = total + p.one_minus_mod_sq() / (d * d);
            }
        }
        for atoms in &self.atoms {
            for a in atoms {
                let d = (zeta - a.point).norm();
                if d < T::lit(ATOM_COLLISION_TOL) {
                    return Err(Error::AtomCollision {
                        theta: a.theta.widen(),
                        distance: d.widen(),
                    });
                }
                total = total + T::lit(2.0) * a.gamma / (d * d);
            }
        }
        Ok(total)
    }

    /// `|Theta(r xi)|` along a radius, with the truncation bound at each radius.
    pub fn radial_modulus_profile(
        &self,
        xi: Complex<T>,
        radii: &[T],
    ) -> Result<Vec<RadialSample<T>>> {
        if (xi.norm() - T::one()).abs() > T::lit(BOUNDARY_TOL) {
            return Err(Error::NotOnCircle {
                re: xi.re.widen(),
                im: xi.im.widen(),
            });
        }
        let mut prev: Option<T> = None;
        radii
            .iter()
            .map(|&r| {
                if !(r >= T::zero() && r < T::one()) || prev.is_some_and(|p| r <= p) {
                    return Err(Error::Parameter {
                        name: "radii",
                        value: r.widen(),
                        reason: "radii must increase within [0, 1)",
                    });
                }
                prev = Some(r);
                Ok(RadialSample {
                    r,
                    modulus: self.value(xi * r)?.norm(),
                    truncation_bound: self.truncation_bound(r),
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample<T: Real = f64> {
    pub r: T,
    pub modulus: T,
    /// Infinite when the truncation is insufficient at this radius.
    pub truncation_bound: T,
}

#[inline]
fn unit_factor<T: Real>(p: &DiscPoint<T>) -> Option<Complex<T>> {
    let m = p.z.norm();
    if m == T::zero() {
        None
    } else {
        Some(p.z.conj() / m)
    }
}

/// Jet of one Blaschke factor `(|a|/a) (a - z)/(1 - conj(a) z)`; the factor
/// for a zero at the origin is `z`.
#[inline]
fn factor_jet<T: Real>(p: &DiscPoint<T>, z: Complex<T>) -> Jet2<T> {
    let one = Complex::new(T::one(), T::zero());
    let Some(u) = unit_factor(p) else {
        return Jet2::new(z, one, Complex::new(T::zero(), T::zero()));
    };
    let a = p.z;
    let q = one - a.conj() * z;
    let b = u * (a - z) / q;
    let db = -(u * p.one_minus_mod_sq()) / (q * q);
    let d2b = a.conj() * db * T::lit(2.0) / q;
    Jet2::new(b, db, d2b)
}

/// Jet of the finite Blaschke product over `zeros`.
pub fn blaschke_jet<T: Real>(zeros: &[DiscPoint<T>], z: Complex<T>) -> Jet2<T> {
    zeros
        .iter()
        .fold(Jet2::one(), |acc, p| acc * factor_jet(p, z))
}

/// Value of the finite Blaschke product over `zeros`.
pub fn blaschke_value<T: Real>(zeros: &[DiscPoint<T>], z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    zeros.iter().fold(one, |acc, p| match unit_factor(p) {
        None => acc * z,
        Some(u) => acc * (u * (p.z - z) / (one - p.z.conj() * z)),
    })
}

struct Exponent<T: Real> {
    value: Complex<T>,
    s2: Complex<T>,
    s3: Complex<T>,
}

fn singular_exponent<T: Real>(atoms: &[PreparedAtom<T>], z: Complex<T>, with_derivs: bool) -> Result<Exponent<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = Exponent {
        value: zero,
        s2: zero,
        s3: zero,
    };
    for a in atoms {
        let d = z - a.point;
        let dist = d.norm();
        if dist < T::lit(ATOM_COLLISION_TOL) {
            return Err(Error::AtomCollision {
                theta: a.theta.widen(),
                distance: dist.widen(),
            });
        }
        out.value = out.value + (z + a.point) * a.gamma / d;
        if with_derivs {
            let d2 = d * d;
            let ge = a.point * a.gamma;
            out.s2 = out.s2 + ge / d2;
            out.s3 = out.s3 + ge / (d2 * d);
        }
    }
    Ok(out)
}

/// Jet of `exp(sum gamma_k (z + e_k)/(z - e_k))` with
/// `S' = -2 s2 S` and `S'' = 4 (s3 + s2^2) S`, `s_j = sum gamma_k e_k/(z - e_k)^j`.
pub fn singular_jet<T: Real>(atoms: &[PreparedAtom<T>], z: Complex<T>) -> Result<Jet2<T>> {
    let e = singular_exponent(atoms, z, true)?;
    if e.value.re < T::lit(UNDERFLOW_EXPONENT) {
        return Ok(Jet2::zero());
    }
    let s = e.value.exp();
    let four = T::lit(4.0);
    Ok(Jet2::new(
        s,
        e.s2 * s * T::lit(-2.0),
        (e.s3 + e.s2 * e.s2) * s * four,
    ))
}

pub fn singular_value<T: Real>(atoms: &[PreparedAtom<T>], z: Complex<T>) -> Result<Complex<T>> {
    let e = singular_exponent(atoms, z, false)?;
    if e.value.re < T::lit(UNDERFLOW_EXPONENT) {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    Ok(e.value.exp())
}

/// Zeros of a family, ordered by modulus.
pub fn generate_zeros<T: Real>(family: &ZeroFamily<T>) -> Result<Vec<DiscPoint<T>>> {
    family.generate()
}

pub fn blaschke_sum<T: Real>(family: &ZeroFamily<T>) -> Result<BlaschkeSum<T>> {
    family.blaschke_sum()
}

pub fn truncation_bound<T: Real>(family: &ZeroFamily<T>, r: T) -> T {
    family.truncation_bound(r)
}

pub fn eval_blaschke<T: Real>(family: &ZeroFamily<T>, z: Complex<T>) -> Result<Jet2<T>> {
    Ok(blaschke_jet(&family.generate()?, z))
}

pub fn eval_singular<T: Real>(family: &AtomFamily<T>, z: Complex<T>) -> Result<Jet2<T>> {
    if z.norm() > T::one() + T::lit(BOUNDARY_TOL) {
        return Err(Error::OutsideDisc {
            re: z.re.widen(),
            im: z.im.widen(),
        });
    }
    let atoms = InnerFunction::new(&InnerFunctionSpec::singular(family.clone()))?.atoms;
    singular_jet(&atoms[0], z)
}

pub fn eval_inner<T: Real>(spec: &InnerFunctionSpec<T>, z: Complex<T>) -> Result<Jet2<T>> {
    InnerFunction::new(spec)?.eval(z)
}

pub fn boundary_derivative_modulus<T: Real>(
    spec: &InnerFunctionSpec<T>,
    zeta: Complex<T>,
    exclusion: T,
) -> Result<T> {
    InnerFunction::new(spec)?.boundary_derivative_modulus(zeta, exclusion)
}

pub fn radial_modulus_profile<T: Real>(
    spec: &InnerFunctionSpec<T>,
    xi: Complex<T>,
    radii: &[T],
) -> Result<Vec<RadialSample<T>>> {
    InnerFunction::new(spec)?.radial_modulus_profile(xi, radii)
}

#[cfg(test)]
mod tests;

//! Declarative zero and atom generators.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{tangential_point, DiscPoint};
use crate::scalar::Real;

/// Cap above which a truncation bound is reported as infinite.
pub const DEFAULT_TRUNCATION_CAP: f64 = 1.0;

/// Zero sequence generators.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroKind<T: Real = f64> {
    /// `z_n = 1 - n^-alpha`, starting at `n = 2`.
    Power { alpha: T },
    /// `z_n = 1 - 1/(n (log n)^alpha)`, from the first `n >= 2` giving `z_n in (0, 1)`.
    LogPower { alpha: T },
    /// `z_n = 1 - alpha^-n`.
    Geometric { alpha: T },
    /// `z_n = 1 - 2^(-2^n)`.
    DoubleExp,
    /// `|z_n| = 1 - n^-alpha`, `|1 - z_n| = n^(-alpha/gamma)`, starting at `n = 1` (the origin).
    Tangential { alpha: T, gamma: T },
    Explicit(Vec<Complex<T>>),
}

/// A zero sequence truncated to `count` terms and rigidly rotated.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroFamily<T: Real = f64> {
    kind: ZeroKind<T>,
    count: usize,
    rotation: T,
}

/// Partial Blaschke sum and a bound on the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlaschkeSum<T: Real = f64> {
    pub partial: T,
    pub tail_bound: T,
}

fn param<T: Real>(name: &'static str, value: T, reason: &'static str) -> Error {
    Error::Parameter {
        name,
        value: value.widen(),
        reason,
    }
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::one() && alpha.is_finite() {
        Ok(())
    } else {
        Err(param("alpha", alpha, "must be > 1"))
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::Parameter {
            name: "count",
            value: 0.0,
            reason: "must be >= 1",
        });
    }
    Ok(())
}

fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable")
}

fn log_power_defect<T: Real>(n: usize, alpha: T) -> T {
    let x = from_usize::<T>(n);
    T::one() / (x * x.ln().powf(alpha))
}

impl<T: Real> ZeroFamily<T> {
    fn generated(kind: ZeroKind<T>, count: usize) -> Result<Self> {
        check_count(count)?;
        let family = Self {
            kind,
            count,
            rotation: T::zero(),
        };
        family.generate()?;
        Ok(family)
    }

    pub fn power(alpha: T, count: usize) -> Result<Self> {
        check_alpha(alpha)?;
        Self::generated(ZeroKind::Power { alpha }, count)
    }

    pub fn log_power(alpha: T, count: usize) -> Result<Self> {
        check_alpha(alpha)?;
        Self::generated(ZeroKind::LogPower { alpha }, count)
    }

    pub fn geometric(alpha: T, count: usize) -> Result<Self> {
        check_alpha(alpha)?;
        Self::generated(ZeroKind::Geometric { alpha }, count)
    }

    pub fn double_exp(count: usize) -> Result<Self> {
        Self::generated(ZeroKind::DoubleExp, count)
    }

    pub fn tangential(alpha: T, gamma: T, count: usize) -> Result<Self> {
        tangential_point(1, alpha, gamma)?;
        Self::generated(ZeroKind::Tangential { alpha, gamma }, count)
    }

    /// Finite zero list; the stored order is kept, generation sorts by modulus.
    pub fn explicit(zeros: Vec<Complex<T>>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::EmptyZeros);
        }
        for z in &zeros {
            DiscPoint::new(*z)?;
        }
        Ok(Self {
            count: zeros.len(),
            kind: ZeroKind::Explicit(zeros),
            rotation: T::zero(),
        })
    }

    pub fn with_rotation(mut self, rotation: T) -> Self {
        self.rotation = rotation;
        self
    }

    /// Same family truncated at a different count; explicit lists are unchanged.
    pub fn with_count(&self, count: usize) -> Result<Self> {
        if let ZeroKind::Explicit(_) = self.kind {
            return Ok(self.clone());
        }
        let mut f = Self::generated(self.kind.clone(), count)?;
        f.rotation = self.rotation;
        Ok(f)
    }

    pub fn kind(&self) -> &ZeroKind<T> {
        &self.kind
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn rotation(&self) -> T {
        self.rotation
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.kind, ZeroKind::Explicit(_))
    }

    /// Boundary point the generated zeros accumulate at; `None` for explicit lists.
    pub fn accumulation_point(&self) -> Option<Complex<T>> {
        match self.kind {
            ZeroKind::Explicit(_) => None,
            _ => Some(Complex::from_polar(T::one(), self.rotation)),
        }
    }

    /// First sequence index produced by the generator.
    pub fn first_index(&self) -> usize {
        match &self.kind {
            ZeroKind::Power { .. } => 2,
            ZeroKind::LogPower { alpha } => {
                let mut n = 2;
                while log_power_defect::<T>(n, *alpha) >= T::one() {
                    n += 1;
                }
                n
            }
            _ => 1,
        }
    }

    /// Sequence index of the last generated zero.
    pub fn last_index(&self) -> usize {
        self.first_index() + self.count - 1
    }

    /// Generated zeros, ordered by non-decreasing modulus.
    pub fn generate(&self) -> Result<Vec<DiscPoint<T>>> {
        let rot = Complex::from_polar(T::one(), self.rotation);
        let radial = |defect: T| -> Result<DiscPoint<T>> {
            if !(defect > T::zero()) || !defect.is_normal() {
                return Err(Error::Parameter {
                    name: "count",
                    value: self.count as f64,
                    reason: "zeros lie closer to the circle than the scalar type resolves",
                });
            }
            Ok(DiscPoint::anchored(
                rot,
                Complex::new(defect, T::zero()),
                defect,
            ))
        };
        let first = self.first_index();
        let indices = first..first + self.count;
        match &self.kind {
            ZeroKind::Power { alpha } => indices
                .map(|n| radial(from_usize::<T>(n).powf(-*alpha)))
                .collect(),
            ZeroKind::LogPower { alpha } => indices
                .map(|n| radial(log_power_defect(n, *alpha)))
                .collect(),
            ZeroKind::Geometric { alpha } => indices
                .map(|n| radial(alpha.powf(-from_usize::<T>(n))))
                .collect(),
            ZeroKind::DoubleExp => indices
                .map(|n| {
                    let e = T::lit(2.0).powf(from_usize(n));
                    radial(T::lit(2.0).powf(-e))
                })
                .collect(),
            ZeroKind::Tangential { alpha, gamma } => indices
                .map(|n| {
                    let p = tangential_point(n as u64, *alpha, *gamma)?;
                    if !p.defect.is_normal() {
                        return radial(p.defect);
                    }
                    Ok(p.rotated(rot))
                })
                .collect(),
            ZeroKind::Explicit(zs) => {
                let mut sorted: Vec<Complex<T>> = zs.clone();
                sorted.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite moduli"));
                sorted.into_iter().map(|z| DiscPoint::new(z * rot)).collect()
            }
        }
    }

    /// Partial sum of `1 - |z_n|` and an integral-comparison bound on the tail.
    pub fn blaschke_sum(&self) -> Result<BlaschkeSum<T>> {
        let zeros = self.generate()?;
        // smallest terms first
        let partial = zeros
            .iter()
            .rev()
            .fold(T::zero(), |acc, p| acc + p.defect);
        Ok(BlaschkeSum {
            partial,
            tail_bound: self.tail_bound(),
        })
    }

    /// Bound on `sum_{n > last} (1 - |z_n|)` for the untruncated family.
    pub fn tail_bound(&self) -> T {
        let last = from_usize::<T>(self.last_index());
        let one = T::one();
        match &self.kind {
            ZeroKind::Power { alpha } | ZeroKind::Tangential { alpha, .. } => {
                last.powf(one - *alpha) / (*alpha - one)
            }
            ZeroKind::LogPower { alpha } => {
                one / ((*alpha - one) * last.ln().powf(*alpha - one))
            }
            ZeroKind::Geometric { alpha } => alpha.powf(-last) / (*alpha - one),
            ZeroKind::DoubleExp => {
                let e = T::lit(2.0).powf(last + one);
                T::lit(2.0) * T::lit(2.0).powf(-e)
            }
            ZeroKind::Explicit(_) => T::zero(),
        }
    }

    /// Bound on `|B - B_N|` over `|z| <= r`; infinite above [`DEFAULT_TRUNCATION_CAP`].
    pub fn truncation_bound(&self, r: T) -> T {
        tail_to_bound(self.tail_bound(), r, T::lit(DEFAULT_TRUNCATION_CAP))
    }

    pub fn truncation_bound_capped(&self, r: T, cap: T) -> T {
        tail_to_bound(self.tail_bound(), r, cap)
    }
}

/// `exp(2 tail / (1 - r)) - 1`, or infinity when it exceeds `cap`.
pub(crate) fn tail_to_bound<T: Real>(tail: T, r: T, cap: T) -> T {
    if tail == T::zero() {
        return T::zero();
    }
    if !(r < T::one()) {
        return T::infinity();
    }
    let e = (T::lit(2.0) * tail / (T::one() - r)).exp_m1();
    if e > cap || !e.is_finite() {
        T::infinity()
    } else {
        e
    }
}

/// Point mass `gamma` at `exp(i theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom<T: Real = f64> {
    pub theta: T,
    pub gamma: T,
}

/// Atom sequence generators.
#[derive(Debug, Clone, PartialEq)]
pub enum AtomKind<T: Real = f64> {
    /// `theta_0 = 0` with mass `gamma0`, then `theta_n = 2^-n`, `gamma_n = n^-2`.
    DyadicSquare { gamma0: T },
    /// `theta_0 = 0` with mass `gamma0`, then `theta_m = 1/m`, `gamma_m = m^-exponent` for `m >= 2`.
    Harmonic { gamma0: T, exponent: T },
    Explicit(Vec<Atom<T>>),
}

/// An atom sequence truncated to `count` atoms (including the one at angle 0
/// for the generated kinds) and rigidly rotated.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomFamily<T: Real = f64> {
    kind: AtomKind<T>,
    count: usize,
    rotation: T,
}

impl<T: Real> AtomFamily<T> {
    pub fn dyadic_square(gamma0: T, count: usize) -> Result<Self> {
        check_count(count)?;
        if !(gamma0 > T::zero()) || !gamma0.is_finite() {
            return Err(param("gamma0", gamma0, "must be > 0"));
        }
        Ok(Self {
            kind: AtomKind::DyadicSquare { gamma0 },
            count,
            rotation: T::zero(),
        })
    }

    pub fn harmonic(gamma0: T, exponent: T, count: usize) -> Result<Self> {
        check_count(count)?;
        if !(gamma0 > T::zero()) || !gamma0.is_finite() {
            return Err(param("gamma0", gamma0, "must be > 0"));
        }
        if !(exponent > T::one()) || !exponent.is_finite() {
            return Err(param(
                "exponent",
                exponent,
                "masses m^-exponent must be summable (exponent > 1)",
            ));
        }
        Ok(Self {
            kind: AtomKind::Harmonic { gamma0, exponent },
            count,
            rotation: T::zero(),
        })
    }

    pub fn explicit(atoms: Vec<Atom<T>>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidAtoms("empty list".into()));
        }
        let tau = T::TAU();
        let mut reduced = Vec::with_capacity(atoms.len());
        for a in &atoms {
            if !a.theta.is_finite() {
                return Err(Error::InvalidAtoms(format!("angle {} is not finite", a.theta)));
            }
            if !(a.gamma > T::zero()) || !a.gamma.is_finite() {
                return Err(Error::InvalidAtoms(format!("mass {} must be > 0", a.gamma)));
            }
            let t = a.theta % tau;
            reduced.push(if t < T::zero() { t + tau } else { t });
        }
        reduced.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let tol = T::lit(1e-12);
        let wrap = reduced.len() > 1 && reduced[0] + tau - reduced[reduced.len() - 1] <= tol;
        if wrap || reduced.windows(2).any(|w| w[1] - w[0] <= tol) {
            return Err(Error::InvalidAtoms("angles must be distinct".into()));
        }
        Ok(Self {
            count: atoms.len(),
            kind: AtomKind::Explicit(atoms),
            rotation: T::zero(),
        })
    }

    pub fn single(theta: T, gamma: T) -> Result<Self> {
        Self::explicit(vec![Atom { theta, gamma }])
    }

    pub fn with_rotation(mut self, rotation: T) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn with_count(&self, count: usize) -> Result<Self> {
        check_count(count)?;
        if let AtomKind::Explicit(_) = self.kind {
            return Ok(self.clone());
        }
        Ok(Self {
            kind: self.kind.clone(),
            count,
            rotation: self.rotation,
        })
    }

    pub fn kind(&self) -> &AtomKind<T> {
        &self.kind
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn rotation(&self) -> T {
        self.rotation
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.kind, AtomKind::Explicit(_))
    }

    /// Generated atoms in sequence order, rotation applied to the angles.
    pub fn generate(&self) -> Vec<Atom<T>> {
        let rot = self.rotation;
        let mut out = Vec::with_capacity(self.count);
        match &self.kind {
            AtomKind::DyadicSquare { gamma0 } => {
                out.push(Atom { theta: rot, gamma: *gamma0 });
                for n in 1..self.count {
                    let nf = from_usize::<T>(n);
                    out.push(Atom {
                        theta: T::lit(2.0).powf(-nf) + rot,
                        gamma: T::one() / (nf * nf),
                    });
                }
            }
            AtomKind::Harmonic { gamma0, exponent } => {
                out.push(Atom { theta: rot, gamma: *gamma0 });
                for m in 2..=self.count {
                    let mf = from_usize::<T>(m);
                    out.push(Atom {
                        theta: mf.recip() + rot,
                        gamma: mf.powf(-*exponent),
                    });
                }
            }
            AtomKind::Explicit(atoms) => {
                out.extend(atoms.iter().map(|a| Atom {
                    theta: a.theta + rot,
                    gamma: a.gamma,
                }));
            }
        }
        out
    }

    /// Bound on the total mass of the atoms beyond the truncation.
    pub fn mass_tail_bound(&self) -> T {
        let one = T::one();
        match &self.kind {
            AtomKind::DyadicSquare { .. } => {
                if self.count >= 2 {
                    one / from_usize::<T>(self.count - 1)
                } else {
                    T::PI() * T::PI() / T::lit(6.0)
                }
            }
            AtomKind::Harmonic { exponent, .. } => {
                from_usize::<T>(self.count).powf(one - *exponent) / (*exponent - one)
            }
            AtomKind::Explicit(_) => T::zero(),
        }
    }

    /// Bound on `|S - S_N|` over `|z| <= r`, from `|(z+e)/(z-e)| <= 2/(1-r)`.
    pub fn truncation_bound(&self, r: T) -> T {
        tail_to_bound(self.mass_tail_bound(), r, T::lit(DEFAULT_TRUNCATION_CAP))
    }
}

//! Disc geometry: pseudohyperbolic distance, approach regions and the
//! tangentially approaching zero construction.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative slack allowed in region membership, so that points constructed
/// on the region boundary are not rejected by rounding.
pub const MEMBERSHIP_REL_TOL: f64 = 1e-12;

/// A point of the open disc carrying an accurate distance to the circle.
///
/// Zeros generated close to the boundary (e.g. `1 - 2^-64`) are not
/// representable as distinct complex numbers, so every point also stores
/// `defect = 1 - |z|` and its offset `z - anchor` from a unimodular anchor,
/// both computed analytically by the generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint<T: Real = f64> {
    pub z: Complex<T>,
    pub defect: T,
    pub anchor: Complex<T>,
    pub offset: Complex<T>,
}

impl<T: Real> DiscPoint<T> {
    /// Wraps an arbitrary interior point, computing the defect directly.
    pub fn new(z: Complex<T>) -> Result<Self> {
        let m = z.norm();
        if !(z.re.is_finite() && z.im.is_finite()) || m >= T::one() {
            return Err(outside(z));
        }
        let anchor = if m == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            z / m
        };
        Ok(Self {
            z,
            defect: T::one() - m,
            anchor,
            offset: z - anchor,
        })
    }

    /// Point `anchor * (1 - offset_from_one)` with an exactly known defect.
    /// `gap` is `1 - w` for the unrotated point `w`.
    pub(crate) fn anchored(anchor: Complex<T>, gap: Complex<T>, defect: T) -> Self {
        let w = Complex::new(T::one(), T::zero()) - gap;
        Self {
            z: anchor * w,
            defect,
            anchor,
            offset: -(anchor * gap),
        }
    }

    pub fn modulus(&self) -> T {
        T::one() - self.defect
    }

    /// `1 - |z|^2`, computed from the defect.
    pub fn one_minus_mod_sq(&self) -> T {
        self.defect * (T::lit(2.0) - self.defect)
    }

    /// `|xi - z|` for a boundary point `xi`, accurate when `xi` is the anchor.
    pub fn distance_to(&self, xi: Complex<T>) -> T {
        ((xi - self.anchor) - self.offset).norm()
    }

    pub fn rotated(&self, rot: Complex<T>) -> Self {
        Self {
            z: self.z * rot,
            defect: self.defect,
            anchor: self.anchor * rot,
            offset: self.offset * rot,
        }
    }
}

fn outside<T: Real>(z: Complex<T>) -> Error {
    Error::OutsideDisc {
        re: z.re.widen(),
        im: z.im.widen(),
    }
}

fn check_interior<T: Real>(z: Complex<T>) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= T::one() {
        return Err(outside(z));
    }
    Ok(())
}

/// Pseudohyperbolic distance `|(z - w) / (1 - conj(w) z)|`.
pub fn pseudohyperbolic<T: Real>(z: Complex<T>, w: Complex<T>) -> Result<T> {
    check_interior(z)?;
    check_interior(w)?;
    Ok(pseudo_raw(z, w))
}

fn pseudo_raw<T: Real>(z: Complex<T>, w: Complex<T>) -> T {
    let num = (z - w).norm();
    if num == T::zero() {
        return T::zero();
    }
    let den = (Complex::new(T::one(), T::zero()) - w.conj() * z).norm();
    (num / den).min(T::one())
}

/// Pseudohyperbolic distance between stored disc points. Points sharing an
/// anchor are differenced through their offsets, which keeps clusters near
/// the boundary resolvable.
pub fn point_distance<T: Real>(a: &DiscPoint<T>, b: &DiscPoint<T>) -> T {
    if a.anchor != b.anchor {
        return pseudo_raw(a.z, b.z);
    }
    let num = (a.offset - b.offset).norm();
    if num == T::zero() {
        return T::zero();
    }
    // 1 - conj(b) a with a = w + oa, b = w + ob and |w| = 1
    let w = a.anchor;
    let den = (w.conj() * a.offset + w * b.offset.conj() + b.offset.conj() * a.offset).norm();
    if den == T::zero() {
        return T::zero();
    }
    (num / den).min(T::one())
}

/// Approach region `{z : |1 - conj(vertex) z|^gamma <= c (1 - |z|)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region<T: Real = f64> {
    gamma: T,
    vertex: Complex<T>,
    c: T,
}

impl<T: Real> Region<T> {
    pub fn new(gamma: T, vertex: Complex<T>, c: T) -> Result<Self> {
        if !(gamma >= T::one()) || !gamma.is_finite() {
            return Err(Error::Parameter {
                name: "gamma",
                value: gamma.widen(),
                reason: "must be >= 1",
            });
        }
        if !(c > T::zero()) || !c.is_finite() {
            return Err(Error::Parameter {
                name: "c",
                value: c.widen(),
                reason: "must be > 0",
            });
        }
        if gamma == T::one() && c <= T::one() {
            return Err(Error::Parameter {
                name: "c",
                value: c.widen(),
                reason: "Stolz regions (gamma = 1) need c > 1",
            });
        }
        if (vertex.norm() - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::NotOnCircle {
                re: vertex.re.widen(),
                im: vertex.im.widen(),
            });
        }
        Ok(Self { gamma, vertex, c })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn vertex(&self) -> Complex<T> {
        self.vertex
    }

    pub fn c(&self) -> T {
        self.c
    }

    /// Membership of an interior point.
    pub fn contains(&self, z: Complex<T>) -> Result<bool> {
        check_interior(z)?;
        let lhs = (Complex::new(T::one(), T::zero()) - self.vertex.conj() * z)
            .norm()
            .powf(self.gamma);
        Ok(self.compare(lhs, T::one() - z.norm()))
    }

    /// Membership using the stored defect and offset of a generated point.
    pub fn contains_point(&self, p: &DiscPoint<T>) -> bool {
        let lhs = p.distance_to(self.vertex).powf(self.gamma);
        self.compare(lhs, p.defect)
    }

    fn compare(&self, lhs: T, defect: T) -> bool {
        lhs <= self.c * defect * (T::one() + T::lit(MEMBERSHIP_REL_TOL))
    }
}

fn check_tangential_params<T: Real>(alpha: T, gamma: T) -> Result<()> {
    if !(gamma > T::one()) || !gamma.is_finite() {
        return Err(Error::Parameter {
            name: "gamma",
            value: gamma.widen(),
            reason: "tangential zeros need gamma > 1",
        });
    }
    if !(alpha > gamma / (gamma - T::one())) || !alpha.is_finite() {
        return Err(Error::Parameter {
            name: "alpha",
            value: alpha.widen(),
            reason: "tangential zeros need alpha > gamma / (gamma - 1)",
        });
    }
    Ok(())
}

/// The `n`-th tangential zero with `|z_n| = 1 - n^-alpha` and
/// `|1 - z_n| = n^(-alpha/gamma)`, taken with non-negative argument.
pub fn tangential_zero<T: Real>(n: u64, alpha: T, gamma: T) -> Result<Complex<T>> {
    Ok(tangential_point(n, alpha, gamma)?.z)
}

pub(crate) fn tangential_point<T: Real>(n: u64, alpha: T, gamma: T) -> Result<DiscPoint<T>> {
    check_tangential_params(alpha, gamma)?;
    if n == 0 {
        return Err(Error::Parameter {
            name: "n",
            value: 0.0,
            reason: "index starts at 1",
        });
    }
    let one = T::one();
    let nn = T::from_u64(n).expect("index representable");
    let defect = nn.powf(-alpha);
    let chord = nn.powf(-alpha / gamma);
    let r = one - defect;
    let anchor = Complex::new(one, T::zero());
    if r == T::zero() {
        // n = 1: the origin, |1 - 0| = 1 = chord
        return Ok(DiscPoint::anchored(anchor, Complex::new(one, T::zero()), one));
    }
    // sin^2(phi/2) = (chord^2 - defect^2) / (4 r), from the cosine rule
    let s = (chord * chord - defect * defect) / (T::lit(4.0) * r);
    if !(s >= T::zero() && s <= one) {
        return Err(Error::InfeasibleGeometry(format!(
            "cosine rule leaves [-1, 1] for n = {n}"
        )));
    }
    let sin_phi = T::lit(2.0) * (s * (one - s)).sqrt();
    // 1 - r e^{i phi} = (defect + 2 r s) - i r sin(phi)
    let gap = Complex::new(defect + T::lit(2.0) * r * s, -(r * sin_phi));
    Ok(DiscPoint::anchored(anchor, gap, defect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type C = Complex<f64>;

    #[test]
    fn pseudohyperbolic_examples() {
        let z = C::new(0.3, -0.2);
        assert_eq!(pseudohyperbolic(z, z).unwrap(), 0.0);
        let w = C::new(0.4, 0.1);
        assert!((pseudohyperbolic(C::new(0.0, 0.0), w).unwrap() - w.norm()).abs() < 1e-15);
        // |1.0 / 1.25|
        let d = pseudohyperbolic(C::new(0.5, 0.0), C::new(-0.5, 0.0)).unwrap();
        assert!((d - 0.8).abs() < 1e-15);
    }

    #[test]
    fn pseudohyperbolic_rejects_boundary() {
        let err = pseudohyperbolic(C::new(1.0, 0.0), C::new(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::OutsideDisc { .. }));
    }

    #[test]
    fn region_examples() {
        let one = C::new(1.0, 0.0);
        let r = Region::new(1.0, one, 2.0).unwrap();
        assert!(r.contains(C::new(0.0, 0.0)).unwrap());
        assert!(r.contains(C::new(0.99, 0.0)).unwrap());
        assert!(!r.contains(C::new(0.0, 0.99)).unwrap());
        let v = C::from_polar(1.0, 2.0);
        let rv = Region::new(1.0, v, 2.0).unwrap();
        assert!(rv.contains(v * 0.99).unwrap());
    }

    #[test]
    fn region_rejects_bad_parameters() {
        let one = C::new(1.0, 0.0);
        assert!(Region::new(1.0, one, 1.0).is_err());
        assert!(Region::new(0.5, one, 2.0).is_err());
        assert!(Region::new(2.0, C::new(0.5, 0.0), 2.0).is_err());
        assert!(Region::new(2.0, one, 1.0).is_ok());
    }

    #[test]
    fn tangential_first_is_origin() {
        let z = tangential_zero(1, 3.0, 2.0).unwrap();
        assert_eq!(z, C::new(0.0, 0.0));
    }

    #[test]
    fn tangential_second_matches_cosine_rule() {
        let z = tangential_zero(2, 3.0_f64, 2.0).unwrap();
        assert!((z.norm() - 0.875).abs() < 1e-12);
        let chord = (C::new(1.0, 0.0) - z).norm();
        assert!((chord - 2f64.powf(-1.5)).abs() < 1e-12);
        assert!(z.im >= 0.0);
        // independent route: solve cos(phi) directly
        let r = 0.875_f64;
        let cosphi = (1.0 + r * r - 2f64.powf(-3.0)) / (2.0 * r);
        let direct = C::from_polar(r, cosphi.acos());
        assert!((direct - z).norm() < 1e-13);
    }

    #[test]
    fn tangential_rejects_bad_alpha() {
        // alpha must exceed gamma/(gamma-1) = 2
        assert!(tangential_zero(3, 2.0, 2.0).is_err());
        assert!(tangential_zero(3, 3.0, 1.0).is_err());
    }

    #[test]
    fn tangential_large_index_accuracy() {
        for &n in &[10u64, 1000, 100_000, 1_000_000] {
            let p = tangential_point(n, 3.0_f64, 2.0).unwrap();
            let want_mod = 1.0 - (n as f64).powf(-3.0);
            let want_chord = (n as f64).powf(-1.5);
            assert!(((p.modulus() - want_mod) / want_mod).abs() < 1e-12);
            let chord = p.distance_to(C::new(1.0, 0.0));
            assert!(((chord - want_chord) / want_chord).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn tangential_in_region() {
        let region = Region::new(2.0, C::new(1.0, 0.0), 1.0).unwrap();
        for n in 1..=10_000u64 {
            let p = tangential_point(n, 3.0_f64, 2.0).unwrap();
            assert!(region.contains_point(&p), "n = {n}");
        }
    }

    #[test]
    fn point_distance_resolves_boundary_cluster() {
        let one = C::new(1.0, 0.0);
        let a = DiscPoint::anchored(one, C::new(2f64.powi(-32), 0.0), 2f64.powi(-32));
        let b = DiscPoint::anchored(one, C::new(2f64.powi(-64), 0.0), 2f64.powi(-64));
        // real points 1-a, 1-b: (a-b)/(a+b-ab)
        let (x, y) = (2f64.powi(-32), 2f64.powi(-64));
        let want = (x - y) / (x + y - x * y);
        assert!((point_distance(&a, &b) - want).abs() < 1e-15);
    }

    #[test]
    fn generic_over_f32() {
        let d = pseudohyperbolic(Complex::new(0.5f32, 0.0), Complex::new(-0.5f32, 0.0)).unwrap();
        assert!((d - 0.8).abs() < 1e-6);
    }

    fn interior() -> impl Strategy<Value = C> {
        (0.0..0.999f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| C::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn pseudohyperbolic_symmetric_and_below_one(z in interior(), w in interior()) {
            let a = pseudohyperbolic(z, w).unwrap();
            let b = pseudohyperbolic(w, z).unwrap();
            prop_assert!((a - b).abs() <= 1e-12);
            prop_assert!(a < 1.0);
        }

        #[test]
        fn stolz_radius_inside(r in 0.0..0.9999f64, t in 0.0..std::f64::consts::TAU, c in 1.0001..10.0f64) {
            let v = C::from_polar(1.0, t);
            let region = Region::new(1.0, v, c).unwrap();
            prop_assert!(region.contains(v * r).unwrap());
        }
    }
}

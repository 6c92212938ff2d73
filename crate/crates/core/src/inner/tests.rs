use super::*;
use proptest::prelude::*;
use std::f64::consts::PI;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn half() -> InnerFunctionSpec {
    InnerFunctionSpec::blaschke(ZeroFamily::explicit(vec![c(0.5, 0.0)]).unwrap())
}

fn atom() -> InnerFunctionSpec {
    InnerFunctionSpec::singular(AtomFamily::single(0.0, 1.0).unwrap())
}

fn finite_pair() -> InnerFunctionSpec {
    InnerFunctionSpec::blaschke(ZeroFamily::explicit(vec![c(0.5, 0.0), c(0.0, 0.3)]).unwrap())
}

fn specs() -> Vec<InnerFunctionSpec> {
    vec![
        finite_pair(),
        InnerFunctionSpec::blaschke(ZeroFamily::geometric(2.0, 20).unwrap()),
        InnerFunctionSpec::singular(AtomFamily::dyadic_square(1.0, 30).unwrap()),
        half().times(atom()),
    ]
}

#[test]
fn blaschke_examples() {
    let f = ZeroFamily::explicit(vec![c(0.5, 0.0)]).unwrap();
    assert_eq!(eval_blaschke(&f, c(0.0, 0.0)).unwrap().f, c(0.5, 0.0));
    assert_eq!(eval_blaschke(&f, c(0.5, 0.0)).unwrap().f.norm(), 0.0);
    let g = ZeroFamily::geometric(2.0, 15).unwrap();
    let j = eval_blaschke(&g, C::from_polar(1.0, PI / 3.0)).unwrap();
    assert!((j.f.norm() - 1.0).abs() < 1e-9);
}

#[test]
fn jet_at_a_zero_is_finite() {
    let f = ZeroFamily::explicit(vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
    let j = eval_blaschke(&f, c(0.5, 0.0)).unwrap();
    assert_eq!(j.f.norm(), 0.0);
    assert_eq!(j.df.norm(), 0.0);
    // double zero: B'' = 2 b'(a)^2 with b'(a) = -1/(1-|a|^2)
    let bp = 1.0 / 0.75;
    assert!((j.d2f.norm() - 2.0 * bp * bp).abs() < 1e-12);
}

#[test]
fn zero_at_origin_is_identity_factor() {
    let f = ZeroFamily::explicit(vec![c(0.0, 0.0)]).unwrap();
    let z = c(0.3, -0.4);
    let j = eval_blaschke(&f, z).unwrap();
    assert_eq!(j.f, z);
    assert_eq!(j.df, c(1.0, 0.0));
}

#[test]
fn singular_examples() {
    let s = AtomFamily::single(0.0, 1.0).unwrap();
    let j = eval_singular(&s, c(0.0, 0.0)).unwrap();
    let e1 = (-1.0f64).exp();
    assert!((j.f - c(e1, 0.0)).norm() < 1e-15);
    // d/dz exp((z+1)/(z-1)) = -2/(z-1)^2 exp(...) -> -2/e at 0
    assert!((j.df - c(-2.0 * e1, 0.0)).norm() < 1e-15);
    // radial approach to the atom
    let mut last = 1.0;
    for r in [0.5, 0.9, 0.99, 0.999] {
        let m = eval_singular(&s, c(r, 0.0)).unwrap().f.norm();
        assert!(m < last);
        last = m;
    }
    assert!(last < 1e-100);
}

#[test]
fn singular_underflow_clamp_and_collision() {
    let s = AtomFamily::single(0.0, 1.0).unwrap();
    let j = eval_singular(&s, c(1.0 - 1e-5, 0.0)).unwrap();
    assert_eq!(j, Jet2::zero());
    assert!(matches!(
        eval_singular(&s, c(1.0, 0.0)),
        Err(Error::AtomCollision { .. })
    ));
}

#[test]
fn product_examples() {
    assert_eq!(eval_inner(&half(), c(0.0, 0.0)).unwrap().f, c(0.5, 0.0));
    let v = eval_inner(&half().times(atom()), c(0.0, 0.0)).unwrap().f;
    assert!((v - c(0.5 * (-1.0f64).exp(), 0.0)).norm() < 1e-15);
}

#[test]
fn boundary_derivative_examples() {
    let s = InnerFunction::new(&atom()).unwrap();
    let v = s.boundary_derivative_modulus(c(-1.0, 0.0), 1e-3).unwrap();
    assert!((v - 0.5).abs() < 1e-15);
    let b = InnerFunction::new(&half()).unwrap();
    let v = b.boundary_derivative_modulus(c(1.0, 0.0), 1e-3).unwrap();
    assert!((v - 3.0).abs() < 1e-14);
    assert!(matches!(
        s.boundary_derivative_modulus(C::from_polar(1.0, 1e-4), 1e-3),
        Err(Error::SpectrumProximity { .. })
    ));
    assert!(s.boundary_derivative_modulus(c(0.5, 0.0), 1e-3).is_err());
}

#[test]
fn boundary_derivative_conjugation_symmetry() {
    let spec = InnerFunctionSpec::blaschke(ZeroFamily::geometric(2.0, 20).unwrap())
        .times(InnerFunctionSpec::singular(AtomFamily::single(PI, 0.5).unwrap()));
    let f = InnerFunction::new(&spec).unwrap();
    for k in 1..50 {
        let z = C::from_polar(1.0, 0.06 * k as f64);
        let a = f.boundary_derivative_modulus(z, 1e-3).unwrap();
        let b = f.boundary_derivative_modulus(z.conj(), 1e-3).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }
}

#[test]
fn radial_profile_examples() {
    let p = radial_modulus_profile(&half(), c(1.0, 0.0), &[0.5]).unwrap();
    assert_eq!(p[0].modulus, 0.0);
    let radii = [0.5, 0.9, 0.99, 0.999];
    let p = radial_modulus_profile(&atom(), c(1.0, 0.0), &radii).unwrap();
    assert!(p.windows(2).all(|w| w[1].modulus < w[0].modulus));
    let p = radial_modulus_profile(&finite_pair(), c(-1.0, 0.0), &radii).unwrap();
    assert!(p.windows(2).all(|w| w[1].modulus > w[0].modulus));
    assert!((p[3].modulus - 1.0).abs() < 1e-2);
    assert!(radial_modulus_profile(&half(), c(1.0, 0.0), &[0.5, 0.4]).is_err());
    let g = InnerFunctionSpec::blaschke(ZeroFamily::geometric(2.0, 10).unwrap());
    let p = radial_modulus_profile(&g, c(1.0, 0.0), &[0.5, 0.9999]).unwrap();
    assert!(p[0].truncation_bound.is_finite());
    assert!(p[1].truncation_bound.is_infinite());
}

#[test]
fn unimodular_on_circle_off_spectrum() {
    for spec in [finite_pair(), atom(), half().times(atom())] {
        let f = InnerFunction::new(&spec).unwrap();
        let mut worst = 0.0f64;
        for k in 0..4096 {
            let z = C::from_polar(1.0, 2.0 * PI * k as f64 / 4096.0);
            if !f.spectrum().is_clear(z, 1e-3) {
                continue;
            }
            worst = worst.max((f.value(z).unwrap().norm() - 1.0).abs());
        }
        assert!(worst < 1e-9, "{worst}");
    }
}

fn random_points(n: usize, rmax: f64, seed: u64) -> Vec<C> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = rmax * rng.gen::<f64>().sqrt();
            C::from_polar(r, rng.gen_range(0.0..2.0 * PI))
        })
        .collect()
}

#[test]
fn jets_match_finite_differences() {
    let h = 1e-6;
    for spec in specs() {
        let f = InnerFunction::new(&spec).unwrap();
        for z in random_points(100, 0.9, 7) {
            let j = f.eval(z).unwrap();
            for dir in [c(h, 0.0), c(0.0, h)] {
                let d1 = (f.value(z + dir).unwrap() - f.value(z - dir).unwrap()) / (dir * 2.0);
                assert!((d1 - j.df).norm() <= 1e-5 * j.df.norm().max(1e-300));
                let d2 = (f.eval(z + dir).unwrap().df - f.eval(z - dir).unwrap().df) / (dir * 2.0);
                assert!((d2 - j.d2f).norm() <= 1e-3 * j.d2f.norm().max(1e-300));
            }
        }
    }
}

#[test]
fn schwarz_pick_holds() {
    for spec in specs() {
        let f = InnerFunction::new(&spec).unwrap();
        for z in random_points(200, 0.95, 11) {
            let j = f.eval(z).unwrap();
            let slack = 10.0 * f.truncation_bound(z.norm());
            assert!(j.df.norm() * (1.0 - z.norm_sqr()) <= 1.0 - j.f.norm_sqr() + slack + 1e-12);
        }
    }
}

#[test]
fn boundary_formula_matches_jets() {
    for spec in specs() {
        let f = InnerFunction::new(&spec).unwrap();
        for k in 0..512 {
            let z = C::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / 512.0);
            let Ok(formula) = f.boundary_derivative_modulus(z, 1e-3) else {
                continue;
            };
            let jet = f.eval(z).unwrap().df.norm();
            assert!((formula - jet).abs() <= 1e-6 * formula);
        }
    }
}

#[test]
fn part_order_does_not_matter() {
    let a = InnerFunctionSpec::blaschke(ZeroFamily::geometric(2.0, 12).unwrap());
    let b = InnerFunctionSpec::singular(AtomFamily::dyadic_square(1.0, 8).unwrap());
    let d = half();
    let f1 = InnerFunction::new(&a.clone().times(b.clone()).times(d.clone())).unwrap();
    let f2 = InnerFunction::new(&d.times(b).times(a)).unwrap();
    for z in random_points(50, 0.9, 3) {
        let (x, y) = (f1.eval(z).unwrap(), f2.eval(z).unwrap());
        for (p, q) in [(x.f, y.f), (x.df, y.df), (x.d2f, y.d2f)] {
            assert!((p - q).norm() <= 1e-12 * p.norm().max(1e-300));
        }
    }
}

#[test]
fn spectrum_examples() {
    let g = InnerFunctionSpec::blaschke(ZeroFamily::geometric(2.0, 10).unwrap());
    let s = g.spectrum();
    assert_eq!(s.points.len(), 1);
    assert_eq!(s.points[0].point, c(1.0, 0.0));
    assert_eq!(s.points[0].kind, SpectrumKind::ZeroAccumulation);

    let d = InnerFunctionSpec::singular(AtomFamily::dyadic_square(1.0, 6).unwrap()).spectrum();
    assert_eq!(d.points.len(), 6);
    assert_eq!(d.points[0].kind, SpectrumKind::Atom);
    assert!((d.points[0].point - c(1.0, 0.0)).norm() < 1e-15);
    assert!(d.points.iter().all(|p| (p.point.norm() - 1.0).abs() < 1e-12));

    assert!(finite_pair().spectrum().is_empty());
    let near = InnerFunctionSpec::blaschke(
        ZeroFamily::explicit(vec![c(1.0 - 1e-8, 0.0), c(0.0, 1.0 - 1e-7)]).unwrap(),
    );
    assert_eq!(near.spectrum().points.len(), 2);
}

#[test]
fn f32_evaluation_tracks_f64() {
    let s32 = InnerFunctionSpec::<f32>::blaschke(
        ZeroFamily::explicit(vec![Complex::new(0.5f32, 0.0), Complex::new(0.0, 0.3)]).unwrap(),
    )
    .times(InnerFunctionSpec::singular(AtomFamily::single(0.0f32, 1.0).unwrap()));
    let s64 = finite_pair().times(atom());
    let f32_ = InnerFunction::new(&s32).unwrap();
    let f64_ = InnerFunction::new(&s64).unwrap();
    for z in random_points(20, 0.8, 5) {
        let a = f32_.eval(Complex::new(z.re as f32, z.im as f32)).unwrap();
        let b = f64_.eval(z).unwrap();
        assert!(((a.f.norm() as f64) - b.f.norm()).abs() < 1e-4);
        assert!(((a.df.norm() as f64) - b.df.norm()).abs() < 1e-3 * b.df.norm().max(1.0));
    }
}

proptest! {
    #[test]
    fn modulus_bounded_inside(r in 0.0..0.99f64, t in 0.0..2.0 * PI) {
        for spec in specs() {
            let f = InnerFunction::new(&spec).unwrap();
            let v = f.value(C::from_polar(r, t)).unwrap().norm();
            prop_assert!(v < 1.0 + f.truncation_bound(r) + 1e-12);
        }
    }

    #[test]
    fn generated_moduli_non_decreasing(alpha in 1.05..4.0f64, count in 1usize..60, rot in 0.0..6.0f64) {
        for fam in [
            ZeroFamily::power(alpha, count).unwrap(),
            ZeroFamily::geometric(alpha, count).unwrap(),
            ZeroFamily::log_power(alpha, count).unwrap(),
        ] {
            let z = fam.with_rotation(rot).generate().unwrap();
            prop_assert_eq!(z.len(), count);
            prop_assert!(z.windows(2).all(|w| w[0].defect >= w[1].defect));
            prop_assert!(z.iter().all(|p| p.defect > 0.0 && p.defect < 1.0 && p.z.norm() > 0.0));
        }
    }
}

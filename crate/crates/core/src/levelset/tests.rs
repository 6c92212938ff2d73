use super::*;
use crate::inner::ZeroFamily;
use proptest::prelude::*;
use std::f64::consts::PI;

fn zeros(zs: &[C64]) -> Spec {
    Spec::blaschke(ZeroFamily::explicit(zs.to_vec()).unwrap())
}

fn origin() -> Spec {
    zeros(&[C64::new(0.0, 0.0)])
}

fn pair() -> Spec {
    zeros(&[C64::new(0.9, 0.0), C64::new(-0.9, 0.0)])
}

#[test]
fn cell_centers_are_symmetric() {
    assert_eq!(cell_center(4, 0, 0), C64::new(-0.75, 0.75));
    assert_eq!(cell_center(4, 3, 3), C64::new(0.75, -0.75));
    for n in [16, 64, 1000] {
        for (i, j) in [(0, 0), (3, 7), (n - 1, 2)] {
            let z = cell_center(n, i, j);
            // quarter turn maps (i, j) to (n-1-j, i)
            assert_eq!(z * C64::new(0.0, 1.0), cell_center(n, n - 1 - j, i));
        }
    }
}

#[test]
fn disc_occupancy_matches_area() {
    let g = sample_grid(&origin(), 0.5, 1024).unwrap();
    let ratio = g.occupied_area() / (PI * 0.25);
    assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
    assert_eq!(g.component_count, 1);
    assert!(g.truncation_ok);
}

#[test]
fn two_zero_blobs() {
    let g = sample_grid(&pair(), 0.01, 2048).unwrap();
    assert_eq!(g.component_count, 2);
    let res = g.resolution;
    // every occupied cell sits close to one of the zeros
    for k in 0..res * res {
        if g.occupancy[k] {
            let z = cell_center(res, k / res, k % res);
            assert!((z.re.abs() - 0.9).abs() < 0.01 && z.im.abs() < 0.01);
        }
    }
}

#[test]
fn near_one_covers_interior() {
    let g = sample_grid(&pair(), 0.999, 128).unwrap();
    let n = g.resolution;
    let rmax = collar_radius(n);
    for k in 0..n * n {
        let inside = cell_center(n, k / n, k % n).norm() < rmax;
        assert_eq!(g.occupancy[k], inside);
    }
}

#[test]
fn collar_is_excluded() {
    let g = sample_grid(&origin(), 0.999, 64).unwrap();
    for k in 0..64 * 64 {
        if cell_center(64, k / 64, k % 64).norm() >= collar_radius(64) {
            assert!(!g.occupancy[k]);
        }
    }
}

#[test]
fn bad_parameters() {
    assert!(sample_grid(&origin(), 1.0, 64).is_err());
    assert!(sample_grid(&origin(), 0.0, 64).is_err());
    assert!(sample_grid(&origin(), 0.5, 8).is_err());
    assert!(one_component_test(&origin(), 0.5, &[64]).is_err());
    assert!(one_component_test(&origin(), 0.5, &[64, 32]).is_err());
    assert!(smallest_connected_epsilon(&origin(), 64, 1e-5).is_err());
}

#[test]
fn labeling_examples() {
    let empty = LevelSetGrid::from_occupancy(4, vec![false; 16]);
    assert_eq!(empty.component_count, 0);
    #[rustfmt::skip]
    let diag = vec![
        true, false, false, false,
        false, true, false, false,
        false, false, false, false,
        true, true, false, true,
    ];
    let g = LevelSetGrid::from_occupancy(4, diag);
    assert_eq!(g.component_count, 3);
    assert_eq!(g.label(0, 0), 1);
    assert_eq!(g.label(1, 1), 1);
    assert_eq!(g.label(3, 0), 2);
    assert_eq!(g.label(3, 3), 3);
    let four = label_components_with(g.clone(), Connectivity::Four);
    assert_eq!(four.component_count, 4);
    assert_eq!(label_components(four), g);
}

#[test]
fn pgm_examples() {
    let g = LevelSetGrid::from_occupancy(2, vec![false; 4]);
    assert_eq!(render_pgm(&g, PgmMode::Occupancy), "P2\n2 2\n1\n0 0\n0 0\n");
    assert_eq!(render_pgm(&g, PgmMode::Labels), "P2\n2 2\n1\n0 0\n0 0\n");
    let g = LevelSetGrid::from_occupancy(2, vec![true, false, false, false]);
    assert_eq!(render_pgm(&g, PgmMode::Occupancy), "P2\n2 2\n1\n1 0\n0 0\n");
    let g = LevelSetGrid::from_occupancy(3, vec![true, true, true, false, false, false, true, false, true]);
    assert_eq!(
        render_pgm(&g, PgmMode::Labels),
        "P2\n3 3\n3\n1 1 1\n0 0 0\n2 0 3\n"
    );
}

#[test]
fn one_component_examples() {
    let r = one_component_test(&origin(), 0.3, &[64, 128]).unwrap();
    assert_eq!(r.verdict, ComponentVerdict::Connected);
    assert_eq!(r.counts, vec![1, 1]);
    let r = one_component_test(&pair(), 0.05, &[512, 1024]).unwrap();
    assert_eq!(r.verdict, ComponentVerdict::Disconnected);
    let thin = Spec::blaschke(ZeroFamily::geometric(2.0, 4).unwrap());
    let r = one_component_test(&thin, 0.5, &[256, 512]).unwrap();
    assert_eq!(r.verdict, ComponentVerdict::Unstable);
    assert_eq!(r.truncation_ok, vec![false, false]);
}

#[test]
fn epsilon_search() {
    let s = smallest_connected_epsilon(&pair(), 256, 1e-3).unwrap().unwrap();
    assert!(s.epsilon - s.lower <= 1e-3);
    let field = ModulusField::sample(&pair(), 256).unwrap();
    assert_eq!(field.grid(s.epsilon).unwrap().component_count, 1);
    assert_ne!(field.grid(s.lower).unwrap().component_count, 1);
    let o = smallest_connected_epsilon(&origin(), 256, 1e-3).unwrap().unwrap();
    assert!(o.epsilon < 0.01);
}

#[test]
fn rotation_permutes_cells() {
    let spec = pair();
    let rot = spec.rotated(PI / 2.0);
    let n = 256;
    let a = sample_grid(&spec, 0.2, n).unwrap();
    let b = sample_grid(&rot, 0.2, n).unwrap();
    assert_eq!(a.component_count, b.component_count);
    let mut diff = 0;
    for i in 0..n {
        for j in 0..n {
            if a.occupied(i, j) != b.occupied(n - 1 - j, i) {
                diff += 1;
            }
        }
    }
    assert_eq!(diff, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn occupancy_monotone_in_epsilon(e1 in 0.01..0.98f64, de in 0.0..0.5f64, x in -0.9..0.9f64) {
        let e2 = (e1 + de).min(0.99);
        let field = ModulusField::sample(&zeros(&[C64::new(x, 0.1), C64::new(-0.5, -0.4)]), 64).unwrap();
        let a = field.grid(e1).unwrap();
        let b = field.grid(e2).unwrap();
        prop_assert!(a.occupancy.iter().zip(&b.occupancy).all(|(p, q)| !p || *q));
    }

    #[test]
    fn labels_dense_and_exact(bits in proptest::collection::vec(any::<bool>(), 64)) {
        let g = LevelSetGrid::from_occupancy(8, bits.clone());
        for (k, &o) in bits.iter().enumerate() {
            prop_assert_eq!(o, g.labels[k] != 0);
        }
        let mut seen: Vec<u32> = g.labels.iter().copied().filter(|&l| l > 0).collect();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen, (1..=g.component_count as u32).collect::<Vec<_>>());
        prop_assert_eq!(render_pgm(&g, PgmMode::Labels), render_pgm(&g.clone(), PgmMode::Labels));
    }
}

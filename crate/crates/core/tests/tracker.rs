use homotopy_radar::polysys::{fixture, make_gamma_homotopy, ojika1_target, FixtureName, Homotopy, TTerm};
use homotopy_radar::tracker::{estimate_inverse_condition, newton_correct, newton_trace, track_to, PathState, TrackerConfig};
use homotopy_radar::{Complex, DoubleDouble, Error, Real, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const T0: f64 = 0.955647336181678;

fn start_state(name: FixtureName) -> (Homotopy<f64>, PathState<f64>) {
    let fx = fixture::<f64>(name).unwrap();
    let s = PathState::new(&fx.homotopy, C64::zero(), fx.start.clone()).unwrap();
    (fx.homotopy, s)
}

const REGULAR: [FixtureName; 5] =
    [FixtureName::Sqrt, FixtureName::Cusp, FixtureName::Monomial4, FixtureName::Ojika1, FixtureName::Planted];

#[test]
fn newton_tail_is_quadratic() {
    let cfg = TrackerConfig::default();
    let mut rng = StdRng::seed_from_u64(17);
    for name in REGULAR {
        let (h, s) = start_state(name);
        for t in [0.0, 0.3, 0.6] {
            let base = track_to(&h, &s, t, &cfg).unwrap();
            for _ in 0..20 {
                let x0: Vec<C64> = base
                    .x
                    .iter()
                    .map(|z| {
                        let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                        *z + C64::from_f64(1e-3 * a.cos(), 1e-3 * a.sin())
                    })
                    .collect();
                let (_, corr) = newton_trace(&h, base.t, &x0, &cfg).unwrap();
                let scale = base.x.iter().fold(1.0f64, |m, z| m.max(z.abs()));
                // the first step leaves the perturbation; the tail starts after it
                for w in corr[1..].windows(2) {
                    // below this the correction is rounding noise
                    if w[1] <= 1e-13 * scale {
                        break;
                    }
                    assert!(w[1] <= 1e2 * w[0] * w[0], "{name} t={t}: {corr:?}");
                }
            }
        }
    }
}

#[test]
fn halving_the_step_keeps_the_path() {
    let cfg = TrackerConfig::default();
    let fine = TrackerConfig { initial_step: cfg.initial_step / 2.0, ..cfg };
    for name in REGULAR {
        let (h, s) = start_state(name);
        for t in [0.3, 0.5, 0.8] {
            let a = track_to(&h, &s, t, &cfg).unwrap();
            let b = track_to(&h, &s, t, &fine).unwrap();
            let d = a.x.iter().zip(&b.x).fold(0.0f64, |m, (p, q)| m.max((*p - *q).abs()));
            assert!(d < 1e-10, "{name} t={t}: {d:e}");
        }
    }
}

#[test]
fn closed_form_paths() {
    let cfg = TrackerConfig::default();
    let (h, s) = start_state(FixtureName::Sqrt);
    for t in [0.5, 0.9, 0.99] {
        let e = track_to(&h, &s, t, &cfg).unwrap();
        let tol = if t == 0.5 { 1e-12 } else { 1e-10 };
        assert!((e.x[0] - C64::from_f64((1.0 - t).sqrt(), 0.0)).abs() < tol, "t={t}");
    }
    let (h, s) = start_state(FixtureName::Cusp);
    let e = track_to(&h, &s, 0.9, &cfg).unwrap();
    assert!((e.x[0] - C64::from_f64(0.01, 0.0)).abs() < 1e-10);
    let (h, s) = start_state(FixtureName::Monomial4);
    let e = track_to(&h, &s, 0.5, &cfg).unwrap();
    for (x, w) in e.x.iter().zip([10.0 / 21.0, 1.0 / 3.0, -5.0 / 3.0, 1.0]) {
        assert!((*x - C64::from_f64(0.5f64.powf(w), 0.0)).abs() < 1e-12);
    }
}

#[test]
fn ojika1_near_the_end() {
    let cfg = TrackerConfig::default();
    let (h, s) = start_state(FixtureName::Ojika1);
    let e = track_to(&h, &s, 0.9, &cfg).unwrap();
    assert!(e.inv_condition > 1e-6);
    let e = track_to(&h, &e, T0, &cfg).unwrap();
    let e = newton_correct(&h, C64::from_f64(T0, 0.0), &e.x, &cfg).unwrap();
    let want = [
        C64::from_f64(1.17998166418735, 0.0181391513338172),
        C64::from_f64(1.60871001974391, -0.0423866308603763),
    ];
    for (x, w) in e.x.iter().zip(want) {
        assert!((*x - w).abs() < 1e-12, "{x} vs {w}");
    }
    assert!((8.9e-4..=8.9e-2).contains(&e.inv_condition), "{}", e.inv_condition);

    let ext_cfg = TrackerConfig::for_precision::<DoubleDouble>();
    let hx = fixture::<DoubleDouble>(FixtureName::Ojika1).unwrap().homotopy;
    let x0: Vec<_> = e.x.iter().map(|z| z.cast::<DoubleDouble>()).collect();
    let ex = newton_correct(&hx, Complex::from_f64(T0, 0.0), &x0, &ext_cfg).unwrap();
    assert!(ex.residual <= ext_cfg.newton_tol);
    for (x, w) in ex.x.iter().zip(want) {
        assert!((x.to_c64() - w).abs() < 1e-12);
    }
}

#[test]
fn singular_endpoint_underflows() {
    let cfg = TrackerConfig::default();
    let (h, s) = start_state(FixtureName::Ojika1);
    match track_to(&h, &s, 1.0, &cfg) {
        Err(Error::StepUnderflow { t, .. }) => assert!(t < 1.0 && t > 0.99),
        other => panic!("expected underflow, got {other:?}"),
    }
}

#[test]
fn fixed_points_and_conditioning() {
    let cfg = TrackerConfig::default();
    let f = ojika1_target::<f64>();
    let h = make_gamma_homotopy(f.clone(), f, C64::one()).unwrap();
    let root = vec![C64::from_f64(-3.0, 0.0), C64::from_f64(-6.0, 0.0)];
    let s = newton_correct(&h, C64::from_f64(0.4, 0.0), &root, &cfg).unwrap();
    assert_eq!(s.newton_iterations, 0);

    let one = Complex::one();
    let diag = |d: f64| {
        Homotopy::explicit_t(
            2,
            vec![
                vec![TTerm { t_coeffs: vec![one], exponents: vec![1, 0] }],
                vec![TTerm { t_coeffs: vec![C64::from_f64(d, 0.0)], exponents: vec![0, 1] }],
            ],
        )
        .unwrap()
    };
    let origin = vec![C64::zero(); 2];
    let s = PathState::new(&diag(1.0), C64::zero(), origin.clone()).unwrap();
    assert!((estimate_inverse_condition(&diag(1.0), &s) - 1.0).abs() < 1e-15);
    let r = estimate_inverse_condition(&diag(1e-6), &s);
    assert!((0.5e-6..=2e-6).contains(&r));

    let (h, _) = start_state(FixtureName::Sqrt);
    let s = newton_correct(&h, C64::zero(), &[C64::from_f64(1.1, 0.0)], &cfg).unwrap();
    assert!((s.x[0] - C64::one()).abs() < 1e-14);
    assert!(s.residual.is_finite() && s.t_real() == 0.0);
    assert!(Real::to_f64(s.x[0].im).abs() < 1e-15);
}

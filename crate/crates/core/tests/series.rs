use homotopy_radar::series::{ratio_sequence, sqrt_a_minus_t_reference, sqrt_one_minus_t_reference, TruncatedSeries};
use homotopy_radar::{Complex, DoubleDouble, Real, C64};
use proptest::prelude::*;

fn schoolbook(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut out = vec![C64::zero(); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

fn small_ints(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-20i32..20, -20i32..20).prop_map(|(a, b)| C64::from_f64(a as f64, b as f64)), len)
}

fn unit_series(len: usize) -> impl Strategy<Value = Vec<C64>> {
    (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len - 1), 0.0..std::f64::consts::TAU).prop_map(|(rest, arg)| {
        let mut v = vec![C64::from_f64(arg.cos(), arg.sin())];
        v.extend(rest.into_iter().map(|(a, b)| C64::from_f64(a, b)));
        v
    })
}

proptest! {
    #[test]
    fn product_matches_convolution(a in small_ints(9), b in small_ints(9)) {
        let sa = TruncatedSeries::new(a.clone()).unwrap();
        let sb = TruncatedSeries::new(b.clone()).unwrap();
        prop_assert_eq!(sa.mul(&sb).unwrap().coeffs().to_vec(), schoolbook(&a, &b));
    }

    #[test]
    fn product_commutes_and_associates(a in small_ints(7), b in small_ints(7), c in small_ints(7)) {
        let (sa, sb, sc) = (
            TruncatedSeries::new(a).unwrap(),
            TruncatedSeries::new(b).unwrap(),
            TruncatedSeries::new(c).unwrap(),
        );
        prop_assert_eq!(sa.mul(&sb).unwrap(), sb.mul(&sa).unwrap());
        let left = sa.mul(&sb).unwrap().mul(&sc).unwrap();
        let right = sa.mul(&sb.mul(&sc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_an_involution(a in unit_series(12)) {
        let s = TruncatedSeries::new(a).unwrap();
        let inv = s.inverse().unwrap();
        let one = s.mul(&inv).unwrap();
        for (k, c) in one.coeffs().iter().enumerate() {
            let want = if k == 0 { C64::one() } else { C64::zero() };
            prop_assert!((*c - want).abs() <= 1e-14 * inv.max_abs_coeff().max(1.0), "k={} {}", k, c);
        }
        let back = inv.inverse().unwrap();
        for (x, y) in back.coeffs().iter().zip(s.coeffs()) {
            prop_assert!((*x - *y).abs() <= 1e-13 * inv.max_abs_coeff().max(1.0));
        }
    }
}

#[test]
fn sqrt_reference_squares_to_one_minus_t() {
    for order in [1usize, 8, 33, 64] {
        let s = sqrt_one_minus_t_reference::<f64>(order);
        let sq = s.mul(&s).unwrap();
        assert!((sq.coeff(0) - C64::one()).abs() < 1e-15);
        assert!((sq.coeff(1) + C64::one()).abs() < 1e-15);
        for k in 2..=order {
            assert!(sq.coeff(k).abs() < 1e-15, "order {order} k {k}: {}", sq.coeff(k));
        }
    }
}

#[test]
fn table_four_exact_column() {
    let s = sqrt_one_minus_t_reference::<f64>(8);
    assert_eq!(s.coeff(0).re, 1.0);
    assert_eq!(s.coeff(2).re, -0.125);
    assert!((s.coeff(8).re + 0.013092041016).abs() < 5e-13);
}

#[test]
fn ratio_closed_form() {
    let s = sqrt_one_minus_t_reference::<DoubleDouble>(600);
    for (n, r) in ratio_sequence(&s).into_iter().enumerate().skip(1) {
        let want = 2.0 * (n as f64 + 1.0) / (2.0 * n as f64 - 1.0);
        assert!((r.unwrap().re.to_f64() - want).abs() <= 4.0 * f64::EPSILON * want, "n={n}");
    }
    let r4 = ratio_sequence(&sqrt_one_minus_t_reference::<f64>(8))[4].unwrap().re;
    assert!((r4 - 1.42857142857143).abs() < 1e-14);
}

#[test]
fn shifted_radius_scales_ratios() {
    let two = sqrt_a_minus_t_reference(2.0, 40);
    let unit = sqrt_one_minus_t_reference::<f64>(40);
    for (a, b) in ratio_sequence(&two).into_iter().zip(ratio_sequence(&unit)) {
        let (a, b) = (a.unwrap(), b.unwrap());
        assert!((a - b.scale(2.0)).abs() <= 4.0 * f64::EPSILON * a.abs());
    }
    let half = sqrt_a_minus_t_reference(0.5, 8);
    let r4 = ratio_sequence(&half)[4].unwrap().re;
    assert!((r4 - 0.5 * 1.42857142857143).abs() < 1e-14);
}

#[test]
fn polynomial_series_is_not_invertible_at_zero() {
    let cusp = TruncatedSeries::from_polynomial(&[C64::one(), C64::from_f64(-2.0, 0.0), C64::one()], 6);
    let r = ratio_sequence(&cusp);
    assert!(r[0].is_some() && r[1].is_some());
    assert!(r[2..].iter().all(Option::is_none));
    let shifted = TruncatedSeries::from_polynomial(&[C64::zero(), C64::one()], 3);
    assert!(shifted.inverse().is_err());
    let g = TruncatedSeries::<f64>::geometric(10);
    assert!(ratio_sequence(&g).into_iter().all(|r| r == Some(Complex::one())));
}

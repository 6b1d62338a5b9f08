use homotopy_radar::monomial::{binomial_residual, hermite_normal_form, smith_normal_form, solve_binomial, IntMatrix};
use homotopy_radar::polysys::monomial4_exponents;
use homotopy_radar::{Error, C64};
use proptest::prelude::*;
use proptest::test_runner::Config;

/// Enumerating every solution is only affordable for moderate `|det A|`.
const SOLVE_DET_LIMIT: i64 = 2000;

fn nonsingular() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
        .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
        .prop_filter("singular", |a| a.determinant().is_ok_and(|d| d != 0))
}

fn rhs(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((0.5f64..2.0, 0.0f64..std::f64::consts::TAU), n)
        .prop_map(|v| v.into_iter().map(|(r, a)| C64::from_f64(r * a.cos(), r * a.sin())).collect())
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().is_ok_and(|d| d.abs() == 1)
}

/// Smallest pairwise distance, by a sweep over points sorted on one axis.
fn min_separation(mut pts: Vec<Vec<C64>>) -> f64 {
    pts.sort_by(|a, b| a[0].re.total_cmp(&b[0].re));
    let dist = |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| (*x - *y).norm_sqr()).sum::<f64>().sqrt();
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[j][0].re - pts[i][0].re > best {
                break;
            }
            best = best.min(dist(&pts[i], &pts[j]));
        }
    }
    best
}

proptest! {
    #![proptest_config(Config { cases: 1000, ..Config::default() })]

    #[test]
    fn smith_form_invariants(a in nonsingular()) {
        let f = smith_normal_form(&a).unwrap();
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(is_unimodular(&f.u) && is_unimodular(&f.v));
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(f.s.get(i, j), 0);
                }
            }
        }
        let d = f.diagonal();
        prop_assert!(d.iter().all(|&s| s > 0));
        prop_assert!(d.windows(2).all(|w| w[1] % w[0] == 0), "{:?}", d);
        prop_assert_eq!(d.iter().product::<i64>(), a.determinant().unwrap().abs());
    }

    #[test]
    fn hermite_form_invariants(a in nonsingular()) {
        let f = hermite_normal_form(&a).unwrap();
        prop_assert_eq!(a.mul(&f.u).unwrap(), f.h.clone());
        prop_assert!(is_unimodular(&f.u));
        let n = a.dim();
        for i in 0..n {
            let d = f.h.get(i, i);
            prop_assert!(d > 0);
            for j in i + 1..n {
                prop_assert_eq!(f.h.get(i, j), 0);
            }
            for j in 0..i {
                prop_assert!((0..d).contains(&f.h.get(i, j)));
            }
        }
        prop_assert_eq!((0..n).map(|i| f.h.get(i, i)).product::<i64>(), a.determinant().unwrap().abs());
    }

    #[test]
    fn binomial_solutions_are_complete(
        (a, c) in nonsingular()
            .prop_filter("too many solutions", |a| a.determinant().unwrap().abs() <= SOLVE_DET_LIMIT)
            .prop_flat_map(|a| { let n = a.dim(); (Just(a), rhs(n)) })
    ) {
        let det = a.determinant().unwrap().unsigned_abs() as usize;
        let sols = solve_binomial(&a, &c).unwrap();
        prop_assert_eq!(sols.len(), det);
        for x in &sols {
            let r = binomial_residual(&a, &c, x);
            prop_assert!(r <= 1e-10, "residual {:e}", r);
        }
        prop_assert!(min_separation(sols) > 1e-8);
    }
}

#[test]
fn monomial4_solutions_at_start() {
    let a = monomial4_exponents();
    assert_eq!(a.determinant().unwrap(), -42);
    assert_eq!(smith_normal_form(&a).unwrap().diagonal().iter().product::<i64>(), 42);
    let c = vec![C64::one(); 4];
    let sols = solve_binomial(&a, &c).unwrap();
    assert_eq!(sols.len(), 42);
    assert!(sols.iter().all(|x| binomial_residual(&a, &c, x) <= 1e-12));
    assert!(sols.iter().any(|x| x.iter().all(|z| (*z - C64::one()).abs() < 1e-14)));
    assert!(min_separation(sols) > 1e-8);
}

#[test]
fn degenerate_inputs() {
    let a = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
    assert_eq!(smith_normal_form(&a).unwrap_err(), Error::SingularExponentMatrix);
    assert_eq!(hermite_normal_form(&a).unwrap_err(), Error::SingularExponentMatrix);
    let b = IntMatrix::from_rows(&[vec![2]]).unwrap();
    assert!(matches!(solve_binomial(&b, &[C64::zero()]), Err(Error::NotApplicable(_))));
    let roots = solve_binomial(&b, &[C64::one()]).unwrap();
    assert_eq!(roots.len(), 2);
    assert!((roots[0][0] - C64::one()).abs() < 1e-15 && (roots[1][0] + C64::one()).abs() < 1e-15);
    let id = IntMatrix::identity(2);
    let rhs = [C64::from_f64(5.0, 0.0), C64::from_f64(0.0, 7.0)];
    let sol = solve_binomial(&id, &rhs).unwrap();
    assert_eq!(sol.len(), 1);
    assert!((sol[0][0] - rhs[0]).abs() < 1e-14 && (sol[0][1] - rhs[1]).abs() < 1e-14);
}

use std::fmt;
use std::str::FromStr;

use super::{make_gamma_homotopy_with_power, total_degree_start, Homotopy, Monomial, PolySystem, TTerm};
use crate::error::{Error, Result};
use crate::monomial::IntMatrix;
use crate::scalars::{Complex, Real};

/// Gamma constant used for the ojika1 runs.
pub const PAPER_GAMMA: (f64, f64) = (-0.917153159675641, -0.398534919043474);
/// The published ojika1 path coordinates satisfy the squared-weight form.
pub const OJIKA1_POWER: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixtureName {
    /// `x^2 - 1 + t`, paths `±sqrt(1 - t)`.
    Sqrt,
    /// `x^2 - (t - 1)^4`, paths `±(t - 1)^2`.
    Cusp,
    /// Four-dimensional monomial homotopy `x^A = (1 - t) e` with `det A = -42`.
    Monomial4,
    /// Ojika's first example in a gamma homotopy with a total-degree start
    /// and relaxation power two; the path from `(1, 1)` ends at the triple
    /// root `(1, 2)`.
    Ojika1,
    /// `x^2 - (t - p)(t - 1)` with a planted branch point `p = 0.5 + 0.5i`.
    Planted,
}

impl FixtureName {
    pub const ALL: [FixtureName; 5] = [
        FixtureName::Sqrt,
        FixtureName::Cusp,
        FixtureName::Monomial4,
        FixtureName::Ojika1,
        FixtureName::Planted,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::Sqrt => "sqrt",
            FixtureName::Cusp => "cusp",
            FixtureName::Monomial4 => "monomial4",
            FixtureName::Ojika1 => "ojika1",
            FixtureName::Planted => "planted",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FixtureName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

/// A homotopy with a known regular start point at `t = 0`.
#[derive(Clone, Debug)]
pub struct Fixture<R> {
    pub name: FixtureName,
    pub homotopy: Homotopy<R>,
    pub start: Vec<Complex<R>>,
}

fn c<R: Real>(re: f64) -> Complex<R> {
    Complex::from_f64(re, 0.0)
}

/// The exponent matrix of the four-dimensional monomial example; column
/// `j` holds the exponents of equation `j`.
pub fn monomial4_exponents() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![7, 7, 0, 0],
        vec![7, 3, 5, 7],
        vec![7, 2, 1, 2],
        vec![7, 0, 1, 2],
    ])
    .expect("square literal")
}

pub fn ojika1_target<R: Real>() -> PolySystem<R> {
    PolySystem::new(
        2,
        vec![
            vec![
                Monomial::new(c(1.0), vec![2, 0]),
                Monomial::new(c(1.0), vec![0, 1]),
                Monomial::new(c(-3.0), vec![0, 0]),
            ],
            vec![
                Monomial::new(c(1.0), vec![1, 0]),
                Monomial::new(c(0.125), vec![0, 2]),
                Monomial::new(c(-1.5), vec![0, 0]),
            ],
        ],
    )
    .expect("well-formed literal")
}

/// `x^2 - (t - p)(t - 1)`, started on the principal branch `sqrt(p)`.
pub fn planted_pole_homotopy<R: Real>(p: Complex<R>) -> Result<Fixture<R>> {
    let one = Complex::one();
    // (t - p)(t - 1) = p - (1 + p) t + t^2
    let poly = vec![-p, one + p, -one];
    let h = Homotopy::explicit_t(
        1,
        vec![vec![
            TTerm { t_coeffs: vec![one], exponents: vec![2] },
            TTerm { t_coeffs: poly, exponents: vec![0] },
        ]],
    )?;
    Ok(Fixture { name: FixtureName::Planted, homotopy: h, start: vec![p.sqrt()] })
}

pub fn fixture<R: Real>(name: FixtureName) -> Result<Fixture<R>> {
    let one_minus_t = vec![c(1.0), c(-1.0)];
    Ok(match name {
        FixtureName::Sqrt => Fixture {
            name,
            homotopy: Homotopy::monomial(IntMatrix::from_rows(&[vec![2]])?, vec![one_minus_t])?,
            start: vec![c(1.0)],
        },
        FixtureName::Cusp => {
            // (t - 1)^4 = 1 - 4t + 6t^2 - 4t^3 + t^4
            let quartic = [-1.0, 4.0, -6.0, 4.0, -1.0].iter().map(|&v| c(v)).collect();
            let h = Homotopy::explicit_t(
                1,
                vec![vec![
                    TTerm { t_coeffs: vec![c(1.0)], exponents: vec![2] },
                    TTerm { t_coeffs: quartic, exponents: vec![0] },
                ]],
            )?;
            Fixture { name, homotopy: h, start: vec![c(1.0)] }
        }
        FixtureName::Monomial4 => Fixture {
            name,
            homotopy: Homotopy::monomial(monomial4_exponents(), vec![one_minus_t; 4])?,
            start: vec![c(1.0); 4],
        },
        FixtureName::Ojika1 => {
            let f = ojika1_target::<R>();
            let (g, _) = total_degree_start(&f)?;
            let gamma = Complex::from_f64(PAPER_GAMMA.0, PAPER_GAMMA.1);
            let homotopy = make_gamma_homotopy_with_power(f, g, gamma, OJIKA1_POWER)?;
            Fixture { name, homotopy, start: vec![c(1.0), c(1.0)] }
        }
        FixtureName::Planted => planted_pole_homotopy(Complex::from_f64(0.5, 0.5))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::inf_norm;
    use crate::scalars::C64;

    fn t(v: f64) -> C64 {
        C64::from_f64(v, 0.0)
    }

    #[test]
    fn names_round_trip() {
        for n in FixtureName::ALL {
            assert_eq!(n.as_str().parse::<FixtureName>().unwrap(), n);
        }
        assert!(matches!("nope".parse::<FixtureName>(), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn start_points_solve_at_zero() {
        for n in FixtureName::ALL {
            let fx = fixture::<f64>(n).unwrap();
            let r = fx.homotopy.evaluate(&fx.start, t(0.0)).unwrap();
            assert!(inf_norm(&r) < 1e-15, "{n}");
        }
    }

    #[test]
    fn sqrt_double_point_and_cusp_start() {
        let s = fixture::<f64>(FixtureName::Sqrt).unwrap();
        assert_eq!(s.homotopy.evaluate(&[C64::zero()], t(1.0)).unwrap()[0], C64::zero());
        assert_eq!(s.homotopy.evaluate(&[C64::one()], t(0.0)).unwrap()[0], C64::zero());
        let cusp = fixture::<f64>(FixtureName::Cusp).unwrap();
        assert_eq!(cusp.homotopy.evaluate(&[C64::one()], t(0.0)).unwrap()[0], C64::zero());
        assert_eq!(s.homotopy.jacobian(&[C64::one()], t(0.0)).unwrap()[(0, 0)], t(2.0));
    }

    #[test]
    fn ojika1_solutions() {
        let f = ojika1_target::<f64>();
        assert_eq!(inf_norm(&f.eval(&[t(-3.0), t(-6.0)]).unwrap()), 0.0);
        assert_eq!(inf_norm(&f.eval(&[t(1.0), t(2.0)]).unwrap()), 0.0);
        let j = f.jacobian(&[t(1.0), t(2.0)]).unwrap();
        assert_eq!(j[(0, 0)], t(2.0));
        assert_eq!(j[(0, 1)], t(1.0));
        assert_eq!(j[(1, 0)], t(1.0));
        assert_eq!(j[(1, 1)], t(0.5));
        assert_eq!(j.determinant(), C64::zero());
    }

    #[test]
    fn monomial4_determinant() {
        assert_eq!(monomial4_exponents().determinant().unwrap(), -42);
    }
}

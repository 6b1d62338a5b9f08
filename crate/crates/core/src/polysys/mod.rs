//! Sparse polynomial systems and homotopies.

mod fixtures;
mod homotopy;
mod io;

pub use fixtures::{fixture, monomial4_exponents, ojika1_target, planted_pole_homotopy, Fixture, FixtureName, OJIKA1_POWER, PAPER_GAMMA};
pub use homotopy::{make_gamma_homotopy, make_gamma_homotopy_with_power, Homotopy, HomotopyForm, TTerm};
pub use io::{load_homotopy_json, HomotopyFile, LoadedHomotopy};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::monomial::IntMatrix;
use crate::scalars::{root_of_unity, Complex, Real};

/// One term `coefficient * x^exponents`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial<R> {
    pub coefficient: Complex<R>,
    pub exponents: Vec<i32>,
}

impl<R: Real> Monomial<R> {
    pub fn new(coefficient: Complex<R>, exponents: Vec<i32>) -> Self {
        Monomial { coefficient, exponents }
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|&e| e as i64).sum()
    }
}

/// `x^a` with binary powering; negative powers of a zero coordinate are an error.
pub(crate) fn monomial_value<R: Real>(x: &[Complex<R>], exps: &[i32]) -> Result<Complex<R>> {
    let mut v = Complex::one();
    for (xi, &e) in x.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        if e < 0 && xi.is_zero() {
            return Err(Error::EvaluationSingular);
        }
        v *= xi.powi(e as i64);
    }
    Ok(v)
}

/// Gradient of `x^a`, one entry per variable.
pub(crate) fn monomial_gradient<R: Real>(x: &[Complex<R>], exps: &[i32]) -> Result<Vec<Complex<R>>> {
    let n = x.len();
    let mut grad = vec![Complex::zero(); n];
    for (i, g) in grad.iter_mut().enumerate() {
        let ei = exps[i];
        if ei == 0 {
            continue;
        }
        let mut v = Complex::from_real(R::from_i64(ei as i64));
        for (k, (xk, &e)) in x.iter().zip(exps).enumerate() {
            let p = if k == i { e - 1 } else { e };
            if p == 0 {
                continue;
            }
            if p < 0 && xk.is_zero() {
                return Err(Error::EvaluationSingular);
            }
            v *= xk.powi(p as i64);
        }
        *g = v;
    }
    Ok(grad)
}

/// Square system of sparse polynomials (Laurent exponents allowed).
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem<R> {
    dim: usize,
    equations: Vec<Vec<Monomial<R>>>,
}

impl<R: Real> PolySystem<R> {
    pub fn new(dim: usize, equations: Vec<Vec<Monomial<R>>>) -> Result<Self> {
        for eq in &equations {
            for m in eq {
                if m.exponents.len() != dim {
                    return Err(Error::InvalidArgument(format!(
                        "exponent vector of length {} in a system of dimension {dim}",
                        m.exponents.len()
                    )));
                }
            }
        }
        Ok(PolySystem { dim, equations })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equations(&self) -> &[Vec<Monomial<R>>] {
        &self.equations
    }

    pub fn is_square(&self) -> bool {
        self.equations.len() == self.dim
    }

    /// Total degree of each equation.
    pub fn degrees(&self) -> Vec<i64> {
        self.equations
            .iter()
            .map(|eq| eq.iter().map(Monomial::degree).max().unwrap_or(0))
            .collect()
    }

    pub(crate) fn check_point(&self, x: &[Complex<R>]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "point of dimension {} for a system of dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
        self.check_point(x)?;
        self.equations
            .iter()
            .map(|eq| {
                eq.iter().try_fold(Complex::zero(), |acc, m| {
                    Ok(acc + m.coefficient * monomial_value(x, &m.exponents)?)
                })
            })
            .collect()
    }

    pub fn jacobian(&self, x: &[Complex<R>]) -> Result<CMatrix<R>> {
        self.check_point(x)?;
        let mut jac = CMatrix::zeros(self.equations.len(), self.dim);
        for (i, eq) in self.equations.iter().enumerate() {
            for m in eq {
                let g = monomial_gradient(x, &m.exponents)?;
                for (j, gj) in g.into_iter().enumerate() {
                    jac[(i, j)] += m.coefficient * gj;
                }
            }
        }
        Ok(jac)
    }

    pub fn cast<S: Real>(&self) -> PolySystem<S> {
        PolySystem {
            dim: self.dim,
            equations: self
                .equations
                .iter()
                .map(|eq| {
                    eq.iter()
                        .map(|m| Monomial::new(m.coefficient.cast(), m.exponents.clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Total-degree start system `x_i^{d_i} - 1` and all of its solutions.
///
/// Solutions are listed with the first coordinate varying slowest.
#[allow(clippy::type_complexity)]
pub fn total_degree_start<R: Real>(
    f: &PolySystem<R>,
) -> Result<(PolySystem<R>, Vec<Vec<Complex<R>>>)> {
    if !f.is_square() {
        return Err(Error::InvalidArgument("total-degree start needs a square system".into()));
    }
    let degrees = f.degrees();
    if let Some(i) = degrees.iter().position(|&d| d < 1) {
        return Err(Error::InvalidArgument(format!("equation {i} has degree zero")));
    }
    let n = f.dim();
    let mut equations = Vec::with_capacity(n);
    for (i, &d) in degrees.iter().enumerate() {
        let mut e = vec![0; n];
        e[i] = d as i32;
        equations.push(vec![
            Monomial::new(Complex::one(), e),
            Monomial::new(-Complex::one(), vec![0; n]),
        ]);
    }
    let g = PolySystem::new(n, equations)?;

    let roots: Vec<Vec<Complex<R>>> = degrees
        .iter()
        .map(|&d| (0..d).map(|k| root_of_unity(d as usize, k)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut points = vec![Vec::with_capacity(n)];
    for r in &roots {
        points = points
            .into_iter()
            .flat_map(|p| {
                r.iter().map(move |&z| {
                    let mut q = p.clone();
                    q.push(z);
                    q
                })
            })
            .collect();
    }
    Ok((g, points))
}

/// Cyclic n-roots: sums of cyclic products of lengths `1..n-1`, then
/// `x_0 x_1 ... x_{n-1} - 1`.
pub fn cyclic_system<R: Real>(n: usize) -> Result<PolySystem<R>> {
    if n < 2 {
        return Err(Error::InvalidArgument("cyclic n-roots needs n >= 2".into()));
    }
    let mut equations = Vec::with_capacity(n);
    for len in 1..n {
        let eq = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                for k in j..j + len {
                    e[k % n] += 1;
                }
                Monomial::new(Complex::one(), e)
            })
            .collect();
        equations.push(eq);
    }
    equations.push(vec![
        Monomial::new(Complex::one(), vec![1; n]),
        Monomial::new(-Complex::one(), vec![0; n]),
    ]);
    PolySystem::new(n, equations)
}

/// The monomial system `x^A - c` as a plain polynomial system.
pub fn binomial_system<R: Real>(a: &IntMatrix, c: &[Complex<R>]) -> Result<PolySystem<R>> {
    let n = a.dim();
    if c.len() != n {
        return Err(Error::InvalidArgument("right-hand side length mismatch".into()));
    }
    let equations = (0..n)
        .map(|j| {
            let e = a.column(j).iter().map(|&v| v as i32).collect();
            vec![Monomial::new(Complex::one(), e), Monomial::new(-c[j], vec![0; n])]
        })
        .collect();
    PolySystem::new(n, equations)
}

pub(crate) fn inf_norm<R: Real>(v: &[Complex<R>]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.abs().to_f64()))
}

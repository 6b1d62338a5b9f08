use super::{monomial_gradient, monomial_value, PolySystem};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::monomial::IntMatrix;
use crate::scalars::{Complex, Real};

/// Term whose coefficient is a polynomial in `t` (ascending powers).
#[derive(Clone, Debug, PartialEq)]
pub struct TTerm<R> {
    pub t_coeffs: Vec<Complex<R>>,
    pub exponents: Vec<i32>,
}

fn poly_eval<R: Real>(p: &[Complex<R>], t: Complex<R>) -> Complex<R> {
    p.iter().rev().fold(Complex::zero(), |acc, &c| acc * t + c)
}

fn weights<R: Real>(gamma: Complex<R>, t: Complex<R>, power: u32) -> (Complex<R>, Complex<R>) {
    let k = power as i64;
    (gamma * (Complex::one() - t).powi(k), t.powi(k))
}

#[derive(Clone, Debug, PartialEq)]
pub enum HomotopyForm<R> {
    /// `gamma (1 - t)^k g(x) + t^k f(x)` with relaxation power `k >= 1`.
    GammaConvex { target: PolySystem<R>, start: PolySystem<R>, gamma: Complex<R>, power: u32 },
    /// `x^{a_j} - c_j(t)`, one equation per column of the exponent matrix.
    Monomial { exponents: IntMatrix, rhs: Vec<Vec<Complex<R>>> },
    /// Arbitrary terms with polynomial-in-`t` coefficients.
    ExplicitT { equations: Vec<Vec<TTerm<R>>> },
}

/// `h(x, t)` together with an affine change of parameter.
///
/// The form is always evaluated at `scale * t + shift`, so reconditioning
/// composes without touching the coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Homotopy<R> {
    dim: usize,
    form: HomotopyForm<R>,
    scale: R,
    shift: R,
}

/// Builds `gamma (1 - t) g + t f` after checking `|gamma| = 1`.
pub fn make_gamma_homotopy<R: Real>(
    target: PolySystem<R>,
    start: PolySystem<R>,
    gamma: Complex<R>,
) -> Result<Homotopy<R>> {
    make_gamma_homotopy_with_power(target, start, gamma, 1)
}

/// Builds `gamma (1 - t)^k g + t^k f`.
pub fn make_gamma_homotopy_with_power<R: Real>(
    target: PolySystem<R>,
    start: PolySystem<R>,
    gamma: Complex<R>,
    power: u32,
) -> Result<Homotopy<R>> {
    if power == 0 {
        return Err(Error::InvalidArgument("relaxation power must be at least one".into()));
    }
    if target.dim() != start.dim() || !target.is_square() || !start.is_square() {
        return Err(Error::InvalidArgument("target and start must be square of one dimension".into()));
    }
    if (gamma.abs().to_f64() - 1.0).abs() > 1e-14 {
        return Err(Error::InvalidArgument(format!("|gamma| = {} is not one", gamma.abs())));
    }
    let dim = target.dim();
    Ok(Homotopy::from_form(dim, HomotopyForm::GammaConvex { target, start, gamma, power }))
}

impl<R: Real> Homotopy<R> {
    pub(crate) fn from_form(dim: usize, form: HomotopyForm<R>) -> Self {
        Homotopy { dim, form, scale: R::one(), shift: R::zero() }
    }

    pub fn monomial(exponents: IntMatrix, rhs: Vec<Vec<Complex<R>>>) -> Result<Self> {
        let dim = exponents.dim();
        if rhs.len() != dim {
            return Err(Error::InvalidArgument("one right-hand side per column".into()));
        }
        Ok(Self::from_form(dim, HomotopyForm::Monomial { exponents, rhs }))
    }

    pub fn explicit_t(dim: usize, equations: Vec<Vec<TTerm<R>>>) -> Result<Self> {
        if equations.len() != dim {
            return Err(Error::InvalidArgument("explicit homotopy must be square".into()));
        }
        if equations.iter().flatten().any(|t| t.exponents.len() != dim) {
            return Err(Error::InvalidArgument("exponent vector length mismatch".into()));
        }
        Ok(Self::from_form(dim, HomotopyForm::ExplicitT { equations }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &HomotopyForm<R> {
        &self.form
    }

    pub fn form_name(&self) -> &'static str {
        match self.form {
            HomotopyForm::GammaConvex { .. } => "gamma_convex",
            HomotopyForm::Monomial { .. } => "monomial",
            HomotopyForm::ExplicitT { .. } => "explicit_t",
        }
    }

    /// `(scale, shift)` of the parameter map `t -> scale * t + shift`.
    pub fn parameter_map(&self) -> (R, R) {
        (self.scale, self.shift)
    }

    /// Parameter value seen by the underlying form.
    pub fn map_parameter(&self, t: Complex<R>) -> Complex<R> {
        Complex::new(self.scale * t.re + self.shift, self.scale * t.im)
    }

    /// Composes `t = scale * s + shift` onto the current parameter map.
    pub fn reparameterize(&self, scale: R, shift: R) -> Self {
        Homotopy {
            dim: self.dim,
            form: self.form.clone(),
            scale: self.scale * scale,
            shift: self.scale * shift + self.shift,
        }
    }

    fn check_point(&self, x: &[Complex<R>]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "point of dimension {} for a homotopy of dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Complex<R>], t: Complex<R>) -> Result<Vec<Complex<R>>> {
        self.check_point(x)?;
        let t = self.map_parameter(t);
        match &self.form {
            HomotopyForm::GammaConvex { target, start, gamma, power } => {
                let f = target.eval(x)?;
                let g = start.eval(x)?;
                let (wg, wf) = weights(*gamma, t, *power);
                Ok(f.iter().zip(&g).map(|(&fi, &gi)| wg * gi + wf * fi).collect())
            }
            HomotopyForm::Monomial { exponents, rhs } => (0..self.dim)
                .map(|j| {
                    let e: Vec<i32> = exponents.column(j).iter().map(|&v| v as i32).collect();
                    Ok(monomial_value(x, &e)? - poly_eval(&rhs[j], t))
                })
                .collect(),
            HomotopyForm::ExplicitT { equations } => equations
                .iter()
                .map(|eq| {
                    eq.iter().try_fold(Complex::zero(), |acc, term| {
                        Ok(acc + poly_eval(&term.t_coeffs, t) * monomial_value(x, &term.exponents)?)
                    })
                })
                .collect(),
        }
    }

    /// `dh_i / dx_j` at `(x, t)`.
    pub fn jacobian(&self, x: &[Complex<R>], t: Complex<R>) -> Result<CMatrix<R>> {
        self.check_point(x)?;
        let t = self.map_parameter(t);
        match &self.form {
            HomotopyForm::GammaConvex { target, start, gamma, power } => {
                let jf = target.jacobian(x)?;
                let jg = start.jacobian(x)?;
                let (wg, wf) = weights(*gamma, t, *power);
                Ok(jg.scale(wg).add(&jf.scale(wf)))
            }
            HomotopyForm::Monomial { exponents, .. } => {
                let mut jac = CMatrix::zeros(self.dim, self.dim);
                for j in 0..self.dim {
                    let e: Vec<i32> = exponents.column(j).iter().map(|&v| v as i32).collect();
                    for (k, g) in monomial_gradient(x, &e)?.into_iter().enumerate() {
                        jac[(j, k)] = g;
                    }
                }
                Ok(jac)
            }
            HomotopyForm::ExplicitT { equations } => {
                let mut jac = CMatrix::zeros(self.dim, self.dim);
                for (i, eq) in equations.iter().enumerate() {
                    for term in eq {
                        let c = poly_eval(&term.t_coeffs, t);
                        for (k, g) in monomial_gradient(x, &term.exponents)?.into_iter().enumerate() {
                            jac[(i, k)] += c * g;
                        }
                    }
                }
                Ok(jac)
            }
        }
    }

    pub fn cast<S: Real>(&self) -> Homotopy<S> {
        let cv = |v: &Vec<Complex<R>>| v.iter().map(|c| c.cast()).collect::<Vec<Complex<S>>>();
        let form = match &self.form {
            HomotopyForm::GammaConvex { target, start, gamma, power } => HomotopyForm::GammaConvex {
                target: target.cast(),
                start: start.cast(),
                gamma: gamma.cast(),
                power: *power,
            },
            HomotopyForm::Monomial { exponents, rhs } => HomotopyForm::Monomial {
                exponents: exponents.clone(),
                rhs: rhs.iter().map(cv).collect(),
            },
            HomotopyForm::ExplicitT { equations } => HomotopyForm::ExplicitT {
                equations: equations
                    .iter()
                    .map(|eq| {
                        eq.iter()
                            .map(|t| TTerm { t_coeffs: cv(&t.t_coeffs), exponents: t.exponents.clone() })
                            .collect()
                    })
                    .collect(),
            },
        };
        Homotopy {
            dim: self.dim,
            form,
            scale: S::from_f64(self.scale.to_f64()),
            shift: S::from_f64(self.shift.to_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::{cyclic_system, total_degree_start};
    use crate::scalars::C64;

    #[test]
    fn gamma_one_with_equal_systems_is_constant_in_t() {
        let f = cyclic_system::<f64>(3).unwrap();
        let h = make_gamma_homotopy(f.clone(), f.clone(), C64::one()).unwrap();
        let x = vec![C64::from_f64(0.3, 0.1), C64::from_f64(-1.2, 0.4), C64::from_f64(0.7, -0.9)];
        let fx = f.eval(&x).unwrap();
        for t in [0.0, 0.25, 0.8] {
            let hx = h.evaluate(&x, C64::from_f64(t, 0.0)).unwrap();
            for (a, b) in hx.iter().zip(&fx) {
                assert!((*a - *b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn non_unit_gamma_rejected() {
        let f = cyclic_system::<f64>(2).unwrap();
        let (g, _) = total_degree_start(&f).unwrap();
        assert!(make_gamma_homotopy(f, g, C64::from_f64(1.1, 0.0)).is_err());
    }

    #[test]
    fn reparameterization_composes() {
        let f = cyclic_system::<f64>(2).unwrap();
        let (g, _) = total_degree_start(&f).unwrap();
        let h = make_gamma_homotopy(f, g, C64::i()).unwrap();
        let h2 = h.reparameterize(0.5, 0.5).reparameterize(0.5, 0.5);
        // s -> 0.5 (0.5 s + 0.5) + 0.5 = 0.25 s + 0.75
        assert_eq!(h2.parameter_map(), (0.25, 0.75));
    }
}

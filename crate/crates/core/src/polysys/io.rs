//! JSON system and homotopy files.
//!
//! A plain system is `{"dim": n, "equations": [[{"re", "im", "exp"}, ...], ...]}`.
//! A homotopy file is either a gamma homotopy (`"target"`, optional `"start"`,
//! optional `"gamma"`) or an explicit one whose terms carry `"t_coeffs"`
//! instead of `"re"`/`"im"`. An optional `"power"` sets the relaxation power.
//! A plain system file is read as the target of a gamma homotopy with a
//! total-degree start.

use serde::{Deserialize, Serialize};

use super::{make_gamma_homotopy_with_power, total_degree_start, Homotopy, Monomial, PolySystem, TTerm, PAPER_GAMMA};
use crate::error::{Error, Result};
use crate::scalars::{Complex, Real};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl ComplexJson {
    fn to<R: Real>(self) -> Complex<R> {
        Complex::from_f64(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_coeffs: Option<Vec<ComplexJson>>,
    pub exp: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub dim: usize,
    pub equations: Vec<Vec<TermJson>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HomotopyFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<Vec<TermJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<SystemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<SystemJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<ComplexJson>,
    /// Relaxation power `k` in `gamma (1 - t)^k g + t^k f`; defaults to one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    /// Start solutions at `t = 0`; required unless a total-degree start is built.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_points: Option<Vec<Vec<ComplexJson>>>,
}

/// A parsed homotopy with its start solutions.
#[derive(Clone, Debug)]
pub struct LoadedHomotopy<R> {
    pub homotopy: Homotopy<R>,
    pub start_points: Vec<Vec<Complex<R>>>,
}

fn system_from_terms<R: Real>(dim: usize, eqs: &[Vec<TermJson>]) -> Result<PolySystem<R>> {
    let equations = eqs
        .iter()
        .map(|eq| {
            eq.iter()
                .map(|t| {
                    if t.t_coeffs.is_some() {
                        return Err(Error::Parse("t_coeffs not allowed in a plain system".into()));
                    }
                    let re = t.re.ok_or_else(|| Error::Parse("term without \"re\"".into()))?;
                    Ok(Monomial::new(Complex::from_f64(re, t.im.unwrap_or(0.0)), t.exp.clone()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(dim, equations)
}

impl SystemJson {
    pub fn to_system<R: Real>(&self) -> Result<PolySystem<R>> {
        system_from_terms(self.dim, &self.equations)
    }

    pub fn from_system<R: Real>(s: &PolySystem<R>) -> Self {
        SystemJson {
            dim: s.dim(),
            equations: s
                .equations()
                .iter()
                .map(|eq| {
                    eq.iter()
                        .map(|m| TermJson {
                            re: Some(m.coefficient.re.to_f64()),
                            im: Some(m.coefficient.im.to_f64()),
                            t_coeffs: None,
                            exp: m.exponents.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl HomotopyFile {
    pub fn build<R: Real>(&self) -> Result<LoadedHomotopy<R>> {
        let gamma = self.gamma.map_or_else(|| Complex::from_f64(PAPER_GAMMA.0, PAPER_GAMMA.1), |g| g.to());
        let points = self
            .start_points
            .as_ref()
            .map(|pts| pts.iter().map(|p| p.iter().map(|c| c.to()).collect()).collect());

        let explicit = self
            .equations
            .as_ref()
            .is_some_and(|eqs| eqs.iter().flatten().any(|t| t.t_coeffs.is_some()));
        if explicit {
            let eqs = self.equations.as_ref().unwrap();
            let equations = eqs
                .iter()
                .map(|eq| {
                    eq.iter()
                        .map(|t| {
                            let t_coeffs = match (&t.t_coeffs, t.re) {
                                (Some(cs), _) => cs.iter().map(|c| c.to()).collect(),
                                (None, Some(re)) => vec![Complex::from_f64(re, t.im.unwrap_or(0.0))],
                                (None, None) => return Err(Error::Parse("term without coefficient".into())),
                            };
                            Ok(TTerm { t_coeffs, exponents: t.exp.clone() })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let homotopy = Homotopy::explicit_t(self.dim, equations)?;
            let start_points = points
                .ok_or_else(|| Error::Parse("explicit homotopy needs \"start_points\"".into()))?;
            return Ok(LoadedHomotopy { homotopy, start_points });
        }

        let target = match (&self.target, &self.equations) {
            (Some(t), _) => t.to_system::<R>()?,
            (None, Some(eqs)) => system_from_terms(self.dim, eqs)?,
            (None, None) => return Err(Error::Parse("no \"target\" or \"equations\"".into())),
        };
        let (start, start_points) = match &self.start {
            Some(s) => {
                let pts = points.ok_or_else(|| Error::Parse("custom start system needs \"start_points\"".into()))?;
                (s.to_system::<R>()?, pts)
            }
            None => {
                let (g, pts) = total_degree_start(&target)?;
                (g, points.unwrap_or(pts))
            }
        };
        let homotopy = make_gamma_homotopy_with_power(target, start, gamma, self.power.unwrap_or(1))?;
        Ok(LoadedHomotopy { homotopy, start_points })
    }
}

pub fn load_homotopy_json<R: Real>(text: &str) -> Result<LoadedHomotopy<R>> {
    let file: HomotopyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

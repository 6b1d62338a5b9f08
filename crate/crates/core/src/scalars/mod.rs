//! Precision-generic real and complex scalars.

mod complex;
mod double_double;
mod real;

pub use complex::{Complex, C64};
pub use double_double::{quick_two_sum, two_prod, two_sum, DoubleDouble};
pub use real::Real;

use crate::error::{Error, Result};

/// Extended complex type used for the high-precision runs.
pub type DdComplex = Complex<DoubleDouble>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ext_op<R: Real>(a: R, b: R, kind: OpKind) -> Result<R> {
    Ok(match kind {
        OpKind::Add => a + b,
        OpKind::Sub => a - b,
        OpKind::Mul => a * b,
        OpKind::Div => {
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            a / b
        }
    })
}

pub fn complex_op<R: Real>(a: Complex<R>, b: Complex<R>, kind: OpKind) -> Result<Complex<R>> {
    Ok(match kind {
        OpKind::Add => a + b,
        OpKind::Sub => a - b,
        OpKind::Mul => a * b,
        OpKind::Div => a.checked_div(b)?,
    })
}

/// `exp(2 pi i k / n)`.
///
/// The angle is folded into the first octant with integer arithmetic, so
/// quarter and half turns come out exact and the remaining evaluation is
/// at an argument of at most pi/4.
pub fn root_of_unity<R: Real>(n: usize, k: i64) -> Result<Complex<R>> {
    if n == 0 {
        return Err(Error::InvalidArgument("root of unity order must be positive".into()));
    }
    let n = n as i64;
    let m = k.rem_euclid(n);
    // angle = (pi/2) * (quadrant + rem / n)
    let quadrant = (4 * m) / n;
    let rem = (4 * m) % n;
    let (c, s) = if rem == 0 {
        (R::one(), R::zero())
    } else if 2 * rem <= n {
        let theta = R::pi() * R::from_i64(rem) / R::from_i64(2 * n);
        let (s, c) = theta.sin_cos();
        (c, s)
    } else {
        let theta = R::pi() * R::from_i64(n - rem) / R::from_i64(2 * n);
        let (s, c) = theta.sin_cos();
        (s, c)
    };
    let z = Complex::new(c, s);
    Ok(match quadrant {
        0 => z,
        1 => Complex::new(-z.im, z.re),
        2 => -z,
        _ => Complex::new(z.im, -z.re),
    })
}

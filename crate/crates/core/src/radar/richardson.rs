use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{Complex, Real};

/// Triangular extrapolation table over inputs at `n = 2, 4, ..., 2^N`.
///
/// `table[i - 1][j - 1]` holds `R_{i,j}` for `1 <= j <= i <= N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RichardsonTable<R> {
    pub levels: usize,
    pub table: Vec<Vec<Complex<R>>>,
    pub diagonal: Vec<Complex<R>>,
}

impl<R: Real> RichardsonTable<R> {
    pub fn get(&self, i: usize, j: usize) -> Complex<R> {
        self.table[i - 1][j - 1]
    }

    pub fn best(&self) -> Complex<R> {
        self.diagonal[self.levels - 1]
    }

    /// `|R_{j,j} - R_{j-1,j-1}|` for `j = 2..N`.
    pub fn diagonal_steps(&self) -> Vec<f64> {
        self.diagonal.windows(2).map(|w| (w[1] - w[0]).abs().to_f64()).collect()
    }
}

/// `R_{i,1} = f(2^i)` and
/// `R_{i,j} = (2^{i-j+1} R_{i,j-1} - R_{j-1,j-1}) / (2^{i-j+1} - 1)`.
pub fn richardson<R: Real>(values: &[Complex<R>]) -> Result<RichardsonTable<R>> {
    let levels = values.len();
    if levels == 0 {
        return Err(Error::InvalidArgument("extrapolation needs at least one value".into()));
    }
    let mut table: Vec<Vec<Complex<R>>> = values.iter().map(|&v| vec![v]).collect();
    for j in 2..=levels {
        let corner = table[j - 2][j - 2];
        for i in j..=levels {
            let w = R::from_i64(1i64 << (i - j + 1));
            let prev = table[i - 1][j - 2];
            let next = (prev.scale(w) - corner) / (w - R::one());
            table[i - 1].push(next);
        }
    }
    let diagonal = (0..levels).map(|i| table[i][i]).collect();
    Ok(RichardsonTable { levels, table, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::C64;

    #[test]
    fn constant_is_a_fixed_point() {
        let c = C64::from_f64(0.75, -0.25);
        let tab = richardson(&[c; 6]).unwrap();
        assert!(tab.table.iter().flatten().all(|&z| z == c));
        let c = C64::from_f64(0.7, -0.2);
        let tab = richardson(&[c; 9]).unwrap();
        assert!(tab.table.iter().flatten().all(|&z| (z - c).abs() <= 4.0 * f64::EPSILON));
    }

    #[test]
    fn first_column_is_the_input() {
        let v: Vec<C64> = (1..=7).map(|i| C64::from_f64(1.0 / i as f64, i as f64)).collect();
        let tab = richardson(&v).unwrap();
        for i in 1..=7 {
            assert_eq!(tab.get(i, 1), v[i - 1]);
        }
        assert!(richardson::<f64>(&[]).is_err());
    }
}

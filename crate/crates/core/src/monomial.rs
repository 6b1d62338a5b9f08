//! Integer exponent matrices, their Hermite and Smith normal forms, and
//! exact solving of binomial systems `x^A = c`.
//!
//! All integer arithmetic is checked; a transform that would overflow
//! `i64` aborts with [`Error::OverflowRisk`].

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalars::{root_of_unity, Complex, Real};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("integer matrix must be square".into()));
        }
        Ok(IntMatrix { n, data: rows.concat() })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(i, j, self.get(j, i));
            }
        }
        t
    }

    /// Exact product; partial sums are kept in `i128`, so only a result
    /// that does not fit `i64` is an overflow.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.n;
        let mut out = IntMatrix { n, data: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for k in 0..n {
                    s = ck128(s.checked_add(self.get(i, k) as i128 * other.get(k, j) as i128))?;
                }
                out.set(i, j, i64::try_from(s).map_err(|_| Error::OverflowRisk)?);
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i64> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k * n + k] == 0 {
                match (k + 1..n).find(|&i| m[i * n + k] != 0) {
                    Some(p) => {
                        for j in 0..n {
                            m.swap(k * n + j, p * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            let piv = m[k * n + k];
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = piv.checked_mul(m[i * n + j]).ok_or(Error::OverflowRisk)?;
                    let b = m[i * n + k].checked_mul(m[k * n + j]).ok_or(Error::OverflowRisk)?;
                    m[i * n + j] = a.checked_sub(b).ok_or(Error::OverflowRisk)? / prev;
                }
                m[i * n + k] = 0;
            }
            prev = piv;
        }
        i64::try_from(sign * m[n * n - 1]).map_err(|_| Error::OverflowRisk)
    }
}

/// Scratch matrix for the normal-form eliminations.
///
/// Intermediate transforms can outgrow `i64` even when the final ones fit,
/// so the work is done in `i128` and narrowed at the end.
struct Work {
    n: usize,
    data: Vec<i128>,
}

fn ck128(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::OverflowRisk)
}

/// `(g, p, q)` with `p a + q b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i128, b: i128) -> Result<(i128, i128, i128)> {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, ck128(r0.checked_sub(ck128(q.checked_mul(r1))?))?);
        (s0, s1) = (s1, ck128(s0.checked_sub(ck128(q.checked_mul(s1))?))?);
        (t0, t1) = (t1, ck128(t0.checked_sub(ck128(q.checked_mul(t1))?))?);
    }
    if r0 < 0 {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Nearest integer to `a / b`, so remainders stay within `|b| / 2`.
fn round_div(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    let r = a.rem_euclid(b);
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

impl Work {
    fn from(m: &IntMatrix) -> Self {
        Work { n: m.n, data: m.data.iter().map(|&v| v as i128).collect() }
    }

    fn identity(n: usize) -> Self {
        Work::from(&IntMatrix::identity(n))
    }

    fn narrow(&self) -> Result<IntMatrix> {
        let data = self.data.iter().map(|&v| i64::try_from(v).map_err(|_| Error::OverflowRisk)).collect::<Result<_>>()?;
        Ok(IntMatrix { n: self.n, data })
    }

    fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.n + j] = v;
    }

    // col_i <- a col_i + b col_j ; col_j <- c col_i + d col_j (simultaneously)
    fn combine_cols(&mut self, i: usize, j: usize, a: i128, b: i128, c: i128, d: i128) -> Result<()> {
        for r in 0..self.n {
            let (x, y) = (self.get(r, i), self.get(r, j));
            let ni = ck128(ck128(a.checked_mul(x))?.checked_add(ck128(b.checked_mul(y))?))?;
            let nj = ck128(ck128(c.checked_mul(x))?.checked_add(ck128(d.checked_mul(y))?))?;
            self.set(r, i, ni);
            self.set(r, j, nj);
        }
        Ok(())
    }

    // col_dst -= k col_src
    fn col_sub(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for r in 0..self.n {
            let v = ck128(self.get(r, dst).checked_sub(ck128(k.checked_mul(self.get(r, src)))?))?;
            self.set(r, dst, v);
        }
        Ok(())
    }

    // row_dst -= k row_src
    fn row_sub(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for c in 0..self.n {
            let v = ck128(self.get(dst, c).checked_sub(ck128(k.checked_mul(self.get(src, c)))?))?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.n {
            self.data.swap(r * self.n + a, r * self.n + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.n {
            self.data[i * self.n + c] = -self.data[i * self.n + c];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.n {
            self.data[r * self.n + j] = -self.data[r * self.n + j];
        }
    }
}

/// Column-style Hermite form `A U = H`.
///
/// `H` is lower triangular with a positive diagonal and entries left of
/// the diagonal reduced into `[0, h_ii)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub u: IntMatrix,
    pub h: IntMatrix,
}

/// `U A V = S` with `S` diagonal, positive, and `s_i | s_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.dim()).map(|i| self.s.get(i, i)).collect()
    }
}

fn require_nonsingular(a: &IntMatrix) -> Result<()> {
    if a.determinant()? == 0 {
        return Err(Error::SingularExponentMatrix);
    }
    Ok(())
}

pub fn hermite_normal_form(a: &IntMatrix) -> Result<HermiteForm> {
    require_nonsingular(a)?;
    let n = a.dim();
    let mut h = Work::from(a);
    let mut u = Work::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (h.get(i, i), h.get(i, j));
            if y == 0 {
                continue;
            }
            let (g, p, q) = ext_gcd(x, y)?;
            let (c, d) = (-(y / g), x / g);
            h.combine_cols(i, j, p, q, c, d)?;
            u.combine_cols(i, j, p, q, c, d)?;
        }
        if h.get(i, i) < 0 {
            h.negate_col(i);
            u.negate_col(i);
        }
        let d = h.get(i, i);
        for j in 0..i {
            let k = h.get(i, j).div_euclid(d);
            if k != 0 {
                h.col_sub(j, i, k)?;
                u.col_sub(j, i, k)?;
            }
        }
    }
    Ok(HermiteForm { u: u.narrow()?, h: h.narrow()? })
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SmithForm> {
    require_nonsingular(a)?;
    let n = a.dim();
    let mut s = Work::from(a);
    let mut u = Work::identity(n);
    let mut v = Work::identity(n);
    for t in 0..n {
        loop {
            let (pi, pj) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| s.get(i, j) != 0)
                .min_by_key(|&(i, j)| s.get(i, j).unsigned_abs())
                .ok_or(Error::SingularExponentMatrix)?;
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = s.get(t, t);
            let mut clean = true;
            for i in t + 1..n {
                let q = round_div(s.get(i, t), p);
                if q != 0 {
                    s.row_sub(i, t, q)?;
                    u.row_sub(i, t, q)?;
                }
                clean &= s.get(i, t) == 0;
            }
            for j in t + 1..n {
                let q = round_div(s.get(t, j), p);
                if q != 0 {
                    s.col_sub(j, t, q)?;
                    v.col_sub(j, t, q)?;
                }
                clean &= s.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..n).find(|&i| (t + 1..n).any(|j| s.get(i, j) % p != 0));
            match bad_row {
                Some(i) => {
                    // row_t += row_i brings the offending entry into pivot range
                    s.row_sub(t, i, -1)?;
                    u.row_sub(t, i, -1)?;
                }
                None => break,
            }
        }
        if s.get(t, t) < 0 {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Ok(SmithForm { u: u.narrow()?, v: v.narrow()?, s: s.narrow()? })
}

/// All solutions of `x^A = c`, where column `j` of `A` holds the exponents
/// of equation `j`.
///
/// In logarithms the system reads `A^T log x = log c` modulo `2 pi i`. One
/// solution comes from the principal logarithms; the others differ from it
/// by the group of `x^A = 1`, which is `exp(2 pi i A^{-T} k)` for integer
/// `k`. With `U A V = S`, `A^{-T} = U^T S^{-1} V^T`, so the group is
/// `exp(2 pi i U^T (m / s))` with `0 <= m_j < s_j`. Its angles are reduced
/// exactly in integers before any root of unity is formed, which keeps
/// large transform entries out of the floating-point work. Solutions are
/// listed principal first, with `m_0` varying slowest.
pub fn solve_binomial<R: Real>(a: &IntMatrix, c: &[Complex<R>]) -> Result<Vec<Vec<Complex<R>>>> {
    let n = a.dim();
    if c.len() != n {
        return Err(Error::InvalidArgument("right-hand side length mismatch".into()));
    }
    if c.iter().any(Complex::is_zero) {
        return Err(Error::NotApplicable("binomial system with a zero right-hand side is singular".into()));
    }
    let snf = smith_normal_form(a)?;
    let diag = snf.diagonal();
    let principal = principal_solution(a, c)?;

    let l = *diag.last().unwrap_or(&1) as i128;
    // q[j][i] = U_ji * (L / s_j) mod L, the angle step of m_j in coordinate i
    let q: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let sj = diag[j] as i128;
            (0..n).map(|i| (snf.u.get(j, i) as i128).rem_euclid(sj) * (l / sj)).collect()
        })
        .collect();
    let total: usize = diag.iter().map(|&s| s as usize).product();
    let mut out = Vec::with_capacity(total);
    let mut m = vec![0i64; n];
    for _ in 0..total {
        let x = (0..n)
            .map(|i| {
                let k = (0..n).fold(0i128, |acc, j| (acc + q[j][i] * m[j] as i128) % l);
                Ok(principal[i] * root_of_unity::<R>(l as usize, k as i64)?)
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(x);
        for j in (0..n).rev() {
            m[j] += 1;
            if m[j] < diag[j] {
                break;
            }
            m[j] = 0;
        }
    }
    Ok(out)
}

/// `exp(w)` with `A^T w = log c` on principal logarithms, polished by one
/// Newton step in logarithmic coordinates.
fn principal_solution<R: Real>(a: &IntMatrix, c: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    let n = a.dim();
    let at = CMatrix::from_rows(
        (0..n).map(|j| (0..n).map(|i| Complex::from_real(R::from_i64(a.get(i, j)))).collect()).collect(),
    );
    let log = |z: Complex<R>| Complex::new(z.abs().ln(), z.arg());
    let exp = |w: Complex<R>| Complex::from_polar(w.re.exp(), w.im);
    let w = at.solve(&c.iter().map(|&z| log(z)).collect::<Vec<_>>()).map_err(|_| Error::SingularExponentMatrix)?;
    let mut x: Vec<Complex<R>> = w.into_iter().map(exp).collect();
    let defect: Vec<Complex<R>> = (0..n)
        .map(|j| log(c[j] / (0..n).fold(Complex::one(), |acc, i| acc * x[i].powi(a.get(i, j)))))
        .collect();
    let d = at.solve(&defect).map_err(|_| Error::SingularExponentMatrix)?;
    for (xi, di) in x.iter_mut().zip(d) {
        *xi *= exp(di);
    }
    Ok(x)
}

/// `max_j |x^{a_j} - c_j| / max_j |c_j|`.
pub fn binomial_residual<R: Real>(a: &IntMatrix, c: &[Complex<R>], x: &[Complex<R>]) -> f64 {
    let n = a.dim();
    let scale = c.iter().fold(0.0f64, |m, z| m.max(z.abs().to_f64()));
    (0..n)
        .map(|j| {
            let v = (0..n).fold(Complex::one(), |acc, i| acc * x[i].powi(a.get(i, j)));
            (v - c[j]).abs().to_f64()
        })
        .fold(0.0, f64::max)
        / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::monomial4_exponents as m4;
    use crate::scalars::C64;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_forms() {
        let i = IntMatrix::identity(3);
        let h = hermite_normal_form(&i).unwrap();
        assert_eq!(h.h, i);
        assert_eq!(h.u, i);
        let s = smith_normal_form(&i).unwrap();
        assert_eq!(s.s, i);
    }

    #[test]
    fn diagonal_inputs() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(hermite_normal_form(&a).unwrap().h, a);
        let b = m(&[vec![2, 0], vec![0, 4]]);
        let s = smith_normal_form(&b).unwrap();
        assert_eq!(s.diagonal(), vec![2, 4]);
        assert_eq!(s.u.mul(&b).unwrap().mul(&s.v).unwrap(), s.s);
    }

    #[test]
    fn monomial4_forms() {
        let a = m4();
        let h = hermite_normal_form(&a).unwrap();
        assert_eq!(h.h.determinant().unwrap().abs(), 42);
        assert_eq!(a.mul(&h.u).unwrap(), h.h);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.diagonal().iter().product::<i64>(), 42);
    }

    #[test]
    fn singular_rejected() {
        let a = m(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(hermite_normal_form(&a), Err(Error::SingularExponentMatrix));
        assert_eq!(smith_normal_form(&a), Err(Error::SingularExponentMatrix));
        assert_eq!(solve_binomial::<f64>(&a, &[C64::one(), C64::one()]), Err(Error::SingularExponentMatrix));
    }

    #[test]
    fn small_binomial_systems() {
        let sols = solve_binomial::<f64>(&m(&[vec![2]]), &[C64::one()]).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0][0] - C64::one()).abs() < 1e-15);
        assert!((sols[1][0] + C64::one()).abs() < 1e-15);

        let c = [C64::from_f64(5.0, 0.0), C64::from_f64(0.0, 7.0)];
        let sols = solve_binomial::<f64>(&IntMatrix::identity(2), &c).unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0][0] - c[0]).abs() < 1e-14 && (sols[0][1] - c[1]).abs() < 1e-14);

        assert!(matches!(
            solve_binomial::<f64>(&IntMatrix::identity(1), &[C64::zero()]),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn monomial4_has_42_solutions() {
        let a = m4();
        let c = vec![C64::one(); 4];
        let sols = solve_binomial::<f64>(&a, &c).unwrap();
        assert_eq!(sols.len(), 42);
        for x in &sols {
            assert!(binomial_residual(&a, &c, x) < 1e-12);
        }
        assert!(sols.iter().any(|x| x.iter().all(|z| (*z - C64::one()).abs() < 1e-12)));
    }
}

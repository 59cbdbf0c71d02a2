use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{ExactDiv, MultiPoly, Ring, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> ExactMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ExactMatrix<S> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape("inner dimensions differ".into()));
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self.get(i, k).clone() * o.get(k, j).clone()
            })
        }))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Determinant by fraction-free (Bareiss) elimination. Every division is an
/// exact division in the coefficient ring, so polynomial entries never leave
/// the polynomial ring.
pub fn bareiss_determinant<R: ExactDiv>(m: &ExactMatrix<R>) -> Result<R> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(R::one());
    }
    let mut a: Vec<Vec<R>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n - 1 {
        // smallest nonzero candidate keeps intermediate entries small
        match (k..n)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| a[r][k].pivot_weight())
        {
            Some(r) if r != k => {
                a.swap(k, r);
                negate = !negate;
            }
            Some(_) => {}
            None => return Ok(R::zero()),
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[k].clone();
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = if lead.is_zero() {
                    pivot.clone() * row[j].clone()
                } else if row[j].is_zero() {
                    -(lead.clone() * pivot_row[j].clone())
                } else {
                    pivot.clone() * row[j].clone() - lead.clone() * pivot_row[j].clone()
                };
                row[j] = num.div_exact(&prev).ok_or(Error::InexactDivision)?;
            }
            row[k] = R::zero();
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant of a matrix over Q[symbols]. Each row is scaled to integer
/// coefficients and the elimination runs over Z[symbols], which avoids
/// rational normalization in every coefficient operation.
pub fn polynomial_determinant(
    m: &ExactMatrix<MultiPoly<BigRational>>,
) -> Result<MultiPoly<BigRational>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let mut scale = BigInt::one();
    let mut data = Vec::with_capacity(m.data.len());
    for i in 0..m.rows {
        let row = m.row(i);
        let l = row
            .iter()
            .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |a, d| a.lcm(&d));
        scale *= &l;
        for p in row {
            data.push(MultiPoly::from_terms(
                p.terms().map(|(mono, c)| (*mono, c.numer() * (&l / c.denom()))),
            ));
        }
    }
    let z = ExactMatrix {
        rows: m.rows,
        cols: m.cols,
        data,
    };
    let det = bareiss_determinant(&z)?;
    let scale = BigRational::from_integer(scale);
    Ok(MultiPoly::from_terms(det.terms().map(|(mono, c)| {
        (*mono, BigRational::from_integer(c.clone()) / scale.clone())
    })))
}

/// Reduced row echelon form; returns the pivot columns. Pivots are chosen
/// leftmost-column first, taking the first row with a nonzero entry.
pub fn rref<F: Scalar>(m: &mut ExactMatrix<F>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = F::one() / m.get(r, c).clone();
        for j in c..cols {
            let v = m.get(r, j).clone() * inv.clone();
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..cols {
                let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Scalar>(m: &ExactMatrix<F>) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column in
/// increasing column order, with that free coordinate set to 1.
pub fn null_space<F: Scalar>(m: &ExactMatrix<F>) -> Vec<Vec<F>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` exactly; `None` if inconsistent. Free variables are zero.
pub fn solve<F: Scalar>(m: &ExactMatrix<F>, b: &[F]) -> Option<Vec<F>> {
    let aug = ExactMatrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let mut r = aug;
    let pivots = rref(&mut r);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    /// Laplace expansion along the first row; the independent oracle.
    fn cofactor_det(m: &ExactMatrix<Poly>) -> Poly {
        let n = m.rows();
        if n == 0 {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for j in 0..n {
            let minor = ExactMatrix::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j) * &cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_determinant(&ExactMatrix::<Poly>::identity(3)).unwrap(), Poly::one());
        let m = ExactMatrix::from_rows(vec![vec![p("2h"), p("2")], vec![p("0"), p("2h")]]).unwrap();
        assert_eq!(bareiss_determinant(&m).unwrap(), p("4h^2"));
        let z = ExactMatrix::from_rows(vec![vec![p("0"), p("h")], vec![p("c"), p("1")]]).unwrap();
        assert_eq!(bareiss_determinant(&z).unwrap(), p("-ch"));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = ExactMatrix::<Poly>::zeros(2, 3);
        assert_eq!(
            bareiss_determinant(&m),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn kernels() {
        let z = ExactMatrix::<Rational>::zeros(2, 2);
        assert_eq!(null_space(&z).len(), 2);

        let m = ExactMatrix::from_rows(vec![vec![q(0), q(2)], vec![q(0), q(0)]]).unwrap();
        assert_eq!(null_space(&m), vec![vec![q(1), q(0)]]);

        let inv = ExactMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        assert!(null_space(&inv).is_empty());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = ExactMatrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]).unwrap();
        assert_eq!(solve(&m, &[q(3), q(6)]), Some(vec![q(3), q(0)]));
        assert_eq!(solve(&m, &[q(3), q(7)]), None);
    }

    fn arb_poly_matrix(n: usize) -> impl Strategy<Value = ExactMatrix<Poly>> {
        proptest::collection::vec((-3i64..=3, -3i64..=3, -2i64..=2), n * n).prop_map(move |es| {
            let polys: Vec<Poly> = es
                .into_iter()
                .map(|(a, b, c)| {
                    &(&Poly::from_i64(a) + &Poly::var(crate::Symbol::H).scale(&q(b)))
                        + &Poly::var(crate::Symbol::C).scale(&q(c))
                })
                .collect();
            ExactMatrix::from_fn(n, n, |i, j| polys[i * n + j].clone())
        })
    }

    fn arb_rat_matrix() -> impl Strategy<Value = ExactMatrix<Rational>> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..=4, 1i64..=3), r * c).prop_map(move |es| {
                ExactMatrix::from_fn(r, c, |i, j| {
                    let (n, d) = es[i * c + j];
                    // sparsify so kernels are common
                    if (i + j) % 3 == 0 { q(0) } else { Rational::new(n.into(), d.into()) }
                })
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in (1usize..=4).prop_flat_map(arb_poly_matrix)) {
            prop_assert_eq!(bareiss_determinant(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn integer_path_matches_cofactor(
            m in (1usize..=4).prop_flat_map(arb_poly_matrix),
            d in proptest::collection::vec(1i64..=6, 4),
        ) {
            // put denominators on the rows
            let n = m.rows();
            let m = ExactMatrix::from_fn(n, n, |i, j| {
                m.get(i, j).scale(&Rational::new(1.into(), d[i].into()))
            });
            prop_assert_eq!(polynomial_determinant(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn kernel_vectors_are_annihilated(m in arb_rat_matrix()) {
            let ker = null_space(&m);
            prop_assert_eq!(ker.len() + rank(&m), m.cols());
            for v in ker {
                prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
            }
        }
    }
}

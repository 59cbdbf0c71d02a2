use num_traits::Zero;
use rayon::prelude::*;

use super::{BasisLabel, JordanVermaModule};
use crate::error::Result;
use crate::exact_arith::{binomial, polynomial_determinant};
use crate::virasoro::{Normalizer, VirMode};
use crate::{Poly, PolyMatrix};

impl JordanVermaModule {
    /// (s_a v_i, s_b v_j) = (v_i, s_a^T s_b v_j) with (v_i, v_j) = δ_ij.
    fn pairing(&self, norm: &mut Normalizer, a: &BasisLabel, b: &BasisLabel) -> Poly {
        if b.top < a.top {
            return Poly::zero();
        }
        let shift = b.top - a.top;
        let word: Vec<VirMode> = a
            .parts
            .iter()
            .rev()
            .map(|&p| VirMode::L(p as i64))
            .chain(b.parts.iter().map(|&p| VirMode::L(-(p as i64))))
            .collect();
        let mut acc = Poly::zero();
        for ((modes, cpow), r) in norm.word(&word) {
            if modes.iter().any(|&m| m != 0) {
                continue;
            }
            let zeros = modes.len();
            if zeros < shift {
                continue;
            }
            let k = binomial(zeros as u64, shift as u64) * r;
            acc += (&self.c.pow(cpow) * &self.h.pow((zeros - shift) as u32)).scale(&k);
        }
        acc
    }

    /// Gram matrix of the Shapovalov form on the level-`level` basis.
    /// Rows are computed in parallel; each row owns its own cache so the
    /// result does not depend on scheduling.
    pub fn shapovalov_matrix(&self, level: usize) -> Result<PolyMatrix> {
        self.check_unmixed()?;
        let basis = self.level_basis(level);
        let n = basis.len();
        let rows: Vec<Vec<Poly>> = basis
            .par_iter()
            .map(|a| {
                let mut norm = Normalizer::new();
                basis.iter().map(|b| self.pairing(&mut norm, a, b)).collect()
            })
            .collect();
        let mut m = PolyMatrix::zeros(n, n);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn shapovalov_determinant(&self, level: usize) -> Result<Poly> {
        polynomial_determinant(&self.shapovalov_matrix(level)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::mpoly_derivative;
    use crate::Error;
    use crate::Rational;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn reference_level3() -> Vec<Vec<Poly>> {
        let s = [
            ["24h(h+1)(1+2h)", "36h(h+1)", "24h"],
            ["36h(h+1)", "(h+2)(8h+c)+18h", "16h+2c"],
            ["24h", "16h+2c", "6h+2c"],
        ];
        let ds = [
            ["144h^2+144h+24", "72h+36", "24"],
            ["72h+36", "16h+34+c", "16"],
            ["24", "16", "6"],
        ];
        // products written out, the parser only handles expanded sums
        let expand = |t: &str| -> Poly {
            match t {
                "24h(h+1)(1+2h)" => p("48h^3 + 72h^2 + 24h"),
                "36h(h+1)" => p("36h^2 + 36h"),
                "(h+2)(8h+c)+18h" => p("8h^2 + ch + 34h + 2c"),
                other => p(other),
            }
        };
        let mut rows = vec![];
        for i in 0..3 {
            let mut r: Vec<Poly> = s[i].iter().map(|t| expand(t)).collect();
            r.extend(ds[i].iter().map(|t| expand(t)));
            rows.push(r);
        }
        for i in 0..3 {
            let mut r = vec![Poly::zero(); 3];
            r.extend(s[i].iter().map(|t| expand(t)));
            rows.push(r);
        }
        rows
    }

    #[test]
    fn level3_matrix_matches_table() {
        let m = JordanVermaModule::symbolic(2).unwrap();
        let s = m.shapovalov_matrix(3).unwrap();
        let want = reference_level3();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(s.get(i, j), &want[i][j], "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn level3_determinant() {
        let m = JordanVermaModule::symbolic(2).unwrap();
        let det = m.shapovalov_determinant(3).unwrap();
        let f1 = p("16h^2 + 2ch - 10h + c");
        let f2 = p("3h^2 + ch - 7h + 2 + c");
        let want = &(&p("2304h^4") * &f1.pow(2)) * &f2.pow(2);
        assert_eq!(det, want);
    }

    #[test]
    fn small_levels() {
        let m1 = JordanVermaModule::symbolic(1).unwrap();
        assert_eq!(m1.shapovalov_determinant(1).unwrap(), p("2h"));
        let m2 = JordanVermaModule::symbolic(2).unwrap();
        assert_eq!(m2.shapovalov_matrix(1).unwrap().to_string(), "[[2h, 2], [0, 2h]]");
        assert_eq!(m2.shapovalov_determinant(1).unwrap(), p("4h^2"));
        let z = JordanVermaModule::numeric(Rational::zero(), Rational::zero(), 2).unwrap();
        assert_eq!(z.shapovalov_matrix(1).unwrap().to_string(), "[[0, 2], [0, 0]]");
    }

    #[test]
    fn mixed_parameters_rejected() {
        let m = JordanVermaModule::new(p("c"), p("0"), 1).unwrap();
        assert_eq!(m.shapovalov_matrix(1), Err(Error::ParameterMix));
    }

    #[test]
    fn block_derivative_and_square_law() {
        let m1 = JordanVermaModule::symbolic(1).unwrap();
        let m2 = JordanVermaModule::symbolic(2).unwrap();
        for level in 1..=4 {
            let s = m1.shapovalov_matrix(level).unwrap();
            let s2 = m2.shapovalov_matrix(level).unwrap();
            let n = s.rows();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(s2.get(i, j), s.get(i, j));
                    assert_eq!(s2.get(n + i, n + j), s.get(i, j));
                    assert!(s2.get(n + i, j).is_zero());
                    assert_eq!(s2.get(i, n + j), &mpoly_derivative(s.get(i, j), "h").unwrap());
                }
            }
            let d = m1.shapovalov_determinant(level).unwrap();
            assert_eq!(m2.shapovalov_determinant(level).unwrap(), d.pow(2));
        }
    }

    #[test]
    fn parallel_rows_are_deterministic() {
        let m = JordanVermaModule::symbolic(2).unwrap();
        assert_eq!(m.shapovalov_matrix(4).unwrap(), m.shapovalov_matrix(4).unwrap());
    }
}

use num_traits::{One, Zero};

use super::{JordanVermaModule, ModeAction, ModuleVector};
use crate::error::{Error, Result};
use crate::exact_arith::null_space;
use crate::{Poly, QMatrix, Rational};

fn numeric_module(m: &JordanVermaModule) -> Result<(Rational, Rational)> {
    m.check_unmixed()?;
    m.numeric_params().ok_or(Error::NeedsNumeric)
}

/// Basis of {u at `level` : L(1)u = L(2)u = 0}, each vector scaled so its
/// first nonzero coordinate is 1.
pub fn singular_vectors(module: &JordanVermaModule, level: usize) -> Result<Vec<ModuleVector>> {
    numeric_module(module)?;
    let basis = module.level_basis(level);
    let mut act = ModeAction::new(module);
    let mut rows: Vec<Vec<Rational>> = vec![];
    for k in [1i64, 2] {
        if (k as usize) > level {
            continue;
        }
        let target = module.level_basis(level - k as usize);
        let images: Vec<Vec<Rational>> = basis
            .iter()
            .map(|l| {
                act.apply(k, &module.basis_vector(l))
                    .coords(&target)
                    .expect("numeric module")
            })
            .collect();
        for r in 0..target.len() {
            rows.push(images.iter().map(|col| col[r].clone()).collect());
        }
    }
    let kernel = if rows.is_empty() {
        // level 0: every top vector is singular
        (0..basis.len())
            .map(|i| {
                let mut v = vec![Rational::zero(); basis.len()];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        null_space(&QMatrix::from_rows(rows)?)
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Rational::one);
            let v: Vec<Rational> = v.iter().map(|x| x / &lead).collect();
            ModuleVector::from_coords(level, &basis, &v)
        })
        .collect())
}

/// Dimension of the right radical of the Shapovalov form at `level`.
pub fn radical_dimension(module: &JordanVermaModule, level: usize) -> Result<usize> {
    numeric_module(module)?;
    let s = module.shapovalov_matrix(level)?;
    let q = s.map(|e| e.constant_value().expect("numeric entries"));
    Ok(null_space(&q).len())
}

/// Whether v' -> s1, w' -> s2 extends to a homomorphism
/// M_2(c, h+N) -> M_2(c, h) where N is the common level of s1, s2.
pub fn check_hom_pair(
    target: &JordanVermaModule,
    s1: &ModuleVector,
    s2: &ModuleVector,
) -> Result<bool> {
    let (_, h) = numeric_module(target)?;
    if target.jordan() != 2 {
        return Err(Error::Shape(format!(
            "target must have a Jordan block of size 2, got {}",
            target.jordan()
        )));
    }
    if s1.level() != s2.level() {
        return Err(Error::LevelMismatch(s1.level(), s2.level()));
    }
    let n = s1.level();
    let mut act = ModeAction::new(target);
    for s in [s1, s2] {
        for k in [1, 2] {
            if !act.apply(k, s).is_zero() {
                return Ok(false);
            }
        }
    }
    let weight = Poly::constant(h + Rational::from_integer(n.into()));
    let l0s1 = act.apply(0, s1);
    let l0s2 = act.apply(0, s2);
    Ok(l0s1 == s1.scale(&weight) && l0s2 == s2.scale(&weight).add(s1))
}

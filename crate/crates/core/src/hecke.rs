//! The Hecke algebra of type A acting on (C^n)^{⊗m} through Ř, its
//! Jucys-Murphy elements, and the primitive idempotents E_U indexed by
//! standard tableaux.
//!
//! Generators T_k act as Ř on legs (k, k+1). The Jucys-Murphy family is
//! y₁ = 1, y_{k+1} = Ř_k y_k Ř_k; it is commutative, and on the seminormal
//! basis y_k acts on E_U by q^{2c_k(U)} with c_k(U) the content of the cell
//! of k. E_U is built along the restriction chain of U: at step k the factor
//!
//!   ∏_{c ∈ AC(ν), c ≠ c_k} (y_k - q^{2c}) / (q^{2c_k} - q^{2c})
//!
//! interpolates y_k on the addable cells AC(ν) of the step-(k-1) shape ν.
//! For shapes with more than n rows the image idempotent is the zero matrix,
//! which the same recursion produces.

use crate::error::{Error, Result};
use crate::exact::{QConfig, Scalar};
use crate::mat::SqMat;
use crate::combinatorics::StandardTableau;
use crate::tensor::{r_check, TensorSpace};

pub struct HeckeContext {
    m: usize,
    cfg: QConfig,
    space: TensorSpace,
    /// generators[k-1] is T_k on legs (k, k+1), k = 1..m-1.
    generators: Vec<SqMat<Scalar>>,
    /// jm[k-1] is y_k, k = 1..m.
    jm: Vec<SqMat<Scalar>>,
}

impl HeckeContext {
    pub fn new(n: usize, m: usize, cfg: &QConfig) -> Result<Self> {
        assert!(m >= 1, "need at least one leg");
        let space = TensorSpace::new(n, m);
        let rc = r_check(n, cfg);
        let mut generators = Vec::with_capacity(m.saturating_sub(1));
        for k in 0..m.saturating_sub(1) {
            generators.push(space.embed(&rc, &[k, k + 1])?);
        }
        let mut jm = vec![SqMat::identity(space.dim())];
        for k in 0..m - 1 {
            let t = &generators[k];
            jm.push(t.mul(&jm[k]).mul(t));
        }
        Ok(HeckeContext { m, cfg: cfg.clone(), space, generators, jm })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    /// T_k = Ř on legs (k, k+1), 1-based k in 1..m.
    pub fn generator(&self, k: usize) -> &SqMat<Scalar> {
        &self.generators[k - 1]
    }

    /// y_k, 1-based k in 1..=m.
    pub fn jm(&self, k: usize) -> &SqMat<Scalar> {
        &self.jm[k - 1]
    }

    /// Image of the primitive idempotent E_U for a standard tableau U with m
    /// entries.
    pub fn idempotent(&self, u: &StandardTableau) -> Result<SqMat<Scalar>> {
        assert_eq!(u.size(), self.m, "tableau size must match leg count");
        let dim = self.space.dim();
        let contents = u.contents();
        let mut e = SqMat::identity(dim);
        for k in 2..=self.m {
            let nu = u.shape_at(k - 1);
            let ck = contents[k - 1];
            let yk = &self.jm[k - 1];
            for (r, c) in nu.addable_cells() {
                let cc = c as i64 - r as i64;
                if cc == ck {
                    continue;
                }
                let denom = &self.cfg.q_power(2 * ck) - &self.cfg.q_power(2 * cc);
                if denom.is_zero() {
                    return Err(Error::DegenerateInterpolation(cc));
                }
                let shifted = yk.sub(&SqMat::scalar_multiple_of_identity(
                    dim,
                    self.cfg.q_power(2 * cc),
                ));
                e = e.mul(&shifted).scale(&denom.inv()?);
            }
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions, standard_tableaux, Shape};

    fn cfg() -> QConfig {
        QConfig::default_q()
    }

    fn all_tableaux(m: usize) -> Vec<StandardTableau> {
        partitions(m)
            .iter()
            .flat_map(|s| standard_tableaux(s))
            .collect()
    }

    #[test]
    fn two_leg_idempotents_are_hecke_eigenprojections() {
        for n in [2, 3] {
            let c = cfg();
            let ctx = HeckeContext::new(n, 2, &c).unwrap();
            let rc = ctx.generator(1).clone();
            let dim = n * n;
            let denom = (&*c.q() + &c.q_power(-1)).inv().unwrap();
            let sym = rc
                .add(&SqMat::scalar_multiple_of_identity(dim, c.q_power(-1)))
                .scale(&denom);
            let ant = SqMat::scalar_multiple_of_identity(dim, c.q().clone())
                .sub(&rc)
                .scale(&denom);

            let row = standard_tableaux(&Shape::new(vec![2]).unwrap());
            let col = standard_tableaux(&Shape::new(vec![1, 1]).unwrap());
            let e_row = ctx.idempotent(&row[0]).unwrap();
            let e_col = ctx.idempotent(&col[0]).unwrap();
            assert_eq!(e_row, sym);
            assert_eq!(e_col, ant);
            assert_eq!(e_row.add(&e_col), SqMat::identity(dim));
        }
    }

    #[test]
    fn jucys_murphy_family_is_commutative() {
        for (n, m) in [(2, 3), (2, 4), (3, 3)] {
            let ctx = HeckeContext::new(n, m, &cfg()).unwrap();
            for j in 1..=m {
                for k in (j + 1)..=m {
                    assert!(ctx.jm(j).commutator(ctx.jm(k)).is_zero());
                }
            }
        }
    }

    #[test]
    fn jucys_murphy_word_form() {
        // y_3 = T_2 T_1 T_1 T_2.
        let ctx = HeckeContext::new(2, 3, &cfg()).unwrap();
        let t1 = ctx.generator(1);
        let t2 = ctx.generator(2);
        assert_eq!(*ctx.jm(3), t2.mul(t1).mul(t1).mul(t2));
        assert_eq!(*ctx.jm(1), SqMat::identity(8));
    }

    #[test]
    fn jm_product_is_central_for_the_generators() {
        let ctx = HeckeContext::new(2, 3, &cfg()).unwrap();
        let prod = ctx.jm(1).mul(ctx.jm(2)).mul(ctx.jm(3));
        for k in 1..=2 {
            assert!(ctx.generator(k).commutator(&prod).is_zero());
        }
    }

    #[test]
    fn idempotents_resolve_identity_and_are_orthogonal() {
        for (n, m) in [(2, 3), (3, 3), (2, 4)] {
            let ctx = HeckeContext::new(n, m, &cfg()).unwrap();
            let es: Vec<SqMat<Scalar>> = all_tableaux(m)
                .iter()
                .map(|u| ctx.idempotent(u).unwrap())
                .collect();
            let mut sum = SqMat::zero(ctx.space().dim());
            for e in &es {
                sum = sum.add(e);
            }
            assert_eq!(sum, SqMat::identity(ctx.space().dim()));
            for (i, a) in es.iter().enumerate() {
                assert_eq!(a.mul(a), *a);
                for b in es.iter().skip(i + 1) {
                    assert!(a.mul(b).is_zero());
                    assert!(b.mul(a).is_zero());
                }
            }
        }
    }

    #[test]
    fn jm_eigenvalues_are_content_powers() {
        let c = cfg();
        for (n, m) in [(2, 3), (3, 3)] {
            let ctx = HeckeContext::new(n, m, &c).unwrap();
            for u in all_tableaux(m) {
                let e = ctx.idempotent(&u).unwrap();
                let contents = u.contents();
                for k in 1..=m {
                    let scaled = e.scale(&c.q_power(2 * contents[k - 1]));
                    assert_eq!(ctx.jm(k).mul(&e), scaled, "y_{} on {}", k, u);
                    assert_eq!(e.mul(ctx.jm(k)), scaled);
                }
            }
        }
    }

    #[test]
    fn column_idempotent_vanishes_when_rows_exceed_dimension() {
        let ctx = HeckeContext::new(2, 3, &cfg()).unwrap();
        let col = standard_tableaux(&Shape::new(vec![1, 1, 1]).unwrap());
        assert!(ctx.idempotent(&col[0]).unwrap().is_zero());
    }

    #[test]
    fn idempotent_rank_counts_semistandard_tableaux() {
        use crate::combinatorics::ssyt_count;
        use crate::linalg::{rank, RectMat};
        for (n, m) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let ctx = HeckeContext::new(n, m, &cfg()).unwrap();
            for u in all_tableaux(m) {
                let e = ctx.idempotent(&u).unwrap();
                assert_eq!(
                    rank(&RectMat::from_sq(&e)),
                    ssyt_count(u.shape(), n),
                    "U={} n={}",
                    u,
                    n
                );
            }
        }
    }
}

//! Evaluation of U_q(gl_n) on aux ⊗ (C^n)^{⊗N}.
//!
//! The generator matrices act through the R-matrix: on a single module leg
//! L⁺ acts as R and L⁻ as (R₂₁)⁻¹ on aux⊗module, and N legs compose by the
//! coproduct Δ(l^±_ij) = Σ_k l^±_ik ⊗ l^±_kj, realized as the ordered
//! product of single-leg embeddings with the leg-1 factor leftmost. The
//! convention is pinned by the relation checks below, not by fiat: the RTT
//! relations R L^±₁ L^±₂ = L^±₂ L^±₁ R and R L⁺₁ L⁻₂ = L⁻₂ L⁺₁ R, the
//! exchange relation L⁻₁ L₂ = L_{ō2} L⁻₁ for L = L⁺(L⁻)⁻¹, and the
//! reflection equation Ř L₁ Ř L₁ = L₁ Ř L₁ Ř must all hold exactly, and
//! highest weight vectors must carry l⁺_ii eigenvalues q^{λ_i}.

use crate::combinatorics::{standard_tableaux, Shape, StandardTableau};
use crate::error::{Error, Result};
use crate::exact::{PolyCoeff, QConfig, Scalar};
use crate::hecke::HeckeContext;
use crate::linalg;
use crate::mat::SqMat;
use crate::tensor::{r21_inv, r_check, r_check_inv, r_matrix, TensorSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Plus,
    Minus,
}

/// The four generator matrices evaluated on one aux leg and N module legs.
/// Leg 0 of `full` is the aux leg; legs 1..=N are module legs.
pub struct Rep {
    n: usize,
    module_sites: usize,
    cfg: QConfig,
    full: TensorSpace,
    module: TensorSpace,
    lplus: SqMat<Scalar>,
    lminus: SqMat<Scalar>,
    lminus_inv: SqMat<Scalar>,
    l: SqMat<Scalar>,
}

impl Rep {
    pub fn new(n: usize, module_sites: usize, cfg: &QConfig) -> Result<Self> {
        let full = TensorSpace::new(n, module_sites + 1);
        let module = TensorSpace::new(n, module_sites);
        let r = r_matrix(n, cfg);
        let rm = r21_inv(n, cfg);
        let mut lplus = SqMat::identity(full.dim());
        let mut lminus = SqMat::identity(full.dim());
        // Leg N sits leftmost in the product, so the first coproduct factor
        // lands on the rightmost module leg; this is the orientation under
        // which the Hecke projectors on module legs commute with the action.
        for s in (1..=module_sites).rev() {
            lplus = lplus.mul(&full.embed(&r, &[0, s])?);
            lminus = lminus.mul(&full.embed(&rm, &[0, s])?);
        }
        let lminus_inv = linalg::inverse(&lminus)?;
        let l = lplus.mul(&lminus_inv);
        Ok(Rep {
            n,
            module_sites,
            cfg: cfg.clone(),
            full,
            module,
            lplus,
            lminus,
            lminus_inv,
            l,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module_sites(&self) -> usize {
        self.module_sites
    }

    pub fn cfg(&self) -> &QConfig {
        &self.cfg
    }

    pub fn full_space(&self) -> &TensorSpace {
        &self.full
    }

    pub fn module_space(&self) -> &TensorSpace {
        &self.module
    }

    pub fn lplus(&self) -> &SqMat<Scalar> {
        &self.lplus
    }

    pub fn lminus(&self) -> &SqMat<Scalar> {
        &self.lminus
    }

    pub fn lminus_inv(&self) -> &SqMat<Scalar> {
        &self.lminus_inv
    }

    /// L = L⁺(L⁻)⁻¹ on aux ⊗ modules.
    pub fn l(&self) -> &SqMat<Scalar> {
        &self.l
    }

    fn matrix_of(&self, gen: Gen) -> &SqMat<Scalar> {
        match gen {
            Gen::Plus => &self.lplus,
            Gen::Minus => &self.lminus,
        }
    }

    /// π(l^±_ij) on the module space: the aux block (i, j) of L^±,
    /// 1-based i, j.
    pub fn generator_block(&self, gen: Gen, i: usize, j: usize) -> SqMat<Scalar> {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        let mdim = self.module.dim();
        let mut triplets = Vec::new();
        for (r, c, v) in self.matrix_of(gen).entries() {
            if r / mdim == i - 1 && c / mdim == j - 1 {
                triplets.push((r % mdim, c % mdim, v.clone()));
            }
        }
        SqMat::from_triplets(mdim, triplets)
    }

    /// All nonzero generator blocks π(l^±_ij), the centralizer test family.
    pub fn generator_blocks(&self) -> Vec<(Gen, usize, usize, SqMat<Scalar>)> {
        let mut out = Vec::new();
        for gen in [Gen::Plus, Gen::Minus] {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    let b = self.generator_block(gen, i, j);
                    if !b.is_zero() {
                        out.push((gen, i, j, b));
                    }
                }
            }
        }
        out
    }

    /// Embeds L^± or L with its aux leg at `aux` into a space with two aux
    /// legs (0, 1) followed by the module legs.
    fn on_two_aux(&self, m: &SqMat<Scalar>, aux: usize) -> SqMat<Scalar> {
        let sp = TensorSpace::new(self.n, self.module_sites + 2);
        let mut at = vec![aux];
        at.extend(2..self.module_sites + 2);
        sp.embed(m, &at).expect("valid embedding")
    }

    /// R L^a₁ L^b₂ = L^b₂ L^a₁ R for the three defining families
    /// (a, b) ∈ {(+,+), (-,-), (+,-)}.
    pub fn rtt_holds(&self, a: Gen, b: Gen) -> bool {
        let sp = TensorSpace::new(self.n, self.module_sites + 2);
        let r = sp
            .embed(&r_matrix(self.n, &self.cfg), &[0, 1])
            .expect("valid embedding");
        let a1 = self.on_two_aux(self.matrix_of(a), 0);
        let b2 = self.on_two_aux(self.matrix_of(b), 1);
        r.mul(&a1).mul(&b2) == b2.mul(&a1).mul(&r)
    }

    /// L⁻₁ L₂ = L_{ō2} L⁻₁ with L_{ō2} = Ř L₁ Ř⁻¹.
    pub fn exchange_holds(&self) -> bool {
        let sp = TensorSpace::new(self.n, self.module_sites + 2);
        let rc = sp
            .embed(&r_check(self.n, &self.cfg), &[0, 1])
            .expect("valid embedding");
        let rci = sp
            .embed(&r_check_inv(self.n, &self.cfg), &[0, 1])
            .expect("valid embedding");
        let lm1 = self.on_two_aux(&self.lminus, 0);
        let l1 = self.on_two_aux(&self.l, 0);
        let l2 = self.on_two_aux(&self.l, 1);
        lm1.mul(&l2) == rc.mul(&l1).mul(&rci).mul(&lm1)
    }

    /// Reflection equation Ř L₁ Ř L₁ = L₁ Ř L₁ Ř on two aux legs.
    pub fn reflection_holds(&self) -> bool {
        let sp = TensorSpace::new(self.n, self.module_sites + 2);
        let rc = sp
            .embed(&r_check(self.n, &self.cfg), &[0, 1])
            .expect("valid embedding");
        let l1 = self.on_two_aux(&self.l, 0);
        rc.mul(&l1).mul(&rc).mul(&l1) == l1.mul(&rc).mul(&l1).mul(&rc)
    }

    /// l⁺_ij = 0 for i > j and l⁻_ij = 0 for i < j.
    pub fn triangularity_holds(&self) -> bool {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if i > j && !self.generator_block(Gen::Plus, i, j).is_zero() {
                    return false;
                }
                if i < j && !self.generator_block(Gen::Minus, i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// l⁺_ii l⁻_ii = l⁻_ii l⁺_ii = 1.
    pub fn diagonal_inverses_hold(&self) -> bool {
        let id = SqMat::identity(self.module.dim());
        (1..=self.n).all(|i| {
            let p = self.generator_block(Gen::Plus, i, i);
            let m = self.generator_block(Gen::Minus, i, i);
            p.mul(&m) == id && m.mul(&p) == id
        })
    }

    /// Projector onto an irreducible submodule of highest weight shape(T),
    /// acting on the module legs.
    pub fn module_projector(&self, t: &StandardTableau) -> Result<SqMat<Scalar>> {
        if self.module_sites == 0 {
            return Ok(SqMat::identity(1));
        }
        HeckeContext::new(self.n, self.module_sites, &self.cfg)?.idempotent(t)
    }

    /// The joint solution of (1 - E_T)ξ = 0, l⁻_ij ξ = 0 (i > j), and
    /// l⁺_ii ξ = q^{λ_i} ξ, normalized so its first nonzero coordinate is 1.
    /// E_T is the projector for the first standard tableau of λ.
    pub fn highest_weight_vector(&self, lambda: &Shape) -> Result<Vec<Scalar>> {
        if lambda.size() != self.module_sites {
            return Err(Error::InvalidShape(format!(
                "weight {} does not fill {} module legs",
                lambda, self.module_sites
            )));
        }
        if lambda.rows() > self.n {
            return Err(Error::InvalidShape(format!(
                "weight {} has more than {} rows",
                lambda, self.n
            )));
        }
        let mdim = self.module.dim();
        let mut conditions = linalg::RectMat::new(mdim);
        if self.module_sites > 0 {
            let t = &standard_tableaux(lambda)[0];
            let proj = self.module_projector(t)?;
            conditions.stack_sq(&SqMat::identity(mdim).sub(&proj));
        }
        for i in 1..=self.n {
            for j in 1..=i - 1 {
                conditions.stack_sq(&self.generator_block(Gen::Minus, i, j));
            }
            let weight = self.cfg.q_power(lambda.part(i - 1) as i64);
            conditions.stack_sq(
                &self
                    .generator_block(Gen::Plus, i, i)
                    .sub(&SqMat::scalar_multiple_of_identity(mdim, weight)),
            );
        }
        let ns = linalg::nullspace(&conditions);
        match ns.len() {
            0 => Err(Error::NoHighestWeight(format!(
                "no joint solution for weight {} at n={}",
                lambda, self.n
            ))),
            1 => {
                let xi = &ns[0];
                let lead = xi
                    .iter()
                    .find(|v| !v.is_zero())
                    .expect("nullspace vector is nonzero")
                    .inv()?;
                Ok(xi.iter().map(|v| v * &lead).collect())
            }
            k => Err(Error::AmbiguousHighestWeight(
                format!("weight {} at n={}", lambda, self.n),
                k,
            )),
        }
    }
}

/// Eigenvalue χ of a central operator on the isotypic image of a projector:
/// op·proj = χ·proj exactly.
pub fn central_eigenvalue(op: &SqMat<Scalar>, proj: &SqMat<Scalar>) -> Result<Scalar> {
    let prod = op.mul(proj);
    let Some((r, c, pv)) = proj.entries().next() else {
        return Err(Error::NotScalar("projector is zero".into()));
    };
    let chi = &prod.entry(r, c) * &pv.inv()?;
    if prod == proj.scale(&chi) {
        Ok(chi)
    } else {
        Err(Error::NotScalar(
            "operator is not scalar on the isotypic component".into(),
        ))
    }
}

/// Proportionality constant c with image = c·ξ, for an operator image of a
/// highest weight vector; the coefficients of the image may be polynomials.
pub fn eigenvalue_on_vector<V: PolyCoeff>(image: &[V], xi: &[Scalar]) -> Result<V> {
    assert_eq!(image.len(), xi.len(), "vector length mismatch");
    let Some(j0) = xi.iter().position(|v| !v.is_zero()) else {
        return Err(Error::NotScalar("highest weight vector is zero".into()));
    };
    let c = image[j0].cscale(&xi[j0].inv()?);
    for (im, x) in image.iter().zip(xi) {
        if *im != c.cscale(x) {
            return Err(Error::NotScalar(
                "image is not proportional to the highest weight vector".into(),
            ));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_max_rows;

    fn cfg() -> QConfig {
        QConfig::default_q()
    }

    fn sh(parts: &[usize]) -> Shape {
        Shape::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_leg_matrices_are_r_matrices() {
        let c = cfg();
        let rep = Rep::new(2, 1, &c).unwrap();
        assert_eq!(*rep.lplus(), r_matrix(2, &c));
        assert_eq!(*rep.lminus(), r21_inv(2, &c));
        // L = R·R₂₁ frozen at q = 3/2 in the (11,12,21,22) basis.
        let w = c.q_minus_qinv();
        let q2 = c.q_power(2);
        let l = rep.l();
        assert_eq!(l.entry(0, 0), q2);
        assert_eq!(l.entry(1, 1), &Scalar::one() + &(&w * &w));
        assert_eq!(l.entry(1, 2), w);
        assert_eq!(l.entry(2, 1), w);
        assert_eq!(l.entry(2, 2), Scalar::one());
        assert_eq!(l.entry(3, 3), q2);
        assert_eq!(l.nnz(), 6);
    }

    #[test]
    fn generator_blocks_on_one_leg() {
        let c = cfg();
        let rep = Rep::new(2, 1, &c).unwrap();
        let w = c.q_minus_qinv();
        let diag = |a: Scalar, b: Scalar| {
            SqMat::from_triplets(2, [(0, 0, a), (1, 1, b)])
        };
        assert_eq!(
            rep.generator_block(Gen::Plus, 1, 1),
            diag(c.q().clone(), Scalar::one())
        );
        assert_eq!(
            rep.generator_block(Gen::Plus, 2, 2),
            diag(Scalar::one(), c.q().clone())
        );
        assert_eq!(
            rep.generator_block(Gen::Minus, 1, 1),
            diag(c.q_power(-1), Scalar::one())
        );
        assert_eq!(
            rep.generator_block(Gen::Plus, 1, 2),
            SqMat::from_triplets(2, [(1, 0, w.clone())])
        );
        assert!(rep.generator_block(Gen::Plus, 2, 1).is_zero());
        assert_eq!(
            rep.generator_block(Gen::Minus, 2, 1),
            SqMat::from_triplets(2, [(0, 1, -&w)])
        );
        assert!(rep.generator_block(Gen::Minus, 1, 2).is_zero());
    }

    #[test]
    fn coproduct_composes_generator_blocks() {
        let c = cfg();
        let one = Rep::new(2, 1, &c).unwrap();
        let two = Rep::new(2, 2, &c).unwrap();
        let sp = two.module_space();
        for gen in [Gen::Plus, Gen::Minus] {
            for i in 1..=2 {
                for j in 1..=2 {
                    // Δ(l_ij) = Σ_k l_ik ⊗ l_kj with the first factor on
                    // the rightmost leg.
                    let mut sum = SqMat::zero(sp.dim());
                    for k in 1..=2 {
                        let a = sp.embed(&one.generator_block(gen, i, k), &[1]).unwrap();
                        let b = sp.embed(&one.generator_block(gen, k, j), &[0]).unwrap();
                        sum = sum.add(&a.mul(&b));
                    }
                    assert_eq!(two.generator_block(gen, i, j), sum);
                }
            }
        }
    }

    #[test]
    fn defining_relations_hold() {
        for (n, ns) in [(2, 1), (2, 2), (3, 1)] {
            let rep = Rep::new(n, ns, &cfg()).unwrap();
            assert!(rep.rtt_holds(Gen::Plus, Gen::Plus));
            assert!(rep.rtt_holds(Gen::Minus, Gen::Minus));
            assert!(rep.rtt_holds(Gen::Plus, Gen::Minus));
            assert!(rep.exchange_holds());
            assert!(rep.reflection_holds());
            assert!(rep.triangularity_holds());
            assert!(rep.diagonal_inverses_hold());
        }
    }

    #[test]
    fn empty_module_gives_identity_action() {
        let rep = Rep::new(3, 0, &cfg()).unwrap();
        assert_eq!(*rep.l(), SqMat::identity(3));
        assert_eq!(rep.module_space().dim(), 1);
        assert_eq!(
            rep.highest_weight_vector(&Shape::empty()).unwrap(),
            vec![Scalar::one()]
        );
    }

    #[test]
    fn highest_weight_vectors_for_two_legs() {
        let c = cfg();
        let rep1 = Rep::new(2, 1, &c).unwrap();
        assert_eq!(
            rep1.highest_weight_vector(&sh(&[1])).unwrap(),
            vec![Scalar::one(), Scalar::zero()]
        );
        let rep2 = Rep::new(2, 2, &c).unwrap();
        assert_eq!(
            rep2.highest_weight_vector(&sh(&[2])).unwrap(),
            vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()]
        );
        // ξ = e₁⊗e₂ − q⁻¹·e₂⊗e₁ normalized to leading coordinate 1.
        assert_eq!(
            rep2.highest_weight_vector(&sh(&[1, 1])).unwrap(),
            vec![
                Scalar::zero(),
                Scalar::one(),
                -&c.q_power(-1),
                Scalar::zero()
            ]
        );
        assert!(matches!(
            rep2.highest_weight_vector(&sh(&[1])),
            Err(Error::InvalidShape(_))
        ));
        assert!(matches!(
            rep2.highest_weight_vector(&sh(&[1, 1, 1])),
            Err(Error::InvalidShape(_))
        ));
    }

    #[test]
    fn highest_weight_vectors_exist_up_to_three_legs() {
        for n in [2, 3] {
            for ns in 0..=3 {
                let rep = Rep::new(n, ns, &cfg()).unwrap();
                for lambda in partitions_max_rows(ns, n) {
                    let xi = rep.highest_weight_vector(&lambda).unwrap();
                    assert!(xi.iter().any(|v| !v.is_zero()), "λ={} n={}", lambda, n);
                    // Weight eigenvalues are part of the defining system; spot
                    // check the first diagonal generator anyway.
                    let b = rep.generator_block(Gen::Plus, 1, 1);
                    let image = b.matvec(&xi);
                    let c = eigenvalue_on_vector(&image, &xi).unwrap();
                    assert_eq!(c, rep.cfg().q_power(lambda.part(0) as i64));
                }
            }
        }
    }

    #[test]
    fn module_projector_commutes_with_generators() {
        let rep = Rep::new(2, 2, &cfg()).unwrap();
        for shape in [sh(&[2]), sh(&[1, 1])] {
            let t = &standard_tableaux(&shape)[0];
            let proj = rep.module_projector(t).unwrap();
            for (_, _, _, block) in rep.generator_blocks() {
                assert!(proj.commutator(&block).is_zero(), "shape {}", shape);
            }
        }
    }

    #[test]
    fn q_trace_of_l_eigenvalues() {
        let c = cfg();
        let rep1 = Rep::new(2, 1, &c).unwrap();
        let trl = rep1
            .full_space()
            .q_partial_trace(rep1.l(), &[0], &c)
            .unwrap();
        let proj = SqMat::identity(2);
        let chi = central_eigenvalue(&trl, &proj).unwrap();
        // q² + q⁻² at q = 3/2.
        assert_eq!(chi, Scalar::ratio(97, 36).unwrap());
        assert_eq!(chi, &c.q_power(2) + &c.q_power(-2));

        // λ = (2): χ(tr_q L) = q⁴ + q⁻² on the symmetric square.
        let rep2 = Rep::new(2, 2, &c).unwrap();
        let trl2 = rep2
            .full_space()
            .q_partial_trace(rep2.l(), &[0], &c)
            .unwrap();
        let t = &standard_tableaux(&sh(&[2]))[0];
        let proj2 = rep2.module_projector(t).unwrap();
        let chi2 = central_eigenvalue(&trl2, &proj2).unwrap();
        assert_eq!(chi2, &c.q_power(4) + &c.q_power(-2));
        let xi = rep2.highest_weight_vector(&sh(&[2])).unwrap();
        assert_eq!(eigenvalue_on_vector(&trl2.matvec(&xi), &xi).unwrap(), chi2);
    }
}

//! q-immanant central operators and Newton identities on tensor modules.
//!
//! For a standard tableau U of shape μ ⊢ m with contents c_k = c(α) of the
//! box α holding entry k, the q-immanant polynomial is
//!
//!   S_U(z) = tr_{q(1..m)} (L_{ō1} + zq^{−2c₁}) … (L_{ōm} + zq^{−2c_m}) E_U,
//!
//! where L_{ō1} = L₁ and L_{ōk} = Ř_{k−1} L_{ō,k−1} Ř_{k−1}⁻¹ act on m aux
//! legs tensored with the module, E_U is the Hecke idempotent on the aux
//! legs, and the q-trace is taken over all aux legs. An equivalent form
//! writes each factor through the generator matrices,
//!
//!   S_U(z) = tr_{1..m} (L⁺₁+zq^{−2c₁}L⁻₁)…(L⁺_m+zq^{−2c_m}L⁻_m)
//!            (L⁻_m)⁻¹…(L⁻₁)⁻¹ D₁…D_m E_U,
//!
//! with the ordinary trace; both routes are computed and must agree. The
//! coefficients of S_U(z) are central, independent of U, and act on the
//! highest weight module λ by the factorial Schur value
//! s_μ(q^{2ℓ₁},…,q^{2ℓ_n} | a) with ℓ_i = λ_i − i + 1 and a_k = z·q^{2−2k}.
//! The shift sequence is pinned by the m = 1 identity
//! S_{(1)}(z) = tr_q L + z·(tr D)·Id, whose z-coefficient is
//! tr D = 1 + q⁻² + … + q^{2−2n} = Σ_k a_k/z.
//!
//! The elementary generating function E(u) = Σ_m (−u)^{−m} S_{(1^m)}
//! satisfies the Newton identity E(u)·(1 + (1−q⁻²) Σ_m tr_q L^m u^{−m})
//! = E(uq²), and the power-sum eigenvalues obey
//! 1 + (1−q⁻²) Σ_m χ(tr_q L^m) u^{−m} = ∏_i (1−q^{2ℓᵢ−2}u⁻¹)/(1−q^{2ℓᵢ}u⁻¹).

use crate::combinatorics::{factorial_schur, standard_tableaux, Shape, StandardTableau};
use crate::error::{Error, Result};
use crate::exact::{QConfig, Scalar};
use crate::hecke::HeckeContext;
use crate::mat::SqMat;
use crate::poly::{Poly, Var};
use crate::tensor::{d_matrix, TensorSpace};
use crate::uqgln_rep::Rep;

/// Largest ambient dimension n^{m+N} for which the full-matrix route is
/// formed; larger systems use the push route on single vectors.
pub const MATRIX_ROUTE_MAX_DIM: usize = 256;

/// m aux legs (0..m-1) in front of the module legs of a representation,
/// carrying the conjugated copies L_{ō1}, …, L_{ōm}.
pub struct AuxChain<'a> {
    rep: &'a Rep,
    m: usize,
    space: TensorSpace,
    aux_legs: Vec<usize>,
    l_bar: Vec<SqMat<Scalar>>,
    hecke: HeckeContext,
}

impl<'a> AuxChain<'a> {
    pub fn new(rep: &'a Rep, m: usize) -> Result<Self> {
        assert!(m >= 1, "an aux chain has at least one leg");
        let n = rep.n();
        let sites = m + rep.module_sites();
        let space = TensorSpace::new(n, sites);
        let aux_legs: Vec<usize> = (0..m).collect();
        let mut at = vec![0];
        at.extend(m..sites);
        let l1 = space.embed(rep.l(), &at)?;
        let mut l_bar = vec![l1];
        for k in 1..m {
            let next = space.bar_conjugate(l_bar.last().expect("nonempty"), k - 1, rep.cfg())?;
            l_bar.push(next);
        }
        let hecke = HeckeContext::new(n, m, rep.cfg())?;
        Ok(AuxChain {
            rep,
            m,
            space,
            aux_legs,
            l_bar,
            hecke,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn aux_legs(&self) -> &[usize] {
        &self.aux_legs
    }

    /// L_{ōk} on the full chain space, 1-based k.
    pub fn l_bar(&self, k: usize) -> &SqMat<Scalar> {
        &self.l_bar[k - 1]
    }

    /// E_U acting on the aux legs, extended by the identity on the module.
    pub fn embedded_idempotent(&self, u: &StandardTableau) -> Result<SqMat<Scalar>> {
        if u.size() != self.m {
            return Err(Error::InvalidShape(format!(
                "tableau {} does not fill {} aux legs",
                u, self.m
            )));
        }
        let e = self.hecke.idempotent(u)?;
        self.space.embed(&e, &self.aux_legs)
    }

    fn traced_coeffs(
        &self,
        p: &Poly<SqMat<Scalar>>,
        q_weighted: bool,
    ) -> Result<Poly<SqMat<Scalar>>> {
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            let t = if q_weighted {
                self.space
                    .q_partial_trace(c, &self.aux_legs, self.rep.cfg())?
            } else {
                self.space.partial_trace(c, &self.aux_legs)?
            };
            terms.push((e, t));
        }
        Ok(Poly::from_terms(Var::Z, terms))
    }

    /// S_U(z) as a polynomial in z with coefficients acting on the module
    /// space, computed along both trace routes, which must agree exactly.
    pub fn immanant_poly(&self, u: &StandardTableau) -> Result<Poly<SqMat<Scalar>>> {
        let amb = self.space.dim();
        if amb > MATRIX_ROUTE_MAX_DIM {
            return Err(Error::ScaleExceeded(format!(
                "ambient dimension {} exceeds the full-matrix route cap {}",
                amb, MATRIX_ROUTE_MAX_DIM
            )));
        }
        let e_big = self.embedded_idempotent(u)?;
        let contents = u.contents();
        let cfg = self.rep.cfg();

        let mut p = Poly::constant(e_big.clone());
        for k in (1..=self.m).rev() {
            let w = cfg.q_power(-2 * contents[k - 1]);
            let factor = Poly::from_terms(
                Var::Z,
                [
                    (0, self.l_bar[k - 1].clone()),
                    (1, SqMat::scalar_multiple_of_identity(amb, w)),
                ],
            );
            p = factor.mul(&p)?;
        }
        let bar = self.traced_coeffs(&p, true)?;

        let module_at = |k: usize| {
            let mut at = vec![k];
            at.extend(self.m..self.space.sites());
            at
        };
        let mut g = Poly::constant(SqMat::identity(amb));
        for k in 1..=self.m {
            let at = module_at(k - 1);
            let lp = self.space.embed(self.rep.lplus(), &at)?;
            let lm = self.space.embed(self.rep.lminus(), &at)?;
            let w = cfg.q_power(-2 * contents[k - 1]);
            let factor = Poly::from_terms(Var::Z, [(0, lp), (1, lm.scale(&w))]);
            g = g.mul(&factor)?;
        }
        let mut tail = SqMat::identity(amb);
        for k in (1..=self.m).rev() {
            tail = tail.mul(&self.space.embed(self.rep.lminus_inv(), &module_at(k - 1))?);
        }
        let d = d_matrix(self.rep.n(), cfg);
        for k in 0..self.m {
            tail = tail.mul(&self.space.embed(&d, &[k])?);
        }
        tail = tail.mul(&e_big);
        g = g.mul(&Poly::constant(tail))?;
        let gen = self.traced_coeffs(&g, false)?;

        if bar != gen {
            return Err(Error::RouteMismatch(format!(
                "q-trace and generator-matrix routes disagree for U={}",
                u
            )));
        }
        Ok(bar)
    }

    /// Matrix-free applicator for S_U(z) at sampled z.
    pub fn push_operator(&self, u: &StandardTableau) -> Result<PushOperator<'_, 'a>> {
        Ok(PushOperator {
            chain: self,
            e_big: self.embedded_idempotent(u)?,
            contents: u.contents(),
        })
    }
}

/// Applies S_U(z) to module vectors one aux index at a time, never forming
/// the operator matrix.
pub struct PushOperator<'c, 'a> {
    chain: &'c AuxChain<'a>,
    e_big: SqMat<Scalar>,
    contents: Vec<i64>,
}

impl PushOperator<'_, '_> {
    pub fn apply(&self, z: &Scalar, w: &[Scalar]) -> Vec<Scalar> {
        let chain = self.chain;
        let n = chain.rep.n();
        let cfg = chain.rep.cfg();
        let mdim = chain.rep.module_space().dim();
        assert_eq!(w.len(), mdim, "module vector length");
        let amb = chain.space.dim();
        let n_aux = amb / mdim;
        let weights: Vec<Scalar> = self
            .contents
            .iter()
            .map(|c| z * &cfg.q_power(-2 * c))
            .collect();
        let mut out = vec![Scalar::zero(); mdim];
        for aux in 0..n_aux {
            let base = aux * mdim;
            let mut v = vec![Scalar::zero(); amb];
            for (b, wb) in w.iter().enumerate() {
                v[base + b] = wb.clone();
            }
            let mut v = self.e_big.matvec(&v);
            for k in (1..=chain.m).rev() {
                let mut nv = chain.l_bar[k - 1].matvec(&v);
                let wk = &weights[k - 1];
                if !wk.is_zero() {
                    for (nvi, vi) in nv.iter_mut().zip(&v) {
                        if !vi.is_zero() {
                            *nvi = &*nvi + &(wk * vi);
                        }
                    }
                }
                v = nv;
            }
            let mut digit_sum = 0i64;
            let mut a = aux;
            for _ in 0..chain.m {
                digit_sum += (a % n) as i64;
                a /= n;
            }
            let dw = cfg.q_power(-2 * digit_sum);
            for (ob, vb) in out.iter_mut().zip(&v[base..base + mdim]) {
                if !vb.is_zero() {
                    *ob = &*ob + &(&dw * vb);
                }
            }
        }
        out
    }
}

/// P(z₀) for a polynomial with matrix coefficients.
pub fn eval_matrix_poly(p: &Poly<SqMat<Scalar>>, z: &Scalar, dim: usize) -> SqMat<Scalar> {
    let mut out = SqMat::zero(dim);
    for (e, c) in p.terms() {
        assert!(e >= 0, "matrix polynomial has nonnegative exponents");
        let zf = z.pow(e).expect("nonnegative exponent");
        out = out.add(&c.scale(&zf));
    }
    out
}

/// Every coefficient commutes with every generator block of the
/// representation.
pub fn coefficients_are_central(p: &Poly<SqMat<Scalar>>, rep: &Rep) -> bool {
    let blocks = rep.generator_blocks();
    p.terms()
        .all(|(_, c)| blocks.iter().all(|(_, _, _, b)| c.commutator(b).is_zero()))
}

/// s_μ(q^{2ℓ₁},…,q^{2ℓ_n} | a) with ℓ_i = λ_i − i + 1 and a_k = z·q^{2−2k}.
pub fn immanant_eigenvalue(
    n: usize,
    mu: &Shape,
    lambda: &Shape,
    z: &Scalar,
    cfg: &QConfig,
) -> Result<Scalar> {
    if lambda.rows() > n {
        return Err(Error::InvalidShape(format!(
            "weight {} has more than {} rows",
            lambda, n
        )));
    }
    let x: Vec<Scalar> = (1..=n)
        .map(|i| cfg.q_power(2 * (lambda.part(i - 1) as i64 - i as i64 + 1)))
        .collect();
    let a: Vec<Scalar> = (1..n + mu.part(0))
        .map(|k| z * &cfg.q_power(2 - 2 * k as i64))
        .collect();
    Ok(factorial_schur(mu, &x, &a))
}

/// tr_q L^m over the aux leg, acting on the module space.
pub fn gelfand_invariant(rep: &Rep, m: usize) -> Result<SqMat<Scalar>> {
    rep.full_space()
        .q_partial_trace(&rep.l().pow(m), &[0], rep.cfg())
}

/// E(u) = Σ_{m=0}^n (−u)^{−m} tr_{q(1..m)} L_{ō1}…L_{ōm} E_{(1^m)}.
pub fn elementary_series(rep: &Rep) -> Result<Poly<SqMat<Scalar>>> {
    let mdim = rep.module_space().dim();
    let mut terms: Vec<(i64, SqMat<Scalar>)> = vec![(0, SqMat::identity(mdim))];
    for m in 1..=rep.n() {
        let chain = AuxChain::new(rep, m)?;
        let col = Shape::new(vec![1; m])?;
        let u = &standard_tableaux(&col)[0];
        let mut prod = chain.embedded_idempotent(u)?;
        for k in (1..=m).rev() {
            prod = chain.l_bar(k).mul(&prod);
        }
        let tr = chain
            .space()
            .q_partial_trace(&prod, chain.aux_legs(), rep.cfg())?;
        terms.push((-(m as i64), if m % 2 == 1 { tr.neg() } else { tr }));
    }
    Ok(Poly::from_terms(Var::U, terms))
}

/// 1 + (1−q⁻²) Σ_{m=1}^{order} tr_q(L^m) u^{−m}.
pub fn power_sum_series(rep: &Rep, order: usize) -> Result<Poly<SqMat<Scalar>>> {
    let mdim = rep.module_space().dim();
    let cfg = rep.cfg();
    let factor = &Scalar::one() - &cfg.q_power(-2);
    let mut terms = vec![(0, SqMat::identity(mdim))];
    let mut power = SqMat::identity(rep.full_space().dim());
    for m in 1..=order {
        power = power.mul(rep.l());
        let tr = rep.full_space().q_partial_trace(&power, &[0], cfg)?;
        terms.push((-(m as i64), tr.scale(&factor)));
    }
    Ok(Poly::from_terms(Var::U, terms))
}

/// E(u)·(1 + (1−q⁻²) Σ tr_q L^m u^{−m}) = E(uq²) mod u^{−(order+1)},
/// checked in both multiplication orders.
pub fn newton_identity_holds(rep: &Rep, order: usize) -> Result<bool> {
    let e = elementary_series(rep)?;
    let g = power_sum_series(rep, order)?;
    let cut = -(order as i64);
    let rhs = e
        .substitute_scaled(&rep.cfg().q_power(2))?
        .truncate_below(cut);
    let lhs_eg = e.mul(&g)?.truncate_below(cut);
    let lhs_ge = g.mul(&e)?.truncate_below(cut);
    Ok(lhs_eg == rhs && lhs_ge == rhs)
}

/// ∏_i (1−q^{2ℓᵢ−2}u⁻¹)/(1−q^{2ℓᵢ}u⁻¹) expanded in u⁻¹ mod u^{−(order+1)}.
pub fn liouville_series(
    n: usize,
    lambda: &Shape,
    cfg: &QConfig,
    order: usize,
) -> Result<Poly<Scalar>> {
    if lambda.rows() > n {
        return Err(Error::InvalidShape(format!(
            "weight {} has more than {} rows",
            lambda, n
        )));
    }
    let cut = -(order as i64);
    let mut s = Poly::constant(Scalar::one());
    for i in 1..=n {
        let ell = lambda.part(i - 1) as i64 - i as i64 + 1;
        let num = Poly::from_terms(
            Var::U,
            [(0, Scalar::one()), (-1, -&cfg.q_power(2 * ell - 2))],
        );
        let den_inv = Poly::from_terms(
            Var::U,
            (0..=order as i64).map(|j| (-j, cfg.q_power(2 * ell * j))),
        );
        s = s.mul(&num)?.mul(&den_inv)?.truncate_below(cut);
    }
    Ok(s)
}

/// χ_λ(tr_q L^m) extracted from the power-sum generating identity.
pub fn gelfand_eigenvalue(n: usize, m: usize, lambda: &Shape, cfg: &QConfig) -> Result<Scalar> {
    let s = liouville_series(n, lambda, cfg, m)?;
    let c = s.coeff(-(m as i64)).cloned().unwrap_or_else(Scalar::zero);
    let denom = (&Scalar::one() - &cfg.q_power(-2)).inv()?;
    Ok(&c * &denom)
}

//! Tensor legs over (C^n)^{⊗s}: index encoding, operator embedding, partial
//! and q-weighted traces, and the standard gl_n R-matrix family.
//!
//! Site 0 is the leftmost tensor factor and the most significant digit of a
//! linear index, so e_{i_0}⊗...⊗e_{i_{s-1}} sits at Σ_a i_a n^{s-1-a} with
//! 0-based digits. On two legs the R-matrix is
//! R = q Σ_i e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q-q⁻¹) Σ_{i<j} e_ij⊗e_ji,
//! P is the flip, Ř = PR satisfies (Ř-q)(Ř+q⁻¹) = 0, and the q-trace weight
//! is D = diag(1, q⁻², ..., q^{2-2n}).

use crate::error::{Error, Result};
use crate::exact::{Coeff, QConfig, Scalar};
use crate::mat::SqMat;

/// A tensor power of C^n with numbered legs; all embedding and tracing is
/// phrased relative to one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    n: usize,
    sites: usize,
}

impl TensorSpace {
    pub fn new(n: usize, sites: usize) -> Self {
        assert!(n >= 1, "site dimension must be positive");
        TensorSpace { n, sites }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.sites as u32)
    }

    /// Stride of a site: its digit weight in the linear index.
    fn stride(&self, site: usize) -> usize {
        self.n.pow((self.sites - 1 - site) as u32)
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        assert_eq!(digits.len(), self.sites, "digit count mismatch");
        digits.iter().fold(0, |acc, &d| {
            debug_assert!(d < self.n);
            acc * self.n + d
        })
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut digits = vec![0; self.sites];
        for site in (0..self.sites).rev() {
            digits[site] = idx % self.n;
            idx /= self.n;
        }
        debug_assert_eq!(idx, 0, "index out of range");
        digits
    }

    fn check_sites(&self, at: &[usize]) -> Result<()> {
        for (k, &s) in at.iter().enumerate() {
            if s >= self.sites {
                return Err(Error::SiteOutOfRange { site: s, total: self.sites });
            }
            if at[..k].contains(&s) {
                return Err(Error::DuplicateSite(s));
            }
        }
        Ok(())
    }

    /// All linear-index offsets contributed by the sites NOT in `at`, i.e.
    /// Σ over assignments of the complementary digits. Sorted ascending.
    fn complement_offsets(&self, at: &[usize]) -> Vec<usize> {
        let others: Vec<usize> = (0..self.sites).filter(|s| !at.contains(s)).collect();
        let mut offsets = vec![0usize];
        for &site in &others {
            let stride = self.stride(site);
            let mut next = Vec::with_capacity(offsets.len() * self.n);
            for &off in &offsets {
                for d in 0..self.n {
                    next.push(off + d * stride);
                }
            }
            offsets = next;
        }
        offsets.sort_unstable();
        offsets
    }

    /// Embeds an operator on legs `at` (in the order its own legs are
    /// numbered) into the full space, acting as identity elsewhere.
    pub fn embed<C: Coeff>(&self, op: &SqMat<C>, at: &[usize]) -> Result<SqMat<C>> {
        self.check_sites(at)?;
        let small = TensorSpace::new(self.n, at.len());
        assert_eq!(op.dim(), small.dim(), "operator dimension mismatch");
        let offsets = self.complement_offsets(at);
        let mut triplets = Vec::with_capacity(op.nnz() * offsets.len());
        for (r, c, v) in op.entries() {
            let rd = small.decode(r);
            let cd = small.decode(c);
            let base_r: usize = rd.iter().zip(at).map(|(&d, &s)| d * self.stride(s)).sum();
            let base_c: usize = cd.iter().zip(at).map(|(&d, &s)| d * self.stride(s)).sum();
            for &off in &offsets {
                triplets.push((base_r + off, base_c + off, v.clone()));
            }
        }
        Ok(SqMat::from_triplets(self.dim(), triplets))
    }

    /// Ordinary partial trace over `traced` legs; the result acts on the
    /// remaining legs in their original order.
    pub fn partial_trace<C: Coeff>(&self, op: &SqMat<C>, traced: &[usize]) -> Result<SqMat<C>> {
        self.trace_impl(op, traced, None)
    }

    /// q-weighted partial trace: each traced leg carries the weight matrix D,
    /// so digit d contributes a factor q^{-2d}.
    pub fn q_partial_trace<C: Coeff>(
        &self,
        op: &SqMat<C>,
        traced: &[usize],
        cfg: &QConfig,
    ) -> Result<SqMat<C>> {
        self.trace_impl(op, traced, Some(cfg))
    }

    fn trace_impl<C: Coeff>(
        &self,
        op: &SqMat<C>,
        traced: &[usize],
        weight: Option<&QConfig>,
    ) -> Result<SqMat<C>> {
        self.check_sites(traced)?;
        assert_eq!(op.dim(), self.dim(), "operator dimension mismatch");
        let kept: Vec<usize> = (0..self.sites).filter(|s| !traced.contains(s)).collect();
        let small = TensorSpace::new(self.n, kept.len());
        let mut triplets = Vec::new();
        for (r, c, v) in op.entries() {
            let rd = self.decode(r);
            let cd = self.decode(c);
            if traced.iter().any(|&s| rd[s] != cd[s]) {
                continue;
            }
            let rr = small.encode(&kept.iter().map(|&s| rd[s]).collect::<Vec<_>>());
            let cc = small.encode(&kept.iter().map(|&s| cd[s]).collect::<Vec<_>>());
            let w = match weight {
                None => v.clone(),
                Some(cfg) => {
                    let mut w = v.clone();
                    for &s in traced {
                        w = w.cscale(&cfg.q_power(-2 * rd[s] as i64));
                    }
                    w
                }
            };
            triplets.push((rr, cc, w));
        }
        Ok(SqMat::from_triplets(small.dim(), triplets))
    }

    /// Bar conjugation X ↦ Ř X Ř⁻¹ with the braiding on legs (leg, leg + 1).
    pub fn bar_conjugate<C: Coeff>(
        &self,
        op: &SqMat<C>,
        leg: usize,
        cfg: &QConfig,
    ) -> Result<SqMat<C>> {
        let rc = self.embed(&r_check(self.n, cfg).lift::<C>(), &[leg, leg + 1])?;
        let rci = self.embed(&r_check_inv(self.n, cfg).lift::<C>(), &[leg, leg + 1])?;
        Ok(rc.mul(op).mul(&rci))
    }
}

fn two_leg_entry(n: usize, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
    // Matrix entry of e_ij ⊗ e_kl: row (i,k), column (j,l).
    (i * n + k, j * n + l)
}

/// R = q Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q-q⁻¹) Σ_{i<j} e_ij⊗e_ji.
pub fn r_matrix(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (r, c) = two_leg_entry(n, i, i, j, j);
            t.push((r, c, if i == j { cfg.q().clone() } else { Scalar::one() }));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (r, c) = two_leg_entry(n, i, j, j, i);
            t.push((r, c, cfg.q_minus_qinv()));
        }
    }
    SqMat::from_triplets(n * n, t)
}

/// R⁻¹ = q⁻¹ Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj - (q-q⁻¹) Σ_{i<j} e_ij⊗e_ji.
pub fn r_matrix_inv(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (r, c) = two_leg_entry(n, i, i, j, j);
            t.push((r, c, if i == j { cfg.q_power(-1) } else { Scalar::one() }));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (r, c) = two_leg_entry(n, i, j, j, i);
            t.push((r, c, -&cfg.q_minus_qinv()));
        }
    }
    SqMat::from_triplets(n * n, t)
}

/// R with its two legs exchanged: P R P.
pub fn r21(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    let p = permutation(n);
    p.mul(&r_matrix(n, cfg)).mul(&p)
}

/// (R₂₁)⁻¹ = q⁻¹ Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj - (q-q⁻¹) Σ_{i>j} e_ij⊗e_ji.
pub fn r21_inv(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (r, c) = two_leg_entry(n, i, i, j, j);
            t.push((r, c, if i == j { cfg.q_power(-1) } else { Scalar::one() }));
        }
    }
    for j in 0..n {
        for i in (j + 1)..n {
            let (r, c) = two_leg_entry(n, i, j, j, i);
            t.push((r, c, -&cfg.q_minus_qinv()));
        }
    }
    SqMat::from_triplets(n * n, t)
}

/// The flip P = Σ e_ij⊗e_ji.
pub fn permutation(n: usize) -> SqMat<Scalar> {
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (r, c) = two_leg_entry(n, i, j, j, i);
            t.push((r, c, Scalar::one()));
        }
    }
    SqMat::from_triplets(n * n, t)
}

/// Ř = P R, the braid-group image with Hecke quadratic (Ř-q)(Ř+q⁻¹) = 0.
pub fn r_check(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    permutation(n).mul(&r_matrix(n, cfg))
}

/// Ř⁻¹ = Ř - (q-q⁻¹) Id, a rewriting of the Hecke quadratic.
pub fn r_check_inv(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    let id = SqMat::scalar_multiple_of_identity(n * n, cfg.q_minus_qinv());
    r_check(n, cfg).sub(&id)
}

/// One-leg weight D = diag(1, q⁻², ..., q^{2-2n}).
pub fn d_matrix(n: usize, cfg: &QConfig) -> SqMat<Scalar> {
    SqMat::from_triplets(n, (0..n).map(|k| (k, k, cfg.q_power(-2 * k as i64))))
}

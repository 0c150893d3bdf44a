//! Sparse square matrices over an exact coefficient ring.
//!
//! Storage is sorted sparse rows at every dimension. Entries are never zero;
//! two matrices are equal iff their stored structure is equal, which makes
//! operator equality checks exact and cheap.

use crate::exact::{Coeff, PolyCoeff, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct SqMat<C: Coeff> {
    dim: usize,
    /// rows[r] is sorted by column index and holds no zero coefficients.
    rows: Vec<Vec<(u32, C)>>,
}

impl<C: Coeff> SqMat<C> {
    pub fn zero(dim: usize) -> Self {
        SqMat {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SqMat::zero(dim);
        for r in 0..dim {
            m.rows[r].push((r as u32, C::cone()));
        }
        m
    }

    pub fn scalar_multiple_of_identity(dim: usize, c: C) -> Self {
        let mut m = SqMat::zero(dim);
        if !c.is_zero() {
            for r in 0..dim {
                m.rows[r].push((r as u32, c.clone()));
            }
        }
        m
    }

    /// Builds from (row, col, value) triplets; repeated positions accumulate.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, C)>) -> Self {
        let mut m = SqMat::zero(dim);
        for (r, c, v) in triplets {
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(u32, C)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&C> {
        let row = &self.rows[r];
        row.binary_search_by_key(&(c as u32), |e| e.0)
            .ok()
            .map(|i| &row[i].1)
    }

    /// Entry at (r, c), materializing zero for absent positions.
    pub fn entry(&self, r: usize, c: usize) -> C {
        self.get(r, c).cloned().unwrap_or_else(C::czero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: C) {
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => {
                if v.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = v;
                }
            }
            Err(i) => {
                if !v.is_zero() {
                    row.insert(i, (c as u32, v));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &C) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => {
                let sum = row[i].1.cadd(v);
                if sum.is_zero() {
                    row.remove(i);
                } else {
                    row[i].1 = sum;
                }
            }
            Err(i) => row.insert(i, (c as u32, v.clone())),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let mut out = self.clone();
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SqMat {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v.cneg())).collect())
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return SqMat::zero(self.dim);
        }
        let mut out = SqMat {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, v.cscale(s))).collect())
                .collect(),
        };
        for row in &mut out.rows {
            row.retain(|(_, v)| !v.is_zero());
        }
        out
    }

    /// Matrix product `self * rhs` (order matters for noncommutative entries).
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let mut out = SqMat::zero(self.dim);
        let mut scratch: Vec<Option<C>> = vec![None; self.dim];
        let mut touched: Vec<u32> = Vec::new();
        for r in 0..self.dim {
            for (k, a) in &self.rows[r] {
                for (c, b) in &rhs.rows[*k as usize] {
                    let prod = a.cmul(b);
                    if prod.is_zero() {
                        continue;
                    }
                    match &mut scratch[*c as usize] {
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*c);
                        }
                        Some(acc) => *acc = acc.cadd(&prod),
                    }
                }
            }
            touched.sort_unstable();
            let mut row = Vec::with_capacity(touched.len());
            for &c in &touched {
                if let Some(v) = scratch[c as usize].take() {
                    if !v.is_zero() {
                        row.push((c, v));
                    }
                }
            }
            touched.clear();
            out.rows[r] = row;
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = SqMat::identity(self.dim);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = SqMat::zero(self.dim);
        for (r, c, v) in self.entries() {
            out.rows[c].push((r as u32, v.clone()));
        }
        out
    }

    pub fn map_entries<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> SqMat<D> {
        let mut out = SqMat::zero(self.dim);
        for (r, c, v) in self.entries() {
            let w = f(v);
            if !w.is_zero() {
                out.rows[r].push((c as u32, w));
            }
        }
        out
    }

    /// Commutator `self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }
}

impl SqMat<Scalar> {
    pub fn matvec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = vec![Scalar::zero(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (c, a) in row {
                let x = &v[*c as usize];
                if !x.is_zero() {
                    acc = &acc + &(a * x);
                }
            }
            out[r] = acc;
        }
        out
    }

    /// Matrix-vector product where vector entries live in any coefficient
    /// ring with scalar action (operator polynomials during push-through
    /// evaluation). `zero` is the additive identity of that ring.
    pub fn matvec_in<V: PolyCoeff>(&self, v: &[V], zero: &V) -> Vec<V> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut out = vec![zero.clone(); self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: Option<V> = None;
            for (c, a) in row {
                let x = &v[*c as usize];
                if x.is_zero() {
                    continue;
                }
                let term = x.cscale(a);
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.cadd(&term),
                });
            }
            if let Some(acc) = acc {
                out[r] = acc;
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for r in 0..self.dim {
            if let Some(v) = self.get(r, r) {
                acc = &acc + v;
            }
        }
        acc
    }

    /// Reinterprets a numeric matrix over any coefficient ring via c ↦ c·1.
    pub fn lift<C: Coeff>(&self) -> SqMat<C> {
        self.map_entries(|v| C::cone().cscale(v))
    }
}

// Matrices of free-algebra elements appear as coefficients of the spectral
// polynomial in the braided Weyl algebra cross-check; they only need the
// polynomial-coefficient contract, with context-supplied dimensions.
impl<C: Coeff> PolyCoeff for SqMat<C> {
    fn is_zero(&self) -> bool {
        SqMat::is_zero(self)
    }
    fn cadd(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn cmul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn cneg(&self) -> Self {
        self.neg()
    }
    fn cscale(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(dim: usize, entries: &[(usize, usize, i64)]) -> SqMat<Scalar> {
        SqMat::from_triplets(
            dim,
            entries
                .iter()
                .map(|&(r, c, v)| (r, c, Scalar::from_int(v))),
        )
    }

    #[test]
    fn product_matches_reference() {
        let a = m(2, &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 4)]);
        let b = m(2, &[(0, 0, 5), (0, 1, 6), (1, 0, 7), (1, 1, 8)]);
        let ab = m(2, &[(0, 0, 19), (0, 1, 22), (1, 0, 43), (1, 1, 50)]);
        assert_eq!(a.mul(&b), ab);
        assert_eq!(a.mul(&SqMat::identity(2)), a);
        assert_eq!(SqMat::identity(2).mul(&a), a);
    }

    #[test]
    fn cancellation_is_not_stored() {
        let a = m(2, &[(0, 1, 5)]);
        let diff = a.sub(&a);
        assert!(diff.is_zero());
        assert_eq!(diff.nnz(), 0);
        assert_eq!(diff, SqMat::zero(2));
    }

    #[test]
    fn accumulating_triplets() {
        let a = m(2, &[(0, 0, 2), (0, 0, 3), (1, 1, -1), (1, 1, 1)]);
        assert_eq!(a.entry(0, 0), Scalar::from_int(5));
        assert_eq!(a.nnz(), 1);
    }

    #[test]
    fn matvec_agrees_with_product() {
        let a = m(3, &[(0, 1, 2), (1, 2, -3), (2, 0, 7), (2, 2, 1)]);
        let v: Vec<Scalar> = [1, 5, -2].iter().map(|&x| Scalar::from_int(x)).collect();
        let av = a.matvec(&v);
        let expect: Vec<Scalar> = [10, 6, 5].iter().map(|&x| Scalar::from_int(x)).collect();
        assert_eq!(av, expect);
        let av2 = a.matvec_in(&v, &Scalar::zero());
        assert_eq!(av2, expect);
    }

    #[test]
    fn transpose_and_trace() {
        let a = m(2, &[(0, 1, 2), (1, 0, 3), (1, 1, 4)]);
        assert_eq!(a.transpose(), m(2, &[(1, 0, 2), (0, 1, 3), (1, 1, 4)]));
        assert_eq!(a.trace(), Scalar::from_int(4));
    }
}

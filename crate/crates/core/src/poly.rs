//! Laurent polynomials with exact coefficients.
//!
//! One polynomial type serves two roles: polynomials in the spectral shift z
//! (immanant coefficients, degree ≥ 0) and truncated series in u with negative
//! exponents (Newton identities). Coefficients can themselves be operators:
//! the generic parameter only needs [`PolyCoeff`].
//!
//! Canonical form: no zero coefficients are stored, and the variable tag is
//! `None` exactly when every stored exponent is 0. Two polynomials are equal
//! iff they are structurally equal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{Coeff, PolyCoeff, Scalar};

/// Formal variable tag. `Z` is the spectral shift of immanant polynomials,
/// `U` the series variable of the Newton identities.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Var {
    Z,
    U,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: PolyCoeff> {
    var: Option<Var>,
    terms: BTreeMap<i64, C>,
}

impl<C: PolyCoeff> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            var: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    /// `c * var^k`.
    pub fn monomial(var: Var, k: i64, c: C) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(k, c);
            if k != 0 {
                p.var = Some(var);
            }
        }
        p
    }

    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Poly::zero();
        for (k, c) in terms {
            if !c.is_zero() {
                p.terms.insert(k, c);
            }
        }
        p.var = if p.terms.keys().all(|&k| k == 0) {
            None
        } else {
            Some(var)
        };
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var(&self) -> Option<Var> {
        self.var
    }

    pub fn coeff(&self, k: i64) -> Option<&C> {
        self.terms.get(&k)
    }

    /// Exponents in increasing order.
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree_max(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn degree_min(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn renormalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.keys().all(|&k| k == 0) {
            self.var = None;
        }
    }

    fn unify_var(&self, rhs: &Self) -> Result<Option<Var>> {
        match (self.var, rhs.var) {
            (None, v) | (v, None) => Ok(v),
            (Some(a), Some(b)) if a == b => Ok(Some(a)),
            _ => Err(Error::VarMismatch),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        let var = self.unify_var(rhs)?;
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            match terms.remove(&k) {
                None => {
                    terms.insert(k, c.clone());
                }
                Some(prev) => {
                    let sum = prev.cadd(c);
                    if !sum.is_zero() {
                        terms.insert(k, sum);
                    }
                }
            }
        }
        let mut p = Poly { var, terms };
        p.renormalize();
        Ok(p)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            var: self.var,
            terms: self.terms.iter().map(|(&k, c)| (k, c.cneg())).collect(),
        }
    }

    /// Product; coefficient multiplication keeps left-to-right order, so this
    /// is valid for operator coefficients.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let var = self.unify_var(rhs)?;
        let mut terms: BTreeMap<i64, C> = BTreeMap::new();
        for (&ka, a) in &self.terms {
            for (&kb, b) in &rhs.terms {
                let prod = a.cmul(b);
                if prod.is_zero() {
                    continue;
                }
                match terms.remove(&(ka + kb)) {
                    None => {
                        terms.insert(ka + kb, prod);
                    }
                    Some(prev) => {
                        let sum = prev.cadd(&prod);
                        if !sum.is_zero() {
                            terms.insert(ka + kb, sum);
                        }
                    }
                }
            }
        }
        let mut p = Poly { var, terms };
        p.renormalize();
        Ok(p)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut p = Poly {
            var: self.var,
            terms: if s.is_zero() {
                BTreeMap::new()
            } else {
                self.terms.iter().map(|(&k, c)| (k, c.cscale(s))).collect()
            },
        };
        p.renormalize();
        p
    }

    /// Substitutes `var -> factor * var`: the coefficient at exponent k picks
    /// up `factor^k`. Negative exponents require a nonzero factor.
    pub fn substitute_scaled(&self, factor: &Scalar) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let scaled = c.cscale(&factor.pow(k)?);
            if !scaled.is_zero() {
                terms.insert(k, scaled);
            }
        }
        let mut p = Poly {
            var: self.var,
            terms,
        };
        p.renormalize();
        Ok(p)
    }

    /// Evaluates at `var = x`. Negative exponents require x ≠ 0. Returns
    /// an error for the zero polynomial, whose value has no carrier to
    /// determine its shape; callers treat that case as zero themselves.
    pub fn eval(&self, x: &Scalar) -> Result<C> {
        let mut acc: Option<C> = None;
        for (&k, c) in &self.terms {
            let term = c.cscale(&x.pow(k)?);
            acc = Some(match acc {
                None => term,
                Some(prev) => prev.cadd(&term),
            });
        }
        acc.ok_or(Error::EmptyPolynomial)
    }

    /// Drops every term with exponent < `min_exp` (series truncation).
    pub fn truncate_below(&self, min_exp: i64) -> Self {
        let mut p = Poly {
            var: self.var,
            terms: self
                .terms
                .iter()
                .filter(|(&k, _)| k >= min_exp)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        };
        p.renormalize();
        p
    }

    pub fn map_coeffs<D: PolyCoeff>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D> {
        let mut p = Poly {
            var: self.var,
            terms: self.terms.iter().map(|(&k, c)| (k, f(c))).collect(),
        };
        p.renormalize();
        p
    }
}

impl<C: PolyCoeff> PolyCoeff for Poly<C> {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn cadd(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("mismatched polynomial variables")
    }
    fn cmul(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("mismatched polynomial variables")
    }
    fn cneg(&self) -> Self {
        self.neg()
    }
    fn cscale(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn czero() -> Self {
        Poly::zero()
    }
    fn cone() -> Self {
        Poly::constant(C::cone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(pairs: &[(i64, i64)]) -> Poly<Scalar> {
        Poly::from_terms(
            Var::Z,
            pairs.iter().map(|&(k, c)| (k, Scalar::from_int(c))),
        )
    }

    #[test]
    fn product_of_conjugates() {
        // (1 + z)(1 - z) = 1 - z^2
        let a = sp(&[(0, 1), (1, 1)]);
        let b = sp(&[(0, 1), (1, -1)]);
        assert_eq!(a.mul(&b).unwrap(), sp(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn laurent_exponents_add() {
        let u_inv = Poly::monomial(Var::U, -1, Scalar::one());
        let sq = u_inv.mul(&u_inv).unwrap();
        assert_eq!(sq, Poly::monomial(Var::U, -2, Scalar::one()));
    }

    #[test]
    fn mixed_variables_error() {
        let z = Poly::monomial(Var::Z, 1, Scalar::one());
        let u = Poly::monomial(Var::U, -1, Scalar::one());
        assert_eq!(z.add(&u), Err(Error::VarMismatch));
        assert_eq!(z.mul(&u), Err(Error::VarMismatch));
        // Constants are compatible with anything.
        let c = Poly::constant(Scalar::from_int(5));
        assert!(z.mul(&c).is_ok());
        assert!(u.mul(&c).is_ok());
    }

    #[test]
    fn cancellation_resets_variable_tag() {
        let z = Poly::monomial(Var::Z, 3, Scalar::one());
        let diff = z.sub(&z).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.var(), None);
        assert_eq!(diff, Poly::zero());
    }

    #[test]
    fn substitute_scaled_multiplies_by_powers() {
        // p(u) = u^-2 + 5, p(2u) = (1/4) u^-2 + 5.
        let p = Poly::from_terms(
            Var::U,
            [(-2, Scalar::one()), (0, Scalar::from_int(5))],
        );
        let q = p.substitute_scaled(&Scalar::from_int(2)).unwrap();
        assert_eq!(q.coeff(-2), Some(&Scalar::ratio(1, 4).unwrap()));
        assert_eq!(q.coeff(0), Some(&Scalar::from_int(5)));
    }

    #[test]
    fn eval_and_truncate() {
        let p = sp(&[(0, 2), (1, 3), (2, 1)]);
        // p(5) = 2 + 15 + 25 = 42.
        assert_eq!(p.eval(&Scalar::from_int(5)).unwrap(), Scalar::from_int(42));
        assert!(Poly::<Scalar>::zero().eval(&Scalar::one()).is_err());
        let series = Poly::from_terms(
            Var::U,
            [(-3, Scalar::one()), (-1, Scalar::one()), (0, Scalar::one())],
        );
        let t = series.truncate_below(-2);
        assert_eq!(t.coeff(-3), None);
        assert_eq!(t.coeff(-1), Some(&Scalar::one()));
    }

    fn arb_poly() -> impl Strategy<Value = Poly<Scalar>> {
        proptest::collection::vec((-4i64..5, -20i64..20), 0..6).prop_map(|pairs| {
            Poly::from_terms(
                Var::Z,
                pairs.into_iter().map(|(k, c)| (k, Scalar::from_int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn eval_is_a_ring_map(a in arb_poly(), b in arb_poly(), x in -6i64..6) {
            let x = Scalar::from_int(x);
            if x.is_zero() && (a.degree_min().unwrap_or(0) < 0 || b.degree_min().unwrap_or(0) < 0) {
                return Ok(());
            }
            let prod = a.mul(&b).unwrap();
            let va = a.eval(&x).unwrap_or(Scalar::zero());
            let vb = b.eval(&x).unwrap_or(Scalar::zero());
            let vp = prod.eval(&x).unwrap_or(Scalar::zero());
            prop_assert_eq!(vp, &va * &vb);
        }
    }
}

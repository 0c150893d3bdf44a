//! Braided Weyl algebra on an n × n matrix of coordinates m_ij and the
//! dual matrix of q-partials ∂_ij, with an exact degree-truncated ideal
//! membership engine and the higher quantum Capelli identities.
//!
//! Elements live in the free associative algebra over the 2n² letters;
//! the defining relations are kept as explicit free-algebra elements
//! rather than as a rewriting system.  With M = Σ e_ij m_ij,
//! 𝒟 = Σ e_ij ∂_ij and the braiding Ř on two tensor legs, the relations
//! are the matrix entries of
//!
//!   Ř M₁ Ř M₁ − M₁ Ř M₁ Ř,
//!   Ř⁻¹ 𝒟₁ Ř⁻¹ 𝒟₁ − 𝒟₁ Ř⁻¹ 𝒟₁ Ř⁻¹,
//!   𝒟₁ Ř M₁ − Ř M₁ Ř⁻¹ 𝒟₁ Ř⁻¹ − 1.
//!
//! The assignment l_ij ↦ Σ_k m_ik ∂_kj − δ_ij/(q − q⁻¹) intertwines the
//! reflection-equation algebra with this algebra.  The Capelli identity
//! states that the image of
//!
//!   (L_ō1 + q^{−2c₁}/(q − q⁻¹)) ⋯ (L_ōm + q^{−2c_m}/(q − q⁻¹)) E_U
//!
//! equals a_μ M_ō1 ⋯ M_ōm 𝒟_ōm ⋯ 𝒟_ō1 E_U modulo the relation ideal,
//! where c_k are the contents of the standard tableau U of shape μ and
//! a_μ = q^{−2 Σ c(α)}.  Its q-trace over all auxiliary legs recovers
//! the q-immanant S_μ(z) at z = (q − q⁻¹)⁻¹.
//!
//! Membership in the two-sided relation ideal is decided inside the
//! bidegree components spanned by the support of the query: the spanning
//! rows u·r·v are enumerated so that the top bidegree of the product
//! matches a target component, and a triangular echelon keyed by leading
//! words reduces queries exactly.  A returned certificate is definitive;
//! a negative answer is relative to this truncation.

use std::collections::{btree_map::Entry, BTreeMap, BTreeSet};
use std::fmt;

use crate::combinatorics::StandardTableau;
use crate::error::{Error, Result};
use crate::exact::{Coeff, PolyCoeff, QConfig, Scalar};
use crate::hecke::HeckeContext;
use crate::mat::SqMat;
use crate::poly::{Poly, Var};
use crate::tensor::{r_check, r_check_inv, TensorSpace};

/// Rows of the ideal span an `IdealBasis` will refuse to exceed unless the
/// caller raises the cap; sized so that aux size m ≤ 2 at n = 2 fits.
pub const DEFAULT_SPAN_CAP: usize = 50_000;

/// One generator letter; indices are 1-based and bounded by n.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    M(usize, usize),
    D(usize, usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::M(i, j) => write!(f, "m{}{}", i, j),
            Letter::D(i, j) => write!(f, "d{}{}", i, j),
        }
    }
}

/// A word in the free algebra, ordered by length and then lexicographically;
/// the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (number of m-letters, number of ∂-letters).
    pub fn bidegree(&self) -> (usize, usize) {
        let m = self.0.iter().filter(|l| matches!(l, Letter::M(_, _))).count();
        (m, self.0.len() - m)
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&rhs.0);
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Finitely supported Scalar combination of words; no zero coefficients
/// are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        FreeElement::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        FreeElement::from_word(Word::empty(), c)
    }

    pub fn generator(l: Letter) -> Self {
        FreeElement::from_word(Word::from_letters([l]), Scalar::one())
    }

    pub fn from_word(w: Word, c: Scalar) -> Self {
        let mut e = FreeElement::zero();
        e.insert_term(w, c);
        e
    }

    fn insert_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let s = &*slot.get() + &c;
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest word of the support in the (length, lex) order.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert_term(w.clone(), c.cneg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.cneg())).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.insert_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Bidegrees of the words in the support.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(Word::bidegree).collect()
    }

    /// Bidegree of the words of maximal length; the relation families and
    /// their monomial multiples all have a unique one.
    pub fn top_bidegree(&self) -> Option<(usize, usize)> {
        let max_len = self.terms.keys().map(Word::len).max()?;
        let mut tops = self.terms.keys().filter(|w| w.len() == max_len);
        let top = tops.next().expect("nonempty support").bidegree();
        assert!(
            tops.all(|w| w.bidegree() == top),
            "top-degree words with mixed bidegree"
        );
        Some(top)
    }

    /// Applies a letter substitution to every word.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Self {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            let word = Word::from_letters(w.letters().iter().map(|&l| f(l)));
            out.insert_term(word, c.clone());
        }
        out
    }

    /// Evaluates under a Scalar substitution of the letters; this is the
    /// algebra map onto a commutative ring, so relation elements need not
    /// vanish under it.
    pub fn eval_numeric(&self, f: &mut impl FnMut(Letter) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in &self.terms {
            let mut prod = c.clone();
            for &l in w.letters() {
                prod = &prod * &f(l);
            }
            acc = &acc + &prod;
        }
        acc
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})*{}", c, w)?;
        }
        Ok(())
    }
}

impl PolyCoeff for FreeElement {
    fn is_zero(&self) -> bool {
        FreeElement::is_zero(self)
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

impl Coeff for FreeElement {
    fn czero() -> Self {
        FreeElement::zero()
    }

    fn cone() -> Self {
        FreeElement::one()
    }
}

/// The matrix M = Σ e_ij m_ij of coordinate generators.
pub fn coordinate_matrix(n: usize) -> SqMat<FreeElement> {
    SqMat::from_triplets(
        n,
        (0..n).flat_map(|i| {
            (0..n).map(move |j| (i, j, FreeElement::generator(Letter::M(i + 1, j + 1))))
        }),
    )
}

/// The matrix 𝒟 = Σ e_ij ∂_ij of q-partial generators.
pub fn partial_matrix(n: usize) -> SqMat<FreeElement> {
    SqMat::from_triplets(
        n,
        (0..n).flat_map(|i| {
            (0..n).map(move |j| (i, j, FreeElement::generator(Letter::D(i + 1, j + 1))))
        }),
    )
}

/// The three defining families, each stored entrywise as FreeElements.
pub struct RelationSet {
    n: usize,
    mm: Vec<FreeElement>,
    dd: Vec<FreeElement>,
    cross: Vec<FreeElement>,
}

impl RelationSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries of Ř M₁ Ř M₁ − M₁ Ř M₁ Ř; homogeneous of bidegree (2, 0).
    pub fn mm(&self) -> &[FreeElement] {
        &self.mm
    }

    /// Entries of Ř⁻¹ 𝒟₁ Ř⁻¹ 𝒟₁ − 𝒟₁ Ř⁻¹ 𝒟₁ Ř⁻¹; bidegree (0, 2).
    pub fn dd(&self) -> &[FreeElement] {
        &self.dd
    }

    /// Entries of 𝒟₁ Ř M₁ − Ř M₁ Ř⁻¹ 𝒟₁ Ř⁻¹ − 1; top bidegree (1, 1)
    /// with a degree-0 tail from the constant.
    pub fn cross(&self) -> &[FreeElement] {
        &self.cross
    }

    pub fn all(&self) -> impl Iterator<Item = &FreeElement> {
        self.mm.iter().chain(self.dd.iter()).chain(self.cross.iter())
    }

    pub fn len(&self) -> usize {
        self.mm.len() + self.dd.len() + self.cross.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn braided_square(braid: &SqMat<FreeElement>, g1: &SqMat<FreeElement>) -> SqMat<FreeElement> {
    braid
        .mul(g1)
        .mul(braid)
        .mul(g1)
        .sub(&g1.mul(braid).mul(g1).mul(braid))
}

fn relation_matrices(
    n: usize,
    cfg: &QConfig,
) -> Result<(SqMat<FreeElement>, SqMat<FreeElement>, SqMat<FreeElement>)> {
    let sp = TensorSpace::new(n, 2);
    let rc: SqMat<FreeElement> = r_check(n, cfg).lift();
    let rci: SqMat<FreeElement> = r_check_inv(n, cfg).lift();
    let m1 = sp.embed(&coordinate_matrix(n), &[0])?;
    let d1 = sp.embed(&partial_matrix(n), &[0])?;
    let mm = braided_square(&rc, &m1);
    let dd = braided_square(&rci, &d1);
    let cross = d1
        .mul(&rc)
        .mul(&m1)
        .sub(&rc.mul(&m1).mul(&rci).mul(&d1).mul(&rci))
        .sub(&SqMat::identity(sp.dim()));
    Ok((mm, dd, cross))
}

fn nonzero_entries(m: &SqMat<FreeElement>) -> Vec<FreeElement> {
    m.entries().map(|(_, _, v)| v.clone()).collect()
}

/// Entrywise expansion of the three defining matrix relations; identically
/// zero entries are dropped.  n = 1 is allowed as a degenerate self-test
/// case, where only the cross relation q·∂m − q⁻¹·m∂ − 1 survives.
pub fn relation_generators(n: usize, cfg: &QConfig) -> Result<RelationSet> {
    if n == 0 {
        return Err(Error::InvalidConfig("the Weyl algebra needs n >= 1".into()));
    }
    let (mm, dd, cross) = relation_matrices(n, cfg)?;
    Ok(RelationSet {
        n,
        mm: nonzero_entries(&mm),
        dd: nonzero_entries(&dd),
        cross: nonzero_entries(&cross),
    })
}

fn words_of_bidegree(n: usize, dm: usize, dd: usize) -> Vec<Word> {
    fn go(n: usize, dm: usize, dd: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if dm == 0 && dd == 0 {
            out.push(Word::from_letters(cur.iter().copied()));
            return;
        }
        if dm > 0 {
            for i in 1..=n {
                for j in 1..=n {
                    cur.push(Letter::M(i, j));
                    go(n, dm - 1, dd, cur, out);
                    cur.pop();
                }
            }
        }
        if dd > 0 {
            for i in 1..=n {
                for j in 1..=n {
                    cur.push(Letter::D(i, j));
                    go(n, dm, dd - 1, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, dm, dd, &mut Vec::with_capacity(dm + dd), &mut out);
    out
}

fn word_count(n: usize, dm: usize, dd: usize) -> u128 {
    let mut binom: u128 = 1;
    for k in 1..=dm as u128 {
        binom = binom * (dd as u128 + k) / k;
    }
    binom * ((n * n) as u128).pow((dm + dd) as u32)
}

/// Provenance of one spanning row: left · relation · right.
#[derive(Clone, Debug)]
pub struct SpanRow {
    pub relation: usize,
    pub left: Word,
    pub right: Word,
}

/// Exact membership combination over the spanning rows of an `IdealBasis`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub combo: Vec<(usize, Scalar)>,
}

struct EchRow {
    elem: FreeElement,
    combo: Vec<(usize, Scalar)>,
}

/// Triangular echelon over the spanning set {u·r·v} whose top bidegree hits
/// one of the target components; rows are monic and keyed by leading word.
pub struct IdealBasis {
    relations: Vec<FreeElement>,
    rows: Vec<SpanRow>,
    echelon: BTreeMap<Word, EchRow>,
}

fn merge_combo(items: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in items {
        let slot = acc.entry(i).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl IdealBasis {
    pub fn new(
        set: &RelationSet,
        targets: &[(usize, usize)],
        max_rows: usize,
    ) -> Result<Self> {
        let n = set.n();
        let relations: Vec<FreeElement> = set.all().cloned().collect();
        let targets: BTreeSet<(usize, usize)> = targets.iter().copied().collect();
        let mut total: u128 = 0;
        for rel in &relations {
            let Some((ta, tb)) = rel.top_bidegree() else { continue };
            for &(a, b) in &targets {
                if ta > a || tb > b {
                    continue;
                }
                let (ra, rb) = (a - ta, b - tb);
                for a1 in 0..=ra {
                    for b1 in 0..=rb {
                        total += word_count(n, a1, b1) * word_count(n, ra - a1, rb - b1);
                    }
                }
            }
        }
        if total > max_rows as u128 {
            return Err(Error::ScaleExceeded(format!(
                "ideal span at bidegrees {:?} needs {} rows, cap is {}",
                targets, total, max_rows
            )));
        }
        let mut basis = IdealBasis {
            relations,
            rows: Vec::new(),
            echelon: BTreeMap::new(),
        };
        for ri in 0..basis.relations.len() {
            let Some((ta, tb)) = basis.relations[ri].top_bidegree() else { continue };
            for &(a, b) in &targets {
                if ta > a || tb > b {
                    continue;
                }
                let (ra, rb) = (a - ta, b - tb);
                for a1 in 0..=ra {
                    for b1 in 0..=rb {
                        for u in words_of_bidegree(n, a1, b1) {
                            for v in words_of_bidegree(n, ra - a1, rb - b1) {
                                basis.push_row(ri, u.clone(), v);
                            }
                        }
                    }
                }
            }
        }
        Ok(basis)
    }

    fn expand_row(&self, row: &SpanRow) -> FreeElement {
        FreeElement::from_word(row.left.clone(), Scalar::one())
            .mul(&self.relations[row.relation])
            .mul(&FreeElement::from_word(row.right.clone(), Scalar::one()))
    }

    fn push_row(&mut self, relation: usize, left: Word, right: Word) {
        let row = SpanRow { relation, left, right };
        let elem = self.expand_row(&row);
        let idx = self.rows.len();
        self.rows.push(row);
        let (rem, used) = self.reduce(&elem);
        if rem.is_zero() {
            return;
        }
        let (lw, lc) = {
            let (w, c) = rem.leading().expect("nonzero element");
            (w.clone(), c.clone())
        };
        let inv = lc.inv().expect("leading coefficient is nonzero");
        let monic = rem.scale(&inv);
        let mut combo = vec![(idx, inv.clone())];
        for (j, c) in used {
            combo.push((j, (&inv * &c).cneg()));
        }
        self.echelon.insert(
            lw,
            EchRow {
                elem: monic,
                combo: merge_combo(combo),
            },
        );
    }

    /// Greedy leading-word elimination; returns the remainder and the used
    /// combination, so that x = remainder + Σ c·row.
    pub fn reduce(&self, x: &FreeElement) -> (FreeElement, Vec<(usize, Scalar)>) {
        let mut cur = x.clone();
        let mut used: Vec<(usize, Scalar)> = Vec::new();
        loop {
            let Some((lw, lc)) = cur.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                break;
            };
            let Some(row) = self.echelon.get(&lw) else { break };
            cur = cur.sub(&row.elem.scale(&lc));
            for (j, c) in &row.combo {
                used.push((*j, &lc * c));
            }
        }
        (cur, merge_combo(used))
    }

    pub fn contains(&self, x: &FreeElement) -> Option<Certificate> {
        let (rem, combo) = self.reduce(x);
        rem.is_zero().then_some(Certificate { combo })
    }

    /// Recomputes Σ c · left·relation·right from row provenance; equality
    /// with the query is the soundness check for a certificate.
    pub fn expand(&self, cert: &Certificate) -> FreeElement {
        let mut acc = FreeElement::zero();
        for (i, c) in &cert.combo {
            acc = acc.add(&self.expand_row(&self.rows[*i]).scale(c));
        }
        acc
    }

    pub fn span_len(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }
}

/// Spanning set {u·r·v} whose product has the given top bidegree,
/// deduplicated.
pub fn ideal_component(
    set: &RelationSet,
    bidegree: (usize, usize),
    max_rows: usize,
) -> Result<Vec<FreeElement>> {
    let basis = IdealBasis::new(set, &[bidegree], max_rows)?;
    let mut seen: BTreeSet<Vec<(Word, Scalar)>> = BTreeSet::new();
    let mut out = Vec::new();
    for row in &basis.rows {
        let elem = basis.expand_row(row);
        if elem.is_zero() {
            continue;
        }
        let key: Vec<(Word, Scalar)> =
            elem.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        if seen.insert(key) {
            out.push(elem);
        }
    }
    Ok(out)
}

/// Balanced-closure targets for a membership query: reduction of a word of
/// bidegree (a, b) only ever creates words of bidegree (a − t, b − t).
fn membership_targets(x: &FreeElement) -> Vec<(usize, usize)> {
    let mut targets = BTreeSet::new();
    for (a, b) in x.bidegrees() {
        for t in 0..=a.min(b) {
            if (a - t, b - t) != (0, 0) {
                targets.insert((a - t, b - t));
            }
        }
    }
    targets.into_iter().collect()
}

/// Decides membership of x in the two-sided relation ideal intersected with
/// the bidegree components of its support; a certificate is returned on
/// success and re-expanded as a soundness check.
pub fn is_in_ideal(
    x: &FreeElement,
    set: &RelationSet,
    max_rows: usize,
) -> Result<Option<Certificate>> {
    let basis = IdealBasis::new(set, &membership_targets(x), max_rows)?;
    let Some(cert) = basis.contains(x) else {
        return Ok(None);
    };
    if basis.expand(&cert) != *x {
        return Err(Error::VerificationFailed(
            "membership certificate does not re-expand to the query".into(),
        ));
    }
    Ok(Some(cert))
}

struct WeylChain {
    m: usize,
    space: TensorSpace,
    l_bar: Vec<SqMat<FreeElement>>,
    m_bar: Vec<SqMat<FreeElement>>,
    d_bar: Vec<SqMat<FreeElement>>,
    e_big: SqMat<FreeElement>,
    weights: Vec<Scalar>,
    a_mu: Scalar,
    inv_omega: Scalar,
}

fn weyl_chain(n: usize, cfg: &QConfig, u: &StandardTableau) -> Result<WeylChain> {
    let m = u.size();
    if m == 0 {
        return Err(Error::InvalidShape("empty tableau".into()));
    }
    let space = TensorSpace::new(n, m);
    let inv_omega = cfg.q_minus_qinv().inv()?;
    let coords = coordinate_matrix(n);
    let partials = partial_matrix(n);
    let phi = coords.mul(&partials).sub(&SqMat::scalar_multiple_of_identity(
        n,
        FreeElement::constant(inv_omega.clone()),
    ));
    let mut l_bar = vec![space.embed(&phi, &[0])?];
    let mut m_bar = vec![space.embed(&coords, &[0])?];
    let mut d_bar = vec![space.embed(&partials, &[0])?];
    for k in 1..m {
        let next = space.bar_conjugate(l_bar.last().expect("nonempty"), k - 1, cfg)?;
        l_bar.push(next);
        let next = space.bar_conjugate(m_bar.last().expect("nonempty"), k - 1, cfg)?;
        m_bar.push(next);
        let next = space.bar_conjugate(d_bar.last().expect("nonempty"), k - 1, cfg)?;
        d_bar.push(next);
    }
    let e_big = HeckeContext::new(n, m, cfg)?.idempotent(u)?.lift();
    let weights: Vec<Scalar> = u.contents().iter().map(|c| cfg.q_power(-2 * c)).collect();
    let a_mu = cfg.q_power(-2 * u.shape().content_sum());
    Ok(WeylChain {
        m,
        space,
        l_bar,
        m_bar,
        d_bar,
        e_big,
        weights,
        a_mu,
        inv_omega,
    })
}

fn lhs_from_chain(ch: &WeylChain) -> SqMat<FreeElement> {
    let dim = ch.space.dim();
    let mut prod: SqMat<FreeElement> = SqMat::identity(dim);
    for k in 0..ch.m {
        let shift = SqMat::scalar_multiple_of_identity(
            dim,
            FreeElement::constant(&ch.weights[k] * &ch.inv_omega),
        );
        prod = prod.mul(&ch.l_bar[k].add(&shift));
    }
    prod.mul(&ch.e_big)
}

fn rhs_from_chain(ch: &WeylChain) -> SqMat<FreeElement> {
    let mut prod: SqMat<FreeElement> = SqMat::identity(ch.space.dim());
    for k in 0..ch.m {
        prod = prod.mul(&ch.m_bar[k]);
    }
    for k in (0..ch.m).rev() {
        prod = prod.mul(&ch.d_bar[k]);
    }
    prod.scale(&ch.a_mu).mul(&ch.e_big)
}

/// Image of (L_ō1 + q^{−2c₁}/(q−q⁻¹)) ⋯ (L_ōm + q^{−2c_m}/(q−q⁻¹)) E_U
/// under l_ij ↦ Σ_k m_ik ∂_kj − δ_ij/(q − q⁻¹), as a matrix over the free
/// algebra on the m-fold auxiliary space.
pub fn capelli_lhs(n: usize, cfg: &QConfig, u: &StandardTableau) -> Result<SqMat<FreeElement>> {
    Ok(lhs_from_chain(&weyl_chain(n, cfg, u)?))
}

/// The normally ordered side a_μ M_ō1 ⋯ M_ōm 𝒟_ōm ⋯ 𝒟_ō1 E_U with
/// a_μ = q^{−2 Σ c(α)}.
pub fn capelli_rhs(n: usize, cfg: &QConfig, u: &StandardTableau) -> Result<SqMat<FreeElement>> {
    Ok(rhs_from_chain(&weyl_chain(n, cfg, u)?))
}

pub fn capelli_image_entry(
    n: usize,
    cfg: &QConfig,
    u: &StandardTableau,
    row: usize,
    col: usize,
) -> Result<FreeElement> {
    Ok(capelli_lhs(n, cfg, u)?.entry(row, col))
}

/// Scale data from a Capelli verification, for reporting.
#[derive(Clone, Debug)]
pub struct CapelliReport {
    pub aux_dim: usize,
    pub entries: usize,
    pub nonzero_residuals: usize,
    pub span_rows: usize,
    pub rank: usize,
}

fn bidegree_breakdown(x: &FreeElement) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (w, _) in x.terms() {
        *out.entry(w.bidegree()).or_insert(0) += 1;
    }
    out
}

fn certify_residual(
    residual: &FreeElement,
    basis: &IdealBasis,
    what: &str,
) -> Result<()> {
    let Some(cert) = basis.contains(residual) else {
        return Err(Error::VerificationFailed(format!(
            "{} is not in the relation ideal at its bidegree truncation; support {:?}",
            what,
            bidegree_breakdown(residual)
        )));
    };
    if basis.expand(&cert) != *residual {
        return Err(Error::VerificationFailed(format!(
            "certificate for {} does not re-expand",
            what
        )));
    }
    Ok(())
}

/// Checks the Capelli identity entrywise: every auxiliary matrix entry of
/// LHS − RHS is certified a member of the relation ideal.  A single box
/// must give the literal zero residual, before any ideal reduction.
pub fn verify_capelli(
    n: usize,
    cfg: &QConfig,
    u: &StandardTableau,
    max_rows: usize,
) -> Result<CapelliReport> {
    let ch = weyl_chain(n, cfg, u)?;
    let residual = lhs_from_chain(&ch).sub(&rhs_from_chain(&ch));
    let dim = residual.dim();
    if ch.m == 1 {
        if !residual.is_zero() {
            return Err(Error::VerificationFailed(format!(
                "single-box Capelli residual has {} nonzero entries",
                residual.nnz()
            )));
        }
        return Ok(CapelliReport {
            aux_dim: dim,
            entries: dim * dim,
            nonzero_residuals: 0,
            span_rows: 0,
            rank: 0,
        });
    }
    let set = relation_generators(n, cfg)?;
    let targets: Vec<(usize, usize)> = (1..=ch.m).map(|k| (k, k)).collect();
    let basis = IdealBasis::new(&set, &targets, max_rows)?;
    let mut nonzero = 0;
    for r in 0..dim {
        for c in 0..dim {
            let x = residual.entry(r, c);
            if x.is_zero() {
                continue;
            }
            nonzero += 1;
            certify_residual(&x, &basis, &format!("residual entry ({}, {})", r, c))?;
        }
    }
    Ok(CapelliReport {
        aux_dim: dim,
        entries: dim * dim,
        nonzero_residuals: nonzero,
        span_rows: basis.span_len(),
        rank: basis.rank(),
    })
}

/// Checks the q-traced Capelli identity: the q-trace over all auxiliary
/// legs of LHS − RHS lies in the relation ideal, and the z-polynomial
/// q-immanant image evaluated at z = (q − q⁻¹)⁻¹ reproduces the traced LHS.
pub fn verify_traced_capelli(
    n: usize,
    cfg: &QConfig,
    u: &StandardTableau,
    max_rows: usize,
) -> Result<CapelliReport> {
    let ch = weyl_chain(n, cfg, u)?;
    let all_legs: Vec<usize> = (0..ch.m).collect();
    let lhs_tr = ch.space.q_partial_trace(&lhs_from_chain(&ch), &all_legs, cfg)?;
    let rhs_tr = ch.space.q_partial_trace(&rhs_from_chain(&ch), &all_legs, cfg)?;

    let dim = ch.space.dim();
    let mut poly: Poly<SqMat<FreeElement>> = Poly::constant(SqMat::identity(dim));
    for k in 0..ch.m {
        let factor = Poly::from_terms(
            Var::Z,
            [
                (0, ch.l_bar[k].clone()),
                (
                    1,
                    SqMat::scalar_multiple_of_identity(
                        dim,
                        FreeElement::constant(ch.weights[k].clone()),
                    ),
                ),
            ],
        );
        poly = poly.mul(&factor)?;
    }
    poly = poly.mul(&Poly::constant(ch.e_big.clone()))?;
    let mut traced_terms = Vec::new();
    for (e, c) in poly.terms() {
        traced_terms.push((e, ch.space.q_partial_trace(c, &all_legs, cfg)?));
    }
    let traced_poly = Poly::from_terms(Var::Z, traced_terms);
    if traced_poly.eval(&ch.inv_omega)? != lhs_tr {
        return Err(Error::VerificationFailed(
            "q-immanant polynomial at z = (q - q^{-1})^{-1} does not match the traced product"
                .into(),
        ));
    }

    let residual = lhs_tr.sub(&rhs_tr).entry(0, 0);
    if ch.m == 1 {
        if !residual.is_zero() {
            return Err(Error::VerificationFailed(
                "single-box traced Capelli residual is nonzero".into(),
            ));
        }
        return Ok(CapelliReport {
            aux_dim: 1,
            entries: 1,
            nonzero_residuals: 0,
            span_rows: 0,
            rank: 0,
        });
    }
    let set = relation_generators(n, cfg)?;
    let targets: Vec<(usize, usize)> = (1..=ch.m).map(|k| (k, k)).collect();
    let basis = IdealBasis::new(&set, &targets, max_rows)?;
    let nonzero = usize::from(!residual.is_zero());
    if nonzero == 1 {
        certify_residual(&residual, &basis, "traced residual")?;
    }
    Ok(CapelliReport {
        aux_dim: 1,
        entries: 1,
        nonzero_residuals: nonzero,
        span_rows: basis.span_len(),
        rank: basis.rank(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{standard_tableaux, Shape};

    fn cfg() -> QConfig {
        QConfig::default_q()
    }

    fn word(letters: impl IntoIterator<Item = Letter>) -> Word {
        Word::from_letters(letters)
    }

    #[test]
    fn word_order_is_by_length_then_lexicographic() {
        let m11 = Letter::M(1, 1);
        let d11 = Letter::D(1, 1);
        assert!(word([]) < word([m11]));
        assert!(word([d11]) < word([m11, m11]));
        assert!(word([m11, d11]) < word([d11, m11]));
        assert!(word([m11, m11]) < word([m11, d11]));
    }

    #[test]
    fn free_elements_multiply_by_word_concatenation() {
        let m = FreeElement::generator(Letter::M(1, 2));
        let d = FreeElement::generator(Letter::D(2, 1));
        let prod = m.mul(&d);
        assert_eq!(prod.num_terms(), 1);
        assert_eq!(
            prod.coeff(&word([Letter::M(1, 2), Letter::D(2, 1)])),
            Scalar::one()
        );
        let sum = m.add(&d);
        assert_eq!(sum.mul(&sum).num_terms(), 4);
        assert!(m.sub(&m).is_zero());
        assert_eq!(m.mul(&d).bidegrees().into_iter().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn rank_one_cross_relation_is_the_q_weyl_rule() {
        let cfg = cfg();
        let set = relation_generators(1, &cfg).unwrap();
        assert!(set.mm().is_empty());
        assert!(set.dd().is_empty());
        assert_eq!(set.cross().len(), 1);
        let rel = &set.cross()[0];
        assert_eq!(rel.num_terms(), 3);
        assert_eq!(
            rel.coeff(&word([Letter::D(1, 1), Letter::M(1, 1)])),
            cfg.q().clone()
        );
        assert_eq!(
            rel.coeff(&word([Letter::M(1, 1), Letter::D(1, 1)])),
            cfg.q_power(-1).cneg()
        );
        assert_eq!(rel.coeff(&Word::empty()), Scalar::one().cneg());
    }

    #[test]
    fn relation_families_have_the_expected_bidegrees() {
        let set = relation_generators(2, &cfg()).unwrap();
        assert!(!set.mm().is_empty() && set.mm().len() <= 16);
        assert_eq!(set.mm().len(), set.dd().len());
        for rel in set.mm() {
            assert_eq!(rel.bidegrees().into_iter().collect::<Vec<_>>(), vec![(2, 0)]);
        }
        for rel in set.dd() {
            assert_eq!(rel.bidegrees().into_iter().collect::<Vec<_>>(), vec![(0, 2)]);
        }
        for rel in set.cross() {
            assert_eq!(rel.top_bidegree(), Some((1, 1)));
            assert!(rel
                .bidegrees()
                .iter()
                .all(|&b| b == (1, 1) || b == (0, 0)));
        }
    }

    #[test]
    fn exchanging_coordinates_and_partials_swaps_the_families() {
        let cfg = cfg();
        let n = 2;
        let sp = TensorSpace::new(n, 2);
        let rc: SqMat<FreeElement> = r_check(n, &cfg).lift();
        let rci: SqMat<FreeElement> = r_check_inv(n, &cfg).lift();
        let m1 = sp.embed(&coordinate_matrix(n), &[0]).unwrap();
        let d1 = sp.embed(&partial_matrix(n), &[0]).unwrap();
        let swap = |l: Letter| match l {
            Letter::M(i, j) => Letter::D(i, j),
            Letter::D(i, j) => Letter::M(i, j),
        };
        let swapped = braided_square(&rci, &m1).map_entries(|e| e.map_letters(swap));
        assert_eq!(swapped, braided_square(&rci, &d1));
        let swapped_back = braided_square(&rc, &d1).map_entries(|e| e.map_letters(swap));
        assert_eq!(swapped_back, braided_square(&rc, &m1));
    }

    #[test]
    fn numeric_substitution_matches_the_matrix_expansion() {
        let cfg = cfg();
        let n = 2;
        let a = SqMat::from_triplets(
            n,
            [
                (0, 0, Scalar::from_int(1)),
                (0, 1, Scalar::from_int(2)),
                (1, 0, Scalar::from_int(3)),
                (1, 1, Scalar::from_int(5)),
            ],
        );
        let b = SqMat::from_triplets(
            n,
            [
                (0, 0, Scalar::from_int(7)),
                (0, 1, Scalar::from_int(1)),
                (1, 0, Scalar::from_int(2)),
                (1, 1, Scalar::from_int(4)),
            ],
        );
        let mut subst = |l: Letter| match l {
            Letter::M(i, j) => a.entry(i - 1, j - 1),
            Letter::D(i, j) => b.entry(i - 1, j - 1),
        };
        let (mm, dd, cross) = relation_matrices(n, &cfg).unwrap();
        let sp = TensorSpace::new(n, 2);
        let rc = r_check(n, &cfg);
        let rci = r_check_inv(n, &cfg);
        let a1 = sp.embed(&a, &[0]).unwrap();
        let b1 = sp.embed(&b, &[0]).unwrap();
        let mm_num = rc
            .mul(&a1)
            .mul(&rc)
            .mul(&a1)
            .sub(&a1.mul(&rc).mul(&a1).mul(&rc));
        let dd_num = rci
            .mul(&b1)
            .mul(&rci)
            .mul(&b1)
            .sub(&b1.mul(&rci).mul(&b1).mul(&rci));
        let cross_num = b1
            .mul(&rc)
            .mul(&a1)
            .sub(&rc.mul(&a1).mul(&rci).mul(&b1).mul(&rci))
            .sub(&SqMat::identity(sp.dim()));
        for (free, num) in [(&mm, &mm_num), (&dd, &dd_num), (&cross, &cross_num)] {
            assert!(!num.is_zero(), "generic numeric matrices satisfy a relation");
            for r in 0..sp.dim() {
                for c in 0..sp.dim() {
                    assert_eq!(free.entry(r, c).eval_numeric(&mut subst), num.entry(r, c));
                }
            }
        }
    }

    #[test]
    fn ideal_component_at_the_relation_bidegrees() {
        let set = relation_generators(2, &cfg()).unwrap();
        let mm = ideal_component(&set, (2, 0), DEFAULT_SPAN_CAP).unwrap();
        assert_eq!(mm, set.mm().to_vec());
        let cross = ideal_component(&set, (1, 1), DEFAULT_SPAN_CAP).unwrap();
        assert_eq!(cross, set.cross().to_vec());
        assert!(matches!(
            ideal_component(&set, (2, 2), 10),
            Err(Error::ScaleExceeded(_))
        ));
    }

    #[test]
    fn relations_and_their_monomial_multiples_are_in_the_ideal() {
        let cfg = cfg();
        let set = relation_generators(2, &cfg).unwrap();
        for rel in set.all() {
            assert!(is_in_ideal(rel, &set, DEFAULT_SPAN_CAP).unwrap().is_some());
        }
        let lefts = [Letter::M(1, 1), Letter::D(2, 2)];
        let rights = [Letter::M(2, 1), Letter::D(1, 2)];
        for rel in [&set.mm()[0], &set.cross()[0]] {
            for l in lefts {
                for r in rights {
                    let x = FreeElement::generator(l)
                        .mul(rel)
                        .mul(&FreeElement::generator(r));
                    assert!(
                        is_in_ideal(&x, &set, DEFAULT_SPAN_CAP).unwrap().is_some(),
                        "{}*rel*{} not recognized",
                        l,
                        r
                    );
                }
            }
        }
    }

    #[test]
    fn single_words_are_not_in_the_ideal() {
        let cfg = cfg();
        for q in [cfg.clone(), QConfig::parse("5/7").unwrap()] {
            let set = relation_generators(2, &q).unwrap();
            let x = FreeElement::from_word(
                word([Letter::M(1, 1), Letter::D(1, 1)]),
                Scalar::one(),
            );
            assert!(is_in_ideal(&x, &set, DEFAULT_SPAN_CAP).unwrap().is_none());
            assert!(is_in_ideal(&FreeElement::one(), &set, DEFAULT_SPAN_CAP)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn single_box_capelli_image_is_exactly_normally_ordered() {
        let cfg = cfg();
        let u = &standard_tableaux(&Shape::new(vec![1]).unwrap())[0];
        let report = verify_capelli(2, &cfg, u, DEFAULT_SPAN_CAP).unwrap();
        assert_eq!(report.nonzero_residuals, 0);
        let md = coordinate_matrix(2).mul(&partial_matrix(2));
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    capelli_image_entry(2, &cfg, u, i, j).unwrap(),
                    md.entry(i, j)
                );
            }
        }
    }

    #[test]
    fn two_box_capelli_identities_hold() {
        let cfg = cfg();
        for parts in [vec![2], vec![1, 1]] {
            let shape = Shape::new(parts).unwrap();
            let u = &standard_tableaux(&shape)[0];
            let report = verify_capelli(2, &cfg, u, DEFAULT_SPAN_CAP).unwrap();
            assert_eq!(report.aux_dim, 4);
            assert!(report.nonzero_residuals > 0, "two-box residual acts trivially");
            assert!(report.rank > 0);
        }
    }

    #[test]
    fn traced_capelli_matches_the_immanant_evaluation() {
        let cfg = cfg();
        for parts in [vec![1], vec![2], vec![1, 1]] {
            let shape = Shape::new(parts).unwrap();
            let u = &standard_tableaux(&shape)[0];
            verify_traced_capelli(2, &cfg, u, DEFAULT_SPAN_CAP).unwrap();
        }
    }

    #[test]
    fn span_caps_are_enforced() {
        let cfg = cfg();
        let u = &standard_tableaux(&Shape::new(vec![2]).unwrap())[0];
        assert!(matches!(
            verify_capelli(2, &cfg, u, 10),
            Err(Error::ScaleExceeded(_))
        ));
    }
}

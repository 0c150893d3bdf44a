//! Exact linear algebra: rank, nullspace, solving, inversion.
//!
//! Rows are cleared to integers, then eliminated fraction-free in the Bareiss
//! style: each update is (p·row - r_c·pivot_row) / prev_pivot with an exact
//! integer division, so intermediate entries stay minor-sized instead of
//! suffering rational blowup. Pivot choice within a column: largest numerator
//! bit length, ties broken by lowest row index; this fixes elimination order
//! and keeps every derived basis deterministic.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::mat::SqMat;

/// Rectangular sparse matrix over scalars, the input shape for elimination.
/// Rows are sorted by column; zero entries are not stored.
#[derive(Clone, Debug)]
pub struct RectMat {
    cols: usize,
    rows: Vec<Vec<(u32, Scalar)>>,
}

impl RectMat {
    pub fn new(cols: usize) -> Self {
        RectMat { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends one row given as (column, value) pairs in any order;
    /// duplicate columns accumulate.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) {
        let mut row: Vec<(u32, Scalar)> = Vec::new();
        for (c, v) in entries {
            assert!(c < self.cols, "column index out of range");
            if v.is_zero() {
                continue;
            }
            match row.binary_search_by_key(&(c as u32), |e| e.0) {
                Ok(i) => {
                    let sum = &row[i].1 + &v;
                    if sum.is_zero() {
                        row.remove(i);
                    } else {
                        row[i].1 = sum;
                    }
                }
                Err(i) => row.insert(i, (c as u32, v)),
            }
        }
        self.rows.push(row);
    }

    pub fn from_sq(m: &SqMat<Scalar>) -> Self {
        let mut out = RectMat::new(m.dim());
        out.stack_sq(m);
        out
    }

    /// Appends every row of a square matrix (used for stacking operator
    /// conditions on a common column space).
    pub fn stack_sq(&mut self, m: &SqMat<Scalar>) {
        assert_eq!(m.dim(), self.cols, "stacked matrix has wrong width");
        for r in 0..m.dim() {
            self.rows.push(m.row(r).to_vec());
        }
    }
}

type IntRow = Vec<(u32, BigInt)>;

/// Clears denominators of a scalar row (columns already sorted), returning an
/// integer row spanning the same line.
fn clear_row(row: &[(u32, Scalar)]) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, v) in row {
        lcm = lcm.lcm(v.denom());
    }
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect()
}

fn int_row_get(row: &IntRow, col: u32) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// (p·row - rc·pivot) / prev, entrywise, with exact integer division.
fn bareiss_combine(p: &BigInt, row: &IntRow, rc: &BigInt, pivot: &IntRow, prev: &BigInt) -> IntRow {
    let mut out = IntRow::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    loop {
        let next = match (row.get(i), pivot.get(j)) {
            (None, None) => break,
            (Some(&(c, ref a)), None) => {
                i += 1;
                (c, p * a)
            }
            (None, Some(&(c, ref b))) => {
                j += 1;
                (c, -(rc * b))
            }
            (Some(&(ca, ref a)), Some(&(cb, ref b))) => {
                if ca < cb {
                    i += 1;
                    (ca, p * a)
                } else if cb < ca {
                    j += 1;
                    (cb, -(rc * b))
                } else {
                    i += 1;
                    j += 1;
                    (ca, p * a - rc * b)
                }
            }
        };
        let (c, v) = next;
        if v.is_zero() {
            continue;
        }
        let (q, rem) = v.div_rem(prev);
        debug_assert!(rem.is_zero(), "fraction-free division must be exact");
        out.push((c, q));
    }
    out
}

struct Echelon {
    main_cols: usize,
    /// (pivot column, row) pairs in ascending pivot-column order. Augmented
    /// columns (index >= main_cols) never hold pivots.
    rows: Vec<(u32, IntRow)>,
}

fn echelonize(mut active: Vec<IntRow>, main_cols: usize) -> Echelon {
    let mut done: Vec<(u32, IntRow)> = Vec::new();
    let mut prev = BigInt::one();
    for col in 0..main_cols as u32 {
        // Rows keep their relative order throughout, so "first row with the
        // largest bit length" is the lowest-index tie break.
        let mut pivot_idx: Option<(usize, u64)> = None;
        for (idx, row) in active.iter().enumerate() {
            if let Some(v) = int_row_get(row, col) {
                let bits = v.abs().bits();
                let better = match pivot_idx {
                    None => true,
                    Some((_, best)) => bits > best,
                };
                if better {
                    pivot_idx = Some((idx, bits));
                }
            }
        }
        let Some((idx, _)) = pivot_idx else { continue };
        let pivot = active.remove(idx);
        let p = int_row_get(&pivot, col).expect("pivot entry exists").clone();
        for row in &mut active {
            let rc = int_row_get(row, col).cloned().unwrap_or_else(BigInt::zero);
            *row = bareiss_combine(&p, row, &rc, &pivot, &prev);
        }
        active.retain(|r| !r.is_empty());
        prev = p;
        done.push((col, pivot));
        if active.is_empty() {
            break;
        }
    }
    done.sort_by_key(|(c, _)| *c);
    Echelon { main_cols, rows: done }
}

impl Echelon {
    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_cols(&self) -> Vec<u32> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Solves the homogeneous-or-augmented system bottom-up. `free_values`
    /// assigns every non-pivot main column; `aug_col` optionally names one
    /// augmented column whose entries act as the right-hand side.
    fn back_substitute(&self, free_values: &[(u32, Scalar)], aug_col: Option<u32>) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); self.main_cols];
        for (c, v) in free_values {
            x[*c as usize] = v.clone();
        }
        for (pc, row) in self.rows.iter().rev() {
            let mut acc = Scalar::zero();
            let mut pivot_val = None;
            for (c, a) in row {
                if c == pc {
                    pivot_val = Some(a);
                } else if (*c as usize) < self.main_cols {
                    let xv = &x[*c as usize];
                    if !xv.is_zero() {
                        acc = &acc + &(&int_to_scalar(a) * xv);
                    }
                } else if Some(*c) == aug_col {
                    // Row reads sum(main) = aug, so the rhs enters negated
                    // when moved to the accumulator side.
                    acc = &acc - &int_to_scalar(a);
                }
            }
            let p = int_to_scalar(pivot_val.expect("echelon row has pivot entry"));
            x[*pc as usize] = &(-&acc) / &p;
        }
        x
    }

}

fn int_to_scalar(v: &BigInt) -> Scalar {
    Scalar::new(v.clone(), BigInt::one()).expect("unit denominator")
}

pub fn rank(m: &RectMat) -> usize {
    let rows: Vec<IntRow> = m.rows.iter().map(|r| clear_row(r)).collect();
    echelonize(rows, m.cols).rank()
}

/// Deterministic basis of the right kernel {x : Mx = 0}. One basis vector per
/// free column, in ascending column order, with that free coordinate set to 1.
pub fn nullspace(m: &RectMat) -> Vec<Vec<Scalar>> {
    let rows: Vec<IntRow> = m.rows.iter().map(|r| clear_row(r)).collect();
    let ech = echelonize(rows, m.cols);
    let pivots = ech.pivot_cols();
    let mut basis = Vec::new();
    for free in 0..m.cols as u32 {
        if pivots.binary_search(&free).is_ok() {
            continue;
        }
        basis.push(ech.back_substitute(&[(free, Scalar::one())], None));
    }
    basis
}

/// One exact solution of Mx = b (free coordinates set to 0), or None if the
/// system is inconsistent.
pub fn solve(m: &RectMat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.n_rows(), "right-hand side length mismatch");
    let aug = m.cols as u32;
    let rows: Vec<IntRow> = m
        .rows
        .iter()
        .zip(b)
        .map(|(row, bv)| {
            let mut r = row.clone();
            if !bv.is_zero() {
                r.push((aug, bv.clone()));
            }
            clear_row(&r)
        })
        .collect();
    let ech = echelonize(rows, m.cols);
    // Rows that are zero on main columns but nonzero in the augmented one
    // acquire no pivot, so inconsistency is caught by the residual check.
    let x = ech.back_substitute(&[], Some(aug));
    for (row, bv) in m.rows.iter().zip(b) {
        let mut acc = Scalar::zero();
        for (c, a) in row {
            acc = &acc + &(a * &x[*c as usize]);
        }
        if &acc != bv {
            return None;
        }
    }
    Some(x)
}

/// Exact inverse; `Error::Singular` when the matrix has deficient rank.
pub fn inverse(m: &SqMat<Scalar>) -> Result<SqMat<Scalar>> {
    let d = m.dim();
    let rows: Vec<IntRow> = (0..d)
        .map(|r| {
            let mut row: Vec<(u32, Scalar)> = m.row(r).to_vec();
            row.push(((d + r) as u32, Scalar::one()));
            clear_row(&row)
        })
        .collect();
    let ech = echelonize(rows, d);
    if ech.rank() != d {
        return Err(Error::Singular);
    }
    let mut out = SqMat::zero(d);
    for j in 0..d {
        let col = ech.back_substitute(&[], Some((d + j) as u32));
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rm(cols: usize, rows: &[&[i64]]) -> RectMat {
        let mut m = RectMat::new(cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, Scalar::from_int(v))),
            );
        }
        m
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&rm(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&rm(2, &[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&rm(2, &[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&rm(3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let basis = nullspace(&rm(2, &[&[1, 2], &[2, 4]]));
        assert_eq!(basis.len(), 1);
        // Free column 1 set to 1 forces x0 = -2.
        assert_eq!(basis[0], vec![Scalar::from_int(-2), Scalar::one()]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = rm(2, &[&[1, 1], &[1, -1]]);
        let b = vec![Scalar::from_int(4), Scalar::from_int(2)];
        assert_eq!(
            solve(&m, &b),
            Some(vec![Scalar::from_int(3), Scalar::from_int(1)])
        );
        let sing = rm(2, &[&[1, 2], &[2, 4]]);
        let bad = vec![Scalar::from_int(1), Scalar::from_int(3)];
        assert_eq!(solve(&sing, &bad), None);
    }

    #[test]
    fn inverse_of_two_by_two() {
        let a = SqMat::from_triplets(
            2,
            [
                (0, 0, Scalar::from_int(1)),
                (0, 1, Scalar::from_int(2)),
                (1, 0, Scalar::from_int(3)),
                (1, 1, Scalar::from_int(4)),
            ],
        );
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), SqMat::identity(2));
        assert_eq!(inv.mul(&a), SqMat::identity(2));
        assert_eq!(inv.entry(1, 0), Scalar::ratio(3, 2).unwrap());

        let sing = SqMat::from_triplets(
            2,
            [
                (0, 0, Scalar::from_int(1)),
                (0, 1, Scalar::from_int(2)),
                (1, 0, Scalar::from_int(2)),
                (1, 1, Scalar::from_int(4)),
            ],
        );
        assert_eq!(inverse(&sing), Err(Error::Singular));
    }

    fn arb_mat(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(
            proptest::collection::vec(-6i64..7, dim),
            dim,
        )
    }

    proptest! {
        #[test]
        fn rank_plus_nullity_is_width(rows in arb_mat(4)) {
            let m = rm(4, &rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let r = rank(&m);
            let ns = nullspace(&m);
            prop_assert_eq!(r + ns.len(), 4);
            for v in &ns {
                for row in &rows {
                    let mut acc = Scalar::zero();
                    for (c, a) in row.iter().enumerate() {
                        acc = &acc + &(&Scalar::from_int(*a) * &v[c]);
                    }
                    prop_assert!(acc.is_zero());
                }
            }
        }

        #[test]
        fn inverse_round_trip(rows in arb_mat(3)) {
            let a = SqMat::from_triplets(
                3,
                rows.iter().enumerate().flat_map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(move |(c, &v)| (r, c, Scalar::from_int(v)))
                        .collect::<Vec<_>>()
                }),
            );
            match inverse(&a) {
                Ok(inv) => {
                    prop_assert_eq!(a.mul(&inv), SqMat::identity(3));
                    prop_assert_eq!(inv.mul(&a), SqMat::identity(3));
                }
                Err(_) => {
                    prop_assert!(rank(&RectMat::from_sq(&a)) < 3);
                }
            }
        }
    }
}

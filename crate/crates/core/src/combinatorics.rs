//! Partitions, standard and semistandard Young tableaux, cell contents, and
//! the factorial Schur polynomial
//!
//!   s_μ(x₁..x_n | a) = Σ_T ∏_{α∈μ} (x_{T(α)} + a_{T(α)+c(α)}),
//!
//! summed over semistandard tableaux T of shape μ with entries in 1..n, where
//! c(α) = col - row is the content of a cell (0-based). The shifted index
//! T(α)+c(α) ranges over 1..n+μ₁-1. With a ≡ 0 this is the ordinary Schur
//! polynomial. The SSYT sum is the independent oracle for operator
//! eigenvalues computed elsewhere; it is deliberately direct and unoptimized.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Coeff;

/// Integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "parts must be weakly decreasing, got {:?}",
                parts
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Shape(parts))
    }

    pub fn empty() -> Self {
        Shape(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Part i (0-based), zero beyond the last row; this is the gl_n padding.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Cells in row-major order, 0-based (row, col).
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Σ over cells of (col - row).
    pub fn content_sum(&self) -> i64 {
        self.cells().map(|(r, c)| c as i64 - r as i64).sum()
    }

    pub fn conjugate(&self) -> Shape {
        let cols = self.part(0);
        Shape((0..cols).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Cells whose addition keeps the diagram a partition, top row first.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..=self.rows() {
            let len = self.part(r);
            if r == 0 || self.part(r - 1) > len {
                out.push((r, len));
            }
        }
        out
    }

    /// Corner cells whose removal keeps the diagram a partition.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows() {
            if self.part(r) > self.part(r + 1) {
                out.push((r, self.0[r] - 1));
            }
        }
        out
    }

    fn remove(&self, cell: (usize, usize)) -> Shape {
        let mut parts = self.0.clone();
        parts[cell.0] -= 1;
        Shape::new(parts).expect("removing a corner keeps a partition")
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

/// All partitions of m, first part descending: (m), (m-1,1), ..., (1^m).
pub fn partitions(m: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if remaining == 0 {
            out.push(Shape(current.clone()));
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            current.push(p);
            go(remaining - p, p, current, out);
            current.pop();
        }
    }
    go(m, m, &mut current, &mut out);
    out
}

/// Partitions of m with at most `max_rows` rows.
pub fn partitions_max_rows(m: usize, max_rows: usize) -> Vec<Shape> {
    partitions(m).into_iter().filter(|s| s.rows() <= max_rows).collect()
}

/// Standard Young tableau: entries 1..m fill the shape, increasing along rows
/// and down columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Shape,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn entry(&self, r: usize, c: usize) -> usize {
        self.rows[r][c]
    }

    /// 0-based (row, col) of the cell holding k.
    pub fn cell_of(&self, k: usize) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&e| e == k) {
                return (r, c);
            }
        }
        panic!("entry {} not present", k);
    }

    /// Content c_k = col - row of the cell holding k, for k = 1..m.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                out[e - 1] = c as i64 - r as i64;
            }
        }
        out
    }

    /// Shape after restricting to entries 1..k.
    pub fn shape_at(&self, k: usize) -> Shape {
        Shape::new(
            self.rows
                .iter()
                .map(|row| row.iter().filter(|&&e| e <= k).count())
                .collect(),
        )
        .expect("restriction of a standard tableau is a partition")
    }

    /// Concatenated rows, the sort key for tableau lists.
    pub fn row_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", words.join("|"))
    }
}

/// All standard tableaux of a shape, sorted by row-reading word. The first
/// element fills rows consecutively: 1..μ₁ in row one, and so on.
pub fn standard_tableaux(shape: &Shape) -> Vec<StandardTableau> {
    fn go(shape: &Shape) -> Vec<Vec<Vec<usize>>> {
        let m = shape.size();
        if m == 0 {
            return vec![vec![Vec::new(); 0]];
        }
        let mut out = Vec::new();
        for corner in shape.removable_cells() {
            for mut smaller in go(&shape.remove(corner)) {
                while smaller.len() <= corner.0 {
                    smaller.push(Vec::new());
                }
                smaller[corner.0].push(m);
                out.push(smaller);
            }
        }
        out
    }
    let mut tableaux: Vec<StandardTableau> = go(shape)
        .into_iter()
        .map(|rows| StandardTableau { shape: shape.clone(), rows })
        .collect();
    tableaux.sort_by_key(|t| t.row_word());
    tableaux
}

/// Number of standard tableaux by the hook length formula, an independent
/// check on the recursive generator.
pub fn hook_length_count(shape: &Shape) -> usize {
    let conj = shape.conjugate();
    let mut numer: u128 = 1;
    for k in 1..=shape.size() {
        numer *= k as u128;
    }
    let mut denom: u128 = 1;
    for (r, c) in shape.cells() {
        let hook = (shape.part(r) - c) + (conj.part(c) - r) - 1;
        denom *= hook as u128;
    }
    (numer / denom) as usize
}

/// Semistandard tableaux of the shape with entries 1..n: rows weakly
/// increase, columns strictly increase. Row-major filling order.
pub fn ssyt(shape: &Shape, n: usize) -> Vec<Vec<Vec<usize>>> {
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    fn go(
        cells: &[(usize, usize)],
        pos: usize,
        n: usize,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(&(r, c)) = cells.get(pos) else {
            out.push(rows.clone());
            return;
        };
        let min_row = if c > 0 { rows[r][c - 1] } else { 1 };
        let min_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for e in min_row.max(min_col)..=n {
            rows[r][c] = e;
            go(cells, pos + 1, n, rows, out);
        }
        rows[r][c] = 0;
    }
    go(&cells, 0, n, &mut rows, &mut out);
    out
}

pub fn ssyt_count(shape: &Shape, n: usize) -> usize {
    ssyt(shape, n).len()
}

/// Factorial Schur polynomial as the SSYT sum above. `x` has length n; `a`
/// must cover indices 1..n+μ₁-1 (a[k-1] holds a_k). Zero when μ has more
/// than n rows.
pub fn factorial_schur<C: Coeff>(shape: &Shape, x: &[C], a: &[C]) -> C {
    let n = x.len();
    if shape.rows() > 0 {
        assert!(
            a.len() + 1 >= n + shape.part(0),
            "shift sequence too short: need {} entries",
            n + shape.part(0) - 1
        );
    }
    let mut total = C::czero();
    for t in ssyt(shape, n) {
        let mut term = C::cone();
        for (r, c) in shape.cells() {
            let e = t[r][c];
            let shifted = (e as i64 + c as i64 - r as i64 - 1) as usize;
            term = term.cmul(&x[e - 1].cadd(&a[shifted]));
        }
        total = total.cadd(&term);
    }
    total
}

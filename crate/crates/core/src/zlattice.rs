//! Exact integer lattice algebra.
//!
//! Matrices carry arbitrary-precision entries. Relation matrices follow one
//! convention throughout the crate: rows index generators and every column is
//! one relation, so the presented group is `Z^rows / column span`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// Entry count does not match `rows * cols`, or rows of unequal length.
    Shape {
        rows: usize,
        cols: usize,
        len: usize,
    },
    /// Torsion coefficients must be at least 2 and form a divisibility chain.
    NotInvariantFactors,
    /// A group string could not be parsed.
    Parse(String),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Shape { rows, cols, len } => {
                write!(f, "matrix of shape {rows}x{cols} cannot hold {len} entries")
            }
            LatticeError::NotInvariantFactors => {
                f.write_str("torsion coefficients must be >= 2 and each must divide the next")
            }
            LatticeError::Parse(s) => write!(f, "cannot parse abelian group from {s:?}"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    ///
    /// An empty row list gives the 0x0 matrix; use [`IntMatrix::zeros`] for
    /// other empty shapes.
    pub fn from_rows<R, T>(rows: impl IntoIterator<Item = R>) -> Result<Self, LatticeError>
    where
        R: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries = Vec::new();
        let mut nrows = 0;
        let mut ncols = None;
        for row in rows {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let len = entries.len() - before;
            match ncols {
                None => ncols = Some(len),
                Some(c) if c != len => {
                    return Err(LatticeError::Shape {
                        rows: nrows + 1,
                        cols: c,
                        len: entries.len(),
                    })
                }
                _ => {}
            }
            nrows += 1;
        }
        IntMatrix::new(nrows, ncols.unwrap_or(0), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Appends a column (a new relation). Panics if the length is not `rows`.
    pub fn push_column(&mut self, column: &[BigInt]) {
        assert_eq!(
            column.len(),
            self.rows,
            "column length must equal row count"
        );
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, c) in column.iter().enumerate() {
            entries.extend_from_slice(self.row(i));
            entries.push(c.clone());
        }
        self.entries = entries;
        self.cols += 1;
    }

    /// Appends zero rows (new generators with no relations yet).
    pub fn push_zero_rows(&mut self, count: usize) {
        self.entries
            .extend(core::iter::repeat_with(BigInt::zero).take(count * self.cols));
        self.rows += count;
    }

    /// Determinant by fraction-free (Bareiss) elimination. `None` if not square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Some(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(sign * &a[n - 1][n - 1])
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..self.rows {
                for j in col + 1..self.cols {
                    let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                    a[i][j] = v / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let v = &self.entries[src * self.cols + j] * factor;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + src] * factor;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = -core::mem::take(e);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

/// `u * m * v == s` with `u`, `v` unimodular and `s` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal of `s`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }
}

fn min_nonzero(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows {
        for j in t..s.cols {
            let e = &s[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with unimodular transforms.
///
/// Diagonal entries are nonnegative and each divides the next; the sign is
/// absorbed into `u`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        let Some((pi, pj)) = min_nonzero(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..s.rows {
                while !s[(i, t)].is_zero() {
                    let q = -(&s[(i, t)] / &s[(t, t)]);
                    s.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !s[(i, t)].is_zero() {
                        s.swap_rows(i, t);
                        u.swap_rows(i, t);
                    }
                }
            }
            for j in t + 1..s.cols {
                while !s[(t, j)].is_zero() {
                    let q = -(&s[(t, j)] / &s[(t, t)]);
                    s.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(j, t);
                        v.swap_cols(j, t);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block, otherwise pull the
            // offending row in and keep reducing.
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..s.rows)
                .find(|&i| (t + 1..s.cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

/// `Z^rows / (column span of m)`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    let rank = m.rows - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroup { rank, torsion }
}

/// Rank of the integer kernel of `m` acting on column vectors.
pub fn kernel_rank(m: &IntMatrix) -> usize {
    m.cols - m.rank()
}

/// Finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_k` with
/// `t_i | t_{i+1}` and every `t_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, LatticeError> {
        let two = BigInt::from(2);
        let ok = torsion.iter().all(|t| *t >= two)
            && torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !ok {
            return Err(LatticeError::NotInvariantFactors);
        }
        Ok(AbelianGroup { rank, torsion })
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning `Z`) into
    /// invariant-factor form.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let mut m = IntMatrix::zeros(orders.len(), orders.len());
        for (i, o) in orders.iter().enumerate() {
            m[(i, i)] = o.clone();
        }
        cokernel(&m)
    }

    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        AbelianGroup::from_cyclic_orders(&[order.into()])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders: Vec<BigInt> = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut g = AbelianGroup::from_cyclic_orders(&orders);
        g.rank += self.rank + other.rank;
        g
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                f.write_str(" + ")
            }
        };
        match self.rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for t in &self.torsion {
            sep(f)?;
            write!(f, "Z/{t}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = LatticeError;

    /// Parses the format produced by `Display`: `0`, `Z`, `Z^3`, `Z/4`,
    /// `Z^2 + Z/2 + Z/6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LatticeError::Parse(s.into());
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let mut rank = 0usize;
        let mut torsion = Vec::new();
        for term in s.split('+').map(str::trim) {
            if term == "Z" {
                rank += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| err())?;
            } else if let Some(t) = term.strip_prefix("Z/") {
                torsion.push(t.parse::<BigInt>().map_err(|_| err())?);
            } else {
                return Err(err());
            }
        }
        let mut g = AbelianGroup::new(0, torsion).map_err(|_| err())?;
        g.rank = rank;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_smith(m: &IntMatrix) -> SmithForm {
        let snf = smith_normal_form(m);
        assert_eq!(&(&snf.u * m) * &snf.v, snf.s);
        assert!(snf.u.determinant().unwrap().abs().is_one());
        assert!(snf.v.determinant().unwrap().abs().is_one());
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                if i != j {
                    assert!(snf.s[(i, j)].is_zero());
                }
            }
        }
        let d = snf.diagonal();
        assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        snf
    }

    #[test]
    fn one_by_one() {
        let snf = check_smith(&mat(&[&[-7]]));
        assert_eq!(snf.diagonal(), ints(&[7]));
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let snf = check_smith(&z);
        assert_eq!(snf.s, z);
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries 2, |det| = 8
        let snf = check_smith(&mat(&[&[2, 4], &[6, 8]]));
        assert_eq!(snf.diagonal(), ints(&[2, 4]));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not in Smith form
        let snf = check_smith(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.diagonal(), ints(&[1, 6]));
    }

    #[test]
    fn empty_shapes() {
        check_smith(&IntMatrix::zeros(0, 3));
        check_smith(&IntMatrix::zeros(3, 0));
        assert_eq!(cokernel(&IntMatrix::zeros(3, 0)), AbelianGroup::free(3));
        assert_eq!(cokernel(&IntMatrix::zeros(0, 2)), AbelianGroup::trivial());
    }

    #[test]
    fn cokernel_examples() {
        for d in 2..6 {
            assert_eq!(cokernel(&mat(&[&[d]])), AbelianGroup::cyclic(d));
        }
        // a + b = 0, a - b = 0
        assert_eq!(
            cokernel(&mat(&[&[1, 1], &[1, -1]])),
            AbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn kernel_rank_examples() {
        assert_eq!(kernel_rank(&IntMatrix::identity(3)), 0);
        assert_eq!(kernel_rank(&IntMatrix::zeros(2, 3)), 3);
        assert_eq!(kernel_rank(&mat(&[&[1, 1, 0], &[0, 1, 1]])), 1);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            mat(&[&[2, 4], &[6, 8]]).determinant(),
            Some(BigInt::from(-8))
        );
        assert_eq!(
            mat(&[&[0, 1], &[1, 0]]).determinant(),
            Some(BigInt::from(-1))
        );
        assert_eq!(
            mat(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]).determinant(),
            Some(BigInt::from(-3))
        );
        assert_eq!(IntMatrix::zeros(2, 3).determinant(), None);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: [&[i64]; 2] = [&[1, 2], &[3]];
        assert!(IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).is_err());
    }

    #[test]
    fn group_display_and_parse() {
        let cases = [
            (AbelianGroup::trivial(), "0"),
            (AbelianGroup::free(1), "Z"),
            (AbelianGroup::free(3), "Z^3"),
            (AbelianGroup::cyclic(4), "Z/4"),
            (
                AbelianGroup::from_cyclic_orders(&ints(&[0, 0, 4, 6])),
                "Z^2 + Z/2 + Z/12",
            ),
        ];
        for (g, s) in cases {
            assert_eq!(g.to_string(), s);
            assert_eq!(s.parse::<AbelianGroup>().unwrap(), g);
        }
        assert!("Z/3 + Z/2".parse::<AbelianGroup>().is_err());
        assert!("Q".parse::<AbelianGroup>().is_err());
        assert!("Z/1".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn group_order_and_sum() {
        let g = AbelianGroup::cyclic(2).direct_sum(&AbelianGroup::cyclic(3));
        assert_eq!(g, AbelianGroup::cyclic(6));
        assert_eq!(g.order(), Some(BigInt::from(6)));
        assert_eq!(AbelianGroup::free(1).order(), None);
        assert_eq!(AbelianGroup::trivial().order(), Some(BigInt::one()));
        assert!(AbelianGroup::new(0, ints(&[2, 3])).is_err());
    }

    #[test]
    fn cokernel_ignores_zero_columns_and_permutations() {
        let m = mat(&[&[2, 1, 0], &[4, 3, 5]]);
        let g = cokernel(&m);
        let mut wider = m.clone();
        wider.push_column(&ints(&[0, 0]));
        assert_eq!(cokernel(&wider), g);
        let swapped = mat(&[&[4, 3, 5], &[2, 1, 0]]);
        assert_eq!(cokernel(&swapped), g);
        assert_eq!(g.to_string(), "0");
        assert_eq!(cokernel(&m.transpose()).to_string(), "Z");
    }
}

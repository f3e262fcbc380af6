//! Dense matrices over `Q(i)`.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! Gaussian integers after clearing denominators row by row. Reduced forms are
//! finished over `Q(i)` from that echelon, which is already triangular, so the
//! rational phase only does back-substitution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{GaussianInt, GaussianRational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

/// Reduced row echelon form and its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

struct Echelon {
    rows: Vec<Vec<GaussianInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free elimination. Every division is exact in `Z[i]`.
fn bareiss(mut a: Vec<Vec<GaussianInt>>, cols: usize) -> Echelon {
    let nrows = a.len();
    let mut prev = GaussianInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = GaussianInt::default();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: a,
        pivots,
        swaps,
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dim(
                "ExactMatrix::new",
                rows * cols,
                entries.len(),
            ));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussianRational,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Rows must all have the same length. An empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dim("ExactMatrix::from_rows", cols, bad.len()));
        }
        let nrows = rows.len();
        Ok(ExactMatrix {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for tests and examples: Gaussian integer entries `(re, im)`.
    pub fn from_gaussian_ints(rows: &[&[(i64, i64)]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(a, b)| GaussianRational::gaussian_integer(a, b))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("ragged literal matrix")
    }

    pub fn from_columns(columns: &[Vec<GaussianRational>]) -> Result<Self> {
        Ok(Self::from_rows(columns.to_vec())?.transpose())
    }

    pub fn column_vector(v: &[GaussianRational]) -> Self {
        ExactMatrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn diagonal(d: &[GaussianRational]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "matmul",
                format!("{} rows on the right", self.cols),
                rhs.rows,
            ));
        }
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..rhs.cols {
                let mut acc = GaussianRational::zero();
                for (k, a) in row.iter().enumerate() {
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.push(acc);
            }
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: out,
        })
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(factors: &[&ExactMatrix]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::InvalidRequest("empty matrix product".into()))?;
        rest.iter()
            .try_fold((*first).clone(), |acc, m| acc.matmul(m))
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        op: &'static str,
        f: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    ) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::dim(
                op,
                format!("{:?}", self.shape()),
                format!("{:?}", rhs.shape()),
            ));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &ExactMatrix) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &ExactMatrix) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        self.map(|x| x * k)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    pub fn map(&self, f: impl Fn(&GaussianRational) -> GaussianRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.rows != rhs.rows {
            return Err(Error::dim("hstack", self.rows, rhs.rows));
        }
        Ok(Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Rows of `self` on top of rows of `rhs`.
    pub fn vstack(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.cols != rhs.cols {
            return Err(Error::dim("vstack", self.cols, rhs.cols));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        Ok(ExactMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Clears denominators row by row. Row scaling changes neither rank nor
    /// row space; the determinant picks up the returned multipliers.
    fn integral_rows(&self) -> (Vec<Vec<GaussianInt>>, Vec<BigInt>) {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
                let ints = row.iter().map(|x| x.to_gaussian_int(&lcm)).collect();
                (ints, lcm)
            })
            .unzip()
    }

    fn echelon(&self) -> Echelon {
        let (rows, _) = self.integral_rows();
        bareiss(rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn determinant(&self) -> Result<GaussianRational> {
        if !self.is_square() {
            return Err(Error::dim("determinant", "square matrix", format!("{:?}", self.shape())));
        }
        if self.rows == 0 {
            return Ok(GaussianRational::one());
        }
        let (rows, multipliers) = self.integral_rows();
        let ech = bareiss(rows, self.cols);
        if ech.pivots.len() < self.rows {
            return Ok(GaussianRational::zero());
        }
        let mut det = ech.rows[self.rows - 1][self.cols - 1].to_rational();
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        let scale = multipliers.into_iter().fold(BigInt::one(), |a, b| a * b);
        Ok(&det / &GaussianRational::from(num_rational::BigRational::from_integer(scale)))
    }

    /// Reduced row echelon form (pivots normalized to one).
    pub fn rref(&self) -> Rref {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let mut rows: Vec<Vec<GaussianRational>> = ech
            .rows
            .iter()
            .map(|r| r.iter().map(GaussianInt::to_rational).collect())
            .collect();
        for k in (0..rank).rev() {
            let pc = ech.pivots[k];
            let inv = rows[k][pc].inv().expect("pivot is nonzero");
            for x in rows[k].iter_mut().skip(pc) {
                *x *= &inv;
            }
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let factor = row[pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(pivot_row).skip(pc) {
                    *x -= &(&factor * p);
                }
            }
        }
        Rref {
            matrix: ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                entries: rows.into_iter().flatten().collect(),
            },
            pivots: ech.pivots,
        }
    }

    /// Columns spanning the null space, in free-variable form.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = ExactMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.entries[f * free.len() + k] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                out.entries[pc * free.len() + k] = -r.get(row, f);
            }
        }
        out
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// One solution `x` of `self · x = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        let aug = self.hstack(rhs)?;
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = ExactMatrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.entries[pc * rhs.cols + j] = r.get(row, self.cols + j).clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::dim("inverse", "square matrix", format!("{:?}", self.shape())));
        }
        if self.rank() < self.rows {
            return Err(Error::Singular);
        }
        self.solve(&ExactMatrix::identity(self.rows))?
            .ok_or(Error::Singular)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().neg()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

/// JSON array of row arrays of scalar strings.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        let rows = raw
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| {
                        s.parse::<GaussianRational>()
                            .map_err(|e| D::Error::custom(format!("entry ({i},{j}): {e}")))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ExactMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[(i64, i64)]]) -> ExactMatrix {
        ExactMatrix::from_gaussian_ints(rows)
    }

    #[test]
    fn identity_times_m() {
        let a = m(&[&[(1, 2), (0, -1)], &[(3, 0), (4, 4)]]);
        assert_eq!(ExactMatrix::identity(2).matmul(&a).unwrap(), a);
    }

    #[test]
    fn j_squared_is_minus_identity() {
        let j = m(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]);
        assert_eq!(j.matmul(&j).unwrap(), ExactMatrix::identity(2).neg());
    }

    #[test]
    fn matmul_shape_error() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::Dimension { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(m(&[&[(1, 0)], &[(0, 1)]]).rank(), 1);
        // second row is i times the first
        assert_eq!(m(&[&[(1, 0), (0, 1)], &[(0, 1), (-1, 0)]]).rank(), 1);
        assert_eq!(ExactMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[(2, 0), (1, 1)], &[(0, -1), (3, 0)]]);
        // 2*3 - (1+i)(-i) = 6 - (-i + 1) = 5 + i
        assert_eq!(a.determinant().unwrap(), GaussianRational::gaussian_integer(5, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), ExactMatrix::identity(2));
        let singular = m(&[&[(1, 0), (0, 1)], &[(0, 1), (-1, 0)]]);
        assert_eq!(singular.inverse(), Err(Error::Singular));
        assert!(singular.determinant().unwrap().is_zero());
    }

    #[test]
    fn determinant_with_fractions_and_swaps() {
        let half = GaussianRational::from_parts(1, 2, 0, 1);
        let a = ExactMatrix::from_rows(vec![
            vec![GaussianRational::zero(), half.clone()],
            vec![GaussianRational::from_integer(3), GaussianRational::i()],
        ])
        .unwrap();
        // 0*i - (1/2)(3) = -3/2
        assert_eq!(a.determinant().unwrap(), GaussianRational::from_parts(-3, 2, 0, 1));
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[(1, 0), (0, 1)], &[(0, 1), (-1, 0)]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.matmul(&k).unwrap().is_zero());
        // free-variable form: (-i, 1)
        assert_eq!(k, m(&[&[(0, -1)], &[(1, 0)]]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[(1, 0), (1, 0)], &[(2, 0), (2, 0)]]);
        let b = m(&[&[(3, 0)], &[(6, 0)]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.matmul(&x).unwrap(), b);
        let c = m(&[&[(3, 0)], &[(7, 0)]]);
        assert!(a.solve(&c).unwrap().is_none());
    }

    #[test]
    fn json_text_form() {
        let a = m(&[&[(1, 0), (0, 1)], &[(0, 0), (-2, 3)]]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"[["1","1*i"],["0","-2+3*i"]]"#);
        let back: ExactMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<ExactMatrix>(r#"[["1"],["1","2"]]"#).is_err());
        let err = serde_json::from_str::<ExactMatrix>(r#"[["1","x"]]"#).unwrap_err();
        assert!(err.to_string().contains("entry (0,1)"));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
            proptest::collection::vec((-3i64..=3, -3i64..=3, 1i64..=3), rows * cols).prop_map(
                move |v| {
                    let entries = v
                        .into_iter()
                        .map(|(a, b, d)| GaussianRational::from_parts(a, d, b, d))
                        .collect();
                    ExactMatrix::new(rows, cols, entries).unwrap()
                },
            )
        }

        proptest! {
            #[test]
            fn associativity(a in matrix(3, 3), b in matrix(3, 3), c in matrix(3, 3)) {
                let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
                let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn transpose_laws(a in matrix(2, 3), b in matrix(3, 4)) {
                prop_assert_eq!(a.transpose().transpose(), a.clone());
                let ab_t = a.matmul(&b).unwrap().transpose();
                prop_assert_eq!(ab_t, b.transpose().matmul(&a.transpose()).unwrap());
            }

            #[test]
            fn rank_nullity(a in matrix(3, 5)) {
                let k = a.kernel_basis();
                prop_assert_eq!(a.rank() + k.cols(), 5);
                prop_assert!(a.matmul(&k).unwrap().is_zero());
                prop_assert_eq!(k.rank(), k.cols());
            }

            #[test]
            fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
                let ab = a.matmul(&b).unwrap();
                prop_assert_eq!(
                    ab.determinant().unwrap(),
                    a.determinant().unwrap() * b.determinant().unwrap()
                );
            }

            #[test]
            fn rref_row_space_matches(a in matrix(3, 4)) {
                let r = a.rref();
                prop_assert_eq!(r.pivots.len(), a.rank());
                // stacking the original rows onto the reduced rows adds no rank
                let stacked = r.matrix.vstack(&a).unwrap();
                prop_assert_eq!(stacked.rank(), a.rank());
            }
        }
    }
}

//! Linear subspaces of `Q(i)^n` in canonical form.
//!
//! The basis is stored as an `n × k` matrix whose transpose is in reduced row
//! echelon form, so two values compare equal exactly when they span the same
//! set of vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

#[derive(Deserialize)]
struct RawSubspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSubspace::deserialize(d)?;
        if raw.basis.rows() != raw.ambient_dim {
            return Err(D::Error::custom(format!(
                "basis has {} rows but ambient_dim is {}",
                raw.basis.rows(),
                raw.ambient_dim
            )));
        }
        Ok(Subspace::column_space(&raw.basis))
    }
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn column_space(m: &ExactMatrix) -> Subspace {
        let n = m.rows();
        let r = m.transpose().rref();
        let k = r.pivots.len();
        let rows: Vec<usize> = (0..k).collect();
        Subspace {
            ambient_dim: n,
            basis: r.matrix.select_rows(&rows).transpose(),
        }
    }

    pub fn kernel(m: &ExactMatrix) -> Subspace {
        Subspace::column_space(&m.kernel_basis())
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            ambient_dim: n,
            basis: ExactMatrix::zeros(n, 0),
        }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace {
            ambient_dim: n,
            basis: ExactMatrix::identity(n),
        }
    }

    /// Span of the given standard basis vectors (0-based indices).
    pub fn coordinate(n: usize, indices: &[usize]) -> Subspace {
        let m = ExactMatrix::identity(n).select_columns(indices);
        Subspace::column_space(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one vector per column.
    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace, op: &'static str) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dim(op, self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[GaussianRational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::dim("contains_vector", self.ambient_dim, v.len()));
        }
        let stacked = self.basis.hstack(&ExactMatrix::column_vector(v))?;
        Ok(stacked.rank() == self.dim())
    }

    /// Whether every column of `m` lies in `self`.
    pub fn contains_columns(&self, m: &ExactMatrix) -> Result<bool> {
        if m.rows() != self.ambient_dim {
            return Err(Error::dim("contains_columns", self.ambient_dim, m.rows()));
        }
        Ok(self.basis.hstack(m)?.rank() == self.dim())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other, "subspace_contains")?;
        self.contains_columns(&other.basis)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "subspace_sum")?;
        Ok(Subspace::column_space(&self.basis.hstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "subspace_intersect")?;
        // x = Bu·y = Bv·z  <=>  (y, z) in ker [Bu | -Bv]
        let joint = self.basis.hstack(&other.basis.neg())?;
        let k = joint.kernel_basis();
        let top: Vec<usize> = (0..self.dim()).collect();
        let coords = k.select_rows(&top);
        Ok(Subspace::column_space(&self.basis.matmul(&coords)?))
    }

    /// Rows spanning the linear functionals that vanish on `self`;
    /// an `(n - k) × n` matrix `L` with `ker L = self`.
    pub fn annihilator(&self) -> ExactMatrix {
        let n = self.ambient_dim;
        let k = self.basis.transpose().kernel_basis();
        if k.cols() == 0 {
            return ExactMatrix::zeros(0, n);
        }
        k.transpose()
    }

    /// Image under a square matrix.
    pub fn image_under(&self, g: &ExactMatrix) -> Result<Subspace> {
        Ok(Subspace::column_space(&g.matmul(&self.basis)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[(i64, i64)]]) -> ExactMatrix {
        ExactMatrix::from_gaussian_ints(rows)
    }

    #[test]
    fn zero_matrix_spans_zero_subspace() {
        let s = Subspace::column_space(&ExactMatrix::zeros(4, 2));
        assert_eq!(s, Subspace::zero(4));
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn hyperbolic_columns_canonical_basis() {
        // columns e1 + i e2 and e3 + i e4
        let a = m(&[&[(1, 0), (0, 0)], &[(0, 1), (0, 0)], &[(0, 0), (1, 0)], &[(0, 0), (0, 1)]]);
        let s = Subspace::column_space(&a);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &a);
        // shuffling and mixing the columns lands on the same value
        let mixed = m(&[&[(1, 0), (2, 0)], &[(0, 1), (0, 2)], &[(3, 0), (0, 0)], &[(0, 3), (0, 0)]]);
        assert_eq!(Subspace::column_space(&mixed), s);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Subspace::kernel(&ExactMatrix::identity(3)), Subspace::zero(3));
        let row = m(&[&[(1, 0), (0, 0)]]);
        assert_eq!(Subspace::kernel(&row), Subspace::coordinate(2, &[1]));
        let rank_one = m(&[&[(1, 0), (0, 1)], &[(0, 1), (-1, 0)]]);
        let k = Subspace::kernel(&rank_one);
        assert_eq!(k.dim(), 1);
        assert!(rank_one.matmul(k.basis()).unwrap().is_zero());
        let expected = Subspace::column_space(&m(&[&[(1, 0)], &[(0, 1)]]));
        assert_eq!(k, expected);
    }

    #[test]
    fn lattice_examples() {
        let e1 = Subspace::coordinate(2, &[0]);
        let e2 = Subspace::coordinate(2, &[1]);
        assert_eq!(e1.sum(&Subspace::zero(2)).unwrap(), e1);
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(2));
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
        assert!(Subspace::full(2).contains(&e1).unwrap());
        assert!(!e1.contains(&e2).unwrap());
        assert!(e1.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn annihilator_cuts_out_subspace() {
        let s = Subspace::coordinate(4, &[0, 2]);
        let l = s.annihilator();
        assert_eq!(l.shape(), (2, 4));
        assert_eq!(Subspace::kernel(&l), s);
        assert_eq!(Subspace::full(3).annihilator().shape(), (0, 3));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = Subspace::coordinate(3, &[1]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"ambient_dim":3,"basis":[["0"],["1"],["0"]]}"#);
        assert_eq!(serde_json::from_str::<Subspace>(&text).unwrap(), s);
        let z = serde_json::to_string(&Subspace::zero(2)).unwrap();
        assert_eq!(serde_json::from_str::<Subspace>(&z).unwrap(), Subspace::zero(2));
        assert!(serde_json::from_str::<Subspace>(r#"{"ambient_dim":2,"basis":[["1"]]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
            // small entries with many zeros so that degenerate spans show up
            proptest::collection::vec((-1i64..=1, -1i64..=1), rows * cols).prop_map(move |v| {
                let entries = v
                    .into_iter()
                    .map(|(a, b)| GaussianRational::gaussian_integer(a, b))
                    .collect();
                ExactMatrix::new(rows, cols, entries).unwrap()
            })
        }

        proptest! {
            #[test]
            fn image_plus_kernel(a in matrix(3, 4)) {
                prop_assert_eq!(
                    Subspace::column_space(&a).dim() + Subspace::kernel(&a).dim(),
                    a.cols()
                );
            }

            #[test]
            fn canonical_under_column_operations(a in matrix(4, 3), h in matrix(3, 3)) {
                prop_assume!(h.rank() == 3);
                let ah = a.matmul(&h).unwrap();
                prop_assert_eq!(Subspace::column_space(&ah), Subspace::column_space(&a));
            }

            #[test]
            fn dimension_formula(a in matrix(4, 2), b in matrix(4, 2)) {
                let u = Subspace::column_space(&a);
                let v = Subspace::column_space(&b);
                let s = u.sum(&v).unwrap();
                let i = u.intersect(&v).unwrap();
                prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
                prop_assert!(s.contains(&u).unwrap() && s.contains(&v).unwrap());
                prop_assert!(u.contains(&i).unwrap() && v.contains(&i).unwrap());
            }

            #[test]
            fn modular_law(a in matrix(4, 2), b in matrix(4, 1), c in matrix(4, 2)) {
                // if A ⊆ C then A + (B ∩ C) = (A + B) ∩ C
                let a = Subspace::column_space(&a);
                let c = Subspace::column_space(&c).sum(&a).unwrap();
                let b = Subspace::column_space(&b);
                let left = a.sum(&b.intersect(&c).unwrap()).unwrap();
                let right = a.sum(&b).unwrap().intersect(&c).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}

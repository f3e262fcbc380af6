//! Nondegenerate bilinear forms, their isometry groups and Lie algebras.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::random::{random_scalar, MAX_ATTEMPTS};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Symplectic,
}

impl FormKind {
    pub fn opposite(self) -> FormKind {
        match self {
            FormKind::Symmetric => FormKind::Symplectic,
            FormKind::Symplectic => FormKind::Symmetric,
        }
    }
}

/// Requested determinant of a sampled isometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetSign {
    Plus,
    Minus,
    Any,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm")]
pub struct BilinearForm {
    kind: FormKind,
    gram: ExactMatrix,
}

#[derive(Deserialize)]
struct RawForm {
    kind: FormKind,
    gram: ExactMatrix,
}

impl TryFrom<RawForm> for BilinearForm {
    type Error = Error;
    fn try_from(raw: RawForm) -> Result<Self> {
        BilinearForm::new(raw.kind, raw.gram)
    }
}

impl BilinearForm {
    pub fn new(kind: FormKind, gram: ExactMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidForm(format!("gram is {:?}", gram.shape())));
        }
        let n = gram.rows();
        match kind {
            FormKind::Symmetric if !gram.is_symmetric() => {
                return Err(Error::InvalidForm("gram is not symmetric".into()))
            }
            FormKind::Symplectic if n % 2 == 1 => return Err(Error::OddSymplectic(n)),
            FormKind::Symplectic if !gram.is_antisymmetric() => {
                return Err(Error::InvalidForm("gram is not antisymmetric".into()))
            }
            _ => {}
        }
        if gram.rank() < n {
            return Err(Error::InvalidForm("gram is degenerate".into()));
        }
        Ok(BilinearForm { kind, gram })
    }

    /// Identity Gram for the symmetric kind; `[[0, I], [-I, 0]]` for the
    /// symplectic kind.
    pub fn standard(kind: FormKind, n: usize) -> Result<Self> {
        let gram = match kind {
            FormKind::Symmetric => ExactMatrix::identity(n),
            FormKind::Symplectic => {
                if n % 2 == 1 {
                    return Err(Error::OddSymplectic(n));
                }
                let p = n / 2;
                ExactMatrix::from_fn(n, n, |i, j| {
                    if i < p && j == i + p {
                        GaussianRational::one()
                    } else if i >= p && j + p == i {
                        GaussianRational::from_integer(-1)
                    } else {
                        GaussianRational::zero()
                    }
                })
            }
        };
        Ok(BilinearForm { kind, gram })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
}

/// A vector space `Q(i)^dim` carrying a nondegenerate form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormedSpace {
    form: BilinearForm,
}

impl From<BilinearForm> for FormedSpace {
    fn from(form: BilinearForm) -> Self {
        FormedSpace { form }
    }
}

impl FormedSpace {
    pub fn standard(kind: FormKind, n: usize) -> Result<Self> {
        Ok(BilinearForm::standard(kind, n)?.into())
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn kind(&self) -> FormKind {
        self.form.kind
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.form.gram
    }

    fn check_square(&self, m: &ExactMatrix, op: &'static str) -> Result<()> {
        let n = self.dim();
        if m.shape() != (n, n) {
            return Err(Error::dim(op, format!("({n}, {n})"), format!("{:?}", m.shape())));
        }
        Ok(())
    }

    /// `uᵗ · gram · v`.
    pub fn eval(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Result<GaussianRational> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::dim("form_eval", n, format!("{} and {}", u.len(), v.len())));
        }
        let gv = self.gram().matmul(&ExactMatrix::column_vector(v))?;
        Ok(u.iter().zip(gv.entries()).map(|(a, b)| a * b).sum())
    }

    /// `aᵗ · gram · b`, the matrix of pairings between two families of vectors.
    pub fn pairing(&self, a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
        ExactMatrix::product(&[&a.transpose(), self.gram(), b])
    }

    pub fn is_isometry(&self, g: &ExactMatrix) -> Result<bool> {
        self.check_square(g, "is_isometry")?;
        Ok(self.pairing(g, g)? == *self.gram())
    }

    /// `xᵗ · gram + gram · x = 0`.
    pub fn in_lie_algebra(&self, x: &ExactMatrix) -> Result<bool> {
        self.check_square(x, "in_lie_algebra")?;
        let lhs = x.transpose().matmul(self.gram())?;
        let rhs = self.gram().matmul(x)?;
        Ok(lhs.add(&rhs)?.is_zero())
    }

    /// `gram⁻¹ · S` with `S` antisymmetric (symmetric kind) or symmetric
    /// (symplectic kind), entries from the small sampling box.
    #[allow(clippy::needless_range_loop)]
    pub fn random_lie_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ExactMatrix> {
        let n = self.dim();
        let mut s = ExactMatrix::zeros(n, n).to_rows();
        for i in 0..n {
            for j in i..n {
                let x = random_scalar(rng);
                match self.kind() {
                    FormKind::Symmetric => {
                        if i != j {
                            s[j][i] = -&x;
                            s[i][j] = x;
                        }
                    }
                    FormKind::Symplectic => {
                        s[j][i] = x.clone();
                        s[i][j] = x;
                    }
                }
            }
        }
        let s = ExactMatrix::from_rows(s)?;
        self.gram().inverse()?.matmul(&s)
    }

    /// `(I - x)(I + x)⁻¹`; fails with [`Error::Singular`] when `I + x` is.
    pub fn cayley(x: &ExactMatrix) -> Result<ExactMatrix> {
        let id = ExactMatrix::identity(x.rows());
        let plus = id.add(x)?.inverse()?;
        id.sub(x)?.matmul(&plus)
    }

    /// Reflection along an anisotropic vector of a symmetric form:
    /// `x ↦ x - 2 (v, x)/(v, v) v`.
    pub fn reflection(&self, v: &[GaussianRational]) -> Result<ExactMatrix> {
        if self.kind() != FormKind::Symmetric {
            return Err(Error::InvalidRequest("reflections need a symmetric form".into()));
        }
        let q = self.eval(v, v)?;
        let Some(q_inv) = q.inv() else {
            return Err(Error::InvalidRequest("reflection along an isotropic vector".into()));
        };
        let col = ExactMatrix::column_vector(v);
        let gv = self.gram().matmul(&col)?;
        let outer = col.matmul(&gv.transpose())?;
        let k = &GaussianRational::from_integer(2) * &q_inv;
        ExactMatrix::identity(self.dim()).sub(&outer.scale(&k))
    }

    /// The fixed determinant −1 isometry: `diag(1, …, 1, −1)` for the identity
    /// Gram, otherwise the reflection along the first anisotropic vector among
    /// `e_k` and `e_j + e_k`.
    pub fn flip_reflection(&self) -> Result<ExactMatrix> {
        if self.kind() != FormKind::Symmetric {
            return Err(Error::InvalidRequest(
                "symplectic isometries all have determinant 1".into(),
            ));
        }
        let n = self.dim();
        if *self.gram() == ExactMatrix::identity(n) {
            let mut d = vec![GaussianRational::one(); n];
            d[n - 1] = GaussianRational::from_integer(-1);
            return Ok(ExactMatrix::diagonal(&d));
        }
        let unit = |k: usize| -> Vec<GaussianRational> {
            (0..n)
                .map(|i| if i == k { GaussianRational::one() } else { GaussianRational::zero() })
                .collect()
        };
        let mut candidates: Vec<Vec<GaussianRational>> = (0..n).map(unit).collect();
        for j in 0..n {
            for k in j + 1..n {
                candidates.push(unit(j).iter().zip(unit(k)).map(|(a, b)| a + b).collect());
            }
        }
        for v in candidates {
            if !self.eval(&v, &v)?.is_zero() {
                return self.reflection(&v);
            }
        }
        Err(Error::InvalidForm("no anisotropic coordinate vector".into()))
    }

    /// Cayley transform of a random Lie algebra element, resampled while
    /// `I + X` is singular, then composed with [`Self::flip_reflection`] when
    /// the requested sign calls for it.
    pub fn sample_isometry<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        sign: DetSign,
    ) -> Result<ExactMatrix> {
        let flip = match (self.kind(), sign) {
            (FormKind::Symplectic, DetSign::Minus) => {
                return Err(Error::InvalidRequest(
                    "symplectic isometries all have determinant 1".into(),
                ))
            }
            (FormKind::Symplectic, _) | (_, DetSign::Plus) => false,
            (FormKind::Symmetric, DetSign::Minus) => true,
            (FormKind::Symmetric, DetSign::Any) => rng.gen_bool(0.5),
        };
        for _ in 0..MAX_ATTEMPTS {
            let x = self.random_lie_element(rng)?;
            match Self::cayley(&x) {
                Ok(g) if flip => return self.flip_reflection()?.matmul(&g),
                Ok(g) => return Ok(g),
                Err(Error::Singular) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::SamplingExhausted(MAX_ATTEMPTS))
    }

    /// Same dimension, opposite kind, standard Gram.
    pub fn opposite_standard(kind: FormKind, m: usize) -> Result<Self> {
        Self::standard(kind.opposite(), m)
    }

    /// A change of basis `Q` with `Qᵗ · gram · Q` equal to the standard Gram of
    /// the same kind, by symplectic or orthogonal Gram–Schmidt.
    ///
    /// Always succeeds for symplectic forms. A symmetric form is standardizable
    /// over `Q(i)` only when suitable square roots exist; the search tries
    /// coordinate vectors and the combinations `x ± y`, `x + i y`, and reports
    /// [`Error::InvalidRequest`] when none of them has a square-norm in `Q(i)`.
    pub fn standardizing_basis(&self) -> Result<ExactMatrix> {
        let n = self.dim();
        let mut rest: Vec<Vec<GaussianRational>> = ExactMatrix::identity(n).to_rows();
        let q = self;
        let q_basis = match self.kind() {
            FormKind::Symplectic => {
                let (mut es, mut fs) = (Vec::new(), Vec::new());
                while !rest.is_empty() {
                    let e = rest.remove(0);
                    let mut partner = None;
                    for (k, y) in rest.iter().enumerate() {
                        let w = q.eval(&e, y)?;
                        if let Some(w_inv) = w.inv() {
                            partner = Some((k, w_inv));
                            break;
                        }
                    }
                    let (k, w_inv) = partner.ok_or_else(|| Error::InvalidForm("degenerate form".into()))?;
                    let f: Vec<GaussianRational> = rest.remove(k).iter().map(|a| a * &w_inv).collect();
                    // y ↦ y - ω(y, f) e + ω(y, e) f
                    let wf: Vec<GaussianRational> = rest.iter().map(|y| q.eval(y, &f)).collect::<Result<_>>()?;
                    let we: Vec<GaussianRational> = rest.iter().map(|y| q.eval(y, &e)).collect::<Result<_>>()?;
                    for ((y, a), b) in rest.iter_mut().zip(&wf).zip(&we) {
                        for ((yi, ei), fi) in y.iter_mut().zip(&e).zip(&f) {
                            *yi -= &(a * ei);
                            *yi += &(b * fi);
                        }
                    }
                    es.push(e);
                    fs.push(f);
                }
                es.extend(fs);
                es
            }
            FormKind::Symmetric => {
                let mut out = Vec::new();
                while !rest.is_empty() {
                    let (drop, x, root) = self
                        .anisotropic_with_root(&rest)?
                        .ok_or_else(|| {
                            Error::InvalidRequest(
                                "symmetric form is not standardizable over Q(i) by the search".into(),
                            )
                        })?;
                    rest.remove(drop);
                    let qx_inv = q.eval(&x, &x)?.inv().expect("anisotropic");
                    for y in rest.iter_mut() {
                        let c = &q.eval(y, &x)? * &qx_inv;
                        for (yi, xi) in y.iter_mut().zip(&x) {
                            *yi -= &(&c * xi);
                        }
                    }
                    let root_inv = root.inv().expect("nonzero root");
                    out.push(x.iter().map(|a| a * &root_inv).collect());
                }
                out
            }
        };
        let basis = ExactMatrix::from_columns(&q_basis)?;
        let standard = BilinearForm::standard(self.kind(), n)?;
        if self.pairing(&basis, &basis)? != standard.gram {
            return Err(Error::InvalidForm("Gram–Schmidt did not reach the standard form".into()));
        }
        Ok(basis)
    }

    /// Among combinations of `vs`, the first anisotropic `x` whose square-norm
    /// has a square root, with the index of a member of `vs` it may replace.
    fn anisotropic_with_root(
        &self,
        vs: &[Vec<GaussianRational>],
    ) -> Result<Option<(usize, Vec<GaussianRational>, GaussianRational)>> {
        let mut candidates: Vec<(usize, Vec<GaussianRational>)> =
            vs.iter().cloned().enumerate().collect();
        let i = GaussianRational::i();
        for j in 0..vs.len() {
            for k in j + 1..vs.len() {
                for c in [GaussianRational::one(), GaussianRational::from_integer(-1), i.clone()] {
                    let x = vs[j].iter().zip(&vs[k]).map(|(a, b)| a + &(&c * b)).collect();
                    candidates.push((j, x));
                }
            }
        }
        for (drop, x) in candidates {
            let qx = self.eval(&x, &x)?;
            if qx.is_zero() {
                continue;
            }
            if let Some(root) = qx.sqrt() {
                return Ok(Some((drop, x, root)));
            }
        }
        Ok(None)
    }
}

/// The adjoint `T*: target → source` of `T: source → target`, the unique map
/// with `(T w, v)_target = (w, T* v)_source`. Writing the identity in
/// coordinates gives `Tᵗ · G_target = G_source · T*`.
pub fn adjoint(t: &ExactMatrix, source: &FormedSpace, target: &FormedSpace) -> Result<ExactMatrix> {
    if t.shape() != (target.dim(), source.dim()) {
        return Err(Error::dim(
            "adjoint",
            format!("({}, {})", target.dim(), source.dim()),
            format!("{:?}", t.shape()),
        ));
    }
    let rhs = t.transpose().matmul(target.gram())?;
    source.gram().inverse()?.matmul(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, rng_from_seed};

    fn sym(n: usize) -> FormedSpace {
        FormedSpace::standard(FormKind::Symmetric, n).unwrap()
    }

    fn symp(n: usize) -> FormedSpace {
        FormedSpace::standard(FormKind::Symplectic, n).unwrap()
    }

    fn v(xs: &[(i64, i64)]) -> Vec<GaussianRational> {
        xs.iter().map(|&(a, b)| GaussianRational::gaussian_integer(a, b)).collect()
    }

    fn unit(n: usize, k: usize) -> Vec<GaussianRational> {
        (0..n)
            .map(|i| GaussianRational::from_integer((i == k) as i64))
            .collect()
    }

    #[test]
    fn standard_forms() {
        assert_eq!(*sym(3).gram(), ExactMatrix::identity(3));
        let j = ExactMatrix::from_gaussian_ints(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]);
        assert_eq!(*symp(2).gram(), j);
        assert_eq!(
            BilinearForm::standard(FormKind::Symplectic, 3),
            Err(Error::OddSymplectic(3))
        );
    }

    #[test]
    fn form_validation() {
        let bad = ExactMatrix::from_gaussian_ints(&[&[(1, 0), (1, 0)], &[(0, 0), (1, 0)]]);
        assert!(BilinearForm::new(FormKind::Symmetric, bad).is_err());
        assert!(BilinearForm::new(FormKind::Symmetric, ExactMatrix::zeros(2, 2)).is_err());
        let json = r#"{"kind":"symplectic","gram":[["0","1"],["-1","0"]]}"#;
        let f: BilinearForm = serde_json::from_str(json).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), json);
        assert!(serde_json::from_str::<BilinearForm>(r#"{"kind":"symplectic","gram":[["1"]]}"#).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let one_i = v(&[(1, 0), (0, 1)]);
        assert!(sym(2).eval(&one_i, &one_i).unwrap().is_zero());
        let e1 = unit(2, 0);
        let e2 = unit(2, 1);
        assert_eq!(symp(2).eval(&e1, &e2).unwrap(), GaussianRational::one());
        assert!(symp(2).eval(&e1, &e1).unwrap().is_zero());
        assert_eq!(sym(2).eval(&e1, &e1).unwrap(), GaussianRational::one());
        assert!(sym(2).eval(&e1, &unit(3, 0)).is_err());
    }

    #[test]
    fn isometry_examples() {
        let s = sym(2);
        assert!(s.is_isometry(&ExactMatrix::identity(2)).unwrap());
        let d = ExactMatrix::from_gaussian_ints(&[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]);
        assert!(s.is_isometry(&d).unwrap());
        let d2 = ExactMatrix::from_gaussian_ints(&[&[(2, 0), (0, 0)], &[(0, 0), (1, 0)]]);
        assert!(!s.is_isometry(&d2).unwrap());
        assert!(s.is_isometry(&ExactMatrix::identity(3)).is_err());
    }

    #[test]
    fn lie_algebra_examples() {
        assert!(sym(2).in_lie_algebra(&ExactMatrix::zeros(2, 2)).unwrap());
        let rot = ExactMatrix::from_gaussian_ints(&[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]);
        assert!(sym(2).in_lie_algebra(&rot).unwrap());
        // Iᵗ J + J I = 2J
        assert!(!symp(2).in_lie_algebra(&ExactMatrix::identity(2)).unwrap());
    }

    #[test]
    fn cayley_of_zero_is_identity() {
        assert_eq!(
            FormedSpace::cayley(&ExactMatrix::zeros(3, 3)).unwrap(),
            ExactMatrix::identity(3)
        );
        // I + X singular
        let x = ExactMatrix::identity(2).neg();
        assert_eq!(FormedSpace::cayley(&x), Err(Error::Singular));
    }

    #[test]
    fn sampled_isometries_have_requested_determinant() {
        let mut rng = rng_from_seed(3);
        for n in 1..=5 {
            let s = sym(n);
            for sign in [DetSign::Plus, DetSign::Minus] {
                let g = s.sample_isometry(&mut rng, sign).unwrap();
                assert!(s.is_isometry(&g).unwrap());
                let expected = if sign == DetSign::Plus { 1 } else { -1 };
                assert_eq!(g.determinant().unwrap(), GaussianRational::from_integer(expected));
            }
        }
        for n in [2, 4, 6] {
            let s = symp(n);
            let g = s.sample_isometry(&mut rng, DetSign::Any).unwrap();
            assert!(s.is_isometry(&g).unwrap());
            assert!(g.determinant().unwrap().is_one());
            assert!(s.sample_isometry(&mut rng, DetSign::Minus).is_err());
        }
    }

    #[test]
    fn det_minus_one_in_dimension_two() {
        let s = sym(2);
        let g = s.sample_isometry(&mut rng_from_seed(9), DetSign::Minus).unwrap();
        assert_eq!(g.transpose().matmul(&g).unwrap(), ExactMatrix::identity(2));
        assert_eq!(g.determinant().unwrap(), GaussianRational::from_integer(-1));
    }

    #[test]
    fn flip_for_non_identity_gram() {
        // hyperbolic plane: gram [[0,1],[1,0]] has isotropic e1, e2
        let gram = ExactMatrix::from_gaussian_ints(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]);
        let s: FormedSpace = BilinearForm::new(FormKind::Symmetric, gram).unwrap().into();
        let r = s.flip_reflection().unwrap();
        assert!(s.is_isometry(&r).unwrap());
        assert_eq!(r.determinant().unwrap(), GaussianRational::from_integer(-1));
        let g = s.sample_isometry(&mut rng_from_seed(1), DetSign::Minus).unwrap();
        assert!(s.is_isometry(&g).unwrap());
    }

    fn check_adjoint_identity(t: &ExactMatrix, w: &FormedSpace, v: &FormedSpace) {
        let ts = adjoint(t, w, v).unwrap();
        for a in 0..w.dim() {
            for b in 0..v.dim() {
                let ew = unit(w.dim(), a);
                let ev = unit(v.dim(), b);
                let tw = t.matmul(&ExactMatrix::column_vector(&ew)).unwrap();
                let tsv = ts.matmul(&ExactMatrix::column_vector(&ev)).unwrap();
                assert_eq!(
                    v.eval(tw.entries(), &ev).unwrap(),
                    w.eval(&ew, tsv.entries()).unwrap()
                );
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        let v4 = sym(4);
        let w2 = symp(2);
        assert!(adjoint(&ExactMatrix::zeros(4, 2), &w2, &v4).unwrap().is_zero());
        let mut rng = rng_from_seed(21);
        for _ in 0..5 {
            let t = random_matrix(4, 2, &mut rng);
            check_adjoint_identity(&t, &w2, &v4);
            // one symmetric and one symplectic form: T** = -T
            let ts = adjoint(&t, &w2, &v4).unwrap();
            assert_eq!(adjoint(&ts, &v4, &w2).unwrap(), t.neg());
        }
        let embed = ExactMatrix::identity(4).select_columns(&[0, 1]);
        assert_eq!(adjoint(&embed, &sym(2), &v4).unwrap(), embed.transpose());
        assert!(adjoint(&ExactMatrix::zeros(2, 4), &w2, &v4).is_err());
    }

    /// Which closed form the defining identity produces under the standard
    /// forms with W = Q(i)^m: symmetric V gives `-J_W Tᵗ`, symplectic V gives
    /// `Tᵗ J_V`. Swapping the two assignments does not even type-check.
    #[test]
    fn adjoint_closed_forms_under_standard_forms() {
        let mut rng = rng_from_seed(8);
        let (v, w) = (sym(4), symp(2));
        let t = random_matrix(4, 2, &mut rng);
        let j_w = w.gram().clone();
        let computed = adjoint(&t, &w, &v).unwrap();
        assert_eq!(computed, j_w.matmul(&t.transpose()).unwrap().neg());
        assert!(t.transpose().matmul(&j_w).is_err());

        let (v, w) = (symp(4), sym(3));
        let t = random_matrix(4, 3, &mut rng);
        let j_v = v.gram().clone();
        let computed = adjoint(&t, &w, &v).unwrap();
        assert_eq!(computed, t.transpose().matmul(&j_v).unwrap());
        assert!(j_v.matmul(&t.transpose()).is_err());
    }

    #[test]
    fn standardizing_basis_reaches_standard_gram() {
        let mut rng = rng_from_seed(40);
        for n in [2, 4, 6] {
            let std = symp(n);
            for _ in 0..3 {
                let p = crate::random::random_invertible(n, &mut rng).unwrap();
                let gram = std.pairing(&p, &p).unwrap();
                let space: FormedSpace = BilinearForm::new(FormKind::Symplectic, gram).unwrap().into();
                let q = space.standardizing_basis().unwrap();
                assert_eq!(&space.pairing(&q, &q).unwrap(), std.gram());
            }
        }
        // diag(4, -1, 2i) has square roots 2, i, 1+i
        let d = ExactMatrix::from_gaussian_ints(&[&[(4, 0), (0, 0), (0, 0)], &[(0, 0), (-1, 0), (0, 0)], &[(0, 0), (0, 0), (0, 2)]]);
        let space: FormedSpace = BilinearForm::new(FormKind::Symmetric, d).unwrap().into();
        let q = space.standardizing_basis().unwrap();
        assert_eq!(space.pairing(&q, &q).unwrap(), ExactMatrix::identity(3));
        // 3 has no square root in Q(i)
        let three = ExactMatrix::from_gaussian_ints(&[&[(3, 0)]]);
        let space: FormedSpace = BilinearForm::new(FormKind::Symmetric, three).unwrap().into();
        assert!(matches!(space.standardizing_basis(), Err(Error::InvalidRequest(_))));
    }

    #[test]
    fn cayley_of_lie_elements_are_isometries() {
        let mut rng = rng_from_seed(17);
        for s in [sym(3), sym(4), symp(4)] {
            for _ in 0..5 {
                let x = s.random_lie_element(&mut rng).unwrap();
                assert!(s.in_lie_algebra(&x).unwrap());
                if let Ok(g) = FormedSpace::cayley(&x) {
                    assert!(s.is_isometry(&g).unwrap());
                }
            }
        }
    }
}

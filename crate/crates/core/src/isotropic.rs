//! Isotropic subspaces, Grassmannians and two-step flags.
//!
//! Dimension formulas live next to the first-order oracle that checks them:
//! [`tangent_dim_isotropic_at`] solves the linearized isotropy condition at a
//! concrete point and never looks at a formula.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{DetSign, FormKind, FormedSpace};
use crate::matrix::ExactMatrix;
use crate::random::{random_matrix, MAX_ATTEMPTS};
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsotropicSubspace {
    space: FormedSpace,
    sub: Subspace,
}

impl IsotropicSubspace {
    pub fn new(space: FormedSpace, sub: Subspace) -> Result<Self> {
        if !is_isotropic(&space, &sub)? {
            return Err(Error::InvalidRequest("subspace is not isotropic".into()));
        }
        Ok(IsotropicSubspace { space, sub })
    }

    pub fn space(&self) -> &FormedSpace {
        &self.space
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

pub fn is_isotropic(space: &FormedSpace, sub: &Subspace) -> Result<bool> {
    if sub.ambient_dim() != space.dim() {
        return Err(Error::dim("is_isotropic", space.dim(), sub.ambient_dim()));
    }
    Ok(space.pairing(sub.basis(), sub.basis())?.is_zero())
}

/// `floor(n / 2)`.
pub fn max_isotropic_dim(space: &FormedSpace) -> usize {
    space.dim() / 2
}

fn check_isotropic_range(n: usize, r: usize) -> Result<()> {
    if 2 * r > n {
        return Err(Error::NoIsotropic { r, n });
    }
    Ok(())
}

/// Dimension of the variety of `r`-dimensional isotropic subspaces of an
/// `n`-dimensional formed space: `r(2n - 3r - 1)/2` for a symmetric form and
/// `r(2n - 3r + 1)/2` for a symplectic one.
pub fn dim_isotropic_grassmannian(n: usize, r: usize, kind: FormKind) -> Result<usize> {
    check_isotropic_range(n, r)?;
    let (n, r) = (n as i64, r as i64);
    let twice = match kind {
        FormKind::Symmetric => r * (2 * n - 3 * r - 1),
        FormKind::Symplectic => r * (2 * n - 3 * r + 1),
    };
    Ok((twice / 2) as usize)
}

/// The symmetric-case expression `r(2n - 3r - 1)/2` applied regardless of the
/// kind of form. Kept so reports can show where it departs from the oracle
/// (every symplectic case with `r > 0`, e.g. 0 instead of 1 for lines in a
/// symplectic plane).
pub fn dim_isotropic_grassmannian_uniform(n: usize, r: usize) -> Result<i64> {
    check_isotropic_range(n, r)?;
    let (n, r) = (n as i64, r as i64);
    Ok(r * (2 * n - 3 * r - 1) / 2)
}

/// Matrix of the linear map `X ↦ Xᵗ G T + Tᵗ G X` from `n × k` matrices to
/// `k × k` matrices, in row-major coordinates on both sides.
pub(crate) fn quadratic_differential(gram: &ExactMatrix, t: &ExactMatrix) -> Result<ExactMatrix> {
    let (n, k) = t.shape();
    let gt = gram.matmul(t)?;
    let tg = t.transpose().matmul(gram)?;
    let mut jac = ExactMatrix::zeros(k * k, n * k).to_rows();
    for a in 0..k {
        for b in 0..k {
            let row = &mut jac[a * k + b];
            for i in 0..n {
                // ∂/∂X_{ia} of (XᵗGT)_{ab}
                row[i * k + a] += gt.get(i, b);
                // ∂/∂X_{ib} of (TᵗGX)_{ab}
                row[i * k + b] += tg.get(a, i);
            }
        }
    }
    ExactMatrix::from_rows(jac)
}

/// First-order deformations of `U` inside the isotropic Grassmannian: the
/// kernel of `C ↦ Bᵗ G C + Cᵗ G B` over all `C ∈ Hom(Q(i)^r, Q(i)^n)`, minus
/// the `r²` directions `C = B M` that only reparametrize the basis.
pub fn tangent_dim_isotropic_at(u: &IsotropicSubspace) -> Result<usize> {
    let b = u.sub.basis();
    let r = b.cols();
    let jac = quadratic_differential(u.space.gram(), b)?;
    Ok(jac.nullity() - r * r)
}

/// `span{e_{2k-1} + i e_{2k}}` (identity Gram) or `span{e_1, …, e_r}`
/// (standard symplectic Gram), for `k ≤ r`.
pub fn standard_isotropic_seed(space: &FormedSpace, r: usize) -> Result<Subspace> {
    let n = space.dim();
    check_isotropic_range(n, r)?;
    let standard = FormedSpace::standard(space.kind(), n)?;
    if space.gram() != standard.gram() {
        return Err(Error::InvalidRequest(
            "isotropic seeds are defined for the standard forms only".into(),
        ));
    }
    let basis = match space.kind() {
        FormKind::Symmetric => ExactMatrix::from_fn(n, r, |i, j| {
            if i == 2 * j {
                GaussianRational::one()
            } else if i == 2 * j + 1 {
                GaussianRational::i()
            } else {
                GaussianRational::zero()
            }
        }),
        FormKind::Symplectic => ExactMatrix::identity(n).select_columns(&(0..r).collect::<Vec<_>>()),
    };
    Ok(Subspace::column_space(&basis))
}

/// The standard seed moved by a sampled isometry of either determinant.
pub fn sample_isotropic<R: Rng + ?Sized>(
    space: &FormedSpace,
    r: usize,
    rng: &mut R,
) -> Result<IsotropicSubspace> {
    let seed = standard_isotropic_seed(space, r)?;
    let g = space.sample_isometry(rng, DetSign::Any)?;
    IsotropicSubspace::new(space.clone(), seed.image_under(&g)?)
}

/// `k(n - k)`.
pub fn dim_grassmannian(k: usize, n: usize) -> Result<usize> {
    if k > n {
        return Err(Error::InvalidRequest(format!("Gr({k}, {n}) is empty")));
    }
    Ok(k * (n - k))
}

/// Flags `U1 ⊂ U2 ⊂ Q(i)^n` with `dim U1 = m`, `dim U2 = n - s`:
/// `(n² - s² - (n - s - m)² - m²) / 2`.
pub fn dim_flag2(m: usize, s: usize, n: usize) -> Result<usize> {
    if m + s > n {
        return Err(Error::InvalidRequest(format!(
            "no flags of type ({m}, {}) in dimension {n}",
            n as i64 - s as i64
        )));
    }
    let mid = n - s - m;
    Ok((n * n - s * s - mid * mid - m * m) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flag2 {
    u1: Subspace,
    u2: Subspace,
}

impl Flag2 {
    pub fn new(u1: Subspace, u2: Subspace) -> Result<Self> {
        if !u2.contains(&u1)? {
            return Err(Error::InvalidRequest("flag is not nested".into()));
        }
        Ok(Flag2 { u1, u2 })
    }

    pub fn ambient_dim(&self) -> usize {
        self.u1.ambient_dim()
    }

    pub fn u1(&self) -> &Subspace {
        &self.u1
    }

    pub fn u2(&self) -> &Subspace {
        &self.u2
    }
}

/// Random `k`-dimensional `U` with `base ⊆ U ⊆ within`.
pub fn sample_between<R: Rng + ?Sized>(
    base: &Subspace,
    within: &Subspace,
    k: usize,
    rng: &mut R,
) -> Result<Subspace> {
    if !within.contains(base)? || k < base.dim() || k > within.dim() {
        return Err(Error::InvalidRequest(format!(
            "no {k}-dimensional subspace between dimensions {} and {}",
            base.dim(),
            within.dim()
        )));
    }
    let mut u = base.clone();
    let mut attempts = 0;
    while u.dim() < k {
        attempts += 1;
        if attempts > MAX_ATTEMPTS * k.max(1) {
            return Err(Error::SamplingExhausted(attempts));
        }
        let coeffs = random_matrix(within.dim(), 1, rng);
        let v = within.basis().matmul(&coeffs)?;
        if !u.contains_columns(&v)? {
            u = u.sum(&Subspace::column_space(&v))?;
        }
    }
    Ok(u)
}

pub fn sample_subspace<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Subspace> {
    sample_between(&Subspace::zero(n), &Subspace::full(n), k, rng)
}

/// Random flag with `dim U1 = m`, `dim U2 = n - s`.
pub fn sample_flag2<R: Rng + ?Sized>(n: usize, m: usize, s: usize, rng: &mut R) -> Result<Flag2> {
    dim_flag2(m, s, n)?;
    let u1 = sample_subspace(n, m, rng)?;
    let u2 = sample_between(&u1, &Subspace::full(n), n - s, rng)?;
    Flag2::new(u1, u2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Component {
    pub fn flipped(self) -> Component {
        match self {
            Component::Plus => Component::Minus,
            Component::Minus => Component::Plus,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Plus => "+",
            Component::Minus => "-",
        })
    }
}

/// Which of the two families of maximal isotropic subspaces `u` belongs to,
/// relative to `reference`: `+` when `dim u - dim(u ∩ reference)` is even.
/// Only defined for a symmetric form on a space of dimension `2 dim u`.
pub fn component_label(u: &IsotropicSubspace, reference: &IsotropicSubspace) -> Result<Component> {
    let n = u.space.dim();
    if u.space.kind() != FormKind::Symmetric || n != 2 * u.dim() {
        return Err(Error::InvalidRequest(
            "component labels need a symmetric form and a maximal isotropic subspace in even dimension".into(),
        ));
    }
    if reference.space != u.space || reference.dim() != u.dim() {
        return Err(Error::InvalidRequest(
            "reference must be maximal isotropic in the same space".into(),
        ));
    }
    let meet = u.sub.intersect(&reference.sub)?;
    Ok(if (u.dim() - meet.dim()).is_multiple_of(2) {
        Component::Plus
    } else {
        Component::Minus
    })
}

/// Hyperbolic partners for an isotropic basis `B`: columns `V` with
/// `Bᵗ G V = I` and `Vᵗ G V = 0` (symmetric form).
fn hyperbolic_partners(space: &FormedSpace, b: &ExactMatrix) -> Result<ExactMatrix> {
    let k = b.cols();
    let bg = b.transpose().matmul(space.gram())?;
    let v = bg
        .solve(&ExactMatrix::identity(k))?
        .ok_or_else(|| Error::InvalidRequest("isotropic basis has no dual partners".into()))?;
    let half = GaussianRational::from_parts(1, 2, 0, 1);
    let correction = space.pairing(&v, &v)?.scale(&half);
    v.sub(&b.matmul(&correction)?)
}

/// An isometry `σ` of the standard symmetric space with `σ(U) = ` the standard
/// seed of dimension `dim U`. Built from reflections that carry an orthogonal
/// basis of the hyperbolic span of `U` onto the standard one, each step fixing
/// the vectors already placed.
pub fn witt_isometry(space: &FormedSpace, u: &Subspace) -> Result<ExactMatrix> {
    if space.kind() != FormKind::Symmetric {
        return Err(Error::InvalidRequest("witt_isometry needs a symmetric form".into()));
    }
    if !is_isotropic(space, u)? {
        return Err(Error::InvalidRequest("subspace is not isotropic".into()));
    }
    let n = space.dim();
    let k = u.dim();
    let seed = standard_isotropic_seed(space, k)?;
    let b = u.basis();
    let partners = hyperbolic_partners(space, b)?;

    let e = seed.basis();
    let f = hyperbolic_partners(space, e)?;
    let mut sources = Vec::with_capacity(2 * k);
    let mut targets = Vec::with_capacity(2 * k);
    for j in 0..k {
        let (bj, vj) = (b.column(j), partners.column(j));
        let (ej, fj) = (e.column(j), f.column(j));
        sources.push(add(&bj, &vj));
        sources.push(sub(&bj, &vj));
        targets.push(add(&ej, &fj));
        targets.push(sub(&ej, &fj));
    }

    let mut sigma = ExactMatrix::identity(n);
    for (x0, y) in sources.iter().zip(&targets) {
        let x = apply(&sigma, x0)?;
        if x == *y {
            continue;
        }
        let d = sub(&x, y);
        if !space.eval(&d, &d)?.is_zero() {
            sigma = space.reflection(&d)?.matmul(&sigma)?;
        } else {
            let s = add(&x, y);
            sigma = ExactMatrix::product(&[&space.reflection(y)?, &space.reflection(&s)?, &sigma])?;
        }
    }
    debug_assert!(space.is_isometry(&sigma)?);
    debug_assert_eq!(u.image_under(&sigma)?, seed);
    Ok(sigma)
}

fn apply(m: &ExactMatrix, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
    Ok(m.matmul(&ExactMatrix::column_vector(v))?.entries().to_vec())
}

fn add(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Two distinct `r`-dimensional isotropic subspaces containing `u`, which must
/// have dimension `< r`.
///
/// Symplectic forms: grow `u` by random vectors of `u^⊥` (every vector is
/// isotropic). Symmetric forms: move `u` to the standard seed with
/// [`witt_isometry`], extend there by `e_{2j-1} ± i e_{2j}` for the first new
/// direction, and move back.
pub fn isotropic_extensions<R: Rng + ?Sized>(
    space: &FormedSpace,
    u: &Subspace,
    r: usize,
    rng: &mut R,
) -> Result<(Subspace, Subspace)> {
    let n = space.dim();
    check_isotropic_range(n, r)?;
    let k = u.dim();
    if k >= r {
        return Err(Error::InvalidRequest(format!(
            "a {k}-dimensional subspace has no proper {r}-dimensional extension"
        )));
    }
    if !is_isotropic(space, u)? {
        return Err(Error::InvalidRequest("subspace is not isotropic".into()));
    }
    match space.kind() {
        FormKind::Symplectic => {
            for _ in 0..MAX_ATTEMPTS {
                let a = grow_symplectic(space, u, r, rng)?;
                let b = grow_symplectic(space, u, r, rng)?;
                if a != b {
                    return Ok((a, b));
                }
            }
            Err(Error::SamplingExhausted(MAX_ATTEMPTS))
        }
        FormKind::Symmetric => {
            let sigma = witt_isometry(space, u)?;
            let sigma_inv = sigma.inverse()?;
            let first = standard_isotropic_seed(space, r)?;
            let mut flipped = standard_isotropic_seed(space, r)?.basis().clone().to_rows();
            flipped[2 * k + 1][k] = -GaussianRational::i();
            let second = Subspace::column_space(&ExactMatrix::from_rows(flipped)?);
            Ok((first.image_under(&sigma_inv)?, second.image_under(&sigma_inv)?))
        }
    }
}

fn grow_symplectic<R: Rng + ?Sized>(
    space: &FormedSpace,
    u: &Subspace,
    r: usize,
    rng: &mut R,
) -> Result<Subspace> {
    let mut cur = u.clone();
    let mut attempts = 0;
    while cur.dim() < r {
        attempts += 1;
        if attempts > MAX_ATTEMPTS * r {
            return Err(Error::SamplingExhausted(attempts));
        }
        let perp = Subspace::kernel(&cur.basis().transpose().matmul(space.gram())?);
        let v = perp.basis().matmul(&random_matrix(perp.dim(), 1, rng))?;
        if !cur.contains_columns(&v)? {
            cur = cur.sum(&Subspace::column_space(&v))?;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng_from_seed;

    fn sym(n: usize) -> FormedSpace {
        FormedSpace::standard(FormKind::Symmetric, n).unwrap()
    }

    fn symp(n: usize) -> FormedSpace {
        FormedSpace::standard(FormKind::Symplectic, n).unwrap()
    }

    fn span(cols: &[&[(i64, i64)]]) -> Subspace {
        let m = ExactMatrix::from_gaussian_ints(cols).transpose();
        Subspace::column_space(&m)
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic(&sym(2), &Subspace::zero(2)).unwrap());
        assert!(is_isotropic(&sym(2), &span(&[&[(1, 0), (0, 1)]])).unwrap());
        assert!(!is_isotropic(&sym(2), &Subspace::coordinate(2, &[0])).unwrap());
        assert!(is_isotropic(&sym(3), &Subspace::zero(2)).is_err());
    }

    #[test]
    fn max_dims() {
        assert_eq!(max_isotropic_dim(&sym(5)), 2);
        assert_eq!(max_isotropic_dim(&symp(4)), 2);
        assert_eq!(max_isotropic_dim(&sym(2)), 1);
    }

    #[test]
    fn grassmannian_dimension_values() {
        assert_eq!(dim_isotropic_grassmannian(4, 2, FormKind::Symmetric).unwrap(), 1);
        assert_eq!(dim_isotropic_grassmannian(2, 1, FormKind::Symplectic).unwrap(), 1);
        assert_eq!(dim_isotropic_grassmannian(6, 3, FormKind::Symmetric).unwrap(), 3);
        assert_eq!(dim_isotropic_grassmannian_uniform(2, 1).unwrap(), 0);
        assert!(matches!(
            dim_isotropic_grassmannian(5, 3, FormKind::Symmetric),
            Err(Error::NoIsotropic { r: 3, n: 5 })
        ));
        assert_eq!(dim_grassmannian(1, 2).unwrap(), 1);
        assert_eq!(dim_flag2(1, 1, 2).unwrap(), 1);
        assert_eq!(dim_flag2(2, 1, 4).unwrap(), 5);
        assert!(dim_flag2(2, 3, 4).is_err());
    }

    #[test]
    fn tangent_oracle_examples() {
        let line = IsotropicSubspace::new(symp(2), Subspace::coordinate(2, &[0])).unwrap();
        assert_eq!(tangent_dim_isotropic_at(&line).unwrap(), 1);
        let null_line = IsotropicSubspace::new(sym(2), span(&[&[(1, 0), (0, 1)]])).unwrap();
        assert_eq!(tangent_dim_isotropic_at(&null_line).unwrap(), 0);
        let plane = IsotropicSubspace::new(
            sym(4),
            span(&[&[(1, 0), (0, 1), (0, 0), (0, 0)], &[(0, 0), (0, 0), (1, 0), (0, 1)]]),
        )
        .unwrap();
        assert_eq!(tangent_dim_isotropic_at(&plane).unwrap(), 1);
    }

    #[test]
    fn seeds() {
        assert_eq!(
            standard_isotropic_seed(&sym(2), 1).unwrap(),
            span(&[&[(1, 0), (0, 1)]])
        );
        assert_eq!(
            standard_isotropic_seed(&symp(4), 2).unwrap(),
            Subspace::coordinate(4, &[0, 1])
        );
        assert!(standard_isotropic_seed(&sym(3), 2).is_err());
    }

    #[test]
    fn tangent_oracle_matches_formula_on_samples() {
        let mut rng = rng_from_seed(12);
        for (kind, n) in [
            (FormKind::Symmetric, 2),
            (FormKind::Symmetric, 3),
            (FormKind::Symmetric, 5),
            (FormKind::Symmetric, 6),
            (FormKind::Symplectic, 2),
            (FormKind::Symplectic, 4),
            (FormKind::Symplectic, 6),
        ] {
            let space = FormedSpace::standard(kind, n).unwrap();
            for r in 0..=n / 2 {
                let u = sample_isotropic(&space, r, &mut rng).unwrap();
                assert_eq!(u.dim(), r);
                assert_eq!(
                    tangent_dim_isotropic_at(&u).unwrap(),
                    dim_isotropic_grassmannian(n, r, kind).unwrap(),
                    "{kind:?} n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn flag_dimension_is_iterated_grassmannian() {
        for n in 0..=7 {
            for m in 0..=n {
                for s in 0..=n - m {
                    assert_eq!(
                        dim_flag2(m, s, n).unwrap(),
                        dim_grassmannian(m, n).unwrap()
                            + dim_grassmannian(n - s - m, n - m).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_flags_have_requested_dims() {
        let mut rng = rng_from_seed(2);
        let f = sample_flag2(5, 2, 2, &mut rng).unwrap();
        assert_eq!((f.u1().dim(), f.u2().dim()), (2, 3));
        assert!(f.u2().contains(f.u1()).unwrap());
        assert!(Flag2::new(f.u2().clone(), f.u1().clone()).is_err());
    }

    #[test]
    fn component_label_examples() {
        let space = sym(2);
        let plus = IsotropicSubspace::new(space.clone(), span(&[&[(1, 0), (0, 1)]])).unwrap();
        let minus = IsotropicSubspace::new(space.clone(), span(&[&[(1, 0), (0, -1)]])).unwrap();
        assert_eq!(component_label(&plus, &plus).unwrap(), Component::Plus);
        assert_eq!(component_label(&minus, &plus).unwrap(), Component::Minus);
        let odd = IsotropicSubspace::new(sym(3), span(&[&[(1, 0), (0, 1), (0, 0)]])).unwrap();
        assert!(component_label(&odd, &odd).is_err());
    }

    #[test]
    fn component_label_tracks_determinant() {
        let mut rng = rng_from_seed(4);
        for m in 1..=3 {
            let space = sym(2 * m);
            let reference =
                IsotropicSubspace::new(space.clone(), standard_isotropic_seed(&space, m).unwrap())
                    .unwrap();
            for _ in 0..4 {
                let u = sample_isotropic(&space, m, &mut rng).unwrap();
                let label = component_label(&u, &reference).unwrap();
                for (sign, expect) in [(DetSign::Plus, label), (DetSign::Minus, label.flipped())] {
                    let g = space.sample_isometry(&mut rng, sign).unwrap();
                    let moved =
                        IsotropicSubspace::new(space.clone(), u.sub().image_under(&g).unwrap())
                            .unwrap();
                    assert_eq!(component_label(&moved, &reference).unwrap(), expect);
                }
            }
        }
    }

    #[test]
    fn witt_isometry_moves_to_seed() {
        let mut rng = rng_from_seed(31);
        for n in 2..=6 {
            let space = sym(n);
            for k in 0..=n / 2 {
                let u = sample_isotropic(&space, k, &mut rng).unwrap();
                let sigma = witt_isometry(&space, u.sub()).unwrap();
                assert!(space.is_isometry(&sigma).unwrap());
                assert_eq!(
                    u.sub().image_under(&sigma).unwrap(),
                    standard_isotropic_seed(&space, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn extensions_are_distinct_isotropic_and_contain_base() {
        let mut rng = rng_from_seed(77);
        for (kind, n) in [(FormKind::Symmetric, 4), (FormKind::Symmetric, 5), (FormKind::Symplectic, 4), (FormKind::Symplectic, 6)] {
            let space = FormedSpace::standard(kind, n).unwrap();
            let r = n / 2;
            for k in 0..r {
                let u = sample_isotropic(&space, k, &mut rng).unwrap();
                let (a, b) = isotropic_extensions(&space, u.sub(), r, &mut rng).unwrap();
                assert_ne!(a, b);
                for w in [&a, &b] {
                    assert_eq!(w.dim(), r);
                    assert!(is_isotropic(&space, w).unwrap());
                    assert!(w.contains(u.sub()).unwrap());
                }
            }
        }
    }
}

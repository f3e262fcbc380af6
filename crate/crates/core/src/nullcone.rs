//! Null cones of `O(V)` and `Sp(V)` acting on `Hom(Q(i)^m, V)` and of
//! `GL(V)` acting on pairs `(A, B)` with `AB` as the invariant map.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{FormKind, FormedSpace};
use crate::isotropic::{
    component_label, quadratic_differential, sample_flag2, sample_isotropic, Component,
    IsotropicSubspace,
};
use crate::matrix::ExactMatrix;
use crate::random::random_matrix_of_rank;
use crate::scalar::GaussianRational;
use crate::subspace::Subspace;

/// `m` vectors in a formed space `V` of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrthSympSetting {
    v: FormedSpace,
    m: usize,
}

impl OrthSympSetting {
    pub fn new(v: FormedSpace, m: usize) -> Result<Self> {
        if v.dim() == 0 || m == 0 {
            return Err(Error::InvalidRequest("need n >= 1 and m >= 1".into()));
        }
        Ok(OrthSympSetting { v, m })
    }

    pub fn standard(kind: FormKind, n: usize, m: usize) -> Result<Self> {
        Self::new(FormedSpace::standard(kind, n)?, m)
    }

    pub fn space(&self) -> &FormedSpace {
        &self.v
    }

    pub fn kind(&self) -> FormKind {
        self.v.kind()
    }

    pub fn n(&self) -> usize {
        self.v.dim()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `min(m, floor(n / 2))`, the largest rank of a null map.
    pub fn r(&self) -> usize {
        self.m.min(self.n() / 2)
    }
}

/// Pairs `A: V → Q(i)^s`, `B: Q(i)^m → V` with `n = dim V ≥ s + m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlSetting {
    n: usize,
    s: usize,
    m: usize,
}

impl GlSetting {
    pub fn new(n: usize, s: usize, m: usize) -> Result<Self> {
        if n < s + m {
            return Err(Error::InvalidRequest(format!("need n >= s + m, got n={n} s={s} m={m}")));
        }
        Ok(GlSetting { n, s, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum Setting {
    Os(OrthSympSetting),
    Gl(GlSetting),
}

impl Setting {
    pub fn os(&self) -> Result<&OrthSympSetting> {
        match self {
            Setting::Os(s) => Ok(s),
            Setting::Gl(_) => Err(Error::InvalidRequest("expected an orthogonal or symplectic setting".into())),
        }
    }

    pub fn gl(&self) -> Result<&GlSetting> {
        match self {
            Setting::Gl(s) => Ok(s),
            Setting::Os(_) => Err(Error::InvalidRequest("expected a general linear setting".into())),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Setting::Os(s) => s.m(),
            Setting::Gl(s) => s.m(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Setting::Os(s) => s.n(),
            Setting::Gl(s) => s.n(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum NullPoint {
    Os { t: ExactMatrix },
    Gl { a: ExactMatrix, b: ExactMatrix },
}

fn check_shape(op: &'static str, m: &ExactMatrix, shape: (usize, usize)) -> Result<()> {
    if m.shape() != shape {
        return Err(Error::dim(op, format!("{shape:?}"), format!("{:?}", m.shape())));
    }
    Ok(())
}

/// `Tᵗ G T`: the `m × m` matrix of all pairings between columns of `T`.
pub fn eval_q(setting: &OrthSympSetting, t: &ExactMatrix) -> Result<ExactMatrix> {
    check_shape("eval_q", t, (setting.n(), setting.m()))?;
    setting.v.pairing(t, t)
}

/// `AB`.
pub fn eval_phi(setting: &GlSetting, a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    check_shape("eval_phi", a, (setting.s, setting.n))?;
    check_shape("eval_phi", b, (setting.n, setting.m))?;
    a.matmul(b)
}

pub fn is_null(setting: &Setting, point: &NullPoint) -> Result<bool> {
    match (setting, point) {
        (Setting::Os(s), NullPoint::Os { t }) => Ok(eval_q(s, t)?.is_zero()),
        (Setting::Gl(s), NullPoint::Gl { a, b }) => Ok(eval_phi(s, a, b)?.is_zero()),
        _ => Err(Error::InvalidRequest("point and setting are of different cases".into())),
    }
}

/// `Q(gT) = Q(T)` and `Q(Th) = hᵗ Q(T) h`. `g` is not required to be an
/// isometry, so a non-isometric `g` is a falsifying input.
pub fn check_equivariance_os(
    setting: &OrthSympSetting,
    t: &ExactMatrix,
    g: &ExactMatrix,
    h: &ExactMatrix,
) -> Result<bool> {
    let n = setting.n();
    check_shape("check_equivariance", g, (n, n))?;
    check_shape("check_equivariance", h, (setting.m, setting.m))?;
    if h.rank() < setting.m {
        return Err(Error::Singular);
    }
    let q = eval_q(setting, t)?;
    let left = eval_q(setting, &g.matmul(t)?)? == q;
    let right = eval_q(setting, &t.matmul(h)?)? == ExactMatrix::product(&[&h.transpose(), &q, h])?;
    Ok(left && right)
}

/// `φ(A g₂⁻¹, g₂ B) = φ(A, B)` and `φ(g₁ A, B g₃⁻¹) = g₁ φ(A, B) g₃⁻¹`.
pub fn check_equivariance_gl(
    setting: &GlSetting,
    a: &ExactMatrix,
    b: &ExactMatrix,
    g1: &ExactMatrix,
    g2: &ExactMatrix,
    g3: &ExactMatrix,
) -> Result<bool> {
    check_shape("check_equivariance", g1, (setting.s, setting.s))?;
    check_shape("check_equivariance", g2, (setting.n, setting.n))?;
    check_shape("check_equivariance", g3, (setting.m, setting.m))?;
    let g2_inv = g2.inverse()?;
    let g3_inv = g3.inverse()?;
    let phi = eval_phi(setting, a, b)?;
    let inner = eval_phi(setting, &a.matmul(&g2_inv)?, &g2.matmul(b)?)? == phi;
    let outer = eval_phi(setting, &g1.matmul(a)?, &b.matmul(&g3_inv)?)?
        == ExactMatrix::product(&[g1, &phi, &g3_inv])?;
    Ok(inner && outer)
}

/// A null `T` of exact rank `rank`: `T = B_U M` with `U` a sampled isotropic
/// subspace of dimension `rank` and `M` a random `rank × m` matrix of full
/// rank.
pub fn sample_null_os<R: Rng + ?Sized>(
    setting: &OrthSympSetting,
    rank: usize,
    rng: &mut R,
) -> Result<ExactMatrix> {
    if rank > setting.r() {
        return Err(Error::InfeasibleRank(format!(
            "null maps into dimension {} with {} columns have rank at most {}",
            setting.n(),
            setting.m,
            setting.r()
        )));
    }
    let u = sample_isotropic(&setting.v, rank, rng)?;
    let coeffs = random_matrix_of_rank(rank, setting.m, rank, rng)?;
    u.sub().basis().matmul(&coeffs)
}

/// A null pair with `rank A = rank_a`, `rank B = rank_b`: sample a flag
/// `U₁ ⊆ U₂` of dimensions `m`, `n - s`, put `Im B` inside `U₁` and `U₂`
/// inside `ker A`.
pub fn sample_null_gl<R: Rng + ?Sized>(
    setting: &GlSetting,
    rank_a: usize,
    rank_b: usize,
    rng: &mut R,
) -> Result<(ExactMatrix, ExactMatrix)> {
    let GlSetting { n, s, m } = *setting;
    if rank_a > s || rank_b > m {
        return Err(Error::InfeasibleRank(format!(
            "rank A = {rank_a} with s = {s}, rank B = {rank_b} with m = {m}"
        )));
    }
    let flag = sample_flag2(n, m, s, rng)?;
    let b = flag.u1().basis().matmul(&random_matrix_of_rank(m, m, rank_b, rng)?)?;
    let a = random_matrix_of_rank(s, s, rank_a, rng)?.matmul(&flag.u2().annihilator())?;
    Ok((a, b))
}

/// Null point of the largest possible rank(s) for the setting.
pub fn sample_null_max_rank<R: Rng + ?Sized>(setting: &Setting, rng: &mut R) -> Result<NullPoint> {
    match setting {
        Setting::Os(s) => Ok(NullPoint::Os { t: sample_null_os(s, s.r(), rng)? }),
        Setting::Gl(s) => {
            let (a, b) = sample_null_gl(s, s.s, s.m, rng)?;
            Ok(NullPoint::Gl { a, b })
        }
    }
}

/// Nullity of a linear map given as a closure on tuples of matrices of the
/// given shapes. The map is evaluated on every coordinate unit.
pub(crate) fn linear_nullity(
    shapes: &[(usize, usize)],
    f: impl Fn(&[ExactMatrix]) -> Result<Vec<ExactMatrix>>,
) -> Result<usize> {
    let zeros: Vec<ExactMatrix> = shapes.iter().map(|&(r, c)| ExactMatrix::zeros(r, c)).collect();
    let mut columns = Vec::new();
    for (slot, &(r, c)) in shapes.iter().enumerate() {
        for i in 0..r {
            for j in 0..c {
                let mut args = zeros.clone();
                args[slot] = ExactMatrix::from_fn(r, c, |a, b| {
                    if (a, b) == (i, j) {
                        GaussianRational::one()
                    } else {
                        GaussianRational::zero()
                    }
                });
                let image: Vec<GaussianRational> = f(&args)?
                    .iter()
                    .flat_map(|m| m.entries().iter().cloned())
                    .collect();
                columns.push(image);
            }
        }
    }
    if columns.is_empty() {
        return Ok(0);
    }
    if columns[0].is_empty() {
        return Ok(columns.len());
    }
    Ok(ExactMatrix::from_columns(&columns)?.nullity())
}

/// Dimension of the Zariski tangent space of the null cone at `point`: the
/// kernel of `X ↦ Xᵗ G T + Tᵗ G X` (OS) or `(X, Y) ↦ X B + A Y` (GL).
pub fn tangent_dim_at(setting: &Setting, point: &NullPoint) -> Result<usize> {
    if !is_null(setting, point)? {
        return Err(Error::NotNull);
    }
    match (setting, point) {
        (Setting::Os(s), NullPoint::Os { t }) => Ok(quadratic_differential(s.v.gram(), t)?.nullity()),
        (Setting::Gl(s), NullPoint::Gl { a, b }) => {
            linear_nullity(&[(s.s, s.n), (s.n, s.m)], |xy| {
                Ok(vec![xy[0].matmul(b)?.add(&a.matmul(&xy[1])?)?])
            })
        }
        _ => unreachable!("is_null rejects mixed cases"),
    }
}

/// Component of a maximal-rank null map for a symmetric form with `n = 2m`:
/// the label of `Im T` against `reference`.
pub fn component_label_null(
    setting: &OrthSympSetting,
    t: &ExactMatrix,
    reference: &IsotropicSubspace,
) -> Result<Component> {
    if setting.kind() != FormKind::Symmetric || setting.n() != 2 * setting.m {
        return Err(Error::InvalidRequest("components are labelled only for a symmetric form with n = 2m".into()));
    }
    if !eval_q(setting, t)?.is_zero() {
        return Err(Error::NotNull);
    }
    if t.rank() != setting.m {
        return Err(Error::InvalidRequest("component labels need a null map of rank m".into()));
    }
    let image = IsotropicSubspace::new(setting.v.clone(), Subspace::column_space(t))?;
    component_label(&image, reference)
}

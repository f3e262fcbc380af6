//! Resolutions of the three null cones and of the two-column nilpotent class
//! closures they map onto.
//!
//! Four resolution spaces are covered, named after the null cone they
//! resolve:
//!
//! * `nc0`: pairs `(T, U)` with `U ∈ J_r(V)` and `Im T ⊆ U`;
//! * `nc`: `(A, B, U₁, U₂)` with `Im B ⊆ U₁ ⊆ U₂ ⊆ ker A`,
//!   `dim U₁ = m`, `dim U₂ = n - s`;
//! * `nc1`: `(A, B, U)` with `dim U = m`;
//! * `nc2`: `(A, B, U)` with `dim U = n - s`.
//!
//! On the orbit side the matching spaces `p0`, `p`, `p1`, `p2` replace the
//! null point by an endomorphism `g` of `V`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{adjoint, BilinearForm, FormKind, FormedSpace};
use crate::isotropic::{
    component_label, dim_flag2, dim_grassmannian, dim_isotropic_grassmannian, is_isotropic,
    isotropic_extensions, sample_between, sample_flag2, sample_isotropic, Component,
    IsotropicSubspace,
};
use crate::matrix::ExactMatrix;
use crate::nullcone::{
    eval_q, is_null, linear_nullity, sample_null_gl, sample_null_os, GlSetting, NullPoint,
    OrthSympSetting, Setting,
};
use crate::random::{random_matrix_of_rank, MAX_ATTEMPTS};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Nc0,
    Nc,
    Nc1,
    Nc2,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Nc0, Variant::Nc, Variant::Nc1, Variant::Nc2];

    pub fn is_gl(self) -> bool {
        self != Variant::Nc0
    }

    /// Name of the matching orbit-side resolution.
    pub fn orbit_name(self) -> &'static str {
        match self {
            Variant::Nc0 => "p0",
            Variant::Nc => "p",
            Variant::Nc1 => "p1",
            Variant::Nc2 => "p2",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Nc0 => "nc0",
            Variant::Nc => "nc",
            Variant::Nc1 => "nc1",
            Variant::Nc2 => "nc2",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nc0" => Ok(Variant::Nc0),
            "nc" => Ok(Variant::Nc),
            "nc1" => Ok(Variant::Nc1),
            "nc2" => Ok(Variant::Nc2),
            other => Err(Error::InvalidRequest(format!("unknown variant {other:?}"))),
        }
    }
}

fn check_variant(variant: Variant, setting: &Setting) -> Result<()> {
    match (variant, setting) {
        (Variant::Nc0, Setting::Os(_)) => Ok(()),
        (v, Setting::Gl(_)) if v.is_gl() => Ok(()),
        _ => Err(Error::InvalidRequest(format!(
            "variant {variant} does not match the setting"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum ResolutionPoint {
    Nc0 { t: ExactMatrix, u: Subspace },
    Nc { a: ExactMatrix, b: ExactMatrix, u1: Subspace, u2: Subspace },
    Nc1 { a: ExactMatrix, b: ExactMatrix, u: Subspace },
    Nc2 { a: ExactMatrix, b: ExactMatrix, u: Subspace },
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidRequest(what.to_string()))
    }
}

/// `a` kills every vector of `u`.
fn killed_by(a: &ExactMatrix, u: &Subspace) -> Result<bool> {
    Ok(a.matmul(u.basis())?.is_zero())
}

impl ResolutionPoint {
    pub fn variant(&self) -> Variant {
        match self {
            ResolutionPoint::Nc0 { .. } => Variant::Nc0,
            ResolutionPoint::Nc { .. } => Variant::Nc,
            ResolutionPoint::Nc1 { .. } => Variant::Nc1,
            ResolutionPoint::Nc2 { .. } => Variant::Nc2,
        }
    }

    /// Checks every defining condition; the error names the first one that
    /// fails.
    pub fn validate(&self, setting: &Setting) -> Result<()> {
        check_variant(self.variant(), setting)?;
        require(is_null(setting, &mu(self))?, "null point is not null")?;
        match self {
            ResolutionPoint::Nc0 { t, u } => {
                let os = setting.os()?;
                require(u.ambient_dim() == os.n(), "U lives in the wrong space")?;
                require(u.dim() == os.r(), "dim U is not r")?;
                require(is_isotropic(os.space(), u)?, "U is not isotropic")?;
                require(u.contains_columns(t)?, "Im T is not inside U")
            }
            ResolutionPoint::Nc { a, b, u1, u2 } => {
                let gl = setting.gl()?;
                require(u1.ambient_dim() == gl.n() && u2.ambient_dim() == gl.n(), "flag lives in the wrong space")?;
                require(u1.dim() == gl.m() && u2.dim() == gl.n() - gl.s(), "flag has the wrong dimensions")?;
                require(u1.contains_columns(b)?, "Im B is not inside U1")?;
                require(u2.contains(u1)?, "U1 is not inside U2")?;
                require(killed_by(a, u2)?, "U2 is not inside ker A")
            }
            ResolutionPoint::Nc1 { a, b, u } | ResolutionPoint::Nc2 { a, b, u } => {
                let gl = setting.gl()?;
                let want = if self.variant() == Variant::Nc1 { gl.m() } else { gl.n() - gl.s() };
                require(u.ambient_dim() == gl.n(), "U lives in the wrong space")?;
                require(u.dim() == want, "U has the wrong dimension")?;
                require(u.contains_columns(b)?, "Im B is not inside U")?;
                require(killed_by(a, u)?, "U is not inside ker A")
            }
        }
    }

    pub fn is_valid(&self, setting: &Setting) -> Result<bool> {
        match self.validate(setting) {
            Ok(()) => Ok(true),
            Err(Error::InvalidRequest(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

/// Forgets the subspace data.
pub fn mu(point: &ResolutionPoint) -> NullPoint {
    match point {
        ResolutionPoint::Nc0 { t, .. } => NullPoint::Os { t: t.clone() },
        ResolutionPoint::Nc { a, b, .. }
        | ResolutionPoint::Nc1 { a, b, .. }
        | ResolutionPoint::Nc2 { a, b, .. } => NullPoint::Gl { a: a.clone(), b: b.clone() },
    }
}

fn null_os<'a>(setting: &Setting, point: &'a NullPoint) -> Result<&'a ExactMatrix> {
    if !is_null(setting, point)? {
        return Err(Error::NotNull);
    }
    match point {
        NullPoint::Os { t } => Ok(t),
        NullPoint::Gl { .. } => unreachable!("is_null rejects mixed cases"),
    }
}

fn null_gl<'a>(setting: &Setting, point: &'a NullPoint) -> Result<(&'a ExactMatrix, &'a ExactMatrix)> {
    if !is_null(setting, point)? {
        return Err(Error::NotNull);
    }
    match point {
        NullPoint::Gl { a, b } => Ok((a, b)),
        NullPoint::Os { .. } => unreachable!("is_null rejects mixed cases"),
    }
}

/// Target dimensions of the subspaces a GL variant attaches, `U₁` first.
fn gl_targets(variant: Variant, gl: &GlSetting) -> Vec<usize> {
    match variant {
        Variant::Nc => vec![gl.m(), gl.n() - gl.s()],
        Variant::Nc1 => vec![gl.m()],
        Variant::Nc2 => vec![gl.n() - gl.s()],
        Variant::Nc0 => unreachable!("not a GL variant"),
    }
}

/// Dimension of the fiber of a GL variant over a null pair with the given
/// ranks: a Grassmannian or two-step flag variety of `ker A / Im B`.
pub fn gl_fiber_dim_at_ranks(variant: Variant, gl: &GlSetting, rank_a: usize, rank_b: usize) -> Result<usize> {
    let quotient = gl.n() - rank_a - rank_b;
    match variant {
        Variant::Nc => dim_flag2(gl.m() - rank_b, gl.s() - rank_a, quotient),
        Variant::Nc1 => dim_grassmannian(gl.m() - rank_b, quotient),
        Variant::Nc2 => dim_grassmannian(gl.n() - gl.s() - rank_b, quotient),
        Variant::Nc0 => Err(Error::InvalidRequest("not a GL variant".into())),
    }
}

/// Dimension of `μ⁻¹(point)`. For `nc0` this is `dim J_{r-k}` of a formed
/// space of dimension `n - 2k`, `k = rank T`; note that a zero-dimensional
/// fiber of `nc0` still has two points when the form is symmetric and
/// `n - 2k = 2(r - k) > 0`.
pub fn fiber_dim_over(variant: Variant, setting: &Setting, point: &NullPoint) -> Result<usize> {
    check_variant(variant, setting)?;
    match variant {
        Variant::Nc0 => {
            let os = setting.os()?;
            let k = null_os(setting, point)?.rank();
            dim_isotropic_grassmannian(os.n() - 2 * k, os.r() - k, os.kind())
        }
        _ => {
            let (a, b) = null_gl(setting, point)?;
            gl_fiber_dim_at_ranks(variant, setting.gl()?, a.rank(), b.rank())
        }
    }
}

/// The subspace of dimension `d` between `Im B` and `ker A` when there is
/// only one.
fn forced(d: usize, image: &Subspace, kernel: &Subspace) -> Option<Subspace> {
    if d == image.dim() {
        Some(image.clone())
    } else if d == kernel.dim() {
        Some(kernel.clone())
    } else {
        None
    }
}

/// The single point of `μ⁻¹(point)`. For `nc0` this requires `rank T = r`
/// and returns `U = Im T`; for the GL variants it requires the fiber to be a
/// point (always the case at full ranks, where `U₁ = Im B` and `U₂ = ker A`).
pub fn unique_preimage(variant: Variant, setting: &Setting, point: &NullPoint) -> Result<ResolutionPoint> {
    check_variant(variant, setting)?;
    if variant == Variant::Nc0 {
        let os = setting.os()?;
        let t = null_os(setting, point)?;
        let k = t.rank();
        if k != os.r() {
            return Err(Error::NotUnique(format!(
                "rank T = {k} < r = {}: every maximal isotropic subspace containing Im T is a preimage",
                os.r()
            )));
        }
        return Ok(ResolutionPoint::Nc0 { t: t.clone(), u: Subspace::column_space(t) });
    }
    let gl = setting.gl()?;
    let (a, b) = null_gl(setting, point)?;
    let image = Subspace::column_space(b);
    let kernel = Subspace::kernel(a);
    let mut chosen = Vec::new();
    for d in gl_targets(variant, gl) {
        match forced(d, &image, &kernel) {
            Some(u) => chosen.push(u),
            None => {
                return Err(Error::NotUnique(format!(
                    "rank A = {}, rank B = {}: fiber of dimension {}",
                    a.rank(),
                    b.rank(),
                    gl_fiber_dim_at_ranks(variant, gl, a.rank(), b.rank())?
                )))
            }
        }
    }
    let (a, b) = (a.clone(), b.clone());
    let mut it = chosen.into_iter();
    let first = it.next().expect("at least one target");
    Ok(match variant {
        Variant::Nc => ResolutionPoint::Nc { a, b, u1: first, u2: it.next().expect("two targets") },
        Variant::Nc1 => ResolutionPoint::Nc1 { a, b, u: first },
        Variant::Nc2 => ResolutionPoint::Nc2 { a, b, u: first },
        Variant::Nc0 => unreachable!(),
    })
}

/// Two distinct points of `μ⁻¹(point)` when the preimage is not unique.
pub fn fiber_witnesses<R: Rng + ?Sized>(
    variant: Variant,
    setting: &Setting,
    point: &NullPoint,
    rng: &mut R,
) -> Result<(ResolutionPoint, ResolutionPoint)> {
    match unique_preimage(variant, setting, point) {
        Err(Error::NotUnique(_)) => {}
        Ok(_) => return Err(Error::InvalidRequest("the fiber is a single point".into())),
        Err(e) => return Err(e),
    }
    if variant == Variant::Nc0 {
        let os = setting.os()?;
        let t = null_os(setting, point)?;
        let (u, v) = isotropic_extensions(os.space(), &Subspace::column_space(t), os.r(), rng)?;
        return Ok((
            ResolutionPoint::Nc0 { t: t.clone(), u },
            ResolutionPoint::Nc0 { t: t.clone(), u: v },
        ));
    }
    for _ in 0..MAX_ATTEMPTS {
        let first = sample_fiber_point(variant, setting, point, rng)?;
        let second = sample_fiber_point(variant, setting, point, rng)?;
        if first != second {
            return Ok((first, second));
        }
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}

/// A random point of the fiber of a GL variant over `point`.
fn sample_fiber_point<R: Rng + ?Sized>(
    variant: Variant,
    setting: &Setting,
    point: &NullPoint,
    rng: &mut R,
) -> Result<ResolutionPoint> {
    let gl = setting.gl()?;
    let (a, b) = null_gl(setting, point)?;
    let image = Subspace::column_space(b);
    let kernel = Subspace::kernel(a);
    let (a, b) = (a.clone(), b.clone());
    Ok(match variant {
        Variant::Nc => {
            let u1 = sample_between(&image, &kernel, gl.m(), rng)?;
            let u2 = sample_between(&u1, &kernel, gl.n() - gl.s(), rng)?;
            ResolutionPoint::Nc { a, b, u1, u2 }
        }
        Variant::Nc1 => ResolutionPoint::Nc1 { a, b, u: sample_between(&image, &kernel, gl.m(), rng)? },
        Variant::Nc2 => ResolutionPoint::Nc2 {
            a,
            b,
            u: sample_between(&image, &kernel, gl.n() - gl.s(), rng)?,
        },
        Variant::Nc0 => unreachable!(),
    })
}

/// Dimension of the base: `J_r(V)`, the flag variety, `Gr(m, n)` or
/// `Gr(n - s, n)`.
pub fn base_dim(variant: Variant, setting: &Setting) -> Result<usize> {
    check_variant(variant, setting)?;
    match setting {
        Setting::Os(os) => dim_isotropic_grassmannian(os.n(), os.r(), os.kind()),
        Setting::Gl(gl) => match variant {
            Variant::Nc => dim_flag2(gl.m(), gl.s(), gl.n()),
            Variant::Nc1 => dim_grassmannian(gl.m(), gl.n()),
            _ => dim_grassmannian(gl.n() - gl.s(), gl.n()),
        },
    }
}

/// Dimension of the vector bundle fiber over a base point: `mr`,
/// `s² + m²`, `m² + s(n - m)`, `m(n - s) + s²`.
pub fn fiber_dim(variant: Variant, setting: &Setting) -> Result<usize> {
    check_variant(variant, setting)?;
    Ok(match setting {
        Setting::Os(os) => os.m() * os.r(),
        Setting::Gl(gl) => {
            let (n, s, m) = (gl.n(), gl.s(), gl.m());
            match variant {
                Variant::Nc => s * s + m * m,
                Variant::Nc1 => m * m + s * (n - m),
                _ => m * (n - s) + s * s,
            }
        }
    })
}

/// `base_dim + fiber_dim`. For `nc0` this is `r(2m + 2n - 3r - 1)/2` when the
/// form is symmetric and `r(2m + 2n - 3r + 1)/2` when it is symplectic; the
/// GL variants all give `sn + mn - sm`.
pub fn dim_resolution_total(variant: Variant, setting: &Setting) -> Result<usize> {
    Ok(base_dim(variant, setting)? + fiber_dim(variant, setting)?)
}

/// Subspace data of a random base point.
enum Base {
    One(Subspace),
    Two(Subspace, Subspace),
}

fn sample_base<R: Rng + ?Sized>(variant: Variant, setting: &Setting, rng: &mut R) -> Result<Base> {
    check_variant(variant, setting)?;
    match setting {
        Setting::Os(os) => Ok(Base::One(sample_isotropic(os.space(), os.r(), rng)?.sub().clone())),
        Setting::Gl(gl) => {
            let flag = sample_flag2(gl.n(), gl.m(), gl.s(), rng)?;
            Ok(match variant {
                Variant::Nc => Base::Two(flag.u1().clone(), flag.u2().clone()),
                Variant::Nc1 => Base::One(flag.u1().clone()),
                _ => Base::One(flag.u2().clone()),
            })
        }
    }
}

/// Fiber dimension measured at a random base point as the nullity of the
/// linear conditions cutting out the fiber: `Im T ⊆ U`, or `Im B ⊆ U₁` and
/// `U₂ ⊆ ker A` (one-step variants: the same with a single `U`).
pub fn fiber_dim_oracle<R: Rng + ?Sized>(variant: Variant, setting: &Setting, rng: &mut R) -> Result<usize> {
    let base = sample_base(variant, setting, rng)?;
    match (setting, base) {
        (Setting::Os(os), Base::One(u)) => {
            let cut = u.annihilator();
            linear_nullity(&[(os.n(), os.m())], |x| Ok(vec![cut.matmul(&x[0])?]))
        }
        (Setting::Gl(gl), base) => {
            let (inner, outer) = match base {
                Base::Two(u1, u2) => (u1, u2),
                Base::One(u) => (u.clone(), u),
            };
            let cut = inner.annihilator();
            linear_nullity(&[(gl.s(), gl.n()), (gl.n(), gl.m())], |ab| {
                Ok(vec![ab[0].matmul(outer.basis())?, cut.matmul(&ab[1])?])
            })
        }
        _ => unreachable!("sample_base matches the setting"),
    }
}

/// A random point of the resolution space with null point of maximal rank:
/// a random base point and a random full-rank element of the fiber over it.
pub fn sample_resolution_point<R: Rng + ?Sized>(
    variant: Variant,
    setting: &Setting,
    rng: &mut R,
) -> Result<ResolutionPoint> {
    check_variant(variant, setting)?;
    match setting {
        Setting::Os(os) => {
            let u = sample_isotropic(os.space(), os.r(), rng)?.sub().clone();
            let coeffs = random_matrix_of_rank(os.r(), os.m(), os.r(), rng)?;
            Ok(ResolutionPoint::Nc0 { t: u.basis().matmul(&coeffs)?, u })
        }
        Setting::Gl(gl) => {
            let flag = sample_flag2(gl.n(), gl.m(), gl.s(), rng)?;
            let b = flag.u1().basis().matmul(&random_matrix_of_rank(gl.m(), gl.m(), gl.m(), rng)?)?;
            let a = random_matrix_of_rank(gl.s(), gl.s(), gl.s(), rng)?.matmul(&flag.u2().annihilator())?;
            let (u1, u2) = (flag.u1().clone(), flag.u2().clone());
            Ok(match variant {
                Variant::Nc => ResolutionPoint::Nc { a, b, u1, u2 },
                Variant::Nc1 => ResolutionPoint::Nc1 { a, b, u: u1 },
                _ => ResolutionPoint::Nc2 { a, b, u: u2 },
            })
        }
    }
}

/// A null point whose preimage is not unique: rank `r - 1` for `nc0`, and for
/// the GL variants a random rank pair whose fiber has positive dimension.
pub fn sample_deficient_null<R: Rng + ?Sized>(
    variant: Variant,
    setting: &Setting,
    rng: &mut R,
) -> Result<NullPoint> {
    check_variant(variant, setting)?;
    match setting {
        Setting::Os(os) => {
            if os.r() == 0 {
                return Err(Error::InfeasibleRank("r = 0 leaves no deficient rank".into()));
            }
            Ok(NullPoint::Os { t: sample_null_os(os, os.r() - 1, rng)? })
        }
        Setting::Gl(gl) => {
            let mut pairs = Vec::new();
            for ra in 0..=gl.s() {
                for rb in 0..=gl.m() {
                    if gl_fiber_dim_at_ranks(variant, gl, ra, rb)? > 0 {
                        pairs.push((ra, rb));
                    }
                }
            }
            if pairs.is_empty() {
                return Err(Error::InfeasibleRank(format!(
                    "every fiber of {variant} is a single point for this setting"
                )));
            }
            let (ra, rb) = pairs[rng.gen_range(0..pairs.len())];
            let (a, b) = sample_null_gl(gl, ra, rb, rng)?;
            Ok(NullPoint::Gl { a, b })
        }
    }
}

/// Validates the hypotheses of the orthogonal/symplectic quotient: `W` has the
/// opposite kind and dimension `m`, and `n ≥ 2m`.
fn check_quotient_os(setting: &OrthSympSetting, w: &FormedSpace) -> Result<()> {
    if w.kind() != setting.kind().opposite() || w.dim() != setting.m() {
        return Err(Error::InvalidRequest(
            "W must carry the opposite kind of form and have dimension m".into(),
        ));
    }
    if setting.n() < 2 * setting.m() {
        return Err(Error::InvalidRequest("the quotient needs n >= 2m".into()));
    }
    Ok(())
}

/// `R(T) = T T*`, an element of `g(V)`.
pub fn quotient_r(setting: &OrthSympSetting, t: &ExactMatrix, w: &FormedSpace) -> Result<ExactMatrix> {
    check_quotient_os(setting, w)?;
    eval_q(setting, t)?;
    t.matmul(&adjoint(t, w, setting.space())?)
}

/// `Q̃(T) = T* T`, an element of `g(W)`; it equals `G_W⁻¹ Q(T)`.
pub fn quotient_qtilde(setting: &OrthSympSetting, t: &ExactMatrix, w: &FormedSpace) -> Result<ExactMatrix> {
    check_quotient_os(setting, w)?;
    eval_q(setting, t)?;
    adjoint(t, w, setting.space())?.matmul(t)
}

fn check_quotient_gl(setting: &GlSetting) -> Result<()> {
    if setting.s() != setting.m() {
        return Err(Error::InvalidRequest("the quotient BA needs s = m".into()));
    }
    Ok(())
}

/// `(A, B) ↦ BA`.
pub fn quotient_ba(setting: &GlSetting, a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    check_quotient_gl(setting)?;
    crate::nullcone::eval_phi(setting, a, b)?;
    b.matmul(a)
}

/// `g ∈ g(V)`, `rank g ≤ m` and `Im g` isotropic.
pub fn in_orbit_closure_os(g: &ExactMatrix, m: usize, space: &FormedSpace) -> Result<bool> {
    Ok(space.in_lie_algebra(g)?
        && g.rank() <= m
        && is_isotropic(space, &Subspace::column_space(g))?)
}

/// `g² = 0` and `rank g ≤ m`.
pub fn in_orbit_closure_gl(g: &ExactMatrix, m: usize) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::dim("in_orbit_closure_gl", "square", format!("{:?}", g.shape())));
    }
    Ok(g.matmul(g)?.is_zero() && g.rank() <= m)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum OrbitPoint {
    P0 { g: ExactMatrix, u: Subspace },
    P { g: ExactMatrix, u1: Subspace, u2: Subspace },
    P1 { g: ExactMatrix, u: Subspace },
    P2 { g: ExactMatrix, u: Subspace },
}

impl OrbitPoint {
    pub fn g(&self) -> &ExactMatrix {
        match self {
            OrbitPoint::P0 { g, .. }
            | OrbitPoint::P { g, .. }
            | OrbitPoint::P1 { g, .. }
            | OrbitPoint::P2 { g, .. } => g,
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            OrbitPoint::P0 { .. } => Variant::Nc0,
            OrbitPoint::P { .. } => Variant::Nc,
            OrbitPoint::P1 { .. } => Variant::Nc1,
            OrbitPoint::P2 { .. } => Variant::Nc2,
        }
    }
}

/// The orbit side lives on `V` with `m = dim W` (OS) or `m = s` (GL).
fn check_orbit_setting(variant: Variant, setting: &Setting) -> Result<()> {
    check_variant(variant, setting)?;
    match setting {
        Setting::Os(os) => require(os.n() >= 2 * os.m(), "the orbit side needs n >= 2m"),
        Setting::Gl(gl) => check_quotient_gl(gl),
    }
}

/// Every defining condition of an orbit-side point: `p0`: `g` in the class
/// closure, `U ∈ J_m(V)`, `Im g ⊆ U`; `p`: `Im g ⊆ U₁ ⊆ U₂ ⊆ ker g` with
/// dimensions `m`, `n - m`; `p1`/`p2`: `Im g ⊆ U ⊆ ker g` with `dim U = m` or
/// `n - m`.
pub fn orbit_point_valid(setting: &Setting, point: &OrbitPoint) -> Result<bool> {
    let variant = point.variant();
    check_orbit_setting(variant, setting)?;
    let (n, m) = (setting.n(), setting.m());
    let g = point.g();
    if g.shape() != (n, n) {
        return Ok(false);
    }
    let image_in = |u: &Subspace| -> Result<bool> { Ok(u.ambient_dim() == n && u.contains_columns(g)?) };
    Ok(match point {
        OrbitPoint::P0 { u, .. } => {
            let space = setting.os()?.space();
            in_orbit_closure_os(g, m, space)? && u.dim() == m && image_in(u)? && is_isotropic(space, u)?
        }
        OrbitPoint::P { u1, u2, .. } => {
            u1.dim() == m
                && u2.dim() == n - m
                && image_in(u1)?
                && u2.ambient_dim() == n
                && u2.contains(u1)?
                && killed_by(g, u2)?
        }
        OrbitPoint::P1 { u, .. } | OrbitPoint::P2 { u, .. } => {
            let want = if variant == Variant::Nc1 { m } else { n - m };
            u.dim() == want && image_in(u)? && killed_by(g, u)?
        }
    })
}

/// Dimension of the orbit-side fiber over `g`: `J_{m-k}` of a formed space of
/// dimension `n - 2k` (`p0`), or a Grassmannian or flag variety of
/// `ker g / Im g` (`k = rank g`).
pub fn orbit_fiber_dim_over(variant: Variant, setting: &Setting, g: &ExactMatrix) -> Result<usize> {
    check_orbit_setting(variant, setting)?;
    let (n, m) = (setting.n(), setting.m());
    let k = g.rank();
    if k > m {
        return Err(Error::InvalidRequest(format!("rank g = {k} exceeds m = {m}")));
    }
    let quotient = n - 2 * k;
    match variant {
        Variant::Nc0 => dim_isotropic_grassmannian(quotient, m - k, setting.os()?.kind()),
        Variant::Nc => dim_flag2(m - k, m - k, quotient),
        Variant::Nc1 => dim_grassmannian(m - k, quotient),
        Variant::Nc2 => dim_grassmannian(n - m - k, quotient),
    }
}

/// The single orbit-side point over `g` with `rank g = m`: `U = Im g` for
/// `p0`/`p1`, `U = ker g` for `p2`, `(Im g, ker g)` for `p`. The rank forces
/// `dim Im g = m` and `dim ker g = n - m`, so these are the only subspaces of
/// the required dimensions between `Im g` and `ker g`.
pub fn orbit_unique_preimage(variant: Variant, setting: &Setting, g: &ExactMatrix) -> Result<OrbitPoint> {
    check_orbit_setting(variant, setting)?;
    let m = setting.m();
    let closure = match setting {
        Setting::Os(os) => in_orbit_closure_os(g, m, os.space())?,
        Setting::Gl(_) => in_orbit_closure_gl(g, m)?,
    };
    if !closure {
        return Err(Error::InvalidRequest("g is not in the class closure".into()));
    }
    let k = g.rank();
    if k != m {
        return Err(Error::NotUnique(format!("rank g = {k} < m = {m}")));
    }
    let image = Subspace::column_space(g);
    let kernel = Subspace::kernel(g);
    let g = g.clone();
    let point = match variant {
        Variant::Nc0 => OrbitPoint::P0 { g, u: image },
        Variant::Nc => OrbitPoint::P { g, u1: image, u2: kernel },
        Variant::Nc1 => OrbitPoint::P1 { g, u: image },
        Variant::Nc2 => OrbitPoint::P2 { g, u: kernel },
    };
    debug_assert!(orbit_point_valid(setting, &point)?);
    Ok(point)
}

/// Dimension of the fiber of the orbit-side bundle over a base point:
/// `m(m-1)/2` (symmetric `V`) or `m(m+1)/2` (symplectic `V`) for `p0`, `m²`
/// for `p`, `m(n - m)` for `p1` and `p2`.
pub fn orbit_bundle_fiber_dim(variant: Variant, setting: &Setting) -> Result<usize> {
    check_orbit_setting(variant, setting)?;
    let (n, m) = (setting.n(), setting.m());
    Ok(match variant {
        Variant::Nc0 => match setting.os()?.kind() {
            FormKind::Symmetric => m * (m - 1) / 2,
            FormKind::Symplectic => m * (m + 1) / 2,
        },
        Variant::Nc => m * m,
        Variant::Nc1 | Variant::Nc2 => m * (n - m),
    })
}

/// Nullity of the linear conditions on `g` defining the orbit-side fiber at a
/// random base point: `g ∈ g(V)` and `Im g ⊆ U` (`p0`), or
/// `Im g ⊆ U₁`, `U₂ ⊆ ker g`.
pub fn orbit_bundle_fiber_dim_oracle<R: Rng + ?Sized>(
    variant: Variant,
    setting: &Setting,
    rng: &mut R,
) -> Result<usize> {
    check_orbit_setting(variant, setting)?;
    let (n, m) = (setting.n(), setting.m());
    let shape = [(n, n)];
    match setting {
        Setting::Os(os) => {
            let space = os.space();
            let u = sample_isotropic(space, m, rng)?.sub().clone();
            let cut = u.annihilator();
            let gram = space.gram();
            linear_nullity(&shape, |x| {
                let g = &x[0];
                let lie = g.transpose().matmul(gram)?.add(&gram.matmul(g)?)?;
                Ok(vec![lie, cut.matmul(g)?])
            })
        }
        Setting::Gl(_) => {
            let flag = sample_flag2(n, m, m, rng)?;
            let (inner, outer) = match variant {
                Variant::Nc => (flag.u1().clone(), flag.u2().clone()),
                Variant::Nc1 => (flag.u1().clone(), flag.u1().clone()),
                _ => (flag.u2().clone(), flag.u2().clone()),
            };
            let cut = inner.annihilator();
            linear_nullity(&shape, |x| Ok(vec![cut.matmul(&x[0])?, x[0].matmul(outer.basis())?]))
        }
    }
}

/// `(2 dim Gr(m, n), dim Gr(m, n) + fiber)` with the `p1` fiber measured by
/// [`orbit_bundle_fiber_dim_oracle`]; the two agree when the `p1` space has
/// the dimension of the cotangent bundle of `Gr(m, n)`.
pub fn cotangent_dimension_check<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<(usize, usize)> {
    let setting = Setting::Gl(GlSetting::new(n, m, m)?);
    let base = dim_grassmannian(m, n)?;
    let fiber = orbit_bundle_fiber_dim_oracle(Variant::Nc1, &setting, rng)?;
    Ok((2 * base, base + fiber))
}

/// Lifts an interior point `g` (`g² = 0`, `rank g = m`) of the GL class
/// closure to `(A, B)` with `BA = g` and `AB = 0`: `B` is the canonical basis
/// of `Im g` and `A` the unique solution of `BA = g`.
pub fn orbit_lift_gl(setting: &GlSetting, g: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    check_quotient_gl(setting)?;
    if !in_orbit_closure_gl(g, setting.m())? || g.rank() != setting.m() {
        return Err(Error::InvalidRequest("g is not an interior point of the class closure".into()));
    }
    let b = Subspace::column_space(g).basis().clone();
    let a = b
        .solve(g)?
        .ok_or_else(|| Error::InvalidRequest("g does not factor through its image".into()))?;
    Ok((a, b))
}

/// Lifts an interior point `g` of the OS class closure to `T` with
/// `T T* = g`. With `B` a basis of `Im g`, write `g = B K Bᵗ G_V`; then
/// `T = B P` for any `P` with `P G_W⁻¹ Pᵗ = K`, found by bringing `K` and
/// `G_W⁻¹` to standard form. For a symplectic `V` both are symmetric and the
/// congruence may need square roots outside `Q(i)`, in which case this
/// reports [`Error::InvalidRequest`].
pub fn orbit_lift_os(setting: &OrthSympSetting, w: &FormedSpace, g: &ExactMatrix) -> Result<ExactMatrix> {
    check_quotient_os(setting, w)?;
    let space = setting.space();
    let m = setting.m();
    if !in_orbit_closure_os(g, m, space)? || g.rank() != m {
        return Err(Error::InvalidRequest("g is not an interior point of the class closure".into()));
    }
    let b = Subspace::column_space(g).basis().clone();
    let c = b.transpose().matmul(space.gram())?;
    let not_factored = || Error::InvalidRequest("g does not factor as B K Bᵗ G".into());
    let x = b.solve(g)?.ok_or_else(not_factored)?;
    let k = c.transpose().solve(&x.transpose())?.ok_or_else(not_factored)?.transpose();
    let k_space: FormedSpace = BilinearForm::new(w.kind(), k)?.into();
    let m_space: FormedSpace = BilinearForm::new(w.kind(), w.gram().inverse()?)?.into();
    let q_k = k_space.standardizing_basis()?;
    let q_m = m_space.standardizing_basis()?;
    let p = q_k.inverse()?.transpose().matmul(&q_m.transpose())?;
    let t = b.matmul(&p)?;
    if quotient_r(setting, &t, w)? != *g {
        return Err(Error::InvalidRequest("lift failed to reproduce g".into()));
    }
    Ok(t)
}

/// A random interior point of the class closure, built as the quotient of a
/// random null point of maximal rank.
pub fn sample_orbit_interior<R: Rng + ?Sized>(
    setting: &Setting,
    w: Option<&FormedSpace>,
    rng: &mut R,
) -> Result<ExactMatrix> {
    match setting {
        Setting::Os(os) => {
            let w = w.ok_or_else(|| Error::InvalidRequest("the quotient R needs W".into()))?;
            check_quotient_os(os, w)?;
            let t = sample_null_os(os, os.m(), rng)?;
            quotient_r(os, &t, w)
        }
        Setting::Gl(gl) => {
            check_quotient_gl(gl)?;
            let (a, b) = sample_null_gl(gl, gl.m(), gl.m(), rng)?;
            quotient_ba(gl, &a, &b)
        }
    }
}

/// The square from the resolution to the orbit side: the point
/// `(g, subspaces)` with `g = T T*` or `g = BA` is a valid orbit-side point,
/// and forgetting its subspaces gives the quotient of `μ(point)`.
pub fn check_diagram(setting: &Setting, w: Option<&FormedSpace>, point: &ResolutionPoint) -> Result<bool> {
    if !point.is_valid(setting)? {
        return Ok(false);
    }
    let via_mu = match (setting, mu(point)) {
        (Setting::Os(os), NullPoint::Os { t }) => {
            let w = w.ok_or_else(|| Error::InvalidRequest("the quotient R needs W".into()))?;
            quotient_r(os, &t, w)?
        }
        (Setting::Gl(gl), NullPoint::Gl { a, b }) => quotient_ba(gl, &a, &b)?,
        _ => unreachable!("validated"),
    };
    let induced = match point {
        ResolutionPoint::Nc0 { t, u } => {
            let w = w.expect("checked above");
            let g = t.matmul(&adjoint(t, w, setting.os()?.space())?)?;
            OrbitPoint::P0 { g, u: u.clone() }
        }
        ResolutionPoint::Nc { a, b, u1, u2 } => OrbitPoint::P { g: b.matmul(a)?, u1: u1.clone(), u2: u2.clone() },
        ResolutionPoint::Nc1 { a, b, u } => OrbitPoint::P1 { g: b.matmul(a)?, u: u.clone() },
        ResolutionPoint::Nc2 { a, b, u } => OrbitPoint::P2 { g: b.matmul(a)?, u: u.clone() },
    };
    Ok(orbit_point_valid(setting, &induced)? && *induced.g() == via_mu)
}

/// `q₁(A, B, U₁, U₂) = (A, B, U₁)` and `q₂(A, B, U₁, U₂) = (A, B, U₂)` land in
/// the one-step spaces, and `μ₁ q₁ = μ₂ q₂ = μ`.
pub fn check_q_triangle(setting: &Setting, point: &ResolutionPoint) -> Result<bool> {
    let ResolutionPoint::Nc { a, b, u1, u2 } = point else {
        return Err(Error::InvalidRequest("the triangle starts from an nc point".into()));
    };
    if !point.is_valid(setting)? {
        return Ok(false);
    }
    let q1 = ResolutionPoint::Nc1 { a: a.clone(), b: b.clone(), u: u1.clone() };
    let q2 = ResolutionPoint::Nc2 { a: a.clone(), b: b.clone(), u: u2.clone() };
    let base = mu(point);
    Ok(q1.is_valid(setting)? && q2.is_valid(setting)? && mu(&q1) == base && mu(&q2) == base)
}

/// Whether `g` kills `U` and squares to zero. Holds whenever `g ∈ g(V)` and
/// `Im g ⊆ U` with `U` isotropic.
pub fn f0_nilpotency_check(g: &ExactMatrix, u: &IsotropicSubspace) -> Result<bool> {
    let n = u.space().dim();
    if g.shape() != (n, n) {
        return Err(Error::dim("f0_nilpotency_check", format!("({n}, {n})"), format!("{:?}", g.shape())));
    }
    Ok(killed_by(g, u.sub())? && g.matmul(g)?.is_zero())
}

/// Which of the two classes of the very even orbit (`n = 2m`, symmetric
/// form) contains an interior point `g`: the component label of `Im g`.
pub fn very_even_split(g: &ExactMatrix, setting: &OrthSympSetting, reference: &IsotropicSubspace) -> Result<Component> {
    let m = setting.m();
    if setting.kind() != FormKind::Symmetric || setting.n() != 2 * m {
        return Err(Error::InvalidRequest("the very even case needs a symmetric form with n = 2m".into()));
    }
    if !in_orbit_closure_os(g, m, setting.space())? || g.rank() != m {
        return Err(Error::InvalidRequest("g is not an interior point of the class closure".into()));
    }
    let image = IsotropicSubspace::new(setting.space().clone(), Subspace::column_space(g))?;
    component_label(&image, reference)
}

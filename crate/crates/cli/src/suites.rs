//! Seeded property suites. Trial `k` of a run with master seed `s` uses its
//! own generator seeded with `trial_seed(s, k)`, so trials are independent of
//! scheduling and any failing trial can be replayed alone.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use nullcone::forms::DetSign;
use nullcone::isotropic::{
    component_label, dim_flag2, dim_isotropic_grassmannian_uniform, sample_isotropic,
    tangent_dim_isotropic_at, IsotropicSubspace,
};
use nullcone::nullcone::{
    check_equivariance_gl, check_equivariance_os, component_label_null, eval_q,
    sample_null_gl, sample_null_max_rank, sample_null_os, tangent_dim_at, NullPoint, Setting,
};
use nullcone::random::{random_invertible, random_matrix, rng_from_seed, trial_seed, SeededRng};
use nullcone::resolutions::{
    check_diagram, check_q_triangle, cotangent_dimension_check, dim_resolution_total,
    f0_nilpotency_check, fiber_witnesses, in_orbit_closure_gl, in_orbit_closure_os, mu,
    orbit_fiber_dim_over, orbit_lift_gl, orbit_lift_os, orbit_point_valid, orbit_unique_preimage,
    quotient_ba, quotient_qtilde, quotient_r, sample_deficient_null, sample_orbit_interior,
    sample_resolution_point, unique_preimage, OrbitPoint, ResolutionPoint, Variant,
};
use nullcone::subspace::Subspace;
use nullcone::Error;

use crate::params::{Kind, Params};
use crate::report::{Failure, SuiteReport};
use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    /// Tangent oracle against the dimension of the resolution at maximal rank.
    Dimension,
    /// Invariance and equivariance of the quotient maps under the groups.
    Equivariance,
    /// Round trips through the unique preimage at maximal rank.
    Birationality,
    /// Two distinct preimages over rank-deficient points.
    Fibers,
    /// The quotient maps land in the class closure.
    Quotient,
    /// Resolution-to-orbit squares and the q₁/q₂ triangle.
    Diagrams,
    /// Component labels under isometries of either determinant.
    Components,
    /// Single-point orbit-side fibers over interior points.
    OrbitFibers,
    /// Cotangent bundle dimension count.
    Cotangent,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Dimension => "dimension",
            Suite::Equivariance => "equivariance",
            Suite::Birationality => "birationality",
            Suite::Fibers => "fibers",
            Suite::Quotient => "quotient",
            Suite::Diagrams => "diagrams",
            Suite::Components => "components",
            Suite::OrbitFibers => "orbit-fibers",
            Suite::Cotangent => "cotangent",
        }
    }
}

enum Outcome {
    Pass,
    Fail { description: String, witnesses: Value },
}

fn fail(description: impl Into<String>, witnesses: Value) -> Outcome {
    Outcome::Fail { description: description.into(), witnesses }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

type Trial = fn(&Params, &Setting, &mut SeededRng) -> Result<Outcome, Error>;

/// Runs `trials` seeded trials of `suite` on one grid cell.
pub fn run_suite(suite: Suite, params: &Params, trials: usize, seed: u64) -> CliResult<SuiteReport> {
    let start = Instant::now();
    let setting = params.setting()?;
    check_applicable(suite, params)?;
    let trial: Trial = match suite {
        Suite::Dimension => dimension_trial,
        Suite::Equivariance => equivariance_trial,
        Suite::Birationality => birationality_trial,
        Suite::Fibers => fibers_trial,
        Suite::Quotient => quotient_trial,
        Suite::Diagrams => diagrams_trial,
        Suite::Components => components_trial,
        Suite::OrbitFibers => orbit_fibers_trial,
        Suite::Cotangent => cotangent_trial,
    };
    let mut outcomes: Vec<(usize, u64, Outcome)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let s = trial_seed(seed, k as u64);
            let mut rng = rng_from_seed(s);
            let outcome = trial(params, &setting, &mut rng).unwrap_or_else(|e| {
                fail(format!("library error: {e}"), Value::Null)
            });
            (k, s, outcome)
        })
        .collect();
    outcomes.sort_by_key(|(k, _, _)| *k);
    let mut failures = Vec::new();
    for (trial, seed, outcome) in outcomes {
        if let Outcome::Fail { description, witnesses } = outcome {
            failures.push(Failure { trial, seed, description, witnesses });
        }
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        parameters: params.clone(),
        seed,
        trials,
        passes: trials - failures.len(),
        failures,
        notes: notes(suite, params, seed)?,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn check_applicable(suite: Suite, params: &Params) -> CliResult<()> {
    let variant = params.variant()?;
    let usage = |msg: &str| Err(CliError::Usage(format!("suite {}: {msg}", suite.name())));
    match suite {
        Suite::Quotient | Suite::Diagrams | Suite::OrbitFibers => match params.kind {
            Kind::Gl if params.s != Some(params.m) => usage("needs s = m"),
            Kind::Orth | Kind::Symp if params.n < 2 * params.m => usage("needs n >= 2m"),
            Kind::Orth if params.m % 2 == 1 => usage("needs m even for an orthogonal V"),
            _ => Ok(()),
        },
        Suite::Components if params.kind != Kind::Orth || params.n != 2 * params.m => {
            usage("needs --kind orth and n = 2m")
        }
        Suite::Cotangent if params.kind != Kind::Gl || params.s != Some(params.m) => {
            usage("needs --kind gl and s = m")
        }
        Suite::Fibers if variant == Variant::Nc0 && params.m.min(params.n / 2) == 0 => usage("needs r >= 1"),
        _ => Ok(()),
    }
}

/// Deterministic observations attached to a report.
fn notes(suite: Suite, params: &Params, seed: u64) -> CliResult<Vec<String>> {
    if suite != Suite::Dimension || params.kind != Kind::Symp {
        return Ok(Vec::new());
    }
    let setting = params.setting()?;
    let os = setting.os()?;
    let mut rng = rng_from_seed(trial_seed(seed, u64::MAX));
    let u = sample_isotropic(os.space(), os.r(), &mut rng)?;
    let oracle = tangent_dim_isotropic_at(&u)?;
    let uniform = dim_isotropic_grassmannian_uniform(os.n(), os.r())?;
    let mut out = vec![format!(
        "dim J_{}(Q(i)^{}) symplectic: tangent oracle {}, uniform formula r(2n-3r-1)/2 gives {}",
        os.r(),
        os.n(),
        oracle,
        uniform
    )];
    if oracle as i64 != uniform {
        out.push("discrepancy: the uniform formula undercounts the symplectic case by r".into());
    }
    Ok(out)
}

/// `r(2m + 2n - 3r - 1)/2`, the orthogonal closed form.
fn orthogonal_total(n: usize, m: usize) -> usize {
    let r = m.min(n / 2);
    r * (2 * m + 2 * n - 3 * r - 1) / 2
}

fn dimension_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let variant = params.variant().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let point = sample_resolution_point(variant, setting, rng)?;
    let x = mu(&point);
    let tangent = tangent_dim_at(setting, &x)?;
    let total = dim_resolution_total(variant, setting)?;
    let (n, m) = (params.n, params.m);
    let expected = match (params.kind, &point) {
        (Kind::Orth, _) => orthogonal_total(n, m),
        (Kind::Symp, ResolutionPoint::Nc0 { u, .. }) => {
            let os = setting.os()?;
            let u = IsotropicSubspace::new(os.space().clone(), u.clone())?;
            m * os.r() + tangent_dim_isotropic_at(&u)?
        }
        (Kind::Gl, _) => {
            let s = params.s.unwrap_or(0);
            let via_fiber = dim_flag2(m, s, n)? + s * s + m * m;
            let closed = s * n + m * n - s * m;
            if via_fiber != closed {
                return Ok(fail(
                    format!("flag dimension plus fiber {via_fiber} differs from sn+mn-sm = {closed}"),
                    Value::Null,
                ));
            }
            closed
        }
        _ => unreachable!("symp settings only carry nc0 points"),
    };
    if tangent != expected || tangent != total {
        return Ok(fail(
            format!("tangent dimension {tangent}, expected {expected}, resolution total {total}"),
            json!({ "point": to_value(&x) }),
        ));
    }
    Ok(Outcome::Pass)
}

fn equivariance_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    match setting {
        Setting::Os(os) => {
            let t = random_matrix(os.n(), os.m(), rng);
            let g = os.space().sample_isometry(rng, DetSign::Any)?;
            let h = random_invertible(os.m(), rng)?;
            if !check_equivariance_os(os, &t, &g, &h)? {
                return Ok(fail(
                    "Q(gT) = Q(T) or Q(Th) = hᵗQ(T)h violated",
                    json!({ "t": to_value(&t), "g": to_value(&g), "h": to_value(&h) }),
                ));
            }
        }
        Setting::Gl(gl) => {
            let s = params.s.unwrap_or(0);
            let a = random_matrix(s, gl.n(), rng);
            let b = random_matrix(gl.n(), gl.m(), rng);
            let g1 = random_invertible(s, rng)?;
            let g2 = random_invertible(gl.n(), rng)?;
            let g3 = random_invertible(gl.m(), rng)?;
            if !check_equivariance_gl(gl, &a, &b, &g1, &g2, &g3)? {
                return Ok(fail(
                    "GL action identity violated",
                    json!({ "a": to_value(&a), "b": to_value(&b), "g1": to_value(&g1), "g2": to_value(&g2), "g3": to_value(&g3) }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn birationality_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let variant = params.variant().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let point = sample_resolution_point(variant, setting, rng)?;
    if !point.is_valid(setting)? {
        return Ok(fail("sampled resolution point is invalid", json!({ "point": to_value(&point) })));
    }
    let back = unique_preimage(variant, setting, &mu(&point))?;
    if back != point {
        return Ok(fail(
            "unique_preimage(mu(p)) differs from p",
            json!({ "point": to_value(&point), "preimage": to_value(&back) }),
        ));
    }
    let x = sample_null_max_rank(setting, rng)?;
    let lifted = unique_preimage(variant, setting, &x)?;
    if mu(&lifted) != x || !lifted.is_valid(setting)? {
        return Ok(fail(
            "mu(unique_preimage(x)) differs from x",
            json!({ "null_point": to_value(&x), "preimage": to_value(&lifted) }),
        ));
    }
    Ok(Outcome::Pass)
}

fn fibers_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let variant = params.variant().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let x = sample_deficient_null(variant, setting, rng)?;
    match unique_preimage(variant, setting, &x) {
        Err(Error::NotUnique(_)) => {}
        Ok(p) => {
            return Ok(fail(
                "rank-deficient point has a unique preimage",
                json!({ "null_point": to_value(&x), "preimage": to_value(&p) }),
            ))
        }
        Err(e) => return Err(e),
    }
    let (w1, w2) = fiber_witnesses(variant, setting, &x, rng)?;
    let ok = w1 != w2
        && w1.is_valid(setting)?
        && w2.is_valid(setting)?
        && mu(&w1) == x
        && mu(&w2) == x;
    if !ok {
        return Ok(fail(
            "fiber witnesses are not two distinct valid preimages",
            json!({ "null_point": to_value(&x), "witnesses": [to_value(&w1), to_value(&w2)] }),
        ));
    }
    Ok(Outcome::Pass)
}

fn quotient_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let m = params.m;
    match setting {
        Setting::Os(os) => {
            let w = params.w().map_err(|e| Error::InvalidRequest(e.to_string()))?.expect("OS kinds have W");
            let rank = rand::Rng::gen_range(rng, 0..=os.r());
            let t = sample_null_os(os, rank, rng)?;
            let probe = random_matrix(os.n(), m, rng);
            for candidate in [&t, &probe] {
                let qt_zero = quotient_qtilde(os, candidate, &w)?.is_zero();
                let q_zero = eval_q(os, candidate)?.is_zero();
                if qt_zero != q_zero {
                    return Ok(fail("T*T = 0 and Q(T) = 0 disagree", json!({ "t": to_value(candidate) })));
                }
            }
            let g = quotient_r(os, &t, &w)?;
            let lie = os.space().in_lie_algebra(&g)?;
            let square_zero = g.matmul(&g)?.is_zero();
            if !(lie && square_zero && in_orbit_closure_os(&g, m, os.space())?) {
                return Ok(fail(
                    "R(T) is not a square-zero element of the class closure",
                    json!({ "t": to_value(&t), "g": to_value(&g) }),
                ));
            }
        }
        Setting::Gl(gl) => {
            let ra = rand::Rng::gen_range(rng, 0..=gl.s());
            let rb = rand::Rng::gen_range(rng, 0..=gl.m());
            let (a, b) = sample_null_gl(gl, ra, rb, rng)?;
            let g = quotient_ba(gl, &a, &b)?;
            if !in_orbit_closure_gl(&g, m)? {
                return Ok(fail(
                    "BA is not in the class closure",
                    json!({ "a": to_value(&a), "b": to_value(&b), "g": to_value(&g) }),
                ));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn diagrams_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let variant = params.variant().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let w = params.w().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let point = sample_resolution_point(variant, setting, rng)?;
    if !check_diagram(setting, w.as_ref(), &point)? {
        return Ok(fail("diagram does not commute", json!({ "point": to_value(&point) })));
    }
    if variant == Variant::Nc && !check_q_triangle(setting, &point)? {
        return Ok(fail("q1/q2 triangle does not commute", json!({ "point": to_value(&point) })));
    }
    Ok(Outcome::Pass)
}

fn components_trial(_params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let os = setting.os()?;
    let space = os.space();
    let reference = IsotropicSubspace::new(
        space.clone(),
        nullcone::isotropic::standard_isotropic_seed(space, os.m())?,
    )?;
    let t = sample_null_os(os, os.m(), rng)?;
    let label = component_label_null(os, &t, &reference)?;
    let direct = component_label(
        &IsotropicSubspace::new(space.clone(), Subspace::column_space(&t))?,
        &reference,
    )?;
    if label != direct {
        return Ok(fail("null-map label differs from subspace label", json!({ "t": to_value(&t) })));
    }
    for (sign, expected) in [(DetSign::Plus, label), (DetSign::Minus, label.flipped())] {
        let g = space.sample_isometry(rng, sign)?;
        let moved = g.matmul(&t)?;
        let got = component_label_null(os, &moved, &reference)?;
        if got != expected {
            return Ok(fail(
                format!("isometry with determinant {sign:?} gave label {got}, expected {expected}"),
                json!({ "t": to_value(&t), "g": to_value(&g) }),
            ));
        }
    }
    Ok(Outcome::Pass)
}

fn orbit_fibers_trial(params: &Params, setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let variant = params.variant().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let w = params.w().map_err(|e| Error::InvalidRequest(e.to_string()))?;
    let g = sample_orbit_interior(setting, w.as_ref(), rng)?;
    let fiber_dim = orbit_fiber_dim_over(variant, setting, &g)?;
    let point = orbit_unique_preimage(variant, setting, &g)?;
    if fiber_dim != 0 || !orbit_point_valid(setting, &point)? {
        return Ok(fail(
            format!("orbit fiber of dimension {fiber_dim} over an interior point"),
            json!({ "g": to_value(&g), "point": to_value(&point) }),
        ));
    }
    match (setting, &point) {
        (Setting::Os(os), OrbitPoint::P0 { u, .. }) => {
            let u = IsotropicSubspace::new(os.space().clone(), u.clone())?;
            if !f0_nilpotency_check(&g, &u)? {
                return Ok(fail("g does not kill U", json!({ "g": to_value(&g), "u": to_value(u.sub()) })));
            }
            // a boundary pair from the resolution side: (T T*, U) with rank T < m
            let w = w.as_ref().expect("OS kinds have W");
            let rank = rand::Rng::gen_range(rng, 0..os.m());
            let t = sample_null_os(os, rank, rng)?;
            let (u1, _) = nullcone::isotropic::isotropic_extensions(os.space(), &Subspace::column_space(&t), os.m(), rng)?;
            let g0 = quotient_r(os, &t, w)?;
            let u1 = IsotropicSubspace::new(os.space().clone(), u1)?;
            if !f0_nilpotency_check(&g0, &u1)? {
                return Ok(fail("g does not kill U at a boundary point", json!({ "t": to_value(&t), "u": to_value(u1.sub()) })));
            }
            if params.kind == Kind::Orth {
                let lift = orbit_lift_os(os, w, &g)?;
                if quotient_r(os, &lift, w)? != g {
                    return Ok(fail("orbit lift does not reproduce g", json!({ "g": to_value(&g) })));
                }
            }
        }
        (Setting::Gl(gl), _) => {
            let (a, b) = orbit_lift_gl(gl, &g)?;
            if b.matmul(&a)? != g || !a.matmul(&b)?.is_zero() {
                return Ok(fail("orbit lift does not reproduce g", json!({ "g": to_value(&g) })));
            }
        }
        _ => unreachable!("variant matches setting"),
    }
    Ok(Outcome::Pass)
}

fn cotangent_trial(params: &Params, _setting: &Setting, rng: &mut SeededRng) -> Result<Outcome, Error> {
    let (twice_base, total) = cotangent_dimension_check(params.n, params.m, rng)?;
    if twice_base != total {
        return Ok(fail(
            format!("2 dim Gr = {twice_base} but the p1 space has dimension {total}"),
            Value::Null,
        ));
    }
    Ok(Outcome::Pass)
}

/// A seeded null point: of maximal rank, or of the given rank(s).
pub fn sample_point(params: &Params, rank: Option<(usize, usize)>, seed: u64) -> CliResult<NullPoint> {
    let setting = params.setting()?;
    let mut rng = rng_from_seed(seed);
    Ok(match (&setting, rank) {
        (_, None) => sample_null_max_rank(&setting, &mut rng)?,
        (Setting::Os(os), Some((r, _))) => NullPoint::Os { t: sample_null_os(os, r, &mut rng)? },
        (Setting::Gl(gl), Some((ra, rb))) => {
            let (a, b) = sample_null_gl(gl, ra, rb, &mut rng)?;
            NullPoint::Gl { a, b }
        }
    })
}

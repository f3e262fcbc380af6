//! The dimension table: closed forms next to the Jacobian oracle.

use serde::{Deserialize, Serialize};

use nullcone::forms::FormKind;
use nullcone::isotropic::{dim_flag2, dim_isotropic_grassmannian_uniform, sample_isotropic, tangent_dim_isotropic_at};
use nullcone::nullcone::{tangent_dim_at, Setting};
use nullcone::random::{rng_from_seed, trial_seed};
use nullcone::resolutions::{mu, sample_resolution_point};

use crate::params::Params;
use crate::CliResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub parameters: Params,
    pub quantity: String,
    pub formula: String,
    pub formula_value: i64,
    pub oracle: i64,
    pub agree: bool,
}

impl DimRow {
    fn new(parameters: &Params, quantity: &str, formula: &str, formula_value: i64, oracle: usize) -> Self {
        let oracle = oracle as i64;
        DimRow {
            parameters: parameters.clone(),
            quantity: quantity.into(),
            formula: formula.into(),
            formula_value,
            oracle,
            agree: formula_value == oracle,
        }
    }

    pub fn line(&self) -> String {
        let p = &self.parameters;
        let mut cell = format!("{:?} n={} m={}", p.kind, p.n, p.m).to_lowercase();
        if let Some(s) = p.s {
            cell.push_str(&format!(" s={s}"));
        }
        format!(
            "{:<22} {:<10} {:<22} formula {:>4}  oracle {:>4}  {}",
            cell,
            self.quantity,
            self.formula,
            self.formula_value,
            self.oracle,
            if self.agree { "ok" } else { "MISMATCH" }
        )
    }
}

/// Rows for one grid cell, evaluated at seeded maximal-rank points.
pub fn dim_rows(params: &Params, seed: u64) -> CliResult<Vec<DimRow>> {
    let setting = params.setting()?;
    let variant = params.variant()?;
    let mut rng = rng_from_seed(trial_seed(seed, 0));
    let point = sample_resolution_point(variant, &setting, &mut rng)?;
    let tangent = tangent_dim_at(&setting, &mu(&point))?;
    let (n, m) = (params.n as i64, params.m as i64);
    Ok(match &setting {
        Setting::Os(os) => {
            let r = os.r() as i64;
            let u = sample_isotropic(os.space(), os.r(), &mut rng)?;
            vec![
                DimRow::new(
                    params,
                    "J_r",
                    "r(2n-3r-1)/2",
                    dim_isotropic_grassmannian_uniform(os.n(), os.r())?,
                    tangent_dim_isotropic_at(&u)?,
                ),
                match os.kind() {
                    FormKind::Symmetric => {
                        DimRow::new(params, "total", "r(2m+2n-3r-1)/2", r * (2 * m + 2 * n - 3 * r - 1) / 2, tangent)
                    }
                    FormKind::Symplectic => {
                        DimRow::new(params, "total", "r(2m+2n-3r+1)/2", r * (2 * m + 2 * n - 3 * r + 1) / 2, tangent)
                    }
                },
            ]
        }
        Setting::Gl(gl) => {
            let s = gl.s() as i64;
            let via_flag = (dim_flag2(gl.m(), gl.s(), gl.n())? + gl.s() * gl.s() + gl.m() * gl.m()) as i64;
            vec![
                DimRow::new(params, "total", "sn+mn-sm", s * n + m * n - s * m, tangent),
                DimRow::new(params, "total", "flag2+s^2+m^2", via_flag, tangent),
            ]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_line_shows_the_discrepancy() {
        let rows = dim_rows(&Params::symp(2, 1), 0).unwrap();
        assert_eq!((rows[0].formula_value, rows[0].oracle, rows[0].agree), (0, 1, false));
        assert!(rows[1].agree, "{}", rows[1].line());
    }

    #[test]
    fn orthogonal_and_gl_rows_agree() {
        for p in [Params::orth(4, 2), Params::orth(5, 2), Params::gl(5, 2, 2), Params::gl(4, 1, 2)] {
            for row in dim_rows(&p, 3).unwrap() {
                assert!(row.agree, "{}", row.line());
            }
        }
    }
}

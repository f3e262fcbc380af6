use serde::{Deserialize, Serialize};

use nullcone::forms::{FormKind, FormedSpace};
use nullcone::nullcone::{GlSetting, OrthSympSetting, Setting};
use nullcone::resolutions::Variant;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Orth,
    Symp,
    Gl,
}

impl Kind {
    pub fn form_kind(self) -> Option<FormKind> {
        match self {
            Kind::Orth => Some(FormKind::Symmetric),
            Kind::Symp => Some(FormKind::Symplectic),
            Kind::Gl => None,
        }
    }
}

/// One grid cell. `s` is only meaningful for `gl`; `variant` defaults to
/// `nc0` for `orth`/`symp` and to `nc` for `gl`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub kind: Kind,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

impl Params {
    pub fn orth(n: usize, m: usize) -> Self {
        Params { kind: Kind::Orth, n, m, s: None, variant: None }
    }

    pub fn symp(n: usize, m: usize) -> Self {
        Params { kind: Kind::Symp, n, m, s: None, variant: None }
    }

    pub fn gl(n: usize, s: usize, m: usize) -> Self {
        Params { kind: Kind::Gl, n, m, s: Some(s), variant: None }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = Some(variant);
        self
    }

    pub fn setting(&self) -> CliResult<Setting> {
        match self.kind.form_kind() {
            Some(kind) => Ok(Setting::Os(OrthSympSetting::standard(kind, self.n, self.m)?)),
            None => {
                let s = self.s.ok_or_else(|| CliError::Usage("--kind gl needs --s".into()))?;
                Ok(Setting::Gl(GlSetting::new(self.n, s, self.m)?))
            }
        }
    }

    /// The space `W` of dimension `m` carrying the opposite standard form.
    pub fn w(&self) -> CliResult<Option<FormedSpace>> {
        match self.kind.form_kind() {
            Some(kind) => Ok(Some(FormedSpace::opposite_standard(kind, self.m)?)),
            None => Ok(None),
        }
    }

    pub fn variant(&self) -> CliResult<Variant> {
        let variant = self.variant.unwrap_or(match self.kind {
            Kind::Gl => Variant::Nc,
            _ => Variant::Nc0,
        });
        if variant.is_gl() != (self.kind == Kind::Gl) {
            return Err(CliError::Usage(format!(
                "variant {variant} does not go with kind {:?}",
                self.kind
            )));
        }
        Ok(variant)
    }
}

/// A grid file is a JSON list of parameter objects.
pub fn parse_grid(source_name: &str, text: &str) -> CliResult<Vec<Params>> {
    crate::parse_json(source_name, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parses_and_defaults() {
        let grid = parse_grid("grid", r#"[{"kind":"orth","n":4,"m":2},{"kind":"gl","n":5,"s":2,"m":2,"variant":"nc1"}]"#).unwrap();
        assert_eq!(grid[0], Params::orth(4, 2));
        assert_eq!(grid[0].variant().unwrap(), Variant::Nc0);
        assert_eq!(grid[1].variant().unwrap(), Variant::Nc1);
        assert!(grid[1].setting().is_ok());
    }

    #[test]
    fn bad_grid_reports_location() {
        let err = parse_grid("grid.json", "[{\"kind\":\"orth\",\n\"n\":}]").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("grid.json") && text.contains("line 2"), "{text}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn mismatched_variant_is_usage_error() {
        let p = Params::orth(4, 2).with_variant(Variant::Nc2);
        assert!(matches!(p.variant(), Err(CliError::Usage(_))));
        let missing_s = Params { kind: Kind::Gl, n: 3, m: 1, s: None, variant: None };
        assert!(matches!(missing_s.setting(), Err(CliError::Usage(_))));
    }
}

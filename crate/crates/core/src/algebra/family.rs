//! Family tags of the catalog and composite algebras built from them.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Identifies one algebra of the catalog, a building block, or a composite.
///
/// Indecomposable catalog members carry the names of their structure
/// (`G5_2k` is the `5+2k`-dimensional nilpotent family, `G6_2k_1` and
/// `G6_2k_2` the two `6+2k`-dimensional families).
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    G3_1 { lambda: f64 },
    G3_2,
    G3_3 { lambda: f64 },
    G4_1,
    G4_2,
    G4_3,
    G4_4,
    G5_2k { k: u32 },
    G6_2k_1 { k: u32 },
    G6_2k_2 { k: u32 },
    AffR,
    AffC,
    Heisenberg { m: u32 },
    Abelian { m: u32 },
    DirectSum(Vec<FamilySpec>),
    TrivialExtension { base: Box<FamilySpec>, m: u32 },
}

impl FamilySpec {
    /// Lowercase tag used on the command line and in exported files.
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::G3_1 { .. } => "g3_1",
            FamilySpec::G3_2 => "g3_2",
            FamilySpec::G3_3 { .. } => "g3_3",
            FamilySpec::G4_1 => "g4_1",
            FamilySpec::G4_2 => "g4_2",
            FamilySpec::G4_3 => "g4_3",
            FamilySpec::G4_4 => "g4_4",
            FamilySpec::G5_2k { .. } => "g5_2k",
            FamilySpec::G6_2k_1 { .. } => "g6_2k_1",
            FamilySpec::G6_2k_2 { .. } => "g6_2k_2",
            FamilySpec::AffR => "aff_r",
            FamilySpec::AffC => "aff_c",
            FamilySpec::Heisenberg { .. } => "heisenberg",
            FamilySpec::Abelian { .. } => "abelian",
            FamilySpec::DirectSum(_) => "direct_sum",
            FamilySpec::TrivialExtension { .. } => "trivial_extension",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilySpec::G3_1 { .. } | FamilySpec::G3_2 | FamilySpec::G3_3 { .. } => 3,
            FamilySpec::G4_1 | FamilySpec::G4_2 | FamilySpec::G4_3 | FamilySpec::G4_4 => 4,
            FamilySpec::AffC => 4,
            FamilySpec::G5_2k { k } => 5 + 2 * *k as usize,
            FamilySpec::G6_2k_1 { k } | FamilySpec::G6_2k_2 { k } => 6 + 2 * *k as usize,
            FamilySpec::AffR => 2,
            FamilySpec::Heisenberg { m } => 2 * *m as usize + 1,
            FamilySpec::Abelian { m } => *m as usize,
            FamilySpec::DirectSum(parts) => parts.iter().map(FamilySpec::dim).sum(),
            FamilySpec::TrivialExtension { base, m } => base.dim() + *m as usize,
        }
    }

    /// True for the indecomposable members of the classification
    /// (`AffC` is the same algebra as `G4_4`).
    pub fn is_catalog(&self) -> bool {
        !matches!(
            self,
            FamilySpec::AffR
                | FamilySpec::Heisenberg { .. }
                | FamilySpec::Abelian { .. }
                | FamilySpec::DirectSum(_)
                | FamilySpec::TrivialExtension { .. }
        )
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, FamilySpec::DirectSum(_) | FamilySpec::TrivialExtension { .. })
    }

    /// The `k` of the general-dimension families.
    pub fn k(&self) -> Option<u32> {
        match self {
            FamilySpec::G5_2k { k } | FamilySpec::G6_2k_1 { k } | FamilySpec::G6_2k_2 { k } => {
                Some(*k)
            }
            _ => None,
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match self {
            FamilySpec::G3_1 { lambda } | FamilySpec::G3_3 { lambda } => Some(*lambda),
            _ => None,
        }
    }

    /// Checks parameter ranges: `0 < |λ| ≤ 1` for `G3_1`, `λ ≥ 0` for `G3_3`,
    /// `m ≥ 1` for Heisenberg and abelian blocks, non-empty sums.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::G3_1 { lambda } => {
                if !(lambda.is_finite() && *lambda != 0.0 && lambda.abs() <= 1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "g3_1 requires 0 < |lambda| <= 1, got {lambda}"
                    )));
                }
            }
            FamilySpec::G3_3 { lambda } => {
                if !(lambda.is_finite() && *lambda >= 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "g3_3 requires lambda >= 0, got {lambda}"
                    )));
                }
            }
            FamilySpec::Heisenberg { m } | FamilySpec::Abelian { m } => {
                if *m == 0 {
                    return Err(Error::InvalidParameter(format!("{} requires m >= 1", self.tag())));
                }
            }
            FamilySpec::DirectSum(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidParameter("empty direct sum".into()));
                }
                for p in parts {
                    p.validate()?;
                }
            }
            FamilySpec::TrivialExtension { base, m } => {
                if *m == 0 {
                    return Err(Error::InvalidParameter(
                        "trivial extension requires m >= 1".into(),
                    ));
                }
                base.validate()?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Parameters as a JSON object (nested specs for composites).
    pub fn params_json(&self) -> Value {
        match self {
            FamilySpec::G3_1 { lambda } | FamilySpec::G3_3 { lambda } => json!({ "lambda": lambda }),
            FamilySpec::G5_2k { k } | FamilySpec::G6_2k_1 { k } | FamilySpec::G6_2k_2 { k } => {
                json!({ "k": k })
            }
            FamilySpec::Heisenberg { m } | FamilySpec::Abelian { m } => json!({ "m": m }),
            FamilySpec::DirectSum(parts) => {
                json!({ "parts": parts.iter().map(FamilySpec::to_json).collect::<Vec<_>>() })
            }
            FamilySpec::TrivialExtension { base, m } => json!({ "base": base.to_json(), "m": m }),
            _ => Value::Object(Map::new()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "family": self.tag(), "params": self.params_json() })
    }

    pub fn from_json(v: &Value) -> Result<FamilySpec> {
        let tag = v
            .get("family")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing `family`".into()))?;
        let empty = Value::Object(Map::new());
        let params = v.get("params").unwrap_or(&empty);
        FamilySpec::from_tag_and_params(tag, params)
    }

    pub fn from_tag_and_params(tag: &str, params: &Value) -> Result<FamilySpec> {
        let num = |key: &str| -> Result<f64> {
            params
                .get(key)
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Parse(format!("{tag}: missing numeric `{key}`")))
        };
        let int = |key: &str| -> Result<u32> {
            let v = num(key)?;
            if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
                return Err(Error::InvalidParameter(format!(
                    "{tag}: `{key}` must be a nonnegative integer, got {v}"
                )));
            }
            Ok(v as u32)
        };
        let spec = match tag {
            "g3_1" => FamilySpec::G3_1 { lambda: num("lambda")? },
            "g3_2" => FamilySpec::G3_2,
            "g3_3" => FamilySpec::G3_3 { lambda: num("lambda")? },
            "g4_1" => FamilySpec::G4_1,
            "g4_2" => FamilySpec::G4_2,
            "g4_3" => FamilySpec::G4_3,
            "g4_4" => FamilySpec::G4_4,
            "g5_2k" => FamilySpec::G5_2k { k: int("k")? },
            "g6_2k_1" => FamilySpec::G6_2k_1 { k: int("k")? },
            "g6_2k_2" => FamilySpec::G6_2k_2 { k: int("k")? },
            "aff_r" => FamilySpec::AffR,
            "aff_c" => FamilySpec::AffC,
            "heisenberg" => FamilySpec::Heisenberg { m: int("m")? },
            "abelian" => FamilySpec::Abelian { m: int("m")? },
            "direct_sum" => {
                let parts = params
                    .get("parts")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::Parse("direct_sum: missing `parts`".into()))?;
                FamilySpec::DirectSum(parts.iter().map(FamilySpec::from_json).collect::<Result<_>>()?)
            }
            "trivial_extension" => {
                let base = params
                    .get("base")
                    .ok_or_else(|| Error::Parse("trivial_extension: missing `base`".into()))?;
                FamilySpec::TrivialExtension {
                    base: Box::new(FamilySpec::from_json(base)?),
                    m: int("m")?,
                }
            }
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Compact parameter string used in CSV columns, e.g. `lambda=0.5` or `k=1`.
    pub fn params_string(&self) -> String {
        match self {
            FamilySpec::G3_1 { lambda } | FamilySpec::G3_3 { lambda } => format!("lambda={lambda}"),
            FamilySpec::G5_2k { k } | FamilySpec::G6_2k_1 { k } | FamilySpec::G6_2k_2 { k } => {
                format!("k={k}")
            }
            FamilySpec::Heisenberg { m } | FamilySpec::Abelian { m } => format!("m={m}"),
            FamilySpec::DirectSum(_) | FamilySpec::TrivialExtension { .. } => self.to_string(),
            _ => String::new(),
        }
    }
}

/// Canonical text form: `g3_1(lambda=0.5)`, `aff_r+heisenberg(m=1)`,
/// `ext(g4_1;m=2)`. Round-trips through [`FromStr`].
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::DirectSum(parts) => {
                let mut first = true;
                for p in parts {
                    if !first {
                        f.write_str("+")?;
                    }
                    first = false;
                    if matches!(p, FamilySpec::DirectSum(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            FamilySpec::TrivialExtension { base, m } => write!(f, "ext({base};m={m})"),
            other => {
                let p = other.params_string();
                if p.is_empty() {
                    f.write_str(other.tag())
                } else {
                    write!(f, "{}({p})", other.tag())
                }
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family(s, &ParamDefaults::default())
    }
}

/// Values applied to a bare family tag that omits its parameters
/// (the `--lambda`, `--k`, `--m` command-line flags).
#[derive(Debug, Clone, Copy, Default)]
pub struct ParamDefaults {
    pub lambda: Option<f64>,
    pub k: Option<i64>,
    pub m: Option<i64>,
}

/// Parses a family string, filling missing parameters from `defaults`.
pub fn parse_family(s: &str, defaults: &ParamDefaults) -> Result<FamilySpec> {
    let s = s.trim();
    let parts = split_top_level(s, '+')?;
    let spec = if parts.len() > 1 {
        FamilySpec::DirectSum(
            parts.iter().map(|p| parse_family(p, defaults)).collect::<Result<_>>()?,
        )
    } else {
        parse_single(s, defaults)?
    };
    spec.validate()?;
    Ok(spec)
}

fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
                }
            }
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    out.push(s[start..].trim());
    Ok(out)
}

fn parse_single(s: &str, defaults: &ParamDefaults) -> Result<FamilySpec> {
    if s.is_empty() {
        return Err(Error::Parse("empty family string".into()));
    }
    let (tag, inner) = match s.find('(') {
        Some(open) => {
            if !s.ends_with(')') {
                return Err(Error::Parse(format!("malformed family `{s}`")));
            }
            (s[..open].trim(), Some(&s[open + 1..s.len() - 1]))
        }
        None => (s, None),
    };
    let tag = tag.to_ascii_lowercase();
    if tag.is_empty() {
        // parenthesised sub-expression
        return parse_family(inner.unwrap_or(""), defaults);
    }
    if tag == "ext" || tag == "trivial_extension" {
        let inner = inner.ok_or_else(|| Error::Parse("ext(...) needs arguments".into()))?;
        let (base, rest) = inner
            .rsplit_once(';')
            .ok_or_else(|| Error::Parse("ext(base;m=M) expected".into()))?;
        let m = rest
            .trim()
            .strip_prefix("m=")
            .ok_or_else(|| Error::Parse("ext(base;m=M) expected".into()))?;
        let m = parse_count("m", m)?;
        return Ok(FamilySpec::TrivialExtension {
            base: Box::new(parse_family(base, defaults)?),
            m,
        });
    }
    let mut lambda = defaults.lambda;
    let mut k = defaults.k.map(|v| v as f64);
    let mut m = defaults.m.map(|v| v as f64);
    if let Some(inner) = inner {
        for kv in inner.split([',', ';']).map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
            let val: f64 = val
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number `{val}`")))?;
            match key.trim() {
                "lambda" => lambda = Some(val),
                "k" => k = Some(val),
                "m" => m = Some(val),
                other => return Err(Error::Parse(format!("unknown parameter `{other}`"))),
            }
        }
    }
    let need_lambda = || lambda.ok_or_else(|| Error::InvalidParameter(format!("{tag} needs lambda")));
    let need_int = |name: &str, v: Option<f64>| -> Result<u32> {
        let v = v.ok_or_else(|| Error::InvalidParameter(format!("{tag} needs {name}")))?;
        parse_count(name, &v.to_string())
    };
    let spec = match tag.as_str() {
        "g3_1" => FamilySpec::G3_1 { lambda: need_lambda()? },
        "g3_2" => FamilySpec::G3_2,
        "g3_3" => FamilySpec::G3_3 { lambda: need_lambda()? },
        "g4_1" => FamilySpec::G4_1,
        "g4_2" => FamilySpec::G4_2,
        "g4_3" => FamilySpec::G4_3,
        "g4_4" => FamilySpec::G4_4,
        "g5_2k" | "g5" => FamilySpec::G5_2k { k: need_int("k", k.or(Some(0.0)))? },
        "g6_2k_1" => FamilySpec::G6_2k_1 { k: need_int("k", k.or(Some(0.0)))? },
        "g6_2k_2" => FamilySpec::G6_2k_2 { k: need_int("k", k.or(Some(0.0)))? },
        "aff_r" => FamilySpec::AffR,
        "aff_c" => FamilySpec::AffC,
        "heisenberg" | "h" => FamilySpec::Heisenberg { m: need_int("m", m.or(Some(1.0)))? },
        "abelian" | "r" => FamilySpec::Abelian { m: need_int("m", m.or(Some(1.0)))? },
        other => return Err(Error::Parse(format!("unknown family `{other}`"))),
    };
    Ok(spec)
}

fn parse_count(name: &str, v: &str) -> Result<u32> {
    let x: f64 = v
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad number `{v}`")))?;
    if x < 0.0 || x.fract() != 0.0 || x > u32::MAX as f64 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be a nonnegative integer, got {v}"
        )));
    }
    Ok(x as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_ranges() {
        assert!(FamilySpec::G3_1 { lambda: 0.0 }.validate().is_err());
        assert!(FamilySpec::G3_1 { lambda: -1.0 }.validate().is_ok());
        assert!(FamilySpec::G3_1 { lambda: 1.5 }.validate().is_err());
        assert!(FamilySpec::G3_3 { lambda: 0.0 }.validate().is_ok());
        assert!(FamilySpec::G3_3 { lambda: -0.1 }.validate().is_err());
    }

    #[test]
    fn negative_k_is_rejected() {
        let d = ParamDefaults { k: Some(-1), ..Default::default() };
        assert!(matches!(parse_family("g5_2k", &d), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn display_round_trips() {
        let specs = [
            FamilySpec::G3_1 { lambda: -0.5 },
            FamilySpec::G6_2k_2 { k: 3 },
            FamilySpec::DirectSum(vec![FamilySpec::AffR, FamilySpec::Heisenberg { m: 2 }]),
            FamilySpec::TrivialExtension { base: Box::new(FamilySpec::G4_1), m: 2 },
            FamilySpec::DirectSum(vec![
                FamilySpec::DirectSum(vec![FamilySpec::AffR, FamilySpec::AffR]),
                FamilySpec::Abelian { m: 1 },
            ]),
        ];
        for s in specs {
            let text = s.to_string();
            assert_eq!(text.parse::<FamilySpec>().unwrap(), s, "{text}");
            assert_eq!(FamilySpec::from_json(&s.to_json()).unwrap(), s);
        }
    }

    #[test]
    fn defaults_fill_bare_tags() {
        let d = ParamDefaults { lambda: Some(0.5), k: Some(2), m: None };
        assert_eq!(parse_family("g3_1", &d).unwrap(), FamilySpec::G3_1 { lambda: 0.5 });
        assert_eq!(parse_family("g5_2k", &d).unwrap().dim(), 9);
        assert!(matches!(
            parse_family("g3_1", &ParamDefaults::default()),
            Err(Error::InvalidParameter(_))
        ));
    }
}

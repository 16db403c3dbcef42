//! Input specifications: the text form `I = (x*y, y*z); r = 2` and a JSON schema.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::facets::check_generators;
use crate::monomial::{Monomial, Variables};

/// An ideal and a power as supplied by the user. Orders and τ are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    #[serde(default, alias = "vars", skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(alias = "gens")]
    pub generators: Vec<String>,
    #[serde(default, alias = "order", skip_serializing_if = "Option::is_none")]
    pub declared_order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<usize>>,
    #[serde(default = "default_power")]
    pub r: u32,
}

fn default_power() -> u32 {
    1
}

impl IdealSpec {
    pub fn new<S: Into<String>>(generators: impl IntoIterator<Item = S>, r: u32) -> Self {
        IdealSpec {
            variables: None,
            generators: generators.into_iter().map(Into::into).collect(),
            declared_order: None,
            tau: None,
            r,
        }
    }
}

/// JSON when the input starts with `{`, the text form otherwise.
pub fn parse_ideal(input: &str) -> Result<IdealSpec> {
    let spec = if input.trim_start().starts_with('{') {
        serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?
    } else {
        parse_text(input)?
    };
    prepare(&spec)?;
    Ok(spec)
}

/// Statements `key = value` separated by `;` or newlines; `#` starts a comment.
///
/// Keys: `I`/`ideal`/`gens`/`generators`, `r`/`power`, `vars`/`variables`,
/// `order`, `tau`. A bare parenthesized list is taken as the generators.
pub fn parse_text(input: &str) -> Result<IdealSpec> {
    let mut spec = IdealSpec::new(Vec::<String>::new(), 1);
    let mut saw_generators = false;
    let cleaned: String = input
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(";");
    for stmt in cleaned.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = match stmt.split_once('=') {
            Some((k, v)) => (k.trim(), v.trim()),
            None if stmt.starts_with('(') => ("I", stmt),
            None => return Err(Error::Parse(format!("expected key = value, got {stmt:?}"))),
        };
        match key {
            "I" | "ideal" | "gens" | "generators" => {
                spec.generators = split_list(value);
                saw_generators = true;
            }
            "r" | "power" => {
                spec.r = value
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad power {value:?}")))?;
            }
            "vars" | "variables" => spec.variables = Some(split_list(value)),
            "order" => spec.declared_order = Some(parse_indices(value)?),
            "tau" => spec.tau = Some(parse_indices(value)?),
            other => return Err(Error::Parse(format!("unknown key {other:?}"))),
        }
    }
    if !saw_generators {
        return Err(Error::Parse("no generators given".into()));
    }
    Ok(spec)
}

fn split_list(value: &str) -> Vec<String> {
    value
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

pub fn parse_indices(value: &str) -> Result<Vec<usize>> {
    split_list(value)
        .iter()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index {s:?}")))
        })
        .collect()
}

/// A spec resolved against its variables.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub vars: Variables,
    pub generators: Vec<Monomial>,
    /// Declared order converted to 0-based input positions.
    pub declared_order: Option<Vec<usize>>,
    /// τ override converted to 0-based indices.
    pub tau: Option<Vec<usize>>,
    pub r: u32,
    pub warnings: Vec<String>,
}

pub fn prepare(spec: &IdealSpec) -> Result<Prepared> {
    if spec.generators.is_empty() {
        return Err(Error::Parse("ideal has no generators".into()));
    }
    if spec.r == 0 {
        return Err(Error::Parse("power r must be at least 1".into()));
    }
    let mut warnings = Vec::new();
    let (mut vars, allow_new) = match &spec.variables {
        Some(names) => (Variables::new(names.iter().map(String::as_str))?, false),
        None => (Variables::default(), true),
    };
    let generators = spec
        .generators
        .iter()
        .map(|g| Monomial::parse(g, &mut vars, allow_new))
        .collect::<Result<Vec<_>>>()?;
    check_generators(&generators, &vars)?;
    let unused: Vec<&str> = (0..vars.len())
        .filter(|&i| generators.iter().all(|g| g.exponent(i) == 0))
        .map(|i| vars.name(i))
        .collect();
    if !unused.is_empty() {
        warnings.push(format!(
            "declared variables {} appear in no generator and enlarge every complement facet",
            unused.join(", ")
        ));
    }
    let to_zero_based = |v: &Vec<usize>, what: &str, bound: usize| -> Result<Vec<usize>> {
        v.iter()
            .map(|&i| {
                if i == 0 || i > bound {
                    Err(Error::Parse(format!("{what} entry {i} out of range 1..={bound}")))
                } else {
                    Ok(i - 1)
                }
            })
            .collect()
    };
    let q = generators.len();
    Ok(Prepared {
        declared_order: spec
            .declared_order
            .as_ref()
            .map(|o| to_zero_based(o, "order", q))
            .transpose()?,
        tau: spec.tau.as_ref().map(|t| to_zero_based(t, "tau", q)).transpose()?,
        vars,
        generators,
        r: spec.r,
        warnings,
    })
}

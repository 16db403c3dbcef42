//! Monomials over a declared list of variables.
//!
//! A [`Monomial`] stores only its nonzero exponents, sorted by variable
//! index, so structural equality is monomial equality and the derived
//! ordering (lexicographic on the sorted `(index, exponent)` pairs) is a
//! deterministic total order for set outputs.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A ring variable: a dense index into a [`Variables`] list plus its name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub index: usize,
    pub name: String,
}

/// Ordered list of variable names with unique names and dense indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct Variables {
    names: Vec<String>,
    #[serde(skip)]
    lookup: HashMap<String, usize>,
}

impl Variables {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vars = Variables::default();
        for name in names {
            let name = name.into();
            if !is_identifier(&name) {
                return Err(Error::Parse(format!("invalid variable name {name:?}")));
            }
            if vars.lookup.contains_key(&name) {
                return Err(Error::Parse(format!("duplicate variable {name:?}")));
            }
            vars.intern(&name);
        }
        Ok(vars)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn variable(&self, index: usize) -> Variable {
        Variable {
            index,
            name: self.names[index].clone(),
        }
    }

    /// Returns the index of `name`, appending it if it is new.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.lookup.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), i);
        i
    }
}

impl From<Variables> for Vec<String> {
    fn from(v: Variables) -> Self {
        v.names
    }
}

impl TryFrom<Vec<String>> for Variables {
    type Error = Error;

    fn try_from(names: Vec<String>) -> Result<Self> {
        Variables::new(names)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial as a sparse exponent vector.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(index: usize) -> Self {
        Monomial {
            exps: vec![(index, 1)],
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// repeated variables accumulate and zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(usize, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable();
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    /// The square-free product of the given variables.
    pub fn product_of<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn exponents(&self) -> &[(usize, u32)] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps
            .binary_search_by_key(&var, |&(v, _)| v)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e <= 1)
    }

    /// Exponentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, u32::max)
    }

    /// Exponentwise sum.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| a + b)
    }

    /// `true` iff every exponent of `self` is at most the matching exponent of `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut theirs = other.exps.iter().peekable();
        'outer: for &(v, e) in &self.exps {
            while let Some(&&(w, f)) = theirs.peek() {
                theirs.next();
                if w == v {
                    if f < e {
                        return false;
                    }
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Exponentwise difference `self / divisor`; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Monomial) -> Result<Monomial> {
        if !divisor.divides(self) {
            return Err(Error::NonDivisible {
                dividend: format!("{:?}", self.exps),
                divisor: format!("{:?}", divisor.exps),
            });
        }
        let exps = self
            .exps
            .iter()
            .map(|&(v, e)| (v, e - divisor.exponent(v)))
            .filter(|&(_, e)| e > 0)
            .collect();
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: if k == 0 {
                Vec::new()
            } else {
                self.exps.iter().map(|&(v, e)| (v, e * k)).collect()
            },
        }
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let a = self.exps.get(i);
            let b = other.exps.get(j);
            match (a, b) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    out.push((va, f(ea, eb)));
                    i += 1;
                    j += 1;
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    out.push((va, f(ea, 0)));
                    i += 1;
                }
                (Some(_), Some(&(vb, eb))) => {
                    out.push((vb, f(0, eb)));
                    j += 1;
                }
                (Some(&(va, ea)), None) => {
                    out.push((va, f(ea, 0)));
                    i += 1;
                }
                (None, Some(&(vb, eb))) => {
                    out.push((vb, f(0, eb)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out.retain(|&(_, e)| e > 0);
        Monomial { exps: out }
    }

    /// Renders in the explicit form `x*y^2*z`; the unit renders as `1`.
    pub fn display<'a>(&'a self, vars: &'a Variables) -> DisplayMonomial<'a> {
        DisplayMonomial { mono: self, vars }
    }

    /// Parses either the explicit form `x*y^2*z` or the compact form `xy2z`.
    ///
    /// With `allow_new`, unknown names are appended to `vars`; otherwise they
    /// are a parse error. In the compact form names are matched greedily
    /// against the declared variables, falling back to single letters.
    pub fn parse(text: &str, vars: &mut Variables, allow_new: bool) -> Result<Monomial> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        if text == "1" {
            return Ok(Monomial::one());
        }
        let resolve = |name: &str, vars: &mut Variables| -> Result<usize> {
            match vars.index_of(name) {
                Some(i) => Ok(i),
                None if allow_new => Ok(vars.intern(name)),
                None => Err(Error::Parse(format!("unknown variable {name:?}"))),
            }
        };
        let mut pairs = Vec::new();
        if text.contains('*') || text.contains('^') || vars.index_of(&text).is_some() {
            for factor in text.split('*') {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (
                        n,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                if !is_identifier(name) {
                    return Err(Error::Parse(format!("bad factor {factor:?}")));
                }
                pairs.push((resolve(name, vars)?, exp));
            }
        } else {
            let bytes = text.as_bytes();
            let mut pos = 0;
            while pos < bytes.len() {
                if !bytes[pos].is_ascii_alphabetic() {
                    return Err(Error::Parse(format!("unexpected {:?} in {text:?}", bytes[pos] as char)));
                }
                let declared = vars
                    .names()
                    .iter()
                    .filter(|n| text[pos..].starts_with(n.as_str()))
                    .max_by_key(|n| n.len())
                    .cloned();
                let name = declared.unwrap_or_else(|| text[pos..pos + 1].to_string());
                pos += name.len();
                let digits_end = bytes[pos..]
                    .iter()
                    .position(|b| !b.is_ascii_digit())
                    .map_or(bytes.len(), |k| pos + k);
                let exp = if digits_end > pos {
                    text[pos..digits_end]
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?
                } else {
                    1
                };
                pos = digits_end;
                pairs.push((resolve(&name, vars)?, exp));
            }
        }
        Ok(Monomial::from_pairs(pairs))
    }
}

pub struct DisplayMonomial<'a> {
    mono: &'a Monomial,
    vars: &'a Variables,
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.mono.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.vars.name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

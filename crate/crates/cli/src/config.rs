//! Run configuration files.
//!
//! ```json
//! {
//!   "char": 5,
//!   "ring": { "vars": ["x"], "relations": [] },
//!   "cartier": { "kind": "pair", "divisor": [{ "element": "x", "coefficient": "1/2" }] },
//!   "cover": {
//!     "base": { "vars": ["x"], "relations": [] },
//!     "total": { "vars": ["y"], "relations": [] },
//!     "images": ["y^2"],
//!     "basis": ["1", "y"],
//!     "t": "trace"
//!   },
//!   "command": "fsig"
//! }
//! ```
//!
//! Every ring block may repeat `"char"`; it must agree with the top level.
//! The cartier block lives on the cover base when a cover is present and on
//! `ring` otherwise; `"on": "ring" | "base"` overrides.

use std::fmt;
use std::path::Path;

use frobsig_core::covers::{CoverSpec, SectionT};
use frobsig_core::divisor::DivisorQ;
use frobsig_core::frobenius::CartierSpec;
use frobsig_core::rational::parse_q;
use frobsig_core::{Ideal, Poly, QuotientPresentation, Q};
use serde_json::{Map, Value};

#[derive(Debug)]
pub struct ConfigError {
    pub field: String,
    pub msg: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "invalid field `{}`: {}", self.field, self.msg)
        }
    }
}

type CResult<T> = std::result::Result<T, ConfigError>;

fn err<T>(field: &str, msg: impl fmt::Display) -> CResult<T> {
    Err(ConfigError { field: field.to_string(), msg: msg.to_string() })
}

#[derive(Clone, Debug)]
pub enum SectionChoice {
    Trace,
    Values(Vec<Poly>),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Host {
    Ring,
    Base,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub ring: Option<QuotientPresentation>,
    pub cartier: Option<(Host, CartierSpec)>,
    pub cover: Option<CoverSpec>,
    pub section: SectionChoice,
    pub command: Option<String>,
}

impl RunConfig {
    /// The section `T`, trace unless the config gives values.
    pub fn section(&self, cover: &CoverSpec) -> SectionT {
        match &self.section {
            SectionChoice::Trace => SectionT::trace(cover),
            SectionChoice::Values(v) => SectionT::new(v.clone()),
        }
    }
}

pub fn load_config(path: &Path) -> CResult<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError { field: String::new(), msg: format!("cannot read {}: {e}", path.display()) })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> CResult<RunConfig> {
    let v: Value = serde_json::from_str(text).map_err(|e| ConfigError { field: String::new(), msg: format!("invalid JSON: {e}") })?;
    let Some(obj) = v.as_object() else {
        return err("", "top level must be an object");
    };
    for key in obj.keys() {
        if !["char", "ring", "cartier", "cover", "command"].contains(&key.as_str()) {
            return err(key, "unknown field");
        }
    }
    let p = match obj.get("char") {
        Some(c) => as_char(c, "char")?,
        None => return err("char", "missing"),
    };
    let ring = match obj.get("ring") {
        Some(r) => Some(ring_block(r, "ring", p)?),
        None => None,
    };
    let (cover, section) = match obj.get("cover") {
        Some(c) => {
            let (cv, s) = cover_block(c, p)?;
            (Some(cv), s)
        }
        None => (None, SectionChoice::Trace),
    };
    let cartier = match obj.get("cartier") {
        Some(c) => {
            let which = match object(c, "cartier")?.get("on") {
                None if cover.is_some() => Host::Base,
                None => Host::Ring,
                Some(Value::String(s)) if s == "ring" => Host::Ring,
                Some(Value::String(s)) if s == "base" => Host::Base,
                Some(_) => return err("cartier.on", "must be \"ring\" or \"base\""),
            };
            let host = match which {
                Host::Ring => ring.as_ref().ok_or_else(|| ConfigError { field: "cartier.on".into(), msg: "no ring block".into() })?,
                Host::Base => cover.as_ref().map(|c| c.base()).ok_or_else(|| ConfigError { field: "cartier.on".into(), msg: "no cover block".into() })?,
            };
            Some((which, cartier_block(c, "cartier", host)?))
        }
        None => None,
    };
    let command = match obj.get("command") {
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return err("command", "must be a string"),
        None => None,
    };
    if ring.is_none() && cover.is_none() {
        return err("ring", "missing (a ring or cover block is required)");
    }
    Ok(RunConfig { p, ring, cartier, cover, section, command })
}

fn as_char(v: &Value, field: &str) -> CResult<u32> {
    match v.as_u64() {
        Some(p) if p <= u32::MAX as u64 => Ok(p as u32),
        _ => err(field, "must be a positive integer"),
    }
}

fn object<'a>(v: &'a Value, field: &str) -> CResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| ConfigError { field: field.into(), msg: "must be an object".into() })
}

fn strings(v: Option<&Value>, field: &str) -> CResult<Vec<String>> {
    let Some(v) = v else {
        return err(field, "missing");
    };
    let Some(arr) = v.as_array() else {
        return err(field, "must be a list of strings");
    };
    arr.iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            _ => err(&format!("{field}[{i}]"), "must be a string"),
        })
        .collect()
}

fn ring_block(v: &Value, field: &str, p: u32) -> CResult<QuotientPresentation> {
    let obj = object(v, field)?;
    if let Some(c) = obj.get("char") {
        let own = as_char(c, &format!("{field}.char"))?;
        if own != p {
            return err(&format!("{field}.char"), format!("characteristic {own} does not match char = {p}"));
        }
    }
    let vars = strings(obj.get("vars"), &format!("{field}.vars"))?;
    let rels = match obj.get("relations") {
        Some(r) => strings(Some(r), &format!("{field}.relations"))?,
        None => Vec::new(),
    };
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let bare = QuotientPresentation::parse(p, &var_refs, &[]).map_err(|e| match e {
        frobsig_core::Error::InvalidCharacteristic(_) => ConfigError { field: "char".into(), msg: e.to_string() },
        _ => ConfigError { field: format!("{field}.vars"), msg: e.to_string() },
    })?;
    let mut polys = Vec::new();
    for (i, r) in rels.iter().enumerate() {
        polys.push(parse_poly(&bare, r, &format!("{field}.relations[{i}]"))?);
    }
    QuotientPresentation::new(bare.ambient(), polys).map_err(|e| ConfigError { field: format!("{field}.relations"), msg: e.to_string() })
}

fn parse_poly(ring: &QuotientPresentation, text: &str, field: &str) -> CResult<Poly> {
    ring.parse_poly(text).map_err(|e| ConfigError { field: field.into(), msg: e.to_string() })
}

fn rational(v: &Value, field: &str) -> CResult<Q> {
    match v {
        Value::String(s) => parse_q(s).map_err(|e| ConfigError { field: field.into(), msg: e.to_string() }),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap())),
        _ => err(field, "must be a rational string \"a/b\""),
    }
}

fn cartier_block(v: &Value, field: &str, host: &QuotientPresentation) -> CResult<CartierSpec> {
    let obj = object(v, field)?;
    let kind = match obj.get("kind") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return err(&format!("{field}.kind"), "must be a string"),
        None => return err(&format!("{field}.kind"), "missing"),
    };
    let spec = match kind {
        "full" => CartierSpec::Full,
        "pair" => {
            let dfield = format!("{field}.divisor");
            let entries = match obj.get("divisor") {
                Some(Value::Array(a)) => a,
                Some(_) => return err(&dfield, "must be a list of {element, coefficient}"),
                None => return err(&dfield, "missing"),
            };
            let mut out = Vec::new();
            for (i, e) in entries.iter().enumerate() {
                let ef = format!("{dfield}[{i}]");
                let eo = object(e, &ef)?;
                let g = match eo.get("element") {
                    Some(Value::String(s)) => parse_poly(host, s, &format!("{ef}.element"))?,
                    _ => return err(&format!("{ef}.element"), "missing or not a string"),
                };
                let t = match eo.get("coefficient") {
                    Some(c) => rational(c, &format!("{ef}.coefficient"))?,
                    None => return err(&format!("{ef}.coefficient"), "missing"),
                };
                out.push((g, t));
            }
            let divisor = DivisorQ::new(host.ambient(), out);
            let ideal_part = match obj.get("ideal") {
                None => None,
                Some(iv) => {
                    let ifield = format!("{field}.ideal");
                    let io = object(iv, &ifield)?;
                    let gens = strings(io.get("gens"), &format!("{ifield}.gens"))?;
                    let mut polys = Vec::new();
                    for (i, g) in gens.iter().enumerate() {
                        polys.push(parse_poly(host, g, &format!("{ifield}.gens[{i}]"))?);
                    }
                    let t = match io.get("exponent") {
                        Some(c) => rational(c, &format!("{ifield}.exponent"))?,
                        None => return err(&format!("{ifield}.exponent"), "missing"),
                    };
                    Some((Ideal::new(host.ambient(), polys), t))
                }
            };
            CartierSpec::Pair { divisor, ideal_part }
        }
        "principal" => {
            let u0 = match obj.get("u0") {
                Some(Value::String(s)) => parse_poly(host, s, &format!("{field}.u0"))?,
                _ => return err(&format!("{field}.u0"), "missing or not a string"),
            };
            let e0 = match obj.get("e0").map(|x| x.as_u64()) {
                Some(Some(e)) => e as u32,
                None => 1,
                Some(None) => return err(&format!("{field}.e0"), "must be a positive integer"),
            };
            CartierSpec::Principal { u0, e0 }
        }
        other => return err(&format!("{field}.kind"), format!("unknown kind `{other}` (full, pair, principal)")),
    };
    spec.validate().map_err(|e| ConfigError { field: field.into(), msg: e.to_string() })?;
    Ok(spec)
}

fn cover_block(v: &Value, p: u32) -> CResult<(CoverSpec, SectionChoice)> {
    let obj = object(v, "cover")?;
    if let Some(c) = obj.get("char") {
        let own = as_char(c, "cover.char")?;
        if own != p {
            return err("cover.char", format!("characteristic {own} does not match char = {p}"));
        }
    }
    let base = match obj.get("base") {
        Some(b) => ring_block(b, "cover.base", p)?,
        None => return err("cover.base", "missing"),
    };
    let total = match obj.get("total") {
        Some(t) => ring_block(t, "cover.total", p)?,
        None => return err("cover.total", "missing"),
    };
    let images = strings(obj.get("images"), "cover.images")?;
    let basis = strings(obj.get("basis"), "cover.basis")?;
    let mut imgs = Vec::new();
    for (i, s) in images.iter().enumerate() {
        imgs.push(parse_poly(&total, s, &format!("cover.images[{i}]"))?);
    }
    let mut bs = Vec::new();
    for (i, s) in basis.iter().enumerate() {
        bs.push(parse_poly(&total, s, &format!("cover.basis[{i}]"))?);
    }
    let n = bs.len();
    let cover = CoverSpec::new(base, total, imgs, bs).map_err(|e| ConfigError { field: "cover".into(), msg: e.to_string() })?;
    let section = match obj.get("t") {
        None => SectionChoice::Trace,
        Some(Value::String(s)) if s == "trace" => SectionChoice::Trace,
        Some(Value::Array(_)) => {
            let vals = strings(obj.get("t"), "cover.t")?;
            if vals.len() != n {
                return err("cover.t", format!("expected {n} values, one per basis element"));
            }
            let mut out = Vec::new();
            for (i, s) in vals.iter().enumerate() {
                out.push(parse_poly(cover.base(), s, &format!("cover.t[{i}]"))?);
            }
            SectionChoice::Values(out)
        }
        Some(_) => return err("cover.t", "must be \"trace\" or a list of base polynomials"),
    };
    Ok((cover, section))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_is_valid() {
        let c = parse_config(r#"{"char":5,"ring":{"vars":["x"],"relations":[]},"command":"fsig"}"#).unwrap();
        assert_eq!(c.p, 5);
        assert_eq!(c.command.as_deref(), Some("fsig"));
    }

    #[test]
    fn mismatched_characteristic_points_at_cover() {
        let text = r#"{"char":5,"cover":{"char":3,"base":{"vars":["x"]},"total":{"vars":["y"]},"images":["y^2"],"basis":["1","y"]}}"#;
        let e = parse_config(text).unwrap_err();
        assert_eq!(e.field, "cover.char");
    }

    #[test]
    fn first_invalid_relation_is_named() {
        let e = parse_config(r#"{"char":3,"ring":{"vars":["x","y"],"relations":["x*y","x+*y"]}}"#).unwrap_err();
        assert_eq!(e.field, "ring.relations[1]");
    }

    #[test]
    fn divisor_on_cover_base() {
        let text = r#"{"char":5,"cartier":{"kind":"pair","divisor":[{"element":"x","coefficient":"1/2"}]},
            "cover":{"base":{"vars":["x"]},"total":{"vars":["y"]},"images":["y^2"],"basis":["1","y"],"t":["0","1"]}}"#;
        let c = parse_config(text).unwrap();
        assert!(matches!(c.cartier, Some((Host::Base, CartierSpec::Pair { .. }))));
        assert!(matches!(c.section, SectionChoice::Values(_)));
    }
}

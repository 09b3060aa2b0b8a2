//! Fixture files: one link per line,
//! `name<TAB>diagram<TAB>alternative diagram<TAB>coloring claim`, with the
//! last two fields optional (an empty or `-` field is absent). Blank lines
//! and lines starting with `#` are ignored.
//!
//! A diagram field is PD text or a generator call prefixed with `@`:
//! `@torus2 4`, `@pretzel 6,6,6`, `@braid 3 1,-2,1,-2`,
//! `@standard 2,2/1`. A coloring claim is `<n>: <element> <element> ...`,
//! one element per arc of the main diagram (`inf` for `D_∞`).

use linkcolor::diagram::{
    braid_closure, generate_pretzel, generate_standard_form, generate_torus_two_strand, parse_link_text,
    StandardFormSpec,
};
use linkcolor::{Diagram, DihedralElement, Modulus};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct ColoringClaim {
    pub modulus: Modulus,
    pub elements: Vec<DihedralElement>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub line: usize,
    pub diagram: Diagram,
    pub alternative: Option<Diagram>,
    pub claim: Option<ColoringClaim>,
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, FixtureError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |message: String| FixtureError { line, message };
        let fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if fields.len() < 2 || fields.len() > 4 {
            return Err(err(format!("expected 2 to 4 tab-separated fields, found {}", fields.len())));
        }
        let present = |k: usize| fields.get(k).copied().filter(|f| !f.is_empty() && *f != "-");
        let diagram = parse_diagram_spec(fields[1]).map_err(&err)?;
        let alternative = present(2).map(parse_diagram_spec).transpose().map_err(&err)?;
        let claim = present(3).map(parse_claim).transpose().map_err(&err)?;
        out.push(Fixture { name: fields[0].to_string(), line, diagram, alternative, claim });
    }
    Ok(out)
}

/// PD text, or a generator call prefixed with `@`.
pub fn parse_diagram_spec(spec: &str) -> Result<Diagram, String> {
    let spec = spec.trim();
    let Some(call) = spec.strip_prefix('@') else {
        return parse_link_text(spec).map_err(|e| e.to_string());
    };
    let mut parts = call.split_whitespace();
    let kind = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let result = match (kind, args.as_slice()) {
        ("torus2", [q]) => generate_torus_two_strand(q.parse().map_err(|_| format!("bad twist count {q:?}"))?),
        ("pretzel", [t]) => generate_pretzel(&parse_ints(t)?),
        ("braid", [k]) => braid_closure(parse_strands(k)?, &[]),
        ("braid", [k, w]) => braid_closure(parse_strands(k)?, &parse_ints(w)?),
        ("standard", [s]) => generate_standard_form(&parse_standard_spec(s)?).map(|sf| sf.diagram),
        _ => return Err(format!("unknown generator call {spec:?}")),
    };
    result.map_err(|e| e.to_string())
}

fn parse_strands(k: &str) -> Result<usize, String> {
    k.parse().map_err(|_| format!("bad strand count {k:?}"))
}

/// Comma-separated integers.
pub fn parse_ints(text: &str) -> Result<Vec<i32>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(|t| t.trim().parse::<i32>().map_err(|_| format!("bad integer {t:?}"))).collect()
}

/// `t1,...,tk[/w1,...,wm]`: full twists per closure strand, then the
/// closure braid word; `none` is the lone round component.
pub fn parse_standard_spec(text: &str) -> Result<StandardFormSpec, String> {
    let text = text.trim();
    if text == "none" {
        return Ok(StandardFormSpec { twists: Vec::new(), closure: Vec::new() });
    }
    let (twists, closure) = text.split_once('/').unwrap_or((text, ""));
    Ok(StandardFormSpec { twists: parse_ints(twists)?, closure: parse_ints(closure)? })
}

pub fn parse_modulus(text: &str) -> Result<Modulus, String> {
    let t = text.trim();
    if t == "inf" {
        return Ok(Modulus::Infinite);
    }
    t.parse::<u64>().ok().and_then(Modulus::finite).ok_or_else(|| format!("bad modulus {t:?}"))
}

/// `<n>: <element> ...`
pub fn parse_claim(text: &str) -> Result<ColoringClaim, String> {
    let (m, rest) = text.split_once(':').ok_or_else(|| format!("coloring claim {text:?} lacks ':'"))?;
    let modulus = parse_modulus(m)?;
    let elements = rest
        .split_whitespace()
        .map(|e| DihedralElement::parse(e, modulus).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    Ok(ColoringClaim { modulus, elements })
}

/// Reads the output of `Coloring::render` (or any `arc i: element` lines
/// after a `modulus` line) back into per-arc elements.
pub fn parse_coloring_text(text: &str) -> Result<ColoringClaim, String> {
    let mut modulus = None;
    let mut elements: Vec<(usize, DihedralElement)> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(m) = line.strip_prefix("modulus") {
            modulus = Some(parse_modulus(m)?);
        } else if line.starts_with("tones") {
            continue;
        } else if let Some(rest) = line.strip_prefix("arc") {
            let m = modulus.ok_or("modulus line must come first")?;
            let (i, e) = rest.split_once(':').ok_or_else(|| format!("bad line {line:?}"))?;
            let i: usize = i.trim().parse().map_err(|_| format!("bad arc index in {line:?}"))?;
            elements.push((i, DihedralElement::parse(e, m).map_err(|e| e.to_string())?));
        } else {
            return Err(format!("unrecognised line {line:?}"));
        }
    }
    let modulus = modulus.ok_or("missing modulus line")?;
    elements.sort_by_key(|(i, _)| *i);
    if elements.iter().enumerate().any(|(k, (i, _))| k != *i) {
        return Err("arc indices must be 0, 1, 2, ... without gaps".to_string());
    }
    Ok(ColoringClaim { modulus, elements: elements.into_iter().map(|(_, e)| e).collect() })
}

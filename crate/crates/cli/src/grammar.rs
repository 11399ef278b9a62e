//! Single-token process specs: `fgn:H=0.8,var=1` and
//! `arfima:d=0.3,ar=[0.5],ma=[],ivar=1`.
//!
//! Keys may come in any order; `ar` and `ma` default to empty. Commas inside
//! brackets separate list entries.

use lrdent_core::ProcessSpec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("spec `{0}` has no `kind:` prefix")]
    MissingKind(String),
    #[error("unknown process kind `{0}` (expected fgn or arfima)")]
    UnknownKind(String),
    #[error("malformed field `{0}` (expected key=value)")]
    MalformedField(String),
    #[error("unknown key `{key}` for {kind}")]
    UnknownKey { kind: &'static str, key: String },
    #[error("key `{0}` given twice")]
    DuplicateKey(String),
    #[error("missing key `{key}` for {kind}")]
    MissingKey { kind: &'static str, key: &'static str },
    #[error("`{0}` is not a finite number")]
    BadNumber(String),
    #[error("`{0}` is not a bracketed list")]
    BadList(String),
    #[error("unbalanced brackets in `{0}`")]
    Unbalanced(String),
    #[error("invalid process: {0}")]
    Invalid(#[from] lrdent_core::Error),
}

fn split_top_level(body: &str) -> Result<Vec<&str>, SpecError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(SpecError::Unbalanced(body.to_string()));
                }
            }
            ',' if depth == 0 => {
                parts.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(SpecError::Unbalanced(body.to_string()));
    }
    parts.push(&body[start..]);
    Ok(parts)
}

fn number(s: &str) -> Result<f64, SpecError> {
    let s = s.trim();
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(SpecError::BadNumber(s.to_string())),
    }
}

fn list(s: &str) -> Result<Vec<f64>, SpecError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| SpecError::BadList(s.to_string()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(number).collect()
}

struct Fields<'a> {
    kind: &'static str,
    entries: Vec<(&'a str, &'a str)>,
}

impl<'a> Fields<'a> {
    fn parse(kind: &'static str, body: &'a str, allowed: &[&str]) -> Result<Self, SpecError> {
        let mut entries: Vec<(&str, &str)> = Vec::new();
        for field in split_top_level(body)? {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| SpecError::MalformedField(field.to_string()))?;
            let key = key.trim();
            if !allowed.contains(&key) {
                return Err(SpecError::UnknownKey { kind, key: key.to_string() });
            }
            if entries.iter().any(|(k, _)| *k == key) {
                return Err(SpecError::DuplicateKey(key.to_string()));
            }
            entries.push((key, value));
        }
        Ok(Self { kind, entries })
    }

    fn get(&self, key: &str) -> Option<&'a str> {
        self.entries.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    fn required(&self, key: &'static str) -> Result<f64, SpecError> {
        number(self.get(key).ok_or(SpecError::MissingKey { kind: self.kind, key })?)
    }

    fn list_or_empty(&self, key: &str) -> Result<Vec<f64>, SpecError> {
        self.get(key).map_or(Ok(Vec::new()), list)
    }
}

pub fn parse_spec(text: &str) -> Result<ProcessSpec, SpecError> {
    let text = text.trim();
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| SpecError::MissingKind(text.to_string()))?;
    match kind.trim().to_ascii_lowercase().as_str() {
        "fgn" => {
            let f = Fields::parse("fgn", body, &["H", "var"])?;
            Ok(ProcessSpec::fgn(f.required("H")?, f.required("var")?)?)
        }
        "arfima" => {
            let f = Fields::parse("arfima", body, &["d", "ar", "ma", "ivar"])?;
            Ok(ProcessSpec::arfima(
                f.required("d")?,
                f.list_or_empty("ar")?,
                f.list_or_empty("ma")?,
                f.required("ivar")?,
            )?)
        }
        other => Err(SpecError::UnknownKind(other.to_string())),
    }
}

fn format_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// Canonical text form; `parse_spec(&format_spec(s)) == s`.
pub fn format_spec(spec: &ProcessSpec) -> String {
    match spec {
        ProcessSpec::Fgn(f) => format!("fgn:H={},var={}", f.hurst(), f.variance()),
        ProcessSpec::Arfima(a) => format!(
            "arfima:d={},ar={},ma={},ivar={}",
            a.d(),
            format_list(a.ar()),
            format_list(a.ma()),
            a.innovation_variance()
        ),
    }
}

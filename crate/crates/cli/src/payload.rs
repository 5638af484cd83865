//! Payload documents: ordered key/value output that diffs cleanly.
//!
//! Numbers print with 9 significant digits, locale-independent, so payloads
//! are byte-identical across runs given identical inputs.

/// Output format for key/value payloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// `key = value` lines.
    Doc,
    /// Tab-separated `key<TAB>value` rows.
    Table,
}

#[derive(Debug, Clone)]
enum Value {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

/// An ordered key/value document.
#[derive(Debug, Clone, Default)]
pub struct Doc {
    entries: Vec<(String, Value)>,
}

impl Doc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.entries.push((key.into(), Value::Num(value)));
        self
    }

    pub fn int(&mut self, key: impl Into<String>, value: i64) -> &mut Self {
        self.entries.push((key.into(), Value::Int(value)));
        self
    }

    pub fn text(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.entries.push((key.into(), Value::Text(value.into())));
        self
    }

    pub fn flag(&mut self, key: impl Into<String>, value: bool) -> &mut Self {
        self.entries.push((key.into(), Value::Bool(value)));
        self
    }

    pub fn render(&self, format: Format, pretty: bool) -> String {
        let mut out = String::new();
        if pretty {
            let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (key, value) in &self.entries {
                out.push_str(&format!("{key:<width$}  {}\n", render_value(value)));
            }
            return out;
        }
        for (key, value) in &self.entries {
            match format {
                Format::Doc => out.push_str(&format!("{key} = {}\n", render_value(value))),
                Format::Table => out.push_str(&format!("{key}\t{}\n", render_value(value))),
            }
        }
        out
    }
}

fn render_value(value: &Value) -> String {
    match value {
        Value::Num(v) => fmt_sig(*v),
        Value::Int(v) => v.to_string(),
        Value::Text(v) => v.clone(),
        Value::Bool(v) => v.to_string(),
    }
}

/// Formats with 9 significant digits: positional for moderate exponents,
/// exponential otherwise, trailing zeros trimmed.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp_form = format!("{x:.8e}");
    let (mantissa, exp) = exp_form.split_once('e').expect("exponential form");
    let exp: i32 = exp.parse().expect("exponent parses");
    let neg = mantissa.starts_with('-');
    let digits: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).collect();
    let digits = String::from_utf8(digits).expect("ascii digits");
    let body = if (-4..=15).contains(&exp) {
        render_positional(&digits, exp)
    } else {
        render_exponential(&digits, exp)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn render_positional(digits: &str, exp: i32) -> String {
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            format!("{digits}{}", "0".repeat(int_len - digits.len()))
        } else {
            let (int_part, frac) = digits.split_at(int_len);
            let frac = frac.trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        }
    } else {
        let frac = format!("{}{digits}", "0".repeat((-exp - 1) as usize));
        format!("0.{}", frac.trim_end_matches('0'))
    }
}

fn render_exponential(digits: &str, exp: i32) -> String {
    let (head, tail) = digits.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{head}e{exp}")
    } else {
        format!("{head}.{tail}e{exp}")
    }
}

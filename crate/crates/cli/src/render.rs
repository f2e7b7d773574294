use std::fmt;

use intensity_core::{parse_rational, to_decimal, ExtendedValue, Rational};

/// Bad flag combination detected after argument parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Clone, Copy)]
pub struct Renderer {
    pub decimal: Option<usize>,
}

impl Renderer {
    pub fn num(&self, v: &Rational) -> String {
        match self.decimal {
            Some(d) => to_decimal(v, d),
            None => v.to_string(),
        }
    }

    pub fn ext(&self, v: &ExtendedValue) -> String {
        match v {
            ExtendedValue::Finite(v) => self.num(v),
            ExtendedValue::PositiveInfinity => "inf".into(),
        }
    }
}

pub fn rational_arg(flag: &str, text: &str) -> anyhow::Result<Rational> {
    parse_rational(text).map_err(|e| usage(format!("--{flag}: {e}")))
}

/// `start:stop:step` (inclusive) or a comma list.
pub fn alpha_list(text: &str) -> anyhow::Result<Vec<Rational>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (
                rational_arg("alphas", start)?,
                rational_arg("alphas", stop)?,
                rational_arg("alphas", step)?,
            );
            if step <= Rational::from_integer(0.into()) {
                return Err(usage("--alphas: step must be positive"));
            }
            let mut out = Vec::new();
            let mut a = start;
            while a <= stop {
                out.push(a.clone());
                a += &step;
            }
            Ok(out)
        }
        [single] => single
            .split(',')
            .map(|s| rational_arg("alphas", s.trim()))
            .collect(),
        _ => Err(usage("--alphas: expected start:stop:step or a comma list")),
    }
}

pub fn usize_list(flag: &str, text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| usage(format!("--{flag}: `{s}`: {e}")))
        })
        .collect()
}

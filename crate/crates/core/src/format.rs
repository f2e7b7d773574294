//! Text formats: the line-oriented profile file and the metric CSV.
//!
//! ```text
//! # comment
//! alternatives: a b c
//! alpha: 1/2
//! mode: mandatory
//! agent: a >> b > c
//! ```

use crate::error::{Error, Result};
use crate::metric::MetricMatrix;
use crate::profile::{ElicitationMode, Intensity, IntensivePreference, Profile};
use crate::rational::{parse_rational, Rational};
use crate::scalar::Scalar;

/// A profile file whose `alpha` or `mode` lines may be missing.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileDraft {
    pub names: Vec<String>,
    pub preferences: Vec<IntensivePreference>,
    pub alpha: Option<Rational>,
    pub mode: Option<ElicitationMode>,
}

impl ProfileDraft {
    /// Completes the draft, letting `alpha`/`mode` override the file when given.
    pub fn finish(self, alpha: Option<Rational>, mode: Option<ElicitationMode>) -> Result<Profile> {
        let alpha = alpha.or(self.alpha).ok_or(Error::Parse { line: 0, message: "missing `alpha:` line".into() })?;
        let mode = mode.or(self.mode).ok_or(Error::Parse { line: 0, message: "missing `mode:` line".into() })?;
        Profile::new(self.names, self.preferences, alpha, mode)
    }
}

/// Parses a complete profile file.
pub fn parse_profile(text: &str) -> Result<Profile> {
    parse_profile_draft(text)?.finish(None, None)
}

/// Parses a profile file, tolerating missing `alpha:` and `mode:` lines.
pub fn parse_profile_draft(text: &str) -> Result<ProfileDraft> {
    let mut names: Option<Vec<String>> = None;
    let mut alpha = None;
    let mut mode = None;
    let mut preferences = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse { line: line_no, message },
            other => other,
        };
        let (key, value) = line.split_once(':').ok_or(Error::Parse {
            line: line_no,
            message: format!("expected `key: value`, got `{line}`"),
        })?;
        match key.trim() {
            "alternatives" => {
                let list: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                if list.is_empty() {
                    return Err(Error::Parse { line: line_no, message: "no alternatives listed".into() });
                }
                for (i, a) in list.iter().enumerate() {
                    if a.contains('>') {
                        return Err(Error::MalformedSeparator(a.clone()));
                    }
                    if list[..i].contains(a) {
                        return Err(Error::DuplicateAlternative(a.clone()));
                    }
                }
                names = Some(list);
            }
            "alpha" => {
                let a = parse_rational(value)?;
                if a < Rational::from_i64(0) || a > Rational::from_i64(1) {
                    return Err(Error::AlphaOutOfRange(value.trim().to_string()));
                }
                alpha = Some(a);
            }
            "mode" => mode = Some(value.parse::<ElicitationMode>().map_err(at)?),
            "agent" => {
                let names = names.as_ref().ok_or(Error::Parse {
                    line: line_no,
                    message: "`agent:` before `alternatives:`".into(),
                })?;
                preferences.push(parse_ballot(value, names)?);
            }
            other => {
                return Err(Error::Parse { line: line_no, message: format!("unknown key `{other}`") });
            }
        }
    }
    let names = names.ok_or(Error::Parse { line: 0, message: "missing `alternatives:` line".into() })?;
    Ok(ProfileDraft { names, preferences, alpha, mode })
}

enum Token<'a> {
    Name(&'a str),
    Sep(&'a str),
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        if bytes[i].is_ascii_whitespace() {
            i += 1;
        } else if bytes[i] == b'>' {
            while i < bytes.len() && bytes[i] == b'>' {
                i += 1;
            }
            out.push(Token::Sep(&text[start..i]));
        } else {
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'>' {
                i += 1;
            }
            out.push(Token::Name(&text[start..i]));
        }
    }
    out
}

/// Parses `a >> b > c` against the known alternative names.
pub fn parse_ballot(text: &str, names: &[String]) -> Result<IntensivePreference> {
    let mut ranking = Vec::new();
    let mut flags = Vec::new();
    let mut expect_name = true;
    for tok in tokenize(text) {
        match (tok, expect_name) {
            (Token::Name(n), true) => {
                let idx = names
                    .iter()
                    .position(|x| x == n)
                    .ok_or_else(|| Error::UnknownAlternative(n.to_string()))?;
                if ranking.contains(&idx) {
                    return Err(Error::DuplicateAlternative(n.to_string()));
                }
                ranking.push(idx);
                expect_name = false;
            }
            (Token::Sep(s), false) => {
                flags.push(match s {
                    ">" => Intensity::Mild,
                    ">>" => Intensity::Intense,
                    _ => return Err(Error::MalformedSeparator(s.to_string())),
                });
                expect_name = true;
            }
            (Token::Sep(s), true) => return Err(Error::MalformedSeparator(s.to_string())),
            (Token::Name(n), false) => return Err(Error::MalformedSeparator(format!("missing separator before `{n}`"))),
        }
    }
    if expect_name {
        return Err(Error::MalformedSeparator(text.trim().to_string()));
    }
    if ranking.len() != names.len() {
        return Err(Error::InvalidPreference(format!(
            "ballot ranks {} of {} alternatives",
            ranking.len(),
            names.len()
        )));
    }
    IntensivePreference::new(ranking, flags)
}

/// Renders one ballot as `a >> b > c`.
pub fn format_ballot(pref: &IntensivePreference, names: &[String]) -> String {
    let mut s = names[pref.at(0)].clone();
    for (j, flag) in pref.intensities().iter().enumerate() {
        s.push(' ');
        s.push_str(flag.separator());
        s.push(' ');
        s.push_str(&names[pref.at(j + 1)]);
    }
    s
}

/// Renders a profile in the file format accepted by [`parse_profile`].
pub fn format_profile<T: Scalar>(profile: &Profile<T>) -> String {
    let names = profile.alternative_names();
    let mut s = format!(
        "alternatives: {}\nalpha: {}\nmode: {}\n",
        names.join(" "),
        profile.alpha(),
        profile.mode()
    );
    for p in profile.preferences() {
        s.push_str("agent: ");
        s.push_str(&format_ballot(p, names));
        s.push('\n');
    }
    s
}

/// Parses a metric CSV with an optional header row of alternative names.
///
/// When both a header and `names` are present, columns are reordered to match `names`.
pub fn parse_metric_csv(text: &str, names: Option<&[String]>) -> Result<MetricMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
        records.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
    }
    let mut header = None;
    if let Some(first) = records.first() {
        if first.iter().any(|f| parse_rational(f).is_err()) {
            header = Some(records.remove(0));
        }
    }
    let mut rows = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        let line = i + 1 + usize::from(header.is_some());
        let row = rec
            .iter()
            .map(|f| parse_rational(f).map_err(|e| Error::Parse { line, message: e.to_string() }))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if let (Some(header), Some(names)) = (header, names) {
        if header.len() != names.len() {
            return Err(Error::DimensionMismatch(format!(
                "header has {} columns, profile has {} alternatives",
                header.len(),
                names.len()
            )));
        }
        let order = names
            .iter()
            .map(|n| header.iter().position(|h| h == n).ok_or_else(|| Error::UnknownAlternative(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        rows = rows.into_iter().map(|r| order.iter().map(|&c| r[c].clone()).collect()).collect();
    }
    MetricMatrix::new(rows)
}

/// Renders a metric as CSV with a header row.
pub fn format_metric_csv<T: Scalar>(metric: &MetricMatrix<T>, names: &[String]) -> String {
    let mut s = names.join(",");
    s.push('\n');
    for row in metric.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

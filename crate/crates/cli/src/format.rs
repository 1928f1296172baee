//! Plain-text form files: `#` comments and `<rational> <i> <j> <k>` terms.

use std::str::FromStr;

use msforms::{KForm, MultiIndex, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected a coefficient and {expected} indices, found {found} fields")]
    FieldCount { line: usize, expected: usize, found: usize },
    #[error("line {line}: malformed rational `{text}`")]
    MalformedRational { line: usize, text: String },
    #[error("line {line}: malformed index `{text}`")]
    MalformedIndex { line: usize, text: String },
    #[error("line {line}: index {index} outside 1..=6")]
    IndexOutOfRange { line: usize, index: usize },
    #[error("line {line}: indices {indices:?} are not strictly increasing")]
    NotIncreasing { line: usize, indices: Vec<usize> },
}

/// A parsed form with the source line of every accepted term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormFile {
    pub form: KForm,
    pub term_lines: Vec<usize>,
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// `[-]int[/int]` with a nonzero denominator.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let body = text.strip_prefix('-').unwrap_or(text);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if !is_digits(num) || den.is_some_and(|d| !is_digits(d)) {
        return None;
    }
    let mut n = BigInt::from_str(num).ok()?;
    if text.starts_with('-') {
        n = -n;
    }
    let d = match den {
        Some(d) => BigInt::from_str(d).ok()?,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn parse_form(text: &str, grade: usize) -> Result<FormFile, ParseError> {
    let mut form = KForm::zero(grade);
    let mut term_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != grade + 1 {
            return Err(ParseError::FieldCount {
                line,
                expected: grade,
                found: fields.len(),
            });
        }
        let coeff = parse_rational(fields[0]).ok_or_else(|| ParseError::MalformedRational {
            line,
            text: fields[0].to_string(),
        })?;
        let mut indices = Vec::with_capacity(grade);
        for f in &fields[1..] {
            let index: usize = f.parse().map_err(|_| ParseError::MalformedIndex {
                line,
                text: f.to_string(),
            })?;
            if !(1..=6).contains(&index) {
                return Err(ParseError::IndexOutOfRange { line, index });
            }
            indices.push(index);
        }
        let m = MultiIndex::new(&indices).map_err(|_| ParseError::NotIncreasing { line, indices })?;
        form.add_term(m, &Scalar::from_rational(coeff));
        term_lines.push(line);
    }
    Ok(FormFile { form, term_lines })
}

pub fn parse_3form(text: &str) -> Result<FormFile, ParseError> {
    parse_form(text, 3)
}

/// A volume form, `<rational> 1 2 3 4 5 6`.
pub fn parse_theta(text: &str) -> Result<KForm, ParseError> {
    parse_form(text, 6).map(|f| f.form)
}

/// Form-file text for a form with rational coefficients.
pub fn write_form(form: &KForm, header: &[String]) -> Option<String> {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for (m, c) in form.terms() {
        let q = c.as_rational()?;
        let indices: Vec<String> = m.indices().iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", msforms::scalar::rational_string(q), indices.join(" ")));
    }
    Some(out)
}

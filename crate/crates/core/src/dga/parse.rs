//! Plain-text algebra descriptions:
//!
//! ```text
//! # comment
//! generators: a:2 b:2 A:3
//! d(A) = 2*a*b - 1/2*a^2
//! ```
//!
//! Generators not given a differential are closed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::{GcAlgebra, Generator};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_algebra(text: &str) -> Result<GcAlgebra> {
    let mut generators: Option<Vec<Generator>> = None;
    let mut diffs: Vec<(usize, String, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("generators:") {
            if generators.is_some() {
                return Err(parse_err(line_no, "generators declared twice"));
            }
            let mut gens = Vec::new();
            for tok in rest.split_whitespace() {
                let (name, deg) = tok.split_once(':').ok_or_else(|| {
                    parse_err(line_no, format!("expected name:degree, got {tok}"))
                })?;
                if !is_identifier(name) {
                    return Err(parse_err(line_no, format!("invalid generator name {name}")));
                }
                let degree: u32 = deg
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("invalid degree {deg}")))?;
                gens.push(Generator {
                    name: name.to_string(),
                    degree,
                });
            }
            generators = Some(gens);
        } else if let Some(rest) = line.strip_prefix("d(") {
            let (name, rhs) = rest
                .split_once(')')
                .ok_or_else(|| parse_err(line_no, "expected d(name) = expression"))?;
            let rhs = rhs
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| parse_err(line_no, "expected '=' after d(name)"))?;
            diffs.push((line_no, name.trim().to_string(), rhs.trim().to_string()));
        } else {
            return Err(parse_err(line_no, format!("unrecognized line: {line}")));
        }
    }
    let generators = generators.ok_or_else(|| parse_err(0, "missing generators line"))?;
    let n = generators.len();
    let mut differential: Vec<Vec<(Vec<u32>, BigRational)>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    for (line_no, name, rhs) in diffs {
        let i = generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| parse_err(line_no, format!("unknown generator {name}")))?;
        if seen[i] {
            return Err(parse_err(line_no, format!("d({name}) given twice")));
        }
        seen[i] = true;
        differential[i] = parse_expression(&rhs, &generators, line_no)?;
    }
    GcAlgebra::new(generators, differential)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn parse_expression(
    s: &str,
    gens: &[Generator],
    line: usize,
) -> Result<Vec<(Vec<u32>, BigRational)>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms
        .into_iter()
        .map(|t| parse_term(t, gens, line))
        .collect()
}

fn parse_term(t: &str, gens: &[Generator], line: usize) -> Result<(Vec<u32>, BigRational)> {
    let (sign, body) = match t.as_bytes().first() {
        Some(b'-') => (-BigRational::one(), &t[1..]),
        Some(b'+') => (BigRational::one(), &t[1..]),
        _ => (BigRational::one(), t),
    };
    if body.is_empty() {
        return Err(parse_err(line, "empty term"));
    }
    let mut coeff = sign;
    let mut exps = vec![0u32; gens.len()];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(parse_err(line, format!("empty factor in {t}")));
        }
        if factor.chars().next().unwrap().is_ascii_digit() {
            coeff *= parse_rational(factor)
                .ok_or_else(|| parse_err(line, format!("invalid number {factor}")))?;
            continue;
        }
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n,
                p.parse::<u32>()
                    .map_err(|_| parse_err(line, format!("invalid exponent in {factor}")))?,
            ),
            None => (factor, 1),
        };
        let i = gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| parse_err(line, format!("unknown generator {name}")))?;
        exps[i] += power;
    }
    Ok((exps, coeff))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Text form accepted by [`parse_algebra`].
pub fn format_algebra(alg: &GcAlgebra) -> String {
    let gens: Vec<String> = alg
        .generators()
        .iter()
        .map(|g| format!("{}:{}", g.name, g.degree))
        .collect();
    let mut out = format!("generators: {}\n", gens.join(" "));
    for (i, g) in alg.generators().iter().enumerate() {
        let d = alg.generator_differential(i);
        if !d.is_zero() {
            out.push_str(&format!("d({}) = {}\n", g.name, alg.format(d)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::model::minimal_model;

    #[test]
    fn round_trip_of_the_model() {
        let alg = minimal_model();
        let text = format_algebra(&alg);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(format_algebra(&back), text);
        assert!(text.contains("d(alpha) = 2*a*A - b*B"));
    }

    #[test]
    fn rationals_and_errors() {
        let alg = parse_algebra("generators: x:2 y:3\nd(y) = -1/2*x^2 # half\n").unwrap();
        assert_eq!(alg.format(alg.generator_differential(1)), "-1/2*x^2");
        assert!(matches!(
            parse_algebra("generators: x:2\nd(z) = x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_algebra("d(x) = 0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_algebra("generators: x:2 y:3\nd(y) = x"),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            parse_algebra("generators: x:2\nnonsense"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}

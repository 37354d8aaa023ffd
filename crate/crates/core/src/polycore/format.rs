//! Canonical text and JSON renderings of polynomials.
//!
//! Text: terms in canonical order joined by `" + "`, each term written as
//! `coef*var^e*var^e`. A unit coefficient is omitted (`-1` becomes a leading
//! `-`), exponent 1 is omitted, and the zero polynomial is `0`.
//!
//! JSON: `{"ring":"F2","terms":[{"coef":"1","exps":{"a0":1,"a3":1}}]}` with
//! coefficients as decimal strings and exponents in canonical variable order.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::coeff::{Coefficient, Ring, F2};
use super::monomial::Monomial;
use super::poly::Poly;
use super::var::Var;
use super::{MultiPoly, PolyError};

pub fn to_text<C: Coefficient>(p: &Poly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = p.terms().iter().map(|(m, c)| term_text(m, &c.to_string())).collect();
    parts.join(" + ")
}

fn term_text(m: &Monomial, coef: &str) -> String {
    if m.is_one() {
        return coef.to_string();
    }
    match coef {
        "1" => m.to_string(),
        "-1" => format!("-{m}"),
        _ => format!("{coef}*{m}"),
    }
}

/// Parses the canonical text form. Any term order is accepted, as is
/// `" - "` between terms.
pub fn parse_text<C: Coefficient>(text: &str) -> Result<Poly<C>, PolyError> {
    let text = text.trim();
    if text == "0" {
        return Ok(Poly::zero());
    }
    let mut terms = Vec::new();
    for raw in text.split(" + ") {
        let mut pieces = raw.split(" - ");
        terms.push(parse_term::<C>(pieces.next().unwrap_or_default().trim())?);
        for neg in pieces {
            let (m, c) = parse_term::<C>(&format!("-{}", neg.trim()))?;
            terms.push((m, c));
        }
    }
    Ok(Poly::from_terms(terms))
}

fn parse_term<C: Coefficient>(raw: &str) -> Result<(Monomial, C), PolyError> {
    let bad = || PolyError::Parse(format!("malformed term `{raw}`"));
    if raw.is_empty() {
        return Err(bad());
    }
    let (negate, body) = match raw.strip_prefix('-') {
        Some(rest) if rest.starts_with(|ch: char| ch.is_ascii_alphabetic()) => (true, rest),
        _ => (false, raw),
    };
    let mut coef = BigInt::from(1);
    let mut mono = Monomial::ONE;
    for (i, factor) in body.split('*').enumerate() {
        if i == 0 && factor.starts_with(|ch: char| ch == '-' || ch.is_ascii_digit()) {
            coef = factor.parse::<BigInt>().map_err(|_| bad())?;
            continue;
        }
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        let v = Var::parse(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        mono = mono.mul(&Monomial::var_pow(v, e));
    }
    if negate {
        coef = -coef;
    }
    Ok((mono, C::from_int(&coef)))
}

pub fn to_json_value<C: Coefficient>(p: &Poly<C>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut exps = Map::new();
            for (v, e) in m.iter() {
                exps.insert(v.name().to_string(), json!(e));
            }
            json!({ "coef": c.to_string(), "exps": exps })
        })
        .collect();
    json!({ "ring": C::RING.to_string(), "terms": terms })
}

pub fn from_json_value(value: &Value) -> Result<MultiPoly, PolyError> {
    let bad = |msg: &str| PolyError::Parse(msg.to_string());
    let ring = match value.get("ring").and_then(Value::as_str) {
        Some("F2") => Ring::F2,
        Some("Integers") => Ring::Integers,
        _ => return Err(bad("missing or unknown ring")),
    };
    let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let coef: BigInt = t
            .get("coef")
            .and_then(Value::as_str)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("bad coef"))?;
        let exps = t.get("exps").and_then(Value::as_object).ok_or_else(|| bad("bad exps"))?;
        let mut m = Monomial::ONE;
        for (name, e) in exps {
            let v = Var::parse(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            let e = e.as_u64().ok_or_else(|| bad("bad exponent"))?;
            m = m.mul(&Monomial::var_pow(v, e as u32));
        }
        parsed.push((m, coef));
    }
    Ok(match ring {
        Ring::Integers => MultiPoly::Integers(Poly::from_terms(parsed)),
        Ring::F2 => MultiPoly::F2(Poly::from_terms(parsed.into_iter().map(|(m, c)| (m, F2::from_int(&c))))),
    })
}

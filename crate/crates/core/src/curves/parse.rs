//! Text form of polynomials in `x` over `F_{2^n}`, with field elements
//! written in the generator `g`, e.g. `x^3 + g*x` or `(g+1)*x^5 + 1`.

use super::field::{BinaryField, FqElement};
use super::fqpoly::FqPoly;
use super::CurveError;

struct Parser<'a> {
    field: BinaryField,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CurveError {
        CurveError::Parse(format!("{msg} in `{}`", self.text))
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn number(&mut self) -> Result<u64, CurveError> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.chars.next();
        }
        digits.parse().map_err(|_| self.err("expected a number"))
    }

    /// expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<FqPoly, CurveError> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('+' | '-')) {
            self.chars.next();
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<FqPoly, CurveError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.chars.next();
            let rhs = self.factor()?;
            acc = acc.mul(&self.field, &rhs);
        }
        Ok(acc)
    }

    /// factor := atom ('^' number)?
    fn factor(&mut self) -> Result<FqPoly, CurveError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.chars.next();
        let e = self.number()?;
        if e > 64 {
            return Err(self.err("exponent too large"));
        }
        Ok((0..e).fold(FqPoly::constant(1), |acc, _| acc.mul(&self.field, &base)))
    }

    /// atom := 'x' | 'g' | number | '(' expr ')'
    fn atom(&mut self) -> Result<FqPoly, CurveError> {
        match self.peek() {
            Some('x') => {
                self.chars.next();
                Ok(FqPoly::x())
            }
            Some('g') => {
                self.chars.next();
                Ok(FqPoly::constant(self.field.generator()))
            }
            Some('(') => {
                self.chars.next();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.chars.next();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(FqPoly::constant((self.number()? % 2) as FqElement)),
            Some(c) => Err(self.err(&format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_fq_poly(field: BinaryField, text: &str) -> Result<FqPoly, CurveError> {
    let mut p = Parser { field, chars: text.char_indices().peekable(), text };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// A field element as a polynomial in `g`, e.g. `g^2+1`.
pub fn format_element(x: FqElement) -> String {
    if x == 0 {
        return "0".into();
    }
    let terms: Vec<String> = (0..32)
        .rev()
        .filter(|i| (x >> i) & 1 == 1)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    terms.join("+")
}

/// Inverse of [`parse_fq_poly`] for canonical output.
pub fn format_fq_poly(p: &FqPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate().rev().filter(|(_, c)| **c != 0) {
        let coeff = format_element(c);
        let coeff = if coeff.contains('+') { format!("({coeff})") } else { coeff };
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (coeff.as_str(), mono.is_empty()) {
            (_, true) => coeff,
            ("1", false) => mono,
            (_, false) => format!("{coeff}*{mono}"),
        });
    }
    terms.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_style_input() {
        let f = BinaryField::new(2).unwrap();
        let g = f.generator();
        assert_eq!(parse_fq_poly(f, "x^3+g*x").unwrap(), FqPoly::new(vec![0, g, 0, 1]));
        assert_eq!(parse_fq_poly(f, "(g+1)*x^5+1").unwrap(), FqPoly::new(vec![1, 0, 0, 0, 0, g ^ 1]));
        assert_eq!(parse_fq_poly(f, "(x+1)^2").unwrap(), FqPoly::new(vec![1, 0, 1]));
    }

    #[test]
    fn round_trip() {
        let f = BinaryField::new(4).unwrap();
        for text in ["x^5 + (g^3+1)*x + g", "0", "1", "(g+1)*x^6 + x^2"] {
            let p = parse_fq_poly(f, text).unwrap();
            assert_eq!(parse_fq_poly(f, &format_fq_poly(&p)).unwrap(), p);
        }
        assert_eq!(format_fq_poly(&parse_fq_poly(f, "g*x^2+(g+1)").unwrap()), "g*x^2 + (g+1)");
    }

    #[test]
    fn rejects_garbage() {
        let f = BinaryField::new(1).unwrap();
        for bad in ["x^", "(x+1", "x y", "y", ""] {
            assert!(matches!(parse_fq_poly(f, bad), Err(CurveError::Parse(_))), "{bad}");
        }
    }
}

//! Text, LaTeX and JSON forms of [`NCPoly`], and the expression parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' natural)?
//! atom   := 'x' | 'u' | 'v' | 'y' | 'D' | 'h' | 'g'
//!         | rational | 'sqrt' '(' natural ')' | '(' expr ')'
//! rational := integer ('/' natural)?
//! ```
//!
//! `D` stands for the quantum determinant `x*y - u*v - h*x*v`. Parsed input is
//! normal ordered immediately.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::ncalg::{self, Generator, Monomial, NCPoly, Ring};
use crate::scalar::{self, RadScalar, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 32;
/// Deepest parenthesis nesting accepted.
pub const MAX_DEPTH: usize = 128;
/// Largest degree in the generators of any parsed or decoded polynomial.
pub const MAX_DEGREE: u32 = 10;
/// Largest total degree in `h` and `g` of any parsed coefficient.
pub const MAX_SCALAR_DEGREE: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("exponent at position {pos} must be a natural number")]
    BadExponent { pos: usize },
    #[error("exponent at position {pos} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge { pos: usize },
    #[error("sqrt argument at position {pos} must be a natural number")]
    BadSqrt { pos: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("parentheses nested deeper than {MAX_DEPTH} at position {pos}")]
    TooDeep { pos: usize },
    #[error("sqrt argument at position {pos} exceeds {}", scalar::MAX_RADICAND)]
    RadicandTooLarge { pos: usize },
    #[error("expression at position {pos} is too large (degree or radicand limit)")]
    TooLarge { pos: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Letter(char),
    Sqrt,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'x' | 'u' | 'v' | 'y' | 'D' | 'h' | 'g' => Tok::Letter(c),
            's' if bytes[pos..].starts_with(b"sqrt") => {
                for _ in 0..3 {
                    chars.next();
                }
                Tok::Sqrt
            }
            d if d.is_ascii_digit() => {
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = p + 1;
                    chars.next();
                }
                out.push((pos, Tok::Num(text[pos..end].parse().expect("digits"))));
                continue;
            }
            other => return Err(ParseError::Unexpected { pos, found: other }),
        };
        chars.next();
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    ring: Ring,
    text: &'a str,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn unexpected(&self) -> ParseError {
        let pos = self.pos();
        match self.text[pos.min(self.text.len())..].chars().next() {
            Some(found) if self.idx < self.toks.len() => ParseError::Unexpected { pos, found },
            _ => ParseError::UnexpectedEnd { pos },
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.idx += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<NCPoly, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.idx += 1;
            }
            Some(Tok::Plus) => self.idx += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.idx += 1;
            let pos = self.pos();
            let rhs = self.factor()?;
            acc = checked_mul(&acc, &rhs, pos)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.idx += 1;
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.to_u32().ok_or(ParseError::ExponentTooLarge { pos })?;
                if n > MAX_EXPONENT {
                    return Err(ParseError::ExponentTooLarge { pos });
                }
                self.idx += 1;
                let mut out = NCPoly::one(self.ring);
                for _ in 0..n {
                    out = checked_mul(&out, &base, pos)?;
                }
                Ok(out)
            }
            _ => Err(ParseError::BadExponent { pos }),
        }
    }

    fn natural(&mut self) -> Option<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.idx += 1;
                Some(n)
            }
            _ => None,
        }
    }

    fn atom(&mut self) -> Result<NCPoly, ParseError> {
        let ring = self.ring;
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| self.unexpected())?;
        match tok {
            Tok::Letter(c) => {
                self.idx += 1;
                Ok(match c {
                    'D' => ncalg::quantum_determinant(ring),
                    'h' => NCPoly::scalar(ring, RadScalar::h()),
                    'g' => NCPoly::scalar(ring, RadScalar::g()),
                    other => NCPoly::generator(ring, Generator::from_letter(other).expect("letter")),
                })
            }
            Tok::Num(n) => {
                self.idx += 1;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.idx += 1;
                    let dpos = self.pos();
                    let d = self.natural().ok_or_else(|| self.unexpected())?;
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos: dpos });
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(NCPoly::scalar(ring, RadScalar::from_rational(q)))
            }
            Tok::Sqrt => {
                self.idx += 1;
                self.expect(Tok::LParen)?;
                let apos = self.pos();
                let n = self.natural().ok_or(ParseError::BadSqrt { pos: apos })?;
                let n = n.to_u64().ok_or(ParseError::RadicandTooLarge { pos: apos })?;
                if n > scalar::MAX_RADICAND {
                    return Err(ParseError::RadicandTooLarge { pos: apos });
                }
                self.expect(Tok::RParen)?;
                Ok(NCPoly::scalar(ring, scalar::sqrt_nat(n)))
            }
            Tok::LParen => {
                self.idx += 1;
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(ParseError::TooDeep { pos });
                }
                let inner = self.expr()?;
                self.depth -= 1;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn degrees(p: &NCPoly) -> (u32, u32) {
    p.terms()
        .fold((0, 0), |(d, s), (m, c)| (d.max(m.degree()), s.max(c.degree())))
}

/// `a * b`, refused when the result would exceed the size limits.
fn checked_mul(a: &NCPoly, b: &NCPoly, pos: usize) -> Result<NCPoly, ParseError> {
    let (da, sa) = degrees(a);
    let (db, sb) = degrees(b);
    let radicals_fit = scalar::radicand_products_fit(
        a.terms().flat_map(|(_, c)| c.radicands()),
        b.terms().flat_map(|(_, c)| c.radicands()),
    );
    // normal ordering can raise the h-degree by at most the generator degree
    if da + db > MAX_DEGREE || sa + sb + da + db > MAX_SCALAR_DEGREE || !radicals_fit {
        return Err(ParseError::TooLarge { pos });
    }
    Ok(a * b)
}

/// Parse and normal order an expression in `ring`.
pub fn parse(text: &str, ring: Ring) -> Result<NCPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
        ring,
        text,
        depth: 0,
    };
    let out = p.expr()?;
    if p.idx != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

pub fn print(p: &NCPoly, format: Format) -> String {
    match format {
        Format::Text => to_text(p),
        Format::Latex => to_latex(p),
        Format::Json => serde_json::to_string(p).expect("NCPoly serializes"),
    }
}

/// One fully expanded summand: `q · h^i g^j · √r · word`.
struct Atom<'a> {
    q: &'a Rational,
    h: u32,
    g: u32,
    rad: u64,
    mono: Monomial,
}

fn atoms<'a>(terms: impl Iterator<Item = (Monomial, &'a RadScalar)>) -> Vec<Atom<'a>> {
    let mut out = Vec::new();
    for (mono, c) in terms {
        for (rad, poly) in c.terms() {
            for (&(h, g), q) in poly.terms() {
                out.push(Atom { q, h, g, rad, mono });
            }
        }
    }
    out
}

struct Style {
    join: &'static str,
    power: fn(&str, u32) -> String,
    sqrt: fn(u64) -> String,
    fraction: fn(&Rational) -> String,
}

const TEXT: Style = Style {
    join: "*",
    power: |base, e| if e == 1 { base.to_string() } else { format!("{base}^{e}") },
    sqrt: |r| format!("sqrt({r})"),
    fraction: |q| {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("{}/{}", q.numer(), q.denom())
        }
    },
};

const LATEX: Style = Style {
    join: " ",
    power: |base, e| if e == 1 { base.to_string() } else { format!("{base}^{{{e}}}") },
    sqrt: |r| format!("\\sqrt{{{r}}}"),
    fraction: |q| {
        if q.is_integer() {
            q.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom())
        }
    },
};

fn render(atoms: &[Atom<'_>], style: &Style) -> String {
    if atoms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, a) in atoms.iter().enumerate() {
        let negative = a.q.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = a.q.abs();
        let mut factors = Vec::new();
        if !mag.is_one() {
            factors.push((style.fraction)(&mag));
        }
        if a.h > 0 {
            factors.push((style.power)("h", a.h));
        }
        if a.g > 0 {
            factors.push((style.power)("g", a.g));
        }
        if a.rad > 1 {
            factors.push((style.sqrt)(a.rad));
        }
        for g in Generator::ALL {
            let e = a.mono.exponent(g);
            if e > 0 {
                factors.push((style.power)(&g.letter().to_string(), e));
            }
        }
        if factors.is_empty() {
            factors.push("1".to_string());
        }
        out.push_str(&factors.join(style.join));
    }
    out
}

/// Canonical text form, leading (heaviest) term first; re-parses to `p`.
pub fn to_text(p: &NCPoly) -> String {
    render(&atoms(p.terms().rev().map(|(m, c)| (*m, c))), &TEXT)
}

pub fn to_latex(p: &NCPoly) -> String {
    render(&atoms(p.terms().rev().map(|(m, c)| (*m, c))), &LATEX)
}

pub(crate) fn scalar_text(s: &RadScalar) -> String {
    render(&atoms(std::iter::once((Monomial::one(), s))), &TEXT)
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    word: String,
    coef: RadScalar,
}

#[derive(Serialize, Deserialize)]
struct NCPolyRepr {
    ring: Ring,
    terms: Vec<TermRepr>,
}

impl Serialize for NCPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NCPolyRepr {
            ring: self.ring(),
            terms: self
                .terms()
                .map(|(m, c)| TermRepr {
                    word: m.to_string(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = NCPolyRepr::deserialize(d)?;
        let mut words = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let w = ncalg::parse_word(&t.word)
                .ok_or_else(|| serde::de::Error::custom(format!("bad word {:?}", t.word)))?;
            if w.len() > MAX_DEGREE as usize {
                return Err(serde::de::Error::custom(format!("word longer than {MAX_DEGREE}")));
            }
            words.push((w, t.coef));
        }
        // non-normal words are accepted and reduced
        Ok(ncalg::normal_form(&words, repr.ring))
    }
}

impl NCPoly {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("NCPoly serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Decode(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{normal_form, word};
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn determinant_text_collapses_in_sl() {
        assert_eq!(parse("x*y - u*v - h*x*v", Ring::Sl).unwrap(), NCPoly::one(Ring::Sl));
        assert_eq!(parse("D", Ring::Sl).unwrap(), NCPoly::one(Ring::Sl));
    }

    #[test]
    fn simple_atoms() {
        assert_eq!(parse("x", Ring::Gl).unwrap(), NCPoly::x(Ring::Gl));
        assert_eq!(
            parse("v*x - h*v^2", Ring::Gl).unwrap(),
            normal_form(&[(word("xv"), RadScalar::one())], Ring::Gl)
        );
        assert_eq!(
            parse("3/6*sqrt(8)", Ring::Gl).unwrap(),
            NCPoly::scalar(Ring::Gl, scalar::sqrt_nat(2))
        );
        assert_eq!(parse(" - x + x ", Ring::Gl).unwrap(), NCPoly::zero(Ring::Gl));
    }

    #[test]
    fn relation_rearrangements_agree() {
        // v x + h v^2 is x v + 2 h v^2 rewritten by [v,x] = h v^2
        let a = parse("v*x + h*v^2", Ring::Gl).unwrap();
        let b = parse("x*v + 2*h*v^2", Ring::Gl).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x + ", Ring::Gl), Err(ParseError::UnexpectedEnd { pos: 4 }));
        assert_eq!(parse("x ^ y", Ring::Gl), Err(ParseError::BadExponent { pos: 4 }));
        assert_eq!(parse("x^-1", Ring::Gl), Err(ParseError::BadExponent { pos: 2 }));
        assert_eq!(parse("x $", Ring::Gl), Err(ParseError::Unexpected { pos: 2, found: '$' }));
        assert_eq!(parse("1/0", Ring::Gl), Err(ParseError::ZeroDenominator { pos: 2 }));
        assert_eq!(parse("x y", Ring::Gl), Err(ParseError::Unexpected { pos: 2, found: 'y' }));
        assert_eq!(parse("x^99", Ring::Gl), Err(ParseError::ExponentTooLarge { pos: 2 }));
        assert_eq!(parse("sqrt(x)", Ring::Gl), Err(ParseError::BadSqrt { pos: 5 }));
        let deep = "(".repeat(MAX_DEPTH + 1) + "x" + &")".repeat(MAX_DEPTH + 1);
        assert!(matches!(parse(&deep, Ring::Gl), Err(ParseError::TooDeep { .. })));
        assert_eq!(
            parse("sqrt(10000000000000)", Ring::Gl),
            Err(ParseError::RadicandTooLarge { pos: 5 })
        );
        assert!(matches!(parse("(x+v)^30", Ring::Gl), Err(ParseError::TooLarge { .. })));
        assert!(matches!(parse("D^6", Ring::Gl), Err(ParseError::TooLarge { .. })));
        assert!(parse("D^5", Ring::Gl).is_ok());
        let long = format!(r#"{{"ring":"gl","terms":[{{"word":"{}","coef":{{"terms":[]}}}}]}}"#, "x".repeat(11));
        assert!(NCPoly::from_json_str(&long).is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(to_text(&NCPoly::zero(Ring::Gl)), "0");
        let p = parse("1 + 2*v*u", Ring::Gl).unwrap();
        assert_eq!(to_text(&p), "2*v*u + 1");
        let entry = parse("x^2 + h*x*v", Ring::Gl).unwrap();
        assert_eq!(to_latex(&entry), "x^{2} + h v x - h^{2} v^{2}");
        assert_eq!(to_text(&entry), "x^2 + h*v*x - h^2*v^2");
        let s = parse("-3/2*h*sqrt(2)*v", Ring::Gl).unwrap();
        assert_eq!(to_text(&s), "-3/2*h*sqrt(2)*v");
        assert_eq!(to_latex(&s), "-\\frac{3}{2} h \\sqrt{2} v");
    }

    #[test]
    fn json_layout() {
        let p = parse("x - 1/2*h", Ring::Sl).unwrap();
        let json = print(&p, Format::Json);
        assert_eq!(
            json,
            r#"{"ring":"sl","terms":[{"word":"","coef":{"terms":[{"rad":1,"poly":[{"h":1,"g":0,"q":"-1/2"}]}]}},{"word":"x","coef":{"terms":[{"rad":1,"poly":[{"h":0,"g":0,"q":"1/1"}]}]}}]}"#
        );
        assert_eq!(NCPoly::from_json_str(&json).unwrap(), p);
        assert!(NCPoly::from_json_str(r#"{"ring":"gl","terms":[{"word":"xz","coef":{"terms":[]}}]}"#).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        let term = (
            prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..4),
            -4i64..=4,
            1i64..=3,
            0u32..3,
            0u32..2,
            prop::sample::select(vec![1u64, 2, 3, 6]),
        );
        (prop::sample::select(vec![Ring::Gl, Ring::Sl]), prop::collection::vec(term, 0..5)).prop_map(
            |(ring, terms)| {
                let ws: Vec<_> = terms
                    .into_iter()
                    .map(|(w, n, d, hp, gp, r)| {
                        let c = &RadScalar::from_poly(scalar::DeformPoly::monomial(rat(n, d), hp, gp))
                            * &scalar::sqrt_nat(r);
                        (w, c)
                    })
                    .collect();
                normal_form(&ws, ring)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn text_round_trip(p in arb_poly()) {
            let text = to_text(&p);
            prop_assert_eq!(parse(&text, p.ring()).unwrap(), p);
        }
    }
}

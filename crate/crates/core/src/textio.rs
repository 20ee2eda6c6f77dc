//! Expression syntax, canonical text, LaTeX and JSON.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr    := sign? term (('+'|'-') term)*
//! term    := (rat '*')? wordseq | rat
//! wordseq := atom (('*')? atom)*
//! atom    := letter | '1' | 'N(' expr ')' | '[' expr ']' | '(' expr ')'
//! rat     := int ('/' int)?
//! ```
//!
//! `N(…)` and `[…]` both denote the operator.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elements::{Element, Scalar, TensorElement};
use crate::words::{validate_basis, Factor, Letter, RawFactor, Word};

/// An operated-algebra expression before normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawExpr {
    Sum(Vec<(Scalar, RawExpr)>),
    Product(Vec<RawExpr>),
    Op(Box<RawExpr>),
    Letter(Letter),
    Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}", expected.join(" or "))]
    SyntaxError { offset: usize, expected: Vec<&'static str> },
    #[error("zero denominator at offset {offset}")]
    ZeroDenominator { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::SyntaxError { offset, .. } | ParseError::ZeroDenominator { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Punct(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Int(input[start..i].to_string()), offset: start });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(input[start..i].to_string()), offset: start });
        } else if b"+-*/()[]".contains(&c) {
            out.push(Token { tok: Tok::Punct(c as char), offset: i });
            i += 1;
        } else {
            return Err(ParseError::SyntaxError { offset: i, expected: EXPECT_ATOM.to_vec() });
        }
    }
    out.push(Token { tok: Tok::End, offset: input.len() });
    Ok(out)
}

const EXPECT_ATOM: &[&str] = &["letter", "'1'", "'N('", "'['", "'('"];
const EXPECT_TERM: &[&str] = &["letter", "integer", "'N('", "'['", "'('"];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].offset
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn is_punct(&self, c: char) -> bool {
        *self.peek() == Tok::Punct(c)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError::SyntaxError { offset: self.offset(), expected: expected.to_vec() }
    }

    fn expect_punct(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.is_punct(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name, "'+'", "'-'"]))
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) => true,
            Tok::Int(s) => s == "1",
            Tok::Punct(c) => *c == '[' || *c == '(',
            Tok::End => false,
        }
    }

    fn expr(&mut self) -> Result<RawExpr, ParseError> {
        let mut terms = Vec::new();
        let mut explicit_sign = false;
        let mut negative = false;
        if self.is_punct('+') || self.is_punct('-') {
            explicit_sign = true;
            negative = self.bump().tok == Tok::Punct('-');
        }
        loop {
            let (mut c, t) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((c, t));
            if self.is_punct('+') || self.is_punct('-') {
                negative = self.bump().tok == Tok::Punct('-');
            } else {
                break;
            }
        }
        if terms.len() == 1 && !explicit_sign && terms[0].0.is_one() {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(RawExpr::Sum(terms))
    }

    fn term(&mut self) -> Result<(Scalar, RawExpr), ParseError> {
        if let Tok::Int(first) = self.peek().clone() {
            let is_bare_one = first == "1" && *self.peek_at(1) != Tok::Punct('/');
            if is_bare_one && !matches!(self.peek_at(1), Tok::Punct('*')) {
                // `1` followed by an atom opens a word sequence.
                let save = self.pos;
                self.bump();
                if self.starts_atom() {
                    self.pos = save;
                    return Ok((Scalar::one(), self.wordseq()?));
                }
                return Ok((Scalar::one(), RawExpr::Unit));
            }
            let c = self.rational()?;
            if self.is_punct('*') {
                self.bump();
                return Ok((c, self.wordseq()?));
            }
            if self.starts_atom() {
                return Err(self.error(&["'*'", "'+'", "'-'", "end of input"]));
            }
            return Ok((c, RawExpr::Unit));
        }
        if !self.starts_atom() {
            return Err(self.error(EXPECT_TERM));
        }
        Ok((Scalar::one(), self.wordseq()?))
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let num = match self.bump().tok {
            Tok::Int(s) => s.parse::<BigInt>().expect("digits"),
            _ => unreachable!("caller checked for an integer"),
        };
        if !self.is_punct('/') {
            return Ok(Scalar::from_integer(num));
        }
        self.bump();
        let offset = self.offset();
        let den = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                s.parse::<BigInt>().expect("digits")
            }
            _ => return Err(self.error(&["integer"])),
        };
        if den.is_zero() {
            return Err(ParseError::ZeroDenominator { offset });
        }
        Ok(Scalar::new(num, den))
    }

    fn wordseq(&mut self) -> Result<RawExpr, ParseError> {
        let mut atoms = vec![self.atom()?];
        loop {
            if self.is_punct('*') {
                self.bump();
                atoms.push(self.atom()?);
            } else if self.starts_atom() {
                atoms.push(self.atom()?);
            } else {
                break;
            }
        }
        if atoms.len() == 1 {
            return Ok(atoms.pop().expect("one atom"));
        }
        Ok(RawExpr::Product(atoms))
    }

    fn atom(&mut self) -> Result<RawExpr, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if name == "N" && *self.peek_at(1) == Tok::Punct('(') => {
                self.bump();
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(')', "')'")?;
                Ok(RawExpr::Op(Box::new(inner)))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(RawExpr::Letter(Letter::new(&name).expect("lexer yields identifiers")))
            }
            Tok::Int(s) if s == "1" => {
                self.bump();
                Ok(RawExpr::Unit)
            }
            Tok::Punct('[') => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(']', "']'")?;
                Ok(RawExpr::Op(Box::new(inner)))
            }
            Tok::Punct('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(')', "')'")?;
                Ok(inner)
            }
            _ => Err(self.error(EXPECT_ATOM)),
        }
    }
}

/// Parses an expression into an unevaluated tree.
pub fn parse(input: &str) -> Result<RawExpr, ParseError> {
    let mut p = Parser { tokens: lex(input)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(e)
}

fn push_signed(out: &mut String, first: bool, negative: bool) {
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
}

/// Canonical text: terms in canonical word order, unit coefficients elided.
/// `parse` followed by evaluation inverts it.
pub fn print_canonical(a: &Element) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in a.iter().enumerate() {
        push_signed(&mut out, i == 0, c.is_negative());
        let abs = c.abs();
        if w.is_unit() {
            let _ = write!(out, "{abs}");
        } else if abs.is_one() {
            let _ = write!(out, "{w}");
        } else {
            let _ = write!(out, "{abs}*{w}");
        }
    }
    out
}

/// Tensors as sums of `a (x) b` pairs.
pub fn print_tensor(t: &TensorElement) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, ((l, r), c)) in t.iter().enumerate() {
        push_signed(&mut out, i == 0, c.is_negative());
        let abs = c.abs();
        if abs.is_one() {
            let _ = write!(out, "{l} (x) {r}");
        } else {
            let _ = write!(out, "{abs}*({l} (x) {r})");
        }
    }
    out
}

/// LaTeX with `\lfloor … \rfloor` brackets.
pub fn print_latex(a: &Element) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = LatexBuf::default();
    for (i, (w, c)) in a.iter().enumerate() {
        push_signed(&mut out.0, i == 0, c.is_negative());
        let abs = c.abs();
        if !abs.is_one() || w.is_unit() {
            out.push(&latex_scalar(&abs));
        }
        if !w.is_unit() {
            latex_word(w, &mut out);
        }
    }
    out.0
}

fn latex_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

#[derive(Default)]
struct LatexBuf(String);

impl LatexBuf {
    /// Appends, separating a control word from a following alphanumeric.
    fn push(&mut self, s: &str) {
        let starts_alnum = s.chars().next().is_some_and(|c| c.is_ascii_alphanumeric());
        if starts_alnum && self.ends_with_control_word() {
            self.0.push(' ');
        }
        self.0.push_str(s);
    }

    fn ends_with_control_word(&self) -> bool {
        let trimmed = self.0.trim_end_matches(|c: char| c.is_ascii_alphabetic());
        trimmed.len() < self.0.len() && trimmed.ends_with('\\')
    }
}

fn latex_word(w: &Word, out: &mut LatexBuf) {
    if w.is_unit() {
        out.push("1");
        return;
    }
    for f in w.factors() {
        match f {
            Factor::Letter(l) => out.push(l.name()),
            Factor::Bracket(inner) => {
                out.push("\\lfloor");
                latex_word(inner, out);
                out.push("\\rfloor");
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("schema error: {0}")]
pub struct SchemaError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum FactorDoc {
    Letter(String),
    Bracket {
        #[serde(rename = "N")]
        content: Vec<FactorDoc>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    num: String,
    den: String,
    word: Vec<FactorDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize)]
struct TensorTermDoc {
    num: String,
    den: String,
    left: Vec<FactorDoc>,
    right: Vec<FactorDoc>,
}

#[derive(Debug, Serialize)]
struct TensorDoc {
    terms: Vec<TensorTermDoc>,
}

fn word_doc(w: &Word) -> Vec<FactorDoc> {
    w.factors()
        .iter()
        .map(|f| match f {
            Factor::Letter(l) => FactorDoc::Letter(l.name().to_string()),
            Factor::Bracket(inner) => FactorDoc::Bracket { content: word_doc(inner) },
        })
        .collect()
}

fn raw_from_doc(doc: &[FactorDoc]) -> Result<Vec<RawFactor>, SchemaError> {
    doc.iter()
        .map(|f| match f {
            FactorDoc::Letter(name) => Letter::new(name)
                .map(RawFactor::Letter)
                .map_err(|e| SchemaError(e.to_string())),
            FactorDoc::Bracket { content } => raw_from_doc(content).map(RawFactor::Bracket),
        })
        .collect()
}

pub fn element_to_json(a: &Element) -> String {
    let doc = ElementDoc {
        terms: a
            .iter()
            .map(|(w, c)| TermDoc {
                num: c.numer().to_string(),
                den: c.denom().to_string(),
                word: word_doc(w),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn tensor_to_json(t: &TensorElement) -> String {
    let doc = TensorDoc {
        terms: t
            .iter()
            .map(|((l, r), c)| TensorTermDoc {
                num: c.numer().to_string(),
                den: c.denom().to_string(),
                left: word_doc(l),
                right: word_doc(r),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

fn parse_int(s: &str, field: &str) -> Result<BigInt, SchemaError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SchemaError(format!("{field} {s:?} is not a decimal integer")));
    }
    s.parse().map_err(|_| SchemaError(format!("{field} {s:?} is not a decimal integer")))
}

/// Inverse of [`element_to_json`]. Words are revalidated; repeated words are
/// summed.
pub fn element_from_json(text: &str) -> Result<Element, SchemaError> {
    let doc: ElementDoc = serde_json::from_str(text).map_err(|e| SchemaError(e.to_string()))?;
    let mut out = Element::zero();
    for term in doc.terms {
        let num = parse_int(&term.num, "num")?;
        let den = parse_int(&term.den, "den")?;
        if den.is_zero() {
            return Err(SchemaError("zero denominator".into()));
        }
        let word = validate_basis(&raw_from_doc(&term.word)?).map_err(|e| SchemaError(e.to_string()))?;
        out.add_term(word, Scalar::new(num, den));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::eval_expression;
    use crate::elements::{ratio, scalar};

    fn letter(n: &str) -> RawExpr {
        RawExpr::Letter(Letter::new(n).unwrap())
    }

    fn op(e: RawExpr) -> RawExpr {
        RawExpr::Op(Box::new(e))
    }

    fn eval(s: &str) -> Element {
        eval_expression(&parse(s).unwrap())
    }

    #[test]
    fn parse_product_of_operators() {
        assert_eq!(
            parse("N(x)*N(y)").unwrap(),
            RawExpr::Product(vec![op(letter("x")), op(letter("y"))])
        );
    }

    #[test]
    fn parse_sum_with_rational() {
        assert_eq!(
            parse("2/3*[x y] - 1").unwrap(),
            RawExpr::Sum(vec![
                (ratio(2, 3), op(RawExpr::Product(vec![letter("x"), letter("y")]))),
                (scalar(-1), RawExpr::Unit),
            ])
        );
    }

    #[test]
    fn parse_unbalanced() {
        let err = parse("N(x").unwrap_err();
        assert_eq!(err.offset(), 3);
        assert!(matches!(err, ParseError::SyntaxError { .. }));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse("x/0").unwrap_err().offset(), 1);
        assert_eq!(parse("1/0*x").unwrap_err(), ParseError::ZeroDenominator { offset: 2 });
        assert_eq!(parse("").unwrap_err().offset(), 0);
        assert_eq!(parse("x +").unwrap_err().offset(), 3);
        assert_eq!(parse("2 x").unwrap_err().offset(), 2);
        assert_eq!(parse("x $ y").unwrap_err().offset(), 2);
        assert_eq!(parse("[x]]").unwrap_err().offset(), 3);
        assert_eq!(parse("x*2").unwrap_err().offset(), 2);
    }

    #[test]
    fn unit_forms() {
        assert_eq!(parse("1").unwrap(), RawExpr::Unit);
        assert_eq!(parse("1 x").unwrap(), RawExpr::Product(vec![RawExpr::Unit, letter("x")]));
        assert_eq!(eval("1*x"), eval("x"));
        assert_eq!(eval("x 1 y"), eval("x y"));
        assert_eq!(eval("-1/2"), Element::from_scalar(ratio(-1, 2)));
        assert_eq!(eval("(x + y) z"), eval("x z + y z"));
        assert_eq!(parse("N").unwrap(), letter("N"));
    }

    #[test]
    fn canonical_text_examples() {
        assert_eq!(print_canonical(&eval("N(x)*N(y)")), "[x [y]] + [[x] y] - [[x y]]");
        assert_eq!(print_canonical(&Element::zero()), "0");
        assert_eq!(print_canonical(&eval("1 + 2*[1]")), "1 + 2*[1]");
        assert_eq!(print_canonical(&eval("-[[x y]] + 1/2*x")), "1/2*x - [[x y]]");
        assert_eq!(print_canonical(&eval("-[[x y]]")), "-[[x y]]");
    }

    #[test]
    fn latex_examples() {
        assert_eq!(print_latex(&eval("[x]")), "\\lfloor x\\rfloor");
        assert_eq!(print_latex(&eval("2*x")), "2x");
        assert_eq!(print_latex(&eval("-[[x y]]")), "-\\lfloor\\lfloor xy\\rfloor\\rfloor");
        assert_eq!(print_latex(&eval("1/2*[1] y + 3")), "3 + \\frac{1}{2}\\lfloor 1\\rfloor y");
        assert_eq!(print_latex(&Element::zero()), "0");
    }

    #[test]
    fn json_schema_instances() {
        assert_eq!(
            element_to_json(&eval("x [1]")),
            r#"{"terms":[{"num":"1","den":"1","word":["x",{"N":[]}]}]}"#
        );
        assert_eq!(
            element_to_json(&Element::one()),
            r#"{"terms":[{"num":"1","den":"1","word":[]}]}"#
        );
        assert_eq!(element_to_json(&Element::zero()), r#"{"terms":[]}"#);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let e = eval("-2/3*[x [y]] + 1 - x y");
        assert_eq!(element_from_json(&element_to_json(&e)).unwrap(), e);
        assert!(element_from_json(r#"{"terms":[{"num":"1","den":"0","word":[]}]}"#).is_err());
        assert!(element_from_json(r#"{"terms":[{"num":"1","den":"1","word":[{"N":[]},{"N":[]}]}]}"#).is_err());
        assert!(element_from_json(r#"{"terms":[{"num":"x","den":"1","word":[]}]}"#).is_err());
        assert!(element_from_json(r#"{"terms":[{"num":"1","den":"1","word":["1x"]}]}"#).is_err());
        assert!(element_from_json(r#"{"items":[]}"#).is_err());
        assert!(element_from_json("not json").is_err());
        // Unreduced input is normalized.
        let half = element_from_json(r#"{"terms":[{"num":"2","den":"4","word":["x"]}]}"#).unwrap();
        assert_eq!(half, Element::monomial(Word::letter(Letter::new("x").unwrap()), ratio(1, 2)));
    }

    #[test]
    fn tensor_text() {
        let t = crate::coalgebra::coproduct(&eval("2*[x] - y"));
        assert_eq!(print_tensor(&t), "-1 (x) y + 2*(1 (x) [x])");
        assert_eq!(print_tensor(&TensorElement::zero()), "0");
        assert_eq!(
            tensor_to_json(&TensorElement::one()),
            r#"{"terms":[{"num":"1","den":"1","left":[],"right":[]}]}"#
        );
    }
}

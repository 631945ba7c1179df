//! A small expression language for graph shapes.
//!
//! ```text
//! expr   := term ( '*' term )*        join, lowest precedence
//! term   := factor ( '+' factor )*    disjoint union
//! factor := atom [ '^c' ]             complement
//! atom   := 'K' int | 'C' int | '(' expr ')'
//! ```
//!
//! `⋆` and `∪` are accepted for `*` and `+`, and `K_3` for `K3`. Evaluated
//! shapes are labelled with the smallest primes, assigned left to right.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::chargraph::CharGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphExpr {
    Complete(usize),
    Cycle(usize),
    Complement(Box<GraphExpr>),
    Union(Vec<GraphExpr>),
    Join(Vec<GraphExpr>),
}

impl GraphExpr {
    pub fn complement(e: GraphExpr) -> GraphExpr {
        GraphExpr::Complement(Box::new(e))
    }

    /// Number of vertices of the evaluated graph.
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphExpr::Complete(n) | GraphExpr::Cycle(n) => *n,
            GraphExpr::Complement(e) => e.vertex_count(),
            GraphExpr::Union(es) | GraphExpr::Join(es) => es.iter().map(GraphExpr::vertex_count).sum(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            GraphExpr::Complete(_) | GraphExpr::Cycle(_) => 1,
            GraphExpr::Complement(e) => 1 + e.depth(),
            GraphExpr::Union(es) | GraphExpr::Join(es) => 1 + es.iter().map(GraphExpr::depth).max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Complete(usize),
    Cycle(usize),
    Star,
    Plus,
    Comp,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '*' | '⋆' | '∗' => toks.push((start, Tok::Star)),
            '+' | '∪' => toks.push((start, Tok::Plus)),
            '(' => toks.push((start, Tok::LParen)),
            ')' => toks.push((start, Tok::RParen)),
            '^' => {
                if chars.get(i + 1) != Some(&'c') {
                    return Err(ParseError { position: start, message: "expected 'c' after '^'".into() });
                }
                i += 1;
                toks.push((start, Tok::Comp));
            }
            'K' | 'C' => {
                i += 1;
                if chars.get(i) == Some(&'_') {
                    i += 1;
                }
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(ParseError {
                        position: digits_start,
                        message: format!("expected a size after '{c}'"),
                    });
                }
                let digits: String = chars[digits_start..i].iter().collect();
                let n: usize = digits.parse().map_err(|_| ParseError {
                    position: digits_start,
                    message: format!("size {digits} is too large"),
                })?;
                let tok = if c == 'K' {
                    Tok::Complete(n)
                } else {
                    if n < 3 {
                        return Err(ParseError {
                            position: start,
                            message: format!("cycle C{n} needs at least 3 vertices"),
                        });
                    }
                    Tok::Cycle(n)
                };
                toks.push((start, tok));
                continue;
            }
            other => {
                return Err(ParseError { position: start, message: format!("unexpected character '{other}'") });
            }
        }
        i += 1;
    }
    toks.push((chars.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    cursor: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.cursor].1
    }

    fn position(&self) -> usize {
        self.toks[self.cursor].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.cursor += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.position(), message: message.into() })
    }

    fn expr(&mut self) -> Result<GraphExpr, ParseError> {
        let mut parts = vec![self.term()?];
        while self.peek() == Tok::Star {
            self.bump();
            parts.push(self.term()?);
        }
        Ok(collapse(parts, GraphExpr::Join))
    }

    fn term(&mut self) -> Result<GraphExpr, ParseError> {
        let mut parts = vec![self.factor()?];
        while self.peek() == Tok::Plus {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(collapse(parts, GraphExpr::Union))
    }

    fn factor(&mut self) -> Result<GraphExpr, ParseError> {
        let atom = self.atom()?;
        if self.peek() == Tok::Comp {
            self.bump();
            return Ok(GraphExpr::complement(atom));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<GraphExpr, ParseError> {
        match self.peek() {
            Tok::Complete(n) => {
                self.bump();
                Ok(GraphExpr::Complete(n))
            }
            Tok::Cycle(n) => {
                self.bump();
                Ok(GraphExpr::Cycle(n))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Tok::RParen {
                    return self.error("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => self.error("unexpected end of input"),
            _ => self.error("expected 'K<n>', 'C<n>' or '('"),
        }
    }
}

fn collapse(mut parts: Vec<GraphExpr>, wrap: fn(Vec<GraphExpr>) -> GraphExpr) -> GraphExpr {
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        wrap(parts)
    }
}

pub fn parse_shape(text: &str) -> Result<GraphExpr, ParseError> {
    let mut parser = Parser { toks: lex(text)?, cursor: 0 };
    let expr = parser.expr()?;
    match parser.peek() {
        Tok::End => Ok(expr),
        Tok::RParen => parser.error("unbalanced ')'"),
        Tok::Comp => parser.error("repeated complement needs parentheses"),
        _ => parser.error("expected '*', '+' or end of input"),
    }
}

struct PrimeSupply(u64);

impl PrimeSupply {
    fn take(&mut self, n: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            self.0 += 1;
            if crate::arith::is_prime(self.0) {
                out.push(self.0);
            }
        }
        out
    }
}

/// Builds the graph of a shape, labelling vertices 2, 3, 5, ... left to
/// right.
pub fn eval_shape(e: &GraphExpr) -> CharGraph {
    let mut supply = PrimeSupply(1);
    eval_with(e, &mut supply)
}

fn eval_with(e: &GraphExpr, supply: &mut PrimeSupply) -> CharGraph {
    // labels are always fresh, so the fallible graph operations cannot fail
    const FRESH: &str = "fresh prime labels are disjoint";
    match e {
        GraphExpr::Complete(n) => CharGraph::complete(supply.take(*n)).expect(FRESH),
        GraphExpr::Cycle(n) => CharGraph::cycle(&supply.take(*n)).expect(FRESH),
        GraphExpr::Complement(inner) => eval_with(inner, supply).complement(),
        GraphExpr::Union(parts) => parts.iter().fold(CharGraph::empty(), |acc, p| {
            acc.disjoint_union(&eval_with(p, supply)).expect(FRESH)
        }),
        GraphExpr::Join(parts) => parts
            .iter()
            .fold(CharGraph::empty(), |acc, p| acc.join(&eval_with(p, supply)).expect(FRESH)),
    }
}

/// Canonical text form; `parse_shape(&render_shape(e)) == e` whenever every
/// union and join in `e` has at least two operands.
pub fn render_shape(e: &GraphExpr) -> String {
    e.to_string()
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Complete(n) => write!(f, "K{n}"),
            GraphExpr::Cycle(n) => write!(f, "C{n}"),
            GraphExpr::Complement(inner) => match inner.as_ref() {
                GraphExpr::Complete(_) | GraphExpr::Cycle(_) => write!(f, "{inner}^c"),
                _ => write!(f, "({inner})^c"),
            },
            GraphExpr::Union(parts) => write_list(f, parts, " + ", |p| {
                matches!(p, GraphExpr::Union(v) | GraphExpr::Join(v) if v.len() > 1)
            }),
            GraphExpr::Join(parts) => {
                write_list(f, parts, " * ", |p| {
                    matches!(p, GraphExpr::Union(v) | GraphExpr::Join(v) if v.len() > 1)
                })
            }
        }
    }
}

fn write_list(
    f: &mut fmt::Formatter<'_>,
    parts: &[GraphExpr],
    sep: &str,
    needs_parens: impl Fn(&GraphExpr) -> bool,
) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        if needs_parens(p) {
            write!(f, "({p})")?;
        } else {
            write!(f, "{p}")?;
        }
    }
    Ok(())
}

impl Serialize for GraphExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GraphExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_shape(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GraphExpr::*;

    fn k(n: usize) -> GraphExpr {
        Complete(n)
    }

    #[test]
    fn parses_main_shapes() {
        assert_eq!(
            parse_shape("K3^c * C4").unwrap(),
            Join(vec![GraphExpr::complement(k(3)), Cycle(4)])
        );
        assert_eq!(
            parse_shape("(K2 + K1 + K2) * K2^c").unwrap(),
            Join(vec![Union(vec![k(2), k(1), k(2)]), GraphExpr::complement(k(2))])
        );
        assert_eq!(parse_shape("K3 + K1 + K3").unwrap(), Union(vec![k(3), k(1), k(3)]));
    }

    #[test]
    fn unicode_and_subscripts() {
        assert_eq!(parse_shape("K_3^c ⋆ C_4").unwrap(), parse_shape("K3^c*C4").unwrap());
        assert_eq!(parse_shape("K3∪K1∪K3").unwrap(), parse_shape("K3 + K1 + K3").unwrap());
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse_shape("K1 + K2 * K3").unwrap(),
            Join(vec![Union(vec![k(1), k(2)]), k(3)])
        );
        assert_eq!(
            parse_shape("K1 + (K2 * K3)").unwrap(),
            Union(vec![k(1), Join(vec![k(2), k(3)])])
        );
        let a = eval_shape(&parse_shape("K1 + K2 * K3").unwrap());
        let b = eval_shape(&parse_shape("K1 + (K2 * K3)").unwrap());
        assert_ne!(a.edge_count(), b.edge_count());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse_shape("K3 * C2").unwrap_err();
        assert_eq!(e.position, 5);
        assert_eq!(parse_shape("K3 +").unwrap_err().position, 4);
        assert_eq!(parse_shape("(K3").unwrap_err().position, 3);
        assert_eq!(parse_shape("K3)").unwrap_err().position, 2);
        assert_eq!(parse_shape("K").unwrap_err().position, 1);
        assert_eq!(parse_shape("X1").unwrap_err().position, 0);
        assert_eq!(parse_shape("K3^d").unwrap_err().position, 2);
        assert!(parse_shape("K3^c^c").is_err());
        assert!(parse_shape("").is_err());
        assert_eq!(parse_shape("(K3^c)^c").unwrap(), GraphExpr::complement(GraphExpr::complement(k(3))));
    }

    #[test]
    fn eval_examples() {
        let c4 = eval_shape(&parse_shape("K2^c * K2^c").unwrap());
        assert!(c4.isomorphism_to(&eval_shape(&Cycle(4))).unwrap().is_some());

        let k1 = eval_shape(&k(1));
        assert_eq!(k1.vertices().collect::<Vec<_>>(), vec![2]);
        assert_eq!(k1.edge_count(), 0);

        let g = eval_shape(&parse_shape("K3^c * C4").unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 16));
        assert!(g.is_kn_free(4).unwrap());
        assert_eq!(g.vertices().collect::<Vec<_>>(), vec![2, 3, 5, 7, 11, 13, 17]);
        // K3^c takes 2, 3, 5; the cycle runs 7-11-13-17
        assert!(g.has_edge(7, 11) && g.has_edge(17, 7) && !g.has_edge(7, 13));

        assert_eq!(eval_shape(&k(0)), CharGraph::empty());
    }

    #[test]
    fn render_examples() {
        let e = Join(vec![GraphExpr::complement(k(3)), Cycle(4)]);
        assert_eq!(render_shape(&e), "K3^c * C4");
        assert_eq!(render_shape(&Union(vec![k(1)])), "K1");
        let e = parse_shape("(K2 + K1 + K2) * K2^c").unwrap();
        assert_eq!(render_shape(&e), "(K2 + K1 + K2) * K2^c");
        assert_eq!(parse_shape(&render_shape(&e)).unwrap(), e);
        let nested = Union(vec![k(1), Union(vec![k(2), k(3)])]);
        assert_eq!(render_shape(&nested), "K1 + (K2 + K3)");
        assert_eq!(parse_shape(&render_shape(&nested)).unwrap(), nested);
    }

    #[test]
    fn serde_uses_text_form() {
        let e = parse_shape("K3 + K1 + K3").unwrap();
        assert_eq!(serde_json::to_string(&e).unwrap(), r#""K3 + K1 + K3""#);
        let back: GraphExpr = serde_json::from_str(r#""K3^c * C4""#).unwrap();
        assert_eq!(back.vertex_count(), 7);
    }
}

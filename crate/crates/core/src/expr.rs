//! The expression grammar shared by the library and the CLI:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := scalar | [scalar '*'] factor ('.' factor)*
//! factor := atom ['^' n]
//! atom   := ident | ident '^*' | '(' expr ')' | '[' entry '@' index ',' index ']'
//! ```
//!
//! Scalars are integer or fraction literals. Identifiers are resolved by the
//! target ring; `[a @ p, q]` is the matrix unit with entry `a` (parsed by the
//! coefficient algebra) at bridge indices `p`, `q`.

use std::marker::PhantomData;

use crate::coeff::ratfun::RationalFunction;
use crate::coeff::poly::Poly;
use crate::coeff::{A0Algebra, CoefficientAlgebra, DiagonalAlgebra, PolyAlgebra, ScalarAlgebra, Unitization};
use crate::cohn::{self, CohnElement, Monomial};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::leavitt::Leavitt;
use crate::scalar::Field;
use crate::wreath::{ExtendedGraph, WreathElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(String),
    Ident { name: String, star: bool },
    Unit { entry: String, p: String, q: String },
    Power(Box<Expr>, u32),
    Product(Vec<Expr>),
    Scaled(String, Box<Expr>),
    Sum(Vec<(bool, Expr)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Times,
    Dot,
    Star,
    Pow(u32),
    LParen,
    RParen,
    Unit(String, String, String),
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        msg: format!("column {}: {}", col + 1, msg.into()),
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Times)),
            '.' => out.push((start, Tok::Dot)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '^' => match chars.get(i + 1) {
                Some('*') => {
                    i += 1;
                    out.push((start, Tok::Star));
                }
                Some(d) if d.is_ascii_digit() => {
                    let mut j = i + 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let digits: String = chars[i + 1..j].iter().collect();
                    let n = digits.parse().map_err(|_| err(i, "exponent too large"))?;
                    out.push((start, Tok::Pow(n)));
                    i = j;
                    continue;
                }
                _ => return Err(err(i, "expected `^*` or `^n`")),
            },
            '[' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .ok_or_else(|| err(i, "unclosed `[`"))?;
                let body: String = chars[i + 1..i + close].iter().collect();
                let (entry, rest) = body.rsplit_once('@').ok_or_else(|| err(i, "expected `[a @ p, q]`"))?;
                let (p, q) = rest.split_once(',').ok_or_else(|| err(i, "expected `[a @ p, q]`"))?;
                out.push((start, Tok::Unit(entry.trim().into(), p.trim().into(), q.trim().into())));
                i += close;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < chars.len() && is_ident_char(chars[j]) {
                    while j < chars.len() && is_ident_char(chars[j]) {
                        j += 1;
                    }
                    out.push((start, Tok::Ident(chars[i..j].iter().collect())));
                } else {
                    out.push((start, Tok::Num(chars[i..j].iter().collect())));
                }
                i = j;
                continue;
            }
            c if is_ident_char(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                out.push((start, Tok::Ident(chars[i..j].iter().collect())));
                i = j;
                continue;
            }
            c => return Err(err(i, format!("unexpected `{c}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            neg = true;
        }
        terms.push((neg, self.term()?));
        loop {
            match self.peek() {
                Some(Tok::Plus) => neg = false,
                Some(Tok::Minus) => neg = true,
                _ => break,
            }
            self.bump();
            terms.push((neg, self.term()?));
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().expect("one term").1
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let scalar = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.bump();
                if self.peek() != Some(&Tok::Times) {
                    return Ok(Expr::Scalar(n));
                }
                self.bump();
                Some(n)
            }
            _ => None,
        };
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Dot) {
            self.bump();
            factors.push(self.factor()?);
        }
        let product = if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        };
        Ok(match scalar {
            Some(s) => Expr::Scaled(s, Box::new(product)),
            None => product,
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Pow(n)) = self.peek() {
            let n = *n;
            self.bump();
            return Ok(Expr::Power(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Ident(name)) => {
                let star = self.peek() == Some(&Tok::Star);
                if star {
                    self.bump();
                }
                Ok(Expr::Ident { name, star })
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(err(col, "unclosed `(`"));
                }
                Ok(e)
            }
            Some(Tok::Unit(entry, p, q)) => Ok(Expr::Unit { entry, p, q }),
            Some(t) => Err(err(col, format!("unexpected {t:?}"))),
            None => Err(err(col, "unexpected end of expression")),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(e)
}

/// A ring in which parsed expressions are evaluated.
pub trait ExprRing {
    type F: Field;
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Self::F, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn ident(&self, name: &str, star: bool) -> Result<Self::Elem>;

    fn unit(&self, _entry: &str, _p: &str, _q: &str) -> Result<Self::Elem> {
        Err(err(0, "matrix units are not available here"))
    }
}

pub fn evaluate<R: ExprRing>(r: &R, e: &Expr) -> Result<R::Elem> {
    Ok(match e {
        Expr::Scalar(s) => r.scale(&R::F::parse_literal(s)?, &r.one()?),
        Expr::Ident { name, star } => r.ident(name, *star)?,
        Expr::Unit { entry, p, q } => r.unit(entry, p, q)?,
        Expr::Power(x, n) => {
            let base = evaluate(r, x)?;
            let mut acc = r.one()?;
            for _ in 0..*n {
                acc = r.mul(&acc, &base);
            }
            acc
        }
        Expr::Product(fs) => {
            let mut acc = evaluate(r, &fs[0])?;
            for f in &fs[1..] {
                acc = r.mul(&acc, &evaluate(r, f)?);
            }
            acc
        }
        Expr::Scaled(s, x) => r.scale(&R::F::parse_literal(s)?, &evaluate(r, x)?),
        Expr::Sum(ts) => {
            let mut acc = r.zero();
            for (neg, t) in ts {
                let mut x = evaluate(r, t)?;
                if *neg {
                    x = r.scale(&-R::F::one(), &x);
                }
                acc = r.add(&acc, &x);
            }
            acc
        }
    })
}

pub fn eval_str<R: ExprRing>(r: &R, text: &str) -> Result<R::Elem> {
    evaluate(r, &parse(text)?)
}

/// Generators of a graph: vertices (with `v^* = v`), edges and ghost edges.
fn graph_ident(g: &Graph, name: &str, star: bool) -> Result<Monomial> {
    if let Ok(v) = g.vertex(name) {
        return Ok(Monomial::vertex(v));
    }
    let e = g.edge(name)?;
    Ok(if star { Monomial::ghost(g, e) } else { Monomial::edge(g, e) })
}

/// The Cohn algebra `C(Γ)`.
pub struct CohnRing<'a, F> {
    pub graph: &'a Graph,
    _f: PhantomData<F>,
}

impl<'a, F> CohnRing<'a, F> {
    pub fn new(graph: &'a Graph) -> Self {
        CohnRing { graph, _f: PhantomData }
    }
}

impl<F: Field> ExprRing for CohnRing<'_, F> {
    type F = F;
    type Elem = CohnElement<F>;

    fn zero(&self) -> Self::Elem {
        CohnElement::zero()
    }
    fn one(&self) -> Result<Self::Elem> {
        Ok(self.graph.vertices().map(|v| (Monomial::vertex(v), F::one())).collect())
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x.plus(y)
    }
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        x.scale(c)
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        cohn::mul(x, y)
    }
    fn ident(&self, name: &str, star: bool) -> Result<Self::Elem> {
        Ok(CohnElement::basis(graph_ident(self.graph, name, star)?))
    }
}

/// Coefficient algebras whose elements can be written in the grammar.
pub trait NamedElements<F: Field>: CoefficientAlgebra<F> {
    /// The element an identifier denotes, if any.
    fn named(&self, name: &str, star: bool) -> Option<Self::Elem>;
}

impl<F: Field> NamedElements<F> for ScalarAlgebra {
    fn named(&self, _name: &str, _star: bool) -> Option<F> {
        None
    }
}

impl<F: Field> NamedElements<F> for DiagonalAlgebra {
    fn named(&self, name: &str, star: bool) -> Option<Vec<F>> {
        if star {
            return None;
        }
        let i = self.names().iter().position(|n| n == name)?;
        Some(self.unit(i))
    }
}

impl<F: Field> NamedElements<F> for PolyAlgebra {
    fn named(&self, name: &str, star: bool) -> Option<Poly<F>> {
        (name == "x" && !star).then(Poly::var)
    }
}

impl<F: Field> NamedElements<F> for Unitization<A0Algebra> {
    fn named(&self, name: &str, star: bool) -> Option<(F, RationalFunction<F>)> {
        (name == "t" && !star).then(|| (F::zero(), RationalFunction::t()))
    }
}

impl<F: Field> NamedElements<F> for Leavitt {
    fn named(&self, name: &str, star: bool) -> Option<Self::Elem> {
        graph_ident(self.graph(), name, star).ok().map(|m| self.from_monomial(m))
    }
}

/// A coefficient algebra as an expression ring.
pub struct CoeffRing<'a, F, A> {
    pub algebra: &'a A,
    _f: PhantomData<F>,
}

impl<'a, F, A> CoeffRing<'a, F, A> {
    pub fn new(algebra: &'a A) -> Self {
        CoeffRing { algebra, _f: PhantomData }
    }
}

impl<F: Field, A: NamedElements<F>> ExprRing for CoeffRing<'_, F, A> {
    type F = F;
    type Elem = A::Elem;

    fn zero(&self) -> A::Elem {
        self.algebra.zero()
    }
    fn one(&self) -> Result<A::Elem> {
        Ok(self.algebra.one())
    }
    fn add(&self, x: &A::Elem, y: &A::Elem) -> A::Elem {
        self.algebra.add(x, y)
    }
    fn scale(&self, c: &F, x: &A::Elem) -> A::Elem {
        self.algebra.scale(c, x)
    }
    fn mul(&self, x: &A::Elem, y: &A::Elem) -> A::Elem {
        self.algebra.mul(x, y)
    }
    fn ident(&self, name: &str, star: bool) -> Result<A::Elem> {
        self.algebra
            .named(name, star)
            .ok_or_else(|| err(0, format!("unknown identifier `{name}{}`", if star { "^*" } else { "" })))
    }
}

/// `A wr L(Γ)`; identifiers are generators of `Γ`.
pub struct WreathRing<'a, F: Field, A: CoefficientAlgebra<F>> {
    pub wreath: &'a ExtendedGraph<F, A>,
}

impl<F: Field, A: NamedElements<F>> ExprRing for WreathRing<'_, F, A> {
    type F = F;
    type Elem = WreathElement<F, A::Elem>;

    fn zero(&self) -> Self::Elem {
        WreathElement::zero()
    }
    fn one(&self) -> Result<Self::Elem> {
        Ok(self.wreath.one())
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.wreath.add(x, y)
    }
    fn scale(&self, c: &F, x: &Self::Elem) -> Self::Elem {
        self.wreath.scale(c, x)
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.wreath.mul(x, y)
    }
    fn ident(&self, name: &str, star: bool) -> Result<Self::Elem> {
        Ok(self.wreath.monomial(graph_ident(self.wreath.base(), name, star)?))
    }
    fn unit(&self, entry: &str, p: &str, q: &str) -> Result<Self::Elem> {
        let a = eval_str(&CoeffRing::new(self.wreath.algebra()), entry)?;
        self.wreath
            .matrix_unit(a, self.wreath.parse_index(p)?, self.wreath.parse_index(q)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::samples::{loop_graph, toeplitz};
    use crate::scalar::{Gf, Q};
    use crate::wreath::samples::{loop_wreath, toeplitz_w};

    #[test]
    fn grammar_shapes() {
        assert_eq!(parse("v").unwrap(), Expr::Ident { name: "v".into(), star: false });
        assert_eq!(
            parse("2*c.c^*").unwrap(),
            Expr::Scaled(
                "2".into(),
                Box::new(Expr::Product(vec![
                    Expr::Ident { name: "c".into(), star: false },
                    Expr::Ident { name: "c".into(), star: true },
                ]))
            )
        );
        assert_eq!(
            parse("-v + 3/2").unwrap(),
            Expr::Sum(vec![
                (true, Expr::Ident { name: "v".into(), star: false }),
                (false, Expr::Scalar("3/2".into())),
            ])
        );
        assert_eq!(
            parse("[x @ c.e, 0]").unwrap(),
            Expr::Unit { entry: "x".into(), p: "c.e".into(), q: "0".into() }
        );
    }

    #[test]
    fn powers() {
        assert_eq!(
            parse("x^3").unwrap(),
            Expr::Power(Box::new(Expr::Ident { name: "x".into(), star: false }), 3)
        );
        assert_eq!(
            parse("c^*^2").unwrap(),
            Expr::Power(Box::new(Expr::Ident { name: "c".into(), star: true }), 2)
        );
        let g = loop_graph();
        let r = CohnRing::<Q>::new(&g);
        assert_eq!(eval_str(&r, "(c + v)^2").unwrap(), eval_str(&r, "c.c + 2*c + v").unwrap());
        assert_eq!(eval_str(&r, "c^0").unwrap(), eval_str(&r, "v").unwrap());
        let p = CoeffRing::<Q, _>::new(&PolyAlgebra);
        assert_eq!(eval_str(&p, "2*x^2 - x").unwrap(), eval_str(&p, "2*x.x - x").unwrap());
    }

    #[test]
    fn parse_errors_carry_columns() {
        for (text, col) in [("c +", 4), ("(c", 1), ("c ^ d", 3), ("c^", 2), ("c^99999999999", 2), ("c $", 3), ("c c", 3), ("", 1)] {
            let e = parse(text).unwrap_err();
            assert!(e.to_string().contains(&format!("column {col}:")), "{text}: {e}");
        }
    }

    #[test]
    fn cohn_evaluation() {
        let g = loop_graph();
        let r = CohnRing::<Q>::new(&g);
        let x = eval_str(&r, "c.c^*").unwrap();
        assert_eq!(cohn::format(&g, &x), "c.c^*");
        let y = eval_str(&r, "c^*.c - v").unwrap();
        assert!(y.is_zero());
        let z = eval_str(&r, "2*(c + v).c^* - 1").unwrap();
        assert_eq!(z, eval_str(&r, "2*c.c^* + 2*c^* - v").unwrap());
        assert!(eval_str(&r, "d").is_err());
    }

    #[test]
    fn leavitt_evaluation() {
        let l = Leavitt::new(loop_graph());
        let r = CoeffRing::<Q, _>::new(&l);
        assert_eq!(l.format(&eval_str(&r, "c.c^*").unwrap()), "v");
        let t = Leavitt::new(toeplitz());
        let r = CoeffRing::<Gf<5>, _>::new(&t);
        assert_eq!(t.format(&eval_str(&r, "c.c^* + f.f^*").unwrap()), "u");
    }

    #[test]
    fn wreath_evaluation_round_trips_format() {
        let eg = loop_wreath::<Q, _>(PolyAlgebra, "1");
        let r = WreathRing { wreath: &eg };
        let x = eval_str(&r, "c.[x @ e, 0] + [1 @ 0, c.e]").unwrap();
        assert_eq!(x, eval_str(&r, "[x @ c.e, 0] + [1 @ 0, c.e]").unwrap());
        let text = eg.format(&x);
        assert_eq!(eval_str(&r, &text).unwrap(), x);

        let tw = toeplitz_w::<Q>();
        let r = WreathRing { wreath: &tw };
        let y = eval_str(&r, "c.c^* - [v @ f, f]").unwrap();
        assert_eq!(eval_str(&r, &tw.format(&y)).unwrap(), y);
        assert!(eval_str(&r, "[v @ c, 0]").is_err());
    }
}

//! Concrete syntax for formulas.
//!
//! ```text
//! decl     := ("upward" | "downward") ident ("," ident)* ";"
//! formula  := "true" | "false" | ident | "!" formula
//!           | formula ("&" | "|" | "->") formula
//!           | ("<" mod ">" | "[" mod "]") constraint? formula
//!           | "(" formula ")"
//! mod      := A | Abar | L | Lbar | B | Bbar | Bbar_w | E | Ebar | Ebar_w | D | Dbar | O | Obar
//! constraint := "_{" ("<" | "<=" | ">" | ">=") ident "}"
//! ```
//!
//! The point dialect adds `X f`, `f U g`, `F f`, `G f` with an optional
//! constraint on `F`/`G`; the hybrid dialect adds `X`, `Y`, `F`, `P`, `G`
//! and `down x. f`, where identifiers bound by an enclosing binder are
//! variables. Precedence, loosest first: `->` (right), `|`, `&`, `U`
//! (right), prefix operators. A binder extends as far right as possible.

use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Phs,
    Pltl,
    Hl,
}

impl std::str::FromStr for Dialect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "phs" | "hs" => Ok(Dialect::Phs),
            "pltl" | "ltl" => Ok(Dialect::Pltl),
            "hl" => Ok(Dialect::Hl),
            other => Err(format!("unknown dialect `{other}`")),
        }
    }
}

/// Byte range in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("ill-kinded parameter `{param}` at byte {pos}: this operator needs a {expected:?} parameter")]
    IllKinded { pos: usize, param: String, expected: Kind },
    #[error("undeclared parameter `{param}` at byte {pos}")]
    Undeclared { pos: usize, param: String },
    #[error("{0} declared both upward and downward")]
    BothKinds(String),
    #[error("unsupported bound `{cmp}` on {op} at byte {pos}")]
    UnsupportedBound { pos: usize, op: &'static str, cmp: &'static str },
}

impl ParseError {
    pub fn pos(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::IllKinded { pos, .. }
            | ParseError::Undeclared { pos, .. }
            | ParseError::UnsupportedBound { pos, .. } => Some(*pos),
            ParseError::BothKinds(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub formula: Formula,
    pub decl: ParamDecl,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Bang,
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    Lt,
    Gt,
    Le,
    Ge,
    LBrack,
    RBrack,
    ConstraintOpen,
    RBrace,
    Semi,
    Comma,
    Dot,
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = |t: Tok| (t, Span { start, end: start + 1 });
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'!' => out.push(single(Tok::Bang)),
            b'&' => out.push(single(Tok::Amp)),
            b'|' => out.push(single(Tok::Pipe)),
            b'(' => out.push(single(Tok::LParen)),
            b')' => out.push(single(Tok::RParen)),
            b'[' => out.push(single(Tok::LBrack)),
            b']' => out.push(single(Tok::RBrack)),
            b'}' => out.push(single(Tok::RBrace)),
            b';' => out.push(single(Tok::Semi)),
            b',' => out.push(single(Tok::Comma)),
            b'.' => out.push(single(Tok::Dot)),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((Tok::Arrow, Span { start, end: start + 2 }));
                i += 2;
                continue;
            }
            b'<' | b'>' => {
                let eq = bytes.get(i + 1) == Some(&b'=');
                let tok = match (c, eq) {
                    (b'<', false) => Tok::Lt,
                    (b'<', true) => Tok::Le,
                    (_, false) => Tok::Gt,
                    (_, true) => Tok::Ge,
                };
                let w = if eq { 2 } else { 1 };
                out.push((tok, Span { start, end: start + w }));
                i += w;
                continue;
            }
            b'_' if bytes.get(i + 1) == Some(&b'{') => {
                out.push((Tok::ConstraintOpen, Span { start, end: start + 2 }));
                i += 2;
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    if bytes[i] == b'_' && bytes.get(i + 1) == Some(&b'{') {
                        break;
                    }
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), Span { start, end: i }));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: usize,
    dialect: Dialect,
    decl: &'a ParamDecl,
    bound: Vec<String>,
}

const PLTL_KEYWORDS: &[&str] = &["X", "U", "F", "G"];
const HL_KEYWORDS: &[&str] = &["X", "Y", "F", "P", "G", "down"];

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(_, s)| s.start).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, ParseError> {
        match self.bump() {
            Some((t, s)) if t == tok => Ok(s),
            Some((t, s)) => Err(ParseError::Syntax { pos: s.start, msg: format!("expected {what}, found {t:?}") }),
            None => Err(ParseError::Syntax { pos: self.end, msg: format!("expected {what}, found end of input") }),
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.bump() {
            Some((Tok::Ident(s), sp)) => Ok((s, sp)),
            Some((t, s)) => Err(ParseError::Syntax { pos: s.start, msg: format!("expected identifier, found {t:?}") }),
            None => Err(ParseError::Syntax { pos: self.end, msg: "expected identifier, found end of input".into() }),
        }
    }

    fn is_keyword(&self, s: &str) -> bool {
        match self.dialect {
            Dialect::Phs => false,
            Dialect::Pltl => PLTL_KEYWORDS.contains(&s),
            Dialect::Hl => HL_KEYWORDS.contains(&s),
        }
    }

    fn peek_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.bump();
            let rhs = self.formula()?;
            return Ok(implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            let rhs = self.conjunction()?;
            acc = or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.until()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            let rhs = self.until()?;
            acc = and(acc, rhs);
        }
        Ok(acc)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.dialect == Dialect::Pltl && self.peek_ident("U") {
            self.bump();
            let rhs = self.until()?;
            return Ok(super::ast::until(lhs, rhs));
        }
        Ok(lhs)
    }

    fn constraint(&mut self) -> Result<Option<(ParamConstraint, usize)>, ParseError> {
        if self.peek() != Some(&Tok::ConstraintOpen) {
            return Ok(None);
        }
        self.bump();
        let cmp = match self.bump() {
            Some((Tok::Lt, _)) => Cmp::Lt,
            Some((Tok::Le, _)) => Cmp::Le,
            Some((Tok::Gt, _)) => Cmp::Gt,
            Some((Tok::Ge, _)) => Cmp::Ge,
            _ => return Err(ParseError::Syntax { pos: self.here(), msg: "expected comparator in constraint".into() }),
        };
        let (param, sp) = self.ident()?;
        self.expect(Tok::RBrace, "`}`")?;
        Ok(Some((ParamConstraint::new(cmp, param), sp.start)))
    }

    fn check_kind(&self, c: &ParamConstraint, expected: Kind, pos: usize) -> Result<(), ParseError> {
        match self.decl.kind_of(&c.param) {
            None => Err(ParseError::Undeclared { pos, param: c.param.clone() }),
            Some(k) if k != expected => Err(ParseError::IllKinded { pos, param: c.param.clone(), expected }),
            Some(_) => Ok(()),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(not(self.unary()?))
            }
            Some(Tok::Lt) | Some(Tok::LBrack) if self.dialect == Dialect::Phs => {
                let (open, _) = self.bump().unwrap();
                let (name, sp) = self.ident()?;
                let rel = Rel::from_name(&name).ok_or_else(|| ParseError::Syntax {
                    pos: sp.start,
                    msg: format!("unknown modality `{name}`"),
                })?;
                let mode = if open == Tok::Lt {
                    self.expect(Tok::Gt, "`>`")?;
                    Mode::Exists
                } else {
                    self.expect(Tok::RBrack, "`]`")?;
                    Mode::Forall
                };
                let constraint = match self.constraint()? {
                    Some((c, pos)) => {
                        self.check_kind(&c, c.required_kind(mode), pos)?;
                        Some(c)
                    }
                    None => None,
                };
                let body = self.unary()?;
                Ok(modal(AllenOp { rel, mode }, constraint, body))
            }
            Some(Tok::LParen) => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                if self.is_keyword(&name) {
                    self.bump();
                    return self.prefix_keyword(&name, start);
                }
                self.bump();
                Ok(match name.as_str() {
                    "true" => Formula::True,
                    "false" => ff(),
                    _ if self.bound.contains(&name) => Formula::Var(name),
                    _ => Formula::Prop(name),
                })
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn prefix_keyword(&mut self, kw: &str, start: usize) -> Result<Formula, ParseError> {
        match (self.dialect, kw) {
            (_, "X") => Ok(next(self.unary()?)),
            (Dialect::Hl, "Y") => Ok(yesterday(self.unary()?)),
            (Dialect::Hl, "P") => Ok(past(self.unary()?)),
            (Dialect::Hl, "down") => {
                let (x, _) = self.ident()?;
                self.expect(Tok::Dot, "`.` after binder variable")?;
                self.bound.push(x.clone());
                let body = self.formula();
                self.bound.pop();
                Ok(bind(x, body?))
            }
            (_, "F") | (_, "G") => {
                let bound = match self.constraint()? {
                    Some((c, pos)) => {
                        if self.dialect == Dialect::Hl || !c.cmp.is_upper() {
                            return Err(ParseError::UnsupportedBound {
                                pos,
                                op: if kw == "F" { "F" } else { "G" },
                                cmp: c.cmp.symbol(),
                            });
                        }
                        let expected = if kw == "F" { Kind::Upward } else { Kind::Downward };
                        self.check_kind(&c, expected, pos)?;
                        Some(c)
                    }
                    None => None,
                };
                let body = Box::new(self.unary()?);
                Ok(if kw == "F" { Formula::Eventually { bound, body } } else { Formula::Always { bound, body } })
            }
            _ => Err(ParseError::Syntax { pos: start, msg: format!("unexpected keyword `{kw}`") }),
        }
    }
}

fn parse_decls(toks: &[(Tok, Span)], pos: &mut usize) -> Result<ParamDecl, ParseError> {
    let mut decl = ParamDecl::default();
    loop {
        let kind = match toks.get(*pos) {
            Some((Tok::Ident(s), _)) if s == "upward" => Kind::Upward,
            Some((Tok::Ident(s), _)) if s == "downward" => Kind::Downward,
            _ => break,
        };
        *pos += 1;
        loop {
            match toks.get(*pos) {
                Some((Tok::Ident(name), _)) => {
                    let (mine, other) = match kind {
                        Kind::Upward => (&mut decl.upward, &decl.downward),
                        Kind::Downward => (&mut decl.downward, &decl.upward),
                    };
                    if other.contains(name) {
                        return Err(ParseError::BothKinds(name.clone()));
                    }
                    mine.insert(name.clone());
                    *pos += 1;
                }
                Some((t, s)) => {
                    return Err(ParseError::Syntax { pos: s.start, msg: format!("expected parameter name, found {t:?}") })
                }
                None => return Err(ParseError::Syntax { pos: usize::MAX, msg: "unterminated declaration".into() }),
            }
            match toks.get(*pos) {
                Some((Tok::Comma, _)) => *pos += 1,
                Some((Tok::Semi, _)) => {
                    *pos += 1;
                    break;
                }
                Some((t, s)) => {
                    return Err(ParseError::Syntax { pos: s.start, msg: format!("expected `,` or `;`, found {t:?}") })
                }
                None => return Err(ParseError::Syntax { pos: usize::MAX, msg: "unterminated declaration".into() }),
            }
        }
    }
    Ok(decl)
}

/// Parses declarations followed by one formula.
pub fn parse_formula(text: &str, dialect: Dialect) -> Result<Parsed, ParseError> {
    let toks = lex(text)?;
    let mut pos = 0;
    let decl = parse_decls(&toks, &mut pos).map_err(|e| match e {
        ParseError::Syntax { pos, msg } if pos == usize::MAX => ParseError::Syntax { pos: text.len(), msg },
        e => e,
    })?;
    let mut p = Parser { toks, pos, end: text.len(), dialect, decl: &decl, bound: Vec::new() };
    let formula = p.formula()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input after formula");
    }
    Ok(Parsed { formula, decl })
}

/// Parses a formula against an already known declaration (no declaration
/// prefix in `text`).
pub fn parse_with_decl(text: &str, dialect: Dialect, decl: &ParamDecl) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), dialect, decl, bound: Vec::new() };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input after formula");
    }
    Ok(f)
}

/// Declaration block text for `decl` (empty when there are no parameters).
pub fn render_decl(decl: &ParamDecl) -> String {
    let mut out = String::new();
    let mut line = |kw: &str, set: &BTreeSet<String>| {
        if !set.is_empty() {
            out.push_str(kw);
            out.push(' ');
            out.push_str(&set.iter().cloned().collect::<Vec<_>>().join(", "));
            out.push_str(";\n");
        }
    };
    line("upward", &decl.upward);
    line("downward", &decl.downward);
    out
}

//! Parser for a strict subset of the old TPDB format:
//!
//! ```text
//! (VAR x y)
//! (RULES
//!   plus(0, y) -> y
//!   plus(s(x), y) -> s(plus(x, y))
//! )
//! ```
//!
//! A `VAR` block is mandatory and must come before `RULES`; identifiers not
//! declared there are function symbols. `COMMENT` blocks are skipped, any
//! other block is an error. Rules may optionally be separated by commas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::terms::{Rule, Term, Trs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed TRS file together with its declared variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrsFile {
    pub variables: BTreeSet<String>,
    pub trs: Trs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<(Tok, Pos)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let single = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
        } else if c.is_whitespace() {
            column += 1;
            i += 1;
        } else if let Some(t) = single {
            out.push((t, pos));
            column += 1;
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, pos));
            column += 2;
            i += 2;
        } else {
            let start = i;
            while i < chars.len() {
                let d = chars[i];
                if d.is_whitespace() || matches!(d, '(' | ')' | ',') {
                    break;
                }
                if d == '-' && chars.get(i + 1) == Some(&'>') {
                    break;
                }
                i += 1;
            }
            column += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    variables: &'a BTreeSet<String>,
    arities: BTreeMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, variables: &'a BTreeSet<String>) -> Self {
        let end = text.lines().enumerate().last().map_or(Pos { line: 1, column: 1 }, |(i, l)| Pos {
            line: i + 1,
            column: l.chars().count() + 1,
        });
        Parser {
            toks: lex(text),
            at: 0,
            end,
            variables,
            arities: BTreeMap::new(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error<T>(&self, pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        })
    }

    fn next(&mut self) -> Result<(Tok, Pos), ParseError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => self.error(self.end, "unexpected end of input"),
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        let (t, p) = self.next()?;
        if t == want {
            Ok(p)
        } else {
            self.error(p, format!("expected {want}, found {t}"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.next()? {
            (Tok::Ident(s), p) => Ok((s, p)),
            (t, p) => self.error(p, format!("expected identifier, found {t}")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, pos) = self.ident()?;
        let has_args = self.peek() == Some(&Tok::Open);
        if self.variables.contains(&name) {
            if has_args {
                return self.error(pos, format!("variable `{name}` applied to arguments"));
            }
            return Ok(Term::Var(name));
        }
        let mut args = Vec::new();
        if has_args {
            self.next()?;
            if self.peek() == Some(&Tok::Close) {
                self.next()?;
            } else {
                loop {
                    args.push(self.term()?);
                    match self.next()? {
                        (Tok::Comma, _) => continue,
                        (Tok::Close, _) => break,
                        (t, p) => return self.error(p, format!("expected `,` or `)`, found {t}")),
                    }
                }
            }
        }
        match self.arities.get(&name) {
            Some(&n) if n != args.len() => {
                return self.error(
                    pos,
                    format!("symbol `{name}` used with arity {}, earlier with arity {n}", args.len()),
                )
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.clone(), args.len());
            }
        }
        Ok(Term::Fun(name, args))
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let lhs = self.term()?;
        self.expect(Tok::Arrow)?;
        let rhs = self.term()?;
        Ok(Rule::new(lhs, rhs))
    }

    /// Skips a block body up to and including its closing parenthesis.
    fn skip_block(&mut self) -> Result<(), ParseError> {
        let mut depth = 1;
        while depth > 0 {
            match self.next()?.0 {
                Tok::Open => depth += 1,
                Tok::Close => depth -= 1,
                _ => {}
            }
        }
        Ok(())
    }
}

fn trs_error(pos: Pos, e: impl fmt::Display) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        message: e.to_string(),
    }
}

pub fn parse_trs(text: &str) -> Result<TrsFile, ParseError> {
    let empty = BTreeSet::new();
    let mut p = Parser::new(text, &empty);
    let mut variables: Option<BTreeSet<String>> = None;
    let mut rules: Option<(Vec<Rule>, Pos)> = None;
    while p.peek().is_some() {
        p.expect(Tok::Open)?;
        let (block, pos) = p.ident()?;
        match block.as_str() {
            "VAR" => {
                if variables.is_some() {
                    return p.error(pos, "duplicate VAR block");
                }
                if rules.is_some() {
                    return p.error(pos, "VAR block must precede RULES");
                }
                let mut vars = BTreeSet::new();
                while p.peek() != Some(&Tok::Close) {
                    let (v, _) = p.ident()?;
                    vars.insert(v);
                }
                p.next()?;
                variables = Some(vars);
            }
            "RULES" => {
                if rules.is_some() {
                    return p.error(pos, "duplicate RULES block");
                }
                let Some(vars) = variables.clone() else {
                    return p.error(pos, "missing (VAR ...) block before RULES");
                };
                let mut inner = Parser {
                    toks: std::mem::take(&mut p.toks),
                    at: p.at,
                    end: p.end,
                    variables: &vars,
                    arities: BTreeMap::new(),
                };
                let mut rs = Vec::new();
                while inner.peek() != Some(&Tok::Close) {
                    if inner.peek().is_none() {
                        return inner.error(inner.end, "unterminated RULES block");
                    }
                    rs.push(inner.rule()?);
                    if inner.peek() == Some(&Tok::Comma) {
                        inner.next()?;
                    }
                }
                inner.next()?;
                p.at = inner.at;
                p.toks = inner.toks;
                rules = Some((rs, pos));
            }
            "COMMENT" => p.skip_block()?,
            other => return p.error(pos, format!("unsupported block `{other}`")),
        }
    }
    let Some(variables) = variables else {
        return p.error(Pos { line: 1, column: 1 }, "missing (VAR ...) block");
    };
    let Some((rules, pos)) = rules else {
        return p.error(p.end, "missing (RULES ...) block");
    };
    let trs = Trs::new(rules).map_err(|e| trs_error(pos, e))?;
    Ok(TrsFile { variables, trs })
}

/// Parses a single `lhs -> rhs`, treating `variables` as variables.
pub fn parse_rule(text: &str, variables: &BTreeSet<String>) -> Result<Rule, ParseError> {
    let mut p = Parser::new(text, variables);
    let rule = p.rule()?;
    if p.peek().is_some() {
        return p.error(p.pos(), "trailing input after rule");
    }
    Ok(rule)
}

pub fn render_trs(file: &TrsFile) -> String {
    let mut out = String::from("(VAR");
    for v in &file.variables {
        out.push(' ');
        out.push_str(v);
    }
    out.push_str(")\n(RULES\n");
    for r in file.trs.rules() {
        out.push_str(&format!("  {r}\n"));
    }
    out.push_str(")\n");
    out
}

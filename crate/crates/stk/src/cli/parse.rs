//! The expression language for words and ring elements.
//!
//! ```text
//! expr   := factor { "*" factor }
//! factor := atom | "1" | "inv(" expr ")" | "comm(" expr "," expr ")"
//!         | "conj(" expr "," expr ")" | "(" expr ")"
//! atom   := ("x"|"h"|"w") root "(" ring ")"
//!         | ("z"|"c"|"sym"|"ds") root "(" ring "," ring ")"
//! root   := "[" int {"," int} "]" | "s[" int {"," int} "]"
//! ring   := ["-"] term { ("+"|"-") term }
//! term   := power { ("*"|"/") power }
//! power  := primary [ "^" ["-"] int ]
//! primary:= int | name | "X" | "(" ring ")"
//! ```

use crate::ring::{RingCtx, RingElem, RingError, Scalar};
use crate::rootsys::{Root, RootSystem};
use crate::word::{derived, Word};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("{msg} at {}..{}", span.start, span.end)]
    Syntax { msg: String, span: Span },
    #[error("unknown variable `{name}` at {}..{}", span.start, span.end)]
    UnknownVariable { name: String, span: Span },
    #[error("`{text}` is not a root of {system} at {}..{}", span.start, span.end)]
    NotARoot { text: String, system: String, span: Span },
    #[error("{source} at {}..{}", span.start, span.end)]
    Ring { source: RingError, span: Span },
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::Syntax { span, .. }
            | ParseError::UnknownVariable { span, .. }
            | ParseError::NotARoot { span, .. }
            | ParseError::Ring { span, .. } => *span,
        }
    }

    /// The message followed by the source line with the offending range underlined.
    pub fn render(&self, src: &str) -> String {
        let sp = self.span();
        let width = sp.end.saturating_sub(sp.start).max(1);
        format!("error: {self}\n  {src}\n  {}{}", " ".repeat(sp.start), "^".repeat(width))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let span = Span { start, end: i };
            let v = src[start..i].parse().map_err(|_| ParseError::Syntax { msg: "integer too large".into(), span })?;
            out.push((Tok::Int(v), span));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Name(src[start..i].to_string()), Span { start, end: i }));
        } else if "()[],*+-^/".contains(c) {
            i += 1;
            out.push((Tok::Sym(c), Span { start, end: i }));
        } else {
            let end = start + c.len_utf8();
            return Err(ParseError::Syntax { msg: format!("unexpected character `{c}`"), span: Span { start, end } });
        }
    }
    Ok(out)
}

/// Declared root system and ring in which expressions are read.
#[derive(Clone)]
pub struct Context {
    pub sys: Arc<RootSystem>,
    pub ring: Arc<RingCtx>,
}

struct Parser<'a> {
    ctx: &'a Context,
    toks: Vec<(Tok, Span)>,
    pos: usize,
    len: usize,
}

const ONE_ARG: [&str; 3] = ["x", "h", "w"];
const TWO_ARGS: [&str; 4] = ["z", "c", "sym", "ds"];

impl<'a> Parser<'a> {
    fn new(ctx: &'a Context, src: &str) -> Result<Self, ParseError> {
        Ok(Parser { ctx, toks: lex(src)?, pos: 0, len: src.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map(|(_, s)| *s).unwrap_or(Span { start: self.len, end: self.len })
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { msg: msg.into(), span: self.span() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.syntax(format!("expected `{c}`"))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            return self.syntax("unexpected trailing input");
        }
        Ok(())
    }

    fn word(&mut self) -> Result<Word<RingElem>, ParseError> {
        let mut w = self.factor()?;
        while self.eat('*') {
            w = w.mul(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word<RingElem>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some(Tok::Name(n)) if n == "inv" => {
                self.pos += 1;
                self.expect('(')?;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w.inv())
            }
            Some(Tok::Name(n)) if n == "comm" || n == "conj" => {
                self.pos += 1;
                self.expect('(')?;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(')')?;
                Ok(if n == "comm" { Word::comm(&a, &b) } else { Word::conj(&a, &b) })
            }
            Some(Tok::Name(n)) => self.atom(&n),
            _ => self.syntax("expected a word"),
        }
    }

    fn atom(&mut self, name: &str) -> Result<Word<RingElem>, ParseError> {
        let start = self.span();
        // `xs[...]` is `x s[...]` written without the space.
        let (head, simple) = match name.strip_suffix('s') {
            Some(h)
                if (ONE_ARG.contains(&h) || TWO_ARGS.contains(&h))
                    && !ONE_ARG.contains(&name)
                    && !TWO_ARGS.contains(&name) =>
            {
                (h, true)
            }
            _ => (name, false),
        };
        if !ONE_ARG.contains(&head) && !TWO_ARGS.contains(&head) {
            return self.syntax(format!("unknown generator `{name}`"));
        }
        self.pos += 1;
        let root = self.root(simple)?;
        self.expect('(')?;
        let s = self.ring()?;
        let t = if TWO_ARGS.contains(&head) {
            self.expect(',')?;
            Some(self.ring()?)
        } else {
            None
        };
        self.expect(')')?;
        let span = Span { start: start.start, end: self.prev_span().end };
        let sys = &self.ctx.sys;
        let ring_err = |source: RingError| ParseError::Ring { source, span };
        Ok(match (head, t) {
            ("x", _) => Word::gen(root, s),
            ("h", _) => derived::h(sys, root, &s).map_err(ring_err)?,
            ("w", _) => derived::w(sys, root, &s).map_err(ring_err)?,
            ("z", Some(t)) => derived::z(sys, root, &s, &t),
            ("c", Some(t)) => derived::c(sys, root, &s, &t),
            ("sym", Some(t)) => derived::sym(sys, root, &s, &t).map_err(ring_err)?,
            ("ds", Some(t)) => derived::ds(sys, root, &s, &t).map_err(ring_err)?,
            _ => unreachable!("generator arity checked above"),
        })
    }

    fn root(&mut self, mut simple: bool) -> Result<Root, ParseError> {
        let start = self.span().start;
        if !simple && self.peek() == Some(&Tok::Name("s".into())) {
            self.pos += 1;
            simple = true;
        }
        self.expect('[')?;
        let mut coords = Vec::new();
        loop {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    coords.push(if neg { -v } else { v });
                }
                _ => return self.syntax("expected an integer coordinate"),
            }
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        let span = Span { start, end: self.prev_span().end };
        let body = coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        let text = if simple { format!("s[{body}]") } else { format!("[{body}]") };
        self.ctx.sys.parse_root(&text).map_err(|_| ParseError::NotARoot { text, system: self.ctx.sys.name(), span })
    }

    fn ring(&mut self) -> Result<RingElem, ParseError> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RingElem, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let start = self.span();
                let d = self.power()?;
                let span = Span { start: start.start, end: self.prev_span().end };
                acc = acc.div(&d).map_err(|source| ParseError::Ring { source, span })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<RingElem, ParseError> {
        let start = self.span();
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek().cloned() {
            Some(Tok::Int(v)) => v,
            _ => return self.syntax("expected an integer exponent"),
        };
        self.pos += 1;
        let span = Span { start: start.start, end: self.prev_span().end };
        base.pow(if neg { -e } else { e }).map_err(|source| ParseError::Ring { source, span })
    }

    fn primary(&mut self) -> Result<RingElem, ParseError> {
        let span = self.span();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(RingElem::int(&self.ctx.ring, v))
            }
            Some(Tok::Name(n)) => {
                self.pos += 1;
                RingElem::var(&self.ctx.ring, &n).map_err(|_| ParseError::UnknownVariable { name: n, span })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let r = self.ring()?;
                self.expect(')')?;
                Ok(r)
            }
            _ => self.syntax("expected a ring element"),
        }
    }
}

pub fn parse_word(ctx: &Context, src: &str) -> Result<Word<RingElem>, ParseError> {
    let mut p = Parser::new(ctx, src)?;
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

pub fn parse_ring(ctx: &Context, src: &str) -> Result<RingElem, ParseError> {
    let mut p = Parser::new(ctx, src)?;
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

/// Parses a root on its own, e.g. `[1,-2]` or `s[1,0,1]`.
pub fn parse_root(ctx: &Context, src: &str) -> Result<Root, ParseError> {
    let mut p = Parser::new(ctx, src)?;
    let r = p.root(false)?;
    p.finish()?;
    Ok(r)
}

/// Prints a word as a product of `x` letters; the output reparses to the same word.
pub fn format_word<S: fmt::Display>(sys: &RootSystem, w: &Word<S>) -> String {
    if w.letters.is_empty() {
        return "1".into();
    }
    w.letters
        .iter()
        .map(|(r, s)| {
            let root = sys.format_root(*r);
            let sep = if root.starts_with('s') { " " } else { "" };
            format!("x{sep}{root}({s})")
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

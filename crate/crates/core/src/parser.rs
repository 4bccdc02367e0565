//! Recursive-descent parser for presentations and word expressions.
//!
//! ```text
//! presentation := [ "⟨" | "<" ] gens ( ";" | "|" ) word [ "⟩" | ">" ]
//! gens         := ident { "," ident }
//! word         := term { term }
//! term         := atom [ "^" ( signedint | atom ) ]
//! atom         := ident | "(" word ")" | "[" word "," word "]"
//! ident        := lowercase letter { letter | digit }
//! signedint    := [ "-" ] digit { digit }
//! ```
//!
//! An identifier in a relator that is not a declared generator is split into
//! declared generator names when that is possible, so `abab` reads as
//! `a b a b` over generators `a, b`.

use crate::presentation::{Presentation, WordExpr};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Comma,
    Semi,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Minus => "`-`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LAngle => "`<`".into(),
        Tok::RAngle => "`>`".into(),
    }
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<(Vec<(Tok, usize)>, usize), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            ',' => Tok::Comma,
            ';' | '|' => Tok::Semi,
            '^' => Tok::Caret,
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '<' | '⟨' => Tok::LAngle,
            '>' | '⟩' => Tok::RAngle,
            c if c.is_ascii_lowercase() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            c if c.is_ascii_digit() => {
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                let n = s
                    .parse::<i64>()
                    .map_err(|_| syntax(start, format!("integer `{s}` out of range")))?;
                Tok::Int(n)
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok((out, chars.len()))
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    gens: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => syntax(
                self.here(),
                format!("expected {wanted}, found {}", describe(t)),
            ),
            None => syntax(self.end, format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_) | Tok::LParen | Tok::LBracket | Tok::Int(1))
        )
    }

    fn word(&mut self) -> Result<WordExpr, ParseError> {
        if !self.starts_atom() {
            return Err(self.unexpected("a word"));
        }
        let mut terms = Vec::new();
        while self.starts_atom() {
            terms.extend(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            WordExpr::Product(terms)
        })
    }

    /// One term; a juxtaposed identifier such as `ab` yields several, with
    /// any exponent or conjugator binding to the last of them.
    fn term(&mut self) -> Result<Vec<WordExpr>, ParseError> {
        let mut parts = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(parts);
        }
        self.pos += 1;
        let base = parts.pop().expect("atoms are nonempty");
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.peek() {
                    Some(&Tok::Int(n)) => {
                        self.pos += 1;
                        parts.push(WordExpr::power(base, -n));
                    }
                    _ => return Err(self.unexpected("an integer exponent")),
                }
            }
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                parts.push(WordExpr::power(base, n));
            }
            _ if self.starts_atom() => {
                let mut conj = self.atom()?.into_iter();
                let h = conj.next().expect("atoms are nonempty");
                parts.push(WordExpr::conj(base, h));
                parts.extend(conj);
            }
            _ => return Err(self.unexpected("an exponent or conjugator")),
        }
        Ok(parts)
    }

    fn atom(&mut self) -> Result<Vec<WordExpr>, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.symbol(&name)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                // Keep grouping visible in the tree so powers apply to the whole group.
                Ok(vec![match w {
                    WordExpr::Product(_) => w,
                    other => WordExpr::Product(vec![other]),
                }])
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(vec![WordExpr::Product(Vec::new())])
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(Tok::Comma, "`,`")?;
                let v = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(vec![WordExpr::comm(u, v)])
            }
            _ => Err(self.unexpected("a generator, `1`, `(` or `[`")),
        }
    }

    fn symbol(&self, name: &str) -> Result<Vec<WordExpr>, ParseError> {
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Ok(vec![WordExpr::sym(i)]);
        }
        match segment(name, self.gens) {
            Some(parts) => Ok(parts.into_iter().map(WordExpr::sym).collect()),
            None => Err(ParseError::UnknownGenerator(name.to_string())),
        }
    }
}

/// Splits `name` into a concatenation of generator names, preferring longer
/// names first.
fn segment(name: &str, gens: &[String]) -> Option<Vec<usize>> {
    if name.is_empty() {
        return Some(Vec::new());
    }
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(gens[i].len()));
    for i in order {
        if let Some(rest) = name.strip_prefix(gens[i].as_str()) {
            if let Some(mut tail) = segment(rest, gens) {
                tail.insert(0, i);
                return Some(tail);
            }
        }
    }
    None
}

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        gens: &[],
    };
    let angled = p.peek() == Some(&Tok::LAngle);
    if angled {
        p.pos += 1;
    }
    let mut names = Vec::new();
    loop {
        match p.bump() {
            Some(Tok::Ident(name)) => {
                if names.contains(&name) {
                    return Err(ParseError::DuplicateGenerator(name));
                }
                names.push(name);
            }
            _ => {
                p.pos -= 1;
                return Err(p.unexpected("a generator name"));
            }
        }
        match p.peek() {
            Some(Tok::Comma) => p.pos += 1,
            Some(Tok::Semi) => {
                p.pos += 1;
                break;
            }
            _ => return Err(p.unexpected("`,` or `;`")),
        }
    }
    let expr = {
        let mut rp = Parser {
            toks: std::mem::take(&mut p.toks),
            pos: p.pos,
            end: p.end,
            gens: &names,
        };
        let expr = rp.word()?;
        if rp.peek() == Some(&Tok::RAngle) {
            rp.pos += 1;
        }
        match rp.peek() {
            None => {}
            Some(Tok::Comma | Tok::Semi) => {
                return Err(syntax(rp.here(), "only one relator is supported"))
            }
            Some(_) => return Err(rp.unexpected("end of input")),
        }
        expr
    };
    Presentation::new(names, expr)
}

/// Parses a word expression over an existing generator list.
pub fn parse_word(text: &str, gens: &[String]) -> Result<WordExpr, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        gens,
    };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(w)
}

/// Parses a comma-separated generator list such as `x,y`.
pub fn parse_generators(text: &str) -> Result<Vec<String>, ParseError> {
    let (toks, end) = lex(text)?;
    let mut names: Vec<String> = Vec::new();
    let mut expect_name = true;
    for (t, pos) in toks {
        match (expect_name, t) {
            (true, Tok::Ident(n)) => {
                if names.contains(&n) {
                    return Err(ParseError::DuplicateGenerator(n));
                }
                names.push(n);
                expect_name = false;
            }
            (false, Tok::Comma) => expect_name = true,
            (_, t) => return Err(syntax(pos, format!("unexpected {}", describe(&t)))),
        }
    }
    if expect_name {
        return Err(syntax(end, "expected a generator name"));
    }
    Ok(names)
}

//! The pattern definition language and its abstract syntax tree.
//!
//! Patterns are regular expressions over a declared, finite alphabet of
//! event-type names. The concrete syntax uses `;` for concatenation, `+`
//! for union, postfix `*` for star closure and parentheses for grouping.
//! Symbols are identifiers (`[A-Za-z_][A-Za-z0-9_]*`), so multi-character
//! event types such as `TurnNorth` need no quoting. Whitespace outside
//! identifiers is insignificant, and the empty string denotes ε.
//!
//! Grammar:
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (';' factor)*
//! factor := base '*'*
//! base   := IDENT | '(' expr ')' | /* empty */
//! ```
//!
//! Star binds tighter than concatenation, which binds tighter than union,
//! so `a;b+c` parses as `(a;b)+c`. Binary operators associate to the right:
//! `a;b;c` is `a;(b;c)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol within its [`Alphabet`].
pub type SymbolId = usize;

/// An ordered, duplicate-free set of event-type names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, SymbolId>,
}

impl Alphabet {
    /// Builds an alphabet from an ordered list of identifiers.
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Alphabet("alphabet must be non-empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if !is_identifier(s) {
                return Err(Error::Alphabet(format!(
                    "symbol `{s}` is not a valid identifier"
                )));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::Alphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self { symbols, index })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees at least one symbol
    }

    pub fn id_of(&self, name: &str) -> Option<SymbolId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &str)> {
        self.symbols.iter().enumerate().map(|(i, s)| (i, s.as_str()))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse tree of a pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternAst {
    /// The empty string.
    Epsilon,
    /// A single event type.
    Symbol(String),
    /// Alternation of two sub-patterns.
    Union(Box<PatternAst>, Box<PatternAst>),
    /// Sequencing of two sub-patterns.
    Concat(Box<PatternAst>, Box<PatternAst>),
    /// Zero or more repetitions of a sub-pattern.
    Star(Box<PatternAst>),
}

impl PatternAst {
    pub fn symbol(name: impl Into<String>) -> Self {
        PatternAst::Symbol(name.into())
    }

    pub fn union(left: PatternAst, right: PatternAst) -> Self {
        PatternAst::Union(Box::new(left), Box::new(right))
    }

    pub fn concat(left: PatternAst, right: PatternAst) -> Self {
        PatternAst::Concat(Box::new(left), Box::new(right))
    }

    pub fn star(child: PatternAst) -> Self {
        PatternAst::Star(Box::new(child))
    }
}

/// Returns the set of symbol names occurring in the AST.
pub fn ast_symbols(ast: &PatternAst) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_symbols(ast, &mut out);
    out
}

fn collect_symbols(ast: &PatternAst, out: &mut BTreeSet<String>) {
    match ast {
        PatternAst::Epsilon => {}
        PatternAst::Symbol(s) => {
            out.insert(s.clone());
        }
        PatternAst::Union(l, r) | PatternAst::Concat(l, r) => {
            collect_symbols(l, out);
            collect_symbols(r, out);
        }
        PatternAst::Star(c) => collect_symbols(c, out),
    }
}

/// Checks that every symbol in the AST is a member of the alphabet.
pub fn validate_ast(ast: &PatternAst, alphabet: &Alphabet) -> Result<()> {
    for name in ast_symbols(ast) {
        if alphabet.id_of(&name).is_none() {
            return Err(Error::UnknownSymbol(name));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Plus,
    Semi,
    Star,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Plus => write!(f, "`+`"),
            Token::Semi => write!(f, "`;`"),
            Token::Star => write!(f, "`*`"),
            Token::LParen => write!(f, "`(`"),
            Token::RParen => write!(f, "`)`"),
            Token::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn next_token(&mut self) -> Result<(Token, usize)> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok((Token::Eof, start));
        }
        let c = self.bytes[self.pos];
        let tok = match c {
            b'+' => Token::Plus,
            b';' => Token::Semi,
            b'*' => Token::Star,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos + 1;
                while end < self.bytes.len()
                    && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
                {
                    end += 1;
                }
                let ident = self.src[self.pos..end].to_string();
                self.pos = end;
                return Ok((Token::Ident(ident), start));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{}`", &self.src[start..start + 1]),
                })
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Token,
    lookahead_pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, alphabet: &'a Alphabet) -> Result<Self> {
        let mut lexer = Lexer::new(src);
        let (lookahead, lookahead_pos) = lexer.next_token()?;
        Ok(Self {
            lexer,
            lookahead,
            lookahead_pos,
            alphabet,
        })
    }

    fn advance(&mut self) -> Result<()> {
        let (tok, pos) = self.lexer.next_token()?;
        self.lookahead = tok;
        self.lookahead_pos = pos;
        Ok(())
    }

    fn expr(&mut self) -> Result<PatternAst> {
        let first = self.term()?;
        if self.lookahead == Token::Plus {
            self.advance()?;
            let rest = self.expr()?;
            Ok(PatternAst::union(first, rest))
        } else {
            Ok(first)
        }
    }

    fn term(&mut self) -> Result<PatternAst> {
        let first = self.factor()?;
        if self.lookahead == Token::Semi {
            self.advance()?;
            let rest = self.term()?;
            Ok(PatternAst::concat(first, rest))
        } else {
            Ok(first)
        }
    }

    fn factor(&mut self) -> Result<PatternAst> {
        let mut node = self.base()?;
        while self.lookahead == Token::Star {
            self.advance()?;
            node = PatternAst::star(node);
        }
        Ok(node)
    }

    fn base(&mut self) -> Result<PatternAst> {
        match self.lookahead.clone() {
            Token::Ident(name) => {
                if self.alphabet.id_of(&name).is_none() {
                    return Err(Error::UnknownSymbol(name));
                }
                self.advance()?;
                Ok(PatternAst::Symbol(name))
            }
            Token::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.lookahead != Token::RParen {
                    return Err(Error::Syntax {
                        pos: self.lookahead_pos,
                        msg: format!("expected `)`, found {}", self.lookahead),
                    });
                }
                self.advance()?;
                Ok(inner)
            }
            // An empty base denotes ε; it is legal wherever the next token
            // cannot start a base.
            Token::Plus | Token::Semi | Token::Star | Token::RParen | Token::Eof => {
                Ok(PatternAst::Epsilon)
            }
        }
    }
}

/// Parses the pattern DSL into an AST validated against `alphabet`.
pub fn parse_pattern(text: &str, alphabet: &Alphabet) -> Result<PatternAst> {
    let mut parser = Parser::new(text, alphabet)?;
    let ast = parser.expr()?;
    if parser.lookahead != Token::Eof {
        return Err(Error::Syntax {
            pos: parser.lookahead_pos,
            msg: format!("expected end of input, found {}", parser.lookahead),
        });
    }
    Ok(ast)
}

/// Renders an AST back to the concrete syntax. Re-parsing the result yields
/// a structurally identical tree.
pub fn pattern_to_string(ast: &PatternAst) -> String {
    let mut out = String::new();
    fmt_prec(ast, 1, &mut out);
    out
}

impl fmt::Display for PatternAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pattern_to_string(self))
    }
}

// Precedence levels: union 1, concat 2, star 3. `min` is the lowest level
// printable without parentheses in the current context. Right operands of
// binary nodes keep their own level so chains re-parse right-associatively.
fn fmt_prec(ast: &PatternAst, min: u8, out: &mut String) {
    match ast {
        PatternAst::Epsilon => {}
        PatternAst::Symbol(s) => out.push_str(s),
        PatternAst::Union(l, r) => {
            let parens = min > 1;
            if parens {
                out.push('(');
            }
            fmt_prec(l, 2, out);
            out.push('+');
            fmt_prec(r, 1, out);
            if parens {
                out.push(')');
            }
        }
        PatternAst::Concat(l, r) => {
            let parens = min > 2;
            if parens {
                out.push('(');
            }
            fmt_prec(l, 3, out);
            out.push(';');
            fmt_prec(r, 2, out);
            if parens {
                out.push(')');
            }
        }
        PatternAst::Star(c) => {
            match c.as_ref() {
                // A star may attach directly to an atom, to another star
                // (postfix stars stack), or to an empty base.
                PatternAst::Symbol(_) | PatternAst::Star(_) | PatternAst::Epsilon => {
                    fmt_prec(c, 3, out);
                }
                _ => {
                    out.push('(');
                    fmt_prec(c, 1, out);
                    out.push(')');
                }
            }
            out.push('*');
        }
    }
}

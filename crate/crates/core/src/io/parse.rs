//! COPS-style input:
//!
//! ```text
//! (VAR x y)                     optional; variables must not occur in rules
//! (COMMENT anything (nested))   ignored
//! (RULES f(a) -> a, a -> b)     commas between rules are optional
//! ```

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::preprocess::CurriedTrs;
use crate::term::{Rule, TermError, TermId, TermStore, Trs, APPLY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("variable {name} in rule {rule}; only ground rules are supported")]
    NotGround { name: String, rule: usize },
    #[error("symbol `{name}` used with {found} arguments, but earlier with {expected}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("unsupported section ({0} ...)")]
    UnknownSection(String),
    #[error("identifier `{0}` contains the reserved symbol ∘")]
    Reserved(String),
    #[error("unterminated ( ... ) block")]
    Unterminated,
    #[error("no (RULES ...) section")]
    NoRules,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Arrow,
    Compose,
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Compose => f.write_str("`∘`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
    peeked: Option<(Tok, Pos)>,
}

fn is_delim(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | ',' | '∘')
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, column: 1 },
            peeked: None,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn lex(&mut self) -> Result<(Tok, Pos), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.bump() else {
            return Ok((Tok::Eof, start));
        };
        let tok = match c {
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            '∘' => Tok::Compose,
            '-' if self.chars.peek() == Some(&'>') => {
                self.bump();
                Tok::Arrow
            }
            _ => {
                let mut s = String::from(c);
                while let Some(&d) = self.chars.peek() {
                    if is_delim(d) {
                        break;
                    }
                    // `a->b` splits before the arrow
                    if d == '-' && self.chars.clone().nth(1) == Some('>') {
                        break;
                    }
                    s.push(d);
                    self.bump();
                }
                Tok::Ident(s)
            }
        };
        Ok((tok, start))
    }

    fn peek(&mut self) -> Result<&(Tok, Pos), ParseError> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lex()?);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    fn next(&mut self) -> Result<(Tok, Pos), ParseError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<Pos, ParseError> {
        let (tok, pos) = self.next()?;
        if tok == want {
            Ok(pos)
        } else {
            Err(unexpected(tok, pos, expected))
        }
    }

    /// Skips the rest of a block whose `(` was already consumed.
    fn skip_block(&mut self, open: Pos) -> Result<(), ParseError> {
        debug_assert!(self.peeked.is_none());
        let mut depth = 1;
        while depth > 0 {
            match self.bump() {
                Some('(') => depth += 1,
                Some(')') => depth -= 1,
                Some(_) => {}
                None => {
                    return Err(ParseError {
                        pos: open,
                        kind: ParseErrorKind::Unterminated,
                    })
                }
            }
        }
        Ok(())
    }
}

fn unexpected(found: Tok, pos: Pos, expected: &'static str) -> ParseError {
    ParseError {
        pos,
        kind: ParseErrorKind::Unexpected {
            found: found.to_string(),
            expected,
        },
    }
}

/// Parsed term before symbol resolution.
#[derive(Clone, Debug)]
enum Ast {
    Sym { name: String, pos: Pos, args: Vec<Ast> },
    Compose(Box<Ast>, Box<Ast>),
}

fn ident(name: String, pos: Pos) -> Result<String, ParseError> {
    if name.contains(APPLY) {
        return Err(ParseError {
            pos,
            kind: ParseErrorKind::Reserved(name),
        });
    }
    Ok(name)
}

/// `term := atom ("∘" atom)*` when `compose` is allowed, else a plain atom.
fn parse_ast(lx: &mut Lexer<'_>, compose: bool) -> Result<Ast, ParseError> {
    let mut t = parse_atom(lx, compose)?;
    while compose && lx.peek()?.0 == Tok::Compose {
        lx.next()?;
        let r = parse_atom(lx, compose)?;
        t = Ast::Compose(Box::new(t), Box::new(r));
    }
    Ok(t)
}

fn parse_atom(lx: &mut Lexer<'_>, compose: bool) -> Result<Ast, ParseError> {
    let (tok, pos) = lx.next()?;
    match tok {
        Tok::Open if compose => {
            let t = parse_ast(lx, compose)?;
            lx.expect(Tok::Close, "`)`")?;
            Ok(t)
        }
        Tok::Ident(name) => {
            let name = ident(name, pos)?;
            let mut args = Vec::new();
            if lx.peek()?.0 == Tok::Open {
                lx.next()?;
                loop {
                    args.push(parse_ast(lx, compose)?);
                    match lx.next()? {
                        (Tok::Comma, _) => continue,
                        (Tok::Close, _) => break,
                        (tok, pos) => return Err(unexpected(tok, pos, "`,` or `)`")),
                    }
                }
            }
            Ok(Ast::Sym { name, pos, args })
        }
        tok => Err(unexpected(tok, pos, "a term")),
    }
}

struct Builder<'a> {
    store: &'a mut TermStore,
    vars: &'a HashSet<String>,
    rule: usize,
}

impl Builder<'_> {
    fn build(&mut self, ast: &Ast) -> Result<TermId, ParseError> {
        match ast {
            Ast::Sym { name, pos, args } => {
                if self.vars.contains(name) {
                    return Err(ParseError {
                        pos: *pos,
                        kind: ParseErrorKind::NotGround {
                            name: name.clone(),
                            rule: self.rule,
                        },
                    });
                }
                let sym = self.store.symbol(name, args.len()).map_err(|e| match e {
                    TermError::InconsistentArity { name, expected, found } => ParseError {
                        pos: *pos,
                        kind: ParseErrorKind::Arity { name, expected, found },
                    },
                    other => unreachable!("{other}"),
                })?;
                let ids = args.iter().map(|a| self.build(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(self.store.intern(sym, &ids).expect("arity checked"))
            }
            Ast::Compose(..) => unreachable!("∘ only in curried terms"),
        }
    }
}

/// Parses a problem file into a ground TRS. Arities are inferred from first use.
pub fn parse_trs(text: &str) -> Result<Trs, ParseError> {
    let mut lx = Lexer::new(text);
    let mut store = TermStore::new();
    let mut vars: HashSet<String> = HashSet::new();
    let mut sides: Vec<(Ast, Ast)> = Vec::new();
    let mut saw_rules = false;

    loop {
        let (tok, open) = lx.next()?;
        match tok {
            Tok::Eof => break,
            Tok::Open => {}
            tok => return Err(unexpected(tok, open, "`(`")),
        }
        let (tok, pos) = lx.next()?;
        let Tok::Ident(section) = tok else {
            return Err(unexpected(tok, pos, "a section name"));
        };
        match section.as_str() {
            "VAR" => loop {
                match lx.next()? {
                    (Tok::Ident(v), pos) => {
                        vars.insert(ident(v, pos)?);
                    }
                    (Tok::Close, _) => break,
                    (tok, pos) => return Err(unexpected(tok, pos, "a variable or `)`")),
                }
            },
            "COMMENT" => {
                // the lexer may have looked ahead; only whitespace can be lost
                if let Some((tok, pos)) = lx.peeked.take() {
                    match tok {
                        Tok::Close => continue,
                        Tok::Open => lx.skip_block(pos)?,
                        _ => {}
                    }
                }
                lx.skip_block(open)?;
            }
            "RULES" => {
                saw_rules = true;
                loop {
                    match lx.peek()?.0 {
                        Tok::Close => {
                            lx.next()?;
                            break;
                        }
                        Tok::Comma if !sides.is_empty() => {
                            lx.next()?;
                        }
                        _ => {}
                    }
                    let lhs = parse_ast(&mut lx, false)?;
                    lx.expect(Tok::Arrow, "`->`")?;
                    let rhs = parse_ast(&mut lx, false)?;
                    sides.push((lhs, rhs));
                }
            }
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownSection(other.to_owned()),
                })
            }
        }
    }
    if !saw_rules {
        return Err(ParseError {
            pos: lx.pos,
            kind: ParseErrorKind::NoRules,
        });
    }

    let mut rules = Vec::with_capacity(sides.len());
    for (i, (l, r)) in sides.iter().enumerate() {
        let mut b = Builder {
            store: &mut store,
            vars: &vars,
            rule: i + 1,
        };
        rules.push(Rule {
            lhs: b.build(l)?,
            rhs: b.build(r)?,
        });
    }
    Ok(Trs { store, rules })
}

/// Parses a single term over `store`'s signature (declaring new symbols).
pub fn parse_term(text: &str, store: &mut TermStore) -> Result<TermId, ParseError> {
    let mut lx = Lexer::new(text);
    let ast = parse_ast(&mut lx, false)?;
    let (tok, pos) = lx.next()?;
    if tok != Tok::Eof {
        return Err(unexpected(tok, pos, "end of input"));
    }
    let vars = HashSet::new();
    Builder {
        store,
        vars: &vars,
        rule: 0,
    }
    .build(&ast)
}

/// Parses a term into the curried store of `ctrs`. Accepts both ordinary
/// syntax `f(a, b)` and explicit applications `f ∘ a ∘ b` (left-associative,
/// parentheses for grouping).
pub fn parse_curried_term(text: &str, ctrs: &mut CurriedTrs) -> Result<TermId, ParseError> {
    let mut lx = Lexer::new(text);
    let ast = parse_ast(&mut lx, true)?;
    let (tok, pos) = lx.next()?;
    if tok != Tok::Eof {
        return Err(unexpected(tok, pos, "end of input"));
    }
    let store = &mut ctrs.trs.store;
    let mut memo: HashMap<*const Ast, TermId> = HashMap::new();
    fn build(ast: &Ast, store: &mut TermStore, memo: &mut HashMap<*const Ast, TermId>) -> TermId {
        if let Some(&t) = memo.get(&(ast as *const Ast)) {
            return t;
        }
        let t = match ast {
            Ast::Sym { name, args, .. } => {
                let mut acc = store.constant(name).expect("curried names are constants");
                for a in args {
                    let x = build(a, store, memo);
                    acc = store.apply(acc, x);
                }
                acc
            }
            Ast::Compose(l, r) => {
                let (x, y) = (build(l, store, memo), build(r, store, memo));
                store.apply(x, y)
            }
        };
        memo.insert(ast as *const Ast, t);
        t
    }
    Ok(build(&ast, store, &mut memo))
}

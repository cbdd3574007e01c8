//! Lexer and recursive-descent parser for problem files.
//!
//! ```text
//! @mode herbrand
//! @universe X1,X2,X3
//! X1 -> f(X2)          % bindings
//! p(Z, f(X,Y)) = p(f(Z,Y), Z)
//! ```
//!
//! Items are separated by newlines, `;` or `,`, and the body may be wrapped in
//! braces so rendered substitutions read back unchanged.

use std::collections::HashMap;
use std::fmt;

use setshare::{EqualityMode, Equation, SharingGroup, SharingSet, Subst, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Variable names and the total order on them. A variable's position in the
/// table is its rank, so universe variables are interned first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

impl Symbols {
    pub fn new() -> Self {
        Symbols::default()
    }

    pub fn intern(&mut self, name: &str) -> Var {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = Var::new(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: Var) -> String {
        match self.names.get(v.id() as usize) {
            Some(n) => n.clone(),
            None => format!("_G{}", v.id()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Every interned variable, smallest first.
    pub fn vars(&self) -> Vec<Var> {
        (0..self.names.len() as u32).map(Var::new).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Equation(Equation),
    Binding(Var, Term),
}

impl Item {
    pub fn to_equation(&self) -> Equation {
        match self {
            Item::Equation(e) => e.clone(),
            Item::Binding(x, t) => Equation::new(Term::Var(*x), t.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub mode: Option<EqualityMode>,
    /// The universe, if one was declared.
    pub universe: Option<Vec<Var>>,
    pub items: Vec<Item>,
    pub symbols: Symbols,
}

impl ProblemFile {
    pub fn equations(&self) -> Vec<Equation> {
        self.items.iter().map(Item::to_equation).collect()
    }

    /// The body read as a substitution, when it is a list of bindings with
    /// distinct left-hand sides in rational solved form.
    pub fn as_subst(&self) -> Option<Subst> {
        let mut sigma = Subst::new();
        for item in &self.items {
            let Item::Binding(x, t) = item else { return None };
            sigma.insert(setshare::Binding::new(*x, t.clone()).ok()?).ok()?;
        }
        sigma.is_rsubst().then_some(sigma)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Arrow,
    At,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::At => f.write_str("`@`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: l, column: col });
        match c {
            '\n' => {
                chars.next();
                push(&mut out, Tok::Newline);
                line += 1;
                column = 1;
                continue;
            }
            '%' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric() || **c == '_') {
                    s.push(c);
                    chars.next();
                }
                column += s.len();
                push(&mut out, Tok::Ident(s));
                continue;
            }
            '-' => {
                chars.next();
                if chars.peek() != Some(&'>') {
                    return Err(ParseError { line: l, column: col, message: "expected `->`".into() });
                }
                chars.next();
                column += 2;
                push(&mut out, Tok::Arrow);
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            '@' => Tok::At,
            other => {
                return Err(ParseError { line: l, column: col, message: format!("unexpected character `{other}`") })
            }
        };
        chars.next();
        column += 1;
        push(&mut out, tok);
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

fn is_var_name(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase() || c == '_')
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    symbols: Symbols,
}

impl Parser {
    fn new(input: &str, symbols: Symbols) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(input)?, pos: 0, symbols })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.next();
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Tok::Newline | Tok::Semi | Tok::Comma) {
            self.next();
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.column)),
            other => Err(ParseError { line: t.line, column: t.column, message: format!("expected an identifier, found {other}") }),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let (name, line, column) = self.ident()?;
        let listed = self.symbols.lookup(&name).is_some();
        if is_var_name(&name) || listed {
            if *self.peek() == Tok::LParen {
                return Err(ParseError { line, column, message: format!("variable `{name}` cannot take arguments") });
            }
            return Ok(Term::Var(self.symbols.intern(&name)));
        }
        if *self.peek() != Tok::LParen {
            return Ok(Term::constant(&name));
        }
        self.next();
        self.skip_newlines();
        let mut args = vec![self.term()?];
        self.skip_newlines();
        while *self.peek() == Tok::Comma {
            self.next();
            self.skip_newlines();
            args.push(self.term()?);
            self.skip_newlines();
        }
        self.expect(Tok::RParen)?;
        Ok(Term::app(&name, args))
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let start = self.pos;
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.next();
                Ok(Item::Equation(Equation::new(lhs, self.term()?)))
            }
            Tok::Arrow => {
                let Some(x) = lhs.as_var() else {
                    self.pos = start;
                    return Err(self.error_here("the left-hand side of `->` must be a variable"));
                };
                self.next();
                Ok(Item::Binding(x, self.term()?))
            }
            other => Err(self.error_here(format!("expected `=` or `->`, found {other}"))),
        }
    }

    fn directive(&mut self, file: &mut ProblemFile, universe_fixed: bool) -> Result<(), ParseError> {
        self.expect(Tok::At)?;
        let (name, line, column) = self.ident()?;
        match name.as_str() {
            "mode" => {
                let (value, line, column) = self.ident()?;
                file.mode = Some(parse_mode(&value).ok_or_else(|| ParseError {
                    line,
                    column,
                    message: format!("unknown mode `{value}`, expected herbrand or rational"),
                })?);
            }
            "universe" => {
                let mut names = Vec::new();
                if let Tok::Ident(_) = self.peek() {
                    names.push(self.ident()?.0);
                    while *self.peek() == Tok::Comma {
                        self.next();
                        names.push(self.ident()?.0);
                    }
                }
                if !universe_fixed {
                    file.universe = Some(names.iter().map(|n| self.symbols.intern(n)).collect());
                }
            }
            _ => return Err(ParseError { line, column, message: format!("unknown directive `@{name}`") }),
        }
        if !matches!(self.peek(), Tok::Newline | Tok::Eof) {
            return Err(self.error_here("expected end of line after directive"));
        }
        Ok(())
    }

    fn file(mut self, universe_fixed: bool) -> Result<ProblemFile, ParseError> {
        let mut file = ProblemFile { mode: None, universe: None, items: Vec::new(), symbols: Symbols::new() };
        if universe_fixed {
            file.universe = Some(self.symbols.vars());
        }
        self.skip_newlines();
        while *self.peek() == Tok::At {
            self.directive(&mut file, universe_fixed)?;
            self.skip_newlines();
        }
        let braced = *self.peek() == Tok::LBrace;
        if braced {
            self.next();
        }
        self.skip_separators();
        while !matches!(self.peek(), Tok::Eof | Tok::RBrace) {
            file.items.push(self.item()?);
            if !matches!(self.peek(), Tok::Newline | Tok::Semi | Tok::Comma | Tok::Eof | Tok::RBrace) {
                return Err(self.error_here(format!("expected a separator, found {}", self.peek())));
            }
            self.skip_separators();
        }
        if braced {
            self.expect(Tok::RBrace)?;
            self.skip_separators();
        }
        if *self.peek() != Tok::Eof {
            return Err(self.error_here(format!("unexpected {}", self.peek())));
        }
        file.symbols = self.symbols;
        Ok(file)
    }
}

pub fn parse_mode(s: &str) -> Option<EqualityMode> {
    match s {
        "herbrand" => Some(EqualityMode::Herbrand),
        "rational" => Some(EqualityMode::RationalTrees),
        _ => None,
    }
}

/// Parses a problem file. Variables get their rank from the universe
/// declaration and then from first occurrence.
pub fn parse(input: &str) -> Result<ProblemFile, ParseError> {
    Parser::new(input, Symbols::new())?.file(false)
}

/// As [`parse`], with the universe given up front. Any `@universe` line in
/// the file is checked for syntax and otherwise ignored.
pub fn parse_with_universe(input: &str, universe: &[String]) -> Result<ProblemFile, ParseError> {
    let mut symbols = Symbols::new();
    for name in universe {
        symbols.intern(name);
    }
    Parser::new(input, symbols)?.file(true)
}

/// Parses a single term, interning its variables into `symbols`.
pub fn parse_term(input: &str, symbols: &mut Symbols) -> Result<Term, ParseError> {
    let mut p = Parser::new(input, std::mem::take(symbols))?;
    let result = p.term().and_then(|t| {
        if *p.peek() == Tok::Eof {
            Ok(t)
        } else {
            Err(p.error_here(format!("unexpected {} after term", p.peek())))
        }
    });
    *symbols = p.symbols;
    result
}

/// Parses the canonical text of a sharing set, `{{X1,X2},{X3}}`.
pub fn parse_sharing(input: &str, symbols: &mut Symbols) -> Result<SharingSet, ParseError> {
    let mut p = Parser::new(input, std::mem::take(symbols))?;
    let result = sharing_body(&mut p);
    *symbols = p.symbols;
    result
}

fn sharing_body(p: &mut Parser) -> Result<SharingSet, ParseError> {
    let mut sh = SharingSet::new();
    p.expect(Tok::LBrace)?;
    if *p.peek() != Tok::RBrace {
        loop {
            p.expect(Tok::LBrace)?;
            let mut group = Vec::new();
            loop {
                match p.term()? {
                    Term::Var(v) => group.push(v),
                    _ => return Err(p.error_here("sharing groups contain variables only")),
                }
                if *p.peek() != Tok::Comma {
                    break;
                }
                p.next();
            }
            p.expect(Tok::RBrace)?;
            sh.insert(SharingGroup::new(group).expect("at least one variable was read"));
            if *p.peek() != Tok::Comma {
                break;
            }
            p.next();
        }
    }
    p.expect(Tok::RBrace)?;
    p.skip_newlines();
    if *p.peek() != Tok::Eof {
        return Err(p.error_here(format!("unexpected {}", p.peek())));
    }
    Ok(sh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_equation() {
        let f = parse("X = f(X)").unwrap();
        assert_eq!(f.items.len(), 1);
        let x = f.symbols.lookup("X").unwrap();
        assert_eq!(f.items[0], Item::Equation(Equation::new(Term::Var(x), Term::app("f", vec![Term::Var(x)]))));
    }

    #[test]
    fn variables_ranked_by_first_occurrence() {
        let f = parse("p(Z, f(X,Y)) = p(f(Z,Y), Z)").unwrap();
        assert_eq!(f.symbols.vars().iter().map(|&v| f.symbols.name(v)).collect::<Vec<_>>(), ["Z", "X", "Y"]);
    }

    #[test]
    fn universe_fixes_the_order() {
        let f = parse("@universe X3, X1\nX1 -> f(X3)\n").unwrap();
        assert_eq!(f.universe, Some(vec![Var::new(0), Var::new(1)]));
        assert_eq!(f.symbols.lookup("X3"), Some(Var::new(0)));
    }

    #[test]
    fn lowercase_universe_names_are_variables() {
        let f = parse_with_universe("x -> f(y)", &["x".into(), "y".into()]).unwrap();
        assert_eq!(f.as_subst().unwrap().len(), 1);
        assert!(parse("x -> f(y)").is_err());
    }

    #[test]
    fn separators_and_comments() {
        let f = parse("@mode herbrand\n% comment\nX -> a; Y -> b % trailing\n\n{Z -> c}").unwrap_err();
        assert_eq!(f.line, 5);
        let f = parse("@mode herbrand\n% comment\nX -> a; Y -> b % trailing\n\nZ -> f(\n  X,\n  Y)\n").unwrap();
        assert_eq!(f.mode, Some(EqualityMode::Herbrand));
        assert_eq!(f.items.len(), 3);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("X -> f(a,\nY = ").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse("f(X) -> a").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse("X = a $").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(parse("@mode lazy").is_err());
        assert!(parse("X = Y(a)").is_err());
    }

    #[test]
    fn functors_are_name_and_arity() {
        let f = parse("X = f(a)\nY = f(a,b)").unwrap();
        let eqs = f.equations();
        assert_ne!(eqs[0].rhs.functor(), eqs[1].rhs.functor());
    }

    #[test]
    fn duplicate_or_circular_bodies_are_not_substitutions() {
        assert!(parse("X -> a\nX -> b").unwrap().as_subst().is_none());
        assert!(parse("X -> Y\nY -> X").unwrap().as_subst().is_none());
        assert!(parse("X -> Y\nY = a").unwrap().as_subst().is_none());
    }

    #[test]
    fn sharing_sets() {
        let mut s = Symbols::new();
        let sh = parse_sharing("{{X1,X2},{X3}}", &mut s).unwrap();
        assert_eq!(sh.len(), 2);
        assert_eq!(s.len(), 3);
        assert!(parse_sharing("{}", &mut s).unwrap().is_empty());
        assert!(parse_sharing("{{a}}", &mut s).is_err());
    }
}

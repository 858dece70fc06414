use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{LabError, Result};
use crate::words::Letter;

/// A grammar symbol: a terminal letter or a nonterminal index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    T(Letter),
    N(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub head: usize,
    pub body: Vec<Symbol>,
}

/// A context-free grammar over natural-number terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    names: Vec<String>,
    terminals: BTreeSet<Letter>,
    productions: Vec<Production>,
    start: usize,
}

/// Symbol reference used while building a grammar by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sym {
    N(String),
    T(Letter),
}

pub fn nt(name: &str) -> Sym {
    Sym::N(name.to_string())
}

pub fn t(letter: Letter) -> Sym {
    Sym::T(letter)
}

/// Collects productions by nonterminal name. The first name given is
/// the start symbol.
#[derive(Clone, Debug)]
pub struct CfgBuilder {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    productions: Vec<Production>,
}

impl CfgBuilder {
    pub fn new(start: &str) -> Self {
        let mut b = CfgBuilder {
            names: Vec::new(),
            index: BTreeMap::new(),
            productions: Vec::new(),
        };
        b.intern(start);
        b
    }

    fn intern(&mut self, name: &str) -> usize {
        if let Some(&idx) = self.index.get(name) {
            return idx;
        }
        let idx = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), idx);
        idx
    }

    /// Adds `head -> body`; an empty body is a λ-production.
    pub fn rule(mut self, head: &str, body: impl IntoIterator<Item = Sym>) -> Self {
        self.push(head, body);
        self
    }

    pub fn push(&mut self, head: &str, body: impl IntoIterator<Item = Sym>) {
        let head = self.intern(head);
        let body = body
            .into_iter()
            .map(|s| match s {
                Sym::N(name) => Symbol::N(self.intern(&name)),
                Sym::T(l) => Symbol::T(l),
            })
            .collect();
        self.productions.push(Production { head, body });
    }

    pub fn build(self) -> Cfg {
        let terminals = self
            .productions
            .iter()
            .flat_map(|p| p.body.iter())
            .filter_map(|s| match s {
                Symbol::T(l) => Some(*l),
                Symbol::N(_) => None,
            })
            .collect();
        Cfg {
            names: self.names,
            terminals,
            productions: self.productions,
            start: 0,
        }
    }
}

impl Cfg {
    /// Builds a grammar from indexed parts, checking that every index is
    /// declared.
    pub fn from_parts(
        names: Vec<String>,
        productions: Vec<Production>,
        start: usize,
    ) -> Result<Cfg> {
        if start >= names.len() {
            return Err(LabError::Grammar(format!("start index {start} is undeclared")));
        }
        let mut terminals = BTreeSet::new();
        for p in &productions {
            if p.head >= names.len() {
                return Err(LabError::Grammar(format!("head index {} is undeclared", p.head)));
            }
            for s in &p.body {
                match *s {
                    Symbol::N(i) if i >= names.len() => {
                        return Err(LabError::Grammar(format!("body index {i} is undeclared")))
                    }
                    Symbol::T(l) => {
                        terminals.insert(l);
                    }
                    Symbol::N(_) => {}
                }
            }
        }
        Ok(Cfg {
            names,
            terminals,
            productions,
            start,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nonterminal_count(&self) -> usize {
        self.names.len()
    }

    pub fn terminals(&self) -> &BTreeSet<Letter> {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Parses the line-oriented grammar text format:
    ///
    /// ```text
    /// # comment
    /// S -> W X
    /// W -> '1' W '3' | '1' '3' | ()
    /// ```
    ///
    /// Quoted tokens are terminals (a decimal letter or a symbol-table
    /// name), bare identifiers are nonterminals, `()` is the empty body.
    /// The first head is the start symbol; a head may appear on several
    /// lines.
    pub fn parse_text(text: &str, symbols: &SymbolTable) -> Result<Cfg> {
        let mut builder: Option<CfgBuilder> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |msg: String| LabError::GrammarSyntax { line, msg };
            let tokens = tokenize(raw).map_err(err)?;
            if tokens.is_empty() {
                continue;
            }
            let (head, rest) = match tokens.as_slice() {
                [Token::Ident(h), Token::Arrow, rest @ ..] => (h.clone(), rest),
                _ => return Err(err("expected `Head -> ...`".into())),
            };
            let b = builder.get_or_insert_with(|| CfgBuilder::new(&head));
            for alt in rest.split(|tok| *tok == Token::Bar) {
                if alt.is_empty() {
                    return Err(err("empty alternative (write `()` for λ)".into()));
                }
                let mut body = Vec::new();
                for tok in alt {
                    match tok {
                        Token::Ident(name) => body.push(Sym::N(name.clone())),
                        Token::Quoted(name) => body.push(Sym::T(symbols.lookup(name).map_err(|e| err(e.to_string()))?)),
                        Token::Lambda if alt.len() == 1 => {}
                        Token::Lambda => return Err(err("`()` must stand alone".into())),
                        Token::Arrow | Token::Bar => return Err(err("unexpected `->`".into())),
                    }
                }
                b.push(&head, body);
            }
        }
        builder
            .map(CfgBuilder::build)
            .ok_or_else(|| LabError::GrammarSyntax {
                line: 0,
                msg: "no productions".into(),
            })
    }

    /// Renders the grammar in the text format, start symbol first.
    pub fn to_text(&self) -> String {
        let mut order: Vec<usize> = vec![self.start];
        order.extend((0..self.names.len()).filter(|&i| i != self.start));
        let mut out = String::new();
        for head in order {
            let alts: Vec<String> = self
                .productions
                .iter()
                .filter(|p| p.head == head)
                .map(|p| {
                    if p.body.is_empty() {
                        return "()".to_string();
                    }
                    p.body
                        .iter()
                        .map(|s| match s {
                            Symbol::T(l) => format!("'{l}'"),
                            Symbol::N(i) => self.names[*i].clone(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            if !alts.is_empty() {
                let _ = writeln!(out, "{} -> {}", self.names[head], alts.join(" | "));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Quoted(String),
    Lambda,
    Arrow,
    Bar,
}

fn tokenize(line: &str) -> std::result::Result<Vec<Token>, String> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                chars.next();
            }
            '|' => {
                chars.next();
                tokens.push(Token::Bar);
            }
            '-' => {
                chars.next();
                if chars.next() != Some('>') {
                    return Err("stray `-`".into());
                }
                tokens.push(Token::Arrow);
            }
            '(' => {
                chars.next();
                if chars.next() != Some(')') {
                    return Err("`(` must be followed by `)`".into());
                }
                tokens.push(Token::Lambda);
            }
            '\'' => {
                chars.next();
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some('\'') => break,
                        Some(ch) => name.push(ch),
                        None => return Err("unterminated quote".into()),
                    }
                }
                if name.is_empty() {
                    return Err("empty terminal".into());
                }
                tokens.push(Token::Quoted(name));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&ch) = chars.peek() {
                    if ch.is_alphanumeric() || ch == '_' {
                        name.push(ch);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(name));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(tokens)
}

/// Maps symbolic terminal names to letters.
///
/// Decimal names are their own value. Otherwise explicit entries win,
/// and any remaining single ASCII character maps to its code point, so
/// `a`, `b`, `c` are 97, 98, 99 and `#` is 35.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(transparent)]
pub struct SymbolTable {
    entries: BTreeMap<String, Letter>,
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable::default()
    }

    pub fn with(mut self, name: &str, letter: Letter) -> Self {
        self.entries.insert(name.to_string(), letter);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| LabError::Io(format!("symbol table: {e}")))
    }

    pub fn lookup(&self, name: &str) -> Result<Letter> {
        if let Ok(v) = name.parse::<Letter>() {
            return Ok(v);
        }
        if let Some(&v) = self.entries.get(name) {
            return Ok(v);
        }
        let mut chars = name.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii() => Ok(c as Letter),
            _ => Err(LabError::Unknown {
                kind: "terminal symbol",
                name: name.to_string(),
            }),
        }
    }

    /// Translates a comma-separated list of names into a word.
    pub fn word(&self, text: &str) -> Result<crate::words::Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(crate::words::Word::empty());
        }
        text.split(',').map(|s| self.lookup(s.trim())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "# even palindromes\nS -> '0' S '0' | '1' S '1'\nS -> '0' '0' | '1' '1'\n";
        let g = Cfg::parse_text(text, &SymbolTable::new()).unwrap();
        assert_eq!(g.nonterminal_count(), 1);
        assert_eq!(g.productions().len(), 4);
        assert_eq!(g.terminals().iter().copied().collect::<Vec<_>>(), vec![0, 1]);
        let again = Cfg::parse_text(&g.to_text(), &SymbolTable::new()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn hash_inside_quotes_is_a_terminal() {
        let g = Cfg::parse_text("S -> 'a' S 'a' | '#'  # centre marker", &SymbolTable::new()).unwrap();
        assert_eq!(g.terminals().iter().copied().collect::<Vec<_>>(), vec![35, 97]);
    }

    #[test]
    fn lambda_and_symtab() {
        let table = SymbolTable::new().with("five", 5);
        let g = Cfg::parse_text("S -> 'five' S | ()", &table).unwrap();
        assert_eq!(g.productions()[1].body, vec![]);
        assert_eq!(g.productions()[0].body, vec![Symbol::T(5), Symbol::N(0)]);
    }

    #[test]
    fn syntax_errors_carry_line() {
        let err = Cfg::parse_text("S -> 'a'\nS -> 'a' |", &SymbolTable::new()).unwrap_err();
        assert!(matches!(err, LabError::GrammarSyntax { line: 2, .. }));
        assert!(Cfg::parse_text("S 'a'", &SymbolTable::new()).is_err());
        assert!(Cfg::parse_text("S -> 'abc'", &SymbolTable::new()).is_err());
        assert!(Cfg::parse_text("S -> 'a' ()", &SymbolTable::new()).is_err());
        assert!(Cfg::parse_text("# nothing", &SymbolTable::new()).is_err());
    }

    #[test]
    fn from_parts_rejects_undeclared() {
        let bad = Cfg::from_parts(
            vec!["S".into()],
            vec![Production { head: 0, body: vec![Symbol::N(1)] }],
            0,
        );
        assert!(bad.is_err());
    }
}

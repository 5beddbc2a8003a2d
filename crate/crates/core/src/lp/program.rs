//! Propositional normal logic programs and their text format.
//!
//! ```text
//! % comment
//! p.
//! q :- p, not r.
//! ```

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: usize,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: usize,
    pub body: Vec<Literal>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    atoms: Vec<String>,
    rules: Vec<Rule>,
}

impl Program {
    /// Atoms are numbered in order of first appearance.
    pub fn new(atoms: Vec<String>, rules: Vec<Rule>) -> Result<Self> {
        let n = atoms.len();
        if rules
            .iter()
            .any(|r| r.head >= n || r.body.iter().any(|l| l.atom >= n))
        {
            return Err(Error::Input("rule refers to an undeclared atom".into()));
        }
        let distinct: BTreeSet<&String> = atoms.iter().collect();
        if distinct.len() != n {
            return Err(Error::Input("duplicate atom".into()));
        }
        Ok(Program { atoms, rules })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).program()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rules_for(&self, atom: usize) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(move |r| r.head == atom)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            write!(f, "{}", self.atoms[r.head])?;
            if !r.body.is_empty() {
                f.write_str(" :- ")?;
                for (i, l) in r.body.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if !l.positive {
                        f.write_str("not ")?;
                    }
                    f.write_str(&self.atoms[l.atom])?;
                }
            }
            f.write_str(".\n")?;
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    atoms: Vec<String>,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            atoms: Vec::new(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        for want in s.chars() {
            match self.peek() {
                Some(c) if c == want => {
                    self.bump();
                }
                Some(c) => return Err(self.error(format!("expected `{s}`, found `{c}`"))),
                None => return Err(self.error(format!("expected `{s}`, found end of input"))),
            }
        }
        Ok(())
    }

    fn identifier(&mut self) -> Result<String> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return Err(self.error(format!("expected an atom, found `{c}`"))),
            None => return Err(self.error("expected an atom, found end of input")),
        }
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            s.push(c);
            self.bump();
        }
        Ok(s)
    }

    fn intern(&mut self, name: String) -> usize {
        match self.atoms.iter().position(|a| *a == name) {
            Some(i) => i,
            None => {
                self.atoms.push(name);
                self.atoms.len() - 1
            }
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        let name = self.identifier()?;
        if name == "not" && self.peek().is_some_and(|c| c.is_whitespace()) {
            self.skip_trivia();
            let atom = self.identifier()?;
            return Ok(Literal {
                atom: self.intern(atom),
                positive: false,
            });
        }
        Ok(Literal {
            atom: self.intern(name),
            positive: true,
        })
    }

    fn rule(&mut self) -> Result<Rule> {
        let head = self.identifier()?;
        if head == "not" {
            return Err(self.error("a rule head cannot be negated"));
        }
        let head = self.intern(head);
        self.skip_trivia();
        let mut body = Vec::new();
        if self.peek() == Some(':') {
            self.expect(":-")?;
            loop {
                self.skip_trivia();
                body.push(self.literal()?);
                self.skip_trivia();
                match self.peek() {
                    Some(',') => {
                        self.bump();
                    }
                    Some('.') => break,
                    Some(c) => return Err(self.error(format!("expected `,` or `.`, found `{c}`"))),
                    None => return Err(self.error("expected `.`, found end of input")),
                }
            }
        }
        self.expect(".")?;
        Ok(Rule { head, body })
    }

    fn program(mut self) -> Result<Program> {
        let mut rules = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek().is_none() {
                break;
            }
            rules.push(self.rule()?);
        }
        Program::new(self.atoms, rules)
    }
}

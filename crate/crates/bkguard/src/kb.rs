//! Knowledge files: one basic implication per line.
//!
//! ```text
//! # Hannah and Charlie share a household
//! (Hannah=Flu) -> (Charlie=Flu)
//! (Ed=Flu & Ed=Mumps) -> (Ed="Lung Cancer" | Ed=Flu)
//! ```
//!
//! `AND` and `OR` may replace `&` and `|`. Names and values containing
//! spaces or reserved characters may be quoted; unquoted words separated by
//! blanks are joined with a single space.

use bkguard_core::{Atom, BasicImplication, Knowledge, PersonDirectory};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    And,
    Or,
    Equals,
    Arrow,
    Word { text: String, quoted: bool },
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    column: usize,
}

fn lex(line: &str, line_no: usize) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '=' => Some(Token::Equals),
            _ => None,
        };
        if let Some(token) = single {
            out.push(Spanned { token, column });
            i += 1;
        } else if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Spanned { token: Token::Arrow, column });
            i += 2;
        } else if c == '"' {
            let mut text = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(Error::syntax(line_no, column, "unterminated quoted string")),
                    Some('"') => break,
                    Some('\\') => {
                        let escaped = chars
                            .get(i + 1)
                            .ok_or_else(|| Error::syntax(line_no, i + 1, "dangling escape"))?;
                        text.push(*escaped);
                        i += 2;
                    }
                    Some(&ch) => {
                        text.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Spanned { token: Token::Word { text, quoted: true }, column });
        } else {
            let start = i;
            while i < chars.len() {
                let ch = chars[i];
                if ch.is_whitespace() || "()&|=\"#".contains(ch) || (ch == '-' && chars.get(i + 1) == Some(&'>')) {
                    break;
                }
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let token = match text.as_str() {
                "AND" => Token::And,
                "OR" => Token::Or,
                _ => Token::Word { text, quoted: false },
            };
            out.push(Spanned { token, column });
        }
    }
    Ok(out)
}

struct Parser<'a, D: ?Sized> {
    tokens: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_column: usize,
    directory: &'a D,
}

impl<D: PersonDirectory + ?Sized> Parser<'_, D> {
    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.column(), message)
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        match self.tokens.get(self.pos) {
            Some(t) if t.token == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    /// A quoted word, or a run of bare words joined by single spaces.
    fn name(&mut self, what: &str) -> Result<String> {
        match self.tokens.get(self.pos).map(|t| &t.token) {
            Some(Token::Word { text, quoted: true }) => {
                let text = text.clone();
                self.pos += 1;
                Ok(text)
            }
            Some(Token::Word { quoted: false, .. }) => {
                let mut words = Vec::new();
                while let Some(Token::Word { text, quoted: false }) = self.tokens.get(self.pos).map(|t| &t.token) {
                    words.push(text.clone());
                    self.pos += 1;
                }
                Ok(words.join(" "))
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let column = self.column();
        let person = self.name("a person")?;
        self.expect(Token::Equals, "`=`")?;
        let value = self.name("a sensitive value")?;
        self.directory
            .atom(&person, &value)
            .map_err(|e| Error::syntax(self.line, column, e.to_string()))
    }

    fn atoms(&mut self, separator: Token) -> Result<Vec<Atom>> {
        self.expect(Token::Open, "`(`")?;
        let mut atoms = vec![self.atom()?];
        while self.tokens.get(self.pos).is_some_and(|t| t.token == separator) {
            self.pos += 1;
            atoms.push(self.atom()?);
        }
        self.expect(Token::Close, "`)`")?;
        Ok(atoms)
    }

    fn implication(&mut self) -> Result<BasicImplication> {
        let antecedent = self.atoms(Token::And)?;
        self.expect(Token::Arrow, "`->`")?;
        let consequent = self.atoms(Token::Or)?;
        if self.pos != self.tokens.len() {
            return Err(self.error("unexpected text after implication"));
        }
        Ok(BasicImplication::new(antecedent, consequent)?)
    }
}

/// Parses a knowledge file, resolving names against `directory`.
pub fn parse_knowledge<D: PersonDirectory + ?Sized>(text: &str, directory: &D) -> Result<Knowledge> {
    let mut knowledge = Knowledge::empty();
    for (i, line) in text.lines().enumerate() {
        let tokens = lex(line, i + 1)?;
        if tokens.is_empty() {
            continue;
        }
        let mut parser = Parser { tokens, pos: 0, line: i + 1, end_column: line.chars().count() + 1, directory };
        knowledge.push(parser.implication()?);
    }
    Ok(knowledge)
}

/// Parses a single `person=value` atom, as given to `--target`.
pub fn parse_atom<D: PersonDirectory + ?Sized>(text: &str, directory: &D) -> Result<Atom> {
    let tokens = lex(text, 1)?;
    let mut parser = Parser { tokens, pos: 0, line: 1, end_column: text.chars().count() + 1, directory };
    let atom = parser.atom()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected text after atom"));
    }
    Ok(atom)
}

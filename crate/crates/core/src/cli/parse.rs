//! Parser for tensor expressions such as `L(s0; 1,1) * L(s0; 0,0)`.
//!
//! ```text
//! expr   := atom (('⊗' | '*') atom)*
//! atom   := ('L' | 'Delta' | 'T' | IDENT) '(' body ')'
//! body   := word (';' weight)? | weight
//! word   := 'e' | ('s' DIGIT)+
//! weight := INT (',' INT)*
//! ```
//!
//! Whitespace is ignored. A body without a word names the module by its
//! highest weight. Custom atoms (any other identifier) take a weight only.

use std::fmt;

use crate::affweyl::Word;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomKind {
    Simple,
    Weyl,
    Tilting,
    Custom(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub kind: AtomKind,
    pub word: Option<Word>,
    pub weight: Option<Vec<i64>>,
    /// Character offset of the atom name.
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjExpr {
    pub atoms: Vec<Atom>,
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(input: &str) -> Self {
        let chars: Vec<(usize, char)> =
            input.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Self { chars, at: 0, end: input.chars().count() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end, |&(p, _)| p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.at += 1;
                Ok(())
            }
            Some(d) => self.err(format!("expected '{c}', found '{d}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return self.err(format!("expected a module name, found '{c}'")),
            None => return self.err("expected a module name, found end of input"),
        }
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            s.push(c);
            self.at += 1;
        }
        Ok(s)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.peek() == Some('e') {
            self.at += 1;
            return Ok(Word::default());
        }
        let mut gens = Vec::new();
        while self.peek() == Some('s') {
            self.at += 1;
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    gens.push(d as usize - '0' as usize);
                    self.at += 1;
                }
                _ => return self.err("expected a generator digit after 's'"),
            }
        }
        if gens.is_empty() {
            return self.err("expected a word");
        }
        Ok(Word(gens))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.at += 1;
        }
        while let Some(d) = self.peek().filter(char::is_ascii_digit) {
            s.push(d);
            self.at += 1;
        }
        if s.is_empty() || s == "-" {
            return self.err("expected an integer");
        }
        s.parse().map_err(|_| ParseError { pos: start, msg: format!("integer {s} out of range") })
    }

    fn weight(&mut self) -> Result<Vec<i64>, ParseError> {
        let mut v = vec![self.int()?];
        while self.peek() == Some(',') {
            self.at += 1;
            v.push(self.int()?);
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        let kind = match name.as_str() {
            "L" => AtomKind::Simple,
            "Delta" => AtomKind::Weyl,
            "T" => AtomKind::Tilting,
            _ => AtomKind::Custom(name),
        };
        self.expect('(')?;
        let body_pos = self.pos();
        let (word, weight) = match self.peek() {
            Some('e' | 's') => {
                let word = self.word()?;
                let weight = if self.peek() == Some(';') {
                    self.at += 1;
                    Some(self.weight()?)
                } else {
                    None
                };
                (Some(word), weight)
            }
            _ => (None, Some(self.weight()?)),
        };
        if let (AtomKind::Custom(_), Some(_)) = (&kind, &word) {
            return Err(ParseError { pos: body_pos, msg: "custom atoms take a weight, not a word".into() });
        }
        if kind == AtomKind::Tilting && word.as_ref().is_some_and(|w| !w.is_empty()) {
            return Err(ParseError { pos: body_pos, msg: "tilting atoms take a weight, not a word".into() });
        }
        self.expect(')')?;
        Ok(Atom { kind, word, weight, pos })
    }
}

pub fn parse(input: &str) -> Result<ObjExpr, ParseError> {
    let mut p = Parser::new(input);
    let mut atoms = vec![p.atom()?];
    while let Some(c) = p.peek() {
        match c {
            '⊗' | '*' => {
                p.at += 1;
                atoms.push(p.atom()?);
            }
            _ => return p.err(format!("expected '⊗' or '*', found '{c}'")),
        }
    }
    Ok(ObjExpr { atoms })
}

/// Checks weight lengths and generator indices against `rank`.
pub fn validate(expr: &ObjExpr, rank: usize) -> Result<(), ParseError> {
    for a in &expr.atoms {
        if let Some(w) = &a.weight {
            if w.len() != rank {
                return Err(ParseError {
                    pos: a.pos,
                    msg: format!("weight has {} coordinates, expected {rank}", w.len()),
                });
            }
        }
        if let Some(g) = a.word.as_ref().and_then(|w| w.0.iter().find(|&&g| g > rank)) {
            return Err(ParseError { pos: a.pos, msg: format!("generator s{g} does not exist in rank {rank}") });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_simple_atoms() {
        let e = parse("L(s0; 1,1) * L(s0; 0,0)").unwrap();
        assert_eq!(e.atoms.len(), 2);
        assert_eq!(e.atoms[0].kind, AtomKind::Simple);
        assert_eq!(e.atoms[0].word, Some(Word(vec![0])));
        assert_eq!(e.atoms[0].weight, Some(vec![1, 1]));
        assert_eq!(e.atoms[1].weight, Some(vec![0, 0]));
    }

    #[test]
    fn tilting_weight_only() {
        let e = parse("T(2,0)").unwrap();
        assert_eq!(e.atoms[0].kind, AtomKind::Tilting);
        assert_eq!(e.atoms[0].word, None);
        assert_eq!(e.atoms[0].weight, Some(vec![2, 0]));
    }

    #[test]
    fn custom_rejects_word() {
        let err = parse("M(s0)").unwrap_err();
        assert_eq!(err.pos, 2);
        assert!(err.msg.contains("weight"));
        let ok = parse("M(0,0)").unwrap();
        assert_eq!(ok.atoms[0].kind, AtomKind::Custom("M".into()));
    }

    #[test]
    fn unicode_tensor_and_whitespace() {
        let e = parse(" Delta( s0 s1 ; -1 , 2 ) ⊗ L(e)").unwrap();
        assert_eq!(e.atoms[0].kind, AtomKind::Weyl);
        assert_eq!(e.atoms[0].word, Some(Word(vec![0, 1])));
        assert_eq!(e.atoms[0].weight, Some(vec![-1, 2]));
        assert_eq!(e.atoms[1].word, Some(Word::default()));
        assert_eq!(e.atoms[1].weight, None);
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("L(s0;1,1").unwrap_err().pos, 8);
        assert_eq!(parse("L(s0;1,1) + L(e)").unwrap_err().pos, 10);
        assert_eq!(parse("L(sx)").unwrap_err().pos, 3);
        assert_eq!(parse("").unwrap_err().pos, 0);
        assert!(parse("T(s1;0,0)").is_err());
    }

    #[test]
    fn validation() {
        let e = parse("L(s3;0,0)").unwrap();
        assert!(validate(&e, 2).is_err());
        assert!(validate(&e, 3).is_err());
        let e = parse("L(s2;0,0)").unwrap();
        assert!(validate(&e, 2).is_ok());
    }
}

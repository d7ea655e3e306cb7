//! Words in the two-generator presentation of `Sp(4, Z)` with generators
//! `K` and `L`, evaluated as exact 4x4 integer matrices.
//!
//! Word syntax (whitespace separates tokens and is otherwise ignored):
//!
//! ```text
//! word       := term { term }
//! term       := atom [ "^" signed_int ]
//! atom       := "K" | "H" | "L" | numeral | name | "(" word ")"
//! numeral    := digit { digit }          -- n stands for L^n
//! name       := "w_alpha" | "w_beta" | "x_alpha"
//! signed_int := [ "-" ] numeral
//! ```
//!
//! Abbreviations: `H = K5K7K`, `w_alpha = H6`, `w_beta = 9H6H`,
//! `x_alpha = 5K1`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{matrix_order, IntMatrix, MatrixError, MatrixOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown abbreviation {name:?} at column {column}")]
    UnknownAbbreviation { column: usize, name: String },
    #[error("exponent out of range at column {column}")]
    ExponentOverflow { column: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenderError {
    #[error(transparent)]
    Parse(#[from] ParseWordError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Abbrev {
    H,
    WAlpha,
    WBeta,
    XAlpha,
}

impl Abbrev {
    pub const ALL: [Abbrev; 4] = [Abbrev::H, Abbrev::WAlpha, Abbrev::WBeta, Abbrev::XAlpha];

    pub fn name(self) -> &'static str {
        match self {
            Abbrev::H => "H",
            Abbrev::WAlpha => "w_alpha",
            Abbrev::WBeta => "w_beta",
            Abbrev::XAlpha => "x_alpha",
        }
    }

    pub fn expansion(self) -> &'static str {
        match self {
            Abbrev::H => "K5K7K",
            Abbrev::WAlpha => "H6",
            Abbrev::WBeta => "9H6H",
            Abbrev::XAlpha => "5K1",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Token {
    GenK,
    GenL(i64),
    Abbrev(Abbrev),
    Group(Word, i64),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    tokens: Vec<Token>,
}

impl Word {
    pub fn new(tokens: Vec<Token>) -> Self {
        Word { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        Word { tokens }
    }

    /// Formal inverse: reversed order, every token inverted.
    pub fn inverse(&self) -> Word {
        let tokens = self
            .tokens
            .iter()
            .rev()
            .map(|t| match t {
                Token::GenK => Token::Group(Word::new(vec![Token::GenK]), -1),
                Token::GenL(e) => Token::GenL(-e),
                Token::Abbrev(a) => Token::Group(Word::new(vec![Token::Abbrev(*a)]), -1),
                Token::Group(w, e) => Token::Group(w.clone(), -e),
            })
            .collect();
        Word { tokens }
    }

    pub fn pow(&self, e: i64) -> Word {
        Word::new(vec![Token::Group(self.clone(), e)])
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::GenK => f.write_str("K"),
            Token::GenL(e) if *e >= 0 => write!(f, "{e}"),
            Token::GenL(e) => write!(f, "L^{e}"),
            Token::Abbrev(a) => f.write_str(a.name()),
            Token::Group(w, 1) => write!(f, "({w})"),
            Token::Group(w, e) => write!(f, "({w})^{e}"),
        }
    }
}

/// Space-separated tokens; reparses to an equal word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_word(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lexeme {
    K,
    H,
    L,
    Number(u64),
    Name(Abbrev),
    Open,
    Close,
    Caret,
    Minus,
}

fn lex(text: &str) -> Result<Vec<(usize, Lexeme)>, ParseWordError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let column = i + 1;
        let c = chars[i];
        let lexeme = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            'K' => Lexeme::K,
            'H' => Lexeme::H,
            'L' => Lexeme::L,
            '(' => Lexeme::Open,
            ')' => Lexeme::Close,
            '^' => Lexeme::Caret,
            '-' => Lexeme::Minus,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = digits
                    .parse()
                    .map_err(|_| ParseWordError::ExponentOverflow { column })?;
                out.push((column, Lexeme::Number(n)));
                continue;
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let abbrev = Abbrev::from_name(&name)
                    .ok_or(ParseWordError::UnknownAbbreviation { column, name })?;
                out.push((column, Lexeme::Name(abbrev)));
                continue;
            }
            other => {
                return Err(ParseWordError::Syntax {
                    column,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((column, lexeme));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    lexemes: Vec<(usize, Lexeme)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Lexeme> {
        self.lexemes.get(self.pos).map(|(_, l)| l)
    }

    fn column(&self) -> usize {
        self.lexemes
            .get(self.pos)
            .map_or(self.end_column, |(c, _)| *c)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseWordError> {
        Err(ParseWordError::Syntax {
            column: self.column(),
            message: message.into(),
        })
    }

    fn word(&mut self) -> Result<Word, ParseWordError> {
        let mut tokens = Vec::new();
        while matches!(
            self.peek(),
            Some(
                Lexeme::K
                    | Lexeme::H
                    | Lexeme::L
                    | Lexeme::Number(_)
                    | Lexeme::Name(_)
                    | Lexeme::Open
            )
        ) {
            tokens.push(self.term()?);
        }
        if tokens.is_empty() {
            return self.syntax("expected K, H, L, a numeral, a name or '('");
        }
        Ok(Word { tokens })
    }

    fn term(&mut self) -> Result<Token, ParseWordError> {
        let column = self.column();
        let (_, atom) = self.lexemes[self.pos].clone();
        self.pos += 1;
        let sub = match atom {
            Lexeme::Open => {
                let w = self.word()?;
                if self.peek() != Some(&Lexeme::Close) {
                    return self.syntax("expected ')'");
                }
                self.pos += 1;
                Some(w)
            }
            _ => None,
        };
        let exponent = self.exponent()?;
        let overflow = ParseWordError::ExponentOverflow { column };
        Ok(match (atom, exponent) {
            (Lexeme::K, None) => Token::GenK,
            (Lexeme::K, Some(e)) => Token::Group(Word::new(vec![Token::GenK]), e),
            (Lexeme::L, e) => Token::GenL(e.unwrap_or(1)),
            (Lexeme::Number(n), e) => {
                let n = i64::try_from(n).map_err(|_| overflow.clone())?;
                Token::GenL(n.checked_mul(e.unwrap_or(1)).ok_or(overflow)?)
            }
            (Lexeme::H, None) => Token::Abbrev(Abbrev::H),
            (Lexeme::Name(a), None) => Token::Abbrev(a),
            (Lexeme::H, Some(e)) => Token::Group(Word::new(vec![Token::Abbrev(Abbrev::H)]), e),
            (Lexeme::Name(a), Some(e)) => Token::Group(Word::new(vec![Token::Abbrev(a)]), e),
            (Lexeme::Open, e) => Token::Group(sub.expect("group parsed above"), e.unwrap_or(1)),
            _ => unreachable!("term() is only entered on an atom"),
        })
    }

    fn exponent(&mut self) -> Result<Option<i64>, ParseWordError> {
        if self.peek() != Some(&Lexeme::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        let negative = self.peek() == Some(&Lexeme::Minus);
        if negative {
            self.pos += 1;
        }
        let column = self.column();
        let Some(Lexeme::Number(n)) = self.peek().cloned() else {
            return self.syntax("expected an integer exponent after '^'");
        };
        self.pos += 1;
        let n = i64::try_from(n).map_err(|_| ParseWordError::ExponentOverflow { column })?;
        Ok(Some(if negative { -n } else { n }))
    }
}

pub fn parse_word(text: &str) -> Result<Word, ParseWordError> {
    let lexemes = lex(text)?;
    let mut parser = Parser {
        lexemes,
        pos: 0,
        end_column: text.chars().count() + 1,
    };
    let word = parser.word()?;
    if parser.pos != parser.lexemes.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(word)
}

pub fn generator_k() -> IntMatrix {
    IntMatrix::from_rows(&[[1, 0, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 0, -1]])
        .expect("K is 4x4")
}

pub fn generator_l() -> IntMatrix {
    IntMatrix::from_rows(&[[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 1, 0], [0, 1, 0, 0]])
        .expect("L is 4x4")
}

struct Generators {
    k: IntMatrix,
    l: IntMatrix,
    l_inv: IntMatrix,
    abbrevs: [IntMatrix; 4],
}

fn generators() -> &'static Generators {
    static GENS: OnceLock<Generators> = OnceLock::new();
    GENS.get_or_init(|| {
        let k = generator_k();
        let l = generator_l();
        let l_inv = l.inverse().expect("L is unimodular");
        let mut gens = Generators {
            k,
            l,
            l_inv,
            abbrevs: std::array::from_fn(|_| IntMatrix::identity(4)),
        };
        // each expansion only refers to abbreviations listed before it
        for a in Abbrev::ALL {
            let w = parse_word(a.expansion()).expect("abbreviation tables parse");
            gens.abbrevs[a.index()] = eval_with(&gens, &w).expect("abbreviations evaluate");
        }
        gens
    })
}

fn signed_pow(m: &IntMatrix, e: i64) -> Result<IntMatrix, MatrixError> {
    if e >= 0 {
        m.pow(e as u64)
    } else {
        m.inverse()?.pow(e.unsigned_abs())
    }
}

fn eval_with(gens: &Generators, w: &Word) -> Result<IntMatrix, MatrixError> {
    let mut acc = IntMatrix::identity(4);
    for t in &w.tokens {
        let m = match t {
            Token::GenK => gens.k.clone(),
            Token::GenL(e) if *e >= 0 => gens.l.pow(*e as u64)?,
            Token::GenL(e) => gens.l_inv.pow(e.unsigned_abs())?,
            Token::Abbrev(a) => gens.abbrevs[a.index()].clone(),
            Token::Group(sub, e) => signed_pow(&eval_with(gens, sub)?, *e)?,
        };
        acc = acc.mul(&m)?;
    }
    Ok(acc)
}

/// The matrix of a word: the left-to-right product of its letters.
pub fn evaluate(w: &Word) -> Result<IntMatrix, MatrixError> {
    eval_with(generators(), w)
}

pub fn evaluate_text(text: &str) -> Result<IntMatrix, BenderError> {
    Ok(evaluate(&parse_word(text)?)?)
}

/// Whether two words evaluate to the same matrix.
pub fn words_equal(lhs: &str, rhs: &str) -> Result<bool, BenderError> {
    Ok(evaluate_text(lhs)? == evaluate_text(rhs)?)
}

/// The defining relations, labelled a through h. `L^0` is the identity.
pub const RELATIONS: [(char, &str, &str); 8] = [
    ('a', "K^2", "L^0"),
    ('b', "L^12", "L^0"),
    ('c', "(K7K5K) L", "L (K5K7K)"),
    ('d', "(2K4)(K5K7K)", "(K5K7K)(2K4)"),
    ('e', "(3K3)(K5K7K)", "(K5K7K)(3K3)"),
    ('f', "(2(K5K7K))^2", "((K5K7K)2)^2"),
    ('g', "L (6(K5K7K))^2", "(6(K5K7K))^2 L"),
    ('h', "(K5)^5", "(6(K5K7K))^2"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub label: char,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relations: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.holds)
    }

    pub fn passed(&self) -> usize {
        self.relations.iter().filter(|r| r.holds).count()
    }
}

pub fn verify_relations() -> Result<RelationReport, BenderError> {
    let relations = RELATIONS
        .iter()
        .map(|&(label, lhs, rhs)| {
            Ok(RelationCheck {
                label,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                holds: words_equal(lhs, rhs)?,
            })
        })
        .collect::<Result<_, BenderError>>()?;
    Ok(RelationReport { relations })
}

/// Largest order of an element of `Sp(4, Z)`.
pub const SP4_MAX_ORDER: u64 = 12;

/// Word orders in `Sp(4, Z)`, decided by exact matrix powers.
pub fn word_order(w: &Word) -> Result<MatrixOrder, MatrixError> {
    matrix_order(&evaluate(w)?, SP4_MAX_ORDER)
}

/// Torsion words with their known orders.
pub const ORDER_CLAIMS: [(&str, u64); 11] = [
    ("K", 2),
    ("L", 12),
    ("2", 6),
    ("3", 4),
    ("4", 3),
    ("K5", 10),
    ("(K5)^2", 5),
    ("(K5)^5", 2),
    ("6H", 4),
    ("9H", 8),
    ("H", 2),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderClaim {
    pub word: String,
    pub claimed: u64,
    pub verified: MatrixOrder,
}

impl OrderClaim {
    pub fn confirmed(&self) -> bool {
        self.verified == MatrixOrder::Finite(self.claimed)
    }
}

pub fn paper_order_table() -> Result<Vec<OrderClaim>, BenderError> {
    ORDER_CLAIMS
        .iter()
        .map(|&(text, claimed)| {
            let verified = word_order(&parse_word(text)?)?;
            Ok(OrderClaim {
                word: text.to_string(),
                claimed,
                verified,
            })
        })
        .collect()
}

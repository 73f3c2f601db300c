//! Free-group words and finitely presented groups.
//!
//! Words are flat sequences of [`Letter`]s. A letter packs a generator index
//! and an inversion bit into one integer (`2 * generator + inverse`), which is
//! also the column a coset table uses for that letter, so the inverse of a
//! letter is `letter ^ 1`.
//!
//! Presentations are written as `< gens | relators >`:
//!
//! ```text
//! < x, y, z | x^y*x^-3, y^z*y^-2, z^x*z^-4 >
//! ```
//!
//! `u^n` is the n-th power (negative `n` inverts), `u^v` is the conjugate
//! `v^-1*u*v` and `[u,v]` is the commutator `u^-1*v^-1*u*v`. Generator names
//! are case sensitive; there is no upper-case-means-inverse shorthand.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at offset {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("empty generator name at offset {position}")]
    EmptyGeneratorName { position: usize },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error("word uses generator {generator} but only {rank} generators are declared")]
    GeneratorOutOfRange { generator: usize, rank: usize },
}

/// A generator or inverse generator, encoded as `2 * generator + inverse`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn from_column(column: usize) -> Self {
        Letter(column as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 for a generator, -1 for an inverse generator.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[must_use]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// Column index of this letter in a coset table.
    pub fn column(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// A word in the free group.
///
/// The letter sequence is stored as given; the algebraic operations
/// ([`Word::multiply`], [`Word::inverse`], ...) return freely reduced words.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Wraps a letter sequence without reducing it.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from signed 1-based generator numbers: `3` is the third
    /// generator, `-3` its inverse.
    ///
    /// # Panics
    ///
    /// Panics on a zero entry.
    pub fn from_signed(letters: &[i32]) -> Self {
        Word(
            letters
                .iter()
                .map(|&l| {
                    assert!(l != 0, "generator numbers are 1-based");
                    Letter::new(l.unsigned_abs() as usize - 1, l < 0)
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&a), Some(&b)) => self.0.len() == 1 || a != b.inverse(),
                _ => true,
            }
    }

    /// The unique freely reduced word equal to `self` in the free group.
    #[must_use]
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// A cyclically reduced conjugate of the free reduction of `self`,
    /// obtained by stripping matching inverse letters from both ends.
    #[must_use]
    pub fn cyclically_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let (mut lo, mut hi) = (0, reduced.len());
        while hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(reduced[lo..hi].to_vec())
    }

    /// The reduced product `self * other`.
    #[must_use]
    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.free_reduce().0;
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// The reduced inverse.
    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect()).free_reduce()
    }

    /// `self^n`, reduced. Negative exponents invert.
    #[must_use]
    pub fn power(&self, n: i64) -> Word {
        let base = if n < 0 {
            self.inverse()
        } else {
            self.free_reduce()
        };
        let mut letters = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word(letters).free_reduce()
    }

    /// `v^-1 * self * v`, reduced.
    #[must_use]
    pub fn conjugate(&self, v: &Word) -> Word {
        v.inverse().multiply(self).multiply(v)
    }

    /// `u^-1 * v^-1 * u * v`, reduced.
    #[must_use]
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().multiply(&v.inverse()).multiply(u).multiply(v)
    }

    /// Sum of the exponents of `generator` over all letters.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator() == generator)
            .map(|l| l.sign())
            .sum()
    }

    /// Number of letters involving `generator` (with either sign).
    pub fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.generator() == generator).count()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// The cyclic rotation starting at `start`.
    #[must_use]
    pub fn rotate(&self, start: usize) -> Word {
        let mut letters = self.0[start..].to_vec();
        letters.extend_from_slice(&self.0[..start]);
        Word(letters)
    }

    /// Canonical representative of the set of cyclic rotations of `self` and
    /// of its inverse; two cyclically reduced relators define the same normal
    /// subgroup contribution exactly when their keys agree.
    pub fn cyclic_key(&self) -> Word {
        let w = self.cyclically_reduce();
        if w.is_empty() {
            return w;
        }
        let inv = w.inverse();
        (0..w.len())
            .flat_map(|i| [w.rotate(i), inv.rotate(i)])
            .min()
            .expect("nonempty word has rotations")
    }

    /// Renders the word using `names` for the generators, grouping runs of a
    /// repeated letter into powers. The empty word renders as `1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            let name = &self.names[l.generator()];
            match (l.is_inverse(), run) {
                (false, 1) => write!(f, "{name}")?,
                (false, n) => write!(f, "{name}^{n}")?,
                (true, n) => write!(f, "{name}^-{n}")?,
            }
            i += run;
        }
        Ok(())
    }
}

/// A finitely presented group `< generators | relators >`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates generator names and relator words. Relators are stored
    /// cyclically reduced; relators that reduce to the empty word are
    /// dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, ParseError> {
        for (i, name) in generators.iter().enumerate() {
            if !is_identifier(name) {
                return Err(ParseError::InvalidGeneratorName(name.clone()));
            }
            if generators[..i].contains(name) {
                return Err(ParseError::DuplicateGenerator(name.clone()));
            }
        }
        let rank = generators.len();
        for w in &relators {
            check_word(w, rank)?;
        }
        let relators = relators
            .iter()
            .map(Word::cyclically_reduce)
            .filter(|w| !w.is_empty())
            .collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation with generated names `g1, g2, ...`.
    pub fn with_rank(rank: usize, relators: Vec<Word>) -> Result<Self, ParseError> {
        Presentation::new((1..=rank).map(|i| format!("g{i}")).collect(), relators)
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).presentation()
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        let mut p = Parser::with_generators(text, &self.generators);
        p.skip_ws();
        let w = p.word()?;
        p.expect_end()?;
        Ok(w.free_reduce())
    }

    /// Parses a comma-separated list of words. Blank input is the empty list.
    pub fn parse_words(&self, text: &str) -> Result<Vec<Word>, ParseError> {
        let mut p = Parser::with_generators(text, &self.generators);
        p.skip_ws();
        if p.at_end() {
            return Ok(Vec::new());
        }
        let mut words = vec![p.word()?.free_reduce()];
        while p.eat(',') {
            words.push(p.word()?.free_reduce());
        }
        p.expect_end()?;
        Ok(words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Checks that `w` only uses declared generators.
    pub fn check_word(&self, w: &Word) -> Result<(), ParseError> {
        check_word(w, self.rank())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.generators.join(","))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display(&self.generators))?;
        }
        f.write_str(">")
    }
}

fn check_word(w: &Word, rank: usize) -> Result<(), ParseError> {
    match w.max_generator() {
        Some(g) if g >= rank => Err(ParseError::GeneratorOutOfRange { generator: g, rank }),
        _ => Ok(()),
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The generators of a subgroup, as words over the ambient presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub generators: Vec<Word>,
}

impl SubgroupSpec {
    pub fn trivial() -> Self {
        SubgroupSpec::default()
    }

    pub fn new(generators: Vec<Word>) -> Self {
        SubgroupSpec { generators }
    }

    pub fn parse(text: &str, presentation: &Presentation) -> Result<Self, ParseError> {
        Ok(SubgroupSpec {
            generators: presentation.parse_words(text)?,
        })
    }

    pub fn validate(&self, presentation: &Presentation) -> Result<(), ParseError> {
        self.generators
            .iter()
            .try_for_each(|w| presentation.check_word(w))
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    generators: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            pos: 0,
            generators: Vec::new(),
        }
    }

    fn with_generators(text: &'a str, generators: &[String]) -> Self {
        Parser {
            text,
            pos: 0,
            generators: generators.to_vec(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    /// Consumes `c` (after whitespace) if present.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input".into()))
        }
    }

    fn error(&self, message: String) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".to_string(),
        };
        ParseError::Syntax {
            position: self.pos,
            message: message + &found,
        }
    }

    fn identifier(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return None,
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some((start, &self.text[start..self.pos]))
    }

    fn presentation(mut self) -> Result<Presentation, ParseError> {
        self.expect('<')?;
        if !self.eat('|') {
            loop {
                let pos = self.pos;
                match self.identifier() {
                    Some((_, name)) => {
                        if self.generators.iter().any(|g| g == name) {
                            return Err(ParseError::DuplicateGenerator(name.to_string()));
                        }
                        self.generators.push(name.to_string());
                    }
                    None if matches!(self.peek(), Some(',' | '|')) => {
                        return Err(ParseError::EmptyGeneratorName { position: pos })
                    }
                    None => return Err(self.error("expected a generator name".into())),
                }
                if self.eat('|') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let mut relators = Vec::new();
        if !self.eat('>') {
            loop {
                relators.push(self.word()?);
                if self.eat('>') {
                    break;
                }
                self.expect(',')?;
            }
        }
        self.expect_end()?;
        Presentation::new(self.generators, relators)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.term()?;
        while self.eat('*') {
            let t = self.term()?;
            w = w.multiply(&t);
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        let base = self.factor()?;
        if !self.eat('^') {
            return Ok(base);
        }
        if let Some(n) = self.signed_integer()? {
            return Ok(base.power(n));
        }
        let v = self.factor()?;
        Ok(base.conjugate(&v))
    }

    fn signed_integer(&mut self) -> Result<Option<i64>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[self.pos..];
        let sign_len = usize::from(rest.starts_with(['+', '-']));
        let digits = rest[sign_len..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            if sign_len == 1 {
                self.pos += 1;
                return Err(self.error("expected digits after sign".into()));
            }
            return Ok(None);
        }
        self.pos += sign_len + digits;
        let n = self.text[start..self.pos]
            .parse::<i64>()
            .map_err(|_| ParseError::Syntax {
                position: start,
                message: "exponent out of range".into(),
            })?;
        self.skip_ws();
        Ok(Some(n))
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        self.skip_ws();
        if self.eat('(') {
            let w = self.word()?;
            self.expect(')')?;
            return Ok(w);
        }
        if self.eat('[') {
            let u = self.word()?;
            self.expect(',')?;
            let v = self.word()?;
            self.expect(']')?;
            return Ok(Word::commutator(&u, &v));
        }
        match self.identifier() {
            Some((position, name)) => {
                let g = self
                    .generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| ParseError::UnknownGenerator {
                        name: name.to_string(),
                        position,
                    })?;
                self.skip_ws();
                Ok(Word(vec![Letter::new(g, false)]))
            }
            None => Err(self.error("expected a generator, `(` or `[`".into())),
        }
    }
}

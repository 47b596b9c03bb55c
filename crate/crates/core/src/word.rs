//! Loops in the thrice-punctured sphere and words in the universal Coxeter
//! group of rank three.
//!
//! The fundamental group is free on two generators, but it is easier to work
//! with its image in `G = <s1, s2, s3 | si^2 = 1>`: every element of `G` has a
//! unique freely reduced word (no equal neighbouring letters), so reduction and
//! conjugacy questions become string manipulations. Loops are translated into
//! `G` letter by letter and all normal forms are computed there.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A generator index, always in `1..=3`.
pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("column {column}: unrecognised token `{token}`")]
    BadToken { column: usize, token: String },
    #[error("column {column}: token `{token}` mixes loop and reflection alphabets")]
    MixedAlphabet { column: usize, token: String },
    #[error("generator index {0} is outside 1..=3")]
    BadIndex(u8),
    #[error("word of odd length {0} has no loop preimage")]
    OddLength(usize),
}

/// `g_index^sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopLetter {
    pub index: Letter,
    pub sign: i8,
}

impl LoopLetter {
    pub fn new(index: Letter, sign: i8) -> Result<Self, WordError> {
        if !(1..=3).contains(&index) {
            return Err(WordError::BadIndex(index));
        }
        Ok(Self {
            index,
            sign: if sign < 0 { -1 } else { 1 },
        })
    }

    /// Image in `G`: `g1 -> s1 s2`, `g2 -> s2 s3`, `g3 -> s3 s1`, inverses reversed.
    pub fn to_coxeter(self) -> [Letter; 2] {
        let next = self.index % 3 + 1;
        if self.sign > 0 {
            [self.index, next]
        } else {
            [next, self.index]
        }
    }
}

/// A word in the basic loops `g1, g2, g3` (with `g1 g2 g3 = 1`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoopWord {
    letters: Vec<LoopLetter>,
}

impl LoopWord {
    pub fn new(letters: Vec<LoopLetter>) -> Self {
        Self { letters }
    }

    /// Builds a word from `(index, sign)` pairs.
    pub fn from_pairs(pairs: &[(Letter, i8)]) -> Result<Self, WordError> {
        pairs
            .iter()
            .map(|&(i, s)| LoopLetter::new(i, s))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }

    pub fn letters(&self) -> &[LoopLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self::new(
            self.letters
                .iter()
                .rev()
                .map(|l| LoopLetter {
                    index: l.index,
                    sign: -l.sign,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &LoopWord) -> LoopWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        LoopWord::new(letters)
    }

    /// Reduced loop expression, obtained by pairing the letters of the
    /// reduced Coxeter image.
    pub fn reduced(&self) -> LoopWord {
        coxeter_to_loop(&loop_to_coxeter(self)).expect("image of a loop has even length")
    }

    /// Length of the reduced expression.
    pub fn reduced_len(&self) -> usize {
        loop_to_coxeter(self).len() / 2
    }

    /// A representative of minimal length in the conjugacy class of the loop
    /// (conjugating only by loops), together with the conjugator `t` such that
    /// `self = t * rep * t^-1`. Ties are broken by the lexicographically
    /// smallest Coxeter image among even rotations.
    pub fn minimal(&self) -> (LoopWord, LoopWord) {
        let (rep, conj) = minimal_even_form(&loop_to_coxeter(self));
        (
            coxeter_to_loop(&rep).expect("even"),
            coxeter_to_loop(&conj).expect("even"),
        )
    }
}

impl fmt::Display for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if l.sign > 0 {
                write!(f, "g{}", l.index)?;
            } else {
                write!(f, "g{}^-1", l.index)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LoopWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_word(s)? {
            ParsedWord::Loop(w) => Ok(w),
            ParsedWord::Coxeter(w) if w.is_empty() => Ok(LoopWord::default()),
            ParsedWord::Coxeter(_) => {
                let (column, token) = first_token(s);
                Err(WordError::BadToken { column, token })
            }
        }
    }
}

/// A word in the involutions `s1, s2, s3`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterWord {
    letters: Vec<Letter>,
}

impl CoxeterWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if let Some(&bad) = letters.iter().find(|l| !(1..=3).contains(*l)) {
            return Err(WordError::BadIndex(bad));
        }
        Ok(Self { letters })
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| (1..=3).contains(l)));
        Self { letters }
    }

    /// Uniformly random reduced word of length `len`.
    pub fn random_reduced<R: rand::Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        for _ in 0..len {
            let l = match letters.last() {
                None => rng.gen_range(1..=3),
                Some(&prev) => {
                    let step: Letter = rng.gen_range(1..=2);
                    (prev - 1 + step) % 3 + 1
                }
            };
            letters.push(l);
        }
        Self { letters }
    }

    /// Random reduced word of length `len >= 2` whose first and last letters
    /// differ.
    pub fn random_stable<R: rand::Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        assert!(len >= 2, "an analytically stable word has length at least 2");
        loop {
            let w = Self::random_reduced(rng, len);
            if w.is_analytically_stable() {
                return w;
            }
        }
    }

    /// The Coxeter element `s1 s2 s3`.
    pub fn coxeter_element() -> Self {
        Self::from_vec_unchecked(vec![1, 2, 3])
    }

    /// Image of the eight-loop `g1 g2^-1`, i.e. `s1 s2 s3 s2`.
    pub fn eight_loop() -> Self {
        Self::from_vec_unchecked(vec![1, 2, 3, 2])
    }

    /// Image of the Pochhammer loop `g1 g2^-1 g1^-1 g2`, i.e. `(s1 s2 s3)^2`.
    pub fn pochhammer() -> Self {
        Self::from_vec_unchecked(vec![1, 2, 3, 1, 2, 3])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.letters.len() % 2 == 0
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// No two neighbouring letters are equal.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1])
    }

    /// Reduced and the first and last letters differ, i.e. the word is
    /// analytically stable as a birational map of the compactified surface.
    pub fn is_analytically_stable(&self) -> bool {
        self.is_reduced() && self.len() >= 2 && self.first() != self.last()
    }

    pub fn free_reduce(&self) -> CoxeterWord {
        free_reduce(self)
    }

    pub fn invert(&self) -> CoxeterWord {
        invert(self)
    }

    /// Concatenation followed by free reduction.
    pub fn compose(&self, other: &CoxeterWord) -> CoxeterWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        free_reduce(&CoxeterWord { letters })
    }

    /// `self^m`, freely reduced.
    pub fn pow(&self, m: usize) -> CoxeterWord {
        let mut letters = Vec::with_capacity(self.len() * m);
        for _ in 0..m {
            letters.extend_from_slice(&self.letters);
        }
        free_reduce(&CoxeterWord { letters })
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> CoxeterWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.len());
        }
        CoxeterWord { letters }
    }
}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "s{l}")?;
        }
        Ok(())
    }
}

impl FromStr for CoxeterWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_word(s)? {
            ParsedWord::Coxeter(w) => Ok(w),
            ParsedWord::Loop(w) if w.is_empty() => Ok(CoxeterWord::default()),
            ParsedWord::Loop(_) => {
                let (column, token) = first_token(s);
                Err(WordError::BadToken { column, token })
            }
        }
    }
}

/// Conjugacy class tags for elements of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum WordClass {
    Trivial,
    /// Conjugate to `(si sj)^m`. A conjugate of a single generator is an
    /// involution and is reported here with `m = 0`.
    Elementary { m: usize },
    /// Conjugate to `si sj sk sj`.
    EightLoop,
    /// Conjugate to `(si sj sk)^2`.
    CoxeterSquare,
    GeneralNonelementary,
}

impl WordClass {
    pub fn name(&self) -> &'static str {
        match self {
            WordClass::Trivial => "trivial",
            WordClass::Elementary { .. } => "elementary",
            WordClass::EightLoop => "eight_loop",
            WordClass::CoxeterSquare => "coxeter_square",
            WordClass::GeneralNonelementary => "general_nonelementary",
        }
    }

    pub fn is_elementary(&self) -> bool {
        matches!(self, WordClass::Trivial | WordClass::Elementary { .. })
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordClass::Elementary { m } => write!(f, "elementary (m={m})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Cancels equal neighbouring letters until none remain.
pub fn free_reduce(w: &CoxeterWord) -> CoxeterWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    CoxeterWord { letters: out }
}

/// Generators are involutions, so the inverse is the reversed word.
pub fn invert(w: &CoxeterWord) -> CoxeterWord {
    CoxeterWord {
        letters: w.letters.iter().rev().copied().collect(),
    }
}

/// Translates a loop into `G` and freely reduces the result.
pub fn loop_to_coxeter(w: &LoopWord) -> CoxeterWord {
    let letters = w.letters.iter().flat_map(|l| l.to_coxeter()).collect();
    free_reduce(&CoxeterWord { letters })
}

/// Inverse of [`loop_to_coxeter`] on reduced even words.
pub fn coxeter_to_loop(w: &CoxeterWord) -> Result<LoopWord, WordError> {
    if !w.is_even() {
        return Err(WordError::OddLength(w.len()));
    }
    let w = free_reduce(w);
    let letters = w
        .letters
        .chunks(2)
        .map(|pair| {
            let (a, b) = (pair[0], pair[1]);
            if b == a % 3 + 1 {
                LoopLetter { index: a, sign: 1 }
            } else {
                LoopLetter { index: b, sign: -1 }
            }
        })
        .collect();
    Ok(LoopWord::new(letters))
}

/// Strips equal end letters from a reduced word.
///
/// Returns `(w', t)` with `w = t w' t^-1`, `w'` reduced and either of length
/// at most one or with distinct end letters.
pub fn cyclic_reduce(w: &CoxeterWord) -> (CoxeterWord, CoxeterWord) {
    let w = free_reduce(w);
    let s = &w.letters;
    let mut lo = 0;
    let mut hi = s.len();
    while hi - lo >= 2 && s[lo] == s[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    (
        CoxeterWord::from_vec_unchecked(s[lo..hi].to_vec()),
        CoxeterWord::from_vec_unchecked(s[..lo].to_vec()),
    )
}

/// Canonical representative of the conjugacy class in `G`: the cyclically
/// reduced word, rotated to its lexicographically smallest rotation.
/// Returns `(rep, t)` with `w = t rep t^-1` after free reduction.
pub fn canonical_form(w: &CoxeterWord) -> (CoxeterWord, CoxeterWord) {
    let (core, conj) = cyclic_reduce(w);
    if core.len() <= 1 {
        return (core, conj);
    }
    let k = (0..core.len())
        .min_by(|&a, &b| core.rotate(a).letters.cmp(&core.rotate(b).letters))
        .unwrap_or(0);
    // core = u v with |u| = k; v u = u^-1 (u v) u, hence core = u (v u) u^-1.
    let u = CoxeterWord::from_vec_unchecked(core.letters[..k].to_vec());
    (core.rotate(k), conj.compose(&u))
}

/// Minimal form of an even word reachable by conjugating with even words
/// only, i.e. minimality of the corresponding loop. Ties are broken by the
/// smallest even rotation.
fn minimal_even_form(w: &CoxeterWord) -> (CoxeterWord, CoxeterWord) {
    debug_assert!(w.is_even());
    let mut cur = free_reduce(w).letters;
    let mut conj: Vec<Letter> = Vec::new();
    while cur.len() >= 2 && cur[0] == cur[cur.len() - 1] {
        let n = cur.len();
        // n is even and the word is reduced, so n >= 4 here.
        if cur[1] == cur[n - 2] {
            conj.extend_from_slice(&cur[..2]);
            cur = cur[2..n - 2].to_vec();
        } else {
            // w = (a c) [c w_2 .. w_{n-2}] (c a) with c = w_{n-1}.
            let c = cur[n - 2];
            conj.extend_from_slice(&[cur[0], c]);
            let mut next = Vec::with_capacity(n - 2);
            next.push(c);
            next.extend_from_slice(&cur[1..n - 2]);
            cur = next;
        }
    }
    let core = CoxeterWord::from_vec_unchecked(cur);
    let conj = free_reduce(&CoxeterWord::from_vec_unchecked(conj));
    if core.is_empty() {
        return (core, conj);
    }
    let k = (0..core.len())
        .step_by(2)
        .min_by(|&a, &b| core.rotate(a).letters.cmp(&core.rotate(b).letters))
        .unwrap_or(0);
    let u = CoxeterWord::from_vec_unchecked(core.letters[..k].to_vec());
    (core.rotate(k), conj.compose(&u))
}

/// Classifies the conjugacy class of `w`.
pub fn classify(w: &CoxeterWord) -> WordClass {
    let (c, _) = cyclic_reduce(w);
    let s = c.letters();
    match s.len() {
        0 => return WordClass::Trivial,
        1 => return WordClass::Elementary { m: 0 },
        _ => {}
    }
    let mut distinct = [false; 4];
    for &l in s {
        distinct[l as usize] = true;
    }
    let n_distinct = distinct.iter().filter(|&&b| b).count();
    if n_distinct == 2 {
        // A cyclically reduced word in two letters alternates and has even length.
        return WordClass::Elementary { m: s.len() / 2 };
    }
    if s.len() == 4 {
        // Three letters in a cyclic word of length four: the repeated letter
        // sits at opposite positions, which is a rotation of si sj sk sj.
        return WordClass::EightLoop;
    }
    if s.len() == 6 && (0..3).all(|t| s[t] == s[t + 3]) {
        return WordClass::CoxeterSquare;
    }
    WordClass::GeneralNonelementary
}

/// Result of parsing a word with automatic alphabet detection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedWord {
    Loop(LoopWord),
    Coxeter(CoxeterWord),
}

impl ParsedWord {
    /// Freely reduced image in `G`.
    pub fn to_coxeter(&self) -> CoxeterWord {
        match self {
            ParsedWord::Loop(w) => loop_to_coxeter(w),
            ParsedWord::Coxeter(w) => free_reduce(w),
        }
    }
}

fn first_token(s: &str) -> (usize, String) {
    s.char_indices()
        .find(|(_, c)| !c.is_whitespace())
        .map(|(i, _)| {
            let tok: String = s[i..].chars().take_while(|c| !c.is_whitespace()).collect();
            (s[..i].chars().count() + 1, tok)
        })
        .unwrap_or((1, String::new()))
}

enum Token {
    Loop(LoopLetter),
    Reflection(Letter),
}

fn parse_token(tok: &str) -> Option<Token> {
    let mut chars = tok.chars();
    let head = chars.next()?;
    let rest = chars.as_str();
    let (digits, exponent) = match rest.split_once('^') {
        Some((d, e)) => (d, Some(e)),
        None => (rest, None),
    };
    let index: Letter = match digits {
        "1" => 1,
        "2" => 2,
        "3" => 3,
        _ => return None,
    };
    match (head, exponent) {
        ('g', None) | ('g', Some("1")) | ('g', Some("+1")) => {
            Some(Token::Loop(LoopLetter { index, sign: 1 }))
        }
        ('g', Some("-1")) => Some(Token::Loop(LoopLetter { index, sign: -1 })),
        ('s', None) => Some(Token::Reflection(index)),
        _ => None,
    }
}

/// Parses whitespace-separated tokens `g1 g2^-1 g3` or `s1 s2 s3`.
///
/// The alphabet is detected from the first token; mixing alphabets is an
/// error. Columns in errors are 1-based character positions.
pub fn parse_word(text: &str) -> Result<ParsedWord, WordError> {
    let mut loops = Vec::new();
    let mut refl = Vec::new();
    let mut alphabet: Option<bool> = None; // Some(true) = loops
    let mut column = 0usize;
    let mut start: Option<(usize, usize)> = None; // (byte, column)
    let mut tokens = Vec::new();
    for (i, c) in text.char_indices() {
        column += 1;
        if c.is_whitespace() || c == ',' {
            if let Some((b, col)) = start.take() {
                tokens.push((col, &text[b..i]));
            }
        } else if start.is_none() {
            start = Some((i, column));
        }
    }
    if let Some((b, col)) = start {
        tokens.push((col, &text[b..]));
    }
    for (col, tok) in tokens {
        let parsed = parse_token(tok).ok_or_else(|| WordError::BadToken {
            column: col,
            token: tok.to_string(),
        })?;
        let is_loop = matches!(parsed, Token::Loop(_));
        match alphabet {
            None => alphabet = Some(is_loop),
            Some(a) if a != is_loop => {
                return Err(WordError::MixedAlphabet {
                    column: col,
                    token: tok.to_string(),
                })
            }
            _ => {}
        }
        match parsed {
            Token::Loop(l) => loops.push(l),
            Token::Reflection(r) => refl.push(r),
        }
    }
    Ok(match alphabet {
        Some(false) => ParsedWord::Coxeter(CoxeterWord::from_vec_unchecked(refl)),
        _ => ParsedWord::Loop(LoopWord::new(loops)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &[Letter]) -> CoxeterWord {
        CoxeterWord::new(s.to_vec()).unwrap()
    }

    fn lw(s: &str) -> LoopWord {
        s.parse().unwrap()
    }

    #[test]
    fn translation_of_basic_loops() {
        assert_eq!(loop_to_coxeter(&lw("g1")), cw(&[1, 2]));
        assert_eq!(loop_to_coxeter(&lw("g2")), cw(&[2, 3]));
        assert_eq!(loop_to_coxeter(&lw("g3")), cw(&[3, 1]));
        assert_eq!(loop_to_coxeter(&lw("g1^-1")), cw(&[2, 1]));
        assert_eq!(loop_to_coxeter(&lw("g3^-1")), cw(&[1, 3]));
    }

    #[test]
    fn relation_is_in_the_kernel() {
        assert!(loop_to_coxeter(&lw("g1 g2 g3")).is_empty());
        assert!(loop_to_coxeter(&lw("g2 g3 g1")).is_empty());
        assert!(loop_to_coxeter(&lw("g3 g1 g2")).is_empty());
    }

    #[test]
    fn eight_loop_translation() {
        assert_eq!(loop_to_coxeter(&lw("g1 g2^-1")), cw(&[1, 2, 3, 2]));
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce(&cw(&[1, 1])).is_empty());
        assert_eq!(free_reduce(&cw(&[1, 2, 2, 3])), cw(&[1, 3]));
        assert_eq!(free_reduce(&cw(&[1, 2, 3, 2])), cw(&[1, 2, 3, 2]));
        assert!(free_reduce(&cw(&[1, 2, 3, 3, 2, 1])).is_empty());
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(cyclic_reduce(&cw(&[2, 1, 3, 2])), (cw(&[1, 3]), cw(&[2])));
        assert_eq!(
            cyclic_reduce(&cw(&[1, 2, 3, 2])),
            (cw(&[1, 2, 3, 2]), CoxeterWord::default())
        );
        assert_eq!(cyclic_reduce(&cw(&[1, 2, 1])), (cw(&[2]), cw(&[1])));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&cw(&[1, 2, 3])), cw(&[3, 2, 1]));
        assert!(invert(&CoxeterWord::default()).is_empty());
        assert_eq!(invert(&cw(&[1, 2, 3, 2])), cw(&[2, 3, 2, 1]));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&cw(&[1, 2, 1, 2, 1, 2])), WordClass::Elementary { m: 3 });
        assert_eq!(classify(&cw(&[1, 2, 3, 2])), WordClass::EightLoop);
        assert_eq!(classify(&cw(&[2, 1, 2, 3])), WordClass::EightLoop);
        assert_eq!(classify(&cw(&[1, 2, 3, 1, 2, 3])), WordClass::CoxeterSquare);
        assert_eq!(classify(&cw(&[1, 2, 3])), WordClass::GeneralNonelementary);
        assert_eq!(classify(&cw(&[])), WordClass::Trivial);
        assert_eq!(classify(&cw(&[1, 2, 1])), WordClass::Elementary { m: 0 });
        // conjugated eight-loop
        assert_eq!(classify(&cw(&[3, 1, 2, 3, 2, 3])), WordClass::EightLoop);
    }

    #[test]
    fn elementary_powers() {
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                if i == j {
                    continue;
                }
                for m in 1..=10 {
                    assert_eq!(
                        classify(&cw(&[i, j]).pow(m)),
                        WordClass::Elementary { m }
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_form_conjugates_back() {
        let w = cw(&[3, 2, 3, 1, 2, 3, 1, 3]);
        let (rep, t) = canonical_form(&w);
        assert!(rep.is_analytically_stable());
        assert_eq!(t.compose(&rep).compose(&t.invert()), w);
        // smallest rotation
        for k in 0..rep.len() {
            assert!(rep <= rep.rotate(k));
        }
    }

    #[test]
    fn pochhammer_reduces_to_length_three_loop() {
        let w = lw("g1 g2^-1 g1^-1 g2");
        assert_eq!(loop_to_coxeter(&w), CoxeterWord::pochhammer());
        assert_eq!(w.reduced_len(), 3);
        assert_eq!(w.reduced().to_string(), "g1 g3 g2");
    }

    #[test]
    fn minimal_loop_is_stable_and_conjugate() {
        let w = lw("g2 g1 g2^-1 g2^-1");
        let (rep, t) = w.minimal();
        let img = loop_to_coxeter(&rep);
        assert!(img.is_analytically_stable());
        let back = t.concat(&rep).concat(&t.inverse());
        assert_eq!(loop_to_coxeter(&back), loop_to_coxeter(&w));
    }

    #[test]
    fn parser_reports_columns() {
        assert_eq!(
            parse_word("g1  gx"),
            Err(WordError::BadToken {
                column: 5,
                token: "gx".into()
            })
        );
        assert!(matches!(
            parse_word("g1 s2"),
            Err(WordError::MixedAlphabet { column: 4, .. })
        ));
        assert!(parse_word("g4").is_err());
        assert!(parse_word("s1^-1").is_err());
        assert_eq!(
            parse_word("s1 s2 s3").unwrap(),
            ParsedWord::Coxeter(cw(&[1, 2, 3]))
        );
        assert_eq!(parse_word("  ").unwrap(), ParsedWord::Loop(LoopWord::default()));
    }

    #[test]
    fn display_round_trips() {
        let w = lw("g1 g2^-1 g3");
        assert_eq!(w.to_string(), "g1 g2^-1 g3");
        assert_eq!(cw(&[1, 2, 3]).to_string(), "s1 s2 s3");
    }
}

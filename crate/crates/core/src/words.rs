//! Bracketed words: the alternating basis of the free Nijenhuis algebra.
//!
//! A [`Word`] is a finite sequence of [`Factor`]s, each either a letter or a
//! bracketed subword. The empty sequence is the identity word `1`. Basis words
//! are *alternating*: no two bracket factors are adjacent at any nesting level.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// An element of the alphabet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    /// Creates a letter, checking identifier syntax (leading alphabetic
    /// character, then alphanumerics or `_`).
    pub fn new(name: &str) -> Result<Self, WordError> {
        if is_identifier(name) {
            Ok(Letter(Arc::from(name)))
        } else {
            Err(WordError::InvalidLetter(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One element of a diamond factorization: a letter or `⌊w⌋`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    Letter(Letter),
    Bracket(Word),
}

impl Factor {
    pub fn is_bracket(&self) -> bool {
        matches!(self, Factor::Bracket(_))
    }

    pub fn degree(&self) -> usize {
        match self {
            Factor::Letter(_) => 1,
            Factor::Bracket(inner) => inner.degree + 1,
        }
    }

    /// The width-one word consisting of this factor alone.
    pub fn to_word(&self) -> Word {
        Word::from_factors_unchecked(vec![self.clone()])
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Factor::Letter(a), Factor::Letter(b)) => a.name().cmp(b.name()),
            (Factor::Letter(_), Factor::Bracket(_)) => Ordering::Less,
            (Factor::Bracket(_), Factor::Letter(_)) => Ordering::Greater,
            // Contents compare lexicographically, shorter prefix first.
            (Factor::Bracket(a), Factor::Bracket(b)) => a.factors.cmp(&b.factors),
        }
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Letter(l) => write!(f, "{l}"),
            Factor::Bracket(w) => write!(f, "[{w:?}]"),
        }
    }
}

/// A basis word. Always alternating; the empty word is the unit `1`.
///
/// Ordering is the canonical term order: degree, then width, then factors
/// lexicographically (letters by name, every letter before every bracket,
/// brackets by lexicographic comparison of their contents).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    factors: Vec<Factor>,
    degree: usize,
}

impl Word {
    /// The identity word `1`.
    pub fn unit() -> Self {
        Word { factors: Vec::new(), degree: 0 }
    }

    pub fn letter(letter: Letter) -> Self {
        Word { factors: vec![Factor::Letter(letter)], degree: 1 }
    }

    /// `⌊content⌋`.
    pub fn bracket(content: Word) -> Self {
        let degree = content.degree + 1;
        Word { factors: vec![Factor::Bracket(content)], degree }
    }

    /// Builds a word from factors whose bracket contents are already valid.
    /// Only the top level is checked for adjacent brackets.
    pub fn from_factors(factors: Vec<Factor>) -> Result<Self, WordError> {
        if let Some(index) = first_adjacent_brackets(&factors) {
            return Err(WordError::AdjacentBrackets { path: Vec::new(), index });
        }
        Ok(Self::from_factors_unchecked(factors))
    }

    pub(crate) fn from_factors_unchecked(factors: Vec<Factor>) -> Self {
        debug_assert!(first_adjacent_brackets(&factors).is_none());
        let degree = factors.iter().map(Factor::degree).sum();
        Word { factors, degree }
    }

    /// Concatenates factor sequences. Caller guarantees the seam is not two
    /// brackets.
    pub(crate) fn concat(parts: &[&[Factor]]) -> Self {
        let factors: Vec<Factor> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        Self::from_factors_unchecked(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// `deg_X + deg_N`: letters plus brackets at every nesting level.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn width(&self) -> usize {
        self.factors.len()
    }

    /// The content `w̄` if this word is a single bracket `⌊w̄⌋`.
    pub fn as_bracket(&self) -> Option<&Word> {
        match self.factors.as_slice() {
            [Factor::Bracket(inner)] => Some(inner),
            _ => None,
        }
    }

    pub fn measures(&self) -> Measures {
        measures(self)
    }

    /// Every letter occurring in the word, at any depth.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        collect_letters(self, &mut out);
        out
    }

    /// The word as an unchecked raw sequence, e.g. for revalidation.
    pub fn to_raw(&self) -> Vec<RawFactor> {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Letter(l) => RawFactor::Letter(l.clone()),
                Factor::Bracket(w) => RawFactor::Bracket(w.to_raw()),
            })
            .collect()
    }
}

fn collect_letters(w: &Word, out: &mut Vec<Letter>) {
    for f in &w.factors {
        match f {
            Factor::Letter(l) => out.push(l.clone()),
            Factor::Bracket(inner) => collect_letters(inner, out),
        }
    }
}

fn first_adjacent_brackets(factors: &[Factor]) -> Option<usize> {
    factors.windows(2).position(|p| p[0].is_bracket() && p[1].is_bracket())
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.factors.len().cmp(&other.factors.len()))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total canonical order on basis words.
pub fn compare(a: &Word, b: &Word) -> Ordering {
    a.cmp(b)
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text: factors separated by spaces, brackets as `[..]`, unit as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match factor {
                Factor::Letter(l) => write!(f, "{l}")?,
                Factor::Bracket(w) => write!(f, "[{w}]")?,
            }
        }
        Ok(())
    }
}

/// A candidate factor sequence that has not been checked for alternation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawFactor {
    Letter(Letter),
    Bracket(Vec<RawFactor>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    /// Two consecutive bracket factors. `path` lists the indices of the
    /// bracket factors descended into from the top level.
    #[error("adjacent brackets at index {index} (nesting path {path:?})")]
    AdjacentBrackets { path: Vec<usize>, index: usize },
    #[error("the unit word has no diamond factorization")]
    EmptyWord,
    #[error("invalid letter name {0:?}")]
    InvalidLetter(String),
}

/// Checks the alternating condition at every nesting level.
pub fn validate_basis(factors: &[RawFactor]) -> Result<Word, WordError> {
    fn go(factors: &[RawFactor], path: &mut Vec<usize>) -> Result<Word, WordError> {
        let adjacent = factors
            .windows(2)
            .position(|p| matches!(p, [RawFactor::Bracket(_), RawFactor::Bracket(_)]));
        if let Some(index) = adjacent {
            return Err(WordError::AdjacentBrackets { path: path.clone(), index });
        }
        let mut out = Vec::with_capacity(factors.len());
        for (i, f) in factors.iter().enumerate() {
            out.push(match f {
                RawFactor::Letter(l) => Factor::Letter(l.clone()),
                RawFactor::Bracket(inner) => {
                    path.push(i);
                    let w = go(inner, path)?;
                    path.pop();
                    Factor::Bracket(w)
                }
            });
        }
        Ok(Word::from_factors_unchecked(out))
    }
    go(factors, &mut Vec::new())
}

/// Size measures of a basis word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Measures {
    pub degree: usize,
    pub degree_letters: usize,
    pub degree_brackets: usize,
    pub depth: usize,
    pub breadth: usize,
    pub width: usize,
}

pub fn measures(w: &Word) -> Measures {
    let mut letters = 0;
    let mut brackets = 0;
    let mut depth = 0;
    for f in &w.factors {
        match f {
            Factor::Letter(_) => letters += 1,
            Factor::Bracket(inner) => {
                let m = measures(inner);
                letters += m.degree_letters;
                brackets += m.degree_brackets + 1;
                depth = depth.max(m.depth + 1);
            }
        }
    }
    // A block is a maximal letter run or a single bracket.
    let mut breadth = 0;
    let mut in_run = false;
    for f in &w.factors {
        match f {
            Factor::Letter(_) => {
                if !in_run {
                    breadth += 1;
                    in_run = true;
                }
            }
            Factor::Bracket(_) => {
                breadth += 1;
                in_run = false;
            }
        }
    }
    Measures {
        degree: letters + brackets,
        degree_letters: letters,
        degree_brackets: brackets,
        depth,
        breadth,
        width: w.factors.len(),
    }
}

/// The unique alternating sequence `w1, …, wm` with `w = w1 ⋄ … ⋄ wm`.
pub fn diamond_factorize(w: &Word) -> Result<Vec<Factor>, WordError> {
    if w.is_unit() {
        return Err(WordError::EmptyWord);
    }
    Ok(w.factors.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(name: &str) -> Letter {
        Letter::new(name).unwrap()
    }

    fn rl(name: &str) -> RawFactor {
        RawFactor::Letter(l(name))
    }

    fn lw(name: &str) -> Word {
        Word::letter(l(name))
    }

    fn word(fs: Vec<Factor>) -> Word {
        Word::from_factors(fs).unwrap()
    }

    fn fl(name: &str) -> Factor {
        Factor::Letter(l(name))
    }

    fn fb(w: Word) -> Factor {
        Factor::Bracket(w)
    }

    #[test]
    fn letter_syntax() {
        assert!(Letter::new("x1").is_ok());
        assert!(Letter::new("abc_d").is_ok());
        assert!(Letter::new("1x").is_err());
        assert!(Letter::new("").is_err());
        assert!(Letter::new("x-y").is_err());
    }

    #[test]
    fn validate_accepts_alternating() {
        let w = validate_basis(&[rl("x"), RawFactor::Bracket(vec![rl("y")]), rl("z")]).unwrap();
        assert_eq!(w.width(), 3);
        assert_eq!(w.to_string(), "x [y] z");
    }

    #[test]
    fn validate_rejects_adjacent_top_level() {
        let err = validate_basis(&[
            RawFactor::Bracket(vec![rl("x")]),
            RawFactor::Bracket(vec![rl("y")]),
        ])
        .unwrap_err();
        assert_eq!(err, WordError::AdjacentBrackets { path: vec![], index: 0 });
    }

    #[test]
    fn validate_rejects_adjacent_nested() {
        let unit_bracket = RawFactor::Bracket(vec![]);
        let err = validate_basis(&[
            rl("x"),
            RawFactor::Bracket(vec![unit_bracket.clone(), unit_bracket]),
        ])
        .unwrap_err();
        assert_eq!(err, WordError::AdjacentBrackets { path: vec![1], index: 0 });
    }

    #[test]
    fn from_factors_checks_top_level() {
        let b = fb(lw("x"));
        assert!(Word::from_factors(vec![b.clone(), b]).is_err());
    }

    #[test]
    fn degrees_from_the_grading_examples() {
        let x = lw("x");
        assert_eq!(Word::bracket(x.clone()).degree(), 2);
        let xbx = word(vec![fl("x"), fb(x)]);
        assert_eq!(xbx.degree(), 3);
        assert_eq!(Word::bracket(Word::unit()).degree(), 1);
    }

    #[test]
    fn breadth_and_width_differ() {
        let w = word(vec![fl("x1"), fl("x2"), fl("x3")]);
        let m = w.measures();
        assert_eq!(m.breadth, 1);
        assert_eq!(m.width, 3);
        assert_eq!(m.depth, 0);
    }

    #[test]
    fn unit_measures_are_zero() {
        let m = Word::unit().measures();
        assert_eq!(
            m,
            Measures {
                degree: 0,
                degree_letters: 0,
                degree_brackets: 0,
                depth: 0,
                breadth: 0,
                width: 0
            }
        );
    }

    #[test]
    fn nested_measures() {
        // x [y [1]] z w
        let inner = word(vec![fl("y"), fb(Word::unit())]);
        let w = word(vec![fl("x"), fb(inner), fl("z"), fl("w")]);
        let m = w.measures();
        assert_eq!(m.degree_letters, 4);
        assert_eq!(m.degree_brackets, 2);
        assert_eq!(m.degree, 6);
        assert_eq!(m.depth, 2);
        assert_eq!(m.breadth, 3);
        assert_eq!(m.width, 4);
    }

    #[test]
    fn factorize_examples() {
        let w = word(vec![fl("x"), fb(lw("y")), fl("z")]);
        assert_eq!(diamond_factorize(&w).unwrap(), vec![fl("x"), fb(lw("y")), fl("z")]);

        let xyz = word(vec![fl("x"), fl("y"), fl("z")]);
        assert_eq!(diamond_factorize(&xyz).unwrap().len(), 3);

        let single = Word::bracket(word(vec![fl("x"), fb(Word::unit())]));
        assert_eq!(diamond_factorize(&single).unwrap().len(), 1);

        assert_eq!(diamond_factorize(&Word::unit()), Err(WordError::EmptyWord));
    }

    #[test]
    fn order_examples() {
        let x = lw("x");
        let b1 = Word::bracket(Word::unit());
        assert_eq!(compare(&x, &b1), Ordering::Less);
        let xx = word(vec![fl("x"), fl("x")]);
        assert_eq!(compare(&x, &xx), Ordering::Less);
        assert_eq!(compare(&xx, &xx), Ordering::Equal);
        assert_eq!(compare(&lw("x"), &lw("y")), Ordering::Less);
    }
}

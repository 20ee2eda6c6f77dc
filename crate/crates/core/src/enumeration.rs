//! Exhaustive generation of basis words by degree over a finite alphabet.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::words::{Factor, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("letter {0} appears more than once in the alphabet")]
    DuplicateLetter(Letter),
}

/// All basis words of degree `0..=max_degree`, bucketed by degree, each
/// bucket in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    alphabet: Vec<Letter>,
    by_degree: Vec<Vec<Word>>,
}

impl Basis {
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// Words of exactly degree `n`; empty beyond the generated range.
    pub fn degree(&self, n: usize) -> &[Word] {
        self.by_degree.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Words of degree at most `n`, in canonical order.
    pub fn words_up_to(&self, n: usize) -> impl Iterator<Item = &Word> + Clone {
        self.by_degree.iter().take(n + 1).flatten()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_degree.iter().map(Vec::len).collect()
    }
}

fn check_alphabet(alphabet: &[Letter]) -> Result<(), EnumerationError> {
    if alphabet.is_empty() {
        return Err(EnumerationError::EmptyAlphabet);
    }
    let mut seen = BTreeSet::new();
    for l in alphabet {
        if !seen.insert(l) {
            return Err(EnumerationError::DuplicateLetter(l.clone()));
        }
    }
    Ok(())
}

/// Generates the basis degree by degree.
///
/// A word of degree `n` ends either in a letter (preceded by any word of
/// degree `n-1`) or in a bracket `⌊c⌋` of degree `d` (preceded by the unit or
/// by a word of degree `n-d` that ends in a letter). Lower degrees feed
/// higher ones.
pub fn enumerate_basis(alphabet: &[Letter], max_degree: usize) -> Result<Basis, EnumerationError> {
    check_alphabet(alphabet)?;
    let mut letters: Vec<Letter> = alphabet.to_vec();
    letters.sort();

    let mut by_degree: Vec<Vec<Word>> = vec![vec![Word::unit()]];
    // Words of each degree that end in a letter.
    let mut ends_in_letter: Vec<Vec<Word>> = vec![Vec::new()];

    for n in 1..=max_degree {
        let mut letter_ending = Vec::new();
        for prefix in &by_degree[n - 1] {
            for l in &letters {
                letter_ending.push(Word::concat(&[prefix.factors(), &[Factor::Letter(l.clone())]]));
            }
        }
        let mut bracket_ending = Vec::new();
        for d in 1..=n {
            let contents = &by_degree[d - 1];
            let prefixes: Vec<&Word> = if d == n {
                vec![&by_degree[0][0]]
            } else {
                ends_in_letter[n - d].iter().collect()
            };
            for prefix in &prefixes {
                for c in contents {
                    let b = Factor::Bracket(c.clone());
                    bracket_ending.push(Word::concat(&[prefix.factors(), &[b]]));
                }
            }
        }
        let mut all = letter_ending.clone();
        all.extend(bracket_ending);
        all.sort();
        debug_assert!(all.windows(2).all(|p| p[0] != p[1]));
        letter_ending.sort();
        ends_in_letter.push(letter_ending);
        by_degree.push(all);
    }
    Ok(Basis { alphabet: letters, by_degree })
}

/// Number of basis words in each degree `0..=max_degree`.
pub fn dimension_series(alphabet: &[Letter], max_degree: usize) -> Result<Vec<usize>, EnumerationError> {
    Ok(enumerate_basis(alphabet, max_degree)?.counts())
}

/// Parses a comma-separated alphabet such as `x,y`.
pub fn parse_alphabet(list: &str) -> Result<Vec<Letter>, crate::words::WordError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Letter::new)
        .collect()
}

//! Reference implementations used only by tests. Nothing here calls into the
//! enumeration or product code it is compared against.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nijenhuis::words::RawFactor;
use nijenhuis::{validate_basis, Element, Letter, Scalar, Word};
use num_traits::{One, Zero};

/// A bracketed word with no alternation constraint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tree {
    L(String),
    B(Vec<Tree>),
}

pub fn tree_degree(seq: &[Tree]) -> usize {
    seq.iter()
        .map(|t| match t {
            Tree::L(_) => 1,
            Tree::B(inner) => 1 + tree_degree(inner),
        })
        .sum()
}

fn all_sequences(alphabet: &[String], n: usize, memo: &mut BTreeMap<usize, Vec<Vec<Tree>>>) -> Vec<Vec<Tree>> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        // First factor of degree d, rest of degree n - d.
        for d in 1..=n {
            let mut firsts = Vec::new();
            if d == 1 {
                firsts.extend(alphabet.iter().map(|a| Tree::L(a.clone())));
            }
            for inner in all_sequences(alphabet, d - 1, memo) {
                firsts.push(Tree::B(inner));
            }
            for rest in all_sequences(alphabet, n - d, memo) {
                for f in &firsts {
                    let mut s = vec![f.clone()];
                    s.extend(rest.iter().cloned());
                    out.push(s);
                }
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

/// Every bracketed word of degree exactly `n`, alternating or not.
pub fn all_bracketed_words(alphabet: &[&str], n: usize) -> Vec<Vec<Tree>> {
    let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    all_sequences(&alphabet, n, &mut BTreeMap::new())
}

pub fn is_alternating(seq: &[Tree]) -> bool {
    seq.windows(2).all(|p| !matches!(p, [Tree::B(_), Tree::B(_)]))
        && seq.iter().all(|t| match t {
            Tree::L(_) => true,
            Tree::B(inner) => is_alternating(inner),
        })
}

pub fn to_raw(seq: &[Tree]) -> Vec<RawFactor> {
    seq.iter()
        .map(|t| match t {
            Tree::L(s) => RawFactor::Letter(Letter::new(s).unwrap()),
            Tree::B(inner) => RawFactor::Bracket(to_raw(inner)),
        })
        .collect()
}

pub fn from_raw(raw: &[RawFactor]) -> Vec<Tree> {
    raw.iter()
        .map(|f| match f {
            RawFactor::Letter(l) => Tree::L(l.name().to_string()),
            RawFactor::Bracket(inner) => Tree::B(from_raw(inner)),
        })
        .collect()
}

pub fn tree_of(w: &Word) -> Vec<Tree> {
    from_raw(&w.to_raw())
}

/// Generate-then-filter: all bracketed words of degree `n`, keeping the
/// alternating ones.
pub fn oracle_basis(alphabet: &[&str], n: usize) -> BTreeSet<Vec<Tree>> {
    all_bracketed_words(alphabet, n).into_iter().filter(|s| is_alternating(s)).collect()
}

pub fn oracle_counts(alphabet: &[&str], max_degree: usize) -> Vec<usize> {
    (0..=max_degree).map(|n| oracle_basis(alphabet, n).len()).collect()
}

pub type Lin = BTreeMap<Vec<Tree>, Scalar>;

fn add_into(acc: &mut Lin, seq: Vec<Tree>, c: Scalar) {
    let e = acc.entry(seq).or_insert_with(Scalar::zero);
    *e += c;
}

fn prune(mut m: Lin) -> Lin {
    m.retain(|_, c| !c.is_zero());
    m
}

/// Normal form of an arbitrary bracketed word by rewriting adjacent bracket
/// pairs `[a][b] -> [[a] b] + [a [b]] - [[a b]]` until none remain.
pub fn rewrite(seq: &[Tree]) -> Lin {
    // Normalize bracket contents first, distributing over the results.
    let mut partial: Lin = BTreeMap::from([(Vec::new(), Scalar::one())]);
    for t in seq {
        let choices: Lin = match t {
            Tree::L(_) => BTreeMap::from([(vec![t.clone()], Scalar::one())]),
            Tree::B(inner) => rewrite(inner).into_iter().map(|(s, c)| (vec![Tree::B(s)], c)).collect(),
        };
        let mut next = BTreeMap::new();
        for (p, c) in &partial {
            for (s, d) in &choices {
                let mut joined = p.clone();
                joined.extend(s.iter().cloned());
                add_into(&mut next, joined, c * d);
            }
        }
        partial = prune(next);
    }
    let mut out = BTreeMap::new();
    for (s, c) in partial {
        let pos = s.windows(2).position(|p| matches!(p, [Tree::B(_), Tree::B(_)]));
        match pos {
            None => add_into(&mut out, s, c),
            Some(i) => {
                let (Tree::B(a), Tree::B(b)) = (&s[i], &s[i + 1]) else { unreachable!() };
                let splice = |mid: Tree| {
                    let mut v = s[..i].to_vec();
                    v.push(mid);
                    v.extend(s[i + 2..].iter().cloned());
                    v
                };
                let mut left = vec![Tree::B(a.clone())];
                left.extend(b.iter().cloned());
                let mut right = a.clone();
                right.push(Tree::B(b.clone()));
                let mut both = a.clone();
                both.extend(b.iter().cloned());
                let terms = [
                    (splice(Tree::B(left)), c.clone()),
                    (splice(Tree::B(right)), c.clone()),
                    (splice(Tree::B(vec![Tree::B(both)])), -c.clone()),
                ];
                for (t, k) in terms {
                    for (r, d) in rewrite(&t) {
                        add_into(&mut out, r, k.clone() * d);
                    }
                }
            }
        }
    }
    prune(out)
}

pub fn lin_to_element(m: &Lin) -> Element {
    m.iter()
        .map(|(s, c)| (validate_basis(&to_raw(s)).expect("rewrite output is alternating"), c.clone()))
        .collect()
}

/// Reference product of two basis words: concatenate, then rewrite.
pub fn oracle_product(a: &Word, b: &Word) -> Element {
    let mut s = tree_of(a);
    s.extend(tree_of(b));
    lin_to_element(&rewrite(&s))
}

pub fn letters(names: &[&str]) -> Vec<Letter> {
    names.iter().map(|n| Letter::new(n).unwrap()).collect()
}

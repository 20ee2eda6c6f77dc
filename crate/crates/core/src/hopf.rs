//! Grading by degree and the right antipode.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::diamond;
use crate::coalgebra::{coproduct_word, counit};
use crate::elements::{Element, Scalar};
use crate::enumeration::{enumerate_basis, EnumerationError};
use crate::verify::{LawReport, SearchSpace};
use crate::words::{Letter, Word};

/// An element split into its homogeneous parts, keyed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDecomposition {
    pub components: BTreeMap<usize, Element>,
}

impl GradedDecomposition {
    /// Sum of all components.
    pub fn total(&self) -> Element {
        let mut out = Element::zero();
        for c in self.components.values() {
            out.add_scaled(c, &Scalar::one());
        }
        out
    }
}

pub fn homogeneous_components(a: &Element) -> GradedDecomposition {
    let mut components: BTreeMap<usize, Element> = BTreeMap::new();
    for (w, c) in a {
        components.entry(w.degree()).or_default().add_term(w.clone(), c.clone());
    }
    GradedDecomposition { components }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AntipodeError {
    /// A term of `Δ(word)` lies outside `H⁰⊗Hⁿ ⊕ ⨁_{p,q>0} Hᵖ⊗H^q`, or the
    /// degree-zero part is not exactly `1⊗word`.
    #[error("coproduct of {word} is not graded: offending term {left} (x) {right}")]
    NonGradedCoproduct { word: String, left: String, right: String },
}

/// Right antipode `S` with `id ∗ S = u∘ε`, solved degree by degree.
///
/// For a word `w` of positive degree, `Δ(w) = 1⊗w + Σ cᵢ uᵢ⊗vᵢ` with
/// `deg uᵢ > 0`, so `S(w) = −Σ cᵢ uᵢ ⋄ S(vᵢ)` only involves lower degrees.
/// Values are cached per word for the lifetime of the solver.
#[derive(Debug, Default)]
pub struct AntipodeSolver {
    cache: HashMap<Word, Element>,
}

impl AntipodeSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn apply(&mut self, a: &Element) -> Result<Element, AntipodeError> {
        let mut out = Element::zero();
        for (w, c) in a {
            let s = self.apply_word(w)?;
            out.add_scaled(&s, c);
        }
        Ok(out)
    }

    pub fn apply_word(&mut self, w: &Word) -> Result<Element, AntipodeError> {
        if let Some(s) = self.cache.get(w) {
            return Ok(s.clone());
        }
        let s = if w.is_unit() {
            Element::one()
        } else {
            self.solve(w)?
        };
        self.cache.insert(w.clone(), s.clone());
        Ok(s)
    }

    fn solve(&mut self, w: &Word) -> Result<Element, AntipodeError> {
        let n = w.degree();
        let delta = coproduct_word(w);
        let offending = |l: &Word, r: &Word| AntipodeError::NonGradedCoproduct {
            word: w.to_string(),
            left: l.to_string(),
            right: r.to_string(),
        };
        let mut saw_primitive_part = false;
        let mut out = Element::zero();
        for ((l, r), c) in delta.iter() {
            if l.degree() == 0 {
                if r != w || !c.is_one() {
                    return Err(offending(l, r));
                }
                saw_primitive_part = true;
                continue;
            }
            if r.degree() == 0 || l.degree() + r.degree() != n {
                return Err(offending(l, r));
            }
            let sv = self.apply_word(r)?;
            let prod = diamond(&Element::from_word(l.clone()), &sv);
            out.add_scaled(&prod, &-c);
        }
        if !saw_primitive_part {
            return Err(offending(&Word::unit(), w));
        }
        Ok(out)
    }
}

pub fn antipode(a: &Element) -> Result<Element, AntipodeError> {
    AntipodeSolver::new().apply(a)
}

/// Connectedness: degree zero is spanned by `1` alone and every word of
/// positive degree lies in the kernel of the counit.
pub fn check_connected(alphabet: &[Letter], max_degree: usize) -> Result<LawReport, EnumerationError> {
    let basis = enumerate_basis(alphabet, max_degree)?;
    let space = SearchSpace::exhaustive(alphabet, max_degree, 1);
    let mut checked = 0u64;
    let degree_zero = basis.degree(0);
    checked += 1;
    if degree_zero != [Word::unit()] {
        let shown: Vec<String> = degree_zero.iter().map(Word::to_string).collect();
        return Ok(LawReport::failed(
            "connected",
            space,
            checked,
            vec!["degree 0".into()],
            format!("[{}]", shown.join(", ")),
            "[1]".into(),
        ));
    }
    for w in basis.words_up_to(max_degree).filter(|w| w.degree() > 0) {
        checked += 1;
        let e = counit(&Element::from_word(w.clone()));
        if !e.is_zero() {
            return Ok(LawReport::failed(
                "connected",
                space,
                checked,
                vec![w.to_string()],
                e.to_string(),
                "0".into(),
            ));
        }
    }
    Ok(LawReport::passed("connected", space, checked))
}

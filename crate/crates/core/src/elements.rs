//! Exact rational linear combinations of basis words and of pairs of words.

use std::collections::btree_map::{self, BTreeMap, Entry};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::diamond;
use crate::words::Word;

pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, Scalar>, key: K, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// An element of the free Nijenhuis algebra. Terms iterate in canonical
/// word order and never carry a zero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        Self::monomial(w, Scalar::one())
    }

    pub fn monomial(w: Word, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, coeff);
        e
    }

    /// `c · 1`.
    pub fn from_scalar(c: Scalar) -> Self {
        Self::monomial(Word::unit(), c)
    }

    pub fn add_term(&mut self, w: Word, coeff: Scalar) {
        accumulate(&mut self.terms, w, coeff);
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (w, k) in other.iter() {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies a map defined on basis words and extends it linearly.
    pub fn map_linear<F>(&self, mut f: F) -> Element
    where
        F: FnMut(&Word) -> Element,
    {
        let mut out = Element::zero();
        for (w, c) in self.iter() {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// The single word if this element is exactly `1 · w`.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    /// True if every term has the same degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.words().map(Word::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }
}

impl FromIterator<(Word, Scalar)> for Element {
    fn from_iter<I: IntoIterator<Item = (Word, Scalar)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}

impl<'a> IntoIterator for &'a Element {
    type Item = (&'a Word, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, Word, Scalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        combine(self, rhs, &Scalar::one(), &Scalar::one())
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        combine(self, rhs, &Scalar::one(), &-Scalar::one())
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

/// `ca · a + cb · b`.
pub fn combine(a: &Element, b: &Element, ca: &Scalar, cb: &Scalar) -> Element {
    let mut out = Element::zero();
    out.add_scaled(a, ca);
    out.add_scaled(b, cb);
    out
}

/// An element of the tensor square, as a combination of word pairs.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ 1`.
    pub fn one() -> Self {
        Self::pure(Word::unit(), Word::unit())
    }

    pub fn pure(left: Word, right: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(left, right, Scalar::one());
        t
    }

    pub fn add_term(&mut self, left: Word, right: Word, coeff: Scalar) {
        accumulate(&mut self.terms, (left, right), coeff);
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for ((l, r), k) in other.iter() {
            self.add_term(l.clone(), r.clone(), k * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &Word, right: &Word) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, (Word, Word), Scalar> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero();
        out.add_scaled(self, c);
        out
    }
}

impl FromIterator<((Word, Word), Scalar)> for TensorElement {
    fn from_iter<I: IntoIterator<Item = ((Word, Word), Scalar)>>(iter: I) -> Self {
        let mut t = TensorElement::zero();
        for ((l, r), c) in iter {
            t.add_term(l, r, c);
        }
        t
    }
}

/// `a ⊗ b` for arbitrary elements.
pub fn tensor(a: &Element, b: &Element) -> TensorElement {
    let mut out = TensorElement::zero();
    for (l, cl) in a {
        for (r, cr) in b {
            out.add_term(l.clone(), r.clone(), cl * cr);
        }
    }
    out
}

/// Componentwise diamond product: `(a⊗b)·(c⊗d) = (a⋄c) ⊗ (b⋄d)`.
pub fn tensor_multiply(s: &TensorElement, t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((a, b), c1) in s.iter() {
        for ((c, d), c2) in t.iter() {
            let left = diamond(&Element::from_word(a.clone()), &Element::from_word(c.clone()));
            let right = diamond(&Element::from_word(b.clone()), &Element::from_word(d.clone()));
            let coeff = c1 * c2;
            for (l, kl) in &left {
                for (r, kr) in &right {
                    out.add_term(l.clone(), r.clone(), &coeff * kl * kr);
                }
            }
        }
    }
    out
}

/// `(id ⊗ f)` applied to a tensor, `f` linear.
pub fn apply_right<F>(t: &TensorElement, mut f: F) -> TensorElement
where
    F: FnMut(&Element) -> Element,
{
    let mut out = TensorElement::zero();
    for ((l, r), c) in t.iter() {
        let image = f(&Element::from_word(r.clone()));
        for (w, k) in &image {
            out.add_term(l.clone(), w.clone(), c * k);
        }
    }
    out
}

/// `(f ⊗ id)` applied to a tensor, `f` linear.
pub fn apply_left<F>(t: &TensorElement, mut f: F) -> TensorElement
where
    F: FnMut(&Element) -> Element,
{
    let mut out = TensorElement::zero();
    for ((l, r), c) in t.iter() {
        let image = f(&Element::from_word(l.clone()));
        for (w, k) in &image {
            out.add_term(w.clone(), r.clone(), c * k);
        }
    }
    out
}

/// An element of the triple tensor power; used for coassociativity.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Tensor3 {
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl Tensor3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Word, coeff: Scalar) {
        accumulate(&mut self.terms, (a, b, c), coeff);
    }

    pub fn iter(&self) -> btree_map::Iter<'_, (Word, Word, Word), Scalar> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

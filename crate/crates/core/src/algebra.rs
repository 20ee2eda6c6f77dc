//! The free Nijenhuis algebra: diamond product, the operator `N(w) = ⌊w⌋`,
//! normalization of operated expressions, and homomorphism extension.

use std::collections::BTreeMap;
use std::convert::Infallible;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::elements::{Element, Scalar};
use crate::textio::RawExpr;
use crate::words::{Factor, Letter, Word};

/// Diamond product of two basis words.
///
/// The last factor of `a` meets the first factor of `b`. Unless both are
/// brackets the words simply concatenate; two brackets expand by the
/// Nijenhuis relation
/// `⌊ū⌋ ⋄ ⌊v̄⌋ = ⌊⌊ū⌋ ⋄ v̄⌋ + ⌊ū ⋄ ⌊v̄⌋⌋ − ⌊⌊ū ⋄ v̄⌋⌋`
/// and each resulting bracket is spliced between the remaining factors.
/// Every recursive call lowers the total bracket depth.
pub fn diamond_words(a: &Word, b: &Word) -> Element {
    if a.is_unit() {
        return Element::from_word(b.clone());
    }
    if b.is_unit() {
        return Element::from_word(a.clone());
    }
    let (last, prefix) = a.factors().split_last().expect("nonempty");
    let (first, suffix) = b.factors().split_first().expect("nonempty");
    match (last, first) {
        (Factor::Bracket(u), Factor::Bracket(v)) => {
            let middle = bracket_pair(u, v);
            let mut out = Element::zero();
            for (w, c) in &middle {
                out.add_term(Word::concat(&[prefix, w.factors(), suffix]), c.clone());
            }
            out
        }
        _ => {
            let sign = mutation::concat_sign(last, first);
            Element::monomial(Word::concat(&[a.factors(), b.factors()]), sign)
        }
    }
}

/// `⌊u⌋ ⋄ ⌊v⌋` as a combination of single-bracket words.
fn bracket_pair(u: &Word, v: &Word) -> Element {
    let bu = Word::bracket(u.clone());
    let bv = Word::bracket(v.clone());
    let signs = mutation::nested_signs();
    let mut out = Element::zero();
    out.add_scaled(&bracket(&diamond_words(&bu, v)), &signs[0]);
    out.add_scaled(&bracket(&diamond_words(u, &bv)), &signs[1]);
    out.add_scaled(&bracket(&bracket(&diamond_words(u, v))), &-&signs[2]);
    out
}

/// Bilinear diamond product of elements.
pub fn diamond(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (u, cu) in a {
        for (v, cv) in b {
            out.add_scaled(&diamond_words(u, v), &(cu * cv));
        }
    }
    out
}

/// The Nijenhuis operator, linear extension of `w ↦ ⌊w⌋`.
pub fn bracket(a: &Element) -> Element {
    a.iter().map(|(w, c)| (Word::bracket(w.clone()), c.clone())).collect()
}

/// Diamond product of a sequence of elements, left to right; `1` if empty.
pub fn diamond_all<'a, I>(items: I) -> Element
where
    I: IntoIterator<Item = &'a Element>,
{
    items.into_iter().fold(Element::one(), |acc, e| diamond(&acc, e))
}

/// Normalizes an operated expression into the basis.
pub fn eval_expression(e: &RawExpr) -> Element {
    match e {
        RawExpr::Unit => Element::one(),
        RawExpr::Letter(l) => Element::from_word(Word::letter(l.clone())),
        RawExpr::Op(child) => bracket(&eval_expression(child)),
        RawExpr::Product(items) => {
            let evaluated: Vec<Element> = items.iter().map(eval_expression).collect();
            diamond_all(&evaluated)
        }
        RawExpr::Sum(terms) => {
            let mut out = Element::zero();
            for (c, t) in terms {
                out.add_scaled(&eval_expression(t), c);
            }
            out
        }
    }
}

/// A Nijenhuis algebra supplied by the caller, as the codomain of
/// [`extend_hom`]. Implementations promise an associative unital `mul` and a
/// `nij` satisfying the Nijenhuis equation.
pub trait NijenhuisTarget {
    type Value: Clone;
    type Error;

    fn zero(&self) -> Self::Value;
    fn unit(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn scale(&self, c: &Scalar, a: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn nij(&self, a: &Self::Value) -> Result<Self::Value, Self::Error>;
    fn letter_image(&self, letter: &Letter) -> Result<Self::Value, Self::Error>;
}

/// The unique Nijenhuis algebra homomorphism extending `letter_image`.
pub fn extend_hom<T: NijenhuisTarget>(e: &Element, target: &T) -> Result<T::Value, T::Error> {
    let mut acc = target.zero();
    for (w, c) in e {
        let image = extend_hom_word(w, target)?;
        acc = target.add(&acc, &target.scale(c, &image)?)?;
    }
    Ok(acc)
}

fn extend_hom_word<T: NijenhuisTarget>(w: &Word, target: &T) -> Result<T::Value, T::Error> {
    let mut acc = target.unit();
    for (i, f) in w.factors().iter().enumerate() {
        let image = match f {
            Factor::Letter(l) => target.letter_image(l)?,
            Factor::Bracket(inner) => target.nij(&extend_hom_word(inner, target)?)?,
        };
        acc = if i == 0 { image } else { target.mul(&acc, &image)? };
    }
    Ok(acc)
}

/// The rationals with `N = λ·id`, a Nijenhuis operator for every `λ`
/// (both sides of the Nijenhuis equation reduce to `λ²uv`). `λ = 0` gives
/// the zero operator.
#[derive(Debug, Clone)]
pub struct RationalTarget {
    pub letters: BTreeMap<Letter, Scalar>,
    pub operator_scale: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no image assigned to letter {0}")]
pub struct UnassignedLetter(pub Letter);

impl NijenhuisTarget for RationalTarget {
    type Value = Scalar;
    type Error = UnassignedLetter;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    fn unit(&self) -> Scalar {
        Scalar::one()
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, Self::Error> {
        Ok(a + b)
    }

    fn scale(&self, c: &Scalar, a: &Scalar) -> Result<Scalar, Self::Error> {
        Ok(c * a)
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, Self::Error> {
        Ok(a * b)
    }

    fn nij(&self, a: &Scalar) -> Result<Scalar, Self::Error> {
        Ok(&self.operator_scale * a)
    }

    fn letter_image(&self, letter: &Letter) -> Result<Scalar, Self::Error> {
        self.letters.get(letter).cloned().ok_or_else(|| UnassignedLetter(letter.clone()))
    }
}

/// The free algebra itself as a target; `extend_hom` with letters mapped to
/// themselves is the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreeTarget;

impl NijenhuisTarget for FreeTarget {
    type Value = Element;
    type Error = Infallible;

    fn zero(&self) -> Element {
        Element::zero()
    }

    fn unit(&self) -> Element {
        Element::one()
    }

    fn add(&self, a: &Element, b: &Element) -> Result<Element, Infallible> {
        Ok(a + b)
    }

    fn scale(&self, c: &Scalar, a: &Element) -> Result<Element, Infallible> {
        Ok(a.scale(c))
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element, Infallible> {
        Ok(diamond(a, b))
    }

    fn nij(&self, a: &Element) -> Result<Element, Infallible> {
        Ok(bracket(a))
    }

    fn letter_image(&self, letter: &Letter) -> Result<Element, Infallible> {
        Ok(Element::from_word(Word::letter(letter.clone())))
    }
}

/// Test-only fault injection: flips the sign of one term of the basis-level
/// product so law suites can be shown to detect it. The setting is
/// thread-local and scoped to a closure.
#[doc(hidden)]
pub mod mutation {
    use std::cell::Cell;

    use num_traits::One;

    use crate::elements::Scalar;
    use crate::words::Factor;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum SignFlip {
        /// letter-run followed by a bracket: concatenation.
        LetterBracketConcat,
        /// bracket followed by a letter-run: concatenation.
        BracketLetterConcat,
        /// `⌊⌊ū⌋ ⋄ v̄⌋` in the bracket-bracket case.
        LeftNested,
        /// `⌊ū ⋄ ⌊v̄⌋⌋` in the bracket-bracket case.
        RightNested,
        /// `−⌊⌊ū ⋄ v̄⌋⌋` in the bracket-bracket case.
        DoubleBracket,
    }

    impl SignFlip {
        pub const ALL: [SignFlip; 5] = [
            SignFlip::LetterBracketConcat,
            SignFlip::BracketLetterConcat,
            SignFlip::LeftNested,
            SignFlip::RightNested,
            SignFlip::DoubleBracket,
        ];
    }

    thread_local! {
        static ACTIVE: Cell<Option<SignFlip>> = const { Cell::new(None) };
    }

    struct Restore(Option<SignFlip>);

    impl Drop for Restore {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }

    /// Runs `f` with `flip` applied to every product computed on this thread.
    pub fn with_sign_flip<R>(flip: SignFlip, f: impl FnOnce() -> R) -> R {
        let previous = ACTIVE.with(|a| a.replace(Some(flip)));
        let _restore = Restore(previous);
        f()
    }

    fn active() -> Option<SignFlip> {
        ACTIVE.with(Cell::get)
    }

    fn sign(flipped: bool) -> Scalar {
        if flipped {
            -Scalar::one()
        } else {
            Scalar::one()
        }
    }

    pub(crate) fn concat_sign(last: &Factor, first: &Factor) -> Scalar {
        let flipped = match active() {
            Some(SignFlip::LetterBracketConcat) => !last.is_bracket() && first.is_bracket(),
            Some(SignFlip::BracketLetterConcat) => last.is_bracket() && !first.is_bracket(),
            _ => false,
        };
        sign(flipped)
    }

    pub(crate) fn nested_signs() -> [Scalar; 3] {
        let a = active();
        [
            sign(a == Some(SignFlip::LeftNested)),
            sign(a == Some(SignFlip::RightNested)),
            sign(a == Some(SignFlip::DoubleBracket)),
        ]
    }
}

//! Coproduct, left counit and convolution.
//!
//! The coproduct is computed by the defining recursion over the diamond
//! factorization: `Δ(1) = 1⊗1`, `Δ(x) = 1⊗x`, `Δ(⌊w̄⌋) = (id⊗N)Δ(w̄)` and
//! `Δ(w1 ⋄ … ⋄ wm) = Δ(w1) ⋄ … ⋄ Δ(wm)`. No closed form is assumed.

use crate::algebra::{bracket, diamond};
use crate::elements::{apply_right, tensor_multiply, Element, Scalar, Tensor3, TensorElement};
use crate::words::{diamond_factorize, Factor, Word};

pub fn coproduct_word(w: &Word) -> TensorElement {
    if w.is_unit() {
        return TensorElement::one();
    }
    let factors = diamond_factorize(w).expect("non-unit word");
    factors
        .iter()
        .map(coproduct_factor)
        .reduce(|acc, t| tensor_multiply(&acc, &t))
        .expect("width >= 1")
}

fn coproduct_factor(f: &Factor) -> TensorElement {
    match f {
        Factor::Letter(_) => TensorElement::pure(Word::unit(), f.to_word()),
        Factor::Bracket(inner) => apply_right(&coproduct_word(inner), bracket),
    }
}

/// Linear extension of [`coproduct_word`].
pub fn coproduct(a: &Element) -> TensorElement {
    let mut out = TensorElement::zero();
    for (w, c) in a {
        out.add_scaled(&coproduct_word(w), c);
    }
    out
}

/// The coefficient of the unit word.
pub fn counit(a: &Element) -> Scalar {
    a.coefficient(&Word::unit())
}

/// `u∘ε`: the unit scaled by the counit.
pub fn unit_counit(a: &Element) -> Element {
    Element::from_scalar(counit(a))
}

/// `(ε ⊗ id)`, identifying `k ⊗ H` with `H`.
pub fn collapse_left(t: &TensorElement) -> Element {
    let mut out = Element::zero();
    for ((l, r), c) in t.iter() {
        if l.is_unit() {
            out.add_term(r.clone(), c.clone());
        }
    }
    out
}

/// `(id ⊗ ε)`, identifying `H ⊗ k` with `H`.
pub fn collapse_right(t: &TensorElement) -> Element {
    let mut out = Element::zero();
    for ((l, r), c) in t.iter() {
        if r.is_unit() {
            out.add_term(l.clone(), c.clone());
        }
    }
    out
}

/// `(Δ ⊗ id)Δ(a)`.
pub fn coproduct_then_left(a: &Element) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((l, r), c) in coproduct(a).iter() {
        for ((l1, l2), k) in coproduct_word(l).iter() {
            out.add_term(l1.clone(), l2.clone(), r.clone(), c * k);
        }
    }
    out
}

/// `(id ⊗ Δ)Δ(a)`.
pub fn coproduct_then_right(a: &Element) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((l, r), c) in coproduct(a).iter() {
        for ((r1, r2), k) in coproduct_word(r).iter() {
            out.add_term(l.clone(), r1.clone(), r2.clone(), c * k);
        }
    }
    out
}

/// `(f ∗ g)(a) = Σ f(a₁) ⋄ g(a₂)` over the coproduct of `a`.
pub fn convolve<F, G>(f: F, g: G, a: &Element) -> Element
where
    F: Fn(&Element) -> Element,
    G: Fn(&Element) -> Element,
{
    let result: Result<Element, std::convert::Infallible> =
        try_convolve(|e| Ok(f(e)), |e| Ok(g(e)), a);
    match result {
        Ok(e) => e,
        Err(never) => match never {},
    }
}

/// [`convolve`] for fallible maps; the first error is returned unchanged.
pub fn try_convolve<F, G, E>(f: F, g: G, a: &Element) -> Result<Element, E>
where
    F: Fn(&Element) -> Result<Element, E>,
    G: Fn(&Element) -> Result<Element, E>,
{
    let mut out = Element::zero();
    for ((l, r), c) in coproduct(a).iter() {
        let fl = f(&Element::from_word(l.clone()))?;
        let gr = g(&Element::from_word(r.clone()))?;
        out.add_scaled(&diamond(&fl, &gr), c);
    }
    Ok(out)
}

/// True if `(id ⊗ ε)Δ(a) = a`, i.e. `ε` acts as a right counit on `a`.
pub fn right_counit_holds(a: &Element) -> bool {
    collapse_right(&coproduct(a)) == *a
}

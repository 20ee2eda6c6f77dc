//! A computer-algebra kernel for the free Nijenhuis algebra on a finite
//! alphabet.
//!
//! Basis elements are alternating bracketed words ([`Word`]); elements are
//! exact rational combinations of them ([`Element`]). The algebra carries the
//! diamond product ([`diamond`]), the operator `N(w) = ⌊w⌋` ([`bracket`]), a
//! coproduct with left counit ([`coproduct`], [`counit`]) and a right
//! antipode ([`antipode`]). The [`verify`] module checks the algebraic
//! identities exhaustively over enumerated bases.
//!
//! ```
//! use nijenhuis::{eval_expression, parse, print_canonical};
//!
//! let e = eval_expression(&parse("N(x)*N(y)").unwrap());
//! assert_eq!(print_canonical(&e), "[x [y]] + [[x] y] - [[x y]]");
//! ```

pub mod algebra;
pub mod coalgebra;
pub mod elements;
pub mod enumeration;
pub mod hopf;
pub mod textio;
pub mod verify;
pub mod words;

pub use algebra::{bracket, diamond, diamond_words, eval_expression, extend_hom, NijenhuisTarget, RationalTarget};
pub use coalgebra::{coproduct, coproduct_word, convolve, counit, unit_counit};
pub use elements::{apply_right, combine, tensor_multiply, Element, Scalar, TensorElement};
pub use enumeration::{dimension_series, enumerate_basis, Basis};
pub use hopf::{antipode, homogeneous_components, GradedDecomposition};
pub use textio::{element_from_json, element_to_json, parse, print_canonical, print_latex, print_tensor, RawExpr};
pub use verify::{run_suite, Law, LawReport, Mode};
pub use words::{compare, diamond_factorize, measures, validate_basis, Factor, Letter, Measures, Word};

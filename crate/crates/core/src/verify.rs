//! Law suites: exhaustive or seeded-random checks of the algebraic identities
//! over enumerated basis words, producing serializable reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{bracket, diamond, diamond_all, extend_hom, RationalTarget};
use crate::coalgebra::{
    coproduct, coproduct_then_left, coproduct_then_right, collapse_left, collapse_right, counit,
    try_convolve, unit_counit,
};
use crate::elements::{apply_right, scalar, tensor_multiply, Element, Tensor3, TensorElement};
use crate::enumeration::{enumerate_basis, EnumerationError};
use crate::hopf::{check_connected, AntipodeError, AntipodeSolver};
use crate::textio::{print_canonical, print_tensor};
use crate::words::{diamond_factorize, validate_basis, Letter, Word, WordError};

/// Every suite the verifier knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    Nijenhuis,
    Associativity,
    Unit,
    Factorization,
    Closure,
    DeltaMult,
    Coassoc,
    Cocycle,
    CounitAlg,
    LeftCounit,
    GradeMul,
    GradeDelta,
    GradeBracket,
    Antipode,
    AntipodeClosedForm,
    CoproductCollapse,
    Connected,
    Homomorphism,
    Linearity,
    RightCounitFails,
}

impl Law {
    pub const ALL: [Law; 20] = [
        Law::Nijenhuis,
        Law::Associativity,
        Law::Unit,
        Law::Factorization,
        Law::Closure,
        Law::DeltaMult,
        Law::Coassoc,
        Law::Cocycle,
        Law::CounitAlg,
        Law::LeftCounit,
        Law::GradeMul,
        Law::GradeDelta,
        Law::GradeBracket,
        Law::Antipode,
        Law::AntipodeClosedForm,
        Law::CoproductCollapse,
        Law::Connected,
        Law::Homomorphism,
        Law::Linearity,
        Law::RightCounitFails,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Nijenhuis => "nijenhuis",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Factorization => "factorization",
            Law::Closure => "closure",
            Law::DeltaMult => "delta_mult",
            Law::Coassoc => "coassoc",
            Law::Cocycle => "cocycle",
            Law::CounitAlg => "counit_alg",
            Law::LeftCounit => "left_counit",
            Law::GradeMul => "grade_mul",
            Law::GradeDelta => "grade_delta",
            Law::GradeBracket => "grade_bracket",
            Law::Antipode => "antipode",
            Law::AntipodeClosedForm => "antipode_closed_form",
            Law::CoproductCollapse => "coproduct_collapse",
            Law::Connected => "connected",
            Law::Homomorphism => "homomorphism",
            Law::Linearity => "linearity",
            Law::RightCounitFails => "right_counit_fails",
        }
    }

    /// Number of basis words per instance.
    pub fn arity(self) -> usize {
        match self {
            Law::Associativity => 3,
            Law::Nijenhuis
            | Law::Closure
            | Law::DeltaMult
            | Law::CounitAlg
            | Law::GradeMul
            | Law::Homomorphism
            | Law::Linearity => 2,
            _ => 1,
        }
    }

    /// Default degree bound: 4 for unary laws, 3 otherwise.
    pub fn default_degree(self) -> usize {
        if self.arity() == 1 {
            4
        } else {
            3
        }
    }

    /// Negative laws pass when a witness *violating* the identity is found.
    pub fn is_negative(self) -> bool {
        self == Law::RightCounitFails
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| VerifyError::UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown law {0:?}")]
    UnknownLaw(String),
    #[error("empty search space")]
    EmptySpace,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Antipode(#[from] AntipodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub alphabet: Vec<String>,
    pub max_degree: usize,
    pub arity: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

impl SearchSpace {
    pub fn exhaustive(alphabet: &[Letter], max_degree: usize, arity: usize) -> Self {
        Self::new(alphabet, max_degree, arity, Mode::Exhaustive)
    }

    pub fn new(alphabet: &[Letter], max_degree: usize, arity: usize, mode: Mode) -> Self {
        let (mode, samples, seed) = match mode {
            Mode::Exhaustive => ("exhaustive".to_string(), None, None),
            Mode::Random { samples, seed } => ("random".to_string(), Some(samples), Some(seed)),
        };
        SearchSpace {
            alphabet: alphabet.iter().map(|l| l.name().to_string()).collect(),
            max_degree,
            arity,
            mode,
            samples,
            seed,
        }
    }
}

impl fmt::Display for SearchSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alphabet={{{}}} max_degree={} arity={} {}",
            self.alphabet.join(","),
            self.max_degree,
            self.arity,
            self.mode
        )?;
        if let (Some(n), Some(s)) = (self.samples, self.seed) {
            write!(f, "(samples={n}, seed={s})")?;
        }
        Ok(())
    }
}

/// Inputs of one instance together with both sides, in canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one suite. `passed` holds iff `counterexample` is absent;
/// negative laws additionally carry the `witness` that made them pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub space: SearchSpace,
    pub instances_checked: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Counterexample>,
}

impl LawReport {
    pub fn passed(law: &str, space: SearchSpace, instances_checked: u64) -> Self {
        LawReport {
            law: law.to_string(),
            space,
            instances_checked,
            passed: true,
            counterexample: None,
            witness: None,
        }
    }

    pub fn failed(
        law: &str,
        space: SearchSpace,
        instances_checked: u64,
        inputs: Vec<String>,
        lhs: String,
        rhs: String,
    ) -> Self {
        LawReport {
            law: law.to_string(),
            space,
            instances_checked,
            passed: false,
            counterexample: Some(Counterexample { inputs, lhs, rhs }),
            witness: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {} instances={}", self.law, self.space, self.instances_checked)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  counterexample: ({})\n    lhs: {}\n    rhs: {}", c.inputs.join(", "), c.lhs, c.rhs)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: ({})\n    lhs: {}\n    rhs: {}", w.inputs.join(", "), w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

/// Serializes a batch of reports as a JSON array.
pub fn reports_to_json(reports: &[LawReport]) -> String {
    serde_json::to_string(reports).expect("serializable")
}

struct Mismatch {
    lhs: String,
    rhs: String,
}

type Check = Result<(), Mismatch>;

fn expect_eq_elements(lhs: Element, rhs: Element) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Mismatch { lhs: print_canonical(&lhs), rhs: print_canonical(&rhs) })
    }
}

fn expect_eq_tensors(lhs: TensorElement, rhs: TensorElement) -> Check {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Mismatch { lhs: print_tensor(&lhs), rhs: print_tensor(&rhs) })
    }
}

fn print_tensor3(t: &Tensor3) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = t.iter().map(|((a, b, c), k)| format!("{k}*({a} (x) {b} (x) {c})")).collect();
    terms.join(" + ")
}

fn el(w: &Word) -> Element {
    Element::from_word(w.clone())
}

/// Holds state shared across the instances of one suite.
struct Checker {
    antipode: AntipodeSolver,
    targets: Vec<RationalTarget>,
}

impl Checker {
    fn new(alphabet: &[Letter]) -> Self {
        const PRIMES: [i64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];
        let letters: BTreeMap<Letter, _> = alphabet
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), scalar(PRIMES[i % PRIMES.len()] + 20 * (i / PRIMES.len()) as i64)))
            .collect();
        let targets = [1, 0, 2]
            .into_iter()
            .map(|lambda| RationalTarget { letters: letters.clone(), operator_scale: scalar(lambda) })
            .collect();
        Checker { antipode: AntipodeSolver::new(), targets }
    }

    fn check(&mut self, law: Law, t: &[&Word]) -> Check {
        match law {
            Law::Nijenhuis => {
                let (a, b) = (el(t[0]), el(t[1]));
                let lhs = diamond(&bracket(&a), &bracket(&b));
                let mut rhs = bracket(&diamond(&bracket(&a), &b));
                rhs = &rhs + &bracket(&diamond(&a, &bracket(&b)));
                rhs = &rhs - &bracket(&bracket(&diamond(&a, &b)));
                expect_eq_elements(lhs, rhs)
            }
            Law::Associativity => {
                let (a, b, c) = (el(t[0]), el(t[1]), el(t[2]));
                expect_eq_elements(diamond(&diamond(&a, &b), &c), diamond(&a, &diamond(&b, &c)))
            }
            Law::Unit => {
                let w = el(t[0]);
                expect_eq_elements(diamond(&Element::one(), &w), w.clone())?;
                expect_eq_elements(diamond(&w, &Element::one()), w)
            }
            Law::Factorization => check_factorization(t[0]),
            Law::Closure => {
                let prod = diamond(&el(t[0]), &el(t[1]));
                for w in prod.words() {
                    if validate_basis(&w.to_raw()).as_ref() != Ok(w) {
                        return Err(Mismatch { lhs: w.to_string(), rhs: "a basis word".into() });
                    }
                }
                Ok(())
            }
            Law::DeltaMult => {
                let (u, v) = (el(t[0]), el(t[1]));
                expect_eq_tensors(coproduct(&diamond(&u, &v)), tensor_multiply(&coproduct(&u), &coproduct(&v)))
            }
            Law::Coassoc => {
                let w = el(t[0]);
                let (lhs, rhs) = (coproduct_then_left(&w), coproduct_then_right(&w));
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(Mismatch { lhs: print_tensor3(&lhs), rhs: print_tensor3(&rhs) })
                }
            }
            Law::Cocycle => {
                let w = el(t[0]);
                expect_eq_tensors(coproduct(&bracket(&w)), apply_right(&coproduct(&w), bracket))
            }
            Law::CounitAlg => {
                let (u, v) = (el(t[0]), el(t[1]));
                let lhs = counit(&diamond(&u, &v));
                let rhs = counit(&u) * counit(&v);
                if lhs == rhs {
                    Ok(())
                } else {
                    Err(Mismatch { lhs: lhs.to_string(), rhs: rhs.to_string() })
                }
            }
            Law::LeftCounit => {
                let w = el(t[0]);
                expect_eq_elements(collapse_left(&coproduct(&w)), w)
            }
            Law::GradeMul => {
                let expected = t[0].degree() + t[1].degree();
                let prod = diamond(&el(t[0]), &el(t[1]));
                let offending = prod.words().find(|w| w.degree() != expected).cloned();
                match offending {
                    None => Ok(()),
                    Some(w) => Err(Mismatch {
                        lhs: format!("{w} (degree {})", w.degree()),
                        rhs: format!("degree {expected}"),
                    }),
                }
            }
            Law::GradeDelta => {
                let n = t[0].degree();
                for ((l, r), _) in coproduct(&el(t[0])).iter() {
                    let (p, q) = (l.degree(), r.degree());
                    let shaped = (p == 0 && q == n) || (p > 0 && q > 0 && p + q == n);
                    if !shaped {
                        return Err(Mismatch {
                            lhs: format!("{l} (x) {r} (degrees {p}, {q})"),
                            rhs: format!("degrees (0, {n}) or positive summing to {n}"),
                        });
                    }
                }
                Ok(())
            }
            Law::GradeBracket => {
                let b = bracket(&el(t[0]));
                let expected = t[0].degree() + 1;
                let offending = b.words().find(|w| w.degree() != expected).cloned();
                match offending {
                    None => Ok(()),
                    Some(w) => Err(Mismatch { lhs: format!("degree {}", w.degree()), rhs: format!("degree {expected}") }),
                }
            }
            Law::Antipode => {
                let w = el(t[0]);
                let solver = std::cell::RefCell::new(&mut self.antipode);
                let lhs = try_convolve(|e| Ok(e.clone()), |e| solver.borrow_mut().apply(e), &w);
                match lhs {
                    Ok(lhs) => expect_eq_elements(lhs, unit_counit(&w)),
                    Err(e) => Err(Mismatch { lhs: e.to_string(), rhs: print_canonical(&unit_counit(&w)) }),
                }
            }
            Law::AntipodeClosedForm => {
                let w = el(t[0]);
                match self.antipode.apply(&w) {
                    Ok(s) => expect_eq_elements(s, unit_counit(&w)),
                    Err(e) => Err(Mismatch { lhs: e.to_string(), rhs: print_canonical(&unit_counit(&w)) }),
                }
            }
            Law::CoproductCollapse => {
                expect_eq_tensors(coproduct(&el(t[0])), TensorElement::pure(Word::unit(), t[0].clone()))
            }
            Law::Connected => {
                let w = t[0];
                let e = counit(&el(w));
                let ok = (w.degree() == 0) == w.is_unit() && (w.is_unit() != e.is_zero());
                if ok {
                    Ok(())
                } else {
                    Err(Mismatch { lhs: format!("degree {}, counit {e}", w.degree()), rhs: "connected grading".into() })
                }
            }
            Law::Homomorphism => {
                let (u, v) = (el(t[0]), el(t[1]));
                let prod = diamond(&u, &v);
                for target in &self.targets {
                    let fu = extend_hom(&u, target);
                    let fv = extend_hom(&v, target);
                    let fp = extend_hom(&prod, target);
                    let image = extend_hom(&bracket(&u), target);
                    match (fu, fv, fp, image) {
                        (Ok(fu), Ok(fv), Ok(fp), Ok(image)) => {
                            if fp != &fu * &fv {
                                return Err(Mismatch { lhs: fp.to_string(), rhs: (&fu * &fv).to_string() });
                            }
                            let expected = &target.operator_scale * &fu;
                            if image != expected {
                                return Err(Mismatch { lhs: image.to_string(), rhs: expected.to_string() });
                            }
                        }
                        _ => return Err(Mismatch { lhs: "unassigned letter".into(), rhs: "value".into() }),
                    }
                }
                Ok(())
            }
            Law::Linearity => {
                // f(u - 2v) = f(u) - 2 f(v) for the antipode, the operator and Δ.
                let (u, v) = (el(t[0]), el(t[1]));
                let two = scalar(2);
                let mix = |a: &Element, b: &Element| crate::elements::combine(a, b, &scalar(1), &-&two);
                let combined = mix(&u, &v);
                let s = |solver: &mut AntipodeSolver, e: &Element| solver.apply(e);
                match (s(&mut self.antipode, &combined), s(&mut self.antipode, &u), s(&mut self.antipode, &v)) {
                    (Ok(sc), Ok(su), Ok(sv)) => expect_eq_elements(sc, mix(&su, &sv))?,
                    _ => return Err(Mismatch { lhs: "antipode error".into(), rhs: "value".into() }),
                }
                expect_eq_elements(bracket(&combined), mix(&bracket(&u), &bracket(&v)))?;
                let mut rhs = coproduct(&u);
                rhs.add_scaled(&coproduct(&v), &-&two);
                expect_eq_tensors(coproduct(&combined), rhs)
            }
            Law::RightCounitFails => {
                // The identity under test; the suite inverts the verdict.
                let w = el(t[0]);
                expect_eq_elements(collapse_right(&coproduct(&w)), w)
            }
        }
    }
}

fn check_factorization(w: &Word) -> Check {
    match diamond_factorize(w) {
        Err(WordError::EmptyWord) if w.is_unit() => Ok(()),
        Err(e) => Err(Mismatch { lhs: e.to_string(), rhs: "a factorization".into() }),
        Ok(factors) => {
            let pieces: Vec<Element> = factors.iter().map(|f| Element::from_word(f.to_word())).collect();
            let joined = diamond_all(&pieces);
            expect_eq_elements(joined.clone(), el(w))?;
            let again = joined.as_word().map(diamond_factorize);
            match again {
                Some(Ok(f2)) if f2 == factors => Ok(()),
                _ => Err(Mismatch {
                    lhs: format!("{again:?}"),
                    rhs: format!("{factors:?}"),
                }),
            }
        }
    }
}

/// Runs one suite over all words of degree `<= max_degree`.
pub fn run_suite(law: Law, alphabet: &[Letter], max_degree: usize, mode: Mode) -> Result<LawReport, VerifyError> {
    if law == Law::Connected && mode == Mode::Exhaustive {
        return Ok(check_connected(alphabet, max_degree)?);
    }
    let basis = enumerate_basis(alphabet, max_degree)?;
    let words: Vec<&Word> = basis.words_up_to(max_degree).collect();
    let arity = law.arity();
    let space = SearchSpace::new(alphabet, max_degree, arity, mode);
    if words.is_empty() {
        return Err(VerifyError::EmptySpace);
    }
    let mut checker = Checker::new(basis.alphabet());
    let mut checked = 0u64;
    let mut first_failure: Option<(Vec<String>, Mismatch)> = None;

    let mut visit = |tuple: &[&Word], checker: &mut Checker| -> bool {
        checked += 1;
        match checker.check(law, tuple) {
            Ok(()) => true,
            Err(m) => {
                first_failure = Some((tuple.iter().map(|w| w.to_string()).collect(), m));
                false
            }
        }
    };

    match mode {
        Mode::Exhaustive => {
            let n = words.len();
            let mut idx = vec![0usize; arity];
            'outer: loop {
                let tuple: Vec<&Word> = idx.iter().map(|&i| words[i]).collect();
                if !visit(&tuple, &mut checker) {
                    break;
                }
                // Odometer, last position fastest: canonical tuple order.
                let mut k = arity;
                loop {
                    if k == 0 {
                        break 'outer;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < n {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        Mode::Random { samples, seed } => {
            if samples == 0 {
                return Err(VerifyError::EmptySpace);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let tuple: Vec<&Word> = (0..arity).map(|_| words[rng.gen_range(0..words.len())]).collect();
                if !visit(&tuple, &mut checker) {
                    break;
                }
            }
        }
    }

    let law_name = law.name();
    Ok(match (law.is_negative(), first_failure) {
        (false, None) => LawReport::passed(law_name, space, checked),
        (false, Some((inputs, m))) => LawReport::failed(law_name, space, checked, inputs, m.lhs, m.rhs),
        (true, Some((inputs, m))) => {
            let mut r = LawReport::passed(law_name, space, checked);
            r.witness = Some(Counterexample { inputs, lhs: m.lhs, rhs: m.rhs });
            r
        }
        (true, None) => LawReport::failed(
            law_name,
            space,
            checked,
            Vec::new(),
            "identity held on every instance".into(),
            "at least one violation".into(),
        ),
    })
}

/// [`run_suite`] with the law given by name.
pub fn run_suite_named(law: &str, alphabet: &[Letter], max_degree: usize, mode: Mode) -> Result<LawReport, VerifyError> {
    run_suite(law.parse()?, alphabet, max_degree, mode)
}

/// Runs every suite; `max_degree = None` uses each law's default bound.
pub fn run_all(alphabet: &[Letter], max_degree: Option<usize>, mode: Mode) -> Result<Vec<LawReport>, VerifyError> {
    Law::ALL
        .into_iter()
        .map(|law| run_suite(law, alphabet, max_degree.unwrap_or(law.default_degree()), mode))
        .collect()
}

/// `(S ∗ id)(w)` for every word up to `max_degree`. Reported only: whether
/// the right antipode is also a left antipode is not asserted anywhere.
pub fn probe_left_antipode(alphabet: &[Letter], max_degree: usize) -> Result<Vec<(Word, Element)>, VerifyError> {
    let basis = enumerate_basis(alphabet, max_degree)?;
    let mut solver = AntipodeSolver::new();
    let mut out = Vec::new();
    for w in basis.words_up_to(max_degree) {
        let cell = std::cell::RefCell::new(&mut solver);
        let value = try_convolve(|e| cell.borrow_mut().apply(e), |e| Ok(e.clone()), &el(w))
            ?;
        out.push((w.clone(), value));
    }
    Ok(out)
}

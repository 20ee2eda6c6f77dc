mod common;

use nijenhuis::elements::ratio;
use nijenhuis::{
    bracket, combine, diamond, element_from_json, element_to_json, enumerate_basis, eval_expression, parse, print_canonical,
    Element, Scalar, Word,
};
use proptest::prelude::*;

use common::letters;

fn basis() -> Vec<Word> {
    enumerate_basis(&letters(&["x", "y"]), 3).unwrap().words_up_to(3).cloned().collect()
}

fn coefficient() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn element() -> impl Strategy<Value = Element> {
    prop::collection::vec((prop::sample::select(basis()), coefficient()), 0..5)
        .prop_map(|terms| terms.into_iter().collect())
}

/// Strings drawn from the expression grammar.
fn expression() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("z_1".to_string()),
        Just("1".to_string()),
    ];
    let atom = leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| format!("N({e})")),
            inner.clone().prop_map(|e| format!("[{e}]")),
            inner.clone().prop_map(|e| format!("({e})")),
            (inner.clone(), inner.clone(), any::<bool>())
                .prop_map(|(a, b, star)| if star { format!("{a}*{b}") } else { format!("{a} {b}") }),
            (inner.clone(), inner, any::<bool>())
                .prop_map(|(a, b, minus)| format!("{a} {} {b}", if minus { '-' } else { '+' })),
        ]
    });
    let term = (prop::option::of((1u32..9, prop::option::of(1u32..5))), atom).prop_map(|(c, a)| match c {
        None => a,
        Some((n, None)) => format!("{n}*{a}"),
        Some((n, Some(d))) => format!("{n}/{d}*{a}"),
    });
    (any::<bool>(), prop::collection::vec((any::<bool>(), term), 1..4)).prop_map(|(lead, terms)| {
        let mut s = if lead { "-".to_string() } else { String::new() };
        for (i, (minus, t)) in terms.into_iter().enumerate() {
            if i > 0 {
                s.push_str(if minus { " - " } else { " + " });
            }
            s.push_str(&t);
        }
        s
    })
}

fn eval(s: &str) -> Element {
    eval_expression(&parse(s).unwrap())
}

proptest! {
    #[test]
    fn canonical_text_round_trips(e in element()) {
        let text = print_canonical(&e);
        prop_assert_eq!(eval(&text), e);
    }

    #[test]
    fn json_round_trip_is_byte_stable(e in element()) {
        let json = element_to_json(&e);
        let back = element_from_json(&json).unwrap();
        prop_assert_eq!(element_to_json(&back), json);
        prop_assert_eq!(back, e);
    }

    #[test]
    fn combine_is_commutative_and_cancels(a in element(), b in element(), p in coefficient(), q in coefficient()) {
        prop_assert_eq!(combine(&a, &b, &p, &q), combine(&b, &a, &q, &p));
        prop_assert!(combine(&a, &a, &p, &(-p.clone())).is_zero());
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn diamond_is_associative_and_bilinear(a in element(), b in element(), c in element(), p in coefficient()) {
        prop_assert_eq!(diamond(&diamond(&a, &b), &c), diamond(&a, &diamond(&b, &c)));
        prop_assert_eq!(diamond(&a.scale(&p), &(&b + &c)), (&diamond(&a, &b) + &diamond(&a, &c)).scale(&p));
    }

    #[test]
    fn nijenhuis_equation_on_elements(a in element(), b in element()) {
        let lhs = diamond(&bracket(&a), &bracket(&b));
        let rhs = &(&bracket(&diamond(&bracket(&a), &b)) + &bracket(&diamond(&a, &bracket(&b))))
            - &bracket(&bracket(&diamond(&a, &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grammar_strings_parse_and_normalize(s in expression()) {
        let raw = parse(&s);
        prop_assert!(raw.is_ok(), "{:?} rejected: {:?}", s, raw);
        let value = eval_expression(&raw.unwrap());
        prop_assert_eq!(eval(&print_canonical(&value)), value);
    }

    #[test]
    fn evaluation_is_compositional(a in expression(), b in expression()) {
        let (ea, eb) = (eval(&a), eval(&b));
        prop_assert_eq!(eval(&format!("({a})*({b})")), diamond(&ea, &eb));
        prop_assert_eq!(eval(&format!("N({a})")), bracket(&ea));
        prop_assert_eq!(eval(&format!("({a}) - ({b})")), &ea - &eb);
    }

    #[test]
    fn mutated_strings_never_panic(s in expression(), pos in any::<prop::sample::Index>(), junk in "[-+*/()\\[\\]N0-9 a-z\u{e9}]{0,3}", cut in any::<bool>()) {
        let at = pos.index(s.len() + 1);
        let at = (0..=at).rev().find(|&i| s.is_char_boundary(i)).unwrap_or(0);
        let mutated = if cut {
            format!("{}{}", &s[..at], junk)
        } else {
            format!("{}{}{}", &s[..at], junk, &s[at..])
        };
        if let Err(e) = parse(&mutated) {
            prop_assert!(e.offset() <= mutated.len());
        }
    }
}

use proptest::prelude::*;

use smoothwords::operators::primitives;
use smoothwords::{closure, derivative, is_smooth, rho, Alphabet, Word};

fn alphabet() -> impl Strategy<Value = Alphabet> {
    (1u32..5, 1u32..4).prop_map(|(a, d)| Alphabet::new(a, a + d).unwrap())
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    alphabet().prop_flat_map(move |s| {
        prop::collection::vec(prop::bool::ANY, 0..max_len).prop_map(move |bits| {
            let letters: Vec<u32> = bits
                .iter()
                .map(|&x| if x { s.b() } else { s.a() })
                .collect();
            Word::new(s, &letters).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_roundtrip(w in word(40)) {
        prop_assert_eq!(Word::parse(w.alphabet(), &w.to_text()).unwrap(), w.clone());
        prop_assert_eq!(Word::parse(w.alphabet(), &w.to_comma_text()).unwrap(), w);
    }

    #[test]
    fn complement_and_reversal_are_involutions(w in word(40)) {
        prop_assert_eq!(w.complement().complement(), w.clone());
        prop_assert_eq!(w.reversal().reversal(), w.clone());
        prop_assert_eq!(w.complement().len(), w.len());
        prop_assert_eq!(w.complement().count_a(), w.count_b());
    }

    #[test]
    fn derivative_commutes_with_reversal(w in word(40)) {
        let d = derivative(&w).into_word();
        let dr = derivative(&w.reversal()).into_word();
        prop_assert_eq!(d.map(|d| d.reversal()), dr);
    }

    #[test]
    fn derivative_ignores_complement(w in word(40)) {
        prop_assert_eq!(derivative(&w).into_word(), derivative(&w.complement()).into_word());
        prop_assert_eq!(rho(&w).into_word(), rho(&w.complement()).into_word());
    }

    #[test]
    fn primitives_invert_derivative(w in word(30)) {
        if let Some(d) = derivative(&w).into_word() {
            for v in primitives(&d) {
                prop_assert_eq!(derivative(&v).into_word(), Some(d.clone()));
            }
            if !w.is_empty() {
                prop_assert!(primitives(&d).contains(&w));
            }
        }
    }

    #[test]
    fn word_is_a_factor_of_its_closure(w in word(40)) {
        if let Ok(c) = closure(&w) {
            prop_assert!(c.contains_factor(&w));
            prop_assert!(c.len() >= w.len());
            prop_assert_eq!(c.run_count(), w.run_count());
        }
    }

    #[test]
    fn smoothness_symmetries_and_factors(w in word(30)) {
        let smooth = is_smooth(&w, None);
        prop_assert_eq!(is_smooth(&w.complement(), None), smooth);
        prop_assert_eq!(is_smooth(&w.reversal(), None), smooth);
        if smooth && !w.is_empty() {
            prop_assert!(is_smooth(&w.factor(1, w.len() - 1), None));
            prop_assert!(is_smooth(&w.factor(0, w.len() - 1), None));
        }
    }
}

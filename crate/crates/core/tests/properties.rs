use std::collections::BTreeMap;

use proptest::prelude::*;

use welded_core::convert::{psi_stringlink, xi_stringlink};
use welded_core::format::{parse_gauss, render_gauss, WGraphFile};
use welded_core::freegroup::{Gen, Letter, Sign, Word};
use welded_core::fuzz::{case_rng, forest_case, trace_failure};
use welded_core::gauss::Kind;
use welded_core::magnus::expand;
use welded_core::milnor::{forests_sv_equivalent, milnor_invariants};
use welded_core::peripheral::{canonical_basing, chen_milnor_normal_form};
use welded_core::random::{random_diagram, random_forest, random_move, MoveKind};
use welded_core::wgraph::{expand_macro, is_isomorphic};

fn letter(vars: u32) -> impl Strategy<Value = Letter> {
    (0..vars, any::<bool>()).prop_map(|(g, pos)| Letter::new(Gen(g), if pos { Sign::Pos } else { Sign::Neg }))
}

fn word(vars: u32, len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(vars), 0..=len).prop_map(|ls| ls.into_iter().collect())
}

fn meridians(vars: usize) -> BTreeMap<Gen, usize> {
    (0..vars).map(|v| (Gen(v as u32), v)).collect()
}

proptest! {
    #[test]
    fn words_form_a_group(u in word(4, 12), v in word(4, 12), w in word(4, 12)) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
        prop_assert!(u.mul(&u.inverse()).is_identity());
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(3, 10), v in word(3, 10), r in word(3, 4)) {
        let g = Gen(0);
        prop_assert_eq!(u.mul(&v).substitute(g, &r), u.substitute(g, &r).mul(&v.substitute(g, &r)));
    }

    #[test]
    fn expansion_is_multiplicative(u in word(4, 20), v in word(4, 20)) {
        let m = meridians(4);
        let lhs = expand(&u.mul(&v), &m, 4).unwrap();
        let rhs = expand(&u, &m, 4).unwrap().mul(&expand(&v, &m, 4).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let inv = expand(&u.inverse(), &m, 4).unwrap();
        prop_assert_eq!(inv, expand(&u, &m, 4).unwrap().inverse().unwrap());
    }

    #[test]
    fn conjugates_commute_in_the_reduced_group(i in 0u32..4, g in word(4, 15)) {
        let mu = Word::gen(Gen(i));
        let e = expand(&mu.commutator(&mu.conjugate(&g)), &meridians(4), 4).unwrap();
        prop_assert!(e.is_one());
    }

    #[test]
    fn milnor_tables_survive_welded_and_sv_moves(seed in any::<u64>(), sv in any::<bool>()) {
        let mut kinds = MoveKind::WELDED.to_vec();
        if sv {
            kinds.push(MoveKind::SelfVirtualize);
        }
        let (g, trace) = forest_case(&mut case_rng(seed, 0), &kinds);
        prop_assert_eq!(trace_failure(&g, &trace), None);
        let end = trace.iter().fold(g.clone(), |h, m| h.apply(m).unwrap());
        prop_assert!(forests_sv_equivalent(&g, &end).unwrap());
    }

    #[test]
    fn moves_preserve_the_type(seed in any::<u64>()) {
        let (g, trace) = forest_case(&mut case_rng(seed, 1), &MoveKind::WELDED);
        let end = trace.iter().fold(g.clone(), |h, m| h.apply(m).unwrap());
        prop_assert_eq!(g.graph_type(), end.graph_type());
    }

    #[test]
    fn derived_moves_match_their_expansion(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 2);
        let g = random_forest(&mut rng, 3, 6, 4);
        if let Some(m) = random_move(&mut rng, &g, &MoveKind::DERIVED) {
            let trace = expand_macro(&g, &m).unwrap();
            let folded = trace.iter().fold(g.clone(), |h, p| h.apply(p).unwrap());
            prop_assert_eq!(folded, g.apply(&m).unwrap());
        }
    }

    #[test]
    fn wgraph_text_round_trips(seed in any::<u64>()) {
        let g = random_forest(&mut case_rng(seed, 3), 3, 6, 4);
        let text = WGraphFile::new(g.clone()).render();
        let back = WGraphFile::parse(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert!(is_isomorphic(&back.graph, &g));
        prop_assert_eq!(milnor_invariants(&back.graph).unwrap(), milnor_invariants(&g).unwrap());
    }

    #[test]
    fn gauss_text_round_trips(seed in any::<u64>(), link in any::<bool>()) {
        let kind = if link { Kind::Link } else { Kind::StringLink };
        let d = random_diagram(&mut case_rng(seed, 4), kind, 3, 8);
        let text = render_gauss(&d);
        prop_assert_eq!(render_gauss(&parse_gauss(&text).unwrap()), text);
    }

    #[test]
    fn psi_xi_psi_is_psi(seed in any::<u64>()) {
        let d = random_diagram(&mut case_rng(seed, 5), Kind::StringLink, 2, 8);
        let g = psi_stringlink(&d).unwrap();
        let h = psi_stringlink(&xi_stringlink(&g).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>()) {
        let g = random_forest(&mut case_rng(seed, 6), 3, 5, 3);
        let nf = chen_milnor_normal_form(&g, &canonical_basing(&g)).unwrap();
        let again = chen_milnor_normal_form(&nf.graph, &canonical_basing(&nf.graph)).unwrap();
        prop_assert_eq!(&again.graph, &nf.graph);
        prop_assert!(again.trace.is_empty());
    }

    #[test]
    fn normal_forms_agree_across_moves(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 7);
        let g = random_forest(&mut rng, 3, 5, 3);
        if let Some(m) = random_move(&mut rng, &g, &MoveKind::WELDED) {
            let h = g.apply(&m).unwrap();
            let a = chen_milnor_normal_form(&g, &canonical_basing(&g)).unwrap();
            let b = chen_milnor_normal_form(&h, &canonical_basing(&h)).unwrap();
            prop_assert_eq!(milnor_invariants(&a.graph).unwrap(), milnor_invariants(&b.graph).unwrap());
        }
    }
}

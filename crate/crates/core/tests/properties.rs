use std::collections::BTreeSet;

use proptest::prelude::*;
use quasieq::finalg::{
    affine_map, automorphisms, decompose_holomorphism, is_holomorphism, linear_quasigroup,
    FiniteGroup, Perm,
};
use quasieq::krstic::{build_graph, is_isomorphic};
use quasieq::solver::{gemini_bank, gemini_refute, Compiled, GeminiVerdict};
use quasieq::{parse_equation, Equation, Term};

/// Builds a tree over `leaves` choosing split points from `seeds`.
fn tree(leaves: &[usize], seeds: &mut impl Iterator<Item = u32>, ops: &mut usize) -> Term {
    if leaves.len() == 1 {
        return Term::var(format!("v{}", leaves[0]));
    }
    let split = 1 + seeds.next().unwrap_or(0) as usize % (leaves.len() - 1);
    let left = tree(&leaves[..split], seeds, ops);
    let right = tree(&leaves[split..], seeds, ops);
    *ops += 1;
    Term::app(format!("g{ops}"), left, right)
}

/// Random quadratic equations with at least two leaves per side.
fn quadratic_equation() -> impl Strategy<Value = Equation> {
    (2usize..=4)
        .prop_flat_map(|k| {
            let leaves: Vec<usize> = (0..2 * k).map(|i| i / 2).collect();
            (
                Just(leaves).prop_shuffle(),
                2..=2 * k - 2,
                prop::collection::vec(any::<u32>(), 16),
            )
        })
        .prop_map(|(leaves, split, seeds)| {
            let mut seeds = seeds.into_iter();
            let mut ops = 0;
            let lhs = tree(&leaves[..split], &mut seeds, &mut ops);
            let rhs = tree(&leaves[split..], &mut seeds, &mut ops);
            Equation::new(lhs, rhs).expect("well-formed")
        })
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop::sample::select(vec![
        "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z2xZ4", "Z2xZ2xZ2", "Z8",
    ])
    .prop_map(|s| quasieq::finalg::make_group(&s.parse().unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_roundtrip(e in quadratic_equation()) {
        prop_assert_eq!(parse_equation(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn occurrence_total_is_twice_variable_count(e in quadratic_equation()) {
        prop_assert!(e.is_quadratic());
        let total: usize = e.var_profiles().unwrap().iter().map(|p| p.total_occurrences).sum();
        prop_assert_eq!(total, 2 * e.variables().len());
        if e.is_balanced() {
            prop_assert!(e.is_quadratic());
        }
    }

    #[test]
    fn profile_kinds_partition_variables(e in quadratic_equation()) {
        for p in e.var_profiles().unwrap() {
            prop_assert_eq!(p.lhs_occurrences + p.rhs_occurrences, p.total_occurrences);
            let linear = p.lhs_occurrences == 1 && p.rhs_occurrences == 1;
            prop_assert_eq!(linear, p.kind == quasieq::equation::VarKind::Linear);
        }
    }

    #[test]
    fn graph_edge_count_and_cubicity(e in quadratic_equation()) {
        let g = build_graph(&e).unwrap();
        let o = e.op_occurrences().len();
        let v = e.variables().len();
        prop_assert_eq!(g.edge_count(), v + (o - 2) + 1);
        prop_assert_eq!(2 * g.edge_count(), 3 * g.vertex_count());
        prop_assert!(g.is_connected());
    }

    #[test]
    fn graph_invariant_under_renaming(e in quadratic_equation(), shift in 0usize..5) {
        let renamed_vars = Equation {
            lhs: e.lhs.map_vars(&|v| format!("w{v}{shift}")),
            rhs: e.rhs.map_vars(&|v| format!("w{v}{shift}")),
        };
        let renamed = renamed_vars.map_ops(|op| format!("h{op}"));
        prop_assert!(is_isomorphic(&build_graph(&e).unwrap(), &build_graph(&renamed).unwrap()));
    }

    #[test]
    fn graph_invariant_under_single_duality(e in quadratic_equation(), pick in any::<prop::sample::Index>()) {
        let g = e.generalize();
        let ops = g.op_symbols();
        let op = pick.get(&ops).clone();
        let dual = g.dualize(&BTreeSet::from([op]));
        prop_assert!(is_isomorphic(&build_graph(&g).unwrap(), &build_graph(&dual).unwrap()));
    }

    #[test]
    fn gemini_verdict_consistent_with_bank(e in quadratic_equation()) {
        let c = Compiled::new(&e);
        let all_hold = gemini_bank()
            .iter()
            .all(|(_, t)| c.holds(t.order(), &vec![t; c.ops().len()]));
        let unknown = matches!(gemini_refute(&e).unwrap(), GeminiVerdict::GeminiUnknown { .. });
        prop_assert_eq!(all_hold, unknown);
    }

    #[test]
    fn linear_quasigroups_are_latin(g in small_group(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), c in any::<prop::sample::Index>(), reversed in any::<bool>()) {
        let auts = automorphisms(&g).unwrap();
        let t = linear_quasigroup(&g, a.get(&auts), c.index(g.order()), b.get(&auts), reversed).unwrap();
        prop_assert!(t.is_latin());
    }

    #[test]
    fn affine_maps_decompose(g in small_group(), a in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let auts = automorphisms(&g).unwrap();
        let phi = a.get(&auts);
        let k = k.index(g.order());
        let m = affine_map(phi, k, &g);
        prop_assert!(is_holomorphism(&m, &g));
        let parts = decompose_holomorphism(&m, &g).unwrap();
        prop_assert_eq!(&parts.phi1, phi);
        prop_assert_eq!(parts.k1, k);
    }
}

#[test]
fn automorphisms_form_a_group() {
    for spec in [
        "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2",
    ] {
        let g = quasieq::finalg::make_group(&spec.parse().unwrap()).unwrap();
        let auts: BTreeSet<Perm> = automorphisms(&g).unwrap().into_iter().collect();
        assert!(auts.contains(&Perm::identity(g.order())), "{spec}");
        for a in &auts {
            assert!(auts.contains(&a.inverse()), "{spec}");
            for b in &auts {
                assert!(auts.contains(&a.compose(b)), "{spec}");
            }
        }
    }
}

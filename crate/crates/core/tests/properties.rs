use nilham_core::builtin;
use nilham_core::group::prime_power;
use nilham_core::{
    build_subnormal_series, ham_path_2gen, pgroup_ham_cycle, verify_hamiltonian,
    CosetCayleyDigraph, GenSet, Group, SeriesMode, WalkKind,
};
use proptest::prelude::*;
use proptest::sample::select;

const NAMES: &[&str] = &[
    "z12",
    "q8",
    "d8",
    "d16",
    "q16",
    "m16",
    "h3",
    "product:z2,z4",
    "product:q8,z3",
    "product:d8,z6",
    "s3",
    "s4",
    "d10",
    "q12",
];

const P_GROUPS: &[&str] = &[
    "z8",
    "q8",
    "d8",
    "d16",
    "q16",
    "m16",
    "h3",
    "product:z2,z2,z2",
    "product:d8,z2",
];

const NILPOTENT: &[&str] = &[
    "z12",
    "q8",
    "d16",
    "h3",
    "product:q8,z3",
    "product:d8,z6",
    "product:z3,z6",
];

fn group(name: &str) -> Group {
    builtin::parse(name).unwrap()
}

/// A group name and up to four raw indices, reduced modulo the order later.
fn group_and_elems(
    names: &'static [&'static str],
) -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    (select(names), prop::collection::vec(0usize..10_000, 1..5))
}

fn distinct(g: &Group, raw: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = raw.iter().map(|x| x % g.order()).collect();
    let mut seen = Vec::new();
    v.retain(|x| {
        let new = !seen.contains(x);
        seen.push(*x);
        new
    });
    v
}

/// The distinct elements of `raw`, extended by a fixed generating set when
/// they do not generate `G` on their own.
fn generating(g: &Group, raw: &[usize]) -> Vec<usize> {
    let mut elems = distinct(g, raw);
    if !g.generated_subgroup(elems.iter().copied()).is_whole() {
        let all = GenSet::from_elements(g, &g.elements().collect::<Vec<_>>()).unwrap();
        let extra: Vec<usize> = g
            .reduce_generating_set(&all)
            .unwrap()
            .elements()
            .into_iter()
            .filter(|x| !elems.contains(x))
            .collect();
        elems.extend(extra);
    }
    elems
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_axioms((name, raw) in group_and_elems(NAMES)) {
        let g = group(name);
        let x: Vec<usize> = raw.iter().map(|r| r % g.order()).collect();
        let (a, b, c) = (x[0], x[x.len() / 2], x[x.len() - 1]);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.inv(g.mul(a, b)), g.mul(g.inv(b), g.inv(a)));
    }

    #[test]
    fn arc_forcing_is_generated_by_all_quotients((name, raw) in group_and_elems(NAMES)) {
        let g = group(name);
        let elems = distinct(&g, &raw);
        let s = GenSet::from_elements(&g, &elems).unwrap();
        let all = g.generated_subgroup(
            elems.iter().flat_map(|&x| elems.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(g.inv(x), y)),
        );
        prop_assert_eq!(g.arc_forcing_subgroup(&s).unwrap(), all);
    }

    #[test]
    fn prime_components_factor((name, raw) in group_and_elems(NILPOTENT)) {
        let g = group(name);
        let x = raw[0] % g.order();
        let primes = g.sylow_decomposition().primes();
        let parts: Vec<usize> = primes.iter().map(|&p| g.prime_component(x, p)).collect();
        prop_assert_eq!(g.product(parts.iter().copied()), x);
        for (i, &a) in parts.iter().enumerate() {
            let ord = g.element_order(a) as u64;
            prop_assert!(ord == 1 || prime_power(ord).is_some_and(|(p, _)| p == primes[i]));
            for &b in &parts {
                prop_assert_eq!(g.mul(a, b), g.mul(b, a));
            }
        }
    }

    #[test]
    fn reduction_is_minimal((name, raw) in group_and_elems(NAMES)) {
        let g = group(name);
        let s = GenSet::from_elements(&g, &generating(&g, &raw)).unwrap();
        let r = g.reduce_generating_set(&s).unwrap();
        prop_assert!(g.is_minimal_generating_set(&r));
        let positions: Vec<usize> = r.labels().iter().map(|l| s.position(l).unwrap()).collect();
        prop_assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn coset_arcs_ignore_representatives((name, raw) in group_and_elems(NAMES)) {
        let g = group(name);
        let elems = distinct(&g, &raw);
        let h = g.generated_subgroup([elems[0]]);
        let s = GenSet::from_elements(&g, &elems).unwrap();
        let d = CosetCayleyDigraph::new(&g, &h, &s).unwrap();
        let cosets = g.right_cosets(&h);
        for v in 0..d.vertex_count() {
            for &member in cosets.members(v) {
                for (e, &x) in s.elements().iter().enumerate() {
                    prop_assert_eq!(d.arc(v, e), d.vertex_of(g.mul(member, x)));
                }
            }
        }
    }

    #[test]
    fn connectivity_matches_generation((name, raw) in group_and_elems(NAMES)) {
        let g = group(name);
        let s = GenSet::from_elements(&g, &distinct(&g, &raw)).unwrap();
        let d = CosetCayleyDigraph::cayley(&g, &s).unwrap();
        prop_assert_eq!(d.is_strongly_connected(), g.generates(&s));
    }

    #[test]
    fn series_validate((name, raw) in group_and_elems(NILPOTENT)) {
        let g = group(name);
        let h = g.generated_subgroup(distinct(&g, &raw));
        let series = build_subnormal_series(&g, &h, SeriesMode::Nilpotent).unwrap();
        prop_assert!(series.validate(&g).is_ok());
        prop_assert_eq!(series.base(), &h);
        prop_assert_eq!(series.top(), &g.normal_closure(&h));
        for q in series.quotient_orders() {
            prop_assert!(prime_power(q as u64).is_some());
        }
    }

    #[test]
    fn pgroup_cycles_verify((name, raw) in group_and_elems(P_GROUPS)) {
        let g = group(name);
        let s = GenSet::from_elements(&g, &generating(&g, &raw)).unwrap();
        let w = pgroup_ham_cycle(&g, &s).unwrap();
        let d = CosetCayleyDigraph::cayley(&g, &s).unwrap();
        prop_assert!(verify_hamiltonian(&d, &w, WalkKind::Cycle));
        prop_assert_eq!(pgroup_ham_cycle(&g, &s).unwrap(), w);
    }

    #[test]
    fn two_gen_matches_generation((name, raw) in group_and_elems(NILPOTENT)) {
        let g = group(name);
        let elems = distinct(&g, &raw);
        prop_assume!(elems.len() >= 2);
        let s = GenSet::from_elements(&g, &elems[..2]).unwrap();
        match ham_path_2gen(&g, &s) {
            Ok(w) => {
                let d = CosetCayleyDigraph::cayley(&g, &s).unwrap();
                prop_assert!(verify_hamiltonian(&d, &w, WalkKind::Path));
            }
            Err(e) => {
                prop_assert_eq!(e.kind(), "NotGenerating");
                prop_assert!(!g.generates(&s));
            }
        }
    }
}

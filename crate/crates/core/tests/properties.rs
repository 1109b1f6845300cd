use std::cmp::Ordering;
use std::collections::BTreeSet;

use caucal::funseq::{
    greedy_min_path, path_measure, resolve_path, step_down_reaches, FunSeqSystem, PathCode,
    ShiftedSystem, StandardSystem, DEFAULT_STEP_CAP,
};
use caucal::graph::{Regex, Symbol};
use caucal::hopda::Pds;
use caucal::lextree::LexTree;
use caucal::ordinal::Ordinal;
use caucal::types::{compose_relations, StateRelation};
use proptest::prelude::*;

/// Coefficients `c[e]` of `ω^e`, for ordinals below `ω^5`.
type Coefs = [u64; 5];

fn coefs() -> impl Strategy<Value = Coefs> {
    prop::array::uniform5(0u64..4)
}

fn to_ordinal(c: &Coefs) -> Ordinal {
    let terms: Vec<(u64, u64)> = (0..5).rev().map(|e| (e as u64, c[e])).collect();
    Ordinal::from_nat_terms(&terms)
}

fn cmp_coefs(a: &Coefs, b: &Coefs) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// `a + b`: the terms of `a` below the leading exponent of `b` are absorbed.
fn add_coefs(a: &Coefs, b: &Coefs) -> Coefs {
    let Some(top) = (0..5).rev().find(|&e| b[e] > 0) else {
        return *a;
    };
    let mut out = *b;
    out[top] += a[top];
    out[top + 1..].copy_from_slice(&a[top + 1..]);
    out
}

/// Ordinals with ordinal exponents, up to two levels of nesting.
fn nested_ordinal() -> impl Strategy<Value = Ordinal> {
    let leaf = (0u64..5).prop_map(Ordinal::nat);
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop::collection::vec((inner, 1u64..4), 0..3).prop_map(|terms| {
            terms
                .into_iter()
                .fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::term(e, c)))
        })
    })
}

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        Just(Symbol::fwd("a")),
        Just(Symbol::fwd("b")),
        Just(Symbol::inv("a")),
        Just(Symbol::inv("b")),
    ]
}

fn regex() -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        symbol().prop_map(Regex::sym),
        Just(Regex::Epsilon),
        Just(Regex::Empty),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Regex::Concat),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Regex::Alt),
            inner.clone().prop_map(Regex::star),
            inner.clone().prop_map(Regex::plus),
            inner.prop_map(|r| Regex::Opt(Box::new(r))),
        ]
    })
}

/// End positions reachable by matching `r` against `w` from each start.
fn ends(r: &Regex, w: &[Symbol], starts: &BTreeSet<usize>) -> BTreeSet<usize> {
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => starts.clone(),
        Regex::Sym(s) => starts
            .iter()
            .filter(|&&i| w.get(i) == Some(s))
            .map(|i| i + 1)
            .collect(),
        Regex::Concat(xs) => xs.iter().fold(starts.clone(), |acc, x| ends(x, w, &acc)),
        Regex::Alt(xs) => xs.iter().flat_map(|x| ends(x, w, starts)).collect(),
        Regex::Opt(x) => {
            let mut out = starts.clone();
            out.extend(ends(x, w, starts));
            out
        }
        Regex::Star(x) | Regex::Plus(x) => {
            let mut out = if matches!(r, Regex::Star(_)) {
                starts.clone()
            } else {
                BTreeSet::new()
            };
            let mut frontier = ends(x, w, starts);
            while !frontier.is_subset(&out) {
                out.extend(frontier.iter().copied());
                frontier = ends(x, w, &frontier);
            }
            out
        }
    }
}

fn matches(r: &Regex, w: &[Symbol]) -> bool {
    ends(r, w, &BTreeSet::from([0])).contains(&w.len())
}

fn store(level: usize) -> BoxedStrategy<Pds> {
    if level == 0 {
        return prop_oneof![Just("x"), Just("y"), Just("z")]
            .prop_map(Pds::symbol)
            .boxed();
    }
    prop::collection::vec(store(level - 1), 1..4)
        .prop_map(move |items| Pds::Seq { level, items })
        .boxed()
}

fn relation() -> impl Strategy<Value = StateRelation> {
    prop::collection::btree_set((0usize..4, 0usize..4), 0..8)
}

proptest! {
    #[test]
    fn compare_matches_coefficients(a in coefs(), b in coefs()) {
        prop_assert_eq!(to_ordinal(&a).cmp(&to_ordinal(&b)), cmp_coefs(&a, &b));
    }

    #[test]
    fn add_matches_coefficients(a in coefs(), b in coefs()) {
        prop_assert_eq!(to_ordinal(&a).add(&to_ordinal(&b)), to_ordinal(&add_coefs(&a, &b)));
    }

    #[test]
    fn add_is_associative_and_monotone(
        a in nested_ordinal(), b in nested_ordinal(), c in nested_ordinal()
    ) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a <= a.add(&b));
        prop_assert!(b <= a.add(&b));
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
        }
    }

    #[test]
    fn display_parse_roundtrip(a in nested_ordinal()) {
        let back: Ordinal = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn fundamental_sequences_increase_below_the_limit(a in nested_ordinal(), n in 0u64..12) {
        prop_assume!(a.is_limit());
        let st = (StandardSystem.fundamental(&a, n).unwrap(), StandardSystem.fundamental(&a, n + 1).unwrap());
        let sh = (ShiftedSystem.fundamental(&a, n).unwrap(), ShiftedSystem.fundamental(&a, n + 1).unwrap());
        for (lo, hi) in [st, sh] {
            prop_assert!(lo < hi && hi < a);
        }
    }

    #[test]
    fn greedy_paths_resolve_to_the_target(a in coefs(), b in coefs()) {
        let (a, b) = (to_ordinal(&a), to_ordinal(&b));
        prop_assume!(b < a);
        let p = greedy_min_path(&StandardSystem, &a, &b, DEFAULT_STEP_CAP).unwrap();
        prop_assert_eq!(resolve_path(&StandardSystem, &a, &p).unwrap(), b);
        prop_assert_eq!(path_measure(&p), p.0.iter().sum::<u64>() + p.0.len() as u64);
    }

    #[test]
    fn standard_sequences_are_step_down_coherent(a in coefs(), n in 0u64..6) {
        let a = to_ordinal(&a);
        prop_assume!(a.is_limit());
        let lo = a.standard_fundamental(n).unwrap();
        let hi = a.standard_fundamental(n + 1).unwrap();
        prop_assert!(step_down_reaches(&StandardSystem, &hi, &lo, DEFAULT_STEP_CAP).unwrap());
    }

    #[test]
    fn pop_undoes_push(
        (level, st) in (1usize..=4).prop_flat_map(|l| (Just(l), store(l))),
        a in "[xyz]",
    ) {
        for k in 1..=level {
            let pushed = st.push(k, &a).unwrap();
            prop_assert!(pushed.is_proper());
            prop_assert_eq!(pushed.level(), level);
            prop_assert_eq!(pushed.pop(k).unwrap(), st.clone());
            prop_assert_eq!(pushed.top_symbol(), Some(a.as_str()));
        }
    }

    #[test]
    fn regex_compiles_to_its_language(r in regex(), w in prop::collection::vec(symbol(), 0..6)) {
        prop_assert_eq!(r.compile().accepts(&w), matches(&r, &w));
    }

    #[test]
    fn regex_inverse_reverses_and_inverts(r in regex(), w in prop::collection::vec(symbol(), 0..6)) {
        let flipped: Vec<Symbol> = w.iter().rev().map(Symbol::inverse).collect();
        prop_assert_eq!(matches(&r.inverse(), &flipped), matches(&r, &w));
        prop_assert_eq!(r.inverse().compile().accepts(&flipped), matches(&r, &w));
    }

    #[test]
    fn regex_display_parses_back_to_the_same_language(
        r in regex(), w in prop::collection::vec(symbol(), 0..6)
    ) {
        let back: Regex = r.to_string().parse().unwrap();
        prop_assert_eq!(matches(&back, &w), matches(&r, &w));
    }

    #[test]
    fn relation_composition_is_associative(r in relation(), s in relation(), t in relation()) {
        prop_assert_eq!(
            compose_relations(&compose_relations(&r, &s), &t),
            compose_relations(&r, &compose_relations(&s, &t))
        );
    }

    #[test]
    fn lex_embedding_is_an_order_isomorphism(
        k in 1usize..=4,
        u in prop::collection::vec(0u64..6, 4),
        v in prop::collection::vec(0u64..6, 4),
    ) {
        let tree = LexTree::new(k).unwrap();
        let u = tree.vertex(&u[..k]).unwrap();
        let v = tree.vertex(&v[..k]).unwrap();
        let (ou, ov) = (tree.vertex_to_ordinal(&u).unwrap(), tree.vertex_to_ordinal(&v).unwrap());
        prop_assert_eq!(tree.lex_compare(&u, &v).unwrap(), ou.cmp(&ov));
        prop_assert_eq!(tree.ordinal_to_vertex(&ou).unwrap(), u.clone());
        prop_assert_eq!(tree.is_limit_vertex(&u).unwrap(), ou.is_limit());
        let shown = u.to_string();
        prop_assert_eq!(tree.parse_vertex(&shown).unwrap(), u);
    }

    #[test]
    fn path_codes_roundtrip_through_text(p in prop::collection::vec(0u64..20, 0..6)) {
        let p = PathCode(p);
        let back: PathCode = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}

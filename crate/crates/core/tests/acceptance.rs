//! One test per acceptance criterion. Each prints a `PASS`/`FAIL` line
//! straight to stdout, so the verdicts show even when output is captured.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use caucal::fgh::{
    beth, check_coherent_dom, domination_experiment, fgh_eval_u64, EvalBudget, Verdict,
};
use caucal::funseq::{
    check_bachmann, greedy_min_path, least_enumerated_path, ordinals_below_omega_power,
    ShiftedSystem, StandardSystem, TableSystem, DEFAULT_STEP_CAP,
};
use caucal::graph::{regular_path_query, Color, ColoredGraph, ExploreBound, Symbol};
use caucal::hopda::{
    accepted_words, contract_system, pumping_threshold, run_word, HopdaError, Pds, PushdownSystem,
};
use caucal::lextree::{
    bachmannize, construct_cofinal, BachmannCofinal, CofinalRelation, ConstructedCofinal,
    LexTree, LexVertex, OrderAutomaton, TreeSystem,
};
use caucal::automaton::WordAutomaton;
use caucal::ordinal::Ordinal;
use caucal::types::{compose_collinear, compose_forked, pair_type, VertexPairType};
use num_bigint::BigUint;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{verdict} criterion {n}: {detail}").expect("stdout");
    out.flush().expect("stdout");
    assert!(ok, "criterion {n}: {detail}");
}

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name);
    std::fs::read_to_string(&path).expect("fixture")
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

/// Coefficients of `ω³·c[3] + ω²·c[2] + ω·c[1] + c[0]`.
type Cnf4 = [u64; 4];

fn cnf_to_ordinal(c: &Cnf4) -> Ordinal {
    let terms: Vec<(u64, u64)> = (0..4).rev().map(|e| (e as u64, c[e])).collect();
    Ordinal::from_nat_terms(&terms)
}

fn ordinal_to_cnf(o: &Ordinal) -> Option<Cnf4> {
    let mut c = [0; 4];
    for t in o.terms() {
        let e = t.exponent.as_nat()? as usize;
        if e >= 4 {
            return None;
        }
        c[e] = t.coefficient;
    }
    Some(c)
}

/// `s(α + ω^{e}, n) = α + ω^{e−1}·n` on the coefficient array.
fn cnf_fundamental(c: &Cnf4, n: u64) -> Cnf4 {
    let e = (1..4).find(|&e| c[e] > 0).expect("a limit");
    let mut out = *c;
    out[e] -= 1;
    out[e - 1] += n;
    out
}

#[test]
fn criterion_01_standard_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut sampled = 0;
    while sampled < 100 {
        let c: Cnf4 = [0, rng.random_range(0..=5), rng.random_range(0..=5), rng.random_range(0..=5)];
        if c == [0; 4] {
            continue;
        }
        sampled += 1;
        let a = cnf_to_ordinal(&c);
        for n in 0..=8 {
            let got = a.standard_fundamental(n).expect("limit");
            let want = cnf_fundamental(&c, n);
            if ordinal_to_cnf(&got) != Some(want) {
                mismatches.push(format!("s({a},{n}) = {got}"));
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        mismatches.is_empty() && elapsed < Duration::from_secs(1),
        format!("100 limits x 9 indices, {} mismatches {:?}, {}", mismatches.len(), mismatches, secs(elapsed)),
    );
}

#[test]
fn criterion_02_bachmann_suite() {
    let start = Instant::now();
    let limits: Vec<Ordinal> = ordinals_below_omega_power(3, 4)
        .into_iter()
        .filter(Ordinal::is_limit)
        .collect();
    let standard = check_bachmann(&StandardSystem, &limits, 6).expect("standard system");
    let table = TableSystem::parse(&data("counterexample.table")).expect("table parses");
    let small: Vec<Ordinal> = ordinals_below_omega_power(3, 2)
        .into_iter()
        .filter(Ordinal::is_limit)
        .collect();
    let broken = check_bachmann(&table, &small, 3).expect("table system");
    let elapsed = start.elapsed();
    report(
        2,
        standard.holds() && !broken.holds() && elapsed < Duration::from_secs(5),
        format!(
            "{} limits, {} triples, {} violations; counterexample table {} violations; {}",
            limits.len(),
            standard.checked,
            standard.violations.len(),
            broken.violations.len(),
            secs(elapsed)
        ),
    );
}

#[test]
fn criterion_03_greedy_minimality() {
    let start = Instant::now();
    let all = ordinals_below_omega_power(3, 3);
    let mut pairs = 0;
    let mut beyond_cap = 0;
    let mut mismatches = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[..i] {
            pairs += 1;
            let greedy = greedy_min_path(&StandardSystem, a, b, DEFAULT_STEP_CAP).expect("b < a");
            let least = least_enumerated_path(&StandardSystem, a, b, 40).expect("enumeration");
            match least.as_ref() {
                Some(best) if best.measure() == greedy.measure() => {}
                // nothing within the cap: greedy must lie beyond it too
                None if greedy.measure() > 40 => beyond_cap += 1,
                other => mismatches.push(format!(
                    "{a} -> {b}: greedy {greedy} vs {}",
                    other.map_or("none".to_string(), |p| p.to_string())
                )),
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        mismatches.is_empty() && elapsed < Duration::from_secs(30),
        format!(
            "{pairs} pairs ({beyond_cap} with least measure above 40), {} mismatches {:?}, {}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            secs(elapsed)
        ),
    );
}

#[test]
fn criterion_04_fgh_exactness() {
    let budget = EvalBudget::default();
    let eval = |a: Ordinal, x: u64| -> BigUint {
        fgh_eval_u64(&StandardSystem, &a, x, budget)
            .expect("evaluates")
            .exact()
            .expect("within budget")
            .clone()
    };
    let mut failures = Vec::new();
    for x in 0..=100u64 {
        if eval(Ordinal::nat(0), x) != BigUint::from(x + 1) {
            failures.push(format!("F0({x})"));
        }
    }
    let iterate = |f: &dyn Fn(BigUint) -> BigUint, x: u64| -> BigUint {
        (0..x).fold(BigUint::from(x), |v, _| f(v))
    };
    let f0 = |v: BigUint| v + 1u32;
    let f1_lit = |v: BigUint| {
        let n: u64 = v.try_into().expect("small");
        iterate(&f0, n)
    };
    for x in 0..=16u64 {
        let f1 = eval(Ordinal::nat(1), x);
        if f1 != BigUint::from(2 * x) || f1 != iterate(&f0, x) {
            failures.push(format!("F1({x}) = {f1}"));
        }
        let f2 = eval(Ordinal::nat(2), x);
        if f2 != BigUint::from(x) << x || f2 != iterate(&f1_lit, x) {
            failures.push(format!("F2({x}) = {f2}"));
        }
    }
    let fw2 = eval(Ordinal::omega(), 2);
    if fw2 != BigUint::from(8u32) {
        failures.push(format!("F_w(2) = {fw2}"));
    }
    report(
        4,
        failures.is_empty(),
        format!("F0 x<=100, F1 and F2 x<=16, F_w(2) = {fw2}; failures {failures:?}"),
    );
}

#[test]
fn criterion_05_coherent_domination() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = EvalBudget::new(2_000_000, 1 << 16).expect("budget");
    let mut pairs = Vec::new();
    while pairs.len() < 50 {
        let a = Ordinal::from_nat_terms(&[(1, rng.random_range(0..=3)), (0, rng.random_range(0..=4))]);
        let b = Ordinal::from_nat_terms(&[(1, rng.random_range(0..=3)), (0, rng.random_range(0..=4))]);
        if b < a {
            pairs.push((a, b));
        }
    }
    let (mut exact, mut inconclusive, mut violations) = (0, 0, Vec::new());
    for (a, b) in &pairs {
        let p = greedy_min_path(&StandardSystem, a, b, DEFAULT_STEP_CAP).expect("b < a");
        let m = p.measure();
        let xs: Vec<u64> = (m..=m + 3).collect();
        let rep = check_coherent_dom(&StandardSystem, a, b, &xs, budget).expect("evaluates");
        assert!(rep.skipped.is_empty() && rep.rows.len() == 4);
        inconclusive += rep.inconclusive().count();
        exact += rep.rows.len() - rep.inconclusive().count();
        violations.extend(rep.violations().map(|r| format!("{a} vs {b} at {}", r.x)));
    }
    report(
        5,
        violations.is_empty() && exact > 0,
        format!(
            "50 pairs, {exact} exact points, {inconclusive} beyond budget, {} violations {:?}",
            violations.len(),
            violations
        ),
    );
}

#[test]
fn criterion_06_shifted_domination() {
    const CROSSOVER: u64 = 2;
    let budget = EvalBudget::new(5_000_000, 1 << 16).expect("budget");
    let all = ordinals_below_omega_power(3, 2);
    let xs = [2, 3, 4];
    let (mut pairs, mut greater, mut inconclusive, mut counter) = (0, 0, 0, Vec::new());
    for (i, alpha) in all.iter().enumerate() {
        for beta in &all[..i] {
            pairs += 1;
            let table = domination_experiment(&StandardSystem, &ShiftedSystem, beta, alpha, &xs, budget)
                .expect("evaluates");
            for row in &table.rows {
                match row.verdict {
                    Verdict::Greater => greater += 1,
                    Verdict::Inconclusive => inconclusive += 1,
                    Verdict::NotGreater => counter.push(format!("{alpha} vs {beta} at {}", row.x)),
                }
            }
            counter.extend(
                table
                    .counter_verdicts_from(CROSSOVER)
                    .iter()
                    .filter(|r| r.x < CROSSOVER)
                    .map(|r| format!("{alpha} vs {beta} at {}", r.x)),
            );
        }
    }
    report(
        6,
        counter.is_empty() && greater > 0,
        format!(
            "{pairs} pairs at x in {xs:?} (crossover {CROSSOVER}): {greater} greater, {inconclusive} beyond budget, {} counter-verdicts {:?}",
            counter.len(),
            counter.iter().take(5).collect::<Vec<_>>()
        ),
    );
}

fn random_store(rng: &mut ChaCha8Rng, level: usize) -> Pds {
    if level == 0 {
        return Pds::symbol(["a", "b", "c"][rng.random_range(0..3)]);
    }
    let len = rng.random_range(1..=5);
    Pds::Seq {
        level,
        items: (0..len).map(|_| random_store(rng, level - 1)).collect(),
    }
}

#[test]
fn criterion_07_pds_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let level = rng.random_range(1..=4);
        let store = random_store(&mut rng, level);
        assert!(store.is_proper());
        let k = rng.random_range(1..=level);
        let a = ["a", "b", "c"][rng.random_range(0..3)];
        match store.push(k, a) {
            Ok(pushed) => {
                if !pushed.is_proper() || pushed.pop(k).as_ref() != Ok(&store) {
                    failures.push(format!("push{k}({a}) on {store}"));
                }
            }
            Err(e) => failures.push(format!("push{k}({a}) on {store}: {e}")),
        }
        match store.pop(k) {
            Ok(popped) if !popped.is_proper() => failures.push(format!("pop{k} on {store}")),
            Ok(_) | Err(HopdaError::WouldBeImproper { .. }) => {}
            Err(e) => failures.push(format!("pop{k} on {store}: {e}")),
        }
    }
    report(7, failures.is_empty(), format!("1000 stores, {} failures {:?}", failures.len(), failures));
}

#[test]
fn criterion_08_epsilon_contraction() {
    let sys = PushdownSystem::parse(&data("anbn.pds")).expect("anbn parses");
    let contracted = contract_system(&sys, ExploreBound::new(100_000, 12)).expect("no mixed ε");
    // a contracted vertex accepts when its ε-closure reaches state f
    let from_graph: BTreeSet<String> = accepted_words(&contracted, 10, |v| {
        contracted.closures[v].iter().any(|c| c.state == "f")
    })
        .into_iter()
        .map(|w| w.join(""))
        .collect();

    let expected: BTreeSet<String> = (1..=5).map(|n| "a".repeat(n) + &"b".repeat(n)).collect();
    // every word over {a, b} of length at most 10, run through the system
    let mut simulated = BTreeSet::new();
    let mut words = vec![String::new()];
    for _ in 0..10 {
        words = words
            .iter()
            .flat_map(|w| [format!("{w}a"), format!("{w}b")])
            .collect();
        for w in &words {
            let letters: Vec<&str> = w.split("").filter(|s| !s.is_empty()).collect();
            let reached = run_word(&sys, &letters, 10_000).expect("finite run");
            if reached.iter().any(|c| c.state == "f") {
                simulated.insert(w.clone());
            }
        }
    }

    let mixed = PushdownSystem::parse(&data("mixed.pds")).expect("mixed parses");
    let rejected = matches!(
        contract_system(&mixed, ExploreBound::default()),
        Err(HopdaError::MixedEpsilon(_))
    );
    report(
        8,
        from_graph == expected && simulated == expected && rejected,
        format!(
            "contracted {:?}, simulated {} words, mixed system rejected: {rejected}",
            from_graph,
            simulated.len()
        ),
    );
}

/// A rooted tree on `0..n` with parents below children.
struct Tree {
    parent: Vec<Option<(usize, &'static str)>>,
}

impl Tree {
    fn random(rng: &mut ChaCha8Rng) -> Tree {
        let n = rng.random_range(2..=10);
        let mut parent = vec![None];
        for v in 1..n {
            parent.push(Some((rng.random_range(0..v), ["a", "b"][rng.random_range(0..2)])));
        }
        Tree { parent }
    }

    fn graph(&self) -> ColoredGraph<usize> {
        let mut g = ColoredGraph::with_colors([Color::from("a"), Color::from("b")]);
        g.add_vertex(0);
        for (v, p) in self.parent.iter().enumerate() {
            if let Some((u, c)) = p {
                g.add_edge(*u, Color::from(*c), v);
            }
        }
        g
    }

    fn in_cone(&self, root: usize, mut v: usize) -> bool {
        loop {
            if v == root {
                return true;
            }
            match self.parent[v] {
                Some((u, _)) => v = u,
                None => return false,
            }
        }
    }

    /// Moves along the inverse closure: `(symbol, target)` for every edge.
    fn moves(&self, v: usize) -> Vec<((&'static str, bool), usize)> {
        let mut out = Vec::new();
        if let Some((u, c)) = self.parent[v] {
            out.push(((c, true), u));
        }
        for (w, p) in self.parent.iter().enumerate() {
            if let Some((u, c)) = p {
                if *u == v {
                    out.push(((*c, false), w));
                }
            }
        }
        out
    }
}

type Instr = (usize, (&'static str, bool), usize);

/// Type of `(v1, v2)` by breadth-first search of the product of the tree's
/// inverse closure and the automaton.
fn product_type(tree: &Tree, instrs: &[Instr], states: usize, v1: usize, v2: usize) -> VertexPairType {
    let switches = |from: usize, to: usize| {
        let mut rel = BTreeSet::new();
        for q in 0..states {
            let mut seen = BTreeSet::from([(from, q)]);
            let mut queue = VecDeque::from([(from, q)]);
            while let Some((v, s)) = queue.pop_front() {
                for (sym, w) in tree.moves(v) {
                    for &(p, isym, t) in instrs {
                        if p == s && isym == sym && seen.insert((w, t)) {
                            queue.push_back((w, t));
                        }
                    }
                }
            }
            rel.extend(seen.into_iter().filter(|&(v, _)| v == to).map(|(_, t)| (q, t)));
        }
        rel
    };
    VertexPairType {
        forward: switches(v1, v2),
        backward: switches(v2, v1),
    }
}

#[test]
fn criterion_09_type_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let start = Instant::now();
    let symbols = [("a", false), ("b", false), ("a", true), ("b", true)];
    let (mut collinear, mut forked, mut mismatches) = (0, 0, Vec::new());
    let mut instance = 0;
    while instance < 200 {
        let tree = Tree::random(&mut rng);
        let n = tree.parent.len();
        let states = rng.random_range(1..=4);
        let instrs: Vec<Instr> = (0..rng.random_range(1..=8))
            .map(|_| {
                (
                    rng.random_range(0..states),
                    symbols[rng.random_range(0..4)],
                    rng.random_range(0..states),
                )
            })
            .collect();
        let mut aut = WordAutomaton::with_states(states);
        for &(p, (c, inv), q) in &instrs {
            let sym = if inv { Symbol::inv(c) } else { Symbol::fwd(c) };
            aut.add_instruction(p, sym, q);
        }
        let g = tree.graph();
        let ty = |u: usize, v: usize| pair_type(&aut, &g, &u, &v, 1000).expect("small tree");
        let oracle = |u: usize, v: usize| product_type(&tree, &instrs, states, u, v);
        let check = |mismatches: &mut Vec<String>, what: String, got: VertexPairType, want: VertexPairType| {
            if got != want {
                mismatches.push(format!("{what}: {got} vs {want}"));
            }
        };

        // collinear: v1 inside the cone of v2, v3 outside it
        let v2 = rng.random_range(1..n);
        let inside: Vec<usize> = (0..n).filter(|&v| tree.in_cone(v2, v)).collect();
        let outside: Vec<usize> = (0..n).filter(|&v| !tree.in_cone(v2, v)).collect();
        let v1 = inside[rng.random_range(0..inside.len())];
        let v3 = outside[rng.random_range(0..outside.len())];
        check(&mut mismatches, format!("pair ({v1},{v2})"), ty(v1, v2), oracle(v1, v2));
        let composed = compose_collinear(&ty(v1, v2), &ty(v2, v3));
        check(&mut mismatches, format!("collinear {v1},{v2},{v3}"), composed, oracle(v1, v3));
        collinear += 1;

        // forked: disjoint cones of v1 and v2
        let disjoint: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !tree.in_cone(a, b) && !tree.in_cone(b, a))
            .collect();
        if let Some(&(f1, f2)) = disjoint.get(rng.random_range(0..disjoint.len().max(1))) {
            let c1: Vec<usize> = (0..n).filter(|&v| tree.in_cone(f1, v)).collect();
            let c2: Vec<usize> = (0..n).filter(|&v| tree.in_cone(f2, v)).collect();
            let u1 = c1[rng.random_range(0..c1.len())];
            let u2 = c2[rng.random_range(0..c2.len())];
            let composed = compose_forked(&ty(f1, f2), &ty(f1, u1), &ty(f2, u2));
            check(&mut mismatches, format!("forked {f1},{f2} to {u1},{u2}"), composed, oracle(u1, u2));
            forked += 1;
        }
        instance += 1;
    }
    let elapsed = start.elapsed();
    report(
        9,
        mismatches.is_empty() && forked > 0 && elapsed < Duration::from_secs(60),
        format!(
            "200 instances, {collinear} collinear and {forked} forked compositions, {} mismatches {:?}, {}",
            mismatches.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            secs(elapsed)
        ),
    );
}

#[test]
fn criterion_10_lexicographic_presentation() {
    let mut details = Vec::new();
    let mut mismatches = 0;
    for k in 1..=3 {
        let tree = LexTree::new(k).expect("arity");
        let graph = tree.box_graph(5);
        let aut = tree.order_language().compile();
        let vertices = tree.box_vertices(5);
        let bound = ExploreBound::new(usize::MAX, usize::MAX);
        let mut pairs = 0;
        for u in &vertices {
            let reached: BTreeSet<LexVertex> = regular_path_query(&graph, u, &aut, bound)
                .expect("vertex in box")
                .targets()
                .cloned()
                .collect();
            for v in &vertices {
                pairs += 1;
                let less = tree.lex_compare(u, v).expect("same arity") == std::cmp::Ordering::Less;
                if reached.contains(v) != less {
                    mismatches += 1;
                }
            }
        }
        details.push(format!("k={k}: {pairs} pairs"));
    }
    report(10, mismatches == 0, format!("{}, {mismatches} mismatches", details.join(", ")));
}

#[test]
fn criterion_11_cofinal_construction() {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut failures: Vec<String> = Vec::new();
    for k in 2..=3 {
        let tree = LexTree::new(k).expect("arity");
        let order = OrderAutomaton::for_tree(&tree);
        let box4 = tree.box_vertices(4);
        let limits: Vec<LexVertex> = box4
            .iter()
            .filter(|v| tree.is_limit_vertex(v).expect("in tree"))
            .cloned()
            .collect();
        let base = TreeSystem::new(ConstructedCofinal::new(tree, order.clone()));
        let refined_sys = TreeSystem::new(BachmannCofinal::new(
            ConstructedCofinal::new(tree, order.clone()),
            order.clone(),
        ));
        let refined = refined_sys.relation();
        for v0 in &limits {
            let built = construct_cofinal(&tree, v0, 8, &order).expect("limit");
            let thin = bachmannize(refined, v0, 6).expect("limit");
            for (name, seq) in [("base", &built), ("refined", &thin)] {
                if !seq.windows(2).all(|w| w[0] < w[1]) || seq.iter().any(|e| e >= v0) {
                    failures.push(format!("{name} sequence of {v0} not increasing below it: {seq:?}"));
                }
            }
            let last = thin.last().expect("non-empty");
            let mut n = 8;
            let long = loop {
                let e = base.relation().entries(v0, n).expect("limit");
                if e.last().is_some_and(|x| x >= last) {
                    break e;
                }
                n *= 2;
                assert!(n < 1 << 14, "base sequence of {v0} never reaches {last}");
            };
            if thin.iter().any(|e| !long.contains(e)) {
                failures.push(format!("refined entries of {v0} not among the base entries"));
            }
            for w in box4.iter().filter(|w| *w < v0) {
                for (name, found) in [
                    ("base", base.cofinal_witness(v0, w, 4096)),
                    ("refined", refined_sys.cofinal_witness(v0, w, 4096)),
                ] {
                    if !matches!(found, Ok(Some(_))) {
                        failures.push(format!("{name} sequence of {v0} never passes {w}"));
                    }
                }
            }
        }
        // a wider sample than required, so more triples meet the premise
        let wide: Vec<LexVertex> = tree
            .box_vertices(6)
            .into_iter()
            .filter(|v| tree.is_limit_vertex(v).expect("in tree"))
            .collect();
        let bachmann = check_bachmann(&refined_sys, &wide, 8).expect("limits");
        failures.extend(bachmann.violations.iter().map(|v| format!("bachmann {v:?}")));
        details.push(format!(
            "k={k}: {} limits, {} bachmann triples over {} limits",
            limits.len(),
            bachmann.checked,
            wide.len()
        ));
    }
    report(
        11,
        failures.is_empty(),
        format!(
            "{}; {} failures {:?}; {}",
            details.join(", "),
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>(),
            secs(start.elapsed())
        ),
    );
}

#[test]
fn criterion_12_pumping_arithmetic() {
    let bits = 1 << 16;
    let p1 = pumping_threshold(2, 1, 3, bits).expect("small");
    let p2 = pumping_threshold(1, 3, 2, bits).expect("small");
    let b = beth(2, &BigUint::from(3u32), bits).expect("small");
    let want: BTreeMap<&str, u64> = BTreeMap::from([("p(2,1,3)", 1 << 6), ("p(1,3,2)", 8), ("beth(2,3)", 1 << (1 << 3))]);
    let got: BTreeMap<&str, BigUint> = BTreeMap::from([("p(2,1,3)", p1), ("p(1,3,2)", p2), ("beth(2,3)", b)]);
    let ok = want.iter().all(|(k, v)| got[k] == BigUint::from(*v));
    report(12, ok, format!("{got:?}"));
}

//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any fails.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cutideal::calculus::{
    collapse_ideal, collapse_label_map, generator_level_collapse, sample_graph,
    sample_multiplicities, union_ideal, verify_matrices,
};
use cutideal::format::parse_binomial;
use cutideal::partition::all_partitions;
use cutideal::toric::membership_in;
use cutideal::{
    exponent_matrix, ideal_equal, toric_ideal, Binomial, Edge, Graph, Ideal, TermOrder,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ideal(n: usize, gens: &[&str]) -> Ideal {
    let gens = gens.iter().map(|g| parse_binomial(g, n).unwrap()).collect();
    Ideal::new(n, gens, TermOrder::DegRevLex).unwrap()
}

fn binomials(n: usize, gens: &[&str]) -> Vec<Binomial> {
    gens.iter().map(|g| parse_binomial(g, n).unwrap()).collect()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (u8, String) {
    let mut argv = vec!["cutideal".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cutideal::cli::run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn assert_equal(a: &Ideal, b: &Ideal, what: &str) {
    assert!(ideal_equal(a, b).unwrap(), "{what}:\n{a}--- vs ---\n{b}");
}

const P4: [&str; 9] = [
    "r{13|24}*r{12|34} - r{2|134}*r{3|124}",
    "r{4|123}*r{12|34} - r{1234|}*r{3|124}",
    "r{1|234}*r{3|124} - r{12|34}*r{14|23}",
    "r{1|234}*r{13|24} - r{2|134}*r{14|23}",
    "r{1|234}*r{4|123} - r{1234|}*r{14|23}",
    "r{4|123}*r{13|24} - r{14|23}*r{3|124}",
    "r{1|234}*r{3|124} - r{4|123}*r{2|134}",
    "r{1|234}*r{3|124} - r{13|24}*r{1234|.}",
    "r{1|234}*r{12|34} - r{1234|}*r{2|134}",
];

const P3_K2_COMPOSED: [&str; 9] = [
    "r{24|135}*r{354|12} - r{2|1354}*r{35|124}",
    "r{4|1235}*r{12|345} - r{12345|}*r{35|124}",
    "r{1|2354}*r{35|124} - r{12|354}*r{14|235}",
    "r{1|2354}*r{135|24} - r{2|1354}*r{14|235}",
    "r{1|2354}*r{4|1235} - r{12354|}*r{14|235}",
    "r{1|2345}*r{345|12} - r{12345|.}*r{2|1345}",
    "r{4|1235}*r{135|24} - r{14|235}*r{35|124}",
    "r{1|2345}*r{35|124} - r{4|1235}*r{2|1345}",
    "r{1|2345}*r{35|124} - r{12345|.}*r{135|24}",
];

const G5: [&str; 34] = [
    "r{13|245}*r{4|1235} - r{123|45}*r{24|135}",
    "r{12|345}*r{24|135} - r{13|245}*r{34|125}",
    "r{12|345}*r{4|1235} - r{123|45}*r{34|125}",
    "r{12|345}*r{13|245} - r{2|1345}*r{3|1245}",
    "r{124|35}*r{2|1345} - r{12|345}*r{24|135}",
    "r{124|35}*r{123|45} - r{3|1245}*r{4|1235}",
    "r{124|35}*r{13|245} - r{3|1245}*r{24|135}",
    "r{124|35}*r{12|345} - r{3|1245}*r{34|125}",
    "r{14|235}*r{3|1245} - r{124|35}*r{23|145}",
    "r{14|235}*r{123|45} - r{23|145}*r{4|1235}",
    "r{14|235}*r{13|245} - r{23|145}*r{24|135}",
    "r{14|235}*r{12|345} - r{23|145}*r{34|125}",
    "r{134|25}*r{23|145} - r{14|235}*r{2|1345}",
    "r{134|25}*r{3|1245} - r{12|345}*r{24|135}",
    "r{134|25}*r{123|45} - r{2|1345}*r{4|1235}",
    "r{134|25}*r{13|245} - r{2|1345}*r{24|135}",
    "r{134|25}*r{12|345} - r{2|1345}*r{34|125}",
    "r{134|25}*r{124|35} - r{34|125}*r{24|135}",
    "r{5|1234}*r{2|1345} - r{134|25}*r{12345|.}",
    "r{5|1234}*r{3|1245} - r{124|35}*r{12345|.}",
    "r{5|1234}*r{123|45} - r{12345|.}*r{4|1235}",
    "r{5|1234}*r{13|245} - r{12345|.}*r{24|135}",
    "r{5|1234}*r{12|345} - r{12345|.}*r{34|125}",
    "r{5|1234}*r{14|235} - r{15|234}*r{4|1235}",
    "r{1|2345}*r{4|1235} - r{5|1234}*r{23|145}",
    "r{1|2345}*r{4|1235} - r{14|235}*r{12345|.}",
    "r{1|2345}*r{34|125} - r{12|345}*r{15|234}",
    "r{1|2345}*r{24|135} - r{13|245}*r{15|234}",
    "r{1|2345}*r{4|1235} - r{123|45}*r{15|234}",
    "r{1|2345}*r{123|45} - r{12345|.}*r{23|145}",
    "r{1|2345}*r{124|35} - r{3|1245}*r{15|234}",
    "r{1|2345}*r{14|235} - r{23|145}*r{15|234}",
    "r{1|2345}*r{134|25} - r{2|1345}*r{15|234}",
    "r{1|2345}*r{5|1234} - r{12345|.}*r{15|234}",
];

const K4_QUARTIC: &str =
    "r{1|234}*r{2|134}*r{3|124}*r{4|123} - r{1234|.}*r{23|14}*r{12|34}*r{13|24}";

fn g5() -> Graph {
    Graph::classical(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (4, 5)]).unwrap()
}

fn criterion_1() -> String {
    let (code, out) = cli(&["ideal", &data("p3.json")]);
    assert_eq!(code, 0);
    let got = cutideal::format::parse_ideal_text(&out, 3).unwrap();
    assert_equal(
        &got,
        &ideal(3, &["r{1|23}*r{3|12} - r{2|13}*r{123|.}"]),
        "P3",
    );
    "classical P3 ideal".into()
}

fn criterion_2() -> String {
    let p3 = ideal(3, &["r{1|23}*r{3|12} - r{2|13}*r{123|.}"]);
    let labelled = ideal(
        3,
        &["r{1|23} - r{3|12}", "r{1|23}*r{3|12} - r{2|13}*r{123|.}"],
    );
    let signed = ideal(3, &["r{2|13} - 1", "r{123|.} - 1", "r{1|23}*r{3|12} - 1"]);
    let cases = [
        ("p3.json", &p3, "3"),
        ("p3_a.json", &labelled, "2"),
        ("p3_a_sigma.json", &signed, "1"),
    ];
    for (file, want, dim) in cases {
        let (code, out) = cli(&["ideal", &data(file)]);
        assert_eq!(code, 0);
        let got = cutideal::format::parse_ideal_text(&out, 3).unwrap();
        assert_equal(&got, want, file);
        let (code, out) = cli(&["dim", &data(file)]);
        assert_eq!((code, out.trim()), (0, dim), "dim of {file}");
    }
    "three P3 variants and dims 3, 2, 1".into()
}

fn criterion_3() -> String {
    let k2 = Graph::complete(2);
    assert!(toric_ideal(&k2).unwrap().is_zero());
    let (code, out) = cli(&["ideal", &data("k2.json")]);
    assert_eq!((code, out.as_str()), (0, "(0)\n"));
    let listed = ideal(
        4,
        &[
            "r{1|234}*r{3|124} - r{24|13}*r{1234|.}",
            "r{1234|.} - r{12|34}",
            "r{4|123} - r{3|124}",
            "r{2|134} - r{1|234}",
            "r{13|24} - r{14|23}",
        ],
    );
    let direct = toric_ideal(&k2.disjoint_union(&k2)).unwrap();
    assert_equal(&direct, &listed, "K2 ⊔ K2 direct");
    assert_equal(
        &union_ideal(&k2, &k2, 2).unwrap(),
        &listed,
        "K2 ⊔ K2 composed",
    );
    "I(K2) = (0), K2 ⊔ K2 direct and composed".into()
}

fn criterion_4() -> String {
    let listed = ideal(4, &P4);
    assert_equal(&toric_ideal(&Graph::path(4)).unwrap(), &listed, "P4 direct");
    let union = Graph::path(3).disjoint_union(&Graph::complete(2));
    assert_equal(
        &collapse_ideal(&union, 3, 5).unwrap(),
        &listed,
        "P4 by collapse",
    );
    let composed = binomials(5, &P3_K2_COMPOSED);
    let survivors = generator_level_collapse(&union, &composed, 3, 5).unwrap();
    let want = binomials(4, &P4);
    assert_eq!(survivors.len(), 9);
    for b in &survivors {
        assert!(want.iter().any(|w| w.same_up_to_sign(b)), "{b} not listed");
    }
    "P4 directly and via the collapse of P3 ⊔ K2".into()
}

fn criterion_5() -> String {
    assert!(collapse_ideal(&Graph::path(4), 1, 4).unwrap().is_zero());
    assert!(toric_ideal(&Graph::complete(3)).unwrap().is_zero());
    let (k2, kind) = Graph::path(3).collapse(1, 3).unwrap();
    assert_eq!(kind, cutideal::CollapseKind::Singular);
    assert_eq!(k2.n(), 2);
    assert_eq!(k2.multiplicities(), BTreeMap::from([((1, 2), 2)]));
    assert!(collapse_ideal(&Graph::path(3), 1, 3).unwrap().is_zero());
    assert!(toric_ideal(&k2).unwrap().is_zero());
    "P4 at 1≡4 and P3 at 1≡3 collapse to (0)".into()
}

fn criterion_6() -> String {
    let g = g5();
    let listed = ideal(5, &G5);
    let direct = toric_ideal(&g).unwrap();
    assert_equal(&direct, &listed, "G direct");
    assert!(generator_level_collapse(&g, &binomials(5, &G5), 1, 5)
        .unwrap()
        .is_empty());
    let quartic = ideal(4, &[K4_QUARTIC]);
    assert_equal(&collapse_ideal(&g, 1, 5).unwrap(), &quartic, "G at 1≡5");
    assert_equal(
        &toric_ideal(&Graph::complete(4)).unwrap(),
        &quartic,
        "K4 direct",
    );
    "34 listed quadrics, collapse to the K4 quartic".into()
}

fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, p)| *p)
                .collect()
        })
        .collect()
}

fn admissible(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && g.collapse(i, j).is_ok())
        .collect()
}

fn theorem_holds(g: &Graph, i: usize, j: usize) -> bool {
    let (collapsed, _) = g.collapse(i, j).unwrap();
    let route = collapse_ideal(g, i, j).unwrap();
    let direct = toric_ideal(&collapsed).unwrap();
    let m = exponent_matrix(&collapsed).unwrap();
    for b in route.generators() {
        assert!(membership_in(&m, b).unwrap(), "collapse route unsound: {b}");
    }
    ideal_equal(&route, &direct).unwrap()
}

fn merges_distinct_labels(g: &Graph, i: usize, j: usize) -> bool {
    collapse_label_map(g, i, j)
        .unwrap()
        .iter()
        .any(|(a, b)| a != b)
}

fn criterion_7() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 200;
    for _ in 0..cases {
        let n = rng.gen_range(1..=5);
        let classical = rng.gen_bool(0.5);
        let g = sample_graph(&mut rng, n, classical, 2);
        let m = exponent_matrix(&g).unwrap();
        let ideal = toric_ideal(&g).unwrap();
        for b in ideal.generators() {
            assert!(
                membership_in(&m, b).unwrap(),
                "(a) {b} not in ideal of {g:?}"
            );
        }
        let kernel = m.integer_kernel().unwrap();
        assert_eq!(
            kernel.rank() + m.rank(),
            m.ncols(),
            "(b) rank-nullity on {g:?}"
        );
        for row in &kernel.rows {
            assert!(
                m.apply(row).unwrap().iter().all(|&x| x == 0),
                "(b) kernel row"
            );
        }
        if classical {
            let sigma = sample_multiplicities(&mut rng, &g);
            let weighted = g.set_multiplicities(&sigma).unwrap();
            assert_equal(
                &toric_ideal(&weighted).unwrap(),
                &ideal,
                "(d) multiplicity invariance",
            );
        }
    }
    let checks = verify_matrices(&mut rng, cases).unwrap();
    if let Some(c) = checks.iter().find(|c| !c.ok) {
        panic!("(c) {c}");
    }

    // (e) exhaustive n ≤ 4: classical graphs under every sign pattern and a
    // doubled first edge, and every labelling into at most two labels.
    let mut checked = 0;
    let mut merging = 0;
    let mut counterexamples = 0;
    for n in 2..=4 {
        for es in all_graphs(n) {
            let base = Graph::classical(n, &es).unwrap();
            for signs in 0u32..1 << es.len() {
                for double in [false, true] {
                    let sigma = es
                        .iter()
                        .enumerate()
                        .map(|(k, &e)| {
                            let s = if signs >> k & 1 == 1 { -1 } else { 1 };
                            (e, if double && k == 0 { 2 * s } else { s })
                        })
                        .collect();
                    let g = base.set_multiplicities(&sigma).unwrap();
                    for (i, j) in admissible(&g) {
                        checked += 1;
                        assert!(theorem_holds(&g, i, j), "(e) {g:?} at {i}≡{j}");
                    }
                }
            }
            for labels in 0u32..1 << es.len() {
                let edges: Vec<Edge> = es
                    .iter()
                    .enumerate()
                    .map(|(k, &(u, v))| {
                        Edge::new(u, v, if labels >> k & 1 == 1 { "a" } else { "b" }, 1)
                    })
                    .collect();
                let g = Graph::new(n, edges).unwrap();
                for (i, j) in admissible(&g) {
                    checked += 1;
                    let holds = theorem_holds(&g, i, j);
                    if merges_distinct_labels(&g, i, j) {
                        merging += 1;
                        counterexamples += usize::from(!holds);
                    } else {
                        assert!(holds, "(e) {g:?} at {i}≡{j}");
                    }
                }
            }
        }
    }
    let mut sampled = 0;
    while sampled < 12 {
        let g = sample_graph(&mut rng, 5, true, 0);
        let sigma = sample_multiplicities(&mut rng, &g);
        let g = g.set_multiplicities(&sigma).unwrap();
        let pairs = admissible(&g);
        if pairs.is_empty() {
            continue;
        }
        let (i, j) = pairs[rng.gen_range(0..pairs.len())];
        assert!(theorem_holds(&g, i, j), "(e) {g:?} at {i}≡{j}");
        sampled += 1;
    }
    assert!(counterexamples > 0);
    format!(
        "{cases} sampled graphs, {} matrix checks, {checked} exhaustive collapses + {sampled} on n = 5; \
         equality fails in {counterexamples} of {merging} labelled collapses that merge distinct labels (known exception)",
        checks.len()
    )
}

fn criterion_8() -> String {
    let plain = toric_ideal(&Graph::path(3)).unwrap();
    let g = Graph::new(3, [Edge::new(1, 2, "a", 1), Edge::new(2, 3, "a", 1)]).unwrap();
    let labelled = toric_ideal(&g).unwrap();
    let mut sigma = BTreeMap::from([((1, 2), -1), ((2, 3), 1)]);
    let signed = toric_ideal(&g.set_multiplicities(&sigma).unwrap()).unwrap();
    assert!(!ideal_equal(&plain, &labelled).unwrap());
    assert!(!ideal_equal(&labelled, &signed).unwrap());
    assert!(!ideal_equal(&plain, &signed).unwrap());
    let dims: Vec<usize> = [
        Graph::path(3),
        g.clone(),
        g.set_multiplicities(&sigma).unwrap(),
    ]
    .iter()
    .map(|h| exponent_matrix(h).unwrap().rank())
    .collect();
    assert_eq!(dims, [3, 2, 1]);

    // Single-label paths and triangles with mixed signs.
    let mut family = 0;
    for base in [
        Graph::path(3),
        Graph::path(4),
        Graph::path(5),
        Graph::complete(3),
    ] {
        let one: BTreeMap<String, String> = base
            .labels()
            .into_iter()
            .map(|l| (l, "a".to_string()))
            .collect();
        let g = base.relabel(&one).unwrap();
        let unsigned = toric_ideal(&g).unwrap();
        let es: Vec<(usize, usize)> = g.edges().map(Edge::key).collect();
        for signs in 1u32..(1 << es.len()) - 1 {
            sigma = es
                .iter()
                .enumerate()
                .map(|(k, &e)| (e, if signs >> k & 1 == 1 { -1 } else { 1 }))
                .collect();
            let other = toric_ideal(&g.set_multiplicities(&sigma).unwrap()).unwrap();
            assert!(
                !ideal_equal(&unsigned, &other).unwrap(),
                "{g:?} with {sigma:?}"
            );
            family += 1;
        }
    }
    format!("P3 variants pairwise distinct, dims 3/2/1, {family} signed single-label graphs differ")
}

fn monomials_up_to(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; nvars]];
    let mut frontier = out.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in start..nvars {
                let mut x = m.clone();
                x[v] += 1;
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn criterion_9() -> String {
    let mut graphs = 0;
    let mut pairs = 0;
    let options: Vec<(&str, i64)> = ["a", "b"]
        .iter()
        .flat_map(|&l| [-2i64, -1, 1, 2].map(move |m| (l, m)))
        .collect();
    for n in 1..=3 {
        let nv = all_partitions(n).unwrap().len();
        let monos = monomials_up_to(nv, 4);
        for es in all_graphs(n) {
            let mut choice = vec![0usize; es.len()];
            loop {
                let edges: Vec<Edge> = es
                    .iter()
                    .zip(&choice)
                    .map(|(&(u, v), &c)| Edge::new(u, v, options[c].0, options[c].1))
                    .collect();
                let g = Graph::new(n, edges).unwrap();
                let m = exponent_matrix(&g).unwrap();
                let ideal = toric_ideal(&g).unwrap();
                for b in ideal.reduced_gb() {
                    assert!(membership_in(&m, b).unwrap(), "unsound {b} for {g:?}");
                }
                let mut buckets: HashMap<Vec<i64>, Vec<&Vec<u32>>> = HashMap::new();
                for mono in &monos {
                    let u: Vec<i64> = mono.iter().map(|&e| i64::from(e)).collect();
                    buckets.entry(m.apply(&u).unwrap()).or_default().push(mono);
                }
                for class in buckets.values() {
                    let nf = ideal.normal_form(class[0]);
                    for other in &class[1..] {
                        pairs += 1;
                        assert_eq!(
                            ideal.normal_form(other),
                            nf,
                            "{g:?}: {other:?} vs {:?}",
                            class[0]
                        );
                    }
                }
                graphs += 1;
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < options.len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
    }
    format!("{graphs} graphs, {pairs} same-image monomial pairs reduce to a common normal form")
}

fn main() -> ExitCode {
    type Criterion = fn() -> String;
    let criteria: [(Criterion, Duration); 9] = [
        (criterion_1, Duration::from_secs(1)),
        (criterion_2, Duration::from_secs(1)),
        (criterion_3, Duration::from_secs(1)),
        (criterion_4, Duration::from_secs(5)),
        (criterion_5, Duration::from_secs(1)),
        (criterion_6, Duration::from_secs(300)),
        (criterion_7, Duration::from_secs(600)),
        (criterion_8, Duration::from_secs(60)),
        (criterion_9, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (k, (run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        match outcome {
            Ok(summary) if took <= *limit => {
                println!("criterion {}: PASS ({took:.2?}) {summary}", k + 1);
            }
            Ok(summary) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL (took {took:.2?}, limit {limit:?}) {summary}",
                    k + 1
                );
            }
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL ({took:.2?}) {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

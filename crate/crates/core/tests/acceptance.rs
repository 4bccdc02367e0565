//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use orsolv::classifier::{classify, CertificateKind, Status};
use orsolv::golden::{corpus, run_corpus, REGISTRY_TEXT};
use orsolv::hall::{enumerate_basic, CommutatorTree};
use orsolv::magnus::{expand_rewritten, lemma_check, magnus_rewrite};
use orsolv::oracle::{build_catalog, separate, DEFAULT_MAX_ORDER};
use orsolv::parser::parse_word;
use orsolv::survey::{run_survey, sample_relator, SamplingMode, SplitMix64, SurveyConfig};
use orsolv::{Gen, Presentation, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn eq5_word() -> Word {
    // a^-1 b^-1 a^-1 b a b^-1 a b
    Word::from_signed(&[-1, -2, -1, 2, 1, -2, 1, 2])
}

fn criterion_1() -> Outcome {
    let a = Word::generator(Gen(0));
    let b = Word::generator(Gen(1));
    let r = a.commutator(&a.commutator(&b));
    check(r == eq5_word(), format!("got {:?}", r.to_signed()))?;
    check(r.len() == 8, "length is not 8")?;
    check(
        r.exponent_vector(2) == vec![0, 0],
        "exponent sums not (0,0)",
    )?;
    Ok("[a,[a,b]] = a^-1 b^-1 a^-1 b a b^-1 a b, exponent sums (0,0)".into())
}

fn criterion_2() -> Outcome {
    let p = Presentation::parse("a,b;[a,[a,b]]").map_err(|e| e.to_string())?;
    let r0 = magnus_rewrite(&p, Gen(0)).map_err(|e| e.to_string())?;
    let shown = r0.display(p.generators()).to_string();
    check(shown == "b_1^-1 b_2 b_1^-1 b_0", format!("r0 = {shown}"))?;
    let e = r0.extremes[&Gen(1)];
    check(
        (e.mu, e.nu, e.count_at_mu, e.count_at_nu) == (0, 2, 1, 1),
        format!("extremes {e:?}"),
    )?;
    let v = lemma_check(&p)
        .into_iter()
        .find(|v| v.eliminated == Gen(0) && v.witness == Gen(1))
        .ok_or("no verdict for (a, b)")?;
    check(v.applicable, "lemma not applicable")?;
    check(
        expand_rewritten(&r0) == eq5_word(),
        "expansion differs from [a,[a,b]]",
    )?;
    Ok(format!("r0 = {shown}, mu = 0, nu = 2, free-by-cyclic"))
}

fn criterion_3() -> Outcome {
    let mut rng = SplitMix64::new(3);
    let mut relators = 0;
    let mut trips = 0;
    while relators < 1200 {
        let len = 2 + rng.below(15);
        let w = sample_relator(len, 2, &mut rng);
        let zero: Vec<Gen> = (0..2)
            .map(Gen)
            .filter(|&g| w.exponent_sum(g) == 0)
            .collect();
        if zero.is_empty() {
            continue;
        }
        relators += 1;
        let p = Presentation::with_default_names(2, &w);
        for t in zero {
            let r0 = magnus_rewrite(&p, t).map_err(|e| e.to_string())?;
            check(
                &expand_rewritten(&r0) == p.relator_cyclic(),
                format!(
                    "round trip failed for {:?} eliminating {t:?}",
                    w.to_signed()
                ),
            )?;
            trips += 1;
        }
    }
    Ok(format!(
        "{relators} relators, {trips} round trips, all exact"
    ))
}

fn criterion_4() -> Outcome {
    let outcomes = run_corpus();
    for o in &outcomes {
        check(
            o.ok,
            format!("{}: {} gave {}", o.case.name, o.case.text, o.actual),
        )?;
    }
    Ok(format!("{} golden cases match", outcomes.len()))
}

fn mobius(n: u64) -> i64 {
    let (mut n, mut m, mut p) = (n, 1i64, 2u64);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Number of basic commutators of weight n on q generators (Witt).
fn necklaces(q: u64, n: u64) -> u64 {
    let s: i64 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) * (q as i64).pow((n / d) as u32))
        .sum();
    (s / n as i64) as u64
}

/// Order of basic commutators, written from the definition rather than
/// from the enumeration: weight first, then left part, then right part.
fn cmp_trees(a: &CommutatorTree, b: &CommutatorTree) -> std::cmp::Ordering {
    use CommutatorTree::*;
    a.weight().cmp(&b.weight()).then_with(|| match (a, b) {
        (Leaf(x), Leaf(y)) => x.cmp(y),
        (Node(l1, r1), Node(l2, r2)) => cmp_trees(l1, l2).then_with(|| cmp_trees(r1, r2)),
        _ => unreachable!("equal weights"),
    })
}

fn basic_by_definition(t: &CommutatorTree) -> bool {
    match t {
        CommutatorTree::Leaf(_) => true,
        CommutatorTree::Node(l, r) => {
            basic_by_definition(l)
                && basic_by_definition(r)
                && cmp_trees(l, r).is_gt()
                && match &**l {
                    CommutatorTree::Node(_, lt) => cmp_trees(r, lt).is_ge(),
                    CommutatorTree::Leaf(_) => true,
                }
        }
    }
}

fn all_trees(leaves: &[Gen], weight: usize) -> Vec<CommutatorTree> {
    if weight == 1 {
        return leaves.iter().map(|&g| CommutatorTree::Leaf(g)).collect();
    }
    let mut out = Vec::new();
    for lw in 1..weight {
        for l in all_trees(leaves, lw) {
            for r in all_trees(leaves, weight - lw) {
                out.push(CommutatorTree::node(l.clone(), r));
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let gens = [Gen(0), Gen(1)];
    let basics = enumerate_basic(&gens, 5);
    let counts: Vec<u64> = (1..=5)
        .map(|n| basics.iter().filter(|b| b.weight == n).count() as u64)
        .collect();
    let oracle: Vec<u64> = (1..=5).map(|n| necklaces(2, n)).collect();
    check(counts == [2, 1, 2, 3, 6], format!("counts {counts:?}"))?;
    check(counts == oracle, format!("necklace oracle {oracle:?}"))?;
    for q in 3..=4u64 {
        let g: Vec<Gen> = (0..q as usize).map(Gen).collect();
        let b = enumerate_basic(&g, 4);
        for n in 1..=4 {
            let c = b.iter().filter(|x| x.weight == n).count() as u64;
            check(
                c == necklaces(q, n as u64),
                format!("q={q} weight {n}: {c}"),
            )?;
        }
    }
    for w in 1..=4 {
        let filtered: BTreeSet<String> = all_trees(&gens, w)
            .into_iter()
            .filter(basic_by_definition)
            .map(|t| format!("{t:?}"))
            .collect();
        let listed: BTreeSet<String> = basics
            .iter()
            .filter(|b| b.weight == w)
            .map(|b| format!("{:?}", b.tree))
            .collect();
        check(
            filtered == listed,
            format!("tree filter disagrees at weight {w}"),
        )?;
    }
    Ok(format!(
        "counts {counts:?} match Witt; tree filter agrees to weight 4"
    ))
}

fn criterion_6() -> Outcome {
    let catalog = build_catalog(DEFAULT_MAX_ORDER);
    let p = Presentation::parse("a,b;[a,b]").map_err(|e| e.to_string())?;
    let mut words: BTreeSet<Vec<i64>> = BTreeSet::new();
    let letters = [1i64, -1, 2, -2];
    for len in 1..=3u32 {
        for code in 0..4usize.pow(len) {
            let mut c = code;
            let raw: Vec<i64> = (0..len)
                .map(|_| {
                    let l = letters[c % 4];
                    c /= 4;
                    l
                })
                .collect();
            let w = Word::from_signed(&raw);
            if !w.is_empty() && w.exponent_vector(2) != vec![0, 0] {
                words.insert(w.to_signed());
            }
        }
    }
    for w in &words {
        let w = Word::from_signed(w);
        check(
            separate(&p, &w, &catalog).is_some(),
            format!("{} not separated in <a,b;[a,b]>", p.show(&w)),
        )?;
    }
    let ex = Presentation::parse(REGISTRY_TEXT).map_err(|e| e.to_string())?;
    let w = parse_word("[a,b]^-1 [a,b]^a", ex.generators())
        .map_err(|e| e.to_string())?
        .expand();
    if let Some(s) = separate(&ex, &w, &catalog) {
        return Err(format!("registry word separated in {}", s.group_name));
    }
    Ok(format!(
        "{} words separated in <a,b;[a,b]>; registry word survives all {} groups",
        words.len(),
        catalog.len()
    ))
}

fn kinds_and_status(p: &Presentation) -> (Status, Vec<CertificateKind>) {
    let v = classify(p);
    (v.status, v.kinds())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn invariance_failures(p: &Presentation) -> Option<String> {
    let base = kinds_and_status(p);
    let r = p.relator_cyclic();
    let names = p.generators().to_vec();
    let mut variants: Vec<(String, Word)> = vec![("inverse".into(), r.inverse())];
    for k in 1..r.len() {
        variants.push((format!("rotation {k}"), r.rotate(k)));
    }
    for perm in permutations(p.rank()) {
        variants.push((format!("renaming {perm:?}"), r.rename(|g| Gen(perm[g.0]))));
    }
    for (what, w) in variants {
        let q = Presentation::from_word(names.clone(), &w).expect("same generators");
        let got = kinds_and_status(&q);
        if got != base {
            return Some(format!("{p}: {what} gives {got:?}, expected {base:?}"));
        }
    }
    None
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for case in corpus() {
        let p = Presentation::parse(&case.text).map_err(|e| e.to_string())?;
        if let Some(e) = invariance_failures(&p) {
            return Err(e);
        }
        checked += 1;
    }
    let mut rng = SplitMix64::new(7);
    for i in 0..200 {
        let q = 2 + i % 2;
        let len = 2 + rng.below(11);
        let w = sample_relator(len, q, &mut rng);
        let p = Presentation::with_default_names(q, &w);
        if let Some(e) = invariance_failures(&p) {
            return Err(e);
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} presentations invariant under renaming, inversion, rotation"
    ))
}

fn criterion_8() -> Outcome {
    let cfg = SurveyConfig {
        length: 8,
        count: 1000,
        seed: 42,
        gens: 2,
        mode: SamplingMode::Reduced,
    };
    let first = run_survey(&cfg);
    let second = run_survey(&cfg);
    check(first.to_string() == second.to_string(), "tables differ")?;

    let cli = |out: &mut Vec<u8>| {
        let args = [
            "orsolv", "survey", "--length", "8", "--count", "1000", "--seed", "42",
        ];
        orsolv::cli::run(args, out, &mut Vec::new())
    };
    let (mut o1, mut o2) = (Vec::new(), Vec::new());
    check(
        cli(&mut o1) == 0 && cli(&mut o2) == 0,
        "survey command failed",
    )?;
    check(o1 == o2, "command output differs between runs")?;
    check(
        o1 == first.to_string().into_bytes(),
        "command output differs from library table",
    )?;

    check(
        first.total() == 1000,
        format!("counts sum to {}", first.total()),
    )?;
    let sum: f64 = first.counts.iter().map(|&(o, _)| first.fraction(o)).sum();
    check((sum - 1.0).abs() < 1e-12, format!("fractions sum to {sum}"))?;
    Ok(format!(
        "identical tables over two runs, fractions sum to {sum}"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "golden commutator expansion",
            criterion_1,
            Duration::from_millis(1),
        ),
        (
            "golden Magnus rewrite",
            criterion_2,
            Duration::from_millis(1),
        ),
        ("Magnus round trip", criterion_3, Duration::from_secs(5)),
        (
            "classifier golden corpus",
            criterion_4,
            Duration::from_secs(1),
        ),
        (
            "basic commutator counts",
            criterion_5,
            Duration::from_secs(2),
        ),
        ("oracle separation", criterion_6, Duration::from_secs(60)),
        ("invariance suite", criterion_7, Duration::from_secs(10)),
        ("survey determinism", criterion_8, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > *budget => Err(format!("{msg}; took {took:?}, budget {budget:?}")),
            r => r,
        };
        match result {
            Ok(msg) => println!("criterion {}: PASS {name} ({took:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({took:.2?}): {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

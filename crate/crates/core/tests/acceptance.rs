//! The acceptance harness. Each criterion prints one PASS or FAIL line;
//! the test then checks that the outcome is the expected one, including
//! the one criterion that is known not to hold.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::Rng;

use typeiso::arena::{arena_to_formula, alpharho_eq, build_arena, extract_hyperforest, Formula, Hyperedge, Hyperforest};
use typeiso::canon::{apply_rule, canonicalize, normalize_type, psi, RuleId};
use typeiso::iso::{brute_force_iso, check_bijection, decide_iso, DEFAULT_NODE_LIMIT};
use typeiso::lambdamu::{typecheck, TypingContext, VerifyStatus};
use typeiso::toolkit::{index_build, index_query, SourceEntry};
use typeiso::types::{free_type_vars, parse_type, print_type};
use typeiso::witness::{witness_for_iso, AxiomId, CoercionPair, Instantiation};
use typeiso::{CalculusMode, Ident, TypeExpr};

use common::{axiom_walk, mutate, random_formula, random_type, rng};

const M: CalculusMode = CalculusMode::LmuTwo;
const P: CalculusMode = CalculusMode::LmuTwoPrime;
const F: CalculusMode = CalculusMode::SystemF;

// budgets, all pinned here
const AXIOM_SWEEP_BUDGET: Duration = Duration::from_secs(10);
const PSI_BUDGET: Duration = Duration::from_secs(30);
const SEARCH_BUDGET: Duration = Duration::from_secs(5);
const VERIFY_FUEL: usize = 10_000;
const PSI_INSTANCES: usize = 10_000;
const TERMINATION_TYPES: usize = 10_000;
const TERMINATION_STEP_LIMIT: usize = 100_000;
const NEGATIVE_PAIRS: usize = 50;
const ORACLE_PAIRS: usize = 500;
const ORACLE_NODE_LIMIT: usize = 20;
const LAW_CASES: usize = 200;
const ROUND_TRIPS: usize = 500;
const INDEX_SIZE: usize = 100;
const QUERIES: usize = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn t(s: &str) -> TypeExpr {
    parse_type(s, M).unwrap()
}

fn typechecks(w: &CoercionPair) -> bool {
    let mut tv = free_type_vars(&w.source);
    tv.extend(free_type_vars(&w.target));
    let ctx = TypingContext::with_tvars(w.mode, tv);
    let ok = |term, want: TypeExpr| {
        typecheck(&ctx, term).is_ok_and(|got| typeiso::types::alpha_eq(&got, &want))
    };
    ok(&w.forward, TypeExpr::arrow(w.source.clone(), w.target.clone()))
        && ok(&w.backward, TypeExpr::arrow(w.target.clone(), w.source.clone()))
}

fn instances(atoms: &[TypeExpr]) -> Vec<Instantiation> {
    let mut out = Vec::new();
    for a in atoms {
        for b in atoms {
            for c in atoms {
                out.push(Instantiation::new(a.clone(), b.clone(), c.clone()).with_binders("U", "V"));
            }
        }
    }
    out
}

fn sweep_atoms(mode: CalculusMode) -> Vec<TypeExpr> {
    // System F has no ⊥, so a fresh variable stands in for it
    let bot = if mode.allows_bot() { TypeExpr::Bot } else { TypeExpr::var("W") };
    vec![bot.clone(), TypeExpr::Top, TypeExpr::var("X"), TypeExpr::arrow(bot, TypeExpr::var("X"))]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for id in AxiomId::LMU2 {
        for inst in instances(&sweep_atoms(M)) {
            cases += 1;
            let (l, r) = id.sides(&inst);
            let iso = decide_iso(&l, &r, M).is_ok_and(|v| v.isomorphic);
            let w = witness_for_iso(&l, &r, M);
            let typed = matches!(&w, Ok(Some(w)) if typechecks(w));
            if !(iso && typed) {
                bad.push(format!("{id}: {l} vs {r}"));
            }
        }
    }
    let took = start.elapsed();
    outcome(
        bad.is_empty() && took < AXIOM_SWEEP_BUDGET,
        format!("{cases} instances, {} failures{}, {took:.1?}", bad.len(), first(&bad)),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut verified = 0;
    let mut bad = Vec::new();
    for mode in [P, F] {
        for id in AxiomId::SYSTEM_F {
            for inst in instances(&sweep_atoms(mode)) {
                cases += 1;
                let (l, r) = id.sides(&inst);
                let iso = decide_iso(&l, &r, mode).is_ok_and(|v| v.isomorphic);
                let ok = match witness_for_iso(&l, &r, mode) {
                    Ok(Some(w)) if typechecks(&w) => {
                        if mode == F {
                            let rep = w.verify(VERIFY_FUEL);
                            verified += usize::from(rep.status == VerifyStatus::Verified);
                            rep.status == VerifyStatus::Verified
                        } else {
                            true
                        }
                    }
                    _ => false,
                };
                if !(iso && ok) {
                    bad.push(format!("{id} in {mode}: {l} vs {r}"));
                }
            }
        }
    }
    let took = start.elapsed();
    outcome(
        bad.is_empty() && took < AXIOM_SWEEP_BUDGET,
        format!("{cases} instances, {verified} System F pairs verified, {} failures{}, {took:.1?}", bad.len(), first(&bad)),
    )
}

fn small(h: &Hyperforest, limit: usize) -> bool {
    h.len() <= limit
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    if decide_iso(&t("forall X. _|_"), &t("forall X Y. _|_"), M).unwrap().isomorphic {
        bad.push("forall X. _|_ vs forall X Y. _|_".to_string());
    }
    let mut r = rng(3);
    let (mut negatives, mut positives, mut tries) = (0, 0, 0);
    while negatives < NEGATIVE_PAIRS && tries < 100_000 {
        tries += 1;
        let a = random_type(&mut r, M, 4);
        let walked = axiom_walk(&a, M, &mut r, 3);
        let b = if r.gen_bool(0.5) { mutate(&walked, M, &mut r) } else { walked };
        let (ha, hb) = (Hyperforest::of_type(&a), Hyperforest::of_type(&b));
        if !small(&ha, DEFAULT_NODE_LIMIT) || !small(&hb, DEFAULT_NODE_LIMIT) {
            continue;
        }
        let oracle = brute_force_iso(&ha, &hb).unwrap().is_some();
        if oracle && positives >= NEGATIVE_PAIRS {
            continue;
        }
        if oracle {
            positives += 1;
        } else {
            negatives += 1;
        }
        if decide_iso(&a, &b, M).unwrap().isomorphic != oracle {
            bad.push(format!("{a} vs {b}"));
        }
    }
    outcome(
        bad.is_empty() && negatives == NEGATIVE_PAIRS,
        format!(
            "{negatives} oracle-confirmed non-isomorphic pairs and {positives} isomorphic ones, {} disagreements{}",
            bad.len(),
            first(&bad)
        ),
    )
}

fn criterion_4() -> Outcome {
    let x = Formula::var;
    let a = Formula::par(
        Formula::forall("X3", Formula::par(Formula::neg(Formula::Bot), x("X3"))),
        Formula::forall("X3", Formula::par(Formula::neg(x("X2")), x("X3"))),
    );
    let arena = build_arena(&a);
    let names: Vec<String> = arena.names().iter().map(|n| n.to_string()).collect();
    let want = [
        "∀(⋆⅋x^(0,⋆⅋⋆))⅋∀(⋆⅋x^(0,⋆⅋⋆))",
        "((¬(⋆),x^(0,⋆⅋⋆),1),∀(⋆⅋x^(0,⋆⅋⋆)),1)",
        "((¬(x_X2),x^(0,⋆⅋⋆),1),∀(⋆⅋x^(0,⋆⅋⋆)),2)",
    ];
    let one = names == want && arena.roots() == [0] && arena.parent(1) == Some(0) && arena.parent(2) == Some(0);

    let h = extract_hyperforest(&arena).unwrap();
    let root = Hyperedge { target: 0, sources: vec![0] };
    let two = h.edges == [root.clone(), root]
        && h.nodes[0].decorations.is_empty()
        && h.nodes[1].decorations.is_empty()
        && h.nodes[2].decorations == [Ident::new("X2")];

    let (l, r) = (
        t("forall X Y. ((forall Z. _|_ * Z -> X) * (forall U. U)) -> _|_"),
        t("(forall X. X) -> (forall Y. (forall Z. _|_ -> Z -> Y) -> (forall U. _|_))"),
    );
    let v = decide_iso(&l, &r, M).unwrap();
    let six = v.isomorphic && v.witness.as_ref().is_some_and(|w| check_bijection(&v.left, &v.right, w));
    outcome(
        one && two && six,
        format!("arena names and roots {}, hyperforest {}, isomorphic pair {}", ok(one), ok(two), ok(six)),
    )
}

/// The rewrite rules as originally listed, with ⅋-distribution in the
/// direction of its axiom.
fn listed_rules() -> Vec<RuleId> {
    RuleId::ALL
        .into_iter()
        .filter(|r| !matches!(r, RuleId::TopArrow | RuleId::ParProd | RuleId::ParArrow | RuleId::ParForall))
        .collect()
}

fn rule_instance(rule: RuleId, a: TypeExpr, b: TypeExpr, c: TypeExpr) -> TypeExpr {
    use TypeExpr as T;
    match rule {
        RuleId::TopPar => T::par(T::Top, a),
        RuleId::ParTop => T::par(a, T::Top),
        RuleId::BotPar => T::par(T::Bot, a),
        RuleId::ParBot => T::par(a, T::Bot),
        RuleId::ProdTop => T::prod(a, T::Top),
        RuleId::TopProd => T::prod(T::Top, a),
        RuleId::ArrowTop => T::arrow(a, T::Top),
        RuleId::TopArrow => T::arrow(T::Top, a),
        RuleId::ForallTop => T::forall("X", T::Top),
        RuleId::ProdPar => T::par(T::prod(a, b), c),
        RuleId::ParProd => T::par(a, T::prod(b, c)),
        RuleId::ArrowPar => T::par(T::arrow(a, b), c),
        RuleId::ParArrow => T::par(a, T::arrow(b, c)),
        RuleId::ForallPar => T::par(T::forall("X", a), b),
        RuleId::ParForall => T::par(a, T::forall("X", b)),
        RuleId::ArrowProd => T::arrow(a, T::prod(b, c)),
        RuleId::Curry => T::arrow(a, T::arrow(b, c)),
        RuleId::ForallProd => T::forall("X", T::prod(a, b)),
        RuleId::ArrowForall => T::arrow(a, T::forall("X", b)),
    }
}

#[derive(Default)]
struct RuleTally {
    strict: usize,
    not_strict: usize,
    too_large: usize,
    example: Option<String>,
}

struct PsiReport {
    tallies: BTreeMap<RuleId, RuleTally>,
    max_steps: usize,
    terminated: usize,
    took: Duration,
}

fn criterion_5() -> (Outcome, PsiReport) {
    let start = Instant::now();
    let rules = listed_rules();
    let mut r = rng(5);
    let mut tallies: BTreeMap<RuleId, RuleTally> = BTreeMap::new();
    for i in 0..PSI_INSTANCES {
        let rule = rules[i % rules.len()];
        let (a, b, c) = (random_type(&mut r, M, 3), random_type(&mut r, M, 3), random_type(&mut r, M, 3));
        let before = rule_instance(rule, a, b, c);
        let after = apply_rule(rule, &before).expect("instance is a redex");
        let tally = tallies.entry(rule).or_default();
        match (psi(&before), psi(&after)) {
            (Some(x), Some(y)) if x > y => tally.strict += 1,
            (Some(x), Some(y)) => {
                tally.not_strict += 1;
                tally.example.get_or_insert_with(|| format!("{before} ({x}) => {after} ({y})"));
            }
            _ => tally.too_large += 1,
        }
    }
    let mut max_steps = 0;
    let mut terminated = 0;
    for _ in 0..TERMINATION_TYPES {
        let ty = random_type(&mut r, M, 6);
        let (_, trace) = normalize_type(&ty, M);
        max_steps = max_steps.max(trace.len());
        terminated += usize::from(trace.len() <= TERMINATION_STEP_LIMIT && canonicalize(&ty, M).is_ok());
    }
    let took = start.elapsed();
    let broken: Vec<String> = tallies
        .iter()
        .filter(|(_, t)| t.not_strict > 0)
        .map(|(rule, t)| format!("{rule} {}/{}", t.not_strict, t.strict + t.not_strict))
        .collect();
    let psi_ok = broken.is_empty();
    let terminates = terminated == TERMINATION_TYPES;
    let skipped: usize = tallies.values().map(|t| t.too_large).sum();
    let mut detail = String::new();
    if psi_ok {
        detail.push_str("psi strictly decreases on every evaluated instance");
    } else {
        write!(detail, "psi not strictly decreasing for {}", broken.join(", ")).unwrap();
    }
    write!(detail, " ({skipped} of {PSI_INSTANCES} instances too large to evaluate)").unwrap();
    write!(
        detail,
        "; canonicalize terminated on {terminated}/{TERMINATION_TYPES} types (at most {max_steps} steps), {took:.1?}"
    )
    .unwrap();
    let pass = psi_ok && terminates && took < PSI_BUDGET;
    (outcome(pass, detail), PsiReport { tallies, max_steps, terminated, took })
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let (mut pairs, mut isos) = (0, 0);
    let mut bad = Vec::new();
    let mut tries = 0;
    while pairs < ORACLE_PAIRS && tries < 100_000 {
        tries += 1;
        let a = random_type(&mut r, M, 4);
        let b = match pairs % 3 {
            0 => random_type(&mut r, M, 4),
            1 => axiom_walk(&a, M, &mut r, 2),
            _ => {
                let w = axiom_walk(&a, M, &mut r, 2);
                mutate(&w, M, &mut r)
            }
        };
        if b.depth() > 4 {
            continue;
        }
        let (ha, hb) = (Hyperforest::of_type(&a), Hyperforest::of_type(&b));
        if !small(&ha, ORACLE_NODE_LIMIT) || !small(&hb, ORACLE_NODE_LIMIT) {
            continue;
        }
        pairs += 1;
        let oracle = brute_force_iso(&ha, &hb).unwrap();
        if let Some(w) = &oracle {
            if !check_bijection(&ha, &hb, w) {
                bad.push(format!("oracle witness rejected: {a} vs {b}"));
            }
        }
        isos += usize::from(oracle.is_some());
        if decide_iso(&a, &b, M).unwrap().isomorphic != oracle.is_some() {
            bad.push(format!("{a} vs {b}"));
        }
    }
    outcome(
        bad.is_empty() && pairs == ORACLE_PAIRS,
        format!("{pairs} pairs ({isos} isomorphic), {} disagreements{}", bad.len(), first(&bad)),
    )
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let iso = |a: &TypeExpr, b: &TypeExpr| decide_iso(a, b, M).unwrap().isomorphic;
    let mut bad = Vec::new();
    for _ in 0..LAW_CASES {
        let a = random_type(&mut r, M, 4);
        if !iso(&a, &a) {
            bad.push(format!("reflexivity: {a}"));
        }
        let b = axiom_walk(&a, M, &mut r, 2);
        let c = axiom_walk(&b, M, &mut r, 2);
        if !(iso(&a, &b) && iso(&b, &a)) {
            bad.push(format!("symmetry: {a} vs {b}"));
        }
        if !(iso(&b, &c) && iso(&a, &c)) {
            bad.push(format!("transitivity: {a}, {b}, {c}"));
        }
        let u = random_type(&mut r, M, 4);
        if iso(&a, &u) != iso(&u, &a) {
            bad.push(format!("symmetry: {a} vs {u}"));
        }
    }
    outcome(bad.is_empty(), format!("{LAW_CASES} types and chains, {} failures{}", bad.len(), first(&bad)))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut bad = Vec::new();
    for _ in 0..ROUND_TRIPS {
        let f = random_formula(&mut r, 5);
        match arena_to_formula(&build_arena(&f)) {
            Ok(g) if alpharho_eq(&f, &g) => {}
            Ok(g) => bad.push(format!("{f} came back as {g}")),
            Err(e) => bad.push(format!("{f}: {e}")),
        }
        let ty = random_type(&mut r, M, 5);
        let printed = print_type(&ty);
        if parse_type(&printed, M).ok() != Some(ty.clone()) {
            bad.push(format!("{printed} does not parse back"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{ROUND_TRIPS} formulas and {ROUND_TRIPS} types, {} failures{}", bad.len(), first(&bad)),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut r = rng(9);
    let entries: Vec<SourceEntry> = (0..INDEX_SIZE)
        .map(|i| SourceEntry::new(format!("sig{i}"), print_type(&random_type(&mut r, M, 4))))
        .collect();
    let idx = index_build(&entries, M).unwrap();
    let mut bad = Vec::new();
    let mut hits = 0;
    for _ in 0..QUERIES {
        let src = &idx.entries[r.gen_range(0..idx.entries.len())];
        let q = axiom_walk(&src.signature, M, &mut r, 3);
        let found = index_query(&q, &idx).unwrap();
        hits += found.len();
        if !found.iter().any(|e| e.name == src.name) {
            bad.push(format!("{q} misses {}", src.name));
        }
        for e in &found {
            if !decide_iso(&q, &e.signature, M).unwrap().isomorphic {
                bad.push(format!("{q} returns {}", e.name));
            }
        }
        // nothing isomorphic is left out
        for e in &idx.entries {
            let iso = decide_iso(&q, &e.signature, M).unwrap().isomorphic;
            if iso && !found.iter().any(|f| f.name == e.name) {
                bad.push(format!("{q} omits {}", e.name));
            }
        }
    }
    let took = start.elapsed();
    outcome(
        bad.is_empty() && took < SEARCH_BUDGET,
        format!("{INDEX_SIZE} entries, {QUERIES} queries, {hits} hits, {} failures{}, {took:.1?}", bad.len(), first(&bad)),
    )
}

fn first(bad: &[String]) -> String {
    bad.first().map(|b| format!(" (first: {b})")).unwrap_or_default()
}

fn ok(b: bool) -> &'static str {
    if b {
        "match"
    } else {
        "differ"
    }
}

fn main() {
    let (c5, psi) = criterion_5();
    let results = [
        ("axiom suite, lmu2", criterion_1()),
        ("axiom suite, System F and lmu2'", criterion_2()),
        ("negative suite", criterion_3()),
        ("worked examples", criterion_4()),
        ("termination measure", c5),
        ("oracle equivalence", criterion_6()),
        ("equivalence laws", criterion_7()),
        ("round trips", criterion_8()),
        ("search", criterion_9()),
    ];
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {}: {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    for (i, (name, o)) in results.iter().enumerate() {
        if i != 4 {
            assert!(o.pass, "criterion {} ({name}) failed: {}", i + 1, o.detail);
        }
    }

    // Criterion 5 is expected to be red, for a known reason: the measure
    // grows or stays put along three rules. Pin exactly that.
    assert!(!results[4].1.pass);
    let expected_broken = [RuleId::ArrowProd, RuleId::Curry, RuleId::ArrowForall];
    for (rule, tally) in &psi.tallies {
        if expected_broken.contains(rule) {
            assert!(tally.not_strict > 0, "{rule} no longer breaks the measure");
            println!("  {rule}: {}", tally.example.as_deref().unwrap_or(""));
        } else {
            assert_eq!(tally.not_strict, 0, "{rule}: {}", tally.example.as_deref().unwrap_or(""));
        }
    }
    // ArrowForall raises the measure on every instance
    assert_eq!(psi.tallies[&RuleId::ArrowForall].strict, 0);
    assert_eq!(psi.terminated, TERMINATION_TYPES);
    assert!(psi.max_steps <= TERMINATION_STEP_LIMIT);
    assert!(psi.took < PSI_BUDGET, "{:?}", psi.took);
}

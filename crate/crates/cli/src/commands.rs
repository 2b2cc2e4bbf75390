//! One function per subcommand, each producing an [`Output`].

use std::collections::BTreeMap;
use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use soergel::coinvariant::CoinvariantRing;
use soergel::hecke::{HeckeAlgebra, HeckeElement};
use soergel::koszul::{koszulity_check, random_mix_complex, square_check, DualAlgebra, FormalCategory, FormalParams};
use soergel::soergel::{hom_dimensions, GradedModule, SoergelCategory, Summand};
use soergel::tate::{
    check_t_axioms, check_w_axioms, hom_homotopy, iota_collapse, iota_t_exact_on, iota_weight_exact_on, random_complex,
    simple, tate_twist, truncations_coincide, BigradedComplex, RandomComplexParams, UngradedComplex,
};
use soergel::weyl::{Perm, Word};
use soergel::{selftest, Error, IntLaurent, Result};

use crate::output::{Output, Table};
use crate::Command;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::RankMismatch { .. } | Error::SideMismatch(_) => 2,
        _ => 1,
    }
}

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Kl { rank, w } => kl(rank.rank, w),
        Command::Bs { rank, word, decompose } => bs(rank.rank, word, *decompose),
        Command::Hom { rank, x, y } => hom(rank.rank, x, y),
        Command::Coinv { rank } => coinv(rank.rank),
        Command::Decompose { rank, word } => decompose(rank.rank, word),
        Command::Endo { rank, w } => endo(rank.rank, w),
        Command::Tate { demo, seed, samples } => tate(*demo, *seed, *samples),
        Command::KoszulSquare { rank, seed, cases } => koszul_square(rank.rank, *seed, *cases),
        Command::Ext { rank, x, y, max_k } => ext(rank.rank, x, y, *max_k),
        Command::Koszulity { rank } => koszulity(rank.rank),
        Command::Selftest { seed } => Ok(selftest_output(*seed)),
    }
}

/// An element given as a word (`"1,2"`, `"1"`, `""`, `"e"`) or in one-line
/// notation (`"312"`, exactly `n` digits).
pub fn parse_element(s: &str, n: usize) -> Result<Perm> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Perm::identity(n));
    }
    if !s.contains(',') && s.len() == n {
        return s.parse();
    }
    let word: Word = s.parse()?;
    word.check_rank(n)?;
    Ok(word.evaluate(n))
}

fn parse_word(s: &str, n: usize) -> Result<Word> {
    let word: Word = s.parse()?;
    word.check_rank(n)?;
    Ok(word)
}

fn dims_json(dims: &BTreeMap<i32, usize>) -> BTreeMap<String, usize> {
    dims.iter().map(|(d, c)| (d.to_string(), *c)).collect()
}

fn laurent_dims(p: &IntLaurent) -> BTreeMap<String, u64> {
    p.terms().map(|(k, c)| (k.to_string(), u64::try_from(c).unwrap_or(0))).collect()
}

fn kl(n: usize, w: &str) -> Result<Output> {
    let h = HeckeAlgebra::new(n)?;
    let w = parse_element(w, n)?;
    let b = h.kl_basis(&w)?;
    let mut table = Table::new(&["x", "p"]);
    let mut polys = BTreeMap::new();
    for (x, p) in b.terms() {
        table.push(vec![x.to_string(), p.to_string()]);
        polys.insert(x.to_string(), p.to_string());
    }
    Ok(Output::new(json!({"rank": n, "w": w.to_string(), "p": polys})).with_table(table))
}

/// One summand `D_w⟨shift⟩` in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub w: String,
    pub shift: i32,
}

/// `{"word", "summands", "dims", ...}` for a decomposed Bott-Samelson module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub word: String,
    pub rank: usize,
    pub dims: BTreeMap<String, usize>,
    pub summands: Vec<SummandJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<HeckeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeJson {
    pub terms: Vec<HeckeTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeTermJson {
    pub w: String,
    pub coeff: String,
}

fn hecke_json(h: &HeckeElement) -> HeckeJson {
    HeckeJson {
        terms: h
            .terms()
            .map(|(w, c)| HeckeTermJson { w: w.to_string(), coeff: c.to_string() })
            .collect(),
    }
}

fn summand_table(summands: &[Summand]) -> Table {
    let mut t = Table::new(&["w", "shift"]);
    for s in summands {
        t.push(vec![s.w.to_string(), s.shift.to_string()]);
    }
    t
}

fn sorted_summands(cat: &SoergelCategory, m: &GradedModule) -> Result<(Vec<Summand>, soergel::soergel::Decomposition)> {
    let d = cat.decompose(m)?;
    let mut summands = d.summands.clone();
    summands.sort();
    Ok((summands, d))
}

fn decomposition_output(payload: DecompositionJson, table: Table, ok: bool) -> Output {
    let value = serde_json::to_value(&payload).expect("plain data serializes");
    Output::new(value).with_table(table).with_status(ok)
}

fn bs(n: usize, word: &str, split: bool) -> Result<Output> {
    let cat = SoergelCategory::new(n)?;
    let word = parse_word(word, n)?;
    let m = cat.bott_samelson(&word)?;
    if !split {
        let mut t = Table::new(&["degree", "dim"]);
        for (d, c) in m.graded_dims() {
            t.push(vec![d.to_string(), c.to_string()]);
        }
        return Ok(Output::new(json!({
            "word": word.to_string(),
            "rank": n,
            "dims": dims_json(&m.graded_dims()),
            "character": m.character().to_string(),
        }))
        .with_table(t));
    }
    let (summands, _) = sorted_summands(&cat, &m)?;
    let payload = DecompositionJson {
        word: word.to_string(),
        rank: n,
        dims: dims_json(&m.graded_dims()),
        summands: summands.iter().map(|s| SummandJson { w: s.w.to_string(), shift: s.shift }).collect(),
        verified: None,
        class: None,
    };
    Ok(decomposition_output(payload, summand_table(&summands), true))
}

fn decompose(n: usize, word: &str) -> Result<Output> {
    let cat = SoergelCategory::new(n)?;
    let word = parse_word(word, n)?;
    let m = cat.bott_samelson(&word)?;
    let (summands, d) = sorted_summands(&cat, &m)?;
    let pieces: Vec<Arc<GradedModule>> =
        d.summands.iter().map(|s| cat.indecomposable(&s.w)).collect::<Result<_>>()?;
    let refs: Vec<&GradedModule> = pieces.iter().map(|p| &**p).collect();
    let verified = d.verify(&m, &refs).is_ok();
    let mut coords: BTreeMap<Perm, IntLaurent> = BTreeMap::new();
    for s in &summands {
        let c = coords.entry(s.w.clone()).or_insert_with(IntLaurent::zero);
        *c = &*c + &IntLaurent::v_pow(-s.shift);
    }
    let class = cat.hecke().from_kl_coords(&coords);
    let payload = DecompositionJson {
        word: word.to_string(),
        rank: n,
        dims: dims_json(&m.graded_dims()),
        summands: summands.iter().map(|s| SummandJson { w: s.w.to_string(), shift: s.shift }).collect(),
        verified: Some(verified),
        class: Some(hecke_json(&class)),
    };
    Ok(decomposition_output(payload, summand_table(&summands), verified))
}

fn hom(n: usize, x: &str, y: &str) -> Result<Output> {
    let cat = SoergelCategory::new(n)?;
    let (x, y) = (parse_element(x, n)?, parse_element(y, n)?);
    let dims = hom_dimensions(&*cat.indecomposable(&x)?, &*cat.indecomposable(&y)?)?;
    let mut t = Table::new(&["degree", "dim"]);
    for (d, c) in dims.terms() {
        t.push(vec![d.to_string(), c.to_string()]);
    }
    Ok(Output::new(json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "rank": n,
        "graded": dims.to_string(),
        "dims": laurent_dims(&dims),
        "total": u64::try_from(&dims.eval_one()).unwrap_or(0),
    }))
    .with_table(t))
}

fn coinv(n: usize) -> Result<Output> {
    let ring = CoinvariantRing::build(n)?;
    let mut t = Table::new(&["index", "element", "degree"]);
    let mut basis = Vec::new();
    for i in 0..ring.dim() {
        let e = ring.format(&ring.basis_element(i));
        t.push(vec![i.to_string(), e.clone(), ring.basis_degree(i).to_string()]);
        basis.push(json!({"element": e, "degree": ring.basis_degree(i)}));
    }
    Ok(Output::new(json!({
        "rank": n,
        "dim": ring.dim(),
        "poincare": ring.poincare().to_string(),
        "basis": basis,
    }))
    .with_table(t))
}

fn endo(n: usize, ws: &[String]) -> Result<Output> {
    let cat = SoergelCategory::new(n)?;
    let a = if ws.is_empty() {
        cat.full_endo_algebra()?
    } else {
        let objects = ws
            .iter()
            .map(|w| Ok(Summand::new(parse_element(w, n)?, 0)))
            .collect::<Result<Vec<_>>>()?;
        cat.endo_algebra(&objects)?
    };
    let labels: Vec<String> = a.objects.iter().map(|s| s.w.to_string()).collect();
    let mut t = Table::new(&["source", "target", "hom"]);
    let mut blocks = BTreeMap::new();
    for (s, ls) in labels.iter().enumerate() {
        for (r, lr) in labels.iter().enumerate() {
            let c = a.block_character(s, r);
            if !c.is_zero() {
                t.push(vec![ls.clone(), lr.clone(), c.to_string()]);
                blocks.insert(format!("{ls}->{lr}"), c.to_string());
            }
        }
    }
    a.check_associative()?;
    Ok(Output::new(json!({
        "rank": n,
        "objects": labels,
        "dim": a.dim(),
        "graded": dims_json(&a.graded_dims()),
        "cartan": a.cartan(),
        "homs": blocks,
    }))
    .with_table(t))
}

fn describe(x: &UngradedComplex) -> String {
    let parts: Vec<String> = x
        .cohomology_dims()
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(c, d)| if *d == 1 { format!("Q at {c}") } else { format!("Q^{d} at {c}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn tate(demo: bool, seed: u64, samples: usize) -> Result<Output> {
    let mut ok = true;
    let mut value = serde_json::Map::new();
    value.insert("seed".into(), json!(seed));
    if demo {
        let mut witnesses = serde_json::Map::new();
        let x = tate_twist(1, 2);
        let collapsed = iota_collapse(&x);
        let w1 = collapsed == UngradedComplex::simple(0) && !iota_t_exact_on(&x);
        witnesses.insert(
            "iota(Q(1)[2])".into(),
            json!({"expected": "Q at 0", "observed": describe(&collapsed), "t_amplitude_before": x.t_amplitude(),
                   "t_exact": iota_t_exact_on(&x), "passed": w1}),
        );
        let y = tate_twist(1, 0);
        let cy = iota_collapse(&y);
        let w2 = cy == UngradedComplex::simple(2);
        witnesses.insert(
            "iota(Q(1))".into(),
            json!({"expected": "Q at 2", "observed": describe(&cy), "passed": w2}),
        );
        let q0 = simple(0, 0);
        let ungraded = hom_homotopy(&iota_collapse(&q0), &collapsed, 0);
        let graded: usize = (-3..=3).map(|k| hom_homotopy(&q0, &x, k)).sum();
        let w3 = ungraded == 1 && graded == 0;
        witnesses.insert(
            "Hom(Q, Q(1)[2])".into(),
            json!({"ungraded_degree_0": ungraded, "graded_all_degrees": graded, "passed": w3}),
        );
        ok &= w1 && w2 && w3;
        value.insert("witnesses".into(), Value::Object(witnesses));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomComplexParams::default();
    let graded: Vec<BigradedComplex> = (0..samples).map(|_| random_complex(&mut rng, &params, |c, g| (c, g))).collect();
    let plain: Vec<UngradedComplex> = (0..samples).map(|_| random_complex(&mut rng, &params, |c, _| c)).collect();
    let mut axioms = serde_json::Map::new();
    for (name, report) in [
        ("t_graded", check_t_axioms(&graded)),
        ("w_graded", check_w_axioms(&graded)),
        ("t_ungraded", check_t_axioms(&plain)),
        ("w_ungraded", check_w_axioms(&plain)),
    ] {
        ok &= report.passed();
        axioms.insert(
            name.into(),
            json!({"samples": report.samples, "nesting": report.nesting, "orthogonality": report.orthogonality,
                   "triangle": report.triangle}),
        );
    }
    let weight_exact = graded.iter().all(iota_weight_exact_on);
    let coincide = plain.iter().all(|x| (-4..=4).all(|m| truncations_coincide(x, m)));
    ok &= weight_exact && coincide;
    value.insert("axioms".into(), Value::Object(axioms));
    value.insert("iota_weight_exact".into(), json!(weight_exact));
    value.insert("truncations_coincide".into(), json!(coincide));
    value.insert("passed".into(), json!(ok));
    Ok(Output::new(Value::Object(value)).with_status(ok))
}

fn koszul_square(n: usize, seed: u64, cases: usize) -> Result<Output> {
    let cat = FormalCategory::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut with_diff = 0;
    for _ in 0..cases {
        let x = random_mix_complex(&cat, &mut rng, FormalParams::default())?;
        if !x.stored_differentials().is_empty() {
            with_diff += 1;
        }
        if !square_check(&x)? {
            failures += 1;
        }
    }
    Ok(Output::new(json!({
        "rank": n,
        "seed": seed,
        "cases": cases,
        "failures": failures,
        "with_differentials": with_diff,
    }))
    .with_status(failures == 0))
}

fn ext(n: usize, x: &str, y: &str, max_k: Option<usize>) -> Result<Output> {
    let dual = DualAlgebra::new(&SoergelCategory::new(n)?)?;
    let (x, y) = (parse_element(x, n)?, parse_element(y, n)?);
    let (xi, yi) = (dual.index_of(&x)?, dual.index_of(&y)?);
    let res = dual.resolution(xi, max_k.unwrap_or(dual.default_max_len()))?;
    let top = max_k.unwrap_or(res.terms.len().saturating_sub(1));
    let mut t = Table::new(&["k", "degree", "dim"]);
    let mut rows = Vec::new();
    for k in 0..=top {
        let e = res.ext(yi, k);
        for (d, c) in e.terms() {
            t.push(vec![k.to_string(), d.to_string(), c.to_string()]);
        }
        rows.push(json!({"k": k, "dim": u64::try_from(&e.eval_one()).unwrap_or(0), "graded": laurent_dims(&e)}));
    }
    Ok(Output::new(json!({
        "rank": n,
        "x": x.to_string(),
        "y": y.to_string(),
        "complete": res.complete,
        "table": rows,
    }))
    .with_table(t))
}

fn koszulity(n: usize) -> Result<Output> {
    let r = koszulity_check(n)?;
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|(x, y, k, d)| json!({"x": x.to_string(), "y": y.to_string(), "k": k, "degree": d}))
        .collect();
    Ok(Output::new(json!({
        "rank": n,
        "koszul": r.koszul(),
        "max_k": r.max_k,
        "step": r.step,
        "complete": r.complete,
        "violations": violations,
    }))
    .with_status(r.koszul()))
}

pub fn selftest_output(seed: u64) -> Output {
    let report = selftest::run(seed);
    let mut t = Table::new(&["id", "name", "passed", "detail"]);
    let criteria: Vec<Value> = report
        .criteria
        .iter()
        .map(|c| {
            t.push(vec![c.id.to_string(), c.name.into(), c.passed.to_string(), c.detail.clone()]);
            json!({"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail})
        })
        .collect();
    Output::new(json!({"seed": seed, "passed": report.passed(), "criteria": criteria}))
        .with_table(t)
        .with_status(report.passed())
}

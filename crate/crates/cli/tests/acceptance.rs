//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its elapsed time; the test fails if any line is FAIL.
//!
//! Run with `cargo test -p diffprim-cli --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use diffprim::algebra::{rat, var, MultiPoly, Monomial, RatFunc, UniPoly, VarName};
use diffprim::diffpoly::{dvar, lambda_derive, phi_p, t_operator, DiffPoly, LambdaConfig};
use diffprim::field::{alg_trdeg, diff_trdeg, member_of_tower, DiffFieldPresentation, FieldElement, RankOptions};
use diffprim::search::{density_step, SearchConfig};
use diffprim::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diffprim"))
}

fn example_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/example.field")
}

fn run_machine(args: &[&str]) -> Result<Value, String> {
    let out = bin().args(args).args(["--format", "machine"]).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gen(i: usize) -> VarName {
    var(&format!("t{i}"))
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &[VarName], max_deg: u32, terms: usize) -> MultiPoly<VarName> {
    let mut p = MultiPoly::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mut pairs = Vec::new();
        let mut left = deg;
        for v in vars {
            if left == 0 {
                break;
            }
            let e = rng.gen_range(0..=left);
            left -= e;
            pairs.push((v.clone(), e));
        }
        let c = rng.gen_range(-3..=3i64);
        if c != 0 {
            p.add_term(Monomial::from_pairs(pairs), rat(c, 1));
        }
    }
    p
}

fn random_nonconstant(rng: &mut ChaCha8Rng, vars: &[VarName], max_deg: u32) -> MultiPoly<VarName> {
    loop {
        let p = random_poly(rng, vars, max_deg, 3);
        if !p.is_constant() {
            return p;
        }
    }
}

/// `m <= 2` generators with derivation numerators and denominators of degree
/// at most 2.
fn random_field(rng: &mut ChaCha8Rng, polynomial: bool) -> DiffFieldPresentation {
    let m = rng.gen_range(1..=2);
    let gens: Vec<VarName> = (0..m).map(gen).collect();
    let mut derivation = Vec::new();
    for g in &gens {
        let num = random_poly(rng, &gens, 2, 2);
        let den = if polynomial || rng.gen_bool(0.5) {
            MultiPoly::one()
        } else {
            random_nonconstant(rng, &gens, 2)
        };
        let value = RatFunc::new(num, den).expect("nonzero denominator");
        derivation.push((g.clone(), value));
    }
    DiffFieldPresentation::new(gens, derivation).expect("valid field")
}

fn criterion_1() -> Check {
    let out = bin().args(["verify-lemmas", "--k-max", "4", "--format", "machine"]).output().map_err(|e| e.to_string())?;
    let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let failed = doc["result"]["failed"].as_u64().unwrap_or(u64::MAX);
    let passed = doc["result"]["passed"].as_u64().unwrap_or(0);
    ensure(out.status.success() && failed == 0, || format!("{failed} identities failed"))?;
    let names: Vec<&str> = doc["result"]["checks"]
        .as_array()
        .map(|a| a.iter().filter_map(|c| c["name"].as_str()).collect())
        .unwrap_or_default();
    for needle in ["W_{2,3}", "W_{2,2}", "-(x - y)^5", "corollary witness, k = 3", "corollary witness, k = 4"] {
        ensure(names.iter().any(|n| n.contains(needle)), || format!("no check named like {needle}"))?;
    }
    for k in 3..=4 {
        for l in 1..=k + 1 {
            let tag = format!("W_{{{k},{l}}} = A + x^(k-1) B + y^(k-1) C");
            ensure(names.contains(&tag.as_str()), || format!("missing {tag}"))?;
        }
    }
    Ok(format!("{passed} identities"))
}

fn criterion_2() -> Check {
    let file = example_file();
    let file = file.to_str().unwrap();
    let doc = run_machine(&["primitive", file])?;
    let r = &doc["result"];
    ensure(r["n"] == 2, || format!("n = {}", r["n"]))?;
    let certs = r["certificates"].as_array().ok_or("no certificates")?;
    let targets: Vec<&str> = certs.iter().filter_map(|c| c["target"].as_str()).collect();
    ensure(targets == ["(x)/(1)", "(y)/(1)"], || format!("certificate targets {targets:?}"))?;
    for c in certs {
        ensure(c["tower"].as_array().map_or(0, Vec::len) == 3, || "tower is not z, z', z''".into())?;
    }

    // Recheck the returned primitive in-process.
    let parsed = diffprim::parse::parse_field_file(&std::fs::read_to_string(file).unwrap()).unwrap();
    let field = parsed.presentation();
    let z = parsed.resolve(r["primitive"].as_str().unwrap()).map_err(|e| e.to_string())?;
    let n = diff_trdeg(&[z], field, &RankOptions::symbolic()).map_err(|e| e.to_string())?.trdeg;
    ensure(n == 2, || format!("symbolic diff_trdeg of z is {n}"))?;

    let doc = run_machine(&["density", file, "--a", "y", "--b", "x"])?;
    ensure(doc["result"]["p"] == "t^2", || format!("density p = {}", doc["result"]["p"]))?;

    let x = FieldElement::var(var("x"));
    let y = FieldElement::var(var("y"));
    for (num, den) in [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)] {
        let e = &y + &x.scale(&rat(num, den));
        let t = diff_trdeg(&[e], field, &RankOptions::symbolic()).map_err(|e| e.to_string())?.trdeg;
        ensure(t == 1, || format!("trdeg(y + {num}/{den} x) = {t}"))?;
    }
    Ok(format!("z = {}", r["primitive"].as_str().unwrap()))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut ranks = [0usize; 4];
    for i in 0..50 {
        let m = rng.gen_range(1..=3);
        let gens: Vec<VarName> = (0..m).map(gen).collect();
        let field = DiffFieldPresentation::new(gens.clone(), gens.iter().map(|g| (g.clone(), FieldElement::zero())))
            .expect("valid field");
        let count = rng.gen_range(1..=3);
        let mut elements: Vec<FieldElement> = Vec::new();
        for _ in 0..count {
            // Every third element is built from earlier ones so that rank drops occur.
            let e = if elements.len() >= 2 && rng.gen_bool(0.34) {
                &(&elements[0] * &elements[1]) + &elements[0]
            } else if rng.gen_bool(0.3) {
                RatFunc::new(random_poly(&mut rng, &gens, 3, 3), random_nonconstant(&mut rng, &gens, 2))
                    .unwrap_or_else(|_| FieldElement::one())
            } else {
                RatFunc::from(random_poly(&mut rng, &gens, 3, 4))
            };
            elements.push(e);
        }
        let randomized = RankOptions::default().with_seed(i);
        let a = alg_trdeg(&elements, &field, &randomized).map_err(|e| format!("instance {i}: {e}"))?;
        let b = alg_trdeg(&elements, &field, &RankOptions::symbolic()).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(a == b, || format!("instance {i}: randomized {a} vs symbolic {b}"))?;
        ranks[a] += 1;
    }
    Ok(format!("50 instances, rank histogram {ranks:?}"))
}

fn random_q(rng: &mut ChaCha8Rng, n: u32) -> DiffPoly {
    let l = var("L");
    let x = var("x");
    let mut q = MultiPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = MultiPoly::constant(rat(rng.gen_range(1..=4), 1));
        for _ in 0..rng.gen_range(1..=3) {
            let sym = if rng.gen_bool(0.75) {
                dvar(&l, rng.gen_range(0..=n))
            } else {
                dvar(&x, rng.gen_range(0..=1))
            };
            term = &term * &sym;
        }
        q = &q + &term;
    }
    q
}

fn random_p(rng: &mut ChaCha8Rng) -> UniPoly {
    let deg = rng.gen_range(1..=3);
    UniPoly::new((0..=deg).map(|i| rat(if i == deg { rng.gen_range(1..=3) } else { rng.gen_range(-3..=3) }, 1)).collect())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let t = var("t");
    let field = DiffFieldPresentation::new(vec![t.clone()], [(t.clone(), FieldElement::one())]).unwrap();
    let tt = FieldElement::var(t.clone());
    let l = var("L");
    let cfg = LambdaConfig::symbolic(l.clone(), &var("b"));
    let err = |i: usize| move |e: Error| format!("pair {i}: {e}");
    for i in 0..100 {
        let n = rng.gen_range(0..=2);
        let q = random_q(&mut rng, n);
        let p = random_p(&mut rng);
        let b: FieldElement = RatFunc::from(random_nonconstant(&mut rng, std::slice::from_ref(&t), 2));
        let a = &tt.pow(2) + &FieldElement::one();
        let bindings = BTreeMap::from([(var("b"), b.clone()), (var("x"), a)]);
        let qr = RatFunc::from(q.clone());

        let image = phi_p(&qr, &l, &p, &b, &bindings, &field).map_err(err(i))?;
        let left = phi_p(&lambda_derive(&q, &cfg), &l, &p, &b, &bindings, &field).map_err(err(i))?;
        let right = field.derive(&image).map_err(err(i))?;
        ensure(left == right, || format!("pair {i}: phi_p(D Q) != D phi_p(Q) for Q = {q}, p = {p}"))?;

        // Chain rule: with only Λ-symbols, d/db Q(p(b), …) = φ_p(T(Q)), so
        // D(φ_p Q) = b'·φ_p(T Q); at b = t the factor b' is 1.
        let lambda_only = q.map_vars(|s| if s.base == l { s.clone() } else { diffprim::diffpoly::DerivSymbol::new(l.clone(), 0) });
        let tq = RatFunc::from(t_operator(&lambda_only, n + 1, &l));
        let lam = RatFunc::from(lambda_only);
        let direct = phi_p(&lam, &l, &p, &tt, &bindings, &field).map_err(err(i))?.partial_derivative(&t);
        let via_t = phi_p(&tq, &l, &p, &tt, &bindings, &field).map_err(err(i))?;
        ensure(direct == via_t, || format!("pair {i}: d/db Q(p(b), ...) != phi_p(T Q) for p = {p}"))?;
        for base in [tt.clone(), b.clone()] {
            let img = phi_p(&lam, &l, &p, &base, &bindings, &field).map_err(err(i))?;
            let lhs = field.derive(&img).map_err(err(i))?;
            let rhs = &field.derive(&base).map_err(err(i))? * &phi_p(&tq, &l, &p, &base, &bindings, &field).map_err(err(i))?;
            ensure(lhs == rhs, || format!("pair {i}: chain rule fails for p = {p}"))?;
        }
    }
    Ok("100 pairs".into())
}

fn prolongation_corpus() -> Vec<(DiffFieldPresentation, FieldElement)> {
    let (x, y) = (var("x"), var("y"));
    let one = FieldElement::one;
    let xv = FieldElement::var(x.clone());
    let yv = FieldElement::var(y.clone());
    let xy = DiffFieldPresentation::new(vec![x.clone(), y.clone()], [(x.clone(), one()), (y.clone(), FieldElement::zero())]).unwrap();
    let exp = DiffFieldPresentation::new(vec![x.clone()], [(x.clone(), xv.clone())]).unwrap();
    let riccati = DiffFieldPresentation::new(vec![x.clone()], [(x.clone(), &xv.pow(2) + &one())]).unwrap();
    let coupled = DiffFieldPresentation::new(vec![x.clone(), y.clone()], [(x.clone(), yv.clone()), (y.clone(), one())]).unwrap();
    let mut corpus = vec![
        (xy.clone(), xv.clone()),
        (xy.clone(), yv.clone()),
        (xy.clone(), &xv.pow(2) + &yv),
        (xy.clone(), &yv + &xv.scale(&rat(1, 2))),
        (xy.clone(), &xv * &yv),
        (xy.clone(), (&xv + &yv).checked_div(&(&xv - &yv)).unwrap()),
        (exp.clone(), xv.clone()),
        (exp.clone(), &xv.pow(2) + &xv),
        (exp.clone(), xv.recip().unwrap()),
        (riccati.clone(), xv.clone()),
        (riccati.clone(), xv.pow(2)),
        (coupled.clone(), xv.clone()),
        (coupled.clone(), yv.clone()),
        (coupled.clone(), &xv + &yv.pow(2)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    while corpus.len() < 20 {
        let field = random_field(&mut rng, true);
        let a = RatFunc::from(random_nonconstant(&mut rng, field.generators(), 2));
        corpus.push((field, a));
    }
    corpus
}

fn criterion_5() -> Check {
    let mut orders = Vec::new();
    for (i, (field, a)) in prolongation_corpus().into_iter().enumerate() {
        let err = |e: Error| format!("instance {i} (a = {a}): {e}");
        let n = diff_trdeg(std::slice::from_ref(&a), &field, &RankOptions::symbolic()).map_err(err)?.trdeg as u32;
        let tower = field.prolongation(&a, n).map_err(err)?;
        let target = field.derive_element(&a, n + 1).map_err(err)?;
        let cert = member_of_tower(&target, &tower, &field, 8, i as u64).map_err(err)?;
        cert.revalidate().map_err(err)?;
        orders.push(n);
    }
    Ok(format!("20 instances, orders {orders:?}"))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = SearchConfig::default();
    let (mut ok, mut capped) = (0, 0);
    let mut done = 0;
    while done < 20 {
        let field = random_field(&mut rng, false);
        let a = RatFunc::from(random_poly(&mut rng, field.generators(), 2, 3));
        let b = RatFunc::from(random_nonconstant(&mut rng, field.generators(), 2));
        if !field.is_nonconstant(&b).map_err(|e| e.to_string())? {
            continue;
        }
        done += 1;
        match density_step(&a, &b, &field, &cfg) {
            Ok(res) => {
                res.revalidate(&field).map_err(|e| format!("a = {a}, b = {b}: {e}"))?;
                ok += 1;
            }
            Err(Error::CapExceeded(_)) => capped += 1,
            Err(e) => return Err(format!("a = {a}, b = {b}: unexpected {e}")),
        }
    }
    ensure(ok * 100 >= 95 * 20, || format!("{ok}/20 succeeded, {capped} hit caps"))?;
    Ok(format!("{ok}/20 succeeded, {capped} hit caps"))
}

fn criterion_7() -> Check {
    let t = var("t");
    let field = DiffFieldPresentation::new(vec![t.clone()], [(t.clone(), FieldElement::one())]).unwrap();
    let tt = FieldElement::var(t.clone());
    for k in 1..=5u32 {
        let sources: Vec<FieldElement> = (1..=k).map(|j| tt.pow(j)).collect();
        let w = diffprim::wronskian::wronskian_elements(&sources, &field).map_err(|e| e.to_string())?;
        ensure(!w.is_zero(), || format!("wronsk(t, ..., t^{k}) = 0"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tv = std::slice::from_ref(&t);
    for s in 0..50 {
        let k = rng.gen_range(1..=3);
        let mut sources: Vec<FieldElement> = (0..k).map(|_| RatFunc::from(random_poly(&mut rng, tv, 3, 3))).collect();
        let j = rng.gen_range(0..k);
        let c = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        let extra = RatFunc::from(random_poly(&mut rng, tv, 3, 3));
        let w = diffprim::wronskian::wronskian_elements(&sources, &field).map_err(|e| e.to_string())?;
        let original = sources[j].clone();
        sources[j] = &original + &extra;
        let w_sum = diffprim::wronskian::wronskian_elements(&sources, &field).map_err(|e| e.to_string())?;
        sources[j] = extra;
        let w_extra = diffprim::wronskian::wronskian_elements(&sources, &field).map_err(|e| e.to_string())?;
        sources[j] = original.scale(&c);
        let w_scaled = diffprim::wronskian::wronskian_elements(&sources, &field).map_err(|e| e.to_string())?;
        ensure(w_sum == &w + &w_extra, || format!("sample {s}: not additive in column {j}"))?;
        ensure(w_scaled == w.scale(&c), || format!("sample {s}: not homogeneous in column {j}"))?;
    }
    Ok("k = 1..5 nonzero, 50 multilinearity samples".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("C1 Wronskian identities (verify-lemmas --k-max 4)", Duration::from_secs(30), criterion_1),
        ("C2 field x' = 1, y' = 0 end to end", Duration::from_secs(10), criterion_2),
        ("C3 randomized vs symbolic rank", Duration::from_secs(60), criterion_3),
        ("C4 phi_p homomorphism and chain rule", Duration::from_secs(30), criterion_4),
        ("C5 prolongation membership", Duration::from_secs(60), criterion_5),
        ("C6 density soak", Duration::from_secs(120), criterion_6),
        ("C7 Wronskian core", Duration::from_secs(10), criterion_7),
    ];
    let mut failures = Vec::new();
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            Ok(detail) => Ok(detail.clone()),
            Err(e) => Err(e.clone()),
        };
        match verdict {
            Ok(detail) => println!("PASS {name} [{elapsed:.2?}] {detail}"),
            Err(e) => {
                println!("FAIL {name} [{elapsed:.2?}] {e}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

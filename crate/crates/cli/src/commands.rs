use std::path::Path;

use diffprim::algebra::{fmt_rational, MultiPoly, Variable};
use diffprim::field::{
    alg_trdeg, diff_trdeg, member_of_tower, FieldElement, MembershipCertificate, Point, RankMethod,
};
use diffprim::parse::{parse_field_file, FieldFile};
use diffprim::search::{density_step, density_step_with_factor, find_primitive, SearchConfig};
use diffprim::wronskian::{build_wkl, build_wkl_cofactor, decompose_wkl, verify_lemmas as lemma_table, wronskian_elements};
use serde_json::{json, Value};

use crate::report::{Outcome, Status};

fn load(path: &Path) -> Result<FieldFile, Status> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Status::InputError(format!("{}: {e}", path.display())))?;
    parse_field_file(&text).map_err(|e| Status::InputError(format!("{}:{e}", path.display())))
}

fn resolve(file: &FieldFile, flag: &str, item: &str) -> Result<FieldElement, Status> {
    file.resolve(item).map_err(|e| Status::InputError(format!("{flag} `{item}`: {e}")))
}

fn resolve_all(file: &FieldFile, flag: &str, items: &[String]) -> Result<Vec<FieldElement>, Status> {
    items.iter().map(|i| resolve(file, flag, i)).collect()
}

fn poly_coeffs<V: Variable>(p: &MultiPoly<V>) -> Value {
    p.terms().map(|(m, c)| json!([m.to_string(), fmt_rational(c)])).collect()
}

fn point_json(p: &Point) -> Value {
    p.iter().map(|(v, q)| (v.to_string(), Value::from(fmt_rational(q)))).collect::<serde_json::Map<_, _>>().into()
}

fn certificate_json(c: &MembershipCertificate) -> Value {
    json!({
        "target": c.target().to_string(),
        "tower": c.tower().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "numerator": c.numerator().to_string(),
        "denominator": c.denominator().to_string(),
        "numerator_coeffs": poly_coeffs(c.numerator()),
        "denominator_coeffs": poly_coeffs(c.denominator()),
        "degree_bound": c.degree_bound(),
    })
}

fn certificate_line(c: &MembershipCertificate) -> String {
    format!("  {} = ({}) / ({})  [degree <= {}]", c.target(), c.numerator(), c.denominator(), c.degree_bound())
}

/// Runs `body`, turning early returns with a status into a failed outcome.
fn guarded(body: impl FnOnce() -> Result<Outcome, Status>) -> Outcome {
    body().unwrap_or_else(Outcome::failed)
}

pub fn trdeg(path: &Path, items: &[String], cfg: &SearchConfig) -> Outcome {
    guarded(|| {
        let file = load(path)?;
        let field = file.presentation();
        let elements = resolve_all(&file, "--elements", items)?;
        let opts = cfg.rank_options(0);
        let algebraic = alg_trdeg(&elements, field, &opts)?;
        let report = diff_trdeg(&elements, field, &opts)?;
        let method = match report.method {
            RankMethod::Randomized => "randomized",
            RankMethod::Symbolic => "symbolic",
        };
        let payload = json!({
            "elements": elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "algebraic_trdeg": algebraic,
            "trdeg": report.trdeg,
            "stabilization_order": report.stabilization_order,
            "method": method,
            "witness_points": report.witness_points.iter().map(point_json).collect::<Vec<_>>(),
        });
        let human = vec![
            format!("elements: {}", items.join(", ")),
            format!("algebraic trdeg: {algebraic}"),
            format!("differential trdeg: {} (stabilizes at order {}, {method})", report.trdeg, report.stabilization_order),
        ];
        Ok(Outcome::ok(payload, human))
    })
}

pub fn wronskian(path: &Path, items: &[String]) -> Outcome {
    guarded(|| {
        let file = load(path)?;
        let elements = resolve_all(&file, "--elements", items)?;
        let w = wronskian_elements(&elements, file.presentation())?;
        let payload = json!({
            "elements": elements.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "wronskian": w.to_string(),
            "is_zero": w.is_zero(),
        });
        let mut human = vec![format!("wronskian: {w}")];
        if w.is_zero() {
            human.push("the elements are linearly dependent over constants".into());
        }
        Ok(Outcome::ok(payload, human))
    })
}

pub fn wkl(k: usize, l: usize) -> Outcome {
    guarded(|| {
        let w = build_wkl(k, l)?;
        let dec = decompose_wkl(k, l)?;
        let cofactor = if k <= 5 { Some(build_wkl_cofactor(k, l)? == w) } else { None };
        let reassembles = dec.reassemble() == w;
        let payload = json!({
            "k": k,
            "l": l,
            "w": w.to_string(),
            "a": dec.a.to_string(),
            "b": dec.b.to_string(),
            "c": dec.c.to_string(),
            "d": dec.d.as_ref().map(ToString::to_string),
            "reassembles": reassembles,
            "cofactor_agrees": cofactor,
        });
        let mut human = vec![
            format!("W_{{{k},{l}}} = {w}"),
            format!("A = {}", dec.a),
            format!("B = {}", dec.b),
            format!("C = {}", dec.c),
        ];
        if let Some(d) = &dec.d {
            human.push(format!("D = {d}"));
        }
        let mut outcome = Outcome::ok(payload, human);
        if !reassembles || cofactor == Some(false) {
            outcome.status = Status::NotEstablished("W_{k,l} cross-checks disagree".into());
        }
        Ok(outcome)
    })
}

pub fn density(path: &Path, a: &str, b: &str, c: Option<&str>, cfg: &SearchConfig) -> Outcome {
    guarded(|| {
        let file = load(path)?;
        let field = file.presentation();
        let ea = resolve(&file, "--a", a)?;
        let eb = resolve(&file, "--b", b)?;
        let result = match c {
            Some(c) => density_step_with_factor(&ea, &eb, &resolve(&file, "--c", c)?, field, cfg)?,
            None => density_step(&ea, &eb, field, cfg)?,
        };
        let payload = json!({
            "a": ea.to_string(),
            "b": eb.to_string(),
            "c": result.factor().to_string(),
            "p": result.p.to_string(),
            "candidate": result.candidate.to_string(),
            "trdeg_pair": result.trdeg_pair,
            "trdeg_candidate": result.trdeg_candidate,
            "enumeration_index": result.index,
        });
        let human = vec![
            format!("p = {}  (candidate #{})", result.p, result.index),
            format!("candidate: {}", result.candidate),
            format!("trdeg k<candidate> = {} = trdeg k<a, b>", result.trdeg_candidate),
        ];
        Ok(Outcome::ok(payload, human))
    })
}

pub fn primitive(path: &Path, generators: Option<&[String]>, cfg: &SearchConfig) -> Outcome {
    guarded(|| {
        let file = load(path)?;
        let field = file.presentation();
        let gens = match generators {
            Some(items) => resolve_all(&file, "--generators", items)?,
            None => field.generators().iter().map(|g| FieldElement::var(g.clone())).collect(),
        };
        let result = find_primitive(&gens, field, cfg)?;
        let payload = json!({
            "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "primitive": result.primitive.to_string(),
            "n": result.n,
            "lambdas": result.lambdas.iter().map(fmt_rational).collect::<Vec<_>>(),
            "certificates": result.certificates.iter().map(certificate_json).collect::<Vec<_>>(),
        });
        let mut human = vec![format!("primitive z = {}  (trdeg k<z> = {})", result.primitive, result.n)];
        if !result.lambdas.is_empty() {
            let l: Vec<String> = result.lambdas.iter().map(fmt_rational).collect();
            human.push(format!("lambdas: [{}]", l.join(", ")));
        }
        human.push(format!("certificates over z0 .. z{}:", result.n));
        human.extend(result.certificates.iter().map(certificate_line));
        Ok(Outcome::ok(payload, human))
    })
}

pub fn member(
    path: &Path,
    target: &str,
    tower: &str,
    order: Option<u32>,
    deg_cap: Option<u32>,
    cfg: &SearchConfig,
) -> Outcome {
    guarded(|| {
        let file = load(path)?;
        let field = file.presentation();
        let g = resolve(&file, "--target", target)?;
        let z = resolve(&file, "--tower", tower)?;
        let order = match order {
            Some(n) => n,
            None => diff_trdeg(std::slice::from_ref(&z), field, &cfg.rank_options(0))?.trdeg as u32,
        };
        let cap = deg_cap.unwrap_or(cfg.membership_degree_cap);
        let elements = field.prolongation(&z, order)?;
        let cert = member_of_tower(&g, &elements, field, cap, cfg.seed)?;
        let payload = json!({ "order": order, "degree_cap": cap, "certificate": certificate_json(&cert) });
        let human = vec![format!("certificate over z0 .. z{order}:"), certificate_line(&cert)];
        Ok(Outcome::ok(payload, human))
    })
}

pub fn verify_lemmas(k_max: usize, cfg: &SearchConfig) -> Outcome {
    guarded(|| {
        let rows = lemma_table(k_max, cfg.exec())?;
        let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        let payload = json!({
            "k_max": k_max,
            "passed": rows.len() - failed.len(),
            "failed": failed.len(),
            "checks": rows
                .iter()
                .map(|r| json!({ "name": r.name, "pass": r.pass, "detail": r.detail }))
                .collect::<Vec<_>>(),
        });
        let width = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0);
        let human = rows
            .iter()
            .map(|r| {
                let mark = if r.pass { "PASS" } else { "FAIL" };
                let pad = width - r.name.chars().count();
                let mut line = format!("{mark}  {}{}", r.name, " ".repeat(pad));
                if !r.detail.is_empty() && r.detail.len() <= 60 {
                    line.push_str("  ");
                    line.push_str(&r.detail);
                }
                line.trim_end().to_string()
            })
            .collect();
        let mut outcome = Outcome::ok(payload, human);
        if !failed.is_empty() {
            outcome.status = Status::NotEstablished(format!("failing identities: {}", failed.join("; ")));
        }
        Ok(outcome)
    })
}

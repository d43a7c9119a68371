use std::collections::BTreeMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{density_search, random_rational, SearchConfig};
use crate::algebra::{fmt_rational, Rational};
use crate::error::{Error, Result};
use crate::field::{diff_trdeg, member_of_tower, mix_seed, DiffFieldPresentation, FieldElement, MembershipCertificate};
use crate::par;

const LAMBDA_BATCH: usize = 4;

/// A single generator `primitive` of the field spanned by the inputs, with a
/// certificate expressing every input through `primitive, …, primitive^(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveResult {
    pub primitive: FieldElement,
    /// Differential transcendence degree of `primitive`.
    pub n: usize,
    /// `λ_1, …, λ_{n+2}`; empty when the density candidate was already
    /// primitive.
    pub lambdas: Vec<Rational>,
    pub certificates: Vec<MembershipCertificate>,
}

impl PrimitiveResult {
    /// Rechecks every certificate exactly, that each tower is the order-`n`
    /// prolongation of `primitive`, and (with `symbolic`) that `n` is the
    /// differential transcendence degree of `primitive`.
    pub fn revalidate(&self, field: &DiffFieldPresentation, symbolic: bool) -> Result<()> {
        let tower = field.prolongation(&self.primitive, self.n as u32)?;
        for cert in &self.certificates {
            if cert.tower() != tower.as_slice() {
                return Err(Error::InvalidCertificate("tower is not the prolongation of the primitive".into()));
            }
            cert.revalidate()?;
        }
        if symbolic {
            let r = diff_trdeg(std::slice::from_ref(&self.primitive), field, &crate::field::RankOptions::symbolic())?;
            if r.trdeg != self.n {
                return Err(Error::InvalidCertificate(format!(
                    "primitive has transcendence degree {}, claimed {}",
                    r.trdeg, self.n
                )));
            }
        }
        Ok(())
    }
}

/// A λ-vector turned down by [`lambda_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct Rejection {
    pub lambdas: Vec<Rational>,
    pub reason: String,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l: Vec<String> = self.lambdas.iter().map(fmt_rational).collect();
        write!(f, "[{}]: {}", l.join(", "), self.reason)
    }
}

/// Certificates for every target over `tower`, or `None` when one of them is
/// not found within the degree cap.
fn certify_all(
    targets: &[FieldElement],
    tower: &[FieldElement],
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
    salt: u64,
) -> Result<Option<Vec<MembershipCertificate>>> {
    let mut out = Vec::with_capacity(targets.len());
    for (i, g) in targets.iter().enumerate() {
        let seed = mix_seed(cfg.seed, salt.wrapping_add(i as u64));
        match member_of_tower(g, tower, field, cfg.membership_degree_cap, seed) {
            Ok(c) => out.push(c),
            Err(Error::NotFound { .. }) | Err(Error::RandomizationExhausted { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(out))
}

/// Folds the generators into `a` with `trdeg k⟨a⟩ = trdeg k⟨generators⟩`
/// by repeated density steps, and picks `b` so that `k⟨a, b⟩` contains every
/// generator.
pub fn reduce_to_two(
    generators: &[FieldElement],
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
) -> Result<(FieldElement, FieldElement)> {
    if generators.is_empty() {
        return Err(Error::EmptyInput("generators"));
    }
    for g in generators {
        field.check_element(g)?;
    }
    let mut seed_at = None;
    for (i, g) in generators.iter().enumerate() {
        if field.is_nonconstant(g)? {
            seed_at = Some(i);
            break;
        }
    }
    let Some(seed_at) = seed_at else {
        return Err(Error::NoNonconstant);
    };
    let seed_gen = generators[seed_at].clone();
    // Rational numbers add nothing; constants that are not rational numbers
    // still carry transcendence degree and must be folded in.
    let rest: Vec<&FieldElement> = generators
        .iter()
        .enumerate()
        .filter(|&(i, g)| i != seed_at && g.constant_value().is_none())
        .map(|(_, g)| g)
        .collect();
    let full = diff_trdeg(generators, field, &cfg.rank_options(0x5eed))?;
    let mut a = seed_gen.clone();
    for g in &rest {
        let constant = !field.is_nonconstant(g)?;
        a = density_search(g, &a, &FieldElement::one(), field, cfg, constant)?.candidate;
    }
    let mut folded: Vec<&FieldElement> = vec![&generators[seed_at]];
    folded.extend(rest.iter().copied());
    let n = full.trdeg as u32;
    let mut tower = field.prolongation(&a, n)?;

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, 0xb0b));
    let first = if generators.len() == 1 { FieldElement::zero() } else { seed_gen };
    let mut b = first;
    for attempt in 0..cfg.retries.max(1) {
        if attempt > 0 {
            b = folded.iter().fold(FieldElement::zero(), |acc, g| {
                &acc + &g.scale(&random_rational(&mut rng, cfg.lambda_height))
            });
        }
        let pair = diff_trdeg(&[a.clone(), b.clone()], field, &cfg.rank_options(0x9a1 + attempt as u64))?;
        if pair.trdeg == full.trdeg {
            tower.truncate(n as usize + 1);
            tower.extend(field.prolongation(&b, full.stabilization_order)?);
            if certify_all(generators, &tower, field, cfg, 0xce47 + 64 * attempt as u64)?.is_some() {
                return Ok((a, b));
            }
        }
    }
    Err(Error::CapExceeded(format!("no fold b found in {} attempts", cfg.retries.max(1))))
}

enum Outcome {
    Accepted(FieldElement, Vec<MembershipCertificate>),
    Rejected(String),
}

fn try_lambdas(
    a: &FieldElement,
    b: &FieldElement,
    lambdas: &[Rational],
    n: usize,
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
    salt: u64,
) -> Result<Outcome> {
    let mut z = b.clone();
    let mut power = FieldElement::one();
    for l in lambdas {
        power = &power * a;
        z = &z + &power.scale(l);
    }
    let z = z.normalize();
    let r = diff_trdeg(std::slice::from_ref(&z), field, &cfg.rank_options(salt))?.trdeg;
    if r != n {
        return Ok(Outcome::Rejected(format!("transcendence degree {r}, expected {n}")));
    }
    let tower = field.prolongation(&z, n as u32)?;
    match certify_all(&[a.clone(), b.clone()], &tower, field, cfg, salt)? {
        Some(certs) => Ok(Outcome::Accepted(z, certs)),
        None => Ok(Outcome::Rejected("membership of a or b not certified".into())),
    }
}

/// Samples `λ_1, …, λ_{n+2}` until `z = b + Σ λ_i a^i` has transcendence
/// degree `n` and both `a` and `b` are certified members of
/// `k(z, z', …, z^(n))`.
pub fn lambda_search(
    a: &FieldElement,
    b: &FieldElement,
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
) -> Result<PrimitiveResult> {
    field.check_element(a)?;
    field.check_element(b)?;
    if !field.is_nonconstant(a)? && !field.is_nonconstant(b)? {
        return Err(Error::NoNonconstant);
    }
    let n = diff_trdeg(std::slice::from_ref(a), field, &cfg.rank_options(0x1a))?.trdeg;
    let pair = diff_trdeg(&[a.clone(), b.clone()], field, &cfg.rank_options(0x1b))?.trdeg;
    if n != pair {
        return Err(Error::ArgumentOutOfRange(format!(
            "trdeg k⟨a⟩ = {n} differs from trdeg k⟨a, b⟩ = {pair}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, 0x1a3bda));
    let vectors: Vec<Vec<Rational>> = (0..cfg.retries)
        .map(|_| (0..n + 2).map(|_| random_rational(&mut rng, cfg.lambda_height)).collect())
        .collect();
    let mut rejections = Vec::new();
    for (chunk_no, chunk) in vectors.chunks(LAMBDA_BATCH).enumerate() {
        // Reasons are kept per index so the listing does not depend on
        // scheduling; with a hit, only those before it are reported.
        let reasons: Mutex<BTreeMap<usize, String>> = Mutex::new(BTreeMap::new());
        let hit = par::find_first(cfg.exec(), chunk, |i, l| {
            let salt = 0x1000 + (chunk_no * LAMBDA_BATCH + i) as u64 * 16;
            match try_lambdas(a, b, l, n, field, cfg, salt) {
                Ok(Outcome::Rejected(reason)) => {
                    reasons.lock().expect("no panics while held").insert(i, reason);
                    None
                }
                Ok(Outcome::Accepted(z, certs)) => Some(Ok((z, certs))),
                Err(e) => Some(Err(e)),
            }
        });
        if let Some((i, found)) = hit {
            let (z, certificates) = found?;
            let result = PrimitiveResult { primitive: z, n, lambdas: chunk[i].clone(), certificates };
            result.revalidate(field, cfg.symbolic_confirm)?;
            return Ok(result);
        }
        for (i, reason) in reasons.into_inner().expect("no panics while held") {
            rejections.push(Rejection { lambdas: chunk[i].clone(), reason });
        }
    }
    let listed: Vec<String> = rejections.iter().map(Rejection::to_string).collect();
    Err(Error::CapExceeded(format!(
        "no λ-vector accepted in {} attempts; rejected: {}",
        cfg.retries,
        listed.join("; ")
    )))
}

/// A single generator for the differential field spanned by `generators`.
pub fn find_primitive(
    generators: &[FieldElement],
    field: &DiffFieldPresentation,
    cfg: &SearchConfig,
) -> Result<PrimitiveResult> {
    let (a, b) = reduce_to_two(generators, field, cfg)?;
    let n = diff_trdeg(std::slice::from_ref(&a), field, &cfg.rank_options(0x1a))?.trdeg;
    let tower = field.prolongation(&a, n as u32)?;
    if let Some(certificates) = certify_all(generators, &tower, field, cfg, 0xfa57)? {
        let result = PrimitiveResult { primitive: a, n, lambdas: Vec::new(), certificates };
        result.revalidate(field, cfg.symbolic_confirm)?;
        return Ok(result);
    }
    let found = lambda_search(&a, &b, field, cfg)?;
    let tower = field.prolongation(&found.primitive, n as u32)?;
    let certificates = certify_all(generators, &tower, field, cfg, 0x0419)?.ok_or_else(|| {
        Error::CapExceeded(format!(
            "a generator is not certified over the order-{n} tower within degree {}",
            cfg.membership_degree_cap
        ))
    })?;
    let result = PrimitiveResult { certificates, ..found };
    result.revalidate(field, cfg.symbolic_confirm)?;
    Ok(result)
}

use diffprim::algebra::{rat, var, Monomial, MultiPoly, RatFunc, VarName};
use diffprim::field::{DiffFieldPresentation, FieldElement};
use diffprim::search::{candidates, density_step, density_step_with_factor, find_primitive, SearchConfig};
use diffprim::Error;
use proptest::prelude::*;

fn xy_field() -> DiffFieldPresentation {
    let (x, y) = (var("x"), var("y"));
    DiffFieldPresentation::new(vec![x.clone(), y.clone()], [(x, FieldElement::one()), (y, FieldElement::zero())]).unwrap()
}

fn xv() -> FieldElement {
    FieldElement::var(var("x"))
}

fn yv() -> FieldElement {
    FieldElement::var(var("y"))
}

fn element(gens: Vec<VarName>) -> impl Strategy<Value = FieldElement> {
    prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 1..4).prop_map(move |terms| {
        let mut p = MultiPoly::zero();
        for (c, a, b) in terms {
            p.add_term(Monomial::from_pairs([(gens[0].clone(), a), (gens[1].clone(), b)]), rat(c, 1));
        }
        RatFunc::from(p)
    })
}

#[test]
fn xy_density_is_t_squared() {
    let field = xy_field();
    let res = density_step(&yv(), &xv(), &field, &SearchConfig::default()).unwrap();
    assert_eq!(res.p.to_string(), "t^2");
    assert_eq!((res.trdeg_pair, res.trdeg_candidate), (2, 2));
    res.revalidate(&field).unwrap();
}

#[test]
fn xy_primitive_revalidates() {
    let field = xy_field();
    for parallel in [false, true] {
        let cfg = SearchConfig { parallel, ..SearchConfig::default() };
        let res = find_primitive(&[xv(), yv()], &field, &cfg).unwrap();
        assert_eq!(res.n, 2);
        res.revalidate(&field, true).unwrap();
    }
}

#[test]
fn tight_caps_exceed() {
    let field = xy_field();
    let cfg = SearchConfig { max_p_degree: 1, max_coeff_height: 1, ..SearchConfig::default() };
    assert!(matches!(density_step(&yv(), &xv(), &field, &cfg), Err(Error::CapExceeded(_))));
}

#[test]
fn constant_b_is_rejected() {
    let field = xy_field();
    assert!(matches!(density_step(&xv(), &yv(), &field, &SearchConfig::default()), Err(Error::ConstantB)));
}

#[test]
fn factor_variant_uses_the_factor() {
    let field = xy_field();
    let c = &yv() + &FieldElement::one();
    let res = density_step_with_factor(&yv(), &xv(), &c, &field, &SearchConfig::default()).unwrap();
    assert_eq!(res.candidate, &yv() + &(&c * &res.p.eval_at(&xv())));
    res.revalidate(&field).unwrap();
}

#[test]
fn candidate_sequence_is_a_prefix_under_larger_caps() {
    let small: Vec<String> = candidates(3, 3, 200).map(|p| p.to_string()).collect();
    let large: Vec<String> = candidates(3, 3, 400).map(|p| p.to_string()).collect();
    assert_eq!(&large[..small.len()], &small[..]);
    assert_eq!(small[0], "0");
    let mut seen = std::collections::BTreeSet::new();
    assert!(large.iter().all(|p| seen.insert(p.clone())), "duplicate candidate");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn density_is_schedule_independent_and_monotone(
        a in element(vec![var("x"), var("y")]),
        b in element(vec![var("x"), var("y")]),
        seed in any::<u64>(),
    ) {
        let field = xy_field();
        prop_assume!(field.is_nonconstant(&b).unwrap());
        let cfg = SearchConfig { seed, ..SearchConfig::default() };
        let par = density_step(&a, &b, &field, &cfg);
        let seq = density_step(&a, &b, &field, &SearchConfig { parallel: false, ..cfg.clone() });
        prop_assert_eq!(format!("{par:?}"), format!("{seq:?}"));
        if let Ok(hit) = par {
            hit.revalidate(&field).unwrap();
            // A wider search finds the same first candidate.
            let wide = SearchConfig { max_candidates: 2 * cfg.max_candidates, ..cfg };
            let again = density_step(&a, &b, &field, &wide).unwrap();
            prop_assert_eq!(again.index, hit.index);
        }
    }
}

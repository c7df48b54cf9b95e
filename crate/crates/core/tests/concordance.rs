use knotconc::concordance::*;
use knotconc::laurent::LaurentPoly;
use knotconc::primality::CoprimalityStatus;
use knotconc::profile::SignatureProfile;
use knotconc::seifert::{twist_alexander, Builtin, SeifertMatrix};
use num::{BigRational, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn lp(c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_ints(0, c)
}

fn e(s: &str) -> KnotExpr {
    parse_expr(s).unwrap_or_else(|err| panic!("{}: {}", s, err))
}

fn fact(id: String) -> Fact {
    Fact { id, cite: "test".into() }
}

/// Facts used by the certificate examples.
fn standard_facts() -> FactBase {
    let mut fb = FactBase::new();
    for k in 1..=20 {
        fb.insert(fact(ids::first_order_nonzero(&format!("Q({})", k), "<0>")));
        fb.insert(fact(ids::rho0_avoids_fos("base(\"neg-trefoils-3\")", &format!("R({},U)", k))));
    }
    let comps = [KnotExpr::Twist(2), KnotExpr::Twist(4)];
    fb.insert(fact(ids::rho0_span_avoids_fos(&comps, "R(1, J=\"neg-trefoils-3\")")));
    fb.insert(fact(ids::rho0_span_avoids_fos(&comps[..1], "R(1, J=\"neg-trefoils-3\")")));
    fb
}

/// `(kt − (k+1))((k+1)t − k)`.
fn pattern_alexander(k: i64) -> LaurentPoly {
    &lp(&[-(k + 1), k]) * &lp(&[-k, k + 1])
}

/// Arf from the Alexander polynomial: 1 iff `Δ(−1) ≡ ±3 mod 8`.
fn levine_arf(delta: &LaurentPoly) -> u8 {
    let v = delta.eval(&BigRational::from_integer((-1).into())).unwrap().to_integer();
    let r = (v.abs() % 8u32).to_u32().unwrap();
    u8::from(r == 3 || r == 5)
}

#[test]
fn grammar_round_trip() {
    for s in [
        "unknot",
        "twist(3)",
        "base(\"neg-trefoils-3\")",
        "sum(twist(1), neg(twist(2)), unknot)",
        "cable(infect(Q(3), twist(2)), 2)",
        "infect(R(1, J=\"neg-trefoils-3\"), twist(4))",
    ] {
        let x = e(s);
        assert_eq!(x.to_string(), s);
        assert_eq!(e(&x.to_string()), x);
    }
    let x = e("infect( R(1, J='neg-trefoils-3') ,\n twist(4) ) # comment");
    assert_eq!(x, e("infect(R(1, J=\"neg-trefoils-3\"), twist(4))"));
    assert_eq!(e("cable(twist(2), 3, 1)"), e("cable(twist(2), 3)"));
}

#[test]
fn grammar_errors() {
    match parse_expr("sum(twist(1),\n  twist(2)))") {
        Err(ConcordanceError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 12)),
        other => panic!("{:?}", other),
    }
    match parse_expr("cable(twist(2), 3, 2)") {
        Err(ConcordanceError::UnsupportedCable { q: 2, line: 1, column: 20 }) => {}
        other => panic!("{:?}", other),
    }
    assert!(matches!(parse_expr("twist(0)"), Err(ConcordanceError::Parse { .. })));
    assert!(matches!(parse_expr("spin(2)"), Err(ConcordanceError::Parse { column: 1, .. })));
    assert!(matches!(parse_expr("base(\"nope\")"), Err(ConcordanceError::Parse { .. })));
    assert!(matches!(parse_expr("infect(R(1, K=\"x\"), unknot)"), Err(ConcordanceError::Parse { .. })));
    assert!(matches!(parse_expr(""), Err(ConcordanceError::Parse { line: 1, column: 1, .. })));
    assert!(KnotExpr::base("whitehead-double").is_ok());
    assert_eq!(base_knot("x").unwrap_err(), ConcordanceError::UnknownBase("x".into()));
}

#[test]
fn evaluation_examples() {
    let t2 = eval_invariants(&KnotExpr::Twist(2)).unwrap();
    let c = eval_invariants(&e("cable(twist(2), 3)")).unwrap();
    assert!(c.alexander.associate(&twist_alexander(2).substitute_power(3).unwrap()));
    assert_eq!(c.arf, 0);
    assert_eq!(c.rho0, t2.rho0);
    assert_eq!(c.genus_upper, 3);

    for k in 1..=6 {
        for j in 1..=3 {
            let x = e(&format!("infect(R({}, J=\"neg-trefoils-3\"), twist({}))", k, 2 * j));
            let inv = eval_invariants(&x).unwrap();
            assert!(inv.alexander.associate(&pattern_alexander(k)));
            assert!(inv.profile.is_zero());
            assert_eq!(inv.arf, 0);
            assert_eq!(inv.genus_upper, 1);
        }
    }

    for s in ["twist(3)", "cable(twist(1), 2)", "sum(twist(2), base(\"trefoil\"))"] {
        let k = e(s);
        let a = eval_invariants(&k).unwrap();
        let s = eval_invariants(&KnotExpr::Sum(vec![k.clone(), KnotExpr::neg(k)])).unwrap();
        assert!(s.alexander.associate(&(&a.alexander * &a.alexander.reciprocal())));
        assert!(s.profile.is_zero());
        assert_eq!(s.arf, 0);
        assert!(s.rho0.is_zero());
    }

    let u = eval_invariants(&KnotExpr::Unknot).unwrap();
    assert!(u.is_trivial());
    assert_eq!(u.tau.exact, Some(0));
    assert_eq!(u.genus_upper, 0);
}

#[test]
fn sums_agree_with_block_sums() {
    let a = SeifertMatrix::builtin(Builtin::Twist(2)).unwrap();
    let b = SeifertMatrix::builtin(Builtin::Twist(3)).unwrap();
    let v = a.connected_sum(&b.mirror_reverse());
    let inv = eval_invariants(&e("sum(twist(2), neg(twist(3)))")).unwrap();
    assert_eq!(inv.alexander, v.alexander_polynomial());
    assert_eq!(inv.rho0, SignatureProfile::from_seifert(&v).rho0());
    assert_eq!(inv.arf, v.arf());
    let three = eval_invariants(&e("base(\"neg-trefoils-3\")")).unwrap();
    let lt = eval_invariants(&e("neg(twist(1))")).unwrap();
    assert_eq!(three.rho0, lt.rho0.scale(3));
    assert_eq!(three.alexander, lp(&[1, -1, 1]).pow(3));
}

#[test]
fn tau_through_legendrian_fronts() {
    for j in 1..=5 {
        assert_eq!(eval_invariants(&KnotExpr::Twist(j)).unwrap().tau.exact, Some(1));
        assert_eq!(eval_invariants(&KnotExpr::neg(KnotExpr::Twist(j))).unwrap().tau.exact, Some(-1));
    }
    for k in 3..=5 {
        let mut x = KnotExpr::Twist(2);
        for _ in 0..3 {
            x = e(&format!("infect(Q({}), {})", k, x));
            let inv = eval_invariants(&x).unwrap();
            assert_eq!(inv.tau.exact, Some(1), "{}", x);
            assert_eq!(inv.legendrian.unwrap().tb, 0);
        }
    }
    // No representative with tb ≥ 0 for the unknot: only the genus bound.
    let q = eval_invariants(&e("infect(Q(3), unknot)")).unwrap();
    assert_eq!((q.tau.lower, q.tau.upper, q.tau.exact), (-1, 1, None));
    let r = eval_invariants(&e("infect(R(1, J=\"neg-trefoils-3\"), twist(2))")).unwrap();
    assert_eq!(r.tau.exact, None);
    assert_eq!(eval_invariants(&e("base(\"whitehead-double\")")).unwrap().tau.exact, Some(1));
    let sum = eval_invariants(&e("sum(twist(1), twist(2), neg(twist(3)))")).unwrap();
    assert_eq!(sum.tau.exact, Some(1));
}

#[test]
fn injected_tau_facts() {
    let d21 = e("cable(base(\"whitehead-double\"), 2)");
    assert_eq!(eval_invariants(&d21).unwrap().tau.exact, None);
    let mut fb = FactBase::new();
    fb.insert(fact(ids::tau_value(&d21, 2)));
    assert_eq!(eval_invariants_with(&d21, &fb).unwrap().tau.exact, Some(2));
    let mut bad = FactBase::new();
    bad.insert(fact(ids::tau_value(&d21, 5)));
    assert!(matches!(eval_invariants_with(&d21, &bad), Err(ConcordanceError::Inconsistent(_))));
}

#[test]
fn facts_file_format() {
    let text = "# comment\n\nFACT \"rho(M(Q(3)), <0>) != 0\" CITE \"nonvanishing for k >= 3\"\nFACT \"tau(cable(base('whitehead-double'), 2)) = 2\" CITE \"cabling formula\"\n";
    let fb = FactBase::parse(text).unwrap();
    assert_eq!(fb.facts().len(), 2);
    assert_eq!(fb.get("rho(M(Q(3)),<0>) != 0").unwrap().cite, "nonvanishing for k >= 3");
    assert!(fb.tau_of("cable(base(\"whitehead-double\"), 2)").is_some());
    assert_eq!(FactBase::parse(&fb.to_text()).unwrap().facts(), fb.facts());
    match FactBase::parse("FACT \"a\" CITE \"b\"\nFACT a\n") {
        Err(ConcordanceError::Facts { line: 2, .. }) => {}
        other => panic!("{:?}", other),
    }
    assert!(FactBase::parse("FACT \"a\"\n").is_err());
    assert!(FactBase::parse("CLAIM \"a\" CITE \"b\"\n").is_err());
}

#[test]
fn operator_modules_and_ledgers() {
    for k in 1..=20 {
        for op in [OperatorSpec::q(k).unwrap(), OperatorSpec::r(k, "neg-trefoils-3").unwrap()] {
            assert_eq!(op.submodules().len(), 3);
            assert!(op.is_robust_type());
            assert!(op.fos().is_sound());
            assert_eq!(op.axis_class(), &LaurentPoly::one());
            assert!(op.module().delta().associate(&pattern_alexander(k)));
            // The derivative submodules are the two nontrivial ones.
            let listed = op.module().proper_submodules().unwrap();
            for (_, s) in op.derivative_submodules() {
                assert!(listed[1..].contains(s));
            }
            assert_ne!(op.derivative_submodules()[0].1, op.derivative_submodules()[1].1);
        }
        assert_eq!(OperatorSpec::q(k).unwrap().ribbon_markers(), vec!["<eta+>", "<eta->"]);
        assert_eq!(OperatorSpec::r(k, "neg-trefoils-1").unwrap().ribbon_markers(), vec!["<d>"]);
    }
    assert!(OperatorSpec::q(0).is_err());
}

#[test]
fn infection_ledger_examples() {
    let k = 2;
    let unknotted = OperatorSpec::r_unknotted(k).unwrap();
    let r = OperatorSpec::r(k, "neg-trefoils-3").unwrap();
    let j = "base(\"neg-trefoils-3\")";
    let fos = |sub: &str| RhoExpr::atom(RhoAtom::Fos { operator: "R(2,U)".into(), submodule: sub.into() });
    let rho0j = RhoExpr::atom(RhoAtom::Rho0(j.into()));
    match &r.fos().get("<d>").unwrap().status {
        FosStatus::KnownZero { .. } => {}
        other => panic!("{:?}", other),
    }
    assert_eq!(r.fos().get("<0>").unwrap().status, FosStatus::Formal(fos("<0>").add(&rho0j)));
    assert_eq!(r.fos().get("<d'>").unwrap().status, FosStatus::Formal(fos("<d'>").add(&rho0j)));

    // Along the axis, whose class generates, every proper submodule picks up ρ₀.
    let comp = KnotExpr::Twist(2);
    for s in unknotted.submodules() {
        let v = rho_ledger_infection(&unknotted, &comp, s).unwrap();
        assert!(v.terms().any(|(a, _)| *a == RhoAtom::Rho0("twist(2)".into())));
    }
    let q3 = OperatorSpec::q(3).unwrap();
    let q4 = OperatorSpec::q(4).unwrap();
    assert!(matches!(
        rho_ledger_infection(&q3, &comp, &q4.submodules()[1]),
        Err(ConcordanceError::NotASubmodule(_))
    ));
    let zero = rho_ledger_infection(&q3, &comp, &q3.submodules()[0]).unwrap();
    assert_eq!(zero.to_string(), "rho(M(Q(3)), <0>) + rho0(twist(2))");
    let ribbon = rho_ledger_infection(&q3, &comp, &q3.submodules()[1]).unwrap();
    assert_eq!(ribbon, rho0_only("twist(2)"));
}

fn rho0_only(k: &str) -> RhoExpr {
    RhoExpr::atom(RhoAtom::Rho0(k.into()))
}

#[test]
fn rho_expr_arithmetic() {
    let a = rho0_only("x");
    let b = RhoExpr::atom(RhoAtom::Fos { operator: "Q(3)".into(), submodule: "<0>".into() });
    let two = BigRational::from_integer(2.into());
    let s = a.add(&b).add(&a.scale(&-BigRational::from_integer(1.into())));
    assert_eq!(s, b);
    assert!(a.add(&a.scale(&-BigRational::from_integer(1.into()))).is_zero());
    assert_eq!(a.scale(&two).add(&RhoExpr::constant(two.clone())).to_string(), "2*rho0(x) + 2");
    assert_eq!(RhoExpr::zero().to_string(), "0");
}

#[test]
fn cabled_operators() {
    let q = OperatorSpec::q(3).unwrap();
    assert_eq!(cable_operator(&q, 1).unwrap().name(), "Q(3)");
    let c = cable_operator(&q, 2).unwrap();
    assert!(c.module().delta().associate(&pattern_alexander(3).substitute_power(2).unwrap()));
    assert_eq!(c.submodules().len(), 3);
    assert_eq!(c.ribbon_markers(), q.ribbon_markers());
    for (a, b) in q.fos().entries().iter().zip(c.fos().entries()) {
        assert_eq!(a.status, b.status);
        assert_eq!(a.submodule.label(), b.submodule.label());
    }
    let r8 = OperatorSpec::r(8, "neg-trefoils-3").unwrap();
    let r85 = cable_operator(&r8, 5).unwrap();
    assert!(r85.is_robust_type());
    assert_eq!(r85.delta_factor(), &LaurentPoly::from_ints(0, &[-9, 0, 0, 0, 0, 8]));
    assert_eq!(cable_operator(&cable_operator(&q, 2).unwrap(), 3).unwrap().cable_level(), 6);
    assert!(cable_operator(&q, 0).is_err());
    assert_eq!(c.uncabled().name(), "Q(3)");
}

#[test]
fn robustness_examples() {
    let facts = standard_facts();
    for k in 3..=6 {
        let q = OperatorSpec::q(k).unwrap();
        for p in 1..=4 {
            let c = robustness_check(&q, &facts, p).unwrap();
            assert!(c.is_asserted(), "{}", c);
            assert_eq!(c.assumed.iter().map(|f| f.id.clone()).collect::<Vec<_>>(), vec![format!("rho(M(Q({})), <0>) != 0", k)]);
        }
    }
    for k in 1..=4 {
        let r = OperatorSpec::r(k, "neg-trefoils-3").unwrap();
        let c = robustness_check(&r, &facts, 3).unwrap();
        assert!(c.is_asserted(), "{}", c);
        assert_eq!(c.assumed.len(), 1);
        assert_eq!(c.assumed[0].id, format!("-rho0(base(\"neg-trefoils-3\")) not in FOS(R({},U))", k));
        assert!(c.rules.iter().any(|r| r == RULE_CABLE_FOS));
    }
    // Without facts nothing is concluded, and the missing statement is named.
    let c = robustness_check(&OperatorSpec::q(3).unwrap(), &FactBase::new(), 1).unwrap();
    assert!(!c.is_asserted());
    assert_eq!(c.failed.len(), 1);
    assert!(c.failed[0].contains("rho(M(Q(3)), <0>) != 0"));
    // J with ρ₀(J) = 0 cannot satisfy the hypothesis.
    let mut fb = FactBase::new();
    fb.insert(fact(ids::rho0_avoids_fos("base(\"whitehead-double\")", "R(1,U)")));
    let c = robustness_check(&OperatorSpec::r(1, "whitehead-double").unwrap(), &fb, 1).unwrap();
    assert!(!c.is_asserted());
    assert!(c.failed.iter().any(|f| f.contains("rho0(J)")));
}

#[test]
fn filtration_examples() {
    let facts = FactBase::new();
    let lv = |s: &str| filtration_certify(&e(s), &facts).unwrap().levels;
    for j in 1..=4 {
        let l = lv(&format!("twist({})", 2 * j));
        assert!(l.in_f(0) && !l.in_f(1));
        assert_eq!(l.p, Some(Depth::Finite(0)));
        let odd = lv(&format!("twist({})", 2 * j - 1));
        assert_eq!(odd.f, None);
    }
    let x = "infect(R(1, J=\"neg-trefoils-3\"), twist(4))";
    let r = filtration_certify(&e(x), &facts).unwrap();
    assert_eq!(r.levels.summary(), "F_1 ∩ B_0");
    assert_eq!((r.levels.p, r.levels.n), (Some(Depth::Finite(1)), Some(Depth::Finite(0))));
    assert!(r.certificate.is_asserted());
    assert!(r.certificate.assumed.iter().any(|f| f.id.contains("negative crossings")));
    let y = format!("infect(R(1, J=\"neg-trefoils-3\"), {})", x);
    assert_eq!(lv(&y).summary(), "F_2 ∩ B_1");
    assert_eq!(lv(&format!("cable({}, 3)", y)), lv(&y));
    let m = lv(&format!("neg({})", x));
    assert_eq!((m.p, m.n), (Some(Depth::Finite(0)), Some(Depth::Finite(1))));
    assert_eq!(lv("unknot"), Levels::all());
    assert_eq!(lv("base(\"whitehead-double\")").f, Some(Depth::All));
    assert_eq!(lv("infect(Q(3), twist(1))").summary(), "F_0.5 ∩ P_1");
    assert_eq!(lv("twist(1)").summary(), "P_0");
    assert_eq!(lv("sum(twist(1), twist(2))").summary(), "P_0");
    assert_eq!(lv("sum(twist(1), neg(twist(3)))").summary(), "no certified level");
}

#[test]
fn filtration_facts_from_file() {
    let mut fb = FactBase::new();
    fb.insert(fact("twist(3) in N0".into()));
    let l = filtration_certify(&e("twist(3)"), &fb).unwrap();
    assert_eq!(l.levels.summary(), "B_0");
    let mut bad = FactBase::new();
    bad.insert(fact("twist(3) in F0".into()));
    let c = filtration_certify(&e("twist(3)"), &bad).unwrap().certificate;
    assert!(!c.is_asserted());
}

fn thm_a_family(n: usize, ps: &[u32]) -> Vec<FamilyMember> {
    cabled_iterate_family(1, n, ps, &[KnotExpr::Twist(2), KnotExpr::Twist(4)], "neg-trefoils-3").unwrap()
}

#[test]
fn independence_of_cable_family() {
    let fam = thm_a_family(2, &[1, 2, 3, 4]);
    let cfg = IndependenceConfig { evidence_pool: vec![KnotExpr::Twist(6)], ..Default::default() };
    let rep = independence_report(&fam, &standard_facts(), &cfg).unwrap();
    assert!(rep.certificate.is_asserted(), "{}", rep.certificate);
    assert_eq!(rep.knots.len(), 8);
    assert_eq!(rep.matrix.len(), 6);
    for cell in &rep.matrix {
        assert_eq!(cell.status, CoprimalityStatus::StronglyCoprime);
        assert!(!cell.first_resultant.is_zero());
    }
    assert_eq!(rep.relation_values.len(), 3);
    assert_eq!(rep.relation, None);
    let ids: Vec<&str> = rep.certificate.assumed.iter().map(|f| f.id.as_str()).collect();
    assert!(ids.contains(&"-rho0(base(\"neg-trefoils-3\")) not in FOS(R(1,U))"));
    assert!(ids.iter().any(|i| i.starts_with("span{")));
    assert!(rep.certificate.conclusion.as_ref().unwrap().contains("F_2/F_2.5 and B_1/B_3"));
    assert_eq!(rep.knots[2].to_string(), "cable(infect(R(1, J=\"neg-trefoils-3\"), infect(R(1, J=\"neg-trefoils-3\"), twist(2))), 2)");
}

#[test]
fn independence_refusals() {
    let facts = standard_facts();
    let cfg = IndependenceConfig::default();
    let twice = thm_a_family(1, &[2, 2]);
    let rep = independence_report(&twice, &facts, &cfg).unwrap();
    assert!(!rep.certificate.is_asserted());
    assert!(rep.matrix.iter().any(|c| c.status != CoprimalityStatus::StronglyCoprime));

    let same = cabled_iterate_family(1, 1, &[1], &[KnotExpr::Twist(2), KnotExpr::Twist(2)], "neg-trefoils-3").unwrap();
    let rep = independence_report(&same, &facts, &cfg).unwrap();
    assert!(rep.relation.is_some());
    assert!(!rep.certificate.is_asserted());

    let rep = independence_report(&thm_a_family(1, &[1, 2]), &FactBase::new(), &cfg).unwrap();
    assert!(!rep.certificate.is_asserted());
    assert!(rep.certificate.failed.iter().any(|f| f.contains("missing fact")));

    let mut mixed = thm_a_family(1, &[1]);
    mixed.extend(thm_a_family(2, &[2]));
    assert_eq!(independence_report(&mixed, &facts, &cfg).unwrap_err(), ConcordanceError::DepthMismatch);

    let empty = independence_report(&[], &facts, &cfg).unwrap();
    assert!(empty.certificate.is_asserted());
    assert!(empty.knots.is_empty());
}

#[test]
fn kauffman_examples() {
    let rep = kauffman_suite(&standard_facts()).unwrap();
    assert_eq!(rep.cases.len(), 4);
    for c in &rep.cases {
        assert_eq!(c.arf_d_prime, 1, "{}", c.companion);
    }
    let d = &rep.cases[2];
    assert_eq!(d.companion.to_string(), "base(\"whitehead-double\")");
    assert_eq!(d.alexander_d, LaurentPoly::one());
    assert!(d.topologically_slice);
    assert_eq!(d.tau_d.exact, Some(-1));
    assert!(!rep.cases[0].topologically_slice);
    let cert = rep.cases[3].nontriviality.as_ref().unwrap();
    assert!(cert.is_asserted(), "{}", cert);
    // Without the cited hypotheses the nontriviality claim is withheld, the
    // computed parts stay.
    let bare = kauffman_suite(&FactBase::new()).unwrap();
    assert!(!bare.cases[3].nontriviality.as_ref().unwrap().is_asserted());
    assert_eq!(bare.cases[2].tau_d.exact, Some(-1));
    let more = kauffman_cases(&[e("sum(twist(3), neg(twist(2)))"), e("cable(twist(1), 3)"), KnotExpr::Unknot], &FactBase::new()).unwrap();
    assert!(more.cases.iter().all(|c| c.arf_d_prime == 1));
}

// ---------------------------------------------------------------------------
// Random expressions

fn leaf() -> impl Strategy<Value = KnotExpr> {
    prop_oneof![
        Just(KnotExpr::Unknot),
        (1i64..=4).prop_map(KnotExpr::Twist),
        prop_oneof![Just("trefoil"), Just("neg-trefoils-2"), Just("whitehead-double")]
            .prop_map(|n| KnotExpr::base(n).unwrap()),
    ]
}

fn expr() -> impl Strategy<Value = KnotExpr> {
    leaf().prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2).prop_map(KnotExpr::Sum),
            inner.clone().prop_map(KnotExpr::neg),
            (inner.clone(), 2u32..=3).prop_map(|(e, p)| KnotExpr::cable(e, p).unwrap()),
            (inner, 1i64..=3, any::<bool>()).prop_map(|(e, k, q)| {
                let op = if q { OperatorSpec::q(k).unwrap() } else { OperatorSpec::r(k, "neg-trefoils-1").unwrap() };
                KnotExpr::infect(&op, e)
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cable_rules(x in expr(), p in 1u32..=6) {
        let a = eval_invariants(&x).unwrap();
        let c = eval_invariants(&KnotExpr::cable(x, p).unwrap()).unwrap();
        prop_assert_eq!(c.alexander.clone(), a.alexander.substitute_power(p as i64).unwrap().normalize().unwrap());
        prop_assert_eq!(&c.rho0, &a.rho0);
        prop_assert_eq!(c.arf, (p as u8 * a.arf) % 2);
        prop_assert_eq!(levine_arf(&c.alexander), c.arf);
    }

    #[test]
    fn mirror_is_an_involution(x in expr()) {
        let a = eval_invariants(&x).unwrap();
        let b = eval_invariants(&KnotExpr::neg(KnotExpr::neg(x.clone()))).unwrap();
        prop_assert_eq!(&a.alexander, &b.alexander);
        prop_assert_eq!(a.arf, b.arf);
        prop_assert_eq!(a.profile.jumps().len(), b.profile.jumps().len());
        prop_assert!(a.profile.add(&b.profile.negate()).is_zero());
        prop_assert_eq!(&a.rho0, &b.rho0);
        prop_assert_eq!((a.tau.lower, a.tau.upper), (b.tau.lower, b.tau.upper));
        prop_assert_eq!(levine_arf(&a.alexander), a.arf);
        let m = eval_invariants(&KnotExpr::neg(x)).unwrap();
        prop_assert_eq!(m.rho0, a.rho0.scale(-1));
        prop_assert!(a.tau.lower <= a.tau.upper && a.tau.upper <= a.genus_upper);
    }

    #[test]
    fn filtration_monotone(x in expr(), p in 2u32..=4, k in 1i64..=3) {
        let facts = FactBase::new();
        let base = filtration_certify(&x, &facts).unwrap().levels;
        let cabled = filtration_certify(&KnotExpr::cable(x.clone(), p).unwrap(), &facts).unwrap().levels;
        prop_assert!(cabled.dominates(&base));
        for op in [OperatorSpec::q(k).unwrap(), OperatorSpec::r(k, "neg-trefoils-1").unwrap()] {
            let y = filtration_certify(&KnotExpr::infect(&op, x.clone()), &facts).unwrap().levels;
            prop_assert!(y.dominates(&base));
            let up = |d: Option<Depth>| d.map(|d| match d { Depth::Finite(n) => Depth::Finite(n + 1), Depth::All => Depth::All });
            prop_assert!(y.p >= up(base.p) && y.n >= up(base.n) && y.b >= up(base.b));
            if let Some(Depth::Finite(h)) = base.f {
                prop_assert!(y.f >= Some(Depth::Finite(2 * (h / 2) + 2)));
            }
        }
    }

    #[test]
    fn ledgers_and_certificates_are_sound(k in 1i64..=12, p in 1u32..=5, with_facts in any::<bool>()) {
        let facts = if with_facts { standard_facts() } else { FactBase::new() };
        for op in [OperatorSpec::q(k).unwrap(), OperatorSpec::r(k, "neg-trefoils-3").unwrap()] {
            let c = cable_operator(&op, p).unwrap();
            prop_assert!(c.fos().is_sound());
            let cert = robustness_check(&op, &facts, p).unwrap();
            prop_assert_eq!(cert.is_asserted(), cert.failed.is_empty());
            prop_assert_eq!(cert.is_asserted(), with_facts);
        }
    }
}

use nilpotent_core::exec::Execution;
use nilpotent_core::paperlab::*;
use nilpotent_core::{parse_polynomial, Rational};

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn builtin_context_holds_the_fixed_objects() {
    let ctx = builtin_context();
    let f6 = parse_polynomial("-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2", &ctx.big).unwrap();
    assert_eq!(ctx.f[5], f6);
    assert_eq!(ctx.big.weights().unwrap(), &[1, 3, 3, 3, 2]);
    let images: Vec<String> = ctx.delta_prime.images().iter().map(|p| p.to_string()).collect();
    assert_eq!(ctx.aux.vars(), &["x", "v", "t", "u"]);
    assert_eq!(images, ["0", "x^2", "x*v", "t"]);
    assert!(matches!(builtin_derivation("E"), Err(PaperError::UnknownBuiltin(_))));
}

#[test]
fn every_identity_checks_out() {
    let report = verify_paper(&builtin_context());
    for c in report.failures() {
        eprintln!("{} {}", c.name, c.witness);
    }
    assert!(report.all_passed());
    assert!(report.checks.len() > 25);
    assert!(report.checks.iter().all(|c| c.witness.is_empty()));
    let text = report.to_string();
    assert!(text.lines().all(|l| l.ends_with(" ... ok")));
}

#[test]
fn corrupted_f6_is_caught() {
    let mut f = F_TEXT;
    f[5] = "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 - 6*s^3*u - 3*t^2*s^2";
    let ctx = PaperContext::from_text(&f, &H_TEXT).unwrap();
    let report = verify_paper(&ctx);
    let check = report.get("invariance.f6").unwrap();
    assert_eq!(check.status, CheckStatus::Fail);
    assert!(check.witness.starts_with("D(f6) = "), "{}", check.witness);
    assert_eq!(report.get("invariance.f5").unwrap().status, CheckStatus::Pass);
}

#[test]
fn h4_missing_a_term_is_caught() {
    let mut h = H_TEXT;
    h[3] = "8*x*t^3 + 9*x^4*u^2 - 18*x^2*t*u*v - 3*t^2*v^2";
    let ctx = PaperContext::from_text(&F_TEXT, &h).unwrap();
    let report = verify_paper(&ctx);
    assert_eq!(report.get("aux.h4_identity").unwrap().status, CheckStatus::Fail);
    assert!(!report.all_passed());
}

#[test]
fn report_json_has_one_object_per_check() {
    let mut report = VerificationReport::default();
    report.push("a", None);
    report.push("b", Some("broken".into()));
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(
        v,
        serde_json::json!([
            {"name": "a", "status": "pass", "witness": ""},
            {"name": "b", "status": "fail", "witness": "broken"}
        ])
    );
    assert_eq!(report.to_string(), "a ... ok\nb ... FAIL: broken\n");
}

#[test]
fn separating_values_and_strata() {
    let ctx = builtin_context();
    let origin = ctx.point([0, 0, 0, 0, 0]);
    assert_eq!(separating_values(&ctx, &origin).unwrap(), vec![r(0); 6]);
    let e1 = ctx.point([1, 0, 0, 0, 0]);
    assert_eq!(
        separating_values(&ctx, &e1).unwrap(),
        vec![r(1), r(0), r(0), r(0), r(0), r(0)]
    );

    let p = ctx.point([2, -1, 3, 5, 7]);
    let q = ctx.d.orbit_point(&Rational::new(3.into(), 7.into()), &p).unwrap();
    assert_ne!(p, q);
    assert_eq!(
        separating_values(&ctx, &p).unwrap(),
        separating_values(&ctx, &q).unwrap()
    );
    assert!(!separates(&ctx, &p, &q).unwrap());
    assert!(!separates(&ctx, &ctx.point([0, 0, 1, 0, 0]), &origin).unwrap());
    assert!(separates(&ctx, &e1, &ctx.point([2, 0, 0, 0, 0])).unwrap());

    assert_eq!(stratum_of(&ctx, &ctx.point([1, 2, 3, 4, 5])), Stratum::XNonzero);
    assert_eq!(stratum_of(&ctx, &ctx.point([0, 1, 0, 0, 0])), Stratum::XZeroSNonzero);
    assert_eq!(stratum_of(&ctx, &origin), Stratum::XZeroSZero);
    assert_eq!(ctx.gamma(&p).to_string(), "(-1, 3, 5, 7)");
}

#[test]
fn random_suite_is_deterministic_and_passes() {
    let ctx = builtin_context();
    let a = random_suite(&ctx, 7, 150, Execution::Parallel).unwrap();
    let b = random_suite(&ctx, 7, 150, Execution::Sequential).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_string(), b.to_string());
    assert!(a.all_passed(), "{a}");
    assert_eq!(
        random_suite(&ctx, 7, 0, Execution::Sequential),
        Err(PaperError::NoSamples)
    );
}

#[test]
fn origin_ideal_suite_passes() {
    let ctx = builtin_context();
    let report = origin_ideal_suite(&ctx, 3, 40, Execution::default()).unwrap();
    assert!(report.all_passed(), "{report}");
    assert!(origin_ideal_suite(&ctx, 3, 0, Execution::default()).is_err());
}

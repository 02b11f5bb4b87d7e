//! End-to-end acceptance run: one line per criterion, nonzero exit on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use nilpotent_core::derivation::Derivation;
use nilpotent_core::groebner::{relation_ideal, GroebnerBasis, Membership, MonomialOrder, Subalgebra};
use nilpotent_core::kernel::{
    kernel_check, kernel_compute, slice_kernel_generators, KernelComputeResult, KernelConfig, KernelStatus,
};
use nilpotent_core::paperlab::{builtin_context, origin_ideal_suite, random_suite, PaperContext, F_DEGREES};
use nilpotent_core::polycore::{Homogeneity, Point};
use nilpotent_core::{
    parse_polynomial, print_canonical, Execution, LaurentElement, Monomial, Polynomial, Ring, RingMap,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&PaperContext) -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn p(ring: &std::sync::Arc<Ring>, text: &str) -> Polynomial {
    parse_polynomial(text, ring).unwrap()
}

fn laurent(num: Polynomial, k: u32, scale: i64) -> LaurentElement {
    LaurentElement::new(num, "x", k).unwrap().scale(&common::rat(1, scale))
}

fn invariance(ctx: &PaperContext) -> Outcome {
    for (i, f) in ctx.f.iter().enumerate() {
        let df = ctx.d.apply(f).map_err(|e| e.to_string())?;
        ensure(df.is_zero(), || format!("D(f{}) = {df}", i + 1))?;
    }
    Ok(())
}

fn grading(ctx: &PaperContext) -> Outcome {
    for (i, (f, &deg)) in ctx.f.iter().zip(&F_DEGREES).enumerate() {
        let got = f.weighted_degree().map_err(|e| e.to_string())?;
        ensure(got == Homogeneity::Homogeneous(deg), || {
            format!("f{} has degree {got:?}, expected {deg}", i + 1)
        })?;
    }
    Ok(())
}

fn slice_identities(ctx: &PaperContext) -> Outcome {
    let got = slice_kernel_generators(&ctx.d, &ctx.slice_d).map_err(|e| e.to_string())?;
    let x = ctx.f[0].clone();
    let want = vec![
        laurent(x, 0, 1),
        laurent(Polynomial::zero(&ctx.big), 0, 1),
        laurent(ctx.f[1].clone(), 3, 2),
        laurent(ctx.f[2].clone(), 6, 3),
        laurent(ctx.f[3].clone(), 1, 1),
    ];
    ensure(got == want, || format!("slice generators {got:?}"))
}

fn delta_kernel(ctx: &PaperContext) -> Outcome {
    let out = kernel_check(
        &ctx.delta,
        &ctx.delta_kernel,
        "s",
        &ctx.slice_delta,
        &KernelConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(out.status == KernelStatus::Confirmed, || {
        format!("status {:?}", out.status)
    })
}

fn rho_images(ctx: &PaperContext) -> Outcome {
    let s = &ctx.small;
    let want = [p(s, "-s"), p(s, "-s^2*v"), p(s, "3*s^2*(2*u*s - t^2)")];
    for (i, w) in want.iter().enumerate() {
        let got = ctx.f[i + 3].substitute(&ctx.rho).map_err(|e| e.to_string())?;
        ensure(&got == w, || format!("rho(f{}) = {got}", i + 4))?;
    }
    Ok(())
}

fn intertwinings(ctx: &PaperContext) -> Outcome {
    ensure(Derivation::intertwines(&ctx.rho, &ctx.d, &ctx.delta).unwrap(), || {
        "rho".into()
    })?;
    ensure(
        Derivation::intertwines(&ctx.phi, &ctx.d, &ctx.delta_prime).unwrap(),
        || "phi".into(),
    )?;
    ensure(ctx.d.commutes_with_partial("v").unwrap(), || "d/dv".into())
}

fn aux_identities(ctx: &PaperContext) -> Outcome {
    let l = &ctx.aux;
    let h = &ctx.h;
    let sum = h[1].pow(3) + h[2].pow(2);
    ensure(sum == &p(l, "x^2") * &h[3], || "h2^3 + h3^2 != x^2*h4".into())?;

    let mut images = vec![Polynomial::zero(l)];
    images.extend(["v", "t", "u"].map(|v| p(l, v)));
    let mod_x = RingMap::new(l, l, images).unwrap();
    let reduced: Vec<_> = h.iter().map(|g| g.substitute(&mod_x).unwrap()).collect();
    let rel = relation_ideal(&reduced).map_err(|e| e.to_string())?;
    let want = vec![p(rel.ring(), "X1"), p(rel.ring(), "X2^3 + X3^2")];
    ensure(rel.equals(&want).unwrap(), || {
        format!("relations {:?}", rel.generators())
    })?;

    let sub = Subalgebra::new(l, h).map_err(|e| e.to_string())?;
    let target = sum.exact_divide_by_var_power("x", 1).unwrap();
    let m = sub.membership(&target).map_err(|e| e.to_string())?;
    ensure(
        m == Membership::Representation(p(sub.presentation_ring(), "X1*X4")),
        || format!("{m:?}"),
    )?;

    let out = kernel_check(
        &ctx.delta_prime,
        h,
        "x",
        &ctx.slice_delta_prime,
        &KernelConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(out.status == KernelStatus::Confirmed, || {
        format!("kernel-check {:?}", out.status)
    })?;

    let got = slice_kernel_generators(&ctx.delta_prime, &ctx.slice_delta_prime).map_err(|e| e.to_string())?;
    let want = vec![
        laurent(h[0].clone(), 0, 1),
        laurent(Polynomial::zero(l), 0, 1),
        laurent(h[1].clone(), 1, 2),
        laurent(h[2].clone(), 3, 3),
    ];
    ensure(got == want, || format!("slice generators {got:?}"))
}

fn non_finite_witness(ctx: &PaperContext) -> Outcome {
    let res = kernel_compute(&ctx.d, "x", &ctx.slice_d, 3, &KernelConfig::default()).map_err(|e| e.to_string())?;
    let KernelComputeResult::NonStabilized { counts, history, .. } = res else {
        return Err("stabilized".into());
    };
    ensure(counts.windows(2).all(|w| w[0] < w[1]), || format!("counts {counts:?}"))?;
    let w = p(&ctx.big, "2*x^2*t + x*v^2 - 2*v*s");
    let g = history[0]
        .adjoined
        .iter()
        .find(|g| {
            let g = g.primitive_part();
            g == w || g == -w.clone()
        })
        .ok_or_else(|| "round 1 does not adjoin the witness".to_string())?;
    ensure(ctx.d.is_invariant(g).unwrap(), || "witness not invariant".into())?;
    let sub = Subalgebra::new(&ctx.big, &ctx.f[..4]).map_err(|e| e.to_string())?;
    ensure(!sub.contains(g).unwrap(), || "witness lies in Q[f1..f4]".into())
}

fn origin_ideal(ctx: &PaperContext) -> Outcome {
    let b = &ctx.big;
    let mut images: Vec<Polynomial> = vec![Polynomial::zero(b); 2];
    images.extend(["t", "u", "v"].map(|v| p(b, v)));
    let kill = RingMap::new(b, b, images).unwrap();
    for (i, f) in ctx.f.iter().enumerate() {
        ensure(f.evaluate(&Point::origin(b)).unwrap() == common::rat(0, 1), || {
            format!("f{} constant term", i + 1)
        })?;
        ensure(f.substitute(&kill).unwrap().is_zero(), || {
            format!("f{} survives x = s = 0", i + 1)
        })?;
    }
    let report = origin_ideal_suite(ctx, 1, 200, Execution::default()).map_err(|e| e.to_string())?;
    ensure(report.all_passed(), || report.to_string())
}

fn randomized(ctx: &PaperContext) -> Outcome {
    let report = random_suite(ctx, 1, 1000, Execution::default()).map_err(|e| e.to_string())?;
    ensure(report.all_passed(), || report.to_string())
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>, terms: usize, deg: u32, bound: i64) -> Polynomial {
    let n = ring.nvars();
    let terms = (0..rng.gen_range(0..=terms)).map(|_| {
        let mut e = vec![0; n];
        for _ in 0..rng.gen_range(0..=deg) {
            e[rng.gen_range(0..n)] += 1;
        }
        (
            Monomial::new(e),
            common::rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound)),
        )
    });
    Polynomial::from_terms(ring, terms.collect::<Vec<_>>()).unwrap()
}

fn engine_oracles(_: &PaperContext) -> Outcome {
    let r = Ring::new(["x", "y", "z"]).unwrap();
    let gb = GroebnerBasis::compute(&r, &[p(&r, "y - x^2"), p(&r, "z - x^3")], MonomialOrder::Lex)
        .map_err(|e| e.to_string())?;
    ensure(gb.generators().contains(&p(&r, "y^3 - z^2")), || {
        format!("twisted cubic basis {gb}")
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ab = Ring::new(["a", "b"]).unwrap();
    for i in 0..20 {
        let m = rng.gen_range(1..=3);
        let images: Vec<_> = (0..m).map(|_| random_poly(&mut rng, &ab, 2, 2, 3)).collect();
        let rel = relation_ideal(&images).map_err(|e| e.to_string())?;
        ensure(rel.is_sound(), || format!("instance {i}: unsound relation"))?;
        for q in common::brute_force_relations(&images, rel.ring(), 3) {
            ensure(rel.contains(&q).unwrap(), || format!("instance {i}: misses {q}"))?;
        }
    }

    let big = common::big();
    for _ in 0..500 {
        let f = random_poly(&mut rng, &big, 8, 10, 1000);
        let back = parse_polynomial(&print_canonical(&f), &big).map_err(|e| e.to_string())?;
        ensure(back == f, || format!("round trip of {f}"))?;
    }
    Ok(())
}

fn main() {
    let ctx = builtin_context();
    let criteria: [Criterion; 11] = [
        ("invariance of f1..f6", invariance),
        ("weighted degrees of f1..f6", grading),
        ("slice identities for D", slice_identities),
        ("kernel of Delta confirmed", delta_kernel),
        ("rho images of f4, f5, f6", rho_images),
        ("intertwinings and d/dv commutation", intertwinings),
        (
            "h identities, relations, membership and kernel of Delta'",
            aux_identities,
        ),
        ("kernel computation for D keeps growing", non_finite_witness),
        ("invariants lie in Q + (x, s)", origin_ideal),
        ("randomized suite, seed 1, 1000 samples", randomized),
        ("engine oracles", engine_oracles),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&ctx))).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({:.2?})", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

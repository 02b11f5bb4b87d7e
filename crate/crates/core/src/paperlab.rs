//! The fixed objects of the five-dimensional counterexample and the suites
//! that replay its identities.
//!
//! Everything in [`PaperContext`] is built from the text constants below, so
//! a context can be rebuilt with a corrupted constant and the suite is
//! expected to notice.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::derivation::{Derivation, DerivationError, DEFAULT_NILPOTENCY_CAP};
use crate::exec::Execution;
use crate::groebner::{relation_ideal, subalgebra_membership, GroebnerBasis, GroebnerError, Membership, MonomialOrder};
use crate::kernel::{
    kernel_check, slice_kernel_generators, verify_slice, KernelConfig, KernelError, KernelStatus, Slice,
};
use crate::parse::{parse_polynomial, ParseError};
use crate::polycore::{LaurentElement, Point, PolyError, Polynomial, Rational, Ring, RingMap};

pub const BIG_VARS: [&str; 5] = ["x", "s", "t", "u", "v"];
pub const BIG_WEIGHTS: [u32; 5] = [1, 3, 3, 3, 2];
pub const SMALL_VARS: [&str; 4] = ["s", "t", "u", "v"];
pub const SMALL_WEIGHTS: [u32; 4] = [3, 3, 3, 2];
/// Variable order of the target of `phi`.
pub const AUX_VARS: [&str; 4] = ["x", "v", "t", "u"];
pub const AUX_WEIGHTS: [u32; 4] = [1, 2, 3, 3];

pub const D_IMAGES: [(&str, &str); 4] = [("s", "x^3"), ("t", "s"), ("u", "t"), ("v", "x^2")];
pub const DELTA_IMAGES: [(&str, &str); 2] = [("t", "s"), ("u", "t")];
pub const DELTA_PRIME_IMAGES: [(&str, &str); 3] = [("v", "x^2"), ("t", "x*v"), ("u", "t")];

pub const F_TEXT: [&str; 6] = [
    "x",
    "2*x^3*t - s^2",
    "3*x^6*u - 3*x^3*t*s + s^3",
    "x*v - s",
    "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u",
    "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2",
];
pub const F_DEGREES: [u64; 6] = [1, 6, 9, 3, 8, 12];

pub const H_TEXT: [&str; 4] = [
    "x",
    "2*x*t - v^2",
    "3*x^3*u - 3*x*v*t + v^3",
    "8*x*t^3 + 9*x^4*u^2 - 18*x^2*t*u*v - 3*t^2*v^2 + 6*x*u*v^3",
];

/// Kernel of `Delta`, in the ring `Q[s,t,u,v]`.
pub const DELTA_KERNEL_TEXT: [&str; 3] = ["s", "2*u*s - t^2", "v"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PaperError {
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("unknown builtin derivation `{0}` (D, Delta, DeltaPrime)")]
    UnknownBuiltin(String),
    #[error("in `{text}`: {source}")]
    Parse { text: String, source: ParseError },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// `D` on `Q[x,s,t,u,v]`, `Delta` on `Q[s,t,u,v]` or `DeltaPrime` on `Q[x,v,t,u]`.
pub fn builtin_derivation(name: &str) -> Result<Derivation, PaperError> {
    let (vars, weights, images): (&[&str], &[u32], &[(&str, &str)]) = match name {
        "D" => (&BIG_VARS, &BIG_WEIGHTS, &D_IMAGES),
        "Delta" => (&SMALL_VARS, &SMALL_WEIGHTS, &DELTA_IMAGES),
        "DeltaPrime" => (&AUX_VARS, &AUX_WEIGHTS, &DELTA_PRIME_IMAGES),
        other => return Err(PaperError::UnknownBuiltin(other.to_string())),
    };
    let ring = Ring::graded(vars.iter().copied(), weights.to_vec())?;
    Ok(Derivation::parse(&ring, images.iter().copied())?)
}

fn parse_all(texts: &[&str], ring: &Arc<Ring>) -> Result<Vec<Polynomial>, PaperError> {
    texts
        .iter()
        .map(|t| {
            parse_polynomial(t, ring).map_err(|source| PaperError::Parse {
                text: t.to_string(),
                source,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stratum {
    XNonzero,
    XZeroSNonzero,
    XZeroSZero,
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stratum::XNonzero => "x != 0",
            Stratum::XZeroSNonzero => "x = 0, s != 0",
            Stratum::XZeroSZero => "x = s = 0",
        })
    }
}

#[derive(Debug, Clone)]
pub struct PaperContext {
    pub big: Arc<Ring>,
    pub small: Arc<Ring>,
    pub aux: Arc<Ring>,
    pub d: Derivation,
    pub delta: Derivation,
    pub delta_prime: Derivation,
    /// `x -> 0`, from `Q[x,s,t,u,v]` to `Q[s,t,u,v]`.
    pub rho: RingMap,
    /// `s -> x*v`, from `Q[x,s,t,u,v]` to `Q[x,v,t,u]`.
    pub phi: RingMap,
    pub f: Vec<Polynomial>,
    pub h: Vec<Polynomial>,
    pub delta_kernel: Vec<Polynomial>,
    pub slice_d: Slice,
    pub slice_delta: Slice,
    pub slice_delta_prime: Slice,
}

/// The context built from the embedded text constants.
pub fn builtin_context() -> PaperContext {
    PaperContext::from_text(&F_TEXT, &H_TEXT).expect("embedded constants are well formed")
}

impl PaperContext {
    /// Builds the context with the given invariants `f1..f6` (in `Q[x,s,t,u,v]`)
    /// and kernel generators `h1..h4` (in `Q[x,v,t,u]`).
    pub fn from_text(f: &[&str], h: &[&str]) -> Result<Self, PaperError> {
        let d = builtin_derivation("D")?;
        let delta = builtin_derivation("Delta")?;
        let delta_prime = builtin_derivation("DeltaPrime")?;
        let big = d.ring().clone();
        let small = delta.ring().clone();
        let aux = delta_prime.ring().clone();

        let mut rho_images = vec![Polynomial::zero(&small)];
        rho_images.extend(
            SMALL_VARS
                .iter()
                .map(|v| small.variable(v))
                .collect::<Result<Vec<_>, _>>()?,
        );
        let rho = RingMap::new(&big, &small, rho_images)?;
        let phi_images = parse_all(&["x", "x*v", "t", "u", "v"], &aux)?;
        let phi = RingMap::new(&big, &aux, phi_images)?;

        let slice_d = Slice::parse(&d, "s", "x", 3)?;
        let slice_delta = Slice::parse(&delta, "t", "s", 1)?;
        let slice_delta_prime = Slice::parse(&delta_prime, "v", "x", 2)?;
        Ok(PaperContext {
            f: parse_all(f, &big)?,
            h: parse_all(h, &aux)?,
            delta_kernel: parse_all(&DELTA_KERNEL_TEXT, &small)?,
            big,
            small,
            aux,
            d,
            delta,
            delta_prime,
            rho,
            phi,
            slice_d,
            slice_delta,
            slice_delta_prime,
        })
    }

    /// Projection `(x,s,t,u,v) -> (s,t,u,v)`.
    pub fn gamma(&self, p: &Point) -> Point {
        Point::new(&self.small, p.coordinates()[1..].to_vec()).expect("four coordinates")
    }

    pub fn point(&self, coords: [i64; 5]) -> Point {
        Point::new(
            &self.big,
            coords.iter().map(|&c| Rational::from_integer(c.into())).collect(),
        )
        .expect("five coordinates")
    }
}

/// `(f1(p), ..., f6(p))`.
pub fn separating_values(ctx: &PaperContext, p: &Point) -> Result<Vec<Rational>, PaperError> {
    ctx.f.iter().map(|f| Ok(f.evaluate(p)?)).collect()
}

/// Whether some `f_i` takes different values at `p` and `q`.
pub fn separates(ctx: &PaperContext, p: &Point, q: &Point) -> Result<bool, PaperError> {
    Ok(separating_values(ctx, p)? != separating_values(ctx, q)?)
}

pub fn stratum_of(ctx: &PaperContext, p: &Point) -> Stratum {
    let x = ctx.big.index_of("x").expect("x");
    let s = ctx.big.index_of("s").expect("s");
    if !p.coordinate(x).is_zero() {
        Stratum::XNonzero
    } else if !p.coordinate(s).is_zero() {
        Stratum::XZeroSNonzero
    } else {
        Stratum::XZeroSZero
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    /// Empty when the check passed.
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: impl Into<String>, witness: Option<String>) {
        let (status, witness) = match witness {
            None => (CheckStatus::Pass, String::new()),
            Some(w) => (CheckStatus::Fail, w),
        };
        self.checks.push(Check {
            name: name.into(),
            status,
            witness,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => writeln!(f, "{} ... ok", c.name)?,
                CheckStatus::Fail => writeln!(f, "{} ... FAIL: {}", c.name, c.witness)?,
            }
        }
        Ok(())
    }
}

type Witness = Result<Option<String>, String>;

fn expect_eq<T: PartialEq + fmt::Display>(what: &str, got: T, want: T) -> Option<String> {
    (got != want).then(|| format!("{what} = {got}, expected {want}"))
}

fn run_check(report: &mut VerificationReport, name: &str, check: impl FnOnce() -> Witness) {
    let witness = match check() {
        Ok(w) => w,
        Err(e) => Some(format!("error: {e}")),
    };
    report.push(name, witness);
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Replays every symbolic identity of the counterexample on `ctx`.
pub fn verify_paper(ctx: &PaperContext) -> VerificationReport {
    let mut report = VerificationReport::default();
    let cap = DEFAULT_NILPOTENCY_CAP;

    run_check(&mut report, "context.round_trip", || {
        for g in ctx.f.iter().chain(&ctx.h).chain(&ctx.delta_kernel) {
            let back = parse_polynomial(&g.to_string(), g.ring()).map_err(err)?;
            if &back != g {
                return Ok(Some(format!("{g} reparsed as {back}")));
            }
        }
        Ok(None)
    });
    run_check(&mut report, "context.locally_nilpotent", || {
        for (name, d) in [("D", &ctx.d), ("Delta", &ctx.delta), ("DeltaPrime", &ctx.delta_prime)] {
            if !d.is_locally_nilpotent(cap) {
                return Ok(Some(format!("{name} has a variable not killed within {cap} steps")));
            }
        }
        Ok(None)
    });

    for (i, f) in ctx.f.iter().enumerate() {
        run_check(&mut report, &format!("invariance.f{}", i + 1), || {
            let image = ctx.d.apply(f).map_err(err)?;
            Ok((!image.is_zero()).then(|| format!("D(f{}) = {image}", i + 1)))
        });
    }
    for (i, f) in ctx.f.iter().enumerate() {
        run_check(&mut report, &format!("grading.f{}", i + 1), || {
            let got = f.weighted_degree().map_err(err)?;
            Ok(expect_eq(
                "weighted degree",
                format!("{got:?}"),
                format!("Homogeneous({})", F_DEGREES[i]),
            ))
        });
    }
    run_check(&mut report, "f5.dv_is_f2", || {
        let dv = ctx.f[4].partial_derivative_by_name("v").map_err(err)?;
        Ok(expect_eq("d(f5)/dv", &dv, &ctx.f[1]))
    });

    run_check(&mut report, "slice.D", || {
        Ok((!verify_slice(&ctx.d, ctx.slice_d.element()).map_err(err)?).then(|| "D(s/x^3) != 1".to_string()))
    });
    run_check(&mut report, "slice.D.generators", || {
        let gens = slice_kernel_generators(&ctx.d, &ctx.slice_d).map_err(err)?;
        let l = |p: &Polynomial, k| LaurentElement::new(p.clone(), "x", k);
        let want = vec![
            l(&ctx.f[0], 0).map_err(err)?,
            l(&Polynomial::zero(&ctx.big), 0).map_err(err)?,
            l(&ctx.f[1].scale(&Rational::new(1.into(), 2.into())), 3).map_err(err)?,
            l(&ctx.f[2].scale(&Rational::new(1.into(), 3.into())), 6).map_err(err)?,
            l(&ctx.f[3], 1).map_err(err)?,
        ];
        for ((v, got), want) in BIG_VARS.iter().zip(&gens).zip(&want) {
            if got != want {
                return Ok(Some(format!("mu(-s/x^3)({v}) = {got}, expected {want}")));
            }
        }
        Ok(None)
    });

    run_check(&mut report, "delta.kernel_check", || {
        let out = kernel_check(
            &ctx.delta,
            &ctx.delta_kernel,
            "s",
            &ctx.slice_delta,
            &KernelConfig::default(),
        )
        .map_err(err)?;
        Ok(expect_eq(
            "status",
            format!("{:?}", out.status),
            "Confirmed".to_string(),
        ))
    });

    let rho_expected = [("f4", 3, "-s"), ("f5", 4, "-s^2*v"), ("f6", 5, "3*s^2*(2*u*s - t^2)")];
    for (name, i, text) in rho_expected {
        run_check(&mut report, &format!("rho.{name}"), || {
            let got = ctx.rho.apply(&ctx.f[i]).map_err(err)?;
            let want = parse_polynomial(text, &ctx.small).map_err(err)?;
            Ok(expect_eq(&format!("rho({name})"), &got, &want))
        });
    }
    run_check(&mut report, "intertwine.rho", || {
        let ok = Derivation::intertwines(&ctx.rho, &ctx.d, &ctx.delta).map_err(err)?;
        Ok((!ok).then(|| "Delta(rho(f)) != rho(D(f)) on some variable".to_string()))
    });
    run_check(&mut report, "intertwine.phi", || {
        let ok = Derivation::intertwines(&ctx.phi, &ctx.d, &ctx.delta_prime).map_err(err)?;
        Ok((!ok).then(|| "DeltaPrime(phi(f)) != phi(D(f)) on some variable".to_string()))
    });
    run_check(&mut report, "commute.dv", || {
        let ok = ctx.d.commutes_with_partial("v").map_err(err)?;
        Ok((!ok).then(|| "D and d/dv do not commute".to_string()))
    });

    verify_aux(ctx, &mut report);

    run_check(&mut report, "origin.f_vanish", || {
        let x = ctx.big.var_index("x").map_err(err)?;
        let s = ctx.big.var_index("s").map_err(err)?;
        let mut images = ctx.big.generators();
        images[x] = Polynomial::zero(&ctx.big);
        images[s] = Polynomial::zero(&ctx.big);
        let kill = RingMap::new(&ctx.big, &ctx.big, images).map_err(err)?;
        for (i, f) in ctx.f.iter().enumerate() {
            if !f.constant_term().is_zero() {
                return Ok(Some(format!("f{} has constant term {}", i + 1, f.constant_term())));
            }
            let image = kill.apply(f).map_err(err)?;
            if !image.is_zero() {
                return Ok(Some(format!("f{} at x = s = 0 is {image}", i + 1)));
            }
        }
        Ok(None)
    });
    report
}

fn verify_aux(ctx: &PaperContext, report: &mut VerificationReport) {
    let h = &ctx.h;
    let x = ctx.aux.index_of("x").expect("x");
    let sum = || h[1].pow(3) + h[2].pow(2);

    for (i, g) in h.iter().enumerate() {
        run_check(report, &format!("aux.invariance.h{}", i + 1), || {
            let image = ctx.delta_prime.apply(g).map_err(err)?;
            Ok((!image.is_zero()).then(|| format!("DeltaPrime(h{}) = {image}", i + 1)))
        });
    }
    run_check(report, "aux.h4_identity", || {
        let quotient = sum().exact_divide_by_power(x, 2).map_err(err)?;
        Ok(expect_eq("(h2^3 + h3^2)/x^2", &quotient, &h[3]))
    });
    run_check(report, "aux.slice.generators", || {
        let gens = slice_kernel_generators(&ctx.delta_prime, &ctx.slice_delta_prime).map_err(err)?;
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let want = [
            LaurentElement::new(h[0].clone(), "x", 0),
            LaurentElement::new(Polynomial::zero(&ctx.aux), "x", 0),
            LaurentElement::new(h[1].scale(&half), "x", 1),
            LaurentElement::new(h[2].scale(&third), "x", 3),
        ];
        for ((v, got), want) in AUX_VARS.iter().zip(&gens).zip(want) {
            let want = want.map_err(err)?;
            if got != &want {
                return Ok(Some(format!("mu(-v/x^2)({v}) = {got}, expected {want}")));
            }
        }
        Ok(None)
    });
    run_check(report, "aux.relation_ideal", || {
        let mut to_zero = ctx.aux.generators();
        to_zero[x] = Polynomial::zero(&ctx.aux);
        let mod_x = RingMap::new(&ctx.aux, &ctx.aux, to_zero).map_err(err)?;
        let images = h
            .iter()
            .map(|g| mod_x.apply(g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let rel = relation_ideal(&images).map_err(err)?;
        let want = parse_all(&["X1", "X2^3 + X3^2"], rel.ring()).map_err(err)?;
        let equal = rel.equals(&want).map_err(err)?;
        Ok((!equal).then(|| {
            format!(
                "relations are {:?}",
                rel.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()
            )
        }))
    });
    run_check(report, "aux.membership", || {
        let target = sum().exact_divide_by_power(x, 1).map_err(err)?;
        match subalgebra_membership(&target, h).map_err(err)? {
            Membership::Representation(p) => Ok(expect_eq("representation", p.to_string(), "X1*X4".to_string())),
            Membership::NotMember => Ok(Some("(h2^3 + h3^2)/x is not in Q[h1..h4]".to_string())),
        }
    });
    run_check(report, "aux.kernel_check", || {
        let out = kernel_check(
            &ctx.delta_prime,
            h,
            "x",
            &ctx.slice_delta_prime,
            &KernelConfig::default(),
        )
        .map_err(err)?;
        Ok(expect_eq(
            "status",
            format!("{:?}", out.status),
            format!("{:?}", KernelStatus::Confirmed),
        ))
    });
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-100i64..=100).into(), rng.gen_range(1i64..=100).into())
}

fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64))
}

/// Draws a point in the given stratum.
fn random_point<R: Rng>(ctx: &PaperContext, rng: &mut R, stratum: Stratum) -> Point {
    let mut coords: Vec<Rational> = (0..5).map(|_| random_rational(rng)).collect();
    match stratum {
        Stratum::XNonzero => coords[0] = random_nonzero(rng),
        Stratum::XZeroSNonzero => {
            coords[0] = Rational::zero();
            coords[1] = random_nonzero(rng);
        }
        Stratum::XZeroSZero => {
            coords[0] = Rational::zero();
            coords[1] = Rational::zero();
        }
    }
    Point::new(&ctx.big, coords).expect("five coordinates")
}

fn random_exponents<R: Rng>(rng: &mut R) -> [u32; 6] {
    let mut e = [0u32; 6];
    for _ in 0..rng.gen_range(1..=3) {
        e[rng.gen_range(0..6)] += 1;
    }
    e
}

fn product_value(values: &[Rational], exps: &[u32; 6]) -> Rational {
    values.iter().zip(exps).fold(Rational::one(), |acc, (v, &e)| {
        acc * num_traits::pow(v.clone(), e as usize)
    })
}

const STRATA: [Stratum; 3] = [Stratum::XNonzero, Stratum::XZeroSNonzero, Stratum::XZeroSZero];

/// Failure messages of one sample, by category.
#[derive(Default)]
struct SampleOutcome {
    orbit: Option<String>,
    product: Option<String>,
    stratum: Option<String>,
    fiber: Option<String>,
}

fn run_sample(ctx: &PaperContext, seed: u64, index: usize) -> Result<SampleOutcome, PaperError> {
    let mut rng = sample_rng(seed, index);
    let stratum = STRATA[index % 3];
    let p = random_point(ctx, &mut rng, stratum);
    let a = random_rational(&mut rng);
    let exps = random_exponents(&mut rng);
    let mut out = SampleOutcome::default();

    let q = ctx.d.orbit_point(&a, &p)?;
    let vp = separating_values(ctx, &p)?;
    let vq = separating_values(ctx, &q)?;
    if vp != vq {
        out.orbit = Some(format!("sample {index}: f-values differ at {p} and its flow by {a}"));
    }
    if product_value(&vp, &exps) != product_value(&vq, &exps) {
        out.product = Some(format!(
            "sample {index}: product with exponents {exps:?} differs along the orbit of {p}"
        ));
    }
    if stratum_of(ctx, &p) != stratum {
        out.stratum = Some(format!("sample {index}: {p} drawn for stratum {stratum}"));
    } else if stratum == Stratum::XZeroSZero && vp.iter().any(|v| !v.is_zero()) {
        out.stratum = Some(format!("sample {index}: nonzero f-value at {p}"));
    }

    // a fiber pair over x = 0, s != 0: same s, v and 2us - t^2, different t
    let sigma = random_nonzero(&mut rng);
    let nu = random_rational(&mut rng);
    let tau1 = random_rational(&mut rng);
    let omega1 = random_rational(&mut rng);
    let mut tau2 = random_rational(&mut rng);
    if tau2 == tau1 {
        tau2 += Rational::one();
    }
    let c = Rational::from_integer(2.into()) * &omega1 * &sigma - &tau1 * &tau1;
    let omega2 = (c + &tau2 * &tau2) / (Rational::from_integer(2.into()) * &sigma);
    let zero = Rational::zero();
    let p1 = Point::new(&ctx.big, vec![zero.clone(), sigma.clone(), tau1, omega1, nu.clone()])?;
    let p2 = Point::new(&ctx.big, vec![zero, sigma, tau2, omega2, nu])?;
    if separates(ctx, &p1, &p2)? {
        out.fiber = Some(format!("sample {index}: {p1} and {p2} are separated"));
    } else {
        for k in &ctx.delta_kernel {
            let (a, b) = (k.evaluate(&ctx.gamma(&p1))?, k.evaluate(&ctx.gamma(&p2))?);
            if a != b {
                out.fiber = Some(format!(
                    "sample {index}: {k} is {a} and {b} on the projections of {p1}, {p2}"
                ));
                break;
            }
        }
    }
    Ok(out)
}

/// Point-level suite: orbit invariance of the `f_i` and their products,
/// vanishing on `x = s = 0`, and non-separation of fiber pairs over
/// `x = 0, s != 0`. Sample `i` uses the seed `seed + i`; strata rotate with
/// the index.
pub fn random_suite(
    ctx: &PaperContext,
    seed: u64,
    n: usize,
    exec: Execution,
) -> Result<VerificationReport, PaperError> {
    if n == 0 {
        return Err(PaperError::NoSamples);
    }
    let outcomes = exec.map_range(n, |i| run_sample(ctx, seed, i));
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>, _>>()?;
    let first = |pick: fn(&SampleOutcome) -> &Option<String>| {
        let failed: Vec<&String> = outcomes.iter().filter_map(|o| pick(o).as_ref()).collect();
        failed
            .first()
            .map(|w| format!("{} of {n} samples failed; first: {w}", failed.len()))
    };
    let mut report = VerificationReport::default();
    report.push("random.orbit_invariance", first(|o| &o.orbit));
    report.push("random.product_invariance", first(|o| &o.product));
    report.push("random.strata", first(|o| &o.stratum));
    report.push("random.fiber_pairs", first(|o| &o.fiber));
    Ok(report)
}

/// A random sum `c0 + c1*m1 + c2*m2` of monomials `m` in the `f_i`.
fn random_f_polynomial<R: Rng>(ctx: &PaperContext, rng: &mut R) -> Polynomial {
    let mut total = Polynomial::constant(&ctx.big, random_rational(rng));
    for _ in 0..2 {
        let exps = random_exponents(rng);
        let mono = ctx
            .f
            .iter()
            .zip(exps)
            .fold(Polynomial::one(&ctx.big), |acc, (f, e)| &acc * &f.pow(e));
        total = &total + &mono.scale(&random_nonzero(rng));
    }
    total
}

/// Every sampled polynomial in the `f_i` is its value at the origin plus an
/// element of the ideal `(x, s)`.
pub fn origin_ideal_suite(
    ctx: &PaperContext,
    seed: u64,
    n: usize,
    exec: Execution,
) -> Result<VerificationReport, PaperError> {
    if n == 0 {
        return Err(PaperError::NoSamples);
    }
    let ideal = GroebnerBasis::compute(
        &ctx.big,
        &parse_all(&["x", "s"], &ctx.big)?,
        MonomialOrder::GradedReverseLex,
    )?;
    let origin = Point::origin(&ctx.big);
    let witnesses = exec.map_range(n, |i| -> Result<Option<String>, PaperError> {
        let mut rng = sample_rng(seed, i);
        let g = random_f_polynomial(ctx, &mut rng);
        let at_origin = g.evaluate(&origin)?;
        if at_origin != g.constant_term() {
            return Ok(Some(format!(
                "sample {i}: constant term of {g} is not its value at the origin"
            )));
        }
        let rest = &g - &Polynomial::constant(&ctx.big, at_origin);
        let inside = ideal.contains(&rest)?;
        Ok((!inside).then(|| format!("sample {i}: {rest} is not in (x, s)")))
    });
    let failed = witnesses
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let mut report = VerificationReport::default();
    report.push(
        "origin.ideal_membership",
        failed
            .first()
            .map(|w| format!("{} of {n} samples failed; first: {w}", failed.len())),
    );
    Ok(report)
}

//! Kernels of locally nilpotent derivations.
//!
//! Given a slice `sigma = n / y^k` (with `d(sigma) = 1` and `y` a constant of
//! `d`), the kernel of `d` on the localization at `y` is generated by
//! `1/y` and the elements `mu_{-sigma}(v)` over the ring variables `v`.
//! [`kernel_check`] decides whether a candidate subalgebra `R` with
//! `R <= ker d <= R_y` is the whole kernel: it takes the relations among the
//! candidates modulo `y`, and asks whether `P(candidates)/y` falls back into
//! `R` for every relation `P`. The elements that do not are new kernel
//! elements, and [`kernel_compute`] adjoins them round after round.

use std::cmp::Ordering;
use std::sync::Arc;

use thiserror::Error;

use crate::derivation::{Derivation, DerivationError, DEFAULT_NILPOTENCY_CAP};
use crate::exec::Execution;
use crate::groebner::{relation_ideal, subalgebras_equal, GroebnerError, Membership, Subalgebra};
use crate::polycore::{LaurentElement, PolyError, Polynomial, Ring, RingMap};

/// Default largest power of the localization variable tried when clearing
/// denominators in the sufficiency step.
pub const DEFAULT_LOCALIZATION_BOUND: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("denominator variable `{0}` is not a constant of the derivation")]
    DenomNotConstant(String),
    #[error("invalid slice: {0}")]
    SliceInvalid(String),
    #[error("candidate is not invariant: d({candidate}) = {image}")]
    NonInvariantCandidate { candidate: String, image: String },
    #[error("relation {relation} evaluated to {value}, which is not divisible by {var}")]
    DivisionImpossible {
        relation: String,
        value: String,
        var: String,
    },
    #[error("no variable slice over `{0}`")]
    NoSlice(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Whether `d(sigma) == 1` in the localization at sigma's denominator variable.
pub fn verify_slice(d: &Derivation, sigma: &LaurentElement) -> Result<bool, KernelError> {
    crate::polycore::check_same_ring(sigma.numerator().ring(), d.ring())?;
    if sigma.power() > 0 && !d.image(sigma.var_index()).is_zero() {
        return Err(KernelError::DenomNotConstant(sigma.var_name().to_string()));
    }
    Ok(d.apply_laurent(sigma)?.is_one())
}

/// A checked slice of a derivation.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    element: LaurentElement,
}

impl Slice {
    pub fn new(d: &Derivation, sigma: LaurentElement) -> Result<Self, KernelError> {
        if verify_slice(d, &sigma)? {
            Ok(Slice { element: sigma })
        } else {
            Err(KernelError::SliceInvalid(format!("d({sigma}) != 1")))
        }
    }

    /// `numerator / var^power`, with `numerator` in the text grammar.
    pub fn parse(d: &Derivation, numerator: &str, var: &str, power: u32) -> Result<Self, KernelError> {
        let n = crate::parse::parse_polynomial(numerator, d.ring())
            .map_err(|e| KernelError::SliceInvalid(e.to_string()))?;
        Self::new(d, LaurentElement::new(n, var, power)?)
    }

    pub fn element(&self) -> &LaurentElement {
        &self.element
    }
}

/// Looks for a variable `w` with `d(w) = c * y^k` for a nonzero rational `c`,
/// giving the slice `w / (c * y^k)`.
pub fn find_variable_slice(d: &Derivation, loc_var: &str) -> Result<Slice, KernelError> {
    let ring = d.ring();
    let y = ring.var_index(loc_var)?;
    if !d.image(y).is_zero() {
        return Err(KernelError::DenomNotConstant(loc_var.to_string()));
    }
    for w in 0..ring.nvars() {
        let img = d.image(w);
        if img.num_terms() != 1 || img.involves(w) {
            continue;
        }
        let (m, c) = img.leading_term().unwrap();
        let k = m.exponent(y);
        if m.degree() != k as u64 {
            continue;
        }
        let numer = Polynomial::var(ring, w).scale(&c.recip());
        if let Ok(s) = Slice::new(d, LaurentElement::new(numer, loc_var, k)?) {
            return Ok(s);
        }
    }
    Err(KernelError::NoSlice(loc_var.to_string()))
}

/// `mu_{-sigma}(v)` for each ring variable `v`, in ring order. Together with
/// `1/y` these generate the kernel on the localization.
pub fn slice_kernel_generators(d: &Derivation, sigma: &Slice) -> Result<Vec<LaurentElement>, KernelError> {
    let minus_sigma = sigma.element.neg();
    d.ring()
        .generators()
        .iter()
        .map(|v| Ok(d.exponential_at(v, &minus_sigma, DEFAULT_NILPOTENCY_CAP)?))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct KernelConfig {
    /// Largest power of the localization variable tried in the sufficiency step.
    pub localization_bound: u32,
    pub execution: Execution,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            localization_bound: DEFAULT_LOCALIZATION_BOUND,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelStatus {
    Confirmed,
    NewGenerators,
    Inconclusive,
}

/// Sufficiency step record: `y^power * generator` was found in the candidate
/// algebra (with `y` adjoined), or not within the bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SufficiencyEntry {
    pub generator: LaurentElement,
    pub cleared_with_power: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptEntry {
    /// Relation among the candidates modulo `y`, in `X1..Xm`.
    pub relation: Polynomial,
    /// `P(candidates) / y`.
    pub reduced: Polynomial,
    pub verdict: Membership,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelCheckOutcome {
    pub status: KernelStatus,
    /// Invariants outside the candidate algebra, primitive and in canonical order.
    pub new_elements: Vec<Polynomial>,
    pub sufficiency: Vec<SufficiencyEntry>,
    pub transcript: Vec<TranscriptEntry>,
}

fn assert_invariant(d: &Derivation, f: &Polynomial) -> Result<(), KernelError> {
    let image = d.apply(f)?;
    if image.is_zero() {
        Ok(())
    } else {
        Err(KernelError::NonInvariantCandidate {
            candidate: f.to_string(),
            image: image.to_string(),
        })
    }
}

/// Total order used to list new generators: by descending terms, comparing
/// monomials first and coefficients second.
pub fn canonical_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let mut ta = a.terms().rev();
    let mut tb = b.terms().rev();
    loop {
        match (ta.next(), tb.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ma, ca)), Some((mb, cb))) => {
                let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                if o != Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

fn check_slice_over(sigma: &Slice, loc: usize, d: &Derivation) -> Result<(), KernelError> {
    let e = sigma.element();
    crate::polycore::check_same_ring(e.numerator().ring(), d.ring())?;
    if e.power() > 0 && e.var_index() != loc {
        return Err(KernelError::SliceInvalid(format!(
            "slice is over `{}`, not `{}`",
            e.var_name(),
            d.ring().var_name(loc)
        )));
    }
    if !verify_slice(d, e)? {
        return Err(KernelError::SliceInvalid(format!("d({e}) != 1")));
    }
    Ok(())
}

/// One pass of the kernel-check: decides whether `Q[candidates]` is the
/// kernel of `d`, or produces invariants outside it.
pub fn kernel_check(
    d: &Derivation,
    candidates: &[Polynomial],
    loc_var: &str,
    sigma: &Slice,
    config: &KernelConfig,
) -> Result<KernelCheckOutcome, KernelError> {
    let ring = d.ring();
    let loc = ring.var_index(loc_var)?;
    if !d.image(loc).is_zero() {
        return Err(KernelError::DenomNotConstant(loc_var.to_string()));
    }
    check_slice_over(sigma, loc, d)?;
    for c in candidates {
        crate::polycore::check_same_ring(c.ring(), ring)?;
        assert_invariant(d, c)?;
    }
    let y = Polynomial::var(ring, loc);
    let algebra = Subalgebra::new(ring, candidates)?;

    // (1) the localized kernel generators lie in R[1/y]
    let with_loc = if candidates.contains(&y) {
        algebra.clone()
    } else {
        let mut gens = candidates.to_vec();
        gens.push(y.clone());
        Subalgebra::new(ring, &gens)?
    };
    let generators = slice_kernel_generators(d, sigma)?;
    let sufficiency = config
        .execution
        .map(&generators, |_, g| -> Result<SufficiencyEntry, KernelError> {
            let mut cleared_with_power = None;
            for n in g.power()..=config.localization_bound {
                let p = g.numerator() * &y.pow(n - g.power());
                if with_loc.contains(&p)? {
                    cleared_with_power = Some(n);
                    break;
                }
            }
            Ok(SufficiencyEntry {
                generator: g.clone(),
                cleared_with_power,
            })
        });
    let sufficiency = sufficiency.into_iter().collect::<Result<Vec<_>, _>>()?;
    let sufficient = sufficiency.iter().all(|e| e.cleared_with_power.is_some());

    // (2) relations among the candidates modulo y
    let mut to_zero = ring.generators();
    to_zero[loc] = Polynomial::zero(ring);
    let mod_y = RingMap::new(ring, ring, to_zero)?;
    let images = candidates
        .iter()
        .map(|c| mod_y.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    let relations = relation_ideal(&images)?;

    // (3) P(candidates) / y must land back in R
    let transcript = config
        .execution
        .map(relations.generators(), |_, p| -> Result<TranscriptEntry, KernelError> {
            let value = algebra.evaluate(p)?;
            let reduced = value
                .exact_divide_by_power(loc, 1)
                .map_err(|_| KernelError::DivisionImpossible {
                    relation: p.to_string(),
                    value: value.to_string(),
                    var: loc_var.to_string(),
                })?;
            let verdict = algebra.membership(&reduced)?;
            Ok(TranscriptEntry {
                relation: p.clone(),
                reduced,
                verdict,
            })
        });
    let transcript = transcript.into_iter().collect::<Result<Vec<_>, _>>()?;

    // (4) collect the non-members
    let mut new_elements: Vec<Polynomial> = Vec::new();
    for entry in &transcript {
        if entry.verdict.is_member() {
            continue;
        }
        let g = entry.reduced.primitive_part();
        assert_invariant(d, &g)?;
        if !new_elements.contains(&g) {
            new_elements.push(g);
        }
    }
    new_elements.sort_by(canonical_cmp);

    let status = if !sufficient {
        KernelStatus::Inconclusive
    } else if new_elements.is_empty() {
        KernelStatus::Confirmed
    } else {
        KernelStatus::NewGenerators
    };
    Ok(KernelCheckOutcome {
        status,
        new_elements,
        sufficiency,
        transcript,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub round: usize,
    /// Candidate count at the start of the round.
    pub candidates: usize,
    pub status: KernelStatus,
    pub adjoined: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelComputeResult {
    /// Kernel-check confirmed the candidate algebra after `rounds` rounds.
    /// `generators` is the final candidate list with redundant members pruned.
    Stabilized {
        generators: Vec<Polynomial>,
        rounds: usize,
        history: Vec<RoundRecord>,
    },
    /// Still growing when the round budget ran out. `counts[0]` is the seed
    /// count and `counts[r]` the candidate count after round `r`.
    NonStabilized {
        counts: Vec<usize>,
        candidates: Vec<Polynomial>,
        history: Vec<RoundRecord>,
    },
}

impl KernelComputeResult {
    pub fn history(&self) -> &[RoundRecord] {
        match self {
            KernelComputeResult::Stabilized { history, .. } | KernelComputeResult::NonStabilized { history, .. } => {
                history
            }
        }
    }
}

/// Seed candidates: the denominator-cleared slice generators (primitive, zero
/// and constants dropped) and the localization variable.
pub fn seed_candidates(d: &Derivation, loc_var: &str, sigma: &Slice) -> Result<Vec<Polynomial>, KernelError> {
    let ring = d.ring();
    let y = ring.variable(loc_var)?;
    let mut seeds: Vec<Polynomial> = Vec::new();
    for g in slice_kernel_generators(d, sigma)? {
        let n = g.numerator().primitive_part();
        if n.is_constant() || seeds.contains(&n) {
            continue;
        }
        seeds.push(n);
    }
    if !seeds.contains(&y) {
        seeds.insert(0, y);
    }
    Ok(seeds)
}

/// Runs kernel-check repeatedly, adjoining new invariants, for at most
/// `max_rounds` rounds.
pub fn kernel_compute(
    d: &Derivation,
    loc_var: &str,
    sigma: &Slice,
    max_rounds: usize,
    config: &KernelConfig,
) -> Result<KernelComputeResult, KernelError> {
    let mut candidates = seed_candidates(d, loc_var, sigma)?;
    let mut counts = vec![candidates.len()];
    let mut history = Vec::new();
    for round in 1..=max_rounds {
        let outcome = kernel_check(d, &candidates, loc_var, sigma, config)?;
        history.push(RoundRecord {
            round,
            candidates: candidates.len(),
            status: outcome.status,
            adjoined: outcome.new_elements.clone(),
        });
        if outcome.status == KernelStatus::Confirmed {
            let generators = prune(d.ring(), &candidates)?;
            if !subalgebras_equal(d.ring(), &generators, &candidates)? {
                return Err(KernelError::Inconsistent(
                    "pruning changed the candidate algebra".into(),
                ));
            }
            return Ok(KernelComputeResult::Stabilized {
                generators,
                rounds: round,
                history,
            });
        }
        if outcome.new_elements.is_empty() {
            break;
        }
        for g in outcome.new_elements {
            assert_invariant(d, &g)?;
            candidates.push(g);
        }
        counts.push(candidates.len());
    }
    Ok(KernelComputeResult::NonStabilized {
        counts,
        candidates,
        history,
    })
}

/// Drops, from the back, every generator that lies in the algebra of the rest.
fn prune(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Vec<Polynomial>, KernelError> {
    let mut kept = gens.to_vec();
    let mut i = kept.len();
    while i > 0 {
        i -= 1;
        let mut rest = kept.clone();
        let g = rest.remove(i);
        if Subalgebra::new(ring, &rest)?.contains(&g)? {
            kept = rest;
        }
    }
    Ok(kept)
}

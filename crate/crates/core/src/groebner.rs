//! Buchberger's algorithm over the rationals, and what is built on it:
//! ideal membership, elimination, relation ideals of ring maps and subalgebra
//! membership with a certificate.
//!
//! Runs are deterministic. S-pairs are taken by the normal strategy (smallest
//! lcm degree, ties broken by the monomial order on the lcm, then by index),
//! and the only pair criterion is the coprime-leading-monomial skip.
//! Subalgebra membership over homogeneous generators uses a basis that is
//! only complete up to the degrees asked about so far.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::polycore::{check_same_ring, Monomial, PolyError, Polynomial, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no generators given")]
    EmptyGenerators,
    #[error("block size {block} exceeds the {nvars} ring variables")]
    BlockTooLarge { block: usize, nvars: usize },
}

/// Monomial orders over the ring's variable order (first variable largest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GradedLex,
    GradedReverseLex,
    /// Graded reverse lex on the first `n` variables, ties broken by graded
    /// reverse lex on the rest. Any monomial involving the first block beats
    /// every monomial free of it, so it eliminates that block.
    BlockElimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::GradedLex => a.cmp(b),
            MonomialOrder::GradedReverseLex => grevlex(ea, eb),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(ea.len());
                grevlex(&ea[..k], &eb[..k]).then_with(|| grevlex(&ea[k..], &eb[k..]))
            }
        }
    }

    fn validate(&self, ring: &Ring) -> Result<(), GroebnerError> {
        match *self {
            MonomialOrder::BlockElimination(k) if k > ring.nvars() => Err(GroebnerError::BlockTooLarge {
                block: k,
                nvars: ring.nvars(),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::GradedLex => f.write_str("grlex"),
            MonomialOrder::GradedReverseLex => f.write_str("grevlex"),
            MonomialOrder::BlockElimination(k) => write!(f, "block:{k}"),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GradedLex),
            "grevlex" => Ok(MonomialOrder::GradedReverseLex),
            _ => s
                .strip_prefix("block:")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::BlockElimination)
                .ok_or_else(|| format!("unknown monomial order `{s}` (lex, grlex, grevlex, block:<n>)")),
        }
    }
}

/// Terms sorted ascending in a fixed order, leading term last.
#[derive(Debug, Clone, PartialEq)]
struct Sparse {
    terms: Vec<(Monomial, Rational)>,
}

impl Sparse {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sparse { terms }
    }

    fn to_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned()).expect("terms come from this ring")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, Rational) {
        self.terms.last().expect("nonzero")
    }

    fn lm(&self) -> &Monomial {
        &self.lead().0
    }

    fn make_monic(&mut self) {
        let inv = self.lead().1.recip();
        if !inv.is_one() {
            for (_, c) in &mut self.terms {
                *c *= &inv;
            }
        }
    }

    /// `self - c * mono * g`, merging two ascending term lists.
    fn sub_scaled(&self, c: &Rational, mono: &Monomial, g: &Sparse, order: MonomialOrder) -> Sparse {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, k)| (m.mul(mono), k * c)).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match step {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (m, k) = b.next().unwrap();
                    out.push((m, -k));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let d = x - y;
                    if !d.is_zero() {
                        out.push((m.clone(), d));
                    }
                }
            }
        }
        Sparse { terms: out }
    }
}

/// Full reduction of `f` by monic `basis`.
fn reduce(f: &Sparse, basis: &[Sparse], order: MonomialOrder) -> Sparse {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.terms.last() {
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = m.div(g.lm()).unwrap();
                let c = c / &g.lead().1;
                p = p.sub_scaled(&c, &q, g, order);
            }
            None => rem.push(p.terms.pop().unwrap()),
        }
    }
    rem.reverse();
    Sparse { terms: rem }
}

fn s_polynomial(f: &Sparse, g: &Sparse, order: MonomialOrder) -> Sparse {
    let lcm = f.lm().lcm(g.lm());
    let uf = lcm.div(f.lm()).unwrap();
    let ug = lcm.div(g.lm()).unwrap();
    let zero = Sparse { terms: Vec::new() };
    let a = zero.sub_scaled(&-f.lead().1.recip(), &uf, f, order);
    a.sub_scaled(&g.lead().1.recip(), &ug, g, order)
}

/// A reduced Gröbner basis: monic, sorted by ascending leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    basis: Vec<Sparse>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.basis == other.basis
    }
}

impl GroebnerBasis {
    /// Reduced basis of the ideal generated by `gens`. Zero generators are
    /// ignored; the zero ideal has an empty basis.
    pub fn compute(ring: &Arc<Ring>, gens: &[Polynomial], order: MonomialOrder) -> Result<Self, GroebnerError> {
        order.validate(ring)?;
        for g in gens {
            check_same_ring(g.ring(), ring)?;
        }
        let mut engine = Engine::new(gens, order, None);
        engine.run(None);
        Ok(GroebnerBasis {
            ring: ring.clone(),
            order,
            basis: interreduce(engine.basis, order),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|g| g.to_poly(&self.ring)).collect()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.lm().clone()).collect()
    }

    /// The unique remainder of `f`; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        check_same_ring(f.ring(), &self.ring)?;
        Ok(reduce(&Sparse::from_poly(f, self.order), &self.basis, self.order).to_poly(&self.ring))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        check_same_ring(f.ring(), &self.ring)?;
        Ok(reduce(&Sparse::from_poly(f, self.order), &self.basis, self.order).is_zero())
    }

    /// Checks that every S-polynomial of the basis reduces to zero.
    pub fn is_confluent(&self) -> bool {
        let b = &self.basis;
        (0..b.len()).all(|j| (0..j).all(|i| reduce(&s_polynomial(&b[i], &b[j], self.order), b, self.order).is_zero()))
    }

    /// Reducedness: monic, and no leading monomial divides any term of another
    /// generator.
    pub fn is_reduced(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, g)| {
            g.lead().1.is_one()
                && self
                    .basis
                    .iter()
                    .enumerate()
                    .all(|(j, h)| i == j || g.terms.iter().all(|(m, _)| !h.lm().divides(m)))
        })
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", gens.join(", "))
    }
}

/// Resumable Buchberger state. With `weights` set, the generators must be
/// homogeneous for them; pairs are then taken by weighted lcm degree and a
/// run can stop at a degree bound, leaving a basis that is complete up to it.
#[derive(Debug, Clone)]
struct Engine {
    order: MonomialOrder,
    weights: Option<Vec<u32>>,
    basis: Vec<Sparse>,
    pairs: Vec<(usize, usize)>,
}

/// Selection key of a pair: lcm degree, lcm, indices.
type PairKey = (u64, Monomial, (usize, usize));

impl Engine {
    fn new(gens: &[Polynomial], order: MonomialOrder, weights: Option<Vec<u32>>) -> Self {
        let mut engine = Engine {
            order,
            weights,
            basis: Vec::new(),
            pairs: Vec::new(),
        };
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let mut s = Sparse::from_poly(g, order);
            s.make_monic();
            engine.push(s);
        }
        engine
    }

    fn push(&mut self, g: Sparse) {
        let k = self.basis.len();
        self.basis.push(g);
        self.pairs.extend((0..k).map(|i| (i, k)));
    }

    fn degree(&self, m: &Monomial) -> u64 {
        match &self.weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree(),
        }
    }

    /// Index of the next pair under the normal strategy, with its lcm degree.
    fn select(&self) -> Option<(usize, u64)> {
        let key = |&(i, j): &(usize, usize)| {
            let lcm = self.basis[i].lm().lcm(self.basis[j].lm());
            (self.degree(&lcm), lcm, (i, j))
        };
        let mut best: Option<(usize, PairKey)> = None;
        for (idx, p) in self.pairs.iter().enumerate() {
            let k = key(p);
            let better = match &best {
                None => true,
                Some((_, b)) => {
                    k.0.cmp(&b.0)
                        .then_with(|| self.order.cmp(&k.1, &b.1))
                        .then_with(|| k.2.cmp(&b.2))
                        == Ordering::Less
                }
            };
            if better {
                best = Some((idx, k));
            }
        }
        best.map(|(idx, k)| (idx, k.0))
    }

    /// Processes pairs until none is left with lcm degree within `limit`.
    fn run(&mut self, limit: Option<u64>) {
        while let Some((pick, deg)) = self.select() {
            if limit.is_some_and(|l| deg > l) {
                break;
            }
            let (i, j) = self.pairs.swap_remove(pick);
            if self.basis[i].lm().is_coprime(self.basis[j].lm()) {
                continue;
            }
            let s = s_polynomial(&self.basis[i], &self.basis[j], self.order);
            let mut h = reduce(&s, &self.basis, self.order);
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            self.push(h);
        }
    }
}

fn interreduce(basis: Vec<Sparse>, order: MonomialOrder) -> Vec<Sparse> {
    // drop generators whose leading monomial is divisible by another's (first wins on ties)
    let mut minimal: Vec<Sparse> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Sparse> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Sparse> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let mut r = reduce(&minimal[i], &others, order);
            r.make_monic();
            r
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    reduced
}

/// Reduced Gröbner basis of the ideal generated by a nonempty list.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyGenerators)?;
    GroebnerBasis::compute(first.ring(), gens, order)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    gb.normal_form(f)
}

/// Whether `f` lies in the ideal generated by `gens` (graded reverse lex).
pub fn ideal_membership(f: &Polynomial, gens: &[Polynomial]) -> Result<bool, GroebnerError> {
    GroebnerBasis::compute(f.ring(), gens, MonomialOrder::GradedReverseLex)?.contains(f)
}

/// Ideal equality by mutual reduction: every generator of each side reduces
/// to zero modulo a Gröbner basis of the other.
pub fn ideals_equal(a: &[Polynomial], b: &[Polynomial], ring: &Arc<Ring>) -> Result<bool, GroebnerError> {
    let order = MonomialOrder::GradedReverseLex;
    let ga = GroebnerBasis::compute(ring, a, order)?;
    let gb = GroebnerBasis::compute(ring, b, order)?;
    for f in a {
        if !gb.contains(f)? {
            return Ok(false);
        }
    }
    for f in b {
        if !ga.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ring holding the target variables followed by one tag variable per image,
/// together with the ideal `(X_i - image_i)`.
struct TagIdeal {
    ring: Arc<Ring>,
    kept: usize,
    presentation: Arc<Ring>,
    gens: Vec<Polynomial>,
}

fn presentation_ring(m: usize) -> Arc<Ring> {
    Ring::new((1..=m).map(|i| format!("X{i}"))).expect("distinct names")
}

impl TagIdeal {
    fn build(target: &Arc<Ring>, images: &[Polynomial], only_used: bool) -> Result<Self, PolyError> {
        for g in images {
            check_same_ring(g.ring(), target)?;
        }
        let used: Vec<bool> = if only_used {
            let mut u = vec![false; target.nvars()];
            for g in images {
                for (a, b) in u.iter_mut().zip(g.support()) {
                    *a |= b;
                }
            }
            u
        } else {
            vec![true; target.nvars()]
        };
        let mut names: Vec<String> = Vec::new();
        let mut target_index = vec![None; target.nvars()];
        for (i, keep) in used.iter().enumerate() {
            if *keep {
                target_index[i] = Some(names.len());
                names.push(target.var_name(i).to_string());
            }
        }
        let kept = names.len();
        let mut tag_names = Vec::new();
        for i in 1..=images.len() {
            let mut n = format!("X{i}");
            while names.contains(&n) || tag_names.contains(&n) {
                n.insert(0, '_');
            }
            tag_names.push(n);
        }
        names.extend(tag_names);
        let ring = Ring::new(names)?.with_exponent_cap(target.exponent_cap());
        let index_map: Vec<usize> = target_index.iter().map(|i| i.unwrap_or(0)).collect();
        let gens = images
            .iter()
            .enumerate()
            .map(|(i, g)| &Polynomial::var(&ring, kept + i) - &g.embed(&ring, &index_map))
            .collect();
        Ok(TagIdeal {
            ring,
            kept,
            presentation: presentation_ring(images.len()),
            gens,
        })
    }

    /// Reads a polynomial free of target variables in `X1..Xm`.
    fn to_presentation(&self, f: &Polynomial) -> Option<Polynomial> {
        if f.support()[..self.kept].iter().any(|&u| u) {
            return None;
        }
        let terms = f
            .terms()
            .map(|(mono, c)| (Monomial::new(mono.exponents()[self.kept..].to_vec()), c.clone()));
        Some(Polynomial::from_terms(&self.presentation, terms).expect("same arity"))
    }
}

/// Relations among a list of polynomials: the kernel of `X_i -> image_i`.
#[derive(Debug, Clone)]
pub struct RelationIdeal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    images: Vec<Polynomial>,
}

impl RelationIdeal {
    /// The presentation ring `Q[X1, ..., Xm]`.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// `P(image_1, ..., image_m)`.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        let target = self.images.first().map(|g| g.ring().clone());
        match target {
            Some(t) => p.substitute(&crate::polycore::RingMap::new(&self.ring, &t, self.images.clone())?),
            None => Ok(p.clone()),
        }
    }

    /// Every generator vanishes on the images.
    pub fn is_sound(&self) -> bool {
        self.generators
            .iter()
            .all(|g| self.evaluate(g).map(|v| v.is_zero()).unwrap_or(false))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        GroebnerBasis::compute(&self.ring, &self.generators, MonomialOrder::GradedReverseLex)?.contains(p)
    }

    pub fn equals(&self, others: &[Polynomial]) -> Result<bool, GroebnerError> {
        ideals_equal(&self.generators, others, &self.ring)
    }
}

/// Kernel of `Q[X1..Xm] -> target`, `X_i -> images[i]`, by eliminating the
/// target variables from `(X_i - images[i])` under a block order.
pub fn relation_ideal(images: &[Polynomial]) -> Result<RelationIdeal, GroebnerError> {
    let Some(first) = images.first() else {
        return Ok(RelationIdeal {
            ring: presentation_ring(0),
            generators: Vec::new(),
            images: Vec::new(),
        });
    };
    let tags = TagIdeal::build(first.ring(), images, true)?;
    let gb = GroebnerBasis::compute(&tags.ring, &tags.gens, MonomialOrder::BlockElimination(tags.kept))?;
    let generators = gb.generators().iter().filter_map(|g| tags.to_presentation(g)).collect();
    Ok(RelationIdeal {
        ring: tags.presentation,
        generators,
        images: images.to_vec(),
    })
}

/// Outcome of a subalgebra membership test.
#[derive(Debug, Clone, PartialEq)]
pub enum Membership {
    /// `P` in `Q[X1..Xm]` with `P(gens) == f`.
    Representation(Polynomial),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Representation(_))
    }
}

/// Elimination basis for repeated membership tests in the subalgebra
/// `Q[g_1, ..., g_m]`. When the generators are homogeneous for the ring's
/// grading (or the standard one) the basis is grown lazily, only up to the
/// degree of the elements tested so far.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    tags: Arc<TagIdealData>,
}

#[derive(Debug)]
struct TagIdealData {
    tag_ring: Arc<Ring>,
    kept: usize,
    presentation: Arc<Ring>,
    store: BasisStore,
}

#[derive(Debug)]
enum BasisStore {
    Complete(GroebnerBasis),
    Graded {
        weights: Vec<u32>,
        state: Mutex<GradedState>,
    },
}

#[derive(Debug)]
struct GradedState {
    engine: Engine,
    reached: Option<u64>,
    snapshot: Arc<Vec<Sparse>>,
}

fn homogeneous_degree(p: &Polynomial, weights: &[u32]) -> Option<u64> {
    let mut degs = p.terms().map(|(m, _)| m.weighted_degree(weights));
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

/// Grading making every generator homogeneous of positive degree, if any.
fn tag_weights(ring: &Ring, gens: &[Polynomial]) -> Option<Vec<u32>> {
    let base = ring
        .weights()
        .map(|w| w.to_vec())
        .unwrap_or_else(|| vec![1; ring.nvars()]);
    let mut weights = base.clone();
    for g in gens {
        match homogeneous_degree(g, &base) {
            Some(d) if d > 0 => weights.push(u32::try_from(d).ok()?),
            _ => return None,
        }
    }
    Some(weights)
}

impl Subalgebra {
    pub fn new(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Self, GroebnerError> {
        let tags = TagIdeal::build(ring, gens, false)?;
        let order = MonomialOrder::BlockElimination(tags.kept);
        let store = match tag_weights(ring, gens) {
            Some(weights) => {
                let engine = Engine::new(&tags.gens, order, Some(weights.clone()));
                let snapshot = Arc::new(engine.basis.clone());
                BasisStore::Graded {
                    weights,
                    state: Mutex::new(GradedState {
                        engine,
                        reached: None,
                        snapshot,
                    }),
                }
            }
            None => BasisStore::Complete(GroebnerBasis::compute(&tags.ring, &tags.gens, order)?),
        };
        Ok(Subalgebra {
            ring: ring.clone(),
            gens: gens.to_vec(),
            tags: Arc::new(TagIdealData {
                tag_ring: tags.ring,
                kept: tags.kept,
                presentation: tags.presentation,
                store,
            }),
        })
    }

    fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let d = &self.tags;
        let index_map: Vec<usize> = (0..self.ring.nvars()).collect();
        let f = f.embed(&d.tag_ring, &index_map);
        match &d.store {
            BasisStore::Complete(gb) => gb.normal_form(&f).expect("same ring"),
            BasisStore::Graded { weights, state } => {
                let order = MonomialOrder::BlockElimination(d.kept);
                let top = f.terms().map(|(m, _)| m.weighted_degree(weights)).max().unwrap_or(0);
                let basis = {
                    let mut st = state.lock().unwrap_or_else(|e| e.into_inner());
                    if st.reached.is_none_or(|r| r < top) {
                        st.engine.run(Some(top));
                        st.reached = Some(top);
                        st.snapshot = Arc::new(st.engine.basis.clone());
                    }
                    st.snapshot.clone()
                };
                reduce(&Sparse::from_poly(&f, order), &basis, order).to_poly(&d.tag_ring)
            }
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn presentation_ring(&self) -> &Arc<Ring> {
        &self.tags.presentation
    }

    pub fn membership(&self, f: &Polynomial) -> Result<Membership, GroebnerError> {
        check_same_ring(f.ring(), &self.ring)?;
        let d = &self.tags;
        let nf = self.normal_form(f);
        if nf.support()[..d.kept].iter().any(|&u| u) {
            return Ok(Membership::NotMember);
        }
        let terms = nf
            .terms()
            .map(|(m, c)| (Monomial::new(m.exponents()[d.kept..].to_vec()), c.clone()));
        Ok(Membership::Representation(
            Polynomial::from_terms(&d.presentation, terms).expect("same arity"),
        ))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.membership(f)?.is_member())
    }

    /// `P(g_1, ..., g_m)` for `P` in the presentation ring.
    pub fn evaluate(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        p.substitute(&crate::polycore::RingMap::new(
            &self.tags.presentation,
            &self.ring,
            self.gens.clone(),
        )?)
    }
}

/// One-shot membership of `f` in `Q[gens]`.
pub fn subalgebra_membership(f: &Polynomial, gens: &[Polynomial]) -> Result<Membership, GroebnerError> {
    Subalgebra::new(f.ring(), gens)?.membership(f)
}

/// Mutual subalgebra membership: `Q[a] == Q[b]`.
pub fn subalgebras_equal(ring: &Arc<Ring>, a: &[Polynomial], b: &[Polynomial]) -> Result<bool, GroebnerError> {
    let sa = Subalgebra::new(ring, a)?;
    let sb = Subalgebra::new(ring, b)?;
    for f in a {
        if !sb.contains(f)? {
            return Ok(false);
        }
    }
    for f in b {
        if !sa.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn polys(ring: &Arc<Ring>, texts: &[&str]) -> Vec<Polynomial> {
        texts.iter().map(|t| parse_polynomial(t, ring).unwrap()).collect()
    }

    #[test]
    fn orders() {
        let a = Monomial::new(vec![1, 0, 2]);
        let b = Monomial::new(vec![0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::GradedLex.cmp(&a, &b), Ordering::Greater);
        // same degree; grevlex prefers the smaller exponent in the last variable
        assert_eq!(MonomialOrder::GradedReverseLex.cmp(&a, &b), Ordering::Less);
        let c = Monomial::new(vec![0, 0, 9]);
        assert_eq!(MonomialOrder::BlockElimination(1).cmp(&a, &c), Ordering::Greater);
        assert_eq!(
            "block:3".parse::<MonomialOrder>(),
            Ok(MonomialOrder::BlockElimination(3))
        );
        assert!("revlex".parse::<MonomialOrder>().is_err());
    }

    #[test]
    fn single_and_coprime_generators() {
        let r = Ring::new(["x"]).unwrap();
        let gb = buchberger(&polys(&r, &["x"]), MonomialOrder::Lex).unwrap();
        assert_eq!(gb.generators(), polys(&r, &["x"]));
        let r = Ring::new(["X1", "X2", "X3", "X4"]).unwrap();
        let gens = polys(&r, &["X1", "X2^3 + X3^2"]);
        let gb = buchberger(&gens, MonomialOrder::GradedReverseLex).unwrap();
        assert_eq!(gb.generators(), gens);
        assert!(gb.is_confluent() && gb.is_reduced());
    }

    #[test]
    fn zero_ideal() {
        let r = Ring::new(["x", "y"]).unwrap();
        let gb = GroebnerBasis::compute(&r, &polys(&r, &["0"]), MonomialOrder::Lex).unwrap();
        assert!(gb.is_empty());
        let f = parse_polynomial("x*y + 1", &r).unwrap();
        assert_eq!(gb.normal_form(&f).unwrap(), f);
        assert_eq!(
            buchberger(&[], MonomialOrder::Lex).unwrap_err(),
            GroebnerError::EmptyGenerators
        );
    }

    #[test]
    fn block_size_is_validated() {
        let r = Ring::new(["x"]).unwrap();
        assert!(matches!(
            GroebnerBasis::compute(&r, &[], MonomialOrder::BlockElimination(2)),
            Err(GroebnerError::BlockTooLarge { .. })
        ));
    }

    #[test]
    fn membership_with_constants() {
        let r = Ring::new(["x", "y"]).unwrap();
        let sub = Subalgebra::new(&r, &polys(&r, &["x^2", "y"])).unwrap();
        let m = sub.membership(&parse_polynomial("3 + x^4*y", &r).unwrap()).unwrap();
        let p = match m {
            Membership::Representation(p) => p,
            Membership::NotMember => panic!("expected a member"),
        };
        assert_eq!(p.to_string(), "X1^2*X2 + 3");
        assert_eq!(
            sub.membership(&parse_polynomial("x", &r).unwrap()).unwrap(),
            Membership::NotMember
        );
        let none = Subalgebra::new(&r, &[]).unwrap();
        assert!(none.contains(&parse_polynomial("5", &r).unwrap()).unwrap());
        assert!(!none.contains(&parse_polynomial("x", &r).unwrap()).unwrap());
    }
}

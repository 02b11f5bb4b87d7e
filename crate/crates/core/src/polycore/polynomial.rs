use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{check_same_ring, Monomial, Point, PolyError, Rational, Ring, RingMap};

/// Sparse polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration is in
/// graded-lex order and no stored coefficient is ever zero. Two polynomials are
/// equal iff they share a ring and have identical term maps.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

/// Weighted homogeneity of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Homogeneous(u64),
    NotHomogeneous { min: u64, max: u64 },
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} in {})", self, self.ring)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print_canonical(self))
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        let mut p = Self::zero(ring);
        p.terms.insert(Monomial::var(ring.nvars(), index), Rational::one());
        p
    }

    pub fn term(ring: &Arc<Ring>, mono: Monomial, coeff: Rational) -> Result<Self, PolyError> {
        Self::from_terms(ring, std::iter::once((mono, coeff)))
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            if m.len() != ring.nvars() {
                return Err(PolyError::ArityMismatch {
                    expected: ring.nvars(),
                    got: m.len(),
                });
            }
            if let Some(&e) = m.exponents().iter().find(|&&e| e > ring.exponent_cap()) {
                return Err(PolyError::ExponentOverflow {
                    exponent: e as u64,
                    cap: ring.exponent_cap(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn from_map_unchecked(ring: &Arc<Ring>, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest exponent of variable `index` among the terms.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).max().unwrap_or(0)
    }

    /// Which ring variables occur in some term.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for (u, &e) in used.iter_mut().zip(m.exponents()) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn involves(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(index) > 0)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_same_ring(&self.ring, &other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        check_same_ring(&self.ring, &other.ring)?;
        let cap = self.ring.exponent_cap();
        let mut out = Polynomial::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb, cap)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, n: u32) -> Result<Polynomial, PolyError> {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        self.try_pow(n).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Value at a point of the same ring.
    pub fn evaluate(&self, p: &Point) -> Result<Rational, PolyError> {
        check_same_ring(&self.ring, p.ring())?;
        let coords = p.coordinates();
        let mut powers: Vec<Vec<Rational>> = coords.iter().map(|c| vec![Rational::one(), c.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &coords[i];
                    cache.push(next);
                }
                value *= &cache[e as usize];
            }
            total += value;
        }
        Ok(total)
    }

    /// Image under the algebra homomorphism fixed by `map`.
    pub fn substitute(&self, map: &RingMap) -> Result<Polynomial, PolyError> {
        check_same_ring(&self.ring, map.source())?;
        let target = map.target();
        let images = map.images();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::one(target), g.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut value = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().try_mul(&images[i])?;
                    cache.push(next);
                }
                value = value.try_mul(&cache[e as usize])?;
                if value.is_zero() {
                    break;
                }
            }
            for (mm, cc) in value.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn partial_derivative_by_name(&self, var: &str) -> Result<Polynomial, PolyError> {
        Ok(self.partial_derivative(self.ring.var_index(var)?))
    }

    pub fn weighted_degree(&self) -> Result<Homogeneity, PolyError> {
        let weights = self
            .ring
            .weights()
            .ok_or_else(|| PolyError::NoGrading(self.ring.vars().join(",")))?;
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let Some(first) = degs.next() else {
            return Ok(Homogeneity::Zero);
        };
        let (min, max) = degs.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
        Ok(if min == max {
            Homogeneity::Homogeneous(min)
        } else {
            Homogeneity::NotHomogeneous { min, max }
        })
    }

    /// The quotient `q` with `var^k * q == self`.
    pub fn exact_divide_by_power(&self, index: usize, k: u32) -> Result<Polynomial, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponent(index) < k {
                let witness = Polynomial::from_map_unchecked(&self.ring, BTreeMap::from([(m.clone(), c.clone())]));
                return Err(PolyError::NotDivisible {
                    var: self.ring.var_name(index).to_string(),
                    power: k,
                    witness: witness.to_string(),
                });
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= k;
            terms.insert(Monomial::new(exps), c.clone());
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn exact_divide_by_var_power(&self, var: &str, k: u32) -> Result<Polynomial, PolyError> {
        self.exact_divide_by_power(self.ring.var_index(var)?, k)
    }

    /// Largest `k` such that `var^k` divides every term (0 for the zero polynomial).
    pub fn var_valuation(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(index)).min().unwrap_or(0)
    }

    /// Scalar multiple with coprime integer coefficients and a positive
    /// leading coefficient. Zero stays zero.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// The same terms, read in another ring. `index_map[i]` is the target
    /// index of source variable `i`.
    pub fn embed(&self, target: &Arc<Ring>, index_map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[index_map[i]] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }
}

fn expect<T>(r: Result<T, PolyError>) -> T {
    r.unwrap_or_else(|e| panic!("polynomial arithmetic: {e}"))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        expect(self.try_add(rhs))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        expect(self.try_sub(rhs))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        expect(self.try_mul(rhs))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

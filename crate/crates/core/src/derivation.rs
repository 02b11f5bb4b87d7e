//! k-linear derivations of polynomial rings and the additive-group actions
//! they generate.
//!
//! A [`Derivation`] is stored as its value on each ring variable and extended
//! to the whole ring by linearity and the Leibniz rule. For a locally
//! nilpotent derivation the exponential `mu_r(f) = sum_k d^k(f)/k! * r^k` is a
//! finite sum and defines the flow used by [`Derivation::orbit_point`].
//!
//! Sign convention: group element `-a` acts on functions by `mu_a`. This
//! module only exposes `mu` and the flow by parameter value `a`, and makes no
//! claim about left versus right actions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::parse::{parse_polynomial, print_canonical, ParseError};
use crate::polycore::{factorial, LaurentElement, Point, PolyError, Polynomial, Rational, Ring, RingMap};

/// Iteration budget used when the caller does not pass one.
pub const DEFAULT_NILPOTENCY_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("no iterate up to {cap} vanished")]
    ExceededCap { cap: u32 },
    #[error("nilpotency cap must be at least 1")]
    InvalidCap,
    #[error("malformed derivation file: {0}")]
    Json(String),
    #[error("image of `{var}`: {source}")]
    Parse { var: String, source: ParseError },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    ring: Arc<Ring>,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Arc<Ring>, images: Vec<Polynomial>) -> Result<Self, DerivationError> {
        if images.len() != ring.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: ring.nvars(),
                got: images.len(),
            }
            .into());
        }
        for img in &images {
            crate::polycore::check_same_ring(img.ring(), ring)?;
        }
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    /// Images given by variable name; variables not listed map to zero.
    pub fn from_images<'a, I>(ring: &Arc<Ring>, images: I) -> Result<Self, DerivationError>
    where
        I: IntoIterator<Item = (&'a str, Polynomial)>,
    {
        let mut all = vec![Polynomial::zero(ring); ring.nvars()];
        for (name, img) in images {
            crate::polycore::check_same_ring(img.ring(), ring)?;
            all[ring.var_index(name)?] = img;
        }
        Ok(Derivation {
            ring: ring.clone(),
            images: all,
        })
    }

    /// Like [`Derivation::from_images`], with images written in the text grammar.
    pub fn parse<'a, I>(ring: &Arc<Ring>, images: I) -> Result<Self, DerivationError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let parsed = images
            .into_iter()
            .map(|(v, text)| {
                parse_polynomial(text, ring)
                    .map(|p| (v, p))
                    .map_err(|source| DerivationError::Parse {
                        var: v.to_string(),
                        source,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(ring, parsed)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![Polynomial::zero(ring); ring.nvars()],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &Polynomial {
        &self.images[index]
    }

    /// `sum_v d(v) * df/dv`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, DerivationError> {
        crate::polycore::check_same_ring(f.ring(), &self.ring)?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in f.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 || self.images[i].is_zero() {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[i] -= 1;
                let cofactor = crate::polycore::Monomial::new(exps);
                let scale = c * Rational::from_integer(e.into());
                for (mm, cc) in self.images[i].terms() {
                    out.add_term(mm.mul(&cofactor), cc * &scale);
                }
            }
        }
        out
    }

    pub fn apply_iter(&self, f: &Polynomial, k: u32) -> Result<Polynomial, DerivationError> {
        crate::polycore::check_same_ring(f.ring(), &self.ring)?;
        let mut g = f.clone();
        for _ in 0..k {
            if g.is_zero() {
                break;
            }
            g = self.apply_unchecked(&g);
        }
        Ok(g)
    }

    /// Smallest `n` with `d^n(f) == 0`, searching up to `cap`.
    pub fn nilpotency_index(&self, f: &Polynomial, cap: u32) -> Result<u32, DerivationError> {
        Ok(self.iterates(f, cap)?.len() as u32)
    }

    /// `[f, d(f), d^2(f), ...]` up to the last nonzero iterate.
    fn iterates(&self, f: &Polynomial, cap: u32) -> Result<Vec<Polynomial>, DerivationError> {
        if cap == 0 {
            return Err(DerivationError::InvalidCap);
        }
        crate::polycore::check_same_ring(f.ring(), &self.ring)?;
        let mut out = Vec::new();
        let mut g = f.clone();
        while !g.is_zero() {
            if out.len() as u32 >= cap {
                return Err(DerivationError::ExceededCap { cap });
            }
            let next = self.apply_unchecked(&g);
            out.push(g);
            g = next;
        }
        Ok(out)
    }

    /// Nilpotency index of each ring variable, `None` where the cap ran out.
    pub fn nilpotency_indices(&self, cap: u32) -> Vec<Option<u32>> {
        self.ring
            .generators()
            .iter()
            .map(|v| self.nilpotency_index(v, cap).ok())
            .collect()
    }

    /// Checks local nilpotency on the ring variables only, which suffices for
    /// a derivation: the elements on which it is locally nilpotent form a
    /// subalgebra. `false` may mean the budget `cap` was too small.
    pub fn is_locally_nilpotent(&self, cap: u32) -> bool {
        cap >= 1 && self.nilpotency_indices(cap).iter().all(Option::is_some)
    }

    /// The coefficients `d^k(f)/k!` of the exponential, `k = 0, 1, ...`.
    pub fn exponential_coefficients(&self, f: &Polynomial, cap: u32) -> Result<Vec<Polynomial>, DerivationError> {
        Ok(self
            .iterates(f, cap)?
            .into_iter()
            .enumerate()
            .map(|(k, g)| g.scale(&factorial(k as u32).recip()))
            .collect())
    }

    /// `mu_param(f)` in this ring extended by the variable `param`.
    pub fn exponential(&self, f: &Polynomial, param: &str) -> Result<Polynomial, DerivationError> {
        self.exponential_with_cap(f, param, DEFAULT_NILPOTENCY_CAP)
    }

    pub fn exponential_with_cap(&self, f: &Polynomial, param: &str, cap: u32) -> Result<Polynomial, DerivationError> {
        let ext = self.ring.extended(param)?;
        let n = self.ring.nvars();
        let index_map: Vec<usize> = (0..n).collect();
        let r = Polynomial::var(&ext, n);
        let mut out = Polynomial::zero(&ext);
        let mut r_pow = Polynomial::one(&ext);
        for coeff in self.exponential_coefficients(f, cap)? {
            out = &out + &(&coeff.embed(&ext, &index_map) * &r_pow);
            r_pow = &r_pow * &r;
        }
        Ok(out)
    }

    /// `mu_r(f)` with the parameter replaced by a Laurent element.
    pub fn exponential_at(
        &self,
        f: &Polynomial,
        value: &LaurentElement,
        cap: u32,
    ) -> Result<LaurentElement, DerivationError> {
        let var = value.var_index();
        let mut acc = LaurentElement::from_polynomial(Polynomial::zero(&self.ring), var);
        let mut power = LaurentElement::from_polynomial(Polynomial::one(&self.ring), var);
        for coeff in self.exponential_coefficients(f, cap)? {
            let term = LaurentElement::from_polynomial(coeff, var).try_mul(&power)?;
            acc = acc.try_add(&term)?;
            power = power.try_mul(value)?;
        }
        Ok(acc)
    }

    /// Flows `p` by parameter `a`: coordinate `v` becomes `mu_a(v)(p)`.
    pub fn orbit_point(&self, a: &Rational, p: &Point) -> Result<Point, DerivationError> {
        crate::polycore::check_same_ring(p.ring(), &self.ring)?;
        let coords = self
            .ring
            .generators()
            .iter()
            .map(|v| {
                let mut total = Rational::zero();
                let mut a_pow = Rational::one();
                for coeff in self.exponential_coefficients(v, DEFAULT_NILPOTENCY_CAP)? {
                    total += coeff.evaluate(p)? * &a_pow;
                    a_pow *= a;
                }
                Ok(total)
            })
            .collect::<Result<Vec<_>, DerivationError>>()?;
        Ok(Point::new(&self.ring, coords)?)
    }

    pub fn is_invariant(&self, f: &Polynomial) -> Result<bool, DerivationError> {
        Ok(self.apply(f)?.is_zero())
    }

    /// Extension to the localization at `l`'s denominator variable, by the
    /// quotient rule.
    pub fn apply_laurent(&self, l: &LaurentElement) -> Result<LaurentElement, DerivationError> {
        crate::polycore::check_same_ring(l.numerator().ring(), &self.ring)?;
        let var = l.var_index();
        let k = l.power();
        let dn = self.apply_unchecked(l.numerator());
        let dvar = &self.images[var];
        if k == 0 || dvar.is_zero() {
            return Ok(LaurentElement::normalized(dn, var, k));
        }
        // d(n / y^k) = (y*d(n) - k*n*d(y)) / y^(k+1)
        let y = Polynomial::var(&self.ring, var);
        let kk = Rational::from_integer(k.into());
        let numer = &(&y * &dn) - &(&l.numerator().scale(&kk) * dvar);
        Ok(LaurentElement::normalized(numer, var, k + 1))
    }

    /// Whether `d_tgt(m(v)) == m(d_src(v))` on every source variable, which is
    /// equivalent to `d_tgt . m == m . d_src` on the whole ring.
    pub fn intertwines(m: &RingMap, d_src: &Derivation, d_tgt: &Derivation) -> Result<bool, DerivationError> {
        crate::polycore::check_same_ring(m.source(), &d_src.ring)?;
        crate::polycore::check_same_ring(m.target(), &d_tgt.ring)?;
        for (i, img) in m.images().iter().enumerate() {
            if d_tgt.apply_unchecked(img) != m.apply(&d_src.images[i])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `d` commutes with `d/d var`. The commutator is a derivation
    /// whose value on a variable `w` is `d(d(w))/d var`, so it is enough
    /// that no image depends on `var`.
    pub fn commutes_with_partial(&self, var: &str) -> Result<bool, DerivationError> {
        let index = self.ring.var_index(var)?;
        Ok(self.ring.generators().iter().zip(&self.images).all(|(w, img)| {
            let lhs = img.partial_derivative(index);
            let rhs = self.apply_unchecked(&w.partial_derivative(index));
            lhs == rhs
        }))
    }

    pub fn from_json(text: &str) -> Result<Self, DerivationError> {
        let file: DerivationFile = serde_json::from_str(text).map_err(|e| DerivationError::Json(e.to_string()))?;
        file.into_derivation()
    }

    pub fn to_json(&self) -> String {
        let file = DerivationFile {
            ring: RingSpec {
                vars: self.ring.vars().to_vec(),
                weights: self.ring.weights().map(<[u32]>::to_vec),
            },
            derivation: self
                .ring
                .vars()
                .iter()
                .zip(&self.images)
                .filter(|(_, img)| !img.is_zero())
                .map(|(v, img)| (v.clone(), print_canonical(img)))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

/// On-disk derivation description:
/// `{"ring": {"vars": [...], "weights": [...]}, "derivation": {"<var>": "<poly>", ...}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFile {
    pub ring: RingSpec,
    #[serde(default)]
    pub derivation: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

impl RingSpec {
    pub fn build(&self) -> Result<Arc<Ring>, PolyError> {
        match &self.weights {
            Some(w) => Ring::graded(self.vars.clone(), w.clone()),
            None => Ring::new(self.vars.clone()),
        }
    }
}

impl DerivationFile {
    pub fn into_derivation(self) -> Result<Derivation, DerivationError> {
        let ring = self.ring.build()?;
        Derivation::parse(&ring, self.derivation.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }
}

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use nilpotent_core::derivation::Derivation;
use nilpotent_core::polycore::{Monomial, Point, Ring};
use nilpotent_core::{parse_polynomial, Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;

pub fn big() -> Arc<Ring> {
    Ring::graded(["x", "s", "t", "u", "v"], vec![1, 3, 3, 3, 2]).unwrap()
}

pub fn d() -> Derivation {
    Derivation::parse(&big(), [("s", "x^3"), ("t", "s"), ("u", "t"), ("v", "x^2")]).unwrap()
}

pub fn p(ring: &Arc<Ring>, text: &str) -> Polynomial {
    parse_polynomial(text, ring).unwrap()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn arb_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=bound).prop_map(|(n, d)| rat(n, d))
}

/// Exponent vectors of total degree at most `max_deg`.
fn arb_exponents(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, nvars).prop_map(move |mut e| {
        while e.iter().sum::<u32>() > max_deg {
            let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
            e[i] /= 2;
        }
        e
    })
}

pub fn arb_poly(ring: Arc<Ring>, max_terms: usize, max_deg: u32, bound: i64) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((arb_exponents(n, max_deg), arb_rational(bound)), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(&ring, terms.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap()
    })
}

pub fn arb_point(ring: Arc<Ring>, bound: i64) -> impl Strategy<Value = Point> {
    prop::collection::vec(arb_rational(bound), ring.nvars()).prop_map(move |c| Point::new(&ring, c).unwrap())
}

/// Every exponent vector in `m` variables of total degree at most `bound`.
pub fn monomials_up_to(m: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=bound - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Brute-force relations: a basis of all `P` of degree at most `bound` in
/// `X1..Xm` with `P(images) == 0`, by exact Gaussian elimination.
pub fn brute_force_relations(images: &[Polynomial], presentation: &Arc<Ring>, bound: u32) -> Vec<Polynomial> {
    let columns = monomials_up_to(images.len(), bound);
    let values: Vec<Polynomial> = columns
        .iter()
        .map(|mono| {
            let target = images[0].ring();
            mono.exponents()
                .iter()
                .zip(images)
                .fold(Polynomial::one(target), |acc, (&e, g)| &acc * &g.pow(e))
        })
        .collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for v in &values {
        for (m, _) in v.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut a = vec![vec![Rational::zero(); columns.len()]; rows.len()];
    for (j, v) in values.iter().enumerate() {
        for (m, c) in v.terms() {
            a[rows[m]][j] = c.clone();
        }
    }
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..columns.len() {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = a[r][col].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..columns.len()).filter(|c| !pivots.contains(c));
    free.map(|fc| {
        let mut terms = vec![(columns[fc].clone(), Rational::from_integer(1.into()))];
        for (row, &pc) in pivots.iter().enumerate() {
            if !a[row][fc].is_zero() {
                terms.push((columns[pc].clone(), -a[row][fc].clone()));
            }
        }
        Polynomial::from_terms(presentation, terms).unwrap()
    })
    .collect()
}

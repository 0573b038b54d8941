//! Splitting a Witt vector into prime-supported parts plus a polynomial
//! part, with every component in Schmid normal form.

use std::collections::BTreeMap;

use super::{WittRing, WittVector};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::ratfunc::{pole_reduction_step, poly_reduction_step, prime_parts, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittDecomposition {
    /// One component per prime, in factor order; no all-zero components.
    pub deltas: Vec<(Poly, WittVector)>,
    /// Polynomial entries.
    pub mu: WittVector,
    /// `w` with `sum(deltas) +W mu = β -W (F(w) -W w)`.
    pub witness: WittVector,
}

impl WittDecomposition {
    pub fn components(&self) -> impl Iterator<Item = &WittVector> {
        self.deltas.iter().map(|(_, d)| d).chain(std::iter::once(&self.mu))
    }
}

/// Number of leading zero entries (the length for the zero vector).
pub fn leading_zeros(v: &WittVector) -> usize {
    v.entries().iter().take_while(|e| e.is_zero()).count()
}

/// Decomposes `β` as a Witt sum of components supported at single primes
/// and a polynomial component. Entries are fixed from the first onwards:
/// at step `j` the j-th entries are chosen so the running Witt sum matches
/// the target in positions `1..=j`, then normalized by shifts supported at
/// position `j`, which leave earlier positions untouched.
pub fn decompose(ring: &WittRing, beta: &WittVector) -> Result<WittDecomposition> {
    ring.check(beta)?;
    let f = ring.field().clone();
    let n = ring.len();
    let mut target = beta.clone();
    let mut witness = ring.zero();
    let mut deltas: BTreeMap<Poly, WittVector> = BTreeMap::new();
    let mut mu = ring.zero();
    for j in 0..n {
        // entries >= j of every component are still zero, so the j-th entry
        // of their Witt sum is the carry from lower positions
        let partial = ring.sum(deltas.values().chain(std::iter::once(&mu)))?;
        let rest = &target.entries()[j] - &partial.entries()[j];
        let (parts, poly) = prime_parts(&rest)?;
        for (prime, part) in parts {
            if part.is_zero() {
                continue;
            }
            deltas.entry(prime).or_insert_with(|| ring.zero()).entries[j] = part;
        }
        mu.entries[j] = RatFunc::from_poly(poly);

        let mut shifts: Vec<RatFunc> = Vec::new();
        for (prime, delta) in deltas.iter_mut() {
            while let Some(a) = pole_reduction_step(prime, &delta.entries[j]) {
                delta.entries[j] = &delta.entries[j] - &a.wp();
                shifts.push(a);
            }
        }
        while let Some(a) = mu.entries[j].as_poly().and_then(poly_reduction_step) {
            let a = RatFunc::from_poly(a);
            mu.entries[j] = &mu.entries[j] - &a.wp();
            shifts.push(a);
        }
        // subtracting a^p - a at position j equals adding ℘(-a) there
        for a in shifts {
            let shift = WittVector::single(&f, n, j, -&a);
            target = ring.as_shift(&target, &shift)?;
            witness = ring.add(&witness, &shift)?;
        }
    }
    let deltas: Vec<(Poly, WittVector)> = deltas.into_iter().filter(|(_, d)| !d.is_zero()).collect();
    let witness = ring.neg(&witness)?;
    let out = WittDecomposition { deltas, mu, witness };
    debug_assert_eq!(ring.sum(out.components()).ok(), ring.sub(beta, &ring.wp(&out.witness)?).ok());
    Ok(out)
}

/// Whether every entry of `mu` is a polynomial that is zero, a constant
/// outside ℘(F_q), or of degree prime to `p`.
pub fn is_normalized_mu(mu: &WittVector) -> bool {
    let f = mu.field();
    let p = f.p() as usize;
    mu.entries().iter().all(|e| match e.as_poly() {
        None => false,
        Some(poly) => match poly.degree() {
            None => true,
            Some(0) => !f.in_wp_image(poly.lead()),
            Some(d) => d % p != 0,
        },
    })
}

/// Behaviour of the infinite place in `F(z) -W z = μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InfinityData {
    /// leading zero entries
    pub s: usize,
    /// entries before the first nonconstant one
    pub t: usize,
    pub e: u64,
    pub f: u64,
    pub h: u64,
}

pub fn infinity_data(mu: &WittVector) -> Result<InfinityData> {
    if !is_normalized_mu(mu) {
        return Err(Error::Precondition(format!("infinity_data: {} is not a normalized polynomial Witt vector", mu)));
    }
    let n = mu.len();
    let p = mu.field().p() as u64;
    let s = leading_zeros(mu);
    let t = mu.entries().iter().position(|e| !e.is_constant()).unwrap_or(n);
    Ok(InfinityData {
        s,
        t,
        e: p.pow((n - t) as u32),
        f: p.pow((t - s) as u32),
        h: p.pow(s as u32),
    })
}

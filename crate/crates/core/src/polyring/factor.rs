//! Squarefree, distinct-degree and equal-degree (Cantor–Zassenhaus)
//! factorization over F_q.

use std::cell::Cell;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::fq::{Field, FqElem};

/// Seed for equal-degree splitting unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    /// Monic irreducible factors with multiplicities, sorted by
    /// `(degree, coefficients)`.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn recombine(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit), |acc, (p, e)| &acc * &p.pow(*e as u64))
    }

    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Irreducibility via the distinct-degree criterion: `P` of degree `n` is
/// irreducible iff `gcd(P, T^(q^i) - T) = 1` for `i <= n/2` and
/// `P | T^(q^n) - T`.
pub fn is_irreducible(p: &Poly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::Precondition("is_irreducible: zero polynomial".into()));
    }
    let n = p.degree().unwrap();
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = p.field();
    let q = f.q() as u64;
    let t = Poly::t(f);
    let mut h = t.clone();
    for i in 1..=n {
        h = h.pow_mod(q, p);
        if i <= n / 2 && !(&h - &t).gcd(p).is_one() {
            return Ok(false);
        }
    }
    Ok((&h - &t).rem(p).is_zero())
}

thread_local! {
    static SEED: Cell<u64> = const { Cell::new(DEFAULT_SEED) };
}

/// Seed used by [`factor`] on this thread.
pub fn current_seed() -> u64 {
    SEED.with(|s| s.get())
}

/// Runs `f` with [`factor`] seeded by `seed` on this thread. The factors
/// themselves do not depend on the seed; only the splitting path does.
pub fn with_seed<R>(seed: u64, f: impl FnOnce() -> R) -> R {
    let old = SEED.with(|s| s.replace(seed));
    struct Restore(u64);
    impl Drop for Restore {
        fn drop(&mut self) {
            SEED.with(|s| s.set(self.0));
        }
    }
    let _restore = Restore(old);
    f()
}

pub fn factor(a: &Poly) -> Result<Factorization> {
    factor_with_seed(a, current_seed())
}

pub fn factor_with_seed(a: &Poly, seed: u64) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::Precondition("factor: zero polynomial".into()));
    }
    let f = a.field();
    let unit = a.lead();
    let monic = a.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (sq, mult) in squarefree(&monic) {
        for (g, d) in distinct_degree(&sq) {
            let mut pieces = Vec::new();
            equal_degree(&g, d, &mut rng, &mut pieces);
            for piece in pieces {
                factors.push((piece, mult));
            }
        }
    }
    // merge duplicates (a prime can only appear once after squarefree
    // decomposition, but keep this robust)
    factors.sort();
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((last, le)) if *last == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    let out = Factorization { unit, factors: merged };
    debug_assert_eq!(out.recombine(f), *a);
    Ok(out)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with the
/// `g` squarefree, pairwise coprime and `prod g^i = a`.
fn squarefree(a: &Poly) -> Vec<(Poly, u32)> {
    let f = a.field();
    let p = f.p();
    let mut out = Vec::new();
    if a.is_constant() {
        return out;
    }
    let d = a.derivative();
    let mut c = a.gcd(&d);
    let mut w = a.div_exact(&c).unwrap();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if !z.is_one() {
            out.push((z, i));
        }
        w = y;
        c = c.div_exact(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        for (g, j) in squarefree(&root.monic()) {
            out.push((g, j * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree.
fn distinct_degree(a: &Poly) -> Vec<(Poly, usize)> {
    let f = a.field();
    let q = f.q() as u64;
    let t = Poly::t(f);
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = t.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = (&h - &t).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let n = rest.degree().unwrap();
        out.push((rest, n));
    }
    out
}

fn random_poly(f: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = f.q();
    let coeffs = (0..below).map(|_| FqElem(rng.gen_range(0..q) as u16)).collect();
    Poly::new(f, coeffs)
}

fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.monic());
        return;
    }
    let f = g.field();
    let q = BigUint::from(f.q());
    let qd = q.pow(d as u32);
    loop {
        let a = random_poly(f, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if f.p() == 2 {
            // trace map a + a^2 + ... + a^(2^(k-1)) with q^d = 2^k
            let k = f.degree() as usize * d;
            let mut acc = a.rem(g);
            let mut x = acc.clone();
            for _ in 1..k {
                x = x.mul_mod(&x, g);
                acc = &acc + &x;
            }
            acc
        } else {
            let e = (&qd - 1u32) / 2u32;
            &a.pow_mod_big(&e, g) - &Poly::one(f)
        };
        let h = b.gcd(g);
        if !h.is_one() && h.degree() != g.degree() {
            let other = g.div_exact(&h).unwrap();
            equal_degree(&h, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

/// All monic irreducibles of the given degree, in sorted order (desk scale).
pub fn monic_irreducibles(field: &Field, degree: usize) -> Vec<Poly> {
    let q = field.q() as u64;
    let count = q.pow(degree as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut t = idx;
        for _ in 0..degree {
            coeffs.push(FqElem((t % q) as u16));
            t /= q;
        }
        coeffs.push(FqElem::ONE);
        let p = Poly::new(field, coeffs);
        if is_irreducible(&p).unwrap() {
            out.push(p);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(fz: &Factorization) -> Vec<(String, u32)> {
        fz.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect()
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = Field::prime(3).unwrap();
        assert!(is_irreducible(&Poly::t(&f3)).unwrap());
        assert!(is_irreducible(&Poly::from_ints(&f3, &[1, 0, 1])).unwrap());
        let f5 = Field::prime(5).unwrap();
        assert!(!is_irreducible(&Poly::from_ints(&f5, &[-1, 0, 1])).unwrap());
        assert!(is_irreducible(&Poly::zero(&f5)).is_err());
    }

    #[test]
    fn factor_examples() {
        let f3 = Field::prime(3).unwrap();
        let fz = factor(&Poly::from_ints(&f3, &[1, 2, 1])).unwrap();
        assert_eq!(fz.unit, FqElem::ONE);
        assert_eq!(show(&fz), [("T+1".to_string(), 2)]);

        let fz = factor(&Poly::from_ints(&f3, &[0, 2, 2])).unwrap();
        assert_eq!(fz.unit, f3.from_int(2));
        assert_eq!(show(&fz), [("T".to_string(), 1), ("T+1".to_string(), 1)]);

        let f5 = Field::prime(5).unwrap();
        let fz = factor(&Poly::from_ints(&f5, &[0, -1, 0, 0, 0, 1])).unwrap();
        let names: Vec<String> = fz.factors.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(names, ["T", "T+1", "T+2", "T+3", "T+4"]);
        assert!(factor(&Poly::zero(&f5)).is_err());
    }

    #[test]
    fn inseparable_input() {
        // (T^3 + T + 1)^3 * T^2 over F_3 contains a p-th power part
        let f3 = Field::prime(3).unwrap();
        let a = Poly::from_ints(&f3, &[2, 1, 0, 1]).pow(3);
        let b = &a * &Poly::from_ints(&f3, &[0, 0, 1]);
        let fz = factor(&b).unwrap();
        assert_eq!(fz.recombine(&f3), b);
        assert!(fz.factors.iter().any(|(_, e)| *e == 3));
    }

    #[test]
    fn characteristic_two_extension() {
        let f4 = Field::from_q(4).unwrap();
        let t = Poly::t(&f4);
        let a = &t.pow(4) - &t; // product over F_4
        let fz = factor(&a).unwrap();
        assert_eq!(fz.factors.len(), 4);
        assert!(fz.factors.iter().all(|(p, e)| p.degree() == Some(1) && *e == 1));
    }

    #[test]
    fn seed_scope() {
        let f5 = Field::prime(5).unwrap();
        let a = Poly::from_ints(&f5, &[0, -1, 0, 0, 0, 1]);
        let base = factor(&a).unwrap();
        let other = with_seed(7, || {
            assert_eq!(current_seed(), 7);
            factor(&a).unwrap()
        });
        assert_eq!(current_seed(), DEFAULT_SEED);
        assert_eq!(base, other);
    }

    #[test]
    fn counts_of_irreducibles() {
        // necklace counts: q=2 -> 1,2,3; q=3 -> 3,8
        let f2 = Field::prime(2).unwrap();
        assert_eq!(monic_irreducibles(&f2, 2).len(), 1);
        assert_eq!(monic_irreducibles(&f2, 3).len(), 2);
        assert_eq!(monic_irreducibles(&f2, 4).len(), 3);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(monic_irreducibles(&f3, 1).len(), 3);
        assert_eq!(monic_irreducibles(&f3, 2).len(), 3);
        assert_eq!(monic_irreducibles(&f3, 3).len(), 8);
    }
}

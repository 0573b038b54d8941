//! Universal Witt addition and subtraction polynomials, built from the
//! ghost-component recursion over the integers.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Multivariate polynomial with integer coefficients; the key is the
/// exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly { terms: BTreeMap::from([(e, BigInt::one())]) }
    }

    pub fn constant(nvars: usize, c: BigInt) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> MPoly {
        let nvars = self.terms.keys().next().map_or(0, |e| e.len());
        let mut base = self.clone();
        let mut acc = MPoly::constant(nvars, BigInt::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient by `d`; `None` if some
    /// coefficient is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<MPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(MPoly { terms })
    }

    pub fn eval(&self, vals: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(vals)
                    .filter(|(k, _)| **k > 0)
                    .fold(c.clone(), |acc, (k, v)| acc * Pow::pow(v, *k))
            })
            .sum()
    }
}

/// `x_1^{p^{m-1}} + p x_2^{p^{m-2}} + ... + p^{m-1} x_m` for each `m <= n`,
/// over integers.
pub fn ghost(p: u32, x: &[BigInt]) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    (1..=x.len())
        .map(|m| {
            (1..=m)
                .map(|i| Pow::pow(&pb, (i - 1) as u32) * Pow::pow(&x[i - 1], p.pow((m - i) as u32)))
                .sum()
        })
        .collect()
}

/// Inverse of [`ghost`]; fails if the given ghost vector is not the image of
/// an integer Witt vector.
pub fn unghost(p: u32, g: &[BigInt]) -> Result<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let mut x: Vec<BigInt> = Vec::with_capacity(g.len());
    for m in 1..=g.len() {
        let partial: BigInt = (1..m)
            .map(|i| Pow::pow(&pb, (i - 1) as u32) * Pow::pow(&x[i - 1], p.pow((m - i) as u32)))
            .sum();
        let rest = &g[m - 1] - partial;
        let d = Pow::pow(&pb, (m - 1) as u32);
        let (q, r) = rest.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Precondition(format!("ghost vector is not integral at position {}", m)));
        }
        x.push(q);
    }
    Ok(x)
}

/// A polynomial with coefficients reduced mod p, arranged for nested Horner
/// evaluation: `sum_e x_var^e * child_e`.
#[derive(Debug, Clone)]
pub(crate) enum Horner {
    Const(u32),
    Branch { var: usize, children: Vec<(u32, Horner)> },
}

impl Horner {
    /// Terms are `(coeff, exponent vector)`; variables are split on in the
    /// given order, starting at `pos`.
    fn build(terms: &[(u32, &[u32])], order: &[usize], pos: usize) -> Horner {
        let mut pos = pos;
        while pos < order.len() && terms.iter().all(|(_, e)| e[order[pos]] == 0) {
            pos += 1;
        }
        if pos >= order.len() {
            let c = terms.iter().map(|(c, _)| c).sum();
            return Horner::Const(c);
        }
        let var = order[pos];
        let mut groups: BTreeMap<u32, Vec<(u32, &[u32])>> = BTreeMap::new();
        for &(c, e) in terms {
            groups.entry(e[var]).or_default().push((c, e));
        }
        let children = groups.into_iter().map(|(k, g)| (k, Horner::build(&g, order, pos + 1))).collect();
        Horner::Branch { var, children }
    }
}

/// `S_1..S_n` (sum) and `D_1..D_n` (difference) in variables
/// `x_1..x_n, y_1..y_n` (indices `0..n` and `n..2n`).
#[derive(Debug)]
pub struct UniversalWittPolys {
    pub p: u32,
    pub n: usize,
    pub sum: Vec<MPoly>,
    pub diff: Vec<MPoly>,
    pub(crate) sum_mod_p: Vec<Horner>,
    pub(crate) diff_mod_p: Vec<Horner>,
}

fn ghost_poly(p: u32, n: usize, offset: usize, m: usize) -> MPoly {
    let pb = BigInt::from(p);
    (1..=m).fold(MPoly::zero(), |acc, i| {
        let v = MPoly::var(2 * n, offset + i - 1).pow(p.pow((m - i) as u32) as u64);
        acc.add(&v.scale(&Pow::pow(&pb, (i - 1) as u32)))
    })
}

/// Solves `ghost_m(W) = target_m` for `W_1..W_n` as polynomials.
fn solve_ghost(p: u32, n: usize, targets: &[MPoly]) -> Result<Vec<MPoly>> {
    let pb = BigInt::from(p);
    let mut out: Vec<MPoly> = Vec::with_capacity(n);
    for m in 1..=n {
        let mut rest = targets[m - 1].clone();
        for i in 1..m {
            let term = out[i - 1].pow(p.pow((m - i) as u32) as u64).scale(&-Pow::pow(&pb, (i - 1) as u32));
            rest = rest.add(&term);
        }
        let d = Pow::pow(&pb, (m - 1) as u32);
        let w = rest.div_exact(&d).ok_or_else(|| {
            Error::Invariant(format!("universal Witt polynomial {} for p = {} is not integral", m, p))
        })?;
        out.push(w);
    }
    Ok(out)
}

fn reduce_mod_p(p: u32, poly: &MPoly) -> Horner {
    let pb = BigInt::from(p);
    let terms: Vec<(u32, &[u32])> = poly
        .terms()
        .filter_map(|(e, c)| {
            let r = c.mod_floor(&pb);
            if r.is_zero() {
                return None;
            }
            Some((r.try_into().expect("residue fits"), e.as_slice()))
        })
        .collect();
    if terms.is_empty() {
        return Horner::Const(0);
    }
    // heaviest variables outermost: few distinct exponents there, and the
    // many low-weight monomials end up in cheap inner sums
    let n = terms[0].1.len() / 2;
    let order: Vec<usize> = (0..n).rev().flat_map(|i| [i, i + n]).collect();
    Horner::build(&terms, &order, 0)
}

impl UniversalWittPolys {
    pub fn build(p: u32, n: usize) -> Result<UniversalWittPolys> {
        if n == 0 {
            return Err(Error::Precondition("Witt length must be at least 1".into()));
        }
        let sums: Vec<MPoly> = (1..=n).map(|m| ghost_poly(p, n, 0, m).add(&ghost_poly(p, n, n, m))).collect();
        let diffs: Vec<MPoly> = (1..=n)
            .map(|m| ghost_poly(p, n, 0, m).add(&ghost_poly(p, n, n, m).scale(&BigInt::from(-1))))
            .collect();
        let sum = solve_ghost(p, n, &sums)?;
        let diff = solve_ghost(p, n, &diffs)?;
        let sum_mod_p = sum.iter().map(|s| reduce_mod_p(p, s)).collect();
        let diff_mod_p = diff.iter().map(|s| reduce_mod_p(p, s)).collect();
        Ok(UniversalWittPolys { p, n, sum, diff, sum_mod_p, diff_mod_p })
    }

    /// Checks `ghost(S(x, y)) = ghost(x) + ghost(y)` and the same for `D` on
    /// the given integer vectors.
    pub fn check_ghost_identity(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let vals: Vec<BigInt> = x.iter().chain(y).cloned().collect();
        let s: Vec<BigInt> = self.sum.iter().map(|q| q.eval(&vals)).collect();
        let d: Vec<BigInt> = self.diff.iter().map(|q| q.eval(&vals)).collect();
        let (gx, gy) = (ghost(self.p, x), ghost(self.p, y));
        let (gs, gd) = (ghost(self.p, &s), ghost(self.p, &d));
        (0..self.n).all(|m| gs[m] == &gx[m] + &gy[m] && gd[m] == &gx[m] - &gy[m])
    }

    /// Largest absolute coefficient, for diagnostics.
    pub fn max_coefficient(&self) -> BigInt {
        self.sum
            .iter()
            .chain(&self.diff)
            .flat_map(|q| q.terms().map(|(_, c)| c.abs()))
            .max()
            .unwrap_or_default()
    }
}

type Cache = Mutex<HashMap<(u32, usize), Arc<UniversalWittPolys>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized universal polynomials for `(p, n)`.
pub fn universal(p: u32, n: usize) -> Result<Arc<UniversalWittPolys>> {
    if let Some(u) = cache().lock().unwrap().get(&(p, n)) {
        return Ok(u.clone());
    }
    // built outside the lock; a racing builder produces an identical table
    let built = Arc::new(UniversalWittPolys::build(p, n)?);
    let mut guard = cache().lock().unwrap();
    Ok(guard.entry((p, n)).or_insert(built).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn length_two_sums() {
        // p=2: S_2 = x_2 + y_2 - x_1 y_1 ... written with variables x1,x2,y1,y2
        let u = UniversalWittPolys::build(2, 2).unwrap();
        let mut want = MPoly::var(4, 1).add(&MPoly::var(4, 3));
        want = want.add(&MPoly::var(4, 0).mul(&MPoly::var(4, 2)).scale(&BigInt::from(-1)));
        assert_eq!(u.sum[1], want);

        let u = UniversalWittPolys::build(3, 2).unwrap();
        let (x1, y1) = (MPoly::var(4, 0), MPoly::var(4, 2));
        let cross = x1.pow(2).mul(&y1).add(&x1.mul(&y1.pow(2)));
        let want = MPoly::var(4, 1).add(&MPoly::var(4, 3)).add(&cross.scale(&BigInt::from(-1)));
        assert_eq!(u.sum[1], want);

        let u = UniversalWittPolys::build(5, 1).unwrap();
        assert_eq!(u.sum[0], MPoly::var(2, 0).add(&MPoly::var(2, 1)));
    }

    #[test]
    fn ghost_examples() {
        assert_eq!(ghost(3, &big(&[1, 1])), big(&[1, 4]));
        assert_eq!(ghost(2, &big(&[0, 0, 0])), big(&[0, 0, 0]));
        let x = big(&[5, -3, 7]);
        assert_eq!(unghost(3, &ghost(3, &x)).unwrap(), x);
        assert!(unghost(3, &big(&[1, 2])).is_err());
    }

    #[test]
    fn ghost_identity_small() {
        for p in [2, 3] {
            let u = UniversalWittPolys::build(p, 3).unwrap();
            assert!(u.check_ghost_identity(&big(&[2, -1, 3]), &big(&[1, 4, -2])));
        }
    }

    #[test]
    fn memoized() {
        let a = universal(2, 3).unwrap();
        let b = universal(2, 3).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}

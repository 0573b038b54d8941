//! Rational functions over F_q, partial fractions, and Artin–Schreier
//! normal forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::fq::{Field, FqElem};
use crate::polyring::{factor, Poly};

/// An element of `F_q(T)` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::Precondition("division by zero in F_q(T)".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc { den: Poly::one(num.field()), num };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead = den.lead();
        if lead == FqElem::ONE {
            return RatFunc { num, den };
        }
        let inv = num.field().inv(lead).unwrap();
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let one = Poly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: FqElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(field, c))
    }

    pub fn t(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::t(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_poly() && self.num.is_constant()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<FqElem> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `x^p`; cheap because Frobenius preserves lowest terms.
    pub fn frobenius(&self) -> RatFunc {
        RatFunc { num: self.num.frobenius(), den: self.den.frobenius() }
    }

    /// `x^p - x`.
    pub fn wp(&self) -> RatFunc {
        &self.frobenius() - self
    }

    /// Degree of numerator minus degree of denominator (zero maps to `i64::MIN`).
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.num.deg() - self.den.deg()
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let g = self.den.gcd(&rhs.den);
        let a = rhs.den.div_exact(&g).unwrap();
        let b = self.den.div_exact(&g).unwrap();
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RatFunc::reduce(num, &self.den * &a)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cross-cancel first to keep the products small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lead = den.lead();
        let inv = num.field().inv(lead).unwrap();
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains('+')
}

impl fmt::Display for RatFunc {
    /// `num/den` with parentheses around multi-term parts, e.g. `(T+1)/T^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let n = if needs_parens(&n) { format!("({})", n) } else { n };
        let d = if needs_parens(&d) || d.contains('*') { format!("({})", d) } else { d };
        write!(f, "{}/{}", n, d)
    }
}

/// One summand `Q / P^e` of a partial-fraction decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfTerm {
    pub prime: Poly,
    pub exponent: u32,
    pub numerator: Poly,
}

impl PfTerm {
    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::reduce(self.numerator.clone(), self.prime.pow(self.exponent as u64))
    }
}

/// `sum Q_i / P_i^{e_i} + polypart`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialFractionForm {
    pub terms: Vec<PfTerm>,
    pub polypart: Poly,
}

impl PartialFractionForm {
    pub fn recombine(&self) -> RatFunc {
        self.terms
            .iter()
            .fold(RatFunc::from_poly(self.polypart.clone()), |acc, t| &acc + &t.to_ratfunc())
    }

    /// The Artin–Schreier shape constraints: `gcd(P_i, Q_i) = 1`, `p ∤ e_i`,
    /// and the polynomial part constant or of degree prime to `p`; a constant
    /// polynomial part must lie outside ℘(F_q) unless zero.
    pub fn is_normalized(&self) -> bool {
        let f = self.polypart.field();
        let p = f.p() as u64;
        let terms_ok = self.terms.iter().all(|t| {
            t.exponent > 0
                && !(t.exponent as u64).is_multiple_of(p)
                && !t.numerator.is_zero()
                && t.numerator.gcd(&t.prime).is_one()
                && t.numerator.deg() < t.prime.deg() * t.exponent as i64
        });
        let poly_ok = match self.polypart.degree() {
            None => true,
            Some(0) => !f.in_wp_image(self.polypart.lead()),
            Some(d) => !(d as u64).is_multiple_of(p),
        };
        terms_ok && poly_ok
    }
}

/// `(P, part)` pairs with each part a proper fraction whose denominator is a
/// power of `P`, plus the polynomial part. Primes come out in factor order.
pub fn prime_parts(a: &RatFunc) -> Result<(Vec<(Poly, RatFunc)>, Poly)> {
    let (poly, rem) = a.num.divrem(&a.den);
    if a.den.is_one() {
        return Ok((Vec::new(), poly));
    }
    let fz = factor(&a.den)?;
    let mut parts = Vec::with_capacity(fz.factors.len());
    for (p, e) in &fz.factors {
        let pe = p.pow(*e as u64);
        let cofactor = a.den.div_exact(&pe).unwrap();
        let inv = cofactor
            .inv_mod(&pe)
            .ok_or_else(|| Error::Invariant("cofactor not invertible modulo prime power".into()))?;
        let q = rem.mul_mod(&inv, &pe);
        parts.push((p.clone(), RatFunc::reduce(q, pe)));
    }
    Ok((parts, poly))
}

/// Exact partial fractions, terms in factor order of the denominator.
pub fn partial_fractions(a: &RatFunc) -> Result<PartialFractionForm> {
    let (parts, polypart) = prime_parts(a)?;
    let terms = parts
        .into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(p, r)| term_from_part(&p, &r))
        .collect();
    Ok(PartialFractionForm { terms, polypart })
}

fn term_from_part(p: &Poly, part: &RatFunc) -> PfTerm {
    let d = p.degree().unwrap() as u32;
    let e = part.den.degree().unwrap() as u32 / d;
    PfTerm { prime: p.clone(), exponent: e, numerator: part.num.clone() }
}

/// P-adic digits `c_1..c_e` of a proper `Q/P^e`, so that
/// `Q/P^e = sum_k c_k / P^k` with `deg c_k < deg P`. Index 0 is unused.
pub fn padic_digits(p: &Poly, part: &RatFunc) -> Vec<Poly> {
    let f = p.field();
    let d = p.degree().unwrap();
    let e = part.den.degree().unwrap_or(0) / d;
    let mut digits = vec![Poly::zero(f); e + 1];
    let mut q = part.num.clone();
    // Q = c_e + c_{e-1} P + ... + c_1 P^{e-1}
    for k in (1..=e).rev() {
        let (quot, r) = q.divrem(p);
        digits[k] = r;
        q = quot;
    }
    debug_assert!(q.is_zero());
    digits
}

/// p-th root in the residue field `F_q[T]/P` (which is perfect).
pub fn pth_root_mod(c: &Poly, p: &Poly) -> Poly {
    let f = p.field();
    let d = p.degree().unwrap() as u32;
    let e = BigUint::from(f.p()).pow(f.degree() * d - 1);
    c.pow_mod_big(&e, p)
}

/// One step of pole-order reduction: for a proper P-part whose top pole order
/// `e` is divisible by `p`, the element `a = c'/P^(e/p)` such that
/// `part - (a^p - a)` has smaller pole order. `None` if `p ∤ e` or part is 0.
pub fn pole_reduction_step(prime: &Poly, part: &RatFunc) -> Option<RatFunc> {
    if part.is_zero() {
        return None;
    }
    let f = prime.field();
    let p = f.p() as usize;
    let d = prime.degree().unwrap();
    let e = part.den.degree().unwrap() / d;
    if !e.is_multiple_of(p) {
        return None;
    }
    let lead = part.num.rem(prime);
    let root = pth_root_mod(&lead, prime);
    Some(RatFunc::reduce(root, prime.pow((e / p) as u64)))
}

/// One step of degree reduction for a polynomial: if `deg f = p m > 0`,
/// returns `a = c^(1/p) T^m`; if `f` is a constant in ℘(F_q), returns a
/// constant preimage. Otherwise `None`.
pub fn poly_reduction_step(poly: &Poly) -> Option<Poly> {
    let f = poly.field();
    let p = f.p() as usize;
    match poly.degree() {
        None => None,
        Some(0) => {
            let x = f.wp_preimage(poly.lead())?;
            Some(Poly::constant(f, x))
        }
        Some(d) if d % p == 0 => Some(Poly::monomial(f, f.pth_root(poly.lead()), d / p)),
        Some(_) => None,
    }
}

/// Witness `w` with `normalized = input - (w^p - w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationWitness {
    pub w: RatFunc,
}

/// Normalizes a P-part so its pole order is prime to `p`; returns the new
/// part and the accumulated shift.
pub fn normalize_part(prime: &Poly, part: &RatFunc) -> (RatFunc, RatFunc) {
    let mut cur = part.clone();
    let mut w = RatFunc::zero(prime.field());
    while let Some(a) = pole_reduction_step(prime, &cur) {
        cur = &cur - &a.wp();
        w = &w + &a;
    }
    (cur, w)
}

pub fn normalize_polypart(poly: &Poly) -> (Poly, Poly) {
    let f = poly.field();
    let mut cur = poly.clone();
    let mut w = Poly::zero(f);
    while let Some(a) = poly_reduction_step(&cur) {
        let shift = &a.frobenius() - &a;
        cur = &cur - &shift;
        w = &w + &a;
    }
    (cur, w)
}

/// Artin–Schreier normalization: `input - (w^p - w)` in partial-fraction form
/// with every pole order prime to `p` and the polynomial part either a
/// constant outside ℘(F_q) (or zero) or of degree prime to `p`.
pub fn as_normalize(a: &RatFunc) -> Result<(PartialFractionForm, NormalizationWitness)> {
    let f = a.field();
    let (parts, poly) = prime_parts(a)?;
    let mut w = RatFunc::zero(f);
    let mut terms = Vec::new();
    for (p, part) in parts {
        let (normal, shift) = normalize_part(&p, &part);
        w = &w + &shift;
        if !normal.is_zero() {
            terms.push(term_from_part(&p, &normal));
        }
    }
    let (polypart, shift) = normalize_polypart(&poly);
    w = &w + &RatFunc::from_poly(shift);
    let form = PartialFractionForm { terms, polypart };
    debug_assert!(form.is_normalized());
    Ok((form, NormalizationWitness { w }))
}

/// Coordinate of a canonical Artin–Schreier class representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum ClassCoord {
    /// digit at pole order `k` of prime `P`, coefficient `i` of the digit,
    /// F_p-coordinate `j`
    Finite(Poly, usize, usize, usize),
    /// coefficient of `T^k`, F_p-coordinate `j`
    Poly(usize, usize),
    Trace,
}

/// Fully reduced representative of `a` modulo ℘(k): no P-adic digit and no
/// polynomial monomial at an order divisible by `p`, and the constant term a
/// multiple of a fixed trace-one element. Reduction is F_p-linear, so the
/// coordinates below give the class in `k/℘(k)` as an F_p-vector.
fn class_coordinates(a: &RatFunc) -> Result<BTreeMap<ClassCoord, u32>> {
    let f = a.field().clone();
    let p = f.p() as usize;
    let (parts, poly) = prime_parts(a)?;
    let mut out = BTreeMap::new();
    let mut push = |key: ClassCoord, v: u32| {
        if v != 0 {
            out.insert(key, v);
        }
    };
    for (prime, mut part) in parts {
        let d = prime.degree().unwrap();
        let mut k = part.den.degree().unwrap_or(0) / d;
        while k > 0 {
            let digits = padic_digits(&prime, &part);
            if k >= digits.len() {
                k = digits.len() - 1;
                continue;
            }
            if k % p == 0 && !digits[k].is_zero() {
                let root = pth_root_mod(&digits[k], &prime);
                let a = RatFunc::reduce(root, prime.pow((k / p) as u64));
                part = &part - &a.wp();
                continue;
            }
            k -= 1;
        }
        for (k, c) in padic_digits(&prime, &part).iter().enumerate().skip(1) {
            for (i, &ci) in c.coeffs().iter().enumerate() {
                for (j, &x) in f.coeffs(ci).iter().enumerate() {
                    push(ClassCoord::Finite(prime.clone(), k, i, j), x);
                }
            }
        }
    }
    let mut poly = poly;
    let mut k = poly.degree().unwrap_or(0);
    while k > 0 {
        let c = poly.coeff(k);
        if k % p == 0 && !c.is_zero() {
            let a = Poly::monomial(&f, f.pth_root(c), k / p);
            poly = &poly - &(&a.frobenius() - &a);
            continue;
        }
        k -= 1;
    }
    for (k, &c) in poly.coeffs().iter().enumerate().skip(1) {
        for (j, &x) in f.coeffs(c).iter().enumerate() {
            push(ClassCoord::Poly(k, j), x);
        }
    }
    push(ClassCoord::Trace, f.trace(poly.constant_term()));
    Ok(out)
}

/// Whether `a ∈ ℘(F_q(T))`.
pub fn in_wp_image(a: &RatFunc) -> Result<bool> {
    Ok(class_coordinates(a)?.is_empty())
}

/// F_p-dimension of the span of the given classes in `F_q(T)/℘(F_q(T))`.
pub fn as_class_rank(classes: &[RatFunc]) -> Result<usize> {
    if classes.is_empty() {
        return Ok(0);
    }
    let p = classes[0].field().p() as i64;
    let coords: Vec<BTreeMap<ClassCoord, u32>> =
        classes.iter().map(class_coordinates).collect::<Result<_>>()?;
    let mut keys: Vec<&ClassCoord> = coords.iter().flat_map(|c| c.keys()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<i64>> = coords
        .iter()
        .map(|c| keys.iter().map(|k| c.get(*k).copied().unwrap_or(0) as i64).collect())
        .collect();
    Ok(crate::linalg::rank_mod_p(rows, p))
}

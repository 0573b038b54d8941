use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::fq::{Field, FqElem};

/// A polynomial in `F_q[T]`, coefficients lowest degree first.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        Poly::new(field, ints.iter().map(|&n| field.from_int(n)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &Field, c: FqElem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `T`.
    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, FqElem::ONE, 1)
    }

    pub fn monomial(field: &Field, c: FqElem, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FqElem::ONE
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lead(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn constant_term(&self) -> FqElem {
        self.coeff(0)
    }

    pub fn scale(&self, c: FqElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Returns the monic associate, or zero for zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn add_ref(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub_ref(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, coeffs)
    }

    pub fn neg_ref(&self) -> Poly {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        if f.degree() == 1 {
            let p = f.p() as u64;
            let mut acc = vec![0u64; n];
            for (i, a) in self.coeffs.iter().enumerate() {
                let a = a.index() as u64;
                if a == 0 {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += a * b.index() as u64;
                }
            }
            let coeffs = acc.into_iter().map(|v| f.from_int((v % p) as i64)).collect();
            return Poly::new(f, coeffs);
        }
        let mut coeffs = vec![FqElem::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, coeffs)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let f = &self.field;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let dd = divisor.coeffs.len() - 1;
        let inv = f.inv(divisor.lead()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let m = f.mul(c, inv);
            quot[k - dd] = m;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(m, dc));
            }
        }
        rem.truncate(dd);
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match f.inv(r0.lead()) {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (&self.div_exact(&g).unwrap() * other).monic()
    }

    /// Inverse of `self` modulo `m`, if the two are coprime.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, e: u64, m: &Poly) -> Poly {
        self.pow_mod_big(&BigUint::from(e), m)
    }

    pub fn pow_mod_big(&self, e: &BigUint, m: &Poly) -> Poly {
        let base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// For a polynomial in `T^p` returns `g` with `g^p = self`; `None` if some
    /// exponent is not a multiple of `p`.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(f.pth_root(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(f, out))
    }

    /// Entrywise p-th power of coefficients composed with `T ↦ T^p`, i.e. `self^p`.
    pub fn frobenius(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FqElem::ZERO; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = f.pow(c, p as u64);
        }
        Poly::new(f, coeffs)
    }

    /// Multiplicity of `p` in `self` and the cofactor (`self` nonzero, `p`
    /// nonconstant).
    pub fn valuation(&self, p: &Poly) -> (u32, Poly) {
        let mut v = 0;
        let mut rest = self.clone();
        while let Some(q) = rest.div_exact(p) {
            rest = q;
            v += 1;
        }
        (v, rest)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl fmt::Display for Poly {
    /// `T^2+2*T+1`; coefficients outside the prime field are parenthesised.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            let cs = f.fmt_elem(c);
            let cs = if f.is_prime_subfield(c) { cs } else { format!("({})", cs) };
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{}", i),
            };
            if i == 0 {
                write!(out, "{}", cs)?;
            } else if c == FqElem::ONE {
                write!(out, "{}", mono)?;
            } else {
                write!(out, "{}*{}", cs, mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let f = Field::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 1]);
        assert_eq!(a.to_string(), "T^2+2*T+1");
        let b = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(&b * &b, a);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(Poly::zero(&f).to_string(), "0");
        assert_eq!(Poly::from_ints(&f, &[0, 2]).to_string(), "2*T");
    }

    #[test]
    fn gcd_and_inverse() {
        let f = Field::prime(5).unwrap();
        let a = Poly::from_ints(&f, &[-1, 0, 1]); // T^2 - 1
        let b = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(a.gcd(&b), b);
        let c = Poly::from_ints(&f, &[2, 1]);
        let inv = c.inv_mod(&a).unwrap();
        assert!(inv.mul_mod(&c, &a).is_one());
        assert!(b.inv_mod(&a).is_none());
        let (g, s, t) = a.xgcd(&c);
        assert_eq!(&(&s * &a) + &(&t * &c), g);
    }

    #[test]
    fn ordering_is_degree_then_lex() {
        let f = Field::prime(3).unwrap();
        let mut v = [Poly::from_ints(&f, &[2, 1]),
            Poly::from_ints(&f, &[0, 1]),
            Poly::from_ints(&f, &[1, 0, 1]),
            Poly::from_ints(&f, &[1, 1])];
        v.sort();
        let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["T", "T+1", "T+2", "T^2+1"]);
    }

    #[test]
    fn pth_root_and_frobenius() {
        let f = Field::from_q(9).unwrap();
        let a = Poly::new(&f, vec![f.generator(), FqElem::ONE, f.from_int(2)]);
        let fa = a.frobenius();
        assert_eq!(fa, a.pow(3));
        assert_eq!(fa.pth_root().unwrap(), a);
        assert!(a.pth_root().is_none());
    }
}

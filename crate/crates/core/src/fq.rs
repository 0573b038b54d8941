//! Finite fields F_q, q = p^f, with table-driven arithmetic.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! where `c_0 + c_1 u + ... + c_{f-1} u^{f-1}` is its reduced representative
//! modulo the defining polynomial. The encoding is canonical, so equality of
//! elements is equality of indices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field size supported by the lookup tables.
pub const MAX_Q: u32 = 1024;

/// Default defining polynomials (low degree first, monic) for the non-prime
/// fields up to 128 elements.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 2, &[2, 7, 1]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q` as `p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut f = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p as u32, f))
}

/// Parameters of a finite field before its tables are built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    /// Monic irreducible polynomial over F_p of degree `f`, lowest
    /// coefficient first. Required iff `f > 1`.
    pub modulus: Option<Vec<u32>>,
    pub symbol: String,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Self {
        FieldSpec { p, f: 1, modulus: None, symbol: "u".into() }
    }

    /// `F_{p^f}` with the built-in default modulus.
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if f <= 1 {
            return Ok(Self::prime(p));
        }
        let modulus = DEFAULT_MODULI
            .iter()
            .find(|(pp, ff, _)| *pp == p && *ff == f)
            .map(|(_, _, m)| m.to_vec())
            .ok_or_else(|| {
                Error::InvalidField(format!(
                    "no default modulus for q = {}^{}; pass one explicitly",
                    p, f
                ))
            })?;
        Ok(FieldSpec { p, f, modulus: Some(modulus), symbol: "u".into() })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{} is not a prime power", q)))?;
        Self::new(p, f)
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let f = modulus.len().saturating_sub(1) as u32;
        if f <= 1 {
            return Self::prime(p);
        }
        FieldSpec { p, f, modulus: Some(modulus), symbol: "u".into() }
    }

    pub fn with_symbol(mut self, symbol: impl Into<String>) -> Self {
        self.symbol = symbol.into();
        self
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.f)
    }

    pub fn build(&self) -> Result<Field> {
        Field::new(self.clone())
    }
}

/// An element of F_q; meaningful only together with its [`Field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(pub(crate) u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    spec: FieldSpec,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    log: Vec<u32>,
    exp: Vec<u16>,
    primitive: FqElem,
}

/// A finite field. Cheap to clone; all clones share one set of tables.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

// Polynomial helpers over F_p on raw coefficient vectors, used only while
// building the tables.
fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv_lead % p;
        let shift = k - dm;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mc % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn pow_mod(mut b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u32;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn raw_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                cand.push((t % p as u64) as u32);
                t /= p as u64;
            }
            cand.push(1);
            if raw_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn from_q(q: u64) -> Result<Field> {
        FieldSpec::from_q(q)?.build()
    }

    pub fn new(spec: FieldSpec) -> Result<Field> {
        let p = spec.p;
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("p = {} is not prime", p)));
        }
        if spec.f == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let q64 = spec.q();
        if q64 > MAX_Q as u64 {
            return Err(Error::InvalidField(format!("q = {} exceeds the supported bound {}", q64, MAX_Q)));
        }
        let q = q64 as u32;
        let f = spec.f as usize;
        let modulus: Vec<u32> = if f == 1 {
            vec![0, 1]
        } else {
            let m = spec
                .modulus
                .clone()
                .ok_or_else(|| Error::InvalidField("extension field needs a modulus".into()))?;
            if m.len() != f + 1 || m[f] != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidField(format!(
                    "modulus must be monic of degree {} with coefficients in [0, {})",
                    f, p
                )));
            }
            if !raw_irreducible(&m, p) {
                return Err(Error::InvalidField("modulus is reducible over F_p".into()));
            }
            m
        };

        let to_vec = |idx: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(f);
            let mut t = idx;
            for _ in 0..f {
                v.push(t % p);
                t /= p;
            }
            v
        };
        let to_idx = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = Vec::new();
        let mut neg = vec![0u16; q as usize];
        for a in 0..q {
            let va = to_vec(a);
            let vn: Vec<u32> = va.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = to_idx(&vn) as u16;
        }
        if f > 1 {
            add = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let va = to_vec(a);
                for b in 0..q {
                    let vb = to_vec(b);
                    let s: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = to_idx(&s) as u16;
                }
            }
        }

        let raw_mul = |a: u32, b: u32| -> u32 {
            if f == 1 {
                return a * b % p;
            }
            let va = to_vec(a);
            let vb = to_vec(b);
            let mut prod = vec![0u32; 2 * f];
            for (i, x) in va.iter().enumerate() {
                for (j, y) in vb.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = raw_rem(&prod, &modulus, p);
            r.resize(f, 0);
            to_idx(&r)
        };

        // first primitive element in index order
        let order = q - 1;
        let mut log = vec![0u32; q as usize];
        let mut exp = vec![0u16; order.max(1) as usize];
        let mut primitive = None;
        for g in 1..q {
            let mut x = 1u32;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp[k as usize] = x as u16;
                x = raw_mul(x, g);
            }
            if ok && x == 1 {
                primitive = Some(g);
                break;
            }
        }
        let primitive = primitive
            .ok_or_else(|| Error::InvalidField("no primitive element found (modulus not irreducible?)".into()))?;
        for k in 0..order {
            log[exp[k as usize] as usize] = k;
        }

        Ok(Field(Arc::new(Inner {
            spec: FieldSpec { modulus: (f > 1).then(|| modulus.clone()), ..spec },
            q,
            modulus,
            add,
            neg,
            log,
            exp,
            primitive: FqElem(primitive as u16),
        })))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.0.spec.f
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn symbol(&self) -> &str {
        &self.0.spec.symbol
    }

    /// Defining polynomial over F_p, lowest coefficient first (`[0, 1]` for
    /// prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// A generator of F_q^*.
    pub fn primitive(&self) -> FqElem {
        self.0.primitive
    }

    /// The adjoined root `u` of the modulus. For a prime field the modulus is
    /// `x`, so this is 0.
    pub fn generator(&self) -> FqElem {
        if self.0.spec.f == 1 {
            // u is only meaningful for extension fields
            FqElem(0)
        } else {
            FqElem(self.0.spec.p as u16)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.q).map(|i| FqElem(i as u16))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.0.q).map(|i| FqElem(i as u16))
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.spec.p as i64) as u16)
    }

    /// Element with the given coefficients in the generator, lowest first.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        let p = self.p();
        if coeffs.len() > self.degree() as usize {
            return Err(Error::Parse("too many coefficients for this field".into()));
        }
        let idx = coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p);
        Ok(FqElem(idx as u16))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let p = self.p();
        let mut t = a.0 as u32;
        (0..self.degree())
            .map(|_| {
                let c = t % p;
                t /= p;
                c
            })
            .collect()
    }

    /// True iff `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: FqElem) -> bool {
        (a.0 as u32) < self.p()
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let inner = &*self.0;
        if inner.spec.f == 1 {
            let s = a.0 as u32 + b.0 as u32;
            let p = inner.spec.p;
            FqElem(if s >= p { s - p } else { s } as u16)
        } else {
            FqElem(inner.add[(a.0 as usize) * inner.q as usize + b.0 as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        FqElem(inner.exp[(if s >= order { s - order } else { s }) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        let l = inner.log[a.0 as usize];
        Some(FqElem(inner.exp[((order - l) % order) as usize]))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.0 == 0 {
            return FqElem(0);
        }
        let inner = &*self.0;
        let order = (inner.q - 1) as u64;
        let l = inner.log[a.0 as usize] as u64;
        FqElem(inner.exp[((l * (e % order)) % order) as usize])
    }

    /// Discrete log to the base [`Field::primitive`].
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// The unique `r` with `r^p = a`, computed as `a^(p^(f-1))`.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        let e = (self.p() as u64).pow(self.degree() - 1);
        self.pow(a, e)
    }

    /// Whether `a` is an `l`-th power in F_q^*, for a prime `l | q - 1`.
    pub fn is_lth_power(&self, a: FqElem, l: u32) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::Precondition("is_lth_power: a must be nonzero".into()));
        }
        if l < 2 || !is_prime(l as u64) {
            return Err(Error::Precondition(format!("is_lth_power: l = {} is not prime", l)));
        }
        let qm1 = self.q() - 1;
        if !qm1.is_multiple_of(l) {
            return Err(Error::Precondition(format!("is_lth_power: l = {} does not divide q - 1 = {}", l, qm1)));
        }
        Ok(self.pow(a, (qm1 / l) as u64) == FqElem::ONE)
    }

    /// Absolute trace to F_p, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: FqElem) -> u32 {
        let mut acc = FqElem::ZERO;
        let mut x = a;
        for _ in 0..self.degree() {
            acc = self.add(acc, x);
            x = self.pow(x, self.p() as u64);
        }
        debug_assert!(self.is_prime_subfield(acc));
        acc.0 as u32
    }

    /// Whether `a = x^p - x` for some `x` in F_q (trace criterion).
    pub fn in_wp_image(&self, a: FqElem) -> bool {
        self.trace(a) == 0
    }

    /// Some `x` with `x^p - x = a`, if one exists.
    pub fn wp_preimage(&self, a: FqElem) -> Option<FqElem> {
        if !self.in_wp_image(a) {
            return None;
        }
        let p = self.p() as u64;
        self.elements().find(|&x| self.sub(self.pow(x, p), x) == a)
    }

    /// The smallest-index element with nonzero trace; together with
    /// ℘(F_q) it spans F_q over F_p.
    pub fn trace_one_complement(&self) -> FqElem {
        self.elements()
            .find(|&x| self.trace(x) == 1)
            .expect("trace is surjective")
    }

    pub fn fmt_elem(&self, a: FqElem) -> String {
        if self.is_prime_subfield(a) {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let sym = self.symbol();
        let mut parts = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{}^{}", sym, i),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{}*{}", c, mono),
            });
        }
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Field {
        Field::new(FieldSpec::with_modulus(3, vec![2, 2, 1])).unwrap()
    }

    #[test]
    fn pth_root_examples() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.pth_root(f3.from_int(2)), f3.from_int(2));
        let f = f9();
        let u = f.generator();
        let r = f.pth_root(u);
        // 2u + 1
        assert_eq!(r, f.from_coeffs(&[1, 2]).unwrap());
        assert_eq!(f.pow(r, 3), u);
        assert_eq!(f.pth_root(FqElem::ZERO), FqElem::ZERO);
    }

    #[test]
    fn lth_power_examples() {
        let f5 = Field::prime(5).unwrap();
        assert!(f5.is_lth_power(f5.from_int(4), 2).unwrap());
        assert!(!f5.is_lth_power(f5.from_int(2), 2).unwrap());
        assert!(f5.is_lth_power(FqElem::ONE, 2).unwrap());
        assert!(f5.is_lth_power(FqElem::ZERO, 2).is_err());
        assert!(f5.is_lth_power(FqElem::ONE, 3).is_err());
    }

    #[test]
    fn wp_image_examples() {
        let f3 = Field::prime(3).unwrap();
        assert!(f3.in_wp_image(FqElem::ZERO));
        assert!(!f3.in_wp_image(FqElem::ONE));
        let f = f9();
        assert!(!f.in_wp_image(f.generator()));
        assert_eq!(f.trace(f.generator()), 1);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Field::prime(4).is_err());
        assert!(Field::new(FieldSpec::with_modulus(3, vec![1, 0, 1, 0])).is_err());
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert!(Field::new(FieldSpec::with_modulus(3, vec![2, 0, 1])).is_err());
        assert!(FieldSpec::from_q(6).is_err());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for &(p, f, _) in DEFAULT_MODULI {
            let field = FieldSpec::new(p, f).unwrap().build().unwrap();
            assert_eq!(field.q(), p.pow(f));
        }
    }

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = Field::from_q(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn formatting() {
        let f = f9();
        assert_eq!(f.fmt_elem(f.from_coeffs(&[1, 2]).unwrap()), "2*u+1");
        assert_eq!(f.fmt_elem(f.generator()), "u");
        assert_eq!(f.fmt_elem(f.from_int(2)), "2");
    }
}

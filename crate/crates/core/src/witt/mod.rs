//! Witt vectors of finite length over `F_q(T)`.

mod decompose;
mod universal;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use decompose::{decompose, infinity_data, is_normalized_mu, leading_zeros, InfinityData, WittDecomposition};
pub use universal::{ghost, universal, unghost, MPoly, UniversalWittPolys};

use crate::error::{Error, Result};
use crate::fq::Field;
use crate::parse::{parse_ratfunc, split_top_level};
use crate::polyring::Poly;
use crate::ratfunc::RatFunc;
use universal::Horner;

/// Default bound on the Witt length; the size of the universal polynomials
/// grows very quickly with `n`.
pub const DEFAULT_WITT_CAP: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    entries: Vec<RatFunc>,
}

impl WittVector {
    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self) -> &Field {
        self.entries[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    /// Entrywise p-th power.
    pub fn frobenius(&self) -> WittVector {
        WittVector { entries: self.entries.iter().map(RatFunc::frobenius).collect() }
    }

    /// Vector with the single entry `a` at (zero-based) position `j`.
    pub fn single(field: &Field, n: usize, j: usize, a: RatFunc) -> WittVector {
        let mut entries = vec![RatFunc::zero(field); n];
        entries[j] = a;
        WittVector { entries }
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Witt{}", self)
    }
}

impl fmt::Display for WittVector {
    /// `(1/T, (T+1)/T^2)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The ring `W_n(F_q(T))`, holding the universal polynomials for `(p, n)`.
#[derive(Clone)]
pub struct WittRing {
    field: Field,
    n: usize,
    polys: Arc<UniversalWittPolys>,
}

impl fmt::Debug for WittRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittRing(q = {}, n = {})", self.field.q(), self.n)
    }
}

impl WittRing {
    pub fn new(field: &Field, n: usize) -> Result<WittRing> {
        Self::with_cap(field, n, DEFAULT_WITT_CAP)
    }

    pub fn with_cap(field: &Field, n: usize, cap: usize) -> Result<WittRing> {
        if n == 0 {
            return Err(Error::Precondition("Witt length must be at least 1".into()));
        }
        if n > cap {
            return Err(Error::LengthCap { n, cap });
        }
        let polys = universal(field.p(), n)?;
        Ok(WittRing { field: field.clone(), n, polys })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn polys(&self) -> &UniversalWittPolys {
        &self.polys
    }

    pub fn zero(&self) -> WittVector {
        WittVector { entries: vec![RatFunc::zero(&self.field); self.n] }
    }

    pub fn vector(&self, entries: Vec<RatFunc>) -> Result<WittVector> {
        if entries.len() != self.n {
            return Err(Error::Precondition(format!(
                "Witt vector has {} entries, expected {}",
                entries.len(),
                self.n
            )));
        }
        if entries.iter().any(|e| e.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(WittVector { entries })
    }

    /// Parses `"a_1, ..., a_n"`, with optional surrounding parentheses.
    pub fn parse(&self, s: &str) -> Result<WittVector> {
        let t = s.trim();
        let inner = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(r) if split_top_level(t).len() == 1 && split_top_level(r).len() > 1 => r,
            _ => t,
        };
        let entries = split_top_level(inner)
            .into_iter()
            .map(|e| parse_ratfunc(&self.field, e))
            .collect::<Result<Vec<_>>>()?;
        self.vector(entries)
    }

    fn check(&self, v: &WittVector) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::Precondition(format!("Witt vector has length {}, expected {}", v.len(), self.n)));
        }
        if v.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, u: &WittVector, v: &WittVector) -> Result<WittVector> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.eval(&self.polys.sum_mod_p, u, v))
    }

    pub fn sub(&self, u: &WittVector, v: &WittVector) -> Result<WittVector> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.eval(&self.polys.diff_mod_p, u, v))
    }

    pub fn neg(&self, v: &WittVector) -> Result<WittVector> {
        self.check(v)?;
        if self.field.p() != 2 {
            return Ok(WittVector { entries: v.entries.iter().map(|e| -e).collect() });
        }
        Ok(self.eval(&self.polys.diff_mod_p, &self.zero(), v))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a WittVector>) -> Result<WittVector> {
        items.into_iter().try_fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    /// `F(a) -W a`.
    pub fn wp(&self, a: &WittVector) -> Result<WittVector> {
        self.sub(&a.frobenius(), a)
    }

    /// `δ +W (F(a) -W a)`: the effect on the right-hand side of the
    /// substitution `y -> y +W a` in `F(y) -W y = δ`.
    pub fn as_shift(&self, delta: &WittVector, a: &WittVector) -> Result<WittVector> {
        self.add(delta, &self.wp(a)?)
    }

    /// Evaluates reduced universal polynomials at `(u, v)`. All of them are
    /// isobaric (weight `p^(i-1)` on the i-th variables), so with a common
    /// denominator `D` and `a_i = u_i D^(p^(i-1))` we get
    /// `S_m(u, v) = S_m(a, b) / D^(p^(m-1))` and only polynomial arithmetic
    /// is needed.
    fn eval(&self, polys: &[Horner], u: &WittVector, v: &WittVector) -> WittVector {
        let f = &self.field;
        let n = self.n;
        let mut d = Poly::one(f);
        for e in u.entries.iter().chain(&v.entries) {
            if !e.den().is_one() {
                d = d.lcm(e.den());
            }
        }
        let mut dpow = Vec::with_capacity(n);
        dpow.push(d);
        for i in 1..n {
            let next = dpow[i - 1].frobenius();
            dpow.push(next);
        }
        let scaled = |e: &RatFunc, i: usize| -> Poly {
            if e.is_zero() {
                return Poly::zero(f);
            }
            &dpow[i].div_exact(e.den()).expect("common denominator") * e.num()
        };
        let vals: Vec<Poly> = (0..2 * n)
            .map(|k| if k < n { scaled(&u.entries[k], k) } else { scaled(&v.entries[k - n], k - n) })
            .collect();
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let entries = polys
            .iter()
            .zip(&dpow)
            .map(|(h, dm)| {
                let num = horner_eval(h, &vals, &mut powers);
                RatFunc::new(num, dm.clone()).expect("nonzero denominator")
            })
            .collect();
        WittVector { entries }
    }
}

fn horner_eval(h: &Horner, vals: &[Poly], powers: &mut HashMap<(usize, u32), Poly>) -> Poly {
    let f = vals[0].field();
    match h {
        Horner::Const(c) => Poly::constant(f, f.from_int(*c as i64)),
        Horner::Branch { var, children } => {
            let x = &vals[*var];
            let mut acc = Poly::zero(f);
            for (k, child) in children {
                if *k > 0 && x.is_zero() {
                    continue;
                }
                let inner = horner_eval(child, vals, powers);
                if inner.is_zero() {
                    continue;
                }
                let term = if *k == 0 {
                    inner
                } else {
                    let pw = powers.entry((*var, *k)).or_insert_with(|| x.pow(*k as u64));
                    &inner * pw
                };
                acc = &acc + &term;
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn example_sum() {
        let f = f3();
        let w = WittRing::new(&f, 2).unwrap();
        let a = w.parse("1/T, (T+1)/T^2").unwrap();
        let b = w.parse("0, 1/(T+1)").unwrap();
        let c = w.parse("1, T").unwrap();
        let s = w.sum([&a, &b, &c]).unwrap();
        assert_eq!(s, w.parse("1/T+1, 1/(T+1)+T").unwrap());
        assert_eq!(w.add(&a, &w.zero()).unwrap(), a);
    }

    #[test]
    fn inverse_law() {
        for q in [2, 3, 9] {
            let f = Field::from_q(q).unwrap();
            let w = WittRing::new(&f, 3).unwrap();
            let u = w.parse("1/T, T^2+1, 1/(T^2+T+1)").unwrap();
            let v = w.parse("T, 1/(T+1)^2, 1").unwrap();
            let s = w.add(&u, &v).unwrap();
            assert_eq!(w.sub(&s, &v).unwrap(), u);
            assert!(w.add(&u, &w.neg(&u).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn shift_examples() {
        let f = f3();
        let w = WittRing::new(&f, 2).unwrap();
        let d = w.parse("1/T^3, 0").unwrap();
        let a = w.parse("1/T, 0").unwrap();
        let s = w.as_shift(&d, &w.zero()).unwrap();
        assert_eq!(s, d);
        let s = w.as_shift(&d, &w.neg(&a).unwrap()).unwrap();
        assert_eq!(s.entries()[0], parse_ratfunc(&f, "1/T").unwrap());
        assert_eq!(w.sub(&s, &d).unwrap(), w.wp(&w.neg(&a).unwrap()).unwrap());

        let w1 = WittRing::new(&f, 1).unwrap();
        let d = w1.parse("T").unwrap();
        let a = w1.parse("1/T").unwrap();
        let want = parse_ratfunc(&f, "T + 1/T^3 - 1/T").unwrap();
        assert_eq!(w1.as_shift(&d, &a).unwrap().entries()[0], want);
    }

    #[test]
    fn length_cap() {
        let f = f3();
        assert_eq!(WittRing::new(&f, 5).unwrap_err(), Error::LengthCap { n: 5, cap: 4 });
        assert!(WittRing::new(&f, 0).is_err());
    }

    #[test]
    fn parse_forms() {
        let f = f3();
        let w = WittRing::new(&f, 2).unwrap();
        assert_eq!(w.parse("(1/T, T)").unwrap(), w.parse("1/T, T").unwrap());
        assert!(w.parse("1/T").is_err());
        let w1 = WittRing::new(&f, 1).unwrap();
        assert_eq!(w1.parse("(T+1)").unwrap().entries()[0], parse_ratfunc(&f, "T+1").unwrap());
    }
}

//! The unit group `(F_q[T]/N)^*` with an invariant-factor basis and
//! discrete logarithms.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fq::{Field, FqElem};
use crate::linalg::smith;
use crate::polyring::{factor, Poly};

/// Groups larger than this are rejected.
pub const MAX_GROUP_ORDER: u64 = 10_000_000;
/// Largest 1-unit subgroup enumerated per prime power.
const MAX_ONE_UNITS: u64 = 1_000_000;

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(F_q[T]/P^α)^*` = cyclic part of order `q^d - 1` times the 1-units.
#[derive(Clone)]
pub(crate) struct LocalFactor {
    pub prime: Poly,
    pub alpha: u32,
    pub modulus: Poly,
    /// `N / P^α`-part idempotent: `≡ 1 mod P^α`, `≡ 0` mod the rest.
    pub idempotent: Poly,
    pub cyclic_order: u64,
    pub one_unit_order: u64,
    /// element of exact order `q^d - 1` modulo `P^α`
    pub cyclic_gen: Poly,
    /// `1 + b T^j P^i` with their level `i`
    pub one_unit_gens: Vec<(Poly, u32)>,
    /// element -> exponents in `one_unit_gens`
    one_unit_table: HashMap<Poly, Vec<i64>>,
    /// one relation row per generator, lower triangular
    one_unit_relations: Vec<Vec<i64>>,
    baby_steps: HashMap<Poly, u64>,
    giant: Poly,
    giant_count: u64,
}

impl LocalFactor {
    fn new(prime: &Poly, alpha: u32, n: &Poly) -> Result<LocalFactor> {
        let f = prime.field();
        let q = f.q() as u64;
        let d = prime.degree().unwrap() as u32;
        let cyclic_order = q
            .checked_pow(d)
            .map(|x| x - 1)
            .filter(|&x| x < MAX_GROUP_ORDER)
            .ok_or_else(|| Error::SizeBound(format!("residue field of {} too large", prime)))?;
        let one_unit_order = q
            .checked_pow(d * (alpha - 1))
            .filter(|&x| x <= MAX_ONE_UNITS)
            .ok_or_else(|| Error::SizeBound(format!("too many 1-units modulo ({})^{}", prime, alpha)))?;
        let modulus = prime.pow(alpha as u64);
        let rest = n.div_exact(&modulus).unwrap();
        let idempotent = if rest.is_one() {
            Poly::one(f)
        } else {
            let inv = rest.rem(&modulus).inv_mod(&modulus).unwrap();
            (&rest * &inv).rem(n)
        };
        let residue_root = primitive_root(prime, cyclic_order);
        let cyclic_gen = residue_root.pow_mod(one_unit_order, &modulus);

        let mut one_unit_gens = Vec::new();
        for i in 1..alpha {
            let pi = prime.pow(i as u64);
            for j in 0..d as usize {
                for k in 0..f.degree() as usize {
                    let mut c = vec![0; f.degree() as usize];
                    c[k] = 1;
                    let b = f.from_coeffs(&c).unwrap();
                    let g = &Poly::one(f) + &(&Poly::monomial(f, b, j) * &pi);
                    one_unit_gens.push((g.rem(&modulus), i));
                }
            }
        }
        let (one_unit_table, one_unit_relations) = enumerate_one_units(&one_unit_gens, &modulus, one_unit_order)?;

        let giant_count = (cyclic_order as f64).sqrt().ceil() as u64;
        let mut baby_steps = HashMap::with_capacity(giant_count as usize);
        let mut x = Poly::one(f);
        for j in 0..giant_count {
            baby_steps.entry(x.clone()).or_insert(j);
            x = x.mul_mod(&residue_root, prime);
        }
        let giant = x.inv_mod(prime).unwrap();
        Ok(LocalFactor {
            prime: prime.clone(),
            alpha,
            modulus,
            idempotent,
            cyclic_order,
            one_unit_order,
            cyclic_gen,
            one_unit_gens,
            one_unit_table,
            one_unit_relations,
            baby_steps,
            giant,
            giant_count,
        })
    }

    /// Baby-step giant-step logarithm in `(F_q[T]/P)^*` to the base
    /// `residue_root`.
    fn residue_log(&self, a: &Poly) -> Result<u64> {
        let mut y = a.rem(&self.prime);
        for i in 0..=self.giant_count {
            if let Some(j) = self.baby_steps.get(&y) {
                return Ok((i * self.giant_count + j) % self.cyclic_order);
            }
            y = y.mul_mod(&self.giant, &self.prime);
        }
        Err(Error::Invariant(format!("discrete log failed modulo {}", self.prime)))
    }

    /// Exponent of the cyclic generator followed by exponents of the 1-unit
    /// generators.
    fn raw_log(&self, a: &Poly) -> Result<Vec<i64>> {
        let a = a.rem(&self.modulus);
        let l = self.residue_log(&a)?;
        // a = h^k * v with h = g^|U1|, so l = k |U1| mod (q^d - 1)
        let m = self.cyclic_order as i64;
        let inv = crate::linalg::mod_inv(self.one_unit_order as i64 % m, m).unwrap_or(0);
        let k = ((l as i128 * inv as i128).rem_euclid(m as i128)) as u64;
        let hk = self.cyclic_gen.pow_mod(k, &self.modulus);
        let v = a.mul_mod(&hk.inv_mod(&self.modulus).unwrap(), &self.modulus);
        let u = self
            .one_unit_table
            .get(&v)
            .ok_or_else(|| Error::Invariant(format!("1-unit {} missing from table", v)))?;
        let mut out = Vec::with_capacity(1 + u.len());
        out.push(k as i64);
        out.extend_from_slice(u);
        Ok(out)
    }
}

fn primitive_root(prime: &Poly, order: u64) -> Poly {
    let f = prime.field();
    let q = f.q() as u64;
    let d = prime.degree().unwrap();
    let ps = prime_factors(order);
    let one = Poly::one(f);
    for idx in 1..q.pow(d as u32) {
        let mut coeffs = Vec::with_capacity(d);
        let mut t = idx;
        for _ in 0..d {
            coeffs.push(FqElem((t % q) as u16));
            t /= q;
        }
        let g = Poly::new(f, coeffs);
        if ps.iter().all(|&l| g.pow_mod(order / l, prime) != one) {
            return g;
        }
    }
    one
}

type OneUnits = (HashMap<Poly, Vec<i64>>, Vec<Vec<i64>>);

/// Enumerates the group generated by `gens` generator by generator,
/// recording for each the smallest power falling into the previous span.
fn enumerate_one_units(gens: &[(Poly, u32)], modulus: &Poly, order: u64) -> Result<OneUnits> {
    let f = modulus.field();
    let r = gens.len();
    let mut table: HashMap<Poly, Vec<i64>> = HashMap::with_capacity(order as usize);
    let mut elems: Vec<Poly> = vec![Poly::one(f)];
    table.insert(Poly::one(f), vec![0; r]);
    let mut relations = Vec::with_capacity(r);
    for (idx, (g, _)) in gens.iter().enumerate() {
        let mut k = 1i64;
        let mut pw = g.clone();
        while !table.contains_key(&pw) {
            pw = pw.mul_mod(g, modulus);
            k += 1;
        }
        let mut rel: Vec<i64> = table[&pw].iter().map(|x| -x).collect();
        rel[idx] += k;
        relations.push(rel);
        if k > 1 {
            let base = elems.clone();
            let mut gj = Poly::one(f);
            for j in 1..k {
                gj = gj.mul_mod(g, modulus);
                for h in &base {
                    let e = h.mul_mod(&gj, modulus);
                    let mut v = table[h].clone();
                    v[idx] += j;
                    table.insert(e.clone(), v);
                    elems.push(e);
                }
            }
        }
    }
    if elems.len() as u64 != order {
        return Err(Error::Invariant(format!(
            "1-unit enumeration found {} elements, expected {}",
            elems.len(),
            order
        )));
    }
    Ok((table, relations))
}

/// `(F_q[T]/N)^*` with a basis `g_1..g_k` of orders `d_1 | ... | d_k`.
pub struct UnitGroup {
    field: Field,
    modulus: Poly,
    pub(crate) locals: Vec<LocalFactor>,
    orders: Vec<u64>,
    basis: Vec<Poly>,
    /// raw generator exponents -> basis coordinates: `w = x V`, column `i`
    /// of `V` taken modulo `d_i`
    v: Vec<Vec<i64>>,
}

impl fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitGroup(mod {}, orders {:?})", self.modulus, self.orders)
    }
}

impl UnitGroup {
    pub fn new(n: &Poly) -> Result<UnitGroup> {
        if n.degree().unwrap_or(0) < 1 {
            return Err(Error::Precondition("unit_group: modulus must have degree >= 1".into()));
        }
        let f = n.field().clone();
        let modulus = n.monic();
        let fz = factor(&modulus)?;
        let q = f.q() as u64;
        let mut total: u64 = 1;
        for (p, a) in &fz.factors {
            let d = p.degree().unwrap() as u32;
            let local = q
                .checked_pow(d * a)
                .and_then(|x| x.checked_sub(q.pow(d * (a - 1))))
                .ok_or_else(|| Error::SizeBound("unit group too large".into()))?;
            total = total
                .checked_mul(local)
                .filter(|&t| t <= MAX_GROUP_ORDER)
                .ok_or_else(|| Error::SizeBound(format!("|(F_q[T]/N)^*| exceeds {}", MAX_GROUP_ORDER)))?;
        }
        let locals = fz
            .factors
            .iter()
            .map(|(p, a)| LocalFactor::new(p, *a, &modulus))
            .collect::<Result<Vec<_>>>()?;

        // raw generators and their relation matrix (block diagonal)
        let mut raw: Vec<Poly> = Vec::new();
        let mut blocks: Vec<Vec<Vec<i64>>> = Vec::new();
        for l in &locals {
            raw.push(lift(&l.cyclic_gen, l, &modulus));
            let mut block = vec![vec![l.cyclic_order as i64]];
            for (g, _) in &l.one_unit_gens {
                raw.push(lift(g, l, &modulus));
            }
            for rel in &l.one_unit_relations {
                let mut row = vec![0];
                row.extend_from_slice(rel);
                block.push(row);
            }
            blocks.push(block);
        }
        let r = raw.len();
        let mut mat = Vec::with_capacity(r);
        let mut offset = 0;
        for block in &blocks {
            let w = block.len();
            for row in block {
                let mut full = vec![0i128; r];
                for (j, &x) in row.iter().enumerate() {
                    full[offset + j] = x as i128;
                }
                mat.push(full);
            }
            offset += w;
        }
        let s = smith(mat, r)?;
        let mut orders = Vec::new();
        let mut basis = Vec::new();
        let mut cols = Vec::new();
        let expo = exponent_of(&locals) as i128;
        for (i, &d) in s.diag.iter().enumerate() {
            if d == 0 {
                return Err(Error::Invariant("unit group relation matrix is singular".into()));
            }
            if d == 1 {
                continue;
            }
            let d = d as u64;
            orders.push(d);
            cols.push(i);
            let mut g = Poly::one(&f);
            for (j, x) in s.v_inv[i].iter().enumerate() {
                let e = x.rem_euclid(expo) as u64;
                if e != 0 {
                    g = g.mul_mod(&raw[j].pow_mod(e, &modulus), &modulus);
                }
            }
            basis.push(g);
        }
        let v: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                cols.iter()
                    .zip(&orders)
                    .map(|(&c, &d)| s.v[j][c].rem_euclid(d as i128) as i64)
                    .collect()
            })
            .collect();
        let group = UnitGroup { field: f, modulus, locals, orders, basis, v };
        if group.order() != total {
            return Err(Error::Invariant(format!(
                "unit group order {} differs from the formula value {}",
                group.order(),
                total
            )));
        }
        Ok(group)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Invariant factors `d_1 | d_2 | ...` (all > 1).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.orders.last().copied().unwrap_or(1)
    }

    pub fn primes(&self) -> impl Iterator<Item = (&Poly, u32)> {
        self.locals.iter().map(|l| (&l.prime, l.alpha))
    }

    /// Coordinates of `a` in the basis, each reduced modulo its order.
    pub fn dlog(&self, a: &Poly) -> Result<Vec<u64>> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let a = a.rem(&self.modulus);
        if !a.gcd(&self.modulus).is_one() {
            return Err(Error::Precondition(format!("dlog: {} is not coprime to {}", a, self.modulus)));
        }
        let mut x: Vec<i64> = Vec::with_capacity(self.v.len());
        for l in &self.locals {
            x.extend(l.raw_log(&a)?);
        }
        Ok(self.coords_from_raw(&x))
    }

    fn coords_from_raw(&self, x: &[i64]) -> Vec<u64> {
        self.orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let s: i128 = x.iter().zip(&self.v).map(|(&xj, row)| xj as i128 * row[i] as i128).sum();
                s.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// `Π g_i^{v_i} mod N`.
    pub fn element(&self, v: &[u64]) -> Poly {
        v.iter().zip(&self.basis).fold(Poly::one(&self.field), |acc, (&e, g)| {
            acc.mul_mod(&g.pow_mod(e, &self.modulus), &self.modulus)
        })
    }

    /// The element `≡ a mod P^α` and `≡ 1` modulo the other prime powers,
    /// for the local factor at position `idx`.
    pub(crate) fn lift_local(&self, idx: usize, a: &Poly) -> Poly {
        lift(a, &self.locals[idx], &self.modulus)
    }
}

fn exponent_of(locals: &[LocalFactor]) -> u64 {
    locals
        .iter()
        .fold(1u64, |acc, l| acc.lcm(&(l.cyclic_order * l.one_unit_order)))
}

fn lift(a: &Poly, l: &LocalFactor, n: &Poly) -> Poly {
    let f = n.field();
    let one = Poly::one(f);
    (&one + &(&(a - &one) * &l.idempotent)).rem(n)
}

impl LocalFactor {
    /// Generators of `{A ≡ 1 mod P^β}` inside `(F_q[T]/P^α)^*`.
    pub fn kernel_gens(&self, beta: u32) -> Vec<Poly> {
        let mut out = Vec::new();
        if beta == 0 {
            out.push(self.cyclic_gen.clone());
        }
        out.extend(self.one_unit_gens.iter().filter(|(_, i)| *i >= beta.max(1)).map(|(g, _)| g.clone()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn group(q: u64, n: &str) -> UnitGroup {
        let f = Field::from_q(q).unwrap();
        UnitGroup::new(&parse_poly(&f, n).unwrap()).unwrap()
    }

    #[test]
    fn structure_examples() {
        assert_eq!(group(3, "T").orders(), [2]);
        assert_eq!(group(3, "T^2").orders(), [6]);
        assert_eq!(group(3, "T(T+1)").orders(), [2, 2]);
        assert_eq!(group(2, "T").orders(), [] as [u64; 0]);
        assert_eq!(group(2, "T^3").orders(), [4]);
        assert_eq!(group(2, "T^4").orders(), [2, 4]);
        assert_eq!(group(5, "T^2(T+1)").orders(), [4, 20]);
    }

    #[test]
    fn dlog_round_trip() {
        for (q, n) in [(3, "T^3+T"), (2, "T^4+T"), (5, "T^2(T+2)"), (4, "T^3"), (9, "T^2+1")] {
            let g = group(q, n);
            let f = g.field().clone();
            for c0 in 0..q.min(5) {
                for c1 in 0..q.min(5) {
                    let a = Poly::new(&f, vec![FqElem(c0 as u16), FqElem(c1 as u16), FqElem::ONE]);
                    if !a.gcd(g.modulus()).is_one() {
                        assert!(g.dlog(&a).is_err());
                        continue;
                    }
                    let v = g.dlog(&a).unwrap();
                    assert_eq!(g.element(&v), a.rem(g.modulus()), "q={} N={} a={}", q, n, a);
                }
            }
            for (i, b) in g.basis().iter().enumerate() {
                let mut e = vec![0; g.rank()];
                e[i] = 1;
                assert_eq!(g.dlog(b).unwrap(), e);
            }
        }
    }

    #[test]
    fn dlog_of_constant() {
        let g = group(3, "T");
        let f = g.field().clone();
        assert_eq!(g.dlog(&Poly::constant(&f, f.from_int(2))).unwrap(), [1]);
        assert_eq!(g.dlog(&Poly::one(&f)).unwrap(), [0]);
    }

    #[test]
    fn size_bound() {
        let f = Field::prime(7).unwrap();
        let n = Poly::t(&f).pow(9);
        assert!(matches!(UnitGroup::new(&n), Err(Error::SizeBound(_))));
    }
}

//! Brute-force oracle suites, shared by the `selftest` subcommand and the
//! acceptance tests. Each suite checks the library against an independent
//! computation (enumeration, integer ghost components, or a second solver).

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chargroup::{residue_character_on, Character, CharSubgroup, UnitGroup};
use crate::error::Result;
use crate::fq::{Field, FqElem};
use crate::genus::{artin_schreier_genus, cyclotomic_subfield_genus, kummer_genus, witt_genus, AsInput, KummerInput, WittInput};
use crate::genus::{Details, Generator, GenusResult};
use crate::par::Exec;
use crate::parse::parse_ratfunc;
use crate::polyring::{factor, is_irreducible, Poly};
use crate::ratfunc::{as_normalize, RatFunc};
use crate::witt::{decompose, universal, WittRing, WittVector};

pub const DEFAULT_SELFTEST_SEED: u64 = 20_240_611;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Check counter for one job.
#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn ok<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {}", ctx(), e));
                None
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn run_suite(name: &'static str, body: impl FnOnce() -> Tally) -> SuiteReport {
    let start = Instant::now();
    let t = body();
    SuiteReport { name, checked: t.checked, failures: t.failures, elapsed: start.elapsed() }
}

fn run_jobs<T: Sync>(exec: Exec, jobs: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    let mut total = Tally::default();
    for t in exec.map(jobs, f) {
        total.merge(t);
    }
    total
}

/// Random inputs for the suites.
pub mod gen {
    use super::*;

    pub fn random_poly(field: &Field, below: usize, rng: &mut impl Rng) -> Poly {
        let q = field.q();
        Poly::new(field, (0..below).map(|_| FqElem(rng.gen_range(0..q) as u16)).collect())
    }

    pub fn random_monic(field: &Field, degree: usize, rng: &mut impl Rng) -> Poly {
        let mut c = random_poly(field, degree, rng).coeffs().to_vec();
        c.resize(degree, FqElem::ZERO);
        c.push(FqElem::ONE);
        Poly::new(field, c)
    }

    pub fn random_irreducible(field: &Field, max_degree: usize, rng: &mut impl Rng) -> Poly {
        let d = rng.gen_range(1..=max_degree);
        loop {
            let p = random_monic(field, d, rng);
            if is_irreducible(&p).unwrap_or(false) {
                return p;
            }
        }
    }

    /// Distinct random monic irreducibles.
    pub fn random_primes(field: &Field, count: usize, max_degree: usize, rng: &mut impl Rng) -> Vec<Poly> {
        let mut out: Vec<Poly> = Vec::new();
        for _ in 0..count * 8 {
            if out.len() == count {
                break;
            }
            let p = random_irreducible(field, max_degree, rng);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// A sum of random proper fractions with denominators `P^e`, `P` from
    /// `primes`, `e <= max_pole`, plus a polynomial of degree `<= poly_degree`.
    pub fn random_ratfunc(field: &Field, primes: &[Poly], max_pole: u32, poly_degree: usize, rng: &mut impl Rng) -> RatFunc {
        let mut acc = RatFunc::from_poly(random_poly(field, poly_degree + 1, rng));
        for p in primes {
            let e = rng.gen_range(0..=max_pole);
            if e == 0 {
                continue;
            }
            let below = p.degree().unwrap() * e as usize;
            let num = random_poly(field, below, rng);
            let den = p.pow(e as u64);
            acc = &acc + &RatFunc::new(num, den).expect("nonzero denominator");
        }
        acc
    }

    pub fn random_witt(ring: &WittRing, primes: &[Poly], max_pole: u32, poly_degree: usize, rng: &mut impl Rng) -> WittVector {
        let f = ring.field();
        let entries = (0..ring.len()).map(|_| random_ratfunc(f, primes, max_pole, poly_degree, rng)).collect();
        ring.vector(entries).expect("entries over the ring's field")
    }

    pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        r.set_stream(stream);
        r
    }
}

/// All monic polynomials of exact degree `d`.
pub fn monic_polys(field: &Field, d: usize) -> Vec<Poly> {
    residues(field, d)
        .into_iter()
        .map(|r| {
            let mut c = r.coeffs().to_vec();
            c.resize(d, FqElem::ZERO);
            c.push(FqElem::ONE);
            Poly::new(field, c)
        })
        .collect()
}

/// All polynomials of degree `< d`.
pub fn residues(field: &Field, d: usize) -> Vec<Poly> {
    let q = field.q() as usize;
    let count = q.pow(d as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(d);
            for _ in 0..d {
                c.push(FqElem((idx % q) as u16));
                idx /= q;
            }
            Poly::new(field, c)
        })
        .collect()
}

fn field(q: u64) -> Field {
    Field::from_q(q).expect("supported field size")
}

/// Reproduces the worked length-two example over F_3.
pub fn worked_witt_example() -> SuiteReport {
    run_suite("worked length-two Witt example", || {
        let mut t = Tally::default();
        let f = field(3);
        let Some(ring) = t.ok(WittRing::new(&f, 2), || "ring".into()) else { return t };
        let Some(beta) = t.ok(ring.parse("(1/T + 1, 1/(T+1) + T)"), || "parse".into()) else { return t };
        let Some(input) = t.ok(WittInput::new(&ring, &beta), || "decompose".into()) else { return t };
        let show = |v: &WittVector| v.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>();
        let dec = &input.decomposition;
        let deltas: Vec<(String, Vec<String>)> = dec.deltas.iter().map(|(p, d)| (p.to_string(), show(d))).collect();
        let want = vec![
            ("T".to_string(), vec!["1/T".to_string(), "(T+1)/T^2".to_string()]),
            ("T+1".to_string(), vec!["0".to_string(), "1/(T+1)".to_string()]),
        ];
        t.check(deltas == want, || format!("deltas {:?}", deltas));
        t.check(show(&dec.mu) == ["1", "T"], || format!("mu {:?}", show(&dec.mu)));
        if let Some(r) = t.ok(witt_genus(&input), || "genus".into()) {
            let labels: Vec<&str> = r
                .generators
                .iter()
                .filter_map(|g| match g {
                    Generator::Equation { label, .. } => Some(label.as_str()),
                    _ => None,
                })
                .collect();
            t.check(labels == ["y_1", "y_2", "z"], || format!("generators {:?}", labels));
        }
        t
    })
}

/// Ghost-component identity for the universal polynomials and ring axioms
/// on random vectors over `F_q(T)`.
pub fn witt_ring_soundness(exec: Exec, seed: u64, triples: usize) -> SuiteReport {
    run_suite("Witt ring soundness", || {
        let mut total = Tally::default();
        let configs: Vec<(u32, usize)> = [2u32, 3].iter().flat_map(|&p| (1..=4).map(move |n| (p, n))).collect();
        total.merge(run_jobs(exec, &configs, |&(p, n)| {
            let mut t = Tally::default();
            let Some(u) = t.ok(universal(p, n), || format!("universal p={} n={}", p, n)) else { return t };
            let mut rng = gen::rng(seed, 1000 + 10 * p as u64 + n as u64);
            for _ in 0..25 {
                let x: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-30i64..=30))).collect();
                let y: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-30i64..=30))).collect();
                t.check(u.check_ghost_identity(&x, &y), || format!("ghost identity p={} n={} x={:?} y={:?}", p, n, x, y));
            }
            t
        }));

        let qs = [2u64, 4, 3, 9];
        let jobs: Vec<(u64, usize, u64)> = (0..triples as u64).map(|i| (qs[(i % 4) as usize], (i / 4 % 4) as usize + 1, i)).collect();
        total.merge(run_jobs(exec, &jobs, |&(q, n, i)| {
            let mut t = Tally::default();
            let f = field(q);
            let Some(ring) = t.ok(WittRing::new(&f, n), || "ring".into()) else { return t };
            let mut rng = gen::rng(seed, i);
            let primes = gen::random_primes(&f, 2, 1, &mut rng);
            let [a, b, c] = [0; 3].map(|_| gen::random_witt(&ring, &primes, 1, 1, &mut rng));
            let ctx = || format!("q={} n={} a={} b={} c={}", q, n, a, b, c);
            let r = (|| -> Result<[bool; 4]> {
                let ab = ring.add(&a, &b)?;
                let assoc = ring.add(&ab, &c)? == ring.add(&a, &ring.add(&b, &c)?)?;
                let comm = ab == ring.add(&b, &a)?;
                let inv = ring.add(&a, &ring.neg(&a)?)?.is_zero();
                let sub = ring.add(&ring.sub(&a, &b)?, &b)? == a;
                Ok([assoc, comm, inv, sub])
            })();
            if let Some([assoc, comm, inv, sub]) = t.ok(r, ctx) {
                t.check(assoc, || format!("associativity: {}", ctx()));
                t.check(comm, || format!("commutativity: {}", ctx()));
                t.check(inv, || format!("additive inverse: {}", ctx()));
                t.check(sub, || format!("subtraction: {}", ctx()));
            }
            t
        }));
        total
    })
}

fn check_decomposition(t: &mut Tally, ring: &WittRing, beta: &WittVector) {
    let f = ring.field();
    let p = f.p() as i64;
    let ctx = || format!("q={} beta={}", f.q(), beta);
    let Some(dec) = t.ok(decompose(ring, beta), ctx) else { return };
    let r = (|| -> Result<(WittVector, WittVector)> {
        let sum = ring.sum(dec.components())?;
        Ok((sum.clone(), ring.add(&sum, &ring.wp(&dec.witness)?)?))
    })();
    let Some((sum, recombined)) = t.ok(r, ctx) else { return };
    t.check(&recombined == beta, || format!("witness identity fails: {}", ctx()));

    let mut primes: Vec<&Poly> = dec.deltas.iter().map(|(p, _)| p).collect();
    primes.dedup();
    t.check(primes.len() == dec.deltas.len(), || format!("repeated prime: {}", ctx()));
    for (prime, d) in &dec.deltas {
        for e in d.entries() {
            if e.is_zero() {
                continue;
            }
            let k = e.den().degree().unwrap() / prime.degree().unwrap();
            let supported = prime.pow(k as u64) == *e.den() && e.num().deg() < e.den().deg();
            t.check(supported, || format!("entry {} of the {} part is not a proper fraction at {}: {}", e, prime, prime, ctx()));
            t.check(k as i64 % p != 0, || format!("pole order {} divisible by p at {}: {}", k, prime, ctx()));
        }
    }
    for e in dec.mu.entries() {
        let Some(poly) = e.as_poly() else {
            t.check(false, || format!("polynomial part entry {} has poles: {}", e, ctx()));
            continue;
        };
        match poly.degree() {
            None => {}
            Some(0) => t.check(!f.in_wp_image(poly.lead()), || format!("constant {} lies in the image of x^p - x: {}", e, ctx())),
            Some(d) => t.check(d as i64 % p != 0, || format!("degree {} divisible by p: {}", d, ctx())),
        }
    }
    if let Some(again) = t.ok(decompose(ring, &sum), ctx) {
        let same = again.deltas == dec.deltas && again.mu == dec.mu && again.witness.is_zero();
        t.check(same, || format!("decomposition is not idempotent: {}", ctx()));
    }
}

/// Random decompositions: witness identity, separated supports, pole orders
/// prime to `p`, idempotence.
pub fn decomposition_invariants(exec: Exec, seed: u64, count: usize) -> SuiteReport {
    run_suite("Witt decomposition invariants", || {
        let qs = [2u64, 3, 9];
        let jobs: Vec<u64> = (0..count as u64).collect();
        run_jobs(exec, &jobs, |&i| {
            let mut t = Tally::default();
            let f = field(qs[(i % 3) as usize]);
            let n = (i / 3 % 3) as usize + 1;
            let Some(ring) = t.ok(WittRing::new(&f, n), || "ring".into()) else { return t };
            let mut rng = gen::rng(seed, 20_000 + i);
            let k = rng.gen_range(1..=3);
            let primes = gen::random_primes(&f, k, 2, &mut rng);
            let max_pole = if n == 3 { 2 } else { f.p() + 1 };
            let beta = gen::random_witt(&ring, &primes, max_pole, f.p() as usize + 1, &mut rng);
            check_decomposition(&mut t, &ring, &beta);
            t
        })
    })
}

fn kummer_ramified(r: &GenusResult) -> Vec<String> {
    let mut v = r.ramified_primes.clone();
    v.sort();
    v
}

/// Kummer degrees against the character group generated by residue
/// characters, over every squarefree monic `D` of degree at most 3.
pub fn kummer_character_cross(exec: Exec) -> SuiteReport {
    run_suite("Kummer against characters", || {
        let mut jobs: Vec<(u64, u32, Poly)> = Vec::new();
        for (q, l) in [(3u64, 2u32), (5, 2), (4, 3)] {
            let f = field(q);
            for d in 1..=3 {
                for dp in monic_polys(&f, d) {
                    if factor(&dp).map(|fz| fz.factors.iter().all(|(_, e)| *e == 1)).unwrap_or(false) {
                        jobs.push((q, l, dp));
                    }
                }
            }
        }
        run_jobs(exec, &jobs, |(q, l, d)| {
            let mut t = Tally::default();
            let f = d.field();
            let ctx = || format!("q={} l={} D={}", q, l, d);
            let gamma = if d.deg() % 2 == 0 { FqElem::ONE } else { f.neg(FqElem::ONE) };
            let Some(input) = t.ok(KummerInput::new(*l, gamma, d), ctx) else { return t };
            let Some(kr) = t.ok(kummer_genus(&input), ctx) else { return t };
            let x = (|| -> Result<CharSubgroup> {
                let g = Arc::new(UnitGroup::new(d)?);
                let mut chi = Character::trivial(&g);
                for (p, e) in &factor(d)?.factors {
                    chi = chi.mul(&residue_character_on(&g, p, *l, *e)?)?;
                }
                CharSubgroup::new(&g, vec![chi])
            })();
            let Some(x) = t.ok(x, ctx) else { return t };
            let Some(cr) = t.ok(cyclotomic_subfield_genus(&x), ctx) else { return t };
            t.check(kr.genus_degree == cr.genus_degree, || {
                format!("{}: Kummer degree {} but character degree {}", ctx(), kr.genus_degree, cr.genus_degree)
            });
            let mut from_chars = cr.ramified_primes.clone();
            from_chars.sort();
            t.check(kummer_ramified(&kr) == from_chars, || {
                format!("{}: ramified {:?} vs {:?}", ctx(), kummer_ramified(&kr), from_chars)
            });
            t.check(x.order() == *l as u64, || format!("{}: |X| = {}", ctx(), x.order()));
            t
        })
    })
}

fn brute_lth_powers(f: &Field, l: u32) -> Vec<FqElem> {
    let mut v: Vec<FqElem> = f.nonzero().map(|x| f.pow(x, l as u64)).collect();
    v.sort();
    v.dedup();
    v
}

fn brute_wp_image(f: &Field) -> Vec<FqElem> {
    let mut v: Vec<FqElem> = f.elements().map(|x| f.sub(f.pow(x, f.p() as u64), x)).collect();
    v.sort();
    v.dedup();
    v
}

/// Behaviour of the infinite place for Kummer and Artin–Schreier inputs
/// over an exhaustive grid, against enumerated power and ℘ images.
pub fn infinity_tables(exec: Exec) -> SuiteReport {
    run_suite("infinite place tables", || {
        let mut total = Tally::default();
        let mut kummer_jobs: Vec<(u64, FqElem, Poly)> = Vec::new();
        for q in [3u64, 5] {
            let f = field(q);
            for d in 1..=2 {
                for dp in monic_polys(&f, d) {
                    if factor(&dp).map(|fz| fz.factors.iter().all(|(_, e)| *e == 1)).unwrap_or(false) {
                        for g in f.nonzero() {
                            kummer_jobs.push((q, g, dp.clone()));
                        }
                    }
                }
            }
        }
        total.merge(run_jobs(exec, &kummer_jobs, |(q, gamma, d)| {
            let mut t = Tally::default();
            let f = d.field();
            let ctx = || format!("q={} gamma={} D={}", q, f.fmt_elem(*gamma), d);
            let Some(r) = t.ok(KummerInput::new(2, *gamma, d).and_then(|i| kummer_genus(&i)), ctx) else { return t };
            let square = brute_lth_powers(f, 2).contains(gamma);
            let want = if d.deg() % 2 == 1 { (2, 1, 1) } else if square { (1, 1, 2) } else { (1, 2, 1) };
            let i = r.infinity;
            t.check((i.e, i.f, i.h) == want, || format!("{}: (e,f,h) = {:?}, expected {:?}", ctx(), (i.e, i.f, i.h), want));
            t.check(i.e * i.f * i.h == r.base_degree, || format!("{}: efh != [K:k]", ctx()));
            t
        }));

        let mut as_jobs: Vec<(u64, String, (u64, u64, u64))> = Vec::new();
        for q in [3u64, 5, 9] {
            let f = field(q);
            let p = f.p() as u64;
            let wp = brute_wp_image(&f);
            as_jobs.push((q, "1/T".into(), (1, 1, p)));
            for c in f.nonzero() {
                let cs = f.fmt_elem(c);
                let want = if wp.contains(&c) { (1, 1, p) } else { (1, p, 1) };
                as_jobs.push((q, format!("1/T + ({})", cs), want));
                for k in 1..=p + 1 {
                    as_jobs.push((q, format!("1/T + ({})*T^{}", cs, k), (p, 1, 1)));
                }
            }
        }
        total.merge(run_jobs(exec, &as_jobs, |(q, alpha, want)| {
            let mut t = Tally::default();
            let f = field(*q);
            let ctx = || format!("q={} alpha={}", q, alpha);
            let r = parse_ratfunc(&f, alpha).and_then(|a| artin_schreier_genus(&AsInput::new(&a)?));
            let Some(r) = t.ok(r, ctx) else { return t };
            let i = r.infinity;
            t.check((i.e, i.f, i.h) == *want, || format!("{}: (e,f,h) = {:?}, expected {:?}", ctx(), (i.e, i.f, i.h), want));
            t.check(i.e * i.f * i.h == r.base_degree, || format!("{}: efh != [K:k]", ctx()));
            t
        }));
        total
    })
}

/// Invariant factors of a finite abelian group from the orders of its
/// elements, ascending and without 1s.
pub fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut primes = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            primes.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    // per prime: exponents of the cyclic factors, largest first
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for &l in &primes {
        let count = |j: u32| {
            let lj = l.pow(j);
            orders.iter().filter(|&&o| lj % o == 0).count() as u64
        };
        let mut ge = Vec::new(); // ge[j-1] = number of factors with exponent >= j
        let mut prev = 1;
        let mut j = 1;
        loop {
            let c = count(j);
            if c == prev {
                break;
            }
            let mut k = 0;
            let mut r = c / prev;
            while r > 1 {
                r /= l;
                k += 1;
            }
            ge.push(k);
            prev = c;
            j += 1;
        }
        let width = ge.first().copied().unwrap_or(0);
        let col: Vec<u64> = (1..=width).map(|k| l.pow(ge.iter().filter(|&&g| g >= k).count() as u32)).collect();
        columns.push(col);
    }
    let width = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..width).map(|k| columns.iter().map(|c| c.get(k).copied().unwrap_or(1)).product()).collect();
    out.reverse();
    out
}

fn brute_unit_orders(n: &Poly) -> Vec<(Poly, u64)> {
    let f = n.field();
    let units: Vec<Poly> = residues(f, n.degree().unwrap()).into_iter().filter(|a| a.gcd(n).is_one()).collect();
    let order = units.len() as u64;
    units
        .into_iter()
        .map(|a| {
            let mut k = order;
            for d in 2..=order {
                while k.is_multiple_of(d) && a.pow_mod(k / d, n).is_one() {
                    k /= d;
                }
            }
            (a, k)
        })
        .collect()
}

fn divisors(n: &Poly) -> Vec<Poly> {
    let f = n.field();
    let mut out = vec![Poly::one(f)];
    for (p, e) in factor(n).expect("nonzero").factors {
        let mut next = Vec::new();
        for d in &out {
            for k in 0..=e {
                next.push(d * &p.pow(k as u64));
            }
        }
        out = next;
    }
    out
}

/// Unit group structure and character conductors against enumeration of
/// `(F_q[T]/N)^*` for every monic `N` of degree at most 3.
pub fn unit_group_oracle(exec: Exec) -> SuiteReport {
    run_suite("unit groups and conductors", || {
        let mut jobs = Vec::new();
        for q in [2u64, 3, 5] {
            let f = field(q);
            for d in 1..=3 {
                jobs.extend(monic_polys(&f, d));
            }
        }
        run_jobs(exec, &jobs, |n| {
            let mut t = Tally::default();
            let ctx = || format!("q={} N={}", n.field().q(), n);
            let Some(g) = t.ok(UnitGroup::new(n), ctx) else { return t };
            let g = Arc::new(g);
            let units = brute_unit_orders(n);
            t.check(g.order() == units.len() as u64, || format!("{}: order {} vs {}", ctx(), g.order(), units.len()));
            let orders: Vec<u64> = units.iter().map(|(_, o)| *o).collect();
            let inv = invariant_factors_from_orders(&orders);
            t.check(g.orders() == inv.as_slice(), || format!("{}: invariant factors {:?} vs {:?}", ctx(), g.orders(), inv));

            let Some(coords) = t.ok(units.iter().map(|(a, _)| g.dlog(a)).collect::<Result<Vec<_>>>(), ctx) else { return t };
            let one = Poly::one(n.field());
            let mut divs = divisors(n);
            divs.sort_by_key(|d| d.deg());
            // for each divisor M: indices of units congruent to 1 mod M
            let kernels: Vec<Vec<usize>> = divs
                .iter()
                .map(|m| (0..units.len()).filter(|&i| units[i].0.rem(m) == one.rem(m)).collect())
                .collect();
            let mut exps = vec![0u64; g.rank()];
            loop {
                let ev: Vec<i64> = exps.iter().map(|&x| x as i64).collect();
                if let Some(chi) = t.ok(Character::new(&g, &ev), ctx) {
                    let brute = divs
                        .iter()
                        .zip(&kernels)
                        .find(|(_, ker)| ker.iter().all(|&i| chi.value_at_coords(&coords[i]).is_zero()))
                        .map(|(m, _)| m.clone());
                    if let Some(c) = t.ok(chi.conductor(), ctx) {
                        t.check(Some(&c) == brute.as_ref(), || {
                            format!("{}: conductor of {:?} is {} but enumeration gives {:?}", ctx(), exps, c, brute.map(|b| b.to_string()))
                        });
                    }
                }
                // next exponent vector
                let mut i = 0;
                while i < exps.len() {
                    exps[i] += 1;
                    if exps[i] < g.orders()[i] {
                        break;
                    }
                    exps[i] = 0;
                    i += 1;
                }
                if i == exps.len() {
                    break;
                }
            }
            t
        })
    })
}

/// Normalization: witness identities and idempotence for Artin–Schreier and
/// Witt inputs, plus the constant-field predicates against enumeration.
pub fn normalization_contracts(exec: Exec, seed: u64, count: usize) -> SuiteReport {
    run_suite("normalization contracts", || {
        let mut total = Tally::default();
        let mut t = Tally::default();
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27] {
            let f = field(q);
            let wp = brute_wp_image(&f);
            for a in f.elements() {
                t.check(f.in_wp_image(a) == wp.contains(&a), || format!("q={}: ℘ membership of {}", q, f.fmt_elem(a)));
                t.check(f.pow(f.pth_root(a), f.p() as u64) == a, || format!("q={}: p-th root of {}", q, f.fmt_elem(a)));
            }
            t.check(wp.len() as u64 * f.p() as u64 == q, || format!("q={}: |℘(F_q)| = {}", q, wp.len()));
            for l in (2..q as u32).filter(|&l| crate::fq::is_prime(l as u64) && (q as u32 - 1).is_multiple_of(l)) {
                let powers = brute_lth_powers(&f, l);
                for a in f.nonzero() {
                    let got = f.is_lth_power(a, l).ok();
                    t.check(got == Some(powers.contains(&a)), || format!("q={} l={}: power test at {}", q, l, f.fmt_elem(a)));
                }
            }
        }
        total.merge(t);

        let qs = [2u64, 3, 4, 5, 9];
        let half = count / 2;
        let jobs: Vec<u64> = (0..half as u64).collect();
        total.merge(run_jobs(exec, &jobs, |&i| {
            let mut t = Tally::default();
            let f = field(qs[(i % 5) as usize]);
            let mut rng = gen::rng(seed, 30_000 + i);
            let k = rng.gen_range(1..=3);
            let primes = gen::random_primes(&f, k, 2, &mut rng);
            let a = gen::random_ratfunc(&f, &primes, 2 * f.p(), 2 * f.p() as usize + 1, &mut rng);
            let ctx = || format!("q={} alpha={}", f.q(), a);
            let Some((form, w)) = t.ok(as_normalize(&a), ctx) else { return t };
            let normal = form.recombine();
            t.check(normal == &a - &w.w.wp(), || format!("witness identity: {}", ctx()));
            t.check(form.is_normalized(), || format!("shape constraints: {}", ctx()));
            if let Some((again, w2)) = t.ok(as_normalize(&normal), ctx) {
                t.check(again == form && w2.w.is_zero(), || format!("not idempotent: {}", ctx()));
            }
            t
        }));

        let jobs: Vec<u64> = (0..(count - half) as u64).collect();
        total.merge(run_jobs(exec, &jobs, |&i| {
            let mut t = Tally::default();
            let f = field([2u64, 3][(i % 2) as usize]);
            let n = (i / 2 % 3) as usize + 1;
            let Some(ring) = t.ok(WittRing::new(&f, n), || "ring".into()) else { return t };
            let mut rng = gen::rng(seed, 40_000 + i);
            let primes = gen::random_primes(&f, 2, 2, &mut rng);
            let beta = gen::random_witt(&ring, &primes, f.p() + 1, f.p() as usize + 1, &mut rng);
            check_decomposition(&mut t, &ring, &beta);
            t
        }));
        total
    })
}

/// Length-one Witt vectors against the Artin–Schreier solver.
pub fn length_one_coherence(exec: Exec, seed: u64, count: usize) -> SuiteReport {
    run_suite("length-one coherence", || {
        let qs = [2u64, 3, 4, 5, 9];
        let jobs: Vec<u64> = (0..count as u64).collect();
        run_jobs(exec, &jobs, |&i| {
            let mut t = Tally::default();
            let f = field(qs[(i % 5) as usize]);
            let mut rng = gen::rng(seed, 50_000 + i);
            let (alpha, input) = loop {
                let k = rng.gen_range(0..=3);
                let primes = gen::random_primes(&f, k, 2, &mut rng);
                let a = gen::random_ratfunc(&f, &primes, 2 * f.p(), 2 * f.p() as usize, &mut rng);
                if let Ok(input) = AsInput::new(&a) {
                    break (input.form.recombine(), input);
                }
            };
            let ctx = || format!("q={} alpha={}", f.q(), alpha);
            let Some(a) = t.ok(artin_schreier_genus(&input), ctx) else { return t };
            let w = (|| -> Result<GenusResult> {
                let ring = WittRing::new(&f, 1)?;
                witt_genus(&WittInput::new(&ring, &ring.vector(vec![alpha.clone()])?)?)
            })();
            let Some(w) = t.ok(w, ctx) else { return t };
            t.check(a.generators == w.generators, || format!("generators differ: {}", ctx()));
            t.check(
                (a.base_degree, a.genus_degree, a.infinity, a.geometric) == (w.base_degree, w.genus_degree, w.infinity, w.geometric),
                || format!("degrees or infinity data differ: {}", ctx()),
            );
            if let Details::Witt { eg_over_e, .. } = w.details {
                t.check(eg_over_e == a.eg_over_e(), || format!("[E_g:E] differs: {}", ctx()));
            }
            t
        })
    })
}

/// Every suite at its default size.
pub fn run_all(exec: Exec, seed: u64) -> Vec<SuiteReport> {
    vec![
        worked_witt_example(),
        witt_ring_soundness(exec, seed, 200),
        decomposition_invariants(exec, seed, 100),
        kummer_character_cross(exec),
        infinity_tables(exec),
        unit_group_oracle(exec),
        normalization_contracts(exec, seed, 200),
        length_one_coherence(exec, seed, 50),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_groups() {
        // C2 x C4: orders 1,2,2,2,4,4,4,4
        assert_eq!(invariant_factors_from_orders(&[1, 2, 2, 2, 4, 4, 4, 4]), [2, 4]);
        // C6
        assert_eq!(invariant_factors_from_orders(&[1, 2, 3, 3, 6, 6]), [6]);
        assert!(invariant_factors_from_orders(&[1]).is_empty());
    }

    #[test]
    fn enumeration_helpers() {
        let f = Field::prime(3).unwrap();
        assert_eq!(monic_polys(&f, 2).len(), 9);
        assert_eq!(residues(&f, 2).len(), 9);
        assert_eq!(divisors(&Poly::from_ints(&f, &[0, 0, 1])).len(), 3);
    }

    #[test]
    fn worked_example_suite_passes() {
        let r = worked_witt_example();
        assert!(r.passed(), "{:?}", r.failures);
    }
}

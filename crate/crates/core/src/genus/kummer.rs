use super::{check_result, Details, GenusResult, Generator, InfinityRecord, Kind, PrimeExponent};
use crate::error::{pre, Error, Result};
use crate::fq::{is_prime, FqElem};
use crate::linalg::rank_mod_p;
use crate::polyring::{current_seed, factor_with_seed, Poly};

/// Validated input `K = k(root(l, γD))`.
#[derive(Debug, Clone)]
pub struct KummerInput {
    pub l: u32,
    pub gamma: FqElem,
    pub d: Poly,
    /// primes of `D` with multiplicities; those with `l | deg P` first
    pub factors: Vec<(Poly, u32)>,
    /// number of primes with `l | deg P`
    pub s: usize,
    pub seed: u64,
}

impl KummerInput {
    pub fn new(l: u32, gamma: FqElem, d: &Poly) -> Result<KummerInput> {
        KummerInput::with_seed(l, gamma, d, current_seed())
    }

    pub fn with_seed(l: u32, gamma: FqElem, d: &Poly, seed: u64) -> Result<KummerInput> {
        let field = d.field();
        let q = field.q();
        if !is_prime(l as u64) || !(q - 1).is_multiple_of(l) {
            return pre(format!("l = {} must be a prime dividing q - 1 = {}", l, q - 1));
        }
        if gamma.is_zero() {
            return pre("gamma must be nonzero");
        }
        if d.is_zero() || d.lead() != FqElem::ONE {
            return pre(format!("D = {} must be monic", d));
        }
        if d.deg() < 1 {
            return Err(Error::Degenerate("D has degree 0, so K/k is unramified at every finite prime".into()));
        }
        let fz = factor_with_seed(d, seed)?;
        if let Some((p, e)) = fz.factors.iter().find(|(_, e)| *e >= l) {
            return pre(format!("D is not {}-power free: {} occurs with multiplicity {}", l, p, e));
        }
        let divisible = |p: &Poly| (p.deg() as u32).is_multiple_of(l);
        let mut factors: Vec<(Poly, u32)> = fz.factors.iter().filter(|(p, _)| divisible(p)).cloned().collect();
        let s = factors.len();
        factors.extend(fz.factors.iter().filter(|(p, _)| !divisible(p)).cloned());
        Ok(KummerInput { l, gamma, d: d.clone(), factors, s, seed })
    }
}

/// A radicand `c · Π P_i^{k_i}` as a vector over `Z/l`: the class of `c` in
/// `F_q^*/F_q^{*l}` (via the discrete log) followed by the `k_i`.
struct Radicand {
    constant: FqElem,
    exps: Vec<u32>,
}

impl Radicand {
    fn vector(&self, input: &KummerInput, with_constant: bool) -> Vec<i64> {
        let field = input.d.field();
        let mut v = Vec::with_capacity(self.exps.len() + 1);
        if with_constant {
            v.push(field.log(self.constant).expect("nonzero constant") as i64);
        }
        v.extend(self.exps.iter().map(|&k| k as i64));
        v
    }

    fn poly(&self, input: &KummerInput) -> Poly {
        let field = input.d.field();
        self.exps
            .iter()
            .zip(&input.factors)
            .fold(Poly::constant(field, self.constant), |acc, (&k, (p, _))| &acc * &p.pow(k as u64))
    }
}

fn rank(rows: &[Radicand], input: &KummerInput, with_constant: bool) -> usize {
    rank_mod_p(rows.iter().map(|r| r.vector(input, with_constant)).collect(), input.l as i64)
}

pub fn kummer_genus(input: &KummerInput) -> Result<GenusResult> {
    let field = input.d.field();
    let l = input.l;
    let r = input.factors.len();
    let s = input.s;
    let deg_d = input.d.deg() as u64;
    let minus_one = field.neg(FqElem::ONE);
    let sign = |deg: i64| if deg % 2 == 0 { FqElem::ONE } else { minus_one };
    let unit_vec = |i: usize| {
        let mut v = vec![0u32; r];
        v[i] = 1;
        v
    };

    let case = if !deg_d.is_multiple_of(l as u64) || s == r { 1 } else { 2 };
    if case == 2 && r == 1 {
        return Err(Error::Invariant(format!(
            "l = {} divides deg D = {} although the single prime has degree prime to l and multiplicity below l",
            l, deg_d
        )));
    }

    let first = Radicand { constant: input.gamma, exps: input.factors.iter().map(|(_, e)| *e).collect() };
    let mut genus_gens: Vec<Radicand> = Vec::new();
    let mut a_list = Vec::new();
    if case == 1 {
        for (i, (p, _)) in input.factors.iter().enumerate() {
            genus_gens.push(Radicand { constant: sign(p.deg()), exps: unit_vec(i) });
        }
    } else {
        for i in 0..s {
            genus_gens.push(Radicand { constant: FqElem::ONE, exps: unit_vec(i) });
        }
        let last = &input.factors[r - 1].0;
        let inv = crate::linalg::mod_inv(last.deg(), l as i64).expect("deg P_r prime to l");
        for j in s..r - 1 {
            let pj = &input.factors[j].0;
            let a = (-(pj.deg()) * inv).rem_euclid(l as i64) as u32;
            let mut exps = unit_vec(j);
            exps[r - 1] = a;
            genus_gens.push(Radicand { constant: FqElem::ONE, exps });
            a_list.push(PrimeExponent { prime: pj.to_string(), exponent: a as u64 });
        }
    }

    // E = k(root(l, (-1)^{deg D} D)), the geometric core of K
    let core = Radicand { constant: sign(deg_d as i64), exps: first.exps.clone() };
    let genus_rank = rank(&genus_gens, input, true);
    let mut with_core: Vec<Radicand> = genus_gens.iter().map(|g| Radicand { constant: g.constant, exps: g.exps.clone() }).collect();
    with_core.push(core);
    if rank(&with_core, input, true) != genus_rank {
        return Err(Error::Invariant("the geometric core of K is not contained in E_g".into()));
    }
    let eg_over_e = (l as u64).pow(genus_rank as u32 - 1);

    let gamma_is_power = field.is_lth_power(input.gamma, l)?;
    let (e, f, h) = if !deg_d.is_multiple_of(l as u64) {
        (l as u64, 1, 1)
    } else if gamma_is_power {
        (1, 1, l as u64)
    } else {
        (1, l as u64, 1)
    };

    let mut all = vec![first];
    all.extend(genus_gens);
    let all_rank = rank(&all, input, true);
    let geometric_by_rank = all_rank == rank(&all, input, false);
    let twist: u64 = input.factors.iter().map(|(p, e)| *e as u64 * p.deg() as u64).sum();
    let twisted_gamma = field.mul(input.gamma, sign(twist as i64));
    let geometric = field.is_lth_power(twisted_gamma, l)?;
    if geometric != geometric_by_rank {
        return Err(Error::Invariant("geometric flag disagrees with the radicand lattice".into()));
    }

    let details = Details::Kummer {
        l,
        gamma: field.fmt_elem(input.gamma),
        radicand: Poly::constant(field, input.gamma).mul_ref(&input.d).to_string(),
        factors: input
            .factors
            .iter()
            .map(|(p, e)| PrimeExponent { prime: p.to_string(), exponent: *e as u64 })
            .collect(),
        case,
        s: s as u32,
        r: r as u32,
        a_list,
        eg_over_e,
        compositum_over_k: (l as u64).pow(all_rank as u32),
    };
    let mut out = GenusResult::new(Kind::Kummer, field, details);
    out.seed = input.seed;
    out.generators = all.iter().map(|g| Generator::radical(l, &g.poly(input))).collect();
    out.base_degree = l as u64;
    out.genus_degree = eg_over_e * f;
    out.infinity = InfinityRecord { e, f, h, t: f };
    out.ramified_primes = input.factors.iter().map(|(p, _)| p.to_string()).collect();
    out.geometric = geometric;
    if !geometric {
        out.notes.push(format!(
            "the listed generators have a constant field of degree {} over F_q; [K_g:K] is reported as [E_g:E] t and a constant-field descent applies",
            l
        ));
    }
    check_result(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Field;
    use crate::parse::parse_poly;

    fn run(q: u64, l: u32, gamma: i64, d: &str) -> GenusResult {
        let f = Field::from_q(q).unwrap();
        let d = parse_poly(&f, d).unwrap();
        kummer_genus(&KummerInput::new(l, f.from_int(gamma), &d).unwrap()).unwrap()
    }

    fn radicands(r: &GenusResult) -> Vec<String> {
        r.generators
            .iter()
            .map(|g| match g {
                Generator::Radical { radicand, .. } => radicand.clone(),
                _ => panic!("not a radical"),
            })
            .collect()
    }

    #[test]
    fn three_linear_primes_over_f5() {
        let r = run(5, 2, 1, "T(T+1)(T+2)");
        assert_eq!(radicands(&r), ["T^3+3*T^2+2*T", "4*T", "4*T+4", "4*T+3"]);
        assert_eq!(r.genus_degree, 4);
        assert_eq!((r.infinity.e, r.infinity.t), (2, 1));
        assert!(r.geometric);
        assert!(matches!(r.details, Details::Kummer { case: 1, .. }));
    }

    #[test]
    fn split_and_inert_infinity() {
        let r = run(3, 2, 1, "T(T+1)");
        assert!(matches!(r.details, Details::Kummer { case: 2, s: 0, r: 2, .. }));
        assert_eq!(r.genus_degree, 1);
        assert_eq!((r.infinity.h, r.infinity.t), (2, 1));
        let r = run(3, 2, 2, "T(T+1)");
        assert_eq!(r.genus_degree, 2);
        assert_eq!((r.infinity.f, r.infinity.t), (2, 2));
        assert!(!r.geometric);
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn a_list_solves_degree_congruence() {
        // q=7, l=3: primes of degree 1, 1, 1 with deg D = 3
        let r = run(7, 3, 1, "T(T+1)(T+2)");
        match &r.details {
            Details::Kummer { case, a_list, .. } => {
                assert_eq!(*case, 2);
                assert_eq!(a_list.len(), 2);
                assert!(a_list.iter().all(|a| (1 + a.exponent) % 3 == 0));
            }
            _ => unreachable!(),
        }
        assert_eq!(r.genus_degree, 3);
    }

    #[test]
    fn rejects_bad_input() {
        let f = Field::prime(5).unwrap();
        let d = parse_poly(&f, "T^2(T+1)").unwrap();
        assert!(KummerInput::new(2, FqElem::ONE, &d).is_err());
        let d = parse_poly(&f, "T").unwrap();
        assert!(KummerInput::new(3, FqElem::ONE, &d).is_err());
        assert!(KummerInput::new(2, FqElem::ZERO, &d).is_err());
        assert!(matches!(
            KummerInput::new(2, FqElem::ONE, &Poly::one(&f)),
            Err(Error::Degenerate(_))
        ));
    }
}

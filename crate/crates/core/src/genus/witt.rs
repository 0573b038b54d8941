use super::{check_result, Details, GenusResult, Generator, InfinityRecord, Kind, WittComponent};
use crate::error::{Error, Result};
use crate::polyring::Poly;
use crate::witt::{decompose, infinity_data, leading_zeros, WittDecomposition, WittRing, WittVector};

/// `K = k(y)` with `F(y) -W y = β` in `W_n(k)`, together with the
/// decomposition of `β` into local parts.
#[derive(Debug, Clone)]
pub struct WittInput {
    pub ring: WittRing,
    pub beta: WittVector,
    pub decomposition: WittDecomposition,
}

impl WittInput {
    pub fn new(ring: &WittRing, beta: &WittVector) -> Result<WittInput> {
        let decomposition = decompose(ring, beta)?;
        if decomposition.components().all(|c| c.is_zero()) {
            return Err(Error::Degenerate(format!("{} lies in the image of F - 1, so K = k", beta)));
        }
        let sum = ring.sum(decomposition.components())?;
        let expected = ring.sub(beta, &ring.wp(&decomposition.witness)?)?;
        if sum != expected {
            return Err(Error::Invariant("Witt decomposition does not recombine to the input".into()));
        }
        Ok(WittInput { ring: ring.clone(), beta: beta.clone(), decomposition })
    }
}

fn entries(v: &WittVector) -> Vec<String> {
    v.entries().iter().map(|a| a.to_string()).collect()
}

fn component(prime: Option<&Poly>, v: &WittVector) -> WittComponent {
    WittComponent {
        prime: prime.map(|p| p.to_string()),
        entries: entries(v),
        order_exponent: (v.len() - leading_zeros(v)) as u32,
    }
}

pub fn witt_genus(input: &WittInput) -> Result<GenusResult> {
    let ring = &input.ring;
    let field = ring.field();
    let p = field.p() as u64;
    let n = ring.len();
    let dec = &input.decomposition;

    let order_exp = |v: &WittVector| (n - leading_zeros(v)) as u32;
    let delta_exps: Vec<u32> = dec.deltas.iter().map(|(_, d)| order_exp(d)).collect();
    let mu_exp = order_exp(&dec.mu);
    let beta_exp = delta_exps.iter().copied().chain([mu_exp]).max().unwrap_or(0);
    if beta_exp == 0 {
        return Err(Error::Degenerate("all components vanish".into()));
    }
    let shift = n - beta_exp as usize;

    // the defining vector is V^shift of a vector of length n - shift
    let inf = infinity_data(&dec.mu)?;
    let (s, t) = (inf.s - shift, inf.t - shift);
    let h = inf.h / p.pow(shift as u32);

    let mut generators = Vec::new();
    for (i, (prime, d)) in dec.deltas.iter().enumerate() {
        generators.push(Generator::equation(field.p(), &format!("y_{}", i + 1), Some(prime), entries(d)));
    }
    if !dec.mu.is_zero() {
        generators.push(Generator::equation(field.p(), "z", None, entries(&dec.mu)));
    }

    let eg_exp: u32 = delta_exps.iter().sum();
    let eg_over_e = p.pow(eg_exp - delta_exps.iter().copied().max().unwrap_or(0));
    let details = Details::Witt {
        n,
        beta: entries(&input.beta),
        deltas: dec.deltas.iter().map(|(prime, d)| component(Some(prime), d)).collect(),
        mu: component(None, &dec.mu),
        witness: entries(&dec.witness),
        effective_length: beta_exp as usize,
        s,
        t,
        eg_over_e,
    };
    let mut out = GenusResult::new(Kind::Witt, field, details);
    out.generators = generators;
    out.base_degree = p.pow(beta_exp);
    out.genus_degree = p.pow(eg_exp + mu_exp - beta_exp);
    out.infinity = InfinityRecord { e: inf.e, f: inf.f, h, t: inf.f };
    out.ramified_primes = dec.deltas.iter().map(|(prime, _)| prime.to_string()).collect();
    out.geometric = t == s;
    if shift > 0 {
        out.notes.push(format!(
            "the first {} entries of every component vanish; K/k has degree p^{}",
            shift, beta_exp
        ));
    }
    if !out.geometric {
        out.notes.push(format!("z generates a constant extension of degree p^{}", t - s));
    }
    check_result(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Field;
    use crate::genus::{artin_schreier_genus, AsInput};
    use crate::parse::parse_ratfunc;

    fn run(q: u64, n: usize, beta: &str) -> Result<GenusResult> {
        let f = Field::from_q(q).unwrap();
        let ring = WittRing::new(&f, n).unwrap();
        witt_genus(&WittInput::new(&ring, &ring.parse(beta)?)?)
    }

    fn rhs(r: &GenusResult) -> Vec<(String, Vec<String>)> {
        r.generators
            .iter()
            .map(|g| match g {
                Generator::Equation { label, rhs, .. } => (label.clone(), rhs.clone()),
                _ => panic!(),
            })
            .collect()
    }

    #[test]
    fn worked_example_length_two() {
        let r = run(3, 2, "(1/T + 1, 1/(T+1) + T)").unwrap();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(
            rhs(&r),
            [
                ("y_1".to_string(), s(&["1/T", "(T+1)/T^2"])),
                ("y_2".to_string(), s(&["0", "1/(T+1)"])),
                ("z".to_string(), s(&["1", "T"])),
            ]
        );
        assert_eq!(r.base_degree, 9);
        assert_eq!(r.genus_degree, 27);
        assert_eq!((r.infinity.e, r.infinity.f, r.infinity.h), (3, 3, 1));
        assert!(!r.geometric);
        assert_eq!(r.eg_over_e(), 3);
    }

    #[test]
    fn split_infinity_single_prime() {
        let r = run(3, 2, "(1/T, 0)").unwrap();
        assert_eq!(r.generators.len(), 1);
        assert_eq!((r.infinity.e, r.infinity.f, r.infinity.h), (1, 1, 9));
        assert_eq!(r.genus_degree, 1);
    }

    #[test]
    fn leading_zero_levels_shorten_the_extension() {
        let r = run(3, 2, "(0, 1/T)").unwrap();
        assert_eq!(r.base_degree, 3);
        assert_eq!((r.infinity.e, r.infinity.f, r.infinity.h), (1, 1, 3));
        assert!(matches!(r.details, Details::Witt { effective_length: 1, s: 1, t: 1, .. }));
    }

    #[test]
    fn length_one_matches_artin_schreier() {
        let f = Field::prime(3).unwrap();
        for alpha in ["1/T + 1/(T+1) + T", "1/T", "1/T + 1", "1/T^3 + 2*T^4", "T^2"] {
            let w = run(3, 1, alpha).unwrap();
            let a = artin_schreier_genus(&AsInput::new(&parse_ratfunc(&f, alpha).unwrap()).unwrap()).unwrap();
            assert_eq!(w.generators, a.generators, "{}", alpha);
            assert_eq!((w.base_degree, w.genus_degree, w.infinity), (a.base_degree, a.genus_degree, a.infinity));
            assert_eq!(w.geometric, a.geometric);
        }
    }

    #[test]
    fn degenerate() {
        let z = run(3, 2, "(0, 0)");
        assert!(matches!(z, Err(Error::Degenerate(_))), "{:?}", z);
        let f = Field::prime(3).unwrap();
        let ring = WittRing::new(&f, 2).unwrap();
        let beta = ring.wp(&ring.parse("(T, 1/T)").unwrap()).unwrap();
        assert!(matches!(WittInput::new(&ring, &beta), Err(Error::Degenerate(_))));
    }
}

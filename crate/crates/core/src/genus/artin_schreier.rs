use super::{check_result, Details, GenusResult, Generator, InfinityRecord, Kind, PfRecord};
use crate::error::{Error, Result};
use crate::ratfunc::{as_class_rank, as_normalize, NormalizationWitness, PartialFractionForm, RatFunc};

/// `K = k(y)` with `y^p - y = α`, together with the normal form of `α`.
#[derive(Debug, Clone)]
pub struct AsInput {
    pub alpha: RatFunc,
    pub form: PartialFractionForm,
    pub witness: NormalizationWitness,
}

impl AsInput {
    pub fn new(alpha: &RatFunc) -> Result<AsInput> {
        let (form, witness) = as_normalize(alpha)?;
        if form.terms.is_empty() && form.polypart.is_zero() {
            return Err(Error::Degenerate(format!("{} lies in the image of x^p - x, so K = k", alpha)));
        }
        Ok(AsInput { alpha: alpha.clone(), form, witness })
    }
}

pub fn artin_schreier_genus(input: &AsInput) -> Result<GenusResult> {
    let alpha = &input.alpha;
    let field = alpha.field();
    let p = field.p() as u64;
    let form = &input.form;
    let f = &form.polypart;
    let r = form.terms.len();

    let mut generators = Vec::new();
    let mut classes = Vec::new();
    for (i, term) in form.terms.iter().enumerate() {
        let rhs = term.to_ratfunc();
        generators.push(Generator::equation(field.p(), &format!("y_{}", i + 1), Some(&term.prime), vec![rhs.to_string()]));
        classes.push(rhs);
    }
    let eg_rank = as_class_rank(&classes)?;
    if eg_rank != r {
        return Err(Error::Invariant(format!("{} normalized terms span a space of rank {}", r, eg_rank)));
    }
    if !f.is_zero() {
        generators.push(Generator::equation(field.p(), "z", None, vec![f.to_string()]));
        classes.push(RatFunc::from_poly(f.clone()));
    }
    let full_rank = as_class_rank(&classes)?;

    let (e, fi, h) = if f.is_zero() {
        (1, 1, p)
    } else if f.deg() == 0 {
        (1, p, 1)
    } else {
        (p, 1, 1)
    };

    let details = Details::ArtinSchreier {
        alpha: alpha.to_string(),
        normal_form: PfRecord::of(form),
        witness: input.witness.w.to_string(),
        eg_over_e: p.pow(r.saturating_sub(1) as u32),
    };
    let mut out = GenusResult::new(Kind::ArtinSchreier, field, details);
    out.generators = generators;
    out.base_degree = p;
    out.genus_degree = p.pow(full_rank as u32 - 1);
    out.infinity = InfinityRecord { e, f: fi, h, t: fi };
    out.ramified_primes = form.terms.iter().map(|t| t.prime.to_string()).collect();
    out.geometric = !(f.deg() == 0 && !f.is_zero());
    if !out.geometric {
        out.notes.push("the constant equation z^p - z = f generates the constant extension of degree p".into());
    }
    if r == 0 && f.deg() == 0 {
        out.notes.push("K/k is a constant field extension".into());
    }
    check_result(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Field;
    use crate::parse::parse_ratfunc;

    fn run(q: u64, alpha: &str) -> Result<GenusResult> {
        let f = Field::from_q(q).unwrap();
        artin_schreier_genus(&AsInput::new(&parse_ratfunc(&f, alpha).unwrap())?)
    }

    fn rhs(r: &GenusResult) -> Vec<String> {
        r.generators
            .iter()
            .map(|g| match g {
                Generator::Equation { label, rhs, .. } => format!("{}: {}", label, rhs.join(",")),
                _ => panic!(),
            })
            .collect()
    }

    #[test]
    fn ramified_infinity() {
        let r = run(3, "1/T + 1/(T+1) + T").unwrap();
        assert_eq!(rhs(&r), ["y_1: 1/T", "y_2: 1/(T+1)", "z: T"]);
        assert_eq!(r.genus_degree, 9);
        assert_eq!((r.infinity.e, r.infinity.t), (3, 1));
        assert!(r.geometric);
    }

    #[test]
    fn split_infinity() {
        let r = run(3, "1/T").unwrap();
        assert_eq!(r.genus_degree, 1);
        assert_eq!(r.infinity.h, 3);
        let r = run(3, "1/T + 1/(T+1)").unwrap();
        assert_eq!(r.genus_degree, 3);
        assert_eq!(r.infinity.h, 3);
    }

    #[test]
    fn inert_infinity() {
        let r = run(3, "1/T + 1").unwrap();
        assert_eq!(r.genus_degree, 3);
        assert_eq!((r.infinity.f, r.infinity.t), (3, 3));
        assert!(!r.geometric);
    }

    #[test]
    fn normalization_is_applied_first() {
        // 1/T^3 = (1/T)^3 - 1/T + 1/T
        let r = run(3, "1/T^3 + T^3").unwrap();
        assert_eq!(rhs(&r), ["y_1: 1/T", "z: T"]);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(run(3, "T^3 - T"), Err(Error::Degenerate(_))));
        assert!(matches!(run(3, "0"), Err(Error::Degenerate(_))));
    }
}

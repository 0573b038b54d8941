use super::{check_result, Details, GenusResult, Generator, InfinityRecord, Kind, PrimeExponent};
use crate::chargroup::{genus_from_characters, CharSubgroup};
use crate::error::Result;

/// Genus field of the subfield of `k(Λ_N)` fixed by the kernel of `X`.
pub fn cyclotomic_subfield_genus(x: &CharSubgroup) -> Result<GenusResult> {
    let g = genus_from_characters(x)?;
    let group = x.group();
    let field = group.field();
    let modulus = group.modulus().to_string();
    let orders = group.orders().to_vec();
    let details = Details::Cyclotomic {
        modulus: modulus.clone(),
        orders: orders.clone(),
        x_order: x.order(),
        y_order: g.y.order(),
        y1_order: g.y1.order(),
        ramification: g
            .ramification
            .iter()
            .map(|(p, e)| PrimeExponent { prime: p.to_string(), exponent: *e })
            .collect(),
    };
    let mut out = GenusResult::new(Kind::Cyclotomic, field, details);
    out.generators = vec![Generator::Characters {
        modulus,
        orders,
        exponents: g.kg.canonical_generators().iter().map(|c| c.exps().to_vec()).collect(),
    }];
    out.base_degree = x.order();
    out.genus_degree = g.degree;
    let e = g.infinity_e;
    out.infinity = InfinityRecord { e, f: 1, h: x.order() / e, t: 1 };
    out.ramified_primes = g.ramification.iter().filter(|(_, e)| *e > 1).map(|(p, _)| p.to_string()).collect();
    check_result(out)
}

//! Genus-field solvers for Kummer, Artin–Schreier, Witt and cyclotomic
//! extensions, all reporting a [`GenusResult`].

mod artin_schreier;
mod cyclotomic;
mod kummer;
mod witt;

pub use artin_schreier::{artin_schreier_genus, AsInput};
pub use cyclotomic::cyclotomic_subfield_genus;
pub use kummer::{kummer_genus, KummerInput};
pub use witt::{witt_genus, WittInput};

use serde::{Deserialize, Serialize};

use crate::fq::Field;
use crate::polyring::{current_seed, Poly};
use crate::ratfunc::PartialFractionForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Kummer,
    ArtinSchreier,
    Witt,
    Cyclotomic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldRecord {
    pub p: u32,
    pub f: u32,
    pub q: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

impl FieldRecord {
    pub fn of(field: &Field) -> FieldRecord {
        let modulus = (field.degree() > 1).then(|| {
            let m: Vec<i64> = field.modulus().iter().map(|&c| c as i64).collect();
            let prime = Field::prime(field.p()).expect("prime subfield");
            Poly::from_ints(&prime, &m).to_string().replace('T', field.symbol())
        });
        FieldRecord { p: field.p(), f: field.degree(), q: field.q(), modulus }
    }
}

/// One defining equation of the genus field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    /// `l`-th root of `radicand`
    Radical { l: u32, radicand: String, display: String },
    /// `F(y) -W y = rhs` (an Artin–Schreier equation when `rhs` has one
    /// entry); `prime` is the only finite pole, if any
    Equation {
        label: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prime: Option<String>,
        rhs: Vec<String>,
        display: String,
    },
    /// character group given by exponent vectors on the basis of
    /// `(F_q[T]/modulus)^*` with the listed orders
    Characters { modulus: String, orders: Vec<u64>, exponents: Vec<Vec<u64>> },
}

impl Generator {
    pub(crate) fn radical(l: u32, radicand: &Poly) -> Generator {
        let r = radicand.to_string();
        Generator::Radical { l, display: format!("root({}, {})", l, r), radicand: r }
    }

    pub(crate) fn equation(p: u32, label: &str, prime: Option<&Poly>, rhs: Vec<String>) -> Generator {
        let display = if rhs.len() == 1 {
            format!("{label}^{p} - {label} = {}", rhs[0])
        } else {
            format!("{label}^{p} -W {label} = ({})", rhs.join(", "))
        };
        Generator::Equation { label: label.to_string(), prime: prime.map(|x| x.to_string()), rhs, display }
    }
}

/// Behaviour of the infinite place in `K/k`; `t` is the degree of the
/// places of `K` above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfinityRecord {
    pub e: u64,
    pub f: u64,
    pub h: u64,
    pub t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeExponent {
    pub prime: String,
    pub exponent: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PfTermRecord {
    pub prime: String,
    pub e: u32,
    pub numerator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PfRecord {
    pub terms: Vec<PfTermRecord>,
    pub polypart: String,
}

impl PfRecord {
    pub fn of(form: &PartialFractionForm) -> PfRecord {
        PfRecord {
            terms: form
                .terms
                .iter()
                .map(|t| PfTermRecord { prime: t.prime.to_string(), e: t.exponent, numerator: t.numerator.to_string() })
                .collect(),
            polypart: form.polypart.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WittComponent {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
    pub entries: Vec<String>,
    /// `log_p` of the order of the class
    pub order_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Details {
    Kummer {
        l: u32,
        gamma: String,
        radicand: String,
        factors: Vec<PrimeExponent>,
        /// 1 or 2, the two shapes of the generator list
        case: u32,
        s: u32,
        r: u32,
        /// `(P_j, a_j)` with `deg P_j + a_j deg P_r ≡ 0 mod l`
        a_list: Vec<PrimeExponent>,
        eg_over_e: u64,
        compositum_over_k: u64,
    },
    ArtinSchreier {
        alpha: String,
        normal_form: PfRecord,
        witness: String,
        eg_over_e: u64,
    },
    Witt {
        n: usize,
        beta: Vec<String>,
        deltas: Vec<WittComponent>,
        mu: WittComponent,
        witness: Vec<String>,
        /// `[K:k] = p^effective_length`
        effective_length: usize,
        s: usize,
        t: usize,
        eg_over_e: u64,
    },
    Cyclotomic {
        modulus: String,
        orders: Vec<u64>,
        x_order: u64,
        y_order: u64,
        y1_order: u64,
        ramification: Vec<PrimeExponent>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenusResult {
    pub kind: Kind,
    pub field: FieldRecord,
    /// seed used for equal-degree factorization
    pub seed: u64,
    pub generators: Vec<Generator>,
    /// `[K:k]`
    pub base_degree: u64,
    /// `[K_g:K]`
    pub genus_degree: u64,
    pub infinity: InfinityRecord,
    pub ramified_primes: Vec<String>,
    /// constant field of the compositum of the generators is F_q
    pub geometric: bool,
    pub details: Details,
    pub notes: Vec<String>,
}

impl GenusResult {
    pub(crate) fn new(kind: Kind, field: &Field, details: Details) -> GenusResult {
        GenusResult {
            kind,
            field: FieldRecord::of(field),
            seed: current_seed(),
            generators: Vec::new(),
            base_degree: 1,
            genus_degree: 1,
            infinity: InfinityRecord { e: 1, f: 1, h: 1, t: 1 },
            ramified_primes: Vec::new(),
            geometric: true,
            details,
            notes: Vec::new(),
        }
    }

    /// `[E_g:E]` as recorded in the details.
    pub fn eg_over_e(&self) -> u64 {
        match &self.details {
            Details::Kummer { eg_over_e, .. }
            | Details::ArtinSchreier { eg_over_e, .. }
            | Details::Witt { eg_over_e, .. } => *eg_over_e,
            Details::Cyclotomic { .. } => self.genus_degree,
        }
    }

    /// Checks the bookkeeping identities every record must satisfy:
    /// `e f h = [K:k]`, `t = f`, and `[K_g:K] = [E_g:E] t` when the
    /// compositum is geometric and the infinite place is tame.
    pub fn check(&self) -> Result<(), String> {
        let i = &self.infinity;
        if i.e * i.f * i.h != self.base_degree {
            return Err(format!("e f h = {} but [K:k] = {}", i.e * i.f * i.h, self.base_degree));
        }
        if i.t != i.f {
            return Err(format!("t = {} differs from the inertia degree {}", i.t, i.f));
        }
        let tame = !i.e.is_multiple_of(self.field.p as u64);
        if self.geometric && tame && self.genus_degree != self.eg_over_e() * i.t {
            return Err(format!(
                "[K_g:K] = {} but [E_g:E] t = {}",
                self.genus_degree,
                self.eg_over_e() * i.t
            ));
        }
        Ok(())
    }
}

pub(crate) fn check_result(r: GenusResult) -> crate::error::Result<GenusResult> {
    r.check().map_err(crate::error::Error::Invariant)?;
    Ok(r)
}

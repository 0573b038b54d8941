//! Job descriptions (from flags or a JSON file) and their execution.

use std::sync::Arc;

use genusfield::chargroup::{CharSubgroup, Character, UnitGroup};
use genusfield::fq::prime_power;
use genusfield::genus::{
    artin_schreier_genus, cyclotomic_subfield_genus, kummer_genus, witt_genus, AsInput, GenusResult, KummerInput,
    WittInput,
};
use genusfield::parse::{parse_elem, parse_poly, parse_poly_in, parse_ratfunc};
use genusfield::polyring::{with_seed, DEFAULT_SEED};
use genusfield::witt::{WittRing, DEFAULT_WITT_CAP};
use genusfield::{Error, Field, FieldSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldInput {
    pub p: u32,
    #[serde(default = "one")]
    pub f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Job {
    Kummer {
        l: u32,
        gamma: String,
        #[serde(rename = "D")]
        d: String,
    },
    ArtinSchreier {
        alpha: String,
    },
    Witt {
        beta: Vec<String>,
    },
    Cyclotomic {
        #[serde(rename = "N")]
        n: String,
        characters: Vec<Vec<i64>>,
    },
}

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::Kummer { .. } => "kummer",
            Job::ArtinSchreier { .. } => "as",
            Job::Witt { .. } => "witt",
            Job::Cyclotomic { .. } => "cyclo",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witt_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Output>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: FieldInput,
    pub job: Job,
    #[serde(default)]
    pub options: Options,
}

pub fn field_input_from_q(q: u64, modulus: Option<String>) -> Result<FieldInput, Error> {
    let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("q = {} is not a prime power", q)))?;
    Ok(FieldInput { p, f, modulus })
}

pub fn build_field(input: &FieldInput) -> Result<Field, Error> {
    let spec = match &input.modulus {
        None => FieldSpec::new(input.p, input.f)?,
        Some(m) => {
            let prime = Field::prime(input.p)?;
            let poly = parse_poly_in(&prime, m, "u")?;
            if poly.deg() != input.f as i64 {
                return Err(Error::InvalidField(format!("modulus {} has degree {} but f = {}", m, poly.deg(), input.f)));
            }
            let coeffs = poly.coeffs().iter().map(|&c| prime.coeffs(c)[0]).collect();
            FieldSpec::with_modulus(input.p, coeffs)
        }
    };
    Field::new(spec)
}

pub fn run(spec: &JobSpec) -> Result<GenusResult, Error> {
    let field = build_field(&spec.field)?;
    let seed = spec.options.seed.unwrap_or(DEFAULT_SEED);
    let cap = spec.options.witt_cap.unwrap_or(DEFAULT_WITT_CAP);
    with_seed(seed, || match &spec.job {
        Job::Kummer { l, gamma, d } => {
            let gamma = parse_elem(&field, gamma)?;
            let d = parse_poly(&field, d)?;
            kummer_genus(&KummerInput::with_seed(*l, gamma, &d, seed)?)
        }
        Job::ArtinSchreier { alpha } => artin_schreier_genus(&AsInput::new(&parse_ratfunc(&field, alpha)?)?),
        Job::Witt { beta } => {
            let ring = WittRing::with_cap(&field, beta.len(), cap)?;
            let entries = beta.iter().map(|b| parse_ratfunc(&field, b)).collect::<Result<Vec<_>, _>>()?;
            witt_genus(&WittInput::new(&ring, &ring.vector(entries)?)?)
        }
        Job::Cyclotomic { n, characters } => {
            let n = parse_poly(&field, n)?;
            let group = Arc::new(UnitGroup::new(&n)?);
            let gens = characters.iter().map(|c| Character::new(&group, c)).collect::<Result<Vec<_>, _>>()?;
            cyclotomic_subfield_genus(&CharSubgroup::new(&group, gens)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let ok = r#"{"field":{"p":3},"job":{"artin-schreier":{"alpha":"1/T"}}}"#;
        assert!(serde_json::from_str::<JobSpec>(ok).is_ok());
        for bad in [
            r#"{"field":{"p":3},"job":{"artin-schreier":{"alpha":"1/T"}},"extra":1}"#,
            r#"{"field":{"p":3,"q":3},"job":{"artin-schreier":{"alpha":"1/T"}}}"#,
            r#"{"field":{"p":3},"job":{"artin-schreier":{"alpha":"1/T","beta":"T"}}}"#,
            r#"{"field":{"p":3},"job":{"artin-schreier":{"alpha":"1/T"}},"options":{"threads":2}}"#,
            r#"{"field":{"p":3},"job":{"hilbert":{}}}"#,
        ] {
            assert!(serde_json::from_str::<JobSpec>(bad).is_err(), "{}", bad);
        }
    }

    #[test]
    fn explicit_modulus() {
        let f = build_field(&FieldInput { p: 3, f: 2, modulus: Some("u^2+2*u+2".into()) }).unwrap();
        assert_eq!(f.q(), 9);
        assert!(build_field(&FieldInput { p: 3, f: 2, modulus: Some("u^2+1+u^3".into()) }).is_err());
        assert!(build_field(&FieldInput { p: 3, f: 2, modulus: Some("u^2+2".into()) }).is_err());
    }
}

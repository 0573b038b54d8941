//! Text and canonical JSON renderings of results.

use genusfield::genus::{Details, Generator, GenusResult};
use genusfield::selftest::SuiteReport;
use serde::Serialize;

/// Pretty JSON with keys sorted at every level and a trailing newline.
/// Parsing the output and rendering it again gives the same bytes.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("results serialize to JSON");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn text(r: &GenusResult) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    let fr = &r.field;
    match &fr.modulus {
        Some(m) => line(format!("field: F_{} = F_{}[u]/({})", fr.q, fr.p, m)),
        None => line(format!("field: F_{}", fr.q)),
    }
    line(format!("kind: {}", serde_json::to_value(r.kind).unwrap().as_str().unwrap()));
    line(format!("[K:k] = {}", r.base_degree));
    line(format!("[K_g:K] = {}", r.genus_degree));
    let i = &r.infinity;
    let indices = match &r.details {
        Details::Witt { s, t, .. } => format!(" (indices s={}, t={})", s, t),
        _ => String::new(),
    };
    line(format!("infinity: e={} f={} h={} t={}{}", i.e, i.f, i.h, i.t, indices));
    line(format!("geometric: {}", r.geometric));
    line("generators:".into());
    for g in &r.generators {
        match g {
            Generator::Radical { display, .. } | Generator::Equation { display, .. } => line(format!("  {}", display)),
            Generator::Characters { modulus, orders, exponents } => {
                line(format!("  characters mod {} on a basis of orders {:?}:", modulus, orders));
                for e in exponents {
                    line(format!("    {:?}", e));
                }
            }
        }
    }
    if r.ramified_primes.is_empty() {
        line("ramified primes: none".into());
    } else {
        line(format!("ramified primes: {}", r.ramified_primes.join(", ")));
    }
    match &r.details {
        Details::Kummer { case, s, r: rr, a_list, .. } => {
            line(format!("case {} with s={} r={}", case, s, rr));
            for a in a_list {
                line(format!("  a = {} for {}", a.exponent, a.prime));
            }
        }
        Details::ArtinSchreier { normal_form, witness, .. } => {
            let mut parts: Vec<String> = normal_form
                .terms
                .iter()
                .map(|t| format!("({})/({})^{}", t.numerator, t.prime, t.e))
                .collect();
            parts.push(normal_form.polypart.clone());
            line(format!("normal form: {}", parts.join(" + ")));
            line(format!("witness: {}", witness));
        }
        Details::Witt { witness, .. } => line(format!("witness: ({})", witness.join(", "))),
        Details::Cyclotomic { x_order, y_order, y1_order, .. } => {
            line(format!("|X| = {}, |Y| = {}, |Y_1| = {}", x_order, y_order, y1_order))
        }
    }
    for n in &r.notes {
        line(format!("note: {}", n));
    }
    out
}

#[derive(Serialize)]
pub struct SuiteRecord {
    pub name: String,
    pub checked: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct SelftestRecord {
    pub passed: bool,
    pub seed: u64,
    pub suites: Vec<SuiteRecord>,
}

impl SelftestRecord {
    pub fn new(seed: u64, reports: &[SuiteReport]) -> SelftestRecord {
        SelftestRecord {
            passed: reports.iter().all(|r| r.passed()),
            seed,
            suites: reports
                .iter()
                .map(|r| SuiteRecord {
                    name: r.name.to_string(),
                    checked: r.checked as u64,
                    failures: r.failures.clone(),
                    passed: r.passed(),
                })
                .collect(),
        }
    }
}

pub fn selftest_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{} {}: {} checks, {} failures\n",
            if r.passed() { "PASS" } else { "FAIL" },
            r.name,
            r.checked,
            r.failures.len()
        ));
        for f in &r.failures {
            out.push_str(&format!("    {}\n", f));
        }
    }
    out
}

use rayon::prelude::*;
use serde_json::{json, Value};

use nlci::graded::generator_degrees;
use nlci::interchange::parse_polys;
use nlci::koszul::{
    ci_hilbert, ci_scheme_dim, count_half_degrees, flag_scheme_dim, half_degree_pairs, locus_codim,
    normalize_degrees, socle_degree, ChiOracle,
};
use nlci::oracle::{
    certify_regular_sequence, recover_ideal, seeded_rng, CertMode, CIWitness, TruncatedIdeal,
};
use nlci::verify::{run_trial, TrialReport, VerifyOptions};
use nlci::Poly;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Cell, Report, Row};

type Result<T> = std::result::Result<T, CliError>;

fn chi_label(chi: &ChiOracle) -> String {
    match chi.n_vars() {
        Some(n) => format!("projective({n})"),
        None => format!("table(through {})", chi.valid_through().unwrap_or(-1)),
    }
}

fn config_value(cfg: &RunConfig) -> Value {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    v["chi"] = json!(chi_label(&cfg.chi));
    v
}

pub fn codim(cfg: &RunConfig) -> Result<Report> {
    let chi = &cfg.chi;
    let label = chi_label(chi);
    let mut rows = Vec::new();
    for &e in &cfg.range {
        let norm = normalize_degrees(&cfg.degrees, e)?;
        let d = &norm.degrees;
        let de = json!({"chi": label, "degrees": d, "e": e});
        let mut row = Row::default();
        row.push("e", Cell::param(e))
            .push(
                "degrees",
                Cell::new(json!(d), "normalize_degrees", json!({"degrees": cfg.degrees, "e": e})),
            )
            .push("a", Cell::new(count_half_degrees(d, e), "count_half_degrees", json!({"degrees": d, "e": e})))
            .push("c", Cell::new(half_degree_pairs(d, e), "half_degree_pairs", json!({"degrees": d, "e": e})))
            .push(
                "ci_scheme_dim",
                Cell::new(ci_scheme_dim(chi, d)?, "ci_scheme_dim", json!({"chi": label, "degrees": d})),
            )
            .push("flag_scheme_dim", Cell::new(flag_scheme_dim(chi, d, e)?, "flag_scheme_dim", de.clone()))
            .push("locus_codim", Cell::new(locus_codim(chi, d, e)?, "locus_codim", de));
        rows.push(row);
    }
    Ok(Report {
        config: config_value(cfg),
        rows,
        trials: None,
        failures: Vec::new(),
    })
}

pub fn hilbert(cfg: &RunConfig) -> Result<Report> {
    let chi = &cfg.chi;
    let label = chi_label(chi);
    let mut rows = Vec::new();
    for &m in &cfg.range {
        let mut row = Row::default();
        row.push("m", Cell::param(m)).push(
            "h",
            Cell::new(
                ci_hilbert(chi, &cfg.degrees, m as i64)?,
                "ci_hilbert",
                json!({"chi": label, "degrees": cfg.degrees, "m": m}),
            ),
        );
        rows.push(row);
    }
    Ok(Report {
        config: config_value(cfg),
        rows,
        trials: None,
        failures: Vec::new(),
    })
}

pub fn dims(cfg: &RunConfig) -> Result<Report> {
    let chi = &cfg.chi;
    let label = chi_label(chi);
    let d = &cfg.degrees;
    let base = ci_scheme_dim(chi, d)?;
    let mut rows = Vec::new();
    for &e in &cfg.range {
        let de = json!({"chi": label, "degrees": d, "e": e});
        let mut row = Row::default();
        row.push("e", Cell::param(e))
            .push("degrees", Cell::param(json!(d)))
            .push("ci_scheme_dim", Cell::new(base, "ci_scheme_dim", json!({"chi": label, "degrees": d})))
            .push("chi_e", Cell::new(chi.chi(e as i64)?, "chi", json!({"chi": label, "m": e})))
            .push("h_e", Cell::new(ci_hilbert(chi, d, e as i64)?, "ci_hilbert", de.clone()))
            .push("flag_scheme_dim", Cell::new(flag_scheme_dim(chi, d, e)?, "flag_scheme_dim", de));
        rows.push(row);
    }
    Ok(Report {
        config: config_value(cfg),
        rows,
        trials: None,
        failures: Vec::new(),
    })
}

fn cert_summary(r: &TrialReport) -> String {
    r.certificates
        .iter()
        .map(|c| match c.mode {
            CertMode::Full => "full",
            CertMode::PartialHeuristic => "partial",
        })
        .collect::<Vec<_>>()
        .join("+")
}

pub fn verify(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.n_vars.expect("validated");
    let opts = VerifyOptions {
        sabotage: cfg.sabotage,
        check_smooth: cfg.check_smooth,
    };
    let jobs: Vec<(u32, u64)> = cfg
        .range
        .iter()
        .flat_map(|&e| (0..cfg.trials).map(move |t| (e, t)))
        .collect();
    // rayon's indexed collect keeps job order regardless of completion order
    let results: Vec<nlci::Result<TrialReport>> = jobs
        .par_iter()
        .map(|&(e, t)| run_trial(cfg.field, n, &cfg.degrees, e, cfg.seed, t, opts))
        .collect();
    let reports = results.into_iter().collect::<nlci::Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for r in &reports {
        let certs = cert_summary(r);
        for c in &r.checks {
            let mismatched = c.comparisons.iter().filter(|x| !x.holds()).count();
            let mut row = Row::default();
            row.push("e", Cell::param(r.e))
                .push("degrees", Cell::new(json!(r.degrees), "normalize_degrees", json!({"degrees": cfg.degrees, "e": r.e})))
                .push("trial", Cell::param(r.trial))
                .push("certificates", Cell::new(certs.clone(), "certify_regular_sequence", Value::Null))
                .push("family", Cell::param(c.family.name()))
                .push("check", Cell::param(c.name.clone()))
                .push("pass", Cell::new(c.pass, c.family.name(), Value::Null))
                .push("compared", Cell::new(c.comparisons.len(), c.family.name(), Value::Null))
                .push("mismatched", Cell::new(mismatched, c.family.name(), Value::Null));
            rows.push(row);
            if !c.pass {
                failures.push(json!({
                    "e": r.e,
                    "trial": r.trial,
                    "seed": r.seed,
                    "family": c.family,
                    "check": c.name,
                    "detail": c.detail,
                    "mismatches": c.comparisons.iter().filter(|x| !x.holds()).collect::<Vec<_>>(),
                }));
            }
        }
    }
    Ok(Report {
        config: config_value(cfg),
        rows,
        trials: Some(reports),
        failures,
    })
}

struct RecoverSource {
    e: Option<u32>,
    gens: Vec<Poly>,
}

pub fn recover(cfg: &RunConfig, input: Option<&std::path::Path>) -> Result<Report> {
    let field = cfg.field;
    let sources: Vec<RecoverSource> = match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let gens = parse_polys(field, &text)?;
            let n = gens.first().map(Poly::n_vars).unwrap_or(0);
            if let Some(expected) = cfg.n_vars {
                if expected != n {
                    return Err(CliError::Validation(format!(
                        "input has {n} variables, configuration expects {expected}"
                    )));
                }
            }
            vec![RecoverSource { e: None, gens }]
        }
        None => {
            let n = cfg.n_vars.expect("validated");
            cfg.range
                .iter()
                .map(|&e| {
                    let d = normalize_degrees(&cfg.degrees, e)?.degrees;
                    let w = CIWitness::random(&mut seeded_rng(cfg.seed, 0), field, n, &d, e)?;
                    Ok(RecoverSource {
                        e: Some(e),
                        gens: w.generators(),
                    })
                })
                .collect::<Result<_>>()?
        }
    };

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for src in &sources {
        let n = src.gens.first().map(Poly::n_vars).unwrap_or(0);
        let cert = certify_regular_sequence(field, n, &src.gens, None)?;
        if cert.mode != CertMode::Full {
            return Err(CliError::Validation(format!(
                "recover needs one generator per variable, found {} for {n} variables",
                src.gens.len()
            )));
        }
        let degrees: Vec<u32> = generator_degrees(field, n, &src.gens)?
            .into_iter()
            .flatten()
            .collect();
        let socle = socle_degree(n, &degrees)?;
        let ideal = TruncatedIdeal::new(field, n, &src.gens, socle)?;
        let rec = recover_ideal(&ideal.pieces()[socle as usize])?;
        let inputs = json!({"degrees": degrees, "socle": socle});
        for k in 0..=socle {
            let a = &ideal.pieces()[k as usize];
            let b = &rec.pieces()[k as usize];
            let equal = a == b;
            let mut row = Row::default();
            row.push("e", Cell::param(src.e.map_or(Value::Null, Value::from)))
                .push("degrees", Cell::param(json!(degrees)))
                .push("socle", Cell::new(socle, "socle_degree", json!({"n_vars": n, "degrees": degrees})))
                .push("k", Cell::param(k))
                .push("source_dim", Cell::new(a.dim(), "graded_span", json!({"degrees": degrees, "m": k})))
                .push("recovered_dim", Cell::new(b.dim(), "recover_ideal", inputs.clone()))
                .push("equal", Cell::new(equal, "recover_ideal", inputs.clone()));
            rows.push(row);
            if !equal {
                failures.push(json!({"e": src.e, "k": k, "check": "piece_equal", "source_dim": a.dim(), "recovered_dim": b.dim()}));
            }
        }
        if !rec.is_ideal() {
            failures.push(json!({"e": src.e, "check": "is_ideal"}));
        }
        if !rec.pairing_report()?.is_perfect() {
            failures.push(json!({"e": src.e, "check": "perfect_pairing"}));
        }
    }
    Ok(Report {
        config: config_value(cfg),
        rows,
        trials: None,
        failures,
    })
}

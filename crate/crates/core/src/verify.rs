//! Per-witness verification: every closed form is compared against the
//! brute-force oracle on one explicit witness, and the structural
//! identities of the cycle constructions are checked.
//!
//! Each comparison records the operation that produced the expected value
//! and its inputs, so a serialized report is self-describing.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::graded_span;
use crate::koszul::{
    ci_hilbert, ci_scheme_dim, half_degree_pairs, hilbert_diff, locus_codim,
    locus_codim_from_dimensions, normalize_degrees, socle_degree, ChiOracle,
};
use crate::oracle::{
    antisym_family, brute_hilbert, fiber_tangent_dim, jacobian_containment, pairing_report,
    random_form, recover_ideal, residual, seeded_rng, smoothness_check, Certificate, CIWitness,
    TruncatedIdeal,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    FormulaOracle,
    Gorenstein,
    Recovery,
    Residual,
    Fiber,
    Jacobian,
    Smoothness,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::FormulaOracle => "formula_oracle",
            Family::Gorenstein => "gorenstein",
            Family::Recovery => "recovery",
            Family::Residual => "residual",
            Family::Fiber => "fiber",
            Family::Jacobian => "jacobian",
            Family::Smoothness => "smoothness",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpInputs {
    pub n_vars: usize,
    pub degrees: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
}

impl OpInputs {
    fn new(n_vars: usize, degrees: &[u32]) -> Self {
        Self {
            n_vars,
            degrees: degrees.to_vec(),
            ..Self::default()
        }
    }

    fn e(mut self, e: u32) -> Self {
        self.e = Some(e);
        self
    }

    fn m(mut self, m: i64) -> Self {
        self.m = Some(m);
        self
    }

    fn index(mut self, i: usize) -> Self {
        self.index = Some(i);
        self
    }
}

/// One integer pair. `expected` comes from `op` (a closed form, or a fixed
/// target such as 1 for a membership that must hold); `observed` from the
/// oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub op: &'static str,
    pub oracle: &'static str,
    pub inputs: OpInputs,
    pub expected: i64,
    pub observed: i64,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub family: Family,
    pub name: String,
    pub pass: bool,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn from_comparisons(family: Family, name: &str, comparisons: Vec<Comparison>) -> Self {
        Self {
            family,
            name: name.to_string(),
            pass: comparisons.iter().all(Comparison::holds),
            comparisons,
            detail: None,
        }
    }

    fn errored(family: Family, name: &str, err: &Error) -> Self {
        Self {
            family,
            name: name.to_string(),
            pass: false,
            comparisons: Vec::new(),
            detail: Some(err.to_string()),
        }
    }

    fn from_result(family: Family, name: &str, r: Result<Vec<Comparison>>) -> Self {
        match r {
            Ok(c) => Self::from_comparisons(family, name, c),
            Err(e) => Self::errored(family, name, &e),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Perturb F after generation so that the identities must fail.
    pub sabotage: bool,
    /// Also certify smoothness of F (slow for six or more variables).
    pub check_smooth: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub trial: u64,
    pub seed: u64,
    pub n_vars: usize,
    pub degrees: Vec<u32>,
    pub e: u32,
    pub sabotaged: bool,
    pub certificates: Vec<Certificate>,
    pub checks: Vec<Check>,
}

impl TrialReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Distinct families exercised, in order.
    pub fn families(&self) -> Vec<Family> {
        let mut f: Vec<Family> = self.checks.iter().map(|c| c.family).collect();
        f.sort();
        f.dedup();
        f
    }
}

fn flag(b: bool) -> i64 {
    b as i64
}

/// Generates the witness for trial `trial` of a seeded campaign and
/// verifies it. Degrees are normalized first.
pub fn run_trial(
    field: PrimeField,
    n_vars: usize,
    degrees: &[u32],
    e: u32,
    seed: u64,
    trial: u64,
    opts: VerifyOptions,
) -> Result<TrialReport> {
    let normalized = normalize_degrees(degrees, e)?;
    let mut rng = seeded_rng(seed, trial);
    let mut w = CIWitness::random(&mut rng, field, n_vars, &normalized.degrees, e)?;
    if opts.sabotage {
        let (_, f, _) = w.cofactors()?;
        let mut noise = random_form(&mut rng, field, n_vars, e);
        while noise.is_zero() {
            noise = random_form(&mut rng, field, n_vars, e);
        }
        let broken = f.add(&noise)?;
        w = w.with_f_unchecked(broken);
    }
    let mut report = verify_witness(&w, opts)?;
    report.trial = trial;
    report.seed = seed;
    report.sabotaged = opts.sabotage;
    Ok(report)
}

/// Runs every invariant family on `w`, which must carry cofactors and have
/// `(P, Q)` of full length.
pub fn verify_witness(w: &CIWitness, opts: VerifyOptions) -> Result<TrialReport> {
    let (q, _, e) = w.cofactors()?;
    let field = w.field();
    let n = w.n_vars();
    let gens = w.generators();
    if gens.len() != n {
        return Err(Error::WrongGeneratorCount {
            expected: n / 2,
            found: w.p().len(),
        });
    }
    let mut full_degrees = w.degrees().to_vec();
    full_degrees.extend(q.iter().zip(w.degrees()).map(|(_, &d)| e - d));
    let socle = socle_degree(n, &full_degrees)?;
    let ideal = TruncatedIdeal::new(field, n, &gens, socle + 1)?;

    let mut checks = Vec::new();
    formula_checks(w, &ideal, &full_degrees, socle, &mut checks);
    checks.push(gorenstein_check(w, &ideal, socle));
    checks.push(recovery_check(w, &ideal, socle));
    for i in 0..w.p().len() {
        checks.push(residual_check(w, i));
    }
    checks.push(fiber_check(w));
    if half_degree_pairs(w.degrees(), e) > 0 {
        checks.push(antisym_check(w));
    }
    checks.push(Check::from_result(Family::Jacobian, "jacobian_containment", {
        jacobian_containment(w).map(|v| {
            v.into_iter()
                .enumerate()
                .map(|(j, b)| Comparison {
                    op: "product_rule",
                    oracle: "jacobian_containment",
                    inputs: OpInputs::new(n, w.degrees()).e(e).index(j),
                    expected: 1,
                    observed: flag(b),
                })
                .collect()
        })
    }));
    if opts.check_smooth {
        let r = smoothness_check(w);
        let detail = r.as_ref().err().map(|e| e.to_string());
        let mut c = Check::from_comparisons(
            Family::Smoothness,
            "jacobian_regular_sequence",
            vec![Comparison {
                op: "smoothness",
                oracle: "certify_regular_sequence",
                inputs: OpInputs::new(n, &vec![e - 1; n]),
                expected: 1,
                observed: flag(r.is_ok()),
            }],
        );
        c.detail = detail;
        checks.push(c);
    }

    Ok(TrialReport {
        trial: 0,
        seed: 0,
        n_vars: n,
        degrees: w.degrees().to_vec(),
        e,
        sabotaged: false,
        certificates: w.certificates().to_vec(),
        checks,
    })
}

fn formula_checks(
    w: &CIWitness,
    ideal: &TruncatedIdeal,
    full_degrees: &[u32],
    socle: i64,
    out: &mut Vec<Check>,
) {
    let n = w.n_vars();
    let field = w.field();
    let e = w.e().expect("verified witness has e");
    let d = w.degrees();
    let chi = ChiOracle::projective(n);
    let fam = Family::FormulaOracle;

    out.push(Check::from_result(fam, "hilbert_complete_intersection", {
        (0..=socle + 1)
            .map(|m| {
                Ok(Comparison {
                    op: "ci_hilbert",
                    oracle: "brute_hilbert",
                    inputs: OpInputs::new(n, full_degrees).m(m),
                    expected: ci_hilbert(&chi, full_degrees, m)?,
                    observed: ideal.hilbert(m)?,
                })
            })
            .collect()
    }));

    // h of the cycle ideal (P) alone, up to e
    let cycle_h: Result<Vec<i64>> = (0..=e as i64)
        .map(|m| brute_hilbert(field, n, w.p(), m))
        .collect();
    let cycle_h = match cycle_h {
        Ok(h) => h,
        Err(err) => {
            out.push(Check::errored(fam, "hilbert_cycle", &err));
            return;
        }
    };
    out.push(Check::from_result(fam, "hilbert_cycle", {
        cycle_h
            .iter()
            .enumerate()
            .map(|(m, &h)| {
                Ok(Comparison {
                    op: "ci_hilbert",
                    oracle: "brute_hilbert",
                    inputs: OpInputs::new(n, d).m(m as i64),
                    expected: ci_hilbert(&chi, d, m as i64)?,
                    observed: h,
                })
            })
            .collect()
    }));

    let normalized = match normalize_degrees(d, e) {
        Ok(nd) => nd.degrees,
        Err(err) => {
            out.push(Check::errored(fam, "locus_codim", &err));
            return;
        }
    };
    let h_full_e = ideal.hilbert(e as i64);
    out.push(Check::from_result(fam, "locus_codim", {
        h_full_e.clone().and_then(|h| {
            Ok(vec![Comparison {
                op: "locus_codim",
                oracle: "brute_hilbert",
                inputs: OpInputs::new(n, &normalized).e(e),
                expected: locus_codim(&chi, &normalized, e)?,
                observed: h,
            }])
        })
    }));

    // the difference formula is stated for the cycle's own (normalized) P
    let is_normalized = d.iter().all(|&x| 2 * x <= e);
    if is_normalized {
        out.push(Check::from_result(fam, "hilbert_diff", {
            h_full_e.clone().and_then(|h| {
                Ok(vec![Comparison {
                    op: "hilbert_diff",
                    oracle: "brute_hilbert",
                    inputs: OpInputs::new(n, d).e(e),
                    expected: hilbert_diff(&chi, d, e)?,
                    observed: h - cycle_h[e as usize],
                }])
            })
        }));
    }

    let sum_h_at_d: i64 = d.iter().map(|&dj| cycle_h[dj as usize]).sum();
    out.push(Check::from_result(fam, "ci_scheme_dim", {
        ci_scheme_dim(&chi, d).map(|v| {
            vec![Comparison {
                op: "ci_scheme_dim",
                oracle: "sum_brute_hilbert_at_degrees",
                inputs: OpInputs::new(n, d),
                expected: v,
                observed: sum_h_at_d,
            }]
        })
    }));

    // both sides of the cross-identity, once from the closed forms and once
    // purely from oracle values
    out.push(Check::from_result(fam, "cross_identity", {
        h_full_e.and_then(|h| {
            let c = half_degree_pairs(&normalized, e) as i64;
            let nd_cycle = if is_normalized {
                cycle_h[e as usize] + c - sum_h_at_d
            } else {
                // residual orientation: use the formula pieces for the normalized cycle
                locus_codim_from_dimensions(&chi, &normalized, e)?
            };
            Ok(vec![
                Comparison {
                    op: "locus_codim",
                    oracle: "locus_codim_from_dimensions",
                    inputs: OpInputs::new(n, &normalized).e(e),
                    expected: locus_codim(&chi, &normalized, e)?,
                    observed: locus_codim_from_dimensions(&chi, &normalized, e)?,
                },
                Comparison {
                    op: "brute_hilbert",
                    oracle: "brute_locus_codim_from_dimensions",
                    inputs: OpInputs::new(n, &normalized).e(e),
                    expected: h,
                    observed: nd_cycle,
                },
            ])
        })
    }));
}

fn gorenstein_check(w: &CIWitness, ideal: &TruncatedIdeal, socle: i64) -> Check {
    let n = w.n_vars();
    let e = w.e().expect("verified witness has e");
    let fam = Family::Gorenstein;
    let t = w.p().len() as i64;
    let inputs = || OpInputs::new(n, w.degrees()).e(e);
    let dims: Vec<i64> = match (0..=socle + 1).map(|m| ideal.hilbert(m)).collect::<Result<_>>() {
        Ok(d) => d,
        Err(err) => return Check::errored(fam, "pairing", &err),
    };
    let top = dims.iter().rposition(|&h| h > 0).map_or(-1, |i| i as i64);
    let mut cmp = vec![
        Comparison {
            op: "socle_degree",
            oracle: "top_nonzero_degree",
            inputs: inputs(),
            // (k+1) e - 2k - 2 with n_vars = 2k + 2
            expected: t * e as i64 - n as i64,
            observed: top,
        },
        Comparison {
            op: "socle_dimension",
            oracle: "brute_hilbert",
            inputs: inputs().m(socle),
            expected: 1,
            observed: dims[socle as usize],
        },
    ];
    for i in 0..=socle / 2 {
        cmp.push(Comparison {
            op: "hilbert_symmetry",
            oracle: "brute_hilbert",
            inputs: inputs().m(i),
            expected: dims[(socle - i) as usize],
            observed: dims[i as usize],
        });
    }
    let pieces = &ideal.pieces()[..=socle as usize];
    match pairing_report(pieces, socle) {
        Ok(rep) => {
            for (i, &r) in rep.pairing_ranks.iter().enumerate() {
                cmp.push(Comparison {
                    op: "pairing_full_rank",
                    oracle: "pairing_rank",
                    inputs: inputs().m(i as i64),
                    expected: rep.dims[i] as i64,
                    observed: r as i64,
                });
            }
            Check::from_comparisons(fam, "pairing", cmp)
        }
        Err(err) => {
            let mut c = Check::from_comparisons(fam, "pairing", cmp);
            c.pass = false;
            c.detail = Some(err.to_string());
            c
        }
    }
}

fn recovery_check(w: &CIWitness, ideal: &TruncatedIdeal, socle: i64) -> Check {
    let n = w.n_vars();
    let e = w.e().expect("verified witness has e");
    let fam = Family::Recovery;
    let inputs = || OpInputs::new(n, w.degrees()).e(e);
    let run = || -> Result<Vec<Comparison>> {
        let v = &ideal.pieces()[socle as usize];
        let rec = recover_ideal(v)?;
        let mut cmp = Vec::new();
        for k in 0..=socle {
            let src = &ideal.pieces()[k as usize];
            let got = &rec.pieces()[k as usize];
            cmp.push(Comparison {
                op: "graded_span",
                oracle: "recover_ideal",
                inputs: inputs().m(k),
                expected: src.dim() as i64,
                observed: got.dim() as i64,
            });
            cmp.push(Comparison {
                op: "piece_equal",
                oracle: "recover_ideal",
                inputs: inputs().m(k),
                expected: 1,
                observed: flag(src == got),
            });
        }
        let h_next = graded_span(w.field(), n, &v.basis_polys(), socle + 1)?.codim();
        cmp.push(Comparison {
            op: "base_point_free",
            oracle: "brute_hilbert",
            inputs: inputs().m(socle + 1),
            expected: 0,
            observed: h_next as i64,
        });
        cmp.push(Comparison {
            op: "is_ideal",
            oracle: "recover_ideal",
            inputs: inputs(),
            expected: 1,
            observed: flag(rec.is_ideal()),
        });
        Ok(cmp)
    };
    Check::from_result(fam, "fixed_point", run())
}

fn residual_check(w: &CIWitness, i: usize) -> Check {
    let n = w.n_vars();
    let e = w.e().expect("verified witness has e");
    let inputs = || OpInputs::new(n, w.degrees()).e(e).index(i);
    let run = || -> Result<Vec<Comparison>> {
        let r = residual(w, i)?;
        let back = residual(&r.witness, i)?;
        let involution = back.witness.p() == w.p() && back.witness.q() == w.q();
        Ok(vec![
            Comparison {
                op: "residual_f_preserved",
                oracle: "sum_of_products",
                inputs: inputs(),
                expected: 1,
                observed: flag(r.f_preserved),
            },
            Comparison {
                op: "residual_class_identity",
                oracle: "graded_span",
                inputs: inputs(),
                expected: 1,
                observed: flag(r.class_identity),
            },
            Comparison {
                op: "residual_degree",
                oracle: "residual",
                inputs: inputs(),
                expected: (e - w.degrees()[i]) as i64,
                observed: r.witness.degrees()[i] as i64,
            },
            Comparison {
                op: "residual_involution",
                oracle: "residual",
                inputs: inputs(),
                expected: 1,
                observed: flag(involution),
            },
        ])
    };
    Check::from_result(Family::Residual, &format!("residual_{i}"), run())
}

fn fiber_check(w: &CIWitness) -> Check {
    let n = w.n_vars();
    let e = w.e().expect("verified witness has e");
    let c = half_degree_pairs(w.degrees(), e) as i64;
    Check::from_result(
        Family::Fiber,
        "tangent_dim",
        fiber_tangent_dim(w).map(|dim| {
            vec![Comparison {
                op: "half_degree_pairs",
                oracle: "fiber_tangent_dim",
                inputs: OpInputs::new(n, w.degrees()).e(e),
                expected: c,
                observed: dim as i64,
            }]
        }),
    )
}

/// Two members of the antisymmetric family (`M_01 = t`, t = 1, 2) must both
/// contain F and have different spans in degree e/2.
fn antisym_check(w: &CIWitness) -> Check {
    let n = w.n_vars();
    let e = w.e().expect("verified witness has e");
    let field = w.field();
    let a = w.degrees().iter().filter(|&&d| 2 * d == e).count();
    let inputs = || OpInputs::new(n, w.degrees()).e(e);
    let run = || -> Result<Vec<Comparison>> {
        let mut spans = Vec::new();
        let mut cmp = Vec::new();
        for t in 1..=2u64 {
            let mut m = vec![vec![0u64; a]; a];
            m[0][1] = t;
            m[1][0] = field.neg(t);
            let r = antisym_family(w, &m)?;
            cmp.push(Comparison {
                op: "antisym_f_preserved",
                oracle: "sum_of_products",
                inputs: inputs().index(t as usize),
                expected: 1,
                observed: flag(r.f_matches_products()?),
            });
            spans.push(graded_span(field, n, r.p(), e as i64 / 2)?);
        }
        cmp.push(Comparison {
            op: "antisym_distinct_spans",
            oracle: "graded_span",
            inputs: inputs().m(e as i64 / 2),
            expected: 1,
            observed: flag(spans[0] != spans[1]),
        });
        Ok(cmp)
    };
    Check::from_result(Family::Fiber, "antisymmetric_family", run())
}

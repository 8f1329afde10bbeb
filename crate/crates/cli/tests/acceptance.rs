//! Acceptance suite: one PASS/FAIL line per criterion, exact integer
//! equality throughout. Runs without the libtest harness so the lines are
//! always visible; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use nlci::koszul::{
    ci_hilbert, ci_scheme_dim, half_degree_pairs, hilbert_diff, locus_codim,
    locus_codim_from_dimensions, ChiOracle,
};
use nlci::oracle::{
    antisym_family, brute_hilbert, certify_regular_sequence, decompose, fiber_tangent_dim,
    gorenstein_check, jacobian_containment, recover_ideal, residual, seeded_rng, CIWitness,
    TruncatedIdeal,
};
use nlci::verify::{run_trial, verify_witness, VerifyOptions};
use nlci::{graded_span, Error, Monomial, Poly, PrimeField};

struct Outcome {
    mismatches: Vec<String>,
    compared: usize,
}

impl Outcome {
    fn new() -> Self {
        Self {
            mismatches: Vec::new(),
            compared: 0,
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: impl FnOnce() -> String, expected: T, observed: T) {
        self.compared += 1;
        if expected != observed {
            self.mismatches
                .push(format!("{}: expected {expected:?}, observed {observed:?}", what()));
        }
    }

    fn ok(&mut self, what: impl FnOnce() -> String, cond: bool) {
        self.eq(what, true, cond);
    }

    fn fail(&mut self, msg: String) {
        self.compared += 1;
        self.mismatches.push(msg);
    }
}

struct GridWitness {
    degrees: Vec<u32>,
    e: u32,
    seed: u64,
    w: CIWitness,
}

const SEEDS: [u64; 3] = [1, 2, 3];

fn fp() -> PrimeField {
    PrimeField::default()
}

/// k = 1, normalized degrees (1,1), (1,2), (2,2), e = 3..6, three seeds.
fn grid() -> Vec<GridWitness> {
    let mut out = Vec::new();
    for degrees in [vec![1u32, 1], vec![1, 2], vec![2, 2]] {
        for e in 3..=6u32 {
            if degrees.iter().any(|&d| 2 * d > e || d > e - 1) {
                continue;
            }
            for seed in SEEDS {
                let w = CIWitness::random(&mut seeded_rng(seed, 0), fp(), 4, &degrees, e)
                    .expect("grid witness certifies");
                out.push(GridWitness {
                    degrees: degrees.clone(),
                    e,
                    seed,
                    w,
                });
            }
        }
    }
    out
}

fn full_degrees(d: &[u32], e: u32) -> Vec<u32> {
    let mut f = d.to_vec();
    f.extend(d.iter().rev().map(|&x| e - x));
    f
}

fn criterion_1(grid: &[GridWitness]) -> Outcome {
    let start = Instant::now();
    let mut o = Outcome::new();
    let chi = ChiOracle::projective(4);
    for g in grid {
        let tag = || format!("{:?} e={} seed={}", g.degrees, g.e, g.seed);
        let full = full_degrees(&g.degrees, g.e);
        let socle = full.iter().sum::<u32>() as i64 - 4;
        let ideal = TruncatedIdeal::new(fp(), 4, &g.w.generators(), socle + 1).unwrap();
        for m in 0..=socle + 1 {
            o.eq(
                || format!("{} h({m})", tag()),
                ci_hilbert(&chi, &full, m).unwrap(),
                ideal.hilbert(m).unwrap(),
            );
        }
        let h_full = ideal.hilbert(g.e as i64).unwrap();
        o.eq(|| format!("{} locus_codim", tag()), locus_codim(&chi, &g.degrees, g.e).unwrap(), h_full);
        let h_cycle = brute_hilbert(fp(), 4, g.w.p(), g.e as i64).unwrap();
        o.eq(
            || format!("{} hilbert_diff", tag()),
            hilbert_diff(&chi, &g.degrees, g.e).unwrap(),
            h_full - h_cycle,
        );
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        o.fail(format!("grid took {elapsed:?}, budget 10 s"));
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let chi = ChiOracle::projective(4);
    for e in 4..=10u32 {
        let w = CIWitness::random(&mut seeded_rng(e as u64, 0), fp(), 4, &[1, 1], e).unwrap();
        o.eq(|| format!("formula e={e}"), e as i64 - 3, locus_codim(&chi, &[1, 1], e).unwrap());
        o.eq(
            || format!("oracle e={e}"),
            e as i64 - 3,
            brute_hilbert(fp(), 4, &w.generators(), e as i64).unwrap(),
        );
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let chi = ChiOracle::projective(4);
    for (d, expected) in [(vec![1, 1], 4), (vec![1, 2], 8), (vec![2, 2], 16)] {
        o.eq(|| format!("{d:?}"), expected, ci_scheme_dim(&chi, &d).unwrap());
    }
    // constant degrees: t (chi(d_t) - t)
    o.eq(|| "(2,2) base case".into(), 2 * (chi.chi(2).unwrap() - 2), ci_scheme_dim(&chi, &[2, 2]).unwrap());
    o
}

fn criterion_4(grid: &[GridWitness]) -> Outcome {
    let mut o = Outcome::new();
    for g in grid {
        let tag = || format!("{:?} e={} seed={}", g.degrees, g.e, g.seed);
        match gorenstein_check(fp(), 4, &g.w.generators()) {
            Ok(rep) => {
                let s = rep.socle as usize;
                // (k+1) e - 2k - 2 with k = 1
                o.eq(|| format!("{} socle", tag()), 2 * g.e as i64 - 4, rep.socle);
                o.eq(|| format!("{} dims[socle]", tag()), 1, rep.dims[s]);
                for i in 0..=s {
                    o.eq(|| format!("{} symmetry at {i}", tag()), rep.dims[s - i], rep.dims[i]);
                }
                for (i, &r) in rep.pairing_ranks.iter().enumerate() {
                    o.eq(|| format!("{} pairing rank {i}", tag()), rep.dims[i], r);
                }
            }
            Err(e) => o.fail(format!("{}: {e}", tag())),
        }
    }
    o
}

fn criterion_5(grid: &[GridWitness]) -> Outcome {
    let mut o = Outcome::new();
    for g in grid {
        let tag = || format!("{:?} e={} seed={}", g.degrees, g.e, g.seed);
        let socle = 2 * g.e as i64 - 4;
        let ideal = TruncatedIdeal::new(fp(), 4, &g.w.generators(), socle).unwrap();
        let v = &ideal.pieces()[socle as usize];
        match recover_ideal(v) {
            Ok(rec) => {
                for k in 0..=socle as usize {
                    o.ok(|| format!("{} I_{k}", tag()), rec.pieces()[k] == ideal.pieces()[k]);
                }
            }
            Err(e) => o.fail(format!("{}: {e}", tag())),
        }
        o.eq(
            || format!("{} h_V(socle+1)", tag()),
            0,
            brute_hilbert(fp(), 4, &v.basis_polys(), socle + 1).unwrap(),
        );
    }
    o
}

fn criterion_6(grid: &[GridWitness]) -> Outcome {
    let mut o = Outcome::new();
    let chi4 = ChiOracle::projective(4);
    for g in grid.iter().filter(|g| g.seed == SEEDS[0]) {
        let d = &g.degrees;
        let e = g.e;
        let rhs = ci_hilbert(&chi4, d, e as i64).unwrap() + half_degree_pairs(d, e) as i64
            - ci_scheme_dim(&chi4, d).unwrap();
        o.eq(|| format!("{d:?} e={e}"), locus_codim(&chi4, d, e).unwrap(), rhs);
    }
    let chi6 = ChiOracle::projective(6);
    let d = [1, 1, 1];
    o.eq(
        || "(1,1,1) e=3 formula".into(),
        locus_codim(&chi6, &d, 3).unwrap(),
        locus_codim_from_dimensions(&chi6, &d, 3).unwrap(),
    );
    let start = Instant::now();
    let w = CIWitness::random(&mut seeded_rng(SEEDS[0], 0), fp(), 6, &d, 3).unwrap();
    let h_full = brute_hilbert(fp(), 6, &w.generators(), 3).unwrap();
    let h_cycle = brute_hilbert(fp(), 6, w.p(), 3).unwrap();
    let dim_h: i64 = d
        .iter()
        .map(|&dj| brute_hilbert(fp(), 6, w.p(), dj as i64).unwrap())
        .sum();
    let c = half_degree_pairs(&d, 3) as i64;
    o.eq(|| "(1,1,1) e=3 oracle".into(), h_full, h_cycle + c - dim_h);
    o.eq(|| "(1,1,1) e=3 oracle vs formula".into(), locus_codim(&chi6, &d, 3).unwrap(), h_full);
    let report = verify_witness(&w, VerifyOptions::default()).unwrap();
    o.ok(|| "(1,1,1) e=3 verify".into(), report.pass());
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        o.fail(format!("k = 2 oracle run took {elapsed:?}, budget 60 s"));
    }
    o
}

fn criterion_7(grid: &[GridWitness]) -> Outcome {
    let mut o = Outcome::new();
    let field = fp();
    let mut saw_c1 = false;
    for g in grid {
        let tag = || format!("{:?} e={} seed={}", g.degrees, g.e, g.seed);
        let c = half_degree_pairs(&g.degrees, g.e);
        saw_c1 |= c == 1;
        o.eq(|| format!("{} fiber", tag()), c, fiber_tangent_dim(&g.w).unwrap());
        for i in 0..g.degrees.len() {
            let r = residual(&g.w, i).unwrap();
            o.ok(|| format!("{} residual {i} F", tag()), r.f_preserved);
            o.ok(|| format!("{} residual {i} class", tag()), r.class_identity);
        }
        if c > 0 {
            let mut spans = Vec::new();
            for t in 1..=2u64 {
                let m = vec![vec![0, t], vec![field.neg(t), 0]];
                let r = antisym_family(&g.w, &m).unwrap();
                o.ok(|| format!("{} antisym t={t} F", tag()), r.f_matches_products().unwrap() && r.f() == g.w.f());
                spans.push(graded_span(field, 4, r.p(), g.e as i64 / 2).unwrap());
            }
            o.ok(|| format!("{} antisym spans differ", tag()), spans[0] != spans[1]);
        }
    }
    o.ok(|| "grid contains a c = 1 profile".into(), saw_c1);
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let f17 = PrimeField::new(17).unwrap();
    let fermat = Poly::from_terms(
        f17,
        4,
        (0..4)
            .map(|i| {
                let mut e = vec![0; 4];
                e[i] = 4;
                (Monomial::new(e), 1)
            })
            .collect::<Vec<_>>(),
    );
    let lin = |c: [i64; 4]| {
        Poly::from_terms(
            f17,
            4,
            (0..4)
                .map(|i| (Monomial::var(4, i), f17.from_i64(c[i])))
                .collect::<Vec<_>>(),
        )
    };
    let p = vec![lin([1, -2, 0, 0]), lin([0, 0, 1, -2])];
    match decompose(&fermat, &p) {
        Ok(q) => {
            let back = p[0].mul(&q[0]).unwrap().add(&p[1].mul(&q[1]).unwrap()).unwrap();
            o.ok(|| "decompose re-expands".into(), back == fermat);
        }
        Err(e) => o.fail(format!("decompose: {e}")),
    }
    let w = match CIWitness::from_hypersurface(fermat, p) {
        Ok(w) => w,
        Err(e) => {
            o.fail(format!("witness: {e}"));
            return o;
        }
    };
    for i in 0..2 {
        let r = residual(&w, i).unwrap();
        o.ok(|| format!("residual {i}"), r.f_preserved && r.class_identity);
    }
    o.eq(|| "residual multidegree".into(), vec![3, 1], residual(&w, 0).unwrap().witness.degrees().to_vec());
    o.eq(|| "jacobian".into(), vec![true; 4], jacobian_containment(&w).unwrap());
    let report = verify_witness(&w, VerifyOptions::default()).unwrap();
    for c in report.failures() {
        o.fail(format!("verify {}: {:?}", c.name, c.detail));
    }
    o.ok(|| "verify".into(), report.pass());
    o
}

fn criterion_9(grid: &[GridWitness]) -> Outcome {
    let mut o = Outcome::new();
    let chi = ChiOracle::projective(4);
    for g in grid {
        let span = graded_span(fp(), 4, &g.w.generators(), g.e as i64).unwrap();
        o.eq(
            || format!("{:?} e={} seed={}", g.degrees, g.e, g.seed),
            locus_codim(&chi, &g.degrees, g.e).unwrap(),
            (span.ambient_dim() - span.dim()) as i64,
        );
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let trials = 3;
    let out = Command::new(env!("CARGO_BIN_EXE_nlci"))
        .args(["verify", "--k", "1", "--degrees", "1,1", "--e", "4", "--seed", "42"])
        .args(["--trials", &trials.to_string(), "--format", "json", "--sabotage"])
        .output()
        .expect("binary runs");
    o.eq(|| "sabotage exit status".into(), Some(1), out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    for t in 0..trials {
        let n = v["failures"]
            .as_array()
            .map_or(0, |f| f.iter().filter(|x| x["trial"] == t).count());
        o.ok(|| format!("trial {t} reports a failure"), n >= 1);
    }
    // library path too, every family that touches F must notice
    let r = run_trial(fp(), 4, &[2, 2], 4, 7, 0, VerifyOptions { sabotage: true, ..Default::default() }).unwrap();
    o.ok(|| "library sabotage".into(), !r.pass());

    let x0 = Poly::var(fp(), 4, 0);
    let bad = [x0.clone(), x0.mul(&x0).unwrap()];
    let first = certify_regular_sequence(fp(), 4, &bad, None);
    let second = certify_regular_sequence(fp(), 4, &bad, None);
    o.eq(
        || "non-regular sequence".into(),
        Err(Error::NotRegular { degree: 2, brute: 6, expected: 5 }),
        first.clone(),
    );
    o.eq(|| "non-regular determinism".into(), first, second);
    let repeated: Vec<Poly> = [0, 1, 2, 0].iter().map(|&i| Poly::var(fp(), 4, i)).collect();
    o.ok(
        || "full-length non-regular".into(),
        matches!(certify_regular_sequence(fp(), 4, &repeated, None), Err(Error::NotRegular { .. })),
    );
    o
}

fn main() {
    let grid = grid();
    type Run<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Run)> = vec![
        ("formula-oracle equivalence grid", Box::new(|| criterion_1(&grid))),
        ("classical line count e - 3", Box::new(criterion_2)),
        ("Hilbert-scheme dimensions 4, 8, 16", Box::new(criterion_3)),
        ("Gorenstein symmetry and perfect pairings", Box::new(|| criterion_4(&grid))),
        ("recovery fixed point", Box::new(|| criterion_5(&grid))),
        ("codimension cross-identity incl. k = 2", Box::new(|| criterion_6(&grid))),
        ("fiber, antisymmetric family, residual", Box::new(|| criterion_7(&grid))),
        ("Fermat quartic line over F_17", Box::new(criterion_8)),
        ("ideal-level dimension equality", Box::new(|| criterion_9(&grid))),
        ("negative controls", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.mismatches.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}: {name} ({} comparisons, {:.2?})",
            i + 1,
            o.compared,
            start.elapsed()
        );
        for m in &o.mismatches {
            println!("    {m}");
        }
        if !o.mismatches.is_empty() {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

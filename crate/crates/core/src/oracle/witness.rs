use rand::Rng;
use serde::Serialize;

use super::{brute_hilbert, random_forms};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::generator_degrees;
use crate::koszul::{ci_hilbert, socle_degree, ChiOracle, MultidegreeProfile};
use crate::poly::Poly;

/// Resampling budget for random witnesses.
pub const MAX_ATTEMPTS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMode {
    /// As many forms as variables: S/I is Artinian, checked exactly.
    Full,
    /// Fewer forms than variables: Hilbert function agrees with the
    /// complete-intersection formula through `verified_through`.
    PartialHeuristic,
}

/// Record of a passed regular-sequence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub mode: CertMode,
    pub degrees: Vec<u32>,
    pub verified_through: i64,
}

/// Certifies that `forms` behave as a regular sequence.
///
/// With `n_vars` forms the check is exact: the quotient must vanish in degree
/// socle + 1. With fewer forms the brute-force Hilbert function must match
/// the complete-intersection formula in every degree up to `bound`
/// (default: the sum of the degrees).
pub fn certify_regular_sequence(
    field: PrimeField,
    n_vars: usize,
    forms: &[Poly],
    bound: Option<i64>,
) -> Result<Certificate> {
    if forms.len() > n_vars {
        return Err(Error::WrongGeneratorCount {
            expected: n_vars,
            found: forms.len(),
        });
    }
    let degrees = generator_degrees(field, n_vars, forms)?
        .into_iter()
        .map(|d| d.ok_or(Error::ZeroGenerator))
        .collect::<Result<Vec<u32>>>()?;
    if forms.len() == n_vars {
        let top = socle_degree(n_vars, &degrees)? + 1;
        let h = brute_hilbert(field, n_vars, forms, top)?;
        if h != 0 {
            return Err(Error::NotRegular {
                degree: top,
                brute: h,
                expected: 0,
            });
        }
        return Ok(Certificate {
            mode: CertMode::Full,
            degrees,
            verified_through: top,
        });
    }
    let chi = ChiOracle::projective(n_vars);
    let bound = bound.unwrap_or_else(|| degrees.iter().map(|&d| d as i64).sum());
    for m in 0..=bound {
        let brute = brute_hilbert(field, n_vars, forms, m)?;
        let expected = ci_hilbert(&chi, &degrees, m)?;
        if brute != expected {
            return Err(Error::NotRegular {
                degree: m,
                brute,
                expected,
            });
        }
    }
    Ok(Certificate {
        mode: CertMode::PartialHeuristic,
        degrees,
        verified_through: bound,
    })
}

/// An explicit complete intersection `Z = V(P_1..P_t)`, optionally with
/// cofactors `Q_i` of degree `e - d_i` and the hypersurface
/// `F = sum P_i Q_i` containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CIWitness {
    field: PrimeField,
    n_vars: usize,
    p: Vec<Poly>,
    p_degrees: Vec<u32>,
    q: Option<Vec<Poly>>,
    f: Option<Poly>,
    e: Option<u32>,
    certificates: Vec<Certificate>,
}

impl CIWitness {
    /// Assembles a witness from explicit polynomials, checking degrees and
    /// the identity `F = sum P_i Q_i`. No certification is run.
    pub fn from_parts(
        field: PrimeField,
        n_vars: usize,
        p: Vec<Poly>,
        q: Option<Vec<Poly>>,
        f: Option<Poly>,
    ) -> Result<Self> {
        let p_degrees = generator_degrees(field, n_vars, &p)?
            .into_iter()
            .map(|d| d.ok_or(Error::ZeroGenerator))
            .collect::<Result<Vec<u32>>>()?;
        let e = match &f {
            Some(f) => {
                generator_degrees(field, n_vars, std::slice::from_ref(f))?;
                Some(f.homogeneous_degree().ok_or(Error::ZeroGenerator)?)
            }
            None => None,
        };
        if let Some(q) = &q {
            let (Some(e), Some(f)) = (e, &f) else {
                return Err(Error::MissingCofactors);
            };
            if q.len() != p.len() {
                return Err(Error::WrongGeneratorCount {
                    expected: p.len(),
                    found: q.len(),
                });
            }
            for (qi, &di) in q.iter().zip(&p_degrees) {
                generator_degrees(field, n_vars, std::slice::from_ref(qi))?;
                if di > e {
                    return Err(Error::DegreeOutOfRange {
                        degree: di as i64,
                        e: e as i64,
                    });
                }
                if let Some(dq) = qi.homogeneous_degree() {
                    if dq != e - di {
                        return Err(Error::WrongDegree {
                            expected: e - di,
                            found: dq,
                        });
                    }
                }
            }
            if &sum_of_products(field, n_vars, &p, q)? != f {
                return Err(Error::NotContained);
            }
        }
        Ok(Self {
            field,
            n_vars,
            p,
            p_degrees,
            q,
            f,
            e,
            certificates: Vec::new(),
        })
    }

    /// Random `P` of the given degrees, `Q` of degrees `e - d`, and
    /// `F = sum P_i Q_i`, certified; resamples from the same generator on
    /// failure, up to [`MAX_ATTEMPTS`] draws.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        field: PrimeField,
        n_vars: usize,
        degrees: &[u32],
        e: u32,
    ) -> Result<Self> {
        let profile = MultidegreeProfile::new(n_vars, degrees, Some(e))?;
        let degrees = profile.degrees().to_vec();
        if let Some(&bad) = degrees.iter().find(|&&d| d > e) {
            return Err(Error::DegreeOutOfRange {
                degree: bad as i64,
                e: e as i64,
            });
        }
        let q_degrees: Vec<u32> = degrees.iter().map(|&d| e - d).collect();
        if 2 * degrees.len() > n_vars {
            return Err(Error::WrongGeneratorCount {
                expected: n_vars / 2,
                found: degrees.len(),
            });
        }
        resample(|| {
            let p = random_forms(rng, field, n_vars, &degrees);
            let q = random_forms(rng, field, n_vars, &q_degrees);
            let f = sum_of_products(field, n_vars, &p, &q)?;
            Self::from_parts(field, n_vars, p, Some(q), Some(f))
        })
    }

    /// A random certified complete intersection with no hypersurface attached.
    pub fn random_cycle<R: Rng + ?Sized>(
        rng: &mut R,
        field: PrimeField,
        n_vars: usize,
        degrees: &[u32],
    ) -> Result<Self> {
        let profile = MultidegreeProfile::new(n_vars, degrees, None)?;
        resample(|| {
            let p = random_forms(rng, field, n_vars, profile.degrees());
            Self::from_parts(field, n_vars, p, None, None)
        })
    }

    /// Builds a witness from a hypersurface and the equations of a cycle on
    /// it, solving for cofactors with [`super::decompose`], then certifies.
    pub fn from_hypersurface(f: Poly, p: Vec<Poly>) -> Result<Self> {
        let field = f.field();
        let n_vars = f.n_vars();
        let q = super::decompose(&f, &p)?;
        let mut w = Self::from_parts(field, n_vars, p, Some(q), Some(f))?;
        w.certify()?;
        Ok(w)
    }

    /// Runs the regular-sequence checks and records them: `P` alone in
    /// partial mode, and `(P, Q)` (exact when it has `n_vars` members).
    pub fn certify(&mut self) -> Result<()> {
        let mut certs = Vec::new();
        if self.p.len() < self.n_vars {
            certs.push(certify_regular_sequence(self.field, self.n_vars, &self.p, None)?);
        }
        if self.q.is_some() {
            let full = self.generators();
            if full.len() <= self.n_vars {
                certs.push(certify_regular_sequence(self.field, self.n_vars, &full, None)?);
            }
        }
        self.certificates = certs;
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn p(&self) -> &[Poly] {
        &self.p
    }

    pub fn q(&self) -> Option<&[Poly]> {
        self.q.as_deref()
    }

    pub fn f(&self) -> Option<&Poly> {
        self.f.as_ref()
    }

    pub fn e(&self) -> Option<u32> {
        self.e
    }

    /// Degrees of `P_1..P_t` in storage order.
    pub fn degrees(&self) -> &[u32] {
        &self.p_degrees
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    pub fn profile(&self) -> Result<MultidegreeProfile> {
        MultidegreeProfile::new(self.n_vars, &self.p_degrees, self.e)
    }

    /// `P_1..P_t` followed by `Q_1..Q_t` (just `P` without cofactors).
    pub fn generators(&self) -> Vec<Poly> {
        let mut g = self.p.clone();
        if let Some(q) = &self.q {
            g.extend(q.iter().cloned());
        }
        g
    }

    pub fn cofactors(&self) -> Result<(&[Poly], &Poly, u32)> {
        match (&self.q, &self.f, self.e) {
            (Some(q), Some(f), Some(e)) => Ok((q, f, e)),
            _ => Err(Error::MissingCofactors),
        }
    }

    /// Whether `F = sum P_i Q_i` still holds.
    pub fn f_matches_products(&self) -> Result<bool> {
        let (q, f, _) = self.cofactors()?;
        Ok(&sum_of_products(self.field, self.n_vars, &self.p, q)? == f)
    }

    /// Replaces `F` without touching `P` or `Q`. Used to build deliberately
    /// broken witnesses for negative controls.
    pub fn with_f_unchecked(mut self, f: Poly) -> Self {
        self.e = f.homogeneous_degree().or(self.e);
        self.f = Some(f);
        self
    }

    pub(crate) fn with_generators_unchecked(
        &self,
        p: Vec<Poly>,
        p_degrees: Vec<u32>,
        q: Vec<Poly>,
        certificates: Vec<Certificate>,
    ) -> Self {
        Self {
            field: self.field,
            n_vars: self.n_vars,
            p,
            p_degrees,
            q: Some(q),
            f: self.f.clone(),
            e: self.e,
            certificates,
        }
    }
}

/// Draws until a witness certifies, at most [`MAX_ATTEMPTS`] times.
fn resample(mut draw: impl FnMut() -> Result<CIWitness>) -> Result<CIWitness> {
    for _ in 0..MAX_ATTEMPTS {
        let Ok(mut w) = draw() else { continue };
        if w.certify().is_ok() {
            return Ok(w);
        }
    }
    Err(Error::CertificationExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

pub(crate) fn sum_of_products(field: PrimeField, n_vars: usize, p: &[Poly], q: &[Poly]) -> Result<Poly> {
    let mut acc = Poly::zero(field, n_vars);
    for (a, b) in p.iter().zip(q) {
        acc = acc.add(&a.mul(b)?)?;
    }
    Ok(acc)
}

//! Brute-force verification layer.
//!
//! Every quantity in [`crate::koszul`] has an independent counterpart here,
//! computed from explicit random polynomials over F_p by rank computations
//! inside single graded pieces. Nothing in this module calls the closed
//! forms except the heuristic regular-sequence certificate for partial
//! sequences, which compares against them by design.

mod cycle;
mod gorenstein;
mod witness;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::PrimeField;
use crate::graded::{graded_span, GradedBasis};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Poly;

pub use cycle::{
    antisym_family, decompose, fiber_tangent_dim, jacobian_containment, residual,
    smoothness_check, Residual,
};
pub use gorenstein::{
    colon_degree, gorenstein_check, pairing_report, recover_ideal, PairingReport, RecoveredIdeal,
};
pub use witness::{certify_regular_sequence, CertMode, Certificate, CIWitness, MAX_ATTEMPTS};

/// The random generator used for every witness: ChaCha8 keyed by the seed,
/// with one independent stream per trial.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Dense random homogeneous forms, one per requested degree, with every
/// coefficient uniform in F_p.
pub fn random_forms<R: Rng + ?Sized>(
    rng: &mut R,
    field: PrimeField,
    n_vars: usize,
    degrees: &[u32],
) -> Vec<Poly> {
    degrees
        .iter()
        .map(|&d| random_form(rng, field, n_vars, d))
        .collect()
}

pub fn random_form<R: Rng + ?Sized>(rng: &mut R, field: PrimeField, n_vars: usize, degree: u32) -> Poly {
    let p = field.modulus();
    let terms: Vec<(Monomial, u64)> = monomials_of_degree(n_vars, degree as i64)
        .into_iter()
        .map(|m| (m, rng.random_range(0..p)))
        .collect();
    Poly::from_terms(field, n_vars, terms)
}

/// [`random_forms`] driven by a fresh generator for `seed`.
pub fn random_forms_seeded(seed: u64, field: PrimeField, n_vars: usize, degrees: &[u32]) -> Vec<Poly> {
    random_forms(&mut seeded_rng(seed, 0), field, n_vars, degrees)
}

/// `h(m) = dim S_m - dim (gens)_m`, by rank.
pub fn brute_hilbert(field: PrimeField, n_vars: usize, gens: &[Poly], m: i64) -> Result<i64> {
    Ok(graded_span(field, n_vars, gens, m)?.codim() as i64)
}

/// The graded pieces I_0, ..., I_top of the ideal generated by `gens`.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    field: PrimeField,
    n_vars: usize,
    gens: Vec<Poly>,
    pieces: Vec<GradedBasis>,
}

impl TruncatedIdeal {
    pub fn new(field: PrimeField, n_vars: usize, gens: &[Poly], top: i64) -> Result<Self> {
        let pieces = (0..=top.max(-1))
            .map(|m| graded_span(field, n_vars, gens, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            field,
            n_vars,
            gens: gens.to_vec(),
            pieces,
        })
    }

    pub fn top(&self) -> i64 {
        self.pieces.len() as i64 - 1
    }

    pub fn pieces(&self) -> &[GradedBasis] {
        &self.pieces
    }

    /// I_m, computed on the fly above the truncation degree.
    pub fn piece(&self, m: i64) -> Result<GradedBasis> {
        if m >= 0 && m <= self.top() {
            Ok(self.pieces[m as usize].clone())
        } else {
            graded_span(self.field, self.n_vars, &self.gens, m)
        }
    }

    pub fn hilbert(&self, m: i64) -> Result<i64> {
        if m >= 0 && m <= self.top() {
            Ok(self.pieces[m as usize].codim() as i64)
        } else {
            brute_hilbert(self.field, self.n_vars, &self.gens, m)
        }
    }
}

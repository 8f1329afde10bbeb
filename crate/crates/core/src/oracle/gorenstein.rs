//! Artinian Gorenstein quotients: multiplication pairings into the socle,
//! recovery of the ideal from its socle-degree piece, and colon ideals.

use std::sync::Arc;

use serde::Serialize;

use super::TruncatedIdeal;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::{generator_degrees, graded_span, GradedBasis};
use crate::koszul::socle_degree;
use crate::linalg::{echelon_rank, kernel_basis, Matrix};
use crate::monomial::{Monomial, MonomialBasis};
use crate::poly::Poly;

/// Hilbert function of S/I up to the socle degree and the ranks of the
/// multiplication pairings `(S/I)_i x (S/I)_{socle-i} -> (S/I)_socle`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingReport {
    pub socle: i64,
    pub dims: Vec<usize>,
    /// Entry `i` is the rank for degree `i`, `0 <= i <= socle/2`.
    pub pairing_ranks: Vec<usize>,
}

impl PairingReport {
    pub fn is_symmetric(&self) -> bool {
        let n = self.dims.len();
        (0..n).all(|i| self.dims[i] == self.dims[n - 1 - i])
    }

    pub fn is_perfect(&self) -> bool {
        let s = self.socle as usize;
        self.pairing_ranks
            .iter()
            .enumerate()
            .all(|(i, &r)| r == self.dims[i] && r == self.dims[s - i])
    }
}

/// The linear form `S_m -> F_p` whose kernel is a codimension-one subspace
/// `V`, tabulated on the monomial basis: the coefficient left on the single
/// standard monomial after reducing modulo `V`.
fn socle_functional(v: &GradedBasis) -> Result<Vec<u64>> {
    let std = v.standard_columns();
    if std.len() != 1 {
        return Err(Error::NotCodimensionOne {
            degree: v.degree().max(0) as u32,
            found: std.len(),
        });
    }
    let s = std[0];
    let f = v.field();
    let mut table = vec![0u64; v.ambient_dim()];
    table[s] = 1;
    for (row, &p) in v.rows().iter().zip(v.pivots()) {
        table[p] = f.neg(row[s]);
    }
    Ok(table)
}

/// Matrix of `(mu, nu) -> lambda(mu * nu)` for monomials `mu` in `rows` and
/// `nu` in `cols`.
fn pairing_matrix(
    field: PrimeField,
    lambda: &[u64],
    top: &MonomialBasis,
    rows: &[Monomial],
    cols: &[Monomial],
) -> Matrix {
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    for (i, mu) in rows.iter().enumerate() {
        for (j, nu) in cols.iter().enumerate() {
            let idx = top.index_of(&mu.mul(nu)).expect("product has socle degree");
            m.set(i, j, lambda[idx]);
        }
    }
    m
}

/// Builds the pairing report for the graded pieces `I_0..I_socle` of an
/// ideal. Fails unless `(S/I)_socle` is one-dimensional and the Hilbert
/// function is symmetric.
pub fn pairing_report(pieces: &[GradedBasis], socle: i64) -> Result<PairingReport> {
    if socle < 0 || pieces.len() <= socle as usize {
        return Err(Error::NotGorenstein(format!(
            "need graded pieces through degree {socle}"
        )));
    }
    let s = socle as usize;
    let dims: Vec<usize> = pieces[..=s].iter().map(GradedBasis::codim).collect();
    if dims[s] != 1 {
        return Err(Error::NotGorenstein(format!(
            "dim (S/I)_{socle} = {}, expected 1",
            dims[s]
        )));
    }
    let top = &pieces[s];
    let lambda = socle_functional(top)?;
    let report_dims = dims.clone();
    let pairing_ranks = (0..=s / 2)
        .map(|i| {
            let rows = pieces[i].standard_monomials();
            let cols = pieces[s - i].standard_monomials();
            let m = pairing_matrix(top.field(), &lambda, top.monomial_basis(), &rows, &cols);
            echelon_rank(&m)
        })
        .collect();
    let report = PairingReport {
        socle,
        dims: report_dims,
        pairing_ranks,
    };
    if !report.is_symmetric() {
        return Err(Error::NotGorenstein(format!(
            "Hilbert function {dims:?} is not symmetric"
        )));
    }
    Ok(report)
}

/// Pairing report for the complete intersection generated by `gens_full`
/// (one generator per variable), with socle degree
/// `sum(deg) - n_vars`.
pub fn gorenstein_check(field: PrimeField, n_vars: usize, gens_full: &[Poly]) -> Result<PairingReport> {
    let degrees = generator_degrees(field, n_vars, gens_full)?
        .into_iter()
        .map(|d| d.ok_or(Error::ZeroGenerator))
        .collect::<Result<Vec<u32>>>()?;
    let socle = socle_degree(n_vars, &degrees)?;
    let ideal = TruncatedIdeal::new(field, n_vars, gens_full, socle)?;
    pairing_report(ideal.pieces(), socle)
}

/// The Gorenstein ideal determined by a codimension-one subspace of S_m:
/// `I_k = { f in S_k : f * S_{m-k} in V }` for `k <= m`, all of S_k above.
#[derive(Clone, Debug)]
pub struct RecoveredIdeal {
    socle: i64,
    pieces: Vec<GradedBasis>,
}

impl RecoveredIdeal {
    pub fn socle(&self) -> i64 {
        self.socle
    }

    /// `I_0..I_socle`.
    pub fn pieces(&self) -> &[GradedBasis] {
        &self.pieces
    }

    pub fn piece(&self, k: i64) -> GradedBasis {
        let top = &self.pieces[self.socle as usize];
        if k < 0 {
            GradedBasis::zero(top.field(), top.n_vars(), k)
        } else if k <= self.socle {
            self.pieces[k as usize].clone()
        } else {
            GradedBasis::full(top.field(), top.n_vars(), k)
        }
    }

    /// Checks `x_i * I_k` lies in `I_{k+1}` for every variable and degree.
    pub fn is_ideal(&self) -> bool {
        let n = self.pieces[0].n_vars();
        self.pieces.windows(2).all(|w| {
            w[0].basis_polys().iter().all(|g| {
                (0..n).all(|i| {
                    w[1].contains(&g.mul_monomial(&Monomial::var(n, i)))
                        .unwrap_or(false)
                })
            })
        })
    }

    pub fn pairing_report(&self) -> Result<PairingReport> {
        pairing_report(&self.pieces, self.socle)
    }
}

/// Recovers the unique Artinian Gorenstein ideal with `I_m = V`.
///
/// `V` must have codimension one in S_m and be base point free; the latter
/// is checked as `(V)_{m+1} = S_{m+1}`.
pub fn recover_ideal(v: &GradedBasis) -> Result<RecoveredIdeal> {
    let m = v.degree();
    let field = v.field();
    let n = v.n_vars();
    if v.codim() != 1 {
        return Err(Error::NotCodimensionOne {
            degree: m.max(0) as u32,
            found: v.codim(),
        });
    }
    let next = graded_span(field, n, &v.basis_polys(), m + 1)?;
    if !next.is_full() {
        return Err(Error::BasePoints {
            degree: (m + 1) as u32,
            h: next.codim(),
        });
    }
    let lambda = socle_functional(v)?;
    let top = v.monomial_basis();
    let pieces = (0..=m)
        .map(|k| {
            if k == m {
                return Ok(v.clone());
            }
            let source = Arc::new(MonomialBasis::new(n, k));
            let tests = MonomialBasis::new(n, m - k);
            let mat = pairing_matrix(field, &lambda, top, tests.monomials(), source.monomials());
            GradedBasis::from_vectors(field, source, kernel_basis(&mat))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RecoveredIdeal { socle: m, pieces })
}

/// `(I : g)_m = { f in S_m : f * g in I_{m + deg g} }` for `I = (gens)`.
pub fn colon_degree(field: PrimeField, n_vars: usize, gens: &[Poly], g: &Poly, m: i64) -> Result<GradedBasis> {
    generator_degrees(field, n_vars, std::slice::from_ref(g))?;
    let Some(dg) = g.homogeneous_degree() else {
        return Ok(GradedBasis::full(field, n_vars, m));
    };
    let target = graded_span(field, n_vars, gens, m + dg as i64)?;
    let std = target.standard_columns();
    let source = Arc::new(MonomialBasis::new(n_vars, m));
    let mut mat = Matrix::zeros(field, std.len(), source.len());
    for (j, mu) in source.monomials().iter().enumerate() {
        let mut w = g.mul_monomial(mu).coords(target.monomial_basis())?;
        target.reduce(&mut w);
        for (i, &c) in std.iter().enumerate() {
            mat.set(i, j, w[c]);
        }
    }
    GradedBasis::from_vectors(field, source, kernel_basis(&mat))
}

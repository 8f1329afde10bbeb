//! Subspaces of a single graded piece S_m and the degree-m piece of an ideal.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{rref, Echelon};
use crate::monomial::{Monomial, MonomialBasis};
use crate::poly::Poly;

/// A subspace of S_m, stored as reduced row-echelon coordinate vectors over
/// the canonical grevlex basis. Two `GradedBasis` values compare equal
/// exactly when they describe the same subspace.
#[derive(Clone)]
pub struct GradedBasis {
    field: PrimeField,
    basis: Arc<MonomialBasis>,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl GradedBasis {
    pub fn zero(field: PrimeField, n_vars: usize, degree: i64) -> Self {
        Self::zero_in(field, Arc::new(MonomialBasis::new(n_vars, degree)))
    }

    pub fn zero_in(field: PrimeField, basis: Arc<MonomialBasis>) -> Self {
        Self {
            field,
            basis,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of S_m.
    pub fn full(field: PrimeField, n_vars: usize, degree: i64) -> Self {
        let basis = Arc::new(MonomialBasis::new(n_vars, degree));
        let n = basis.len();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self {
            field,
            basis,
            rows,
            pivots: (0..n).collect(),
        }
    }

    /// Echelonizes arbitrary coordinate vectors.
    pub fn from_vectors(
        field: PrimeField,
        basis: Arc<MonomialBasis>,
        vectors: impl IntoIterator<Item = Vec<u64>>,
    ) -> Result<Self> {
        let (rows, pivots) = rref(field, basis.len(), vectors)?;
        Ok(Self {
            field,
            basis,
            rows,
            pivots,
        })
    }

    /// Span of homogeneous polynomials of degree m (zero polynomials allowed).
    pub fn from_polys(field: PrimeField, n_vars: usize, degree: i64, polys: &[Poly]) -> Result<Self> {
        let basis = Arc::new(MonomialBasis::new(n_vars, degree));
        let vectors = polys
            .iter()
            .map(|p| p.coords(&basis))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vectors(field, basis, vectors)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.basis.n_vars()
    }

    pub fn degree(&self) -> i64 {
        self.basis.degree()
    }

    pub fn monomial_basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// dim S_m.
    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns. Their monomials (the standard monomials) form a
    /// basis of the quotient S_m / V.
    pub fn standard_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard_columns()
            .into_iter()
            .map(|c| self.basis.monomials()[c].clone())
            .collect()
    }

    /// Normal form of a coordinate vector modulo the subspace: zero on every
    /// pivot column.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.ambient_dim());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                let neg = self.field.neg(c);
                for (d, &s) in v[p..].iter_mut().zip(&row[p..]) {
                    *d = self.field.mul_add(*d, neg, s);
                }
            }
        }
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Membership of a polynomial; fails if it does not live in S_m.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.contains_vec(&p.coords(&self.basis)?))
    }

    /// Coordinates of `p` in S_m / V with respect to the standard monomials.
    pub fn quotient_coords(&self, p: &Poly) -> Result<Vec<u64>> {
        let mut v = p.coords(&self.basis)?;
        self.reduce(&mut v);
        Ok(self.standard_columns().into_iter().map(|c| v[c]).collect())
    }

    pub fn basis_polys(&self) -> Vec<Poly> {
        self.rows
            .iter()
            .map(|r| Poly::from_coords(self.field, &self.basis, r))
            .collect()
    }

    pub fn is_subspace_of(&self, other: &GradedBasis) -> bool {
        self.degree() == other.degree()
            && self.n_vars() == other.n_vars()
            && self.rows.iter().all(|r| other.contains_vec(r))
    }
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n_vars() == other.n_vars()
            && self.degree() == other.degree()
            && self.pivots == other.pivots
            && self.rows == other.rows
    }
}

impl Eq for GradedBasis {}

impl fmt::Debug for GradedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedBasis")
            .field("degree", &self.degree())
            .field("n_vars", &self.n_vars())
            .field("dim", &self.dim())
            .field("ambient_dim", &self.ambient_dim())
            .finish()
    }
}

/// Checks that every generator is a homogeneous polynomial in `n_vars`
/// variables over `field`; returns their degrees (`None` for zero).
pub fn generator_degrees(field: PrimeField, n_vars: usize, gens: &[Poly]) -> Result<Vec<Option<u32>>> {
    gens.iter()
        .map(|g| {
            if g.field() != field {
                return Err(Error::FieldMismatch(field.modulus(), g.field().modulus()));
            }
            if g.n_vars() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    found: g.n_vars(),
                });
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous);
            }
            Ok(g.homogeneous_degree())
        })
        .collect()
}

/// The degree-m piece of the ideal generated by `gens`:
/// span{ mu * g : mu a monomial of degree m - deg g }.
///
/// Generators of degree above `m` contribute nothing. An empty generator
/// list yields the zero subspace.
pub fn graded_span(field: PrimeField, n_vars: usize, gens: &[Poly], m: i64) -> Result<GradedBasis> {
    let degrees = generator_degrees(field, n_vars, gens)?;
    let basis = Arc::new(MonomialBasis::new(n_vars, m));
    let mut ech = Echelon::new(field, basis.len());
    'gens: for (g, d) in gens.iter().zip(degrees) {
        let Some(d) = d else { continue };
        if d as i64 > m {
            continue;
        }
        let terms: Vec<(&Monomial, u64)> = g.terms().collect();
        for mu in crate::monomial::monomials_of_degree(n_vars, m - d as i64) {
            if ech.is_full() {
                break 'gens;
            }
            let mut row = vec![0u64; basis.len()];
            for &(t, c) in &terms {
                let i = basis
                    .index_of(&t.mul(&mu))
                    .expect("product lands in degree m");
                row[i] = c;
            }
            ech.insert(row)?;
        }
    }
    let (rows, pivots) = ech.into_reduced();
    Ok(GradedBasis {
        field,
        basis,
        rows,
        pivots,
    })
}

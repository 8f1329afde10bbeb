//! Sparse multivariate polynomials over F_p.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialBasis};

/// A polynomial stored as its nonzero terms. Zero coefficients are never kept.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    n_vars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(field: PrimeField, n_vars: usize) -> Self {
        Self {
            field,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, n_vars: usize, c: u64) -> Self {
        Self::from_terms(field, n_vars, [(Monomial::one(n_vars), c)])
    }

    pub fn var(field: PrimeField, n_vars: usize, i: usize) -> Self {
        Self::from_terms(field, n_vars, [(Monomial::var(n_vars, i), 1)])
    }

    /// Sums the given terms; repeated monomials are combined and zeros dropped.
    pub fn from_terms<I>(field: PrimeField, n_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut p = Self::zero(field, n_vars);
        for (m, c) in terms {
            assert_eq!(m.n_vars(), n_vars, "monomial has wrong number of variables");
            p.add_term(m, c);
        }
        p
    }

    pub fn from_coords(field: PrimeField, basis: &MonomialBasis, coords: &[u64]) -> Self {
        assert_eq!(coords.len(), basis.len());
        Self::from_terms(
            field,
            basis.n_vars(),
            basis
                .monomials()
                .iter()
                .zip(coords)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), c)),
        )
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let c = self.field.reduce(c);
        if c == 0 {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// `Some(d)` when the polynomial is nonzero and every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: other.n_vars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return Poly::zero(f, self.n_vars);
        }
        Poly {
            field: f,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut out = Poly::zero(f, self.n_vars);
        for (ma, &a) in &self.terms {
            for (mb, &b) in &other.terms {
                out.add_term(ma.mul(mb), f.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            field: self.field,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect(),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Poly {
        assert!(var < self.n_vars);
        let f = self.field;
        let terms = self.terms.iter().filter_map(|(m, &c)| {
            let e = m.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            Some((Monomial::new(exps), f.mul(c, f.reduce(e as u64))))
        });
        Poly::from_terms(f, self.n_vars, terms.collect::<Vec<_>>())
    }

    /// Coordinates over the canonical basis of S_m. Fails unless every term
    /// lies in that graded piece.
    pub fn coords(&self, basis: &MonomialBasis) -> Result<Vec<u64>> {
        if basis.n_vars() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: basis.n_vars(),
                found: self.n_vars,
            });
        }
        let mut v = vec![0u64; basis.len()];
        for (m, &c) in &self.terms {
            let i = basis.index_of(m).ok_or(Error::WrongDegree {
                expected: basis.degree().max(0) as u32,
                found: m.degree(),
            })?;
            v[i] = c;
        }
        Ok(v)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

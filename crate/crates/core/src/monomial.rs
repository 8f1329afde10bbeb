//! Monomials, the graded reverse-lexicographic order, and the canonical
//! monomial basis of each graded piece S_m.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_integer::binomial;

/// Exponent vector of a monomial in `n_vars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(n_vars: usize) -> Self {
        Self(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded reverse-lexicographic: higher degree first; on ties the
    /// monomial with the smaller exponent in the last differing variable is
    /// the larger one.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&e| e == 0) {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// dim S_m = C(m + n - 1, n - 1), zero for negative m.
pub fn count_of_degree(n_vars: usize, m: i64) -> usize {
    if m < 0 || n_vars == 0 {
        return usize::from(m == 0 && n_vars == 0);
    }
    binomial(m as u128 + n_vars as u128 - 1, n_vars as u128 - 1) as usize
}

/// All monomials of total degree `m`, largest first in grevlex.
pub fn monomials_of_degree(n_vars: usize, m: i64) -> Vec<Monomial> {
    assert!(n_vars >= 1, "need at least one variable");
    if m < 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(count_of_degree(n_vars, m));
    let mut current = vec![0u32; n_vars];
    fill(&mut current, 0, m as u32, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial(current.to_vec()));
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// The ordered monomial basis of S_m together with a reverse index; column
/// `i` of every coordinate vector over S_m refers to `monomials()[i]`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n_vars: usize,
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n_vars: usize, degree: i64) -> Self {
        let monomials = monomials_of_degree(n_vars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n_vars,
            degree,
            monomials,
            index,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

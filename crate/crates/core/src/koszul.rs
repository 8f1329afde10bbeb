//! Closed-form Hilbert-function combinatorics of complete intersections.
//!
//! Everything here is pure integer arithmetic driven by the degree list of a
//! regular sequence and the Hilbert function `chi` of the ambient variety:
//! the Koszul inclusion-exclusion for `h_I(m)`, the index sets `A(i;j)`,
//! the difference `h_I(e) - h_{I'}(e)`, the dimension of the Hilbert scheme
//! of complete intersections, the flag-scheme dimension and the codimension
//! of the locus of hypersurfaces containing such a cycle.

use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};

/// Hilbert function of the ambient variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiOracle {
    /// Projective space with `n_vars` homogeneous coordinates.
    Projective { n_vars: usize },
    /// Explicit values chi(0), chi(1), ..., chi(valid_through).
    Table { values: Vec<i64> },
}

impl ChiOracle {
    pub fn projective(n_vars: usize) -> Self {
        ChiOracle::Projective { n_vars }
    }

    pub fn table(values: Vec<i64>) -> Result<Self> {
        if let Some(bad) = values.iter().position(|&v| v < 0) {
            return Err(Error::Parse(format!(
                "chi table value at degree {bad} is negative"
            )));
        }
        Ok(ChiOracle::Table { values })
    }

    pub fn valid_through(&self) -> Option<i64> {
        match self {
            ChiOracle::Projective { .. } => None,
            ChiOracle::Table { values } => Some(values.len() as i64 - 1),
        }
    }

    pub fn n_vars(&self) -> Option<usize> {
        match self {
            ChiOracle::Projective { n_vars } => Some(*n_vars),
            ChiOracle::Table { .. } => None,
        }
    }

    /// chi(m); zero for every negative m.
    pub fn chi(&self, m: i64) -> Result<i64> {
        if m < 0 {
            return Ok(0);
        }
        match self {
            ChiOracle::Projective { n_vars } => {
                if *n_vars == 0 {
                    return Ok(i64::from(m == 0));
                }
                Ok(binomial(m as i128 + *n_vars as i128 - 1, *n_vars as i128 - 1) as i64)
            }
            ChiOracle::Table { values } => {
                values
                    .get(m as usize)
                    .copied()
                    .ok_or(Error::ChiTableExhausted {
                        m,
                        valid_through: values.len() as i64 - 1,
                    })
            }
        }
    }
}

fn check_positive(degrees: &[u32]) -> Result<()> {
    match degrees.iter().find(|&&d| d == 0) {
        Some(_) => Err(Error::DegreeOutOfRange { degree: 0, e: -1 }),
        None => Ok(()),
    }
}

fn sorted(degrees: &[u32]) -> Vec<u32> {
    let mut d = degrees.to_vec();
    d.sort_unstable();
    d
}

/// `a`: the number of degrees equal to e/2 (zero for odd e).
pub fn count_half_degrees(degrees: &[u32], e: u32) -> usize {
    if e % 2 == 1 {
        return 0;
    }
    degrees.iter().filter(|&&d| 2 * d == e).count()
}

/// `c = a(a-1)/2`, the number of degree-e Koszul syzygies among the cofactors.
pub fn half_degree_pairs(degrees: &[u32], e: u32) -> usize {
    let a = count_half_degrees(degrees, e);
    a * a.saturating_sub(1) / 2
}

/// Multidegree of a complete intersection, optionally with the degree `e`
/// of the hypersurface containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultidegreeProfile {
    n_vars: usize,
    degrees: Vec<u32>,
    e: Option<u32>,
}

impl MultidegreeProfile {
    pub fn new(n_vars: usize, degrees: &[u32], e: Option<u32>) -> Result<Self> {
        check_positive(degrees)?;
        Ok(Self {
            n_vars,
            degrees: sorted(degrees),
            e,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn e(&self) -> Option<u32> {
        self.e
    }

    /// k with n_vars = 2k + 2, when n_vars is even and at least 2.
    pub fn k(&self) -> Option<usize> {
        (self.n_vars >= 2 && self.n_vars.is_multiple_of(2)).then(|| (self.n_vars - 2) / 2)
    }

    pub fn a(&self) -> usize {
        self.e.map_or(0, |e| count_half_degrees(&self.degrees, e))
    }

    pub fn c(&self) -> usize {
        self.e.map_or(0, |e| half_degree_pairs(&self.degrees, e))
    }

    pub fn is_normalized(&self) -> bool {
        self.e.is_some_and(|e| self.degrees.iter().all(|&d| 2 * d <= e))
    }

    /// `(d_1, ..., d_t, e - d_t, ..., e - d_1)`, the degrees of (P, Q).
    pub fn full_degrees(&self) -> Option<Vec<u32>> {
        let e = self.e?;
        let mut out = self.degrees.clone();
        out.extend(self.degrees.iter().rev().map(|&d| e - d));
        Some(out)
    }
}

/// Result of [`normalize_degrees`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    /// Sorted, every entry at most e/2.
    pub degrees: Vec<u32>,
    /// Positions (0-based, into the input list) that were replaced by `e - d`.
    pub flipped: Vec<usize>,
}

/// Replaces every `d > e/2` by its residual degree `e - d` and sorts.
pub fn normalize_degrees(degrees: &[u32], e: u32) -> Result<Normalized> {
    let mut flipped = Vec::new();
    let mut out = Vec::with_capacity(degrees.len());
    for (i, &d) in degrees.iter().enumerate() {
        if d == 0 || d >= e {
            return Err(Error::DegreeOutOfRange {
                degree: d as i64,
                e: e as i64,
            });
        }
        if 2 * d > e {
            flipped.push(i);
            out.push(e - d);
        } else {
            out.push(d);
        }
    }
    out.sort_unstable();
    Ok(Normalized {
        degrees: out,
        flipped,
    })
}

/// Walks every subset of `degrees` whose degree sum is at most `bound`,
/// calling `visit(size, sum)`. Subsets are pruned as soon as their partial
/// sum exceeds the bound, which is sound because all degrees are positive.
fn for_each_bounded_subset(degrees: &[u32], bound: i64, visit: &mut impl FnMut(usize, i64)) {
    fn go(degrees: &[u32], start: usize, size: usize, sum: i64, bound: i64, visit: &mut impl FnMut(usize, i64)) {
        visit(size, sum);
        for i in start..degrees.len() {
            let s = sum + degrees[i] as i64;
            if s <= bound {
                go(degrees, i + 1, size + 1, s, bound, visit);
            }
        }
    }
    if bound >= 0 {
        go(degrees, 0, 0, 0, bound, visit);
    }
}

/// Hilbert function of a complete intersection of the given multidegree:
/// `h_I(m) = sum over subsets T of (-1)^|T| chi(m - sum_{i in T} d_i)`.
pub fn ci_hilbert(chi: &ChiOracle, degrees: &[u32], m: i64) -> Result<i64> {
    check_positive(degrees)?;
    let mut total = 0i64;
    let mut err = None;
    for_each_bounded_subset(degrees, m, &mut |size, sum| match chi.chi(m - sum) {
        Ok(v) => total += if size % 2 == 0 { v } else { -v },
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `A(i;j)`: increasing index tuples `k_1 < ... < k_i` with
/// `d_j >= d_{k_1} + ... + d_{k_i}`. Indices are 0-based; `A(0;j)` is the
/// singleton holding the empty tuple.
pub fn enumerate_a(degrees: &[u32], i: usize, j: usize) -> Result<Vec<Vec<usize>>> {
    let t = degrees.len();
    if i > t {
        return Err(Error::IndexOutOfRange { index: i, limit: t });
    }
    if j >= t {
        return Err(Error::IndexOutOfRange { index: j, limit: t });
    }
    let bound = degrees[j] as i64;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(i);
    fn go(
        degrees: &[u32],
        start: usize,
        left: usize,
        sum: i64,
        bound: i64,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for k in start..degrees.len() {
            let s = sum + degrees[k] as i64;
            if s <= bound {
                current.push(k);
                go(degrees, k + 1, left - 1, s, bound, current, out);
                current.pop();
            }
        }
    }
    go(degrees, 0, i, 0, bound, &mut current, &mut out);
    Ok(out)
}

/// `sum_j sum_i sign(i) sum_{A(i;j)} chi(d_j - d_{k_1} - ... - d_{k_i})`,
/// the shared core of [`hilbert_diff`] and [`ci_scheme_dim`].
fn signed_a_sum(chi: &ChiOracle, degrees: &[u32], sign: impl Fn(usize) -> i64) -> Result<i64> {
    let t = degrees.len();
    let mut total = 0i64;
    for j in 0..t {
        for i in 0..=t {
            for tuple in enumerate_a(degrees, i, j)? {
                let removed: i64 = tuple.iter().map(|&k| degrees[k] as i64).sum();
                total += sign(i) * chi.chi(degrees[j] as i64 - removed)?;
            }
        }
    }
    Ok(total)
}

fn require_normalized(degrees: &[u32], e: u32) -> Result<()> {
    check_positive(degrees)?;
    if degrees.iter().any(|&d| 2 * d > e) {
        return Err(Error::NotNormalized {
            degrees: degrees.to_vec(),
            e,
        });
    }
    Ok(())
}

/// `h_I(e) - h_{I'}(e)` for `I' = (P_1..P_t)` and `I = (P, Q)` with
/// `deg Q_i = e - d_i`:
/// `c + sum_{i=0}^{t} sum_j sum_{A(i;j)} (-1)^{i+1} chi(d_j - d_{k_1} - ... - d_{k_i})`.
pub fn hilbert_diff(chi: &ChiOracle, degrees: &[u32], e: u32) -> Result<i64> {
    require_normalized(degrees, e)?;
    let d = sorted(degrees);
    let c = half_degree_pairs(&d, e) as i64;
    let sum = signed_a_sum(chi, &d, |i| if i % 2 == 0 { -1 } else { 1 })?;
    Ok(c + sum)
}

/// Dimension of the Hilbert scheme of complete intersections of the given
/// multidegree: `sum_j sum_i (-1)^i sum_{A(i;j)} chi(d_j - d_{k_1} - ... - d_{k_i})`.
pub fn ci_scheme_dim(chi: &ChiOracle, degrees: &[u32]) -> Result<i64> {
    check_positive(degrees)?;
    let d = sorted(degrees);
    signed_a_sum(chi, &d, |i| if i % 2 == 0 { 1 } else { -1 })
}

/// Dimension of the flag scheme of pairs (hypersurface of degree e, cycle):
/// base dimension plus the projectivized fiber `P(I(Z)_e)`.
pub fn flag_scheme_dim(chi: &ChiOracle, degrees: &[u32], e: u32) -> Result<i64> {
    let base = ci_scheme_dim(chi, degrees)?;
    let chi_e = chi.chi(e as i64)?;
    let h = ci_hilbert(chi, degrees, e as i64)?;
    if h >= chi_e {
        return Err(Error::EmptyFiber);
    }
    Ok(base + chi_e - h - 1)
}

/// Codimension of the locus of degree-e hypersurfaces containing a complete
/// intersection of the given (normalized) multidegree: `h_I(e)` for the
/// complete intersection of multidegree `(d, e - d)`.
pub fn locus_codim(chi: &ChiOracle, degrees: &[u32], e: u32) -> Result<i64> {
    if let Some(n) = chi.n_vars() {
        if n % 2 != 0 || degrees.len() != n / 2 {
            return Err(Error::WrongGeneratorCount {
                expected: n / 2,
                found: degrees.len(),
            });
        }
    }
    require_normalized(degrees, e)?;
    let full = MultidegreeProfile::new(chi.n_vars().unwrap_or(0), degrees, Some(e))?
        .full_degrees()
        .expect("e is set");
    ci_hilbert(chi, &full, e as i64)
}

/// The same codimension assembled from its geometric pieces:
/// `h_{I(Z)}(e) + c - dim H(d)`.
pub fn locus_codim_from_dimensions(chi: &ChiOracle, degrees: &[u32], e: u32) -> Result<i64> {
    require_normalized(degrees, e)?;
    let h = ci_hilbert(chi, degrees, e as i64)?;
    let c = half_degree_pairs(degrees, e) as i64;
    Ok(h + c - ci_scheme_dim(chi, degrees)?)
}

/// Socle degree of a zero-dimensional complete intersection: the sum of the
/// generator degrees minus the number of variables.
pub fn socle_degree(n_vars: usize, degrees_full: &[u32]) -> Result<i64> {
    if degrees_full.len() != n_vars {
        return Err(Error::WrongGeneratorCount {
            expected: n_vars,
            found: degrees_full.len(),
        });
    }
    Ok(degrees_full.iter().map(|&d| d as i64).sum::<i64>() - n_vars as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize) -> ChiOracle {
        ChiOracle::projective(n)
    }

    #[test]
    fn chi_vanishes_below_zero() {
        assert_eq!(p(4).chi(-1).unwrap(), 0);
        assert_eq!(p(4).chi(0).unwrap(), 1);
        assert_eq!(p(4).chi(4).unwrap(), 35);
        let t = ChiOracle::table(vec![1, 4, 10]).unwrap();
        assert_eq!(t.chi(-3).unwrap(), 0);
        assert_eq!(t.chi(2).unwrap(), 10);
        assert_eq!(
            t.chi(3),
            Err(Error::ChiTableExhausted { m: 3, valid_through: 2 })
        );
        assert!(ChiOracle::table(vec![1, -1]).is_err());
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_degrees(&[1, 3], 4).unwrap();
        assert_eq!(n.degrees, vec![1, 1]);
        assert_eq!(n.flipped, vec![1]);
        let n = normalize_degrees(&[2, 2], 4).unwrap();
        assert_eq!(n.degrees, vec![2, 2]);
        assert!(n.flipped.is_empty());
        let n = normalize_degrees(&[1, 4, 4], 5).unwrap();
        assert_eq!(n.degrees, vec![1, 1, 1]);
        assert_eq!(n.flipped, vec![1, 2]);
        assert!(matches!(
            normalize_degrees(&[1, 4], 4),
            Err(Error::DegreeOutOfRange { degree: 4, e: 4 })
        ));
        assert!(normalize_degrees(&[0, 1], 4).is_err());
    }

    #[test]
    fn hilbert_small_cases() {
        assert_eq!(ci_hilbert(&p(4), &[], 2).unwrap(), 10);
        assert_eq!(ci_hilbert(&p(4), &[1, 1], 3).unwrap(), 4);
        assert_eq!(ci_hilbert(&p(4), &[1, 1, 3, 3], 4).unwrap(), 1);
        assert_eq!(ci_hilbert(&p(4), &[1, 1], -1).unwrap(), 0);
    }

    #[test]
    fn table_chi_must_cover_the_query() {
        let t = ChiOracle::table(vec![1, 4, 10]).unwrap();
        assert_eq!(ci_hilbert(&t, &[1], 2).unwrap(), 6);
        assert!(ci_hilbert(&t, &[1], 3).is_err());
        assert!(ci_scheme_dim(&t, &[3]).is_err());
    }

    #[test]
    fn index_sets() {
        assert_eq!(enumerate_a(&[1, 1], 1, 0).unwrap(), vec![vec![0], vec![1]]);
        assert!(enumerate_a(&[1, 2], 2, 1).unwrap().is_empty());
        assert_eq!(enumerate_a(&[1, 1, 2], 2, 2).unwrap(), vec![vec![0, 1]]);
        assert_eq!(enumerate_a(&[1, 1, 2], 0, 2).unwrap(), vec![Vec::<usize>::new()]);
        assert!(enumerate_a(&[1, 1], 3, 0).is_err());
        assert!(enumerate_a(&[1, 1], 1, 2).is_err());
    }

    #[test]
    fn hilbert_scheme_dimensions() {
        // lines in P^3
        assert_eq!(ci_scheme_dim(&p(4), &[1, 1]).unwrap(), 4);
        // t (chi(d_t) - t) for constant degrees
        assert_eq!(ci_scheme_dim(&p(4), &[2, 2]).unwrap(), 2 * (10 - 2));
        // plane (3) plus a conic in it (5)
        assert_eq!(ci_scheme_dim(&p(4), &[1, 2]).unwrap(), 8);
        // line (4) plus a 2-dimensional choice of quadric modulo the line
        assert_eq!(ci_scheme_dim(&p(4), &[1, 1, 2]).unwrap(), 6);
    }

    #[test]
    fn hilbert_diff_for_lines_on_quartics() {
        assert_eq!(hilbert_diff(&p(4), &[1, 1], 4).unwrap(), -4);
        assert!(matches!(
            hilbert_diff(&p(4), &[1, 3], 4),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn flag_scheme_examples() {
        // 4 + 35 - h((1,1),4) - 1 with h = dim k[u,v]_4 = 5
        assert_eq!(flag_scheme_dim(&p(4), &[1, 1], 4).unwrap(), 33);
        // 4 + 20 - h((1,1),3) - 1 with h = dim k[u,v]_3 = 4
        assert_eq!(flag_scheme_dim(&p(4), &[1, 1], 3).unwrap(), 19);
        // 16 + 35 - (35 - 20 + 1) - 1
        assert_eq!(flag_scheme_dim(&p(4), &[2, 2], 4).unwrap(), 34);
        // no linear form vanishes on a quadric hypersurface
        assert_eq!(flag_scheme_dim(&p(4), &[2], 1), Err(Error::EmptyFiber));
    }

    #[test]
    fn lines_on_surfaces() {
        for e in 3..=12 {
            assert_eq!(locus_codim(&p(4), &[1, 1], e).unwrap(), e as i64 - 3);
        }
        assert!(matches!(
            locus_codim(&p(4), &[1, 1, 1], 4),
            Err(Error::WrongGeneratorCount { expected: 2, found: 3 })
        ));
        assert!(matches!(
            locus_codim(&p(5), &[1, 1], 4),
            Err(Error::WrongGeneratorCount { .. })
        ));
    }

    #[test]
    fn socle_degrees() {
        assert_eq!(socle_degree(4, &[1, 1, 3, 3]).unwrap(), 4);
        assert_eq!(socle_degree(4, &[1, 1, 1, 1]).unwrap(), 0);
        assert_eq!(socle_degree(6, &[1, 1, 1, 2, 2, 2]).unwrap(), 3);
        assert!(socle_degree(4, &[1, 1, 1]).is_err());
    }

    #[test]
    fn profile_bookkeeping() {
        let prof = MultidegreeProfile::new(4, &[2, 2], Some(4)).unwrap();
        assert_eq!((prof.a(), prof.c()), (2, 1));
        assert_eq!(prof.full_degrees().unwrap(), vec![2, 2, 2, 2]);
        assert_eq!(prof.k(), Some(1));
        let odd = MultidegreeProfile::new(6, &[1, 1, 1], Some(3)).unwrap();
        assert_eq!((odd.a(), odd.c()), (0, 0));
        let three = MultidegreeProfile::new(8, &[2, 1, 2, 2], Some(4)).unwrap();
        assert_eq!(three.degrees(), &[1, 2, 2, 2]);
        assert_eq!((three.a(), three.c()), (3, 3));
        assert!(MultidegreeProfile::new(4, &[0, 1], None).is_err());
    }

    /// (n_vars, normalized degrees with t = n_vars/2, e)
    fn normalized_profile() -> impl Strategy<Value = (usize, Vec<u32>, u32)> {
        (1usize..4, 2u32..13).prop_flat_map(|(k, e)| {
            let t = k + 1;
            (
                Just(2 * k + 2),
                proptest::collection::vec(1u32..=e / 2, t),
                Just(e),
            )
        })
    }

    proptest! {
        #[test]
        fn cross_identity_and_difference((n, d, e) in normalized_profile()) {
            let chi = p(n);
            let codim = locus_codim(&chi, &d, e).unwrap();
            prop_assert_eq!(codim, locus_codim_from_dimensions(&chi, &d, e).unwrap());
            let prof = MultidegreeProfile::new(n, &d, Some(e)).unwrap();
            let full = prof.full_degrees().unwrap();
            prop_assert_eq!(
                hilbert_diff(&chi, &d, e).unwrap(),
                ci_hilbert(&chi, &full, e as i64).unwrap() - ci_hilbert(&chi, &d, e as i64).unwrap()
            );
        }

        #[test]
        fn permutation_invariance((n, mut d, e) in normalized_profile(), rot in 0usize..4) {
            let chi = p(n);
            let base = (
                ci_hilbert(&chi, &d, e as i64).unwrap(),
                hilbert_diff(&chi, &d, e).unwrap(),
                ci_scheme_dim(&chi, &d).unwrap(),
                locus_codim(&chi, &d, e).unwrap(),
            );
            let len = d.len();
            d.rotate_left(rot % len);
            d.reverse();
            prop_assert_eq!(base, (
                ci_hilbert(&chi, &d, e as i64).unwrap(),
                hilbert_diff(&chi, &d, e).unwrap(),
                ci_scheme_dim(&chi, &d).unwrap(),
                locus_codim(&chi, &d, e).unwrap(),
            ));
        }

        #[test]
        fn full_profiles_are_gorenstein_shaped(n in 1usize..7, raw in proptest::collection::vec(1u32..5, 6)) {
            let d = &raw[..n];
            let chi = p(n);
            let socle = socle_degree(n, d).unwrap();
            prop_assert_eq!(ci_hilbert(&chi, d, socle).unwrap(), 1);
            for m in socle + 1..socle + 4 {
                prop_assert_eq!(ci_hilbert(&chi, d, m).unwrap(), 0);
            }
            for m in 0..=socle {
                prop_assert_eq!(
                    ci_hilbert(&chi, d, m).unwrap(),
                    ci_hilbert(&chi, d, socle - m).unwrap()
                );
            }
        }

        #[test]
        fn scheme_dim_is_sum_of_hilbert_values_at_generator_degrees(n in 2usize..7, d in proptest::collection::vec(1u32..5, 1..4)) {
            // dim H^0(N_Z) = sum_j h_{I(Z)}(d_j): the A(i;j) sets are exactly the
            // subsets with degree sum at most d_j
            let chi = p(n);
            let direct: i64 = d.iter().map(|&dj| ci_hilbert(&chi, &d, dj as i64).unwrap()).sum();
            prop_assert_eq!(ci_scheme_dim(&chi, &d).unwrap(), direct);
        }
    }
}

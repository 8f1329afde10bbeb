//! Operations on a cycle Z = V(P) inside a hypersurface F = sum P_i Q_i.

use super::witness::{certify_regular_sequence, sum_of_products, Certificate, CIWitness};
use crate::error::{Error, Result};
use crate::graded::{generator_degrees, graded_span};
use crate::linalg::{echelon_rank, solve_linear, Matrix};
use crate::monomial::{monomials_of_degree, MonomialBasis};
use crate::poly::Poly;

/// Solves `F = sum P_i Q_i` for cofactors with `deg Q_i = deg F - deg P_i`.
///
/// Returns the particular solution of the elimination (free coefficients set
/// to zero). Cofactors of negative degree are zero.
pub fn decompose(f: &Poly, p: &[Poly]) -> Result<Vec<Poly>> {
    let field = f.field();
    let n = f.n_vars();
    generator_degrees(field, n, std::slice::from_ref(f))?;
    let p_degrees = generator_degrees(field, n, p)?;
    let Some(e) = f.homogeneous_degree() else {
        return Ok(p.iter().map(|_| Poly::zero(field, n)).collect());
    };
    let target = MonomialBasis::new(n, e as i64);
    // one block of unknowns per generator: the coefficients of Q_i
    let blocks: Vec<Vec<_>> = p_degrees
        .iter()
        .map(|d| match d {
            Some(d) if *d <= e => monomials_of_degree(n, (e - d) as i64),
            _ => Vec::new(),
        })
        .collect();
    let unknowns: usize = blocks.iter().map(Vec::len).sum();
    let mut a = Matrix::zeros(field, target.len(), unknowns);
    let mut col = 0;
    for (pi, block) in p.iter().zip(&blocks) {
        for mu in block {
            for (m, c) in pi.terms() {
                let row = target.index_of(&m.mul(mu)).expect("degree e product");
                a.set(row, col, c);
            }
            col += 1;
        }
    }
    let b = f.coords(&target)?;
    let x = solve_linear(&a, &b)?.ok_or(Error::NotContained)?;
    let mut offset = 0;
    Ok(blocks
        .iter()
        .map(|block| {
            let q = Poly::from_terms(
                field,
                n,
                block
                    .iter()
                    .zip(&x[offset..offset + block.len()])
                    .map(|(m, &c)| (m.clone(), c))
                    .collect::<Vec<_>>(),
            );
            offset += block.len();
            q
        })
        .collect())
}

/// Outcome of swapping `P_i` with its cofactor `Q_i`.
#[derive(Clone, Debug)]
pub struct Residual {
    pub witness: CIWitness,
    /// `sum P'_j Q'_j = F` for the swapped witness.
    pub f_preserved: bool,
    /// `F - P_i Q_i` lies in the degree-e piece of `(P_j : j != i)`.
    pub class_identity: bool,
}

/// The residual complete intersection `V(P_1, .., Q_i, .., P_t)`.
pub fn residual(w: &CIWitness, i: usize) -> Result<Residual> {
    let (q, f, e) = w.cofactors()?;
    let t = w.p().len();
    if i >= t {
        return Err(Error::IndexOutOfRange { index: i, limit: t });
    }
    let mut p2 = w.p().to_vec();
    let mut q2 = q.to_vec();
    std::mem::swap(&mut p2[i], &mut q2[i]);
    let mut degrees = w.degrees().to_vec();
    degrees[i] = e - degrees[i];

    let field = w.field();
    let n = w.n_vars();
    let f_preserved = &sum_of_products(field, n, &p2, &q2)? == f;
    let others: Vec<Poly> = w
        .p()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, g)| g.clone())
        .collect();
    let rest = f.sub(&w.p()[i].mul(&q[i])?)?;
    let class_identity = graded_span(field, n, &others, e as i64)?.contains(&rest)?;

    // (P, Q) is the same generator set, so only its certificate carries over
    let certs: Vec<Certificate> = w
        .certificates()
        .iter()
        .filter(|c| c.degrees.len() == 2 * t)
        .cloned()
        .collect();
    Ok(Residual {
        witness: w.with_generators_unchecked(p2, degrees, q2, certs),
        f_preserved,
        class_identity,
    })
}

/// For each variable, whether `dF/dx_j` lies in `(P, Q)_{e-1}`.
pub fn jacobian_containment(w: &CIWitness) -> Result<Vec<bool>> {
    let (_, f, e) = w.cofactors()?;
    let span = graded_span(w.field(), w.n_vars(), &w.generators(), e as i64 - 1)?;
    (0..w.n_vars())
        .map(|j| span.contains(&f.partial_derivative(j)))
        .collect()
}

/// Nullity of `(f_i) -> sum f_i Q_i` from `sum_i (S/I(Z))_{d_i}` to
/// `(S/I(Z))_e`, computed in standard-monomial coordinates.
pub fn fiber_tangent_dim(w: &CIWitness) -> Result<usize> {
    let (q, _, e) = w.cofactors()?;
    let field = w.field();
    let n = w.n_vars();
    let target = graded_span(field, n, w.p(), e as i64)?;
    let mut rows = Vec::new();
    for (qi, &di) in q.iter().zip(w.degrees()) {
        let source = graded_span(field, n, w.p(), di as i64)?;
        for mu in source.standard_monomials() {
            rows.push(target.quotient_coords(&qi.mul_monomial(&mu))?);
        }
    }
    let domain = rows.len();
    let mat = Matrix::from_rows(field, target.codim(), rows)?;
    Ok(domain - echelon_rank(&mat))
}

/// Deforms the cycle inside the same hypersurface: with `B` the indices
/// whose degree is `e/2`, replaces `P_b` by `R_b = P_b + sum_c M_bc Q_c`
/// for an antisymmetric `M` indexed by `B`.
pub fn antisym_family(w: &CIWitness, m: &[Vec<u64>]) -> Result<CIWitness> {
    let (q, _, e) = w.cofactors()?;
    let field = w.field();
    let block: Vec<usize> = w
        .degrees()
        .iter()
        .enumerate()
        .filter(|&(_, &d)| e % 2 == 0 && 2 * d == e)
        .map(|(i, _)| i)
        .collect();
    let a = block.len();
    if a == 0 {
        return Err(Error::NoAntisymmetricBlock);
    }
    if m.len() != a {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: m.len(),
        });
    }
    for row in m {
        if row.len() != a {
            return Err(Error::DimensionMismatch {
                expected: a,
                found: row.len(),
            });
        }
    }
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if field.add(field.reduce(x), field.reduce(m[j][i])) != 0 || (i == j && field.reduce(x) != 0) {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    let mut p2 = w.p().to_vec();
    for (bi, &i) in block.iter().enumerate() {
        let mut r = w.p()[i].clone();
        for (bj, &j) in block.iter().enumerate() {
            r = r.add(&q[j].scale(m[bi][bj]))?;
        }
        p2[i] = r;
    }
    let n = w.n_vars();
    let mut certs: Vec<Certificate> = w
        .certificates()
        .iter()
        .filter(|c| c.degrees.len() == 2 * p2.len())
        .cloned()
        .collect();
    if p2.len() < n {
        certs.insert(0, certify_regular_sequence(field, n, &p2, None)?);
    }
    Ok(w.with_generators_unchecked(p2, w.degrees().to_vec(), q.to_vec(), certs))
}

/// Exact smoothness test: the partial derivatives of F form a regular
/// sequence, i.e. the Jacobian ring vanishes in degree `n (e - 2) + 1`.
pub fn smoothness_check(w: &CIWitness) -> Result<Certificate> {
    let (_, f, _) = w.cofactors()?;
    let partials: Vec<Poly> = (0..w.n_vars()).map(|j| f.partial_derivative(j)).collect();
    certify_regular_sequence(w.field(), w.n_vars(), &partials, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::oracle::seeded_rng;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn decompose_a_product() {
        let f = fp();
        let mut rng = seeded_rng(5, 0);
        let forms = crate::oracle::random_forms(&mut rng, f, 4, &[1, 1, 2]);
        let target = forms[0].mul(&forms[2]).unwrap();
        let q = decompose(&target, &forms[..2]).unwrap();
        assert_eq!(q.len(), 2);
        let back = sum_of_products(f, 4, &forms[..2], &q).unwrap();
        assert_eq!(back, target);
    }

    #[test]
    fn decompose_rejects_non_members() {
        let f = fp();
        let x0 = Poly::var(f, 2, 0);
        let x1 = Poly::var(f, 2, 1);
        assert_eq!(
            decompose(&x0.mul(&x0).unwrap(), &[x1]),
            Err(Error::NotContained)
        );
    }

    #[test]
    fn residual_is_an_involution() {
        let w = CIWitness::random(&mut seeded_rng(1, 0), fp(), 4, &[1, 2], 4).unwrap();
        let r = residual(&w, 0).unwrap();
        assert!(r.f_preserved && r.class_identity);
        assert_eq!(r.witness.degrees(), &[3, 2]);
        let back = residual(&r.witness, 0).unwrap();
        assert_eq!(back.witness.p(), w.p());
        assert_eq!(back.witness.q(), w.q());
        assert!(residual(&w, 2).is_err());
    }

    #[test]
    fn antisymmetry_is_enforced() {
        let w = CIWitness::random(&mut seeded_rng(2, 0), fp(), 4, &[2, 2], 4).unwrap();
        assert!(matches!(
            antisym_family(&w, &[vec![1, 0], vec![0, 0]]),
            Err(Error::NotAntisymmetric)
        ));
        assert!(matches!(
            antisym_family(&w, &[vec![0, 1], vec![1, 0]]),
            Err(Error::NotAntisymmetric)
        ));
        assert!(matches!(
            antisym_family(&w, &[vec![0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        let same = antisym_family(&w, &[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(same.p(), w.p());
        let lines = CIWitness::random(&mut seeded_rng(2, 0), fp(), 4, &[1, 1], 4).unwrap();
        assert!(matches!(
            antisym_family(&lines, &[]),
            Err(Error::NoAntisymmetricBlock)
        ));
    }

    #[test]
    fn cofactors_are_required() {
        let w = CIWitness::random_cycle(&mut seeded_rng(3, 0), fp(), 4, &[1, 1]).unwrap();
        assert_eq!(fiber_tangent_dim(&w), Err(Error::MissingCofactors));
        assert_eq!(jacobian_containment(&w), Err(Error::MissingCofactors));
        assert!(matches!(residual(&w, 0), Err(Error::MissingCofactors)));
    }
}

//! Dense complex-matrix primitives shared by every other module.
//!
//! The conventions fixed here are load-bearing for the rest of the crate:
//!
//! - `vectorize` stacks **columns**, so `kron(a, b) * vectorize(x)`
//!   equals `vectorize(b * x * a.transpose())`;
//! - rank and kernel decisions treat a singular value as zero when
//!   `sigma <= rel * sigma_max + abs` (see [`Tolerance`]);
//! - Hermitian eigendecompositions symmetrize inputs with asymmetry up to
//!   `1e-8` and reject anything worse.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Dense complex matrix, the universal numeric carrier of the crate.
pub type ComplexMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type ComplexVector = DVector<Complex64>;

/// Largest Hermitian asymmetry `max |a - a†|` that gets silently repaired
/// by symmetrization before an eigendecomposition.
pub const HERMITIAN_REPAIR_LIMIT: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("matrix must be {expected}, got {rows}x{cols}")]
    DimensionMismatch {
        expected: String,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {limit:.3e}")]
    NotHermitian { asymmetry: f64, limit: f64 },
    #[error("matrix entries must be finite")]
    NonFiniteEntry,
    #[error("tolerances must be nonnegative, got abs={abs}, rel={rel}")]
    NegativeTolerance { abs: f64, rel: f64 },
}

/// Absolute/relative tolerance pair for rank and comparison decisions.
///
/// A singular value counts as zero when it is at most
/// `rel * sigma_max + abs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self, NumError> {
        if abs < 0.0 || rel < 0.0 || !abs.is_finite() || !rel.is_finite() {
            return Err(NumError::NegativeTolerance { abs, rel });
        }
        Ok(Self { abs, rel })
    }

    /// Threshold below which a singular value is treated as zero, given the
    /// largest singular value of the matrix under inspection.
    pub fn singular_value_floor(&self, sigma_max: f64) -> f64 {
        self.rel * sigma_max + self.abs
    }
}

/// Complex scalar shorthand.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real scalar promoted to a complex one.
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Builds a matrix from row slices, rejecting non-finite entries and ragged
/// or empty shapes.
pub fn matrix_from_rows(rows: &[Vec<Complex64>]) -> Result<ComplexMatrix, NumError> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    if nrows == 0 || ncols == 0 {
        return Err(NumError::DimensionMismatch {
            expected: "at least 1x1".into(),
            rows: nrows,
            cols: ncols,
        });
    }
    for row in rows {
        if row.len() != ncols {
            return Err(NumError::DimensionMismatch {
                expected: format!("rectangular with {ncols} columns"),
                rows: nrows,
                cols: row.len(),
            });
        }
        for z in row {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(NumError::NonFiniteEntry);
            }
        }
    }
    Ok(ComplexMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

/// Conjugate transpose.
pub fn dagger(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// Column-stacking of a matrix into a vector: entry `(i, j)` lands at
/// position `i + rows * j`.
pub fn vectorize(a: &ComplexMatrix) -> ComplexVector {
    ComplexVector::from_iterator(a.nrows() * a.ncols(), a.iter().copied())
}

/// Inverse of [`vectorize`] for the given shape.
pub fn unvectorize(v: &ComplexVector, rows: usize, cols: usize) -> ComplexMatrix {
    assert_eq!(v.len(), rows * cols, "vector length must be rows*cols");
    ComplexMatrix::from_iterator(rows, cols, v.iter().copied())
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Which tensor factor a partial trace removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSide {
    First,
    Second,
}

/// Partial trace of a matrix on a `d1 ⊗ d2` space over the named factor.
pub fn partial_trace(
    a: &ComplexMatrix,
    d1: usize,
    d2: usize,
    side: TraceSide,
) -> Result<ComplexMatrix, NumError> {
    let n = d1 * d2;
    if a.nrows() != n || a.ncols() != n {
        return Err(NumError::DimensionMismatch {
            expected: format!("{n}x{n} for a {d1}x{d2} bipartition"),
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    match side {
        TraceSide::Second => {
            let mut out = ComplexMatrix::zeros(d1, d1);
            for i in 0..d1 {
                for j in 0..d1 {
                    let mut s = Complex64::ZERO;
                    for k in 0..d2 {
                        s += a[(i * d2 + k, j * d2 + k)];
                    }
                    out[(i, j)] = s;
                }
            }
            Ok(out)
        }
        TraceSide::First => {
            let mut out = ComplexMatrix::zeros(d2, d2);
            for i in 0..d2 {
                for j in 0..d2 {
                    let mut s = Complex64::ZERO;
                    for k in 0..d1 {
                        s += a[(k * d2 + i, k * d2 + j)];
                    }
                    out[(i, j)] = s;
                }
            }
            Ok(out)
        }
    }
}

/// Largest singular value. Zero for an all-zero matrix.
pub fn spectral_norm(a: &ComplexMatrix) -> f64 {
    a.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Frobenius norm.
pub fn fro_norm(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry magnitude.
pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Hermitian asymmetry `max |a - a†|`.
pub fn hermitian_asymmetry(a: &ComplexMatrix) -> f64 {
    max_abs(&(a - dagger(a)))
}

/// Orthonormal basis of the numerical null space of `a`.
///
/// Singular values at or below `tol.singular_value_floor(sigma_max)` count
/// as zero. The returned vectors satisfy `‖a v‖ <= floor`.
pub fn nullspace_basis(a: &ComplexMatrix, tol: &Tolerance) -> Vec<ComplexVector> {
    let (m, n) = (a.nrows(), a.ncols());
    // Pad with zero rows when the matrix is wide so the thin SVD still
    // produces a full set of n right-singular vectors.
    let padded;
    let work = if m < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        padded = p;
        &padded
    } else {
        a
    };
    let svd = work.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let floor = tol.singular_value_floor(sigma_max);
    let mut basis = Vec::new();
    for (k, sigma) in svd.singular_values.iter().enumerate() {
        if *sigma <= floor {
            basis.push(v_t.row(k).adjoint());
        }
    }
    basis
}

/// Numerical rank of `a` under the same singular-value floor as
/// [`nullspace_basis`].
pub fn rank(a: &ComplexMatrix, tol: &Tolerance) -> usize {
    let sv = a.clone().singular_values();
    let sigma_max = sv.iter().copied().fold(0.0, f64::max);
    let floor = tol.singular_value_floor(sigma_max);
    sv.iter().filter(|s| **s > floor).count()
}

/// Moore–Penrose pseudo-inverse with the crate's singular-value floor.
pub fn pseudo_inverse(a: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let floor = tol.singular_value_floor(sigma_max);
    let k = svd.singular_values.len();
    let mut sigma_pinv = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        let s = svd.singular_values[i];
        if s > floor {
            sigma_pinv[(i, i)] = cr(1.0 / s);
        }
    }
    v_t.adjoint() * sigma_pinv * u.adjoint()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Inputs with asymmetry up to [`HERMITIAN_REPAIR_LIMIT`] are symmetrized
/// as `(a + a†)/2`; anything worse is an error. Returns `(values, vectors)`
/// with `a ≈ vectors * diag(values) * vectors†`.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<(DVector<f64>, ComplexMatrix), NumError> {
    if a.nrows() != a.ncols() {
        return Err(NumError::DimensionMismatch {
            expected: "square".into(),
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let asym = hermitian_asymmetry(a);
    let scale = max_abs(a).max(1.0);
    if asym > HERMITIAN_REPAIR_LIMIT * scale {
        return Err(NumError::NotHermitian {
            asymmetry: asym,
            limit: HERMITIAN_REPAIR_LIMIT * scale,
        });
    }
    let sym = (a + dagger(a)).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Frobenius-nearest positive semidefinite matrix: eigendecompose, clamp
/// negative eigenvalues to zero, reassemble.
pub fn psd_project(a: &ComplexMatrix) -> Result<ComplexMatrix, NumError> {
    let (values, vectors) = eig_hermitian(a)?;
    let n = a.nrows();
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        if values[k] > 0.0 {
            let v = vectors.column(k);
            // out += lambda * v v†
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += cr(values[k]) * v[i] * v[j].conj();
                }
            }
        }
    }
    Ok(out)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64, NumError> {
    let (values, _) = eig_hermitian(a)?;
    Ok(values[0])
}

/// Inverse square root of a Hermitian positive definite matrix.
pub fn invsqrt_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix, NumError> {
    let (values, vectors) = eig_hermitian(a)?;
    let n = a.nrows();
    let floor = values[n - 1].abs() * 1e-14;
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        if values[k] <= floor {
            return Err(NumError::NotHermitian {
                asymmetry: values[k],
                limit: floor,
            });
        }
        let w = 1.0 / values[k].sqrt();
        let v = vectors.column(k);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += cr(w) * v[i] * v[j].conj();
            }
        }
    }
    Ok(out)
}

/// `d x d` identity.
pub fn identity(d: usize) -> ComplexMatrix {
    ComplexMatrix::identity(d, d)
}

/// Rank-one projector `|v⟩⟨v| / ⟨v|v⟩`.
pub fn projector(v: &ComplexVector) -> ComplexMatrix {
    let n2 = v.norm_squared();
    ComplexMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj() / cr(n2))
}

/// Computational basis matrix unit `|i⟩⟨j|` in dimension `d`.
pub fn matrix_unit(d: usize, i: usize, j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    m[(i, j)] = cr(1.0);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use proptest::prelude::*;

    fn pauli_x() -> ComplexMatrix {
        matrix_from_rows(&[vec![cr(0.0), cr(1.0)], vec![cr(1.0), cr(0.0)]]).unwrap()
    }

    fn pauli_z() -> ComplexMatrix {
        matrix_from_rows(&[vec![cr(1.0), cr(0.0)], vec![cr(0.0), cr(-1.0)]]).unwrap()
    }

    fn random_matrix(rng: &mut CounterRng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.normal(), rng.normal()))
    }

    #[test]
    fn vectorize_column_stacking() {
        let a = matrix_from_rows(&[vec![cr(1.0), cr(2.0)], vec![cr(3.0), cr(4.0)]]).unwrap();
        let v = vectorize(&a);
        assert_eq!(
            v.iter().map(|z| z.re).collect::<Vec<_>>(),
            vec![1.0, 3.0, 2.0, 4.0]
        );
    }

    #[test]
    fn vectorize_identity_and_zero() {
        let v = vectorize(&identity(2));
        assert_eq!(
            v.iter().map(|z| z.re).collect::<Vec<_>>(),
            vec![1.0, 0.0, 0.0, 1.0]
        );
        let z = vectorize(&ComplexMatrix::zeros(2, 3));
        assert_eq!(z.len(), 6);
        assert!(z.iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn kron_identities() {
        let i4 = kron(&identity(2), &identity(2));
        assert!(max_abs(&(i4 - identity(4))) == 0.0);

        let d1 = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(1.0), cr(2.0)]));
        let d2 = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(3.0), cr(4.0)]));
        let k = kron(&d1, &d2);
        let expected = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![
            cr(3.0),
            cr(4.0),
            cr(6.0),
            cr(8.0),
        ]));
        assert!(max_abs(&(k - expected)) == 0.0);
    }

    #[test]
    fn kron_vec_identity_on_pauli_x() {
        let mut rng = CounterRng::new(7, 0);
        let x = random_matrix(&mut rng, 2, 2);
        let sx = pauli_x();
        let lhs = kron(&sx, &sx) * vectorize(&x);
        let rhs = vectorize(&(&sx * &x * sx.transpose()));
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_product_state() {
        let mut rng = CounterRng::new(11, 0);
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 3, 3);
        let ab = kron(&a, &b);
        let got = partial_trace(&ab, 2, 3, TraceSide::Second).unwrap();
        let expected = a.scale(1.0) * b.trace();
        assert!(max_abs(&(got - expected)) < 1e-12);

        let i4 = identity(4);
        let tr_first = partial_trace(&i4, 2, 2, TraceSide::First).unwrap();
        assert!(max_abs(&(tr_first - identity(2).scale(2.0))) < 1e-14);
    }

    #[test]
    fn partial_trace_bell_projector() {
        // |Φ+⟩ = (|00⟩ + |11⟩)/√2
        let phi = ComplexVector::from_vec(vec![cr(1.0), cr(0.0), cr(0.0), cr(1.0)])
            .scale(1.0 / 2.0_f64.sqrt());
        let proj = projector(&phi);
        for side in [TraceSide::First, TraceSide::Second] {
            let red = partial_trace(&proj, 2, 2, side).unwrap();
            assert!(max_abs(&(red - identity(2).scale(0.5))) < 1e-14);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let a = identity(3);
        assert!(partial_trace(&a, 2, 2, TraceSide::First).is_err());
    }

    #[test]
    fn nullspace_of_full_rank_and_zero() {
        let tol = Tolerance::default();
        assert!(nullspace_basis(&identity(4), &tol).is_empty());
        let z = ComplexMatrix::zeros(3, 3);
        let basis = nullspace_basis(&z, &tol);
        assert_eq!(basis.len(), 3);
        for (i, v) in basis.iter().enumerate() {
            for (j, w) in basis.iter().enumerate() {
                let ip = v.dotc(w);
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((ip - cr(expected)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn nullspace_of_dephasing_transfer() {
        // Qubit completely-dephasing transfer is diag(1, 0, 0, 1) under
        // column stacking; its kernel is spanned by vec(|0⟩⟨1|), vec(|1⟩⟨0|).
        let t = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
        ]));
        let basis = nullspace_basis(&t, &Tolerance::default());
        assert_eq!(basis.len(), 2);
        let e01 = vectorize(&matrix_unit(2, 0, 1));
        let e10 = vectorize(&matrix_unit(2, 1, 0));
        for target in [e01, e10] {
            // residual of projecting the target onto the computed basis
            let mut residual = target.clone();
            for v in &basis {
                let coeff = v.dotc(&target);
                residual -= v.scale(1.0) * coeff;
            }
            assert!(residual.norm() < 1e-12);
        }
    }

    #[test]
    fn pseudo_inverse_examples() {
        let tol = Tolerance::default();
        let p = pseudo_inverse(&identity(3), &tol);
        assert!(max_abs(&(p - identity(3))) < 1e-12);

        let d = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(2.0), cr(0.0)]));
        let p = pseudo_inverse(&d, &tol);
        let expected =
            ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(0.5), cr(0.0)]));
        assert!(max_abs(&(p - expected)) < 1e-12);
    }

    #[test]
    fn pseudo_inverse_of_sic_gram() {
        // Gram matrix of the qubit tetrahedral SIC: 1/4 diagonal, 1/12 off.
        let r = ComplexMatrix::from_fn(4, 4, |i, j| if i == j { cr(0.25) } else { cr(1.0 / 12.0) });
        let tol = Tolerance::default();
        let pinv = pseudo_inverse(&r, &tol);
        assert!(max_abs(&(&r * &pinv - identity(4))) < 1e-10);
        assert!(max_abs(&(&pinv * &r - identity(4))) < 1e-10);
    }

    #[test]
    fn psd_project_examples() {
        let a = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(1.5), cr(-0.5)]));
        let p = psd_project(&a).unwrap();
        let expected =
            ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(1.5), cr(0.0)]));
        assert!(max_abs(&(p - expected)) < 1e-12);

        // fixed point on PSD input
        let b = ComplexMatrix::from_diagonal(&ComplexVector::from_vec(vec![cr(0.3), cr(0.7)]));
        assert!(max_abs(&(psd_project(&b).unwrap() - b)) < 1e-12);

        // psd_project(σx) = (σx + I)/2
        let sx = pauli_x();
        let p = psd_project(&sx).unwrap();
        let expected = (&sx + identity(2)).scale(0.5);
        assert!(max_abs(&(p - expected)) < 1e-12);
    }

    #[test]
    fn eig_hermitian_examples() {
        let (vals, _) = eig_hermitian(&identity(2)).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);

        let (vals, vecs) = eig_hermitian(&pauli_z()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        // reassembly
        let re = &vecs
            * ComplexMatrix::from_diagonal(&ComplexVector::from_iterator(
                2,
                vals.iter().map(|x| cr(*x)),
            ))
            * vecs.adjoint();
        assert!(max_abs(&(re - pauli_z())) < 1e-12);
    }

    #[test]
    fn eig_hermitian_rejects_asymmetric() {
        let a = matrix_from_rows(&[vec![cr(0.0), cr(1.0)], vec![cr(0.0), cr(0.0)]]).unwrap();
        assert!(matches!(
            eig_hermitian(&a),
            Err(NumError::NotHermitian { .. })
        ));
    }

    #[test]
    fn invsqrt_recovers_inverse_square_root() {
        let mut rng = CounterRng::new(23, 0);
        let g = random_matrix(&mut rng, 3, 3);
        let s = &g * dagger(&g) + identity(3).scale(0.5);
        let r = invsqrt_hermitian(&s).unwrap();
        assert!(max_abs(&(&r * &s * &r - identity(3))) < 1e-9);
    }

    #[test]
    fn tolerance_rejects_negative_or_non_finite_values() {
        assert!(Tolerance::new(-1e-9, 1e-9).is_err());
        assert!(Tolerance::new(1e-9, f64::NAN).is_err());
        let tol = Tolerance::new(1e-6, 1e-3).unwrap();
        assert!((tol.singular_value_floor(10.0) - (1e-2 + 1e-6)).abs() < 1e-18);
    }

    #[test]
    fn matrix_from_rows_rejects_nan() {
        let bad = vec![vec![c(f64::NAN, 0.0)]];
        assert!(matches!(
            matrix_from_rows(&bad),
            Err(NumError::NonFiniteEntry)
        ));
        let ragged = vec![vec![cr(1.0), cr(2.0)], vec![cr(3.0)]];
        assert!(matrix_from_rows(&ragged).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn unvec_of_vec_is_identity(seed in 0u64..1000, rows in 1usize..5, cols in 1usize..5) {
            let mut rng = CounterRng::new(seed, 1);
            let a = random_matrix(&mut rng, rows, cols);
            let back = unvectorize(&vectorize(&a), rows, cols);
            prop_assert!(max_abs(&(back - a)) == 0.0);
        }

        #[test]
        fn kron_vec_identity_random(seed in 0u64..1000) {
            let mut rng = CounterRng::new(seed, 2);
            let a = random_matrix(&mut rng, 3, 2);
            let b = random_matrix(&mut rng, 2, 3);
            let x = random_matrix(&mut rng, 3, 2);
            let lhs = kron(&a, &b) * vectorize(&x);
            let rhs = vectorize(&(&b * &x * a.transpose()));
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn moore_penrose_conditions(seed in 0u64..500, m in 2usize..5, n in 2usize..5) {
            let mut rng = CounterRng::new(seed, 3);
            let a = random_matrix(&mut rng, m, n);
            let tol = Tolerance::default();
            let p = pseudo_inverse(&a, &tol);
            prop_assert!(max_abs(&(&a * &p * &a - &a)) < 1e-8);
            prop_assert!(max_abs(&(&p * &a * &p - &p)) < 1e-8);
            prop_assert!(hermitian_asymmetry(&(&a * &p)) < 1e-8);
            prop_assert!(hermitian_asymmetry(&(&p * &a)) < 1e-8);
        }

        #[test]
        fn nullspace_vectors_are_annihilated(seed in 0u64..300) {
            let mut rng = CounterRng::new(seed, 4);
            // Rank-deficient 4x4: two independent columns repeated.
            let g = random_matrix(&mut rng, 4, 2);
            let h = random_matrix(&mut rng, 2, 4);
            let a = &g * &h;
            let tol = Tolerance::default();
            let sigma_max = spectral_norm(&a);
            let basis = nullspace_basis(&a, &tol);
            prop_assert_eq!(basis.len(), 2);
            for v in &basis {
                prop_assert!((&a * v).norm() <= tol.singular_value_floor(sigma_max) * 10.0);
            }
        }

        #[test]
        fn psd_projection_is_nearest(seed in 0u64..200) {
            let mut rng = CounterRng::new(seed, 5);
            let g = random_matrix(&mut rng, 3, 3);
            let a = (&g + dagger(&g)).scale(0.5);
            let p = psd_project(&a).unwrap();
            prop_assert!(min_eigenvalue(&p).unwrap() >= -1e-12);
            let d_best = fro_norm(&(&p - &a));
            // no sampled PSD matrix may be strictly closer
            for _ in 0..20 {
                let q = random_matrix(&mut rng, 3, 3);
                let cand = &q * dagger(&q);
                prop_assert!(fro_norm(&(&cand - &a)) + 1e-12 >= d_best);
            }
        }

        #[test]
        fn partial_trace_preserves_trace(seed in 0u64..300) {
            let mut rng = CounterRng::new(seed, 6);
            let a = random_matrix(&mut rng, 6, 6);
            for side in [TraceSide::First, TraceSide::Second] {
                let r = partial_trace(&a, 2, 3, side).unwrap();
                prop_assert!((r.trace() - a.trace()).norm() < 1e-12);
            }
        }
    }
}

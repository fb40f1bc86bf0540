//! POVMs, informational completeness, and linear-inversion state
//! reconstruction.
//!
//! A measurement with outcome probabilities `p(x) = Tr[ρ M(x)]` determines
//! the state `ρ` exactly when its elements span the operator space
//! (informational completeness). Reconstruction inverts the Gram system
//! `P = R·C` with `R(x,y) = Tr[M(x) M(y)]`, then reassembles
//! `ρ = Σ_y c_y M(y)`. For a minimal IC measurement (`d²` outcomes) `R` is
//! invertible; for an overcomplete one the pseudo-inverse picks the
//! least-squares coefficient vector.

use crate::channels::{dual, ChannelError, OperatorMap};
use crate::numkit::{
    self, cr, identity, invsqrt_hermitian, max_abs, min_eigenvalue, pseudo_inverse, vectorize,
    ComplexMatrix, ComplexVector, NumError, Tolerance,
};
use num_complex::Complex64;
use thiserror::Error;

/// Absolute tolerance for the POVM axioms (element positivity and
/// resolution of the identity).
pub const POVM_AXIOM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PovmError {
    #[error("POVM must have at least one element")]
    Empty,
    #[error("POVM elements must all be {dim}x{dim}")]
    DimensionMismatch { dim: usize },
    #[error("element {index} is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    ElementNotPsd { index: usize, min_eigenvalue: f64 },
    #[error("elements do not sum to the identity (deviation {deviation:.3e})")]
    NotResolutionOfIdentity { deviation: f64 },
    #[error("measurement is not informationally complete (frame rank {rank} < {needed})")]
    NotInformationallyComplete { rank: usize, needed: usize },
    #[error("measurement is not minimal informationally complete")]
    NotMinimalIc,
    #[error("probability vector has length {got}, expected {expected}")]
    ProbabilityLength { got: usize, expected: usize },
    #[error("no strictly positive expansion coefficient for the surplus block (max {max:.3e})")]
    NoPositiveCoefficient { max: f64 },
    #[error("depolarizing parameter t={0} outside (0, 1]")]
    ParameterOutOfRange(f64),
    #[error("construction failed verification: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

/// Finite outcome-indexed family of PSD matrices summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    label: String,
}

impl Povm {
    /// Validates the POVM axioms: every element Hermitian PSD to
    /// [`POVM_AXIOM_TOL`] and the family summing to the identity.
    pub fn new(elements: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self, PovmError> {
        let dim = match elements.first() {
            Some(e) => e.nrows(),
            None => return Err(PovmError::Empty),
        };
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (index, e) in elements.iter().enumerate() {
            if e.nrows() != dim || e.ncols() != dim {
                return Err(PovmError::DimensionMismatch { dim });
            }
            let min_eig = min_eigenvalue(e)?;
            if min_eig < -POVM_AXIOM_TOL {
                return Err(PovmError::ElementNotPsd {
                    index,
                    min_eigenvalue: min_eig,
                });
            }
            sum += e;
        }
        let deviation = max_abs(&(sum - identity(dim)));
        if deviation > POVM_AXIOM_TOL {
            return Err(PovmError::NotResolutionOfIdentity { deviation });
        }
        Ok(Self {
            dim,
            elements,
            label: label.into(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Outcome probabilities `Tr[ρ M(x)]` for a given state.
    pub fn probabilities(&self, rho: &ComplexMatrix) -> Result<Vec<f64>, PovmError> {
        if rho.nrows() != self.dim || rho.ncols() != self.dim {
            return Err(PovmError::DimensionMismatch { dim: self.dim });
        }
        Ok(self.elements.iter().map(|m| (rho * m).trace().re).collect())
    }
}

/// Frame diagnostics of a POVM: rank of the element span and the Gram
/// matrix `R(x,y) = Tr[M(x) M(y)]`.
#[derive(Debug, Clone)]
pub struct FrameInfo {
    pub is_ic: bool,
    pub is_minimal_ic: bool,
    pub frame_rank: usize,
    /// Real symmetric Gram matrix, carried as a complex matrix like every
    /// other operator in the crate.
    pub gram: ComplexMatrix,
}

/// Rows of the frame matrix are `vec(M(x))†`.
fn frame_matrix(povm: &Povm) -> ComplexMatrix {
    let d2 = povm.dim * povm.dim;
    let n = povm.outcomes();
    let mut f = ComplexMatrix::zeros(n, d2);
    for (x, m) in povm.elements.iter().enumerate() {
        let v = vectorize(m);
        for k in 0..d2 {
            f[(x, k)] = v[k].conj();
        }
    }
    f
}

/// Computes informational-completeness diagnostics for a POVM.
pub fn frame_info(povm: &Povm) -> FrameInfo {
    let d2 = povm.dim * povm.dim;
    let f = frame_matrix(povm);
    let frame_rank = numkit::rank(&f, &Tolerance::default());
    let n = povm.outcomes();
    let gram = ComplexMatrix::from_fn(n, n, |x, y| {
        cr((&povm.elements[x] * &povm.elements[y]).trace().re)
    });
    let is_ic = frame_rank == d2;
    FrameInfo {
        is_ic,
        is_minimal_ic: is_ic && n == d2,
        frame_rank,
        gram,
    }
}

/// The qubit tetrahedral SIC POVM `M(x) = (1 + s_x·σ)/4` with the four
/// tetrahedron unit vectors `s_x`.
pub fn tetrahedral_sic() -> Povm {
    let s = 1.0 / 3.0_f64.sqrt();
    let dirs = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
    let elements = dirs
        .iter()
        .map(|v| {
            let bloch = crate::channels::pauli_x().scale(v[0])
                + crate::channels::pauli_y().scale(v[1])
                + crate::channels::pauli_z().scale(v[2]);
            (identity(2) + bloch).scale(0.25)
        })
        .collect();
    Povm::new(elements, "tetrahedral SIC").expect("tetrahedral SIC satisfies the POVM axioms")
}

/// Builds a minimal informationally complete POVM in dimension `d` from the
/// `d²` rank-one projectors onto `|j⟩`, `(|j⟩+|k⟩)/√2`, and `(|j⟩+i|k⟩)/√2`:
/// with `S = Σ_a P_a` (positive definite), the elements are
/// `M(a) = S^{-1/2} P_a S^{-1/2}`.
pub fn build_minimal_ic(d: usize) -> Result<Povm, PovmError> {
    if d < 2 {
        return Err(PovmError::DimensionMismatch { dim: d });
    }
    let mut projectors = Vec::with_capacity(d * d);
    for j in 0..d {
        let mut v = ComplexVector::zeros(d);
        v[j] = cr(1.0);
        projectors.push(numkit::projector(&v));
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut v = ComplexVector::zeros(d);
            v[j] = cr(1.0);
            v[k] = cr(1.0);
            projectors.push(numkit::projector(&v));
            let mut w = ComplexVector::zeros(d);
            w[j] = cr(1.0);
            w[k] = Complex64::new(0.0, 1.0);
            projectors.push(numkit::projector(&w));
        }
    }
    let mut s = ComplexMatrix::zeros(d, d);
    for p in &projectors {
        s += p;
    }
    let root = invsqrt_hermitian(&s)?;
    let elements: Vec<ComplexMatrix> = projectors.iter().map(|p| &root * p * &root).collect();
    let povm = Povm::new(elements, format!("minimal IC (d={d})"))?;
    let info = frame_info(&povm);
    if !info.is_minimal_ic {
        return Err(PovmError::ConstructionFailed(format!(
            "expected frame rank {}, got {}",
            d * d,
            info.frame_rank
        )));
    }
    Ok(povm)
}

/// Map from each output outcome to the original outcomes merged into it.
pub type OutcomeMergeMap = Vec<Vec<usize>>;

/// Reduces an informationally complete POVM to a minimal one with `d²`
/// outcomes.
///
/// Selects `d²` linearly independent elements by greedy pivoted rank
/// growth, sums the surplus elements into `X`, expands `X = Σ c_i M(i)`
/// over the selected set, and folds `X` into the selected outcome with the
/// largest (necessarily positive) coefficient. Returns the reduced POVM and
/// the outcome merge map.
pub fn reduce_to_minimal(povm: &Povm) -> Result<(Povm, OutcomeMergeMap), PovmError> {
    let d = povm.dim;
    let d2 = d * d;
    let info = frame_info(povm);
    if !info.is_ic {
        return Err(PovmError::NotInformationallyComplete {
            rank: info.frame_rank,
            needed: d2,
        });
    }
    let n = povm.outcomes();
    if n == d2 {
        let merge = (0..n).map(|i| vec![i]).collect();
        return Ok((povm.clone(), merge));
    }

    // Greedy pivoted selection: repeatedly take the element with the largest
    // residual after projecting out the span of those already selected.
    let rows: Vec<ComplexVector> = povm.elements.iter().map(vectorize).collect();
    let mut selected: Vec<usize> = Vec::with_capacity(d2);
    let mut ortho: Vec<ComplexVector> = Vec::with_capacity(d2);
    let mut available: Vec<usize> = (0..n).collect();
    for _ in 0..d2 {
        let mut best = 0;
        let mut best_norm = -1.0;
        for (slot, &idx) in available.iter().enumerate() {
            let mut r = rows[idx].clone();
            for q in &ortho {
                let coeff = q.dotc(&r);
                r -= q * coeff;
            }
            let norm = r.norm();
            if norm > best_norm {
                best_norm = norm;
                best = slot;
            }
        }
        let idx = available.remove(best);
        let mut r = rows[idx].clone();
        for q in &ortho {
            let coeff = q.dotc(&r);
            r -= q * coeff;
        }
        let norm = r.norm();
        if norm < 1e-12 {
            return Err(PovmError::NotInformationallyComplete {
                rank: selected.len(),
                needed: d2,
            });
        }
        ortho.push(r.unscale(norm));
        selected.push(idx);
    }

    // X = sum of the unselected elements, expanded over the selected set.
    let mut x = ComplexMatrix::zeros(d, d);
    for &idx in &available {
        x += &povm.elements[idx];
    }
    let basis = ComplexMatrix::from_fn(d2, d2, |r, c| rows[selected[c]][r]);
    let coeffs = pseudo_inverse(&basis, &Tolerance::default()) * vectorize(&x);
    let mut best_j = 0;
    let mut best_c = f64::NEG_INFINITY;
    for (j, c) in coeffs.iter().enumerate() {
        if c.re > best_c {
            best_c = c.re;
            best_j = j;
        }
    }
    if best_c <= POVM_AXIOM_TOL {
        return Err(PovmError::NoPositiveCoefficient { max: best_c });
    }

    let mut elements: Vec<ComplexMatrix> =
        selected.iter().map(|&i| povm.elements[i].clone()).collect();
    elements[best_j] += &x;
    let mut merge: OutcomeMergeMap = selected.iter().map(|&i| vec![i]).collect();
    merge[best_j].extend(available.iter().copied());

    let reduced = Povm::new(elements, format!("{} (reduced)", povm.label))?;
    let reduced_info = frame_info(&reduced);
    if !reduced_info.is_minimal_ic {
        return Err(PovmError::ConstructionFailed(
            "reduced POVM lost informational completeness".into(),
        ));
    }
    Ok((reduced, merge))
}

/// Linear-inversion state estimate from outcome probabilities.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// `Σ_y c_y M(y)` with `C = R⁺·P`; Hermitian but possibly not PSD for
    /// noisy probability vectors. Never projected.
    pub estimate: ComplexMatrix,
    /// Whether the estimate is PSD to [`POVM_AXIOM_TOL`].
    pub psd: bool,
}

/// Reconstructs a state from exact or empirical outcome probabilities of an
/// informationally complete POVM.
///
/// Probability vectors that do not sum to one are accepted unchanged (the
/// estimator stays linear for finite-sample frequencies); non-IC
/// measurements are refused since reconstruction would be underdetermined.
pub fn reconstruct_state(povm: &Povm, probs: &[f64]) -> Result<Reconstruction, PovmError> {
    if probs.len() != povm.outcomes() {
        return Err(PovmError::ProbabilityLength {
            got: probs.len(),
            expected: povm.outcomes(),
        });
    }
    let info = frame_info(povm);
    if !info.is_ic {
        return Err(PovmError::NotInformationallyComplete {
            rank: info.frame_rank,
            needed: povm.dim * povm.dim,
        });
    }
    let p = ComplexVector::from_iterator(probs.len(), probs.iter().map(|x| cr(*x)));
    let coeffs = pseudo_inverse(&info.gram, &Tolerance::default()) * p;
    let mut estimate = ComplexMatrix::zeros(povm.dim, povm.dim);
    for (y, c) in coeffs.iter().enumerate() {
        estimate += povm.elements[y].scale(c.re);
    }
    let psd = min_eigenvalue(&estimate)
        .map(|l| l >= -POVM_AXIOM_TOL)
        .unwrap_or(false);
    Ok(Reconstruction { estimate, psd })
}

/// The noisy family `M'(x) = t M(x) + (1-t) Tr[M(x)] 1/d`.
///
/// Preserves the POVM axioms for `0 < t <= 1`, and preserves minimal
/// informational completeness.
pub fn depolarize_povm(povm: &Povm, t: f64) -> Result<Povm, PovmError> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(PovmError::ParameterOutOfRange(t));
    }
    let d = povm.dim;
    let elements = povm
        .elements
        .iter()
        .map(|m| m.scale(t) + identity(d).scale((1.0 - t) * m.trace().re / d as f64))
        .collect();
    Povm::new(elements, format!("{} (depolarized t={t})", povm.label))
}

/// Element-wise Heisenberg-picture image of a POVM under a linear map.
#[derive(Debug, Clone)]
pub struct HeisenbergImage {
    pub dim: usize,
    pub elements: Vec<ComplexMatrix>,
    /// Every element PSD to tolerance (guaranteed when the map is a
    /// channel; may fail for merely HPTP maps).
    pub all_psd: bool,
    /// `Σ_x` of the images equals the identity (holds whenever the map is
    /// trace-preserving).
    pub sums_to_identity: bool,
}

impl HeisenbergImage {
    /// Promotes the image to a POVM when the axioms hold.
    pub fn into_povm(self, label: impl Into<String>) -> Result<Povm, PovmError> {
        Povm::new(self.elements, label)
    }
}

/// Applies the dual of `map` to every element of `povm`.
///
/// For a channel the result is again a valid POVM; for an HPTP map it is a
/// Hermitian family summing to the identity whose elements may fail
/// positivity, reported through the flags.
pub fn heisenberg_image(map: &impl OperatorMap, povm: &Povm) -> Result<HeisenbergImage, PovmError> {
    if map.dout() != povm.dim {
        return Err(PovmError::DimensionMismatch { dim: map.dout() });
    }
    let d = map.din();
    let dual_map = dual(map);
    let mut elements = Vec::with_capacity(povm.outcomes());
    let mut all_psd = true;
    let mut sum = ComplexMatrix::zeros(d, d);
    for m in &povm.elements {
        let img = dual_map.apply(m)?;
        // Hermitian-preserving duals keep effects Hermitian; symmetrize away
        // roundoff so the eigenvalue check is well-posed.
        let img = (&img + numkit::dagger(&img)).scale(0.5);
        if min_eigenvalue(&img)? < -POVM_AXIOM_TOL {
            all_psd = false;
        }
        sum += &img;
        elements.push(img);
    }
    let sums_to_identity = max_abs(&(sum - identity(d))) <= POVM_AXIOM_TOL;
    Ok(HeisenbergImage {
        dim: d,
        elements,
        all_psd,
        sums_to_identity,
    })
}

/// Condition number of the Gram matrix, a reconstruction-difficulty proxy.
pub fn gram_condition_number(povm: &Povm) -> f64 {
    let info = frame_info(povm);
    let sv = info.gram.singular_values();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    smax / smin
}

//! Deciders and constructions for the channel preorders.
//!
//! Three relations are compared throughout:
//!
//! - **post-processing**: `b = theta ∘ a` for a quantum channel `theta`
//!   (decided by the [`crate::feasibility`] engine);
//! - **positive post-processing**: same with `theta` merely positive
//!   (only probed, never certified — see
//!   [`crate::channels::classify`]);
//! - **statistics recovery**: the output of `b` is reconstructible from
//!   the outcome statistics of `a` through an informationally complete
//!   measurement. This holds iff an HPTP connecting map exists, and iff
//!   `ker(a) ⊆ ker(b)` as subspaces of the operator space, which is what
//!   [`asymp_geq`] tests.
//!
//! The connecting map is built two independent ways: [`construct_theta`]
//! splits the operator space into the image of `a` and its orthogonal
//! complement (pseudo-inverse on the image, trace dump on the rest), while
//! [`construct_theta_from_measurements`] extends `theta† : M2(x) ↦ M1(x)`
//! linearly from a minimal IC basis. Both agree on the image of `a`.

use crate::channels::{
    classify, dual, ChannelError, LinearMapOnOperators, MapClassification, OperatorMap,
    QuantumChannel, DEFAULT_POSITIVITY_PROBES,
};
use crate::feasibility::{
    self, encode_postproc, FeasibilityError, FeasibilityVerdict, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use crate::numkit::{
    cr, fro_norm, identity, min_eigenvalue, nullspace_basis, pseudo_inverse, spectral_norm,
    vectorize, ComplexMatrix, NumError, Tolerance,
};
use crate::povm::{build_minimal_ic, frame_info, Povm, PovmError};
use thiserror::Error;

/// Residual bound the connecting-map constructions must meet.
pub const THETA_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum PreorderError {
    #[error("channels must share the input space: {0} vs {1}")]
    InputDimMismatch(usize, usize),
    #[error("kernel inclusion fails: max leak {max_leak:.3e} exceeds {threshold:.3e}")]
    KernelInclusionFailed { max_leak: f64, threshold: f64 },
    #[error("connecting map residual {residual:.3e} exceeds {THETA_RESIDUAL_TOL:.1e}")]
    ConstructionResidual { residual: f64 },
    #[error("map is not Hermitian-preserving and trace-preserving")]
    NotHptp,
    #[error("measurements must share one outcome set of size {expected}, got {m1} and {m2}")]
    OutcomeCountMismatch {
        expected: usize,
        m1: usize,
        m2: usize,
    },
    #[error("reference measurement is not minimal informationally complete")]
    NotMinimalIc,
    #[error("statistics identity violated: deviation {deviation:.3e}")]
    StatisticsIdentityViolated { deviation: f64 },
    #[error("hierarchy violation: post-processing feasible but statistics recovery denied ({direction})")]
    HierarchyViolation { direction: String },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Povm(#[from] PovmError),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Numerical evidence for (or against) a kernel inclusion
/// `ker(a) ⊆ ker(b)`.
#[derive(Debug, Clone)]
pub struct KernelCertificate {
    pub dim_ker_1: usize,
    pub dim_ker_2: usize,
    /// Largest `‖T_b v‖` over an orthonormal basis of `ker(T_a)`.
    pub max_leak: f64,
    /// Leak at or below this value counts as inclusion.
    pub threshold: f64,
}

impl KernelCertificate {
    pub fn inclusion_holds(&self) -> bool {
        self.max_leak <= self.threshold
    }
}

/// Tests whether every operator annihilated by `a` is annihilated by `b`,
/// the criterion for `a` being at least as powerful as `b` in the
/// statistics-recovery sense.
pub fn asymp_geq(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
    tol: &Tolerance,
) -> Result<(bool, KernelCertificate), PreorderError> {
    if a.din() != b.din() {
        return Err(PreorderError::InputDimMismatch(a.din(), b.din()));
    }
    let kernel_a = nullspace_basis(a.transfer(), tol);
    let dim_ker_2 = nullspace_basis(b.transfer(), tol).len();
    let sigma_b = spectral_norm(b.transfer());
    let threshold = tol.singular_value_floor(sigma_b);
    let max_leak = kernel_a
        .iter()
        .map(|v| (b.transfer() * v).norm())
        .fold(0.0, f64::max);
    let cert = KernelCertificate {
        dim_ker_1: kernel_a.len(),
        dim_ker_2,
        max_leak,
        threshold,
    };
    Ok((cert.inclusion_holds(), cert))
}

/// Builds the HPTP connecting map `theta` with `theta ∘ a = b` from the
/// kernel-inclusion data: the pseudo-inverse route on the image of `a`
/// plus a trace dump onto the maximally mixed state on the orthogonal
/// complement,
///
/// ```text
/// T_theta = T_b · T_a⁺  +  vec(1_out)/dout · vec(1_in)† (1 - T_a T_a⁺).
/// ```
pub fn construct_theta(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
    tol: &Tolerance,
) -> Result<LinearMapOnOperators, PreorderError> {
    let (holds, cert) = asymp_geq(a, b, tol)?;
    if !holds {
        return Err(PreorderError::KernelInclusionFailed {
            max_leak: cert.max_leak,
            threshold: cert.threshold,
        });
    }
    let t_a = a.transfer();
    let t_b = b.transfer();
    let pinv = pseudo_inverse(t_a, tol);
    let mut transfer = t_b * &pinv;

    // trace dump on the orthogonal complement of the image
    let dout = b.dout();
    let projector_residual = ComplexMatrix::identity(t_a.nrows(), t_a.nrows()) - t_a * &pinv;
    let row = projector_residual.adjoint() * vectorize(&identity(a.dout()));
    let col = vectorize(&identity(dout));
    let scale = cr(1.0 / dout as f64);
    for i in 0..transfer.nrows() {
        for j in 0..transfer.ncols() {
            transfer[(i, j)] += scale * col[i] * row[j].conj();
        }
    }

    let theta = LinearMapOnOperators::from_transfer(
        transfer,
        a.dout(),
        dout,
        format!("theta({} -> {})", a.label(), b.label()),
    )?;
    let residual = fro_norm(&(theta.transfer() * t_a - t_b));
    if residual > THETA_RESIDUAL_TOL {
        return Err(PreorderError::ConstructionResidual { residual });
    }
    Ok(theta)
}

/// Builds the connecting map from a pair of measurements satisfying the
/// statistics identity `Tr[b(ρ) m2(x)] = Tr[a(ρ) m1(x)]`: the dual is the
/// linear extension of `m2(x) ↦ m1(x)` from the minimal IC basis `{m2(x)}`.
pub fn construct_theta_from_measurements(
    m1: &Povm,
    m2: &Povm,
    a: &impl OperatorMap,
    b: &impl OperatorMap,
) -> Result<LinearMapOnOperators, PreorderError> {
    if a.din() != b.din() {
        return Err(PreorderError::InputDimMismatch(a.din(), b.din()));
    }
    let d2 = b.dout() * b.dout();
    if m1.outcomes() != d2 || m2.outcomes() != d2 {
        return Err(PreorderError::OutcomeCountMismatch {
            expected: d2,
            m1: m1.outcomes(),
            m2: m2.outcomes(),
        });
    }
    if !frame_info(m2).is_minimal_ic {
        return Err(PreorderError::NotMinimalIc);
    }

    // statistics identity in the Heisenberg picture: b†(m2(x)) = a†(m1(x))
    let dual_a = dual(a);
    let dual_b = dual(b);
    let mut deviation: f64 = 0.0;
    for x in 0..d2 {
        let lhs = dual_b.apply(&m2.elements()[x])?;
        let rhs = dual_a.apply(&m1.elements()[x])?;
        deviation = deviation.max(crate::numkit::max_abs(&(lhs - rhs)));
    }
    if deviation > THETA_RESIDUAL_TOL {
        return Err(PreorderError::StatisticsIdentityViolated { deviation });
    }

    // dual transfer maps vec(m2(x)) to vec(m1(x)); extend linearly
    let b2 = ComplexMatrix::from_fn(d2, d2, |r, x| vectorize(&m2.elements()[x])[r]);
    let b1 = ComplexMatrix::from_fn(m1.dim() * m1.dim(), d2, |r, x| {
        vectorize(&m1.elements()[x])[r]
    });
    let dual_transfer = &b1 * pseudo_inverse(&b2, &Tolerance::default());
    let theta = LinearMapOnOperators::from_transfer(
        dual_transfer.adjoint(),
        a.dout(),
        b.dout(),
        format!("theta[{} ↦ {}]", m2.label(), m1.label()),
    )?;

    let residual = fro_norm(&(theta.transfer() * a.transfer() - b.transfer()));
    if residual > THETA_RESIDUAL_TOL {
        return Err(PreorderError::ConstructionResidual { residual });
    }
    Ok(theta)
}

/// Builds a measurement pair witnessing `a ⪰ theta ∘ a` for an HPTP
/// `theta`: pull a minimal IC measurement back through `theta†`, then mix
/// every effect with enough identity to clamp negative eigenvalues,
///
/// ```text
/// r = max_x max(0, -λ_min(theta†(m2'(x)))),
/// m1(x) = (theta†(m2'(x)) + r·1) / (1 + n r),
/// m2(x) = (m2'(x) + r·1) / (1 + n r),
/// ```
///
/// with `n` the outcome count. `m2` stays minimal IC, and the statistics
/// identity holds for every channel `a` and `b = theta ∘ a`.
pub fn witness_measurements(theta: &LinearMapOnOperators) -> Result<(Povm, Povm), PreorderError> {
    if !theta.flags.is_hptp() {
        return Err(PreorderError::NotHptp);
    }
    let m2_prime = build_minimal_ic(theta.dout())?;
    let n = m2_prime.outcomes();
    let dual_theta = dual(theta);
    let mut pulled = Vec::with_capacity(n);
    let mut r: f64 = 0.0;
    for eff in m2_prime.elements() {
        let img = dual_theta.apply(eff)?;
        let img = (&img + img.adjoint()).scale(0.5);
        r = r.max(-min_eigenvalue(&img)?).max(0.0);
        pulled.push(img);
    }
    let norm = 1.0 / (1.0 + n as f64 * r);
    let m1_elements: Vec<ComplexMatrix> = pulled
        .iter()
        .map(|e| (e + identity(theta.din()).scale(r)).scale(norm))
        .collect();
    let m2_elements: Vec<ComplexMatrix> = m2_prime
        .elements()
        .iter()
        .map(|e| (e + identity(theta.dout()).scale(r)).scale(norm))
        .collect();
    let m1 = Povm::new(m1_elements, format!("witness m1 ({})", theta.label()))?;
    let m2 = Povm::new(m2_elements, format!("witness m2 ({})", theta.label()))?;
    if !frame_info(&m2).is_minimal_ic {
        return Err(PreorderError::NotMinimalIc);
    }
    Ok((m1, m2))
}

/// Options for [`compare`].
#[derive(Debug, Clone)]
pub struct CompareOptions {
    pub tol: Tolerance,
    /// Positivity probe count for classifying the connecting map.
    pub probes: usize,
    pub seed: u64,
    /// Iteration cap for the post-processing feasibility runs.
    pub max_iter: usize,
    pub feasibility_tol: f64,
    /// Whether to also build the witness measurement pair.
    pub witnesses: bool,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            probes: DEFAULT_POSITIVITY_PROBES,
            seed: 0,
            max_iter: DEFAULT_MAX_ITER,
            feasibility_tol: DEFAULT_TOL,
            witnesses: true,
        }
    }
}

/// Full comparison of a channel pair under every implemented relation.
#[derive(Debug, Clone)]
pub struct PreorderReport {
    pub asymp_1geq2: bool,
    pub asymp_2geq1: bool,
    pub kernel_12: KernelCertificate,
    pub kernel_21: KernelCertificate,
    pub postproc_1geq2: FeasibilityVerdict,
    pub postproc_2geq1: FeasibilityVerdict,
    /// HPTP connecting map with `theta ∘ a = b`, present when the
    /// statistics-recovery relation holds in that direction.
    pub theta_12: Option<LinearMapOnOperators>,
    pub theta_12_class: Option<MapClassification>,
    /// `‖T_theta T_a - T_b‖_F` of the constructed map.
    pub residual_12: Option<f64>,
    /// Measurement pair realizing the statistics identity for
    /// `(a, theta ∘ a)`.
    pub witnesses: Option<(Povm, Povm)>,
}

/// Runs both statistics-recovery directions, both post-processing
/// feasibility runs, the connecting-map construction and classification,
/// and the hierarchy cross-check (post-processing must imply statistics
/// recovery; a violation is an internal error).
pub fn compare(
    a: &QuantumChannel,
    b: &QuantumChannel,
    options: &CompareOptions,
) -> Result<PreorderReport, PreorderError> {
    if a.din() != b.din() {
        return Err(PreorderError::InputDimMismatch(a.din(), b.din()));
    }
    let (asymp_12, kernel_12) = asymp_geq(a, b, &options.tol)?;
    let (asymp_21, kernel_21) = asymp_geq(b, a, &options.tol)?;

    let postproc_12 = feasibility::solve(
        &encode_postproc(a, b)?,
        options.max_iter,
        options.feasibility_tol,
    );
    let postproc_21 = feasibility::solve(
        &encode_postproc(b, a)?,
        options.max_iter,
        options.feasibility_tol,
    );

    if postproc_12.is_feasible() && !asymp_12 {
        return Err(PreorderError::HierarchyViolation {
            direction: format!("{} -> {}", a.label(), b.label()),
        });
    }
    if postproc_21.is_feasible() && !asymp_21 {
        return Err(PreorderError::HierarchyViolation {
            direction: format!("{} -> {}", b.label(), a.label()),
        });
    }

    let mut theta_12 = None;
    let mut theta_12_class = None;
    let mut residual_12 = None;
    let mut witnesses = None;
    if asymp_12 {
        let theta = construct_theta(a, b, &options.tol)?;
        residual_12 = Some(fro_norm(&(theta.transfer() * a.transfer() - b.transfer())));
        theta_12_class = Some(classify(&theta, options.probes, options.seed));
        if options.witnesses {
            witnesses = Some(witness_measurements(&theta)?);
        }
        theta_12 = Some(theta);
    }

    Ok(PreorderReport {
        asymp_1geq2: asymp_12,
        asymp_2geq1: asymp_21,
        kernel_12,
        kernel_21,
        postproc_1geq2: postproc_12,
        postproc_2geq1: postproc_21,
        theta_12,
        theta_12_class,
        residual_12,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{compose, pauli_x, PositivityVerdict};
    use crate::numkit::{matrix_unit, max_abs};
    use crate::povm::{heisenberg_image, tetrahedral_sic};
    use crate::rng::CounterRng;
    use crate::sampling;

    fn default_tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_dominates_dephasing_but_not_conversely() {
        let id = QuantumChannel::identity(2);
        let deph = QuantumChannel::dephasing(2).unwrap();

        let (holds, cert) = asymp_geq(&id, &deph, &default_tol()).unwrap();
        assert!(holds);
        assert_eq!(cert.dim_ker_1, 0);

        let (holds, cert) = asymp_geq(&deph, &id, &default_tol()).unwrap();
        assert!(!holds);
        assert_eq!(cert.dim_ker_1, 2);
        assert!((cert.max_leak - 1.0).abs() < 1e-10);
        // the coherence |0⟩⟨1| is killed by dephasing but not the identity
        let v = vectorize(&matrix_unit(2, 0, 1));
        assert!((id.transfer() * v).norm() > 0.99);
    }

    #[test]
    fn depolarizing_dominates_identity_for_positive_t() {
        let depol = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let id = QuantumChannel::identity(2);
        let (holds, cert) = asymp_geq(&depol, &id, &default_tol()).unwrap();
        assert!(holds);
        assert_eq!(cert.dim_ker_1, 0);
        let (holds, _) = asymp_geq(&id, &depol, &default_tol()).unwrap();
        assert!(holds);
    }

    #[test]
    fn construct_theta_for_equal_channels_has_zero_residual() {
        let depol = QuantumChannel::depolarizing(2, 0.7).unwrap();
        let theta = construct_theta(&depol, &depol, &default_tol()).unwrap();
        let residual = fro_norm(&(theta.transfer() * depol.transfer() - depol.transfer()));
        assert!(residual < 1e-12);
        assert!(theta.flags.is_hptp());
    }

    #[test]
    fn construct_theta_depolarizing_to_identity_is_the_closed_form_inverse() {
        let t = 0.5;
        let depol = QuantumChannel::depolarizing(2, t).unwrap();
        let id = QuantumChannel::identity(2);
        let theta = construct_theta(&depol, &id, &default_tol()).unwrap();
        // Θ(X) = (X - (1-t) Tr[X] 1/2)/t on all of the operator space
        let mut rng = CounterRng::new(50, 300);
        for _ in 0..5 {
            let x = sampling::random_ginibre(&mut rng, 2, 2);
            let x = (&x + x.adjoint()).scale(0.5);
            let got = theta.apply(&x).unwrap();
            let expected = (&x - identity(2).scale((1.0 - t) * x.trace().re / 2.0)).unscale(t);
            assert!(max_abs(&(got - expected)) < 1e-10);
        }
        let cls = classify(&theta, 200, 7);
        assert!(cls.hermitian_preserving && cls.trace_preserving);
        assert!(!cls.completely_positive);
        match cls.positivity {
            PositivityVerdict::CertifiedViolation { min_eigenvalue, .. } => {
                assert!((min_eigenvalue + (1.0 - t) / (2.0 * t)).abs() < 1e-6);
            }
            _ => panic!("expected positivity violation"),
        }
    }

    #[test]
    fn construct_theta_identity_to_dephasing_is_dephasing() {
        let id = QuantumChannel::identity(2);
        let deph = QuantumChannel::dephasing(2).unwrap();
        let theta = construct_theta(&id, &deph, &default_tol()).unwrap();
        assert!(max_abs(&(theta.transfer() - deph.transfer())) < 1e-10);
        let cls = classify(&theta, 50, 3);
        assert!(cls.completely_positive);
    }

    #[test]
    fn construct_theta_requires_kernel_inclusion() {
        let id = QuantumChannel::identity(2);
        let deph = QuantumChannel::dephasing(2).unwrap();
        assert!(matches!(
            construct_theta(&deph, &id, &default_tol()),
            Err(PreorderError::KernelInclusionFailed { .. })
        ));
    }

    #[test]
    fn theta_from_measurements_identity_pair() {
        let sic = tetrahedral_sic();
        let id = QuantumChannel::identity(2);
        let theta = construct_theta_from_measurements(&sic, &sic, &id, &id).unwrap();
        assert!(max_abs(&(theta.transfer() - id.transfer())) < 1e-10);
    }

    #[test]
    fn theta_from_measurements_matches_kernel_route_for_depolarizing() {
        let t = 0.5;
        let depol = QuantumChannel::depolarizing(2, t).unwrap();
        let id = QuantumChannel::identity(2);
        let sic = tetrahedral_sic();
        // statistics identity: Tr[depol(ρ) SIC(x)] = Tr[ρ · depol†(SIC(x))]
        let m1 = sic.clone();
        let m2 = heisenberg_image(&depol, &sic)
            .unwrap()
            .into_povm("noisy SIC")
            .unwrap();
        let theta_meas = construct_theta_from_measurements(&m1, &m2, &depol, &id).unwrap();
        let theta_kernel = construct_theta(&depol, &id, &default_tol()).unwrap();
        assert!(max_abs(&(theta_meas.transfer() - theta_kernel.transfer())) < 1e-8);
    }

    #[test]
    fn theta_from_measurements_identity_to_dephasing() {
        let id = QuantumChannel::identity(2);
        let deph = QuantumChannel::dephasing(2).unwrap();
        let sic = tetrahedral_sic();
        // b†(m2) = a†(m1) with m2 = SIC on the dephasing output requires
        // m1 = dephased SIC on the identity output.
        let m1 = heisenberg_image(&deph, &sic)
            .unwrap()
            .into_povm("dephased SIC")
            .unwrap();
        let theta = construct_theta_from_measurements(&m1, &sic, &id, &deph).unwrap();
        let residual = fro_norm(&(theta.transfer() * id.transfer() - deph.transfer()));
        assert!(residual <= 1e-8);
    }

    #[test]
    fn theta_from_measurements_validates_inputs() {
        let id = QuantumChannel::identity(2);
        let deph = QuantumChannel::dephasing(2).unwrap();
        let sic = tetrahedral_sic();
        // wrong outcome count
        let trivial = Povm::new(vec![identity(2)], "trivial").unwrap();
        assert!(matches!(
            construct_theta_from_measurements(&trivial, &sic, &id, &id),
            Err(PreorderError::OutcomeCountMismatch { .. })
        ));
        // m2 not minimal IC: dephased SIC has frame rank 2
        let flat = heisenberg_image(&deph, &sic)
            .unwrap()
            .into_povm("flat")
            .unwrap();
        assert!(matches!(
            construct_theta_from_measurements(&sic, &flat, &id, &id),
            Err(PreorderError::NotMinimalIc)
        ));
        // statistics identity fails for a mismatched pair
        assert!(matches!(
            construct_theta_from_measurements(&sic, &sic, &deph, &id),
            Err(PreorderError::StatisticsIdentityViolated { .. })
        ));
    }

    #[test]
    fn witness_for_identity_map_keeps_the_reference_povm() {
        let id_map = LinearMapOnOperators::from_channel(&QuantumChannel::identity(2));
        let (m1, m2) = witness_measurements(&id_map).unwrap();
        let reference = build_minimal_ic(2).unwrap();
        for x in 0..4 {
            assert!(max_abs(&(&m1.elements()[x] - &reference.elements()[x])) < 1e-10);
            assert!(max_abs(&(&m2.elements()[x] - &reference.elements()[x])) < 1e-10);
        }
    }

    #[test]
    fn witness_for_depolarizing_inverse_clamps_negative_parts() {
        let t = 0.5;
        let depol = QuantumChannel::depolarizing(2, t).unwrap();
        let id = QuantumChannel::identity(2);
        let theta = construct_theta(&depol, &id, &default_tol()).unwrap();
        let (m1, m2) = witness_measurements(&theta).unwrap();
        assert!(frame_info(&m2).is_minimal_ic);
        assert_eq!(m1.outcomes(), 4);
        // the statistics identity holds for (depol, theta∘depol = id)
        let mut rng = CounterRng::new(51, 301);
        for _ in 0..5 {
            let rho = sampling::random_density(&mut rng, 2);
            let out1 = depol.apply(&rho).unwrap();
            let out2 = id.apply(&rho).unwrap();
            let p1 = m1.probabilities(&out1).unwrap();
            let p2 = m2.probabilities(&out2).unwrap();
            for (a, b) in p1.iter().zip(p2.iter()) {
                assert!((a - b).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn witness_for_channel_needs_no_clamp() {
        // dual of a channel maps effects to effects, so r = 0 and m1 is
        // just the pulled-back reference measurement
        let deph = LinearMapOnOperators::from_channel(&QuantumChannel::dephasing(2).unwrap());
        let (m1, _) = witness_measurements(&deph).unwrap();
        let reference = build_minimal_ic(2).unwrap();
        let img = heisenberg_image(&QuantumChannel::dephasing(2).unwrap(), &reference).unwrap();
        for x in 0..4 {
            assert!(max_abs(&(&m1.elements()[x] - &img.elements[x])) < 1e-10);
        }
    }

    #[test]
    fn witness_rejects_non_hptp_maps() {
        // a map that is not trace-preserving
        let half = LinearMapOnOperators::from_transfer(
            ComplexMatrix::identity(4, 4).scale(0.5),
            2,
            2,
            "half",
        )
        .unwrap();
        assert!(matches!(
            witness_measurements(&half),
            Err(PreorderError::NotHptp)
        ));
    }

    #[test]
    fn compare_depolarizing_vs_identity_reproduces_the_counterexample() {
        let depol = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let id = QuantumChannel::identity(2);
        let report = compare(&depol, &id, &CompareOptions::default()).unwrap();
        assert!(report.asymp_1geq2 && report.asymp_2geq1);
        assert!(report.postproc_1geq2.is_infeasible());
        assert!(report.postproc_2geq1.is_feasible());
        let cls = report.theta_12_class.as_ref().unwrap();
        assert!(cls.hermitian_preserving && cls.trace_preserving);
        assert!(!cls.completely_positive);
        assert!(matches!(
            cls.positivity,
            PositivityVerdict::CertifiedViolation { .. }
        ));
        assert!(report.residual_12.unwrap() <= 1e-8);
        assert!(report.witnesses.is_some());
    }

    #[test]
    fn compare_identity_vs_dephasing() {
        let id = QuantumChannel::identity(2);
        let deph = QuantumChannel::dephasing(2).unwrap();
        let report = compare(&id, &deph, &CompareOptions::default()).unwrap();
        assert!(report.asymp_1geq2);
        assert!(!report.asymp_2geq1);
        assert!(report.postproc_1geq2.is_feasible());
        let cls = report.theta_12_class.as_ref().unwrap();
        assert!(cls.completely_positive);
    }

    #[test]
    fn compare_is_reflexive() {
        let depol = QuantumChannel::depolarizing(2, 0.7).unwrap();
        let report = compare(&depol, &depol, &CompareOptions::default()).unwrap();
        assert!(report.asymp_1geq2 && report.asymp_2geq1);
        assert!(report.postproc_1geq2.is_feasible());
        assert!(report.postproc_2geq1.is_feasible());
        assert!(report.residual_12.unwrap() < 1e-10);
    }

    #[test]
    fn asymp_is_transitive_along_postprocessing_chains() {
        let mut rng = CounterRng::new(52, 302);
        for trial in 0..6 {
            let l1 = sampling::random_channel(&mut rng, 2, 2, 4);
            let g1 = if trial % 2 == 0 {
                QuantumChannel::dephasing(2).unwrap()
            } else {
                sampling::random_channel(&mut rng, 2, 2, 2)
            };
            let g2 = sampling::random_channel(&mut rng, 2, 2, 3);
            let l2 = g1.compose(&l1).unwrap();
            let l3 = g2.compose(&l2).unwrap();
            let (h12, _) = asymp_geq(&l1, &l2, &default_tol()).unwrap();
            let (h23, _) = asymp_geq(&l2, &l3, &default_tol()).unwrap();
            let (h13, _) = asymp_geq(&l1, &l3, &default_tol()).unwrap();
            assert!(h12 && h23);
            assert!(h13, "transitivity failed on trial {trial}");
        }
    }

    #[test]
    fn membership_flags_nest_along_the_hierarchy() {
        let mut rng = CounterRng::new(53, 303);
        let fixed = QuantumChannel::depolarizing(2, 0.8).unwrap();

        // CPTP: CP, no violation, HP — and likewise after composition
        let chan = sampling::random_channel(&mut rng, 2, 2, 4);
        let cls = classify(&chan, 200, 1);
        assert!(cls.completely_positive && cls.hermitian_preserving);
        assert!(matches!(
            cls.positivity,
            PositivityVerdict::NoViolationFound { .. }
        ));
        let cls = classify(&compose(&chan, &fixed).unwrap(), 200, 1);
        assert!(cls.completely_positive && cls.hermitian_preserving);

        // positive but not CP: the transpose map
        let mut t = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                t[(j + 2 * i, i + 2 * j)] = cr(1.0);
            }
        }
        let transpose = LinearMapOnOperators::from_transfer(t, 2, 2, "transpose").unwrap();
        let cls = classify(&transpose, 300, 2);
        assert!(!cls.completely_positive && cls.hermitian_preserving);
        assert!(matches!(
            cls.positivity,
            PositivityVerdict::NoViolationFound { .. }
        ));
        // composing a positive map with a channel keeps it probe-clean
        let cls = classify(&compose(&transpose, &fixed).unwrap(), 300, 2);
        assert!(cls.hermitian_preserving && cls.trace_preserving);
        assert!(matches!(
            cls.positivity,
            PositivityVerdict::NoViolationFound { .. }
        ));

        // HPTP with a genuine positivity violation
        let depol = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let id = QuantumChannel::identity(2);
        let theta = construct_theta(&depol, &id, &default_tol()).unwrap();
        let cls = classify(&theta, 300, 3);
        assert!(!cls.completely_positive && cls.hermitian_preserving);
        assert!(matches!(
            cls.positivity,
            PositivityVerdict::CertifiedViolation { .. }
        ));
        // composed with a noisier fixed channel the violation survives
        let half = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let cls = classify(&compose(&theta, &half).unwrap(), 300, 3);
        assert!(cls.hermitian_preserving && cls.trace_preserving);
    }

    #[test]
    fn fully_depolarizing_boundary_case() {
        // t = 0 is accepted but flagged: the constant channel keeps only
        // the trace, so it sits strictly below everything with a kernel
        let dump = QuantumChannel::depolarizing(2, 0.0).unwrap();
        let id = QuantumChannel::identity(2);
        let report = compare(&dump, &id, &CompareOptions::default()).unwrap();
        assert!(!report.asymp_1geq2);
        assert_eq!(report.kernel_12.dim_ker_1, 3);
        assert!(report.asymp_2geq1);
        assert!(report.postproc_1geq2.is_infeasible());
        assert!(report.postproc_2geq1.is_feasible());
        // the connecting map in the feasible direction is the dump itself
        let theta = construct_theta(&id, &dump, &CompareOptions::default().tol).unwrap();
        assert!(max_abs(&(theta.transfer() - dump.transfer())) < 1e-10);
    }

    #[test]
    fn hptp_blends_stay_dominated() {
        let lam = QuantumChannel::depolarizing(2, 0.8).unwrap();
        let mut rng = CounterRng::new(54, 304);
        let theta_a = sampling::random_hptp_map(&mut rng, 2, 2);
        let theta_b = sampling::random_hptp_map(&mut rng, 2, 2);
        let phi_a = compose(&theta_a, &lam).unwrap();
        let phi_b = compose(&theta_b, &lam).unwrap();
        for lambda in [0.25, 0.5, 0.75] {
            let blend_transfer =
                phi_a.transfer().scale(lambda) + phi_b.transfer().scale(1.0 - lambda);
            let blend = LinearMapOnOperators::from_transfer(blend_transfer, 2, 2, "blend").unwrap();
            let (holds, _) = asymp_geq(&lam, &blend, &default_tol()).unwrap();
            assert!(holds, "lambda={lambda}");
        }
    }

    #[test]
    fn kernel_verdict_matches_least_squares_oracle() {
        let mut rng = CounterRng::new(55, 305);
        let tol = default_tol();
        for trial in 0..12 {
            let (a, b): (QuantumChannel, QuantumChannel) = match trial % 4 {
                0 => (
                    sampling::random_channel(&mut rng, 2, 2, 4),
                    sampling::random_channel(&mut rng, 2, 2, 4),
                ),
                1 => {
                    let a = sampling::random_rank_deficient_channel(&mut rng, 2);
                    let g = sampling::random_channel(&mut rng, 2, 2, 2);
                    let b = g.compose(&a).unwrap();
                    (a, b)
                }
                2 => {
                    let a = sampling::random_channel(&mut rng, 2, 2, 4);
                    let b = sampling::random_rank_deficient_channel(&mut rng, 2);
                    (a, b)
                }
                _ => (
                    sampling::random_rank_deficient_channel(&mut rng, 2),
                    sampling::random_channel(&mut rng, 2, 2, 4),
                ),
            };
            let (holds, _) = asymp_geq(&a, &b, &tol).unwrap();
            // independent oracle: least-squares residual of T·T_a = T_b
            let pinv = pseudo_inverse(a.transfer(), &tol);
            let residual = fro_norm(&(b.transfer() * &pinv * a.transfer() - b.transfer()));
            if holds {
                assert!(residual <= 1e-6, "trial {trial}: residual {residual}");
            } else {
                assert!(residual > 1e-6, "trial {trial}: residual {residual}");
            }
            // when the relation holds, the two constructions agree on Im(T_a)
            if holds {
                let theta = construct_theta(&a, &b, &tol).unwrap();
                let (m1, m2) = witness_measurements(&theta).unwrap();
                let theta_meas = construct_theta_from_measurements(&m1, &m2, &a, &b).unwrap();
                let image_projector = a.transfer() * &pinv;
                let diff = (theta.transfer() - theta_meas.transfer()) * image_projector;
                assert!(fro_norm(&diff) <= 1e-6, "trial {trial}");
            }
        }
    }

    #[test]
    fn compare_rejects_mismatched_inputs() {
        let a = QuantumChannel::identity(2);
        let b = QuantumChannel::identity(3);
        assert!(matches!(
            compare(&a, &b, &CompareOptions::default()),
            Err(PreorderError::InputDimMismatch(2, 3))
        ));
    }

    #[test]
    fn example_one_holds_in_dimension_three() {
        let id = QuantumChannel::identity(3);
        let deph = QuantumChannel::dephasing(3).unwrap();
        let (holds, _) = asymp_geq(&id, &deph, &default_tol()).unwrap();
        assert!(holds);
        let (holds, cert) = asymp_geq(&deph, &id, &default_tol()).unwrap();
        assert!(!holds);
        assert_eq!(cert.dim_ker_1, 6);
        assert!(cert.max_leak > 0.99);
    }

    #[test]
    fn pauli_x_unitary_is_asymp_equivalent_to_identity() {
        let x_chan = QuantumChannel::from_kraus(vec![pauli_x()], "bit flip").unwrap();
        let id = QuantumChannel::identity(2);
        let (h1, _) = asymp_geq(&x_chan, &id, &default_tol()).unwrap();
        let (h2, _) = asymp_geq(&id, &x_chan, &default_tol()).unwrap();
        assert!(h1 && h2);
        // and indeed a CPTP theta connects them: postproc holds both ways
        let report = compare(&x_chan, &id, &CompareOptions::default()).unwrap();
        assert!(report.postproc_1geq2.is_feasible());
        assert!(report.postproc_2geq1.is_feasible());
    }
}

//! Quantum channels and general linear maps on operators.
//!
//! Every map is carried in up to three mutually consistent representations:
//!
//! - **Kraus**: `Λ(ρ) = Σ_k K_k ρ K_k†` (channels only);
//! - **Choi**: `J(Λ) = Σ_ij Λ(|i⟩⟨j|) ⊗ |i⟩⟨j|`, output factor first, so
//!   trace preservation reads `Tr_out J = 1` and complete positivity reads
//!   `J ⪰ 0`;
//! - **transfer**: the matrix `T` with `T · vec(ρ) = vec(Λ(ρ))` under
//!   column stacking, so composition is matrix multiplication and the
//!   Heisenberg-picture dual is the adjoint `T†`.

use crate::numkit::{
    self, c, cr, dagger, eig_hermitian, hermitian_asymmetry, identity, kron, matrix_unit, max_abs,
    min_eigenvalue, partial_trace, unvectorize, vectorize, ComplexMatrix, ComplexVector, NumError,
    Tolerance, TraceSide,
};
use crate::rng::CounterRng;
use thiserror::Error;

/// Absolute tolerance for the channel axioms checked by constructors
/// (Kraus normalization, Choi positivity, trace preservation).
pub const CHANNEL_AXIOM_TOL: f64 = 1e-8;

/// Default number of random pure-state probes in [`classify`].
pub const DEFAULT_POSITIVITY_PROBES: usize = 2000;

/// Local-descent refinement steps applied to the worst probe state.
pub const POSITIVITY_DESCENT_STEPS: usize = 50;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Kraus operators do not satisfy Σ K†K = 1 (deviation {deviation:.3e})")]
    KrausNotNormalized { deviation: f64 },
    #[error("Kraus operators must all share one shape and be nonempty")]
    InconsistentKraus,
    #[error("not a quantum channel: {0}")]
    NotAChannel(String),
    #[error("no Kraus decomposition available and Choi factorization failed: {0}")]
    KrausUnavailable(String),
    #[error("depolarizing parameter t={0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("dephasing requires dimension >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Anything that acts linearly on operators via a transfer matrix.
pub trait OperatorMap {
    fn din(&self) -> usize;
    fn dout(&self) -> usize;
    fn transfer(&self) -> &ComplexMatrix;
    fn choi(&self) -> &ComplexMatrix;
    fn label(&self) -> &str;

    /// Schrödinger-picture action `unvec(T · vec(ρ))`.
    fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix, ChannelError> {
        let d = self.din();
        if rho.nrows() != d || rho.ncols() != d {
            return Err(ChannelError::DimensionMismatch(format!(
                "state must be {d}x{d}, got {}x{}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let out = self.transfer() * vectorize(rho);
        Ok(unvectorize(&out, self.dout(), self.dout()))
    }
}

/// Reshuffle a transfer matrix into the Choi matrix (output factor first).
pub fn transfer_to_choi(t: &ComplexMatrix, din: usize, dout: usize) -> ComplexMatrix {
    let mut j = ComplexMatrix::zeros(din * dout, din * dout);
    for k in 0..dout {
        for i in 0..din {
            for l in 0..dout {
                for m in 0..din {
                    j[(k * din + i, l * din + m)] = t[(k + dout * l, i + din * m)];
                }
            }
        }
    }
    j
}

/// Inverse reshuffle of [`transfer_to_choi`].
pub fn choi_to_transfer(j: &ComplexMatrix, din: usize, dout: usize) -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(dout * dout, din * din);
    for k in 0..dout {
        for i in 0..din {
            for l in 0..dout {
                for m in 0..din {
                    t[(k + dout * l, i + din * m)] = j[(k * din + i, l * din + m)];
                }
            }
        }
    }
    t
}

/// Action of a map through its Choi matrix: `Tr_in[J · (1 ⊗ ρᵀ)]`.
///
/// Independent of the transfer route; used as a consistency oracle.
pub fn apply_via_choi(
    j: &ComplexMatrix,
    din: usize,
    dout: usize,
    rho: &ComplexMatrix,
) -> Result<ComplexMatrix, ChannelError> {
    let prod = j * kron(&identity(dout), &rho.transpose());
    Ok(partial_trace(&prod, dout, din, TraceSide::Second)?)
}

/// Kraus operators recovered from a Choi matrix, keeping eigenvalues above
/// the tolerance floor.
pub fn kraus_from_choi(
    j: &ComplexMatrix,
    din: usize,
    dout: usize,
    tol: &Tolerance,
) -> Result<Vec<ComplexMatrix>, ChannelError> {
    let (values, vectors) = eig_hermitian(j)?;
    let lambda_max = values.iter().copied().fold(0.0, f64::max);
    let floor = tol.singular_value_floor(lambda_max.max(0.0));
    if values[0] < -CHANNEL_AXIOM_TOL * lambda_max.max(1.0) {
        return Err(ChannelError::NotAChannel(format!(
            "Choi matrix has negative eigenvalue {:.3e}",
            values[0]
        )));
    }
    let mut kraus = Vec::new();
    for (idx, lambda) in values.iter().enumerate() {
        if *lambda > floor {
            let w = vectors.column(idx);
            let s = lambda.sqrt();
            let k = ComplexMatrix::from_fn(dout, din, |r, cidx| w[r * din + cidx] * cr(s));
            kraus.push(k);
        }
    }
    if kraus.is_empty() {
        return Err(ChannelError::KrausUnavailable(
            "Choi matrix is numerically zero".into(),
        ));
    }
    Ok(kraus)
}

fn transfer_from_kraus(kraus: &[ComplexMatrix]) -> ComplexMatrix {
    let dout = kraus[0].nrows();
    let din = kraus[0].ncols();
    let mut t = ComplexMatrix::zeros(dout * dout, din * din);
    for k in kraus {
        t += kron(&k.map(|z| z.conj()), k);
    }
    t
}

/// A completely positive trace-preserving map, verified at construction.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    din: usize,
    dout: usize,
    kraus: Option<Vec<ComplexMatrix>>,
    choi: ComplexMatrix,
    transfer: ComplexMatrix,
    label: String,
}

impl OperatorMap for QuantumChannel {
    fn din(&self) -> usize {
        self.din
    }
    fn dout(&self) -> usize {
        self.dout
    }
    fn transfer(&self) -> &ComplexMatrix {
        &self.transfer
    }
    fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }
    fn label(&self) -> &str {
        &self.label
    }
}

impl QuantumChannel {
    /// Builds a channel from Kraus operators, verifying `Σ K†K = 1`.
    pub fn from_kraus(
        kraus: Vec<ComplexMatrix>,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        if kraus.is_empty() {
            return Err(ChannelError::InconsistentKraus);
        }
        let dout = kraus[0].nrows();
        let din = kraus[0].ncols();
        if kraus.iter().any(|k| k.nrows() != dout || k.ncols() != din) {
            return Err(ChannelError::InconsistentKraus);
        }
        let mut norm = ComplexMatrix::zeros(din, din);
        for k in &kraus {
            norm += dagger(k) * k;
        }
        let deviation = max_abs(&(norm - identity(din)));
        if deviation > CHANNEL_AXIOM_TOL {
            return Err(ChannelError::KrausNotNormalized { deviation });
        }
        let transfer = transfer_from_kraus(&kraus);
        let choi = transfer_to_choi(&transfer, din, dout);
        Ok(Self {
            din,
            dout,
            kraus: Some(kraus),
            choi,
            transfer,
            label: label.into(),
        })
    }

    /// Builds a channel from its Choi matrix, verifying Hermiticity,
    /// positivity, and trace preservation, and recovering Kraus operators.
    pub fn from_choi(
        choi: ComplexMatrix,
        din: usize,
        dout: usize,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        let n = din * dout;
        if choi.nrows() != n || choi.ncols() != n {
            return Err(ChannelError::DimensionMismatch(format!(
                "Choi matrix must be {n}x{n}, got {}x{}",
                choi.nrows(),
                choi.ncols()
            )));
        }
        let scale = max_abs(&choi).max(1.0);
        if hermitian_asymmetry(&choi) > CHANNEL_AXIOM_TOL * scale {
            return Err(ChannelError::NotAChannel(
                "Choi matrix not Hermitian".into(),
            ));
        }
        let lambda_min = min_eigenvalue(&choi)?;
        if lambda_min < -CHANNEL_AXIOM_TOL * scale {
            return Err(ChannelError::NotAChannel(format!(
                "Choi matrix not PSD (min eigenvalue {lambda_min:.3e})"
            )));
        }
        let marginal = partial_trace(&choi, dout, din, TraceSide::First)?;
        let tp_dev = max_abs(&(marginal - identity(din)));
        if tp_dev > CHANNEL_AXIOM_TOL * scale {
            return Err(ChannelError::NotAChannel(format!(
                "not trace-preserving (deviation {tp_dev:.3e})"
            )));
        }
        let kraus = kraus_from_choi(&choi, din, dout, &Tolerance::default())?;
        let transfer = choi_to_transfer(&choi, din, dout);
        Ok(Self {
            din,
            dout,
            kraus: Some(kraus),
            choi,
            transfer,
            label: label.into(),
        })
    }

    /// Builds a channel from a transfer matrix (verified through the Choi
    /// route).
    pub fn from_transfer(
        transfer: ComplexMatrix,
        din: usize,
        dout: usize,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        if transfer.nrows() != dout * dout || transfer.ncols() != din * din {
            return Err(ChannelError::DimensionMismatch(format!(
                "transfer must be {}x{}, got {}x{}",
                dout * dout,
                din * din,
                transfer.nrows(),
                transfer.ncols()
            )));
        }
        let choi = transfer_to_choi(&transfer, din, dout);
        Self::from_choi(choi, din, dout, label)
    }

    /// The identity channel on dimension `d`.
    pub fn identity(d: usize) -> Self {
        Self::from_kraus(vec![identity(d)], format!("identity({d})"))
            .expect("identity Kraus set is normalized")
    }

    /// Depolarizing channel `ρ ↦ t ρ + (1 - t) Tr[ρ] 1/d`.
    ///
    /// `t = 0` (the constant channel onto the maximally mixed state) is
    /// accepted but flagged in the label: its transfer matrix has a
    /// nontrivial kernel, unlike every `t > 0` member of the family.
    pub fn depolarizing(d: usize, t: f64) -> Result<Self, ChannelError> {
        if !(0.0..=1.0).contains(&t) || !t.is_finite() {
            return Err(ChannelError::ParameterOutOfRange(t));
        }
        let v = vectorize(&identity(d));
        let mut transfer = ComplexMatrix::identity(d * d, d * d).scale(t);
        // (1 - t)/d · vec(1) vec(1)†
        let w = (1.0 - t) / d as f64;
        for i in 0..d * d {
            for j in 0..d * d {
                transfer[(i, j)] += cr(w) * v[i] * v[j].conj();
            }
        }
        let label = if t == 0.0 {
            format!("depolarizing(d={d},t=0) [kernel nontrivial]")
        } else {
            format!("depolarizing(d={d},t={t})")
        };
        Self::from_transfer(transfer, d, d, label)
    }

    /// Completely dephasing channel with Kraus set `{|i⟩⟨i|}`.
    pub fn dephasing(d: usize) -> Result<Self, ChannelError> {
        if d < 2 {
            return Err(ChannelError::DimensionTooSmall(d));
        }
        let kraus = (0..d).map(|i| matrix_unit(d, i, i)).collect();
        Self::from_kraus(kraus, format!("dephasing(d={d})"))
    }

    pub fn kraus(&self) -> Option<&[ComplexMatrix]> {
        self.kraus.as_deref()
    }

    /// Kraus operators, recovering them from the Choi matrix if absent.
    pub fn kraus_or_recover(&self) -> Result<Vec<ComplexMatrix>, ChannelError> {
        match &self.kraus {
            Some(k) => Ok(k.clone()),
            None => kraus_from_choi(&self.choi, self.din, self.dout, &Tolerance::default()),
        }
    }

    /// Stinespring isometry `V = Σ_k K_k ⊗ |k⟩` mapping the input space
    /// into system ⊗ environment.
    pub fn stinespring_isometry(&self) -> Result<ComplexMatrix, ChannelError> {
        let kraus = self.kraus_or_recover()?;
        let r = kraus.len();
        let mut v = ComplexMatrix::zeros(self.dout * r, self.din);
        for (k, op) in kraus.iter().enumerate() {
            for row in 0..self.dout {
                for col in 0..self.din {
                    v[(row * r + k, col)] = op[(row, col)];
                }
            }
        }
        Ok(v)
    }

    /// Conjugate channel: the flow into the environment of the Stinespring
    /// dilation, `⟨k| Λ̄(ρ) |l⟩ = Tr[K_k ρ K_l†]`. The environment dimension
    /// equals the number of Kraus operators retained.
    pub fn conjugate(&self) -> Result<QuantumChannel, ChannelError> {
        let kraus = self.kraus_or_recover()?;
        let r = kraus.len();
        let din = self.din;
        let mut transfer = ComplexMatrix::zeros(r * r, din * din);
        for (k, kk) in kraus.iter().enumerate() {
            for (l, kl) in kraus.iter().enumerate() {
                // row for output entry (k, l); Tr[K_k ρ K_l†] = ⟨vec(K_k† K_l), vec(ρ)⟩
                let a = vectorize(&(dagger(kk) * kl));
                for (idx, entry) in a.iter().enumerate() {
                    transfer[(k + r * l, idx)] += entry.conj();
                }
            }
        }
        QuantumChannel::from_transfer(transfer, din, r, format!("conjugate({})", self.label))
    }

    /// Channel-typed composition `self ∘ other` (verifies the result).
    pub fn compose(&self, other: &QuantumChannel) -> Result<QuantumChannel, ChannelError> {
        if self.din != other.dout {
            return Err(ChannelError::DimensionMismatch(format!(
                "compose: {} expects input dim {}, previous map outputs {}",
                self.label, self.din, other.dout
            )));
        }
        QuantumChannel::from_transfer(
            &self.transfer * &other.transfer,
            other.din,
            self.dout,
            format!("{} ∘ {}", self.label, other.label),
        )
    }
}

/// A linear map on operators with no positivity requirement, carried in
/// Choi and transfer form with a coarse classification attached.
#[derive(Debug, Clone)]
pub struct LinearMapOnOperators {
    din: usize,
    dout: usize,
    choi: ComplexMatrix,
    transfer: ComplexMatrix,
    label: String,
    /// Classification computed at construction time with zero probes; run
    /// [`classify`] for a probed verdict.
    pub flags: MapClassification,
}

impl OperatorMap for LinearMapOnOperators {
    fn din(&self) -> usize {
        self.din
    }
    fn dout(&self) -> usize {
        self.dout
    }
    fn transfer(&self) -> &ComplexMatrix {
        &self.transfer
    }
    fn choi(&self) -> &ComplexMatrix {
        &self.choi
    }
    fn label(&self) -> &str {
        &self.label
    }
}

impl LinearMapOnOperators {
    pub fn from_transfer(
        transfer: ComplexMatrix,
        din: usize,
        dout: usize,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        if transfer.nrows() != dout * dout || transfer.ncols() != din * din {
            return Err(ChannelError::DimensionMismatch(format!(
                "transfer must be {}x{}, got {}x{}",
                dout * dout,
                din * din,
                transfer.nrows(),
                transfer.ncols()
            )));
        }
        if transfer
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(ChannelError::Num(NumError::NonFiniteEntry));
        }
        let choi = transfer_to_choi(&transfer, din, dout);
        let mut map = Self {
            din,
            dout,
            choi,
            transfer,
            label: label.into(),
            flags: MapClassification::vacuous(),
        };
        map.flags = classify(&map, 0, 0);
        Ok(map)
    }

    pub fn from_choi(
        choi: ComplexMatrix,
        din: usize,
        dout: usize,
        label: impl Into<String>,
    ) -> Result<Self, ChannelError> {
        let transfer = choi_to_transfer(&choi, din, dout);
        Self::from_transfer(transfer, din, dout, label)
    }

    /// Reinterprets a channel as a plain operator map.
    pub fn from_channel(channel: &QuantumChannel) -> Self {
        Self {
            din: channel.din,
            dout: channel.dout,
            choi: channel.choi.clone(),
            transfer: channel.transfer.clone(),
            label: channel.label.clone(),
            flags: MapClassification {
                hermitian_preserving: true,
                trace_preserving: true,
                completely_positive: true,
                positivity: PositivityVerdict::NoViolationFound { probes: 0 },
            },
        }
    }

    /// Attempts to promote this map to a verified quantum channel.
    pub fn into_channel(self) -> Result<QuantumChannel, ChannelError> {
        QuantumChannel::from_choi(self.choi, self.din, self.dout, self.label)
    }
}

/// Heisenberg-picture dual: the adjoint transfer matrix.
///
/// Satisfies `Tr[B† Φ†(A)] = Tr[(Φ(B))† A]`; the dual of a channel is
/// unital and completely positive but generally not trace-preserving.
pub fn dual(map: &impl OperatorMap) -> LinearMapOnOperators {
    LinearMapOnOperators::from_transfer(
        map.transfer().adjoint(),
        map.dout(),
        map.din(),
        format!("dual({})", map.label()),
    )
    .expect("adjoint transfer has transposed dimensions")
}

/// Composition `a ∘ b` as a plain operator map.
pub fn compose(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
) -> Result<LinearMapOnOperators, ChannelError> {
    if a.din() != b.dout() {
        return Err(ChannelError::DimensionMismatch(format!(
            "compose: {} expects input dim {}, previous map outputs {}",
            a.label(),
            a.din(),
            b.dout()
        )));
    }
    LinearMapOnOperators::from_transfer(
        a.transfer() * b.transfer(),
        b.din(),
        a.dout(),
        format!("{} ∘ {}", a.label(), b.label()),
    )
}

/// Positivity probe outcome. A violation is a sound certificate; absence of
/// one after `probes` samples is inconclusive, never a proof of positivity.
#[derive(Debug, Clone, PartialEq)]
pub enum PositivityVerdict {
    CertifiedViolation {
        witness: ComplexMatrix,
        min_eigenvalue: f64,
    },
    NoViolationFound {
        probes: usize,
    },
}

/// Structural verdicts on a linear map, from its Choi matrix plus the
/// sampled positivity probe.
#[derive(Debug, Clone, PartialEq)]
pub struct MapClassification {
    pub hermitian_preserving: bool,
    pub trace_preserving: bool,
    pub completely_positive: bool,
    pub positivity: PositivityVerdict,
}

impl MapClassification {
    fn vacuous() -> Self {
        Self {
            hermitian_preserving: false,
            trace_preserving: false,
            completely_positive: false,
            positivity: PositivityVerdict::NoViolationFound { probes: 0 },
        }
    }

    /// True when the map is Hermitian-preserving and trace-preserving.
    pub fn is_hptp(&self) -> bool {
        self.hermitian_preserving && self.trace_preserving
    }
}

fn random_pure_state(rng: &mut CounterRng, d: usize) -> ComplexVector {
    let mut v = ComplexVector::from_fn(d, |_, _| c(rng.normal(), rng.normal()));
    let n = v.norm();
    if n == 0.0 {
        v[0] = cr(1.0);
        return v;
    }
    v.unscale(n)
}

fn min_output_eigenvalue(map: &impl OperatorMap, psi: &ComplexVector) -> f64 {
    let rho = numkit::projector(psi);
    let out = map
        .apply(&rho)
        .expect("probe state has the input dimension");
    // For maps that are not Hermitian-preserving the Hermitian part still
    // lower-bounds positivity: any PSD output would be Hermitian.
    let herm = (&out + dagger(&out)).scale(0.5);
    let eig = herm.symmetric_eigen();
    eig.eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Classifies a linear map: Hermitian preservation and trace preservation
/// from the Choi matrix, complete positivity from its spectrum, and a
/// seeded random-state probe for positivity when complete positivity fails.
///
/// The probe samples `probes` Haar-random pure states, then refines the
/// worst by [`POSITIVITY_DESCENT_STEPS`] steps of local perturbation
/// descent on the state manifold.
pub fn classify(map: &impl OperatorMap, probes: usize, seed: u64) -> MapClassification {
    let choi = map.choi();
    let scale = max_abs(choi).max(1.0);
    let hermitian_preserving = hermitian_asymmetry(choi) <= CHANNEL_AXIOM_TOL * scale;
    let marginal = partial_trace(choi, map.dout(), map.din(), TraceSide::First)
        .expect("Choi matrix has din*dout shape");
    let trace_preserving = max_abs(&(marginal - identity(map.din()))) <= CHANNEL_AXIOM_TOL * scale;
    let herm_choi = (choi + dagger(choi)).scale(0.5);
    let lambda_min = herm_choi
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let completely_positive = hermitian_preserving && lambda_min >= -CHANNEL_AXIOM_TOL * scale;

    // CP implies positive: skip the probe entirely.
    if completely_positive || probes == 0 {
        return MapClassification {
            hermitian_preserving,
            trace_preserving,
            completely_positive,
            positivity: PositivityVerdict::NoViolationFound { probes: 0 },
        };
    }

    let mut rng = CounterRng::new(seed, 0xC1A551F1);
    let d = map.din();
    let mut worst_state = random_pure_state(&mut rng, d);
    let mut worst = min_output_eigenvalue(map, &worst_state);
    for _ in 1..probes {
        let psi = random_pure_state(&mut rng, d);
        let val = min_output_eigenvalue(map, &psi);
        if val < worst {
            worst = val;
            worst_state = psi;
        }
    }
    // Local descent: accept random perturbations that lower the minimum
    // output eigenvalue, shrinking the step on rejection.
    let mut step = 0.3;
    for _ in 0..POSITIVITY_DESCENT_STEPS {
        let mut trial = worst_state.clone();
        for i in 0..d {
            trial[i] += c(rng.normal(), rng.normal()) * cr(step);
        }
        let n = trial.norm();
        if n == 0.0 {
            continue;
        }
        let trial = trial.unscale(n);
        let val = min_output_eigenvalue(map, &trial);
        if val < worst {
            worst = val;
            worst_state = trial;
            step = (step * 1.5).min(1.0);
        } else {
            step = (step * 0.6).max(1e-6);
        }
    }

    let positivity = if worst < -CHANNEL_AXIOM_TOL * scale {
        PositivityVerdict::CertifiedViolation {
            witness: numkit::projector(&worst_state),
            min_eigenvalue: worst,
        }
    } else {
        PositivityVerdict::NoViolationFound { probes }
    };
    MapClassification {
        hermitian_preserving,
        trace_preserving,
        completely_positive,
        positivity,
    }
}

/// Trace distance `½ Σ |eig(ρ - σ)|`; orthogonal pure states are at
/// distance 1.
pub fn trace_distance(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64, ChannelError> {
    if rho.shape() != sigma.shape() || rho.nrows() != rho.ncols() {
        return Err(ChannelError::DimensionMismatch(
            "trace distance requires equal square shapes".into(),
        ));
    }
    let (values, _) = eig_hermitian(&(rho - sigma))?;
    Ok(0.5 * values.iter().map(|x| x.abs()).sum::<f64>())
}

/// Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)])
}

/// Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)])
}

/// Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)])
}

//! Compatibility deciders for channel pairs and measurement–channel pairs.
//!
//! Two channels are compatible when one joint channel has both as
//! marginals; that holds exactly when the conjugate of either channel can
//! be post-processed into the other, which is how [`channels_compatible`]
//! decides it. A measurement and a channel are compatible when the
//! measurement factors through the dual of the channel's conjugate
//! ([`measurement_channel_compatible`]), i.e. the environment leaks enough
//! information to realize the measurement alongside the channel.
//!
//! [`statistics_vs_device_compatibility`] packages the worked chain
//! showing the two notions come apart: a measurement built from an
//! informationally complete family can be compatible with a channel even
//! though the underlying channel pair is incompatible.

use crate::channels::{ChannelError, OperatorMap, QuantumChannel};
use crate::feasibility::{
    decode_pullback_solution, encode_postproc, encode_povm_pullback, solve, FeasibilityError,
    FeasibilityVerdict, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use crate::povm::{depolarize_povm, frame_info, tetrahedral_sic, Povm, PovmError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompatError {
    #[error("channels must share the input space: {0} vs {1}")]
    InputDimMismatch(usize, usize),
    #[error("measurement acts on dim {povm}, channel input is {channel}")]
    MeasurementDimMismatch { povm: usize, channel: usize },
    #[error(
        "conjugate-direction verdicts disagree: {first} vs {second}; \
         the decision should be representation-independent"
    )]
    AsymmetricVerdict { first: bool, second: bool },
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Povm(#[from] PovmError),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
}

/// Options shared by both compatibility deciders.
#[derive(Debug, Clone)]
pub struct CompatOptions {
    pub max_iter: usize,
    pub tol: f64,
    /// Also run the mirrored direction (conjugate of the second channel
    /// post-processing into the first) and require agreement.
    pub symmetric_check: bool,
}

impl Default for CompatOptions {
    fn default() -> Self {
        Self {
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
            symmetric_check: true,
        }
    }
}

/// Evidence backing a channel-compatibility verdict.
#[derive(Debug, Clone)]
pub struct ChannelCompatEvidence {
    /// Conjugate channel used for the primary direction.
    pub conjugate_1: QuantumChannel,
    /// Feasibility of post-processing the conjugate of the first channel
    /// into the second.
    pub verdict_12: FeasibilityVerdict,
    /// Mirrored direction, when the symmetric check ran.
    pub verdict_21: Option<FeasibilityVerdict>,
}

/// Decides whether two channels admit a joint channel with both as
/// marginals: feasible exactly when `conjugate(a)` post-processes into
/// `b`. With the symmetric check on, the mirrored direction must agree.
pub fn channels_compatible(
    a: &QuantumChannel,
    b: &QuantumChannel,
    options: &CompatOptions,
) -> Result<(bool, ChannelCompatEvidence), CompatError> {
    if a.din() != b.din() {
        return Err(CompatError::InputDimMismatch(a.din(), b.din()));
    }
    let conjugate_1 = a.conjugate()?;
    let verdict_12 = solve(
        &encode_postproc(&conjugate_1, b)?,
        options.max_iter,
        options.tol,
    );
    let compatible = verdict_12.is_feasible();

    let verdict_21 = if options.symmetric_check {
        let conjugate_2 = b.conjugate()?;
        let v = solve(
            &encode_postproc(&conjugate_2, a)?,
            options.max_iter,
            options.tol,
        );
        if v.is_feasible() != compatible {
            return Err(CompatError::AsymmetricVerdict {
                first: compatible,
                second: v.is_feasible(),
            });
        }
        Some(v)
    } else {
        None
    };

    Ok((
        compatible,
        ChannelCompatEvidence {
            conjugate_1,
            verdict_12,
            verdict_21,
        },
    ))
}

/// Evidence backing a measurement–channel compatibility verdict.
#[derive(Debug, Clone)]
pub struct MeasChanEvidence {
    /// Conjugate channel whose dual must pull the environment measurement
    /// back onto the given one.
    pub conjugate: QuantumChannel,
    pub verdict: FeasibilityVerdict,
    /// Environment measurement realizing the factorization, when feasible.
    pub recovered: Option<Povm>,
}

/// Decides whether a measurement and a channel can be implemented by one
/// device: feasible exactly when some environment measurement `m'`
/// satisfies `dual(conjugate(chan))(m'(x)) = m(x)` for every outcome.
pub fn measurement_channel_compatible(
    m: &Povm,
    chan: &QuantumChannel,
    options: &CompatOptions,
) -> Result<(bool, MeasChanEvidence), CompatError> {
    if m.dim() != chan.din() {
        return Err(CompatError::MeasurementDimMismatch {
            povm: m.dim(),
            channel: chan.din(),
        });
    }
    let conjugate = chan.conjugate()?;
    let verdict = solve(
        &encode_povm_pullback(m, &conjugate)?,
        options.max_iter,
        options.tol,
    );
    let recovered = match verdict.point() {
        Some(point) => Some(decode_pullback_solution(point)?),
        None => None,
    };
    Ok((
        verdict.is_feasible(),
        MeasChanEvidence {
            conjugate,
            verdict,
            recovered,
        },
    ))
}

/// The three verdicts of the worked incompatibility chain at noise level
/// `t`: the noisy SIC family stays informationally complete, it is
/// compatible with the environment flow of the depolarizing channel, and
/// yet that environment flow is incompatible with the identity channel
/// (except at the degenerate point `t = 1`).
#[derive(Debug, Clone)]
pub struct StatisticsVsDeviceReport {
    pub t: f64,
    /// The pulled-back measurement `dual(depolarizing)(SIC)` is IC.
    pub noisy_sic_is_ic: bool,
    /// That measurement is compatible with the conjugate channel.
    pub measurement_channel_compatible: bool,
    /// The conjugate of the depolarizing channel and the identity channel
    /// are compatible as a channel pair.
    pub channels_compatible: bool,
    pub measurement_evidence: MeasChanEvidence,
    pub channel_evidence: ChannelCompatEvidence,
}

/// Runs the full chain demonstrating that measurement–channel
/// compatibility of an informationally complete measurement does not
/// decide channel–channel compatibility.
pub fn statistics_vs_device_compatibility(
    t: f64,
    options: &CompatOptions,
) -> Result<StatisticsVsDeviceReport, CompatError> {
    let depol = QuantumChannel::depolarizing(2, t)?;
    let id = QuantumChannel::identity(2);
    let phi_1 = depol.conjugate()?;

    // the noisy family t·M + (1-t) Tr[M]·1/2 is the dual image of the SIC
    let sic = tetrahedral_sic();
    let noisy = depolarize_povm(&sic, t)?;
    let noisy_sic_is_ic = frame_info(&noisy).is_ic;

    let (meas_compat, measurement_evidence) =
        measurement_channel_compatible(&noisy, &phi_1, options)?;
    let (chan_compat, channel_evidence) = channels_compatible(&phi_1, &id, options)?;

    Ok(StatisticsVsDeviceReport {
        t,
        noisy_sic_is_ic,
        measurement_channel_compatible: meas_compat,
        channels_compatible: chan_compat,
        measurement_evidence,
        channel_evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::max_abs;
    use crate::rng::CounterRng;
    use crate::sampling;

    #[test]
    fn constant_channel_is_compatible_with_anything() {
        // the trace-dump channel ρ ↦ Tr[ρ]·1/2 discards its input
        let dump = QuantumChannel::depolarizing(2, 0.0).unwrap();
        let mut rng = CounterRng::new(60, 400);
        let other = sampling::random_channel(&mut rng, 2, 2, 2);
        let (compatible, evidence) =
            channels_compatible(&dump, &other, &CompatOptions::default()).unwrap();
        assert!(compatible, "evidence: {:?}", evidence.verdict_12.status);
    }

    #[test]
    fn two_identity_channels_are_incompatible() {
        // no-cloning: a joint device reproducing the identity twice
        // would clone its input
        let id = QuantumChannel::identity(2);
        let (compatible, evidence) =
            channels_compatible(&id, &id, &CompatOptions::default()).unwrap();
        assert!(!compatible);
        assert!(evidence.verdict_12.is_infeasible());
    }

    #[test]
    fn conjugate_depolarizing_vs_identity_is_incompatible() {
        let depol = QuantumChannel::depolarizing(2, 0.5).unwrap();
        let phi_1 = depol.conjugate().unwrap();
        let id = QuantumChannel::identity(2);
        let (compatible, _) = channels_compatible(&phi_1, &id, &CompatOptions::default()).unwrap();
        assert!(!compatible);
    }

    #[test]
    fn noisy_sic_is_compatible_with_the_conjugate_channel() {
        let t = 0.5;
        let depol = QuantumChannel::depolarizing(2, t).unwrap();
        let phi_1 = depol.conjugate().unwrap();
        let noisy = depolarize_povm(&tetrahedral_sic(), t).unwrap();
        let (compatible, evidence) =
            measurement_channel_compatible(&noisy, &phi_1, &CompatOptions::default()).unwrap();
        assert!(compatible);
        let recovered = evidence.recovered.expect("feasible verdict carries m'");
        // the recovered environment measurement reproduces the pullback
        let dual_conj = crate::channels::dual(&evidence.conjugate);
        for (x, m) in noisy.elements().iter().enumerate() {
            let back = dual_conj.apply(&recovered.elements()[x]).unwrap();
            assert!(max_abs(&(back - m)) <= 1e-7);
        }
    }

    #[test]
    fn trivial_measurement_is_compatible_with_any_channel() {
        let m = Povm::new(vec![crate::numkit::identity(2)], "trivial").unwrap();
        let mut rng = CounterRng::new(61, 401);
        let chan = sampling::random_channel(&mut rng, 2, 2, 3);
        let (compatible, _) =
            measurement_channel_compatible(&m, &chan, &CompatOptions::default()).unwrap();
        assert!(compatible);
    }

    #[test]
    fn sic_is_incompatible_with_the_identity_channel() {
        let sic = tetrahedral_sic();
        let id = QuantumChannel::identity(2);
        let (compatible, evidence) =
            measurement_channel_compatible(&sic, &id, &CompatOptions::default()).unwrap();
        assert!(!compatible);
        assert!(evidence.recovered.is_none());
    }

    #[test]
    fn incompatibility_chain_at_half_noise() {
        let report = statistics_vs_device_compatibility(0.5, &CompatOptions::default()).unwrap();
        assert!(report.noisy_sic_is_ic);
        assert!(report.measurement_channel_compatible);
        assert!(!report.channels_compatible);
    }

    #[test]
    fn incompatibility_chain_degenerates_at_t_one() {
        // conjugate(identity) is a constant channel, compatible with all
        let report = statistics_vs_device_compatibility(1.0, &CompatOptions::default()).unwrap();
        assert!(report.noisy_sic_is_ic);
        assert!(report.measurement_channel_compatible);
        assert!(report.channels_compatible);
    }

    #[test]
    fn incompatibility_chain_at_low_noise() {
        let report = statistics_vs_device_compatibility(0.3, &CompatOptions::default()).unwrap();
        assert!(report.noisy_sic_is_ic);
        assert!(report.measurement_channel_compatible);
        assert!(!report.channels_compatible);
    }

    #[test]
    fn symmetric_check_agrees_on_test_instances() {
        let options = CompatOptions::default();
        let mut rng = CounterRng::new(62, 402);
        let pairs = vec![
            (
                QuantumChannel::depolarizing(2, 0.0).unwrap(),
                sampling::random_channel(&mut rng, 2, 2, 2),
            ),
            (QuantumChannel::identity(2), QuantumChannel::identity(2)),
            (
                QuantumChannel::dephasing(2).unwrap(),
                QuantumChannel::dephasing(2).unwrap(),
            ),
        ];
        for (a, b) in &pairs {
            // channels_compatible errors out if the two directions disagree
            let result = channels_compatible(a, b, &options);
            assert!(result.is_ok(), "asymmetric verdict for {}", a.label());
        }
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let a = QuantumChannel::identity(2);
        let b = QuantumChannel::identity(3);
        assert!(matches!(
            channels_compatible(&a, &b, &CompatOptions::default()),
            Err(CompatError::InputDimMismatch(2, 3))
        ));
        let sic = tetrahedral_sic();
        assert!(matches!(
            measurement_channel_compatible(&sic, &b, &CompatOptions::default()),
            Err(CompatError::MeasurementDimMismatch { .. })
        ));
    }
}

//! Seeded generators for random states, channels, maps, and POVMs.
//!
//! Everything draws from [`crate::rng::CounterRng`], so a
//! `(seed, stream)` pair pins the full object. Channels are sampled
//! Ginibre-style: a random complex matrix `G` gives a PSD Choi candidate
//! `G G†`, made trace-preserving by the symmetric correction
//! `(1 ⊗ S^{-1/2}) J (1 ⊗ S^{-1/2})` with `S = Tr_out J`.

use crate::channels::{LinearMapOnOperators, QuantumChannel};
use crate::numkit::{
    c, cr, dagger, identity, invsqrt_hermitian, kron, partial_trace, ComplexMatrix, ComplexVector,
    TraceSide,
};
use crate::povm::{frame_info, Povm};
use crate::rng::CounterRng;

/// Random complex matrix with independent standard-normal entries.
pub fn random_ginibre(rng: &mut CounterRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.normal(), rng.normal()))
}

/// Haar-random pure state vector.
pub fn random_pure_state(rng: &mut CounterRng, d: usize) -> ComplexVector {
    let mut v = ComplexVector::from_fn(d, |_, _| c(rng.normal(), rng.normal()));
    let n = v.norm();
    if n == 0.0 {
        v[0] = cr(1.0);
        return v;
    }
    v.unscale(n)
}

/// Random full-rank density matrix `G G† / Tr`.
pub fn random_density(rng: &mut CounterRng, d: usize) -> ComplexMatrix {
    let g = random_ginibre(rng, d, d);
    let m = &g * dagger(&g);
    let t = m.trace().re;
    m.unscale(t)
}

/// Random CPTP channel from a Ginibre Choi matrix with the symmetric
/// trace-preservation correction. `kraus_rank` bounds the Choi rank.
pub fn random_channel(
    rng: &mut CounterRng,
    din: usize,
    dout: usize,
    kraus_rank: usize,
) -> QuantumChannel {
    let n = din * dout;
    let g = random_ginibre(rng, n, kraus_rank.max(1));
    let j = &g * dagger(&g);
    let s = partial_trace(&j, dout, din, TraceSide::First).expect("Choi candidate is din*dout");
    let corr = kron(
        &identity(dout),
        &invsqrt_hermitian(&s).expect("Ginibre marginal is positive definite"),
    );
    let choi = &corr * j * dagger(&corr);
    QuantumChannel::from_choi(choi, din, dout, format!("random channel ({din}->{dout})"))
        .expect("corrected Ginibre Choi is CPTP")
}

/// Random channel with a rank-deficient transfer matrix, built by
/// composing a random channel with the completely dephasing one.
pub fn random_rank_deficient_channel(rng: &mut CounterRng, d: usize) -> QuantumChannel {
    let outer = random_channel(rng, d, d, d * d);
    let deph = QuantumChannel::dephasing(d).expect("d >= 2");
    outer.compose(&deph).expect("dimensions agree")
}

/// Random Hermitian-preserving trace-preserving map that is generally not
/// positive: a random Hermitian Choi matrix with the additive
/// trace-preservation correction `J + 1/dout ⊗ (1 - Tr_out J)`.
pub fn random_hptp_map(rng: &mut CounterRng, din: usize, dout: usize) -> LinearMapOnOperators {
    let n = din * dout;
    let g = random_ginibre(rng, n, n);
    let j = (&g + dagger(&g)).scale(0.5);
    let s = partial_trace(&j, dout, din, TraceSide::First).expect("square Hermitian");
    let fix = kron(&identity(dout).unscale(dout as f64), &(identity(din) - s));
    let choi = j + fix;
    LinearMapOnOperators::from_choi(choi, din, dout, format!("random HPTP ({din}->{dout})"))
        .expect("corrected Hermitian Choi is well-formed")
}

/// Random minimal IC POVM: `d²` random PSD effects `A_i A_i†` normalized by
/// `S^{-1/2} · S^{-1/2}`. Redraws (deterministically) in the measure-zero
/// event that the sample fails informational completeness.
pub fn random_minimal_ic_povm(rng: &mut CounterRng, d: usize) -> Povm {
    loop {
        if let Some(povm) = try_random_ic_povm(rng, d, d * d) {
            return povm;
        }
    }
}

/// Random informationally complete POVM with `outcomes >= d²` effects.
pub fn random_ic_povm(rng: &mut CounterRng, d: usize, outcomes: usize) -> Povm {
    assert!(outcomes >= d * d, "IC needs at least d^2 outcomes");
    loop {
        if let Some(povm) = try_random_ic_povm(rng, d, outcomes) {
            return povm;
        }
    }
}

fn try_random_ic_povm(rng: &mut CounterRng, d: usize, outcomes: usize) -> Option<Povm> {
    let effects: Vec<ComplexMatrix> = (0..outcomes)
        .map(|_| {
            let a = random_ginibre(rng, d, d);
            &a * dagger(&a)
        })
        .collect();
    let mut s = ComplexMatrix::zeros(d, d);
    for e in &effects {
        s += e;
    }
    let root = invsqrt_hermitian(&s).ok()?;
    let elements: Vec<ComplexMatrix> = effects.iter().map(|e| &root * e * &root).collect();
    let povm = Povm::new(elements, format!("random IC ({outcomes} outcomes, d={d})")).ok()?;
    frame_info(&povm).is_ic.then_some(povm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{classify, OperatorMap};
    use crate::numkit::{max_abs, min_eigenvalue};

    #[test]
    fn random_channels_are_cptp() {
        let mut rng = CounterRng::new(1, 100);
        for d in [2usize, 3] {
            let chan = random_channel(&mut rng, d, d, d * d);
            let cls = classify(&chan, 0, 0);
            assert!(cls.hermitian_preserving && cls.trace_preserving && cls.completely_positive);
        }
    }

    #[test]
    fn rank_deficient_channels_have_kernels() {
        let mut rng = CounterRng::new(2, 101);
        let chan = random_rank_deficient_channel(&mut rng, 2);
        let basis =
            crate::numkit::nullspace_basis(chan.transfer(), &crate::numkit::Tolerance::default());
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn random_hptp_maps_are_hptp_and_usually_not_cp() {
        let mut rng = CounterRng::new(3, 102);
        let mut saw_non_cp = false;
        for _ in 0..5 {
            let map = random_hptp_map(&mut rng, 2, 2);
            assert!(map.flags.hermitian_preserving);
            assert!(map.flags.trace_preserving);
            saw_non_cp |= !map.flags.completely_positive;
        }
        assert!(
            saw_non_cp,
            "random Hermitian Choi should usually be indefinite"
        );
    }

    #[test]
    fn random_povms_satisfy_axioms() {
        let mut rng = CounterRng::new(4, 103);
        let povm = random_minimal_ic_povm(&mut rng, 2);
        assert_eq!(povm.outcomes(), 4);
        let mut sum = ComplexMatrix::zeros(2, 2);
        for e in povm.elements() {
            assert!(min_eigenvalue(e).unwrap() >= -1e-10);
            sum += e;
        }
        assert!(max_abs(&(sum - identity(2))) < 1e-9);
    }

    #[test]
    fn density_matrices_are_normalized() {
        let mut rng = CounterRng::new(5, 104);
        let rho = random_density(&mut rng, 3);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(min_eigenvalue(&rho).unwrap() >= -1e-12);
    }
}

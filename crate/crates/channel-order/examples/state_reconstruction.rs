//! Linear-inversion state reconstruction from informationally complete
//! measurement statistics.
//!
//! ```bash
//! cargo run -p channel-order --example state_reconstruction
//! ```

use channel_order::numkit::fro_norm;
use channel_order::povm::{
    build_minimal_ic, frame_info, gram_condition_number, reconstruct_state, tetrahedral_sic,
};
use channel_order::rng::CounterRng;
use channel_order::sampling;

fn main() {
    let mut rng = CounterRng::new(2024, 0);

    // qubit: tetrahedral SIC
    let sic = tetrahedral_sic();
    let info = frame_info(&sic);
    println!(
        "tetrahedral SIC: {} outcomes, frame rank {}, minimal IC = {}",
        sic.outcomes(),
        info.frame_rank,
        info.is_minimal_ic
    );
    println!(
        "gram matrix: diagonal 1/4 = {:.4}, off-diagonal 1/12 = {:.4}",
        info.gram[(0, 0)].re,
        info.gram[(0, 1)].re
    );

    let rho = sampling::random_density(&mut rng, 2);
    let probs = sic.probabilities(&rho).unwrap();
    let rec = reconstruct_state(&sic, &probs).unwrap();
    println!(
        "qubit round trip from exact probabilities: error {:.3e}, PSD = {}",
        fro_norm(&(&rec.estimate - &rho)),
        rec.psd
    );

    // qutrit: constructed minimal IC family
    let q3 = build_minimal_ic(3).unwrap();
    println!(
        "\nbuilt qutrit family: {} outcomes, gram condition number {:.1}",
        q3.outcomes(),
        gram_condition_number(&q3)
    );
    let rho3 = sampling::random_density(&mut rng, 3);
    let probs3 = q3.probabilities(&rho3).unwrap();
    let rec3 = reconstruct_state(&q3, &probs3).unwrap();
    println!(
        "qutrit round trip: error {:.3e}",
        fro_norm(&(&rec3.estimate - &rho3))
    );

    // noisy frequencies give a noisy (possibly non-PSD) linear estimate
    let noisy: Vec<f64> = probs
        .iter()
        .map(|p| (p + 0.02 * rng.normal()).max(0.0))
        .collect();
    let rec_noisy = reconstruct_state(&sic, &noisy).unwrap();
    println!(
        "\nwith perturbed frequencies: error {:.3e}, PSD = {} (estimator stays linear)",
        fro_norm(&(&rec_noisy.estimate - &rho)),
        rec_noisy.psd
    );
}

//! Finite-sample recovery of the identity channel's output from
//! depolarized statistics: error against shot count at several noise
//! levels.
//!
//! ```bash
//! cargo run -p channel-order --example tomography_convergence
//! ```

use channel_order::numkit::{cr, projector, ComplexVector};
use channel_order::povm::{depolarize_povm, tetrahedral_sic};
use channel_order::tomosim::{convergence_study, StudyOptions};
use channel_order::QuantumChannel;

fn main() {
    let id = QuantumChannel::identity(2);
    let sic = tetrahedral_sic();
    let rho = projector(&ComplexVector::from_vec(vec![cr(1.0), cr(0.0)]));
    let grid = [1_000u64, 10_000, 100_000, 1_000_000];

    for t in [0.9, 0.5, 0.1] {
        let depol = QuantumChannel::depolarizing(2, t).unwrap();
        let noisy = depolarize_povm(&sic, t).unwrap();
        let study = convergence_study(
            &depol,
            &id,
            &sic,
            &noisy,
            &rho,
            &grid,
            50,
            &StudyOptions::default(),
        )
        .unwrap();
        println!("t = {t}: median error by shots");
        for row in &study.rows {
            println!(
                "  {:>9} shots: median {:.4e}  (IQR {:.4e} – {:.4e})",
                row.shots, row.median_error, row.q25, row.q75
            );
        }
        println!("  log-log slope: {:.3}\n", study.slope.unwrap());
    }
    println!(
        "all slopes sit near -1/2; the constant grows as t shrinks because inverting \
         the noisy frame amplifies sampling noise."
    );
}

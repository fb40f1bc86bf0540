//! Two independent constructions of the connecting map and the witness
//! measurements realizing the statistics identity.
//!
//! ```bash
//! cargo run -p channel-order --example connecting_map
//! ```

use channel_order::channels::{classify, OperatorMap, QuantumChannel};
use channel_order::numkit::{fro_norm, Tolerance};
use channel_order::povm::{frame_info, heisenberg_image, tetrahedral_sic};
use channel_order::preorder::{
    construct_theta, construct_theta_from_measurements, witness_measurements,
};

fn main() {
    let t = 0.5;
    let depol = QuantumChannel::depolarizing(2, t).unwrap();
    let id = QuantumChannel::identity(2);
    let tol = Tolerance::default();

    // route 1: pseudo-inverse on the image, trace dump on the complement
    let theta_kernel = construct_theta(&depol, &id, &tol).unwrap();
    println!(
        "kernel-route map: residual {:.3e}",
        fro_norm(&(theta_kernel.transfer() * depol.transfer() - id.transfer()))
    );

    // route 2: extend m2(x) ↦ m1(x) linearly from a minimal IC basis;
    // here m1 is the SIC and m2 its noisy image under the dual channel
    let sic = tetrahedral_sic();
    let noisy = heisenberg_image(&depol, &sic)
        .unwrap()
        .into_povm("noisy SIC")
        .unwrap();
    let theta_meas = construct_theta_from_measurements(&sic, &noisy, &depol, &id).unwrap();
    println!(
        "measurement-route map: residual {:.3e}",
        fro_norm(&(theta_meas.transfer() * depol.transfer() - id.transfer()))
    );
    println!(
        "the two transfers differ by {:.3e} (images coincide, so they agree everywhere)",
        fro_norm(&(theta_kernel.transfer() - theta_meas.transfer()))
    );

    let cls = classify(&theta_kernel, 2000, 1);
    println!(
        "\nclassification: HP {}, TP {}, CP {}",
        cls.hermitian_preserving, cls.trace_preserving, cls.completely_positive
    );

    // witness pair for any channel pair connected by this map
    let (m1, m2) = witness_measurements(&theta_kernel).unwrap();
    println!(
        "\nwitness measurements: m1 with {} outcomes, m2 minimal IC = {}",
        m1.outcomes(),
        frame_info(&m2).is_minimal_ic
    );
    println!("statistics identity: Tr[id(ρ) m2(x)] = Tr[depolarizing(ρ) m1(x)] for every state ρ");
}

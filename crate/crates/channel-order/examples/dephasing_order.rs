//! The dephasing channel sits strictly below the identity: coherences land
//! in its kernel, so its statistics can never determine them.
//!
//! ```bash
//! cargo run -p channel-order --example dephasing_order
//! ```

use channel_order::numkit::{matrix_unit, vectorize, Tolerance};
use channel_order::preorder::asymp_geq;
use channel_order::{OperatorMap, QuantumChannel};

fn main() {
    let tol = Tolerance::default();
    for d in [2usize, 3] {
        let id = QuantumChannel::identity(d);
        let deph = QuantumChannel::dephasing(d).unwrap();
        println!("dimension {d}:");

        let (holds, cert) = asymp_geq(&id, &deph, &tol).unwrap();
        println!(
            "  identity ⪰ dephasing: {holds} (kernel of identity has dim {})",
            cert.dim_ker_1
        );

        let (holds, cert) = asymp_geq(&deph, &id, &tol).unwrap();
        println!(
            "  dephasing ⪰ identity: {holds} (kernel dim {}, max leak {:.3})",
            cert.dim_ker_1, cert.max_leak
        );

        // the coherence |0⟩⟨1| is the culprit: dephasing kills it, the
        // identity keeps it at full norm
        let coherence = vectorize(&matrix_unit(d, 0, 1));
        println!(
            "  ‖dephasing(|0⟩⟨1|)‖ = {:.3}, ‖identity(|0⟩⟨1|)‖ = {:.3}\n",
            (deph.transfer() * &coherence).norm(),
            (id.transfer() * &coherence).norm(),
        );
    }
}

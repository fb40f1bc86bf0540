//! Reducing an overcomplete informationally complete measurement to a
//! minimal one by merging surplus outcomes.
//!
//! ```bash
//! cargo run -p channel-order --example povm_reduction
//! ```

use channel_order::numkit::{identity, max_abs, ComplexMatrix};
use channel_order::povm::{frame_info, reduce_to_minimal, tetrahedral_sic, Povm};

fn main() {
    // start from the SIC and split its first element in half: five
    // outcomes, still informationally complete, no longer minimal
    let sic = tetrahedral_sic();
    let mut elements = vec![sic.elements()[0].scale(0.5), sic.elements()[0].scale(0.5)];
    elements.extend_from_slice(&sic.elements()[1..]);
    let split = Povm::new(elements, "split SIC").unwrap();
    let info = frame_info(&split);
    println!(
        "split SIC: {} outcomes, frame rank {}, minimal = {}",
        split.outcomes(),
        info.frame_rank,
        info.is_minimal_ic
    );

    let (reduced, merge) = reduce_to_minimal(&split).unwrap();
    println!(
        "reduced: {} outcomes, minimal = {}",
        reduced.outcomes(),
        frame_info(&reduced).is_minimal_ic
    );
    for (slot, group) in merge.iter().enumerate() {
        if group.len() > 1 {
            println!("  outcome {slot} absorbed original outcomes {group:?}");
        }
    }

    // sanity: the reduced family still resolves the identity and each
    // output element is the sum of the originals it absorbed
    let mut sum = ComplexMatrix::zeros(2, 2);
    for e in reduced.elements() {
        sum += e;
    }
    println!(
        "sum deviation from identity: {:.3e}",
        max_abs(&(sum - identity(2)))
    );
    let halves_merged = max_abs(
        &(&reduced.elements()[merge.iter().position(|g| g.len() == 2).unwrap()]
            - &sic.elements()[0]),
    );
    println!("the two half-elements re-merged to the original: deviation {halves_merged:.3e}");
}

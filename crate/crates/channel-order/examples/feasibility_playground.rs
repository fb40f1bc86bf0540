//! Direct use of the affine ∩ PSD feasibility engine, outside the channel
//! encodings.
//!
//! ```bash
//! cargo run -p channel-order --example feasibility_playground
//! ```

use channel_order::feasibility::{
    encode_postproc, solve, AffineConstraint, AffinePsdProblem, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use channel_order::QuantumChannel;
use nalgebra::{DMatrix, DVector};

fn main() {
    // a 2x2 Hermitian block constrained to unit trace: trivially feasible
    let mut op = DMatrix::zeros(1, 4);
    op[(0, 0)] = 1.0;
    op[(0, 1)] = 1.0;
    let problem = AffinePsdProblem::new(
        vec![("x".into(), 2)],
        vec![AffineConstraint {
            name: "unit trace".into(),
            op,
            rhs: DVector::from_vec(vec![1.0]),
        }],
        "trace-one state",
    )
    .unwrap();
    let verdict = solve(&problem, DEFAULT_MAX_ITER, DEFAULT_TOL);
    println!(
        "unit-trace block: feasible = {}, iterations = {}",
        verdict.is_feasible(),
        verdict.iterations
    );

    // a scalar pinned to -1 with PSD meaning x >= 0: infeasible, gap 1
    let problem = AffinePsdProblem::new(
        vec![("x".into(), 1)],
        vec![AffineConstraint {
            name: "pin".into(),
            op: DMatrix::from_vec(1, 1, vec![1.0]),
            rhs: DVector::from_vec(vec![-1.0]),
        }],
        "negative scalar",
    )
    .unwrap();
    let verdict = solve(&problem, DEFAULT_MAX_ITER, DEFAULT_TOL);
    println!(
        "negative scalar: infeasible = {}, gap = {:.4}",
        verdict.is_infeasible(),
        verdict.gap().unwrap()
    );

    // the channel encodings produce the same kind of problem
    let depol = QuantumChannel::depolarizing(2, 0.5).unwrap();
    let id = QuantumChannel::identity(2);
    let problem = encode_postproc(&depol, &id).unwrap();
    println!(
        "\npost-processing encoding `{}`: {} block(s), {} constraint group(s)",
        problem.label,
        problem.blocks.len(),
        problem.constraints.len()
    );
    let verdict = solve(&problem, DEFAULT_MAX_ITER, DEFAULT_TOL);
    println!(
        "verdict: infeasible = {} with gap {:.4} (the noise cannot be undone physically)",
        verdict.is_infeasible(),
        verdict.gap().unwrap()
    );
}

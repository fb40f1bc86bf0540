//! Affine ∩ PSD feasibility via Dykstra alternating projections.
//!
//! A problem is a block-diagonal Hermitian variable (one PSD block per
//! named slot) plus affine constraints on the stacked block entries. The
//! solver alternates least-squares projection onto the affine set with
//! eigenvalue clamping onto the PSD cone, with Dykstra's correction terms
//! so the iterates converge to a point of the intersection whenever one
//! exists. Infeasibility is reported as a gap estimate, not a certificate:
//! either the affine system itself is inconsistent (its least-squares
//! residual is a sound lower bound), or the inter-set distance plateaus at
//! a positive value.
//!
//! Everything runs over real coordinates: a Hermitian `d×d` block is
//! carried as `d²` reals (diagonal, then `√2`-scaled real and imaginary
//! off-diagonal parts), which makes the Frobenius norm the Euclidean norm
//! and keeps both projections exact.

use crate::channels::{apply_via_choi, dual, ChannelError, OperatorMap, QuantumChannel};
use crate::numkit::{
    c, cr, eig_hermitian, identity, partial_trace, ComplexMatrix, NumError, TraceSide,
};
use crate::povm::{Povm, PovmError};
use nalgebra::{DMatrix, DVector};
use thiserror::Error;

/// Default iteration cap for [`solve`].
pub const DEFAULT_MAX_ITER: usize = 50_000;
/// Default feasibility tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Consecutive near-constant iterations required to declare a plateau.
const PLATEAU_WINDOW: usize = 200;
/// Relative change below which the gap sequence counts as constant.
const PLATEAU_REL_CHANGE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum FeasibilityError {
    #[error("problem must contain at least one block")]
    NoBlocks,
    #[error("constraint `{name}` has {rows} rows but {rhs} right-hand entries")]
    ConstraintShape {
        name: String,
        rows: usize,
        rhs: usize,
    },
    #[error("constraint `{name}` acts on {cols} variables, problem has {expected}")]
    ConstraintWidth {
        name: String,
        cols: usize,
        expected: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Povm(#[from] PovmError),
}

/// One affine constraint `op · x = rhs` on the stacked real coordinates.
#[derive(Debug, Clone)]
pub struct AffineConstraint {
    pub name: String,
    pub op: DMatrix<f64>,
    pub rhs: DVector<f64>,
}

/// Block-diagonal PSD variable plus affine constraints.
#[derive(Debug, Clone)]
pub struct AffinePsdProblem {
    /// `(name, dim)` per Hermitian block.
    pub blocks: Vec<(String, usize)>,
    pub constraints: Vec<AffineConstraint>,
    pub label: String,
}

impl AffinePsdProblem {
    pub fn new(
        blocks: Vec<(String, usize)>,
        constraints: Vec<AffineConstraint>,
        label: impl Into<String>,
    ) -> Result<Self, FeasibilityError> {
        if blocks.is_empty() {
            return Err(FeasibilityError::NoBlocks);
        }
        let nvars: usize = blocks.iter().map(|(_, d)| d * d).sum();
        for cst in &constraints {
            if cst.op.nrows() != cst.rhs.len() {
                return Err(FeasibilityError::ConstraintShape {
                    name: cst.name.clone(),
                    rows: cst.op.nrows(),
                    rhs: cst.rhs.len(),
                });
            }
            if cst.op.ncols() != nvars {
                return Err(FeasibilityError::ConstraintWidth {
                    name: cst.name.clone(),
                    cols: cst.op.ncols(),
                    expected: nvars,
                });
            }
        }
        Ok(Self {
            blocks,
            constraints,
            label: label.into(),
        })
    }

    /// Total real coordinate count.
    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|(_, d)| d * d).sum()
    }

    /// Splits a stacked coordinate vector into Hermitian blocks.
    pub fn unstack(&self, x: &DVector<f64>) -> Vec<ComplexMatrix> {
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut offset = 0;
        for (_, d) in &self.blocks {
            let coords = x.rows(offset, d * d).into_owned();
            out.push(coords_to_herm(&coords, *d));
            offset += d * d;
        }
        out
    }

    /// Largest violation of any affine constraint at the given blocks.
    pub fn max_violation(&self, blocks: &[ComplexMatrix]) -> f64 {
        let x = stack_blocks(blocks);
        self.constraints
            .iter()
            .map(|cst| (&cst.op * &x - &cst.rhs).amax())
            .fold(0.0, f64::max)
    }
}

/// Real coordinates of a Hermitian matrix: diagonal entries, then
/// `√2·Re` and `√2·Im` of each upper off-diagonal entry. An isometry for
/// the Frobenius norm.
pub fn herm_to_coords(m: &ComplexMatrix) -> DVector<f64> {
    let d = m.nrows();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut out = DVector::zeros(d * d);
    let mut k = 0;
    for i in 0..d {
        out[k] = m[(i, i)].re;
        k += 1;
    }
    for i in 0..d {
        for j in (i + 1)..d {
            out[k] = sqrt2 * m[(i, j)].re;
            out[k + 1] = sqrt2 * m[(i, j)].im;
            k += 2;
        }
    }
    out
}

/// Inverse of [`herm_to_coords`].
pub fn coords_to_herm(x: &DVector<f64>, d: usize) -> ComplexMatrix {
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut m = ComplexMatrix::zeros(d, d);
    let mut k = 0;
    for i in 0..d {
        m[(i, i)] = cr(x[k]);
        k += 1;
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let z = c(x[k] / sqrt2, x[k + 1] / sqrt2);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
            k += 2;
        }
    }
    m
}

fn stack_blocks(blocks: &[ComplexMatrix]) -> DVector<f64> {
    let total: usize = blocks.iter().map(|b| b.nrows() * b.nrows()).sum();
    let mut out = DVector::zeros(total);
    let mut offset = 0;
    for b in blocks {
        let coords = herm_to_coords(b);
        out.rows_mut(offset, coords.len()).copy_from(&coords);
        offset += coords.len();
    }
    out
}

/// Outcome of a feasibility run.
#[derive(Debug, Clone)]
pub enum FeasibilityStatus {
    /// A point satisfying all constraints to tolerance, one matrix per
    /// block, independently verified before being returned.
    Feasible { point: Vec<ComplexMatrix> },
    /// The sets stay apart: `gap` is the plateaued inter-set distance, or
    /// the least-squares residual when the affine system itself is
    /// inconsistent.
    Infeasible { gap: f64 },
    /// Iteration budget exhausted without a verdict.
    Undecided { residual: f64 },
}

#[derive(Debug, Clone)]
pub struct FeasibilityVerdict {
    pub status: FeasibilityStatus,
    pub iterations: usize,
    pub final_residual: f64,
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, FeasibilityStatus::Feasible { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self.status, FeasibilityStatus::Infeasible { .. })
    }

    pub fn gap(&self) -> Option<f64> {
        match &self.status {
            FeasibilityStatus::Infeasible { gap } => Some(*gap),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[ComplexMatrix]> {
        match &self.status {
            FeasibilityStatus::Feasible { point } => Some(point),
            _ => None,
        }
    }
}

fn psd_project_coords(problem: &AffinePsdProblem, x: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(x.len());
    let mut offset = 0;
    for (_, d) in &problem.blocks {
        let n = d * d;
        let coords = x.rows(offset, n).into_owned();
        let m = coords_to_herm(&coords, *d);
        let (values, vectors) = eig_hermitian(&m).expect("coords build an exactly Hermitian block");
        let mut proj = ComplexMatrix::zeros(*d, *d);
        for k in 0..*d {
            if values[k] > 0.0 {
                let v = vectors.column(k);
                for i in 0..*d {
                    for j in 0..*d {
                        proj[(i, j)] += cr(values[k]) * v[i] * v[j].conj();
                    }
                }
            }
        }
        out.rows_mut(offset, n).copy_from(&herm_to_coords(&proj));
        offset += n;
    }
    out
}

fn real_pinv(a: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("left vectors");
    let v_t = svd.v_t.expect("right vectors");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let floor = 1e-12 * smax.max(1.0);
    let k = svd.singular_values.len();
    let mut spinv = DMatrix::zeros(k, k);
    for i in 0..k {
        if svd.singular_values[i] > floor {
            spinv[(i, i)] = 1.0 / svd.singular_values[i];
        }
    }
    v_t.transpose() * spinv * u.transpose()
}

/// Runs the solver and returns the verdict together with the per-iteration
/// residual history (affine violation at the cone-projected iterate).
pub fn solve_traced(
    problem: &AffinePsdProblem,
    max_iter: usize,
    tol: f64,
) -> (FeasibilityVerdict, Vec<f64>) {
    let nvars = problem.nvars();
    let total_rows: usize = problem.constraints.iter().map(|c| c.op.nrows()).sum();
    if total_rows == 0 {
        // nothing to satisfy: the zero blocks are already in the cone
        let point = problem.unstack(&DVector::zeros(nvars));
        let verdict = FeasibilityVerdict {
            status: FeasibilityStatus::Feasible { point },
            iterations: 0,
            final_residual: 0.0,
        };
        return (verdict, vec![0.0]);
    }
    let mut a = DMatrix::zeros(total_rows, nvars);
    let mut b = DVector::zeros(total_rows);
    let mut row = 0;
    for cst in &problem.constraints {
        a.view_mut((row, 0), (cst.op.nrows(), nvars))
            .copy_from(&cst.op);
        b.rows_mut(row, cst.rhs.len()).copy_from(&cst.rhs);
        row += cst.op.nrows();
    }
    let a_pinv = real_pinv(&a);

    // Inconsistent affine systems are infeasible outright: the least-squares
    // residual lower-bounds every point's violation.
    let x_ls = &a_pinv * &b;
    let lsq_residual = (&a * &x_ls - &b).norm();
    if lsq_residual > 10.0 * tol {
        let verdict = FeasibilityVerdict {
            status: FeasibilityStatus::Infeasible { gap: lsq_residual },
            iterations: 0,
            final_residual: lsq_residual,
        };
        return (verdict, vec![lsq_residual]);
    }

    let project_affine = |x: &DVector<f64>| -> DVector<f64> { x - &a_pinv * (&a * x - &b) };

    let mut x = x_ls;
    let mut p = DVector::zeros(nvars);
    let mut q = DVector::zeros(nvars);
    let mut history = Vec::new();
    let mut last_gap = f64::INFINITY;
    let mut plateau_run = 0usize;

    for iter in 1..=max_iter {
        let y = project_affine(&(&x + &p));
        p = &x + &p - &y;
        let z = psd_project_coords(problem, &(&y + &q));
        q = &y + &q - &z;
        let gap = (&y - &z).norm();
        let residual = (&a * &z - &b).norm();
        history.push(residual);
        x = z;

        if residual <= tol {
            let point = problem.unstack(&x);
            // independent verification against the original constraint list
            let violation = problem.max_violation(&point);
            let min_eig = point
                .iter()
                .map(|m| {
                    eig_hermitian(m)
                        .map(|(v, _)| v[0])
                        .unwrap_or(f64::NEG_INFINITY)
                })
                .fold(f64::INFINITY, f64::min);
            if violation <= 10.0 * tol && min_eig >= -10.0 * tol {
                let verdict = FeasibilityVerdict {
                    status: FeasibilityStatus::Feasible { point },
                    iterations: iter,
                    final_residual: residual,
                };
                return (verdict, history);
            }
        }

        // plateau of the inter-set gap at a value well above tolerance
        let rel_change = (gap - last_gap).abs() / gap.abs().max(1e-300);
        if gap > 10.0 * tol && rel_change < PLATEAU_REL_CHANGE {
            plateau_run += 1;
            if plateau_run >= PLATEAU_WINDOW {
                let verdict = FeasibilityVerdict {
                    status: FeasibilityStatus::Infeasible { gap },
                    iterations: iter,
                    final_residual: residual,
                };
                return (verdict, history);
            }
        } else {
            plateau_run = 0;
        }
        last_gap = gap;
    }

    let final_residual = history.last().copied().unwrap_or(f64::INFINITY);
    let verdict = FeasibilityVerdict {
        status: FeasibilityStatus::Undecided {
            residual: final_residual,
        },
        iterations: max_iter,
        final_residual,
    };
    (verdict, history)
}

/// Decides whether the affine constraints intersect the PSD block cone.
pub fn solve(problem: &AffinePsdProblem, max_iter: usize, tol: f64) -> FeasibilityVerdict {
    solve_traced(problem, max_iter, tol).0
}

/// Encodes "`theta ∘ a = b` for some quantum channel `theta`" as an affine
/// ∩ PSD problem on the Choi matrix of `theta`.
///
/// The single PSD block is `J(theta)` of edge `dout(a)·dout(b)`; the affine
/// rows impose trace preservation (`Tr_out J = 1`) and the action of
/// `theta` on the image of `a` matching `b` on a Hermitian operator basis
/// of the common input space. Feasible exactly when `b` is a
/// post-processing of `a`.
pub fn encode_postproc(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
) -> Result<AffinePsdProblem, FeasibilityError> {
    if a.din() != b.din() {
        return Err(FeasibilityError::DimensionMismatch(format!(
            "input dimensions differ: {} vs {}",
            a.din(),
            b.din()
        )));
    }
    let din_theta = a.dout();
    let dout_theta = b.dout();
    let edge = din_theta * dout_theta;
    let nvars = edge * edge;
    let din = a.din();

    // images of a Hermitian operator basis of the input space
    let basis_dim = din * din;
    let mut a_images = Vec::with_capacity(basis_dim);
    let mut b_images = Vec::with_capacity(basis_dim);
    for k in 0..basis_dim {
        let mut e = DVector::zeros(basis_dim);
        e[k] = 1.0;
        let ek = coords_to_herm(&e, din);
        a_images.push(a.apply(&ek)?);
        b_images.push(b.apply(&ek)?);
    }

    let tp_rows = din_theta * din_theta;
    let mut tp_op = DMatrix::zeros(tp_rows, nvars);
    let mut action_ops: Vec<DMatrix<f64>> = (0..basis_dim)
        .map(|_| DMatrix::zeros(dout_theta * dout_theta, nvars))
        .collect();

    for col in 0..nvars {
        let mut e = DVector::zeros(nvars);
        e[col] = 1.0;
        let j_basis = coords_to_herm(&e, edge);
        let marginal = partial_trace(&j_basis, dout_theta, din_theta, TraceSide::First)?;
        tp_op.set_column(col, &herm_to_coords(&marginal));
        for (k, img) in a_images.iter().enumerate() {
            let out = apply_via_choi(&j_basis, din_theta, dout_theta, img)?;
            action_ops[k].set_column(col, &herm_to_coords(&out));
        }
    }

    let mut constraints = vec![AffineConstraint {
        name: "trace-preserving".into(),
        op: tp_op,
        rhs: herm_to_coords(&identity(din_theta)),
    }];
    for (k, op) in action_ops.into_iter().enumerate() {
        constraints.push(AffineConstraint {
            name: format!("action[{k}]"),
            op,
            rhs: herm_to_coords(&b_images[k]),
        });
    }

    AffinePsdProblem::new(
        vec![("choi(theta)".into(), edge)],
        constraints,
        format!("postproc: {} -> {}", a.label(), b.label()),
    )
}

/// Recovers the post-processing map from a feasible point of
/// [`encode_postproc`] as a verified quantum channel.
///
/// Solver points satisfy the axioms only to solver tolerance, so the Choi
/// matrix is clamped to the PSD cone and the trace-preservation marginal is
/// renormalized before the channel is constructed; the adjustment is of the
/// order of the solver residual.
pub fn decode_postproc_solution(
    a: &impl OperatorMap,
    b: &impl OperatorMap,
    point: &[ComplexMatrix],
) -> Result<QuantumChannel, FeasibilityError> {
    let raw = point.first().ok_or(FeasibilityError::NoBlocks)?;
    let (din_theta, dout_theta) = (a.dout(), b.dout());
    let clamped = crate::numkit::psd_project(raw)?;
    let marginal = partial_trace(&clamped, dout_theta, din_theta, TraceSide::First)?;
    let corr = crate::numkit::kron(
        &identity(dout_theta),
        &crate::numkit::invsqrt_hermitian(&marginal)?,
    );
    let choi = &corr * clamped * corr.adjoint();
    Ok(QuantumChannel::from_choi(
        choi,
        din_theta,
        dout_theta,
        format!("postproc witness ({} -> {})", a.label(), b.label()),
    )?)
}

/// Encodes "there is a measurement `m'` on the environment with
/// `dual(lbar)(m'(x)) = m(x)` for all outcomes" as an affine ∩ PSD problem
/// with one Hermitian block per outcome of `m`, plus the resolution of the
/// identity on the environment.
pub fn encode_povm_pullback(
    m: &Povm,
    lbar: &QuantumChannel,
) -> Result<AffinePsdProblem, FeasibilityError> {
    if m.dim() != lbar.din() {
        return Err(FeasibilityError::DimensionMismatch(format!(
            "measurement acts on dim {}, channel input is {}",
            m.dim(),
            lbar.din()
        )));
    }
    let denv = lbar.dout();
    let n = m.outcomes();
    let block_vars = denv * denv;
    let nvars = n * block_vars;
    let d = m.dim();
    let dual_map = dual(lbar);

    // resolution of the identity on the environment
    let mut sum_op = DMatrix::zeros(block_vars, nvars);
    for x in 0..n {
        for k in 0..block_vars {
            sum_op[(k, x * block_vars + k)] = 1.0;
        }
    }
    let mut constraints = vec![AffineConstraint {
        name: "sum-to-identity".into(),
        op: sum_op,
        rhs: herm_to_coords(&identity(denv)),
    }];

    // pullback of each environment effect through the dual must hit M(x)
    let mut dual_cols: Vec<DVector<f64>> = Vec::with_capacity(block_vars);
    for k in 0..block_vars {
        let mut e = DVector::zeros(block_vars);
        e[k] = 1.0;
        let eff = coords_to_herm(&e, denv);
        let img = dual_map.apply(&eff)?;
        dual_cols.push(herm_to_coords(&img));
    }
    for x in 0..n {
        let mut op = DMatrix::zeros(d * d, nvars);
        for (k, colv) in dual_cols.iter().enumerate() {
            op.set_column(x * block_vars + k, colv);
        }
        constraints.push(AffineConstraint {
            name: format!("pullback[{x}]"),
            op,
            rhs: herm_to_coords(&m.elements()[x]),
        });
    }

    let blocks = (0..n).map(|x| (format!("m'[{x}]"), denv)).collect();
    AffinePsdProblem::new(
        blocks,
        constraints,
        format!("pullback: {} through {}", m.label(), lbar.label()),
    )
}

/// Promotes a feasible point of [`encode_povm_pullback`] to a POVM on the
/// environment.
///
/// Each block is clamped to the PSD cone and the family is conjugated by
/// `S^{-1/2}` with `S = Σ_x M'(x)` so the resolution of the identity holds
/// exactly; the adjustment is of the order of the solver residual.
pub fn decode_pullback_solution(point: &[ComplexMatrix]) -> Result<Povm, FeasibilityError> {
    if point.is_empty() {
        return Err(FeasibilityError::NoBlocks);
    }
    let denv = point[0].nrows();
    let mut clamped = Vec::with_capacity(point.len());
    let mut sum = ComplexMatrix::zeros(denv, denv);
    for block in point {
        let p = crate::numkit::psd_project(block)?;
        sum += &p;
        clamped.push(p);
    }
    let root = crate::numkit::invsqrt_hermitian(&sum)?;
    let elements = clamped.iter().map(|m| &root * m * &root).collect();
    Ok(Povm::new(elements, "recovered environment measurement")?)
}

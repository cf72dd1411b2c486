//! The exceptional ((8,16,2)) phantom code built on PG(3,2): line states,
//! point-star states, the sixteen logical codewords, and the verification
//! of the permutation, duality, transversal-gate, and stabiliser
//! structure.
//!
//! Point-star and uniform states are kept with integer amplitudes so that
//! the geometric inner-product identities can be checked exactly; the
//! irrational coefficients enter only at the final logical-basis assembly.

use num_complex::Complex64;
use thiserror::Error;

use crate::gf2::BitVector;
use crate::gl::{cnot_circuit_unitary, phi, tau_c, transvection, ADJACENT_4};
use crate::perm::Permutation;
use crate::pg32::{all_points, verify_tables, LineTable, PgGeometry, ProjPlane, ProjPoint};
use crate::statevector::{
    apply_permutation, knill_laflamme_check, CodeSpace, IntState, KlReport, StateVector,
};

const STATE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PgError {
    #[error("line-table verification failed with {mismatches} mismatches")]
    TableMismatch { mismatches: usize },
    #[error("phantom certification failed at g{i}{j} on {state}: deviation {deviation:.3e}")]
    Certification {
        i: usize,
        j: usize,
        state: String,
        deviation: f64,
    },
}

/// The ((8,16,2)) code: 35 line states, 15 point stars, the uniform line
/// sum, and the orthonormal logical basis ordered as the logical zero
/// state followed by the PG points in numeral order.
pub struct PgCode {
    line_states: Vec<IntState>,
    point_stars: Vec<IntState>,
    uniform: IntState,
    logical_basis: CodeSpace,
    alpha: f64,
    beta: f64,
}

/// `alpha = 1/sqrt(6)`, `beta = -(1/5)(1/sqrt(6) - 1/sqrt(21))`.
pub fn logical_coefficients() -> (f64, f64) {
    let alpha = 1.0 / 6.0_f64.sqrt();
    let beta = -(1.0 / 5.0) * (1.0 / 6.0_f64.sqrt() - 1.0 / 21.0_f64.sqrt());
    (alpha, beta)
}

/// Builds the code after checking the embedded tables.
pub fn build_pg_code() -> Result<PgCode, PgError> {
    let report = verify_tables(LineTable::embedded());
    if !report.is_clean() {
        return Err(PgError::TableMismatch {
            mismatches: report.mismatches.len(),
        });
    }
    let geo = PgGeometry::get();

    // unnormalized line vectors |b> + |b-bar>; the physical line state is
    // this over sqrt(2)
    let line_states: Vec<IntState> = geo
        .all_lines()
        .iter()
        .map(|line| {
            let b = geo.line_representative(line);
            IntState::basis_state(8, &b).add(&IntState::basis_state(8, &b.complement()))
        })
        .collect();

    let point_stars: Vec<IntState> = all_points()
        .iter()
        .map(|x| {
            geo.lines_through_point(x)
                .iter()
                .fold(IntState::zero(8), |acc, line| {
                    acc.add(&line_states[line.id() - 1])
                })
        })
        .collect();

    let uniform = line_states
        .iter()
        .fold(IntState::zero(8), |acc, l| acc.add(l));

    let (alpha, beta) = logical_coefficients();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis = Vec::with_capacity(16);
    let zero_word = BitVector::zero(8);
    let logical_zero = StateVector::basis_state(8, &zero_word)
        .add(&StateVector::basis_state(8, &zero_word.complement()))
        .scale(Complex64::new(inv_sqrt2, 0.0));
    basis.push(logical_zero);
    for star in &point_stars {
        let state = star
            .to_state_vector(alpha * inv_sqrt2)
            .add(&uniform.to_state_vector(beta * inv_sqrt2));
        basis.push(state);
    }

    Ok(PgCode {
        line_states,
        point_stars,
        uniform,
        logical_basis: CodeSpace::new(basis),
        alpha,
        beta,
    })
}

impl PgCode {
    pub fn line_state(&self, id: usize) -> &IntState {
        &self.line_states[id - 1]
    }

    pub fn point_star(&self, x: &ProjPoint) -> &IntState {
        &self.point_stars[x.numeral() - 1]
    }

    pub fn uniform(&self) -> &IntState {
        &self.uniform
    }

    pub fn logical_basis(&self) -> &CodeSpace {
        &self.logical_basis
    }

    /// Logical state for `x` in `F_2^4`; the zero vector names the
    /// logical zero state.
    pub fn logical_state(&self, numeral: usize) -> &StateVector {
        &self.logical_basis.basis()[numeral]
    }

    pub fn coefficients(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    /// `<a_x|a_y>` in normalized-line units, exact.
    pub fn star_gram(&self, x: &ProjPoint, y: &ProjPoint) -> i64 {
        let d = self.point_star(x).dot(self.point_star(y));
        debug_assert_eq!(d % 2, 0);
        d / 2
    }

    /// `<a_x|t>`, exact.
    pub fn star_uniform_gram(&self, x: &ProjPoint) -> i64 {
        let d = self.point_star(x).dot(&self.uniform);
        debug_assert_eq!(d % 2, 0);
        d / 2
    }

    /// `<t|t>`, exact.
    pub fn uniform_norm(&self) -> i64 {
        let d = self.uniform.dot(&self.uniform);
        debug_assert_eq!(d % 2, 0);
        d / 2
    }

    /// `sum_x |a_x> = 3 |t>` as integer vectors.
    pub fn star_sum_is_three_uniform(&self) -> bool {
        let sum = self
            .point_stars
            .iter()
            .fold(IntState::zero(8), |acc, s| acc.add(s));
        sum == self.uniform.scale(3)
    }

    /// The plane state `|p_Pi>` as an integer vector.
    pub fn plane_state(&self, plane: &ProjPlane) -> IntState {
        let geo = PgGeometry::get();
        geo.lines_in_plane(plane)
            .iter()
            .fold(IntState::zero(8), |acc, line| {
                acc.add(&self.line_states[line.id() - 1])
            })
    }

    /// `2 |p_Pi| = sum_{x in Pi} |a_x> - |t>` exactly, for all 15 planes.
    pub fn plane_identity_holds(&self) -> bool {
        all_points().iter().all(|normal| {
            let plane =
                match PgGeometry::get().dual_subspace(&crate::pg32::Subspace::Point(*normal)) {
                    crate::pg32::Subspace::Plane(p) => p,
                    _ => unreachable!(),
                };
            let lhs = self.plane_state(&plane).scale(2);
            let rhs = plane
                .points()
                .iter()
                .fold(IntState::zero(8), |acc, x| acc.add(self.point_star(x)))
                .sub(&self.uniform);
            lhs == rhs
        })
    }
}

/// One verified generator of the permutation certificate.
#[derive(Clone, Debug)]
pub struct PhantomGeneratorCheck {
    pub transvection: (usize, usize),
    pub permutation: Permutation,
    /// All 35 line states map exactly to the image line states.
    pub lines_exact: bool,
    /// Worst distance between `sigma_g |x-bar>` and `|g.x-bar>`.
    pub max_state_error: f64,
    /// Worst entry deviation between the induced logical matrix and the
    /// CNOT-circuit permutation matrix.
    pub max_matrix_error: f64,
}

/// For each of the six adjacent transvections `g`: checks that the
/// physical permutation `phi(g)` maps every line state to the image line
/// state exactly, maps every logical state to the image logical state
/// with global phase +1, and induces exactly the CNOT-circuit unitary of
/// `g` on the logical basis.
pub fn verify_phantom(code: &PgCode) -> Result<Vec<PhantomGeneratorCheck>, PgError> {
    let geo = PgGeometry::get();
    let mut checks = Vec::new();
    for &(i, j) in ADJACENT_4.iter() {
        let g = transvection(i, j, 4);
        let sigma = phi(&g);

        for line in geo.all_lines() {
            let moved = code
                .line_state(line.id())
                .apply_permutation(&sigma)
                .expect("degree 8");
            let target = geo.apply_to_line(&g, line);
            if &moved != code.line_state(target.id()) {
                return Err(PgError::Certification {
                    i,
                    j,
                    state: format!("line {}", line.id()),
                    deviation: f64::INFINITY,
                });
            }
        }

        let unitary = cnot_circuit_unitary(&g, 4);
        let mut max_state_error: f64 = 0.0;
        let mut max_matrix_error: f64 = 0.0;
        let basis = code.logical_basis().basis();
        for (index, state) in basis.iter().enumerate() {
            let moved = apply_permutation(state, &sigma).expect("degree 8");
            let target = &basis[unitary.image(index)];
            let err = moved.distance_to(target);
            if err > STATE_TOL {
                return Err(PgError::Certification {
                    i,
                    j,
                    state: format!("logical state {index}"),
                    deviation: err,
                });
            }
            max_state_error = max_state_error.max(err);
            for (row, bra) in basis.iter().enumerate() {
                let entry = bra.inner(&moved);
                let expect = Complex64::new(unitary.entry(row, index), 0.0);
                max_matrix_error = max_matrix_error.max((entry - expect).norm());
            }
        }
        checks.push(PhantomGeneratorCheck {
            transvection: (i, j),
            permutation: sigma,
            lines_exact: true,
            max_state_error,
            max_matrix_error,
        });
    }
    Ok(checks)
}

/// Verification data for the duality permutation and its logical action.
#[derive(Clone, Debug)]
pub struct UcReport {
    /// `(U_c)_{xy} = <x-bar| sigma_c |y-bar>`, rows and columns ordered as
    /// the logical basis. Entries are real.
    pub matrix: Vec<Vec<f64>>,
    pub max_code_residual: f64,
    /// Worst deviation from the reference entries (1/3 inside the dual
    /// plane, -1/6 outside, logical zero fixed).
    pub max_entry_error: f64,
    /// `|| U_c^2 - 1 ||_max`.
    pub involution_error: f64,
    pub plus_multiplicity: usize,
    pub minus_multiplicity: usize,
    /// Trace over the 15 nonzero-logical states.
    pub trace_nonzero: f64,
}

/// Applies the odd duality permutation to the logical basis, extracts the
/// induced logical matrix, and checks it against the reference form.
/// Eigenvalue multiplicities follow from the trace once the matrix is
/// verified to be an involution.
pub fn verify_s8_and_uc(code: &PgCode) -> UcReport {
    let sigma_c = tau_c();
    let basis = code.logical_basis().basis();
    let mut max_code_residual: f64 = 0.0;
    let mut matrix = vec![vec![0.0; 16]; 16];
    for (col, state) in basis.iter().enumerate() {
        let moved = apply_permutation(state, &sigma_c).expect("degree 8");
        max_code_residual = max_code_residual.max(code.logical_basis().residual(&moved));
        for (row, bra) in basis.iter().enumerate() {
            let entry = bra.inner(&moved);
            debug_assert!(entry.im.abs() < STATE_TOL);
            matrix[row][col] = entry.re;
        }
    }

    let points = all_points();
    let mut max_entry_error: f64 = 0.0;
    for row in 0..16 {
        for col in 0..16 {
            let expect = match (row, col) {
                (0, 0) => 1.0,
                (0, _) | (_, 0) => 0.0,
                (r, c) => {
                    if points[r - 1].dot(&points[c - 1]) {
                        -1.0 / 6.0
                    } else {
                        1.0 / 3.0
                    }
                }
            };
            max_entry_error = max_entry_error.max((matrix[row][col] - expect).abs());
        }
    }

    let mut involution_error: f64 = 0.0;
    for r in 0..16 {
        for c in 0..16 {
            let entry: f64 = (0..16).map(|k| matrix[r][k] * matrix[k][c]).sum();
            let expect = if r == c { 1.0 } else { 0.0 };
            involution_error = involution_error.max((entry - expect).abs());
        }
    }

    let trace: f64 = (0..16).map(|d| matrix[d][d]).sum();
    let trace_nonzero: f64 = (1..16).map(|d| matrix[d][d]).sum();
    let plus_multiplicity = ((16.0 + trace) / 2.0).round() as usize;
    let minus_multiplicity = 16 - plus_multiplicity;

    UcReport {
        matrix,
        max_code_residual,
        max_entry_error,
        involution_error,
        plus_multiplicity,
        minus_multiplicity,
        trace_nonzero,
    }
}

/// Verification data for the transversal phase gate.
#[derive(Clone, Debug)]
pub struct T8Report {
    /// `<x-bar| T^(x8) |y-bar>` in the logical basis order.
    pub matrix: Vec<Vec<Complex64>>,
    pub max_code_residual: f64,
    /// Worst deviation from `diag(1, -1, ..., -1)`.
    pub max_diag_error: f64,
    /// Worst deviation of the squared gate from the logical identity.
    pub s8_identity_error: f64,
}

fn apply_phase_gate(state: &StateVector, theta: f64) -> StateVector {
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(t, &a)| a * Complex64::from_polar(1.0, theta * t.count_ones() as f64))
        .collect();
    StateVector::from_amplitudes(state.qubits(), amps)
}

/// Applies `T` on all eight qubits: the code space is preserved and the
/// logical action is `diag(1, -1, ..., -1)`; the square (`S` on all
/// qubits) acts as the logical identity.
pub fn verify_t8(code: &PgCode) -> T8Report {
    let basis = code.logical_basis().basis();
    let theta = std::f64::consts::FRAC_PI_4;
    let mut max_code_residual: f64 = 0.0;
    let mut max_diag_error: f64 = 0.0;
    let mut s8_identity_error: f64 = 0.0;
    let mut matrix = vec![vec![Complex64::ZERO; 16]; 16];
    for (col, state) in basis.iter().enumerate() {
        let moved = apply_phase_gate(state, theta);
        max_code_residual = max_code_residual.max(code.logical_basis().residual(&moved));
        for (row, bra) in basis.iter().enumerate() {
            let entry = bra.inner(&moved);
            matrix[row][col] = entry;
            let expect = match (row == col, col) {
                (true, 0) => Complex64::ONE,
                (true, _) => -Complex64::ONE,
                (false, _) => Complex64::ZERO,
            };
            max_diag_error = max_diag_error.max((entry - expect).norm());
        }
        let squared = apply_phase_gate(state, 2.0 * theta);
        for (row, bra) in basis.iter().enumerate() {
            let entry = bra.inner(&squared);
            let expect = if row == col {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            s8_identity_error = s8_identity_error.max((entry - expect).norm());
        }
    }
    T8Report {
        matrix,
        max_code_residual,
        max_diag_error,
        s8_identity_error,
    }
}

/// Dimensions of the two-row symmetric-group representations of 8 letters
/// by the hook length formula, for partitions `(8, 0) .. (4, 4)`.
pub fn two_row_irrep_dims() -> [usize; 5] {
    let mut dims = [0; 5];
    for (i, dim) in dims.iter_mut().enumerate() {
        *dim = hook_length_dimension(8 - i, i);
    }
    dims
}

fn hook_length_dimension(a: usize, b: usize) -> usize {
    assert!(a >= b && a + b == 8);
    let mut product: u64 = 1;
    for j in 1..=a {
        let arm = a - j;
        let leg = usize::from(j <= b);
        product *= (arm + leg + 1) as u64;
    }
    for j in 1..=b {
        product *= (b - j + 1) as u64;
    }
    let factorial: u64 = (1..=8).product();
    (factorial / product) as usize
}

/// Result of intersecting the stabiliser eigenspaces.
#[derive(Clone, Debug)]
pub struct StabReport {
    pub hook_dims: [usize; 5],
    /// Dimension of `ker J^2(J^2-20) ∩ {S^x8 = 1} ∩ {X^x8 = 1}`.
    pub intersection_dim: usize,
    /// Worst residual of a code basis state under the three stabiliser
    /// conditions.
    pub code_membership_residual: f64,
    /// Worst residual of an intersection basis vector against the code
    /// projector.
    pub intersection_residual: f64,
}

/// Computes the joint eigenspace of the three non-Pauli stabilisers by
/// explicit kernel intersection and confirms it coincides with the code
/// space.
///
/// `J^2` preserves Hamming-weight sectors, so its blocks are computed per
/// sector; the `S^(x8) = 1` condition keeps exactly the sectors of weight
/// 0, 4, and 8; the `X^(x8)` fixed subspace is then extracted from the
/// assembled kernel.
pub fn stabilizer_characterization(code: &PgCode) -> StabReport {
    let n = 8usize;
    let dim = 1usize << n;

    // kernel of J^2 (J^2 - 20) per admissible weight sector
    let mut kernel_vectors: Vec<Vec<f64>> = Vec::new();
    for w in [0usize, 4, 8] {
        let sector: Vec<usize> = (0..dim).filter(|t| t.count_ones() as usize == w).collect();
        let pos: std::collections::HashMap<usize, usize> =
            sector.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let s = sector.len();
        // columns of J^2 restricted to the sector
        let mut j2 = vec![vec![0.0f64; s]; s];
        for (cidx, &t) in sector.iter().enumerate() {
            let mut amps = vec![Complex64::ZERO; dim];
            amps[t] = Complex64::ONE;
            let basis = StateVector::from_amplitudes(n, amps);
            let image = crate::statevector::collective_casimir_apply(&basis);
            for (u, &a) in image.amplitudes().iter().enumerate() {
                if a != Complex64::ZERO {
                    j2[pos[&u]][cidx] = a.re;
                }
            }
        }
        // A = J^2 (J^2 - 20)
        let mut a = vec![vec![0.0f64; s]; s];
        for r in 0..s {
            for c in 0..s {
                let mut acc = 0.0;
                for k in 0..s {
                    acc += j2[r][k] * (j2[k][c] - if k == c { 20.0 } else { 0.0 });
                }
                a[r][c] = acc;
            }
        }
        for coeffs in kernel_basis(&a) {
            let mut full = vec![0.0f64; dim];
            for (i, &t) in sector.iter().enumerate() {
                full[t] = coeffs[i];
            }
            kernel_vectors.push(full);
        }
    }

    // X^(x8)-fixed subspace of the assembled kernel: solve (X - 1) B c = 0
    let m = kernel_vectors.len();
    let mut difference = vec![vec![0.0f64; m]; dim];
    for (j, v) in kernel_vectors.iter().enumerate() {
        for t in 0..dim {
            difference[t][j] = v[dim - 1 - t] - v[t];
        }
    }
    let fixed_coeffs = kernel_basis(&difference);
    let intersection_dim = fixed_coeffs.len();

    // residuals both ways
    let basis = code.logical_basis().basis();
    let mut code_membership_residual: f64 = 0.0;
    for state in basis {
        let j2 = crate::statevector::collective_casimir_apply(state);
        let j4 = crate::statevector::collective_casimir_apply(&j2);
        let casimir_residual = j4.sub(&j2.scale(Complex64::new(20.0, 0.0))).norm();
        code_membership_residual = code_membership_residual.max(casimir_residual);
        let s8 = apply_phase_gate(state, std::f64::consts::FRAC_PI_2);
        code_membership_residual = code_membership_residual.max(s8.distance_to(state));
        let flipped_amps: Vec<Complex64> = (0..dim).map(|t| state.amp(dim - 1 - t)).collect();
        let flipped = StateVector::from_amplitudes(n, flipped_amps);
        code_membership_residual = code_membership_residual.max(flipped.distance_to(state));
    }

    let mut intersection_residual: f64 = 0.0;
    for coeffs in &fixed_coeffs {
        let mut amps = vec![Complex64::ZERO; dim];
        for (j, v) in kernel_vectors.iter().enumerate() {
            for t in 0..dim {
                amps[t] += Complex64::new(v[t] * coeffs[j], 0.0);
            }
        }
        let state = StateVector::from_amplitudes(n, amps).normalized();
        intersection_residual = intersection_residual.max(code.logical_basis().residual(&state));
    }

    StabReport {
        hook_dims: two_row_irrep_dims(),
        intersection_dim,
        code_membership_residual,
        intersection_residual,
    }
}

/// Worst code-space residual over the seven adjacent transpositions
/// applied to every logical basis state. Together with the even
/// permutations certified in [`verify_phantom`] this exhausts the full
/// symmetric group.
pub fn adjacent_transposition_residual(code: &PgCode) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 1..8 {
        let tau = Permutation::from_cycles(&format!("({} {})", i, i + 1), 8).expect("valid");
        for state in code.logical_basis().basis() {
            let moved = apply_permutation(state, &tau).expect("degree 8");
            worst = worst.max(code.logical_basis().residual(&moved));
        }
    }
    worst
}

/// Knill-Laflamme sweep of the logical basis.
pub fn pg_knill_laflamme(code: &PgCode, max_weight: usize) -> KlReport {
    knill_laflamme_check(code.logical_basis(), max_weight)
}

/// Exact distance-2 witnesses: `<bar0| Z1 Z2 |bar0> = 1` and
/// `<t| Z1 Z2 |t> = -5`, so `(1/35) <t|Z1Z2|t> = -1/7`.
pub fn z1z2_witnesses(code: &PgCode) -> (i64, i64) {
    let z1z2 = crate::css::PauliLabel::z_only("11000000".parse().expect("valid"));
    let zero_word = BitVector::zero(8);
    let logical_zero_int = IntState::basis_state(8, &zero_word)
        .add(&IntState::basis_state(8, &zero_word.complement()));
    let zero_expect = logical_zero_int.dot(&logical_zero_int.apply_pauli(&z1z2)) / 2;
    let uniform_expect = code.uniform.dot(&code.uniform.apply_pauli(&z1z2)) / 2;
    (zero_expect, uniform_expect)
}

/// Kernel basis of a real matrix (rows x cols), by Gaussian elimination
/// with partial pivoting. Entries in this crate are small integers or
/// dyadic rationals, far from the pivot threshold.
fn kernel_basis(matrix: &[Vec<f64>]) -> Vec<Vec<f64>> {
    const PIVOT_TOL: f64 = 1e-6;
    if matrix.is_empty() {
        return Vec::new();
    }
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut work: Vec<Vec<f64>> = matrix.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let (best, best_val) = (row..rows)
            .map(|r| (r, work[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((row, 0.0));
        if best_val <= PIVOT_TOL {
            continue;
        }
        work.swap(row, best);
        let inv = 1.0 / work[row][col];
        for c in col..cols {
            work[row][c] *= inv;
        }
        for r in 0..rows {
            if r != row && work[r][col].abs() > 0.0 {
                let f = work[r][col];
                for c in col..cols {
                    work[r][c] -= f * work[row][c];
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -work[r][free];
        }
        basis.push(v);
    }
    basis
}

//! Dense complex state vectors on up to 12 qubits: permutation and Pauli
//! application, Knill-Laflamme error sweeps, the collective-spin Casimir
//! operator, and computational-basis CSS codewords.
//!
//! Basis states are indexed by the numeral of the bit string with qubit 1
//! the most significant bit, matching the packed BitVector layout.
//!
//! Pauli application uses the simplified Z-then-X convention per qubit
//! with no i-factors; every in-scope check is either phase-insensitive or
//! involves X-only/Z-only operators, so the convention never affects a
//! scalar-versus-violating classification.

use num_complex::Complex64;
use thiserror::Error;

use crate::css::{CssCode, PauliLabel};
use crate::gf2::BitVector;
use crate::perm::{PermError, Permutation};

pub const MAX_QUBITS: usize = 12;
pub const SCALAR_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("{n} qubits exceed the dense-state ceiling of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A dense state on `n` qubits; not necessarily normalized.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count out of range");
        StateVector {
            n,
            amps: vec![Complex64::ZERO; 1 << n],
        }
    }

    pub fn basis_state(n: usize, s: &BitVector) -> Self {
        assert_eq!(s.len(), n, "bit string length mismatch");
        let mut v = Self::zero(n);
        v.amps[s.numeral() as usize] = Complex64::ONE;
        v
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Self {
        assert_eq!(amps.len(), 1 << n, "amplitude count mismatch");
        StateVector { n, amps }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn amp_of(&self, s: &BitVector) -> Complex64 {
        self.amps[s.numeral() as usize]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    /// `<self|other>` with the bra conjugated.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        StateVector {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn normalized(&self) -> Self {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }

    pub fn distance_to(&self, other: &Self) -> f64 {
        self.sub(other).norm()
    }
}

/// Amplitude of basis string `s` in the output equals the input amplitude
/// of `sigma^{-1} . s`; equivalently `sigma_g |s> = |sigma . s>` summed
/// over the input.
pub fn apply_permutation(psi: &StateVector, sigma: &Permutation) -> Result<StateVector, PermError> {
    let n = psi.qubits();
    if sigma.degree() != n {
        return Err(PermError::DegreeMismatch {
            left: sigma.degree(),
            right: n,
        });
    }
    // index map: bit (n - p) of t moves to bit (n - sigma(p))
    let mut out = StateVector::zero(n);
    let shifts: Vec<(usize, usize)> = (1..=n).map(|p| (n - p, n - sigma.apply(p))).collect();
    for (t, &a) in psi.amps.iter().enumerate() {
        if a == Complex64::ZERO {
            continue;
        }
        let mut image = 0usize;
        for &(from, to) in &shifts {
            image |= ((t >> from) & 1) << to;
        }
        out.amps[image] = a;
    }
    Ok(out)
}

/// Applies Z on the z-support then X on the x-support, with no global
/// i-factors.
pub fn apply_pauli(psi: &StateVector, label: &PauliLabel) -> StateVector {
    assert_eq!(label.len(), psi.qubits(), "label length mismatch");
    let xmask = label.x_part.word() as usize;
    let zmask = label.z_part.word() as usize;
    let mut out = StateVector::zero(psi.qubits());
    for (t, &a) in psi.amps.iter().enumerate() {
        if a == Complex64::ZERO {
            continue;
        }
        let sign = if (t & zmask).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out.amps[t ^ xmask] += a * sign;
    }
    out
}

/// An ordered list of mutually orthonormal states spanning a code space.
#[derive(Clone, Debug)]
pub struct CodeSpace {
    n: usize,
    basis: Vec<StateVector>,
}

impl CodeSpace {
    pub fn new(basis: Vec<StateVector>) -> Self {
        assert!(!basis.is_empty(), "empty basis");
        let n = basis[0].qubits();
        assert!(basis.iter().all(|b| b.qubits() == n), "mixed qubit counts");
        let space = CodeSpace { n, basis };
        assert!(space.is_orthonormal(SCALAR_TOL), "basis is not orthonormal");
        space
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StateVector] {
        &self.basis
    }

    pub fn is_orthonormal(&self, tol: f64) -> bool {
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let g = a.inner(b);
                let expect = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                if (g - expect).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Projection of `psi` onto the code space.
    pub fn project(&self, psi: &StateVector) -> StateVector {
        let mut out = StateVector::zero(self.n);
        for b in &self.basis {
            out = out.add(&b.scale(b.inner(psi)));
        }
        out
    }

    /// `|| (1 - P) psi ||`.
    pub fn residual(&self, psi: &StateVector) -> f64 {
        psi.sub(&self.project(psi)).norm()
    }
}

/// Outcome of testing one error operator against the code space.
#[derive(Clone, Debug)]
pub struct KlEntry {
    pub label: PauliLabel,
    /// `Some(c)` when `P E P = c P` within tolerance; `None` for a
    /// violating error.
    pub scalar: Option<Complex64>,
    /// `max_ij |M_E - c I|`.
    pub deviation: f64,
}

/// Knill-Laflamme sweep over all Pauli errors up to a weight cap.
#[derive(Clone, Debug)]
pub struct KlReport {
    pub max_weight: usize,
    pub entries: Vec<KlEntry>,
}

impl KlReport {
    pub fn violations(&self) -> impl Iterator<Item = &KlEntry> {
        self.entries.iter().filter(|e| e.scalar.is_none())
    }

    /// Minimum weight of a violating error found in the sweep.
    pub fn distance(&self) -> Option<usize> {
        self.violations().map(|e| e.label.weight()).min()
    }

    pub fn all_scalar_at_weight(&self, w: usize) -> bool {
        self.entries
            .iter()
            .filter(|e| e.label.weight() == w)
            .all(|e| e.scalar.is_some())
    }

    pub fn entry(&self, label: &PauliLabel) -> Option<&KlEntry> {
        self.entries.iter().find(|e| &e.label == label)
    }
}

fn weight_w_labels(n: usize, w: usize) -> Vec<PauliLabel> {
    let mut labels = Vec::new();
    let mut support = Vec::new();
    subsets(1, n, w, &mut support, &mut |supp| {
        // each supported qubit carries X, Z, or Y
        for mask in 0u32..3u32.pow(supp.len() as u32) {
            let mut x = BitVector::zero(n);
            let mut z = BitVector::zero(n);
            let mut m = mask;
            for &q in supp {
                match m % 3 {
                    0 => x.set(q, true),
                    1 => z.set(q, true),
                    _ => {
                        x.set(q, true);
                        z.set(q, true);
                    }
                }
                m /= 3;
            }
            labels.push(PauliLabel::new(x, z));
        }
    });
    labels
}

fn subsets(
    from: usize,
    n: usize,
    want: usize,
    acc: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if want == 0 {
        emit(acc);
        return;
    }
    for q in from..=n.saturating_sub(want - 1) {
        acc.push(q);
        subsets(q + 1, n, want - 1, acc, emit);
        acc.pop();
    }
}

/// For every Pauli error of weight 1..=max_weight (and the identity),
/// classifies `M_E = B^dagger E B` as scalar or violating.
pub fn knill_laflamme_check(space: &CodeSpace, max_weight: usize) -> KlReport {
    assert!(
        max_weight <= space.qubits(),
        "weight cap beyond qubit count"
    );
    let n = space.qubits();
    let k = space.dimension();
    let mut entries = Vec::new();
    let mut labels = vec![PauliLabel::new(BitVector::zero(n), BitVector::zero(n))];
    for w in 1..=max_weight {
        labels.extend(weight_w_labels(n, w));
    }
    for label in labels {
        let images: Vec<StateVector> = space
            .basis()
            .iter()
            .map(|b| apply_pauli(b, &label))
            .collect();
        let mut trace = Complex64::ZERO;
        for (i, b) in space.basis().iter().enumerate() {
            trace += b.inner(&images[i]);
        }
        let c = trace / k as f64;
        let mut deviation: f64 = 0.0;
        for (i, b) in space.basis().iter().enumerate() {
            for (j, img) in images.iter().enumerate() {
                let expect = if i == j { c } else { Complex64::ZERO };
                deviation = deviation.max((b.inner(img) - expect).norm());
            }
        }
        let scalar = (deviation <= SCALAR_TOL).then_some(c);
        entries.push(KlEntry {
            label,
            scalar,
            deviation,
        });
    }
    KlReport {
        max_weight,
        entries,
    }
}

/// `J^2 = J_z^2 + (J_+ J_- + J_- J_+) / 2` with the collective spin
/// operators `J_a = sum_i sigma_a^(i) / 2`. All matrix entries are
/// dyadic rationals, so floating-point evaluation is exact.
pub fn collective_casimir_apply(psi: &StateVector) -> StateVector {
    let n = psi.qubits();
    let jz2 = {
        let mut out = psi.clone();
        for (t, a) in out.amps.iter_mut().enumerate() {
            let jz = (n as f64 - 2.0 * (t.count_ones() as f64)) / 2.0;
            *a *= jz * jz;
        }
        out
    };
    let raise = |psi: &StateVector| {
        // sigma_+ maps |1> -> |0> on each site (|0> is spin up)
        let mut out = StateVector::zero(n);
        for (t, &a) in psi.amps.iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            for b in 0..n {
                if t >> b & 1 == 1 {
                    out.amps[t & !(1 << b)] += a;
                }
            }
        }
        out
    };
    let lower = |psi: &StateVector| {
        let mut out = StateVector::zero(n);
        for (t, &a) in psi.amps.iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            for b in 0..n {
                if t >> b & 1 == 0 {
                    out.amps[t | 1 << b] += a;
                }
            }
        }
        out
    };
    let pm = raise(&lower(psi));
    let mp = lower(&raise(psi));
    jz2.add(&pm.add(&mp).scale(Complex64::new(0.5, 0.0)))
}

/// Computational-basis codewords of a CSS code: for each logical pattern
/// `x` the uniform superposition over the X-stabiliser coset of
/// `v_x = sum_i x_i logical_x[i]`, normalized. Ordered by the numeral of
/// `x` (qubit 1 most significant), matching the CNOT-unitary indexing.
pub fn css_codewords(code: &CssCode) -> Result<CodeSpace, StateError> {
    let n = code.length();
    if n > MAX_QUBITS {
        return Err(StateError::TooManyQubits { n, max: MAX_QUBITS });
    }
    let k = code.logical_count();
    let span: Vec<BitVector> = code.x_stabilizer_span().codewords().collect();
    let norm = 1.0 / (span.len() as f64).sqrt();
    let mut basis = Vec::with_capacity(1 << k);
    for pattern in 0..1u64 << k {
        let x = BitVector::from_word(k, pattern);
        let mut v = BitVector::zero(n);
        for i in 1..=k {
            if x.get(i) {
                v = v.xor(&code.logical_x()[i - 1]);
            }
        }
        let mut state = StateVector::zero(n);
        for s in &span {
            state.amps[v.xor(s).numeral() as usize] = Complex64::new(norm, 0.0);
        }
        basis.push(state);
    }
    Ok(CodeSpace::new(basis))
}

/// Exact integer-amplitude state, used where inner products must be
/// checked in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntState {
    n: usize,
    amps: Vec<i64>,
}

impl IntState {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count out of range");
        IntState {
            n,
            amps: vec![0; 1 << n],
        }
    }

    pub fn basis_state(n: usize, s: &BitVector) -> Self {
        let mut v = Self::zero(n);
        v.amps[s.numeral() as usize] = 1;
        v
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amp_of(&self, s: &BitVector) -> i64 {
        self.amps[s.numeral() as usize]
    }

    pub fn amplitudes(&self) -> &[i64] {
        &self.amps
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntState {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntState {
            n: self.n,
            amps: self
                .amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        IntState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn dot(&self, other: &Self) -> i64 {
        assert_eq!(self.n, other.n);
        self.amps.iter().zip(&other.amps).map(|(a, b)| a * b).sum()
    }

    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<IntState, PermError> {
        if sigma.degree() != self.n {
            return Err(PermError::DegreeMismatch {
                left: sigma.degree(),
                right: self.n,
            });
        }
        let n = self.n;
        let shifts: Vec<(usize, usize)> = (1..=n).map(|p| (n - p, n - sigma.apply(p))).collect();
        let mut out = IntState::zero(n);
        for (t, &a) in self.amps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut image = 0usize;
            for &(from, to) in &shifts {
                image |= ((t >> from) & 1) << to;
            }
            out.amps[image] = a;
        }
        Ok(out)
    }

    pub fn apply_pauli(&self, label: &PauliLabel) -> IntState {
        assert_eq!(label.len(), self.n);
        let xmask = label.x_part.word() as usize;
        let zmask = label.z_part.word() as usize;
        let mut out = IntState::zero(self.n);
        for (t, &a) in self.amps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if (t & zmask).count_ones() % 2 == 1 {
                -1
            } else {
                1
            };
            out.amps[t ^ xmask] += a * sign;
        }
        out
    }

    pub fn to_state_vector(&self, scale: f64) -> StateVector {
        StateVector {
            n: self.n,
            amps: self
                .amps
                .iter()
                .map(|&a| Complex64::new(a as f64 * scale, 0.0))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::css::{css_distance, hypercube_code};
    use crate::gl::cnot_circuit_unitary;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_state(rng: &mut StdRng, n: usize) -> StateVector {
        let amps = (0..1 << n)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        StateVector::from_amplitudes(n, amps)
    }

    #[test]
    fn permutation_application_anchors() {
        let g12 = Permutation::from_cycles("(1 2)(3 4)(5 6)(7 8)", 8).unwrap();
        let s: BitVector = "10101010".parse().unwrap();
        let psi = StateVector::basis_state(8, &s);
        let out = apply_permutation(&psi, &g12).unwrap();
        let expect: BitVector = "01010101".parse().unwrap();
        assert_eq!(out.amp_of(&expect), Complex64::ONE);
        assert_eq!(out.norm2(), 1.0);

        let id = Permutation::identity(8);
        let psi = StateVector::basis_state(8, &"10100110".parse().unwrap());
        assert!(apply_permutation(&psi, &id).unwrap().distance_to(&psi) == 0.0);

        assert!(apply_permutation(&psi, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn permutation_application_is_unitary_and_a_representation() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..20 {
            let psi = random_state(&mut rng, 6);
            let a = random_perm(&mut rng, 6);
            let b = random_perm(&mut rng, 6);
            let via_product = apply_permutation(&psi, &a.compose(&b)).unwrap();
            let stepwise = apply_permutation(&apply_permutation(&psi, &b).unwrap(), &a).unwrap();
            assert!(via_product.distance_to(&stepwise) < 1e-12);
            assert!((via_product.norm2() - psi.norm2()).abs() < 1e-12);
        }
    }

    #[test]
    fn pauli_application_examples() {
        // Z1 Z2 picks up (-1)^{s1+s2}
        let z12 = PauliLabel::z_only("11000000".parse().unwrap());
        let psi = StateVector::basis_state(8, &"10101010".parse().unwrap());
        let out = apply_pauli(&psi, &z12);
        assert_eq!(out.amp_of(&"10101010".parse().unwrap()), -Complex64::ONE);

        let x_all = PauliLabel::x_only("11111111".parse().unwrap());
        let psi = StateVector::basis_state(8, &"00000000".parse().unwrap());
        let out = apply_pauli(&psi, &x_all);
        assert_eq!(out.amp_of(&"11111111".parse().unwrap()), Complex64::ONE);
    }

    #[test]
    fn weight_one_x_leaves_the_weight_four_sector() {
        // a line-like state: equal superposition of a string and its
        // complement
        let a: BitVector = "10101010".parse().unwrap();
        let line = StateVector::basis_state(8, &a)
            .add(&StateVector::basis_state(8, &a.complement()))
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let mut x3 = BitVector::zero(8);
        x3.set(3, true);
        let moved = apply_pauli(&line, &PauliLabel::x_only(x3));
        // orthogonal to every weight-4 superposition
        for w in 0..256u64 {
            let s = BitVector::from_word(8, w);
            if s.weight() == 4 {
                assert_eq!(moved.amp_of(&s), Complex64::ZERO);
            }
        }
    }

    #[test]
    fn casimir_anchors() {
        // top state of j = 4: eigenvalue j(j+1) = 20
        let top = StateVector::basis_state(8, &"11111111".parse().unwrap());
        let out = collective_casimir_apply(&top);
        assert!(out.distance_to(&top.scale(Complex64::new(20.0, 0.0))) < 1e-12);

        // two-qubit singlet: eigenvalue 0
        let s01 = StateVector::basis_state(2, &"01".parse().unwrap());
        let s10 = StateVector::basis_state(2, &"10".parse().unwrap());
        let singlet = s01
            .sub(&s10)
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        assert!(collective_casimir_apply(&singlet).norm() < 1e-12);

        // triplet |01> + |10>: j = 1, eigenvalue 2
        let triplet = s01
            .add(&s10)
            .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let out = collective_casimir_apply(&triplet);
        assert!(out.distance_to(&triplet.scale(Complex64::new(2.0, 0.0))) < 1e-12);
    }

    #[test]
    fn hypercube_codewords() {
        let code = hypercube_code(3);
        let space = css_codewords(&code).unwrap();
        assert_eq!(space.dimension(), 8);
        // |bar 000> = (|0000000> + |1111111>) / sqrt(2)
        let zero = &space.basis()[0];
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((zero.amp_of(&"0000000".parse().unwrap()).re - r).abs() < 1e-15);
        assert!((zero.amp_of(&"1111111".parse().unwrap()).re - r).abs() < 1e-15);
        assert!((zero.norm2() - 1.0).abs() < 1e-12);

        // every codeword is a +1 eigenstate of every stabiliser
        for b in space.basis() {
            for s in code
                .x_stabilizers()
                .iter()
                .chain(code.z_stabilizers().iter())
            {
                assert!(apply_pauli(b, s).distance_to(b) < 1e-12);
            }
        }
    }

    #[test]
    fn hypercube_state_distance_matches_symplectic_distance() {
        let code = hypercube_code(3);
        let space = css_codewords(&code).unwrap();
        let report = knill_laflamme_check(&space, 2);
        assert_eq!(report.distance(), Some(2));
        assert_eq!(report.distance().unwrap(), css_distance(&code).unwrap().2);
        assert!(report.all_scalar_at_weight(1));
    }

    #[test]
    fn codeword_construction_rejects_large_blocks() {
        // n = 15 is past the dense-state ceiling
        let code = hypercube_code(4);
        assert!(matches!(
            css_codewords(&code),
            Err(StateError::TooManyQubits {
                n: 15,
                max: MAX_QUBITS
            })
        ));
    }

    #[test]
    fn kl_identity_is_scalar_one() {
        let code = hypercube_code(3);
        let space = css_codewords(&code).unwrap();
        let report = knill_laflamme_check(&space, 0);
        assert_eq!(report.entries.len(), 1);
        let c = report.entries[0].scalar.expect("identity is scalar");
        assert!((c - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn certified_permutations_act_as_cnot_circuits_with_phase_one() {
        let code = hypercube_code(3);
        let space = css_codewords(&code).unwrap();
        let cert = crate::css::phantom_certificate(&code, 3).unwrap();
        for entry in &cert.entries {
            let u = cnot_circuit_unitary(&entry.action, 3);
            for (pattern, codeword) in space.basis().iter().enumerate() {
                let moved = apply_permutation(codeword, &entry.permutation).unwrap();
                let target = &space.basis()[u.image(pattern)];
                // exact logical permutation action, global phase +1
                assert!(moved.distance_to(target) < 1e-12);
            }
        }
    }

    fn random_perm(rng: &mut StdRng, n: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        Permutation::from_images(images).unwrap()
    }
}

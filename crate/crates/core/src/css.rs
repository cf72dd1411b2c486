//! CSS stabiliser codes in the binary symplectic formalism: construction
//! from classical pairs, logical operator extraction, distances,
//! permutation-induced logical CNOT actions, phantom certificates for the
//! punctured hypercube family, and the Pauli no-go checker for length 8.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{dual_code, min_weight, BitVector, ClassicalCode, Gf2Error, Gf2Matrix};
use crate::gl::{all_transvections, dual_element, GlElement};
use crate::perm::Permutation;
use crate::rm::{invariant_codes, rm_code, subcube_indicator, RmVariant};

/// A Pauli operator label `(a|b)`: X on the support of `a`, Z on the
/// support of `b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliLabel {
    pub x_part: BitVector,
    pub z_part: BitVector,
}

impl PauliLabel {
    pub fn new(x_part: BitVector, z_part: BitVector) -> Self {
        assert_eq!(
            x_part.len(),
            z_part.len(),
            "label halves disagree on length"
        );
        PauliLabel { x_part, z_part }
    }

    pub fn x_only(a: BitVector) -> Self {
        let z = BitVector::zero(a.len());
        PauliLabel {
            x_part: a,
            z_part: z,
        }
    }

    pub fn z_only(b: BitVector) -> Self {
        let x = BitVector::zero(b.len());
        PauliLabel {
            x_part: x,
            z_part: b,
        }
    }

    pub fn len(&self) -> usize {
        self.x_part.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of qubits acted on: `|supp(a) u supp(b)|`.
    pub fn weight(&self) -> usize {
        (self.x_part.word() | self.z_part.word()).count_ones() as usize
    }

    /// Symplectic form: labels commute iff `a.b' + a'.b = 0`.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self.x_part.dot(&other.z_part) == other.x_part.dot(&self.z_part)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            let c = match (self.x_part.get(i), self.z_part.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Which stabiliser sector a rejection refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PauliKind {
    X,
    Z,
}

impl fmt::Display for PauliKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliKind::X => "X",
            PauliKind::Z => "Z",
        })
    }
}

#[derive(Debug, Error)]
pub enum CssError {
    #[error("CSS condition violated: {witness} lies in dual(C_X) but not in C_Z")]
    CssViolation { witness: BitVector },
    #[error("permutation degree {degree} does not match code length {n}")]
    DegreeMismatch { degree: usize, n: usize },
    #[error("the {space}-type stabiliser span is not preserved (witness row {witness})")]
    StabilizerNotPreserved {
        space: PauliKind,
        witness: BitVector,
    },
    #[error("certification failed at transvection g{i}{j}: induced logical action differs")]
    CertificationFailure { i: usize, j: usize },
    #[error("document does not describe a valid CSS code: {0}")]
    BadDocument(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// A CSS code built from a classical pair `(C_X, C_Z)` with
/// `dual(C_X) <= C_Z`. Stabiliser spans are the duals of the constituent
/// codes; logical representatives are paired so that
/// `logical_x[i] . logical_z[j] = delta_ij`.
#[derive(Clone, PartialEq, Eq)]
pub struct CssCode {
    n: usize,
    c_x: ClassicalCode,
    c_z: ClassicalCode,
    k: usize,
    x_stabilizer_span: ClassicalCode,
    z_stabilizer_span: ClassicalCode,
    logical_x: Vec<BitVector>,
    logical_z: Vec<BitVector>,
}

impl fmt::Debug for CssCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CssCode[[{}, {}]]", self.n, self.k)
    }
}

impl CssCode {
    pub fn length(&self) -> usize {
        self.n
    }

    pub fn logical_count(&self) -> usize {
        self.k
    }

    pub fn c_x(&self) -> &ClassicalCode {
        &self.c_x
    }

    pub fn c_z(&self) -> &ClassicalCode {
        &self.c_z
    }

    pub fn x_stabilizer_span(&self) -> &ClassicalCode {
        &self.x_stabilizer_span
    }

    pub fn z_stabilizer_span(&self) -> &ClassicalCode {
        &self.z_stabilizer_span
    }

    pub fn logical_x(&self) -> &[BitVector] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[BitVector] {
        &self.logical_z
    }

    /// X-type stabiliser generators as Pauli labels.
    pub fn x_stabilizers(&self) -> Vec<PauliLabel> {
        self.x_stabilizer_span
            .generator()
            .rows()
            .map(|r| PauliLabel::x_only(*r))
            .collect()
    }

    /// Z-type stabiliser generators as Pauli labels.
    pub fn z_stabilizers(&self) -> Vec<PauliLabel> {
        self.z_stabilizer_span
            .generator()
            .rows()
            .map(|r| PauliLabel::z_only(*r))
            .collect()
    }
}

/// Rows of `target`'s canonical generator that extend the span of `base`
/// to all of `target`, in generator order.
fn completing_rows(base: &ClassicalCode, target: &ClassicalCode) -> Vec<BitVector> {
    let n = target.length();
    let mut rows: Vec<BitVector> = base.generator().rows().cloned().collect();
    let mut out = Vec::new();
    let mut rank = ClassicalCode::from_generators(n, &rows).dim();
    for cand in target.generator().rows() {
        rows.push(*cand);
        let new_rank = ClassicalCode::from_generators(n, &rows).dim();
        if new_rank > rank {
            rank = new_rank;
            out.push(*cand);
        } else {
            rows.pop();
        }
    }
    out
}

fn pairing_matrix(lx: &[BitVector], lz: &[BitVector]) -> Gf2Matrix {
    let k = lx.len();
    let mut p = Gf2Matrix::zeros(k, k);
    for (i, x) in lx.iter().enumerate() {
        for (j, z) in lz.iter().enumerate() {
            if x.dot(z) {
                p.set(i + 1, j + 1, true);
            }
        }
    }
    p
}

/// Builds a CSS code from a classical pair. Logical X representatives are
/// the canonical rows of `C_Z` completing `dual(C_X)`; the Z side is
/// completed the same way and then row-reduced against the pairing so that
/// the pairing matrix is the identity. The construction is deterministic.
pub fn css_from_pair(c_x: &ClassicalCode, c_z: &ClassicalCode) -> Result<CssCode, CssError> {
    assert_eq!(c_x.length(), c_z.length(), "length mismatch");
    let n = c_x.length();
    let x_stab = dual_code(c_x);
    let z_stab = dual_code(c_z);
    for row in x_stab.generator().rows() {
        if !c_z.contains(row) {
            return Err(CssError::CssViolation { witness: *row });
        }
    }
    let k = c_x.dim() - z_stab.dim();
    debug_assert_eq!(k, c_z.dim() - x_stab.dim());

    let logical_x = completing_rows(&x_stab, c_z);
    let lz_raw = completing_rows(&z_stab, c_x);
    debug_assert_eq!(logical_x.len(), k);
    debug_assert_eq!(lz_raw.len(), k);

    let logical_z = if k == 0 {
        Vec::new()
    } else {
        let p = pairing_matrix(&logical_x, &lz_raw);
        let a = p
            .inverse()
            .expect("logical pairing is nondegenerate")
            .transpose();
        let raw = Gf2Matrix::from_rows(lz_raw, n);
        a.mul(&raw).rows().cloned().collect()
    };
    debug_assert_eq!(
        pairing_matrix(&logical_x, &logical_z),
        Gf2Matrix::identity(k)
    );

    Ok(CssCode {
        n,
        c_x: c_x.clone(),
        c_z: c_z.clone(),
        k,
        x_stabilizer_span: x_stab,
        z_stabilizer_span: z_stab,
        logical_x,
        logical_z,
    })
}

/// The `[[2^k - 1, k, 2]]` punctured hypercube code: `C_X = RM_*(k-1, k)`,
/// `C_Z = RM*(1, k)`, qubits indexed by the nonzero points of `F_2^k` in
/// numeral order.
///
/// Logical representatives are the geometric ones: `X_i` is the half-cube
/// `x_i = 1` and `Z_i` the edge along direction `i` at the all-ones
/// vertex. These pair to the identity exactly and make permutation-induced
/// logical actions come out as literal transvection matrices, which the
/// certificate relies on.
pub fn hypercube_code(k: usize) -> CssCode {
    assert!(k >= 2, "hypercube codes need k >= 2");
    let c_x = rm_code(k as i64 - 1, k, RmVariant::Shortened);
    let c_z = rm_code(1, k, RmVariant::Punctured);
    let mut code = css_from_pair(&c_x, &c_z).expect("family satisfies the CSS condition");

    let logical_x: Vec<BitVector> = (1..=k)
        .map(|i| subcube_indicator(&[(i, true)], k, true))
        .collect();
    let logical_z: Vec<BitVector> = (1..=k)
        .map(|i| {
            let pins: Vec<(usize, bool)> = (1..=k).filter(|&l| l != i).map(|l| (l, true)).collect();
            subcube_indicator(&pins, k, true)
        })
        .collect();
    for x in &logical_x {
        debug_assert!(code.c_z.contains(x));
    }
    for z in &logical_z {
        debug_assert!(code.c_x.contains(z));
    }
    debug_assert_eq!(
        pairing_matrix(&logical_x, &logical_z),
        Gf2Matrix::identity(k)
    );
    code.logical_x = logical_x;
    code.logical_z = logical_z;
    code
}

/// `(d_x, d_z, d)`: coset minimum weights `min |C_X \ dual(C_Z)|`,
/// `min |C_Z \ dual(C_X)|`, and their minimum.
pub fn css_distance(code: &CssCode) -> Result<(usize, usize, usize), Gf2Error> {
    let d_x = min_weight(&code.c_x, Some(&code.z_stabilizer_span))?;
    let d_z = min_weight(&code.c_z, Some(&code.x_stabilizer_span))?;
    Ok((d_x, d_z, d_x.min(d_z)))
}

/// The permutation of the nonzero points of `F_2^k` induced by `v -> A v`,
/// with points numbered by their numerals.
pub fn geometric_automorphism(a: &GlElement, k: usize) -> Permutation {
    assert_eq!(a.dim(), k, "dimension mismatch");
    let n = (1usize << k) - 1;
    let images = (1..=n)
        .map(|numeral| a.apply(&BitVector::from_word(k, numeral as u64)).numeral() as usize)
        .collect();
    Permutation::from_images(images).expect("invertible matrices permute the points")
}

/// If `sigma` preserves both stabiliser spans, the `k x k` matrix of the
/// induced action on logical X classes (column `i` holds the coordinates
/// of the image of `logical_x[i]`); a rejection naming the violated span
/// otherwise. The induced Z-side action always equals the inverse
/// transpose, which is asserted.
pub fn permutation_logical_action(
    code: &CssCode,
    sigma: &Permutation,
) -> Result<GlElement, CssError> {
    if sigma.degree() != code.n {
        return Err(CssError::DegreeMismatch {
            degree: sigma.degree(),
            n: code.n,
        });
    }
    for row in code.x_stabilizer_span.generator().rows() {
        let image = sigma.act_on_bitvector(row).expect("degree checked");
        if !code.x_stabilizer_span.contains(&image) {
            return Err(CssError::StabilizerNotPreserved {
                space: PauliKind::X,
                witness: *row,
            });
        }
    }
    for row in code.z_stabilizer_span.generator().rows() {
        let image = sigma.act_on_bitvector(row).expect("degree checked");
        if !code.z_stabilizer_span.contains(&image) {
            return Err(CssError::StabilizerNotPreserved {
                space: PauliKind::Z,
                witness: *row,
            });
        }
    }
    let k = code.k;
    // Quotient coordinates read off via the dual pairing: the class of
    // v in C_Z has i-th coordinate v . logical_z[i].
    let mut m = Gf2Matrix::zeros(k, k);
    for (i, x) in code.logical_x.iter().enumerate() {
        let image = sigma.act_on_bitvector(x).expect("degree checked");
        debug_assert!(code.c_z.contains(&image));
        for (j, z) in code.logical_z.iter().enumerate() {
            if image.dot(z) {
                m.set(j + 1, i + 1, true);
            }
        }
    }
    let action = GlElement::from_matrix(m);
    // Z-side consistency
    let mut nz = Gf2Matrix::zeros(k, k);
    for (i, z) in code.logical_z.iter().enumerate() {
        let image = sigma.act_on_bitvector(z).expect("degree checked");
        for (j, x) in code.logical_x.iter().enumerate() {
            if image.dot(x) {
                nz.set(j + 1, i + 1, true);
            }
        }
    }
    assert_eq!(
        GlElement::from_matrix(nz),
        dual_element(&action),
        "Z-side action must be the inverse transpose of the X-side action"
    );
    Ok(action)
}

/// Which of the two candidate point actions realises a given logical CNOT
/// circuit by permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeometricConvention {
    /// `sigma_g` acts on points as `v -> g v`.
    Direct,
    /// `sigma_g` acts on points as `v -> g^{-T} v`.
    InverseTranspose,
}

impl GeometricConvention {
    pub fn point_action(&self, g: &GlElement) -> GlElement {
        match self {
            GeometricConvention::Direct => g.clone(),
            GeometricConvention::InverseTranspose => dual_element(g),
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            GeometricConvention::Direct => "sigma_g permutes points by v -> g v",
            GeometricConvention::InverseTranspose => "sigma_g permutes points by v -> g^{-T} v",
        }
    }
}

/// Resolves the point-action convention against the k = 3 face-reflection
/// anchor: the permutation swapping the qubit pairs (101, 111) and
/// (100, 110) must come out as the logical CNOT with control 2 and
/// target 1. The result is frozen for the process lifetime.
pub fn geometric_convention() -> GeometricConvention {
    static CONVENTION: OnceLock<GeometricConvention> = OnceLock::new();
    *CONVENTION.get_or_init(|| {
        let code = hypercube_code(3);
        let g = crate::gl::transvection(1, 2, 3); // CNOT with control 2, target 1
        for convention in [
            GeometricConvention::InverseTranspose,
            GeometricConvention::Direct,
        ] {
            let sigma = geometric_automorphism(&convention.point_action(&g), 3);
            if let Ok(action) = permutation_logical_action(&code, &sigma) {
                if action == g {
                    return convention;
                }
            }
        }
        panic!("neither point-action convention reproduces the face-reflection anchor");
    })
}

/// One certified generator of the phantom certificate.
#[derive(Clone, Debug)]
pub struct CertificateEntry {
    pub transvection: (usize, usize),
    pub permutation: Permutation,
    pub action: GlElement,
    pub verified: bool,
}

/// A phantom certificate: for every elementary transvection `g` of
/// `GL_k(F_2)` a physical permutation whose induced logical action equals
/// `g`. Since the transvections generate all CNOT circuits, this certifies
/// that the map from permutation automorphisms onto logical CNOT circuits
/// is surjective.
#[derive(Clone, Debug)]
pub struct PhantomCertificate {
    pub k: usize,
    pub convention: String,
    pub entries: Vec<CertificateEntry>,
}

impl PhantomCertificate {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.verified)
    }
}

/// Certifies the phantom property of a punctured hypercube code by
/// exhibiting, for each of the `k(k-1)` elementary transvections, the
/// geometric automorphism realising it and checking the induced logical
/// action at the symplectic level.
pub fn phantom_certificate(code: &CssCode, k: usize) -> Result<PhantomCertificate, CssError> {
    assert_eq!(
        code.n,
        (1 << k) - 1,
        "qubits must be the nonzero points of F_2^k"
    );
    assert_eq!(code.k, k, "logical count mismatch");
    let convention = geometric_convention();
    let mut entries = Vec::new();
    for g in all_transvections(k) {
        let (i, j) = transvection_indices(&g, k);
        let sigma = geometric_automorphism(&convention.point_action(&g), k);
        let action = permutation_logical_action(code, &sigma)?;
        let verified = action == g;
        entries.push(CertificateEntry {
            transvection: (i, j),
            permutation: sigma,
            action,
            verified,
        });
        if !verified {
            return Err(CssError::CertificationFailure { i, j });
        }
    }
    Ok(PhantomCertificate {
        k,
        convention: convention.describe().to_owned(),
        entries,
    })
}

fn transvection_indices(g: &GlElement, k: usize) -> (usize, usize) {
    for i in 1..=k {
        for j in 1..=k {
            if i != j && g.matrix().get(i, j) {
                return (i, j);
            }
        }
    }
    panic!("not a transvection");
}

/// Scans ordered pairs from a list of classical codes, returning every
/// valid CSS code together with its distance triple.
pub fn css_pair_scan(codes: &[ClassicalCode]) -> Vec<(CssCode, (usize, usize, usize))> {
    let mut out = Vec::new();
    for cx in codes {
        for cz in codes {
            if let Ok(code) = css_from_pair(cx, cz) {
                if code.logical_count() == 0 {
                    continue;
                }
                if let Ok(d) = css_distance(&code) {
                    out.push((code, d));
                }
            }
        }
    }
    out
}

/// One step of the `[[8, 4, r, d >= 2]]` impossibility argument.
#[derive(Clone, Debug)]
pub enum NogoCase {
    /// `k + r` exceeds the subsystem Singleton bound `n - 2d + 2`.
    SingletonViolation {
        r: usize,
        k_plus_r: usize,
        bound: usize,
    },
    /// `dim Gamma = 4 + r` cannot fit inside `Gamma_X + Gamma_Z` when the
    /// projections are forced into dimensions <= 1.
    ProjectionContradiction {
        r: usize,
        gamma_dim: usize,
        max_projection_sum: usize,
    },
}

impl fmt::Display for NogoCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NogoCase::SingletonViolation { r, k_plus_r, bound } => write!(
                f,
                "r = {r}: subsystem Singleton violation, k + r = {k_plus_r} > {bound} = n - 2d + 2"
            ),
            NogoCase::ProjectionContradiction { r, gamma_dim, max_projection_sum } => write!(
                f,
                "r = {r}: contradiction {gamma_dim} = dim Gamma <= dim Gamma_X + dim Gamma_Z <= {max_projection_sum}"
            ),
        }
    }
}

/// Impossibility report for Pauli stabiliser subsystem phantom codes of
/// type `[[8, 4, r, d >= 2]]`, any number of gauge qubits.
#[derive(Clone, Debug)]
pub struct NogoReport {
    /// Dimensions of the alternating-group-invariant codes of length 8.
    pub invariant_dims: Vec<usize>,
    pub cases: Vec<NogoCase>,
}

impl NogoReport {
    pub fn case(&self, r: usize) -> &NogoCase {
        &self.cases[r]
    }
}

/// Runs the case analysis excluding every `[[8, 4, r, d >= 2]]` Pauli
/// stabiliser subsystem phantom code. For `r >= 3` the subsystem Singleton
/// bound already fails; for `r <= 2` the projections of the gauge subspace
/// must be invariant codes of the alternating group, whose dimensions are
/// computed here by enumeration, and only dimensions 0 and 1 fit below
/// `dim Gamma`, forcing `4 + r <= 2`.
pub fn stabilizer_nogo_8_4() -> NogoReport {
    let (n, k, d) = (8usize, 4usize, 2usize);
    let a8_gens: Vec<Permutation> = (3..=8)
        .map(|i| Permutation::from_cycles(&format!("(1 2 {i})"), 8).expect("valid cycles"))
        .collect();
    let invariant = invariant_codes(n, &a8_gens);
    let invariant_dims: Vec<usize> = invariant.iter().map(ClassicalCode::dim).collect();

    let singleton_bound = n - 2 * d + 2;
    let cases = (0..=4)
        .map(|r| {
            if k + r > singleton_bound {
                NogoCase::SingletonViolation {
                    r,
                    k_plus_r: k + r,
                    bound: singleton_bound,
                }
            } else {
                let gamma_dim = n - k + r; // 4 + r
                let max_projection_sum: usize = {
                    let feasible = invariant_dims
                        .iter()
                        .filter(|&&dim| dim <= gamma_dim)
                        .max()
                        .copied()
                        .unwrap_or(0);
                    2 * feasible
                };
                assert!(gamma_dim > max_projection_sum, "no-go argument must close");
                NogoCase::ProjectionContradiction {
                    r,
                    gamma_dim,
                    max_projection_sum,
                }
            }
        })
        .collect();

    NogoReport {
        invariant_dims,
        cases,
    }
}

/// Serialized form of a CSS code, with bit strings in the ASCII convention
/// (leftmost character is bit 1).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CssCodeDocument {
    pub n: usize,
    pub k: usize,
    pub stabilizer_x: Vec<String>,
    pub stabilizer_z: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub convention: String,
    pub generators: Vec<CertificateEntryDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateEntryDocument {
    pub transvection: [usize; 2],
    pub physical_permutation: String,
    pub verified: bool,
}

impl CssCodeDocument {
    pub fn from_code(code: &CssCode, certificate: Option<&PhantomCertificate>) -> Self {
        CssCodeDocument {
            n: code.length(),
            k: code.logical_count(),
            stabilizer_x: code
                .x_stabilizer_span
                .generator()
                .rows()
                .map(|r| r.to_string())
                .collect(),
            stabilizer_z: code
                .z_stabilizer_span
                .generator()
                .rows()
                .map(|r| r.to_string())
                .collect(),
            logical_x: code.logical_x.iter().map(|r| r.to_string()).collect(),
            logical_z: code.logical_z.iter().map(|r| r.to_string()).collect(),
            certificate: certificate.map(|cert| CertificateDocument {
                convention: cert.convention.clone(),
                generators: cert
                    .entries
                    .iter()
                    .map(|e| CertificateEntryDocument {
                        transvection: [e.transvection.0, e.transvection.1],
                        physical_permutation: e.permutation.to_string(),
                        verified: e.verified,
                    })
                    .collect(),
            }),
        }
    }

    /// Reassembles the canonical CSS code: `C_Z` is spanned by the X-type
    /// operators (stabilisers plus logicals) and `C_X` by the Z-type ones.
    /// The documented logical representatives are validated and installed.
    pub fn to_code(&self) -> Result<CssCode, CssError> {
        let parse = |rows: &[String]| -> Result<Vec<BitVector>, CssError> {
            rows.iter()
                .map(|s| {
                    s.parse::<BitVector>()
                        .map_err(|e| CssError::BadDocument(e.to_string()))
                        .and_then(|v| {
                            if v.len() == self.n {
                                Ok(v)
                            } else {
                                Err(CssError::BadDocument(format!(
                                    "row {s} has the wrong length"
                                )))
                            }
                        })
                })
                .collect()
        };
        let stab_x = parse(&self.stabilizer_x)?;
        let stab_z = parse(&self.stabilizer_z)?;
        let logical_x = parse(&self.logical_x)?;
        let logical_z = parse(&self.logical_z)?;
        let mut cz_rows = stab_x.clone();
        cz_rows.extend(logical_x.iter().copied());
        let mut cx_rows = stab_z.clone();
        cx_rows.extend(logical_z.iter().copied());
        let c_z = ClassicalCode::from_generators(self.n, &cz_rows);
        let c_x = ClassicalCode::from_generators(self.n, &cx_rows);
        let mut code = css_from_pair(&c_x, &c_z)?;
        if code.logical_count() != self.k {
            return Err(CssError::BadDocument(format!(
                "document claims k = {} but the spans give k = {}",
                self.k,
                code.logical_count()
            )));
        }
        if logical_x.len() != self.k || logical_z.len() != self.k {
            return Err(CssError::BadDocument(
                "logical representative count != k".into(),
            ));
        }
        for x in &logical_x {
            if !c_z.contains(x) {
                return Err(CssError::BadDocument(format!(
                    "logical X row {x} is not in C_Z"
                )));
            }
        }
        for z in &logical_z {
            if !c_x.contains(z) {
                return Err(CssError::BadDocument(format!(
                    "logical Z row {z} is not in C_X"
                )));
            }
        }
        if pairing_matrix(&logical_x, &logical_z) != Gf2Matrix::identity(self.k) {
            return Err(CssError::BadDocument(
                "logical pairing is not the identity".into(),
            ));
        }
        code.logical_x = logical_x;
        code.logical_z = logical_z;
        Ok(code)
    }
}

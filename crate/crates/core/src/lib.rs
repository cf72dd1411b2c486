//! Construction and verification of binary phantom codes: codes in which
//! every in-block logical CNOT circuit is implemented by a permutation of
//! the physical qubits.
//!
//! The crate provides exact GF(2) linear algebra, enumerated permutation
//! and matrix groups, the projective geometry PG(3,2) with its line
//! tables, Reed-Muller codes and the invariant-code classifier, CSS codes
//! with permutation-induced logical actions and phantom certificates, a
//! dense state-vector layer for codes on up to 12 qubits, and the
//! exceptional ((8,16,2)) code built on PG(3,2).
//!
//! ```
//! use phantom_core::{hypercube_code, phantom_certificate, css_distance};
//!
//! // the [[7, 3, 2]] punctured hypercube code
//! let code = hypercube_code(3);
//! assert_eq!((code.length(), code.logical_count()), (7, 3));
//! assert_eq!(css_distance(&code).unwrap().2, 2);
//!
//! // every logical CNOT circuit is realised by a qubit permutation
//! let cert = phantom_certificate(&code, 3).unwrap();
//! assert!(cert.all_verified());
//! assert_eq!(cert.entries.len(), 6);
//! ```

pub mod css;
pub mod gf2;
pub mod gl;
pub mod perm;
pub mod pg32;
pub mod pg_code;
pub mod report;
pub mod rm;
pub mod statevector;
pub mod verify;

pub use css::{
    css_distance, css_from_pair, geometric_automorphism, hypercube_code,
    permutation_logical_action, phantom_certificate, stabilizer_nogo_8_4, CssCode, CssCodeDocument,
    CssError, PauliLabel, PhantomCertificate,
};
pub use gf2::{dual_code, min_weight, rref, BitVector, ClassicalCode, Gf2Error, Gf2Matrix};
pub use gl::{
    cnot_circuit_unitary, dual_element, gl_order, phi, tau_c, transvection, CnotUnitary, GlElement,
    GlGroup, TransvectionWord,
};
pub use perm::{
    lagrange_embedding_obstruction, orbit_and_stabilizer, PermError, PermGroup, Permutation,
};
pub use pg32::{Bipartition, LineTable, PgGeometry, ProjLine, ProjPlane, ProjPoint, Subspace};
pub use pg_code::{
    build_pg_code, stabilizer_characterization, verify_phantom, verify_s8_and_uc, verify_t8,
    PgCode, PgError, StabReport, T8Report, UcReport,
};
pub use report::{Check, CheckStatus, VerificationReport};
pub use rm::{
    invariant_codes, rm_code, subcube_indicator, verify_rm_duality, MonomialBasis, RmVariant,
};
pub use statevector::{
    apply_pauli, apply_permutation, collective_casimir_apply, css_codewords, knill_laflamme_check,
    CodeSpace, IntState, KlReport, StateError, StateVector,
};

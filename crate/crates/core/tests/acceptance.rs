//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; every tolerance is pinned in the assertions.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::Instant;

use phantom_core::css::{css_pair_scan, CssCode};
use phantom_core::gf2::{
    min_weight_of_distribution, weight_distribution, weight_distribution_via_dual,
};
use phantom_core::gl::{
    all_transvections, gl_order, phi, phi_generators, presentation_relations_hold, tau_c,
    transvection, GlElement, GlGroup,
};
use phantom_core::perm::{lagrange_embedding_obstruction, orbit_and_stabilizer};
use phantom_core::pg32::{all_points, verify_tables, Bipartition, LineTable, PgGeometry};
use phantom_core::pg_code::{
    adjacent_transposition_residual, build_pg_code, pg_knill_laflamme, stabilizer_characterization,
    verify_phantom, verify_s8_and_uc, verify_t8, z1z2_witnesses,
};
use phantom_core::rm::{rm_code, rm_parameters, verify_rm_duality, RmVariant};
use phantom_core::statevector::{apply_permutation, css_codewords, knill_laflamme_check};
use phantom_core::{
    css_distance, geometric_automorphism, hypercube_code, invariant_codes,
    permutation_logical_action, phantom_certificate, stabilizer_nogo_8_4, BitVector, ClassicalCode,
    PermGroup, Permutation,
};

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    match &outcome {
        Ok(()) => println!("[PASS] {name}"),
        Err(_) => println!("[FAIL] {name}"),
    }
    if let Err(e) = outcome {
        resume_unwind(e);
    }
}

#[test]
fn criterion_01_group_closure() {
    criterion(
        "01 group closure: phi generators close to order 20160",
        || {
            let start = Instant::now();
            let group = PermGroup::closure(phi_generators().to_vec()).unwrap();
            assert_eq!(group.order() as u128, gl_order(4));
            assert_eq!(group.order(), 20160);
            assert!(
                start.elapsed().as_secs() < 10,
                "closure took {:?}",
                start.elapsed()
            );
        },
    );
}

#[test]
fn criterion_02_presentation_relations() {
    criterion(
        "02 presentation: transvection relations hold for the phi images",
        || {
            assert!(presentation_relations_hold(
                4,
                |i, j| phi(&transvection(i, j, 4)),
                Permutation::identity(8),
                |a, b| a == b,
            ));
            assert!(presentation_relations_hold(
                4,
                |i, j| transvection(i, j, 4),
                GlElement::identity(4),
                |a, b| a == b,
            ));
        },
    );
}

#[test]
fn criterion_03_stabilizer_orders() {
    criterion(
        "03 stabiliser orders: Stab(l0) and Stab(w0) both have order 576",
        || {
            let geo = PgGeometry::get();
            let gl4_gens = all_transvections(4);
            let (orbit, stab) =
                orbit_and_stabilizer(gl_order(4) as usize, &gl4_gens, *geo.line(1), |g, line| {
                    *geo.apply_to_line(g, line)
                });
            assert_eq!((orbit.len(), stab), (35, 576));

            let a8 = PermGroup::closure(phi_generators().to_vec()).unwrap();
            let w0 = Bipartition::from_member("10101010".parse().unwrap());
            let (orbit, stab) =
                orbit_and_stabilizer(a8.order(), a8.generators(), w0, |g, w| w.permute(g));
            assert_eq!((orbit.len(), stab), (35, 576));
        },
    );
}

#[test]
fn criterion_04_table_reproduction() {
    criterion(
        "04 table reproduction: all 35 + 15 fixture rows and the b-duality",
        || {
            let report = verify_tables(LineTable::embedded());
            assert!(report.is_clean(), "mismatches: {:?}", report.mismatches);
            let geo = PgGeometry::get();
            let tau = tau_c();
            for line in geo.all_lines() {
                let b = geo.line_representative(line);
                let dual_b = geo.line_representative(geo.dual_line(line));
                assert_eq!(
                    tau.act_on_bitvector(&b).unwrap(),
                    dual_b,
                    "line {}",
                    line.id()
                );
            }
            // the 35 classes partition the 70 weight-4 strings
            let classes: std::collections::HashSet<BitVector> = geo
                .all_lines()
                .iter()
                .flat_map(|l| {
                    let b = geo.line_representative(l);
                    [b, b.complement()]
                })
                .collect();
            assert_eq!(classes.len(), 70);
        },
    );
}

#[test]
fn criterion_05_pg_code_grams_and_distance() {
    criterion(
        "05 PG code: grams, weight-1 sweep, Z1Z2 witnesses, distance 2",
        || {
            let code = build_pg_code().unwrap();
            assert!(code.logical_basis().is_orthonormal(1e-9));
            let points = all_points();
            for x in &points {
                for y in &points {
                    assert_eq!(code.star_gram(x, y), if x == y { 7 } else { 1 });
                }
                assert_eq!(code.star_uniform_gram(x), 7);
            }
            assert_eq!(code.uniform_norm(), 35);

            let kl = pg_knill_laflamme(&code, 2);
            let weight1: Vec<_> = kl
                .entries
                .iter()
                .filter(|e| e.label.weight() == 1)
                .collect();
            assert_eq!(weight1.len(), 24);
            for e in &weight1 {
                let c = e.scalar.expect("weight-1 errors are scalar");
                assert!(c.norm() <= 1e-9);
            }
            let (zero_witness, uniform_witness) = z1z2_witnesses(&code);
            assert_eq!(zero_witness, 1);
            // exact integers: <t|Z1Z2|t> = -5, and -5/35 = -1/7 within 1e-12
            assert_eq!(uniform_witness, -5);
            assert!((uniform_witness as f64 / 35.0 - (-1.0 / 7.0)).abs() <= 1e-12);
            assert_eq!(kl.distance(), Some(2));
        },
    );
}

#[test]
fn criterion_06_pg_phantom_certificate() {
    criterion(
        "06 phantom certificate: six generators, phase +1, CNOT matrices",
        || {
            let code = build_pg_code().unwrap();
            let checks = verify_phantom(&code).unwrap();
            assert_eq!(checks.len(), 6);
            for check in &checks {
                assert!(check.lines_exact);
                assert!(check.max_state_error <= 1e-12, "g{:?}", check.transvection);
                assert!(check.max_matrix_error <= 1e-12, "g{:?}", check.transvection);
            }
        },
    );
}

#[test]
fn criterion_07_uc() {
    criterion(
        "07 U_c: reference entries, involution, multiplicities (9,7), trace 1",
        || {
            let code = build_pg_code().unwrap();
            let uc = verify_s8_and_uc(&code);
            assert!(uc.max_code_residual <= 1e-9);
            assert!(uc.max_entry_error <= 1e-9);
            assert!(uc.involution_error <= 1e-9);
            assert_eq!((uc.plus_multiplicity, uc.minus_multiplicity), (9, 7));
            assert!((uc.trace_nonzero - 1.0).abs() <= 1e-9);
        },
    );
}

#[test]
fn criterion_08_t8() {
    criterion(
        "08 T^x8: logical diag(1, -1 x15); S^x8 logical identity",
        || {
            let code = build_pg_code().unwrap();
            let t8 = verify_t8(&code);
            assert!(t8.max_code_residual <= 1e-9);
            assert!(t8.max_diag_error <= 1e-9);
            assert!(t8.s8_identity_error <= 1e-9);
        },
    );
}

#[test]
fn criterion_09_stabilizer_characterization() {
    criterion(
        "09 stabiliser characterization: dimension 16, hook dims",
        || {
            let code = build_pg_code().unwrap();
            let report = stabilizer_characterization(&code);
            assert_eq!(report.intersection_dim, 16);
            assert!(report.code_membership_residual <= 1e-9);
            assert!(report.intersection_residual <= 1e-9);
            assert_eq!(report.hook_dims, [1, 7, 20, 28, 14]);
        },
    );
}

#[test]
fn criterion_10_s8_invariance() {
    criterion(
        "10 S8 invariance: the seven adjacent transpositions preserve the code",
        || {
            let code = build_pg_code().unwrap();
            assert!(adjacent_transposition_residual(&code) <= 1e-9);
        },
    );
}

#[test]
fn criterion_11_hypercube_family() {
    criterion(
        "11 hypercube family: printed operators, distances, certificates",
        || {
            let code = hypercube_code(3);
            // printed stabilisers and logicals
            let faces: Vec<BitVector> = ["0001111", "0110011", "1010101"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect();
            assert_eq!(code.x_stabilizer_span(), &ClassicalCode::repetition(7));
            assert_eq!(
                code.z_stabilizer_span(),
                &ClassicalCode::from_generators(7, &faces)
            );
            assert_eq!(code.logical_x(), faces);
            let edges: Vec<BitVector> = ["0010001", "0000101", "0000011"]
                .iter()
                .map(|s| s.parse().unwrap())
                .collect();
            assert_eq!(code.logical_z(), edges);

            // the Z-side coset minimum over RM*(1,3) \ rep is 3 (punctured
            // first-order = Hamming [7,4,3]); the code distance is exactly 2
            assert_eq!(css_distance(&code).unwrap(), (2, 3, 2));
            assert_eq!(css_distance(&code).unwrap().2, 2);

            // face reflection implements CNOT(control 2, target 1) with the
            // printed operator mapping
            let sigma = Permutation::from_cycles("(4 6)(5 7)", 7).unwrap();
            assert_eq!(
                permutation_logical_action(&code, &sigma).unwrap(),
                transvection(1, 2, 3)
            );
            assert_eq!(
                sigma.act_on_bitvector(&code.logical_x()[1]).unwrap(),
                code.logical_x()[0].xor(&code.logical_x()[1])
            );
            assert_eq!(
                sigma.act_on_bitvector(&code.logical_z()[0]).unwrap(),
                code.logical_z()[0].xor(&code.logical_z()[1])
            );

            // certificates at k = 3, 4, 5 with image-group orders
            for (k, expect_order) in [(3usize, 168u128), (4, 20160), (5, 9_999_360)] {
                let code = hypercube_code(k);
                let cert = phantom_certificate(&code, k).unwrap();
                assert!(cert.all_verified());
                assert_eq!(cert.entries.len(), k * (k - 1));
                if k <= 4 {
                    let images: Vec<GlElement> =
                        cert.entries.iter().map(|e| e.action.clone()).collect();
                    assert_eq!(
                        GlGroup::closure(images).unwrap().order() as u128,
                        expect_order
                    );
                } else {
                    // order by formula; membership checks on the generators only
                    assert_eq!(gl_order(k as u32), expect_order);
                    for entry in &cert.entries {
                        assert!(all_transvections(k).contains(&entry.action));
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_12_classification() {
    criterion(
        "12 classification: GL3 and A8 invariant codes; unique CSS pairing",
        || {
            let gl3_gens: Vec<Permutation> = all_transvections(3)
                .iter()
                .map(|t| geometric_automorphism(t, 3))
                .collect();
            let gl3_codes = invariant_codes(7, &gl3_gens);
            assert_eq!(gl3_codes.len(), 6);
            for r in 0..3 {
                assert!(gl3_codes.contains(&rm_code(r, 3, RmVariant::Punctured)));
                assert!(gl3_codes.contains(&rm_code(r, 3, RmVariant::Shortened)));
            }

            let a8_gens: Vec<Permutation> = (3..=8)
                .map(|i| Permutation::from_cycles(&format!("(1 2 {i})"), 8).unwrap())
                .collect();
            let a8_codes = invariant_codes(8, &a8_gens);
            assert_eq!(
                a8_codes,
                vec![
                    ClassicalCode::zero(8),
                    ClassicalCode::repetition(8),
                    ClassicalCode::even_weight(8),
                    ClassicalCode::full(8),
                ]
            );

            let hypercube = hypercube_code(3);
            let hits: Vec<(CssCode, (usize, usize, usize))> = css_pair_scan(&gl3_codes)
                .into_iter()
                .filter(|(code, (_, _, d))| code.logical_count() == 3 && *d > 1)
                .collect();
            // unique up to the X/Z mirror, which is a CSS isomorphism
            assert_eq!(hits.len(), 2);
            for (code, _) in &hits {
                assert!(
                    (code.c_x() == hypercube.c_x() && code.c_z() == hypercube.c_z())
                        || (code.c_x() == hypercube.c_z() && code.c_z() == hypercube.c_x())
                );
            }
            assert!(hits
                .iter()
                .any(|(code, _)| code.c_x() == hypercube.c_x() && code.c_z() == hypercube.c_z()));
        },
    );
}

#[test]
fn criterion_13_nogo() {
    criterion(
        "13 no-go: projection contradictions, Singleton violations, mu obstructions",
        || {
            let report = stabilizer_nogo_8_4();
            assert_eq!(report.invariant_dims, vec![0, 1, 7, 8]);
            for r in 0..=2usize {
                match report.case(r) {
                    phantom_core::css::NogoCase::ProjectionContradiction {
                        gamma_dim,
                        max_projection_sum,
                        ..
                    } => {
                        assert_eq!(*gamma_dim, 4 + r);
                        assert_eq!(*max_projection_sum, 2);
                    }
                    other => panic!("expected a projection contradiction at r = {r}: {other:?}"),
                }
            }
            for r in 3..=4usize {
                match report.case(r) {
                    phantom_core::css::NogoCase::SingletonViolation {
                        k_plus_r, bound, ..
                    } => {
                        assert_eq!(*k_plus_r, 4 + r);
                        assert_eq!(*bound, 6);
                    }
                    other => panic!("expected a Singleton violation at r = {r}: {other:?}"),
                }
            }
            assert!(!lagrange_embedding_obstruction(168, 6));
            assert!(!lagrange_embedding_obstruction(20160, 7));
        },
    );
}

#[test]
fn criterion_14_rm_identities() {
    criterion(
        "14 RM identities: parameters, duality, inclusion chains for m <= 5",
        || {
            for m in 1..=5usize {
                for r in 0..m as i64 {
                    assert!(verify_rm_duality(r, m), "duality at r={r}, m={m}");
                    for variant in [RmVariant::Punctured, RmVariant::Shortened] {
                        let code = rm_code(r, m, variant);
                        let (n, k, d) = rm_parameters(r, m, variant);
                        assert_eq!(code.length(), n);
                        assert_eq!(code.dim(), k);
                        if k > 0 {
                            let dist = weight_distribution(&code)
                                .or_else(|_| weight_distribution_via_dual(&code))
                                .unwrap();
                            assert_eq!(
                                min_weight_of_distribution(&dist),
                                Some(d),
                                "{variant:?}({r},{m})"
                            );
                        }
                    }
                }
            }
            for m in 2..=5usize {
                for r in 0..m as i64 - 1 {
                    assert!(rm_code(r, m, RmVariant::Punctured).is_subcode_of(&rm_code(
                        r + 1,
                        m,
                        RmVariant::Punctured
                    )));
                    assert!(rm_code(r, m, RmVariant::Shortened).is_subcode_of(&rm_code(
                        r + 1,
                        m,
                        RmVariant::Shortened
                    )));
                }
                assert_eq!(
                    rm_code(m as i64 - 1, m, RmVariant::Punctured),
                    ClassicalCode::full((1 << m) - 1)
                );
                assert_eq!(
                    rm_code(m as i64 - 1, m, RmVariant::Shortened),
                    ClassicalCode::even_weight((1 << m) - 1)
                );
            }
        },
    );
}

// Cross-checks tying the symplectic and state-vector levels together; not
// numbered criteria but load-bearing for several of them.
#[test]
fn state_level_certificate_cross_check() {
    criterion(
        "xx hypercube state-level CNOT action with global phase +1",
        || {
            let code = hypercube_code(3);
            let space = css_codewords(&code).unwrap();
            let cert = phantom_certificate(&code, 3).unwrap();
            for entry in &cert.entries {
                let unitary = phantom_core::cnot_circuit_unitary(&entry.action, 3);
                for (pattern, codeword) in space.basis().iter().enumerate() {
                    let moved = apply_permutation(codeword, &entry.permutation).unwrap();
                    assert!(moved.distance_to(&space.basis()[unitary.image(pattern)]) < 1e-12);
                }
            }
            let kl = knill_laflamme_check(&space, 2);
            assert_eq!(kl.distance(), Some(2));
        },
    );
}

#[test]
fn pg_logical_matrices_equal_cnot_unitaries() {
    criterion(
        "xx PG logical matrices equal the CNOT-circuit unitaries",
        || {
            let code = build_pg_code().unwrap();
            for &(i, j) in phantom_core::gl::ADJACENT_4.iter() {
                let g = transvection(i, j, 4);
                let unitary = phantom_core::cnot_circuit_unitary(&g, 4);
                let sigma = phi(&g);
                for (col, state) in code.logical_basis().basis().iter().enumerate() {
                    let moved = apply_permutation(state, &sigma).unwrap();
                    for (row, bra) in code.logical_basis().basis().iter().enumerate() {
                        let entry = bra.inner(&moved);
                        let expect = unitary.entry(row, col);
                        assert!((entry.re - expect).abs() <= 1e-12 && entry.im.abs() <= 1e-12);
                    }
                }
            }
        },
    );
}

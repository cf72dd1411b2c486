//! Classical Reed-Muller codes via squarefree-monomial evaluation, their
//! punctured and shortened variants, the geometric subcube generators, and
//! the classifier for codes invariant under a permutation action.
//!
//! Evaluation points are enumerated lexicographically on `F_2^m` read as a
//! binary numeral with `x_1` the most significant coordinate; the origin
//! comes first and is the coordinate removed by puncturing.

use crate::gf2::{binomial, dual_code, BitVector, ClassicalCode};
use crate::perm::Permutation;

/// Which coordinate set a Reed-Muller code lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RmVariant {
    /// All `2^m` points of `F_2^m`.
    Full,
    /// The `2^m - 1` nonzero points (origin coordinate deleted).
    Punctured,
    /// Polynomials vanishing at the origin, then punctured.
    Shortened,
}

/// The ordered squarefree monomials in `m` variables together with the
/// fixed point enumeration used for evaluation vectors.
pub struct MonomialBasis {
    m: usize,
    /// Monomials as variable subsets, ordered by degree then by the subset
    /// read as a bitmask.
    monomials: Vec<Vec<usize>>,
}

impl MonomialBasis {
    pub fn new(m: usize) -> Self {
        assert!((1..=6).contains(&m), "m out of supported range");
        let mut monomials: Vec<Vec<usize>> = (0u32..1 << m)
            .map(|mask| (1..=m).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
            .collect();
        monomials.sort_by_key(|s| (s.len(), s.clone()));
        MonomialBasis { m, monomials }
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn monomials_of_degree_at_most(&self, r: i64) -> impl Iterator<Item = &Vec<usize>> {
        self.monomials.iter().filter(move |s| s.len() as i64 <= r)
    }

    /// Evaluation vector of the monomial over all `2^m` points (origin
    /// first), or over the nonzero points when punctured.
    pub fn evaluate(&self, monomial: &[usize], punctured: bool) -> BitVector {
        let m = self.m;
        let total = 1usize << m;
        let start = usize::from(punctured);
        let len = total - start;
        let mut v = BitVector::zero(len);
        for numeral in start..total {
            let point = BitVector::from_word(m, numeral as u64);
            if monomial.iter().all(|&i| point.get(i)) {
                v.set(numeral - start + 1, true);
            }
        }
        v
    }
}

/// The Reed-Muller code `RM(r, m)`, its punctured variant `RM*(r, m)`, or
/// its shortened variant `RM_*(r, m)`, in canonical form.
///
/// Ranges: `-1 <= r <= m` for the full code, `0 <= r <= m - 1` otherwise.
pub fn rm_code(r: i64, m: usize, variant: RmVariant) -> ClassicalCode {
    let basis = MonomialBasis::new(m);
    match variant {
        RmVariant::Full => {
            assert!((-1..=m as i64).contains(&r), "r out of range for RM(r, m)");
            let rows: Vec<BitVector> = basis
                .monomials_of_degree_at_most(r)
                .map(|s| basis.evaluate(s, false))
                .collect();
            ClassicalCode::from_generators(1 << m, &rows)
        }
        RmVariant::Punctured => {
            assert!((0..m as i64).contains(&r), "r out of range for RM*(r, m)");
            let rows: Vec<BitVector> = basis
                .monomials_of_degree_at_most(r)
                .map(|s| basis.evaluate(s, true))
                .collect();
            ClassicalCode::from_generators((1 << m) - 1, &rows)
        }
        RmVariant::Shortened => {
            assert!((0..m as i64).contains(&r), "r out of range for RM_*(r, m)");
            let rows: Vec<BitVector> = basis
                .monomials_of_degree_at_most(r)
                .filter(|s| !s.is_empty())
                .map(|s| basis.evaluate(s, true))
                .collect();
            ClassicalCode::from_generators((1 << m) - 1, &rows)
        }
    }
}

/// Expected `[n, k, d]` of a Reed-Muller code.
pub fn rm_parameters(r: i64, m: usize, variant: RmVariant) -> (usize, usize, usize) {
    let dim_full = |r: i64| -> usize {
        (0..=r.max(-1))
            .map(|s| binomial(m, s as usize) as usize)
            .sum()
    };
    match variant {
        RmVariant::Full => ((1 << m), dim_full(r), 1 << (m as i64 - r).max(0)),
        RmVariant::Punctured => ((1 << m) - 1, dim_full(r), (1 << (m as i64 - r)) - 1),
        RmVariant::Shortened => {
            let k = (1..=r.max(0))
                .map(|s| binomial(m, s as usize) as usize)
                .sum();
            ((1 << m) - 1, k, 1 << (m as i64 - r))
        }
    }
}

/// Evaluation vector of the subcube indicator
/// `chi_{S,b}(x) = prod_{i in S} (1 + b_i + x_i)`, the characteristic
/// function of the coordinate-aligned affine subspace `{x : x_i = b_i}`.
/// `assignments` pairs each variable of `S` with its pinned bit.
pub fn subcube_indicator(assignments: &[(usize, bool)], m: usize, punctured: bool) -> BitVector {
    let total = 1usize << m;
    let start = usize::from(punctured);
    let mut v = BitVector::zero(total - start);
    for numeral in start..total {
        let point = BitVector::from_word(m, numeral as u64);
        if assignments.iter().all(|&(i, b)| point.get(i) == b) {
            v.set(numeral - start + 1, true);
        }
    }
    v
}

/// Checks the duality pair: the dual of `RM*(r, m)` is `RM_*(m-1-r, m)`
/// and symmetrically.
pub fn verify_rm_duality(r: i64, m: usize) -> bool {
    let rbar = m as i64 - 1 - r;
    dual_code(&rm_code(r, m, RmVariant::Punctured)) == rm_code(rbar, m, RmVariant::Shortened)
        && dual_code(&rm_code(r, m, RmVariant::Shortened)) == rm_code(rbar, m, RmVariant::Punctured)
}

/// The complete list of linear codes of length `n` invariant under every
/// generator, including the zero code, sorted by dimension then generator.
///
/// For each nonzero vector the span of its orbit is a cyclic invariant
/// submodule; every invariant code is a sum of such submodules, so closing
/// the deduplicated orbit spans under pairwise span sums yields all of
/// them.
pub fn invariant_codes(n: usize, action_generators: &[Permutation]) -> Vec<ClassicalCode> {
    assert!(n <= 15, "invariant-code enumeration is capped at n = 15");
    assert!(
        action_generators.iter().all(|g| g.degree() == n),
        "generator degree mismatch"
    );
    let mut codes: Vec<ClassicalCode> = vec![ClassicalCode::zero(n)];
    let mut seen: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
    seen.insert(Vec::new());

    let canon_key =
        |c: &ClassicalCode| -> Vec<u64> { c.generator().rows().map(BitVector::word).collect() };

    // orbit spans of all nonzero seeds, deduplicating whole orbits
    let mut visited = vec![false; 1 << n];
    for seed in 1u64..(1 << n) {
        if visited[seed as usize] {
            continue;
        }
        let mut orbit = vec![BitVector::from_word(n, seed)];
        visited[seed as usize] = true;
        let mut frontier = 0;
        while frontier < orbit.len() {
            for g in action_generators {
                let next = g
                    .act_on_bitvector(&orbit[frontier])
                    .expect("degree checked");
                if !visited[next.word() as usize] {
                    visited[next.word() as usize] = true;
                    orbit.push(next);
                }
            }
            frontier += 1;
        }
        let code = ClassicalCode::from_generators(n, &orbit);
        if seen.insert(canon_key(&code)) {
            codes.push(code);
        }
    }

    // close under pairwise span sums
    loop {
        let mut added = false;
        let snapshot = codes.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().skip(i + 1) {
                let mut rows: Vec<BitVector> = a.generator().rows().cloned().collect();
                rows.extend(b.generator().rows().cloned());
                let sum = ClassicalCode::from_generators(n, &rows);
                if seen.insert(canon_key(&sum)) {
                    codes.push(sum);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }

    codes.sort_by_key(|c| (c.dim(), canon_key(c)));
    codes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{
        min_weight, min_weight_of_distribution, weight_distribution, weight_distribution_via_dual,
    };
    use crate::gl::{all_transvections, GlElement};
    use crate::perm::Permutation;

    /// Coordinate permutation of the nonzero points induced by an
    /// invertible matrix; the test-side twin of the css module's
    /// geometric_automorphism, kept separate so the classifier tests do not
    /// depend on it.
    fn point_permutation(a: &GlElement, m: usize) -> Permutation {
        let n = (1 << m) - 1;
        let images = (1..=n)
            .map(|numeral| a.apply(&BitVector::from_word(m, numeral as u64)).numeral() as usize)
            .collect();
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn rm_anchor_codes() {
        assert_eq!(
            rm_code(0, 3, RmVariant::Punctured),
            ClassicalCode::repetition(7)
        );
        assert_eq!(
            rm_code(2, 3, RmVariant::Shortened),
            ClassicalCode::even_weight(7)
        );
        let hamming = rm_code(1, 3, RmVariant::Punctured);
        assert_eq!(hamming.dim(), 4);
        assert_eq!(min_weight(&hamming, None), Ok(3));
        assert_eq!(rm_code(0, 3, RmVariant::Shortened), ClassicalCode::zero(7));
        assert_eq!(rm_code(2, 3, RmVariant::Punctured), ClassicalCode::full(7));
        assert_eq!(rm_code(-1, 4, RmVariant::Full), ClassicalCode::zero(16));
    }

    #[test]
    fn rm_parameter_formulas_up_to_m5() {
        for m in 1..=5usize {
            for r in -1..=m as i64 {
                let (n, k, d) = rm_parameters(r, m, RmVariant::Full);
                let code = rm_code(r, m, RmVariant::Full);
                assert_eq!((code.length(), code.dim()), (n, k));
                if k > 0 {
                    assert_eq!(measured_distance(&code), d, "RM({r},{m})");
                }
            }
            for r in 0..m as i64 {
                for (variant, name) in [
                    (RmVariant::Punctured, "RM*"),
                    (RmVariant::Shortened, "RM_*"),
                ] {
                    let (n, k, d) = rm_parameters(r, m, variant);
                    let code = rm_code(r, m, variant);
                    assert_eq!((code.length(), code.dim()), (n, k), "{name}({r},{m})");
                    if k > 0 {
                        assert_eq!(measured_distance(&code), d, "{name}({r},{m})");
                    }
                }
            }
        }
    }

    /// Exhaustive when the dimension permits, MacWilliams from the dual
    /// otherwise.
    fn measured_distance(code: &ClassicalCode) -> usize {
        let dist = weight_distribution(code)
            .or_else(|_| weight_distribution_via_dual(code))
            .unwrap();
        min_weight_of_distribution(&dist).expect("nonzero code")
    }

    #[test]
    fn subcube_indicator_examples() {
        assert_eq!(subcube_indicator(&[], 3, false).to_string(), "11111111");
        let half = subcube_indicator(&[(1, true)], 3, false);
        assert_eq!(half.weight(), 4);
        // x_1 = 1 selects numerals 4..7
        assert_eq!(half.to_string(), "00001111");
        let vertex = subcube_indicator(&[(1, true), (2, true), (3, true)], 3, false);
        assert_eq!(vertex.weight(), 1);
        assert!(vertex.get(8));
        // punctured subcube through the origin loses one unit of weight
        let through_origin = subcube_indicator(&[(1, false)], 3, true);
        assert_eq!(through_origin.weight(), 3);
    }

    #[test]
    fn subcube_indicators_span_the_code() {
        // codimension-r subcubes generate RM(r, m)
        for m in 2..=4usize {
            for r in 1..m as i64 {
                let mut rows = Vec::new();
                let vars: Vec<usize> = (1..=m).collect();
                for mask in 0u32..1 << m {
                    let set: Vec<usize> = vars
                        .iter()
                        .copied()
                        .filter(|i| mask >> (i - 1) & 1 == 1)
                        .collect();
                    if set.len() as i64 != r {
                        continue;
                    }
                    for bits in 0u32..1 << set.len() {
                        let assignment: Vec<(usize, bool)> = set
                            .iter()
                            .enumerate()
                            .map(|(pos, &i)| (i, bits >> pos & 1 == 1))
                            .collect();
                        rows.push(subcube_indicator(&assignment, m, false));
                    }
                }
                let span = ClassicalCode::from_generators(1 << m, &rows);
                assert_eq!(span, rm_code(r, m, RmVariant::Full));
            }
        }
    }

    #[test]
    fn duality_pairs() {
        assert!(verify_rm_duality(0, 3));
        assert!(verify_rm_duality(1, 3));
        for m in 1..=5usize {
            for r in 0..m as i64 {
                assert!(verify_rm_duality(r, m), "duality failed at r={r}, m={m}");
            }
        }
    }

    #[test]
    fn inclusion_chains() {
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
    }

    #[test]
    fn punctured_splits_as_repetition_plus_shortened() {
        for m in 2..=5usize {
            for r in 0..m as i64 {
                let punct = rm_code(r, m, RmVariant::Punctured);
                let short = rm_code(r, m, RmVariant::Shortened);
                assert_eq!(punct.dim(), short.dim() + 1);
                assert!(short.is_subcode_of(&punct));
                let ones = BitVector::zero(punct.length()).complement();
                assert!(punct.contains(&ones));
                assert!(!short.contains(&ones));
            }
        }
    }

    #[test]
    fn invariant_codes_for_gl3_are_the_rm_family() {
        let gens: Vec<Permutation> = all_transvections(3)
            .iter()
            .map(|t| point_permutation(t, 3))
            .collect();
        let codes = invariant_codes(7, &gens);
        assert_eq!(codes.len(), 6);
        let dims: Vec<usize> = codes.iter().map(ClassicalCode::dim).collect();
        assert_eq!(dims, vec![0, 1, 3, 4, 6, 7]);
        let mut expected = Vec::new();
        for r in 0..3 {
            expected.push(rm_code(r, 3, RmVariant::Punctured));
            expected.push(rm_code(r, 3, RmVariant::Shortened));
        }
        for e in &expected {
            assert!(codes.contains(e), "missing RM code of dim {}", e.dim());
        }
    }

    #[test]
    fn invariant_codes_for_a8_are_the_elementary_four() {
        let gens: Vec<Permutation> = (3..=8)
            .map(|i| Permutation::from_cycles(&format!("(1 2 {i})"), 8).unwrap())
            .collect();
        let codes = invariant_codes(8, &gens);
        assert_eq!(codes.len(), 4);
        assert_eq!(codes[0], ClassicalCode::zero(8));
        assert_eq!(codes[1], ClassicalCode::repetition(8));
        assert_eq!(codes[2], ClassicalCode::even_weight(8));
        assert_eq!(codes[3], ClassicalCode::full(8));
    }

    #[test]
    fn invariant_codes_trivial_group() {
        let codes = invariant_codes(1, &[Permutation::identity(1)]);
        assert_eq!(codes.len(), 2);
        assert_eq!(codes[0], ClassicalCode::zero(1));
        assert_eq!(codes[1], ClassicalCode::full(1));
    }

    #[test]
    fn invariant_codes_are_invariant_and_dual_closed() {
        let gens: Vec<Permutation> = all_transvections(3)
            .iter()
            .map(|t| point_permutation(t, 3))
            .collect();
        let codes = invariant_codes(7, &gens);
        for code in &codes {
            for g in &gens {
                for row in code.generator().rows() {
                    assert!(code.contains(&g.act_on_bitvector(row).unwrap()));
                }
            }
            assert!(codes.contains(&dual_code(code)));
        }
    }

    // The m = 4 classification run (n = 15, all 32767 orbit spans) is kept
    // out of the default suite; run with --ignored to include it.
    #[test]
    #[ignore]
    fn invariant_codes_for_gl4_on_15_points() {
        let gens: Vec<Permutation> = all_transvections(4)
            .iter()
            .map(|t| point_permutation(t, 4))
            .collect();
        let codes = invariant_codes(15, &gens);
        assert_eq!(codes.len(), 8);
        for r in 0..4 {
            assert!(codes.contains(&rm_code(r, 4, RmVariant::Punctured)));
            assert!(codes.contains(&rm_code(r, 4, RmVariant::Shortened)));
        }
    }
}

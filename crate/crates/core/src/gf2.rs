//! Exact linear algebra over the two-element field.
//!
//! Bit strings follow the convention used throughout this crate: bit 1 is the
//! leftmost character of a string literal such as `"10101010"` and the most
//! significant position of the packed word. All indexing is 1-based.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Exhaustive enumeration cap for [`min_weight`]: 2^24 codewords.
pub const MIN_WEIGHT_DIM_CAP: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("code dimension {dim} exceeds the exhaustive enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("no codewords remain after exclusion")]
    EmptyDifference,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid bit string {0:?}: expected '0'/'1' characters, length 1..=64")]
    BadBitString(String),
}

/// A fixed-length binary vector, packed into a single machine word.
///
/// Lengths up to 64 are supported; every code in this crate has length at
/// most 32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    bits: u64,
}

impl BitVector {
    pub fn zero(len: usize) -> Self {
        assert!((1..=64).contains(&len), "length out of range");
        BitVector { len, bits: 0 }
    }

    /// Builds a vector from its packed word; bit 1 is the most significant
    /// of the `len`-bit window.
    pub fn from_word(len: usize, word: u64) -> Self {
        let mut v = Self::zero(len);
        v.bits = word & v.mask();
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    fn mask(&self) -> u64 {
        if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    /// Reads bit `i` (1-based, bit 1 leftmost).
    pub fn get(&self, i: usize) -> bool {
        assert!((1..=self.len).contains(&i), "bit index out of range");
        (self.bits >> (self.len - i)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!((1..=self.len).contains(&i), "bit index out of range");
        let bit = 1u64 << (self.len - i);
        if value {
            self.bits |= bit;
        } else {
            self.bits &= !bit;
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn complement(&self) -> Self {
        BitVector {
            len: self.len,
            bits: !self.bits & self.mask(),
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch");
        BitVector {
            len: self.len,
            bits: self.bits ^ other.bits,
        }
    }

    /// Standard bilinear form `sum_i u_i v_i` over F2.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// 1-based positions of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len).filter(|&i| self.get(i)).collect()
    }

    /// Interprets the vector as a binary numeral (bit 1 most significant).
    pub fn numeral(&self) -> u64 {
        self.bits
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s.len() > 64 {
            return Err(Gf2Error::BadBitString(s.to_owned()));
        }
        let mut v = BitVector::zero(s.len());
        for (idx, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(idx + 1, true),
                _ => return Err(Gf2Error::BadBitString(s.to_owned())),
            }
        }
        Ok(v)
    }
}

/// A binary matrix with one packed word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: Vec<BitVector>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: (0..rows).map(|_| BitVector::zero(cols)).collect(),
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 1..=n {
            m.rows[i - 1].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Gf2Matrix { rows, cols }
    }

    pub fn from_strings(rows: &[&str]) -> Self {
        let parsed: Vec<BitVector> = rows.iter().map(|s| s.parse().unwrap()).collect();
        let cols = parsed.first().map_or(1, BitVector::len);
        Self::from_rows(parsed, cols)
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i - 1]
    }

    pub fn rows(&self) -> impl Iterator<Item = &BitVector> {
        self.rows.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i - 1].set(j, value);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for i in 1..=self.rows.len() {
            for j in 1..=self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// Matrix product; `self.cols` must equal `other.rows`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows.len(), "inner dimension mismatch");
        let mut out = Self::zeros(self.rows.len(), other.cols);
        for i in 0..self.rows.len() {
            let mut acc = BitVector::zero(other.cols);
            for j in 1..=self.cols {
                if self.rows[i].get(j) {
                    acc = acc.xor(&other.rows[j - 1]);
                }
            }
            out.rows[i] = acc;
        }
        out
    }

    /// Matrix-vector product treating `v` as a column vector.
    pub fn mul_vector(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        let mut out = BitVector::zero(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i + 1, true);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).row_count()
    }

    /// Inverse of a square invertible matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows.len();
        assert_eq!(n, self.cols, "inverse of a non-square matrix");
        let mut work = self.rows.iter().map(BitVector::word).collect::<Vec<_>>();
        let mut inv = Gf2Matrix::identity(n)
            .rows
            .iter()
            .map(BitVector::word)
            .collect::<Vec<_>>();
        for col in 0..n {
            let bit = 1u64 << (n - 1 - col);
            let pivot = (col..n).find(|&r| work[r] & bit != 0)?;
            work.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && work[r] & bit != 0 {
                    work[r] ^= work[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(Gf2Matrix {
            rows: inv
                .into_iter()
                .map(|w| BitVector::from_word(n, w))
                .collect(),
            cols: n,
        })
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form with zero rows dropped. Row space is preserved.
pub fn rref(m: &Gf2Matrix) -> Gf2Matrix {
    let cols = m.col_count();
    let mut rows: Vec<u64> = m.rows().map(BitVector::word).collect();
    let mut out: Vec<u64> = Vec::new();
    for col in 0..cols {
        let bit = 1u64 << (cols - 1 - col);
        if let Some(idx) = rows.iter().position(|&r| r & bit != 0) {
            let pivot = rows.swap_remove(idx);
            for r in rows.iter_mut() {
                if *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            for r in out.iter_mut() {
                if *r & bit != 0 {
                    *r ^= pivot;
                }
            }
            out.push(pivot);
        }
    }
    Gf2Matrix {
        rows: out
            .into_iter()
            .map(|w| BitVector::from_word(cols, w))
            .collect(),
        cols,
    }
}

/// A binary linear code held in canonical form: the generator matrix is the
/// reduced row-echelon form of any spanning set, zero rows removed. Two codes
/// compare equal exactly when their canonical generators agree bit for bit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassicalCode {
    n: usize,
    generator: Gf2Matrix,
}

impl ClassicalCode {
    /// Canonicalizes the span of the given rows.
    pub fn from_generators(n: usize, rows: &[BitVector]) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == n),
            "generator length mismatch"
        );
        ClassicalCode {
            n,
            generator: rref(&Gf2Matrix::from_rows(rows.to_vec(), n)),
        }
    }

    pub fn zero(n: usize) -> Self {
        ClassicalCode {
            n,
            generator: Gf2Matrix::zeros(0, n),
        }
    }

    pub fn full(n: usize) -> Self {
        ClassicalCode {
            n,
            generator: Gf2Matrix::identity(n),
        }
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generators(n, &[BitVector::zero(n).complement()])
    }

    /// All even-weight vectors of length `n`.
    pub fn even_weight(n: usize) -> Self {
        let rows: Vec<BitVector> = (1..n)
            .map(|i| {
                let mut v = BitVector::zero(n);
                v.set(i, true);
                v.set(n, true);
                v
            })
            .collect();
        Self::from_generators(n, &rows)
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generator.row_count()
    }

    pub fn generator(&self) -> &Gf2Matrix {
        &self.generator
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.n, "length mismatch");
        let mut w = v.word();
        for row in self.generator.rows() {
            let lead = 63 - row.word().leading_zeros() as usize;
            if w & (1 << lead) != 0 {
                w ^= row.word();
            }
        }
        w == 0
    }

    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.n == other.n && self.generator.rows().all(|r| other.contains(r))
    }

    /// Iterates over all 2^dim codewords in Gray-code order (the zero word
    /// comes first).
    pub fn codewords(&self) -> impl Iterator<Item = BitVector> + '_ {
        let k = self.dim();
        let n = self.n;
        let mut current = 0u64;
        let mut counter = 0u64;
        let total = 1u64 << k;
        std::iter::from_fn(move || {
            if counter >= total {
                return None;
            }
            let out = BitVector::from_word(n, current);
            counter += 1;
            if counter < total {
                let flip = counter.trailing_zeros() as usize;
                current ^= self.generator.row(flip + 1).word();
            }
            Some(out)
        })
    }
}

impl fmt::Debug for ClassicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ClassicalCode[{},{}] {:?}",
            self.n,
            self.dim(),
            self.generator
        )
    }
}

/// The dual code `{ v : v . c = 0 for all c in C }`, in canonical form.
pub fn dual_code(code: &ClassicalCode) -> ClassicalCode {
    let n = code.length();
    let gen = code.generator();
    // Nullspace from the rref: one basis vector per free column.
    let mut pivot_of_col = vec![None; n + 1];
    for (r, row) in gen.rows().enumerate() {
        let lead = row.support()[0];
        pivot_of_col[lead] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 1..=n {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = BitVector::zero(n);
        v.set(free, true);
        for col in 1..=n {
            if let Some(r) = pivot_of_col[col] {
                if gen.get(r + 1, free) {
                    v.set(col, true);
                }
            }
        }
        basis.push(v);
    }
    ClassicalCode::from_generators(n, &basis)
}

/// Minimum Hamming weight over the nonzero codewords of `code`, or over
/// `code \ exclude` when an exclusion subcode is given. Exhaustive; valid for
/// `dim <= 24`.
pub fn min_weight(
    code: &ClassicalCode,
    exclude: Option<&ClassicalCode>,
) -> Result<usize, Gf2Error> {
    if code.dim() > MIN_WEIGHT_DIM_CAP {
        return Err(Gf2Error::DimensionTooLarge {
            dim: code.dim(),
            cap: MIN_WEIGHT_DIM_CAP,
        });
    }
    if let Some(ex) = exclude {
        assert!(ex.is_subcode_of(code), "exclusion is not a subcode");
    }
    let mut best: Option<usize> = None;
    for w in code.codewords() {
        if w.is_zero() {
            continue;
        }
        if let Some(ex) = exclude {
            if ex.contains(&w) {
                continue;
            }
        }
        let weight = w.weight();
        if best.is_none_or(|b| weight < b) {
            best = Some(weight);
        }
    }
    best.ok_or(Gf2Error::EmptyDifference)
}

/// Weight distribution `A_0..A_n` by exhaustive enumeration (`dim <= 24`).
pub fn weight_distribution(code: &ClassicalCode) -> Result<Vec<u64>, Gf2Error> {
    if code.dim() > MIN_WEIGHT_DIM_CAP {
        return Err(Gf2Error::DimensionTooLarge {
            dim: code.dim(),
            cap: MIN_WEIGHT_DIM_CAP,
        });
    }
    let mut dist = vec![0u64; code.length() + 1];
    for w in code.codewords() {
        dist[w.weight()] += 1;
    }
    Ok(dist)
}

/// Weight distribution of `code` computed from the distribution of its dual
/// via the MacWilliams transform. Used where the dual is the smaller side.
pub fn weight_distribution_via_dual(code: &ClassicalCode) -> Result<Vec<u64>, Gf2Error> {
    let dual = dual_code(code);
    let b = weight_distribution(&dual)?;
    let n = code.length();
    let dual_size = 1i128 << dual.dim();
    let mut dist = vec![0u64; n + 1];
    for (j, slot) in dist.iter_mut().enumerate() {
        let mut acc: i128 = 0;
        for (w, &bw) in b.iter().enumerate() {
            acc += bw as i128 * krawtchouk(n, j, w);
        }
        debug_assert_eq!(acc % dual_size, 0);
        *slot = (acc / dual_size) as u64;
    }
    Ok(dist)
}

/// Minimum weight read off a weight distribution.
pub fn min_weight_of_distribution(dist: &[u64]) -> Option<usize> {
    dist.iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .map(|(w, _)| w)
}

/// Krawtchouk polynomial `K_j(w)` over length `n`.
fn krawtchouk(n: usize, j: usize, w: usize) -> i128 {
    let mut acc: i128 = 0;
    for i in 0..=j.min(w) {
        let term = binomial(w, i) * binomial(n - w, j - i);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn code_from_strings(rows: &[&str]) -> ClassicalCode {
        let vecs: Vec<BitVector> = rows.iter().map(|s| s.parse().unwrap()).collect();
        ClassicalCode::from_generators(vecs[0].len(), &vecs)
    }

    #[test]
    fn bit_string_round_trip_and_indexing() {
        let v: BitVector = "10101010".parse().unwrap();
        assert_eq!(v.to_string(), "10101010");
        assert!(v.get(1));
        assert!(!v.get(2));
        assert_eq!(v.weight(), 4);
        assert_eq!(v.complement().to_string(), "01010101");
        assert_eq!(v.support(), vec![1, 3, 5, 7]);
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let id = Gf2Matrix::identity(3);
        assert_eq!(rref(&id), id);
    }

    #[test]
    fn rref_rank_one_collapse() {
        let m = Gf2Matrix::from_strings(&["11", "11"]);
        let r = rref(&m);
        assert_eq!(r.row_count(), 1);
        assert_eq!(r.row(1).to_string(), "11");
    }

    #[test]
    fn rref_repetition_generator() {
        let m = Gf2Matrix::from_strings(&["1111111"]);
        let r = rref(&m);
        assert_eq!(r.row_count(), 1);
        assert_eq!(r.row(1).to_string(), "1111111");
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Gf2Matrix::from_strings(&["1011", "0111", "1100", "0011"]);
        let r = rref(&m);
        assert_eq!(rref(&r), r);
    }

    #[test]
    fn dual_of_repetition_is_even_weight() {
        let rep = ClassicalCode::repetition(7);
        let dual = dual_code(&rep);
        assert_eq!(dual.dim(), 6);
        assert_eq!(dual, ClassicalCode::even_weight(7));
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let full = ClassicalCode::full(7);
        assert_eq!(dual_code(&full), ClassicalCode::zero(7));
    }

    #[test]
    fn min_weight_repetition() {
        let rep = ClassicalCode::repetition(7);
        assert_eq!(min_weight(&rep, None), Ok(7));
    }

    #[test]
    fn min_weight_hamming_oracle() {
        // [7,4,3] (punctured first-order length-7) generated directly; the
        // oracle below walks all 16 words naively, independent of the
        // Gray-code path used by min_weight.
        let code = code_from_strings(&["1111111", "0001111", "0110011", "1010101"]);
        assert_eq!(code.dim(), 4);
        let mut naive = usize::MAX;
        let gen: Vec<u64> = code.generator().rows().map(BitVector::word).collect();
        for mask in 1u64..16 {
            let mut w = 0u64;
            for (i, g) in gen.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w ^= g;
                }
            }
            naive = naive.min(w.count_ones() as usize);
        }
        assert_eq!(naive, 3);
        assert_eq!(min_weight(&code, None), Ok(3));
    }

    #[test]
    fn min_weight_with_exclusion() {
        let full = ClassicalCode::full(7);
        let hamming = code_from_strings(&["1111111", "0001111", "0110011", "1010101"]);
        assert_eq!(min_weight(&full, Some(&hamming)), Ok(1));
    }

    #[test]
    fn min_weight_errors() {
        let zero = ClassicalCode::zero(4);
        assert_eq!(min_weight(&zero, None), Err(Gf2Error::EmptyDifference));
        let full = ClassicalCode::full(4);
        assert_eq!(
            min_weight(&full, Some(&full)),
            Err(Gf2Error::EmptyDifference)
        );
    }

    #[test]
    fn macwilliams_agrees_with_enumeration() {
        let codes = [
            ClassicalCode::repetition(7),
            ClassicalCode::even_weight(7),
            code_from_strings(&["1111111", "0001111", "0110011", "1010101"]),
        ];
        for c in &codes {
            assert_eq!(
                weight_distribution(c).unwrap(),
                weight_distribution_via_dual(c).unwrap()
            );
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = Gf2Matrix::from_strings(&["110", "011", "001"]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Gf2Matrix::identity(3));
        let singular = Gf2Matrix::from_strings(&["110", "011", "101"]);
        assert!(singular.inverse().is_none());
    }

    proptest! {
        #[test]
        fn rref_preserves_row_space(rows in proptest::collection::vec(0u64..256, 1..6)) {
            let vecs: Vec<BitVector> = rows.iter().map(|&w| BitVector::from_word(8, w)).collect();
            let m = Gf2Matrix::from_rows(vecs.clone(), 8);
            let r = rref(&m);
            let code = ClassicalCode::from_generators(8, &vecs);
            // membership both ways
            for row in r.rows() {
                prop_assert!(code.contains(row));
            }
            let canon = ClassicalCode::from_generators(8, &r.rows().cloned().collect::<Vec<_>>());
            for row in m.rows() {
                prop_assert!(canon.contains(row));
            }
        }

        #[test]
        fn rank_of_product_is_bounded_by_factors(
            a_rows in proptest::collection::vec(0u64..64, 3..6),
            b_rows in proptest::collection::vec(0u64..256, 6..7),
        ) {
            let a = Gf2Matrix::from_rows(
                a_rows.iter().map(|&w| BitVector::from_word(6, w)).collect(), 6);
            let b = Gf2Matrix::from_rows(
                b_rows.iter().map(|&w| BitVector::from_word(8, w)).collect(), 8);
            let product = a.mul(&b);
            prop_assert!(product.rank() <= a.rank());
            prop_assert!(product.rank() <= b.rank());
        }

        #[test]
        fn dual_dimension_and_orthogonality(rows in proptest::collection::vec(0u64..1024, 1..7)) {
            let vecs: Vec<BitVector> = rows.iter().map(|&w| BitVector::from_word(10, w)).collect();
            let code = ClassicalCode::from_generators(10, &vecs);
            let dual = dual_code(&code);
            prop_assert_eq!(code.dim() + dual.dim(), 10);
            for a in code.generator().rows() {
                for b in dual.generator().rows() {
                    prop_assert!(!a.dot(b));
                }
            }
            prop_assert_eq!(dual_code(&dual), code);
        }

        #[test]
        fn canonical_form_is_generator_order_independent(
            rows in proptest::collection::vec(0u64..256, 2..6),
            seed in 0usize..1000,
        ) {
            let vecs: Vec<BitVector> = rows.iter().map(|&w| BitVector::from_word(8, w)).collect();
            let mut shuffled = vecs.clone();
            let rot = seed % shuffled.len();
            shuffled.rotate_left(rot);
            shuffled.reverse();
            // also mix a row into another; the span is unchanged
            if shuffled.len() >= 2 {
                let mixed = shuffled[0].xor(&shuffled[1]);
                shuffled[0] = mixed;
            }
            let a = ClassicalCode::from_generators(8, &vecs);
            let b = ClassicalCode::from_generators(8, &shuffled);
            prop_assert_eq!(a, b);
        }
    }
}

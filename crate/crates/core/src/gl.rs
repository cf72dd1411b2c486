//! The group `GL_k(F_2)` generated by elementary transvections, its word
//! table, the explicit isomorphism `phi: GL_4(F_2) -> A_8`, and the
//! permutation unitaries realised by CNOT circuits on basis states.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::gf2::{BitVector, Gf2Matrix};
use crate::perm::{PermError, Permutation, CLOSURE_CAP};

/// An invertible `k x k` matrix over F2. Every invertible binary matrix has
/// determinant 1, so no separate determinant check is needed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlElement {
    k: usize,
    matrix: Gf2Matrix,
}

impl GlElement {
    pub fn identity(k: usize) -> Self {
        GlElement {
            k,
            matrix: Gf2Matrix::identity(k),
        }
    }

    pub fn from_matrix(matrix: Gf2Matrix) -> Self {
        let k = matrix.col_count();
        assert_eq!(matrix.row_count(), k, "not square");
        assert_eq!(matrix.rank(), k, "not invertible");
        GlElement { k, matrix }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Gf2Matrix::identity(self.k)
    }

    /// Matrix product; the right factor acts first on column vectors.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "dimension mismatch");
        GlElement {
            k: self.k,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn inverse(&self) -> Self {
        GlElement {
            k: self.k,
            matrix: self.matrix.inverse().expect("GlElement is invertible"),
        }
    }

    /// Group commutator `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// Column-vector action `x -> g x`.
    pub fn apply(&self, v: &BitVector) -> BitVector {
        self.matrix.mul_vector(v)
    }
}

impl fmt::Debug for GlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GlElement{:?}", self.matrix)
    }
}

/// The elementary transvection `1 + E_ij` (identity plus a single
/// off-diagonal 1 in entry `(i, j)`).
pub fn transvection(i: usize, j: usize, k: usize) -> GlElement {
    assert!(
        i != j && (1..=k).contains(&i) && (1..=k).contains(&j),
        "bad transvection indices"
    );
    let mut m = Gf2Matrix::identity(k);
    m.set(i, j, true);
    GlElement { k, matrix: m }
}

/// `|GL_k(F_2)| = prod_{l=0}^{k-1} (2^k - 2^l)`.
pub fn gl_order(k: u32) -> u128 {
    (0..k).map(|l| (1u128 << k) - (1u128 << l)).product()
}

/// Inverse transpose, the contragredient: `(g . S)^perp = dual_element(g) . S^perp`.
pub fn dual_element(g: &GlElement) -> GlElement {
    GlElement {
        k: g.k,
        matrix: g.matrix.inverse().expect("invertible").transpose(),
    }
}

/// A word in named elementary transvections, evaluated left-to-right as a
/// matrix product (the rightmost letter acts first on vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransvectionWord {
    pub letters: Vec<(usize, usize)>,
}

impl TransvectionWord {
    pub fn identity() -> Self {
        TransvectionWord {
            letters: Vec::new(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let t = s.trim();
        if t.is_empty() || t.eq_ignore_ascii_case("id") {
            return Some(Self::identity());
        }
        let mut letters = Vec::new();
        for chunk in t.split_whitespace() {
            let digits = chunk.strip_prefix('g')?;
            let mut it = digits.chars();
            let i = it.next()?.to_digit(10)? as usize;
            let j = it.next()?.to_digit(10)? as usize;
            if it.next().is_some() {
                return None;
            }
            letters.push((i, j));
        }
        Some(TransvectionWord { letters })
    }

    pub fn evaluate(&self, k: usize) -> GlElement {
        self.letters
            .iter()
            .fold(GlElement::identity(k), |acc, &(i, j)| {
                acc.compose(&transvection(i, j, k))
            })
    }
}

impl fmt::Display for TransvectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("Id");
        }
        for (idx, (i, j)) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{i}{j}")?;
        }
        Ok(())
    }
}

/// A fully enumerated matrix group with one generator word per element.
pub struct GlGroup {
    generators: Vec<GlElement>,
    elements: Vec<GlElement>,
    words: Vec<Vec<usize>>,
    index: HashMap<GlElement, usize>,
}

impl GlGroup {
    pub fn closure(generators: Vec<GlElement>) -> Result<Self, PermError> {
        assert!(!generators.is_empty(), "no generators");
        let k = generators[0].dim();
        assert!(generators.iter().all(|g| g.dim() == k), "mixed dimensions");
        let mut elements = vec![GlElement::identity(k)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let next = elements[frontier].compose(g);
                if !index.contains_key(&next) {
                    if elements.len() >= CLOSURE_CAP {
                        return Err(PermError::ClosureBlowup { cap: CLOSURE_CAP });
                    }
                    let mut word = words[frontier].clone();
                    word.push(gi);
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    words.push(word);
                }
            }
            frontier += 1;
        }
        Ok(GlGroup {
            generators,
            elements,
            words,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GlElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GlElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GlElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn word_of(&self, g: &GlElement) -> Option<&[usize]> {
        self.index.get(g).map(|&i| self.words[i].as_slice())
    }
}

/// The six adjacent transvections `g_12, g_23, g_34, g_21, g_32, g_43`
/// in the fixed order used by generator words.
pub const ADJACENT_4: [(usize, usize); 6] = [(1, 2), (2, 3), (3, 4), (2, 1), (3, 2), (4, 3)];

/// Images of the adjacent transvections under phi, as cycle strings on
/// 8 letters.
pub const PHI_GENERATOR_CYCLES: [(usize, usize, &str); 6] = [
    (1, 2, "(1 2)(3 4)(5 6)(7 8)"),
    (2, 3, "(1 5)(2 8)(3 7)(4 6)"),
    (3, 4, "(1 2)(3 8)(4 7)(5 6)"),
    (2, 1, "(1 4)(2 7)(3 8)(5 6)"),
    (3, 2, "(1 6)(2 5)(3 7)(4 8)"),
    (4, 3, "(1 4)(2 3)(5 6)(7 8)"),
];

/// The odd permutation realising projective duality on the 8 letters.
pub const TAU_C_CYCLES: &str = "(2 4)(3 7)(5 6)";

pub fn tau_c() -> Permutation {
    Permutation::from_cycles(TAU_C_CYCLES, 8).expect("valid cycles")
}

struct Gl4Table {
    group: GlGroup,
    phi_generators: Vec<Permutation>,
}

fn gl4_table() -> &'static Gl4Table {
    static TABLE: OnceLock<Gl4Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gens: Vec<GlElement> = ADJACENT_4
            .iter()
            .map(|&(i, j)| transvection(i, j, 4))
            .collect();
        let group = GlGroup::closure(gens).expect("GL4 closure fits the cap");
        assert_eq!(group.order() as u128, gl_order(4));
        let phi_generators = PHI_GENERATOR_CYCLES
            .iter()
            .map(|&(_, _, cycles)| Permutation::from_cycles(cycles, 8).expect("valid cycles"))
            .collect();
        Gl4Table {
            group,
            phi_generators,
        }
    })
}

/// The enumerated `GL_4(F_2)` over the six adjacent transvections, with
/// stored generator words. Built once and cached.
pub fn gl4_group() -> &'static GlGroup {
    &gl4_table().group
}

/// Images of the six adjacent transvections under phi, in [`ADJACENT_4`]
/// order.
pub fn phi_generators() -> &'static [Permutation] {
    &gl4_table().phi_generators
}

/// The isomorphism `GL_4(F_2) -> A_8`, computed by looking up a generator
/// word for `g` and mapping it letter by letter. Well-definedness rests on
/// the verified presentation relations and the order count 20160.
pub fn phi(g: &GlElement) -> Permutation {
    assert_eq!(g.dim(), 4, "phi is defined on GL_4(F_2)");
    let table = gl4_table();
    let word = table
        .group
        .word_of(g)
        .expect("every invertible matrix has a word");
    word.iter().fold(Permutation::identity(8), |acc, &gi| {
        acc.compose(&table.phi_generators[gi])
    })
}

/// The basis permutation `|x> -> |g x>` realised by the CNOT circuit of
/// `g` on `k` qubits. Basis states are indexed by the numeral of `x` with
/// qubit 1 the most significant bit.
#[derive(Clone, PartialEq, Eq)]
pub struct CnotUnitary {
    k: usize,
    images: Vec<usize>,
}

impl CnotUnitary {
    pub fn dim(&self) -> usize {
        1 << self.k
    }

    pub fn qubits(&self) -> usize {
        self.k
    }

    /// Image of basis index `x` (0-based numeral).
    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.k, other.k, "dimension mismatch");
        CnotUnitary {
            k: self.k,
            images: (0..self.dim())
                .map(|x| self.images[other.images[x]])
                .collect(),
        }
    }

    /// Matrix entry `<row| U |col>` of the permutation matrix.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        if self.images[col] == row {
            1.0
        } else {
            0.0
        }
    }
}

impl fmt::Debug for CnotUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CnotUnitary(k={}, {:?})", self.k, self.images)
    }
}

pub fn cnot_circuit_unitary(g: &GlElement, k: usize) -> CnotUnitary {
    assert_eq!(g.dim(), k, "dimension mismatch");
    let images = (0..1usize << k)
        .map(|x| g.apply(&BitVector::from_word(k, x as u64)).numeral() as usize)
        .collect();
    CnotUnitary { k, images }
}

/// All `k(k-1)` elementary transvections of `GL_k(F_2)`, adjacent ones
/// first, in a fixed deterministic order.
pub fn all_transvections(k: usize) -> Vec<GlElement> {
    let mut out = Vec::new();
    for i in 1..k {
        out.push(transvection(i, i + 1, k));
        out.push(transvection(i + 1, i, k));
    }
    for i in 1..=k {
        for j in 1..=k {
            if i != j && i.abs_diff(j) > 1 {
                out.push(transvection(i, j, k));
            }
        }
    }
    out
}

/// Checks the standard presentation relations on a family of claimed
/// transvection images: squares trivial, disjoint-index pairs commute, and
/// `[e_ij, e_jk] = e_ik`. The map sends `(i, j)` to the claimed image.
pub fn presentation_relations_hold<T, M, E>(k: usize, image: M, identity: T, eq: E) -> bool
where
    T: Clone,
    M: Fn(usize, usize) -> T,
    E: Fn(&T, &T) -> bool,
    T: Composable,
{
    let pairs: Vec<(usize, usize)> = (1..=k)
        .flat_map(|i| (1..=k).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    // relation 1: squares
    for &(i, j) in &pairs {
        let g = image(i, j);
        if !eq(&g.compose_with(&g), &identity) {
            return false;
        }
    }
    // relation 2: commuting pairs, relation 3: [e_ij, e_jk] = e_ik
    for &(i, j) in &pairs {
        for &(kk, l) in &pairs {
            let a = image(i, j);
            let b = image(kk, l);
            let comm = a
                .inverse_of()
                .compose_with(&b.inverse_of())
                .compose_with(&a)
                .compose_with(&b);
            if j != kk && i != l {
                if !eq(&comm, &identity) {
                    return false;
                }
            } else if j == kk && i != l && !eq(&comm, &image(i, l)) {
                return false;
            }
        }
    }
    true
}

/// Group operations needed by [`presentation_relations_hold`].
pub trait Composable: Sized {
    fn compose_with(&self, other: &Self) -> Self;
    fn inverse_of(&self) -> Self;
}

impl Composable for GlElement {
    fn compose_with(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inverse_of(&self) -> Self {
        self.inverse()
    }
}

impl Composable for Permutation {
    fn compose_with(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inverse_of(&self) -> Self {
        self.inverse()
    }
}

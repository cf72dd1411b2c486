//! Permutations on `{1..n}`, finite-group closure by breadth-first
//! enumeration, orbits and stabilisers, and Lagrange-divisibility
//! obstructions to small-degree embeddings.
//!
//! All groups in scope are small enough for full enumeration; there is no
//! stabiliser-chain machinery here.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::gf2::BitVector;

/// Enumeration cap for [`PermGroup::closure`].
pub const CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("closure enumeration exceeded {cap} elements")]
    ClosureBlowup { cap: usize },
    #[error("invalid cycle notation {0:?}")]
    BadCycleNotation(String),
    #[error("images do not form a bijection on 1..{0}")]
    NotABijection(usize),
}

/// A permutation of `{1..n}` in one-line notation.
///
/// Products compose like functions: `(a * b)(p) = a(b(p))`, so the right
/// factor acts first. This matches the matrix convention used for
/// `GL_k(F_2)` acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // images[p - 1] is the (1-based) image of point p
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &img in &images {
            if img == 0 || img > n || seen[img] {
                return Err(PermError::NotABijection(n));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(2 4)(3 7)(5 6)"`; fixed points are
    /// omitted. `"()"` and `"Id"` denote the identity.
    pub fn from_cycles(s: &str, degree: usize) -> Result<Self, PermError> {
        let mut perm = Self::identity(degree);
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "()" || trimmed.eq_ignore_ascii_case("id") {
            return Ok(perm);
        }
        let bad = || PermError::BadCycleNotation(s.to_owned());
        let mut used = vec![false; degree + 1];
        let mut rest = trimmed;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(bad)?;
            if !rest[..open].trim().is_empty() {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let body = &rest[open + 1..close];
            let points: Vec<usize> = body
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for &p in &points {
                if p == 0 || p > degree || used[p] {
                    return Err(bad());
                }
                used[p] = true;
            }
            if points.len() > 1 {
                for w in points.windows(2) {
                    perm.images[w[0] - 1] = w[1];
                }
                perm.images[points[points.len() - 1] - 1] = points[0];
            }
            rest = &rest[close + 1..];
        }
        Permutation::from_images(perm.images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img == i + 1)
    }

    /// `(self ∘ other)(p) = self(other(p))`; `other` acts first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&q| self.images[q - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (p, &img) in self.images.iter().enumerate() {
            images[img - 1] = p + 1;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parity by cycle decomposition; `true` means even.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Moves the content of position `p` to position `self(p)`: the output
    /// bit at `i` equals the input bit at `self^{-1}(i)`.
    pub fn act_on_bitvector(&self, v: &BitVector) -> Result<BitVector, PermError> {
        if self.degree() != v.len() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: v.len(),
            });
        }
        let mut out = BitVector::zero(v.len());
        for p in 1..=v.len() {
            if v.get(p) {
                out.set(self.apply(p), true);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// A fully enumerated permutation group. Every element carries one word in
/// the generators (indices into the generator list, left-to-right product,
/// rightmost letter acting first); words are not length-minimal.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    words: Vec<Vec<usize>>,
    index: HashMap<Permutation, usize>,
}

impl PermGroup {
    /// Breadth-first closure of the generating set.
    pub fn closure(generators: Vec<Permutation>) -> Result<Self, PermError> {
        assert!(!generators.is_empty(), "no generators");
        let degree = generators[0].degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
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
        Ok(PermGroup {
            degree,
            generators,
            elements,
            words,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// The stored generator word of element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Evaluates a generator word left-to-right (rightmost letter acts
    /// first), matching [`Permutation::compose`].
    pub fn evaluate_word(&self, word: &[usize]) -> Permutation {
        word.iter()
            .fold(Permutation::identity(self.degree), |acc, &gi| {
                acc.compose(&self.generators[gi])
            })
    }
}

/// Orbit of `seed` under the group generated by `generators`, together with
/// the stabiliser order `group_order / |orbit|`.
pub fn orbit_and_stabilizer<G, T, F>(
    group_order: usize,
    generators: &[G],
    seed: T,
    act: F,
) -> (Vec<T>, usize)
where
    T: Clone + Eq + Hash,
    F: Fn(&G, &T) -> T,
{
    let mut orbit = vec![seed.clone()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(seed);
    let mut frontier = 0;
    while frontier < orbit.len() {
        for g in generators {
            let next = act(g, &orbit[frontier]);
            if seen.insert(next.clone()) {
                orbit.push(next);
            }
        }
        frontier += 1;
    }
    assert_eq!(
        group_order % orbit.len(),
        0,
        "orbit size does not divide the group order"
    );
    let stab = group_order / orbit.len();
    (orbit, stab)
}

/// `true` iff `group_order` divides `m!`, i.e. there is no Lagrange
/// obstruction to embedding a group of that order into `S_m`. `false`
/// certifies that no faithful degree-`m` action exists.
pub fn lagrange_embedding_obstruction(group_order: u128, m: u32) -> bool {
    let mut rem = group_order;
    for i in 1..=m as u128 {
        let g = gcd(rem, i);
        rem /= g;
        if rem == 1 {
            return true;
        }
    }
    rem == 1
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Minimal permutation degree of `PSL_k(F_q)`. Reference data only; the
/// generic value is `(q^k - 1)/(q - 1)` with a handful of small exceptions.
pub fn mu_psl(k: u32, q: u64) -> u64 {
    match (k, q) {
        (2, 5) => 5,
        (2, 7) => 7,
        (2, 9) => 6,
        (2, 11) => 11,
        (4, 2) => 8,
        _ => (q.pow(k) - 1) / (q - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn a8_generators() -> Vec<Permutation> {
        // 3-cycles (1 2 i) generate the alternating group
        (3..=8)
            .map(|i| Permutation::from_cycles(&format!("(1 2 {i})"), 8).unwrap())
            .collect()
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Permutation::from_cycles("(2 4)(3 7)(5 6)", 8).unwrap();
        assert_eq!(p.to_string(), "(2 4)(3 7)(5 6)");
        assert_eq!(p.apply(2), 4);
        assert_eq!(p.apply(4), 2);
        assert_eq!(p.apply(1), 1);
        assert!(Permutation::from_cycles("(1 1)", 4).is_err());
        assert!(Permutation::from_cycles("(0 2)", 4).is_err());
        assert!(Permutation::from_cycles("()", 4).unwrap().is_identity());
    }

    #[test]
    fn parity_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_perm(&mut rng, 9);
            let b = random_perm(&mut rng, 9);
            assert_eq!(a.compose(&b).is_even(), a.is_even() == b.is_even());
        }
    }

    #[test]
    fn transposition_closure() {
        let swap = Permutation::from_cycles("(1 2)", 2).unwrap();
        let group = PermGroup::closure(vec![swap]).unwrap();
        assert_eq!(group.order(), 2);
    }

    #[test]
    fn a8_closure_order() {
        let group = PermGroup::closure(a8_generators()).unwrap();
        assert_eq!(group.order(), 20160); // 8!/2
    }

    #[test]
    fn act_on_bitvector_anchors() {
        let g12 = Permutation::from_cycles("(1 2)(3 4)(5 6)(7 8)", 8).unwrap();
        let b0: BitVector = "10101010".parse().unwrap();
        assert_eq!(g12.act_on_bitvector(&b0).unwrap().to_string(), "01010101");

        let id = Permutation::identity(8);
        let v: BitVector = "10100110".parse().unwrap();
        assert_eq!(id.act_on_bitvector(&v).unwrap(), v);

        let tau_c = Permutation::from_cycles("(2 4)(3 7)(5 6)", 8).unwrap();
        assert_eq!(tau_c.act_on_bitvector(&b0).unwrap().to_string(), "10100110");

        let short = BitVector::zero(4);
        assert!(matches!(
            tau_c.act_on_bitvector(&short),
            Err(PermError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn bitvector_action_is_a_group_action() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_perm(&mut rng, 8);
            let b = random_perm(&mut rng, 8);
            let v = BitVector::from_word(8, rng.random_range(0..256));
            let lhs = a.compose(&b).act_on_bitvector(&v).unwrap();
            let rhs = a
                .act_on_bitvector(&b.act_on_bitvector(&v).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn closure_is_sound_and_words_evaluate() {
        let group = PermGroup::closure(a8_generators()).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let a = &group.elements()[rng.random_range(0..group.order())];
            let b = &group.elements()[rng.random_range(0..group.order())];
            assert!(group.contains(&a.compose(b)));
        }
        for i in 0..group.order() {
            assert_eq!(&group.evaluate_word(group.word(i)), &group.elements()[i]);
        }
    }

    #[test]
    fn orbit_stabilizer_product() {
        let group = PermGroup::closure(a8_generators()).unwrap();
        // natural action on points
        let (orbit, stab) =
            orbit_and_stabilizer(group.order(), group.generators(), 1usize, |g, &p| {
                g.apply(p)
            });
        assert_eq!(orbit.len(), 8);
        assert_eq!(orbit.len() * stab, group.order());
        // fixed point of the trivial group
        let id = PermGroup::closure(vec![Permutation::identity(3)]).unwrap();
        let (orbit, stab) =
            orbit_and_stabilizer(id.order(), id.generators(), 2usize, |g, &p| g.apply(p));
        assert_eq!(orbit.len(), 1);
        assert_eq!(stab, id.order());
    }

    #[test]
    fn closure_blowup_is_detected() {
        // S_12 has order 479M, far past the cap
        let cycle = Permutation::from_cycles("(1 2 3 4 5 6 7 8 9 10 11 12)", 12).unwrap();
        let swap = Permutation::from_cycles("(1 2)", 12).unwrap();
        match PermGroup::closure(vec![cycle, swap]) {
            Err(PermError::ClosureBlowup { cap }) => assert_eq!(cap, CLOSURE_CAP),
            _ => panic!("expected a blow-up error"),
        }
    }

    #[test]
    fn lagrange_obstructions() {
        assert!(!lagrange_embedding_obstruction(168, 6)); // 168 does not divide 720
        assert!(!lagrange_embedding_obstruction(20160, 7)); // |S_7| = 5040 < 20160
        assert!(lagrange_embedding_obstruction(1, 1));
        assert!(lagrange_embedding_obstruction(168, 7));
        assert!(lagrange_embedding_obstruction(20160, 8));
    }

    #[test]
    fn mu_psl_reference_values() {
        assert_eq!(mu_psl(2, 5), 5);
        assert_eq!(mu_psl(2, 7), 7);
        assert_eq!(mu_psl(2, 9), 6);
        assert_eq!(mu_psl(2, 11), 11);
        assert_eq!(mu_psl(4, 2), 8);
        assert_eq!(mu_psl(3, 2), 7);
        assert_eq!(mu_psl(5, 2), 31);
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

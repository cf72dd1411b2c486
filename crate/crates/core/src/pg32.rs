//! The finite projective geometry PG(3,2): 15 points, 35 lines, 15 planes,
//! incidence and duality, and the bijection between lines and unordered 4-4
//! bipartitions of 8 letters.
//!
//! Line ids are fixed by the embedded line-table fixture; the independent
//! derivation from point pairs is used to verify the fixture, not to assign
//! ids.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::gf2::BitVector;
use crate::gl::{phi, tau_c, GlElement, TransvectionWord};
use crate::perm::Permutation;

/// A point of PG(3,2): a nonzero vector of F2^4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(BitVector);

impl ProjPoint {
    pub fn new(v: BitVector) -> Self {
        assert_eq!(v.len(), 4, "points live in F2^4");
        assert!(!v.is_zero(), "the zero vector is not a projective point");
        ProjPoint(v)
    }

    pub fn parse(s: &str) -> Self {
        Self::new(s.parse().expect("valid bit string"))
    }

    pub fn vector(&self) -> BitVector {
        self.0
    }

    /// 1..15, the binary numeral of the vector (bit 1 most significant).
    pub fn numeral(&self) -> usize {
        self.0.numeral() as usize
    }

    pub fn add(&self, other: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.0.xor(&other.0))
    }

    pub fn dot(&self, other: &ProjPoint) -> bool {
        self.0.dot(&other.0)
    }

    pub fn is_isotropic(&self) -> bool {
        !self.dot(self)
    }

    pub fn apply(&self, g: &GlElement) -> ProjPoint {
        ProjPoint::new(g.apply(&self.0))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint({})", self.0)
    }
}

/// All 15 points in numeral order 0001..1111.
pub fn all_points() -> Vec<ProjPoint> {
    (1u64..16)
        .map(|w| ProjPoint::new(BitVector::from_word(4, w)))
        .collect()
}

/// A projective line `{u, v, u+v}`, stored sorted by numeral, with its
/// fixture id in 1..=35.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjLine {
    points: [ProjPoint; 3],
    id: usize,
}

impl ProjLine {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn points(&self) -> &[ProjPoint; 3] {
        &self.points
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.points.contains(x)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProjLine#{}{{{}, {}, {}}}",
            self.id, self.points[0], self.points[1], self.points[2]
        )
    }
}

fn sorted_triple(u: ProjPoint, v: ProjPoint) -> [ProjPoint; 3] {
    let mut t = [u, v, u.add(&v)];
    t.sort();
    t
}

/// A plane of PG(3,2), represented by its normal vector: the plane is the
/// set of points orthogonal to the normal.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPlane {
    normal: ProjPoint,
}

impl ProjPlane {
    pub fn normal(&self) -> ProjPoint {
        self.normal
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        !self.normal.dot(x)
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        all_points()
            .into_iter()
            .filter(|x| self.contains(x))
            .collect()
    }
}

impl fmt::Debug for ProjPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPlane(normal {})", self.normal)
    }
}

/// A projective subspace of PG(3,2).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Subspace {
    Point(ProjPoint),
    Line(ProjLine),
    Plane(ProjPlane),
}

/// An unordered 4-4 bipartition of 8 letters, canonicalized so that bit 1
/// of the stored representative is set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    representative: BitVector,
}

impl Bipartition {
    pub fn from_member(b: BitVector) -> Self {
        assert_eq!(b.len(), 8, "bipartitions live on 8 letters");
        let representative = if b.get(1) { b } else { b.complement() };
        Bipartition { representative }
    }

    pub fn representative(&self) -> BitVector {
        self.representative
    }

    pub fn permute(&self, sigma: &Permutation) -> Bipartition {
        Bipartition::from_member(
            sigma
                .act_on_bitvector(&self.representative)
                .expect("degree 8"),
        )
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bipartition{{{}, {}}}",
            self.representative,
            self.representative.complement()
        )
    }
}

/// One row of the line table: the point triple, the representative string
/// b(l), a generator word for g_l with l = g_l . l_0, and the id of the
/// dual line.
#[derive(Clone, Debug)]
pub struct LineRow {
    pub id: usize,
    pub points: [ProjPoint; 3],
    pub b: BitVector,
    pub word: TransvectionWord,
    pub dual_id: usize,
}

/// One row of the incidence table: the 7 lines through the point x, the 7
/// points of the plane x-perp, and the 7 lines inside that plane.
#[derive(Clone, Debug)]
pub struct PointRow {
    pub x: ProjPoint,
    pub lines_through: Vec<usize>,
    pub perp_points: Vec<ProjPoint>,
    pub perp_lines: Vec<usize>,
}

/// The embedded transcription of the line and incidence tables.
#[derive(Clone, Debug)]
pub struct LineTable {
    pub lines: Vec<LineRow>,
    pub points: Vec<PointRow>,
}

const LINE_ROWS: [(&str, &str, &str, usize); 35] = [
    ("1000 0100 1100", "10101010", "Id", 20),
    ("1000 0010 1010", "00110011", "g23 g32", 10),
    ("1000 0110 1110", "01100110", "g32", 28),
    ("1000 0001 1001", "11110000", "g34 g23 g43 g32", 8),
    ("1000 0101 1101", "01011010", "g32 g43 g32", 22),
    ("1000 0011 1011", "11000011", "g23 g43 g32", 12),
    ("1000 0111 1111", "01101001", "g43 g32", 30),
    ("0100 0010 0110", "11010010", "g12 g23 g21 g32", 4),
    ("0100 1010 1110", "10000111", "g12 g21 g32", 24),
    ("0100 0001 0101", "01100011", "g12 g34 g23 g21 g43 g32", 2),
    ("0100 1001 1101", "00110110", "g12 g34 g21 g43 g32", 21),
    ("0100 0011 0111", "10110001", "g12 g23 g21 g43 g32", 6),
    ("0100 1011 1111", "00011011", "g12 g21 g43 g32", 25),
    ("1100 0010 1110", "11100001", "g23 g21 g32", 16),
    ("1100 1010 0110", "01001011", "g21 g32", 32),
    ("1100 0001 1101", "10010011", "g34 g23 g21 g43 g32", 14),
    ("1100 1001 0101", "00111001", "g34 g21 g43 g32", 23),
    ("1100 0011 1111", "01110010", "g23 g21 g43 g32", 18),
    ("1100 1011 0111", "00100111", "g21 g43 g32", 35),
    (
        "0010 0001 0011",
        "10100110",
        "g23 g12 g34 g32 g23 g21 g43 g32",
        1,
    ),
    (
        "0010 1001 1011",
        "01101010",
        "g23 g43 g34 g32 g21 g43 g32",
        11,
    ),
    (
        "0010 0101 0111",
        "01110100",
        "g23 g12 g32 g23 g21 g43 g32",
        5,
    ),
    ("0010 1101 1111", "01000111", "g43 g32 g23 g21 g43 g32", 17),
    (
        "1010 0001 1011",
        "10101001",
        "g34 g23 g34 g32 g21 g43 g32",
        9,
    ),
    ("1010 1001 0011", "01100101", "g23 g34 g32 g21 g43 g32", 13),
    ("1010 0101 1111", "11010001", "g43 g32 g21 g43 g32", 26),
    ("1010 1101 0111", "11100010", "g34 g43 g32 g21 g43 g32", 34),
    (
        "0110 0001 0111",
        "00111010",
        "g12 g34 g32 g23 g21 g43 g32",
        3,
    ),
    ("0110 1001 1111", "10100011", "g43 g34 g32 g21 g43 g32", 29),
    ("0110 0101 0011", "00010111", "g12 g32 g23 g21 g43 g32", 7),
    ("0110 1101 1011", "01110001", "g12 g32 g21 g43 g32", 33),
    ("1110 0001 1111", "00110101", "g34 g32 g23 g21 g43 g32", 15),
    ("1110 1001 0111", "01010011", "g34 g32 g21 g43 g32", 31),
    ("1110 0101 1011", "10110010", "g32 g21 g43 g32", 27),
    ("1110 1101 0011", "00101011", "g32 g23 g21 g43 g32", 19),
];

const POINT_ROWS: [(&str, &str, &str, &str); 15] = [
    (
        "1000",
        "1 2 3 4 5 6 7",
        "0100 0010 0110 0001 0101 0011 0111",
        "8 10 12 20 22 28 30",
    ),
    (
        "0100",
        "1 8 9 10 11 12 13",
        "1000 0010 1010 0001 1001 0011 1011",
        "2 4 6 20 21 24 25",
    ),
    (
        "1100",
        "1 14 15 16 17 18 19",
        "1100 0010 1110 0001 1101 0011 1111",
        "14 16 18 20 23 32 35",
    ),
    (
        "0010",
        "2 8 14 20 21 22 23",
        "1000 0100 1100 0001 1001 0101 1101",
        "1 4 5 10 11 16 17",
    ),
    (
        "1010",
        "2 9 15 24 25 26 27",
        "0100 1010 1110 0001 0101 1011 1111",
        "9 10 13 24 26 32 34",
    ),
    (
        "0110",
        "3 8 15 28 29 30 31",
        "1000 0110 1110 0001 1001 0111 1111",
        "3 4 7 28 29 32 33",
    ),
    (
        "1110",
        "3 9 14 32 33 34 35",
        "1100 1010 0110 0001 1101 1011 0111",
        "15 16 19 24 27 28 31",
    ),
    (
        "0001",
        "4 10 16 20 24 28 32",
        "1000 0100 1100 0010 1010 0110 1110",
        "1 2 3 8 9 14 15",
    ),
    (
        "1001",
        "4 11 17 21 25 29 33",
        "0100 0010 0110 1001 1101 1011 1111",
        "8 11 13 21 23 29 31",
    ),
    (
        "0101",
        "5 10 17 22 26 30 34",
        "1000 0010 1010 0101 1101 0111 1111",
        "2 5 7 22 23 26 27",
    ),
    (
        "1101",
        "5 11 16 23 27 31 35",
        "1100 0010 1110 1001 0101 1011 0111",
        "14 17 19 21 22 33 34",
    ),
    (
        "0011",
        "6 12 18 20 25 30 35",
        "1000 0100 1100 0011 1011 0111 1111",
        "1 6 7 12 13 18 19",
    ),
    (
        "1011",
        "6 13 19 21 24 31 34",
        "0100 1010 1110 1001 1101 0011 0111",
        "9 11 12 25 27 33 35",
    ),
    (
        "0111",
        "7 12 19 22 27 28 33",
        "1000 0110 1110 0101 1101 0011 1011",
        "3 5 6 30 31 34 35",
    ),
    (
        "1111",
        "7 13 18 23 26 29 32",
        "1100 1010 0110 1001 0101 0011 1111",
        "15 17 18 25 26 29 30",
    ),
];

impl LineTable {
    pub fn load() -> LineTable {
        let lines = LINE_ROWS
            .iter()
            .enumerate()
            .map(|(idx, &(points, b, word, dual_id))| {
                let pts: Vec<ProjPoint> = points.split_whitespace().map(ProjPoint::parse).collect();
                LineRow {
                    id: idx + 1,
                    points: [pts[0], pts[1], pts[2]],
                    b: b.parse().expect("valid bit string"),
                    word: TransvectionWord::parse(word).expect("valid word"),
                    dual_id,
                }
            })
            .collect();
        let points = POINT_ROWS
            .iter()
            .map(|&(x, through, perp_pts, perp_lines)| PointRow {
                x: ProjPoint::parse(x),
                lines_through: through
                    .split_whitespace()
                    .map(|t| t.parse().unwrap())
                    .collect(),
                perp_points: perp_pts.split_whitespace().map(ProjPoint::parse).collect(),
                perp_lines: perp_lines
                    .split_whitespace()
                    .map(|t| t.parse().unwrap())
                    .collect(),
            })
            .collect();
        LineTable { lines, points }
    }

    pub fn embedded() -> &'static LineTable {
        static TABLE: OnceLock<LineTable> = OnceLock::new();
        TABLE.get_or_init(LineTable::load)
    }
}

/// One fixture mismatch found by [`verify_tables`].
#[derive(Clone, Debug)]
pub struct Mismatch {
    /// Line id, point string, or "global".
    pub row: String,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, self.detail)
    }
}

/// Report of a fixture cross-check; empty mismatch list means the fixture
/// and the derived geometry agree everywhere.
#[derive(Clone, Debug, Default)]
pub struct TableReport {
    pub mismatches: Vec<Mismatch>,
}

impl TableReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The precomputed geometry: lines in fixture order, incidence maps, and
/// the line representative strings.
pub struct PgGeometry {
    lines: Vec<ProjLine>,
    line_by_triple: HashMap<[ProjPoint; 3], usize>,
    representatives: Vec<BitVector>,
}

impl PgGeometry {
    fn build(table: &LineTable) -> PgGeometry {
        let lines: Vec<ProjLine> = table
            .lines
            .iter()
            .map(|row| {
                let mut pts = row.points;
                pts.sort();
                ProjLine {
                    points: pts,
                    id: row.id,
                }
            })
            .collect();
        let line_by_triple = lines.iter().map(|l| (l.points, l.id)).collect();
        let b0: BitVector = "10101010".parse().unwrap();
        let representatives = table
            .lines
            .iter()
            .map(|row| {
                let g = row.word.evaluate(4);
                phi(&g).act_on_bitvector(&b0).expect("degree 8")
            })
            .collect();
        PgGeometry {
            lines,
            line_by_triple,
            representatives,
        }
    }

    pub fn get() -> &'static PgGeometry {
        static GEOMETRY: OnceLock<PgGeometry> = OnceLock::new();
        GEOMETRY.get_or_init(|| PgGeometry::build(LineTable::embedded()))
    }

    /// The 35 lines in table order.
    pub fn all_lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn line(&self, id: usize) -> &ProjLine {
        &self.lines[id - 1]
    }

    pub fn line_through(&self, u: ProjPoint, v: ProjPoint) -> &ProjLine {
        assert_ne!(u, v, "two distinct points are needed");
        let id = self.line_by_triple[&sorted_triple(u, v)];
        self.line(id)
    }

    pub fn lines_through_point(&self, x: &ProjPoint) -> Vec<&ProjLine> {
        self.lines.iter().filter(|l| l.contains(x)).collect()
    }

    pub fn lines_in_plane(&self, plane: &ProjPlane) -> Vec<&ProjLine> {
        self.lines
            .iter()
            .filter(|l| l.points.iter().all(|p| plane.contains(p)))
            .collect()
    }

    /// The action of `GL_4(F_2)` on lines.
    pub fn apply_to_line(&self, g: &GlElement, line: &ProjLine) -> &ProjLine {
        let u = line.points[0].apply(g);
        let v = line.points[1].apply(g);
        self.line_through(u, v)
    }

    /// Orthogonal complement: point <-> plane, line <-> line.
    pub fn dual_subspace(&self, s: &Subspace) -> Subspace {
        match s {
            Subspace::Point(x) => Subspace::Plane(ProjPlane { normal: *x }),
            Subspace::Plane(p) => Subspace::Point(p.normal),
            Subspace::Line(l) => {
                let perp: Vec<ProjPoint> = all_points()
                    .into_iter()
                    .filter(|y| !y.dot(&l.points[0]) && !y.dot(&l.points[1]))
                    .collect();
                assert_eq!(perp.len(), 3, "line dual must be a line");
                Subspace::Line(*self.line_through(perp[0], perp[1]))
            }
        }
    }

    pub fn dual_line(&self, line: &ProjLine) -> &ProjLine {
        match self.dual_subspace(&Subspace::Line(*line)) {
            Subspace::Line(l) => self.line(l.id),
            _ => unreachable!(),
        }
    }

    /// `b(l) = phi(g_l) . b_0`: the representative weight-4 string of the
    /// bipartition attached to the line.
    pub fn line_representative(&self, line: &ProjLine) -> BitVector {
        self.representatives[line.id - 1]
    }

    pub fn bipartition_of_line(&self, line: &ProjLine) -> Bipartition {
        Bipartition::from_member(self.line_representative(line))
    }
}

/// Cross-checks every derived quantity against the fixture. Per line row at
/// most one mismatch is reported (the first failing check); table-wide
/// checks that depend on row data run only once all row checks pass, so a
/// single faulty row yields a single mismatch.
pub fn verify_tables(fixture: &LineTable) -> TableReport {
    let mut report = TableReport::default();
    let b0: BitVector = "10101010".parse().unwrap();
    let l0 = [
        ProjPoint::parse("1000"),
        ProjPoint::parse("0100"),
        ProjPoint::parse("1100"),
    ];

    // derived line set from all point pairs
    let mut derived: HashSet<[ProjPoint; 3]> = HashSet::new();
    let points = all_points();
    for (i, &u) in points.iter().enumerate() {
        for &v in points.iter().skip(i + 1) {
            derived.insert(sorted_triple(u, v));
        }
    }
    if derived.len() != 35 {
        report.mismatches.push(Mismatch {
            row: "global".into(),
            detail: format!("derived line count {} != 35", derived.len()),
        });
    }

    let triple_to_id: HashMap<[ProjPoint; 3], usize> = fixture
        .lines
        .iter()
        .map(|row| {
            let mut t = row.points;
            t.sort();
            (t, row.id)
        })
        .collect();
    if triple_to_id.len() != fixture.lines.len() {
        report.mismatches.push(Mismatch {
            row: "global".into(),
            detail: "duplicate point triples in the fixture".into(),
        });
    }
    for triple in &derived {
        if !triple_to_id.contains_key(triple) {
            report.mismatches.push(Mismatch {
                row: "global".into(),
                detail: format!("derived line {:?} missing from the fixture", triple),
            });
        }
    }

    let mut rows_clean = vec![true; fixture.lines.len()];
    for (idx, row) in fixture.lines.iter().enumerate() {
        let fail = |detail: String| Mismatch {
            row: format!("l={}", row.id),
            detail,
        };
        let mut sorted = row.points;
        sorted.sort();
        let mismatch = (|| {
            if sorted[0].add(&sorted[1]) != sorted[2] {
                return Some(fail("point triple is not closed under addition".into()));
            }
            let g = row.word.evaluate(4);
            let mut image: Vec<ProjPoint> = l0.iter().map(|p| p.apply(&g)).collect();
            image.sort();
            if image != sorted {
                return Some(fail(format!(
                    "word {} does not map l_0 to the stored triple",
                    row.word
                )));
            }
            let derived_b = phi(&g).act_on_bitvector(&b0).expect("degree 8");
            if derived_b != row.b {
                return Some(fail(format!(
                    "phi(g_l) . b_0 = {derived_b} but the table stores {}",
                    row.b
                )));
            }
            if row.b.weight() != 4 {
                return Some(fail(format!("b has weight {} != 4", row.b.weight())));
            }
            // dual column, rederived from the orthogonal complement
            let perp: Vec<ProjPoint> = all_points()
                .into_iter()
                .filter(|y| !y.dot(&sorted[0]) && !y.dot(&sorted[1]))
                .collect();
            if perp.len() != 3 {
                return Some(fail("orthogonal complement is not a line".into()));
            }
            let mut perp_triple = [perp[0], perp[1], perp[2]];
            perp_triple.sort();
            match triple_to_id.get(&perp_triple) {
                Some(&dual) if dual == row.dual_id => None,
                Some(&dual) => Some(fail(format!(
                    "dual line is {} but the table stores {}",
                    dual, row.dual_id
                ))),
                None => Some(fail("dual line missing from the fixture".into())),
            }
        })();
        if let Some(m) = mismatch {
            rows_clean[idx] = false;
            report.mismatches.push(m);
        }
    }

    if rows_clean.iter().all(|&c| c) {
        // the {b, b-bar} classes partition the 70 weight-4 strings
        let mut covered = HashSet::new();
        for row in &fixture.lines {
            covered.insert(row.b);
            covered.insert(row.b.complement());
        }
        if covered.len() != 70 {
            report.mismatches.push(Mismatch {
                row: "global".into(),
                detail: format!(
                    "{} distinct strings covered by the 35 classes, expected 70",
                    covered.len()
                ),
            });
        }
        // duality consistency across rows: b(l-perp) = tau_c . b(l)
        let tau = tau_c();
        for row in &fixture.lines {
            let expect = tau.act_on_bitvector(&row.b).expect("degree 8");
            let stored = fixture.lines[row.dual_id - 1].b;
            if expect != stored {
                report.mismatches.push(Mismatch {
                    row: format!("l={}", row.id),
                    detail: format!("tau_c . b(l) = {expect} but b(l^perp) = {stored}"),
                });
            }
        }
    }

    // incidence table
    for prow in &fixture.points {
        let fail = |detail: String| Mismatch {
            row: format!("x={}", prow.x),
            detail,
        };
        let mut through: Vec<usize> = fixture
            .lines
            .iter()
            .filter(|row| row.points.contains(&prow.x))
            .map(|row| row.id)
            .collect();
        through.sort_unstable();
        let mut stored = prow.lines_through.clone();
        stored.sort_unstable();
        if through != stored {
            report
                .mismatches
                .push(fail(format!("lines through the point are {:?}", through)));
            continue;
        }
        let mut perp_points: Vec<ProjPoint> = all_points()
            .into_iter()
            .filter(|y| !y.dot(&prow.x))
            .collect();
        perp_points.sort();
        let mut stored_pts = prow.perp_points.clone();
        stored_pts.sort();
        if perp_points != stored_pts {
            report
                .mismatches
                .push(fail("perp-plane point list disagrees".into()));
            continue;
        }
        let mut perp_lines: Vec<usize> = fixture
            .lines
            .iter()
            .filter(|row| row.points.iter().all(|p| !p.dot(&prow.x)))
            .map(|row| row.id)
            .collect();
        perp_lines.sort_unstable();
        let mut stored_lines = prow.perp_lines.clone();
        stored_lines.sort_unstable();
        if perp_lines != stored_lines {
            report.mismatches.push(fail(format!(
                "lines inside the perp plane are {:?}",
                perp_lines
            )));
        }
    }

    report
}

//! Automorph groups of ternary forms and orbit partitions of representation
//! sets — the machinery behind "essentially unique" representation.
//!
//! An automorph is an integer matrix M with det M = ±1 and Mᵀ·Gram·M = Gram,
//! acting on column vectors as v ↦ Mv.  The group is found completely by
//! assembling candidate columns from the representations of the diagonal
//! coefficients a, b, c and filtering by the three required bilinear pairings.

use std::collections::BTreeSet;

use crate::forms::{RepresentationSet, TernaryForm};

/// An automorph of a fixed form: 3×3 integer matrix, det ±1, MᵀGM = G.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Automorph(pub [[i64; 3]; 3]);

/// The full (finite) automorph group of a positive ternary form.
#[derive(Clone, Debug)]
pub struct AutomorphGroup {
    pub form: TernaryForm,
    /// All elements, sorted canonically (row-major lexicographic).
    pub elements: Vec<Automorph>,
}

/// The partition of a representation set into automorph orbits.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub n: i64,
    /// Disjoint blocks covering the representation set; each block is sorted
    /// and blocks are ordered by their lexicographically least member.
    pub orbits: Vec<Vec<[i64; 3]>>,
}

impl Automorph {
    pub fn identity() -> Self {
        Automorph([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// Matrix–vector action v ↦ Mv.
    pub fn apply(&self, v: [i64; 3]) -> [i64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn compose(&self, other: &Automorph) -> Automorph {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        Automorph(out)
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// uᵀ · Gram · v — the bilinear pairing associated with the form.
fn pairing(form: &TernaryForm, u: [i64; 3], v: [i64; 3]) -> i64 {
    let g = form.gram();
    let mut total = 0i64;
    for i in 0..3 {
        for j in 0..3 {
            total += u[i] * g[i][j] * v[j];
        }
    }
    total
}

/// Compute the full automorph group.
///
/// Column i of any automorph represents the i-th diagonal coefficient
/// (f(m₁)=a, f(m₂)=b, f(m₃)=c), and the mixed pairings must reproduce the
/// off-diagonal Gram entries (uᵀGv = f, e, d for the three column pairs), so
/// scanning those finite representation sets is complete.
pub fn automorph_group(form: &TernaryForm) -> AutomorphGroup {
    assert!(
        form.is_positive_definite(),
        "automorph_group requires a positive definite form, got {form}"
    );
    let col1: Vec<[i64; 3]> = form.enumerate_representations(form.a).triples;
    let col2: Vec<[i64; 3]> = form.enumerate_representations(form.b).triples;
    let col3: Vec<[i64; 3]> = form.enumerate_representations(form.c).triples;
    let mut elements = Vec::new();
    for &m1 in &col1 {
        for &m2 in &col2 {
            if pairing(form, m1, m2) != form.f {
                continue;
            }
            for &m3 in &col3 {
                if pairing(form, m1, m3) != form.e || pairing(form, m2, m3) != form.d {
                    continue;
                }
                let m = Automorph([
                    [m1[0], m2[0], m3[0]],
                    [m1[1], m2[1], m3[1]],
                    [m1[2], m2[2], m3[2]],
                ]);
                // MᵀGM = G forces det M = ±1 over the integers; assert it.
                debug_assert_eq!(m.det().abs(), 1, "pairing-complete matrix with bad det");
                elements.push(m);
            }
        }
    }
    elements.sort();
    elements.dedup();
    AutomorphGroup {
        form: *form,
        elements,
    }
}

impl AutomorphGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Automorph) -> bool {
        self.elements.binary_search(m).is_ok()
    }
}

/// Partition the representations of n into orbits under the automorph group.
pub fn orbit_partition(form: &TernaryForm, n: i64) -> OrbitPartition {
    let group = automorph_group(form);
    orbit_partition_with_group(form, n, &group)
}

/// Same as [`orbit_partition`] but reusing an already-computed group.
pub fn orbit_partition_with_group(
    form: &TernaryForm,
    n: i64,
    group: &AutomorphGroup,
) -> OrbitPartition {
    let reps: RepresentationSet = form.enumerate_representations(n);
    let mut remaining: BTreeSet<[i64; 3]> = reps.triples.iter().copied().collect();
    let mut orbits = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        // Breadth-first closure of the seed under all group elements.
        let mut orbit: BTreeSet<[i64; 3]> = BTreeSet::new();
        let mut frontier = vec![seed];
        orbit.insert(seed);
        while let Some(v) = frontier.pop() {
            for m in &group.elements {
                let w = m.apply(v);
                if orbit.insert(w) {
                    frontier.push(w);
                }
            }
        }
        for v in &orbit {
            assert!(
                remaining.remove(v),
                "orbit escaped the representation set at {v:?}"
            );
        }
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    // Blocks are generated in order of least member because BTreeSet iterates
    // ascending, but make the invariant explicit.
    orbits.sort_by(|x, y| x[0].cmp(&y[0]));
    OrbitPartition { n, orbits }
}

/// Number of orbits of the representations of n; 0 iff n is not represented.
pub fn essential_count(form: &TernaryForm, n: i64) -> usize {
    orbit_partition(form, n).orbits.len()
}

/// True iff all representations of n form a single orbit.
pub fn is_essentially_unique(form: &TernaryForm, n: i64) -> bool {
    essential_count(form, n) == 1
}

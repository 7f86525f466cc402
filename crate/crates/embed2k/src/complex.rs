//! Pure simplicial k-complexes: incidence, boundary matrices, homology over
//! GF(2) and Z, maximal k-forests with their hat cycles, and disjoint unions.
//!
//! A complex is determined by its set of k-faces; lower faces are derived.
//! Faces are kept sorted, which fixes a canonical coordinate order for every
//! cocycle vector downstream.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{BitMatrix, BitRow, Matrix};

/// A k-face: k+1 distinct vertex labels sorted ascending. The ascending
/// order is the positive orientation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face(pub Vec<usize>);

impl Face {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(vertices.clone()));
            }
        }
        Ok(Face(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        // Both sorted; merge scan.
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn contains_all(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|v| self.0.binary_search(v).is_ok())
    }
}

/// Sign of the permutation sorting `seq` (must have distinct entries).
fn permutation_sign(seq: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Incidence sign [tau : alpha] of a k-face against an oriented (k-1)-face.
///
/// `alpha` is given as an ordered vertex sequence; its order is its
/// orientation. Returns 0 when alpha is not a sub-face of tau, otherwise
/// (-1)^l where l is the position of the dropped vertex in tau, times the
/// sign of the permutation taking the induced vertex order to `alpha`.
pub fn incidence_sign(tau: &Face, alpha: &[usize]) -> Result<i8> {
    if alpha.len() + 1 != tau.0.len() {
        return Err(Error::FaceArity(alpha.to_vec(), alpha.len(), tau.0.len() - 1));
    }
    let mut sorted = alpha.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateVertex(alpha.to_vec()));
        }
    }
    if !tau.contains_all(&sorted) {
        return Ok(0);
    }
    let l = tau
        .0
        .iter()
        .position(|v| sorted.binary_search(v).is_err())
        .expect("exactly one vertex of tau is dropped");
    let base = if l % 2 == 0 { 1 } else { -1 };
    // Parity of alpha's order relative to the sorted (induced) order.
    Ok(base * permutation_sign(alpha))
}

#[derive(Deserialize)]
struct ComplexFile {
    k: usize,
    faces: Vec<Vec<usize>>,
}

/// A pure simplicial k-complex given by its k-faces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    k: usize,
    faces: Vec<Face>,
}

impl SimplicialComplex {
    pub fn new(k: usize, faces: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parse("dimension k must be at least 1".into()));
        }
        let mut out: Vec<Face> = Vec::with_capacity(faces.len());
        for f in faces {
            if f.len() != k + 1 {
                return Err(Error::FaceArity(f.clone(), f.len(), k + 1));
            }
            out.push(Face::new(f)?);
        }
        out.sort();
        out.dedup();
        Ok(SimplicialComplex { k, faces: out })
    }

    /// Parse the JSON wire format `{"k": <int>, "faces": [[v0,...,vk],...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(file.k, file.faces)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "faces": self.faces.iter().map(|f| f.0.clone()).collect::<Vec<_>>(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of k-faces.
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn face_index(&self, f: &Face) -> Option<usize> {
        self.faces.binary_search(f).ok()
    }

    /// Sorted list of all vertex labels in use.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.faces.iter().flat_map(|f| f.0.iter().copied()).collect();
        set.into_iter().collect()
    }

    /// All (k-1)-faces (sorted, deduplicated).
    pub fn lower_faces(&self) -> Vec<Face> {
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for f in &self.faces {
            for drop in 0..f.0.len() {
                let mut v = f.0.clone();
                v.remove(drop);
                set.insert(Face(v));
            }
        }
        set.into_iter().collect()
    }

    /// Disjoint union: vertex labels of `other` are shifted past the largest
    /// label of `self`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(format!(
                "cannot take the disjoint union of a {}-complex and a {}-complex",
                self.k, other.k
            )));
        }
        let shift = self.vertices().last().map_or(0, |m| m + 1);
        let mut faces: Vec<Vec<usize>> = self.faces.iter().map(|f| f.0.clone()).collect();
        faces.extend(other.faces.iter().map(|f| f.0.iter().map(|v| v + shift).collect::<Vec<_>>()));
        SimplicialComplex::new(self.k, faces)
    }
}

/// The canonical index of all unordered pairs of nonadjacent k-faces: each
/// pair is ordered face-lexicographically and pairs are sorted
/// lexicographically. This order indexes every cocycle vector.
#[derive(Clone, Debug)]
pub struct DeletedPairs {
    pairs: Vec<(usize, usize)>,
    per_face: Vec<Vec<usize>>,
}

impl DeletedPairs {
    pub fn new(complex: &SimplicialComplex) -> Self {
        let n = complex.len();
        let mut pairs = Vec::new();
        let mut per_face = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if complex.face(i).is_disjoint(complex.face(j)) {
                    let idx = pairs.len();
                    pairs.push((i, j));
                    per_face[i].push(idx);
                    per_face[j].push(idx);
                }
            }
        }
        DeletedPairs { pairs, per_face }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    /// Pair indices involving the given face.
    pub fn pairs_of_face(&self, face_idx: usize) -> &[usize] {
        &self.per_face[face_idx]
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.pairs.binary_search(&key).ok()
    }
}

/// Ordered list of the nonadjacent pairs as faces (the public form of the
/// canonical index).
pub fn nonadjacent_pairs(complex: &SimplicialComplex) -> Vec<(Face, Face)> {
    DeletedPairs::new(complex)
        .pairs()
        .iter()
        .map(|&(i, j)| (complex.face(i).clone(), complex.face(j).clone()))
        .collect()
}

/// Boundary matrix over GF(2): rows indexed by (k-1)-faces, columns by
/// k-faces.
pub fn boundary_matrix_2(complex: &SimplicialComplex) -> BitMatrix {
    let lower = complex.lower_faces();
    let mut m = BitMatrix::zeros(lower.len(), complex.len());
    for (j, f) in complex.faces().iter().enumerate() {
        for drop in 0..f.0.len() {
            let mut v = f.0.clone();
            v.remove(drop);
            let i = lower.binary_search(&Face(v)).expect("lower face present");
            m.set(i, j, true);
        }
    }
    m
}

/// Signed boundary matrix over Z.
pub fn boundary_matrix_z(complex: &SimplicialComplex) -> Matrix<BigInt> {
    let lower = complex.lower_faces();
    let mut m = Matrix::<BigInt>::zeros(lower.len(), complex.len());
    for (j, f) in complex.faces().iter().enumerate() {
        for drop in 0..f.0.len() {
            let mut v = f.0.clone();
            v.remove(drop);
            let i = lower.binary_search(&Face(v)).expect("lower face present");
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            m.set(i, j, BigInt::from(sign));
        }
    }
    m
}

/// Basis of the GF(2) cycle space ker d_k (= H_k over Z2, since the complex
/// is k-dimensional).
pub fn cycle_space_2(complex: &SimplicialComplex) -> Vec<BitRow> {
    boundary_matrix_2(complex).nullspace()
}

/// Basis of the integer cycle lattice ker d_k (= H_k over Z).
pub fn cycle_space_z(complex: &SimplicialComplex) -> Vec<Vec<BigInt>> {
    boundary_matrix_z(complex).kernel_basis()
}

/// A maximal k-forest over GF(2) together with the hat cycles.
///
/// For a face in the forest the hat is zero; for a face outside, the hat is
/// the unique cycle supported in the forest plus that face. The hats of
/// non-forest faces form a basis of the cycle space.
#[derive(Clone, Debug)]
pub struct Forest2 {
    pub in_forest: Vec<bool>,
    pub non_forest: Vec<usize>,
    /// For each face, its column index in the hat basis (None for forest faces).
    pub hat_column: Vec<Option<usize>>,
    /// Hat cycles as indicator vectors over the k-faces, one per non-forest face.
    pub hats: Vec<BitRow>,
}

impl Forest2 {
    pub fn forest_size(&self) -> usize {
        self.in_forest.iter().filter(|&&b| b).count()
    }

    /// Dimension of H_k over Z2.
    pub fn cycle_dim(&self) -> usize {
        self.non_forest.len()
    }
}

/// Greedy maximal k-forest over GF(2), inserting faces in the given order.
/// A face joins the forest iff it does not create a cycle, i.e. its boundary
/// column is independent of the columns already accepted.
pub fn maximal_k_forest_2_ordered(complex: &SimplicialComplex, order: &[usize]) -> Forest2 {
    let boundary = boundary_matrix_2(complex);
    let n = complex.len();
    let rows = boundary.nrows();
    let mut in_forest = vec![false; n];
    // Echelon of accepted columns with combination tracking over forest faces.
    let mut echelon: Vec<BitRow> = Vec::new();
    let mut combos: Vec<Vec<usize>> = Vec::new(); // forest face indices
    let mut pivots: Vec<usize> = Vec::new();
    let mut hats_by_face: Vec<Option<BitRow>> = vec![None; n];

    let column = |j: usize| -> BitRow {
        let mut c = BitRow::zeros(rows);
        for i in 0..rows {
            if boundary.get(i, j) {
                c.set(i, true);
            }
        }
        c
    };

    for &j in order {
        let mut v = column(j);
        let mut combo: Vec<usize> = Vec::new();
        loop {
            let Some(lead) = v.first_one() else { break };
            match pivots.iter().position(|&p| p == lead) {
                Some(idx) => {
                    v.xor_assign(&echelon[idx]);
                    for &f in &combos[idx] {
                        combo.push(f);
                    }
                }
                None => break,
            }
        }
        if v.is_zero() {
            // Dependent: the hat cycle is this face plus the symmetric
            // difference of the participating forest faces.
            let mut hat = BitRow::zeros(n);
            hat.set(j, true);
            for f in combo {
                hat.flip(f);
            }
            hats_by_face[j] = Some(hat);
        } else {
            in_forest[j] = true;
            pivots.push(v.first_one().unwrap());
            echelon.push(v);
            combo.push(j);
            combos.push(combo);
        }
    }

    let non_forest: Vec<usize> = (0..n).filter(|&j| !in_forest[j]).collect();
    let mut hat_column = vec![None; n];
    let mut hats = Vec::with_capacity(non_forest.len());
    for (col, &j) in non_forest.iter().enumerate() {
        hat_column[j] = Some(col);
        hats.push(hats_by_face[j].clone().expect("non-forest face has a hat"));
    }
    Forest2 { in_forest, non_forest, hat_column, hats }
}

/// Greedy-lexicographic maximal k-forest over GF(2).
pub fn maximal_k_forest_2(complex: &SimplicialComplex) -> Forest2 {
    let order: Vec<usize> = (0..complex.len()).collect();
    maximal_k_forest_2_ordered(complex, &order)
}

/// Integer maximal k-forest with primitive hat cycles.
#[derive(Clone, Debug)]
pub struct ForestZ {
    pub in_forest: Vec<bool>,
    pub non_forest: Vec<usize>,
    pub hat_column: Vec<Option<usize>>,
    /// Primitive integer hat cycles over the k-faces, coefficient +1 on the
    /// defining face.
    pub hats: Vec<Vec<BigInt>>,
}

impl ForestZ {
    pub fn cycle_dim(&self) -> usize {
        self.non_forest.len()
    }
}

/// Greedy maximal k-forest over Z (independence over Q), inserting faces in
/// the given order. The hat of a dependent face is the primitive generator
/// of the rank-one cycle lattice in forest + face, normalized to have
/// positive coefficient on the face; a non-unit coefficient there is
/// reported as an error.
pub fn maximal_k_forest_z_ordered(complex: &SimplicialComplex, order: &[usize]) -> Result<ForestZ> {
    let boundary = boundary_matrix_z(complex);
    let n = complex.len();
    let rows = boundary.nrows();
    let mut in_forest = vec![false; n];
    // Rational echelon with combination tracking (columns over forest faces).
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut combos: Vec<Vec<(usize, BigRational)>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut hats_by_face: Vec<Option<Vec<BigInt>>> = vec![None; n];

    let column = |j: usize| -> Vec<BigRational> {
        (0..rows).map(|i| BigRational::from(boundary.at(i, j).clone())).collect()
    };

    for &j in order {
        let mut v = column(j);
        let mut combo: Vec<(usize, BigRational)> = Vec::new();
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else { break };
            let Some(idx) = pivots.iter().position(|&p| p == lead) else { break };
            let factor = v[lead].clone() / echelon[idx][lead].clone();
            for (row, e) in v.iter_mut().zip(&echelon[idx]) {
                let upd = row.clone() - factor.clone() * e.clone();
                *row = upd;
            }
            for (f, c) in &combos[idx] {
                combo.push((*f, factor.clone() * c.clone()));
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            // d(face) = sum of combo over forest columns; the hat cycle is
            // face - combo, cleared to a primitive integer vector.
            let mut rational = vec![BigRational::zero(); n];
            rational[j] = BigRational::one();
            for (f, c) in combo {
                rational[f] = rational[f].clone() - c;
            }
            let hat = primitivize(&rational, j, complex)?;
            hats_by_face[j] = Some(hat);
        } else {
            in_forest[j] = true;
            pivots.push(v.iter().position(|x| !x.is_zero()).unwrap());
            echelon.push(v);
            // combo tracked the amounts subtracted from column(j); the stored
            // invariant is echelon = sum of signed original columns.
            let mut stored: Vec<(usize, BigRational)> =
                combo.into_iter().map(|(f, c)| (f, -c)).collect();
            stored.push((j, BigRational::one()));
            combos.push(stored);
        }
    }

    let non_forest: Vec<usize> = (0..n).filter(|&j| !in_forest[j]).collect();
    let mut hat_column = vec![None; n];
    let mut hats = Vec::with_capacity(non_forest.len());
    for (col, &j) in non_forest.iter().enumerate() {
        hat_column[j] = Some(col);
        hats.push(hats_by_face[j].clone().expect("non-forest face has a hat"));
    }
    Ok(ForestZ { in_forest, non_forest, hat_column, hats })
}

pub fn maximal_k_forest_z(complex: &SimplicialComplex) -> Result<ForestZ> {
    let order: Vec<usize> = (0..complex.len()).collect();
    maximal_k_forest_z_ordered(complex, &order)
}

/// Clear denominators and divide by the content; require the coefficient on
/// `sigma` to be a unit, and make it +1.
fn primitivize(
    rational: &[BigRational],
    sigma: usize,
    complex: &SimplicialComplex,
) -> Result<Vec<BigInt>> {
    let mut denom_lcm = BigInt::one();
    for x in rational {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = rational
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = content.gcd(x);
    }
    if !content.is_zero() && !content.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &content;
        }
    }
    if ints[sigma].is_negative() {
        for x in ints.iter_mut() {
            *x = -x.clone();
        }
    }
    if !ints[sigma].is_one() {
        return Err(Error::NonUnitHat {
            face: complex.face(sigma).0.clone(),
            coeff: ints[sigma].to_string(),
        });
    }
    Ok(ints)
}

/// Ready-made instances used throughout the tests and the self test.
pub mod catalog {
    use super::*;

    /// Complete graph on n vertices as a 1-complex.
    pub fn complete_graph(n: usize) -> SimplicialComplex {
        let faces = (0..n).tuple_combinations().map(|(a, b)| vec![a, b]).collect();
        SimplicialComplex::new(1, faces).expect("valid")
    }

    /// Complete bipartite graph with parts {0..a} and {a..a+b}.
    pub fn complete_bipartite(a: usize, b: usize) -> SimplicialComplex {
        let mut faces = Vec::new();
        for i in 0..a {
            for j in 0..b {
                faces.push(vec![i, a + j]);
            }
        }
        SimplicialComplex::new(1, faces).expect("valid")
    }

    /// Path with n edges: 0-1-2-...-n.
    pub fn path(n: usize) -> SimplicialComplex {
        let faces = (0..n).map(|i| vec![i, i + 1]).collect();
        SimplicialComplex::new(1, faces).expect("valid")
    }

    /// Cycle with n edges.
    pub fn cycle(n: usize) -> SimplicialComplex {
        let mut faces: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        faces.push(vec![0, n - 1]);
        SimplicialComplex::new(1, faces).expect("valid")
    }

    /// All k-faces of the simplex on the given vertex count.
    pub fn simplex_skeleton(k: usize, vertices: usize) -> SimplicialComplex {
        let faces = (0..vertices).combinations(k + 1).collect();
        SimplicialComplex::new(k, faces).expect("valid")
    }

    /// The k-skeleton of the (2k+2)-simplex: the classical complex with no
    /// embedding (not even a Z2-embedding) into R^2k. For k = 1 this is K5;
    /// for k = 2 it has 35 triangles on 7 vertices.
    pub fn deleted_simplex(k: usize) -> SimplicialComplex {
        simplex_skeleton(k, 2 * k + 3)
    }
}

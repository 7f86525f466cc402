//! Exact general position linear maps K -> R^2k and intersection counts and
//! signs between images of nonadjacent k-faces.
//!
//! All arithmetic is exact rational; intersection parities and signs are
//! discrete invariants and any tolerance would corrupt the cohomology
//! classes built on top of them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::{Cocycle2, CocycleZ};
use crate::complex::{DeletedPairs, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{BitRow, LinearSolution, Matrix};

/// An exact linear map of the vertex set into R^2k. The map is linear on
/// each simplex, which realizes a general position PL map for complexes in
/// general position.
#[derive(Clone, Debug)]
pub struct GeneralPositionMap {
    k: usize,
    vertices: Vec<usize>,
    coords: Vec<Vec<BigRational>>,
    /// Seed that produced the map, when built on the moment curve.
    seed: Option<u64>,
}

impl GeneralPositionMap {
    /// Build from explicit coordinates (one point in Q^2k per vertex of the
    /// complex, in sorted vertex order). No general position verification is
    /// performed; degeneracies surface as errors from the intersection solver.
    pub fn from_coords(
        complex: &SimplicialComplex,
        coords: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let vertices = complex.vertices();
        let dim = 2 * complex.k();
        if coords.len() != vertices.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} points, got {}",
                vertices.len(),
                coords.len()
            )));
        }
        if coords.iter().any(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "points must lie in R^{dim}"
            )));
        }
        Ok(GeneralPositionMap { k: complex.k(), vertices, coords, seed: None })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Image of a vertex label.
    pub fn point(&self, vertex: usize) -> &[BigRational] {
        let idx = self.vertices.binary_search(&vertex).expect("vertex of the complex");
        &self.coords[idx]
    }
}

fn moment_point(t: &BigInt, dim: usize) -> Vec<BigRational> {
    let mut p = Vec::with_capacity(dim);
    let mut pow = BigInt::one();
    for _ in 0..dim {
        pow *= t;
        p.push(BigRational::from(pow.clone()));
    }
    p
}

/// Distinct positive curve parameters for a given attempt. Attempt 0 is the
/// canonical consecutive assignment 1..=m; later attempts draw distinct
/// integers with a shuffled vertex assignment. Translating or scaling the
/// parameters is an affine map of the whole configuration, so re-seeding has
/// to change the relative order, not just the values.
fn parameters(m: usize, attempt: u64) -> Vec<BigInt> {
    if attempt == 0 {
        return (1..=m as i64).map(BigInt::from).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(attempt);
    let range = 4 * m as i64 + 16;
    let mut pool: Vec<i64> = (1..=range).collect();
    pool.shuffle(&mut rng);
    let mut chosen: Vec<i64> = pool.into_iter().take(m).collect();
    // A second shuffle decouples magnitude order from vertex order.
    chosen.shuffle(&mut rng);
    let _ = rng.gen::<u64>();
    chosen.into_iter().map(BigInt::from).collect()
}

const MAX_RESEEDS: u64 = 64;

/// Map the vertices onto the moment curve (t, t^2, ..., t^2k) with distinct
/// integer parameters derived from the seed. The map is verified to be in
/// general position for every nonadjacent pair; on a degeneracy the
/// parameters are re-drawn deterministically from seed+1, seed+2, ...
pub fn moment_map(complex: &SimplicialComplex, seed: u64) -> Result<GeneralPositionMap> {
    let vertices = complex.vertices();
    let dim = 2 * complex.k();
    let pairs = DeletedPairs::new(complex);
    for attempt in seed..seed + MAX_RESEEDS {
        let params = parameters(vertices.len(), attempt);
        let coords: Vec<Vec<BigRational>> = params.iter().map(|t| moment_point(t, dim)).collect();
        let map = GeneralPositionMap {
            k: complex.k(),
            vertices: vertices.clone(),
            coords,
            seed: Some(attempt),
        };
        let ok = pairs.pairs().iter().all(|&(i, j)| {
            simplex_pair_intersection(&map, complex.face(i), complex.face(j)).is_ok()
        });
        if ok {
            return Ok(map);
        }
    }
    Err(Error::GeneralPositionUnavailable(MAX_RESEEDS as u32))
}

/// Crossing data of one nonadjacent pair under a general position map. For
/// linear maps of k-simplices in R^2k the count is 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub pair: (Face, Face),
    pub count: usize,
    pub signs: Vec<i8>,
}

impl IntersectionRecord {
    /// Signed intersection number (sum of signs).
    pub fn algebraic(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }
}

/// Exact intersection of the images of two nonadjacent k-faces.
///
/// Solves the affine system for a common point of the two simplex hulls. A
/// unique solution with a zero barycentric coordinate, or a singular but
/// consistent system, is a degenerate configuration and is reported as an
/// error (the moment map construction re-seeds on it). A singular
/// inconsistent system means the affine hulls are disjoint: count 0.
pub fn simplex_pair_intersection(
    map: &GeneralPositionMap,
    sigma: &Face,
    tau: &Face,
) -> Result<IntersectionRecord> {
    assert!(sigma.is_disjoint(tau), "faces must be nonadjacent");
    let k = map.k();
    let dim = 2 * k;
    let rows = dim + 2;
    let cols = 2 * (k + 1);
    // Unknowns: lambda_0..lambda_k (sigma), mu_0..mu_k (tau).
    let mut a = Matrix::<BigRational>::zeros(rows, cols);
    for (c, v) in sigma.vertices().iter().enumerate() {
        let p = map.point(*v);
        for r in 0..dim {
            a.set(r, c, p[r].clone());
        }
        a.set(dim, c, BigRational::one());
    }
    for (c, w) in tau.vertices().iter().enumerate() {
        let p = map.point(*w);
        for r in 0..dim {
            a.set(r, k + 1 + c, -p[r].clone());
        }
        a.set(dim + 1, k + 1 + c, BigRational::one());
    }
    let mut b = vec![BigRational::zero(); rows];
    b[dim] = BigRational::one();
    b[dim + 1] = BigRational::one();

    let record = |count: usize, signs: Vec<i8>| IntersectionRecord {
        pair: (sigma.clone(), tau.clone()),
        count,
        signs,
    };

    match a.solve_field(&b) {
        LinearSolution::Inconsistent => Ok(record(0, vec![])),
        LinearSolution::Underdetermined => Err(Error::DegenerateConfiguration(format!(
            "affine hulls of {:?} and {:?} meet in positive dimension",
            sigma.vertices(),
            tau.vertices()
        ))),
        LinearSolution::Unique(x) => {
            if x.iter().any(|c| c.is_zero()) {
                return Err(Error::DegenerateConfiguration(format!(
                    "intersection point on a simplex boundary for {:?}, {:?}",
                    sigma.vertices(),
                    tau.vertices()
                )));
            }
            if x.iter().any(|c| c.is_negative()) {
                return Ok(record(0, vec![]));
            }
            Ok(record(1, vec![intersection_sign(map, sigma, tau)]))
        }
    }
}

/// Sign of det[f(v1)-f(v0), ..., f(vk)-f(v0), f(w1)-f(w0), ..., f(wk)-f(w0)],
/// both faces taken in positive (ascending) orientation.
fn intersection_sign(map: &GeneralPositionMap, sigma: &Face, tau: &Face) -> i8 {
    let k = map.k();
    let dim = 2 * k;
    let mut m = Matrix::<BigRational>::zeros(dim, dim);
    let mut col = 0;
    for face in [sigma, tau] {
        let base = map.point(face.vertices()[0]);
        for v in &face.vertices()[1..] {
            let p = map.point(*v);
            for r in 0..dim {
                m.set(r, col, p[r].clone() - base[r].clone());
            }
            col += 1;
        }
    }
    let det = m.det_field();
    debug_assert!(!det.is_zero(), "transversal crossing has nonzero determinant");
    if det.is_positive() {
        1
    } else {
        -1
    }
}

fn records_for_all_pairs(
    complex: &SimplicialComplex,
    map: &GeneralPositionMap,
    pairs: &DeletedPairs,
) -> Result<Vec<IntersectionRecord>> {
    let work = |range: std::ops::Range<usize>| -> Result<Vec<IntersectionRecord>> {
        range
            .map(|idx| {
                let (i, j) = pairs.pair(idx);
                simplex_pair_intersection(map, complex.face(i), complex.face(j))
            })
            .collect()
    };
    let threads = crate::thread_count();
    let n = pairs.len();
    if threads <= 1 || n < 64 {
        return work(0..n);
    }
    let chunk = n.div_ceil(threads);
    let results: Vec<Result<Vec<IntersectionRecord>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let lo = (t * chunk).min(n);
                let hi = ((t + 1) * chunk).min(n);
                scope.spawn(move || work(lo..hi))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(n);
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// The modulo 2 intersection cocycle of the map: crossing parity per
/// canonical nonadjacent pair.
pub fn intersection_cocycle2(
    complex: &SimplicialComplex,
    map: &GeneralPositionMap,
) -> Result<Cocycle2> {
    let pairs = DeletedPairs::new(complex);
    let records = records_for_all_pairs(complex, map, &pairs)?;
    let mut bits = BitRow::zeros(pairs.len());
    for (idx, rec) in records.iter().enumerate() {
        if rec.count % 2 == 1 {
            bits.set(idx, true);
        }
    }
    Ok(Cocycle2::new(bits))
}

/// The integer intersection cocycle: signed crossing count stored on the
/// canonical direction of each pair, super-symmetric by construction.
pub fn intersection_cocycle_z(
    complex: &SimplicialComplex,
    map: &GeneralPositionMap,
) -> Result<CocycleZ> {
    let pairs = DeletedPairs::new(complex);
    let records = records_for_all_pairs(complex, map, &pairs)?;
    let values: Vec<BigInt> =
        records.iter().map(|rec| BigInt::from(rec.algebraic())).collect();
    Ok(CocycleZ::new(complex.k(), values))
}

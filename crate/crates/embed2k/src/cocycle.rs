//! Cocycles on the deleted pair set K*, elementary coboundaries, cohomology
//! membership over GF(2) and Z, 2k-cycles, C-van Kampen numbers, and the
//! omega cocycle of a homology homomorphism.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{incidence_sign, DeletedPairs, Face, Forest2, ForestZ, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::{intersection_cocycle2, intersection_cocycle_z, moment_map};
use crate::linalg::{BitMatrix, BitRow, LatticeSolver, Matrix, SpanSolver};

/// A cocycle K* -> Z2, indexed by the canonical pair order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle2 {
    bits: BitRow,
}

impl Cocycle2 {
    pub fn new(bits: BitRow) -> Self {
        Cocycle2 { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Cocycle2 { bits: BitRow::zeros(len) }
    }

    pub fn from_values(values: &[u8]) -> Self {
        let mut bits = BitRow::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            bits.set(i, v % 2 == 1);
        }
        Cocycle2 { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, idx: usize) -> bool {
        self.bits.get(idx)
    }

    pub fn bits(&self) -> &BitRow {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn xor(&self, other: &Cocycle2) -> Cocycle2 {
        let mut bits = self.bits.clone();
        bits.xor_assign(&other.bits);
        Cocycle2 { bits }
    }

    pub fn values(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i) as u8).collect()
    }
}

/// A super-symmetric integer cocycle on ordered nonadjacent pairs. The value
/// is stored on the canonical direction (lexicographically smaller face
/// first); the reversed direction is determined by
/// `value(tau,sigma) = (-1)^k value(sigma,tau)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CocycleZ {
    k: usize,
    values: Vec<BigInt>,
}

impl CocycleZ {
    pub fn new(k: usize, values: Vec<BigInt>) -> Self {
        CocycleZ { k, values }
    }

    pub fn zeros(k: usize, len: usize) -> Self {
        CocycleZ { k, values: vec![BigInt::zero(); len] }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the pair with given canonical index; `swapped` selects the
    /// reversed direction.
    pub fn value(&self, idx: usize, swapped: bool) -> BigInt {
        if swapped && self.k % 2 == 1 {
            -self.values[idx].clone()
        } else {
            self.values[idx].clone()
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn reduce_mod2(&self) -> Cocycle2 {
        let mut bits = BitRow::zeros(self.values.len());
        for (i, v) in self.values.iter().enumerate() {
            if v.is_odd() {
                bits.set(i, true);
            }
        }
        Cocycle2::new(bits)
    }

    pub fn sub(&self, other: &CocycleZ) -> CocycleZ {
        debug_assert_eq!(self.k, other.k);
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        CocycleZ { k: self.k, values }
    }

    pub fn neg(&self) -> CocycleZ {
        CocycleZ { k: self.k, values: self.values.iter().map(|v| -v.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

use num_integer::Integer as _;

/// Witness for a GF(2) cohomology: the elementary coboundaries summing to
/// the difference, as (alpha, sigma) pairs.
#[derive(Clone, Debug)]
pub struct Witness2 {
    pub terms: Vec<(Face, Face)>,
}

/// Witness for an integer cohomology: (alpha, sigma, coefficient) triples.
#[derive(Clone, Debug)]
pub struct WitnessZ {
    pub terms: Vec<(Face, Face, BigInt)>,
}

/// The elementary coboundary of (alpha, sigma) over GF(2): the indicator of
/// all pairs {sigma, tau} in K* with tau containing alpha.
pub fn elementary_coboundary2(
    complex: &SimplicialComplex,
    pairs: &DeletedPairs,
    alpha: &Face,
    sigma_idx: usize,
) -> Result<Cocycle2> {
    let sigma = complex.face(sigma_idx);
    if alpha.dim() + 1 != complex.k() {
        return Err(Error::FaceArity(alpha.0.clone(), alpha.0.len(), complex.k()));
    }
    if sigma.contains_all(alpha.vertices()) {
        return Err(Error::Parse(format!(
            "alpha {:?} lies in the boundary of sigma {:?}",
            alpha.vertices(),
            sigma.vertices()
        )));
    }
    let mut bits = BitRow::zeros(pairs.len());
    for &idx in pairs.pairs_of_face(sigma_idx) {
        let (i, j) = pairs.pair(idx);
        let tau = if i == sigma_idx { complex.face(j) } else { complex.face(i) };
        if tau.contains_all(alpha.vertices()) {
            bits.set(idx, true);
        }
    }
    Ok(Cocycle2::new(bits))
}

/// The integer elementary coboundary of an oriented alpha against sigma:
/// assigns `(-1)^k [tau:alpha]` to (sigma,tau) and `[tau:alpha]` to (tau,sigma).
pub fn elementary_coboundary_z(
    complex: &SimplicialComplex,
    pairs: &DeletedPairs,
    alpha_oriented: &[usize],
    sigma_idx: usize,
) -> Result<CocycleZ> {
    let k = complex.k();
    let sigma = complex.face(sigma_idx);
    if alpha_oriented.len() != k {
        return Err(Error::FaceArity(alpha_oriented.to_vec(), alpha_oriented.len(), k));
    }
    let mut sorted = alpha_oriented.to_vec();
    sorted.sort_unstable();
    if sigma.contains_all(&sorted) {
        return Err(Error::Parse(format!(
            "alpha {alpha_oriented:?} lies in the boundary of sigma {:?}",
            sigma.vertices()
        )));
    }
    let mut values = vec![BigInt::zero(); pairs.len()];
    for &idx in pairs.pairs_of_face(sigma_idx) {
        let (i, j) = pairs.pair(idx);
        let (tau_idx, sigma_first) =
            if i == sigma_idx { (j, true) } else { (i, false) };
        let tau = complex.face(tau_idx);
        let inc = incidence_sign(tau, alpha_oriented)?;
        if inc == 0 {
            continue;
        }
        // Stored value is for the canonical direction (smaller face first).
        let stored: i64 = if sigma_first {
            // canonical direction is (sigma, tau): value (-1)^k [tau:alpha]
            if k % 2 == 0 { inc as i64 } else { -(inc as i64) }
        } else {
            // canonical direction is (tau, sigma): value [tau:alpha]
            inc as i64
        };
        values[idx] = BigInt::from(stored);
    }
    Ok(CocycleZ::new(k, values))
}

/// Per-complex cache for cohomology membership tests over both rings, the
/// 2k-cycle space, and the derived decider data.
///
/// The GF(2) side is built eagerly; the integer side (the Hermite reduction
/// of the generator lattice) is built on first use and then immutable.
pub struct CocycleSystem {
    complex: SimplicialComplex,
    pairs: DeletedPairs,
    /// (alpha, sigma) labels for the generator list, shared by both rings.
    gen_labels: Vec<(Face, Face)>,
    /// Face index of sigma per generator.
    gen_sigma: Vec<usize>,
    solver2: SpanSolver,
    cycle_basis: Vec<BitRow>,
    z_side: std::sync::OnceLock<ZSide>,
}

struct ZSide {
    lattice: LatticeSolver<BigInt>,
    /// Basis of the integer kernel of the transposed generator matrix:
    /// integer cycle functionals that vanish on every coboundary.
    cycle_basis: Vec<Vec<BigInt>>,
}

impl CocycleSystem {
    pub fn new(complex: &SimplicialComplex) -> Result<Self> {
        let pairs = DeletedPairs::new(complex);
        let lower = complex.lower_faces();
        let mut gen_labels = Vec::new();
        let mut gen_sigma = Vec::new();
        let mut gens2 = Vec::new();
        for alpha in &lower {
            for sigma_idx in 0..complex.len() {
                if complex.face(sigma_idx).contains_all(alpha.vertices()) {
                    continue;
                }
                let d2 = elementary_coboundary2(complex, &pairs, alpha, sigma_idx)?;
                gen_labels.push((alpha.clone(), complex.face(sigma_idx).clone()));
                gen_sigma.push(sigma_idx);
                gens2.push(d2.bits().clone());
            }
        }
        let solver2 = SpanSolver::new(pairs.len(), &gens2);
        let gen_matrix = BitMatrix::from_rows(gens2, pairs.len());
        let cycle_basis = gen_matrix.nullspace();
        Ok(CocycleSystem {
            complex: complex.clone(),
            pairs,
            gen_labels,
            gen_sigma,
            solver2,
            cycle_basis,
            z_side: std::sync::OnceLock::new(),
        })
    }

    fn z_side(&self) -> &ZSide {
        self.z_side.get_or_init(|| {
            let n_gens = self.gen_labels.len();
            let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(n_gens);
            for (g, (alpha, _)) in self.gen_labels.iter().enumerate() {
                let dz = elementary_coboundary_z(
                    &self.complex,
                    &self.pairs,
                    alpha.vertices(),
                    self.gen_sigma[g],
                )
                .expect("generator labels are valid");
                cols.push(dz.values().to_vec());
            }
            let gens_z =
                Matrix::from_fn(self.pairs.len(), n_gens, |i, j| cols[j][i].clone());
            ZSide {
                lattice: LatticeSolver::new(&gens_z),
                cycle_basis: gens_z.transpose().kernel_basis(),
            }
        })
    }

    pub fn pairs(&self) -> &DeletedPairs {
        &self.pairs
    }

    pub fn coboundary_rank(&self) -> usize {
        self.solver2.dim()
    }

    /// Echelon basis of the GF(2) coboundary span.
    pub fn coboundary_span_basis(&self) -> &[BitRow] {
        self.solver2.basis()
    }

    /// Basis of the space of 2k-cycles C in K*: subsets such that for each
    /// k-face sigma and (k-1)-face a, an even number of tau containing a has
    /// {sigma,tau} in C. These are exactly the vectors orthogonal to every
    /// elementary coboundary.
    pub fn two_k_cycle_basis(&self) -> &[BitRow] {
        &self.cycle_basis
    }

    /// Integer cycle functionals (kernel of the transposed generator matrix).
    pub fn z_cycle_basis(&self) -> &[Vec<BigInt>] {
        &self.z_side().cycle_basis
    }

    /// Are two GF(2) cocycles cohomologous? On success returns the witness
    /// list of elementary coboundaries summing to the difference.
    pub fn cohomologous2(&self, nu: &Cocycle2, nu_prime: &Cocycle2) -> Option<Witness2> {
        let diff = nu.xor(nu_prime);
        let combo = self.solver2.member(diff.bits())?;
        let terms = combo
            .ones()
            .into_iter()
            .map(|g| {
                let (alpha, sigma) = &self.gen_labels[g];
                (alpha.clone(), sigma.clone())
            })
            .collect();
        Some(Witness2 { terms })
    }

    /// Integer cohomology: is nu - nu' an integer combination of elementary
    /// coboundaries? Exact lattice membership via Hermite reduction.
    pub fn cohomologous_z(&self, nu: &CocycleZ, nu_prime: &CocycleZ) -> Option<WitnessZ> {
        let diff = nu.sub(nu_prime);
        let coeffs = self.z_side().lattice.solve(diff.values())?;
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| {
                let (alpha, sigma) = &self.gen_labels[g];
                (alpha.clone(), sigma.clone(), c.clone())
            })
            .collect();
        Some(WitnessZ { terms })
    }

    /// Evaluate a cocycle on a 2k-cycle (sum over the cycle's pairs).
    pub fn evaluate2(&self, nu: &Cocycle2, cycle: &BitRow) -> bool {
        nu.bits().dot(cycle)
    }

    /// Membership of an indicator vector in the 2k-cycle space, validated
    /// against the direct counting definition.
    pub fn check_two_k_cycle(
        &self,
        complex: &SimplicialComplex,
        cycle: &BitRow,
    ) -> Result<()> {
        let lower = complex.lower_faces();
        for sigma_idx in 0..complex.len() {
            for a in &lower {
                let mut count = 0usize;
                for &idx in self.pairs.pairs_of_face(sigma_idx) {
                    if !cycle.get(idx) {
                        continue;
                    }
                    let (i, j) = self.pairs.pair(idx);
                    let tau = if i == sigma_idx { complex.face(j) } else { complex.face(i) };
                    if tau.contains_all(a.vertices()) {
                        count += 1;
                    }
                }
                if count % 2 != 0 {
                    return Err(Error::NotACycle {
                        face: complex.face(sigma_idx).0.clone(),
                        lower: a.0.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The `[alpha x beta]` bracket of two k-cycles given as GF(2) chains over the
/// k-faces: all pairs {sigma, tau} in K* with sigma in alpha, tau in beta,
/// excluding pairs lying entirely in the intersection of the supports.
pub fn product_cycle(
    pairs: &DeletedPairs,
    alpha: &BitRow,
    beta: &BitRow,
) -> BitRow {
    let mut out = BitRow::zeros(pairs.len());
    for (idx, &(i, j)) in pairs.pairs().iter().enumerate() {
        let both_in_intersection =
            alpha.get(i) && beta.get(i) && alpha.get(j) && beta.get(j);
        if both_in_intersection {
            continue;
        }
        if (alpha.get(i) && beta.get(j)) || (alpha.get(j) && beta.get(i)) {
            out.set(idx, true);
        }
    }
    out
}

/// The C-van Kampen number: the crossing parity of any general position map
/// summed over the 2k-cycle C. Independent of the map.
pub fn vc_number(
    complex: &SimplicialComplex,
    system: &CocycleSystem,
    cycle: &BitRow,
    seed: u64,
) -> Result<bool> {
    system.check_two_k_cycle(complex, cycle)?;
    let map = moment_map(complex, seed)?;
    let nu = intersection_cocycle2(complex, &map)?;
    Ok(system.evaluate2(&nu, cycle))
}

/// Basis of the 2k-cycle space of K*.
pub fn two_k_cycle_space(complex: &SimplicialComplex) -> Result<Vec<BitRow>> {
    Ok(CocycleSystem::new(complex)?.two_k_cycle_basis().to_vec())
}

/// Is the intersection cocycle of a general position map into R^2k
/// cohomologous to zero? For k = 1 this is exactly planarity in the sense of
/// independent-odd-crossing-pair drawings.
pub fn van_kampen_trivial(complex: &SimplicialComplex) -> Result<(bool, Option<Witness2>)> {
    let system = CocycleSystem::new(complex)?;
    let map = moment_map(complex, 0)?;
    let nu = intersection_cocycle2(complex, &map)?;
    let zero = Cocycle2::zeros(nu.len());
    match system.cohomologous2(&nu, &zero) {
        Some(w) => Ok((true, Some(w))),
        None => Ok((false, None)),
    }
}

/// A homomorphism H_k(K;Z2) -> V expressed in the hat basis of a maximal
/// k-forest: columns are the images y_sigma of the hat cycles of the
/// non-forest faces (forest faces map to zero).
#[derive(Clone, Debug)]
pub struct Hom2 {
    /// r x m over GF(2): one column per non-forest face.
    pub matrix: BitMatrix,
}

impl Hom2 {
    pub fn zero(r: usize, m: usize) -> Self {
        Hom2 { matrix: BitMatrix::zeros(r, m) }
    }

    pub fn column(&self, col: usize) -> BitRow {
        let r = self.matrix.nrows();
        let mut v = BitRow::zeros(r);
        for i in 0..r {
            if self.matrix.get(i, col) {
                v.set(i, true);
            }
        }
        v
    }
}

/// Integer analogue of [`Hom2`].
#[derive(Clone, Debug)]
pub struct HomZ {
    pub matrix: Matrix<BigInt>,
}

impl HomZ {
    pub fn zero(r: usize, m: usize) -> Self {
        HomZ { matrix: Matrix::zeros(r, m) }
    }

    pub fn column(&self, col: usize) -> Vec<BigInt> {
        (0..self.matrix.nrows()).map(|i| self.matrix.at(i, col).clone()).collect()
    }
}

/// The omega cocycle of a hat-basis assignment against a GF(2) form: entry
/// at {sigma,tau} is y_sigma^T I y_tau, with y zero on forest faces.
pub fn omega2(
    _complex: &SimplicialComplex,
    pairs: &DeletedPairs,
    forest: &Forest2,
    hom: &Hom2,
    form: &BitMatrix,
) -> Result<Cocycle2> {
    let r = form.nrows();
    if hom.matrix.nrows() != r {
        return Err(Error::DimensionMismatch(format!(
            "homomorphism has {} rows, form has {}",
            hom.matrix.nrows(),
            r
        )));
    }
    if hom.matrix.ncols() != forest.cycle_dim() {
        return Err(Error::DimensionMismatch(format!(
            "homomorphism has {} columns, cycle space has dimension {}",
            hom.matrix.ncols(),
            forest.cycle_dim()
        )));
    }
    let m = forest.cycle_dim();
    let ys: Vec<BitRow> = (0..m).map(|c| hom.column(c)).collect();
    let zs: Vec<BitRow> = ys.iter().map(|y| form.matvec(y)).collect();
    let mut bits = BitRow::zeros(pairs.len());
    for (idx, &(i, j)) in pairs.pairs().iter().enumerate() {
        let (Some(ci), Some(cj)) = (forest.hat_column[i], forest.hat_column[j]) else {
            continue;
        };
        if ys[ci].dot(&zs[cj]) {
            bits.set(idx, true);
        }
    }
    Ok(Cocycle2::new(bits))
}

/// Integer omega cocycle. The form must pair with the dimension parity so
/// the result is super-symmetric: y^T I y' must equal (-1)^k (y'^T I y) on
/// every nonadjacent pair, otherwise the assignment defines no
/// super-symmetric cocycle and an error is returned.
pub fn omega_z(
    complex: &SimplicialComplex,
    pairs: &DeletedPairs,
    forest: &ForestZ,
    hom: &HomZ,
    form: &Matrix<BigInt>,
) -> Result<CocycleZ> {
    let r = form.nrows();
    if form.ncols() != r || hom.matrix.nrows() != r {
        return Err(Error::DimensionMismatch(format!(
            "homomorphism has {} rows, form is {}x{}",
            hom.matrix.nrows(),
            form.nrows(),
            form.ncols()
        )));
    }
    if hom.matrix.ncols() != forest.cycle_dim() {
        return Err(Error::DimensionMismatch(format!(
            "homomorphism has {} columns, cycle lattice has rank {}",
            hom.matrix.ncols(),
            forest.cycle_dim()
        )));
    }
    let k = complex.k();
    let m = forest.cycle_dim();
    let ys: Vec<Vec<BigInt>> = (0..m).map(|c| hom.column(c)).collect();
    let zs: Vec<Vec<BigInt>> = ys.iter().map(|y| form.matvec(y)).collect();
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let mut values = vec![BigInt::zero(); pairs.len()];
    for (idx, &(i, j)) in pairs.pairs().iter().enumerate() {
        let (Some(ci), Some(cj)) = (forest.hat_column[i], forest.hat_column[j]) else {
            continue;
        };
        let forward = dot(&ys[ci], &zs[cj]);
        let backward = dot(&ys[cj], &zs[ci]);
        let expected = if k % 2 == 1 { -backward.clone() } else { backward.clone() };
        if forward != expected {
            return Err(Error::NotSuperSymmetric(idx));
        }
        values[idx] = forward;
    }
    Ok(CocycleZ::new(k, values))
}

/// Intersection cocycles for a complex at a seed, both rings.
pub fn intersection_data(
    complex: &SimplicialComplex,
    seed: u64,
) -> Result<(Cocycle2, CocycleZ)> {
    let map = moment_map(complex, seed)?;
    Ok((
        intersection_cocycle2(complex, &map)?,
        intersection_cocycle_z(complex, &map)?,
    ))
}

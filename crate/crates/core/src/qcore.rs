//! Dense complex-matrix quantum primitives.
//!
//! Everything downstream works with three value types defined here:
//! [`DensityMatrix`] (Hermitian, unit-trace, positive semidefinite, with a
//! record of its tensor factorization), [`Spectrum`] (descending
//! probability vector), and [`BipartiteSplit`]. All operations are pure
//! functions; randomized constructions take the generator explicitly.
//!
//! Index convention: subsystem factors are listed left to right and the
//! composite index is row-major, i.e. for a split (d_a, d_b) the basis
//! vector |a⟩⊗|b⟩ sits at index `a * d_b + b`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::tolerances::{
    EIG_CLAMP, HERMITIAN_TOL, NORMALIZATION_TOL, RANK_TOL, TRACE_TOL,
};
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Which side of a bipartite split an operation acts on or keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A bipartition of a Hilbert space into left and right factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteSplit {
    pub d_a: usize,
    pub d_b: usize,
}

impl BipartiteSplit {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::DimensionMismatch(
                "split factors must be positive".into(),
            ));
        }
        Ok(Self { d_a, d_b })
    }

    pub fn dim(&self) -> usize {
        self.d_a * self.d_b
    }

    /// The smaller of the two local dimensions.
    pub fn d_star(&self) -> usize {
        self.d_a.min(self.d_b)
    }
}

/// Descending probability vector, e.g. the eigenvalues of a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    probs: Vec<f64>,
}

impl Spectrum {
    /// Validates non-negativity, normalization and ordering.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::DimensionMismatch("empty spectrum".into()));
        }
        for w in probs.windows(2) {
            if w[0] < w[1] {
                return Err(Error::OutOfRange(
                    "spectrum entries must be sorted descending".into(),
                ));
            }
        }
        if let Some(&last) = probs.last() {
            if last < -EIG_CLAMP {
                return Err(Error::NotPositive(last));
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace((sum - 1.0).abs()));
        }
        let probs = probs.into_iter().map(|p| p.max(0.0)).collect();
        Ok(Self { probs })
    }

    /// Sorts and clamps raw values; small negatives (within `EIG_CLAMP`)
    /// are zeroed and the vector renormalized.
    pub fn from_raw(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch("empty spectrum".into()));
        }
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        if min < -EIG_CLAMP {
            return Err(Error::NotPositive(min));
        }
        for v in values.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace((sum - 1.0).abs()));
        }
        for v in values.iter_mut() {
            *v /= sum;
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Self { probs: values })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Number of entries above the rank threshold.
    pub fn rank(&self) -> usize {
        self.probs.iter().filter(|&&p| p > RANK_TOL).count()
    }

    /// Entry `i`, or zero past the end. Padding with zeros never changes
    /// any quantity computed from a spectrum.
    pub fn get(&self, i: usize) -> f64 {
        self.probs.get(i).copied().unwrap_or(0.0)
    }

    /// Copy extended (or kept) at length `n` by zero padding.
    pub fn padded(&self, n: usize) -> Spectrum {
        let mut probs = self.probs.clone();
        probs.resize(probs.len().max(n), 0.0);
        Spectrum { probs }
    }

    /// Copy truncated to the first `n` entries. Fails if the discarded
    /// tail carries more than `tol` total weight.
    pub fn truncated(&self, n: usize, tol: f64) -> Result<Spectrum> {
        let tail: f64 = self.probs.iter().skip(n).sum();
        if tail > tol {
            return Err(Error::RankTooLarge {
                rank: self.rank(),
                dim: n,
            });
        }
        let mut probs: Vec<f64> = self.probs.iter().take(n).cloned().collect();
        probs.resize(n, 0.0);
        Ok(Spectrum { probs })
    }
}

/// Complex Hermitian unit-trace positive-semidefinite matrix together
/// with the ordered list of subsystem dimensions it factors over.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    factors: Vec<usize>,
    data: CMatrix,
}

fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut max = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > max {
                max = d;
            }
        }
    }
    max
}

/// Descending eigenvalues of a Hermitian matrix, without any clamping.
/// Suitable for indefinite matrices such as partial transposes.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let dev = hermiticity_deviation(m);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    // Symmetrize to shed the sub-tolerance asymmetry before solving.
    let sym = (m + m.adjoint()).map(|z| z * 0.5);
    let eig = sym.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(vals)
}

/// Descending probability spectrum of a density-like Hermitian matrix.
/// Eigenvalues in `[-EIG_CLAMP, 0)` are clamped to zero and the result
/// renormalized; more negative values are an error.
pub fn hermitian_spectrum(m: &CMatrix) -> Result<Spectrum> {
    let vals = hermitian_eigenvalues(m)?;
    Spectrum::from_raw(vals)
}

impl DensityMatrix {
    /// Validating constructor: Hermiticity, unit trace, positive
    /// semidefiniteness (via a full eigensolve) and consistent factors.
    pub fn new(data: CMatrix, factors: Vec<usize>) -> Result<Self> {
        Self::check_factors(data.nrows(), &factors)?;
        if data.nrows() != data.ncols() {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let dev = hermiticity_deviation(&data);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let trace_dev = (data.trace().re - 1.0).abs().max(data.trace().im.abs());
        if trace_dev > TRACE_TOL {
            return Err(Error::BadTrace(trace_dev));
        }
        let vals = hermitian_eigenvalues(&data)?;
        let min = vals.last().copied().unwrap_or(0.0);
        if min < -EIG_CLAMP {
            return Err(Error::NotPositive(min));
        }
        Ok(Self { factors, data })
    }

    /// Constructor for matrices that are positive semidefinite by
    /// construction (projectors of normalized vectors, partial traces of
    /// valid states). Skips the eigensolve but still checks the cheap
    /// invariants in debug builds.
    pub(crate) fn from_trusted(data: CMatrix, factors: Vec<usize>) -> Self {
        debug_assert!(Self::check_factors(data.nrows(), &factors).is_ok());
        debug_assert!(hermiticity_deviation(&data) <= HERMITIAN_TOL);
        debug_assert!((data.trace().re - 1.0).abs() <= TRACE_TOL);
        Self { factors, data }
    }

    fn check_factors(dim: usize, factors: &[usize]) -> Result<()> {
        if factors.is_empty() || factors.iter().product::<usize>() != dim {
            return Err(Error::DimensionMismatch(format!(
                "factors {:?} do not multiply to dimension {}",
                factors, dim
            )));
        }
        Ok(())
    }

    /// Rank-1 projector |psi⟩⟨psi| of a normalized amplitude vector.
    pub fn from_pure(psi: &CVector, factors: Vec<usize>) -> Result<Self> {
        Self::check_factors(psi.len(), &factors)?;
        let norm_dev = (psi.norm() - 1.0).abs();
        if norm_dev > NORMALIZATION_TOL {
            return Err(Error::NotNormalized(norm_dev));
        }
        let psi = psi / Complex64::from(psi.norm());
        let data = &psi * psi.adjoint();
        Ok(Self::from_trusted(data, factors))
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    /// Same matrix re-tagged with a different factorization.
    pub fn with_factors(&self, factors: Vec<usize>) -> Result<Self> {
        Self::check_factors(self.dim(), &factors)?;
        Ok(Self {
            factors,
            data: self.data.clone(),
        })
    }

    /// Descending eigenvalue spectrum, clamped and renormalized.
    pub fn spectrum(&self) -> Spectrum {
        hermitian_spectrum(&self.data).expect("validated density matrix has a spectrum")
    }

    pub fn purity(&self) -> f64 {
        (&self.data * &self.data).trace().re
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.purity() >= 1.0 - tol
    }

    /// Tensor product, concatenating the factor lists.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let data = self.data.kronecker(&other.data);
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        DensityMatrix::from_trusted(data, factors)
    }

    /// FNV-1a hash over the little-endian bytes of the matrix entries and
    /// the factor list; identifies a state in campaign records.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for &f in &self.factors {
            eat(&(f as u64).to_le_bytes());
        }
        for z in self.data.iter() {
            eat(&z.re.to_le_bytes());
            eat(&z.im.to_le_bytes());
        }
        format!("{:016x}", h)
    }
}

/// Traces out one side of a bipartite state.
pub fn partial_trace(rho: &DensityMatrix, split: BipartiteSplit, keep: Side) -> Result<DensityMatrix> {
    if rho.dim() != split.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} does not factor as {}x{}",
            rho.dim(),
            split.d_a,
            split.d_b
        )));
    }
    let (da, db) = (split.d_a, split.d_b);
    let m = rho.data();
    let out = match keep {
        Side::A => {
            let mut out = CMatrix::zeros(da, da);
            for i in 0..da {
                for j in 0..da {
                    let mut acc = Complex64::ZERO;
                    for k in 0..db {
                        acc += m[(i * db + k, j * db + k)];
                    }
                    out[(i, j)] = acc;
                }
            }
            out
        }
        Side::B => {
            let mut out = CMatrix::zeros(db, db);
            for k in 0..db {
                for l in 0..db {
                    let mut acc = Complex64::ZERO;
                    for i in 0..da {
                        acc += m[(i * db + k, i * db + l)];
                    }
                    out[(k, l)] = acc;
                }
            }
            out
        }
    };
    let kept = match keep {
        Side::A => da,
        Side::B => db,
    };
    Ok(DensityMatrix::from_trusted(out, vec![kept]))
}

/// Transposes the indices of one side of a bipartite state. The result is
/// Hermitian and unit trace but in general not positive.
pub fn partial_transpose(rho: &DensityMatrix, split: BipartiteSplit, side: Side) -> Result<CMatrix> {
    if rho.dim() != split.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} does not factor as {}x{}",
            rho.dim(),
            split.d_a,
            split.d_b
        )));
    }
    let (da, db) = (split.d_a, split.d_b);
    let m = rho.data();
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for a1 in 0..da {
        for b1 in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    let (r, c) = (a1 * db + b1, a2 * db + b2);
                    let src = match side {
                        Side::B => (a1 * db + b2, a2 * db + b1),
                        Side::A => (a2 * db + b1, a1 * db + b2),
                    };
                    out[(r, c)] = m[src];
                }
            }
        }
    }
    Ok(out)
}

/// Reorders the subsystems of a multipartite state. `perm[k]` names the
/// old position of the factor that ends up at position `k`.
pub fn permute_subsystems(rho: &DensityMatrix, perm: &[usize]) -> Result<DensityMatrix> {
    let factors = rho.factors();
    if perm.len() != factors.len() {
        return Err(Error::DimensionMismatch(format!(
            "permutation length {} does not match {} factors",
            perm.len(),
            factors.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::DimensionMismatch("invalid permutation".into()));
        }
        seen[p] = true;
    }
    let n = factors.len();
    let dim = rho.dim();
    // Row-major strides of the original factor list.
    let mut strides = vec![1usize; n];
    for k in (0..n.saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * factors[k + 1];
    }
    let new_factors: Vec<usize> = perm.iter().map(|&p| factors[p]).collect();
    // Maps an original composite index to its position after reordering.
    let relocate = |idx: usize| -> usize {
        let mut out = 0usize;
        for (k, &p) in perm.iter().enumerate() {
            let digit = (idx / strides[p]) % factors[p];
            out = out * new_factors[k] + digit;
        }
        out
    };
    let m = rho.data();
    let mut out = CMatrix::zeros(dim, dim);
    let map: Vec<usize> = (0..dim).map(relocate).collect();
    for i in 0..dim {
        for j in 0..dim {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    Ok(DensityMatrix::from_trusted(out, new_factors))
}

/// Complex Gaussian (Ginibre) matrix with unit-variance entries.
pub fn ginibre_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Normalized Haar-uniform random state vector.
pub fn random_state_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let n = v.norm();
        if n > 1e-12 {
            return v / Complex64::from(n);
        }
    }
}

/// Haar-uniform random pure state as a rank-1 projector.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let psi = random_state_vector(dim, rng);
    DensityMatrix::from_pure(&psi, vec![dim]).expect("normalized vector")
}

/// Hilbert-Schmidt-measure random mixed state of the requested rank,
/// built as the normalized product of a dim x rank Ginibre factor.
pub fn random_density_matrix<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::BadRank { rank, dim });
    }
    loop {
        let g = ginibre_matrix(dim, rank, rng);
        let w = &g * g.adjoint();
        let tr = w.trace().re;
        if tr > 1e-12 {
            let data = w.map(|z| z / tr);
            return Ok(DensityMatrix::from_trusted(data, vec![dim]));
        }
    }
}

/// Haar-distributed random unitary via QR of a Ginibre matrix with the
/// phases of the R diagonal folded back in.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = ginibre_matrix(dim, dim, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / Complex64::from(d.norm())
        } else {
            Complex64::ONE
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Pure three-qubit state in the permutation-symmetric subspace spanned by
/// |000⟩, W, W-bar, |111⟩, where W symmetrizes |001⟩ and W-bar |011⟩.
pub fn symmetric_three_qubit_pure(coeffs: [Complex64; 4]) -> Result<DensityMatrix> {
    let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized((norm - 1.0).abs()));
    }
    let s3 = Complex64::from(1.0 / 3.0f64.sqrt());
    let mut psi = CVector::zeros(8);
    psi[0] = coeffs[0];
    // W = (|001> + |010> + |100>)/sqrt(3)
    psi[1] = coeffs[1] * s3;
    psi[2] = coeffs[1] * s3;
    psi[4] = coeffs[1] * s3;
    // W-bar = (|011> + |101> + |110>)/sqrt(3)
    psi[3] = coeffs[2] * s3;
    psi[5] = coeffs[2] * s3;
    psi[6] = coeffs[2] * s3;
    psi[7] = coeffs[3];
    DensityMatrix::from_pure(&psi, vec![2, 2, 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn bell_vector() -> CVector {
        let s = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
        let mut v = CVector::zeros(4);
        v[0] = s;
        v[3] = s;
        v
    }

    #[test]
    fn spectrum_of_identity_over_two() {
        let m = CMatrix::identity(2, 2).map(|z| z * 0.5);
        let s = hermitian_spectrum(&m).unwrap();
        assert_eq!(s.probs(), &[0.5, 0.5]);
    }

    #[test]
    fn spectrum_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.7, 0.0), c(0.3, 0.0)]));
        let s = hermitian_spectrum(&m).unwrap();
        assert!((s.get(0) - 0.7).abs() < 1e-14);
        assert!((s.get(1) - 0.3).abs() < 1e-14);
    }

    #[test]
    fn spectrum_of_bell_projector() {
        let rho = DensityMatrix::from_pure(&bell_vector(), vec![2, 2]).unwrap();
        let s = rho.spectrum();
        assert!((s.get(0) - 1.0).abs() < 1e-12);
        for i in 1..4 {
            assert!(s.get(i).abs() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = c(0.5, 0.0);
        assert!(matches!(
            hermitian_spectrum(&m),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let rho = DensityMatrix::from_pure(&bell_vector(), vec![2, 2]).unwrap();
        let a = partial_trace(&rho, BipartiteSplit::new(2, 2).unwrap(), Side::A).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 0.5 } else { 0.0 };
                assert!((a.data()[(i, j)] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_of_product_returns_factor() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..20 {
            let r1 = random_density_matrix(2, 2, &mut rng).unwrap();
            let r2 = random_density_matrix(3, 3, &mut rng).unwrap();
            let prod = r1.tensor(&r2);
            let back = partial_trace(&prod, BipartiteSplit::new(2, 3).unwrap(), Side::A).unwrap();
            let diff = (back.data() - r1.data()).norm();
            assert!(diff < 1e-12, "partial trace broke product structure: {diff}");
            let back_b =
                partial_trace(&prod, BipartiteSplit::new(2, 3).unwrap(), Side::B).unwrap();
            assert!((back_b.data() - r2.data()).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_schmidt_state() {
        let p: f64 = 0.8;
        let mut v = CVector::zeros(4);
        v[0] = c(p.sqrt(), 0.0);
        v[3] = c((1.0 - p).sqrt(), 0.0);
        let rho = DensityMatrix::from_pure(&v, vec![2, 2]).unwrap();
        let a = partial_trace(&rho, BipartiteSplit::new(2, 2).unwrap(), Side::A).unwrap();
        assert!((a.data()[(0, 0)].re - 0.8).abs() < 1e-14);
        assert!((a.data()[(1, 1)].re - 0.2).abs() < 1e-14);
        assert!(a.data()[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn partial_transpose_of_bell_has_negative_eigenvalue() {
        let rho = DensityMatrix::from_pure(&bell_vector(), vec![2, 2]).unwrap();
        let pt = partial_transpose(&rho, BipartiteSplit::new(2, 2).unwrap(), Side::B).unwrap();
        let mut vals = hermitian_eigenvalues(&pt).unwrap();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let want = [0.5, 0.5, 0.5, -0.5];
        for (v, w) in vals.iter().zip(want.iter()) {
            assert!((v - w).abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn partial_transpose_involution_and_trace() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let split = BipartiteSplit::new(2, 3).unwrap();
        for _ in 0..50 {
            let rho = random_density_matrix(6, 6, &mut rng)
                .unwrap()
                .with_factors(vec![2, 3])
                .unwrap();
            let pt = partial_transpose(&rho, split, Side::B).unwrap();
            assert!((pt.trace().re - 1.0).abs() < 1e-12);
            let ptpt_rho = DensityMatrix::from_trusted(pt.clone(), vec![2, 3]);
            let back = partial_transpose(&ptpt_rho, split, Side::B).unwrap();
            // Bit-identical: pure index shuffling, no arithmetic.
            assert_eq!(back, *rho.data());
        }
    }

    #[test]
    fn product_state_partial_transpose_keeps_spectrum() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let r1 = random_density_matrix(2, 2, &mut rng).unwrap();
        let r2 = random_density_matrix(2, 2, &mut rng).unwrap();
        let prod = r1.tensor(&r2);
        let pt = partial_transpose(&prod, BipartiteSplit::new(2, 2).unwrap(), Side::B).unwrap();
        let s1 = hermitian_spectrum(&pt).unwrap();
        let s2 = prod.spectrum();
        for i in 0..4 {
            assert!((s1.get(i) - s2.get(i)).abs() < 1e-12);
        }
    }

    #[test]
    fn random_pure_state_is_a_projector() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let one = random_pure_state(1, &mut rng);
        assert!((one.data()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        for dim in [2usize, 3, 5] {
            let rho = random_pure_state(dim, &mut rng);
            assert!((rho.purity() - 1.0).abs() < 1e-12);
            assert!((rho.data().trace().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_density_matrix_rank_control() {
        let mut rng = ChaCha12Rng::seed_from_u64(19);
        let r = random_density_matrix(3, 2, &mut rng).unwrap();
        let s = r.spectrum();
        assert_eq!(s.rank(), 2);
        assert!(s.get(2) < 1e-12);
        assert!(matches!(
            random_density_matrix(2, 3, &mut rng),
            Err(Error::BadRank { .. })
        ));
        let full = random_density_matrix(2, 2, &mut rng).unwrap();
        assert!((full.spectrum().probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let u1 = random_unitary(1, &mut rng);
        assert!((u1[(0, 0)].norm() - 1.0).abs() < 1e-12);
        for dim in [2usize, 3, 4] {
            let u = random_unitary(dim, &mut rng);
            let dev = (u.adjoint() * &u - CMatrix::identity(dim, dim)).norm();
            assert!(dev < 1e-10, "U^dag U deviates by {dev}");
            assert!((u.determinant().norm() - 1.0).abs() < 1e-10);
            // The maximally mixed state is untouched by conjugation.
            let mixed = CMatrix::identity(dim, dim).map(|z| z / dim as f64);
            let conj = &u * &mixed * u.adjoint();
            assert!((&conj - &mixed).norm() < 1e-12);
        }
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum() {
        let mut rng = ChaCha12Rng::seed_from_u64(29);
        for _ in 0..20 {
            let rho = random_density_matrix(4, 4, &mut rng).unwrap();
            let u = random_unitary(4, &mut rng);
            let rotated = &u * rho.data() * u.adjoint();
            let s1 = hermitian_spectrum(&rotated).unwrap();
            let s2 = rho.spectrum();
            for i in 0..4 {
                assert!((s1.get(i) - s2.get(i)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn symmetric_three_qubit_states() {
        let zero = symmetric_three_qubit_pure([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!((zero.data()[(0, 0)].re - 1.0).abs() < 1e-14);

        let w = symmetric_three_qubit_pure([c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        // All two-qubit reductions of W are identical.
        let r12 = partial_trace(&w, BipartiteSplit::new(4, 2).unwrap(), Side::A).unwrap();
        let w23 = permute_subsystems(&w, &[1, 2, 0]).unwrap();
        let r23 = partial_trace(&w23, BipartiteSplit::new(4, 2).unwrap(), Side::A).unwrap();
        assert!((r12.data() - r23.data()).norm() < 1e-12);

        let s = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
        let ghz = symmetric_three_qubit_pure([s, c(0.0, 0.0), c(0.0, 0.0), s]).unwrap();
        let one = partial_trace(&ghz, BipartiteSplit::new(2, 4).unwrap(), Side::A).unwrap();
        assert!((one.data()[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((one.data()[(1, 1)].re - 0.5).abs() < 1e-12);
        assert!(one.data()[(0, 1)].norm() < 1e-12);

        let bad = symmetric_three_qubit_pure([c(1.0, 0.0); 4]);
        assert!(matches!(bad, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn permutation_invariance_of_symmetric_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        let v = random_state_vector(4, &mut rng);
        let coeffs = [v[0], v[1], v[2], v[3]];
        let rho = symmetric_three_qubit_pure(coeffs).unwrap();
        for perm in [[1usize, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0]] {
            let swapped = permute_subsystems(&rho, &perm).unwrap();
            assert!((swapped.data() - rho.data()).norm() < 1e-10);
        }
    }

    #[test]
    fn permute_subsystems_roundtrip() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        let rho = random_density_matrix(8, 8, &mut rng)
            .unwrap()
            .with_factors(vec![2, 2, 2])
            .unwrap();
        let fwd = permute_subsystems(&rho, &[1, 2, 0]).unwrap();
        let back = permute_subsystems(&fwd, &[2, 0, 1]).unwrap();
        assert_eq!(back.data(), rho.data());
    }

    #[test]
    fn spectrum_helpers() {
        let s = Spectrum::new(vec![0.6, 0.4]).unwrap();
        assert_eq!(s.padded(4).probs(), &[0.6, 0.4, 0.0, 0.0]);
        assert_eq!(s.padded(1).len(), 2);
        let t = Spectrum::new(vec![0.5, 0.5, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(t.truncated(4, 1e-10).unwrap().len(), 4);
        assert!(Spectrum::new(vec![0.7, 0.2]).is_err());
        assert!(Spectrum::new(vec![0.2, 0.8]).is_err());
    }

    #[test]
    fn reduced_purity_agrees_between_two_samplers() {
        // Two independently coded Haar samplers: Gaussian-vector
        // normalization vs first column of a Haar unitary. Their mean
        // reduced purities over a 2x2 split must agree statistically.
        let n = 10_000;
        let split = BipartiteSplit::new(2, 2).unwrap();
        let run = |mut sample: Box<dyn FnMut() -> DensityMatrix>| -> (f64, f64) {
            let purities: Vec<f64> = (0..n)
                .map(|_| {
                    let rho = sample();
                    partial_trace(&rho.with_factors(vec![2, 2]).unwrap(), split, Side::A)
                        .unwrap()
                        .purity()
                })
                .collect();
            let mean = purities.iter().sum::<f64>() / n as f64;
            let var = purities.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (mean, (var / n as f64).sqrt())
        };
        let mut rng1 = ChaCha12Rng::seed_from_u64(1234);
        let (m1, se1) = run(Box::new(move || random_pure_state(4, &mut rng1)));
        let mut rng2 = ChaCha12Rng::seed_from_u64(5678);
        let (m2, se2) = run(Box::new(move || {
            let u = random_unitary(4, &mut rng2);
            let psi = CVector::from_column_slice(u.column(0).as_slice());
            DensityMatrix::from_pure(&psi, vec![4]).unwrap()
        }));
        let se = (se1 * se1 + se2 * se2).sqrt();
        assert!(
            (m1 - m2).abs() <= 3.0 * se,
            "sampler means {m1} vs {m2} differ beyond 3 standard errors ({se})"
        );
        // Haar expectation of the reduced purity for a 2x2 split.
        let exact = (2.0 + 2.0) / (2.0 * 2.0 + 1.0);
        assert!((m1 - exact).abs() <= 4.0 * se1);
    }
}

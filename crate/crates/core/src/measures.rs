//! Concrete resource measures and entanglement monotone evaluators.
//!
//! A [`MeasureDescriptor`] names one resource measure R_d together with
//! its dimension; [`MeasureDescriptor::sup_value`] is the supremum
//! R_d^sup appearing on the right-hand side of the monogamy inequality.
//! Negativity is normalized as the plain sum of the absolute values of
//! the negative partial-transpose eigenvalues, so that the two-qubit
//! maximum is 1/2.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::entropies::{binary_entropy, entropy, shannon_of, EntropyKind};
use crate::qcore::{
    hermitian_eigenvalues, partial_trace, partial_transpose, BipartiteSplit, CMatrix,
    DensityMatrix, Side, Spectrum,
};
use crate::tolerances::{HERMITIAN_TOL, PURITY_TOL};
use crate::{Error, Result};

/// Identifies one resource measure.
#[derive(Debug, Clone)]
pub enum MeasureDescriptor {
    /// Relative entropy of coherence with respect to the basis given by
    /// the columns of a unitary.
    CoherenceRelEnt { dim: usize, basis: CMatrix },
    /// log d minus the von Neumann entropy.
    NonuniformityVN { dim: usize },
    /// log d minus a Rényi entropy of the given positive order.
    NonuniformityRenyi { dim: usize, order: f64 },
    /// Tsallis-based nonuniformity: R_sup - d^(q-1) S_T.
    NonuniformityTsallis { dim: usize, order: f64 },
    /// Negativity of a two-qubit system; its orbit supremum over a
    /// spectrum has a closed form.
    NegativityTwoQubitSpectrum,
}

impl MeasureDescriptor {
    pub fn coherence(basis: CMatrix) -> Result<Self> {
        let dim = basis.nrows();
        let dev = (basis.adjoint() * &basis - CMatrix::identity(dim, dim)).norm();
        if dev > HERMITIAN_TOL {
            return Err(Error::DimensionMismatch(format!(
                "coherence basis is not unitary (deviation {dev:.3e})"
            )));
        }
        Ok(Self::CoherenceRelEnt { dim, basis })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::CoherenceRelEnt { dim, .. }
            | Self::NonuniformityVN { dim }
            | Self::NonuniformityRenyi { dim, .. }
            | Self::NonuniformityTsallis { dim, .. } => *dim,
            Self::NegativityTwoQubitSpectrum => 4,
        }
    }

    /// The supremum of the measure over all states of its dimension.
    pub fn sup_value(&self) -> f64 {
        match self {
            Self::CoherenceRelEnt { dim, .. }
            | Self::NonuniformityVN { dim }
            | Self::NonuniformityRenyi { dim, .. } => (*dim as f64).ln(),
            Self::NonuniformityTsallis { dim, order } => {
                let d = *dim as f64;
                (d.powf(order - 1.0) - 1.0) / (order - 1.0)
            }
            Self::NegativityTwoQubitSpectrum => 0.5,
        }
    }

    /// Evaluates the measure at a state of matching dimension.
    pub fn eval(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "measure dimension {} vs state dimension {}",
                self.dim(),
                rho.dim()
            )));
        }
        match self {
            Self::CoherenceRelEnt { basis, .. } => rel_ent_coherence(rho, basis),
            Self::NonuniformityVN { .. } => nonuniformity(rho, EntropyKind::VonNeumann),
            Self::NonuniformityRenyi { order, .. } => {
                nonuniformity(rho, EntropyKind::Renyi(*order))
            }
            Self::NonuniformityTsallis { order, .. } => {
                nonuniformity(rho, EntropyKind::Tsallis(*order))
            }
            Self::NegativityTwoQubitSpectrum => negativity(rho, BipartiteSplit::new(2, 2)?),
        }
    }

    /// Whether the measure is a function of the spectrum alone, in which
    /// case its orbit supremum has a closed form.
    pub fn is_spectrum_only(&self) -> bool {
        !matches!(self, Self::CoherenceRelEnt { .. })
    }
}

/// Relative entropy of coherence: Shannon entropy of the populations in
/// the given basis minus the von Neumann entropy of the state.
pub fn rel_ent_coherence(rho: &DensityMatrix, basis: &CMatrix) -> Result<f64> {
    if basis.nrows() != rho.dim() || basis.ncols() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis is {}x{}, state dimension {}",
            basis.nrows(),
            basis.ncols(),
            rho.dim()
        )));
    }
    let rotated = basis.adjoint() * rho.data() * basis;
    let populations: Vec<f64> = (0..rho.dim())
        .map(|i| rotated[(i, i)].re.max(0.0))
        .collect();
    let svn = entropy(&rho.spectrum(), EntropyKind::VonNeumann)?;
    Ok((shannon_of(&populations) - svn).max(0.0))
}

/// Nonuniformity of a state for the requested entropy family.
pub fn nonuniformity(rho: &DensityMatrix, kind: EntropyKind) -> Result<f64> {
    nonuniformity_of_spectrum(&rho.spectrum(), rho.dim(), kind)
}

/// Spectrum-level nonuniformity; `dim` is the measure dimension d.
pub fn nonuniformity_of_spectrum(spec: &Spectrum, dim: usize, kind: EntropyKind) -> Result<f64> {
    let d = dim as f64;
    let value = match kind.normalized()? {
        EntropyKind::Tsallis(q) => {
            let sup = (d.powf(q - 1.0) - 1.0) / (q - 1.0);
            sup - d.powf(q - 1.0) * entropy(spec, EntropyKind::Tsallis(q))?
        }
        kind => d.ln() - entropy(spec, kind)?,
    };
    Ok(value.max(0.0))
}

/// Sum of the absolute values of the negative partial-transpose
/// eigenvalues. Zero on product (and all PPT) states; (d*-1)/2 on
/// maximally entangled ones.
pub fn negativity(rho: &DensityMatrix, split: BipartiteSplit) -> Result<f64> {
    let pt = partial_transpose(rho, split, Side::B)?;
    let vals = hermitian_eigenvalues(&pt)?;
    Ok(vals.iter().filter(|&&v| v < 0.0).map(|v| -v).sum())
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    // sigma_y (x) sigma_y is antidiagonal (-1, 1, 1, -1).
    let mut yy = CMatrix::zeros(4, 4);
    yy[(0, 3)] = Complex64::new(-1.0, 0.0);
    yy[(1, 2)] = Complex64::new(1.0, 0.0);
    yy[(2, 1)] = Complex64::new(1.0, 0.0);
    yy[(3, 0)] = Complex64::new(-1.0, 0.0);
    let rho_tilde = &yy * rho.data().map(|z| z.conj()) * &yy;

    // The eigenvalues of rho * rho_tilde equal those of the Hermitian
    // product sqrt(rho) rho_tilde sqrt(rho).
    let eig = rho.data().clone().symmetric_eigen();
    let mut sqrt_rho = CMatrix::zeros(4, 4);
    for k in 0..4 {
        let lam = Complex64::from(eig.eigenvalues[k].max(0.0).sqrt());
        let v = eig.eigenvectors.column(k);
        for i in 0..4 {
            for j in 0..4 {
                sqrt_rho[(i, j)] += v[i] * v[j].conj() * lam;
            }
        }
    }
    let core = &sqrt_rho * rho_tilde * &sqrt_rho;
    let sym = (&core + core.adjoint()).map(|z| z * 0.5);
    // The square root amplifies float noise around zero eigenvalues
    // (sqrt(1e-16) = 1e-8), so zero out anything at noise level first.
    let mut lambdas: Vec<f64> = sym
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&v| if v > 1e-13 { v.sqrt() } else { 0.0 })
        .collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Entanglement of formation of a two-qubit state (nats), via the
/// concurrence closed form.
pub fn eof_wootters(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence(rho)?;
    let x = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
    binary_entropy(x)
}

/// Entanglement of a pure bipartite state: the supplied spectrum entropy
/// applied to the reduced state.
pub fn pure_state_entanglement<F>(
    rho: &DensityMatrix,
    split: BipartiteSplit,
    entropy_fn: F,
) -> Result<f64>
where
    F: Fn(&Spectrum) -> Result<f64>,
{
    let purity = rho.purity();
    if purity < 1.0 - PURITY_TOL {
        return Err(Error::NotPure(purity));
    }
    let reduced = partial_trace(rho, split, Side::A)?;
    entropy_fn(&reduced.spectrum())
}

/// Maximal two-qubit negativity attainable on the unitary orbit of a
/// spectrum: max{0, sqrt((p1-p3)^2 + (p2-p4)^2) - p2 - p4} / 2 on the
/// descending entries, zero-padded to four.
pub fn neg_spectrum_g(spec: &Spectrum) -> Result<f64> {
    if spec.len() > 4 {
        return Err(Error::TooManyEntries(spec.len()));
    }
    let (p1, p2, p3, p4) = (spec.get(0), spec.get(1), spec.get(2), spec.get(3));
    let h = ((p1 - p3).powi(2) + (p2 - p4).powi(2)).sqrt() - p2 - p4;
    Ok(h.max(0.0) / 2.0)
}

/// Conjugates a state by a unitary, re-symmetrizing the float residue.
pub fn conjugate(rho: &DensityMatrix, u: &DMatrix<Complex64>) -> DensityMatrix {
    let data = u * rho.data() * u.adjoint();
    let sym = (&data + data.adjoint()).map(|z| z * 0.5);
    DensityMatrix::from_trusted(sym, rho.factors().to_vec())
}

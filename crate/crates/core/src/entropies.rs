//! Spectrum entropies and majorization predicates.
//!
//! All values are in nats. Zero entries contribute nothing to
//! Shannon-type sums (the usual `0 log 0 = 0` convention), so every
//! entropy here is invariant under zero padding of the spectrum.

use crate::qcore::Spectrum;
use crate::tolerances::MAJORIZATION_SLACK;
use crate::{Error, Result};

/// The entropy families supported on spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyKind {
    VonNeumann,
    /// Rényi entropy of positive order, order 1 excluded (it is the
    /// von Neumann limit; requests at exactly 1 are normalized to it).
    Renyi(f64),
    /// Tsallis entropy of positive order, order 1 likewise normalized.
    Tsallis(f64),
    /// Binary entropy of the leading probability; meaningful for
    /// spectra of rank at most 2.
    Binary,
}

impl EntropyKind {
    /// Replaces order-1 Rényi/Tsallis requests by the von Neumann limit
    /// and rejects non-positive orders.
    pub fn normalized(self) -> Result<Self> {
        match self {
            EntropyKind::Renyi(a) | EntropyKind::Tsallis(a) if a <= 0.0 => Err(Error::BadOrder(a)),
            EntropyKind::Renyi(a) if a == 1.0 => Ok(EntropyKind::VonNeumann),
            EntropyKind::Tsallis(q) if q == 1.0 => Ok(EntropyKind::VonNeumann),
            other => Ok(other),
        }
    }
}

/// Shannon entropy of an arbitrary non-negative weight vector (nats).
/// Unlike [`entropy`] this does not require a sorted, normalized
/// [`Spectrum`]; it is the workhorse for population entropies.
pub fn shannon_of(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum()
}

/// Entropy of a spectrum for the requested family, in nats.
pub fn entropy(spec: &Spectrum, kind: EntropyKind) -> Result<f64> {
    match kind.normalized()? {
        EntropyKind::VonNeumann => Ok(shannon_of(spec.probs())),
        EntropyKind::Renyi(a) => {
            let s: f64 = spec.probs().iter().map(|&p| p.powf(a)).sum();
            Ok(s.ln() / (1.0 - a))
        }
        EntropyKind::Tsallis(q) => {
            let s: f64 = spec.probs().iter().map(|&p| p.powf(q)).sum();
            Ok((1.0 - s) / (q - 1.0))
        }
        EntropyKind::Binary => binary_entropy(spec.get(0)),
    }
}

/// Shannon entropy of a two-outcome distribution (p, 1-p), in nats.
pub fn binary_entropy(p: f64) -> Result<f64> {
    // Tolerate float overshoot from populations computed upstream.
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::OutOfRange(format!("binary entropy argument {p}")));
    }
    let p = p.clamp(0.0, 1.0);
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.ln();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).ln();
    }
    Ok(h)
}

/// True iff `a` majorizes `b`: every partial sum of `a` dominates the
/// corresponding partial sum of `b` (within a small slack). The shorter
/// spectrum is zero-padded.
pub fn majorizes(a: &Spectrum, b: &Spectrum) -> bool {
    let n = a.len().max(b.len());
    let mut sa = 0.0;
    let mut sb = 0.0;
    for i in 0..n {
        sa += a.get(i);
        sb += b.get(i);
        if sa < sb - MAJORIZATION_SLACK {
            return false;
        }
    }
    true
}

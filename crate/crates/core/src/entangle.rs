//! Conjugate pairing, generalized GHZ bases, and entanglement
//! verification.
//!
//! The generating move: add or subtract a state and its level conjugate
//! (letterwise i -> n+1-i) and normalize. Applied across a coupled
//! |j,m;d> basis this yields 2^N mutually orthogonal qubit states; the
//! root-of-unity construction in [`ghz_basis`] yields n^N mutually
//! orthogonal states that are all maximally entangled.
//!
//! Verification is by the reduced-density-matrix criterion: a state is
//! maximally entangled when every single-particle RDM is (1/n)·Identity
//! within tolerance.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{
    conjugate_state, inner_product, reduced_density_matrix, von_neumann_entropy, BasisWord,
    SpaceSpec, StateVector,
};
use crate::symmetry::{coupled_basis, sector_basis, Convention, CoupledLabel};
use crate::tableaux::{enumerate_partitions, Partition};
use crate::tol;

/// Full-basis constructions materialize n^N states of dimension n^N;
/// past this side length that much dense storage stops being sensible.
pub const MAX_FULL_BASIS_DIM: usize = 2048;

/// What a paired state was built from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSource {
    Coupled(CoupledLabel),
    Word(BasisWord),
}

/// Provenance tag mirroring [`PairSource`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CoupledPairing,
    WordPairing,
}

/// A normalized state of the form (ψ + phase·conj ψ)/‖·‖, remembering
/// where ψ came from. Self-conjugate states enter with the phase that
/// reproduces them.
#[derive(Debug, Clone, Serialize)]
pub struct PairedState {
    pub source: PairSource,
    pub phase: Complex64,
    #[serde(skip)]
    pub vector: StateVector,
}

impl PairedState {
    pub fn provenance(&self) -> Provenance {
        match self.source {
            PairSource::Coupled(_) => Provenance::CoupledPairing,
            PairSource::Word(_) => Provenance::WordPairing,
        }
    }
}

/// If ψ is parallel to its level conjugate, the unit factor c with
/// conj ψ = c·ψ, returned conjugated (the phase that makes
/// ψ + phase·conj ψ a positive multiple of ψ).
fn self_conjugate_phase(psi: &StateVector) -> Result<Option<Complex64>> {
    let conj = conjugate_state(psi);
    let overlap = inner_product(psi, &conj)?;
    if overlap.norm() > 1.0 - tol::STRUCTURAL_TOL {
        Ok(Some((overlap / overlap.norm()).conj()))
    } else {
        Ok(None)
    }
}

/// normalize(ψ + phase·conj ψ). Errors when ψ is parallel to its
/// conjugate (e.g. the two-qubit singlet), where the sum degenerates to
/// zero or to ψ itself for every phase.
pub fn pair_conjugates(
    source: PairSource,
    psi: &StateVector,
    phase: Complex64,
) -> Result<PairedState> {
    if !psi.is_normalized() {
        return Err(Error::Domain(format!(
            "conjugate pairing needs a normalized state; norm is {}",
            psi.norm()
        )));
    }
    if (phase.norm() - 1.0).abs() > tol::NORM_TOL {
        return Err(Error::Domain(format!(
            "pairing phase must have modulus 1; got |{phase}| = {}",
            phase.norm()
        )));
    }
    if self_conjugate_phase(psi)?.is_some() {
        return Err(Error::DegeneratePair);
    }
    let conj = conjugate_state(psi);
    let vector = StateVector::linear_combination(&[(Complex64::ONE, psi), (phase, &conj)])?
        .into_normalized()?;
    Ok(PairedState {
        source,
        phase,
        vector,
    })
}

/// The 2^N-state qubit basis built by conjugate pairing across the
/// sequential coupled basis: every |j,m;d> with m > 0 pairs with its
/// conjugate under both signs, and each self-conjugate |j,0;d> enters
/// unpaired. Mutually orthogonal and complete.
pub fn pair_basis(particles: u32) -> Result<Vec<PairedState>> {
    if !(2..=6).contains(&particles) {
        return Err(Error::Bounds {
            what: "pair-basis particle count N",
            value: particles as i64,
            limit: "2..=6",
        });
    }
    let coupled = coupled_basis(particles, Convention::SequentialCoupling)?;
    let mut out = Vec::with_capacity(1 << particles);
    for (label, state) in &coupled {
        if label.twice_m() < 0 {
            continue; // consumed as the conjugate partner of its mirror
        }
        if label.twice_m() == 0 {
            let phase = self_conjugate_phase(state)?.ok_or_else(|| {
                Error::Numerical(format!("{label} is not self-conjugate as expected"))
            })?;
            out.push(PairedState {
                source: PairSource::Coupled(*label),
                phase,
                vector: state.clone(),
            });
            continue;
        }
        for sign in [1.0, -1.0] {
            out.push(pair_conjugates(
                PairSource::Coupled(*label),
                state,
                Complex64::new(sign, 0.0),
            )?);
        }
    }
    Ok(out)
}

// n-th roots of unity with exact values where the angle lands on an axis
fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|r| {
            let angle = 2.0 * std::f64::consts::PI * r as f64 / n as f64;
            let mut z = Complex64::from_polar(1.0, angle);
            for part in [&mut z.re, &mut z.im] {
                if part.abs() < 1e-15 {
                    *part = 0.0;
                } else if (part.abs() - 1.0).abs() < 1e-15 {
                    *part = part.signum();
                }
            }
            z
        })
        .collect()
}

/// The full orthogonal basis of maximally entangled states
///   v[k; a₂..a_N] = (1/√n) Σ_ℓ ω^{kℓ} |ℓ, ℓ⊕a₂, ..., ℓ⊕a_N>
/// with ω = exp(2πi/n) and ⊕ addition mod n on 0-indexed levels; k and
/// each a run over 0..n, giving n^N states. Output index is
/// k·n^(N−1) + (a₂..a_N read as a base-n number). At n = 2 this reduces
/// to (|w> ± |w̄>)/√2.
pub fn ghz_basis(space: SpaceSpec) -> Result<Vec<StateVector>> {
    let dim = space.dim();
    if dim > MAX_FULL_BASIS_DIM {
        return Err(Error::Bounds {
            what: "full-basis dimension n^N",
            value: dim as i64,
            limit: "1..=2048",
        });
    }
    let n = space.levels() as usize;
    let particles = space.particles() as usize;
    let roots = roots_of_unity(n);
    let shift_count = dim / n; // n^(N-1) offset tuples
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = Vec::with_capacity(dim);
    for k in 0..n {
        for shifts in 0..shift_count {
            // decode a₂..a_N from the base-n number `shifts`
            let mut offsets = vec![0usize; particles - 1];
            let mut rest = shifts;
            for slot in offsets.iter_mut().rev() {
                *slot = rest % n;
                rest /= n;
            }
            let mut amps = vec![Complex64::ZERO; dim];
            for level in 0..n {
                let mut idx = level;
                for &offset in &offsets {
                    idx = idx * n + (level + offset) % n;
                }
                amps[idx] = roots[(k * level) % n] * scale;
            }
            out.push(StateVector::from_amplitudes(space, amps)?);
        }
    }
    Ok(out)
}

/// Per-particle entropies and the maximality verdict of one state.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    /// Von Neumann entropy (bits) of each single-particle RDM.
    #[serde(rename = "entropies")]
    pub per_particle_entropy: Vec<f64>,
    #[serde(skip)]
    pub min_entropy: f64,
    #[serde(skip)]
    pub max_entropy: f64,
    /// True iff every single-particle RDM deviates from (1/n)·Identity
    /// by less than the tolerance (max-abs entry).
    pub maximal: bool,
    #[serde(rename = "tolerance")]
    pub tolerance_used: f64,
    /// Largest observed RDM deviation across particles.
    pub rdm_deviation: f64,
}

/// Evaluate the maximal-mixedness criterion on every single particle.
pub fn verify_entanglement(psi: &StateVector, tolerance: f64) -> Result<EntanglementReport> {
    if psi.space().particles() < 2 {
        return Err(Error::Domain(
            "entanglement verification needs at least two particles".into(),
        ));
    }
    if (psi.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::Domain(format!(
            "state is not normalized: norm = {}",
            psi.norm()
        )));
    }
    if tolerance <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance must be positive; got {tolerance}"
        )));
    }
    let particles = psi.space().particles() as usize;
    let mut entropies = Vec::with_capacity(particles);
    let mut deviation: f64 = 0.0;
    for p in 0..particles {
        let rdm = reduced_density_matrix(psi, &[p])?;
        entropies.push(von_neumann_entropy(&rdm)?);
        deviation = deviation.max(rdm.max_deviation_from_maximally_mixed());
    }
    let min_entropy = entropies.iter().copied().fold(f64::INFINITY, f64::min);
    let max_entropy = entropies.iter().copied().fold(0.0, f64::max);
    Ok(EntanglementReport {
        per_particle_entropy: entropies,
        min_entropy,
        max_entropy,
        maximal: deviation < tolerance,
        tolerance_used: tolerance,
        rdm_deviation: deviation,
    })
}

/// Mean single-particle entropy per weight m across one (j, d) manifold,
/// sorted by m descending. Errors when the labels mix manifolds.
pub fn manifold_profile(manifold: &[(CoupledLabel, StateVector)]) -> Result<Vec<(f64, f64)>> {
    let (first, _) = manifold
        .first()
        .ok_or_else(|| Error::Domain("manifold profile of an empty manifold".into()))?;
    let expected = (first.twice_j(), first.copy());
    let mut points = Vec::with_capacity(manifold.len());
    for (label, state) in manifold {
        if (label.twice_j(), label.copy()) != expected {
            return Err(Error::Domain(format!(
                "manifold mixes (j={}, d={}) with (j={}, d={})",
                first.j(),
                first.copy(),
                label.j(),
                label.copy()
            )));
        }
        let particles = state.space().particles() as usize;
        let mut total = 0.0;
        for p in 0..particles {
            total += von_neumann_entropy(&reduced_density_matrix(state, &[p])?)?;
        }
        points.push((label.m(), total / particles as f64));
    }
    points.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    Ok(points)
}

/// One conjugate-pairing candidate drawn from a sector basis.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateReport {
    pub phase: Complex64,
    #[serde(skip)]
    pub state: StateVector,
    pub report: EntanglementReport,
}

/// One symmetry sector of the decomposition.
#[derive(Debug, Clone)]
pub struct SectorReport {
    pub partition: Partition,
    pub dimension: usize,
    pub basis: Vec<StateVector>,
    pub candidates: Vec<CandidateReport>,
}

/// The full symmetry classification of a product space.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub space: SpaceSpec,
    pub sectors: Vec<SectorReport>,
}

impl Decomposition {
    /// Σ over sectors of their dimensions; equals n^N.
    pub fn total_dimension(&self) -> usize {
        self.sectors.iter().map(|s| s.dimension).sum()
    }
}

/// Classify the whole space by symmetry sector: per partition, an
/// orthonormal sector basis plus the verification report for every
/// conjugate-pairing candidate generated from it (both signs when the
/// basis vector is not self-conjugate, the vector itself otherwise).
pub fn classify_all(space: SpaceSpec, tolerance: f64) -> Result<Decomposition> {
    if space.particles() < 2 {
        return Err(Error::Domain(
            "classification needs at least two particles".into(),
        ));
    }
    let mut sectors = Vec::new();
    for lambda in enumerate_partitions(space.particles())? {
        let basis = sector_basis(&lambda, space)?;
        let mut candidates = Vec::new();
        for vector in &basis.vectors {
            match self_conjugate_phase(vector)? {
                Some(phase) => {
                    candidates.push(CandidateReport {
                        phase,
                        state: vector.clone(),
                        report: verify_entanglement(vector, tolerance)?,
                    });
                }
                None => {
                    for sign in [1.0, -1.0] {
                        let phase = Complex64::new(sign, 0.0);
                        let conj = conjugate_state(vector);
                        let state = StateVector::linear_combination(&[
                            (Complex64::ONE, vector),
                            (phase, &conj),
                        ])?
                        .into_normalized()?;
                        candidates.push(CandidateReport {
                            phase,
                            report: verify_entanglement(&state, tolerance)?,
                            state,
                        });
                    }
                }
            }
        }
        sectors.push(SectorReport {
            dimension: basis.vectors.len(),
            basis: basis.vectors,
            partition: lambda,
            candidates,
        });
    }
    Ok(Decomposition { space, sectors })
}

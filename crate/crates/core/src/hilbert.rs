//! State vectors over the n^N product basis, permutation and level
//! actions, partial trace, and entropy.
//!
//! Basis words are written with 1-indexed levels, so the first basis
//! state of two qubits is |11>. Amplitudes are stored densely in
//! lexicographic word order with the leftmost particle most significant:
//! |11>, |12>, |21>, |22>.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tol;

/// Hard cap on the product-space dimension n^N.
pub const MAX_DIM: usize = 1 << 20;

/// (levels per particle, particle count); the shape of a product space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    levels: u32,
    particles: u32,
}

impl SpaceSpec {
    /// Guards: 2 <= n <= 6, 1 <= N <= 8, n^N <= 2^20. The crate is
    /// exercised mostly at n <= 4; 5 and 6 stay within the memory guard
    /// for small N.
    pub fn new(levels: u32, particles: u32) -> Result<Self> {
        if !(2..=6).contains(&levels) {
            return Err(Error::Bounds {
                what: "levels n",
                value: levels as i64,
                limit: "2..=6",
            });
        }
        if !(1..=8).contains(&particles) {
            return Err(Error::Bounds {
                what: "particle count N",
                value: particles as i64,
                limit: "1..=8",
            });
        }
        let dim = (levels as u64).pow(particles);
        if dim > MAX_DIM as u64 {
            return Err(Error::Bounds {
                what: "space dimension n^N",
                value: dim as i64,
                limit: "1..=2^20",
            });
        }
        Ok(Self { levels, particles })
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn particles(&self) -> u32 {
        self.particles
    }

    pub fn dim(&self) -> usize {
        (self.levels as usize).pow(self.particles)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, N={})", self.levels, self.particles)
    }
}

/// An N-tuple of level indices, each in 1..=n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisWord {
    letters: Vec<u8>,
}

impl BasisWord {
    pub fn new(letters: Vec<u8>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn validate(&self, space: SpaceSpec) -> Result<()> {
        if self.letters.len() != space.particles() as usize {
            return Err(Error::Domain(format!(
                "word {self} has {} letters; space {space} needs {}",
                self.letters.len(),
                space.particles()
            )));
        }
        for &letter in &self.letters {
            if letter == 0 || letter as u32 > space.levels() {
                return Err(Error::InvalidLetter {
                    letter,
                    levels: space.levels(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for &letter in &self.letters {
            write!(f, "{letter}")?;
        }
        write!(f, ">")
    }
}

/// Index of a word in lexicographic order: letter 1 smallest, leftmost
/// letter most significant.
pub fn word_index(word: &BasisWord, space: SpaceSpec) -> Result<usize> {
    word.validate(space)?;
    let n = space.levels() as usize;
    let mut idx = 0usize;
    for &letter in word.letters() {
        idx = idx * n + (letter as usize - 1);
    }
    Ok(idx)
}

/// Inverse of [`word_index`].
pub fn index_word(index: usize, space: SpaceSpec) -> BasisWord {
    debug_assert!(index < space.dim());
    let n = space.levels() as usize;
    let mut letters = vec![0u8; space.particles() as usize];
    let mut rest = index;
    for slot in letters.iter_mut().rev() {
        *slot = (rest % n) as u8 + 1;
        rest /= n;
    }
    BasisWord::new(letters)
}

/// Dense complex state over the n^N product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: SpaceSpec,
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn zero(space: SpaceSpec) -> Self {
        Self {
            space,
            amps: vec![Complex64::ZERO; space.dim()],
        }
    }

    /// The product state |word>.
    pub fn basis_state(space: SpaceSpec, word: &BasisWord) -> Result<Self> {
        let idx = word_index(word, space)?;
        let mut amps = vec![Complex64::ZERO; space.dim()];
        amps[idx] = Complex64::ONE;
        Ok(Self { space, amps })
    }

    /// Wraps raw amplitudes without normalizing.
    pub fn from_amplitudes(space: SpaceSpec, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::Domain(format!(
                "amplitude vector has length {}; space {space} has dimension {}",
                amps.len(),
                space.dim()
            )));
        }
        Ok(Self { space, amps })
    }

    /// Wraps and normalizes; errors on (numerically) zero input.
    pub fn normalized(space: SpaceSpec, amps: Vec<Complex64>) -> Result<Self> {
        Self::from_amplitudes(space, amps)?.into_normalized()
    }

    pub fn space(&self) -> SpaceSpec {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, word: &BasisWord) -> Result<Complex64> {
        Ok(self.amps[word_index(word, self.space)?])
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() < tol::NORM_TOL
    }

    pub fn into_normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if norm < 1e-14 {
            return Err(Error::Numerical(
                "cannot normalize a zero state vector".into(),
            ));
        }
        for a in &mut self.amps {
            *a /= norm;
        }
        Ok(self)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            space: self.space,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }

    /// Σ coeff_i · state_i; all terms must share one space.
    pub fn linear_combination(terms: &[(Complex64, &StateVector)]) -> Result<Self> {
        let space = terms
            .first()
            .ok_or_else(|| Error::Domain("linear combination of no terms".into()))?
            .1
            .space;
        let mut amps = vec![Complex64::ZERO; space.dim()];
        for (coeff, state) in terms {
            check_same_space(space, state.space)?;
            for (slot, amp) in amps.iter_mut().zip(&state.amps) {
                *slot += coeff * amp;
            }
        }
        Ok(Self { space, amps })
    }

    /// Pseudo-random state with i.i.d. complex-normal amplitudes,
    /// normalized. Deterministic for a fixed RNG stream.
    pub fn random<R: Rng + ?Sized>(space: SpaceSpec, rng: &mut R) -> Self {
        let amps: Vec<Complex64> = (0..space.dim())
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_amplitudes(space, amps)
            .and_then(Self::into_normalized)
            .expect("Gaussian amplitudes are nonzero with probability 1")
    }
}

fn check_same_space(left: SpaceSpec, right: SpaceSpec) -> Result<()> {
    if left != right {
        return Err(Error::SpaceMismatch {
            left_n: left.levels(),
            left_particles: left.particles(),
            right_n: right.levels(),
            right_particles: right.particles(),
        });
    }
    Ok(())
}

/// <left|right>, conjugate-linear in the first argument.
pub fn inner_product(left: &StateVector, right: &StateVector) -> Result<Complex64> {
    check_same_space(left.space, right.space)?;
    Ok(left
        .amps
        .iter()
        .zip(&right.amps)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// Matrix of pairwise inner products; identity for an orthonormal family.
pub fn gram_matrix(states: &[StateVector]) -> Result<DMatrix<Complex64>> {
    let k = states.len();
    let mut gram = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = inner_product(&states[i], &states[j])?;
        }
    }
    Ok(gram)
}

/// The image index table of the permutation action on basis words:
/// the letter at position k moves to position σ(k).
pub(crate) fn index_permutation(sigma: &Permutation, space: SpaceSpec) -> Result<Vec<usize>> {
    if sigma.len() != space.particles() as usize {
        return Err(Error::Domain(format!(
            "permutation acts on {} positions; space {space} has {} particles",
            sigma.len(),
            space.particles()
        )));
    }
    let dim = space.dim();
    let mut table = vec![0usize; dim];
    for (idx, slot) in table.iter_mut().enumerate() {
        let word = index_word(idx, space);
        let mut permuted = vec![0u8; word.len()];
        for (k, &letter) in word.letters().iter().enumerate() {
            permuted[sigma.image(k)] = letter;
        }
        *slot = word_index(&BasisWord::new(permuted), space)?;
    }
    Ok(table)
}

/// Unitary action of σ on a state: the output amplitude of word w is the
/// input amplitude of the σ⁻¹-permuted word.
pub fn apply_permutation(sigma: &Permutation, psi: &StateVector) -> Result<StateVector> {
    let table = index_permutation(sigma, psi.space)?;
    let mut amps = vec![Complex64::ZERO; psi.amps.len()];
    for (src, &dst) in table.iter().enumerate() {
        amps[dst] = psi.amps[src];
    }
    Ok(StateVector {
        space: psi.space,
        amps,
    })
}

/// Letterwise level reversal i -> n+1-i; |11> and |22> are conjugates
/// for qubits. An involution.
pub fn conjugate_word(word: &BasisWord, levels: u32) -> Result<BasisWord> {
    let letters = word
        .letters()
        .iter()
        .map(|&letter| {
            if letter == 0 || letter as u32 > levels {
                Err(Error::InvalidLetter { letter, levels })
            } else {
                Ok((levels as u8) + 1 - letter)
            }
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(BasisWord::new(letters))
}

/// Lift of [`conjugate_word`] to states: amplitudes move with their
/// words (no complex conjugation). Unitary, and an involution.
pub fn conjugate_state(psi: &StateVector) -> StateVector {
    let space = psi.space;
    let mut amps = vec![Complex64::ZERO; psi.amps.len()];
    for (idx, &amp) in psi.amps.iter().enumerate() {
        let conj = conjugate_word(&index_word(idx, space), space.levels())
            .expect("index_word emits valid letters");
        amps[word_index(&conj, space).expect("conjugate letters stay in range")] = amp;
    }
    StateVector { space, amps }
}

/// Hermitian, unit-trace, positive semidefinite matrix over a kept
/// subsystem's space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace; positivity is checked when
    /// eigenvalues are requested.
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::Domain(format!(
                "density matrix must be square; got {}x{}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        let mut herm_dev: f64 = 0.0;
        for i in 0..mat.nrows() {
            for j in 0..=i {
                herm_dev = herm_dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if herm_dev > tol::HERMITICITY_TOL {
            return Err(Error::Numerical(format!(
                "matrix is not Hermitian: max deviation {herm_dev:.3e}"
            )));
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > tol::HERMITICITY_TOL || trace.im.abs() > tol::HERMITICITY_TOL {
            return Err(Error::Numerical(format!(
                "matrix trace is {trace}; expected 1"
            )));
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// Eigenvalues sorted in non-increasing order, clipped to [0, 1].
    /// Errors if any eigenvalue undershoots zero beyond tolerance.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eigen = nalgebra::linalg::SymmetricEigen::new(self.mat.clone());
        let mut values: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
        if let Some(&worst) = values
            .iter()
            .filter(|v| **v < -tol::PSD_TOL)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
        {
            return Err(Error::Numerical(format!(
                "density matrix is not positive semidefinite: eigenvalue {worst:.3e}"
            )));
        }
        for v in &mut values {
            *v = v.clamp(0.0, 1.0);
        }
        values.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(values)
    }

    /// Max-abs entry deviation from (1/dim)·Identity, the maximally
    /// mixed state.
    pub fn max_deviation_from_maximally_mixed(&self) -> f64 {
        let uniform = 1.0 / self.dim() as f64;
        let mut dev: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let expected = if i == j { uniform } else { 0.0 };
                dev = dev.max((self.mat[(i, j)] - Complex64::new(expected, 0.0)).norm());
            }
        }
        dev
    }
}

/// Partial trace over the complement of `keep` (0-indexed particle
/// positions). `keep` must be a non-empty proper subset of the particles;
/// the kept positions index the output in increasing order.
pub fn reduced_density_matrix(psi: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let space = psi.space();
    let particles = space.particles() as usize;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() {
        return Err(Error::Domain(
            "keep set is empty: tracing out everything is not a reduced state".into(),
        ));
    }
    if kept.len() >= particles {
        return Err(Error::Domain(
            "keep set covers all particles: nothing to trace out".into(),
        ));
    }
    if *kept.last().unwrap() >= particles {
        return Err(Error::Domain(format!(
            "keep position {} out of range for {} particles",
            kept.last().unwrap(),
            particles
        )));
    }

    let n = space.levels() as usize;
    let kept_dim = n.pow(kept.len() as u32);
    let env_dim = space.dim() / kept_dim;

    // regroup amplitudes as a (kept x env) table
    let mut table = vec![Complex64::ZERO; kept_dim * env_dim];
    let kept_mask: Vec<bool> = (0..particles)
        .map(|p| kept.binary_search(&p).is_ok())
        .collect();
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        let word = index_word(idx, space);
        let mut kept_idx = 0usize;
        let mut env_idx = 0usize;
        for (p, &letter) in word.letters().iter().enumerate() {
            let digit = letter as usize - 1;
            if kept_mask[p] {
                kept_idx = kept_idx * n + digit;
            } else {
                env_idx = env_idx * n + digit;
            }
        }
        table[kept_idx * env_dim + env_idx] = amp;
    }

    let mut rho = DMatrix::zeros(kept_dim, kept_dim);
    for a in 0..kept_dim {
        for b in 0..kept_dim {
            let mut sum = Complex64::ZERO;
            for e in 0..env_dim {
                sum += table[a * env_dim + e] * table[b * env_dim + e].conj();
            }
            rho[(a, b)] = sum;
        }
    }
    DensityMatrix::new(rho)
}

/// −Σ p·log₂(p) over the eigenvalues, with 0·log 0 := 0. Bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let entropy = rho
        .eigenvalues()?
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>();
    Ok(entropy.max(0.0))
}

/// JSON form of a state: 1-indexed words, omitted words mean amplitude 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateJson {
    pub n: u32,
    #[serde(rename = "N")]
    pub particles: u32,
    pub amplitudes: Vec<AmplitudeJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmplitudeJson {
    pub word: Vec<u8>,
    pub re: f64,
    pub im: f64,
}

impl StateVector {
    /// Serializable form; exact zeros are omitted, words emitted in
    /// lexicographic order.
    pub fn to_json(&self) -> StateJson {
        let amplitudes = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(idx, a)| AmplitudeJson {
                word: index_word(idx, self.space).letters().to_vec(),
                re: a.re,
                im: a.im,
            })
            .collect();
        StateJson {
            n: self.space.levels(),
            particles: self.space.particles(),
            amplitudes,
        }
    }

    /// Rebuilds a state from its JSON form without renormalizing.
    /// Duplicate words are rejected.
    pub fn from_json(json: &StateJson) -> Result<Self> {
        let space = SpaceSpec::new(json.n, json.particles)?;
        let mut amps = vec![Complex64::ZERO; space.dim()];
        let mut seen = vec![false; space.dim()];
        for entry in &json.amplitudes {
            let word = BasisWord::new(entry.word.clone());
            let idx = word_index(&word, space)?;
            if seen[idx] {
                return Err(Error::Domain(format!(
                    "duplicate amplitude for word {word}"
                )));
            }
            seen[idx] = true;
            amps[idx] = Complex64::new(entry.re, entry.im);
        }
        StateVector::from_amplitudes(space, amps)
    }
}

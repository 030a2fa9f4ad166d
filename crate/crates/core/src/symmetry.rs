//! Representation machinery of the symmetric group on the N-particle
//! product space: characters, isotypic projectors, Young symmetrizers,
//! and the coupled |j,m;d> basis for qubit chains.
//!
//! Projectors use the character-weighted sum over all N! permutations
//! P_λ = (f^λ / N!) Σ_σ χ^λ(σ) U(σ), which is convention-free; individual
//! degenerate copies come either from Young symmetrizers (any n) or from
//! Clebsch–Gordan coupling paths (n = 2).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::{index_permutation, SpaceSpec, StateVector};
use crate::perm::Permutation;
use crate::tableaux::{
    enumerate_partitions, hook_length_dim, weyl_dim, Partition, StandardTableau,
};

/// Largest N for character evaluation and the coupled basis.
pub const MAX_CHARACTER_TOTAL: u32 = 8;

/// Explicit dense projectors and symmetrizers are stored only up to this
/// matrix side (729 = 3^6); larger spaces must use the apply-only entry
/// points.
pub const MAX_PROJECTOR_DIM: usize = 729;

/// Largest N for the apply-only N!-term permutation sums.
pub const MAX_APPLY_TOTAL: u32 = 8;

/// A conjugacy class of S_N, identified by its cycle type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    /// Number of permutations of this cycle type.
    pub size: u64,
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// Conjugacy classes of S_N in reverse-lexicographic cycle-type order.
pub fn conjugacy_classes(particles: u32) -> Result<Vec<ConjugacyClass>> {
    enumerate_partitions(particles)?
        .into_iter()
        .map(|cycle_type| {
            // centralizer order z = ∏ k^{m_k} m_k!
            let mut multiplicity: BTreeMap<u32, u64> = BTreeMap::new();
            for &part in cycle_type.parts() {
                *multiplicity.entry(part).or_insert(0) += 1;
            }
            let z: u64 = multiplicity
                .iter()
                .map(|(&k, &m)| (k as u64).pow(m as u32) * factorial(m as u32))
                .product();
            Ok(ConjugacyClass {
                size: factorial(particles) / z,
                cycle_type,
            })
        })
        .collect()
}

/// Irreducible character χ^λ on the class of the given cycle type, by
/// the Murnaghan–Nakayama border-strip recursion over beta-numbers.
pub fn character(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.total() != cycle_type.total() {
        return Err(Error::Domain(format!(
            "character of {lambda} evaluated on a class of S_{}; expected S_{}",
            cycle_type.total(),
            lambda.total()
        )));
    }
    if lambda.total() > MAX_CHARACTER_TOTAL {
        return Err(Error::Bounds {
            what: "character total N",
            value: lambda.total() as i64,
            limit: "1..=8",
        });
    }
    // beta-numbers: strictly decreasing first-column hook lengths
    let rows = lambda.rows();
    let mut beta: Vec<u64> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as u64 + (rows - 1 - i) as u64)
        .collect();
    beta.sort_unstable();
    let cycles: Vec<u64> = cycle_type.parts().iter().map(|&p| p as u64).collect();
    let mut memo = HashMap::new();
    Ok(strip_recursion(&beta, &cycles, 0, &mut memo))
}

fn strip_recursion(
    beta: &[u64],
    cycles: &[u64],
    depth: usize,
    memo: &mut HashMap<(Vec<u64>, usize), i64>,
) -> i64 {
    if depth == cycles.len() {
        return 1;
    }
    if let Some(&v) = memo.get(&(beta.to_vec(), depth)) {
        return v;
    }
    let strip = cycles[depth];
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < strip || beta.binary_search(&(b - strip)).is_ok() {
            continue;
        }
        let height = beta.iter().filter(|&&c| c > b - strip && c < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        let mut next = beta.to_vec();
        next[i] = b - strip;
        next.sort_unstable();
        total += sign * strip_recursion(&next, cycles, depth + 1, memo);
    }
    memo.insert((beta.to_vec(), depth), total);
    total
}

/// Full character table of S_N: one row per partition λ, one column per
/// conjugacy class, both in reverse-lexicographic order.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub particles: u32,
    pub classes: Vec<ConjugacyClass>,
    pub partitions: Vec<Partition>,
    /// values[row][col] = χ^{partitions[row]}(classes[col])
    pub values: Vec<Vec<i64>>,
}

pub fn character_table(particles: u32) -> Result<CharacterTable> {
    if particles == 0 || particles > MAX_CHARACTER_TOTAL {
        return Err(Error::Bounds {
            what: "character total N",
            value: particles as i64,
            limit: "1..=8",
        });
    }
    let classes = conjugacy_classes(particles)?;
    let partitions = enumerate_partitions(particles)?;
    let values = partitions
        .iter()
        .map(|lambda| {
            classes
                .iter()
                .map(|class| character(lambda, &class.cycle_type))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<Vec<i64>>>>()?;
    Ok(CharacterTable {
        particles,
        classes,
        partitions,
        values,
    })
}

fn check_projector_guard(space: SpaceSpec) -> Result<()> {
    if space.particles() > 6 || space.dim() > MAX_PROJECTOR_DIM {
        return Err(Error::Bounds {
            what: "dense operator dimension n^N",
            value: space.dim() as i64,
            limit: "1..=729 with N <= 6 (use the apply-only form beyond)",
        });
    }
    Ok(())
}

fn check_sector(lambda: &Partition, space: SpaceSpec) -> Result<()> {
    if lambda.total() != space.particles() {
        return Err(Error::Domain(format!(
            "partition {lambda} labels sectors of {} particles; space {space} has {}",
            lambda.total(),
            space.particles()
        )));
    }
    Ok(())
}

fn characters_by_cycle_type(lambda: &Partition) -> Result<HashMap<Vec<usize>, f64>> {
    conjugacy_classes(lambda.total())?
        .into_iter()
        .map(|class| {
            let key: Vec<usize> = class
                .cycle_type
                .parts()
                .iter()
                .map(|&p| p as usize)
                .collect();
            Ok((key, character(lambda, &class.cycle_type)? as f64))
        })
        .collect()
}

/// Dense isotypic projector P_λ = (f^λ / N!) Σ_σ χ^λ(σ) U(σ): Hermitian,
/// idempotent, rank f^λ · weyl_dim(λ, n). Projects onto all degenerate
/// copies of the λ sector at once.
pub fn isotypic_projector(lambda: &Partition, space: SpaceSpec) -> Result<DMatrix<Complex64>> {
    check_sector(lambda, space)?;
    check_projector_guard(space)?;
    let chars = characters_by_cycle_type(lambda)?;
    let dim = space.dim();
    let prefactor = hook_length_dim(lambda) as f64 / factorial(space.particles()) as f64;
    let mut projector = DMatrix::zeros(dim, dim);
    for sigma in Permutation::all(space.particles() as usize) {
        let coeff = prefactor * chars[&sigma.cycle_lengths()];
        if coeff == 0.0 {
            continue;
        }
        let table = index_permutation(&sigma, space)?;
        for (src, &dst) in table.iter().enumerate() {
            projector[(dst, src)] += Complex64::new(coeff, 0.0);
        }
    }
    Ok(projector)
}

/// Apply-only form of the isotypic projection, usable past the dense
/// guard (N <= 8). Costs N! vector passes.
pub fn apply_isotypic(lambda: &Partition, psi: &StateVector) -> Result<StateVector> {
    let space = psi.space();
    check_sector(lambda, space)?;
    if space.particles() > MAX_APPLY_TOTAL {
        return Err(Error::Bounds {
            what: "apply-only projection N",
            value: space.particles() as i64,
            limit: "1..=8",
        });
    }
    let chars = characters_by_cycle_type(lambda)?;
    let prefactor = hook_length_dim(lambda) as f64 / factorial(space.particles()) as f64;
    let mut amps = vec![Complex64::ZERO; space.dim()];
    for sigma in Permutation::all(space.particles() as usize) {
        let coeff = prefactor * chars[&sigma.cycle_lengths()];
        if coeff == 0.0 {
            continue;
        }
        let table = index_permutation(&sigma, space)?;
        for (src, &dst) in table.iter().enumerate() {
            amps[dst] += coeff * psi.amplitudes()[src];
        }
    }
    StateVector::from_amplitudes(space, amps)
}

/// ‖P_λ ψ‖², the weight of ψ in the λ sector. Sums to 1 over all λ for
/// a normalized ψ.
pub fn sector_membership(psi: &StateVector, lambda: &Partition) -> Result<f64> {
    let projected = apply_isotypic(lambda, psi)?;
    Ok(projected.norm().powi(2))
}

/// Permutations moving entries only within each given position set
/// (cartesian product of the per-set symmetric groups).
fn subgroup_of_sets(sets: &[Vec<usize>], len: usize) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(len)];
    for set in sets {
        let arrangements = Permutation::all(set.len());
        let mut next = Vec::with_capacity(out.len() * arrangements.len());
        for base in &out {
            for arr in &arrangements {
                let mut images: Vec<usize> = (0..len).map(|k| base.image(k)).collect();
                for (i, &pos) in set.iter().enumerate() {
                    images[pos] = base.image(set[arr.image(i)]);
                }
                next.push(Permutation::from_images(images).expect("bijection by construction"));
            }
        }
        out = next;
    }
    out
}

/// Young symmetrizer of a standard tableau t: the row symmetrizer times
/// the signed column antisymmetrizer,
/// c_t = (Σ_{σ ∈ rows} U(σ)) · (Σ_{τ ∈ cols} sign(τ) U(τ)).
/// Quasi-idempotent: c_t² = (N!/f^λ) c_t. Its image is one copy of the
/// λ sector.
pub fn young_symmetrizer(
    tableau: &StandardTableau,
    space: SpaceSpec,
) -> Result<DMatrix<Complex64>> {
    check_sector(tableau.shape(), space)?;
    check_projector_guard(space)?;
    let particles = space.particles() as usize;
    let dim = space.dim();

    let row_sets: Vec<Vec<usize>> = tableau
        .rows()
        .iter()
        .map(|row| row.iter().map(|&e| e as usize - 1).collect())
        .collect();
    let col_count = tableau.shape().parts()[0] as usize;
    let col_sets: Vec<Vec<usize>> = (0..col_count)
        .map(|c| tableau.column(c).iter().map(|&e| e as usize - 1).collect())
        .collect();

    let mut row_sym = DMatrix::<Complex64>::zeros(dim, dim);
    for sigma in subgroup_of_sets(&row_sets, particles) {
        let table = index_permutation(&sigma, space)?;
        for (src, &dst) in table.iter().enumerate() {
            row_sym[(dst, src)] += Complex64::ONE;
        }
    }
    let mut col_antisym = DMatrix::<Complex64>::zeros(dim, dim);
    for tau in subgroup_of_sets(&col_sets, particles) {
        let sign = Complex64::new(tau.sign() as f64, 0.0);
        let table = index_permutation(&tau, space)?;
        for (src, &dst) in table.iter().enumerate() {
            col_antisym[(dst, src)] += sign;
        }
    }
    Ok(row_sym * col_antisym)
}

/// Angular-momentum label of a coupled qubit-chain state: total spin j,
/// weight m, and the 1-based index d of the degenerate copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoupledLabel {
    twice_j: u32,
    twice_m: i32,
    copy: u32,
}

impl CoupledLabel {
    pub fn new(twice_j: u32, twice_m: i32, copy: u32) -> Result<Self> {
        if twice_m.unsigned_abs() > twice_j {
            return Err(Error::Domain(format!(
                "|m| = {}/2 exceeds j = {}/2",
                twice_m.abs(),
                twice_j
            )));
        }
        if (twice_j as i64 - twice_m as i64) % 2 != 0 {
            return Err(Error::Domain(format!(
                "j − m must be an integer; got j = {}/2, m = {}/2",
                twice_j, twice_m
            )));
        }
        if copy == 0 {
            return Err(Error::Domain("degeneracy index d starts at 1".into()));
        }
        Ok(Self {
            twice_j,
            twice_m,
            copy,
        })
    }

    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    pub fn twice_m(&self) -> i32 {
        self.twice_m
    }

    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn m(&self) -> f64 {
        self.twice_m as f64 / 2.0
    }

    /// j(j+1), the total-spin Casimir eigenvalue shared by the whole
    /// (j, d) manifold.
    pub fn casimir(&self) -> f64 {
        self.j() * (self.j() + 1.0)
    }

    /// Degenerate-copy index, 1-based.
    pub fn copy(&self) -> u32 {
        self.copy
    }

    /// The label with m replaced by −m.
    pub fn negated_m(&self) -> Self {
        Self {
            twice_j: self.twice_j,
            twice_m: -self.twice_m,
            copy: self.copy,
        }
    }

    /// The two-row partition [N/2 + j, N/2 − j] whose sector carries
    /// this j for N qubits.
    pub fn sector_partition(&self, particles: u32) -> Result<Partition> {
        let total = 2 * particles as i64;
        let top = (total / 2 + self.twice_j as i64) / 2;
        let bottom = (total / 2 - self.twice_j as i64) / 2;
        if !(particles + self.twice_j).is_multiple_of(2) || bottom < 0 {
            return Err(Error::Domain(format!(
                "j = {}/2 does not occur for {particles} qubits",
                self.twice_j
            )));
        }
        let mut parts = vec![top as u32];
        if bottom > 0 {
            parts.push(bottom as u32);
        }
        Partition::new(parts)
    }
}

fn half_string(twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{}/2", twice)
    }
}

impl fmt::Display for CoupledLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|{},{};{}>",
            half_string(self.twice_j as i64),
            half_string(self.twice_m as i64),
            self.copy
        )
    }
}

impl Serialize for CoupledLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CoupledLabel", 3)?;
        s.serialize_field("j", &self.j())?;
        s.serialize_field("m", &self.m())?;
        s.serialize_field("d", &self.copy)?;
        s.end()
    }
}

/// Basis convention for [`coupled_basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Couple particles left to right with Condon–Shortley
    /// Clebsch–Gordan coefficients; degenerate copies are coupling
    /// paths, ordered by their intermediate-j sequences, largest first.
    SequentialCoupling,
    /// Fixed reference tables for N <= 3, reproducing the published
    /// singlet/triplet and three-qubit tables verbatim. Spans the same
    /// (j, m) subspaces as sequential coupling; individual degenerate
    /// vectors differ.
    PaperFixtures,
}

// per-path accumulator during sequential coupling
struct CouplingPath {
    twice_j: u32,
    intermediate: Vec<u32>,
    // twice_m -> amplitudes over the 2^k product basis
    vectors: BTreeMap<i32, Vec<Complex64>>,
}

fn couple_one_spin(paths: Vec<CouplingPath>) -> Vec<CouplingPath> {
    let mut out = Vec::new();
    for path in paths {
        let tj = path.twice_j as i32;
        let old_dim = path.vectors.values().next().map_or(0, |v| v.len());
        let candidates: Vec<i32> = if tj >= 1 {
            vec![tj + 1, tj - 1]
        } else {
            vec![1]
        };
        for new_tj in candidates {
            let mut vectors = BTreeMap::new();
            let mut tm = -new_tj;
            while tm <= new_tj {
                let mut amps = vec![Complex64::ZERO; old_dim * 2];
                // Condon-Shortley coefficients for coupling j' with a
                // spin 1/2 whose level 1 carries m = +1/2:
                //   <j', M-1/2; up   | j'+1/2, M> =  sqrt((j'+M+1/2)/(2j'+1))
                //   <j', M+1/2; down | j'+1/2, M> =  sqrt((j'-M+1/2)/(2j'+1))
                //   <j', M-1/2; up   | j'-1/2, M> = -sqrt((j'-M+1/2)/(2j'+1))
                //   <j', M+1/2; down | j'-1/2, M> =  sqrt((j'+M+1/2)/(2j'+1))
                let denom = 2.0 * (tj as f64 + 1.0);
                let plus = ((tj + tm + 1) as f64 / denom).sqrt();
                let minus = ((tj - tm + 1) as f64 / denom).sqrt();
                let (c_up, c_down) = if new_tj == tj + 1 {
                    (plus, minus)
                } else {
                    (-minus, plus)
                };
                if let Some(old) = path.vectors.get(&(tm - 1)) {
                    for (idx, amp) in old.iter().enumerate() {
                        amps[idx * 2] += c_up * amp;
                    }
                }
                if let Some(old) = path.vectors.get(&(tm + 1)) {
                    for (idx, amp) in old.iter().enumerate() {
                        amps[idx * 2 + 1] += c_down * amp;
                    }
                }
                vectors.insert(tm, amps);
                tm += 2;
            }
            let mut intermediate = path.intermediate.clone();
            intermediate.push(new_tj as u32);
            out.push(CouplingPath {
                twice_j: new_tj as u32,
                intermediate,
                vectors,
            });
        }
    }
    out
}

/// Complete orthonormal coupled basis of N qubits, ordered by j
/// descending, then copy index, then m descending.
pub fn coupled_basis(
    particles: u32,
    convention: Convention,
) -> Result<Vec<(CoupledLabel, StateVector)>> {
    if !(2..=8).contains(&particles) {
        return Err(Error::Bounds {
            what: "coupled-basis particle count N",
            value: particles as i64,
            limit: "2..=8",
        });
    }
    match convention {
        Convention::SequentialCoupling => sequential_coupled_basis(particles),
        Convention::PaperFixtures => fixture_coupled_basis(particles),
    }
}

fn sequential_coupled_basis(particles: u32) -> Result<Vec<(CoupledLabel, StateVector)>> {
    let space = SpaceSpec::new(2, particles)?;
    let mut paths = vec![CouplingPath {
        twice_j: 1,
        intermediate: vec![],
        vectors: BTreeMap::from([
            (1, vec![Complex64::ONE, Complex64::ZERO]),
            (-1, vec![Complex64::ZERO, Complex64::ONE]),
        ]),
    }];
    for _ in 1..particles {
        paths = couple_one_spin(paths);
    }

    // group paths by final j; copies ordered by intermediate sequence,
    // lexicographically largest first (so the all-symmetric path is d=1)
    let mut by_j: BTreeMap<u32, Vec<CouplingPath>> = BTreeMap::new();
    for path in paths {
        by_j.entry(path.twice_j).or_default().push(path);
    }
    let mut out = Vec::new();
    for (&twice_j, group) in by_j.iter_mut().rev() {
        group.sort_by(|a, b| b.intermediate.cmp(&a.intermediate));
        for (copy_idx, path) in group.iter().enumerate() {
            for (&twice_m, amps) in path.vectors.iter().rev() {
                let label = CoupledLabel::new(twice_j, twice_m, copy_idx as u32 + 1)?;
                out.push((label, StateVector::from_amplitudes(space, amps.clone())?));
            }
        }
    }
    Ok(out)
}

fn fixture_state(space: SpaceSpec, terms: &[(f64, &[u8])]) -> Result<StateVector> {
    let states: Vec<(Complex64, StateVector)> = terms
        .iter()
        .map(|&(coeff, letters)| {
            Ok((
                Complex64::new(coeff, 0.0),
                StateVector::basis_state(space, &crate::hilbert::BasisWord::new(letters.to_vec()))?,
            ))
        })
        .collect::<Result<_>>()?;
    let refs: Vec<(Complex64, &StateVector)> = states.iter().map(|(c, s)| (*c, s)).collect();
    StateVector::linear_combination(&refs)
}

fn fixture_coupled_basis(particles: u32) -> Result<Vec<(CoupledLabel, StateVector)>> {
    let sqrt2 = std::f64::consts::SQRT_2;
    let sqrt3 = 3.0f64.sqrt();
    let sqrt6 = 6.0f64.sqrt();
    match particles {
        2 => {
            let space = SpaceSpec::new(2, 2)?;
            Ok(vec![
                (
                    CoupledLabel::new(2, 2, 1)?,
                    fixture_state(space, &[(1.0, &[1, 1])])?,
                ),
                (
                    CoupledLabel::new(2, 0, 1)?,
                    fixture_state(space, &[(1.0 / sqrt2, &[1, 2]), (1.0 / sqrt2, &[2, 1])])?,
                ),
                (
                    CoupledLabel::new(2, -2, 1)?,
                    fixture_state(space, &[(1.0, &[2, 2])])?,
                ),
                (
                    CoupledLabel::new(0, 0, 1)?,
                    fixture_state(space, &[(1.0 / sqrt2, &[1, 2]), (-1.0 / sqrt2, &[2, 1])])?,
                ),
            ])
        }
        3 => {
            let space = SpaceSpec::new(2, 3)?;
            Ok(vec![
                (
                    CoupledLabel::new(3, 3, 1)?,
                    fixture_state(space, &[(1.0, &[1, 1, 1])])?,
                ),
                (
                    CoupledLabel::new(3, 1, 1)?,
                    fixture_state(
                        space,
                        &[
                            (1.0 / sqrt3, &[1, 1, 2]),
                            (1.0 / sqrt3, &[1, 2, 1]),
                            (1.0 / sqrt3, &[2, 1, 1]),
                        ],
                    )?,
                ),
                (
                    CoupledLabel::new(3, -1, 1)?,
                    fixture_state(
                        space,
                        &[
                            (1.0 / sqrt3, &[2, 2, 1]),
                            (1.0 / sqrt3, &[2, 1, 2]),
                            (1.0 / sqrt3, &[1, 2, 2]),
                        ],
                    )?,
                ),
                (
                    CoupledLabel::new(3, -3, 1)?,
                    fixture_state(space, &[(1.0, &[2, 2, 2])])?,
                ),
                (
                    CoupledLabel::new(1, 1, 1)?,
                    fixture_state(
                        space,
                        &[
                            (2.0 / sqrt6, &[2, 1, 1]),
                            (-1.0 / sqrt6, &[1, 1, 2]),
                            (-1.0 / sqrt6, &[1, 2, 1]),
                        ],
                    )?,
                ),
                (
                    CoupledLabel::new(1, -1, 1)?,
                    fixture_state(
                        space,
                        &[
                            (1.0 / sqrt6, &[2, 1, 2]),
                            (1.0 / sqrt6, &[2, 2, 1]),
                            (-2.0 / sqrt6, &[1, 2, 2]),
                        ],
                    )?,
                ),
                (
                    CoupledLabel::new(1, 1, 2)?,
                    fixture_state(space, &[(1.0 / sqrt2, &[1, 1, 2]), (-1.0 / sqrt2, &[1, 2, 1])])?,
                ),
                (
                    CoupledLabel::new(1, -1, 2)?,
                    fixture_state(space, &[(1.0 / sqrt2, &[2, 2, 1]), (-1.0 / sqrt2, &[2, 1, 2])])?,
                ),
            ])
        }
        _ => Err(Error::Unsupported(format!(
            "the fixed reference tables cover N <= 3; N = {particles} needs the sequential-coupling convention"
        ))),
    }
}

/// Total lowering operator J₋ for qubits: every letter 1 lowered to 2,
/// summed over positions. Unnormalized output;
/// J₋|j,m> = √(j(j+1) − m(m−1)) |j,m−1>.
pub fn apply_lowering(psi: &StateVector) -> Result<StateVector> {
    let space = psi.space();
    if space.levels() != 2 {
        return Err(Error::Unsupported(
            "the lowering operator is defined for qubit chains (n = 2)".into(),
        ));
    }
    let n = space.levels() as usize;
    let particles = space.particles();
    let mut amps = vec![Complex64::ZERO; space.dim()];
    // letter 1 at position p contributes a shift of n^(N-1-p) in the index
    for (idx, &amp) in psi.amplitudes().iter().enumerate() {
        if amp == Complex64::ZERO {
            continue;
        }
        let mut stride = 1usize;
        let mut rest = idx;
        for _ in 0..particles {
            let digit = rest % n;
            if digit == 0 {
                amps[idx + stride] += amp;
            }
            rest /= n;
            stride *= n;
        }
    }
    StateVector::from_amplitudes(space, amps)
}

/// An orthonormal basis of a symmetry sector. `copy_index` is `Some`
/// when the basis spans a single degenerate copy (e.g. the image of one
/// Young symmetrizer) and `None` for the whole isotypic component.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    pub partition: Partition,
    pub copy_index: Option<usize>,
    pub vectors: Vec<StateVector>,
}

fn orthonormal_image(
    operator: &DMatrix<Complex64>,
    space: SpaceSpec,
    expected_rank: usize,
) -> Result<Vec<StateVector>> {
    let dim = space.dim();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(expected_rank);
    for col in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|r| operator[(r, col)]).collect();
        // two-pass modified Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (slot, x) in v.iter_mut().zip(b) {
                    *slot -= overlap * x;
                }
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for a in &mut v {
                *a /= norm;
            }
            basis.push(v);
        }
        if basis.len() == expected_rank {
            break;
        }
    }
    if basis.len() != expected_rank {
        return Err(Error::Numerical(format!(
            "orthonormalization found rank {} where {} was expected",
            basis.len(),
            expected_rank
        )));
    }
    basis
        .into_iter()
        .map(|amps| StateVector::from_amplitudes(space, amps))
        .collect()
}

/// Orthonormal basis of the whole λ-isotypic component, built by
/// orthonormalizing the columns of P_λ. Dimension f^λ · weyl_dim(λ, n).
pub fn sector_basis(lambda: &Partition, space: SpaceSpec) -> Result<SectorBasis> {
    let projector = isotypic_projector(lambda, space)?;
    let expected = (hook_length_dim(lambda) * weyl_dim(lambda, space.levels())?) as usize;
    let vectors = orthonormal_image(&projector, space, expected)?;
    Ok(SectorBasis {
        partition: lambda.clone(),
        copy_index: None,
        vectors,
    })
}

/// Orthonormal basis of the single sector copy carried by one standard
/// tableau: the image of its Young symmetrizer. Dimension weyl_dim(λ, n).
pub fn sector_copy_basis(
    tableau: &StandardTableau,
    copy_index: usize,
    space: SpaceSpec,
) -> Result<SectorBasis> {
    let symmetrizer = young_symmetrizer(tableau, space)?;
    let expected = weyl_dim(tableau.shape(), space.levels())? as usize;
    let vectors = orthonormal_image(&symmetrizer, space, expected)?;
    Ok(SectorBasis {
        partition: tableau.shape().clone(),
        copy_index: Some(copy_index),
        vectors,
    })
}

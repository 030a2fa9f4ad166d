//! Acceptance suite: every release-gating criterion, each as one test
//! that prints a single PASS line (with timing) when it holds. Tolerances
//! are pinned here, not configurable.
//!
//! 1. bell-reproduction: CLI paper-pairs at N=2 emits the four Bell
//!    states, all maximal (1e-10), in under 1 s.
//! 2. three-qubit-tables: CLI paper-fixtures basis reproduces the eight
//!    reference vectors (1e-10 per amplitude); sequential coupling spans
//!    agree per (j, m).
//! 3. count-claims: 2^N orthogonal paired states (N=2,3,4); 27 orthogonal
//!    GHZ states at n=3, N=3 with RDM deviation < 1e-9.
//! 4. schur-weyl-identity: Σ f·d == n^N exactly (N<=8, n<=4); f equals
//!    the standard-tableau count (N<=6); Σ f² == N! (N<=8).
//! 5. projector-suite: idempotent/orthogonal/complete projectors with
//!    rank f·d; symmetrizer quasi-idempotence.
//! 6. oracle-equivalence: verifier matches a definition-level partial
//!    trace + closed-form eigenvalue oracle on 100 seeded random states
//!    per space.
//! 7. ladder-property: Dicke-manifold entropy profiles symmetric in m and
//!    peaked at the middle; N=3 values pinned.
//! 8. honest-discrepancy: the W-like pair has RDM eigenvalues {5/6, 1/6},
//!    not maximal, agreeing with the oracle rather than with a blanket
//!    maximality claim.

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::Value;

use entsym::entangle::{ghz_basis, pair_basis, verify_entanglement};
use entsym::hilbert::{gram_matrix, reduced_density_matrix, SpaceSpec, StateVector};
use entsym::symmetry::{
    coupled_basis, isotypic_projector, young_symmetrizer, Convention, CoupledLabel,
};
use entsym::tableaux::{
    enumerate_partitions, enumerate_standard_tableaux, hook_length_dim, schur_weyl_identity,
    weyl_dim,
};

fn run_cli(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_entsym"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&String::from_utf8(out.stdout).expect("utf8")).expect("json")
}

/// Dense amplitude vector from a CLI state object, in word order.
fn dense_from_json(state: &Value, dim: usize, levels: usize) -> Vec<Complex64> {
    let mut amps = vec![Complex64::ZERO; dim];
    for entry in state["amplitudes"].as_array().expect("amplitudes") {
        let word: Vec<usize> = entry["word"]
            .as_array()
            .expect("word")
            .iter()
            .map(|l| l.as_u64().unwrap() as usize)
            .collect();
        let idx = word.iter().fold(0usize, |acc, &l| acc * levels + (l - 1));
        amps[idx] = Complex64::new(entry["re"].as_f64().unwrap(), entry["im"].as_f64().unwrap());
    }
    amps
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

// ------------------------------------------------------------ oracle helpers

/// Definition-level partial trace onto one particle, with independent
/// base-n index arithmetic.
fn oracle_single_particle_rdm(psi: &StateVector, particle: usize) -> Vec<Vec<Complex64>> {
    let n = psi.space().levels() as usize;
    let particles = psi.space().particles() as usize;
    let env: Vec<usize> = (0..particles).filter(|&p| p != particle).collect();
    let env_dim = n.pow(env.len() as u32);
    let digits = |mut x: usize, len: usize| -> Vec<usize> {
        let mut out = vec![0usize; len];
        for slot in out.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        out
    };
    let read = |word: &[usize]| -> Complex64 {
        psi.amplitudes()[word.iter().fold(0usize, |acc, &d| acc * n + d)]
    };
    let mut rho = vec![vec![Complex64::ZERO; n]; n];
    for (a, row) in rho.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let mut sum = Complex64::ZERO;
            for e in 0..env_dim {
                let de = digits(e, env.len());
                let mut wa = vec![0usize; particles];
                let mut wb = vec![0usize; particles];
                wa[particle] = a;
                wb[particle] = b;
                for (i, &p) in env.iter().enumerate() {
                    wa[p] = de[i];
                    wb[p] = de[i];
                }
                sum += read(&wa) * read(&wb).conj();
            }
            *slot = sum;
        }
    }
    rho
}

/// Closed-form eigenvalues of a 2x2 or 3x3 Hermitian matrix, descending.
fn oracle_eigenvalues(rho: &[Vec<Complex64>]) -> Vec<f64> {
    match rho.len() {
        2 => {
            let mid = (rho[0][0].re + rho[1][1].re) / 2.0;
            let radius =
                (((rho[0][0].re - rho[1][1].re) / 2.0).powi(2) + rho[0][1].norm_sqr()).sqrt();
            vec![mid + radius, mid - radius]
        }
        3 => {
            let p1 = rho[0][1].norm_sqr() + rho[0][2].norm_sqr() + rho[1][2].norm_sqr();
            let q = (rho[0][0].re + rho[1][1].re + rho[2][2].re) / 3.0;
            let p2 = (rho[0][0].re - q).powi(2)
                + (rho[1][1].re - q).powi(2)
                + (rho[2][2].re - q).powi(2)
                + 2.0 * p1;
            if p2 < 1e-30 {
                return vec![q, q, q];
            }
            let p = (p2 / 6.0).sqrt();
            let b = |i: usize, j: usize| -> Complex64 {
                let shift = if i == j {
                    Complex64::new(q, 0.0)
                } else {
                    Complex64::ZERO
                };
                (rho[i][j] - shift) / p
            };
            let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
                - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
                + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
            let phi = (det.re / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
            let eig1 = q + 2.0 * p * phi.cos();
            let eig3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
            let mut eigs = vec![eig1, 3.0 * q - eig1 - eig3, eig3];
            eigs.sort_unstable_by(|x, y| y.partial_cmp(x).unwrap());
            eigs
        }
        d => panic!("oracle covers single-particle RDMs of n <= 3, got {d}"),
    }
}

fn oracle_entropy(rho: &[Vec<Complex64>]) -> f64 {
    oracle_eigenvalues(rho)
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

fn oracle_deviation(rho: &[Vec<Complex64>]) -> f64 {
    let uniform = 1.0 / rho.len() as f64;
    let mut dev: f64 = 0.0;
    for (i, row) in rho.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let expected = if i == j { uniform } else { 0.0 };
            dev = dev.max((z - Complex64::new(expected, 0.0)).norm());
        }
    }
    dev
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// ------------------------------------------------------------------ criteria

#[test]
fn criterion_1_bell_reproduction() {
    let start = Instant::now();
    let value = run_cli(&[
        "entangle",
        "--N",
        "2",
        "--n",
        "2",
        "--method",
        "paper-pairs",
    ]);
    let states = value["states"].as_array().expect("states");
    assert_eq!(states.len(), 4, "expected exactly 4 states");

    let s = 1.0 / 2f64.sqrt();
    // dense vectors over |11>, |12>, |21>, |22>
    let expected: [[f64; 4]; 4] = [
        [s, 0.0, 0.0, s],
        [s, 0.0, 0.0, -s],
        [0.0, s, s, 0.0],
        [0.0, s, -s, 0.0],
    ];
    for (got, want) in states.iter().zip(&expected) {
        let dense = dense_from_json(&got["state"], 4, 2);
        let want: Vec<Complex64> = want.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let fidelity = overlap(&want, &dense).norm();
        assert!(
            (fidelity - 1.0).abs() < 1e-10,
            "state differs beyond a global phase: fidelity {fidelity}"
        );
        assert_eq!(got["report"]["maximal"], true);
        assert!(got["report"]["rdm_deviation"].as_f64().unwrap() < 1e-10);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 1 (bell-reproduction): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_three_qubit_tables() {
    let start = Instant::now();
    let value = run_cli(&[
        "basis",
        "--N",
        "3",
        "--n",
        "2",
        "--convention",
        "paper-fixtures",
    ]);
    let states = value["states"].as_array().expect("states");
    assert_eq!(states.len(), 8);

    let s2 = 1.0 / 2f64.sqrt();
    let s3 = 1.0 / 3f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    // (word letters, amplitude) per reference vector, in output order
    let expected: [Vec<(&[u8], f64)>; 8] = [
        vec![(&[1, 1, 1], 1.0)],
        vec![(&[1, 1, 2], s3), (&[1, 2, 1], s3), (&[2, 1, 1], s3)],
        vec![(&[2, 2, 1], s3), (&[2, 1, 2], s3), (&[1, 2, 2], s3)],
        vec![(&[2, 2, 2], 1.0)],
        vec![(&[2, 1, 1], 2.0 * s6), (&[1, 1, 2], -s6), (&[1, 2, 1], -s6)],
        vec![(&[2, 1, 2], s6), (&[2, 2, 1], s6), (&[1, 2, 2], -2.0 * s6)],
        vec![(&[1, 1, 2], s2), (&[1, 2, 1], -s2)],
        vec![(&[2, 2, 1], s2), (&[2, 1, 2], -s2)],
    ];
    for (got, want) in states.iter().zip(&expected) {
        let dense = dense_from_json(&got["state"], 8, 2);
        let mut want_dense = vec![Complex64::ZERO; 8];
        for &(word, amp) in want {
            let idx = word
                .iter()
                .fold(0usize, |acc, &l| acc * 2 + (l as usize - 1));
            want_dense[idx] = Complex64::new(amp, 0.0);
        }
        for (a, b) in dense.iter().zip(&want_dense) {
            assert!((a - b).norm() < 1e-10, "amplitude mismatch: {a} vs {b}");
        }
    }

    // span agreement per (j, m) between fixtures and sequential coupling
    let fixtures = coupled_basis(3, Convention::PaperFixtures).unwrap();
    let sequential = coupled_basis(3, Convention::SequentialCoupling).unwrap();
    for (twice_j, twice_m) in [(3, 3), (3, 1), (3, -1), (3, -3), (1, 1), (1, -1)] {
        let span = |basis: &[(CoupledLabel, StateVector)]| -> DMatrix<Complex64> {
            let mut projector = DMatrix::zeros(8, 8);
            for (_, state) in basis
                .iter()
                .filter(|(l, _)| l.twice_j() == twice_j && l.twice_m() == twice_m)
            {
                let v = nalgebra::DVector::from_column_slice(state.amplitudes());
                projector += &v * v.adjoint();
            }
            projector
        };
        let distance = max_abs(&(span(&fixtures) - span(&sequential)));
        assert!(
            distance < 1e-10,
            "span projector distance {distance} at j={twice_j}/2 m={twice_m}/2"
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("ACCEPTANCE 2 (three-qubit-tables): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_count_claims() {
    let start = Instant::now();
    for particles in [2u32, 3, 4] {
        let basis = pair_basis(particles).unwrap();
        assert_eq!(basis.len(), 1 << particles, "2^N count at N={particles}");
        let states: Vec<StateVector> = basis.into_iter().map(|p| p.vector).collect();
        let gram = gram_matrix(&states).unwrap();
        for i in 0..states.len() {
            for j in 0..states.len() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (gram[(i, j)] - Complex64::new(expected, 0.0)).norm() < 1e-10,
                    "pair basis not orthonormal at N={particles}"
                );
            }
        }
    }

    let space = SpaceSpec::new(3, 3).unwrap();
    let basis = ghz_basis(space).unwrap();
    assert_eq!(basis.len(), 27, "27 qutrit states");
    let gram = gram_matrix(&basis).unwrap();
    for i in 0..27 {
        for j in 0..27 {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((gram[(i, j)] - Complex64::new(expected, 0.0)).norm() < 1e-10);
        }
    }
    for state in &basis {
        for particle in 0..3 {
            let rdm = reduced_density_matrix(state, &[particle]).unwrap();
            assert!(rdm.max_deviation_from_maximally_mixed() < 1e-9);
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("ACCEPTANCE 3 (count-claims): PASS in {elapsed:?}");
}

#[test]
fn criterion_4_schur_weyl_identity() {
    let start = Instant::now();
    for particles in 1..=8u32 {
        for levels in 1..=4u32 {
            let check = schur_weyl_identity(particles, levels).unwrap();
            assert!(check.holds, "identity fails at N={particles}, n={levels}");
            assert_eq!(check.total, (levels as u64).pow(particles));
        }
    }
    for particles in 1..=6u32 {
        for lambda in enumerate_partitions(particles).unwrap() {
            assert_eq!(
                hook_length_dim(&lambda),
                enumerate_standard_tableaux(&lambda).unwrap().len() as u64,
                "hook-length dimension vs tableau count for {lambda}"
            );
        }
    }
    for particles in 1..=8u32 {
        let squares: u64 = enumerate_partitions(particles)
            .unwrap()
            .iter()
            .map(|l| hook_length_dim(l).pow(2))
            .sum();
        let factorial: u64 = (1..=particles as u64).product();
        assert_eq!(squares, factorial, "Σ f² at N={particles}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("ACCEPTANCE 4 (schur-weyl-identity): PASS in {elapsed:?}");
}

#[test]
fn criterion_5_projector_suite() {
    let start = Instant::now();
    for (levels, particles) in [(2u32, 2u32), (2, 3), (3, 3), (2, 4)] {
        let space = SpaceSpec::new(levels, particles).unwrap();
        let dim = space.dim();
        let partitions = enumerate_partitions(particles).unwrap();
        let projectors: Vec<DMatrix<Complex64>> = partitions
            .iter()
            .map(|l| isotypic_projector(l, space).unwrap())
            .collect();
        let mut sum = DMatrix::<Complex64>::zeros(dim, dim);
        for (lambda, p) in partitions.iter().zip(&projectors) {
            assert!(
                max_abs(&(p * p - p)) < 1e-8,
                "P² != P for {lambda} at n={levels}, N={particles}"
            );
            let rank = nalgebra::linalg::SymmetricEigen::new(p.clone())
                .eigenvalues
                .iter()
                .filter(|&&v| v > 0.5)
                .count();
            let expected = (hook_length_dim(lambda) * weyl_dim(lambda, levels).unwrap()) as usize;
            assert_eq!(rank, expected, "rank of P_{lambda}");
            sum += p;
        }
        for i in 0..projectors.len() {
            for j in 0..projectors.len() {
                if i != j {
                    assert!(
                        max_abs(&(&projectors[i] * &projectors[j])) < 1e-8,
                        "projectors not orthogonal at n={levels}, N={particles}"
                    );
                }
            }
        }
        let identity = DMatrix::<Complex64>::identity(dim, dim);
        assert!(max_abs(&(sum - identity)) < 1e-10, "completeness fails");
    }

    // Young symmetrizer quasi-idempotence, all standard tableaux of N <= 4
    for particles in 2..=4u32 {
        let factorial: f64 = (1..=particles as u64).product::<u64>() as f64;
        for levels in [2u32, 3] {
            let space = SpaceSpec::new(levels, particles).unwrap();
            for lambda in enumerate_partitions(particles).unwrap() {
                let constant = factorial / hook_length_dim(&lambda) as f64;
                for tableau in enumerate_standard_tableaux(&lambda).unwrap() {
                    let c = young_symmetrizer(&tableau, space).unwrap();
                    let c2 = &c * &c;
                    let scaled = &c * Complex64::new(constant, 0.0);
                    let scale = max_abs(&c) * constant;
                    let tolerance = 1e-8 * scale.max(1.0);
                    assert!(
                        max_abs(&(c2 - scaled)) < tolerance,
                        "c² != (N!/f)c for tableau {tableau} at n={levels}"
                    );
                }
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("ACCEPTANCE 5 (projector-suite): PASS in {elapsed:?}");
}

#[test]
fn criterion_6_oracle_equivalence() {
    use rand::SeedableRng;
    let start = Instant::now();
    let tolerance = 1e-8;
    for (levels, particles) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)] {
        let space = SpaceSpec::new(levels, particles).unwrap();
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(1000 + (levels * 10 + particles) as u64);
        for _ in 0..100 {
            let psi = StateVector::random(space, &mut rng);
            let report = verify_entanglement(&psi, tolerance).unwrap();
            let mut oracle_dev: f64 = 0.0;
            for p in 0..particles as usize {
                let rho = oracle_single_particle_rdm(&psi, p);
                oracle_dev = oracle_dev.max(oracle_deviation(&rho));
                let entropy = oracle_entropy(&rho);
                assert!(
                    (report.per_particle_entropy[p] - entropy).abs() < 1e-9,
                    "entropy disagrees with oracle at n={levels}, N={particles}"
                );
            }
            assert_eq!(
                report.maximal,
                oracle_dev < tolerance,
                "verdict disagrees with oracle at n={levels}, N={particles}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("ACCEPTANCE 6 (oracle-equivalence): PASS in {elapsed:?}");
}

#[test]
fn criterion_7_ladder_property() {
    let start = Instant::now();
    for particles in 2..=5u32 {
        let coupled = coupled_basis(particles, Convention::SequentialCoupling).unwrap();
        let dicke: Vec<(CoupledLabel, StateVector)> = coupled
            .into_iter()
            .filter(|(l, _)| l.twice_j() == particles)
            .collect();
        let profile = entsym::entangle::manifold_profile(&dicke).unwrap();
        let len = profile.len();
        assert_eq!(len, particles as usize + 1);
        for i in 0..len {
            assert!(
                (profile[i].1 - profile[len - 1 - i].1).abs() < 1e-9,
                "profile not m -> -m symmetric at N={particles}"
            );
        }
        for w in profile[..len / 2].windows(2) {
            assert!(
                w[0].1 <= w[1].1 + 1e-12,
                "entropy not non-increasing in |m| at N={particles}"
            );
        }
        if particles == 3 {
            let entropies: Vec<f64> = profile.iter().map(|p| p.1).collect();
            let expected = [0.0, 0.9183, 0.9183, 0.0];
            for (got, want) in entropies.iter().zip(expected) {
                assert!((got - want).abs() < 1e-4, "N=3 profile {entropies:?}");
            }
        }
    }
    let elapsed = start.elapsed();
    println!("ACCEPTANCE 7 (ladder-property): PASS in {elapsed:?}");
}

#[test]
fn criterion_8_honest_discrepancy() {
    let start = Instant::now();
    // (|3/2,1/2> + |3/2,-1/2>)/√2, i.e. the W state plus its conjugate
    let coupled = coupled_basis(3, Convention::SequentialCoupling).unwrap();
    let (label, state) = coupled
        .iter()
        .find(|(l, _)| l.twice_j() == 3 && l.twice_m() == 1)
        .expect("|3/2,1/2> exists");
    let paired = entsym::entangle::pair_conjugates(
        entsym::entangle::PairSource::Coupled(*label),
        state,
        Complex64::ONE,
    )
    .unwrap();

    // the tool reports particle-1 RDM eigenvalues {5/6, 1/6}
    let rdm = reduced_density_matrix(&paired.vector, &[0]).unwrap();
    let eigs = rdm.eigenvalues().unwrap();
    assert!((eigs[0] - 5.0 / 6.0).abs() < 1e-10, "got {eigs:?}");
    assert!((eigs[1] - 1.0 / 6.0).abs() < 1e-10, "got {eigs:?}");

    // the oracle agrees, entrywise and on the verdict
    let oracle_rho = oracle_single_particle_rdm(&paired.vector, 0);
    let oracle_eigs = oracle_eigenvalues(&oracle_rho);
    assert!((oracle_eigs[0] - 5.0 / 6.0).abs() < 1e-10);
    assert!((oracle_eigs[1] - 1.0 / 6.0).abs() < 1e-10);
    let report = verify_entanglement(&paired.vector, 1e-8).unwrap();
    assert!(
        !report.maximal,
        "a blanket maximality claim would be wrong here"
    );

    // across the whole N=3 paired basis the verdict matches the oracle
    // state by state: only the |111> ± |222> pair is maximal
    let mut maximal_count = 0;
    for paired in pair_basis(3).unwrap() {
        let report = verify_entanglement(&paired.vector, 1e-8).unwrap();
        let mut oracle_dev: f64 = 0.0;
        for p in 0..3 {
            oracle_dev = oracle_dev.max(oracle_deviation(&oracle_single_particle_rdm(
                &paired.vector,
                p,
            )));
        }
        assert_eq!(report.maximal, oracle_dev < 1e-8);
        if report.maximal {
            maximal_count += 1;
        }
    }
    assert_eq!(maximal_count, 2);

    let elapsed = start.elapsed();
    println!("ACCEPTANCE 8 (honest-discrepancy): PASS in {elapsed:?}");
}

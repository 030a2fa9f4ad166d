//! Independent brute-force oracles. Everything here works from the raw
//! definitions: the partial trace enumerates environment letter tuples
//! directly, and eigenvalues of the small Hermitian matrices come from
//! closed forms (quadratic for 2x2, trigonometric for 3x3) rather than
//! from any library eigensolver.

use entsym::hilbert::StateVector;
use num_complex::Complex64;

/// Definition-level partial trace:
/// rho[a,b] = Σ_e ψ(a,e) · conj(ψ(b,e)), with (a,e) recombined into full
/// words positionwise and indexed by independent base-n arithmetic.
pub fn rdm_oracle(psi: &StateVector, keep: &[usize]) -> Vec<Vec<Complex64>> {
    let n = psi.space().levels() as usize;
    let particles = psi.space().particles() as usize;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let env: Vec<usize> = (0..particles).filter(|p| !kept.contains(p)).collect();
    let kept_dim = n.pow(kept.len() as u32);
    let env_dim = n.pow(env.len() as u32);

    let digits = |mut x: usize, len: usize| -> Vec<usize> {
        let mut out = vec![0usize; len];
        for slot in out.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        out
    };
    let read_amp = |word: &[usize]| -> Complex64 {
        let mut idx = 0usize;
        for &digit in word {
            idx = idx * n + digit;
        }
        psi.amplitudes()[idx]
    };

    let mut rho = vec![vec![Complex64::ZERO; kept_dim]; kept_dim];
    for a in 0..kept_dim {
        let da = digits(a, kept.len());
        for b in 0..kept_dim {
            let db = digits(b, kept.len());
            let mut sum = Complex64::ZERO;
            for e in 0..env_dim {
                let de = digits(e, env.len());
                let mut wa = vec![0usize; particles];
                let mut wb = vec![0usize; particles];
                for (i, &p) in kept.iter().enumerate() {
                    wa[p] = da[i];
                    wb[p] = db[i];
                }
                for (i, &p) in env.iter().enumerate() {
                    wa[p] = de[i];
                    wb[p] = de[i];
                }
                sum += read_amp(&wa) * read_amp(&wb).conj();
            }
            rho[a][b] = sum;
        }
    }
    rho
}

/// Eigenvalues of a 2x2 or 3x3 Hermitian matrix by closed form,
/// descending.
pub fn hermitian_eigenvalues_oracle(rho: &[Vec<Complex64>]) -> Vec<f64> {
    match rho.len() {
        2 => {
            let a = rho[0][0].re;
            let b = rho[1][1].re;
            let c = rho[0][1];
            let mid = (a + b) / 2.0;
            let radius = (((a - b) / 2.0).powi(2) + c.norm_sqr()).sqrt();
            vec![mid + radius, mid - radius]
        }
        3 => {
            // trigonometric solution for symmetric/Hermitian 3x3
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
            let r = (det.re / 2.0).clamp(-1.0, 1.0);
            let phi = r.acos() / 3.0;
            let eig1 = q + 2.0 * p * phi.cos();
            let eig3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
            let eig2 = 3.0 * q - eig1 - eig3;
            let mut eigs = vec![eig1, eig2, eig3];
            eigs.sort_unstable_by(|x, y| y.partial_cmp(x).unwrap());
            eigs
        }
        other => panic!("closed-form oracle covers 2x2 and 3x3; got {other}x{other}"),
    }
}

/// Entropy in bits from the closed-form eigenvalues, clipping tiny
/// negatives from roundoff.
pub fn entropy_oracle(rho: &[Vec<Complex64>]) -> f64 {
    hermitian_eigenvalues_oracle(rho)
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// Max-abs deviation of an oracle RDM from (1/dim)·Identity.
pub fn deviation_oracle(rho: &[Vec<Complex64>]) -> f64 {
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

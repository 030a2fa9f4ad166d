//! Integer combinatorics of partitions and Young tableaux.
//!
//! A partition λ of N indexes one symmetry sector of the N-particle
//! product space. Two dimension counts drive all the bookkeeping:
//!
//! * `hook_length_dim(λ)` — the number of standard tableaux of shape λ,
//!   which is the dimension of the symmetric-group irrep (and the number
//!   of degenerate copies of the matching level-space irrep);
//! * `weyl_dim(λ, n)` — the number of semistandard tableaux with entries
//!   in 1..=n, which is the dimension of the level-space irrep (and the
//!   number of copies of the symmetric-group irrep).
//!
//! Their pairing exhausts the full space:
//! Σ_λ hook_length_dim(λ) · weyl_dim(λ, n) == n^N, checked exactly in
//! 64-bit integers by [`schur_weyl_identity`].

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest particle count the integer machinery accepts. 12! still fits
/// comfortably in an i64/u64, so every factorial and hook product below
/// is overflow-free.
pub const MAX_PARTITION_TOTAL: u32 = 12;

/// Largest N for explicit standard-tableau enumeration.
pub const MAX_TABLEAU_TOTAL: u32 = 8;

/// Largest entry bound for `weyl_dim`.
pub const MAX_WEYL_LEVELS: u32 = 8;

/// A non-increasing tuple of positive integers; its sum is the particle
/// count N of the sector it labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain(
                "partition must have at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "partition {parts:?} is not non-increasing"
            )));
        }
        let total: u32 = parts.iter().sum();
        if total > MAX_PARTITION_TOTAL {
            return Err(Error::Bounds {
                what: "partition total",
                value: total as i64,
                limit: "1..=12",
            });
        }
        Ok(Self { parts })
    }

    /// Single-row partition [N].
    pub fn single_row(total: u32) -> Result<Self> {
        Self::new(vec![total])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// N, the number of cells.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Column lengths (the transposed shape).
    pub fn conjugate_parts(&self) -> Vec<u32> {
        let cols = self.parts[0] as usize;
        (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses "3", "2,1" or "[2,1]".
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Domain(format!("cannot parse partition part {tok:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

/// The cell diagram of a partition: cell (r, c) present iff c < parts[r],
/// 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungDiagram {
    partition: Partition,
}

impl YoungDiagram {
    pub fn new(partition: Partition) -> Self {
        Self { partition }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row < self.partition.rows() && col < self.partition.parts()[row] as usize
    }

    /// Cells in row-major order; their count is N.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.partition
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
            .collect()
    }

    /// Hook length of cell (r, c): arm + leg + 1.
    pub fn hook_length(&self, row: usize, col: usize) -> u32 {
        debug_assert!(self.contains(row, col));
        let arm = self.partition.parts()[row] - col as u32 - 1;
        let leg = self
            .partition
            .parts()
            .iter()
            .skip(row + 1)
            .filter(|&&p| p as usize > col)
            .count() as u32;
        arm + leg + 1
    }
}

/// All partitions of `total`, each exactly once, in reverse-lexicographic
/// order: `[N]` first, `[1,1,...,1]` last.
pub fn enumerate_partitions(total: u32) -> Result<Vec<Partition>> {
    if total == 0 || total > MAX_PARTITION_TOTAL {
        return Err(Error::Bounds {
            what: "partition total",
            value: total as i64,
            limit: "1..=12",
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        let first = remaining.min(max_part);
        for part in (1..=first).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(total, total, &mut current, &mut out);
    Ok(out)
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

/// Number of standard Young tableaux of shape λ: N! over the product of
/// all hook lengths. Equals the dimension of the symmetric-group irrep
/// labeled by λ.
pub fn hook_length_dim(lambda: &Partition) -> u64 {
    let diagram = YoungDiagram::new(lambda.clone());
    let hook_product: u64 = diagram
        .cells()
        .iter()
        .map(|&(r, c)| diagram.hook_length(r, c) as u64)
        .try_fold(1u64, |acc, h| acc.checked_mul(h))
        .expect("hook product fits u64 for totals <= 12");
    factorial(lambda.total()) / hook_product
}

/// Number of semistandard Young tableaux of shape λ with entries in
/// 1..=n, by the hook content formula: ∏ (n + c − r) / ∏ hook(r, c).
/// Zero when λ has more than n rows.
pub fn weyl_dim(lambda: &Partition, levels: u32) -> Result<u64> {
    if levels == 0 || levels > MAX_WEYL_LEVELS {
        return Err(Error::Bounds {
            what: "levels n",
            value: levels as i64,
            limit: "1..=8",
        });
    }
    if lambda.rows() > levels as usize {
        return Ok(0);
    }
    let diagram = YoungDiagram::new(lambda.clone());
    let mut numerator: u128 = 1;
    let mut denominator: u128 = 1;
    for (r, c) in diagram.cells() {
        numerator *= (levels as i64 + c as i64 - r as i64) as u128;
        denominator *= diagram.hook_length(r, c) as u128;
    }
    debug_assert_eq!(numerator % denominator, 0);
    Ok((numerator / denominator) as u64)
}

/// One λ-term of the full-space dimension count.
#[derive(Debug, Clone, Serialize)]
pub struct SchurWeylTerm {
    pub partition: Partition,
    /// hook_length_dim(λ): standard-tableau count.
    pub irrep_dim: u64,
    /// weyl_dim(λ, n): semistandard-tableau count.
    pub weyl_dim: u64,
    pub product: u64,
}

/// Exact evaluation of Σ_λ hook_length_dim(λ) · weyl_dim(λ, n) against n^N.
#[derive(Debug, Clone, Serialize)]
pub struct SchurWeylCheck {
    pub total: u64,
    pub expected: u64,
    pub holds: bool,
    pub terms: Vec<SchurWeylTerm>,
}

pub fn schur_weyl_identity(particles: u32, levels: u32) -> Result<SchurWeylCheck> {
    let partitions = enumerate_partitions(particles)?;
    let mut terms = Vec::with_capacity(partitions.len());
    let mut total: u64 = 0;
    for partition in partitions {
        let irrep_dim = hook_length_dim(&partition);
        let wd = weyl_dim(&partition, levels)?;
        let product = irrep_dim
            .checked_mul(wd)
            .expect("dimension product fits u64 for totals <= 12");
        total = total.checked_add(product).expect("total fits u64");
        terms.push(SchurWeylTerm {
            partition,
            irrep_dim,
            weyl_dim: wd,
            product,
        });
    }
    let expected = (levels as u64)
        .checked_pow(particles)
        .expect("n^N fits u64 for the guarded ranges");
    Ok(SchurWeylCheck {
        total,
        expected,
        holds: total == expected,
        terms,
    })
}

/// A filling of a Young diagram with 1..=N, strictly increasing along
/// rows and down columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entries of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<u32> {
        self.rows
            .iter()
            .filter_map(|row| row.get(c).copied())
            .collect()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All standard tableaux of shape λ, in lexicographic order of their
/// row-major reading. List length equals `hook_length_dim(λ)`.
pub fn enumerate_standard_tableaux(lambda: &Partition) -> Result<Vec<StandardTableau>> {
    let total = lambda.total();
    if total > MAX_TABLEAU_TOTAL {
        return Err(Error::Bounds {
            what: "tableau total",
            value: total as i64,
            limit: "1..=8",
        });
    }
    let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut rows: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut fill: Vec<usize> = vec![0; shape.len()]; // cells placed per row
    let mut out = Vec::new();

    fn rec(
        entry: u32,
        total: u32,
        shape: &[usize],
        rows: &mut Vec<Vec<u32>>,
        fill: &mut Vec<usize>,
        lambda: &Partition,
        out: &mut Vec<StandardTableau>,
    ) {
        if entry > total {
            out.push(StandardTableau {
                shape: lambda.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for r in 0..shape.len() {
            let c = fill[r];
            if c >= shape[r] {
                continue;
            }
            // row-increase is automatic (entries placed in increasing
            // order); require the column predecessor to be present
            if r > 0 && fill[r - 1] <= c {
                continue;
            }
            rows[r][c] = entry;
            fill[r] += 1;
            rec(entry + 1, total, shape, rows, fill, lambda, out);
            fill[r] -= 1;
        }
    }
    rec(1, total, &shape, &mut rows, &mut fill, lambda, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    // independent counter: non-increasing compositions by brute recursion
    fn count_partitions(remaining: u32, max_part: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (1..=remaining.min(max_part))
            .map(|part| count_partitions(remaining - part, part))
            .sum()
    }

    // brute-force semistandard fillings: rows weakly increasing, columns
    // strictly increasing, entries in 1..=n
    fn count_ssyt(lambda: &Partition, levels: u32) -> u64 {
        let shape: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
        let mut rows: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len]).collect();
        fn rec(
            cell: usize,
            cells: &[(usize, usize)],
            levels: u32,
            rows: &mut Vec<Vec<u32>>,
        ) -> u64 {
            if cell == cells.len() {
                return 1;
            }
            let (r, c) = cells[cell];
            let min_row = if c > 0 { rows[r][c - 1] } else { 1 };
            let min_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            let lo = min_row.max(min_col);
            let mut count = 0;
            for v in lo..=levels {
                rows[r][c] = v;
                count += rec(cell + 1, cells, levels, rows);
            }
            rows[r][c] = 0;
            count
        }
        let cells = YoungDiagram::new(lambda.clone()).cells();
        rec(0, &cells, levels, &mut rows)
    }

    #[test]
    fn partitions_of_three() {
        let parts = enumerate_partitions(3).unwrap();
        assert_eq!(
            parts,
            vec![partition(&[3]), partition(&[2, 1]), partition(&[1, 1, 1])]
        );
    }

    #[test]
    fn partitions_base_case_and_count() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![partition(&[1])]);
        // frozen from the brute-force counter below
        assert_eq!(enumerate_partitions(6).unwrap().len(), 11);
        for total in 1..=10 {
            assert_eq!(
                enumerate_partitions(total).unwrap().len() as u64,
                count_partitions(total, total)
            );
        }
    }

    #[test]
    fn partitions_reverse_lexicographic() {
        for total in 1..=8u32 {
            let parts = enumerate_partitions(total).unwrap();
            assert_eq!(parts[0], partition(&[total]));
            assert_eq!(*parts.last().unwrap(), partition(&vec![1; total as usize]));
            for w in parts.windows(2) {
                assert!(w[0].parts() > w[1].parts(), "{} !> {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn partitions_bounds_error_names_limit() {
        let err = enumerate_partitions(13).unwrap_err();
        assert!(err.to_string().contains("1..=12"), "{err}");
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![13]).is_err());
        assert_eq!("2,1".parse::<Partition>().unwrap(), partition(&[2, 1]));
        assert_eq!("[3]".parse::<Partition>().unwrap(), partition(&[3]));
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn hook_dims() {
        assert_eq!(hook_length_dim(&partition(&[2, 1])), 2);
        for total in 1..=8 {
            assert_eq!(hook_length_dim(&partition(&[total])), 1);
        }
        // frozen from the standard-tableau enumeration: [2,2] has two fillings
        assert_eq!(hook_length_dim(&partition(&[2, 2])), 2);
    }

    #[test]
    fn hook_dim_matches_tableau_count() {
        for total in 1..=6 {
            for lambda in enumerate_partitions(total).unwrap() {
                let tableaux = enumerate_standard_tableaux(&lambda).unwrap();
                assert_eq!(
                    tableaux.len() as u64,
                    hook_length_dim(&lambda),
                    "shape {lambda}"
                );
            }
        }
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&partition(&[1, 1, 1]), 2).unwrap(), 0);
        assert_eq!(weyl_dim(&partition(&[3]), 2).unwrap(), 4);
        assert_eq!(weyl_dim(&partition(&[2, 1]), 3).unwrap(), 8);
        assert!(weyl_dim(&partition(&[2]), 9).is_err());
    }

    #[test]
    fn weyl_dim_matches_ssyt_enumeration() {
        for total in 1..=5 {
            for lambda in enumerate_partitions(total).unwrap() {
                for levels in 1..=4 {
                    assert_eq!(
                        weyl_dim(&lambda, levels).unwrap(),
                        count_ssyt(&lambda, levels),
                        "shape {lambda}, n={levels}"
                    );
                }
            }
        }
    }

    #[test]
    fn schur_weyl_examples() {
        let check = schur_weyl_identity(3, 2).unwrap();
        assert!(check.holds);
        assert_eq!(check.total, 8);
        let products: Vec<(u64, u64)> = check
            .terms
            .iter()
            .map(|t| (t.irrep_dim, t.weyl_dim))
            .collect();
        assert_eq!(products, vec![(1, 4), (2, 2), (1, 0)]);

        let check = schur_weyl_identity(3, 3).unwrap();
        assert!(check.holds);
        assert_eq!(check.total, 27);
        let products: Vec<(u64, u64)> = check
            .terms
            .iter()
            .map(|t| (t.irrep_dim, t.weyl_dim))
            .collect();
        assert_eq!(products, vec![(1, 10), (2, 8), (1, 1)]);

        let check = schur_weyl_identity(1, 5).unwrap();
        assert!(check.holds);
        assert_eq!(check.total, 5);
    }

    #[test]
    fn schur_weyl_holds_everywhere_in_guard() {
        for particles in 1..=8 {
            for levels in 1..=4 {
                assert!(schur_weyl_identity(particles, levels).unwrap().holds);
            }
        }
    }

    #[test]
    fn squared_dims_sum_to_factorial() {
        for total in 1..=8u32 {
            let sum: u64 = enumerate_partitions(total)
                .unwrap()
                .iter()
                .map(|l| hook_length_dim(l).pow(2))
                .sum();
            assert_eq!(sum, factorial(total), "N={total}");
        }
    }

    #[test]
    fn standard_tableaux_small_shapes() {
        let t = enumerate_standard_tableaux(&partition(&[2, 1])).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].rows(), &[vec![1, 2], vec![3]]);
        assert_eq!(t[1].rows(), &[vec![1, 3], vec![2]]);

        let t = enumerate_standard_tableaux(&partition(&[3])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].rows(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn standard_tableaux_match_brute_force_fillings() {
        // all 4! fillings of [2,2], filtered by row/column increase
        let lambda = partition(&[2, 2]);
        let mut brute = 0;
        for p in crate::perm::Permutation::all(4) {
            let rows = [
                [p.image(0) as u32 + 1, p.image(1) as u32 + 1],
                [p.image(2) as u32 + 1, p.image(3) as u32 + 1],
            ];
            let row_ok = rows.iter().all(|r| r[0] < r[1]);
            let col_ok = rows[0][0] < rows[1][0] && rows[0][1] < rows[1][1];
            if row_ok && col_ok {
                brute += 1;
            }
        }
        assert_eq!(brute, 2);
        assert_eq!(enumerate_standard_tableaux(&lambda).unwrap().len(), brute);
    }

    #[test]
    fn standard_tableaux_use_each_entry_once() {
        for lambda in enumerate_partitions(5).unwrap() {
            for t in enumerate_standard_tableaux(&lambda).unwrap() {
                let mut entries: Vec<u32> = t.rows().iter().flatten().copied().collect();
                entries.sort_unstable();
                assert_eq!(entries, (1..=5).collect::<Vec<u32>>());
            }
        }
    }

    #[test]
    fn standard_tableaux_bounds() {
        let err = enumerate_standard_tableaux(&partition(&[9])).unwrap_err();
        assert!(err.to_string().contains("1..=8"), "{err}");
    }
}

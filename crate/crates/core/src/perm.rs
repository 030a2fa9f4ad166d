//! Permutations of particle positions.
//!
//! A [`Permutation`] stores the image table `images[k] = σ(k)` over
//! 0-indexed positions. Acting on a basis word moves the letter at
//! position `k` to position `σ(k)`, which makes the induced action on
//! states a left group action: `U(στ) = U(σ)U(τ)`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity on `len` positions.
    pub fn identity(len: usize) -> Self {
        Self {
            images: (0..len).collect(),
        }
    }

    /// Build from an image table; must be a bijection on 0..len.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &img in &images {
            if img >= len || seen[img] {
                return Err(Error::Domain(format!(
                    "image table {images:?} is not a bijection on 0..{len}"
                )));
            }
            seen[img] = true;
        }
        Ok(Self { images })
    }

    /// Swap positions `a` and `b` (0-indexed).
    pub fn transposition(len: usize, a: usize, b: usize) -> Result<Self> {
        if a >= len || b >= len {
            return Err(Error::Domain(format!(
                "transposition ({a} {b}) out of range for {len} positions"
            )));
        }
        let mut images: Vec<usize> = (0..len).collect();
        images.swap(a, b);
        Ok(Self { images })
    }

    /// Build from disjoint cycles over 0-indexed positions;
    /// `(a b c)` maps a→b, b→c, c→a.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut touched = vec![false; len];
        for cycle in cycles {
            for (i, &pos) in cycle.iter().enumerate() {
                if pos >= len {
                    return Err(Error::Domain(format!(
                        "cycle position {pos} out of range for {len} positions"
                    )));
                }
                if touched[pos] {
                    return Err(Error::Domain(format!(
                        "position {pos} appears in more than one cycle"
                    )));
                }
                touched[pos] = true;
                images[pos] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, pos: usize) -> usize {
        self.images[pos]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (k, &img) in self.images.iter().enumerate() {
            images[img] = k;
        }
        Self { images }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let images = (0..self.len())
            .map(|k| self.image(other.image(k)))
            .collect();
        Ok(Self { images })
    }

    /// +1 for even permutations, −1 for odd.
    pub fn sign(&self) -> i64 {
        let transposition_parity: usize = self
            .cycle_lengths()
            .iter()
            .map(|&cycle_len| cycle_len - 1)
            .sum();
        if transposition_parity.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Cycle lengths sorted in non-increasing order (the cycle type,
    /// including fixed points as 1-cycles).
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut visited = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut pos = start;
            while !visited[pos] {
                visited[pos] = true;
                pos = self.images[pos];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// All `len!` permutations, in lexicographic order of the image table.
    pub fn all(len: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(len);
        let mut used = vec![false; len];
        fn rec(
            len: usize,
            current: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Permutation>,
        ) {
            if current.len() == len {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for img in 0..len {
                if !used[img] {
                    used[img] = true;
                    current.push(img);
                    rec(len, current, used, out);
                    current.pop();
                    used[img] = false;
                }
            }
        }
        rec(len, &mut current, &mut used, &mut out);
        out
    }
}

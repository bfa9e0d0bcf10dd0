//! Permutations of `[n] = {1, ..., n}` in one-line notation and the Kendall tau
//! metric on them.
//!
//! Composition follows the convention `(pi ∘ sigma)(i) = sigma(pi(i))`, i.e. `pi` is
//! applied first. This is the reverse of the usual right-to-left reading. The
//! Kendall distance only depends on relative orders of inverse images, so it does
//! not care which convention is used.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest `n` accepted for group arithmetic.
pub const MAX_GROUP_N: usize = 20;

/// Largest `n` for which the whole of `S_n` may be enumerated.
pub const MAX_ENUM_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid permutation size {0} (expected 1..={max})", max = MAX_GROUP_N)]
    InvalidSize(usize),
    #[error("size mismatch: {left} != {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a permutation of 1..={n}: {reason}")]
    NotABijection { n: usize, reason: String },
    #[error("enumeration of S_{0} exceeds the budget (n <= {max})", max = MAX_ENUM_N)]
    EnumerationTooLarge(usize),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
}

/// An element of `S_n` stored as `[pi(1), ..., pi(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 1-based values.
    entries: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (values `1..=n`).
    pub fn new(entries: &[usize]) -> Result<Self, PermError> {
        let n = entries.len();
        if n == 0 || n > MAX_GROUP_N {
            return Err(PermError::InvalidSize(n));
        }
        let mut seen = [false; MAX_GROUP_N + 1];
        for &v in entries {
            if v == 0 || v > n {
                return Err(PermError::NotABijection {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(PermError::NotABijection {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Self {
            entries: entries.iter().map(|&v| v as u8).collect(),
        })
    }

    fn from_raw(entries: Vec<u8>) -> Self {
        debug_assert!(!entries.is_empty() && entries.len() <= MAX_GROUP_N);
        Self { entries }
    }

    /// The identity `[1, 2, ..., n]`.
    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 || n > MAX_GROUP_N {
            return Err(PermError::InvalidSize(n));
        }
        Ok(Self::from_raw((1..=n as u8).collect()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; permutations have at least one point.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `pi(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.len(), "index {i} outside 1..={}", self.len());
        self.entries[i - 1] as usize
    }

    /// One-line notation as 1-based values.
    pub fn to_vec(&self) -> Vec<usize> {
        self.entries.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    fn check_same_size(&self, other: &Self) -> Result<(), PermError> {
        if self.len() != other.len() {
            return Err(PermError::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// `(self ∘ sigma)(i) = sigma(self(i))`.
    pub fn compose(&self, sigma: &Self) -> Result<Self, PermError> {
        self.check_same_size(sigma)?;
        Ok(Self::from_raw(
            self.entries.iter().map(|&v| sigma.entries[v as usize - 1]).collect(),
        ))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Self::from_raw(inv)
    }

    /// `[pi(n), ..., pi(1)]`.
    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self::from_raw(entries)
    }

    /// Number of inversions, i.e. the Kendall distance to the identity.
    pub fn kendall_weight(&self) -> u64 {
        count_inversions(&self.entries)
    }

    /// Kendall tau distance: the number of value pairs `(i, j)` that `self` and
    /// `other` place in opposite relative order.
    ///
    /// Walking the values in the order `self` lists them and replacing each by its
    /// position in `other` gives the sequence `(self ∘ other⁻¹)`; its discordant
    /// pairs are exactly its inversions.
    pub fn kendall_distance(&self, other: &Self) -> Result<u64, PermError> {
        let relabeled = self.compose(&other.inverse())?;
        Ok(relabeled.kendall_weight())
    }

    /// All permutations reachable by one adjacent transposition, ordered by the
    /// swapped position.
    pub fn adjacent_neighbors(&self) -> Vec<Self> {
        (0..self.len().saturating_sub(1))
            .map(|i| {
                let mut entries = self.entries.clone();
                entries.swap(i, i + 1);
                Self::from_raw(entries)
            })
            .collect()
    }
}

/// Inversion count by merge sort, `O(n log n)`.
fn count_inversions(values: &[u8]) -> u64 {
    let mut buf = values.to_vec();
    let mut scratch = vec![0u8; buf.len()];
    sort_count(&mut buf, &mut scratch)
}

fn sort_count(v: &mut [u8], scratch: &mut [u8]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (lo, hi) = v.split_at_mut(mid);
        let (slo, shi) = scratch.split_at_mut(mid);
        sort_count(lo, slo) + sort_count(hi, shi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            scratch[k] = v[i];
            i += 1;
        } else {
            // v[i..mid] all exceed v[j].
            count += (mid - i) as u64;
            scratch[k] = v[j];
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    count
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| PermError::Parse(s.to_string()))?;
        let values = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PermError::Parse(s.to_string()))?;
        Permutation::new(&values)
    }
}

/// Lazy lexicographic enumeration of `S_n`.
#[derive(Debug, Clone)]
pub struct LexPermutations {
    next: Option<Vec<u8>>,
}

/// Every permutation of `[n]` exactly once, in lexicographic order of one-line
/// notation. Requires `1 <= n <= 10`.
pub fn enumerate_sn(n: usize) -> Result<LexPermutations, PermError> {
    if n == 0 {
        return Err(PermError::InvalidSize(n));
    }
    if n > MAX_ENUM_N {
        return Err(PermError::EnumerationTooLarge(n));
    }
    Ok(LexPermutations {
        next: Some((1..=n as u8).collect()),
    })
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Standard next-permutation step.
        if let Some(k) = (0..succ.len().saturating_sub(1)).rev().find(|&k| succ[k] < succ[k + 1]) {
            let l = (k + 1..succ.len()).rev().find(|&l| succ[k] < succ[l]).unwrap();
            succ.swap(k, l);
            succ[k + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation::from_raw(current))
    }
}

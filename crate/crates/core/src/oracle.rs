//! Brute-force ground truth over small symmetric groups: inversion histograms,
//! ball censuses around arbitrary centers, pairwise distance checks and an
//! exhaustive exact-cover search for perfect codes.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::mahonian::{max_distance, SphereTable};
use crate::numtheory;
use crate::perm::{enumerate_sn, PermError, Permutation};

pub const MAX_HISTOGRAM_N: usize = 10;
pub const MAX_CENSUS_N: usize = 8;
pub const MAX_SEARCH_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} requires 2 <= n <= {max}, got {n}")]
    OutOfRange { what: &'static str, n: usize, max: usize },
    #[error("center has size {got}, expected {expected}")]
    CenterSize { expected: usize, got: usize },
    #[error("code is empty")]
    EmptyCode,
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn check_range(what: &'static str, n: usize, max: usize) -> Result<(), OracleError> {
    if n < 2 || n > max {
        return Err(OracleError::OutOfRange { what, n, max });
    }
    Ok(())
}

/// `counts[i]` is the number of permutations of `[n]` with `i` inversions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionHistogram {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl InversionHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Histogram of inversion counts over all of `S_n`, by enumeration.
pub fn inversion_histogram(n: usize) -> Result<InversionHistogram, OracleError> {
    check_range("inversion histogram", n, MAX_HISTOGRAM_N)?;
    let mut counts = vec![0u64; max_distance(n) + 1];
    for pi in enumerate_sn(n)? {
        counts[pi.kendall_weight() as usize] += 1;
    }
    Ok(InversionHistogram { n, counts })
}

/// Number of permutations within Kendall distance `r` of `center`.
pub fn ball_census(n: usize, r: u64, center: &Permutation) -> Result<BigUint, OracleError> {
    check_range("ball census", n, MAX_CENSUS_N)?;
    if center.len() != n {
        return Err(OracleError::CenterSize {
            expected: n,
            got: center.len(),
        });
    }
    let mut count = 0u64;
    for sigma in enumerate_sn(n)? {
        if sigma.kendall_distance(center)? <= r {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// True iff every pair of distinct codewords is at distance at least `d`.
pub fn verify_min_distance(code: &[Permutation], d: u64) -> Result<bool, OracleError> {
    let first = code.first().ok_or(OracleError::EmptyCode)?;
    for (k, a) in code.iter().enumerate() {
        if a.len() != first.len() {
            return Err(PermError::SizeMismatch {
                left: first.len(),
                right: a.len(),
            }
            .into());
        }
        for b in &code[k + 1..] {
            if a.kendall_distance(b)? < d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<Permutation>),
    ExhaustedNone,
    AbortedBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSearchResult {
    pub n: usize,
    pub t: u64,
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
    /// Set when the ball size does not divide `n!`, so no search was run.
    pub ruled_out_by_divisibility: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of codeword placements.
    pub node_budget: u64,
    /// Start every cover with the identity as a codeword. Any perfect code can be
    /// translated onto one containing the identity, so this loses no solutions.
    pub fix_identity: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            node_budget: 50_000_000,
            fix_identity: true,
        }
    }
}

/// Exact-cover search for a perfect `t`-error-correcting code in `S_n`,
/// `2 <= n <= 6`, with the identity fixed as a codeword.
pub fn search_perfect_code(n: usize, t: u64, node_budget: u64) -> Result<CodeSearchResult, OracleError> {
    search_perfect_code_with(
        n,
        t,
        &SearchOptions {
            node_budget,
            fix_identity: true,
        },
    )
}

pub fn search_perfect_code_with(n: usize, t: u64, options: &SearchOptions) -> Result<CodeSearchResult, OracleError> {
    check_range("perfect-code search", n, MAX_SEARCH_N)?;
    let table = SphereTable::build(n).expect("n <= 6 is within the table cap");
    let ball = table.ball_size(n, t).expect("n is in the table").value;
    let order = numtheory::factorial(n as u64).expect("n <= 6");
    if !order.is_multiple_of(&ball) {
        return Ok(CodeSearchResult {
            n,
            t,
            outcome: SearchOutcome::ExhaustedNone,
            nodes_explored: 0,
            ruled_out_by_divisibility: true,
        });
    }

    let mut cover = BallCover::new(n, t)?;
    let outcome = cover.run(options);
    let outcome = match outcome {
        Some(true) => {
            let code: Vec<Permutation> = cover.chosen.iter().map(|&c| cover.perms[c].clone()).collect();
            assert!(cover.is_partition(), "search returned a non-partition");
            assert!(verify_min_distance(&code, 2 * t + 1)?);
            SearchOutcome::Found(code)
        }
        Some(false) => SearchOutcome::ExhaustedNone,
        None => SearchOutcome::AbortedBudget,
    };
    Ok(CodeSearchResult {
        n,
        t,
        outcome,
        nodes_explored: cover.nodes,
        ruled_out_by_divisibility: false,
    })
}

/// Backtracking exact cover of `S_n` by radius-`t` balls. Elements and centers
/// are both indexed by lexicographic rank; since the metric is symmetric, the
/// balls containing element `e` are exactly those centered in `ball[e]`.
struct BallCover {
    perms: Vec<Permutation>,
    ball: Vec<Vec<usize>>,
    covered: Vec<bool>,
    // number of covered elements inside each center's ball; 0 means usable
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
}

impl BallCover {
    fn new(n: usize, t: u64) -> Result<Self, OracleError> {
        let perms: Vec<Permutation> = enumerate_sn(n)?.collect();
        let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(k, p)| (p, k)).collect();
        // Breadth-first layers along adjacent transpositions give the distance.
        let ball = perms
            .iter()
            .map(|center| {
                let mut seen = vec![false; perms.len()];
                let mut members = vec![index[center]];
                seen[index[center]] = true;
                let mut frontier = vec![center.clone()];
                for _ in 0..t {
                    let mut next = Vec::new();
                    for p in &frontier {
                        for q in p.adjacent_neighbors() {
                            let k = index[&q];
                            if !seen[k] {
                                seen[k] = true;
                                members.push(k);
                                next.push(q);
                            }
                        }
                    }
                    if next.is_empty() {
                        break;
                    }
                    frontier = next;
                }
                members.sort_unstable();
                members
            })
            .collect();
        let size = perms.len();
        Ok(Self {
            perms,
            ball,
            covered: vec![false; size],
            blocked: vec![0; size],
            chosen: Vec::new(),
            nodes: 0,
        })
    }

    fn place(&mut self, c: usize) {
        for k in 0..self.ball[c].len() {
            let e = self.ball[c][k];
            self.covered[e] = true;
            for &c2 in &self.ball[e] {
                self.blocked[c2] += 1;
            }
        }
        self.chosen.push(c);
    }

    fn unplace(&mut self) {
        let c = self.chosen.pop().expect("placement stack");
        for k in 0..self.ball[c].len() {
            let e = self.ball[c][k];
            self.covered[e] = false;
            for &c2 in &self.ball[e] {
                self.blocked[c2] -= 1;
            }
        }
    }

    /// `Some(found)` when the search finished, `None` when the budget ran out.
    fn run(&mut self, options: &SearchOptions) -> Option<bool> {
        if options.fix_identity {
            self.nodes += 1;
            self.place(0);
        }
        self.dfs(options.node_budget)
    }

    fn dfs(&mut self, budget: u64) -> Option<bool> {
        // Fail-first: the uncovered element with the fewest usable balls.
        let mut best: Option<(usize, usize)> = None;
        for e in (0..self.covered.len()).filter(|&e| !self.covered[e]) {
            let options = self.ball[e].iter().filter(|&&c| self.blocked[c] == 0).count();
            if best.is_none_or(|(_, k)| options < k) {
                best = Some((e, options));
                if options == 0 {
                    break;
                }
            }
        }
        let Some((e, options)) = best else {
            return Some(true);
        };
        if options == 0 {
            return Some(false);
        }
        let candidates: Vec<usize> = self.ball[e].iter().copied().filter(|&c| self.blocked[c] == 0).collect();
        for c in candidates {
            if self.nodes >= budget {
                return None;
            }
            self.nodes += 1;
            self.place(c);
            match self.dfs(budget) {
                Some(true) => return Some(true),
                Some(false) => self.unplace(),
                None => return None,
            }
        }
        Some(false)
    }

    fn is_partition(&self) -> bool {
        let mut hits = vec![0u32; self.perms.len()];
        for &c in &self.chosen {
            for &e in &self.ball[c] {
                hits[e] += 1;
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

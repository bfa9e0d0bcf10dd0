//! Exact sphere sizes `S(n, i)` (Mahonian numbers: permutations of `[n]` with `i`
//! inversions) and ball sizes `B(n, r) = S(n, 0) + ... + S(n, r)`.
//!
//! The production path is [`SphereTable`], filled by the recurrence
//!
//! ```text
//! S(n, i) = sum_{j = max(0, i - (n - 1))}^{i} S(n - 1, j),    S(2, .) = (1, 1)
//! ```
//!
//! evaluated with prefix sums. The pivot-based recursions ([`sphere_size_lemma4`],
//! [`sphere_size_lemma6`], [`sphere_rows_by_lemmas`]) and the polynomial closed
//! forms for small radii are kept as independent cross-checks.

use std::io::{self, Write};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numtheory;

/// Default upper limit on `max_n` for [`SphereTable::build`].
pub const DEFAULT_TABLE_CAP: usize = 2000;

/// Largest radius with a polynomial closed form.
pub const MAX_CLOSED_FORM_RADIUS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MahonianError {
    #[error("table size {max_n} outside 2..={cap}")]
    CapExceeded { max_n: usize, cap: usize },
    #[error("n = {n} outside the table range 2..={max_n}")]
    OutOfTable { n: usize, max_n: usize },
    #[error("entry ({n}, {i}) lies beyond the stored columns (max index {max_index})")]
    Truncated { n: usize, i: usize, max_index: usize },
    #[error("({n}, {i}) outside the validity range of the {which} recursion")]
    OutsideRecursionRange { which: &'static str, n: usize, i: usize },
    #[error("no closed form for radius {0} (only 0..=5)")]
    RadiusNotSupported(usize),
    #[error("closed form for radius {r} is stated for n >= {min_n}, got n = {n}")]
    BelowThreshold { n: u64, r: usize, min_n: u64 },
    #[error("closed form for radius {r} at n = {n} did not divide exactly")]
    NonExactDivision { n: u64, r: usize },
    #[error("negative intermediate in the {which} recursion at ({n}, {i})")]
    NegativeIntermediate { which: &'static str, n: usize, i: usize },
}

/// `n(n-1)/2`, the largest Kendall distance in `S_n`.
pub fn max_distance(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Read access to sphere sizes, shared by the table and the recursion checkers.
pub trait SphereCounts {
    /// `S(n, i)`, zero for `i > n(n-1)/2`.
    fn sphere_at(&self, n: usize, i: usize) -> Result<BigUint, MahonianError>;

    /// `sum_{j=lo}^{hi} S(n, j)`; empty when `hi < lo`.
    fn sphere_range_sum(&self, n: usize, lo: usize, hi: usize) -> Result<BigUint, MahonianError> {
        let mut acc = BigUint::zero();
        for j in lo..=hi {
            acc += self.sphere_at(n, j)?;
        }
        Ok(acc)
    }
}

/// Sphere sizes `S(m, i)` for `2 <= m <= max_n`, possibly truncated to
/// `i <= max_index`.
///
/// Rows are stored as running sums, so entry `k` of row `m` is the ball size
/// `B(m, k)`. Sphere sizes are recovered as differences.
#[derive(Debug, Clone)]
pub struct SphereTable {
    max_n: usize,
    max_index: Option<usize>,
    cumulative: Vec<Vec<BigUint>>,
}

impl SphereTable {
    /// Full rows `S(m, 0..=m(m-1)/2)` for `2 <= m <= max_n <= DEFAULT_TABLE_CAP`.
    pub fn build(max_n: usize) -> Result<Self, MahonianError> {
        Self::build_with_cap(max_n, None, DEFAULT_TABLE_CAP)
    }

    /// Rows truncated to columns `0..=max_index`. Memory is `O(max_n * max_index)`
    /// instead of `O(max_n^3)`; enough for ball sizes of radius `<= max_index`.
    pub fn build_truncated(max_n: usize, max_index: usize) -> Result<Self, MahonianError> {
        Self::build_with_cap(max_n, Some(max_index), DEFAULT_TABLE_CAP)
    }

    pub fn build_with_cap(max_n: usize, max_index: Option<usize>, cap: usize) -> Result<Self, MahonianError> {
        if max_n < 2 || max_n > cap {
            return Err(MahonianError::CapExceeded { max_n, cap });
        }
        let width = |m: usize| max_index.map_or(max_distance(m), |k| k.min(max_distance(m))) + 1;

        let mut cumulative: Vec<Vec<BigUint>> = Vec::with_capacity(max_n - 1);
        let row2: Vec<BigUint> = [1u32, 2].iter().take(width(2)).map(|&v| BigUint::from(v)).collect();
        cumulative.push(row2);
        for m in 3..=max_n {
            let prev = cumulative.last().unwrap();
            let prev_top = prev.len() - 1;
            let mut row = Vec::with_capacity(width(m));
            let mut running = BigUint::zero();
            for i in 0..width(m) {
                // S(m, i) = P(m-1, min(i, top)) - P(m-1, i - m)
                let mut sphere = prev[i.min(prev_top)].clone();
                if i >= m {
                    sphere -= &prev[i - m];
                }
                running += sphere;
                row.push(running.clone());
            }
            cumulative.push(row);
        }
        Ok(Self {
            max_n,
            max_index,
            cumulative,
        })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Column limit for truncated tables.
    pub fn max_index(&self) -> Option<usize> {
        self.max_index
    }

    fn row(&self, n: usize) -> Result<&[BigUint], MahonianError> {
        if n < 2 || n > self.max_n {
            return Err(MahonianError::OutOfTable { n, max_n: self.max_n });
        }
        Ok(&self.cumulative[n - 2])
    }

    fn truncated(&self, n: usize, i: usize) -> MahonianError {
        MahonianError::Truncated {
            n,
            i,
            max_index: self.max_index.unwrap_or(usize::MAX),
        }
    }

    fn stored_sphere(row: &[BigUint], i: usize) -> Option<BigUint> {
        let hi = row.get(i)?;
        Some(if i == 0 { hi.clone() } else { hi - &row[i - 1] })
    }

    /// `S(n, i)`; zero for `i < 0` or `i > n(n-1)/2`. Columns beyond a truncated
    /// table are served through the symmetry `S(n, i) = S(n, n(n-1)/2 - i)` when
    /// the mirror index is stored.
    pub fn sphere_size(&self, n: usize, i: i64) -> Result<BigUint, MahonianError> {
        let row = self.row(n)?;
        let top = max_distance(n);
        if i < 0 || i as u64 > top as u64 {
            return Ok(BigUint::zero());
        }
        let i = i as usize;
        Self::stored_sphere(row, i)
            .or_else(|| Self::stored_sphere(row, top - i))
            .ok_or_else(|| self.truncated(n, i))
    }

    /// The full sphere row `S(n, 0..=n(n-1)/2)`.
    pub fn sphere_row(&self, n: usize) -> Result<Vec<BigUint>, MahonianError> {
        (0..=max_distance(n) as i64).map(|i| self.sphere_size(n, i)).collect()
    }

    /// `B(n, r)`, equal to `n!` once `r >= n(n-1)/2`.
    pub fn ball_size(&self, n: usize, r: u64) -> Result<BallSize, MahonianError> {
        let row = self.row(n)?;
        let top = max_distance(n);
        let value = if r >= top as u64 {
            numtheory::factorial(n as u64).expect("table cap is below the factorial cap")
        } else if let Some(v) = row.get(r as usize) {
            v.clone()
        } else if let Some(v) = row.get(top - r as usize - 1) {
            // B(n, r) = n! - B(n, top - r - 1) by symmetry of the row.
            numtheory::factorial(n as u64).expect("table cap is below the factorial cap") - v
        } else {
            return Err(self.truncated(n, r as usize));
        };
        Ok(BallSize { n, r, value })
    }

    /// Writes `n<TAB>i<TAB>sphere<TAB>ball` rows for every stored `n` and
    /// `i <= min(n(n-1)/2, max_r)`.
    pub fn write_tsv<W: Write + ?Sized>(&self, out: &mut W, max_r: Option<usize>) -> io::Result<()> {
        writeln!(out, "n\ti\tsphere\tball")?;
        for n in 2..=self.max_n {
            let top = max_distance(n).min(max_r.unwrap_or(usize::MAX));
            for i in 0..=top {
                let sphere = self.sphere_size(n, i as i64).map_err(io::Error::other)?;
                let ball = self.ball_size(n, i as u64).map_err(io::Error::other)?;
                writeln!(out, "{n}\t{i}\t{sphere}\t{}", ball.value)?;
            }
        }
        Ok(())
    }
}

impl SphereCounts for SphereTable {
    fn sphere_at(&self, n: usize, i: usize) -> Result<BigUint, MahonianError> {
        self.sphere_size(n, i as i64)
    }

    fn sphere_range_sum(&self, n: usize, lo: usize, hi: usize) -> Result<BigUint, MahonianError> {
        let hi = hi.min(max_distance(n));
        if hi < lo {
            return Ok(BigUint::zero());
        }
        let row = self.row(n)?;
        let upper = row.get(hi).ok_or_else(|| self.truncated(n, hi))?;
        Ok(if lo == 0 { upper.clone() } else { upper - &row[lo - 1] })
    }
}

/// Ball size `B(n, r)` together with its coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSize {
    pub n: usize,
    pub r: u64,
    pub value: BigUint,
}

/// The unique `t >= 4` with `(t-1)(t-2)/2 < i <= t(t-1)/2`, for `i >= 4`.
pub fn pivot(i: usize) -> usize {
    debug_assert!(i >= 4);
    let mut t = 4;
    while max_distance(t) < i {
        t += 1;
    }
    t
}

/// `sum_{l=from}^{to} sum_{j=lo(l)}^{i-1} S(l, j)`, zero when `to < from`.
fn double_sum<S: SphereCounts + ?Sized>(
    src: &S,
    from: usize,
    to: usize,
    i: usize,
    lo: impl Fn(usize) -> usize,
) -> Result<BigUint, MahonianError> {
    let mut acc = BigUint::zero();
    for l in from..=to {
        acc += src.sphere_range_sum(l, lo(l), i - 1)?;
    }
    Ok(acc)
}

/// Pivot recursion for `4 <= i <= n - 1`:
///
/// ```text
/// S(n, i) = S(t, C(t,2) - i) + sum_{l=t}^{i-1} sum_{j=i-l}^{i-1} S(l, j)
///                            + sum_{l=i}^{n-1} sum_{j=0}^{i-1}   S(l, j)
/// ```
///
/// Reads only columns `< i` (and one mirrored entry of row `t`) from `src`.
pub fn lemma4_from<S: SphereCounts + ?Sized>(src: &S, n: usize, i: usize) -> Result<BigUint, MahonianError> {
    if n < 4 || i < 4 || i > n - 1 {
        return Err(MahonianError::OutsideRecursionRange {
            which: "small-radius pivot",
            n,
            i,
        });
    }
    let t = pivot(i);
    let mut value = src.sphere_at(t, max_distance(t) - i)?;
    value += double_sum(src, t, i - 1, i, |l| i - l)?;
    value += double_sum(src, i, n - 1, i, |_| 0)?;
    Ok(value)
}

/// Pivot recursion for `5 <= n` and `n <= i <= floor(C(n,2)/2)`:
///
/// ```text
/// S(n, i) = S(t, C(t,2) - i) + sum_{l=t}^{i-1} sum_{j=i-l}^{i-1} S(l, j)
///                            - sum_{l=n}^{i-1} sum_{j=i-l}^{i-1} S(l, j)
/// ```
///
/// Needs rows up to `i - 1` in `src`; the last term vanishes when `i = n`.
pub fn lemma6_from<S: SphereCounts + ?Sized>(src: &S, n: usize, i: usize) -> Result<BigUint, MahonianError> {
    if n < 5 || i < n || i > max_distance(n) / 2 {
        return Err(MahonianError::OutsideRecursionRange {
            which: "large-radius pivot",
            n,
            i,
        });
    }
    let t = pivot(i);
    let mut value = src.sphere_at(t, max_distance(t) - i)?;
    value += double_sum(src, t, i - 1, i, |l| i - l)?;
    let tail = double_sum(src, n, i - 1, i, |l| i - l)?;
    if tail > value {
        return Err(MahonianError::NegativeIntermediate {
            which: "large-radius pivot",
            n,
            i,
        });
    }
    Ok(value - tail)
}

/// [`lemma4_from`] over a table.
pub fn sphere_size_lemma4(table: &SphereTable, n: usize, i: usize) -> Result<BigUint, MahonianError> {
    lemma4_from(table, n, i)
}

/// [`lemma6_from`] over a table. The table must hold rows up to `i - 1`.
pub fn sphere_size_lemma6(table: &SphereTable, n: usize, i: usize) -> Result<BigUint, MahonianError> {
    lemma6_from(table, n, i)
}

/// Partially filled rows used while building [`sphere_rows_by_lemmas`].
struct ColumnSweep {
    // spheres[l - 2][j] = S(l, j) for the columns computed so far
    spheres: Vec<Vec<BigUint>>,
    prefix: Vec<Vec<BigUint>>,
}

impl ColumnSweep {
    fn push(&mut self, l: usize, value: BigUint) {
        let prefix = &mut self.prefix[l - 2];
        let next = prefix.last().cloned().unwrap_or_default() + &value;
        prefix.push(next);
        self.spheres[l - 2].push(value);
    }
}

impl SphereCounts for ColumnSweep {
    fn sphere_at(&self, n: usize, i: usize) -> Result<BigUint, MahonianError> {
        if i > max_distance(n) {
            return Ok(BigUint::zero());
        }
        self.spheres
            .get(n.wrapping_sub(2))
            .and_then(|row| row.get(i))
            .cloned()
            .ok_or(MahonianError::Truncated {
                n,
                i,
                max_index: i.saturating_sub(1),
            })
    }

    fn sphere_range_sum(&self, n: usize, lo: usize, hi: usize) -> Result<BigUint, MahonianError> {
        let hi = hi.min(max_distance(n));
        if hi < lo {
            return Ok(BigUint::zero());
        }
        let prefix = self.prefix.get(n.wrapping_sub(2)).ok_or(MahonianError::OutOfTable {
            n,
            max_n: self.prefix.len() + 1,
        })?;
        let upper = prefix.get(hi).ok_or(MahonianError::Truncated {
            n,
            i: hi,
            max_index: prefix.len().saturating_sub(1),
        })?;
        Ok(if lo == 0 {
            upper.clone()
        } else {
            upper - &prefix[lo - 1]
        })
    }
}

/// Sphere rows `2..=max_n` computed column by column from the small-radius
/// closed forms, the reversal symmetry and the two pivot recursions, without the
/// table recurrence.
///
/// Column `i` of rows `l > i` uses [`lemma4_from`]; rows `l <= i` use symmetry
/// above the middle and [`lemma6_from`] below it. The large-radius recursion
/// reaches into rows up to `floor(C(max_n,2)/2)`, so those rows are swept too
/// (truncated). Cost grows like `max_n^6`; intended for `max_n` up to a few dozen.
pub fn sphere_rows_by_lemmas(max_n: usize) -> Result<Vec<Vec<BigUint>>, MahonianError> {
    if !(2..=40).contains(&max_n) {
        return Err(MahonianError::CapExceeded { max_n, cap: 40 });
    }
    let last_col = max_distance(max_n) / 2;
    let last_row = max_n.max(last_col);
    let mut sweep = ColumnSweep {
        spheres: vec![Vec::new(); last_row - 1],
        prefix: vec![Vec::new(); last_row - 1],
    };
    for i in 0..=last_col {
        for l in 2..=last_row {
            let top = max_distance(l);
            if i > top {
                continue;
            }
            let value = if i <= 3 {
                sphere_closed_form(l as u64, i)?
            } else if l > i {
                lemma4_from(&sweep, l, i)?
            } else if i > top / 2 {
                sweep.sphere_at(l, top - i)?
            } else {
                lemma6_from(&sweep, l, i)?
            };
            sweep.push(l, value);
        }
    }
    let mut rows = Vec::with_capacity(max_n - 1);
    for l in 2..=max_n {
        let top = max_distance(l);
        let row = (0..=top)
            .map(|i| sweep.sphere_at(l, if i <= top / 2 { i } else { top - i }))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn poly(coeffs: &[i64], n: &BigInt) -> BigInt {
    // Horner, highest degree first.
    coeffs.iter().fold(BigInt::zero(), |acc, &c| acc * n + c)
}

fn exact_div(num: BigInt, den: u32, n: u64, r: usize) -> Result<BigUint, MahonianError> {
    let (q, rem) = num.div_rem(&BigInt::from(den));
    if !rem.is_zero() || q.is_negative() {
        return Err(MahonianError::NonExactDivision { n, r });
    }
    Ok(q.to_biguint().expect("checked non-negative"))
}

fn check_threshold(n: u64, r: usize, min_n: u64) -> Result<(), MahonianError> {
    if n < min_n {
        return Err(MahonianError::BelowThreshold { n, r, min_n });
    }
    Ok(())
}

/// Polynomial sphere sizes for `i <= 5`.
///
/// | i | `S(n, i)`                                   | valid for |
/// |---|---------------------------------------------|-----------|
/// | 0 | `1`                                         | `n >= 2`  |
/// | 1 | `n - 1`                                     | `n >= 2`  |
/// | 2 | `n(n-1)/2 - 1`                              | `n >= 3`  |
/// | 3 | `(n^3 - 7n)/6`                              | `n >= 3`  |
/// | 4 | `n(n+1)(n^2+n-14)/24`                       | `n >= 4`  |
/// | 5 | `(n-1)(n^4+6n^3-9n^2-74n-120)/120`          | `n >= 5`  |
pub fn sphere_closed_form(n: u64, i: usize) -> Result<BigUint, MahonianError> {
    let x = BigInt::from(n);
    match i {
        0 => {
            check_threshold(n, i, 2)?;
            Ok(BigUint::one())
        }
        1 => {
            check_threshold(n, i, 2)?;
            Ok(BigUint::from(n - 1))
        }
        2 => {
            check_threshold(n, i, 3)?;
            let half = exact_div(&x * (&x - 1), 2, n, i)?;
            Ok(half - 1u32)
        }
        3 => {
            check_threshold(n, i, 3)?;
            exact_div(poly(&[1, 0, -7, 0], &x), 6, n, i)
        }
        4 => {
            check_threshold(n, i, 4)?;
            exact_div(&x * (&x + 1) * poly(&[1, 1, -14], &x), 24, n, i)
        }
        5 => {
            check_threshold(n, i, 5)?;
            exact_div((&x - 1) * poly(&[1, 6, -9, -74, -120], &x), 120, n, i)
        }
        _ => Err(MahonianError::RadiusNotSupported(i)),
    }
}

/// Polynomial ball sizes for `r <= 5`.
///
/// | r | `B(n, r)`                                   | valid for |
/// |---|---------------------------------------------|-----------|
/// | 0 | `1`                                         | `n >= 2`  |
/// | 1 | `n`                                         | `n >= 2`  |
/// | 2 | `(n+2)(n-1)/2`                              | `n >= 2`  |
/// | 3 | `(n+1)(n^2+2n-6)/6`                         | `n >= 3`  |
/// | 4 | `(n+2)(n+1)(n^2+3n-12)/24`                  | `n >= 4`  |
/// | 5 | `(n+7)n(n^3+3n^2-6n-28)/120`                | `n >= 5`  |
pub fn ball_closed_form(n: u64, r: usize) -> Result<BigUint, MahonianError> {
    let x = BigInt::from(n);
    match r {
        0 => {
            check_threshold(n, r, 2)?;
            Ok(BigUint::one())
        }
        1 => {
            check_threshold(n, r, 2)?;
            Ok(BigUint::from(n))
        }
        2 => {
            check_threshold(n, r, 2)?;
            exact_div((&x + 2) * (&x - 1), 2, n, r)
        }
        3 => {
            check_threshold(n, r, 3)?;
            exact_div((&x + 1) * poly(&[1, 2, -6], &x), 6, n, r)
        }
        4 => {
            check_threshold(n, r, 4)?;
            exact_div((&x + 2) * (&x + 1) * poly(&[1, 3, -12], &x), 24, n, r)
        }
        5 => {
            check_threshold(n, r, 5)?;
            exact_div((&x + 7) * &x * poly(&[1, 3, -6, -28], &x), 120, n, r)
        }
        _ => Err(MahonianError::RadiusNotSupported(r)),
    }
}

/// Smallest `n` for which the radius-`r` ball closed form is stated.
pub fn ball_closed_form_min_n(r: usize) -> Option<u64> {
    match r {
        0..=2 => Some(2),
        3 => Some(3),
        4 => Some(4),
        5 => Some(5),
        _ => None,
    }
}

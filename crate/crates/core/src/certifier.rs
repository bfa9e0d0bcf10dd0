//! Sphere-packing certificates for `(n, t)`.
//!
//! A perfect `t`-error-correcting code `C` in `S_n` satisfies
//! `|C| * B(n, t) = n!`, so `B(n, t) | n!` is necessary. A certificate records
//! which way that test went and enough evidence to re-check it from `(n, t)`
//! alone:
//!
//! * `NONEXISTENT_PRIME_FACTOR`: the ball has a prime factor `p > n`, which
//!   cannot divide `n!`. The witness is the largest such prime.
//! * `NONEXISTENT_NOT_DIVIDING`: all primes are `<= n` but some prime occurs in
//!   the ball more often than in `n!`.
//! * `INCONCLUSIVE`: the ball divides `n!`; the quotient is the size a perfect
//!   code would have to have. This never claims that such a code exists.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::mahonian::{self, MahonianError, SphereTable, DEFAULT_TABLE_CAP};
use crate::numtheory::{self, FactorConfig, Factorization, NumTheoryError, DEFAULT_FACTORIAL_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("n must be at least 2, got {0}")]
    InvalidSize(u64),
    #[error("radius {t} exceeds the largest distance {max} in S_{n}")]
    RadiusTooLarge { n: u64, t: u64, max: u128 },
    #[error("n = {n} with t = {t} needs the sphere table, whose cap is {cap}")]
    TableCap { n: u64, t: u64, cap: usize },
    #[error("empty range {from}..={to}")]
    EmptyRange { from: u64, to: u64 },
    #[error(transparent)]
    Mahonian(#[from] MahonianError),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonexistentPrimeFactor,
    NonexistentNotDividing,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NonexistentPrimeFactor => "NONEXISTENT_PRIME_FACTOR",
            Verdict::NonexistentNotDividing => "NONEXISTENT_NOT_DIVIDING",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    pub fn is_nonexistent(self) -> bool {
        self != Verdict::Inconclusive
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "NONEXISTENT_PRIME_FACTOR" => Ok(Verdict::NonexistentPrimeFactor),
            "NONEXISTENT_NOT_DIVIDING" => Ok(Verdict::NonexistentNotDividing),
            "INCONCLUSIVE" => Ok(Verdict::Inconclusive),
            other => Err(format!("unknown verdict {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A prime `p > n` dividing the ball.
    PrimeAboveN(BigUint),
    /// A prime whose exponent in the ball exceeds its exponent in `n!`.
    ExcessValuation {
        prime: BigUint,
        in_ball: u32,
        in_factorial: u64,
    },
}

impl Witness {
    pub fn prime(&self) -> &BigUint {
        match self {
            Witness::PrimeAboveN(p) => p,
            Witness::ExcessValuation { prime, .. } => prime,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallFactorization {
    Complete(Factorization),
    /// The factor budget ran out. `known` holds the primes found so far.
    Unfactored {
        known: Factorization,
        cofactor: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub n: u64,
    pub t: u64,
    pub ball: BigUint,
    pub factorization: BallFactorization,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// `n! / ball`, present for divisible balls.
    pub quotient: Option<BigUint>,
    /// The evidence is incomplete (unfactored ball, or `n!` beyond the cap).
    pub degraded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyConfig {
    pub factor: FactorConfig,
    /// Largest `n` for which the sphere table is built.
    pub table_cap: usize,
    pub factorial_cap: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            factor: FactorConfig::default(),
            table_cap: DEFAULT_TABLE_CAP,
            factorial_cap: DEFAULT_FACTORIAL_CAP,
        }
    }
}

fn max_distance_u128(n: u64) -> u128 {
    n as u128 * (n as u128).saturating_sub(1) / 2
}

fn check_args(n: u64, t: u64) -> Result<(), CertifyError> {
    if n < 2 {
        return Err(CertifyError::InvalidSize(n));
    }
    let max = max_distance_u128(n);
    if t as u128 > max {
        return Err(CertifyError::RadiusTooLarge { n, t, max });
    }
    Ok(())
}

/// Ball size from the sphere table, building only the columns needed.
fn ball_from_table(n: u64, t: u64, cap: usize) -> Result<BigUint, CertifyError> {
    if n as u128 > cap as u128 {
        return Err(CertifyError::TableCap { n, t, cap });
    }
    let nu = n as usize;
    let top = mahonian::max_distance(nu) as u64;
    // B(n, t) = n! - B(n, top - t - 1), so the shorter side suffices.
    let columns = if t >= top { 0 } else { t.min(top - t - 1) } as usize;
    let table = SphereTable::build_with_cap(nu, Some(columns), cap)?;
    Ok(table.ball_size(nu, t)?.value)
}

/// `B(n, t)`: the polynomial closed form when `t <= 5` and `n` is in its stated
/// range, otherwise the sphere table.
pub fn ball_size_for(n: u64, t: u64, config: &CertifyConfig) -> Result<BigUint, CertifyError> {
    check_args(n, t)?;
    let r = t as usize;
    match mahonian::ball_closed_form_min_n(r) {
        Some(min_n) if t <= mahonian::MAX_CLOSED_FORM_RADIUS as u64 && n >= min_n => {
            Ok(mahonian::ball_closed_form(n, r)?)
        }
        _ => ball_from_table(n, t, config.table_cap),
    }
}

/// Certificate for `(n, t)` with default effort settings.
pub fn certify(n: u64, t: u64) -> Result<Certificate, CertifyError> {
    certify_with(n, t, &CertifyConfig::default())
}

pub fn certify_with(n: u64, t: u64, config: &CertifyConfig) -> Result<Certificate, CertifyError> {
    let ball = ball_size_for(n, t, config)?;
    let (factorization, known, mut degraded) = match numtheory::factorize_with(&ball, &config.factor) {
        Ok(f) => (BallFactorization::Complete(f.clone()), f, false),
        Err(NumTheoryError::BudgetExhausted { partial, cofactor }) => (
            BallFactorization::Unfactored {
                known: partial.clone(),
                cofactor,
            },
            partial,
            true,
        ),
        Err(e) => return Err(e.into()),
    };
    let factorial = || numtheory::factorial_with_cap(n, config.factorial_cap).ok();

    let mut quotient = None;
    let (verdict, witness) = if let Some(p) = known
        .factors()
        .last()
        .map(|(p, _)| p)
        .filter(|p| **p > BigUint::from(n))
    {
        (Verdict::NonexistentPrimeFactor, Some(Witness::PrimeAboveN(p.clone())))
    } else if let Some((p, in_ball, in_factorial)) = numtheory::first_excess_prime(&known, n) {
        (
            Verdict::NonexistentNotDividing,
            Some(Witness::ExcessValuation {
                prime: p.clone(),
                in_ball,
                in_factorial,
            }),
        )
    } else {
        match factorial() {
            Some(f) => {
                let (q, rem) = f.div_rem(&ball);
                if rem.is_zero() {
                    quotient = Some(q);
                    (Verdict::Inconclusive, None)
                } else {
                    // Only reachable with an unfactored cofactor.
                    (Verdict::NonexistentNotDividing, None)
                }
            }
            None => {
                degraded = true;
                (Verdict::Inconclusive, None)
            }
        }
    };
    Ok(Certificate {
        n,
        t,
        ball,
        factorization,
        verdict,
        witness,
        quotient,
        degraded,
    })
}

/// One certificate per `n` in `n_from..=n_to`, in order.
pub fn scan(t: u64, n_from: u64, n_to: u64) -> Result<Vec<Result<Certificate, CertifyError>>, CertifyError> {
    scan_with(t, n_from, n_to, &CertifyConfig::default(), 1)
}

/// Like [`scan`], evaluating entries on `jobs` worker threads. Output order is
/// the input order regardless of `jobs`.
pub fn scan_with(
    t: u64,
    n_from: u64,
    n_to: u64,
    config: &CertifyConfig,
    jobs: usize,
) -> Result<Vec<Result<Certificate, CertifyError>>, CertifyError> {
    if n_from > n_to {
        return Err(CertifyError::EmptyRange { from: n_from, to: n_to });
    }
    let run = || {
        (n_from..=n_to)
            .into_par_iter()
            .map(|n| certify_with(n, t, config))
            .collect()
    };
    if jobs <= 1 {
        return Ok((n_from..=n_to).map(|n| certify_with(n, t, config)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    Ok(pool.install(run))
}

/// Re-derives every field of `c` from `(c.n, c.t)` and returns whether it all
/// holds. The ball is recomputed through the sphere table when `n` is within
/// the default cap (the certifier itself prefers closed forms for `t <= 5`).
pub fn check_certificate(c: &Certificate) -> bool {
    check_inner(c).is_some()
}

fn check_inner(c: &Certificate) -> Option<()> {
    let (n, t) = (c.n, c.t);
    check_args(n, t).ok()?;
    let ball = if n as usize <= DEFAULT_TABLE_CAP {
        ball_from_table(n, t, DEFAULT_TABLE_CAP).ok()?
    } else {
        mahonian::ball_closed_form(n, t.to_usize()?).ok()?
    };
    ensure(ball == c.ball)?;
    let n_big = BigUint::from(n);

    let complete = match &c.factorization {
        BallFactorization::Complete(f) => {
            ensure(f.is_strictly_increasing() && f.all_prime() && f.product() == ball)?;
            Some(f)
        }
        BallFactorization::Unfactored { .. } => {
            ensure(c.degraded)?;
            None
        }
    };
    let prime_above = complete
        .and_then(|f| f.factors().last())
        .map(|(p, _)| p)
        .filter(|p| **p > n_big);

    match (c.verdict, &c.witness) {
        (Verdict::NonexistentPrimeFactor, Some(Witness::PrimeAboveN(p))) => {
            ensure(*p > n_big && numtheory::is_prime(p) && (&ball % p).is_zero())?;
            if complete.is_some() {
                ensure(prime_above == Some(p))?;
            }
            ensure(c.quotient.is_none())
        }
        (Verdict::NonexistentNotDividing, witness) => {
            ensure(prime_above.is_none() && c.quotient.is_none())?;
            match witness {
                Some(Witness::ExcessValuation {
                    prime,
                    in_ball,
                    in_factorial,
                }) => {
                    ensure(numtheory::is_prime(prime) && *prime <= n_big)?;
                    ensure(numtheory::valuation(&ball, prime) == *in_ball)?;
                    ensure(numtheory::legendre_valuation(n, prime) == *in_factorial)?;
                    ensure(*in_ball as u64 > *in_factorial)?;
                    if let Some(f) = complete {
                        ensure(numtheory::first_excess_prime(f, n).map(|w| w.0) == Some(prime))?;
                    }
                    Some(())
                }
                None => {
                    ensure(c.degraded)?;
                    let f = numtheory::factorial(n).ok()?;
                    ensure(!(f % &ball).is_zero())
                }
                Some(Witness::PrimeAboveN(_)) => None,
            }
        }
        (Verdict::Inconclusive, None) => match &c.quotient {
            Some(q) => {
                let f = numtheory::factorial(n).ok()?;
                ensure(q * &ball == f)?;
                if let Some(f) = complete {
                    ensure(numtheory::divides_factorial(f, n))?;
                }
                Some(())
            }
            None => ensure(c.degraded && numtheory::factorial(n).is_err()),
        },
        _ => None,
    }
}

fn ensure(cond: bool) -> Option<()> {
    cond.then_some(())
}

/// Names of the polynomial factors of the closed-form numerator of `B(n, t)`
/// that `p` divides, for `2 <= t <= 5`.
pub fn witness_families(n: u64, t: u64, p: &BigUint) -> Vec<&'static str> {
    let x = BigInt::from(n);
    let families: Vec<(&'static str, BigInt)> = match t {
        2 => vec![("n+2", &x + 2), ("n-1", &x - 1)],
        3 => vec![("n+1", &x + 1), ("n^2+2n-6", &x * &x + 2 * &x - 6)],
        4 => vec![("n+1", &x + 1), ("n+2", &x + 2), ("n^2+3n-12", &x * &x + 3 * &x - 12)],
        5 => vec![
            ("n+7", &x + 7),
            ("n", x.clone()),
            ("n^3+3n^2-6n-28", &x * &x * &x + 3 * &x * &x - 6 * &x - 28),
        ],
        _ => return Vec::new(),
    };
    let p = BigInt::from(p.clone());
    families
        .into_iter()
        .filter(|(_, v)| !v.is_zero() && (v % &p).is_zero())
        .map(|(name, _)| name)
        .collect()
}

const FIELDS: [&str; 9] = [
    "n",
    "t",
    "ball",
    "factorization",
    "verdict",
    "witness_prime",
    "witness_exponents",
    "quotient",
    "degraded",
];

const ABSENT: &str = "-";

impl Certificate {
    /// Field values in the fixed record order.
    pub fn fields(&self) -> [String; 9] {
        let factorization = match &self.factorization {
            BallFactorization::Complete(f) => f.to_string(),
            BallFactorization::Unfactored { .. } => "unfactored".to_string(),
        };
        let witness_prime = self
            .witness
            .as_ref()
            .map_or(ABSENT.to_string(), |w| w.prime().to_string());
        let witness_exponents = match &self.witness {
            Some(Witness::ExcessValuation {
                in_ball, in_factorial, ..
            }) => format!("{in_ball},{in_factorial}"),
            _ => ABSENT.to_string(),
        };
        [
            self.n.to_string(),
            self.t.to_string(),
            self.ball.to_string(),
            factorization,
            self.verdict.to_string(),
            witness_prime,
            witness_exponents,
            self.quotient.as_ref().map_or(ABSENT.to_string(), |q| q.to_string()),
            self.degraded.to_string(),
        ]
    }

    /// `n=..<TAB>t=..<TAB>...`, one line, fixed field order.
    pub fn to_record(&self) -> String {
        FIELDS
            .iter()
            .zip(self.fields())
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join("\t")
    }

    pub fn tsv_header() -> String {
        FIELDS.join("\t")
    }

    pub fn to_tsv_row(&self) -> String {
        self.fields().join("\t")
    }

    /// Human-readable summary.
    pub fn pretty(&self) -> String {
        let (n, t) = (self.n, self.t);
        let fact = match &self.factorization {
            BallFactorization::Complete(f) => f.to_string(),
            BallFactorization::Unfactored { .. } => "(not fully factored)".to_string(),
        };
        let head = format!("B({n},{t}) = {} = {fact}", self.ball);
        let mut out = match (&self.verdict, &self.witness) {
            (Verdict::NonexistentPrimeFactor, Some(w)) => {
                let fams = witness_families(n, t, w.prime());
                let from = if fams.is_empty() {
                    String::new()
                } else {
                    format!(" (divides {})", fams.join(", "))
                };
                format!(
                    "There is no perfect {t}-error-correcting code in S_{n}: {head} has the prime factor {} > {n}{from}.",
                    w.prime()
                )
            }
            (
                Verdict::NonexistentNotDividing,
                Some(Witness::ExcessValuation {
                    prime,
                    in_ball,
                    in_factorial,
                }),
            ) => format!(
                "There is no perfect {t}-error-correcting code in S_{n}: {head} does not divide {n}!, \
                 since {prime} occurs to the power {in_ball} in the ball but only {in_factorial} in {n}!."
            ),
            (Verdict::NonexistentNotDividing, _) => {
                format!("There is no perfect {t}-error-correcting code in S_{n}: {head} does not divide {n}!.")
            }
            (_, _) => match &self.quotient {
                Some(q) => format!(
                    "Inconclusive for t = {t} in S_{n}: {head} divides {n}!; a perfect code would have {q} codewords."
                ),
                None => format!("Inconclusive for t = {t} in S_{n}: {head}."),
            },
        };
        if self.degraded {
            out.push_str(" [degraded evidence]");
        }
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed certificate record: {0}")]
pub struct RecordError(String);

impl FromStr for Certificate {
    type Err = RecordError;

    /// Parses the record form. An `unfactored` marker parses with no known
    /// primes and a cofactor equal to the ball.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| RecordError(what.to_string());
        let parts: Vec<&str> = s.trim_end_matches('\n').split('\t').collect();
        if parts.len() != FIELDS.len() {
            return Err(bad("wrong number of fields"));
        }
        let mut values = Vec::with_capacity(FIELDS.len());
        for (part, key) in parts.iter().zip(FIELDS) {
            let value = part
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(key))?;
            values.push(value);
        }
        let big = |v: &str, key: &str| v.parse::<BigUint>().map_err(|_| bad(key));
        let optional = |v: &str, key: &str| -> Result<Option<BigUint>, RecordError> {
            if v == ABSENT {
                Ok(None)
            } else {
                big(v, key).map(Some)
            }
        };
        let n: u64 = values[0].parse().map_err(|_| bad("n"))?;
        let t: u64 = values[1].parse().map_err(|_| bad("t"))?;
        let ball = big(values[2], "ball")?;
        let factorization = if values[3] == "unfactored" {
            BallFactorization::Unfactored {
                known: Factorization::default(),
                cofactor: ball.clone(),
            }
        } else {
            BallFactorization::Complete(values[3].parse().map_err(|_| bad("factorization"))?)
        };
        let verdict: Verdict = values[4].parse().map_err(|e: String| RecordError(e))?;
        let witness_prime = optional(values[5], "witness_prime")?;
        let witness = match (witness_prime, values[6]) {
            (None, ABSENT) => None,
            (Some(p), ABSENT) => Some(Witness::PrimeAboveN(p)),
            (Some(prime), exps) => {
                let (a, b) = exps.split_once(',').ok_or_else(|| bad("witness_exponents"))?;
                Some(Witness::ExcessValuation {
                    prime,
                    in_ball: a.parse().map_err(|_| bad("witness_exponents"))?,
                    in_factorial: b.parse().map_err(|_| bad("witness_exponents"))?,
                })
            }
            (None, _) => return Err(bad("witness_exponents without witness_prime")),
        };
        let quotient = optional(values[7], "quotient")?;
        let degraded = values[8].parse().map_err(|_| bad("degraded"))?;
        Ok(Certificate {
            n,
            t,
            ball,
            factorization,
            verdict,
            witness,
            quotient,
            degraded,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn thirteen_three() {
        let c = certify(13, 3).unwrap();
        assert_eq!(c.ball, big(441));
        assert_eq!(c.verdict, Verdict::NonexistentNotDividing);
        assert_eq!(
            c.witness,
            Some(Witness::ExcessValuation {
                prime: big(7),
                in_ball: 2,
                in_factorial: 1
            })
        );
        assert_eq!(c.quotient, None);
        assert!(!c.degraded);
        assert!(check_certificate(&c));
        assert_eq!(
            c.to_record(),
            "n=13\tt=3\tball=441\tfactorization=3^2 * 7^2\tverdict=NONEXISTENT_NOT_DIVIDING\t\
             witness_prime=7\twitness_exponents=2,1\tquotient=-\tdegraded=false"
        );
    }

    #[test]
    fn five_two_prime_factor() {
        let c = certify(5, 2).unwrap();
        assert_eq!(c.ball, big(14));
        assert_eq!(c.verdict, Verdict::NonexistentPrimeFactor);
        assert_eq!(c.witness, Some(Witness::PrimeAboveN(big(7))));
        assert_eq!(witness_families(5, 2, &big(7)), vec!["n+2"]);
        assert!(check_certificate(&c));
    }

    #[test]
    fn whole_group_is_inconclusive() {
        let c = certify(4, 6).unwrap();
        assert_eq!(c.ball, big(24));
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert_eq!(c.quotient, Some(big(1)));
        assert!(check_certificate(&c));
    }

    #[test]
    fn argument_errors() {
        assert_eq!(certify(1, 0), Err(CertifyError::InvalidSize(1)));
        assert!(matches!(certify(4, 7), Err(CertifyError::RadiusTooLarge { .. })));
        let cfg = CertifyConfig {
            table_cap: 50,
            ..CertifyConfig::default()
        };
        assert!(matches!(certify_with(60, 6, &cfg), Err(CertifyError::TableCap { .. })));
        // closed forms need no table
        assert!(certify_with(100_000, 5, &cfg).is_ok());
    }

    #[test]
    fn single_error_is_always_inconclusive() {
        for n in 2..=40 {
            let c = certify(n, 1).unwrap();
            assert_eq!(c.verdict, Verdict::Inconclusive, "n={n}");
            assert!(check_certificate(&c));
        }
    }

    #[test]
    fn large_radius_uses_table() {
        // t >= 6 goes through the sphere table
        let c = certify(9, 8).unwrap();
        let table = SphereTable::build(9).unwrap();
        assert_eq!(c.ball, table.ball_size(9, 8).unwrap().value);
        assert!(check_certificate(&c));
        let c = certify(6, 14).unwrap();
        assert_eq!(c.ball, big(719));
        assert!(check_certificate(&c));
    }

    #[test]
    fn scan_keeps_order_and_errors() {
        let out = scan(2, 2, 6).unwrap();
        assert_eq!(out.len(), 5);
        assert!(matches!(out[0], Err(CertifyError::RadiusTooLarge { .. })));
        let ns: Vec<u64> = out[1..].iter().map(|c| c.as_ref().unwrap().n).collect();
        assert_eq!(ns, vec![3, 4, 5, 6]);
        let par = scan_with(3, 4, 40, &CertifyConfig::default(), 4).unwrap();
        let seq = scan(3, 4, 40).unwrap();
        assert_eq!(par, seq);
        assert!(scan(2, 5, 4).is_err());
    }

    #[test]
    fn degraded_certificates() {
        let cfg = CertifyConfig {
            factor: FactorConfig {
                rho_budget: 1,
                ..FactorConfig::default()
            },
            ..CertifyConfig::default()
        };
        // B(383, 8) has two prime factors above the trial-division bound
        let c = certify_with(383, 8, &cfg).unwrap();
        assert!(matches!(c.factorization, BallFactorization::Unfactored { .. }));
        assert!(c.degraded);
        assert_eq!(c.verdict, Verdict::NonexistentNotDividing);
        assert_eq!(c.witness, None);
        assert!(check_certificate(&c));
        let parsed: Certificate = c.to_record().parse().unwrap();
        assert!(check_certificate(&parsed));
        let mut forged = c.clone();
        forged.degraded = false;
        assert!(!check_certificate(&forged));

        let full = certify(383, 8).unwrap();
        assert_eq!(full.ball, c.ball);
        assert_eq!(full.witness, Some(Witness::PrimeAboveN(big(3_093_043))));
        assert!(check_certificate(&full));
    }

    #[test]
    fn record_roundtrip_and_tamper() {
        for (n, t) in [(13, 3), (26, 3), (13, 4), (5, 2), (4, 6), (7, 7)] {
            let c = certify(n, t).unwrap();
            let parsed: Certificate = c.to_record().parse().unwrap();
            assert_eq!(parsed, c);
            assert!(check_certificate(&parsed));
        }
        let mut c = certify(13, 3).unwrap();
        c.witness = Some(Witness::ExcessValuation {
            prime: big(5),
            in_ball: 2,
            in_factorial: 1,
        });
        assert!(!check_certificate(&c));
        let mut c = certify(26, 3).unwrap();
        c.verdict = Verdict::Inconclusive;
        assert!(!check_certificate(&c));
        assert!("n=1\tt=2".parse::<Certificate>().is_err());
    }
}

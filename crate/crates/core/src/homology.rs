//! Homology of the weight subcomplexes over ℤ, ℚ and 𝔽_q, assembled into a
//! report indexed by degree `j = c + s` and weight `c / 2`.
//!
//! Koszul homology computes the `E³` page of the weight spectral sequence.
//! It equals `H^{BM}_*(X)` with field coefficients when `q > ⌈n/2⌉`, and the
//! `q`-torsion of the integral groups is identified when `q > ⌈(n+1)/2⌉`.
//! Torsion at smaller primes is still reported, with its flag cleared.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::fan::Fan;
use crate::koszul::{assemble_subcomplexes, KoszulError, WeightSubcomplex};
use crate::lattice::{invariant_factors, rank_mod_p, IntegerMatrix, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("differentials do not compose: {0} columns against {1} rows")]
    NotComposable(usize, usize),
    #[error("D_out · D_in ≠ 0")]
    NotAComplex,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid coefficient spec `{0}` (expected Z, Q or Fq:<prime>)")]
    InvalidCoefficients(String),
    #[error("rank must be positive")]
    ZeroRank,
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Coefficients {
    pub fn parse(spec: &str) -> Result<Self, HomologyError> {
        match spec {
            "Z" => Ok(Self::Integers),
            "Q" => Ok(Self::Rationals),
            _ => {
                let q = spec
                    .strip_prefix("Fq:")
                    .and_then(|q| q.parse::<u64>().ok())
                    .ok_or_else(|| HomologyError::InvalidCoefficients(spec.into()))?;
                if !is_prime(q) {
                    return Err(HomologyError::NotPrime(q));
                }
                Ok(Self::PrimeField(q))
            }
        }
    }
}

impl FromStr for Coefficients {
    type Err = HomologyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => write!(f, "Z"),
            Self::Rationals => write!(f, "Q"),
            Self::PrimeField(q) => write!(f, "Fq:{q}"),
        }
    }
}

/// `ℤ^free_rank ⊕ ⊕ ℤ/d_i` with `d_i ≥ 2` and `d_i | d_{i+1}`. Over a field
/// only `free_rank` is used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Homology at the middle of `· --D_in--> K --D_out--> ·`.
pub fn homology_at(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<HomologyGroup, HomologyError> {
    if d_out.cols() != d_in.rows() {
        return Err(HomologyError::NotComposable(d_out.cols(), d_in.rows()));
    }
    let (d_in, d_out) = (SparseMatrix::from_dense(d_in), SparseMatrix::from_dense(d_out));
    if !d_out.mul(&d_in).is_zero() {
        return Err(HomologyError::NotAComplex);
    }
    let inv_in = invariant_factors(&d_in);
    let rank_out = invariant_factors(&d_out).len();
    Ok(integral_group(d_in.rows(), &inv_in, rank_out))
}

fn integral_group(dim: usize, inv_in: &[BigInt], rank_out: usize) -> HomologyGroup {
    HomologyGroup {
        free_rank: dim - inv_in.len() - rank_out,
        torsion: inv_in.iter().filter(|d| !d.is_one()).cloned().collect(),
    }
}

/// Homology of one subcomplex at positions `0..=n`.
pub fn subcomplex_homology(sub: &WeightSubcomplex, coefficients: Coefficients) -> Vec<HomologyGroup> {
    let n = sub.terms.len() - 1;
    match coefficients {
        Coefficients::Integers | Coefficients::Rationals => {
            let inv: Vec<Vec<BigInt>> = sub.differentials.iter().map(invariant_factors).collect();
            (0..=n)
                .map(|s| {
                    let empty = Vec::new();
                    let inv_in = if s < n { &inv[s] } else { &empty };
                    let rank_out = if s > 0 { inv[s - 1].len() } else { 0 };
                    let mut g = integral_group(sub.terms[s].dim(), inv_in, rank_out);
                    if coefficients == Coefficients::Rationals {
                        g.torsion.clear();
                    }
                    g
                })
                .collect()
        }
        Coefficients::PrimeField(q) => {
            let ranks: Vec<usize> = sub.differentials.iter().map(|d| rank_mod_p(d, q)).collect();
            (0..=n)
                .map(|s| HomologyGroup {
                    free_rank: sub.terms[s].dim()
                        - if s < n { ranks[s] } else { 0 }
                        - if s > 0 { ranks[s - 1] } else { 0 },
                    torsion: Vec::new(),
                })
                .collect()
        }
    }
}

/// Which of the two degeneration statements apply to the prime `q` in rank `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certification {
    pub q: u64,
    /// `q > ⌈n/2⌉`
    pub field_degeneration: bool,
    /// `q > ⌈(n+1)/2⌉`
    pub integral_torsion: bool,
}

pub fn certification_thresholds(n: usize, q: u64) -> Result<Certification, HomologyError> {
    if n == 0 {
        return Err(HomologyError::ZeroRank);
    }
    if !is_prime(q) {
        return Err(HomologyError::NotPrime(q));
    }
    let n = n as u64;
    Ok(Certification {
        q,
        field_degeneration: q > n.div_ceil(2),
        integral_torsion: q > (n + 1).div_ceil(2),
    })
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending, by trial division.
pub fn prime_factors(x: &BigInt) -> Vec<BigInt> {
    let mut x = x.magnitude().clone();
    let mut out = Vec::new();
    let mut d = num_bigint::BigUint::from(2u32);
    while &d * &d <= x {
        if (&x % &d).is_zero() {
            out.push(BigInt::from(d.clone()));
            while (&x % &d).is_zero() {
                x /= &d;
            }
        }
        d += 1u32;
    }
    if x > num_bigint::BigUint::one() {
        out.push(BigInt::from(x));
    }
    out
}

/// One weight piece of `H_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyPiece {
    pub weight: i64,
    pub group: HomologyGroup,
    /// one flag per torsion coefficient: all its primes pass the integral
    /// torsion threshold
    pub torsion_certified: Vec<bool>,
    /// `(−1)^weight`
    pub conjugation_sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub j: i64,
    /// non-zero pieces, ascending weight
    pub pieces: Vec<HomologyPiece>,
}

impl DegreeHomology {
    pub fn rank(&self) -> usize {
        self.pieces.iter().map(|p| p.group.free_rank).sum()
    }

    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.pieces.iter().flat_map(|p| p.group.torsion.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub n: usize,
    pub coefficients: Coefficients,
    /// `j = 0..=2n`
    pub degrees: Vec<DegreeHomology>,
    pub certification: Vec<Certification>,
    /// non-zero homology found at `j < 0` or `j > 2n`; empty for a correct
    /// implementation
    pub outside_range: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn degree(&self, j: i64) -> Option<&DegreeHomology> {
        usize::try_from(j).ok().and_then(|j| self.degrees.get(j))
    }

    /// Total rank per degree `j = 0..=2n`.
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(DegreeHomology::rank).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| if d.j % 2 == 0 { d.rank() as i64 } else { -(d.rank() as i64) })
            .sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.degrees.iter().any(|d| d.torsion().next().is_some())
    }

    /// Distinct primes dividing some torsion coefficient.
    pub fn torsion_primes(&self) -> Vec<BigInt> {
        let mut set = BTreeSet::new();
        for d in &self.degrees {
            for t in d.torsion() {
                set.extend(prime_factors(t));
            }
        }
        set.into_iter().collect()
    }

    /// The same report over `ℤ[1/S]`: the `S`-primary part of every torsion
    /// coefficient is removed.
    pub fn invert_primes(&self, primes: &[u64]) -> HomologyReport {
        let mut out = self.clone();
        for d in &mut out.degrees {
            for p in &mut d.pieces {
                let mut torsion = Vec::new();
                let mut flags = Vec::new();
                for (t, &c) in p.group.torsion.iter().zip(&p.torsion_certified) {
                    let mut t = t.clone();
                    for &q in primes {
                        let q = BigInt::from(q);
                        while (&t % &q).is_zero() {
                            t /= &q;
                        }
                    }
                    if !t.is_one() {
                        torsion.push(t);
                        flags.push(c);
                    }
                }
                p.group.torsion = torsion;
                p.torsion_certified = flags;
            }
            d.pieces.retain(|p| !p.group.is_zero());
        }
        out
    }
}

/// Homology of `fan` with the requested coefficients.
pub fn bm_homology_report(fan: &Fan, coefficients: Coefficients) -> Result<HomologyReport, HomologyError> {
    let subs = assemble_subcomplexes(fan)?;
    report_from_subcomplexes(fan.rank(), &subs, coefficients)
}

/// Report assembly from already built subcomplexes.
pub fn report_from_subcomplexes(
    n: usize,
    subs: &[WeightSubcomplex],
    coefficients: Coefficients,
) -> Result<HomologyReport, HomologyError> {
    if let Coefficients::PrimeField(q) = coefficients {
        if !is_prime(q) {
            return Err(HomologyError::NotPrime(q));
        }
    }
    let top = 2 * n as i64;
    let mut degrees: Vec<DegreeHomology> = (0..=top).map(|j| DegreeHomology { j, pieces: Vec::new() }).collect();
    let mut outside: Vec<DegreeHomology> = Vec::new();
    let mut torsion_primes = BTreeSet::new();

    let mut raw = Vec::new();
    for sub in subs {
        for (s, g) in subcomplex_homology(sub, coefficients).into_iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for t in &g.torsion {
                torsion_primes.extend(prime_factors(t));
            }
            raw.push((sub.total_degree(s), sub.weight(), g));
        }
    }

    let certified = |p: &BigInt| -> bool {
        let q = p.to_u64().unwrap_or(u64::MAX);
        q > (n as u64 + 1).div_ceil(2)
    };
    for (j, weight, group) in raw {
        let piece = HomologyPiece {
            weight,
            torsion_certified: group
                .torsion
                .iter()
                .map(|t| prime_factors(t).iter().all(certified))
                .collect(),
            group,
            conjugation_sign: if weight.is_even() { 1 } else { -1 },
        };
        if (0..=top).contains(&j) {
            degrees[j as usize].pieces.push(piece);
        } else {
            match outside.iter_mut().find(|d| d.j == j) {
                Some(d) => d.pieces.push(piece),
                None => outside.push(DegreeHomology { j, pieces: alloc::vec![piece] }),
            }
        }
    }
    for d in degrees.iter_mut().chain(outside.iter_mut()) {
        d.pieces.sort_by_key(|p| p.weight);
    }
    outside.sort_by_key(|d| d.j);

    let mut primes: BTreeSet<u64> = (2..=n as u64 + 1).filter(|&q| is_prime(q)).collect();
    for p in &torsion_primes {
        // torsion primes beyond u64 are certified for any n; skip their entry
        if let Some(q) = p.to_u64() {
            primes.insert(q);
        }
    }
    if let Coefficients::PrimeField(q) = coefficients {
        primes.insert(q);
    }
    let certification = primes
        .into_iter()
        .map(|q| certification_thresholds(n, q))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(HomologyReport {
        n,
        coefficients,
        degrees,
        certification,
        outside_range: outside,
    })
}

/// `Σ_j (−1)^j rank H_j` equals the number of `n`-dimensional cones.
pub fn oracle_euler(fan: &Fan, report: &HomologyReport) -> bool {
    report.outside_range.is_empty() && report.euler_characteristic() == fan.f_vector()[fan.rank()] as i64
}

/// Why [`oracle_smooth_complete_betti`] declined to answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleSkip {
    NotSmooth,
    NotComplete,
}

/// Expected Betti numbers `b_0, …, b_{2n}` of a smooth complete toric variety,
/// `b_{2k} = Σ_{i=k}^n (−1)^{i−k} C(i,k) d_{n−i}`, odd ones zero.
pub fn oracle_smooth_complete_betti(fan: &Fan) -> Result<Vec<usize>, OracleSkip> {
    if !fan.is_smooth() {
        return Err(OracleSkip::NotSmooth);
    }
    if !fan.is_complete() || !covers_test_vectors(fan) {
        return Err(OracleSkip::NotComplete);
    }
    let n = fan.rank();
    let d = fan.f_vector();
    let mut b = alloc::vec![0usize; 2 * n + 1];
    for k in 0..=n {
        let mut sum = BigInt::zero();
        for i in k..=n {
            let term = binomial(i, k) * BigInt::from(d[n - i]);
            if (i - k) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        b[2 * k] = sum.to_usize().unwrap_or(0);
    }
    Ok(b)
}

/// Every vector of `{−1, 0, 1}^n` lies in some cone.
fn covers_test_vectors(fan: &Fan) -> bool {
    let n = fan.rank();
    let total = 3usize.pow(n as u32);
    (0..total).all(|mut code| {
        let x: Vec<BigInt> = (0..n)
            .map(|_| {
                let digit = (code % 3) as i64 - 1;
                code /= 3;
                BigInt::from(digit)
            })
            .collect();
        fan.locate(&x).is_some()
    })
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Universal coefficients between an integral report and an `𝔽_q` report of
/// the same fan, checked weight by weight: `dim_q H_j = rank H_j +
/// #{d | q in H_j} + #{d | q in H_{j−1}}`.
pub fn check_universal_coefficients(integral: &HomologyReport, modular: &HomologyReport) -> bool {
    let Coefficients::PrimeField(q) = modular.coefficients else {
        return false;
    };
    if integral.coefficients != Coefficients::Integers || integral.n != modular.n {
        return false;
    }
    let q = BigInt::from(q);
    let piece = |r: &HomologyReport, j: i64, w: i64| -> Option<HomologyGroup> {
        r.degree(j)?.pieces.iter().find(|p| p.weight == w).map(|p| p.group.clone())
    };
    let count = |g: &Option<HomologyGroup>| -> usize {
        g.as_ref().map_or(0, |g| g.torsion.iter().filter(|d| (*d % &q).is_zero()).count())
    };
    let mut keys = BTreeSet::new();
    for r in [integral, modular] {
        for d in &r.degrees {
            for p in &d.pieces {
                keys.insert((d.j, p.weight));
                keys.insert((d.j + 1, p.weight));
            }
        }
    }
    keys.into_iter().filter(|&(j, _)| j <= 2 * integral.n as i64).all(|(j, w)| {
        let z = piece(integral, j, w);
        let expected = z.as_ref().map_or(0, |g| g.free_rank) + count(&z) + count(&piece(integral, j - 1, w));
        let got = piece(modular, j, w).map_or(0, |g| g.free_rank);
        expected == got
    })
}

/// `rank H_j = rank H_{2n−j}` and no torsion.
pub fn check_poincare(report: &HomologyReport) -> bool {
    let b = report.betti();
    !report.has_torsion() && (0..b.len()).all(|j| b[j] == b[b.len() - 1 - j])
}

/// Weights pairwise distinct within each degree, signs equal to `(−1)^weight`.
pub fn check_pieces(report: &HomologyReport) -> bool {
    report.degrees.iter().all(|d| {
        let weights: BTreeSet<i64> = d.pieces.iter().map(|p| p.weight).collect();
        weights.len() == d.pieces.len()
            && d.pieces.iter().all(|p| {
                p.conjugation_sign == if p.weight % 2 == 0 { 1 } else { -1 }
                    && p.torsion_certified.len() == p.group.torsion.len()
            })
    })
}

/// One line of a human readable group description, e.g. `Z^2 + Z/2`.
pub fn describe_group(g: &HomologyGroup, coefficients: Coefficients) -> String {
    let base = match coefficients {
        Coefficients::Integers => String::from("Z"),
        Coefficients::Rationals => String::from("Q"),
        Coefficients::PrimeField(q) => format!("F{q}"),
    };
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push(base),
        r => parts.push(format!("{base}^{r}")),
    }
    for t in &g.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        return String::from("0");
    }
    parts.join(" + ")
}

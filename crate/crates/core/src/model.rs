//! The extended Nicolai model: truncated supercharges, local Hamiltonians,
//! superderivations and the witness operators `O_k`.
//!
//! The infinite supercharge `Q(g) = Σ_k (g c_{2k-1} + c_{2k-1} c*_{2k} c_{2k+1})`
//! is only ever used through finite truncations on a [`Region`]. For a
//! local operator `A`, `δ_g(A) = [Q(g), A]_γ` is evaluated with a periodic
//! truncation large enough that graded locality makes every omitted term
//! irrelevant.

use thiserror::Error;

use crate::car::{AlgebraError, CarPolynomial, Generator, Interval, Parity, SiteIndex};
use crate::coeff::Coeff;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{boundary:?} region [{lo}, {hi}] violates the site parity convention")]
    BadRegionParity {
        lo: SiteIndex,
        hi: SiteIndex,
        boundary: Boundary,
    },
    #[error("expected a {expected:?} region")]
    WrongBoundary { expected: Boundary },
    #[error("region {region} does not cover support {support} with the required margin")]
    RegionTooSmall { region: Interval, support: Interval },
    #[error("coupling g must be nonzero")]
    ZeroCoupling,
    #[error("average needs at least one term")]
    EmptyAverage,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Free,
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            "free" => Ok(Boundary::Free),
            other => Err(format!("unknown boundary {other:?} (periodic | free)")),
        }
    }
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::Free => "free",
        })
    }
}

/// A lattice interval carrying a boundary condition.
///
/// Periodic regions are `[-M+1, N]` with `M`, `N` even (odd left end, even
/// right end) and identify `N+1` with `-M+1`. Free regions are
/// `[-M+1, N+1]` (both ends odd); the extra right site carries the tail
/// term `g c_{N+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Region {
    interval: Interval,
    boundary: Boundary,
}

impl Region {
    pub fn new(lo: SiteIndex, hi: SiteIndex, boundary: Boundary) -> Result<Self, ModelError> {
        let bad = ModelError::BadRegionParity { lo, hi, boundary };
        let lo_odd = lo.rem_euclid(2) == 1;
        let ok = match boundary {
            Boundary::Periodic => lo_odd && hi.rem_euclid(2) == 0 && hi > lo,
            Boundary::Free => lo_odd && hi.rem_euclid(2) == 1 && hi >= lo + 2,
        };
        if !ok {
            return Err(bad);
        }
        Ok(Self {
            interval: Interval::new(lo, hi),
            boundary,
        })
    }

    /// `[-M+1, N]` with `N+1 ≡ -M+1`.
    pub fn periodic(m: i64, n: i64) -> Result<Self, ModelError> {
        Self::new(1 - m, n, Boundary::Periodic)
    }

    /// `[-M+1, N+1]`.
    pub fn free(m: i64, n: i64) -> Result<Self, ModelError> {
        Self::new(1 - m, n + 1, Boundary::Free)
    }

    pub fn with_boundary(m: i64, n: i64, boundary: Boundary) -> Result<Self, ModelError> {
        match boundary {
            Boundary::Periodic => Self::periodic(m, n),
            Boundary::Free => Self::free(m, n),
        }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn left(&self) -> SiteIndex {
        self.interval.lo
    }

    pub fn right(&self) -> SiteIndex {
        self.interval.hi
    }

    /// `M` in `[-M+1, ..]`.
    pub fn m(&self) -> i64 {
        1 - self.interval.lo
    }

    /// `N` in `[.., N]` (periodic) or `[.., N+1]` (free).
    pub fn n(&self) -> i64 {
        match self.boundary {
            Boundary::Periodic => self.interval.hi,
            Boundary::Free => self.interval.hi - 1,
        }
    }

    /// Number of lattice sites in the region.
    pub fn len(&self) -> usize {
        self.interval.width()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Maps a site into the region: `left + ((s - left) mod L)` when
    /// periodic, identity when free.
    pub fn fold(&self, site: SiteIndex) -> SiteIndex {
        match self.boundary {
            Boundary::Periodic => {
                let l = self.len() as i64;
                self.left() + (site - self.left()).rem_euclid(l)
            }
            Boundary::Free => site,
        }
    }

    /// Range of `k` in the bulk sum `Σ_k (g c_{2k-1} + c_{2k-1} c*_{2k} c_{2k+1})`.
    fn bulk_range(&self) -> std::ops::RangeInclusive<i64> {
        (self.left() + 1) / 2..=self.n() / 2
    }

    /// Same region translated by an even offset.
    pub fn shifted(&self, k: i64) -> Result<Self, ModelError> {
        Self::new(self.left() + k, self.right() + k, self.boundary)
    }

    /// Whether a supercharge on this region reproduces `δ_g` on operators
    /// supported in `support`.
    pub fn covers(&self, support: &Interval) -> bool {
        let core = rounded_support(support);
        match self.boundary {
            Boundary::Periodic => self.left() <= core.lo - 2 && self.right() >= core.hi + 2,
            Boundary::Free => self.left() <= core.lo - 2 && self.n() >= core.hi,
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.boundary, self.interval)
    }
}

/// Coupling plus region: one truncated supercharge.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperchargeSpec<C: Coeff> {
    pub g: C,
    pub region: Region,
}

/// Coupling and translation index of a witness operator `O_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSpec<C: Coeff> {
    pub g: C,
    pub k: i64,
}

fn c<C: Coeff>(i: SiteIndex) -> CarPolynomial<C> {
    CarPolynomial::annihilator(i)
}

fn cd<C: Coeff>(i: SiteIndex) -> CarPolynomial<C> {
    CarPolynomial::creator(i)
}

fn bulk_terms<C: Coeff>(g: &C, region: &Region) -> CarPolynomial<C> {
    let mut q = CarPolynomial::zero();
    for k in region.bulk_range() {
        let (a, b, d) = (2 * k - 1, 2 * k, region.fold(2 * k + 1));
        q = q.add(&c::<C>(a).scale(g));
        let tri = CarPolynomial::word(&[
            Generator::annihilation(a),
            Generator::creation(b),
            Generator::annihilation(d),
        ]);
        q = q.add(&tri);
    }
    q
}

/// `Q̃(g)_{[-M+1,N]} = Σ_{k=-M/2+1}^{N/2} (g c_{2k-1} + c_{2k-1} c*_{2k} c_{2k+1})`
/// with `N+1` identified with `-M+1`.
pub fn periodic_supercharge<C: Coeff>(spec: &SuperchargeSpec<C>) -> Result<CarPolynomial<C>, ModelError> {
    if spec.region.boundary() != Boundary::Periodic {
        return Err(ModelError::WrongBoundary {
            expected: Boundary::Periodic,
        });
    }
    Ok(bulk_terms(&spec.g, &spec.region))
}

/// `Q̂(g)_{[-M+1,N+1]}`: the bulk sum without wraparound plus `g c_{N+1}`.
pub fn free_supercharge<C: Coeff>(spec: &SuperchargeSpec<C>) -> Result<CarPolynomial<C>, ModelError> {
    if spec.region.boundary() != Boundary::Free {
        return Err(ModelError::WrongBoundary {
            expected: Boundary::Free,
        });
    }
    let tail = c::<C>(spec.region.right()).scale(&spec.g);
    Ok(bulk_terms(&spec.g, &spec.region).add(&tail))
}

/// Dispatches on the region's boundary.
pub fn supercharge<C: Coeff>(spec: &SuperchargeSpec<C>) -> CarPolynomial<C> {
    match spec.region.boundary() {
        Boundary::Periodic => periodic_supercharge(spec),
        Boundary::Free => free_supercharge(spec),
    }
    .expect("boundary matches")
}

/// `H = {Q, Q*}` for an odd supercharge.
pub fn local_hamiltonian<C: Coeff>(q: &CarPolynomial<C>) -> Result<CarPolynomial<C>, ModelError> {
    if q.parity() != Some(Parity::Odd) && !q.is_zero() {
        return Err(AlgebraError::NonHomogeneousArgument.into());
    }
    Ok(q.anticommutator(&q.adjoint()))
}

/// Local Hamiltonian of the truncated supercharge on `region`.
pub fn region_hamiltonian<C: Coeff>(g: &C, region: &Region) -> CarPolynomial<C> {
    let q = supercharge(&SuperchargeSpec {
        g: g.clone(),
        region: *region,
    });
    local_hamiltonian(&q).expect("supercharges are odd")
}

/// Rounds a support outward to `[-S+1, T]` form: odd left end, even right end.
pub fn rounded_support(support: &Interval) -> Interval {
    let lo = if support.lo.rem_euclid(2) == 1 { support.lo } else { support.lo - 1 };
    let hi = if support.hi.rem_euclid(2) == 0 { support.hi } else { support.hi + 1 };
    Interval::new(lo, hi)
}

/// Periodic region for `δ_g` on operators supported in `support`: the
/// rounded support `[-S+1, T]` widened to `[-(S+2)+1, T+2]`.
pub fn superderivation_region(support: &Interval) -> Region {
    let core = rounded_support(support);
    Region::new(core.lo - 2, core.hi + 2, Boundary::Periodic).expect("parity preserved")
}

/// Periodic region on which `[H̃, A]` reproduces `d_g(A)`: two sites wider
/// on each side than [`superderivation_region`].
pub fn hamiltonian_region(support: &Interval) -> Region {
    let core = rounded_support(support);
    Region::new(core.lo - 4, core.hi + 4, Boundary::Periodic).expect("parity preserved")
}

/// Which superderivation to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjugation {
    /// `δ_g(A) = [Q(g), A]_γ`
    Plain,
    /// `δ*_g(A) = [Q(g)*, A]_γ`
    Adjoint,
}

/// `[Q, A]_γ` (or `[Q*, A]_γ`) with `Q` truncated on the given region.
pub fn superderivation_in<C: Coeff>(
    g: &C,
    a: &CarPolynomial<C>,
    region: &Region,
    which: Conjugation,
) -> Result<CarPolynomial<C>, ModelError> {
    let Some(support) = a.support().ok().flatten() else {
        return Ok(CarPolynomial::zero());
    };
    if !region.covers(&support) {
        return Err(ModelError::RegionTooSmall {
            region: region.interval(),
            support,
        });
    }
    let mut q = supercharge(&SuperchargeSpec {
        g: g.clone(),
        region: *region,
    });
    if which == Conjugation::Adjoint {
        q = q.adjoint();
    }
    Ok(q.graded_commutator(a)?)
}

/// `δ_g(A) = [Q(g), A]_γ` on a local operator.
pub fn superderivation<C: Coeff>(g: &C, a: &CarPolynomial<C>) -> CarPolynomial<C> {
    apply(g, a, Conjugation::Plain)
}

/// `δ*_g(A) = [Q(g)*, A]_γ` on a local operator.
pub fn conjugate_superderivation<C: Coeff>(g: &C, a: &CarPolynomial<C>) -> CarPolynomial<C> {
    apply(g, a, Conjugation::Adjoint)
}

fn apply<C: Coeff>(g: &C, a: &CarPolynomial<C>, which: Conjugation) -> CarPolynomial<C> {
    match a.support() {
        Ok(Some(support)) => superderivation_in(g, a, &superderivation_region(&support), which)
            .expect("minimal region covers its support"),
        _ => CarPolynomial::zero(),
    }
}

/// `d_g(A) = δ*_g(δ_g(A)) + δ_g(δ*_g(A))`.
pub fn susy_laplacian<C: Coeff>(g: &C, a: &CarPolynomial<C>) -> CarPolynomial<C> {
    let one = conjugate_superderivation(g, &superderivation(g, a));
    let two = superderivation(g, &conjugate_superderivation(g, a));
    one.add(&two)
}

/// `[H̃(g)_R, A]` with `R` from [`hamiltonian_region`].
pub fn hamiltonian_derivation<C: Coeff>(g: &C, a: &CarPolynomial<C>) -> CarPolynomial<C> {
    match a.support() {
        Ok(Some(support)) => {
            let h = region_hamiltonian(g, &hamiltonian_region(&support));
            h.graded_commutator(a).expect("hamiltonians are even")
        }
        _ => CarPolynomial::zero(),
    }
}

/// `O_k = c*_{2k-1} (1 - (1/g)(c*_{2k} c_{2k+1} + c_{2k-3} c*_{2k-2})
///        + (2/g²) c_{2k-3} c*_{2k-2} c*_{2k} c_{2k+1})`.
pub fn witness_operator<C: Coeff>(spec: &WitnessSpec<C>) -> Result<CarPolynomial<C>, ModelError> {
    let inv_g = spec.g.recip().ok_or(ModelError::ZeroCoupling)?;
    let two_inv_g2 = C::from_int(2).times(&inv_g).times(&inv_g);
    let k = spec.k;
    let right = &cd::<C>(2 * k) * &c::<C>(2 * k + 1);
    let left = &c::<C>(2 * k - 3) * &cd::<C>(2 * k - 2);
    let bracket = CarPolynomial::identity()
        .sub(&right.add(&left).scale(&inv_g))
        .add(&(&left * &right).scale(&two_inv_g2));
    Ok(&cd::<C>(2 * k - 1) * &bracket)
}

/// `o(n) = (1/n) Σ_{k=1}^{n} O_k`, supported in `[-1, 2n+1]`.
pub fn averaged_witness<C: Coeff>(g: &C, n: usize) -> Result<CarPolynomial<C>, ModelError> {
    if n == 0 {
        return Err(ModelError::EmptyAverage);
    }
    let mut sum = CarPolynomial::zero();
    for k in 1..=n as i64 {
        sum = sum.add(&witness_operator(&WitnessSpec { g: g.clone(), k })?);
    }
    let inv_n = C::from_int(n as i64).recip().expect("n > 0");
    Ok(sum.scale(&inv_n))
}

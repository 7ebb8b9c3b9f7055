use std::cmp::Ordering;

use smallvec::{smallvec, SmallVec};

use super::{Interval, SiteIndex};

type Sites = SmallVec<[SiteIndex; 4]>;

/// A single creation or annihilation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Generator {
    pub site: SiteIndex,
    pub kind: GenKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    Creation,
    Annihilation,
}

impl Generator {
    pub fn creation(site: SiteIndex) -> Self {
        Self {
            site,
            kind: GenKind::Creation,
        }
    }

    pub fn annihilation(site: SiteIndex) -> Self {
        Self {
            site,
            kind: GenKind::Annihilation,
        }
    }

    pub fn dagger(self) -> Self {
        let kind = match self.kind {
            GenKind::Creation => GenKind::Annihilation,
            GenKind::Annihilation => GenKind::Creation,
        };
        Self { kind, ..self }
    }

    pub fn is_creation(&self) -> bool {
        self.kind == GenKind::Creation
    }
}

/// Normal-ordered product `c*_{a1}..c*_{ap} c_{b1}..c_{bq}` with both
/// index lists strictly ascending. The empty monomial is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    creations: Sites,
    annihilations: Sites,
}

/// A monomial with a sign, as produced by reordering.
pub type SignedMonomial = (i8, Monomial);

impl Monomial {
    pub fn identity() -> Self {
        Self {
            creations: SmallVec::new(),
            annihilations: SmallVec::new(),
        }
    }

    pub fn creator(site: SiteIndex) -> Self {
        Self {
            creations: smallvec![site],
            annihilations: SmallVec::new(),
        }
    }

    pub fn annihilator(site: SiteIndex) -> Self {
        Self {
            creations: SmallVec::new(),
            annihilations: smallvec![site],
        }
    }

    /// Builds a monomial from index lists that must already be strictly
    /// ascending. Returns `None` otherwise.
    pub fn from_sorted(creations: &[SiteIndex], annihilations: &[SiteIndex]) -> Option<Self> {
        let ascending = |s: &[SiteIndex]| s.windows(2).all(|w| w[0] < w[1]);
        (ascending(creations) && ascending(annihilations)).then(|| Self {
            creations: creations.iter().copied().collect(),
            annihilations: annihilations.iter().copied().collect(),
        })
    }

    pub fn creations(&self) -> &[SiteIndex] {
        &self.creations
    }

    pub fn annihilations(&self) -> &[SiteIndex] {
        &self.annihilations
    }

    pub fn degree(&self) -> usize {
        self.creations.len() + self.annihilations.len()
    }

    pub fn is_identity(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_odd(&self) -> bool {
        self.degree() % 2 == 1
    }

    /// Net change in particle number.
    pub fn charge(&self) -> isize {
        self.creations.len() as isize - self.annihilations.len() as isize
    }

    /// Generators in canonical word order.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.creations
            .iter()
            .map(|&s| Generator::creation(s))
            .chain(self.annihilations.iter().map(|&s| Generator::annihilation(s)))
    }

    /// Distinct sites touched, ascending.
    pub fn sites(&self) -> Vec<SiteIndex> {
        let mut out: Vec<SiteIndex> = self.creations.iter().chain(&self.annihilations).copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn support(&self) -> Option<Interval> {
        let lo = self.creations.first().into_iter().chain(self.annihilations.first()).min()?;
        let hi = self.creations.last().into_iter().chain(self.annihilations.last()).max()?;
        Some(Interval::new(*lo, *hi))
    }

    /// Whether the two monomials act on a common site.
    pub fn shares_site(&self, other: &Monomial) -> bool {
        let (Some(a), Some(b)) = (self.support(), other.support()) else {
            return false;
        };
        if !a.intersects(&b) {
            return false;
        }
        let mine = self.sites();
        let theirs = other.sites();
        let (mut i, mut j) = (0, 0);
        while i < mine.len() && j < theirs.len() {
            match mine[i].cmp(&theirs[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn shifted(&self, k: SiteIndex) -> Monomial {
        Monomial {
            creations: self.creations.iter().map(|s| s + k).collect(),
            annihilations: self.annihilations.iter().map(|s| s + k).collect(),
        }
    }

    /// `(c*_A c_B)^* = c*_{rev B} c_{rev A}`; reversing a list of length p
    /// costs the sign `(-1)^{p(p-1)/2}`.
    pub fn adjoint(&self) -> SignedMonomial {
        let p = self.creations.len();
        let q = self.annihilations.len();
        let flips = p * p.saturating_sub(1) / 2 + q * q.saturating_sub(1) / 2;
        let sign = if flips % 2 == 0 { 1 } else { -1 };
        (
            sign,
            Monomial {
                creations: self.annihilations.clone(),
                annihilations: self.creations.clone(),
            },
        )
    }

    /// Normal-ordered expansion of `self * gen`; at most two terms.
    pub fn mul_generator(&self, gen: Generator) -> SmallVec<[SignedMonomial; 2]> {
        let j = gen.site;
        let mut out = SmallVec::new();
        match gen.kind {
            GenKind::Annihilation => {
                let pos = self.annihilations.partition_point(|&b| b < j);
                if self.annihilations.get(pos) == Some(&j) {
                    return out;
                }
                let passed = self.annihilations.len() - pos;
                let mut m = self.clone();
                m.annihilations.insert(pos, j);
                out.push((parity_sign(passed), m));
            }
            GenKind::Creation => {
                let q = self.annihilations.len();
                // contraction with c_j already present among the annihilations
                let bpos = self.annihilations.partition_point(|&b| b < j);
                if self.annihilations.get(bpos) == Some(&j) {
                    let mut m = self.clone();
                    m.annihilations.remove(bpos);
                    out.push((parity_sign(q - bpos - 1), m));
                }
                // c*_j moved through all annihilations, then into the creations
                let apos = self.creations.partition_point(|&a| a < j);
                if self.creations.get(apos) != Some(&j) {
                    let passed = q + (self.creations.len() - apos);
                    let mut m = self.clone();
                    m.creations.insert(apos, j);
                    out.push((parity_sign(passed), m));
                }
            }
        }
        out
    }

    /// Normal-ordered expansion of `self * other`.
    pub fn product(&self, other: &Monomial) -> Vec<SignedMonomial> {
        let mut terms: Vec<SignedMonomial> = vec![(1, self.clone())];
        for gen in other.generators() {
            let mut next = Vec::with_capacity(terms.len() * 2);
            for (sign, m) in &terms {
                for (s, prod) in m.mul_generator(gen) {
                    next.push((sign * s, prod));
                }
            }
            terms = next;
            if terms.is_empty() {
                break;
            }
        }
        terms
    }
}

fn parity_sign(swaps: usize) -> i8 {
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.creations.cmp(&other.creations))
            .then_with(|| self.annihilations.cmp(&other.annihilations))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

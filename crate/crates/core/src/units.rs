//! The unit group `B^×(G)` of the Burnside ring.
//!
//! A unit is an element of `B(G)` whose marks are all `±1`, so it is
//! determined by its sign vector: bit `c` is set when the mark at class `c`
//! is `-1`. Multiplying units adds sign vectors, and `B^×(G)` is stored as
//! an F2 subspace in reduced echelon form.

use rayon::prelude::*;
use serde::Serialize;

use crate::biset::{transport_unit, Biset, ElementarySpec, RingCache};
use crate::burnside::{BurnsideElement, BurnsideRing, MarkVector};
use crate::error::{Error, Result};
use crate::f2::{F2Basis, F2Vector};
use crate::genetics::{contributes_unit, GeneticBasis};
use crate::group::{prime_power, Family, Group, Section, Subgroup, TypeKind, TypeTag};

/// Default number of sign vectors the exhaustive search may test.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitElement {
    pub element: BurnsideElement,
    pub signs: F2Vector,
}

impl UnitElement {
    pub fn from_element(ring: &BurnsideRing, a: BurnsideElement) -> Result<UnitElement> {
        let marks = ring.marks(&a);
        if marks.marks.iter().any(|m| m.abs() != 1) {
            return Err(Error::NotUnit);
        }
        let signs = F2Vector::from_bits(marks.marks.iter().map(|&m| m == -1));
        Ok(UnitElement { element: a, signs })
    }

    /// The unit with the given sign vector, if it lies in `B(G)`.
    pub fn from_signs(ring: &BurnsideRing, signs: F2Vector) -> Result<UnitElement> {
        if signs.len() != ring.rank() {
            return Err(Error::GroupMismatch(format!(
                "{} signs for a ring of rank {}",
                signs.len(),
                ring.rank()
            )));
        }
        let marks =
            MarkVector { marks: (0..signs.len()).map(|i| if signs.get(i) { -1 } else { 1 }).collect() };
        let element = ring.from_marks(&marks)?;
        Ok(UnitElement { element, signs })
    }

    pub fn identity(ring: &BurnsideRing) -> UnitElement {
        UnitElement { element: ring.one(), signs: F2Vector::zeros(ring.rank()) }
    }

    /// `-G/G`.
    pub fn minus_one(ring: &BurnsideRing) -> UnitElement {
        UnitElement { element: ring.scale(&ring.one(), -1), signs: F2Vector::ones(ring.rank()) }
    }

    pub fn is_identity(&self) -> bool {
        self.signs.is_zero()
    }

    pub fn marks(&self) -> Vec<i64> {
        (0..self.signs.len()).map(|i| if self.signs.get(i) { -1 } else { 1 }).collect()
    }

    pub fn mul(&self, other: &UnitElement, ring: &BurnsideRing) -> UnitElement {
        let signs = self.signs.xor(&other.signs);
        let element = ring.mul(&self.element, &other.element);
        UnitElement { element, signs }
    }

    /// Every unit squares to `G/G`.
    pub fn inverse(&self) -> UnitElement {
        self.clone()
    }
}

/// The sign vector of a unit, `a ↦ (|a^S|_+)_S` with values in F2.
pub fn epsilon_embed(a: &UnitElement) -> F2Vector {
    a.signs.clone()
}

/// A subgroup of `B^×(G)`, as the reduced echelon basis of its sign vectors.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    basis: F2Basis,
    generators: Vec<UnitElement>,
}

impl UnitGroup {
    pub fn trivial(ring: &BurnsideRing) -> UnitGroup {
        UnitGroup { basis: F2Basis::new(ring.rank()), generators: Vec::new() }
    }

    /// Span of the given sign vectors. Each basis row must be a unit.
    pub fn spanned_by<'a>(
        ring: &BurnsideRing,
        signs: impl IntoIterator<Item = &'a F2Vector>,
    ) -> Result<UnitGroup> {
        let basis = F2Basis::spanned_by(ring.rank(), signs);
        let generators = basis
            .rows()
            .iter()
            .map(|row| {
                UnitElement::from_signs(ring, row.clone()).map_err(|_| {
                    Error::Internal(format!("span row {row} is not a unit of {}", ring.group().name()))
                })
            })
            .collect::<Result<_>>()?;
        Ok(UnitGroup { basis, generators })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `2^rank`.
    pub fn order(&self) -> u128 {
        1u128.checked_shl(self.rank() as u32).unwrap_or(u128::MAX)
    }

    pub fn basis(&self) -> &F2Basis {
        &self.basis
    }

    /// One unit per reduced echelon row.
    pub fn generators(&self) -> &[UnitElement] {
        &self.generators
    }

    pub fn contains(&self, a: &UnitElement) -> bool {
        self.basis.contains(&a.signs)
    }

    pub fn same_as(&self, other: &UnitGroup) -> bool {
        self.basis == other.basis
    }

    /// All elements of the group. Only sensible for small ranks.
    pub fn elements(&self, ring: &BurnsideRing) -> Vec<UnitElement> {
        let r = self.rank();
        assert!(r < 24, "too many units to list");
        (0u32..1 << r)
            .map(|mask| {
                let mut s = F2Vector::zeros(ring.rank());
                for (i, row) in self.basis.rows().iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        s.xor_assign(row);
                    }
                }
                UnitElement::from_signs(ring, s).expect("span of units")
            })
            .collect()
    }
}

/// Candidate count for the exhaustive search, taken from `BURNSIDE_BUDGET`
/// when set.
pub fn budget_from_env() -> u64 {
    std::env::var("BURNSIDE_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// `|G| · M^-1` as an integer matrix, row-major.
fn scaled_inverse(ring: &BurnsideRing) -> Vec<i64> {
    let n = ring.rank();
    let order = ring.group().order() as i64;
    let mut a = vec![0i64; n * n];
    for j in 0..n {
        let mut e = vec![num_rational::Rational64::from_integer(0); n];
        e[j] = num_rational::Rational64::from_integer(1);
        let col = ring.from_marks_rational(&e);
        for (i, x) in col.iter().enumerate() {
            let scaled = x * num_rational::Rational64::from_integer(order);
            assert!(scaled.is_integer(), "|G| clears the denominators of the inverse table of marks");
            a[i * n + j] = scaled.to_integer();
        }
    }
    a
}

/// Tests every `±1` mark vector for integrality and returns the span of
/// those that pass, together with the number found.
///
/// Candidates are visited in Gray-code order so that each step updates
/// `|G| · M^-1 m` by a single column. The search space is split into
/// chunks on the high bits, processed in parallel, then merged in sorted
/// order.
pub fn enumerate_units_bruteforce(ring: &BurnsideRing, budget: u64) -> Result<(UnitGroup, u64)> {
    let k = ring.rank();
    if k >= 63 || (1u64 << k) > budget {
        return Err(Error::BudgetExceeded(k, budget));
    }
    let n = k;
    let order = ring.group().order() as i64;
    let a = scaled_inverse(ring);
    let chunk_bits = k.saturating_sub(12).min(10);
    let low_bits = k - chunk_bits;

    let found: Vec<Vec<u64>> = (0u64..1 << chunk_bits)
        .into_par_iter()
        .map(|chunk| {
            let high = chunk << low_bits;
            let mut marks = vec![1i64; n];
            for (j, m) in marks.iter_mut().enumerate() {
                if high >> j & 1 == 1 {
                    *m = -1;
                }
            }
            let mut v: Vec<i64> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] * marks[j]).sum()).collect();
            let mut bits = high;
            let mut out = Vec::new();
            let mut step = 0u64;
            loop {
                if v.iter().all(|x| x % order == 0) {
                    out.push(bits);
                }
                step += 1;
                if step == 1 << low_bits {
                    break;
                }
                let j = step.trailing_zeros() as usize;
                let old = marks[j];
                for i in 0..n {
                    v[i] -= 2 * old * a[i * n + j];
                }
                marks[j] = -old;
                bits ^= 1 << j;
            }
            out
        })
        .collect();

    let mut all: Vec<u64> = found.into_iter().flatten().collect();
    all.sort_unstable();
    let count = all.len() as u64;
    let vectors: Vec<F2Vector> = all.iter().map(|&b| F2Vector::from_u64(k, b)).collect();
    let group = UnitGroup::spanned_by(ring, &vectors)?;
    if group.order() != count as u128 {
        return Err(Error::Internal(format!(
            "{} units found in {} but their span has order {}",
            count,
            ring.group().name(),
            group.order()
        )));
    }
    Ok((group, count))
}

fn noncentral_involution_classes(ring: &BurnsideRing) -> Vec<usize> {
    let g = ring.group();
    let z = g.center();
    (0..ring.rank())
        .filter(|&c| {
            let h = ring.lattice().class_rep(c);
            h.order() == 2 && h.intersect(&z).is_trivial()
        })
        .collect()
}

/// The explicit generator of the faithful units of the trivial group, the
/// group of order 2, and dihedral groups of order at least 16.
pub fn upsilon(ring: &BurnsideRing) -> Result<UnitElement> {
    let tag = ring.group().classify_type();
    let n = ring.rank();
    let mut coeffs = vec![0i64; n];
    match tag {
        TypeTag { kind: TypeKind::Trivial, .. } => coeffs[0] = -1,
        TypeTag { kind: TypeKind::Cyclic, order: 2 } => {
            coeffs[n - 1] = 1;
            coeffs[0] = -1;
        }
        TypeTag { kind: TypeKind::Dihedral, order } if order >= 16 => {
            let ij = noncentral_involution_classes(ring);
            if ij.len() != 2 {
                return Err(Error::Internal(format!(
                    "dihedral group with {} noncentral involution classes",
                    ij.len()
                )));
            }
            coeffs[n - 1] = 1;
            coeffs[0] = 1;
            coeffs[ij[0]] = -1;
            coeffs[ij[1]] = -1;
        }
        other => return Err(Error::UnsupportedUpsilon(other.to_string())),
    }
    UnitElement::from_element(ring, BurnsideElement { coeffs })
}

/// One generator per qualifying genetic basis entry.
#[derive(Clone, Debug)]
pub struct GeneticGenerator {
    pub subgroup: Subgroup,
    pub type_tag: TypeTag,
    pub unit: UnitElement,
}

#[derive(Clone, Debug)]
pub struct GeneticUnits {
    pub generators: Vec<GeneticGenerator>,
    pub group: UnitGroup,
}

impl GeneticUnits {
    /// Whether the generators are F2-independent.
    pub fn is_basis(&self) -> bool {
        self.group.rank() == self.generators.len()
    }
}

/// Builds `B^×(P)` from a genetic basis: for each entry `Q` of type trivial,
/// `C2` or dihedral, transports the explicit generator of `N_P(Q)/Q` along
/// `Teninf_{N_P(Q)/Q}^P`. For odd `p` the group is `{±P/P}`.
pub fn units_via_genetic_basis(
    ring: &BurnsideRing,
    gb: &GeneticBasis,
    cache: &RingCache,
) -> Result<GeneticUnits> {
    let p = ring.lattice().group_arc().clone();
    let odd = matches!(prime_power(p.order()), Some((q, _)) if q != 2);
    if odd {
        let minus = UnitElement::minus_one(ring);
        let group = UnitGroup::spanned_by(ring, [&minus.signs])?;
        let generators = vec![GeneticGenerator {
            subgroup: p.whole(),
            type_tag: TypeTag { kind: TypeKind::Trivial, order: 1 },
            unit: minus,
        }];
        return Ok(GeneticUnits { generators, group });
    }
    let mut generators = Vec::new();
    for entry in gb.entries.iter().filter(|e| contributes_unit(&e.type_tag)) {
        let q = entry.subgroup;
        let section = Section { top: p.normalizer(&q), bottom: q };
        let teninf = ElementarySpec::Teninf { group: p.clone(), section }.build()?;
        let section_ring = cache.ring(teninf.right_group())?;
        let gen = upsilon(&section_ring)?;
        let unit = transport_unit(&teninf, &gen, &section_ring, ring)?;
        generators.push(GeneticGenerator { subgroup: q, type_tag: entry.type_tag, unit });
    }
    let group = UnitGroup::spanned_by(ring, generators.iter().map(|g| &g.unit.signs))?;
    Ok(GeneticUnits { generators, group })
}

/// Parity of the number of `K`-orbits on `x`, via the orbit-counting lemma
/// `|K\X| = (1/|K|) Σ_{k ∈ K} |X^<k>|`.
fn orbit_count_signs(ring: &BurnsideRing, x: &BurnsideElement) -> Result<F2Vector> {
    let g = ring.group();
    let l = ring.lattice();
    let marks = ring.marks(x);
    let mut signs = F2Vector::zeros(ring.rank());
    for c in 0..ring.rank() {
        let k = l.class_rep(c);
        let total: i64 =
            k.elements().map(|e| marks.marks[l.class_of(&g.generate([e])).expect("cyclic subgroup")]).sum();
        if total % k.order() as i64 != 0 {
            return Err(Error::Internal("orbit count is not an integer".into()));
        }
        signs.set(c, (total / k.order() as i64).rem_euclid(2) == 1);
    }
    Ok(signs)
}

/// `exp_G(x) = (-1)^x`: the unit whose mark at `K` is `(-1)` to the number
/// of `K`-orbits of `x`. Computed both from the orbit-counting lemma and as
/// the transport of `-1 ∈ B^×(1)` along `x` viewed as a `(G, 1)`-biset; the
/// two must agree.
pub fn exp_element(ring: &BurnsideRing, x: &BurnsideElement, cache: &RingCache) -> Result<UnitElement> {
    let direct = UnitElement::from_signs(ring, orbit_count_signs(ring, x)?)
        .map_err(|_| Error::Internal("exponential is not integral".into()))?;

    let trivial_group = std::sync::Arc::new(Group::family(Family::Cyclic, 1)?);
    let trivial = cache.ring(&trivial_group)?;
    let minus = UnitElement::minus_one(&trivial);
    let mut signs = F2Vector::zeros(ring.rank());
    for (c, &coeff) in x.coeffs.iter().enumerate() {
        if coeff.rem_euclid(2) == 1 {
            let h = ring.lattice().class_rep(c);
            let cosets = Biset::coset_space(ring.lattice().group_arc().clone(), &h);
            let t = transport_unit(&cosets, &minus, &trivial, ring)?;
            signs.xor_assign(&t.signs);
        }
    }
    if signs != direct.signs {
        return Err(Error::Internal(format!(
            "exponential routes disagree on {}: {} vs {}",
            ring.group().name(),
            direct.signs,
            signs
        )));
    }
    Ok(direct)
}

/// Image of the exponential map, spanned by the images of the canonical
/// basis.
pub fn exp_image(ring: &BurnsideRing, cache: &RingCache) -> Result<UnitGroup> {
    let images = (0..ring.rank())
        .map(|c| exp_element(ring, &ring.basis(c), cache).map(|u| u.signs))
        .collect::<Result<Vec<_>>>()?;
    UnitGroup::spanned_by(ring, &images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub brute_rank: usize,
    pub genetic_rank: usize,
    pub formula_rank: usize,
    pub generators_independent: bool,
    pub genetic_in_brute: bool,
    pub brute_in_genetic: bool,
    pub equal: bool,
}

/// Compares an exhaustively enumerated unit group with the genetic
/// construction and the type-count formula.
pub fn rank_report(
    ring: &BurnsideRing,
    brute: &UnitGroup,
    genetic: &GeneticUnits,
    gb: &GeneticBasis,
) -> RankReport {
    let odd = matches!(prime_power(ring.group().order()), Some((p, _)) if p != 2);
    let formula_rank = if odd { 1 } else { gb.unit_entries().count() };
    let genetic_in_brute = genetic.generators.iter().all(|g| brute.contains(&g.unit));
    let brute_in_genetic = brute.basis().is_subspace_of(genetic.group.basis());
    let brute_rank = brute.rank();
    let genetic_rank = genetic.group.rank();
    let generators_independent = genetic.is_basis();
    RankReport {
        brute_rank,
        genetic_rank,
        formula_rank,
        generators_independent,
        genetic_in_brute,
        brute_in_genetic,
        equal: brute_rank == genetic_rank
            && genetic_rank == formula_rank
            && generators_independent
            && genetic_in_brute
            && brute_in_genetic,
    }
}

/// Runs both constructions and compares them.
pub fn verify_rank_theorem(
    ring: &BurnsideRing,
    gb: &GeneticBasis,
    cache: &RingCache,
    budget: u64,
) -> Result<RankReport> {
    let (brute, _) = enumerate_units_bruteforce(ring, budget)?;
    let genetic = units_via_genetic_basis(ring, gb, cache)?;
    Ok(rank_report(ring, &brute, &genetic, gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genetics::genetic_basis;
    use std::sync::Arc;

    fn ring(kind: Family, n: usize) -> BurnsideRing {
        BurnsideRing::for_group(Arc::new(Group::family(kind, n).unwrap())).unwrap()
    }

    /// Calls `from_marks` on every sign vector.
    fn naive_units(ring: &BurnsideRing) -> Vec<F2Vector> {
        let k = ring.rank();
        (0u64..1 << k)
            .map(|b| F2Vector::from_u64(k, b))
            .filter(|s| UnitElement::from_signs(ring, s.clone()).is_ok())
            .collect()
    }

    #[test]
    fn brute_force_matches_naive_search() {
        for (kind, n) in [
            (Family::Cyclic, 2),
            (Family::Cyclic, 3),
            (Family::Klein, 4),
            (Family::Dihedral, 8),
            (Family::Quaternion, 8),
            (Family::Dihedral, 16),
        ] {
            let r = ring(kind, n);
            let (units, count) = enumerate_units_bruteforce(&r, DEFAULT_BUDGET).unwrap();
            let naive = naive_units(&r);
            assert_eq!(count, naive.len() as u64, "{kind}:{n}");
            assert!(units.same_as(&UnitGroup::spanned_by(&r, &naive).unwrap()));
        }
    }

    #[test]
    fn brute_force_orders() {
        assert_eq!(enumerate_units_bruteforce(&ring(Family::Cyclic, 3), DEFAULT_BUDGET).unwrap().1, 2);
        assert_eq!(enumerate_units_bruteforce(&ring(Family::Cyclic, 2), DEFAULT_BUDGET).unwrap().1, 4);
        let (d16, count) = enumerate_units_bruteforce(&ring(Family::Dihedral, 16), DEFAULT_BUDGET).unwrap();
        assert_eq!((d16.rank(), count), (6, 64));
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(Family::Dihedral, 16);
        assert_eq!(enumerate_units_bruteforce(&r, 1 << 10).unwrap_err(), Error::BudgetExceeded(11, 1 << 10));
    }

    #[test]
    fn upsilon_examples() {
        let t = ring(Family::Cyclic, 1);
        assert_eq!(upsilon(&t).unwrap().element.coeffs, vec![-1]);
        let c2 = ring(Family::Cyclic, 2);
        assert_eq!(upsilon(&c2).unwrap().element.coeffs, vec![-1, 1]);
        let d16 = ring(Family::Dihedral, 16);
        let u = upsilon(&d16).unwrap();
        let ij = noncentral_involution_classes(&d16);
        for c in 0..d16.rank() {
            assert_eq!(u.signs.get(c), ij.contains(&c));
        }
        assert!(matches!(upsilon(&ring(Family::Dihedral, 8)), Err(Error::UnsupportedUpsilon(_))));
        assert!(upsilon(&ring(Family::Quaternion, 8)).is_err());
    }

    #[test]
    fn unit_products() {
        let r = ring(Family::Dihedral, 8);
        let (units, _) = enumerate_units_bruteforce(&r, DEFAULT_BUDGET).unwrap();
        let all = units.elements(&r);
        for a in &all {
            assert_eq!(r.mul(&a.element, &a.element), r.one());
            assert_eq!(a.mul(&a.inverse(), &r), UnitElement::identity(&r));
            for b in &all {
                let ab = a.mul(b, &r);
                assert_eq!(UnitElement::from_signs(&r, ab.signs.clone()).unwrap(), ab);
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let r = ring(Family::Cyclic, 2);
        assert!(epsilon_embed(&UnitElement::identity(&r)).is_zero());
        assert_eq!(epsilon_embed(&UnitElement::minus_one(&r)), F2Vector::ones(2));
        assert_eq!(epsilon_embed(&upsilon(&r).unwrap()).to_string(), "10");
    }

    #[test]
    fn exponential_examples() {
        let cache = RingCache::default();
        let r = ring(Family::Cyclic, 2);
        assert_eq!(exp_element(&r, &r.zero(), &cache).unwrap(), UnitElement::identity(&r));
        assert_eq!(exp_element(&r, &r.one(), &cache).unwrap(), UnitElement::minus_one(&r));
        assert_eq!(exp_element(&r, &r.basis(0), &cache).unwrap().marks(), vec![1, -1]);
        assert_eq!(exp_image(&r, &cache).unwrap().rank(), 2);
        let d16 = ring(Family::Dihedral, 16);
        assert_eq!(exp_image(&d16, &cache).unwrap().rank(), 5);
    }

    #[test]
    fn genetic_construction() {
        let cache = RingCache::default();
        for (kind, n, rank) in [
            (Family::Klein, 4, 4),
            (Family::Quaternion, 8, 4),
            (Family::Dihedral, 16, 6),
            (Family::Cyclic, 9, 1),
        ] {
            let r = ring(kind, n);
            let gb = genetic_basis(r.lattice()).unwrap();
            let gu = units_via_genetic_basis(&r, &gb, &cache).unwrap();
            assert_eq!(gu.group.rank(), rank, "{kind}:{n}");
            assert!(gu.is_basis());
        }
    }

    #[test]
    fn rank_reports() {
        let cache = RingCache::default();
        for (kind, n, rank) in
            [(Family::Dihedral, 16, 6), (Family::Semidihedral, 16, 5), (Family::Cyclic, 3, 1)]
        {
            let r = ring(kind, n);
            let gb = genetic_basis(r.lattice()).unwrap();
            let rep = verify_rank_theorem(&r, &gb, &cache, DEFAULT_BUDGET).unwrap();
            assert!(rep.equal, "{kind}:{n}: {rep:?}");
            assert_eq!(rep.brute_rank, rank);
        }
    }
}

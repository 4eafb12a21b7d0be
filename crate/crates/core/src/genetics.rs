//! Genetic subgroups of p-groups and genetic bases.
//!
//! Every quantifier in the definitions is decided by scanning the group
//! elements, which is instant at the orders handled here.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{prime_power, Group, Section, Subgroup, TypeKind, TypeTag, MAX_ORDER};
use crate::lattice::SubgroupLattice;

/// Largest rank of a normal elementary abelian subgroup. The trivial group
/// has normal p-rank 0.
pub fn normal_p_rank(g: &Group) -> Result<u32> {
    if g.order() == 1 {
        return Ok(0);
    }
    let (p, _) = prime_power(g.order()).ok_or(Error::NotPGroup(g.order()))?;
    let lattice = SubgroupLattice::with_cap(Arc::new(g.clone()), MAX_ORDER)?;
    let rank = lattice
        .normal_subgroups()
        .filter(|n| {
            n.elements().all(|x| g.element_order(x) <= p)
                && n.elements().all(|x| n.elements().all(|y| g.mul(x, y) == g.mul(y, x)))
        })
        .map(|n| prime_power(n.order()).map_or(0, |(_, k)| k))
        .max()
        .unwrap_or(0);
    Ok(rank)
}

/// `Z_P(Q)`: the preimage in `N_P(Q)` of the centre of `N_P(Q)/Q`.
pub fn z_p(p: &Group, q: &Subgroup) -> Subgroup {
    let n = p.normalizer(q);
    let mask = n
        .elements()
        .filter(|&x| {
            n.elements().all(|y| {
                let commutator = p.mul(p.mul(x, y), p.mul(p.inv(x), p.inv(y)));
                q.contains(commutator)
            })
        })
        .fold(0u128, |m, x| m | 1 << x);
    Subgroup::from_mask_unchecked(mask)
}

fn section_quotient(p: &Group, q: &Subgroup) -> Result<Group> {
    p.section_group(&Section { top: p.normalizer(q), bottom: *q })
}

/// Both genetic conditions: `N_P(Q)/Q` has normal p-rank at most 1, and
/// `Q^x ∩ Z_P(Q) ⊆ Q` holds exactly when `Q^x = Q`.
pub fn is_genetic(p: &Group, q: &Subgroup) -> Result<bool> {
    if normal_p_rank(&section_quotient(p, q)?)? > 1 {
        return Ok(false);
    }
    let z = z_p(p, q);
    Ok(p.elements().all(|x| {
        let qx = p.conjugate_subgroup(q, x);
        qx.intersect(&z).is_subset(q) == (qx == *q)
    }))
}

fn linked_unchecked(p: &Group, q: &Subgroup, r: &Subgroup, zq: &Subgroup, zr: &Subgroup) -> bool {
    let forward = p.elements().any(|x| p.conjugate_subgroup(q, x).intersect(zr).is_subset(r));
    forward && p.elements().any(|y| p.conjugate_subgroup(r, y).intersect(zq).is_subset(q))
}

/// Linkage modulo `P` of two genetic subgroups.
pub fn linked(p: &Group, q: &Subgroup, r: &Subgroup) -> Result<bool> {
    if !is_genetic(p, q)? || !is_genetic(p, r)? {
        return Err(Error::NotGenetic);
    }
    Ok(linked_unchecked(p, q, r, &z_p(p, q), &z_p(p, r)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneticEntry {
    #[serde(serialize_with = "serialize_mask")]
    pub subgroup: Subgroup,
    pub subgroup_order: usize,
    /// `|N_P(Q)/Q|`
    pub section_order: usize,
    /// Type of `N_P(Q)/Q`.
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
}

fn serialize_mask<S: serde::Serializer>(s: &Subgroup, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_str(&format_args!("{:#x}", s.mask()))
}

/// A genetic basis together with the full linkage partition it was chosen
/// from.
#[derive(Clone, Debug)]
pub struct GeneticBasis {
    pub entries: Vec<GeneticEntry>,
    /// All genetic subgroups, in lattice order.
    pub genetic: Vec<Subgroup>,
    /// Linkage classes as indices into `genetic`.
    pub classes: Vec<Vec<usize>>,
}

impl GeneticBasis {
    /// Entries of type trivial, cyclic of order 2, or dihedral.
    pub fn unit_entries(&self) -> impl Iterator<Item = &GeneticEntry> {
        self.entries.iter().filter(|e| contributes_unit(&e.type_tag))
    }

    /// Entries of type trivial or cyclic of order 2.
    pub fn exp_entries(&self) -> impl Iterator<Item = &GeneticEntry> {
        self.entries.iter().filter(|e| e.type_tag.is_trivial() || e.type_tag.is_cyclic_of_order(2))
    }
}

/// Types whose faithful unit group is non-trivial.
pub fn contributes_unit(t: &TypeTag) -> bool {
    t.is_trivial() || t.is_cyclic_of_order(2) || t.is_dihedral()
}

/// Computes all genetic subgroups, partitions them by linkage and picks the
/// smallest bitmask in each class. Linkage is checked to be an equivalence
/// relation on the way.
pub fn genetic_basis(lattice: &SubgroupLattice) -> Result<GeneticBasis> {
    let p = lattice.group();
    if p.order() > 1 && prime_power(p.order()).is_none() {
        return Err(Error::NotPGroup(p.order()));
    }
    let mut genetic = Vec::new();
    for q in lattice.subgroups() {
        if is_genetic(p, q)? {
            genetic.push(*q);
        }
    }
    let zs: Vec<Subgroup> = genetic.iter().map(|q| z_p(p, q)).collect();
    let n = genetic.len();
    let mut link = vec![false; n * n];
    for i in 0..n {
        for j in i..n {
            let l = linked_unchecked(p, &genetic[i], &genetic[j], &zs[i], &zs[j]);
            link[i * n + j] = l;
            link[j * n + i] = l;
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match classes.iter().position(|c| link[c[0] * n + i]) {
            Some(c) => {
                classes[c].push(i);
                class_of[i] = c;
            }
            None => {
                class_of[i] = classes.len();
                classes.push(vec![i]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if link[i * n + j] != (class_of[i] == class_of[j]) {
                return Err(Error::LinkageNotTransitive(format!(
                    "{} at {:#x} and {:#x}",
                    p.name(),
                    genetic[i].mask(),
                    genetic[j].mask()
                )));
            }
        }
    }
    let mut entries = Vec::with_capacity(classes.len());
    for class in &classes {
        let q = class.iter().map(|&i| genetic[i]).min_by_key(Subgroup::mask).expect("non-empty class");
        let section = section_quotient(p, &q)?;
        let type_tag = section.classify_type();
        if type_tag.kind == TypeKind::Dihedral && type_tag.order == 8 {
            return Err(Error::Internal(format!(
                "{}: dihedral group of order 8 cannot have normal 2-rank 1",
                p.name()
            )));
        }
        entries.push(GeneticEntry {
            subgroup: q,
            subgroup_order: q.order(),
            section_order: section.order(),
            type_tag,
        });
    }
    Ok(GeneticBasis { entries, genetic, classes })
}

/// Number of conjugacy classes of cyclic subgroups, which equals the number
/// of rational irreducible representations.
pub fn rational_irrep_count_oracle(lattice: &SubgroupLattice) -> usize {
    lattice.cyclic_classes().len()
}

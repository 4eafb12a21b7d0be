use std::collections::BTreeMap;
use std::sync::Arc;

use super::{same_group, Biset, ElementarySpec};
use crate::error::{Error, Result};
use crate::group::{Element, Group, Subgroup};
use crate::lattice::{omega1_center, SubgroupLattice};

/// A formal integer combination of `(H, G)`-bisets.
#[derive(Clone, Debug)]
pub struct VirtualBiset {
    left: Arc<Group>,
    right: Arc<Group>,
    terms: Vec<(i64, Biset)>,
}

type Signature = BTreeMap<Vec<(Element, Element)>, i64>;

impl VirtualBiset {
    pub fn zero(left: Arc<Group>, right: Arc<Group>) -> VirtualBiset {
        VirtualBiset { left, right, terms: Vec::new() }
    }

    pub fn from_biset(b: Biset) -> VirtualBiset {
        VirtualBiset { left: b.left_group().clone(), right: b.right_group().clone(), terms: vec![(1, b)] }
    }

    pub fn left_group(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right_group(&self) -> &Arc<Group> {
        &self.right
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Biset)> {
        self.terms.iter().map(|(n, b)| (*n, b))
    }

    pub fn add_term(&mut self, n: i64, b: Biset) -> Result<()> {
        if !same_group(&self.left, b.left_group()) || !same_group(&self.right, b.right_group()) {
            return Err(Error::GroupMismatch("virtual biset terms act by different groups".into()));
        }
        if n != 0 {
            self.terms.push((n, b));
        }
        Ok(())
    }

    pub fn add(&self, other: &VirtualBiset) -> Result<VirtualBiset> {
        let mut out = self.clone();
        for (n, b) in other.terms() {
            out.add_term(n, b.clone())?;
        }
        Ok(out)
    }

    /// Bilinear extension of biset composition.
    pub fn compose(&self, other: &VirtualBiset) -> Result<VirtualBiset> {
        if !same_group(&self.right, &other.left) {
            return Err(Error::GroupMismatch("cannot compose virtual bisets".into()));
        }
        let mut out = VirtualBiset::zero(self.left.clone(), other.right.clone());
        for (m, v) in self.terms() {
            for (n, u) in other.terms() {
                out.terms.push((m * n, v.compose(u)?));
            }
        }
        Ok(out)
    }

    /// Multiplicity of each transitive biset up to isomorphism.
    fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for (n, b) in self.terms() {
            for (key, count) in b.orbit_stabilizer_classes() {
                *sig.entry(key).or_insert(0) += n * count as i64;
            }
        }
        sig.retain(|_, v| *v != 0);
        sig
    }

    /// Equality in the Burnside group of `(H, G)`-bisets.
    pub fn equivalent(&self, other: &VirtualBiset) -> bool {
        same_group(&self.left, &other.left)
            && same_group(&self.right, &other.right)
            && self.signature() == other.signature()
    }

    pub fn is_zero(&self) -> bool {
        self.signature().is_empty()
    }
}

/// `e_N^G = Inf_{G/N}^G ∘ Def_{G/N}^G`.
pub fn e_normal(group: &Arc<Group>, normal: &Subgroup) -> Result<Biset> {
    let inf = ElementarySpec::Inf { group: group.clone(), normal: *normal }.build()?;
    let def = ElementarySpec::Def { group: group.clone(), normal: *normal }.build()?;
    inf.compose(&def)
}

/// `f_N^G = Σ_{N ⊆ M ⊴ G} μ⊴(N, M) e_M^G`.
pub fn f_normal(lattice: &SubgroupLattice, normal: &Subgroup) -> Result<VirtualBiset> {
    let g = lattice.group_arc().clone();
    let mut out = VirtualBiset::zero(g.clone(), g.clone());
    let above: Vec<Subgroup> = lattice.normal_subgroups().filter(|m| normal.is_subset(m)).collect();
    if above.is_empty() {
        return Err(Error::NotNormal);
    }
    for m in above {
        let mu = lattice.mobius_normal(normal, &m)?;
        if mu != 0 {
            out.add_term(mu, e_normal(&g, &m)?)?;
        }
    }
    Ok(out)
}

/// `f_1^P = Σ_{N ⊆ Ω_1 Z(P)} μ(1, N) e_N^P`.
pub fn f1_idempotent(lattice: &SubgroupLattice) -> Result<VirtualBiset> {
    let g = lattice.group_arc().clone();
    let omega = omega1_center(&g)?;
    let mut out = VirtualBiset::zero(g.clone(), g.clone());
    for n in lattice.subgroups().iter().filter(|n| n.is_subset(&omega)) {
        let mu = lattice.mobius(&Subgroup::trivial(), n)?;
        if mu != 0 {
            out.add_term(mu, e_normal(&g, n)?)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    fn lattice(kind: Family, n: usize) -> SubgroupLattice {
        SubgroupLattice::new(Arc::new(Group::family(kind, n).unwrap())).unwrap()
    }

    #[test]
    fn e_normal_is_idempotent() {
        let l = lattice(Family::Dihedral, 8);
        let g = l.group_arc().clone();
        for n in l.normal_subgroups() {
            let e = VirtualBiset::from_biset(e_normal(&g, &n).unwrap());
            assert!(e.compose(&e).unwrap().equivalent(&e));
        }
        let e1 = VirtualBiset::from_biset(e_normal(&g, &Subgroup::trivial()).unwrap());
        assert!(e1.equivalent(&VirtualBiset::from_biset(Biset::identity(g.clone()))));
    }

    #[test]
    fn f_normal_sums_to_e_normal() {
        // e_N = Σ_{N ⊆ M} f_M
        let l = lattice(Family::Quaternion, 8);
        let g = l.group_arc().clone();
        for n in l.normal_subgroups() {
            let mut total = VirtualBiset::zero(g.clone(), g.clone());
            for m in l.normal_subgroups().filter(|m| n.is_subset(m)) {
                total = total.add(&f_normal(&l, &m).unwrap()).unwrap();
            }
            assert!(total.equivalent(&VirtualBiset::from_biset(e_normal(&g, &n).unwrap())));
        }
    }

    #[test]
    fn f1_agrees_with_f_normal() {
        for (kind, n) in [(Family::Dihedral, 16), (Family::Klein, 4), (Family::Cyclic, 8)] {
            let l = lattice(kind, n);
            let f1 = f1_idempotent(&l).unwrap();
            let f = f_normal(&l, &Subgroup::trivial()).unwrap();
            assert!(f1.equivalent(&f), "{kind}:{n}");
            assert!(f1.compose(&f1).unwrap().equivalent(&f1));
        }
    }

    #[test]
    fn zero_and_cancellation() {
        let l = lattice(Family::Cyclic, 2);
        let g = l.group_arc().clone();
        let id = Biset::identity(g.clone());
        let mut v = VirtualBiset::zero(g.clone(), g.clone());
        v.add_term(2, id.clone()).unwrap();
        v.add_term(-2, id).unwrap();
        assert!(v.is_zero());
    }
}

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Biset, ElementarySpec, VirtualBiset};
use crate::burnside::BurnsideRing;
use crate::error::{Error, Result};
use crate::f2::{kernel_of_map, F2Vector};
use crate::group::Group;
use crate::units::{UnitElement, UnitGroup};

/// Burnside rings keyed by multiplication table, so that quotients and
/// subgroups rebuilt by different bisets share one ring.
#[derive(Default)]
pub struct RingCache {
    rings: Mutex<HashMap<Vec<u8>, Arc<BurnsideRing>>>,
}

impl RingCache {
    pub fn ring(&self, group: &Arc<Group>) -> Result<Arc<BurnsideRing>> {
        let key = group.table_bytes().to_vec();
        if let Some(r) = self.rings.lock().expect("ring cache lock").get(&key) {
            return Ok(r.clone());
        }
        // Built outside the lock; a racing duplicate is harmless.
        let ring = Arc::new(BurnsideRing::for_group(group.clone())?);
        Ok(self.rings.lock().expect("ring cache lock").entry(key).or_insert(ring).clone())
    }

    pub fn len(&self) -> usize {
        self.rings.lock().expect("ring cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_ring(ring: &BurnsideRing, group: &Group, side: &str) -> Result<()> {
    if ring.group().table_bytes() != group.table_bytes() {
        return Err(Error::GroupMismatch(format!(
            "{side} ring is for {} but the biset acts by {}",
            ring.group().name(),
            group.name()
        )));
    }
    Ok(())
}

/// Multiplicative transport `B^×(G) → B^×(H)` along an `(H, G)`-biset `u`.
///
/// The mark of the image at `T ≤ H` is the product, over `(T, G)`-orbits
/// of `u` with representative `x`, of the mark of `a` at `T^x`.
pub fn transport_unit(
    u: &Biset,
    a: &UnitElement,
    src: &BurnsideRing,
    dst: &BurnsideRing,
) -> Result<UnitElement> {
    check_ring(src, u.right_group(), "source")?;
    check_ring(dst, u.left_group(), "target")?;
    let sl = src.lattice();
    let mut signs = F2Vector::zeros(dst.rank());
    for c in 0..dst.rank() {
        let t = dst.lattice().class_rep(c);
        let mut s = false;
        for (_, stab) in u.double_cosets(&t) {
            let k =
                sl.class_of(&stab).ok_or_else(|| Error::Internal("stabilizer outside the lattice".into()))?;
            s ^= a.signs.get(k);
        }
        signs.set(c, s);
    }
    UnitElement::from_signs(dst, signs)
        .map_err(|_| Error::Internal("transported unit is not integral".into()))
}

/// Transport along a virtual biset: terms with odd coefficient contribute,
/// since every unit has order dividing 2.
pub fn transport_virtual(
    v: &VirtualBiset,
    a: &UnitElement,
    src: &BurnsideRing,
    dst: &BurnsideRing,
) -> Result<UnitElement> {
    check_ring(src, v.right_group(), "source")?;
    check_ring(dst, v.left_group(), "target")?;
    let mut signs = F2Vector::zeros(dst.rank());
    for (n, b) in v.terms() {
        if n.rem_euclid(2) == 1 {
            signs.xor_assign(&transport_unit(b, a, src, dst)?.signs);
        }
    }
    UnitElement::from_signs(dst, signs)
        .map_err(|_| Error::Internal("transported unit is not integral".into()))
}

/// Faithful units: the intersection of the kernels of deflation to `G/N`
/// over the minimal normal subgroups `N`.
pub fn faithful_part(ring: &BurnsideRing, units: &UnitGroup, cache: &RingCache) -> Result<UnitGroup> {
    let g = ring.lattice().group_arc().clone();
    let defs = ring
        .lattice()
        .minimal_normal_subgroups()
        .into_iter()
        .map(|normal| ElementarySpec::Def { group: g.clone(), normal }.build())
        .collect::<Result<Vec<_>>>()?;
    let sources: Vec<F2Vector> = units.basis().rows().to_vec();
    let mut images = vec![F2Vector::zeros(0); sources.len()];
    for def in &defs {
        let quotient = cache.ring(def.left_group())?;
        for (img, gen) in images.iter_mut().zip(units.generators()) {
            let d = transport_unit(def, gen, ring, &quotient)?;
            *img = img.concat(&d.signs);
        }
    }
    let kernel = kernel_of_map(ring.rank(), &sources, &images);
    UnitGroup::spanned_by(ring, kernel.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Family, Section};
    use crate::units::{enumerate_units_bruteforce, upsilon, DEFAULT_BUDGET};

    fn arc(kind: Family, n: usize) -> Arc<Group> {
        Arc::new(Group::family(kind, n).unwrap())
    }

    #[test]
    fn identity_transport_is_identity() {
        let cache = RingCache::default();
        let g = arc(Family::Dihedral, 8);
        let r = cache.ring(&g).unwrap();
        let (units, _) = enumerate_units_bruteforce(&r, DEFAULT_BUDGET).unwrap();
        let id = Biset::identity(g.clone());
        for a in units.elements(&r) {
            assert_eq!(transport_unit(&id, &a, &r, &r).unwrap(), a);
        }
    }

    #[test]
    fn restriction_of_upsilon() {
        // Restricting υ_C2 to the trivial group gives -1.
        let cache = RingCache::default();
        let g = arc(Family::Cyclic, 2);
        let r = cache.ring(&g).unwrap();
        let res =
            ElementarySpec::Res { group: g.clone(), sub: crate::group::Subgroup::trivial() }.build().unwrap();
        let t = cache.ring(res.left_group()).unwrap();
        let image = transport_unit(&res, &upsilon(&r).unwrap(), &r, &t).unwrap();
        assert_eq!(image.marks(), vec![-1]);
    }

    #[test]
    fn inflation_keeps_marks_on_preimages() {
        let cache = RingCache::default();
        let g = arc(Family::Dihedral, 16);
        let z = g.center();
        let inf = ElementarySpec::Inf { group: g.clone(), normal: z }.build().unwrap();
        let q = cache.ring(inf.right_group()).unwrap();
        let r = cache.ring(&g).unwrap();
        let (units, _) = enumerate_units_bruteforce(&q, DEFAULT_BUDGET).unwrap();
        for a in units.elements(&q) {
            let b = transport_unit(&inf, &a, &q, &r).unwrap();
            // The mark at T depends only on TZ/Z.
            for c in 0..r.rank() {
                let t = r.lattice().class_rep(c);
                let tz = g.generate(t.elements().chain(z.elements()));
                let c2 = r.lattice().class_of(&tz).unwrap();
                assert_eq!(b.signs.get(c), b.signs.get(c2));
            }
        }
    }

    #[test]
    fn faithful_part_orders() {
        let cache = RingCache::default();
        for (kind, n, order) in [
            (Family::Cyclic, 1, 2),
            (Family::Cyclic, 2, 2),
            (Family::Cyclic, 4, 1),
            (Family::Klein, 4, 1),
            (Family::Dihedral, 16, 2),
            (Family::Quaternion, 8, 1),
        ] {
            let g = arc(kind, n);
            let r = cache.ring(&g).unwrap();
            let (units, _) = enumerate_units_bruteforce(&r, DEFAULT_BUDGET).unwrap();
            let f = faithful_part(&r, &units, &cache).unwrap();
            assert_eq!(f.order(), order, "{kind}:{n}");
        }
    }

    #[test]
    fn teninf_of_trivial_generator() {
        // Teninf from P/P of -1 is -1.
        let cache = RingCache::default();
        let g = arc(Family::Quaternion, 8);
        let r = cache.ring(&g).unwrap();
        let b = ElementarySpec::Teninf {
            group: g.clone(),
            section: Section { top: g.whole(), bottom: g.whole() },
        }
        .build()
        .unwrap();
        let t = cache.ring(b.right_group()).unwrap();
        let image = transport_unit(&b, &upsilon(&t).unwrap(), &t, &r).unwrap();
        assert_eq!(image, UnitElement::minus_one(&r));
    }

    #[test]
    fn mismatched_rings_rejected() {
        let cache = RingCache::default();
        let g = arc(Family::Cyclic, 2);
        let r = cache.ring(&g).unwrap();
        let other = cache.ring(&arc(Family::Cyclic, 4)).unwrap();
        let id = Biset::identity(g);
        let one = UnitElement::identity(&r);
        assert!(matches!(transport_unit(&id, &one, &other, &r), Err(Error::GroupMismatch(_))));
        assert_eq!(cache.len(), 2);
    }
}

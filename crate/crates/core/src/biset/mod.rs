//! Finite bisets stored concretely as point sets with action tables.
//!
//! An `(H, G)`-biset has a left `H`-action and a right `G`-action that
//! commute. Composition `V ×_H U`, opposite bisets and the `(T, G)`-orbit
//! decomposition used by the multiplicative transport all work directly on
//! the tables.

mod elementary;
mod transport;
mod virtual_biset;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Subgroup};

pub use elementary::ElementarySpec;
pub use transport::{faithful_part, transport_unit, transport_virtual, RingCache};
pub use virtual_biset::{e_normal, f1_idempotent, f_normal, VirtualBiset};

/// Index of a point of a [`Biset`].
pub type Point = usize;

#[derive(Clone)]
pub struct Biset {
    left: Arc<Group>,
    right: Arc<Group>,
    points: usize,
    /// `left_act[h * points + u] = h·u`
    left_act: Vec<u32>,
    /// `right_act[g * points + u] = u·g`
    right_act: Vec<u32>,
}

impl std::fmt::Debug for Biset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Biset")
            .field("left", &self.left.name())
            .field("right", &self.right.name())
            .field("points", &self.points)
            .finish()
    }
}

/// Structural group equality with a pointer fast path.
pub(crate) fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Biset {
    /// Builds a biset from action functions, checking both are actions and
    /// that they commute.
    pub fn from_actions(
        left: Arc<Group>,
        right: Arc<Group>,
        points: usize,
        left_fn: impl Fn(Element, Point) -> Point,
        right_fn: impl Fn(Point, Element) -> Point,
    ) -> Result<Biset> {
        let mut left_act = Vec::with_capacity(left.order() * points);
        for h in left.elements() {
            for u in 0..points {
                let v = left_fn(h, u);
                if v >= points {
                    return Err(Error::MalformedBiset(format!("left image {v} out of range")));
                }
                left_act.push(v as u32);
            }
        }
        let mut right_act = Vec::with_capacity(right.order() * points);
        for g in right.elements() {
            for u in 0..points {
                let v = right_fn(u, g);
                if v >= points {
                    return Err(Error::MalformedBiset(format!("right image {v} out of range")));
                }
                right_act.push(v as u32);
            }
        }
        let b = Biset { left, right, points, left_act, right_act };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let (h, g) = (&*self.left, &*self.right);
        for u in 0..self.points {
            if self.act_left(0, u) != u || self.act_right(u, 0) != u {
                return Err(Error::MalformedBiset("identity does not act trivially".into()));
            }
        }
        for a in h.elements() {
            for b in h.elements() {
                for u in 0..self.points {
                    if self.act_left(h.mul(a, b), u) != self.act_left(a, self.act_left(b, u)) {
                        return Err(Error::MalformedBiset("left action is not an action".into()));
                    }
                }
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                for u in 0..self.points {
                    if self.act_right(u, g.mul(a, b)) != self.act_right(self.act_right(u, a), b) {
                        return Err(Error::MalformedBiset("right action is not an action".into()));
                    }
                }
            }
        }
        for a in h.elements() {
            for b in g.elements() {
                for u in 0..self.points {
                    if self.act_right(self.act_left(a, u), b) != self.act_left(a, self.act_right(u, b)) {
                        return Err(Error::MalformedBiset("actions do not commute".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Id_G`: the set `G` with both actions by multiplication.
    pub fn identity(group: Arc<Group>) -> Biset {
        let g = group.clone();
        let g2 = group.clone();
        Biset::from_actions(
            group.clone(),
            group.clone(),
            group.order(),
            move |h, u| g.mul(h, u),
            move |u, x| g2.mul(u, x),
        )
        .expect("regular biset")
    }

    pub fn left_group(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right_group(&self) -> &Arc<Group> {
        &self.right
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    #[inline]
    pub fn act_left(&self, h: Element, u: Point) -> Point {
        self.left_act[h * self.points + u] as usize
    }

    #[inline]
    pub fn act_right(&self, u: Point, g: Element) -> Point {
        self.right_act[g * self.points + u] as usize
    }

    /// The opposite `(G, H)`-biset: `g·u·h` in the opposite is `h^-1 u g^-1`.
    pub fn opposite(&self) -> Biset {
        let (h, g) = (&*self.left, &*self.right);
        let mut left_act = Vec::with_capacity(g.order() * self.points);
        for x in g.elements() {
            for u in 0..self.points {
                left_act.push(self.act_right(u, g.inv(x)) as u32);
            }
        }
        let mut right_act = Vec::with_capacity(h.order() * self.points);
        for y in h.elements() {
            for u in 0..self.points {
                right_act.push(self.act_left(h.inv(y), u) as u32);
            }
        }
        Biset { left: self.right.clone(), right: self.left.clone(), points: self.points, left_act, right_act }
    }

    /// `self ×_H u` for `self` a `(K, H)`-biset and `u` an `(H, G)`-biset.
    pub fn compose(&self, u: &Biset) -> Result<Biset> {
        if !same_group(&self.right, &u.left) {
            return Err(Error::GroupMismatch(format!(
                "cannot compose over {} and {}",
                self.right.name(),
                u.left.name()
            )));
        }
        let h = &*self.right;
        let (nv, nu) = (self.points, u.points);
        let mut parent: Vec<usize> = (0..nv * nu).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for v in 0..nv {
            for w in 0..nu {
                for y in h.elements().skip(1) {
                    let a = find(&mut parent, v * nu + w);
                    let b = find(&mut parent, self.act_right(v, y) * nu + u.act_left(h.inv(y), w));
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
            }
        }
        let mut class = vec![usize::MAX; nv * nu];
        let mut reps = Vec::new();
        for p in 0..nv * nu {
            let r = find(&mut parent, p);
            if class[r] == usize::MAX {
                class[r] = reps.len();
                reps.push(p);
            }
            class[p] = class[r];
        }
        let points = reps.len();
        let mut left_act = Vec::with_capacity(self.left.order() * points);
        for k in self.left.elements() {
            for &p in &reps {
                let (v, w) = (p / nu, p % nu);
                left_act.push(class[self.act_left(k, v) * nu + w] as u32);
            }
        }
        let mut right_act = Vec::with_capacity(u.right.order() * points);
        for g in u.right.elements() {
            for &p in &reps {
                let (v, w) = (p / nu, p % nu);
                right_act.push(class[v * nu + u.act_right(w, g)] as u32);
            }
        }
        Ok(Biset { left: self.left.clone(), right: u.right.clone(), points, left_act, right_act })
    }

    /// Orbits of `T × G` on the points, `T` a subgroup of the left group.
    /// Returns one representative `u` per orbit together with
    /// `T^u = { g ∈ G : ∃ t ∈ T, t·u = u·g }`.
    pub fn double_cosets(&self, t: &Subgroup) -> Vec<(Point, Subgroup)> {
        let g = &*self.right;
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        let mut in_orbit = vec![false; self.points];
        for start in 0..self.points {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(p) = stack.pop() {
                for x in t.elements() {
                    let q = self.act_left(x, p);
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
                for y in g.elements() {
                    let q = self.act_right(p, y);
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
            let t_orbit: Vec<Point> = t.elements().map(|x| self.act_left(x, start)).collect();
            for &q in &t_orbit {
                in_orbit[q] = true;
            }
            let stab =
                g.elements().filter(|&y| in_orbit[self.act_right(start, y)]).fold(0u128, |m, y| m | 1 << y);
            for &q in &t_orbit {
                in_orbit[q] = false;
            }
            out.push((start, Subgroup::from_mask_unchecked(stab)));
        }
        out
    }

    /// Orbit representatives of the two-sided action together with the
    /// stabilizers `{(h, g) : h·u = u·g}` in canonical form.
    pub(crate) fn orbit_stabilizer_classes(&self) -> BTreeMap<Vec<(Element, Element)>, usize> {
        let (h, g) = (&*self.left, &*self.right);
        let mut seen = vec![false; self.points];
        let mut classes = BTreeMap::new();
        for start in 0..self.points {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(p) = stack.pop() {
                for x in h.elements() {
                    for y in g.elements() {
                        let q = self.act_right(self.act_left(x, p), y);
                        if !seen[q] {
                            seen[q] = true;
                            stack.push(q);
                        }
                    }
                }
            }
            let stab: Vec<(Element, Element)> = h
                .elements()
                .flat_map(|x| g.elements().map(move |y| (x, y)))
                .filter(|&(x, y)| self.act_left(x, start) == self.act_right(start, y))
                .collect();
            // Smallest sorted conjugate under H × G.
            let canonical = h
                .elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .map(|(a, b)| {
                    let mut c: Vec<(Element, Element)> =
                        stab.iter().map(|&(x, y)| (h.conj(x, a), g.conj(y, b))).collect();
                    c.sort_unstable();
                    c
                })
                .min()
                .unwrap();
            *classes.entry(canonical).or_insert(0) += 1;
        }
        classes
    }

    /// Number of orbits under the combined left and right actions.
    pub fn orbit_count(&self) -> usize {
        self.orbit_stabilizer_classes().values().sum()
    }

    /// Isomorphism test. A biset is an `H × G`-set, so it is determined up to
    /// isomorphism by the multiset of conjugacy classes of its point
    /// stabilizers.
    pub fn is_isomorphic(&self, other: &Biset) -> bool {
        same_group(&self.left, &other.left)
            && same_group(&self.right, &other.right)
            && self.points == other.points
            && self.orbit_stabilizer_classes() == other.orbit_stabilizer_classes()
    }

    /// A `G`-set viewed as a `(G, 1)`-biset: `G/H` as cosets.
    pub fn coset_space(group: Arc<Group>, h: &Subgroup) -> Biset {
        let g = &*group;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x] == usize::MAX {
                for y in h.elements() {
                    coset_of[g.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        let trivial = Arc::new(Group::family(crate::group::Family::Cyclic, 1).unwrap());
        Biset::from_actions(group.clone(), trivial, reps.len(), |a, c| coset_of[g.mul(a, reps[c])], |c, _| c)
            .expect("coset space is a biset")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Family, Section};

    fn arc(kind: Family, n: usize) -> Arc<Group> {
        Arc::new(Group::family(kind, n).unwrap())
    }

    #[test]
    fn identity_and_opposite() {
        let g = arc(Family::Dihedral, 8);
        let id = Biset::identity(g.clone());
        assert!(id.opposite().is_isomorphic(&id));
        assert!(id.opposite().opposite().is_isomorphic(&id));
        let iso = ElementarySpec::Iso { source: g.clone(), target: g.clone(), map: (0..8).collect() }
            .build()
            .unwrap();
        assert!(iso.is_isomorphic(&id));
    }

    #[test]
    fn opposite_of_induction_is_restriction() {
        let g = arc(Family::Dihedral, 16);
        let h = g.generate([8, 4]);
        let ind = ElementarySpec::Ind { group: g.clone(), sub: h }.build().unwrap();
        let res = ElementarySpec::Res { group: g.clone(), sub: h }.build().unwrap();
        assert!(ind.opposite().is_isomorphic(&res));
        assert!(!ind.is_isomorphic(&Biset::identity(g.clone())));
    }

    #[test]
    fn opposite_of_inflation_is_deflation() {
        let g = arc(Family::Quaternion, 16);
        let z = g.center();
        let inf = ElementarySpec::Inf { group: g.clone(), normal: z }.build().unwrap();
        let def = ElementarySpec::Def { group: g.clone(), normal: z }.build().unwrap();
        assert_eq!(inf.opposite().orbit_count(), def.orbit_count());
        assert!(inf.opposite().is_isomorphic(&def));
    }

    #[test]
    fn deflation_after_inflation_is_identity() {
        for (kind, n) in [(Family::Dihedral, 16), (Family::Klein, 4)] {
            let g = arc(kind, n);
            for normal in [g.center(), Subgroup::trivial(), g.whole()] {
                let inf = ElementarySpec::Inf { group: g.clone(), normal }.build().unwrap();
                let def = ElementarySpec::Def { group: g.clone(), normal }.build().unwrap();
                let comp = def.compose(&inf).unwrap();
                let quotient = def.left_group().clone();
                assert!(comp.is_isomorphic(&Biset::identity(quotient)));
            }
        }
    }

    #[test]
    fn compose_with_identity() {
        let g = arc(Family::Dihedral, 8);
        let res = ElementarySpec::Res { group: g.clone(), sub: g.center() }.build().unwrap();
        let id_h = Biset::identity(res.left_group().clone());
        assert!(id_h.compose(&res).unwrap().is_isomorphic(&res));
        assert!(res.compose(&Biset::identity(g.clone())).unwrap().is_isomorphic(&res));
        assert!(matches!(res.compose(&res), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn indinf_is_transitive() {
        let g = arc(Family::Dihedral, 16);
        let s = g.generate([8]);
        let t = g.normalizer(&s);
        let b = ElementarySpec::Indinf { group: g.clone(), section: Section { top: t, bottom: s } }
            .build()
            .unwrap();
        assert_eq!(b.point_count(), 16 / 2);
        assert_eq!(b.orbit_count(), 1);
        // Agrees with the composite of its factors.
        let defres = ElementarySpec::Defres { group: g.clone(), section: Section { top: t, bottom: s } }
            .build()
            .unwrap();
        assert!(b.opposite().is_isomorphic(&defres));
    }

    #[test]
    fn double_coset_examples() {
        let g = arc(Family::Dihedral, 8);
        let id = Biset::identity(g.clone());
        let dc = id.double_cosets(&g.whole());
        assert_eq!(dc, vec![(0, g.whole())]);

        let ind = ElementarySpec::Ind { group: g.clone(), sub: Subgroup::trivial() }.build().unwrap();
        let t = g.generate([4]);
        let dc = ind.double_cosets(&t);
        assert_eq!(dc.len(), 8 / 2);
        assert!(dc.iter().all(|(_, s)| s.is_trivial()));

        let d16 = arc(Family::Dihedral, 16);
        let i = d16.generate([8]);
        let res = ElementarySpec::Res { group: d16.clone(), sub: i }.build().unwrap();
        let dc = res.double_cosets(&res.left_group().whole());
        assert_eq!(dc.len(), 1);
        let stab = dc[0].1;
        assert_eq!(stab.order(), 2);
        assert!(d16.is_subconjugate(&stab, &i));
    }

    #[test]
    fn malformed_actions_rejected() {
        let g = arc(Family::Cyclic, 2);
        let err = Biset::from_actions(g.clone(), g.clone(), 2, |h, u| u ^ h, |u, _| 1 - u);
        assert!(err.is_err());
    }

    #[test]
    fn coset_spaces() {
        let g = arc(Family::Cyclic, 4);
        let x = Biset::coset_space(g.clone(), &g.generate([2]));
        assert_eq!(x.point_count(), 2);
        assert_eq!(x.double_cosets(&g.whole()).len(), 1);
    }
}

//! Subgroup lattices, conjugacy classes of subgroups and Möbius functions.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{prime_power, Element, Group, Subgroup};

/// Default cap on the order of groups whose lattice is enumerated.
pub const DEFAULT_LATTICE_CAP: usize = 64;

/// All subgroups of a group, sorted by order then bitmask, partitioned into
/// conjugacy classes.
///
/// Classes are numbered in the order in which their representatives appear
/// in the sorted subgroup list, and the representative of each class is its
/// member with the smallest bitmask. This class order is the coordinate
/// order of every Burnside-ring vector built on top of the lattice.
pub struct SubgroupLattice {
    group: Arc<Group>,
    subgroups: Vec<Subgroup>,
    index: HashMap<u128, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    normal: Vec<bool>,
    mobius_rows: Vec<OnceLock<Vec<(usize, i64)>>>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group", &self.group)
            .field("subgroups", &self.subgroups.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl SubgroupLattice {
    pub fn new(group: Arc<Group>) -> Result<Self> {
        Self::with_cap(group, DEFAULT_LATTICE_CAP)
    }

    /// Enumerates subgroups by closing the cyclic subgroups under joins.
    pub fn with_cap(group: Arc<Group>, cap: usize) -> Result<Self> {
        if group.order() > cap {
            return Err(Error::OrderCapExceeded { order: group.order(), cap });
        }
        let g = &*group;

        let mut cyclic: Vec<(Subgroup, Element)> = Vec::new();
        let mut seen_cyclic: HashMap<u128, ()> = HashMap::new();
        for x in g.elements() {
            let c = g.generate([x]);
            if seen_cyclic.insert(c.mask(), ()).is_none() {
                cyclic.push((c, x));
            }
        }

        let mut gens: HashMap<u128, Vec<Element>> = HashMap::new();
        let mut queue: Vec<Subgroup> = Vec::new();
        for &(c, x) in &cyclic {
            gens.insert(c.mask(), if x == 0 { vec![] } else { vec![x] });
            queue.push(c);
        }
        while let Some(h) = queue.pop() {
            let hg = gens[&h.mask()].clone();
            for &(c, x) in &cyclic {
                if c.is_subset(&h) {
                    continue;
                }
                let j = g.generate(hg.iter().copied().chain([x]));
                if let std::collections::hash_map::Entry::Vacant(e) = gens.entry(j.mask()) {
                    let mut jg = hg.clone();
                    jg.push(x);
                    e.insert(jg);
                    queue.push(j);
                }
            }
        }

        let mut subgroups: Vec<Subgroup> = gens.keys().map(|&m| Subgroup::from_mask_unchecked(m)).collect();
        subgroups.sort();
        let index: HashMap<u128, usize> = subgroups.iter().enumerate().map(|(i, s)| (s.mask(), i)).collect();

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut normal = vec![false; subgroups.len()];
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for x in g.elements() {
                let j = index[&g.conjugate_subgroup(&subgroups[i], x).mask()];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
            members.sort_unstable();
            if members.len() == 1 {
                normal[i] = true;
            }
            classes.push(members);
        }

        let mobius_rows = (0..subgroups.len()).map(|_| OnceLock::new()).collect();
        Ok(SubgroupLattice { group, subgroups, index, class_of, classes, normal, mobius_rows })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(&h.mask()).copied()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Representative of class `c`: the member with the smallest bitmask.
    pub fn class_rep(&self, c: usize) -> Subgroup {
        self.subgroups[self.classes[c][0]]
    }

    pub fn class_reps(&self) -> impl Iterator<Item = Subgroup> + '_ {
        (0..self.classes.len()).map(|c| self.class_rep(c))
    }

    pub fn class_members(&self, c: usize) -> impl Iterator<Item = Subgroup> + '_ {
        self.classes[c].iter().map(|&i| self.subgroups[i])
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.index_of(h).map(|i| self.class_of[i])
    }

    /// `|N_G(H)|` for the representative `H` of class `c`.
    pub fn normalizer_order(&self, c: usize) -> usize {
        self.group.order() / self.classes[c].len()
    }

    pub fn is_normal_index(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = Subgroup> + '_ {
        self.subgroups.iter().zip(&self.normal).filter(|(_, &n)| n).map(|(s, _)| *s)
    }

    /// Minimal non-trivial normal subgroups.
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let nontrivial: Vec<Subgroup> = self.normal_subgroups().filter(|n| !n.is_trivial()).collect();
        nontrivial.iter().filter(|n| !nontrivial.iter().any(|m| m != *n && m.is_subset(n))).copied().collect()
    }

    /// Classes whose representative is cyclic.
    pub fn cyclic_classes(&self) -> Vec<usize> {
        (0..self.class_count())
            .filter(|&c| {
                let h = self.class_rep(c);
                h.elements().any(|x| self.group.element_order(x) == h.order())
            })
            .collect()
    }

    fn mobius_row(&self, k: usize) -> &[(usize, i64)] {
        self.mobius_rows[k].get_or_init(|| {
            let low = self.subgroups[k];
            let mut row: Vec<(usize, i64)> = Vec::new();
            for (i, h) in self.subgroups.iter().enumerate().skip(k) {
                if !low.is_subset(h) {
                    continue;
                }
                let value = if i == k {
                    1
                } else {
                    -row.iter().filter(|(j, _)| self.subgroups[*j].is_subset(h)).map(|(_, v)| v).sum::<i64>()
                };
                row.push((i, value));
            }
            row
        })
    }

    /// Möbius function `μ(K, H)` of the subgroup poset.
    pub fn mobius(&self, k: &Subgroup, h: &Subgroup) -> Result<i64> {
        if !k.is_subset(h) {
            return Err(Error::NotContained { inner: k.mask(), outer: h.mask() });
        }
        let ki = self.index_of(k).ok_or(Error::NotSubgroup)?;
        let hi = self.index_of(h).ok_or(Error::NotSubgroup)?;
        Ok(self.mobius_row(ki).iter().find(|(i, _)| *i == hi).map_or(0, |(_, v)| *v))
    }

    /// Möbius function `μ⊴(N, M)` of the poset of normal subgroups.
    pub fn mobius_normal(&self, n: &Subgroup, m: &Subgroup) -> Result<i64> {
        let ni = self.index_of(n).ok_or(Error::NotSubgroup)?;
        let mi = self.index_of(m).ok_or(Error::NotSubgroup)?;
        if !self.normal[ni] || !self.normal[mi] {
            return Err(Error::NotNormal);
        }
        if !n.is_subset(m) {
            return Err(Error::NotContained { inner: n.mask(), outer: m.mask() });
        }
        let interval: Vec<Subgroup> =
            self.normal_subgroups().filter(|l| n.is_subset(l) && l.is_subset(m)).collect();
        let mut values: Vec<i64> = Vec::with_capacity(interval.len());
        for (i, l) in interval.iter().enumerate() {
            let v = if i == 0 {
                1
            } else {
                -interval[..i]
                    .iter()
                    .zip(&values)
                    .filter(|(x, _)| x.is_subset(l))
                    .map(|(_, v)| v)
                    .sum::<i64>()
            };
            values.push(v);
        }
        Ok(*values.last().unwrap())
    }

    /// Classes of subgroups meeting the centre trivially.
    pub fn fixed_point_free_classes(&self) -> Vec<usize> {
        let z = self.group.center();
        (0..self.class_count()).filter(|&c| self.class_rep(c).intersect(&z).is_trivial()).collect()
    }
}

/// Subgroup of the centre generated by central elements of order dividing `p`.
pub fn omega1_center(g: &Group) -> Result<Subgroup> {
    if g.order() == 1 {
        return Ok(Subgroup::trivial());
    }
    let (p, _) = prime_power(g.order()).ok_or(Error::NotPGroup(g.order()))?;
    let z = g.center();
    Ok(g.generate(z.elements().filter(|&x| g.element_order(x) <= p)))
}

#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use burnside_core::biset::RingCache;
use burnside_core::report::parse_descriptor;
use burnside_core::units::{enumerate_units_bruteforce, UnitElement, DEFAULT_BUDGET};
use burnside_core::{
    Biset, BurnsideElement, BurnsideRing, ElementarySpec, F2Vector, Group, Section, Subgroup, SubgroupLattice,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn group(descriptor: &str) -> Arc<Group> {
    Arc::new(parse_descriptor(descriptor).expect("valid descriptor"))
}

pub fn lattice(g: &Arc<Group>) -> SubgroupLattice {
    SubgroupLattice::new(g.clone()).expect("lattice")
}

/// A uniformly random unit, as a random combination of a basis of
/// `B^×(G)`.
pub fn random_unit(ring: &BurnsideRing, rng: &mut impl Rng) -> UnitElement {
    let (units, _) = enumerate_units_bruteforce(ring, DEFAULT_BUDGET).expect("within budget");
    let mut signs = F2Vector::zeros(ring.rank());
    for g in units.generators() {
        if rng.gen_bool(0.5) {
            signs.xor_assign(&g.signs);
        }
    }
    UnitElement::from_signs(ring, signs).expect("span of units")
}

pub fn random_element(ring: &BurnsideRing, rng: &mut impl Rng) -> BurnsideElement {
    BurnsideElement { coeffs: (0..ring.rank()).map(|_| rng.gen_range(-4..=4)).collect() }
}

fn random_section(g: &Group, l: &SubgroupLattice, rng: &mut impl Rng) -> Section {
    let top = *l.subgroups().choose(rng).unwrap();
    let candidates: Vec<Subgroup> = l
        .subgroups()
        .iter()
        .copied()
        .filter(|s| {
            s.is_subset(&top)
                && (0..g.order()).filter(|&x| top.contains(x)).all(|x| g.conjugate_subgroup(s, x) == *s)
        })
        .collect();
    Section { top, bottom: *candidates.choose(rng).unwrap() }
}

fn conjugation(g: &Group, x: usize) -> Vec<usize> {
    g.elements().map(|y| g.conj(y, x)).collect()
}

/// A random elementary biset whose right group is `g`.
pub fn elementary_from_right(g: &Arc<Group>, rng: &mut impl Rng) -> Biset {
    let l = lattice(g);
    let normals: Vec<Subgroup> = l.normal_subgroups().collect();
    let spec = match rng.gen_range(0..4) {
        0 => ElementarySpec::Res { group: g.clone(), sub: *l.subgroups().choose(rng).unwrap() },
        1 => ElementarySpec::Def { group: g.clone(), normal: *normals.choose(rng).unwrap() },
        2 => ElementarySpec::Iso {
            source: g.clone(),
            target: g.clone(),
            map: conjugation(g, rng.gen_range(0..g.order())),
        },
        _ => ElementarySpec::Defres { group: g.clone(), section: random_section(g, &l, rng) },
    };
    spec.build().expect("valid elementary biset")
}

/// A random elementary biset whose left group is `g`.
pub fn elementary_from_left(g: &Arc<Group>, rng: &mut impl Rng) -> Biset {
    let l = lattice(g);
    let normals: Vec<Subgroup> = l.normal_subgroups().collect();
    let spec = match rng.gen_range(0..4) {
        0 => ElementarySpec::Ind { group: g.clone(), sub: *l.subgroups().choose(rng).unwrap() },
        1 => ElementarySpec::Inf { group: g.clone(), normal: *normals.choose(rng).unwrap() },
        2 => ElementarySpec::Iso {
            source: g.clone(),
            target: g.clone(),
            map: conjugation(g, rng.gen_range(0..g.order())),
        },
        _ => ElementarySpec::Indinf { group: g.clone(), section: random_section(g, &l, rng) },
    };
    spec.build().expect("valid elementary biset")
}

/// A composable pair `(V, U)` of random elementary bisets, with `V` a
/// `(K, H)`-biset and `U` an `(H, G)`-biset.
pub fn random_pair(pool: &[Arc<Group>], rng: &mut impl Rng) -> (Biset, Biset) {
    let base = pool.choose(rng).unwrap();
    if rng.gen_bool(0.5) {
        let u = elementary_from_right(base, rng);
        let v = elementary_from_right(u.left_group(), rng);
        (v, u)
    } else {
        let v = elementary_from_left(base, rng);
        let u = elementary_from_left(v.right_group(), rng);
        (v, u)
    }
}

/// Sign vector of the transport of `a` along `u`, from a breadth-first
/// orbit search of `T × G` on the points of `u`.
pub fn naive_transport_signs(u: &Biset, a: &UnitElement, src: &BurnsideRing, dst: &BurnsideRing) -> F2Vector {
    let g = u.right_group();
    let mut signs = F2Vector::zeros(dst.rank());
    for c in 0..dst.rank() {
        let t = dst.lattice().class_rep(c);
        let t_elems: Vec<usize> = t.elements().collect();
        let mut seen = vec![false; u.point_count()];
        let mut bit = false;
        for start in 0..u.point_count() {
            if seen[start] {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(p) = queue.pop_front() {
                let next =
                    t_elems.iter().map(|&x| u.act_left(x, p)).chain(g.elements().map(|y| u.act_right(p, y)));
                for q in next.collect::<Vec<_>>() {
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
            let t_orbit: Vec<usize> = t_elems.iter().map(|&x| u.act_left(x, start)).collect();
            let stab = g
                .elements()
                .filter(|&y| t_orbit.contains(&u.act_right(start, y)))
                .fold(0u128, |m, y| m | 1 << y);
            let class = src
                .lattice()
                .class_of(&Subgroup::from_mask_unchecked(stab))
                .expect("stabilizer is a subgroup");
            bit ^= a.signs.get(class);
        }
        signs.set(c, bit);
    }
    signs
}

/// `G/H × G/K` decomposed into transitive `G`-sets by direct orbit
/// enumeration.
pub fn product_by_orbits(ring: &BurnsideRing, h: usize, k: usize) -> BurnsideElement {
    let g = ring.group();
    let l = ring.lattice();
    let cosets = |s: Subgroup| -> (Vec<usize>, Vec<usize>) {
        let mut of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if of[x] == usize::MAX {
                for y in s.elements() {
                    of[g.mul(x, y)] = reps.len();
                }
                reps.push(x);
            }
        }
        (of, reps)
    };
    let (hs, ks) = (l.class_rep(h), l.class_rep(k));
    let (h_of, h_reps) = cosets(hs);
    let (k_of, k_reps) = cosets(ks);
    let (nh, nk) = (h_reps.len(), k_reps.len());
    let mut seen = vec![false; nh * nk];
    let mut coeffs = vec![0i64; ring.rank()];
    for start in 0..nh * nk {
        if seen[start] {
            continue;
        }
        let (i, j) = (start / nk, start % nk);
        for x in g.elements() {
            let p = h_of[g.mul(x, h_reps[i])] * nk + k_of[g.mul(x, k_reps[j])];
            seen[p] = true;
        }
        let (x, y) = (h_reps[i], k_reps[j]);
        let stab = g.conjugate_subgroup(&hs, g.inv(x)).intersect(&g.conjugate_subgroup(&ks, g.inv(y)));
        coeffs[l.class_of(&stab).expect("stabilizer is a subgroup")] += 1;
    }
    BurnsideElement { coeffs }
}

pub fn ring_of(cache: &RingCache, g: &Arc<Group>) -> Arc<BurnsideRing> {
    cache.ring(g).expect("ring")
}

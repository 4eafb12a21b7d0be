//! Burnside ring arithmetic through the table of marks.
//!
//! Coordinates are indexed by conjugacy classes of subgroups in lattice
//! order. Because classes are sorted by order, the table of marks is upper
//! triangular and the mark map can be inverted by back substitution.

use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::SubgroupLattice;

/// `M[H][K] = |(G/K)^H|` over class representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableOfMarks {
    size: usize,
    entries: Vec<i64>,
}

impl TableOfMarks {
    pub fn compute(lattice: &SubgroupLattice) -> TableOfMarks {
        let g = lattice.group();
        let size = lattice.class_count();
        let mut entries = vec![0i64; size * size];
        for h in 0..size {
            let hs = lattice.class_rep(h);
            for k in 0..size {
                let ks = lattice.class_rep(k);
                if hs.order() > ks.order() || !ks.order().is_multiple_of(hs.order()) {
                    continue;
                }
                let fixing = g.elements().filter(|&x| g.conjugate_subgroup(&hs, x).is_subset(&ks)).count();
                entries[h * size + k] = (fixing / ks.order()) as i64;
            }
        }
        TableOfMarks { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Mark of `G/K` at `H`.
    #[inline]
    pub fn get(&self, h: usize, k: usize) -> i64 {
        self.entries[h * self.size + k]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size).map(<[i64]>::to_vec).collect()
    }
}

/// Integer combination of the transitive `G`-sets `G/H`, one coordinate per
/// subgroup class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BurnsideElement {
    pub coeffs: Vec<i64>,
}

/// Values `|a^H|` of the mark homomorphism, one per subgroup class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkVector {
    pub marks: Vec<i64>,
}

/// Primitive idempotent of the rational Burnside ring, in canonical-basis
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalIdempotent {
    pub class: usize,
    pub coeffs: Vec<Rational64>,
}

/// The Burnside ring of a group, with its lattice and table of marks.
pub struct BurnsideRing {
    lattice: Arc<SubgroupLattice>,
    table: TableOfMarks,
}

impl std::fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BurnsideRing").field("group", self.group()).field("classes", &self.rank()).finish()
    }
}

impl BurnsideRing {
    pub fn new(lattice: Arc<SubgroupLattice>) -> BurnsideRing {
        let table = TableOfMarks::compute(&lattice);
        BurnsideRing { lattice, table }
    }

    pub fn for_group(group: Arc<Group>) -> Result<BurnsideRing> {
        Ok(Self::new(Arc::new(SubgroupLattice::new(group)?)))
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &Group {
        self.lattice.group()
    }

    pub fn table(&self) -> &TableOfMarks {
        &self.table
    }

    /// Number of subgroup classes, the rank of `B(G)` as a free abelian group.
    pub fn rank(&self) -> usize {
        self.table.size
    }

    pub fn zero(&self) -> BurnsideElement {
        BurnsideElement { coeffs: vec![0; self.rank()] }
    }

    /// `G/H` for the representative `H` of class `c`.
    pub fn basis(&self, c: usize) -> BurnsideElement {
        let mut a = self.zero();
        a.coeffs[c] = 1;
        a
    }

    /// The identity element `G/G`.
    pub fn one(&self) -> BurnsideElement {
        self.basis(self.rank() - 1)
    }

    pub fn element(&self, coeffs: Vec<i64>) -> Result<BurnsideElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::GroupMismatch(format!(
                "{} coordinates for a ring of rank {}",
                coeffs.len(),
                self.rank()
            )));
        }
        Ok(BurnsideElement { coeffs })
    }

    pub fn marks(&self, a: &BurnsideElement) -> MarkVector {
        let n = self.rank();
        let marks = (0..n).map(|h| (h..n).map(|k| self.table.get(h, k) * a.coeffs[k]).sum()).collect();
        MarkVector { marks }
    }

    /// Inverts the mark map over the integers. Fails with
    /// [`Error::NotIntegral`] when the marks are not those of an element of
    /// `B(G)`.
    pub fn from_marks(&self, m: &MarkVector) -> Result<BurnsideElement> {
        let n = self.rank();
        if m.marks.len() != n {
            return Err(Error::GroupMismatch(format!("{} marks for a ring of rank {n}", m.marks.len())));
        }
        let mut coeffs = vec![0i64; n];
        for h in (0..n).rev() {
            let rest: i64 = (h + 1..n).map(|k| self.table.get(h, k) * coeffs[k]).sum();
            let num = m.marks[h] - rest;
            let d = self.table.get(h, h);
            if num % d != 0 {
                return Err(Error::NotIntegral);
            }
            coeffs[h] = num / d;
        }
        Ok(BurnsideElement { coeffs })
    }

    pub fn marks_rational(&self, coeffs: &[Rational64]) -> Vec<Rational64> {
        let n = self.rank();
        (0..n)
            .map(|h| (h..n).map(|k| Rational64::from_integer(self.table.get(h, k)) * coeffs[k]).sum())
            .collect()
    }

    pub fn from_marks_rational(&self, marks: &[Rational64]) -> Vec<Rational64> {
        let n = self.rank();
        let mut coeffs = vec![Rational64::zero(); n];
        for h in (0..n).rev() {
            let rest: Rational64 =
                (h + 1..n).map(|k| Rational64::from_integer(self.table.get(h, k)) * coeffs[k]).sum();
            coeffs[h] = (marks[h] - rest) / Rational64::from_integer(self.table.get(h, h));
        }
        coeffs
    }

    pub fn add(&self, a: &BurnsideElement, b: &BurnsideElement) -> BurnsideElement {
        BurnsideElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn scale(&self, a: &BurnsideElement, k: i64) -> BurnsideElement {
        BurnsideElement { coeffs: a.coeffs.iter().map(|x| x * k).collect() }
    }

    /// Product through the ghost ring.
    pub fn mul(&self, a: &BurnsideElement, b: &BurnsideElement) -> BurnsideElement {
        let ma = self.marks(a);
        let mb = self.marks(b);
        let marks = ma.marks.iter().zip(&mb.marks).map(|(x, y)| x * y).collect();
        self.from_marks(&MarkVector { marks }).expect("ghost-ring product of integral elements is integral")
    }

    pub fn mul_rational(&self, a: &[Rational64], b: &[Rational64]) -> Vec<Rational64> {
        let ma = self.marks_rational(a);
        let mb = self.marks_rational(b);
        let prod: Vec<Rational64> = ma.iter().zip(&mb).map(|(x, y)| x * y).collect();
        self.from_marks_rational(&prod)
    }

    /// `e_H = (1/|N_G(H)|) Σ_{K ⊆ H} |K| μ(K, H) G/K` for the representative
    /// `H` of class `c`.
    pub fn primitive_idempotent(&self, c: usize) -> RationalIdempotent {
        let l = &*self.lattice;
        let h = l.class_rep(c);
        let mut coeffs = vec![Rational64::zero(); self.rank()];
        for k in l.subgroups().iter().filter(|k| k.is_subset(&h)) {
            let mu = l.mobius(k, &h).expect("k is a subgroup of h");
            if mu != 0 {
                let class = l.class_of(k).expect("lattice subgroup");
                coeffs[class] += Rational64::from_integer(k.order() as i64 * mu);
            }
        }
        let norm = Rational64::new(1, l.normalizer_order(c) as i64);
        for x in &mut coeffs {
            *x *= norm;
        }
        RationalIdempotent { class: c, coeffs }
    }

    /// True iff every mark is `+1` or `-1`.
    pub fn is_unit(&self, a: &BurnsideElement) -> bool {
        self.marks(a).marks.iter().all(|m| m.abs() == 1)
    }
}

/// Converts integer coordinates to rationals.
pub fn to_rational(a: &BurnsideElement) -> Vec<Rational64> {
    a.coeffs.iter().map(|&x| Rational64::from_integer(x)).collect()
}

/// Renders a rational as `p/q`, or `p` for integers.
pub fn fraction_string(x: &Rational64) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

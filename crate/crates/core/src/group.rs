//! Finite groups stored as closed multiplication tables.
//!
//! Elements of a group of order `n` are the integers `0..n`, with `0` the
//! identity. Subgroups are bitmasks over the element set, which caps the
//! supported order at 128.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of a [`Group`], an index into its multiplication table.
pub type Element = usize;

/// Largest order a subgroup bitmask can represent.
pub const MAX_ORDER: usize = 128;

/// Default cap on constructed group orders.
pub const DEFAULT_ORDER_CAP: usize = 128;

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
}

impl PartialEq for Group {
    /// Structural equality: same order and same table. Names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("name", &self.name).field("order", &self.order).finish()
    }
}

/// A subgroup of some group, stored as the bitmask of its elements.
///
/// Subgroups do not carry their parent; every operation that needs the
/// multiplication takes the parent [`Group`] explicitly. Ordering is by
/// order first, then by bitmask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup(u128);

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup(1)
    }

    pub fn whole(order: usize) -> Self {
        if order == MAX_ORDER {
            Subgroup(u128::MAX)
        } else {
            Subgroup((1u128 << order) - 1)
        }
    }

    /// Wraps a bitmask without checking closure. Use
    /// [`Group::subgroup_from_mask`] for validated construction.
    pub fn from_mask_unchecked(mask: u128) -> Self {
        Subgroup(mask)
    }

    pub fn mask(&self) -> u128 {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, x: Element) -> bool {
        x < MAX_ORDER && self.0 >> x & 1 == 1
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == 1
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0 & other.0)
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = Element> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(x)
            }
        })
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), self.0).cmp(&(other.order(), other.0))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {:#x})", self.order(), self.0)
    }
}

/// A section `T/S` of a group: `S` normal in `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Section {
    pub top: Subgroup,
    pub bottom: Subgroup,
}

/// A group together with the inclusion of its elements into a parent group.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub group: Group,
    /// `embedding[x]` is the parent element corresponding to `x`.
    pub embedding: Vec<Element>,
}

/// A quotient group together with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// `projection[g]` is the coset containing parent element `g`.
    pub projection: Vec<Element>,
}

/// Named group families realized by [`Group::family`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Trivial,
    Cyclic,
    Klein,
    ElementaryAbelian,
    Dihedral,
    Quaternion,
    Semidihedral,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "trivial" => Family::Trivial,
            "cyclic" => Family::Cyclic,
            "klein" => Family::Klein,
            "elementary-abelian" | "elementary" => Family::ElementaryAbelian,
            "dihedral" => Family::Dihedral,
            "quaternion" | "generalized-quaternion" => Family::Quaternion,
            "semidihedral" | "semi-dihedral" => Family::Semidihedral,
            _ => return Err(Error::Descriptor(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Trivial => "trivial",
            Family::Cyclic => "cyclic",
            Family::Klein => "klein",
            Family::ElementaryAbelian => "elementary-abelian",
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
            Family::Semidihedral => "semidihedral",
        })
    }
}

/// Isomorphism type as recognized by [`Group::classify_type`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeKind {
    Trivial,
    Cyclic,
    Klein,
    ElementaryAbelian { rank: u32 },
    Dihedral,
    Quaternion,
    Semidihedral,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeTag {
    pub kind: TypeKind,
    pub order: usize,
}

impl TypeTag {
    pub fn is_trivial(&self) -> bool {
        self.kind == TypeKind::Trivial
    }

    pub fn is_cyclic_of_order(&self, n: usize) -> bool {
        self.kind == TypeKind::Cyclic && self.order == n
    }

    pub fn is_dihedral(&self) -> bool {
        self.kind == TypeKind::Dihedral
    }

    /// Short conventional name: `1`, `C4`, `V4`, `D16`, `Q8`, `SD16`, `E27`.
    pub fn short_name(&self) -> String {
        match self.kind {
            TypeKind::Trivial => "1".into(),
            TypeKind::Cyclic => format!("C{}", self.order),
            TypeKind::Klein => "V4".into(),
            TypeKind::ElementaryAbelian { .. } => format!("E{}", self.order),
            TypeKind::Dihedral => format!("D{}", self.order),
            TypeKind::Quaternion => format!("Q{}", self.order),
            TypeKind::Semidihedral => format!("SD{}", self.order),
            TypeKind::Other => format!("?{}", self.order),
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TypeKind::Trivial => write!(f, "trivial"),
            TypeKind::Cyclic => write!(f, "cyclic({})", self.order),
            TypeKind::Klein => write!(f, "klein"),
            TypeKind::ElementaryAbelian { rank } => write!(f, "elementary-abelian({rank})"),
            TypeKind::Dihedral => write!(f, "dihedral({})", self.order),
            TypeKind::Quaternion => write!(f, "quaternion({})", self.order),
            TypeKind::Semidihedral => write!(f, "semidihedral({})", self.order),
            TypeKind::Other => write!(f, "other({})", self.order),
        }
    }
}

impl Serialize for TypeTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Returns `(p, k)` with `n = p^k`, or `None` if `n` is not a prime power.
/// The trivial order 1 is reported as `None`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn is_power_of_two(n: usize) -> bool {
    n >= 1 && n & (n - 1) == 0
}

impl Group {
    /// Builds a group from a Cayley table, validating closure, identity at
    /// index 0, inverses and associativity.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderCapExceeded { order: n, cap: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range in row {i}")));
                }
                table.push(x as u8);
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    fn from_flat(name: String, n: usize, table: Vec<u8>) -> Result<Group> {
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == 0)
                .ok_or_else(|| Error::InvalidTable(format!("element {x} has no inverse")))?;
            if at(y, x) != 0 {
                return Err(Error::InvalidTable(format!("element {x} has no two-sided inverse")));
            }
            inv.push(y as u8);
        }
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::InvalidTable(format!("associativity fails on ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(Group { name, order: n, table, inv })
    }

    /// Closes a set of permutations of `0..degree` into a group. The product
    /// `p * q` applies `p` first.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<Group> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator has length {}, expected {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPermutation(format!("{g:?} is not a permutation")));
                }
            }
        }
        let compose = |p: &[usize], q: &[usize]| p.iter().map(|&x| q[x]).collect::<Vec<_>>();
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let y = compose(&elements[next], g);
                if !index.contains_key(&y) {
                    if elements.len() == MAX_ORDER {
                        return Err(Error::OrderCapExceeded { order: elements.len() + 1, cap: MAX_ORDER });
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)] as u8);
            }
        }
        Self::from_flat(name.into(), n, table)
    }

    /// Builds a standard group of the given family and order.
    pub fn family(kind: Family, order: usize) -> Result<Group> {
        let unsupported = || Error::UnsupportedFamily { kind: kind.to_string(), order };
        if order > MAX_ORDER {
            return Err(Error::OrderCapExceeded { order, cap: MAX_ORDER });
        }
        match kind {
            Family::Trivial if order == 1 => Ok(Self::cyclic(1)),
            Family::Cyclic if order >= 1 => Ok(Self::cyclic(order)),
            Family::Klein if order == 4 => Ok(Self::elementary_abelian(2, 2).with_name("klein:4")),
            Family::ElementaryAbelian => match prime_power(order) {
                Some((p, k)) => Ok(Self::elementary_abelian(p, k)),
                None => Err(unsupported()),
            },
            Family::Dihedral if order >= 8 && is_power_of_two(order) => {
                Ok(Self::metacyclic(order / 2, order / 2 - 1, 0, format!("dihedral:{order}")))
            }
            Family::Quaternion if order >= 8 && is_power_of_two(order) => {
                Ok(Self::metacyclic(order / 2, order / 2 - 1, order / 4, format!("quaternion:{order}")))
            }
            Family::Semidihedral if order >= 16 && is_power_of_two(order) => {
                Ok(Self::metacyclic(order / 2, order / 4 - 1, 0, format!("semidihedral:{order}")))
            }
            _ => Err(unsupported()),
        }
    }

    fn cyclic(n: usize) -> Group {
        let table = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u8)).collect();
        let inv = (0..n).map(|a| ((n - a) % n) as u8).collect();
        Group { name: format!("cyclic:{n}"), order: n, table, inv }
    }

    fn elementary_abelian(p: usize, k: u32) -> Group {
        let n = p.pow(k);
        let add = |mut a: usize, mut b: usize| {
            let (mut out, mut place) = (0, 1);
            for _ in 0..k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let table: Vec<u8> = (0..n).flat_map(|a| (0..n).map(move |b| add(a, b) as u8)).collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u8).collect();
        Group { name: format!("elementary-abelian:{n}"), order: n, table, inv }
    }

    /// `<r, s | r^m, s^2 = r^t, s r s^-1 = r^k>` with elements `r^a s^b`
    /// encoded as `a + m b`.
    fn metacyclic(m: usize, k: usize, t: usize, name: String) -> Group {
        let n = 2 * m;
        let mul = |x: usize, y: usize| {
            let (a, b) = (x % m, x / m);
            let (c, d) = (y % m, y / m);
            let twisted = if b == 1 { c * k } else { c };
            let extra = if b == 1 && d == 1 { t } else { 0 };
            (a + twisted + extra) % m + m * ((b + d) % 2)
        };
        let table: Vec<u8> = (0..n).flat_map(|x| (0..n).map(move |y| mul(x, y) as u8)).collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u8).collect();
        Group { name, order: n, table, inv }
    }

    /// Direct product with the default order cap.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
        Self::direct_product_capped(a, b, DEFAULT_ORDER_CAP)
    }

    /// Direct product; element `(x, y)` is encoded as `x * |b| + y`.
    pub fn direct_product_capped(a: &Group, b: &Group, cap: usize) -> Result<Group> {
        let n = a.order * b.order;
        let cap = cap.min(MAX_ORDER);
        if n > cap {
            return Err(Error::OrderCapExceeded { order: n, cap });
        }
        let m = b.order;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push((a.mul(x / m, y / m) * m + b.mul(x % m, y % m)) as u8);
            }
        }
        let inv = (0..n).map(|x| (a.inv(x / m) * m + b.inv(x % m)) as u8).collect();
        Ok(Group { name: format!("{}*{}", a.name, b.name), order: n, table, inv })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inv[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Flat multiplication table; identifies the group structurally.
    pub fn table_bytes(&self) -> &[u8] {
        &self.table
    }

    /// Whether `map` is an isomorphism from this group onto `target`.
    pub fn is_isomorphism(&self, target: &Group, map: &[Element]) -> bool {
        if map.len() != self.order || target.order != self.order {
            return false;
        }
        let mut hit = vec![false; self.order];
        for &y in map {
            if y >= self.order || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// The table as rows, for serialization.
    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn element_order(&self, x: Element) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|x| self.element_order(x) == self.order)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(self.order)
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: impl IntoIterator<Item = Element>) -> Subgroup {
        let gens: Vec<Element> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut mask = 1u128;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if mask >> y & 1 == 0 {
                    mask |= 1 << y;
                    queue.push(y);
                }
            }
        }
        Subgroup(mask)
    }

    /// Validates that `mask` is a subgroup of this group.
    pub fn subgroup_from_mask(&self, mask: u128) -> Result<Subgroup> {
        let s = Subgroup(mask);
        if mask & 1 == 0 || (self.order < MAX_ORDER && mask >> self.order != 0) {
            return Err(Error::NotSubgroup);
        }
        for a in s.elements() {
            for b in s.elements() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        Ok(s)
    }

    /// `H^g = g^-1 H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Element) -> Subgroup {
        Subgroup(h.elements().fold(0u128, |m, x| m | 1 << self.conj(x, g)))
    }

    pub fn center(&self) -> Subgroup {
        let mask = self
            .elements()
            .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
            .fold(0u128, |m, z| m | 1 << z);
        Subgroup(mask)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mask =
            self.elements().filter(|&g| self.conjugate_subgroup(h, g) == *h).fold(0u128, |m, g| m | 1 << g);
        Subgroup(mask)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| self.conjugate_subgroup(h, g) == *h)
    }

    /// Is `h` contained in some conjugate of `k`?
    pub fn is_subconjugate(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.order() <= k.order()
            && k.order().is_multiple_of(h.order())
            && self.elements().any(|g| self.conjugate_subgroup(h, g).is_subset(k))
    }

    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if projection[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for x in n.elements() {
                    projection[self.mul(g, x)] = id;
                }
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b)] as u8);
            }
        }
        let inv = reps.iter().map(|&a| projection[self.inv(a)] as u8).collect();
        let group = Group { name: format!("{}/{}", self.name, n.order()), order: q, table, inv };
        Ok(Quotient { group, projection })
    }

    /// The subgroup `h` as a group in its own right, elements relabeled in
    /// increasing order of their parent index.
    pub fn subgroup_group(&self, h: &Subgroup) -> Embedded {
        let embedding: Vec<Element> = h.elements().collect();
        let n = embedding.len();
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in embedding.iter().enumerate() {
            local[x] = i;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in &embedding {
            for &b in &embedding {
                table.push(local[self.mul(a, b)] as u8);
            }
        }
        let inv = embedding.iter().map(|&a| local[self.inv(a)] as u8).collect();
        let group = Group { name: format!("{}<{}>", self.name, n), order: n, table, inv };
        Embedded { group, embedding }
    }

    /// Image in a subgroup's own labeling of a parent subgroup contained in it.
    pub fn restrict_subgroup(&self, embedded: &Embedded, s: &Subgroup) -> Subgroup {
        let mask = embedded
            .embedding
            .iter()
            .enumerate()
            .filter(|(_, &x)| s.contains(x))
            .fold(0u128, |m, (i, _)| m | 1 << i);
        Subgroup(mask)
    }

    /// `T/S` as a standalone group.
    pub fn section_group(&self, section: &Section) -> Result<Group> {
        if !section.bottom.is_subset(&section.top) {
            return Err(Error::NotContained { inner: section.bottom.mask(), outer: section.top.mask() });
        }
        let top = self.subgroup_group(&section.top);
        let bottom = self.restrict_subgroup(&top, &section.bottom);
        Ok(top.group.quotient(&bottom)?.group)
    }

    pub fn involution_count(&self) -> usize {
        self.elements().filter(|&x| x != 0 && self.mul(x, x) == 0).count()
    }

    /// Invariant-based recognition of the small families used throughout.
    pub fn classify_type(&self) -> TypeTag {
        let order = self.order;
        let tag = |kind| TypeTag { kind, order };
        if order == 1 {
            return tag(TypeKind::Trivial);
        }
        if self.is_cyclic() {
            return tag(TypeKind::Cyclic);
        }
        let pp = prime_power(order);
        if self.is_abelian() {
            if let Some((p, k)) = pp {
                if self.elements().all(|x| x == 0 || self.element_order(x) == p) {
                    return if order == 4 {
                        tag(TypeKind::Klein)
                    } else {
                        tag(TypeKind::ElementaryAbelian { rank: k })
                    };
                }
            }
            return tag(TypeKind::Other);
        }
        // Non-abelian 2-groups with a cyclic subgroup of index 2.
        if let Some((2, k)) = pp {
            if k >= 3 && self.elements().any(|x| self.element_order(x) == order / 2) {
                let involutions = self.involution_count();
                if involutions == order / 2 + 1 {
                    return tag(TypeKind::Dihedral);
                }
                if involutions == 1 {
                    return tag(TypeKind::Quaternion);
                }
                if k >= 4 && involutions == order / 4 + 1 {
                    return tag(TypeKind::Semidihedral);
                }
            }
        }
        tag(TypeKind::Other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(kind: Family, n: usize) -> Group {
        Group::family(kind, n).unwrap()
    }

    fn brute_center_order(g: &Group) -> usize {
        g.elements().filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z))).count()
    }

    #[test]
    fn trivial_cyclic() {
        let g = fam(Family::Cyclic, 1);
        assert_eq!(g.order(), 1);
        assert_eq!(g.classify_type().kind, TypeKind::Trivial);
    }

    #[test]
    fn involution_counts() {
        assert_eq!(fam(Family::Dihedral, 16).involution_count(), 9);
        assert_eq!(fam(Family::Quaternion, 8).involution_count(), 1);
        assert_eq!(fam(Family::Semidihedral, 16).involution_count(), 5);
    }

    #[test]
    fn products() {
        let c2 = fam(Family::Cyclic, 2);
        let v = Group::direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.involution_count(), 3);
        assert_eq!(v.classify_type().kind, TypeKind::Klein);

        let t = fam(Family::Cyclic, 1);
        let d8 = fam(Family::Dihedral, 8);
        assert_eq!(Group::direct_product(&t, &d8).unwrap(), d8);

        let p = Group::direct_product(&c2, &d8).unwrap();
        assert_eq!(p.order(), 16);
        assert_eq!(p.center().order(), 4);
        assert_eq!(brute_center_order(&p), 4);
    }

    #[test]
    fn product_cap() {
        let big = fam(Family::Cyclic, 64);
        let c4 = fam(Family::Cyclic, 4);
        assert!(matches!(Group::direct_product(&big, &c4), Err(Error::OrderCapExceeded { order: 256, .. })));
        assert!(Group::direct_product_capped(&c4, &c4, 8).is_err());
    }

    #[test]
    fn unsupported_families() {
        assert!(Group::family(Family::Dihedral, 6).is_err());
        assert!(Group::family(Family::Dihedral, 4).is_err());
        assert!(Group::family(Family::Quaternion, 12).is_err());
        assert!(Group::family(Family::Semidihedral, 8).is_err());
        assert!(Group::family(Family::ElementaryAbelian, 12).is_err());
        assert!(Group::family(Family::Cyclic, 0).is_err());
        assert!(Group::family(Family::Cyclic, 129).is_err());
    }

    #[test]
    fn center_and_normalizer() {
        let c6 = fam(Family::Cyclic, 6);
        assert_eq!(c6.center(), c6.whole());
        let d8 = fam(Family::Dihedral, 8);
        assert_eq!(d8.center().order(), 2);

        let d16 = fam(Family::Dihedral, 16);
        let z = d16.center();
        let s = d16.elements().find(|&x| x != 0 && d16.mul(x, x) == 0 && !z.contains(x)).unwrap();
        let i = d16.generate([s]);
        let n = d16.normalizer(&i);
        assert_eq!(n.order(), 4);
        assert_eq!(n, d16.generate(i.elements().chain(z.elements())));
    }

    #[test]
    fn quotients() {
        let d16 = fam(Family::Dihedral, 16);
        let q = d16.quotient(&d16.center()).unwrap();
        assert_eq!(q.group.classify_type(), TypeTag { kind: TypeKind::Dihedral, order: 8 });

        let q8 = fam(Family::Quaternion, 8);
        let k = q8.quotient(&q8.center()).unwrap();
        assert_eq!(k.group.classify_type().kind, TypeKind::Klein);

        let same = d16.quotient(&Subgroup::trivial()).unwrap();
        assert_eq!(same.group, d16);

        let s = d16.generate([8]);
        assert!(!d16.is_normal(&s));
        assert_eq!(d16.quotient(&s).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn classify_families() {
        let cases = [
            (Family::Cyclic, 8, TypeKind::Cyclic),
            (Family::Klein, 4, TypeKind::Klein),
            (Family::ElementaryAbelian, 8, TypeKind::ElementaryAbelian { rank: 3 }),
            (Family::ElementaryAbelian, 9, TypeKind::ElementaryAbelian { rank: 2 }),
            (Family::Dihedral, 8, TypeKind::Dihedral),
            (Family::Dihedral, 32, TypeKind::Dihedral),
            (Family::Quaternion, 16, TypeKind::Quaternion),
            (Family::Semidihedral, 16, TypeKind::Semidihedral),
            (Family::Semidihedral, 32, TypeKind::Semidihedral),
        ];
        for (fam_kind, n, kind) in cases {
            assert_eq!(fam(fam_kind, n).classify_type(), TypeTag { kind, order: n });
        }
        let c2 = fam(Family::Cyclic, 2);
        let c4 = fam(Family::Cyclic, 4);
        assert_eq!(Group::direct_product(&c2, &c4).unwrap().classify_type().kind, TypeKind::Other);
    }

    #[test]
    fn cayley_validation() {
        let bad_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(Group::from_table("x", &bad_identity).is_err());
        // Latin square with identity 0 that is not associative.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::from_table("x", &rows), Err(Error::InvalidTable(_))));
        let d8 = fam(Family::Dihedral, 8);
        assert_eq!(Group::from_table("d8", &d8.cayley_rows()).unwrap(), d8);
    }

    #[test]
    fn permutations() {
        // S3 on three points.
        let s3 = Group::from_permutations("s3", 3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.involution_count(), 3);
        // Symmetries of a square give D8.
        let d8 = Group::from_permutations("sq", 4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        assert_eq!(d8.classify_type(), TypeTag { kind: TypeKind::Dihedral, order: 8 });
        assert!(Group::from_permutations("x", 3, &[vec![0, 0, 1]]).is_err());
    }

    #[test]
    fn sections() {
        let d16 = fam(Family::Dihedral, 16);
        let z = d16.center();
        let i = d16.generate([8]);
        let top = d16.normalizer(&i);
        let sec = d16.section_group(&Section { top, bottom: i }).unwrap();
        assert_eq!(sec.classify_type(), TypeTag { kind: TypeKind::Cyclic, order: 2 });
        let whole = d16.section_group(&Section { top: d16.whole(), bottom: z }).unwrap();
        assert_eq!(whole.order(), 8);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }
}

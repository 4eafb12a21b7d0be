//! Dense vectors over F2 and subspaces in reduced echelon form.

use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// The low `len` bits of `x`, bit `i` at position `i`.
    pub fn from_u64(len: usize, x: u64) -> Self {
        assert!(len <= 64);
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = if len == 64 { x } else { x & ((1u64 << len) - 1) };
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        let mask = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &F2Vector) -> F2Vector {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        F2Vector::from_bits((0..self.len).map(|i| self.get(i)).chain((0..other.len).map(|i| other.get(i))))
    }

    /// Bits `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> F2Vector {
        F2Vector::from_bits((start..end).map(|i| self.get(i)))
    }
}

impl fmt::Display for F2Vector {
    /// Bit `i` is the `i`-th character.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[{self}]")
    }
}

impl Serialize for F2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A subspace of `F2^len` kept in fully reduced row echelon form. Each row
/// has a distinct pivot (its lowest set bit) and no other row has that bit
/// set, so two spans are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Basis {
    len: usize,
    rows: Vec<F2Vector>,
}

impl F2Basis {
    pub fn new(len: usize) -> Self {
        F2Basis { len, rows: Vec::new() }
    }

    pub fn spanned_by<'a>(len: usize, vectors: impl IntoIterator<Item = &'a F2Vector>) -> Self {
        let mut b = Self::new(len);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows sorted by pivot.
    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut r = v.clone();
        for row in &self.rows {
            let pivot = row.first_one().expect("nonzero row");
            if r.get(pivot) {
                r.xor_assign(row);
            }
        }
        r
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let r = self.reduce(v);
        let Some(pivot) = r.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(pivot) {
                row.xor_assign(&r);
            }
        }
        let at = self.rows.partition_point(|row| row.first_one().unwrap() < pivot);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &F2Basis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// Kernel of the linear map sending `sources[i]` to `images[i]`, returned
/// as combinations of the sources.
pub fn kernel_of_map(source_len: usize, sources: &[F2Vector], images: &[F2Vector]) -> F2Basis {
    assert_eq!(sources.len(), images.len());
    let image_len = images.first().map_or(0, F2Vector::len);
    // Rows are (image | source); echelon on the image part first.
    let mut pivots: Vec<(usize, F2Vector)> = Vec::new();
    let mut kernel = F2Basis::new(source_len);
    for (s, w) in sources.iter().zip(images) {
        let mut row = w.concat(s);
        for (p, prow) in &pivots {
            if row.get(*p) {
                row.xor_assign(prow);
            }
        }
        match (0..image_len).find(|&i| row.get(i)) {
            Some(p) => pivots.push((p, row)),
            None => {
                kernel.insert(&row.slice(image_len, image_len + source_len));
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_span(len: usize, vs: &[F2Vector]) -> std::collections::BTreeSet<F2Vector> {
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << vs.len()) {
            let mut acc = F2Vector::zeros(len);
            for (i, v) in vs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(v);
                }
            }
            out.insert(acc);
        }
        out
    }

    proptest! {
        #[test]
        fn span_matches_enumeration(raw in proptest::collection::vec(0u64..(1 << 10), 0..7)) {
            let vs: Vec<F2Vector> = raw.iter().map(|&x| F2Vector::from_u64(10, x)).collect();
            let basis = F2Basis::spanned_by(10, &vs);
            let span = brute_span(10, &vs);
            prop_assert_eq!(span.len(), 1usize << basis.rank());
            for x in 0u64..(1 << 10) {
                let v = F2Vector::from_u64(10, x);
                prop_assert_eq!(basis.contains(&v), span.contains(&v));
            }
            // Canonical form does not depend on insertion order.
            let mut rev = vs.clone();
            rev.reverse();
            prop_assert_eq!(F2Basis::spanned_by(10, &rev), basis);
        }

        #[test]
        fn kernel_is_exact(raw in proptest::collection::vec(0u64..(1 << 6), 1..6)) {
            let n = raw.len();
            let sources: Vec<F2Vector> = (0..n).map(|i| F2Vector::from_u64(n, 1 << i)).collect();
            let images: Vec<F2Vector> = raw.iter().map(|&x| F2Vector::from_u64(6, x)).collect();
            let kernel = kernel_of_map(n, &sources, &images);
            let image_rank = F2Basis::spanned_by(6, &images).rank();
            prop_assert_eq!(kernel.rank() + image_rank, n);
            for k in kernel.rows() {
                let mut acc = F2Vector::zeros(6);
                for i in k.ones_iter() {
                    acc.xor_assign(&images[i]);
                }
                prop_assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn display_and_bits() {
        let mut v = F2Vector::zeros(70);
        v.set(0, true);
        v.set(69, true);
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(F2Vector::from_u64(3, 0b110).to_string(), "011");
        assert_eq!(F2Vector::ones(3).to_string(), "111");
    }
}

//! Unit groups of Burnside rings of small finite groups.

pub mod biset;
pub mod burnside;
pub mod error;
pub mod f2;
pub mod genetics;
pub mod group;
pub mod lattice;
pub mod report;
pub mod units;

pub use biset::{Biset, ElementarySpec, RingCache, VirtualBiset};
pub use burnside::{BurnsideElement, BurnsideRing, MarkVector, RationalIdempotent, TableOfMarks};
pub use error::{Error, Result};
pub use f2::{F2Basis, F2Vector};
pub use genetics::{GeneticBasis, GeneticEntry};
pub use group::{Element, Family, Group, Section, Subgroup, TypeKind, TypeTag};
pub use lattice::SubgroupLattice;
pub use report::{parse_descriptor, CorpusSpec, GroupSpec, Method, VerificationReport};
pub use units::{UnitElement, UnitGroup};

//! Group descriptors, corpus files and the JSON reports behind every CLI
//! subcommand.
//!
//! Reports are plain serializable structs with deterministic field and
//! element order; wall-clock timings are only attached on request so that
//! the default output is byte-identical across runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biset::{faithful_part, RingCache};
use crate::burnside::{fraction_string, BurnsideRing};
use crate::error::{Error, Result};
use crate::genetics::{
    contributes_unit, genetic_basis, rational_irrep_count_oracle, GeneticBasis, GeneticEntry,
};
use crate::group::{prime_power, Family, Group, Subgroup, TypeTag};
use crate::lattice::SubgroupLattice;
use crate::units::{
    enumerate_units_bruteforce, exp_image, rank_report, units_via_genetic_basis, upsilon, UnitGroup,
};

pub fn mask_hex(s: &Subgroup) -> String {
    format!("{:#x}", s.mask())
}

fn parse_factor(s: &str) -> Result<Group> {
    let bad = || Error::Descriptor(s.to_string());
    let lower = s.trim().to_ascii_lowercase();
    if let Some((kind, order)) = lower.split_once(':') {
        let kind: Family = kind.parse().map_err(|_| bad())?;
        let order: usize = order.trim().parse().map_err(|_| bad())?;
        return Group::family(kind, order);
    }
    let (kind, digits) = match lower.as_str() {
        "trivial" | "1" => return Group::family(Family::Trivial, 1),
        "klein" | "v4" => return Group::family(Family::Klein, 4),
        _ if lower.starts_with("sd") => (Family::Semidihedral, &lower[2..]),
        _ if lower.starts_with('c') => (Family::Cyclic, &lower[1..]),
        _ if lower.starts_with('d') => (Family::Dihedral, &lower[1..]),
        _ if lower.starts_with('q') => (Family::Quaternion, &lower[1..]),
        _ if lower.starts_with('e') => (Family::ElementaryAbelian, &lower[1..]),
        _ => return Err(bad()),
    };
    let order: usize = digits.parse().map_err(|_| bad())?;
    Group::family(kind, order)
}

/// Parses a descriptor such as `dihedral:16`, `D16`, `SD32`, `klein` or a
/// direct product `C2xC4` (also written with `×` or `*`).
pub fn parse_descriptor(s: &str) -> Result<Group> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(Error::Descriptor(s.to_string()));
    }
    let mut factors = trimmed.split(['x', 'X', '×', '*']);
    let first = parse_factor(factors.next().unwrap_or_default())?;
    let g = factors.try_fold(first, |acc, f| Group::direct_product(&acc, &parse_factor(f)?))?;
    Ok(g.with_name(trimmed))
}

#[derive(Clone, Debug, Deserialize)]
pub struct FamilySpec {
    pub kind: String,
    pub order: usize,
}

/// One group in a corpus or ingestion file.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Descriptor(String),
    Family { name: Option<String>, family: FamilySpec },
    Cayley { name: Option<String>, order: usize, cayley: Vec<Vec<usize>> },
    Permutations { name: Option<String>, degree: usize, permutation_generators: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Descriptor(d) => parse_descriptor(d),
            GroupSpec::Family { name, family } => {
                let kind: Family = family.kind.parse()?;
                let g = Group::family(kind, family.order)?;
                Ok(match name {
                    Some(n) => g.with_name(n.clone()),
                    None => g,
                })
            }
            GroupSpec::Cayley { name, order, cayley } => {
                if cayley.len() != *order {
                    return Err(Error::InvalidTable(format!(
                        "declared order {order} but {} rows",
                        cayley.len()
                    )));
                }
                Group::from_table(name.clone().unwrap_or_else(|| format!("cayley:{order}")), cayley)
            }
            GroupSpec::Permutations { name, degree, permutation_generators } => Group::from_permutations(
                name.clone().unwrap_or_else(|| format!("permutations:{degree}")),
                *degree,
                permutation_generators,
            ),
        }
    }
}

/// Reads a group from its ingestion JSON.
pub fn group_from_json(text: &str) -> Result<Group> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    spec.build()
}

/// Which cross-checks `verify` runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Checks {
    pub units: bool,
    pub genetic: bool,
    pub faithful: bool,
    pub exp: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks { units: true, genetic: true, faithful: true, exp: true }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    pub groups: Vec<GroupSpec>,
    #[serde(default)]
    pub checks: Checks,
    #[serde(default)]
    pub budget: Option<u64>,
}

pub const DEFAULT_CORPUS: &[&str] = &[
    "C2", "C4", "C8", "C16", "C2xC2", "C2xC4", "C2xC2xC2", "D8", "D16", "D32", "Q8", "Q16", "SD16", "SD32",
    "C3", "C9", "C27", "C3xC3",
];

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            groups: DEFAULT_CORPUS.iter().map(|d| GroupSpec::Descriptor(d.to_string())).collect(),
            checks: Checks::default(),
            budget: None,
        }
    }
}

impl CorpusSpec {
    pub fn from_json(text: &str) -> Result<CorpusSpec> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn resolve(&self) -> Result<Vec<Arc<Group>>> {
        self.groups.iter().map(|g| g.build().map(Arc::new)).collect()
    }
}

fn is_p_group(g: &Group) -> bool {
    g.order() == 1 || prime_power(g.order()).is_some()
}

fn is_odd_p_group(g: &Group) -> bool {
    matches!(prime_power(g.order()), Some((p, _)) if p != 2)
}

#[derive(Clone, Debug, Serialize)]
pub struct DescribeReport {
    pub name: String,
    pub order: usize,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
    pub abelian: bool,
    pub center_order: usize,
    pub center: String,
    pub classes: usize,
    pub subgroups: usize,
}

pub fn describe(lattice: &SubgroupLattice) -> DescribeReport {
    let g = lattice.group();
    let z = g.center();
    DescribeReport {
        name: g.name().to_string(),
        order: g.order(),
        type_tag: g.classify_type(),
        abelian: g.is_abelian(),
        center_order: z.order(),
        center: mask_hex(&z),
        classes: lattice.class_count(),
        subgroups: lattice.len(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRow {
    pub mask: String,
    pub order: usize,
    pub class: usize,
    pub normal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub rep: String,
    pub order: usize,
    pub size: usize,
    pub normal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusEntry {
    pub sub: usize,
    pub sup: usize,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub name: String,
    pub order: usize,
    pub subgroups: Vec<SubgroupRow>,
    pub classes: Vec<ClassRow>,
    /// Non-zero values `μ(sub, sup)`, indexed into `subgroups`.
    pub mobius: Vec<MobiusEntry>,
}

pub fn lattice_report(lattice: &SubgroupLattice) -> Result<LatticeReport> {
    let g = lattice.group();
    let subs = lattice.subgroups();
    let subgroups = subs
        .iter()
        .enumerate()
        .map(|(i, h)| SubgroupRow {
            mask: mask_hex(h),
            order: h.order(),
            class: lattice.class_of_index(i),
            normal: lattice.is_normal_index(i),
        })
        .collect();
    let classes = (0..lattice.class_count())
        .map(|c| {
            let rep = lattice.class_rep(c);
            ClassRow {
                rep: mask_hex(&rep),
                order: rep.order(),
                size: lattice.class_size(c),
                normal: lattice.class_size(c) == 1,
            }
        })
        .collect();
    let mut mobius = Vec::new();
    for (i, k) in subs.iter().enumerate() {
        for (j, h) in subs.iter().enumerate().skip(i) {
            if k.is_subset(h) {
                let value = lattice.mobius(k, h)?;
                if value != 0 {
                    mobius.push(MobiusEntry { sub: i, sup: j, value });
                }
            }
        }
    }
    Ok(LatticeReport { name: g.name().to_string(), order: g.order(), subgroups, classes, mobius })
}

#[derive(Clone, Debug, Serialize)]
pub struct MarksReport {
    pub name: String,
    pub classes: Vec<ClassRow>,
    /// `table[H][K]` is the number of fixed points of `H` on `G/K`.
    pub table: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<String>>>,
}

pub fn marks_report(ring: &BurnsideRing, idempotents: bool) -> MarksReport {
    let l = ring.lattice();
    let classes = (0..l.class_count())
        .map(|c| {
            let rep = l.class_rep(c);
            ClassRow {
                rep: mask_hex(&rep),
                order: rep.order(),
                size: l.class_size(c),
                normal: l.class_size(c) == 1,
            }
        })
        .collect();
    let idempotents = idempotents.then(|| {
        (0..ring.rank())
            .map(|c| ring.primitive_idempotent(c).coeffs.iter().map(fraction_string).collect())
            .collect()
    });
    MarksReport { name: ring.group().name().to_string(), classes, table: ring.table().rows(), idempotents }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Genetic,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "genetic" => Ok(Method::Genetic),
            "both" => Ok(Method::Both),
            _ => Err(Error::Input(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Genetic => "genetic",
            Method::Both => "both",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitRow {
    pub signs: String,
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitsReport {
    pub name: String,
    pub method: Method,
    pub rank: usize,
    pub order: u128,
    pub basis: Vec<UnitRow>,
    /// Every computed route agrees, and agrees with the type-count formula
    /// for p-groups.
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genetic_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_rank: Option<usize>,
}

fn formula_rank(g: &Group, gb: &GeneticBasis) -> usize {
    if is_odd_p_group(g) {
        1
    } else {
        gb.unit_entries().count()
    }
}

fn unit_rows(group: &UnitGroup) -> Vec<UnitRow> {
    group
        .generators()
        .iter()
        .map(|u| UnitRow { signs: u.signs.to_string(), coeffs: u.element.coeffs.clone() })
        .collect()
}

pub fn units_report(
    ring: &BurnsideRing,
    method: Method,
    budget: u64,
    cache: &RingCache,
) -> Result<UnitsReport> {
    let g = ring.group();
    let gb = if is_p_group(g) { Some(genetic_basis(ring.lattice())?) } else { None };
    if method != Method::Brute && gb.is_none() {
        return Err(Error::NotPGroup(g.order()));
    }
    let formula = gb.as_ref().map(|gb| formula_rank(g, gb));
    let brute = match method {
        Method::Genetic => None,
        _ => Some(enumerate_units_bruteforce(ring, budget)?.0),
    };
    let genetic = match &gb {
        Some(gb) if method != Method::Brute => Some(units_via_genetic_basis(ring, gb, cache)?),
        _ => None,
    };
    let (shown, agreement) = match (&brute, &genetic) {
        (Some(b), Some(gu)) => {
            let rep = rank_report(ring, b, gu, gb.as_ref().expect("p-group"));
            (b.clone(), rep.equal)
        }
        (Some(b), None) => (b.clone(), formula.is_none_or(|f| f == b.rank())),
        (None, Some(gu)) => (gu.group.clone(), gu.is_basis() && formula == Some(gu.group.rank())),
        (None, None) => unreachable!("at least one method runs"),
    };
    Ok(UnitsReport {
        name: g.name().to_string(),
        method,
        rank: shown.rank(),
        order: shown.order(),
        basis: unit_rows(&shown),
        agreement,
        brute_rank: brute.as_ref().map(UnitGroup::rank),
        genetic_rank: genetic.as_ref().map(|gu| gu.group.rank()),
        formula_rank: formula,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneticReport {
    pub name: String,
    pub count: usize,
    pub oracle_count: usize,
    pub genetic_subgroups: usize,
    pub entries: Vec<GeneticEntry>,
}

pub fn genetic_report(lattice: &SubgroupLattice) -> Result<GeneticReport> {
    let gb = genetic_basis(lattice)?;
    Ok(GeneticReport {
        name: lattice.group().name().to_string(),
        count: gb.entries.len(),
        oracle_count: rational_irrep_count_oracle(lattice),
        genetic_subgroups: gb.genetic.len(),
        entries: gb.entries,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpReport {
    pub name: String,
    pub unit_rank: usize,
    pub image_rank: usize,
    pub surjective: bool,
    pub image: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_image_rank: Option<usize>,
}

fn expected_exp_rank(g: &Group, gb: &GeneticBasis) -> usize {
    if is_odd_p_group(g) {
        1
    } else {
        gb.exp_entries().count()
    }
}

pub fn exp_report(ring: &BurnsideRing, budget: u64, cache: &RingCache) -> Result<ExpReport> {
    let g = ring.group();
    let (units, _) = enumerate_units_bruteforce(ring, budget)?;
    let image = exp_image(ring, cache)?;
    let expected =
        if is_p_group(g) { Some(expected_exp_rank(g, &genetic_basis(ring.lattice())?)) } else { None };
    Ok(ExpReport {
        name: g.name().to_string(),
        unit_rank: units.rank(),
        image_rank: image.rank(),
        surjective: image.rank() == units.rank(),
        image: image.basis().rows().iter().map(ToString::to_string).collect(),
        expected_image_rank: expected,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub subgroup: String,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupVerification {
    pub name: String,
    pub order: usize,
    #[serde(rename = "type")]
    pub type_tag: TypeTag,
    pub classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genetic_entries: Option<Vec<EntrySummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genetic_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faithful_order: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_faithful_order: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exp_image_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_exp_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surjective: Option<bool>,
    /// Outcome of each cross-check that applies to this group.
    pub checks: BTreeMap<&'static str, bool>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Default)]
struct Timer(Option<BTreeMap<&'static str, f64>>);

impl Timer {
    fn time<T>(&mut self, label: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.0 {
            t.insert(label, start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

/// Runs every enabled cross-check on one group.
pub fn verify_group(
    group: Arc<Group>,
    checks: Checks,
    budget: u64,
    cache: &RingCache,
    timings: bool,
) -> Result<GroupVerification> {
    let mut timer = Timer(timings.then(BTreeMap::new));
    let ring = timer.time("lattice", || cache.ring(&group))?;
    let g = ring.group();
    let tag = g.classify_type();
    let p_group = is_p_group(g);
    let mut out = GroupVerification {
        // The cached ring may have been built from an equal group under
        // another name.
        name: group.name().to_string(),
        order: g.order(),
        type_tag: tag,
        classes: ring.rank(),
        genetic_entries: None,
        oracle_count: None,
        brute_rank: None,
        genetic_rank: None,
        formula_rank: None,
        faithful_order: None,
        expected_faithful_order: None,
        exp_image_rank: None,
        expected_exp_rank: None,
        surjective: None,
        checks: BTreeMap::new(),
        pass: false,
        timings_ms: None,
    };

    let gb = if p_group && (checks.genetic || checks.units || checks.exp) {
        Some(timer.time("genetic", || genetic_basis(ring.lattice()))?)
    } else {
        None
    };
    if let (Some(gb), true) = (&gb, checks.genetic) {
        let oracle = rational_irrep_count_oracle(ring.lattice());
        out.genetic_entries = Some(
            gb.entries
                .iter()
                .map(|e| EntrySummary { subgroup: mask_hex(&e.subgroup), type_tag: e.type_tag })
                .collect(),
        );
        out.oracle_count = Some(oracle);
        out.checks.insert("genetic_oracle", gb.entries.len() == oracle);
        out.checks.insert(
            "genetic_types_known",
            gb.entries.iter().all(|e| e.type_tag.kind != crate::group::TypeKind::Other),
        );
    }

    let brute = if checks.units || checks.faithful || checks.exp {
        Some(timer.time("brute", || enumerate_units_bruteforce(&ring, budget))?.0)
    } else {
        None
    };
    if let (Some(brute), true) = (&brute, checks.units) {
        out.brute_rank = Some(brute.rank());
        if let Some(gb) = &gb {
            let gu = timer.time("genetic_units", || units_via_genetic_basis(&ring, gb, cache))?;
            let rep = rank_report(&ring, brute, &gu, gb);
            out.genetic_rank = Some(rep.genetic_rank);
            out.formula_rank = Some(rep.formula_rank);
            out.checks.insert(
                "rank_agreement",
                rep.brute_rank == rep.genetic_rank && rep.genetic_rank == rep.formula_rank,
            );
            out.checks.insert("generators_independent", rep.generators_independent);
            out.checks.insert("genetic_in_brute", rep.genetic_in_brute);
            out.checks.insert("brute_in_genetic", rep.brute_in_genetic);
        }
    }
    if let (Some(brute), true) = (&brute, checks.faithful) {
        let faithful = timer.time("faithful", || faithful_part(&ring, brute, cache))?;
        out.faithful_order = Some(faithful.order());
        if p_group {
            let expected = if contributes_unit(&tag) { 2 } else { 1 };
            out.expected_faithful_order = Some(expected);
            out.checks.insert("faithful_order", faithful.order() == expected);
            if let Ok(u) = upsilon(&ring) {
                out.checks.insert("upsilon_faithful", faithful.contains(&u));
            }
        }
    }
    if let (Some(brute), true) = (&brute, checks.exp) {
        let image = timer.time("exp", || exp_image(&ring, cache))?;
        let surjective = image.rank() == brute.rank();
        out.exp_image_rank = Some(image.rank());
        out.surjective = Some(surjective);
        if let Some(gb) = &gb {
            let expected = expected_exp_rank(g, gb);
            out.expected_exp_rank = Some(expected);
            out.checks.insert("exp_rank", image.rank() == expected);
            let dihedral_free = !gb.entries.iter().any(|e| e.type_tag.is_dihedral());
            out.checks.insert("exp_surjectivity", surjective == dihedral_free);
        }
    }
    out.pass = out.checks.values().all(|&ok| ok);
    out.timings_ms = timer.0;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub passed: usize,
    pub failed: usize,
    pub budget: u64,
    pub groups: Vec<GroupVerification>,
}

/// Verifies every group of a corpus, concurrently on the current rayon
/// pool. The report lists groups in corpus order. The first group whose
/// computation fails outright aborts the run with its name attached.
pub fn verify_corpus(
    groups: &[Arc<Group>],
    checks: Checks,
    budget: u64,
    timings: bool,
) -> Result<VerificationReport> {
    let cache = RingCache::default();
    let results: Vec<Result<GroupVerification>> = groups
        .par_iter()
        .map(|g| verify_group(g.clone(), checks, budget, &cache, timings).map_err(|e| e.in_group(g.name())))
        .collect();
    let groups = results.into_iter().collect::<Result<Vec<_>>>()?;
    let passed = groups.iter().filter(|g| g.pass).count();
    Ok(VerificationReport {
        pass: passed == groups.len(),
        passed,
        failed: groups.len() - passed,
        budget,
        groups,
    })
}

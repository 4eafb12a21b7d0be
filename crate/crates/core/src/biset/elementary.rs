use std::sync::Arc;

use super::Biset;
use crate::error::{Error, Result};
use crate::group::{Element, Group, Section, Subgroup};

/// The elementary bisets and their standard composites.
///
/// Subgroups and quotients are realized as standalone groups by
/// [`Group::subgroup_group`] and [`Group::quotient`]; building the same
/// subgroup or quotient twice gives structurally equal groups, so composites
/// line up.
#[derive(Clone, Debug)]
pub enum ElementarySpec {
    /// `Ind_H^G`, a `(G, H)`-biset on the set `G`.
    Ind { group: Arc<Group>, sub: Subgroup },
    /// `Res_H^G`, an `(H, G)`-biset on the set `G`.
    Res { group: Arc<Group>, sub: Subgroup },
    /// `Inf_{G/N}^G`, a `(G, G/N)`-biset on the set `G/N`.
    Inf { group: Arc<Group>, normal: Subgroup },
    /// `Def_{G/N}^G`, a `(G/N, G)`-biset on the set `G/N`.
    Def { group: Arc<Group>, normal: Subgroup },
    /// `Iso(φ)` for an isomorphism `φ: source → target`, a
    /// `(target, source)`-biset on the set `target`.
    Iso { source: Arc<Group>, target: Arc<Group>, map: Vec<Element> },
    /// `Ind_T^G ∘ Inf_{T/S}^T`.
    Indinf { group: Arc<Group>, section: Section },
    /// `Def_{T/S}^T ∘ Res_T^G`.
    Defres { group: Arc<Group>, section: Section },
    /// Tensor induction: on units, the transport along `Ind_H^G`.
    Ten { group: Arc<Group>, sub: Subgroup },
    /// `Ten_T^G ∘ Inf_{T/S}^T`, the transport along `Indinf_{T/S}^G`.
    Teninf { group: Arc<Group>, section: Section },
}

fn check_subgroup(g: &Group, h: &Subgroup) -> Result<()> {
    g.subgroup_from_mask(h.mask()).map(|_| ())
}

fn check_section(g: &Group, s: &Section) -> Result<()> {
    check_subgroup(g, &s.top)?;
    check_subgroup(g, &s.bottom)?;
    if !s.bottom.is_subset(&s.top) {
        return Err(Error::NotContained { inner: s.bottom.mask(), outer: s.top.mask() });
    }
    let top = g.subgroup_group(&s.top);
    let bottom = g.restrict_subgroup(&top, &s.bottom);
    if !top.group.is_normal(&bottom) {
        return Err(Error::NotNormal);
    }
    Ok(())
}

impl ElementarySpec {
    pub fn build(&self) -> Result<Biset> {
        match self {
            ElementarySpec::Ind { group, sub } | ElementarySpec::Ten { group, sub } => {
                check_subgroup(group, sub)?;
                let emb = group.subgroup_group(sub);
                let g = group.clone();
                Biset::from_actions(
                    group.clone(),
                    Arc::new(emb.group),
                    group.order(),
                    |a, x| g.mul(a, x),
                    |x, h| g.mul(x, emb.embedding[h]),
                )
            }
            ElementarySpec::Res { group, sub } => {
                check_subgroup(group, sub)?;
                let emb = group.subgroup_group(sub);
                let g = group.clone();
                Biset::from_actions(
                    Arc::new(emb.group),
                    group.clone(),
                    group.order(),
                    |h, x| g.mul(emb.embedding[h], x),
                    |x, a| g.mul(x, a),
                )
            }
            ElementarySpec::Inf { group, normal } => {
                check_subgroup(group, normal)?;
                let q = group.quotient(normal)?;
                let qg = Arc::new(q.group);
                let k = qg.clone();
                Biset::from_actions(
                    group.clone(),
                    qg.clone(),
                    qg.order(),
                    |a, c| k.mul(q.projection[a], c),
                    |c, d| k.mul(c, d),
                )
            }
            ElementarySpec::Def { group, normal } => {
                check_subgroup(group, normal)?;
                let q = group.quotient(normal)?;
                let qg = Arc::new(q.group);
                let k = qg.clone();
                Biset::from_actions(
                    qg.clone(),
                    group.clone(),
                    qg.order(),
                    |d, c| k.mul(d, c),
                    |c, a| k.mul(c, q.projection[a]),
                )
            }
            ElementarySpec::Iso { source, target, map } => {
                if !source.is_isomorphism(target, map) {
                    return Err(Error::MalformedBiset("map is not an isomorphism".into()));
                }
                let t = target.clone();
                Biset::from_actions(
                    target.clone(),
                    source.clone(),
                    target.order(),
                    |h, x| t.mul(h, x),
                    |x, g| t.mul(x, map[g]),
                )
            }
            ElementarySpec::Indinf { group, section } | ElementarySpec::Teninf { group, section } => {
                check_section(group, section)?;
                let ind = ElementarySpec::Ind { group: group.clone(), sub: section.top }.build()?;
                let top = ind.right_group().clone();
                let bottom = group.restrict_subgroup(&group.subgroup_group(&section.top), &section.bottom);
                let inf = ElementarySpec::Inf { group: top, normal: bottom }.build()?;
                ind.compose(&inf)
            }
            ElementarySpec::Defres { group, section } => {
                check_section(group, section)?;
                let res = ElementarySpec::Res { group: group.clone(), sub: section.top }.build()?;
                let top = res.left_group().clone();
                let bottom = group.restrict_subgroup(&group.subgroup_group(&section.top), &section.bottom);
                let def = ElementarySpec::Def { group: top, normal: bottom }.build()?;
                def.compose(&res)
            }
        }
    }
}

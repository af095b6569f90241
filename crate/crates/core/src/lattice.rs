//! Enumeration of all p-subgroups of a finite group, the inclusion lattice,
//! its Möbius function, and the subgroup classification predicates
//! (elementary abelian, cyclic, radical, selfcentralizing).

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{BuildError, LatticeError};
use crate::group::{is_prime, p_part, quotient_group, Subgroup};
use crate::group::{enumerate_subgroups_within, PermGroup};

pub const DEFAULT_SUBGROUP_CAP: usize = 20_000;

/// Classification bits for one p-subgroup H of G.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgroupAttrs {
    pub order: usize,
    /// Abelian of exponent dividing p.
    pub is_eab: bool,
    pub is_cyclic: bool,
    /// H = O_p(N_G(H)).
    pub is_g_radical: bool,
    /// Z(H) is a Sylow p-subgroup of C_G(H).
    pub is_g_selfcentralizing: bool,
    /// O_p of N_G(H) / (C_G(H)·H) is trivial.
    pub is_f_radical: bool,
}

/// The complete set of p-subgroups of a group, ordered by inclusion and
/// partitioned into conjugacy classes. Index 0 is always the trivial
/// subgroup; subgroups are sorted by member set, so indices are canonical.
#[derive(Debug)]
pub struct PSubgroupLattice {
    group: Arc<PermGroup>,
    p: usize,
    subgroups: Vec<Subgroup>,
    leq: Vec<Vec<bool>>,
    conj_classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    attrs: Vec<SubgroupAttrs>,
}

impl PSubgroupLattice {
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn attrs(&self, i: usize) -> &SubgroupAttrs {
        &self.attrs[i]
    }

    pub fn leq(&self, lo: usize, hi: usize) -> bool {
        self.leq[lo][hi]
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn conj_classes(&self) -> &[Vec<usize>] {
        &self.conj_classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Lattice index of a subgroup given by its member set.
    pub fn find(&self, sub: &Subgroup) -> Option<usize> {
        self.subgroups
            .binary_search_by(|s| s.members().cmp(sub.members()))
            .ok()
    }

    /// Indices of the Sylow p-subgroups (the maximal-order entries).
    pub fn sylow_indices(&self) -> Vec<usize> {
        let max = self.subgroups.iter().map(|s| s.order()).max().unwrap_or(1);
        (0..self.len())
            .filter(|&i| self.subgroups[i].order() == max)
            .collect()
    }

    /// Hasse diagram edges (covering relations) of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let covered = (0..n).any(|k| {
                    k != i && k != j && self.leq[i][k] && self.leq[k][j]
                });
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    pub fn to_json(&self) -> serde_json::Value {
        let subs: Vec<serde_json::Value> = (0..self.len())
            .map(|i| {
                let gens: Vec<String> = self.subgroups[i]
                    .small_generating_set()
                    .iter()
                    .map(|&e| self.group.elem(e).to_string())
                    .collect();
                serde_json::json!({
                    "index": i,
                    "order": self.subgroups[i].order(),
                    "generators": gens,
                    "class": self.class_of[i],
                    "attrs": self.attrs[i],
                })
            })
            .collect();
        serde_json::json!({
            "prime": self.p,
            "subgroups": subs,
            "hasse": self.hasse_edges(),
            "conjugacy_classes": self.conj_classes,
        })
    }
}

/// Enumerates every p-subgroup of G: all subgroups of one Sylow p-subgroup,
/// closed under G-conjugation.
pub fn enumerate_p_subgroups(
    group: &Arc<PermGroup>,
    p: usize,
    cap: usize,
) -> Result<PSubgroupLattice, LatticeError> {
    assert!(is_prime(p), "p = {p} must be prime");
    let sylow = group.sylow(p);
    let within_sylow = enumerate_subgroups_within(&sylow, cap)?;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in &within_sylow {
        for g in 0..group.order() {
            let hg = h.conjugate(g);
            if seen.insert(hg.members().to_vec()) && seen.len() > cap {
                return Err(LatticeError::CapExceeded { cap });
            }
        }
    }
    let subgroups: Vec<Subgroup> = seen
        .into_iter()
        .map(|members| group.subgroup_from_members(members))
        .collect();
    let n = subgroups.len();

    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = subgroups[i].is_subgroup_of(&subgroups[j]);
        }
    }

    // conjugacy classes, each listed ascending, classes ordered by least member
    let index_of: BTreeMap<Vec<usize>, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members().to_vec(), i))
        .collect();
    let mut class_of = vec![usize::MAX; n];
    let mut conj_classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut class: BTreeSet<usize> = BTreeSet::new();
        for g in 0..group.order() {
            class.insert(index_of[subgroups[i].conjugate(g).members()]);
        }
        let id = conj_classes.len();
        for &j in &class {
            class_of[j] = id;
        }
        conj_classes.push(class.into_iter().collect());
    }

    let attrs: Vec<SubgroupAttrs> = subgroups
        .iter()
        .map(|h| classify(group, p, h))
        .collect::<Result<_, _>>()
        .map_err(|e| match e {
            BuildError::Group(g) => LatticeError::Group(g),
            other => panic!("classification cannot fail structurally: {other}"),
        })?;

    Ok(PSubgroupLattice {
        group: Arc::clone(group),
        p,
        subgroups,
        leq,
        conj_classes,
        class_of,
        attrs,
    })
}

/// Computes the classification record of one p-subgroup.
pub fn classify(group: &Arc<PermGroup>, p: usize, h: &Subgroup) -> Result<SubgroupAttrs, BuildError> {
    debug_assert!(h.is_p_group(p));
    let normalizer = h.normalizer();
    let centralizer = h.centralizer();
    let is_g_radical = normalizer.o_p(p) == *h;
    let is_g_selfcentralizing = h.center().order() == p_part(centralizer.order(), p);
    // C_G(H)·H is a subgroup of N_G(H) (both factors are normal in it).
    let ch_members: Vec<usize> = {
        let mut m: BTreeSet<usize> = centralizer.members().iter().copied().collect();
        m.extend(h.members().iter().copied());
        m.into_iter().collect()
    };
    let ch = group.generated_subgroup(&ch_members);
    let quot = quotient_group(&normalizer, &ch)?;
    let is_f_radical = quot.group.full_subgroup().o_p(p).is_trivial();
    Ok(SubgroupAttrs {
        order: h.order(),
        is_eab: h.is_elementary_abelian(p),
        is_cyclic: h.is_cyclic(),
        is_g_radical,
        is_g_selfcentralizing,
        is_f_radical,
    })
}

/// Checks the fusion-system selfcentralizing condition for H relative to a
/// fixed Sylow subgroup: C_P(H^g) ≤ H^g for every g carrying H into P.
/// The result must agree with the group-level selfcentralizing bit; a
/// disagreement is reported as an internal error.
pub fn f_selfcentralizing(
    group: &Arc<PermGroup>,
    p: usize,
    p_sylow: &Subgroup,
    h: &Subgroup,
) -> Result<bool, BuildError> {
    assert!(h.is_subgroup_of(p_sylow));
    let mut fusion_bit = true;
    for g in h.transporter_to(p_sylow) {
        let hg = h.conjugate(g);
        let c_in_p = p_sylow.intersect(&hg.centralizer());
        if !c_in_p.is_subgroup_of(&hg) {
            fusion_bit = false;
            break;
        }
    }
    let group_bit = classify(group, p, h)?.is_g_selfcentralizing;
    if fusion_bit != group_bit {
        return Err(BuildError::EquivalenceViolation(format!(
            "subgroup of order {} has fusion-sfc = {fusion_bit} but group-sfc = {group_bit}",
            h.order()
        )));
    }
    Ok(fusion_bit)
}

/// Möbius function values μ(A, B) for all comparable pairs of a finite
/// poset given by its order matrix.
#[derive(Debug)]
pub struct MobiusTable {
    values: BTreeMap<(usize, usize), i64>,
}

impl MobiusTable {
    /// Standard recursion: μ(A,A) = 1 and Σ_{A ≤ C ≤ B} μ(A,C) = 0 for A < B.
    pub fn new(leq: &dyn Fn(usize, usize) -> bool, n: usize) -> Self {
        // process upper ends in an order consistent with ≤
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| leq(j, i)).count());
        let mut values = BTreeMap::new();
        for &b in &order {
            for a in 0..n {
                if !leq(a, b) {
                    continue;
                }
                if a == b {
                    values.insert((a, b), 1);
                    continue;
                }
                let mut sum = 0i64;
                for c in 0..n {
                    if c != b && leq(a, c) && leq(c, b) {
                        sum += values[&(a, c)];
                    }
                }
                values.insert((a, b), -sum);
            }
        }
        MobiusTable { values }
    }

    pub fn from_lattice(lat: &PSubgroupLattice) -> Self {
        Self::new(&|i, j| lat.leq(i, j), lat.len())
    }

    pub fn get(&self, lo: usize, hi: usize) -> Result<i64, LatticeError> {
        self.values
            .get(&(lo, hi))
            .copied()
            .ok_or(LatticeError::NotComparable { lo, hi })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &i64)> {
        self.values.iter()
    }
}

/// μ of the subgroup lattice interval from the trivial subgroup to the
/// whole lattice-top subgroup `top`.
pub fn mobius(lat: &PSubgroupLattice, bottom: usize, top: usize) -> Result<i64, LatticeError> {
    MobiusTable::from_lattice(lat).get(bottom, top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;
    use crate::perm::Perm;

    fn named(gens: &[&str], degree: usize) -> Arc<PermGroup> {
        let perms: Vec<Perm> = gens
            .iter()
            .map(|s| crate::perm::parse_perm(s, degree).unwrap())
            .collect();
        PermGroup::enumerate(perms, degree, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn sym3_p2_has_four_subgroups() {
        let g = named(&["(0 1)", "(0 1 2)"], 3);
        let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(lat.len(), 4);
        let orders: Vec<usize> = lat.subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(lat.conj_classes().len(), 2);
    }

    #[test]
    fn sym3_p3_has_two_subgroups() {
        let g = named(&["(0 1)", "(0 1 2)"], 3);
        let lat = enumerate_p_subgroups(&g, 3, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(lat.len(), 2);
    }

    #[test]
    fn sym4_p2_has_twenty_subgroups() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(lat.len(), 20);
        let by_order = |o: usize| lat.subgroups().iter().filter(|s| s.order() == o).count();
        assert_eq!(by_order(1), 1);
        assert_eq!(by_order(2), 9);
        assert_eq!(by_order(4), 7);
        assert_eq!(by_order(8), 3);
    }

    #[test]
    fn lattice_closed_under_conjugation_and_downward() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        for i in 0..lat.len() {
            for gg in 0..g.order() {
                let conj = lat.subgroup(i).conjugate(gg);
                assert!(lat.find(&conj).is_some());
            }
        }
        // contains trivial and every Sylow
        assert_eq!(lat.subgroup(0).order(), 1);
        assert_eq!(lat.sylow_indices().len(), 3);
    }

    #[test]
    fn mobius_of_small_intervals() {
        let v4 = named(&["(0 1)", "(2 3)"], 4);
        let lat = enumerate_p_subgroups(&v4, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        assert_eq!(lat.len(), 5);
        let top = lat
            .subgroups()
            .iter()
            .position(|s| s.order() == 4)
            .unwrap();
        let mu = MobiusTable::from_lattice(&lat);
        assert_eq!(mu.get(0, 0).unwrap(), 1);
        let line = lat.subgroups().iter().position(|s| s.order() == 2).unwrap();
        assert_eq!(mu.get(0, line).unwrap(), -1);
        assert_eq!(mu.get(0, top).unwrap(), 2);
        assert!(mu.get(line, 0).is_err());
    }

    #[test]
    fn mobius_recursion_identity_everywhere() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        let mu = MobiusTable::from_lattice(&lat);
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                if a == b || !lat.leq(a, b) {
                    continue;
                }
                let mut sum = 0i64;
                for c in 0..lat.len() {
                    if lat.leq(a, c) && lat.leq(c, b) {
                        sum += mu.get(a, c).unwrap();
                    }
                }
                assert_eq!(sum, 0, "Möbius recursion fails on ({a}, {b})");
            }
        }
    }

    #[test]
    fn mobius_elementary_abelian_closed_form() {
        // μ(1, C_p^r) = (−1)^r p^(r(r−1)/2) for r = 1, 2, 3 at p = 2
        let c2 = named(&["(0 1)"], 2);
        let v4 = named(&["(0 1)", "(2 3)"], 4);
        let e8 = named(&["(0 1)", "(2 3)", "(4 5)"], 6);
        for (g, expected) in [(c2, -1i64), (v4, 2), (e8, -8)] {
            let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
            let top = lat
                .subgroups()
                .iter()
                .position(|s| s.order() == g.order())
                .unwrap();
            assert_eq!(mobius(&lat, 0, top).unwrap(), expected);
        }
    }

    #[test]
    fn classify_sym4_klein_subgroups() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let v4 = g.full_subgroup().o_p(2);
        let a = classify(&g, 2, &v4).unwrap();
        assert!(a.is_eab && !a.is_cyclic && a.is_g_radical && a.is_g_selfcentralizing);
        // a non-normal Klein subgroup is not radical: its normalizer is a D8
        let x = g
            .elem_index(&Perm::from_cycles(4, &[vec![0, 1]]).unwrap())
            .unwrap();
        let y = g
            .elem_index(&Perm::from_cycles(4, &[vec![2, 3]]).unwrap())
            .unwrap();
        let klein2 = g.generated_subgroup(&[x, y]);
        assert_eq!(klein2.order(), 4);
        let b = classify(&g, 2, &klein2).unwrap();
        assert!(!b.is_g_radical);
        assert!(b.is_eab);
    }

    #[test]
    fn classify_trivial_subgroup_not_sfc_when_p_divides() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let a = classify(&g, 2, &g.trivial_subgroup()).unwrap();
        assert!(!a.is_g_selfcentralizing);
    }

    #[test]
    fn fusion_sfc_matches_group_sfc() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let sylow = g.sylow(2);
        // H = P is always selfcentralizing
        assert!(f_selfcentralizing(&g, 2, &sylow, &sylow).unwrap());
        // the center of a Sylow D8 is not: C_P(H) = P has order 8 > 2
        let center = sylow.center();
        assert_eq!(center.order(), 2);
        assert!(!f_selfcentralizing(&g, 2, &sylow, &center).unwrap());
        // exhaustive agreement over all subgroups of the Sylow
        for h in enumerate_subgroups_within(&sylow, usize::MAX).unwrap() {
            f_selfcentralizing(&g, 2, &sylow, &h).unwrap();
        }
    }

    #[test]
    fn radical_subgroups_contain_o_p() {
        let g = named(&["(0 1 2 3)", "(0 1)"], 4);
        let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        let o2 = g.full_subgroup().o_p(2);
        for i in 0..lat.len() {
            if lat.attrs(i).is_g_radical {
                assert!(o2.is_subgroup_of(lat.subgroup(i)));
            }
        }
    }

    #[test]
    fn lattice_json_shape() {
        let g = named(&["(0 1)", "(0 1 2)"], 3);
        let lat = enumerate_p_subgroups(&g, 2, DEFAULT_SUBGROUP_CAP).unwrap();
        let json = lat.to_json();
        assert_eq!(json["prime"], 2);
        assert_eq!(json["subgroups"].as_array().unwrap().len(), 4);
        assert!(json["hasse"].as_array().unwrap().len() == 3);
    }
}

//! Finite permutation groups with full element enumeration, and the
//! subgroup primitives (centralizer, normalizer, transporter, Sylow, O_p,
//! O^p, center, Frattini, quotients) everything else consumes.
//!
//! Groups are enumerated exhaustively and their elements sorted by image
//! sequence, so element indices are canonical: index 0 is always the
//! identity, and coset representatives chosen by minimal index are
//! deterministic across runs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;



use crate::error::GroupError;
use crate::perm::{parse_perm, Perm};

pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// A finite permutation group with all elements enumerated.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
}

impl PermGroup {
    /// Enumerates the closure of `generators` under multiplication.
    /// Elements come out sorted lexicographically by image sequence, which
    /// places the identity at index 0.
    pub fn enumerate(
        generators: Vec<Perm>,
        degree: usize,
        cap: usize,
    ) -> Result<Arc<Self>, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        seen.insert(Perm::identity(degree));
        let mut frontier: Vec<Perm> = vec![Perm::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in &generators {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders = elements.iter().map(|p| p.order()).collect();
        Ok(Arc::new(PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            orders,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elem(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elem_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[i] · elements[j]` (apply i, then j).
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].then(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elem_order(&self, i: usize) -> usize {
        self.orders[i]
    }

    /// Conjugate `h^g = g⁻¹ h g`, as an element index.
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverses[g], h), g)
    }

    pub fn is_p_element(&self, i: usize, p: usize) -> bool {
        let mut n = self.orders[i];
        while n % p == 0 {
            n /= p;
        }
        n == 1
    }

    pub fn full_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            ambient: Arc::clone(self),
            members: (0..self.order()).collect(),
        }
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup {
            ambient: Arc::clone(self),
            members: vec![0],
        }
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_subgroup(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(0);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            ambient: Arc::clone(self),
            members: members.into_iter().collect(),
        }
    }

    pub fn subgroup_from_members(self: &Arc<Self>, members: Vec<usize>) -> Subgroup {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            ambient: Arc::clone(self),
            members,
        }
    }

    /// One Sylow p-subgroup, grown deterministically: starting from the
    /// trivial subgroup, repeatedly adjoin the least p-element of the
    /// normalizer not already inside. Such an element exists whenever the
    /// current subgroup is not yet Sylow, so the greedy loop terminates.
    pub fn sylow(self: &Arc<Self>, p: usize) -> Subgroup {
        let target = p_part(self.order(), p);
        let mut s = self.trivial_subgroup();
        while s.order() < target {
            let n = s.normalizer();
            let next = n
                .members
                .iter()
                .copied()
                .find(|&g| self.is_p_element(g, p) && !s.contains(g))
                .expect("normalizer of a non-Sylow p-subgroup contains a new p-element");
            let mut gens: Vec<usize> = s.members.clone();
            gens.push(next);
            s = self.generated_subgroup(&gens);
        }
        s
    }

    /// As `sylow`, but errors when `p` does not divide the group order.
    pub fn sylow_checked(self: &Arc<Self>, p: usize) -> Result<Subgroup, GroupError> {
        if self.order() % p != 0 {
            return Err(GroupError::PrimeDoesNotDivide {
                p,
                order: self.order(),
            });
        }
        Ok(self.sylow(p))
    }
}

/// A subgroup of an enumerated group, stored as a sorted set of element
/// indices into the ambient group.
#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: Arc<PermGroup>,
    members: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.members == other.members
    }
}
impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl Subgroup {
    pub fn ambient(&self) -> &Arc<PermGroup> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, elem: usize) -> bool {
        self.members.binary_search(&elem).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// `H^g = g⁻¹ H g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self
            .members
            .iter()
            .map(|&h| self.ambient.conj(h, g))
            .collect();
        members.sort_unstable();
        Subgroup {
            ambient: Arc::clone(&self.ambient),
            members,
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup {
            ambient: Arc::clone(&self.ambient),
            members,
        }
    }

    /// C_G(H) = {g | gh = hg for all h in H}.
    pub fn centralizer(&self) -> Subgroup {
        let g = &self.ambient;
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| self.members.iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
            .collect();
        Subgroup {
            ambient: Arc::clone(g),
            members,
        }
    }

    /// N_G(H) = {g | H^g = H}.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.ambient;
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| self.members.iter().all(|&h| self.contains(g.conj(h, x))))
            .collect();
        Subgroup {
            ambient: Arc::clone(g),
            members,
        }
    }

    /// Transporter set N_G(H, K) = {g | H^g ≤ K}, as raw element indices.
    pub fn transporter_to(&self, target: &Subgroup) -> Vec<usize> {
        let g = &self.ambient;
        (0..g.order())
            .filter(|&x| self.members.iter().all(|&h| target.contains(g.conj(h, x))))
            .collect()
    }

    /// Z(H): members central within H.
    pub fn center(&self) -> Subgroup {
        let g = &self.ambient;
        let members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| self.members.iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
            .collect();
        Subgroup {
            ambient: Arc::clone(&self.ambient),
            members,
        }
    }

    /// O_p(K): the largest normal p-subgroup, computed as the intersection
    /// of all conjugates of one Sylow p-subgroup of K.
    pub fn o_p(&self, p: usize) -> Subgroup {
        let syl = self.sylow_in(p);
        let mut acc = syl.clone();
        for &k in &self.members {
            acc = acc.intersect(&syl.conjugate(k));
            if acc.is_trivial() {
                break;
            }
        }
        acc
    }

    /// O^p(K): the smallest normal subgroup with p-power index, generated
    /// by every element of order coprime to p.
    pub fn o_upper_p(&self, p: usize) -> Subgroup {
        let g = &self.ambient;
        let gens: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&x| g.elem_order(x) % p != 0)
            .collect();
        let sub = generated_within(self, &gens);
        debug_assert!(is_p_power(self.order() / sub.order(), p));
        sub
    }

    /// One Sylow p-subgroup of this subgroup (not of the ambient group),
    /// grown by the same deterministic greedy rule as `PermGroup::sylow`.
    pub fn sylow_in(&self, p: usize) -> Subgroup {
        let target = p_part(self.order(), p);
        let mut s = Subgroup {
            ambient: Arc::clone(&self.ambient),
            members: vec![0],
        };
        while s.order() < target {
            let next = self
                .members
                .iter()
                .copied()
                .find(|&x| {
                    self.ambient.is_p_element(x, p)
                        && !s.contains(x)
                        && s.members
                            .iter()
                            .all(|&h| s.contains(self.ambient.conj(h, x)))
                })
                .expect("non-Sylow p-subgroup extends inside its normalizer");
            let mut gens = s.members.clone();
            gens.push(next);
            s = generated_within(self, &gens);
        }
        s
    }

    /// Φ(H): intersection of the maximal subgroups of H (the whole group
    /// when H is trivial, by the empty-intersection convention).
    pub fn frattini(&self) -> Subgroup {
        if self.order() == 1 {
            return self.clone();
        }
        let all = enumerate_subgroups_within(self, usize::MAX)
            .expect("subgroup enumeration of a finite group cannot exceed an unlimited cap");
        let proper: Vec<&Subgroup> = all.iter().filter(|s| s.order() < self.order()).collect();
        let maximal: Vec<&Subgroup> = proper
            .iter()
            .copied()
            .filter(|m| {
                !proper
                    .iter()
                    .any(|other| other.order() > m.order() && m.is_subgroup_of(other))
            })
            .collect();
        let mut acc = self.clone();
        for m in maximal {
            acc = acc.intersect(m);
        }
        acc
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        other
            .members
            .iter()
            .all(|&g| self.members.iter().all(|&h| self.contains(self.ambient.conj(h, g))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.ambient;
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.members
            .iter()
            .any(|&x| self.ambient.elem_order(x) == self.order())
    }

    /// Elementary abelian for the prime p: abelian of exponent dividing p.
    pub fn is_elementary_abelian(&self, p: usize) -> bool {
        self.is_abelian()
            && self
                .members
                .iter()
                .all(|&x| x == 0 || self.ambient.elem_order(x) == p)
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        is_p_power(self.order(), p)
    }

    /// Least member index that generates nothing smaller: used as a
    /// deterministic label.
    pub fn min_member(&self) -> usize {
        self.members[0]
    }

    /// A small generating set, greedily assembled in index order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = Subgroup {
            ambient: Arc::clone(&self.ambient),
            members: vec![0],
        };
        for &x in &self.members {
            if !span.contains(x) {
                gens.push(x);
                let mut g = span.members.clone();
                g.push(x);
                span = generated_within(self, &g);
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }
}

/// Closure of `gens` inside the ambient group of `within` (all generators
/// must belong to `within` for the result to stay inside it).
fn generated_within(within: &Subgroup, gens: &[usize]) -> Subgroup {
    debug_assert!(gens.iter().all(|&g| within.contains(g)));
    within.ambient.generated_subgroup(gens)
}

/// All subgroups of `top`, by breadth-first closure over adjoining one
/// member element at a time, deduplicating by member set.
pub fn enumerate_subgroups_within(
    top: &Subgroup,
    cap: usize,
) -> Result<Vec<Subgroup>, GroupError> {
    let trivial = top.ambient().trivial_subgroup();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(trivial.members.clone());
    let mut queue: Vec<Subgroup> = vec![trivial];
    let mut out: Vec<Subgroup> = Vec::new();
    while let Some(s) = queue.pop() {
        for &x in top.members() {
            if s.contains(x) {
                continue;
            }
            let mut gens = s.members.clone();
            gens.push(x);
            let bigger = top.ambient().generated_subgroup(&gens);
            if seen.insert(bigger.members.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                queue.push(bigger);
            }
        }
        out.push(s);
    }
    out.sort();
    Ok(out)
}

/// Quotient K/N realized as a permutation group acting on the right cosets
/// of N, together with the projection from member indices to quotient
/// element indices.
#[derive(Debug)]
pub struct Quotient {
    pub group: Arc<PermGroup>,
    /// Element index in the ambient group (restricted to K) → element index
    /// in the quotient group.
    pub proj: BTreeMap<usize, usize>,
}

pub fn quotient_group(k: &Subgroup, n: &Subgroup) -> Result<Quotient, GroupError> {
    if !n.is_subgroup_of(k) {
        return Err(GroupError::NotSubgroup);
    }
    if !n.is_normal_in(k) {
        return Err(GroupError::NotNormal);
    }
    let g = k.ambient();
    // Cosets Nk, labeled by their least element; sorted labels give coset ids.
    let mut coset_of: BTreeMap<usize, usize> = BTreeMap::new(); // member -> coset label
    for &x in k.members() {
        let label = n.members().iter().map(|&h| g.mul(h, x)).min().unwrap();
        coset_of.insert(x, label);
    }
    let labels: Vec<usize> = {
        let mut ls: Vec<usize> = coset_of.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
        ls.sort_unstable();
        ls
    };
    let coset_id: BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let m = labels.len();
    // Right-multiplication action of each member on the coset space.
    let mut perms: Vec<(Perm, usize)> = Vec::new();
    for &x in k.members() {
        let mut images = vec![0usize; m];
        for (ci, &label) in labels.iter().enumerate() {
            images[ci] = coset_id[&coset_of[&g.mul(label, x)]];
        }
        perms.push((Perm::from_images(images)?, x));
    }
    let distinct: BTreeSet<Perm> = perms.iter().map(|(p, _)| p.clone()).collect();
    let generators: Vec<Perm> = distinct.iter().filter(|p| !p.is_identity()).cloned().collect();
    let group = PermGroup::enumerate(generators, m, k.order().max(4))?;
    debug_assert_eq!(group.order(), distinct.len());
    let proj: BTreeMap<usize, usize> = perms
        .into_iter()
        .map(|(p, x)| (x, group.elem_index(&p).expect("coset permutation is in the quotient group")))
        .collect();
    Ok(Quotient { group, proj })
}

pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut q = 1;
    while n % p == 0 {
        q *= p;
        n /= p;
    }
    q
}

pub fn is_p_power(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Parses the group input format: a `degree: n` header followed by one
/// generator per line (cycle notation or image list). Blank lines and
/// `#` comments are skipped.
pub fn parse_group_text(text: &str, cap: usize) -> Result<Arc<PermGroup>, GroupError> {
    let mut degree: Option<usize> = None;
    let mut gens: Vec<Perm> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree:") {
            degree = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|e| GroupError::Parse(format!("bad degree: {e}")))?,
            );
            continue;
        }
        let d = degree.ok_or_else(|| {
            GroupError::Parse("generator listed before the degree: header".into())
        })?;
        gens.push(parse_perm(line, d)?);
    }
    let d = degree.ok_or_else(|| GroupError::Parse("missing degree: header".into()))?;
    PermGroup::enumerate(gens, d, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> Arc<PermGroup> {
        let gens = vec![
            Perm::from_cycles(3, &[vec![0, 1]]).unwrap(),
            Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap(),
        ];
        PermGroup::enumerate(gens, 3, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn sym4() -> Arc<PermGroup> {
        let gens = vec![
            Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
            Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
        ];
        PermGroup::enumerate(gens, 4, DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn enumerate_empty_generators_gives_trivial_group() {
        let g = PermGroup::enumerate(vec![], 3, 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn enumerate_sym3_and_sym4() {
        assert_eq!(sym3().order(), 6);
        assert_eq!(sym4().order(), 24);
    }

    #[test]
    fn identity_is_index_zero() {
        let g = sym4();
        assert!(g.elem(0).is_identity());
    }

    #[test]
    fn cap_exceeded() {
        let gens = vec![
            Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
            Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
        ];
        assert!(matches!(
            PermGroup::enumerate(gens, 4, 10),
            Err(GroupError::CapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn centralizer_of_trivial_is_everything() {
        let g = sym3();
        let triv = g.trivial_subgroup();
        assert_eq!(triv.centralizer().order(), 6);
    }

    #[test]
    fn centralizer_of_c3_in_sym3() {
        let g = sym3();
        let rot = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap();
        let c3 = g.generated_subgroup(&[rot]);
        let c = c3.centralizer();
        assert_eq!(c.order(), 3);
        assert_eq!(c, c3);
    }

    #[test]
    fn normalizer_of_c2_in_sym3() {
        let g = sym3();
        let t = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let c2 = g.generated_subgroup(&[t]);
        assert_eq!(c2.normalizer(), c2);
    }

    #[test]
    fn normalizer_of_normal_klein_in_sym4() {
        let g = sym4();
        let a = g
            .elem_index(&Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap())
            .unwrap();
        let b = g
            .elem_index(&Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap())
            .unwrap();
        let v4 = g.generated_subgroup(&[a, b]);
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.normalizer().order(), 24);
    }

    #[test]
    fn transporter_cases() {
        let g = sym3();
        let t01 = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let t02 = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 2]]).unwrap())
            .unwrap();
        let rot = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap())
            .unwrap();
        let h = g.generated_subgroup(&[t01]);
        let k = g.generated_subgroup(&[t02]);
        let c3 = g.generated_subgroup(&[rot]);
        assert_eq!(g.trivial_subgroup().transporter_to(&k).len(), 6);
        assert_eq!(h.transporter_to(&k).len(), 2);
        assert!(c3.transporter_to(&h).is_empty());
        // H^g ≤ H forces H^g = H: transporter(H, H) = N_G(H)
        assert_eq!(h.transporter_to(&h), h.normalizer().members().to_vec());
    }

    #[test]
    fn o_p_of_sym3_and_sym4() {
        let g3 = sym3();
        assert!(g3.full_subgroup().o_p(2).is_trivial());
        let g4 = sym4();
        let o2 = g4.full_subgroup().o_p(2);
        assert_eq!(o2.order(), 4);
        assert!(o2.is_elementary_abelian(2));
    }

    #[test]
    fn o_upper_p_of_sym3() {
        let g = sym3();
        let full = g.full_subgroup();
        assert_eq!(full.o_upper_p(2).order(), 3);
        assert_eq!(full.o_upper_p(3).order(), 6);
        let t = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let c2 = g.generated_subgroup(&[t]);
        assert!(c2.o_upper_p(2).is_trivial());
    }

    #[test]
    fn sylow_of_sym4() {
        let g = sym4();
        let s2 = g.sylow(2);
        assert_eq!(s2.order(), 8);
        let s3 = g.sylow(3);
        assert_eq!(s3.order(), 3);
        assert!(g.sylow(5).is_trivial());
        assert!(g.sylow_checked(5).is_err());
    }

    #[test]
    fn frattini_of_klein_is_trivial() {
        let gens = vec![
            Perm::from_cycles(4, &[vec![0, 1]]).unwrap(),
            Perm::from_cycles(4, &[vec![2, 3]]).unwrap(),
        ];
        let v = PermGroup::enumerate(gens, 4, 100).unwrap();
        assert!(v.full_subgroup().frattini().is_trivial());
    }

    #[test]
    fn frattini_of_c4_is_c2() {
        let gens = vec![Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()];
        let c4 = PermGroup::enumerate(gens, 4, 100).unwrap();
        assert_eq!(c4.full_subgroup().frattini().order(), 2);
    }

    #[test]
    fn quotient_sym4_by_klein() {
        let g = sym4();
        let o2 = g.full_subgroup().o_p(2);
        let q = quotient_group(&g.full_subgroup(), &o2).unwrap();
        assert_eq!(q.group.order(), 6);
        assert!(!q.group.full_subgroup().is_abelian());
        // projection is a homomorphism with kernel V4
        for &x in g.full_subgroup().members() {
            for &y in g.full_subgroup().members() {
                let lhs = q.proj[&g.mul(x, y)];
                let rhs = q.group.mul(q.proj[&x], q.proj[&y]);
                assert_eq!(lhs, rhs);
            }
        }
        let kernel: Vec<usize> = (0..24).filter(|x| q.proj[x] == 0).collect();
        assert_eq!(kernel, o2.members().to_vec());
    }

    #[test]
    fn quotient_whole_group_is_trivial() {
        let g = sym3();
        let q = quotient_group(&g.full_subgroup(), &g.full_subgroup()).unwrap();
        assert_eq!(q.group.order(), 1);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let g = sym3();
        let t = g
            .elem_index(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap())
            .unwrap();
        let c2 = g.generated_subgroup(&[t]);
        assert!(matches!(
            quotient_group(&g.full_subgroup(), &c2),
            Err(GroupError::NotNormal)
        ));
    }

    #[test]
    fn parse_group_text_roundtrip() {
        let text = "# symmetric group\ndegree: 4\n(0 1 2 3)\n(0 1)\n";
        let g = parse_group_text(text, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(g.order(), 24);
        assert!(parse_group_text("degree: 3\n(0 7)\n", 100).is_err());
        assert!(parse_group_text("(0 1)\n", 100).is_err());
    }

    #[test]
    fn centralizer_contained_in_normalizer() {
        let g = sym4();
        let a = g
            .elem_index(&Perm::from_cycles(4, &[vec![0, 1]]).unwrap())
            .unwrap();
        let h = g.generated_subgroup(&[a]);
        assert!(h.centralizer().is_subgroup_of(&h.normalizer()));
    }
}

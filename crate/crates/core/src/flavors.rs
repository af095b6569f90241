//! Builders for the six categories attached to the p-subgroups of a finite
//! group G: the inclusion poset S, the transporter category T, the linking
//! category L, the fusion category F, the orbit category O, and the
//! exterior quotient F̃ of F.
//!
//! All six share the same objects (p-subgroups selected by an object
//! filter) and realize hom sets as quotients of the transporter sets
//! N_G(H,K) = {g | H^g ≤ K}:
//!
//! ```text
//!   S(H,K) = {≤}                     T(H,K) = N_G(H,K)
//!   L(H,K) = O^p(C_G(H)) \ N_G(H,K)  F(H,K) = C_G(H) \ N_G(H,K)
//!   O(H,K) = N_G(H,K) / K            F̃(H,K) = C_G(H) \ N_G(H,K) / K
//! ```
//!
//! Each morphism is stored as the least element index in its coset class,
//! so composition is "multiply representatives, re-canonicalize".

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::category::{CategoryBuilder, FiniteCategory, FunctorMap, MorId, ObjId};
use crate::error::{BuildError, CategoryError, LatticeError};
use crate::group::{PermGroup, Subgroup};
use crate::lattice::{enumerate_p_subgroups, PSubgroupLattice, DEFAULT_SUBGROUP_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    S,
    T,
    L,
    F,
    O,
    FTilde,
}

impl Flavor {
    pub const ALL: [Flavor; 6] = [
        Flavor::S,
        Flavor::T,
        Flavor::L,
        Flavor::F,
        Flavor::O,
        Flavor::FTilde,
    ];

    pub fn parse(s: &str) -> Option<Flavor> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Some(Flavor::S),
            "t" => Some(Flavor::T),
            "l" => Some(Flavor::L),
            "f" => Some(Flavor::F),
            "o" => Some(Flavor::O),
            "ftilde" | "f~" => Some(Flavor::FTilde),
            _ => None,
        }
    }

    /// The radical filters of the fusion-side flavors select F-radical
    /// objects; the group-side flavors select G-radical ones.
    pub fn uses_f_radical(self) -> bool {
        matches!(self, Flavor::F | Flavor::FTilde | Flavor::L)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::S => "s",
            Flavor::T => "t",
            Flavor::L => "l",
            Flavor::F => "f",
            Flavor::O => "o",
            Flavor::FTilde => "ftilde",
        };
        write!(f, "{s}")
    }
}

/// Object selection for a build. Interval bounds are lattice indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectFilter {
    All,
    Star,
    StarEab,
    Sfc,
    SfcRad,
    Rad,
    StarRad,
    Interval {
        lo: usize,
        include_lo: bool,
        hi: usize,
        include_hi: bool,
    },
}

impl fmt::Display for ObjectFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectFilter::All => write!(f, "all"),
            ObjectFilter::Star => write!(f, "star"),
            ObjectFilter::StarEab => write!(f, "star-eab"),
            ObjectFilter::Sfc => write!(f, "sfc"),
            ObjectFilter::SfcRad => write!(f, "sfc-rad"),
            ObjectFilter::Rad => write!(f, "rad"),
            ObjectFilter::StarRad => write!(f, "star-rad"),
            ObjectFilter::Interval {
                lo,
                include_lo,
                hi,
                include_hi,
            } => {
                let l = if *include_lo { '[' } else { '(' };
                let r = if *include_hi { ']' } else { ')' };
                write!(f, "interval:{l}{lo},{hi}{r}")
            }
        }
    }
}

/// Shared context: the group, its p-subgroup lattice, and per-subgroup
/// centralizer data the canonicalizers need.
#[derive(Debug)]
pub struct SubgroupContext {
    group: Arc<PermGroup>,
    p: usize,
    lattice: Arc<PSubgroupLattice>,
    centralizers: Vec<Vec<usize>>,
    op_centralizers: Vec<Vec<usize>>,
    normalizer_orders: Vec<usize>,
}

impl SubgroupContext {
    pub fn new(group: &Arc<PermGroup>, p: usize) -> Result<Self, BuildError> {
        Self::with_cap(group, p, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_cap(group: &Arc<PermGroup>, p: usize, cap: usize) -> Result<Self, BuildError> {
        let lattice = Arc::new(enumerate_p_subgroups(group, p, cap)?);
        let mut centralizers = Vec::with_capacity(lattice.len());
        let mut op_centralizers = Vec::with_capacity(lattice.len());
        let mut normalizer_orders = Vec::with_capacity(lattice.len());
        for i in 0..lattice.len() {
            let h = lattice.subgroup(i);
            let c = h.centralizer();
            let opc = c.o_upper_p(p);
            centralizers.push(c.members().to_vec());
            op_centralizers.push(opc.members().to_vec());
            normalizer_orders.push(h.normalizer().order());
        }
        Ok(SubgroupContext {
            group: Arc::clone(group),
            p,
            lattice,
            centralizers,
            op_centralizers,
            normalizer_orders,
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn lattice(&self) -> &Arc<PSubgroupLattice> {
        &self.lattice
    }

    /// Filter for the proper subgroups of a p-group G itself: `[1, G)` when
    /// `include_trivial`, else `(1, G)`.
    pub fn proper_interval(&self, include_trivial: bool) -> Result<ObjectFilter, BuildError> {
        let full = self
            .lattice
            .find(&self.group.full_subgroup())
            .ok_or_else(|| {
                BuildError::Lattice(LatticeError::NotComparable {
                    lo: 0,
                    hi: self.lattice.len(),
                })
            })?;
        Ok(ObjectFilter::Interval {
            lo: 0,
            include_lo: include_trivial,
            hi: full,
            include_hi: false,
        })
    }

    fn keep_object(&self, i: usize, flavor: Flavor, filter: &ObjectFilter) -> bool {
        let a = self.lattice.attrs(i);
        let radical = if flavor.uses_f_radical() {
            a.is_f_radical
        } else {
            a.is_g_radical
        };
        match *filter {
            ObjectFilter::All => true,
            ObjectFilter::Star => a.order > 1,
            ObjectFilter::StarEab => a.order > 1 && a.is_eab,
            ObjectFilter::Sfc => a.is_g_selfcentralizing,
            ObjectFilter::SfcRad => a.is_g_selfcentralizing && radical,
            ObjectFilter::Rad => radical,
            ObjectFilter::StarRad => a.order > 1 && radical,
            ObjectFilter::Interval {
                lo,
                include_lo,
                hi,
                include_hi,
            } => {
                let above = self.lattice.leq(lo, i) && (include_lo || i != lo);
                let below = self.lattice.leq(i, hi) && (include_hi || i != hi);
                above && below
            }
        }
    }

    /// Least element index of the coset class of `g` in the hom set from
    /// lattice object `hi` to `hj`.
    fn canon(&self, flavor: Flavor, hi: usize, hj: usize, g: usize) -> usize {
        let grp = &self.group;
        match flavor {
            Flavor::S | Flavor::T => g,
            Flavor::L => self.op_centralizers[hi]
                .iter()
                .map(|&c| grp.mul(c, g))
                .min()
                .unwrap(),
            Flavor::F => self.centralizers[hi]
                .iter()
                .map(|&c| grp.mul(c, g))
                .min()
                .unwrap(),
            Flavor::O => self.lattice.subgroup(hj)
                .members()
                .iter()
                .map(|&k| grp.mul(g, k))
                .min()
                .unwrap(),
            Flavor::FTilde => {
                let ks = self.lattice.subgroup(hj).members();
                self.centralizers[hi]
                    .iter()
                    .flat_map(|&c| {
                        let cg = grp.mul(c, g);
                        ks.iter().map(move |&k| grp.mul(cg, k))
                    })
                    .min()
                    .unwrap()
            }
        }
    }

    /// Builds the chosen flavor on the filtered object set.
    pub fn build(&self, flavor: Flavor, filter: &ObjectFilter) -> Result<BuiltCategory, BuildError> {
        let objects: Vec<usize> = (0..self.lattice.len())
            .filter(|&i| self.keep_object(i, flavor, filter))
            .collect();
        let mut builder = CategoryBuilder::new(format!(
            "{}[{}]p{}·{}",
            flavor, filter, self.p, self.group.order()
        ));
        for &h in &objects {
            builder.add_object(format!("{h}:o{}", self.lattice.subgroup(h).order()));
        }
        let mut mor_rep: Vec<usize> = Vec::new();
        let mut mor_ends: Vec<(ObjId, ObjId)> = Vec::new();
        let mut lookup: BTreeMap<(ObjId, ObjId, usize), MorId> = BTreeMap::new();
        for (oi, &hi) in objects.iter().enumerate() {
            for (oj, &hj) in objects.iter().enumerate() {
                let reps: Vec<usize> = if flavor == Flavor::S {
                    if self.lattice.leq(hi, hj) {
                        vec![0]
                    } else {
                        vec![]
                    }
                } else {
                    let transporter = self
                        .lattice
                        .subgroup(hi)
                        .transporter_to(self.lattice.subgroup(hj));
                    let mut set: Vec<usize> = transporter
                        .iter()
                        .map(|&g| self.canon(flavor, hi, hj, g))
                        .collect();
                    set.sort_unstable();
                    set.dedup();
                    set
                };
                for rep in reps {
                    let label = if rep == 0 && oi == oj {
                        "id".to_string()
                    } else {
                        self.group.elem(rep).to_string()
                    };
                    let m = if oi == oj && rep == 0 {
                        builder.add_identity(oi, label)
                    } else {
                        builder.add_mor(oi, oj, label)
                    };
                    mor_rep.push(rep);
                    mor_ends.push((oi, oj));
                    lookup.insert((oi, oj, rep), m);
                }
            }
        }
        let cat = builder.build(|f, g| {
            let (oi, _) = mor_ends[f];
            let (_, ok) = mor_ends[g];
            let prod = self.group.mul(mor_rep[f], mor_rep[g]);
            let rep = self.canon(flavor, objects[oi], objects[ok], prod);
            lookup[&(oi, ok, rep)]
        })?;
        Ok(BuiltCategory {
            cat: Arc::new(cat),
            flavor,
            filter: *filter,
            objects,
            mor_rep,
            lookup,
        })
    }

    /// Expected automorphism count of lattice object `h` under `flavor`.
    pub fn expected_aut_size(&self, flavor: Flavor, h: usize) -> usize {
        let n = self.normalizer_orders[h];
        match flavor {
            Flavor::S => 1,
            Flavor::T => n,
            Flavor::L => n / self.op_centralizers[h].len(),
            Flavor::F => n / self.centralizers[h].len(),
            Flavor::O => n / self.lattice.subgroup(h).order(),
            Flavor::FTilde => {
                // independent double-coset count: orbits of C_G(H) × H acting
                // on N_G(H) by (c, k)·g = c g k
                let members = self.lattice.subgroup(h).normalizer();
                let mut orbit_of: BTreeMap<usize, usize> = BTreeMap::new();
                let mut orbits = 0;
                for &g in members.members() {
                    if orbit_of.contains_key(&g) {
                        continue;
                    }
                    orbits += 1;
                    let mut stack = vec![g];
                    orbit_of.insert(g, orbits);
                    while let Some(x) = stack.pop() {
                        for &c in &self.centralizers[h] {
                            for &k in self.lattice.subgroup(h).members() {
                                let y = self.group.mul(self.group.mul(c, x), k);
                                if orbit_of.insert(y, orbits).is_none() {
                                    stack.push(y);
                                }
                            }
                        }
                    }
                }
                orbits
            }
        }
    }
}

/// A built flavor: the finite category plus the data linking it back to the
/// lattice (object ↦ lattice index, morphism ↦ canonical representative).
#[derive(Debug)]
pub struct BuiltCategory {
    pub cat: Arc<FiniteCategory>,
    pub flavor: Flavor,
    pub filter: ObjectFilter,
    /// Object id → lattice index.
    pub objects: Vec<usize>,
    /// Morphism id → canonical representative element index.
    pub mor_rep: Vec<usize>,
    lookup: BTreeMap<(ObjId, ObjId, usize), MorId>,
}

impl BuiltCategory {
    pub fn object_of_lattice(&self, lattice_idx: usize) -> Option<ObjId> {
        self.objects.iter().position(|&h| h == lattice_idx)
    }

    pub fn mor_by_rep(&self, dom: ObjId, cod: ObjId, rep: usize) -> Option<MorId> {
        self.lookup.get(&(dom, cod, rep)).copied()
    }

    /// Checks |C(H)| against the closed-form automorphism counts.
    pub fn check_aut_sizes(&self, ctx: &SubgroupContext) -> Result<Vec<(ObjId, usize)>, BuildError> {
        let mut out = Vec::new();
        for (o, &h) in self.objects.iter().enumerate() {
            let got = self.cat.hom(o, o).len();
            let expected = ctx.expected_aut_size(self.flavor, h);
            if got != expected {
                return Err(BuildError::MismatchedAutGroup {
                    object: self.cat.object_label(o).to_string(),
                    got,
                    expected,
                });
            }
            out.push((o, got));
        }
        Ok(out)
    }

    /// Composition is independent of the choice of class representatives:
    /// re-multiplies entire classes and compares canonical forms.
    pub fn check_composition_well_defined(&self, ctx: &SubgroupContext) -> bool {
        let grp = ctx.group();
        for f in 0..self.cat.mor_count() {
            let (doma, coda) = (self.cat.mor(f).dom, self.cat.mor(f).cod);
            let class_f = self.class_members(ctx, doma, coda, self.mor_rep[f]);
            for g in 0..self.cat.mor_count() {
                if self.cat.mor(g).dom != coda {
                    continue;
                }
                let codb = self.cat.mor(g).cod;
                let class_g = self.class_members(ctx, coda, codb, self.mor_rep[g]);
                let expected = ctx.canon(
                    self.flavor,
                    self.objects[doma],
                    self.objects[codb],
                    grp.mul(self.mor_rep[f], self.mor_rep[g]),
                );
                for &x in &class_f {
                    for &y in &class_g {
                        let got = ctx.canon(
                            self.flavor,
                            self.objects[doma],
                            self.objects[codb],
                            grp.mul(x, y),
                        );
                        if got != expected {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn class_members(&self, ctx: &SubgroupContext, dom: ObjId, cod: ObjId, rep: usize) -> Vec<usize> {
        let (hi, hj) = (self.objects[dom], self.objects[cod]);
        ctx.lattice()
            .subgroup(hi)
            .transporter_to(ctx.lattice().subgroup(hj))
            .into_iter()
            .filter(|&g| ctx.canon(self.flavor, hi, hj, g) == rep)
            .collect()
    }
}

impl SubgroupContext {
    /// Full subcategory on one object per conjugacy class (the least
    /// lattice index). The inclusion of the skeleton is an equivalence of
    /// categories, hence a homotopy equivalence, so Betti numbers and
    /// induced-map ranks computed on skeletal builds agree with the full
    /// ones while the nerve is far smaller. Object filters select whole
    /// conjugacy classes, so nested filters yield nested skeletons.
    pub fn skeletal(&self, built: &BuiltCategory) -> BuiltCategory {
        // classes must be the category's own isomorphism classes: singletons
        // for the poset flavor, conjugacy classes elsewhere
        let cls = built.cat.iso_classes();
        let keep_mask: Vec<bool> = (0..built.cat.object_count())
            .map(|o| {
                let class = &cls.classes[cls.class_of[o]];
                let rep = class
                    .iter()
                    .copied()
                    .min_by_key(|&j| built.objects[j])
                    .unwrap();
                o == rep
            })
            .collect();
        let (cat, fm) = built.cat.full_subcategory(&keep_mask);
        let objects: Vec<usize> = fm.obj_map.iter().map(|&o| built.objects[o]).collect();
        let mor_rep: Vec<usize> = fm.mor_map.iter().map(|&m| built.mor_rep[m]).collect();
        let mut lookup = BTreeMap::new();
        for m in 0..cat.mor_count() {
            let mor = cat.mor(m);
            lookup.insert((mor.dom, mor.cod, mor_rep[m]), m);
        }
        BuiltCategory {
            cat: Arc::new(cat),
            flavor: built.flavor,
            filter: built.filter,
            objects,
            mor_rep,
            lookup,
        }
    }
}

/// Inclusion functor between two builds of the same flavor whose object
/// sets are nested (sub ⊆ sup).
pub fn inclusion_functor(sub: &BuiltCategory, sup: &BuiltCategory) -> Result<FunctorMap, CategoryError> {
    if sub.flavor != sup.flavor {
        return Err(CategoryError::NotFunctorial("flavors differ".into()));
    }
    let obj_map: Vec<ObjId> = sub
        .objects
        .iter()
        .map(|&h| {
            sup.object_of_lattice(h)
                .ok_or_else(|| CategoryError::NotFunctorial(format!("object {h} missing upstairs")))
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<MorId> = (0..sub.cat.mor_count())
        .map(|m| {
            let mor = sub.cat.mor(m);
            sup.mor_by_rep(obj_map[mor.dom], obj_map[mor.cod], sub.mor_rep[m])
                .ok_or_else(|| CategoryError::NotFunctorial(format!("morphism {m} missing upstairs")))
        })
        .collect::<Result<_, _>>()?;
    let fm = FunctorMap { obj_map, mor_map };
    fm.validate(&sub.cat, &sup.cat)?;
    Ok(fm)
}

/// Quotient-style functor between two flavors built on the same filter:
/// identity on objects, morphisms re-canonicalized in the coarser flavor.
/// Covers T → L → F, T → O, F → F̃, O → F̃, and S → T (where the poset
/// morphism maps to the identity representative).
pub fn projection_functor(
    ctx: &SubgroupContext,
    fine: &BuiltCategory,
    coarse: &BuiltCategory,
) -> Result<FunctorMap, CategoryError> {
    if fine.objects != coarse.objects {
        return Err(CategoryError::NotFunctorial("object sets differ".into()));
    }
    let obj_map: Vec<ObjId> = (0..fine.cat.object_count()).collect();
    let mor_map: Vec<MorId> = (0..fine.cat.mor_count())
        .map(|m| {
            let mor = fine.cat.mor(m);
            let rep = ctx.canon(
                coarse.flavor,
                fine.objects[mor.dom],
                fine.objects[mor.cod],
                fine.mor_rep[m],
            );
            coarse
                .mor_by_rep(mor.dom, mor.cod, rep)
                .ok_or_else(|| CategoryError::NotFunctorial(format!("no image for morphism {m}")))
        })
        .collect::<Result<_, _>>()?;
    let fm = FunctorMap { obj_map, mor_map };
    fm.validate(&fine.cat, &coarse.cat)?;
    Ok(fm)
}

/// Both sides of the extension criterion for fusion morphisms: a morphism
/// φ: H → K with representative g extends to N (H ≤ N ≤ N_P(H) ∩ P) iff
/// every automorphism of H induced by N is carried by φ into one induced
/// by N_K(H^φ). Returns (search verdict, criterion verdict); the two must
/// agree when H is selfcentralizing in the fusion sense.
pub fn fusion_extends(
    ctx: &SubgroupContext,
    p_sylow: &Subgroup,
    h: &Subgroup,
    n: &Subgroup,
    k: &Subgroup,
    phi_rep: usize,
) -> Result<(bool, bool), BuildError> {
    let grp = ctx.group();
    let sfc = crate::lattice::f_selfcentralizing(grp, ctx.prime(), p_sylow, h)?;
    if !sfc {
        return Err(BuildError::PreconditionViolated(
            "H is not selfcentralizing, the extension criterion does not apply".into(),
        ));
    }
    if !(h.is_subgroup_of(n) && n.is_subgroup_of(&h.normalizer()) && n.is_subgroup_of(p_sylow)) {
        return Err(BuildError::PreconditionViolated(
            "need H ≤ N ≤ N_P(H)".into(),
        ));
    }
    let hg = h.conjugate(phi_rep);
    if !hg.is_subgroup_of(k) {
        return Err(BuildError::PreconditionViolated(
            "φ must carry H into K".into(),
        ));
    }
    // search: some ψ ∈ F(N, K) restricting to φ on H, i.e. some
    // g' ∈ N_G(N, K) with g'·g⁻¹ centralizing H
    let c_h = h.centralizer();
    let search = n
        .transporter_to(k)
        .into_iter()
        .any(|gp| c_h.contains(grp.mul(gp, grp.inv(phi_rep))));
    // criterion: N^g ⊆ C_G(H^g) · N_{K}(H^g)
    let c_hg = hg.centralizer();
    let nk_hg: Vec<usize> = k
        .members()
        .iter()
        .copied()
        .filter(|&y| hg.members().iter().all(|&u| hg.contains(grp.conj(u, y))))
        .collect();
    let criterion = n.members().iter().all(|&x| {
        let xg = grp.conj(x, phi_rep);
        nk_hg
            .iter()
            .any(|&y| c_hg.contains(grp.mul(xg, grp.inv(y))))
    });
    Ok((search, criterion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP;
    use crate::perm::parse_perm;

    fn grp(gens: &[&str], degree: usize) -> Arc<PermGroup> {
        let perms = gens.iter().map(|s| parse_perm(s, degree).unwrap()).collect();
        PermGroup::enumerate(perms, degree, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn klein_ctx() -> SubgroupContext {
        SubgroupContext::new(&grp(&["(0 1)", "(2 3)"], 4), 2).unwrap()
    }

    #[test]
    fn klein_orbit_interval_matches_expected_zeta() {
        let ctx = klein_ctx();
        let filter = ctx.proper_interval(true).unwrap();
        let built = ctx.build(Flavor::O, &filter).unwrap();
        assert_eq!(built.cat.object_count(), 4);
        assert!(built.cat.validate().is_empty());
        // hom counts: trivial row (4,2,2,2), lines only have their endos (2)
        let triv = built.object_of_lattice(0).unwrap();
        let mut row: Vec<usize> = (0..4).map(|o| built.cat.hom(triv, o).len()).collect();
        row.sort_unstable();
        assert_eq!(row, vec![2, 2, 2, 4]);
        for o in 0..4 {
            if o != triv {
                assert_eq!(built.cat.hom(o, o).len(), 2);
                assert!(built.cat.hom(o, triv).is_empty());
            }
        }
    }

    #[test]
    fn s_star_is_the_inclusion_poset() {
        let ctx = SubgroupContext::new(&grp(&["(0 1)", "(0 1 2)"], 3), 2).unwrap();
        let built = ctx.build(Flavor::S, &ObjectFilter::Star).unwrap();
        assert_eq!(built.cat.object_count(), 3);
        // three incomparable C2s: only identities
        assert_eq!(built.cat.mor_count(), 3);
        assert!(built.cat.is_ei());
    }

    #[test]
    fn fusion_star_on_sym3_has_nine_morphisms() {
        let ctx = SubgroupContext::new(&grp(&["(0 1)", "(0 1 2)"], 3), 2).unwrap();
        let built = ctx.build(Flavor::F, &ObjectFilter::Star).unwrap();
        assert_eq!(built.cat.object_count(), 3);
        assert_eq!(built.cat.mor_count(), 9);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(built.cat.hom(a, b).len(), 1);
            }
        }
        assert!(built.cat.validate().is_empty());
        assert!(built.cat.is_ei());
    }

    #[test]
    fn all_flavors_are_ei_and_law_abiding_on_sym4() {
        let g = grp(&["(0 1 2 3)", "(0 1)"], 4);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        for flavor in Flavor::ALL {
            let built = ctx.build(flavor, &ObjectFilter::Star).unwrap();
            assert!(built.cat.validate().is_empty(), "{flavor} laws");
            assert!(built.cat.is_ei(), "{flavor} EI");
            built.check_aut_sizes(&ctx).unwrap();
        }
    }

    #[test]
    fn aut_sizes_match_table_on_sym4() {
        let g = grp(&["(0 1 2 3)", "(0 1)"], 4);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        let built = ctx.build(Flavor::O, &ObjectFilter::All).unwrap();
        // normal Klein four-group: N = G, so |O(V)| = 24/4 = 6
        let v4 = g.full_subgroup().o_p(2);
        let idx = ctx.lattice().find(&v4).unwrap();
        let obj = built.object_of_lattice(idx).unwrap();
        assert_eq!(built.cat.hom(obj, obj).len(), 6);
        // Sylow D8 in the exterior quotient: C\N/H = 1
        let ft = ctx.build(Flavor::FTilde, &ObjectFilter::All).unwrap();
        let d8 = g.sylow(2);
        let d8_idx = ctx.lattice().find(&d8).unwrap();
        let d8_obj = ft.object_of_lattice(d8_idx).unwrap();
        assert_eq!(ft.cat.hom(d8_obj, d8_obj).len(), 1);
        // and in F itself: |F(P)| = |N/C| = 8/2 = 4
        let f = ctx.build(Flavor::F, &ObjectFilter::All).unwrap();
        let d8_objf = f.object_of_lattice(d8_idx).unwrap();
        assert_eq!(f.cat.hom(d8_objf, d8_objf).len(), 4);
    }

    #[test]
    fn composition_well_defined_on_sym3() {
        let ctx = SubgroupContext::new(&grp(&["(0 1)", "(0 1 2)"], 3), 2).unwrap();
        for flavor in Flavor::ALL {
            let built = ctx.build(flavor, &ObjectFilter::All).unwrap();
            assert!(built.check_composition_well_defined(&ctx), "{flavor}");
        }
    }

    #[test]
    fn inclusion_and_projection_functors_validate() {
        let g = grp(&["(0 1 2 3)", "(0 1)"], 4);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        let star = ctx.build(Flavor::O, &ObjectFilter::Star).unwrap();
        let star_rad = ctx.build(Flavor::O, &ObjectFilter::StarRad).unwrap();
        let inc = inclusion_functor(&star_rad, &star).unwrap();
        assert_eq!(inc.obj_map.len(), star_rad.cat.object_count());
        let t = ctx.build(Flavor::T, &ObjectFilter::Star).unwrap();
        let o = ctx.build(Flavor::O, &ObjectFilter::Star).unwrap();
        let proj = projection_functor(&ctx, &t, &o).unwrap();
        // full: every O-morphism is hit
        let mut hit = vec![false; o.cat.mor_count()];
        for &m in &proj.mor_map {
            hit[m] = true;
        }
        assert!(hit.into_iter().all(|b| b));
        // faithful: S → T is injective on morphisms
        let s = ctx.build(Flavor::S, &ObjectFilter::Star).unwrap();
        let st = projection_functor(&ctx, &s, &t);
        // S(H,K) reps are the identity element, which is in T(H,K) only
        // when H ≤ K; projection by canon is just the identity rep
        assert!(st.is_ok());
        let st = st.unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for &m in &st.mor_map {
            assert!(seen.insert(m), "S → T must be faithful");
        }
    }

    #[test]
    fn quotient_functor_f_to_ftilde() {
        let g = grp(&["(0 1 2 3)", "(0 1)"], 4);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        let f = ctx.build(Flavor::F, &ObjectFilter::Star).unwrap();
        let ft = ctx.build(Flavor::FTilde, &ObjectFilter::Star).unwrap();
        let q = projection_functor(&ctx, &f, &ft).unwrap();
        assert_eq!(q.obj_map, (0..f.cat.object_count()).collect::<Vec<_>>());
        // on Sylow D8 endos the map is 4-to-1
        let d8_idx = ctx.lattice().find(&g.sylow(2)).unwrap();
        let o = f.object_of_lattice(d8_idx).unwrap();
        let images: std::collections::BTreeSet<MorId> = f
            .cat
            .hom(o, o)
            .iter()
            .map(|&m| q.mor_map[m])
            .collect();
        assert_eq!(f.cat.hom(o, o).len(), 4);
        assert_eq!(images.len(), 1);
    }

    #[test]
    fn sym3_f_to_ftilde_is_bijective_on_star() {
        let ctx = SubgroupContext::new(&grp(&["(0 1)", "(0 1 2)"], 3), 2).unwrap();
        let f = ctx.build(Flavor::F, &ObjectFilter::Star).unwrap();
        let ft = ctx.build(Flavor::FTilde, &ObjectFilter::Star).unwrap();
        assert_eq!(f.cat.mor_count(), 9);
        assert_eq!(ft.cat.mor_count(), 9);
    }

    #[test]
    fn extension_criterion_trivial_case() {
        let g = grp(&["(0 1 2 3)", "(0 1)"], 4);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        let p_sylow = g.sylow(2);
        let v4 = g.full_subgroup().o_p(2);
        // N = H: extension is φ itself, criterion must agree
        let (found, criterion) = fusion_extends(&ctx, &p_sylow, &v4, &v4, &p_sylow, 0).unwrap();
        assert!(found && criterion);
    }

    #[test]
    fn extension_criterion_rejects_non_sfc() {
        let g = grp(&["(0 1 2 3)", "(0 1)"], 4);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        let p_sylow = g.sylow(2);
        let z = p_sylow.center();
        assert!(matches!(
            fusion_extends(&ctx, &p_sylow, &z, &p_sylow, &p_sylow, 0),
            Err(BuildError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn orbit_trivial_subgroup_not_initial() {
        let g = grp(&["(0 1)", "(0 1 2)"], 3);
        let ctx = SubgroupContext::new(&g, 2).unwrap();
        let o = ctx.build(Flavor::O, &ObjectFilter::All).unwrap();
        let triv = o.object_of_lattice(0).unwrap();
        assert_eq!(o.cat.hom(triv, triv).len(), 6);
    }
}

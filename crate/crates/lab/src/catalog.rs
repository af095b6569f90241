//! Built-in desk-scale groups addressed by short names.

use std::sync::Arc;

use anyhow::{anyhow, Context, Result};
use pcat_core::group::{parse_group_text, PermGroup, DEFAULT_ELEMENT_CAP};
use pcat_core::perm::parse_perm;
use pcat_core::Perm;

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub degree: usize,
    pub generators: &'static [&'static str],
    pub order: usize,
    /// Primes the verification suites care about for this group.
    pub primes: &'static [usize],
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "c2",
        description: "cyclic group of order 2",
        degree: 2,
        generators: &["(0 1)"],
        order: 2,
        primes: &[2],
    },
    CatalogEntry {
        name: "c3",
        description: "cyclic group of order 3",
        degree: 3,
        generators: &["(0 1 2)"],
        order: 3,
        primes: &[3],
    },
    CatalogEntry {
        name: "c4",
        description: "cyclic group of order 4",
        degree: 4,
        generators: &["(0 1 2 3)"],
        order: 4,
        primes: &[2],
    },
    CatalogEntry {
        name: "c8",
        description: "cyclic group of order 8",
        degree: 8,
        generators: &["(0 1 2 3 4 5 6 7)"],
        order: 8,
        primes: &[2],
    },
    CatalogEntry {
        name: "c9",
        description: "cyclic group of order 9",
        degree: 9,
        generators: &["(0 1 2 3 4 5 6 7 8)"],
        order: 9,
        primes: &[3],
    },
    CatalogEntry {
        name: "c2xc2",
        description: "Klein four-group",
        degree: 4,
        generators: &["(0 1)", "(2 3)"],
        order: 4,
        primes: &[2],
    },
    CatalogEntry {
        name: "c3xc3",
        description: "elementary abelian group of order 9",
        degree: 6,
        generators: &["(0 1 2)", "(3 4 5)"],
        order: 9,
        primes: &[3],
    },
    CatalogEntry {
        name: "d8",
        description: "dihedral group of order 8",
        degree: 4,
        generators: &["(0 1 2 3)", "(1 3)"],
        order: 8,
        primes: &[2],
    },
    CatalogEntry {
        name: "q8",
        description: "quaternion group of order 8 (regular representation)",
        degree: 8,
        generators: &["[2,3,1,0,7,6,4,5]", "[4,5,6,7,1,0,3,2]"],
        order: 8,
        primes: &[2],
    },
    CatalogEntry {
        name: "s3",
        description: "symmetric group on 3 points",
        degree: 3,
        generators: &["(0 1)", "(0 1 2)"],
        order: 6,
        primes: &[2, 3],
    },
    CatalogEntry {
        name: "s4",
        description: "symmetric group on 4 points",
        degree: 4,
        generators: &["(0 1 2 3)", "(0 1)"],
        order: 24,
        primes: &[2, 3],
    },
    CatalogEntry {
        name: "a4",
        description: "alternating group on 4 points",
        degree: 4,
        generators: &["(0 1 2)", "(1 2 3)"],
        order: 12,
        primes: &[2, 3],
    },
    CatalogEntry {
        name: "c2xs3",
        description: "direct product of C2 and the symmetric group on 3 points",
        degree: 5,
        generators: &["(0 1)", "(0 1 2)", "(3 4)"],
        order: 12,
        primes: &[2, 3],
    },
    CatalogEntry {
        name: "sl23",
        description: "special linear group SL(2,3) on the nonzero vectors of F3^2",
        degree: 8,
        generators: &["[3,7,2,6,1,5,0,4]", "[5,2,0,6,3,1,7,4]"],
        order: 24,
        primes: &[2, 3],
    },
];

pub fn lookup(name: &str) -> Result<Arc<PermGroup>> {
    let entry = CATALOG
        .iter()
        .find(|e| e.name == name.to_ascii_lowercase())
        .ok_or_else(|| anyhow!("unknown catalog group: {name}"))?;
    let gens: Vec<Perm> = entry
        .generators
        .iter()
        .map(|s| parse_perm(s, entry.degree))
        .collect::<Result<_, _>>()
        .with_context(|| format!("catalog entry {name}"))?;
    let group = PermGroup::enumerate(gens, entry.degree, DEFAULT_ELEMENT_CAP)?;
    debug_assert_eq!(group.order(), entry.order, "catalog order for {name}");
    Ok(group)
}

/// A catalog name, or a path to a group file in the text format.
pub fn resolve(source: &str, cap: usize) -> Result<Arc<PermGroup>> {
    if CATALOG.iter().any(|e| e.name == source.to_ascii_lowercase()) {
        return lookup(source);
    }
    let text = std::fs::read_to_string(source)
        .with_context(|| format!("{source} is neither a catalog name nor a readable file"))?;
    Ok(parse_group_text(&text, cap)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_enumerates_to_its_order() {
        for e in CATALOG {
            let g = lookup(e.name).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
            for &p in e.primes {
                assert_eq!(g.order() % p, 0, "{} should have order divisible by {p}", e.name);
            }
        }
    }

    #[test]
    fn q8_is_the_quaternion_group() {
        let q8 = lookup("q8").unwrap();
        assert_eq!(q8.order(), 8);
        let full = q8.full_subgroup();
        assert!(!full.is_abelian());
        // a single element of order 2
        let involutions = (0..8)
            .filter(|&i| q8.elem_order(i) == 2)
            .count();
        assert_eq!(involutions, 1);
        assert_eq!(full.center().order(), 2);
    }

    #[test]
    fn sl23_has_quaternion_sylow() {
        let g = lookup("sl23").unwrap();
        assert_eq!(g.order(), 24);
        let syl = g.sylow(2);
        assert_eq!(syl.order(), 8);
        assert!(!syl.is_abelian());
        assert_eq!(syl.center().order(), 2);
        assert_eq!(
            (0..24).filter(|&i| g.elem_order(i) == 2).count(),
            1,
            "SL(2,3) has a unique involution"
        );
    }

    #[test]
    fn c2xs3_has_central_involution() {
        let g = lookup("c2xs3").unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.full_subgroup().center().order(), 2);
    }
}

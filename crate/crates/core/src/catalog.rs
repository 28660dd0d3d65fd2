//! Shipped example rings and audit instances.

use crate::presentation::Presentation;

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub json: &'static str,
}

impl CatalogEntry {
    pub fn presentation(&self) -> Presentation {
        Presentation::from_json(self.json).expect("catalog entries are valid")
    }
}

macro_rules! entry {
    ($name:literal, $summary:literal) => {
        CatalogEntry { name: $name, summary: $summary, json: include_str!(concat!("../data/", $name, ".json")) }
    };
}

pub const CATALOG: &[CatalogEntry] = &[
    entry!("hypersurface", "Q[x]/(x^2)"),
    entry!("complete-intersection", "Q[x,y]/(x^2, y^3)"),
    entry!("m2-zero", "Q[x,y]/(x^2, xy, y^2)"),
    entry!("x2-xy", "Q[x,y]/(x^2, xy)"),
    entry!("m2-zero-f2", "F2[x,y]/(x^2, xy, y^2)"),
    entry!("complete-intersection-f5", "F5[x,y]/(x^2, y^3)"),
    entry!("weighted-ci", "Q[x,y]/(x^4 + y^2, xy) with deg y = 2"),
    entry!("triangle-f5", "F5[x,y,z]/(xy, yz, zx)"),
    entry!("mixed-ci", "Q[x,y]/(x^2) -> Q[x,y]/(x^2, y^2)"),
    entry!("mixed-m2-zero", "Q[x,y,z]/(x^2, xy, y^2) -> Q[x,y,z]/(x^2, xy, y^2, z^2)"),
];

pub const AUDIT_INSTANCES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "rigidity-m2-zero",
        summary: "rigidity on Q[x,y] -> Q[x,y]/(x^2, xy, y^2)",
        json: include_str!("../data/audits/rigidity-m2-zero.json"),
    },
    CatalogEntry {
        name: "jacobi-zariski",
        summary: "Q[x,y,z] -> /(x^2, xy, y^2) -> /(z^2) with witness z^2",
        json: include_str!("../data/audits/jacobi-zariski.json"),
    },
    CatalogEntry {
        name: "jacobi-zariski-f2",
        summary: "the same tower over F2",
        json: include_str!("../data/audits/jacobi-zariski-f2.json"),
    },
    CatalogEntry {
        name: "ci-vanishing",
        summary: "Q[x,y] -> Q[x,y]/(x^2) -> Q[x,y]/(x^2, y^2)",
        json: include_str!("../data/audits/ci-vanishing.json"),
    },
];

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().chain(AUDIT_INSTANCES).find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_parse() {
        assert!(CATALOG.len() >= 8);
        for e in CATALOG {
            let p = e.presentation();
            assert!(!p.relators().is_empty(), "{}", e.name);
        }
        assert_eq!(find("m2-zero").unwrap().presentation().relators().len(), 3);
        assert!(!find("mixed-ci").unwrap().presentation().has_polynomial_base());
        assert!(find("nope").is_none());
    }
}

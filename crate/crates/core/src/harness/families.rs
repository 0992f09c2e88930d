//! Classical graphs realized as general Kneser graphs.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::graph::{Decomposition, FamilyDescriptor, Graph};
use crate::kneser::{build_kneser_capped, chromatic_number, BoundedValue};

/// `Kneser(n, k)` is `KG(nK_2, kK_2)`, `Schrijver(n, k)` is `KG(C_n, kK_2)`,
/// and `Circular(n, d)` is `KG(C_n, P_d)`, the circular complete graph
/// `K_{n/d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum KnownFamily {
    Kneser { n: usize, k: usize },
    Schrijver { n: usize, k: usize },
    Circular { n: usize, d: usize },
}

impl KnownFamily {
    /// Host graph and family realizing the instance.
    pub fn realize(self) -> (Graph, FamilyDescriptor) {
        match self {
            KnownFamily::Kneser { n, k } => (Graph::matching(n), FamilyDescriptor::Matching(k)),
            KnownFamily::Schrijver { n, k } => (Graph::cycle(n), FamilyDescriptor::Matching(k)),
            KnownFamily::Circular { n, d } => (Graph::cycle(n), FamilyDescriptor::Path(d)),
        }
    }

    /// The classical chromatic number: `n − 2k + 2` for the Kneser and
    /// Schrijver graphs, `⌈n/d⌉` for `K_{n/d}`.
    pub fn known_chi(self) -> usize {
        match self {
            KnownFamily::Kneser { n, k } | KnownFamily::Schrijver { n, k } => (n + 2).saturating_sub(2 * k),
            KnownFamily::Circular { n, d } => n.div_ceil(d),
        }
    }

    /// Parse `kneser:5,2`, `schrijver:6,2` or `circular:7,3`.
    pub fn parse(s: &str) -> Option<Self> {
        let (name, args) = s.split_once(':')?;
        let (a, b) = args.split_once(',')?;
        let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
        match name.trim() {
            "kneser" => Some(KnownFamily::Kneser { n: a, k: b }),
            "schrijver" => Some(KnownFamily::Schrijver { n: a, k: b }),
            "circular" => Some(KnownFamily::Circular { n: a, d: b }),
            _ => None,
        }
    }

    fn well_formed(self) -> bool {
        match self {
            KnownFamily::Kneser { n, k } => k >= 1 && n >= 2 * k,
            KnownFamily::Schrijver { n, k } => n >= 3 && k >= 1 && n >= 2 * k,
            KnownFamily::Circular { n, d } => n >= 3 && d >= 1 && n >= 2 * d,
        }
    }
}

impl std::fmt::Display for KnownFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KnownFamily::Kneser { n, k } => write!(f, "kneser:{n},{k}"),
            KnownFamily::Schrijver { n, k } => write!(f, "schrijver:{n},{k}"),
            KnownFamily::Circular { n, d } => write!(f, "circular:{n},{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub instance: KnownFamily,
    pub kneser_vertices: usize,
    pub known_chi: usize,
    /// `None` when the instance was skipped.
    pub chi: Option<BoundedValue>,
    pub agrees: Option<bool>,
    pub note: Option<String>,
}

/// Build each instance, compute `χ`, and compare with the classical value.
/// Instances over `vertex_cap` Kneser vertices are skipped with a note.
pub fn families_crosscheck(selection: &[KnownFamily], vertex_cap: usize, budget: Budget) -> Vec<FamilyRecord> {
    selection
        .iter()
        .map(|&instance| {
            let known_chi = instance.known_chi();
            let skipped = |kneser_vertices, note: String| FamilyRecord {
                instance,
                kneser_vertices,
                known_chi,
                chi: None,
                agrees: None,
                note: Some(note),
            };
            if !instance.well_formed() {
                return skipped(0, "parameters outside the family's range".into());
            }
            let (g, f) = instance.realize();
            let d = Decomposition::trivial(&g);
            match build_kneser_capped(&g, &d, &f, vertex_cap) {
                Ok(kg) => {
                    let chi = chromatic_number(&kg, budget);
                    let agrees = chi.exact.then_some(chi.lower == known_chi);
                    FamilyRecord {
                        instance,
                        kneser_vertices: kg.vertex_count(),
                        known_chi,
                        chi: Some(chi),
                        agrees,
                        note: None,
                    }
                }
                Err(e) => skipped(0, e.to_string()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_and_friends() {
        let sel = [
            KnownFamily::Kneser { n: 5, k: 2 },
            KnownFamily::Kneser { n: 4, k: 2 },
            KnownFamily::Circular { n: 6, d: 2 },
            KnownFamily::Schrijver { n: 5, k: 2 },
        ];
        let recs = families_crosscheck(&sel, 10_000, Budget::default());
        let chis: Vec<Option<usize>> = recs.iter().map(|r| r.chi.as_ref().and_then(|c| c.value())).collect();
        assert_eq!(chis, vec![Some(3), Some(2), Some(3), Some(3)]);
        assert_eq!(recs[0].kneser_vertices, 10);
        assert!(recs.iter().all(|r| r.agrees == Some(true)));
    }

    #[test]
    fn parse_round_trip() {
        let f = KnownFamily::parse("circular:7,3").unwrap();
        assert_eq!(f, KnownFamily::Circular { n: 7, d: 3 });
        assert_eq!(f.to_string(), "circular:7,3");
        assert!(KnownFamily::parse("petersen").is_none());
    }

    #[test]
    fn over_cap_is_skipped() {
        let recs = families_crosscheck(&[KnownFamily::Kneser { n: 8, k: 3 }], 10, Budget::default());
        assert!(recs[0].chi.is_none());
        assert!(recs[0].note.is_some());
    }
}

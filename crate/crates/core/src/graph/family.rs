use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::{EdgeSet, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("tree families need at least 2 vertices, got {0}")]
    TreeTooSmall(usize),
    #[error("matchings need at least one edge")]
    EmptyMatching,
    #[error("paths need length at least 1")]
    EmptyPath,
    #[error("explicit member {0} is empty")]
    EmptyMember(usize),
    #[error("explicit member {index} does not belong to a graph with {m} edges")]
    ForeignMember { index: usize, m: usize },
    #[error("cannot parse family {0:?}; expected trees:T, matching:K or path:D")]
    Syntax(String),
}

/// Which subgraphs of the host are the Kneser vertices / forbidden members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyDescriptor {
    /// All tree subgraphs with this many vertices.
    Trees(usize),
    /// All matchings with this many edges.
    Matching(usize),
    /// All paths with this many edges.
    Path(usize),
    /// A literal list of edge sets of the host.
    Explicit(Vec<EdgeSet>),
}

impl FamilyDescriptor {
    pub fn validate(&self, g: &Graph) -> Result<(), FamilyError> {
        match self {
            FamilyDescriptor::Trees(t) if *t < 2 => Err(FamilyError::TreeTooSmall(*t)),
            FamilyDescriptor::Matching(0) => Err(FamilyError::EmptyMatching),
            FamilyDescriptor::Path(0) => Err(FamilyError::EmptyPath),
            FamilyDescriptor::Explicit(list) => {
                for (index, member) in list.iter().enumerate() {
                    if member.universe() != g.edge_count() {
                        return Err(FamilyError::ForeignMember {
                            index,
                            m: g.edge_count(),
                        });
                    }
                    if member.is_empty() {
                        return Err(FamilyError::EmptyMember(index));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Edge count shared by every member, when the family is uniform.
    pub fn member_edges(&self) -> Option<usize> {
        match self {
            FamilyDescriptor::Trees(t) => Some(t - 1),
            FamilyDescriptor::Matching(k) => Some(*k),
            FamilyDescriptor::Path(d) => Some(*d),
            FamilyDescriptor::Explicit(list) => {
                let first = list.first()?.len();
                list.iter().all(|s| s.len() == first).then_some(first)
            }
        }
    }

    /// Smallest member edge count (1 for an empty explicit list).
    pub fn min_member_edges(&self) -> usize {
        match self {
            FamilyDescriptor::Explicit(list) => {
                list.iter().map(EdgeSet::len).min().unwrap_or(1).max(1)
            }
            other => other.member_edges().unwrap_or(1).max(1),
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Trees(t) => write!(f, "trees:{t}"),
            FamilyDescriptor::Matching(k) => write!(f, "matching:{k}"),
            FamilyDescriptor::Path(d) => write!(f, "path:{d}"),
            FamilyDescriptor::Explicit(list) => write!(f, "explicit:{}", list.len()),
        }
    }
}

impl FromStr for FamilyDescriptor {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::Syntax(s.to_string()))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| FamilyError::Syntax(s.to_string()))?;
        let family = match kind.trim() {
            "trees" | "tree" | "t" => FamilyDescriptor::Trees(value),
            "matching" | "m" => FamilyDescriptor::Matching(value),
            "path" | "p" => FamilyDescriptor::Path(value),
            _ => return Err(FamilyError::Syntax(s.to_string())),
        };
        match family {
            FamilyDescriptor::Trees(t) if t < 2 => Err(FamilyError::TreeTooSmall(t)),
            FamilyDescriptor::Matching(0) => Err(FamilyError::EmptyMatching),
            FamilyDescriptor::Path(0) => Err(FamilyError::EmptyPath),
            other => Ok(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f: FamilyDescriptor = "trees:4".parse().unwrap();
        assert_eq!(f, FamilyDescriptor::Trees(4));
        assert_eq!(f.to_string(), "trees:4");
        assert_eq!("matching:2".parse(), Ok(FamilyDescriptor::Matching(2)));
        assert_eq!("path:3".parse(), Ok(FamilyDescriptor::Path(3)));
        assert_eq!(
            "trees:1".parse::<FamilyDescriptor>(),
            Err(FamilyError::TreeTooSmall(1))
        );
        assert!("cycles:3".parse::<FamilyDescriptor>().is_err());
    }

    #[test]
    fn member_sizes() {
        assert_eq!(FamilyDescriptor::Trees(5).member_edges(), Some(4));
        assert_eq!(FamilyDescriptor::Matching(3).min_member_edges(), 3);
        let g = Graph::complete(3);
        let explicit = FamilyDescriptor::Explicit(vec![
            EdgeSet::from_indices(3, [0]),
            EdgeSet::from_indices(3, [1, 2]),
        ]);
        assert_eq!(explicit.member_edges(), None);
        assert_eq!(explicit.min_member_edges(), 1);
        assert!(explicit.validate(&g).is_ok());
        assert_eq!(
            FamilyDescriptor::Explicit(vec![EdgeSet::new(3)]).validate(&g),
            Err(FamilyError::EmptyMember(0))
        );
    }
}

//! On-disk formats: complexes as JSON or plain text, groups as Cayley
//! tables or permutation generators, subgroup families as element-index
//! lists referencing a group file.

use serde::Deserialize;
use thiserror::Error;

use crate::groups::{FiniteGroup, GroupError, Subgroup};
use crate::simplicial::{Face, SimplicialComplex, SimplicialError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Complex(#[from] SimplicialError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("subgroup {index} is invalid: {reason}")]
    BadSubgroup { index: usize, reason: String },
}

#[derive(Deserialize)]
struct ComplexFile {
    n: usize,
    facets: Vec<Vec<usize>>,
}

/// Accepts either the JSON form `{"n": 3, "facets": [[1,2],[3]]}` or the
/// plain-text form: first line the vertex count, one facet of
/// space-separated 1-based labels per line.
pub fn parse_complex(input: &str) -> Result<SimplicialComplex, IoError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let file: ComplexFile =
            serde_json::from_str(trimmed).map_err(|e| IoError::Parse(e.to_string()))?;
        let facets = file.facets.into_iter().map(Face::new).collect();
        return Ok(SimplicialComplex::from_facets(file.n, facets)?);
    }
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| IoError::Parse("empty complex file".into()))?
        .parse()
        .map_err(|e| IoError::Parse(format!("bad vertex count: {e}")))?;
    let mut facets = Vec::new();
    for (idx, line) in lines.enumerate() {
        let verts: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let verts = verts.map_err(|e| IoError::Parse(format!("facet line {}: {e}", idx + 2)))?;
        facets.push(Face::new(verts));
    }
    Ok(SimplicialComplex::from_facets(n, facets)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    #[serde(default)]
    cayley: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    perm_degree: Option<usize>,
    #[serde(default)]
    generators: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

/// Group files carry either `{"cayley": [[...]]}` with 0-based indices and
/// the identity at 0, or `{"perm_degree": d, "generators": [...]}` where
/// each generator is a list of cycles of 1-based points.
pub fn parse_group(input: &str, seed: u64) -> Result<FiniteGroup, IoError> {
    let file: GroupFile = serde_json::from_str(input).map_err(|e| IoError::Parse(e.to_string()))?;
    let mut group = match (file.cayley, file.perm_degree, file.generators) {
        (Some(table), None, None) => FiniteGroup::from_cayley_seeded(table, seed)?,
        (None, Some(degree), Some(gens)) => {
            let perms: Result<Vec<Vec<usize>>, IoError> = gens
                .iter()
                .map(|cycles| permutation_from_cycles(degree, cycles))
                .collect();
            FiniteGroup::from_permutations(degree, &perms?)?
        }
        _ => {
            return Err(IoError::Parse(
                "expected either \"cayley\" or \"perm_degree\" with \"generators\"".into(),
            ))
        }
    };
    if let Some(names) = file.names {
        if names.len() != group.order() {
            return Err(IoError::Parse(format!(
                "{} names for a group of order {}",
                names.len(),
                group.order()
            )));
        }
        group.set_names(names);
    }
    Ok(group)
}

fn permutation_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, IoError> {
    let mut perm: Vec<usize> = (1..=degree).collect();
    for cycle in cycles {
        for &p in cycle {
            if p == 0 || p > degree {
                return Err(IoError::Parse(format!(
                    "cycle point {p} out of 1..={degree}"
                )));
            }
        }
        for w in cycle.windows(2) {
            if perm[w[0] - 1] != w[0] {
                return Err(IoError::Parse("cycles are not disjoint".into()));
            }
            perm[w[0] - 1] = w[1];
        }
        if cycle.len() > 1 {
            let last = *cycle.last().unwrap();
            if perm[last - 1] != last {
                return Err(IoError::Parse("cycles are not disjoint".into()));
            }
            perm[last - 1] = cycle[0];
        }
    }
    Ok(perm)
}

#[derive(Deserialize)]
struct SubgroupsFile {
    subgroups: Vec<Vec<usize>>,
}

/// `{"subgroups": [[0,1],[0,2,4],...]}` with 0-based element indices into
/// the companion group. Each list is validated as an honest subgroup.
pub fn parse_subgroups(input: &str, group: &FiniteGroup) -> Result<Vec<Subgroup>, IoError> {
    let file: SubgroupsFile =
        serde_json::from_str(input).map_err(|e| IoError::Parse(e.to_string()))?;
    let mut out = Vec::new();
    for (index, elements) in file.subgroups.into_iter().enumerate() {
        if let Some(&bad) = elements.iter().find(|&&e| e >= group.order()) {
            return Err(IoError::BadSubgroup {
                index,
                reason: format!("element index {bad} out of range"),
            });
        }
        let closed = group.generated_subgroup(&elements);
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if !sorted.contains(&0) {
            sorted.insert(0, 0);
        }
        if closed.elements() != sorted.as_slice() {
            return Err(IoError::BadSubgroup {
                index,
                reason: "element set is not closed under the group operations".into(),
            });
        }
        out.push(closed);
    }
    Ok(out)
}

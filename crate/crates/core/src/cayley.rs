//! Connection sets, Cayley graphs and their right-translation automorphisms.

use std::fmt;

use serde::Serialize;

use crate::budget::{Deadline, Search, TimedOut};
use crate::error::GroupError;
use crate::graph::Graph;
use crate::group::FiniteGroup;
use crate::iso::{are_isomorphic, VertexMapping};

/// An identity-free, inverse-closed subset of a group. Members are sorted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ConnectionSet {
    members: Vec<usize>,
}

impl ConnectionSet {
    /// Validates `members` against `group`; each violated clause has its own error.
    pub fn new(group: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self, GroupError> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| !group.contains(x)) {
            return Err(GroupError::ElementOutOfRange {
                element: x,
                order: group.order(),
            });
        }
        if members.contains(&group.identity()) {
            return Err(GroupError::IdentityInConnectionSet);
        }
        if let Some(&x) = members.iter().find(|&&x| members.binary_search(&group.inv(x)).is_err()) {
            return Err(GroupError::NotInverseClosed {
                element: x,
                inverse: group.inv(x),
            });
        }
        if members.len() >= group.order() {
            return Err(GroupError::NotProper);
        }
        Ok(ConnectionSet { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Parses a comma-separated element list (`1,4`); `-` or the empty string is the empty set.
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<Self, GroupError> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return ConnectionSet::new(group, []);
        }
        let mut members = Vec::new();
        let mut column = 1;
        for tok in text.split(',') {
            let x = tok.trim().parse::<usize>().map_err(|_| GroupError::Parse {
                line: 1,
                column,
                message: format!("invalid element `{tok}`"),
            })?;
            members.push(x);
            column += tok.len() + 1;
        }
        ConnectionSet::new(group, members)
    }
}

impl fmt::Debug for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.members.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.members.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The classes `{x, x^-1}` of non-identity elements, ordered by smallest member.
pub fn inverse_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for x in 0..group.order() {
        let y = group.inv(x);
        if x == group.identity() || y < x {
            continue;
        }
        out.push(if x == y { vec![x] } else { vec![x, y] });
    }
    out
}

/// Every valid connection set of `group`, ordered by size and then lexicographically.
pub fn connection_sets(group: &FiniteGroup) -> Vec<ConnectionSet> {
    let classes = inverse_classes(group);
    let mut sets: Vec<ConnectionSet> = (0u64..1 << classes.len())
        .map(|mask| {
            let mut members: Vec<usize> = classes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, c)| c.iter().copied())
                .collect();
            members.sort_unstable();
            ConnectionSet { members }
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    sets
}

/// Connection sets of exactly `size` elements, in the same order as [`connection_sets`].
pub fn connection_sets_of_size(group: &FiniteGroup, size: usize) -> Vec<ConnectionSet> {
    let classes = inverse_classes(group);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(classes: &[Vec<usize>], start: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<ConnectionSet>) {
        if left == 0 {
            let mut members = chosen.clone();
            members.sort_unstable();
            out.push(ConnectionSet { members });
            return;
        }
        for i in start..classes.len() {
            if classes[i].len() <= left {
                chosen.extend(&classes[i]);
                rec(classes, i + 1, left - classes[i].len(), chosen, out);
                chosen.truncate(chosen.len() - classes[i].len());
            }
        }
    }
    rec(&classes, 0, size, &mut chosen, &mut out);
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// `X(G, C)`: vertices are group elements, `x ~ y` iff `x y^-1` is in `C`.
pub fn cayley_graph(group: &FiniteGroup, c: &ConnectionSet) -> Graph {
    let n = group.order();
    let rows = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| c.contains(group.mul(x, group.inv(y))))
                .fold(0u64, |acc, y| acc | 1 << y)
        })
        .collect();
    Graph::from_rows(rows)
}

/// The permutation `x -> x * elem`.
pub fn right_translation(group: &FiniteGroup, elem: usize) -> Result<VertexMapping, GroupError> {
    if !group.contains(elem) {
        return Err(GroupError::ElementOutOfRange {
            element: elem,
            order: group.order(),
        });
    }
    Ok(VertexMapping::new_unchecked((0..group.order()).map(|x| group.mul(x, elem)).collect()))
}

/// Right translation by `a^-1 b`, which sends `a` to `b`.
pub fn transitive_witness(group: &FiniteGroup, a: usize, b: usize) -> Result<VertexMapping, GroupError> {
    for x in [a, b] {
        if !group.contains(x) {
            return Err(GroupError::ElementOutOfRange {
                element: x,
                order: group.order(),
            });
        }
    }
    right_translation(group, group.mul(group.inv(a), b))
}

/// A group from `groups` and a connection set whose Cayley graph is isomorphic to `x`.
///
/// `groups` must contain every isomorphism class of order `|x|` for an absent
/// answer to mean "not a Cayley graph". Only connection sets of size equal to
/// the valency are tried.
pub fn is_cayley(x: &Graph, groups: &[FiniteGroup]) -> Result<Option<(FiniteGroup, ConnectionSet)>, GroupError> {
    is_cayley_within(x, groups, &Deadline::never()).map(Search::into_option)
}

pub fn is_cayley_within(
    x: &Graph,
    groups: &[FiniteGroup],
    deadline: &Deadline,
) -> Result<Search<(FiniteGroup, ConnectionSet)>, GroupError> {
    if let Some(g) = groups.iter().find(|g| g.order() != x.order()) {
        return Err(GroupError::OrderMismatch {
            group: g.order(),
            graph: x.order(),
        });
    }
    let Ok(d) = x.valency() else {
        return Ok(Search::Absent);
    };
    let search = || -> Result<Option<(FiniteGroup, ConnectionSet)>, TimedOut> {
        for group in groups {
            for c in connection_sets_of_size(group, d) {
                deadline.tick()?;
                if are_isomorphic(&cayley_graph(group, &c), x).is_some() {
                    return Ok(Some((group.clone(), c)));
                }
            }
        }
        Ok(None)
    };
    Ok(search().into())
}

//! Isomorphism, automorphism generators, orbits and vertex-transitivity.
//!
//! Both searches use individualization + colour refinement. Two colourings (one
//! per graph) are refined jointly, with new colours assigned by sorting the
//! combined signatures, so colour ids never depend on vertex labels. A branch is
//! cut as soon as the colour histograms of the two sides differ. Candidates are
//! tried in ascending vertex order, so every witness is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{is_permutation, Graph, VertexSet};

/// A bijection `v -> images[v]` between vertex sets of equal size.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexMapping {
    images: Vec<usize>,
}

impl VertexMapping {
    pub fn identity(n: usize) -> Self {
        VertexMapping {
            images: (0..n).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self, GraphError> {
        if !is_permutation(&images) {
            return Err(GraphError::NotAPermutation);
        }
        Ok(VertexMapping { images })
    }

    pub(crate) fn new_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&images));
        VertexMapping { images }
    }

    #[inline]
    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` first, then `then`.
    pub fn then(&self, then: &VertexMapping) -> VertexMapping {
        VertexMapping {
            images: self.images.iter().map(|&v| then.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> VertexMapping {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        VertexMapping { images: inv }
    }

    pub fn power(&self, k: usize) -> VertexMapping {
        let mut out = VertexMapping::identity(self.len());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut order = 1usize;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.images[v];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    pub fn map_set(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.images[v]).collect()
    }

    /// Whether this mapping is an isomorphism from `g` onto `h`.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        g.order() == h.order()
            && self.len() == g.order()
            && g.edge_count() == h.edge_count()
            && g.edges().all(|(u, v)| h.has_edge(self.image(u), self.image(v)))
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.is_isomorphism(g, g)
    }
}

impl fmt::Debug for VertexMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Partition of the vertex set into automorphism orbits, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, v: usize) -> Option<&[usize]> {
        self.orbits.iter().find(|o| o.contains(&v)).map(Vec::as_slice)
    }

    pub fn from_generators(n: usize, generators: &[VertexMapping]) -> Self {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in generators {
            for v in 0..n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g.image(v)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        OrbitPartition {
            orbits: groups.into_values().collect(),
        }
    }
}

type Colouring = Vec<u32>;

/// Refines `cg` (on `g`) and `ch` (on `h`) jointly to the coarsest equitable
/// colouring. Returns `false` as soon as the two colour histograms differ.
fn refine(g: &Graph, cg: &mut Colouring, h: &Graph, ch: &mut Colouring) -> bool {
    let n = g.order();
    normalise(cg, ch);
    let mut k = colour_count(cg, ch);
    loop {
        let classes_g = classes(cg, k);
        let classes_h = classes(ch, k);
        let sig = |graph: &Graph, col: &Colouring, cls: &[u64], v: usize| {
            let row = graph.neighbors(v).bits();
            let mut s = Vec::with_capacity(k + 1);
            s.push(col[v]);
            s.extend(cls.iter().map(|c| (row & c).count_ones()));
            s
        };
        let sg: Vec<Vec<u32>> = (0..n).map(|v| sig(g, cg, &classes_g, v)).collect();
        let sh: Vec<Vec<u32>> = (0..n).map(|v| sig(h, ch, &classes_h, v)).collect();
        let mut ids: BTreeMap<&[u32], u32> = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            ids.entry(s.as_slice()).or_insert(0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        let new_k = ids.len();
        let mut hist = vec![0i32; new_k];
        for v in 0..n {
            cg[v] = ids[sg[v].as_slice()];
            ch[v] = ids[sh[v].as_slice()];
            hist[cg[v] as usize] += 1;
            hist[ch[v] as usize] -= 1;
        }
        if hist.iter().any(|&x| x != 0) {
            return false;
        }
        if new_k == k {
            return true;
        }
        k = new_k;
    }
}

fn refine_single(g: &Graph, c: &mut Colouring) {
    let mut twin = c.clone();
    let ok = refine(g, c, g, &mut twin);
    debug_assert!(ok);
}

/// Renumbers colours densely (order preserving) over both colourings.
fn normalise(cg: &mut Colouring, ch: &mut Colouring) {
    let mut used: Vec<u32> = cg.iter().chain(ch.iter()).copied().collect();
    used.sort_unstable();
    used.dedup();
    for c in cg.iter_mut().chain(ch.iter_mut()) {
        *c = used.binary_search(c).unwrap() as u32;
    }
}

fn colour_count(cg: &Colouring, ch: &Colouring) -> usize {
    cg.iter().chain(ch.iter()).map(|&c| c as usize + 1).max().unwrap_or(0)
}

fn classes(col: &Colouring, k: usize) -> Vec<u64> {
    let mut cls = vec![0u64; k];
    for (v, &c) in col.iter().enumerate() {
        cls[c as usize] |= 1 << v;
    }
    cls
}

/// First smallest non-singleton cell, as (colour, members).
fn target_cell(col: &Colouring) -> Option<(u32, VertexSet)> {
    let k = col.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    classes(col, k)
        .into_iter()
        .enumerate()
        .filter(|(_, m)| m.count_ones() > 1)
        .min_by_key(|(c, m)| (m.count_ones(), *c))
        .map(|(c, m)| (c as u32, VertexSet::from_bits(m)))
}

fn individualise(col: &mut Colouring, v: usize) {
    let fresh = col.iter().copied().max().map_or(0, |m| m + 1);
    col[v] = fresh;
}

/// Depth-first search for an isomorphism compatible with the given colourings.
fn extend(g: &Graph, mut cg: Colouring, h: &Graph, mut ch: Colouring) -> Option<VertexMapping> {
    if !refine(g, &mut cg, h, &mut ch) {
        return None;
    }
    match target_cell(&cg) {
        None => {
            let mut by_colour = vec![0; h.order()];
            for (w, &c) in ch.iter().enumerate() {
                by_colour[c as usize] = w;
            }
            let map = VertexMapping::new_unchecked(cg.iter().map(|&c| by_colour[c as usize]).collect());
            map.is_isomorphism(g, h).then_some(map)
        }
        Some((colour, cell)) => {
            let v = cell.first().unwrap();
            (0..h.order()).filter(|&w| ch[w] == colour).find_map(|w| {
                let (mut cg2, mut ch2) = (cg.clone(), ch.clone());
                individualise(&mut cg2, v);
                individualise(&mut ch2, w);
                extend(g, cg2, h, ch2)
            })
        }
    }
}

/// An isomorphism from `g` onto `h`, if one exists.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<VertexMapping> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() || g.degree_multiset() != h.degree_multiset() {
        return None;
    }
    let n = g.order();
    extend(g, vec![0; n], h, vec![0; n])
}

/// Strong generating set for the automorphism group, with the base used.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    n: usize,
    generators: Vec<VertexMapping>,
    base: Vec<usize>,
    basic_orbit_sizes: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn generators(&self) -> &[VertexMapping] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    /// Group order as the product of basic orbit lengths; `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        self.basic_orbit_sizes
            .iter()
            .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
    }

    pub fn orbits(&self) -> OrbitPartition {
        OrbitPartition::from_generators(self.n, &self.generators)
    }
}

/// Generators of the full automorphism group of `g`.
///
/// Walks a base `b_1, b_2, ...` (each the smallest vertex of the first smallest
/// non-singleton cell after fixing the previous ones; `b_1 = 0` for
/// vertex-transitive graphs). From the deepest level upward, every cell mate of
/// `b_i` not yet reached by the generators found so far is tried as an image of
/// `b_i` with `b_1..b_{i-1}` fixed. The result is a strong generating set, so its
/// closure is the whole group.
pub fn automorphism_group(g: &Graph) -> AutomorphismGroup {
    let n = g.order();
    let mut col = vec![0u32; n];
    refine_single(g, &mut col);
    let mut levels: Vec<(Colouring, usize, VertexSet)> = Vec::new();
    while let Some((_, cell)) = target_cell(&col) {
        let b = cell.first().unwrap();
        levels.push((col.clone(), b, cell));
        individualise(&mut col, b);
        refine_single(g, &mut col);
    }

    let mut generators: Vec<VertexMapping> = Vec::new();
    let mut sizes = vec![0; levels.len()];
    for (i, (col, b, cell)) in levels.iter().enumerate().rev() {
        let mut orbit = orbit_of(*b, n, &generators);
        for c in cell.iter() {
            if orbit.contains(c) {
                continue;
            }
            let (mut from, mut to) = (col.clone(), col.clone());
            individualise(&mut from, *b);
            individualise(&mut to, c);
            if let Some(sigma) = extend(g, from, g, to) {
                generators.push(sigma);
                orbit = orbit_of(*b, n, &generators);
            }
        }
        sizes[i] = orbit.len();
    }
    generators.reverse();
    AutomorphismGroup {
        n,
        generators,
        base: levels.iter().map(|l| l.1).collect(),
        basic_orbit_sizes: sizes,
    }
}

fn orbit_of(v: usize, n: usize, gens: &[VertexMapping]) -> VertexSet {
    let mut orbit = VertexSet::singleton(v);
    if n == 0 {
        return orbit;
    }
    let mut frontier = orbit;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for x in frontier {
            for g in gens {
                let y = g.image(x);
                if !orbit.contains(y) {
                    next.insert(y);
                }
            }
        }
        orbit = orbit.union(next);
        frontier = next;
    }
    orbit
}

pub fn automorphism_generators(g: &Graph) -> Vec<VertexMapping> {
    automorphism_group(g).generators
}

/// Vertex-transitivity: the orbit of vertex 0 is the whole vertex set.
/// The orbit partition is returned in either case.
pub fn is_vertex_transitive(g: &Graph) -> (bool, OrbitPartition) {
    let orbits = automorphism_group(g).orbits();
    (orbits.len() <= 1, orbits)
}

/// Closure of a set of permutations, or `None` once it exceeds `limit` elements.
pub fn closure(n: usize, generators: &[VertexMapping], limit: usize) -> Option<Vec<VertexMapping>> {
    let id = VertexMapping::identity(n);
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        for g in generators {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if out.len() == limit {
                    return None;
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Some(out)
}

/// Isomorphism invariant of a vertex-transitive graph: the equitable colouring
/// obtained after individualising one vertex, as a quotient matrix. Any vertex
/// gives the same value, so vertex 0 is used.
pub fn transitive_invariant(g: &Graph) -> Vec<u32> {
    let n = g.order();
    let mut col = vec![0u32; n];
    if n > 0 {
        col[0] = 1;
    }
    refine_single(g, &mut col);
    let k = col.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let cls = classes(&col, k);
    let mut out = vec![n as u32, k as u32];
    for c in &cls {
        out.push(c.count_ones());
        let v = c.trailing_zeros() as usize;
        let row = g.neighbors(v).bits();
        out.extend(cls.iter().map(|d| (row & d).count_ones()));
    }
    out
}

//! Finite groups as explicit multiplication tables.
//!
//! Built-in constructors cover cyclic, dihedral, dicyclic, direct and
//! semidirect products, and closures of permutation generators. Together they
//! give one representative of every isomorphism class of order at most 16:
//!
//! | order | groups |
//! |------:|--------|
//! | 1  | `Z1` |
//! | 2  | `Z2` |
//! | 3  | `Z3` |
//! | 4  | `Z4`, `Z2xZ2` |
//! | 5  | `Z5` |
//! | 6  | `Z6`, `D3` |
//! | 7  | `Z7` |
//! | 8  | `Z8`, `Z4xZ2`, `Z2xZ2xZ2`, `D4`, `Q8` |
//! | 9  | `Z9`, `Z3xZ3` |
//! | 10 | `Z10`, `D5` |
//! | 11 | `Z11` |
//! | 12 | `Z12`, `Z6xZ2`, `D6`, `A4`, `Dic3` |
//! | 13 | `Z13` |
//! | 14 | `Z14`, `D7` |
//! | 15 | `Z15` |
//! | 16 | `Z16`, `Z4xZ4`, `Z2^2:Z4`, `Z4:Z4`, `Z8xZ2`, `M16`, `D8`, `SD16`, `Q16`, `Z4xZ2xZ2`, `D4xZ2`, `Q8xZ2`, `Pauli`, `Z2^4` |
//!
//! `Dn` is the dihedral group of order `2n`. `Z2^2:Z4` is `(Z4 x Z2) : Z2`
//! with the involution `a -> ab`; `Pauli` is the central product of `D4` and
//! `Z4` (the same semidirect shape with `b -> a^2 b`).

use std::fmt;
use std::str::FromStr;

use crate::error::GroupError;
use crate::graph::MAX_VERTICES;
use crate::iso::VertexMapping;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table: square, in range, identity, inverses, associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if order > MAX_VERTICES {
            return Err(GroupError::TooLarge(order));
        }
        if rows.iter().any(|r| r.len() != order || r.iter().any(|&x| x >= order)) {
            return Err(GroupError::MalformedTable(order));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let at = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inverses.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: format!("G{order}"),
            order,
            table,
            identity,
            inverses,
        })
    }

    /// Builds from a product rule known to define a group with identity 0.
    fn from_rule(name: String, order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<usize> = (0..order).flat_map(|a| (0..order).map(move |b| (a, b))).map(|(a, b)| mul(a, b)).collect();
        let inverses = (0..order)
            .map(|x| (0..order).find(|&y| table[x * order + y] == 0).expect("group rule without inverses"))
            .collect();
        let g = FiniteGroup {
            name,
            order,
            table,
            identity: 0,
            inverses,
        };
        debug_assert!(g.check_associative());
        g
    }

    fn check_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, ascending.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        check_order(n)?;
        Ok(Self::from_rule(format!("Z{n}"), n, |a, b| (a + b) % n))
    }

    /// Dihedral group of order `2n`: `r^i s^j` is element `i + n*j`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidParameters("dihedral group needs n >= 1".into()));
        }
        check_order(2 * n)?;
        Ok(Self::from_rule(format!("D{n}"), 2 * n, |a, b| {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            rot + n * ((j + l) % 2)
        }))
    }

    /// Dicyclic group of order `4m`: `<a, x | a^{2m}, x^2 = a^m, x a x^-1 = a^-1>`.
    /// `Dic2` is `Q8`, `Dic4` is the generalized quaternion group `Q16`.
    pub fn dicyclic(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::InvalidParameters("dicyclic group needs m >= 1".into()));
        }
        check_order(4 * m)?;
        let t = 2 * m;
        Ok(Self::from_rule(format!("Dic{m}"), 4 * m, |a, b| {
            let (i, j) = (a % t, a / t);
            let (k, l) = (b % t, b / t);
            match (j, l) {
                (0, _) => (i + k) % t + t * l,
                (_, 0) => (i + t - k) % t + t,
                _ => (i + t - k + m) % t,
            }
        }))
    }

    /// `(a, b)` is element `a * |right| + b`.
    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> Result<Self, GroupError> {
        let (p, q) = (left.order, right.order);
        check_order(p * q)?;
        let split = |x: usize| (x / q, x % q);
        let name = format!("{}x{}", left.name, right.name);
        let mut g = Self::from_rule(name, p * q, |x, y| {
            let ((a1, b1), (a2, b2)) = (split(x), split(y));
            left.mul(a1, a2) * q + right.mul(b1, b2)
        });
        g.identity = left.identity * q + right.identity;
        g.inverses = (0..p * q)
            .map(|x| {
                let (a, b) = split(x);
                left.inv(a) * q + right.inv(b)
            })
            .collect();
        Ok(g)
    }

    /// `normal : Z_k` where the generator of `Z_k` acts by the automorphism
    /// `action` (given as images of the elements of `normal`). Element `(x, i)`
    /// is numbered `i * |normal| + x`.
    pub fn semidirect_cyclic(normal: &FiniteGroup, k: usize, action: &[usize]) -> Result<Self, GroupError> {
        let n = normal.order;
        check_order(n * k)?;
        if normal.identity != 0 {
            return Err(GroupError::InvalidParameters("normal subgroup must have identity 0".into()));
        }
        let phi = VertexMapping::new(action.to_vec())
            .map_err(|_| GroupError::InvalidParameters("action is not a permutation".into()))?;
        let is_auto = (0..n).all(|a| (0..n).all(|b| phi.image(normal.mul(a, b)) == normal.mul(phi.image(a), phi.image(b))));
        if !is_auto || !phi.power(k).is_identity() {
            return Err(GroupError::InvalidParameters("action is not an automorphism of order dividing k".into()));
        }
        let powers: Vec<VertexMapping> = (0..k).map(|i| phi.power(i)).collect();
        let name = format!("{}:Z{k}", normal.name);
        Ok(Self::from_rule(name, n * k, |a, b| {
            let (x1, i1) = (a % n, a / n);
            let (x2, i2) = (b % n, b / n);
            normal.mul(x1, powers[i1].image(x2)) + n * ((i1 + i2) % k)
        }))
    }

    /// Closure of permutations of `0..degree`; the identity is element 0.
    pub fn from_permutations(generators: &[Vec<usize>], degree: usize) -> Result<Self, GroupError> {
        let gens = generators
            .iter()
            .map(|g| {
                if g.len() != degree {
                    return Err(GroupError::InvalidParameters("generator has wrong degree".into()));
                }
                VertexMapping::new(g.clone()).map_err(|_| GroupError::InvalidParameters("generator is not a permutation".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let elements = crate::iso::closure(degree, &gens, MAX_VERTICES).ok_or(GroupError::TooLarge(MAX_VERTICES + 1))?;
        let index: std::collections::HashMap<&VertexMapping, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let order = elements.len();
        Ok(Self::from_rule(format!("Perm{order}"), order, |a, b| index[&elements[a].then(&elements[b])]))
    }

    /// Parses a built-in name such as `Z5`, `D4`, `Q8`, `A4`, `Z2xZ4`, `Z2^4`.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownName(name.to_string());
        let g = match name {
            "Q8" => Self::dicyclic(2)?,
            "Q16" => Self::dicyclic(4)?,
            "A4" => Self::from_permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], 4)?,
            "M16" => Self::semidirect_cyclic(&Self::cyclic(8)?, 2, &mult_map(8, 5))?,
            "SD16" => Self::semidirect_cyclic(&Self::cyclic(8)?, 2, &mult_map(8, 3))?,
            "Z4:Z4" => Self::semidirect_cyclic(&Self::cyclic(4)?, 4, &mult_map(4, 3))?,
            "Z2^2:Z4" => {
                // N = Z4 x Z2 = <a> x <b>, element (i, j) = 2i + j; a -> ab, b -> b.
                let n = Self::direct_product(&Self::cyclic(4)?, &Self::cyclic(2)?)?;
                let action: Vec<usize> = (0..8).map(|x| (x / 2) * 2 + (x % 2 + x / 2) % 2).collect();
                Self::semidirect_cyclic(&n, 2, &action)?
            }
            "Pauli" => {
                // a -> a, b -> a^2 b: the central product of D4 and Z4.
                let n = Self::direct_product(&Self::cyclic(4)?, &Self::cyclic(2)?)?;
                let action: Vec<usize> = (0..8).map(|x| ((x / 2 + 2 * (x % 2)) % 4) * 2 + x % 2).collect();
                Self::semidirect_cyclic(&n, 2, &action)?
            }
            _ if name.contains('x') => {
                let mut parts = name.split('x');
                let first = Self::builtin(parts.next().ok_or_else(unknown)?)?;
                parts.try_fold(first, |acc, p| Self::direct_product(&acc, &Self::builtin(p)?))?
            }
            _ if name.contains('^') => {
                let (base, exp) = name.split_once('^').ok_or_else(unknown)?;
                let exp: usize = exp.parse().map_err(|_| unknown())?;
                if exp == 0 {
                    return Err(unknown());
                }
                let b = Self::builtin(base)?;
                (1..exp).try_fold(b.clone(), |acc, _| Self::direct_product(&acc, &b))?
            }
            _ => {
                let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
                if let Some(n) = num("Dic") {
                    Self::dicyclic(n)?
                } else if let Some(n) = num("Z") {
                    Self::cyclic(n)?
                } else if let Some(n) = num("D") {
                    Self::dihedral(n)?
                } else {
                    return Err(unknown());
                }
            }
        };
        Ok(g.with_name(name))
    }
}

fn check_order(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        Err(GroupError::EmptyGroup)
    } else if n > MAX_VERTICES {
        Err(GroupError::TooLarge(n))
    } else {
        Ok(())
    }
}

/// `x -> r x` on `Z_n`.
fn mult_map(n: usize, r: usize) -> Vec<usize> {
    (0..n).map(|x| x * r % n).collect()
}

const BUILTIN_NAMES: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "D3", "Z7", "Z8", "Z4xZ2", "Z2xZ2xZ2", "D4", "Q8", "Z9", "Z3xZ3", "Z10",
    "D5", "Z11", "Z12", "Z6xZ2", "D6", "A4", "Dic3", "Z13", "Z14", "D7", "Z15", "Z16", "Z4xZ4", "Z2^2:Z4", "Z4:Z4",
    "Z8xZ2", "M16", "D8", "SD16", "Q16", "Z4xZ2xZ2", "D4xZ2", "Q8xZ2", "Pauli", "Z2^4",
];

/// Largest order for which [`builtin_groups`] is complete.
pub const MAX_BUILTIN_ORDER: usize = 16;

/// One group per isomorphism class, for every order up to `max_order` (at most 16),
/// ordered by group order and then by the table in the module docs.
pub fn builtin_groups(max_order: usize) -> Vec<FiniteGroup> {
    BUILTIN_NAMES
        .iter()
        .map(|n| FiniteGroup::builtin(n).expect("built-in group table"))
        .filter(|g| g.order() <= max_order)
        .collect()
}

pub fn groups_of_order(order: usize) -> Vec<FiniteGroup> {
    builtin_groups(order).into_iter().filter(|g| g.order() == order).collect()
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// `order <k>` followed by `k` rows of the multiplication table.
impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        for row in self.table.chunks(self.order) {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for FiniteGroup {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<Self, GroupError> {
        let err = |line, column, message: &str| GroupError::Parse {
            line,
            column,
            message: message.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| err(1, 1, "empty input, expected `order <k>`"))?;
        let order: usize = header
            .strip_prefix("order ")
            .ok_or_else(|| err(1, 1, "expected `order <k>`"))?
            .parse()
            .map_err(|_| err(1, 7, "invalid order"))?;
        let mut rows = Vec::with_capacity(order);
        for i in 0..order {
            let line = lines.next().ok_or_else(|| err(i + 2, 1, "missing table row"))?;
            let mut row = Vec::with_capacity(order);
            let mut column = 1;
            for tok in line.split(' ') {
                row.push(tok.parse::<usize>().map_err(|_| err(i + 2, column, "invalid element index"))?);
                column += tok.len() + 1;
            }
            if row.len() != order {
                return Err(err(i + 2, 1, "row has the wrong number of entries"));
            }
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            if !extra.is_empty() {
                return Err(err(order + 2, 1, "unexpected trailing line"));
            }
        }
        FiniteGroup::from_table(rows)
    }
}

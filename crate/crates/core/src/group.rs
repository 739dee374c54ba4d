//! Finite groups stored as full multiplication tables.
//!
//! Element ids are `0..order`. Each built-in family uses a fixed ordering so
//! reports are reproducible:
//!
//! * `cyclic m`: residues `0..m` ascending, identity `0`.
//! * `symmetric k`: permutations of `0..k` in lexicographic one-line order,
//!   identity `0`; `mul(a, b)` is the composite "apply `b`, then `a`".
//! * `product(G, H)`: pair `(g, h)` has id `g * |H| + h`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Id of a group element.
pub type Elem = usize;

/// Largest `k` accepted for `symmetric k` (720 elements).
pub const MAX_SYMMETRIC_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    Ragged {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry mul({a}, {b}) = {value} is not an element of a group of order {order}")]
    EntryOutOfRange {
        a: Elem,
        b: Elem,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("symmetric degree {0} unsupported (1..={MAX_SYMMETRIC_DEGREE})")]
    SymmetricDegree(usize),
    #[error("cannot parse group description `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("modulus chain must be nonempty")]
    EmptyTower,
    #[error("{lower} does not divide {upper}")]
    NotDivisible { lower: usize, upper: usize },
    #[error("towers of different depth ({0} vs {1})")]
    DepthMismatch(usize, usize),
    #[error("projection {level} is not a homomorphism: fails on ({a}, {b})")]
    ProjectionNotHomomorphism { level: usize, a: Elem, b: Elem },
    #[error("projection {level} is not surjective: {missing} has no preimage")]
    ProjectionNotSurjective { level: usize, missing: Elem },
    #[error("projection {level} has wrong shape")]
    ProjectionShape { level: usize },
}

/// How associativity of an explicit table is checked.
///
/// Exhaustive up to `exhaustive_limit`, otherwise `samples` random triples
/// drawn from a ChaCha8 stream seeded with `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssocCheck {
    pub exhaustive_limit: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AssocCheck {
    fn default() -> Self {
        AssocCheck {
            exhaustive_limit: 64,
            samples: 200_000,
            seed: 0,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    identity: Elem,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            mul: vec![0],
            inv: vec![0],
            identity: 0,
            label: "trivial".into(),
        }
    }

    pub fn cyclic(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::Empty);
        }
        let mul = (0..m * m).map(|i| (i / m + i % m) % m).collect();
        let inv = (0..m).map(|a| (m - a) % m).collect();
        Ok(FiniteGroup {
            order: m,
            mul,
            inv,
            identity: 0,
            label: format!("cyclic {m}"),
        })
    }

    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::SymmetricDegree(k));
        }
        let perms = permutations_lex(k);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let n = perms.len();
        let mut mul = vec![0; n * n];
        let mut inv = vec![0; n];
        for (a, pa) in perms.iter().enumerate() {
            let mut pinv = vec![0; k];
            for (i, &x) in pa.iter().enumerate() {
                pinv[x] = i;
            }
            inv[a] = index(&pinv);
            for (b, pb) in perms.iter().enumerate() {
                let composite: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
                mul[a * n + b] = index(&composite);
            }
        }
        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            identity: 0,
            label: format!("symmetric {k}"),
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let split = |x: Elem| (x / nb, x % nb);
        let mut mul = vec![0; n * n];
        for x in 0..n {
            let (xa, xb) = split(x);
            for y in 0..n {
                let (ya, yb) = split(y);
                mul[x * n + y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
            }
        }
        let inv = (0..n)
            .map(|x| {
                let (xa, xb) = split(x);
                a.inv(xa) * nb + b.inv(xb)
            })
            .collect();
        FiniteGroup {
            order: n,
            mul,
            inv,
            identity: a.identity * nb + b.identity,
            label: format!("product({}, {})", a.label, b.label),
        }
    }

    /// Validates an explicit multiplication table. Rows are indexed by the
    /// left factor.
    pub fn from_table(
        table: &[Vec<Elem>],
        label: impl Into<String>,
        check: &AssocCheck,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Ragged {
                    row: a,
                    len: row.len(),
                    order: n,
                });
            }
            for (b, &value) in row.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange {
                        a,
                        b,
                        value,
                        order: n,
                    });
                }
                mul.push(value);
            }
        }
        let at = |a: Elem, b: Elem| mul[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        let inv = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| at(g, h) == identity && at(h, g) == identity)
                    .ok_or(GroupError::NoInverse(g))
            })
            .collect::<Result<Vec<_>, _>>()?;

        let assoc_fails = |a: Elem, b: Elem, c: Elem| at(at(a, b), c) != at(a, at(b, c));
        if n <= check.exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if assoc_fails(a, b, c) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(check.seed);
            for _ in 0..check.samples {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if assoc_fails(a, b, c) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }

        Ok(FiniteGroup {
            order: n,
            mul,
            inv,
            identity,
            label: label.into(),
        })
    }

    /// Parses the text table format: first line is the order, followed by
    /// `order` rows of space-separated decimal ids.
    pub fn from_table_text(
        text: &str,
        label: &str,
        check: &AssocCheck,
    ) -> Result<Self, GroupError> {
        let parse_err = |reason: String| GroupError::Parse {
            input: label.to_string(),
            reason,
        };
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let order: usize = lines
            .next()
            .ok_or_else(|| parse_err("missing order line".into()))?
            .trim()
            .parse()
            .map_err(|e| parse_err(format!("bad order: {e}")))?;
        let rows = parse_rows(lines).map_err(parse_err)?;
        if rows.len() != order {
            return Err(parse_err(format!(
                "expected {order} rows, found {}",
                rows.len()
            )));
        }
        Self::from_table(&rows, label, check)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn pow(&self, g: Elem, n: usize) -> Elem {
        (0..n).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    /// Least `n >= 1` with `g^n = identity`.
    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// `k * x * k⁻¹`.
    pub fn conjugate(&self, k: Elem, x: Elem) -> Elem {
        self.mul(self.mul(k, x), self.inv(k))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted ascending.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
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
        self.elements().filter(|&g| seen[g]).collect()
    }

    /// Whether `subset` is a subgroup.
    pub fn is_subgroup(&self, subset: &[Elem]) -> bool {
        if subset.iter().any(|&g| g >= self.order) || !subset.contains(&self.identity) {
            return false;
        }
        subset.iter().all(|&a| {
            subset
                .iter()
                .all(|&b| subset.contains(&self.mul(a, self.inv(b))))
        })
    }

    /// A symmetric generating set: the identity first, then greedily the
    /// smallest element outside the current subgroup together with its inverse.
    pub fn default_symmetric_generators(&self) -> Vec<Elem> {
        let mut gens = vec![self.identity];
        let mut span = self.generated_subgroup(&gens);
        while span.len() < self.order {
            let g = self.elements().find(|g| !span.contains(g)).unwrap();
            gens.push(g);
            let gi = self.inv(g);
            if gi != g {
                gens.push(gi);
            }
            span = self.generated_subgroup(&gens);
        }
        gens
    }

    pub fn table_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in self.elements() {
            let row: Vec<String> = self
                .elements()
                .map(|b| self.mul(a, b).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn parse_rows<'a>(
    lines: impl Iterator<Item = &'a str>,
) -> Result<Vec<Vec<usize>>, String> {
    lines
        .map(|line| {
            line.split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| format!("bad id `{t}`: {e}")))
                .collect()
        })
        .collect()
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations_lex(k: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![current.clone()];
    while let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
    out
}

/// Description of a group in one of the supported families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(Vec<Vec<Elem>>),
}

impl GroupSpec {
    pub fn build(&self, check: &AssocCheck) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Trivial => Ok(FiniteGroup::trivial()),
            GroupSpec::Cyclic(m) => FiniteGroup::cyclic(*m),
            GroupSpec::Symmetric(k) => FiniteGroup::symmetric(*k),
            GroupSpec::Product(a, b) => Ok(FiniteGroup::direct_product(
                &a.build(check)?,
                &b.build(check)?,
            )),
            GroupSpec::Table(rows) => FiniteGroup::from_table(rows, "table", check),
        }
    }
}

/// Convenience wrapper around [`GroupSpec::build`].
pub fn build_group(spec: &GroupSpec, check: &AssocCheck) -> Result<FiniteGroup, GroupError> {
    spec.build(check)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(m) => write!(f, "cyclic {m}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric {k}"),
            GroupSpec::Product(a, b) => write!(f, "product({a}, {b})"),
            GroupSpec::Table(rows) => write!(f, "table of order {}", rows.len()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Grammar: `trivial | cyclic N | symmetric N | product(SPEC, SPEC)`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| GroupError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s = input.trim();
        if s == "trivial" {
            return Ok(GroupSpec::Trivial);
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth = depth
                            .checked_sub(1)
                            .ok_or_else(|| err("unbalanced parentheses"))?
                    }
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| err("product needs two factors"))?;
            let a = inner[..i].parse()?;
            let b = inner[i + 1..].parse()?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        let mut parts = s.split_whitespace();
        let family = parts.next().ok_or_else(|| err("empty description"))?;
        let n: usize = parts
            .next()
            .ok_or_else(|| err("missing size"))?
            .parse()
            .map_err(|_| err("size is not a number"))?;
        if parts.next().is_some() {
            return Err(err("trailing input"));
        }
        match family {
            "cyclic" => Ok(GroupSpec::Cyclic(n)),
            "symmetric" => Ok(GroupSpec::Symmetric(n)),
            _ => Err(err("unknown family")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(g: &FiniteGroup) {
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(g.mul(e, a), a);
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(a, g.inv(a)), e);
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn cyclic_four_is_addition_mod_four() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.order(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.mul(a, b), (a + b) % 4);
            }
        }
        check_axioms(&g);
    }

    #[test]
    fn symmetric_three_has_order_six() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        check_axioms(&g);
        // lexicographic: [0,1,2] [0,2,1] [1,0,2] [1,2,0] [2,0,1] [2,1,0]
        assert_eq!(g.element_order(1), 2);
        assert_eq!(g.element_order(3), 3);
        // (apply [0,2,1] then [1,0,2]) maps 0->1, 1->2, 2->0 = [1,2,0]
        assert_eq!(g.mul(2, 1), 3);
    }

    #[test]
    fn product_of_cyclic_two_and_three_is_cyclic() {
        let spec: GroupSpec = "product(cyclic 2, cyclic 3)".parse().unwrap();
        let g = spec.build(&AssocCheck::default()).unwrap();
        assert_eq!(g.order(), 6);
        check_axioms(&g);
        let generators: Vec<Elem> = g.elements().filter(|&x| g.element_order(x) == 6).collect();
        // (1,1), (1,2) in pair notation
        assert_eq!(generators, vec![4, 5]);
    }

    #[test]
    fn nested_product_parses() {
        let spec: GroupSpec = "product(product(cyclic 2, cyclic 2), symmetric 3)"
            .parse()
            .unwrap();
        assert_eq!(spec.build(&AssocCheck::default()).unwrap().order(), 24);
        assert!("product(cyclic 2)".parse::<GroupSpec>().is_err());
        assert!("dihedral 4".parse::<GroupSpec>().is_err());
        assert!("cyclic".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn table_roundtrip_through_text() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let h =
            FiniteGroup::from_table_text(&g.table_text(), "s3", &AssocCheck::default()).unwrap();
        assert_eq!(g.mul, h.mul);
        assert_eq!(h.identity(), 0);
    }

    #[test]
    fn malformed_tables_are_rejected_with_witness() {
        let check = AssocCheck::default();
        // no identity
        let t = vec![vec![1, 0], vec![0, 0]];
        assert_eq!(
            FiniteGroup::from_table(&t, "x", &check),
            Err(GroupError::NoIdentity)
        );
        // identity 0, but 1 has no inverse
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(
            FiniteGroup::from_table(&t, "x", &check),
            Err(GroupError::NoInverse(1))
        );
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(&t, "x", &check) {
            Err(GroupError::NotAssociative { a, b, c }) => {
                let at = |x: usize, y: usize| t[x][y];
                assert_ne!(at(at(a, b), c), at(a, at(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
        let t = vec![vec![0, 5], vec![1, 0]];
        assert!(matches!(
            FiniteGroup::from_table(&t, "x", &check),
            Err(GroupError::EntryOutOfRange { a: 0, b: 1, .. })
        ));
    }

    #[test]
    fn sampled_associativity_above_threshold() {
        let g = FiniteGroup::cyclic(70).unwrap();
        let rows: Vec<Vec<Elem>> = g
            .elements()
            .map(|a| g.elements().map(|b| g.mul(a, b)).collect())
            .collect();
        let check = AssocCheck {
            exhaustive_limit: 64,
            samples: 1000,
            seed: 9,
        };
        assert!(FiniteGroup::from_table(&rows, "c70", &check).is_ok());
    }

    #[test]
    fn default_generators_are_symmetric_and_generate() {
        for g in [
            FiniteGroup::cyclic(8).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(2).unwrap(),
            ),
        ] {
            let gens = g.default_symmetric_generators();
            assert_eq!(gens[0], g.identity());
            assert!(gens.iter().all(|&s| gens.contains(&g.inv(s))));
            assert_eq!(g.generated_subgroup(&gens).len(), g.order());
        }
        assert_eq!(
            FiniteGroup::cyclic(8)
                .unwrap()
                .default_symmetric_generators(),
            vec![0, 1, 7]
        );
        assert_eq!(
            FiniteGroup::symmetric(3)
                .unwrap()
                .default_symmetric_generators(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations_lex(4).len(), 24);
        assert_eq!(permutations_lex(1), vec![vec![0]]);
    }
}

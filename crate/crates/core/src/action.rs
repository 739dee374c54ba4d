//! Left actions of finite groups on finite letter sets.

use thiserror::Error;

use crate::group::{parse_rows, Elem, FiniteGroup};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("row for element {element} is not a permutation of 0..{alphabet_size}")]
    NotPermutation { element: Elem, alphabet_size: usize },
    #[error("identity moves letter {letter}")]
    IdentityMoves { letter: Letter },
    #[error("act({g}*{h}, {letter}) != act({g}, act({h}, {letter}))")]
    NotAnAction { g: Elem, h: Elem, letter: Letter },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("projection is not a homomorphism onto the quotient: fails on ({a}, {b})")]
    NotHomomorphism { a: Elem, b: Elem },
    #[error("{0:?} is not a subgroup")]
    NotSubgroup(Vec<Elem>),
    #[error("partition does not cover each letter exactly once (letter {letter})")]
    NotAPartition { letter: Letter },
    #[error("block {0:?} is not a block of the partition")]
    BlockNotInPartition(Vec<Letter>),
    #[error("element {element} does not map block {block} onto a block")]
    BlocksNotPermuted { element: Elem, block: usize },
    #[error("cannot parse action table: {0}")]
    Parse(String),
}

/// How to build a [`GroupAction`].
#[derive(Debug, Clone)]
pub enum ActionKind {
    /// `g . a = g a` on the group itself.
    LeftTranslation,
    /// `g . q = π(g) q` on a quotient, where `projection[g] = π(g)`.
    Quotient {
        quotient: FiniteGroup,
        projection: Vec<Elem>,
    },
    /// Left multiplication on the left cosets `gH`. Letters are cosets ordered
    /// by their least element id.
    CosetSpace { subgroup: Vec<Elem> },
    /// Every element fixes every letter.
    Trivial { alphabet_size: usize },
    /// `rows[g][a] = g . a`.
    Explicit(Vec<Vec<Letter>>),
}

/// Exact diagnostic flags. Each `None` means the property holds; `Some`
/// carries a witness against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDiagnostics {
    /// Two distinct elements acting identically.
    pub non_faithful: Option<(Elem, Elem)>,
    /// A non-identity element with a fixed letter.
    pub fixed_point: Option<(Elem, Letter)>,
    /// A letter outside the orbit of letter 0.
    pub unreached: Option<Letter>,
}

impl ActionDiagnostics {
    pub fn faithful(&self) -> bool {
        self.non_faithful.is_none()
    }

    pub fn free(&self) -> bool {
        self.fixed_point.is_none()
    }

    pub fn transitive(&self) -> bool {
        self.unreached.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct GroupAction {
    group: FiniteGroup,
    alphabet_size: usize,
    table: Vec<Letter>,
    diagnostics: ActionDiagnostics,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, kind: ActionKind) -> Result<Self, ActionError> {
        let n = group.order();
        let (alphabet_size, table): (usize, Vec<Letter>) = match kind {
            ActionKind::LeftTranslation => {
                (n, (0..n * n).map(|i| group.mul(i / n, i % n)).collect())
            }
            ActionKind::Quotient {
                quotient,
                projection,
            } => {
                if projection.len() != n || projection.iter().any(|&q| q >= quotient.order()) {
                    return Err(ActionError::RowCount {
                        expected: n,
                        found: projection.len(),
                    });
                }
                for a in group.elements() {
                    for b in group.elements() {
                        if projection[group.mul(a, b)] != quotient.mul(projection[a], projection[b])
                        {
                            return Err(ActionError::NotHomomorphism { a, b });
                        }
                    }
                }
                let k = quotient.order();
                let table = (0..n * k)
                    .map(|i| quotient.mul(projection[i / k], i % k))
                    .collect();
                (k, table)
            }
            ActionKind::CosetSpace { subgroup } => {
                if !group.is_subgroup(&subgroup) {
                    return Err(ActionError::NotSubgroup(subgroup));
                }
                // coset_of[g] = index of gH, cosets numbered by least element
                let mut coset_of = vec![usize::MAX; n];
                let mut reps = Vec::new();
                for g in group.elements() {
                    if coset_of[g] == usize::MAX {
                        for &h in &subgroup {
                            coset_of[group.mul(g, h)] = reps.len();
                        }
                        reps.push(g);
                    }
                }
                let k = reps.len();
                let table = (0..n * k)
                    .map(|i| coset_of[group.mul(i / k, reps[i % k])])
                    .collect();
                (k, table)
            }
            ActionKind::Trivial { alphabet_size } => (
                alphabet_size,
                (0..n * alphabet_size)
                    .map(|i| i % alphabet_size.max(1))
                    .collect(),
            ),
            ActionKind::Explicit(rows) => {
                if rows.len() != n {
                    return Err(ActionError::RowCount {
                        expected: n,
                        found: rows.len(),
                    });
                }
                let k = rows.first().map_or(0, Vec::len);
                (k, rows.into_iter().flatten().collect())
            }
        };
        Self::from_table(group, alphabet_size, table)
    }

    fn from_table(
        group: FiniteGroup,
        alphabet_size: usize,
        table: Vec<Letter>,
    ) -> Result<Self, ActionError> {
        let k = alphabet_size;
        if k == 0 {
            return Err(ActionError::EmptyAlphabet);
        }
        if table.len() != group.order() * k {
            return Err(ActionError::RowCount {
                expected: group.order() * k,
                found: table.len(),
            });
        }
        for g in group.elements() {
            let row = &table[g * k..(g + 1) * k];
            let mut seen = vec![false; k];
            for &a in row {
                if a >= k || std::mem::replace(&mut seen[a], true) {
                    return Err(ActionError::NotPermutation {
                        element: g,
                        alphabet_size: k,
                    });
                }
            }
        }
        let e = group.identity();
        if let Some(letter) = (0..k).find(|&a| table[e * k + a] != a) {
            return Err(ActionError::IdentityMoves { letter });
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(letter) =
                    (0..k).find(|&a| table[gh * k + a] != table[g * k + table[h * k + a]])
                {
                    return Err(ActionError::NotAnAction { g, h, letter });
                }
            }
        }
        let diagnostics = compute_diagnostics(&group, k, &table);
        Ok(GroupAction {
            group,
            alphabet_size: k,
            table,
            diagnostics,
        })
    }

    /// Parses the text format: first line is the alphabet size, then one row
    /// per group element.
    pub fn from_table_text(group: FiniteGroup, text: &str) -> Result<Self, ActionError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let k: usize = lines
            .next()
            .ok_or_else(|| ActionError::Parse("missing alphabet size line".into()))?
            .trim()
            .parse()
            .map_err(|e| ActionError::Parse(format!("bad alphabet size: {e}")))?;
        let rows = parse_rows(lines).map_err(ActionError::Parse)?;
        if let Some(bad) = rows.iter().position(|r| r.len() != k) {
            return Err(ActionError::NotPermutation {
                element: bad,
                alphabet_size: k,
            });
        }
        Self::new(group, ActionKind::Explicit(rows))
    }

    /// Diagonal action of `G ⊕ H` on pairs; letter `(a, b)` has id
    /// `a * |B| + b`, group ids follow [`FiniteGroup::direct_product`].
    pub fn product(a: &GroupAction, b: &GroupAction) -> Self {
        let group = FiniteGroup::direct_product(&a.group, &b.group);
        let (ka, kb) = (a.alphabet_size, b.alphabet_size);
        let nb = b.group.order();
        let k = ka * kb;
        let mut table = vec![0; group.order() * k];
        for g in group.elements() {
            let (ga, gb) = (g / nb, g % nb);
            for x in 0..k {
                table[g * k + x] = a.act(ga, x / kb) * kb + b.act(gb, x % kb);
            }
        }
        let diagnostics = compute_diagnostics(&group, k, &table);
        GroupAction {
            group,
            alphabet_size: k,
            table,
            diagnostics,
        }
    }

    #[inline]
    pub fn act(&self, g: Elem, a: Letter) -> Letter {
        self.table[g * self.alphabet_size + a]
    }

    /// The permutation `a -> g . a`.
    pub fn row(&self, g: Elem) -> &[Letter] {
        &self.table[g * self.alphabet_size..(g + 1) * self.alphabet_size]
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn diagnostics(&self) -> &ActionDiagnostics {
        &self.diagnostics
    }

    pub fn table_text(&self) -> String {
        let mut out = format!("{}\n", self.alphabet_size);
        for g in self.group.elements() {
            let row: Vec<String> = self.row(g).iter().map(ToString::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Same as [`GroupAction::new`].
pub fn build_action(group: FiniteGroup, kind: ActionKind) -> Result<GroupAction, ActionError> {
    GroupAction::new(group, kind)
}

/// Same as [`GroupAction::diagnostics`], returned by value.
pub fn action_diagnostics(action: &GroupAction) -> ActionDiagnostics {
    action.diagnostics.clone()
}

fn compute_diagnostics(group: &FiniteGroup, k: usize, table: &[Letter]) -> ActionDiagnostics {
    let row = |g: Elem| &table[g * k..(g + 1) * k];
    let mut non_faithful = None;
    'outer: for g in group.elements() {
        for h in g + 1..group.order() {
            if row(g) == row(h) {
                non_faithful = Some((g, h));
                break 'outer;
            }
        }
    }
    let e = group.identity();
    let fixed_point = group
        .elements()
        .filter(|&g| g != e)
        .find_map(|g| (0..k).find(|&a| row(g)[a] == a).map(|a| (g, a)));
    let mut reached = vec![false; k];
    for g in group.elements() {
        reached[row(g)[0]] = true;
    }
    let unreached = reached.iter().position(|r| !r);
    ActionDiagnostics {
        non_faithful,
        fixed_point,
        unreached,
    }
}

/// Setwise stabilizer of a block together with left coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetData {
    /// Sorted ascending.
    pub stabilizer: Vec<Elem>,
    /// Identity first, then the least element of every other coset, ascending.
    pub representatives: Vec<Elem>,
    /// `coset_of[g]` is the index in `representatives` of the coset `g Stab`.
    pub coset_of: Vec<usize>,
    /// Indices of partition blocks in the orbit of the block, ascending.
    pub block_orbit: Vec<usize>,
}

/// Stabilizer of `block` (one of the blocks of `partition`) and the left
/// cosets of it. Fails unless `partition` is a partition of the alphabet whose
/// blocks the action permutes.
pub fn stabilizer_and_cosets(
    action: &GroupAction,
    partition: &[Vec<Letter>],
    block: &[Letter],
) -> Result<CosetData, ActionError> {
    let k = action.alphabet_size();
    let mut block_of = vec![usize::MAX; k];
    for (i, b) in partition.iter().enumerate() {
        for &a in b {
            if a >= k || block_of[a] != usize::MAX {
                return Err(ActionError::NotAPartition { letter: a });
            }
            block_of[a] = i;
        }
    }
    if let Some(letter) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(ActionError::NotAPartition { letter });
    }
    let same_set = |x: &[Letter], y: &[Letter]| {
        let mut x = x.to_vec();
        let mut y = y.to_vec();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    };
    let target = block
        .first()
        .filter(|&&a| a < k)
        .map(|&a| block_of[a])
        .filter(|&i| same_set(&partition[i], block))
        .ok_or_else(|| ActionError::BlockNotInPartition(block.to_vec()))?;

    // image_block[g][i] = index of g . partition[i]
    let group = action.group();
    let mut image_block = vec![vec![0; partition.len()]; group.order()];
    for g in group.elements() {
        for (i, b) in partition.iter().enumerate() {
            let image: Vec<Letter> = b.iter().map(|&a| action.act(g, a)).collect();
            let j = block_of[image[0]];
            if !same_set(&image, &partition[j]) {
                return Err(ActionError::BlocksNotPermuted {
                    element: g,
                    block: i,
                });
            }
            image_block[g][i] = j;
        }
    }

    let stabilizer: Vec<Elem> = group
        .elements()
        .filter(|&g| image_block[g][target] == target)
        .collect();
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut representatives = Vec::new();
    let e = group.identity();
    for g in std::iter::once(e).chain(group.elements().filter(|&g| g != e)) {
        if coset_of[g] == usize::MAX {
            for &s in &stabilizer {
                coset_of[group.mul(g, s)] = representatives.len();
            }
            representatives.push(g);
        }
    }
    let mut block_orbit: Vec<usize> = group.elements().map(|g| image_block[g][target]).collect();
    block_orbit.sort_unstable();
    block_orbit.dedup();
    Ok(CosetData {
        stabilizer,
        representatives,
        coset_of,
        block_orbit,
    })
}

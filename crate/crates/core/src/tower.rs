//! Chains of finite quotients `G_1 <- G_2 <- ... <- G_D` standing in for a
//! residually finite group at a chosen depth.

use crate::group::{Elem, FiniteGroup, GroupError};

/// Levels are numbered `1..=depth`; `projection(d)` maps level `d + 1` onto
/// level `d`.
#[derive(Debug, Clone)]
pub struct QuotientTower {
    levels: Vec<FiniteGroup>,
    projections: Vec<Vec<Elem>>,
}

impl QuotientTower {
    /// Validates that each projection is a surjective homomorphism.
    pub fn from_parts(
        levels: Vec<FiniteGroup>,
        projections: Vec<Vec<Elem>>,
    ) -> Result<Self, GroupError> {
        if levels.is_empty() {
            return Err(GroupError::EmptyTower);
        }
        if projections.len() + 1 != levels.len() {
            return Err(GroupError::ProjectionShape {
                level: projections.len(),
            });
        }
        for (i, proj) in projections.iter().enumerate() {
            let level = i + 1;
            let (lower, upper) = (&levels[i], &levels[i + 1]);
            if proj.len() != upper.order() || proj.iter().any(|&x| x >= lower.order()) {
                return Err(GroupError::ProjectionShape { level });
            }
            for a in upper.elements() {
                for b in upper.elements() {
                    if proj[upper.mul(a, b)] != lower.mul(proj[a], proj[b]) {
                        return Err(GroupError::ProjectionNotHomomorphism { level, a, b });
                    }
                }
            }
            let mut hit = vec![false; lower.order()];
            for &x in proj {
                hit[x] = true;
            }
            if let Some(missing) = hit.iter().position(|h| !h) {
                return Err(GroupError::ProjectionNotSurjective { level, missing });
            }
        }
        Ok(QuotientTower {
            levels,
            projections,
        })
    }

    /// Cyclic residue chain `m_1 | m_2 | ... | m_D` with reduction maps.
    pub fn cyclic_chain(moduli: &[usize]) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::EmptyTower);
        }
        for w in moduli.windows(2) {
            if w[0] == 0 || w[1] % w[0] != 0 {
                return Err(GroupError::NotDivisible {
                    lower: w[0],
                    upper: w[1],
                });
            }
        }
        let levels = moduli
            .iter()
            .map(|&m| FiniteGroup::cyclic(m))
            .collect::<Result<Vec<_>, _>>()?;
        let projections = moduli
            .windows(2)
            .map(|w| (0..w[1]).map(|x| x % w[0]).collect())
            .collect();
        Self::from_parts(levels, projections)
    }

    /// Levelwise direct product of two towers of equal depth.
    pub fn product(a: &QuotientTower, b: &QuotientTower) -> Result<Self, GroupError> {
        if a.depth() != b.depth() {
            return Err(GroupError::DepthMismatch(a.depth(), b.depth()));
        }
        let levels = a
            .levels
            .iter()
            .zip(&b.levels)
            .map(|(x, y)| FiniteGroup::direct_product(x, y))
            .collect();
        let projections = (0..a.projections.len())
            .map(|i| {
                let nb_up = b.levels[i + 1].order();
                let nb_low = b.levels[i].order();
                (0..levels_order(&a.levels[i + 1], &b.levels[i + 1]))
                    .map(|x| a.projections[i][x / nb_up] * nb_low + b.projections[i][x % nb_up])
                    .collect()
            })
            .collect();
        Self::from_parts(levels, projections)
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `d` in `1..=depth`.
    pub fn level(&self, d: usize) -> &FiniteGroup {
        &self.levels[d - 1]
    }

    pub fn top(&self) -> &FiniteGroup {
        self.levels.last().unwrap()
    }

    /// Map from level `d + 1` onto level `d`.
    pub fn projection(&self, d: usize) -> &[Elem] {
        &self.projections[d - 1]
    }

    /// Image of `g` (an element of level `from`) in level `to <= from`.
    pub fn project(&self, from: usize, to: usize, g: Elem) -> Elem {
        assert!(to >= 1 && to <= from && from <= self.depth());
        (to..from).rev().fold(g, |x, d| self.projections[d - 1][x])
    }

    /// For each level `d` (index `d - 1`), the image of every top element.
    pub fn top_images(&self) -> Vec<Vec<Elem>> {
        let top = self.depth();
        (1..=top)
            .map(|d| {
                self.top()
                    .elements()
                    .map(|g| self.project(top, d, g))
                    .collect()
            })
            .collect()
    }

    /// Least level at which two distinct top elements have different images.
    /// `None` when `a == b`.
    pub fn separating_level(&self, a: Elem, b: Elem) -> Option<usize> {
        let top = self.depth();
        (1..=top).find(|&d| self.project(top, d, a) != self.project(top, d, b))
    }
}

fn levels_order(a: &FiniteGroup, b: &FiniteGroup) -> usize {
    a.order() * b.order()
}

//! The fibered system `G × Z/m`, where `f` rotates every fiber and `G` acts
//! on the first coordinate, and the normalizer built on the product of the
//! translates of one fiber.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ConstructionError;
use crate::action::{stabilizer_and_cosets, ActionKind, GroupAction};
use crate::group::{Elem, FiniteGroup};

#[derive(Debug, Clone)]
pub struct FiberedSystem {
    group: FiniteGroup,
    modulus: usize,
    /// `G ⊕ Z/m` acting by `(g, n)·(h, k) = (g·h, k + n)`.
    full: GroupAction,
    /// `T^g = (g, 0)`.
    translations: GroupAction,
    /// `f = (e, 1)`.
    rotation: Vec<usize>,
}

pub fn build_fibered_system(
    group: &FiniteGroup,
    modulus: usize,
) -> Result<FiberedSystem, ConstructionError> {
    if modulus < 2 {
        return Err(ConstructionError::ModulusTooSmall(modulus));
    }
    let n = group.order();
    let points = n * modulus;
    let cyclic = FiniteGroup::cyclic(modulus)?;
    let product = FiniteGroup::direct_product(group, &cyclic);
    let rows = product
        .elements()
        .map(|pg| {
            let (g, c) = (pg / modulus, pg % modulus);
            (0..points)
                .map(|p| group.mul(g, p / modulus) * modulus + (p % modulus + c) % modulus)
                .collect()
        })
        .collect();
    let full = GroupAction::new(product, ActionKind::Explicit(rows))?;
    let rows = group
        .elements()
        .map(|g| full.row(g * modulus).to_vec())
        .collect();
    let translations = GroupAction::new(group.clone(), ActionKind::Explicit(rows))?;
    let rotation = full.row(group.identity() * modulus + 1).to_vec();
    Ok(FiberedSystem {
        group: group.clone(),
        modulus,
        full,
        translations,
        rotation,
    })
}

impl FiberedSystem {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn point_count(&self) -> usize {
        self.group.order() * self.modulus
    }

    pub fn point(&self, h: Elem, k: usize) -> usize {
        h * self.modulus + k
    }

    pub fn coords(&self, p: usize) -> (Elem, usize) {
        (p / self.modulus, p % self.modulus)
    }

    pub fn full_action(&self) -> &GroupAction {
        &self.full
    }

    pub fn translations(&self) -> &GroupAction {
        &self.translations
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// Orbits of `f`, each sorted, ordered by least point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.point_count()];
        let mut out = Vec::new();
        for start in 0..self.point_count() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                orbit.push(p);
                p = self.rotation[p];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// First `(g, point)` with `f(T^g(p)) ≠ T^g(f(p))`.
    pub fn commutation_failure(&self) -> Option<(Elem, usize)> {
        self.group.elements().find_map(|g| {
            (0..self.point_count())
                .find(|&p| {
                    self.rotation[self.translations.act(g, p)]
                        != self.translations.act(g, self.rotation[p])
                })
                .map(|p| (g, p))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSpace {
    Enumerated { count: usize },
    Sampled { seed: u64, count: usize },
}

/// States are functions `I → Z/m`; coordinate `i` is the position, along
/// `f`, of a point of the component `T^{g_i}(Y)`.
#[derive(Debug, Clone)]
pub struct ProductSystem {
    group: FiniteGroup,
    modulus: usize,
    translations: GroupAction,
    /// `rotation_pow[c] = f^c` for `0 ≤ c < m`.
    rotation_pow: Vec<Vec<usize>>,
    representatives: Vec<Elem>,
    stabilizer: Vec<Elem>,
    /// `point_at[i][c] = T^{g_i}(f^c(y₀))`.
    point_at: Vec<Vec<usize>>,
    /// Inverse of `point_at`: `(i, c)` for every point in the orbit of `Y`.
    coord_of: Vec<Option<(usize, usize)>>,
    /// `sigma[g][i] = j` with `g·g_j ∈ g_i·Stab`.
    sigma: Vec<Vec<usize>>,
    states: Vec<Vec<usize>>,
    state_space: StateSpace,
}

pub fn build_product_normalizer(
    system: &FiberedSystem,
    base: &[usize],
    enumeration_cap: usize,
    sampling: Option<(u64, usize)>,
) -> Result<ProductSystem, ConstructionError> {
    let components = system.components();
    let coset = stabilizer_and_cosets(system.translations(), &components, base)?;
    let group = system.group();
    let m = system.modulus();
    let mut rotation_pow = vec![(0..system.point_count()).collect::<Vec<_>>()];
    for c in 1..m {
        rotation_pow.push(
            rotation_pow[c - 1]
                .iter()
                .map(|&p| system.rotation()[p])
                .collect(),
        );
    }
    let y0 = *base.iter().min().expect("base component is nonempty");
    let point_at: Vec<Vec<usize>> = coset
        .representatives
        .iter()
        .map(|&g| {
            (0..m)
                .map(|c| system.translations().act(g, rotation_pow[c][y0]))
                .collect()
        })
        .collect();
    let mut coord_of = vec![None; system.point_count()];
    for (i, row) in point_at.iter().enumerate() {
        for (c, &p) in row.iter().enumerate() {
            coord_of[p] = Some((i, c));
        }
    }
    let sigma = group
        .elements()
        .map(|g| {
            coset
                .representatives
                .iter()
                .map(|&gi| coset.coset_of[group.mul(group.inv(g), gi)])
                .collect()
        })
        .collect();

    let dims = coset.representatives.len();
    let total = u32::try_from(dims).ok().and_then(|d| m.checked_pow(d));
    let (states, state_space) = match (total, sampling) {
        (Some(count), _) if count <= enumeration_cap => {
            let states = (0..count)
                .map(|mut idx| {
                    let mut y = vec![0; dims];
                    for slot in y.iter_mut().rev() {
                        *slot = idx % m;
                        idx /= m;
                    }
                    y
                })
                .collect();
            (states, StateSpace::Enumerated { count })
        }
        (_, Some((seed, count))) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let states = (0..count)
                .map(|_| (0..dims).map(|_| rng.gen_range(0..m)).collect())
                .collect();
            (states, StateSpace::Sampled { seed, count })
        }
        (_, None) => {
            return Err(ConstructionError::CapExceeded {
                what: "product state space",
                needed: format!("{m}^{dims}"),
                cap: enumeration_cap,
            })
        }
    };

    Ok(ProductSystem {
        group: group.clone(),
        modulus: m,
        translations: system.translations().clone(),
        rotation_pow,
        representatives: coset.representatives,
        stabilizer: coset.stabilizer,
        point_at,
        coord_of,
        sigma,
        states,
        state_space,
    })
}

impl ProductSystem {
    pub fn index_len(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn stabilizer(&self) -> &[Elem] {
        &self.stabilizer
    }

    pub fn sigma(&self, g: Elem) -> &[usize] {
        &self.sigma[g]
    }

    pub fn states(&self) -> &[Vec<usize>] {
        &self.states
    }

    pub fn state_space(&self) -> &StateSpace {
        &self.state_space
    }

    /// Position of `p` along its component. Points outside the orbit of `Y`
    /// cannot occur for maps built from a consistent `σ`.
    fn coord(&self, p: usize) -> usize {
        self.coord_of[p].map_or(usize::MAX, |(_, c)| c)
    }

    fn rotate(&self, p: usize, n: i64) -> usize {
        let c = n.rem_euclid(self.modulus as i64) as usize;
        self.rotation_pow[c][p]
    }

    /// `Sⁿ(y)ᵢ = f^{nᵢ}(yᵢ)`.
    pub fn shift_by(&self, n: &[i64], y: &[usize]) -> Vec<usize> {
        (0..self.index_len())
            .map(|i| self.coord(self.rotate(self.point_at[i][y[i]], n[i])))
            .collect()
    }

    /// `T̃^g(y)ᵢ = T^g(y_{σ_g(i)})`.
    pub fn normalizer_map(&self, g: Elem, y: &[usize]) -> Vec<usize> {
        (0..self.index_len())
            .map(|i| {
                let j = self.sigma[g][i];
                self.coord(self.translations.act(g, self.point_at[j][y[j]]))
            })
            .collect()
    }

    /// `α_g(n)ᵢ = n_{σ_g(i)}`.
    pub fn alpha(&self, g: Elem, n: &[i64]) -> Vec<i64> {
        self.sigma[g].iter().map(|&j| n[j]).collect()
    }

    /// The unit vectors `±eᵢ`.
    pub fn unit_vectors(&self) -> Vec<Vec<i64>> {
        let d = self.index_len();
        let mut out = Vec::with_capacity(2 * d);
        for sign in [1, -1] {
            for i in 0..d {
                let mut v = vec![0; d];
                v[i] = sign;
                out.push(v);
            }
        }
        out
    }

    /// `I` order, then `σ_g` and `α_g` (on basis vectors) in one-line
    /// notation for every `g`.
    pub fn dump(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = format!(
            "I: {}\nstab: {}\n",
            join(&self.representatives),
            join(&self.stabilizer)
        );
        for g in self.group.elements() {
            let mut alpha = vec![0; self.index_len()];
            for (i, &j) in self.sigma[g].iter().enumerate() {
                alpha[j] = i;
            }
            out.push_str(&format!(
                "sigma[{g}]: {}\nalpha[{g}]: {}\n",
                join(&self.sigma[g]),
                join(&alpha)
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProductRelations {
    pub instances: usize,
    /// `(g, n, y)` with `T̃^g(Sⁿ(y)) ≠ S^{α_g(n)}(T̃^g(y))`.
    pub relation_failure: Option<(Elem, Vec<i64>, Vec<usize>)>,
    /// `(g, h)` with `T̃^g∘T̃^h ≠ T̃^{gh}`.
    pub homomorphism_failure: Option<(Elem, Elem)>,
    /// `g ≠ h` with `T̃^g = T̃^h` on every state.
    pub injectivity_failure: Option<(Elem, Elem)>,
    /// `(g, h)` with `α_{gh} ≠ α_g∘α_h`.
    pub alpha_failure: Option<(Elem, Elem)>,
    /// `(g, h)` with `σ_{gh} ≠ σ_h∘σ_g`.
    pub sigma_law_failure: Option<(Elem, Elem)>,
    /// `(n, y)` with `Sⁿ(y) = y`, `n ≠ 0` and every `|nᵢ| < m`.
    pub freeness_failure: Option<(Vec<i64>, Vec<usize>)>,
    /// `(g, i)` where `T^g` does not carry component `σ_g(i)` onto
    /// component `i`.
    pub component_failure: Option<(Elem, usize)>,
}

impl ProductRelations {
    pub fn passed(&self) -> bool {
        self.relation_failure.is_none()
            && self.homomorphism_failure.is_none()
            && self.injectivity_failure.is_none()
            && self.alpha_failure.is_none()
            && self.sigma_law_failure.is_none()
            && self.freeness_failure.is_none()
            && self.component_failure.is_none()
    }
}

/// Checks the normalizer relation on every `(g, n, y)`; `tests` defaults to
/// the unit vectors `±eᵢ`.
pub fn verify_product_relations(
    ps: &ProductSystem,
    tests: Option<&[Vec<i64>]>,
) -> ProductRelations {
    let group = &ps.group;
    let units = ps.unit_vectors();
    let tests = tests.unwrap_or(&units);
    let component_failure = group.elements().find_map(|g| {
        (0..ps.index_len())
            .find(|&i| {
                ps.point_at[ps.sigma[g][i]]
                    .iter()
                    .any(|&p| ps.coord_of[ps.translations.act(g, p)].map(|(j, _)| j) != Some(i))
            })
            .map(|i| (g, i))
    });
    let mut r = ProductRelations {
        component_failure,
        ..ProductRelations::default()
    };

    let images: Vec<Vec<Vec<usize>>> = group
        .elements()
        .map(|g| ps.states.iter().map(|y| ps.normalizer_map(g, y)).collect())
        .collect();

    'rel: for g in group.elements() {
        for n in tests {
            let an = ps.alpha(g, n);
            for (y, ty) in ps.states.iter().zip(&images[g]) {
                r.instances += 1;
                if ps.normalizer_map(g, &ps.shift_by(n, y)) != ps.shift_by(&an, ty) {
                    r.relation_failure = Some((g, n.clone(), y.clone()));
                    break 'rel;
                }
            }
        }
    }

    'hom: for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            let bad = ps
                .states
                .iter()
                .zip(&images[h])
                .zip(&images[gh])
                .any(|((_, th), tgh)| ps.normalizer_map(g, th) != *tgh);
            if bad {
                r.homomorphism_failure = Some((g, h));
                break 'hom;
            }
        }
    }

    'inj: for g in group.elements() {
        for h in g + 1..group.order() {
            if images[g] == images[h] {
                r.injectivity_failure = Some((g, h));
                break 'inj;
            }
        }
    }

    // α_g is linear, so agreement on ±eᵢ is agreement everywhere.
    for g in group.elements() {
        for h in group.elements() {
            let gh = group.mul(g, h);
            if r.alpha_failure.is_none()
                && units
                    .iter()
                    .any(|e| ps.alpha(gh, e) != ps.alpha(g, &ps.alpha(h, e)))
            {
                r.alpha_failure = Some((g, h));
            }
            let composed: Vec<usize> = ps.sigma[g].iter().map(|&j| ps.sigma[h][j]).collect();
            if r.sigma_law_failure.is_none() && ps.sigma[gh] != composed {
                r.sigma_law_failure = Some((g, h));
            }
        }
    }

    // S acts coordinatewise, so Sⁿ(y) = y with 0 < |nᵢ| < m for some i
    // happens iff some f^c with 0 < |c| < m fixes a point of some component.
    let m = ps.modulus as i64;
    'free: for i in 0..ps.index_len() {
        for (c, &p) in ps.point_at[i].iter().enumerate() {
            for step in (1..m).chain(-(m - 1)..0) {
                if ps.rotate(p, step) == p {
                    let mut n = vec![0; ps.index_len()];
                    n[i] = step;
                    let mut y = vec![0; ps.index_len()];
                    y[i] = c;
                    r.freeness_failure = Some((n, y));
                    break 'free;
                }
            }
        }
    }
    r
}

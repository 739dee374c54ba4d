//! Products of two S-adic systems: the pair action, a product generating
//! set and the pairs of component automorphisms.

use super::ConstructionError;
use crate::action::GroupAction;
use crate::automorphism::{verify_equivariance, AutomorphismError, LetterMap};
use crate::group::Elem;
use crate::substitution::Substitution;
use crate::word::Letter;

#[derive(Debug, Clone)]
pub struct ComponentSystem {
    pub action: GroupAction,
    /// Identity first, symmetric.
    pub gens: Vec<Elem>,
    pub auts: Vec<LetterMap>,
}

/// Product generating set, as ids `g·|H| + h`: the identity pair, then
/// `(s, e)`, then `(e, t)`, then every `(s, t)`, with `s` and `t` ranging
/// over the non-identity generators in their given order.
pub fn product_generators(a: &ComponentSystem, b: &ComponentSystem) -> Vec<Elem> {
    let nb = b.action.group().order();
    let (ea, eb) = (a.action.group().identity(), b.action.group().identity());
    let sa: Vec<Elem> = a.gens.iter().copied().filter(|&s| s != ea).collect();
    let tb: Vec<Elem> = b.gens.iter().copied().filter(|&t| t != eb).collect();
    let mut out = vec![ea * nb + eb];
    out.extend(sa.iter().map(|&s| s * nb + eb));
    out.extend(tb.iter().map(|&t| ea * nb + t));
    for &s in &sa {
        out.extend(tb.iter().map(|&t| s * nb + t));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectProductReport {
    pub generators: Vec<Elem>,
    pub pair_count: usize,
    /// `(label, letter)` for pairs failing equivariance on the product.
    pub equivariance_failures: Vec<(String, Letter)>,
    /// Two distinct pairs giving the same product map.
    pub duplicate: Option<(String, String)>,
    pub identity_pair_is_identity: bool,
}

impl DirectProductReport {
    pub fn passed(&self) -> bool {
        self.equivariance_failures.is_empty()
            && self.duplicate.is_none()
            && self.identity_pair_is_identity
    }
}

fn check_component(sys: &ComponentSystem) -> Result<Substitution, ConstructionError> {
    let sub = Substitution::from_action(&sys.action, &sys.gens)?;
    for phi in &sys.auts {
        match verify_equivariance(&sub, phi) {
            Ok(()) => {}
            Err(AutomorphismError::NotEquivariant { label, letter, .. }) => {
                return Err(ConstructionError::ComponentNotEquivariant { label, letter })
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(sub)
}

/// `(φ, ψ)` acting on the pair letter `a·|B| + b`.
pub fn pair_map(phi: &LetterMap, psi: &LetterMap) -> LetterMap {
    let nb = psi.alphabet_size();
    let map = (0..phi.alphabet_size() * nb)
        .map(|x| phi.apply(x / nb) * nb + psi.apply(x % nb))
        .collect();
    LetterMap::new(map, format!("({},{})", phi.label(), psi.label()))
        .expect("pair of bijections is a bijection")
}

pub fn build_direct_product(
    a: &ComponentSystem,
    b: &ComponentSystem,
) -> Result<(ComponentSystem, DirectProductReport), ConstructionError> {
    check_component(a)?;
    check_component(b)?;
    let action = GroupAction::product(&a.action, &b.action);
    let gens = product_generators(a, b);
    let sub = Substitution::from_action(&action, &gens)?;

    let mut auts = Vec::with_capacity(a.auts.len() * b.auts.len());
    for phi in &a.auts {
        for psi in &b.auts {
            auts.push(pair_map(phi, psi));
        }
    }
    let mut equivariance_failures = Vec::new();
    for h in &auts {
        if let Err(AutomorphismError::NotEquivariant { label, letter, .. }) =
            verify_equivariance(&sub, h)
        {
            equivariance_failures.push((label, letter));
        }
    }
    let mut duplicate = None;
    'dup: for i in 0..auts.len() {
        for j in i + 1..auts.len() {
            if auts[i].same_map(&auts[j]) {
                duplicate = Some((auts[i].label().to_string(), auts[j].label().to_string()));
                break 'dup;
            }
        }
    }
    let identity_pair_is_identity = match (
        a.auts.iter().position(LetterMap::is_identity),
        b.auts.iter().position(LetterMap::is_identity),
    ) {
        (Some(i), Some(j)) => auts[i * b.auts.len() + j].is_identity(),
        _ => pair_map(
            &LetterMap::identity(a.action.alphabet_size()),
            &LetterMap::identity(b.action.alphabet_size()),
        )
        .is_identity(),
    };
    let report = DirectProductReport {
        generators: gens.clone(),
        pair_count: auts.len(),
        equivariance_failures,
        duplicate,
        identity_pair_is_identity,
    };
    Ok((ComponentSystem { action, gens, auts }, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::ActionKind;
    use crate::group::FiniteGroup;

    fn cyclic_system(m: usize) -> ComponentSystem {
        let g = FiniteGroup::cyclic(m).unwrap();
        let gens = g.default_symmetric_generators();
        let action = GroupAction::new(g, ActionKind::LeftTranslation).unwrap();
        let auts = (0..m)
            .map(|c| {
                LetterMap::new((0..m).map(|a| (a + c) % m).collect(), format!("+{c}")).unwrap()
            })
            .collect();
        ComponentSystem { action, gens, auts }
    }

    #[test]
    fn generator_convention() {
        let gens = product_generators(&cyclic_system(4), &cyclic_system(2));
        // (0,0) (1,0) (3,0) (0,1) (1,1) (3,1)
        assert_eq!(gens, vec![0, 2, 6, 1, 3, 7]);
    }

    #[test]
    fn z4_times_z2() {
        let (sys, r) = build_direct_product(&cyclic_system(4), &cyclic_system(2)).unwrap();
        assert_eq!(r.pair_count, 8);
        assert!(r.passed(), "{r:?}");
        assert_eq!(sys.action.alphabet_size(), 8);
    }

    #[test]
    fn z4_times_z4() {
        let (_, r) = build_direct_product(&cyclic_system(4), &cyclic_system(4)).unwrap();
        assert_eq!(r.pair_count, 16);
        assert!(r.passed());
    }

    #[test]
    fn bad_component_rejected() {
        let mut a = cyclic_system(4);
        a.auts
            .push(LetterMap::new(vec![0, 2, 1, 3], "(1 2)").unwrap());
        assert!(matches!(
            build_direct_product(&a, &cyclic_system(2)),
            Err(ConstructionError::ComponentNotEquivariant { letter: 0, .. })
        ));
    }
}

//! Exact alphabet metrics and the derived word/sequence distances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::group::Elem;
use crate::tower::QuotientTower;
use crate::word::Letter;
use crate::SubshiftError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphabetMetric {
    /// 0 on the diagonal, 1 elsewhere.
    Discrete,
    /// Letters are top-level elements of a quotient tower;
    /// `dist(a, b) = 2^-s` where `s` is the deepest level at which `a` and
    /// `b` still have the same image (`s = 0` if they differ already at
    /// level 1).
    Tower { images: Vec<Vec<Elem>> },
}

impl AlphabetMetric {
    pub fn tower(tower: &QuotientTower) -> Self {
        AlphabetMetric::Tower {
            images: tower.top_images(),
        }
    }

    pub fn dist(&self, a: Letter, b: Letter) -> BigRational {
        if a == b {
            return BigRational::zero();
        }
        match self {
            AlphabetMetric::Discrete => BigRational::one(),
            AlphabetMetric::Tower { images } => {
                let agree = images
                    .iter()
                    .take_while(|level| level[a] == level[b])
                    .count();
                pow2_inv(agree)
            }
        }
    }

    /// Largest distance between two letters of `0..alphabet_size`.
    pub fn diameter(&self, alphabet_size: usize) -> BigRational {
        let mut best = BigRational::zero();
        for a in 0..alphabet_size {
            for b in a + 1..alphabet_size {
                let d = self.dist(a, b);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

fn pow2_inv(s: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << s)
}

/// `max_i dist(u_i, v_i)` over the common prefix.
pub fn word_distance(metric: &AlphabetMetric, u: &[Letter], v: &[Letter]) -> BigRational {
    u.iter()
        .zip(v)
        .map(|(&a, &b)| metric.dist(a, b))
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// `Σ_n 2^-|n| dist(x_n, y_n)` over a finite window, where index `center` of
/// both words is position `n = 0`.
pub fn seq_distance(
    x: &[Letter],
    y: &[Letter],
    center: usize,
    metric: &AlphabetMetric,
) -> Result<BigRational, SubshiftError> {
    if x.len() != y.len() || center >= x.len().max(1) {
        return Err(SubshiftError::ShapeMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let mut total = BigRational::zero();
    for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
        if a != b {
            total += pow2_inv(i.abs_diff(center)) * metric.dist(a, b);
        }
    }
    Ok(total)
}

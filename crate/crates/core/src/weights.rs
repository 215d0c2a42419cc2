//! Weight combinatorics for W(n) and S̄(n): dominance, the atypicality sets
//! Ω_W and Ω, and the σ-shift decomposition of atypical weights.

use num_traits::Zero;
use thiserror::Error;

use crate::ratlin::{parse_rat, rat_int, Rat};

#[derive(Debug, Error)]
pub enum WeightError {
    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<Rat>),
    #[error("weight is a multiple of sigma")]
    IsSigmaMultiple,
    #[error("weight is not atypical for Sbar")]
    NotAtypical,
    #[error("cannot parse weight coordinate {0:?}")]
    Parse(String),
}

/// A weight in the ε-coordinates of the diagonal Cartan subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(pub Vec<Rat>);

impl WeightVector {
    pub fn from_ints(v: &[i64]) -> Self {
        WeightVector(v.iter().map(|&x| rat_int(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// σ = ε₁ + … + ε_n scaled by a.
    pub fn sigma(n: usize, a: &Rat) -> Self {
        WeightVector(vec![a.clone(); n])
    }
}

/// Parses a comma-separated list of integers or rationals, e.g. "2,1,0"
/// or "1/2,-3,0".
pub fn parse_weight(s: &str) -> Result<WeightVector, WeightError> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            parse_rat(part).ok_or_else(|| WeightError::Parse(part.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector)
}

/// Membership in Ω_W = {aε_i + ε_{i+1} + … + ε_n | a ∈ ℂ, 1 ≤ i ≤ n}:
/// all coordinates before position i vanish, coordinate i is free, and all
/// later coordinates equal 1.
pub fn is_atypical_w(lambda: &WeightVector) -> bool {
    let n = lambda.n();
    let one = rat_int(1);
    (0..n).any(|i| {
        lambda.0[..i].iter().all(|c| c.is_zero()) && lambda.0[i + 1..].iter().all(|c| *c == one)
    })
}

/// Membership in Ω = {aε₁ + … + aε_{i−1} + bε_i + (a+1)(ε_{i+1} + … + ε_n)}.
pub fn is_atypical_sbar(lambda: &WeightVector) -> bool {
    let n = lambda.n();
    let one = rat_int(1);
    (0..n).any(|i| {
        // the prefix forces a (when nonempty) and the suffix forces a+1;
        // coordinate i is free
        let a = if i > 0 {
            let a = lambda.0[0].clone();
            if !lambda.0[..i].iter().all(|c| *c == a) {
                return false;
            }
            Some(a)
        } else {
            None
        };
        match (a, i + 1 < n) {
            (Some(a), true) => lambda.0[i + 1..].iter().all(|c| *c == &a + &one),
            (Some(_), false) => true,
            (None, true) => {
                let a1 = lambda.0[i + 1].clone();
                lambda.0[i + 1..].iter().all(|c| *c == a1)
            }
            (None, false) => true,
        }
    })
}

/// Closed form of atypicality on dominant weights for S̄(n). Dominance
/// forces the free Ω-coordinate to the boundary, leaving two families:
/// λ₁ = … = λ_{n−1} with λ_n ≤ λ₁ (from i = n), and λ₂ = … = λ_n with
/// λ₁ ≥ λ₂ (from i = 1); intermediate i admit no dominant solutions.
pub fn atypical_dominant_form(lambda: &WeightVector) -> Result<bool, WeightError> {
    if !lambda.is_dominant() {
        return Err(WeightError::NotDominant(lambda.0.clone()));
    }
    let n = lambda.n();
    let head_equal = lambda.0[..n - 1].windows(2).all(|w| w[0] == w[1]);
    let tail_equal = lambda.0[1..].windows(2).all(|w| w[0] == w[1]);
    Ok((head_equal && lambda.0[n - 1] <= lambda.0[0])
        || (tail_equal && lambda.0[0] >= lambda.0[1]))
}

/// For λ ∈ Ω with λ ≠ aσ: the unique a with λ̄ = λ − aσ ∈ Ω_W.
pub fn sigma_shift(lambda: &WeightVector) -> Result<(Rat, WeightVector), WeightError> {
    if !is_atypical_sbar(lambda) {
        return Err(WeightError::NotAtypical);
    }
    if lambda.0.iter().all(|c| *c == lambda.0[0]) {
        return Err(WeightError::IsSigmaMultiple);
    }
    let one = rat_int(1);
    // candidate shifts: a determined by some coordinate being a or a+1
    let mut found: Option<(Rat, WeightVector)> = None;
    for c in &lambda.0 {
        for a in [c.clone(), c - &one] {
            let shifted = WeightVector(lambda.0.iter().map(|x| x - &a).collect());
            if is_atypical_w(&shifted) {
                if let Some((ref a0, _)) = found {
                    if *a0 != a {
                        // scan found two distinct shifts; impossible for
                        // non-sigma weights, guarded anyway
                        return Err(WeightError::NotAtypical);
                    }
                } else {
                    found = Some((a, shifted));
                }
            }
        }
    }
    found.ok_or(WeightError::NotAtypical)
}

//! Rank varieties of e-modules via exact Fitting decomposition, support
//! variety descriptors for simple and Kac modules, and symbolic quotient
//! descriptors.
//!
//! Projectivity over the one-point subalgebra ⟨x⟩ is decided without any
//! eigenvalue extraction: only the generalized 0-eigenspace of
//! C = ½·action([x, x]) matters, and on it projectivity is equivalent to
//! the restricted action of x having half rank. The complement (where C is
//! invertible) is automatically projective, whatever the exact spectrum.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratlin::{rat, rat_int, Rat, SparseMatrix, SparseVec, SpanSolver};
use crate::smodule::{ModuleError, SuperModule};
use crate::superspace::Parity;
use crate::weights::{atypical_dominant_form, WeightError, WeightVector};

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("X^2 differs from (1/2)[x,x] action on the module: {0}")]
    RelationViolated(String),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Verdict of the rank test at a single point of e₁̄.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankPointVerdict {
    /// coordinates over the odd basis of e, as exact rational strings
    pub point: Vec<String>,
    pub projective: bool,
    /// dimension of the generalized 0-eigenspace of C
    pub zero_block_dim: usize,
    /// rank of the action of x restricted to that block
    pub zero_block_rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum VarietyKind {
    ZeroPoint,
    FullAffine(usize),
    SampledSubset(Vec<RankPointVerdict>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VarietyDescriptor {
    pub kind: VarietyKind,
    pub ambient_dim: usize,
}

/// Indices of the odd basis elements of the module's algebra.
fn odd_basis(m: &SuperModule) -> Vec<usize> {
    (0..m.algebra.dim()).filter(|&i| m.algebra.parity(i) == Parity::Odd).collect()
}

/// The action matrix of x = Σ coords[s]·(odd basis)[s].
fn point_action(m: &SuperModule, coords: &[Rat]) -> SparseMatrix {
    let odd = odd_basis(m);
    let mut x = SparseMatrix::zero(m.dim(), m.dim());
    for (s, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            x = x.add(&m.actions[odd[s]].scale(c));
        }
    }
    x
}

/// C = ½·action([x, x]).
fn point_casimir(m: &SuperModule, coords: &[Rat]) -> SparseMatrix {
    let odd = odd_basis(m);
    let mut bracket: SparseVec = SparseVec::new();
    for (s, cs) in coords.iter().enumerate() {
        for (t, ct) in coords.iter().enumerate() {
            if cs.is_zero() || ct.is_zero() {
                continue;
            }
            for (k, b) in m.algebra.bracket_basis(odd[s], odd[t]) {
                let e = bracket.entry(k).or_insert_with(Rat::zero);
                *e += &b * &(cs * ct);
                if e.is_zero() {
                    bracket.remove(&k);
                }
            }
        }
    }
    m.action_of(&bracket).scale(&rat(1, 2))
}

/// Projectivity of M over U(⟨x⟩) at the given point of e₁̄.
///
/// Decomposition: M = M₀ ⊕ M₁ with M₀ = ker(C^N) the generalized
/// 0-eigenspace. On M₁ the quotient algebra is semisimple, so that block is
/// projective; on M₀ the operator X is square-zero up to nilpotency and M₀
/// is free iff rank(X|M₀) = dim(M₀)/2.
pub fn rank_point_test(m: &SuperModule, coords: &[Rat]) -> Result<RankPointVerdict, VarietyError> {
    let x = point_action(m, coords);
    let c = point_casimir(m, coords);
    if x.mul(&x).add(&c.scale(&rat_int(-1))).nnz() != 0 {
        return Err(VarietyError::RelationViolated(format!(
            "at point {:?}",
            coords.iter().map(crate::ratlin::format_rat).collect::<Vec<_>>()
        )));
    }
    let n = m.dim();
    // Fitting: kernel of C^n is the generalized 0-eigenspace
    let mut cpow = SparseMatrix::identity(n);
    for _ in 0..n {
        cpow = c.mul(&cpow);
    }
    let kernel = cpow.kernel_basis();
    let zero_block_dim = kernel.len();
    // X commutes with C, hence preserves the block; express X·k in the
    // kernel basis and take the rank
    let solver = SpanSolver::new(n, &kernel);
    let mut cols = Vec::new();
    for k in &kernel {
        let img = x.mul_vec(k);
        let col = solver.solve(&img).ok_or_else(|| {
            VarietyError::RelationViolated("X does not preserve the Fitting block".into())
        })?;
        cols.push(col);
    }
    let zero_block_rank = SparseMatrix::from_columns(zero_block_dim, cols).rank();
    let projective = 2 * zero_block_rank == zero_block_dim;
    Ok(RankPointVerdict {
        point: coords.iter().map(crate::ratlin::format_rat).collect(),
        projective,
        zero_block_dim,
        zero_block_rank,
    })
}

/// Samples `count` deterministic rational points of e₁̄ and records the
/// per-point rank verdicts. The zero point is in the variety by definition
/// and is not sampled.
pub fn rank_variety_sample(
    m: &SuperModule,
    count: usize,
    seed: u64,
) -> Result<VarietyDescriptor, VarietyError> {
    let odd = odd_basis(m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdicts = Vec::with_capacity(count);
    for _ in 0..count {
        let mut coords: Vec<Rat>;
        loop {
            coords = (0..odd.len())
                .map(|_| rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)))
                .collect();
            if coords.iter().any(|c| !c.is_zero()) {
                break;
            }
        }
        verdicts.push(rank_point_test(m, &coords)?);
    }
    Ok(VarietyDescriptor { kind: VarietyKind::SampledSubset(verdicts), ambient_dim: odd.len() })
}

/// Support variety of the simple module L(λ) over S̄(n) relative to g₀:
/// the zero point for typical λ, the full (n−2)-dimensional variety of the
/// trivial module for atypical λ.
pub fn support_simple(n: usize, lambda: &WeightVector) -> Result<VarietyDescriptor, VarietyError> {
    let atypical = atypical_dominant_form(lambda)?;
    let kind = if atypical { VarietyKind::FullAffine(n - 2) } else { VarietyKind::ZeroPoint };
    Ok(VarietyDescriptor { kind, ambient_dim: n - 2 })
}

/// Support variety of a Kac module: the zero point, for every dominant λ.
pub fn support_kac(n: usize, lambda: &WeightVector) -> Result<VarietyDescriptor, VarietyError> {
    if !lambda.is_dominant() {
        return Err(WeightError::NotDominant(lambda.0.clone()).into());
    }
    Ok(VarietyDescriptor { kind: VarietyKind::ZeroPoint, ambient_dim: n - 2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuotientGroup {
    /// the one-dimensional torus scaling direction
    Torus,
    /// the finite symmetric-group factor
    Symmetric,
}

/// Symbolic quotient of a closed-form descriptor: the torus removes one
/// dimension from the full affine space, a finite group preserves dimension,
/// and the zero point is fixed by everything.
pub fn quotient_descriptor(
    v: &VarietyDescriptor,
    group: QuotientGroup,
) -> Result<VarietyDescriptor, VarietyError> {
    match (&v.kind, group) {
        (VarietyKind::ZeroPoint, _) => Ok(v.clone()),
        (VarietyKind::FullAffine(d), QuotientGroup::Torus) => {
            if *d == 0 {
                return Err(VarietyError::Unsupported(
                    "torus quotient of a zero-dimensional space".into(),
                ));
            }
            Ok(VarietyDescriptor {
                kind: VarietyKind::FullAffine(d - 1),
                ambient_dim: v.ambient_dim.saturating_sub(1),
            })
        }
        (VarietyKind::FullAffine(d), QuotientGroup::Symmetric) => Ok(VarietyDescriptor {
            kind: VarietyKind::FullAffine(*d),
            ambient_dim: v.ambient_dim,
        }),
        (VarietyKind::SampledSubset(_), _) => {
            Err(VarietyError::Unsupported("cannot quotient a sampled subset".into()))
        }
    }
}

//! Finite-dimensional supermodules: validation, duals, tensors,
//! superdimension, Kac modules K(a*sigma) over Sbar(n), and random test
//! modules over detecting subalgebras.
//!
//! Sign conventions for duals, tensors, and the Kac-module action of the
//! positive part are fixed so that [`validate_module`] — the bracket and
//! parity compatibility check — passes; that check is the arbiter for every
//! module any constructor emits.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liesuper::{lambda_mul_sign as lambda_sign, CartanAlgebra, LieSuperalgebra};
use crate::ratlin::{format_rat, parse_rat, rat_int, vec_add_scaled, Rat, SparseMatrix, SparseVec};
use crate::superspace::{BasisLabel, Parity, SuperSpace};

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("random module relations unsatisfiable: {0}")]
    RelationUnsatisfiable(String),
    #[error("malformed module JSON: {0}")]
    Json(String),
}

/// A finite-dimensional supermodule: one action matrix per algebra basis
/// vector, columns indexed by the module basis.
#[derive(Debug, Clone)]
pub struct SuperModule {
    pub algebra: LieSuperalgebra,
    pub space: SuperSpace,
    pub actions: Vec<SparseMatrix>,
}

impl SuperModule {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Action matrix of an arbitrary algebra element given by coordinates.
    pub fn action_of(&self, v: &SparseVec) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.dim(), self.dim());
        for (&i, c) in v {
            out = out.add(&self.actions[i].scale(c));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks parity compatibility (even elements preserve the grading, odd
/// elements flip it) and bracket compatibility
/// [x,y].m = x.(y.m) - (-1)^{xy} y.(x.m) on all basis pairs.
pub fn validate_module(m: &SuperModule) -> ModuleReport {
    const CAP: usize = 16;
    let mut violations = Vec::new();
    let g = &m.algebra;
    if m.actions.len() != g.dim() {
        return ModuleReport {
            ok: false,
            violations: vec![format!(
                "expected {} action matrices, found {}",
                g.dim(),
                m.actions.len()
            )],
        };
    }
    'parity: for (i, a) in m.actions.iter().enumerate() {
        let p = g.parity(i);
        for (r, c, _) in a.entries_row_major() {
            if m.space.parity(r) != m.space.parity(c).add(p) {
                violations.push(format!(
                    "parity violated: {} maps basis {} to {}",
                    g.space.basis[i].label, m.space.basis[c].label, m.space.basis[r].label
                ));
                if violations.len() >= CAP {
                    break 'parity;
                }
            }
        }
    }
    'bracket: for i in 0..g.dim() {
        for j in i..g.dim() {
            let lhs = m.action_of(&g.bracket_basis(i, j));
            let sign = g.parity(i).koszul(g.parity(j));
            let mut rhs = m.actions[i].mul(&m.actions[j]);
            rhs = rhs.add(&m.actions[j].mul(&m.actions[i]).scale(&rat_int(-(sign as i64))));
            if !lhs.add(&rhs.scale(&rat_int(-1))).is_zero() {
                violations.push(format!(
                    "bracket compatibility violated on ({}, {})",
                    g.space.basis[i].label, g.space.basis[j].label
                ));
                if violations.len() >= CAP {
                    break 'bracket;
                }
            }
        }
    }
    ModuleReport { ok: violations.is_empty(), violations }
}

/// dim M_even - dim M_odd.
pub fn superdimension(m: &SuperModule) -> i64 {
    m.space.even_dim() as i64 - m.space.odd_dim() as i64
}

/// The trivial one-dimensional even module.
pub fn trivial_module(g: &LieSuperalgebra) -> SuperModule {
    let space = SuperSpace::from_degrees(vec![("1".into(), 0)]);
    let actions = (0..g.dim()).map(|_| SparseMatrix::zero(1, 1)).collect();
    SuperModule { algebra: g.clone(), space, actions }
}

/// The adjoint module: actions are the ad matrices.
pub fn adjoint_module(g: &LieSuperalgebra) -> SuperModule {
    let actions = (0..g.dim()).map(|i| g.ad_matrix(i)).collect();
    SuperModule { algebra: g.clone(), space: g.space.clone(), actions }
}

fn same_algebra(a: &LieSuperalgebra, b: &LieSuperalgebra) -> Result<(), ModuleError> {
    if a.space != b.space || a.stored_brackets() != b.stored_brackets() {
        return Err(ModuleError::AlgebraMismatch(a.name.clone(), b.name.clone()));
    }
    Ok(())
}

/// Dual module: (x.f)(v) = -(-1)^{x f} f(x.v).
pub fn dual(m: &SuperModule) -> SuperModule {
    let dim = m.dim();
    let actions = m
        .actions
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let xp = m.algebra.parity(i);
            let mut out = SparseMatrix::zero(dim, dim);
            for (r, c, v) in a.entries_row_major() {
                // new[c][r] = -(-1)^{x * parity(f_c)} a[r][c]
                let s = xp.koszul(m.space.parity(c));
                out.set(c, r, v * rat_int(-(s as i64)));
            }
            out
        })
        .collect();
    SuperModule { algebra: m.algebra.clone(), space: m.space.dual(), actions }
}

/// Tensor product via the coproduct: x.(a (x) b) = (x.a) (x) b
/// + (-1)^{x a} a (x) (x.b). Basis in row-major order (left factor outer).
pub fn tensor(m: &SuperModule, n: &SuperModule) -> Result<SuperModule, ModuleError> {
    same_algebra(&m.algebra, &n.algebra)?;
    let (dm, dn) = (m.dim(), n.dim());
    let dim = dm * dn;
    let actions = m
        .actions
        .iter()
        .zip(&n.actions)
        .enumerate()
        .map(|(i, (am, an))| {
            let xp = m.algebra.parity(i);
            let mut out = SparseMatrix::zero(dim, dim);
            for (r, c, v) in am.entries_row_major() {
                for b in 0..dn {
                    out.set(r * dn + b, c * dn + b, v.clone());
                }
            }
            for (r, c, v) in an.entries_row_major() {
                for a in 0..dm {
                    let s = xp.koszul(m.space.parity(a));
                    let prev = out.get(a * dn + r, a * dn + c);
                    out.set(a * dn + r, a * dn + c, prev + v.clone() * rat_int(s as i64));
                }
            }
            out
        })
        .collect();
    Ok(SuperModule { algebra: m.algebra.clone(), space: m.space.tensor(&n.space), actions })
}

/// Direct sum, left summand first.
pub fn direct_sum(m: &SuperModule, n: &SuperModule) -> Result<SuperModule, ModuleError> {
    same_algebra(&m.algebra, &n.algebra)?;
    let dm = m.dim();
    let dim = dm + n.dim();
    let mut basis = m.space.basis.clone();
    for b in &n.space.basis {
        basis.push(BasisLabel { label: format!("{}'", b.label), ..b.clone() });
    }
    let actions = m
        .actions
        .iter()
        .zip(&n.actions)
        .map(|(am, an)| {
            let mut out = SparseMatrix::zero(dim, dim);
            for (r, c, v) in am.entries_row_major() {
                out.set(r, c, v.clone());
            }
            for (r, c, v) in an.entries_row_major() {
                out.set(dm + r, dm + c, v.clone());
            }
            out
        })
        .collect();
    Ok(SuperModule { algebra: m.algebra.clone(), space: SuperSpace::new(basis), actions })
}

/// Parity flip: Pi(M) with x acting as (-1)^{x} times the old action, which
/// keeps bracket compatibility intact.
pub fn parity_flip(m: &SuperModule) -> SuperModule {
    let actions = m
        .actions
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if m.algebra.parity(i) == Parity::Odd {
                a.scale(&rat_int(-1))
            } else {
                a.clone()
            }
        })
        .collect();
    SuperModule { algebra: m.algebra.clone(), space: m.space.parity_flip(), actions }
}

// ---------------------------------------------------------------------------
// Kac modules for Sbar(n)
// ---------------------------------------------------------------------------

/// K(a*sigma) = U(g) (x)_{U(g0 + g+)} C_{a*sigma} over Sbar(n), realized on
/// Lambda(g_{-1}) (x) C with basis indexed by subsets S of {1..n}.
///
/// Convention: g_{-1} acts by left exterior multiplication; on the highest
/// weight line, the diagonal of g0 acts by a, the rest of g0 and all of g+
/// act by zero; the action on higher wedges is transported through
/// x.(d_s.w) = [x, d_s].w + (-1)^{x} d_s.(x.w), the module axiom itself.
pub fn kac_module_sigma(sbar: &CartanAlgebra, a: i64) -> SuperModule {
    let n = sbar.n;
    let g = &sbar.alg;
    let dim_m = 1usize << n;

    // act[i][mask] = action of basis vector i on the wedge line of `mask`,
    // as a sparse vector over masks
    let mut act: Vec<Vec<BTreeMap<u32, Rat>>> = vec![vec![BTreeMap::new(); dim_m]; g.dim()];

    // left insertion of d_s into a wedge vector over masks
    let insert = |s: usize, v: &BTreeMap<u32, Rat>| -> BTreeMap<u32, Rat> {
        let mut out = BTreeMap::new();
        for (&m, c) in v {
            let sign = lambda_sign(1 << s, m);
            if sign != 0 {
                out.insert(m | (1 << s), c * rat_int(sign as i64));
            }
        }
        out
    };

    // the diagonal degree-zero vectors xi_j d_j, by their W(n) realization
    let is_diagonal = |i: usize| {
        let w = &sbar.basis_w[i];
        w.len() == 1 && {
            let (&(mask, j), _) = w.iter().next().unwrap();
            mask == (1 << j)
        }
    };

    for mask in 0u32..(dim_m as u32) {
        for i in 0..g.dim() {
            let deg = g.space.degree(i);
            if deg == -1 {
                // d_i: left exterior multiplication
                let mut line = BTreeMap::new();
                line.insert(mask, Rat::one());
                act[i][mask as usize] = insert(i, &line);
            } else if mask == 0 {
                if deg == 0 && is_diagonal(i) && a != 0 {
                    let mut v = BTreeMap::new();
                    v.insert(0u32, rat_int(a));
                    act[i][0] = v;
                }
                // off-diagonal g0 and all of g+ annihilate the highest line
            } else {
                let s = mask.trailing_zeros() as usize;
                let rest = mask & !(1u32 << s);
                let mut out: BTreeMap<u32, Rat> = BTreeMap::new();
                for (&k, c) in &g.bracket_basis(i, s) {
                    vec_add_scaled(&mut out, &act[k][rest as usize], c);
                }
                let sign = rat_int(if g.parity(i) == Parity::Odd { -1 } else { 1 });
                let transported = insert(s, &act[i][rest as usize]);
                vec_add_scaled(&mut out, &transported, &sign);
                act[i][mask as usize] = out;
            }
        }
    }

    let basis = (0u32..(dim_m as u32))
        .map(|mask| {
            let mut label = String::new();
            for k in 0..n {
                if mask & (1 << k) != 0 {
                    label.push_str(&format!("d{}", k + 1));
                }
            }
            label.push('v');
            BasisLabel {
                label,
                degree: -(mask.count_ones() as i64),
                parity: Parity::from_degree(mask.count_ones() as i64),
            }
        })
        .collect();
    let space = SuperSpace::new(basis);

    let actions = (0..g.dim())
        .map(|i| {
            let cols = (0..dim_m)
                .map(|mask| {
                    act[i][mask]
                        .iter()
                        .map(|(&m, c)| (m as usize, c.clone()))
                        .collect()
                })
                .collect();
            SparseMatrix::from_columns(dim_m, cols)
        })
        .collect();

    SuperModule { algebra: g.clone(), space, actions }
}

// ---------------------------------------------------------------------------
// Modules over detecting subalgebras
// ---------------------------------------------------------------------------

fn check_detecting_shape(e: &LieSuperalgebra) -> Result<(Vec<usize>, Vec<usize>), ModuleError> {
    let even: Vec<usize> = (0..e.dim()).filter(|&i| e.parity(i) == Parity::Even).collect();
    let odd: Vec<usize> = (0..e.dim()).filter(|&i| e.parity(i) == Parity::Odd).collect();
    for &i in &even {
        for j in 0..e.dim() {
            if !e.bracket_basis(i, j).is_empty() {
                return Err(ModuleError::Precondition(
                    "[e0, e0] = [e0, e1] = 0 must hold".into(),
                ));
            }
        }
    }
    for &s in &odd {
        for &t in &odd {
            if e.bracket_basis(s, t).keys().any(|&k| e.parity(k) == Parity::Odd) {
                return Err(ModuleError::Precondition("[e1, e1] must lie in e0".into()));
            }
        }
    }
    Ok((even, odd))
}

/// Random valid e-supermodule of the given (even|odd) dimensions,
/// deterministic in the seed.
///
/// The module is a direct sum of (1|1) blocks plus scalar lines. Per block,
/// the even part acts by a character chi and the odd vector x_s by
/// [[0, a_s], [b_s, 0]]; the Clifford relations a_s b_t + a_t b_s =
/// chi([x_s, x_t]) are linear in (b, chi) once a is fixed, so a random
/// kernel vector of that system always yields a consistent block. Scalar
/// lines carry characters vanishing on [e1, e1].
pub fn random_e_module(
    e: &LieSuperalgebra,
    dims: (usize, usize),
    seed: u64,
) -> Result<SuperModule, ModuleError> {
    let (even, odd) = check_detecting_shape(e)?;
    let q = odd.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| rat_int(rng.gen_range(-3i64..=3));
    let small_nonzero = |rng: &mut ChaCha8Rng| {
        let v = rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        rat_int(v)
    };

    let (p_dim, q_dim) = dims;
    let nb = p_dim.min(q_dim);

    // constraint rows: pairs (s <= t) of odd indices with target chi(c_st)
    let pairs: Vec<(usize, usize)> = (0..q)
        .flat_map(|s| (s..q).map(move |t| (s, t)))
        .collect();

    // blocks: solve for (b, chi) in the kernel of the relation system
    let mut blocks = Vec::with_capacity(nb);
    for _ in 0..nb {
        let a_vec: Vec<Rat> = (0..q).map(|_| small_nonzero(&mut rng)).collect();
        // unknowns: b_0..b_{q-1}, chi_0..chi_{|even|-1}
        let unknowns = q + even.len();
        let mut cols: Vec<SparseVec> = vec![SparseVec::new(); unknowns];
        for (row, &(s, t)) in pairs.iter().enumerate() {
            // a_s b_t + a_t b_s - chi([x_s, x_t]) = 0
            let add = |cols: &mut Vec<SparseVec>, u: usize, c: Rat| {
                if c.is_zero() {
                    return;
                }
                let entry = cols[u].entry(row).or_insert_with(Rat::zero);
                *entry += c;
                if entry.is_zero() {
                    cols[u].remove(&row);
                }
            };
            add(&mut cols, t, a_vec[s].clone());
            add(&mut cols, s, a_vec[t].clone());
            let c_st = e.bracket_basis(odd[s], odd[t]);
            for (&k, c) in &c_st {
                let pos = even
                    .iter()
                    .position(|&ei| ei == k)
                    .expect("checked: [e1, e1] in e0");
                add(&mut cols, q + pos, -c.clone());
            }
        }
        let system = SparseMatrix::from_columns(pairs.len(), cols);
        let kernel = system.kernel_basis();
        if kernel.is_empty() {
            return Err(ModuleError::RelationUnsatisfiable(
                "no consistent (b, chi) for the sampled a".into(),
            ));
        }
        let mut sol = SparseVec::new();
        for k in &kernel {
            vec_add_scaled(&mut sol, k, &small(&mut rng));
        }
        let b_vec: Vec<Rat> = (0..q).map(|s| sol.get(&s).cloned().unwrap_or_else(Rat::zero)).collect();
        let chi: Vec<Rat> = (0..even.len())
            .map(|k| sol.get(&(q + k)).cloned().unwrap_or_else(Rat::zero))
            .collect();
        blocks.push((a_vec, b_vec, chi));
    }

    // scalar lines: characters vanishing on all [e1, e1] brackets
    let line_chi_space: Vec<SparseVec> = {
        let cols: Vec<SparseVec> = (0..even.len())
            .map(|pos| {
                let mut col = SparseVec::new();
                for (row, &(s, t)) in pairs.iter().enumerate() {
                    if let Some(c) = e.bracket_basis(odd[s], odd[t]).get(&even[pos]) {
                        col.insert(row, c.clone());
                    }
                }
                col
            })
            .collect();
        SparseMatrix::from_columns(pairs.len(), cols).kernel_basis()
    };
    let line_char = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
        let mut sol = SparseVec::new();
        for k in &line_chi_space {
            vec_add_scaled(&mut sol, k, &small(rng));
        }
        (0..even.len()).map(|k| sol.get(&k).cloned().unwrap_or_else(Rat::zero)).collect()
    };
    let even_lines: Vec<Vec<Rat>> = (0..p_dim - nb).map(|_| line_char(&mut rng)).collect();
    let odd_lines: Vec<Vec<Rat>> = (0..q_dim - nb).map(|_| line_char(&mut rng)).collect();

    // basis: block evens, extra even lines, block odds, extra odd lines
    let mut basis = Vec::new();
    for k in 0..nb {
        basis.push(BasisLabel { label: format!("u{k}"), degree: 0, parity: Parity::Even });
    }
    for k in 0..even_lines.len() {
        basis.push(BasisLabel { label: format!("p{k}"), degree: 0, parity: Parity::Even });
    }
    let odd_base = p_dim;
    for k in 0..nb {
        basis.push(BasisLabel { label: format!("w{k}"), degree: 0, parity: Parity::Odd });
    }
    for k in 0..odd_lines.len() {
        basis.push(BasisLabel { label: format!("q{k}"), degree: 0, parity: Parity::Odd });
    }
    let space = SuperSpace::new(basis);
    let dim = space.dim();

    let mut actions = Vec::with_capacity(e.dim());
    for i in 0..e.dim() {
        let mut m = SparseMatrix::zero(dim, dim);
        if let Some(pos) = even.iter().position(|&ei| ei == i) {
            for (k, (_, _, chi)) in blocks.iter().enumerate() {
                m.set(k, k, chi[pos].clone());
                m.set(odd_base + k, odd_base + k, chi[pos].clone());
            }
            for (k, chi) in even_lines.iter().enumerate() {
                m.set(nb + k, nb + k, chi[pos].clone());
            }
            for (k, chi) in odd_lines.iter().enumerate() {
                m.set(odd_base + nb + k, odd_base + nb + k, chi[pos].clone());
            }
        } else {
            let s = odd.iter().position(|&oi| oi == i).unwrap();
            for (k, (a_vec, b_vec, _)) in blocks.iter().enumerate() {
                // x_s: even slot -> b_s * odd slot, odd slot -> a_s * even slot
                m.set(odd_base + k, k, b_vec[s].clone());
                m.set(k, odd_base + k, a_vec[s].clone());
            }
        }
        actions.push(m);
    }

    Ok(SuperModule { algebra: e.clone(), space, actions })
}

/// The free fixture Lambda(e1): basis indexed by subsets of the odd basis,
/// even part acting by zero and each odd vector by left exterior
/// multiplication. Every nonzero point of e1 acts with square zero and
/// half-dimensional rank, so the module is projective away from zero.
pub fn free_e_module(e: &LieSuperalgebra) -> Result<SuperModule, ModuleError> {
    let (_, odd) = check_detecting_shape(e)?;
    let q = odd.len();
    let dim = 1usize << q;
    let basis = (0u32..(dim as u32))
        .map(|mask| BasisLabel {
            label: format!("f{mask}"),
            degree: 0,
            parity: Parity::from_degree(mask.count_ones() as i64),
        })
        .collect();
    let space = SuperSpace::new(basis);
    let mut actions = vec![SparseMatrix::zero(dim, dim); e.dim()];
    for (s, &oi) in odd.iter().enumerate() {
        let mut m = SparseMatrix::zero(dim, dim);
        for mask in 0u32..(dim as u32) {
            let sign = lambda_sign(1 << s, mask);
            if sign != 0 {
                m.set((mask | (1 << s)) as usize, mask as usize, rat_int(sign as i64));
            }
        }
        actions[oi] = m;
    }
    Ok(SuperModule { algebra: e.clone(), space, actions })
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DimsJson {
    even: usize,
    odd: usize,
}

type ActionTriplets = Vec<(usize, Vec<(usize, usize, String)>)>;

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    algebra_ref: String,
    dims: DimsJson,
    actions: ActionTriplets,
}

pub fn module_to_json(m: &SuperModule) -> serde_json::Value {
    // canonicalize to the even-first basis order the reader reconstructs
    let order: Vec<usize> = (0..m.dim())
        .filter(|&i| m.space.parity(i) == Parity::Even)
        .chain((0..m.dim()).filter(|&i| m.space.parity(i) == Parity::Odd))
        .collect();
    let mut new_index = vec![0usize; m.dim()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let actions = m
        .actions
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| {
            let mut triplets: Vec<(usize, usize, String)> = a
                .entries_row_major()
                .into_iter()
                .map(|(r, c, v)| (new_index[r], new_index[c], format_rat(&v)))
                .collect();
            triplets.sort_by_key(|t| (t.0, t.1));
            (i, triplets)
        })
        .collect();
    serde_json::to_value(ModuleJson {
        algebra_ref: m.algebra.name.clone(),
        dims: DimsJson { even: m.space.even_dim(), odd: m.space.odd_dim() },
        actions,
    })
    .unwrap()
}

/// Rebuilds a module over the given algebra. The basis is reconstructed as
/// `even` even lines followed by `odd` odd lines, matching the convention of
/// [`module_to_json`] consumers that only exchange plain (even|odd) shapes.
pub fn module_from_json(
    g: &LieSuperalgebra,
    v: &serde_json::Value,
) -> Result<SuperModule, ModuleError> {
    let parsed: ModuleJson =
        serde_json::from_value(v.clone()).map_err(|e| ModuleError::Json(e.to_string()))?;
    if parsed.algebra_ref != g.name {
        return Err(ModuleError::AlgebraMismatch(parsed.algebra_ref, g.name.clone()));
    }
    let dim = parsed.dims.even + parsed.dims.odd;
    let mut basis = Vec::new();
    for k in 0..parsed.dims.even {
        basis.push(BasisLabel { label: format!("e{k}"), degree: 0, parity: Parity::Even });
    }
    for k in 0..parsed.dims.odd {
        basis.push(BasisLabel { label: format!("o{k}"), degree: 0, parity: Parity::Odd });
    }
    let space = SuperSpace::new(basis);
    let mut actions = vec![SparseMatrix::zero(dim, dim); g.dim()];
    for (i, triplets) in parsed.actions {
        if i >= g.dim() {
            return Err(ModuleError::Json(format!("action index {i} out of range")));
        }
        let mut m = SparseMatrix::zero(dim, dim);
        for (r, c, s) in triplets {
            if r >= dim || c >= dim {
                return Err(ModuleError::Json(format!("entry ({r}, {c}) out of range")));
            }
            let val =
                parse_rat(&s).ok_or_else(|| ModuleError::Json(format!("bad rational {s}")))?;
            m.set(r, c, val);
        }
        actions[i] = m;
    }
    Ok(SuperModule { algebra: g.clone(), space, actions })
}

//! Invariant rings on the module side of the cohomology isomorphisms:
//! brute-force symmetric-power invariants of the g₀-action, torus-invariant
//! monomials of S(𝔞₁̄*), finite-group invariants on the torus-invariant
//! subring, and Hilbert series.
//!
//! The finite group acting on the torus-invariant variables y_k = Z_k ∂₁* is
//! the full normalizer image Σ_{n−1} (permutations of the indices 2..n),
//! acting through its reflection representation: a permutation π sends the
//! spanning vector v_i = ξ₁ξ₂∂₂ − ξ₁ξᵢ∂ᵢ to v_{π(i)} − v_{π(2)} (with
//! v₂ = 0). The invariant ring is therefore polynomial on n−2 generators of
//! cohomological degrees 4, 6, …, 2(n−1).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{cohomology_dims, CohomologyError};
use crate::liesuper::{construct_sbar, degree_zero_subalgebra, AlgebraError, CartanAlgebra};
use crate::ratlin::{rat_int, Eliminator, Rat, SparseMatrix, SparseVec};
use crate::smodule::trivial_module;

#[derive(Debug, Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("invariants setup error: {0}")]
    Setup(String),
}

/// A polynomial variable with a torus weight.
#[derive(Debug, Clone)]
pub struct TorusVariable {
    pub label: String,
    pub weight: Vec<Rat>,
}

/// Coefficients of a Hilbert series, one per degree up to a cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub coeffs: Vec<usize>,
}

/// Expands Π 1/(1 − t^d) over the generator degrees, up to `cap`.
/// The coefficient at degree k counts multisets of generator degrees
/// summing to k.
pub fn hilbert_series_from_degrees(degrees: &[usize], cap: usize) -> HilbertSeries {
    let mut coeffs = vec![0usize; cap + 1];
    coeffs[0] = 1;
    for &d in degrees {
        if d == 0 {
            continue;
        }
        for k in d..=cap {
            coeffs[k] += coeffs[k - d];
        }
    }
    HilbertSeries { coeffs }
}

/// The dual basis variables of 𝔞₁̄ = span{∂₁, ξ₁ξ₂∂₂ − ξ₁ξᵢ∂ᵢ (i = 3..n)},
/// with torus weights computed from the adjoint action of the diagonal
/// Cartan subalgebra (weights of the dual are the negated vector weights).
pub fn a1_dual_variables(sbar: &CartanAlgebra) -> Result<Vec<TorusVariable>, InvariantsError> {
    let pair = crate::liesuper::detecting_subalgebra_sbar(sbar)?;
    let a1: Vec<&SparseVec> = pair.a.members[pair.a_even_count..].iter().collect();
    let n = sbar.n;
    let diag: Vec<usize> = (1..=n)
        .map(|i| {
            sbar.index_of_label(&format!("x{i}d{i}"))
                .ok_or_else(|| InvariantsError::Setup(format!("missing torus element x{i}d{i}")))
        })
        .collect::<Result<_, _>>()?;
    let mut vars = Vec::new();
    for (s, v) in a1.iter().enumerate() {
        let mut weight = Vec::with_capacity(n);
        for &h in &diag {
            // [h, v] = w(v) v for torus elements acting on a weight vector
            let mut img: SparseVec = BTreeMap::new();
            for (&k, c) in v.iter() {
                for (j, b) in sbar.alg.bracket_basis(h, k) {
                    let e = img.entry(j).or_insert_with(Rat::zero);
                    *e += &b * c;
                    if e.is_zero() {
                        img.remove(&j);
                    }
                }
            }
            let eig = match v.iter().next() {
                Some((&k0, c0)) => img.get(&k0).cloned().unwrap_or_else(Rat::zero) / c0,
                None => Rat::zero(),
            };
            // check the action really is scalar on v
            for (&k, c) in v.iter() {
                let got = img.get(&k).cloned().unwrap_or_else(Rat::zero);
                if got != &eig * c {
                    return Err(InvariantsError::Setup(
                        "a1 basis vector is not a torus weight vector".into(),
                    ));
                }
            }
            weight.push(-eig);
        }
        let label = if s == 0 {
            "d1*".to_string()
        } else {
            format!("Z{}", s + 2)
        };
        vars.push(TorusVariable { label, weight });
    }
    Ok(vars)
}

/// Exponent vector of a monomial in the given variables.
pub type Monomial = Vec<u32>;

/// All monomials of total torus weight zero and total degree ≤ cap,
/// in deterministic (degree, then lexicographic) order. The constant
/// monomial is always included.
pub fn torus_invariants(vars: &[TorusVariable], cap: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut expo = vec![0u32; vars.len()];
    fn rec(
        vars: &[TorusVariable],
        pos: usize,
        left: usize,
        expo: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if pos == vars.len() {
            let dim = vars.first().map_or(0, |v| v.weight.len());
            let mut total = vec![Rat::zero(); dim];
            for (e, v) in expo.iter().zip(vars) {
                for (t, w) in total.iter_mut().zip(&v.weight) {
                    *t += w * rat_int(*e as i64);
                }
            }
            if total.iter().all(|t| t.is_zero()) {
                out.push(expo.clone());
            }
            return;
        }
        for e in 0..=(left as u32) {
            expo[pos] = e;
            rec(vars, pos + 1, left - e as usize, expo, out);
        }
        expo[pos] = 0;
    }
    rec(vars, 0, cap, &mut expo, &mut out);
    out.sort_by_key(|m| (m.iter().sum::<u32>(), m.clone()));
    out
}

/// Generator degrees and Hilbert series of the finite-group invariants on
/// the torus-invariant subring ℂ[y₃, …, y_n], y_k = Z_k∂₁*. The group is
/// Σ_{n−1} in its reflection representation, so the generators sit in
/// y-degrees 2..n−1, i.e. cohomological degrees 4, 6, …, 2(n−1).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricInvariants {
    pub n: usize,
    /// cohomological degrees of the free generators
    pub generator_degrees: Vec<usize>,
    pub series: HilbertSeries,
}

pub fn symmetric_invariants(n: usize, cap: usize) -> Result<SymmetricInvariants, InvariantsError> {
    if n < 3 {
        return Err(InvariantsError::Setup("need n >= 3".into()));
    }
    let generator_degrees: Vec<usize> = (2..=n - 1).map(|i| 2 * i).collect();
    let series = hilbert_series_from_degrees(&generator_degrees, cap);
    Ok(SymmetricInvariants { n, generator_degrees, series })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn heap(a: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(a, k - 1, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    heap(&mut cur, k, &mut out);
    out
}

type Poly = BTreeMap<Monomial, Rat>;

fn poly_add_scaled(dst: &mut Poly, src: &Poly, c: &Rat) {
    for (m, a) in src {
        let e = dst.entry(m.clone()).or_insert_with(Rat::zero);
        *e += a * c;
        if e.is_zero() {
            dst.remove(m);
        }
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert_with(Rat::zero);
            *e += ca * cb;
            if e.is_zero() {
                // removal deferred; zero entries are harmless here
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Brute-force dimensions of the Σ_{n−1}-invariants in each y-degree of
/// ℂ[y₃, …, y_n] under the reflection action π·yᵢ = y_{π(i)} − y_{π(2)},
/// returned per cohomological degree (y-degree doubled) up to `cap`.
pub fn reflection_invariant_dims(n: usize, cap: usize) -> Result<Vec<usize>, InvariantsError> {
    if n < 3 {
        return Err(InvariantsError::Setup("need n >= 3".into()));
    }
    let nv = n - 2; // variables y_3..y_n, index 0..nv
    let perms = permutations(n - 1); // permutations of indices 2..n (offset 2)
    // linear images: for each group element, y_i ↦ y_{π(i)} − y_{π(2)} as a poly
    let group: Vec<Vec<Poly>> = perms
        .iter()
        .map(|p| {
            let image_of = |idx2n: usize| -> Poly {
                // p maps positions 0..n-2 standing for labels 2..n
                let target = p[idx2n - 2] + 2;
                let mut poly = Poly::new();
                if target >= 3 {
                    let mut m = vec![0u32; nv];
                    m[target - 3] = 1;
                    poly.insert(m, rat_int(1));
                }
                poly
            };
            (3..=n)
                .map(|i| {
                    let mut f = image_of(i);
                    poly_add_scaled(&mut f, &image_of(2), &rat_int(-1));
                    f
                })
                .collect()
        })
        .collect();
    let ycap = cap / 2;
    let mut dims = vec![0usize; cap + 1];
    dims[0] = 1;
    for d in 1..=ycap {
        // monomial basis of degree d
        let mut basis: Vec<Monomial> = Vec::new();
        let mut cur = vec![0u32; nv];
        fn enumerate(nv: usize, pos: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if pos == nv - 1 {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                enumerate(nv, pos + 1, left - e, cur, out);
            }
        }
        enumerate(nv, 0, d as u32, &mut cur, &mut basis);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let order = rat_int(perms.len() as i64);
        // Reynolds operator columns
        let mut elim = Eliminator::new(basis.len(), None);
        for m in &basis {
            let mut avg = Poly::new();
            for g in &group {
                // substitute each variable's linear image, multiply powers
                let mut term: Poly = BTreeMap::from([(vec![0u32; nv], rat_int(1))]);
                for (v, &e) in m.iter().enumerate() {
                    for _ in 0..e {
                        term = poly_mul(&term, &g[v]);
                    }
                }
                poly_add_scaled(&mut avg, &term, &rat_int(1));
            }
            let col: SparseVec = avg
                .iter()
                .map(|(mm, c)| (index[mm], c / &order))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            elim.push_column(col);
        }
        dims[2 * d] = elim.rank();
    }
    dims.truncate(cap + 1);
    Ok(dims)
}

/// Dual-action matrices of every g₀ basis element on (g₋₁ ⊕ g₁)*, computed
/// from the adjoint action on the grade ±1 part of S̄(n).
pub fn g0_module_qdual(
    sbar: &CartanAlgebra,
) -> Result<(Vec<SparseMatrix>, Vec<String>), InvariantsError> {
    let g = &sbar.alg;
    let span: Vec<usize> = (0..g.dim())
        .filter(|&i| {
            let d = g.space.degree(i);
            d == -1 || d == 1
        })
        .collect();
    let pos: BTreeMap<usize, usize> = span.iter().enumerate().map(|(a, &i)| (i, a)).collect();
    let g0: Vec<usize> = (0..g.dim()).filter(|&i| g.space.degree(i) == 0).collect();
    let mut mats = Vec::new();
    let mut labels = Vec::new();
    for &h in &g0 {
        let mut triplets = Vec::new();
        for (col, &k) in span.iter().enumerate() {
            for (j, c) in g.bracket_basis(h, k) {
                let row = *pos.get(&j).ok_or_else(|| {
                    InvariantsError::Setup("adjoint action left the grade ±1 span".into())
                })?;
                triplets.push((row, col, c));
            }
        }
        let a = SparseMatrix::from_triplets(span.len(), span.len(), &triplets);
        // dual action of an even element: x·f = -f ∘ x
        mats.push(a.transpose().scale(&rat_int(-1)));
        labels.push(g.space.basis[h].label.clone());
    }
    Ok((mats, labels))
}

/// Dimension of the invariants of S^p(V) under the Lie-algebra action given
/// by `ops` (even operators; the induced action is by derivations on the
/// monomial basis). Weight filtering by the diagonal operators keeps the
/// kernel intersection small.
pub fn invariant_dim_bruteforce(ops: &[SparseMatrix], p: usize) -> usize {
    if ops.is_empty() {
        return 0;
    }
    let dim = ops[0].rows();
    if p == 0 {
        return 1;
    }
    // monomials as weakly increasing words of length p
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; p];
    fn rec(dim: usize, pos: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur[pos] = v;
            rec(dim, pos + 1, v, cur, out);
        }
    }
    rec(dim, 0, 0, &mut cur, &mut words);
    let (diag, rest): (Vec<&SparseMatrix>, Vec<&SparseMatrix>) =
        ops.iter().partition(|a| a.is_diagonal());
    // weight filter: keep words with eigenvalue zero under every diagonal op
    let filtered: Vec<Vec<usize>> = words
        .into_iter()
        .filter(|w| {
            diag.iter().all(|a| {
                let s = w
                    .iter()
                    .fold(Rat::zero(), |acc, &v| acc + a.get(v, v));
                s.is_zero()
            })
        })
        .collect();
    if filtered.is_empty() {
        return 0;
    }
    // derivation action of each remaining op; constraint rows indexed by
    // reached monomials
    let mut row_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut columns: Vec<SparseVec> = vec![BTreeMap::new(); filtered.len()];
    for (ci, w) in filtered.iter().enumerate() {
        for (oi, a) in rest.iter().enumerate() {
            let mut img: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
            for k in 0..p {
                let col = a.column(w[k]);
                for (&j, c) in col {
                    let mut nw = w.clone();
                    nw[k] = j;
                    nw.sort_unstable();
                    let e = img.entry(nw).or_insert_with(Rat::zero);
                    *e += c;
                }
            }
            for (mono, c) in img {
                if c.is_zero() {
                    continue;
                }
                let next = row_index.len();
                let r = *row_index.entry((oi, mono)).or_insert(next);
                columns[ci].insert(r, c);
            }
        }
    }
    let rows = row_index.len();
    let mut elim = Eliminator::new(rows.max(1), None);
    for col in columns {
        elim.push_column(col);
    }
    elim.kernel_vectors().len()
}

/// Triple cross-check of the cohomology ring isomorphisms for S̄(n):
/// cochain cohomology, brute-force module invariants, and the closed-form
/// Hilbert series, degree by degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub p_max: usize,
    pub cohomology: Vec<usize>,
    pub bruteforce: Vec<usize>,
    pub hilbert: Vec<usize>,
    pub agree: bool,
}

pub fn crosscheck_iso(n: usize, p_max: usize) -> Result<CrosscheckReport, InvariantsError> {
    let sbar = construct_sbar(n)?;
    let t = degree_zero_subalgebra(&sbar.alg);
    let m = trivial_module(&sbar.alg);
    let table = cohomology_dims(&sbar.alg, t, &m, "C", "g0", p_max)?;
    let (ops, _) = g0_module_qdual(&sbar)?;
    let bruteforce: Vec<usize> = (0..=p_max).map(|p| invariant_dim_bruteforce(&ops, p)).collect();
    let hilbert = symmetric_invariants(n, p_max)?.series.coeffs;
    let agree = table.dims == bruteforce && bruteforce == hilbert;
    Ok(CrosscheckReport {
        n,
        p_max,
        cohomology: table.dims,
        bruteforce,
        hilbert,
        agree,
    })
}

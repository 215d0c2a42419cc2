//! Construction and validation of the Lie superalgebras in scope: the
//! Cartan-type algebras W(n), S(n), Sbar(n) realized as superderivations of
//! the exterior algebra Lambda(n), the matrix superalgebras gl(m|n), and
//! their distinguished subalgebras.
//!
//! Structure constants are always computed (by composing superderivations or
//! matrix units), never hand-entered.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ratlin::{
    format_rat, parse_rat, rat_int, vec_add_scaled, Rat, SparseMatrix, SparseVec, SpanSolver,
};
use crate::superspace::{BasisLabel, Parity, SuperSpace};

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("not a subalgebra: bracket of members {0} and {1} leaves the span")]
    NotASubalgebra(usize, usize),
    #[error("quotient ill-defined: {0}")]
    QuotientIllDefined(String),
    #[error("member vector {0} is not parity/degree homogeneous")]
    NotHomogeneous(usize),
    #[error("malformed algebra JSON: {0}")]
    Json(String),
}

// ---------------------------------------------------------------------------
// Exterior algebra Lambda(n) and superderivations
// ---------------------------------------------------------------------------

/// Monomial xi_I as a bitmask over {1..n} (bit i-1 set means xi_i present).
pub type Mask = u32;

/// Element of Lambda(n): mask -> coefficient.
pub type LambdaElt = BTreeMap<Mask, Rat>;

/// Element of W(n) = Lambda(n) tensor V*: (mask, i) -> coefficient of xi_I d_i,
/// with i zero-based.
pub type WElt = BTreeMap<(Mask, usize), Rat>;

fn mask_len(m: Mask) -> u32 {
    m.count_ones()
}

/// Sign of xi_I * xi_J as the merge of two increasing words of odd
/// generators; zero on overlap.
pub fn lambda_mul_sign(a: Mask, b: Mask) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // count inversions: pairs i in a, j in b with i > j
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let above = a >> (j + 1);
        inv += above.count_ones();
        bb &= bb - 1;
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn lambda_mul(a: &LambdaElt, b: &LambdaElt) -> LambdaElt {
    let mut out = LambdaElt::new();
    for (&ma, ca) in a {
        for (&mb, cb) in b {
            let s = lambda_mul_sign(ma, mb);
            if s == 0 {
                continue;
            }
            let entry = out.entry(ma | mb).or_insert_with(Rat::zero);
            *entry += ca * cb * rat_int(s as i64);
            if entry.is_zero() {
                out.remove(&(ma | mb));
            }
        }
    }
    out
}

/// The odd derivation d_i on a monomial: d_i(xi_I) = (-1)^{pos} xi_{I \ i}
/// where pos counts generators of I below i.
fn del_monomial(i: usize, m: Mask) -> Option<(i32, Mask)> {
    let bit = 1u32 << i;
    if m & bit == 0 {
        return None;
    }
    let below = (m & (bit - 1)).count_ones();
    let sign = if below.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, m & !bit))
}

pub fn del(i: usize, f: &LambdaElt) -> LambdaElt {
    let mut out = LambdaElt::new();
    for (&m, c) in f {
        if let Some((s, m2)) = del_monomial(i, m) {
            let entry = out.entry(m2).or_insert_with(Rat::zero);
            *entry += c * rat_int(s as i64);
            if entry.is_zero() {
                out.remove(&m2);
            }
        }
    }
    out
}

/// Applies a W(n) element, extended as a superderivation of Lambda(n), to f.
/// Since (g d_i)(x) = g * d_i(x), this is a plain sum over terms.
pub fn apply_w(d: &WElt, f: &LambdaElt) -> LambdaElt {
    let mut out = LambdaElt::new();
    for (&(mask, i), coeff) in d {
        let mut g = LambdaElt::new();
        g.insert(mask, coeff.clone());
        let prod = lambda_mul(&g, &del(i, f));
        vec_add_scaled(&mut out, &prod, &Rat::one());
    }
    out
}

fn term_parity(mask: Mask) -> Parity {
    Parity::from_degree(mask_len(mask) as i64 - 1)
}

/// Supercommutator of two W(n) elements, term by term:
/// [f d_i, g d_j] = f d_i(g) d_j - (-1)^{p q} g d_j(f) d_i.
pub fn bracket_w(a: &WElt, b: &WElt) -> WElt {
    let mut out = WElt::new();
    let mut add = |mask: Mask, i: usize, c: Rat| {
        if c.is_zero() {
            return;
        }
        let entry = out.entry((mask, i)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            out.remove(&(mask, i));
        }
    };
    for (&(ma, i), ca) in a {
        for (&(mb, j), cb) in b {
            let pq = term_parity(ma).koszul(term_parity(mb));
            // f d_i(g) d_j
            if let Some((s, g2)) = del_monomial(i, mb) {
                let ms = lambda_mul_sign(ma, g2);
                if ms != 0 {
                    add(ma | g2, j, ca * cb * rat_int((s * ms) as i64));
                }
            }
            // -(-1)^{pq} g d_j(f) d_i
            if let Some((s, f2)) = del_monomial(j, ma) {
                let ms = lambda_mul_sign(mb, f2);
                if ms != 0 {
                    add(mb | f2, i, ca * cb * rat_int((-pq * s * ms) as i64));
                }
            }
        }
    }
    out
}

/// div(sum f_i d_i) = sum d_i(f_i).
pub fn divergence(d: &WElt) -> LambdaElt {
    let mut out = LambdaElt::new();
    for (&(mask, i), coeff) in d {
        if let Some((s, m2)) = del_monomial(i, mask) {
            let entry = out.entry(m2).or_insert_with(Rat::zero);
            *entry += coeff * rat_int(s as i64);
            if entry.is_zero() {
                out.remove(&m2);
            }
        }
    }
    out
}

/// The Euler element E = sum_i xi_i d_i.
pub fn euler_element(n: usize) -> WElt {
    (0..n).map(|i| ((1u32 << i, i), Rat::one())).collect()
}

fn w_flat_index(n: usize, mask: Mask, i: usize) -> usize {
    (mask as usize) * n + i
}

fn w_to_flat(n: usize, w: &WElt) -> SparseVec {
    w.iter()
        .map(|(&(mask, i), c)| (w_flat_index(n, mask, i), c.clone()))
        .collect()
}

fn monomial_label(n: usize, mask: Mask, i: usize) -> String {
    let mut s = String::new();
    for k in 0..n {
        if mask & (1 << k) != 0 {
            s.push_str(&format!("x{}", k + 1));
        }
    }
    s.push_str(&format!("d{}", i + 1));
    s
}

// ---------------------------------------------------------------------------
// Abstract Lie superalgebra on structure constants
// ---------------------------------------------------------------------------

/// Basis-indexed Lie superalgebra. Brackets are stored only for i <= j and
/// reflected through super antisymmetry.
#[derive(Debug, Clone)]
pub struct LieSuperalgebra {
    pub name: String,
    pub space: SuperSpace,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

impl LieSuperalgebra {
    pub fn new(name: String, space: SuperSpace, brackets: BTreeMap<(usize, usize), SparseVec>) -> Self {
        for (&(i, j), v) in &brackets {
            assert!(i <= j && j < space.dim());
            if let Some((&k, _)) = v.last_key_value() {
                assert!(k < space.dim());
            }
        }
        LieSuperalgebra { name, space, brackets }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.space.parity(i)
    }

    /// [b_i, b_j] as a coordinate vector, for any index order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let v = self.brackets.get(&(j, i)).cloned().unwrap_or_default();
            let sign = -self.parity(i).koszul(self.parity(j));
            v.into_iter().map(|(k, c)| (k, c * rat_int(sign as i64))).collect()
        }
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, ci) in x {
            for (&j, cj) in y {
                let b = self.bracket_basis(i, j);
                vec_add_scaled(&mut out, &b, &(ci * cj));
            }
        }
        out
    }

    /// Test-only back door for fault injection.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) {
        assert!(i <= j);
        if v.is_empty() {
            self.brackets.remove(&(i, j));
        } else {
            self.brackets.insert((i, j), v);
        }
    }

    pub fn stored_brackets(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    /// Adjoint action matrix of basis vector i on the whole algebra.
    pub fn ad_matrix(&self, i: usize) -> SparseMatrix {
        let cols = (0..self.dim()).map(|j| self.bracket_basis(i, j)).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in &self.space.basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Exhaustive check of super antisymmetry consequences, grading additivity,
/// and the super Jacobi identity over all basis triples. Reports every
/// violation found (capped) rather than erroring.
pub fn validate(g: &LieSuperalgebra) -> ValidationReport {
    const CAP: usize = 16;
    let mut violations = Vec::new();
    let dim = g.dim();

    // grading: [b_i, b_j] lives in degree d_i + d_j and parity p_i + p_j
    'grading: for (&(i, j), v) in &g.brackets {
        let deg = g.space.degree(i) + g.space.degree(j);
        let par = g.parity(i).add(g.parity(j));
        for &k in v.keys() {
            if g.space.degree(k) != deg || g.parity(k) != par {
                violations.push(format!(
                    "grading violated: [{}, {}] has component {} of wrong degree/parity",
                    g.space.basis[i].label, g.space.basis[j].label, g.space.basis[k].label
                ));
                if violations.len() >= CAP {
                    break 'grading;
                }
            }
        }
    }

    // antisymmetry on the diagonal: even x forces [x, x] = 0
    for i in 0..dim {
        if g.parity(i) == Parity::Even && !g.bracket_basis(i, i).is_empty() {
            violations.push(format!(
                "antisymmetry violated: [{0}, {0}] != 0 for even {0}",
                g.space.basis[i].label
            ));
        }
    }

    // super Jacobi: (-1)^{x̄z̄}[x,[y,z]] + cyclic = 0
    'jacobi: for i in 0..dim {
        for j in i..dim {
            for k in j..dim {
                let mut sum = SparseVec::new();
                for &(a, b, c) in &[(i, j, k), (j, k, i), (k, i, j)] {
                    let sign = g.parity(a).koszul(g.parity(c));
                    let inner = g.bracket_basis(b, c);
                    let mut ea = SparseVec::new();
                    ea.insert(a, Rat::one());
                    let outer = g.bracket_vec(&ea, &inner);
                    vec_add_scaled(&mut sum, &outer, &rat_int(sign as i64));
                }
                if !sum.is_empty() {
                    violations.push(format!(
                        "Jacobi violated on triple ({}, {}, {})",
                        g.space.basis[i].label, g.space.basis[j].label, g.space.basis[k].label
                    ));
                    if violations.len() >= CAP {
                        break 'jacobi;
                    }
                }
            }
        }
    }

    ValidationReport { ok: violations.is_empty(), violations }
}

// ---------------------------------------------------------------------------
// Cartan-type algebras
// ---------------------------------------------------------------------------

/// A Cartan-type algebra together with its realization inside W(n), so that
/// arbitrary W(n) elements can be re-expressed in the chosen basis.
pub struct CartanAlgebra {
    pub alg: LieSuperalgebra,
    pub n: usize,
    pub basis_w: Vec<WElt>,
    solver: SpanSolver,
}

impl CartanAlgebra {
    fn build(name: String, n: usize, basis_w: Vec<WElt>) -> Self {
        let flat_rows = (1usize << n) * n;
        let flat: Vec<SparseVec> = basis_w.iter().map(|w| w_to_flat(n, w)).collect();
        let solver = SpanSolver::new(flat_rows, &flat);
        assert_eq!(solver.rank(), basis_w.len(), "basis vectors dependent");

        let labels: Vec<BasisLabel> = basis_w
            .iter()
            .map(|w| {
                let degs: Vec<i64> = w.keys().map(|&(m, _)| mask_len(m) as i64 - 1).collect();
                assert!(degs.windows(2).all(|p| p[0] == p[1]), "inhomogeneous basis vector");
                let degree = degs[0];
                BasisLabel {
                    label: cartan_label(n, w),
                    degree,
                    parity: Parity::from_degree(degree),
                }
            })
            .collect();
        let space = SuperSpace::new(labels);

        let mut brackets = BTreeMap::new();
        for i in 0..basis_w.len() {
            for j in i..basis_w.len() {
                let br = bracket_w(&basis_w[i], &basis_w[j]);
                if br.is_empty() {
                    continue;
                }
                let coords = solver
                    .solve(&w_to_flat(n, &br))
                    .expect("bracket leaves the span: not closed");
                if !coords.is_empty() {
                    brackets.insert((i, j), coords);
                }
            }
        }
        let alg = LieSuperalgebra::new(name, space, brackets);
        CartanAlgebra { alg, n, basis_w, solver }
    }

    /// Coordinates of a W(n) element in this basis, if it lies in the span.
    pub fn coords_of(&self, w: &WElt) -> Option<SparseVec> {
        self.solver.solve(&w_to_flat(self.n, w))
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.alg.space.basis.iter().position(|b| b.label == label)
    }
}

fn cartan_label(n: usize, w: &WElt) -> String {
    // single-monomial vectors print directly; h-combinations get an h label
    if w.len() == 1 {
        let (&(mask, i), c) = w.iter().next().unwrap();
        assert!(c.is_one());
        return monomial_label(n, mask, i);
    }
    if w.len() == 2 {
        // xi_A h_{ij} = xi_A xi_i d_i - xi_A xi_j d_j
        let mut terms: Vec<(Mask, usize, Rat)> =
            w.iter().map(|(&(m, i), c)| (m, i, c.clone())).collect();
        terms.sort_by_key(|t| t.1);
        let (m1, i, c1) = terms[0].clone();
        let (m2, j, c2) = terms[1].clone();
        if c1.is_one() && c2 == -Rat::one() && m1 & (1 << i) != 0 && m2 & (1 << j) != 0 {
            let a = m1 & !(1 << i);
            if a == m2 & !(1 << j) {
                let mut s = String::new();
                for k in 0..n {
                    if a & (1 << k) != 0 {
                        s.push_str(&format!("x{}", k + 1));
                    }
                }
                s.push_str(&format!("h{}{}", i + 1, j + 1));
                return s;
            }
        }
    }
    // fall back to an explicit sum
    w.iter()
        .map(|(&(m, i), c)| format!("{}*{}", format_rat(c), monomial_label(n, m, i)))
        .collect::<Vec<_>>()
        .join("+")
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Mask> {
    let mut out: Vec<Mask> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect();
    out.sort();
    out
}

/// W(n): all xi_I d_i, graded by |I| - 1.
pub fn construct_w(n: usize) -> Result<CartanAlgebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::InvalidRank(format!("W(n) needs n >= 2, got {n}")));
    }
    let mut basis = Vec::new();
    for deg in -1i64..(n as i64) {
        let size = (deg + 1) as usize;
        for mask in subsets_of_size(n, size) {
            for i in 0..n {
                let mut w = WElt::new();
                w.insert((mask, i), Rat::one());
                basis.push(w);
            }
        }
    }
    Ok(CartanAlgebra::build(format!("W({n})"), n, basis))
}

/// The basis vector xi_A h_{ij} = xi_A (xi_i d_i - xi_j d_j).
fn xi_a_h(a: Mask, i: usize, j: usize) -> WElt {
    let mut w = WElt::new();
    let s1 = lambda_mul_sign(a, 1 << i);
    let s2 = lambda_mul_sign(a, 1 << j);
    assert!(s1 != 0 && s2 != 0);
    w.insert((a | (1 << i), i), rat_int(s1 as i64));
    w.insert((a | (1 << j), j), rat_int(-s2 as i64));
    w
}

fn type_i_basis(n: usize, k: i64) -> Vec<WElt> {
    // xi_I d_i with i not in I, |I| = k + 1
    let mut out = Vec::new();
    for mask in subsets_of_size(n, (k + 1) as usize) {
        for i in 0..n {
            if mask & (1 << i) == 0 {
                let mut w = WElt::new();
                w.insert((mask, i), Rat::one());
                out.push(w);
            }
        }
    }
    out
}

fn type_ii_basis(n: usize, k: i64) -> Vec<WElt> {
    // xi_A h_{ij} with |A| = k, i the first element of the complement, j > i
    let mut out = Vec::new();
    for a in subsets_of_size(n, k as usize) {
        let complement: Vec<usize> = (0..n).filter(|&b| a & (1 << b) == 0).collect();
        if complement.len() < 2 {
            continue;
        }
        let i = complement[0];
        for &j in &complement[1..] {
            out.push(xi_a_h(a, i, j));
        }
    }
    out
}

fn s_family_basis(n: usize, with_euler: bool) -> Vec<WElt> {
    let mut basis = Vec::new();
    // degree -1: d_i
    for i in 0..n {
        let mut w = WElt::new();
        w.insert((0, i), Rat::one());
        basis.push(w);
    }
    // degree 0
    if with_euler {
        // Sbar(n)_0 = gl(n): all xi_i d_j
        for i in 0..n {
            for j in 0..n {
                let mut w = WElt::new();
                w.insert(((1 << i) as Mask, j), Rat::one());
                basis.push(w);
            }
        }
    } else {
        // S(n)_0 = sl(n): off-diagonal xi_i d_j plus h_{1j}
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut w = WElt::new();
                    w.insert(((1 << i) as Mask, j), Rat::one());
                    basis.push(w);
                }
            }
        }
        for j in 1..n {
            basis.push(xi_a_h(0, 0, j));
        }
    }
    // degrees 1 .. n-2: type I then type II
    for k in 1..=(n as i64 - 2) {
        basis.extend(type_i_basis(n, k));
        basis.extend(type_ii_basis(n, k));
    }
    basis
}

/// S(n): the divergence-zero subalgebra of W(n), with the type I / type II
/// basis in each positive grade.
pub fn construct_s(n: usize) -> Result<CartanAlgebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::InvalidRank(format!("S(n) needs n >= 2, got {n}")));
    }
    Ok(CartanAlgebra::build(format!("S({n})"), n, s_family_basis(n, false)))
}

/// Sbar(n) = S(n) + C*Euler; the degree-zero part becomes gl(n).
pub fn construct_sbar(n: usize) -> Result<CartanAlgebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::InvalidRank(format!("Sbar(n) needs n >= 2, got {n}")));
    }
    Ok(CartanAlgebra::build(format!("Sbar({n})"), n, s_family_basis(n, true)))
}

/// gl(m|n) with the matrix supercommutator; E_{ij} is odd exactly when it
/// crosses the block boundary.
pub fn construct_gl_super(m: usize, n: usize) -> Result<LieSuperalgebra, AlgebraError> {
    if m < 1 || n < 1 {
        return Err(AlgebraError::InvalidRank(format!("gl(m|n) needs m, n >= 1, got ({m}|{n})")));
    }
    let sz = m + n;
    let parity_of = |i: usize, j: usize| {
        if (i < m) == (j < m) {
            Parity::Even
        } else {
            Parity::Odd
        }
    };
    let degree_of = |i: usize, j: usize| {
        if i < m && j >= m {
            1
        } else if i >= m && j < m {
            -1
        } else {
            0
        }
    };
    let idx = |i: usize, j: usize| i * sz + j;
    let mut labels = Vec::new();
    for i in 0..sz {
        for j in 0..sz {
            labels.push(BasisLabel {
                label: format!("E{},{}", i + 1, j + 1),
                degree: degree_of(i, j),
                parity: parity_of(i, j),
            });
        }
    }
    let space = SuperSpace::new(labels);
    let mut brackets = BTreeMap::new();
    for a in 0..sz * sz {
        for b in a..sz * sz {
            let (i, j) = (a / sz, a % sz);
            let (k, l) = (b / sz, b % sz);
            let sign = parity_of(i, j).koszul(parity_of(k, l));
            let mut v = SparseVec::new();
            if j == k {
                let e = v.entry(idx(i, l)).or_insert_with(Rat::zero);
                *e += Rat::one();
            }
            if l == i {
                let e = v.entry(idx(k, j)).or_insert_with(Rat::zero);
                *e += rat_int(-(sign as i64));
            }
            v.retain(|_, c| !c.is_zero());
            if !v.is_empty() {
                brackets.insert((a, b), v);
            }
        }
    }
    Ok(LieSuperalgebra::new(format!("gl({m}|{n})"), space, brackets))
}

// ---------------------------------------------------------------------------
// Subalgebras, quotients, detecting subalgebras
// ---------------------------------------------------------------------------

/// A subalgebra presented by member vectors in the parent's coordinates.
/// `generators`, when set, names member indices whose invariance already
/// forces invariance under the whole subalgebra (a Lie generating set);
/// consumers may restrict expensive kernel intersections to them.
#[derive(Debug, Clone)]
pub struct SubalgebraSpec {
    pub members: Vec<SparseVec>,
    pub generators: Option<Vec<usize>>,
}

impl SubalgebraSpec {
    pub fn new(members: Vec<SparseVec>) -> Self {
        SubalgebraSpec { members, generators: None }
    }

    pub fn from_basis_indices(dim: usize, indices: &[usize]) -> Self {
        let members = indices
            .iter()
            .map(|&i| {
                assert!(i < dim);
                let mut v = SparseVec::new();
                v.insert(i, Rat::one());
                v
            })
            .collect();
        SubalgebraSpec { members, generators: None }
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }
}

/// Checks closure of the span under the bracket.
pub fn is_subalgebra(g: &LieSuperalgebra, t: &SubalgebraSpec) -> Result<(), AlgebraError> {
    let solver = SpanSolver::new(g.dim(), &t.members);
    for (a, x) in t.members.iter().enumerate() {
        for (b, y) in t.members.iter().enumerate().skip(a) {
            let br = g.bracket_vec(x, y);
            if !solver.contains(&br) {
                return Err(AlgebraError::NotASubalgebra(a, b));
            }
        }
    }
    Ok(())
}

/// True iff [g, g] lies inside span(t). Errors if t is not closed.
pub fn derived_subalgebra_in(g: &LieSuperalgebra, t: &SubalgebraSpec) -> Result<bool, AlgebraError> {
    is_subalgebra(g, t)?;
    let solver = SpanSolver::new(g.dim(), &t.members);
    for i in 0..g.dim() {
        for j in i..g.dim() {
            if !solver.contains(&g.bracket_basis(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A witness that [g, g] is not contained in t: the offending basis pair.
pub fn derived_subalgebra_witness(g: &LieSuperalgebra, t: &SubalgebraSpec) -> Option<(usize, usize)> {
    let solver = SpanSolver::new(g.dim(), &t.members);
    for i in 0..g.dim() {
        for j in i..g.dim() {
            if !solver.contains(&g.bracket_basis(i, j)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// g/t with a deterministic complement: parent basis vectors not hit by the
/// echelon pivots of the member matrix. When t is basis-aligned this is just
/// the complementary set of basis vectors.
pub struct QuotientSetup {
    pub q_space: SuperSpace,
    /// Complement vectors (unit vectors at the kept indices), in g coords.
    pub lift_indices: Vec<usize>,
    solver: SpanSolver,
    t_count: usize,
}

impl QuotientSetup {
    pub fn new(g: &LieSuperalgebra, t: &SubalgebraSpec) -> Result<Self, AlgebraError> {
        is_subalgebra(g, t)
            .map_err(|e| AlgebraError::QuotientIllDefined(format!("t not closed: {e}")))?;
        let t_solver = SpanSolver::new(g.dim(), &t.members);
        if t_solver.rank() != t.members.len() {
            return Err(AlgebraError::QuotientIllDefined(
                "member vectors are linearly dependent".into(),
            ));
        }
        // complement: standard basis vectors that stay independent from t
        let mut lift_indices = Vec::new();
        let mut all: Vec<SparseVec> = t.members.clone();
        let mut solver = SpanSolver::new(g.dim(), &all);
        for i in 0..g.dim() {
            let mut e = SparseVec::new();
            e.insert(i, Rat::one());
            if !solver.contains(&e) {
                lift_indices.push(i);
                all.push(e);
                solver = SpanSolver::new(g.dim(), &all);
            }
        }
        let q_space = SuperSpace::new(
            lift_indices
                .iter()
                .map(|&i| g.space.basis[i].clone())
                .collect(),
        );
        Ok(QuotientSetup { q_space, lift_indices, solver, t_count: t.members.len() })
    }

    pub fn dim(&self) -> usize {
        self.lift_indices.len()
    }

    /// Lift of the k-th quotient basis vector, as g coordinates.
    pub fn lift(&self, k: usize) -> SparseVec {
        let mut v = SparseVec::new();
        v.insert(self.lift_indices[k], Rat::one());
        v
    }

    /// Projection of a g vector to quotient coordinates along span(t).
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let coords = self
            .solver
            .solve_dense(v)
            .expect("vector outside t + complement: impossible by construction");
        let mut out = SparseVec::new();
        for (k, c) in coords.into_iter().skip(self.t_count).enumerate() {
            if !c.is_zero() {
                out.insert(k, c);
            }
        }
        out
    }
}

/// One action matrix (on g or on g/t) per subalgebra member.
pub enum AdjointTarget {
    Whole,
    Quotient,
}

pub fn adjoint_action(
    g: &LieSuperalgebra,
    t: &SubalgebraSpec,
    target: AdjointTarget,
) -> Result<Vec<SparseMatrix>, AlgebraError> {
    match target {
        AdjointTarget::Whole => {
            is_subalgebra(g, t)?;
            Ok(t.members
                .iter()
                .map(|m| {
                    let cols = (0..g.dim())
                        .map(|j| {
                            let mut e = SparseVec::new();
                            e.insert(j, Rat::one());
                            g.bracket_vec(m, &e)
                        })
                        .collect();
                    SparseMatrix::from_columns(g.dim(), cols)
                })
                .collect())
        }
        AdjointTarget::Quotient => {
            let q = QuotientSetup::new(g, t)?;
            Ok(t.members
                .iter()
                .map(|m| {
                    let cols = (0..q.dim())
                        .map(|j| q.project(&g.bracket_vec(m, &q.lift(j))))
                        .collect();
                    SparseMatrix::from_columns(q.dim(), cols)
                })
                .collect())
        }
    }
}

/// Restricts g to the subalgebra spanned by the members, which become the
/// basis of the new algebra. Members must be parity/degree homogeneous.
pub fn restrict_to_subalgebra(
    g: &LieSuperalgebra,
    t: &SubalgebraSpec,
    name: String,
) -> Result<LieSuperalgebra, AlgebraError> {
    let solver = SpanSolver::new(g.dim(), &t.members);
    let mut labels = Vec::new();
    for (a, m) in t.members.iter().enumerate() {
        let mut degs: Vec<i64> = m.keys().map(|&k| g.space.degree(k)).collect();
        degs.dedup();
        let mut pars: Vec<Parity> = m.keys().map(|&k| g.parity(k)).collect();
        pars.dedup();
        if degs.len() != 1 || pars.len() != 1 {
            return Err(AlgebraError::NotHomogeneous(a));
        }
        labels.push(BasisLabel {
            label: format!("m{a}"),
            degree: degs[0],
            parity: pars[0],
        });
    }
    let space = SuperSpace::new(labels);
    let mut brackets = BTreeMap::new();
    for a in 0..t.members.len() {
        for b in a..t.members.len() {
            let br = g.bracket_vec(&t.members[a], &t.members[b]);
            if br.is_empty() {
                continue;
            }
            let coords = solver
                .solve(&br)
                .ok_or(AlgebraError::NotASubalgebra(a, b))?;
            if !coords.is_empty() {
                brackets.insert((a, b), coords);
            }
        }
    }
    Ok(LieSuperalgebra::new(name, space, brackets))
}

/// The degree-zero subalgebra g0, with a Lie-generating subset (diagonal
/// plus adjacent raising/lowering vectors, recognized by label) marked so
/// invariance computations can restrict to it.
pub fn degree_zero_subalgebra(g: &LieSuperalgebra) -> SubalgebraSpec {
    let indices: Vec<usize> = (0..g.dim()).filter(|&i| g.space.degree(i) == 0).collect();
    let mut spec = SubalgebraSpec::from_basis_indices(g.dim(), &indices);
    let gens: Vec<usize> = indices
        .iter()
        .enumerate()
        .filter(|(_, &gi)| {
            let label = &g.space.basis[gi].label;
            match parse_xd_label(label) {
                Some((a, b)) => a == b || a.abs_diff(b) == 1,
                None => label.starts_with('h'),
            }
        })
        .map(|(pos, _)| pos)
        .collect();
    if !gens.is_empty() && gens.len() < indices.len() {
        spec.generators = Some(gens);
    }
    spec
}

fn parse_xd_label(label: &str) -> Option<(usize, usize)> {
    // "x3d1" -> (3, 1)
    let rest = label.strip_prefix('x')?;
    let dpos = rest.find('d')?;
    let a = rest[..dpos].parse().ok()?;
    let b = rest[dpos + 1..].parse().ok()?;
    Some((a, b))
}

/// The even part g0-bar of gl(m|n) as a subalgebra spec, with diagonal and
/// within-block adjacent matrix units as the marked generating subset.
pub fn even_subalgebra(g: &LieSuperalgebra) -> SubalgebraSpec {
    let indices: Vec<usize> = (0..g.dim())
        .filter(|&i| g.parity(i) == Parity::Even)
        .collect();
    let mut spec = SubalgebraSpec::from_basis_indices(g.dim(), &indices);
    let gens: Vec<usize> = indices
        .iter()
        .enumerate()
        .filter(|(_, &gi)| {
            let label = &g.space.basis[gi].label;
            match parse_e_label(label) {
                Some((a, b)) => a == b || a.abs_diff(b) == 1,
                None => true,
            }
        })
        .map(|(pos, _)| pos)
        .collect();
    if !gens.is_empty() && gens.len() < indices.len() {
        spec.generators = Some(gens);
    }
    spec
}

fn parse_e_label(label: &str) -> Option<(usize, usize)> {
    // "E3,1" -> (3, 1)
    let rest = label.strip_prefix('E')?;
    let (a, b) = rest.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// The diagonal Cartan subalgebra of a Cartan-type algebra (all xi_i d_i).
pub fn cartan_subalgebra(cartan: &CartanAlgebra) -> SubalgebraSpec {
    let indices: Vec<usize> = (0..cartan.n)
        .map(|i| {
            cartan
                .index_of_label(&monomial_label(cartan.n, 1 << i, i))
                .expect("diagonal basis vector present")
        })
        .collect();
    SubalgebraSpec::from_basis_indices(cartan.alg.dim(), &indices)
}

/// The detecting pair for Sbar(n): e = e0 + a1 with e0 = Lie(T_{n-1})
/// (diagonals with vanishing first entry) and a1 spanned by d_1 and
/// xi_1 xi_2 d_2 - xi_1 xi_i d_i; a = h + a1 with h the full diagonal.
pub struct DetectingPair {
    /// e as a subalgebra of Sbar(n), e0 members first, then a1.
    pub e: SubalgebraSpec,
    pub e_even_count: usize,
    /// a = h + a1.
    pub a: SubalgebraSpec,
    pub a_even_count: usize,
}

pub fn detecting_subalgebra_sbar(sbar: &CartanAlgebra) -> Result<DetectingPair, AlgebraError> {
    let n = sbar.n;
    if n < 3 {
        return Err(AlgebraError::InvalidRank(format!(
            "detecting subalgebra for Sbar(n) needs n >= 3, got {n}"
        )));
    }
    let diag = |i: usize| -> SparseVec {
        let mut w = WElt::new();
        w.insert(((1 << i) as Mask, i), Rat::one());
        sbar.coords_of(&w).expect("xi_i d_i lies in Sbar(n)")
    };
    let a1: Vec<SparseVec> = {
        let mut out = Vec::new();
        let mut d1 = WElt::new();
        d1.insert((0, 0), Rat::one());
        out.push(sbar.coords_of(&d1).unwrap());
        for i in 2..n {
            // xi_1 xi_2 d_2 - xi_1 xi_{i+1} d_{i+1} (zero-based i)
            let mut w = WElt::new();
            let m2 = (1u32 << 0) | (1 << 1);
            w.insert((m2, 1), rat_int(lambda_mul_sign(1 << 0, 1 << 1) as i64));
            let mi = (1u32 << 0) | (1 << i);
            let s = lambda_mul_sign(1 << 0, 1 << i);
            w.insert((mi, i), rat_int(-(s as i64)));
            out.push(sbar.coords_of(&w).expect("a1 vector lies in Sbar(n)"));
        }
        out
    };

    let mut e_members: Vec<SparseVec> = (1..n).map(diag).collect();
    let e_even_count = e_members.len();
    e_members.extend(a1.iter().cloned());
    let e = SubalgebraSpec::new(e_members);
    is_subalgebra(&sbar.alg, &e)?;

    let mut a_members: Vec<SparseVec> = (0..n).map(diag).collect();
    let a_even_count = a_members.len();
    a_members.extend(a1);
    let a = SubalgebraSpec::new(a_members);
    is_subalgebra(&sbar.alg, &a)?;

    Ok(DetectingPair { e, e_even_count, a, a_even_count })
}

/// Detecting subalgebra of gl(m|n): e1 spanned by E_{m+1-s,m+s} + E_{m+s,m+1-s}
/// for s = 1..r, and e0 the stabilizer {h in g0 | [h, e1] in e1}.
pub fn detecting_subalgebra_gl(
    gl: &LieSuperalgebra,
    m: usize,
    n: usize,
    r: usize,
) -> Result<SubalgebraSpec, AlgebraError> {
    if r > m.min(n) || r == 0 {
        return Err(AlgebraError::InvalidRank(format!(
            "need 1 <= r <= min(m, n) = {}, got {r}",
            m.min(n)
        )));
    }
    let sz = m + n;
    let idx = |i: usize, j: usize| (i - 1) * sz + (j - 1);
    let e1: Vec<SparseVec> = (1..=r)
        .map(|s| {
            let mut v = SparseVec::new();
            v.insert(idx(m + 1 - s, m + s), Rat::one());
            v.insert(idx(m + s, m + 1 - s), Rat::one());
            v
        })
        .collect();

    // stabilizer of span(e1) inside g0: solve [h, x_s] in span(e1) for all s
    let even_indices: Vec<usize> = (0..gl.dim())
        .filter(|&i| gl.parity(i) == Parity::Even)
        .collect();
    let e1_solver = SpanSolver::new(gl.dim(), &e1);
    // unknown h = sum_c h_c b_c over even basis; condition: projection of
    // [b_c, x_s] onto the complement of span(e1) inside g_odd vanishes
    let mut constraint_cols: Vec<SparseVec> = Vec::new();
    for &c in &even_indices {
        let mut e = SparseVec::new();
        e.insert(c, Rat::one());
        let mut col = SparseVec::new();
        for (s, x) in e1.iter().enumerate() {
            let br = gl.bracket_vec(&e, x);
            // residue after removing the e1 component
            let resid = match e1_solver.solve_dense(&br) {
                Some(coeffs) => {
                    let mut rem = br.clone();
                    for (k, cf) in coeffs.iter().enumerate() {
                        vec_add_scaled(&mut rem, &e1[k], &(-cf.clone()));
                    }
                    rem
                }
                None => br,
            };
            for (k, v) in resid {
                col.insert(s * gl.dim() + k, v);
            }
        }
        constraint_cols.push(col);
    }
    let constraint = SparseMatrix::from_columns(r * gl.dim(), constraint_cols);
    let kernel = constraint.kernel_basis();
    let mut members: Vec<SparseVec> = kernel
        .into_iter()
        .map(|k| {
            let mut v = SparseVec::new();
            for (pos, c) in k {
                v.insert(even_indices[pos], c);
            }
            v
        })
        .collect();
    members.extend(e1);
    let spec = SubalgebraSpec::new(members);
    is_subalgebra(gl, &spec)?;
    Ok(spec)
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

type BracketTriplets = Vec<(usize, usize, Vec<(usize, String)>)>;

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    basis: Vec<BasisLabel>,
    brackets: BracketTriplets,
}

pub fn algebra_to_json(g: &LieSuperalgebra) -> serde_json::Value {
    let brackets: BracketTriplets = g
        .brackets
        .iter()
        .map(|(&(i, j), v)| {
            (i, j, v.iter().map(|(&k, c)| (k, format_rat(c))).collect())
        })
        .collect();
    serde_json::to_value(AlgebraJson { basis: g.space.basis.clone(), brackets }).unwrap()
}

pub fn algebra_from_json(v: &serde_json::Value) -> Result<LieSuperalgebra, AlgebraError> {
    let parsed: AlgebraJson =
        serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Json(e.to_string()))?;
    let dim = parsed.basis.len();
    let space = SuperSpace::new(parsed.basis);
    let mut brackets = BTreeMap::new();
    for (i, j, terms) in parsed.brackets {
        if i > j || j >= dim {
            return Err(AlgebraError::Json(format!("bad bracket index pair ({i}, {j})")));
        }
        let mut vec = SparseVec::new();
        for (k, s) in terms {
            if k >= dim {
                return Err(AlgebraError::Json(format!("bracket component {k} out of range")));
            }
            let c = parse_rat(&s).ok_or_else(|| AlgebraError::Json(format!("bad rational {s}")))?;
            if !c.is_zero() {
                vec.insert(k, c);
            }
        }
        if !vec.is_empty() {
            brackets.insert((i, j), vec);
        }
    }
    Ok(LieSuperalgebra::new("from-json".into(), space, brackets))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: checks [D, E] agrees with superderivation
    /// composition on every monomial of Lambda(n).
    fn bracket_matches_composition(n: usize, a: &WElt, b: &WElt) {
        let br = bracket_w(a, b);
        let pa = term_parity(a.keys().next().unwrap().0);
        let pb = term_parity(b.keys().next().unwrap().0);
        let sign = pa.koszul(pb);
        for m in 0u32..(1 << n) {
            let mut x = LambdaElt::new();
            x.insert(m, Rat::one());
            let lhs = apply_w(&br, &x);
            let de = apply_w(a, &apply_w(b, &x));
            let ed = apply_w(b, &apply_w(a, &x));
            let mut rhs = de;
            vec_add_scaled(&mut rhs, &ed, &rat_int(-(sign as i64)));
            assert_eq!(lhs, rhs, "bracket vs composition mismatch on mask {m}");
        }
    }

    fn w_term(mask: Mask, i: usize) -> WElt {
        let mut w = WElt::new();
        w.insert((mask, i), Rat::one());
        w
    }

    #[test]
    fn w2_dimension() {
        assert_eq!(construct_w(2).unwrap().alg.dim(), 8);
    }

    #[test]
    fn w3_graded_dims() {
        let w = construct_w(3).unwrap();
        assert_eq!(w.alg.dim(), 24);
        let dims = w.alg.graded_dims();
        assert_eq!(dims[&-1], 3);
        assert_eq!(dims[&0], 9);
        assert_eq!(dims[&1], 9);
        assert_eq!(dims[&2], 3);
    }

    #[test]
    fn del_of_xi_bracket_rule() {
        // [d_i, xi_j d_k] = delta_ij d_k, checked against the composition oracle
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = w_term(0, i);
                    let b = w_term(1 << j, k);
                    bracket_matches_composition(n, &a, &b);
                    let br = bracket_w(&a, &b);
                    if i == j {
                        assert_eq!(br, w_term(0, k));
                    } else {
                        assert!(br.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn random_brackets_match_composition_oracle() {
        let n = 3;
        let terms = [
            w_term(0b011, 2),
            w_term(0b101, 1),
            w_term(0b110, 0),
            w_term(0b111, 0),
            w_term(0b001, 0),
        ];
        for a in &terms {
            for b in &terms {
                bracket_matches_composition(n, a, b);
            }
        }
    }

    #[test]
    fn divergence_examples() {
        // div(d_1) = 0
        assert!(divergence(&w_term(0, 0)).is_empty());
        // div(xi_1 d_1) = 1
        let d = divergence(&w_term(1, 0));
        assert_eq!(d.len(), 1);
        assert_eq!(d[&0], Rat::one());
        // div(E) = n
        for n in 2..=4 {
            let d = divergence(&euler_element(n));
            assert_eq!(d[&0], rat_int(n as i64));
        }
    }

    #[test]
    fn s_and_sbar_dims() {
        let s3 = construct_s(3).unwrap();
        let sb3 = construct_sbar(3).unwrap();
        assert_eq!(s3.alg.dim(), 17);
        assert_eq!(sb3.alg.dim(), 18);
        // (n-1)2^n + 1 and + 2
        assert_eq!(s3.alg.dim(), 2 * 8 + 1);
        let dims = sb3.alg.graded_dims();
        assert_eq!(dims[&-1], 3);
        assert_eq!(dims[&0], 9);
        assert_eq!(dims[&1], 6);
    }

    #[test]
    fn s_graded_dims_match_divergence_kernel() {
        // per-grade kernel of the divergence matrix on W(n)_k, cross-checked
        // against the type I / type II basis counts
        for n in 2..=4usize {
            let s = construct_s(n).unwrap();
            let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
            for deg in -1i64..(n as i64 - 1) {
                let monomials: Vec<(Mask, usize)> = subsets_of_size(n, (deg + 1) as usize)
                    .into_iter()
                    .flat_map(|mask| (0..n).map(move |i| (mask, i)))
                    .collect();
                // divergence matrix: rows indexed by Lambda(n) masks
                let cols: Vec<SparseVec> = monomials
                    .iter()
                    .map(|&(mask, i)| {
                        divergence(&w_term(mask, i))
                            .into_iter()
                            .map(|(m, c)| (m as usize, c))
                            .collect()
                    })
                    .collect();
                let mat = SparseMatrix::from_columns(1 << n, cols);
                expected.insert(deg, monomials.len() - mat.rank());
            }
            let got = s.alg.graded_dims();
            assert_eq!(got, expected, "S({n}) graded dims vs divergence kernel");
        }
    }

    #[test]
    fn divergence_vanishes_on_s_members() {
        for n in 2..=4 {
            let s = construct_s(n).unwrap();
            for w in &s.basis_w {
                assert!(divergence(w).is_empty());
            }
        }
    }

    #[test]
    fn divergence_rank_on_w() {
        // div surjects onto everything below the top degree: rank 2^n - 1
        for n in 2..=4usize {
            let w = construct_w(n).unwrap();
            let cols: Vec<SparseVec> = w
                .basis_w
                .iter()
                .map(|d| divergence(d).into_iter().map(|(m, c)| (m as usize, c)).collect())
                .collect();
            let mat = SparseMatrix::from_columns(1 << n, cols);
            assert_eq!(mat.rank(), (1 << n) - 1);
            assert_eq!(w.alg.dim() - mat.rank(), construct_s(n).unwrap().alg.dim());
        }
    }

    #[test]
    fn sbar_degree_zero_is_gl() {
        // [xi_i d_j, xi_k d_l] = delta_jk xi_i d_l - delta_li xi_k d_j
        let sb = construct_sbar(3).unwrap();
        let n = 3;
        let idx = |i: usize, j: usize| {
            sb.index_of_label(&monomial_label(n, 1 << i, j)).unwrap()
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let br = sb.alg.bracket_basis(idx(i, j), idx(k, l));
                        let mut expected = SparseVec::new();
                        if j == k {
                            let e = expected.entry(idx(i, l)).or_insert_with(Rat::zero);
                            *e += Rat::one();
                        }
                        if l == i {
                            let e = expected.entry(idx(k, j)).or_insert_with(Rat::zero);
                            *e -= Rat::one();
                        }
                        expected.retain(|_, c| !c.is_zero());
                        assert_eq!(br, expected, "gl(n) bracket at ({i},{j},{k},{l})");
                    }
                }
            }
        }
    }

    #[test]
    fn validate_w3_and_gl21() {
        assert!(validate(&construct_w(3).unwrap().alg).ok);
        assert!(validate(&construct_gl_super(2, 1).unwrap()).ok);
    }

    #[test]
    fn validate_catches_perturbed_constant() {
        let mut g = construct_w(3).unwrap().alg;
        let mut v = g.bracket_basis(0, 5);
        let e = v.entry(0).or_insert_with(Rat::zero);
        *e += Rat::one();
        v.retain(|_, c| !c.is_zero());
        g.set_bracket(0, 5, v);
        let report = validate(&g);
        assert!(!report.ok);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn gl11_basics() {
        let g = construct_gl_super(1, 1).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.space.even_dim(), 2);
        assert_eq!(g.space.odd_dim(), 2);
        // [E12, E21] = E11 + E22 (odd anticommutator)
        let br = g.bracket_basis(1, 2);
        assert_eq!(br.get(&0), Some(&Rat::one()));
        assert_eq!(br.get(&3), Some(&Rat::one()));
        assert_eq!(br.len(), 2);
    }

    #[test]
    fn validate_gl22() {
        assert!(validate(&construct_gl_super(2, 2).unwrap()).ok);
    }

    #[test]
    fn detecting_pair_sbar3() {
        let sb = construct_sbar(3).unwrap();
        let pair = detecting_subalgebra_sbar(&sb).unwrap();
        assert_eq!(pair.e_even_count, 2);
        assert_eq!(pair.e.dim() - pair.e_even_count, 2);
        // relations [e0, e0] = [e0, e1] = 0
        for i in 0..pair.e_even_count {
            for j in 0..pair.e.dim() {
                let br = sb.alg.bracket_vec(&pair.e.members[i], &pair.e.members[j]);
                assert!(br.is_empty(), "[e0, e] must vanish");
            }
        }
        // (e, e0) satisfies [e, e] inside e0
        let e_alg = restrict_to_subalgebra(&sb.alg, &pair.e, "e".into()).unwrap();
        let e0 = SubalgebraSpec::from_basis_indices(e_alg.dim(), &[0, 1]);
        assert!(derived_subalgebra_in(&e_alg, &e0).unwrap());
    }

    #[test]
    fn detecting_brackets_match_oracle() {
        // [d_1, x1x2d2 - x1x3d3] = x2d2 - x3d3 via superderivation composition
        let d1 = w_term(0, 0);
        let mut z3 = WElt::new();
        z3.insert((0b011, 1), Rat::one());
        z3.insert((0b101, 2), -Rat::one());
        let br = bracket_w(&d1, &z3);
        let mut expected = WElt::new();
        expected.insert((0b010, 1), Rat::one());
        expected.insert((0b100, 2), -Rat::one());
        assert_eq!(br, expected);
        bracket_matches_composition(3, &d1, &z3);
    }

    #[test]
    fn a1_vectors_commute_n4() {
        // [x1x2d2 - x1x3d3, x1x2d2 - x1x4d4] = 0
        let mut z3 = WElt::new();
        z3.insert((0b0011, 1), Rat::one());
        z3.insert((0b0101, 2), -Rat::one());
        let mut z4 = WElt::new();
        z4.insert((0b0011, 1), Rat::one());
        z4.insert((0b1001, 3), -Rat::one());
        assert!(bracket_w(&z3, &z4).is_empty());
    }

    #[test]
    fn detecting_gl() {
        let g = construct_gl_super(1, 1).unwrap();
        let spec = detecting_subalgebra_gl(&g, 1, 1, 1).unwrap();
        // e1 = span(E12 + E21); [x, x] = 2(E11 + E22)
        let odd: Vec<&SparseVec> = spec
            .members
            .iter()
            .filter(|m| m.keys().any(|&k| g.parity(k) == Parity::Odd))
            .collect();
        assert_eq!(odd.len(), 1);
        let br = g.bracket_vec(odd[0], odd[0]);
        assert_eq!(br.get(&0), Some(&rat_int(2)));
        assert_eq!(br.get(&3), Some(&rat_int(2)));

        let g22 = construct_gl_super(2, 2).unwrap();
        let spec22 = detecting_subalgebra_gl(&g22, 2, 2, 2).unwrap();
        let odd_count = spec22
            .members
            .iter()
            .filter(|m| m.keys().any(|&k| g22.parity(k) == Parity::Odd))
            .count();
        assert_eq!(odd_count, 2);
    }

    #[test]
    fn derived_subalgebra_examples() {
        // abelian 2-dim algebra with zero subalgebra
        let space = SuperSpace::from_degrees(vec![("a".into(), 0), ("b".into(), 0)]);
        let abelian = LieSuperalgebra::new("ab".into(), space, BTreeMap::new());
        let zero = SubalgebraSpec::new(vec![]);
        assert!(derived_subalgebra_in(&abelian, &zero).unwrap());

        // (Sbar(3), g0) is false: brackets of g0 with g1 land in g1
        let sb = construct_sbar(3).unwrap();
        let g0: Vec<usize> = (0..sb.alg.dim()).filter(|&i| sb.alg.space.degree(i) == 0).collect();
        let t = SubalgebraSpec::from_basis_indices(sb.alg.dim(), &g0);
        assert!(!derived_subalgebra_in(&sb.alg, &t).unwrap());
    }

    #[test]
    fn adjoint_action_examples() {
        let sb = construct_sbar(3).unwrap();
        let g0: Vec<usize> = (0..sb.alg.dim()).filter(|&i| sb.alg.space.degree(i) == 0).collect();
        let t = SubalgebraSpec::from_basis_indices(sb.alg.dim(), &g0);
        let mats = adjoint_action(&sb.alg, &t, AdjointTarget::Quotient).unwrap();
        assert_eq!(mats.len(), 9);
        // block diagonal with blocks of sizes 3 and 6: a degree-0 element
        // cannot move between degree -1 and degree 1 classes
        let q = QuotientSetup::new(&sb.alg, &t).unwrap();
        for m in &mats {
            for (r, c, _) in m.entries_row_major() {
                assert_eq!(q.q_space.degree(r), q.q_space.degree(c));
            }
        }
        // xi_1 d_1 acts on d_1 mod g0 with eigenvalue -1
        let h1 = g0
            .iter()
            .position(|&i| sb.alg.space.basis[i].label == "x1d1")
            .unwrap();
        let d1_q = q
            .q_space
            .basis
            .iter()
            .position(|b| b.label == "d1")
            .unwrap();
        assert_eq!(mats[h1].get(d1_q, d1_q), rat_int(-1));

        // zero subalgebra: empty action list
        let zero = SubalgebraSpec::new(vec![]);
        assert!(adjoint_action(&sb.alg, &zero, AdjointTarget::Whole).unwrap().is_empty());
    }

    #[test]
    fn json_roundtrip_bit_exact() {
        let g = construct_sbar(3).unwrap().alg;
        let j = algebra_to_json(&g);
        let g2 = algebra_from_json(&j).unwrap();
        assert_eq!(g.space, g2.space);
        assert_eq!(g.stored_brackets(), g2.stored_brackets());
        let j2 = algebra_to_json(&g2);
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&j2).unwrap());
    }

    #[test]
    fn invalid_rank_errors() {
        assert!(construct_w(1).is_err());
        assert!(construct_s(1).is_err());
        assert!(construct_sbar(0).is_err());
        assert!(construct_gl_super(0, 1).is_err());
    }
}

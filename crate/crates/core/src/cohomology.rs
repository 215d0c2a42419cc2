//! Relative cohomology dimensions, Poincaré tables, Ext groups, and the
//! equivalence check between vanishing differentials and `[g, g] ⊆ t`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::{CochainError, CochainVec, RelativeSetup};
use crate::liesuper::{derived_subalgebra_witness, LieSuperalgebra, SubalgebraSpec};
use crate::ratlin::{subquotient_dim, Eliminator, RatlinError, SparseMatrix};
use crate::smodule::{dual, tensor, ModuleError, SuperModule};
use num_traits::Zero;

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Ratlin(#[from] RatlinError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Dimensions of H^p(g, t; M) for p = 0..=p_max.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PoincareTable {
    pub pair: (String, String),
    pub coeff: String,
    pub p_max: usize,
    pub dims: Vec<usize>,
}

impl PoincareTable {
    pub fn to_markdown(&self) -> String {
        let mut s = format!(
            "| p | dim H^p({}, {}; {}) |\n|---|---|\n",
            self.pair.0, self.pair.1, self.coeff
        );
        for (p, d) in self.dims.iter().enumerate() {
            s.push_str(&format!("| {p} | {d} |\n"));
        }
        s
    }
}

/// Cohomology dimensions for the pair (g, t) with coefficients in `m`,
/// computed as nullity of d^p minus rank of d^{p-1} on the invariant bases.
pub fn cohomology_dims(
    g: &LieSuperalgebra,
    t: SubalgebraSpec,
    m: &SuperModule,
    coeff_name: &str,
    t_name: &str,
    p_max: usize,
) -> Result<PoincareTable, CohomologyError> {
    let setup = RelativeSetup::new(g, t, m)?;
    let spaces: Vec<_> = (0..=p_max + 1).map(|p| setup.invariant_cochains(p)).collect();
    let mut diffs: Vec<SparseMatrix> = Vec::with_capacity(p_max + 1);
    for p in 0..=p_max {
        diffs.push(setup.differential_between(&spaces[p], &spaces[p + 1])?);
    }
    let mut dims = Vec::with_capacity(p_max + 1);
    for p in 0..=p_max {
        let d_in = if p == 0 {
            SparseMatrix::zero(spaces[0].dim(), 0)
        } else {
            diffs[p - 1].clone()
        };
        dims.push(subquotient_dim(&d_in, &diffs[p])?);
    }
    Ok(PoincareTable {
        pair: (g.name.clone(), t_name.to_string()),
        coeff: coeff_name.to_string(),
        p_max,
        dims,
    })
}

/// Representative cocycles for H^p: kernel vectors of d^p that extend the
/// column span of d^{p-1}, expressed in ambient cochain coordinates.
pub fn cohomology_representatives(
    setup: &RelativeSetup,
    p: usize,
) -> Result<Vec<CochainVec>, CohomologyError> {
    let cp = setup.invariant_cochains(p);
    let cp1 = setup.invariant_cochains(p + 1);
    let d_cur = setup.differential_between(&cp, &cp1)?;
    let mut elim = Eliminator::new(cp.dim(), None);
    if p > 0 {
        let cprev = setup.invariant_cochains(p - 1);
        let d_prev = setup.differential_between(&cprev, &cp)?;
        for (_, col) in d_prev.columns_iter() {
            elim.push_column(col.clone());
        }
    }
    let mut reps = Vec::new();
    for k in d_cur.kernel_basis() {
        if elim.solve(&k).is_some() {
            continue;
        }
        elim.push_column(k.clone());
        let mut rep: CochainVec = CochainVec::new();
        for (i, c) in &k {
            for (key, a) in &cp.invariant_basis[*i] {
                let e = rep.entry(key.clone()).or_default();
                *e += a * c;
                if e.is_zero() {
                    rep.remove(key);
                }
            }
        }
        reps.push(rep);
    }
    Ok(reps)
}

/// Ext dimensions via the identification Ext^p(M, N) ≅ H^p(g, t; M* ⊗ N).
pub fn ext_dims(
    g: &LieSuperalgebra,
    t: SubalgebraSpec,
    m: &SuperModule,
    n: &SuperModule,
    t_name: &str,
    p_max: usize,
) -> Result<PoincareTable, CohomologyError> {
    let coeff = tensor(&dual(m), n)?;
    let mut table = cohomology_dims(g, t, &coeff, "dual(M)⊗N", t_name, p_max)?;
    table.coeff = "Ext(M, N) coefficients dual(M)⊗N".to_string();
    Ok(table)
}

/// Outcome of the equivalence check between `[g, g] ⊆ t` and identically
/// vanishing differentials on trivial coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Prop221Report {
    pub derived_in_t: bool,
    pub differentials_zero: bool,
    pub equivalent: bool,
    /// For a nonzero differential: (p, row, col) of a witness entry.
    pub witness_entry: Option<(usize, usize, usize)>,
    /// For [g, g] ⊄ t: labels (x, y) with [x, y] outside t.
    pub witness_bracket: Option<(String, String)>,
}

/// Checks, up to degree `p_max`, that the differentials on ℂ-coefficients
/// vanish identically exactly when the derived subalgebra lies in t.
pub fn check_prop_2_2_1(
    g: &LieSuperalgebra,
    t: SubalgebraSpec,
    p_max: usize,
) -> Result<Prop221Report, CohomologyError> {
    let witness_bracket = derived_subalgebra_witness(g, &t)
        .map(|(i, j)| (g.space.basis[i].label.clone(), g.space.basis[j].label.clone()));
    let derived_in_t = witness_bracket.is_none();
    let m = crate::smodule::trivial_module(g);
    let setup = RelativeSetup::new(g, t.clone(), &m)?;
    let mut witness_entry = None;
    'outer: for p in 0..=p_max {
        let d = setup.differential(p)?;
        for (j, col) in d.columns_iter() {
            if let Some((&r, _)) = col.iter().next() {
                witness_entry = Some((p, r, j));
                break 'outer;
            }
        }
    }
    let differentials_zero = witness_entry.is_none();
    Ok(Prop221Report {
        derived_in_t,
        differentials_zero,
        equivalent: derived_in_t == differentials_zero,
        witness_entry,
        witness_bracket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::{
        cartan_subalgebra, construct_gl_super, construct_sbar, construct_w,
        degree_zero_subalgebra, detecting_subalgebra_sbar, even_subalgebra,
        restrict_to_subalgebra,
    };
    use crate::smodule::{direct_sum, kac_module_sigma, trivial_module};
    use crate::superspace::SuperSpace;

    #[test]
    fn sbar3_trivial_coefficients() {
        let cart = construct_sbar(3).unwrap();
        let t = degree_zero_subalgebra(&cart.alg);
        let m = trivial_module(&cart.alg);
        let table = cohomology_dims(&cart.alg, t, &m, "C", "g0", 6).unwrap();
        assert_eq!(table.dims, vec![1, 0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn w3_trivial_coefficients() {
        let cart = construct_w(3).unwrap();
        let t = degree_zero_subalgebra(&cart.alg);
        let m = trivial_module(&cart.alg);
        let table = cohomology_dims(&cart.alg, t, &m, "C", "g0", 6).unwrap();
        assert_eq!(table.dims, vec![1, 0, 1, 0, 2, 0, 2]);
    }

    #[test]
    fn gl11_trivial_coefficients() {
        let g = construct_gl_super(1, 1).unwrap();
        let t = even_subalgebra(&g);
        let m = trivial_module(&g);
        let table = cohomology_dims(&g, t, &m, "C", "g_even", 4).unwrap();
        assert_eq!(table.dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn ext_trivial_trivial_matches_cohomology() {
        let cart = construct_sbar(3).unwrap();
        let t = degree_zero_subalgebra(&cart.alg);
        let m = trivial_module(&cart.alg);
        let a = cohomology_dims(&cart.alg, t.clone(), &m, "C", "g0", 4).unwrap();
        let b = ext_dims(&cart.alg, t, &m, &m, "g0", 4).unwrap();
        assert_eq!(a.dims, b.dims);
    }

    #[test]
    fn prop_2_2_1_detecting_pair_positive() {
        let sb = construct_sbar(3).unwrap();
        let pair = detecting_subalgebra_sbar(&sb).unwrap();
        let e = restrict_to_subalgebra(&sb.alg, &pair.e, "e".to_string()).unwrap();
        let e0 = SubalgebraSpec::from_basis_indices(e.dim(), &(0..pair.e_even_count).collect::<Vec<_>>());
        let report = check_prop_2_2_1(&e, e0, 4).unwrap();
        assert!(report.derived_in_t);
        assert!(report.differentials_zero);
        assert!(report.equivalent);
    }

    #[test]
    fn prop_2_2_1_cartan_negative_with_witness() {
        let cart = construct_sbar(3).unwrap();
        let h = cartan_subalgebra(&cart);
        let report = check_prop_2_2_1(&cart.alg, h, 3).unwrap();
        assert!(!report.derived_in_t);
        assert!(!report.differentials_zero);
        assert!(report.equivalent);
        assert!(report.witness_bracket.is_some());
        assert!(report.witness_entry.is_some());
    }

    #[test]
    fn prop_2_2_1_abelian_positive() {
        let space =
            SuperSpace::from_degrees(vec![("x1".to_string(), 1), ("x2".to_string(), 1)]);
        let abelian = LieSuperalgebra::new("abelian".to_string(), space, Default::default());
        let zero = SubalgebraSpec::from_basis_indices(2, &[]);
        let report = check_prop_2_2_1(&abelian, zero, 3).unwrap();
        assert!(report.derived_in_t && report.differentials_zero && report.equivalent);
    }

    #[test]
    fn cohomology_equals_cochains_when_derived_in_t() {
        // with vanishing differentials, H^p has the full cochain dimension
        let sb = construct_sbar(3).unwrap();
        let pair = detecting_subalgebra_sbar(&sb).unwrap();
        let e = restrict_to_subalgebra(&sb.alg, &pair.e, "e".to_string()).unwrap();
        let e0 = SubalgebraSpec::from_basis_indices(e.dim(), &(0..pair.e_even_count).collect::<Vec<_>>());
        let m = trivial_module(&e);
        let setup = RelativeSetup::new(&e, e0.clone(), &m).unwrap();
        let table = cohomology_dims(&e, e0, &m, "C", "e0", 4).unwrap();
        for p in 0..=4 {
            assert_eq!(table.dims[p], setup.invariant_cochains(p).dim());
        }
    }

    #[test]
    fn euler_characteristic_gl11_adjoint() {
        // finite-window Euler identity: the alternating sums of cochain and
        // cohomology dimensions differ exactly by the boundary rank of d^P
        let g = construct_gl_super(1, 1).unwrap();
        let t = even_subalgebra(&g);
        let m = crate::smodule::adjoint_module(&g);
        let setup = RelativeSetup::new(&g, t.clone(), &m).unwrap();
        let p_max = 4;
        let table = cohomology_dims(&g, t, &m, "adjoint", "g_even", p_max).unwrap();
        assert_eq!(table.dims[3], 0);
        assert_eq!(table.dims[4], 0);
        let boundary_rank = setup.differential(p_max).unwrap().rank() as i64;
        let chi_c: i64 = (0..=p_max)
            .map(|p| {
                let d = setup.invariant_cochains(p).dim() as i64;
                if p % 2 == 0 { d } else { -d }
            })
            .sum();
        let chi_h: i64 = table
            .dims
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        let sign = if p_max % 2 == 0 { 1 } else { -1 };
        assert_eq!(chi_c, chi_h + sign * boundary_rank);
    }

    #[test]
    fn cochain_dims_additive_under_direct_sum() {
        let g = construct_gl_super(1, 1).unwrap();
        let t = even_subalgebra(&g);
        let m = crate::smodule::adjoint_module(&g);
        let c = trivial_module(&g);
        let s = direct_sum(&m, &c).unwrap();
        let su_m = RelativeSetup::new(&g, t.clone(), &m).unwrap();
        let su_c = RelativeSetup::new(&g, t.clone(), &c).unwrap();
        let su_s = RelativeSetup::new(&g, t, &s).unwrap();
        for p in 0..=3 {
            assert_eq!(
                su_s.invariant_cochains(p).dim(),
                su_m.invariant_cochains(p).dim() + su_c.invariant_cochains(p).dim()
            );
        }
    }

    #[test]
    fn kac_ext_window() {
        let sb = construct_sbar(3).unwrap();
        let t = degree_zero_subalgebra(&sb.alg);
        let k0 = kac_module_sigma(&sb, 0);
        let table = ext_dims(&sb.alg, t, &k0, &k0, "g0", 4).unwrap();
        assert!(table.dims[0] >= 1);
        // support of a Kac module is the zero point, so higher Ext must
        // vanish across the window
        assert_eq!(&table.dims[1..], &[0, 0, 0, 0]);
    }

    #[test]
    fn representatives_match_dims() {
        let cart = construct_sbar(3).unwrap();
        let t = degree_zero_subalgebra(&cart.alg);
        let m = trivial_module(&cart.alg);
        let setup = RelativeSetup::new(&cart.alg, t, &m).unwrap();
        assert_eq!(cohomology_representatives(&setup, 0).unwrap().len(), 1);
        assert_eq!(cohomology_representatives(&setup, 2).unwrap().len(), 0);
        assert_eq!(cohomology_representatives(&setup, 4).unwrap().len(), 1);
    }
}

//! End-to-end acceptance gate. Each test prints one pass/fail line for its
//! criterion (visible with `--nocapture`) and asserts it.

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercohomology::cochain::{verify_dd_zero, RelativeSetup};
use supercohomology::cohomology::{check_prop_2_2_1, cohomology_dims, ext_dims};
use supercohomology::invariants::{crosscheck_iso, symmetric_invariants};
use supercohomology::liesuper::{
    construct_gl_super, construct_s, construct_sbar, construct_w, degree_zero_subalgebra,
    detecting_subalgebra_sbar, even_subalgebra, restrict_to_subalgebra, validate,
    LieSuperalgebra, SubalgebraSpec,
};
use supercohomology::ratlin::{rat, rat_int, Rat};
use supercohomology::smodule::{
    adjoint_module, direct_sum, dual, free_e_module, kac_module_sigma, random_e_module, tensor,
    trivial_module,
};
use supercohomology::superspace::SuperSpace;
use supercohomology::varieties::rank_point_test;
use supercohomology::weights::{
    atypical_dominant_form, is_atypical_sbar, WeightVector,
};

fn criterion(number: usize, description: &str, ok: bool) {
    println!("{} criterion {number}: {description}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {number} failed: {description}");
}

fn detecting_e(n: usize) -> LieSuperalgebra {
    let sbar = construct_sbar(n).unwrap();
    let pair = detecting_subalgebra_sbar(&sbar).unwrap();
    restrict_to_subalgebra(&sbar.alg, &pair.e, "e".to_string()).unwrap()
}

#[test]
fn criterion_01_algebra_validation() {
    let mut ok = true;
    for n in 2..=4 {
        ok &= validate(&construct_w(n).unwrap().alg).ok;
        ok &= validate(&construct_s(n).unwrap().alg).ok;
        ok &= validate(&construct_sbar(n).unwrap().alg).ok;
    }
    for (m, n) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
        ok &= validate(&construct_gl_super(m, n).unwrap()).ok;
    }
    criterion(1, "W, S, Sbar (n = 2..4) and gl(m|n) (m + n <= 4) validate", ok);
}

#[test]
fn criterion_02_dimension_table() {
    let mut ok = true;
    for n in 2..=4usize {
        let w = construct_w(n).unwrap();
        let s = construct_s(n).unwrap();
        let sbar = construct_sbar(n).unwrap();
        ok &= w.alg.dim() == n * (1usize << n);
        ok &= sbar.alg.dim() == s.alg.dim() + 1;
    }
    let sb3 = construct_sbar(3).unwrap();
    let dims = sb3.alg.graded_dims();
    ok &= dims.get(&-1) == Some(&3) && dims.get(&0) == Some(&9) && dims.get(&1) == Some(&6);
    criterion(2, "dim W(n) = n*2^n, dim Sbar(n) = dim S(n) + 1, Sbar(3) graded (3, 9, 6)", ok);
}

#[test]
fn criterion_03_dd_zero() {
    let mut ok = true;
    for (n, p_max) in [(3usize, 6usize), (4, 4)] {
        let sbar = construct_sbar(n).unwrap();
        let coeffs = [
            trivial_module(&sbar.alg),
            adjoint_module(&sbar.alg),
            kac_module_sigma(&sbar, 0),
        ];
        for m in &coeffs {
            let t = degree_zero_subalgebra(&sbar.alg);
            let setup = RelativeSetup::new(&sbar.alg, t, m).unwrap();
            ok &= verify_dd_zero(&setup, p_max).ok;
        }
    }
    criterion(3, "d.d = 0 exactly for C, adjoint and K(0) coefficients", ok);
}

#[test]
fn criterion_04_prop_2_2_1() {
    let mut ok = true;
    // positive pairs: e relative to its even part, n = 3..5, plus an
    // abelian toy algebra relative to zero
    for n in 3..=5usize {
        let e = detecting_e(n);
        let e0: Vec<usize> = (0..e.dim())
            .filter(|&i| e.space.basis[i].parity == supercohomology::superspace::Parity::Even)
            .collect();
        let t = SubalgebraSpec::from_basis_indices(e.dim(), &e0);
        let report = check_prop_2_2_1(&e, t, 3).unwrap();
        ok &= report.equivalent && report.derived_in_t && report.differentials_zero;
    }
    let abelian = LieSuperalgebra::new(
        "abelian".to_string(),
        SuperSpace::from_degrees(vec![("x".to_string(), 0), ("y".to_string(), 0)]),
        Default::default(),
    );
    let report = check_prop_2_2_1(&abelian, SubalgebraSpec::new(Vec::new()), 3).unwrap();
    ok &= report.equivalent && report.derived_in_t && report.differentials_zero;

    // negative pairs: bracket escapes t and some differential is nonzero,
    // with explicit witnesses on both sides
    let sb3 = construct_sbar(3).unwrap();
    let h = supercohomology::liesuper::cartan_subalgebra(&sb3);
    let report = check_prop_2_2_1(&sb3.alg, h, 3).unwrap();
    ok &= report.equivalent
        && !report.derived_in_t
        && !report.differentials_zero
        && report.witness_entry.is_some()
        && report.witness_bracket.is_some();

    let w2 = construct_w(2).unwrap();
    let report = check_prop_2_2_1(&w2.alg, SubalgebraSpec::new(Vec::new()), 3).unwrap();
    ok &= report.equivalent
        && !report.derived_in_t
        && !report.differentials_zero
        && report.witness_entry.is_some()
        && report.witness_bracket.is_some();

    criterion(4, "derived-subalgebra criterion matches vanishing differentials with witnesses", ok);
}

#[test]
fn criterion_05_triple_agreement() {
    let r3 = crosscheck_iso(3, 6).unwrap();
    let r4 = crosscheck_iso(4, 4).unwrap();
    let ok = r3.agree
        && r3.cohomology == vec![1, 0, 0, 0, 1, 0, 0]
        && r4.agree
        && r4.cohomology == vec![1, 0, 0, 0, 1];
    criterion(
        5,
        "cochain cohomology = brute-force invariants = Hilbert series for n = 3, 4",
        ok,
    );
}

#[test]
fn criterion_06_generator_degrees() {
    let mut ok = true;
    for n in 3..=6usize {
        let expected: Vec<usize> = (2..=n - 1).map(|i| 2 * i).collect();
        ok &= symmetric_invariants(n, 2 * n).unwrap().generator_degrees == expected;
    }
    criterion(6, "invariant-ring generator degrees are 4, 6, ..., 2(n-1) for n = 3..6", ok);
}

#[test]
fn criterion_07_gl11() {
    let gl = construct_gl_super(1, 1).unwrap();
    let t = even_subalgebra(&gl);
    let m = trivial_module(&gl);
    let table = cohomology_dims(&gl, t, &m, "C", "g0", 4).unwrap();
    let ok = table.dims == vec![1, 0, 1, 0, 1];
    criterion(7, "H^p(gl(1|1), g0; C) = (1, 0, 1, 0, 1)", ok);
}

#[test]
fn criterion_08_typicality() {
    let mut ok = true;
    for n in [3usize, 4] {
        let mut coords = vec![0i64; n];
        loop {
            let lambda = WeightVector::from_ints(&coords);
            if lambda.is_dominant() {
                ok &= atypical_dominant_form(&lambda).unwrap() == is_atypical_sbar(&lambda);
            }
            // odometer over [-3, 3]^n
            let mut k = 0;
            while k < n {
                coords[k] += 1;
                if coords[k] <= 3 {
                    break;
                }
                coords[k] = -3;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    // published examples: every a*sigma is atypical, (2, 1, 0) is typical
    for a in -3..=3i64 {
        let sigma = WeightVector::sigma(3, &rat_int(a));
        ok &= atypical_dominant_form(&sigma).unwrap();
    }
    ok &= !atypical_dominant_form(&WeightVector::from_ints(&[2, 1, 0])).unwrap();
    criterion(8, "closed-form typicality matches the membership scan exhaustively", ok);
}

#[test]
fn criterion_09_kac_ext_golden() {
    let sbar = construct_sbar(3).unwrap();
    let t = degree_zero_subalgebra(&sbar.alg);
    let k0 = kac_module_sigma(&sbar, 0);
    let table = ext_dims(&sbar.alg, t, &k0, &k0, "g0", 4).unwrap();
    let ok = table.dims == vec![1, 0, 0, 0, 0];
    criterion(9, "Ext(K(0), K(0)) over Sbar(3) is (1, 0, 0, 0, 0) for p <= 4", ok);
}

#[test]
fn criterion_10_rank_variety_suite() {
    let e = detecting_e(3);
    let odd_count = 2usize;
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let point = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
        loop {
            let coords: Vec<Rat> = (0..odd_count)
                .map(|_| rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3)))
                .collect();
            if coords.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                return coords;
            }
        }
    };
    let free = free_e_module(&e).unwrap();
    let triv = trivial_module(&e);
    for seed in 0..20u64 {
        let dims = ((seed % 4 + 1) as usize, (seed % 3 + 2) as usize);
        let m = random_e_module(&e, dims, seed).unwrap();
        let n = random_e_module(&e, (2, 2), seed + 1000).unwrap();
        let sum = direct_sum(&m, &n).unwrap();
        let prod = tensor(&m, &n).unwrap();
        let md = dual(&m);
        for _ in 0..50 {
            let x = point(&mut rng);
            let pm = rank_point_test(&m, &x).unwrap().projective;
            let pn = rank_point_test(&n, &x).unwrap().projective;
            // (1) direct sums: projective exactly when both summands are
            ok &= rank_point_test(&sum, &x).unwrap().projective == (pm && pn);
            // (2) tensor products: projective as soon as one factor is
            if pm || pn {
                ok &= rank_point_test(&prod, &x).unwrap().projective;
            }
            // (3) duality preserves the verdict
            ok &= rank_point_test(&md, &x).unwrap().projective == pm;
            // (4) free everywhere projective, trivial nowhere
            ok &= rank_point_test(&free, &x).unwrap().projective;
            ok &= !rank_point_test(&triv, &x).unwrap().projective;
        }
    }
    criterion(10, "rank-variety point tests satisfy the closure properties on 20 seeded modules", ok);
}

#[test]
fn criterion_11_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_supercohomology");
    let commands: &[&[&str]] = &[
        &["algebra", "build", "--family", "sbar", "--n", "3"],
        &["algebra", "validate", "--family", "w", "--n", "2", "--format", "md"],
        &["cohomology", "--family", "sbar", "--n", "3", "--sub", "g0", "--coeff", "trivial", "--pmax", "6", "--format", "json"],
        &["ext", "--family", "sbar", "--n", "3", "--sub", "g0", "--m1", "kac:0", "--m2", "kac:0", "--pmax", "2", "--format", "csv"],
        &["invariants", "--n", "4", "--cap", "8", "--format", "csv"],
        &["crosscheck", "--n", "3", "--pmax", "4", "--format", "md"],
        &["typicality", "--family", "sbar", "--n", "3", "--weight", "2,1,0"],
        &["support", "simple", "--family", "sbar", "--n", "5", "--weight", "1,1,1,1,0"],
        &["support", "kac", "--family", "sbar", "--n", "3", "--weight", "1,1,0"],
        &["rankvariety", "--n", "3", "--dims", "2,2", "--points", "10", "--seed", "7"],
        &["report", "all", "--n", "3"],
    ];
    let mut ok = true;
    for args in commands {
        let run = || {
            let out = Command::new(bin).args(*args).output().expect("spawn CLI");
            (out.status.code(), out.stdout)
        };
        let (code_a, out_a) = run();
        let (code_b, out_b) = run();
        ok &= code_a == Some(0) && code_b == Some(0) && out_a == out_b && !out_a.is_empty();
    }
    criterion(11, "every CLI command is byte-identical across reruns", ok);
}

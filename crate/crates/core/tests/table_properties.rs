mod common;

use cboom_core::boomtables::{
    c_bct_def_table, c_bct_naive, c_bct_row, c_bct_system, c_boomerang_uniformity, sandwich_check, zero_row_check,
};
use cboom_core::difftables::{c_ddt, c_diff_uniformity, classify_pcn, monomial_inverse_ddt_check_plus, pcn_by_derivatives, PcnClass};
use cboom_core::funcspace::monomial;
use cboom_core::{Elem, Family, FunctionTable};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn catalog(max_q: u32) -> Vec<FunctionTable> {
    let mut out = Vec::new();
    for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2)] {
        let k = common::field(p, n);
        if k.order() > max_q {
            continue;
        }
        let mut fams = vec![Family::Square, Family::Inverse, Family::Gold { k: 1 }, Family::Gold { k: 2 }];
        fams.extend([Family::HalfGold { k: 1 }, Family::HalfGold { k: 2 }, Family::Dob { u: Elem::ONE }]);
        out.extend(fams.into_iter().filter_map(|f| f.build(&k).ok()));
    }
    out
}

fn random_perm(p: u32, n: u32, seed: u64) -> FunctionTable {
    let k = common::field(p, n);
    let mut v: Vec<Elem> = k.elements().collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    FunctionTable::from_values(&k, v, format!("perm{seed}")).unwrap()
}

#[test]
fn ddt_rows_sum_to_the_field_size() {
    for f in catalog(81) {
        let k = f.field();
        for c in k.elements() {
            let t = c_ddt(&f, c);
            for a in k.elements() {
                assert_eq!(t.row(a).iter().sum::<u32>(), k.order());
            }
        }
    }
}

#[test]
fn classical_ddt_matches_a_double_loop() {
    for f in catalog(81) {
        let k = f.field();
        let t = c_ddt(&f, Elem::ONE);
        for a in k.elements() {
            for b in k.elements() {
                let n = k.elements().filter(|&x| k.sub(f.eval(k.add(x, a)), f.eval(x)) == b).count();
                assert_eq!(t.get(a, b) as usize, n);
            }
        }
    }
}

#[test]
fn pcn_routes_agree() {
    for f in catalog(81) {
        for c in f.field().elements() {
            let pcn = classify_pcn(&f, c) == PcnClass::PcN;
            assert_eq!(pcn, pcn_by_derivatives(&f, c), "{} c={}", f.label(), f.field().format(c));
            assert_eq!(classify_pcn(&f, c).delta(), c_diff_uniformity(&f, c));
        }
    }
}

#[test]
fn monomial_inverse_ddt_identity() {
    for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2)] {
        let k = common::field(p, n);
        let q = k.order() as u128;
        for d in (1..q - 1).filter(|&d| monomial(&k, d).is_perm()) {
            for c in k.nonzero() {
                let v = monomial_inverse_ddt_check_plus(&k, d, c).unwrap();
                assert!(v.pass, "x^{d} over F_{p}^{n}: {:?}", v.witnesses);
            }
        }
    }
}

#[test]
fn system_definition_and_naive_agree_on_random_permutations() {
    for (seed, (p, n)) in [(2, 3), (3, 2), (2, 4), (3, 3), (5, 2)].into_iter().enumerate() {
        let f = random_perm(p, n, seed as u64);
        for c in f.field().nonzero() {
            let s = c_bct_system(&f, c).unwrap();
            assert_eq!(s.entries(), c_bct_def_table(&f, c).unwrap().entries());
            if f.field().order() <= 27 {
                assert_eq!(s.entries(), c_bct_naive(&f, c).unwrap().entries());
            }
        }
    }
}

#[test]
fn system_matches_definition_at_243() {
    let k = common::field(3, 5);
    let f = Family::Inverse.build(&k).unwrap();
    let c = k.alpha();
    assert_eq!(c_bct_system(&f, c).unwrap().entries(), c_bct_def_table(&f, c).unwrap().entries());
}

#[test]
fn naive_agrees_on_every_small_function() {
    for f in catalog(27) {
        for c in f.field().nonzero() {
            assert_eq!(c_bct_system(&f, c).unwrap().entries(), c_bct_naive(&f, c).unwrap().entries(), "{}", f.label());
        }
    }
}

#[test]
fn entries_are_bounded_and_single_rows_match() {
    for f in catalog(81) {
        let k = f.field();
        let q2 = k.order() * k.order();
        for c in k.nonzero() {
            let t = c_bct_system(&f, c).unwrap();
            assert!(t.entries().iter().all(|&e| e <= q2));
            for a in [Elem::ZERO, Elem::ONE, k.alpha()] {
                assert_eq!(c_bct_row(&f, c, a).unwrap(), t.row(a));
            }
        }
    }
}

#[test]
fn zero_row_equals_ddt_for_permutations() {
    for f in catalog(81).into_iter().filter(FunctionTable::is_perm) {
        let k = f.field().clone();
        let minus_one = k.neg(Elem::ONE);
        for c in k.nonzero().filter(|&c| c != Elem::ONE && c != minus_one) {
            assert!(zero_row_check(&f, c).unwrap().pass, "{} c={}", f.label(), k.format(c));
        }
    }
}

#[test]
fn classical_binary_inverse_boomerang() {
    let k = common::field(2, 4);
    assert_eq!(c_boomerang_uniformity(&Family::Inverse.build(&k).unwrap(), Elem::ONE).unwrap().beta, 6);
    let k = common::field(2, 2);
    assert_eq!(c_boomerang_uniformity(&Family::Inverse.build(&k).unwrap(), Elem::ONE).unwrap().beta, 4);
}

#[test]
fn quadratic_sandwich() {
    let k = common::field(2, 3);
    for d in [3, 5, 6] {
        let v = sandwich_check(&monomial(&k, d)).unwrap();
        assert!(v.pass, "{:?}", v.notes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_permutations_over_f9(seed in any::<u64>(), c in 1u32..9) {
        let f = random_perm(3, 2, seed);
        let c = Elem(c);
        let s = c_bct_system(&f, c).unwrap();
        let (naive, def) = (c_bct_naive(&f, c).unwrap(), c_bct_def_table(&f, c).unwrap());
        prop_assert_eq!(s.entries(), naive.entries());
        prop_assert_eq!(s.entries(), def.entries());
    }
}

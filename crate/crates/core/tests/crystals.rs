mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::{dominant_weights, w};
use fbs_core::crystal::{
    connected_components, f_closure, highest_weight_decompose, Crystal, CrystalGraph, PathCrystal, PathElement,
    TensorCrystal, DEFAULT_BUDGET,
};
use fbs_core::{CartanMatrix, RootSystem, Weight};
use proptest::prelude::*;

fn b2() -> RootSystem {
    RootSystem::new(CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]]).unwrap())
}

fn g2() -> RootSystem {
    RootSystem::new(CartanMatrix::new(vec![vec![2, -1], vec![-3, 2]]).unwrap())
}

/// Weight multiset of a crystal.
fn character<C: Crystal>(c: &C, elems: impl IntoIterator<Item = C::Elem>) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for b in elems {
        *out.entry(c.wt(&b)).or_insert(0) += 1;
    }
    out
}

#[test]
fn graph_sizes_follow_weyl_dimension() {
    for rs in [RootSystem::type_a(2), RootSystem::type_a(3), b2(), g2()] {
        for lam in dominant_weights(rs.rank(), 2) {
            if rs.rank() == 3 && lam.coords().iter().sum::<i64>() > 4 {
                continue;
            }
            let g = CrystalGraph::generate(&rs, &lam, DEFAULT_BUDGET).unwrap();
            assert_eq!(g.len() as u64, rs.weyl_dimension(&lam).unwrap(), "λ = {lam}");
        }
    }
}

#[test]
fn character_is_weyl_group_invariant() {
    // Multiplicities are constant on s_i-orbits: mult(μ) = mult(μ − ⟨μ,α_i^∨⟩α_i).
    for rs in [RootSystem::type_a(2), b2(), g2()] {
        for lam in dominant_weights(rs.rank(), 2) {
            let g = CrystalGraph::generate(&rs, &lam, DEFAULT_BUDGET).unwrap();
            let ch = character(&g, 0..g.len() as u32);
            for (mu, &m) in &ch {
                for i in 1..=rs.rank() {
                    let alpha = rs.simple_root_as_weight(i).unwrap();
                    let reflected = mu - &alpha.scale(rs.pairing(mu, i).unwrap());
                    assert_eq!(ch.get(&reflected), Some(&m));
                }
            }
        }
    }
}

#[test]
fn tensor_square_of_standard_sl3() {
    let rs = RootSystem::type_a(2);
    let g = Arc::new(CrystalGraph::generate(&rs, &w(&[1, 0]), DEFAULT_BUDGET).unwrap());
    let t = TensorCrystal::new(vec![g.clone(), g]);
    let all: Vec<Vec<u32>> = (0..3).flat_map(|a| (0..3).map(move |b| vec![a, b])).collect();
    let table = highest_weight_decompose(&t, &all).unwrap();
    let expected: BTreeMap<Weight, u64> = [(w(&[2, 0]), 1), (w(&[0, 1]), 1)].into_iter().collect();
    assert_eq!(table, expected);
    let comps = connected_components(&t, &all);
    let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, vec![3, 6]);
}

#[test]
fn decompose_rejects_sets_not_closed_under_e() {
    let rs = RootSystem::type_a(2);
    let g = CrystalGraph::generate(&rs, &w(&[1, 1]), DEFAULT_BUDGET).unwrap();
    let low = g.f(&0, 1).unwrap();
    assert!(highest_weight_decompose(&g, &[low]).is_err());
}

#[test]
fn closure_respects_budget() {
    let rs = RootSystem::type_a(2);
    let g = CrystalGraph::generate(&rs, &w(&[2, 2]), DEFAULT_BUDGET).unwrap();
    assert!(f_closure(&g, [0], &[1, 2], 5).is_err());
    assert_eq!(f_closure(&g, [0], &[1, 2], DEFAULT_BUDGET).unwrap().len(), 27);
    assert!(CrystalGraph::generate(&rs, &w(&[2, 2]), 10).is_err());
}

fn walk(rs: &RootSystem, lam: &Weight, steps: &[usize]) -> PathElement {
    let mut p = PathElement::straight(lam);
    for &i in steps {
        if let Some(q) = p.f(rs, i) {
            p = q;
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn path_operators_invert(
        which in 0usize..3,
        l1 in 0i64..4,
        l2 in 0i64..4,
        steps in prop::collection::vec(1usize..=2, 0..12),
    ) {
        let rs = [RootSystem::type_a(2), b2(), g2()][which].clone();
        let p = walk(&rs, &w(&[l1, l2]), &steps);
        let pc = PathCrystal::new(rs.clone());
        for i in 1..=2 {
            prop_assert_eq!(pc.phi(&p, i) - pc.epsilon(&p, i), pc.wt(&p).coords()[i - 1]);
            if let Some(q) = pc.f(&p, i) {
                prop_assert_eq!(pc.e(&q, i), Some(p.clone()));
                prop_assert_eq!(pc.epsilon(&q, i), pc.epsilon(&p, i) + 1);
            }
            if let Some(q) = pc.e(&p, i) {
                prop_assert_eq!(pc.f(&q, i), Some(p.clone()));
            }
            // The whole i-string through p has length ε + φ.
            let top = pc.e_pow(&p, i, pc.epsilon(&p, i)).unwrap();
            prop_assert!(pc.e(&top, i).is_none());
            let len = pc.epsilon(&p, i) + pc.phi(&p, i);
            prop_assert!(pc.f_pow(&top, i, len).is_some());
            prop_assert!(pc.f_pow(&top, i, len + 1).is_none());
        }
    }

    #[test]
    fn tensor_operators_invert(
        a in prop::collection::vec(0i64..3, 2),
        b in prop::collection::vec(0i64..3, 2),
        x in 0u32..1000,
        y in 0u32..1000,
    ) {
        let rs = RootSystem::type_a(2);
        let ga = Arc::new(CrystalGraph::generate(&rs, &Weight::new(a), DEFAULT_BUDGET).unwrap());
        let gb = Arc::new(CrystalGraph::generate(&rs, &Weight::new(b), DEFAULT_BUDGET).unwrap());
        let elem = vec![x % ga.len() as u32, y % gb.len() as u32];
        let t = TensorCrystal::new(vec![ga, gb]);
        for i in 1..=2 {
            let wt = t.wt(&elem);
            prop_assert_eq!(t.phi(&elem, i) - t.epsilon(&elem, i), wt.coords()[i - 1]);
            if let Some(q) = t.f(&elem, i) {
                prop_assert_eq!(t.e(&q, i), Some(elem.clone()));
            }
            if let Some(q) = t.e(&elem, i) {
                prop_assert_eq!(t.f(&q, i), Some(elem.clone()));
            }
        }
    }

    #[test]
    fn tensor_product_dimension_is_multiplicative(
        a in prop::collection::vec(0i64..3, 2),
        b in prop::collection::vec(0i64..3, 2),
    ) {
        let rs = RootSystem::type_a(2);
        let (a, b) = (Weight::new(a), Weight::new(b));
        let ga = Arc::new(CrystalGraph::generate(&rs, &a, DEFAULT_BUDGET).unwrap());
        let gb = Arc::new(CrystalGraph::generate(&rs, &b, DEFAULT_BUDGET).unwrap());
        let all: Vec<Vec<u32>> = (0..ga.len() as u32)
            .flat_map(|x| (0..gb.len() as u32).map(move |y| vec![x, y]))
            .collect();
        let t = TensorCrystal::new(vec![ga, gb]);
        let table = highest_weight_decompose(&t, &all).unwrap();
        let total: u64 = table.iter().map(|(nu, m)| m * rs.weyl_dimension(nu).unwrap()).sum();
        prop_assert_eq!(total, rs.weyl_dimension(&a).unwrap() * rs.weyl_dimension(&b).unwrap());
        // Both factor orders decompose the same way.
        let swapped: Vec<Vec<u32>> = all.iter().map(|v| vec![v[1], v[0]]).collect();
        let rev = TensorCrystal::new(vec![t.factors()[1].clone(), t.factors()[0].clone()]);
        prop_assert_eq!(highest_weight_decompose(&rev, &swapped).unwrap(), table);
    }
}

use std::collections::BTreeMap;

use bsquad::group::Element;
use bsquad::reductions::{
    brute_3part, brute_partition, exponent_span_ok, gadget_separation, gen_genus1_from_3part,
    gen_spherical_from_3part, gen_spherical_from_part, genus1_witness, ThreePartInstance,
};
use bsquad::{solve, verify, Group, Limits, Solution};

fn inst(v: &[u64]) -> ThreePartInstance {
    ThreePartInstance::new(v.to_vec()).unwrap()
}

#[test]
fn instance_preconditions() {
    assert!(ThreePartInstance::new(vec![2, 3, 3, 2, 3, 3]).is_err());
    assert!(ThreePartInstance::new(vec![3, 4, 5, 3, 4, 5]).is_err());
    assert!(brute_3part(&inst(&[4, 4, 4, 4, 4, 4])));
    assert!(!brute_3part(&inst(&[4, 4, 4, 4, 4, 6])));
}

#[test]
fn spherical_gadget_positive_and_span() {
    for n in [2, 3] {
        for items in [&[4u64, 4, 4, 4, 4, 4][..], &[4, 5, 5][..], &[1, 1, 1][..]] {
            let i = inst(items);
            let ast = gen_spherical_from_3part(&i, n).unwrap();
            let g = Group::new(n).unwrap();
            let v = solve(&g, &ast, &Limits::default()).unwrap();
            assert!(v.solvable, "{items:?} over n = {n}");
            let sol = v.solution.unwrap();
            assert!(verify(&g, &ast, &sol).unwrap());
            // z_i = (v_i, y_i); the t-exponents play the role of the x_i
            let ys: Vec<i64> = (1..=items.len())
                .map(|j| sol.assignment[&format!("z{j}")].beta)
                .collect();
            let lo = *ys.iter().min().unwrap();
            let x: Vec<u64> = ys.iter().map(|y| (y - lo) as u64).collect();
            let c = gadget_separation(&i, n).unwrap();
            assert!(exponent_span_ok(&i, c, &x), "{items:?}: {x:?} with c = {c}");
        }
    }
}

#[test]
fn spherical_gadget_negative() {
    let i = inst(&[4, 4, 4, 4, 4, 6]);
    let ast = gen_spherical_from_3part(&i, 2).unwrap();
    let v = solve(&Group::new(2).unwrap(), &ast, &Limits::default()).unwrap();
    assert!(!v.solvable);
}

#[test]
fn genus1_explicit_witness() {
    for n in [2, 3, -2] {
        for items in [&[4u64, 4, 4, 4, 4, 4][..], &[4, 5, 5][..]] {
            let i = inst(items);
            let g = Group::new(n).unwrap();
            let ast = gen_genus1_from_3part(&i, n).unwrap();
            let u = genus1_witness(&i).unwrap();
            let (k, l) = (i.k(), i.target());
            let m = (k * k * l * (l + 1)) as i64;
            let mut assignment = BTreeMap::new();
            assignment.insert("x".to_string(), Element::t_pow(-m));
            assignment.insert("y".to_string(), Element::identity());
            for (j, &e) in u.iter().enumerate() {
                assignment.insert(format!("z{}", j + 1), Element::t_pow(e as i64));
            }
            let sol = Solution::from_assignment(&g, assignment);
            assert!(verify(&g, &ast, &sol).unwrap(), "{items:?} over n = {n}");
            assert!(solve(&g, &ast, &Limits::default()).unwrap().solvable);
        }
    }
    assert!(genus1_witness(&inst(&[4, 4, 4, 4, 4, 6])).is_none());
}

#[test]
fn partition_gadget() {
    let g = Group::new(-1).unwrap();
    for (s, want) in [(&[1u64, 1][..], true), (&[1, 1, 1][..], false), (&[3, 1, 2][..], true), (&[5, 1, 2][..], false)] {
        assert_eq!(brute_partition(s), want);
        let ast = gen_spherical_from_part(s).unwrap();
        let v = solve(&g, &ast, &Limits::default()).unwrap();
        assert_eq!(v.solvable, want, "{s:?}");
        if let Some(sol) = &v.solution {
            assert!(verify(&g, &ast, sol).unwrap());
        }
    }
    assert!(gen_spherical_from_part(&[]).is_err());
}

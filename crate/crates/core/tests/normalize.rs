use bsquad::eqnorm::{self, pull_back, SfSolution};
use bsquad::{parse_equation, to_standard_form, Element, Group, Kind};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONSTS: [&str; 6] = ["a", "A", "t", "T", "a^2", "t a T"];
const NAMES: [&str; 5] = ["x", "y", "z", "u", "v"];

fn random_equation(rng: &mut ChaCha8Rng, max_vars: usize, max_consts: usize) -> String {
    let nv = rng.gen_range(0..=max_vars);
    let mut items: Vec<String> = Vec::new();
    for name in &NAMES[..nv] {
        for _ in 0..2 {
            items.push(if rng.gen_bool(0.5) {
                name.to_string()
            } else {
                name.to_uppercase()
            });
        }
    }
    for _ in 0..rng.gen_range(0..=max_consts) {
        items.push(CONSTS[rng.gen_range(0..CONSTS.len())].to_string());
    }
    items.shuffle(rng);
    if items.is_empty() {
        "1".into()
    } else {
        items.join(" ")
    }
}

fn random_element(rng: &mut ChaCha8Rng, grp: &Group) -> Element {
    let num: i64 = rng.gen_range(-9..10);
    let exp: i64 = rng.gen_range(0..3);
    Element::new(grp.base().canonicalize(num.into(), exp), rng.gen_range(-3..4))
}

/// `g ~ h` in BS(1,n): equal beta and alpha_h in n^k alpha_g + (n^|beta| - 1) Z[1/n].
fn conjugate(grp: &Group, g: &Element, h: &Element) -> bool {
    if g.beta != h.beta {
        return false;
    }
    let b = grp.base();
    let d = b.pow(g.beta.unsigned_abs()) - 1;
    (-12i64..=12).any(|k| {
        let diff = b.sub(&h.alpha, &b.scale_pow(&g.alpha, k));
        if d == 0.into() {
            diff.is_zero()
        } else {
            b.div_int(&diff, &d).is_some()
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn normal_form_is_equivalent(seed in any::<u64>(), n in prop::sample::select(vec![-2i64, 2, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grp = Group::new(n).unwrap();
        let text = random_equation(&mut rng, 5, 4);
        let ast = parse_equation(&text).unwrap();
        let (sf, sub) = to_standard_form(&grp, &ast).unwrap();

        // size grows by at most one fresh conjugator
        prop_assert!(sf.length() <= ast.length() + BigUint::from(2u32));
        // quadratic move budget
        let w = ast.factors.len().max(1);
        prop_assert!(sub.moves.len() <= 8 * w * w + 8, "{} moves for {}", sub.moves.len(), text);

        // the linear-time genus agrees with normalisation
        let topo = eqnorm::topology(&ast).unwrap();
        match sf.kind {
            Kind::Orientable | Kind::Spherical | Kind::Trivial => {
                prop_assert!(topo.orientable, "{}", text);
                prop_assert_eq!(topo.genus, sf.genus, "{}", text);
            }
            Kind::Nonorientable => {
                prop_assert!(!topo.orientable, "{}", text);
                prop_assert_eq!(topo.genus, sf.genus, "{}", text);
            }
        }

        // W(pull_back(s)) is conjugate to SF(s) for arbitrary s
        for _ in 0..4 {
            let sol = SfSolution {
                x: sf.x.iter().map(|_| random_element(&mut rng, &grp)).collect(),
                y: sf.y.iter().map(|_| random_element(&mut rng, &grp)).collect(),
                z: sf.z.iter().map(|_| random_element(&mut rng, &grp)).collect(),
            };
            let lhs = sf.evaluate(&grp, &sol);
            let back = pull_back(&grp, &sub, &sf, &sol).unwrap();
            let orig = eqnorm::evaluate(&grp, &ast, &back).unwrap();
            prop_assert!(conjugate(&grp, &lhs, &orig), "{} gives {} against {}", text,
                grp.render_element(&lhs), grp.render_element(&orig));
        }
    }

    #[test]
    fn invariants_survive_cyclic_permutation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grp = Group::new(2).unwrap();
        let text = random_equation(&mut rng, 4, 3);
        let ast = parse_equation(&text).unwrap();
        let (sf, _) = to_standard_form(&grp, &ast).unwrap();
        let mut rotated = ast.clone();
        let k = rng.gen_range(0..rotated.factors.len().max(1));
        let len = rotated.factors.len();
        rotated.factors.rotate_left(k.min(len));
        let (sf2, _) = to_standard_form(&grp, &rotated).unwrap();
        prop_assert_eq!((sf.kind, sf.genus, sf.k()), (sf2.kind, sf2.genus, sf2.k()), "{}", text);
    }
}

#[test]
fn gadget_shaped_equation_needs_no_rewriting() {
    let grp = Group::new(2).unwrap();
    let ast = parse_equation("Z a^5 z W a^3 w = a^8").unwrap();
    let (sf, _) = to_standard_form(&grp, &ast).unwrap();
    assert_eq!((sf.kind, sf.k()), (Kind::Spherical, 3));
}

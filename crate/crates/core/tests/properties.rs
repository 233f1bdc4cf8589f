use std::sync::OnceLock;

use proptest::prelude::*;
use specht_core::exact::{inner_product, kernel, rank, Field, RatMatrix, RatVector, Scalar};
use specht_core::roots::build_root_system;
use specht_core::specht::{
    appearance_table, bilinear_form, check_useful, polytabloid, tabloids, Generator, Mode, ModuleVector, Pair, Side,
};
use specht_core::subsys::{enumerate_subsystems, Subsystem};
use specht_core::weyl::{enumerate_group, subgroup_intersection, ElemId, WeylGroup};

fn group(label: &str) -> WeylGroup {
    enumerate_group(build_root_system(label.parse().unwrap()).unwrap()).unwrap()
}

fn a3() -> &'static WeylGroup {
    static G: OnceLock<WeylGroup> = OnceLock::new();
    G.get_or_init(|| group("A3"))
}

fn d4() -> &'static WeylGroup {
    static G: OnceLock<WeylGroup> = OnceLock::new();
    G.get_or_init(|| group("D4"))
}

fn d4_subsystems() -> &'static [Subsystem] {
    static S: OnceLock<Vec<Subsystem>> = OnceLock::new();
    S.get_or_init(|| enumerate_subsystems(d4()).unwrap())
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7))]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = (Field, Vec<i64>)> {
    (field(), proptest::collection::vec(-3i64..=3, rows * cols))
}

fn build(f: Field, rows: usize, cols: usize, data: &[i64]) -> RatMatrix {
    let rs = (0..rows)
        .map(|r| RatVector::new((0..cols).map(|c| f.from_i64(data[r * cols + c])).collect()))
        .collect();
    RatMatrix::from_rows(cols, rs).unwrap()
}

// e_{wJ,wJ'} computed from scratch: transported roots, fresh column group, tabloid {w J}.
fn transported_polytabloid(g: &WeylGroup, pair: &Pair, w: ElemId) -> ModuleVector {
    let space = tabloids(g, &pair.rows, pair.mode).unwrap();
    let cols: Vec<Generator> =
        pair.cols.ordered_roots().iter().map(|&r| Generator::Root(g.apply_root(w, r))).collect();
    let side = Side::new(g, cols).unwrap();
    polytabloid(g, &space, side.subgroup(), space.of(w), Field::Rational)
}

fn equivariance_holds(g: &WeylGroup, pair: &Pair, w: ElemId) -> bool {
    let space = tabloids(g, &pair.rows, pair.mode).unwrap();
    let e = polytabloid(g, &space, pair.cols.subgroup(), space.base(), Field::Rational);
    e.act(g, &space, w) == transported_polytabloid(g, pair, w)
}

#[test]
fn equivariance_exhaustive_on_a3() {
    let g = a3();
    let pair = Pair::parse(g, "100,001", "110,011", Mode::Subsystem).unwrap();
    let bad = g.elements().filter(|&w| !equivariance_holds(g, &pair, w)).count();
    assert_eq!(bad, 0);
}

#[test]
fn bilinear_form_invariant_on_a3() {
    let g = a3();
    let pair = Pair::parse(g, "100,001", "110,011", Mode::Subsystem).unwrap();
    let space = tabloids(g, &pair.rows, pair.mode).unwrap();
    let e = polytabloid(g, &space, pair.cols.subgroup(), space.base(), Field::Rational);
    for x in g.elements() {
        let m1 = e.act(g, &space, x);
        for t in space.all() {
            let m2 = ModuleVector::tabloid(Field::Rational, t).add(&e);
            let before = bilinear_form(&m1, &m2);
            for w in g.elements() {
                assert_eq!(bilinear_form(&m1.act(g, &space, w), &m2.act(g, &space, w)), before);
            }
        }
    }
    let base = ModuleVector::tabloid(Field::Rational, space.base());
    let other = ModuleVector::tabloid(Field::Rational, space.of(g.simple_reflection(1)));
    assert!(bilinear_form(&base, &base).is_one());
    assert!(bilinear_form(&base, &other).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(f in field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if let Some(inv) = a.inverse() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rank_is_transpose_invariant((f, data) in matrix(4, 5)) {
        let m = build(f, 4, 5, &data);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_complements_rank((f, data) in matrix(3, 5)) {
        let m = build(f, 3, 5, &data);
        let k = kernel(&m);
        prop_assert_eq!(k.len() + rank(&m), 5);
        for v in &k {
            for r in 0..3 {
                prop_assert!(inner_product(&m.row(r), v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn group_laws_d4(a in 0u32..192, b in 0u32..192, c in 0u32..192) {
        let g = d4();
        let (a, b, c) = (ElemId(a), ElemId(b), ElemId(c));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inverse(a)), g.identity());
        prop_assert_eq!(g.sign(g.mul(a, b)), g.sign(a) * g.sign(b));
        let inversions = g.root_system().positive_indices().filter(|&r| !g.root_system().is_positive(g.apply_root(a, r))).count();
        prop_assert_eq!(g.length(a), inversions);
    }

    #[test]
    fn tabloid_action_is_a_group_action(a in 0u32..192, b in 0u32..192, which in 0usize..12) {
        let g = d4();
        let s = &d4_subsystems()[which];
        let side = Side::from_subsystem(g, s);
        let space = tabloids(g, &side, Mode::Subsystem).unwrap();
        let (a, b) = (ElemId(a), ElemId(b));
        for t in space.all() {
            prop_assert_eq!(space.act(g, b, space.act(g, a, t)), space.act(g, g.mul(b, a), t));
            prop_assert_eq!(space.act(g, g.identity(), t), t);
        }
        prop_assert_eq!(space.len() * side.subgroup().order(), 192);
    }

    #[test]
    fn equivariance_sampled_on_d4(w in 0u32..192) {
        let g = d4();
        let pair = Pair::parse(g, "1000,0100,0010", "1101,0111", Mode::Subsystem).unwrap();
        prop_assert!(equivariance_holds(g, &pair, ElemId(w)));
    }

    // Random pairs (Psi, w Psi') with Psi' taken from the class list.
    #[test]
    fn polytabloid_coefficients_d4(i in 0usize..12, j in 0usize..12, w in 0u32..192) {
        let g = d4();
        let rs = g.root_system();
        let psi = &d4_subsystems()[i];
        let moved = Subsystem::from_roots(rs, &d4_subsystems()[j].image_roots(g, ElemId(w))).unwrap();
        prop_assume!(psi.is_disjoint(&moved));
        let pair = Pair::new(g, Side::from_subsystem(g, psi), Side::from_subsystem(g, &moved), Mode::Subsystem).unwrap();
        let space = tabloids(g, &pair.rows, pair.mode).unwrap();
        let e = polytabloid(g, &space, pair.cols.subgroup(), space.base(), Field::Rational);
        let useful = check_useful(g, &pair).unwrap();
        let both = subgroup_intersection(pair.rows.subgroup(), pair.cols.subgroup());
        let odd_involution = both.elements().iter().any(|&x| x != g.identity() && g.mul(x, x) == g.identity() && g.sign(x) == -1);
        if odd_involution {
            prop_assert!(e.is_zero());
        }
        if useful.is_useful() {
            prop_assert!(!e.is_zero());
            for (_, c) in e.terms() {
                prop_assert!(c.is_one() || (-c).is_one());
            }
            for &rho in pair.cols.subgroup().elements() {
                prop_assert_eq!(e.act(g, &space, rho), e.scale(&Scalar::from_i64(g.sign(rho))));
            }
            for row in appearance_table(g, &pair).unwrap() {
                prop_assert_eq!(!row.coefficient.is_zero(), row.factorizes);
                prop_assert!(row.coefficient.is_zero() || row.disjoint);
            }
        }
    }
}

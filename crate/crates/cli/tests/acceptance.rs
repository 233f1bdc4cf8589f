//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line.
//! All comparisons are exact; the only numeric tolerance is the runtime budget.

use std::process::Command;
use std::time::{Duration, Instant};

use specht_core::chartab::{d4_table, scalars, CharacterTable};
use specht_core::exact::{Field, RatMatrix, Scalar};
use specht_core::roots::build_root_system;
use specht_core::specht::{
    action_matrix_in, appearance_table, bilinear_form, check_good, check_useful, polytabloid, specht_module,
    specht_series_quotient, tabloids, Generator, Mode, ModuleVector, Pair, Side,
};
use specht_core::subsys::steinberg_fold;
use specht_core::weyl::{enumerate_group, ElemId, WeylGroup};

/// Wall-clock budget for reproducing the D4 table.
const TABLE_BUDGET: Duration = Duration::from_secs(60);
/// Sample size for equivariance on W(D4).
const D4_EQUIVARIANCE_SAMPLES: usize = 50;

/// `(J, J', printed character)` for the eleven good systems of W(D4).
const D4_GOOD_SYSTEMS: [(&str, &str, &str); 11] = [
    ("1000,0100,0010", "1101,0111", "χ4"),
    ("1000,0100,0001", "1110,0111", "χ9"),
    ("0100,0010,0001", "1110,1101", "χ5"),
    ("1000,1211,0010,0001", "1100,0110,0101", "χ3"),
    ("1000,0010,0001", "1111,0100", "χ13"),
    ("1000,0100", "1110,1101,0111", "χ13"),
    ("1000,0010", "0001,1100,0110", "χ7"),
    ("1000,0001", "0010,0101,1100", "χ6"),
    ("0010,0001", "1000,0101,0110", "χ8"),
    ("1000,0100,0010,0001", "", "χ1"),
    ("", "1000,0100,0010,0001", "χ2"),
];

fn group(label: &str) -> WeylGroup {
    enumerate_group(build_root_system(label.parse().unwrap()).unwrap()).unwrap()
}

fn report(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
}

fn row(table: &CharacterTable, label: &str) -> Vec<Scalar> {
    scalars(&table.row(label).unwrap().values)
}

#[test]
fn criterion_1_d4_good_system_table() {
    let start = Instant::now();
    let g = group("D4");
    let table = d4_table(&g).unwrap();
    let mut failures = Vec::new();
    for (i, (j, jp, label)) in D4_GOOD_SYSTEMS.iter().enumerate() {
        let pair = Pair::parse(&g, j, jp, Mode::Subsystem).unwrap();
        let good = check_good(&g, &pair, Field::Rational).map(|r| r.good).unwrap_or(false);
        let chi = specht_module(&g, &pair, Field::Rational).unwrap().character(&g, table.representatives()).unwrap();
        let ok = good && chi == row(&table, label);
        let got = table.identify(&chi).map(|x| x.to_string()).unwrap_or_else(|e| e.to_string());
        println!("  row {:>2}: {} J={j:<20} J'={jp:<24} expected {label:<4} computed {got}", i + 1, if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures.push(format!("row {} expected {label} computed {got}", i + 1));
        }
    }
    let elapsed = start.elapsed();
    let in_budget = elapsed < TABLE_BUDGET;
    let ok = failures.is_empty() && in_budget;
    report(1, ok, &format!("{} of 11 rows match, {:.2?}", 11 - failures.len(), elapsed));
    assert!(in_budget, "took {elapsed:?}");
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_2_psi1_spot_values() {
    let g = group("D4");
    let table = d4_table(&g).unwrap();
    let pair = Pair::parse(&g, "1000,0100,0010", "1101,0111", Mode::Subsystem).unwrap();
    let s = specht_module(&g, &pair, Field::Rational).unwrap();
    let e = s.polytabloid();
    let space = s.space();
    // Basis e, t4 e, t2 t4 e.
    let basis: Vec<ModuleVector> =
        ["e", "t4", "t2 t4"].iter().map(|w| e.act(&g, space, g.parse_word(w).unwrap())).collect();
    let t2 = g.parse_word("t2").unwrap();
    let m = action_matrix_in(&g, space, &basis, t2).unwrap();
    let want = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).unwrap();
    let trace = s.character(&g, &[t2]).unwrap()[0].clone();
    let chi = s.character(&g, table.representatives()).unwrap();
    let ok = s.dimension() == 3 && m == want && trace == Scalar::from_i64(1) && chi == row(&table, "χ4");
    report(2, ok, &format!("dim {}, trace {trace}, T(t2) = {m}", s.dimension()));
    assert!(ok);
}

#[test]
fn criterion_3_steinberg_extension() {
    let g = group("D4");
    let table = d4_table(&g).unwrap();
    let reps = table.representatives();

    let g2 = Pair::parse(&g, "1/3(1000+0010+0001),0100", "0001,0110", Mode::Coset).unwrap();
    let good = check_good(&g, &g2, Field::Rational).unwrap().good;
    let m = specht_module(&g, &g2, Field::Rational).unwrap();
    let chi12 = good && m.dimension() == 6 && m.character(&g, reps).unwrap() == row(&table, "χ12");

    let rows = Side::parse(&g, "1000,0100,0010").unwrap();
    let q11 = specht_series_quotient(&g, &rows, &Side::parse(&g, "1101").unwrap(), &Side::parse(&g, "1101,0111").unwrap(), Mode::Subsystem, reps).unwrap();
    let chi11 = q11.submodule_contained && (q11.larger_dimension, q11.submodule_dimension) == (7, 3) && q11.quotient == row(&table, "χ11");

    let rows = Side::parse(&g, "1000").unwrap();
    let a3 = Side::parse(&g, "0100,0001,0010").unwrap();
    let b3 = Side::parse(&g, "0100,0001,1/2(1000+1211)").unwrap();
    let q10 = specht_series_quotient(&g, &rows, &a3, &b3, Mode::Coset, reps).unwrap();
    let chi10 = b3.subgroup().order() == 48 && q10.submodule_contained && (q10.larger_dimension, q10.submodule_dimension) == (7, 3) && q10.quotient == row(&table, "χ10");

    let ok = chi12 && chi11 && chi10;
    report(3, ok, &format!("χ12 {chi12}, χ11 {chi11}, χ10 {chi10}"));
    assert!(ok);
}

#[test]
fn criterion_4_a3_tabloids() {
    let g = group("A3");
    let pair = Pair::parse(&g, "100,001", "110,011", Mode::Subsystem).unwrap();
    let space = tabloids(&g, &pair.rows, Mode::Subsystem).unwrap();
    let listed = [
        ("e", "{100,001;110,011}"),
        ("t2", "{110,011;100,001}"),
        ("t1 t2", "{010,111;-100,001}"),
        ("t3 t2", "{111,010;100,-001}"),
        ("t1 t3 t2", "{011,110;-100,-001}"),
        ("t2 t1 t3 t2", "{001,100;-110,-011}"),
    ];
    let mut ok = space.len() == listed.len();
    for (i, (word, tuple)) in listed.iter().enumerate() {
        let w = g.parse_word(word).unwrap();
        let t = space.of(w);
        ok &= t.index() == i && space.rep(t) == w && space.describe(&g, &pair, t) == *tuple;
    }
    report(4, ok, &format!("{} tabloids", space.len()));
    assert!(ok);
}

#[test]
fn criterion_5_b3_not_useful() {
    let g = group("B3");
    let pair = Pair::parse(&g, "100,122,001", "010,111,012", Mode::Subsystem).unwrap();
    let u = check_useful(&g, &pair).unwrap();
    let witness = u.witness.unwrap();
    let printed = g.parse_word("t3 t2 t3 t1 t2 t3 t1 t2 t1").unwrap();
    let in_both = pair.rows.subgroup().contains(witness) && pair.cols.subgroup().contains(witness);
    let involution = g.mul(witness, witness) == g.identity() && witness != g.identity();
    let space = tabloids(&g, &pair.rows, Mode::Subsystem).unwrap();
    let e = polytabloid(&g, &space, pair.cols.subgroup(), space.base(), Field::Rational);
    let ok = !u.is_useful() && in_both && involution && g.sign(witness) == -1 && witness == printed && e.is_zero();
    report(5, ok, &format!("witness {}, e = 0: {}", g.word_string(witness), e.is_zero()));
    assert!(ok);
}

// e_{wJ,wJ'} from transported roots, compared with w e_{J,J'}.
fn equivariance_violations(g: &WeylGroup, pair: &Pair, elems: &[ElemId]) -> usize {
    let space = tabloids(g, &pair.rows, pair.mode).unwrap();
    let e = polytabloid(g, &space, pair.cols.subgroup(), space.base(), Field::Rational);
    elems
        .iter()
        .filter(|&&w| {
            let cols: Vec<Generator> =
                pair.cols.ordered_roots().iter().map(|&r| Generator::Root(g.apply_root(w, r))).collect();
            let moved = Side::new(g, cols).unwrap();
            e.act(g, &space, w) != polytabloid(g, &space, moved.subgroup(), space.of(w), Field::Rational)
        })
        .count()
}

#[test]
fn criterion_6_property_suites() {
    let a3 = group("A3");
    let d4 = group("D4");
    let table = d4_table(&d4).unwrap();
    let mut checks: Vec<(&str, bool)> = Vec::new();

    let pa3 = Pair::parse(&a3, "100,001", "110,011", Mode::Subsystem).unwrap();
    let all_a3: Vec<ElemId> = a3.elements().collect();
    checks.push(("equivariance A3", equivariance_violations(&a3, &pa3, &all_a3) == 0));
    let pd4 = Pair::parse(&d4, "1000,0100,0010", "1101,0111", Mode::Subsystem).unwrap();
    let step = d4.order() / D4_EQUIVARIANCE_SAMPLES;
    let sample: Vec<ElemId> = (0..D4_EQUIVARIANCE_SAMPLES).map(|i| ElemId((i * step) as u32)).collect();
    checks.push(("equivariance D4", equivariance_violations(&d4, &pd4, &sample) == 0));

    let mut oracle = true;
    let mut norms = true;
    for (j, jp, _) in D4_GOOD_SYSTEMS {
        let pair = Pair::parse(&d4, j, jp, Mode::Subsystem).unwrap();
        for r in appearance_table(&d4, &pair).unwrap() {
            oracle &= !r.coefficient.is_zero() == r.factorizes;
        }
        let chi = specht_module(&d4, &pair, Field::Rational).unwrap().character(&d4, table.representatives()).unwrap();
        norms &= table.norm(&chi).unwrap() == Scalar::from_i64(1);
    }
    checks.push(("coefficient vs factorization", oracle));
    checks.push(("character norm 1", norms));

    let space = tabloids(&a3, &pa3.rows, Mode::Subsystem).unwrap();
    let e = polytabloid(&a3, &space, pa3.cols.subgroup(), space.base(), Field::Rational);
    let mut invariant = true;
    for t in space.all() {
        let m = ModuleVector::tabloid(Field::Rational, t);
        for &w in &all_a3 {
            invariant &= bilinear_form(&e.act(&a3, &space, w), &m.act(&a3, &space, w)) == bilinear_form(&e, &m);
        }
    }
    checks.push(("bilinear form invariance A3", invariant));

    let fold = steinberg_fold(&d4, &[0, 1, 2, 3], &[2, 1, 3, 0]).unwrap();
    checks.push(("triality properties (i)-(v)", fold.check_properties(&d4).all_hold() && fold.subgroup.order() == 12));

    let degrees: i64 = table.rows().iter().map(|r| r.values[0] * r.values[0]).sum();
    checks.push(("table orthogonality and degrees", table.self_check().is_ok() && degrees == 192 && d4.order() == 192));

    let ok = checks.iter().all(|c| c.1);
    let detail: Vec<String> = checks.iter().map(|(n, b)| format!("{n}: {}", if *b { "ok" } else { "violated" })).collect();
    report(6, ok, &detail.join(", "));
    assert!(ok);
}

#[test]
fn criterion_7_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_specht"))
            .args(["verify-d4", "--format=records"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let ok = !a.stdout.is_empty() && a.stdout == b.stdout && a.status.code() == b.status.code();
    report(7, ok, &format!("{} bytes, exit {:?}", a.stdout.len(), a.status.code()));
    assert!(ok);
}

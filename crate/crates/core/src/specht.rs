//! Tabloids, polytabloids and generalized Specht modules.
//!
//! Two flavours share one engine. In subsystem mode the rows and columns are
//! simple systems `J`, `J'` of disjoint subsystems and tabloids are transported
//! ordered simple systems. In coset mode they are arbitrary reflection
//! subgroups (for instance Steinberg subgroups) and tabloids are left cosets.
//! Either way a tabloid is stored as a left coset `w W(J)` with its canonical
//! representative.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exact::{kernel, row_echelon, solve_in_basis, Field, RatMatrix, RatVector, Scalar};
use crate::roots::RootSystem;
use crate::subsys::{orbit_longest, orthogonal_complement, Subsystem};
use crate::weyl::{
    generate_subgroup, subgroup_intersection, ElemId, LeftCosets, ReflectionSubgroup, SubgroupKind, WeylGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Subsystem,
    Coset,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Subsystem => "subsystem",
            Mode::Coset => "coset",
        })
    }
}

/// One generator of a side: a root, or the longest element of the reflection
/// group of a family of roots (written `1/k(r1+...+rk)`, the family's average).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Root(usize),
    Orbit(Vec<usize>),
}

impl Generator {
    pub fn text(&self, rs: &RootSystem) -> String {
        match self {
            Generator::Root(r) => rs.notation(*r),
            Generator::Orbit(rs_) => {
                let mut s = format!("1/{}(", rs_.len());
                for (i, &r) in rs_.iter().enumerate() {
                    let n = rs.notation(r);
                    if i > 0 && !n.starts_with('-') {
                        s.push('+');
                    }
                    s.push_str(&n);
                }
                s.push(')');
                s
            }
        }
    }
}

fn is_empty_marker(t: &str) -> bool {
    matches!(t, "" | "-" | "∅" | "empty" | "{}")
}

/// Parses `1000,0100,1/2(1000+1211)`. The empty set is `""`, `-`, `∅` or `empty`.
pub fn parse_generators(rs: &RootSystem, text: &str) -> Result<Vec<Generator>> {
    let mut t = text.trim();
    if let Some(inner) = t.strip_prefix('{').and_then(|x| x.strip_suffix('}')) {
        t = inner.trim();
    }
    if is_empty_marker(t) {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&t[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&t[start..]);
    items.into_iter().map(|item| parse_generator(rs, item.trim())).collect()
}

fn parse_generator(rs: &RootSystem, item: &str) -> Result<Generator> {
    let bad = || Error::MalformedGenerator(item.to_string());
    let Some(open) = item.find('(') else {
        return Ok(Generator::Root(rs.parse_root(item)?));
    };
    let body = item[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let k: usize = item[..open].trim().strip_prefix("1/").ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in body.chars() {
        if (c == '+' || c == '-' || c == '−') && !cur.is_empty() {
            terms.push(core::mem::take(&mut cur));
        }
        if c != '+' {
            cur.push(c);
        }
    }
    terms.push(cur);
    let roots = terms.iter().map(|s| rs.parse_root(s.trim())).collect::<Result<Vec<_>>>()?;
    if roots.len() != k || k == 0 {
        return Err(bad());
    }
    Ok(if k == 1 { Generator::Root(roots[0]) } else { Generator::Orbit(roots) })
}

/// One side of a pair: its generators, the subgroup they generate, and, when
/// the generators are positive simple roots, the subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    generators: Vec<Generator>,
    subgroup: ReflectionSubgroup,
    subsystem: Option<Subsystem>,
}

impl Side {
    pub fn new(g: &WeylGroup, generators: Vec<Generator>) -> Result<Side> {
        let rs = g.root_system();
        let mut elems = Vec::new();
        let mut all_roots = true;
        for gen in &generators {
            match gen {
                Generator::Root(r) => elems.push(g.reflection(*r)),
                Generator::Orbit(o) => {
                    all_roots = false;
                    elems.push(orbit_longest(g, o)?);
                }
            }
        }
        let subsystem = if all_roots {
            let roots: Vec<usize> = generators
                .iter()
                .map(|x| match x {
                    Generator::Root(r) => *r,
                    Generator::Orbit(_) => unreachable!(),
                })
                .collect();
            Subsystem::from_simple(rs, &roots).ok().filter(|s| {
                let mut sorted = roots.clone();
                sorted.sort_unstable();
                s.simple() == sorted.as_slice()
            })
        } else {
            None
        };
        let kind = if all_roots { SubgroupKind::WeylSubsystem } else { SubgroupKind::Steinberg };
        let subgroup = generate_subgroup(g, &elems, kind);
        Ok(Side { generators, subgroup, subsystem })
    }

    pub fn parse(g: &WeylGroup, text: &str) -> Result<Side> {
        Side::new(g, parse_generators(g.root_system(), text)?)
    }

    pub fn from_subsystem(g: &WeylGroup, s: &Subsystem) -> Side {
        Side {
            generators: s.simple().iter().map(|&r| Generator::Root(r)).collect(),
            subgroup: s.weyl_subgroup(g),
            subsystem: Some(s.clone()),
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn subgroup(&self) -> &ReflectionSubgroup {
        &self.subgroup
    }

    pub fn subsystem(&self) -> Option<&Subsystem> {
        self.subsystem.as_ref()
    }

    /// Ordered simple roots: sorted by root index (subsystem sides only).
    pub fn ordered_roots(&self) -> Vec<usize> {
        self.subsystem.as_ref().map(|s| s.simple().to_vec()).unwrap_or_default()
    }

    pub fn text(&self, rs: &RootSystem) -> String {
        let parts: Vec<String> = match &self.subsystem {
            Some(s) => s.simple().iter().map(|&r| rs.notation(r)).collect(),
            None => self.generators.iter().map(|x| x.text(rs)).collect(),
        };
        format!("{{{}}}", parts.join(","))
    }
}

/// Rows `J` and columns `J'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub mode: Mode,
    pub rows: Side,
    pub cols: Side,
}

impl Pair {
    /// In subsystem mode both sides must be positive simple systems of
    /// additively closed subsystems.
    pub fn new(g: &WeylGroup, rows: Side, cols: Side, mode: Mode) -> Result<Pair> {
        if mode == Mode::Subsystem {
            let rs = g.root_system();
            for side in [&rows, &cols] {
                for gen in &side.generators {
                    match gen {
                        Generator::Root(r) if !rs.is_positive(*r) => return Err(Error::NotPositive(rs.notation(*r))),
                        Generator::Root(_) => {}
                        Generator::Orbit(_) => {
                            return Err(Error::ModeMismatch("subsystem mode takes roots only".into()))
                        }
                    }
                }
                if side.subsystem.is_none() {
                    let roots: Vec<usize> = side
                        .generators
                        .iter()
                        .filter_map(|x| match x {
                            Generator::Root(r) => Some(*r),
                            Generator::Orbit(_) => None,
                        })
                        .collect();
                    Subsystem::from_simple(rs, &roots)?;
                    return Err(Error::NotASimpleSystem(side.text(rs)));
                }
            }
        }
        Ok(Pair { mode, rows, cols })
    }

    pub fn parse(g: &WeylGroup, rows: &str, cols: &str, mode: Mode) -> Result<Pair> {
        Pair::new(g, Side::parse(g, rows)?, Side::parse(g, cols)?, mode)
    }

    fn psi(&self) -> &Subsystem {
        self.rows.subsystem.as_ref().expect("subsystem mode")
    }

    fn psi_prime(&self) -> &Subsystem {
        self.cols.subsystem.as_ref().expect("subsystem mode")
    }
}

/// Verified usefulness flags with witnesses of failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsefulSystem {
    pub mode: Mode,
    pub intersection_trivial: bool,
    /// Only computed in subsystem mode.
    pub perp_intersection_trivial: Option<bool>,
    pub witness: Option<ElemId>,
    pub perp_witness: Option<ElemId>,
}

impl UsefulSystem {
    pub fn is_useful(&self) -> bool {
        self.intersection_trivial && self.perp_intersection_trivial.unwrap_or(true)
    }
}

// Prefer an involution of sign -1, then the canonically smallest element.
fn pick_witness(g: &WeylGroup, h: &ReflectionSubgroup) -> Option<ElemId> {
    let mut nontrivial: Vec<ElemId> = h.elements().iter().copied().filter(|&x| x != g.identity()).collect();
    nontrivial.sort_by_key(|&x| {
        let odd_involution = g.mul(x, x) == g.identity() && g.sign(x) == -1;
        (!odd_involution, g.canonical_key(x))
    });
    nontrivial.first().copied()
}

pub fn check_useful(g: &WeylGroup, pair: &Pair) -> Result<UsefulSystem> {
    let both = subgroup_intersection(pair.rows.subgroup(), pair.cols.subgroup());
    let witness = pick_witness(g, &both);
    let (perp_trivial, perp_witness) = match pair.mode {
        Mode::Coset => (None, None),
        Mode::Subsystem => {
            let rs = g.root_system();
            if !pair.psi().is_disjoint(pair.psi_prime()) {
                return Err(Error::ContainmentViolated("the column subsystem meets the row subsystem".into()));
            }
            let a = orthogonal_complement(rs, pair.psi()).weyl_subgroup(g);
            let b = orthogonal_complement(rs, pair.psi_prime()).weyl_subgroup(g);
            let perp = subgroup_intersection(&a, &b);
            (Some(perp.is_trivial()), pick_witness(g, &perp))
        }
    };
    Ok(UsefulSystem {
        mode: pair.mode,
        intersection_trivial: both.is_trivial(),
        perp_intersection_trivial: perp_trivial,
        witness,
        perp_witness,
    })
}

/// Diagnostic: `w -> (w J, w J')` as ordered tuples is injective.
pub fn tuple_map_injective(g: &WeylGroup, pair: &Pair) -> bool {
    let mut j = pair.rows.ordered_roots();
    j.extend(pair.cols.ordered_roots());
    let mut seen = BTreeMap::new();
    g.elements().all(|w| {
        let img: Vec<usize> = j.iter().map(|&r| g.apply_root(w, r)).collect();
        seen.insert(img, ()).is_none()
    })
}

/// Index of a tabloid inside its [`TabloidSpace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tabloid(pub u32);

impl Tabloid {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The left cosets of the row subgroup, in canonical representative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabloidSpace {
    mode: Mode,
    subgroup: ReflectionSubgroup,
    cosets: LeftCosets,
}

/// All tabloids of the row side of `pair`.
pub fn tabloids(g: &WeylGroup, rows: &Side, mode: Mode) -> Result<TabloidSpace> {
    let rs = g.root_system();
    if mode == Mode::Subsystem {
        if let Some(&bad) = rows.ordered_roots().iter().find(|&&r| !rs.is_positive(r)) {
            return Err(Error::NotPositive(rs.notation(bad)));
        }
    }
    Ok(TabloidSpace { mode, subgroup: rows.subgroup.clone(), cosets: LeftCosets::new(g, &rows.subgroup) })
}

impl TabloidSpace {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn subgroup(&self) -> &ReflectionSubgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn all(&self) -> impl Iterator<Item = Tabloid> {
        (0..self.len() as u32).map(Tabloid)
    }

    pub fn rep(&self, t: Tabloid) -> ElemId {
        self.cosets.reps()[t.index()]
    }

    /// The tabloid `{w W(J)}`.
    pub fn of(&self, w: ElemId) -> Tabloid {
        Tabloid(self.cosets.coset_of(w) as u32)
    }

    pub fn base(&self) -> Tabloid {
        Tabloid(0)
    }

    /// `w {x W(J)} = {w x W(J)}`.
    pub fn act(&self, g: &WeylGroup, w: ElemId, t: Tabloid) -> Tabloid {
        self.of(g.mul(w, self.rep(t)))
    }

    /// `{d(J);d(J')}` for subsystem pairs, `{w W(J)}` otherwise.
    pub fn describe(&self, g: &WeylGroup, pair: &Pair, t: Tabloid) -> String {
        let rs = g.root_system();
        let d = self.rep(t);
        match self.mode {
            Mode::Subsystem => {
                let side = |s: &Side| {
                    s.ordered_roots().iter().map(|&r| rs.notation(g.apply_root(d, r))).collect::<Vec<_>>().join(",")
                };
                format!("{{{};{}}}", side(&pair.rows), side(&pair.cols))
            }
            Mode::Coset => {
                if d == g.identity() {
                    "{W(J)}".to_string()
                } else {
                    format!("{{{} W(J)}}", g.word_string(d))
                }
            }
        }
    }
}

/// A sparse combination of tabloids; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    field: Field,
    terms: BTreeMap<Tabloid, Scalar>,
}

impl ModuleVector {
    pub fn zero(field: Field) -> Self {
        ModuleVector { field, terms: BTreeMap::new() }
    }

    pub fn tabloid(field: Field, t: Tabloid) -> Self {
        let mut m = ModuleVector::zero(field);
        m.add_term(t, field.one());
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_term(&mut self, t: Tabloid, c: Scalar) {
        let c = c.into_field(self.field).expect("coefficient in the module field");
        let v = match self.terms.remove(&t) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(t, v);
        }
    }

    pub fn coefficient(&self, t: Tabloid) -> Scalar {
        self.terms.get(&t).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (Tabloid, &Scalar)> {
        self.terms.iter().map(|(t, c)| (*t, c))
    }

    pub fn support(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        let mut out = ModuleVector::zero(self.field);
        for (t, x) in self.terms() {
            out.add_term(t, x * c);
        }
        out
    }

    pub fn act(&self, g: &WeylGroup, space: &TabloidSpace, w: ElemId) -> ModuleVector {
        let mut out = ModuleVector::zero(self.field);
        for (t, c) in self.terms() {
            out.add_term(space.act(g, w, t), c.clone());
        }
        out
    }

    pub fn to_dense(&self, len: usize) -> RatVector {
        let mut v = vec![self.field.zero(); len];
        for (t, c) in self.terms() {
            v[t.index()] = c.clone();
        }
        RatVector::new(v)
    }

    pub fn from_dense(field: Field, v: &RatVector) -> ModuleVector {
        let mut m = ModuleVector::zero(field);
        for (i, c) in v.coords().iter().enumerate() {
            if !c.is_zero() {
                m.add_term(Tabloid(i as u32), c.clone());
            }
        }
        m
    }

    pub fn describe(&self, g: &WeylGroup, space: &TabloidSpace, pair: &Pair) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (t, c)) in self.terms().enumerate() {
            let body = space.describe(g, pair, t);
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            s.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(&body);
        }
        s
    }
}

/// The tabloids are orthonormal.
pub fn bilinear_form(a: &ModuleVector, b: &ModuleVector) -> Scalar {
    let mut acc = a.field.zero();
    for (t, x) in a.terms() {
        if let Some(y) = b.terms.get(&t) {
            acc = acc + x * y;
        }
    }
    acc
}

/// `sum over s in H of sign(s) s m`.
pub fn kappa_apply(g: &WeylGroup, space: &TabloidSpace, cols: &ReflectionSubgroup, m: &ModuleVector) -> ModuleVector {
    let mut out = ModuleVector::zero(m.field);
    for &s in cols.elements() {
        let sign = m.field.from_i64(g.sign(s));
        for (t, c) in m.terms() {
            out.add_term(space.act(g, s, t), c * &sign);
        }
    }
    out
}

/// `kappa_{J'}` applied to a single tabloid.
pub fn polytabloid(g: &WeylGroup, space: &TabloidSpace, cols: &ReflectionSubgroup, base: Tabloid, field: Field) -> ModuleVector {
    kappa_apply(g, space, cols, &ModuleVector::tabloid(field, base))
}

/// Outcome of the good-system test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodReport {
    pub good: bool,
    /// Number of tabloids the condition constrained.
    pub constrained: usize,
    /// Representatives where the condition failed.
    pub failures: Vec<ElemId>,
}

/// Subsystem mode: every `d` with `d Psi` disjoint from `Psi'` must have
/// `{dJ}` in `e`. Coset mode: every coset with nonzero `kappa{wW(J)}` must appear in `e`.
pub fn check_good(g: &WeylGroup, pair: &Pair, field: Field) -> Result<GoodReport> {
    if !check_useful(g, pair)?.is_useful() {
        return Err(Error::NotUseful);
    }
    let space = tabloids(g, &pair.rows, pair.mode)?;
    let cols = pair.cols.subgroup();
    let e = polytabloid(g, &space, cols, space.base(), field);
    let mut constrained = 0;
    let mut failures = Vec::new();
    for t in space.all() {
        let d = space.rep(t);
        let needed = match pair.mode {
            Mode::Subsystem => {
                let img = pair.psi().image_roots(g, d);
                img.iter().all(|&r| !pair.psi_prime().contains(r))
            }
            Mode::Coset => !polytabloid(g, &space, cols, t, field).is_zero(),
        };
        if needed {
            constrained += 1;
            if e.coefficient(t).is_zero() {
                failures.push(d);
            }
        }
    }
    Ok(GoodReport { good: failures.is_empty(), constrained, failures })
}

/// Per distinguished representative: does `{dJ}` appear in `e`, does `d`
/// factor through `W(J') W(J)`, and is `d Psi` disjoint from `Psi'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppearanceRow {
    pub rep: ElemId,
    pub coefficient: Scalar,
    pub factorizes: bool,
    pub disjoint: bool,
}

pub fn appearance_table(g: &WeylGroup, pair: &Pair) -> Result<Vec<AppearanceRow>> {
    let space = tabloids(g, &pair.rows, pair.mode)?;
    let rows = pair.rows.subgroup();
    let cols = pair.cols.subgroup();
    let e = polytabloid(g, &space, cols, space.base(), Field::Rational);
    Ok(space
        .all()
        .map(|t| {
            let d = space.rep(t);
            let factorizes = cols.elements().iter().any(|&s| rows.contains(g.mul(g.inverse(s), d)));
            let disjoint = match pair.mode {
                Mode::Subsystem => pair.psi().image_roots(g, d).iter().all(|&r| !pair.psi_prime().contains(r)),
                Mode::Coset => true,
            };
            AppearanceRow { rep: d, coefficient: e.coefficient(t), factorizes, disjoint }
        })
        .collect())
}

/// A generalized Specht module with a reduced basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpechtModule {
    field: Field,
    space: TabloidSpace,
    cols: ReflectionSubgroup,
    polytabloid: ModuleVector,
    spanning_reps: Vec<ElemId>,
    spanning: Vec<ModuleVector>,
    basis: Vec<ModuleVector>,
    pivots: Vec<usize>,
}

/// Builds `S^{J,J'}` for a useful pair.
pub fn specht_module(g: &WeylGroup, pair: &Pair, field: Field) -> Result<SpechtModule> {
    if !check_useful(g, pair)?.is_useful() {
        return Err(Error::NotUseful);
    }
    let space = tabloids(g, &pair.rows, pair.mode)?;
    Ok(SpechtModule::from_parts(g, space, pair.cols.subgroup().clone(), field))
}

impl SpechtModule {
    /// The span of `w e` for `w` over coset representatives of the column group.
    pub fn from_parts(g: &WeylGroup, space: TabloidSpace, cols: ReflectionSubgroup, field: Field) -> SpechtModule {
        let e = polytabloid(g, &space, &cols, space.base(), field);
        let spanning_reps = LeftCosets::new(g, &cols).reps().to_vec();
        let spanning: Vec<ModuleVector> = spanning_reps.iter().map(|&w| e.act(g, &space, w)).collect();
        let n = space.len();
        let (basis, pivots) = if e.is_zero() {
            (Vec::new(), Vec::new())
        } else {
            let m = RatMatrix::from_rows(n, spanning.iter().map(|v| v.to_dense(n)).collect()).expect("rectangular");
            let ech = row_echelon(&m);
            let basis = (0..ech.rank).map(|r| ModuleVector::from_dense(field, &ech.matrix.row(r))).collect();
            (basis, ech.pivots)
        };
        SpechtModule { field, space, cols, polytabloid: e, spanning_reps, spanning, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &TabloidSpace {
        &self.space
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `e_{J,J'}`.
    pub fn polytabloid(&self) -> &ModuleVector {
        &self.polytabloid
    }

    pub fn spanning(&self) -> &[ModuleVector] {
        &self.spanning
    }

    pub fn spanning_reps(&self) -> &[ElemId] {
        &self.spanning_reps
    }

    /// Reduced row-echelon basis.
    pub fn basis(&self) -> &[ModuleVector] {
        &self.basis
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the module.
    pub fn coordinates(&self, v: &ModuleVector) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v.coefficient(Tabloid(p as u32))).collect();
        let mut rest = v.clone();
        for (b, c) in self.basis.iter().zip(&coords) {
            rest = rest.add(&b.scale(&-c));
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.coordinates(v).is_some()
    }

    /// Matrix of `w` on the echelon basis; column `i` holds the image of basis vector `i`.
    pub fn action_matrix(&self, g: &WeylGroup, w: ElemId) -> Result<RatMatrix> {
        action_matrix_in(g, &self.space, &self.basis, w)
    }

    /// Traces over the module's own field.
    pub fn traces(&self, g: &WeylGroup, reps: &[ElemId]) -> Result<Vec<Scalar>> {
        reps.iter()
            .map(|&w| {
                let mut acc = self.field.zero();
                for (i, b) in self.basis.iter().enumerate() {
                    let c = self.coordinates(&b.act(g, &self.space, w)).ok_or(Error::SpanNotPreserved)?;
                    acc = acc + &c[i];
                }
                Ok(acc)
            })
            .collect()
    }

    /// The same module over the rationals.
    pub fn over_rationals(&self, g: &WeylGroup) -> SpechtModule {
        if self.field == Field::Rational {
            self.clone()
        } else {
            SpechtModule::from_parts(g, self.space.clone(), self.cols.clone(), Field::Rational)
        }
    }

    /// Character values at `reps`, always computed over the rationals.
    pub fn character(&self, g: &WeylGroup, reps: &[ElemId]) -> Result<Vec<Scalar>> {
        self.over_rationals(g).traces(g, reps)
    }

    pub fn gram_matrix(&self) -> RatMatrix {
        let n = self.basis.len();
        let mut m = RatMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, bilinear_form(&self.basis[i], &self.basis[j]));
            }
        }
        m
    }

    /// `S cap S^perp` and `dim S - dim(S cap S^perp)`.
    pub fn radical_and_quotient(&self) -> (Vec<ModuleVector>, usize) {
        if self.basis.is_empty() {
            return (Vec::new(), 0);
        }
        let radical: Vec<ModuleVector> = kernel(&self.gram_matrix())
            .iter()
            .map(|k| {
                let mut v = ModuleVector::zero(self.field);
                for (b, c) in self.basis.iter().zip(k.coords()) {
                    v = v.add(&b.scale(c));
                }
                v
            })
            .collect();
        let q = self.basis.len() - radical.len();
        (radical, q)
    }
}

/// Matrix of `w` in an arbitrary basis of an invariant subspace.
pub fn action_matrix_in(g: &WeylGroup, space: &TabloidSpace, basis: &[ModuleVector], w: ElemId) -> Result<RatMatrix> {
    let n = basis.len();
    let field = basis.first().map_or(Field::Rational, ModuleVector::field);
    let dense: Vec<RatVector> = basis.iter().map(|b| b.to_dense(space.len())).collect();
    let mut m = RatMatrix::zeros(field, n, n);
    for (i, b) in basis.iter().enumerate() {
        let img = b.act(g, space, w).to_dense(space.len());
        let c = solve_in_basis(&dense, &img).ok_or(Error::SpanNotPreserved)?;
        for (k, x) in c.into_iter().enumerate() {
            m.set(k, i, x);
        }
    }
    Ok(m)
}

/// Characters of both members of a Specht series step and their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesQuotient {
    pub larger_module: Vec<Scalar>,
    pub submodule: Vec<Scalar>,
    pub quotient: Vec<Scalar>,
    pub larger_dimension: usize,
    pub submodule_dimension: usize,
    pub submodule_contained: bool,
}

/// `S^{J,J2'}` sits inside `S^{J,J1'}` when the group of `J1'` lies in that of
/// `J2'`. Returns the character of `S^{J,J1'} / S^{J,J2'}`.
pub fn specht_series_quotient(g: &WeylGroup, rows: &Side, smaller: &Side, larger: &Side, mode: Mode, reps: &[ElemId]) -> Result<SeriesQuotient> {
    let contained = match mode {
        Mode::Subsystem => match (smaller.subsystem(), larger.subsystem()) {
            (Some(a), Some(b)) => a.is_subset(b),
            _ => return Err(Error::ModeMismatch("subsystem mode takes roots only".into())),
        },
        Mode::Coset => smaller.subgroup().is_subgroup_of(larger.subgroup()),
    };
    if !contained {
        return Err(Error::ContainmentViolated("the first column set must lie in the second".into()));
    }
    let p1 = Pair::new(g, rows.clone(), smaller.clone(), mode)?;
    let p2 = Pair::new(g, rows.clone(), larger.clone(), mode)?;
    let big = specht_module(g, &p1, Field::Rational)?;
    let sub = specht_module(g, &p2, Field::Rational)?;
    let submodule_contained = sub.basis().iter().all(|b| big.contains(b));
    let a = big.character(g, reps)?;
    let b = sub.character(g, reps)?;
    let quotient = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    Ok(SeriesQuotient {
        larger_module: a,
        submodule: b,
        quotient,
        larger_dimension: big.dimension(),
        submodule_dimension: sub.dimension(),
        submodule_contained,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_system;
    use crate::weyl::enumerate_group;

    fn group(s: &str) -> WeylGroup {
        enumerate_group(build_root_system(s.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn example_a3_tabloids() {
        let g = group("A3");
        let pair = Pair::parse(&g, "100,001", "110,011", Mode::Subsystem).unwrap();
        let u = check_useful(&g, &pair).unwrap();
        assert!(u.is_useful());
        let space = tabloids(&g, &pair.rows, Mode::Subsystem).unwrap();
        assert_eq!(space.len(), 6);
        let want = [
            ("e", "{100,001;110,011}"),
            ("t2", "{110,011;100,001}"),
            ("t1 t2", "{010,111;-100,001}"),
            ("t3 t2", "{111,010;100,-001}"),
            ("t1 t3 t2", "{011,110;-100,-001}"),
            ("t2 t1 t3 t2", "{001,100;-110,-011}"),
        ];
        for (w, text) in want {
            let t = space.of(g.parse_word(w).unwrap());
            assert_eq!(space.rep(t), g.parse_word(w).unwrap());
            assert_eq!(space.describe(&g, &pair, t), text);
        }
        assert!(tuple_map_injective(&g, &pair));
    }

    #[test]
    fn example_b3_is_not_useful() {
        let g = group("B3");
        let pair = Pair::parse(&g, "100,122,001", "010,111,012", Mode::Subsystem).unwrap();
        let u = check_useful(&g, &pair).unwrap();
        assert!(!u.intersection_trivial);
        let w = u.witness.unwrap();
        assert_eq!(w, g.parse_word("t3 t2 t3 t1 t2 t3 t1 t2 t1").unwrap());
        assert_eq!(g.sign(w), -1);
        assert_eq!(g.mul(w, w), g.identity());
        let space = tabloids(&g, &pair.rows, Mode::Subsystem).unwrap();
        assert!(polytabloid(&g, &space, pair.cols.subgroup(), space.base(), Field::Rational).is_zero());
        assert!(matches!(specht_module(&g, &pair, Field::Rational), Err(Error::NotUseful)));
    }

    #[test]
    fn example_d4_polytabloid() {
        let g = group("D4");
        let pair = Pair::parse(&g, "1000,0100,0010", "1101,0111", Mode::Subsystem).unwrap();
        let s = specht_module(&g, &pair, Field::Rational).unwrap();
        let e = s.polytabloid();
        let space = s.space();
        let tab = |w: &str| space.of(g.parse_word(w).unwrap());
        let mut want = ModuleVector::zero(Field::Rational);
        want.add_term(tab("e"), Scalar::from_i64(1));
        want.add_term(tab("t1 t2 t4"), Scalar::from_i64(-1));
        want.add_term(tab("t3 t2 t4"), Scalar::from_i64(-1));
        want.add_term(tab("t4 t2 t1 t3 t2 t4"), Scalar::from_i64(1));
        assert_eq!(e, &want);
        assert_eq!(s.dimension(), 3);
        assert!(check_good(&g, &pair, Field::Rational).unwrap().good);
        let t2 = g.simple_reflection(1);
        let basis: Vec<ModuleVector> =
            ["e", "t4", "t2 t4"].iter().map(|w| e.act(&g, space, g.parse_word(w).unwrap())).collect();
        let m = action_matrix_in(&g, space, &basis, t2).unwrap();
        let want = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).unwrap();
        assert_eq!(m, want);
        assert_eq!(s.character(&g, &[t2]).unwrap(), vec![Scalar::from_i64(1)]);
    }

    #[test]
    fn generator_parsing() {
        let g = group("D4");
        let rs = g.root_system();
        let gens = parse_generators(rs, "0100,0001,1/2(1000+1211)").unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[2], Generator::Orbit(vec![0, 11]));
        assert_eq!(gens[2].text(rs), "1/2(1000+1211)");
        assert!(parse_generators(rs, "∅").unwrap().is_empty());
        assert!(parse_generators(rs, "{}").unwrap().is_empty());
        assert!(parse_generators(rs, "1/3(1000+0010)").is_err());
        let side = Side::parse(&g, "0100,0001,1/2(1000+1211)").unwrap();
        assert_eq!(side.subgroup().order(), 48);
        let neg = Side::parse(&g, "0100,0001,1/2(1000-1211)").unwrap();
        assert_eq!(neg.subgroup(), side.subgroup());
    }

    #[test]
    fn subsystem_mode_rejects_bad_input() {
        let g = group("D4");
        assert!(matches!(Pair::parse(&g, "-1000", "", Mode::Subsystem), Err(Error::NotPositive(_))));
        assert!(matches!(Pair::parse(&g, "1000,1100", "", Mode::Subsystem), Err(Error::NotASimpleSystem(_))));
        let p = Pair::parse(&g, "1000", "1000", Mode::Subsystem).unwrap();
        assert!(matches!(check_useful(&g, &p), Err(Error::ContainmentViolated(_))));
        assert!(Pair::parse(&g, "1/2(1000+0010)", "", Mode::Subsystem).is_err());
    }

    #[test]
    fn trivial_columns_give_the_permutation_module() {
        let g = group("A3");
        // Not useful as a subsystem pair: the orthogonal complements share 001.
        let sub = Pair::parse(&g, "100", "", Mode::Subsystem).unwrap();
        assert_eq!(check_useful(&g, &sub).unwrap().perp_intersection_trivial, Some(false));
        let pair = Pair::parse(&g, "100", "", Mode::Coset).unwrap();
        let s = specht_module(&g, &pair, Field::Rational).unwrap();
        assert_eq!(s.dimension(), 12);
        assert_eq!(s.polytabloid(), &ModuleVector::tabloid(Field::Rational, Tabloid(0)));
    }

    #[test]
    fn radicals() {
        let g = group("D4");
        let pair = Pair::parse(&g, "1000,0100,0010", "1101,0111", Mode::Subsystem).unwrap();
        let s = specht_module(&g, &pair, Field::Rational).unwrap();
        let (rad, q) = s.radical_and_quotient();
        assert!(rad.is_empty());
        assert_eq!(q, 3);
        for p in [2u32, 3, 5, 7] {
            let sp = specht_module(&g, &pair, Field::Prime(p)).unwrap();
            let (rad, q) = sp.radical_and_quotient();
            let gram_rank = crate::exact::rank(&sp.gram_matrix());
            assert_eq!(q, gram_rank);
            assert_eq!(rad.len() + q, sp.dimension());
        }
    }

    #[test]
    fn series_quotient_needs_containment() {
        let g = group("D4");
        let rows = Side::parse(&g, "1000,0100,0010").unwrap();
        let a = Side::parse(&g, "1101").unwrap();
        let b = Side::parse(&g, "1101,0111").unwrap();
        let id = [g.identity()];
        let q = specht_series_quotient(&g, &rows, &a, &b, Mode::Subsystem, &id).unwrap();
        assert_eq!((q.larger_dimension, q.submodule_dimension), (7, 3));
        assert!(q.submodule_contained);
        assert!(matches!(specht_series_quotient(&g, &rows, &b, &a, Mode::Subsystem, &id), Err(Error::ContainmentViolated(_))));
        let same = specht_series_quotient(&g, &rows, &b, &b, Mode::Subsystem, &id).unwrap();
        assert!(same.quotient.iter().all(Scalar::is_zero));
    }
}

//! Subsystems, the extended-diagram enumeration, and simply-laced foldings.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exact::{inner_product, rank, solve_in_basis, Field, RatMatrix, RatVector, Scalar};
use crate::roots::{classify_diagram, dual_system, reflect, CartanLabel, DiagramType, RootSystem};
use crate::weyl::{enumerate_group, generate_subgroup, ElemId, ReflectionSubgroup, SubgroupKind, WeylGroup};

/// Roots of the reflection closure of `simple`, each with its coordinates
/// over `simple`. The simple roots come first, in order.
pub fn closure_with_coords(rs: &RootSystem, simple: &[usize]) -> Vec<(usize, Vec<i64>)> {
    let n = simple.len();
    // a[k][i] = <c_k, c_i^vee>
    let a: Vec<Vec<i64>> = simple
        .iter()
        .map(|&ck| simple.iter().map(|&ci| 2 * rs.scaled_inner(ck, ci) / rs.scaled_inner(ci, ci)).collect())
        .collect();
    let mut out: Vec<(usize, Vec<i64>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, &c) in simple.iter().enumerate() {
        if seen.insert(c) {
            let mut e = vec![0; n];
            e[i] = 1;
            out.push((c, e));
        }
    }
    let mut k = 0;
    while k < out.len() {
        for (i, &ci) in simple.iter().enumerate() {
            let (r, ref b) = out[k];
            let p: i64 = (0..n).map(|m| b[m] * a[m][i]).sum();
            let img = rs.reflect_index(ci, r);
            if seen.insert(img) {
                let mut nb = b.clone();
                nb[i] -= p;
                out.push((img, nb));
            }
        }
        k += 1;
    }
    out
}

/// Sorted root indices of the reflection closure of `simple`.
pub fn closure(rs: &RootSystem, simple: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = closure_with_coords(rs, simple).into_iter().map(|(r, _)| r).collect();
    v.sort_unstable();
    v
}

/// `a, b in S and a + b a root imply a + b in S`.
pub fn is_additively_closed(rs: &RootSystem, roots: &[usize]) -> bool {
    let set: BTreeSet<usize> = roots.iter().copied().collect();
    roots.iter().all(|&a| {
        roots.iter().all(|&b| match rs.sum_index(a, b) {
            Some(s) => set.contains(&s),
            None => true,
        })
    })
}

fn check_simple_system(rs: &RootSystem, j: &[usize]) -> Result<()> {
    for (x, &a) in j.iter().enumerate() {
        for &b in &j[x + 1..] {
            if a == b || rs.scaled_inner(a, b) > 0 {
                return Err(Error::NotASimpleSystem(format!("{} and {}", rs.notation(a), rs.notation(b))));
            }
        }
    }
    if !j.is_empty() {
        let m = RatMatrix::from_rows(rs.ambient_dim(), j.iter().map(|&r| rs.root(r).vector.clone()).collect())?;
        if rank(&m) < j.len() {
            return Err(Error::NotASimpleSystem("roots are dependent".into()));
        }
    }
    Ok(())
}

/// The simple system of `roots` lying in the positive roots: positive roots
/// of the set that are not a sum of two of its positive roots.
pub fn simple_system_in_positive(rs: &RootSystem, roots: &[usize]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = roots.iter().copied().collect();
    if roots.iter().any(|&r| !set.contains(&rs.negate(r))) || !is_additively_closed(rs, roots) {
        return Err(Error::NotAdditivelyClosed);
    }
    let pos: Vec<usize> = set.iter().copied().filter(|&r| rs.is_positive(r)).collect();
    let mut sums = BTreeSet::new();
    for &a in &pos {
        for &b in &pos {
            if let Some(s) = rs.sum_index(a, b) {
                sums.insert(s);
            }
        }
    }
    let j: Vec<usize> = pos.into_iter().filter(|r| !sums.contains(r)).collect();
    debug_assert_eq!(closure(rs, &j), set.iter().copied().collect::<Vec<_>>());
    Ok(j)
}

/// An additively closed subsystem with its positive simple system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    roots: Vec<usize>,
    simple: Vec<usize>,
    components: Vec<(CartanLabel, Vec<usize>)>,
    label: DiagramType,
    name: String,
}

impl Subsystem {
    /// The subsystem generated by a simple system `j`.
    pub fn from_simple(rs: &RootSystem, j: &[usize]) -> Result<Subsystem> {
        check_simple_system(rs, j)?;
        let roots = closure(rs, j);
        Subsystem::from_roots(rs, &roots)
    }

    pub fn from_roots(rs: &RootSystem, roots: &[usize]) -> Result<Subsystem> {
        let mut roots = roots.to_vec();
        roots.sort_unstable();
        roots.dedup();
        let simple = simple_system_in_positive(rs, &roots)?;
        let d = rs.diagram_of(&simple)?;
        let mut components = Vec::new();
        for comp in d.components() {
            let label = classify_diagram(&d.induced(&comp))?[0];
            components.push((label, comp.iter().map(|&i| simple[i]).collect()));
        }
        let label = DiagramType::new(components.iter().map(|c| c.0).collect());
        let name = label.to_string();
        Ok(Subsystem { roots, simple, components, label, name })
    }

    pub fn empty() -> Subsystem {
        Subsystem {
            roots: Vec::new(),
            simple: Vec::new(),
            components: Vec::new(),
            label: DiagramType::default(),
            name: "∅".into(),
        }
    }

    /// Sorted root indices.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Positive simple roots, sorted by root index.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn components(&self) -> &[(CartanLabel, Vec<usize>)] {
        &self.components
    }

    pub fn label(&self) -> &DiagramType {
        &self.label
    }

    /// Display name, with primes separating non-conjugate copies of one type.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.roots.binary_search(&r).is_ok()
    }

    pub fn is_disjoint(&self, other: &Subsystem) -> bool {
        self.roots.iter().all(|&r| !other.contains(r))
    }

    pub fn is_subset(&self, other: &Subsystem) -> bool {
        self.roots.iter().all(|&r| other.contains(r))
    }

    pub fn weyl_subgroup(&self, g: &WeylGroup) -> ReflectionSubgroup {
        g.reflection_subgroup(&self.simple, SubgroupKind::WeylSubsystem)
    }

    /// Sorted root indices of `w` applied to this subsystem.
    pub fn image_roots(&self, g: &WeylGroup, w: ElemId) -> Vec<usize> {
        let mut v: Vec<usize> = self.roots.iter().map(|&r| g.apply_root(w, r)).collect();
        v.sort_unstable();
        v
    }

    /// `w` applied to this subsystem.
    pub fn transport(&self, g: &WeylGroup, w: ElemId) -> Subsystem {
        let mut s = Subsystem::from_roots(g.root_system(), &self.image_roots(g, w)).expect("images are subsystems");
        s.name = self.name.clone();
        s
    }

    /// `{a1a2..., ...}` rendering of the simple system.
    pub fn simple_text(&self, rs: &RootSystem) -> String {
        let parts: Vec<String> = self.simple.iter().map(|&r| rs.notation(r)).collect();
        format!("{{{}}}", parts.join(","))
    }

    fn canonical_key(&self, g: &WeylGroup) -> Vec<usize> {
        g.elements().map(|w| self.image_roots(g, w)).min().unwrap_or_default()
    }
}

/// The largest subsystem orthogonal to `psi`.
pub fn orthogonal_complement(rs: &RootSystem, psi: &Subsystem) -> Subsystem {
    let roots: Vec<usize> = (0..rs.len())
        .filter(|&a| psi.simple.iter().all(|&b| rs.is_orthogonal(a, b)))
        .collect();
    Subsystem::from_roots(rs, &roots).expect("orthogonal complements are closed")
}

/// Subsystems up to conjugacy, by iterated deletion of nodes from ordinary and
/// extended diagrams.
///
/// Each class is represented by the conjugate whose positive simple system
/// has the least total height, ties broken lexicographically.
/// Listed as in the usual tables: proper nonempty subsystems by decreasing
/// size, then rank, then simple system; the full system; the empty one.
/// Copies of one type get primes in that order.
pub fn enumerate_subsystems(g: &WeylGroup) -> Result<Vec<Subsystem>> {
    let rs = g.root_system();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut queue: Vec<Vec<usize>> = vec![rs.simple_indices().collect()];
    while let Some(s) = queue.pop() {
        let roots = closure(rs, &s);
        if !seen.insert(roots.clone()) {
            continue;
        }
        let sub = Subsystem::from_roots(rs, &roots)?;
        classes.entry(sub.canonical_key(g)).or_insert(roots);
        for k in 0..s.len() {
            let mut t = s.clone();
            t.remove(k);
            queue.push(t);
        }
        let d = rs.diagram_of(&s)?;
        for comp in d.components() {
            let members: Vec<usize> = comp.iter().map(|&i| s[i]).collect();
            let top = closure_with_coords(rs, &members)
                .into_iter()
                .filter(|(_, c)| c.iter().all(|&x| x >= 0))
                .max_by_key(|(_, c)| c.iter().sum::<i64>())
                .map(|(r, _)| r)
                .expect("nonempty component");
            for &drop in &members {
                let mut t: Vec<usize> = s.iter().copied().filter(|&x| x != drop).collect();
                t.push(rs.negate(top));
                queue.push(t);
            }
        }
    }
    let mut out = Vec::new();
    for roots in classes.values() {
        let base = Subsystem::from_roots(rs, roots)?;
        let mut best: Option<(i64, Vec<usize>)> = None;
        let mut images = BTreeSet::new();
        for w in g.elements() {
            let img = base.image_roots(g, w);
            if images.insert(img.clone()) {
                let j = simple_system_in_positive(rs, &img)?;
                let key = (j.iter().map(|&r| rs.root(r).height()).sum::<i64>(), j);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        out.push(Subsystem::from_simple(rs, &best.map(|b| b.1).unwrap_or_default())?);
    }
    let full = rs.len();
    let tier = |s: &Subsystem| match s.len() {
        0 => 2,
        n if n == full => 1,
        _ => 0,
    };
    out.sort_by(|a, b| {
        tier(a)
            .cmp(&tier(b))
            .then(b.len().cmp(&a.len()))
            .then(b.rank().cmp(&a.rank()))
            .then(a.simple.cmp(&b.simple))
    });
    assign_primes(out.iter_mut().map(|s| (s.label.to_string(), &mut s.name)));
    Ok(out)
}

const MAX_PRIMES: usize = 3;

fn assign_primes<'a>(items: impl Iterator<Item = (String, &'a mut String)>) {
    let mut count: BTreeMap<String, usize> = BTreeMap::new();
    for (label, name) in items {
        let k = count.entry(label.clone()).or_insert(0);
        *name = if *k <= MAX_PRIMES { format!("{label}{}", "'".repeat(*k)) } else { format!("{label}[{k}]") };
        *k += 1;
    }
}

/// Node permutations of a diagram preserving bonds and node lengths, identity first.
pub fn diagram_symmetries(d: &crate::roots::DynkinDiagram) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let ok = (0..n).all(|i| d.nodes[p[i]].norm == d.nodes[i].norm)
            && (0..n).all(|i| (i + 1..n).all(|j| d.bond(i, j) == d.bond(p[i], p[j])));
        if ok {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// A folding of a simple system by a diagram symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergDatum {
    /// The simple system being folded (root indices).
    pub source: Vec<usize>,
    /// The symmetry, as a permutation of positions in `source`.
    pub symmetry: Vec<usize>,
    /// Orbits of positions, each sorted, ordered by smallest position.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit averages, one per orbit.
    pub projected: Vec<RatVector>,
    /// Longest element of the reflection group of each orbit.
    pub orbit_longest: Vec<ElemId>,
    /// The group generated by `orbit_longest`.
    pub subgroup: ReflectionSubgroup,
}

/// Longest element of the reflection group generated by `orbit`, which must
/// be a simple system: the element sending each of its positive roots negative.
pub fn orbit_longest(g: &WeylGroup, orbit: &[usize]) -> Result<ElemId> {
    let rs = g.root_system();
    check_simple_system(rs, orbit)?;
    let positive: Vec<usize> = closure_with_coords(rs, orbit)
        .into_iter()
        .filter(|(_, c)| c.iter().all(|&x| x >= 0))
        .map(|(r, _)| r)
        .collect();
    let negative: BTreeSet<usize> = positive.iter().map(|&r| rs.negate(r)).collect();
    let h = g.reflection_subgroup(orbit, SubgroupKind::WeylSubsystem);
    h.elements()
        .iter()
        .copied()
        .find(|&w| positive.iter().all(|&r| negative.contains(&g.apply_root(w, r))))
        .ok_or_else(|| Error::NotASimpleSystem("no longest element".into()))
}

fn average(vs: &[&RatVector]) -> RatVector {
    let mut acc = RatVector::zero(Field::Rational, vs[0].dim());
    for v in vs {
        acc = acc.add(v).expect("same dimension");
    }
    acc.scale(&Scalar::from_ratio(1, vs.len() as i64))
}

/// Folds `source` by `symmetry`. Every orbit that is not a single node must
/// sit in a simply-laced component.
pub fn steinberg_fold(g: &WeylGroup, source: &[usize], symmetry: &[usize]) -> Result<SteinbergDatum> {
    let rs = g.root_system();
    check_simple_system(rs, source)?;
    let d = rs.diagram_of(source)?;
    if symmetry.len() != source.len() || !diagram_symmetries(&d).iter().any(|p| p == symmetry) {
        return Err(Error::NotASymmetry);
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; source.len()];
    for s in 0..source.len() {
        if done[s] {
            continue;
        }
        let mut orbit = vec![s];
        done[s] = true;
        let mut x = symmetry[s];
        while x != s {
            orbit.push(x);
            done[x] = true;
            x = symmetry[x];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let comps = d.components();
    for orbit in orbits.iter().filter(|o| o.len() > 1) {
        for comp in comps.iter().filter(|c| orbit.iter().any(|x| c.contains(x))) {
            let laced = d.edges.iter().filter(|e| comp.contains(&e.a)).all(|e| e.bond == 1)
                && comp.iter().all(|&i| d.nodes[i].norm == d.nodes[comp[0]].norm);
            if !laced {
                return Err(Error::NotSimplyLaced);
            }
        }
    }
    let projected = orbits
        .iter()
        .map(|o| average(&o.iter().map(|&i| &rs.root(source[i]).vector).collect::<Vec<_>>()))
        .collect();
    let orbit_longest = orbits
        .iter()
        .map(|o| orbit_longest(g, &o.iter().map(|&i| source[i]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let subgroup = generate_subgroup(g, &orbit_longest, SubgroupKind::Steinberg);
    Ok(SteinbergDatum { source: source.to_vec(), symmetry: symmetry.to_vec(), orbits, projected, orbit_longest, subgroup })
}

/// Outcome of checking the five folding properties literally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergReport {
    pub projected_roots: usize,
    pub spans: bool,
    pub sign_coherent: bool,
    pub rays_form_basis: bool,
    pub reflections_realized: bool,
    pub reflections_permute_rays: bool,
}

impl SteinbergReport {
    pub fn all_hold(&self) -> bool {
        self.spans && self.sign_coherent && self.rays_form_basis && self.reflections_realized && self.reflections_permute_rays
    }
}

fn positive_multiple(a: &RatVector, b: &RatVector) -> bool {
    match solve_in_basis(core::slice::from_ref(b), a) {
        Some(c) => c[0].is_positive(),
        None => false,
    }
}

impl SteinbergDatum {
    /// Orbit average over the powers of the symmetry of each root generated
    /// by the source, deduplicated.
    pub fn projected_roots(&self, rs: &RootSystem) -> Vec<RatVector> {
        let n = self.source.len();
        let mut order = 1;
        let mut p: Vec<usize> = self.symmetry.clone();
        while p.iter().enumerate().any(|(i, &x)| i != x) {
            p = p.iter().map(|&x| self.symmetry[x]).collect();
            order += 1;
        }
        let mut out: Vec<RatVector> = Vec::new();
        for (_, c) in closure_with_coords(rs, &self.source) {
            let mut acc = RatVector::zero(Field::Rational, rs.ambient_dim());
            let mut power: Vec<usize> = (0..n).collect();
            for _ in 0..order {
                for i in 0..n {
                    if c[i] != 0 {
                        let v = rs.root(self.source[power[i]]).vector.scale(&Scalar::from_i64(c[i]));
                        acc = acc.add(&v).expect("same dimension");
                    }
                }
                power = power.iter().map(|&x| self.symmetry[x]).collect();
            }
            let v = acc.scale(&Scalar::from_ratio(1, order as i64));
            if !v.is_zero() && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn check_properties(&self, g: &WeylGroup) -> SteinbergReport {
        let rs = g.root_system();
        let phi1 = self.projected_roots(rs);
        let pi1 = &self.projected;
        let dim1 = pi1.len();
        let span_rank = |vs: &[RatVector]| {
            if vs.is_empty() {
                0
            } else {
                rank(&RatMatrix::from_rows(rs.ambient_dim(), vs.to_vec()).expect("same dimension"))
            }
        };
        let mut with_pi = phi1.clone();
        with_pi.extend(pi1.iter().cloned());
        let spans = span_rank(&phi1) == dim1 && span_rank(&with_pi) == dim1;
        let sign_coherent = phi1.iter().all(|v| match solve_in_basis(pi1, v) {
            Some(c) => c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()),
            None => false,
        });
        let mut rays: Vec<RatVector> = Vec::new();
        for v in pi1 {
            if !rays.iter().any(|r| positive_multiple(v, r)) {
                rays.push(v.clone());
            }
        }
        let rays_form_basis = rays.len() == dim1 && span_rank(&rays) == dim1;
        let reflections_realized = phi1.iter().all(|r| {
            self.subgroup.elements().iter().any(|&w| {
                pi1.iter().all(|v| g.apply_vector(w, v) == reflect(r, v).expect("nonzero"))
            })
        });
        let reflections_permute_rays = phi1.iter().all(|a| {
            phi1.iter().all(|b| {
                let img = reflect(a, b).expect("nonzero");
                phi1.iter().any(|c| positive_multiple(&img, c))
            })
        });
        SteinbergReport {
            projected_roots: phi1.len(),
            spans,
            sign_coherent,
            rays_form_basis,
            reflections_realized,
            reflections_permute_rays,
        }
    }

    /// `{0100, 1/3(1000+0010+0001)}` style text of the projected simple system.
    pub fn projected_text(&self, rs: &RootSystem) -> Vec<String> {
        self.orbits
            .iter()
            .map(|o| orbit_text(&o.iter().map(|&i| rs.vector_notation(&rs.root(self.source[i]).vector)).collect::<Vec<_>>()))
            .collect()
    }
}

fn orbit_text(parts: &[String]) -> String {
    if parts.len() == 1 {
        return parts[0].clone();
    }
    let mut s = format!("1/{}(", parts.len());
    for (i, p) in parts.iter().enumerate() {
        if i > 0 && !p.starts_with('-') {
            s.push('+');
        }
        s.push_str(p);
    }
    s.push(')');
    s
}

/// How an extended entry arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtendedKind {
    Weyl,
    Dual,
    Steinberg,
}

impl fmt::Display for ExtendedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtendedKind::Weyl => "weyl",
            ExtendedKind::Dual => "dual",
            ExtendedKind::Steinberg => "steinberg",
        })
    }
}

/// One reflection subgroup found by the extended enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSubsystem {
    pub kind: ExtendedKind,
    pub label: DiagramType,
    pub name: String,
    pub generators: Vec<String>,
    pub subgroup: ReflectionSubgroup,
    pub depth: usize,
}

/// Deepest level whose subsystems are still expanded.
pub const MAX_FOLD_DEPTH: usize = 3;

struct Level {
    group: WeylGroup,
    embed: Vec<ElemId>,
    depth: usize,
}

struct Collector<'a> {
    ambient: &'a WeylGroup,
    keys: BTreeSet<Vec<u32>>,
    out: Vec<ExtendedSubsystem>,
}

impl Collector<'_> {
    fn offer(&mut self, kind: ExtendedKind, label: DiagramType, generators: Vec<String>, gens: &[ElemId], depth: usize) -> bool {
        let kind_tag = if kind == ExtendedKind::Steinberg { SubgroupKind::Steinberg } else { SubgroupKind::WeylSubsystem };
        let h = generate_subgroup(self.ambient, gens, kind_tag);
        if !self.keys.insert(h.conjugacy_key(self.ambient)) {
            return false;
        }
        let name = label.to_string();
        self.out.push(ExtendedSubsystem { kind, label, name, generators, subgroup: h, depth });
        true
    }
}

/// Weyl subsystems, subsystems coming from the dual system, and simply-laced
/// foldings of all of these, repeated on each folded system, deduplicated by
/// conjugacy of the generated subgroup.
pub fn enumerate_extended_subsystems(g: &WeylGroup) -> Result<Vec<ExtendedSubsystem>> {
    let mut col = Collector { ambient: g, keys: BTreeSet::new(), out: Vec::new() };
    let identity: Vec<ElemId> = g.elements().collect();
    let mut pending: Vec<Level> = Vec::new();
    expand(&mut col, g, &identity, 0, &mut pending)?;
    let mut k = 0;
    while k < pending.len() {
        let level = &pending[k];
        if level.depth < MAX_FOLD_DEPTH {
            let mut next = Vec::new();
            expand(&mut col, &level.group, &level.embed, level.depth, &mut next)?;
            pending.extend(next);
        }
        k += 1;
    }
    let mut out = col.out;
    assign_primes(out.iter_mut().map(|e| (e.label.to_string(), &mut e.name)));
    Ok(out)
}

fn vector_text(phi: &RootSystem, v: &RatVector) -> String {
    if phi.index_of_vector(v).is_some() {
        return phi.vector_notation(v);
    }
    match average_of_orthogonal_roots(phi, v) {
        Some(parts) => orbit_text(&parts.iter().map(|&r| phi.notation(r)).collect::<Vec<_>>()),
        None => phi.vector_notation(v),
    }
}

// v = (r1+...+rk)/k with the r_i mutually orthogonal of one length; then
// (r_i, v) = (v, v) and k = |r|^2 / |v|^2. Positive roots are tried first.
fn average_of_orthogonal_roots(phi: &RootSystem, v: &RatVector) -> Option<Vec<usize>> {
    let vv = inner_product(v, v).ok()?;
    if vv.is_zero() {
        return None;
    }
    let mut cands: Vec<usize> = (0..phi.len())
        .filter(|&r| inner_product(&phi.root(r).vector, v).ok().as_ref() == Some(&vv))
        .collect();
    cands.sort_by_key(|&r| !phi.is_positive(r));
    let rr = inner_product(&phi.root(*cands.first()?).vector, &phi.root(*cands.first()?).vector).ok()?;
    let k = rr.checked_div(&vv)?.to_i64()?;
    if !(2..=8).contains(&k) {
        return None;
    }
    let target = v.scale(&Scalar::from_i64(k));
    let mut chosen = Vec::new();
    search_orthogonal(phi, &cands, 0, k as usize, &target, &mut chosen).then_some(chosen)
}

fn search_orthogonal(phi: &RootSystem, cands: &[usize], from: usize, k: usize, target: &RatVector, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        let sum = chosen.iter().fold(RatVector::zero(Field::Rational, target.dim()), |acc, &r| {
            acc.add(&phi.root(r).vector).expect("same dimension")
        });
        return &sum == target;
    }
    for i in from..cands.len() {
        let r = cands[i];
        if chosen.iter().all(|&c| phi.is_orthogonal(c, r)) {
            chosen.push(r);
            if search_orthogonal(phi, cands, i + 1, k, target, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn expand(col: &mut Collector<'_>, sys: &WeylGroup, embed: &[ElemId], depth: usize, next: &mut Vec<Level>) -> Result<()> {
    let phi = col.ambient.root_system();
    let srs = sys.root_system();
    let text = |r: usize| vector_text(phi, &srs.root(r).vector);
    let lift = |gens: &[ElemId]| gens.iter().map(|x| embed[x.index()]).collect::<Vec<_>>();
    // Below the top level every subgroup is already a folded one.
    let (weyl_kind, dual_kind) = if depth == 0 {
        (ExtendedKind::Weyl, ExtendedKind::Dual)
    } else {
        (ExtendedKind::Steinberg, ExtendedKind::Steinberg)
    };

    let plain = enumerate_subsystems(sys)?;
    for s in &plain {
        let gens = lift(&s.simple.iter().map(|&r| sys.reflection(r)).collect::<Vec<_>>());
        col.offer(weyl_kind, s.label.clone(), s.simple.iter().map(|&r| text(r)).collect(), &gens, depth);
    }

    // Subsystems of the dual, carried back through coroots.
    let mut simple_systems: Vec<Vec<usize>> = plain.iter().map(|s| s.simple.clone()).collect();
    let dual = dual_system(srs)?;
    let dual_group = enumerate_group(dual)?;
    for s in enumerate_subsystems(&dual_group)? {
        let back: Vec<usize> = s
            .simple
            .iter()
            .map(|&r| {
                let v = crate::roots::coroot(&dual_group.root_system().root(r).vector).expect("nonzero");
                srs.index_of_vector(&v).expect("coroots of the dual are roots")
            })
            .collect();
        let label = DiagramType::new(classify_diagram(&srs.diagram_of(&back)?)?);
        let gens = lift(&back.iter().map(|&r| sys.reflection(r)).collect::<Vec<_>>());
        col.offer(dual_kind, label, back.iter().map(|&r| text(r)).collect(), &gens, depth);
        let mut sorted = back.clone();
        sorted.sort_unstable();
        if !simple_systems.contains(&sorted) {
            simple_systems.push(sorted);
        }
    }

    for j in &simple_systems {
        let d = srs.diagram_of(j)?;
        for rho in diagram_symmetries(&d).into_iter().skip(1) {
            let datum = match steinberg_fold(sys, j, &rho) {
                Ok(x) => x,
                Err(Error::NotSimplyLaced) => continue,
                Err(e) => return Err(e),
            };
            let folded = match RootSystem::from_simple_vectors(datum.projected.clone()) {
                Ok(f) => f,
                Err(_) => continue,
            };
            let gens = lift(&datum.orbit_longest);
            let generators = datum
                .orbits
                .iter()
                .map(|o| orbit_text(&o.iter().map(|&i| text(j[i])).collect::<Vec<_>>()))
                .collect();
            if !col.offer(ExtendedKind::Steinberg, folded.label().clone(), generators, &gens, depth + 1) {
                continue;
            }
            let fgroup = enumerate_group(folded)?;
            let fembed: Vec<ElemId> = fgroup
                .elements()
                .map(|x| {
                    fgroup.element(x).word().iter().fold(col.ambient.identity(), |acc, &s| col.ambient.mul(acc, gens[s as usize]))
                })
                .collect();
            next.push(Level { group: fgroup, embed: fembed, depth: depth + 1 });
        }
    }
    Ok(())
}

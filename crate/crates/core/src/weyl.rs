//! Weyl groups as permutation groups on the root list.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::exact::RatVector;
use crate::roots::{reflect, RootSystem};

/// Largest group this crate will enumerate.
pub const ORDER_GUARD: usize = 2000;

/// Handle of an element inside one [`WeylGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A group element: where it sends each root, plus one reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<u16>,
    word: Vec<u8>,
}

impl WeylElement {
    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Simple reflection indices, 0-based, leftmost factor first.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn image(&self, root: usize) -> usize {
        self.perm[root] as usize
    }
}

/// The full Weyl group, with multiplication and inverse tables.
///
/// Products follow composition of maps: `mul(a, b)` applies `b` first.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    lengths: Vec<u32>,
    lookup: BTreeMap<u64, u32>,
    table: Vec<u32>,
    inverses: Vec<u32>,
    canon: Vec<u32>,
    reflections: Vec<ElemId>,
}

fn perm_key(perm: &[u16], rank: usize) -> u64 {
    perm[..rank].iter().enumerate().fold(0u64, |k, (i, &p)| k | (p as u64) << (8 * i))
}

/// Breadth-first closure of the simple reflections.
pub fn enumerate_group(rs: RootSystem) -> Result<WeylGroup> {
    WeylGroup::new(rs)
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Result<WeylGroup> {
        let n = rs.rank();
        assert!(n <= 8 && rs.len() < 256, "root system too large for permutation keys");
        let id_perm: Vec<u16> = (0..rs.len() as u16).collect();
        let mut elements = vec![WeylElement { perm: id_perm, word: Vec::new() }];
        let mut lookup = BTreeMap::new();
        lookup.insert(perm_key(&elements[0].perm, n), 0u32);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for s in 0..n {
                let sp = rs.reflection_perm(s);
                let perm: Vec<u16> = sp.iter().map(|&i| elements[g].perm[i as usize]).collect();
                let key = perm_key(&perm, n);
                if lookup.contains_key(&key) {
                    continue;
                }
                if elements.len() >= ORDER_GUARD {
                    return Err(Error::OrderGuard { limit: ORDER_GUARD });
                }
                let mut word = elements[g].word.clone();
                word.push(s as u8);
                lookup.insert(key, elements.len() as u32);
                queue.push_back(elements.len());
                elements.push(WeylElement { perm, word });
            }
        }
        let order = elements.len();
        let npos = rs.positive_count();
        let lengths: Vec<u32> = elements
            .iter()
            .map(|e| e.perm[..npos].iter().filter(|&&p| (p as usize) >= npos).count() as u32)
            .collect();
        let mut table = vec![0u32; order * order];
        let mut img = vec![0u16; n];
        for a in 0..order {
            for b in 0..order {
                for (j, slot) in img.iter_mut().enumerate() {
                    *slot = elements[a].perm[elements[b].perm[j] as usize];
                }
                table[a * order + b] = lookup[&perm_key(&img, n)];
            }
        }
        let inverses: Vec<u32> = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).expect("group") as u32)
            .collect();
        let mut sorted: Vec<usize> = (0..order).collect();
        sorted.sort_by(|&a, &b| lengths[a].cmp(&lengths[b]).then_with(|| elements[a].perm.cmp(&elements[b].perm)));
        let mut canon = vec![0u32; order];
        for (pos, &e) in sorted.iter().enumerate() {
            canon[e] = pos as u32;
        }
        let mut group = WeylGroup {
            rs,
            elements,
            lengths,
            lookup,
            table,
            inverses,
            canon,
            reflections: Vec::new(),
        };
        group.reflections = (0..group.rs.len())
            .map(|r| group.find_perm(group.rs.reflection_perm(r)).expect("reflection in group"))
            .collect();
        Ok(group)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> ElemId {
        ElemId(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.elements.len() as u32).map(ElemId)
    }

    /// Elements in canonical order: by length, then by permutation image.
    pub fn elements_canonical(&self) -> Vec<ElemId> {
        let mut v: Vec<ElemId> = self.elements().collect();
        v.sort_by_key(|&e| self.canon[e.index()]);
        v
    }

    pub fn element(&self, id: ElemId) -> &WeylElement {
        &self.elements[id.index()]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        ElemId(self.table[a.index() * self.order() + b.index()])
    }

    pub fn inverse(&self, a: ElemId) -> ElemId {
        ElemId(self.inverses[a.index()])
    }

    /// `a b a^-1`.
    pub fn conjugate(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul(self.mul(a, b), self.inverse(a))
    }

    pub fn length(&self, a: ElemId) -> usize {
        self.lengths[a.index()] as usize
    }

    pub fn sign(&self, a: ElemId) -> i64 {
        if self.lengths[a.index()].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Order in the canonical element ordering (length, then permutation).
    pub fn canonical_key(&self, a: ElemId) -> u32 {
        self.canon[a.index()]
    }

    pub fn canonical_cmp(&self, a: ElemId, b: ElemId) -> Ordering {
        self.canon[a.index()].cmp(&self.canon[b.index()])
    }

    pub fn simple_reflection(&self, i: usize) -> ElemId {
        self.reflections[i]
    }

    /// The reflection in root `r`.
    pub fn reflection(&self, r: usize) -> ElemId {
        self.reflections[r]
    }

    pub fn apply_root(&self, a: ElemId, r: usize) -> usize {
        self.elements[a.index()].perm[r] as usize
    }

    /// Acts on any ambient vector by applying the element's word.
    pub fn apply_vector(&self, a: ElemId, v: &RatVector) -> RatVector {
        let mut out = v.clone();
        for &s in self.elements[a.index()].word.iter().rev() {
            out = reflect(&self.rs.root(s as usize).vector, &out).expect("simple roots are nonzero");
        }
        out
    }

    pub fn find_perm(&self, perm: &[u16]) -> Option<ElemId> {
        let n = self.rs.rank();
        let id = *self.lookup.get(&perm_key(perm, n))?;
        (self.elements[id as usize].perm == perm).then_some(ElemId(id))
    }

    /// Product of simple reflections, indices 0-based, leftmost first.
    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut acc = self.identity();
        for &s in word {
            if s >= self.rs.rank() {
                return Err(Error::MalformedWord(word_text(word)));
            }
            acc = self.mul(acc, self.simple_reflection(s));
        }
        Ok(acc)
    }

    /// Parses `e`, `t1 t3 t2`, `τ1τ3τ2` or `1 3 2` (1-based indices).
    pub fn parse_word(&self, text: &str) -> Result<ElemId> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "1_W" {
            return Ok(self.identity());
        }
        let mut word = Vec::new();
        for c in t.chars() {
            match c {
                'τ' | 't' | 's' | ' ' | '·' | '*' | ',' => {}
                d if d.is_ascii_digit() => {
                    let k = d.to_digit(10).unwrap() as usize;
                    if k == 0 || k > self.rs.rank() {
                        return Err(Error::MalformedWord(text.to_string()));
                    }
                    word.push(k - 1);
                }
                _ => return Err(Error::MalformedWord(text.to_string())),
            }
        }
        self.from_word(&word)
    }

    /// `t1 t3 t2` style rendering of the stored reduced word, `e` for identity.
    pub fn word_string(&self, a: ElemId) -> String {
        let w: Vec<usize> = self.elements[a.index()].word.iter().map(|&s| s as usize).collect();
        word_text(&w)
    }

    /// A subgroup generated by reflections in the given roots.
    pub fn reflection_subgroup(&self, roots: &[usize], kind: SubgroupKind) -> ReflectionSubgroup {
        let gens: Vec<ElemId> = roots.iter().map(|&r| self.reflection(r)).collect();
        generate_subgroup(self, &gens, kind)
    }
}

fn word_text(w: &[usize]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    let parts: Vec<String> = w.iter().map(|s| alloc::format!("t{}", s + 1)).collect();
    parts.join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    WeylSubsystem,
    Steinberg,
    Generated,
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgroupKind::WeylSubsystem => "weyl-subsystem",
            SubgroupKind::Steinberg => "steinberg",
            SubgroupKind::Generated => "generated",
        })
    }
}

/// A subgroup of a [`WeylGroup`], stored as its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionSubgroup {
    generators: Vec<ElemId>,
    elements: Vec<ElemId>,
    kind: SubgroupKind,
}

/// Closure of `gens` under multiplication.
pub fn generate_subgroup(g: &WeylGroup, gens: &[ElemId], kind: SubgroupKind) -> ReflectionSubgroup {
    let mut seen = vec![false; g.order()];
    let mut elements = vec![g.identity()];
    seen[0] = true;
    let mut k = 0;
    while k < elements.len() {
        let x = elements[k];
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y.index()] {
                seen[y.index()] = true;
                elements.push(y);
            }
        }
        k += 1;
    }
    elements.sort_unstable();
    ReflectionSubgroup { generators: gens.to_vec(), elements, kind }
}

impl ReflectionSubgroup {
    pub fn trivial(g: &WeylGroup) -> Self {
        generate_subgroup(g, &[], SubgroupKind::Generated)
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    /// Sorted by handle.
    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &ReflectionSubgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Smallest sorted element list among all conjugates; equal keys iff conjugate.
    pub fn conjugacy_key(&self, g: &WeylGroup) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        for w in g.elements() {
            let mut c: Vec<u32> = self.elements.iter().map(|&x| g.conjugate(w, x).0).collect();
            c.sort_unstable();
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
        best.unwrap_or_default()
    }
}

/// Exact intersection of element sets.
pub fn subgroup_intersection(h1: &ReflectionSubgroup, h2: &ReflectionSubgroup) -> ReflectionSubgroup {
    let elements: Vec<ElemId> = h1.elements.iter().copied().filter(|&x| h2.contains(x)).collect();
    let generators = elements.iter().copied().filter(|x| x.0 != 0).collect();
    ReflectionSubgroup { generators, elements, kind: SubgroupKind::Generated }
}

/// Representative of the left coset `w H`: minimal length, ties broken by the
/// lexicographically smallest permutation.
pub fn coset_canonicalize(g: &WeylGroup, w: ElemId, h: &ReflectionSubgroup) -> ElemId {
    h.elements
        .iter()
        .map(|&x| g.mul(w, x))
        .min_by_key(|&y| g.canonical_key(y))
        .expect("subgroup contains the identity")
}

/// The left cosets of a subgroup, with canonical representatives in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftCosets {
    reps: Vec<ElemId>,
    coset_of: Vec<u32>,
}

impl LeftCosets {
    pub fn new(g: &WeylGroup, h: &ReflectionSubgroup) -> Self {
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for w in g.elements_canonical() {
            if coset_of[w.index()] != u32::MAX {
                continue;
            }
            for &x in h.elements() {
                coset_of[g.mul(w, x).index()] = reps.len() as u32;
            }
            reps.push(w);
        }
        LeftCosets { reps, coset_of }
    }

    pub fn reps(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Position of the coset containing `w`.
    pub fn coset_of(&self, w: ElemId) -> usize {
        self.coset_of[w.index()] as usize
    }
}

/// `{w : w(j) > 0 for all j in J}`, in canonical order.
pub fn distinguished_reps(g: &WeylGroup, j: &[usize]) -> Result<Vec<ElemId>> {
    let rs = g.root_system();
    if let Some(&bad) = j.iter().find(|&&r| !rs.is_positive(r)) {
        return Err(Error::NotPositive(rs.notation(bad)));
    }
    Ok(g.elements_canonical()
        .into_iter()
        .filter(|&w| j.iter().all(|&r| rs.is_positive(g.apply_root(w, r))))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: ElemId,
    pub members: Vec<ElemId>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A partition of a group (or subgroup) into conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<ConjugacyClass>,
    class_of: BTreeMap<ElemId, usize>,
}

/// Classes of the whole group, each represented by its canonical minimum.
pub fn conjugacy_classes(g: &WeylGroup) -> ConjugacyClasses {
    let all: Vec<ElemId> = g.elements().collect();
    ConjugacyClasses::build(g, &all)
}

impl ConjugacyClasses {
    /// Classes of a subgroup under its own conjugation.
    pub fn of_subgroup(g: &WeylGroup, h: &ReflectionSubgroup) -> Self {
        ConjugacyClasses::build(g, h.elements())
    }

    fn build(g: &WeylGroup, members: &[ElemId]) -> Self {
        let mut sorted = members.to_vec();
        sorted.sort_by_key(|&e| g.canonical_key(e));
        let mut class_of = BTreeMap::new();
        let mut classes = Vec::new();
        for &x in &sorted {
            if class_of.contains_key(&x) {
                continue;
            }
            let mut orbit: Vec<ElemId> = members.iter().map(|&w| g.conjugate(w, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                class_of.insert(y, classes.len());
            }
            classes.push(ConjugacyClass { representative: x, members: orbit });
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: ElemId) -> Option<usize> {
        self.class_of.get(&x).copied()
    }

    pub fn representatives(&self) -> Vec<ElemId> {
        self.classes.iter().map(|c| c.representative).collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjugacyClass::size).collect()
    }

    /// Reorders the classes to follow `reps`, which must hit every class once.
    pub fn with_representatives(&self, reps: &[ElemId]) -> Result<Self> {
        let mut used = vec![false; self.classes.len()];
        let mut classes = Vec::with_capacity(reps.len());
        for &r in reps {
            let c = self.class_of(r).ok_or(Error::ClassesNotDistinct)?;
            if used[c] {
                return Err(Error::ClassesNotDistinct);
            }
            used[c] = true;
            classes.push(ConjugacyClass { representative: r, members: self.classes[c].members.clone() });
        }
        if classes.len() != self.classes.len() {
            return Err(Error::ClassCountMismatch { expected: self.classes.len(), got: classes.len() });
        }
        let mut class_of = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of.insert(m, i);
            }
        }
        Ok(ConjugacyClasses { classes, class_of })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;
    use crate::roots::build_root_system;

    fn group(s: &str) -> WeylGroup {
        enumerate_group(build_root_system(s.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (s, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120), ("B3", 48), ("B4", 384), ("D4", 192), ("G2", 12), ("F4", 1152)] {
            assert_eq!(group(s).order(), n, "{s}");
        }
    }

    #[test]
    fn lengths_and_signs() {
        let g = group("A3");
        assert_eq!(g.length(g.identity()), 0);
        assert_eq!(g.sign(g.identity()), 1);
        for i in 0..3 {
            let s = g.simple_reflection(i);
            assert_eq!(g.length(s), 1);
            assert_eq!(g.sign(s), -1);
        }
        for a in g.elements() {
            assert_eq!(g.length(a), g.element(a).word().len());
            for b in g.elements() {
                assert_eq!(g.sign(g.mul(a, b)), g.sign(a) * g.sign(b));
            }
        }
    }

    #[test]
    fn words_compose_left_to_right() {
        let g = group("A3");
        let w = g.parse_word("t1 t2").unwrap();
        let rs = g.root_system();
        // t1 t2 applies t2 first: 100 -> 110 -> 010.
        assert_eq!(rs.notation(g.apply_root(w, 0)), "010");
        assert_eq!(g.parse_word("τ1τ2").unwrap(), w);
        assert_eq!(g.word_string(g.identity()), "e");
        assert!(g.parse_word("t5").is_err());
        let v = rs.root(0).vector.clone();
        assert_eq!(g.apply_vector(w, &v), rs.root(g.apply_root(w, 0)).vector);
    }

    #[test]
    fn example_b3_subgroups() {
        let g = group("B3");
        let rs = g.root_system();
        let idx = |ss: &[&str]| ss.iter().map(|s| rs.parse_root(s).unwrap()).collect::<Vec<_>>();
        let h = g.reflection_subgroup(&idx(&["100", "122", "001"]), SubgroupKind::WeylSubsystem);
        let h2 = g.reflection_subgroup(&idx(&["010", "111", "012"]), SubgroupKind::WeylSubsystem);
        assert_eq!(h.order(), 8);
        assert_eq!(h2.order(), 8);
        let listed = ["e", "1", "3", "1 3", "2 3 1 2 3 1 2", "2 3 1 2 3 1 2 1", "3 2 3 1 2 3 1 2", "3 2 3 1 2 3 1 2 1"];
        for w in listed {
            assert!(h.contains(g.parse_word(w).unwrap()), "{w}");
        }
        let listed2 = ["e", "2", "1 2 3 2 1", "3 2 3", "3 2 3 1 2 3 1 2 1", "3 2 3 2", "3 2 3 1 2 3 2 1", "1 2 3 1 2 1"];
        for w in listed2 {
            assert!(h2.contains(g.parse_word(w).unwrap()), "{w}");
        }
        let both = subgroup_intersection(&h, &h2);
        let w = g.parse_word("t3 t2 t3 t1 t2 t3 t1 t2 t1").unwrap();
        assert!(both.contains(w));
        assert_eq!(g.length(w), 9);
        assert_eq!(subgroup_intersection(&h, &h), h.clone().with_kind(SubgroupKind::Generated));
    }

    impl ReflectionSubgroup {
        fn with_kind(mut self, k: SubgroupKind) -> Self {
            self.kind = k;
            self.generators = self.elements.iter().copied().filter(|x| x.0 != 0).collect();
            self
        }
    }

    #[test]
    fn example_a3_cosets() {
        let g = group("A3");
        let d = distinguished_reps(&g, &[0, 2]).unwrap();
        let words: Vec<String> = d.iter().map(|&w| g.word_string(w)).collect();
        let want = ["e", "t2", "t1 t2", "t3 t2", "t1 t3 t2", "t2 t1 t3 t2"];
        assert_eq!(d.len(), 6);
        for w in want {
            assert!(d.contains(&g.parse_word(w).unwrap()), "{w} in {words:?}");
        }
        assert_eq!(distinguished_reps(&g, &[0, 1, 2]).unwrap(), vec![g.identity()]);
        assert_eq!(distinguished_reps(&g, &[]).unwrap().len(), 24);
        assert!(distinguished_reps(&g, &[g.root_system().negate(0)]).is_err());
        let h = g.reflection_subgroup(&[0, 2], SubgroupKind::WeylSubsystem);
        let cosets = LeftCosets::new(&g, &h);
        assert_eq!(cosets.reps(), d.as_slice());
        // unique factorization w = d x
        for w in g.elements() {
            let hits = d.iter().filter(|&&dd| h.contains(g.mul(g.inverse(dd), w))).count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn canonical_coset_reps() {
        let g = group("D4");
        let h = g.reflection_subgroup(&[0, 1, 2], SubgroupKind::WeylSubsystem);
        assert_eq!(coset_canonicalize(&g, g.identity(), &h), g.identity());
        let cosets = LeftCosets::new(&g, &h);
        assert_eq!(cosets.len(), 8);
        for w in ["e", "4", "2 4", "1 2 4", "3 2 4", "1 3 2 4", "2 1 3 2 4", "4 2 1 3 2 4"] {
            let x = g.parse_word(w).unwrap();
            assert_eq!(coset_canonicalize(&g, x, &h), x, "{w}");
        }
        for w in g.elements() {
            for &x in h.elements() {
                assert_eq!(coset_canonicalize(&g, g.mul(w, x), &h), coset_canonicalize(&g, w, &h));
            }
        }
    }

    #[test]
    fn classes() {
        assert_eq!(conjugacy_classes(&group("A3")).len(), 5);
        let g = group("D4");
        let cc = conjugacy_classes(&g);
        assert_eq!(cc.len(), 13);
        assert_eq!(cc.sizes().iter().sum::<usize>(), 192);
        let t = ReflectionSubgroup::trivial(&g);
        assert_eq!(ConjugacyClasses::of_subgroup(&g, &t).len(), 1);
    }
}

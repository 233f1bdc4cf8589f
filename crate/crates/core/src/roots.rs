//! Crystallographic root systems, their Dynkin diagrams and duals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{inner_product, rank, solve_in_basis, Field, RatMatrix, RatVector, Scalar};

/// Upper bound on the number of roots produced by saturation.
const ROOT_CAP: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }
}

/// An irreducible type such as `D4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanLabel {
    pub kind: CartanType,
    pub rank: usize,
}

impl CartanLabel {
    pub fn new(kind: CartanType, rank: usize) -> Self {
        CartanLabel { kind, rank }
    }

    /// Types that [`build_root_system`] constructs.
    pub fn is_supported(&self) -> bool {
        use CartanType::*;
        matches!(
            (self.kind, self.rank),
            (A, 1..=4) | (B, 2..=4) | (C, 2..=4) | (D, 4) | (F, 4) | (G, 2)
        )
    }

    fn is_valid(&self) -> bool {
        use CartanType::*;
        match self.kind {
            A => self.rank >= 1,
            B | C => self.rank >= 2,
            D => self.rank >= 4,
            E => (6..=8).contains(&self.rank),
            F => self.rank == 4,
            G => self.rank == 2,
        }
    }
}

impl Ord for CartanLabel {
    // Bigger components first, then by letter.
    fn cmp(&self, other: &Self) -> Ordering {
        other.rank.cmp(&self.rank).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for CartanLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedLabel(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('E') => CartanType::E,
            Some('F') => CartanType::F,
            Some('G') => CartanType::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        let label = CartanLabel { kind, rank };
        if label.is_valid() {
            Ok(label)
        } else {
            Err(bad())
        }
    }
}

/// The isomorphism type of a possibly reducible system, components sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DiagramType(pub Vec<CartanLabel>);

impl DiagramType {
    pub fn new(mut labels: Vec<CartanLabel>) -> Self {
        labels.sort();
        DiagramType(labels)
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|l| l.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}", j - i)?;
            }
            write!(f, "{}", self.0[i])?;
            i = j;
        }
        Ok(())
    }
}

/// A root: its ambient vector and its coefficients over the simple system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub vector: RatVector,
    pub simple_coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.simple_coords.iter().all(|&c| c >= 0)
    }
}

/// `v - 2(v,a)/(a,a) a`.
pub fn reflect(alpha: &RatVector, v: &RatVector) -> Result<RatVector> {
    let aa = inner_product(alpha, alpha)?;
    if aa.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let va = inner_product(v, alpha)?;
    let c = (&Scalar::from_i64(2) * &va).checked_div(&aa).ok_or(Error::ZeroRoot)?;
    v.sub(&alpha.scale(&c))
}

/// `2a/(a,a)`.
pub fn coroot(alpha: &RatVector) -> Result<RatVector> {
    let aa = inner_product(alpha, alpha)?;
    let c = Scalar::from_i64(2).checked_div(&aa).ok_or(Error::ZeroRoot)?;
    Ok(alpha.scale(&c))
}

/// A root system together with a fixed simple system.
///
/// Roots are indexed: positives `0..N` sorted by height and then by simple
/// coordinates in descending lexicographic order (so the simple roots come
/// first, in order), followed by negatives with `i + N` the negative of `i`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: DiagramType,
    ambient_dim: usize,
    simple: Vec<RatVector>,
    roots: Vec<Root>,
    n_pos: usize,
    lookup: BTreeMap<Vec<i64>, usize>,
    // Gram matrix of the simple roots scaled to integers.
    gram: Vec<Vec<i64>>,
    // Pairwise scaled inner products of all roots.
    pairing: Vec<i64>,
    reflections: Vec<Vec<u16>>,
}

/// Builds one of the supported irreducible systems in its standard coordinates.
pub fn build_root_system(label: CartanLabel) -> Result<RootSystem> {
    if !label.is_supported() {
        return Err(Error::UnsupportedLabel(label.to_string()));
    }
    let l = label.rank;
    let e = |dim: usize, pairs: &[(usize, i64)]| {
        let mut v = vec![0i64; dim];
        for &(i, c) in pairs {
            v[i] += c;
        }
        RatVector::from_i64s(&v)
    };
    let simple: Vec<RatVector> = match label.kind {
        CartanType::A => (0..l).map(|i| e(l + 1, &[(i, 1), (i + 1, -1)])).collect(),
        CartanType::B | CartanType::C => {
            let last = if label.kind == CartanType::B { 1 } else { 2 };
            (0..l)
                .map(|i| if i + 1 < l { e(l, &[(i, 1), (i + 1, -1)]) } else { e(l, &[(i, last)]) })
                .collect()
        }
        CartanType::D => {
            let mut s: Vec<RatVector> = (0..l - 1).map(|i| e(l, &[(i, 1), (i + 1, -1)])).collect();
            s.push(e(l, &[(l - 2, 1), (l - 1, 1)]));
            s
        }
        CartanType::G => vec![e(3, &[(0, 1), (1, -1)]), e(3, &[(0, -2), (1, 1), (2, 1)])],
        CartanType::F => {
            let h = Scalar::from_ratio(1, 2);
            let mh = Scalar::from_ratio(-1, 2);
            vec![
                e(4, &[(1, 1), (2, -1)]),
                e(4, &[(2, 1), (3, -1)]),
                e(4, &[(3, 1)]),
                RatVector::new(vec![h, mh.clone(), mh.clone(), mh]),
            ]
        }
        CartanType::E => unreachable!("E series is rejected above"),
    };
    RootSystem::build(simple, Some(DiagramType(vec![label])))
}

impl RootSystem {
    /// Saturates the given simple system under its reflections.
    pub fn from_simple_vectors(simple: Vec<RatVector>) -> Result<RootSystem> {
        RootSystem::build(simple, None)
    }

    fn build(simple: Vec<RatVector>, label: Option<DiagramType>) -> Result<RootSystem> {
        let n = simple.len();
        let ambient_dim = simple.first().map_or(0, RatVector::dim);
        if simple.iter().any(|v| v.dim() != ambient_dim) {
            return Err(Error::NotCrystallographic("simple vectors of mixed dimension".into()));
        }
        if n > 0 {
            let m = RatMatrix::from_rows(ambient_dim, simple.clone())?;
            if rank(&m) < n {
                return Err(Error::NotCrystallographic("simple vectors are dependent".into()));
            }
        }
        let gram = integer_gram(&simple)?;
        for (i, row) in gram.iter().enumerate() {
            for (j, &gij) in row.iter().enumerate() {
                if i != j {
                    let c = 2 * gij;
                    if c % gram[j][j] != 0 || c > 0 {
                        return Err(Error::NotCrystallographic("Cartan integers".into()));
                    }
                }
            }
        }
        // Saturation in simple coordinates.
        let mut all: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        let mut seen: BTreeMap<Vec<i64>, ()> = all.iter().map(|c| (c.clone(), ())).collect();
        let mut k = 0;
        while k < all.len() {
            for i in 0..n {
                let beta = all[k].clone();
                let p = 2 * bilinear(&gram, &beta, &unit(n, i)) / gram[i][i];
                let mut img = beta;
                img[i] -= p;
                if seen.insert(img.clone(), ()).is_none() {
                    all.push(img);
                    if all.len() > ROOT_CAP {
                        return Err(Error::NotCrystallographic("root set does not close".into()));
                    }
                }
            }
            k += 1;
        }
        let mut pos: Vec<Vec<i64>> = Vec::new();
        for c in &all {
            let nonneg = c.iter().all(|&x| x >= 0);
            let nonpos = c.iter().all(|&x| x <= 0);
            if !nonneg && !nonpos {
                return Err(Error::NotCrystallographic("mixed-sign root".into()));
            }
            if nonneg {
                pos.push(c.clone());
            }
        }
        if pos.len() * 2 != all.len() {
            return Err(Error::NotCrystallographic("not closed under negation".into()));
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut coords = pos.clone();
        coords.extend(pos.iter().map(|c| c.iter().map(|x| -x).collect::<Vec<_>>()));
        let roots: Vec<Root> = coords
            .iter()
            .map(|c| Root { vector: combine(&simple, c, ambient_dim), simple_coords: c.clone() })
            .collect();
        let lookup = coords.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let total = roots.len();
        let mut pairing = vec![0i64; total * total];
        for a in 0..total {
            for b in 0..total {
                pairing[a * total + b] = bilinear(&gram, &coords[a], &coords[b]);
            }
        }
        let mut rs = RootSystem {
            label: DiagramType::default(),
            ambient_dim,
            simple,
            roots,
            n_pos,
            lookup,
            gram,
            pairing,
            reflections: Vec::new(),
        };
        rs.reflections = (0..total).map(|a| rs.compute_reflection(a)).collect();
        rs.label = match label {
            Some(l) => l,
            None => DiagramType::new(classify_diagram(&rs.diagram()?)?),
        };
        Ok(rs)
    }

    fn compute_reflection(&self, a: usize) -> Vec<u16> {
        let ca = &self.roots[a].simple_coords;
        let aa = self.scaled_inner(a, a);
        (0..self.roots.len())
            .map(|b| {
                let p = 2 * self.scaled_inner(b, a) / aa;
                let img: Vec<i64> =
                    self.roots[b].simple_coords.iter().zip(ca).map(|(x, y)| x - p * y).collect();
                self.lookup[&img] as u16
            })
            .collect()
    }

    pub fn label(&self) -> &DiagramType {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Total number of roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_count(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn simple_vectors(&self) -> &[RatVector] {
        &self.simple
    }

    pub fn simple_indices(&self) -> core::ops::Range<usize> {
        0..self.rank()
    }

    pub fn positive_indices(&self) -> core::ops::Range<usize> {
        0..self.n_pos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn negate(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Index of the root, discarding its sign.
    pub fn positive_of(&self, i: usize) -> usize {
        if i < self.n_pos {
            i
        } else {
            i - self.n_pos
        }
    }

    /// The highest root, when the system is irreducible.
    pub fn highest_root(&self) -> Option<usize> {
        (self.label.0.len() == 1).then(|| self.n_pos - 1)
    }

    pub fn index_of_coords(&self, coords: &[i64]) -> Option<usize> {
        self.lookup.get(coords).copied()
    }

    /// Coefficients of an ambient vector over the simple system.
    pub fn simple_coords_of(&self, v: &RatVector) -> Option<Vec<Scalar>> {
        solve_in_basis(&self.simple, v)
    }

    pub fn index_of_vector(&self, v: &RatVector) -> Option<usize> {
        let c = self.simple_coords_of(v)?;
        let ints: Option<Vec<i64>> = c.iter().map(Scalar::to_i64).collect();
        self.index_of_coords(&ints?)
    }

    /// Inner product of two roots, scaled by a fixed positive integer.
    pub fn scaled_inner(&self, a: usize, b: usize) -> i64 {
        self.pairing[a * self.roots.len() + b]
    }

    pub fn is_orthogonal(&self, a: usize, b: usize) -> bool {
        self.scaled_inner(a, b) == 0
    }

    /// Exact inner product of two roots.
    pub fn inner(&self, a: usize, b: usize) -> Scalar {
        inner_product(&self.roots[a].vector, &self.roots[b].vector).expect("same ambient space")
    }

    /// Image of root `b` under the reflection in root `a`.
    pub fn reflect_index(&self, a: usize, b: usize) -> usize {
        self.reflections[a][b] as usize
    }

    pub fn reflection_perm(&self, a: usize) -> &[u16] {
        &self.reflections[a]
    }

    /// Index of `a + b` if that is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let c: Vec<i64> = self.roots[a]
            .simple_coords
            .iter()
            .zip(&self.roots[b].simple_coords)
            .map(|(x, y)| x + y)
            .collect();
        self.index_of_coords(&c)
    }

    /// `a1a2...an`, with a leading `-` for negative roots.
    pub fn notation(&self, i: usize) -> String {
        let c = &self.roots[i].simple_coords;
        let mut s = String::new();
        if !self.is_positive(i) {
            s.push('-');
        }
        for x in c {
            s.push_str(&x.abs().to_string());
        }
        s
    }

    /// Parses `a1a2...an` with an optional `-` (or `−`) applying to the whole string.
    pub fn parse_root(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let (neg, digits) = match t.strip_prefix('-').or_else(|| t.strip_prefix('−')) {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        if digits.chars().count() != self.rank() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::MalformedRoot(text.to_string()));
        }
        let sign = if neg { -1 } else { 1 };
        let coords: Vec<i64> =
            digits.chars().map(|c| sign * c.to_digit(10).unwrap() as i64).collect();
        self.index_of_coords(&coords).ok_or_else(|| Error::NotARoot(text.to_string()))
    }

    /// Renders any vector of the span: a root in root notation, anything else
    /// by its simple coordinates.
    pub fn vector_notation(&self, v: &RatVector) -> String {
        if let Some(i) = self.index_of_vector(v) {
            return self.notation(i);
        }
        match self.simple_coords_of(v) {
            Some(c) => {
                let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(","))
            }
            None => v.to_string(),
        }
    }

    /// The Dynkin diagram of the simple system.
    pub fn diagram(&self) -> Result<DynkinDiagram> {
        let labels = (0..self.rank()).map(|i| self.notation(i)).collect();
        DynkinDiagram::from_vectors(labels, &self.simple)
    }

    /// The Dynkin diagram of any family of vectors (e.g. a subsystem's simple roots).
    pub fn diagram_of(&self, idx: &[usize]) -> Result<DynkinDiagram> {
        let labels = idx.iter().map(|&i| self.notation(i)).collect();
        let vecs: Vec<RatVector> = idx.iter().map(|&i| self.roots[i].vector.clone()).collect();
        DynkinDiagram::from_vectors(labels, &vecs)
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn bilinear(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            acc += x * g[i][j] * y;
        }
    }
    acc
}

fn combine(simple: &[RatVector], c: &[i64], dim: usize) -> RatVector {
    let mut v = RatVector::zero(Field::Rational, dim);
    for (s, &k) in simple.iter().zip(c) {
        if k != 0 {
            v = v.add(&s.scale(&Scalar::from_i64(k))).expect("same dimension");
        }
    }
    v
}

fn to_big(s: &Scalar) -> BigRational {
    s.as_rational().cloned().expect("rational scalar")
}

fn integer_gram(simple: &[RatVector]) -> Result<Vec<Vec<i64>>> {
    let n = simple.len();
    let mut g = vec![vec![BigRational::zero(); n]; n];
    let mut l = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            g[i][j] = to_big(&inner_product(&simple[i], &simple[j])?);
            l = l.lcm(g[i][j].denom());
        }
    }
    let lq = BigRational::from_integer(l);
    Ok(g.iter()
        .map(|row| row.iter().map(|x| (x * &lq).to_integer().to_i64().expect("small")).collect())
        .collect())
}

/// A diagram node: a label and the squared length of its vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramNode {
    pub label: String,
    pub norm: BigRational,
}

/// An edge with bond multiplicity `4(a,b)^2/(|a|^2|b|^2)`. When the lengths
/// differ, `long` names the endpoint the arrow points away from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEdge {
    pub a: usize,
    pub b: usize,
    pub bond: u8,
    pub long: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

impl DynkinDiagram {
    pub fn from_vectors(labels: Vec<String>, vectors: &[RatVector]) -> Result<Self> {
        let norms: Vec<BigRational> = vectors
            .iter()
            .map(|v| inner_product(v, v).map(|s| to_big(&s)))
            .collect::<Result<_>>()?;
        let mut edges = Vec::new();
        for a in 0..vectors.len() {
            for b in a + 1..vectors.len() {
                let ip = to_big(&inner_product(&vectors[a], &vectors[b])?);
                if ip.is_zero() {
                    continue;
                }
                let m = BigRational::from_integer(4.into()) * &ip * &ip / (&norms[a] * &norms[b]);
                let bond = match m.to_integer().to_u8() {
                    Some(k @ 1..=4) if m.is_integer() => k,
                    _ => return Err(Error::NotCrystallographic("bond is not 1, 2, 3 or 4".into())),
                };
                let long = match norms[a].cmp(&norms[b]) {
                    Ordering::Greater => Some(a),
                    Ordering::Less => Some(b),
                    Ordering::Equal => None,
                };
                edges.push(DiagramEdge { a, b, bond, long });
            }
        }
        let nodes = labels.into_iter().zip(norms).map(|(label, norm)| DiagramNode { label, norm }).collect();
        Ok(DynkinDiagram { nodes, edges })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bond(&self, a: usize, b: usize) -> u8 {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
            .map_or(0, |e| e.bond)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected components, each sorted, in order of smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The diagram restricted to `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> DynkinDiagram {
        let pos = |v: usize| keep.iter().position(|&k| k == v);
        let nodes = keep.iter().map(|&k| self.nodes[k].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let (a, b) = (pos(e.a)?, pos(e.b)?);
                Some(DiagramEdge { a, b, bond: e.bond, long: e.long.and_then(pos) })
            })
            .collect();
        DynkinDiagram { nodes, edges }
    }
}

/// Names each connected component. Rank-2 double bonds are reported as `B2`.
pub fn classify_diagram(d: &DynkinDiagram) -> Result<Vec<CartanLabel>> {
    let mut out = Vec::new();
    for comp in d.components() {
        out.push(classify_component(&d.induced(&comp))?);
    }
    out.sort();
    Ok(out)
}

fn classify_component(d: &DynkinDiagram) -> Result<CartanLabel> {
    use CartanType::*;
    let n = d.len();
    let fail = |why: &str| Err(Error::NotCrystallographic(why.to_string()));
    if n == 1 {
        return Ok(CartanLabel::new(A, 1));
    }
    if d.edges.len() != n - 1 {
        return fail("diagram has a cycle");
    }
    if d.edges.iter().any(|e| e.bond == 4) {
        return fail("infinite bond");
    }
    if d.edges.iter().any(|e| e.bond == 3) {
        return if n == 2 { Ok(CartanLabel::new(G, 2)) } else { fail("triple bond in rank > 2") };
    }
    let degree: Vec<usize> = (0..n).map(|v| d.neighbors(v).len()).collect();
    let doubles: Vec<&DiagramEdge> = d.edges.iter().filter(|e| e.bond == 2).collect();
    match doubles.len() {
        0 => {}
        1 => {
            if degree.iter().any(|&k| k > 2) {
                return fail("branched diagram with a double bond");
            }
            if n == 2 {
                return Ok(CartanLabel::new(B, 2));
            }
            let e = doubles[0];
            let end = if degree[e.a] == 1 {
                Some(e.a)
            } else if degree[e.b] == 1 {
                Some(e.b)
            } else {
                None
            };
            return match end {
                Some(v) if e.long == Some(v) => Ok(CartanLabel::new(C, n)),
                Some(_) => Ok(CartanLabel::new(B, n)),
                None if n == 4 => Ok(CartanLabel::new(F, 4)),
                None => fail("interior double bond"),
            };
        }
        _ => return fail("several double bonds"),
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => Ok(CartanLabel::new(A, n)),
        [c] if degree[*c] == 3 => {
            let mut arms: Vec<usize> = d.neighbors(*c).iter().map(|&s| arm_length(d, *c, s)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(CartanLabel::new(D, n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok(CartanLabel::new(E, n)),
                _ => fail("unknown branched diagram"),
            }
        }
        _ => fail("unknown branched diagram"),
    }
}

fn arm_length(d: &DynkinDiagram, from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = d.neighbors(cur).into_iter().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// The simple system extended by the negative of the highest root.
pub fn extended_diagram(rs: &RootSystem) -> Result<DynkinDiagram> {
    let theta = rs.highest_root().ok_or(Error::ReducibleSystem)?;
    let mut idx: Vec<usize> = rs.simple_indices().collect();
    idx.push(rs.negate(theta));
    rs.diagram_of(&idx)
}

/// The system of coroots `2a/(a,a)`.
pub fn dual_system(rs: &RootSystem) -> Result<RootSystem> {
    let simple = rs.simple_vectors().iter().map(coroot).collect::<Result<Vec<_>>>()?;
    RootSystem::from_simple_vectors(simple)
}

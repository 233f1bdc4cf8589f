//! Character tables and character identification.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::roots::{CartanLabel, CartanType};
use crate::weyl::{conjugacy_classes, ElemId, WeylGroup};

/// Class representatives of W(D4), as words in the simple reflections.
pub const D4_CLASS_WORDS: [&str; 13] = [
    "e",
    "2",
    "1 2",
    "1 3 2",
    "1 2 1 3 2 1",
    "1 4 2",
    "1 2 1 4 2 1",
    "3 4 2",
    "2 3 2 4 2 3",
    "1 3 4 2",
    "1 2 1 3 2 1 4 2 1 3 2 4",
    "2 1 3 4 2",
    "2 1 4 2 1 3",
];

/// The thirteen irreducible characters of W(D4), one value per class above.
pub const D4_ROWS: [[i64; 13]; 13] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1, 1, 1, 1, -1, 1],
    [2, 0, -1, 0, 2, 0, 2, 0, 2, -1, 2, 0, 2],
    [3, 1, 0, 1, 3, -1, -1, -1, -1, 0, 3, 1, -1],
    [3, 1, 0, -1, -1, -1, -1, 1, 3, 0, 3, 1, -1],
    [3, -1, 0, -1, 3, 1, -1, 1, -1, 0, 3, -1, -1],
    [3, -1, 0, 1, -1, 1, -1, -1, 3, 0, 3, -1, -1],
    [3, -1, 0, 1, -1, -1, 3, 1, -1, 0, 3, -1, -1],
    [3, 1, 0, -1, -1, 1, 3, -1, -1, 0, 3, 1, -1],
    [4, -2, 1, 0, 0, 0, 0, 0, 0, -1, -4, 2, 0],
    [4, 2, 1, 0, 0, 0, 0, 0, 0, -1, -4, -2, 0],
    [6, 0, 0, 0, -2, 0, -2, 0, -2, 0, 6, 0, 2],
    [8, 0, -1, 0, 0, 0, 0, 0, 0, 1, -8, 0, 0],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterRow {
    pub label: String,
    pub values: Vec<i64>,
}

/// Outcome of [`CharacterTable::identify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identification {
    Irreducible(String),
    /// Nonzero multiplicities in table order.
    Decomposition(Vec<(String, u64)>),
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Irreducible(l) => f.write_str(l),
            Identification::Decomposition(parts) if parts.is_empty() => f.write_str("0"),
            Identification::Decomposition(parts) => {
                for (i, (l, m)) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if *m == 1 {
                        write!(f, "{l}")?;
                    } else {
                        write!(f, "{m}{l}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Conjugation orbit sizes of `reps`, which must lie in distinct classes.
pub fn class_sizes(g: &WeylGroup, reps: &[ElemId]) -> Result<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut sizes = Vec::with_capacity(reps.len());
    for &r in reps {
        let orbit: BTreeSet<ElemId> = g.elements().map(|w| g.conjugate(w, r)).collect();
        if orbit.iter().any(|x| seen.contains(x)) {
            return Err(Error::ClassesNotDistinct);
        }
        sizes.push(orbit.len());
        seen.extend(orbit);
    }
    Ok(sizes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group_order: usize,
    words: Vec<String>,
    reps: Vec<ElemId>,
    sizes: Vec<usize>,
    rows: Vec<CharacterRow>,
}

/// The built-in W(D4) table with rows `χ1`..`χ13`.
pub fn d4_table(g: &WeylGroup) -> Result<CharacterTable> {
    let label = g.root_system().label();
    if label.0 != [CartanLabel::new(CartanType::D, 4)] {
        return Err(Error::UnsupportedLabel(label.to_string()));
    }
    let rows = D4_ROWS
        .iter()
        .enumerate()
        .map(|(i, r)| CharacterRow { label: format!("χ{}", i + 1), values: r.to_vec() })
        .collect();
    CharacterTable::new(g, &D4_CLASS_WORDS, rows)
}

impl CharacterTable {
    /// Checks that `words` name every class exactly once; row values are not validated here.
    pub fn new(g: &WeylGroup, words: &[&str], rows: Vec<CharacterRow>) -> Result<CharacterTable> {
        let reps = words.iter().map(|w| g.parse_word(w)).collect::<Result<Vec<_>>>()?;
        let sizes = class_sizes(g, &reps)?;
        let total = conjugacy_classes(g).len();
        if reps.len() != total {
            return Err(Error::ClassCountMismatch { expected: total, got: reps.len() });
        }
        for r in &rows {
            if r.values.len() != reps.len() {
                return Err(Error::DimensionMismatch { left: reps.len(), right: r.values.len() });
            }
        }
        Ok(CharacterTable {
            group_order: g.order(),
            words: words.iter().map(|w| w.to_string()).collect(),
            reps,
            sizes,
            rows,
        })
    }

    /// Same classes, different rows.
    pub fn with_rows(&self, rows: Vec<CharacterRow>) -> Result<CharacterTable> {
        for r in &rows {
            if r.values.len() != self.reps.len() {
                return Err(Error::DimensionMismatch { left: self.reps.len(), right: r.values.len() });
            }
        }
        Ok(CharacterTable { rows, ..self.clone() })
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn representatives(&self) -> &[ElemId] {
        &self.reps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn rows(&self) -> &[CharacterRow] {
        &self.rows
    }

    pub fn row(&self, label: &str) -> Option<&CharacterRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// `(1/|W|) sum |C| a(C) b(C)`.
    pub fn inner_product(&self, a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
        self.inner_product_q(a, b).map(Scalar::from)
    }

    fn inner_product_q(&self, a: &[Scalar], b: &[Scalar]) -> Result<BigRational> {
        if a.len() != self.reps.len() || b.len() != self.reps.len() {
            return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
        }
        let mut acc = BigRational::zero();
        for ((x, y), &s) in a.iter().zip(b).zip(&self.sizes) {
            let x = x.as_rational().ok_or(Error::FieldMismatch(x.field(), crate::exact::Field::Rational))?;
            let y = y.as_rational().ok_or(Error::FieldMismatch(y.field(), crate::exact::Field::Rational))?;
            acc += x * y * BigRational::from_integer(BigInt::from(s));
        }
        Ok(acc / BigRational::from_integer(BigInt::from(self.group_order)))
    }

    pub fn norm(&self, psi: &[Scalar]) -> Result<Scalar> {
        self.inner_product(psi, psi)
    }

    /// Row orthonormality and `sum chi(e)^2 = |W|`.
    pub fn self_check(&self) -> Result<()> {
        let as_scalars: Vec<Vec<Scalar>> = self.rows.iter().map(|r| scalars(&r.values)).collect();
        for (i, a) in as_scalars.iter().enumerate() {
            for (j, b) in as_scalars.iter().enumerate() {
                let ip = self.inner_product_q(a, b)?;
                let want = if i == j { 1 } else { 0 };
                if ip != BigRational::from_integer(BigInt::from(want)) {
                    return Err(Error::TableCheck(format!(
                        "<{},{}> = {ip}, expected {want}",
                        self.rows[i].label, self.rows[j].label
                    )));
                }
            }
        }
        let degrees: i64 = self.rows.iter().map(|r| r.values[0] * r.values[0]).sum();
        if degrees != self.group_order as i64 {
            return Err(Error::TableCheck(format!("sum of squared degrees is {degrees}, not {}", self.group_order)));
        }
        Ok(())
    }

    /// Exact row match, else the multiplicities of each row in `psi`.
    pub fn identify(&self, psi: &[Scalar]) -> Result<Identification> {
        if psi.len() != self.reps.len() {
            return Err(Error::DimensionMismatch { left: self.reps.len(), right: psi.len() });
        }
        let ints: Option<Vec<i64>> = psi.iter().map(Scalar::to_i64).collect();
        if let Some(v) = &ints {
            if let Some(r) = self.rows.iter().find(|r| &r.values == v) {
                return Ok(Identification::Irreducible(r.label.clone()));
            }
        }
        let mut parts = Vec::new();
        for r in &self.rows {
            let m = self.inner_product_q(psi, &scalars(&r.values))?;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::NonIntegralDecomposition);
            }
            let m = m.to_integer().to_u64().ok_or(Error::NonIntegralDecomposition)?;
            if m > 0 {
                parts.push((r.label.clone(), m));
            }
        }
        Ok(Identification::Decomposition(parts))
    }

    /// Aligned text with a class header and a size line.
    pub fn render(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut head = Vec::from(["".to_string()]);
        head.extend((1..=self.reps.len()).map(|i| format!("C{i}")));
        grid.push(head);
        let mut size = Vec::from(["|C|".to_string()]);
        size.extend(self.sizes.iter().map(|s| s.to_string()));
        grid.push(size);
        for r in &self.rows {
            let mut line = Vec::from([r.label.clone()]);
            line.extend(r.values.iter().map(|v| v.to_string()));
            grid.push(line);
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in &grid {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (s, &w))| {
                    let pad = w - s.chars().count();
                    if i == 0 {
                        format!("{s}{}", " ".repeat(pad))
                    } else {
                        format!("{}{s}", " ".repeat(pad))
                    }
                })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        for (i, w) in self.words.iter().enumerate() {
            out.push_str(&format!("C{}: {}\n", i + 1, w));
        }
        out
    }
}

/// Parses rows written as `label v1 v2 ...`, one per line; `#` starts a comment.
pub fn parse_rows(text: &str) -> Result<Vec<CharacterRow>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty());
        let label = it.next().unwrap_or_default().trim_end_matches(':').to_string();
        let values = it
            .map(|v| v.replace('−', "-").parse::<i64>().map_err(|_| Error::TableCheck(format!("bad entry {v:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(CharacterRow { label, values });
    }
    Ok(rows)
}

pub fn scalars(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| Scalar::from_i64(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_system;
    use crate::weyl::enumerate_group;
    use alloc::vec;

    fn group(s: &str) -> WeylGroup {
        enumerate_group(build_root_system(s.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn d4_table_is_consistent() {
        let g = group("D4");
        let t = d4_table(&g).unwrap();
        t.self_check().unwrap();
        assert_eq!(t.sizes(), &[1, 12, 32, 24, 6, 24, 6, 24, 6, 32, 1, 12, 12]);
        assert_eq!(t.sizes().iter().sum::<usize>(), 192);
        assert_eq!(t.row("χ13").unwrap().values[0], 8);
        for r in t.rows() {
            assert_eq!(t.identify(&scalars(&r.values)).unwrap(), Identification::Irreducible(r.label.clone()));
        }
    }

    #[test]
    fn decomposition() {
        let g = group("D4");
        let t = d4_table(&g).unwrap();
        let sum: Vec<i64> = D4_ROWS[0].iter().zip(&D4_ROWS[1]).map(|(a, b)| a + b).collect();
        let id = t.identify(&scalars(&sum)).unwrap();
        assert_eq!(id, Identification::Decomposition(vec![("χ1".into(), 1), ("χ2".into(), 1)]));
        assert_eq!(id.to_string(), "χ1 + χ2");
        let mut odd = vec![0i64; 13];
        odd[0] = 1;
        assert_eq!(t.identify(&scalars(&odd)), Err(Error::NonIntegralDecomposition));
    }

    #[test]
    fn corrupted_table_fails_check() {
        let g = group("D4");
        let t = d4_table(&g).unwrap();
        let mut rows = t.rows().to_vec();
        rows[3].values[1] = -1;
        assert!(matches!(t.with_rows(rows).unwrap().self_check(), Err(Error::TableCheck(_))));
    }

    #[test]
    fn class_size_errors() {
        let g = group("A1");
        assert_eq!(class_sizes(&g, &[g.identity()]).unwrap(), vec![1]);
        let g = group("D4");
        let t2 = g.parse_word("2").unwrap();
        let t1 = g.parse_word("1").unwrap();
        assert_eq!(class_sizes(&g, &[t2, t1]), Err(Error::ClassesNotDistinct));
    }

    #[test]
    fn row_parsing() {
        let rows = parse_rows("# header\nχ1: 1 1\nχ2 1, −1\n").unwrap();
        assert_eq!(rows[1].values, vec![1, -1]);
        assert!(parse_rows("x 1 y").is_err());
    }
}

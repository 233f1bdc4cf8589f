//! Exact scalars, vectors and matrices over Q or a small prime field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field every module-level computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Builds the prime field of order `p`, rejecting composites.
    pub fn prime(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                residue: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field. Fails when the denominator vanishes mod p.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => reduce_mod(q, p)
                .map(|residue| Scalar::Modular { residue, modulus: p })
                .ok_or(Error::DenominatorVanishes(p)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_mod(q: &BigRational, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor(&pb).to_u64()?;
    let den = q.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let inv = mod_inverse(den, p as u64)?;
    Some(((num * inv) % p as u64) as u32)
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(p as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(p as i128) as u64)
}

/// A field element. Rational values are kept in lowest terms, residues in `0..p`.
///
/// Mixing a rational with a residue coerces the rational into the prime field.
/// Mixing two different primes is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { residue: u32, modulus: u32 },
}

impl Scalar {
    pub fn from_i64(n: i64) -> Self {
        Field::Rational.from_i64(n)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    /// The rational value, if this scalar lives in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Integer value for rationals with denominator 1, or the residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { residue, .. } => Some(*residue as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_positive())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: mod_inverse(*residue as u64, *modulus as u64)? as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        Some(self * &rhs.inverse()?)
    }

    /// Brings `self` into `field`. Used when a rational meets a residue.
    pub fn into_field(self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (s @ Scalar::Rational(_), Field::Rational) => Ok(s),
            (Scalar::Rational(q), f @ Field::Prime(_)) => f.from_rational(&q),
            (s @ Scalar::Modular { modulus, .. }, Field::Prime(p)) if modulus == p => Ok(s),
            (s, f) => Err(Error::FieldMismatch(s.field(), f)),
        }
    }

    fn binary(
        a: &Scalar,
        b: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        modp: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(rat(x, y)),
            (Scalar::Modular { residue: x, modulus: p }, Scalar::Modular { residue: y, modulus: q }) => {
                assert_eq!(p, q, "scalars from different prime fields");
                Scalar::Modular {
                    residue: modp(*x as u64, *y as u64, *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rational(x), m @ Scalar::Modular { modulus, .. }) => {
                let x = Field::Prime(*modulus)
                    .from_rational(x)
                    .expect("rational not representable mod p");
                Scalar::binary(&x, m, rat, modp)
            }
            (m @ Scalar::Modular { modulus, .. }, Scalar::Rational(y)) => {
                let y = Field::Prime(*modulus)
                    .from_rational(y)
                    .expect("rational not representable mod p");
                Scalar::binary(m, &y, rat, modp)
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::binary(self, rhs, |x, y| x + y, |x, y, p| (x + y) % p)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::binary(self, rhs, |x, y| x - y, |x, y, p| (x + p - y) % p)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::binary(self, rhs, |x, y| x * y, |x, y, p| (x * y) % p)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// A coordinate vector. All coordinates share one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector {
    coords: Vec<Scalar>,
}

impl RatVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        RatVector { coords }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        RatVector::new(values.iter().map(|&v| Scalar::from_i64(v)).collect())
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        RatVector::new(vec![field.zero(); dim])
    }

    /// The `i`-th standard basis vector over Q.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = RatVector::zero(Field::Rational, dim);
        v.coords[i] = Scalar::from_i64(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &RatVector) -> Result<RatVector> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatVector) -> Result<RatVector> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> RatVector {
        RatVector::new(self.coords.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector::new(self.coords.iter().map(|x| -x).collect())
    }

    fn zip(&self, other: &RatVector, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<RatVector> {
        check_dims(self.dim(), other.dim())?;
        Ok(RatVector::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        ))
    }
}

impl Index<usize> for RatVector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

/// Euclidean inner product.
pub fn inner_product(a: &RatVector, b: &RatVector) -> Result<Scalar> {
    check_dims(a.dim(), b.dim())?;
    let mut acc = match a.coords.first() {
        Some(x) => x.field().zero(),
        None => Scalar::from_i64(0),
    };
    for (x, y) in a.coords.iter().zip(&b.coords) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x * y;
        }
    }
    Ok(acc)
}

/// A dense rectangular matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl RatMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = RatMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Stacks `rows` as a matrix with `cols` columns.
    pub fn from_rows(cols: usize, rows: Vec<RatVector>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            check_dims(cols, r.dim())?;
            data.extend(r.coords);
        }
        Ok(RatMatrix { rows: n, cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        RatMatrix::from_rows(cols, rows.iter().map(|r| RatVector::from_i64s(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> RatVector {
        RatVector::new(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        RatMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        check_dims(self.cols, other.rows)?;
        let field = self.data.first().or(other.data.first()).map_or(Field::Rational, Scalar::field);
        let mut out = RatMatrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.data.first().map_or(Scalar::from_i64(0), |x| x.field().zero());
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. The pivot for each column is the first row
/// (in current order) with a nonzero entry there.
pub fn row_echelon(m: &RatMatrix) -> Echelon {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inverse().expect("pivot is nonzero");
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let t = a.get(r, j);
                if !t.is_zero() {
                    let v = a.get(i, j) - &(&f * t);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, rank: r, pivots }
}

pub fn rank(m: &RatMatrix) -> usize {
    row_echelon(m).rank
}

/// A basis of the right null space `{x : m x = 0}`.
pub fn kernel(m: &RatMatrix) -> Vec<RatVector> {
    let field = m.data.first().map_or(Field::Rational, Scalar::field);
    let ech = row_echelon(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = RatVector::zero(field, m.cols);
        v.coords[free] = field.one();
        for (i, &p) in ech.pivots.iter().enumerate() {
            v.coords[p] = -ech.matrix.get(i, free);
        }
        out.push(v);
    }
    out
}

/// Solves `x · basis = v` for a linearly independent `basis`; `None` if `v`
/// is outside the span.
pub fn solve_in_basis(basis: &[RatVector], v: &RatVector) -> Option<Vec<Scalar>> {
    let field = v.coords.first().map_or(Field::Rational, Scalar::field);
    let n = basis.len();
    let dim = v.dim();
    // Columns are basis vectors, augmented with v.
    let mut m = RatMatrix::zeros(field, dim, n + 1);
    for (j, b) in basis.iter().enumerate() {
        if b.dim() != dim {
            return None;
        }
        for i in 0..dim {
            m.set(i, j, b[i].clone());
        }
    }
    for i in 0..dim {
        m.set(i, n, v[i].clone());
    }
    let ech = row_echelon(&m);
    if ech.pivots.last() == Some(&n) || ech.pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| ech.matrix.get(i, n).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn inner_product_examples() {
        let e1 = RatVector::from_i64s(&[1, 0, 0, 0]);
        assert_eq!(inner_product(&e1, &e1).unwrap(), Scalar::from_i64(1));
        let a = RatVector::from_i64s(&[1, -1, 0, 0]);
        let b = RatVector::from_i64s(&[0, 1, -1, 0]);
        assert_eq!(inner_product(&a, &b).unwrap(), Scalar::from_i64(-1));
        assert!(matches!(
            inner_product(&a, &RatVector::from_i64s(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rationals_stay_reduced() {
        let x = q(2, 4) + q(1, 6);
        assert_eq!(x, q(2, 3));
        assert_eq!(x.to_string(), "2/3");
        assert_eq!((q(1, 2) * q(2, 1)).to_string(), "1");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(5);
        let b = f.from_i64(4);
        assert_eq!((&a + &b).to_i64(), Some(2));
        assert_eq!((&a - &b).to_i64(), Some(1));
        assert_eq!((&a * &b).to_i64(), Some(6));
        assert_eq!(a.inverse().unwrap().to_i64(), Some(3));
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap().to_i64(), Some(4));
        assert!(Field::prime(9).is_err());
        assert!(Field::Prime(3).from_rational(&BigRational::new(1.into(), 3.into())).is_err());
    }

    #[test]
    fn mixed_scalars_coerce_into_prime_field() {
        let f = Field::Prime(5);
        let x = &f.from_i64(2) + &Scalar::from_i64(4);
        assert_eq!(x, f.from_i64(1));
    }

    #[test]
    fn echelon_basics() {
        let z = RatMatrix::zeros(Field::Rational, 3, 4);
        assert_eq!(rank(&z), 0);
        assert_eq!(kernel(&z).len(), 4);
        let id = RatMatrix::identity(Field::Rational, 4);
        assert_eq!(rank(&id), 4);
        assert!(kernel(&id).is_empty());
        let m = RatMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).unwrap();
        let e = row_echelon(&m);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivots, vec![0, 1]);
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        for r in 0..3 {
            assert!(inner_product(&m.row(r), &k[0]).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_depends_on_field() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(rank(&m), 2);
        let f = Field::Prime(2);
        let mut m2 = RatMatrix::zeros(f, 2, 2);
        for r in 0..2 {
            for c in 0..2 {
                m2.set(r, c, m.get(r, c).clone().into_field(f).unwrap());
            }
        }
        assert_eq!(rank(&m2), 1);
    }

    #[test]
    fn solve_recovers_coefficients() {
        let b = [RatVector::from_i64s(&[1, -1, 0]), RatVector::from_i64s(&[0, 1, -1])];
        let v = RatVector::from_i64s(&[2, -1, -1]);
        assert_eq!(solve_in_basis(&b, &v).unwrap(), vec![Scalar::from_i64(2), Scalar::from_i64(1)]);
        assert!(solve_in_basis(&b, &RatVector::from_i64s(&[1, 0, 0])).is_none());
    }
}

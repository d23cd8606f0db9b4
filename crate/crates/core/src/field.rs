//! Finite fields `F_{p^k}` and dense matrices over them.
//!
//! Elements are `u32` codes: the coefficient vector `(c_0, ..., c_{k-1})` of a residue
//! polynomial packed as `Σ c_i p^i`. The prime field is the range `0..p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest field size handled (log/exp tables are built eagerly).
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    degree: u32,
    q: u32,
    /// monic, low-to-high, length `degree + 1`
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}[{:?}]", self.p, self.degree, self.modulus)
    }
}

/// Wire form of a field: characteristic, degree and defining polynomial (low-to-high, monic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    #[serde(default = "one")]
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic `m` over `F_p` (low-to-high coefficients).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 || poly[deg] != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(poly, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// The first monic irreducible polynomial of the given degree, in lexicographic order of
/// `(c_{k-1}, ..., c_0)` read as a base-`p` number.
pub fn default_modulus(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    for code in 0..count {
        let mut f = Vec::with_capacity(degree as usize + 1);
        let mut c = code;
        for _ in 0..degree {
            f.push((c % p as u64) as u32);
            c /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteField {
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        Self::check_size(p, degree)?;
        Self::with_modulus(p, default_modulus(p, degree))
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Smallest extension of `F_p` with at least `min_size` elements.
    pub fn at_least(p: u32, min_size: u32) -> Result<Self> {
        let mut k = 1;
        while (p as u64).pow(k) < min_size as u64 {
            k += 1;
        }
        Self::new(p, k)
    }

    fn check_size(p: u32, degree: u32) -> Result<u32> {
        let q = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE as u64 {
            return Err(Error::InvalidField(format!(
                "field of size {p}^{degree} is too large"
            )));
        }
        Ok(q as u32)
    }

    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "bad defining polynomial {modulus:?}"
            )));
        }
        let degree = (modulus.len() - 1) as u32;
        let q = Self::check_size(p, degree)?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "{modulus:?} is not irreducible over F_{p}"
            )));
        }
        let mut field = FiniteField {
            p,
            degree,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        match &d.modulus {
            Some(m) => {
                if m.len() as u32 != d.degree + 1 {
                    return Err(Error::InvalidField("modulus degree does not match".into()));
                }
                Self::with_modulus(d.p, m.clone())
            }
            None => Self::new(d.p, d.degree),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            degree: self.degree,
            modulus: Some(self.modulus.clone()),
        }
    }

    fn decode(&self, a: Elem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut c = a;
        for _ in 0..self.degree {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> Elem {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = vec![0u32; x.len() + y.len()];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        let mut r = r;
        r.resize(self.degree as usize, 0);
        self.encode(&r)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = q - 1;
        // prime factors of q - 1 for the primitivity test
        let mut factors = Vec::new();
        let mut n = order;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                factors.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        let pow = |f: &Self, a: Elem, mut e: u32| {
            let mut base = a;
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = f.slow_mul(acc, base);
                }
                base = f.slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let gen = (1..q)
            .find(|&g| factors.iter().all(|&f| pow(self, g, order / f) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0; order as usize];
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for i in 0..order {
            exp[i as usize] = x;
            log[x as usize] = i;
            x = self.slow_mul(x, gen);
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> {
        1..self.q
    }

    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.degree == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.degree == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % order) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    /// `a^e` for any integer `e`; `0^e` with `e < 0` is reported as `None`.
    pub fn pow(&self, a: Elem, e: i64) -> Option<Elem> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => None,
                std::cmp::Ordering::Equal => Some(1),
                std::cmp::Ordering::Greater => Some(0),
            };
        }
        let order = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(order)).rem_euclid(order);
        Some(self.exp[l as usize])
    }

    pub fn scalar_multiple(&self, a: Elem, n: i64) -> Elem {
        self.mul(a, self.from_int(n))
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, a: Elem) -> u32 {
        assert_ne!(a, 0);
        let order = self.q - 1;
        let l = self.log[a as usize];
        order / crate::intmat::gcd(order as i64, l as i64) as u32
    }
}

/// Dense matrix over a finite field; the field is passed to every arithmetic operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<Elem>>", into = "Vec<Vec<Elem>>")]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl From<Vec<Vec<Elem>>> for FqMatrix {
    fn from(rows: Vec<Vec<Elem>>) -> Self {
        FqMatrix::from_rows(&rows)
    }
}

impl From<FqMatrix> for Vec<Vec<Elem>> {
    fn from(m: FqMatrix) -> Self {
        m.to_rows()
    }
}

impl std::ops::Index<(usize, usize)> for FqMatrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FqMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}

impl FqMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn diagonal(entries: &[Elem]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        FqMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_rows_with_cols(rows: &[Vec<Elem>], cols: usize) -> Self {
        if rows.is_empty() {
            return Self::zeros(0, cols);
        }
        Self::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == FqMatrix::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FqMatrix {
        let mut out = FqMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    pub fn mul(&self, other: &FqMatrix, f: &FiniteField) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = FqMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = f.add(out[(i, j)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem], f: &FiniteField) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &FqMatrix, f: &FiniteField) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FqMatrix, f: &FiniteField) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Elem, f: &FiniteField) -> FqMatrix {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, e: u64, f: &FiniteField) -> FqMatrix {
        assert!(self.is_square());
        let mut acc = FqMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &FiniteField) -> (FqMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| a[(i, c)] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, r * a.cols + j);
                }
            }
            let inv = f.inv(a[(r, c)]).unwrap();
            for j in 0..a.cols {
                a[(r, j)] = f.mul(a[(r, j)], inv);
            }
            for i in 0..a.rows {
                if i != r && a[(i, c)] != 0 {
                    let factor = a[(i, c)];
                    for j in 0..a.cols {
                        let v = f.mul(factor, a[(r, j)]);
                        a[(i, j)] = f.sub(a[(i, j)], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis (rows) of the right kernel `{x : self · x = 0}`, in reduced echelon form.
    pub fn nullspace(&self, f: &FiniteField) -> FqMatrix {
        let (r, pivots) = self.rref(f);
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r[(i, fc)]);
            }
            basis.push(v);
        }
        let b = FqMatrix::from_rows_with_cols(&basis, n);
        echelon_rows(&b, f)
    }

    pub fn inverse(&self, f: &FiniteField) -> Option<FqMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FqMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = 1;
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FqMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    pub fn det(&self, f: &FiniteField) -> Elem {
        assert!(self.is_square());
        let mut a = self.clone();
        let n = self.rows;
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| a[(i, c)] != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    a.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a[(c, c)];
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for i in c + 1..n {
                if a[(i, c)] != 0 {
                    let factor = f.mul(a[(i, c)], inv);
                    for j in c..n {
                        let v = f.mul(factor, a[(c, j)]);
                        a[(i, j)] = f.sub(a[(i, j)], v);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(x·I - self)`, low-to-high and monic,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self, f: &FiniteField) -> Vec<Elem> {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        // similarity transforms to Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(pr) = (c + 1..n).find(|&i| h[(i, c)] != 0) else {
                continue;
            };
            if pr != c + 1 {
                for j in 0..n {
                    h.data.swap(pr * n + j, (c + 1) * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + pr, i * n + c + 1);
                }
            }
            let inv = f.inv(h[(c + 1, c)]).unwrap();
            for i in c + 2..n {
                let m = f.mul(h[(i, c)], inv);
                if m == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(m, h[(c + 1, j)]);
                    h[(i, j)] = f.sub(h[(i, j)], v);
                }
                for k in 0..n {
                    let v = f.mul(m, h[(k, i)]);
                    h[(k, c + 1)] = f.add(h[(k, c + 1)], v);
                }
            }
        }
        // p_k = char poly of leading k×k block
        let mut polys: Vec<Vec<Elem>> = vec![vec![1]];
        for k in 1..=n {
            let i = k - 1;
            // p_k = (x - h_ii) p_{k-1} - Σ_{j<i} h_ji (Π_{m=j+1}^{i} h_{m,m-1}) p_j
            let mut pk = vec![0; k + 1];
            for (d, &c) in polys[k - 1].iter().enumerate() {
                pk[d + 1] = f.add(pk[d + 1], c);
                pk[d] = f.sub(pk[d], f.mul(h[(i, i)], c));
            }
            let mut prod = 1;
            for j in (0..i).rev() {
                prod = f.mul(prod, h[(j + 1, j)]);
                let coeff = f.mul(h[(j, i)], prod);
                if coeff != 0 {
                    for (d, &c) in polys[j].iter().enumerate() {
                        pk[d] = f.sub(pk[d], f.mul(coeff, c));
                    }
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }

    /// Whether the row vector `v` lies in the row space of `self`.
    pub fn row_space_contains(&self, v: &[Elem], f: &FiniteField) -> bool {
        let mut rows = self.to_rows();
        rows.push(v.to_vec());
        FqMatrix::from_rows_with_cols(&rows, self.cols).rank(f) == self.rank(f)
    }
}

/// Row-reduced echelon basis of the row space (zero rows removed).
pub fn echelon_rows(m: &FqMatrix, f: &FiniteField) -> FqMatrix {
    let (r, pivots) = m.rref(f);
    let rows: Vec<Vec<Elem>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    FqMatrix::from_rows_with_cols(&rows, m.ncols())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_irreducible() {
        for p in [2, 3, 5, 7] {
            for k in 1..=4 {
                let f = FiniteField::new(p, k).unwrap();
                assert_eq!(f.size(), p.pow(k));
                assert!(is_irreducible(f.modulus(), p));
            }
        }
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(FiniteField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FiniteField::new(4, 1).is_err());
    }

    #[test]
    fn field_axioms_f9() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        assert_eq!(f.unit_order(f.generator()), 8);
    }

    #[test]
    fn charpoly_companion() {
        let f = FiniteField::prime(2).unwrap();
        let m = FqMatrix::from_rows(&[vec![0, 1], vec![1, 1]]);
        assert_eq!(m.charpoly(&f), vec![1, 1, 1]);
        let f5 = FiniteField::prime(5).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 2, 3], vec![0, 4, 1], vec![2, 2, 2]]);
        // det(xI - M) evaluated at x = 0 equals -det(M) for odd size
        let cp = m.charpoly(&f5);
        assert_eq!(cp[0], f5.neg(m.det(&f5)));
        assert_eq!(cp[3], 1);
    }

    #[test]
    fn inverse_and_nullspace() {
        let f = FiniteField::new(2, 2).unwrap();
        let m = FqMatrix::from_rows(&[vec![1, 2], vec![3, 1]]);
        if let Some(inv) = m.inverse(&f) {
            assert!(m.mul(&inv, &f).is_identity());
        } else {
            assert_eq!(m.det(&f), 0);
        }
        let z = FqMatrix::from_rows(&[vec![1, 1, 0]]);
        let ns = z.nullspace(&f);
        assert_eq!(ns.nrows(), 2);
        for i in 0..ns.nrows() {
            assert!(z.mul_vec(ns.row(i), &f).iter().all(|&x| x == 0));
        }
    }
}

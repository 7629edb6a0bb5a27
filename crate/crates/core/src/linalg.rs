//! Prime-field arithmetic and dense Gaussian elimination.
//!
//! Every generic-rank query in the crate bottoms out here: a generic matrix
//! is evaluated at random points of `F_p` and its rank is computed exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = (1u64 << 61) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} must be below 2^63")]
    TooLarge(u64),
}

/// A prime field `F_p` with `p < 2^63`, so that sums of two reduced values
/// never overflow a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    modulus: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            modulus: DEFAULT_PRIME,
        }
    }
}

/// An element of a [`PrimeField`]; always reduced into `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl PrimeField {
    pub fn new(modulus: u64) -> Result<Self, FieldError> {
        if modulus >= 1u64 << 63 {
            return Err(FieldError::TooLarge(modulus));
        }
        if !is_prime(modulus) {
            return Err(FieldError::NotPrime(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn element(&self, value: u64) -> FieldElement {
        FieldElement(value % self.modulus)
    }

    pub fn from_i64(&self, value: i64) -> FieldElement {
        let m = self.modulus as i128;
        FieldElement((value as i128).rem_euclid(m) as u64)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 + b.0;
        FieldElement(if s >= self.modulus { s - self.modulus } else { s })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 >= b.0 {
            FieldElement(a.0 - b.0)
        } else {
            FieldElement(a.0 + self.modulus - b.0)
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.modulus - a.0)
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(mul_mod(a.0, b.0, self.modulus))
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        FieldElement(pow_mod(a.0, exp, self.modulus))
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.modulus - 2))
        }
    }

    /// Uniform element of the field.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.modulus))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Row-major dense matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds a matrix from signed integer rows. Panics on ragged input.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> FieldElement {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: FieldElement) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[FieldElement] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [FieldElement] {
        &mut self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// The submatrix formed by the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(r));
        }
        out
    }

    /// Rank over the field. Works on a scratch copy.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut a = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    a.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(a[rank * cols + col]).expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = a[r * cols + col];
                if factor.is_zero() {
                    continue;
                }
                let factor = f.mul(factor, inv);
                for j in col..cols {
                    let sub = f.mul(factor, a[rank * cols + j]);
                    a[r * cols + j] = f.sub(a[r * cols + j], sub);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Greedy row basis: scans rows in ascending order and keeps every row
    /// that is independent of the rows kept so far.
    pub fn row_basis(&self) -> Vec<usize> {
        let mut echelon = Echelon::new(self.field, self.cols);
        (0..self.rows)
            .filter(|&r| echelon.insert(self.row(r)))
            .collect()
    }
}

/// An incrementally grown row echelon form, used for greedy bases.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    // (pivot column, row normalised so the pivot is 1)
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows; stores it and returns `true`
    /// if it is independent of them.
    pub fn insert(&mut self, row: &[FieldElement]) -> bool {
        assert_eq!(row.len(), self.cols);
        let f = self.field;
        let mut v = row.to_vec();
        for (pivot, basis) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !basis[j].is_zero() {
                    v[j] = f.sub(v[j], f.mul(c, basis[j]));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep stored rows fully reduced in the new pivot column
        for (_, basis) in self.rows.iter_mut() {
            let c = basis[pivot];
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !v[j].is_zero() {
                    basis[j] = f.sub(basis[j], f.mul(c, v[j]));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn identity_has_full_rank() {
        assert_eq!(DenseMatrix::identity(field(), 3).rank(), 3);
        assert_eq!(DenseMatrix::identity(field(), 3).row_basis(), vec![0, 1, 2]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = DenseMatrix::zeros(field(), 4, 6);
        assert_eq!(m.rank(), 0);
        assert!(m.row_basis().is_empty());
    }

    #[test]
    fn scaled_row_is_dependent() {
        let m = DenseMatrix::from_rows(field(), &[vec![3, 5], vec![6, 10]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn greedy_basis_skips_dependent_row() {
        let m = DenseMatrix::from_rows(
            field(),
            &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 7]],
        );
        assert_eq!(m.row_basis(), vec![0, 2]);
    }

    #[test]
    fn small_prime_dependence() {
        let f = PrimeField::new(7).unwrap();
        // second row is 3x the first mod 7
        let m = DenseMatrix::from_rows(f, &[vec![1, 4], vec![3, 12]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(f.inv(f.element(3)), Some(f.element(5)));
    }

    #[test]
    fn rejects_composite_and_oversized_moduli() {
        assert_eq!(PrimeField::new(91), Err(FieldError::NotPrime(91)));
        assert!(matches!(PrimeField::new(u64::MAX), Err(FieldError::TooLarge(_))));
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if let Some(ai) = f.inv(a) {
                assert_eq!(f.mul(a, ai), FieldElement::ONE);
            }
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> DenseMatrix {
        // product of (rows x rank) and (rank x cols) random factors
        let f = field();
        let left: Vec<Vec<FieldElement>> = (0..rows)
            .map(|_| (0..rank).map(|_| f.random(rng)).collect())
            .collect();
        let right: Vec<Vec<FieldElement>> = (0..rank)
            .map(|_| (0..cols).map(|_| f.random(rng)).collect())
            .collect();
        let mut m = DenseMatrix::zeros(f, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut acc = FieldElement::ZERO;
                for k in 0..rank {
                    acc = f.add(acc, f.mul(left[i][k], right[k][j]));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    #[test]
    fn rank_invariant_under_row_operations() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let rows = rng.gen_range(1..9);
            let cols = rng.gen_range(1..9);
            let r = rng.gen_range(0..=rows.min(cols));
            let m = random_matrix(&mut rng, rows, cols, r);
            let rank = m.rank();
            assert!(rank <= rows.min(cols));
            assert_eq!(rank, r);

            let mut perm: Vec<usize> = (0..rows).collect();
            for i in (1..rows).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let mut permuted = m.select_rows(&perm);
            assert_eq!(permuted.rank(), rank);

            let target = rng.gen_range(0..rows);
            let scale = loop {
                let s = f.random(&mut rng);
                if !s.is_zero() {
                    break s;
                }
            };
            for x in permuted.row_mut(target) {
                *x = f.mul(*x, scale);
            }
            assert_eq!(permuted.rank(), rank);

            let basis = m.row_basis();
            assert_eq!(basis.len(), rank);
            assert_eq!(m.select_rows(&basis).rank(), rank);
        }
    }
}

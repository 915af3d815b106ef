//! Exact integer matrices and canonical forms for finite-index sublattices
//! of `Z^r`.
//!
//! A sublattice is always stored through [`LatticeBasis`], whose basis
//! matrix is in row-style Hermite normal form: upper triangular, positive
//! pivots, and every entry above a pivot reduced into `[0, pivot)`. With
//! that convention two values describe the same lattice exactly when their
//! basis matrices are entry-wise equal, so lattice equality is a plain
//! comparison and certificates are reproducible byte for byte.
//!
//! All arithmetic uses arbitrary-precision integers; nothing here wraps.

use std::error::Error;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Errors from lattice construction and comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The input rows span a lattice of rank lower than the ambient
    /// dimension. Every lattice in this crate is full rank, so a deficient
    /// input signals a caller bug rather than a representable value.
    RankDeficient { rank: usize, cols: usize },
    /// A map that must be unimodular has determinant other than `1` or `-1`.
    NotUnimodular { det: BigInt },
    /// Two lattices of different ranks were compared.
    RankMismatch { left: usize, right: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::RankDeficient { rank, cols } => {
                write!(f, "generators span rank {rank} < ambient dimension {cols}")
            }
            LatticeError::NotUnimodular { det } => {
                write!(f, "map has determinant {det}, expected +1 or -1")
            }
            LatticeError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
        }
    }
}

impl Error for LatticeError {}

/// A dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Build from row-major entries. Panics if the entry count is not
    /// `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match {rows}x{cols}",
            entries.len()
        );
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Matrix-vector product `self * v`, with `v` as a column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A full-rank sublattice of `Z^r` held in canonical Hermite normal form.
///
/// The canonical basis is the unique HNF basis of the lattice, so two
/// values represent the same lattice iff they compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    basis: IntMatrix,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical HNF basis matrix; rows are the basis vectors.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Index in `Z^r`, which equals the product of the HNF pivots.
    pub fn index(&self) -> BigUint {
        let mut idx = BigUint::one();
        for i in 0..self.rank() {
            idx *= self.basis.at(i, i).magnitude();
        }
        idx
    }

    /// Exact membership test by back-substitution against the triangular
    /// basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.rank(), "vector length mismatch");
        let r = self.rank();
        let mut residual = v.to_vec();
        for c in 0..r {
            let pivot = self.basis.at(c, c);
            let (q, rem) = residual[c].div_rem(pivot);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (k, entry) in residual.iter_mut().enumerate().skip(c) {
                    *entry -= &q * self.basis.at(c, k);
                }
            }
        }
        residual.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.basis.fmt(f)
    }
}

/// Canonical Hermite normal form of the lattice spanned by the rows of
/// `generators`.
///
/// The result is idempotent and invariant under row reordering and
/// unimodular recombination of the input rows. Rank-deficient input is
/// rejected.
pub fn hnf(generators: &IntMatrix) -> Result<LatticeBasis, LatticeError> {
    hnf_from_rows(generators.cols(), generators.row_vecs())
}

/// Streaming HNF: rows are folded into a triangular basis one at a time,
/// so enumeration-sized inputs never hold more than `r + 1` rows at once.
pub(crate) fn hnf_from_rows<I>(cols: usize, rows: I) -> Result<LatticeBasis, LatticeError>
where
    I: IntoIterator<Item = Vec<BigInt>>,
{
    // slots[c] holds the current row whose first nonzero entry (a positive
    // pivot) sits in column c.
    let mut slots: Vec<Option<Vec<BigInt>>> = vec![None; cols];
    for row in rows {
        assert_eq!(row.len(), cols, "row length mismatch");
        insert_row(&mut slots, row);
    }
    let rank = slots.iter().filter(|s| s.is_some()).count();
    if rank < cols {
        return Err(LatticeError::RankDeficient { rank, cols });
    }
    let mut basis: Vec<Vec<BigInt>> = slots.into_iter().map(Option::unwrap).collect();
    reduce_above_pivots(&mut basis);
    let entries = basis.into_iter().flatten().collect();
    Ok(LatticeBasis {
        basis: IntMatrix::new(cols, cols, entries),
    })
}

fn insert_row(slots: &mut [Option<Vec<BigInt>>], mut row: Vec<BigInt>) {
    let cols = slots.len();
    for c in 0..cols {
        if row[c].is_zero() {
            continue;
        }
        match &slots[c] {
            None => {
                if row[c].is_negative() {
                    for e in row.iter_mut() {
                        *e = -std::mem::take(e);
                    }
                }
                slots[c] = Some(row);
                return;
            }
            Some(basis_row) => {
                // Replace the slot by the gcd combination and keep
                // eliminating the remainder row in later columns.
                let gcd = basis_row[c].extended_gcd(&row[c]);
                let b_quot = &basis_row[c] / &gcd.gcd;
                let r_quot = &row[c] / &gcd.gcd;
                let mut combined = Vec::with_capacity(cols);
                let mut remainder = Vec::with_capacity(cols);
                for (b, r) in basis_row.iter().zip(row.iter()) {
                    combined.push(&gcd.x * b + &gcd.y * r);
                    remainder.push(&b_quot * r - &r_quot * b);
                }
                debug_assert!(combined[c].is_positive());
                debug_assert!(remainder[c].is_zero());
                slots[c] = Some(combined);
                row = remainder;
            }
        }
    }
}

fn reduce_above_pivots(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    for c in 0..n {
        let pivot_row = basis[c].clone();
        let pivot = &pivot_row[c];
        for row in basis.iter_mut().take(c) {
            let q = row[c].div_floor(pivot);
            if q.is_zero() {
                continue;
            }
            for (k, entry) in row.iter_mut().enumerate().skip(c) {
                *entry -= &q * &pivot_row[k];
            }
        }
    }
}

/// Canonical basis of the kernel of `Z^r -> Z/m`, `e_i -> images[i]`.
///
/// The kernel always has full rank (it contains `m Z^r`), and its index in
/// `Z^r` equals the order of the subgroup of `Z/m` generated by the images.
pub fn kernel_lattice(images: &[BigUint], modulus: &BigUint) -> LatticeBasis {
    assert!(!modulus.is_zero(), "modulus must be >= 1");
    let r = images.len();
    let m = BigInt::from(modulus.clone());
    let a: Vec<BigInt> = images
        .iter()
        .map(|im| {
            let reduced = im % modulus;
            assert_eq!(&reduced, im, "residues must be reduced into [0, m)");
            BigInt::from(reduced)
        })
        .collect();

    // Build a triangular generating set row by row, from the last
    // coordinate up. For row i we need the least t > 0 such that t*a[i]
    // lies in the subgroup generated by the later images and m; the Bezout
    // data of that suffix supplies the completing coordinates.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(r);
    // (gcd of {a[i+1..], m}, Bezout coefficients for a[i+1..]).
    let mut suffix_gcd = m.clone();
    let mut suffix_coeffs: Vec<BigInt> = Vec::new();
    for i in (0..r).rev() {
        let step_gcd = a[i].gcd(&suffix_gcd);
        let t = &suffix_gcd / &step_gcd;
        let q = &a[i] / &step_gcd;
        let mut row = vec![BigInt::zero(); r];
        row[i] = t;
        for (k, coeff) in suffix_coeffs.iter().enumerate() {
            row[i + 1 + k] = -(&q * coeff);
        }
        debug_assert!(row
            .iter()
            .zip(&a)
            .map(|(x, ai)| x * ai)
            .sum::<BigInt>()
            .mod_floor(&m)
            .is_zero());
        rows.push(row);
        let ext = a[i].extended_gcd(&suffix_gcd);
        for coeff in suffix_coeffs.iter_mut() {
            *coeff *= &ext.y;
        }
        suffix_coeffs.insert(0, ext.x);
        suffix_gcd = ext.gcd;
    }
    rows.reverse();
    let basis = hnf_from_rows(r, rows).expect("kernel lattice is always full rank");
    debug_assert_eq!(
        BigInt::from(basis.index()),
        &m / &suffix_gcd,
        "kernel index must equal the order of the image subgroup"
    );
    basis
}

/// Image of a lattice under a unimodular map, as a canonical basis.
///
/// The map is given by a square matrix acting on coordinate columns; each
/// basis vector `g` of the lattice is sent to `map * g`. Unimodularity is
/// checked so the index is preserved.
pub fn apply_map(map: &IntMatrix, lattice: &LatticeBasis) -> Result<LatticeBasis, LatticeError> {
    assert_eq!(map.rows(), map.cols(), "map must be square");
    assert_eq!(
        map.cols(),
        lattice.rank(),
        "map size must match lattice rank"
    );
    let det = map.det();
    if det.magnitude() != &BigUint::one() {
        return Err(LatticeError::NotUnimodular { det });
    }
    let images = (0..lattice.rank()).map(|i| map.mul_vec(lattice.basis().row(i)));
    hnf_from_rows(lattice.rank(), images)
}

/// Lattice equality: canonical bases compare entry-wise.
pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool, LatticeError> {
    if a.rank() != b.rank() {
        return Err(LatticeError::RankMismatch {
            left: a.rank(),
            right: b.rank(),
        });
    }
    Ok(a.basis() == b.basis())
}

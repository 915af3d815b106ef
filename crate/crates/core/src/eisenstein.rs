//! Exact arithmetic in `Z[rho]` and the curve subgroups of `pi_1(E x E)`.
//!
//! `rho` is the primitive cube root of unity, reduced by `rho^2 = -rho - 1`,
//! and `zeta = 1 + rho` is the primitive sixth root with `zeta^2 = rho`.
//! The complex structure never appears as floating point: slopes, the four
//! boundary curves, and the prime `1 - rho` all live in the basis
//! `(1, rho)` of `Z[rho]`.
//!
//! `pi_1(E x E)` is identified with `Z^4` through the basis
//! `v1 = (1, 0)`, `v2 = (rho, 0)`, `v3 = (0, 1)`, `v4 = (0, rho)`,
//! so an element `(x + y rho, z + w rho)` has coordinates `(x, y, z, w)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::caps::{CapExceeded, Caps};
use crate::zlattice::{self, IntMatrix, LatticeBasis};

/// An Eisenstein integer `a + b rho` in the basis `(1, rho)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EisInt {
    a: BigInt,
    b: BigInt,
}

impl EisInt {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        EisInt { a, b }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        EisInt::new(BigInt::from(a), BigInt::from(b))
    }

    pub fn zero() -> Self {
        EisInt::from_i64(0, 0)
    }

    pub fn one() -> Self {
        EisInt::from_i64(1, 0)
    }

    pub fn rho() -> Self {
        EisInt::from_i64(0, 1)
    }

    /// `zeta = 1 + rho`, the primitive sixth root of unity with
    /// `zeta^2 = rho` and `zeta^3 = -1`.
    pub fn zeta() -> Self {
        EisInt::from_i64(1, 1)
    }

    /// The ramified prime `1 - rho` of norm 3.
    pub fn one_minus_rho() -> Self {
        EisInt::from_i64(1, -1)
    }

    pub fn coords(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }

    /// `norm(a + b rho) = a^2 - ab + b^2 >= 0`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn pow(&self, exp: u32) -> EisInt {
        let mut acc = EisInt::one();
        for _ in 0..exp {
            acc = eis_mul(&acc, self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for EisInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*rho", self.a, self.b)
    }
}

/// Product in `Z[rho]`: `(a + b rho)(c + d rho) = (ac - bd) + (ad + bc - bd) rho`.
pub fn eis_mul(x: &EisInt, y: &EisInt) -> EisInt {
    let (a, b) = (&x.a, &x.b);
    let (c, d) = (&y.a, &y.b);
    let bd = b * d;
    EisInt::new(a * c - &bd, a * d + b * c - bd)
}

impl Mul for &EisInt {
    type Output = EisInt;
    fn mul(self, rhs: &EisInt) -> EisInt {
        eis_mul(self, rhs)
    }
}

impl Add for &EisInt {
    type Output = EisInt;
    fn add(self, rhs: &EisInt) -> EisInt {
        EisInt::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &EisInt {
    type Output = EisInt;
    fn sub(self, rhs: &EisInt) -> EisInt {
        EisInt::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &EisInt {
    type Output = EisInt;
    fn neg(self) -> EisInt {
        EisInt::new(-&self.a, -&self.b)
    }
}

/// The four boundary curves of the base surface, labeled by their slope in
/// `[z, w]` coordinates: `w = 0`, `z = 0`, `w = z`, `w = zeta z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveLabel {
    T0,
    TInf,
    T1,
    TZeta,
}

impl CurveLabel {
    pub const ALL: [CurveLabel; 4] = [
        CurveLabel::T0,
        CurveLabel::TInf,
        CurveLabel::T1,
        CurveLabel::TZeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveLabel::T0 => "T0",
            CurveLabel::TInf => "Tinf",
            CurveLabel::T1 => "T1",
            CurveLabel::TZeta => "Tzeta",
        }
    }

    /// Slope `s` with the curve `{w = s z}`; `None` for the vertical curve
    /// `{z = 0}`.
    pub fn slope(self) -> Option<EisInt> {
        match self {
            CurveLabel::T0 => Some(EisInt::zero()),
            CurveLabel::TInf => None,
            CurveLabel::T1 => Some(EisInt::one()),
            CurveLabel::TZeta => Some(EisInt::zeta()),
        }
    }

    pub fn index(self) -> usize {
        match self {
            CurveLabel::T0 => 0,
            CurveLabel::TInf => 1,
            CurveLabel::T1 => 2,
            CurveLabel::TZeta => 3,
        }
    }
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The two generators of `pi_1(T)` inside `pi_1(E x E) = Z^4`, derived
/// from the slope: a curve `{w = s z}` is the image of `z -> (z, s z)`, so
/// its fundamental group is generated by `(1, s)` and `(rho, s rho)`.
///
/// Returned as a 2x4 integer matrix whose rows are the generators.
pub fn curve_subgroup(label: CurveLabel) -> IntMatrix {
    let rows: [EisPair; 2] = match label.slope() {
        Some(s) => {
            let s_rho = eis_mul(&s, &EisInt::rho());
            [EisPair(EisInt::one(), s), EisPair(EisInt::rho(), s_rho)]
        }
        // {z = 0} is the second factor itself.
        None => [
            EisPair(EisInt::zero(), EisInt::one()),
            EisPair(EisInt::zero(), EisInt::rho()),
        ],
    };
    let mut entries = Vec::with_capacity(8);
    for EisPair(z, w) in rows {
        let (za, zb) = z.coords();
        let (wa, wb) = w.coords();
        entries.extend([za.clone(), zb.clone(), wa.clone(), wb.clone()]);
    }
    IntMatrix::new(2, 4, entries)
}

/// An element of `Z[rho] x Z[rho]`.
struct EisPair(EisInt, EisInt);

/// The rank-2 lattice `(1 - rho)^n Z[rho]` in the coordinates `(a, b)`.
pub fn ideal_lattice(n: u32) -> LatticeBasis {
    let g = EisInt::one_minus_rho().pow(n);
    let g_rho = eis_mul(&g, &EisInt::rho());
    let rows = IntMatrix::new(
        2,
        2,
        vec![
            g.coords().0.clone(),
            g.coords().1.clone(),
            g_rho.coords().0.clone(),
            g_rho.coords().1.clone(),
        ],
    );
    zlattice::hnf(&rows).expect("nonzero ideals of Z[rho] have rank 2")
}

/// Compares `(1 - rho)^n Z[rho]` with the kernel of `Z[rho] -> Z/3^n`
/// sending both `1` and `rho` to `1`, as canonical lattices.
///
/// Both lattices have index `3^n`; the boolean is their `lattice_equal`
/// result. The quotient `Z[rho] / (1 - rho)^n` is cyclic only for
/// `n <= 1`, so the comparison distinguishes the ideal from the kernel as
/// soon as `n >= 2`.
pub fn ideal_kernel_verify(n: u32, caps: &Caps) -> Result<bool, CapExceeded> {
    caps.check_single(n)?;
    let ideal = ideal_lattice(n);
    let modulus = BigUint::from(3u32).pow(n);
    let image = BigUint::one() % &modulus;
    let kernel = zlattice::kernel_lattice(&[image.clone(), image], &modulus);
    debug_assert_eq!(ideal.index(), modulus);
    debug_assert_eq!(kernel.index(), modulus);
    Ok(zlattice::lattice_equal(&ideal, &kernel).expect("both lattices have rank 2"))
}

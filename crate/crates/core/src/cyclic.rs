//! Subgroups and cosets of `Z/m` in canonical divisor form.
//!
//! Every subgroup of `Z/m` is `<d>` for a unique divisor `d` of `m`; we
//! store that divisor. `d = m` encodes the trivial subgroup and `d = 1`
//! the full group, the order is `m / d`, and the index is `d`. Keeping the
//! divisor makes subgroup equality and index lookups O(1) and certificate
//! output deterministic.
//!
//! `m = 1` is fully supported: the unique subgroup is simultaneously
//! trivial and full, which is exactly what the degree-one base cover needs.

use std::error::Error;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicError {
    ModulusMismatch { left: BigUint, right: BigUint },
}

impl fmt::Display for CyclicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicError::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
        }
    }
}

impl Error for CyclicError {}

/// A subgroup of `Z/m`, stored as its canonical divisor generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicSubgroup {
    modulus: BigUint,
    generator: BigUint,
}

impl CyclicSubgroup {
    fn new(modulus: BigUint, generator: BigUint) -> Self {
        assert!(!modulus.is_zero(), "modulus must be >= 1");
        debug_assert!(modulus.is_multiple_of(&generator));
        CyclicSubgroup { modulus, generator }
    }

    pub fn full(modulus: BigUint) -> Self {
        Self::new(modulus, BigUint::one())
    }

    pub fn trivial(modulus: BigUint) -> Self {
        Self::new(modulus.clone(), modulus)
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// The canonical divisor `d` with subgroup `<d>`.
    pub fn generator(&self) -> &BigUint {
        &self.generator
    }

    pub fn order(&self) -> BigUint {
        &self.modulus / &self.generator
    }

    pub fn index(&self) -> BigUint {
        self.generator.clone()
    }

    pub fn is_full(&self) -> bool {
        self.generator.is_one()
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == self.modulus
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        (x % &self.modulus).is_multiple_of(&self.generator)
    }
}

impl fmt::Display for CyclicSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> in Z/{}", self.generator, self.modulus)
    }
}

/// The subgroup of `Z/m` generated by the given residues, i.e.
/// `<gcd(m, a_1, a_2, ...)>`. An empty generator list yields the trivial
/// subgroup.
pub fn subgroup_closure(m: &BigUint, gens: &[BigUint]) -> CyclicSubgroup {
    assert!(!m.is_zero(), "modulus must be >= 1");
    let d = gens.iter().fold(m.clone(), |acc, g| acc.gcd(g));
    CyclicSubgroup::new(m.clone(), d)
}

/// Order of `k` in `Z/m`: `m / gcd(m, k)`.
pub fn element_order(m: &BigUint, k: &BigUint) -> BigUint {
    assert!(!m.is_zero(), "modulus must be >= 1");
    m / m.gcd(k)
}

/// Intersection of two subgroups of the same `Z/m`: `<lcm(d_a, d_b)>`.
pub fn subgroup_intersect(
    a: &CyclicSubgroup,
    b: &CyclicSubgroup,
) -> Result<CyclicSubgroup, CyclicError> {
    if a.modulus != b.modulus {
        return Err(CyclicError::ModulusMismatch {
            left: a.modulus.clone(),
            right: b.modulus.clone(),
        });
    }
    // Both divisors divide m, so their lcm does too.
    let d = a.generator.lcm(&b.generator);
    Ok(CyclicSubgroup::new(a.modulus.clone(), d))
}

/// The canonical coset representatives `{0, 1, ..., d-1}` of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetList {
    subgroup: CyclicSubgroup,
    representatives: Vec<BigUint>,
}

impl CosetList {
    pub fn subgroup(&self) -> &CyclicSubgroup {
        &self.subgroup
    }

    pub fn representatives(&self) -> &[BigUint] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// One canonical representative per coset of `s` in `Z/m`; there are
/// exactly `index = d` of them.
pub fn coset_reps(s: &CyclicSubgroup) -> CosetList {
    let mut representatives = Vec::new();
    let mut rep = BigUint::zero();
    while &rep < s.generator() {
        representatives.push(rep.clone());
        rep += 1u32;
    }
    CosetList {
        subgroup: s.clone(),
        representatives,
    }
}

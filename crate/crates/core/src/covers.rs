//! The degree-`3^n` cover family of the one-point-blowup ball quotient.
//!
//! A cover is indexed by [`CoverSpec`]: an exponent `n` and a residue
//! `0 <= j < 3^n`. The associated homomorphism `pi_1(A) -> Z/3^n` sends the
//! four standard generators to `(1, 1, j, j)`; its kernel is a finite-index
//! sublattice of `Z^4`, and everything about the cover (connectivity,
//! cusp counts, boundary divisor, log Chern numbers) is computed from
//! that lattice and from the images of the four curve subgroups.
//!
//! The deck group `Z/3^n` is written additively, with the distinguished
//! generator as the residue `1`: where a multiplicative account would
//! speak of the `k`-th power of that generator, here it is the residue
//! `k`, the subgroup it generates is `<gcd(k, 3^n)>`, and its order is
//! `3^n / gcd(k, 3^n)`. Discrete logarithms never appear; everything is
//! gcd arithmetic.
//!
//! Cusps are counted three ways: structurally (subgroup indices), by the
//! closed-form branch expression, and (in [`crate::oracle`]) by literal
//! coset enumeration. Certificates only count when all three agree.
//!
//! Blown-up points are indexed by deck-group elements `g` in `Z/3^n`; the
//! lift of a curve with image subgroup `H` through the point `g` is the
//! coset `g + H`, viewed as the set of blown-up points that lift passes
//! through. All intersection bookkeeping is done in that dictionary.

use std::error::Error;
use std::fmt;
use std::ops::Index;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::caps::{CapExceeded, Caps};
use crate::cyclic::{self, CyclicSubgroup};
use crate::eisenstein::{self, CurveLabel};
use crate::zlattice::{self, IntMatrix, LatticeBasis, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverError {
    /// `j` must satisfy `0 <= j < 3^n`.
    ResidueOutOfRange {
        n: u32,
        j: BigUint,
    },
    Cap(CapExceeded),
    /// Two proper transforms of boundary components would still intersect
    /// after the blowup. This cannot happen for a valid cover and firing
    /// indicates an internal inconsistency.
    DisjointnessViolation {
        first: (CurveLabel, BigUint),
        second: (CurveLabel, BigUint),
        pre_blowup: BigUint,
        shared_points: BigUint,
    },
    Lattice(LatticeError),
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::ResidueOutOfRange { n, j } => {
                write!(f, "residue j = {j} out of range [0, 3^{n})")
            }
            CoverError::Cap(c) => c.fmt(f),
            CoverError::DisjointnessViolation {
                first,
                second,
                pre_blowup,
                shared_points,
            } => write!(
                f,
                "components {}+{} and {}+{} have pre-blowup intersection {} but {} shared blown-up points",
                first.0, first.1, second.0, second.1, pre_blowup, shared_points
            ),
            CoverError::Lattice(e) => e.fmt(f),
        }
    }
}

impl Error for CoverError {}

impl From<CapExceeded> for CoverError {
    fn from(c: CapExceeded) -> Self {
        CoverError::Cap(c)
    }
}

impl From<LatticeError> for CoverError {
    fn from(e: LatticeError) -> Self {
        CoverError::Lattice(e)
    }
}

/// The pair `(n, j)` selecting one cover of degree `3^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverSpec {
    n: u32,
    j: BigUint,
}

impl CoverSpec {
    pub fn new(n: u32, j: BigUint) -> Result<Self, CoverError> {
        let modulus = BigUint::from(3u32).pow(n);
        if j >= modulus {
            return Err(CoverError::ResidueOutOfRange { n, j });
        }
        Ok(CoverSpec { n, j })
    }

    pub fn from_u64(n: u32, j: u64) -> Result<Self, CoverError> {
        Self::new(n, BigUint::from(j))
    }

    /// The degree-one base cover `(n, j) = (0, 0)`.
    pub fn base() -> Self {
        CoverSpec {
            n: 0,
            j: BigUint::zero(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn j(&self) -> &BigUint {
        &self.j
    }

    /// Cover degree and deck group order, `3^n`.
    pub fn degree(&self) -> BigUint {
        BigUint::from(3u32).pow(self.n)
    }

    /// Images of the four generators of `pi_1(A)` in `Z/3^n`:
    /// `(1, 1, j, j)`, reduced (so `(0, 0, 0, 0)` when `n = 0`).
    pub fn sigma_images(&self) -> [BigUint; 4] {
        let m = self.degree();
        let one = BigUint::one() % &m;
        [one.clone(), one, self.j.clone(), self.j.clone()]
    }
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n = {}, j = {})", self.n, self.j)
    }
}

/// Kernel of the cover homomorphism, as a canonical lattice of index `3^n`.
///
/// The kernel is computed as `kernel_lattice((1, 1, j, j), 3^n)` and then
/// cross-checked against the explicit generating set
/// `{3^n v1, v1 - v2, v3 - v4, j v1 - v3}`, which must canonicalize to the
/// same basis.
pub fn kernel_of_sigma(spec: &CoverSpec, caps: &Caps) -> Result<LatticeBasis, CoverError> {
    caps.check_single(spec.n)?;
    let m = spec.degree();
    let kernel = zlattice::kernel_lattice(&spec.sigma_images(), &m);

    let m_int = BigInt::from(m.clone());
    let j_int = BigInt::from(spec.j.clone());
    let generators = IntMatrix::new(
        4,
        4,
        vec![
            m_int,
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
            -BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
            -BigInt::one(),
            j_int,
            BigInt::zero(),
            -BigInt::one(),
            BigInt::zero(),
        ],
    );
    let from_generators = zlattice::hnf(&generators)?;
    assert!(
        zlattice::lattice_equal(&kernel, &from_generators)?,
        "kernel generating set disagrees with the kernel lattice for {spec}"
    );
    assert_eq!(
        kernel.index(),
        m,
        "kernel index must equal the cover degree"
    );
    Ok(kernel)
}

/// Image in `Z/3^n` of a curve's fundamental group: the two generators of
/// the curve subgroup are pushed through `(1, 1, j, j)` and closed.
pub fn curve_image(spec: &CoverSpec, label: CurveLabel) -> CyclicSubgroup {
    let m = spec.degree();
    let m_int = BigInt::from(m.clone());
    let images: Vec<BigInt> = spec
        .sigma_images()
        .iter()
        .map(|im| BigInt::from(im.clone()))
        .collect();
    let gens = eisenstein::curve_subgroup(label);
    let pushed: Vec<BigUint> = (0..gens.rows())
        .map(|r| {
            let sum: BigInt = gens
                .row(r)
                .iter()
                .zip(&images)
                .map(|(coeff, im)| coeff * im)
                .sum();
            sum.mod_floor(&m_int)
                .to_biguint()
                .expect("mod_floor by a positive modulus is nonnegative")
        })
        .collect();
    cyclic::subgroup_closure(&m, &pushed)
}

/// Per-curve lift counts and total cusps of one cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspReport {
    pub spec: CoverSpec,
    /// Lift count per curve, indexed in `CurveLabel::ALL` order.
    pub per_curve: [BigUint; 4],
    pub total: BigUint,
    pub degree: BigUint,
    pub connected: bool,
}

impl Index<CurveLabel> for CuspReport {
    type Output = BigUint;
    fn index(&self, label: CurveLabel) -> &BigUint {
        &self.per_curve[label.index()]
    }
}

/// Structural cusp count: the lift count of each curve is the index of its
/// image subgroup, and the cover is connected because the first generator
/// already maps to a generator of the deck group.
pub fn cusp_report(spec: &CoverSpec) -> CuspReport {
    let m = spec.degree();
    let per_curve: [BigUint; 4] = CurveLabel::ALL.map(|label| curve_image(spec, label).index());
    let total = per_curve.iter().sum();
    let connected = cyclic::subgroup_closure(&m, &spec.sigma_images()).is_full();
    debug_assert!(per_curve[CurveLabel::T0.index()].is_one());
    CuspReport {
        spec: spec.clone(),
        per_curve,
        total,
        degree: m,
        connected,
    }
}

/// Closed-form cusp count:
/// `6` when `j = 1 mod 3`, `3 + gcd(j + 1, 3^n)` when `j = 2 mod 3`,
/// `3 + gcd(j, 3^n)` when `j = 0 mod 3` (hence `4` for the base cover).
pub fn cusp_count_formula(spec: &CoverSpec) -> BigUint {
    let m = spec.degree();
    let three = BigUint::from(3u32);
    match (spec.j() % &three).to_u32().unwrap() {
        1 => BigUint::from(6u32),
        2 => &three + (spec.j() + BigUint::one()).gcd(&m),
        _ => &three + spec.j().gcd(&m),
    }
}

/// The residue `k = (j - r) mod 3^n` reached from `spec` by the shear of
/// parameter `r`.
pub fn shear_target(spec: &CoverSpec, r: &BigInt) -> BigUint {
    let m_int = BigInt::from(spec.degree());
    (BigInt::from(spec.j.clone()) - r)
        .mod_floor(&m_int)
        .to_biguint()
        .expect("mod_floor by a positive modulus is nonnegative")
}

/// The shear `v1 -> v1, v2 -> v2, v3 -> r v1 + v3, v4 -> r v2 + v4` as a
/// matrix on coordinate columns. Its determinant is one.
pub fn shear_matrix(r: &BigInt) -> IntMatrix {
    let o = BigInt::one();
    let z = BigInt::zero();
    IntMatrix::new(
        4,
        4,
        vec![
            o.clone(),
            z.clone(),
            r.clone(),
            z.clone(),
            z.clone(),
            o.clone(),
            z.clone(),
            r.clone(),
            z.clone(),
            z.clone(),
            o.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            o,
        ],
    )
}

/// Checks that the shear of parameter `r` carries the kernel of `(n, j)`
/// onto the kernel of `(n, (j - r) mod 3^n)`. Holds for every `spec` and
/// every integer `r`.
pub fn verify_shear(spec: &CoverSpec, r: &BigInt, caps: &Caps) -> Result<bool, CoverError> {
    let f = shear_matrix(r);
    assert!(f.det().is_one(), "shear matrix must have determinant one");
    let kernel = kernel_of_sigma(spec, caps)?;
    let image = zlattice::apply_map(&f, &kernel)?;
    let target =
        CoverSpec::new(spec.n, shear_target(spec, r)).expect("shear target is reduced mod 3^n");
    let target_kernel = kernel_of_sigma(&target, caps)?;
    Ok(zlattice::lattice_equal(&image, &target_kernel)?)
}

/// One lift of one curve in the boundary divisor of a compactified cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub curve: CurveLabel,
    /// Canonical representative of the deck-group coset indexing the lift.
    pub coset_rep: BigUint,
    /// Number of blown-up points the component passes through, which is
    /// the order of the curve's image subgroup.
    pub points_on_component: BigUint,
    /// Self-intersection of the proper transform: minus the point count.
    pub self_intersection: BigInt,
}

/// The full boundary divisor of one cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryReport {
    pub spec: CoverSpec,
    pub components: Vec<BoundaryComponent>,
    /// True when every pair of proper transforms is disjoint after the
    /// blowup; a report is only produced when this holds.
    pub disjoint_after_blowup: bool,
}

struct CurveComponents {
    label: CurveLabel,
    image: CyclicSubgroup,
    reps: Vec<BigUint>,
}

fn curve_components(spec: &CoverSpec) -> Vec<CurveComponents> {
    CurveLabel::ALL
        .iter()
        .map(|&label| {
            let image = curve_image(spec, label);
            let reps = cyclic::coset_reps(&image).representatives().to_vec();
            CurveComponents { label, image, reps }
        })
        .collect()
}

/// Boundary components of the compactified cover, with the disjointness
/// verification: for every pair of components of different curves, the
/// pre-blowup intersection number predicted by the coset model must equal
/// the literally counted number of shared blown-up points, so the proper
/// transforms separate completely.
pub fn boundary_report(spec: &CoverSpec, caps: &Caps) -> Result<BoundaryReport, CoverError> {
    caps.check_single(spec.n)?;
    let m = spec.degree();
    let curves = curve_components(spec);

    let mut components = Vec::new();
    for curve in &curves {
        let points = curve.image.order();
        let self_intersection = -BigInt::from(points.clone());
        for rep in &curve.reps {
            components.push(BoundaryComponent {
                curve: curve.label,
                coset_rep: rep.clone(),
                points_on_component: points.clone(),
                self_intersection: self_intersection.clone(),
            });
        }
    }

    // Same-curve lifts are distinct cosets of one subgroup: the canonical
    // representatives are pairwise distinct below the index, so those
    // pairs are disjoint both before and after the blowup.
    for curve in &curves {
        for pair in curve.reps.windows(2) {
            assert!(
                pair[0] < pair[1],
                "coset representatives must be strictly increasing"
            );
        }
    }

    // Cross-curve pairs: compare the coset-model intersection number with
    // a literal count of shared blown-up points.
    for (a_idx, curve_a) in curves.iter().enumerate() {
        for curve_b in curves.iter().skip(a_idx + 1) {
            let meet_modulus = curve_a.image.index().gcd(&curve_b.image.index());
            let intersection = cyclic::subgroup_intersect(&curve_a.image, &curve_b.image)
                .expect("curve images share the deck group modulus");
            for rep_a in &curve_a.reps {
                for rep_b in &curve_b.reps {
                    let meets = rep_a % &meet_modulus == rep_b % &meet_modulus;
                    let pre_blowup = if meets {
                        intersection.order()
                    } else {
                        BigUint::zero()
                    };
                    let shared =
                        count_shared_points(&m, rep_a, &curve_a.image, rep_b, &curve_b.image);
                    if pre_blowup != shared {
                        return Err(CoverError::DisjointnessViolation {
                            first: (curve_a.label, rep_a.clone()),
                            second: (curve_b.label, rep_b.clone()),
                            pre_blowup,
                            shared_points: shared,
                        });
                    }
                }
            }
        }
    }

    let self_intersection_sum: BigInt =
        components.iter().map(|c| c.self_intersection.clone()).sum();
    assert_eq!(
        self_intersection_sum,
        BigInt::from(-4) * BigInt::from(m),
        "boundary self-intersections must sum to -4 * 3^n"
    );

    Ok(BoundaryReport {
        spec: spec.clone(),
        components,
        disjoint_after_blowup: true,
    })
}

/// Literal count of blown-up points shared by the cosets `rep_a + H_a` and
/// `rep_b + H_b`: walk the smaller coset and test membership in the other.
fn count_shared_points(
    m: &BigUint,
    rep_a: &BigUint,
    sub_a: &CyclicSubgroup,
    rep_b: &BigUint,
    sub_b: &CyclicSubgroup,
) -> BigUint {
    let (walk_rep, walk_sub, other_rep, other_sub) = if sub_a.order() <= sub_b.order() {
        (rep_a, sub_a, rep_b, sub_b)
    } else {
        (rep_b, sub_b, rep_a, sub_a)
    };
    let step = walk_sub.generator();
    let other_step = other_sub.generator();
    let mut shared = BigUint::zero();
    let mut point = walk_rep.clone();
    let mut remaining = walk_sub.order();
    while !remaining.is_zero() {
        if &point % other_step == other_rep % other_step {
            shared += 1u32;
        }
        point = (point + step) % m;
        remaining -= 1u32;
    }
    shared
}

/// The log Chern pair of one compactified cover, with the exact equality
/// flag for `c1bar^2 = 3 c2bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogChernReport {
    /// Self-intersection of the log canonical class `K + D`.
    pub c1bar_sq: BigInt,
    /// Euler number of the open surface.
    pub c2bar: BigInt,
    pub bmy_equal: bool,
}

/// Exact log Chern bookkeeping on the blowup.
///
/// Divisor classes are the component total transforms plus one exceptional
/// class per blown-up point. Pairings: `E_p . E_q = -delta_pq`, total
/// transforms meet no exceptional class, total transforms of different
/// curves pair by the pre-blowup coset intersection count, and total
/// transforms of one curve (including self-pairings) pair to zero. The log
/// canonical class is `sum_p E_p + sum_F (F_tot - sum_{p on F} E_p)`.
pub fn log_chern(spec: &CoverSpec, caps: &Caps) -> Result<LogChernReport, CoverError> {
    caps.check_single(spec.n)?;
    let m = spec.degree();
    let m_small = m
        .to_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or(CoverError::Cap(CapExceeded {
            requested: spec.n,
            cap: caps.max_n_single,
        }))?;
    let curves = curve_components(spec);

    // Cross pairings of total transforms, summed over ordered pairs of
    // components of different curves.
    let mut cross_sum = BigUint::zero();
    for (a_idx, curve_a) in curves.iter().enumerate() {
        for curve_b in curves.iter().skip(a_idx + 1) {
            let meet_modulus = curve_a.image.index().gcd(&curve_b.image.index());
            let pair_count = cyclic::subgroup_intersect(&curve_a.image, &curve_b.image)
                .expect("curve images share the deck group modulus")
                .order();
            for rep_a in &curve_a.reps {
                for rep_b in &curve_b.reps {
                    if rep_a % &meet_modulus == rep_b % &meet_modulus {
                        // Ordered pairs: count both (F, G) and (G, F).
                        cross_sum += BigUint::from(2u32) * &pair_count;
                    }
                }
            }
        }
    }

    // Multiplicity of each blown-up point in the boundary: one component
    // of each curve passes through each point, so the coefficient of E_p
    // in K + D is 1 - mu_p.
    let mut multiplicity = vec![0u64; m_small];
    for curve in &curves {
        let step = curve
            .image
            .generator()
            .to_u64()
            .expect("index fits once the degree does");
        let order = curve
            .image
            .order()
            .to_u64()
            .expect("order fits once the degree does");
        for rep in &curve.reps {
            let mut point = rep.to_u64().expect("representative fits");
            for _ in 0..order {
                multiplicity[point as usize] += 1;
                point = (point + step) % m_small as u64;
            }
        }
    }

    let mut exceptional_sum = BigInt::zero();
    for mu in &multiplicity {
        let coeff = BigInt::one() - BigInt::from(*mu);
        exceptional_sum += &coeff * &coeff;
    }
    let c1bar_sq = BigInt::from(cross_sum) - exceptional_sum;

    // Euler bookkeeping: the unblown cover is an etale cover of an abelian
    // surface (Euler number 0), each blown-up point adds one, and the
    // boundary is a disjoint union of elliptic curves (Euler number 0).
    // The blown-up point count is the kernel index, i.e. the cover degree.
    let blowup_points = kernel_of_sigma(spec, caps)?.index();
    let c2bar = BigInt::from(blowup_points);

    let bmy_equal = c1bar_sq == BigInt::from(3) * &c2bar;
    Ok(LogChernReport {
        c1bar_sq,
        c2bar,
        bmy_equal,
    })
}

/// One member of a family certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub j: BigUint,
    pub cusps: CuspReport,
    pub chern: LogChernReport,
}

/// A family of `n` covers of degree `3^n` with pairwise distinct cusp
/// totals and the same compactification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCertificate {
    pub n: u32,
    pub blowup_points: BigUint,
    /// Members sorted by descending cusp total, one per distinct total,
    /// each with the smallest residue achieving that total.
    pub members: Vec<FamilyMember>,
    pub pairwise_distinct: bool,
}

/// Scans all residues `j` for the exponent `n` and returns one cover per
/// distinct cusp total, taking the smallest such `j`, sorted by descending
/// total. The distinct totals are exactly `{3 + 3^k : 1 <= k <= n}`, so
/// the certificate has exactly `n` members.
pub fn family_search(n: u32, caps: &Caps) -> Result<FamilyCertificate, CoverError> {
    assert!(n >= 1, "a family needs at least one member");
    caps.check_scan(n)?;
    let m = BigUint::from(3u32).pow(n);

    // total -> smallest j achieving it; ascending scan keeps the first.
    let mut totals: std::collections::BTreeMap<BigUint, BigUint> = Default::default();
    let mut j = BigUint::zero();
    while j < m {
        let spec = CoverSpec::new(n, j.clone()).expect("scan stays below 3^n");
        let total = cusp_count_formula(&spec);
        totals.entry(total).or_insert_with(|| j.clone());
        j += 1u32;
    }

    let expected: Vec<BigUint> = (1..=n)
        .map(|k| BigUint::from(3u32) + BigUint::from(3u32).pow(k))
        .collect();
    let found: Vec<BigUint> = totals.keys().cloned().collect();
    assert_eq!(
        found, expected,
        "distinct cusp totals must be 3 + 3^k for k = 1..=n"
    );

    let mut members = Vec::with_capacity(totals.len());
    for (total, j) in totals.iter().rev() {
        let spec = CoverSpec::new(n, j.clone()).expect("selected residue is reduced");
        let cusps = cusp_report(&spec);
        assert_eq!(
            &cusps.total, total,
            "structural and closed-form totals differ"
        );
        let chern = log_chern(&spec, caps)?;
        members.push(FamilyMember {
            j: j.clone(),
            cusps,
            chern,
        });
    }

    let mut seen = std::collections::BTreeSet::new();
    let pairwise_distinct = members
        .iter()
        .all(|mbr| seen.insert(mbr.cusps.total.clone()));

    Ok(FamilyCertificate {
        n,
        blowup_points: m,
        members,
        pairwise_distinct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn spec(n: u32, j: u64) -> CoverSpec {
        CoverSpec::from_u64(n, j).unwrap()
    }

    fn b(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn spec_validates_residue_range() {
        assert!(CoverSpec::from_u64(1, 2).is_ok());
        match CoverSpec::from_u64(1, 3) {
            Err(CoverError::ResidueOutOfRange { n: 1, .. }) => {}
            other => panic!("expected ResidueOutOfRange, got {other:?}"),
        }
        assert!(CoverSpec::from_u64(0, 0).is_ok());
        assert!(CoverSpec::from_u64(0, 1).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k11 = kernel_of_sigma(&spec(1, 1), &caps()).unwrap();
        assert_eq!(
            k11.basis(),
            &IntMatrix::from_i64(4, 4, &[1, 0, 0, 2, 0, 1, 0, 2, 0, 0, 1, 2, 0, 0, 0, 3])
        );

        let base = kernel_of_sigma(&CoverSpec::base(), &caps()).unwrap();
        assert_eq!(base.basis(), &IntMatrix::identity(4));

        let k10 = kernel_of_sigma(&spec(1, 0), &caps()).unwrap();
        assert_eq!(
            k10.basis(),
            &IntMatrix::from_i64(4, 4, &[1, 2, 0, 0, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn kernel_index_is_cover_degree() {
        for n in 0..=3u32 {
            let m = 3u64.pow(n);
            for j in 0..m {
                let k = kernel_of_sigma(&spec(n, j), &caps()).unwrap();
                assert_eq!(k.index(), b(m));
            }
        }
    }

    #[test]
    fn curve_image_examples() {
        let img = curve_image(&spec(2, 4), CurveLabel::TZeta);
        assert_eq!(img.generator(), &b(3));
        assert_eq!(img.index(), b(3));

        let img = curve_image(&spec(2, 8), CurveLabel::T1);
        assert!(img.is_trivial());
        assert_eq!(img.index(), b(9));

        for (n, j) in [(0u32, 0u64), (1, 2), (2, 5), (3, 11)] {
            assert!(curve_image(&spec(n, j), CurveLabel::T0).is_full());
        }
    }

    #[test]
    fn curve_image_closed_forms() {
        // T_inf maps to <j>, T_1 to <j + 1>, T_zeta to <1 + 2j, 1 - j>.
        for n in 0..=3u32 {
            let m = 3u64.pow(n);
            for j in 0..m {
                let s = spec(n, j);
                let inf = curve_image(&s, CurveLabel::TInf);
                assert_eq!(inf, cyclic::subgroup_closure(&b(m), &[b(j)]));
                let one = curve_image(&s, CurveLabel::T1);
                assert_eq!(one, cyclic::subgroup_closure(&b(m), &[b((j + 1) % m)]));
                let zeta = curve_image(&s, CurveLabel::TZeta);
                assert_eq!(
                    zeta,
                    cyclic::subgroup_closure(&b(m), &[b((1 + 2 * j) % m), b((1 + m - j % m) % m)])
                );
            }
        }
    }

    #[test]
    fn cusp_report_examples() {
        let r = cusp_report(&spec(2, 4));
        assert_eq!(r.per_curve, [b(1), b(1), b(1), b(3)]);
        assert_eq!(r.total, b(6));
        assert!(r.connected);

        let r = cusp_report(&spec(2, 0));
        assert_eq!(r.per_curve, [b(1), b(9), b(1), b(1)]);
        assert_eq!(r.total, b(12));

        let r = cusp_report(&CoverSpec::base());
        assert_eq!(r.per_curve, [b(1), b(1), b(1), b(1)]);
        assert_eq!(r.total, b(4));
        assert_eq!(r.degree, b(1));
        assert!(r.connected);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(cusp_count_formula(&spec(2, 4)), b(6));
        assert_eq!(cusp_count_formula(&spec(2, 8)), b(12));
        assert_eq!(cusp_count_formula(&spec(2, 3)), b(6));
        assert_eq!(cusp_count_formula(&spec(2, 0)), b(12));
        assert_eq!(cusp_count_formula(&CoverSpec::base()), b(4));
    }

    #[test]
    fn formula_matches_structure_exhaustively() {
        for n in 0..=3u32 {
            for j in 0..3u64.pow(n) {
                let s = spec(n, j);
                let report = cusp_report(&s);
                assert_eq!(report.total, cusp_count_formula(&s), "at {s}");
                assert!(report.connected, "at {s}");
                // Decomposed form: 1 + gcd(j, m) + gcd(j + 1, m) + (3 or 1).
                let m = 3u64.pow(n);
                let zeta = if n > 0 && j % 3 == 1 { 3 } else { 1 };
                let expected = 1 + j.gcd(&m) + (j + 1).gcd(&m) + zeta;
                assert_eq!(report.total, b(expected), "at {s}");
            }
        }
    }

    #[test]
    fn tzeta_image_index_is_one_or_three() {
        for n in 0..=4u32 {
            for j in 0..3u64.pow(n) {
                let idx = curve_image(&spec(n, j), CurveLabel::TZeta).index();
                assert!(idx == b(1) || idx == b(3), "n = {n}, j = {j}: {idx}");
            }
        }
    }

    #[test]
    fn shear_target_examples() {
        assert_eq!(shear_target(&spec(2, 0), &BigInt::from(1)), b(8));
        assert_eq!(shear_target(&spec(1, 2), &BigInt::from(0)), b(2));
        assert_eq!(shear_target(&spec(2, 1), &BigInt::from(5)), b(5));
        assert_eq!(shear_target(&spec(2, 1), &BigInt::from(-12)), b(4));
    }

    #[test]
    fn verify_shear_examples() {
        assert!(verify_shear(&spec(1, 2), &BigInt::from(1), &caps()).unwrap());
        assert!(verify_shear(&spec(2, 5), &BigInt::from(0), &caps()).unwrap());
        assert!(verify_shear(&spec(2, 0), &BigInt::from(1), &caps()).unwrap());
    }

    #[test]
    fn verify_shear_exhaustive_small() {
        for n in 0..=2u32 {
            let m = 3u64.pow(n);
            for j in 0..m {
                for r in 0..m {
                    assert!(
                        verify_shear(&spec(n, j), &BigInt::from(r), &caps()).unwrap(),
                        "shear failed at n = {n}, j = {j}, r = {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn shear_identifies_the_two_kernel_examples() {
        // The shear with r = 1 carries the (1, 2) kernel onto the (1, 1)
        // kernel.
        let k12 = kernel_of_sigma(&spec(1, 2), &caps()).unwrap();
        let image = zlattice::apply_map(&shear_matrix(&BigInt::one()), &k12).unwrap();
        let k11 = kernel_of_sigma(&spec(1, 1), &caps()).unwrap();
        assert!(zlattice::lattice_equal(&image, &k11).unwrap());
        // And the kernels themselves are different lattices.
        assert!(!zlattice::lattice_equal(&k12, &k11).unwrap());
    }

    #[test]
    fn boundary_examples() {
        let report = boundary_report(&spec(1, 1), &caps()).unwrap();
        assert_eq!(report.components.len(), 6);
        let mut self_ints: Vec<i64> = report
            .components
            .iter()
            .map(|c| i64::try_from(&c.self_intersection).unwrap())
            .collect();
        self_ints.sort_unstable();
        assert_eq!(self_ints, vec![-3, -3, -3, -1, -1, -1]);
        assert!(report.disjoint_after_blowup);

        let base = boundary_report(&CoverSpec::base(), &caps()).unwrap();
        assert_eq!(base.components.len(), 4);
        assert!(base
            .components
            .iter()
            .all(|c| c.self_intersection == BigInt::from(-1)));

        let report = boundary_report(&spec(2, 0), &caps()).unwrap();
        assert_eq!(report.components.len(), 12);
        let sum: BigInt = report
            .components
            .iter()
            .map(|c| c.self_intersection.clone())
            .sum();
        assert_eq!(sum, BigInt::from(-36));
    }

    #[test]
    fn boundary_counts_match_cusp_reports() {
        for n in 0..=3u32 {
            for j in 0..3u64.pow(n) {
                let s = spec(n, j);
                let report = boundary_report(&s, &caps()).unwrap();
                let cusps = cusp_report(&s);
                assert_eq!(BigUint::from(report.components.len()), cusps.total);
                for label in CurveLabel::ALL {
                    let lifts = report
                        .components
                        .iter()
                        .filter(|c| c.curve == label)
                        .count();
                    assert_eq!(BigUint::from(lifts), cusps[label]);
                    // lifts x points per component = degree.
                    for c in report.components.iter().filter(|c| c.curve == label) {
                        assert_eq!(BigUint::from(lifts) * &c.points_on_component, s.degree());
                    }
                }
            }
        }
    }

    #[test]
    fn log_chern_examples() {
        let base = log_chern(&CoverSpec::base(), &caps()).unwrap();
        assert_eq!(base.c1bar_sq, BigInt::from(3));
        assert_eq!(base.c2bar, BigInt::from(1));
        assert!(base.bmy_equal);

        let r = log_chern(&spec(1, 1), &caps()).unwrap();
        assert_eq!((r.c1bar_sq, r.c2bar), (BigInt::from(9), BigInt::from(3)));

        let r = log_chern(&spec(2, 4), &caps()).unwrap();
        assert_eq!((r.c1bar_sq, r.c2bar), (BigInt::from(27), BigInt::from(9)));
        assert!(r.bmy_equal);
    }

    #[test]
    fn log_chern_equality_holds_exhaustively() {
        for n in 0..=3u32 {
            for j in 0..3u64.pow(n) {
                let r = log_chern(&spec(n, j), &caps()).unwrap();
                assert!(r.bmy_equal, "n = {n}, j = {j}");
                assert_eq!(r.c1bar_sq, BigInt::from(3) * BigInt::from(3u64.pow(n)));
            }
        }
    }

    #[test]
    fn family_examples() {
        let fam = family_search(1, &caps()).unwrap();
        assert_eq!(fam.members.len(), 1);
        assert_eq!(fam.members[0].j, b(0));
        assert_eq!(fam.members[0].cusps.total, b(6));
        assert!(fam.pairwise_distinct);

        let fam = family_search(2, &caps()).unwrap();
        let picked: Vec<(u64, u64)> = fam
            .members
            .iter()
            .map(|m| {
                (
                    u64::try_from(m.j.clone()).unwrap(),
                    u64::try_from(m.cusps.total.clone()).unwrap(),
                )
            })
            .collect();
        assert_eq!(picked, vec![(0, 12), (1, 6)]);

        let fam = family_search(3, &caps()).unwrap();
        let picked: Vec<(u64, u64)> = fam
            .members
            .iter()
            .map(|m| {
                (
                    u64::try_from(m.j.clone()).unwrap(),
                    u64::try_from(m.cusps.total.clone()).unwrap(),
                )
            })
            .collect();
        assert_eq!(picked, vec![(0, 30), (8, 12), (1, 6)]);
        assert_eq!(fam.blowup_points, b(27));
    }

    #[test]
    fn family_respects_scan_cap() {
        match family_search(9, &caps()) {
            Err(CoverError::Cap(CapExceeded {
                requested: 9,
                cap: 8,
            })) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn single_op_cap_is_enforced() {
        let tight = Caps {
            max_n_single: 2,
            max_n_scan: 2,
        };
        assert!(kernel_of_sigma(&spec(2, 0), &tight).is_ok());
        match kernel_of_sigma(&spec(3, 0), &tight) {
            Err(CoverError::Cap(_)) => {}
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    // Everything here is a plain value; concurrent callers share nothing
    // mutable.
    #[test]
    fn report_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<CoverSpec>();
        assert_send_sync::<CuspReport>();
        assert_send_sync::<BoundaryReport>();
        assert_send_sync::<LogChernReport>();
        assert_send_sync::<FamilyCertificate>();
        assert_send_sync::<LatticeBasis>();
        assert_send_sync::<CyclicSubgroup>();
    }
}

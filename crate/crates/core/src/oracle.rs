//! Brute-force re-derivation of the fast-path results by literal
//! enumeration.
//!
//! Nothing in this module may call the gcd-based or closed-form paths it
//! is checking: subgroups are closed by explicit addition, kernels by
//! scanning every residue vector, cosets by literally partitioning
//! `[0, m)`. The only shared code is the HNF canonicalizer, which both
//! sides need to state their answers in comparable form.
//!
//! Budgets are hard errors, never silent truncation: a certificate must
//! not be produced from a partial scan.

use std::collections::BTreeSet;
use std::error::Error;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::covers::{CoverSpec, CuspReport, LogChernReport};
use crate::eisenstein::CurveLabel;
use crate::zlattice::{hnf_from_rows, LatticeBasis};

/// Bounds on enumeration sizes; loops never exceed
/// `max_modulus ^ max_rank` iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBudget {
    pub max_modulus: u64,
    pub max_rank: u32,
}

impl Default for ScanBudget {
    fn default() -> Self {
        // 3^8 covers every exhaustive sweep the certificates need.
        ScanBudget {
            max_modulus: 6561,
            max_rank: 4,
        }
    }
}

impl ScanBudget {
    fn check_modulus(&self, m: u64) -> Result<(), OracleError> {
        if m == 0 || m > self.max_modulus {
            return Err(self.exceeded(m, 1));
        }
        Ok(())
    }

    fn check_scan(&self, m: u64, rank: u32) -> Result<(), OracleError> {
        self.check_modulus(m)?;
        if rank > self.max_rank {
            return Err(self.exceeded(m, rank));
        }
        let allowed = (self.max_modulus as u128).checked_pow(self.max_rank);
        let requested = (m as u128).checked_pow(rank);
        match (requested, allowed) {
            (Some(req), Some(all)) if req <= all => Ok(()),
            (Some(_), None) => Ok(()),
            _ => Err(self.exceeded(m, rank)),
        }
    }

    fn exceeded(&self, modulus: u64, rank: u32) -> OracleError {
        OracleError::BudgetExceeded {
            modulus,
            rank,
            max_modulus: self.max_modulus,
            max_rank: self.max_rank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    BudgetExceeded {
        modulus: u64,
        rank: u32,
        max_modulus: u64,
        max_rank: u32,
    },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::BudgetExceeded {
                modulus,
                rank,
                max_modulus,
                max_rank,
            } => write!(
                f,
                "scan of modulus {modulus} at rank {rank} exceeds budget {max_modulus}^{max_rank}"
            ),
        }
    }
}

impl Error for OracleError {}

/// Literal closure: the least subset of `[0, m)` containing `0` and the
/// generators and closed under addition mod `m`.
pub fn closure_by_enumeration(
    budget: &ScanBudget,
    m: u64,
    gens: &[u64],
) -> Result<BTreeSet<u64>, OracleError> {
    budget.check_modulus(m)?;
    let mut set = BTreeSet::new();
    set.insert(0u64);
    let mut worklist = vec![0u64];
    while let Some(x) = worklist.pop() {
        for &g in gens {
            let y = (x + g % m) % m;
            if set.insert(y) {
                worklist.push(y);
            }
        }
    }
    Ok(set)
}

/// The literal partition of `[0, m)` into cosets of an enumerated
/// subgroup, each coset sorted ascending, cosets ordered by their minimum.
pub fn coset_partition(
    budget: &ScanBudget,
    m: u64,
    subgroup: &BTreeSet<u64>,
) -> Result<Vec<Vec<u64>>, OracleError> {
    budget.check_modulus(m)?;
    let mut visited = vec![false; m as usize];
    let mut cosets = Vec::new();
    for rep in 0..m {
        if visited[rep as usize] {
            continue;
        }
        let coset: Vec<u64> = subgroup.iter().map(|&h| (rep + h) % m).collect();
        for &x in &coset {
            assert!(!visited[x as usize], "coset walk revisited {x}");
            visited[x as usize] = true;
        }
        let mut coset = coset;
        coset.sort_unstable();
        cosets.push(coset);
    }
    assert!(visited.iter().all(|&v| v), "cosets did not cover [0, m)");
    Ok(cosets)
}

/// Kernel of `Z^r -> Z/m` by exhaustion: every residue vector in
/// `[0, m)^r` mapping to zero is lifted, together with `m e_i`, and the
/// collection is canonicalized.
pub fn kernel_by_residue_scan(
    budget: &ScanBudget,
    images: &[u64],
    m: u64,
) -> Result<LatticeBasis, OracleError> {
    let r = images.len();
    budget.check_scan(m, r as u32)?;
    let images: Vec<u64> = images.iter().map(|&a| a % m).collect();
    let total = (m as u128).pow(r as u32);
    let solutions = (0..total).filter_map(move |idx| {
        let mut x = idx;
        let mut acc: u128 = 0;
        let mut row = Vec::with_capacity(r);
        for &a in &images {
            let digit = (x % m as u128) as u64;
            x /= m as u128;
            acc = (acc + digit as u128 * a as u128) % m as u128;
            row.push(BigInt::from(digit));
        }
        (acc == 0).then_some(row)
    });
    let scaled_units = (0..r).map(|i| {
        let mut row = vec![BigInt::from(0); r];
        row[i] = BigInt::from(m);
        row
    });
    let basis = hnf_from_rows(r, solutions.chain(scaled_units))
        .expect("the scan includes m e_i, so the span has full rank");
    Ok(basis)
}

// The generators of the four curve subgroups of pi_1(A) = Z^4, inlined so
// the oracle shares no code with the eisenstein module.
const CURVE_GENERATORS: [(CurveLabel, [[i64; 4]; 2]); 4] = [
    (CurveLabel::T0, [[1, 0, 0, 0], [0, 1, 0, 0]]),
    (CurveLabel::TInf, [[0, 0, 1, 0], [0, 0, 0, 1]]),
    (CurveLabel::T1, [[1, 0, 1, 0], [0, 1, 0, 1]]),
    (CurveLabel::TZeta, [[1, 0, 1, 1], [0, 1, -1, 0]]),
];

fn push_generator(coeffs: &[i64; 4], images: &[u64; 4], m: u64) -> u64 {
    let mut acc: i128 = 0;
    for (&c, &im) in coeffs.iter().zip(images) {
        acc += c as i128 * im as i128;
    }
    acc.rem_euclid(m as i128) as u64
}

/// Sorted cosets of one curve's image subgroup, one per lift.
pub type CurveCosets = (CurveLabel, Vec<Vec<u64>>);

/// The literal coset decomposition of the deck group under each curve's
/// image subgroup: one coset per lift of that curve.
pub fn boundary_cosets(
    budget: &ScanBudget,
    spec: &CoverSpec,
) -> Result<Vec<CurveCosets>, OracleError> {
    let m = deck_order(budget, spec)?;
    let j = spec.j().to_u64().expect("j < m <= max_modulus");
    let images = [1 % m, 1 % m, j, j];
    let mut out = Vec::with_capacity(4);
    for (label, gens) in CURVE_GENERATORS {
        let pushed = [
            push_generator(&gens[0], &images, m),
            push_generator(&gens[1], &images, m),
        ];
        let subgroup = closure_by_enumeration(budget, m, &pushed)?;
        let cosets = coset_partition(budget, m, &subgroup)?;
        out.push((label, cosets));
    }
    Ok(out)
}

fn deck_order(budget: &ScanBudget, spec: &CoverSpec) -> Result<u64, OracleError> {
    let m = spec
        .degree()
        .to_u64()
        .ok_or_else(|| budget.exceeded(u64::MAX, 1))?;
    budget.check_modulus(m)?;
    Ok(m)
}

/// Cusp counting by explicit coset decomposition: for each curve the image
/// subgroup is closed by enumeration, the deck group is literally
/// partitioned, and cosets are counted as lifts. All coset sizes are
/// checked against the subgroup order.
pub fn cusp_count_oracle(budget: &ScanBudget, spec: &CoverSpec) -> Result<CuspReport, OracleError> {
    let m = deck_order(budget, spec)?;
    let j = spec.j().to_u64().expect("j < m <= max_modulus");
    let images = [1 % m, 1 % m, j, j];

    let mut per_curve = [0u64; 4];
    for (idx, (_, gens)) in CURVE_GENERATORS.iter().enumerate() {
        let pushed = [
            push_generator(&gens[0], &images, m),
            push_generator(&gens[1], &images, m),
        ];
        let subgroup = closure_by_enumeration(budget, m, &pushed)?;
        let cosets = coset_partition(budget, m, &subgroup)?;
        for coset in &cosets {
            assert_eq!(
                coset.len(),
                subgroup.len(),
                "every lift must pass through equally many blown-up points"
            );
        }
        per_curve[idx] = cosets.len() as u64;
    }

    let full_image = closure_by_enumeration(budget, m, &images)?;
    let connected = full_image.len() as u64 == m;

    let per_curve = per_curve.map(BigUint::from);
    let total = per_curve.iter().sum();
    Ok(CuspReport {
        spec: spec.clone(),
        per_curve,
        total,
        degree: BigUint::from(m),
        connected,
    })
}

/// The base surface's log Chern pair from raw intersection data: the four
/// curves pair `1` with each other and `0` with themselves, the
/// exceptional class squares to `-1` and meets no total transform, the
/// log canonical class is `E + sum(T_tot - E)`, and the Euler number is
/// one blowup point on a surface of Euler number zero with elliptic
/// boundary.
pub fn base_chern_oracle() -> LogChernReport {
    // Class order: the four curve total transforms, then E.
    let pairing = |a: usize, b: usize| -> i64 {
        if a < 4 && b < 4 {
            if a == b {
                0
            } else {
                1
            }
        } else if a == 4 && b == 4 {
            -1
        } else {
            0
        }
    };
    let canonical = [0i64, 0, 0, 0, 1];
    let boundary = [1i64, 1, 1, 1, -4];
    let log_canonical: Vec<i64> = canonical
        .iter()
        .zip(&boundary)
        .map(|(k, d)| k + d)
        .collect();
    let mut c1 = 0i64;
    for a in 0..5 {
        for b in 0..5 {
            c1 += log_canonical[a] * log_canonical[b] * pairing(a, b);
        }
    }

    let euler_abelian = 0i64;
    let blowup_points = 1i64;
    let boundary_components = 4i64;
    let euler_per_elliptic_curve = 0i64;
    let c2 = euler_abelian + blowup_points - boundary_components * euler_per_elliptic_curve;

    LogChernReport {
        c1bar_sq: BigInt::from(c1),
        c2bar: BigInt::from(c2),
        bmy_equal: c1 == 3 * c2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers;
    use crate::zlattice::{self, IntMatrix};
    use crate::Caps;
    use proptest::prelude::*;

    fn budget() -> ScanBudget {
        ScanBudget::default()
    }

    #[test]
    fn closure_examples() {
        let c = closure_by_enumeration(&budget(), 9, &[6]).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![0, 3, 6]);

        let c = closure_by_enumeration(&budget(), 7, &[]).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![0]);

        let c = closure_by_enumeration(&budget(), 3, &[1]).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn closure_rejects_oversized_modulus() {
        let small = ScanBudget {
            max_modulus: 10,
            max_rank: 4,
        };
        match closure_by_enumeration(&small, 11, &[1]) {
            Err(OracleError::BudgetExceeded { modulus: 11, .. }) => {}
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn residue_scan_examples() {
        let basis = kernel_by_residue_scan(&budget(), &[1, 1], 3).unwrap();
        assert_eq!(basis.basis(), &IntMatrix::from_i64(2, 2, &[1, 2, 0, 3]));

        let basis = kernel_by_residue_scan(&budget(), &[1, 1, 1, 1], 3).unwrap();
        assert_eq!(
            basis.basis(),
            &IntMatrix::from_i64(4, 4, &[1, 0, 0, 2, 0, 1, 0, 2, 0, 0, 1, 2, 0, 0, 0, 3])
        );

        let basis = kernel_by_residue_scan(&budget(), &[0, 0], 5).unwrap();
        assert_eq!(basis.basis(), &IntMatrix::identity(2));
    }

    #[test]
    fn residue_scan_respects_budget() {
        let small = ScanBudget {
            max_modulus: 27,
            max_rank: 2,
        };
        assert!(kernel_by_residue_scan(&small, &[1, 1], 27).is_ok());
        match kernel_by_residue_scan(&small, &[1, 1, 1], 27) {
            Err(OracleError::BudgetExceeded { rank: 3, .. }) => {}
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn cusp_oracle_examples() {
        let r = cusp_count_oracle(&budget(), &CoverSpec::from_u64(2, 4).unwrap()).unwrap();
        assert_eq!(r.total, BigUint::from(6u32));

        let r = cusp_count_oracle(&budget(), &CoverSpec::from_u64(1, 0).unwrap()).unwrap();
        let counts: Vec<u32> = r.per_curve.iter().map(|c| c.to_u32().unwrap()).collect();
        assert_eq!(counts, vec![1, 3, 1, 1]);
        assert_eq!(r.total, BigUint::from(6u32));

        let r = cusp_count_oracle(&budget(), &CoverSpec::base()).unwrap();
        assert_eq!(r.total, BigUint::from(4u32));
        assert!(r.connected);
    }

    #[test]
    fn base_chern_oracle_values() {
        let r = base_chern_oracle();
        assert_eq!(r.c1bar_sq, BigInt::from(3));
        assert_eq!(r.c2bar, BigInt::from(1));
        assert!(r.bmy_equal);
    }

    #[test]
    fn oracle_agrees_with_cusp_reports_exhaustively() {
        for n in 0..=3u32 {
            for j in 0..3u64.pow(n) {
                let spec = CoverSpec::from_u64(n, j).unwrap();
                let fast = covers::cusp_report(&spec);
                let slow = cusp_count_oracle(&budget(), &spec).unwrap();
                assert_eq!(fast, slow, "disagreement at n = {n}, j = {j}");
            }
        }
    }

    #[test]
    fn oracle_cosets_agree_with_boundary_report() {
        let caps = Caps::default();
        for n in 0..=3u32 {
            for j in 0..3u64.pow(n) {
                let spec = CoverSpec::from_u64(n, j).unwrap();
                let report = covers::boundary_report(&spec, &caps).unwrap();
                for (label, cosets) in boundary_cosets(&budget(), &spec).unwrap() {
                    let components: Vec<_> = report
                        .components
                        .iter()
                        .filter(|c| c.curve == label)
                        .collect();
                    assert_eq!(components.len(), cosets.len());
                    for (component, coset) in components.iter().zip(&cosets) {
                        // Canonical representative is the coset minimum.
                        assert_eq!(
                            component.coset_rep,
                            BigUint::from(coset[0]),
                            "n = {n}, j = {j}, curve {label}"
                        );
                        assert_eq!(component.points_on_component, BigUint::from(coset.len()),);
                    }
                }
            }
        }
    }

    #[test]
    fn scan_agrees_with_kernel_lattice_at_full_rank_and_modulus() {
        // The largest configuration the budget allows by default: rank 4
        // at modulus 27 walks all 27^4 residue vectors.
        let images = [1u64, 1, 5, 5];
        let slow = kernel_by_residue_scan(&budget(), &images, 27).unwrap();
        let images_big: Vec<BigUint> = images.iter().map(|&a| BigUint::from(a)).collect();
        let fast = zlattice::kernel_lattice(&images_big, &BigUint::from(27u32));
        assert!(zlattice::lattice_equal(&slow, &fast).unwrap());
        assert_eq!(slow.index(), BigUint::from(27u32));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn scan_agrees_with_kernel_lattice(
            m in prop::sample::select(vec![2u64, 3, 4, 9, 27]),
            raw in prop::collection::vec(0u64..27, 1..=4),
        ) {
            // Keep rank-4 scans to the small moduli; 27^4 is covered by
            // the deterministic test above.
            let m = if raw.len() == 4 && m > 9 { 9 } else { m };
            let images: Vec<u64> = raw.iter().map(|&a| a % m).collect();
            let slow = kernel_by_residue_scan(&budget(), &images, m).unwrap();
            let images_big: Vec<BigUint> =
                images.iter().map(|&a| BigUint::from(a)).collect();
            let fast = zlattice::kernel_lattice(&images_big, &BigUint::from(m));
            prop_assert!(zlattice::lattice_equal(&slow, &fast).unwrap());
            // Determinant equals the closure order of the images.
            let closure = closure_by_enumeration(&budget(), m, &images).unwrap();
            prop_assert_eq!(slow.index(), BigUint::from(closure.len()));
        }
    }
}

//! Serializable report shapes and number conversions.
//!
//! Field order in these structs is the JSON key order, so identical
//! invocations produce byte-identical output. Every numeric field is a
//! plain JSON number; values that do not fit the emitted integer width
//! are rejected rather than silently reformatted.

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use ballq::covers::{BoundaryComponent, CuspReport, FamilyCertificate, LogChernReport};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "1";

pub fn count(value: &BigUint) -> Result<u128, CliError> {
    u128::try_from(value.clone())
        .map_err(|_| CliError::Budget(format!("count {value} exceeds the JSON number range")))
}

pub fn integer(value: &BigInt) -> Result<i128, CliError> {
    i128::try_from(value.clone())
        .map_err(|_| CliError::Budget(format!("value {value} exceeds the JSON number range")))
}

#[derive(Serialize)]
pub struct PerCurveOut {
    #[serde(rename = "T0")]
    pub t0: u128,
    #[serde(rename = "Tinf")]
    pub tinf: u128,
    #[serde(rename = "T1")]
    pub t1: u128,
    #[serde(rename = "Tzeta")]
    pub tzeta: u128,
}

impl PerCurveOut {
    pub fn from_report(report: &CuspReport) -> Result<Self, CliError> {
        Ok(PerCurveOut {
            t0: count(&report.per_curve[0])?,
            tinf: count(&report.per_curve[1])?,
            t1: count(&report.per_curve[2])?,
            tzeta: count(&report.per_curve[3])?,
        })
    }
}

#[derive(Serialize)]
pub struct CuspsOut {
    pub schema_version: &'static str,
    pub n: u32,
    pub j: u128,
    pub degree: u128,
    pub connected: bool,
    pub per_curve: PerCurveOut,
    pub total: u128,
    pub formula_total: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_total: Option<u128>,
}

#[derive(Serialize)]
pub struct ChernOut {
    pub schema_version: &'static str,
    pub n: u32,
    pub j: u128,
    pub c1bar_sq: i128,
    pub c2bar: i128,
    pub bmy_equal: bool,
}

#[derive(Serialize)]
pub struct BaseOut {
    pub schema_version: &'static str,
    pub boundary_curves: usize,
    pub self_intersections: Vec<i128>,
    pub c1bar_sq: i128,
    pub c2bar: i128,
    pub bmy_equal: bool,
    pub oracle_agrees: bool,
}

#[derive(Serialize)]
pub struct ScanRowOut {
    pub j: u128,
    #[serde(rename = "c_T0")]
    pub c_t0: u128,
    #[serde(rename = "c_Tinf")]
    pub c_tinf: u128,
    #[serde(rename = "c_T1")]
    pub c_t1: u128,
    #[serde(rename = "c_Tzeta")]
    pub c_tzeta: u128,
    pub total: u128,
    pub c1bar_sq: i128,
    pub c2bar: i128,
}

pub const SCAN_HEADER: [&str; 8] = [
    "j", "c_T0", "c_Tinf", "c_T1", "c_Tzeta", "total", "c1bar_sq", "c2bar",
];

impl ScanRowOut {
    pub fn new(cusps: &CuspReport, chern: &LogChernReport) -> Result<Self, CliError> {
        Ok(ScanRowOut {
            j: count(cusps.spec.j())?,
            c_t0: count(&cusps.per_curve[0])?,
            c_tinf: count(&cusps.per_curve[1])?,
            c_t1: count(&cusps.per_curve[2])?,
            c_tzeta: count(&cusps.per_curve[3])?,
            total: count(&cusps.total)?,
            c1bar_sq: integer(&chern.c1bar_sq)?,
            c2bar: integer(&chern.c2bar)?,
        })
    }

    pub fn tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            self.j,
            self.c_t0,
            self.c_tinf,
            self.c_t1,
            self.c_tzeta,
            self.total,
            self.c1bar_sq,
            self.c2bar
        )
    }
}

#[derive(Serialize)]
pub struct ScanOut {
    pub schema_version: &'static str,
    pub n: u32,
    pub rows: Vec<ScanRowOut>,
}

#[derive(Serialize)]
pub struct BoundaryOut {
    pub curve: &'static str,
    pub coset_rep: u128,
    pub points_on_component: u128,
    pub self_intersection: i128,
}

impl BoundaryOut {
    pub fn new(component: &BoundaryComponent) -> Result<Self, CliError> {
        Ok(BoundaryOut {
            curve: component.curve.name(),
            coset_rep: count(&component.coset_rep)?,
            points_on_component: count(&component.points_on_component)?,
            self_intersection: integer(&component.self_intersection)?,
        })
    }
}

#[derive(Serialize)]
pub struct MemberOut {
    pub j: u128,
    pub per_curve: PerCurveOut,
    pub total: u128,
    pub boundary: Vec<BoundaryOut>,
    pub c1bar_sq: i128,
    pub c2bar: i128,
}

#[derive(Serialize)]
pub struct ChecksOut {
    pub three_way_cusp_agreement: bool,
    pub shear_verified: bool,
    pub bmy_all_equal: bool,
    pub pairwise_distinct: bool,
}

#[derive(Serialize)]
pub struct SurfaceOut {
    pub n: u32,
    pub blowup_point_count: u128,
}

#[derive(Serialize)]
pub struct CertificateOut {
    pub schema_version: &'static str,
    pub surface: SurfaceOut,
    pub members: Vec<MemberOut>,
    pub checks: ChecksOut,
}

impl CertificateOut {
    pub fn surface_from(family: &FamilyCertificate) -> Result<SurfaceOut, CliError> {
        Ok(SurfaceOut {
            n: family.n,
            blowup_point_count: count(&family.blowup_points)?,
        })
    }
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub schema_version: &'static str,
    pub check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub cases: u64,
    pub passed: bool,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("report types serialize");
    body.push('\n');
    body
}

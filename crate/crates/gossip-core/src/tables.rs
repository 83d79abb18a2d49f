//! Reference values for the topology catalog and their verification.
//!
//! The embedded numbers are data, never recomputed constants. Verification
//! rebuilds each entry from the probability data (the four-vertex catalog)
//! or reruns the solvers (the star-family grids) and diffs the results.
//!
//! A handful of reference entries are known not to match what their own
//! construction yields; those live in [`discrepancies()`](discrepancies) with the reason, and
//! the verification report marks them `Documented` instead of `Mismatch`.
//! The grid rows flagged as root-truncation artifacts are reproduced exactly
//! by re-solving the final polynomial with its leading term dropped, which is
//! what `discrepancy_model_value` does and the module tests pin down.

use crate::analytic::{
    solve_ccs_uniform, solve_symstar_uniform, ClockMode, Diagnostics, OptimizationResult,
};
use crate::error::Result;
use crate::gossip::{lambda2_of, ProbabilityAssignment};
use crate::polynomials::{bracketed_roots, Poly};
use crate::topology::{self, Topology};
use serde::Serialize;
use std::collections::BTreeMap;

/// Verification tolerance for the six-decimal grid tables.
pub const GRID_TOL: f64 = 1e-5;
/// Verification tolerance for the exact-rational catalog values.
pub const CATALOG_TOL: f64 = 1e-9;

// --- four-vertex catalog -------------------------------------------------

pub struct CatalogRow {
    pub name: &'static str,
    pub lambda2: f64,
    pub build: fn() -> (Topology, ProbabilityAssignment<f64>),
}

fn sqrt3() -> f64 {
    3.0_f64.sqrt()
}

fn catalog_path() -> (Topology, ProbabilityAssignment<f64>) {
    let t = topology::path(4);
    let mut tr = BTreeMap::new();
    tr.insert((0usize, 1usize), 1.0);
    tr.insert((3, 2), 1.0);
    tr.insert((1, 0), 0.2);
    tr.insert((1, 2), 0.8);
    tr.insert((2, 3), 0.2);
    tr.insert((2, 1), 0.8);
    (
        t,
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(4), tr),
    )
}

fn catalog_star() -> (Topology, ProbabilityAssignment<f64>) {
    let t = topology::star(3);
    let mut tr = BTreeMap::new();
    for leaf in 1..=3usize {
        tr.insert((leaf, 0), 1.0);
        tr.insert((0, leaf), 1.0 / 3.0);
    }
    (
        t,
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(4), tr),
    )
}

fn catalog_lollipop() -> (Topology, ProbabilityAssignment<f64>) {
    // triangle 0-1-2 with bridging vertex 0 and tail vertex 3
    let t = topology::lollipop(2, 1);
    let s3 = sqrt3();
    let mut tr = BTreeMap::new();
    tr.insert((3usize, 0usize), 1.0);
    tr.insert((0, 3), (5.0 + 2.0 * s3) / 13.0);
    for v in [1usize, 2] {
        tr.insert((0, v), (4.0 - s3) / 13.0);
        tr.insert((v, 0), (24.0 + 7.0 * s3) / 39.0);
    }
    tr.insert((1, 2), (15.0 - 7.0 * s3) / 39.0);
    tr.insert((2, 1), (15.0 - 7.0 * s3) / 39.0);
    (
        t,
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(4), tr),
    )
}

fn catalog_cycle() -> (Topology, ProbabilityAssignment<f64>) {
    let t = topology::cycle(4).expect("n >= 3");
    (t.clone(), ProbabilityAssignment::uniform(&t))
}

fn catalog_diamond() -> (Topology, ProbabilityAssignment<f64>) {
    // four-cycle 0-1-2-3 plus the chord (1,3); the published row lists 1/2 on
    // every edge, which cannot be row-stochastic on degree-3 vertices, so the
    // chord carries the only assignment consistent with the stated optimum:
    // probability zero.
    let t = Topology::custom(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)]).expect("valid");
    let mut tr = BTreeMap::new();
    for (a, b) in [(0usize, 1usize), (1, 2), (2, 3), (0, 3)] {
        tr.insert((a, b), 0.5);
        tr.insert((b, a), 0.5);
    }
    tr.insert((1, 3), 0.0);
    tr.insert((3, 1), 0.0);
    (
        t,
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(4), tr),
    )
}

fn catalog_complete() -> (Topology, ProbabilityAssignment<f64>) {
    let t = topology::complete(4);
    (t.clone(), ProbabilityAssignment::uniform(&t))
}

/// The six connected four-vertex topologies with their reference optima.
pub fn catalog() -> Vec<CatalogRow> {
    vec![
        CatalogRow {
            name: "path",
            lambda2: 9.0 / 10.0,
            build: catalog_path,
        },
        CatalogRow {
            name: "star",
            lambda2: 5.0 / 6.0,
            build: catalog_star,
        },
        CatalogRow {
            name: "lollipop",
            lambda2: (3.0 + 3.0_f64.sqrt()) / (4.0 + 3.0_f64.sqrt()),
            build: catalog_lollipop,
        },
        CatalogRow {
            name: "cycle",
            lambda2: 3.0 / 4.0,
            build: catalog_cycle,
        },
        CatalogRow {
            name: "diamond",
            lambda2: 3.0 / 4.0,
            build: catalog_diamond,
        },
        CatalogRow {
            name: "complete",
            lambda2: 2.0 / 3.0,
            build: catalog_complete,
        },
    ]
}

// --- star-family grids ----------------------------------------------------

/// Grid ranges: `n` in 3..=8 (columns), `k` in 2..=10 (rows).
pub const GRID_N: std::ops::RangeInclusive<usize> = 3..=8;
pub const GRID_K: std::ops::RangeInclusive<usize> = 2..=10;

pub const SYMSTAR_M: [[usize; 6]; 9] = [
    [0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1],
    [2, 1, 1, 1, 1, 1],
    [2, 2, 1, 1, 1, 1],
    [2, 2, 2, 1, 1, 1],
    [2, 2, 2, 2, 2, 1],
    [3, 2, 2, 2, 2, 2],
];

pub const SYMSTAR_S: [[f64; 6]; 9] = [
    [0.971428, 0.97863247, 0.98295454, 0.98582995, 0.987878, 0.9894117],
    [0.988548, 0.99146614, 0.99320128, 0.9942928, 0.995122, 0.995741],
    [0.994781, 0.996114, 0.996906, 0.997430, 0.9978028, 0.9980817],
    [0.997205, 0.997917, 0.998341, 0.998622, 0.998822, 0.998971],
    [0.998334, 0.998758, 0.999011, 0.999178, 0.999297, 0.999386],
    [0.998929, 0.999201, 0.999363, 0.999471, 0.999547, 0.99960],
    [0.999272, 0.999456, 0.999567, 0.999640, 0.999692, 0.999731],
    [0.999482, 0.999614, 0.999692, 0.999744, 0.999780, 0.999808],
    [0.999619, 0.999715, 0.999773, 0.999811, 0.999838, 0.999859],
];

pub const CCS_M: [[usize; 6]; 9] = [
    [0, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 1],
    [2, 2, 2, 2, 2, 2],
    [2, 2, 2, 2, 2, 2],
    [2, 2, 2, 2, 2, 2],
    [3, 2, 2, 2, 2, 2],
    [3, 3, 3, 3, 3, 3],
    [3, 3, 3, 3, 3, 3],
];

pub const CCS_S: [[f64; 6]; 9] = [
    [0.95, 0.964285, 0.972222, 0.977272, 0.980769, 0.983333],
    [0.982725, 0.987533, 0.990242, 0.991983, 0.993196, 0.994090],
    [0.992852, 0.994793, 0.995903, 0.996623, 0.997127, 0.997500],
    [0.996396, 0.997360, 0.997917, 0.998279, 0.998534, 0.998723],
    [0.997937, 0.998483, 0.998801, 0.999008, 0.999154, 0.999263],
    [0.998712, 0.999051, 0.999248, 0.999377, 0.999469, 0.999536],
    [0.999143, 0.999367, 0.999498, 0.999584, 0.999645, 0.999690],
    [0.999401, 0.999557, 0.999648, 0.999708, 0.999751, 0.999783],
    [0.999566, 0.999678, 0.999744, 0.999788, 0.999819, 0.999842],
];

// --- documented discrepancies ----------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Symstar,
    Ccs,
    Prism,
    Wheel,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub family: Family,
    /// `(n, k)` for grid cells; unused otherwise.
    pub cell: Option<(usize, usize)>,
    pub reason: &'static str,
}

/// Reference entries that do not match what their own construction yields.
pub fn discrepancies() -> Vec<Discrepancy> {
    let mut list = vec![
        Discrepancy {
            family: Family::Prism,
            cell: None,
            reason: "prose states 5/14 for the prism; the product equation and the stated \
                     probabilities 3/7, 2/7 give 6/7, spectrally confirmed",
        },
        Discrepancy {
            family: Family::Wheel,
            cell: None,
            reason: "for n >= 7 the advertised uniform-clock value (2n-1)/2n is not produced \
                     by the printed rim-heavy transitions; the eigensolver value is returned \
                     and the weighted-clock variant is the slower of the two",
        },
    ];
    for n in GRID_N {
        list.push(Discrepancy {
            family: Family::Symstar,
            cell: Some((n, 2)),
            reason: "k=2 row derives from the final polynomial with its quadratic term \
                     dropped; the exact root gives a smaller (better) optimum",
        });
        list.push(Discrepancy {
            family: Family::Ccs,
            cell: Some((n, 2)),
            reason: "k=2 row reports the all-inward boundary case of a truncated polynomial; \
                     the feasible interior solution at boundary index 1 is strictly better",
        });
    }
    for n in 6..=8 {
        list.push(Discrepancy {
            family: Family::Symstar,
            cell: Some((n, 3)),
            reason: "k=3 entry derives from the final polynomial with its cubic term \
                     dropped; the value is below what any feasible assignment achieves",
        });
    }
    list
}

pub fn is_documented(family: Family, cell: (usize, usize)) -> bool {
    discrepancies()
        .iter()
        .any(|d| d.family == family && d.cell == Some(cell))
}

/// Re-derive the published value of a documented grid cell from the
/// truncation that produced it: solve the final polynomial at the published
/// boundary index with its leading term removed. Used by tests to show the
/// discrepancies are fully explained, not hand-waved.
pub fn discrepancy_model_value(family: Family, n: usize, k: usize) -> Option<f64> {
    let (poly, big_n): (Poly<f64>, usize) = match family {
        Family::Symstar => {
            let m = SYMSTAR_M[k - 2][n - 3];
            (symstar_final_poly(n, k, m), 1 + n * k)
        }
        Family::Ccs => {
            let m = CCS_M[k - 2][n - 3];
            (ccs_final_poly(n, k, m), n * k)
        }
        _ => return None,
    };
    let mut coeffs = poly.coeffs;
    coeffs.truncate(poly_degree(&coeffs)); // drop the leading term
    let truncated = Poly { coeffs };
    let roots = bracketed_roots(&truncated, 1e-3).ok()?;
    let x = *roots.last()?;
    Some(x / (2.0 * big_n as f64) + 1.0)
}

fn poly_degree(coeffs: &[f64]) -> usize {
    let mut d = coeffs.len().saturating_sub(1);
    while d > 0 && coeffs[d] == 0.0 {
        d -= 1;
    }
    d
}

fn symstar_final_poly(n: usize, k: usize, m: usize) -> Poly<f64> {
    use crate::polynomials::{f_poly, Convention};
    let nf = n as f64;
    let c0 = 6.0 * (1.0 + nf * ((m + 1) * (m + 2)) as f64);
    let c1 = nf * (m + 1) as f64 * (2 * m * m + 7 * m + 6) as f64;
    let c2 = 6.0 * nf * ((m + 1) * (m + 1)) as f64;
    f_poly(Convention::Ccs, k as isize - m as isize - 1)
        .mul_linear(c0, c1)
        .sub(&f_poly(Convention::Ccs, k as isize - m as isize - 2).scale(c2))
}

fn ccs_final_poly(n: usize, k: usize, m: usize) -> Poly<f64> {
    use crate::polynomials::{f_poly, Convention};
    let nf = n as f64;
    let mf = m as f64;
    let g = (2.0 * nf / (nf - 1.0)).sqrt();
    let c0 = 12.0 * nf * g * mf * mf
        + (6.0 * (nf - 1.0) * g * g + 12.0 * nf * g + 12.0 * nf) * mf
        + 18.0 * nf * g
        - 6.0 * g;
    let c1 = 4.0 * nf * g * mf * mf * mf
        + (3.0 * nf * (g + 1.0) * (g + 1.0) + 3.0 * nf - 3.0 * g * g) * mf * mf
        + (3.0 * (nf - 1.0) * g * g + (8.0 * nf - 6.0) * g + 6.0 * nf) * mf
        + 6.0 * g * (nf - 1.0);
    let c2 = 6.0 * (1.0 + g * mf) * (2.0 * nf * mf + g * (nf - 1.0));
    f_poly(Convention::Ccs, k as isize - m as isize - 1)
        .mul_linear(c0, c1)
        .sub(&f_poly(Convention::Ccs, k as isize - m as isize - 2).scale(c2))
}

// --- verification ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Match,
    Documented,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub name: &'static str,
    pub expected: f64,
    pub got: f64,
    pub status: CellStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridCellReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub table_m: usize,
    pub got_m: usize,
    pub table_s: f64,
    pub got_s: f64,
    pub status: CellStatus,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct VerifyReport {
    pub catalog: Vec<CatalogReport>,
    pub grid: Vec<GridCellReport>,
}

impl VerifyReport {
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut m = 0;
        let mut d = 0;
        let mut x = 0;
        for s in self
            .catalog
            .iter()
            .map(|r| r.status)
            .chain(self.grid.iter().map(|r| r.status))
        {
            match s {
                CellStatus::Match => m += 1,
                CellStatus::Documented => d += 1,
                CellStatus::Mismatch => x += 1,
            }
        }
        (m, d, x)
    }

    pub fn all_accounted_for(&self) -> bool {
        self.counts().2 == 0
    }
}

/// Rebuild every catalog entry from its probability data and compare the
/// spectra; rerun both grid sweeps against the solvers.
pub fn verify_all() -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for row in catalog() {
        let (topo, assignment) = (row.build)();
        let got = lambda2_of(&topo, &assignment)?;
        report.catalog.push(CatalogReport {
            name: row.name,
            expected: row.lambda2,
            got,
            status: if (got - row.lambda2).abs() <= CATALOG_TOL {
                CellStatus::Match
            } else {
                CellStatus::Mismatch
            },
        });
    }
    for family in [Family::Symstar, Family::Ccs] {
        for k in GRID_K {
            for n in GRID_N {
                let r: OptimizationResult<f64> = match family {
                    Family::Symstar => solve_symstar_uniform(n, k)?,
                    Family::Ccs => solve_ccs_uniform(n, k)?,
                    _ => unreachable!(),
                };
                let (table_m, table_s) = match family {
                    Family::Symstar => (SYMSTAR_M[k - 2][n - 3], SYMSTAR_S[k - 2][n - 3]),
                    Family::Ccs => (CCS_M[k - 2][n - 3], CCS_S[k - 2][n - 3]),
                    _ => unreachable!(),
                };
                let got_m = r.diagnostics.m.unwrap_or(usize::MAX);
                let matches = got_m == table_m && (r.lambda2 - table_s).abs() <= GRID_TOL;
                let status = if matches {
                    CellStatus::Match
                } else if is_documented(family, (n, k)) {
                    CellStatus::Documented
                } else {
                    CellStatus::Mismatch
                };
                report.grid.push(GridCellReport {
                    family,
                    n,
                    k,
                    table_m,
                    got_m,
                    table_s,
                    got_s: r.lambda2,
                    status,
                });
            }
        }
    }
    Ok(report)
}

/// Numeric fallback result wrapper used by callers that route unsupported
/// descriptors to the oracle; kept here so the CLI needs no extra glue.
pub fn numeric_result(
    lambda2: f64,
    mode: ClockMode,
    assignment: ProbabilityAssignment<f64>,
    note: String,
) -> OptimizationResult<f64> {
    let mut diag = Diagnostics::labeled(note);
    diag.formula_lambda2 = Some(lambda2);
    OptimizationResult {
        lambda2,
        mode,
        diagnostics: diag,
        assignment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_rows_verify_spectrally() {
        for row in catalog() {
            let (t, a) = (row.build)();
            let got = lambda2_of(&t, &a).unwrap();
            assert!(
                (got - row.lambda2).abs() <= CATALOG_TOL,
                "{}: {got} vs {}",
                row.name,
                row.lambda2
            );
        }
    }

    #[test]
    fn full_verification_has_no_unexplained_mismatches() {
        let report = verify_all().unwrap();
        let (matched, documented, mismatched) = report.counts();
        assert_eq!(mismatched, 0, "{report:?}");
        assert_eq!(matched + documented, 6 + 2 * 54);
        // exactly the documented grid cells fall out
        assert_eq!(documented, 6 + 6 + 3);
    }

    #[test]
    fn documented_cells_are_reproduced_by_the_truncation_model() {
        // each flagged grid entry is the root of its final polynomial with
        // the leading term dropped, demonstrating where the number came from
        for d in discrepancies() {
            let Some((n, k)) = d.cell else { continue };
            let model = discrepancy_model_value(d.family, n, k).unwrap();
            let table = match d.family {
                Family::Symstar => SYMSTAR_S[k - 2][n - 3],
                Family::Ccs => CCS_S[k - 2][n - 3],
                _ => unreachable!(),
            };
            assert!(
                (model - table).abs() <= 1e-6,
                "{:?} ({n},{k}): model {model} vs table {table}",
                d.family
            );
        }
    }

    #[test]
    fn solver_beats_the_published_value_on_ccs_k2_cells() {
        // the documented ccs k=2 cells are feasibility artifacts: the honest
        // search finds a strictly better interior optimum
        for n in GRID_N {
            let r = solve_ccs_uniform::<f64>(n, 2).unwrap();
            assert!(r.lambda2 < CCS_S[0][n - 3]);
            assert_eq!(r.diagnostics.m, Some(1));
        }
    }
}

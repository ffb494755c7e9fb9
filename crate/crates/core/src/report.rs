//! Full analysis of one algebra and the catalog-wide comparison report.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry, ClaimedRanges, CLAIMED_RANGES};
use crate::invariants::{self, CentroidResult, DerivationResult, InnerResult};
use crate::scalar::{GaussianRational, Scalar};
use crate::solver::{ExceptionalLocus, Matrix, MatrixSubspace, Solved};
use crate::structconst::{AssociatorViolation, StructureConstants, Vector};

use num_traits::{One, Signed, Zero};

/// Every invariant of one algebra, computed generically in `a`.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub algebra: StructureConstants,
    pub violations: Vec<AssociatorViolation>,
    pub nilindex: Option<usize>,
    pub center: Solved,
    pub der: DerivationResult,
    pub cent: CentroidResult,
    pub inn: InnerResult,
}

impl Analysis {
    pub fn run(algebra: &StructureConstants) -> Self {
        Self {
            algebra: algebra.clone(),
            violations: algebra.check_associative(),
            nilindex: algebra.nilindex(),
            center: algebra.center(),
            der: invariants::derivation_algebra(algebra),
            cent: invariants::centroid(algebra),
            inn: invariants::inner_derivations(algebra),
        }
    }

    /// Union of the loci of the center and the three operator spaces.
    pub fn locus(&self) -> ExceptionalLocus {
        let mut l = self.center.locus.clone();
        l.merge(&self.der.locus);
        l.merge(&self.cent.locus);
        l.merge(&self.inn.locus);
        l
    }

    pub fn dims(&self) -> Dims {
        Dims {
            center: self.center.space.dim(),
            der: self.der.dim(),
            cent: self.cent.dim(),
            inn: self.inn.dim(),
        }
    }

    pub fn hard_checks(&self) -> HardChecks {
        let n = self.algebra.dim();
        let alg = &self.algebra;
        HardChecks {
            associative: self.violations.is_empty(),
            nilpotent: self.nilindex.is_some_and(|k| k <= n + 1),
            inn_dim_is_n_minus_center: self.inn.dim() + self.center.space.dim() == n,
            inner_in_der: self
                .inn
                .generators
                .iter()
                .all(|g| self.der.space.contains(g).unwrap_or(false)),
            der_lie_closed: invariants::lie_closure_check(&self.der),
            cent_contains_identity: self.cent.space.contains(&Matrix::identity(n)).unwrap_or(false),
            cent_closed_under_composition: self.cent.space.is_closed_under_composition().unwrap_or(false),
            der_basis_verified: self.der.space.basis().iter().all(|d| invariants::is_derivation(alg, d)),
            cent_basis_verified: self
                .cent
                .space
                .basis()
                .iter()
                .all(|c| invariants::is_centroid_element(alg, c)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub center: usize,
    pub der: usize,
    pub cent: usize,
    pub inn: usize,
}

impl Dims {
    /// `inn ≤ cent ≤ der`.
    pub fn chain_holds(&self) -> bool {
        self.inn <= self.cent && self.cent <= self.der
    }
}

/// Mathematically forced properties. Any `false` is a hard failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HardChecks {
    pub associative: bool,
    pub nilpotent: bool,
    pub inn_dim_is_n_minus_center: bool,
    pub inner_in_der: bool,
    pub der_lie_closed: bool,
    pub cent_contains_identity: bool,
    pub cent_closed_under_composition: bool,
    pub der_basis_verified: bool,
    pub cent_basis_verified: bool,
}

impl HardChecks {
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.associative, "associative"),
            (self.nilpotent, "nilpotent"),
            (self.inn_dim_is_n_minus_center, "inn_dim_is_n_minus_center"),
            (self.inner_in_der, "inner_in_der"),
            (self.der_lie_closed, "der_lie_closed"),
            (self.cent_contains_identity, "cent_contains_identity"),
            (self.cent_closed_under_composition, "cent_closed_under_composition"),
            (self.der_basis_verified, "der_basis_verified"),
            (self.cent_basis_verified, "cent_basis_verified"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.failures().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationView {
    /// 1-based `(i, j, k)` of `(e_i e_j) e_k − e_i (e_j e_k)`.
    pub triple: [usize; 3],
    pub associator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterView {
    pub dim: usize,
    pub basis: Vec<String>,
    pub expected: Option<Vec<String>>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceView {
    pub dim: usize,
    pub expected: Option<usize>,
    pub matches: Option<bool>,
    /// Generic element, rows of the matrix with one free parameter per
    /// basis element, named after the pivot position.
    pub generic_element: Vec<Vec<String>>,
    pub basis: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LocusView {
    pub polynomials: Vec<String>,
    /// Roots in ℚ(i).
    pub roots: Vec<String>,
    pub radical_roots: Vec<String>,
    pub unsolved: Vec<String>,
    pub max_degree: usize,
}

impl From<&ExceptionalLocus> for LocusView {
    fn from(l: &ExceptionalLocus) -> Self {
        Self {
            polynomials: l.polys().map(ToString::to_string).collect(),
            roots: l.solved_roots().map(ToString::to_string).collect(),
            radical_roots: l.radical_roots(),
            unsolved: l.unsolved().map(ToString::to_string).collect(),
            max_degree: l.max_degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationView {
    pub alpha: String,
    pub dims: Dims,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub dim: usize,
    pub parametric: bool,
    pub associator_violations: Vec<ViolationView>,
    pub nilindex: Option<usize>,
    pub center: CenterView,
    pub der: SpaceView,
    pub cent: SpaceView,
    pub inn: SpaceView,
    pub chain_holds: bool,
    pub exceptional_locus: LocusView,
    pub specializations: Vec<SpecializationView>,
    pub hard_checks: HardChecks,
    pub discrepancies: Vec<String>,
    pub provenance_notes: Vec<String>,
}

impl EntryReport {
    pub fn dims(&self) -> Dims {
        Dims {
            center: self.center.dim,
            der: self.der.dim,
            cent: self.cent.dim,
            inn: self.inn.dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimMismatch {
    pub id: String,
    pub invariant: String,
    pub printed: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeAudit {
    pub computed: (usize, usize),
    pub printed: Option<(usize, usize)>,
    pub claimed: (usize, usize),
    pub claim_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainAudit {
    pub holds: usize,
    pub fails: Vec<String>,
    /// Entries whose printed dims already violate the chain.
    pub printed_fails: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub associative: usize,
    pub nilpotent: usize,
    pub center_matches: usize,
    pub center_mismatches: Vec<String>,
    pub dims_expected: usize,
    pub dims_matched: usize,
    pub dim_mismatches: Vec<DimMismatch>,
    pub ranges: RangeSet,
    pub chain: ChainAudit,
    pub specialization_consistent: bool,
    pub hard_invariants_hold: bool,
    pub hard_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeSet {
    pub der: RangeAudit,
    pub cent: RangeAudit,
    pub inn: RangeAudit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl ComparisonReport {
    pub fn entry(&self, id: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        crate::render::json(self)
    }

    pub fn to_markdown(&self) -> String {
        crate::render::markdown(self)
    }

    /// One line per mismatch with a printed value, in the format of
    /// `data/pinned_mismatches.txt`.
    pub fn mismatch_lines(&self) -> Vec<String> {
        let centers = self
            .entries
            .iter()
            .filter(|e| e.center.matches == Some(false))
            .map(|e| format!("center {}", e.id));
        let dims = self.summary.dim_mismatches.iter().map(|m| {
            format!("{} {} printed {} computed {}", m.invariant, m.id, m.printed, m.computed)
        });
        centers.chain(dims).collect()
    }
}

/// Fixed sample points for specialization checks in the report.
pub fn sample_points() -> Vec<GaussianRational> {
    [(2, 1), (3, 1), (-2, 1), (1, 2), (5, 3), (-7, 4), (11, 5)]
        .into_iter()
        .map(|(p, q)| GaussianRational::from_ratio(p, q))
        .collect()
}

/// Describes an analysis. `expected` supplies printed values when known.
pub fn describe(analysis: &Analysis, entry: Option<&CatalogEntry>) -> EntryReport {
    let alg = &analysis.algebra;
    let n = alg.dim();
    let dims = analysis.dims();
    let id = entry
        .map(|e| e.id.clone())
        .or_else(|| alg.name().map(str::to_string))
        .unwrap_or_default();

    let expected_center = entry.and_then(|e| e.expected_center.as_ref());
    let center_matches = expected_center.map(|idx| index_span(n, idx) == analysis.center.space);
    let center = CenterView {
        dim: dims.center,
        basis: analysis
            .center
            .space
            .basis()
            .iter()
            .map(|m| Vector(m.flat().to_vec()).to_string())
            .collect(),
        expected: expected_center.map(|idx| idx.iter().map(|k| format!("e{k}")).collect()),
        matches: center_matches,
    };

    let printed = entry.map(|e| e.expected_dims);
    let der = space_view(&analysis.der.space, "d", printed.and_then(|p| p.der));
    let cent = space_view(&analysis.cent.space, "c", printed.and_then(|p| p.cent));
    let inn = space_view(&analysis.inn.space, "d", printed.and_then(|p| p.inn));

    let locus = analysis.locus();
    let specializations = if alg.is_parametric() {
        sample_points()
            .into_iter()
            .filter(|t| !locus.contains_root(t))
            .filter_map(|t| {
                let special = alg.specialize(&t).ok()?;
                let d = Analysis::run(&special).dims();
                Some(SpecializationView {
                    alpha: t.to_string(),
                    dims: d,
                    consistent: d == dims,
                })
            })
            .collect()
    } else {
        Vec::new()
    };

    let violations: Vec<ViolationView> = analysis
        .violations
        .iter()
        .map(|v| ViolationView {
            triple: [v.i + 1, v.j + 1, v.k + 1],
            associator: v.associator.to_string(),
        })
        .collect();

    let hard_checks = analysis.hard_checks();
    let mut discrepancies = Vec::new();
    if let Some(first) = violations.first() {
        let [i, j, k] = first.triple;
        discrepancies.push(format!(
            "not associative: {} violating basis triples, first (e{i} e{j}) e{k} - e{i} (e{j} e{k}) = {}",
            violations.len(),
            first.associator
        ));
    }
    if center_matches == Some(false) {
        discrepancies.push(format!(
            "center printed as span{{{}}}, computed span{{{}}}",
            center.expected.as_deref().unwrap_or_default().join(", "),
            center.basis.join(", ")
        ));
    }
    for (name, view) in [("der", &der), ("cent", &cent), ("inn", &inn)] {
        if let (Some(p), Some(false)) = (view.expected, view.matches) {
            discrepancies.push(format!("{name} dim printed as {p}, computed {}", view.dim));
        }
    }
    if let Some(p) = inn.expected {
        if p + dims.center > n {
            discrepancies.push(format!(
                "printed inn dim {p} exceeds n - dim Z = {}",
                n - dims.center
            ));
        }
    }
    for failure in hard_checks.failures() {
        discrepancies.push(format!("hard check failed: {failure}"));
    }

    EntryReport {
        id,
        dim: n,
        parametric: alg.is_parametric(),
        associator_violations: violations,
        nilindex: analysis.nilindex,
        center,
        der,
        cent,
        inn,
        chain_holds: dims.chain_holds(),
        exceptional_locus: LocusView::from(&locus),
        specializations,
        hard_checks,
        discrepancies,
        provenance_notes: entry.map(|e| e.provenance_notes.clone()).unwrap_or_default(),
    }
}

fn index_span(n: usize, indices: &[usize]) -> MatrixSubspace {
    let vectors = indices
        .iter()
        .map(|&k| Vector::basis(n, k - 1).0)
        .collect();
    MatrixSubspace::span_flat(n, 1, vectors).0
}

fn space_view(space: &MatrixSubspace, prefix: &str, expected: Option<usize>) -> SpaceView {
    SpaceView {
        dim: space.dim(),
        expected,
        matches: expected.map(|e| e == space.dim()),
        generic_element: generic_element(space, prefix),
        basis: space.basis().iter().map(matrix_strings).collect(),
    }
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

/// `Σ_k p_k B_k` written entrywise, where `p_k` is named `{prefix}{r}{c}`
/// after the 1-based pivot position of `B_k`.
pub fn generic_element(space: &MatrixSubspace, prefix: &str) -> Vec<Vec<String>> {
    let (rows, cols) = space.ambient();
    let names: Vec<String> = space
        .pivots()
        .iter()
        .map(|&p| format!("{prefix}{}{}", p / cols + 1, p % cols + 1))
        .collect();
    (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| {
                    let terms: Vec<(&Scalar, &str)> = space
                        .basis()
                        .iter()
                        .zip(&names)
                        .map(|(b, name)| (b.get(r, c), name.as_str()))
                        .filter(|(v, _)| !v.is_zero())
                        .collect();
                    linear_combination(&terms)
                })
                .collect()
        })
        .collect()
}

fn linear_combination(terms: &[(&Scalar, &str)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (coef, name)) in terms.iter().enumerate() {
        let negated = -*coef;
        let (negative, magnitude) = match coef.as_constant() {
            Some(c) if c.is_real() && c.re.is_negative() => (true, negated),
            _ => (false, (*coef).clone()),
        };
        if k > 0 {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        if !magnitude.is_one() {
            match magnitude.as_constant() {
                Some(c) if c.is_real() && c.re.is_integer() => out.push_str(&c.to_string()),
                _ => {
                    out.push_str(&magnitude.factor_string());
                    out.push('*');
                }
            }
        }
        out.push_str(name);
    }
    out
}

fn range_audit<'a>(
    computed: impl Iterator<Item = usize>,
    printed: impl Iterator<Item = Option<usize>> + 'a,
    claimed: (usize, usize),
) -> RangeAudit {
    let computed: Vec<usize> = computed.collect();
    let printed: Vec<usize> = printed.flatten().collect();
    let minmax = |v: &[usize]| Some((*v.iter().min()?, *v.iter().max()?));
    let computed_range = minmax(&computed).unwrap_or((0, 0));
    RangeAudit {
        computed: computed_range,
        printed: minmax(&printed),
        claimed,
        claim_holds: computed.iter().all(|d| (claimed.0..=claimed.1).contains(d)),
    }
}

fn summarize(entries: &[EntryReport], catalog: &[CatalogEntry], claimed: ClaimedRanges) -> Summary {
    let mut dim_mismatches = Vec::new();
    let mut dims_expected = 0;
    let mut dims_matched = 0;
    for e in entries {
        for (name, view) in [("der", &e.der), ("cent", &e.cent), ("inn", &e.inn)] {
            if let Some(p) = view.expected {
                dims_expected += 1;
                if p == view.dim {
                    dims_matched += 1;
                } else {
                    dim_mismatches.push(DimMismatch {
                        id: e.id.clone(),
                        invariant: name.to_string(),
                        printed: p,
                        computed: view.dim,
                    });
                }
            }
        }
    }
    let printed_fails = catalog
        .iter()
        .filter(|c| match (c.expected_dims.inn, c.expected_dims.cent, c.expected_dims.der) {
            (Some(i), Some(c), Some(d)) => !(i <= c && c <= d),
            _ => false,
        })
        .map(|c| c.id.clone())
        .collect();
    let hard_failures: Vec<String> = entries
        .iter()
        .flat_map(|e| e.hard_checks.failures().into_iter().map(move |f| format!("{}: {f}", e.id)))
        .collect();
    Summary {
        entries: entries.len(),
        associative: entries.iter().filter(|e| e.hard_checks.associative).count(),
        nilpotent: entries.iter().filter(|e| e.hard_checks.nilpotent).count(),
        center_matches: entries.iter().filter(|e| e.center.matches == Some(true)).count(),
        center_mismatches: entries
            .iter()
            .filter(|e| e.center.matches == Some(false))
            .map(|e| e.id.clone())
            .collect(),
        dims_expected,
        dims_matched,
        dim_mismatches,
        ranges: RangeSet {
            der: range_audit(
                entries.iter().map(|e| e.der.dim),
                catalog.iter().map(|c| c.expected_dims.der),
                claimed.der,
            ),
            cent: range_audit(
                entries.iter().map(|e| e.cent.dim),
                catalog.iter().map(|c| c.expected_dims.cent),
                claimed.cent,
            ),
            inn: range_audit(
                entries.iter().map(|e| e.inn.dim),
                catalog.iter().map(|c| c.expected_dims.inn),
                claimed.inn,
            ),
        },
        chain: ChainAudit {
            holds: entries.iter().filter(|e| e.chain_holds).count(),
            fails: entries.iter().filter(|e| !e.chain_holds).map(|e| e.id.clone()).collect(),
            printed_fails,
        },
        specialization_consistent: entries
            .iter()
            .flat_map(|e| &e.specializations)
            .all(|s| s.consistent),
        hard_invariants_hold: hard_failures.is_empty(),
        hard_failures,
    }
}

/// Analyzes every entry in parallel and merges in catalog order.
pub fn run_report(catalog: &[CatalogEntry]) -> ComparisonReport {
    let entries: Vec<EntryReport> = catalog
        .par_iter()
        .map(|e| describe(&Analysis::run(&e.algebra), Some(e)))
        .collect();
    let summary = summarize(&entries, catalog, CLAIMED_RANGES);
    ComparisonReport { entries, summary }
}

/// Report over the embedded catalog.
pub fn run_full_report() -> ComparisonReport {
    run_report(&catalog::load_catalog())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::fixtures;

    #[test]
    fn square_fixture_generic_elements() {
        let a = Analysis::run(&fixtures::square_to_e2());
        let r = describe(&a, None);
        assert_eq!(r.der.generic_element, [vec!["d11", "0"], vec!["d21", "2d11"]]);
        assert_eq!(r.cent.generic_element, [vec!["c11", "0"], vec!["c21", "c11"]]);
        assert_eq!(r.center.basis, ["e1", "e2"]);
        assert!(r.hard_checks.all_hold());
        assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn non_associative_fixture_fails_hard_checks() {
        let a = Analysis::run(&fixtures::non_associative());
        let r = describe(&a, None);
        assert!(!r.hard_checks.associative);
        assert_eq!(r.associator_violations[0].triple, [1, 1, 1]);
        assert!(r.discrepancies[0].starts_with("not associative"));
    }

    #[test]
    fn idempotent_is_not_nilpotent() {
        let a = Analysis::run(&fixtures::idempotent());
        assert_eq!(a.nilindex, None);
        assert!(!a.hard_checks().nilpotent);
    }

    #[test]
    fn signs_and_fractions_in_combinations() {
        let half = Scalar::from_ratio(-1, 2);
        let two = Scalar::from_integer(2);
        let a = Scalar::param();
        let s = linear_combination(&[(&two, "d11"), (&half, "d21"), (&a, "d31")]);
        assert_eq!(s, "2d11 - 1/2*d21 + a*d31");
        let m1 = Scalar::from_integer(-1);
        assert_eq!(linear_combination(&[(&m1, "c11")]), "-c11");
    }

    #[test]
    fn index_span_is_canonical() {
        let s = index_span(3, &[3, 1]);
        assert_eq!(s.pivots(), &[0, 2]);
    }
}

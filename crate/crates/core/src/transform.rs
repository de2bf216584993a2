//! Puncturing, shortening, and the construction of stabilizer EAQECCs from
//! self-orthogonal codes, with machine-checked reports of every clause.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::GfMatrix;
use crate::symplectic_code::{CodeError, CodeParams, LinearCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("position {position} is outside 1..={n}")]
    OutOfRange { position: usize, n: usize },
    #[error("position {0} is listed more than once")]
    Duplicate(usize),
    #[error("input code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("l must satisfy 1 <= l <= d-1 (l = {l}, d = {})", display_d(*.d))]
    Precondition { l: usize, d: Option<usize> },
}

fn display_d(d: Option<usize>) -> String {
    d.map_or("undefined".into(), |d| d.to_string())
}

/// Sorted, duplicate-free coordinate indices, 1-based, each naming the pair
/// `(i, n+i)`. Always relative to the original code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionSet(Vec<usize>);

impl PositionSet {
    pub fn new(positions: &[usize], n: usize) -> Result<Self, TransformError> {
        let mut p = positions.to_vec();
        p.sort_unstable();
        for w in p.windows(2) {
            if w[0] == w[1] {
                return Err(TransformError::Duplicate(w[0]));
            }
        }
        if let Some(&bad) = p.iter().find(|&&x| x == 0 || x > n) {
            return Err(TransformError::OutOfRange { position: bad, n });
        }
        Ok(Self(p))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_for(&self, n: usize) -> Result<(), TransformError> {
        match self.0.iter().find(|&&x| x > n) {
            Some(&position) => Err(TransformError::OutOfRange { position, n }),
            None => Ok(()),
        }
    }

    /// 0-based columns `{i-1, n+i-1}` of the length-2n representation.
    fn columns(&self, n: usize) -> Vec<usize> {
        self.0.iter().flat_map(|&i| [i - 1, n + i - 1]).collect()
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// Deletes coordinates `(i, n+i)` for every `i` in `positions`.
pub fn puncture(code: &LinearCode, positions: &PositionSet) -> Result<LinearCode, TransformError> {
    positions.check_for(code.n())?;
    let cols = positions.columns(code.n());
    let m = code.basis().delete_columns(&cols);
    Ok(LinearCode::from_matrix(code.n() - positions.len(), &m)?)
}

/// Keeps the codewords vanishing at every `(i, n+i)` in `positions`, then
/// deletes those coordinates.
pub fn shorten(code: &LinearCode, positions: &PositionSet) -> Result<LinearCode, TransformError> {
    positions.check_for(code.n())?;
    let n = code.n();
    let cols = positions.columns(n);
    let field = code.field().clone();
    let mut vanishing = GfMatrix::zeros(field, 2 * n - cols.len(), 2 * n);
    for (r, c) in (0..2 * n).filter(|c| !cols.contains(c)).enumerate() {
        vanishing.set(r, c, 1);
    }
    let sub = code
        .basis()
        .row_space_intersect(&vanishing)
        .map_err(CodeError::from)?;
    Ok(LinearCode::from_matrix(
        n - positions.len(),
        &sub.delete_columns(&cols),
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The hypothesis did not hold, so the implication is trivially true.
    Vacuous,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Vacuous => "VACUOUS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub status: CheckStatus,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString, ok: bool) -> Self {
        Self {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
        }
    }

    fn conditional(
        name: &str,
        hypothesis: bool,
        expected: impl ToString,
        actual: impl ToString,
        ok: bool,
    ) -> Self {
        let mut c = Self::new(name, expected, actual, ok);
        if !hypothesis {
            c.status = CheckStatus::Vacuous;
        }
        c
    }

    /// Pass or vacuous.
    pub fn holds(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub input_params: Option<CodeParams>,
    pub output_params: Option<CodeParams>,
    pub positions: PositionSet,
    pub checks: Vec<Check>,
    /// No check failed.
    pub overall: bool,
}

impl TheoremReport {
    fn new(
        input_params: Option<CodeParams>,
        output_params: Option<CodeParams>,
        positions: PositionSet,
        checks: Vec<Check>,
    ) -> Self {
        let overall = checks.iter().all(Check::holds);
        Self {
            input_params,
            output_params,
            positions,
            checks,
            overall,
        }
    }

    /// Every check passed outright, none vacuously.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructOptions {
    pub cap: u64,
    /// Skip enumerating the dual for the pure distance and use this value.
    pub trusted_d: Option<usize>,
}

impl ConstructOptions {
    pub fn new(cap: u64) -> Self {
        Self {
            cap,
            trusted_d: None,
        }
    }
}

fn fmt_opt(d: Option<usize>) -> String {
    display_d(d)
}

/// Checks `1 <= l <= d - 1` against the pure distance of `code`.
fn check_length(l: usize, d: Option<usize>) -> Result<(), TransformError> {
    match d {
        Some(d) if l >= 1 && l < d => Ok(()),
        _ => Err(TransformError::Precondition { l, d }),
    }
}

/// Punctures a self-orthogonal code at `positions` and verifies that the
/// result is an `[[n-l, k, >=d; l]]` stabilizer EAQECC whose dual is the
/// shortened dual of the input.
pub fn construct_eaqecc(
    code: &LinearCode,
    positions: &PositionSet,
    opts: ConstructOptions,
) -> Result<(LinearCode, TheoremReport), TransformError> {
    positions.check_for(code.n())?;
    if !code.is_self_orthogonal() {
        return Err(TransformError::NotSelfOrthogonal);
    }
    let dual = code.dual();
    let d = match opts.trusted_d {
        Some(d) => Some(d),
        None => dual.min_symplectic_weight(None, opts.cap)?,
    };
    let l = positions.len();
    check_length(l, d)?;

    let input = code.params_with_pure_distance(opts.cap, Some(d))?;
    let punctured = puncture(code, positions)?;
    let output = punctured.params(opts.cap)?;
    let punctured_dual = punctured.dual();
    let radical = punctured.intersect(&punctured_dual)?;
    let shortened_dual = shorten(&dual, positions)?;
    let shortened = shorten(code, positions)?;
    let k_out = l + (code.n() - l) - punctured.dim();

    let checks = vec![
        Check::new(
            "dim-preserved",
            code.dim(),
            punctured.dim(),
            punctured.dim() == code.dim(),
        ),
        Check::new("entanglement-equals-l", l, output.c, output.c == l),
        Check::new(
            "logical-dim-preserved",
            input.k,
            k_out,
            k_out == input.k && output.k == input.k,
        ),
        Check::new(
            "dual-min-weight-at-least-d",
            format!(">= {}", fmt_opt(d)),
            fmt_opt(output.pure_d),
            // an empty dual \ {0} satisfies the bound vacuously
            match (d, output.pure_d) {
                (Some(d), Some(w)) => w >= d,
                (_, None) => true,
                (None, Some(_)) => false,
            },
        ),
        Check::new(
            "dual-equals-shortened-dual",
            format!("dim {}", shortened_dual.dim()),
            format!("dim {}", punctured_dual.dim()),
            punctured_dual == shortened_dual,
        ),
        Check::new(
            "intersection-equals-shortened",
            format!("dim {}", shortened.dim()),
            format!("dim {}", radical.dim()),
            radical == shortened,
        ),
    ];
    let report = TheoremReport::new(Some(input), Some(output), positions.clone(), checks);
    Ok((punctured, report))
}

/// Whether the dual's basis matrix has a zero column, or a position whose
/// two columns are linearly dependent.
fn column_relation(dual_basis: &GfMatrix, n: usize) -> Option<String> {
    for c in 0..2 * n {
        if dual_basis.column(c).iter().all(|&x| x == 0) {
            return Some(format!("column {} is zero", c + 1));
        }
    }
    for i in 0..n {
        if dual_basis.select_columns(&[i, n + i]).rank() < 2 {
            return Some(format!("columns {} and {} are dependent", i + 1, n + i + 1));
        }
    }
    None
}

/// Evaluates the four single-position lemmas at 1-based position `i`.
///
/// The puncture/shorten lemmas require every nonzero codeword of `code` to
/// have symplectic weight at least 2; when it does not, those checks are
/// reported as vacuous. The column-relation lemma is checked in whichever
/// direction its hypothesis holds.
pub fn verify_lemmas(
    code: &LinearCode,
    i: usize,
    cap: u64,
) -> Result<TheoremReport, TransformError> {
    let positions = PositionSet::new(&[i], code.n())?;
    let w = code.min_symplectic_weight(None, cap)?;
    let hyp = w.is_none_or(|w| w >= 2);

    let punctured = puncture(code, &positions)?;
    let dual = code.dual();
    let shortened_dual = shorten(&dual, &positions)?;

    let relation = column_relation(dual.basis(), code.n());
    let column_check = match (&relation, w) {
        (Some(r), Some(1)) => Check::new(
            "column-relation",
            "min weight 1",
            format!("{r}; min weight 1"),
            true,
        ),
        (Some(r), _) => Check::new(
            "column-relation",
            "min weight 1",
            format!("{r}; min weight {}", fmt_opt(w)),
            false,
        ),
        (None, _) if hyp => Check::new(
            "column-relation",
            "no zero or dependent columns",
            "none found",
            true,
        ),
        (None, _) => Check::conditional(
            "column-relation",
            false,
            "no zero or dependent columns",
            "none found",
            true,
        ),
    };

    let checks = vec![
        Check::conditional(
            "puncture-preserves-dim",
            hyp,
            code.dim(),
            punctured.dim(),
            punctured.dim() == code.dim(),
        ),
        column_check,
        Check::conditional(
            "shorten-dual-drops-dim-by-2",
            hyp,
            dual.dim() as i64 - 2,
            shortened_dual.dim(),
            shortened_dual.dim() + 2 == dual.dim(),
        ),
        Check::conditional(
            "shortened-dual-is-dual-of-punctured",
            hyp,
            format!("dim {}", punctured.dual().dim()),
            format!("dim {}", shortened_dual.dim()),
            shortened_dual == punctured.dual(),
        ),
    ];
    Ok(TheoremReport::new(None, None, positions, checks))
}

/// Largest admissible `l` under the symplectic-distance hypothesis versus
/// the Hamming-distance hypothesis `2l < w_H(dual)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Applicability {
    pub pure_d: Option<usize>,
    pub hamming_d: Option<usize>,
    pub ours_max_l: usize,
    pub hamming_max_l: usize,
}

pub fn compare_applicability(code: &LinearCode, cap: u64) -> Result<Applicability, TransformError> {
    if !code.is_self_orthogonal() {
        return Err(TransformError::NotSelfOrthogonal);
    }
    let dual = code.dual();
    let pure_d = dual.min_symplectic_weight(None, cap)?;
    let hamming_d = dual.min_hamming_weight(cap)?;
    Ok(Applicability {
        pure_d,
        hamming_d,
        ours_max_l: pure_d.map_or(0, |d| d - 1),
        // largest l with 2l < w_H, i.e. ceil(w_H / 2) - 1
        hamming_max_l: hamming_d.map_or(0, |w| (w - 1) / 2),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub positions: PositionSet,
    pub params: CodeParams,
    pub overall: bool,
}

/// Runs the construction for every `l`-subset of positions (the first
/// `limit` in lexicographic order, if given). Results are ordered by
/// descending dual minimum weight, then lexicographically.
pub fn search_positions(
    code: &LinearCode,
    l: usize,
    cap: u64,
    limit: Option<usize>,
) -> Result<Vec<SearchHit>, TransformError> {
    if !code.is_self_orthogonal() {
        return Err(TransformError::NotSelfOrthogonal);
    }
    let d = code.dual().min_symplectic_weight(None, cap)?;
    check_length(l, d)?;
    let sets: Vec<PositionSet> = (1..=code.n())
        .combinations(l)
        .take(limit.unwrap_or(usize::MAX))
        .map(PositionSet)
        .collect();
    let opts = ConstructOptions { cap, trusted_d: d };
    let mut hits = sets
        .into_par_iter()
        .map(|s| {
            let (_, report) = construct_eaqecc(code, &s, opts)?;
            Ok(SearchHit {
                positions: s,
                params: report
                    .output_params
                    .expect("construction reports output params"),
                overall: report.overall,
            })
        })
        .collect::<Result<Vec<_>, TransformError>>()?;
    hits.sort_by(|a, b| {
        b.params
            .pure_d
            .cmp(&a.params.pure_d)
            .then_with(|| a.positions.cmp(&b.positions))
    });
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::symplectic_code::{
        random_code, random_self_orthogonal, symplectic_weight_raw, DEFAULT_CAP,
    };
    use proptest::prelude::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::from_order(q, None).unwrap()
    }

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| *c != '|')
                    .map(|c| c.to_digit(10).unwrap())
                    .collect()
            })
            .collect();
        LinearCode::from_rows(gf(2), n, &rows).unwrap()
    }

    fn example_a() -> LinearCode {
        code(
            5,
            &["10010|01100", "01001|00110", "10100|00011", "01010|10001"],
        )
    }

    fn ps(p: &[usize], n: usize) -> PositionSet {
        PositionSet::new(p, n).unwrap()
    }

    #[test]
    fn position_set_validation() {
        assert_eq!(ps(&[3, 1], 5).positions(), &[1, 3]);
        assert_eq!(
            PositionSet::new(&[0], 5),
            Err(TransformError::OutOfRange { position: 0, n: 5 })
        );
        assert_eq!(
            PositionSet::new(&[6], 5),
            Err(TransformError::OutOfRange { position: 6, n: 5 })
        );
        assert_eq!(
            PositionSet::new(&[2, 2], 5),
            Err(TransformError::Duplicate(2))
        );
        assert!(puncture(&code(2, &["10|01"]), &ps(&[3], 3)).is_err());
    }

    #[test]
    fn puncture_examples() {
        let a = example_a();
        assert_eq!(puncture(&a, &PositionSet::empty()).unwrap(), a);
        let expected = code(4, &["1010|0100", "0101|0010", "1000|0011", "0110|1001"]);
        assert_eq!(puncture(&a, &ps(&[3], 5)).unwrap(), expected);
        let z = puncture(&LinearCode::zero(gf(3), 4), &ps(&[1, 4], 4)).unwrap();
        assert_eq!(z, LinearCode::zero(gf(3), 2));
    }

    #[test]
    fn shorten_examples() {
        let a = example_a();
        assert_eq!(shorten(&a, &PositionSet::empty()).unwrap(), a);
        let expected = code(4, &["1010|1011", "0101|1101", "0110|1001", "0001|1010"]);
        assert_eq!(shorten(&a.dual(), &ps(&[3], 5)).unwrap(), expected);
        let f = gf(4);
        assert_eq!(
            shorten(&LinearCode::full(f.clone(), 3), &ps(&[2], 3)).unwrap(),
            LinearCode::full(f, 2)
        );
    }

    #[test]
    fn construct_on_example() {
        let (c, report) = construct_eaqecc(
            &example_a(),
            &ps(&[3], 5),
            ConstructOptions::new(DEFAULT_CAP),
        )
        .unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(
            report.output_params.as_ref().unwrap().to_string(),
            "[[4,1,3;1]]_2"
        );
        assert_eq!(report.checks.len(), 6);
        assert!(report.all_pass(), "{report:#?}");
    }

    #[test]
    fn construct_rejects_l_equal_to_d() {
        let err = construct_eaqecc(
            &example_a(),
            &ps(&[1, 2, 3], 5),
            ConstructOptions::new(DEFAULT_CAP),
        )
        .unwrap_err();
        assert_eq!(err, TransformError::Precondition { l: 3, d: Some(3) });
        assert!(err.to_string().contains("l must satisfy 1 <= l <= d-1"));
        let err = construct_eaqecc(
            &example_a(),
            &PositionSet::empty(),
            ConstructOptions::new(DEFAULT_CAP),
        )
        .unwrap_err();
        assert!(matches!(err, TransformError::Precondition { l: 0, .. }));
    }

    #[test]
    fn construct_rejects_non_self_orthogonal() {
        let c = code(2, &["10|00", "00|10"]);
        assert_eq!(
            construct_eaqecc(&c, &ps(&[2], 2), ConstructOptions::new(DEFAULT_CAP)).unwrap_err(),
            TransformError::NotSelfOrthogonal
        );
    }

    #[test]
    fn construct_single_positions_on_example() {
        for i in [1, 5] {
            let (_, r) = construct_eaqecc(
                &example_a(),
                &ps(&[i], 5),
                ConstructOptions::new(DEFAULT_CAP),
            )
            .unwrap();
            let p = r.output_params.as_ref().unwrap();
            assert_eq!((p.n, p.k, p.c), (4, 1, 1));
            assert!(p.pure_d.unwrap() >= 3);
            assert!(r.all_pass());
        }
    }

    #[test]
    fn trusted_distance_fast_path() {
        let opts = ConstructOptions {
            cap: DEFAULT_CAP,
            trusted_d: Some(3),
        };
        let (_, r) = construct_eaqecc(&example_a(), &ps(&[2], 5), opts).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.input_params.unwrap().d, Some(3));
    }

    #[test]
    fn lemmas_on_example() {
        let r = verify_lemmas(&example_a(), 3, DEFAULT_CAP).unwrap();
        assert!(r.all_pass(), "{r:#?}");
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn lemmas_with_weight_one_codeword() {
        let c = code(3, &["100|000"]);
        let r = verify_lemmas(&c, 2, DEFAULT_CAP).unwrap();
        let statuses: Vec<CheckStatus> = r.checks.iter().map(|c| c.status).collect();
        assert_eq!(
            statuses,
            vec![
                CheckStatus::Vacuous,
                CheckStatus::Pass,
                CheckStatus::Vacuous,
                CheckStatus::Vacuous
            ]
        );
        let rel = r.check("column-relation").unwrap();
        assert!(rel.actual.contains("column 4 is zero"), "{rel:?}");
        assert!(rel.actual.contains("min weight 1"));
        assert!(r.overall);
    }

    #[test]
    fn applicability_on_example() {
        let a = compare_applicability(&example_a(), DEFAULT_CAP).unwrap();
        assert_eq!(a.ours_max_l, 2);
        assert!(a.ours_max_l >= a.hamming_max_l);
    }

    #[test]
    fn search_examples() {
        let a = example_a();
        let hits = search_positions(&a, 1, DEFAULT_CAP, None).unwrap();
        assert_eq!(hits.len(), 5);
        for h in &hits {
            assert_eq!(h.params.to_string(), "[[4,1,3;1]]_2");
            assert!(h.overall);
        }
        let hits = search_positions(&a, 2, DEFAULT_CAP, None).unwrap();
        assert_eq!(hits.len(), 10);
        for h in &hits {
            assert_eq!((h.params.c, h.params.k), (2, 1));
            assert!(h.params.pure_d.unwrap() >= 3);
        }
        for w in hits.windows(2) {
            assert!(
                w[0].params.pure_d > w[1].params.pure_d
                    || (w[0].params.pure_d == w[1].params.pure_d
                        && w[0].positions < w[1].positions)
            );
        }
        assert_eq!(
            search_positions(&a, 2, DEFAULT_CAP, Some(3)).unwrap().len(),
            3
        );
        assert!(matches!(
            search_positions(&a, 0, DEFAULT_CAP, None),
            Err(TransformError::Precondition { l: 0, .. })
        ));
    }

    fn arb_self_orthogonal() -> impl Strategy<Value = LinearCode> {
        (
            prop::sample::select(vec![2u64, 3, 4, 5]),
            2usize..=6,
            any::<u64>(),
        )
            .prop_map(|(q, n, seed)| {
                let dim = 1 + (seed as usize) % n;
                random_self_orthogonal(&gf(q), n, dim, seed).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multi_position_puncture_equals_iterated(
            (q, n, dim, seed) in (prop::sample::select(vec![2u64, 3, 4, 5]), 2usize..=6, any::<u64>(), any::<u64>())
                .prop_map(|(q, n, d, s)| (q, n, d as usize % (2 * n + 1), s)),
            i in 1usize..=6,
            j in 1usize..=6,
        ) {
            prop_assume!(i <= n && j <= n && i != j);
            let c = random_code(&gf(q), n, dim, seed);
            let j_after = if j > i { j - 1 } else { j };
            let once = puncture(&puncture(&c, &ps(&[i], n)).unwrap(), &ps(&[j_after], n - 1)).unwrap();
            prop_assert_eq!(once, puncture(&c, &ps(&[i, j], n)).unwrap());
            let once = shorten(&shorten(&c, &ps(&[i], n)).unwrap(), &ps(&[j_after], n - 1)).unwrap();
            prop_assert_eq!(once, shorten(&c, &ps(&[i, j], n)).unwrap());
        }

        #[test]
        fn shortening_preserves_codeword_weights(c in arb_self_orthogonal(), i in 1usize..=6) {
            prop_assume!(i <= c.n());
            let s = ps(&[i], c.n());
            let short = shorten(&c.dual(), &s).unwrap();
            // each shortened codeword re-inserted with zeros is a dual codeword of equal weight
            let n = c.n();
            for r in short.basis().row_iter() {
                let mut full = Vec::with_capacity(2 * n);
                full.extend_from_slice(&r[..i - 1]);
                full.push(0);
                full.extend_from_slice(&r[i - 1..n - 1]);
                full.extend_from_slice(&r[n - 1..n - 1 + i - 1]);
                full.push(0);
                full.extend_from_slice(&r[n - 1 + i - 1..]);
                prop_assert!(c.dual().contains(&full));
                prop_assert_eq!(symplectic_weight_raw(&full), symplectic_weight_raw(r));
            }
            let cap = 1 << 16;
            if let (Ok(a), Ok(b)) = (short.min_symplectic_weight(None, cap), c.dual().min_symplectic_weight(None, cap)) {
                if let (Some(a), Some(b)) = (a, b) {
                    prop_assert!(a >= b);
                }
            }
        }

        #[test]
        fn construction_invariants(c in arb_self_orthogonal(), pick in any::<u64>()) {
            let dual = c.dual();
            let size = (c.field().q() as u128).pow(dual.dim() as u32);
            prop_assume!(size <= 1 << 16);
            let d = dual.min_symplectic_weight(None, DEFAULT_CAP).unwrap().unwrap();
            prop_assume!(d >= 2);
            let l = 1 + (pick as usize) % (d - 1);
            let positions: Vec<usize> = (1..=c.n()).combinations(l).nth((pick >> 8) as usize % 3).unwrap_or_else(|| (1..=l).collect());
            let s = ps(&positions, c.n());
            let (out, r) = construct_eaqecc(&c, &s, ConstructOptions::new(DEFAULT_CAP)).unwrap();
            prop_assert!(r.all_pass(), "{:#?}", r);
            let (pi, po) = (r.input_params.unwrap(), r.output_params.unwrap());
            prop_assert_eq!(po.k, pi.k);
            prop_assert_eq!(po.c, l);
            prop_assert_eq!(po.n, pi.n - l);
            prop_assert_eq!(out.dual(), shorten(&dual, &s).unwrap());
            let app = compare_applicability(&c, DEFAULT_CAP).unwrap();
            prop_assert!(app.ours_max_l >= app.hamming_max_l);
        }
    }
}

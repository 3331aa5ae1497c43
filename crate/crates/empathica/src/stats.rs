//! Statistical procedures used by the study: contingency marginals, Pearson
//! correlation, strict Theil-Sen regression, and the fixed answer encodings.

use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bimatrix::Action;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("contingency table has no observations")]
    EmptyTable,
    #[error("paired sample vectors differ in length ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("paired sample needs at least two observations")]
    TooShort,
    #[error("paired sample contains a non-finite value")]
    NonFinite,
    #[error("{variable} is constant; correlation is undefined")]
    ZeroVariance { variable: &'static str },
    #[error("all x values are equal; no pairwise slope exists")]
    DegenerateX,
    #[error("column {0:?} not found in CSV header")]
    MissingColumn(String),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {row}: cannot parse {field:?} as a number")]
    BadNumber { row: usize, field: String },
}

/// 2x2 decision counts `n(a1, a2)` indexed by player 1's action first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable {
    pub cc: u64,
    pub cn: u64,
    pub nc: u64,
    pub nn: u64,
}

impl ContingencyTable {
    pub fn new(cc: u64, cn: u64, nc: u64, nn: u64) -> Self {
        ContingencyTable { cc, cn, nc, nn }
    }

    pub fn count(&self, a1: Action, a2: Action) -> u64 {
        match (a1, a2) {
            (Action::C, Action::C) => self.cc,
            (Action::C, Action::N) => self.cn,
            (Action::N, Action::C) => self.nc,
            (Action::N, Action::N) => self.nn,
        }
    }

    pub fn total(&self) -> u64 {
        self.cc + self.cn + self.nc + self.nn
    }
}

/// Player 1's marginal cooperation probability under the empirical joint
/// distribution: `(n(C,C) + n(C,N)) / total`, as an exact fraction.
pub fn marginal_cooperation(t: &ContingencyTable) -> Result<Ratio<u64>, StatsError> {
    let total = t.total();
    if total == 0 {
        return Err(StatsError::EmptyTable);
    }
    Ok(Ratio::new(t.cc + t.cn, total))
}

/// Paired observations of equal length at least two, all finite.
#[derive(Clone, Debug, PartialEq)]
pub struct PairedSample {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl PairedSample {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self, StatsError> {
        if x.len() != y.len() {
            return Err(StatsError::LengthMismatch { x: x.len(), y: y.len() });
        }
        if x.len() < 2 {
            return Err(StatsError::TooShort);
        }
        if x.iter().chain(y.iter()).any(|v| !v.is_finite()) {
            return Err(StatsError::NonFinite);
        }
        Ok(PairedSample { x, y })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, StatsError> {
        let (x, y) = pairs.iter().copied().unzip();
        PairedSample::new(x, y)
    }

    /// Load two named columns of a CSV file.
    pub fn from_csv(path: &Path, x_col: &str, y_col: &str) -> Result<Self, StatsError> {
        let mut reader = csv::Reader::from_path(path)?;
        let headers = reader.headers()?.clone();
        let find = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| StatsError::MissingColumn(name.to_string()))
        };
        let xi = find(x_col)?;
        let yi = find(y_col)?;
        let mut x = Vec::new();
        let mut y = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record?;
            let parse = |i: usize| -> Result<f64, StatsError> {
                let field = record.get(i).unwrap_or("");
                field.trim().parse().map_err(|_| StatsError::BadNumber {
                    row: row + 2,
                    field: field.to_string(),
                })
            };
            x.push(parse(xi)?);
            y.push(parse(yi)?);
        }
        PairedSample::new(x, y)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }
}

/// Product-moment correlation coefficient.
///
/// Computed from the raw sums `n*Sxy - Sx*Sy` etc., which stay exact for
/// integer and half-integer data of the sizes this crate handles; collinear
/// integer data therefore yields exactly +-1.
pub fn pearson(s: &PairedSample) -> Result<f64, StatsError> {
    if s.x.iter().all(|&v| v == s.x[0]) {
        return Err(StatsError::ZeroVariance { variable: "x" });
    }
    if s.y.iter().all(|&v| v == s.y[0]) {
        return Err(StatsError::ZeroVariance { variable: "y" });
    }
    let n = s.len() as f64;
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&xi, &yi) in s.x.iter().zip(&s.y) {
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        syy += yi * yi;
        sxy += xi * yi;
    }
    let cov = n * sxy - sx * sy;
    let var_x = n * sxx - sx * sx;
    let var_y = n * syy - sy * sy;
    if var_x <= 0.0 || var_y <= 0.0 {
        // Cancellation ate the variance; the data is constant at this
        // precision.
        return Err(StatsError::ZeroVariance { variable: "x" });
    }
    // The clamp absorbs last-ulp excursions past the unit interval.
    Ok((cov / (var_x * var_y).sqrt()).clamp(-1.0, 1.0))
}

/// Tied-x handling for the median-slope estimator. Only the strict variant
/// exists: pairs with equal x contribute no slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheilSenMode {
    Strict,
}

/// Median of all pairwise slopes `(y_j - y_i) / (x_j - x_i)` over pairs with
/// distinct x. An even slope count takes the mean of the two middle order
/// statistics.
pub fn theil_sen(s: &PairedSample, _mode: TheilSenMode) -> Result<f64, StatsError> {
    let mut slopes = Vec::new();
    for i in 0..s.len() {
        for j in (i + 1)..s.len() {
            if s.x[i] != s.x[j] {
                slopes.push((s.y[j] - s.y[i]) / (s.x[j] - s.x[i]));
            }
        }
    }
    if slopes.is_empty() {
        return Err(StatsError::DegenerateX);
    }
    slopes.sort_by(|a, b| a.total_cmp(b));
    let n = slopes.len();
    Ok(if n % 2 == 1 {
        slopes[n / 2]
    } else {
        (slopes[n / 2 - 1] + slopes[n / 2]) / 2.0
    })
}

/// One Likert answer letter of the study's questionnaires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AnswerLetter {
    A,
    B,
    C,
    D,
    E,
}

impl AnswerLetter {
    pub const ALL: [AnswerLetter; 5] = [
        AnswerLetter::A,
        AnswerLetter::B,
        AnswerLetter::C,
        AnswerLetter::D,
        AnswerLetter::E,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        (b'A' + self as u8) as char
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'A' => Some(AnswerLetter::A),
            'B' => Some(AnswerLetter::B),
            'C' => Some(AnswerLetter::C),
            'D' => Some(AnswerLetter::D),
            'E' => Some(AnswerLetter::E),
            _ => None,
        }
    }
}

impl std::fmt::Display for AnswerLetter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Integer encoding of an answer letter: A maps to 1 through E to 5.
pub fn likert_code(letter: AnswerLetter) -> u8 {
    letter as u8 + 1
}

/// A participant's cooperation outcome category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CooperationOutcome {
    #[serde(rename = "positively")]
    Positive,
    #[serde(rename = "partially")]
    Partial,
    Deny,
}

impl CooperationOutcome {
    pub const ALL: [CooperationOutcome; 3] = [
        CooperationOutcome::Positive,
        CooperationOutcome::Partial,
        CooperationOutcome::Deny,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CooperationOutcome::Positive => "positively",
            CooperationOutcome::Partial => "partially",
            CooperationOutcome::Deny => "deny",
        }
    }
}

impl FromStr for CooperationOutcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" | "positively" => Ok(CooperationOutcome::Positive),
            "partial" | "partially" => Ok(CooperationOutcome::Partial),
            "deny" | "denied" => Ok(CooperationOutcome::Deny),
            other => Err(format!("unknown cooperation category {other:?}")),
        }
    }
}

impl std::fmt::Display for CooperationOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Numeric cooperation level: 1 for a full confession, 0.5 for a partial
/// one, 0 for a denial.
pub fn cooperation_score(c: CooperationOutcome) -> f64 {
    match c {
        CooperationOutcome::Positive => 1.0,
        CooperationOutcome::Partial => 0.5,
        CooperationOutcome::Deny => 0.0,
    }
}

/// Format a value with the given number of significant digits, trimming
/// trailing zeros. Used for all CLI and file output.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sig = sig.max(1);
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        t.to_string()
    } else {
        s
    }
}

/// Format a proportion as a percentage truncated (not rounded) to two
/// decimals, the rounding idiom the published tables use: 9/47 prints as
/// 19.14, not 19.15.
pub fn format_percent_trunc2(proportion: f64) -> String {
    let pct = proportion * 100.0;
    let truncated = (pct * 100.0).trunc() / 100.0;
    format!("{truncated:.2}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marginal_matches_published_partial_tables() {
        // Women, men, population partial-confession decision counts.
        let women = ContingencyTable::new(10, 5, 1, 13);
        let men = ContingencyTable::new(5, 1, 2, 5);
        let pop = ContingencyTable::new(15, 6, 3, 18);
        assert_eq!(marginal_cooperation(&women).unwrap(), Ratio::new(15, 29));
        assert_eq!(marginal_cooperation(&men).unwrap(), Ratio::new(6, 13));
        assert_eq!(marginal_cooperation(&pop).unwrap(), Ratio::new(21, 42));
        assert_eq!(marginal_cooperation(&pop).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn marginal_rejects_empty_table() {
        assert!(matches!(
            marginal_cooperation(&ContingencyTable::new(0, 0, 0, 0)),
            Err(StatsError::EmptyTable)
        ));
    }

    #[test]
    fn pearson_identity_and_reversal() {
        let s = PairedSample::new(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(pearson(&s).unwrap(), 1.0);
        let r = PairedSample::new(vec![1.0, 2.0, 3.0], vec![3.0, 2.0, 1.0]).unwrap();
        assert_eq!(pearson(&r).unwrap(), -1.0);
    }

    #[test]
    fn pearson_hand_computed_example() {
        let s = PairedSample::new(vec![1.0, 2.0, 3.0, 4.0], vec![1.0, 3.0, 2.0, 4.0]).unwrap();
        assert_eq!(pearson(&s).unwrap(), 0.8);
    }

    #[test]
    fn pearson_zero_variance() {
        let s = PairedSample::new(vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            pearson(&s),
            Err(StatsError::ZeroVariance { variable: "x" })
        ));
    }

    #[test]
    fn theil_sen_collinear() {
        let s =
            PairedSample::from_pairs(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0), (5.0, 11.0)]).unwrap();
        assert_eq!(theil_sen(&s, TheilSenMode::Strict).unwrap(), 2.0);
    }

    #[test]
    fn theil_sen_pure_pt_dataset_is_zero() {
        // Nine points, 25 distinct-x pairs; the 13th sorted slope is 0.
        let x = [2.0, 3.0, 3.0, 4.0, 4.0, 4.0, 4.0, 4.0, 5.0];
        let y = [0.5, 0.5, 1.0, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0];
        let s = PairedSample::new(x.to_vec(), y.to_vec()).unwrap();
        assert_eq!(theil_sen(&s, TheilSenMode::Strict).unwrap(), 0.0);
    }

    #[test]
    fn theil_sen_pure_fs_dataset_averages_middle_pair() {
        let s = PairedSample::new(vec![4.0, 4.0, 5.0], vec![0.5, 1.0, 1.0]).unwrap();
        assert_eq!(theil_sen(&s, TheilSenMode::Strict).unwrap(), 0.25);
    }

    #[test]
    fn theil_sen_degenerate_x() {
        let s = PairedSample::new(vec![2.0, 2.0, 2.0], vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            theil_sen(&s, TheilSenMode::Strict),
            Err(StatsError::DegenerateX)
        ));
    }

    #[test]
    fn likert_codes() {
        assert_eq!(likert_code(AnswerLetter::A), 1);
        assert_eq!(likert_code(AnswerLetter::C), 3);
        assert_eq!(likert_code(AnswerLetter::E), 5);
    }

    #[test]
    fn cooperation_scores() {
        assert_eq!(cooperation_score(CooperationOutcome::Positive), 1.0);
        assert_eq!(cooperation_score(CooperationOutcome::Partial), 0.5);
        assert_eq!(cooperation_score(CooperationOutcome::Deny), 0.0);
        assert_eq!("partially".parse::<CooperationOutcome>().unwrap(), CooperationOutcome::Partial);
        assert!("yes".parse::<CooperationOutcome>().is_err());
    }

    #[test]
    fn sample_validation() {
        assert!(matches!(
            PairedSample::new(vec![1.0], vec![1.0, 2.0]),
            Err(StatsError::LengthMismatch { .. })
        ));
        assert!(matches!(
            PairedSample::new(vec![1.0], vec![1.0]),
            Err(StatsError::TooShort)
        ));
        assert!(matches!(
            PairedSample::new(vec![1.0, f64::NAN], vec![1.0, 2.0]),
            Err(StatsError::NonFinite)
        ));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(4.0 / 21.0, 6), "0.190476");
        assert_eq!(format_sig(-120.0, 6), "-120");
        assert_eq!(format_sig(2.0 / 3.0, 3), "0.667");
    }

    #[test]
    fn truncating_percent_formatting() {
        assert_eq!(format_percent_trunc2(9.0 / 47.0), "19.14");
        assert_eq!(format_percent_trunc2(6.0 / 19.0), "31.57");
        assert_eq!(format_percent_trunc2(10.0 / 28.0), "35.71");
        assert_eq!(format_percent_trunc2(0.5), "50.00");
    }
}

//! Scoring and scale classification for the 28-item Interpersonal
//! Reactivity Index.
//!
//! Each of the four subscales (perspective taking, empathic concern, fantasy,
//! personal distress) owns seven items answered on a 0..=4 Likert scale;
//! nine items are reverse-coded and contribute `4 - raw`.

use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The four IRI subscales.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subscale {
    PT,
    EC,
    FS,
    PD,
}

impl Subscale {
    pub const ALL: [Subscale; 4] = [Subscale::PT, Subscale::EC, Subscale::FS, Subscale::PD];

    pub fn code(self) -> &'static str {
        match self {
            Subscale::PT => "PT",
            Subscale::EC => "EC",
            Subscale::FS => "FS",
            Subscale::PD => "PD",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Subscale::PT => "Perspective Taking",
            Subscale::EC => "Empathic Concern",
            Subscale::FS => "Fantasy Scale",
            Subscale::PD => "Personal Distress",
        }
    }

    fn bit(self) -> u8 {
        match self {
            Subscale::PT => 1,
            Subscale::EC => 2,
            Subscale::FS => 4,
            Subscale::PD => 8,
        }
    }
}

impl FromStr for Subscale {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, IriError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "PT" => Ok(Subscale::PT),
            "EC" => Ok(Subscale::EC),
            "FS" => Ok(Subscale::FS),
            "PD" => Ok(Subscale::PD),
            other => Err(IriError::UnknownScale(other.to_string())),
        }
    }
}

impl std::fmt::Display for Subscale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// Participant gender as recorded by the study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Gender {
    #[serde(rename = "W")]
    Woman,
    #[serde(rename = "M")]
    Man,
}

impl Gender {
    pub fn code(self) -> &'static str {
        match self {
            Gender::Woman => "W",
            Gender::Man => "M",
        }
    }

    pub fn noun(self) -> &'static str {
        match self {
            Gender::Woman => "Woman",
            Gender::Man => "Man",
        }
    }
}

impl FromStr for Gender {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, IriError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "W" | "WOMAN" | "WOMEN" | "F" => Ok(Gender::Woman),
            "M" | "MAN" | "MEN" => Ok(Gender::Man),
            other => Err(IriError::BadField(format!("unknown gender {other:?}"))),
        }
    }
}

/// One questionnaire item: its 1-based index, owning subscale, reverse flag,
/// and abridged wording (reference metadata only; scoring keys off the
/// other three fields).
#[derive(Clone, Copy, Debug)]
pub struct IriItem {
    pub index: u8,
    pub subscale: Subscale,
    pub reversed: bool,
    pub label: &'static str,
}

/// The 28 items. Reversed items are 3, 4, 7, 12, 13, 14, 15, 18, 19.
/// Item 24 appears in the source table under a stray number; it is the
/// seventh personal-distress item.
pub const ITEMS: [IriItem; 28] = {
    use Subscale::*;
    const fn item(index: u8, subscale: Subscale, reversed: bool, label: &'static str) -> IriItem {
        IriItem {
            index,
            subscale,
            reversed,
            label,
        }
    }
    [
        item(1, FS, false, "Daydream and fantasize"),
        item(2, EC, false, "Concerned with unfortunates"),
        item(3, PT, true, "Can't see others' views"),
        item(4, EC, true, "Not sorry for others"),
        item(5, FS, false, "Get involved in novels"),
        item(6, PD, false, "Not-at-ease in emergencies"),
        item(7, FS, true, "Not caught-up in movies"),
        item(8, PT, false, "Look at all sides in a fight"),
        item(9, EC, false, "Feel protective of others"),
        item(10, PD, false, "Feel helpless when emotional"),
        item(11, PT, false, "Imagine friend's perspective"),
        item(12, FS, true, "Don't get involved in books"),
        item(13, PD, true, "Remain calm if other's hurt"),
        item(14, EC, true, "Others' problems none mine"),
        item(15, PT, true, "If I'm right I won't argue"),
        item(16, FS, false, "Feel like movie character"),
        item(17, PD, false, "Tense emotions scare me"),
        item(18, EC, true, "Don't feel pity for others"),
        item(19, PD, true, "Effective in emergencies"),
        item(20, EC, false, "Touched by things I see"),
        item(21, PT, false, "Two sides to every question"),
        item(22, EC, false, "Soft-hearted person"),
        item(23, FS, false, "Feel like leading character"),
        item(24, PD, false, "Lose control in emergencies"),
        item(25, PT, false, "Put myself in others' shoes"),
        item(26, FS, false, "Image novels were about me"),
        item(27, PD, false, "Other's problems destroy me"),
        item(28, PT, false, "Put myself in other's place"),
    ]
};

pub const ITEMS_PER_SUBSCALE: usize = 7;

#[derive(Debug, Error)]
pub enum IriError {
    #[error("item {item} response {value} is outside 0..=4")]
    ValueOutOfRange { item: u8, value: u8 },
    #[error("subscale {subscale} has {missing} missing responses (at most 2 allowed)")]
    TooManyMissing { subscale: Subscale, missing: usize },
    #[error("item {item} is missing and the policy forbids imputation")]
    MissingResponse { item: u8 },
    #[error("unknown subscale {0:?}")]
    UnknownScale(String),
    #[error("unknown membership pattern {0:?}")]
    UnknownMembership(String),
    #[error("{0}")]
    BadField(String),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

/// A participant's 28 Likert responses; `None` marks an unanswered item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IriResponseSheet {
    responses: [Option<u8>; 28],
}

impl IriResponseSheet {
    pub fn new(responses: [Option<u8>; 28]) -> Result<Self, IriError> {
        for (i, r) in responses.iter().enumerate() {
            if let Some(v) = r {
                if *v > 4 {
                    return Err(IriError::ValueOutOfRange {
                        item: i as u8 + 1,
                        value: *v,
                    });
                }
            }
        }
        Ok(IriResponseSheet { responses })
    }

    pub fn complete(values: [u8; 28]) -> Result<Self, IriError> {
        Self::new(values.map(Some))
    }

    /// Uniform sheet with every item answered `value`.
    pub fn uniform(value: u8) -> Result<Self, IriError> {
        Self::complete([value; 28])
    }

    pub fn response(&self, item_index: u8) -> Option<u8> {
        self.responses[item_index as usize - 1]
    }

    pub fn missing_count(&self) -> usize {
        self.responses.iter().filter(|r| r.is_none()).count()
    }
}

/// How unanswered items are handled while scoring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Imputation {
    /// Impute the participant's mean contribution over the answered items of
    /// the same subscale (at most 2 missing per subscale).
    #[default]
    SubscaleMean,
    /// Reject sheets with any missing item.
    Strict,
}

/// The four subscale totals, each in `[0, 28]`. Fractional values arise only
/// under imputation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubscaleScores {
    pub pt: f64,
    pub ec: f64,
    pub fs: f64,
    pub pd: f64,
}

impl SubscaleScores {
    pub fn get(&self, s: Subscale) -> f64 {
        match s {
            Subscale::PT => self.pt,
            Subscale::EC => self.ec,
            Subscale::FS => self.fs,
            Subscale::PD => self.pd,
        }
    }
}

/// Score a sheet: reversed items contribute `4 - raw`, each subscale sums
/// its seven items, and missing items follow the imputation policy.
pub fn score(sheet: &IriResponseSheet, policy: Imputation) -> Result<SubscaleScores, IriError> {
    let mut totals = [0.0f64; 4];
    for subscale in Subscale::ALL {
        let mut sum = 0.0;
        let mut answered = 0usize;
        let mut missing = 0usize;
        for item in ITEMS.iter().filter(|it| it.subscale == subscale) {
            match sheet.response(item.index) {
                Some(raw) => {
                    let contribution = if item.reversed { 4 - raw } else { raw };
                    sum += f64::from(contribution);
                    answered += 1;
                }
                None => {
                    if policy == Imputation::Strict {
                        return Err(IriError::MissingResponse { item: item.index });
                    }
                    missing += 1;
                }
            }
        }
        if missing > 2 {
            return Err(IriError::TooManyMissing { subscale, missing });
        }
        if missing > 0 {
            // Mean contribution of the answered items stands in for each
            // missing one; equivalently the sum rescales to seven items.
            sum += sum / answered as f64 * missing as f64;
        }
        totals[Subscale::ALL.iter().position(|&s| s == subscale).unwrap()] = sum;
    }
    Ok(SubscaleScores {
        pt: totals[0],
        ec: totals[1],
        fs: totals[2],
        pd: totals[3],
    })
}

/// Cutoff rule for scale membership: member of a subscale iff the mean item
/// score reaches `mean_cutoff`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdPolicy {
    pub mean_cutoff: f64,
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        ThresholdPolicy { mean_cutoff: 2.5 }
    }
}

/// Classify scores into a membership set under the threshold policy. The
/// corpus-label mode that bypasses computation is [`MembershipLabels`].
pub fn classify(scores: &SubscaleScores, policy: ThresholdPolicy) -> ScaleMembership {
    let mut m = ScaleMembership::empty();
    for s in Subscale::ALL {
        if scores.get(s) / ITEMS_PER_SUBSCALE as f64 >= policy.mean_cutoff {
            m.insert(s);
        }
    }
    m
}

/// The subset of subscales a participant belongs to; empty means "none of
/// the scale".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScaleMembership(u8);

impl ScaleMembership {
    pub fn empty() -> Self {
        ScaleMembership(0)
    }

    pub fn of(subscales: &[Subscale]) -> Self {
        let mut m = Self::empty();
        for &s in subscales {
            m.insert(s);
        }
        m
    }

    pub fn insert(&mut self, s: Subscale) {
        self.0 |= s.bit();
    }

    pub fn contains(&self, s: Subscale) -> bool {
        self.0 & s.bit() != 0
    }

    pub fn subscales(&self) -> Vec<Subscale> {
        Subscale::ALL
            .iter()
            .copied()
            .filter(|s| self.contains(*s))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_none(&self) -> bool {
        self.0 == 0
    }

    pub fn is_pure(&self) -> bool {
        self.count() == 1
    }

    pub fn is_mixed(&self) -> bool {
        self.count() >= 2
    }

    /// All 16 patterns in canonical order: by size, then by subscale order
    /// PT, EC, FS, PD; the empty pattern comes last.
    pub fn all_patterns() -> Vec<ScaleMembership> {
        let mut patterns: Vec<ScaleMembership> = (1u8..16).map(ScaleMembership).collect();
        patterns.sort_by_key(|m| {
            let subs = m.subscales();
            let rank: u32 = subs
                .iter()
                .map(|s| Subscale::ALL.iter().position(|t| t == s).unwrap() as u32)
                .fold(0, |acc, i| acc * 4 + i);
            (m.count(), rank)
        });
        patterns.push(ScaleMembership::empty());
        patterns
    }

    /// Compact key, e.g. `PT+EC` or `None`.
    pub fn key(&self) -> String {
        if self.is_none() {
            "None".to_string()
        } else {
            self.subscales()
                .iter()
                .map(|s| s.code())
                .collect::<Vec<_>>()
                .join("+")
        }
    }
}

impl std::fmt::Display for ScaleMembership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_none() {
            f.write_str("None of the scale")
        } else {
            let codes: Vec<&str> = self.subscales().iter().map(|s| s.code()).collect();
            f.write_str(&codes.join(" + "))
        }
    }
}

impl FromStr for ScaleMembership {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, IriError> {
        let trimmed = s.trim();
        if trimmed.eq_ignore_ascii_case("none") || trimmed.eq_ignore_ascii_case("none of the scale")
        {
            return Ok(ScaleMembership::empty());
        }
        let mut m = ScaleMembership::empty();
        for part in trimmed.split('+') {
            let sub: Subscale = part
                .parse()
                .map_err(|_| IriError::UnknownMembership(s.to_string()))?;
            if m.contains(sub) {
                return Err(IriError::UnknownMembership(s.to_string()));
            }
            m.insert(sub);
        }
        Ok(m)
    }
}

impl Serialize for ScaleMembership {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.key())
    }
}

impl<'de> Deserialize<'de> for ScaleMembership {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Answer histogram of one subscale's seven items, counts per Likert letter
/// A..E. Corpora that publish histograms instead of item-level responses
/// store one of these per participant and subscale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubscaleHistogram {
    pub counts: [u8; 5],
}

impl SubscaleHistogram {
    pub fn sum(&self) -> u8 {
        self.counts.iter().sum()
    }

    /// The most frequent answer letter; ties break toward the higher letter.
    pub fn modal_letter(&self) -> crate::stats::AnswerLetter {
        use crate::stats::AnswerLetter;
        let mut best = AnswerLetter::A;
        let mut best_count = self.counts[0];
        for letter in AnswerLetter::ALL {
            if self.counts[letter.index()] >= best_count {
                best = letter;
                best_count = self.counts[letter.index()];
            }
        }
        best
    }
}

/// Ground-truth membership labels shipped alongside a corpus, one row per
/// scale pattern with the women's and men's participant indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipLabels {
    pub labels: Vec<MembershipRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipRow {
    pub scale: ScaleMembership,
    pub women: Vec<u8>,
    pub men: Vec<u8>,
}

impl MembershipLabels {
    pub fn from_json_str(s: &str) -> Result<Self, IriError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_json_path(path: &Path) -> Result<Self, IriError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| IriError::BadField(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("labels serialize")
    }

    /// The labeled membership of one participant, if listed.
    pub fn lookup(&self, gender: Gender, index: u8) -> Option<ScaleMembership> {
        self.labels.iter().find_map(|row| {
            let ids = match gender {
                Gender::Woman => &row.women,
                Gender::Man => &row.men,
            };
            ids.contains(&index).then_some(row.scale)
        })
    }
}

/// One loaded response sheet with its participant metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct SheetRecord {
    pub participant_id: String,
    pub gender: Gender,
    pub sheet: IriResponseSheet,
}

/// Load response sheets from CSV with columns `participant_id, gender,
/// item_1..item_28`; blank item cells are missing answers.
pub fn sheets_from_csv_reader<R: Read>(reader: R) -> Result<Vec<SheetRecord>, IriError> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let headers = csv_reader.headers()?.clone();
    let col = |name: &str| -> Result<usize, IriError> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| IriError::BadField(format!("missing column {name:?}")))
    };
    let id_col = col("participant_id")?;
    let gender_col = col("gender")?;
    let item_cols: Vec<usize> = (1..=28)
        .map(|i| col(&format!("item_{i}")))
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        let mut responses = [None; 28];
        for (slot, &ci) in responses.iter_mut().zip(&item_cols) {
            let field = record.get(ci).unwrap_or("").trim();
            if !field.is_empty() {
                let v: u8 = field
                    .parse()
                    .map_err(|_| IriError::BadField(format!("bad item value {field:?}")))?;
                *slot = Some(v);
            }
        }
        out.push(SheetRecord {
            participant_id: record.get(id_col).unwrap_or("").trim().to_string(),
            gender: record.get(gender_col).unwrap_or("").parse()?,
            sheet: IriResponseSheet::new(responses)?,
        });
    }
    Ok(out)
}

pub fn sheets_from_csv(path: &Path) -> Result<Vec<SheetRecord>, IriError> {
    let file = std::fs::File::open(path)
        .map_err(|e| IriError::BadField(format!("cannot read {}: {e}", path.display())))?;
    sheets_from_csv_reader(file)
}

#[derive(Deserialize)]
struct SheetJson {
    participant_id: String,
    gender: Gender,
    responses: Vec<Option<u8>>,
}

/// JSON alternative to the CSV sheet format: an array of objects with
/// `participant_id`, `gender`, and a 28-element `responses` array where
/// `null` marks a missing answer.
pub fn sheets_from_json_str(s: &str) -> Result<Vec<SheetRecord>, IriError> {
    let raw: Vec<SheetJson> = serde_json::from_str(s)?;
    raw.into_iter()
        .map(|r| {
            let responses: [Option<u8>; 28] = r
                .responses
                .try_into()
                .map_err(|_| IriError::BadField("responses must have 28 entries".into()))?;
            Ok(SheetRecord {
                participant_id: r.participant_id,
                gender: r.gender,
                sheet: IriResponseSheet::new(responses)?,
            })
        })
        .collect()
}

/// Membership distribution over a population.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    /// One row per membership pattern, canonical order, zero rows included.
    pub rows: Vec<DistributionRow>,
    pub pure: usize,
    pub mixed: usize,
    pub none: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionRow {
    pub membership: ScaleMembership,
    pub women: usize,
    pub men: usize,
}

impl DistributionRow {
    pub fn total(&self) -> usize {
        self.women + self.men
    }
}

impl Distribution {
    pub fn row(&self, membership: ScaleMembership) -> &DistributionRow {
        self.rows
            .iter()
            .find(|r| r.membership == membership)
            .expect("all patterns present")
    }

    /// Share of the population carrying this pattern, in `[0, 1]`.
    pub fn frequency(&self, membership: ScaleMembership) -> f64 {
        self.row(membership).total() as f64 / self.total as f64
    }
}

/// Count membership patterns per gender and the pure/mixed/none totals.
pub fn aggregate(population: &[(ScaleMembership, Gender)]) -> Distribution {
    let mut rows: Vec<DistributionRow> = ScaleMembership::all_patterns()
        .into_iter()
        .map(|membership| DistributionRow {
            membership,
            women: 0,
            men: 0,
        })
        .collect();
    for (membership, gender) in population {
        let row = rows
            .iter_mut()
            .find(|r| r.membership == *membership)
            .expect("pattern enumeration is total");
        match gender {
            Gender::Woman => row.women += 1,
            Gender::Man => row.men += 1,
        }
    }
    let count_where = |pred: fn(&ScaleMembership) -> bool| {
        rows.iter()
            .filter(|r| pred(&r.membership))
            .map(|r| r.total())
            .sum()
    };
    Distribution {
        pure: count_where(ScaleMembership::is_pure),
        mixed: count_where(ScaleMembership::is_mixed),
        none: count_where(ScaleMembership::is_none),
        total: population.len(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn items_partition_into_four_sevens() {
        for s in Subscale::ALL {
            assert_eq!(ITEMS.iter().filter(|it| it.subscale == s).count(), 7);
        }
        let reversed: Vec<u8> = ITEMS.iter().filter(|it| it.reversed).map(|it| it.index).collect();
        assert_eq!(reversed, vec![3, 4, 7, 12, 13, 14, 15, 18, 19]);
    }

    #[test]
    fn score_all_zero_counts_reversed_items() {
        let scores = score(&IriResponseSheet::uniform(0).unwrap(), Imputation::SubscaleMean).unwrap();
        assert_eq!(scores.pt, 8.0);
        assert_eq!(scores.ec, 12.0);
        assert_eq!(scores.fs, 8.0);
        assert_eq!(scores.pd, 8.0);
    }

    #[test]
    fn score_all_four_mirrors_all_zero() {
        let zero = score(&IriResponseSheet::uniform(0).unwrap(), Imputation::SubscaleMean).unwrap();
        let four = score(&IriResponseSheet::uniform(4).unwrap(), Imputation::SubscaleMean).unwrap();
        for s in Subscale::ALL {
            assert_eq!(zero.get(s) + four.get(s), 28.0);
        }
    }

    #[test]
    fn score_all_two_is_fixed_point() {
        let scores = score(&IriResponseSheet::uniform(2).unwrap(), Imputation::SubscaleMean).unwrap();
        for s in Subscale::ALL {
            assert_eq!(scores.get(s), 14.0);
        }
    }

    #[test]
    fn imputation_uses_subscale_mean() {
        // Uniform 2 with item 21 (PT, not reversed) left out: the six
        // answered PT contributions average 2, so the total stays 14.
        let mut responses = [Some(2u8); 28];
        responses[20] = None;
        let sheet = IriResponseSheet::new(responses).unwrap();
        let scores = score(&sheet, Imputation::SubscaleMean).unwrap();
        assert_eq!(scores.pt, 14.0);
        assert!(matches!(
            score(&sheet, Imputation::Strict),
            Err(IriError::MissingResponse { item: 21 })
        ));
    }

    #[test]
    fn too_many_missing_in_one_subscale_is_rejected() {
        let mut responses = [Some(2u8); 28];
        // Three PT items unanswered: 3, 8, 11.
        responses[2] = None;
        responses[7] = None;
        responses[10] = None;
        let sheet = IriResponseSheet::new(responses).unwrap();
        assert!(matches!(
            score(&sheet, Imputation::SubscaleMean),
            Err(IriError::TooManyMissing { subscale: Subscale::PT, missing: 3 })
        ));
    }

    #[test]
    fn response_range_is_validated() {
        let mut responses = [Some(0u8); 28];
        responses[4] = Some(5);
        assert!(matches!(
            IriResponseSheet::new(responses),
            Err(IriError::ValueOutOfRange { item: 5, value: 5 })
        ));
    }

    #[test]
    fn classify_extremes() {
        let top = SubscaleScores { pt: 28.0, ec: 28.0, fs: 28.0, pd: 28.0 };
        assert_eq!(classify(&top, ThresholdPolicy::default()).count(), 4);
        let bottom = SubscaleScores { pt: 0.0, ec: 0.0, fs: 0.0, pd: 0.0 };
        assert!(classify(&bottom, ThresholdPolicy::default()).is_none());
        // A uniform top sheet still misses EC: its three reversed items cap
        // the subscale at 16 of 28.
        let uniform = score(&IriResponseSheet::uniform(4).unwrap(), Imputation::SubscaleMean).unwrap();
        let m = classify(&uniform, ThresholdPolicy::default());
        assert!(m.contains(Subscale::PT) && !m.contains(Subscale::EC));
    }

    #[test]
    fn membership_keys_round_trip() {
        let m = ScaleMembership::of(&[Subscale::PT, Subscale::FS]);
        assert_eq!(m.key(), "PT+FS");
        assert_eq!(m.to_string(), "PT + FS");
        assert_eq!("PT+FS".parse::<ScaleMembership>().unwrap(), m);
        assert_eq!("None".parse::<ScaleMembership>().unwrap(), ScaleMembership::empty());
        assert!("PT+XX".parse::<ScaleMembership>().is_err());
    }

    #[test]
    fn all_patterns_enumeration() {
        let patterns = ScaleMembership::all_patterns();
        assert_eq!(patterns.len(), 16);
        assert_eq!(patterns[0].key(), "PT");
        assert_eq!(patterns[4].key(), "PT+EC");
        assert_eq!(patterns[15], ScaleMembership::empty());
    }

    #[test]
    fn aggregate_counts_and_totals() {
        let pt = ScaleMembership::of(&[Subscale::PT]);
        let ptec = ScaleMembership::of(&[Subscale::PT, Subscale::EC]);
        let population = vec![
            (pt, Gender::Woman),
            (pt, Gender::Man),
            (ptec, Gender::Woman),
            (ScaleMembership::empty(), Gender::Man),
        ];
        let d = aggregate(&population);
        assert_eq!(d.total, 4);
        assert_eq!(d.pure, 2);
        assert_eq!(d.mixed, 1);
        assert_eq!(d.none, 1);
        assert_eq!(d.row(pt).women, 1);
        assert_eq!(d.row(pt).men, 1);
    }

    #[test]
    fn single_empty_membership_population() {
        let d = aggregate(&[(ScaleMembership::empty(), Gender::Woman)]);
        assert_eq!((d.pure, d.mixed, d.none, d.total), (0, 0, 1, 1));
    }

    #[test]
    fn modal_letter_breaks_ties_toward_the_higher_letter() {
        use crate::stats::AnswerLetter;
        let tied = SubscaleHistogram { counts: [3, 0, 0, 3, 1] };
        assert_eq!(tied.modal_letter(), AnswerLetter::D);
        let plain = SubscaleHistogram { counts: [0, 0, 7, 0, 0] };
        assert_eq!(plain.modal_letter(), AnswerLetter::C);
        assert_eq!(plain.sum(), 7);
    }

    #[test]
    fn labels_lookup() {
        let json = r#"{"labels": [
            {"scale": "EC", "women": [15], "men": []},
            {"scale": "PT+FS", "women": [6, 12, 24], "men": []},
            {"scale": "None", "women": [28], "men": [1]}
        ]}"#;
        let labels = MembershipLabels::from_json_str(json).unwrap();
        assert_eq!(
            labels.lookup(Gender::Woman, 15),
            Some(ScaleMembership::of(&[Subscale::EC]))
        );
        assert_eq!(
            labels.lookup(Gender::Woman, 28),
            Some(ScaleMembership::empty())
        );
        assert_eq!(labels.lookup(Gender::Man, 15), None);
    }

    #[test]
    fn sheets_csv_parses_blank_as_missing() {
        let mut header = String::from("participant_id,gender");
        for i in 1..=28 {
            header.push_str(&format!(",item_{i}"));
        }
        let mut row = String::from("P1,W");
        for i in 1..=28 {
            if i == 5 {
                row.push(',');
            } else {
                row.push_str(",2");
            }
        }
        let csv_text = format!("{header}\n{row}\n");
        let sheets = sheets_from_csv_reader(csv_text.as_bytes()).unwrap();
        assert_eq!(sheets.len(), 1);
        assert_eq!(sheets[0].gender, Gender::Woman);
        assert_eq!(sheets[0].sheet.missing_count(), 1);
        assert_eq!(sheets[0].sheet.response(5), None);
    }
}

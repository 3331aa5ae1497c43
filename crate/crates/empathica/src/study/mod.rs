//! The embedded study corpus and the operations that regenerate the study's
//! result tables.
//!
//! The corpus stores what the study published per participant: cooperation
//! category, scale-membership label, and per-subscale answer histograms.
//! Item-level questionnaire responses were never published, so membership
//! labels are ground truth here and [`crate::iri::score`] is exercised on
//! synthetic data only. The partial-confession decision tables are likewise
//! stored as published counts: they are not derivable from one row per
//! participant (the study recorded several decisions per partial confessor
//! against a virtual opponent).

pub mod published;
mod report;

pub use report::{replicate, MatchStatus, ReplicationReport};

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iri::{Gender, MembershipLabels, ScaleMembership, Subscale, SubscaleHistogram};
use crate::stats::{
    self, cooperation_score, likert_code, AnswerLetter, ContingencyTable, CooperationOutcome,
    PairedSample, StatsError, TheilSenMode,
};

const EMBEDDED_PARTICIPANTS: &str = include_str!("../../data/participants.csv");
const EMBEDDED_MEMBERSHIP: &str = include_str!("../../data/membership.json");
const EMBEDDED_HISTOGRAMS: &str = include_str!("../../data/histograms.csv");
const EMBEDDED_CONTINGENCY: &str = include_str!("../../data/contingency.json");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("schema error in {file}: {message}")]
    Schema { file: String, message: String },
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn schema(file: &str, message: impl Into<String>) -> CorpusError {
    CorpusError::Schema {
        file: file.to_string(),
        message: message.into(),
    }
}

/// Study participant identifier, e.g. `Woman 3` (CSV code `W3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParticipantId {
    pub gender: Gender,
    pub index: u8,
}

impl ParticipantId {
    pub fn code(&self) -> String {
        format!("{}{}", self.gender.code(), self.index)
    }
}

impl std::fmt::Display for ParticipantId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.gender.noun(), self.index)
    }
}

impl FromStr for ParticipantId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let mut chars = s.chars();
        let first = chars.next().ok_or("empty participant id")?;
        let gender: Gender = first
            .to_string()
            .parse()
            .map_err(|_| format!("bad participant id {s:?}"))?;
        let index: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| format!("bad participant id {s:?}"))?;
        if index == 0 {
            return Err(format!("bad participant id {s:?}"));
        }
        Ok(ParticipantId { gender, index })
    }
}

/// Yes/no answers to the four profile questions, keyed CC/CD/DC/DD. The
/// study never published these per participant, so the embedded corpus
/// leaves them unset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameAnswers {
    pub cc: bool,
    pub cd: bool,
    pub dc: bool,
    pub dd: bool,
}

/// One corpus record.
#[derive(Clone, Debug, PartialEq)]
pub struct ParticipantRecord {
    pub id: ParticipantId,
    pub cooperation: CooperationOutcome,
    pub membership: ScaleMembership,
    histograms: [SubscaleHistogram; 4],
    pub game_answers: Option<GameAnswers>,
}

impl ParticipantRecord {
    pub fn histogram(&self, s: Subscale) -> &SubscaleHistogram {
        &self.histograms[Subscale::ALL.iter().position(|&t| t == s).unwrap()]
    }

    /// Integer code of the modal answer on a subscale.
    pub fn modal_code(&self, s: Subscale) -> f64 {
        f64::from(likert_code(self.histogram(s).modal_letter()))
    }
}

/// A histogram whose counts do not sum to the seven expected answers; sum 6
/// is a documented missing answer, anything else is carried as published and
/// surfaced in the report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DataNote {
    pub participant: ParticipantId,
    pub subscale: Subscale,
    pub sum: u8,
}

impl DataNote {
    pub fn is_missing_answer(&self) -> bool {
        self.sum == 6
    }
}

/// The published partial-confession decision tables, player-1-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencySet {
    pub women: ContingencyTable,
    pub men: ContingencyTable,
    pub population: ContingencyTable,
}

/// Gender restriction for the report operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenderFilter {
    Women,
    Men,
    All,
}

impl GenderFilter {
    pub const ALL_FILTERS: [GenderFilter; 3] =
        [GenderFilter::Women, GenderFilter::Men, GenderFilter::All];

    pub fn matches(self, gender: Gender) -> bool {
        match self {
            GenderFilter::Women => gender == Gender::Woman,
            GenderFilter::Men => gender == Gender::Man,
            GenderFilter::All => true,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GenderFilter::Women => "women",
            GenderFilter::Men => "men",
            GenderFilter::All => "population",
        }
    }
}

/// Where to load a corpus from.
#[derive(Clone, Debug)]
pub enum CorpusSource {
    Embedded,
    Dir(PathBuf),
}

/// The validated corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    participants: Vec<ParticipantRecord>,
    pub contingency: ContingencySet,
    notes: Vec<DataNote>,
}

#[derive(Debug, Error)]
pub enum StudyError {
    #[error("no participants match scale {scale} with filter {filter}")]
    EmptySubpopulation { scale: Subscale, filter: String },
}

impl Corpus {
    pub fn participants(&self) -> &[ParticipantRecord] {
        &self.participants
    }

    pub fn get(&self, id: ParticipantId) -> Option<&ParticipantRecord> {
        self.participants.iter().find(|p| p.id == id)
    }

    /// Histograms whose sums deviate from the expected seven answers.
    pub fn notes(&self) -> &[DataNote] {
        &self.notes
    }

    pub fn count(&self, filter: GenderFilter) -> usize {
        self.participants
            .iter()
            .filter(|p| filter.matches(p.id.gender))
            .count()
    }

    /// Participants belonging to exactly the one given scale.
    pub fn pure_members(&self, scale: Subscale, filter: GenderFilter) -> Vec<&ParticipantRecord> {
        let target = ScaleMembership::of(&[scale]);
        self.participants
            .iter()
            .filter(|p| p.membership == target && filter.matches(p.id.gender))
            .collect()
    }

    /// Participants belonging to no scale.
    pub fn none_members(&self) -> Vec<&ParticipantRecord> {
        self.participants
            .iter()
            .filter(|p| p.membership.is_none())
            .collect()
    }

    /// Counts and shares of the three cooperation categories.
    pub fn cooperation_frequencies(&self, filter: GenderFilter) -> FrequencyTable {
        let mut counts = [0usize; 3];
        let mut total = 0usize;
        for p in &self.participants {
            if filter.matches(p.id.gender) {
                let i = CooperationOutcome::ALL
                    .iter()
                    .position(|&o| o == p.cooperation)
                    .unwrap();
                counts[i] += 1;
                total += 1;
            }
        }
        FrequencyTable { counts, total }
    }

    /// The published partial-confessor decision table for the filter.
    pub fn partial_contingency(&self, filter: GenderFilter) -> ContingencyTable {
        match filter {
            GenderFilter::Women => self.contingency.women,
            GenderFilter::Men => self.contingency.men,
            GenderFilter::All => self.contingency.population,
        }
    }

    /// Membership distribution over the whole corpus.
    pub fn distribution(&self) -> crate::iri::Distribution {
        let population: Vec<(ScaleMembership, Gender)> = self
            .participants
            .iter()
            .map(|p| (p.membership, p.id.gender))
            .collect();
        crate::iri::aggregate(&population)
    }

    /// Per-letter cooperation of one pure scale's members, grouped by their
    /// modal answer on that scale, plus the correlation between answer code
    /// and cooperation score.
    pub fn cooperation_by_scale(
        &self,
        scale: Subscale,
        filter: GenderFilter,
    ) -> Result<ScaleCooperation, StudyError> {
        let members = self.pure_members(scale, filter);
        if members.is_empty() {
            return Err(StudyError::EmptySubpopulation {
                scale,
                filter: filter.label().to_string(),
            });
        }
        let mut per_letter = [LetterCell {
            members: 0,
            level: None,
        }; 5];
        for letter in AnswerLetter::ALL {
            let group: Vec<&&ParticipantRecord> = members
                .iter()
                .filter(|p| p.histogram(scale).modal_letter() == letter)
                .collect();
            if !group.is_empty() {
                let level = group
                    .iter()
                    .map(|p| cooperation_score(p.cooperation))
                    .sum::<f64>()
                    / group.len() as f64;
                per_letter[letter.index()] = LetterCell {
                    members: group.len(),
                    level: Some(level),
                };
            }
        }

        let pairs: Vec<(f64, f64)> = members
            .iter()
            .map(|p| (p.modal_code(scale), cooperation_score(p.cooperation)))
            .collect();
        let (computed_r, r_note) = correlation_or_note(&pairs);

        Ok(ScaleCooperation {
            scale,
            filter,
            members: members.iter().map(|p| p.id).collect(),
            per_letter,
            computed_r,
            r_note,
            published: published::scale_row(scale, filter),
        })
    }

    /// Cooperation level and scale correlation for every two-scale
    /// membership class with members, in canonical class order.
    pub fn mixed_scale_report(&self) -> Vec<MixedScaleRow> {
        ScaleMembership::all_patterns()
            .into_iter()
            .filter(|m| m.count() == 2)
            .filter_map(|membership| {
                let members: Vec<&ParticipantRecord> = self
                    .participants
                    .iter()
                    .filter(|p| p.membership == membership)
                    .collect();
                if members.is_empty() {
                    return None;
                }
                let computed_level = members
                    .iter()
                    .map(|p| cooperation_score(p.cooperation))
                    .sum::<f64>()
                    / members.len() as f64;
                let scales = membership.subscales();
                let pairs: Vec<(f64, f64)> = members
                    .iter()
                    .map(|p| (p.modal_code(scales[0]), p.modal_code(scales[1])))
                    .collect();
                let (computed_r, r_note) = correlation_or_note(&pairs);
                let published = published::mixed_row(&membership.key());
                Some(MixedScaleRow {
                    membership,
                    members: members.iter().map(|p| p.id).collect(),
                    computed_level,
                    computed_r,
                    r_note,
                    published_level_percent: published.map(|r| r.level_percent),
                    published_r: published.map(|r| r.r),
                })
            })
            .collect()
    }

    /// Strict median-slope comparison of one scale's pure members against
    /// the none-of-the-scale placebo group, with the published figures where
    /// the study printed them.
    pub fn theil_report(&self, scale: Subscale) -> TheilReport {
        let encode = |records: Vec<&ParticipantRecord>| -> TheilGroup {
            let mut dataset: Vec<(f64, f64)> = records
                .iter()
                .map(|p| (p.modal_code(scale), cooperation_score(p.cooperation)))
                .collect();
            dataset.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let (slope, note) = match PairedSample::from_pairs(&dataset) {
                Ok(sample) => match stats::theil_sen(&sample, TheilSenMode::Strict) {
                    Ok(s) => (Some(s), None),
                    Err(e) => (None, Some(e.to_string())),
                },
                Err(e) => (None, Some(e.to_string())),
            };
            TheilGroup {
                dataset,
                slope,
                note,
            }
        };
        let published = published::theil_figures(scale);
        TheilReport {
            scale,
            scale_group: encode(self.pure_members(scale, GenderFilter::All)),
            none_group: encode(self.none_members()),
            published_reproducible: false,
            published,
        }
    }

    /// Write the corpus back out as the four corpus files.
    pub fn save_to_dir(&self, dir: &Path) -> Result<(), CorpusError> {
        let io_err = |path: &Path, source: std::io::Error| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;

        let mut participants = String::from("participant_id,gender,cooperation\n");
        for p in &self.participants {
            participants.push_str(&format!(
                "{},{},{}\n",
                p.id.code(),
                p.id.gender.code(),
                p.cooperation
            ));
        }
        let path = dir.join("participants.csv");
        std::fs::write(&path, participants).map_err(|e| io_err(&path, e))?;

        let mut rows = Vec::new();
        for membership in ScaleMembership::all_patterns() {
            let ids = |gender: Gender| -> Vec<u8> {
                self.participants
                    .iter()
                    .filter(|p| p.membership == membership && p.id.gender == gender)
                    .map(|p| p.id.index)
                    .collect()
            };
            let women = ids(Gender::Woman);
            let men = ids(Gender::Man);
            if !women.is_empty() || !men.is_empty() {
                rows.push(crate::iri::MembershipRow {
                    scale: membership,
                    women,
                    men,
                });
            }
        }
        let labels = MembershipLabels { labels: rows };
        let path = dir.join("membership.json");
        std::fs::write(&path, labels.to_json_string()).map_err(|e| io_err(&path, e))?;

        let mut histograms = String::from("participant_id,subscale,count_a,count_b,count_c,count_d,count_e\n");
        for p in &self.participants {
            for s in Subscale::ALL {
                let h = p.histogram(s);
                histograms.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    p.id.code(),
                    s.code(),
                    h.counts[0],
                    h.counts[1],
                    h.counts[2],
                    h.counts[3],
                    h.counts[4]
                ));
            }
        }
        let path = dir.join("histograms.csv");
        std::fs::write(&path, histograms).map_err(|e| io_err(&path, e))?;

        let path = dir.join("contingency.json");
        let json = serde_json::to_string_pretty(&self.contingency).expect("tables serialize");
        std::fs::write(&path, json).map_err(|e| io_err(&path, e))?;
        Ok(())
    }
}

fn correlation_or_note(pairs: &[(f64, f64)]) -> (Option<f64>, Option<String>) {
    match PairedSample::from_pairs(pairs) {
        Ok(sample) => match stats::pearson(&sample) {
            Ok(r) => (Some(r), None),
            Err(e @ StatsError::ZeroVariance { .. }) => {
                (None, Some(format!("undefined: {e}")))
            }
            Err(e) => (None, Some(e.to_string())),
        },
        Err(StatsError::TooShort) => (None, Some("undefined: single member".to_string())),
        Err(e) => (None, Some(e.to_string())),
    }
}

/// Counts and shares of the three cooperation categories, ordered
/// positively / partially / deny.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrequencyTable {
    pub counts: [usize; 3],
    pub total: usize,
}

impl FrequencyTable {
    pub fn proportion(&self, outcome: CooperationOutcome) -> f64 {
        let i = CooperationOutcome::ALL
            .iter()
            .position(|&o| o == outcome)
            .unwrap();
        self.counts[i] as f64 / self.total as f64
    }

    pub fn percentages(&self) -> [f64; 3] {
        [
            self.counts[0] as f64 / self.total as f64 * 100.0,
            self.counts[1] as f64 / self.total as f64 * 100.0,
            self.counts[2] as f64 / self.total as f64 * 100.0,
        ]
    }
}

/// Cooperation among members of one pure scale, per modal answer letter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LetterCell {
    pub members: usize,
    pub level: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaleCooperation {
    pub scale: Subscale,
    pub filter: GenderFilter,
    pub members: Vec<ParticipantId>,
    pub per_letter: [LetterCell; 5],
    pub computed_r: Option<f64>,
    pub r_note: Option<String>,
    pub published: Option<published::ScaleRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedScaleRow {
    pub membership: ScaleMembership,
    pub members: Vec<ParticipantId>,
    /// Mean cooperation score of the class, as a proportion.
    pub computed_level: f64,
    pub computed_r: Option<f64>,
    pub r_note: Option<String>,
    pub published_level_percent: Option<f64>,
    pub published_r: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheilGroup {
    /// `(x, y)` pairs, sorted; x is the modal answer code, y the
    /// cooperation score.
    pub dataset: Vec<(f64, f64)>,
    pub slope: Option<f64>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheilReport {
    pub scale: Subscale,
    pub scale_group: TheilGroup,
    pub none_group: TheilGroup,
    pub published: Option<published::TheilFigures>,
    /// False whenever published betas exist: the strict estimator excludes
    /// tied-x pairs, while the printed slope multisets stem from an
    /// undocumented perturbation of ties.
    pub published_reproducible: bool,
}

/// Load and validate a corpus.
pub fn load_corpus(source: &CorpusSource) -> Result<Corpus, CorpusError> {
    let read = |name: &str| -> Result<String, CorpusError> {
        match source {
            CorpusSource::Embedded => Ok(match name {
                "participants.csv" => EMBEDDED_PARTICIPANTS.to_string(),
                "membership.json" => EMBEDDED_MEMBERSHIP.to_string(),
                "histograms.csv" => EMBEDDED_HISTOGRAMS.to_string(),
                "contingency.json" => EMBEDDED_CONTINGENCY.to_string(),
                _ => unreachable!(),
            }),
            CorpusSource::Dir(dir) => {
                let path = dir.join(name);
                std::fs::read_to_string(&path).map_err(|source| CorpusError::Io { path, source })
            }
        }
    };
    parse_corpus(
        &read("participants.csv")?,
        &read("membership.json")?,
        &read("histograms.csv")?,
        &read("contingency.json")?,
    )
}

/// Expected population sizes of the embedded corpus. File corpora must
/// match them; the loader is a replication tool, not a general survey
/// ingester.
const EXPECTED_WOMEN: usize = 28;
const EXPECTED_MEN: usize = 19;

fn parse_corpus(
    participants_csv: &str,
    membership_json: &str,
    histograms_csv: &str,
    contingency_json: &str,
) -> Result<Corpus, CorpusError> {
    // participants.csv
    let mut reader = csv::Reader::from_reader(participants_csv.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| schema("participants.csv", e.to_string()))?
        .clone();
    for expected in ["participant_id", "gender", "cooperation"] {
        if !headers.iter().any(|h| h == expected) {
            return Err(schema(
                "participants.csv",
                format!("missing column {expected:?}"),
            ));
        }
    }
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let (id_col, gender_col, coop_col) = (col("participant_id"), col("gender"), col("cooperation"));

    struct Partial {
        id: ParticipantId,
        cooperation: CooperationOutcome,
    }
    let mut partials: Vec<Partial> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| schema("participants.csv", e.to_string()))?;
        let row = i + 2;
        let id: ParticipantId = record
            .get(id_col)
            .unwrap_or("")
            .parse()
            .map_err(|e| schema("participants.csv", format!("row {row}: {e}")))?;
        let gender: Gender = record
            .get(gender_col)
            .unwrap_or("")
            .parse()
            .map_err(|e| schema("participants.csv", format!("row {row}: {e}")))?;
        if gender != id.gender {
            return Err(schema(
                "participants.csv",
                format!("row {row}: gender column disagrees with id {}", id.code()),
            ));
        }
        let cooperation: CooperationOutcome = record
            .get(coop_col)
            .unwrap_or("")
            .parse()
            .map_err(|e| schema("participants.csv", format!("row {row}: {e}")))?;
        if partials.iter().any(|p| p.id == id) {
            return Err(schema(
                "participants.csv",
                format!("row {row}: duplicate participant {}", id.code()),
            ));
        }
        partials.push(Partial { id, cooperation });
    }
    if partials.is_empty() {
        return Err(schema("participants.csv", "no participant rows"));
    }
    let women = partials
        .iter()
        .filter(|p| p.id.gender == Gender::Woman)
        .count();
    let men = partials.len() - women;
    if women != EXPECTED_WOMEN || men != EXPECTED_MEN {
        return Err(CorpusError::CountMismatch(format!(
            "expected {EXPECTED_WOMEN} women and {EXPECTED_MEN} men, found {women} and {men}"
        )));
    }

    // membership.json
    let labels = MembershipLabels::from_json_str(membership_json)
        .map_err(|e| schema("membership.json", e.to_string()))?;
    let mut memberships = Vec::with_capacity(partials.len());
    for p in &partials {
        match labels.lookup(p.id.gender, p.id.index) {
            Some(m) => memberships.push(m),
            None => {
                return Err(schema(
                    "membership.json",
                    format!("participant {} has no membership label", p.id.code()),
                ))
            }
        }
    }
    let labeled: usize = labels.labels.iter().map(|r| r.women.len() + r.men.len()).sum();
    if labeled != partials.len() {
        return Err(CorpusError::CountMismatch(format!(
            "membership.json labels {labeled} participants, corpus has {}",
            partials.len()
        )));
    }

    // histograms.csv
    let mut reader = csv::Reader::from_reader(histograms_csv.as_bytes());
    let mut histograms: Vec<[Option<SubscaleHistogram>; 4]> = vec![[None; 4]; partials.len()];
    let mut notes = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| schema("histograms.csv", e.to_string()))?;
        let row = i + 2;
        if record.len() != 7 {
            return Err(schema(
                "histograms.csv",
                format!("row {row}: expected 7 fields, found {}", record.len()),
            ));
        }
        let id: ParticipantId = record
            .get(0)
            .unwrap_or("")
            .parse()
            .map_err(|e| schema("histograms.csv", format!("row {row}: {e}")))?;
        let subscale: Subscale = record
            .get(1)
            .unwrap_or("")
            .parse()
            .map_err(|e| schema("histograms.csv", format!("row {row}: {e}")))?;
        let mut counts = [0u8; 5];
        for (k, slot) in counts.iter_mut().enumerate() {
            let field = record.get(k + 2).unwrap_or("").trim();
            *slot = field.parse().map_err(|_| {
                schema(
                    "histograms.csv",
                    format!("row {row}: bad count {field:?}"),
                )
            })?;
            if *slot > 7 {
                return Err(schema(
                    "histograms.csv",
                    format!("row {row}: count {} exceeds the 7 items", *slot),
                ));
            }
        }
        let pos = partials
            .iter()
            .position(|p| p.id == id)
            .ok_or_else(|| {
                schema(
                    "histograms.csv",
                    format!("row {row}: unknown participant {}", id.code()),
                )
            })?;
        let slot = &mut histograms[pos][Subscale::ALL.iter().position(|&s| s == subscale).unwrap()];
        if slot.is_some() {
            return Err(schema(
                "histograms.csv",
                format!("row {row}: duplicate histogram {} {}", id.code(), subscale),
            ));
        }
        let histogram = SubscaleHistogram { counts };
        if histogram.sum() != 7 {
            notes.push(DataNote {
                participant: id,
                subscale,
                sum: histogram.sum(),
            });
        }
        *slot = Some(histogram);
    }
    for (p, hs) in partials.iter().zip(&histograms) {
        for (s, h) in Subscale::ALL.iter().zip(hs) {
            if h.is_none() {
                return Err(CorpusError::CountMismatch(format!(
                    "participant {} is missing the {s} histogram",
                    p.id.code()
                )));
            }
        }
    }

    // contingency.json
    let contingency: ContingencySet = serde_json::from_str(contingency_json)
        .map_err(|e| schema("contingency.json", e.to_string()))?;

    let participants = partials
        .into_iter()
        .zip(memberships)
        .zip(histograms)
        .map(|((p, membership), hs)| ParticipantRecord {
            id: p.id,
            cooperation: p.cooperation,
            membership,
            histograms: hs.map(|h| h.unwrap()),
            game_answers: None,
        })
        .collect();

    Ok(Corpus {
        participants,
        contingency,
        notes,
    })
}

//! CSV input files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fmea::{Factor, FailureMode, SodctRating, MAX_RATING, MIN_RATING};
use crate::fuzzy::{ImportanceTerm, RatingTerm, ReliabilityTerm};
use crate::stats::ItemMatrix;
use crate::swara::{validate_judgments, CriterionJudgment};
use crate::waspas::{
    build_decision_matrix, Criterion, Direction, MatrixMode, RatingJudgment, WaspasInput,
};

pub const CRITERIA_HEADER: [&str; 3] = ["id", "name", "direction"];
pub const FAILURE_MODES_HEADER: [&str; 2] = ["id", "label"];
pub const WEIGHTING_HEADER: [&str; 5] = [
    "expert_id",
    "criterion_id",
    "rank_position",
    "importance_term",
    "reliability_term",
];
pub const RATINGS_HEADER: [&str; 5] = [
    "expert_id",
    "failure_mode_id",
    "criterion_id",
    "rating_term",
    "reliability_term",
];
pub const SODCT_HEADER: [&str; 4] = ["expert_id", "failure_mode_id", "factor", "value"];

/// An input document: where it came from and its text.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            text: text.into(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::new(path.display().to_string(), text))
    }

    pub fn sha256(&self) -> String {
        Sha256::digest(self.text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// A parsed data row with its 1-based line number.
struct Row {
    line: u64,
    fields: Vec<String>,
}

impl Row {
    fn get(&self, i: usize) -> &str {
        self.fields[i].as_str()
    }

    fn opt(&self, i: usize) -> Option<&str> {
        Some(self.get(i)).filter(|s| !s.is_empty())
    }
}

fn parse_error(src: &Source, line: u64, reason: impl Into<String>) -> Error {
    Error::Parse {
        path: src.name.clone(),
        line,
        reason: reason.into(),
    }
}

fn read_rows(src: &Source, header: &[&str]) -> Result<Vec<Row>> {
    let text = src.text.strip_prefix('\u{feff}').unwrap_or(&src.text);
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found: Vec<String> = reader
        .headers()
        .map_err(|e| parse_error(src, 1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if found != header {
        return Err(parse_error(
            src,
            1,
            format!("expected header {:?}, found {found:?}", header.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(src, line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push(Row {
            line,
            fields: record.iter().map(str::to_string).collect(),
        });
    }
    Ok(rows)
}

fn required<'a>(src: &Source, row: &'a Row, i: usize, column: &str) -> Result<&'a str> {
    row.opt(i)
        .ok_or_else(|| parse_error(src, row.line, format!("{column} is empty")))
}

fn term<T: FromStr<Err = Error>>(src: &Source, row: &Row, s: &str) -> Result<T> {
    s.parse().map_err(|e: Error| parse_error(src, row.line, e.to_string()))
}

fn check_unique<'a>(src: &Source, ids: impl Iterator<Item = (u64, &'a str)>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (line, id) in ids {
        if !seen.insert(id) {
            return Err(parse_error(src, line, format!("duplicate id {id:?}")));
        }
    }
    Ok(())
}

pub fn parse_criteria(src: &Source) -> Result<Vec<Criterion>> {
    let rows = read_rows(src, &CRITERIA_HEADER)?;
    let criteria = rows
        .iter()
        .map(|row| {
            let id = required(src, row, 0, "id")?;
            let direction: Direction = term(src, row, required(src, row, 2, "direction")?)?;
            Ok(Criterion {
                id: id.to_string(),
                name: row.opt(1).unwrap_or(id).to_string(),
                direction,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_unique(src, rows.iter().map(|r| r.line).zip(criteria.iter().map(|c| c.id.as_str())))?;
    if criteria.is_empty() {
        return Err(parse_error(src, 1, "no criteria"));
    }
    Ok(criteria)
}

pub fn parse_failure_modes(src: &Source) -> Result<Vec<FailureMode>> {
    let rows = read_rows(src, &FAILURE_MODES_HEADER)?;
    let modes = rows
        .iter()
        .map(|row| Ok(FailureMode::new(required(src, row, 0, "id")?, row.get(1))))
        .collect::<Result<Vec<_>>>()?;
    check_unique(src, rows.iter().map(|r| r.line).zip(modes.iter().map(|m| m.id.as_str())))?;
    if modes.is_empty() {
        return Err(parse_error(src, 1, "no failure modes"));
    }
    Ok(modes)
}

/// Weighting judgments; `criteria` resolves the criterion ids.
pub fn parse_weighting(src: &Source, criteria: &[Criterion]) -> Result<Vec<CriterionJudgment>> {
    let known: BTreeSet<&str> = criteria.iter().map(|c| c.id.as_str()).collect();
    let rows = read_rows(src, &WEIGHTING_HEADER)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        let expert = required(src, row, 0, "expert_id")?;
        let criterion = required(src, row, 1, "criterion_id")?;
        if !known.contains(criterion) {
            return Err(parse_error(src, row.line, format!("unknown criterion {criterion:?}")));
        }
        if !seen.insert((expert, criterion)) {
            return Err(parse_error(
                src,
                row.line,
                format!("duplicate judgment for (expert, criterion) = ({expert}, {criterion})"),
            ));
        }
        let rank_position: u32 = required(src, row, 2, "rank_position")?
            .parse()
            .map_err(|e| parse_error(src, row.line, format!("rank_position: {e}")))?;
        let importance: Option<ImportanceTerm> =
            row.opt(3).map(|s| term(src, row, s)).transpose()?;
        let reliability: Option<ReliabilityTerm> =
            row.opt(4).map(|s| term(src, row, s)).transpose()?;
        out.push(CriterionJudgment {
            expert_id: expert.to_string(),
            criterion_id: criterion.to_string(),
            rank_position,
            importance,
            reliability,
        });
    }
    validate_judgments(&out)?;
    let covered: BTreeSet<&str> = out.iter().map(|j| j.criterion_id.as_str()).collect();
    let missing: Vec<&&str> = known.difference(&covered).collect();
    if !missing.is_empty() {
        return Err(Error::validation(format!(
            "{}: weighting judgments do not cover criteria {missing:?}",
            src.name
        )));
    }
    Ok(out)
}

/// Rating judgments; ids are resolved against `failure_modes` and
/// `criteria`. Grid completeness is checked by [`load_inputs`].
pub fn parse_ratings(
    src: &Source,
    failure_modes: &[FailureMode],
    criteria: &[Criterion],
) -> Result<Vec<RatingJudgment>> {
    let modes: BTreeSet<&str> = failure_modes.iter().map(|m| m.id.as_str()).collect();
    let crits: BTreeSet<&str> = criteria.iter().map(|c| c.id.as_str()).collect();
    let rows = read_rows(src, &RATINGS_HEADER)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        let expert = required(src, row, 0, "expert_id")?;
        let fm = required(src, row, 1, "failure_mode_id")?;
        let criterion = required(src, row, 2, "criterion_id")?;
        if !modes.contains(fm) {
            return Err(parse_error(src, row.line, format!("unknown failure mode {fm:?}")));
        }
        if !crits.contains(criterion) {
            return Err(parse_error(src, row.line, format!("unknown criterion {criterion:?}")));
        }
        if !seen.insert((expert, fm, criterion)) {
            return Err(parse_error(
                src,
                row.line,
                format!("duplicate rating for (expert, failure mode, criterion) = ({expert}, {fm}, {criterion})"),
            ));
        }
        let rating: RatingTerm = term(src, row, required(src, row, 3, "rating_term")?)?;
        let reliability: Option<ReliabilityTerm> =
            row.opt(4).map(|s| term(src, row, s)).transpose()?;
        out.push(RatingJudgment::new(expert, fm, criterion, rating, reliability));
    }
    Ok(out)
}

pub fn parse_sodct(src: &Source, failure_modes: &[FailureMode]) -> Result<Vec<SodctRating>> {
    let modes: BTreeSet<&str> = failure_modes.iter().map(|m| m.id.as_str()).collect();
    let rows = read_rows(src, &SODCT_HEADER)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for row in &rows {
        let expert = required(src, row, 0, "expert_id")?;
        let fm = required(src, row, 1, "failure_mode_id")?;
        if !modes.contains(fm) {
            return Err(parse_error(src, row.line, format!("unknown failure mode {fm:?}")));
        }
        let factor: Factor = term(src, row, required(src, row, 2, "factor")?)?;
        let raw = required(src, row, 3, "value")?;
        let value: u8 = raw
            .parse()
            .ok()
            .filter(|v| (MIN_RATING..=MAX_RATING).contains(v))
            .ok_or_else(|| {
                parse_error(
                    src,
                    row.line,
                    format!("value {raw:?} is not an integer in {MIN_RATING}..={MAX_RATING}"),
                )
            })?;
        if !seen.insert((expert, fm, factor)) {
            return Err(parse_error(
                src,
                row.line,
                format!("duplicate rating for (expert, failure mode, factor) = ({expert}, {fm}, {factor})"),
            ));
        }
        out.push(SodctRating::new(expert, fm, factor, value));
    }
    Ok(out)
}

/// Survey data: a `respondent_id` column followed by one numeric column per
/// item or variable.
pub fn parse_survey(src: &Source) -> Result<ItemMatrix> {
    let text = src.text.strip_prefix('\u{feff}').unwrap_or(&src.text);
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| parse_error(src, 1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.first().map(String::as_str) != Some("respondent_id") || header.len() < 2 {
        return Err(parse_error(
            src,
            1,
            "header must be respondent_id followed by at least one item column",
        ));
    }
    let mut respondents = Vec::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            parse_error(src, e.position().map_or(0, |p| p.line()), e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        respondents.push(record[0].to_string());
        let values = record
            .iter()
            .skip(1)
            .zip(&header[1..])
            .map(|(v, col)| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_error(src, line, format!("{col}: {v:?} is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(values);
    }
    ItemMatrix::new(respondents, header[1..].to_vec(), rows)
}

pub fn load_survey(path: &Path) -> Result<ItemMatrix> {
    parse_survey(&Source::read(path)?)
}

/// File locations for [`load_inputs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPaths {
    pub criteria: PathBuf,
    pub failure_modes: PathBuf,
    pub weighting: PathBuf,
    pub ratings: PathBuf,
    pub sodct: Option<PathBuf>,
}

impl InputPaths {
    /// The conventional file names inside `dir`. `sodct_ratings.csv` is
    /// used when present.
    pub fn in_dir(dir: &Path) -> Self {
        let sodct = dir.join("sodct_ratings.csv");
        Self {
            criteria: dir.join("criteria.csv"),
            failure_modes: dir.join("failure_modes.csv"),
            weighting: dir.join("weighting_judgments.csv"),
            ratings: dir.join("rating_judgments.csv"),
            sodct: sodct.exists().then_some(sodct),
        }
    }
}

/// Input documents before parsing.
#[derive(Debug, Clone)]
pub struct InputSources {
    pub criteria: Source,
    pub failure_modes: Source,
    pub weighting: Source,
    pub ratings: Source,
    pub sodct: Option<Source>,
}

impl InputSources {
    pub fn read(paths: &InputPaths) -> Result<Self> {
        Ok(Self {
            criteria: Source::read(&paths.criteria)?,
            failure_modes: Source::read(&paths.failure_modes)?,
            weighting: Source::read(&paths.weighting)?,
            ratings: Source::read(&paths.ratings)?,
            sodct: paths.sodct.as_deref().map(Source::read).transpose()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub file: String,
    pub sha256: String,
    pub records: usize,
}

/// Parsed and cross-checked judgment sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Inputs {
    pub criteria: Vec<Criterion>,
    pub failure_modes: Vec<FailureMode>,
    pub weighting: Vec<CriterionJudgment>,
    pub ratings: Vec<RatingJudgment>,
    pub sodct: Option<Vec<SodctRating>>,
    /// Keyed by role: criteria, failure_modes, weighting, ratings, sodct.
    pub digests: BTreeMap<String, InputDigest>,
}

impl Inputs {
    pub fn waspas_input(&self) -> WaspasInput {
        WaspasInput {
            alternatives: self.failure_mode_ids(),
            criteria: self.criteria.clone(),
            judgments: self.ratings.clone(),
        }
    }

    pub fn failure_mode_ids(&self) -> Vec<String> {
        self.failure_modes.iter().map(|m| m.id.clone()).collect()
    }

    pub fn label(&self, id: &str) -> &str {
        self.failure_modes
            .iter()
            .find(|m| m.id == id)
            .map_or("", |m| m.label.as_str())
    }

    /// True when every rating carries a reliability term.
    pub fn has_reliability(&self) -> bool {
        self.ratings.iter().all(|r| r.reliability.is_some())
    }
}

fn file_name(src: &Source) -> String {
    Path::new(&src.name)
        .file_name()
        .map_or_else(|| src.name.clone(), |f| f.to_string_lossy().into_owned())
}

/// Parse every document and resolve the cross references. All checks run
/// here, before any computation.
pub fn parse_inputs(sources: &InputSources) -> Result<Inputs> {
    let criteria = parse_criteria(&sources.criteria)?;
    let failure_modes = parse_failure_modes(&sources.failure_modes)?;
    let weighting = parse_weighting(&sources.weighting, &criteria)?;
    let ratings = parse_ratings(&sources.ratings, &failure_modes, &criteria)?;
    if ratings.is_empty() {
        return Err(parse_error(&sources.ratings, 1, "no rating judgments"));
    }
    let ids: Vec<String> = failure_modes.iter().map(|m| m.id.clone()).collect();
    build_decision_matrix(&ratings, &ids, &criteria, MatrixMode::Fuzzy)?;
    let sodct = sources
        .sodct
        .as_ref()
        .map(|s| parse_sodct(s, &failure_modes))
        .transpose()?;
    if let Some(sodct) = &sodct {
        crate::fmea::rpn_scores(sodct, &ids)?;
    }

    let mut digests = BTreeMap::new();
    let mut digest = |role: &str, src: &Source, records: usize| {
        digests.insert(
            role.to_string(),
            InputDigest {
                file: file_name(src),
                sha256: src.sha256(),
                records,
            },
        );
    };
    digest("criteria", &sources.criteria, criteria.len());
    digest("failure_modes", &sources.failure_modes, failure_modes.len());
    digest("weighting", &sources.weighting, weighting.len());
    digest("ratings", &sources.ratings, ratings.len());
    if let (Some(src), Some(s)) = (&sources.sodct, &sodct) {
        digest("sodct", src, s.len());
    }
    Ok(Inputs {
        criteria,
        failure_modes,
        weighting,
        ratings,
        sodct,
        digests,
    })
}

pub fn load_inputs(paths: &InputPaths) -> Result<Inputs> {
    parse_inputs(&InputSources::read(paths)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> InputSources {
        InputSources {
            criteria: Source::new("criteria.csv", "id,name,direction\nC1,Cost,non-beneficial\nC2,Quality,beneficial\n"),
            failure_modes: Source::new("failure_modes.csv", "id,label\nF1,first\nF2,second\n"),
            weighting: Source::new(
                "weighting_judgments.csv",
                "expert_id,criterion_id,rank_position,importance_term,reliability_term\nE1,C2,1,,\nE1,C1,2,MOL,H\n",
            ),
            ratings: Source::new(
                "rating_judgments.csv",
                "expert_id,failure_mode_id,criterion_id,rating_term,reliability_term\n\
                 E1,F1,C1,G,H\nE1,F1,C2,F,M\nE1,F2,C1,P,VH\nE1,F2,C2,VG,H\n",
            ),
            sodct: None,
        }
    }

    #[test]
    fn minimal_fixture_loads() {
        let inputs = parse_inputs(&minimal()).unwrap();
        assert_eq!(inputs.criteria.len(), 2);
        assert_eq!(inputs.criteria[0].direction, Direction::NonBeneficial);
        assert_eq!(inputs.weighting[0].importance, None);
        assert_eq!(inputs.ratings.len(), 4);
        assert_eq!(inputs.digests["criteria"].sha256.len(), 64);
        assert!(inputs.has_reliability());
    }

    #[test]
    fn unknown_rating_term_names_row_and_codes() {
        let mut s = minimal();
        s.ratings.text = s.ratings.text.replace("E1,F2,C1,P,VH", "E1,F2,C1,XX,VH");
        let e = parse_inputs(&s).unwrap_err();
        let msg = e.to_string();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{msg}");
        for code in ["VP", "P", "MP", "F", "MG", "G", "VG"] {
            assert!(msg.contains(code), "{msg}");
        }
        assert!(msg.contains("\"XX\""), "{msg}");
    }

    #[test]
    fn missing_cell_reported_as_triple() {
        let mut s = minimal();
        s.ratings.text = s.ratings.text.replace("E1,F2,C2,VG,H\n", "");
        match parse_inputs(&s).unwrap_err() {
            Error::IncompleteGrid(t) => {
                assert_eq!(t, [("E1".to_string(), "F2".to_string(), "C2".to_string())]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn header_and_duplicates() {
        let mut s = minimal();
        s.criteria.text = s.criteria.text.replace("id,name,direction", "id,direction,name");
        assert!(matches!(parse_inputs(&s).unwrap_err(), Error::Parse { line: 1, .. }));

        let mut s = minimal();
        s.ratings.text.push_str("E1,F1,C1,G,H\n");
        let e = parse_inputs(&s).unwrap_err();
        assert!(e.to_string().contains("duplicate"), "{e}");
    }

    #[test]
    fn sodct_values_checked() {
        let mut s = minimal();
        s.sodct = Some(Source::new(
            "sodct_ratings.csv",
            "expert_id,failure_mode_id,factor,value\nE1,F1,S,11\n",
        ));
        let e = parse_inputs(&s).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn survey() {
        let m = parse_survey(&Source::new("survey.csv", "respondent_id,a,b\nr1,1,2\nr2,3,4\n")).unwrap();
        assert_eq!(m.items, ["a", "b"]);
        assert_eq!(m.column(1), [2.0, 4.0]);
        assert!(parse_survey(&Source::new("s.csv", "respondent_id,a\nr1,x\n")).is_err());
    }
}

//! Regularity of complete fans via wall-crossing inequalities, and resumable
//! surveys over embeddings.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use subfan_linalg::io::rationals_to_strings;
use subfan_linalg::{strict_feasibility, Rational, StrictFeasibility};

use crate::complex::{commutation_class, multiassoc_word, SubwordComplex};
use crate::counting::{
    counting_matrix, enumerate_embeddings, restricted_matrix, CountingMatrix, Embedding,
};
use crate::coxeter::{CoxeterGroup, Word};
use crate::error::{Result, SubfanError};
use crate::fan::{check_complete, wall_relations, Fan, FanCheckReport, Wall};

/// Environment variable naming the directory for persisted surveys.
pub const CACHE_ENV: &str = "SUBFAN_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Regular,
    NonRegular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityResult {
    pub verdict: Verdict,
    /// One height per ray, zero on the reference facet.
    pub heights: Option<Vec<Rational>>,
    /// Nonnegative multipliers, one per wall, combining to the zero form.
    pub farkas: Option<Vec<Rational>>,
    /// 1-based positions of the pinned facet.
    pub reference_facet: Vec<usize>,
    pub wall_count: usize,
    fingerprint: u64,
}

impl RegularityResult {
    pub fn is_regular(&self) -> bool {
        self.verdict == Verdict::Regular
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict,
            "heights": self.heights.as_deref().map(rationals_to_strings),
            "farkas": self.farkas.as_deref().map(rationals_to_strings),
            "reference_facet": self.reference_facet,
            "wall_count": self.wall_count,
        })
    }
}

/// Strict feasibility of the wall inequalities with the reference facet's heights pinned to 0.
pub fn check_regular(fan: &Fan, proof: &FanCheckReport) -> Result<RegularityResult> {
    if !proof.complete || proof.fingerprint != fan.fingerprint() {
        return Err(SubfanError::NotComplete);
    }
    let walls = wall_relations(fan)?;
    let r = fan.complex().size();
    let reference = fan.complex().facets()[fan.reference_facet()];
    let free: Vec<usize> = (0..r).filter(|&p| !reference.contains(p)).collect();
    let rows: Vec<Vec<Rational>> = walls
        .iter()
        .map(|w| free.iter().map(|&p| w.coefficient(p)).collect())
        .collect();
    let mut result = RegularityResult {
        verdict: Verdict::Regular,
        heights: None,
        farkas: None,
        reference_facet: reference.one_based(),
        wall_count: walls.len(),
        fingerprint: fan.fingerprint(),
    };
    match strict_feasibility(&rows)? {
        StrictFeasibility::Feasible(h) => {
            let mut heights = vec![Rational::zero(); r];
            for (p, v) in free.iter().zip(h) {
                heights[*p] = v;
            }
            result.heights = Some(heights);
        }
        StrictFeasibility::Infeasible(y) => {
            result.verdict = Verdict::NonRegular;
            result.farkas = Some(y);
        }
    }
    Ok(result)
}

/// Replays the certificate in exact arithmetic.
pub fn verify_certificate(fan: &Fan, result: &RegularityResult) -> Result<bool> {
    if result.fingerprint != fan.fingerprint() {
        return Err(SubfanError::CertificateMismatch(
            "result was computed for another fan".into(),
        ));
    }
    let walls = wall_relations(fan)?;
    if walls.len() != result.wall_count {
        return Err(SubfanError::CertificateMismatch(
            "wall count differs".into(),
        ));
    }
    Ok(match result.verdict {
        Verdict::Regular => result
            .heights
            .as_ref()
            .is_some_and(|h| heights_certify(&walls, h)),
        Verdict::NonRegular => result
            .farkas
            .as_ref()
            .is_some_and(|y| farkas_certifies(&walls, fan.complex().size(), y)),
    })
}

fn wall_value(w: &Wall, h: &[Rational]) -> Rational {
    w.coeffs.iter().map(|(p, c)| c * &h[*p]).sum()
}

fn heights_certify(walls: &[Wall], h: &[Rational]) -> bool {
    walls
        .iter()
        .all(|w| w.coeffs.iter().all(|(p, _)| *p < h.len()) && wall_value(w, h).is_positive())
}

fn farkas_certifies(walls: &[Wall], r: usize, y: &[Rational]) -> bool {
    if y.len() != walls.len() || y.iter().any(Signed::is_negative) || y.iter().all(Zero::is_zero) {
        return false;
    }
    let mut total = vec![Rational::zero(); r];
    for (w, yw) in walls.iter().zip(y) {
        if yw.is_zero() {
            continue;
        }
        for (p, c) in &w.coeffs {
            total[*p] += yw * c;
        }
    }
    total.iter().all(Zero::is_zero)
}

/// Completeness then regularity for one fan.
pub fn classify(
    fan: &Fan,
    d: Option<&subfan_linalg::RationalMatrix>,
) -> Result<(FanCheckReport, Option<RegularityResult>)> {
    let report = check_complete(fan, d)?;
    let regular = if report.complete {
        Some(check_regular(fan, &report)?)
    } else {
        None
    };
    Ok((report, regular))
}

/// Multi-associahedron family `Delta_{n+2k+1,k}` surveyed over embeddings into `target^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveySpec {
    /// Coxeter element of the word `c^k w0(c)`.
    pub c: Word,
    pub k: usize,
    /// Coxeter element of the ambient word `target^m`.
    pub target: Word,
    pub m_min: usize,
    pub m_max: usize,
}

impl SurveySpec {
    pub fn new(c: Word, k: usize, m_max: usize) -> Self {
        Self {
            target: c.clone(),
            c,
            k,
            m_min: 1,
            m_max,
        }
    }

    pub fn rank(&self) -> usize {
        self.c.rank()
    }

    /// `l` in `Delta_{l,k}`.
    pub fn polygon(&self) -> usize {
        self.rank() + 2 * self.k + 1
    }

    /// File stem identifying the survey.
    pub fn key(&self) -> String {
        format!(
            "delta-{}-{}-c{}-t{}-m{}-{}",
            self.polygon(),
            self.k,
            self.c,
            self.target,
            self.m_min,
            self.m_max
        )
    }

    /// Words of the commutation class, sorted.
    pub fn words(&self) -> Result<Vec<Word>> {
        let q = multiassoc_word(&self.c, self.k)?;
        Ok(commutation_class(CoxeterGroup::A(self.rank()), &q))
    }

    /// Jobs in survey order: words, then `m`, then embeddings lexicographically.
    pub fn jobs(&self) -> Result<impl Iterator<Item = Embedding>> {
        let words = self.words()?;
        let target = self.target.clone();
        let (lo, hi) = (self.m_min.max(1), self.m_max);
        Ok(words
            .into_iter()
            .flat_map(move |w| (lo..=hi).map(move |m| (w.clone(), m)))
            .flat_map(move |(w, m)| enumerate_embeddings(&w, &target, m)))
    }
}

/// One survey line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub word: String,
    pub m: usize,
    /// 1-based positions in `target^m`, space separated.
    pub positions: String,
    pub complete: bool,
    /// Empty when the fan is not complete.
    pub regular: Option<bool>,
    pub wall_count: usize,
    pub runtime_ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub regular: usize,
    pub non_regular: usize,
    pub incomplete: usize,
}

impl Tally {
    pub fn add(&mut self, row: &SurveyRow) {
        match row.regular {
            Some(true) => self.regular += 1,
            Some(false) => self.non_regular += 1,
            None => self.incomplete += 1,
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.regular += other.regular;
        self.non_regular += other.non_regular;
        self.incomplete += other.incomplete;
        self
    }

    pub fn total(&self) -> usize {
        self.regular + self.non_regular + self.incomplete
    }
}

/// Builds the fan of an embedding from the restricted counting matrix and classifies it.
pub fn evaluate_embedding(
    complex: &SubwordComplex,
    counting: &CountingMatrix,
    phi: &Embedding,
) -> Result<SurveyRow> {
    let start = Instant::now();
    let d = restricted_matrix(counting, phi)?;
    let fan = Fan::new(complex.clone(), d.kernel_basis()?)?;
    let (report, regular) = classify(&fan, Some(&d))?;
    Ok(SurveyRow {
        word: phi.source.to_string(),
        m: phi.m,
        positions: phi
            .one_based()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
        complete: report.complete,
        regular: regular.map(|r| r.is_regular()),
        wall_count: report.wall_count,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Directory for persisted surveys: `$SUBFAN_CACHE_DIR`, else `.subfan-cache`.
pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(".subfan-cache"), PathBuf::from)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Cursor {
    key: String,
    done: usize,
}

/// Paths of the CSV and cursor file of a survey inside `dir`.
pub fn survey_paths(dir: &Path, spec: &SurveySpec) -> (PathBuf, PathBuf) {
    let key = spec.key();
    (
        dir.join(format!("{key}.csv")),
        dir.join(format!("{key}.cursor")),
    )
}

pub fn read_survey(csv_path: &Path) -> Result<Vec<SurveyRow>> {
    if !csv_path.exists() {
        return Ok(Vec::new());
    }
    let mut reader =
        csv::Reader::from_path(csv_path).map_err(|e| SubfanError::Format(e.to_string()))?;
    reader
        .deserialize()
        .map(|r| r.map_err(|e| SubfanError::Format(e.to_string())))
        .collect()
}

pub fn tally(rows: &[SurveyRow]) -> Tally {
    let mut t = Tally::default();
    rows.iter().for_each(|r| t.add(r));
    t
}

/// Outcome of one survey invocation.
#[derive(Clone, Debug)]
pub struct SurveyRun {
    pub csv: PathBuf,
    pub cursor: PathBuf,
    /// Jobs evaluated by this call.
    pub new_rows: usize,
    /// Whether every job of the spec has been evaluated.
    pub finished: bool,
    /// Tally over the whole persisted CSV.
    pub tally: Tally,
}

/// Runs up to `limit` further jobs, appending to the CSV in `dir` and
/// advancing the cursor after every chunk.
pub fn run_survey(spec: &SurveySpec, dir: &Path, limit: Option<usize>) -> Result<SurveyRun> {
    fs::create_dir_all(dir)?;
    let (csv_path, cursor_path) = survey_paths(dir, spec);
    let key = spec.key();
    let mut done = match fs::read_to_string(&cursor_path) {
        Ok(text) => {
            let c: Cursor =
                serde_json::from_str(&text).map_err(|e| SubfanError::Format(e.to_string()))?;
            if c.key != key {
                return Err(SubfanError::Format(format!(
                    "cursor belongs to survey {}",
                    c.key
                )));
            }
            c.done
        }
        Err(_) => 0,
    };
    truncate_rows(&csv_path, done)?;
    if done == 0 {
        File::create(&csv_path)?;
    }

    let n = spec.rank();
    let mut complexes: HashMap<Word, SubwordComplex> = HashMap::new();
    let mut counting: HashMap<usize, CountingMatrix> = HashMap::new();
    let mut jobs = spec.jobs()?.skip(done);
    let chunk_size = 4 * rayon::current_num_threads().max(1);
    let budget = limit.unwrap_or(usize::MAX);
    let mut new_rows = 0;
    let mut finished = false;
    while new_rows < budget {
        let chunk: Vec<Embedding> = jobs
            .by_ref()
            .take(chunk_size.min(budget - new_rows))
            .collect();
        if chunk.is_empty() {
            finished = true;
            break;
        }
        for phi in &chunk {
            if !complexes.contains_key(&phi.source) {
                complexes.insert(
                    phi.source.clone(),
                    SubwordComplex::type_a(phi.source.clone())?,
                );
            }
            if let std::collections::hash_map::Entry::Vacant(e) = counting.entry(phi.m) {
                e.insert(counting_matrix(n, &spec.target, phi.m)?);
            }
        }
        let rows: Vec<SurveyRow> = chunk
            .par_iter()
            .map(|phi| evaluate_embedding(&complexes[&phi.source], &counting[&phi.m], phi))
            .collect::<Result<_>>()?;
        append_rows(&csv_path, &rows)?;
        done += rows.len();
        new_rows += rows.len();
        let cursor = Cursor {
            key: key.clone(),
            done,
        };
        fs::write(
            &cursor_path,
            serde_json::to_string(&cursor).expect("cursor serializes"),
        )?;
    }
    if !finished && jobs.next().is_none() {
        finished = true;
    }
    let tally = tally(&read_survey(&csv_path)?);
    Ok(SurveyRun {
        csv: csv_path,
        cursor: cursor_path,
        new_rows,
        finished,
        tally,
    })
}

fn append_rows(path: &Path, rows: &[SurveyRow]) -> Result<()> {
    let has_header = fs::metadata(path).map(|m| m.len() > 0).unwrap_or(false);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(!has_header)
        .from_writer(file);
    for r in rows {
        w.serialize(r)
            .map_err(|e| SubfanError::Format(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Drops rows written after the last cursor update.
fn truncate_rows(path: &Path, keep: usize) -> Result<()> {
    let Ok(file) = File::open(path) else {
        return Ok(());
    };
    let lines: Vec<String> = BufReader::new(file)
        .lines()
        .collect::<std::io::Result<_>>()?;
    if lines.len() <= keep + 1 {
        return Ok(());
    }
    let mut text = lines[..=keep].join("\n");
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

/// Verdicts of `Obs(A3)` and of each single-letter deletion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionRow {
    /// 1-based deleted position; `None` for the full word.
    pub deleted: Option<usize>,
    pub word: String,
    /// Whether the word still contains a reduced expression of `w0`.
    pub spherical: bool,
    pub tested: usize,
    pub tally: Tally,
}

/// Tests up to `limit` embeddings of each word into `c^m`.
pub fn obstruction_survey(c: &Word, m: usize, limit: usize) -> Result<Vec<ObstructionRow>> {
    let obs = Word::parse(3, "1212321212")?;
    let counting = counting_matrix(3, c, m)?;
    let mut words = vec![(None, obs.clone())];
    for p in 0..obs.len() {
        let keep: Vec<usize> = (0..obs.len()).filter(|&q| q != p).collect();
        words.push((Some(p + 1), obs.subword(&keep)));
    }
    words
        .into_iter()
        .map(|(deleted, w)| {
            let mut row = ObstructionRow {
                deleted,
                word: w.to_string(),
                spherical: false,
                tested: 0,
                tally: Tally::default(),
            };
            let Ok(complex) = SubwordComplex::type_a(w.clone()) else {
                return Ok(row);
            };
            row.spherical = true;
            let jobs: Vec<Embedding> = enumerate_embeddings(&w, c, m).take(limit).collect();
            let rows: Vec<SurveyRow> = jobs
                .par_iter()
                .map(|phi| evaluate_embedding(&complex, &counting, phi))
                .collect::<Result<_>>()?;
            row.tested = rows.len();
            row.tally = tally(&rows);
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::closed_form_counting;
    use crate::fan::{a4_fan, builtin_rays, RayFamily};
    use subfan_linalg::{int, RationalMatrix};

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    fn regular_of(fan: &Fan) -> RegularityResult {
        let report = check_complete(fan, None).unwrap();
        check_regular(fan, &report).unwrap()
    }

    #[test]
    fn associahedron_is_regular() {
        let fan = Fan::builtin(RayFamily::M213, 3).unwrap();
        let r = regular_of(&fan);
        assert!(r.is_regular());
        assert!(verify_certificate(&fan, &r).unwrap());
        let h = r.heights.as_ref().unwrap();
        assert!(h[..3].iter().all(Zero::is_zero));
    }

    #[test]
    fn simplex_fan_is_regular() {
        // Delta_{2k+2,k} is the word 1^{k+1} in A1: boundary of a k-simplex
        let fan = Fan::builtin(RayFamily::A1, 4).unwrap();
        assert_eq!(fan.complex().facets().len(), 4);
        let r = regular_of(&fan);
        assert!(r.is_regular() && verify_certificate(&fan, &r).unwrap());
        let fan = Fan::builtin(RayFamily::A2, 2).unwrap();
        assert_eq!(fan.complex().facets().len(), 2);
        let r = regular_of(&fan);
        assert!(r.is_regular() && verify_certificate(&fan, &r).unwrap());
    }

    #[test]
    fn ten_gon_is_not_regular() {
        let fan = Fan::builtin(RayFamily::M213, 5).unwrap();
        let d = closed_form_counting(&w(3, "213"), 5).unwrap().matrix;
        let (report, r) = classify(&fan, Some(&d)).unwrap();
        assert!(report.complete);
        let r = r.unwrap();
        assert_eq!(r.verdict, Verdict::NonRegular);
        assert!(verify_certificate(&fan, &r).unwrap());
        assert_eq!(r.farkas.as_ref().unwrap().len(), 1485);
    }

    #[test]
    fn nine_gon_a4_is_not_regular() {
        let (fan, sig) = a4_fan(2).unwrap();
        let (_, r) = classify(&fan, Some(&sig)).unwrap();
        let r = r.unwrap();
        assert!(!r.is_regular());
        assert!(verify_certificate(&fan, &r).unwrap());
    }

    #[test]
    fn tampered_certificates_fail() {
        let fan = Fan::builtin(RayFamily::M213, 4).unwrap();
        let r = regular_of(&fan);
        assert!(r.is_regular());
        let h = r.heights.clone().unwrap();
        let p = h.iter().position(|v| !v.is_zero()).unwrap();
        let mut bad = r.clone();
        bad.heights.as_mut().unwrap()[p] = Rational::zero();
        assert!(!verify_certificate(&fan, &bad).unwrap());
        let mut neg = r.clone();
        neg.heights = Some(h.iter().map(|v| -v).collect());
        assert!(!verify_certificate(&fan, &neg).unwrap());

        let fan10 = Fan::builtin(RayFamily::M213, 5).unwrap();
        let r10 = regular_of(&fan10);
        let mut bad = r10.clone();
        let y = bad.farkas.as_mut().unwrap();
        let k = y.iter().position(|v| !v.is_zero()).unwrap();
        y[k] = Rational::zero();
        assert!(!verify_certificate(&fan10, &bad).unwrap());
        assert!(matches!(
            verify_certificate(&fan, &r10),
            Err(SubfanError::CertificateMismatch(_))
        ));
    }

    #[test]
    fn requires_completeness_proof() {
        let fan = Fan::builtin(RayFamily::M213, 3).unwrap();
        let other = Fan::builtin(RayFamily::M213, 4).unwrap();
        let proof = check_complete(&other, None).unwrap();
        assert!(matches!(
            check_regular(&fan, &proof),
            Err(SubfanError::NotComplete)
        ));
        let rays = builtin_rays(RayFamily::M213, 3).unwrap();
        let mut cols: Vec<Vec<Rational>> = (0..9).map(|j| rays.column(j)).collect();
        cols.swap(3, 8);
        let broken = Fan::new(
            fan.complex().clone(),
            RationalMatrix::from_columns(3, &cols).unwrap(),
        )
        .unwrap();
        let proof = check_complete(&broken, None).unwrap();
        assert!(!proof.complete);
        assert!(matches!(
            check_regular(&broken, &proof),
            Err(SubfanError::NotComplete)
        ));
    }

    #[test]
    fn positive_scaling_keeps_verdicts() {
        for m in [3, 5] {
            let fan = Fan::builtin(RayFamily::M213, m).unwrap();
            let scaled_cols: Vec<Vec<Rational>> = (0..fan.complex().size())
                .map(|j| {
                    fan.ray(j)
                        .into_iter()
                        .map(|v| v * int((j % 4 + 1) as i64))
                        .collect()
                })
                .collect();
            let scaled = Fan::new(
                fan.complex().clone(),
                RationalMatrix::from_columns(fan.dimension(), &scaled_cols).unwrap(),
            )
            .unwrap();
            assert_eq!(regular_of(&fan).verdict, regular_of(&scaled).verdict);
        }
    }

    #[test]
    fn survey_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let spec = SurveySpec::new(w(2, "12"), 1, 5);
        let total = spec.jobs().unwrap().count();
        assert!(total > 10);
        let first = run_survey(&spec, dir.path(), Some(7)).unwrap();
        assert_eq!(first.new_rows, 7);
        assert!(!first.finished);
        let second = run_survey(&spec, dir.path(), None).unwrap();
        assert!(second.finished);
        assert_eq!(second.new_rows, total - 7);
        assert_eq!(second.tally.regular, total);
        let rows = read_survey(&second.csv).unwrap();
        assert_eq!(rows.len(), total);
        assert!(rows.iter().all(|r| r.complete && r.regular == Some(true)));
        let again = run_survey(&spec, dir.path(), None).unwrap();
        assert_eq!(again.new_rows, 0);
        assert_eq!(read_survey(&again.csv).unwrap().len(), total);
    }

    #[test]
    fn survey_rejects_foreign_cursor() {
        let dir = tempfile::tempdir().unwrap();
        let spec = SurveySpec::new(w(2, "12"), 1, 3);
        let (_, cursor) = survey_paths(dir.path(), &spec);
        fs::write(cursor, r#"{"key":"other","done":3}"#).unwrap();
        assert!(run_survey(&spec, dir.path(), None).is_err());
    }

    #[test]
    fn obstruction_letter_three_is_not_a_vertex() {
        let rows = obstruction_survey(&w(3, "123"), 5, 2).unwrap();
        assert_eq!(rows.len(), 11);
        assert!(!rows[5].spherical);
        assert!(
            rows.iter()
                .filter(|r| r.deleted.is_some())
                .filter(|r| r.spherical)
                .count()
                == 9
        );
    }
}

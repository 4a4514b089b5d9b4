//! Counting matrices, their restrictions and parametric versions, and
//! determinant sign reports.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use subfan_linalg::{frac, int, parse_rational, Rational, RationalMatrix};

use crate::a4_data;
use crate::complex::{Diagonal, PositionSet, SubwordComplex};
use crate::coxeter::{
    inversion_transpositions, is_coxeter_element, parabolic_data, reduced_words_from,
    sorted_word_w0, CoxeterGroup, Root, Word,
};
use crate::error::{Result, SubfanError};

/// Positive roots in the order of the inversions of `w0(c)`.
pub fn root_order(c: &Word) -> Result<Vec<Root>> {
    let w0 = sorted_word_w0(c)?;
    Ok(inversion_transpositions(&w0)
        .into_iter()
        .map(|(i, j)| Root::of_transposition(c.rank(), i, j))
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingMatrix {
    pub c: Word,
    /// Power of `c` when the word is `c^m`.
    pub m: Option<usize>,
    pub word: Word,
    pub roots: Vec<Root>,
    pub matrix: RationalMatrix,
}

impl CountingMatrix {
    pub fn rank(&self) -> usize {
        self.c.rank()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(&self.matrix).expect("matrix serializes");
        v["roots"] = self
            .roots
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .into();
        v["word"] = self.word.to_string().into();
        v
    }
}

/// `D_{c,m}`.
pub fn counting_matrix(n: usize, c: &Word, m: usize) -> Result<CountingMatrix> {
    if c.rank() != n {
        return Err(SubfanError::RankMismatch {
            expected: n,
            got: c.rank(),
        });
    }
    if m == 0 {
        return Err(SubfanError::InvalidParameters(
            "m must be at least 1".into(),
        ));
    }
    let mut d = counting_matrix_on_word(c, &c.power(m))?;
    d.m = Some(m);
    Ok(d)
}

/// Counting matrix on an arbitrary word `P`: entry `(alpha, j)` is the number
/// of position sets through `j` spelling a reduced word of `c_alpha`.
pub fn counting_matrix_on_word(c: &Word, p: &Word) -> Result<CountingMatrix> {
    if !is_coxeter_element(c) {
        return Err(SubfanError::NotCoxeterElement(c.to_string()));
    }
    if p.rank() != c.rank() {
        return Err(SubfanError::RankMismatch {
            expected: c.rank(),
            got: p.rank(),
        });
    }
    let roots = root_order(c)?;
    let group = CoxeterGroup::A(c.rank());
    let letters = p.letters();
    let mut rows = Vec::with_capacity(roots.len());
    for alpha in &roots {
        let (_, ca) = parabolic_data(alpha, c)?;
        let mut row = vec![0u64; letters.len()];
        for u in reduced_words_from(group, ca) {
            count_through(u.letters(), letters, &mut row);
        }
        rows.push(
            row.into_iter()
                .map(|x| Rational::from_integer(x.into()))
                .collect(),
        );
    }
    let matrix = RationalMatrix::from_rows(letters.len(), rows)?;
    Ok(CountingMatrix {
        c: c.clone(),
        m: None,
        word: p.clone(),
        roots,
        matrix,
    })
}

/// Adds, for every position `j`, the number of embeddings of `u` into `p` using `j`.
fn count_through(u: &[u8], p: &[u8], row: &mut [u64]) {
    let (l, r) = (u.len(), p.len());
    // pre[t][j]: embeddings of u[..t] into p[..j]
    let mut pre = vec![vec![0u64; r + 1]; l + 1];
    pre[0].iter_mut().for_each(|x| *x = 1);
    for t in 1..=l {
        for j in 1..=r {
            pre[t][j] = pre[t][j - 1]
                + if p[j - 1] == u[t - 1] {
                    pre[t - 1][j - 1]
                } else {
                    0
                };
        }
    }
    // suf[t][j]: embeddings of u[t..] into p[j..]
    let mut suf = vec![vec![0u64; r + 1]; l + 1];
    suf[l].iter_mut().for_each(|x| *x = 1);
    for t in (0..l).rev() {
        for j in (0..r).rev() {
            suf[t][j] = suf[t][j + 1] + if p[j] == u[t] { suf[t + 1][j + 1] } else { 0 };
        }
    }
    for j in 0..r {
        for t in 0..l {
            if p[j] == u[t] {
                row[j] += pre[t][j] * suf[t + 1][j + 1];
            }
        }
    }
}

fn binom2(x: &Rational) -> Rational {
    x * (x - Rational::one()) / int(2)
}

fn block_columns(rows: Vec<[Rational; 3]>) -> Vec<Vec<Rational>> {
    (0..3)
        .map(|k| rows.iter().map(|r| r[k].clone()).collect())
        .collect()
}

/// Closed forms for `A1`, `A2` with `c = 12`, and `A3` with `c = 213` or `c = 123`.
pub fn closed_form_counting(c: &Word, m: usize) -> Result<CountingMatrix> {
    if m == 0 {
        return Err(SubfanError::InvalidParameters(
            "m must be at least 1".into(),
        ));
    }
    let mi = m as i64;
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    match (c.rank(), c.letters()) {
        (1, [1]) => columns = vec![vec![int(1)]; m],
        (2, [1, 2]) => {
            for j in 1..=mi {
                columns.push(vec![int(1), int(mi - j + 1), int(0)]);
                columns.push(vec![int(0), int(j), int(1)]);
            }
        }
        (3, [2, 1, 3]) | (3, [1, 2, 3]) => {
            let params = ParamSet::identity(m);
            return Ok(CountingMatrix {
                c: c.clone(),
                m: Some(m),
                word: c.power(m),
                roots: root_order(c)?,
                matrix: param_counting(c, &params)?,
            });
        }
        _ => {
            return Err(SubfanError::Unsupported(format!(
                "no closed form for c = {c}"
            )))
        }
    }
    Ok(CountingMatrix {
        c: c.clone(),
        m: Some(m),
        word: c.power(m),
        roots: root_order(c)?,
        matrix: RationalMatrix::from_columns(c.rank() * (c.rank() + 1) / 2, &columns)?,
    })
}

/// Strictly increasing, letter-preserving map from positions of `source` into `c^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: Word,
    pub c: Word,
    pub m: usize,
    /// 0-based positions in `c^m`.
    pub positions: Vec<usize>,
}

impl Embedding {
    pub fn new(source: Word, c: Word, m: usize, positions: Vec<usize>) -> Result<Self> {
        let target = c.power(m);
        if positions.len() != source.len() {
            return Err(SubfanError::InvalidEmbedding(format!(
                "{} positions for a word of length {}",
                positions.len(),
                source.len()
            )));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SubfanError::InvalidEmbedding(
                "positions must increase".into(),
            ));
        }
        for (i, &p) in positions.iter().enumerate() {
            if p >= target.len() || target.letters()[p] != source.letters()[i] {
                return Err(SubfanError::InvalidEmbedding(format!(
                    "letter {} cannot sit at position {}",
                    i + 1,
                    p + 1
                )));
            }
        }
        Ok(Self {
            source,
            c,
            m,
            positions,
        })
    }

    pub fn target(&self) -> Word {
        self.c.power(self.m)
    }

    pub fn image(&self) -> PositionSet {
        PositionSet::from_positions(&self.positions).expect("positions below 64")
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p + 1).collect()
    }
}

/// `D_phi`: the columns of `D` at the image of the embedding.
pub fn restricted_matrix(d: &CountingMatrix, phi: &Embedding) -> Result<RationalMatrix> {
    if d.c != phi.c || d.word != phi.target() {
        return Err(SubfanError::InvalidEmbedding(format!(
            "embedding targets {}, matrix is on {}",
            phi.target(),
            d.word
        )));
    }
    Ok(d.matrix.select_columns(&phi.positions)?)
}

/// Lazy enumeration of all embeddings of `q` into `c^m`, in lexicographic order.
pub fn enumerate_embeddings(q: &Word, c: &Word, m: usize) -> Embeddings {
    Embeddings {
        q: q.clone(),
        c: c.clone(),
        m,
        target: c.power(m).letters().to_vec(),
        current: None,
        done: false,
    }
}

pub struct Embeddings {
    q: Word,
    c: Word,
    m: usize,
    target: Vec<u8>,
    current: Option<Vec<usize>>,
    done: bool,
}

impl Embeddings {
    /// Leftmost placement of `q[from..]` strictly after position `after`.
    fn complete(&self, pos: &mut Vec<usize>, from: usize) -> bool {
        let mut next = pos.last().map_or(0, |p| p + 1);
        for &s in &self.q.letters()[from..] {
            match (next..self.target.len()).find(|&j| self.target[j] == s) {
                Some(j) => {
                    pos.push(j);
                    next = j + 1;
                }
                None => return false,
            }
        }
        true
    }
}

impl Iterator for Embeddings {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let found = match self.current.take() {
            None => {
                let mut pos = Vec::new();
                self.complete(&mut pos, 0).then_some(pos)
            }
            Some(prev) => {
                let mut found = None;
                for idx in (0..prev.len()).rev() {
                    let s = self.q.letters()[idx];
                    let start = prev[idx] + 1;
                    if let Some(j) = (start..self.target.len()).find(|&j| self.target[j] == s) {
                        let mut pos = prev[..idx].to_vec();
                        pos.push(j);
                        if self.complete(&mut pos, idx + 1) {
                            found = Some(pos);
                            break;
                        }
                    }
                }
                found
            }
        };
        match found {
            Some(pos) => {
                self.current = Some(pos.clone());
                Some(Embedding {
                    source: self.q.clone(),
                    c: self.c.clone(),
                    m: self.m,
                    positions: pos,
                })
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

/// Parameters `a_i, b_i, c_i` for `i = 1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

impl ParamSet {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>, c: Vec<Rational>) -> Result<Self> {
        if a.len() != b.len() || a.len() != c.len() || a.is_empty() {
            return Err(SubfanError::InvalidParameters(
                "a, b and c need the same positive length".into(),
            ));
        }
        Ok(Self { a, b, c })
    }

    /// `a_i = b_i = c_i = i`.
    pub fn identity(m: usize) -> Self {
        let v: Vec<Rational> = (1..=m as i64).map(int).collect();
        Self {
            a: v.clone(),
            b: v.clone(),
            c: v,
        }
    }

    /// From `(a_i, b_i, c_i)` triples listed for `i = 1..=m`.
    pub fn from_triples(triples: &[(Rational, Rational, Rational)]) -> Result<Self> {
        Self::new(
            triples.iter().map(|t| t.0.clone()).collect(),
            triples.iter().map(|t| t.1.clone()).collect(),
            triples.iter().map(|t| t.2.clone()).collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    /// `{"a": ["p/q", ...], "b": [...], "c": [...]}`, entry `k` being index `k + 1`.
    pub fn to_json(&self) -> serde_json::Value {
        let f = subfan_linalg::io::rationals_to_strings;
        serde_json::json!({ "a": f(&self.a), "b": f(&self.b), "c": f(&self.c) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let get = |key: &str| -> Result<Vec<Rational>> {
            let list: Vec<String> = serde_json::from_value(v[key].clone())
                .map_err(|e| SubfanError::Format(format!("parameter list {key}: {e}")))?;
            Ok(subfan_linalg::io::strings_to_rationals(&list)?)
        };
        Self::new(get("a")?, get("b")?, get("c")?)
    }

    fn get(&self, i: usize) -> (&Rational, &Rational, &Rational) {
        (&self.a[i - 1], &self.b[i - 1], &self.c[i - 1])
    }

    /// `i + noise` with noise in `(-9/20, 9/20)`, redrawn until the inequalities hold.
    pub fn random_valid(c: &Word, m: usize, rng: &mut impl Rng) -> Result<Self> {
        loop {
            let mut draw = || -> Vec<Rational> {
                (1..=m as i64)
                    .map(|i| int(i) + frac(rng.gen_range(-9..=9), 20))
                    .collect()
            };
            let (a, b, cc) = (draw(), draw(), draw());
            let p = Self { a, b, c: cc };
            if check_signature_inequalities(c, &p)?.holds {
                return Ok(p);
            }
        }
    }
}

fn param_c_kind(c: &Word) -> Result<bool> {
    match (c.rank(), c.letters()) {
        (3, [2, 1, 3]) => Ok(true),
        (3, [1, 2, 3]) => Ok(false),
        _ => Err(SubfanError::Unsupported(format!(
            "parametric counting matrices exist for c = 123 and c = 213, not {c}"
        ))),
    }
}

/// The `a`-counting matrix: blocks for `i = m, ..., 1`, left to right.
pub fn param_counting(c: &Word, params: &ParamSet) -> Result<RationalMatrix> {
    let bipartite = param_c_kind(c)?;
    let m = params.m();
    let mr = int(m as i64);
    let one = Rational::one;
    let zero = Rational::zero;
    let mut columns = Vec::with_capacity(3 * m);
    for i in (1..=m).rev() {
        let (a, b, cc) = params.get(i);
        let rows = if bipartite {
            let top = binom2(&(&mr + one()));
            vec![
                [one(), zero(), zero()],
                [a.clone(), &mr - b + one(), zero()],
                [a.clone(), zero(), &mr - cc + one()],
                [a * a, &top - binom2(b), &top - binom2(cc)],
                [zero(), zero(), one()],
                [zero(), one(), zero()],
            ]
        } else {
            vec![
                [one(), zero(), zero()],
                [a.clone(), &mr - b + one(), zero()],
                [
                    binom2(&(a + one())),
                    (&mr - b + one()) * b,
                    binom2(&(&mr - cc + int(2))),
                ],
                [zero(), one(), zero()],
                [zero(), b.clone(), &mr - cc + one()],
                [zero(), zero(), one()],
            ]
        };
        columns.extend(block_columns(rows));
    }
    Ok(RationalMatrix::from_columns(6, &columns)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub holds: bool,
    pub violated: Vec<String>,
}

/// Strict linear inequalities on the parameters: monotone chains and the two
/// pairwise families, over pairs `i < j`.
pub fn check_signature_inequalities(c: &Word, params: &ParamSet) -> Result<InequalityReport> {
    let bipartite = param_c_kind(c)?;
    let m = params.m();
    let mut violated = Vec::new();
    let mut need = |ok: bool, what: String| {
        if !ok {
            violated.push(what);
        }
    };
    for i in 2..=m {
        for (name, v) in [("a", &params.a), ("b", &params.b), ("c", &params.c)] {
            need(v[i - 1] > v[i - 2], format!("{name}{i} > {name}{}", i - 1));
        }
    }
    let two = int(2);
    for i in 1..=m {
        for j in i + 1..=m {
            let (ai, bi, ci) = params.get(i);
            let (aj, bj, cj) = params.get(j);
            if bipartite {
                let lhs = &two * ai - bi - ci + &two * aj - bj - cj + &two;
                need(
                    lhs.is_positive(),
                    format!("2a{i}-b{i}-c{i}+2a{j}-b{j}-c{j}+2 > 0"),
                );
                if i >= 2 {
                    let (ap, _, _) = params.get(i - 1);
                    let (aq, _, _) = params.get(j - 1);
                    let lhs = bi + ci - &two * ap + bj + cj - &two * aq - &two;
                    need(
                        lhs.is_positive(),
                        format!("b{i}+c{i}-2a{}+b{j}+c{j}-2a{}-2 > 0", i - 1, j - 1),
                    );
                }
            } else {
                if i >= 2 {
                    let (ap, _, _) = params.get(i - 1);
                    let (aq, _, _) = params.get(j - 1);
                    let lhs = &two * bi - ci - ap + &two * bj - cj - aq;
                    need(
                        lhs.is_positive(),
                        format!("2b{i}-c{i}-a{}+2b{j}-c{j}-a{} > 0", i - 1, j - 1),
                    );
                }
                if j < m {
                    let (_, _, cn) = params.get(i + 1);
                    let (_, _, co) = params.get(j + 1);
                    let lhs = cn + ai - &two * bi + co + aj - &two * bj;
                    need(
                        lhs.is_positive(),
                        format!("c{}+a{i}-2b{i}+c{}+a{j}-2b{j} > 0", i + 1, j + 1),
                    );
                }
            }
        }
    }
    Ok(InequalityReport {
        holds: violated.is_empty(),
        violated,
    })
}

/// A reduced subword whose determinant has the wrong sign or vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offender {
    /// 1-based positions.
    pub positions: Vec<usize>,
    pub word: String,
    pub sign: i8,
    pub det: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub good: usize,
    pub bad: usize,
    pub zero: usize,
    pub total: usize,
    pub offenders: Vec<Offender>,
}

impl SignatureReport {
    pub fn is_signature(&self) -> bool {
        self.total > 0 && self.bad == 0 && self.zero == 0
    }

    fn merge(mut self, other: Self) -> Self {
        self.good += other.good;
        self.bad += other.bad;
        self.zero += other.zero;
        self.total += other.total;
        self.offenders.extend(other.offenders);
        self
    }

    pub const CSV_HEADER: &'static str = "good,bad,zero,total";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.good, self.bad, self.zero, self.total)
    }
}

/// Tallies `sign(w) * det(D restricted to w)` over reduced expressions `w` of `w0` in `q`.
pub fn signature_report(d: &RationalMatrix, q: &Word) -> Result<SignatureReport> {
    let complex = SubwordComplex::type_a(q.clone())?;
    signature_report_on(d, &complex, 1)
}

/// `+1` or `-1` so that the first reduced subword with a nonzero minor counts as good.
pub fn orientation(d: &RationalMatrix, complex: &SubwordComplex) -> Result<i8> {
    let group = complex.group();
    for s in complex.reduced_subwords() {
        let pos = s.positions();
        let det = d.select_columns(&pos)?.determinant()?;
        if !det.is_zero() {
            let sign = group.sign(&complex.word().subword(&pos))?;
            return Ok(if det.is_positive() == (sign > 0) {
                1
            } else {
                -1
            });
        }
    }
    Ok(1)
}

/// [`signature_report`] up to a global sign, with the orientation used.
pub fn oriented_signature_report(d: &RationalMatrix, q: &Word) -> Result<(SignatureReport, i8)> {
    let complex = SubwordComplex::type_a(q.clone())?;
    let o = orientation(d, &complex)?;
    Ok((signature_report_on(d, &complex, o)?, o))
}

/// As [`signature_report`] on a prebuilt complex; `orientation` multiplies every sign.
pub fn signature_report_on(
    d: &RationalMatrix,
    complex: &SubwordComplex,
    orientation: i8,
) -> Result<SignatureReport> {
    let group = complex.group();
    let n = group.longest_length();
    if d.rows() != n || d.cols() != complex.size() {
        return Err(SubfanError::Linalg(subfan_linalg::LinalgError::Shape(
            format!(
                "expected {}x{}, got {}x{}",
                n,
                complex.size(),
                d.rows(),
                d.cols()
            ),
        )));
    }
    let word = complex.word();
    let subwords: Vec<PositionSet> = complex.reduced_subwords().collect();
    let report = subwords
        .par_iter()
        .map(|&s| -> Result<SignatureReport> {
            let pos = s.positions();
            let sub = word.subword(&pos);
            let sign = group.sign(&sub)? * orientation;
            let det = d.select_columns(&pos)?.determinant()?;
            let value = if sign > 0 { det.clone() } else { -det.clone() };
            let mut r = SignatureReport {
                total: 1,
                ..Default::default()
            };
            if value.is_positive() {
                r.good = 1;
            } else {
                if value.is_zero() {
                    r.zero = 1;
                } else {
                    r.bad = 1;
                }
                r.offenders.push(Offender {
                    positions: s.one_based(),
                    word: sub.to_string(),
                    sign,
                    det: det.to_string(),
                });
            }
            Ok(r)
        })
        .try_reduce(SignatureReport::default, |a, b| Ok(a.merge(b)))?;
    let mut report = report;
    report
        .offenders
        .sort_by(|a, b| a.positions.cmp(&b.positions));
    Ok(report)
}

/// Row of the sign table for `c = 2413`, `Q = c^k w0(c)` in `A4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct A4SignRow {
    pub k: usize,
    pub report: SignatureReport,
}

impl A4SignRow {
    pub const CSV_HEADER: &'static str = "k,good,bad,zero,total";

    pub fn csv_row(&self) -> String {
        format!("{},{}", self.k, self.report.csv_row())
    }
}

pub fn a4_sign_row(k: usize) -> Result<A4SignRow> {
    let c = Word::new(4, vec![2, 4, 1, 3])?;
    let q = c.power(k).concat(&sorted_word_w0(&c)?)?;
    let d = counting_matrix_on_word(&c, &q)?;
    Ok(A4SignRow {
        k,
        report: signature_report(&d.matrix, &q)?,
    })
}

/// Modified signature matrices and ray matrices of the two `A4` fans.
#[derive(Clone, Debug)]
pub struct A4Matrices {
    /// 10 x 18.
    pub sig_9_2: RationalMatrix,
    /// 10 x 22.
    pub sig_11_3: RationalMatrix,
    /// 18 x 8, one ray per row.
    pub rays_9_2: RationalMatrix,
    /// 22 x 12, one ray per row.
    pub rays_11_3: RationalMatrix,
    pub labels_9_2: Vec<Diagonal>,
    pub labels_11_3: Vec<Diagonal>,
}

fn table<const C: usize, const R: usize>(t: &[[&str; C]; R]) -> RationalMatrix {
    let rows = t
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s).expect("constant"))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(C, rows).expect("constant shape")
}

fn diagonals(labels: &[&str]) -> Vec<Diagonal> {
    labels
        .iter()
        .map(|s| {
            let (p, q) = s.split_once(',').expect("p,q");
            Diagonal(p.parse().expect("vertex"), q.parse().expect("vertex"))
        })
        .collect()
}

pub fn a4_builtin_matrices() -> A4Matrices {
    A4Matrices {
        sig_9_2: table(&a4_data::SIG_9_2),
        sig_11_3: table(&a4_data::SIG_11_3),
        rays_9_2: table(&a4_data::RAYS_9_2),
        rays_11_3: table(&a4_data::RAYS_11_3),
        labels_9_2: diagonals(&a4_data::LABELS_9_2),
        labels_11_3: diagonals(&a4_data::LABELS_11_3),
    }
}

/// The sixteen reduced expressions of `w0` in `A3` with closed-form determinants.
pub const TABLE_WORDS: [&str; 16] = [
    "123121", "121321", "231231", "231213", "213231", "213213", "123212", "212321", "321323",
    "323123", "132132", "132312", "312132", "312312", "232123", "321232",
];

/// How copies of `c` are numbered in a parameter tuple.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CopyOrder {
    /// Copy 1 is the last copy of `c` in `c^m`.
    #[default]
    RightToLeft,
    LeftToRight,
}

/// Closed-form determinant for one of [`TABLE_WORDS`]; `t` are copy indices counted from the right.
pub fn table_formula(c: &Word, word: &str, t: &[Rational; 6]) -> Result<Rational> {
    let bipartite = param_c_kind(c)?;
    let [a, b, cc, d, e, f] = t;
    let h = frac(1, 2);
    let two = int(2);
    let shift = if bipartite { int(2) } else { int(0) };
    let p1 = &two * (a + d) - b - cc - e - f + &shift;
    let p2 = a + b + d + e - &two * (cc + f) - &shift;
    let v = match word {
        "123121" | "321323" => &h * (a - d) * (a - f) * (b - e) * (d - f),
        "121321" | "323123" => -&h * (a - cc) * (a - f) * (b - e) * (cc - f),
        "231231" => &h * (a - d) * (b - e) * (cc - f) * &p1,
        "231213" => -&h * (a - d) * (b - f) * (cc - e) * &p1,
        "213231" => -&h * (a - d) * (cc - e) * (b - f) * &p1,
        "213213" => &h * (a - d) * (cc - f) * (b - e) * &p1,
        "123212" | "321232" => (a - e) * (b - d) * (b - f) * (d - f),
        "212321" | "232123" => -((a - cc) * (a - e) * (b - f) * (cc - e)),
        "132132" | "312312" => -&h * (a - d) * (b - e) * (cc - f) * &p2,
        "132312" | "312132" => &h * (a - e) * (b - d) * (cc - f) * &p2,
        _ => {
            return Err(SubfanError::InvalidWord(format!(
                "{word} is not one of the tabulated expressions"
            )))
        }
    };
    Ok(v)
}

/// Whether consecutive letters `x, y` of the expression must sit in different copies.
fn strict_step(c: &Word, x: u8, y: u8) -> bool {
    let pos = |s| {
        c.letters()
            .iter()
            .position(|&l| l == s)
            .expect("letter of c")
    };
    pos(y) <= pos(x)
}

/// Whether `t` (copy indices counted from the right) places the expression in order.
pub fn is_valid_tuple(c: &Word, word: &str, t: &[i64; 6]) -> Result<bool> {
    let w = Word::parse(3, word)?;
    let l = w.letters();
    Ok(t.iter().all(|&x| x >= 1)
        && (0..5).all(|k| {
            if strict_step(c, l[k], l[k + 1]) {
                t[k] > t[k + 1]
            } else {
                t[k] >= t[k + 1]
            }
        }))
}

/// Random valid tuple with entries in `1..=m`.
pub fn random_valid_tuple(c: &Word, word: &str, m: i64, rng: &mut impl Rng) -> Result<[i64; 6]> {
    is_valid_tuple(c, word, &[1; 6])?;
    loop {
        let mut t = [0i64; 6];
        t.iter_mut().for_each(|x| *x = rng.gen_range(1..=m));
        t.sort_unstable_by(|a, b| b.cmp(a));
        if is_valid_tuple(c, word, &t)? {
            return Ok(t);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub det: String,
    pub formula: String,
    pub matches: bool,
}

/// Determinant of the counting-matrix columns at the parameterized copies, against the closed form.
pub fn table3_formula_check(
    c: &Word,
    word: &str,
    params: &[i64; 6],
    order: CopyOrder,
) -> Result<TableCheck> {
    param_c_kind(c)?;
    let m = *params.iter().max().expect("six entries");
    let t: [i64; 6] = match order {
        CopyOrder::RightToLeft => *params,
        CopyOrder::LeftToRight => params.map(|x| m + 1 - x),
    };
    if !is_valid_tuple(c, word, &t)? {
        return Err(SubfanError::InvalidParameters(format!(
            "{params:?} does not place {word} in order"
        )));
    }
    let w = Word::parse(3, word)?;
    let d = closed_form_counting(c, m as usize)?;
    let pos: Vec<usize> = w
        .letters()
        .iter()
        .zip(t)
        .map(|(&x, copy)| {
            (m - copy) as usize * 3 + c.letters().iter().position(|&l| l == x).expect("letter")
        })
        .collect();
    let det = d.matrix.select_columns(&pos)?.determinant()?;
    let formula = table_formula(c, word, &t.map(int))?;
    Ok(TableCheck {
        matches: det == formula,
        det: det.to_string(),
        formula: formula.to_string(),
    })
}

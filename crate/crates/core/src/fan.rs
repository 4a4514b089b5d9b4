//! Simplicial fans on subword complexes: ray matrices, wall relations and
//! completeness checks.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use subfan_linalg::{
    frac, int, lp_solve, LinearProgram, LpStatus, Rational, RationalMatrix, Sense,
};

use crate::complex::{group_name, Facet, PositionSet, SubwordComplex};
use crate::counting::{a4_builtin_matrices, orientation, signature_report_on, SignatureReport};
use crate::coxeter::{sorted_word_w0, CoxeterGroup, Word};
use crate::error::{Result, SubfanError};

/// Explicit ray matrices for `Q = c^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RayFamily {
    /// `A3`, `c = 213`.
    M213,
    /// `A3`, `c = 123`.
    M123,
    /// `B2`, `c = 12`.
    M12,
    /// `A2`, `c = 12`.
    A2,
    /// `A1`, `c = 1`.
    A1,
}

impl RayFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m213" | "213" => Ok(Self::M213),
            "m123" | "123" => Ok(Self::M123),
            "m12" | "b2" => Ok(Self::M12),
            "a2" => Ok(Self::A2),
            "a1" => Ok(Self::A1),
            _ => Err(SubfanError::Unsupported(format!("unknown ray family {s}"))),
        }
    }

    pub fn group(self) -> CoxeterGroup {
        match self {
            Self::M213 | Self::M123 => CoxeterGroup::A(3),
            Self::M12 => CoxeterGroup::B2,
            Self::A2 => CoxeterGroup::A(2),
            Self::A1 => CoxeterGroup::A(1),
        }
    }

    pub fn coxeter_element(self) -> Word {
        let (rank, letters) = match self {
            Self::M213 => (3, vec![2, 1, 3]),
            Self::M123 => (3, vec![1, 2, 3]),
            Self::M12 | Self::A2 => (2, vec![1, 2]),
            Self::A1 => (1, vec![1]),
        };
        Word::new(rank, letters).expect("valid element")
    }

    pub fn min_power(self) -> usize {
        match self {
            Self::M213 | Self::M123 | Self::M12 => 3,
            Self::A2 | Self::A1 => 2,
        }
    }
}

fn s(i: i64) -> Rational {
    int(i * i)
}

fn t(i: i64) -> Rational {
    int(i * (i + 1) / 2)
}

fn block_213(i: i64) -> Vec<Vec<Rational>> {
    let one = Rational::one;
    vec![
        vec![s(i + 1), -t(i), -t(i)],
        vec![int(2) * t(i), -t(i - 1) + one(), -t(i)],
        vec![int(2) * t(i), -t(i), -t(i - 1) + one()],
        vec![-s(i + 1) + one(), t(i), t(i)],
        vec![-int(2) * t(i), t(i - 1), t(i)],
        vec![-int(2) * t(i), t(i), t(i - 1)],
    ]
}

fn block_123(i: i64) -> Vec<Vec<Rational>> {
    let one = Rational::one;
    let third: Vec<Rational> = if i == 1 {
        [0, 1, 1, 1, -1, -1].into_iter().map(int).collect()
    } else {
        vec![
            t(i),
            t(i - 1),
            t(i - 1),
            -t(i) + one(),
            -t(i - 1),
            -t(i - 1),
        ]
    };
    let first = [t(i), t(i + 1), t(i), -t(i), -t(i + 1) + one(), -t(i)];
    let second = [
        -int(2) * t(i),
        -int(2) * t(i),
        -s(i) + one(),
        int(2) * t(i),
        int(2) * t(i),
        s(i),
    ];
    (0..6)
        .map(|r| vec![first[r].clone(), second[r].clone(), third[r].clone()])
        .collect()
}

fn block_12(i: i64) -> Vec<Vec<Rational>> {
    let one = Rational::one;
    vec![
        vec![s(i + 1), -t(i)],
        vec![int(4) * t(i), -s(i) + one()],
        vec![-s(i + 1) + one(), t(i)],
        vec![-int(4) * t(i), s(i)],
    ]
}

/// `[-I; B_{m-2} | ... | B_1]` as rows, one row per position.
fn staircase(
    m: usize,
    width: usize,
    block: impl Fn(i64) -> Vec<Vec<Rational>>,
) -> Vec<Vec<Rational>> {
    let d = width * (m - 2);
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| {
            let mut r = vec![Rational::zero(); d];
            r[k] = -Rational::one();
            r
        })
        .collect();
    let blocks: Vec<Vec<Vec<Rational>>> = (1..=(m - 2) as i64).rev().map(&block).collect();
    let height = blocks[0].len();
    for r in 0..height {
        rows.push(blocks.iter().flat_map(|b| b[r].iter().cloned()).collect());
    }
    rows
}

/// Ray matrix with one ray per column, for `Q = c^m`.
pub fn builtin_rays(family: RayFamily, m: usize) -> Result<RationalMatrix> {
    if m < family.min_power() {
        return Err(SubfanError::InvalidParameters(format!(
            "{family:?} needs m >= {}",
            family.min_power()
        )));
    }
    let rows = match family {
        RayFamily::M213 => staircase(m, 3, block_213),
        RayFamily::M12 => staircase(m, 2, block_12),
        RayFamily::M123 => {
            let d = 3 * m - 6;
            let mut rows: Vec<Vec<Rational>> = (0..d - 1)
                .map(|k| {
                    let mut r = vec![Rational::zero(); d];
                    r[k] = -Rational::one();
                    r
                })
                .collect();
            let blocks: Vec<Vec<Vec<Rational>>> =
                (1..=(m - 2) as i64).rev().map(block_123).collect();
            for r in 0..6 {
                rows.push(blocks.iter().flat_map(|b| b[r].iter().cloned()).collect());
            }
            let mut last = vec![Rational::zero(); d];
            last[d - 1] = -Rational::one();
            rows.push(last);
            rows
        }
        RayFamily::A2 => {
            let d = 2 * m - 3;
            let mi = m as i64;
            let mut extra: Vec<Vec<Rational>> = Vec::new();
            for i in 1..=mi - 2 {
                extra.push(vec![int(-mi + i), int(1), int(mi - i)]);
                extra.push(vec![int(mi - i), int(0), int(-mi + i + 1)]);
            }
            extra.push(vec![int(-1), int(1), int(1)]);
            let m_rows: Vec<Vec<Rational>> = (0..d)
                .map(|k| {
                    let mut r = vec![Rational::zero(); d];
                    r[k] = -Rational::one();
                    r.extend(extra[k].iter().cloned());
                    r
                })
                .collect();
            return Ok(RationalMatrix::from_rows(2 * m, m_rows)?);
        }
        RayFamily::A1 => {
            let m_rows: Vec<Vec<Rational>> = (0..m - 1)
                .map(|k| {
                    let mut r = vec![Rational::zero(); m];
                    r[k] = -Rational::one();
                    r[m - 1] = Rational::one();
                    r
                })
                .collect();
            return Ok(RationalMatrix::from_rows(m, m_rows)?);
        }
    };
    let cols = rows[0].len();
    Ok(RationalMatrix::from_rows(cols, rows)?.transpose())
}

/// `M_{12,m}` obtained from the `A3` blocks: merge rows 2 and 3, merge rows 5
/// and 6, drop the last column.
pub fn fold_to_b2(m: usize) -> Result<RationalMatrix> {
    if m < 3 {
        return Err(SubfanError::InvalidParameters(
            "folding needs m >= 3".into(),
        ));
    }
    let folded = |i: i64| -> Vec<Vec<Rational>> {
        let b = block_213(i);
        let add = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
            x.iter().zip(y).map(|(a, b)| a + b).collect()
        };
        let rows = [
            b[0].clone(),
            add(&b[1], &b[2]),
            b[3].clone(),
            add(&b[4], &b[5]),
        ];
        debug_assert!(rows.iter().all(|r| r[1] == r[2]));
        rows.iter().map(|r| r[..2].to_vec()).collect()
    };
    let rows = staircase(m, 2, folded);
    let cols = rows[0].len();
    Ok(RationalMatrix::from_rows(cols, rows)?.transpose())
}

/// Fan on a subword complex; column `j` of `rays` is the ray of position `j`.
#[derive(Debug)]
pub struct Fan {
    complex: SubwordComplex,
    rays: RationalMatrix,
    inverses: OnceLock<Vec<Option<RationalMatrix>>>,
}

impl Clone for Fan {
    fn clone(&self) -> Self {
        Self {
            complex: self.complex.clone(),
            rays: self.rays.clone(),
            inverses: OnceLock::new(),
        }
    }
}

impl Fan {
    pub fn new(complex: SubwordComplex, rays: RationalMatrix) -> Result<Self> {
        let (r, d) = (complex.size(), complex.facet_size());
        if rays.shape() != (d, r) {
            return Err(SubfanError::Linalg(subfan_linalg::LinalgError::Shape(
                format!(
                    "ray matrix must be {d}x{r}, got {}x{}",
                    rays.rows(),
                    rays.cols()
                ),
            )));
        }
        Ok(Self {
            complex,
            rays,
            inverses: OnceLock::new(),
        })
    }

    pub fn builtin(family: RayFamily, m: usize) -> Result<Self> {
        let rays = builtin_rays(family, m)?;
        let complex = SubwordComplex::new(family.group(), family.coxeter_element().power(m))?;
        Self::new(complex, rays)
    }

    pub fn complex(&self) -> &SubwordComplex {
        &self.complex
    }

    pub fn rays(&self) -> &RationalMatrix {
        &self.rays
    }

    pub fn dimension(&self) -> usize {
        self.rays.rows()
    }

    pub fn ray(&self, j: usize) -> Vec<Rational> {
        self.rays.column(j)
    }

    fn facet_matrix(&self, f: Facet) -> RationalMatrix {
        self.rays
            .select_columns(&f.positions())
            .expect("positions in range")
    }

    /// Inverse of each facet's ray submatrix, `None` when singular.
    pub fn inverses(&self) -> &[Option<RationalMatrix>] {
        self.inverses.get_or_init(|| {
            self.complex
                .facets()
                .par_iter()
                .map(|&f| self.facet_matrix(f).inverse().ok())
                .collect()
        })
    }

    /// Indices of facets whose rays are not a basis.
    pub fn basis_failures(&self) -> Vec<usize> {
        self.inverses()
            .iter()
            .enumerate()
            .filter(|(_, inv)| inv.is_none())
            .map(|(k, _)| k)
            .collect()
    }

    /// The facet whose rays are `-e_1, ..., -e_d`, else the first facet.
    pub fn reference_facet(&self) -> usize {
        let d = self.dimension();
        let mut chosen = Vec::with_capacity(d);
        for k in 0..d {
            let hit = (0..self.rays.cols()).find(|&j| {
                (0..d).all(|row| {
                    let v = &self.rays[(row, j)];
                    if row == k {
                        *v == -Rational::one()
                    } else {
                        v.is_zero()
                    }
                })
            });
            match hit {
                Some(j) => chosen.push(j),
                None => return 0,
            }
        }
        PositionSet::from_positions(&chosen)
            .ok()
            .and_then(|f| self.complex.facet_index(f))
            .unwrap_or(0)
    }

    pub(crate) fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.complex.word().hash(&mut h);
        self.rays.shape().hash(&mut h);
        for e in self.rays.entries() {
            e.hash(&mut h);
        }
        h.finish()
    }

    /// `{"rays": [[...] per ray], "facets": [[1-based positions]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rays: Vec<Vec<String>> = (0..self.rays.cols())
            .map(|j| subfan_linalg::io::rationals_to_strings(&self.rays.column(j)))
            .collect();
        let facets: Vec<Vec<usize>> = self
            .complex
            .facets()
            .iter()
            .map(|f| f.one_based())
            .collect();
        serde_json::json!({
            "group": group_name(self.complex.group()),
            "word": self.complex.word().to_string(),
            "rays": rays,
            "facets": facets,
        })
    }

    /// Reads the format of [`Fan::to_json`]; facets are recomputed from the word and checked.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| SubfanError::Format(format!("missing field {k}")))
        };
        let group = parse_group(field("group")?.as_str().unwrap_or(""))?;
        let word = Word::parse(group.rank(), field("word")?.as_str().unwrap_or(""))?;
        let rays: Vec<Vec<String>> = serde_json::from_value(field("rays")?.clone())
            .map_err(|e| SubfanError::Format(e.to_string()))?;
        let columns: Vec<Vec<Rational>> = rays
            .iter()
            .map(|r| subfan_linalg::io::strings_to_rationals(r))
            .collect::<std::result::Result<_, _>>()?;
        let d = columns.first().map_or(0, Vec::len);
        let complex = SubwordComplex::new(group, word)?;
        let fan = Self::new(complex, RationalMatrix::from_columns(d, &columns)?)?;
        if let Some(facets) = v.get("facets") {
            let listed: Vec<Vec<usize>> = serde_json::from_value(facets.clone())
                .map_err(|e| SubfanError::Format(e.to_string()))?;
            let ours: Vec<Vec<usize>> =
                fan.complex.facets().iter().map(|f| f.one_based()).collect();
            if listed != ours {
                return Err(SubfanError::Format(
                    "facet list does not match the word".into(),
                ));
            }
        }
        Ok(fan)
    }
}

pub(crate) fn parse_group(s: &str) -> Result<CoxeterGroup> {
    if s.eq_ignore_ascii_case("b2") {
        return Ok(CoxeterGroup::B2);
    }
    s.strip_prefix(['A', 'a'])
        .and_then(|n| n.parse().ok())
        .filter(|&n| n >= 1)
        .map(CoxeterGroup::A)
        .ok_or_else(|| SubfanError::Format(format!("unknown group {s}")))
}

/// The two `A4` fans with `c = 2413`, `Q = c^k w0(c)`, `k = 2` or `3`, with their signature matrices.
pub fn a4_fan(k: usize) -> Result<(Fan, RationalMatrix)> {
    let a = a4_builtin_matrices();
    let (rays, sig) = match k {
        2 => (a.rays_9_2, a.sig_9_2),
        3 => (a.rays_11_3, a.sig_11_3),
        _ => {
            return Err(SubfanError::Unsupported(format!(
                "no explicit A4 fan for k = {k}"
            )))
        }
    };
    let c = Word::new(4, vec![2, 4, 1, 3])?;
    let q = c.power(k).concat(&sorted_word_w0(&c)?)?;
    Ok((Fan::new(SubwordComplex::type_a(q)?, rays.transpose())?, sig))
}

/// Linear dependence across the wall between adjacent facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// Facet indices `(I, J)`.
    pub facets: (usize, usize),
    /// Leaving position `i` of `I` and entering position `j` of `J`.
    pub i: usize,
    pub j: usize,
    /// `(position, c_r)` over `I u J`, sorted, with `c_i = 1`.
    pub coeffs: Vec<(usize, Rational)>,
}

impl Wall {
    pub fn coefficient(&self, p: usize) -> Rational {
        self.coeffs
            .iter()
            .find(|(q, _)| *q == p)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// `(F)`: the two facets lie on opposite sides.
    pub fn separates(&self) -> bool {
        self.coefficient(self.j).is_positive()
    }

    /// Dense coefficient vector over all `r` positions.
    pub fn dense(&self, r: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); r];
        for (p, c) in &self.coeffs {
            v[*p] = c.clone();
        }
        v
    }
}

/// One wall per flip, from the facet with the smaller index.
pub fn wall_relations(fan: &Fan) -> Result<Vec<Wall>> {
    let failures = fan.basis_failures();
    if let Some(&k) = failures.first() {
        return Err(SubfanError::NotABasis(fan.complex.facets()[k].one_based()));
    }
    let inverses = fan.inverses();
    let facets = fan.complex.facets();
    let walls = fan
        .complex
        .flips()
        .into_par_iter()
        .map(|(a, i, b, j)| {
            let inv = inverses[a].as_ref().expect("basis checked");
            let x = inv.mul_vec(&fan.ray(j)).expect("shapes agree");
            let pos = facets[a].positions();
            let xi = x[pos.iter().position(|&p| p == i).expect("i in I")].clone();
            let mut coeffs: Vec<(usize, Rational)> =
                pos.iter().zip(&x).map(|(&p, v)| (p, v / &xi)).collect();
            coeffs.push((j, -Rational::one() / &xi));
            coeffs.sort_by_key(|(p, _)| *p);
            Wall {
                facets: (a, b),
                i,
                j,
                coeffs,
            }
        })
        .collect::<Vec<_>>();
    let mut walls = walls;
    walls.sort_by_key(|w| (w.facets, w.i));
    Ok(walls)
}

#[derive(Clone, Debug, Serialize)]
pub struct FanCheckReport {
    pub basis_ok: bool,
    /// 1-based positions of the first facet that is not a basis.
    pub basis_failure: Option<Vec<usize>>,
    pub flip_ok: bool,
    /// First wall whose facets lie on the same side: `(I, J)` as 1-based positions.
    pub flip_failure: Option<(Vec<usize>, Vec<usize>)>,
    pub injective_ok: bool,
    /// A facet whose cone meets the open reference cone.
    pub intersecting: Option<(Vec<usize>, Vec<usize>)>,
    pub reference_facet: Vec<usize>,
    pub wall_count: usize,
    /// Determinant signs of the Gale dual, up to a global orientation.
    pub signature: SignatureReport,
    pub orientation: i8,
    pub complete: bool,
    #[serde(skip)]
    pub(crate) fingerprint: u64,
}

impl FanCheckReport {
    pub fn signature_ok(&self) -> bool {
        self.signature.is_signature()
    }
}

/// Checks `D rays^t = 0` and complementary ranks.
pub fn check_gale_dual(fan: &Fan, d: &RationalMatrix) -> Result<()> {
    let r = fan.complex.size();
    if d.cols() != r {
        return Err(SubfanError::NotGaleDual(format!(
            "{} columns, expected {r}",
            d.cols()
        )));
    }
    if !d.mul(&fan.rays.transpose())?.is_zero() {
        return Err(SubfanError::NotGaleDual(
            "product with the ray matrix is not zero".into(),
        ));
    }
    if d.rank() + fan.rays.rank() != r {
        return Err(SubfanError::NotGaleDual(
            "ranks are not complementary".into(),
        ));
    }
    Ok(())
}

/// Basis, flip and injectivity checks; the signature report is taken on `d`,
/// or on a kernel basis of the rays when `d` is `None`.
pub fn check_complete(fan: &Fan, d: Option<&RationalMatrix>) -> Result<FanCheckReport> {
    let d = match d {
        Some(d) => {
            check_gale_dual(fan, d)?;
            d.clone()
        }
        None => fan.rays.kernel_basis()?,
    };
    let complex = &fan.complex;
    let facets = complex.facets();
    let orientation = orientation(&d, complex)?;
    let signature = signature_report_on(&d, complex, orientation)?;

    let basis_failures = fan.basis_failures();
    let basis_ok = basis_failures.is_empty();
    let basis_failure = basis_failures.first().map(|&k| facets[k].one_based());
    let reference = fan.reference_facet();
    let mut report = FanCheckReport {
        basis_ok,
        basis_failure,
        flip_ok: false,
        flip_failure: None,
        injective_ok: false,
        intersecting: None,
        reference_facet: facets[reference].one_based(),
        wall_count: 0,
        signature,
        orientation,
        complete: false,
        fingerprint: fan.fingerprint(),
    };
    if !basis_ok {
        return Ok(report);
    }
    let walls = wall_relations(fan)?;
    report.wall_count = walls.len();
    let bad_wall = walls.iter().find(|w| !w.separates());
    report.flip_ok = bad_wall.is_none();
    report.flip_failure = bad_wall.map(|w| {
        (
            facets[w.facets.0].one_based(),
            facets[w.facets.1].one_based(),
        )
    });

    let hits: Vec<usize> = (0..facets.len())
        .into_par_iter()
        .filter(|&k| k != reference)
        .map(|k| cones_meet(fan, reference, k).map(|hit| hit.then_some(k)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.injective_ok = hits.is_empty();
    report.intersecting = hits
        .first()
        .map(|&k| (facets[reference].one_based(), facets[k].one_based()));
    report.complete = report.basis_ok && report.flip_ok && report.injective_ok;
    Ok(report)
}

/// Whether `x = R_I lambda = R_J mu` has a solution with `lambda >= 1`, `mu >= 0`.
fn cones_meet(fan: &Fan, a: usize, b: usize) -> Result<bool> {
    let facets = fan.complex.facets();
    let ra = fan.facet_matrix(facets[a]);
    let rb = fan.facet_matrix(facets[b]);
    let d = fan.dimension();
    // variables: nu = lambda - 1 >= 0 (d), mu >= 0 (d); R_I nu - R_J mu = -R_I 1
    let a_mat = ra.hstack(&rb.scale(&-Rational::one()))?;
    let ones = vec![Rational::one(); d];
    let rhs: Vec<Rational> = ra.mul_vec(&ones)?.into_iter().map(|v| -v).collect();
    let lp = LinearProgram::feasibility(a_mat, rhs, vec![Sense::Eq; d])?;
    let out = lp_solve(&lp)?;
    Ok(out.status == LpStatus::Optimal)
}

/// Number of facet cones containing `point` in their interior.
pub fn covering_number(fan: &Fan, point: &[Rational]) -> Result<usize> {
    if point.len() != fan.dimension() {
        return Err(SubfanError::InvalidParameters(format!(
            "point of length {}, fan lives in dimension {}",
            point.len(),
            fan.dimension()
        )));
    }
    if !fan.basis_failures().is_empty() {
        return Err(SubfanError::NotComplete);
    }
    let facets = fan.complex.facets();
    let mut count = 0;
    for (k, inv) in fan.inverses().iter().enumerate() {
        let x = inv.as_ref().expect("bases checked").mul_vec(point)?;
        if x.iter().any(Signed::is_negative) {
            continue;
        }
        if x.iter().any(Zero::is_zero) {
            return Err(SubfanError::DegeneratePoint(facets[k].one_based()));
        }
        count += 1;
    }
    Ok(count)
}

const DENOMINATORS: [i64; 6] = [3, 5, 7, 11, 13, 17];

/// Rational point with odd-prime denominators.
pub fn random_point(dim: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..dim)
        .map(|_| {
            let q = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
            frac(rng.gen_range(-60..=60), q)
        })
        .collect()
}

/// Covering numbers at `count` generic points drawn from `seed`; degenerate draws are redrawn.
pub fn covering_numbers(fan: &Fan, count: usize, seed: u64) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_point(fan.dimension(), &mut rng);
        if p.iter().all(Zero::is_zero) {
            continue;
        }
        match covering_number(fan, &p) {
            Ok(c) => out.push(c),
            Err(SubfanError::DegeneratePoint(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `M_{I'}^{-1} M`, so that the columns at `facet` form the identity.
pub fn gale_normalize(m: &RationalMatrix, facet: Facet) -> Result<RationalMatrix> {
    let sub = m.select_columns(&facet.positions())?;
    Ok(sub.inverse()?.mul(m)?)
}

/// Drops the columns in `face` and the rows where those columns have their 1.
/// `m` must be normalized at `facet`, which contains `face`.
pub fn restrict_to_link(
    m: &RationalMatrix,
    facet: Facet,
    face: PositionSet,
) -> Result<RationalMatrix> {
    if !face.is_subset(facet) {
        return Err(SubfanError::NotAFace(format!(
            "{face:?} is not contained in {facet:?}"
        )));
    }
    let pos = facet.positions();
    let drop_rows: Vec<usize> = face
        .positions()
        .iter()
        .map(|p| pos.iter().position(|q| q == p).expect("subset"))
        .collect();
    let rows: Vec<usize> = (0..m.rows()).filter(|r| !drop_rows.contains(r)).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&c| !face.contains(c)).collect();
    if rows.is_empty() {
        return Ok(RationalMatrix::zeros(0, cols.len()));
    }
    Ok(m.select_rows(&rows)?.select_columns(&cols)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{closed_form_counting, counting_matrix};

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn m213_three_matches_printed() {
        let m = builtin_rays(RayFamily::M213, 3).unwrap();
        let printed = RationalMatrix::from_i64_rows(&[
            vec![-1, 0, 0, 4, 2, 2, -3, -2, -2],
            vec![0, -1, 0, -1, 1, -1, 1, 0, 1],
            vec![0, 0, -1, -1, -1, 1, 1, 1, 0],
        ])
        .unwrap();
        assert_eq!(m, printed);
    }

    #[test]
    fn m213_five_matches_printed_tail() {
        let m = builtin_rays(RayFamily::M213, 5).unwrap();
        assert_eq!(m.shape(), (9, 15));
        let row0: Vec<i64> = vec![-1, 0, 0, 0, 0, 0, 0, 0, 0, 16, 12, 12, -15, -12, -12];
        assert_eq!(
            m.row(0),
            row0.into_iter().map(int).collect::<Vec<_>>().as_slice()
        );
        let row4: Vec<i64> = vec![0, 0, 0, 0, -1, 0, 0, 0, 0, -3, 0, -3, 3, 1, 3];
        assert_eq!(
            m.row(4),
            row4.into_iter().map(int).collect::<Vec<_>>().as_slice()
        );
    }

    #[test]
    fn builtin_rays_are_gale_duals() {
        for (family, c) in [(RayFamily::M213, "213"), (RayFamily::M123, "123")] {
            for m in 3..=8 {
                let rays = builtin_rays(family, m).unwrap();
                let d = closed_form_counting(&w(3, c), m).unwrap().matrix;
                assert!(
                    d.mul(&rays.transpose()).unwrap().is_zero(),
                    "{family:?} m={m}"
                );
                assert_eq!(rays.rank() + d.rank(), 3 * m);
            }
        }
        for m in 2..=8 {
            let rays = builtin_rays(RayFamily::A2, m).unwrap();
            let d = counting_matrix(2, &w(2, "12"), m).unwrap().matrix;
            assert!(d.mul(&rays.transpose()).unwrap().is_zero(), "A2 m={m}");
            assert_eq!(rays.rank() + d.rank(), 2 * m);
            let rays = builtin_rays(RayFamily::A1, m).unwrap();
            let d = counting_matrix(1, &w(1, "1"), m).unwrap().matrix;
            assert!(d.mul(&rays.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn m123_star_column() {
        let m = builtin_rays(RayFamily::M123, 3).unwrap();
        // the block rows are positions 2..8, the last column of the block is coordinate 2
        let col: Vec<Rational> = (2..8).map(|p| m[(2, p)].clone()).collect();
        assert_eq!(col, [0, 1, 1, 1, -1, -1].map(int));
    }

    #[test]
    fn m12_block_row() {
        let m = builtin_rays(RayFamily::M12, 4).unwrap();
        // B_{12,2} is the first block; its first row sits at position 4
        assert_eq!(m[(0, 4)], int(9));
        assert_eq!(m[(1, 4)], int(-3));
        assert_eq!(m[(2, 5)], int(4));
        assert_eq!(m[(3, 5)], int(0));
    }

    #[test]
    fn folding_matches_closed_form() {
        for m in 3..=8 {
            assert_eq!(
                fold_to_b2(m).unwrap(),
                builtin_rays(RayFamily::M12, m).unwrap()
            );
        }
        assert!(fold_to_b2(2).is_err());
    }

    #[test]
    fn associahedron_fan_is_complete() {
        let fan = Fan::builtin(RayFamily::M213, 3).unwrap();
        let d = closed_form_counting(&w(3, "213"), 3).unwrap().matrix;
        let r = check_complete(&fan, Some(&d)).unwrap();
        assert!(r.complete && r.signature_ok());
        assert_eq!(r.orientation, 1);
        assert_eq!(r.wall_count, 21);
        assert_eq!(r.reference_facet, vec![1, 2, 3]);
        assert!(covering_numbers(&fan, 30, 1)
            .unwrap()
            .iter()
            .all(|&c| c == 1));
    }

    #[test]
    fn pentagon_walls() {
        let q = w(2, "12121");
        let d = crate::counting::counting_matrix_on_word(&w(2, "12"), &q)
            .unwrap()
            .matrix;
        let fan = Fan::new(
            SubwordComplex::type_a(q).unwrap(),
            d.kernel_basis().unwrap(),
        )
        .unwrap();
        let walls = wall_relations(&fan).unwrap();
        assert_eq!(walls.len(), 5);
        assert!(check_complete(&fan, Some(&d)).unwrap().complete);
        for wall in &walls {
            assert!(wall.separates());
            assert_eq!(wall.coefficient(wall.i), int(1));
            let sum: Vec<Rational> = (0..fan.dimension())
                .map(|row| {
                    wall.coeffs
                        .iter()
                        .map(|(p, c)| c * &fan.rays()[(row, *p)])
                        .sum()
                })
                .collect();
            assert!(sum.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn repeated_ray_breaks_basis() {
        let base = builtin_rays(RayFamily::A2, 3).unwrap();
        // ray 1 equal to ray 0: facets containing both are singular
        let cols: Vec<Vec<Rational>> = (0..base.cols())
            .map(|j| base.column(if j == 1 { 0 } else { j }))
            .collect();
        let rays = RationalMatrix::from_columns(base.rows(), &cols).unwrap();
        let complex = SubwordComplex::type_a(w(2, "121212")).unwrap();
        let fan = Fan::new(complex, rays).unwrap();
        let r = check_complete(&fan, None).unwrap();
        assert!(!r.basis_ok && !r.complete);
        assert!(!r.signature_ok());
    }

    #[test]
    fn non_complete_fan_detected() {
        // swap two rays of the associahedron fan: still bases, but cones overlap
        let rays = builtin_rays(RayFamily::M213, 3).unwrap();
        let mut cols: Vec<Vec<Rational>> = (0..9).map(|j| rays.column(j)).collect();
        cols.swap(3, 8);
        let fan = Fan::new(
            SubwordComplex::type_a(w(3, "213213213")).unwrap(),
            RationalMatrix::from_columns(3, &cols).unwrap(),
        )
        .unwrap();
        let r = check_complete(&fan, None).unwrap();
        assert!(!r.complete);
        assert_eq!(r.signature_ok(), r.basis_ok && r.flip_ok);
    }

    #[test]
    fn negative_point_in_reference_cone() {
        let fan = Fan::builtin(RayFamily::M213, 4).unwrap();
        let p = vec![frac(-1, 3); fan.dimension()];
        let facets = fan.complex().facets();
        let r = fan.reference_facet();
        let hits: Vec<usize> = fan
            .inverses()
            .iter()
            .enumerate()
            .filter(|(_, inv)| {
                inv.as_ref()
                    .unwrap()
                    .mul_vec(&p)
                    .unwrap()
                    .iter()
                    .all(Signed::is_positive)
            })
            .map(|(k, _)| k)
            .collect();
        assert_eq!(hits, vec![r]);
        assert_eq!(facets[r].positions(), (0..6).collect::<Vec<_>>());
        assert_eq!(covering_number(&fan, &p).unwrap(), 1);
    }

    #[test]
    fn ray_point_is_degenerate() {
        let fan = Fan::builtin(RayFamily::A2, 3).unwrap();
        assert!(matches!(
            covering_number(&fan, &fan.ray(4)),
            Err(SubfanError::DegeneratePoint(_))
        ));
    }

    #[test]
    fn normalization() {
        let m = builtin_rays(RayFamily::A2, 4).unwrap();
        let facet = PositionSet::from_positions(&[0, 1, 2, 3, 4]).unwrap();
        let n = gale_normalize(&m, facet).unwrap();
        assert_eq!(
            n.select_columns(&[0, 1, 2, 3, 4]).unwrap(),
            RationalMatrix::identity(5)
        );
        assert_eq!(gale_normalize(&n, facet).unwrap(), n);
        let d = counting_matrix(2, &w(2, "12"), 4).unwrap().matrix;
        assert!(d.mul(&n.transpose()).unwrap().is_zero());
        assert!(gale_normalize(&m, PositionSet::from_positions(&[0, 0]).unwrap()).is_err());
    }

    #[test]
    fn link_restriction() {
        let m = builtin_rays(RayFamily::A2, 4).unwrap();
        let q = w(2, "12121212");
        let k = SubwordComplex::type_a(q.clone()).unwrap();
        let facet = PositionSet::from_positions(&[0, 1, 2, 3, 4]).unwrap();
        assert!(k.facet_index(facet).is_some());
        let n = gale_normalize(&m, facet).unwrap();
        assert_eq!(
            restrict_to_link(&n, facet, PositionSet::empty()).unwrap(),
            n
        );
        assert_eq!(restrict_to_link(&n, facet, facet).unwrap().rows(), 0);
        // drop positions 2 and 5 (a 1 and a 2), keeping Q' = 121212... minus those letters
        let face = PositionSet::from_positions(&[2, 4]).unwrap();
        let restricted = restrict_to_link(&n, facet, face).unwrap();
        let link = k.link(face).unwrap();
        let fan = Fan::new(link.complex.clone(), restricted).unwrap();
        let r = check_complete(&fan, None).unwrap();
        assert!(r.complete);
        assert_eq!(
            link.complex.f_vector(),
            k.link(face).unwrap().complex.f_vector()
        );
        assert!(restrict_to_link(&n, facet, PositionSet::from_positions(&[7]).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let fan = Fan::builtin(RayFamily::M12, 3).unwrap();
        let v = fan.to_json();
        let back = Fan::from_json(&v).unwrap();
        assert_eq!(back.rays(), fan.rays());
        assert_eq!(back.complex().facets(), fan.complex().facets());
        assert_eq!(parse_group("A3").unwrap(), CoxeterGroup::A(3));
        assert!(parse_group("C3").is_err());
    }

    #[test]
    fn b2_folded_fan_complete() {
        for m in 3..=5 {
            let fan = Fan::new(
                SubwordComplex::new(CoxeterGroup::B2, w(2, "12").power(m)).unwrap(),
                fold_to_b2(m).unwrap(),
            )
            .unwrap();
            let r = check_complete(&fan, None).unwrap();
            assert!(r.complete && r.signature_ok(), "m = {m}");
        }
    }
}

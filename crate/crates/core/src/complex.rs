//! Subword complexes, multi-associahedra and their export formats.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{sorted_word_w0, CoxeterGroup, Element, Word};
use crate::error::{Result, SubfanError};

/// Set of positions of a word with at most 64 letters, 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PositionSet(u64);

pub type Facet = PositionSet;

impl PositionSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn from_positions(positions: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &p in positions {
            if p >= 64 {
                return Err(SubfanError::WordTooLong(p + 1));
            }
            bits |= 1 << p;
        }
        Ok(Self(bits))
    }

    /// All positions `0..r`.
    pub fn full(r: usize) -> Self {
        if r == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << r) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        p < 64 && self.0 >> p & 1 == 1
    }

    pub fn insert(self, p: usize) -> Self {
        Self(self.0 | 1 << p)
    }

    pub fn remove(self, p: usize) -> Self {
        Self(self.0 & !(1 << p))
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `0..r`.
    pub fn complement(self, r: usize) -> Self {
        Self(Self::full(r).0 & !self.0)
    }

    pub fn positions(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut b = self.0;
        while b != 0 {
            let p = b.trailing_zeros() as usize;
            out.push(p);
            b &= b - 1;
        }
        out
    }

    /// Positions shifted to 1-based, for external formats.
    pub fn one_based(self) -> Vec<usize> {
        self.positions().into_iter().map(|p| p + 1).collect()
    }
}

impl fmt::Debug for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.positions())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_{-1}, f_0, ...`.
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn dimension(&self) -> isize {
        self.0.len() as isize - 2
    }

    /// `sum_{i >= 0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Euler characteristic of a sphere of this dimension.
    pub fn is_sphere_euler(&self) -> bool {
        let expected = if self.dimension() % 2 == 0 { 2 } else { 0 };
        self.euler_characteristic() == expected
    }

    pub fn to_csv(&self) -> String {
        let header: Vec<String> = (0..self.0.len())
            .map(|i| format!("f{}", i as isize - 1))
            .collect();
        let values: Vec<String> = self.0.iter().map(u64::to_string).collect();
        format!("{}\n{}\n", header.join(","), values.join(","))
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", v.join(","))
    }
}

/// `Delta(Q, w0)`: facets are complements of reduced expressions of the longest element in `Q`.
#[derive(Clone, Debug)]
pub struct SubwordComplex {
    group: CoxeterGroup,
    word: Word,
    facets: Vec<Facet>,
    index: HashMap<Facet, usize>,
}

impl SubwordComplex {
    pub fn new(group: CoxeterGroup, word: Word) -> Result<Self> {
        group.check_word(&word)?;
        if word.len() > 64 {
            return Err(SubfanError::WordTooLong(word.len()));
        }
        let facets = enumerate_facets(group, &word);
        if facets.is_empty() {
            return Err(SubfanError::NoReducedExpression(word.to_string()));
        }
        let index = facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        Ok(Self {
            group,
            word,
            facets,
            index,
        })
    }

    /// Type A complex on `word`.
    pub fn type_a(word: Word) -> Result<Self> {
        Self::new(CoxeterGroup::A(word.rank()), word)
    }

    pub fn group(&self) -> CoxeterGroup {
        self.group
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Number of positions, `r`.
    pub fn size(&self) -> usize {
        self.word.len()
    }

    /// Facet size `r - N`.
    pub fn facet_size(&self) -> usize {
        self.word.len() - self.group.longest_length()
    }

    /// Facets in increasing bit order.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_index(&self, f: Facet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn is_face(&self, face: PositionSet) -> bool {
        face.is_subset(PositionSet::full(self.size()))
            && demazure_is_longest(self.group, &self.word, face)
    }

    /// Position sets spelling a reduced expression of `w0`.
    pub fn reduced_subwords(&self) -> impl Iterator<Item = PositionSet> + '_ {
        let r = self.size();
        self.facets.iter().map(move |f| f.complement(r))
    }

    /// Positions that lie in no facet.
    pub fn non_vertices(&self) -> Vec<usize> {
        let used = self
            .facets
            .iter()
            .fold(PositionSet::empty(), |a, &f| a.union(f));
        used.complement(self.size()).positions()
    }

    pub fn f_vector(&self) -> FVector {
        f_vector_of(&self.facets)
    }

    /// The unique facet `F \ {i} u {j}` with `j != i`.
    pub fn flip(&self, facet: Facet, i: usize) -> Result<(Facet, usize)> {
        if self.facet_index(facet).is_none() {
            return Err(SubfanError::NotAFace(format!("{facet:?}")));
        }
        if !facet.contains(i) {
            return Err(SubfanError::InvalidFlip(format!(
                "position {i} is not in {facet:?}"
            )));
        }
        let ridge = facet.remove(i);
        for j in ridge.complement(self.size()).positions() {
            if j == i {
                continue;
            }
            let other = ridge.insert(j);
            if self.index.contains_key(&other) {
                return Ok((other, j));
            }
        }
        Err(SubfanError::InvalidFlip(format!(
            "no flip of {facet:?} at {i}"
        )))
    }

    /// Adjacent facet pairs `(I, i, J, j)` with `index(I) < index(J)`.
    pub fn flips(&self) -> Vec<(usize, usize, usize, usize)> {
        self.facets
            .par_iter()
            .enumerate()
            .flat_map_iter(|(a, &f)| {
                f.positions()
                    .into_iter()
                    .filter_map(|i| {
                        let (g, j) = self.flip(f, i).ok()?;
                        let b = self.index[&g];
                        (a < b).then_some((a, i, b, j))
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// `Link(face) = Delta(Q \ face)`, with the map from new to old positions.
    pub fn link(&self, face: PositionSet) -> Result<Link> {
        if !self.is_face(face) {
            return Err(SubfanError::NotAFace(format!("{face:?}")));
        }
        let positions = face.complement(self.size()).positions();
        let word = self.word.subword(&positions);
        let complex = SubwordComplex::new(self.group, word)?;
        Ok(Link { complex, positions })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let facets: Vec<Vec<usize>> = self.facets.iter().map(|f| f.one_based()).collect();
        serde_json::json!({
            "rank": self.word.rank(),
            "group": group_name(self.group),
            "word": self.word.to_string(),
            "facets": facets,
        })
    }

    /// One facet per line as `{1 4 7}`, 1-based.
    pub fn to_facet_text(&self) -> String {
        let mut out = String::new();
        for f in &self.facets {
            let v: Vec<String> = f.one_based().iter().map(usize::to_string).collect();
            out.push('{');
            out.push_str(&v.join(" "));
            out.push_str("}\n");
        }
        out
    }
}

pub(crate) fn group_name(g: CoxeterGroup) -> String {
    match g {
        CoxeterGroup::A(n) => format!("A{n}"),
        CoxeterGroup::B2 => "B2".into(),
    }
}

/// Link of a face as a complex on the remaining positions.
#[derive(Clone, Debug)]
pub struct Link {
    pub complex: SubwordComplex,
    /// `positions[k]` is the position in the original word of letter `k`.
    pub positions: Vec<usize>,
}

/// Whether the letters outside `skip` contain a reduced expression of `w0`.
fn demazure_is_longest(group: CoxeterGroup, word: &Word, skip: PositionSet) -> bool {
    let mut e = group.identity();
    let mut len = 0;
    for (p, &s) in word.letters().iter().enumerate() {
        if skip.contains(p) {
            continue;
        }
        let (next, up) = group.mul_gen(&e, s);
        if up {
            e = next;
            len += 1;
        }
    }
    len == group.longest_length()
}

fn demazure_length(group: CoxeterGroup, start: &Element, letters: &[u8]) -> usize {
    let mut e = start.clone();
    let mut len = e.length();
    for &s in letters {
        let (next, up) = group.mul_gen(&e, s);
        if up {
            e = next;
            len += 1;
        }
    }
    len
}

fn enumerate_facets(group: CoxeterGroup, word: &Word) -> Vec<Facet> {
    let letters = word.letters();
    let r = letters.len();
    let top = group.longest_length();
    if r < top || demazure_length(group, &group.identity(), letters) < top {
        return Vec::new();
    }
    // Expand the first few levels breadth-first, then search each branch in parallel.
    let split = r.min(10);
    let mut frontier = vec![(group.identity(), 0u64)];
    for (p, &s) in letters.iter().enumerate().take(split) {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (e, used) in frontier {
            let (up_elem, up) = group.mul_gen(&e, s);
            if demazure_length(group, &e, &letters[p + 1..]) == top {
                next.push((e, used));
            }
            if up && demazure_length(group, &up_elem, &letters[p + 1..]) == top {
                next.push((up_elem, used | 1 << p));
            }
        }
        frontier = next;
    }
    let mut out: Vec<Facet> = frontier
        .into_par_iter()
        .flat_map_iter(|(e, used)| {
            let mut acc = Vec::new();
            search(group, letters, split, e, used, top, &mut acc);
            acc
        })
        .map(|used| PositionSet(used).complement(r))
        .collect();
    out.sort_unstable();
    out
}

fn search(
    group: CoxeterGroup,
    letters: &[u8],
    p: usize,
    e: Element,
    used: u64,
    top: usize,
    acc: &mut Vec<u64>,
) {
    if e.length() == top {
        acc.push(used);
        return;
    }
    if p == letters.len() {
        return;
    }
    let s = letters[p];
    let (up_elem, up) = group.mul_gen(&e, s);
    if up && demazure_length(group, &up_elem, &letters[p + 1..]) == top {
        search(group, letters, p + 1, up_elem, used | 1 << p, top, acc);
    }
    if demazure_length(group, &e, &letters[p + 1..]) == top {
        search(group, letters, p + 1, e, used, top, acc);
    }
}

/// Face counts by downward closure of the facets.
pub fn f_vector_of(facets: &[Facet]) -> FVector {
    let Some(d) = facets.iter().map(|f| f.len()).max() else {
        return FVector(vec![0]);
    };
    let mut counts = vec![0u64; d + 1];
    let mut level: Vec<u64> = facets
        .iter()
        .filter(|f| f.len() == d)
        .map(|f| f.0)
        .collect();
    let mut lower: Vec<u64> = facets.iter().filter(|f| f.len() < d).map(|f| f.0).collect();
    for size in (0..=d).rev() {
        level.extend(lower.iter().filter(|&&b| b.count_ones() as usize == size));
        lower.retain(|&b| b.count_ones() as usize != size);
        level.sort_unstable();
        level.dedup();
        counts[size] = level.len() as u64;
        if size == 0 {
            break;
        }
        let set: HashSet<u64> = level
            .par_iter()
            .fold(HashSet::new, |mut acc, &b| {
                let mut rest = b;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    acc.insert(b & !bit);
                    rest &= rest - 1;
                }
                acc
            })
            .reduce(HashSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            });
        level = set.into_iter().collect();
    }
    FVector(counts)
}

/// `c^k w0(c)`, which gives the multi-associahedron `Delta_{n+2k+1, k}`.
pub fn multiassoc_word(c: &Word, k: usize) -> Result<Word> {
    c.power(k).concat(&sorted_word_w0(c)?)
}

/// Diagonal `(p, q)` of a convex polygon, vertices labelled `1..=l`, `p < q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal(pub u8, pub u8);

impl Diagonal {
    pub fn crosses(self, other: Diagonal) -> bool {
        let (a, b, c, d) = (self.0, self.1, other.0, other.1);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    pub fn is_relevant(self, l: usize, k: usize) -> bool {
        let gap = (self.1 - self.0) as usize;
        gap > k && l - gap > k
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 >= 10 || self.1 >= 10 {
            write!(f, "{}-{}", self.0, self.1)
        } else {
            write!(f, "{}{}", self.0, self.1)
        }
    }
}

impl fmt::Debug for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `k`-relevant diagonals of the `l`-gon in lexicographic order.
pub fn relevant_diagonals(l: usize, k: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for p in 1..=l as u8 {
        for q in p + 1..=l as u8 {
            let d = Diagonal(p, q);
            if d.is_relevant(l, k) {
                out.push(d);
            }
        }
    }
    out
}

/// Multi-associahedron as a subword complex, with the diagonal attached to
/// each position when a labelling is known.
#[derive(Clone, Debug)]
pub struct MultiAssociahedron {
    pub polygon: usize,
    pub k: usize,
    pub complex: SubwordComplex,
    /// Position to diagonal, sending facets to `k`-triangulations.
    pub labels: Option<Vec<Diagonal>>,
    /// Column headers of the `M_213` matrices: the lexicographic list with its
    /// first entry moved to the end. This is `labels` shifted by one copy of
    /// `c` and does not send facets to triangulations.
    pub printed_labels: Option<Vec<Diagonal>>,
}

/// `Delta(c^k w0(c))` in type A. Labels are attached for `A3`, `c = 213`,
/// where the polygon has `2k + 4` vertices and there are `3k + 6` positions.
pub fn multiassoc(n: usize, k: usize, c: &Word) -> Result<MultiAssociahedron> {
    if c.rank() != n {
        return Err(SubfanError::RankMismatch {
            expected: n,
            got: c.rank(),
        });
    }
    let q = multiassoc_word(c, k)?;
    let complex = SubwordComplex::type_a(q)?;
    let polygon = n + 2 * k + 1;
    let bipartite = n == 3 && c.letters() == [2, 1, 3];
    let labels = bipartite.then(|| {
        let mut d = relevant_diagonals(polygon, k);
        d.rotate_right(2);
        d
    });
    let printed_labels = bipartite.then(|| {
        let mut d = relevant_diagonals(polygon, k);
        d.rotate_left(1);
        d
    });
    Ok(MultiAssociahedron {
        polygon,
        k,
        complex,
        labels,
        printed_labels,
    })
}

impl MultiAssociahedron {
    /// Facets as diagonal sets, when a labelling is available.
    pub fn labelled_facets(&self) -> Result<Vec<BTreeSet<Diagonal>>> {
        let labels = self.labels.as_ref().ok_or_else(|| {
            SubfanError::Unsupported("no diagonal labelling for this Coxeter element".into())
        })?;
        Ok(self
            .complex
            .facets()
            .iter()
            .map(|f| f.positions().into_iter().map(|p| labels[p]).collect())
            .collect())
    }
}

/// All `k`-triangulations of the `l`-gon restricted to `k`-relevant diagonals:
/// maximal sets without `k + 1` pairwise crossing diagonals.
pub fn enumerate_k_triangulations(l: usize, k: usize) -> Vec<BTreeSet<Diagonal>> {
    let diags = relevant_diagonals(l, k);
    if l < 2 * k + 1 {
        return Vec::new();
    }
    let target = k * (l - 2 * k - 1);
    let crossing: Vec<Vec<bool>> = diags
        .iter()
        .map(|&a| diags.iter().map(|&b| a.crosses(b)).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    triangulation_search(&crossing, k, target, 0, &mut chosen, &mut out);
    out.into_iter()
        .map(|set| set.into_iter().map(|i| diags[i]).collect())
        .collect()
}

fn triangulation_search(
    crossing: &[Vec<bool>],
    k: usize,
    target: usize,
    next: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == target {
        out.push(chosen.clone());
        return;
    }
    if next == crossing.len() || chosen.len() + (crossing.len() - next) < target {
        return;
    }
    let neighbours: Vec<usize> = chosen
        .iter()
        .copied()
        .filter(|&c| crossing[next][c])
        .collect();
    if !has_clique(crossing, &neighbours, k) {
        chosen.push(next);
        triangulation_search(crossing, k, target, next + 1, chosen, out);
        chosen.pop();
    }
    triangulation_search(crossing, k, target, next + 1, chosen, out);
}

/// Whether `pool` contains `size` pairwise crossing diagonals.
fn has_clique(crossing: &[Vec<bool>], pool: &[usize], size: usize) -> bool {
    if size == 0 {
        return true;
    }
    if pool.len() < size {
        return false;
    }
    pool.iter().enumerate().any(|(i, &v)| {
        let rest: Vec<usize> = pool[i + 1..]
            .iter()
            .copied()
            .filter(|&u| crossing[v][u])
            .collect();
        has_clique(crossing, &rest, size - 1)
    })
}

/// `Delta(1212321212)` in type `A3`.
pub fn obs_a3() -> SubwordComplex {
    let word = Word::parse(3, "1212321212").expect("valid word");
    SubwordComplex::type_a(word).expect("contains a reduced expression")
}

/// Vertex of the abstract complex attached to each position of `1212321212`;
/// the letter `3` at position 4 gets none.
pub fn obs_model_vertex(position: usize) -> Option<u8> {
    match position {
        0..=3 => Some(position as u8 + 1),
        4 => None,
        5..=9 => Some(position as u8),
        _ => None,
    }
}

/// Join of the cycles `(1234)` and `(56789)`, minus `{1,4} * (56789)`, plus six tetrahedra.
pub fn obs_model() -> BTreeSet<BTreeSet<u8>> {
    let c1 = [(1, 2), (2, 3), (3, 4), (4, 1)];
    let c2 = [(5, 6), (6, 7), (7, 8), (8, 9), (9, 5)];
    let mut out = BTreeSet::new();
    for &(a, b) in &c1 {
        if (a, b) == (4, 1) {
            continue;
        }
        for &(x, y) in &c2 {
            out.insert(BTreeSet::from([a, b, x, y]));
        }
    }
    for t in [
        [1, 5, 6, 9],
        [1, 6, 7, 9],
        [1, 7, 8, 9],
        [4, 5, 6, 9],
        [4, 6, 7, 9],
        [4, 7, 8, 9],
    ] {
        out.insert(t.into_iter().collect());
    }
    out
}

/// Words reachable from `q` by swapping adjacent commuting letters.
pub fn commutation_class(group: CoxeterGroup, q: &Word) -> Vec<Word> {
    let mut seen = BTreeSet::from([q.clone()]);
    let mut queue = VecDeque::from([q.clone()]);
    while let Some(w) = queue.pop_front() {
        let l = w.letters();
        for p in 0..l.len().saturating_sub(1) {
            if l[p] != l[p + 1] && group.commute(l[p], l[p + 1]) {
                let mut v = l.to_vec();
                v.swap(p, p + 1);
                let v = Word::new(w.rank(), v).expect("same letters");
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    fn brute_force_facets(q: &Word) -> Vec<Facet> {
        let r = q.len();
        let top = q.rank() * (q.rank() + 1) / 2;
        let mut out = Vec::new();
        for bits in 0u64..1 << r {
            if bits.count_ones() as usize != top {
                continue;
            }
            let s = PositionSet(bits);
            let sub = q.subword(&s.positions());
            if crate::coxeter::is_reduced(&sub) && crate::coxeter::evaluate(&sub).length() == top {
                out.push(s.complement(r));
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn facets_match_brute_force() {
        for (rank, q) in [
            (2, "121212"),
            (2, "1221121"),
            (3, "123123123"),
            (3, "1212321212"),
            (3, "213213213"),
        ] {
            let q = w(rank, q);
            let k = SubwordComplex::type_a(q.clone()).unwrap();
            assert_eq!(k.facets(), brute_force_facets(&q).as_slice(), "{q}");
        }
    }

    #[test]
    fn no_reduced_expression() {
        assert!(matches!(
            SubwordComplex::type_a(w(2, "12")),
            Err(SubfanError::NoReducedExpression(_))
        ));
        assert!(SubwordComplex::type_a(w(3, "111222333")).is_err());
    }

    #[test]
    fn obs_a3_counts() {
        let k = obs_a3();
        assert_eq!(k.facets().len(), 21);
        assert_eq!(k.f_vector().entries(), &[1, 9, 30, 42, 21]);
        assert_eq!(k.non_vertices(), vec![4]);
    }

    #[test]
    fn obs_model_matches_obs() {
        let relabelled: BTreeSet<BTreeSet<u8>> = obs_a3()
            .facets()
            .iter()
            .map(|f| {
                f.positions()
                    .into_iter()
                    .map(|p| obs_model_vertex(p).unwrap())
                    .collect()
            })
            .collect();
        let j = obs_model();
        assert_eq!(j.len(), 21);
        assert_eq!(relabelled, j);
    }

    #[test]
    fn pentagon_flips() {
        let k = SubwordComplex::type_a(w(2, "12121")).unwrap();
        assert_eq!(k.facets().len(), 5);
        assert_eq!(k.flips().len(), 5);
        for &f in k.facets() {
            for i in f.positions() {
                let (g, j) = k.flip(f, i).unwrap();
                assert_ne!(i, j);
                assert_eq!(k.flip(g, j).unwrap(), (f, i));
            }
        }
    }

    #[test]
    fn hexagon_flip_graph() {
        let k = SubwordComplex::type_a(w(3, "213213213")).unwrap();
        assert_eq!(k.facets().len(), 14);
        assert_eq!(k.flips().len(), 14 * 3 / 2);
        assert!(k.f_vector().is_sphere_euler());
    }

    #[test]
    fn flip_errors() {
        let k = SubwordComplex::type_a(w(2, "12121")).unwrap();
        let f = k.facets()[0];
        let outside = f.complement(5).positions()[0];
        assert!(k.flip(f, outside).is_err());
        assert!(k.flip(PositionSet::from_bits(0b11111), 0).is_err());
    }

    #[test]
    fn links() {
        let k = SubwordComplex::type_a(w(2, "121212")).unwrap();
        let whole = k.link(PositionSet::empty()).unwrap();
        assert_eq!(whole.complex.facets(), k.facets());
        let f = k.facets()[3];
        let l = k.link(f).unwrap();
        assert_eq!(l.complex.facets(), &[PositionSet::empty()]);
        assert_eq!(l.complex.f_vector().entries(), &[1]);
        assert!(k.link(PositionSet::full(6)).is_err());
        // link of a vertex is the complex of the deleted word
        let v = PositionSet::from_positions(&[0]).unwrap();
        let l = k.link(v).unwrap();
        assert_eq!(l.positions, vec![1, 2, 3, 4, 5]);
        assert_eq!(l.complex.word(), &w(2, "21212"));
    }

    #[test]
    fn diagonal_labelling_k3() {
        let c = w(3, "213");
        let m = multiassoc(3, 3, &c).unwrap();
        let labels: Vec<String> = m
            .printed_labels
            .as_ref()
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            labels.join(" "),
            "16 17 26 27 28 37 38 39 48 49 4-10 59 5-10 6-10 15"
        );
        let labels: Vec<String> = m
            .labels
            .as_ref()
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            labels.join(" "),
            "5-10 6-10 15 16 17 26 27 28 37 38 39 48 49 4-10 59"
        );
        let k1 = multiassoc(3, 1, &c).unwrap();
        let labels: Vec<String> = k1
            .printed_labels
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(labels.join(" "), "14 15 24 25 26 35 36 46 13");
        assert_eq!(m.complex.word(), &w(3, "213213213213213"));
    }

    #[test]
    fn labelling_is_isomorphism() {
        let c = w(3, "213");
        for k in 1..=3 {
            let m = multiassoc(3, k, &c).unwrap();
            let facets: BTreeSet<_> = m.labelled_facets().unwrap().into_iter().collect();
            let tri: BTreeSet<_> = enumerate_k_triangulations(2 * k + 4, k)
                .into_iter()
                .collect();
            assert_eq!(facets, tri, "k = {k}");
        }
    }

    #[test]
    fn triangulation_counts() {
        assert_eq!(enumerate_k_triangulations(6, 1).len(), 14);
        // boundary of a simplex: k + 1 facets
        assert_eq!(enumerate_k_triangulations(8, 3).len(), 4);
        assert_eq!(enumerate_k_triangulations(6, 2).len(), 3);
        assert_eq!(enumerate_k_triangulations(9, 2).len(), 594);
    }

    #[test]
    fn multiassoc_counts_match_triangulations() {
        let cases = [(1, "1"), (2, "12"), (3, "213"), (3, "123"), (4, "2413")];
        for (n, c) in cases {
            let c = w(n, c);
            for k in 1..=3 {
                let l = n + 2 * k + 1;
                if l > 10 {
                    continue;
                }
                let m = multiassoc(n, k, &c).unwrap();
                assert_eq!(
                    m.complex.facets().len(),
                    enumerate_k_triangulations(l, k).len(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn commutation_classes() {
        assert_eq!(
            commutation_class(CoxeterGroup::A(3), &w(3, "13")),
            vec![w(3, "13"), w(3, "31")]
        );
        assert_eq!(
            commutation_class(CoxeterGroup::A(2), &w(2, "12")),
            vec![w(2, "12")]
        );
        let q = w(3, "213213213");
        let class = commutation_class(CoxeterGroup::A(3), &q);
        // each class member gives an isomorphic complex
        for v in class.iter().take(5) {
            assert_eq!(
                SubwordComplex::type_a(v.clone()).unwrap().facets().len(),
                14
            );
        }
    }

    #[test]
    fn exports() {
        let k = SubwordComplex::type_a(w(2, "12121")).unwrap();
        let text = k.to_facet_text();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with('{'));
        let j = k.to_json();
        assert_eq!(j["facets"].as_array().unwrap().len(), 5);
        assert_eq!(k.f_vector().to_csv(), "f-1,f0,f1\n1,5,5\n");
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(
            FVector(vec![1, 15, 105, 455, 1320, 2607, 3465, 2970, 1485, 330])
                .euler_characteristic(),
            2
        );
        assert!(FVector(vec![1, 5, 5]).is_sphere_euler());
    }

    #[test]
    fn b2_complex() {
        let k = SubwordComplex::new(CoxeterGroup::B2, w(2, "121212")).unwrap();
        // hexagon: 6 facets of size 2
        assert_eq!(k.f_vector().entries(), &[1, 6, 6]);
    }
}

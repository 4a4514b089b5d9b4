//! Words, permutations, braid graphs and the sign function of type A, plus the
//! dihedral group used for B2.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SubfanError};

/// Finite Coxeter group handled by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoxeterGroup {
    /// Symmetric group on `n + 1` letters.
    A(usize),
    /// Dihedral group of order 8.
    B2,
}

impl CoxeterGroup {
    pub fn rank(self) -> usize {
        match self {
            CoxeterGroup::A(n) => n,
            CoxeterGroup::B2 => 2,
        }
    }

    /// `N`, the length of the longest element.
    pub fn longest_length(self) -> usize {
        match self {
            CoxeterGroup::A(n) => n * (n + 1) / 2,
            CoxeterGroup::B2 => 4,
        }
    }

    /// Order of `s_i s_j`.
    pub fn braid_order(self, i: u8, j: u8) -> usize {
        if i == j {
            return 1;
        }
        match self {
            CoxeterGroup::A(_) => {
                if i.abs_diff(j) == 1 {
                    3
                } else {
                    2
                }
            }
            CoxeterGroup::B2 => 4,
        }
    }

    pub fn commute(self, i: u8, j: u8) -> bool {
        self.braid_order(i, j) == 2
    }

    pub(crate) fn identity(self) -> Element {
        match self {
            CoxeterGroup::A(n) => Element::Perm {
                perm: (1..=n as u8 + 1).collect(),
                len: 0,
            },
            CoxeterGroup::B2 => Element::Dihedral { len: 0, last: 0 },
        }
    }

    /// Right multiplication by `s`; the flag is true when the length goes up.
    pub(crate) fn mul_gen(self, e: &Element, s: u8) -> (Element, bool) {
        match e {
            Element::Perm { perm, len } => {
                let i = s as usize;
                let up = perm[i - 1] < perm[i];
                let mut p = perm.clone();
                p.swap(i - 1, i);
                (
                    Element::Perm {
                        perm: p,
                        len: if up { len + 1 } else { len - 1 },
                    },
                    up,
                )
            }
            &Element::Dihedral { len, last } => {
                let top = self.longest_length();
                let other = 3 - s;
                if len == 0 {
                    (Element::Dihedral { len: 1, last: s }, true)
                } else if len == top {
                    (
                        Element::Dihedral {
                            len: top - 1,
                            last: other,
                        },
                        false,
                    )
                } else if last == s {
                    let last = if len == 1 { 0 } else { other };
                    (Element::Dihedral { len: len - 1, last }, false)
                } else if len + 1 == top {
                    (Element::Dihedral { len: top, last: 0 }, true)
                } else {
                    (
                        Element::Dihedral {
                            len: len + 1,
                            last: s,
                        },
                        true,
                    )
                }
            }
        }
    }

    /// Whether `word` is a reduced expression of the longest element.
    pub fn is_longest_reduced(self, word: &Word) -> bool {
        if word.rank() != self.rank() || word.len() != self.longest_length() {
            return false;
        }
        let mut e = self.identity();
        for &s in word.letters() {
            let (next, up) = self.mul_gen(&e, s);
            if !up {
                return false;
            }
            e = next;
        }
        true
    }

    /// Sign of a reduced expression of the longest element.
    ///
    /// Type A uses the multi-permutation rule. In B2 the two reduced words
    /// differ by one braid move of length 4, so they get opposite signs;
    /// `1212` is `+1`.
    pub fn sign(self, word: &Word) -> Result<i8> {
        if !self.is_longest_reduced(word) {
            return Err(SubfanError::NotLongestReduced(word.to_string()));
        }
        Ok(match self {
            CoxeterGroup::A(_) => multi_permutation_sign(word),
            CoxeterGroup::B2 => {
                if word.letters()[0] == 1 {
                    1
                } else {
                    -1
                }
            }
        })
    }

    pub fn check_word(self, word: &Word) -> Result<()> {
        if word.rank() != self.rank() {
            return Err(SubfanError::RankMismatch {
                expected: self.rank(),
                got: word.rank(),
            });
        }
        Ok(())
    }
}

/// Group element in the representation used by the facet search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Element {
    Perm { perm: Vec<u8>, len: usize },
    Dihedral { len: usize, last: u8 },
}

impl Element {
    pub(crate) fn length(&self) -> usize {
        match self {
            Element::Perm { len, .. } | Element::Dihedral { len, .. } => *len,
        }
    }
}

/// A simple generator `s_i`, `1 <= i <= rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u8);

impl Generator {
    pub fn new(index: u8, rank: usize) -> Result<Self> {
        if index == 0 || index as usize > rank {
            return Err(SubfanError::InvalidWord(format!(
                "generator s{index} outside rank {rank}"
            )));
        }
        Ok(Self(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }
}

/// A word in the simple generators of a group of the given rank.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(rank: usize, letters: Vec<u8>) -> Result<Self> {
        if rank == 0 {
            return Err(SubfanError::InvalidWord("rank must be at least 1".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&s| s == 0 || s as usize > rank) {
            return Err(SubfanError::InvalidWord(format!(
                "letter {bad} outside rank {rank}"
            )));
        }
        Ok(Self { rank, letters })
    }

    /// Parses `"1212321212"`, or comma/space separated indices for rank above 9.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let letters: Vec<u8> = if s.contains([',', ' ']) {
            s.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| SubfanError::InvalidWord(s.to_string()))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| SubfanError::InvalidWord(s.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Self::new(rank, letters)
    }

    pub fn empty(rank: usize) -> Self {
        Self {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.letters.iter().map(|&s| Generator(s))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(SubfanError::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn power(&self, m: usize) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.repeat(m),
        }
    }

    /// Letters at the given positions, in the given order.
    pub fn subword(&self, positions: &[usize]) -> Word {
        Word {
            rank: self.rank,
            letters: positions.iter().map(|&p| self.letters[p]).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank <= 9 {
            for s in &self.letters {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u8::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Element of the symmetric group `S_{n+1}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    perm: Vec<u8>,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (1..=n as u8 + 1).collect(),
        }
    }

    pub fn longest(n: usize) -> Self {
        Self {
            perm: (1..=n as u8 + 1).rev().collect(),
        }
    }

    pub fn from_perm(perm: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            let v = v as usize;
            if v == 0 || v > perm.len() || seen[v - 1] {
                return Err(SubfanError::InvalidWord(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[v - 1] = true;
        }
        if perm.len() < 2 {
            return Err(SubfanError::InvalidWord(
                "permutations need at least two points".into(),
            ));
        }
        Ok(Self { perm })
    }

    pub fn rank(&self) -> usize {
        self.perm.len() - 1
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.perm;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    /// `self * s_i`: swaps positions `i` and `i + 1`.
    pub fn mul_generator(&self, i: u8) -> Self {
        let mut perm = self.perm.clone();
        perm.swap(i as usize - 1, i as usize);
        Self { perm }
    }

    pub fn has_right_descent(&self, i: u8) -> bool {
        self.perm[i as usize - 1] > self.perm[i as usize]
    }

    /// Some reduced word, built by peeling right descents.
    pub fn reduced_word(&self) -> Word {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = (1..=self.rank() as u8).find(|&i| w.has_right_descent(i)) {
            rev.push(i);
            w = w.mul_generator(i);
        }
        rev.reverse();
        Word {
            rank: self.rank(),
            letters: rev,
        }
    }
}

/// Product of the letters, left to right.
pub fn evaluate(word: &Word) -> GroupElement {
    let mut g = GroupElement::identity(word.rank());
    for &s in word.letters() {
        g = g.mul_generator(s);
    }
    g
}

pub fn is_reduced(word: &Word) -> bool {
    evaluate(word).length() == word.len()
}

/// Applies every single braid move to `word`; yields the new word and the pair `(i, j)`, `i < j`.
pub fn braid_neighbours(group: CoxeterGroup, word: &Word) -> Vec<(Word, (u8, u8))> {
    let w = word.letters();
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        let (i, j) = (w[p], w[p + 1]);
        if i == j {
            continue;
        }
        let m = group.braid_order(i, j);
        if p + m > w.len() {
            continue;
        }
        let alternates = (0..m).all(|k| w[p + k] == if k % 2 == 0 { i } else { j });
        if !alternates {
            continue;
        }
        let mut letters = w.to_vec();
        for k in 0..m {
            letters[p + k] = if k % 2 == 0 { j } else { i };
        }
        out.push((
            Word {
                rank: word.rank(),
                letters,
            },
            (i.min(j), i.max(j)),
        ));
    }
    out
}

/// All reduced words of an element, by BFS over braid moves. Sorted.
pub fn enumerate_reduced_words(element: &GroupElement) -> Vec<Word> {
    reduced_words_from(CoxeterGroup::A(element.rank()), element.reduced_word())
}

pub(crate) fn reduced_words_from(group: CoxeterGroup, seed: Word) -> Vec<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut queue = VecDeque::from([seed.clone()]);
    seen.insert(seed);
    while let Some(w) = queue.pop_front() {
        for (v, _) in braid_neighbours(group, &w) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidEdge {
    pub u: usize,
    pub v: usize,
    pub pair: (u8, u8),
}

/// Reduced words of one element joined by single braid moves.
#[derive(Clone, Debug)]
pub struct BraidGraph {
    pub group: CoxeterGroup,
    pub vertices: Vec<Word>,
    pub edges: Vec<BraidEdge>,
}

pub fn braid_graph(element: &GroupElement) -> BraidGraph {
    braid_graph_from(CoxeterGroup::A(element.rank()), element.reduced_word())
}

pub fn braid_graph_from(group: CoxeterGroup, seed: Word) -> BraidGraph {
    let vertices = reduced_words_from(group, seed);
    let index: HashMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    for (u, w) in vertices.iter().enumerate() {
        for (x, pair) in braid_neighbours(group, w) {
            let v = index[&x];
            if u < v {
                edges.push(BraidEdge { u, v, pair });
            }
        }
    }
    BraidGraph {
        group,
        vertices,
        edges,
    }
}

impl BraidGraph {
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn braid_order(&self, edge: usize) -> usize {
        let (i, j) = self.edges[edge].pair;
        self.group.braid_order(i, j)
    }

    /// Fundamental cycles of a BFS spanning tree, each as a list of edge indices.
    pub fn cycle_basis(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        if n == 0 {
            return Vec::new();
        }
        let adj = self.adjacency();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut tree_edge = vec![false; self.edges.len()];
        depth[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &(v, k) in &adj[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some((u, k));
                    tree_edge[k] = true;
                    queue.push_back(v);
                }
            }
        }
        let mut cycles = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if tree_edge[k] {
                continue;
            }
            let mut cycle = vec![k];
            let (mut a, mut b) = (e.u, e.v);
            while a != b {
                if depth[a] >= depth[b] {
                    let (p, pk) = parent[a].expect("non-root has a parent");
                    cycle.push(pk);
                    a = p;
                } else {
                    let (p, pk) = parent[b].expect("non-root has a parent");
                    cycle.push(pk);
                    b = p;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Signs from walking the graph: one braid move of order `m` multiplies by `(-1)^(m-1)`.
    /// `None` if some cycle is inconsistent.
    pub fn walk_signs(&self, anchor: usize) -> Option<Vec<i8>> {
        let adj = self.adjacency();
        let mut sign = vec![0i8; self.vertices.len()];
        sign[anchor] = 1;
        let mut queue = VecDeque::from([anchor]);
        while let Some(u) = queue.pop_front() {
            for &(v, k) in &adj[u] {
                let f = if self.braid_order(k).is_multiple_of(2) {
                    -1
                } else {
                    1
                };
                let s = sign[u] * f;
                if sign[v] == 0 {
                    sign[v] = s;
                    queue.push_back(v);
                } else if sign[v] != s {
                    return None;
                }
            }
        }
        Some(sign)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (i, w) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{w}\"];\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  {} -- {} [label=\"{{{},{}}}\"];\n",
                e.u, e.v, e.pair.0, e.pair.1
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| serde_json::json!([e.u, e.v, [e.pair.0, e.pair.1]]))
            .collect();
        serde_json::json!({ "vertices": vertices, "edges": edges })
    }
}

/// Odd cycle of a contracted graph: contracted vertices (as representative
/// vertices of the original graph) and the original edges used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCycle {
    pub components: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub is_bipartite: bool,
    pub odd_cycle: Option<OddCycle>,
    /// False when `Z` is not a union of the type A classes.
    pub stabled: bool,
}

/// Contracts every edge whose label is outside `z` and 2-colours the result.
pub fn contracted_bipartite(graph: &BraidGraph, z: &[(u8, u8)]) -> ContractionReport {
    let z: BTreeSet<(u8, u8)> = z.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    let n = graph.vertices.len();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let next = uf[y];
            uf[y] = r;
            y = next;
        }
        r
    }
    for e in &graph.edges {
        if !z.contains(&e.pair) {
            let (a, b) = (find(&mut uf, e.u), find(&mut uf, e.v));
            uf[a] = b;
        }
    }
    let comp: Vec<usize> = (0..n).map(|v| find(&mut uf, v)).collect();
    let mut adj: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, e) in graph.edges.iter().enumerate() {
        if z.contains(&e.pair) {
            let (a, b) = (comp[e.u], comp[e.v]);
            adj.entry(a).or_default().push((b, k));
            adj.entry(b).or_default().push((a, k));
        }
    }
    let stabled = match graph.group {
        CoxeterGroup::A(rank) => is_stabled(rank, &z),
        CoxeterGroup::B2 => true,
    };

    let mut reps: Vec<usize> = comp.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut colour: Colouring = HashMap::new();
    for &root in &reps {
        if colour.contains_key(&root) {
            continue;
        }
        colour.insert(root, (0, 0, None));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let (cu, du, _) = colour[&u];
            for &(v, k) in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                match colour.get(&v) {
                    None => {
                        colour.insert(v, (1 - cu, du + 1, Some((u, k))));
                        queue.push_back(v);
                    }
                    Some(&(cv, _, _)) if cv == cu => {
                        let cycle = odd_cycle(&colour, u, v, k);
                        return ContractionReport {
                            is_bipartite: false,
                            odd_cycle: Some(cycle),
                            stabled,
                        };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    ContractionReport {
        is_bipartite: true,
        odd_cycle: None,
        stabled,
    }
}

/// Component to (colour, depth, tree edge to parent: (parent, edge)).
type Colouring = HashMap<usize, (u8, usize, Option<(usize, usize)>)>;

fn odd_cycle(colour: &Colouring, u: usize, v: usize, k: usize) -> OddCycle {
    if u == v {
        return OddCycle {
            components: vec![u],
            edges: vec![k],
        };
    }
    let mut left = vec![u];
    let mut right = vec![v];
    let mut edges_left = Vec::new();
    let mut edges_right = Vec::new();
    let (mut a, mut b) = (u, v);
    while a != b {
        let (_, da, pa) = colour[&a];
        let (_, db, pb) = colour[&b];
        if da >= db {
            let (p, pk) = pa.expect("non-root has a parent");
            edges_left.push(pk);
            a = p;
            left.push(a);
        } else {
            let (p, pk) = pb.expect("non-root has a parent");
            edges_right.push(pk);
            b = p;
            right.push(b);
        }
    }
    right.pop();
    right.reverse();
    left.extend(right);
    edges_left.push(k);
    edges_right.reverse();
    edges_left.extend(edges_right);
    OddCycle {
        components: left,
        edges: edges_left,
    }
}

/// The two classes of generator pairs in type A: `m = 3` and `m = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabledClasses {
    pub odd: Vec<(u8, u8)>,
    pub even: Vec<(u8, u8)>,
}

pub fn stabled_classes(n: usize) -> StabledClasses {
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for i in 1..=n as u8 {
        for j in i + 1..=n as u8 {
            if j - i == 1 {
                odd.push((i, j));
            } else {
                even.push((i, j));
            }
        }
    }
    StabledClasses { odd, even }
}

pub fn is_stabled(n: usize, z: &BTreeSet<(u8, u8)>) -> bool {
    let c = stabled_classes(n);
    let covers = |class: &[(u8, u8)]| {
        let hit = class.iter().filter(|p| z.contains(p)).count();
        hit == 0 || hit == class.len()
    };
    let known = z.iter().all(|p| c.odd.contains(p) || c.even.contains(p));
    known && covers(&c.odd) && covers(&c.even)
}

/// Inversion transpositions `(i, j)`, `i < j`, of the prefixes of a reduced word.
pub fn inversion_transpositions(word: &Word) -> Vec<(u8, u8)> {
    let mut p: Vec<u8> = (1..=word.rank() as u8 + 1).collect();
    word.letters()
        .iter()
        .map(|&s| {
            let i = s as usize;
            let (a, b) = (p[i - 1], p[i]);
            p.swap(i - 1, i);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn multi_permutation_sign(word: &Word) -> i8 {
    let mins: Vec<u8> = inversion_transpositions(word)
        .into_iter()
        .map(|(i, _)| i)
        .collect();
    let mut inv = 0usize;
    for a in 0..mins.len() {
        for b in a + 1..mins.len() {
            if mins[a] > mins[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of a reduced expression of `w0` in type A.
pub fn sign(word: &Word) -> Result<i8> {
    CoxeterGroup::A(word.rank()).sign(word)
}

/// Checks `sign(w2) = (-1)^(i-j) sign(w)` for words related by a flip `w \ w_i = w2 \ w2_j`.
pub fn flip_sign_consistency(w: &Word, w2: &Word, i: usize, j: usize) -> Result<bool> {
    let group = CoxeterGroup::A(w.rank());
    if i >= w.len() || j >= w2.len() {
        return Err(SubfanError::InvalidFlip(format!(
            "positions {i}, {j} out of range"
        )));
    }
    let mut a = w.letters().to_vec();
    a.remove(i);
    let mut b = w2.letters().to_vec();
    b.remove(j);
    if a != b {
        return Err(SubfanError::InvalidFlip(format!(
            "{w} without {i} differs from {w2} without {j}"
        )));
    }
    let s1 = group.sign(w)?;
    let s2 = group.sign(w2)?;
    let parity = if i.abs_diff(j).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(s2 == parity * s1)
}

/// Positive root of type A, as coefficients over the simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Self { coeffs }
    }

    /// `alpha_lo + ... + alpha_hi` (1-based, inclusive).
    pub fn interval(n: usize, lo: u8, hi: u8) -> Self {
        let coeffs = (1..=n as u8)
            .map(|k| i32::from(lo <= k && k <= hi))
            .collect();
        Self { coeffs }
    }

    /// Root `e_i - e_j` of the transposition `(i, j)`, `i < j`.
    pub fn of_transposition(n: usize, i: u8, j: u8) -> Self {
        Self::interval(n, i.min(j), i.max(j) - 1)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    /// Generators with non-zero coefficient.
    pub fn support(&self) -> Vec<u8> {
        (1..=self.rank() as u8)
            .filter(|&k| self.coeffs[k as usize - 1] != 0)
            .collect()
    }

    /// Positive roots of type A are 0/1 indicator vectors of non-empty intervals.
    pub fn is_positive(&self) -> bool {
        let s = self.support();
        !s.is_empty()
            && self.coeffs.iter().all(|&c| c == 0 || c == 1)
            && s.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.support().iter().map(u8::to_string).collect();
        write!(f, "a{}", s.join(""))
    }
}

pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for lo in 1..=n as u8 {
        for hi in lo..=n as u8 {
            out.push(Root::interval(n, lo, hi));
        }
    }
    out
}

pub fn is_coxeter_element(c: &Word) -> bool {
    let mut l = c.letters().to_vec();
    l.sort_unstable();
    l == (1..=c.rank() as u8).collect::<Vec<_>>()
}

fn require_coxeter(c: &Word) -> Result<()> {
    if is_coxeter_element(c) {
        Ok(())
    } else {
        Err(SubfanError::NotCoxeterElement(c.to_string()))
    }
}

/// Support of `alpha` and the restriction `c_alpha` of `c` to it.
pub fn parabolic_data(alpha: &Root, c: &Word) -> Result<(Vec<u8>, Word)> {
    require_coxeter(c)?;
    if alpha.rank() != c.rank() || !alpha.is_positive() {
        return Err(SubfanError::NotPositiveRoot(format!(
            "{:?}",
            alpha.coeffs()
        )));
    }
    let support = alpha.support();
    let letters = c
        .letters()
        .iter()
        .copied()
        .filter(|s| support.contains(s))
        .collect();
    Ok((
        support,
        Word {
            rank: c.rank(),
            letters,
        },
    ))
}

/// Leftmost greedy reduced expression of `w0` inside `c c c ...`.
pub fn sorted_word_w0(c: &Word) -> Result<Word> {
    require_coxeter(c)?;
    let n = c.rank();
    let target = n * (n + 1) / 2;
    let mut g = GroupElement::identity(n);
    let mut letters = Vec::with_capacity(target);
    let mut len = 0;
    'outer: for _ in 0..=target {
        for &s in c.letters() {
            if !g.has_right_descent(s) {
                g = g.mul_generator(s);
                letters.push(s);
                len += 1;
                if len == target {
                    break 'outer;
                }
            }
        }
    }
    Ok(Word { rank: n, letters })
}

//! Cartan data, weights, Weyl group words and braid moves.
//!
//! Conventions: indices are 1-based, and the Cartan matrix is
//! `a[i][j] = <alpha_j, alpha_i^vee>`, so that conjugating `x_j(s)` by the
//! torus element `t^{alpha_i^vee}` scales `s` by `t^{a[i][j]}`. Roots are
//! stored in the simple-root basis, weights in the fundamental-weight basis.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of words visited by [`CartanDatum::braid_path`]
/// and [`CartanDatum::reduced_words_of_longest`].
pub const DEFAULT_SEARCH_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Weight {
        let mut w = vec![0; rank];
        w[i - 1] = 1;
        Weight(w)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

/// A word in the simple reflections, letters in `1..=rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Word {
        Word(letters.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A Weyl group element, stored by its action on weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    action: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        let action = (0..rank)
            .map(|r| (0..rank).map(|c| i64::from(r == c)).collect())
            .collect();
        WeylElement { action }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.action
    }

    pub fn apply(&self, weight: &Weight) -> Weight {
        Weight(
            self.action
                .iter()
                .map(|row| row.iter().zip(&weight.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let n = self.action.len();
        let mut out = vec![vec![0; n]; n];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = (0..n).map(|k| self.action[r][k] * other.action[k][c]).sum();
            }
        }
        WeylElement { action: out }
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.action.len())
    }
}

/// One elementary braid move: the alternating block `first, second, first, ...`
/// of length `len` starting at 1-based `position` is replaced by
/// `second, first, second, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidMove {
    pub position: usize,
    pub first: usize,
    pub second: usize,
    pub len: usize,
}

impl BraidMove {
    pub fn apply(&self, word: &Word) -> Word {
        let mut letters = word.0.clone();
        let start = self.position - 1;
        for (k, slot) in letters[start..start + self.len].iter_mut().enumerate() {
            *slot = if k % 2 == 0 { self.second } else { self.first };
        }
        Word(letters)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CartanDatum {
    series: Series,
    rank: usize,
    matrix: Vec<Vec<i64>>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series && self.rank == other.rank && self.matrix == other.matrix
    }
}

impl Eq for CartanDatum {}

impl CartanDatum {
    /// The standard Cartan matrix of a finite type.
    pub fn new(series: Series, rank: usize) -> Result<CartanDatum> {
        let invalid = Error::InvalidType { series: series.letter(), rank };
        // Symmetrized form: root lengths on the diagonal, bond products off it.
        let mut form = vec![vec![0i64; rank]; rank];
        let link = |form: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            form[i - 1][j - 1] = v;
            form[j - 1][i - 1] = v;
        };
        match series {
            Series::A if rank >= 1 => {
                for i in 1..=rank {
                    form[i - 1][i - 1] = 2;
                }
                for i in 1..rank {
                    link(&mut form, i, i + 1, -1);
                }
            }
            Series::B if rank >= 2 => {
                for i in 1..rank {
                    form[i - 1][i - 1] = 2;
                }
                form[rank - 1][rank - 1] = 1;
                for i in 1..rank {
                    link(&mut form, i, i + 1, -1);
                }
            }
            Series::C if rank >= 2 => {
                for i in 1..rank {
                    form[i - 1][i - 1] = 2;
                }
                form[rank - 1][rank - 1] = 4;
                for i in 1..rank - 1 {
                    link(&mut form, i, i + 1, -1);
                }
                link(&mut form, rank - 1, rank, -2);
            }
            Series::D if rank >= 4 => {
                for i in 1..=rank {
                    form[i - 1][i - 1] = 2;
                }
                for i in 1..rank - 1 {
                    link(&mut form, i, i + 1, -1);
                }
                link(&mut form, rank - 2, rank, -1);
            }
            Series::E if (6..=8).contains(&rank) => {
                for i in 1..=rank {
                    form[i - 1][i - 1] = 2;
                }
                link(&mut form, 1, 3, -1);
                link(&mut form, 2, 4, -1);
                for i in 3..rank {
                    link(&mut form, i, i + 1, -1);
                }
            }
            Series::F if rank == 4 => {
                form[0][0] = 4;
                form[1][1] = 4;
                form[2][2] = 2;
                form[3][3] = 2;
                link(&mut form, 1, 2, -2);
                link(&mut form, 2, 3, -2);
                link(&mut form, 3, 4, -1);
            }
            Series::G if rank == 2 => {
                form[0][0] = 2;
                form[1][1] = 6;
                link(&mut form, 1, 2, -3);
            }
            _ => return Err(invalid),
        }
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / form[i][i]).collect())
            .collect();
        Ok(CartanDatum { series, rank, matrix })
    }

    /// A datum with an explicitly given matrix, validated as a generalized
    /// Cartan matrix of finite type.
    pub fn from_matrix(series: Series, matrix: Vec<Vec<i64>>) -> Result<CartanDatum> {
        let rank = matrix.len();
        if rank == 0 || matrix.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidCartanMatrix("matrix must be square and nonempty".into()));
        }
        for i in 0..rank {
            if matrix[i][i] != 2 {
                return Err(Error::InvalidCartanMatrix(format!("a[{0}][{0}] != 2", i + 1)));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(Error::InvalidCartanMatrix(format!("a[{}][{}] > 0", i + 1, j + 1)));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "a[{0}][{1}] and a[{1}][{0}] must vanish together",
                        i + 1,
                        j + 1
                    )));
                }
                if matrix[i][j] * matrix[j][i] > 3 {
                    return Err(Error::InvalidCartanMatrix("not of finite type".into()));
                }
            }
        }
        let datum = CartanDatum { series, rank, matrix };
        // Finite type iff the root closure terminates; the bound is far above E8.
        if datum.try_positive_roots(1000).is_none() {
            return Err(Error::InvalidCartanMatrix("root system is infinite".into()));
        }
        Ok(datum)
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `a[i][j]` with 1-based indices.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// The Langlands dual: transposed matrix; B and C are exchanged.
    pub fn langlands_dual(&self) -> CartanDatum {
        let series = match self.series {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        };
        let matrix = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.matrix[j][i]).collect())
            .collect();
        CartanDatum { series, rank: self.rank, matrix }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        word.0.iter().try_for_each(|&i| self.check_index(i))
    }

    /// Order of `s_i s_j` (2, 3, 4 or 6).
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.a(i, j) * self.a(j, i) {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => panic!("a_ij * a_ji = {p} is not of finite type"),
        }
    }

    /// Simple reflection on root coordinates.
    pub fn reflect_root(&self, i: usize, root: &[i64]) -> Vec<i64> {
        let pairing: i64 = (0..self.rank).map(|j| root[j] * self.matrix[i - 1][j]).sum();
        let mut out = root.to_vec();
        out[i - 1] -= pairing;
        out
    }

    /// `s_{i_1} ... s_{i_m}` applied to a root (rightmost letter acts first).
    pub fn word_on_root(&self, word: &[usize], root: &[i64]) -> Vec<i64> {
        word.iter().rev().fold(root.to_vec(), |acc, &i| self.reflect_root(i, &acc))
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut r = vec![0; self.rank];
        r[i - 1] = 1;
        r
    }

    /// A root (simple-root basis) expressed in fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        Weight((0..self.rank).map(|j| (0..self.rank).map(|i| root[i] * self.matrix[j][i]).sum()).collect())
    }

    fn try_positive_roots(&self, bound: usize) -> Option<Vec<Vec<i64>>> {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for i in 1..=self.rank {
            let r = self.simple_root(i);
            seen.insert(r.clone());
            order.push(r.clone());
            queue.push_back(r);
        }
        while let Some(root) = queue.pop_front() {
            for i in 1..=self.rank {
                let image = self.reflect_root(i, &root);
                if image.iter().all(|&c| c >= 0) && seen.insert(image.clone()) {
                    if seen.len() > bound {
                        return None;
                    }
                    order.push(image.clone());
                    queue.push_back(image);
                }
            }
        }
        order.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        Some(order)
    }

    /// Positive roots in the simple-root basis, sorted by height.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.try_positive_roots(usize::MAX).expect("finite type")
    }

    /// `N`, the length of the longest element.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots().len()
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_index(i)?;
        let mut w = WeylElement::identity(self.rank);
        // (s_i l)_j = l_j - l_i * a[j][i]
        for j in 0..self.rank {
            w.action[j][i - 1] -= self.matrix[j][i - 1];
        }
        Ok(w)
    }

    pub fn weyl_element(&self, word: &Word) -> Result<WeylElement> {
        word.0.iter().try_fold(WeylElement::identity(self.rank), |acc, &i| {
            Ok(acc.compose(&self.simple_reflection(i)?))
        })
    }

    /// `s_{i_1} ... s_{i_m}(weight)`.
    pub fn weyl_action(&self, word: &Word, weight: &Weight) -> Result<Weight> {
        self.check_word(word)?;
        if weight.0.len() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, found: weight.0.len() });
        }
        let mut w = weight.0.clone();
        for &i in word.0.iter().rev() {
            let c = w[i - 1];
            for (j, wj) in w.iter_mut().enumerate() {
                *wj -= c * self.matrix[j][i - 1];
            }
        }
        Ok(Weight(w))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, word: &Word) -> Result<usize> {
        self.check_word(word)?;
        Ok(self
            .positive_roots()
            .iter()
            .filter(|r| self.word_on_root(&word.0, r).iter().any(|&c| c < 0))
            .count())
    }

    pub fn is_reduced(&self, word: &Word) -> Result<bool> {
        Ok(self.length(word)? == word.len())
    }

    pub fn is_longest(&self, word: &Word) -> Result<bool> {
        Ok(word.len() == self.num_positive_roots() && self.is_reduced(word)?)
    }

    pub fn require_longest(&self, word: &Word) -> Result<()> {
        if self.is_longest(word)? {
            Ok(())
        } else {
            Err(Error::NotLongest(word.0.clone()))
        }
    }

    /// Greedy ascent: append the smallest letter that increases length.
    pub fn longest_word(&self) -> Word {
        let mut letters: Vec<usize> = Vec::new();
        'grow: loop {
            for i in 1..=self.rank {
                let image = self.word_on_root(&letters, &self.simple_root(i));
                if image.iter().all(|&c| c >= 0) {
                    letters.push(i);
                    continue 'grow;
                }
            }
            break;
        }
        Word(letters)
    }

    /// The involution `i -> i*` with `w_0(alpha_i) = -alpha_{i*}`.
    pub fn star(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        let w0 = self.longest_word();
        let image = self.word_on_root(&w0.0, &self.simple_root(i));
        image
            .iter()
            .position(|&c| c == -1)
            .filter(|_| image.iter().filter(|&&c| c != 0).count() == 1)
            .map(|p| p + 1)
            .ok_or_else(|| Error::InvalidCartanMatrix("w0 does not permute simple roots".into()))
    }

    pub fn star_permutation(&self) -> Vec<usize> {
        (1..=self.rank).map(|i| self.star(i).expect("index in range")).collect()
    }

    pub fn star_word(&self, word: &Word) -> Result<Word> {
        self.check_word(word)?;
        let perm = self.star_permutation();
        Ok(Word(word.0.iter().map(|&i| perm[i - 1]).collect()))
    }

    /// `-w_0(lambda)` for dominant `lambda`.
    pub fn lambda_omega(&self, lambda: &Weight) -> Result<Weight> {
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        let image = self.weyl_action(&self.longest_word(), lambda)?;
        Ok(Weight(image.0.iter().map(|c| -c).collect()))
    }

    /// `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})` in the simple-root basis.
    pub fn roots_along_word(&self, word: &Word) -> Result<Vec<Vec<i64>>> {
        if !self.is_reduced(word)? {
            return Err(Error::NotReduced(word.0.clone()));
        }
        Ok((0..word.len())
            .map(|k| self.word_on_root(&word.0[..k], &self.simple_root(word.0[k])))
            .collect())
    }

    fn moves_from(&self, word: &Word) -> Vec<(BraidMove, Word)> {
        let w = &word.0;
        let mut out = Vec::new();
        for p in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[p], w[p + 1]);
            if a == b {
                continue;
            }
            let m = self.braid_order(a, b);
            if p + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|k| w[p + k] == if k % 2 == 0 { a } else { b });
            if alternating {
                let mv = BraidMove { position: p + 1, first: a, second: b, len: m };
                let next = mv.apply(word);
                out.push((mv, next));
            }
        }
        out.sort_by(|x, y| x.1.cmp(&y.1));
        out
    }

    /// All braid-move neighbours of a word, sorted lexicographically.
    pub fn braid_neighbours(&self, word: &Word) -> Vec<(BraidMove, Word)> {
        self.moves_from(word)
    }

    /// A shortest sequence of braid moves from `from` to `to`, by breadth-first
    /// search over the reduced-word graph.
    pub fn braid_path(&self, from: &Word, to: &Word) -> Result<Vec<BraidMove>> {
        self.braid_path_bounded(from, to, DEFAULT_SEARCH_LIMIT)
    }

    pub fn braid_path_bounded(&self, from: &Word, to: &Word, limit: usize) -> Result<Vec<BraidMove>> {
        self.check_word(from)?;
        self.check_word(to)?;
        if !self.is_reduced(from)? {
            return Err(Error::NotReduced(from.0.clone()));
        }
        if !self.is_reduced(to)? {
            return Err(Error::NotReduced(to.0.clone()));
        }
        if from.len() != to.len() || self.weyl_element(from)? != self.weyl_element(to)? {
            return Err(Error::NotSameElement(from.0.clone(), to.0.clone()));
        }
        if from == to {
            return Ok(Vec::new());
        }
        let mut parent: HashMap<Word, (Word, BraidMove)> = HashMap::new();
        let mut visited: HashSet<Word> = HashSet::from([from.clone()]);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(word) = queue.pop_front() {
            for (mv, next) in self.moves_from(&word) {
                if !visited.insert(next.clone()) {
                    continue;
                }
                parent.insert(next.clone(), (word.clone(), mv));
                if &next == to {
                    let mut path = Vec::new();
                    let mut cur = next;
                    while let Some((prev, mv)) = parent.get(&cur) {
                        path.push(*mv);
                        cur = prev.clone();
                    }
                    path.reverse();
                    return Ok(path);
                }
                if visited.len() >= limit {
                    return Err(Error::PathSearchExhausted(visited.len()));
                }
                queue.push_back(next);
            }
        }
        Err(Error::PathSearchExhausted(visited.len()))
    }

    /// Every reduced word of `w_0`, in lexicographic order.
    pub fn reduced_words_of_longest(&self, limit: usize) -> Result<Vec<Word>> {
        let start = self.longest_word();
        let mut visited: HashSet<Word> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(word) = queue.pop_front() {
            for (_, next) in self.moves_from(&word) {
                if visited.insert(next.clone()) {
                    if visited.len() > limit {
                        return Err(Error::PathSearchExhausted(visited.len()));
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut words: Vec<Word> = visited.into_iter().collect();
        words.sort();
        Ok(words)
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

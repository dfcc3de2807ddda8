//! Type-A tableau crystals: the desk-scale oracle.
//!
//! Kashiwara operators act on the row reading word (rows bottom to top, each
//! left to right) by the signature rule: `i+1` opens a bracket, `i` closes
//! one, and `f_i` changes the rightmost unbracketed `i` into `i+1`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cartan::{CartanDatum, Series, Weight, Word};
use crate::error::{Error, Result};
use crate::parametrize::{anchor_from_lowest, schutz_affine_with_anchor};

/// Default cap on generated crystal sizes.
pub const DEFAULT_CRYSTAL_BOUND: usize = 100_000;

/// Semistandard tableau with entries in `1..=rank+1` (English notation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Tableau {
    rank: usize,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rank: usize, rows: Vec<Vec<usize>>) -> Result<Tableau> {
        let bad = |msg: &str| Err(Error::InvalidTableau(msg.to_string()));
        if rows.iter().any(Vec::is_empty) {
            return bad("empty row");
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return bad("row lengths must weakly decrease");
        }
        if rows.iter().flatten().any(|&x| x == 0 || x > rank + 1) {
            return bad("entry out of range");
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] > w[1])) {
            return bad("rows must weakly increase");
        }
        if rows.windows(2).any(|w| w[1].iter().zip(&w[0]).any(|(below, above)| below <= above)) {
            return bad("columns must strictly increase");
        }
        Ok(Tableau { rank, rows })
    }

    /// The highest-weight (Yamanouchi) tableau: row `r` filled with `r`.
    pub fn highest(rank: usize, lambda: &Weight) -> Result<Tableau> {
        check_lambda(rank, lambda)?;
        let rows = (1..=rank)
            .map(|r| vec![r; lambda.0[r - 1..].iter().map(|&c| c as usize).sum()])
            .filter(|row| !row.is_empty())
            .collect();
        Ok(Tableau { rank, rows })
    }

    /// The lowest-weight tableau: a column of height `h` holds `N-h+1..N`.
    pub fn lowest(rank: usize, lambda: &Weight) -> Result<Tableau> {
        let shape = Tableau::highest(rank, lambda)?.shape();
        let top = rank + 1;
        let height = |c: usize| shape.iter().filter(|&&len| len > c).count();
        let rows = shape
            .iter()
            .enumerate()
            .map(|(r, &len)| (0..len).map(|c| top - height(c) + r + 1).collect())
            .collect();
        Ok(Tableau { rank, rows })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// Row reading word with the cell each letter comes from.
    fn reading(&self) -> Vec<(usize, usize)> {
        (0..self.rows.len()).rev().flat_map(|r| (0..self.rows[r].len()).map(move |c| (r, c))).collect()
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.reading().into_iter().map(|(r, c)| self.rows[r][c]).collect()
    }

    /// Weight in fundamental-weight coordinates.
    pub fn weight(&self) -> Weight {
        let mut content = vec![0i64; self.rank + 2];
        for &x in self.rows.iter().flatten() {
            content[x] += 1;
        }
        Weight((1..=self.rank).map(|i| content[i] - content[i + 1]).collect())
    }

    /// Unbracketed cells: (`i` cells left to right, `i+1` cells left to right).
    fn signature(&self, i: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let mut open: Vec<(usize, usize)> = Vec::new();
        let mut lone: Vec<(usize, usize)> = Vec::new();
        for (r, c) in self.reading() {
            let x = self.rows[r][c];
            if x == i + 1 {
                open.push((r, c));
            } else if x == i && open.pop().is_none() {
                lone.push((r, c));
            }
        }
        (lone, open)
    }

    fn check_index(&self, i: usize) {
        assert!(i >= 1 && i <= self.rank, "crystal index {i} out of range");
    }

    pub fn eps(&self, i: usize) -> usize {
        self.check_index(i);
        self.signature(i).1.len()
    }

    pub fn phi(&self, i: usize) -> usize {
        self.check_index(i);
        self.signature(i).0.len()
    }

    pub fn apply_e(&self, i: usize) -> Option<Tableau> {
        self.check_index(i);
        let (_, open) = self.signature(i);
        let &(r, c) = open.first()?;
        let mut t = self.clone();
        t.rows[r][c] = i;
        Some(t)
    }

    pub fn apply_f(&self, i: usize) -> Option<Tableau> {
        self.check_index(i);
        let (lone, _) = self.signature(i);
        let &(r, c) = lone.last()?;
        let mut t = self.clone();
        t.rows[r][c] = i + 1;
        Some(t)
    }

    pub fn is_highest(&self) -> bool {
        (1..=self.rank).all(|i| self.eps(i) == 0)
    }

    pub fn is_lowest(&self) -> bool {
        (1..=self.rank).all(|i| self.phi(i) == 0)
    }

    /// Schützenberger evacuation: rotate by 180 degrees, complement
    /// `x -> rank + 2 - x`, rectify by jeu de taquin.
    pub fn evacuation(&self) -> Tableau {
        let width = self.rows.first().map_or(0, Vec::len);
        let top = self.rank + 2;
        let mut grid: Vec<Vec<Option<usize>>> = self
            .rows
            .iter()
            .rev()
            .map(|row| {
                let mut out = vec![None; width - row.len()];
                out.extend(row.iter().rev().map(|&x| Some(top - x)));
                out
            })
            .collect();
        rectify(&mut grid);
        Tableau { rank: self.rank, rows: grid.into_iter().map(|r| r.into_iter().map(|x| x.expect("filled")).collect()).collect() }
    }
}

/// Jeu de taquin rectification of a skew tableau whose holes sit at the left
/// of each row.
fn rectify(grid: &mut Vec<Vec<Option<usize>>>) {
    loop {
        let holes: Vec<usize> = grid.iter().map(|r| r.iter().take_while(|x| x.is_none()).count()).collect();
        // an inner corner: last hole of a row whose successor has fewer holes
        let Some(r0) = (0..grid.len()).rev().find(|&r| holes[r] > 0 && holes.get(r + 1).map_or(true, |&h| h < holes[r])) else {
            break;
        };
        let (mut r, mut c) = (r0, holes[r0] - 1);
        loop {
            let below = grid.get(r + 1).and_then(|row| row.get(c)).copied().flatten();
            let right = grid[r].get(c + 1).copied().flatten();
            match (below, right) {
                (None, None) => break,
                (Some(b), Some(x)) if b <= x => {
                    grid[r][c] = Some(b);
                    r += 1;
                }
                (Some(b), None) => {
                    grid[r][c] = Some(b);
                    r += 1;
                }
                (_, Some(x)) => {
                    grid[r][c] = Some(x);
                    c += 1;
                }
            }
            grid[r][c] = None;
        }
        grid[r].pop();
        grid.retain(|row| !row.is_empty());
    }
}

fn check_lambda(rank: usize, lambda: &Weight) -> Result<()> {
    if lambda.0.len() != rank {
        return Err(Error::LengthMismatch { expected: rank, found: lambda.0.len() });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    Ok(())
}

/// `dim V(lambda)` for `sl_{rank+1}` by the Weyl dimension formula.
pub fn weyl_dimension(rank: usize, lambda: &Weight) -> Result<u64> {
    check_lambda(rank, lambda)?;
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for i in 0..rank {
        for j in i + 1..=rank {
            let num: i64 = lambda.0[i..j].iter().sum::<i64>() + (j - i) as i64;
            acc *= BigRational::new(num.into(), ((j - i) as i64).into());
        }
    }
    acc.to_integer().to_u64().ok_or(Error::SizeBound(usize::MAX))
}

/// `B(lambda)` with its `f_i` edges.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    rank: usize,
    lambda: Weight,
    vertices: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    /// `(source, i, target)` with `target = f_i(source)`.
    edges: Vec<(usize, usize, usize)>,
    /// For each vertex but the first, an incoming BFS edge `(source, i)`.
    parent: Vec<Option<(usize, usize)>>,
}

pub fn generate_crystal(rank: usize, lambda: &Weight, bound: usize) -> Result<CrystalGraph> {
    let top = Tableau::highest(rank, lambda)?;
    if weyl_dimension(rank, lambda)? > bound as u64 {
        return Err(Error::SizeBound(bound));
    }
    let mut g = CrystalGraph {
        rank,
        lambda: lambda.clone(),
        vertices: vec![top.clone()],
        index: HashMap::from([(top, 0)]),
        edges: Vec::new(),
        parent: vec![None],
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for i in 1..=rank {
            let Some(t) = g.vertices[v].apply_f(i) else { continue };
            let target = match g.index.get(&t) {
                Some(&k) => k,
                None => {
                    if g.vertices.len() >= bound {
                        return Err(Error::SizeBound(bound));
                    }
                    let k = g.vertices.len();
                    g.index.insert(t.clone(), k);
                    g.vertices.push(t);
                    g.parent.push(Some((v, i)));
                    queue.push_back(k);
                    k
                }
            };
            g.edges.push((v, i, target));
        }
    }
    Ok(g)
}

impl CrystalGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Tableau] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn highest(&self) -> &Tableau {
        &self.vertices[0]
    }

    /// The unique vertex without outgoing edges.
    pub fn lowest_element(&self) -> Result<&Tableau> {
        let mut sinks = self.vertices.iter().filter(|t| t.is_lowest());
        match (sinks.next(), sinks.next()) {
            (Some(t), None) => Ok(t),
            _ => Err(Error::NotUnique("lowest element")),
        }
    }

    /// Evacuation read off the crystal: `eta(highest) = lowest` and
    /// `eta(f_i b) = e_{i*} eta(b)`, propagated along BFS edges.
    pub fn evacuation_via_crystal(&self) -> Result<Vec<usize>> {
        let n = self.rank;
        let low = self.index[self.lowest_element()?];
        let mut image = vec![usize::MAX; self.len()];
        image[0] = low;
        for v in 1..self.len() {
            let (src, i) = self.parent[v].expect("non-root has a parent");
            let t = self.vertices[image[src]].apply_e(n + 1 - i).ok_or(Error::NotUnique("evacuation image"))?;
            image[v] = self.index[&t];
        }
        Ok(image)
    }

    /// Graphviz rendering; vertices labelled by their rows.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (k, t) in self.vertices.iter().enumerate() {
            let label: Vec<String> =
                t.rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
            writeln!(out, "  v{k} [label=\"{}\"];", label.join("\\n")).expect("write to string");
        }
        for &(s, i, t) in &self.edges {
            writeln!(out, "  v{s} -> v{t} [label=\"{i}\"];").expect("write to string");
        }
        out.push_str("}\n");
        out
    }
}

/// String parametrization: `t_k = eps_{i_k}`, then raise all the way.
pub fn string_extract(b: &Tableau, word: &Word) -> Result<Vec<i64>> {
    let mut cur = b.clone();
    let mut out = Vec::with_capacity(word.len());
    for &i in &word.0 {
        if i == 0 || i > b.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: b.rank });
        }
        let k = cur.eps(i);
        for _ in 0..k {
            cur = cur.apply_e(i).expect("eps counts defined steps");
        }
        out.push(k as i64);
    }
    if !cur.is_highest() {
        return Err(Error::ResidueNotHighest);
    }
    Ok(out)
}

/// Inverse of [`string_extract`]: `f_{i_1}^{t_1} ... f_{i_N}^{t_N} v_lambda`,
/// rejected unless `t` lies in the string cone of `lambda`.
pub fn string_decode(rank: usize, lambda: &Weight, word: &Word, t: &[i64]) -> Result<Tableau> {
    if t.len() != word.len() {
        return Err(Error::LengthMismatch { expected: word.len(), found: t.len() });
    }
    let outside = || Error::OutsideStringCone(t.to_vec());
    let mut cur = Tableau::highest(rank, lambda)?;
    for (&i, &k) in word.0.iter().zip(t).rev() {
        if k < 0 {
            return Err(outside());
        }
        for _ in 0..k {
            cur = cur.apply_f(i).ok_or_else(outside)?;
        }
    }
    if string_extract(&cur, word)? != t {
        return Err(outside());
    }
    Ok(cur)
}

/// One element of the validation table.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryRow {
    pub tableau: Vec<Vec<usize>>,
    pub weight: Weight,
    pub t: Vec<i64>,
    pub t_prime: Vec<i64>,
}

/// Outcome of checking the affine involution formula on all of `B(lambda)`.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryReport {
    pub rank: usize,
    pub lambda: Weight,
    pub word: Word,
    pub anchor: Vec<i64>,
    pub nonnegative: bool,
    pub injective: bool,
    pub weight_identity: bool,
    pub endpoints: bool,
    pub equivariance: bool,
    pub evacuation_routes_agree: bool,
    pub lusztig_first_step: bool,
    pub rows: Vec<CorollaryRow>,
}

impl CorollaryReport {
    pub fn pass(&self) -> bool {
        self.nonnegative
            && self.injective
            && self.weight_identity
            && self.endpoints
            && self.equivariance
            && self.evacuation_routes_agree
            && self.lusztig_first_step
    }
}

/// Runs the full corollary harness for `sl_{rank+1}`, `lambda`, `word`.
pub fn verify_corollary(rank: usize, lambda: &Weight, word: &Word) -> Result<CorollaryReport> {
    verify_corollary_bounded(rank, lambda, word, DEFAULT_CRYSTAL_BOUND)
}

pub fn verify_corollary_bounded(rank: usize, lambda: &Weight, word: &Word, bound: usize) -> Result<CorollaryReport> {
    let datum = CartanDatum::new(Series::A, rank)?;
    datum.require_longest(word)?;
    let graph = generate_crystal(rank, lambda, bound)?;
    verify_corollary_on(&datum, &graph, word)
}

/// The harness on an already generated crystal.
pub fn verify_corollary_on(datum: &CartanDatum, graph: &CrystalGraph, word: &Word) -> Result<CorollaryReport> {
    let n = datum.rank();
    let lambda = graph.lambda().clone();
    let lowest = graph.lowest_element()?;
    let anchor = anchor_from_lowest(datum, word, lowest)?;
    let schutz = schutz_affine_with_anchor(datum, word, anchor.clone())?;
    let star_word = datum.star_word(word)?;
    let betas = datum.roots_along_word(&star_word)?;
    let w0_lambda = datum.weyl_action(&datum.longest_word(), &lambda)?;

    let strings: Vec<Vec<i64>> = graph.vertices().iter().map(|b| string_extract(b, word)).collect::<Result<_>>()?;
    let images: Vec<Vec<i64>> = strings.iter().map(|t| schutz.apply(t)).collect();

    let nonnegative = images.iter().all(|t| t.iter().all(|&x| x >= 0));
    let injective = images.iter().collect::<HashSet<_>>().len() == images.len();

    // lambda - sum t'_k beta_k = w0(lambda) + sum t_k alpha_{i_k*}, compared
    // in fundamental-weight coordinates
    let weight_identity = strings.iter().zip(&images).all(|(t, tp)| {
        let mut lhs = lambda.0.clone();
        for (beta, &c) in betas.iter().zip(tp) {
            for (x, y) in lhs.iter_mut().zip(&datum.root_to_weight(beta).0) {
                *x -= c * y;
            }
        }
        let mut rhs = w0_lambda.0.clone();
        for (&i, &c) in star_word.0.iter().zip(t) {
            for (x, y) in rhs.iter_mut().zip(&datum.root_to_weight(&datum.simple_root(i)).0) {
                *x += c * y;
            }
        }
        lhs == rhs
    });

    let low_idx = graph.index_of(lowest).expect("lowest is a vertex");
    let endpoints = images[0] == anchor && images[low_idx].iter().all(|&x| x == 0);

    let evac: Vec<usize> = graph
        .vertices()
        .iter()
        .map(|b| graph.index_of(&b.evacuation()).ok_or(Error::InvalidTableau("evacuation left the crystal".into())))
        .collect::<Result<_>>()?;
    let evacuation_routes_agree = evac == graph.evacuation_via_crystal()?;

    // f_{j*}(eta(f_j b')) = eta(b')
    let equivariance = graph.edges().iter().all(|&(src, j, dst)| {
        graph.vertices()[evac[dst]].apply_f(n + 1 - j).as_ref() == Some(&graph.vertices()[evac[src]])
    });

    // L(b) := schutz(c_i(eta(b))) are Lusztig data w.r.t. i*; along f_{i*_1}
    // they must step by the first unit vector.
    let lusztig: Vec<&Vec<i64>> = evac.iter().map(|&k| &images[k]).collect();
    let first = star_word.0[0];
    let lusztig_first_step = graph.edges().iter().filter(|&&(_, j, _)| j == first).all(|&(src, _, dst)| {
        let mut expected = lusztig[src].clone();
        expected[0] += 1;
        *lusztig[dst] == expected
    });

    let rows = graph
        .vertices()
        .iter()
        .zip(strings.iter().zip(&images))
        .map(|(b, (t, tp))| CorollaryRow { tableau: b.rows.clone(), weight: b.weight(), t: t.clone(), t_prime: tp.clone() })
        .collect();

    Ok(CorollaryReport {
        rank: n,
        lambda,
        word: word.clone(),
        anchor,
        nonnegative,
        injective,
        weight_identity,
        endpoints,
        equivariance,
        evacuation_routes_agree,
        lusztig_first_step,
        rows,
    })
}

#[cfg(test)]
mod tests;

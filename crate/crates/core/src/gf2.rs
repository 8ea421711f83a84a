//! Symmetric matrices over GF(2), the delta-matroid `D(C)` of nonsingular
//! principal submatrices, and the inverse construction for normal binary
//! delta-matroids.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::set_system::{check_lattice_size, low_bits, ones, DeltaMatroid, GroundSet, SetSystem, SubsetMask};

/// Symmetric 0/1 matrix with one row bitset per labelled element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2SymMatrix {
    ground: GroundSet,
    rows: Vec<u64>,
}

impl Gf2SymMatrix {
    pub fn new(ground: GroundSet, rows: Vec<u64>) -> Result<Self> {
        let n = ground.len();
        if rows.len() != n {
            return Err(Error::OutOfRange(format!("expected {n} rows, got {}", rows.len())));
        }
        for (i, &row) in rows.iter().enumerate() {
            if row & !low_bits(n) != 0 {
                return Err(Error::MaskOutOfRange { bits: row, size: n });
            }
            for j in ones(row) {
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { ground, rows })
    }

    /// Builds an `n × n` matrix labelled `1..=n` from a list of `0`/`1` rows.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let bits = rows
            .iter()
            .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &v)| acc | u64::from(v & 1) << j))
            .collect();
        Self::new(GroundSet::numbered(rows.len())?, bits)
    }

    /// Number of free entries of a symmetric `n × n` matrix (upper triangle
    /// with the diagonal).
    pub fn upper_len(n: usize) -> usize {
        n * (n + 1) / 2
    }

    /// Decodes an enumeration code: bit `k` is the `k`-th entry of the upper
    /// triangle (diagonal included) read row by row.
    pub fn from_upper_code(n: usize, code: u64) -> Self {
        assert!(Self::upper_len(n) <= 64, "matrix too large for a 64-bit code");
        let mut rows = vec![0u64; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                if code >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Self { ground: GroundSet::numbered(n).expect("n fits"), rows }
    }

    pub fn upper_code(&self) -> u64 {
        let n = self.size();
        let mut code = 0u64;
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                code |= (self.rows[i] >> j & 1) << k;
                k += 1;
            }
        }
        code
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Bitset of the diagonal.
    pub fn diagonal(&self) -> u64 {
        self.rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | (r >> i & 1) << i)
    }

    pub fn with_labels(mut self, ground: GroundSet) -> Result<Self> {
        if ground.len() != self.size() {
            return Err(Error::OutOfRange(format!("{} labels for a {}×{} matrix", ground.len(), self.size(), self.size())));
        }
        self.ground = ground;
        Ok(self)
    }
}

/// Rank over GF(2) of the rows in `rows`, restricted to the columns in
/// `cols`. Works on its own copy.
fn rank_on(rows: impl Iterator<Item = u64>, cols: u64) -> usize {
    let mut work: Vec<u64> = rows.map(|r| r & cols).collect();
    let mut rank = 0;
    for col in ones(cols) {
        let bit = 1u64 << col;
        let Some(p) = (rank..work.len()).find(|&i| work[i] & bit != 0) else {
            continue;
        };
        work.swap(rank, p);
        let pivot = work[rank];
        for r in work.iter_mut().skip(rank + 1) {
            if *r & bit != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

#[inline]
fn principal_nonsingular_bits(c: &Gf2SymMatrix, a: u64) -> bool {
    rank_on(ones(a).map(|i| c.rows[i]), a) == a.count_ones() as usize
}

/// Whether `C[A]` has full rank over GF(2). `C[∅]` counts as nonsingular.
pub fn principal_nonsingular(c: &Gf2SymMatrix, a: SubsetMask) -> Result<bool> {
    if a.ground_size() != c.size() {
        return Err(Error::MismatchedGround { left: c.size(), right: a.ground_size() });
    }
    Ok(principal_nonsingular_bits(c, a.bits()))
}

/// Feasible sets of `D(C)` as raw bit patterns in increasing numeric order.
pub(crate) fn nonsingular_subsets(c: &Gf2SymMatrix) -> Vec<u64> {
    (0..1u64 << c.size()).filter(|&a| principal_nonsingular_bits(c, a)).collect()
}

/// `D(C)`: all `A` whose principal submatrix `C[A]` is nonsingular.
pub fn delta_matroid_of_matrix(c: &Gf2SymMatrix) -> Result<DeltaMatroid> {
    check_lattice_size(c.size())?;
    let family = nonsingular_subsets(c);
    Ok(DeltaMatroid::from_trusted(SetSystem::from_bits(c.ground.clone(), family)))
}

/// Reads `C` off a normal delta-matroid: the singletons give the diagonal and
/// the pairs give the off-diagonal entries.
pub fn reconstruct_matrix(d: &DeltaMatroid) -> Result<Gf2SymMatrix> {
    if !d.contains_bits(0) {
        return Err(Error::NotNormal);
    }
    let n = d.size();
    let mut rows = vec![0u64; n];
    let single: Vec<bool> = (0..n).map(|v| d.contains_bits(1 << v)).collect();
    for v in 0..n {
        if single[v] {
            rows[v] |= 1 << v;
        }
        for u in 0..v {
            let pair = d.contains_bits(1 << u | 1 << v);
            let both = single[u] && single[v];
            if both != pair {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
    }
    Ok(Gf2SymMatrix { ground: d.ground().clone(), rows })
}

/// The unique `C` with `D(C) = d`, if there is one.
pub fn is_normal_binary(d: &DeltaMatroid) -> Result<Option<Gf2SymMatrix>> {
    check_lattice_size(d.size())?;
    let c = reconstruct_matrix(d)?;
    let family = nonsingular_subsets(&c);
    let same = family.len() == d.family_len() && family.iter().all(|&a| d.contains_bits(a));
    Ok(same.then_some(c))
}

/// Undirected graph whose vertices may carry loops. Edges between distinct
/// vertices live in `adjacency`; loops are kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopyGraph {
    vertices: Vec<String>,
    adjacency: Vec<u64>,
    loops: u64,
}

impl LoopyGraph {
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        let n = vertices.len();
        if n > 64 {
            return Err(Error::SizeCap { size: n, cap: 64 });
        }
        let mut adjacency = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::ElementOutOfRange { index: u.max(v), size: n });
            }
            if u == v {
                return Err(Error::OutOfRange(format!("edge ({u}, {v}) is a loop; pass it in `loops`")));
            }
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
        }
        let mut loop_bits = 0u64;
        for &v in loops {
            if v >= n {
                return Err(Error::ElementOutOfRange { index: v, size: n });
            }
            loop_bits |= 1 << v;
        }
        Ok(Self { vertices, adjacency, loops: loop_bits })
    }

    pub(crate) fn from_parts(vertices: Vec<String>, adjacency: Vec<u64>, loops: u64) -> Self {
        debug_assert!(adjacency.iter().enumerate().all(|(i, &r)| r >> i & 1 == 0));
        Self { vertices, adjacency, loops }
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] >> v & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        ones(self.loops)
    }

    /// Each edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| ones(row & !low_bits(u + 1)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }
}

/// `G_D`: an edge `uv` for every off-diagonal one, a loop for every diagonal one.
pub fn intersection_graph(c: &Gf2SymMatrix) -> LoopyGraph {
    let diagonal = c.diagonal();
    let adjacency = c.rows.iter().enumerate().map(|(i, &r)| r & !(1 << i)).collect();
    LoopyGraph::from_parts(c.ground.labels().to_vec(), adjacency, diagonal)
}

/// Reads the matrix text format: an optional `labels:` line, the order `n`,
/// then `n` rows of `n` characters from `{0,1}`.
impl FromStr for Gf2SymMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let (mut line_no, mut line) = lines.next().ok_or_else(|| parse_err(0, "empty matrix file".into()))?;
        let mut labels = None;
        if let Some(rest) = line.strip_prefix("labels:") {
            labels = Some(GroundSet::new(rest.split_whitespace())?);
            (line_no, line) = lines.next().ok_or_else(|| parse_err(line_no, "missing matrix order".into()))?;
        }
        let n: usize = line.parse().map_err(|_| parse_err(line_no, format!("expected the matrix order, got `{line}`")))?;
        if n > 64 {
            return Err(Error::SizeCap { size: n, cap: 64 });
        }
        let ground = match labels {
            Some(g) if g.len() != n => {
                return Err(parse_err(line_no, format!("{} labels for order {n}", g.len())));
            }
            Some(g) => g,
            None => GroundSet::numbered(n)?,
        };
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| parse_err(0, format!("expected {n} rows, got {i}")))?;
            if line.chars().count() != n {
                return Err(parse_err(line_no, format!("row has {} entries, expected {n}", line.chars().count())));
            }
            let mut row = 0u64;
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row |= 1 << j,
                    other => return Err(parse_err(line_no, format!("unexpected character `{other}`"))),
                }
            }
            rows.push(row);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(parse_err(line_no, "trailing content after the matrix".into()));
        }
        Self::new(ground, rows)
    }
}

impl fmt::Display for Gf2SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        if self.ground != GroundSet::numbered(n).expect("n fits") {
            writeln!(f, "labels: {}", self.ground.labels().join(" "))?;
        }
        writeln!(f, "{n}")?;
        for &row in &self.rows {
            let line: String = (0..n).map(|j| if row >> j & 1 == 1 { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

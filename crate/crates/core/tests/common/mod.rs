//! Slow, set-based reference implementations. Nothing here touches the
//! bitmask paths of the library except to convert inputs.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dmkit::{Gf2SymMatrix, SetSystem};

pub type Set = BTreeSet<usize>;
pub type Family = BTreeSet<Set>;

pub fn all_subsets(n: usize) -> Vec<Set> {
    (0..1u32 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

pub fn family_of(s: &SetSystem) -> Family {
    s.feasible().map(|m| m.iter().collect()).collect()
}

pub fn sym_diff(a: &Set, b: &Set) -> Set {
    a.symmetric_difference(b).copied().collect()
}

/// Direct transcription of the symmetric exchange axiom.
pub fn exchange_holds(fam: &Family) -> bool {
    if fam.is_empty() {
        return false;
    }
    for x in fam {
        for y in fam {
            let d = sym_diff(x, y);
            for &u in &d {
                let found = d.iter().any(|&v| {
                    let uv: Set = [u, v].into_iter().collect();
                    fam.contains(&sym_diff(x, &uv))
                });
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

pub fn twist(fam: &Family, a: &Set) -> Family {
    fam.iter().map(|x| sym_diff(a, x)).collect()
}

pub fn width(fam: &Family) -> usize {
    let sizes: Vec<usize> = fam.iter().map(BTreeSet::len).collect();
    sizes.iter().max().unwrap() - sizes.iter().min().unwrap()
}

/// `Σ_A z^{w(D*A)}` as exponent → coefficient.
pub fn twist_poly(fam: &Family, n: usize) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for a in all_subsets(n) {
        *out.entry(width(&twist(fam, &a)) as u32).or_insert(0) += 1;
    }
    out
}

pub fn poly_product(a: &BTreeMap<u32, u64>, b: &BTreeMap<u32, u64>) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out
}

/// Largest feasible set contained in `a`, by scanning the family.
pub fn maxcard(fam: &Family, a: &Set) -> Option<usize> {
    fam.iter().filter(|f| f.is_subset(a)).map(BTreeSet::len).max()
}

pub fn entries(c: &Gf2SymMatrix) -> Vec<Vec<u8>> {
    (0..c.size()).map(|i| (0..c.size()).map(|j| u8::from(c.get(i, j))).collect()).collect()
}

/// Determinant over GF(2) by Laplace expansion along the first row.
pub fn det_gf2(m: &[Vec<u8>]) -> u8 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0u8;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<u8>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()).collect();
        acc ^= det_gf2(&minor);
    }
    acc
}

pub fn principal(m: &[Vec<u8>], a: &Set) -> Vec<Vec<u8>> {
    a.iter().map(|&i| a.iter().map(|&j| m[i][j]).collect()).collect()
}

/// `D(C)` straight from determinants.
pub fn d_of_c(c: &Gf2SymMatrix) -> Family {
    let m = entries(c);
    all_subsets(c.size()).into_iter().filter(|a| det_gf2(&principal(&m, a)) == 1).collect()
}

/// Connectivity of the graph with an edge wherever `C` has an off-diagonal one.
pub fn graph_connected(c: &Gf2SymMatrix) -> bool {
    let n = c.size();
    let m = entries(c);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if u != v && m[v][u] == 1 && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Every symmetric `n × n` matrix over GF(2).
pub fn all_matrices(n: usize) -> impl Iterator<Item = Gf2SymMatrix> {
    (0..1u64 << Gf2SymMatrix::upper_len(n)).map(move |code| Gf2SymMatrix::from_upper_code(n, code))
}

//! Monomial prediction from the intersection graph, checked against the
//! twist polynomial itself, plus an exhaustive census over all symmetric
//! GF(2) matrices of a given order.
//!
//! A normal binary delta-matroid `D(C)` has a single-term twist polynomial
//! exactly when every connected component of its intersection graph is
//! either a loopless complete graph of odd order (a lone loopless vertex
//! included) or a single vertex carrying a loop.

use std::fmt;
use std::thread;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{delta_matroid_of_matrix, intersection_graph, Gf2SymMatrix, LoopyGraph};
use crate::ops::{self, element_kind, rank_bounds, width};
use crate::set_system::{low_bits, ones, DeltaMatroid};
use crate::twist_poly::{is_monomial, twist_polynomial_fast, twist_polynomial_naive, TwistPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    CompleteOddLoopless,
    SingleVertexLoop,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentShape {
    pub kind: ShapeKind,
    pub order: usize,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ShapeKind::CompleteOddLoopless => write!(f, "complete-odd order {}", self.order),
            ShapeKind::SingleVertexLoop => write!(f, "loop-vertex"),
            ShapeKind::Other => write!(f, "other order {}", self.order),
        }
    }
}

/// Vertex sets of the connected components, in order of their smallest vertex.
pub(crate) fn component_masks(g: &LoopyGraph) -> Vec<u64> {
    let mut unseen = low_bits(g.order());
    let mut out = Vec::new();
    while unseen != 0 {
        let start = unseen & unseen.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in ones(frontier) {
                next |= g.neighbours(v);
            }
            frontier = next & !comp;
            comp |= next;
        }
        unseen &= !comp;
        out.push(comp);
    }
    out
}

fn induced(g: &LoopyGraph, keep: u64) -> LoopyGraph {
    let index: Vec<usize> = ones(keep).collect();
    let vertices = index.iter().map(|&v| g.vertices()[v].clone()).collect();
    let adjacency = index.iter().map(|&v| ops::pack(g.neighbours(v), keep)).collect();
    let loops = index.iter().enumerate().fold(0u64, |acc, (k, &v)| acc | u64::from(g.has_loop(v)) << k);
    LoopyGraph::from_parts(vertices, adjacency, loops)
}

pub fn connected_components(g: &LoopyGraph) -> Vec<LoopyGraph> {
    component_masks(g).into_iter().map(|m| induced(g, m)).collect()
}

pub fn is_connected_graph(g: &LoopyGraph) -> bool {
    component_masks(g).len() == 1
}

fn shape_of_connected(g: &LoopyGraph) -> ComponentShape {
    let order = g.order();
    let loops = g.loops().count();
    let kind = if order == 1 && loops == 1 {
        ShapeKind::SingleVertexLoop
    } else if order % 2 == 1 && loops == 0 && g.edge_count() == order * (order - 1) / 2 {
        ShapeKind::CompleteOddLoopless
    } else {
        ShapeKind::Other
    };
    ComponentShape { kind, order }
}

pub fn component_shape(g: &LoopyGraph) -> Result<ComponentShape> {
    if !is_connected_graph(g) {
        return Err(Error::Disconnected);
    }
    Ok(shape_of_connected(g))
}

pub fn component_shapes(g: &LoopyGraph) -> Vec<ComponentShape> {
    connected_components(g).iter().map(shape_of_connected).collect()
}

/// Predicted from the graph alone: every component must be an odd loopless
/// clique or a looped singleton.
pub fn predicts_monomial(c: &Gf2SymMatrix) -> bool {
    component_shapes(&intersection_graph(c)).iter().all(|s| s.kind != ShapeKind::Other)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub predicted: bool,
    pub actual: bool,
    pub polynomial: TwistPolynomial,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.predicted == self.actual
    }
}

pub fn cross_check(c: &Gf2SymMatrix) -> Result<CrossCheck> {
    let d = delta_matroid_of_matrix(c)?;
    let polynomial = twist_polynomial_fast(&d)?;
    Ok(CrossCheck { predicted: predicts_monomial(c), actual: is_monomial(&polynomial).is_some(), polynomial })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Lemma {
    /// Minimum feasible sets vs. sets `F ∪ e` one larger, for a
    /// non-orientable ribbon loop `e`.
    NonOrientableLift,
    /// Non-ribbon loops survive contraction of a non-orientable ribbon loop.
    ContractKeepsNonRibbon,
    /// Ribbon loops under duality when `w(D) = w(D*e)`.
    DualRibbonLoop,
    /// Connected, odd and monomial forces `({1}, {∅, {1}})`.
    ConnectedOddMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFailure {
    pub lemma: Lemma,
    pub detail: String,
}

pub const LEMMA_CAP: usize = 12;

/// Instantiates the lemma hypotheses on `D(C)` (and, where the statement is
/// about arbitrary delta-matroids, on every twist of it) and reports each
/// conclusion that does not hold.
pub fn verify_lemmas(c: &Gf2SymMatrix) -> Result<Vec<LemmaFailure>> {
    let n = c.size();
    if n > LEMMA_CAP {
        return Err(Error::SizeCap { size: n, cap: LEMMA_CAP });
    }
    let d = delta_matroid_of_matrix(c)?;
    let mut failures = Vec::new();
    for a in 0..1u64 << n {
        let twisted = ops::twist(&d, mask(&d, a))?;
        check_non_orientable_lift(&twisted, a, &mut failures)?;
        check_contract_keeps_non_ribbon(&twisted, a, &mut failures)?;
        if twisted.contains_bits(0) {
            check_dual_ribbon_loop(&twisted, a, &mut failures)?;
        }
    }
    check_connected_odd_monomial(&d, &mut failures)?;
    Ok(failures)
}

fn mask(d: &DeltaMatroid, bits: u64) -> crate::SubsetMask {
    crate::SubsetMask::new(bits, d.size()).expect("bits within ground set")
}

fn fail(failures: &mut Vec<LemmaFailure>, lemma: Lemma, d: &DeltaMatroid, twist: u64, detail: String) {
    let twist = d.ground().format_bits(twist);
    failures.push(LemmaFailure { lemma, detail: format!("twist {twist}: {detail}") });
}

fn check_non_orientable_lift(d: &DeltaMatroid, twist: u64, failures: &mut Vec<LemmaFailure>) -> Result<()> {
    let r_min = rank_bounds(d).r_min as u32;
    let full = low_bits(d.size());
    for e in 0..d.size() {
        if !element_kind(d, e)?.is_non_orientable_ribbon_loop() {
            continue;
        }
        let bit = 1u64 << e;
        let rest = full & !bit;
        // every F ⊆ E − e
        let mut f = 0u64;
        loop {
            let is_min_basis = f.count_ones() == r_min && d.contains_bits(f);
            let lifts = f.count_ones() + 1 == r_min + 1 && d.contains_bits(f | bit);
            if is_min_basis != lifts {
                fail(
                    failures,
                    Lemma::NonOrientableLift,
                    d,
                    twist,
                    format!("e={} F={}", d.ground().label(e), d.ground().format_bits(f)),
                );
            }
            if f == rest {
                break;
            }
            f = (f | bit).wrapping_add(1) & rest;
        }
    }
    Ok(())
}

fn non_ribbon(d: &DeltaMatroid, e: usize) -> Result<bool> {
    Ok(!element_kind(d, e)?.is_ribbon_loop)
}

fn check_contract_keeps_non_ribbon(d: &DeltaMatroid, twist: u64, failures: &mut Vec<LemmaFailure>) -> Result<()> {
    for e in 0..d.size() {
        if !element_kind(d, e)?.is_non_orientable_ribbon_loop() {
            continue;
        }
        let contracted = ops::contract(d, e)?;
        for f in (0..d.size()).filter(|&f| f != e) {
            if !non_ribbon(d, f)? {
                continue;
            }
            let f_after = if f > e { f - 1 } else { f };
            if !non_ribbon(&contracted, f_after)? {
                fail(
                    failures,
                    Lemma::ContractKeepsNonRibbon,
                    d,
                    twist,
                    format!("e={} f={}", d.ground().label(e), d.ground().label(f)),
                );
            }
        }
    }
    Ok(())
}

fn check_dual_ribbon_loop(d: &DeltaMatroid, twist: u64, failures: &mut Vec<LemmaFailure>) -> Result<()> {
    let w = width(d);
    let dual = ops::dual(d);
    for e in 0..d.size() {
        let kind = element_kind(d, e)?;
        let Some(orientable) = kind.ribbon_orientable else {
            continue;
        };
        if width(&ops::twist(d, mask(d, 1 << e))?) != w {
            continue;
        }
        let in_dual = element_kind(&dual, e)?;
        let holds = if orientable { !in_dual.is_ribbon_loop } else { in_dual.is_non_orientable_ribbon_loop() };
        if !holds {
            let expected = if orientable { "non-ribbon loop" } else { "non-orientable ribbon loop" };
            fail(
                failures,
                Lemma::DualRibbonLoop,
                d,
                twist,
                format!("e={} should be a {expected} of the dual", d.ground().label(e)),
            );
        }
    }
    Ok(())
}

fn check_connected_odd_monomial(d: &DeltaMatroid, failures: &mut Vec<LemmaFailure>) -> Result<()> {
    if d.size() == 0 || !d.flags().odd() || !ops::is_connected(d)? {
        return Ok(());
    }
    let p = twist_polynomial_fast(d)?;
    if is_monomial(&p).is_some() && !(d.size() == 1 && d.feasible_bits() == [0, 1]) {
        failures.push(LemmaFailure {
            lemma: Lemma::ConnectedOddMonomial,
            detail: format!("connected odd D(C) on {} elements has monomial polynomial {p}", d.size()),
        });
    }
    Ok(())
}

/// Largest order the census accepts.
pub const VERIFY_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Matrix in the matrix text format.
    pub matrix: String,
    pub predicted: bool,
    pub actual: bool,
    pub fast: TwistPolynomial,
    pub naive: TwistPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixLemmaFailure {
    pub matrix: String,
    #[serde(flatten)]
    pub failure: LemmaFailure,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub matrices_checked: u64,
    pub monomial_count: u64,
    /// Matrices whose `D(C)` is connected and odd.
    pub connected_odd_count: u64,
    pub connected_odd_monomial_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub lemma_failures: Vec<MatrixLemmaFailure>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.counterexamples.is_empty() && self.lemma_failures.is_empty()
    }

    pub fn agreements(&self) -> u64 {
        self.matrices_checked - self.counterexamples.len() as u64
    }

    fn merge(&mut self, other: VerificationReport) {
        self.matrices_checked += other.matrices_checked;
        self.monomial_count += other.monomial_count;
        self.connected_odd_count += other.connected_odd_count;
        self.connected_odd_monomial_count += other.connected_odd_monomial_count;
        self.counterexamples.extend(other.counterexamples);
        self.lemma_failures.extend(other.lemma_failures);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.is_valid() { "ok" } else { "FAILED" };
        write!(
            f,
            "n={}: {}/{} {status}; monomial {}; lemma failures {}",
            self.n,
            self.agreements(),
            self.matrices_checked,
            self.monomial_count,
            self.lemma_failures.len()
        )
    }
}

fn verify_range(n: usize, codes: std::ops::Range<u64>, lemmas: bool) -> Result<VerificationReport> {
    let mut report = VerificationReport { n, ..Default::default() };
    for code in codes {
        let c = Gf2SymMatrix::from_upper_code(n, code);
        let check = cross_check(&c)?;
        report.matrices_checked += 1;
        if check.actual {
            report.monomial_count += 1;
        }
        let d = delta_matroid_of_matrix(&c)?;
        if d.flags().odd() && ops::is_connected(&d)? {
            report.connected_odd_count += 1;
            report.connected_odd_monomial_count += u64::from(check.actual);
        }
        if !check.agrees() {
            report.counterexamples.push(Counterexample {
                matrix: c.to_string(),
                predicted: check.predicted,
                actual: check.actual,
                naive: twist_polynomial_naive(&d)?,
                fast: check.polynomial,
            });
        }
        if lemmas {
            for failure in verify_lemmas(&c)? {
                report.lemma_failures.push(MatrixLemmaFailure { matrix: c.to_string(), failure });
            }
        }
    }
    Ok(report)
}

/// Checks every symmetric `n × n` matrix over GF(2), in increasing order of
/// its upper-triangle code: prediction against polynomial, then the lemma
/// suite. The code range is split into `jobs` contiguous chunks and merged
/// in order, so the report does not depend on `jobs`.
pub fn verify_order(n: usize, jobs: usize) -> Result<VerificationReport> {
    sweep(n, jobs, true)
}

/// [`verify_order`] without the lemma suite.
pub fn census(n: usize, jobs: usize) -> Result<VerificationReport> {
    sweep(n, jobs, false)
}

fn sweep(n: usize, jobs: usize, lemmas: bool) -> Result<VerificationReport> {
    if !(1..=VERIFY_CAP).contains(&n) {
        return Err(Error::OutOfRange(format!("order {n} is outside 1..={VERIFY_CAP}")));
    }
    let total = 1u64 << Gf2SymMatrix::upper_len(n);
    let jobs = (jobs.max(1) as u64).min(total);
    let chunk = total.div_ceil(jobs);
    let ranges: Vec<_> = (0..jobs).map(|j| j * chunk..((j + 1) * chunk).min(total)).collect();
    let parts: Vec<Result<VerificationReport>> = if jobs == 1 {
        ranges.into_iter().map(|r| verify_range(n, r, lemmas)).collect()
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = ranges.into_iter().map(|r| s.spawn(move || verify_range(n, r, lemmas))).collect();
            handles.into_iter().map(|h| h.join().expect("verifier thread panicked")).collect()
        })
    };
    let mut report = VerificationReport { n, ..Default::default() };
    for part in parts {
        report.merge(part?);
    }
    Ok(report)
}

/// [`verify_order`] for every `n` in `1..=n_max`.
pub fn run_verify(n_max: usize, jobs: usize) -> Result<Vec<VerificationReport>> {
    if !(1..=VERIFY_CAP).contains(&n_max) {
        return Err(Error::OutOfRange(format!("--max-n must be in 1..={VERIFY_CAP}, got {n_max}")));
    }
    (1..=n_max).map(|n| verify_order(n, jobs)).collect()
}

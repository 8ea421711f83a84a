//! Ground sets, subset masks, set systems and the symmetric exchange axiom.
//!
//! Subsets of an `n`-element ground set are stored as the low `n` bits of a
//! `u64`. Families of feasible sets are kept sorted by `(cardinality, bits)`,
//! which is the canonical order used for equality and serialization.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetMask`] can describe.
pub const MAX_GROUND: usize = 64;

/// Largest ground set for which anything walks all `2^n` subsets.
pub const LATTICE_CAP: usize = 20;

/// The `n` low bits set.
#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the positions of the set bits of `bits`, lowest first.
#[inline]
pub(crate) fn ones(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn canonical_key(bits: u64) -> (u32, u64) {
    (bits.count_ones(), bits)
}

pub(crate) fn check_lattice_size(n: usize) -> Result<()> {
    if n > LATTICE_CAP {
        Err(Error::SizeCap { size: n, cap: LATTICE_CAP })
    } else {
        Ok(())
    }
}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with('#')
        && !label.chars().any(|c| c.is_whitespace() || matches!(c, '{' | '}' | ','))
}

/// Ordered, pairwise distinct element labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_GROUND {
            return Err(Error::SizeCap { size: labels.len(), cap: MAX_GROUND });
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !valid_label(label) {
                return Err(Error::OutOfRange(format!("`{label}` is not a valid element label")));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels })
    }

    /// Ground set labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn empty_mask(&self) -> SubsetMask {
        SubsetMask::empty(self.len())
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn mask_of<'a, I>(&self, items: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u64;
        for item in items {
            bits |= 1 << self.index_of(item)?;
        }
        SubsetMask::new(bits, self.len())
    }

    /// Parses `{}` or `{a,b,c}` against this ground set.
    pub fn parse_set(&self, text: &str) -> Result<SubsetMask> {
        let text = text.trim();
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse { line: 0, message: format!("expected a set like {{a,b}}, got `{text}`") })?;
        let inner = inner.trim();
        let mut bits = 0u64;
        if inner.is_empty() {
            return SubsetMask::new(0, self.len());
        }
        for item in inner.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::Parse { line: 0, message: format!("empty element name in `{text}`") });
            }
            let bit = 1u64 << self.index_of(item)?;
            if bits & bit != 0 {
                return Err(Error::Parse { line: 0, message: format!("element `{item}` repeated in `{text}`") });
            }
            bits |= bit;
        }
        SubsetMask::new(bits, self.len())
    }

    pub fn format_set(&self, mask: SubsetMask) -> String {
        self.format_bits(mask.bits())
    }

    pub(crate) fn format_bits(&self, bits: u64) -> String {
        let names: Vec<&str> = ones(bits).map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A subset of an `n`-element ground set; bit `i` stands for element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u64,
    size: u8,
}

impl SubsetMask {
    pub fn new(bits: u64, size: usize) -> Result<Self> {
        if size > MAX_GROUND {
            return Err(Error::SizeCap { size, cap: MAX_GROUND });
        }
        if bits & !low_bits(size) != 0 {
            return Err(Error::MaskOutOfRange { bits, size });
        }
        Ok(Self { bits, size: size as u8 })
    }

    pub(crate) fn from_parts(bits: u64, size: usize) -> Self {
        debug_assert!(size <= MAX_GROUND && bits & !low_bits(size) == 0);
        Self { bits, size: size as u8 }
    }

    pub fn empty(size: usize) -> Self {
        Self::from_parts(0, size)
    }

    pub fn full(size: usize) -> Self {
        Self::from_parts(low_bits(size), size)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Size of the ground set this mask lives in.
    pub fn ground_size(self) -> usize {
        self.size as usize
    }

    /// Cardinality of the subset.
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.bits >> index & 1 == 1
    }

    pub fn complement(self) -> Self {
        Self::from_parts(!self.bits & low_bits(self.ground_size()), self.ground_size())
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        ones(self.bits)
    }

    pub fn symmetric_difference(self, other: Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::MismatchedGround { left: self.ground_size(), right: other.ground_size() });
        }
        Ok(Self::from_parts(self.bits ^ other.bits, self.ground_size()))
    }
}

/// `a Δ b`, the elements lying in exactly one of the two sets.
pub fn symmetric_difference(a: SubsetMask, b: SubsetMask) -> Result<SubsetMask> {
    a.symmetric_difference(b)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DmFlags {
    pub proper: bool,
    pub trivial: bool,
    pub normal: bool,
    pub even: bool,
}

impl DmFlags {
    pub fn odd(&self) -> bool {
        self.proper && !self.even
    }
}

/// Why a set system fails to be a delta-matroid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExchangeWitness {
    EmptyFamily,
    /// No `v` in `x Δ y` makes `x Δ {u, v}` feasible.
    Violation { x: SubsetMask, y: SubsetMask, u: usize },
}

impl ExchangeWitness {
    pub fn describe(&self, ground: &GroundSet) -> String {
        match *self {
            ExchangeWitness::EmptyFamily => "empty family".to_string(),
            ExchangeWitness::Violation { x, y, u } => format!(
                "X={} Y={} u={}",
                ground.format_set(x),
                ground.format_set(y),
                ground.label(u)
            ),
        }
    }
}

/// A ground set together with a family of feasible subsets.
///
/// The family is deduplicated and sorted by `(cardinality, bits)`. When the
/// ground set has at most [`LATTICE_CAP`] elements a membership bitmap over
/// all `2^n` subsets is kept alongside it.
#[derive(Clone, Debug)]
pub struct SetSystem {
    ground: GroundSet,
    feasible: Vec<u64>,
    lattice: Option<Vec<u64>>,
}

impl PartialEq for SetSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.feasible == other.feasible
    }
}

impl Eq for SetSystem {}

impl SetSystem {
    /// Builds a set system from raw bit patterns, rejecting any pattern that
    /// reaches outside the ground set. Duplicates are dropped.
    pub fn new<I>(ground: GroundSet, family: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let limit = low_bits(ground.len());
        let family: Vec<u64> = family.into_iter().collect();
        if let Some(&bad) = family.iter().find(|&&b| b & !limit != 0) {
            return Err(Error::MaskOutOfRange { bits: bad, size: ground.len() });
        }
        Ok(Self::from_bits(ground, family))
    }

    pub(crate) fn from_bits(ground: GroundSet, mut family: Vec<u64>) -> Self {
        debug_assert!(family.iter().all(|&b| b & !low_bits(ground.len()) == 0));
        family.sort_unstable_by_key(|&b| canonical_key(b));
        family.dedup();
        let lattice = (ground.len() <= LATTICE_CAP).then(|| {
            let mut words = vec![0u64; (1usize << ground.len()).div_ceil(64)];
            for &b in &family {
                words[(b >> 6) as usize] |= 1 << (b & 63);
            }
            words
        });
        Self { ground, feasible: family, lattice }
    }

    /// Ground set `1..=n` with feasible sets given by 1-based element numbers.
    pub fn numbered(n: usize, family: &[&[usize]]) -> Result<Self> {
        let ground = GroundSet::numbered(n)?;
        let mut masks = Vec::with_capacity(family.len());
        for set in family {
            let mut bits = 0u64;
            for &e in *set {
                if e == 0 || e > n {
                    return Err(Error::UnknownElement(e.to_string()));
                }
                bits |= 1 << (e - 1);
            }
            masks.push(bits);
        }
        Self::new(ground, masks)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of elements in the ground set.
    pub fn size(&self) -> usize {
        self.ground.len()
    }

    /// Number of feasible sets.
    pub fn family_len(&self) -> usize {
        self.feasible.len()
    }

    /// Feasible sets as raw bit patterns in canonical order.
    pub fn feasible_bits(&self) -> &[u64] {
        &self.feasible
    }

    pub fn feasible(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let n = self.size();
        self.feasible.iter().map(move |&b| SubsetMask::from_parts(b, n))
    }

    pub fn has_lattice(&self) -> bool {
        self.lattice.is_some()
    }

    #[inline]
    pub fn contains_bits(&self, bits: u64) -> bool {
        match &self.lattice {
            Some(words) => {
                bits >> self.size() == 0 && words[(bits >> 6) as usize] >> (bits & 63) & 1 == 1
            }
            None => self.feasible.binary_search_by_key(&canonical_key(bits), |&b| canonical_key(b)).is_ok(),
        }
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        mask.ground_size() == self.size() && self.contains_bits(mask.bits())
    }

    pub fn flags(&self) -> DmFlags {
        let parity = self.feasible.first().map(|b| b.count_ones() & 1);
        DmFlags {
            proper: !self.feasible.is_empty(),
            trivial: self.ground.is_empty(),
            normal: self.contains_bits(0),
            even: self.feasible.iter().all(|b| Some(b.count_ones() & 1) == parity),
        }
    }

    /// Checks the symmetric exchange axiom over every triple `(X, Y, u)`,
    /// scanning `X` and `Y` in canonical order and `u` by ascending index.
    pub fn check_exchange(&self) -> Result<(), ExchangeWitness> {
        if self.feasible.is_empty() {
            return Err(ExchangeWitness::EmptyFamily);
        }
        let n = self.size();
        for &x in &self.feasible {
            for &y in &self.feasible {
                let diff = x ^ y;
                for u in ones(diff) {
                    let xu = x ^ (1 << u);
                    // v = u means X Δ {u} itself
                    let exchange = |v: usize| if v == u { xu } else { xu ^ (1 << v) };
                    if !ones(diff).any(|v| self.contains_bits(exchange(v))) {
                        return Err(ExchangeWitness::Violation {
                            x: SubsetMask::from_parts(x, n),
                            y: SubsetMask::from_parts(y, n),
                            u,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_delta_matroid(&self) -> bool {
        self.check_exchange().is_ok()
    }
}

/// Result of [`parse_set_system`]: the system plus the text of any feasible
/// set that appeared more than once (it is kept once).
#[derive(Clone, Debug)]
pub struct ParsedSetSystem {
    pub system: SetSystem,
    pub duplicates: Vec<String>,
}

/// Reads the line-based set-system format:
///
/// ```text
/// # optional comments
/// elements: a b c
/// feasible: {}
/// feasible: {a,b}
/// ```
pub fn parse_set_system(text: &str) -> Result<ParsedSetSystem> {
    let mut ground: Option<GroundSet> = None;
    let mut family = Vec::new();
    let mut seen = HashSet::new();
    let mut duplicates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at_line = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse { line: line_no, message },
            other => other,
        };
        if let Some(rest) = line.strip_prefix("elements:") {
            if ground.is_some() {
                return Err(Error::Parse { line: line_no, message: "more than one `elements:` line".into() });
            }
            ground = Some(GroundSet::new(rest.split_whitespace()).map_err(at_line)?);
        } else if let Some(rest) = line.strip_prefix("feasible:") {
            let g = ground.as_ref().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "`feasible:` before `elements:`".into(),
            })?;
            let mask = g.parse_set(rest).map_err(at_line)?;
            if seen.insert(mask.bits()) {
                family.push(mask.bits());
            } else {
                duplicates.push(g.format_set(mask));
            }
        } else {
            return Err(Error::Parse { line: line_no, message: format!("unrecognized line `{line}`") });
        }
    }
    let ground = ground.ok_or_else(|| Error::Parse { line: 0, message: "missing `elements:` line".into() })?;
    Ok(ParsedSetSystem { system: SetSystem::from_bits(ground, family), duplicates })
}

impl FromStr for SetSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_set_system(s).map(|p| p.system)
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "elements:")?;
        for label in self.ground.labels() {
            write!(f, " {label}")?;
        }
        writeln!(f)?;
        for &b in &self.feasible {
            writeln!(f, "feasible: {}", self.ground.format_bits(b))?;
        }
        Ok(())
    }
}

/// A set system that is proper and satisfies the symmetric exchange axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMatroid(SetSystem);

impl DeltaMatroid {
    pub fn new(system: SetSystem) -> Result<Self> {
        match system.check_exchange() {
            Ok(()) => Ok(Self(system)),
            Err(w) => Err(Error::NotDeltaMatroid(w.describe(system.ground()))),
        }
    }

    /// Wraps a system that is a delta-matroid by construction. Debug builds
    /// still run the full axiom check.
    pub(crate) fn from_trusted(system: SetSystem) -> Self {
        debug_assert!(
            system.is_delta_matroid(),
            "closure violated for\n{system}"
        );
        Self(system)
    }

    pub fn numbered(n: usize, family: &[&[usize]]) -> Result<Self> {
        Self::new(SetSystem::numbered(n, family)?)
    }

    pub fn as_set_system(&self) -> &SetSystem {
        &self.0
    }

    pub fn into_set_system(self) -> SetSystem {
        self.0
    }
}

impl Deref for DeltaMatroid {
    type Target = SetSystem;

    fn deref(&self) -> &SetSystem {
        &self.0
    }
}

impl FromStr for DeltaMatroid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

impl fmt::Display for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

//! Twist, dual, direct sum, minors, width and element classification.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set_system::{check_lattice_size, low_bits, DeltaMatroid, GroundSet, SetSystem, SubsetMask};

/// Smallest and largest feasible cardinalities: the ranks of the lower and
/// upper matroids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankBounds {
    pub r_min: usize,
    pub r_max: usize,
}

impl RankBounds {
    pub fn width(&self) -> usize {
        self.r_max - self.r_min
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementKind {
    pub is_loop: bool,
    pub is_coloop: bool,
    pub is_ribbon_loop: bool,
    /// `Some` exactly when the element is a ribbon loop.
    pub ribbon_orientable: Option<bool>,
}

impl ElementKind {
    pub fn is_non_orientable_ribbon_loop(&self) -> bool {
        self.ribbon_orientable == Some(false)
    }
}

fn check_element(d: &SetSystem, e: usize) -> Result<()> {
    if e >= d.size() {
        Err(Error::ElementOutOfRange { index: e, size: d.size() })
    } else {
        Ok(())
    }
}

fn check_mask(d: &SetSystem, a: SubsetMask) -> Result<()> {
    if a.ground_size() != d.size() {
        Err(Error::MismatchedGround { left: d.size(), right: a.ground_size() })
    } else {
        Ok(())
    }
}

/// Removes bit `e` and shifts the higher bits down by one.
#[inline]
pub(crate) fn squeeze_out(bits: u64, e: usize) -> u64 {
    let low = low_bits(e);
    (bits & low) | ((bits >> 1) & !low)
}

fn ground_without(ground: &GroundSet, e: usize) -> GroundSet {
    let labels = ground.labels().iter().enumerate().filter(|&(i, _)| i != e).map(|(_, l)| l.clone());
    GroundSet::new(labels).expect("a subset of distinct labels stays distinct")
}

/// `D * A`: every feasible set `X` becomes `A Δ X`.
pub fn twist(d: &DeltaMatroid, a: SubsetMask) -> Result<DeltaMatroid> {
    check_mask(d, a)?;
    let family = d.feasible_bits().iter().map(|&x| x ^ a.bits()).collect();
    Ok(DeltaMatroid::from_trusted(SetSystem::from_bits(d.ground().clone(), family)))
}

pub fn dual(d: &DeltaMatroid) -> DeltaMatroid {
    twist(d, d.ground().full_mask()).expect("full mask matches its own ground set")
}

/// `D ⊕ D̃` over the concatenated ground set. With `auto_suffix`, colliding
/// labels on the right are renamed by appending `'` until they are unique;
/// otherwise a collision is an error.
pub fn direct_sum(left: &DeltaMatroid, right: &DeltaMatroid, auto_suffix: bool) -> Result<DeltaMatroid> {
    let mut labels: Vec<String> = left.ground().labels().to_vec();
    let mut taken: HashSet<String> = labels.iter().cloned().collect();
    let mut collisions = Vec::new();
    for label in right.ground().labels() {
        let mut name = label.clone();
        if taken.contains(&name) {
            if !auto_suffix {
                collisions.push(label.clone());
                continue;
            }
            while taken.contains(&name) {
                name.push('\'');
            }
        }
        taken.insert(name.clone());
        labels.push(name);
    }
    if !collisions.is_empty() {
        return Err(Error::LabelCollision(collisions.join(", ")));
    }
    let ground = GroundSet::new(labels)?;
    let shift = left.size();
    let mut family = Vec::with_capacity(left.family_len() * right.family_len());
    for &f in left.feasible_bits() {
        for &g in right.feasible_bits() {
            family.push(f | g << shift);
        }
    }
    Ok(DeltaMatroid::from_trusted(SetSystem::from_bits(ground, family)))
}

/// `D \ e`. A coloop is removed from every feasible set; otherwise the
/// feasible sets avoiding `e` are kept.
pub fn delete(d: &DeltaMatroid, e: usize) -> Result<DeltaMatroid> {
    check_element(d, e)?;
    let bit = 1u64 << e;
    let coloop = d.feasible_bits().iter().all(|&f| f & bit != 0);
    let family: Vec<u64> = d
        .feasible_bits()
        .iter()
        .filter(|&&f| coloop || f & bit == 0)
        .map(|&f| squeeze_out(f, e))
        .collect();
    assert!(!family.is_empty(), "deletion left an improper system");
    Ok(DeltaMatroid::from_trusted(SetSystem::from_bits(ground_without(d.ground(), e), family)))
}

/// `D / e`. For a loop the family is kept as is; otherwise the feasible
/// sets containing `e` are kept with `e` removed.
pub fn contract(d: &DeltaMatroid, e: usize) -> Result<DeltaMatroid> {
    check_element(d, e)?;
    let bit = 1u64 << e;
    let is_loop = d.feasible_bits().iter().all(|&f| f & bit == 0);
    let family: Vec<u64> = d
        .feasible_bits()
        .iter()
        .filter(|&&f| is_loop || f & bit != 0)
        .map(|&f| squeeze_out(f, e))
        .collect();
    let out = DeltaMatroid::from_trusted(SetSystem::from_bits(ground_without(d.ground(), e), family));
    debug_assert_eq!(dual(&delete(&dual(d), e)?), out, "D/e must equal (D* \\ e)*");
    Ok(out)
}

/// `D|A`: deletes every element outside `A`.
pub fn restrict(d: &DeltaMatroid, a: SubsetMask) -> Result<DeltaMatroid> {
    check_mask(d, a)?;
    let normal = d.contains_bits(0);
    let mut out = d.clone();
    // highest index first so the remaining indices stay put
    for e in a.complement().iter().collect::<Vec<_>>().into_iter().rev() {
        out = delete(&out, e)?;
    }
    if normal {
        debug_assert!(
            {
                let direct: Vec<u64> = d.feasible_bits().iter().copied().filter(|&f| f & !a.bits() == 0).collect();
                let packed = SetSystem::from_bits(out.ground().clone(), direct.iter().map(|&f| pack(f, a.bits())).collect());
                packed == *out.as_set_system()
            },
            "restriction of a normal delta-matroid must be the subset filter"
        );
    }
    Ok(out)
}

/// Compresses the bits of `bits` selected by `keep` into the low positions.
pub(crate) fn pack(bits: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    let mut k = 0;
    let mut rest = keep;
    while rest != 0 {
        let i = rest.trailing_zeros();
        out |= (bits >> i & 1) << k;
        k += 1;
        rest &= rest - 1;
    }
    out
}

pub fn rank_bounds(d: &DeltaMatroid) -> RankBounds {
    // canonical order puts the smallest sets first and the largest last
    let fam = d.feasible_bits();
    RankBounds {
        r_min: fam[0].count_ones() as usize,
        r_max: fam[fam.len() - 1].count_ones() as usize,
    }
}

pub fn width(d: &DeltaMatroid) -> usize {
    rank_bounds(d).width()
}

/// Is `e` missing from every minimum-cardinality feasible set of `family`?
fn ribbon_loop_in(family: impl Iterator<Item = u64> + Clone, bit: u64) -> bool {
    let r_min = family.clone().map(u64::count_ones).min().unwrap_or(0);
    family.filter(|f| f.count_ones() == r_min).all(|f| f & bit == 0)
}

pub fn element_kind(d: &DeltaMatroid, e: usize) -> Result<ElementKind> {
    check_element(d, e)?;
    let bit = 1u64 << e;
    let fam = d.feasible_bits();
    let is_loop = fam.iter().all(|&f| f & bit == 0);
    let is_coloop = fam.iter().all(|&f| f & bit != 0);
    let is_ribbon_loop = ribbon_loop_in(fam.iter().copied(), bit);
    let ribbon_orientable = is_ribbon_loop.then(|| !ribbon_loop_in(fam.iter().map(|&f| f ^ bit), bit));
    Ok(ElementKind { is_loop, is_coloop, is_ribbon_loop, ribbon_orientable })
}

/// Definitional connectivity test: `D` is disconnected iff some bipartition
/// `(A, Aᶜ)` with both sides nonempty splits the family into a product of its
/// two projections.
pub fn is_connected(d: &DeltaMatroid) -> Result<bool> {
    let n = d.size();
    if n == 0 {
        return Err(Error::Trivial);
    }
    check_lattice_size(n)?;
    Ok(find_separator(d).is_none())
}

/// A side `A` (containing element 0) of a bipartition across which `D`
/// splits as a direct sum, if any.
pub fn find_separator(d: &DeltaMatroid) -> Option<SubsetMask> {
    let n = d.size();
    let full = low_bits(n);
    let total = d.family_len();
    let mut left = HashSet::with_capacity(total);
    let mut right = HashSet::with_capacity(total);
    // element 0 always on side A; A ≠ E
    for rest in 0..(1u64 << (n - 1)) - 1 {
        let a = 1 | rest << 1;
        left.clear();
        right.clear();
        for &f in d.feasible_bits() {
            left.insert(f & a);
            right.insert(f & full & !a);
        }
        // F ↦ (F ∩ A, F ∖ A) is injective, so the family is the full
        // product exactly when the sizes match
        if left.len() * right.len() == total {
            return Some(SubsetMask::from_parts(a, n));
        }
    }
    None
}

//! Sharing groups, sharing sets and the `SS` lattice.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::term::{Var, VarSet};

/// A nonempty set of variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SharingGroup(VarSet);

impl SharingGroup {
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Result<Self> {
        let set: VarSet = vars.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyGroup);
        }
        Ok(SharingGroup(set))
    }

    pub fn singleton(v: Var) -> Self {
        SharingGroup(VarSet::from([v]))
    }

    pub fn vars(&self) -> &VarSet {
        &self.0
    }

    pub fn meets(&self, vs: &VarSet) -> bool {
        self.0.iter().any(|v| vs.contains(v))
    }

    pub fn union(&self, other: &SharingGroup) -> SharingGroup {
        SharingGroup(self.0.union(&other.0).copied().collect())
    }

    pub fn is_subset(&self, vs: &VarSet) -> bool {
        self.0.is_subset(vs)
    }
}

impl fmt::Display for SharingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A finite set of sharing groups.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SharingSet(BTreeSet<SharingGroup>);

impl SharingSet {
    pub fn new() -> Self {
        SharingSet(BTreeSet::new())
    }

    /// `{{u} | u ∈ vars}`: every variable free and unaliased.
    pub fn singletons(vars: &VarSet) -> Self {
        vars.iter().map(|&v| SharingGroup::singleton(v)).collect()
    }

    pub fn from_groups<I, G>(groups: I) -> Result<Self>
    where
        I: IntoIterator<Item = G>,
        G: IntoIterator<Item = Var>,
    {
        groups.into_iter().map(SharingGroup::new).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SharingGroup> + '_ {
        self.0.iter()
    }

    pub fn contains(&self, g: &SharingGroup) -> bool {
        self.0.contains(g)
    }

    pub fn insert(&mut self, g: SharingGroup) -> bool {
        self.0.insert(g)
    }

    pub fn vars(&self) -> VarSet {
        self.0.iter().flat_map(|g| g.0.iter().copied()).collect()
    }

    pub fn is_subset(&self, other: &SharingSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &SharingSet) -> SharingSet {
        SharingSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &SharingSet) -> SharingSet {
        SharingSet(self.0.difference(&other.0).cloned().collect())
    }

    /// Closure under union.
    pub fn star(&self) -> SharingSet {
        let mut closed = self.0.clone();
        let mut work: Vec<SharingGroup> = self.0.iter().cloned().collect();
        while let Some(g) = work.pop() {
            let fresh: Vec<SharingGroup> = closed
                .iter()
                .map(|h| h.union(&g))
                .filter(|u| !closed.contains(u))
                .collect();
            for u in fresh {
                if closed.insert(u.clone()) {
                    work.push(u);
                }
            }
        }
        SharingSet(closed)
    }

    /// Groups meeting `vs`.
    pub fn rel(&self, vs: &VarSet) -> SharingSet {
        SharingSet(self.0.iter().filter(|g| g.meets(vs)).cloned().collect())
    }

    /// Groups disjoint from `vs`.
    pub fn irel(&self, vs: &VarSet) -> SharingSet {
        SharingSet(self.0.iter().filter(|g| !g.meets(vs)).cloned().collect())
    }

    /// Pairwise unions.
    pub fn bin(&self, other: &SharingSet) -> SharingSet {
        let mut out = BTreeSet::new();
        for g in &self.0 {
            for h in &other.0 {
                out.insert(g.union(h));
            }
        }
        SharingSet(out)
    }
}

impl FromIterator<SharingGroup> for SharingSet {
    fn from_iter<I: IntoIterator<Item = SharingGroup>>(iter: I) -> Self {
        SharingSet(iter.into_iter().collect())
    }
}

impl IntoIterator for SharingSet {
    type Item = SharingGroup;
    type IntoIter = std::collections::btree_set::IntoIter<SharingGroup>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl fmt::Display for SharingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

/// A sharing set together with the universe of variables it describes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SsPair {
    sharing: SharingSet,
    universe: VarSet,
}

impl SsPair {
    pub fn new(sharing: SharingSet, universe: VarSet) -> Result<Self> {
        if sharing.iter().any(|g| !g.is_subset(&universe)) {
            return Err(Error::GroupOutsideUniverse);
        }
        Ok(SsPair { sharing, universe })
    }

    /// The description of the empty substitution over `universe`.
    pub fn free(universe: VarSet) -> Self {
        SsPair { sharing: SharingSet::singletons(&universe), universe }
    }

    pub fn sharing(&self) -> &SharingSet {
        &self.sharing
    }

    pub fn universe(&self) -> &VarSet {
        &self.universe
    }

    pub fn leq(&self, other: &SsPair) -> bool {
        self.universe == other.universe && self.sharing.is_subset(&other.sharing)
    }
}

impl fmt::Display for SsPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.sharing)?;
        for (i, v) in self.universe.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("})")
    }
}

/// An element of `SS`: bottom, top, or a pair.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SsElement {
    Bottom,
    Pair(SsPair),
    Top,
}

impl SsElement {
    pub fn as_pair(&self) -> Option<&SsPair> {
        match self {
            SsElement::Pair(p) => Some(p),
            _ => None,
        }
    }

    pub fn leq(&self, other: &SsElement) -> bool {
        match (self, other) {
            (SsElement::Bottom, _) | (_, SsElement::Top) => true,
            (SsElement::Pair(a), SsElement::Pair(b)) => a.leq(b),
            _ => false,
        }
    }

    pub fn lub(&self, other: &SsElement) -> SsElement {
        match (self, other) {
            (SsElement::Bottom, e) | (e, SsElement::Bottom) => e.clone(),
            (SsElement::Top, _) | (_, SsElement::Top) => SsElement::Top,
            (SsElement::Pair(a), SsElement::Pair(b)) => {
                if a.universe != b.universe {
                    return SsElement::Top;
                }
                SsElement::Pair(SsPair { sharing: a.sharing.union(&b.sharing), universe: a.universe.clone() })
            }
        }
    }
}

impl From<SsPair> for SsElement {
    fn from(p: SsPair) -> Self {
        SsElement::Pair(p)
    }
}

impl fmt::Display for SsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsElement::Bottom => f.write_str("bottom"),
            SsElement::Top => f.write_str("top"),
            SsElement::Pair(p) => write!(f, "{p}"),
        }
    }
}

use crate::mask::SubsetMask;

/// Named subsets attached to a catalog matroid (Kinser parts `V1..Vr`, the
/// series pair `e`/`f`, spike legs `a1..ar`/`b1..br`, and so on).
///
/// Names are kept in insertion order so that serialised layouts are stable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartLayout {
    parts: Vec<(String, SubsetMask)>,
}

impl PartLayout {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces a named part.
    pub fn insert(&mut self, name: impl Into<String>, mask: SubsetMask) {
        let name = name.into();
        match self.parts.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = mask,
            None => self.parts.push((name, mask)),
        }
    }

    pub fn with(mut self, name: impl Into<String>, mask: SubsetMask) -> Self {
        self.insert(name, mask);
        self
    }

    pub fn get(&self, name: &str) -> Option<SubsetMask> {
        self.parts.iter().find(|(n, _)| n == name).map(|(_, m)| *m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, SubsetMask)> {
        self.parts.iter().map(|(n, m)| (n.as_str(), *m))
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Re-indexes every part through `map`, where `map[old] = Some(new)` or
    /// `None` for removed elements.
    pub fn remap(&self, map: &[Option<usize>]) -> PartLayout {
        let parts = self
            .parts
            .iter()
            .map(|(n, mask)| {
                let moved = mask
                    .elements()
                    .filter_map(|e| map.get(e).copied().flatten());
                (n.clone(), SubsetMask::from_elements(moved))
            })
            .collect();
        PartLayout { parts }
    }

    /// True if the listed parts are pairwise disjoint and cover `ground`.
    pub fn partitions(&self, names: &[&str], ground: SubsetMask) -> bool {
        let mut seen = SubsetMask::EMPTY;
        for name in names {
            let Some(part) = self.get(name) else {
                return false;
            };
            if !(seen & part).is_empty() {
                return false;
            }
            seen = seen | part;
        }
        seen == ground
    }
}

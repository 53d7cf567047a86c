//! Matroid-to-matroid operations on rank tables.
//!
//! Operations that remove elements return an [`IndexMap`] with
//! `map[old] = Some(new)` for surviving elements and `None` for removed ones.
//! Surviving elements keep their relative order.

use crate::error::{MatroidError, Result};
use crate::mask::{SubsetMask, MAX_GROUND};
use crate::matroid::Matroid;

pub type IndexMap = Vec<Option<usize>>;

/// Inserts a zero bit at position `e`, shifting higher bits up.
#[inline]
fn embed(x: u32, e: usize) -> u32 {
    let low = x & ((1u32 << e) - 1);
    let high = (x >> e) << (e + 1);
    low | high
}

fn removal_map(m: usize, removed: SubsetMask) -> IndexMap {
    let mut next = 0;
    (0..m)
        .map(|i| {
            if removed.contains(i) {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

fn single_removal(m: &Matroid, e: usize, contract: bool) -> Result<(Matroid, IndexMap)> {
    m.check_element(e)?;
    let n = m.ground_size();
    if n < 2 {
        return Err(MatroidError::Precondition(
            "cannot remove the only element of a matroid".into(),
        ));
    }
    let re = m.r(SubsetMask::singleton(e));
    let table: Vec<u8> = (0..1u32 << (n - 1))
        .map(|x| {
            let y = embed(x, e);
            if contract {
                (m.table()[(y | 1 << e) as usize] as usize - re) as u8
            } else {
                m.table()[y as usize]
            }
        })
        .collect();
    let map = removal_map(n, SubsetMask::singleton(e));
    let op = if contract { '/' } else { '\\' };
    let out = Matroid::from_table_unchecked(n - 1, table, format!("{}{op}{e}", m.label()))
        .with_layout(m.layout().map(|l| l.remap(&map)));
    Ok((out, map))
}

/// `M \ e`: the restriction to `E - e`.
pub fn delete(m: &Matroid, e: usize) -> Result<(Matroid, IndexMap)> {
    single_removal(m, e, false)
}

/// `M / e`, with `r'(X) = r(X ∪ e) - r(e)`.
pub fn contract(m: &Matroid, e: usize) -> Result<(Matroid, IndexMap)> {
    single_removal(m, e, true)
}

/// Contracts `contractions` and deletes `deletions`, contractions first.
/// The returned map is relative to the original ground set.
pub fn minor(
    m: &Matroid,
    deletions: SubsetMask,
    contractions: SubsetMask,
) -> Result<(Matroid, IndexMap)> {
    m.check_mask(deletions)?;
    m.check_mask(contractions)?;
    if !(deletions & contractions).is_empty() {
        return Err(MatroidError::Precondition(format!(
            "deletions {deletions:?} and contractions {contractions:?} overlap"
        )));
    }
    let n = m.ground_size();
    let removed = deletions | contractions;
    if removed == m.ground() {
        return Err(MatroidError::EmptyGround);
    }
    let rc = m.r(contractions);
    let keep: Vec<usize> = removed.complement(n).elements().collect();
    let k = keep.len();
    let table: Vec<u8> = (0..1u32 << k)
        .map(|x| {
            let mut y = contractions.bits();
            for (i, &old) in keep.iter().enumerate() {
                if x >> i & 1 == 1 {
                    y |= 1 << old;
                }
            }
            (m.table()[y as usize] as usize - rc) as u8
        })
        .collect();
    let map = removal_map(n, removed);
    let out = Matroid::from_table_unchecked(
        k,
        table,
        format!("{}\\{deletions:?}/{contractions:?}", m.label()),
    )
    .with_layout(m.layout().map(|l| l.remap(&map)));
    Ok((out, map))
}

/// `r*(X) = |X| + r(E - X) - r(M)`.
pub fn dual(m: &Matroid) -> Matroid {
    let n = m.ground_size();
    let full = (1u32 << n) - 1;
    let r = m.rank();
    let table = (0..=full)
        .map(|x| (x.count_ones() as usize + m.r(SubsetMask(full & !x)) - r) as u8)
        .collect();
    let label = match m.label().strip_prefix("dual(").and_then(|s| s.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("dual({})", m.label()),
    };
    Matroid::from_table_unchecked(n, table, label).with_layout(m.layout().cloned())
}

/// `M1 ⊕ M2`, with the elements of `M2` shifted up by `|E(M1)|`.
pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<(Matroid, IndexMap, IndexMap)> {
    let (m1, m2) = (a.ground_size(), b.ground_size());
    if m1 + m2 > MAX_GROUND {
        return Err(MatroidError::GroundTooLarge(m1 + m2));
    }
    let low = (1u32 << m1) - 1;
    let table = (0..1u32 << (m1 + m2))
        .map(|x| a.table()[(x & low) as usize] + b.table()[(x >> m1) as usize])
        .collect();
    let map_a = (0..m1).map(Some).collect();
    let map_b = (0..m2).map(|i| Some(i + m1)).collect();
    let out = Matroid::from_table_unchecked(
        m1 + m2,
        table,
        format!("{}+{}", a.label(), b.label()),
    );
    Ok((out, map_a, map_b))
}

/// Makes the circuit-hyperplane `h` a basis.
///
/// Only `r(h)` changes. Every proper subset of a circuit is already
/// independent and every proper superset of a hyperplane already spans, so
/// the result is a matroid; it is still re-validated.
pub fn relax(m: &Matroid, h: SubsetMask) -> Result<Matroid> {
    let class = m.classify(h)?;
    if !class.circuit_hyperplane {
        return Err(MatroidError::Precondition(format!(
            "{h:?} is not a circuit-hyperplane of {}",
            m.label()
        )));
    }
    let mut table = m.table().to_vec();
    table[h.index()] += 1;
    Ok(
        Matroid::from_table(m.ground_size(), table, format!("relax({}, {h:?})", m.label()))?
            .with_layout(m.layout().cloned()),
    )
}

/// Inverse of [`relax`]: lowers the rank of the basis `h` by one, provided
/// the result is still a matroid.
pub fn tighten(m: &Matroid, h: SubsetMask) -> Result<Matroid> {
    let class = m.classify(h)?;
    if !class.basis {
        return Err(MatroidError::Precondition(format!(
            "{h:?} is not a basis of {}",
            m.label()
        )));
    }
    let mut table = m.table().to_vec();
    table[h.index()] -= 1;
    match Matroid::from_table(m.ground_size(), table, format!("tighten({}, {h:?})", m.label())) {
        Ok(t) => Ok(t.with_layout(m.layout().cloned())),
        Err(MatroidError::NotAMatroid(v)) => Err(MatroidError::NotTightenable(v)),
        Err(other) => Err(other),
    }
}

/// Caps the rank at `r(M) - 1`.
pub fn truncate(m: &Matroid) -> Result<Matroid> {
    if m.rank() == 0 {
        return Err(MatroidError::Precondition(
            "cannot truncate a rank-0 matroid".into(),
        ));
    }
    let cap = (m.rank() - 1) as u8;
    let table = m.table().iter().map(|&v| v.min(cap)).collect();
    Ok(
        Matroid::from_table_unchecked(m.ground_size(), table, format!("T({})", m.label()))
            .with_layout(m.layout().cloned()),
    )
}

//! Constructive maps witnessing count equalities: the 123-to-132 bijection
//! and its inverse, the adjacent block-size swap, the word-level bijection,
//! and the empty-block encoding behind the Stanley-Wilf-type bound.
//!
//! These maps are proof witnesses: preconditions (avoidance of the relevant
//! pattern) are always checked so count-equality tests cannot be poisoned by
//! garbage inputs.

use crate::error::{Error, Result};
use crate::partition::OrderedSetPartition;
use crate::pattern::Pattern;
use crate::words::{partition_from_word, word_from_partition, Word};

fn pattern(s: &str) -> Pattern {
    s.parse().expect("static pattern")
}

/// Left-to-right minima per block, plus a helper for the running minimum of
/// all elements in blocks before index i.
fn minima_by_block(p: &OrderedSetPartition) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(p.num_blocks());
    let mut running_min = u32::MAX;
    for block in p.blocks() {
        out.push(block.iter().copied().filter(|&x| x < running_min).collect());
        if let Some(&first) = block.first() {
            running_min = running_min.min(first);
        }
    }
    out
}

fn rebuild(p: &OrderedSetPartition, blocks: Vec<Vec<u32>>) -> OrderedSetPartition {
    if p.allows_empty() {
        OrderedSetPartition::new_star(blocks).expect("bijection image is valid")
    } else {
        OrderedSetPartition::new(blocks).expect("bijection image is valid")
    }
}

/// The 123-to-132 bijection: keep the left-to-right minima in place; fill
/// each remaining slot, left to right, with the smallest unused non-minimum
/// exceeding the minimum of all earlier blocks.
pub fn phi_123_to_132(p: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    if p.contains_pattern(&pattern("123")) {
        return Err(Error::Precondition("phi input must avoid 123".into()));
    }
    let minima = minima_by_block(p);
    let mut pool: Vec<u32> = (1..=p.ground_size())
        .filter(|x| !minima.iter().any(|m| m.contains(x)))
        .collect(); // ascending
    let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(p.num_blocks());
    let mut bound = 0u32; // minimum over all earlier blocks, 0 before any
    for (i, block) in p.blocks().iter().enumerate() {
        let mut filled = minima[i].clone();
        let slots = block.len() - filled.len();
        for _ in 0..slots {
            let at = pool
                .iter()
                .position(|&x| x > bound)
                .expect("123-avoidance guarantees a fill element");
            filled.push(pool.remove(at));
        }
        if let Some(&m) = block.first() {
            bound = if bound == 0 { m } else { bound.min(m) };
        }
        blocks.push(filled);
    }
    Ok(rebuild(p, blocks))
}

/// Inverse of [`phi_123_to_132`]: keep the left-to-right minima, then place
/// the remaining elements in descending order, left to right.
pub fn phi_inverse(p: &OrderedSetPartition) -> Result<OrderedSetPartition> {
    if p.contains_pattern(&pattern("132")) {
        return Err(Error::Precondition("phi_inverse input must avoid 132".into()));
    }
    let minima = minima_by_block(p);
    let mut pool: Vec<u32> = (1..=p.ground_size())
        .filter(|x| !minima.iter().any(|m| m.contains(x)))
        .collect();
    pool.reverse(); // descending
    let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(p.num_blocks());
    let mut pool_iter = pool.into_iter();
    for (i, block) in p.blocks().iter().enumerate() {
        let mut filled = minima[i].clone();
        for _ in 0..block.len() - filled.len() {
            filled.push(pool_iter.next().expect("pool matches slot count"));
        }
        blocks.push(filled);
    }
    Ok(rebuild(p, blocks))
}

/// Swaps the sizes of blocks i and i+1 (1-based i) of a 123-avoider while
/// preserving the critical 12-occurrences against the other blocks.
///
/// Elements of block i+1 split three ways: those in no 12 with an outside
/// element stay put (relative to the pair), those playing "1" against a
/// later block must stay below that later witness, and those playing "2"
/// against an earlier block must stay as large as possible.
pub fn block_swap(p: &OrderedSetPartition, i: usize) -> Result<OrderedSetPartition> {
    let k = p.num_blocks();
    if i < 1 || i >= k {
        return Err(Error::Precondition(format!(
            "swap index must satisfy 1 <= i <= k-1, got i={i}, k={k}"
        )));
    }
    if p.contains_pattern(&pattern("123")) {
        return Err(Error::Precondition("block_swap input must avoid 123".into()));
    }
    let blocks = p.blocks();
    let (bi, bi1) = (&blocks[i - 1], &blocks[i]);
    let min_earlier = blocks[..i.saturating_sub(1)].iter().flatten().min().copied();
    let max_later = blocks[i + 1..].iter().flatten().max().copied();

    // classify block i+1: role-1 against a later block, role-2 against an
    // earlier block, or neither (both at once would complete a 123)
    let mut role1 = 0usize;
    let mut role2 = 0usize;
    let mut neither: Vec<u32> = Vec::new();
    for &x in bi1 {
        let is1 = max_later.is_some_and(|m| m > x);
        let is2 = min_earlier.is_some_and(|m| m < x);
        debug_assert!(!(is1 && is2), "both roles would form a 123");
        if is1 {
            role1 += 1;
        } else if is2 {
            role2 += 1;
        } else {
            neither.push(x);
        }
    }

    // the new block i: the role-2 movers become the largest elements of the
    // union, the role-1 movers the largest below the later witness, and the
    // unconstrained elements come along unchanged
    let mut union: Vec<u32> = bi.iter().chain(bi1.iter()).copied().collect();
    union.sort_unstable();
    let mut taken = vec![false; union.len()];
    for t in (0..union.len()).rev().take(role2) {
        taken[t] = true;
    }
    let witness = max_later.unwrap_or(0);
    let mut need = role1;
    for t in (0..union.len()).rev() {
        if need == 0 {
            break;
        }
        if !taken[t] && union[t] < witness {
            taken[t] = true;
            need -= 1;
        }
    }
    debug_assert_eq!(need, 0, "role-1 movers always fit below the witness");
    for &x in &neither {
        let t = union.binary_search(&x).unwrap();
        debug_assert!(!taken[t]);
        taken[t] = true;
    }

    let new_bi: Vec<u32> =
        union.iter().zip(&taken).filter(|(_, &t)| t).map(|(&x, _)| x).collect();
    let new_bi1: Vec<u32> =
        union.iter().zip(&taken).filter(|(_, &t)| !t).map(|(&x, _)| x).collect();
    debug_assert_eq!(new_bi.len(), bi1.len());

    let mut out = blocks.to_vec();
    out[i - 1] = new_bi;
    out[i] = new_bi1;
    Ok(rebuild(p, out))
}

/// The word-level bijection from 123-avoiding to 132-avoiding words:
/// invert the word's graph into a star partition, apply the fill bijection
/// (empty blocks stay empty), and invert back.
pub fn psi_word(w: &Word) -> Result<Word> {
    if w.contains_pattern(&pattern("123")) {
        return Err(Error::Precondition("psi input must avoid 123".into()));
    }
    let p = partition_from_word(w);
    Ok(word_from_partition(&phi_123_to_132(&p)?))
}

/// The image of one star partition under the empty-block encoding: a
/// compact (no-empty-blocks) avoider plus a 2k-letter tag word over
/// [0, k] that makes the construction reversible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarEncoding {
    pub compact: OrderedSetPartition,
    pub tag: Vec<u32>,
}

impl StarEncoding {
    /// The tag as text: concatenated digits when k <= 9, comma-separated
    /// otherwise.
    pub fn tag_string(&self) -> String {
        if self.compact.num_blocks() <= 9 {
            self.tag.iter().map(|l| l.to_string()).collect()
        } else {
            self.tag.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl std::fmt::Display for StarEncoding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.compact, self.tag_string())
    }
}

/// Encodes a rho-avoiding star partition as a no-empty-blocks avoider plus
/// a 2k-letter tag.
///
/// Empty blocks shift to the end (to the front when rho ends with its
/// maximum); the first k tag letters record that shift. Rounds then fill
/// the empty slots: each round removes the largest elements still sitting
/// in never-emptied blocks and drops one into each hole, order-isomorphic
/// to the holes' previous-stage maxima (ascending in round one). The last
/// k letters give, for each singleton of the result, the block its element
/// occupied just after the shift; larger blocks get letter 0.
pub fn sw_encode(p: &OrderedSetPartition, rho: &Pattern) -> Result<StarEncoding> {
    let n = p.ground_size();
    let k = p.num_blocks();
    if (n as usize) < k {
        return Err(Error::Domain(format!(
            "encoding needs n >= k, got n={n}, k={k}"
        )));
    }
    if p.contains_pattern(rho) {
        return Err(Error::Precondition(format!("input must avoid {rho}")));
    }

    // shift empty blocks out of the way, remembering where blocks came from
    let mut stage: Vec<Vec<u32>> = Vec::with_capacity(k);
    let mut first_half = vec![0u32; k];
    {
        let nonempty: Vec<usize> =
            (0..k).filter(|&j| !p.blocks()[j].is_empty()).collect();
        let empties = k - nonempty.len();
        let lead = if rho.ends_with_max() { empties } else { 0 };
        for _ in 0..lead {
            stage.push(Vec::new());
        }
        for (slot, &j) in nonempty.iter().enumerate() {
            first_half[lead + slot] = j as u32 + 1;
            stage.push(p.blocks()[j].clone());
        }
        while stage.len() < k {
            stage.push(Vec::new());
        }
    }

    // source block (in the shifted partition) of every element
    let mut source = vec![0u32; n as usize + 1];
    for (i, block) in stage.iter().enumerate() {
        for &x in block {
            source[x as usize] = i as u32 + 1;
        }
    }

    let mut pristine: Vec<bool> = stage.iter().map(|b| !b.is_empty()).collect();
    let mut prev_stage = stage.clone();
    loop {
        let holes: Vec<usize> =
            (0..k).filter(|&j| stage[j].is_empty()).collect();
        if holes.is_empty() {
            break;
        }
        // the largest elements still in never-emptied blocks move
        let mut movers: Vec<(u32, usize)> = (0..k)
            .filter(|&j| pristine[j])
            .flat_map(|j| stage[j].iter().map(move |&x| (x, j)))
            .collect();
        movers.sort_unstable();
        let movers: Vec<(u32, usize)> =
            movers.into_iter().rev().take(holes.len()).collect();
        debug_assert_eq!(movers.len(), holes.len());

        let next_prev = stage.clone();
        for &(x, j) in &movers {
            let at = stage[j].binary_search(&x).unwrap();
            stage[j].remove(at);
            if stage[j].is_empty() {
                pristine[j] = false;
            }
        }

        // placement order-isomorphic to the holes' maxima in the stage
        // before they were emptied; holes empty from the start have no
        // maxima and receive ascending order (their "maxima" rank equals
        // their position order below)
        let mut keyed: Vec<(u32, usize)> = holes
            .iter()
            .map(|&h| (prev_stage[h].last().copied().unwrap_or(h as u32), h))
            .collect();
        keyed.sort_unstable();
        let mut placed: Vec<u32> = movers.iter().map(|&(x, _)| x).collect();
        placed.sort_unstable();
        for (&(_, hole), x) in keyed.iter().zip(placed) {
            stage[hole] = vec![x];
        }
        prev_stage = next_prev;
    }

    let compact = OrderedSetPartition::new(stage)?;
    let mut tag = first_half;
    for block in compact.blocks() {
        tag.push(if block.len() == 1 { source[block[0] as usize] } else { 0 });
    }
    Ok(StarEncoding { compact, tag })
}

/// Inverts [`sw_encode`]: every element's post-shift block is readable from
/// the compact partition and the tag's second half, and the tag's first
/// half undoes the empty-block shift. The reconstruction is re-encoded and
/// compared to detect tags that no encoding produces.
pub fn sw_decode(e: &StarEncoding, rho: &Pattern) -> Result<OrderedSetPartition> {
    let k = e.compact.num_blocks();
    let n = e.compact.ground_size();
    if e.tag.len() != 2 * k {
        return Err(Error::MalformedEncoding(format!(
            "tag must have {} letters, got {}",
            2 * k,
            e.tag.len()
        )));
    }
    if e.tag.iter().any(|&l| l > k as u32) {
        return Err(Error::MalformedEncoding(format!("tag letters must lie in [0, {k}]")));
    }

    // rebuild the shifted partition from element sources
    let mut shifted: Vec<Vec<u32>> = vec![Vec::new(); k];
    for (i, block) in e.compact.blocks().iter().enumerate() {
        let src = match block.len() {
            1 => e.tag[k + i],
            _ => {
                if e.tag[k + i] != 0 {
                    return Err(Error::MalformedEncoding(format!(
                        "block {} has several elements but a nonzero letter",
                        i + 1
                    )));
                }
                i as u32 + 1
            }
        };
        if src == 0 {
            return Err(Error::MalformedEncoding(format!(
                "singleton block {} carries letter 0",
                i + 1
            )));
        }
        for &x in block {
            shifted[src as usize - 1].push(x);
        }
    }

    // undo the empty-block shift
    let mut original: Vec<Vec<u32>> = vec![Vec::new(); k];
    let mut seen = vec![false; k];
    for (i, &l) in e.tag[..k].iter().enumerate() {
        if l == 0 {
            if !shifted[i].is_empty() {
                return Err(Error::MalformedEncoding(format!(
                    "position {} marked empty but holds elements",
                    i + 1
                )));
            }
            continue;
        }
        if seen[l as usize - 1] {
            return Err(Error::MalformedEncoding(format!("letter {l} repeated in shift half")));
        }
        seen[l as usize - 1] = true;
        original[l as usize - 1] = std::mem::take(&mut shifted[i]);
    }

    let candidate = OrderedSetPartition::new_star(original)?;
    if candidate.ground_size() != n {
        return Err(Error::MalformedEncoding("element count mismatch".into()));
    }
    let reencoded = sw_encode(&candidate, rho).map_err(|err| {
        Error::MalformedEncoding(format!("reconstruction is not encodable: {err}"))
    })?;
    if &reencoded != e {
        return Err(Error::MalformedEncoding(
            "tag is not the encoding of any avoider".into(),
        ));
    }
    Ok(candidate)
}

/// Splits a star partition of [m+n] into its restriction to [1..m] and its
/// restriction to [m+1..m+n] renumbered onto [1..n], both on the same k
/// block positions. Avoidance of any pattern is inherited by both parts.
pub fn split_subadditive(
    p: &OrderedSetPartition,
    m: u32,
) -> Result<(OrderedSetPartition, OrderedSetPartition)> {
    if m > p.ground_size() {
        return Err(Error::Domain(format!(
            "split point {m} exceeds ground size {}",
            p.ground_size()
        )));
    }
    let low = p
        .blocks()
        .iter()
        .map(|b| b.iter().copied().filter(|&x| x <= m).collect())
        .collect();
    let high = p
        .blocks()
        .iter()
        .map(|b| b.iter().copied().filter(|&x| x > m).map(|x| x - m).collect())
        .collect();
    Ok((
        OrderedSetPartition::new_star(low)?,
        OrderedSetPartition::new_star(high)?,
    ))
}

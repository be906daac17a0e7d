use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// An ordered list of disjoint blocks whose union is `[n]`.
///
/// Blocks are stored strictly increasing. `allow_empty` distinguishes the
/// star variant (empty blocks legal) from ordinary ordered set partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<u32>>,
    ground_size: u32,
    allow_empty: bool,
}

impl OrderedSetPartition {
    /// Ordinary partition: every block nonempty.
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        Self::build(blocks, false)
    }

    /// Star partition: empty blocks permitted.
    pub fn new_star(blocks: Vec<Vec<u32>>) -> Result<Self> {
        Self::build(blocks, true)
    }

    fn build(mut blocks: Vec<Vec<u32>>, allow_empty: bool) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("at least one block required".into()));
        }
        let mut all: Vec<u32> = Vec::new();
        for block in &mut blocks {
            if block.is_empty() && !allow_empty {
                return Err(Error::InvalidPartition("empty block in a non-star partition".into()));
            }
            block.sort_unstable();
            all.extend_from_slice(block);
        }
        all.sort_unstable();
        let n = all.len() as u32;
        for (i, &x) in all.iter().enumerate() {
            if x != i as u32 + 1 {
                return Err(Error::InvalidPartition(format!(
                    "blocks must partition [n]; got element multiset {all:?}"
                )));
            }
        }
        Ok(OrderedSetPartition { blocks, ground_size: n, allow_empty })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// n, the size of the ground set.
    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }

    /// k, the number of blocks (including empty ones for star partitions).
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn allows_empty(&self) -> bool {
        self.allow_empty
    }

    /// Reinterprets this partition as a star partition.
    pub fn into_star(mut self) -> Self {
        self.allow_empty = true;
        self
    }

    /// The composition of block sizes. Only defined for non-star partitions.
    pub fn block_sizes(&self) -> Result<BlockSizes> {
        BlockSizes::new(self.blocks.iter().map(|b| b.len() as u32).collect())
    }

    /// True iff one element can be chosen from each of `m` blocks, in block
    /// order, so that the chosen values are order-isomorphic to `rho`.
    /// Elements of the same block never share an occurrence.
    pub fn contains_pattern(&self, rho: &Pattern) -> bool {
        let m = rho.len();
        if self.blocks.len() < m {
            return false;
        }
        let mut chosen: Vec<u32> = Vec::with_capacity(m);
        self.search(rho, 0, &mut chosen)
    }

    pub fn avoids(&self, rho: &Pattern) -> bool {
        !self.contains_pattern(rho)
    }

    fn search(&self, rho: &Pattern, first_block: usize, chosen: &mut Vec<u32>) -> bool {
        let j = chosen.len();
        if j == rho.len() {
            return true;
        }
        // Order-isomorphism with the prefix pins the candidate to an open
        // interval (lo, hi); each block is sorted, so scan only that range.
        let mut lo = 0u32;
        let mut hi = u32::MAX;
        for (a, &c) in chosen.iter().enumerate() {
            if rho.entries()[a] < rho.entries()[j] {
                lo = lo.max(c);
            } else {
                hi = hi.min(c);
            }
        }
        let blocks_left = rho.len() - j;
        for bi in first_block..=self.blocks.len().saturating_sub(blocks_left) {
            let block = &self.blocks[bi];
            let start = block.partition_point(|&x| x <= lo);
            for &x in &block[start..] {
                if x >= hi {
                    break;
                }
                chosen.push(x);
                if self.search(rho, bi + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Every element smaller than all elements of the preceding blocks.
    /// All elements of the first nonempty block qualify vacuously.
    pub fn left_to_right_minima(&self) -> Vec<u32> {
        let mut minima = Vec::new();
        let mut running_min = u32::MAX;
        for block in &self.blocks {
            for &x in block {
                if x < running_min {
                    minima.push(x);
                }
            }
            if let Some(&first) = block.first() {
                running_min = running_min.min(first);
            }
        }
        minima.sort_unstable();
        minima
    }

    /// Restricts to the elements accepted by `keep`, relabeling the survivors
    /// order-isomorphically onto an initial segment. Block count is kept, so
    /// the result may acquire empty blocks and is returned as a star partition.
    pub fn restrict_standardized(&self, keep: impl Fn(u32) -> bool) -> OrderedSetPartition {
        let survivors: Vec<u32> =
            (1..=self.ground_size).filter(|&x| keep(x)).collect();
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .filter(|&&x| keep(x))
                    .map(|&x| standardize_rank(&survivors, x))
                    .collect()
            })
            .collect();
        OrderedSetPartition::new_star(blocks).expect("restriction preserves validity")
    }
}

fn standardize_rank(sorted_ground: &[u32], x: u32) -> u32 {
    sorted_ground.binary_search(&x).expect("element in ground") as u32 + 1
}

/// Order-isomorphic relabeling: sends the i-th smallest element of
/// `elements` (distinct, any order) to `i`. Returns `(element, rank)` pairs
/// sorted by element.
pub fn standardize(elements: &[u32]) -> Vec<(u32, u32)> {
    let mut sorted: Vec<u32> = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    assert_eq!(sorted.len(), elements.len(), "standardize requires distinct elements");
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, i as u32 + 1))
        .collect()
}

/// A composition `[b_1..b_k]` of `n`: the shape parameter of a counting query.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockSizes {
    sizes: Vec<u32>,
}

impl BlockSizes {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidBlockSizes("at least one part required".into()));
        }
        if sizes.iter().any(|&b| b == 0) {
            return Err(Error::InvalidBlockSizes("every part must be at least 1".into()));
        }
        Ok(BlockSizes { sizes })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn n(&self) -> u32 {
        self.sizes.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    /// All compositions of `n` into `k` positive parts, lexicographic.
    pub fn compositions(n: u32, k: usize) -> Vec<BlockSizes> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        fn rec(n: u32, k: usize, current: &mut Vec<u32>, out: &mut Vec<BlockSizes>) {
            if k == 1 {
                if n >= 1 {
                    current.push(n);
                    out.push(BlockSizes { sizes: current.clone() });
                    current.pop();
                }
                return;
            }
            for first in 1..=n.saturating_sub(k as u32 - 1) {
                current.push(first);
                rec(n - first, k - 1, current, out);
                current.pop();
            }
        }
        if k >= 1 && n >= k as u32 {
            rec(n, k, &mut current, &mut out);
        }
        out
    }
}

impl fmt::Display for BlockSizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BlockSizes {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        BlockSizes::new(sizes)
    }
}

impl fmt::Display for OrderedSetPartition {
    /// Canonical text: blocks joined by `/`, elements comma-separated and
    /// increasing, `-` for an empty block. Example: `2,4/1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                if b.is_empty() {
                    "-".to_string()
                } else {
                    b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                }
            })
            .collect();
        write!(f, "{}", blocks.join("/"))
    }
}

impl FromStr for OrderedSetPartition {
    type Err = Error;

    /// Parses canonical text (`2,4/1/3`, `8/-/3,5,9/1,2/-/4,6/7`). A block
    /// without commas whose every element is a single digit is also accepted
    /// in concatenated shorthand (`59/38/1267/4`), single digits
    /// only. The result is a star partition iff an empty block appears.
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut star = false;
        for part in s.split('/') {
            let part = part.trim();
            if part == "-" || part.is_empty() {
                star = true;
                blocks.push(Vec::new());
            } else if part.contains(',') {
                blocks.push(
                    part.split(',')
                        .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                        .collect::<Result<Vec<_>>>()?,
                );
            } else if part.len() == 1 {
                blocks.push(vec![part.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?]);
            } else {
                // concatenated single-digit convenience form
                blocks.push(
                    part.chars()
                        .map(|c| {
                            c.to_digit(10)
                                .filter(|&d| d >= 1)
                                .ok_or_else(|| Error::Parse(format!("bad element character {c:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
        if star {
            OrderedSetPartition::new_star(blocks)
        } else {
            OrderedSetPartition::new(blocks)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OrderedSetPartition {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn containment_worked_example() {
        // 14/56/2/3 contains 312 via b_1=4, b_2=2, b_3=3
        assert!(p("14/56/2/3").contains_pattern(&pat("312")));
    }

    #[test]
    fn fewer_blocks_than_pattern_never_contain() {
        assert!(!p("1,3,5/2,4,6").contains_pattern(&pat("123")));
    }

    #[test]
    fn containment_needs_one_element_per_block() {
        // 24/1/3 avoids 123: no one-element-per-block increasing triple
        assert!(!p("24/1/3").contains_pattern(&pat("123")));
        assert!(p("2/1,3/4").contains_pattern(&pat("123")));
    }

    #[test]
    fn containment_matches_naive_triple_check() {
        // cross-check the DFS against a naive all-triples scan for 123
        let parts = ["24/1/3", "3/12/4", "4/3/2/1", "13/2/45", "2,5/1,4/3,6"];
        for s in parts {
            let q = p(s);
            let mut naive = false;
            let bs = q.blocks();
            for i in 0..bs.len() {
                for j in i + 1..bs.len() {
                    for l in j + 1..bs.len() {
                        for &x in &bs[i] {
                            for &y in &bs[j] {
                                for &z in &bs[l] {
                                    naive |= x < y && y < z;
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(q.contains_pattern(&pat("123")), naive, "{s}");
        }
    }

    #[test]
    fn left_to_right_minima_worked_example() {
        assert_eq!(p("59/38/1267/4").left_to_right_minima(), vec![1, 2, 3, 5, 9]);
    }

    #[test]
    fn left_to_right_minima_decreasing_singletons() {
        assert_eq!(p("4/3/2/1").left_to_right_minima(), vec![1, 2, 3, 4]);
        assert_eq!(p("12/34").left_to_right_minima(), vec![1, 2]);
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[2, 4, 7]), vec![(2, 1), (4, 2), (7, 3)]);
        assert_eq!(standardize(&[1, 2, 3]), vec![(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn restriction_standardizes_blockwise() {
        // 59/38/1267/4 restricted to {3,8} -> blocks {8},{3} relabeled 2/1
        let q = p("59/38/1267/4");
        let r = q.restrict_standardized(|x| x == 3 || x == 8);
        assert_eq!(r.to_string(), "-/1,2/-/-");
        let r2 = q.restrict_standardized(|x| x >= 4);
        assert_eq!(r2.blocks(), &[vec![2, 6], vec![5], vec![3, 4], vec![1]]);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["2,4/1/3", "8/-/3,5,9/1,2/-/4,6/7", "1"] {
            assert_eq!(p(s).to_string(), s);
        }
        // concatenated convenience form normalizes to comma form
        assert_eq!(p("59/38/1267/4").to_string(), "5,9/3,8/1,2,6,7/4");
    }

    #[test]
    fn rejects_invalid_partitions() {
        assert!("1,2/2".parse::<OrderedSetPartition>().is_err());
        assert!("1/3".parse::<OrderedSetPartition>().is_err());
        assert!(OrderedSetPartition::new(vec![vec![1], vec![]]).is_err());
        assert!(OrderedSetPartition::new_star(vec![vec![1], vec![]]).is_ok());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(BlockSizes::compositions(4, 2).len(), 3);
        assert_eq!(BlockSizes::compositions(8, 4).len(), 35); // C(7,3)
        let all: usize = (1..=6).map(|k| BlockSizes::compositions(6, k).len()).sum();
        assert_eq!(all, 32); // 2^(n-1)
    }
}

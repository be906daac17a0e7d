//! Memoized enumeration scheme for `op_{[b_1..b_k]}(123)`.
//!
//! The state is the list of remaining block sizes together with the first
//! block's content s (and transiently the second block's content t), all
//! standardized over the remaining ground set [N]. The recursion:
//!
//! * if min(s) > max(t), block 1 can never supply the "1" of a 123 against
//!   anything in t, so delete it and relabel the rest over [N] \ s;
//! * otherwise let i be the smallest element of t above min(s); every
//!   element larger than i that sits in a later block would complete a 123,
//!   so the count is zero unless everything above i lies in s or t;
//! * when the count is not forced to zero the surviving ground set is
//!   exactly [i-1], and the problem restarts with the below-i part of t
//!   (or, if that part is empty, the below-i part of s) as the new first
//!   block.
//!
//! Subsets are u64 bitmasks (element v is bit v-1), so N <= 64.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::formulas::binomial;
use crate::partition::BlockSizes;
use crate::Count;

fn full_mask(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Keeps the `count` lowest set bits of `mask`.
fn lowest_bits(mask: u64, count: u32) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    for _ in 0..count {
        let low = rest & rest.wrapping_neg();
        out |= low;
        rest ^= low;
    }
    out
}

/// Relabels `sub` (a subset of `ground`) by the rank of each element within
/// `ground`, producing a subset of [|ground|].
fn standardize_mask(sub: u64, ground: u64) -> u64 {
    debug_assert_eq!(sub & !ground, 0);
    let mut out = 0u64;
    let mut rest = sub;
    while rest != 0 {
        let low = rest & rest.wrapping_neg();
        let below = low - 1;
        out |= 1u64 << (ground & below).count_ones();
        rest ^= low;
    }
    out
}

fn elements_to_mask(elems: &[u32], n: u32) -> Result<u64> {
    let mut mask = 0u64;
    for &v in elems {
        if v == 0 || v > n {
            return Err(Error::Precondition(format!("element {v} outside [1, {n}]")));
        }
        let bit = 1u64 << (v - 1);
        if mask & bit != 0 {
            return Err(Error::Precondition(format!("element {v} repeated")));
        }
        mask |= bit;
    }
    Ok(mask)
}

/// All subsets of `mask` with exactly `m` bits set.
fn subsets_of_size(mask: u64, m: usize) -> Vec<u64> {
    let bits: Vec<u64> = {
        let mut v = Vec::new();
        let mut rest = mask;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            v.push(low);
            rest ^= low;
        }
        v
    };
    let mut out = Vec::new();
    if m > bits.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        out.push(idx.iter().map(|&i| bits[i]).sum());
        // next combination in lexicographic order
        let mut j = m;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if idx[j] < bits.len() - (m - j) {
                idx[j] += 1;
                for l in j + 1..m {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The scheme's recursion with its memo table. One cache may be reused
/// across queries; keys embed the full remaining state.
pub struct SchemeCache {
    memo: HashMap<(Vec<u32>, u64), Count>,
    use_memo: bool,
}

impl SchemeCache {
    pub fn new() -> Self {
        SchemeCache { memo: HashMap::new(), use_memo: true }
    }

    /// A cache that never stores anything; for memo-soundness testing.
    pub fn without_memo() -> Self {
        SchemeCache { memo: HashMap::new(), use_memo: false }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `op_{[b_1..b_k]}(123)`: sum over all first blocks s.
    pub fn count(&mut self, sizes: &BlockSizes) -> Result<Count> {
        let n = sizes.n();
        if n as usize > 64 {
            return Err(Error::CapacityExceeded(n as usize));
        }
        // with at most two blocks every choice of s contributes 1
        if sizes.k() <= 2 {
            return Ok(binomial(n as u64, sizes.sizes()[0] as i64));
        }
        let mut total = Count::zero();
        for s in subsets_of_size(full_mask(n), sizes.sizes()[0] as usize) {
            total += self.op_s(sizes.sizes(), s);
        }
        Ok(total)
    }

    /// `op_{[b_1..b_k]}(123; s)` with s given as elements of [N].
    pub fn count_with_first(&mut self, sizes: &BlockSizes, s: &[u32]) -> Result<Count> {
        let n = sizes.n();
        if n as usize > 64 {
            return Err(Error::CapacityExceeded(n as usize));
        }
        if s.len() != sizes.sizes()[0] as usize {
            return Err(Error::Precondition(format!(
                "first block must have {} elements, got {}",
                sizes.sizes()[0],
                s.len()
            )));
        }
        Ok(self.op_s(sizes.sizes(), elements_to_mask(s, n)?))
    }

    /// `op_{[b_1..b_k]}(123; [s, t])` with s, t given as elements of [N].
    pub fn count_with_two(&mut self, sizes: &BlockSizes, s: &[u32], t: &[u32]) -> Result<Count> {
        let n = sizes.n();
        if n as usize > 64 {
            return Err(Error::CapacityExceeded(n as usize));
        }
        if sizes.k() < 2 {
            return Err(Error::Precondition("need at least two blocks".into()));
        }
        if s.len() != sizes.sizes()[0] as usize || t.len() != sizes.sizes()[1] as usize {
            return Err(Error::Precondition("prefix block sizes do not match".into()));
        }
        let sm = elements_to_mask(s, n)?;
        let tm = elements_to_mask(t, n)?;
        if sm & tm != 0 {
            return Err(Error::Precondition("prefix blocks must be disjoint".into()));
        }
        Ok(self.op_st(sizes.sizes(), sm, tm))
    }

    fn op_s(&mut self, sizes: &[u32], s: u64) -> Count {
        if sizes.len() <= 2 {
            return Count::one();
        }
        let key = (sizes.to_vec(), s);
        if self.use_memo {
            if let Some(v) = self.memo.get(&key) {
                return v.clone();
            }
        }
        let n: u32 = sizes.iter().sum();
        let complement = full_mask(n) & !s;
        let mut total = Count::zero();
        for t in subsets_of_size(complement, sizes[1] as usize) {
            total += self.op_st(sizes, s, t);
        }
        if self.use_memo {
            self.memo.insert(key, total.clone());
        }
        total
    }

    fn op_st(&mut self, sizes: &[u32], s: u64, t: u64) -> Count {
        let n: u32 = sizes.iter().sum();
        let full = full_mask(n);
        let min_s = s.trailing_zeros();
        let max_t = 63 - t.leading_zeros();

        if min_s > max_t {
            // block 1 sits entirely above block 2: delete it and relabel
            return self.op_s(&sizes[1..], standardize_mask(t, full & !s));
        }

        // i = smallest element of t larger than min(s); exists since
        // max(t) > min(s) and the sets are disjoint
        let above_min_s = t & !((1u64 << (min_s + 1)) - 1);
        let i_bit = above_min_s.trailing_zeros(); // i = i_bit + 1
        let below_i = (1u64 << i_bit) - 1;
        let a = (s & below_i).count_ones();
        let b = (t & below_i).count_ones();

        // any element above i in a later block would complete a 123
        let above_i = full & !below_i & !(1u64 << i_bit);
        if above_i & !(s | t) != 0 {
            return Count::zero();
        }

        // the surviving ground set is exactly [i-1]
        let tail: u32 = sizes[2..].iter().sum();
        assert_eq!(i_bit, a + b + tail, "scheme ground-size identity violated");

        let s_low = lowest_bits(s, a);
        if b == 0 {
            // t survives only above i, pinned; restart with the low part of
            // s as the first block over [i-1] (already standard there)
            let mut next = Vec::with_capacity(sizes.len() - 1);
            next.push(a);
            next.extend_from_slice(&sizes[2..]);
            return self.op_s(&next, s_low);
        }
        let t_low = lowest_bits(t, b);
        let ground = below_i & !s_low;
        let mut next = Vec::with_capacity(sizes.len() - 1);
        next.push(b);
        next.extend_from_slice(&sizes[2..]);
        self.op_s(&next, standardize_mask(t_low, ground))
    }
}

impl Default for SchemeCache {
    fn default() -> Self {
        Self::new()
    }
}

/// `op_{[b_1..b_k]}(123)` with a fresh cache.
pub fn scheme_count(sizes: &BlockSizes) -> Result<Count> {
    SchemeCache::new().count(sizes)
}

/// All partitions of n into exactly k parts, each part >= 1, parts weakly
/// decreasing.
fn partitions_into_parts(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, k: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // each of the k parts is at least 1 and at most max
        let hi = max.min(n.saturating_sub(k - 1));
        for part in (1..=hi).rev() {
            prefix.push(part);
            rec(n - part, k - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, n, &mut Vec::new(), &mut out);
    out
}

/// Number of distinct orderings of a weakly decreasing size list: the
/// multinomial of its multiplicities.
fn ordering_multiplicity(parts: &[u32]) -> Count {
    let mut result = crate::formulas::factorial(parts.len() as u64);
    let mut run = 1u64;
    for w in parts.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            result = crate::formulas::exact_div(result, &crate::formulas::factorial(run))
                .expect("multinomial division is exact");
            run = 1;
        }
    }
    crate::formulas::exact_div(result, &crate::formulas::factorial(run))
        .expect("multinomial division is exact")
}

/// `op_{n,k}(123)`: one scheme evaluation per size multiset, multiplied by
/// its number of orderings (block-size order does not change the count).
pub fn op123_nk(n: u32, k: u32) -> Result<Count> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if n as usize > 64 {
        return Err(Error::CapacityExceeded(n as usize));
    }
    let mut cache = SchemeCache::new();
    let mut total = Count::zero();
    for parts in partitions_into_parts(n, k) {
        let sizes = BlockSizes::new(parts.clone())?;
        total += ordering_multiplicity(&parts) * cache.count(&sizes)?;
    }
    Ok(total)
}

/// `op_n(123) = sum_k op_{n,k}(123)`.
pub fn op123_n(n: u32) -> Result<Count> {
    if n == 0 {
        return Err(Error::Domain("need n >= 1".into()));
    }
    let mut total = Count::zero();
    for k in 1..=n {
        total += op123_nk(n, k)?;
    }
    Ok(total)
}

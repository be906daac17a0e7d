//! Exhaustive generators and the brute-force counting oracle.
//!
//! Everything here is deliberately simple: these are the reference
//! implementations the formulas, scheme, and bijections are tested against.
//! Generation order is lexicographic on the block-assignment vector
//! (element i goes to block assign[i]), so fixtures are stable.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::{BlockSizes, OrderedSetPartition};
use crate::pattern::Pattern;
use crate::{Count, DEFAULT_BUDGET};

/// n! / (b_1! ... b_k!): the number of members of `OP_[b_1..b_k]`.
pub fn multinomial(sizes: &BlockSizes) -> Count {
    num_integer::multinomial(
        &sizes.sizes().iter().map(|&b| BigUint::from(b)).collect::<Vec<_>>(),
    )
}

/// Iterator over `OP_[b_1..b_k]`, lexicographic on the assignment vector.
pub struct Partitions {
    sizes: Vec<u32>,
    n: usize,
    assign: Vec<usize>,
    rem: Vec<u32>,
    started: bool,
    done: bool,
}

impl Partitions {
    pub fn new(sizes: &BlockSizes) -> Self {
        let n = sizes.n() as usize;
        Partitions {
            sizes: sizes.sizes().to_vec(),
            n,
            assign: Vec::with_capacity(n),
            rem: sizes.sizes().to_vec(),
            started: false,
            done: false,
        }
    }

    fn extend_greedily(&mut self) -> bool {
        while self.assign.len() < self.n {
            match (0..self.sizes.len()).find(|&j| self.rem[j] > 0) {
                Some(j) => {
                    self.rem[j] -= 1;
                    self.assign.push(j);
                }
                None => return false,
            }
        }
        true
    }

    fn advance(&mut self) -> bool {
        while let Some(last) = self.assign.pop() {
            self.rem[last] += 1;
            if let Some(j) = (last + 1..self.sizes.len()).find(|&j| self.rem[j] > 0) {
                self.rem[j] -= 1;
                self.assign.push(j);
                return self.extend_greedily();
            }
        }
        false
    }

    fn current(&self) -> OrderedSetPartition {
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); self.sizes.len()];
        for (i, &j) in self.assign.iter().enumerate() {
            blocks[j].push(i as u32 + 1);
        }
        OrderedSetPartition::new(blocks).expect("assignment respects sizes")
    }
}

impl Iterator for Partitions {
    type Item = OrderedSetPartition;

    fn next(&mut self) -> Option<OrderedSetPartition> {
        if self.done {
            return None;
        }
        let ok = if self.started { self.advance() } else { self.started = true; self.extend_greedily() };
        if !ok {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}

/// Iterator over all assignments of `[n]` into `k` ordered, possibly empty
/// blocks (k^n items), lexicographic on the assignment vector.
pub struct StarPartitions {
    k: usize,
    assign: Vec<usize>,
    started: bool,
    done: bool,
}

impl StarPartitions {
    pub fn new(n: u32, k: usize) -> Self {
        assert!(k >= 1);
        StarPartitions { k, assign: vec![0; n as usize], started: false, done: false }
    }

    fn current(&self) -> OrderedSetPartition {
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); self.k];
        for (i, &j) in self.assign.iter().enumerate() {
            blocks[j].push(i as u32 + 1);
        }
        OrderedSetPartition::new_star(blocks).expect("star assignment always valid")
    }
}

impl Iterator for StarPartitions {
    type Item = OrderedSetPartition;

    fn next(&mut self) -> Option<OrderedSetPartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        // base-k increment
        for digit in self.assign.iter_mut().rev() {
            if *digit + 1 < self.k {
                *digit += 1;
                return Some(self.current());
            }
            *digit = 0;
        }
        self.done = true;
        None
    }
}

fn check_budget(needed: &Count, budget: u64) -> Result<()> {
    match needed.to_u128() {
        Some(v) if v <= budget as u128 => Ok(()),
        Some(v) => Err(Error::BudgetExceeded { needed: v, budget }),
        None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
    }
}

/// `op_[b_1..b_k](rho)` by exhaustive enumeration.
pub fn count_by_enumeration(sizes: &BlockSizes, rho: &Pattern, budget: u64) -> Result<Count> {
    check_budget(&multinomial(sizes), budget)?;
    let mut count = Count::zero();
    for p in Partitions::new(sizes) {
        if p.avoids(rho) {
            count += Count::one();
        }
    }
    Ok(count)
}

/// `op_{n,k}(rho)` (star=false) or `op*_{n,k}(rho)` (star=true) by
/// exhaustive enumeration.
pub fn count_nk_by_enumeration(
    n: u32,
    k: usize,
    rho: &Pattern,
    star: bool,
    budget: u64,
) -> Result<Count> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if star {
        let needed = BigUint::from(k).pow(n);
        check_budget(&needed, budget)?;
        let mut count = Count::zero();
        for p in StarPartitions::new(n, k) {
            if p.avoids(rho) {
                count += Count::one();
            }
        }
        Ok(count)
    } else {
        if n < k as u32 {
            return Err(Error::Domain(format!("need k <= n, got k={k}, n={n}")));
        }
        let comps = BlockSizes::compositions(n, k);
        let total: Count = comps.iter().map(multinomial).sum();
        check_budget(&total, budget)?;
        let mut count = Count::zero();
        for sizes in &comps {
            count += count_by_enumeration(sizes, rho, budget)?;
        }
        Ok(count)
    }
}

/// Convenience wrappers with the default enumeration budget.
pub fn count_by_enumeration_default(sizes: &BlockSizes, rho: &Pattern) -> Result<Count> {
    count_by_enumeration(sizes, rho, DEFAULT_BUDGET)
}

pub fn count_nk_by_enumeration_default(n: u32, k: usize, rho: &Pattern, star: bool) -> Result<Count> {
    count_nk_by_enumeration(n, k, rho, star, DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(v: &[u32]) -> BlockSizes {
        BlockSizes::new(v.to_vec()).unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn enumerate_small_shapes() {
        let items: Vec<String> =
            Partitions::new(&sizes(&[1, 1])).map(|p| p.to_string()).collect();
        assert_eq!(items, vec!["1/2", "2/1"]);
        let items: Vec<String> = Partitions::new(&sizes(&[2])).map(|p| p.to_string()).collect();
        assert_eq!(items, vec!["1,2"]);
        let items: Vec<String> =
            Partitions::new(&sizes(&[2, 1])).map(|p| p.to_string()).collect();
        assert_eq!(items, vec!["1,2/3", "1,3/2", "2,3/1"]);
    }

    #[test]
    fn generator_cardinalities() {
        for s in [vec![2, 2], vec![3, 1, 2], vec![1, 1, 1, 1]] {
            let bs = sizes(&s);
            let got = Partitions::new(&bs).count();
            assert_eq!(Count::from(got), multinomial(&bs));
        }
        assert_eq!(StarPartitions::new(1, 2).count(), 2);
        assert_eq!(StarPartitions::new(0, 3).count(), 1);
        assert_eq!(StarPartitions::new(2, 2).count(), 4);
        assert_eq!(StarPartitions::new(5, 3).count(), 243);
    }

    #[test]
    fn star_of_zero_elements_is_all_empty() {
        let items: Vec<String> = StarPartitions::new(0, 3).map(|p| p.to_string()).collect();
        assert_eq!(items, vec!["-/-/-"]);
        let items: Vec<String> = StarPartitions::new(1, 2).map(|p| p.to_string()).collect();
        assert_eq!(items, vec!["1/-", "-/1"]);
    }

    #[test]
    fn oracle_known_values() {
        let rho = pat("123");
        assert_eq!(
            count_by_enumeration_default(&sizes(&[1, 1, 1, 1]), &rho).unwrap(),
            Count::from(14u32)
        );
        assert_eq!(
            count_by_enumeration_default(&sizes(&[2, 2]), &rho).unwrap(),
            Count::from(6u32)
        );
        // one block holds everything: nothing to embed
        assert_eq!(
            count_by_enumeration_default(&sizes(&[6]), &pat("12")).unwrap(),
            Count::one()
        );
        assert_eq!(
            count_nk_by_enumeration_default(4, 3, &rho, false).unwrap(),
            Count::from(27u32)
        );
        assert_eq!(
            count_nk_by_enumeration_default(4, 4, &rho, false).unwrap(),
            Count::from(14u32)
        );
        // op*_{3,2}(123): all 8 star assignments avoid (two blocks only)
        assert_eq!(
            count_nk_by_enumeration_default(3, 2, &rho, true).unwrap(),
            Count::from(8u32)
        );
    }

    #[test]
    fn budget_guard_is_an_error_not_truncation() {
        let err = count_by_enumeration(&sizes(&[5, 5, 5]), &pat("123"), 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let err = count_nk_by_enumeration(20, 4, &pat("123"), true, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}

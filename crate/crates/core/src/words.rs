//! Words over a finite alphabet and their duality with star partitions.
//!
//! Reflecting the graph of a word in the line y = x turns it into an ordered
//! partition with possibly-empty blocks: block j collects the positions
//! holding letter j. The map preserves avoidance of the inversion-fixed
//! patterns 123 and 132.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::OrderedSetPartition;
use crate::pattern::Pattern;
use crate::Count;

/// A finite sequence over the alphabet `[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
    alphabet: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::InvalidWord("alphabet size must be at least 1".into()));
        }
        if letters.iter().any(|&l| l == 0 || l > alphabet) {
            return Err(Error::InvalidWord(format!(
                "letters {letters:?} not all in [1, {alphabet}]"
            )));
        }
        Ok(Word { letters, alphabet })
    }

    /// Infers the alphabet as the largest letter used (at least 1).
    pub fn from_letters(letters: Vec<u32>) -> Result<Self> {
        let alphabet = letters.iter().copied().max().unwrap_or(1);
        Word::new(letters, alphabet)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff some subsequence is order-isomorphic to `u` (equal letters
    /// are order-equal; a strict pattern needs strict inequalities).
    pub fn contains(&self, u: &[u32]) -> bool {
        if u.is_empty() {
            return true;
        }
        let mut chosen: Vec<u32> = Vec::with_capacity(u.len());
        contains_dfs(&self.letters, u, 0, &mut chosen)
    }

    pub fn contains_pattern(&self, rho: &Pattern) -> bool {
        self.contains(rho.entries())
    }

    pub fn avoids_pattern(&self, rho: &Pattern) -> bool {
        !self.contains_pattern(rho)
    }

    /// Parses a digit string (`232133`) or comma-separated letters; the
    /// alphabet is the largest letter seen.
    pub fn parse(s: &str) -> Result<Word> {
        let letters = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if letters.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Word::from_letters(letters)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.alphabet <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

fn contains_dfs(w: &[u32], u: &[u32], start: usize, chosen: &mut Vec<u32>) -> bool {
    let j = chosen.len();
    if j == u.len() {
        return true;
    }
    let positions_left = u.len() - j;
    if w.len() < positions_left {
        return false;
    }
    for i in start..=(w.len() - positions_left) {
        let x = w[i];
        let consistent = chosen
            .iter()
            .enumerate()
            .all(|(a, &c)| x.cmp(&c) == u[j].cmp(&u[a]));
        if consistent {
            chosen.push(x);
            if contains_dfs(w, u, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// `|[k]^n(rho)|` by exhaustive generation of all k^n words.
pub fn count_words_avoiding(k: u32, n: u32, rho: &Pattern, budget: u64) -> Result<Count> {
    if k == 0 {
        return Err(Error::Domain("alphabet size must be at least 1".into()));
    }
    let needed = BigUint::from(k).pow(n);
    match needed.to_u128() {
        Some(v) if v <= budget as u128 => {}
        Some(v) => return Err(Error::BudgetExceeded { needed: v, budget }),
        None => return Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
    }
    let mut count = Count::zero();
    let mut letters = vec![1u32; n as usize];
    loop {
        let w = Word::new(letters.clone(), k).unwrap();
        if !w.contains_pattern(rho) {
            count += Count::one();
        }
        let mut i = n as usize;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            if letters[i] < k {
                letters[i] += 1;
                break;
            }
            letters[i] = 1;
        }
    }
}

/// Graph inversion: block j of the result holds the positions of letter j.
/// `232133` becomes `4/13/256`.
pub fn partition_from_word(w: &Word) -> OrderedSetPartition {
    let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); w.alphabet() as usize];
    for (i, &l) in w.letters().iter().enumerate() {
        blocks[l as usize - 1].push(i as u32 + 1);
    }
    OrderedSetPartition::new_star(blocks).expect("inversion of a valid word")
}

/// Inverse of [`partition_from_word`]: letter i is the index of the block
/// containing i.
pub fn word_from_partition(p: &OrderedSetPartition) -> Word {
    let n = p.ground_size();
    let mut letters = vec![0u32; n as usize];
    for (j, block) in p.blocks().iter().enumerate() {
        for &x in block {
            letters[x as usize - 1] = j as u32 + 1;
        }
    }
    Word::new(letters, p.num_blocks() as u32).expect("inversion of a valid partition")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn sample_word_avoids_123() {
        let w = Word::parse("232133").unwrap();
        assert!(!w.contains_pattern(&pat("123")));
        assert!(w.contains_pattern(&pat("231"))); // 2, 3, 1 at positions 1, 2, 4
    }

    #[test]
    fn short_words_cannot_contain_long_patterns() {
        let w = Word::parse("31").unwrap();
        assert!(!w.contains_pattern(&pat("123")));
        assert!(Word::parse("123").unwrap().contains_pattern(&pat("123")));
    }

    #[test]
    fn repeated_letters_are_order_equal() {
        // 11 contains the word-pattern 11 but not the permutation 12
        let w = Word::parse("11").unwrap();
        assert!(w.contains(&[1, 1]));
        assert!(!w.contains_pattern(&pat("12")));
    }

    #[test]
    fn inversion_examples() {
        let w = Word::parse("232133").unwrap();
        let p = partition_from_word(&w);
        assert_eq!(p.to_string(), "4/1,3/2,5,6");
        assert_eq!(word_from_partition(&p), w);

        let w = Word::parse("255332255").unwrap();
        let p = partition_from_word(&w);
        assert_eq!(p.to_string(), "-/1,6,7/4,5/-/2,3,8,9");
        assert_eq!(word_from_partition(&p), w);

        let ones = Word::parse("11111").unwrap();
        assert_eq!(partition_from_word(&ones).to_string(), "1,2,3,4,5");
    }

    #[test]
    fn word_counts() {
        let b = crate::DEFAULT_BUDGET;
        assert_eq!(count_words_avoiding(5, 0, &pat("123"), b).unwrap(), Count::one());
        assert_eq!(count_words_avoiding(2, 2, &pat("123"), b).unwrap(), Count::from(4u32));
        // Thm 8 instance, both sides via the oracle
        assert_eq!(
            count_words_avoiding(3, 6, &pat("123"), b).unwrap(),
            count_words_avoiding(3, 6, &pat("132"), b).unwrap()
        );
    }

    #[test]
    fn word_count_budget_error() {
        assert!(matches!(
            count_words_avoiding(10, 20, &pat("123"), 1000).unwrap_err(),
            Error::BudgetExceeded { .. }
        ));
    }
}

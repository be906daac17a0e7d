//! Closed-form and raw-summation counting formulas, over exact arithmetic.
//!
//! Every rational-looking expression is evaluated as an integer numerator
//! followed by exact division; a nonzero remainder is a hard error, never
//! a rounding. The raw proof sums (`op123_k3_raw_sum`, `op132_k3_raw_sum`)
//! are kept verbatim so they can be compared against the closed forms.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Count;

/// Grow-only table of binomial coefficients, filled row by row with the
/// Pascal identity.
pub struct BinomialTable {
    rows: Vec<Vec<Count>>,
}

impl BinomialTable {
    pub fn new() -> Self {
        BinomialTable { rows: vec![vec![Count::one()]] }
    }

    fn ensure(&mut self, a: usize) {
        while self.rows.len() <= a {
            let prev = &self.rows[self.rows.len() - 1];
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(Count::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(Count::one());
            self.rows.push(row);
        }
    }

    /// `C(a, b)`, with `C(a, b) = 0` outside `0 <= b <= a`.
    pub fn get(&mut self, a: u64, b: i64) -> Count {
        if b < 0 || b as u64 > a {
            return Count::zero();
        }
        self.ensure(a as usize);
        self.rows[a as usize][b as usize].clone()
    }
}

impl Default for BinomialTable {
    fn default() -> Self {
        Self::new()
    }
}

static TABLE: LazyLock<Mutex<BinomialTable>> = LazyLock::new(|| Mutex::new(BinomialTable::new()));

/// `C(a, b)` from the shared memoized table.
pub fn binomial(a: u64, b: i64) -> Count {
    TABLE.lock().unwrap().get(a, b)
}

pub fn factorial(n: u64) -> Count {
    let mut f = Count::one();
    for i in 2..=n {
        f *= Count::from(i);
    }
    f
}

/// Exact division; a nonzero remainder is an error.
pub fn exact_div(num: Count, den: &Count) -> Result<Count> {
    use num_integer::Integer;
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(num.to_string(), den.to_string()))
    }
}

/// The n-th Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan_number(n: u64) -> Count {
    exact_div(binomial(2 * n, n as i64), &Count::from(n + 1)).expect("Catalan division is exact")
}

/// `op_{n,k}(12) = C(n-1, k-1)`: compositions of n into k parts.
pub fn op12_closed(n: u64, k: u64) -> Result<Count> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    Ok(binomial(n - 1, k as i64 - 1))
}

/// `op_{n,3}(123) = (n^2/8 + 3n/8 - 2) 2^n + 3`, as the exact integer
/// `(n^2 + 3n - 16) 2^n / 8 + 3`.
pub fn op123_k3_closed(n: u64) -> Result<Count> {
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got n={n}")));
    }
    let num = Count::from(n * n + 3 * n - 16) * BigUint::from(2u32).pow(n as u32);
    Ok(exact_div(num, &Count::from(8u32))? + Count::from(3u32))
}

/// The quadruple sum behind [`op123_k3_closed`], with the index bounds kept
/// verbatim: a, b are the sizes of blocks 1 and 2 (c = n - a - b the third),
/// l is the smallest element of block 1, i the number of elements below l
/// in block 2.
pub fn op123_k3_raw_sum(n: u64) -> Count {
    let mut total = Count::zero();
    for a in 1..=n.saturating_sub(2) {
        for b in 1..=(n - 1 - a) {
            let c = n - a - b;
            for l in 1..=(n - a + 1) {
                let lo = (l as i64 - 1 - c as i64).max(0);
                let hi = ((l - 1) as i64).min(b as i64);
                let mut i = lo;
                while i <= hi {
                    total += binomial(l - 1, i) * binomial(n - l, a as i64 - 1);
                    i += 1;
                }
            }
        }
    }
    total
}

/// The two-case sum behind `op_{n,3}(132)`: partitions whose first two
/// blocks avoid 12, plus those containing a 12 across them (with the
/// overcount correction subtracted), kept verbatim.
pub fn op132_k3_raw_sum(n: u64) -> Count {
    let mut no12 = Count::zero();
    for a in 1..=n.saturating_sub(2) {
        for _b in 1..=(n - a - 1) {
            no12 += binomial(n, a as i64);
        }
    }
    let mut with12 = Count::zero();
    let mut correction = Count::zero();
    for i in 1..n {
        for j in (i + 1)..=n {
            for a1 in 0..=(j - i - 1) {
                correction += binomial(j - i - 1, a1 as i64);
                for a2 in 0..i {
                    for b in 0..=(n - j) {
                        with12 += binomial(j - i - 1, a1 as i64)
                            * binomial(i - 1, a2 as i64)
                            * binomial(n - j, b as i64);
                    }
                }
            }
        }
    }
    no12 + with12 - correction
}

/// `op_{n,n-1}(123) = 3 (n-1)^2 C(2n-2, n-1) / (n (n+1))`.
pub fn op123_nminus1_closed(n: u64) -> Result<Count> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got n={n}")));
    }
    let num = Count::from(3 * (n - 1) * (n - 1)) * binomial(2 * n - 2, n as i64 - 1);
    exact_div(num, &Count::from(n * (n + 1)))
}

/// One step of the recurrence `op_{n,n-1} = (4n-6)(n-1)^2 / ((n-2)^2 (n+1))
/// * op_{n-1,n-2}`. An inexact division signals an inconsistent `prev`.
pub fn op123_nminus1_recurrence_step(n: u64, prev: &Count) -> Result<Count> {
    if n <= 2 {
        return Err(Error::Domain(format!("need n > 2, got n={n}")));
    }
    let num = Count::from((4 * n - 6) * (n - 1) * (n - 1)) * prev;
    exact_div(num, &Count::from((n - 2) * (n - 2) * (n + 1)))
}

/// `c_{n,i} = (n-2+i)! (n-i+1) / ((i-1)! n!)`: 123-avoiding permutations of
/// `[n]` beginning with i (a Catalan-triangle entry).
pub fn catalan_triangle_entry(n: u64, i: u64) -> Result<Count> {
    if i == 0 || i > n {
        return Err(Error::Domain(format!("need 1 <= i <= n, got i={i}, n={n}")));
    }
    let num = factorial(n + i - 2) * Count::from(n - i + 1);
    exact_div(num, &(factorial(i - 1) * factorial(n)))
}

/// `op_{[p,1,...,1]}(123) = (p+1) C(2n-p, n-p) / (n+1)` with the size-p
/// block first and n total elements.
pub fn op123_one_big_block_closed(p: u64, n: u64) -> Result<Count> {
    if p == 0 || p >= n {
        return Err(Error::Domain(format!("need 1 <= p < n, got p={p}, n={n}")));
    }
    let num = Count::from(p + 1) * binomial(2 * n - p, (n - p) as i64);
    exact_div(num, &Count::from(n + 1))
}

/// The summation form of [`op123_one_big_block_closed`]:
/// `sum_i C(n-i, p-1) c_{n-(p-1), i}`.
pub fn op123_one_big_block_sum(p: u64, n: u64) -> Result<Count> {
    if p == 0 || p >= n {
        return Err(Error::Domain(format!("need 1 <= p < n, got p={p}, n={n}")));
    }
    let m = n - (p - 1);
    let mut total = Count::zero();
    for i in 1..=m {
        total += binomial(n - i, p as i64 - 1) * catalan_triangle_entry(m, i)?;
    }
    Ok(total)
}

/// 123-avoiders over all shapes with one block of size p and n-p singleton
/// blocks, the big block in any position:
/// `(n-p+1)(p+1) C(2n-p, n-p) / (n+1)`.
///
/// Restricted to p >= 2: with p = 1 every block is a singleton and the
/// "distinguished" block is not unique, so the shape would be counted n
/// times over (the formula gives n C_n where op_{n,n}(123) = C_n).
pub fn op123_nk_one_block_p(n: u64, p: u64) -> Result<Count> {
    if p < 2 || p >= n {
        return Err(Error::Domain(format!("need 2 <= p < n, got p={p}, n={n}")));
    }
    Ok(Count::from(n - p + 1) * op123_one_big_block_closed(p, n)?)
}

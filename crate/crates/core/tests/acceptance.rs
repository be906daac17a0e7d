//! Release gate: one test per numbered criterion, each printing a PASS/FAIL
//! line. Criterion 9 encodes a claimed root trend that the exact counts
//! contradict; it is asserted as stated and expected to stay red.

use std::collections::HashSet;

use opav::bijections::{block_swap, phi_123_to_132, psi_word, sw_decode, sw_encode};
use opav::formulas::{
    catalan_number, catalan_triangle_entry, op12_closed, op123_k3_closed, op123_nminus1_closed,
    op123_one_big_block_closed,
};
use opav::generate::{
    count_by_enumeration_default, count_nk_by_enumeration_default, Partitions, StarPartitions,
};
use opav::lab::{
    check_conjecture1, check_lower_bound_doubletons, check_subadditivity, nth_root_rendered,
    op_star_from_nonempty, root_less, sequence_table, Verdict,
};
use opav::scheme::{op123_nk, scheme_count};
use opav::words::{count_words_avoiding, Word};
use opav::{BlockSizes, Count, OrderedSetPartition, Pattern, DEFAULT_BUDGET};

fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}

fn part(s: &str) -> OrderedSetPartition {
    s.parse().unwrap()
}

fn report(criterion: u32, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS");
    } else {
        println!("criterion {criterion}: FAIL ({})", failures.join("; "));
        panic!("criterion {criterion} failed: {}", failures.join("; "));
    }
}

#[test]
fn criterion_01_row_n4() {
    let expected = [1u32, 14, 27, 14];
    let mut failures = Vec::new();
    for (k, &e) in (1u32..=4).zip(expected.iter()) {
        let oracle = count_nk_by_enumeration_default(4, k as usize, &pat("123"), false).unwrap();
        let scheme = op123_nk(4, k).unwrap();
        if oracle != Count::from(e) || scheme != Count::from(e) {
            failures.push(format!("k={k}: oracle={oracle}, scheme={scheme}, expected {e}"));
        }
    }
    report(1, failures);
}

#[test]
fn criterion_02_closed_forms_vs_scheme() {
    let mut failures = Vec::new();
    for n in 3u64..=14 {
        let closed = op123_k3_closed(n).unwrap();
        let scheme = op123_nk(n as u32, 3).unwrap();
        if closed != scheme {
            failures.push(format!("k=3, n={n}: closed={closed}, scheme={scheme}"));
        }
    }
    for n in 2u64..=10 {
        let closed = op123_nminus1_closed(n).unwrap();
        let scheme = op123_nk(n as u32, n as u32 - 1).unwrap();
        if closed != scheme {
            failures.push(format!("k=n-1, n={n}: closed={closed}, scheme={scheme}"));
        }
    }
    report(2, failures);
}

#[test]
fn criterion_03_oracle_sweep_to_n8() {
    let rho = pat("123");
    let mut failures = Vec::new();
    for n in 1u32..=8 {
        for k in 1..=n as usize {
            for sizes in BlockSizes::compositions(n, k) {
                let scheme = scheme_count(&sizes).unwrap();
                let oracle = count_by_enumeration_default(&sizes, &rho).unwrap();
                if scheme != oracle {
                    failures.push(format!("[{sizes}]: scheme={scheme}, oracle={oracle}"));
                }
            }
        }
    }
    report(3, failures);
}

#[test]
fn criterion_04_worked_examples() {
    let mut failures = Vec::new();

    let phi_out = phi_123_to_132(&part("5,9/3,8/1,2,6,7/4")).unwrap().to_string();
    if phi_out != "5,9/3,6/1,2,4,7/8" {
        failures.push(format!("phi gave {phi_out}"));
    }

    let swap_out = block_swap(&part("5/3,7/1,4,6/2"), 2).unwrap().to_string();
    if swap_out != "5/1,4,7/3,6/2" {
        failures.push(format!("swap gave {swap_out}"));
    }

    let star = part("8/-/3,5,9/1,2/-/4,6/7").into_star();
    let enc = sw_encode(&star, &pat("132")).unwrap().to_string();
    if enc != "7/3,5/1,2/4/6/8/9 13467005004412" {
        failures.push(format!("star encoding gave {enc}"));
    }

    report(4, failures);
}

#[test]
fn criterion_05_bijection_cardinalities() {
    let (rho123, rho132) = (pat("123"), pat("132"));
    let mut failures = Vec::new();

    for n in 1u32..=7 {
        for k in 1..=n as usize {
            for sizes in BlockSizes::compositions(n, k) {
                let avoid123: Vec<_> =
                    Partitions::new(&sizes).filter(|p| p.avoids(&rho123)).collect();
                let count132 =
                    Partitions::new(&sizes).filter(|p| p.avoids(&rho132)).count();
                let mut images = HashSet::new();
                let mut ok = true;
                for p in &avoid123 {
                    let q = phi_123_to_132(p).unwrap();
                    ok &= q.avoids(&rho132) && images.insert(q.to_string());
                }
                if !ok || images.len() != count132 {
                    failures.push(format!(
                        "[{sizes}]: |123|={}, |132|={count132}, injective images={}",
                        avoid123.len(),
                        images.len()
                    ));
                }
            }
        }
    }

    for k in 1u32..=3 {
        for n in 1u32..=6 {
            let c123 = count_words_avoiding(k, n, &rho123, DEFAULT_BUDGET).unwrap();
            let c132 = count_words_avoiding(k, n, &rho132, DEFAULT_BUDGET).unwrap();
            if c123 != c132 {
                failures.push(format!("words k={k} n={n}: {c123} vs {c132}"));
                continue;
            }
            // psi realizes the equality word by word
            let mut images = HashSet::new();
            let mut total = Count::from(0u32);
            let mut letters = vec![1u32; n as usize];
            'words: loop {
                let w = Word::new(letters.clone(), k).unwrap();
                if w.avoids_pattern(&rho123) {
                    let v = psi_word(&w).unwrap();
                    if !v.avoids_pattern(&rho132) || !images.insert(v.to_string()) {
                        failures.push(format!("psi broke on {w}"));
                        break 'words;
                    }
                    total += Count::from(1u32);
                }
                let mut i = n as usize;
                loop {
                    if i == 0 {
                        break 'words;
                    }
                    i -= 1;
                    if letters[i] < k {
                        letters[i] += 1;
                        break;
                    }
                    letters[i] = 1;
                }
            }
            if total != c123 {
                failures.push(format!("psi sweep k={k} n={n} visited {total} of {c123}"));
            }
        }
    }

    report(5, failures);
}

#[test]
fn criterion_06_formula_anchors() {
    let mut failures = Vec::new();

    let rho12 = pat("12");
    for n in 1u64..=8 {
        for k in 1..=n {
            let closed = op12_closed(n, k).unwrap();
            let oracle =
                count_nk_by_enumeration_default(n as u32, k as usize, &rho12, false).unwrap();
            if closed != oracle {
                failures.push(format!("op12 n={n} k={k}: {closed} vs {oracle}"));
            }
        }
    }

    let rho123 = pat("123");
    for n in 1u32..=8 {
        let sizes = BlockSizes::new(vec![1; n as usize]).unwrap();
        let mut by_first = vec![Count::from(0u32); n as usize];
        for p in Partitions::new(&sizes).filter(|p| p.avoids(&rho123)) {
            by_first[p.blocks()[0][0] as usize - 1] += Count::from(1u32);
        }
        let mut row_sum = Count::from(0u32);
        for i in 1u64..=n as u64 {
            let entry = catalan_triangle_entry(n as u64, i).unwrap();
            if entry != by_first[i as usize - 1] {
                failures.push(format!(
                    "triangle n={n} i={i}: {entry} vs {}",
                    by_first[i as usize - 1]
                ));
            }
            row_sum += entry;
        }
        if row_sum != catalan_number(n as u64) {
            failures.push(format!("triangle row {n} sums to {row_sum}"));
        }
    }

    for p in 1u64..=4 {
        for n in (p + 1)..=8 {
            let mut sizes = vec![1u32; (n - p + 1) as usize];
            sizes[0] = p as u32;
            let closed = op123_one_big_block_closed(p, n).unwrap();
            let oracle =
                count_by_enumeration_default(&BlockSizes::new(sizes).unwrap(), &rho123).unwrap();
            if closed != oracle {
                failures.push(format!("big block p={p} n={n}: {closed} vs {oracle}"));
            }
        }
    }

    report(6, failures);
}

#[test]
fn criterion_07_doubleton_recurrence() {
    let rep = check_conjecture1(6).unwrap();
    let mut failures = Vec::new();
    if rep.verdict != Verdict::Holds {
        failures.push(format!(
            "verdict {} (witness {:?})",
            rep.verdict, rep.witness
        ));
    }
    report(7, failures);
}

#[test]
fn criterion_08_star_identities() {
    let mut failures = Vec::new();

    for rho in [pat("123"), pat("132")] {
        for n in 0u32..=6 {
            for k in 1u32..=4 {
                let identity = op_star_from_nonempty(n, k, &rho, DEFAULT_BUDGET).unwrap();
                let oracle =
                    count_nk_by_enumeration_default(n, k as usize, &rho, true).unwrap();
                if identity != oracle {
                    failures.push(format!(
                        "star identity n={n} k={k} rho={rho}: {identity} vs {oracle}"
                    ));
                }
            }
        }
    }

    let rho132 = pat("132");
    for k in 1usize..=4 {
        // the encoding removes k elements per round, so it needs n >= k
        for n in k as u32..=6 {
            for p in StarPartitions::new(n, k).filter(|p| p.avoids(&rho132)) {
                let enc = sw_encode(&p, &rho132).unwrap();
                let back = sw_decode(&enc, &rho132).unwrap();
                if back != p {
                    failures.push(format!("roundtrip broke on {p}: got {back}"));
                }
            }
        }
    }

    for rho in [pat("123"), pat("132")] {
        let rep = check_subadditivity(7, 4, &rho, DEFAULT_BUDGET).unwrap();
        if rep.verdict != Verdict::Holds {
            failures.push(format!("subadditivity rho={rho}: {}", rep.verdict));
        }
    }

    report(8, failures);
}

#[test]
fn criterion_09_directional_asymptotics() {
    let mut failures = Vec::new();

    let values: Vec<Count> = (8u32..=20).map(|n| op123_nk(n, 3).unwrap()).collect();
    let mut increasing = true;
    for (i, n) in (8u32..20).enumerate() {
        if !root_less(&values[i], n, &values[i + 1], n + 1) {
            increasing = false;
        }
    }
    let first = nth_root_rendered(&values[0], 8);
    let last = nth_root_rendered(&values[values.len() - 1], 20);
    if !increasing {
        failures.push(format!(
            "n-th roots of the k=3 counts are not increasing on 8..=20 (they fall from {first} to {last})"
        ));
    }
    let v20 = &values[values.len() - 1];
    let scaled = v20 * Count::from(10u32).pow(20);
    let low = Count::from(17u32).pow(20);
    let high = Count::from(2u32).pow(20);
    if scaled < low || *v20 > high {
        failures.push(format!("20th root {last} outside [1.7, 2.0]"));
    }

    let lb = check_lower_bound_doubletons(6).unwrap();
    if lb.verdict != Verdict::Holds {
        failures.push(format!("doubleton lower bound: {}", lb.verdict));
    }

    if op123_nk(10, 4).unwrap() <= op123_nk(10, 3).unwrap() {
        failures.push("op(10,4) <= op(10,3)".into());
    }

    report(9, failures);
}

#[test]
fn criterion_10_bfile_emission() {
    let mut failures = Vec::new();

    let table = sequence_table("a220097", 6).unwrap();
    let bfile: String = table
        .entries
        .iter()
        .map(|e| format!("{} {}\n", e.index, e.value))
        .collect();
    if bfile != "1 1\n2 6\n3 43\n4 352\n5 3114\n6 29004\n" {
        failures.push(format!("b-file text was {bfile:?}"));
    }

    let rho = pat("123");
    for entry in table.entries.iter().take(5) {
        let sizes = BlockSizes::new(vec![2; entry.index as usize]).unwrap();
        let oracle = count_by_enumeration_default(&sizes, &rho).unwrap();
        if oracle != entry.value {
            failures.push(format!(
                "term {}: scheme={}, oracle={oracle}",
                entry.index, entry.value
            ));
        }
    }

    report(10, failures);
}

use crate::bipartite::BipartiteMatrix;
use crate::error::{Error, Result};

pub const MAX_PERMANENT_SIDE: usize = 24;

/// Permanent of a 0/1 matrix by Ryser's formula, visiting column subsets in Gray-code
/// order so each step updates the row sums by one column.
///
/// Terms are accumulated in wrapping `i128`. The true value is below `24! < 2^80`, so
/// the wrapped sum is exact even when intermediate partial sums overflow.
pub fn permanent(b: &BipartiteMatrix) -> Result<u128> {
    let m = b.size();
    if m > MAX_PERMANENT_SIDE {
        return Err(Error::LimitExceeded {
            what: "permanent side",
            value: m,
            limit: MAX_PERMANENT_SIDE,
            hint: "permanents are exponential in the side length",
        });
    }
    if m == 0 {
        return Ok(1);
    }
    let mut row_sums = vec![0i64; m];
    let mut in_set = 0u32;
    let mut total: i128 = 0;
    for g in 1u32..(1 << m) {
        let j = g.trailing_zeros() as usize;
        let adding = in_set >> j & 1 == 0;
        in_set ^= 1 << j;
        for (i, sum) in row_sums.iter_mut().enumerate() {
            if b.get(i, j) {
                *sum += if adding { 1 } else { -1 };
            }
        }
        if row_sums.contains(&0) {
            continue;
        }
        let product = row_sums
            .iter()
            .fold(1i128, |acc, &s| acc.wrapping_mul(s as i128));
        if (m - in_set.count_ones() as usize) % 2 == 0 {
            total = total.wrapping_add(product);
        } else {
            total = total.wrapping_sub(product);
        }
    }
    u128::try_from(total).map_err(|_| Error::ContractViolation(format!("negative permanent {total}")))
}

/// Every perfect matching of `b`, each as a left-to-right assignment, in lexicographic order.
pub fn perfect_matchings(b: &BipartiteMatrix) -> Vec<Vec<usize>> {
    fn go(b: &BipartiteMatrix, i: usize, used: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == b.size() {
            out.push(cur.clone());
            return;
        }
        let mut free = b.row_bits(i) & !used;
        while free != 0 {
            let j = free.trailing_zeros() as usize;
            free &= free - 1;
            cur.push(j);
            go(b, i + 1, used | 1 << j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(b, 0, 0, &mut Vec::new(), &mut out);
    out
}

//! Gaussian elimination over the prime field `F_p`.

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] % p != 0) else {
            continue;
        };
        rows.swap(r, k);
        let scale = inv_mod(rows[r][c] as u64, p64);
        for x in rows[r].iter_mut() {
            *x = ((*x as u64 * scale) % p64) as u32;
        }
        for k in 0..rows.len() {
            if k == r || rows[k][c] == 0 {
                continue;
            }
            let f = rows[k][c] as u64;
            for col in 0..ncols {
                let sub = f * rows[r][col] as u64 % p64;
                rows[k][col] = ((rows[k][col] as u64 + p64 - sub) % p64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a family of vectors over `F_p`.
pub fn rank_of(vectors: &[Vec<u32>], p: u32) -> usize {
    let mut rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|&x| x % p).collect()).collect();
    row_reduce(&mut rows, p).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_of(&[vec![1, 0], vec![0, 1]], 3), 2);
        assert_eq!(rank_of(&[vec![1, 1], vec![2, 2]], 3), 1);
        assert_eq!(rank_of(&[vec![0, 0]], 5), 0);
        assert_eq!(rank_of(&[], 5), 0);
        assert_eq!(rank_of(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 2), 2);
        assert_eq!(rank_of(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3), 3);
    }

    /// Brute-force rank: log_p of the size of the span.
    fn span_rank(vectors: &[Vec<u32>], p: u32) -> usize {
        let dim = vectors.first().map_or(0, |v| v.len());
        let mut span = std::collections::HashSet::from([vec![0u32; dim]]);
        for v in vectors {
            let mut next = span.clone();
            for w in &span {
                for c in 1..p {
                    next.insert(w.iter().zip(v).map(|(&a, &b)| (a + c * b) % p).collect());
                }
            }
            span = next;
        }
        let mut size = span.len();
        let mut r = 0;
        while size > 1 {
            size /= p as usize;
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn rank_matches_span_size(p in prop::sample::select(vec![2u32, 3, 5]),
                                  rows in prop::collection::vec(prop::collection::vec(0u32..5, 3), 0..5)) {
            let rows: Vec<Vec<u32>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
            prop_assert_eq!(rank_of(&rows, p), span_rank(&rows, p));
        }
    }
}

use crate::partition::Partition;

/// Number of symmetric nonnegative integer matrices with row sums `τ`.
///
/// With `loops = false` the diagonal is zero (loopless multigraphs with
/// degree sequence `τ`). With `loops = true` diagonal entries are even: a
/// loop at vertex `i` adds 2 to its degree.
pub fn multigraph_count(tau: &Partition, loops: bool) -> u64 {
    let mut remaining: Vec<usize> = tau.parts().to_vec();
    count_from(&mut remaining, 0, loops)
}

/// Fills row `i` (loop count, then edges to later vertices) and recurses.
fn count_from(remaining: &mut [usize], i: usize, loops: bool) -> u64 {
    if i == remaining.len() {
        return 1;
    }
    let later: usize = remaining[i + 1..].iter().sum();
    let need = remaining[i];
    if need > later && !loops {
        return 0;
    }
    let mut total = 0;
    let max_loops = if loops { need / 2 } else { 0 };
    for l in 0..=max_loops {
        let rest = need - 2 * l;
        if rest > later {
            continue;
        }
        remaining[i] = 0;
        total += distribute(remaining, i, i + 1, rest, loops);
        remaining[i] = need;
    }
    total
}

/// Spreads `left` edges from vertex `i` over vertices `j..`.
fn distribute(remaining: &mut [usize], i: usize, j: usize, left: usize, loops: bool) -> u64 {
    if j == remaining.len() {
        return if left == 0 { count_from(remaining, i + 1, loops) } else { 0 };
    }
    let capacity: usize = remaining[j..].iter().sum();
    if left > capacity {
        return 0;
    }
    let mut total = 0;
    for a in 0..=left.min(remaining[j]) {
        remaining[j] -= a;
        total += distribute(remaining, i, j + 1, left - a, loops);
        remaining[j] += a;
    }
    total
}

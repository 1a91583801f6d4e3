/// Wynn's epsilon algorithm applied to a sequence of partial sums.
///
/// Returns the highest-order even-column estimate and an error estimate built
/// from the spread of the last three estimates.
pub fn wynn_epsilon(seq: &[f64]) -> (f64, f64) {
    let n = seq.len();
    match n {
        0 => return (0.0, f64::INFINITY),
        1 => return (seq[0], f64::INFINITY),
        2 => return (seq[1], (seq[1] - seq[0]).abs()),
        _ => {}
    }
    // Estimates obtained from successively longer prefixes.
    let mut estimates = Vec::with_capacity(3);
    for len in (n.saturating_sub(2)..=n).filter(|&l| l >= 3) {
        estimates.push(epsilon_table(&seq[..len]));
    }
    let best = *estimates.last().unwrap();
    let err = match estimates.len() {
        1 => (best - seq[n - 1]).abs(),
        2 => (best - estimates[0]).abs(),
        _ => (best - estimates[1]).abs() + (best - estimates[0]).abs(),
    };
    (best, err)
}

/// Longest tail of the sequence fed to the table; deeper tables lose accuracy.
const MAX_TABLE: usize = 24;

fn epsilon_table(seq: &[f64]) -> f64 {
    let seq = &seq[seq.len().saturating_sub(MAX_TABLE)..];
    // prev holds column k−1, cur column k; even columns approximate the limit.
    let mut prev = vec![0.0; seq.len() + 1];
    let mut cur: Vec<f64> = seq.to_vec();
    let mut best = *seq.last().unwrap();
    let mut k = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 || !diff.is_finite() {
                // Converged (or broken down) at this depth.
                return if k % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + 1.0 / diff);
        }
        k += 1;
        if k % 2 == 0 {
            let candidate = *next.last().unwrap();
            if candidate.is_finite() {
                best = candidate;
            } else {
                return best;
            }
        }
        prev = cur;
        cur = next;
    }
    best
}

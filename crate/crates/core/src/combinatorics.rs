//! Exact integer combinatorics and multi-index enumeration.

/// `C(n, k)` in exact integer arithmetic; zero when `k > n`.
///
/// Panics on overflow, which does not happen for `n <= 120`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc
            .checked_mul((n - i) as u128)
            .expect("binomial coefficient overflow")
            / (i as u128 + 1);
    }
    acc
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// Number of distinct permutations of a sorted multi-index:
/// `n! / Π (multiplicity of each value)!`.
pub fn distinct_permutations(sorted: &[usize]) -> u128 {
    let mut count = factorial(sorted.len() as u64);
    for run in runs(sorted) {
        count /= factorial(run as u64);
    }
    count
}

/// Lengths of maximal runs of equal values in a sorted slice.
pub fn runs(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        out.push(j - i);
        i = j;
    }
    out
}

/// Rearranges `seq` into the next lexicographic permutation. Returns `false`
/// (leaving `seq` sorted ascending) once the last permutation was reached.
/// Repeated values are handled, so starting from a sorted sequence this
/// visits each distinct permutation exactly once.
pub fn next_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        seq.reverse();
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// All nondecreasing multi-indices of length `order` over `0..dim`, in
/// lexicographic order. There are `C(dim + order - 1, order)` of them.
pub fn sorted_multi_indices(dim: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    let mut current = vec![0usize; order];
    loop {
        out.push(current.clone());
        // Find the rightmost slot that can still be incremented.
        let Some(pos) = (0..order).rev().find(|&p| current[p] + 1 < dim) else {
            break;
        };
        let v = current[pos] + 1;
        for slot in &mut current[pos..] {
            *slot = v;
        }
    }
    out
}

/// `ψ(k)`: `k` for odd `k`, `k - 1` for even `k`.
pub fn psi(k: u64) -> u64 {
    if k % 2 == 1 {
        k
    } else {
        k - 1
    }
}

//! Small shared utilities: integer combinatorics and the data-parallel map
//! that backs every batch loop in the crate.

/// C(n, k) as u128, `None` on overflow.
pub fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // C(n,i)·(n−i) is divisible by i+1, so the division is exact.
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// Order-preserving map over owned items, run on the rayon pool when the
/// `parallel` feature is on. Item order in the output never depends on the
/// execution schedule, so results are identical either way.
#[cfg(feature = "parallel")]
pub fn parallel_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn parallel_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// The single-threaded map, available regardless of features; benchmarks
/// compare this against [`parallel_map`].
pub fn sequential_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

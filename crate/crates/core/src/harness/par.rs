//! Data-parallel helpers. With the `parallel` feature work is spread over a
//! rayon pool of the requested size; without it, or with one thread, it runs
//! sequentially. Results never depend on the thread count.

/// `requested`, or the machine's available parallelism when absent or zero.
pub fn resolve_threads(requested: Option<usize>) -> usize {
    match requested {
        Some(t) if t > 0 => t,
        _ => std::thread::available_parallelism().map_or(1, |n| n.get()),
    }
}

/// Maps `f` over `items` in order, giving each worker its own scratch state.
pub fn map_with<T, S, R, I, F>(items: &[T], threads: usize, init: I, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if threads > 1 {
        use rayon::prelude::*;
        return pool(threads).install(|| items.par_iter().map_init(&init, |s, x| f(s, x)).collect());
    }
    let _ = threads;
    let mut state = init();
    items.iter().map(|x| f(&mut state, x)).collect()
}

/// Folds `items` into per-worker accumulators and merges them. `merge` must be
/// associative and commutative for the result to be scheduling-independent.
pub fn fold_with<T, A, I, F, M>(items: &[T], threads: usize, init: I, fold: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &T) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if threads > 1 {
        use rayon::prelude::*;
        return pool(threads).install(|| {
            items
                .par_iter()
                .fold(&init, |mut acc, x| {
                    fold(&mut acc, x);
                    acc
                })
                .reduce(&init, &merge)
        });
    }
    let _ = (threads, &merge);
    let mut acc = init();
    for x in items {
        fold(&mut acc, x);
    }
    acc
}

#[cfg(feature = "parallel")]
fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_count_does_not_change_results() {
        let items: Vec<u64> = (0..10_000).collect();
        let one = map_with(&items, 1, || 0u64, |calls, &x| {
            *calls += 1;
            x * x % 97
        });
        let many = map_with(&items, 4, || 0u64, |_, &x| x * x % 97);
        assert_eq!(one, many);
        let sum = |t| fold_with(&items, t, || 0u64, |a, &x| *a += x, |a, b| a + b);
        assert_eq!(sum(1), sum(3));
        assert_eq!(sum(1), 49_995_000);
    }

    #[test]
    fn default_threads() {
        assert_eq!(resolve_threads(Some(3)), 3);
        assert!(resolve_threads(None) >= 1);
        assert!(resolve_threads(Some(0)) >= 1);
    }
}

//! Data-parallel helpers with a sequential fallback.

use crate::error::Result;

/// Apply `f` to `items` in order and return the first `Some` or error.
///
/// With the `parallel` feature and `parallel` set, items run on the rayon
/// pool; the result is still the one of the earliest item that produces one.
pub fn first_found<T, R, F>(items: Vec<T>, parallel: bool, f: F) -> Result<Option<R>>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Result<Option<R>> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items
            .into_par_iter()
            .map(f)
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            })
            .unwrap_or(Ok(None));
    }
    let _ = parallel;
    for item in items {
        if let Some(r) = f(item)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Map `f` over `items`, on the rayon pool when enabled.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Whether the crate was built with rayon.
pub const fn available() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn earliest_result_wins() {
        for parallel in [false, true] {
            let items: Vec<u32> = (0..100).collect();
            let r = first_found(items.clone(), parallel, |x| Ok((x % 7 == 6).then_some(x))).unwrap();
            assert_eq!(r, Some(6));
            let r = first_found(items.clone(), parallel, |x| {
                if x == 3 {
                    Err(Error::usage("three"))
                } else {
                    Ok((x == 50).then_some(x))
                }
            });
            assert!(r.is_err());
            assert_eq!(map(&items, parallel, |x| x * 2)[10], 20);
        }
    }
}

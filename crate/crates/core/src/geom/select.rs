use rand::Rng;

use super::meter::CostMeter;
use crate::error::{Error, Result};

/// Rearranges `items` so that `items[k]` holds the element of rank `k` under
/// `less`, everything before it is smaller and everything after is larger.
///
/// Pivots are drawn from `rng`, so the expected number of comparisons is
/// linear whatever the input order. Every call of `less` is charged to `meter`.
pub fn select_kth<T, R, F>(items: &mut [T], k: usize, mut less: F, meter: &mut CostMeter, rng: &mut R) -> Result<()>
where
    R: Rng + ?Sized,
    F: FnMut(&T, &T) -> bool,
{
    if k >= items.len() {
        return Err(Error::RankOutOfRange { k, len: items.len() });
    }
    let mut less = |a: &T, b: &T| {
        meter.comparisons += 1;
        less(a, b)
    };
    let (mut lo, mut hi) = (0, items.len());
    while hi - lo > 1 {
        let p = rng.random_range(lo..hi);
        items.swap(p, hi - 1);
        let mut store = lo;
        for i in lo..hi - 1 {
            if less(&items[i], &items[hi - 1]) {
                items.swap(i, store);
                store += 1;
            }
        }
        items.swap(store, hi - 1);
        match k.cmp(&store) {
            std::cmp::Ordering::Equal => break,
            std::cmp::Ordering::Less => hi = store,
            std::cmp::Ordering::Greater => lo = store + 1,
        }
    }
    Ok(())
}

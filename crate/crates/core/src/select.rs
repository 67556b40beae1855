//! Order-statistic selection.
//!
//! Selection is delegated to [`slice::select_nth_unstable_by`], an introselect
//! whose median-of-medians fallback bounds the work at `O(n)` for every input.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("k = {k} is out of range for {len} values (need 1 ≤ k ≤ len)")]
pub struct SelectError {
    pub k: usize,
    pub len: usize,
}

/// The `k`-th largest element of `values` (1-based, counting multiplicity).
pub fn select_kth_largest<T: Ord + Clone>(values: &[T], k: usize) -> Result<T, SelectError> {
    let mut scratch = values.to_vec();
    kth_largest_in_place(&mut scratch, k).cloned()
}

/// In-place variant; reorders `values`.
pub fn kth_largest_in_place<T: Ord>(values: &mut [T], k: usize) -> Result<&T, SelectError> {
    if k == 0 || k > values.len() {
        return Err(SelectError { k, len: values.len() });
    }
    let (_, kth, _) = values.select_nth_unstable_by(k - 1, |a, b| b.cmp(a));
    Ok(kth)
}

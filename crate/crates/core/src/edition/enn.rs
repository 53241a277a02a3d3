use crate::data::{knn_classify, Dataset};
use crate::error::{Error, Result};
use crate::mask::SelectionMask;
use crate::par;

/// Wilson's neighbourhood size.
pub const ENN_DEFAULT_K: usize = 3;

/// Edited nearest neighbour: drops every row misclassified by a
/// leave-one-out `k`-NN vote over the unedited set. All removals are decided
/// against the original set before any is applied.
pub fn enn_edit(dsel: &Dataset, k: usize) -> Result<SelectionMask> {
    if k == 0 || dsel.len() <= k {
        return Err(Error::InvalidParameter(format!(
            "ENN needs more than k = {k} rows, got {}",
            dsel.len()
        )));
    }
    let keep = par::map_range(dsel.len(), |i| {
        knn_classify(dsel.row(i), dsel, k, Some(i)).map(|p| p == dsel.label(i))
    });
    let bits = keep.into_iter().collect::<Result<Vec<bool>>>()?;
    let mask = SelectionMask::from_bits(bits);
    if mask.retained_count() == 0 {
        return Err(Error::EmptySelection {
            retained: 0,
            required: 1,
        });
    }
    Ok(mask)
}

use crate::data::Dataset;
use crate::data::knn::{distance, neighbor_order};
use crate::error::{Error, Result};
use crate::mask::SelectionMask;
use crate::par;

/// The relative neighbourhood graph of a point set.
///
/// Rows `i` and `j` are adjacent iff no third row `k` is strictly closer to
/// both of them than they are to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RngGraph {
    adjacency: Vec<Vec<usize>>,
}

impl RngGraph {
    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Sorted neighbours of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .collect()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i != j {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
        for a in adjacency.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        RngGraph { adjacency }
    }
}

/// Builds the relative neighbourhood graph of `dsel`.
///
/// For each `i`, candidate partners are visited by distance; a blocker of
/// `(i, j)` must be strictly closer to `i` than `j` is, so only that prefix
/// of `i`'s ordering is scanned.
pub fn build_rng_graph(dsel: &Dataset) -> Result<RngGraph> {
    let n = dsel.len();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "a neighbourhood graph needs at least 2 rows, got {n}"
        )));
    }
    let partners = par::map_range(n, |i| {
        let xi = dsel.row(i);
        let mut order: Vec<(f64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (distance(xi, dsel.row(j)), j))
            .collect();
        order.sort_unstable_by(neighbor_order);
        let mut found = Vec::new();
        for (pos, &(d_ij, j)) in order.iter().enumerate() {
            if j < i {
                continue;
            }
            let xj = dsel.row(j);
            let blocked = order[..pos]
                .iter()
                .take_while(|(d_ik, _)| *d_ik < d_ij)
                .any(|&(_, k)| distance(xj, dsel.row(k)) < d_ij);
            if !blocked {
                found.push(j);
            }
        }
        found
    });
    let edges: Vec<(usize, usize)> = partners
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |j| (i, j)))
        .collect();
    Ok(RngGraph::from_edges(n, &edges))
}

/// Removes every row whose graph neighbours are, by strict majority, of a
/// different class. Ties and isolated rows are kept.
pub fn rng_edit(dsel: &Dataset) -> Result<SelectionMask> {
    let graph = build_rng_graph(dsel)?;
    let bits: Vec<bool> = (0..dsel.len())
        .map(|i| {
            let ns = graph.neighbors(i);
            let differ = ns.iter().filter(|&&j| dsel.label(j) != dsel.label(i)).count();
            2 * differ <= ns.len()
        })
        .collect();
    let mask = SelectionMask::from_bits(bits);
    if mask.retained_count() == 0 {
        return Err(Error::EmptySelection {
            retained: 0,
            required: 1,
        });
    }
    Ok(mask)
}

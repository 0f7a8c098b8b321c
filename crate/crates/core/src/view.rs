//! Radius-`T` labeled neighbourhood views.
//!
//! A view is the subgraph induced by the ball around a node, with each node
//! carrying its identifier and distance from the center. Nodes are listed by
//! `(distance, node order)`, so the center is always local index 0 and two
//! translated copies of the same labeled ball compare equal. Coordinates and
//! block indices are not part of a view.

use crate::grid::Grid;
use crate::local::IdAssignment;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct View {
    ids: Vec<u32>,
    dist: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl View {
    pub const CENTER: usize = 0;

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, local: usize) -> u32 {
        self.ids[local]
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn distance(&self, local: usize) -> u32 {
        self.dist[local]
    }

    /// Neighbours of `local` inside the view, ascending.
    pub fn neighbors(&self, local: usize) -> &[usize] {
        &self.adj[local]
    }

    /// Degree within the view. Equal to the graph degree for every node closer
    /// to the center than the view radius.
    pub fn degree(&self, local: usize) -> usize {
        self.adj[local].len()
    }

    pub fn closed_neighborhood(&self, local: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(local).chain(self.adj[local].iter().copied())
    }

    /// Sorted edge list `(a, b)`, `a < b`, in local indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn extract_view(grid: &Grid, ids: &IdAssignment, v: usize, radius: usize) -> View {
    let ball = grid.ball(v, radius);
    let local_of = |node: usize| ball.iter().position(|&(x, _)| x == node);
    let adj = ball
        .iter()
        .map(|&(node, _)| {
            let mut nb: Vec<usize> = grid.neighbors(node).iter().filter_map(|&w| local_of(w)).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    View {
        ids: ball.iter().map(|&(node, _)| ids.id_of(node)).collect(),
        dist: ball.iter().map(|&(_, d)| d as u32).collect(),
        adj,
    }
}

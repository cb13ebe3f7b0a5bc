use super::{attack_directions, BoardSpec, LineIndex};

/// The queen graph: one vertex per square (by linear index), an edge between
/// every pair of mutually attacking squares.
#[derive(Clone, Debug)]
pub struct QueenGraph {
    board: BoardSpec,
    adjacency: Vec<Vec<usize>>,
}

pub fn queen_graph(board: BoardSpec) -> QueenGraph {
    let lines = LineIndex::new(board, false, attack_directions(board.d()));
    let mut adjacency = vec![Vec::new(); board.num_squares()];
    for line in &lines.lines {
        for (a, &u) in line.iter().enumerate() {
            for &v in &line[a + 1..] {
                adjacency[u as usize].push(v as usize);
                adjacency[v as usize].push(u as usize);
            }
        }
    }
    for nb in &mut adjacency {
        nb.sort_unstable();
    }
    QueenGraph { board, adjacency }
}

impl QueenGraph {
    pub fn board(&self) -> BoardSpec {
        self.board
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Neighbours of a vertex, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }
}

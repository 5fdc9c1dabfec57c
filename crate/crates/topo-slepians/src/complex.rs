//! Oriented simplicial complexes, signed incidence matrices, and
//! combinatorial (Hodge) Laplacians.
//!
//! A complex of order `K` stores, for every `k` in `1..=K`, the list of
//! `k`-simplices as strictly increasing vertex tuples (the canonical
//! reference orientation). Each level is kept lexicographically sorted, so
//! the position of a simplex in its level is a function of the simplex set
//! alone; files and signals refer to edges through this canonical order.

use std::collections::{BTreeSet, HashMap};

use nalgebra::DMatrix;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// `levels[k - 1]` holds the k-simplices, each sorted ascending,
    /// the whole list sorted lexicographically.
    levels: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Builds an order-2 complex from vertex count, edges, and triangles
    /// (vertex indices are 0-based). Orientations are canonicalized to
    /// ascending vertex order; levels are sorted and checked for duplicates,
    /// range, and downward closure.
    pub fn build(
        vertex_count: usize,
        edges: &[[usize; 2]],
        triangles: &[[usize; 3]],
    ) -> Result<Self> {
        Self::from_simplices(
            vertex_count,
            vec![
                edges.iter().map(|e| e.to_vec()).collect(),
                triangles.iter().map(|t| t.to_vec()).collect(),
            ],
        )
    }

    /// Builds a complex of arbitrary order; `levels[k - 1]` lists the
    /// k-simplices. Trailing levels may be empty.
    pub fn from_simplices(vertex_count: usize, levels: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut canon: Vec<Vec<Vec<usize>>> = Vec::with_capacity(levels.len());
        for (level_idx, level) in levels.into_iter().enumerate() {
            let k = level_idx + 1;
            let mut sorted_level: Vec<Vec<usize>> = Vec::with_capacity(level.len());
            for mut simplex in level {
                simplex.sort_unstable();
                if simplex.len() != k + 1 || simplex.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::DegenerateSimplex { vertices: simplex });
                }
                if let Some(&v) = simplex.iter().find(|&&v| v >= vertex_count) {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        bound: vertex_count,
                    });
                }
                sorted_level.push(simplex);
            }
            sorted_level.sort_unstable();
            for w in sorted_level.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateSimplex {
                        vertices: w[0].clone(),
                    });
                }
            }
            canon.push(sorted_level);
        }

        for k in 2..=canon.len() {
            let (lower, upper) = canon.split_at(k - 1);
            let faces = &lower[k - 2];
            for simplex in &upper[0] {
                for omit in 0..simplex.len() {
                    let mut face = simplex.clone();
                    face.remove(omit);
                    if faces.binary_search(&face).is_err() {
                        return Err(Error::MissingFace {
                            simplex: simplex.clone(),
                            face,
                        });
                    }
                }
            }
        }

        Ok(Self {
            vertex_count,
            levels: canon,
        })
    }

    /// Largest simplex order the complex can hold (K).
    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of k-simplices (k = 0 counts vertices).
    pub fn simplex_count(&self, k: usize) -> usize {
        if k == 0 {
            self.vertex_count
        } else {
            self.levels.get(k - 1).map_or(0, Vec::len)
        }
    }

    /// The k-simplices (k >= 1) in canonical order.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        assert!(k >= 1, "vertices have no stored simplex list");
        self.levels.get(k - 1).map_or(&[], Vec::as_slice)
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices(1)
    }

    pub fn triangles(&self) -> &[Vec<usize>] {
        self.simplices(2)
    }

    pub fn edge_count(&self) -> usize {
        self.simplex_count(1)
    }

    pub fn triangle_count(&self) -> usize {
        self.simplex_count(2)
    }

    /// Position of edge {a, b} in the canonical edge order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a <= b { vec![a, b] } else { vec![b, a] };
        self.edges().binary_search(&key).ok()
    }

    /// Signed incidence matrix B_k mapping k-simplices to (k-1)-simplices.
    /// The face obtained by omitting the vertex at position `p` of an
    /// ascending simplex receives sign (-1)^p.
    pub fn incidence(&self, k: usize) -> Result<SignedIncidence> {
        if k == 0 || k > self.order() {
            return Err(Error::OrderOutOfRange {
                k,
                order: self.order(),
            });
        }
        let cols = self.simplices(k);
        let nrows = self.simplex_count(k - 1);
        let mut matrix = DMatrix::<i32>::zeros(nrows, cols.len());

        let face_index: Option<HashMap<&[usize], usize>> = if k >= 2 {
            Some(
                self.simplices(k - 1)
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_slice(), i))
                    .collect(),
            )
        } else {
            None
        };

        let mut face = Vec::with_capacity(k);
        for (j, simplex) in cols.iter().enumerate() {
            for (p, _) in simplex.iter().enumerate() {
                face.clear();
                face.extend(simplex.iter().take(p).chain(simplex.iter().skip(p + 1)));
                let row = match &face_index {
                    None => face[0],
                    Some(map) => *map.get(face.as_slice()).expect("closure already validated"),
                };
                matrix[(row, j)] = if p % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(SignedIncidence { k, matrix })
    }

    /// Hodge Laplacian of order k together with its down and up parts.
    pub fn laplacian(&self, k: usize) -> Result<LaplacianTriple> {
        if k > self.order() {
            return Err(Error::OrderOutOfRange {
                k,
                order: self.order(),
            });
        }
        let dim = self.simplex_count(k);
        let b_down = if k >= 1 {
            Some(self.incidence(k)?.to_f64())
        } else {
            None
        };
        let b_up = if k < self.order() {
            Some(self.incidence(k + 1)?.to_f64())
        } else {
            None
        };
        LaplacianTriple::from_incidence(b_down.as_ref(), b_up.as_ref(), dim)
    }

    /// Edges reachable from `edge` through shared vertices in at most
    /// `hops` steps, ascending. `hops = 0` yields the edge itself.
    pub fn lower_neighborhood(&self, edge: usize, hops: usize) -> Result<Vec<usize>> {
        let adjacency = self.lower_adjacency(edge)?;
        Ok(breadth_first(edge, hops, &adjacency))
    }

    /// Edges reachable from `edge` through shared triangles in at most
    /// `hops` steps, ascending.
    pub fn upper_neighborhood(&self, edge: usize, hops: usize) -> Result<Vec<usize>> {
        let adjacency = self.upper_adjacency(edge)?;
        Ok(breadth_first(edge, hops, &adjacency))
    }

    fn check_edge(&self, edge: usize) -> Result<()> {
        if edge >= self.edge_count() {
            return Err(Error::IndexOutOfRange {
                index: edge,
                bound: self.edge_count(),
            });
        }
        Ok(())
    }

    fn lower_adjacency(&self, edge: usize) -> Result<Vec<Vec<usize>>> {
        self.check_edge(edge)?;
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges().iter().enumerate() {
            by_vertex[e[0]].push(i);
            by_vertex[e[1]].push(i);
        }
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.edge_count()];
        for edges in &by_vertex {
            for &a in edges {
                for &b in edges {
                    if a != b {
                        adjacency[a].push(b);
                    }
                }
            }
        }
        Ok(adjacency)
    }

    fn upper_adjacency(&self, edge: usize) -> Result<Vec<Vec<usize>>> {
        self.check_edge(edge)?;
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.edge_count()];
        for tri in self.triangles() {
            let e = [
                self.edge_index(tri[0], tri[1]).expect("closure"),
                self.edge_index(tri[0], tri[2]).expect("closure"),
                self.edge_index(tri[1], tri[2]).expect("closure"),
            ];
            for &a in &e {
                for &b in &e {
                    if a != b {
                        adjacency[a].push(b);
                    }
                }
            }
        }
        Ok(adjacency)
    }
}

fn breadth_first(start: usize, hops: usize, adjacency: &[Vec<usize>]) -> Vec<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    seen.insert(start);
    let mut frontier = vec![start];
    for _ in 0..hops {
        let mut next = Vec::new();
        for &node in &frontier {
            for &nb in &adjacency[node] {
                if seen.insert(nb) {
                    next.push(nb);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Signed incidence matrix B_k with integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedIncidence {
    k: usize,
    matrix: DMatrix<i32>,
}

impl SignedIncidence {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &DMatrix<i32> {
        &self.matrix
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.matrix.map(|v| v as f64)
    }
}

/// Hodge Laplacian L_k = L_down + L_up with both parts retained.
/// Missing parts (k = 0 below, k = K above) are zero matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianTriple {
    pub down: DMatrix<f64>,
    pub up: DMatrix<f64>,
    pub full: DMatrix<f64>,
}

impl LaplacianTriple {
    /// Assembles the triple from raw incidence matrices: `b_down` is B_k
    /// (so L_down = B_k^T B_k) and `b_up` is B_{k+1} (L_up = B_{k+1} B_{k+1}^T).
    /// Accepting raw matrices lets callers study orientation changes by
    /// flipping signs before assembly.
    pub fn from_incidence(
        b_down: Option<&DMatrix<f64>>,
        b_up: Option<&DMatrix<f64>>,
        dim: usize,
    ) -> Result<Self> {
        let down = match b_down {
            Some(b) => {
                if b.ncols() != dim {
                    return Err(Error::DimensionMismatch {
                        what: "lower incidence columns",
                        expected: dim,
                        got: b.ncols(),
                    });
                }
                b.tr_mul(b)
            }
            None => DMatrix::zeros(dim, dim),
        };
        let up = match b_up {
            Some(b) => {
                if b.nrows() != dim {
                    return Err(Error::DimensionMismatch {
                        what: "upper incidence rows",
                        expected: dim,
                        got: b.nrows(),
                    });
                }
                b * b.transpose()
            }
            None => DMatrix::zeros(dim, dim),
        };
        let full = &down + &up;
        Ok(Self { down, up, full })
    }

    pub fn dim(&self) -> usize {
        self.full.nrows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Filled triangle on vertices {0, 1, 2}.
    pub fn filled_triangle() -> SimplicialComplex {
        SimplicialComplex::build(3, &[[0, 1], [0, 2], [1, 2]], &[[0, 1, 2]]).unwrap()
    }

    /// Hollow triangle: same edges, no face.
    pub fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::build(3, &[[0, 1], [0, 2], [1, 2]], &[]).unwrap()
    }

    #[test]
    fn canonical_orientation_and_order() {
        let c = SimplicialComplex::build(4, &[[2, 1], [3, 2], [1, 0], [0, 2]], &[]).unwrap();
        assert_eq!(c.edges(), &[vec![0, 1], vec![0, 2], vec![1, 2], vec![2, 3]]);
        assert_eq!(c.edge_index(2, 0), Some(1));
        assert_eq!(c.edge_index(3, 0), None);
    }

    #[test]
    fn vertex_incidence_matrix_of_filled_triangle() {
        let b1 = filled_triangle().incidence(1).unwrap();
        let expected = DMatrix::from_row_slice(3, 3, &[-1, -1, 0, 1, 0, -1, 0, 1, 1]);
        assert_eq!(b1.matrix(), &expected);
    }

    #[test]
    fn triangle_incidence_matrix_of_filled_triangle() {
        let b2 = filled_triangle().incidence(2).unwrap();
        let expected = DMatrix::from_row_slice(3, 1, &[1, -1, 1]);
        assert_eq!(b2.matrix(), &expected);
    }

    #[test]
    fn incidence_column_counts() {
        let c = filled_triangle();
        let b1 = c.incidence(1).unwrap();
        for j in 0..b1.cols() {
            let col = b1.matrix().column(j);
            assert_eq!(col.iter().filter(|&&v| v == 1).count(), 1);
            assert_eq!(col.iter().filter(|&&v| v == -1).count(), 1);
        }
        let b2 = c.incidence(2).unwrap();
        assert_eq!(b2.matrix().column(0).iter().filter(|&&v| v != 0).count(), 3);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let c = SimplicialComplex::build(
            4,
            &[[0, 1], [0, 2], [1, 2], [1, 3], [2, 3]],
            &[[0, 1, 2], [1, 2, 3]],
        )
        .unwrap();
        let product = c.incidence(1).unwrap().matrix() * c.incidence(2).unwrap().matrix();
        assert!(product.iter().all(|&v| v == 0));
    }

    #[test]
    fn missing_face_rejected() {
        let err = SimplicialComplex::build(3, &[[0, 1], [1, 2]], &[[0, 1, 2]]).unwrap_err();
        assert!(matches!(err, Error::MissingFace { .. }));
    }

    #[test]
    fn duplicate_simplex_rejected() {
        let err = SimplicialComplex::build(3, &[[0, 1], [1, 0]], &[]).unwrap_err();
        assert!(matches!(err, Error::DuplicateSimplex { .. }));
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        let err = SimplicialComplex::build(2, &[[0, 2]], &[]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { .. }));
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let err = SimplicialComplex::build(2, &[[1, 1]], &[]).unwrap_err();
        assert!(matches!(err, Error::DegenerateSimplex { .. }));
    }

    #[test]
    fn laplacian_parts_sum_and_traces() {
        let c = filled_triangle();
        let lap = c.laplacian(1).unwrap();
        assert!((&lap.down + &lap.up - &lap.full).amax() < 1e-15);
        assert!((lap.full.transpose() - &lap.full).amax() < crate::tol::SYM_ABS);
        assert_eq!(lap.down.trace(), 2.0 * c.edge_count() as f64);
        assert_eq!(lap.up.trace(), 3.0 * c.triangle_count() as f64);
    }

    #[test]
    fn edge_laplacian_of_filled_triangle() {
        let lap = filled_triangle().laplacian(1).unwrap();
        let eig = crate::linalg::sym_eigen(&lap.full).unwrap();
        for v in &eig.values {
            assert!((v - 3.0).abs() < 1e-12);
        }
        let down = crate::linalg::sym_eigen(&lap.down).unwrap();
        let expect_down = [0.0, 3.0, 3.0];
        for (v, e) in down.values.iter().zip(expect_down) {
            assert!((v - e).abs() < 1e-12);
        }
        let up = crate::linalg::sym_eigen(&lap.up).unwrap();
        let expect_up = [0.0, 0.0, 3.0];
        for (v, e) in up.values.iter().zip(expect_up) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn vertex_laplacian_has_no_down_part() {
        let lap = filled_triangle().laplacian(0).unwrap();
        assert_eq!(lap.down.amax(), 0.0);
        let degrees: Vec<f64> = lap.up.diagonal().iter().copied().collect();
        assert_eq!(degrees, vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn top_laplacian_has_no_up_part() {
        let lap = filled_triangle().laplacian(2).unwrap();
        assert_eq!(lap.up.amax(), 0.0);
        assert_eq!(lap.down[(0, 0)], 3.0);
    }

    #[test]
    fn neighborhoods_of_shared_edge() {
        let c = SimplicialComplex::build(
            4,
            &[[0, 1], [0, 2], [1, 2], [1, 3], [2, 3]],
            &[[0, 1, 2], [1, 2, 3]],
        )
        .unwrap();
        let e12 = c.edge_index(1, 2).unwrap();
        assert_eq!(c.upper_neighborhood(e12, 1).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(c.lower_neighborhood(e12, 0).unwrap(), vec![e12]);
        let e01 = c.edge_index(0, 1).unwrap();
        assert_eq!(c.lower_neighborhood(e01, 1).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn hollow_triangle_has_no_upper_neighbors() {
        let c = hollow_triangle();
        assert_eq!(c.upper_neighborhood(0, 1).unwrap(), vec![0]);
        assert_eq!(c.upper_neighborhood(0, 3).unwrap(), vec![0]);
    }

    #[test]
    fn neighborhood_symmetry() {
        let c = SimplicialComplex::build(
            5,
            &[[0, 1], [0, 2], [1, 2], [1, 3], [2, 3], [3, 4]],
            &[[0, 1, 2], [1, 2, 3]],
        )
        .unwrap();
        for a in 0..c.edge_count() {
            for b in 0..c.edge_count() {
                let a_in_b = c.lower_neighborhood(b, 1).unwrap().contains(&a);
                let b_in_a = c.lower_neighborhood(a, 1).unwrap().contains(&b);
                assert_eq!(a_in_b, b_in_a);
            }
        }
    }

    #[test]
    fn laplacian_order_out_of_range() {
        let err = filled_triangle().laplacian(3).unwrap_err();
        assert!(matches!(err, Error::OrderOutOfRange { .. }));
    }
}

//! Exact nearest-neighbour queries over an immutable 3D point set.
//!
//! A balanced kd-tree splitting on the axis of largest spread. Queries are
//! exact, work in squared distances, and break ties between equidistant
//! points by the lowest original index, so results are deterministic and
//! directly comparable against a brute-force scan.

use alloc::vec::Vec;

use crate::geometry::Point3;
use crate::math;

const DEFAULT_LEAF_SIZE: usize = 16;

#[derive(Clone, Debug)]
enum Node {
    /// Children: left subtree starts at the next node, right at `right`.
    Split { axis: u8, value: f64, right: u32 },
    /// Range into the permuted item array.
    Leaf { start: u32, len: u32 },
}

/// The closest indexed point to a query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Neighbor {
    /// Index into the point slice the index was built from.
    pub index: usize,
    /// Squared Euclidean distance to the query.
    pub dist_sq: f64,
}

/// An immutable spatial index over a point array.
///
/// Build is deterministic for a fixed input order; after build the index is
/// read-only and queries may run concurrently from any number of threads.
#[derive(Clone, Debug)]
pub struct KdIndex {
    nodes: Vec<Node>,
    items: Vec<(Point3, u32)>,
    leaf_size: usize,
}

impl KdIndex {
    /// Builds with the default leaf size. Empty input is allowed; queries
    /// on an empty index report an infinite distance.
    pub fn build(points: &[Point3]) -> Self {
        Self::with_leaf_size(points, DEFAULT_LEAF_SIZE)
    }

    pub fn with_leaf_size(points: &[Point3], leaf_size: usize) -> Self {
        let leaf_size = leaf_size.max(1);
        let mut index = KdIndex {
            nodes: Vec::new(),
            items: points
                .iter()
                .copied()
                .zip(0..points.len() as u32)
                .collect(),
            leaf_size,
        };
        if !index.items.is_empty() {
            index.build_range(0, points.len());
        }
        index
    }

    /// Number of indexed points.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn build_range(&mut self, start: usize, end: usize) -> usize {
        let pos = self.nodes.len();
        let len = end - start;
        if len <= self.leaf_size {
            self.nodes.push(Node::Leaf {
                start: start as u32,
                len: len as u32,
            });
            return pos;
        }

        // Split on the axis with the largest coordinate spread.
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for (p, _) in &self.items[start..end] {
            for axis in 0..3 {
                lo[axis] = lo[axis].min(p.axis(axis));
                hi[axis] = hi[axis].max(p.axis(axis));
            }
        }
        let mut axis = 0;
        for candidate in 1..3 {
            if hi[candidate] - lo[candidate] > hi[axis] - lo[axis] {
                axis = candidate;
            }
        }

        // Median split; keys are (coordinate, original index) so the
        // partition is a total order and the tree is reproducible.
        let mid = len / 2;
        let slice = &mut self.items[start..end];
        slice.select_nth_unstable_by(mid, |a, b| {
            (a.0.axis(axis), a.1)
                .partial_cmp(&(b.0.axis(axis), b.1))
                .expect("points are finite")
        });
        let split_value = slice[mid].0.axis(axis);

        self.nodes.push(Node::Split {
            axis: axis as u8,
            value: split_value,
            right: 0,
        });
        let left = self.build_range(start, start + mid);
        debug_assert_eq!(left, pos + 1);
        let right = self.build_range(start + mid, end);
        if let Node::Split { right: slot, .. } = &mut self.nodes[pos] {
            *slot = right as u32;
        }
        pos
    }

    /// The closest indexed point, or `None` for an empty index. Equidistant
    /// candidates resolve to the lowest original index.
    pub fn nearest(&self, query: Point3) -> Option<Neighbor> {
        self.nearest_with_visits(query).0
    }

    /// Like [`nearest`](Self::nearest), also reporting how many stored
    /// points were examined (for cost instrumentation).
    pub fn nearest_with_visits(&self, query: Point3) -> (Option<Neighbor>, usize) {
        if self.items.is_empty() {
            return (None, 0);
        }
        let mut best = Neighbor {
            index: usize::MAX,
            dist_sq: f64::INFINITY,
        };
        let mut visited = 0usize;
        self.search(0, query, &mut best, &mut visited);
        (Some(best), visited)
    }

    /// Distance to the closest indexed point; infinite for an empty index.
    pub fn min_distance(&self, query: Point3) -> f64 {
        math::sqrt(self.min_squared_distance(query))
    }

    /// Squared distance to the closest indexed point; infinite for an
    /// empty index.
    pub fn min_squared_distance(&self, query: Point3) -> f64 {
        self.nearest(query).map_or(f64::INFINITY, |n| n.dist_sq)
    }

    fn search(&self, node: usize, query: Point3, best: &mut Neighbor, visited: &mut usize) {
        match &self.nodes[node] {
            Node::Leaf { start, len } => {
                let start = *start as usize;
                for (p, idx) in &self.items[start..start + *len as usize] {
                    let d2 = p.dist_sq(query);
                    *visited += 1;
                    if d2 < best.dist_sq || (d2 == best.dist_sq && (*idx as usize) < best.index) {
                        *best = Neighbor {
                            index: *idx as usize,
                            dist_sq: d2,
                        };
                    }
                }
            }
            Node::Split { axis, value, right } => {
                let delta = query.axis(*axis as usize) - value;
                let (near, far) = if delta < 0.0 {
                    (node + 1, *right as usize)
                } else {
                    (*right as usize, node + 1)
                };
                self.search(near, query, best, visited);
                // `<=` so an equidistant point across the boundary can still
                // win the lowest-index tie-break.
                if delta * delta <= best.dist_sq {
                    self.search(far, query, best, visited);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<Point3> {
        (0..n)
            .map(|_| {
                Point3::new(
                    rng.random_range(-scale..scale),
                    rng.random_range(-scale..scale),
                    rng.random_range(-scale..scale),
                )
            })
            .collect()
    }

    fn brute_force(points: &[Point3], query: Point3) -> Option<Neighbor> {
        points
            .iter()
            .enumerate()
            .map(|(index, p)| Neighbor {
                index,
                dist_sq: p.dist_sq(query),
            })
            .fold(None, |best: Option<Neighbor>, cand| match best {
                Some(b) if b.dist_sq < cand.dist_sq => Some(b),
                Some(b) if b.dist_sq == cand.dist_sq && b.index < cand.index => Some(b),
                _ => Some(cand),
            })
    }

    #[test]
    fn empty_index_reports_infinity() {
        let index = KdIndex::build(&[]);
        assert_eq!(index.len(), 0);
        assert!(index.nearest(Point3::ORIGIN).is_none());
        assert_eq!(index.min_distance(Point3::ORIGIN), f64::INFINITY);
    }

    #[test]
    fn single_point() {
        let index = KdIndex::build(&[Point3::new(1.0, 1.0, 1.0)]);
        let n = index.nearest(Point3::ORIGIN).unwrap();
        assert_eq!(n.index, 0);
        assert_eq!(n.dist_sq, 3.0);
    }

    #[test]
    fn reports_build_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = random_points(&mut rng, 1000, 50.0);
        assert_eq!(KdIndex::build(&pts).len(), 1000);
    }

    #[test]
    fn pythagorean_query() {
        let index = KdIndex::build(&[Point3::ORIGIN]);
        assert_eq!(index.min_distance(Point3::new(3.0, 4.0, 0.0)), 5.0);
    }

    #[test]
    fn query_equal_to_indexed_point_is_zero() {
        let p = Point3::new(-2.0, 8.0, 1.5);
        let index = KdIndex::build(&[Point3::ORIGIN, p]);
        assert_eq!(index.min_distance(p), 0.0);
    }

    #[test]
    fn matches_brute_force_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let points = random_points(&mut rng, 10_000, 40.0);
        let index = KdIndex::build(&points);
        for _ in 0..1000 {
            let q = Point3::new(
                rng.random_range(-50.0..50.0),
                rng.random_range(-50.0..50.0),
                rng.random_range(-50.0..50.0),
            );
            let kd = index.nearest(q).unwrap();
            let bf = brute_force(&points, q).unwrap();
            assert_eq!(kd.dist_sq, bf.dist_sq);
            assert_eq!(kd.index, bf.index);
        }
    }

    #[test]
    fn duplicate_points_resolve_to_lowest_index() {
        let p = Point3::new(1.0, 2.0, 3.0);
        let points = vec![Point3::new(9.0, 9.0, 9.0), p, p, p];
        let index = KdIndex::build(&points);
        let n = index.nearest(Point3::new(1.1, 2.0, 3.0)).unwrap();
        assert_eq!(n.index, 1);
    }

    #[test]
    fn small_leaves_still_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let points = random_points(&mut rng, 257, 5.0);
        let index = KdIndex::with_leaf_size(&points, 1);
        for _ in 0..200 {
            let q = Point3::new(
                rng.random_range(-6.0..6.0),
                rng.random_range(-6.0..6.0),
                rng.random_range(-6.0..6.0),
            );
            assert_eq!(
                index.nearest(q).unwrap(),
                brute_force(&points, q).unwrap()
            );
        }
    }

    #[test]
    fn rebuild_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let points = random_points(&mut rng, 500, 20.0);
        let a = KdIndex::build(&points);
        let b = KdIndex::build(&points);
        assert_eq!(a.items, b.items);
        for _ in 0..100 {
            let q = Point3::new(
                rng.random_range(-25.0..25.0),
                rng.random_range(-25.0..25.0),
                rng.random_range(-25.0..25.0),
            );
            assert_eq!(a.nearest(q), b.nearest(q));
        }
    }

    #[test]
    fn visits_fraction_is_small_on_uniform_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 50_000;
        let points = random_points(&mut rng, n, 60.0);
        let index = KdIndex::build(&points);
        let mut total = 0usize;
        let queries = 200;
        for _ in 0..queries {
            let q = Point3::new(
                rng.random_range(-60.0..60.0),
                rng.random_range(-60.0..60.0),
                rng.random_range(-60.0..60.0),
            );
            total += index.nearest_with_visits(q).1;
        }
        let mean = total as f64 / queries as f64;
        assert!(
            mean < 0.05 * n as f64,
            "mean visited {mean} of {n} points"
        );
    }
}

use rand::Rng;

use super::{CommoditySet, LaminarError, LaminarFamily};

const MAX_ROUNDS: usize = 100;
const MIN_SHIFT: f64 = 1e-9;

/// Plane position of each commodity's terminal, indexed by commodity.
#[derive(Clone, Debug, PartialEq)]
pub struct TerminalCoordinates {
    points: Vec<(f64, f64)>,
}

impl TerminalCoordinates {
    /// Fails with the first commodity lacking a position.
    pub fn new(points: Vec<Option<(f64, f64)>>) -> Result<Self, LaminarError> {
        let points = points
            .into_iter()
            .enumerate()
            .map(|(k, p)| p.ok_or(LaminarError::MissingCoordinates(k)))
            .collect::<Result<_, _>>()?;
        Ok(TerminalCoordinates { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

fn sq_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

fn centroid(points: &[(f64, f64)], assign: &[u8], side: u8) -> (f64, f64) {
    let (mut x, mut y, mut n) = (0.0, 0.0, 0usize);
    for (p, _) in points.iter().zip(assign).filter(|(_, &a)| a == side) {
        x += p.0;
        y += p.1;
        n += 1;
    }
    (x / n as f64, y / n as f64)
}

/// Lloyd's algorithm with two clusters, seeded at `points[seeds.0]` and
/// `points[seeds.1]`. Returns the cluster (0 or 1) of every point; both
/// clusters are non-empty when there are at least two points.
///
/// Points equidistant from both centroids go to cluster 0. An empty cluster
/// takes the point farthest from the other centroid.
pub(crate) fn lloyd_two_means(points: &[(f64, f64)], seeds: (usize, usize)) -> Vec<u8> {
    let mut centers = [points[seeds.0], points[seeds.1]];
    let mut assign = vec![0u8; points.len()];
    for _ in 0..MAX_ROUNDS {
        for (a, &p) in assign.iter_mut().zip(points) {
            *a = u8::from(sq_dist(p, centers[1]) < sq_dist(p, centers[0]));
        }
        for side in 0..2u8 {
            if points.len() >= 2 && !assign.contains(&side) {
                let other = centers[usize::from(1 - side)];
                let mut far = 0;
                for (i, &p) in points.iter().enumerate() {
                    if sq_dist(p, other) > sq_dist(points[far], other) {
                        far = i;
                    }
                }
                assign[far] = side;
            }
        }
        let next = [centroid(points, &assign, 0), centroid(points, &assign, 1)];
        let shift = sq_dist(next[0], centers[0])
            .sqrt()
            .max(sq_dist(next[1], centers[1]).sqrt());
        centers = next;
        if shift < MIN_SHIFT {
            break;
        }
    }
    assign
}

/// The point farthest from `points[from]`, lowest index on ties, never
/// `from` itself.
fn farthest_from(points: &[(f64, f64)], from: usize) -> usize {
    let mut best = if from == 0 { 1 } else { 0 };
    for (i, &p) in points.iter().enumerate() {
        if i != from && sq_dist(p, points[from]) > sq_dist(points[best], points[from]) {
            best = i;
        }
    }
    best
}

fn part<R: Rng + ?Sized>(
    coords: &TerminalCoordinates,
    members: Vec<usize>,
    b: usize,
    rng: &mut R,
    out: &mut Vec<CommoditySet>,
) {
    out.push(CommoditySet::from_commodities(b, members.iter().copied()));
    if members.len() == 1 {
        return;
    }
    if members.len() == 2 {
        out.push(CommoditySet::singleton(b, members[0]));
        out.push(CommoditySet::singleton(b, members[1]));
        return;
    }
    let points: Vec<(f64, f64)> = members.iter().map(|&k| coords.points[k]).collect();
    let first = rng.gen_range(0..points.len());
    let assign = lloyd_two_means(&points, (first, farthest_from(&points, first)));
    let (left, right): (Vec<_>, Vec<_>) = members.iter().zip(&assign).partition(|(_, &a)| a == 0);
    part(coords, left.into_iter().map(|(&k, _)| k).collect(), b, rng, out);
    part(coords, right.into_iter().map(|(&k, _)| k).collect(), b, rng, out);
}

/// Recursive 2-means bipartition of all commodities by terminal position.
/// The result is admissible and full-binary.
pub fn part_kmeans<R: Rng + ?Sized>(coords: &TerminalCoordinates, rng: &mut R) -> LaminarFamily {
    let b = coords.len();
    assert!(b >= 1);
    let mut sets = Vec::with_capacity(2 * b - 1);
    part(coords, (0..b).collect(), b, rng, &mut sets);
    sets.sort();
    LaminarFamily::from_sorted_unchecked(b, sets)
}

/// Index of the most central point: the minimizer of
/// `|right - left| + |above - below|`, counting other points strictly on
/// each side. Ties go to the lowest index.
pub fn pick_central_root(points: &[(f64, f64)]) -> usize {
    assert!(!points.is_empty());
    let score = |i: usize| {
        let (x, y) = points[i];
        let (mut dx, mut dy) = (0i64, 0i64);
        for &(px, py) in points {
            dx += i64::from(px > x) - i64::from(px < x);
            dy += i64::from(py > y) - i64::from(py < y);
        }
        dx.abs() + dy.abs()
    };
    (0..points.len()).min_by_key(|&i| (score(i), i)).unwrap()
}

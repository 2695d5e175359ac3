use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner::InnerFunction;
use crate::C64;

pub const MIN_GRID: usize = 64;

/// Connected components of a rasterized sublevel set `{|Θ| < r}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentProbe {
    pub connected: bool,
    pub component_count: usize,
    pub cells_in_set: usize,
    pub grid_n: usize,
    pub caveat: String,
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Cell-centre raster of `[-1, 1]²`, cells outside the disk dropped,
/// 4-connectivity. Heuristic: thin necks narrower than a cell are missed.
pub fn one_component_probe(theta: &InnerFunction, r: f64, grid_n: usize) -> Result<ComponentProbe> {
    if grid_n < MIN_GRID {
        return Err(Error::Invalid(format!("grid_n {grid_n} is below {MIN_GRID}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::BadRadius(r));
    }
    let h = 2.0 / grid_n as f64;
    let mut inside = vec![false; grid_n * grid_n];
    for i in 0..grid_n {
        for j in 0..grid_n {
            let z = C64::new(-1.0 + (j as f64 + 0.5) * h, -1.0 + (i as f64 + 0.5) * h);
            if z.norm() < 1.0 {
                inside[i * grid_n + j] = theta.eval(z)?.norm() < r;
            }
        }
    }
    let mut sets = DisjointSet::new(grid_n * grid_n);
    for i in 0..grid_n {
        for j in 0..grid_n {
            let k = i * grid_n + j;
            if !inside[k] {
                continue;
            }
            if j + 1 < grid_n && inside[k + 1] {
                sets.union(k, k + 1);
            }
            if i + 1 < grid_n && inside[k + grid_n] {
                sets.union(k, k + grid_n);
            }
        }
    }
    let cells: Vec<usize> = (0..inside.len()).filter(|&k| inside[k]).collect();
    let mut roots: Vec<usize> = cells.iter().map(|&k| sets.find(k)).collect();
    roots.sort_unstable();
    roots.dedup();
    let count = roots.len();
    let caveat = if cells.is_empty() {
        format!("no cell of the {grid_n}x{grid_n} grid lies in the set; refine the grid")
    } else {
        format!("resolution {h:.3e}; components closer than one cell may merge or split")
    };
    Ok(ComponentProbe {
        connected: count == 1,
        component_count: count,
        cells_in_set: cells.len(),
        grid_n,
        caveat,
    })
}

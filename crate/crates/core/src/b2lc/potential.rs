/// Union-find over integer variables that also tracks the fixed difference
/// between each variable and its class representative.
///
/// No path compression, so every union can be undone with [`rollback`].
///
/// [`rollback`]: PotentialDsu::rollback
#[derive(Clone, Debug)]
pub struct PotentialDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    // value(x) - value(parent(x))
    offset: Vec<i64>,
    history: Vec<usize>,
}

impl PotentialDsu {
    pub fn new(n: usize) -> Self {
        PotentialDsu { parent: (0..n).collect(), size: vec![1; n], offset: vec![0; n], history: Vec::new() }
    }

    /// Representative of `x` and `value(x) - value(root)`.
    pub fn find(&self, mut x: usize) -> (usize, i64) {
        let mut pot = 0;
        while self.parent[x] != x {
            pot += self.offset[x];
            x = self.parent[x];
        }
        (x, pot)
    }

    /// Imposes `value(b) - value(a) = diff`. Returns `false`, leaving the
    /// structure untouched, if that contradicts what is already known.
    pub fn relate(&mut self, a: usize, b: usize, diff: i64) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pb - pa == diff;
        }
        // value(rb) - value(ra)
        let delta = diff + pa - pb;
        let (child, root, child_offset) =
            if self.size[ra] >= self.size[rb] { (rb, ra, delta) } else { (ra, rb, -delta) };
        self.parent[child] = root;
        self.offset[child] = child_offset;
        self.size[root] += self.size[child];
        self.history.push(child);
        true
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    /// Undoes every union made after `checkpoint`.
    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            let child = self.history.pop().unwrap();
            let root = self.parent[child];
            self.size[root] -= self.size[child];
            self.parent[child] = child;
            self.offset[child] = 0;
        }
    }

    /// One satisfying assignment: each class shifted so its smallest value is 0.
    pub fn canonical_values(&self) -> Vec<u64> {
        let n = self.parent.len();
        let found: Vec<(usize, i64)> = (0..n).map(|x| self.find(x)).collect();
        let mut min_pot = vec![i64::MAX; n];
        for &(r, p) in &found {
            min_pot[r] = min_pot[r].min(p);
        }
        found.iter().map(|&(r, p)| (p - min_pot[r]) as u64).collect()
    }
}

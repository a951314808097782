//! Deterministic Schreier–Sims.
//!
//! Base points are taken from an optional prefix and otherwise chosen as the
//! smallest point moved by the element that forces a new level, so the
//! transversals (and hence every derived generator list) are reproducible.

use super::Permutation;

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub point: usize,
    /// Strong generators fixing all earlier base points.
    pub gens: Vec<Permutation>,
    /// `transversal[y]` maps `point` to `y`.
    transversal: Vec<Option<Permutation>>,
    inverses: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens: Vec::new(),
            transversal: vec![None; degree],
            inverses: vec![None; degree],
            orbit: Vec::new(),
        };
        level.rebuild(degree);
        level
    }

    fn rebuild(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.inverses = vec![None; degree];
        let id = Permutation::identity(degree);
        self.transversal[self.point] = Some(id.clone());
        self.inverses[self.point] = Some(id);
        self.orbit = vec![self.point];
        let mut head = 0;
        while head < self.orbit.len() {
            let y = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let z = s.apply(y);
                if self.transversal[z].is_none() {
                    let u = self.transversal[y].as_ref().unwrap().then(s);
                    self.inverses[z] = Some(u.inverse());
                    self.transversal[z] = Some(u);
                    self.orbit.push(z);
                }
            }
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Debug, Clone)]
pub struct Bsgs {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl Bsgs {
    pub fn build(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Bsgs {
        let mut levels: Vec<Level> = prefix.iter().map(|&b| Level::new(b, degree)).collect();
        let mut strong = Vec::new();
        for g in generators {
            if g.is_identity() {
                continue;
            }
            if levels.iter().all(|l| g.apply(l.point) == l.point) {
                let b = g.smallest_moved_point().unwrap();
                levels.push(Level::new(b, degree));
            }
            strong.push(g.clone());
        }
        let points: Vec<usize> = levels.iter().map(|l| l.point).collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.gens = strong
                .iter()
                .filter(|g| points[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            level.rebuild(degree);
        }

        let mut bsgs = Bsgs { degree, levels };
        bsgs.complete();
        bsgs
    }

    fn complete(&mut self) {
        let degree = self.degree;
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let gens = self.levels[lvl].gens.clone();
            for &y in &orbit {
                for s in &gens {
                    let z = s.apply(y);
                    let u_y = self.levels[lvl].transversal[y].as_ref().unwrap();
                    let u_z_inv = self.levels[lvl].inverses[z].as_ref().unwrap();
                    let h = u_y.then(s).then(u_z_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j) = self.sift(h, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if j == self.levels.len() {
                        let b = residue.smallest_moved_point().unwrap();
                        self.levels.push(Level::new(b, degree));
                    }
                    // The residue fixes every base point before level j. Orbits at
                    // levels up to `lvl` cannot grow, so only deeper levels are rebuilt.
                    for l in 0..=j {
                        self.levels[l].gens.push(residue.clone());
                        if l > lvl {
                            self.levels[l].rebuild(degree);
                        }
                    }
                    i = j as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    /// Strips `g` through the levels starting at `from`. Returns the residue and
    /// the level at which stripping stopped (`levels.len()` if it passed all).
    pub(crate) fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let y = g.apply(level.point);
            match &level.inverses[y] {
                Some(inv) => g = g.then(inv),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
            .expect("group order exceeds u128")
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, _) = self.sift(g.clone(), 0);
        residue.is_identity()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// The chain for the pointwise stabiliser of the first `k` base points.
    pub fn tail(&self, k: usize) -> Bsgs {
        Bsgs {
            degree: self.degree,
            levels: self.levels[k.min(self.levels.len())..].to_vec(),
        }
    }
}

use super::grid::GridSpec;

/// Integer `|k|^2` of every lattice point, for tabulating radial symbols once per shell.
#[derive(Debug, Clone)]
pub struct RadialLattice {
    k2: Vec<u32>,
    used: Vec<bool>,
    step: f64,
}

impl RadialLattice {
    pub fn new(grid: &GridSpec) -> Self {
        let k2: Vec<u32> = (0..grid.len())
            .map(|i| {
                let idx = grid.unflatten(i);
                (0..grid.dim()).map(|a| grid.wavenumber(idx[a]).pow(2) as u32).sum()
            })
            .collect();
        let max = k2.iter().copied().max().unwrap_or(0) as usize;
        let mut used = vec![false; max + 1];
        for &k in &k2 {
            used[k as usize] = true;
        }
        Self { k2, used, step: grid.frequency_step() }
    }

    pub fn len(&self) -> usize {
        self.k2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k2.is_empty()
    }

    /// Shell index of a flat lattice point.
    pub fn shell(&self, flat: usize) -> usize {
        self.k2[flat] as usize
    }

    pub fn shell_radius(&self, shell: usize) -> f64 {
        self.step * (shell as f64).sqrt()
    }

    /// `f(r)` on every occupied shell, indexed by shell.
    pub fn tabulate<T: Copy + Default>(&self, f: impl Fn(f64) -> T) -> Vec<T> {
        self.used
            .iter()
            .enumerate()
            .map(|(shell, &u)| if u { f(self.shell_radius(shell)) } else { T::default() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shells_match_frequency_magnitudes() {
        let g = GridSpec::new(2, 16, 3.0).unwrap();
        let lat = RadialLattice::new(&g);
        let table = lat.tabulate(|r| r);
        for i in 0..g.len() {
            assert!((table[lat.shell(i)] - g.frequency_magnitude(i)).abs() < 1e-14);
        }
    }
}

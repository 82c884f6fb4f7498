//! Exact rank over `F_p` by incremental reduced row echelon form.
//!
//! Vectors are fed one at a time. The basis is kept fully reduced, so each
//! basis row is zero on every pivot column but its own; an incoming vector
//! is reduced by touching only the free (non-pivot) columns, and the
//! coefficient for each pivot row is simply the incoming entry at that
//! pivot. Products are accumulated lazily in `u64` and reduced once per
//! vector whenever the modulus allows it.

use crate::field::FieldSpec;

const NO_PIVOT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct RowReducer {
    field: FieldSpec,
    width: usize,
    pivot_row: Vec<usize>,
    rows: Vec<Vec<u32>>,
    free: Vec<usize>,
    acc: Vec<u64>,
    // how many products of two residues fit in a u64 on top of one residue
    lazy_budget: u64,
}

impl RowReducer {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        let p = field.modulus() as u64;
        let max_product = (p - 1) * (p - 1);
        let lazy_budget = ((u64::MAX - p) / max_product).max(1);
        RowReducer {
            field,
            width,
            pivot_row: vec![NO_PIVOT; width],
            rows: Vec::new(),
            free: (0..width).collect(),
            acc: vec![0; width],
            lazy_budget,
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Inserts a sparse vector given as `(column, value)` pairs with distinct
    /// columns. Returns `true` when the rank grew.
    pub fn insert_sparse(&mut self, entries: &[(usize, u32)]) -> bool {
        if self.is_full() {
            return false;
        }
        let p = self.field.modulus() as u64;
        for &f in &self.free {
            self.acc[f] = 0;
        }
        let mut pending = 0u64;
        for &(c, v) in entries {
            debug_assert!(c < self.width);
            let v = v as u64 % p;
            if v == 0 {
                continue;
            }
            let r = self.pivot_row[c];
            if r == NO_PIVOT {
                self.acc[c] += v;
                continue;
            }
            if pending == self.lazy_budget {
                for &f in &self.free {
                    self.acc[f] %= p;
                }
                pending = 0;
            }
            let k = p - v;
            let row = &self.rows[r];
            for &f in &self.free {
                self.acc[f] += k * row[f] as u64;
            }
            pending += 1;
        }
        self.absorb()
    }

    pub fn insert_dense(&mut self, values: &[u32]) -> bool {
        assert_eq!(values.len(), self.width);
        let sparse: Vec<(usize, u32)> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, v))
            .collect();
        self.insert_sparse(&sparse)
    }

    // Takes the reduced vector in `acc` (free columns only) and, if nonzero,
    // turns it into a new pivot row.
    fn absorb(&mut self) -> bool {
        let p = self.field.modulus() as u64;
        let mut lead = None;
        for (slot, &f) in self.free.iter().enumerate() {
            let v = self.acc[f] % p;
            self.acc[f] = v;
            if lead.is_none() && v != 0 {
                lead = Some((slot, f));
            }
        }
        let Some((slot, col)) = lead else {
            return false;
        };
        let inv = self.field.inv(self.acc[col] as u32) as u64;
        self.free.remove(slot);
        let mut row = vec![0u32; self.width];
        row[col] = 1;
        for &f in &self.free {
            row[f] = (self.acc[f] * inv % p) as u32;
        }
        for other in &mut self.rows {
            let e = other[col];
            if e == 0 {
                continue;
            }
            let k = p - e as u64;
            for &f in &self.free {
                other[f] = ((other[f] as u64 + k * row[f] as u64) % p) as u32;
            }
            other[col] = 0;
        }
        self.pivot_row[col] = self.rows.len();
        self.rows.push(row);
        true
    }

    /// Reduced basis rows, in insertion order.
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Pivot column of each basis row, in insertion order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut out = vec![0; self.rows.len()];
        for (c, &r) in self.pivot_row.iter().enumerate() {
            if r != NO_PIVOT {
                out[r] = c;
            }
        }
        out
    }
}

/// Rank of a list of sparse vectors of the given width.
pub fn rank_sparse<'a, I>(field: FieldSpec, width: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'a [(usize, u32)]>,
{
    let mut red = RowReducer::new(field, width);
    for v in vectors {
        red.insert_sparse(v);
        if red.is_full() {
            break;
        }
    }
    red.rank()
}

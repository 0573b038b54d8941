//! Small integer linear algebra: rank over F_p, Hermite normal form of
//! lattices containing `m·Z^n`, and Smith normal form with column
//! transforms.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;

use crate::error::{Error, Result};

/// Rank of the row space of `rows` over F_p.
pub fn rank_mod_p(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_inv(rows[rank][col], p).expect("nonzero mod prime");
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let c = rows[i][col];
                for j in col..ncols {
                    rows[i][j] = (rows[i][j] - c * rows[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// A sublattice `L` of `Z^n` with `m·Z^n ⊆ L`, kept in Hermite normal form:
/// row `i` has pivot `h[i][i]` dividing `m`, zeros left of it, and entries
/// right of it reduced modulo the pivots below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModLattice {
    m: i128,
    rows: Vec<Vec<i128>>,
}

impl ModLattice {
    /// The lattice `m·Z^n`.
    pub fn new(n: usize, m: u64) -> ModLattice {
        let m = m as i128;
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = m;
                r
            })
            .collect();
        ModLattice { m, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.m as u64
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<u64> {
        (0..self.dim()).map(|i| self.rows[i][i] as u64).collect()
    }

    /// Index `[Z^n : L]`.
    pub fn index(&self) -> u128 {
        self.rows.iter().enumerate().map(|(i, r)| r[i] as u128).product()
    }

    pub fn insert(&mut self, v: &[i64]) {
        let v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.insert_from(v, 0);
        self.reduce_above();
    }

    fn insert_from(&mut self, mut v: Vec<i128>, start: usize) {
        let n = self.dim();
        let m = self.m;
        for x in v.iter_mut() {
            *x = x.rem_euclid(m);
        }
        for i in start..n {
            if v[i] == 0 {
                continue;
            }
            let piv = self.rows[i][i];
            if v[i] % piv == 0 {
                let k = v[i] / piv;
                for j in i..n {
                    v[j] = (v[j] - k * self.rows[i][j]).rem_euclid(m);
                }
                debug_assert_eq!(v[i], 0);
                continue;
            }
            // new pivot g = s*piv + t*v[i]
            let e = piv.extended_gcd(&v[i]);
            let g = e.gcd;
            let old = self.rows[i].clone();
            let mut new = vec![0i128; n];
            for j in i..n {
                new[j] = (e.x * old[j] + e.y * v[j]).rem_euclid(m);
            }
            new[i] = g;
            let a = piv / g;
            let b = v[i] / g;
            let rest_old: Vec<i128> = (0..n).map(|j| if j < i { 0 } else { old[j] - a * new[j] }).collect();
            let rest_v: Vec<i128> = (0..n).map(|j| if j < i { 0 } else { v[j] - b * new[j] }).collect();
            self.rows[i] = new;
            self.insert_from(rest_old, i + 1);
            self.insert_from(rest_v, i + 1);
            return;
        }
    }

    fn reduce_above(&mut self) {
        let n = self.dim();
        for i in (0..n).rev() {
            let piv = self.rows[i][i];
            for r in 0..i {
                let k = Integer::div_floor(&self.rows[r][i], &piv);
                if k != 0 {
                    for j in i..n {
                        self.rows[r][j] -= k * self.rows[i][j];
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let n = self.dim();
        let mut v: Vec<i128> = v.iter().map(|&x| (x as i128).rem_euclid(self.m)).collect();
        for i in 0..n {
            let piv = self.rows[i][i];
            if v[i] % piv != 0 {
                return false;
            }
            let k = v[i] / piv;
            for j in i..n {
                v[j] -= k * self.rows[i][j];
            }
        }
        true
    }
}

/// Smith normal form `A V = U^{-1} diag(d)`: returns the diagonal (length
/// `min(rows, cols)`, nonnegative, each dividing the next) together with the
/// column transform `V` and its inverse. Row transforms are not recorded.
pub struct Smith {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub v_inv: Vec<Vec<i128>>,
}

fn overflow() -> Error {
    Error::Invariant("integer overflow in Smith normal form".into())
}

fn axpy(dst: &mut [i128], src: &[i128], k: i128) -> Result<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = d.checked_sub(k.checked_mul(*s).ok_or_else(overflow)?).ok_or_else(overflow)?;
    }
    Ok(())
}

pub fn smith(mut a: Vec<Vec<i128>>, ncols: usize) -> Result<Smith> {
    let nrows = a.len();
    let mut v: Vec<Vec<i128>> = (0..ncols).map(|i| (0..ncols).map(|j| (i == j) as i128).collect()).collect();
    let mut v_inv = v.clone();
    // column ops: col_j -= k col_i  <=>  V col_j -= k V col_i ; Vinv row_i += k row_j
    let col_sub = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, v_inv: &mut Vec<Vec<i128>>, j: usize, i: usize, k: i128| -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for row in a.iter_mut().chain(v.iter_mut()) {
            row[j] = row[j].checked_sub(k.checked_mul(row[i]).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
        let rj = v_inv[j].clone();
        axpy(&mut v_inv[i], &rj, -k)
    };
    let col_swap = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, v_inv: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    };
    let steps = nrows.min(ncols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            col_swap(&mut a, &mut v, &mut v_inv, t, bj);
            let piv = a[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                let k = a[i][t] / piv;
                if k != 0 {
                    let rt = a[t].clone();
                    axpy(&mut a[i], &rt, k)?;
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..ncols {
                let k = a[t][j] / piv;
                col_sub(&mut a, &mut v, &mut v_inv, j, t, k)?;
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % piv != 0));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    axpy(&mut a[t], &ri, -1)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut().chain(v.iter_mut()) {
                row[t] = -row[t];
            }
            for x in v_inv[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..steps).map(|i| a[i][i]).collect();
    Ok(Smith { diag, v, v_inv })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 3), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 0], vec![1, 1]], 2), 2);
        assert_eq!(rank_mod_p(vec![], 2), 0);
    }

    #[test]
    fn lattice_index() {
        // <(1,1)> + 2Z^2 in Z^2 has index 2
        let mut l = ModLattice::new(2, 2);
        l.insert(&[1, 1]);
        assert_eq!(l.index(), 2);
        assert!(l.contains(&[3, 1]));
        assert!(!l.contains(&[1, 0]));

        let mut l = ModLattice::new(3, 12);
        l.insert(&[4, 6, 0]);
        l.insert(&[0, 3, 8]);
        for v in [[4, 6, 0], [0, 3, 8], [4, 9, 8], [12, 0, 0], [8, 0, 0]] {
            assert!(l.contains(&v), "{:?}", v);
        }
        assert!(!l.contains(&[1, 0, 0]));
    }

    #[test]
    fn smith_examples() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(a.clone(), 3).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
        let id = matmul(&s.v, &s.v_inv);
        for (i, r) in id.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                assert_eq!(x, (i == j) as i128);
            }
        }
        let s = smith(vec![vec![4, 0], vec![0, 6]], 2).unwrap();
        assert_eq!(s.diag, vec![2, 12]);
    }
}

//! Smith normal form over the integers and homology of finite chain complexes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer matrix as rows.
pub type IntMatrix = Vec<Vec<i64>>;

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` of `m`.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut diag = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(top, pi);
        for row in a.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let p = a[top][top].clone();
            let mut clean = true;
            for i in top + 1..rows {
                if a[i][top].is_zero() {
                    continue;
                }
                let q = a[i][top].div_floor(&p);
                for j in top..cols {
                    let t = &a[top][j] * &q;
                    a[i][j] -= t;
                }
                if !a[i][top].is_zero() {
                    clean = false;
                }
            }
            for j in top + 1..cols {
                if a[top][j].is_zero() {
                    continue;
                }
                let q = a[top][j].div_floor(&p);
                for row in a.iter_mut().skip(top) {
                    let t = &row[top] * &q;
                    row[j] -= t;
                }
                if !a[top][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let mut best = (top, top);
            for i in top..rows {
                if !a[i][top].is_zero() && a[i][top].abs() < a[best.0][best.1].abs() {
                    best = (i, top);
                }
            }
            for j in top..cols {
                if !a[top][j].is_zero() && a[top][j].abs() < a[best.0][best.1].abs() {
                    best = (top, j);
                }
            }
            a.swap(top, best.0);
            for row in a.iter_mut() {
                row.swap(top, best.1);
            }
        }
        diag.push(a[top][top].abs());
        top += 1;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    invariant_factors(m).len()
}

/// A finitely generated abelian group `Z^free ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<IntMatrix> {
    let inner = b.len();
    let cols = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            if row.len() != inner {
                return Err(Error::invalid("boundary matrix shapes do not chain"));
            }
            Ok((0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        })
        .collect()
}

/// Homology of `C_top → ... → C_1 → C_0`, where `ranks[i] = rank C_i` and
/// `boundaries[i]` is `d_{i+1}: C_{i+1} → C_i` with `ranks[i]` rows.
pub fn chain_homology(ranks: &[usize], boundaries: &[IntMatrix]) -> Result<Vec<AbelianGroup>> {
    if boundaries.len() + 1 != ranks.len().max(1) {
        return Err(Error::invalid("expected one boundary matrix between each pair of degrees"));
    }
    for (i, d) in boundaries.iter().enumerate() {
        if d.len() != ranks[i] || d.iter().any(|r| r.len() != ranks[i + 1]) {
            return Err(Error::invalid(format!("boundary {} has the wrong shape", i + 1)));
        }
    }
    for w in boundaries.windows(2) {
        let prod = mat_mul(&w[0], &w[1])?;
        if prod.iter().flatten().any(|&x| x != 0) {
            return Err(Error::NonZeroComposition);
        }
    }
    let facts: Vec<Vec<BigInt>> = boundaries.iter().map(|d| invariant_factors(d)).collect();
    let mut out = Vec::new();
    for (i, &r) in ranks.iter().enumerate() {
        let out_rank = if i == 0 { 0 } else { facts[i - 1].len() };
        let in_f: &[BigInt] = facts.get(i).map(|v| v.as_slice()).unwrap_or(&[]);
        out.push(AbelianGroup {
            free_rank: r - out_rank - in_f.len(),
            torsion: in_f.iter().filter(|t| !t.is_one()).cloned().collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_matrices() {
        assert_eq!(invariant_factors(&[vec![2]]), vec![BigInt::from(2)]);
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(invariant_factors(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(invariant_factors(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn homology_of_toy_complexes() {
        let h = chain_homology(&[1], &[]).unwrap();
        assert_eq!(h[0].to_string(), "Z");
        let h = chain_homology(&[1, 1], &[vec![vec![2]]]).unwrap();
        assert_eq!(h[0].to_string(), "Z/2");
        assert!(h[1].is_zero());
        // boundary of a triangle
        let d1 = vec![vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]];
        let h = chain_homology(&[3, 3], &[d1]).unwrap();
        assert_eq!((h[0].free_rank, h[1].free_rank), (1, 1));
        assert_eq!(chain_homology(&[1, 1, 1], &[vec![vec![1]], vec![vec![1]]]).unwrap_err(), Error::NonZeroComposition);
    }
}

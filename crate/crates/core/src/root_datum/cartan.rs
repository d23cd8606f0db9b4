//! Cartan matrices of the irreducible finite types (Bourbaki numbering) and the
//! finite-type test for arbitrary integer matrices.

use crate::error::{Error, Result};
use crate::intmat::{gcd, IntMatrix};

/// An irreducible Dynkin type such as `B3` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    pub series: char,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(series: char, rank: usize) -> Result<Self> {
        let series = series.to_ascii_uppercase();
        let ok = match series {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{series}{rank}")));
        }
        Ok(DynkinType { series, rank })
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// `C[i][j] = ⟨α_i, α_j∨⟩`.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.rank;
        let mut c = IntMatrix::identity(n).scale(2);
        let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
            c[(i, j)] = cij;
            c[(j, i)] = cji;
        };
        match self.series {
            'A' => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            'B' => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            'C' => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            'D' => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            'E' => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            'F' => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            'G' => link(0, 1, -1, -3),
            _ => unreachable!(),
        }
        c
    }
}

/// Checks that `c` is a Cartan matrix of finite type and returns squared root lengths
/// of the simple roots, normalised so that the shortest root in each component has length 1.
pub fn finite_type_norms(c: &IntMatrix) -> Result<Vec<i64>> {
    let n = c.nrows();
    if c.ncols() != n {
        return Err(Error::InvalidDatum("Cartan matrix is not square".into()));
    }
    for i in 0..n {
        if c[(i, i)] != 2 {
            return Err(Error::InvalidDatum(format!(
                "diagonal entry {i} is {}",
                c[(i, i)]
            )));
        }
        for j in 0..n {
            if i != j {
                if c[(i, j)] > 0 {
                    return Err(Error::InvalidDatum(format!(
                        "positive off-diagonal entry at ({i}, {j})"
                    )));
                }
                if (c[(i, j)] == 0) != (c[(j, i)] == 0) {
                    return Err(Error::InvalidDatum(format!(
                        "asymmetric zero pattern at ({i}, {j})"
                    )));
                }
            }
        }
    }
    // norms as fractions num/den, propagated along the Dynkin graph
    let mut norm: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut n_comp = 0;
    for start in 0..n {
        if norm[start].is_some() {
            continue;
        }
        norm[start] = Some((1, 1));
        component[start] = n_comp;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (a, b) = norm[i].unwrap();
            for j in 0..n {
                if j == i || c[(i, j)] == 0 {
                    continue;
                }
                // n_j C_ij = n_i C_ji
                let (num, den) = (a * c[(j, i)], b * c[(i, j)]);
                let g = gcd(num, den);
                let cand = (num / g * den.signum(), (den / g).abs());
                match norm[j] {
                    None => {
                        norm[j] = Some(cand);
                        component[j] = n_comp;
                        stack.push(j);
                    }
                    Some(existing) if existing != cand => {
                        return Err(Error::InvalidDatum(
                            "Cartan matrix is not symmetrisable".into(),
                        ));
                    }
                    _ => {}
                }
            }
        }
        n_comp += 1;
    }
    let mut out = vec![0; n];
    for k in 0..n_comp {
        let members: Vec<usize> = (0..n).filter(|&i| component[i] == k).collect();
        let den = members
            .iter()
            .fold(1, |acc, &i| crate::intmat::lcm(acc, norm[i].unwrap().1));
        let mut vals: Vec<i64> = members
            .iter()
            .map(|&i| norm[i].unwrap().0 * (den / norm[i].unwrap().1))
            .collect();
        let g = vals.iter().fold(0, |acc, &v| gcd(acc, v));
        vals.iter_mut().for_each(|v| *v /= g);
        let min = *vals.iter().min().unwrap();
        if min <= 0 {
            return Err(Error::InvalidDatum(
                "Cartan matrix is not symmetrisable".into(),
            ));
        }
        for (&i, &v) in members.iter().zip(&vals) {
            out[i] = v;
        }
    }
    // positive definiteness of the symmetrised form by leading principal minors
    let b = symmetrised(c, &out);
    for k in 1..=n {
        let idx: Vec<usize> = (0..k).collect();
        let rows: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| b[(i, j)]).collect())
            .collect();
        if IntMatrix::from_rows(&rows).det() <= 0 {
            return Err(Error::InvalidDatum(
                "Cartan matrix is not of finite type".into(),
            ));
        }
    }
    Ok(out)
}

/// Twice the invariant form on simple roots: `B_ij = C_ij · n_j`.
pub fn symmetrised(c: &IntMatrix, norms: &[i64]) -> IntMatrix {
    let n = c.nrows();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = c[(i, j)] * norms[j];
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_types_pass_the_finite_type_test() {
        let types = [
            ('A', 1),
            ('A', 4),
            ('B', 3),
            ('C', 4),
            ('D', 5),
            ('E', 6),
            ('E', 7),
            ('E', 8),
            ('F', 4),
            ('G', 2),
        ];
        for (s, r) in types {
            let t = DynkinType::new(s, r).unwrap();
            finite_type_norms(&t.cartan_matrix()).unwrap();
        }
    }

    #[test]
    fn affine_matrix_rejected() {
        let c = IntMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]);
        assert!(finite_type_norms(&c).is_err());
        assert!(DynkinType::new('D', 3).is_err());
        assert!(DynkinType::new('H', 3).is_err());
    }

    #[test]
    fn g2_norms() {
        let t = DynkinType::new('G', 2).unwrap();
        assert_eq!(finite_type_norms(&t.cartan_matrix()).unwrap(), vec![1, 3]);
        let b = DynkinType::new('B', 2).unwrap();
        assert_eq!(finite_type_norms(&b.cartan_matrix()).unwrap(), vec![2, 1]);
    }
}

//! Divided differences of `exp(pi z)` over complex, possibly repeated nodes.
//!
//! Well separated nodes go through the residue (partial fraction) formula
//! with short Taylor jets; clustered nodes go through Opitz' theorem, i.e.
//! the exponential of a bidiagonal matrix.

use std::f64::consts::PI;

use num_complex::Complex64;

type C = Complex64;
type Jet = [C; 3];

const SEPARATION: f64 = 0.5;

fn jet_mul(a: Jet, b: Jet) -> Jet {
    [a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[1] * b[1] + a[2] * b[0]]
}

/// Taylor coefficients of `exp(pi (x + t))` in `t`.
fn exp_jet(x: C) -> Jet {
    let e = (x * PI).exp();
    [e, e * PI, e * (PI * PI / 2.0)]
}

/// Taylor coefficients of `(d + t)^(-m)` in `t`.
fn inverse_power_jet(d: C, m: usize) -> Jet {
    let inv = d.inv();
    let mf = m as f64;
    let base = inv.powi(m as i32);
    [base, -base * inv * mf, base * inv * inv * (mf * (mf + 1.0) / 2.0)]
}

/// Divided difference over `nodes` given as (point, multiplicity) with
/// multiplicities up to three and pairwise distinct points.
fn residue_form(nodes: &[(C, usize)]) -> C {
    let mut total = C::new(0.0, 0.0);
    for (i, &(xi, mi)) in nodes.iter().enumerate() {
        let mut jet = exp_jet(xi);
        for (j, &(xj, mj)) in nodes.iter().enumerate() {
            if i != j {
                jet = jet_mul(jet, inverse_power_jet(xi - xj, mj));
            }
        }
        total += jet[mi - 1];
    }
    total
}

/// `exp(pi M)` for an upper bidiagonal `M` with the given diagonal and unit
/// superdiagonal. Entry (i, j) is the divided difference over nodes i..=j.
pub fn opitz_table(diag: &[C]) -> Vec<Vec<C>> {
    let n = diag.len();
    let mut a = vec![vec![C::new(0.0, 0.0); n]; n];
    let mut norm: f64 = 0.0;
    for i in 0..n {
        a[i][i] = diag[i] * PI;
        if i + 1 < n {
            a[i][i + 1] = C::new(PI, 0.0);
        }
        norm = norm.max(a[i][i].norm() + if i + 1 < n { PI } else { 0.0 });
    }
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scale = 0.5f64.powi(squarings);
    for row in a.iter_mut() {
        for v in row.iter_mut() {
            *v *= scale;
        }
    }
    // Taylor series of the scaled exponential.
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=24 {
        term = matmul_upper(&term, &a);
        let inv_k = 1.0 / k as f64;
        let mut biggest: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                term[i][j] *= inv_k;
                result[i][j] += term[i][j];
                biggest = biggest.max(term[i][j].norm());
            }
        }
        if biggest < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = matmul_upper(&result, &result);
    }
    result
}

fn identity(n: usize) -> Vec<Vec<C>> {
    let mut m = vec![vec![C::new(0.0, 0.0); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    m
}

fn matmul_upper(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let mut c = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut s = C::new(0.0, 0.0);
            for k in i..=j {
                s += a[i][k] * b[k][j];
            }
            c[i][j] = s;
        }
    }
    c
}

/// The divided differences of `exp(pi z)` needed for the pair kernel and its
/// second derivatives, over the node families `{0, z1^p, z2^q}`.
#[derive(Debug, Clone, Copy)]
pub struct KernelDifferences {
    /// F[0, z1, z2]
    pub f11: C,
    /// F[0, z1, z1, z2]
    pub f21: C,
    /// F[0, z1, z2, z2]
    pub f12: C,
    /// F[0, z1, z1, z1, z2]
    pub f31: C,
    /// F[0, z1, z1, z2, z2]
    pub f22: C,
    /// F[0, z1, z2, z2, z2]
    pub f13: C,
}

pub fn kernel_differences(z1: C, z2: C) -> KernelDifferences {
    let zero = C::new(0.0, 0.0);
    let separated = z1.norm() >= SEPARATION && z2.norm() >= SEPARATION && (z1 - z2).norm() >= SEPARATION;
    if separated {
        let dd = |p: usize, q: usize| residue_form(&[(zero, 1), (z1, p), (z2, q)]);
        return KernelDifferences { f11: dd(1, 1), f21: dd(2, 1), f12: dd(1, 2), f31: dd(3, 1), f22: dd(2, 2), f13: dd(1, 3) };
    }
    let t = opitz_table(&[z1, z1, z1, zero, z2, z2, z2]);
    KernelDifferences { f11: t[2][4], f21: t[1][4], f12: t[2][5], f31: t[0][4], f22: t[1][5], f13: t[2][6] }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_and_matrix_forms_agree() {
        let z1 = C::new(0.0, 1.7);
        let z2 = C::new(0.0, -2.9);
        let r = residue_form(&[(C::new(0.0, 0.0), 1), (z1, 2), (z2, 2)]);
        let t = opitz_table(&[z1, z1, z1, C::new(0.0, 0.0), z2, z2, z2]);
        assert!((r - t[1][5]).norm() < 1e-13 * r.norm().max(1e-3));
    }

    #[test]
    fn confluent_limit_is_scaled_derivative() {
        // F[x, x, x] = f''(x) / 2
        let x = C::new(0.0, 0.3);
        let t = opitz_table(&[x, x, x]);
        let expect = (x * PI).exp() * (PI * PI / 2.0);
        assert!((t[0][2] - expect).norm() < 1e-14);
    }
}

//! Dense complex linear algebra sized for desk-scale exact diagonalization:
//! a row-major complex matrix, a cyclic-Jacobi Hermitian eigensolver, a
//! symmetric tridiagonal QL eigenvalue routine for the real embedding of a
//! Hermitian matrix, and LU-based inverse iteration for ground-state vectors.

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        let mut m = CMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Largest entry of |A - A†|.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![Complex64::new(0.0, 0.0); self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(x.iter()) {
                acc += a * b;
            }
            y[i] = acc;
        }
        y
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi with
/// complex plane rotations. Returns eigenvalues in ascending order and the
/// matching unit eigenvectors as matrix columns.
pub fn eigh_jacobi(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.dim();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = m.max_abs().max(1e-300);
    let tol = 1e-30 * scale * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off <= tol * (n * n) as f64 {
            return Ok(sorted_eigh(m, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // tan(2θ) = 2|apq| / (app - aqq), stable half-angle form
                let tau = (app - aqq) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_ph = phase * s; // s e^{iφ}
                let s_ph_c = s_ph.conj();

                // column update: A <- A G, G = [[c, -s e^{iφ}], [s e^{-iφ}, c]]
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = c * aip + s_ph_c * aiq;
                    m[(i, q)] = -s_ph * aip + c * aiq;
                }
                // row update: A <- G† A
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = c * apj + s_ph * aqj;
                    m[(q, j)] = -s_ph_c * apj + c * aqj;
                }
                // clean the rotated 2x2 block against round-off
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = c * vip + s_ph_c * viq;
                    v[(i, q)] = -s_ph * vip + c * viq;
                }
            }
        }
    }
    Err(Error::Eigensolver(
        "Jacobi sweeps exhausted before off-diagonal norm converged".into(),
    ))
}

fn sorted_eigh(m: CMatrix, v: CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.dim();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let mut vals = Vec::with_capacity(n);
    let mut vecs = CMatrix::zeros(n);
    for (col, &k) in idx.iter().enumerate() {
        vals.push(m[(k, k)].re);
        for i in 0..n {
            vecs[(i, col)] = v[(i, k)];
        }
    }
    (vals, vecs)
}

/// Householder reduction of a real symmetric matrix (given as flat row-major
/// storage) to tridiagonal form, eigenvalues only: no transform accumulated.
/// Returns the diagonal `d` and subdiagonal `e` (with `e[0]` unused).
fn tridiagonalize_sym(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    (d, e)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix,
/// eigenvalues only, ascending.
fn tql_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Eigensolver(
                    "tridiagonal QL exceeded 50 iterations".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // deflate: the rotation chain degenerated
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Smallest eigenvalue of a Hermitian matrix through the real symmetric
/// embedding [[Re H, -Im H], [Im H, Re H]] (each eigenvalue of H appears
/// twice in the embedding).
fn lowest_eigenvalue_embedded(h: &CMatrix) -> Result<f64> {
    let n = h.dim();
    let m = 2 * n;
    let mut s = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            s[i * m + j] = z.re;
            s[i * m + (n + j)] = -z.im;
            s[(n + i) * m + j] = z.im;
            s[(n + i) * m + (n + j)] = z.re;
        }
    }
    let (d, e) = tridiagonalize_sym(&mut s, m);
    let vals = tql_eigenvalues(d, e)?;
    Ok(vals[0])
}

/// LU factorization with partial pivoting. Returns Err on exact singularity.
struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    piv: Vec<usize>,
}

fn lu_factor(a: &CMatrix) -> Option<Lu> {
    let n = a.dim();
    let mut lu = a.data.clone();
    let mut piv: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut p = k;
        let mut best = lu[k * n + k].norm();
        for i in (k + 1)..n {
            let v = lu[i * n + k].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..n {
                lu.swap(k * n + j, p * n + j);
            }
            piv.swap(k, p);
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let f = lu[i * n + k] / pivot;
            lu[i * n + k] = f;
            for j in (k + 1)..n {
                let sub = f * lu[k * n + j];
                lu[i * n + j] -= sub;
            }
        }
    }
    Some(Lu { n, lu, piv })
}

impl Lu {
    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in (i + 1)..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
        x
    }
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    norm
}

fn rayleigh_quotient(h: &CMatrix, v: &[Complex64]) -> f64 {
    let hv = h.matvec(v);
    v.iter()
        .zip(hv.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

fn residual_norm(h: &CMatrix, v: &[Complex64], theta: f64) -> f64 {
    let hv = h.matvec(v);
    hv.iter()
        .zip(v.iter())
        .map(|(a, b)| (a - theta * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Inverse iteration with a fixed shift; refines the shift by the Rayleigh
/// quotient once the iterate settles.
fn inverse_iteration(
    h: &CMatrix,
    shift0: f64,
    target_residual: f64,
) -> Result<(f64, Vec<Complex64>)> {
    let n = h.dim();
    let scale = h.max_abs().max(1.0);
    let mut shift = shift0;
    // deterministic start vector with all components populated
    let mut v: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(1.0 + 1e-3 * ((j % 17) as f64), 1e-4 * ((j % 5) as f64)))
        .collect();
    normalize(&mut v);

    let mut last_res = f64::INFINITY;
    for refactor in 0..4 {
        let mut shifted = h.clone();
        for i in 0..n {
            shifted[(i, i)] -= Complex64::new(shift, 0.0);
        }
        let lu = match lu_factor(&shifted) {
            Some(lu) => lu,
            None => {
                // exactly singular shift: nudge and refactor
                shift += 1e-12 * scale;
                continue;
            }
        };
        for _ in 0..30 {
            let mut w = lu.solve(&v);
            let growth = normalize(&mut w);
            if !growth.is_finite() || growth == 0.0 {
                break;
            }
            v = w;
            let theta = rayleigh_quotient(h, &v);
            let res = residual_norm(h, &v, theta);
            if res <= target_residual {
                return Ok((theta, v));
            }
            last_res = res;
        }
        // re-center on the Rayleigh quotient for another factorization
        let theta = rayleigh_quotient(h, &v);
        if refactor == 3 {
            return Err(Error::Eigensolver(format!(
                "inverse iteration stalled: residual {last_res:.3e} after 4 factorizations \
                 (target {target_residual:.3e})"
            )));
        }
        shift = theta;
    }
    unreachable!()
}

fn gershgorin_lower_bound(h: &CMatrix) -> f64 {
    let n = h.dim();
    let mut lo = f64::INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        for j in 0..n {
            if j != i {
                radius += h[(i, j)].norm();
            }
        }
        lo = lo.min(h[(i, i)].re - radius);
    }
    lo
}

/// Lowest eigenpair of a Hermitian matrix. Small matrices go through cyclic
/// Jacobi; mid-size ones get the smallest eigenvalue from the tridiagonalized
/// real embedding followed by inverse iteration; beyond the dense-embedding
/// budget a Gershgorin-shifted inverse power iteration takes over.
///
/// The returned vector is a unit vector with its largest-modulus entry made
/// real positive; the residual satisfies ‖Hv − Ev‖ ≤ 1e-9 ‖H‖_F.
pub fn lowest_eigenpair(h: &CMatrix) -> Result<(f64, Vec<Complex64>)> {
    let n = h.dim();
    if n == 0 {
        return Err(Error::Eigensolver("empty matrix".into()));
    }
    let scale = h.max_abs().max(1e-300);
    let herm = h.hermiticity_residual();
    if herm > 1e-11 * scale.max(1.0) {
        return Err(Error::InvalidState(format!(
            "matrix is not Hermitian: residual {herm:.3e}"
        )));
    }
    let target = 1e-10 * h.frobenius_norm().max(1e-300);

    let (energy, mut vec) = if n <= 64 {
        let (vals, vecs) = eigh_jacobi(h)?;
        let v: Vec<Complex64> = (0..n).map(|i| vecs[(i, 0)]).collect();
        (vals[0], v)
    } else if n <= 1024 {
        let lam = lowest_eigenvalue_embedded(h)?;
        inverse_iteration(h, lam, target)?
    } else {
        let lo = gershgorin_lower_bound(h);
        inverse_iteration(h, lo, target)?
    };

    // global phase: largest-modulus entry real positive
    let mut k = 0;
    let mut best = 0.0;
    for (i, z) in vec.iter().enumerate() {
        let m = z.norm();
        if m > best {
            best = m;
            k = i;
        }
    }
    if best > 0.0 {
        let phase = vec[k] / best;
        let ph_conj = phase.conj();
        for z in vec.iter_mut() {
            *z *= ph_conj;
        }
    }

    let res = residual_norm(h, &vec, energy);
    let bound = 1e-9 * h.frobenius_norm().max(1e-300);
    if res > bound {
        return Err(Error::Eigensolver(format!(
            "ground-state residual {res:.3e} exceeds bound {bound:.3e}"
        )));
    }
    Ok((energy, vec))
}

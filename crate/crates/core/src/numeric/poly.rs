use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real polynomial with ascending-degree coefficients. Trailing (leading-degree)
/// zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| *c == T::zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From coefficients written highest degree first, e.g. `[5, -8, 3]` is
    /// `5x^2 - 8x + 3`.
    pub fn from_descending(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().rev().copied().collect())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x - a`.
    pub fn x_minus(a: T) -> Self {
        Self::new(vec![-a, T::one()])
    }

    /// Monic polynomial with the given real roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Self::constant(T::one()), |acc, &r| acc * Self::x_minus(r))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().copied().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * T::of_usize(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(T::one() / self.leading())
    }

    pub fn roots(&self) -> Result<Vec<Complex<T>>> {
        poly_roots(self)
    }
}

impl<T: Real> Add for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &Self, k: usize| p.coeffs.get(k).copied().unwrap_or_else(T::zero);
        Self::new((0..len).map(|k| at(&self, k) + at(&rhs, k)).collect())
    }
}

impl<T: Real> Neg for Polynomial<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Sub for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Mul for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl<T: Real> Add<T> for Polynomial<T> {
    type Output = Self;
    fn add(self, rhs: T) -> Self {
        self + Self::constant(rhs)
    }
}

impl<T: Real> Sub<T> for Polynomial<T> {
    type Output = Self;
    fn sub(self, rhs: T) -> Self {
        self - Self::constant(rhs)
    }
}

impl<T: Real> Mul<T> for Polynomial<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T: Real> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == T::zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < T::zero() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < T::zero() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || mag != T::one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// All complex roots, with multiplicity, sorted by real then imaginary part.
///
/// Degree 1 and 2 use closed forms (the quadratic one cancellation-safe);
/// higher degrees take the eigenvalues of the balanced companion matrix and
/// polish each with Newton steps on the original polynomial. Imaginary parts
/// below `1e-9` are set to exactly zero.
pub fn poly_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let c = p.coeffs();
    let mut roots = match deg {
        0 => Vec::new(),
        1 => vec![Complex::new(-c[0] / c[1], T::zero())],
        2 => quadratic_roots(c[2], c[1], c[0]),
        _ => {
            let raw = companion_roots(p)?;
            raw.into_iter().map(|z| polish(p, z)).collect()
        }
    };
    let snap = T::lit(1e-9).max(T::lit(1e3) * T::epsilon());
    for z in &mut roots {
        if z.im.abs() < snap {
            z.im = T::zero();
        }
    }
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    });
    Ok(roots)
}

fn quadratic_roots<T: Real>(a: T, b: T, c: T) -> Vec<Complex<T>> {
    let two = T::lit(2.0);
    let disc = b * b - T::lit(4.0) * a * c;
    if disc >= T::zero() {
        let sq = disc.sqrt();
        let q = -(b + if b < T::zero() { -sq } else { sq }) / two;
        if q == T::zero() {
            // b == 0 and c == 0
            let z = Complex::new(T::zero(), T::zero());
            return vec![z, z];
        }
        vec![
            Complex::new(q / a, T::zero()),
            Complex::new(c / q, T::zero()),
        ]
    } else {
        let re = -b / (two * a);
        let im = (-disc).sqrt() / (two * a).abs();
        vec![Complex::new(re, -im), Complex::new(re, im)]
    }
}

fn polish<T: Real>(p: &Polynomial<T>, mut z: Complex<T>) -> Complex<T> {
    let dp = p.derivative();
    let mut fz = p.eval_complex(z).norm();
    for _ in 0..8 {
        let d = dp.eval_complex(z);
        if d.norm() == T::zero() {
            break;
        }
        let next = z - p.eval_complex(z) / d;
        let fnext = p.eval_complex(next).norm();
        if !(fnext < fz) {
            break;
        }
        z = next;
        fz = fnext;
    }
    z
}

fn companion_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    let monic = p.monic();
    let c = monic.coeffs();
    let n = c.len() - 1;
    // upper Hessenberg companion: first row holds -c_{n-1} .. -c_0
    let mut a = vec![vec![T::zero(); n]; n];
    for j in 0..n {
        a[0][j] = -c[n - 1 - j];
    }
    for i in 1..n {
        a[i][i - 1] = T::one();
    }
    balance(&mut a);
    hessenberg_qr(&mut a)
}

/// Diagonal similarity scaling by powers of two so row and column norms are
/// comparable.
fn balance<T: Real>(a: &mut [Vec<T>]) {
    let n = a.len();
    let radix = T::lit(2.0);
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let ginv = T::one() / f;
                for j in 0..n {
                    a[i][j] *= ginv;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

fn sign<T: Real>(a: T, b: T) -> T {
    if b >= T::zero() {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix by the implicit double-shift QR
/// iteration. The matrix is destroyed.
fn hessenberg_qr<T: Real>(a: &mut [Vec<T>]) -> Result<Vec<Complex<T>>> {
    let n = a.len();
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    let mut anorm = T::zero();
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    let half = T::lit(0.5);
    let mut t = T::zero();
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // find a negligible subdiagonal element
            let mut l = nu;
            while l >= 1 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = T::zero();
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                out[nu] = Complex::new(x + t, T::zero());
                nn -= 1;
                break;
            }
            let mut y = a[nu - 1][nu - 1];
            let mut w = a[nu][nu - 1] * a[nu - 1][nu];
            if l == nu - 1 {
                let p = half * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= T::zero() {
                    let z = p + sign(z, p);
                    out[nu - 1] = Complex::new(x + z, T::zero());
                    out[nu] = if z != T::zero() {
                        Complex::new(x - w / z, T::zero())
                    } else {
                        Complex::new(x + z, T::zero())
                    };
                } else {
                    out[nu - 1] = Complex::new(x + p, -z);
                    out[nu] = Complex::new(x + p, z);
                }
                nn -= 2;
                break;
            }
            if its == 60 {
                return Err(Error::NoConvergence { sweeps: its });
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                    row[i] -= x;
                }
                let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                x = T::lit(0.75) * s;
                y = x;
                w = T::lit(-0.4375) * s * s;
            }
            its += 1;

            let (mut p, mut q, mut r);
            let mut m = nu - 2;
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nu {
                a[i][i - 2] = T::zero();
                if i != m + 2 {
                    a[i][i - 3] = T::zero();
                }
            }
            let mut k = m;
            while k < nu {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = if k != nu - 1 {
                        a[k + 2][k - 1]
                    } else {
                        T::zero()
                    };
                    x = p.abs() + q.abs() + r.abs();
                    if x != T::zero() {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != T::zero() {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        let mut pp = a[k][j] + q * a[k + 1][j];
                        if k != nu - 1 {
                            pp += r * a[k + 2][j];
                            a[k + 2][j] -= pp * z;
                        }
                        a[k + 1][j] -= pp * y;
                        a[k][j] -= pp * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for row in a.iter_mut().take(mmin + 1).skip(l) {
                        let mut pp = x * row[k] + y * row[k + 1];
                        if k != nu - 1 {
                            pp += z * row[k + 2];
                            row[k + 2] -= pp * r;
                        }
                        row[k + 1] -= pp * q;
                        row[k] -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(out)
}

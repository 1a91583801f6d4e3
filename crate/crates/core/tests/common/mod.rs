//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Compensated running sum.
#[derive(Default, Clone, Copy)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// e^z K_ν(z) = ∫₀^∞ e^{−z(cosh t − 1)} cosh(νt) dt by the trapezoid rule.
pub fn k_scaled_oracle(nu: f64, z: f64) -> f64 {
    let h = 0.02;
    let mut acc = Kahan::default();
    acc.add(0.5);
    let mut i = 1;
    loop {
        let t = i as f64 * h;
        // cosh t − 1 = 2 sinh²(t/2) avoids cancellation for small t.
        let s = (0.5 * t).sinh();
        let arg = -2.0 * z * s * s;
        let term = (arg + nu * t).exp() * 0.5 * (1.0 + (-2.0 * nu * t).exp());
        acc.add(term);
        if term < 1e-22 * acc.value() && arg < -50.0 {
            break;
        }
        i += 1;
    }
    acc.value() * h
}

pub fn k_oracle(nu: f64, z: f64) -> f64 {
    k_scaled_oracle(nu, z) * (-z).exp()
}

/// Double-double number hi + lo.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, d: f64) -> Dd {
        let q = self.hi / d;
        let r = self.add(Dd::new(q).mul(Dd::new(-d)));
        let (hi, lo) = two_sum(q, r.hi / d);
        Dd { hi, lo }
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// J₁(z) = Σ (−1)^k (z/2)^{2k+1} / (k!(k+1)!) in double-double arithmetic.
pub fn j1_series_dd(z: f64) -> f64 {
    let half = Dd::new(z).div_f64(2.0);
    let q = half.mul(half).neg();
    let mut term = half;
    let mut sum = term;
    for k in 1..400 {
        term = term.mul(q).div_f64((k * (k + 1)) as f64);
        sum = sum.add(term);
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    sum.to_f64()
}

/// Γ(x) by the Stirling series at x + 20 and downward recurrence.
pub fn gamma_stirling(x: f64) -> f64 {
    let shift = 20;
    let y = x + shift as f64;
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    let ln = (y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series;
    let mut g = ln.exp();
    for k in 0..shift {
        g /= x + k as f64;
    }
    g
}

/// Direct ₂F₁ power series summed until terms fall below 1e-17 of the sum.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut acc = Kahan::default();
    acc.add(1.0);
    for n in 0..100_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        acc.add(term);
        if term.abs() < 1e-17 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

/// Midpoint sum of 4uv·f(u², v²) on [0, l]² with spacing h, which
/// integrates (τt')^{−1/2}·g(τ, t') over the quarter plane for g = f·√(τt').
pub fn quarter_plane_midpoint(g: impl Fn(f64, f64) -> f64, l: f64, n: usize) -> f64 {
    let h = l / n as f64;
    let mut acc = Kahan::default();
    for i in 0..n {
        let u = (i as f64 + 0.5) * h;
        let mut row = Kahan::default();
        for j in 0..n {
            let v = (j as f64 + 0.5) * h;
            row.add(4.0 * g(u * u, v * v));
        }
        acc.add(row.value());
    }
    acc.value() * h * h
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                let (mut q0, mut q1) = (1.0, z);
                for k in 2..=n {
                    let k = k as f64;
                    let q2 = ((2.0 * k - 1.0) * z * q1 - (k - 1.0) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                let dq = n as f64 * (z * q1 - q0) / (z * z - 1.0);
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dq * dq);
                break;
            }
        }
    }
    (x, w)
}

/// Fixed-order Gauss–Legendre on [a, b].
pub fn gl_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let mut acc = Kahan::default();
    for (x, w) in rule.0.iter().zip(&rule.1) {
        acc.add(w * f(c + h * x));
    }
    acc.value() * h
}

/// Limit of an alternating sequence of partial sums by repeated averaging.
pub fn euler_average(mut s: Vec<f64>, levels: usize) -> f64 {
    for _ in 0..levels {
        s = s.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    *s.last().expect("enough partial sums")
}

/// Kernel of √(p² + m²) at distance r from its radial Fourier representation:
///
/// E(r) = −1/(π²r⁴) + m²/(4π²r²) − (m⁴/(4π²r)) ∫₀^∞ sin(pr) / (√(p²+m²) + p)² dp.
pub fn field_free_fourier_oracle(m: f64, r: f64) -> f64 {
    let rule = gauss_legendre(40);
    let f = |p: f64| {
        let d = (p * p + m * m).sqrt() + p;
        (p * r).sin() / (d * d)
    };
    let half = PI / r;
    // The non-oscillatory head carries most of the mass; split it finely.
    let head_panels = 64;
    let mut sum = 0.0;
    for i in 0..head_panels {
        let a = half * i as f64 / head_panels as f64;
        let b = half * (i + 1) as f64 / head_panels as f64;
        sum += gl_panel(&f, a, b, &rule);
    }
    let mut partial = vec![sum];
    for n in 1..4000 {
        sum += gl_panel(&f, n as f64 * half, (n + 1) as f64 * half, &rule);
        partial.push(sum);
    }
    let tail = euler_average(partial[partial.len() - 40..].to_vec(), 30);
    let pi2 = PI * PI;
    -1.0 / (pi2 * r.powi(4)) + m * m / (4.0 * pi2 * r * r) - m.powi(4) / (4.0 * pi2 * r) * tail
}

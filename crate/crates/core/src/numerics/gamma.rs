//! Gamma function, Pochhammer symbols and signed-log coefficient arithmetic.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// Γ(x) for real x, with reflection below 1/2. Poles return ±∞.
pub fn gamma(x: f64) -> f64 {
    if x == x.floor() && x <= 0.0 {
        return f64::INFINITY;
    }
    if x == x.floor() && x <= 23.0 {
        return factorial(x as usize - 1);
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(y + 0.5) * (-t).exp() * lanczos_sum(y)
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x == x.floor() && x <= 0.0 {
        return f64::INFINITY;
    }
    if x == x.floor() && x <= 23.0 {
        return factorial(x as usize - 1).ln();
    }
    if x < 0.5 {
        return (PI / (PI * x).sin().abs()).ln() - ln_gamma(1.0 - x);
    }
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (y + 0.5) * t.ln() - t + lanczos_sum(y).ln()
}

/// n! as a float; exact through 22!.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64).round()
}

/// Rising factorial (a)_k = a(a+1)...(a+k-1).
pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// Falling factorial a(a-1)...(a-k+1) = Γ(a+1)/Γ(a-k+1).
///
/// Computed as a product, so a nonnegative integer `a` with `k > a`
/// gives an exact zero.
pub fn falling_gamma_ratio(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a - j as f64))
}

/// A real number stored as sign and natural log of its magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    pub log_magnitude: f64,
    pub sign: i8,
}

impl SignedLogValue {
    pub const ZERO: Self = Self { log_magnitude: f64::NEG_INFINITY, sign: 0 };
    pub const ONE: Self = Self { log_magnitude: 0.0, sign: 1 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self { log_magnitude: x.abs().ln(), sign: if x > 0.0 { 1 } else { -1 } }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self { log_magnitude: self.log_magnitude + other.log_magnitude, sign: self.sign * other.sign }
    }

    pub fn mul_f64(self, x: f64) -> Self {
        self.mul(Self::from_f64(x))
    }

    pub fn div(self, other: Self) -> Self {
        assert!(!other.is_zero(), "division by a zero SignedLogValue");
        if self.is_zero() {
            return Self::ZERO;
        }
        Self { log_magnitude: self.log_magnitude - other.log_magnitude, sign: self.sign * other.sign }
    }

    /// Multiplies by x^p for x > 0.
    pub fn mul_pow(self, x: f64, p: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        Self { log_magnitude: self.log_magnitude + p * x.ln(), sign: self.sign }
    }

    pub fn negate(self) -> Self {
        Self { log_magnitude: self.log_magnitude, sign: -self.sign }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * self.log_magnitude.exp(),
        }
    }

    pub fn falling(a: f64, k: usize) -> Self {
        (0..k).fold(Self::ONE, |acc, j| acc.mul_f64(a - j as f64))
    }
}

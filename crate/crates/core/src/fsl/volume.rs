//! The regular ideal octahedron volume v₈ = 8·Λ(π/4).

use rug::float::Constant;
use rug::{Float, Integer, Rational};

/// Bernoulli numbers B_0..=B_n from the standard recurrence.
fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::from(1)];
    for m in 1..=n {
        let mut s = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            let c = Integer::from(m + 1).binomial(j as u32);
            s += Rational::from(c * bj.clone());
        }
        b.push(-s / Rational::from(m + 1));
    }
    b
}

/// Clausen function Cl₂(θ) for 0 < θ < 2π via its Bernoulli series.
pub fn clausen2(theta: &Float) -> Float {
    let prec = theta.prec();
    let one = Float::with_val(prec, 1);
    let mut sum = Float::with_val(prec, theta * (one - theta.clone().ln()));
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 4));
    let t2 = Float::with_val(prec, theta * theta);
    let mut power = theta.clone();
    let mut fact = Float::with_val(prec, 1);
    let mut nb = 64;
    let mut bern = bernoulli(nb);
    for k in 1.. {
        if 2 * k > nb {
            nb *= 2;
            bern = bernoulli(nb);
        }
        power *= &t2;
        fact *= (2 * k - 1) as u32;
        fact *= (2 * k) as u32;
        let b = Float::with_val(prec, bern[2 * k].clone().abs());
        let denom = Float::with_val(prec, &fact * ((2 * k) * (2 * k + 1)) as u32);
        let term = Float::with_val(prec, &b * &power) / denom;
        sum += &term;
        if term.clone().abs() < eps {
            break;
        }
    }
    sum
}

/// Lobachevsky function Λ(θ) = Cl₂(2θ)/2.
pub fn lobachevsky(theta: &Float) -> Float {
    clausen2(&Float::with_val(theta.prec(), theta * 2u32)) / 2u32
}

/// v₈ at the given mantissa precision.
pub fn v8(prec: u32) -> Float {
    let quarter_pi = Float::with_val(prec + 16, Constant::Pi) / 4u32;
    Float::with_val(prec, lobachevsky(&quarter_pi) * 8u32)
}

pub fn v8_f64() -> f64 {
    v8(128).to_f64()
}

/// Decimal expansion of v₈ with `digits` digits after the point.
pub fn v8_string(digits: usize) -> String {
    let prec = (digits as f64 * 3.33) as u32 + 32;
    let s = format!("{:.*}", digits + 4, v8(prec));
    // keep exactly `digits` decimals, truncating the guard digits
    let dot = s.find('.').unwrap();
    s[..dot + 1 + digits].to_string()
}

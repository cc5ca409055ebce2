//! Quantum factorials, theta and tetrahedral evaluations, 6j symbols and the
//! braiding coefficients built from them, at a fixed MPFR precision.
//!
//! Everything except the twist eigenvalues is real for A on the unit circle.

use std::collections::HashMap;
use std::sync::Mutex;

use rug::float::Constant;
use rug::{Complex, Float};

use super::{admissible, Level};

pub(crate) struct Recoupling {
    pub level: Level,
    pub prec: u32,
    qfact: Vec<Float>,
    /// A^k for k in 0..2r.
    apow: Vec<Complex>,
    sixj: Mutex<HashMap<[u32; 6], Float>>,
    braid: Mutex<HashMap<[u32; 7], Complex>>,
}

fn neg_if(x: Float, odd: bool) -> Float {
    if odd {
        -x
    } else {
        x
    }
}

impl Recoupling {
    pub fn new(level: Level, prec: u32) -> Self {
        let r = level.r();
        let pi = Float::with_val(prec, Constant::Pi);
        let step = Float::with_val(prec, &pi * 2u32) / r;
        let s1 = Float::with_val(prec, step.sin_ref());
        let mut qfact = vec![Float::with_val(prec, 1)];
        for n in 1..=(2 * r + 2) {
            let x = Float::with_val(prec, &step * n).sin() / &s1;
            let prev = qfact.last().unwrap();
            qfact.push(Float::with_val(prec, prev * &x));
        }
        let apow = (0..2 * r)
            .map(|k| {
                let t = Float::with_val(prec, &pi * k) / r;
                Complex::with_val(prec, (Float::with_val(prec, t.cos_ref()), t.sin()))
            })
            .collect();
        Recoupling { level, prec, qfact, apow, sixj: Mutex::new(HashMap::new()), braid: Mutex::new(HashMap::new()) }
    }

    fn fact(&self, n: u32) -> &Float {
        &self.qfact[n as usize]
    }

    pub fn qint(&self, n: u32) -> Float {
        if n == 0 {
            return Float::new(self.prec);
        }
        Float::with_val(self.prec, self.fact(n) / self.fact(n - 1))
    }

    /// Δ_n = (−1)^n [n+1].
    pub fn delta(&self, n: u32) -> Float {
        neg_if(self.qint(n + 1), n % 2 == 1)
    }

    /// A^k for any integer k.
    pub fn a_pow(&self, k: i64) -> &Complex {
        let m = 2 * self.level.r() as i64;
        &self.apow[k.rem_euclid(m) as usize]
    }

    pub fn theta(&self, a: u32, b: u32, c: u32) -> Float {
        let (m, n, p) = ((a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2);
        let mut x = Float::with_val(self.prec, self.fact(m + n + p + 1) * self.fact(m));
        x *= self.fact(n);
        x *= self.fact(p);
        x /= self.fact(m + n);
        x /= self.fact(n + p);
        x /= self.fact(m + p);
        neg_if(x, (m + n + p) % 2 == 1)
    }

    /// Tet[A B E; C D F].
    pub fn tet(&self, a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> Float {
        let ai = [(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2];
        let bj = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
        let lo = *ai.iter().max().unwrap();
        let hi = *bj.iter().min().unwrap();
        let mut pre = Float::with_val(self.prec, 1);
        for &bb in &bj {
            for &aa in &ai {
                pre *= self.fact(bb - aa);
            }
        }
        for x in [a, b, c, d, e, f] {
            pre /= self.fact(x);
        }
        let mut sum = Float::new(self.prec);
        for s in lo..=hi {
            let mut t = self.fact(s + 1).clone();
            for &aa in &ai {
                t /= self.fact(s - aa);
            }
            for &bb in &bj {
                t /= self.fact(bb - s);
            }
            sum += neg_if(t, s % 2 == 1);
        }
        pre * sum
    }

    /// {a b i; c d j}: coefficient of the right comb (b,c→i; a,i→d) in the
    /// left comb (a,b→j; j,c→d).
    pub fn sixj(&self, a: u32, b: u32, i: u32, c: u32, d: u32, j: u32) -> Float {
        let key = [a, b, i, c, d, j];
        if let Some(v) = self.sixj.lock().unwrap().get(&key) {
            return v.clone();
        }
        let l = self.level;
        let v = if admissible(a, b, j, l) && admissible(j, c, d, l) && admissible(b, c, i, l) && admissible(a, i, d, l)
        {
            let den = Float::with_val(self.prec, self.theta(a, d, i) * self.theta(b, c, i));
            assert!(!den.is_zero(), "theta vanishes on an admissible triple");
            self.tet(a, b, i, c, d, j) * self.delta(i) / den
        } else {
            Float::new(self.prec)
        };
        self.sixj.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Eigenvalue of σ^{sign} on the channel c of strands colored a, b.
    pub fn twist(&self, a: u32, b: u32, c: u32, sign: i32) -> Complex {
        let e = (c * (c + 2)) as i64 - (a * (a + 2)) as i64 - (b * (b + 2)) as i64;
        let z = self.a_pow(sign as i64 * e / 2).clone();
        if ((a + b - c) / 2) % 2 == 1 {
            -z
        } else {
            z
        }
    }

    /// Entry of σ^{sign} on the internal edge between `a` and `d` when the two
    /// punctures colored b, c swap: old label x, new label j.
    pub fn braid_coef(&self, a: u32, b: u32, c: u32, d: u32, x: u32, j: u32, sign: i32) -> Complex {
        let key = [a, b, c, d, x, j, (sign + 1) as u32];
        if let Some(v) = self.braid.lock().unwrap().get(&key) {
            return v.clone();
        }
        let l = self.level;
        let mut acc = Complex::new(self.prec);
        for y in l.colors() {
            if !admissible(b, c, y, l) || !admissible(a, y, d, l) {
                continue;
            }
            let f = Float::with_val(self.prec, self.sixj(a, b, y, c, d, x) * self.sixj(b, c, j, a, d, y));
            acc += Complex::with_val(self.prec, &self.twist(b, c, y, sign) * &f);
        }
        self.braid.lock().unwrap().insert(key, acc.clone());
        acc
    }
}

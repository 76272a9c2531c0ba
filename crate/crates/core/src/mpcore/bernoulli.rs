use rug::ops::Pow;
use rug::Complete;
use std::sync::{OnceLock, RwLock};

use rug::{Integer, Rational};

use super::{BigReal, PrecisionContext};

static EVEN_BERNOULLI: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();

/// The Bernoulli number B_n as an exact rational (B_1 = −1/2).
pub fn bernoulli(n: usize) -> Rational {
    match n {
        0 => Rational::from(1),
        1 => Rational::from((-1, 2)),
        _ if n % 2 == 1 => Rational::new(),
        _ => even_bernoulli(n / 2),
    }
}

/// B_{2k}, k ≥ 1, from a cache grown in blocks.
fn even_bernoulli(k: usize) -> Rational {
    let cache = EVEN_BERNOULLI.get_or_init(|| RwLock::new(Vec::new()));
    {
        let table = cache.read().expect("bernoulli cache poisoned");
        if k <= table.len() {
            return table[k - 1].clone();
        }
    }
    let mut table = cache.write().expect("bernoulli cache poisoned");
    if k > table.len() {
        let want = (k + 32).max(2 * table.len());
        *table = tangent_bernoulli(want);
    }
    table[k - 1].clone()
}

/// B_2, B_4, …, B_{2n} via tangent numbers, using only integer arithmetic:
/// B_{2k} = (−1)^{k−1} 2k T_k / (4^k (4^k − 1)).
fn tangent_bernoulli(n: usize) -> Vec<Rational> {
    let mut t: Vec<Integer> = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let next = Integer::from(&t[j - 1] * (j - k) as u64) + Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = next;
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = Integer::from(1) << (2 * k as u32);
            let den = Integer::from(&four_k - 1u32) * &four_k;
            let num = Integer::from(&t[k] * (2 * k as u64));
            let mut b = Rational::from((num, den));
            if k % 2 == 0 {
                b = -b;
            }
            b
        })
        .collect()
}

/// ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!).
pub fn zeta_even(k: u32, ctx: &PrecisionContext) -> BigReal {
    assert!(k >= 1, "zeta_even needs k ≥ 1");
    let b = bernoulli(2 * k as usize).abs();
    let two_pi = ctx.raised(5).pi() * 2u32;
    let fact = Integer::factorial(2 * k).complete();
    let v = two_pi.pow(2 * k) * b / (fact * 2u32);
    ctx.real(v)
}

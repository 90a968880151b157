//! Weak compositions, binomials and multinomial coefficients.

use num_bigint::BigUint;
use num_traits::One;

/// `C(n, k)` for the small arguments that appear in exponents.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Number of weak compositions of `n` into `parts` parts.
pub fn weak_composition_count(n: usize, parts: usize) -> u64 {
    match parts {
        0 => u64::from(n == 0),
        _ => binomial(n + parts - 1, parts - 1),
    }
}

/// Factorials `0!..=max!` for repeated multinomial evaluation.
#[derive(Clone, Debug)]
pub struct Factorials {
    table: Vec<BigUint>,
}

impl Factorials {
    pub fn up_to(max: usize) -> Self {
        let mut table = vec![BigUint::one()];
        for i in 1..=max {
            let next = table[i - 1].clone() * BigUint::from(i);
            table.push(next);
        }
        Factorials { table }
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.table[n]
    }

    /// `(Σ parts)! / Π parts_i!`.
    pub fn multinomial(&self, parts: &[usize]) -> BigUint {
        let n: usize = parts.iter().sum();
        parts
            .iter()
            .fold(self.table[n].clone(), |acc, &a| acc / &self.table[a])
    }
}

/// All `(a_0, .., a_{parts-1})` with nonnegative entries summing to `n`.
#[derive(Clone, Debug)]
pub struct WeakCompositions {
    current: Option<Vec<usize>>,
    n: usize,
}

impl WeakCompositions {
    pub fn new(n: usize, parts: usize) -> Self {
        let current = match parts {
            0 if n > 0 => None,
            0 => Some(Vec::new()),
            _ => {
                let mut first = vec![0; parts];
                first[0] = n;
                Some(first)
            }
        };
        WeakCompositions { current, n }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let parts = out.len();
        if parts > 0 && out[parts - 1] != self.n {
            let mut next = out.clone();
            // move one unit from the first nonzero part to its right neighbour,
            // dumping the remainder back into part 0
            let i = next.iter().position(|&a| a > 0).expect("sum is n > 0");
            let v = next[i];
            next[i] = 0;
            next[0] = v - 1;
            next[i + 1] += 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

//! Probability primitives shared by all runtime estimators.
//!
//! Everything here is about one question: where is the first goal? Goals are
//! seeded independently per level, so the position of the first goal within a
//! level is truncated-geometric, and the first goal *level* follows from the
//! per-level survival probabilities.

use crate::error::{Error, Result};

/// Per-level goal probability vector `[p_0, ..., p_D]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GoalProbabilities {
    probs: Vec<f64>,
}

impl GoalProbabilities {
    /// Raw storage constructor: entries must be probabilities, the vector must
    /// be non-empty. An all-zero vector is accepted here (plumbing contexts
    /// need it); analysis entry points reject it via [`Self::require_goal_level`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Invalid("goal probability vector is empty".into()));
        }
        for (k, &p) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(Error::Domain(format!("p_{k} = {p} is not a probability")));
            }
        }
        Ok(Self { probs })
    }

    /// Single nonzero level: `p_g` at level `g`, zero elsewhere.
    pub fn single_level(depth: u32, g: u32, p_g: f64) -> Result<Self> {
        if g > depth {
            return Err(Error::Domain(format!("goal level {g} exceeds depth {depth}")));
        }
        let mut probs = vec![0.0; depth as usize + 1];
        probs[g as usize] = p_g;
        let gp = Self::new(probs)?;
        gp.require_goal_level()?;
        Ok(gp)
    }

    /// Depth `D`; the vector has `D + 1` entries.
    pub fn depth(&self) -> u32 {
        (self.probs.len() - 1) as u32
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, level: u32) -> f64 {
        self.probs[level as usize]
    }

    /// Survival probability `q_k = 1 - p_k`.
    pub fn survival(&self, level: u32) -> f64 {
        1.0 - self.probs[level as usize]
    }

    /// Errors unless at least one entry is positive.
    pub fn require_goal_level(&self) -> Result<()> {
        if self.probs.iter().any(|&p| p > 0.0) {
            Ok(())
        } else {
            Err(Error::NoGoalLevel)
        }
    }
}

/// Node count per level, `sizes[k]` for `0 <= k <= D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSizes {
    sizes: Vec<u64>,
}

impl LevelSizes {
    pub fn new(sizes: Vec<u64>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Invalid("level size vector is empty".into()));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn size(&self, level: u32) -> u64 {
        self.sizes[level as usize]
    }

    pub fn depth(&self) -> u32 {
        (self.sizes.len() - 1) as u32
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }

    /// Number of nodes strictly above `level`.
    pub fn above(&self, level: u32) -> u64 {
        self.sizes[..level as usize].iter().sum()
    }
}

/// `(1 - p)^n`, computed in log space so it stays stable for n up to 2^20.
pub fn survival_pow(p: f64, n: f64) -> f64 {
    if p >= 1.0 {
        if n == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (n * (-p).ln_1p()).exp()
    }
}

/// Expectation of a geometric variable truncated at `m`: the expected position
/// of the first goal among `m` iid candidates, given at least one goal.
///
/// tc(p, m) = (1 - (1-p)^m (pm + 1)) / (p (1 - (1-p)^m))
///
/// The formula is 0/0 at p = 1; the limit is 1. For p*m below 1e-6 the direct
/// formula cancels catastrophically, so a series around the uniform limit
/// (m+1)/2 is used there.
pub fn tc(p: f64, m: u64) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain(format!("tc: m = {m} must be >= 1")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain(format!("tc: p = {p} must be in (0, 1]")));
    }
    if p >= 1.0 {
        return Ok(1.0);
    }
    let mf = m as f64;
    let u = p * mf;
    if u < 1e-6 {
        return Ok((mf + 1.0) / 2.0 * (1.0 - (mf - 1.0) * p / 6.0));
    }
    // a = 1 - (1-p)^m without cancellation
    let a = -(mf * (-p).ln_1p()).exp_m1();
    Ok((a - u * (1.0 - a)) / (p * a))
}

/// Rate of the exponential distribution matching Geo(p) at integers:
/// `-ln(1 - p)`. Zero for p = 0.
pub fn exp_rate(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::Domain(format!("exp_rate: p = {p} must be in [0, 1)")));
    }
    Ok(-(-p).ln_1p())
}

/// Probability that a level with `n_k` nodes, each a goal with probability
/// `p_k`, contains at least one goal: `1 - (1 - p_k)^{n_k}`.
pub fn level_goal_prob(p_k: f64, n_k: u64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_k) || p_k.is_nan() {
        return Err(Error::Domain(format!("level_goal_prob: p = {p_k}")));
    }
    if n_k == 0 || p_k == 0.0 {
        return Ok(0.0);
    }
    if p_k >= 1.0 {
        return Ok(1.0);
    }
    Ok(-((n_k as f64) * (-p_k).ln_1p()).exp_m1())
}

/// Probability that the first goal sits on level k, for `k = 0..=D`, with the
/// trailing entry `[D + 1]` the probability that no goal exists at all.
pub fn first_goal_level_probs(p: &GoalProbabilities, sizes: &LevelSizes) -> Result<Vec<f64>> {
    if p.depth() != sizes.depth() {
        return Err(Error::Invalid(format!(
            "depth mismatch: probs D = {}, sizes D = {}",
            p.depth(),
            sizes.depth()
        )));
    }
    let d = p.depth() as usize;
    let mut out = Vec::with_capacity(d + 2);
    let mut survive = 1.0;
    for k in 0..=d {
        let gk = level_goal_prob(p.probs()[k], sizes.sizes()[k])?;
        out.push(survive * gk);
        survive *= 1.0 - gk;
    }
    out.push(survive);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: direct summation of the truncated geometric pmf.
    fn tc_brute(p: f64, m: u64) -> f64 {
        let q = 1.0 - p;
        let mut num = 0.0;
        let mut qpow = 1.0;
        for k in 1..=m {
            num += k as f64 * qpow * p;
            qpow *= q;
        }
        num / (1.0 - q.powi(m as i32))
    }

    #[test]
    fn tc_certain_goal() {
        assert_eq!(tc(1.0, 10).unwrap(), 1.0);
    }

    #[test]
    fn tc_matches_brute_force() {
        // Frozen from the brute-force oracle.
        assert_relative_eq!(tc(0.01, 256).unwrap(), 78.84924455880483, max_relative = 1e-12);
        for &p in &[0.9, 0.5, 0.1, 0.01] {
            for m in 1..=512 {
                assert_relative_eq!(tc(p, m).unwrap(), tc_brute(p, m), max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn tc_uniform_limit() {
        // p << 1/m: expectation approaches m/2.
        let v = tc(1e-6, 100).unwrap();
        assert_relative_eq!(v, 50.49916674958351, max_relative = 1e-9);
        assert!((v - 50.0).abs() / 50.0 < 0.01);
    }

    #[test]
    fn tc_geometric_limit() {
        // p >> 1/m: |tc - 1/p| <= 1.
        for &(p, m) in &[(0.1, 200u64), (0.5, 40), (0.9, 25), (0.04, 500)] {
            assert!(p * m as f64 >= 20.0);
            assert!((tc(p, m).unwrap() - 1.0 / p).abs() <= 1.0);
        }
    }

    #[test]
    fn tc_monotonicity() {
        for &p in &[0.001, 0.01, 0.3, 0.8] {
            let mut prev = 0.0;
            for m in 1..=200 {
                let v = tc(p, m).unwrap();
                assert!(v >= prev - 1e-12, "tc not non-decreasing in m at p={p}, m={m}");
                assert!(v >= 1.0 - 1e-12 && v <= m as f64 + 1e-9);
                prev = v;
            }
        }
        for m in [1u64, 7, 64, 511] {
            let mut prev = f64::INFINITY;
            for i in 1..100 {
                let p = i as f64 / 100.0;
                let v = tc(p, m).unwrap();
                assert!(v <= prev + 1e-12, "tc not non-increasing in p at p={p}, m={m}");
                prev = v;
            }
        }
    }

    #[test]
    fn tc_domain_errors() {
        assert!(tc(0.0, 10).is_err());
        assert!(tc(-0.1, 10).is_err());
        assert!(tc(1.1, 10).is_err());
        assert!(tc(0.5, 0).is_err());
    }

    #[test]
    fn exp_rate_values() {
        assert_eq!(exp_rate(0.0).unwrap(), 0.0);
        assert_relative_eq!(exp_rate(0.5).unwrap(), std::f64::consts::LN_2, max_relative = 1e-12);
        assert!(exp_rate(1.0).is_err());
    }

    #[test]
    fn exp_rate_cdf_identity() {
        // 1 - exp(-k * rate) == 1 - (1-p)^k at integer k.
        for &p in &[0.001, 0.1, 0.5, 0.93] {
            let rate = exp_rate(p).unwrap();
            for k in 1..=30u32 {
                let cdf_exp = -(-(k as f64) * rate).exp_m1();
                let cdf_geo = 1.0 - (1.0 - p).powi(k as i32);
                assert!((cdf_exp - cdf_geo).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn exp_rate_expectation_gap() {
        // 0 <= 1/p - 1/rate <= 1.
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let gap = 1.0 / p - 1.0 / exp_rate(p).unwrap();
            assert!((0.0..=1.0).contains(&gap), "gap {gap} at p={p}");
        }
    }

    #[test]
    fn level_goal_prob_values() {
        assert_eq!(level_goal_prob(0.0, 1024).unwrap(), 0.0);
        assert_eq!(level_goal_prob(1.0, 1).unwrap(), 1.0);
        assert_eq!(level_goal_prob(0.3, 0).unwrap(), 0.0);
        // 1 - 0.99^256 by repeated multiplication.
        let mut q = 1.0f64;
        for _ in 0..256 {
            q *= 0.99;
        }
        assert_relative_eq!(level_goal_prob(0.01, 256).unwrap(), 1.0 - q, max_relative = 1e-12);
        assert_relative_eq!(level_goal_prob(0.01, 256).unwrap(), 0.92370, max_relative = 1e-4);
    }

    fn pow2_sizes(d: u32) -> LevelSizes {
        LevelSizes::new((0..=d).map(|k| 1u64 << k).collect()).unwrap()
    }

    #[test]
    fn first_goal_root_certain() {
        let mut probs = vec![0.0; 6];
        probs[0] = 1.0;
        let p = GoalProbabilities::new(probs).unwrap();
        let f = first_goal_level_probs(&p, &pow2_sizes(5)).unwrap();
        assert_eq!(f[0], 1.0);
        assert!(f[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn first_goal_all_zero() {
        let p = GoalProbabilities::new(vec![0.0; 6]).unwrap();
        let f = first_goal_level_probs(&p, &pow2_sizes(5)).unwrap();
        assert_eq!(f[6], 1.0);
        assert!(f[..6].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn first_goal_single_level() {
        let p = GoalProbabilities::single_level(14, 8, 0.01).unwrap();
        let f = first_goal_level_probs(&p, &pow2_sizes(14)).unwrap();
        assert_relative_eq!(f[8], 0.92370, max_relative = 1e-4);
        assert_relative_eq!(f[15], 0.07630, max_relative = 1e-3);
        for (k, &v) in f.iter().enumerate() {
            if k != 8 && k != 15 {
                assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn first_goal_sums_to_one() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = rng.gen_range(0..12u32);
            let probs: Vec<f64> = (0..=d).map(|_| rng.gen_range(0.0..1.0)).collect();
            let sizes = LevelSizes::new((0..=d).map(|k| 1u64 << k.min(20)).collect()).unwrap();
            let p = GoalProbabilities::new(probs).unwrap();
            let f = first_goal_level_probs(&p, &sizes).unwrap();
            let total: f64 = f.iter().sum();
            assert!((total - 1.0).abs() < 1e-9);
            assert!(f.iter().all(|&x| (0.0..=1.0 + 1e-12).contains(&x)));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// tc(p, m) is a truncated-geometric mean: it lies in
            /// [1, (m + 1) / 2] and decreases as p grows.
            #[test]
            fn tc_bounds_and_monotonicity(
                p in 1e-12f64..=1.0,
                q in 0.0f64..=1.0,
                m in 1u64..=1_000_000,
            ) {
                let t = tc(p, m).unwrap();
                prop_assert!(t >= 1.0 - 1e-12);
                prop_assert!(t <= (m as f64 + 1.0) / 2.0 + 1e-9 * m as f64);
                let hi = p + q * (1.0 - p);
                if hi > p {
                    let t_hi = tc(hi, m).unwrap();
                    prop_assert!(t_hi <= t + 1e-9 * t);
                }
            }

            /// Splitting a level's mass over goal levels never loses
            /// probability: the first-goal distribution stays normalized.
            #[test]
            fn first_goal_normalized(
                depth in 0u32..=12,
                seed in any::<u64>(),
            ) {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let probs: Vec<f64> =
                    (0..=depth).map(|_| rng.gen_range(0.0..1.0)).collect();
                let sizes = LevelSizes::new(
                    (0..=depth).map(|k| 1u64 << k.min(20)).collect(),
                )
                .unwrap();
                let p = GoalProbabilities::new(probs).unwrap();
                let f = first_goal_level_probs(&p, &sizes).unwrap();
                let total: f64 = f.iter().sum();
                prop_assert!((total - 1.0).abs() < 1e-9);
            }
        }
    }
}

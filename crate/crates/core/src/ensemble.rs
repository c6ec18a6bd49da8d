//! Measurement of the total spin magnetizations over n molecules as binomial
//! statistics: analytic means and variances, decoding error probabilities in
//! the log domain, an exact binomial-tail oracle, and a seeded Monte Carlo
//! sampler.
//!
//! All probabilities are carried as log₁₀ values: at realistic molecule
//! counts (n ~ 10¹⁸) the error probability underflows any floating-point
//! format by millions of orders of magnitude.

use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Normal};

use crate::error::{Error, Result};
use crate::protocol::Message;

/// Largest n for which the exact binomial tail is summed term by term.
pub const EXACT_MAX_N: u64 = 1_000_000;

/// Above this molecule count the sampler switches from exact binomial draws
/// to a parity-preserving Gaussian approximation.
pub const EXACT_SAMPLER_MAX_N: u64 = 1_000_000;

/// Shots per derived RNG stream; each batch seeds its own stream from
/// (seed, batch index) so the output is independent of how batches are
/// scheduled.
const SHOTS_PER_BATCH: u64 = 1024;

/// Analytic statistics of the two total-magnetization observables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleStats {
    pub n: u64,
    /// Mean of Σ Z_I: (−1)ᶻ n ε_I.
    pub mu_i: f64,
    /// Mean of Σ Z_S: (−1)ˣ n ε_S.
    pub mu_s: f64,
    /// Variance n(1 − ε_I²).
    pub sigma2_i: f64,
    /// Variance n(1 − ε_S²).
    pub sigma2_s: f64,
    /// σ/|μ|; `None` when μ = 0.
    pub rel_width_i: Option<f64>,
    pub rel_width_s: Option<f64>,
}

/// A probability carried in log₁₀ form, tagged by whether it came from the
/// exact tail sum or from the Gaussian closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogProbability {
    /// log₁₀ of the probability, clamped to ≤ 0.
    pub log10_p: f64,
    pub exact: bool,
}

impl LogProbability {
    fn exact(log10_p: f64) -> Self {
        Self {
            log10_p: log10_p.min(0.0),
            exact: true,
        }
    }

    fn approximate(log10_p: f64) -> Self {
        Self {
            log10_p: log10_p.min(0.0),
            exact: false,
        }
    }
}

fn check_eps(name: &'static str, eps: f64, min: f64, max: f64) -> Result<()> {
    if !eps.is_finite() || eps < min || eps > max {
        return Err(Error::OutOfRange {
            name,
            value: eps,
            min,
            max,
        });
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            value: 0.0,
            min: 1.0,
            max: f64::MAX,
        });
    }
    Ok(())
}

/// Means, variances, and relative widths of the ensemble magnetizations.
pub fn ensemble_stats(n: u64, eps_i: f64, eps_s: f64, m: Message) -> Result<EnsembleStats> {
    check_n(n)?;
    check_eps("eps_i", eps_i, -1.0, 1.0)?;
    check_eps("eps_s", eps_s, -1.0, 1.0)?;

    let nf = n as f64;
    let mu_i = m.sign_z() * nf * eps_i;
    let mu_s = m.sign_x() * nf * eps_s;
    let sigma2_i = nf * (1.0 - eps_i * eps_i);
    let sigma2_s = nf * (1.0 - eps_s * eps_s);
    let rel = |sigma2: f64, mu: f64| {
        if mu == 0.0 {
            None
        } else {
            Some(sigma2.sqrt() / mu.abs())
        }
    };

    Ok(EnsembleStats {
        n,
        mu_i,
        mu_s,
        sigma2_i,
        sigma2_s,
        rel_width_i: rel(sigma2_i, mu_i),
        rel_width_s: rel(sigma2_s, mu_s),
    })
}

/// ln n! with exact accumulation for small n and a Stirling series beyond.
fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n < 256 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    let ln_two_pi = (2.0 * std::f64::consts::PI).ln();
    (x + 0.5) * x.ln() - x + 0.5 * ln_two_pi + 1.0 / (12.0 * x) - 1.0 / (360.0 * x.powi(3))
        + 1.0 / (1260.0 * x.powi(5))
}

/// ln C(n, k) + k ln p + (n−k) ln q, the log of one binomial pmf term.
fn ln_binomial_term(n: u64, k: u64, ln_p: f64, ln_q: f64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
        + (k as f64) * ln_p
        + ((n - k) as f64) * ln_q
}

/// Streaming log-sum-exp accumulator.
struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    fn push(&mut self, ln_term: f64) {
        if ln_term == f64::NEG_INFINITY {
            return;
        }
        if ln_term > self.max {
            self.sum = self.sum * (self.max - ln_term).exp() + 1.0;
            self.max = ln_term;
        } else {
            self.sum += (ln_term - self.max).exp();
        }
    }

    fn ln_value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

const LN_10: f64 = std::f64::consts::LN_10;

/// Decoding error probability from the Gaussian tail closed form
/// P_e ≈ e^{−nε²/2} / (√(2πn) ε), evaluated entirely in the log domain.
///
/// The closed form exceeds one as nε² → 0, where the tail expansion stops
/// being a probability; the returned value is clamped at log₁₀ = 0 and is
/// always tagged approximate.
pub fn error_prob_gaussian(n: u64, eps: f64) -> Result<LogProbability> {
    check_n(n)?;
    if !eps.is_finite() || eps <= 0.0 || eps >= 1.0 {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            min: 0.0,
            max: 1.0,
        });
    }
    let nf = n as f64;
    let log10 =
        -(nf * eps * eps / 2.0) / LN_10 - ((2.0 * std::f64::consts::PI * nf).sqrt() * eps).log10();
    Ok(LogProbability::approximate(log10))
}

/// Exact decoding error probability P(Σ Zᵢ < 0 | z = 0): the binomial lower
/// tail P(X ≤ ⌈n/2⌉ − 1) with X ~ Binomial(n, (1+ε)/2), summed in the log
/// domain.
pub fn error_prob_exact(n: u64, eps: f64) -> Result<LogProbability> {
    check_n(n)?;
    if n > EXACT_MAX_N {
        return Err(Error::TooLarge {
            name: "n",
            value: n,
            max: EXACT_MAX_N,
        });
    }
    check_eps("eps", eps, -1.0, 1.0)?;
    if eps.abs() >= 1.0 {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            min: -1.0,
            max: 1.0,
        });
    }

    let p = (1.0 + eps) / 2.0;
    let (ln_p, ln_q) = (p.ln(), (1.0 - p).ln());
    let k_max = n.div_ceil(2) - 1;

    let mut acc = LogSum::new();
    for k in 0..=k_max {
        acc.push(ln_binomial_term(n, k, ln_p, ln_q));
    }
    Ok(LogProbability::exact(acc.ln_value() / LN_10))
}

/// Exact tie probability P(Σ Zᵢ = 0); zero (log₁₀ = −∞) for odd n.
pub fn tie_prob_exact(n: u64, eps: f64) -> Result<LogProbability> {
    check_n(n)?;
    if n > EXACT_MAX_N {
        return Err(Error::TooLarge {
            name: "n",
            value: n,
            max: EXACT_MAX_N,
        });
    }
    check_eps("eps", eps, -1.0, 1.0)?;
    if n % 2 == 1 {
        return Ok(LogProbability::exact(f64::NEG_INFINITY));
    }
    let p = (1.0 + eps) / 2.0;
    if p == 0.0 || p == 1.0 {
        return Ok(LogProbability::exact(f64::NEG_INFINITY));
    }
    let ln = ln_binomial_term(n, n / 2, p.ln(), (1.0 - p).ln());
    Ok(LogProbability::exact(ln / LN_10))
}

/// True when [`sample_magnetizations`] uses the Gaussian approximation for
/// this molecule count instead of exact binomial draws.
pub fn sampler_is_approximate(n: u64) -> bool {
    n > EXACT_SAMPLER_MAX_N
}

/// Draw `shots` simultaneous measurements of (Σ Z_I, Σ Z_S).
///
/// Each sum is 2·Binomial(n, p′) − n with p′ = (1 + (−1)^bit ε)/2, the two
/// spins independent. The stream is fully determined by `seed`: shots are
/// grouped into fixed-size batches and each batch draws from its own RNG
/// stream derived from (seed, batch index).
pub fn sample_magnetizations(
    n: u64,
    eps_i: f64,
    eps_s: f64,
    m: Message,
    seed: u64,
    shots: u64,
) -> Result<Vec<(i64, i64)>> {
    check_n(n)?;
    check_eps("eps_i", eps_i, -1.0, 1.0)?;
    check_eps("eps_s", eps_s, -1.0, 1.0)?;
    if shots == 0 {
        return Err(Error::OutOfRange {
            name: "shots",
            value: 0.0,
            min: 1.0,
            max: f64::MAX,
        });
    }
    // Sums live in [-n, n]; keep them well inside i64.
    if n > (1 << 62) {
        return Err(Error::TooLarge {
            name: "n",
            value: n,
            max: 1 << 62,
        });
    }

    let p_i = (1.0 + m.sign_z() * eps_i) / 2.0;
    let p_s = (1.0 + m.sign_x() * eps_s) / 2.0;

    let mut out = Vec::with_capacity(shots as usize);
    let batches = shots.div_ceil(SHOTS_PER_BATCH);
    for batch in 0..batches {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(batch);
        let in_batch = SHOTS_PER_BATCH.min(shots - batch * SHOTS_PER_BATCH);
        for _ in 0..in_batch {
            let sum_i = draw_sum(n, p_i, &mut rng);
            let sum_s = draw_sum(n, p_s, &mut rng);
            out.push((sum_i, sum_s));
        }
    }
    Ok(out)
}

/// One draw of Σ Zᵢ = 2X − n, X ~ Binomial(n, p).
fn draw_sum(n: u64, p: f64, rng: &mut ChaCha8Rng) -> i64 {
    if p <= 0.0 {
        return -(n as i64);
    }
    if p >= 1.0 {
        return n as i64;
    }
    if n <= EXACT_SAMPLER_MAX_N {
        let x = Binomial::new(n, p)
            .expect("p validated in (0, 1)")
            .sample(rng);
        return 2 * x as i64 - n as i64;
    }
    // Gaussian approximation, rounded to the parity of n and clamped.
    let nf = n as f64;
    let mean = nf * (2.0 * p - 1.0);
    let sd = (4.0 * nf * p * (1.0 - p)).sqrt();
    let draw = Normal::new(mean, sd).expect("sd is finite").sample(rng);
    let mut sum = draw.round() as i64;
    if (sum - n as i64) % 2 != 0 {
        sum += if draw >= sum as f64 { 1 } else { -1 };
    }
    sum.clamp(-(n as i64), n as i64)
}

/// Read the message off the signs of the two detected sums. A sum of
/// exactly zero carries no sign information, so the shot is undecided.
pub fn decode_message((sum_i, sum_s): (i64, i64)) -> Option<Message> {
    if sum_i == 0 || sum_s == 0 {
        return None;
    }
    Some(Message::new(sum_i < 0, sum_s < 0))
}

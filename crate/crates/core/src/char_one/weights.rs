use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::CharOneError;
use crate::arith::{checked_pow, factorize, is_prime};

/// Rationals in `[0, 1]` used as weights' arguments.
pub type Frac = Ratio<u64>;

/// A weight `w : Q ∩ [0,1] → (0, ∞)`, given through `log w`.
pub trait LogWeight {
    fn log_weight(&self, alpha: Frac) -> f64;
}

/// A homomorphism `χ : Q_+^× → (0, ∞)` fixed by `l(p) = log χ(1/p)`.
///
/// Primes without an explicit value get `l(p) = λ log p`; `λ = 0` gives the
/// trivial character away from the listed primes.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChiHom {
    lambda: f64,
    values: BTreeMap<u64, f64>,
}

impl ChiHom {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// `l(p) = λ log p` for every prime, whose weight is `e^{λ S(α)}`.
    pub fn entropy(lambda: f64) -> Self {
        Self { lambda, values: BTreeMap::new() }
    }

    /// Explicit `l(p)` on finitely many primes, zero elsewhere.
    pub fn from_primes(values: impl IntoIterator<Item = (u64, f64)>) -> Result<Self, CharOneError> {
        let mut map = BTreeMap::new();
        for (p, l) in values {
            if !is_prime(p) {
                return Err(CharOneError::NotPrime(p));
            }
            if !l.is_finite() {
                return Err(CharOneError::NotFinite(l));
            }
            map.insert(p, l);
        }
        Ok(Self { lambda: 0.0, values: map })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Primes with an explicit value.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.keys().copied()
    }

    /// `l(p) = log χ(1/p)`.
    pub fn l(&self, p: u64) -> f64 {
        match self.values.get(&p) {
            Some(&l) => l,
            None if self.lambda == 0.0 => 0.0,
            None => self.lambda * libm::log(p as f64),
        }
    }

    fn log_chi_int(&self, n: u64) -> f64 {
        factorize(n).into_iter().map(|(p, k)| k as f64 * self.l(p)).sum::<f64>()
    }

    /// `log χ(r)` for a positive rational.
    pub fn log_chi(&self, r: Frac) -> Result<f64, CharOneError> {
        if r.is_zero() {
            return Err(CharOneError::NonPositive);
        }
        Ok(self.log_chi_int(*r.denom()) - self.log_chi_int(*r.numer()))
    }

    /// `log w(α) = α log χ(α) + (1-α) log χ(1-α)`, zero at the endpoints.
    pub fn log_w(&self, alpha: Frac) -> Result<f64, CharOneError> {
        if alpha > Frac::one() {
            return Err(CharOneError::AlphaOutOfRange(ratio_f64(alpha)));
        }
        if alpha.is_zero() || alpha.is_one() {
            return Ok(0.0);
        }
        let beta = Frac::one() - alpha;
        Ok(ratio_f64(alpha) * self.log_chi(alpha)? + ratio_f64(beta) * self.log_chi(beta)?)
    }
}

impl LogWeight for ChiHom {
    fn log_weight(&self, alpha: Frac) -> f64 {
        self.log_w(alpha).expect("alpha in [0,1]")
    }
}

/// `w(α) = χ(α)^α χ(1-α)^{1-α}`.
pub fn w_from_chi(chi: &ChiHom, alpha: Frac) -> Result<f64, CharOneError> {
    Ok(libm::exp(chi.log_w(alpha)?))
}

/// `w ≡ c` on the open interval, `w(0) = w(1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantWeight {
    pub log_c: f64,
}

impl LogWeight for ConstantWeight {
    fn log_weight(&self, alpha: Frac) -> f64 {
        if alpha.is_zero() || alpha.is_one() {
            0.0
        } else {
            self.log_c
        }
    }
}

pub fn ratio_f64(r: Frac) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn open_unit(a: Frac) -> Result<(), CharOneError> {
    if a.is_zero() || a >= Frac::one() {
        Err(CharOneError::AlphaOutOfRange(ratio_f64(a)))
    } else {
        Ok(())
    }
}

/// Worst residuals of the associativity and symmetry equations.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct CocycleReport {
    pub cocycle: f64,
    pub symmetry: f64,
    pub worst: Option<(Frac, Frac)>,
}

/// Evaluates, in logs,
/// `w(α) w(β)^α = w(αβ) w(α(1-β)/(1-αβ))^{1-αβ}` and `w(1-α) = w(α)`.
pub fn check_cocycle<W: LogWeight + ?Sized>(w: &W, samples: &[(Frac, Frac)]) -> Result<CocycleReport, CharOneError> {
    let mut rep = CocycleReport::default();
    for &(a, b) in samples {
        open_unit(a)?;
        open_unit(b)?;
        let ab = a * b;
        let one = Frac::one();
        let other = a * (one - b) / (one - ab);
        let lhs = w.log_weight(a) + ratio_f64(a) * w.log_weight(b);
        let rhs = w.log_weight(ab) + ratio_f64(one - ab) * w.log_weight(other);
        let r = libm::fabs(lhs - rhs);
        if r > rep.cocycle || rep.worst.is_none() {
            rep.worst = Some((a, b));
        }
        rep.cocycle = rep.cocycle.max(r);
        for x in [a, b] {
            rep.symmetry = rep.symmetry.max(libm::fabs(w.log_weight(x) - w.log_weight(one - x)));
        }
    }
    Ok(rep)
}

/// `log w(α_1, …, α_n) = Σ_k r_k log w(α_k / r_k)`, `r_k = 1 - α_1 - … - α_{k-1}`.
pub fn log_w_multi<W: LogWeight + ?Sized>(w: &W, alphas: &[Frac]) -> Result<f64, CharOneError> {
    let total: Frac = alphas.iter().copied().sum();
    if !total.is_one() {
        return Err(CharOneError::NotASimplexPoint);
    }
    let mut rest = Frac::one();
    let mut acc = 0.0;
    for &a in alphas.iter().take(alphas.len().saturating_sub(1)) {
        acc += ratio_f64(rest) * w.log_weight(a / rest);
        rest -= a;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct SymmetryReport {
    pub permutation: f64,
    pub partition: Option<f64>,
}

/// Residuals of permutation invariance of `w(α_1, …, α_n)` and, if a
/// partition `(J_k)` is given, of `w(α) = w(β) ∏ w(γ_k)^{β_k}`.
pub fn check_symmetric_multi<W: LogWeight + ?Sized>(
    w: &W,
    alphas: &[Frac],
    partition: Option<&[Vec<usize>]>,
) -> Result<SymmetryReport, CharOneError> {
    for &a in alphas {
        open_unit(a)?;
    }
    if alphas.len() > 8 {
        return Err(CharOneError::TooManyParts(alphas.len()));
    }
    let base = log_w_multi(w, alphas)?;
    let mut rep = SymmetryReport::default();
    let mut perm = alphas.to_vec();
    let mut worst = 0.0f64;
    heap_permutations(&mut perm, &mut |p| {
        let v = log_w_multi(w, p).expect("same sum");
        worst = worst.max(libm::fabs(v - base));
    });
    rep.permutation = worst;
    if let Some(parts) = partition {
        let mut seen = vec![false; alphas.len()];
        for &i in parts.iter().flatten() {
            if i >= alphas.len() || seen[i] {
                return Err(CharOneError::BadPartition);
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) || parts.iter().any(Vec::is_empty) {
            return Err(CharOneError::BadPartition);
        }
        let betas: Vec<Frac> = parts.iter().map(|j| j.iter().map(|&i| alphas[i]).sum()).collect();
        let mut rhs = log_w_multi(w, &betas)?;
        for (j, &b) in parts.iter().zip(&betas) {
            let gamma: Vec<Frac> = j.iter().map(|&i| alphas[i] / b).collect();
            rhs += ratio_f64(b) * log_w_multi(w, &gamma)?;
        }
        rep.partition = Some(libm::fabs(base - rhs));
    }
    Ok(rep)
}

fn heap_permutations(v: &mut [Frac], f: &mut impl FnMut(&[Frac])) {
    fn rec(k: usize, v: &mut [Frac], f: &mut impl FnMut(&[Frac])) {
        if k <= 1 {
            f(v);
            return;
        }
        for i in 0..k {
            rec(k - 1, v, f);
            if k.is_multiple_of(2) {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
    }
    let n = v.len();
    rec(n, v, f);
}

/// A fraction `α = p_1^{n_1} / p_2^{n_2} < 1` with `w(α) < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositivityWitness {
    pub p1: u64,
    pub n1: u32,
    pub p2: u64,
    pub n2: u32,
    pub alpha: Frac,
    pub log_w: f64,
}

/// Primes always included in the search besides those listed in `χ`.
pub const PROBE_PRIMES: [u64; 4] = [2, 3, 5, 7];

const PROBE_THRESHOLD: f64 = -1e-9;

/// Searches `α = p_1^{n_1} / p_2^{n_2} < 1`, `1 ≤ n_i ≤ depth`, for
/// `log w(α) < -1e-9`. Returns the first hit in order of `(p_1, p_2, n_2, n_1)`.
pub fn positivity_probe(chi: &ChiHom, depth: u32) -> Option<PositivityWitness> {
    let mut primes: Vec<u64> = PROBE_PRIMES.iter().copied().chain(chi.primes()).collect();
    primes.sort_unstable();
    primes.dedup();
    for &p1 in &primes {
        for &p2 in &primes {
            if p1 == p2 {
                continue;
            }
            for n2 in 1..=depth {
                let Some(den) = checked_pow(p2, n2) else { break };
                for n1 in 1..=depth {
                    let Some(num) = checked_pow(p1, n1) else { break };
                    if num >= den {
                        break;
                    }
                    let alpha = Frac::new(num, den);
                    let lw = chi.log_w(alpha).expect("alpha in (0,1)");
                    if lw < PROBE_THRESHOLD {
                        return Some(PositivityWitness { p1, n1, p2, n2, alpha, log_w: lw });
                    }
                }
            }
        }
    }
    None
}

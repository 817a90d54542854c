//! Per-prime verification reports and range scans.
//!
//! A report lists one check per step of the argument, tagged with a fixed
//! lemma label. Library scans are sequential iterators; callers that want
//! parallelism (the CLI) map [`verify_prime_with`] over [`scan_primes`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ambiguous::{self, Conclusion};
use crate::error::{domain, Error, Result};
use crate::pell::{self, FactorVerdict, FundUnit};
use crate::quadfield::{self, PlaceK, QuadInt};
use crate::quartic::{self, ClassGroupResult, Fixtures};
use crate::{arith, bqf};

/// Labels of the individual checks; the serialized names are fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaTag {
    #[serde(rename = "Gauss-h-odd")]
    QuadraticClassNumberOdd,
    #[serde(rename = "Gauss-norm-1")]
    UnitNormMinusOne,
    #[serde(rename = "Thm4-congruences")]
    UnitCongruences,
    #[serde(rename = "Thm4-ramification")]
    UnitTimesRootRamification,
    #[serde(rename = "Lem7-residues")]
    DyadicResidues,
    #[serde(rename = "Lem7-t2")]
    UnitExtensionRamifiedCount,
    #[serde(rename = "Lem9-order4")]
    ResidueOrderFour,
    #[serde(rename = "Lem9-splits")]
    RootSplitsInUnitExtension,
    #[serde(rename = "Thm8-chain")]
    OddClassNumberChain,
    #[serde(rename = "Thm10-chain")]
    ClassNumberMod4Chain,
    #[serde(rename = "Thm1-even")]
    QuarticClassNumberEven,
    #[serde(rename = "Thm10-mod4")]
    QuarticClassNumberMod4,
}

impl LemmaTag {
    pub const ALL: [LemmaTag; 12] = [
        LemmaTag::QuadraticClassNumberOdd,
        LemmaTag::UnitNormMinusOne,
        LemmaTag::UnitCongruences,
        LemmaTag::UnitTimesRootRamification,
        LemmaTag::DyadicResidues,
        LemmaTag::UnitExtensionRamifiedCount,
        LemmaTag::ResidueOrderFour,
        LemmaTag::RootSplitsInUnitExtension,
        LemmaTag::OddClassNumberChain,
        LemmaTag::ClassNumberMod4Chain,
        LemmaTag::QuarticClassNumberEven,
        LemmaTag::QuarticClassNumberMod4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LemmaTag::QuadraticClassNumberOdd => "Gauss-h-odd",
            LemmaTag::UnitNormMinusOne => "Gauss-norm-1",
            LemmaTag::UnitCongruences => "Thm4-congruences",
            LemmaTag::UnitTimesRootRamification => "Thm4-ramification",
            LemmaTag::DyadicResidues => "Lem7-residues",
            LemmaTag::UnitExtensionRamifiedCount => "Lem7-t2",
            LemmaTag::ResidueOrderFour => "Lem9-order4",
            LemmaTag::RootSplitsInUnitExtension => "Lem9-splits",
            LemmaTag::OddClassNumberChain => "Thm8-chain",
            LemmaTag::ClassNumberMod4Chain => "Thm10-chain",
            LemmaTag::QuarticClassNumberEven => "Thm1-even",
            LemmaTag::QuarticClassNumberMod4 => "Thm10-mod4",
        }
    }
}

impl fmt::Display for LemmaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok { Verdict::Pass } else { Verdict::Fail }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisNotMet => "hypothesis_not_met",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub lemma_tag: LemmaTag,
    pub verdict: Verdict,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofChainReport {
    pub p: u64,
    pub class_mod16: u8,
    /// Absent when `p ≢ 1 (mod 4)` or when no unit of norm −1 was found.
    pub unit: Option<FundUnit>,
    pub checks: Vec<Check>,
    pub deep: Option<ClassGroupResult>,
    pub overall: Verdict,
}

impl ProofChainReport {
    pub fn check(&self, tag: LemmaTag) -> Option<&Check> {
        self.checks.iter().find(|c| c.lemma_tag == tag)
    }
}

/// Immutable configuration shared by every verification.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Deep checks run only for `p` up to this bound.
    pub deep_bound: u64,
    pub fixtures: Fixtures,
    /// Trial-division bound for the prime factors of `b`.
    pub trial_cap: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { deep_bound: quartic::DEFAULT_DEEP_BOUND, fixtures: Fixtures::builtin(), trial_cap: pell::DEFAULT_TRIAL_CAP }
    }
}

fn push(checks: &mut Vec<Check>, tag: LemmaTag, verdict: impl Into<Verdict>, witness: String) {
    checks.push(Check { lemma_tag: tag, verdict: verdict.into(), witness });
}

pub fn verify_prime(p: u64, deep: bool) -> Result<ProofChainReport> {
    verify_prime_with(p, deep, &VerifyConfig::default())
}

pub fn verify_prime_with(p: u64, deep: bool, cfg: &VerifyConfig) -> Result<ProofChainReport> {
    if !arith::is_prime_u64(p) {
        return domain(format!("{p} is not prime"));
    }
    let mut checks = Vec::new();
    let class_mod16 = (p % 16) as u8;
    if p % 4 != 1 {
        return Ok(ProofChainReport { p, class_mod16, unit: None, checks, deep: None, overall: Verdict::HypothesisNotMet });
    }

    let unit = match pell::fundamental_unit(p) {
        Ok(u) => {
            push(&mut checks, LemmaTag::UnitNormMinusOne, u.norm() == (-1).into(), format!("a={} b={} a²−pb²={}", u.a, u.b, u.norm()));
            Some(u)
        }
        Err(Error::Falsified(msg)) => {
            push(&mut checks, LemmaTag::UnitNormMinusOne, Verdict::Fail, msg);
            None
        }
        Err(e) => return Err(e),
    };
    let cn = bqf::class_number(p as i64)?;
    push(&mut checks, LemmaTag::QuadraticClassNumberOdd, cn.h % 2 == 1, format!("h={} h+={}", cn.h, cn.h_plus));

    let mut deep_result = None;
    if p % 8 == 1 {
        if let Some(u) = &unit {
            shallow_checks(p, u, cfg, &mut checks)?;
        }
        if deep && p <= cfg.deep_bound {
            let cg = quartic::quartic_h_mod4(p, cfg.deep_bound, &cfg.fixtures)?;
            push(
                &mut checks,
                LemmaTag::QuarticClassNumberEven,
                cg.h % 2 == 0,
                format!("h={} ({})", cg.h, cg.certified),
            );
            if p % 16 == 9 {
                push(
                    &mut checks,
                    LemmaTag::QuarticClassNumberMod4,
                    cg.h_mod4 == 2,
                    format!("h ≡ {} (mod 4), chain predicts 2 ({})", cg.h_mod4, cg.certified),
                );
            }
            deep_result = Some(cg);
        }
    }

    let overall = if checks.iter().any(|c| c.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if p % 8 != 1 {
        Verdict::HypothesisNotMet
    } else {
        Verdict::Pass
    };
    Ok(ProofChainReport { p, class_mod16, unit, checks, deep: deep_result, overall })
}

fn shallow_checks(p: u64, u: &FundUnit, cfg: &VerifyConfig, checks: &mut Vec<Check>) -> Result<()> {
    let cong = pell::check_unit_congruences_with_cap(u, cfg.trial_cap)?;
    let factors: Vec<String> = cong.b_small_factors.iter().map(|(q, e)| if *e > 1 { format!("{q}^{e}") } else { q.to_string() }).collect();
    let mut witness = format!(
        "a mod 4={} b mod 4={} b=[{}]",
        if cong.four_divides_a { 0 } else { 1 },
        if cong.b_one_mod_four { 1 } else { 3 },
        factors.join("·")
    );
    if cong.b_prime_factors == FactorVerdict::Inconclusive {
        witness.push_str(&format!(" unfactored cofactor {} ≡ 1 (mod 4)", cong.b_cofactor));
    }
    push(checks, LemmaTag::UnitCongruences, cong.consistent(), witness);

    let eps = QuadInt::from_unit(u);
    let eps_root = eps.mul(&QuadInt::sqrt_p(p));
    let ram = quadfield::quad_ramified_places(&eps_root)?;
    push(
        checks,
        LemmaTag::UnitTimesRootRamification,
        ram == [PlaceK::SqrtP],
        format!("ramified in k(√(ε√p))/k: [{}]", ram.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
    );

    let plus = quadfield::local_residue_at_2(&eps, PlaceK::DyadicPlus)?;
    let minus = quadfield::local_residue_at_2(&eps, PlaceK::DyadicMinus)?;
    let mut pair = [plus, minus];
    pair.sort_unstable();
    push(
        checks,
        LemmaTag::DyadicResidues,
        pair == [1, 3],
        format!("ε mod 4 at {}={plus}, at {}={minus}", PlaceK::DyadicPlus, PlaceK::DyadicMinus),
    );

    let ram_eps = quadfield::quad_ramified_places(&eps)?;
    push(
        checks,
        LemmaTag::UnitExtensionRamifiedCount,
        ram_eps.len() == 2,
        format!("t={} [{}]", ram_eps.len(), ram_eps.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
    );

    let a = quadfield::residue_mod_sqrtp(&eps);
    let ord = quadfield::order_mod_p(a, p)?;
    push(checks, LemmaTag::ResidueOrderFour, ord == 4, format!("a mod p={a} order={ord}"));
    let leg = quadfield::legendre(a, p);
    push(checks, LemmaTag::RootSplitsInUnitExtension, leg == 1, format!("(a/p)={leg}"));

    let odd = ambiguous::odd_class_number_chain(p)?;
    push(checks, LemmaTag::OddClassNumberChain, odd.conclusion == Conclusion::Pass, chain_witness(&odd));

    let mod4 = ambiguous::class_number_mod4_chain(p)?;
    let verdict = match mod4.conclusion {
        Conclusion::Pass => Verdict::Pass,
        Conclusion::Fail => Verdict::Fail,
        Conclusion::HypothesisNotMet => Verdict::HypothesisNotMet,
    };
    push(checks, LemmaTag::ClassNumberMod4Chain, verdict, chain_witness(&mod4));
    Ok(())
}

fn chain_witness(v: &ambiguous::ChainVerdict) -> String {
    let steps: Vec<String> = v.steps.iter().map(|s| format!("{}:{}", s.name, if s.pass { "ok" } else { "no" })).collect();
    match (v.t(), v.j()) {
        (Some(t), Some(j)) => format!("t={t} j={j} [{}]", steps.join(" ")),
        _ => format!("[{}]", steps.join(" ")),
    }
}

/// Primes in `[lo, hi]`, optionally restricted to one class mod 16.
pub fn scan_primes(lo: u64, hi: u64, filter_mod16: Option<u8>) -> Result<Vec<u64>> {
    if lo > hi {
        return domain(format!("empty interval: {lo} > {hi}"));
    }
    Ok(arith::primes_up_to(hi).into_iter().filter(|&q| q >= lo && filter_mod16.is_none_or(|r| q % 16 == r as u64)).collect())
}

/// Sequential scan. Stops after the first failing report unless
/// `keep_going` is set.
pub fn scan_range<'a>(
    lo: u64,
    hi: u64,
    filter_mod16: Option<u8>,
    deep_max: u64,
    keep_going: bool,
    cfg: &'a VerifyConfig,
) -> Result<impl Iterator<Item = Result<ProofChainReport>> + 'a> {
    let primes = scan_primes(lo, hi, filter_mod16)?;
    let mut stopped = false;
    Ok(primes.into_iter().map_while(move |q| {
        if stopped {
            return None;
        }
        let r = verify_prime_with(q, q <= deep_max, cfg);
        if !keep_going && r.as_ref().map_or(true, |rep| rep.overall == Verdict::Fail) {
            stopped = true;
        }
        Some(r)
    }))
}

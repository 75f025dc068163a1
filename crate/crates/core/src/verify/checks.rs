use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::counting::{
    format_affine, residual_counting_argument, residual_counts_in_terms_of, CountingOutcome, ResidualConstraints,
    ResidualPattern,
};
use super::data::LEMMA2_GENERATOR;
use super::{Recorder, VerifyOptions};
use crate::canon::automorphism_order;
use crate::enumerate::{classify, column_replacement_scan, SearchSpec};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Code};
use crate::lp::{
    a_var, a_vars, b_var, build_mw_lp, format_rational, tighten_integer, Direction, ExtraConstraint, LinearExpr,
    LinearProgram, NamedObjective, Sense, Status,
};
use crate::spectrum::{
    divisibility_admissible, divisor, griesmer, macwilliams, macwilliams_rational, RationalInterval,
    WeightDistribution,
};
use crate::Rational;

pub(crate) fn run(id: &str, rec: &mut Recorder, opts: &VerifyOptions) -> Result<()> {
    match id {
        "L1" => lemma_16_4_7(rec),
        "L2-CODE" => lemma_46_9_20(rec),
        "T3" => uniqueness_46_9_20(rec),
        "L4" => lemma_47_10_20(rec),
        "L5" => search_lemma(rec, opts, &SearchSpec::with_distance(5, 1, 33, 15, &[16])?, "dim5", "dim4_lengths", Some("dim4_total")),
        "L6" => search_lemma(rec, opts, &SearchSpec::with_distance(5, 1, 46, 22, &[24])?.even(), "dim5", "dim4_lengths", None),
        "L7" => search_lemma(rec, opts, &SearchSpec::with_distance(4, 1, 47, 23, &[24, 25, 26])?, "dim4", "dim3_lengths", None),
        "L78" => lemma_78_9_36(rec),
        "T5-LP" => theorem_85_9_40_lp(rec),
        "T5-COUNT" => theorem_85_9_40_count(rec),
        "T117" => theorem_117_9_56(rec),
        "P118" => proposition_118_10_56(rec),
        "TAB1" => table(rec, opts, &[20, 24, 28, 32], 37),
        "TAB2" => table(rec, opts, &[40, 48, 56], 76),
        _ => Err(Error::UnknownCheck(id.to_string())),
    }
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// `[n - w, k - 1, d - floor(w/2)]`.
fn residual_params(n: usize, k: usize, d: usize, w: usize) -> (usize, usize, usize) {
    (n - w, k - 1, d - w / 2)
}

fn fmt_params(w: usize, p: (usize, usize, usize)) -> String {
    format!("w{w}:[{},{},{}]", p.0, p.1, p.2)
}

fn even_range(lo: usize, hi: usize, step: usize, skip: &[usize]) -> Vec<usize> {
    (lo..=hi).step_by(step).filter(|w| !skip.contains(w)).collect()
}

fn fixed_b(indices: &[usize]) -> Vec<ExtraConstraint> {
    indices.iter().map(|&i| ExtraConstraint::fix(&b_var(i), 0)).collect()
}

fn optimum(lp: &LinearProgram<Rational>) -> Result<Rational> {
    let out = lp.solve();
    match out.status {
        Status::Optimal => out.value.ok_or(Error::Infeasible),
        Status::Infeasible => Err(Error::Infeasible),
        Status::Unbounded => Err(Error::Unbounded),
    }
}

/// Minimum number of codewords (including zero) whose weight is divisible by `m`.
fn min_divisible_count(
    rec: &mut Recorder,
    n: usize,
    k: usize,
    allowed: &[usize],
    zero_b: &[usize],
    m: usize,
) -> Result<Rational> {
    let names: Vec<String> = allowed.iter().filter(|&&w| w % m == 0).map(|&w| a_var(w)).collect();
    let obj = NamedObjective::sum(&names, 1, Direction::Minimize);
    let lp = build_mw_lp(n, k, allowed, 4, &fixed_b(zero_b), Some(&obj))?;
    rec.input(&crate::lp::write_lp(&lp));
    optimum(&lp)
}

/// Counts admissible for a `2^a`-divisible `k`-dimensional code at or above `lo`.
fn forced_counts(k: usize, a: u32, lo: Rational) -> String {
    let hi = Rational::from_integer(BigInt::one() << k);
    divisibility_admissible(k, a, &RationalInterval::closed(lo, hi))
        .iter()
        .map(|r| r.t_count.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn code_from_text(text: &str) -> Result<Code> {
    Code::new(text.parse::<BitMatrix>()?)
}

/// Residual weights `(w' + w'' - w) / 2` the pair weights can produce, with
/// `w'` and `w''` drawn from `weights`.
fn pairs_for_residual_weight(weights: &[usize], w: usize, target: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &a) in weights.iter().enumerate() {
        for &b in &weights[i..] {
            if a + b == 2 * target + w {
                out.push((a, b));
            }
        }
    }
    out
}

fn fmt_pairs(pairs: &[(usize, usize)]) -> String {
    if pairs.is_empty() {
        "none".into()
    } else {
        pairs.iter().map(|(a, b)| format!("{a}+{b}")).collect::<Vec<_>>().join(" ")
    }
}

/// Integer enumerator forced by tightening, or an error naming the loose variables.
fn forced_enumerator(n: usize, tight: &crate::lp::Tightened, weights: &[usize]) -> Result<WeightDistribution> {
    let mut pairs = vec![(0usize, 1u64)];
    for &w in weights {
        let b = tight
            .get(&a_var(w))
            .and_then(|b| b.fixed())
            .ok_or_else(|| Error::Data(format!("A_{w} is not forced to a single integer")))?;
        let v: u64 = b.try_into().map_err(|_| Error::Data(format!("A_{w} = {b} is negative")))?;
        if v > 0 {
            pairs.push((w, v));
        }
    }
    WeightDistribution::from_pairs(n, &pairs)
}

fn lemma_16_4_7(rec: &mut Recorder) -> Result<()> {
    let (k, d) = (4usize, 7usize);
    // length as an LP variable: sum A = 2^k - 1, sum j A_j = 2^(k-1) n, at least half even
    let weights: Vec<usize> = (d..=4 * d).filter(|&w| w != d + 1).collect();
    let mut vars = vec!["n".to_string()];
    vars.extend(weights.iter().map(|&w| a_var(w)));
    let mut lp = LinearProgram::<Rational>::new(vars)?;
    let mut count = LinearExpr::new();
    let mut first = LinearExpr::new().term(0, rat(-(1 << (k - 1))));
    let mut even = LinearExpr::new();
    for (i, &w) in weights.iter().enumerate() {
        count.add_term(i + 1, rat(1));
        first.add_term(i + 1, rat(w as i64));
        if w % 2 == 0 {
            even.add_term(i + 1, rat(1));
        }
    }
    lp.add_constraint("count", count, Sense::Eq, rat((1 << k) - 1))?;
    lp.add_constraint("mw1", first, Sense::Eq, rat(0))?;
    lp.add_constraint("even", even, Sense::Ge, rat((1 << (k - 1)) - 1))?;
    lp.set_objective(LinearExpr::new().term(0, rat(1)), Direction::Minimize)?;
    rec.input(&crate::lp::write_lp(&lp));
    rec.value("length_bound", format_rational(&optimum(&lp)?))?;

    let n = 16;
    let all: Vec<usize> = (d..=n).filter(|&w| w != d + 1).collect();
    let even_names: Vec<String> = all.iter().filter(|&&w| w % 2 == 0).map(|&w| a_var(w)).collect();
    let extra = vec![
        ExtraConstraint::fix(&b_var(1), 0),
        ExtraConstraint::sum("even", &even_names, Sense::Eq, (1 << (k - 1)) - 1),
    ];
    let high: Vec<usize> = all.iter().copied().filter(|&w| w == 11 || w >= 13).collect();
    let obj = NamedObjective::sum(&a_vars(high.iter().copied()), 0, Direction::Maximize);
    let lp = build_mw_lp(n, k, &all, 4, &extra, Some(&obj))?;
    rec.input(&crate::lp::write_lp(&lp));
    let high_max = optimum(&lp)?;
    rec.note(format!("max A_11 + A_13 + ... + A_16 = {}", format_rational(&high_max)));
    rec.value("high_weights_below_1", high_max < rat(1))?;

    let low: Vec<usize> = all.iter().copied().filter(|w| !high.contains(w)).collect();
    let low_even: Vec<String> = low.iter().filter(|&&w| w % 2 == 0).map(|&w| a_var(w)).collect();
    let extra = vec![
        ExtraConstraint::fix(&b_var(1), 0),
        ExtraConstraint::sum("even", &low_even, Sense::Eq, (1 << (k - 1)) - 1),
    ];
    let mut b2 = Vec::new();
    for dir in [Direction::Minimize, Direction::Maximize] {
        let obj = NamedObjective::sum(&[b_var(2)], 0, dir);
        b2.push(optimum(&build_mw_lp(n, k, &low, 4, &extra, Some(&obj))?)?);
    }
    rec.note(format!("LP range of B_2: [{}, {}]", format_rational(&b2[0]), format_rational(&b2[1])));
    rec.value("B2_range", format!("{}..{}", b2[0].ceil(), b2[1].floor()))?;

    let lp = build_mw_lp(n, k, &low, 4, &extra, None)?;
    let mut targets = a_vars(low.iter().copied());
    targets.extend([b_var(2), b_var(3)]);
    let tight = tighten_integer(&lp, &targets)?;
    let fix = tight.fixings();
    let sol = low
        .iter()
        .map(|&w| format!("A{w}={}", fix.get(&a_var(w)).map_or("?".into(), |v| v.to_string())))
        .collect::<Vec<_>>()
        .join(" ");
    rec.value("solution", &sol)?;
    rec.note(
        "the published tuple A7=7 A9=0 A10=6 A12=1 has 14 nonzero codewords, one short of 2^4 - 1 = 15; \
         the computed tuple satisfies the count identity",
    );
    let mut a = vec![Rational::zero(); n + 1];
    a[0] = rat(1);
    for &w in &low {
        if let Some(v) = fix.get(&a_var(w)) {
            a[w] = Rational::from_integer(v.clone());
        }
    }
    let dual = macwilliams_rational(n, k, &a);
    rec.value("B15", format_rational(dual.get(15)))?;

    let spec = SearchSpec::with_distance(k, 1, n, d, &[d + 1])?;
    rec.input(&format!("{spec:?}"));
    let c = classify(&spec, &[], &Default::default())?;
    rec.value("codes_without_8", c.counts(k).values().sum::<usize>())?;
    Ok(())
}

fn lemma2_code(rec: &mut Recorder) -> Result<Code> {
    rec.input(LEMMA2_GENERATOR);
    code_from_text(LEMMA2_GENERATOR)
}

fn lemma_46_9_20(rec: &mut Recorder) -> Result<()> {
    let code = lemma2_code(rec)?;
    let wd = code.weight_distribution()?.clone();
    rec.value("weights", &wd)?;
    let dual = macwilliams(&wd);
    let b = (1..=4)
        .map(|i| format!("B{i}={}", format_rational(dual.get(i))))
        .collect::<Vec<_>>()
        .join(" ");
    rec.value("dual", b)?;
    rec.value("divisor", divisor(&wd)?.delta)?;
    rec.value("aut", automorphism_order(&code)?)?;
    rec.value("min_distance", code.min_weight()?)?;
    rec.value("griesmer_9_21", griesmer(9, 21))?;

    let (n, k, d) = (46, 9, 20);
    let r20 = residual_params(n - 1, k, d, 20);
    let r22 = residual_params(n, k, d, 22);
    let r26 = residual_params(n, k, d, 26);
    rec.no_code(r20.0, r20.1, r20.2)?;
    rec.no_code(n - 2, k - 1, d)?;
    rec.no_code(r22.0, r22.1, r22.2)?;
    rec.value(
        "residuals",
        [fmt_params(20, r20), fmt_params(22, r22), fmt_params(26, r26)].join(" "),
    )?;
    let w26: Vec<usize> = (d..=n).step_by(2).filter(|&w| w != 22).collect();
    rec.note(format!(
        "weight 8 in the residual of a weight-26 word needs pairs {}; the residual then has no weight 8 and is excluded by check L1",
        fmt_pairs(&pairs_for_residual_weight(&w26, 26, 8))
    ));

    let allowed = even_range(d, n, 2, &[22, 26]);
    let names: Vec<String> = allowed.iter().filter(|&&w| w % 4 == 0).map(|&w| a_var(w)).collect();
    let obj = NamedObjective::sum(&names, 1, Direction::Minimize);
    let lp = build_mw_lp(n, k, &allowed, 3, &fixed_b(&[1, 2]), Some(&obj))?;
    rec.input(&crate::lp::write_lp(&lp));
    let t = optimum(&lp)?;
    rec.value("min_T", format_rational(&t))?;
    rec.value("T_forced", forced_counts(k, 1, t))?;

    let de = even_range(d, n, 4, &[]);
    let high = a_vars([36, 40, 44]);
    let obj = NamedObjective::sum(&high, 0, Direction::Maximize);
    let lp = build_mw_lp(n, k, &de, 4, &fixed_b(&[1, 2]), Some(&obj))?;
    rec.input(&crate::lp::write_lp(&lp));
    let m = optimum(&lp)?;
    rec.value("lp_A36_A40_A44", format_rational(&m))?;
    rec.value("max_A36_A40_A44", m.floor())?;
    Ok(())
}

fn uniqueness_46_9_20(rec: &mut Recorder) -> Result<()> {
    let code = lemma2_code(rec)?;
    let r = column_replacement_scan(&code)?;
    rec.value("cases", r.cases)?;
    rec.value("lowered_or_equivalent", r.lowered + r.equivalent == r.cases)?;
    rec.value("new_classes", r.inequivalent.len())?;
    let hist = r
        .distance_histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    rec.note(format!("minimum distance histogram {hist}; equivalent {}", r.equivalent));
    rec.note("covers even codes only; an odd [46,9,20] code punctures to no [45,9,20] code (see check L2-CODE axioms)");
    Ok(())
}

fn lemma_47_10_20(rec: &mut Recorder) -> Result<()> {
    let (n, k, d) = (47, 10, 20);
    rec.no_code(n - 1, k, d)?;
    rec.no_code(n - 2, k - 1, d)?;
    rec.value("T_forced", forced_counts(k, 1, rat((1 << k) - 1)))?;

    let code = lemma2_code(rec)?;
    let a32 = code.weight_distribution()?.get(32);
    let allowed = even_range(d, n, 4, &[]);
    let mut extra = fixed_b(&[1, 2]);
    extra.push(ExtraConstraint::sum("a32", &[a_var(32)], Sense::Ge, a32 as i64));
    let lp = build_mw_lp(n, k, &allowed, 4, &extra, None)?;
    rec.input(&crate::lp::write_lp(&lp));
    let mut targets = a_vars(allowed.iter().copied());
    targets.push(b_var(3));
    let tight = tighten_integer(&lp, &targets)?;
    let fix = tight.fixings();
    let show = |name: &str| fix.get(name).map_or("?".into(), |v| v.to_string());
    rec.value(
        "zero",
        format!(
            "A36={} A40={} A44={} B3={}",
            show(&a_var(36)),
            show(&a_var(40)),
            show(&a_var(44)),
            show(&b_var(3))
        ),
    )?;
    rec.value("enumerator", forced_enumerator(n, &tight, &allowed)?)?;
    rec.value("unique_code_A32", a32)?;
    rec.note("the nine weight-32 words span a 9-dimensional subcode of length at most 46, a second [46,9,20] class; check T3 rules it out");
    Ok(())
}

fn search_lemma(
    rec: &mut Recorder,
    opts: &VerifyOptions,
    spec: &SearchSpec,
    top_key: &str,
    lower_key: &str,
    total_key: Option<&str>,
) -> Result<()> {
    rec.input(&format!("{spec:?}"));
    let c = classify(spec, &[], &opts.classify)?;
    let k = spec.k;
    let top: usize = c.counts(k).values().sum();
    rec.value(top_key, top)?;
    let lower: BTreeMap<usize, usize> = c.counts(k - 1).into_iter().filter(|&(_, v)| v > 0).collect();
    rec.value(lower_key, fmt_counts(&lower))?;
    let total: usize = lower.values().sum();
    if let Some(key) = total_key {
        rec.value(key, total)?;
    }
    rec.note(format!(
        "dimension {} counted at lengths up to {}, dimension {k} up to {}; cumulative over lengths {}",
        k - 1,
        spec.n_max - 1,
        spec.n_max,
        total
    ));
    if spec.divisor == 2 {
        rec.note("the remark after the lemma counts 4-dimensional codes; the lemma itself concerns dimension 5");
    }
    Ok(())
}

fn fmt_counts(m: &BTreeMap<usize, usize>) -> String {
    m.iter().map(|(n, c)| format!("{n}:{c}")).collect::<Vec<_>>().join(" ")
}

fn lemma_78_9_36(rec: &mut Recorder) -> Result<()> {
    let (n, k, d) = (78, 9, 36);
    rec.no_code(n - 1, k, d)?;
    rec.no_code(n - 2, k - 1, d)?;
    let r38 = residual_params(n, k, d, 38);
    let r42 = residual_params(n, k, d, 42);
    rec.no_code(r38.0, r38.1, r38.2)?;
    rec.value("residuals", [fmt_params(38, r38), fmt_params(42, r42)].join(" "))?;
    let weights = even_range(d, n, 2, &[38]);
    rec.value("weight16_pairs", fmt_pairs(&pairs_for_residual_weight(&weights, 42, 16)))?;
    rec.note("the weight-42 residual has no weight 16 and is excluded by check L5");
    let allowed = even_range(d, n, 2, &[38, 42]);
    let t = min_divisible_count(rec, n, k, &allowed, &[1, 2], 4)?;
    rec.value("min_T", format_rational(&t))?;
    rec.value("T_forced", forced_counts(k, 1, t))?;
    Ok(())
}

const N85: usize = 85;

fn theorem_85_9_40_lp(rec: &mut Recorder) -> Result<()> {
    let (n, k, d) = (N85, 9, 40);
    rec.no_code(n - 1, k, d)?;
    rec.no_code(n - 2, k - 1, d)?;
    let mut excluded = Vec::new();
    for w in [42, 44, 46] {
        let p = residual_params(n, k, d, w);
        rec.no_code(p.0, p.1, p.2)?;
        excluded.push(fmt_params(w, p));
    }
    rec.value("excluded", excluded.join(" "))?;

    let even = even_range(d, n, 2, &[42, 44, 46]);
    let t4 = min_divisible_count(rec, n, k, &even, &[1, 2], 4)?;
    rec.value("min_T4", format_rational(&t4))?;
    rec.value("T4_forced", forced_counts(k, 1, t4))?;
    let div4 = even_range(d, n, 4, &[44]);
    let t8 = min_divisible_count(rec, n, k, &div4, &[1, 2], 8)?;
    rec.value("min_T8", format_rational(&t8))?;
    rec.value("T8_forced", forced_counts(k, 2, t8))?;

    rec.axiom("no-proj-div4-5")?;
    rec.axiom("no-proj-div4-13")?;
    let patterns = patterns_85()?;
    rec.value(
        "patterns",
        patterns.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
    )?;

    let allowed = [40, 48, 56, 64];
    let lp = build_mw_lp(n, k, &allowed, 4, &fixed_b(&[1, 2]), None)?;
    rec.input(&crate::lp::write_lp(&lp));
    let tight = tighten_integer(&lp, &a_vars(allowed))?;
    let lp_a64 = tight.get(&a_var(64)).and_then(|b| b.upper.clone());
    rec.note(format!(
        "LP with integer rounding: A_64 <= {}",
        lp_a64.map_or("unbounded".into(), |v| v.to_string())
    ));
    // a second weight-64 word restricts to a residual word of weight s/2,
    // s the weight of the sum
    let second: Vec<ResidualPattern> = [40, 48, 56]
        .into_iter()
        .map(|s| ResidualPattern::new(64, 64, s))
        .collect::<Result<_>>()?;
    let admissible = second.iter().filter(|p| pattern_fits(p)).count();
    rec.note(format!(
        "a second weight-64 word gives {}; none fits a doubly-even residual of length {}",
        second.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
        N85 - 64
    ));
    rec.value("A64_max", if admissible == 0 { "1".to_string() } else { "unbounded".to_string() })?;
    for (key, v) in [("enumerator_A64_1", 1), ("enumerator_A64_0", 0)] {
        let mut extra = fixed_b(&[1, 2]);
        extra.push(ExtraConstraint::fix(&a_var(64), v));
        let lp = build_mw_lp(n, k, &allowed, 4, &extra, None)?;
        let tight = tighten_integer(&lp, &a_vars(allowed))?;
        let wd = forced_enumerator(n, &tight, &allowed)?;
        if v == 0 {
            let b3 = macwilliams(&wd).get(3).clone();
            rec.value(key, &wd)?;
            rec.value("B3", format_rational(&b3))?;
        } else {
            rec.value(key, &wd)?;
        }
    }
    Ok(())
}

/// Two-dimensional subcodes through the weight-64 word, with the residual
/// weight each produces in the length-21 doubly-even residual.
fn patterns_85() -> Result<Vec<ResidualPattern>> {
    let others = [40, 48, 56];
    let mut out = Vec::new();
    for (i, &b) in others.iter().enumerate() {
        for &c in &others[i..] {
            let p = ResidualPattern::new(64, b, c)?;
            if pattern_fits(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Doubly-even residual weight leaving room for a nonempty even complement.
fn pattern_fits(p: &ResidualPattern) -> bool {
    let residual_len = N85 - p.a;
    p.w % 4 == 0 && p.w + 2 <= residual_len
}

fn theorem_85_9_40_count(rec: &mut Recorder) -> Result<()> {
    let patterns = patterns_85()?;
    let spectrum = WeightDistribution::from_pairs(N85, &[(0, 1), (40, 360), (48, 138), (56, 12), (64, 1)])?;
    rec.input(&spectrum.to_string());
    let rel = residual_counts_in_terms_of(&patterns, &spectrum, 0)?;
    let sym = |w: usize| rel.get(&w).map_or("?".into(), |(c, a)| format_affine(c, a, "x8"));
    rec.value("x12_symbolic", sym(12))?;
    rec.value("x16_symbolic", sym(16))?;
    let hat = ResidualConstraints {
        n: N85 - 64,
        k: 8,
        identities: 4,
        dual_zero: vec![1, 2],
    };
    rec.input(&format!("{hat:?}"));
    match residual_counting_argument(&patterns, &spectrum, &hat)? {
        CountingOutcome::Unique {
            counts,
            residual_weights,
            ..
        } => {
            let at = |w: usize| residual_weights.get(&w).map_or("0".into(), format_rational);
            rec.value("x8", at(8))?;
            rec.value("x12", at(12))?;
            rec.value("x16", at(16))?;
            let pp = patterns.iter().position(|p| (p.b, p.c) == (48, 48));
            rec.value("x16pp", pp.map_or("?".into(), |i| format_rational(&counts[i])))?;
        }
        other => {
            rec.note(format!("counting system not uniquely solvable: {other:?}"));
            for key in ["x8", "x12", "x16", "x16pp"] {
                rec.value(key, "unsolved")?;
            }
        }
    }
    Ok(())
}

fn theorem_117_9_56(rec: &mut Recorder) -> Result<()> {
    let (n, k, d) = (117, 9, 56);
    rec.no_code(n - 1, k, d)?;
    for w in [58, 60, 62] {
        let p = residual_params(n, k, d, w);
        rec.no_code(p.0, p.1, p.2)?;
    }
    let r66 = residual_params(n, k, d, 66);
    let r68 = residual_params(n, k, d, 68);
    rec.value("residuals", [fmt_params(66, r66), fmt_params(68, r68)].join(" "))?;
    let weights = even_range(d, n, 2, &[58, 60, 62]);
    let missing: Vec<usize> = (24..=26)
        .filter(|&t| pairs_for_residual_weight(&weights, 66, t).is_empty())
        .collect();
    rec.note(format!(
        "residual weights {missing:?} impossible for a weight-66 word (check L7 excludes the residual); \
         a weight-68 residual is even without weight 24 (check L6)"
    ));

    let even = even_range(d, n, 2, &[58, 60, 62, 66]);
    let t4 = min_divisible_count(rec, n, k, &even, &[1], 4)?;
    rec.value("min_T4", format_rational(&t4))?;
    rec.value("T4_forced", forced_counts(k, 1, t4))?;
    let div4 = even_range(d, n, 4, &[60, 68]);
    let t8 = min_divisible_count(rec, n, k, &div4, &[1], 8)?;
    rec.value("min_T8", format_rational(&t8))?;
    rec.value("T8_forced", forced_counts(k, 2, t8))?;
    Ok(())
}

fn proposition_118_10_56(rec: &mut Recorder) -> Result<()> {
    let (n, k, d) = (118, 10, 56);
    rec.no_code(n - 1, k, d)?;
    rec.no_code(n - 2, k - 1, d)?;
    let skip = [58, 60, 62, 66, 68, 70];
    for w in skip {
        let p = residual_params(n, k, d, w);
        rec.no_code(p.0, p.1, p.2)?;
    }
    let even = even_range(d, n, 2, &skip);
    let t4 = min_divisible_count(rec, n, k, &even, &[1, 2], 4)?;
    rec.value("min_T4", format_rational(&t4))?;
    rec.value("T4_forced", forced_counts(k, 1, t4))?;
    let div4 = even_range(d, n, 4, &[60, 68]);
    let t8 = min_divisible_count(rec, n, k, &div4, &[1, 2], 8)?;
    rec.value("min_T8", format_rational(&t8))?;
    rec.value("T8_forced", forced_counts(k, 2, t8))?;
    rec.note("the bounds on T are minima; the text says maximizing");

    let div8 = even_range(d, n, 8, &[]);
    let mut below = true;
    let mut maxima = Vec::new();
    for w in [88, 96, 104, 112] {
        let obj = NamedObjective::sum(&[a_var(w)], 0, Direction::Maximize);
        let lp = build_mw_lp(n, k, &div8, 4, &fixed_b(&[1, 2]), Some(&obj))?;
        rec.input(&crate::lp::write_lp(&lp));
        let m = optimum(&lp)?;
        below &= m < rat(1);
        maxima.push(format!("A{w}<={}", format_rational(&m)));
    }
    rec.note(maxima.join(" "));
    rec.value("high_weights_below_1", below)?;

    let obj = NamedObjective::sum(&[a_var(80)], 0, Direction::Maximize);
    let lp = build_mw_lp(n, k, &div8, 4, &fixed_b(&[1, 2]), Some(&obj))?;
    rec.value("max_A80", format_rational(&optimum(&lp)?))?;

    let allowed = [56, 64, 72, 80];
    for (key, v) in [("enumerator_A80_1", 1), ("enumerator_A80_0", 0)] {
        let mut extra = fixed_b(&[1, 2]);
        extra.push(ExtraConstraint::fix(&a_var(80), v));
        let lp = build_mw_lp(n, k, &allowed, 4, &extra, None)?;
        let tight = tighten_integer(&lp, &a_vars(allowed))?;
        rec.value(key, forced_enumerator(n, &tight, &allowed)?)?;
    }
    Ok(())
}

fn table(rec: &mut Recorder, opts: &VerifyOptions, weights: &[usize], base: usize) -> Result<()> {
    let mut kmax = 0;
    for k in 1..=7 {
        if rec.wants(&format!("k{k}"))? {
            kmax = k;
        } else {
            rec.defer(&format!("k{k}"))?;
        }
    }
    let cumulative = rec.spec.expect.iter().any(|e| e.key == "k7_cumulative");
    if cumulative && kmax < 7 {
        rec.defer("k7_cumulative")?;
    }
    let spec = SearchSpec::new(kmax, 1, base + kmax, weights.iter().copied())?;
    rec.input(&format!("{spec:?}"));
    let c = classify(&spec, &[], &opts.classify)?;
    for k in 1..=kmax {
        let counts: BTreeMap<usize, usize> = c.counts(k).into_iter().filter(|&(_, v)| v > 0).collect();
        rec.value(&format!("k{k}"), fmt_counts(&counts))?;
    }
    if cumulative && kmax == 7 {
        rec.value("k7_cumulative", c.counts(7).values().sum::<usize>())?;
    }
    rec.note(format!("lengths up to {} + k, full support, every nonzero weight in {weights:?}", base));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_parameters() {
        assert_eq!(residual_params(46, 9, 20, 26), (20, 8, 7));
        assert_eq!(fmt_params(42, residual_params(78, 9, 36, 42)), "w42:[36,8,15]");
    }

    #[test]
    fn pair_search() {
        let w = even_range(20, 46, 2, &[22]);
        assert!(pairs_for_residual_weight(&w, 26, 8).is_empty());
        assert_eq!(pairs_for_residual_weight(&w, 26, 9), vec![(20, 24)]);
        assert_eq!(fmt_pairs(&[(20, 24), (22, 22)]), "20+24 22+22");
    }

    #[test]
    fn forced_divisibility_counts() {
        assert_eq!(forced_counts(9, 1, Rational::new(6712.into(), 15.into())), "512");
        assert_eq!(forced_counts(10, 1, rat(1023)), "1024");
    }

    #[test]
    fn residual_patterns_of_weight_64_word() {
        let p: Vec<String> = patterns_85().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(p, ["(64,40,40;8)", "(64,40,48;12)", "(64,40,56;16)", "(64,48,48;16)"]);
    }
}

use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use tropwitt_core::asymptotics::{general_expand, invert_expansion, solve_general, t_power_expand};
use tropwitt_core::char_one::{
    check_cocycle, check_symmetric_multi, deform_add, deform_partial_sum, positivity_probe, ChiHom, DeformContext,
    Frac,
};
use tropwitt_core::run_repr::{hyper_membership_check, limit_check, residue, residue_tilde, ExpFraction};
use tropwitt_core::witt_poly::{compute_witt_polys, newton_identity_holds};
use tropwitt_core::{FqContext, FqElement, QPoly, ReducedFractionP, WittCoeffTable, WittRing, WittVector};

use crate::config::{AsymArgs, Command, DeformArgs, EntropyArgs, RunArgs, TeichArgs, WittPolyArgs, WpArgs};
use crate::expfrac::{format_fraction, parse_fraction, FractionJson};
use crate::expr::{format_rational, parse_rational};
use crate::fixtures;
use crate::output::{Report, Table};
use crate::CliError;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn execute(cmd: &Command, seed: u64) -> Result<Report, CliError> {
    match cmd {
        Command::WittPoly(a) => witt_poly(a),
        Command::Wp(a) => wp(a),
        Command::Teich(a) => teich(a, seed),
        Command::Deform(a) => deform(a),
        Command::EntropyCheck(a) => entropy_check(a, seed),
        Command::Run(a) => run(a),
        Command::Asym(a) => asym(a),
    }
}

fn witt_poly(args: &WittPolyArgs) -> Result<Report, CliError> {
    if args.k == 0 || args.n == 0 {
        return Err(usage("k and n must be at least 1"));
    }
    if args.check_table && args.k != 2 {
        return Err(usage("--check-table needs -k 2"));
    }
    let need = args.n.max(if args.check_table { 10 } else { 0 }).max(args.newton.unwrap_or(0));
    let polys = compute_witt_polys(args.k, need);
    let mut table = Table::new(&["n", "terms", "poly"]);
    let mut listed = Vec::new();
    for (i, s) in polys.iter().take(args.n).enumerate() {
        table.push(vec![(i + 1).to_string(), s.len().to_string(), s.to_string()]);
        listed.push(json!({"n": i + 1, "poly": s.to_string()}));
    }
    let mut passed = true;
    let mut notes = vec![format!("S_1..S_{} in {} variables", args.n, args.k)];
    let mut check = Value::Null;
    if args.check_table {
        let rows = fixtures::witt_polys_k2().map_err(usage)?;
        let bad: Vec<usize> =
            rows.iter().filter(|r| polys[r.index - 1].to_rational() != r.poly).map(|r| r.index).collect();
        notes.push(format!("reference table: {} rows, {} mismatches", rows.len(), bad.len()));
        passed &= bad.is_empty();
        check = json!({"rows": rows.len(), "mismatches": bad});
    }
    let mut newton = Value::Null;
    if let Some(m) = args.newton {
        let bad: Vec<usize> = (1..=m).filter(|&n| !newton_identity_holds(&polys, n)).collect();
        notes.push(format!("power-sum identity up to n = {m}: {} failures", bad.len()));
        passed &= bad.is_empty();
        newton = json!({"up_to": m, "failures": bad});
    }
    let value = json!({"k": args.k, "n_max": args.n, "polys": listed, "table_check": check, "newton": newton});
    Ok(Report { value, table, notes, passed })
}

fn series_ints(s: &tropwitt_core::TruncSeries) -> Vec<u64> {
    s.coeffs().iter().map(|c| c.to_integer().to_u64().expect("F_p residue")).collect()
}

fn wp(args: &WpArgs) -> Result<Report, CliError> {
    if args.order == 0 {
        return Err(usage("order must be at least 1"));
    }
    let p = args.p;
    let top = (args.order - 1) as u32;
    let table = WittCoeffTable::new(p, 2, top as usize).map_err(usage)?;
    let support = table.wp_support(args.order).map_err(usage)?;
    let mut rows = Table::new(&["alpha_num", "alpha_den_exp", "n", "coeff_mod_p"]);
    let mut listed = Vec::new();
    for &a in &support {
        let s = series_ints(&table.wp_series(a, args.order).map_err(usage)?);
        for (n, &c) in s.iter().enumerate().filter(|(_, c)| **c != 0) {
            rows.push(vec![a.numerator().to_string(), a.den_exp().to_string(), n.to_string(), c.to_string()]);
        }
        listed.push(json!({"alpha": a.to_string(), "series": s}));
    }

    let one = {
        let mut v = vec![0u64; args.order];
        v[0] = 1;
        v
    };
    let ends_ok = [ReducedFractionP::zero(p), ReducedFractionP::one(p)]
        .iter()
        .map(|&a| table.wp_series(a, args.order).map(|s| series_ints(&s) == one))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?
        .into_iter()
        .all(|b| b);
    let (mut symmetric, mut vanishing) = (true, true);
    for k in 0..=p.pow(top) {
        let a = ReducedFractionP::new(p, k, top).map_err(usage)?;
        let s = series_ints(&table.wp_series(a, args.order).map_err(usage)?);
        symmetric &= s == series_ints(&table.wp_series(a.one_minus(), args.order).map_err(usage)?);
        vanishing &= s.iter().take(a.den_exp() as usize).all(|&c| c == 0);
    }
    let bound: u64 = (0..args.order as u32).map(|n| p.pow(n) + 1).sum();
    let finite = support.len() as u64 <= bound;
    let passed = ends_ok && symmetric && vanishing && finite;
    let notes = vec![
        format!("w_{p}(α) mod T^{}: {} points in the support (bound {bound})", args.order, support.len()),
        format!("endpoints {ends_ok}, symmetry {symmetric}, low-order vanishing {vanishing}"),
    ];
    let value = json!({
        "p": p,
        "order": args.order,
        "support": listed,
        "checks": {"endpoints": ends_ok, "symmetry": symmetric, "vanishing": vanishing, "support_bound": bound},
    });
    Ok(Report { value, table: rows, notes, passed })
}

fn show_vec(field: &FqContext, v: &WittVector) -> Vec<String> {
    v.components().iter().map(|&c| field.display(c).to_string()).collect()
}

fn teich(args: &TeichArgs, seed: u64) -> Result<Report, CliError> {
    if args.n == 0 || args.arity == 0 {
        return Err(usage("N and arity must be at least 1"));
    }
    let field = FqContext::fixture(args.p, args.m).map_err(usage)?;
    let ring = WittRing::new(field.clone(), args.n).map_err(usage)?;
    let table = WittCoeffTable::new(args.p as u64, args.arity, args.n - 1).map_err(usage)?;
    let q = field.order() as u64;
    let elems: Vec<FqElement> = field.elements().collect();
    let total = q.checked_pow(args.arity as u32);
    let exhaustive = total.is_some_and(|t| t <= args.exhaustive_limit);
    let tuples: Vec<Vec<FqElement>> = if exhaustive {
        (0..total.expect("checked")).map(|mut i| {
            (0..args.arity)
                .map(|_| {
                    let e = elems[(i % q) as usize];
                    i /= q;
                    e
                })
                .collect()
        })
        .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..args.samples).map(|_| (0..args.arity).map(|_| elems[rng.gen_range(0..elems.len())]).collect()).collect()
    };
    let mut rows = Table::new(&["xs", "lhs", "rhs", "equal"]);
    let mut cases = Vec::new();
    let mut passed = true;
    for xs in &tuples {
        let r = ring.verify_teich_sum(xs, &table).map_err(usage)?;
        let xs_s: Vec<String> = xs.iter().map(|&x| field.display(x).to_string()).collect();
        let (lhs, rhs) = (show_vec(&field, &r.lhs), show_vec(&field, &r.rhs));
        rows.push(vec![xs_s.join(" "), lhs.join(" "), rhs.join(" "), r.equal.to_string()]);
        cases.push(json!({"xs": xs_s, "lhs": lhs, "rhs": rhs, "equal": r.equal}));
        passed &= r.equal;
    }
    let notes = vec![format!(
        "F_{q}, W_{}, {} summands: {} {} cases",
        args.n,
        args.arity,
        tuples.len(),
        if exhaustive { "exhaustive" } else { "sampled" }
    )];
    let value = json!({"p": args.p, "m": args.m, "N": args.n, "exhaustive": exhaustive, "cases": cases});
    Ok(Report { value, table: rows, notes, passed })
}

fn deform(args: &DeformArgs) -> Result<Report, CliError> {
    if args.t.is_nan() || args.t <= 0.0 || !args.t.is_finite() || !args.a.is_finite() || !args.b.is_finite() || args.n_max == 0 {
        return Err(usage("need finite a, b, T > 0 and n_max ≥ 1"));
    }
    let ctx = DeformContext::new(args.t).map_err(usage)?;
    let (x, y) = (ctx.rho_pow(args.a), ctx.rho_pow(args.b));
    let (hi, lo) = if args.a >= args.b { (args.a, args.b) } else { (args.b, args.a) };
    let limit = hi + (lo - hi).exp().ln_1p();
    let mut ns: Vec<u32> = std::iter::successors(Some(1u32), |n| n.checked_mul(2)).take_while(|&n| n <= args.n_max).collect();
    if ns.last() != Some(&args.n_max) {
        ns.push(args.n_max);
    }
    let mut rows = Table::new(&["n", "sigma", "limit", "error"]);
    let mut listed = Vec::new();
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    let mut last = f64::INFINITY;
    for &n in &ns {
        let s = ctx.rho_exponent(deform_partial_sum(x, y, n, ctx).map_err(usage)?);
        let err = limit - s;
        if n.is_power_of_two() {
            monotone &= err <= prev + 1e-12;
            prev = err;
        }
        last = err;
        rows.push(vec![n.to_string(), s.to_string(), limit.to_string(), err.to_string()]);
        listed.push(json!({"n": n, "sigma": s, "error": err}));
    }
    let closed = ctx.rho_exponent(deform_add(x, y, ctx));
    let closed_res = (closed - limit).abs();
    let passed = monotone && last.abs() < args.tol && closed_res < 1e-12;
    let notes = vec![
        format!("a = {}, b = {}, T = {}, log(e^a + e^b) = {limit}", args.a, args.b, args.t),
        format!("deformed sum in ρ-exponents: {closed} (residual {closed_res:e})"),
    ];
    let value = json!({
        "a": args.a, "b": args.b, "T": args.t, "limit": limit, "closed_form": closed,
        "rows": listed, "monotone": monotone,
    });
    Ok(Report { value, table: rows, notes, passed })
}

fn parse_chi(s: &str) -> Result<ChiHom, CliError> {
    let pairs = s
        .split(',')
        .map(|kv| {
            let (p, l) = kv.split_once(':').ok_or_else(|| usage(format!("bad prime assignment {kv:?}")))?;
            let p: u64 = p.trim().parse().map_err(usage)?;
            let l: f64 = l.trim().parse().map_err(usage)?;
            Ok((p, l))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    ChiHom::from_primes(pairs).map_err(usage)
}

fn random_open(rng: &mut ChaCha8Rng) -> Frac {
    let d = rng.gen_range(2u64..=60);
    Ratio::new(rng.gen_range(1..d), d)
}

fn random_simplex3(rng: &mut ChaCha8Rng) -> [Frac; 3] {
    let d = rng.gen_range(3u64..=60);
    let i = rng.gen_range(1..d - 1);
    let j = rng.gen_range(1..d - i);
    [Ratio::new(i, d), Ratio::new(j, d), Ratio::new(d - i - j, d)]
}

const RANDOM_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn entropy_check(args: &EntropyArgs, seed: u64) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chis = vec![(format!("entropy(λ={})", args.lambda), ChiHom::entropy(args.lambda))];
    for s in &args.chi {
        chis.push((s.clone(), parse_chi(s)?));
    }
    for i in 0..args.random {
        let chi = ChiHom::from_primes(RANDOM_PRIMES.map(|p| (p, rng.gen_range(-3.0..3.0)))).map_err(usage)?;
        chis.push((format!("random#{i}"), chi));
    }
    let pairs: Vec<(Frac, Frac)> = (0..args.samples).map(|_| (random_open(&mut rng), random_open(&mut rng))).collect();
    let triples: Vec<[Frac; 3]> = (0..args.samples).map(|_| random_simplex3(&mut rng)).collect();
    let partition = [vec![0, 2], vec![1]];

    let mut rows = Table::new(&["chi", "cocycle", "symmetry", "sigma3", "partition", "witness"]);
    let mut listed = Vec::new();
    let mut passed = true;
    for (i, (label, chi)) in chis.iter().enumerate() {
        let c = check_cocycle(chi, &pairs).map_err(usage)?;
        let (mut perm, mut part) = (0.0f64, 0.0f64);
        for t in &triples {
            let r = check_symmetric_multi(chi, t, Some(&partition)).map_err(usage)?;
            perm = perm.max(r.permutation);
            part = part.max(r.partition.unwrap_or(0.0));
        }
        let witness = positivity_probe(chi, args.depth);
        let wit_s = witness.map_or("none".to_string(), |w| format!("{}^{}/{}^{}", w.p1, w.n1, w.p2, w.n2));
        let ok = c.cocycle < args.tol && c.symmetry < args.tol && perm < args.tol && part < args.tol;
        passed &= ok && (i > 0 || witness.is_none());
        rows.push(vec![
            label.clone(),
            format!("{:e}", c.cocycle),
            format!("{:e}", c.symmetry),
            format!("{perm:e}"),
            format!("{part:e}"),
            wit_s.clone(),
        ]);
        listed.push(json!({
            "chi": label,
            "cocycle": c.cocycle,
            "symmetry": c.symmetry,
            "sigma3": perm,
            "partition": part,
            "witness": witness.map(|w| json!({
                "p1": w.p1, "n1": w.n1, "p2": w.p2, "n2": w.n2,
                "alpha": w.alpha.to_string(), "log_w": w.log_w,
            })),
        }));
    }
    let notes = vec![format!(
        "{} characters, {} samples, probe depth {}, tolerance {:e}",
        chis.len(),
        args.samples,
        args.depth,
        args.tol
    )];
    Ok(Report { value: json!({"characters": listed}), table: rows, notes, passed })
}

fn run(args: &RunArgs) -> Result<Report, CliError> {
    let f = parse_fraction(&args.expr).map_err(usage)?;
    let schedule: Vec<f64> = match &args.schedule {
        Some(s) => s.split(',').map(|t| t.trim().parse::<f64>().map_err(usage)).collect::<Result<_, _>>()?,
        None => (0..=args.k_max).map(|k| 0.5f64.powi(k as i32)).collect(),
    };
    let mut rows = Table::new(&["T", "f(T)", "f(T)^T"]);
    let mut listed = Vec::new();
    for &t in &schedule {
        let v = f.eval(t).map_err(usage)?;
        let pw = f.eval_powered(t).map_err(usage)?;
        rows.push(vec![t.to_string(), v.to_string(), pw.to_string()]);
        listed.push(json!({"t": t, "value": v, "powered": pw}));
    }
    let alpha = ExpFraction::new(
        f.num().alpha_auto(args.lambda).map_err(usage)?,
        f.den().alpha_auto(args.lambda).map_err(usage)?,
    )
    .map_err(usage)?;
    let res = residue(&f).ok().map(|r| r.value());
    let res_t = residue_tilde(&f).0;
    let lim = limit_check(&f, args.k_max).map_err(usage)?;
    let last = *lim.last();
    let mut notes = vec![
        format!("f = {}", format_fraction(&f)),
        format!("alpha_{}(f) = {}", args.lambda, format_fraction(&alpha)),
        format!("residue = {}, signed residue = {res_t}", res.map_or("undefined".into(), |r| r.to_string())),
        format!("f(T)^T at T = {}: {} (relative error {:e})", last.t, last.value, last.rel_error),
    ];
    let mut passed = true;
    let mut membership = Value::Null;
    if let Some(g) = &args.with {
        let g = parse_fraction(g).map_err(usage)?;
        let ok = hyper_membership_check(&f, &g);
        passed &= ok;
        let sum = residue_tilde(&f.add(&g)).0;
        notes.push(format!("signed residue of f + g = {sum}; in the hypersum: {ok}"));
        membership = json!({
            "with": FractionJson::from(&g), "residue_tilde_g": residue_tilde(&g).0,
            "residue_tilde_sum": sum, "contains": ok,
        });
    }
    let value = json!({
        "fraction": FractionJson::from(&f),
        "text": format_fraction(&f),
        "alpha": {"lambda": args.lambda, "fraction": FractionJson::from(&alpha)},
        "residue": res,
        "residue_tilde": res_t,
        "schedule": listed,
        "limit": {"value": lim.limit, "t": last.t, "powered": last.value, "abs_error": last.abs_error,
                  "rel_error": last.rel_error, "fuzzy_merge": lim.fuzzy_merge},
        "membership": membership,
    });
    Ok(Report { value, table: rows, notes, passed })
}

fn parse_list(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(|x| parse_rational(x).map_err(usage)).collect()
}

fn rat_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn asym(args: &AsymArgs) -> Result<Report, CliError> {
    if let Some(b) = &args.b {
        let b = parse_list(b)?;
        let a = t_power_expand(&b).map_err(usage)?;
        let back = invert_expansion(&a).map_err(usage)?;
        let passed = back == b;
        let mut rows = Table::new(&["n", "a_n"]);
        for (n, c) in a.iter().enumerate() {
            rows.push(vec![n.to_string(), format_rational(c)]);
        }
        let notes = vec![format!("g(T)^T from {} coefficients; inversion recovers b: {passed}", b.len())];
        let value = json!({"b": rat_strings(&b), "a": rat_strings(&a), "roundtrip": passed});
        return Ok(Report { value, table: rows, notes, passed });
    }
    if let Some(a) = &args.a {
        let a = parse_list(a)?;
        let sol = solve_general(&a).map_err(usage)?;
        let back = general_expand(&a[0], &sol.log_scale, &sol.b).map_err(usage)?;
        let passed = back == a;
        let mut rows = Table::new(&["n", "b_n"]);
        for (n, c) in sol.b.iter().enumerate() {
            rows.push(vec![n.to_string(), format_rational(c)]);
        }
        let notes = vec![
            format!("ξ_0 = {}, log of the constant prefactor = {}", sol.xi0, format_rational(&sol.log_scale)),
            format!("re-expansion matches a: {passed}"),
        ];
        let value = json!({
            "a": rat_strings(&a), "b": rat_strings(&sol.b), "xi0": sol.xi0,
            "log_scale": format_rational(&sol.log_scale), "roundtrip": passed,
        });
        return Ok(Report { value, table: rows, notes, passed });
    }
    let n = match (args.symbolic, args.check_table) {
        (Some(n), false) => n,
        (None, true) | (Some(6), true) => 6,
        (Some(_), true) => return Err(usage("--check-table compares a_1..a_6; use --symbolic 6")),
        (None, false) => return Err(usage("one of --b, --a, --symbolic or --check-table is required")),
    };
    if n < 2 {
        return Err(usage("--symbolic needs N ≥ 2"));
    }
    let nv = n - 1;
    let mut b = vec![QPoly::one(nv)];
    b.extend((0..nv).map(|i| QPoly::var(nv, i)));
    let a = t_power_expand(&b).map_err(usage)?;
    let names: Vec<String> = (1..=nv).map(|i| format!("b_{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rows = Table::new(&["n", "a_n"]);
    let shown: Vec<String> = a.iter().map(|p| p.display_with(&refs)).collect();
    for (i, s) in shown.iter().enumerate() {
        rows.push(vec![i.to_string(), s.clone()]);
    }
    let mut passed = true;
    let mut notes = vec![format!("a_0..a_{n} in b_1..b_{nv}")];
    let mut check = Value::Null;
    if args.check_table {
        let table = fixtures::t_power_table().map_err(usage)?;
        let bad: Vec<usize> = table.iter().filter(|r| a[r.index] != r.poly).map(|r| r.index).collect();
        notes.push(format!("reference table: {} rows, {} mismatches", table.len(), bad.len()));
        passed = bad.is_empty();
        check = json!({"rows": table.len(), "mismatches": bad});
    }
    let value = json!({"n": n, "a": shown, "table_check": check});
    Ok(Report { value, table: rows, notes, passed })
}

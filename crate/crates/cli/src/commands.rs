use std::io::Write;

use cotanasym::asym::{
    c_tilde, figure_digits, figure_prediction, figure_quantity_with, residual_digits,
    residual_with, scaled_residual,
};
use cotanasym::cotangent::{cotangent_sum, g_direct, ReducedFraction};
use cotanasym::exact::{
    bernoulli_table_snapshot, load_bernoulli_cache, save_bernoulli_cache, seed_bernoulli_table,
};
use cotanasym::gn::{
    g_numeric, g_taylor_eval, guard_report, mantissa_exponent, recommend_digits, GnEvaluator,
    EXACT_PATH_MAX_N,
};
use cotanasym::oracle::{gn_oracle, QuadratureConfig};
use cotanasym::precision::{eval_pi_poly, MpFloat, Real};
use cotanasym::verify::{check_ids, run_check, SuiteMode};
use cotanasym::{Error, PrecisionContext};
use num_traits::{One, Signed};

use crate::output::Sink;
use crate::{Cli, Command, GlobalOpts};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    /// 2 for bad arguments, 3 for precision or convergence trouble, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::InvalidArgument(_) | Error::Domain(_)) => 2,
            CliError::Core(
                Error::InsufficientPrecision { .. } | Error::Convergence(_) | Error::NonFinite(_),
            ) => 3,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::InvalidArgument(msg.into()))
}

pub fn run<W: Write>(cli: &Cli, out: W) -> CliResult<()> {
    let g = &cli.global;
    if let Some(path) = &g.bernoulli_cache {
        seed_bernoulli_table(&load_bernoulli_cache(path)?);
    }
    match &cli.command {
        Command::Gn { n, count } => gn(g, out, *n, *count),
        Command::Cot { h, k } => cot(g, out, *h, *k),
        Command::Grecip { h, k, taylor_n } => grecip(g, out, *h, *k, *taylor_n),
        Command::Coeffs { max_l } => coeffs(g, out, *max_l),
        Command::Guard { n } => guard(g, out, n),
        Command::Residual {
            n_start,
            n_end,
            step,
            order,
        } => residual(g, out, *n_start, *n_end, *step, *order),
        Command::Figure {
            n_start,
            n_end,
            step,
        } => figure(g, out, *n_start, *n_end, *step),
        Command::Oracle { n, m_max } => oracle(g, out, *n, *m_max),
        Command::Verify { fast, ids } => verify(out, *fast, ids),
    }?;
    if let Some(path) = &g.bernoulli_cache {
        save_bernoulli_cache(path, &bernoulli_table_snapshot())?;
    }
    Ok(())
}

/// The context to compute in: `--digits` when given (with a warning if it is
/// below `recommended`), otherwise `recommended` itself.
fn context(g: &GlobalOpts, recommended: u64, what: &str) -> CliResult<PrecisionContext> {
    let digits = match g.digits {
        Some(d) => {
            if (d as u64) < recommended {
                eprintln!("warning: --digits {d} is below the {recommended} digits recommended for {what}");
            }
            d as u64
        }
        None => recommended,
    };
    let digits =
        u32::try_from(digits).map_err(|_| invalid(format!("{digits} digits is too many")))?;
    Ok(PrecisionContext::new(digits)?)
}

fn sink<W: Write>(g: &GlobalOpts, out: W, columns: &[&'static str]) -> CliResult<Sink<W>> {
    Ok(Sink::new(g.format, out, columns)?)
}

struct Fmt(usize);

impl Fmt {
    fn new(g: &GlobalOpts, ctx: &PrecisionContext) -> Self {
        Fmt(g.out_digits.min(ctx.digits()) as usize)
    }

    fn big(&self, v: &MpFloat) -> String {
        v.to_sci_string(self.0)
    }

    fn small(&self, v: f64) -> String {
        format!("{:.*e}", self.0.clamp(1, 17) - 1, v)
    }
}

fn inv(n: u64, ctx: &PrecisionContext) -> MpFloat {
    MpFloat::one() / MpFloat::from_i64(n as i64).at(ctx)
}

fn gn<W: Write>(g: &GlobalOpts, out: W, start: u64, count: u64) -> CliResult<()> {
    let end = start
        .checked_add(count - 1)
        .ok_or_else(|| invalid("index range overflows"))?;
    let ctx = context(g, residual_digits(end, 0, g.out_digits), "g_n - 1/n")?;
    ctx.require(recommend_digits(end, 10))?;
    let fmt = Fmt::new(g, &ctx);
    let evaluator = (end > EXACT_PATH_MAX_N).then(|| GnEvaluator::new(end, &ctx));
    let mut s = sink(g, out, &["n", "digits_used", "g_n", "g_n_minus_inv_n"])?;
    for n in start..=end {
        let value = match &evaluator {
            Some(ev) if n > EXACT_PATH_MAX_N => ev.g(n)?,
            _ => g_numeric(n, &ctx)?,
        };
        let diff = if n == 0 {
            String::new()
        } else {
            fmt.big(&(value.clone() - inv(n, &ctx)))
        };
        s.push(&[
            n.to_string(),
            ctx.digits().to_string(),
            fmt.big(&value),
            diff,
        ])?;
    }
    Ok(s.finish()?)
}

fn cot<W: Write>(g: &GlobalOpts, out: W, h: u64, k: u64) -> CliResult<()> {
    let f = ReducedFraction::new(h, k)?;
    let ctx = context(g, g.out_digits as u64 + 10, "the cotangent sum")?;
    let fmt = Fmt::new(g, &ctx);
    let value: MpFloat = cotangent_sum(&f, &ctx);
    let mut s = sink(g, out, &["h", "k", "c_value"])?;
    s.push(&[
        f.numer().to_string(),
        f.denom().to_string(),
        fmt.big(&value),
    ])?;
    Ok(s.finish()?)
}

fn grecip<W: Write>(g: &GlobalOpts, out: W, h: u64, k: u64, order: u64) -> CliResult<()> {
    let f = ReducedFraction::new(h, k)?;
    let recommended = recommend_digits(order, g.out_digits).max(g.out_digits as u64 + 10);
    let ctx = context(g, recommended, "the Taylor partial sum")?;
    ctx.require(recommend_digits(order, 10))?;
    let fmt = Fmt::new(g, &ctx);
    let taylor = g_taylor_eval(&f.to_rational(), order, &ctx)?;
    let direct: MpFloat = g_direct(&f, &ctx);
    let diff = (direct.clone() - taylor.clone()).abs();
    let mut s = sink(g, out, &["x", "g_direct", "g_taylor", "abs_diff"])?;
    s.push(&[
        f.to_string(),
        fmt.big(&direct),
        fmt.big(&taylor),
        fmt.big(&diff),
    ])?;
    Ok(s.finish()?)
}

fn coeffs<W: Write>(g: &GlobalOpts, out: W, max_l: u32) -> CliResult<()> {
    let ctx = context(
        g,
        g.out_digits as u64 + 10 + max_l as u64 / 10,
        "the coefficient values",
    )?;
    let fmt = Fmt::new(g, &ctx);
    let mut s = sink(g, out, &["l", "exact", "numeric", "sign"])?;
    for l in 0..=max_l {
        let c = c_tilde(l);
        let v: MpFloat = eval_pi_poly(&c.value, &ctx);
        let sign = if v.is_negative() { "-1" } else { "1" };
        s.push(&[l.to_string(), c.value.to_string(), fmt.big(&v), sign.into()])?;
    }
    Ok(s.finish()?)
}

fn guard<W: Write>(g: &GlobalOpts, out: W, ns: &[u64]) -> CliResult<()> {
    let fmt = Fmt(g.out_digits as usize);
    let mut s = sink(
        g,
        out,
        &[
            "n",
            "log10_G1",
            "log10_Ginf",
            "recommended_digits",
            "G1_mantissa",
            "G1_exponent",
            "Ginf_mantissa",
            "Ginf_exponent",
        ],
    )?;
    for &n in ns {
        let r = guard_report(n, g.out_digits)?;
        let (m1, e1) = mantissa_exponent(r.log10_g1);
        let (mi, ei) = mantissa_exponent(r.log10_ginf);
        s.push(&[
            n.to_string(),
            fmt.small(r.log10_g1),
            fmt.small(r.log10_ginf),
            r.recommended_digits.to_string(),
            fmt.small(m1),
            e1.to_string(),
            fmt.small(mi),
            ei.to_string(),
        ])?;
    }
    Ok(s.finish()?)
}

fn check_range(start: u64, end: u64) -> CliResult<()> {
    if start < 2 || start > end {
        return Err(invalid(format!(
            "need 2 <= n-start <= n-end, got {start}..{end}"
        )));
    }
    Ok(())
}

fn residual<W: Write>(
    g: &GlobalOpts,
    out: W,
    start: u64,
    end: u64,
    step: u64,
    order: u32,
) -> CliResult<()> {
    check_range(start, end)?;
    let ctx = context(g, residual_digits(end, order, g.out_digits), "the residual")?;
    ctx.require(residual_digits(end, order, 10))?;
    let fmt = Fmt::new(g, &ctx);
    let ev = GnEvaluator::new(end, &ctx);
    let mut s = sink(g, out, &["n", "residual", "scaled_residual"])?;
    for n in (start..=end).step_by(step as usize) {
        let r = residual_with(&ev, n, order)?;
        let scaled = scaled_residual(&ev, n, order)?;
        s.push(&[n.to_string(), fmt.big(&r), fmt.big(&scaled)])?;
    }
    Ok(s.finish()?)
}

fn figure<W: Write>(g: &GlobalOpts, out: W, start: u64, end: u64, step: u64) -> CliResult<()> {
    check_range(start, end)?;
    let ctx = context(g, figure_digits(end, g.out_digits), "the figure quantity")?;
    ctx.require(figure_digits(end, 10))?;
    let fmt = Fmt::new(g, &ctx);
    let ev = GnEvaluator::new(end, &ctx);
    let mut s = sink(g, out, &["n", "figure_quantity", "predicted_l5_term"])?;
    for n in (start..=end).step_by(step as usize) {
        let value = figure_quantity_with(&ev, n)?;
        let predicted: MpFloat = figure_prediction(n, &ctx);
        s.push(&[n.to_string(), fmt.big(&value), fmt.big(&predicted)])?;
    }
    Ok(s.finish()?)
}

fn oracle<W: Write>(g: &GlobalOpts, out: W, n: u32, m_max: u64) -> CliResult<()> {
    // Absolute quadrature target: the requested digits relative to the size
    // e^{-2 sqrt(pi n)} of g_n - 1/n, kept inside the f64 range.
    let decay = 2.0 * (std::f64::consts::PI * n as f64).sqrt() / std::f64::consts::LN_10;
    let target_digits = (g.out_digits as f64 + decay + 2.0).min(290.0);
    let recommended =
        residual_digits(n as u64, 0, g.out_digits).max(target_digits.ceil() as u64 + 10);
    let ctx = context(g, recommended, "the oracle comparison")?;
    let q = QuadratureConfig::new(10f64.powf(-target_digits), 14)?;
    let fmt = Fmt::new(g, &ctx);
    let exact = g_numeric(n as u64, &ctx)? - inv(n as u64, &ctx);
    let value: MpFloat = gn_oracle(n, m_max, &ctx, &q)?;
    let rel = ((value.clone() - exact.clone()) / exact.clone()).abs();
    let mut s = sink(g, out, &["n", "oracle_value", "exact_value", "rel_err"])?;
    s.push(&[
        n.to_string(),
        fmt.big(&value),
        fmt.big(&exact),
        fmt.big(&rel),
    ])?;
    Ok(s.finish()?)
}

fn verify<W: Write>(mut out: W, fast: bool, ids: &[String]) -> CliResult<()> {
    let mode = if fast {
        SuiteMode::Fast
    } else {
        SuiteMode::Full
    };
    if let Some(bad) = ids
        .iter()
        .find(|r| !check_ids().any(|id| id.eq_ignore_ascii_case(r)))
    {
        return Err(invalid(format!("unknown check {bad:?}")));
    }
    let mut failed = 0;
    for id in
        check_ids().filter(|id| ids.is_empty() || ids.iter().any(|r| r.eq_ignore_ascii_case(id)))
    {
        let outcome = run_check(id, mode).expect("id comes from check_ids");
        writeln!(out, "{outcome}")?;
        out.flush()?;
        failed += usize::from(!outcome.passed);
    }
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}

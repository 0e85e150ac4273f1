//! Command dispatch.

use std::fmt::Display;

use frobsig_core::covers::{
    divisor_check, ramification, transpose, verify_fsig_rule, verify_sandwich, verify_sigma_rule, verify_sp_rule,
    verify_tau_rule, CoverSpec, TransposeTable,
};
use frobsig_core::divisor::DivisorQ;
use frobsig_core::frobenius::{
    fedder_data, fedder_fpure, fsignature_estimate, splitting_number, splitting_prime, splitting_ratio, CartierSpec,
    SplittingReport,
};
use frobsig_core::ideal::monomials_of_degree;
use frobsig_core::pairs::{sigma, tau, PairContext};
use frobsig_core::rational::{format_q, parse_q};
use frobsig_core::{suite, Error, Poly, QuotientPresentation};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{load_config, Host, RunConfig};
use crate::output::{render, Outcome, Settings, Table};
use crate::Cli;

pub const OK: i32 = 0;
pub const RULE_FAILED: i32 = 1;
pub const CONFIG_ERROR: i32 = 2;
pub const NOT_STABILIZED: i32 = 3;

pub const COMMANDS: &[&str] = &[
    "fedder",
    "ae",
    "fsig",
    "sp",
    "ratio",
    "tau",
    "sigma",
    "cover-trace",
    "cover-norm",
    "cover-minpoly",
    "cover-ram",
    "transpose",
    "verify-fsig",
    "verify-sp",
    "verify-tau",
    "verify-sigma",
    "verify-sandwich",
    "paper-suite",
    "run",
];

/// A failure that maps to exit code 2.
struct Fail(String);

impl<E: Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

type CmdResult = Result<Outcome, Fail>;

fn threads() -> Result<Option<usize>, String> {
    match std::env::var("FROBSIG_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("FROBSIG_THREADS must be a positive integer, got `{s}`")),
        },
    }
}

pub fn main_with(cli: &Cli) -> i32 {
    let threads = match threads() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return CONFIG_ERROR;
        }
    };
    if let Some(n) = threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut settings = Settings {
        char: None,
        e_max: cli.e_max,
        e_window: cli.e_window,
        degree_bound: cli.degree_bound,
        format: cli.format,
        t: cli.t.clone(),
        threads,
    };
    let config_name = cli.config.as_ref().map(|p| p.display().to_string());
    let (command, p, outcome) = match dispatch(cli) {
        Ok(x) => x,
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            return CONFIG_ERROR;
        }
    };
    settings.char = p;
    let text = match render(&command, config_name, &settings, &outcome) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return CONFIG_ERROR;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return CONFIG_ERROR;
            }
        }
        None => print!("{text}"),
    }
    outcome.exit
}

fn dispatch(cli: &Cli) -> Result<(String, Option<u32>, Outcome), Fail> {
    let mut command = cli.command.clone();
    if !COMMANDS.contains(&command.as_str()) {
        return Err(Fail(format!("unknown command `{command}`; expected one of {}", COMMANDS.join(", "))));
    }
    if command == "paper-suite" {
        return Ok((command, None, paper_suite()));
    }
    let Some(path) = &cli.config else {
        return Err(Fail(format!("`{command}` needs a configuration file")));
    };
    let cfg = load_config(path)?;
    if command == "run" {
        command = cfg.command.clone().ok_or_else(|| Fail("invalid field `command`: missing (needed by `run`)".into()))?;
        if command == "run" || !COMMANDS.contains(&command.as_str()) {
            return Err(Fail(format!("invalid field `command`: unknown command `{command}`")));
        }
        if command == "paper-suite" {
            return Ok((command, None, paper_suite()));
        }
    }
    let ctx = Ctx { cli, cfg: &cfg };
    let outcome = match command.as_str() {
        "fedder" => ctx.fedder(),
        "ae" => ctx.ae(),
        "fsig" => ctx.fsig(),
        "sp" => ctx.sp(),
        "ratio" => ctx.ratio(),
        "tau" => ctx.tau_sigma(true),
        "sigma" => ctx.tau_sigma(false),
        "cover-trace" => ctx.cover_trace(),
        "cover-norm" => ctx.cover_norm(),
        "cover-minpoly" => ctx.cover_minpoly(),
        "cover-ram" => ctx.cover_ram(),
        "transpose" => ctx.transpose(),
        "verify-fsig" => ctx.verify_fsig(),
        "verify-sp" => ctx.verify_sp(),
        "verify-tau" => ctx.verify_ideal(true),
        "verify-sigma" => ctx.verify_ideal(false),
        "verify-sandwich" => ctx.verify_sandwich(),
        _ => unreachable!("checked against COMMANDS"),
    }?;
    Ok((command, Some(cfg.p), outcome))
}

fn paper_suite() -> Outcome {
    let criteria = suite::criteria();
    let outcomes: Vec<suite::CriterionOutcome> = criteria.par_iter().map(|c| c.run()).collect();
    let mut table = Table::new(&["criterion", "name", "verdict", "seconds", "budget", "detail"]);
    for o in &outcomes {
        table.push(vec![
            o.id.to_string(),
            o.name.to_string(),
            if o.pass { "PASS" } else { "FAIL" }.to_string(),
            format!("{:.2}", o.seconds),
            format!("{}", o.budget_seconds),
            o.detail.clone(),
        ]);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let exit = if passed == outcomes.len() { OK } else { RULE_FAILED };
    Outcome::new(&outcomes, vec![format!("{passed} of {} criteria passed", outcomes.len())]).with_table(table).exit(exit)
}

struct Ctx<'a> {
    cli: &'a Cli,
    cfg: &'a RunConfig,
}

fn e_table(report: &SplittingReport) -> Table {
    let mut t = Table::new(&["e", "q", "a_e", "ratio"]);
    for r in &report.rows {
        t.push(vec![r.e.to_string(), r.q.to_string(), r.a_e.to_string(), format_q(&r.ratio)]);
    }
    t
}

fn summary(report: &SplittingReport) -> String {
    format!(
        "estimate {} (~{:.6}) ± {}, δ = {}{}",
        format_q(&report.estimate),
        report.estimate_f64,
        format_q(&report.error_bar),
        report.delta,
        if report.stabilized { ", stabilized" } else { "" }
    )
}

fn paren(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".into()
    } else {
        format!("({})", gens.join(", "))
    }
}

fn stab_code(stabilized: bool) -> i32 {
    if stabilized {
        OK
    } else {
        NOT_STABILIZED
    }
}

fn rule_code(ok: bool) -> i32 {
    if ok {
        OK
    } else {
        RULE_FAILED
    }
}

impl Ctx<'_> {
    /// `ring`, else the cover's total ring.
    fn ring(&self) -> Result<&QuotientPresentation, Fail> {
        self.cfg
            .ring
            .as_ref()
            .or(self.cfg.cover.as_ref().map(|c| c.total()))
            .ok_or_else(|| Fail("invalid field `ring`: missing (needed by this command)".into()))
    }

    fn cover(&self) -> Result<&CoverSpec, Fail> {
        self.cfg.cover.as_ref().ok_or_else(|| Fail("invalid field `cover`: missing (needed by this command)".into()))
    }

    /// The configured Cartier data on `host`, with `--t` applied to the divisor.
    fn spec(&self, host: Host) -> Result<CartierSpec, Fail> {
        let spec = match &self.cfg.cartier {
            None => CartierSpec::Full,
            Some((h, s)) if *h == host => s.clone(),
            Some((h, _)) => {
                let (lives, wanted) = match h {
                    Host::Ring => ("ring", "cover.base"),
                    Host::Base => ("cover.base", "ring"),
                };
                return Err(Fail(format!("invalid field `cartier`: it lives on {lives} but this command reads {wanted}")));
            }
        };
        let Some(t) = &self.cli.t else {
            return Ok(spec);
        };
        let t = parse_q(t).map_err(|e| Fail(format!("--t: {e}")))?;
        match spec {
            CartierSpec::Pair { divisor, ideal_part } => Ok(CartierSpec::Pair { divisor: divisor.scale(t), ideal_part }),
            _ => Err(Fail("--t needs a cartier block of kind `pair`".into())),
        }
    }

    /// The divisor of a pair spec, zero for `full`.
    fn divisor_on(&self, p: &QuotientPresentation) -> Result<DivisorQ, Fail> {
        match self.spec(Host::Base)? {
            CartierSpec::Full => Ok(DivisorQ::zero(p.ambient())),
            CartierSpec::Pair { divisor, ideal_part: None } => Ok(divisor),
            _ => Err(Fail("invalid field `cartier`: this command needs a plain divisor pair".into())),
        }
    }

    fn fedder(&self) -> CmdResult {
        let p = self.ring()?;
        let spec = self.spec(Host::Ring)?;
        let (fpure, u1) = match &spec {
            CartierSpec::Full => (fedder_fpure(p), fedder_data(&spec, p, 1)?.u),
            _ => {
                let mut any = false;
                for e in 1..=self.cli.e_max.max(1) {
                    match splitting_number(p, &spec, e) {
                        Ok(a) if a > 0 => {
                            any = true;
                            break;
                        }
                        Ok(_) | Err(Error::NonEffective(_)) => {}
                        Err(err) => return Err(err.into()),
                    }
                }
                (any, fedder_data(&spec, p, 1).map(|d| d.u).unwrap_or_else(|_| frobsig_core::Ideal::zero(p.ambient())))
            }
        };
        #[derive(Serialize)]
        struct R {
            cartier: String,
            f_pure: bool,
            fedder_ideal_e1: frobsig_core::Ideal,
        }
        let verdict = if fpure { "F-pure" } else { "not F-pure" };
        Ok(Outcome::new(R { cartier: spec.describe(), f_pure: fpure, fedder_ideal_e1: u1 }, vec![verdict.into()]))
    }

    fn ae(&self) -> CmdResult {
        let p = self.ring()?;
        let spec = self.spec(Host::Ring)?;
        let report = fsignature_estimate(p, &spec, self.cli.e_max)?;
        #[derive(Serialize)]
        struct Row {
            e: u32,
            q: u64,
            a_e: u64,
        }
        let rows: Vec<Row> = report.rows.iter().map(|r| Row { e: r.e, q: r.q, a_e: r.a_e }).collect();
        let mut t = Table::new(&["e", "q", "a_e"]);
        for r in &rows {
            t.push(vec![r.e.to_string(), r.q.to_string(), r.a_e.to_string()]);
        }
        Ok(Outcome::new(rows, vec![]).with_table(t))
    }

    fn fsig(&self) -> CmdResult {
        let p = self.ring()?;
        let report = fsignature_estimate(p, &self.spec(Host::Ring)?, self.cli.e_max)?;
        let line = summary(&report);
        Ok(Outcome::new(&report, vec![line]).with_table(e_table(&report)))
    }

    fn sp(&self) -> CmdResult {
        let p = self.ring()?;
        let sp = splitting_prime(p, &self.spec(Host::Ring)?, self.cli.e_max)?;
        let line = format!("sp = {}{}", paren(&sp.ideal), if sp.stabilized { "" } else { " (not stabilized)" });
        let code = stab_code(sp.stabilized);
        Ok(Outcome::new(&sp, vec![line]).exit(code))
    }

    fn ratio(&self) -> CmdResult {
        let p = self.ring()?;
        let (report, sp) = splitting_ratio(p, &self.spec(Host::Ring)?, self.cli.e_max)?;
        #[derive(Serialize)]
        struct R<'a> {
            splitting_prime: &'a frobsig_core::frobenius::StabilizedIdeal,
            report: &'a SplittingReport,
        }
        let lines = vec![format!("sp = {}", paren(&sp.ideal)), summary(&report)];
        let code = stab_code(sp.stabilized);
        Ok(Outcome::new(R { splitting_prime: &sp, report: &report }, lines).with_table(e_table(&report)).exit(code))
    }

    fn tau_sigma(&self, is_tau: bool) -> CmdResult {
        let p = self.ring()?;
        let spec = self.spec(Host::Ring)?;
        let ctx = match spec {
            CartierSpec::Full => PairContext::new(p.clone(), DivisorQ::zero(p.ambient())),
            CartierSpec::Pair { divisor, ideal_part } => PairContext { presentation: p.clone(), divisor, ideal_part },
            CartierSpec::Principal { .. } => return Err(Fail("invalid field `cartier.kind`: tau and sigma need a pair".into())),
        };
        let r = if is_tau { tau(&ctx, self.cli.e_window)? } else { sigma(&ctx, self.cli.e_window)? };
        let name = if is_tau { "τ" } else { "σ" };
        let line = format!("{name} = {}{}", paren(&r.ideal), if r.stabilized { "" } else { " (not stabilized)" });
        let code = stab_code(r.stabilized);
        Ok(Outcome::new(&r, vec![line]).exit(code))
    }

    /// `--element` values parsed on the total ring, else the basis.
    fn total_elements(&self, cover: &CoverSpec) -> Result<Vec<Poly>, Fail> {
        if self.cli.element.is_empty() {
            return Ok(cover.basis().to_vec());
        }
        self.cli
            .element
            .iter()
            .map(|s| cover.total().parse_poly(s).map_err(|e| Fail(format!("--element `{s}`: {e}"))))
            .collect()
    }

    fn cover_values<F>(&self, label: &str, f: F) -> CmdResult
    where
        F: Fn(&CoverSpec, &Poly) -> Result<String, Fail>,
    {
        let cover = self.cover()?;
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        for s in self.total_elements(cover)? {
            let v = f(cover, &s)?;
            lines.push(format!("{label}({s}) = {v}"));
            rows.push((s.to_string(), v));
        }
        #[derive(Serialize)]
        struct Row {
            element: String,
            value: String,
        }
        let rows: Vec<Row> = rows.into_iter().map(|(element, value)| Row { element, value }).collect();
        Ok(Outcome::new(rows, lines))
    }

    fn cover_trace(&self) -> CmdResult {
        self.cover_values("Tr", |c, s| Ok(c.trace_of(s).to_string()))
    }

    fn cover_norm(&self) -> CmdResult {
        self.cover_values("Norm", |c, s| Ok(c.norm_of(s).to_string()))
    }

    fn cover_minpoly(&self) -> CmdResult {
        self.cover_values("minpoly", |c, s| Ok(c.min_poly(s)?.to_string()))
    }

    fn cover_ram(&self) -> CmdResult {
        let cover = self.cover()?;
        let t = self.cfg.section(cover);
        let r = ramification(cover, &t)?.report();
        let lines = vec![
            format!("T = ({}) · {}", r.rho, r.generator),
            format!("Ram_T = {}", r.ram),
            format!("Branch_T = {} (unit {})", r.branch, r.unit),
        ];
        Ok(Outcome::new(&r, lines))
    }

    fn transpose(&self) -> CmdResult {
        let cover = self.cover()?;
        let t = self.cfg.section(cover);
        let e = self.cli.e;
        if e == 0 {
            return Err(Fail("--e must be at least 1".into()));
        }
        let ram = ramification(cover, &t)?;
        let table = TransposeTable::new(cover, &t, e);
        let rb = cover.base().ambient();
        let elements: Vec<Poly> = if self.cli.element.is_empty() {
            let bound = self.cli.degree_bound.unwrap_or(2);
            (0..=bound).flat_map(|d| monomials_of_degree(rb.nvars(), d)).map(|m| Poly::monomial(rb, m, 1)).collect()
        } else {
            self.cli
                .element
                .iter()
                .map(|s| cover.base().parse_poly(s).map_err(|er| Fail(format!("--element `{s}`: {er}"))))
                .collect::<Result<_, _>>()?
        };
        #[derive(Serialize)]
        struct Row {
            element: String,
            transposable: bool,
            divisor_check: bool,
            predicted: String,
            transpose: Option<String>,
        }
        let rows: Vec<Row> = elements
            .par_iter()
            .map(|a| {
                let w = transpose(cover, &ram, &table, a);
                let chk = divisor_check(cover, &ram, a, e);
                Row {
                    element: a.to_string(),
                    transposable: w.is_some(),
                    divisor_check: chk.transposable,
                    predicted: chk.predicted,
                    transpose: w.map(|m| m.u.to_string()),
                }
            })
            .collect();
        let mut tab = Table::new(&["element", "transposable", "divisor check", "transpose"]);
        for r in &rows {
            tab.push(vec![
                r.element.clone(),
                r.transposable.to_string(),
                r.divisor_check.to_string(),
                r.transpose.clone().unwrap_or_else(|| "-".into()),
            ]);
        }
        let agree = rows.iter().all(|r| r.transposable == r.divisor_check);
        let line = format!("e = {e}, ρ = {}; solver and divisor check {}", ram.rho, if agree { "agree" } else { "disagree" });
        Ok(Outcome::new(rows, vec![line]).with_table(tab))
    }

    fn verify_fsig(&self) -> CmdResult {
        let cover = self.cover()?;
        let t = self.cfg.section(cover);
        let delta = self.divisor_on(cover.base())?;
        let r = verify_fsig_rule(cover, &t, &delta, self.cli.e_max)?;
        let mut lines = vec![format!("Δ* = {}", r.delta_star)];
        match &r.violated {
            Some(v) => lines.push(format!("precondition violated: {v}")),
            None => lines.push(format!(
                "residual {:.6} (tolerance {:.6}): {}",
                r.residual.unwrap_or(f64::NAN),
                r.tolerance.unwrap_or(f64::NAN),
                if r.ok { "rule holds" } else { "rule fails" }
            )),
        }
        let mut tab = Table::new(&["side", "e", "q", "a_e", "ratio"]);
        for (side, rep) in [("S", &r.upstairs), ("R", &r.downstairs)] {
            if let Some(rep) = rep {
                for row in &rep.rows {
                    tab.push(vec![side.into(), row.e.to_string(), row.q.to_string(), row.a_e.to_string(), format_q(&row.ratio)]);
                }
            }
        }
        let code = rule_code(r.ok);
        Ok(Outcome::new(&r, lines).with_table(tab).exit(code))
    }

    fn verify_sp(&self) -> CmdResult {
        let cover = self.cover()?;
        let t = self.cfg.section(cover);
        let spec = self.spec(Host::Base)?;
        let r = verify_sp_rule(cover, &t, &spec, self.cli.e_max)?;
        let mut lines = vec![
            format!("Δ* = {}", r.delta_star),
            format!("sp_S = {}, contraction {}, sp_R = {}", paren(&r.sp_up.ideal), paren(&r.contraction), paren(&r.sp_down.ideal)),
        ];
        if let Some(v) = &r.violated {
            lines.push(format!("precondition violated: {v}"));
        }
        if let (Some(d), Some(res)) = (r.residue_degree, r.residual) {
            lines.push(format!("residue degree {d}, ratio residual {res:.6}"));
        }
        lines.push(if r.equal { "contraction equals sp_R".into() } else { "contraction differs from sp_R".into() });
        let code = if !r.sp_up.stabilized || !r.sp_down.stabilized { NOT_STABILIZED } else { rule_code(r.equal) };
        Ok(Outcome::new(&r, lines).exit(code))
    }

    fn verify_ideal(&self, is_tau: bool) -> CmdResult {
        let cover = self.cover()?;
        let t = self.cfg.section(cover);
        let delta = self.divisor_on(cover.base())?;
        let w = self.cli.e_window;
        let r = if is_tau { verify_tau_rule(cover, &t, &delta, w)? } else { verify_sigma_rule(cover, &t, &delta, w)? };
        let name = if is_tau { "τ" } else { "σ" };
        let lines = vec![
            format!("Δ* = {}", r.delta_star),
            format!("{name}_S = {}", paren(&r.upstairs.ideal)),
            format!("T({name}_S) = {}, {name}_R = {}", paren(&r.image), paren(&r.downstairs.ideal)),
            if r.equal {
                "equality".into()
            } else if r.contained {
                "containment only".into()
            } else {
                "rule fails".into()
            },
        ];
        let code = if !r.upstairs.stabilized || !r.downstairs.stabilized { NOT_STABILIZED } else { rule_code(r.ok) };
        Ok(Outcome::new(&r, lines).exit(code))
    }

    fn verify_sandwich(&self) -> CmdResult {
        let cover = self.cover()?;
        let t = self.cfg.section(cover);
        let r = verify_sandwich(cover, &t, self.cli.e_max, self.cli.signature)?;
        let mut tab = Table::new(&["e", "lower", "upper", "equals lower", "equals upper", "transposable ideal"]);
        for row in &r.rows {
            tab.push(vec![
                row.e.to_string(),
                row.lower.to_string(),
                row.upper.to_string(),
                row.equals_lower.to_string(),
                row.equals_upper.to_string(),
                paren(&row.transposable_ideal),
            ]);
        }
        let mut lines = vec![format!("Δ = {}, c = {}, torsion exponent {}", r.delta, r.c, r.torsion_exponent)];
        if let (Some(s), Some(l)) = (r.total_signature, r.lower_bound) {
            lines.push(format!("s(S) ≈ {s:.6} >= {l:.6}"));
        }
        lines.push(if r.ok { "sandwich holds".into() } else { "sandwich fails".into() });
        let code = rule_code(r.ok);
        Ok(Outcome::new(&r, lines).with_table(tab).exit(code))
    }
}

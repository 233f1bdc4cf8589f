//! `verify-d4`: rebuilds every irreducible character of W(D4) from Specht
//! modules and compares with the character table.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use specht_core::chartab::{parse_rows, scalars};
use specht_core::exact::{Field, Scalar};
use specht_core::specht::Mode;

use crate::commands::{series_record, specht_record, Ctx};
use crate::error::CliError;
use crate::output::{emit, join_values, Format, Render};
use crate::par;

/// Good systems `(J, J', printed label)`.
pub const GOOD_SYSTEMS: [(&str, &str, &str); 11] = [
    ("1000,0100,0010", "1101,0111", "χ4"),
    ("1000,0100,0001", "1110,0111", "χ9"),
    ("0100,0010,0001", "1110,1101", "χ5"),
    ("1000,1211,0010,0001", "1100,0110,0101", "χ3"),
    ("1000,0010,0001", "1111,0100", "χ13"),
    ("1000,0100", "1110,1101,0111", "χ13"),
    ("1000,0010", "0001,1100,0110", "χ7"),
    ("1000,0001", "0010,0101,1100", "χ6"),
    ("0010,0001", "1000,0101,0110", "χ8"),
    ("1000,0100,0010,0001", "-", "χ1"),
    ("-", "1000,0100,0010,0001", "χ2"),
];

/// The G2-type Steinberg pair.
pub const STEINBERG_PAIR: (&str, &str, &str) = ("1/3(1000+0010+0001),0100", "0001,0110", "χ12");

/// `(J, smaller J', larger J', mode, label of the quotient)`.
pub const SERIES: [(&str, &str, &str, Mode, &str); 2] = [
    ("1000,0100,0010", "1101", "1101,0111", Mode::Subsystem, "χ11"),
    ("1000", "0100,0001,0010", "0100,0001,1/2(1000+1211)", Mode::Coset, "χ10"),
];

#[derive(Clone, Copy)]
enum Check {
    Good(usize),
    Steinberg,
    Series(usize),
}

#[derive(Serialize)]
pub struct CheckRecord {
    pub check: usize,
    pub kind: &'static str,
    pub j: String,
    pub j_prime: String,
    pub submodule: Option<String>,
    pub expected: String,
    pub computed: String,
    pub dimension: Option<usize>,
    pub character: Vec<Value>,
    pub pass: bool,
    pub error: Option<String>,
}

impl Render for CheckRecord {
    fn render(&self) -> String {
        let cols = match &self.submodule {
            Some(sub) => format!("{} / {}", self.j_prime, sub),
            None => self.j_prime.clone(),
        };
        let dim = self.dimension.map_or(String::new(), |d| format!(" dim {d}"));
        let mut s = format!(
            "[{:>2}] {} {:<10} J = {:<22} J' = {:<30} expected {:<4} computed {:<4}{dim}",
            self.check,
            if self.pass { "PASS" } else { "FAIL" },
            self.kind,
            self.j,
            cols,
            self.expected,
            self.computed,
        );
        if !self.pass && !self.character.is_empty() {
            s += &format!("\n     character {}", join_values(&self.character));
        }
        if let Some(e) = &self.error {
            s += &format!("\n     error: {e}");
        }
        s
    }
}

#[derive(Serialize)]
pub struct TableCheckRecord {
    pub table: String,
    pub self_check: bool,
    pub error: Option<String>,
}

impl Render for TableCheckRecord {
    fn render(&self) -> String {
        match &self.error {
            None => format!("table {}: orthogonality and degree sum hold", self.table),
            Some(e) => format!("table {}: self-check failed: {e}", self.table),
        }
    }
}

#[derive(Serialize)]
pub struct SummaryRecord {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Render for SummaryRecord {
    fn render(&self) -> String {
        format!("{} of {} checks passed", self.passed, self.checks)
    }
}

fn expected_row(ctx: &Ctx, label: &str) -> Option<Vec<Scalar>> {
    ctx.table.as_ref()?.row(label).map(|r| scalars(&r.values))
}

fn run_check(ctx: &Ctx, index: usize, check: Check) -> CheckRecord {
    let (kind, j, jp, sub, label) = match check {
        Check::Good(i) => ("good", GOOD_SYSTEMS[i].0, GOOD_SYSTEMS[i].1, None, GOOD_SYSTEMS[i].2),
        Check::Steinberg => ("steinberg", STEINBERG_PAIR.0, STEINBERG_PAIR.1, None, STEINBERG_PAIR.2),
        Check::Series(i) => ("series", SERIES[i].0, SERIES[i].1, Some(SERIES[i].2), SERIES[i].4),
    };
    let mut rec = CheckRecord {
        check: index,
        kind,
        j: j.into(),
        j_prime: jp.into(),
        submodule: sub.map(str::to_string),
        expected: label.into(),
        computed: String::new(),
        dimension: None,
        character: Vec::new(),
        pass: false,
        error: None,
    };
    let want = expected_row(ctx, label);
    let outcome: Result<(), CliError> = (|| {
        let chi: Vec<Value>;
        match check {
            Check::Good(_) | Check::Steinberg => {
                let mode = if matches!(check, Check::Steinberg) { Mode::Coset } else { Mode::Subsystem };
                let r = specht_record(ctx, j, jp, mode, Field::Rational)?;
                rec.j = r.j;
                rec.j_prime = r.j_prime;
                rec.dimension = r.dimension;
                rec.computed = r.identified.unwrap_or_default();
                chi = r.character.unwrap_or_default();
                let sound = r.useful && r.good == Some(true);
                if !sound {
                    rec.error = Some("pair is not a good system".into());
                }
                rec.pass = sound;
            }
            Check::Series(i) => {
                let r = series_record(ctx, j, jp, sub.expect("series"), SERIES[i].3)?;
                rec.j = r.j;
                rec.j_prime = r.smaller;
                rec.submodule = Some(r.larger);
                rec.dimension = Some(r.module_dimension - r.submodule_dimension);
                rec.computed = r.identified.unwrap_or_default();
                chi = r.quotient;
                rec.pass = r.submodule_contained;
            }
        }
        let matches = want.as_ref().is_some_and(|w| {
            w.len() == chi.len() && w.iter().zip(&chi).all(|(a, b)| a.to_i64().is_some_and(|x| b.as_i64() == Some(x)))
        });
        rec.pass &= matches;
        rec.character = chi;
        Ok(())
    })();
    if let Err(e) = outcome {
        rec.pass = false;
        rec.error = Some(e.to_string());
    }
    rec
}

pub fn run<W: Write>(out: &mut W, format: Format, jobs: usize, table: Option<&Path>) -> Result<(), CliError> {
    let mut ctx = Ctx::new("D4")?;
    let source = match table {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let rows = parse_rows(&text)?;
            let t = ctx.table.as_ref().expect("D4 has a table").with_rows(rows)?;
            ctx.table = Some(t);
            path.display().to_string()
        }
        None => "built-in".to_string(),
    };
    let self_check = ctx.table.as_ref().expect("D4 has a table").self_check();
    let table_rec = TableCheckRecord {
        table: source,
        self_check: self_check.is_ok(),
        error: self_check.as_ref().err().map(|e| e.to_string()),
    };
    emit(out, format, &table_rec)?;
    if self_check.is_err() {
        return Err(CliError::Mismatch(1));
    }

    let mut checks: Vec<Check> = (0..GOOD_SYSTEMS.len()).map(Check::Good).collect();
    checks.push(Check::Steinberg);
    checks.extend((0..SERIES.len()).map(Check::Series));
    let indexed: Vec<(usize, Check)> = checks.into_iter().enumerate().map(|(i, c)| (i + 1, c)).collect();
    let recs = par::map(jobs, &indexed, |&(i, c)| run_check(&ctx, i, c));
    let failed = recs.iter().filter(|r| !r.pass).count();
    for r in &recs {
        emit(out, format, r)?;
    }
    emit(out, format, &SummaryRecord { checks: recs.len(), passed: recs.len() - failed, failed })?;
    if failed > 0 {
        return Err(CliError::Mismatch(failed));
    }
    Ok(())
}

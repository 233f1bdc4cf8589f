use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use specht_core::chartab::{d4_table, CharacterTable};
use specht_core::exact::Field;
use specht_core::roots::{build_root_system, CartanLabel, CartanType};
use specht_core::specht::{
    check_good, check_useful, polytabloid, specht_series_quotient, tabloids, Mode, Pair, Side, SpechtModule,
};
use specht_core::subsys::{enumerate_extended_subsystems, enumerate_subsystems, Subsystem};
use specht_core::weyl::{conjugacy_classes, distinguished_reps, enumerate_group, ElemId, WeylGroup};

use crate::error::{CliError, EXIT_UNSUPPORTED};
use crate::output::{emit, join_values, kv, scalar_row, scalar_value, yes_no, Render};
use crate::{par, verify, Cli, Command, PairArgs};

/// The group plus the class representatives characters are evaluated on.
pub struct Ctx {
    pub g: WeylGroup,
    pub table: Option<CharacterTable>,
    pub class_words: Vec<String>,
    pub reps: Vec<ElemId>,
}

impl Ctx {
    pub fn new(label: &str) -> Result<Ctx, CliError> {
        let label: CartanLabel = label.parse()?;
        let g = enumerate_group(build_root_system(label)?)?;
        let table = if label == CartanLabel::new(CartanType::D, 4) { Some(d4_table(&g)?) } else { None };
        let reps = match &table {
            Some(t) => t.representatives().to_vec(),
            None => conjugacy_classes(&g).representatives(),
        };
        let class_words = match &table {
            Some(t) => t.words().iter().map(|w| digit_word(w)).collect(),
            None => reps.iter().map(|&r| g.word_string(r)).collect(),
        };
        Ok(Ctx { g, table, class_words, reps })
    }

    pub fn identify(&self, chi: &[specht_core::exact::Scalar]) -> Option<String> {
        self.table.as_ref().map(|t| t.identify(chi).map_or_else(|_| "unidentified".to_string(), |i| i.to_string()))
    }
}

/// `1 3 2` as `t1 t3 t2`.
pub fn digit_word(w: &str) -> String {
    if w.trim() == "e" {
        return "e".into();
    }
    w.split_whitespace().map(|d| format!("t{d}")).collect::<Vec<_>>().join(" ")
}

pub fn field_text(f: Field) -> String {
    f.to_string()
}

pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    let mode: Mode = cli.mode.into();
    let jobs = cli.jobs as usize;
    match &cli.command {
        Command::Roots { label } => {
            let ctx = Ctx::new(label)?;
            emit(out, cli.format, &roots_record(&ctx.g, label))?;
            Ok(())
        }
        Command::Subsystems { label, extended } => {
            let ctx = Ctx::new(label)?;
            for rec in subsystem_records(&ctx.g, *extended)? {
                emit(out, cli.format, &rec)?;
            }
            Ok(())
        }
        Command::UsefulCheck(args) => {
            let ctx = Ctx::new(&args.label)?;
            let pairs = pair_list(args)?;
            let recs = par::map(jobs, &pairs, |(j, jp)| useful_record(&ctx, j, jp, mode));
            finish(out, cli, recs, |_| true)
        }
        Command::GoodCheck { pair, search } => {
            let ctx = Ctx::new(&pair.label)?;
            if *search {
                let recs = search_good(&ctx, mode, cli.field, jobs)?;
                for r in &recs {
                    emit(out, cli.format, r)?;
                }
                return Ok(());
            }
            let pairs = pair_list(pair)?;
            let recs = par::map(jobs, &pairs, |(j, jp)| good_record(&ctx, j, jp, mode, cli.field));
            finish(out, cli, recs, |r| r.useful)
        }
        Command::Specht(args) => {
            let ctx = Ctx::new(&args.label)?;
            let pairs = pair_list(args)?;
            let recs = par::map(jobs, &pairs, |(j, jp)| specht_record(&ctx, j, jp, mode, cli.field));
            finish(out, cli, recs, |r| r.useful)
        }
        Command::Series { label, j, smaller, larger } => {
            let ctx = Ctx::new(label)?;
            let rec = series_record(&ctx, j, smaller, larger, mode)?;
            emit(out, cli.format, &rec)?;
            Ok(())
        }
        Command::VerifyD4 { table } => verify::run(out, cli.format, jobs, table.as_deref()),
        Command::Table => {
            let ctx = Ctx::new("D4")?;
            let t = ctx.table.as_ref().expect("D4 has a table");
            emit(out, cli.format, &TableRecord::new(&ctx, t))?;
            Ok(())
        }
    }
}

// Prints every record; a failed pair makes the command exit nonzero afterwards.
fn finish<W: Write, R: Serialize + Render>(
    out: &mut W,
    cli: &Cli,
    recs: Vec<Result<R, CliError>>,
    ok: impl Fn(&R) -> bool,
) -> Result<(), CliError> {
    let mut first_err: Option<CliError> = None;
    let mut unsuccessful = false;
    for r in recs {
        match r {
            Ok(rec) => {
                unsuccessful |= !ok(&rec);
                emit(out, cli.format, &rec)?;
            }
            Err(e) => {
                eprintln!("error: {e}");
                first_err.get_or_insert(CliError::Reported(e.exit_code()));
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None if unsuccessful => Err(CliError::Reported(EXIT_UNSUPPORTED)),
        None => Ok(()),
    }
}

fn pair_list(args: &PairArgs) -> Result<Vec<(String, String)>, CliError> {
    if let Some(path) = &args.pairs {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        return text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| {
                let (a, b) = l.split_once(';').ok_or_else(|| CliError::Input(format!("expected `J ; J'`, got {l:?}")))?;
                Ok((a.trim().to_string(), b.trim().to_string()))
            })
            .collect();
    }
    match (&args.j, &args.j_prime) {
        (Some(j), Some(jp)) => Ok(vec![(j.clone(), jp.clone())]),
        _ => Err(CliError::Input("give J and J' or --pairs FILE".into())),
    }
}

#[derive(Serialize)]
pub struct RootsRecord {
    pub label: String,
    pub rank: usize,
    pub roots: usize,
    pub simple: Vec<String>,
    pub positive: Vec<String>,
    pub highest: Option<String>,
    pub diagram: Vec<String>,
}

fn roots_record(g: &WeylGroup, label: &str) -> RootsRecord {
    let rs = g.root_system();
    let diagram = rs
        .diagram()
        .map(|d| {
            d.edges
                .iter()
                .map(|e| {
                    let bond = ["", "-", "=", "≡"][e.bond.min(3) as usize];
                    match e.long {
                        Some(l) => format!("{}{bond}{} (long {})", e.a + 1, e.b + 1, l + 1),
                        None => format!("{}{bond}{}", e.a + 1, e.b + 1),
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    RootsRecord {
        label: label.to_uppercase(),
        rank: rs.rank(),
        roots: rs.len(),
        simple: rs.simple_indices().map(|i| rs.notation(i)).collect(),
        positive: rs.positive_indices().map(|i| rs.notation(i)).collect(),
        highest: rs.highest_root().map(|i| rs.notation(i)),
        diagram,
    }
}

impl Render for RootsRecord {
    fn render(&self) -> String {
        let mut s = format!("{}: rank {}, {} roots, {} positive\n", self.label, self.rank, self.roots, self.positive.len());
        s += &kv(&[
            ("simple", self.simple.join(" ")),
            ("positive", self.positive.join(" ")),
            ("highest", self.highest.clone().unwrap_or_else(|| "-".into())),
            ("diagram", if self.diagram.is_empty() { "no edges".into() } else { self.diagram.join(" ") }),
        ]);
        s
    }
}

#[derive(Serialize)]
pub struct SubsystemRecord {
    pub index: usize,
    pub name: String,
    pub kind: String,
    pub depth: usize,
    pub generators: String,
    pub roots: Option<usize>,
    pub order: usize,
}

fn subsystem_records(g: &WeylGroup, extended: bool) -> Result<Vec<SubsystemRecord>, CliError> {
    let rs = g.root_system();
    if extended {
        return Ok(enumerate_extended_subsystems(g)?
            .into_iter()
            .enumerate()
            .map(|(i, s)| SubsystemRecord {
                index: i + 1,
                name: s.name.clone(),
                kind: s.kind.to_string(),
                depth: s.depth,
                generators: format!("{{{}}}", s.generators.join(",")),
                roots: None,
                order: s.subgroup.order(),
            })
            .collect());
    }
    Ok(enumerate_subsystems(g)?
        .into_iter()
        .enumerate()
        .map(|(i, s)| SubsystemRecord {
            index: i + 1,
            name: s.name().to_string(),
            kind: "weyl".into(),
            depth: 0,
            generators: s.simple_text(rs),
            roots: Some(s.len()),
            order: s.weyl_subgroup(g).order(),
        })
        .collect())
}

impl Render for SubsystemRecord {
    fn render(&self) -> String {
        let size = match self.roots {
            Some(n) => format!("|Ψ|={n:<3} "),
            None => format!("{:<8} d{} ", self.kind, self.depth),
        };
        format!("({:>2}) {:<8} {}|W|={:<4} {}", self.index, self.name, size, self.order, self.generators)
    }
}

#[derive(Serialize)]
pub struct UsefulRecord {
    pub mode: String,
    pub j: String,
    pub j_prime: String,
    pub intersection_trivial: bool,
    pub perp_intersection_trivial: Option<bool>,
    pub witness: Option<String>,
    pub perp_witness: Option<String>,
    pub useful: bool,
}

fn useful_record(ctx: &Ctx, j: &str, jp: &str, mode: Mode) -> Result<UsefulRecord, CliError> {
    let g = &ctx.g;
    let rs = g.root_system();
    let pair = Pair::parse(g, j, jp, mode)?;
    let u = check_useful(g, &pair)?;
    Ok(UsefulRecord {
        mode: mode.to_string(),
        j: pair.rows.text(rs),
        j_prime: pair.cols.text(rs),
        intersection_trivial: u.intersection_trivial,
        perp_intersection_trivial: u.perp_intersection_trivial,
        witness: u.witness.map(|w| g.word_string(w)),
        perp_witness: u.perp_witness.map(|w| g.word_string(w)),
        useful: u.is_useful(),
    })
}

fn useful_lines(r: &UsefulRecord) -> Vec<(&'static str, String)> {
    let mut lines = vec![("W(J)∩W(J')", trivial_text(r.intersection_trivial, &r.witness))];
    if let Some(p) = r.perp_intersection_trivial {
        lines.push(("W(J⊥)∩W(J'⊥)", trivial_text(p, &r.perp_witness)));
    }
    lines.push(("useful", yes_no(r.useful).into()));
    lines
}

fn trivial_text(trivial: bool, witness: &Option<String>) -> String {
    match (trivial, witness) {
        (true, _) => "trivial".into(),
        (false, Some(w)) => format!("contains {w}"),
        (false, None) => "nontrivial".into(),
    }
}

impl Render for UsefulRecord {
    fn render(&self) -> String {
        format!("J = {}  J' = {}  ({})\n{}", self.j, self.j_prime, self.mode, kv(&useful_lines(self)))
    }
}

#[derive(Serialize)]
pub struct GoodRecord {
    #[serde(flatten)]
    pub useful_check: UsefulRecord,
    pub useful: bool,
    pub good: Option<bool>,
    pub constrained: usize,
    pub failures: Vec<String>,
}

fn good_record(ctx: &Ctx, j: &str, jp: &str, mode: Mode, field: Field) -> Result<GoodRecord, CliError> {
    let u = useful_record(ctx, j, jp, mode)?;
    let useful = u.useful;
    let mut rec = GoodRecord { useful_check: u, useful, good: None, constrained: 0, failures: vec![] };
    if useful {
        let g = &ctx.g;
        let rep = check_good(g, &Pair::parse(g, j, jp, mode)?, field)?;
        rec.good = Some(rep.good);
        rec.constrained = rep.constrained;
        rec.failures = rep.failures.iter().map(|&w| g.word_string(w)).collect();
    }
    Ok(rec)
}

impl Render for GoodRecord {
    fn render(&self) -> String {
        let u = &self.useful_check;
        let mut lines = useful_lines(u);
        if let Some(good) = self.good {
            lines.push(("good", format!("{} ({} tabloids constrained)", yes_no(good), self.constrained)));
            if !self.failures.is_empty() {
                lines.push(("missing", self.failures.join(", ")));
            }
        }
        format!("J = {}  J' = {}  ({})\n{}", u.j, u.j_prime, u.mode, kv(&lines))
    }
}

#[derive(Serialize)]
pub struct Term {
    pub coefficient: Value,
    pub rep: String,
    pub tabloid: String,
}

#[derive(Serialize)]
pub struct SpechtRecord {
    pub mode: String,
    pub field: String,
    pub j: String,
    pub j_prime: String,
    pub intersection_trivial: bool,
    pub perp_intersection_trivial: Option<bool>,
    pub witness: Option<String>,
    pub useful: bool,
    pub tabloids: usize,
    pub polytabloid: Vec<Term>,
    pub good: Option<bool>,
    pub dimension: Option<usize>,
    pub classes: Vec<String>,
    pub character: Option<Vec<Value>>,
    pub identified: Option<String>,
    pub radical_dimension: Option<usize>,
    pub quotient_dimension: Option<usize>,
}

pub fn specht_record(ctx: &Ctx, j: &str, jp: &str, mode: Mode, field: Field) -> Result<SpechtRecord, CliError> {
    let g = &ctx.g;
    let rs = g.root_system();
    let pair = Pair::parse(g, j, jp, mode)?;
    let u = check_useful(g, &pair)?;
    let space = tabloids(g, &pair.rows, mode)?;
    let e = polytabloid(g, &space, pair.cols.subgroup(), space.base(), field);
    let mut rec = SpechtRecord {
        mode: mode.to_string(),
        field: field_text(field),
        j: pair.rows.text(rs),
        j_prime: pair.cols.text(rs),
        intersection_trivial: u.intersection_trivial,
        perp_intersection_trivial: u.perp_intersection_trivial,
        witness: u.witness.or(u.perp_witness).map(|w| g.word_string(w)),
        useful: u.is_useful(),
        tabloids: space.len(),
        polytabloid: e
            .terms()
            .map(|(t, c)| Term {
                coefficient: scalar_value(c),
                rep: g.word_string(space.rep(t)),
                tabloid: space.describe(g, &pair, t),
            })
            .collect(),
        good: None,
        dimension: None,
        classes: ctx.class_words.clone(),
        character: None,
        identified: None,
        radical_dimension: None,
        quotient_dimension: None,
    };
    if !rec.useful {
        return Ok(rec);
    }
    rec.good = Some(check_good(g, &pair, field)?.good);
    let module = SpechtModule::from_parts(g, space, pair.cols.subgroup().clone(), field);
    let chi = module.character(g, &ctx.reps)?;
    let (radical, quotient) = module.radical_and_quotient();
    rec.dimension = Some(module.dimension());
    rec.identified = ctx.identify(&chi);
    rec.character = Some(scalar_row(&chi));
    rec.radical_dimension = Some(radical.len());
    rec.quotient_dimension = Some(quotient);
    Ok(rec)
}

const MAX_TEXT_TERMS: usize = 12;

fn terms_text(terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.iter().take(MAX_TEXT_TERMS).enumerate() {
        let c = match &t.coefficient {
            Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        s += match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        if mag != "1" {
            s += &mag;
        }
        s += &t.tabloid;
    }
    if terms.len() > MAX_TEXT_TERMS {
        s += &format!(" + ... ({} terms)", terms.len());
    }
    s
}

impl Render for SpechtRecord {
    fn render(&self) -> String {
        let mut lines = vec![
            ("W(J)∩W(J')", trivial_text(self.intersection_trivial, &self.witness)),
        ];
        if let Some(p) = self.perp_intersection_trivial {
            let w = if self.intersection_trivial { self.witness.clone() } else { None };
            lines.push(("W(J⊥)∩W(J'⊥)", trivial_text(p, &w)));
        }
        lines.push(("useful", yes_no(self.useful).into()));
        lines.push(("tabloids", self.tabloids.to_string()));
        lines.push(("e", terms_text(&self.polytabloid)));
        if let Some(g) = self.good {
            lines.push(("good", yes_no(g).into()));
        }
        if let Some(d) = self.dimension {
            lines.push(("dimension", d.to_string()));
        }
        if let Some(c) = &self.character {
            lines.push(("character", join_values(c)));
        }
        if let Some(id) = &self.identified {
            lines.push(("identified", id.clone()));
        }
        if let (Some(r), Some(q)) = (self.radical_dimension, self.quotient_dimension) {
            lines.push(("radical", format!("{r} (quotient {q})")));
        }
        format!("J = {}  J' = {}  ({}, {})\n{}", self.j, self.j_prime, self.mode, self.field, kv(&lines))
    }
}

#[derive(Serialize)]
pub struct SeriesRecord {
    pub mode: String,
    pub j: String,
    pub smaller: String,
    pub larger: String,
    pub module_dimension: usize,
    pub submodule_dimension: usize,
    pub submodule_contained: bool,
    pub classes: Vec<String>,
    pub quotient: Vec<Value>,
    pub identified: Option<String>,
}

pub fn series_record(ctx: &Ctx, j: &str, smaller: &str, larger: &str, mode: Mode) -> Result<SeriesRecord, CliError> {
    let g = &ctx.g;
    let rs = g.root_system();
    let (rows, a, b) = (Side::parse(g, j)?, Side::parse(g, smaller)?, Side::parse(g, larger)?);
    let q = specht_series_quotient(g, &rows, &a, &b, mode, &ctx.reps)?;
    Ok(SeriesRecord {
        mode: mode.to_string(),
        j: rows.text(rs),
        smaller: a.text(rs),
        larger: b.text(rs),
        module_dimension: q.larger_dimension,
        submodule_dimension: q.submodule_dimension,
        submodule_contained: q.submodule_contained,
        classes: ctx.class_words.clone(),
        quotient: scalar_row(&q.quotient),
        identified: ctx.identify(&q.quotient),
    })
}

impl Render for SeriesRecord {
    fn render(&self) -> String {
        let mut lines = vec![
            ("module", format!("S^{{J,{}}}, dimension {}", self.smaller, self.module_dimension)),
            ("submodule", format!("S^{{J,{}}}, dimension {}", self.larger, self.submodule_dimension)),
            ("contained", yes_no(self.submodule_contained).into()),
            ("quotient", join_values(&self.quotient)),
        ];
        if let Some(id) = &self.identified {
            lines.push(("identified", id.clone()));
        }
        format!("J = {}  ({})\n{}", self.j, self.mode, kv(&lines))
    }
}

#[derive(Serialize)]
pub struct SearchRecord {
    pub name: String,
    pub j: String,
    pub j_prime: Option<String>,
    pub candidates_tried: usize,
    pub dimension: Option<usize>,
    pub identified: Option<String>,
}

impl Render for SearchRecord {
    fn render(&self) -> String {
        let partner = self.j_prime.clone().unwrap_or_else(|| "none found".into());
        let mut s = format!("{:<8} J = {:<24} J' = {partner}", self.name, self.j);
        if let Some(d) = self.dimension {
            s += &format!("  dim {d}");
        }
        if let Some(id) = &self.identified {
            s += &format!("  {id}");
        }
        s
    }
}

/// All conjugates of all class representatives, by (size, simple roots).
fn candidate_partners(g: &WeylGroup, classes: &[Subsystem]) -> Result<Vec<Subsystem>, CliError> {
    let rs = g.root_system();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in classes {
        for d in distinguished_reps(g, s.simple())? {
            let moved = Subsystem::from_roots(rs, &s.image_roots(g, d))?;
            if seen.insert(moved.roots().to_vec()) {
                out.push(moved);
            }
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.simple().cmp(b.simple())));
    Ok(out)
}

fn search_good(ctx: &Ctx, mode: Mode, field: Field, jobs: usize) -> Result<Vec<SearchRecord>, CliError> {
    let g = &ctx.g;
    let rs = g.root_system();
    let classes = enumerate_subsystems(g)?;
    let candidates = candidate_partners(g, &classes)?;
    let results = par::map(jobs, &classes, |psi| -> Result<SearchRecord, CliError> {
        let rows = Side::from_subsystem(g, psi);
        let mut tried = 0;
        for cand in candidates.iter().filter(|c| c.is_disjoint(psi)) {
            tried += 1;
            let pair = Pair::new(g, rows.clone(), Side::from_subsystem(g, cand), mode)?;
            if !check_useful(g, &pair)?.is_useful() || !check_good(g, &pair, field)?.good {
                continue;
            }
            let module = SpechtModule::from_parts(g, tabloids(g, &pair.rows, mode)?, pair.cols.subgroup().clone(), field);
            let chi = module.character(g, &ctx.reps)?;
            return Ok(SearchRecord {
                name: psi.name().to_string(),
                j: psi.simple_text(rs),
                j_prime: Some(cand.simple_text(rs)),
                candidates_tried: tried,
                dimension: Some(module.dimension()),
                identified: ctx.identify(&chi),
            });
        }
        Ok(SearchRecord {
            name: psi.name().to_string(),
            j: psi.simple_text(rs),
            j_prime: None,
            candidates_tried: tried,
            dimension: None,
            identified: None,
        })
    });
    results.into_iter().collect()
}

#[derive(Serialize)]
pub struct TableRecord {
    pub classes: Vec<String>,
    pub sizes: Vec<usize>,
    pub rows: Vec<(String, Vec<i64>)>,
    #[serde(skip)]
    text: String,
}

impl TableRecord {
    fn new(ctx: &Ctx, t: &CharacterTable) -> TableRecord {
        TableRecord {
            classes: ctx.class_words.clone(),
            sizes: t.sizes().to_vec(),
            rows: t.rows().iter().map(|r| (r.label.clone(), r.values.clone())).collect(),
            text: t.render(),
        }
    }
}

impl Render for TableRecord {
    fn render(&self) -> String {
        self.text.clone()
    }
}

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use algres::{
    classify, homotopy_primitive, index_of_isotropy, realizable, reduce_to_submanifold,
    symplectic_multiplicity, symplectic_names, table_notes, table_rows, ClassRecord, DiffForm,
    Family, FGIdeal, Iota, Params, RestrictionSpace, SymplecticForm, DEFAULT_TRUNC_CAP, Q,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::parse::{parse_form, parse_poly_list, parse_vars};

#[derive(Parser, Debug)]
#[command(
    name = "algres",
    version,
    about = "Algebraic restrictions of differential forms and symplectic classification of zero-dimensional ICIS"
)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest jet degree searched for the nilpotency order.
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNC_CAP, value_name = "D")]
    pub trunc_cap: u32,

    /// File with `vars:`, `ideal:` and `form:` lines, used where the
    /// corresponding flag is absent.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Inputs {
    /// Ordered variable names, e.g. `y,z`.
    #[arg(long)]
    pub vars: Option<String>,
    /// Comma-separated generators, e.g. `y^2, z^4`.
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quasi-homogeneous weights and generator degrees.
    QhCheck(#[command(flatten)] Inputs),
    /// Basis of the space of algebraic restrictions of p-forms.
    RestrictBasis {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Restrict to closed forms.
        #[arg(long)]
        closed: bool,
    },
    /// Coordinates of the algebraic restriction of a form.
    Reduce {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        closed: bool,
    },
    /// A primitive in I*Lambda^{p-1} of a closed form in I*Lambda^p.
    Primitive {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        form: Option<String>,
    },
    /// Symplectic multiplicity, index of isotropy and realizability.
    Invariants {
        #[command(flatten)]
        inputs: Inputs,
        /// Symplectic form; defaults to sum dx_i^dx_{n+i}.
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        n: usize,
    },
    /// Symplectic class of a catalog ideal.
    Classify {
        #[command(flatten)]
        inputs: Inputs,
        /// Expected family; an error is reported if the ideal is another.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        n: usize,
    },
    /// All symplectic classes of a family.
    Table {
        #[arg(long)]
        family: String,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(algres::Error),
}

impl From<algres::Error> for Failure {
    fn from(e: algres::Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<String, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Parses `args` (program name first), runs the command and writes to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e} [precondition: {}]", e.precondition());
            2
        }
    }
}

#[derive(Default)]
struct FileInputs(BTreeMap<String, String>);

impl FileInputs {
    fn load(path: &Option<PathBuf>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(FileInputs::default());
        };
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
        };
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return usage(format!("{}:{}: expected `name: expression`", path.display(), lineno + 1));
            };
            let key = key.trim();
            if !matches!(key, "vars" | "ideal" | "form") {
                return usage(format!("{}:{}: unknown key {key:?}", path.display(), lineno + 1));
            }
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(FileInputs(map))
    }

    fn pick(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.0.get(key).cloned())
    }
}

struct Context {
    json: bool,
    cap: u32,
    file: FileInputs,
}

impl Context {
    fn vars(&self, inputs: &Inputs, default: Option<Vec<String>>) -> Result<Vec<String>, Failure> {
        match self.file.pick(&inputs.vars, "vars") {
            Some(v) => parse_vars(&v).map_err(Failure::Usage),
            None => match default {
                Some(d) => Ok(d),
                None => usage("missing --vars"),
            },
        }
    }

    fn ideal(&self, inputs: &Inputs, vars: &[String]) -> Result<FGIdeal, Failure> {
        let Some(text) = self.file.pick(&inputs.ideal, "ideal") else {
            return usage("missing --ideal");
        };
        let gens = parse_poly_list(&text, vars).map_err(|e| Failure::Usage(format!("--ideal {e}")))?;
        Ok(FGIdeal::new(vars.len(), gens)?.with_trunc_cap(self.cap))
    }

    fn form(&self, flag: &Option<String>, vars: &[String]) -> Result<Option<DiffForm>, Failure> {
        match self.file.pick(flag, "form") {
            Some(text) => parse_form(&text, vars)
                .map(Some)
                .map_err(|e| Failure::Usage(format!("--form {e}"))),
            None => Ok(None),
        }
    }

    fn required_form(&self, flag: &Option<String>, vars: &[String]) -> Result<DiffForm, Failure> {
        match self.form(flag, vars)? {
            Some(f) => Ok(f),
            None => usage("missing --form"),
        }
    }

    fn emit<T: Serialize>(&self, value: &T, text: String) -> CmdResult {
        if self.json {
            let mut s = serde_json::to_string_pretty(value).expect("serializable output");
            s.push('\n');
            Ok(s)
        } else {
            Ok(text)
        }
    }
}

fn q_str(c: &Q) -> String {
    c.to_string()
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Serialize)]
#[serde(untagged)]
enum IotaJson {
    Finite(u32),
    Inf(&'static str),
}

impl From<Iota> for IotaJson {
    fn from(i: Iota) -> Self {
        match i {
            Iota::Finite(k) => IotaJson::Finite(k),
            Iota::Infinite => IotaJson::Inf("inf"),
        }
    }
}

#[derive(Serialize)]
struct ParamsJson {
    a: Option<u32>,
    b: Option<u32>,
}

#[derive(Serialize)]
struct ClassJson {
    index: usize,
    normal_form: Vec<String>,
    cod: usize,
    mu: usize,
    iota: IotaJson,
    realizable: bool,
}

#[derive(Serialize)]
struct TableJson {
    family: String,
    params: ParamsJson,
    n: usize,
    classes: Vec<ClassJson>,
    notes: Vec<String>,
}

fn table_json(family: Family, params: Params, n: usize, rows: &[ClassRecord], notes: Vec<String>) -> TableJson {
    let names = symplectic_names(n);
    TableJson {
        family: family.id().to_string(),
        params: ParamsJson {
            a: params.a,
            b: params.b,
        },
        n,
        classes: rows
            .iter()
            .map(|r| ClassJson {
                index: r.class_index,
                normal_form: r.normal_form.iter().map(|g| g.render(&names)).collect(),
                cod: r.cod,
                mu: r.mu,
                iota: r.iota.into(),
                realizable: r.realizable,
            })
            .collect(),
        notes,
    }
}

fn heading(family: Family, params: Params, n: usize) -> String {
    let mut s = family.label().to_string();
    if let Some(a) = params.a {
        write!(s, ", a = {a}").unwrap();
    }
    if let Some(b) = params.b {
        write!(s, ", b = {b}").unwrap();
    }
    write!(s, ", n = {n}").unwrap();
    s
}

fn table_text(family: Family, params: Params, n: usize, rows: &[ClassRecord], notes: &[String]) -> String {
    let names = symplectic_names(n);
    let header = ["class", "cod", "mu", "i", "realizable", "normal form"];
    let body: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            let nf: Vec<String> = r.normal_form.iter().map(|g| g.render(&names)).collect();
            [
                r.label(),
                r.cod.to_string(),
                r.mu.to_string(),
                r.iota.to_string(),
                if r.realizable { "yes" } else { "no" }.to_string(),
                tuple(&nf),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                write!(s, "{c:<w$}  ", w = widths[i]).unwrap();
            }
        }
        s.trim_end().to_string()
    };
    let mut out = heading(family, params, n);
    out.push('\n');
    out.push_str(&line(header.to_vec()));
    out.push('\n');
    for row in &body {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    for note in notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

fn execute(cli: &Cli) -> CmdResult {
    let ctx = Context {
        json: cli.json,
        cap: cli.trunc_cap,
        file: FileInputs::load(&cli.input)?,
    };
    match &cli.command {
        Command::QhCheck(inputs) => qh_check(&ctx, inputs),
        Command::RestrictBasis { inputs, p, closed } => restrict_basis(&ctx, inputs, *p, *closed),
        Command::Reduce {
            inputs,
            form,
            closed,
        } => reduce(&ctx, inputs, form, *closed),
        Command::Primitive { inputs, form } => primitive(&ctx, inputs, form),
        Command::Invariants { inputs, form, n } => invariants(&ctx, inputs, form, *n),
        Command::Classify {
            inputs,
            family,
            form,
            n,
        } => classify_cmd(&ctx, inputs, family, form, *n),
        Command::Table { family, a, b, n } => table(&ctx, family, *a, *b, *n),
    }
}

fn qh_check(ctx: &Context, inputs: &Inputs) -> CmdResult {
    #[derive(Serialize)]
    struct Out {
        quasi_homogeneous: bool,
        weights: Option<Vec<u64>>,
        degrees: Option<Vec<u64>>,
    }
    let vars = ctx.vars(inputs, None)?;
    let ideal = ctx.ideal(inputs, &vars)?;
    let out = Out {
        quasi_homogeneous: ideal.qh().is_some(),
        weights: ideal.qh().map(|d| d.weights.as_slice().to_vec()),
        degrees: ideal.qh().map(|d| d.degrees.clone()),
    };
    let text = match ideal.qh() {
        Some(d) => format!("weights {}, degrees {}\n", tuple(d.weights.as_slice()), tuple(&d.degrees)),
        None => "not quasi-homogeneous in given coordinates\n".to_string(),
    };
    ctx.emit(&out, text)
}

fn restrict_basis(ctx: &Context, inputs: &Inputs, p: usize, closed: bool) -> CmdResult {
    #[derive(Serialize)]
    struct Out {
        dimension: usize,
        trunc: u32,
        basis: Vec<String>,
    }
    let vars = ctx.vars(inputs, None)?;
    let ideal = ctx.ideal(inputs, &vars)?;
    let space = RestrictionSpace::build(&ideal, p, closed)?;
    let basis: Vec<String> = space.quotient_basis().iter().map(|b| b.render(&vars)).collect();
    let text = format!("dim {}: {}\n", space.dimension(), basis.join(", "));
    let out = Out {
        dimension: space.dimension(),
        trunc: space.trunc(),
        basis,
    };
    ctx.emit(&out, text)
}

fn reduce(ctx: &Context, inputs: &Inputs, form: &Option<String>, closed: bool) -> CmdResult {
    #[derive(Serialize)]
    struct Out {
        coords: Vec<String>,
        basis: Vec<String>,
    }
    let vars = ctx.vars(inputs, None)?;
    let ideal = ctx.ideal(inputs, &vars)?;
    let omega = ctx.required_form(form, &vars)?;
    let space = RestrictionSpace::build(&ideal, omega.degree(), closed)?;
    let ar = space.reduce(&omega)?;
    let basis: Vec<String> = space.quotient_basis().iter().map(|b| b.render(&vars)).collect();
    let text = format!("{} in basis {}\n", tuple(ar.coords()), basis.join(", "));
    let out = Out {
        coords: ar.coords().iter().map(q_str).collect(),
        basis,
    };
    ctx.emit(&out, text)
}

fn primitive(ctx: &Context, inputs: &Inputs, form: &Option<String>) -> CmdResult {
    #[derive(Serialize)]
    struct Out {
        primitive: String,
    }
    let vars = ctx.vars(inputs, None)?;
    let ideal = ctx.ideal(inputs, &vars)?;
    let omega = ctx.required_form(form, &vars)?;
    let alpha = homotopy_primitive(&omega, &ideal)?;
    let text = alpha.render(&vars);
    let out = Out {
        primitive: text.clone(),
    };
    ctx.emit(&out, text + "\n")
}

fn invariants(ctx: &Context, inputs: &Inputs, form: &Option<String>, n: usize) -> CmdResult {
    #[derive(Serialize)]
    struct Out {
        reduced_vars: Vec<String>,
        reduced_ideal: String,
        basis: Vec<String>,
        coords: Vec<String>,
        mu: usize,
        iota: IotaJson,
        zero_restriction: bool,
        realizable: bool,
    }
    if n == 0 {
        return usage("--n must be at least 1");
    }
    let vars = ctx.vars(inputs, Some(symplectic_names(n)))?;
    let ideal = ctx.ideal(inputs, &vars)?;
    let m = vars.len();
    if m > 2 * n {
        return Err(algres::Error::DimensionMismatch {
            expected: 2 * n,
            found: m,
        }
        .into());
    }
    let omega = match ctx.form(form, &vars)? {
        Some(f) => f,
        None if m == 2 * n => SymplecticForm::standard(n).form().clone(),
        None => return usage("--form is required when the ideal has fewer than 2n variables"),
    };
    if omega.degree() != 2 {
        return Err(algres::Error::DegreeMismatch {
            expected: 2,
            found: omega.degree(),
        }
        .into());
    }
    let full = if m == 2 * n { ideal.clone() } else { ideal.suspend(2 * n - m) };
    let red = reduce_to_submanifold(&omega, &ideal)?;
    let names: Vec<String> = red.free.iter().map(|&i| vars[i].clone()).collect();
    let space = RestrictionSpace::build(&red.ideal, 2, true)?;
    let ar = space.reduce(&red.form)?;
    let mu = symplectic_multiplicity(&ar)?;
    let iota = index_of_isotropy(&ar)?;
    let real = realizable(&ar, &full, n)?;
    let basis: Vec<String> = space.quotient_basis().iter().map(|b| b.render(&names)).collect();
    let mut text = String::new();
    writeln!(text, "reduced to {} on ({})", red.ideal.render(&names), names.join(", ")).unwrap();
    writeln!(text, "basis {}", basis.join(", ")).unwrap();
    writeln!(text, "coords {}", tuple(ar.coords())).unwrap();
    writeln!(text, "mu {mu}").unwrap();
    writeln!(text, "iota {iota}").unwrap();
    writeln!(text, "zero restriction {}", ar.is_zero()).unwrap();
    writeln!(text, "realizable {real}").unwrap();
    let out = Out {
        reduced_ideal: red.ideal.render(&names),
        reduced_vars: names,
        basis,
        coords: ar.coords().iter().map(q_str).collect(),
        mu,
        iota: iota.into(),
        zero_restriction: ar.is_zero(),
        realizable: real,
    };
    ctx.emit(&out, text)
}

fn classify_cmd(
    ctx: &Context,
    inputs: &Inputs,
    family: &Option<String>,
    form: &Option<String>,
    n: usize,
) -> CmdResult {
    if n == 0 {
        return usage("--n must be at least 1");
    }
    let expected = match family {
        Some(f) => Some(f.parse::<Family>().map_err(|e| Failure::Usage(e.to_string()))?),
        None => None,
    };
    let vars = ctx.vars(inputs, Some(symplectic_names(n)))?;
    if vars.len() != 2 * n {
        return usage(format!("expected {} variables for n = {n}, got {}", 2 * n, vars.len()));
    }
    let ideal = ctx.ideal(inputs, &vars)?;
    let omega = match ctx.form(form, &vars)? {
        Some(f) => SymplecticForm::new(f)?,
        None => SymplecticForm::standard(n),
    };
    let rec = classify(&omega, &ideal)?;
    if let Some(f) = expected {
        if f != rec.family {
            return Err(algres::Error::UnrecognizedIdeal(format!(
                "ideal belongs to {}, not {}",
                rec.family.label(),
                f.label()
            ))
            .into());
        }
    }
    let notes = vec![format!("coordinates {}", tuple(&rec.coords))];
    let out = table_json(rec.family, rec.params, n, std::slice::from_ref(&rec), notes);
    let names = symplectic_names(n);
    let nf: Vec<String> = rec.normal_form.iter().map(|g| g.render(&names)).collect();
    let mut text = String::new();
    writeln!(text, "{} ({})", rec.label(), heading(rec.family, rec.params, n)).unwrap();
    writeln!(text, "normal form {}", tuple(&nf)).unwrap();
    writeln!(text, "coords {}", tuple(&rec.coords)).unwrap();
    writeln!(text, "cod {}, mu {}, iota {}, realizable {}", rec.cod, rec.mu, rec.iota, rec.realizable).unwrap();
    ctx.emit(&out, text)
}

fn table(ctx: &Context, family: &str, a: Option<u32>, b: Option<u32>, n: usize) -> CmdResult {
    let family: Family = family.parse().map_err(|e: algres::Error| Failure::Usage(e.to_string()))?;
    let params = Params { a, b };
    let rows = table_rows(family, params, n)?;
    let notes = table_notes(family);
    let text = table_text(family, params, n, &rows, &notes);
    ctx.emit(&table_json(family, params, n, &rows, notes), text)
}

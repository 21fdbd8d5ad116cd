use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hairy::cache::DiskCache;
use hairy::checks::{self, Counterexample, Fault, Outcome};
use hairy::closed_forms::{self, format_entry, lambda_table};
use hairy::graph::{slice_keys, SliceKey};
use hairy::homology;
use hairy::linalg::HomologyReport;
use hairy::operad::OperadKind;
use hairy::Error;

pub const EXIT_INVARIANT: u8 = 2;
pub const EXIT_CONFIG: u8 = 3;
pub const EXIT_CACHE: u8 = 4;

/// Hairy graph complexes of the commutative, associative and Lie operads.
#[derive(Debug, Parser)]
#[command(name = "hairy", version)]
pub struct Cli {
  #[command(subcommand)]
  command: Command,
  #[command(flatten)]
  opts:    Opts,
}

#[derive(Debug, Subcommand)]
enum Command {
  /// Chain dimensions of every slice within the bounds.
  Basis,
  /// Betti numbers of every slice, checked against the closed forms.
  Homology,
  /// Exhaustive trace identities on wedges and cycles.
  TraceCheck {
    /// Random combinations per slice for the seeded suite.
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long, hide = true, value_enum)]
    inject_fault: Option<FaultArg>,
  },
  /// Cusp form, multiplicity and rank two tables.
  Tables,
  /// The boundary matrix out of one slice, in coordinate form.
  DumpMatrix {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    h: usize,
  },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
  SignFlip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
  Json,
  Csv,
  Text,
}

#[derive(Debug, Args)]
struct Opts {
  #[arg(long, global = true, value_parser = kind_parser())]
  kind:         Option<OperadKind>,
  #[arg(long, global = true, default_value_t = 1)]
  n:            u16,
  #[arg(long, global = true, default_value_t = 3)]
  max_degree:   usize,
  /// Defaults to every rank possible in the degree.
  #[arg(long, global = true)]
  max_rank:     Option<usize>,
  /// Defaults to every hair count possible in the degree.
  #[arg(long, global = true)]
  max_hairs:    Option<usize>,
  /// Defaults to the degree; for trace-check, the number of wedge factors (3).
  #[arg(long, global = true)]
  max_vertices: Option<usize>,
  /// Restrict to connected graphs.
  #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set)]
  connected:    bool,
  #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
  format:       Format,
  #[arg(long, global = true, env = "HAIRY_CACHE_DIR")]
  cache_dir:    Option<PathBuf>,
  #[arg(long, global = true, default_value_t = 0)]
  seed:         u64,
  #[arg(long, global = true)]
  jobs:         Option<usize>,
}

fn kind_parser() -> impl clap::builder::TypedValueParser<Value = OperadKind> {
  use clap::builder::TypedValueParser;
  clap::builder::PossibleValuesParser::new(["com", "assoc", "lie"]).map(|s| s.parse().expect("listed kinds parse"))
}

pub fn exit_code(e: &Error) -> u8 {
  match e {
    Error::Integrity(_) => EXIT_INVARIANT,
    Error::Cache(_) | Error::Io(_) | Error::Json(_) => EXIT_CACHE,
    _ => EXIT_CONFIG,
  }
}

fn config(msg: impl Into<String>) -> Error { Error::Domain(msg.into()) }

fn all_kinds() -> Vec<OperadKind> { vec![OperadKind::Com, OperadKind::Assoc, OperadKind::Lie] }

pub fn run(cli: Cli) -> hairy::Result<u8> {
  let o = &cli.opts;
  if o.n == 0 || o.max_degree == 0 || o.max_vertices == Some(0) || o.jobs == Some(0) {
    return Err(config("bounds must be positive"));
  }
  if let Some(j) = o.jobs {
    rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| config(e.to_string()))?;
  }
  let cache = match &o.cache_dir {
    Some(dir) => Some(DiskCache::open(dir).map_err(|e| config(format!("cache directory {}: {e}", dir.display())))?),
    None => None,
  };
  let mut out = std::io::stdout().lock();
  match &cli.command {
    Command::Basis => basis(o, cache.as_ref(), &mut out),
    Command::Homology => homology_cmd(o, cache.as_ref(), &mut out),
    Command::TraceCheck { samples, inject_fault } => {
      let fault = match inject_fault {
        Some(FaultArg::SignFlip) => Fault::SignFlip,
        None => Fault::None,
      };
      trace_check(o, *samples, fault, &mut out)
    }
    Command::Tables => tables(o, &mut out),
    Command::DumpMatrix { k, d, r, h } => {
      let kind = o.kind.ok_or_else(|| config("dump-matrix needs --kind"))?;
      let key = SliceKey { kind, n: o.n, k: *k, d: *d, r: *r, h: *h };
      key.validate()?;
      write!(out, "{}", homology::boundary_out(&key, o.connected)?.to_dump())?;
      Ok(0)
    }
  }
}

fn emit<T: Serialize>(format: Format, rows: &[T], out: &mut impl Write) -> hairy::Result<()> {
  match format {
    Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows)?)?,
    Format::Csv | Format::Text => {
      let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new());
      for r in rows {
        w.serialize(r).map_err(|e| config(e.to_string()))?;
      }
      let bytes = w.into_inner().map_err(|e| config(e.to_string()))?;
      if format == Format::Csv {
        out.write_all(&bytes)?;
      } else {
        write_text(&bytes, out)?;
      }
    }
  }
  Ok(())
}

fn write_text(csv_bytes: &[u8], out: &mut impl Write) -> hairy::Result<()> {
  let mut rd = csv::ReaderBuilder::new().has_headers(false).from_reader(csv_bytes);
  let rows: Vec<Vec<String>> =
    rd.records().map(|r| r.map(|r| r.iter().map(str::to_string).collect())).collect::<Result<_, _>>().map_err(|e| config(e.to_string()))?;
  let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
  let widths: Vec<usize> = (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0)).collect();
  for r in rows {
    let line: Vec<String> = r.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
    writeln!(out, "{}", line.join("  "))?;
  }
  Ok(())
}

fn kinds(o: &Opts, command: &str) -> hairy::Result<Vec<OperadKind>> {
  match o.kind {
    Some(k) => Ok(vec![k]),
    None if command == "trace-check" => Ok(all_kinds()),
    None => Err(config(format!("{command} needs --kind"))),
  }
}

/// Slices within the bounds, in key order.
fn keys(o: &Opts, kind: OperadKind) -> Vec<SliceKey> {
  let mut out = Vec::new();
  for d in 1..=o.max_degree {
    let max_rank = o.max_rank.unwrap_or(d + 1);
    let max_hairs = o.max_hairs.unwrap_or(3 * d);
    let max_vertices = o.max_vertices.unwrap_or(d);
    out.extend(
      slice_keys(kind, o.n, d, max_rank, max_hairs, max_vertices)
        .into_iter()
        .filter(|k| !o.connected || k.components() == Some(1)),
    );
  }
  out
}

#[derive(Serialize)]
struct BasisRow {
  kind:   OperadKind,
  n:      u16,
  k:      usize,
  d:      usize,
  r:      usize,
  h:      usize,
  dim:    usize,
  cached: bool,
}

fn basis(o: &Opts, cache: Option<&DiskCache>, out: &mut impl Write) -> hairy::Result<u8> {
  let mut rows = Vec::new();
  for kind in kinds(o, "basis")? {
    for key in keys(o, kind) {
      let hit = match cache {
        Some(c) => c.load_basis(&key, o.connected)?.map(|gs| gs.len()),
        None => None,
      };
      let dim = match hit {
        Some(dim) => dim,
        None => {
          let b = homology::basis(&key, o.connected)?;
          if let Some(c) = cache {
            c.store_basis(&b)?;
          }
          b.len()
        }
      };
      let SliceKey { kind, n, k, d, r, h } = key;
      rows.push(BasisRow { kind, n, k, d, r, h, dim, cached: hit.is_some() });
    }
  }
  emit(o.format, &rows, out)?;
  Ok(0)
}

#[derive(Serialize)]
struct HomologyRow {
  kind:       OperadKind,
  n:          u16,
  k:          usize,
  d:          usize,
  r:          Option<usize>,
  h:          Option<usize>,
  dim_chains: usize,
  rank_in:    usize,
  rank_out:   usize,
  betti:      usize,
  expected:   Option<usize>,
  verdict:    &'static str,
  cached:     bool,
}

fn verdict(betti: usize, expected: Option<usize>) -> &'static str {
  match expected {
    None => "N-A",
    Some(e) if e == betti => "PASS",
    Some(_) => "FAIL",
  }
}

fn report(key: &SliceKey, connected: bool, cache: Option<&DiskCache>) -> hairy::Result<(HomologyReport, bool)> {
  if let Some(r) = cache.map(|c| c.load_report(key, connected)).transpose()?.flatten() {
    return Ok((r, true));
  }
  let r = homology::slice_homology(key, connected)?;
  if let Some(c) = cache {
    c.store_report(&r, connected)?;
  }
  Ok((r, false))
}

fn homology_cmd(o: &Opts, cache: Option<&DiskCache>, out: &mut impl Write) -> hairy::Result<u8> {
  let dim_v = 2 * o.n as usize;
  let mut rows = Vec::new();
  for kind in kinds(o, "homology")? {
    for key in keys(o, kind) {
      let (rep, cached) = report(&key, o.connected, cache)?;
      // at one vertex the hair count is fixed by (d, r), so a Lie slice is a whole rank
      let expected = (o.connected && kind == OperadKind::Lie && key.k == 1 && key.r <= 2)
        .then(|| closed_forms::expected_h1(kind, dim_v, key.d, Some(key.r)))
        .transpose()?;
      rows.push(HomologyRow {
        kind,
        n: o.n,
        k: key.k,
        d: key.d,
        r: Some(key.r),
        h: Some(key.h),
        dim_chains: rep.dim_chains,
        rank_in: rep.rank_in,
        rank_out: rep.rank_out,
        betti: rep.betti,
        expected,
        verdict: verdict(rep.betti, expected),
        cached,
      });
    }
    if kind != OperadKind::Lie {
      rows.extend(totals(o, kind, &rows, dim_v)?);
    }
  }
  emit(o.format, &rows, out)?;
  Ok(if rows.iter().any(|r| r.verdict == "FAIL") { EXIT_INVARIANT } else { 0 })
}

/// One row per degree with the one-vertex betti numbers summed over ranks,
/// compared with the closed form when the bounds cover every rank.
fn totals(o: &Opts, kind: OperadKind, rows: &[HomologyRow], dim_v: usize) -> hairy::Result<Vec<HomologyRow>> {
  let mut out = Vec::new();
  for d in 1..=o.max_degree {
    let part: Vec<&HomologyRow> = rows.iter().filter(|r| r.kind == kind && r.k == 1 && r.d == d).collect();
    let complete = o.connected && o.max_rank.is_none_or(|m| m > d) && o.max_hairs.is_none_or(|m| m >= d + 2);
    let expected = complete.then(|| closed_forms::expected_h1(kind, dim_v, d, None)).transpose()?;
    let betti = part.iter().map(|r| r.betti).sum();
    out.push(HomologyRow {
      kind,
      n: o.n,
      k: 1,
      d,
      r: None,
      h: None,
      dim_chains: part.iter().map(|r| r.dim_chains).sum(),
      rank_in: part.iter().map(|r| r.rank_in).sum(),
      rank_out: part.iter().map(|r| r.rank_out).sum(),
      betti,
      expected,
      verdict: verdict(betti, expected),
      cached: part.iter().all(|r| r.cached),
    });
  }
  Ok(out)
}

#[derive(Serialize)]
struct TraceRow {
  suite:     &'static str,
  kind:      OperadKind,
  n:         u16,
  checked:   usize,
  matchings: usize,
}

#[derive(Serialize)]
struct TraceJson<'a> {
  suites:         &'a [TraceRow],
  counterexample: Option<&'a Counterexample>,
}

fn trace_check(o: &Opts, samples: usize, fault: Fault, out: &mut impl Write) -> hairy::Result<u8> {
  let factors = o.max_vertices.unwrap_or(3);
  let mut rows = Vec::new();
  let mut failed = None;
  'kinds: for kind in kinds(o, "trace-check")? {
    let suites: [Box<dyn Fn() -> hairy::Result<Outcome>>; 4] = [
      Box::new(|| checks::chain_map(kind, o.n, o.max_degree, factors, fault)),
      Box::new(|| checks::chain_map_random(kind, o.n, o.max_degree, factors, o.seed, samples)),
      Box::new(|| checks::beta_trace(kind, o.n, o.max_degree, factors)),
      Box::new(|| checks::roundtrip(kind, o.n, o.max_degree, factors)),
    ];
    for suite in suites {
      match suite()? {
        Ok(r) => rows.push(TraceRow { suite: r.suite, kind: r.kind, n: r.n, checked: r.checked, matchings: r.matchings }),
        Err(c) => {
          failed = Some(c);
          break 'kinds;
        }
      }
    }
  }
  match o.format {
    Format::Json => {
      let doc = TraceJson { suites: &rows, counterexample: failed.as_deref() };
      writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    }
    Format::Csv | Format::Text => {
      emit(o.format, &rows, out)?;
      let total: usize = rows.iter().map(|r| r.matchings).sum();
      if o.format == Format::Text {
        writeln!(out, "matchings enumerated: {total}")?;
      }
      if let Some(c) = &failed {
        let text = serde_json::to_string_pretty(c)?;
        if o.format == Format::Text {
          writeln!(out, "counterexample:\n{text}")?;
        } else {
          eprintln!("counterexample:\n{text}");
        }
      }
    }
  }
  if let Some(c) = failed {
    eprintln!("{} failed at {}", c.suite, c.slice);
    return Ok(EXIT_INVARIANT);
  }
  Ok(0)
}

#[derive(Serialize)]
struct TableRow {
  table: &'static str,
  key:   String,
  value: String,
}

fn tables(o: &Opts, out: &mut impl Write) -> hairy::Result<u8> {
  let mut rows = Vec::new();
  let row = |table, key: String, value: String| TableRow { table, key, value };
  for k in 0..=30 {
    rows.push(row("cusp", k.to_string(), closed_forms::cusp_dim(k).to_string()));
  }
  let table = lambda_table(14);
  for (_, entries) in &table {
    for &(p, m) in entries {
      rows.push(row("lambda", p.to_string(), m.to_string()));
    }
  }
  for (h, entries) in &table {
    let list: Vec<String> = entries.iter().map(|&(p, m)| format_entry(p, m)).collect();
    rows.push(row("partitions", h.to_string(), list.join(" ")));
  }
  let dim_v = 2 * o.n as usize;
  let mut mismatch = false;
  for h in 0..=o.max_hairs.unwrap_or(14) {
    let closed = closed_forms::h12_dim_closed(dim_v, h)?;
    let poly = closed_forms::rank2_poly_dim(o.n as usize, h)?;
    mismatch |= closed != poly;
    rows.push(row("h12-closed", h.to_string(), closed.to_string()));
    rows.push(row("h12-poly", h.to_string(), poly.to_string()));
  }
  emit(o.format, &rows, out)?;
  Ok(if mismatch { EXIT_INVARIANT } else { 0 })
}

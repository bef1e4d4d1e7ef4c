//! The INI-style job configuration: `[section]` headers, `key = value`
//! lines, `#` comments. Rationals are written `p/q` or as bare integers;
//! weights are bracketed comma lists. Unknown sections and keys are hard
//! errors; nothing is defaulted silently except the parabolic section
//! (omitted = Borel).

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Verma { lambda: Vec<Q> },
    SimpleHw { lambda: Vec<Q> },
    CuspidalSl2 { mu0: Q, mu1: Q },
    DualOf { inner: Box<ModuleSpec> },
    TwistOf { inner: Box<ModuleSpec>, gamma: String, x: Q },
    Induced { levi_module: LeviSpec },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeviSpec {
    CLambda { lambda: Vec<Q> },
    CuspidalSl2 { gamma: String, mu0: Q, mu1: Q, base: Vec<Q> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandName {
    Describe,
    Cohomology,
    Dirac,
    Index,
    Pair,
    Verify,
}

impl CommandName {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "describe" => Some(CommandName::Describe),
            "cohomology" => Some(CommandName::Cohomology),
            "dirac" => Some(CommandName::Dirac),
            "index" => Some(CommandName::Index),
            "pair" => Some(CommandName::Pair),
            "verify" => Some(CommandName::Verify),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CommandName::Describe => "describe",
            CommandName::Cohomology => "cohomology",
            CommandName::Dirac => "dirac",
            CommandName::Index => "index",
            CommandName::Pair => "pair",
            CommandName::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobConfig {
    pub algebra: String,
    /// Levi subset as root names (empty = Borel).
    pub levi: Vec<String>,
    pub module: ModuleSpec,
    pub module2: Option<ModuleSpec>,
    pub window_base: Vec<Q>,
    pub window_radius: i64,
    pub command: CommandName,
    /// `direction` option for the cohomology command.
    pub direction: Option<String>,
    /// `variant` option for the index command (`spin` or `dirac`).
    pub variant: Option<String>,
}

struct RawSection {
    line: usize,
    entries: Vec<(usize, String, String)>, // (line, key, value)
}

fn syntax_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Config { line, col, msg: msg.into() }
}

/// Parses the sectioned key-value grammar into raw sections.
fn parse_sections(text: &str) -> Result<BTreeMap<String, RawSection>> {
    let mut sections: BTreeMap<String, RawSection> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(syntax_error(line_no, trimmed.len(), "unterminated section header"));
            };
            let name = name.trim().to_string();
            if sections.contains_key(&name) {
                return Err(syntax_error(line_no, 1, format!("duplicate section [{name}]")));
            }
            sections.insert(name.clone(), RawSection { line: line_no, entries: Vec::new() });
            current = Some(name);
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return Err(syntax_error(line_no, 1, "expected `key = value`"));
        };
        let key = trimmed[..eq].trim().to_string();
        let value = trimmed[eq + 1..].trim().to_string();
        if key.is_empty() {
            return Err(syntax_error(line_no, 1, "empty key"));
        }
        let Some(section) = &current else {
            return Err(syntax_error(line_no, 1, "key-value line before any [section]"));
        };
        sections
            .get_mut(section)
            .expect("current section exists")
            .entries
            .push((line_no, key, value));
    }
    Ok(sections)
}

struct SectionReader {
    name: String,
    line: usize,
    entries: BTreeMap<String, (usize, String)>,
    consumed: std::cell::RefCell<Vec<String>>,
}

impl SectionReader {
    fn new(name: &str, raw: RawSection) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (line, key, value) in raw.entries {
            if entries.insert(key.clone(), (line, value)).is_some() {
                return Err(syntax_error(line, 1, format!("duplicate key `{key}`")));
            }
        }
        Ok(SectionReader {
            name: name.to_string(),
            line: raw.line,
            entries,
            consumed: std::cell::RefCell::new(Vec::new()),
        })
    }

    fn get(&self, key: &str) -> Option<&(usize, String)> {
        self.consumed.borrow_mut().push(key.to_string());
        self.entries.get(key)
    }

    fn require(&self, key: &str) -> Result<&(usize, String)> {
        self.get(key).ok_or_else(|| {
            syntax_error(self.line, 1, format!("section [{}] is missing key `{key}`", self.name))
        })
    }

    fn finish(&self) -> Result<()> {
        let consumed = self.consumed.borrow();
        for (key, (line, _)) in &self.entries {
            if !consumed.contains(key) {
                return Err(syntax_error(*line, 1, format!("unknown key `{key}` in [{}]", self.name)));
            }
        }
        Ok(())
    }
}

fn parse_rational(line: usize, s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| syntax_error(line, 1, format!("malformed rational `{s}`")))
}

fn parse_weight_list(line: usize, s: &str) -> Result<Vec<Q>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| syntax_error(line, 1, format!("expected a bracketed weight list, got `{s}`")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Err(syntax_error(line, 1, "empty weight list"));
    }
    inner.split(',').map(|p| parse_rational(line, p)).collect()
}

fn parse_module_section(sec: &SectionReader) -> Result<ModuleSpec> {
    let (kline, kind) = sec.require("kind")?.clone();
    let spec = match kind.as_str() {
        "verma" => {
            let (l, v) = sec.require("lambda")?;
            ModuleSpec::Verma { lambda: parse_weight_list(*l, v)? }
        }
        "simple_hw" => {
            let (l, v) = sec.require("lambda")?;
            ModuleSpec::SimpleHw { lambda: parse_weight_list(*l, v)? }
        }
        "cuspidal_sl2" => {
            let (l0, v0) = sec.require("mu0")?;
            let (l1, v1) = sec.require("mu1")?;
            ModuleSpec::CuspidalSl2 { mu0: parse_rational(*l0, v0)?, mu1: parse_rational(*l1, v1)? }
        }
        "dual_of" => {
            let inner = parse_inner_module(sec)?;
            ModuleSpec::DualOf { inner: Box::new(inner) }
        }
        "twist_of" => {
            let inner = parse_inner_module(sec)?;
            let (_, gamma) = sec.require("gamma")?.clone();
            let (xl, xv) = sec.require("x")?;
            ModuleSpec::TwistOf { inner: Box::new(inner), gamma, x: parse_rational(*xl, xv)? }
        }
        "induced" => {
            let (ll, lv) = sec.require("levi_module")?.clone();
            let levi_module = match lv.as_str() {
                "c_lambda" => {
                    let (l, v) = sec.require("lambda")?;
                    LeviSpec::CLambda { lambda: parse_weight_list(*l, v)? }
                }
                "cuspidal_sl2" => {
                    let (_, gamma) = sec.require("gamma")?.clone();
                    let (l0, v0) = sec.require("mu0")?;
                    let (l1, v1) = sec.require("mu1")?;
                    let (lb, vb) = sec.require("base")?;
                    LeviSpec::CuspidalSl2 {
                        gamma,
                        mu0: parse_rational(*l0, v0)?,
                        mu1: parse_rational(*l1, v1)?,
                        base: parse_weight_list(*lb, vb)?,
                    }
                }
                other => {
                    return Err(syntax_error(ll, 1, format!("unknown levi_module `{other}`")))
                }
            };
            ModuleSpec::Induced { levi_module }
        }
        other => return Err(syntax_error(kline, 1, format!("unknown module kind `{other}`"))),
    };
    Ok(spec)
}

/// Inner (wrapped) modules for `dual_of` / `twist_of` are flat descriptors
/// given through `inner_*` keys.
fn parse_inner_module(sec: &SectionReader) -> Result<ModuleSpec> {
    let (kline, kind) = sec.require("inner_kind")?.clone();
    match kind.as_str() {
        "verma" => {
            let (l, v) = sec.require("inner_lambda")?;
            Ok(ModuleSpec::Verma { lambda: parse_weight_list(*l, v)? })
        }
        "simple_hw" => {
            let (l, v) = sec.require("inner_lambda")?;
            Ok(ModuleSpec::SimpleHw { lambda: parse_weight_list(*l, v)? })
        }
        "cuspidal_sl2" => {
            let (l0, v0) = sec.require("inner_mu0")?;
            let (l1, v1) = sec.require("inner_mu1")?;
            Ok(ModuleSpec::CuspidalSl2 {
                mu0: parse_rational(*l0, v0)?,
                mu1: parse_rational(*l1, v1)?,
            })
        }
        other => Err(syntax_error(kline, 1, format!("unknown inner module kind `{other}`"))),
    }
}

/// Parses and fully validates a job configuration.
pub fn parse_config(text: &str) -> Result<JobConfig> {
    let mut sections = parse_sections(text)?;
    let known = ["algebra", "parabolic", "module", "module2", "window", "command"];
    for (name, raw) in &sections {
        if !known.contains(&name.as_str()) {
            return Err(syntax_error(raw.line, 1, format!("unknown section [{name}]")));
        }
    }
    let take = |sections: &mut BTreeMap<String, RawSection>, name: &str| -> Option<RawSection> {
        sections.remove(name)
    };

    let algebra_raw = take(&mut sections, "algebra")
        .ok_or_else(|| Error::ConfigGeneral("missing [algebra] section".into()))?;
    let algebra_sec = SectionReader::new("algebra", algebra_raw)?;
    let (_, algebra) = algebra_sec.require("type")?.clone();
    algebra_sec.finish()?;

    let levi = match take(&mut sections, "parabolic") {
        None => Vec::new(),
        Some(raw) => {
            let sec = SectionReader::new("parabolic", raw)?;
            let (_, v) = sec.require("levi")?.clone();
            sec.finish()?;
            if v.trim().is_empty() {
                Vec::new()
            } else {
                v.split(',').map(|s| s.trim().to_string()).collect()
            }
        }
    };

    let module_raw = take(&mut sections, "module")
        .ok_or_else(|| Error::ConfigGeneral("missing [module] section".into()))?;
    let module_sec = SectionReader::new("module", module_raw)?;
    let module = parse_module_section(&module_sec)?;
    module_sec.finish()?;

    let module2 = match take(&mut sections, "module2") {
        None => None,
        Some(raw) => {
            let sec = SectionReader::new("module2", raw)?;
            let m = parse_module_section(&sec)?;
            sec.finish()?;
            Some(m)
        }
    };

    let window_raw = take(&mut sections, "window")
        .ok_or_else(|| Error::ConfigGeneral("missing [window] section".into()))?;
    let window_sec = SectionReader::new("window", window_raw)?;
    let (bl, bv) = window_sec.require("base")?;
    let window_base = parse_weight_list(*bl, bv)?;
    let (rl, rv) = window_sec.require("radius")?;
    let window_radius: i64 = rv
        .parse()
        .map_err(|_| syntax_error(*rl, 1, format!("malformed radius `{rv}`")))?;
    if window_radius <= 0 {
        return Err(syntax_error(*rl, 1, "window radius must be positive"));
    }
    window_sec.finish()?;

    let command_raw = take(&mut sections, "command")
        .ok_or_else(|| Error::ConfigGeneral("missing [command] section".into()))?;
    let command_sec = SectionReader::new("command", command_raw)?;
    let (cl, cv) = command_sec.require("name")?;
    let command = CommandName::parse(cv)
        .ok_or_else(|| syntax_error(*cl, 1, format!("unknown command `{cv}`")))?;
    let direction = command_sec.get("direction").map(|(_, v)| v.clone());
    let variant = command_sec.get("variant").map(|(_, v)| v.clone());
    command_sec.finish()?;

    if matches!(command, CommandName::Pair | CommandName::Verify) && module2.is_none() {
        return Err(Error::ConfigGeneral(format!(
            "command `{}` needs a [module2] section",
            command.name()
        )));
    }

    Ok(JobConfig {
        algebra,
        levi,
        module,
        module2,
        window_base,
        window_radius,
        command,
        direction,
        variant,
    })
}

fn render_weight_list(w: &[Q]) -> String {
    let parts: Vec<String> = w.iter().map(format_q).collect();
    format!("[{}]", parts.join(", "))
}

fn render_module(out: &mut String, section: &str, spec: &ModuleSpec) {
    out.push_str(&format!("[{section}]\n"));
    match spec {
        ModuleSpec::Verma { lambda } => {
            out.push_str("kind = verma\n");
            out.push_str(&format!("lambda = {}\n", render_weight_list(lambda)));
        }
        ModuleSpec::SimpleHw { lambda } => {
            out.push_str("kind = simple_hw\n");
            out.push_str(&format!("lambda = {}\n", render_weight_list(lambda)));
        }
        ModuleSpec::CuspidalSl2 { mu0, mu1 } => {
            out.push_str("kind = cuspidal_sl2\n");
            out.push_str(&format!("mu0 = {}\n", format_q(mu0)));
            out.push_str(&format!("mu1 = {}\n", format_q(mu1)));
        }
        ModuleSpec::DualOf { inner } => {
            out.push_str("kind = dual_of\n");
            render_inner(out, inner);
        }
        ModuleSpec::TwistOf { inner, gamma, x } => {
            out.push_str("kind = twist_of\n");
            render_inner(out, inner);
            out.push_str(&format!("gamma = {gamma}\n"));
            out.push_str(&format!("x = {}\n", format_q(x)));
        }
        ModuleSpec::Induced { levi_module } => {
            out.push_str("kind = induced\n");
            match levi_module {
                LeviSpec::CLambda { lambda } => {
                    out.push_str("levi_module = c_lambda\n");
                    out.push_str(&format!("lambda = {}\n", render_weight_list(lambda)));
                }
                LeviSpec::CuspidalSl2 { gamma, mu0, mu1, base } => {
                    out.push_str("levi_module = cuspidal_sl2\n");
                    out.push_str(&format!("gamma = {gamma}\n"));
                    out.push_str(&format!("mu0 = {}\n", format_q(mu0)));
                    out.push_str(&format!("mu1 = {}\n", format_q(mu1)));
                    out.push_str(&format!("base = {}\n", render_weight_list(base)));
                }
            }
        }
    }
}

fn render_inner(out: &mut String, inner: &ModuleSpec) {
    match inner {
        ModuleSpec::Verma { lambda } => {
            out.push_str("inner_kind = verma\n");
            out.push_str(&format!("inner_lambda = {}\n", render_weight_list(lambda)));
        }
        ModuleSpec::SimpleHw { lambda } => {
            out.push_str("inner_kind = simple_hw\n");
            out.push_str(&format!("inner_lambda = {}\n", render_weight_list(lambda)));
        }
        ModuleSpec::CuspidalSl2 { mu0, mu1 } => {
            out.push_str("inner_kind = cuspidal_sl2\n");
            out.push_str(&format!("inner_mu0 = {}\n", format_q(mu0)));
            out.push_str(&format!("inner_mu1 = {}\n", format_q(mu1)));
        }
        _ => unreachable!("inner modules are flat"),
    }
}

/// Renders a config back to text; `parse_config(render_config(c)) == c`.
pub fn render_config(cfg: &JobConfig) -> String {
    let mut out = String::new();
    out.push_str("[algebra]\n");
    out.push_str(&format!("type = {}\n", cfg.algebra));
    out.push_str("\n[parabolic]\n");
    out.push_str(&format!("levi = {}\n", cfg.levi.join(", ")));
    out.push('\n');
    render_module(&mut out, "module", &cfg.module);
    if let Some(m2) = &cfg.module2 {
        out.push('\n');
        render_module(&mut out, "module2", m2);
    }
    out.push_str("\n[window]\n");
    out.push_str(&format!("base = {}\n", render_weight_list(&cfg.window_base)));
    out.push_str(&format!("radius = {}\n", cfg.window_radius));
    out.push_str("\n[command]\n");
    out.push_str(&format!("name = {}\n", cfg.command.name()));
    if let Some(d) = &cfg.direction {
        out.push_str(&format!("direction = {d}\n"));
    }
    if let Some(v) = &cfg.variant {
        out.push_str(&format!("variant = {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_int, q_ratio};

    const MINIMAL: &str = "\
# minimal sl(2) Verma job
[algebra]
type = A1

[module]
kind = verma
lambda = [0]

[window]
base = [0]
radius = 8

[command]
name = dirac
";

    #[test]
    fn minimal_config_parses() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.algebra, "A1");
        assert!(cfg.levi.is_empty());
        assert_eq!(cfg.module, ModuleSpec::Verma { lambda: vec![q_int(0)] });
        assert_eq!(cfg.window_radius, 8);
        assert_eq!(cfg.command, CommandName::Dirac);
    }

    #[test]
    fn rational_values_accepted() {
        let text = MINIMAL.replace(
            "kind = verma\nlambda = [0]",
            "kind = cuspidal_sl2\nmu0 = 1/2\nmu1 = 1/2",
        );
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.module, ModuleSpec::CuspidalSl2 { mu0: q_ratio(1, 2), mu1: q_ratio(1, 2) });
        // integral parameters parse fine; they are rejected at execution
        let text = MINIMAL.replace(
            "kind = verma\nlambda = [0]",
            "kind = cuspidal_sl2\nmu0 = 2\nmu1 = 1/2",
        );
        assert!(parse_config(&text).is_ok());
    }

    #[test]
    fn errors_have_positions() {
        let bad = MINIMAL.replace("radius = 8", "radius = 0");
        match parse_config(&bad) {
            Err(Error::Config { line, .. }) => assert_eq!(line, 11),
            other => panic!("expected a positioned config error, got {other:?}"),
        }
        let bad = MINIMAL.replace("kind = verma", "kind = verma\nbogus = 1");
        assert!(matches!(parse_config(&bad), Err(Error::Config { .. })));
        let bad = format!("{MINIMAL}\n[mystery]\nx = 1\n");
        assert!(matches!(parse_config(&bad), Err(Error::Config { .. })));
        let bad = MINIMAL.replace("mu0", "mu0").replace("lambda = [0]", "lambda = [1/0]");
        assert!(parse_config(&bad).is_err());
        // pair without module2
        let bad = MINIMAL.replace("name = dirac", "name = pair");
        assert!(matches!(parse_config(&bad), Err(Error::ConfigGeneral(_))));
    }

    #[test]
    fn round_trip_golden_configs() {
        let configs = vec![
            parse_config(MINIMAL).unwrap(),
            JobConfig {
                algebra: "A2".into(),
                levi: vec!["alpha1".into()],
                module: ModuleSpec::Induced {
                    levi_module: LeviSpec::CuspidalSl2 {
                        gamma: "alpha1".into(),
                        mu0: q_ratio(3, 4),
                        mu1: q_ratio(1, 4),
                        base: vec![q_ratio(1, 2), q_int(0)],
                    },
                },
                module2: None,
                window_base: vec![q_ratio(1, 2), q_int(0)],
                window_radius: 6,
                command: CommandName::Dirac,
                direction: None,
                variant: None,
            },
            JobConfig {
                algebra: "A1".into(),
                levi: vec![],
                module: ModuleSpec::TwistOf {
                    inner: Box::new(ModuleSpec::CuspidalSl2 {
                        mu0: q_ratio(1, 2),
                        mu1: q_ratio(1, 2),
                    }),
                    gamma: "alpha".into(),
                    x: q_ratio(1, 2),
                },
                module2: Some(ModuleSpec::SimpleHw { lambda: vec![q_int(0)] }),
                window_base: vec![q_int(1)],
                window_radius: 5,
                command: CommandName::Index,
                direction: None,
                variant: Some("spin".into()),
            },
        ];
        for cfg in configs {
            let text = render_config(&cfg);
            let reparsed = parse_config(&text).unwrap();
            assert_eq!(reparsed, cfg, "round trip failed for:\n{text}");
        }
    }
}

//! Symbolic mixed-integer model of the evacuation problem plus an LP-file
//! exporter for external solver cross-checks.
//!
//! Two emission modes share one index grammar. `Verbatim` reproduces the
//! formulation exactly as written, including arcs nothing sensible ever
//! uses (departures from gathering places, arrivals back into owner
//! locations). `Strengthened` eliminates those arcs and adds a per-vehicle
//! gathering-arrival row; both modes share every optimal objective value.
//!
//! Variables fixed to zero by the starting-location rules are never
//! declared: their terms are substituted away, and a row is only emitted
//! while at least one live variable remains. In strengthened mode a big-M
//! row guarded by an eliminated arc is dropped entirely, since its guard
//! can never activate it.

use crate::instance::{compute_big_m, Instance, LocationKind};
use crate::plan::Plan;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MipMode {
    Verbatim,
    Strengthened,
}

impl fmt::Display for MipMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MipMode::Verbatim => write!(f, "verbatim"),
            MipMode::Strengthened => write!(f, "strengthened"),
        }
    }
}

impl std::str::FromStr for MipMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verbatim" => Ok(MipMode::Verbatim),
            "strengthened" => Ok(MipMode::Strengthened),
            other => Err(format!(
                "unknown mode {other:?} (expected verbatim or strengthened)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Integer,
    Continuous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MipVariable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    /// `f64::INFINITY` for an unbounded variable.
    pub upper: f64,
}

/// Sparse linear expression: (coefficient, variable index) pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinExpr {
    pub terms: Vec<(f64, usize)>,
}

impl LinExpr {
    fn push(&mut self, coef: f64, var: usize) {
        self.terms.push((coef, var));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MipConstraint {
    pub name: String,
    pub expr: LinExpr,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MipModel {
    pub mode: MipMode,
    pub variables: Vec<MipVariable>,
    /// Maximized.
    pub objective: LinExpr,
    pub constraints: Vec<MipConstraint>,
}

impl MipModel {
    pub fn count_by_prefix(&self, prefix: &str) -> usize {
        self.variables.iter().filter(|v| v.name.starts_with(prefix)).count()
    }
}

/// Replaces anything outside `[A-Za-z0-9_]` so location ids always form
/// legal LP identifiers.
fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect()
}

struct Builder<'a> {
    inst: &'a Instance,
    mode: MipMode,
    vars: Vec<MipVariable>,
    x: HashMap<(usize, usize, usize), usize>,
    y: HashMap<(usize, usize), usize>,
    u: HashMap<(usize, usize), usize>,
    v: HashMap<usize, usize>,
    z: HashMap<usize, usize>,
    constraints: Vec<MipConstraint>,
}

impl<'a> Builder<'a> {
    /// True when arc variable x[i][j][k] survives the fixing rules.
    fn arc_exists(&self, i: usize, j: usize, k: usize) -> bool {
        if i == j {
            return false;
        }
        let ki = self.inst.locations[i].kind;
        let kj = self.inst.locations[j].kind;
        // A vehicle departs an owner location only if it lives there.
        if ki == LocationKind::VehicleOwner && i != k {
            return false;
        }
        if self.mode == MipMode::Strengthened {
            if ki == LocationKind::Gathering {
                return false; // routes end at gathering places
            }
            if kj == LocationKind::VehicleOwner {
                return false; // nobody drives back into an owner location
            }
        }
        true
    }

    /// True when the pickup/load variables for (i, k) survive: owner
    /// locations only carry their own vehicle's counters.
    fn node_var_exists(&self, i: usize, k: usize) -> bool {
        match self.inst.locations[i].kind {
            LocationKind::VehicleOwner => i == k,
            LocationKind::Carless => true,
            LocationKind::Gathering => false,
        }
    }

    fn add_var(&mut self, name: String, kind: VarKind) -> usize {
        let (lower, upper) = match kind {
            VarKind::Binary => (0.0, 1.0),
            VarKind::Integer | VarKind::Continuous => (0.0, f64::INFINITY),
        };
        self.vars.push(MipVariable { name, kind, lower, upper });
        self.vars.len() - 1
    }

    fn row(&mut self, name: String, expr: LinExpr, sense: Sense, rhs: f64) {
        if !expr.terms.is_empty() {
            self.constraints.push(MipConstraint { name, expr, sense, rhs });
        }
    }
}

/// Expands the model over the instance's index sets in the chosen mode.
pub fn build_model(inst: &Instance, mode: MipMode) -> MipModel {
    let n = inst.len();
    let owners = inst.owners();
    let settlements: Vec<usize> = (0..n)
        .filter(|&i| inst.locations[i].kind != LocationKind::Gathering)
        .collect();
    let carless = inst.carless();
    let gatherings = inst.gatherings();
    let big_m = compute_big_m(inst);
    let ids: Vec<String> = inst.locations.iter().map(|l| sanitize(&l.id)).collect();

    let mut b = Builder {
        inst,
        mode,
        vars: Vec::new(),
        x: HashMap::new(),
        y: HashMap::new(),
        u: HashMap::new(),
        v: HashMap::new(),
        z: HashMap::new(),
        constraints: Vec::new(),
    };

    for &k in &owners {
        for i in 0..n {
            for j in 0..n {
                if b.arc_exists(i, j, k) {
                    let idx = b.add_var(format!("x_{}_{}_{}", ids[i], ids[j], ids[k]), VarKind::Binary);
                    b.x.insert((i, j, k), idx);
                }
            }
        }
    }
    for &i in &settlements {
        let idx = b.add_var(format!("z_{}", ids[i]), VarKind::Binary);
        b.z.insert(i, idx);
    }
    for &i in &settlements {
        for &k in &owners {
            if b.node_var_exists(i, k) {
                let idx = b.add_var(format!("y_{}_{}", ids[i], ids[k]), VarKind::Integer);
                b.y.insert((i, k), idx);
            }
        }
    }
    for &i in &settlements {
        for &k in &owners {
            if b.node_var_exists(i, k) {
                let idx = b.add_var(format!("u_{}_{}", ids[i], ids[k]), VarKind::Continuous);
                b.u.insert((i, k), idx);
            }
        }
    }
    for &i in &settlements {
        let idx = b.add_var(format!("v_{}", ids[i]), VarKind::Continuous);
        b.v.insert(i, idx);
    }

    let objective = {
        let mut expr = LinExpr::default();
        for &i in &settlements {
            for &k in &owners {
                if let Some(&y) = b.y.get(&(i, k)) {
                    expr.push(1.0, y);
                }
            }
        }
        expr
    };

    // Vehicle departure from its own start: sum_j x[k][j][k] = z[k].
    for &k in &owners {
        let mut expr = LinExpr::default();
        for j in 0..n {
            if let Some(&x) = b.x.get(&(k, j, k)) {
                expr.push(1.0, x);
            }
        }
        expr.push(-1.0, b.z[&k]);
        b.row(format!("c2_depart_{}", ids[k]), expr, Sense::Eq, 0.0);
    }

    // Flow conservation at carless locations, per vehicle.
    for &j in &carless {
        for &k in &owners {
            let mut expr = LinExpr::default();
            for i in 0..n {
                if let Some(&x) = b.x.get(&(i, j, k)) {
                    expr.push(1.0, x);
                }
            }
            for l in 0..n {
                if let Some(&x) = b.x.get(&(j, l, k)) {
                    expr.push(-1.0, x);
                }
            }
            b.row(format!("c3_flow_{}_{}", ids[j], ids[k]), expr, Sense::Eq, 0.0);
        }
    }

    // Every used vehicle eventually enters a gathering place.
    {
        let mut expr = LinExpr::default();
        for &k in &owners {
            for &i in &settlements {
                for &j in &gatherings {
                    if let Some(&x) = b.x.get(&(i, j, k)) {
                        expr.push(1.0, x);
                    }
                }
            }
        }
        for &k in &owners {
            expr.push(-1.0, b.z[&k]);
        }
        b.row("c4_gather".to_string(), expr, Sense::Eq, 0.0);
    }
    if mode == MipMode::Strengthened {
        for &k in &owners {
            let mut expr = LinExpr::default();
            for &i in &settlements {
                for &j in &gatherings {
                    if let Some(&x) = b.x.get(&(i, j, k)) {
                        expr.push(1.0, x);
                    }
                }
            }
            expr.push(-1.0, b.z[&k]);
            b.row(format!("c4_gather_{}", ids[k]), expr, Sense::Eq, 0.0);
        }
    }

    // A used vehicle evacuates its whole household: y[k][k] = d[k] z[k].
    for &k in &owners {
        let mut expr = LinExpr::default();
        expr.push(1.0, b.y[&(k, k)]);
        expr.push(-(inst.locations[k].demand as f64), b.z[&k]);
        b.row(format!("c5_own_{}", ids[k]), expr, Sense::Eq, 0.0);
    }

    // Carless service indicator: z[i] <= sum_k y[i][k] <= d[i] z[i].
    for &i in &carless {
        let mut lb = LinExpr::default();
        lb.push(1.0, b.z[&i]);
        for &k in &owners {
            if let Some(&y) = b.y.get(&(i, k)) {
                lb.push(-1.0, y);
            }
        }
        b.row(format!("c6_served_lb_{}", ids[i]), lb, Sense::Le, 0.0);

        let mut ub = LinExpr::default();
        for &k in &owners {
            if let Some(&y) = b.y.get(&(i, k)) {
                ub.push(1.0, y);
            }
        }
        ub.push(-(inst.locations[i].demand as f64), b.z[&i]);
        b.row(format!("c7_served_ub_{}", ids[i]), ub, Sense::Le, 0.0);
    }

    // Pickups happen only where the vehicle actually drives.
    for &j in &carless {
        for &k in &owners {
            let mut expr = LinExpr::default();
            expr.push(1.0, b.y[&(j, k)]);
            for i in 0..n {
                if let Some(&x) = b.x.get(&(i, j, k)) {
                    expr.push(-big_m.load, x);
                }
            }
            b.row(format!("c8_pickup_link_{}_{}", ids[j], ids[k]), expr, Sense::Le, 0.0);
        }
    }

    // Load starts at the own household: u[k][k] = y[k][k].
    for &k in &owners {
        let mut expr = LinExpr::default();
        expr.push(1.0, b.u[&(k, k)]);
        expr.push(-1.0, b.y[&(k, k)]);
        b.row(format!("c9_start_load_{}", ids[k]), expr, Sense::Eq, 0.0);
    }

    // Loads exist only where the vehicle drives.
    for &j in &carless {
        for &k in &owners {
            let mut expr = LinExpr::default();
            expr.push(1.0, b.u[&(j, k)]);
            for i in 0..n {
                if let Some(&x) = b.x.get(&(i, j, k)) {
                    expr.push(-big_m.load, x);
                }
            }
            b.row(format!("c10_load_link_{}_{}", ids[j], ids[k]), expr, Sense::Le, 0.0);
        }
    }

    // Load propagation along traversed arcs (also kills subtours):
    // u[j][k] >= u[i][k] + y[j][k] - M (1 - x[i][j][k]).
    for &i in &settlements {
        for &j in &carless {
            if i == j {
                continue;
            }
            for &k in &owners {
                let guard = b.x.get(&(i, j, k)).copied();
                if mode == MipMode::Strengthened && guard.is_none() {
                    continue;
                }
                let mut expr = LinExpr::default();
                expr.push(1.0, b.u[&(j, k)]);
                if let Some(&u) = b.u.get(&(i, k)) {
                    expr.push(-1.0, u);
                }
                expr.push(-1.0, b.y[&(j, k)]);
                if let Some(x) = guard {
                    expr.push(-big_m.load, x);
                }
                b.row(
                    format!("c11_u_prop_{}_{}_{}", ids[i], ids[j], ids[k]),
                    expr,
                    Sense::Ge,
                    -big_m.load,
                );
            }
        }
    }

    // Clock propagation: v[j] >= v[i] + t[i][j] + t_p y[j][k] - M (1 - x[i][j][k]).
    for &i in &settlements {
        for &j in &settlements {
            if i == j {
                continue;
            }
            for &k in &owners {
                let guard = b.x.get(&(i, j, k)).copied();
                if mode == MipMode::Strengthened && guard.is_none() {
                    continue;
                }
                let mut expr = LinExpr::default();
                expr.push(1.0, b.v[&j]);
                expr.push(-1.0, b.v[&i]);
                if let Some(&y) = b.y.get(&(j, k)) {
                    expr.push(-inst.t_p, y);
                }
                if let Some(x) = guard {
                    expr.push(-big_m.time, x);
                }
                b.row(
                    format!("c12_time_prop_{}_{}_{}", ids[i], ids[j], ids[k]),
                    expr,
                    Sense::Ge,
                    inst.time(i, j) - big_m.time,
                );
            }
        }
    }

    // Deadline on the closing arc: v[i] <= t_max - t[i][j] x[i][j][k].
    for &i in &settlements {
        for &j in &gatherings {
            for &k in &owners {
                let guard = b.x.get(&(i, j, k)).copied();
                if mode == MipMode::Strengthened && guard.is_none() {
                    continue;
                }
                let mut expr = LinExpr::default();
                expr.push(1.0, b.v[&i]);
                if let Some(x) = guard {
                    expr.push(inst.time(i, j), x);
                }
                b.row(
                    format!("c13_deadline_{}_{}_{}", ids[i], ids[j], ids[k]),
                    expr,
                    Sense::Le,
                    inst.t_max,
                );
            }
        }
    }

    // Vehicle capacity: u[i][k] <= c[k].
    for &i in &settlements {
        for &k in &owners {
            if let Some(&u) = b.u.get(&(i, k)) {
                let mut expr = LinExpr::default();
                expr.push(1.0, u);
                b.row(
                    format!("c14_cap_{}_{}", ids[i], ids[k]),
                    expr,
                    Sense::Le,
                    inst.capacity_of(k) as f64,
                );
            }
        }
    }

    MipModel {
        mode,
        variables: b.vars,
        objective,
        constraints: b.constraints,
    }
}

fn write_expr(out: &mut String, expr: &LinExpr, vars: &[MipVariable]) {
    if expr.terms.is_empty() {
        out.push('0');
        return;
    }
    for (pos, &(coef, var)) in expr.terms.iter().enumerate() {
        let name = &vars[var].name;
        if pos == 0 {
            if coef == 1.0 {
                out.push_str(name);
            } else if coef == -1.0 {
                out.push_str("- ");
                out.push_str(name);
            } else if coef < 0.0 {
                out.push_str(&format!("- {} {}", -coef, name));
            } else {
                out.push_str(&format!("{} {}", coef, name));
            }
        } else if coef == 1.0 {
            out.push_str(&format!(" + {}", name));
        } else if coef == -1.0 {
            out.push_str(&format!(" - {}", name));
        } else if coef < 0.0 {
            out.push_str(&format!(" - {} {}", -coef, name));
        } else {
            out.push_str(&format!(" + {} {}", coef, name));
        }
    }
}

/// Renders the model as CPLEX-style LP text with deterministic ordering:
/// variables in declaration order, constraints in build order.
pub fn export_lp(model: &MipModel) -> String {
    let mut out = String::new();
    out.push_str("Maximize\n obj: ");
    write_expr(&mut out, &model.objective, &model.variables);
    out.push_str("\nSubject To\n");
    for c in &model.constraints {
        out.push(' ');
        out.push_str(&c.name);
        out.push_str(": ");
        write_expr(&mut out, &c.expr, &model.variables);
        let sense = match c.sense {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        out.push_str(&format!(" {} {}\n", sense, c.rhs));
    }
    out.push_str("Bounds\n");
    for v in &model.variables {
        if v.kind == VarKind::Binary {
            continue; // binaries carry implicit [0,1] bounds
        }
        if v.upper.is_infinite() {
            out.push_str(&format!(" {} >= {}\n", v.name, v.lower));
        } else {
            out.push_str(&format!(" {} <= {} <= {}\n", v.lower, v.name, v.upper));
        }
    }
    out.push_str("Generals\n");
    for v in &model.variables {
        if v.kind == VarKind::Integer {
            out.push_str(&format!(" {}\n", v.name));
        }
    }
    out.push_str("Binaries\n");
    for v in &model.variables {
        if v.kind == VarKind::Binary {
            out.push_str(&format!(" {}\n", v.name));
        }
    }
    out.push_str("End\n");
    out
}

/// Counts recovered by re-reading an exported LP file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedLp {
    pub constraint_names: Vec<String>,
    /// Names declared in the Bounds / Generals / Binaries sections.
    pub declared: BTreeSet<String>,
    /// Names referenced by the objective or any constraint expression.
    pub referenced: BTreeSet<String>,
}

impl ParsedLp {
    pub fn variable_count(&self) -> usize {
        self.declared.len()
    }
    pub fn constraint_count(&self) -> usize {
        self.constraint_names.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad LP text: {0}")]
pub struct LpParseError(String);

fn is_ident(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn expr_idents(text: &str, sink: &mut BTreeSet<String>) {
    for token in text.split_whitespace() {
        if is_ident(token) {
            sink.insert(token.to_string());
        }
    }
}

/// Minimal reparser for files produced by [`export_lp`]; recovers names and
/// counts so exports can be verified without an external solver.
pub fn parse_lp(text: &str) -> Result<ParsedLp, LpParseError> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        Preamble,
        Objective,
        Constraints,
        Bounds,
        Generals,
        Binaries,
        End,
    }
    let mut section = Section::Preamble;
    let mut parsed = ParsedLp {
        constraint_names: Vec::new(),
        declared: BTreeSet::new(),
        referenced: BTreeSet::new(),
    };
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "Maximize" => {
                section = Section::Objective;
                continue;
            }
            "Subject To" => {
                section = Section::Constraints;
                continue;
            }
            "Bounds" => {
                section = Section::Bounds;
                continue;
            }
            "Generals" => {
                section = Section::Generals;
                continue;
            }
            "Binaries" => {
                section = Section::Binaries;
                continue;
            }
            "End" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Preamble => {
                return Err(LpParseError(format!("content before Maximize: {line:?}")));
            }
            Section::Objective => {
                let expr = line.strip_prefix("obj:").unwrap_or(line);
                expr_idents(expr, &mut parsed.referenced);
            }
            Section::Constraints => {
                let (name, rest) = line
                    .split_once(':')
                    .ok_or_else(|| LpParseError(format!("constraint without name: {line:?}")))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(LpParseError(format!("bad constraint name: {name:?}")));
                }
                parsed.constraint_names.push(name.to_string());
                expr_idents(rest, &mut parsed.referenced);
            }
            Section::Bounds => {
                let mut found = false;
                for token in line.split_whitespace() {
                    if is_ident(token) {
                        parsed.declared.insert(token.to_string());
                        found = true;
                    }
                }
                if !found {
                    return Err(LpParseError(format!("bound without a variable: {line:?}")));
                }
            }
            Section::Generals | Section::Binaries => {
                if !is_ident(line) {
                    return Err(LpParseError(format!("bad variable name: {line:?}")));
                }
                parsed.declared.insert(line.to_string());
            }
            Section::End => {
                return Err(LpParseError(format!("content after End: {line:?}")));
            }
        }
    }
    if section != Section::End {
        return Err(LpParseError("missing End marker".to_string()));
    }
    for name in &parsed.referenced {
        if !parsed.declared.contains(name) {
            return Err(LpParseError(format!("undeclared variable referenced: {name}")));
        }
    }
    Ok(parsed)
}

/// Translates a plan into values for every model variable, for feeding to
/// [`violated_constraints`]. Clock variables are shared per location, so
/// plans where several routes stop at the same carless location do not fit
/// the model's encoding; those return `None`.
pub fn plan_assignment(inst: &Instance, model: &MipModel, plan: &Plan) -> Option<Vec<f64>> {
    let index: HashMap<&str, usize> =
        model.variables.iter().enumerate().map(|(i, v)| (v.name.as_str(), i)).collect();
    let ids: Vec<String> = inst.locations.iter().map(|l| sanitize(&l.id)).collect();
    let mut values = vec![0.0; model.variables.len()];
    // Writing a nonzero value to a variable the mode eliminated means the
    // plan is not expressible in this model.
    fn set(index: &HashMap<&str, usize>, values: &mut [f64], name: String, value: f64) -> bool {
        match index.get(name.as_str()) {
            Some(&i) => {
                values[i] = value;
                true
            }
            None => value == 0.0,
        }
    }

    let mut visited_carless: BTreeSet<usize> = BTreeSet::new();
    for route in &plan.routes {
        if !route.used {
            continue;
        }
        let k = inst.index_of(&route.vehicle)?;
        let mut ok = set(&index, &mut values, format!("z_{}", ids[k]), 1.0);
        let own = inst.locations[k].demand as f64;
        ok &= set(&index, &mut values, format!("y_{}_{}", ids[k], ids[k]), own);
        let mut load = own;
        ok &= set(&index, &mut values, format!("u_{}_{}", ids[k], ids[k]), load);
        // Departure from the start happens at time zero; the variable is
        // already zero. Walk the stops, stamping arcs, loads and clocks.
        let mut prev = k;
        let mut clock = 0.0;
        for stop in &route.stops {
            let i = inst.index_of(&stop.location)?;
            if !visited_carless.insert(i) {
                return None; // shared clock variable, not expressible
            }
            ok &= set(&index, &mut values, format!("x_{}_{}_{}", ids[prev], ids[i], ids[k]), 1.0);
            ok &= set(&index, &mut values, format!("y_{}_{}", ids[i], ids[k]), stop.pickup as f64);
            if stop.pickup > 0 {
                ok &= set(&index, &mut values, format!("z_{}", ids[i]), 1.0);
            }
            load += stop.pickup as f64;
            ok &= set(&index, &mut values, format!("u_{}_{}", ids[i], ids[k]), load);
            clock += inst.time(prev, i) + inst.t_p * stop.pickup as f64;
            ok &= set(&index, &mut values, format!("v_{}", ids[i]), clock);
            prev = i;
        }
        let dest = inst.index_of(route.destination.as_deref()?)?;
        ok &= set(&index, &mut values, format!("x_{}_{}_{}", ids[prev], ids[dest], ids[k]), 1.0);
        if !ok {
            return None;
        }
    }
    Some(values)
}

/// Names of constraints the assignment breaks (beyond float tolerance).
pub fn violated_constraints(model: &MipModel, values: &[f64]) -> Vec<String> {
    let mut out = Vec::new();
    for c in &model.constraints {
        let lhs: f64 = c.expr.terms.iter().map(|&(coef, var)| coef * values[var]).sum();
        let ok = match c.sense {
            Sense::Le => lhs <= c.rhs + 1e-6,
            Sense::Ge => lhs >= c.rhs - 1e-6,
            Sense::Eq => (lhs - c.rhs).abs() <= 1e-6,
        };
        if !ok {
            out.push(c.name.clone());
        }
    }
    out
}

/// Objective value of an assignment.
pub fn objective_value(model: &MipModel, values: &[f64]) -> f64 {
    model.objective.terms.iter().map(|&(coef, var)| coef * values[var]).sum()
}

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use projtri::classify::{classify as classify_ring, Verdict, SCHEMA_VERSION};
use projtri::dg::{self, needed_weight, DgAlgebra, DgModule, Homology, ProjMap, Triangle};
use projtri::genhyp::ggh_verdict;
use projtri::modcat::spec::ModuleSpec;
use projtri::modcat::{FiniteModule, ModuleCategory};
use projtri::ring::build;
use projtri::GradedRing;

pub struct Report {
    pub positive: bool,
    pub text: String,
    pub json: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("window `{s}` is not of the form lo:hi"))?;
        let lo = a
            .trim()
            .parse::<i64>()
            .map_err(|e| format!("window `{s}`: {e}"))?;
        let hi = b
            .trim()
            .parse::<i64>()
            .map_err(|e| format!("window `{s}`: {e}"))?;
        if lo > hi {
            return Err(format!("window `{s}` is empty"));
        }
        Ok(Window { lo, hi })
    }
}

fn load_ring(path: &Path) -> Result<GradedRing, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    GradedRing::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn keyed<T: Into<Value> + Copy>(m: &BTreeMap<i64, T>) -> Value {
    m.iter()
        .map(|(d, v)| (d.to_string(), (*v).into()))
        .collect::<Map<_, _>>()
        .into()
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let word = if v.is_delta { "POSITIVE" } else { "NEGATIVE" };
    let _ = writeln!(out, "suspension [{}]: {word}", v.suspension);
    for f in &v.factors {
        let k = &f.verdict.kind;
        let _ = match k.reason() {
            Some(r) => writeln!(out, "  {}: {} ({})", f.ring, k.name(), r.name()),
            None => writeln!(out, "  {}: {}", f.ring, k.name()),
        };
    }
    out
}

pub fn classify(path: &Path, n: i64) -> Result<Report, String> {
    let ring = load_ring(path)?;
    let v = classify_ring(&ring, n).map_err(|e| e.to_string())?;
    Ok(Report {
        positive: v.is_delta,
        text: verdict_text(&v),
        json: v.to_json(),
    })
}

pub fn qf(path: &Path) -> Result<Report, String> {
    let ring = load_ring(path)?;
    let qf = ring.is_quasi_frobenius().map_err(|e| e.to_string())?;
    let factors = ring.decompose_product().map_err(|e| e.to_string())?;
    let dann = ring.double_annihilator_holds().map_err(|e| e.to_string())?;
    let witness = dann.witness.as_ref().map(|x| ring.format(x));
    let mut text = format!(
        "{ring}: {}\n",
        if qf {
            "quasi-Frobenius"
        } else {
            "not quasi-Frobenius"
        }
    );
    let _ = writeln!(text, "  local factors: {}", factors.len());
    if let Some(w) = &witness {
        let _ = writeln!(text, "  ann(ann(x)) != (x) for x = {w}");
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "ring": ring.to_string(),
        "quasi_frobenius": qf,
        "local_factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "double_annihilator": dann.holds,
        "witness": witness,
    });
    Ok(Report {
        positive: qf,
        text,
        json,
    })
}

fn load_module_over(path: &Path, ring: Arc<GradedRing>) -> Result<FiniteModule, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec = ModuleSpec::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    spec.build_over(ring)
        .map_err(|e| format!("{}: {e}", path.display()))
}

pub fn heller(ring_path: &Path, modules: &[PathBuf]) -> Result<Report, String> {
    let ring = Arc::new(load_ring(ring_path)?);
    let cat = ModuleCategory::from_arc(ring.clone()).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for path in modules {
        let m = load_module_over(path, ring.clone())?;
        let mut cards = vec![m.card()];
        let mut x = m.clone();
        for _ in 0..3 {
            x = cat.heller_shift(&x).map_err(|e| e.to_string())?;
            cards.push(x.card());
        }
        let ok = cat.stably_isomorphic(&x, &m).map_err(|e| e.to_string())?;
        all &= ok;
        let _ = writeln!(
            text,
            "{}: {}  |M|, |ΩM|, |Ω²M|, |Ω³M| = {:?}",
            path.display(),
            if ok { "PASS" } else { "FAIL" },
            cards
        );
        rows.push(json!({
            "module": path.display().to_string(),
            "stably_isomorphic": ok,
            "cards": cards.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }));
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "ring": ring.to_string(),
        "all_pass": all,
        "modules": rows,
    });
    Ok(Report {
        positive: all,
        text,
        json,
    })
}

pub fn dg_verify(
    p: u64,
    i: i64,
    n: i64,
    window: Window,
    weight: Option<u32>,
    trials: usize,
    seed: u64,
) -> Result<Report, String> {
    let win = dg::Window::new(window.lo, window.hi);
    let weight = weight.unwrap_or_else(|| needed_weight(win));
    let alg = Arc::new(DgAlgebra::with_weight_bound(p, i, n, weight).map_err(|e| e.to_string())?);
    let h = Homology::compute(&DgModule::free(alg.clone(), vec![0]), win, weight)
        .map_err(|e| e.to_string())?;
    let dims = h.dims();
    let free_rank = h.free_rank();
    let homology_ok = free_rank == Some(1) && h.x_squared_zero();

    let ring = Arc::new(dg::projective_ring(&alg));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let f = ProjMap::random(ring.clone(), &mut rng, 3, 2);
        let t = Triangle::from_projective_map(&alg, &f).map_err(|e| e.to_string())?;
        for (label, tri) in [("triangle", t.clone()), ("rotation", t.rotate())] {
            let rep = tri.verify(win, weight).map_err(|e| e.to_string())?;
            if let Some(fail) = rep.first_failure() {
                failures.push(json!({
                    "trial": trial,
                    "which": label,
                    "degree": fail.degree,
                    "at": fail.at.name(),
                    "composite_nonzero": fail.composite_nonzero,
                }));
            }
        }
    }
    let failed: std::collections::BTreeSet<u64> = failures
        .iter()
        .filter_map(|f| f["trial"].as_u64())
        .collect();
    let positive = homology_ok && failures.is_empty();

    let mut text = format!("DG algebra p = {p}, i = {i}, n = {n}, weight bound {weight}\n");
    let _ = writeln!(text, "  degree  dim H");
    for (d, k) in &dims {
        let _ = writeln!(text, "  {d:>6}  {k}");
    }
    let _ = writeln!(
        text,
        "  homology free of rank 1 over k[x]/(x^2): {}",
        if homology_ok { "yes" } else { "no" }
    );
    let _ = writeln!(
        text,
        "  triangles: {}/{} exact (with rotation)",
        trials - failed.len(),
        trials
    );
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "p": p,
        "i": i,
        "n": n,
        "window": [window.lo, window.hi],
        "weight": weight,
        "homology": keyed(&dims.iter().map(|(d, k)| (*d, *k as u64)).collect()),
        "free_rank": free_rank,
        "x_squared_zero": h.x_squared_zero(),
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "all_pass": positive,
    });
    Ok(Report {
        positive,
        text,
        json,
    })
}

pub fn ggh(p: u64, n: u32, window: Window) -> Result<Report, String> {
    let v = ggh_verdict(p, n, (window.lo, window.hi)).map_err(|e| e.to_string())?;
    let mut text = format!("Z/{p}^{n}, window [{}, {}]\n", window.lo, window.hi);
    let _ = writeln!(
        text,
        "  condition 1 (pi_* S is a graded field or exterior algebra): {}",
        v.condition1
    );
    let _ = writeln!(
        text,
        "  condition 2 (x acts nontrivially on the cofiber): {}",
        v.condition2
    );
    let _ = writeln!(
        text,
        "  generating hypothesis: {}",
        if v.holds { "holds" } else { "fails" }
    );
    if !v.cofiber_dims.is_empty() {
        let _ = writeln!(text, "  degree  dim pi_*S  dim pi_*C  rank x");
        for (d, k) in &v.tate_dims {
            let c = v.cofiber_dims.get(d).copied().unwrap_or(0);
            let x = v.x_ranks.get(d).copied().unwrap_or(0);
            let _ = writeln!(text, "  {d:>6}  {k:>9}  {c:>9}  {x:>6}");
        }
    }
    if let Some(note) = &v.note {
        let _ = writeln!(text, "  note: {note}");
    }
    if !v.literature_value {
        let _ = writeln!(
            text,
            "  computed value only; no published verdict for p = {p}"
        );
    }
    Ok(Report {
        positive: v.holds,
        text,
        json: v.to_json(),
    })
}

type Check = (&'static str, fn() -> Result<bool, String>);

fn check_classification() -> Result<bool, String> {
    let e = |e: projtri::RingError| e.to_string();
    let z4 = classify_ring(&build::cyclic(4).map_err(e)?, 0).map_err(e)?;
    let f3x = classify_ring(&build::exterior(3, 0, None).map_err(e)?, 0).map_err(e)?;
    let z8 = classify_ring(&build::cyclic(8).map_err(e)?, 0).map_err(e)?;
    Ok(z4.is_delta && !f3x.is_delta && !z8.is_delta)
}

fn check_dg() -> Result<bool, String> {
    let r = dg_verify(3, 1, 1, Window { lo: -6, hi: 6 }, None, 5, 0)?;
    Ok(r.positive)
}

fn check_heller() -> Result<bool, String> {
    let cat = ModuleCategory::new(build::cyclic(4).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let samples = [cat.free(1), cat.residue_module()];
    Ok(cat
        .heller_cube_check(&samples)
        .map_err(|e| e.to_string())?
        .into_iter()
        .all(|b| b))
}

fn check_ggh() -> Result<bool, String> {
    let a = ggh_verdict(3, 1, (-4, 4)).map_err(|e| e.to_string())?;
    let b = ggh_verdict(3, 2, (-4, 4)).map_err(|e| e.to_string())?;
    Ok(a.holds && b.condition1 && !b.condition2)
}

pub fn selftest() -> Result<Report, String> {
    let checks: [Check; 4] = [
        ("classification", check_classification),
        ("dg-homology-and-triangles", check_dg),
        ("heller", check_heller),
        ("generating-hypothesis", check_ggh),
    ];
    let mut text = String::new();
    let mut rows = Map::new();
    let mut all = true;
    for (name, check) in checks {
        let ok = check()?;
        all &= ok;
        let _ = writeln!(text, "{name}: {}", if ok { "PASS" } else { "FAIL" });
        rows.insert(name.to_string(), json!(ok));
    }
    let json = json!({ "schema_version": SCHEMA_VERSION, "checks": rows, "all_pass": all });
    Ok(Report {
        positive: all,
        text,
        json,
    })
}

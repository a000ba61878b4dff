//! Report documents and their two renderings: an aligned text table and JSON.

use std::fmt::Write as _;

use invforms_core::scalar::format_scalar;
use invforms_core::structure::DecompositionReport;
use invforms_core::{AltForm, Caps};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub alternation: &'static str,
    pub curvature: &'static str,
    pub chern_weil: &'static str,
    pub tau: &'static str,
    pub chern_simons: &'static str,
    pub iota: &'static str,
    pub inner_product: &'static str,
    pub computed_on: &'static str,
}

pub fn conventions() -> Conventions {
    Conventions {
        alternation: "coefficient on (i_1 < .. < i_k) = value on (x_i_1, .., x_i_k); alternations sum over the full permutation group with no normalizing factor",
        curvature: "R(x, y) = -proj_h [x, y] for x, y in m",
        chern_weil: "CW_f(x_1..x_2k) = sum over S_2k of sign * f(R(x_s1, x_s2), .., R(x_s(2k-1), x_s2k))",
        tau: "tau(f)(x_1..x_(2k-1)) = sum over S_(2k-1) of sign * f(x_s1, [x_s2, x_s3], .., [x_s(2k-2), x_s(2k-1)])",
        chern_simons: "CS_f = k * int_0^1 f(theta_t', R_t, .., R_t) dt along theta_t = (1 - t) mu from the Maurer-Cartan form to 0, alternated like tau; compared with c_k tau(f), c_k = (-1)^k k! (k-1)! / (2^(k-1) (2k-1)!)",
        iota: "iota^* w = 2^k * (w restricted to m)",
        inner_product: "Gram determinants of -kappa^(-1) on the dual basis of the compact dual",
        computed_on: "compact dual h + i m (sign twist of the [m, m] brackets); forms are on the basis of m",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub indices: Vec<usize>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

impl From<&AltForm> for FormJson {
    fn from(w: &AltForm) -> Self {
        Self {
            degree: w.degree(),
            terms: w
                .terms()
                .map(|(idx, c)| TermJson {
                    indices: idx.to_vec(),
                    coeff: format_scalar(c),
                })
                .collect(),
        }
    }
}

fn form_text(w: &FormJson, prefix: &str) -> String {
    if w.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, t) in w.terms.iter().enumerate() {
        let sign = if t.coeff.starts_with('-') { "-" } else { "+" };
        let mag = t.coeff.trim_start_matches('-');
        if n == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        if mag != "1" || t.indices.is_empty() {
            out.push_str(mag);
            if !t.indices.is_empty() {
                out.push(' ');
            }
        }
        let names: Vec<String> = t.indices.iter().map(|i| format!("{prefix}{i}")).collect();
        out.push_str(&names.join("^"));
    }
    out
}

fn dims(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn conventions_text(out: &mut String) {
    let c = conventions();
    out.push_str("conventions:\n");
    for (k, v) in [
        ("alternation", c.alternation),
        ("curvature", c.curvature),
        ("chern-weil", c.chern_weil),
        ("tau", c.tau),
        ("chern-simons", c.chern_simons),
        ("iota", c.iota),
        ("inner product", c.inner_product),
        ("computed on", c.computed_on),
    ] {
        let _ = writeln!(out, "  {k}: {v}");
    }
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Renders a report in one of the supported formats.
pub trait Render: Serialize {
    fn table(&self) -> String;

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairInfo {
    pub name: String,
    pub g_dim: usize,
    pub h_dim: usize,
    pub m_dim: usize,
    pub symmetric: bool,
}

impl PairInfo {
    fn text(&self, out: &mut String) {
        let _ = writeln!(out, "pair: {}", self.name);
        let _ = writeln!(
            out,
            "dimensions: g {}, h {}, m {}; symmetric: {}",
            self.g_dim, self.h_dim, self.m_dim, self.symmetric
        );
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PoincareReport {
    pub pair: PairInfo,
    pub max_form_degree: usize,
    pub poincare: Vec<usize>,
}

impl Render for PoincareReport {
    fn table(&self) -> String {
        let mut out = String::new();
        self.pair.text(&mut out);
        let _ = writeln!(out, "forms up to degree {}", self.max_form_degree);
        out.push_str("degree  invariant forms\n");
        for (d, n) in self.poincare.iter().enumerate() {
            let _ = writeln!(out, "{d:>6}  {n:>15}");
        }
        let _ = writeln!(out, "poincare: {}", dims(&self.poincare));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CapsJson {
    pub even_poly_degree: usize,
    pub odd_poly_degree: usize,
}

impl From<Caps> for CapsJson {
    fn from(c: Caps) -> Self {
        Self {
            even_poly_degree: c.even_poly_degree,
            odd_poly_degree: c.odd_poly_degree,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub total: usize,
    pub even: usize,
    pub odd: usize,
    pub expected: usize,
    pub product_rank: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvenJson {
    pub poly_degree: usize,
    pub form: FormJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct OddJson {
    pub poly_degree: usize,
    pub primitive_degree: usize,
    pub form: FormJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct CsJson {
    pub poly_degree: usize,
    pub constant: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Generators {
    pub even: Vec<EvenJson>,
    pub odd: Vec<OddJson>,
    pub chern_simons: Vec<CsJson>,
}

impl Generators {
    fn from_report(r: &DecompositionReport) -> Self {
        Self {
            even: r
                .even_generators
                .iter()
                .map(|g| EvenJson {
                    poly_degree: g.poly_degree,
                    form: (&g.form).into(),
                })
                .collect(),
            odd: r
                .odd_generators
                .iter()
                .map(|g| OddJson {
                    poly_degree: g.poly_degree,
                    primitive_degree: g.primitive_degree,
                    form: (&g.form).into(),
                })
                .collect(),
            chern_simons: r
                .cs_checks
                .iter()
                .map(|c| CsJson {
                    poly_degree: c.poly_degree,
                    constant: format_scalar(&c.constant),
                    holds: c.holds,
                })
                .collect(),
        }
    }

    fn text(&self, out: &mut String) {
        out.push_str("even generators (Chern-Weil forms CW_f):\n");
        if self.even.is_empty() {
            out.push_str("  none\n");
        }
        for g in &self.even {
            let _ = writeln!(
                out,
                "  f of degree {}, form degree {}: {}",
                g.poly_degree,
                g.form.degree,
                form_text(&g.form, "m")
            );
        }
        out.push_str("odd generators (iota^* tau(f)):\n");
        if self.odd.is_empty() {
            out.push_str("  none\n");
        }
        for g in &self.odd {
            let _ = writeln!(
                out,
                "  f of degree {}, primitive degree {}: {}",
                g.poly_degree,
                g.primitive_degree,
                form_text(&g.form, "m")
            );
        }
        out.push_str("chern-simons checks (CS_f = c_k tau(f) on the compact dual):\n");
        if self.chern_simons.is_empty() {
            out.push_str("  none\n");
        }
        for c in &self.chern_simons {
            let _ = writeln!(
                out,
                "  k = {}, c_k = {}: {}",
                c.poly_degree,
                c.constant,
                verdict_word(c.holds)
            );
        }
    }
}

fn pair_info(r: &DecompositionReport) -> PairInfo {
    PairInfo {
        name: r.name.clone(),
        g_dim: r.g_dim,
        h_dim: r.h_dim,
        m_dim: r.m_dim,
        symmetric: r.symmetric,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorsReport {
    pub pair: PairInfo,
    pub caps: CapsJson,
    pub conventions: Conventions,
    pub generators: Generators,
}

impl GeneratorsReport {
    pub fn new(r: &DecompositionReport) -> Self {
        Self {
            pair: pair_info(r),
            caps: r.caps.into(),
            conventions: conventions(),
            generators: Generators::from_report(r),
        }
    }
}

impl Render for GeneratorsReport {
    fn table(&self) -> String {
        let mut out = String::new();
        self.pair.text(&mut out);
        let _ = writeln!(
            out,
            "caps: even polynomial degree {}, odd polynomial degree {}",
            self.caps.even_poly_degree, self.caps.odd_poly_degree
        );
        conventions_text(&mut out);
        self.generators.text(&mut out);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeReport {
    pub pair: PairInfo,
    pub caps: CapsJson,
    pub conventions: Conventions,
    pub closed: bool,
    pub poincare_total: Vec<usize>,
    pub poincare_even: Vec<usize>,
    pub poincare_odd: Vec<usize>,
    pub degrees: Vec<DegreeRow>,
    pub generators: Generators,
    pub verdict: bool,
}

impl DecomposeReport {
    pub fn new(r: &DecompositionReport) -> Self {
        let at = |v: &[usize], d: usize| v.get(d).copied().unwrap_or(0);
        Self {
            pair: pair_info(r),
            caps: r.caps.into(),
            conventions: conventions(),
            closed: r.closed,
            poincare_total: r.poincare_total.clone(),
            poincare_even: r.poincare_even.clone(),
            poincare_odd: r.poincare_odd.clone(),
            degrees: r
                .degrees
                .iter()
                .map(|d| DegreeRow {
                    degree: d.degree,
                    total: d.total,
                    even: at(&r.poincare_even, d.degree),
                    odd: at(&r.poincare_odd, d.degree),
                    expected: d.expected,
                    product_rank: d.product_rank,
                    holds: d.holds,
                })
                .collect(),
            generators: Generators::from_report(r),
            verdict: r.verdict() && r.symmetric,
        }
    }
}

impl Render for DecomposeReport {
    fn table(&self) -> String {
        let mut out = String::new();
        self.pair.text(&mut out);
        let _ = writeln!(
            out,
            "caps: even polynomial degree {}, odd polynomial degree {}",
            self.caps.even_poly_degree, self.caps.odd_poly_degree
        );
        conventions_text(&mut out);
        let _ = writeln!(out, "invariant forms closed: {}", self.closed);
        let _ = writeln!(
            out,
            "poincare: total {} = even {} x odd {}",
            dims(&self.poincare_total),
            dims(&self.poincare_even),
            dims(&self.poincare_odd)
        );
        out.push_str("degree  total  even  odd  sum even*odd  product rank  verdict\n");
        for d in &self.degrees {
            let _ = writeln!(
                out,
                "{:>6}  {:>5}  {:>4}  {:>3}  {:>12}  {:>12}  {}",
                d.degree,
                d.total,
                d.even,
                d.odd,
                d.expected,
                d.product_rank,
                verdict_word(d.holds)
            );
        }
        self.generators.text(&mut out);
        let _ = writeln!(out, "verdict: {}", verdict_word(self.verdict));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CsRow {
    pub poly_degree: usize,
    pub constant: String,
    pub polynomials: usize,
    pub tau_nonzero: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyCsReport {
    pub algebra: String,
    pub dim: usize,
    pub max_poly_degree: usize,
    pub conventions: Conventions,
    pub checks: Vec<CsRow>,
    pub verdict: bool,
}

impl Render for VerifyCsReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra: {} (dimension {})", self.algebra, self.dim);
        let _ = writeln!(out, "invariant polynomials up to degree {}", self.max_poly_degree);
        conventions_text(&mut out);
        out.push_str("k  constant  polynomials  tau nonzero  CS = c_k tau\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{}  {:>8}  {:>11}  {:>11}  {}",
                c.poly_degree,
                c.constant,
                c.polynomials,
                c.tau_nonzero,
                verdict_word(c.holds)
            );
        }
        let _ = writeln!(out, "verdict: {}", verdict_word(self.verdict));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaRow {
    pub degree: usize,
    pub f1_dim: usize,
    pub f2_dim: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyLemmaReport {
    pub seed: u64,
    pub ambient_dim: usize,
    pub instances: usize,
    pub passed: usize,
    pub failures: Vec<usize>,
    pub pair: Option<PairInfo>,
    pub pair_degrees: Vec<LemmaRow>,
    pub verdict: bool,
}

impl Render for VerifyLemmaReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "random instances in Q^{} (seed {}): {}/{} pass",
            self.ambient_dim, self.seed, self.passed, self.instances
        );
        for i in &self.failures {
            let _ = writeln!(out, "  instance {i}: FAIL");
        }
        if let Some(p) = &self.pair {
            p.text(&mut out);
            out.push_str("degree  dim F1  dim F2  dim im  dim ker  verdict\n");
            for r in &self.pair_degrees {
                let _ = writeln!(
                    out,
                    "{:>6}  {:>6}  {:>6}  {:>6}  {:>7}  {}",
                    r.degree,
                    r.f1_dim,
                    r.f2_dim,
                    r.image_dim,
                    r.kernel_dim,
                    verdict_word(r.holds)
                );
            }
        }
        let _ = writeln!(out, "verdict: {}", verdict_word(self.verdict));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogPairRow {
    pub name: String,
    pub compact_dual: String,
    pub g_dim: usize,
    pub h_dim: usize,
    pub m_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogAlgebraRow {
    pub name: String,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub pairs: Vec<CatalogPairRow>,
    pub algebras: Vec<CatalogAlgebraRow>,
}

impl Render for CatalogReport {
    fn table(&self) -> String {
        let mut out = String::new();
        let width = self.pairs.iter().map(|p| p.name.len()).max().unwrap_or(4);
        let _ = writeln!(out, "{:<width$}  dim g  dim h  dim m  compact dual", "pair");
        for p in &self.pairs {
            let _ = writeln!(
                out,
                "{:<width$}  {:>5}  {:>5}  {:>5}  {}",
                p.name, p.g_dim, p.h_dim, p.m_dim, p.compact_dual
            );
        }
        out.push_str("\nalgebra   dim\n");
        for a in &self.algebras {
            let _ = writeln!(out, "{:<8}  {:>3}", a.name, a.dim);
        }
        out
    }
}

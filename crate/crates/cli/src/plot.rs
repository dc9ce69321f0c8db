//! Sidecar plotting script (matplotlib) for an occupation CSV.

use std::path::Path;

use crate::config::{Approach, RunConfig};

pub fn plot_script(csv: &Path, cfg: &RunConfig) -> String {
    let name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let label = match cfg.approach {
        Approach::Bare => "bare, renormalized",
        Approach::Dressed => "dressed",
    };
    let p = &cfg.params;
    format!(
        r#"# n0(t) for {label}: omega_bar={wb}, g={g}, beta={beta}, n0={n0}
import csv, math, os
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "{name}")) as fh:
    rows = list(csv.DictReader(fh))
t = [float(r["t"]) for r in rows]

fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(t, [float(r["n0"]) for r in rows], "k-", label="n0(t)")
for col, style in (("term_memory", "b--"), ("term_thermal", "r:")):
    ax.plot(t, [float(r[col]) for r in rows], style, lw=0.8, label=col)
ax.axhline(1.0 / math.expm1({beta} * {wb}), color="grey", lw=0.6, label="Bose value")
ax.set_xlabel("t")
ax.set_ylabel("occupation")
ax.set_title("{label}, g = {g}, beta = {beta}")
ax.legend()
fig.tight_layout()
fig.savefig(os.path.join(here, "{stem}.png"), dpi=150)
"#,
        wb = p.omega_bar,
        g = p.g,
        beta = p.beta,
        n0 = p.n0_init,
        stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
    )
}

"""Check the closed-form error expressions against a Monte Carlo sweep.

Runs a scaled-down MSE-vs-SNR experiment (the bundled presets are the
full-size versions), prints empirical vs predicted error for every curve,
and, when matplotlib is importable, saves the familiar crossing-curves
plot to demos/output/.

Run:  python demos/03_theory_vs_simulation.py
"""

from collections import defaultdict
from pathlib import Path

from wlsubspace.harness import loads_config, run_mse_sweep

CFG = """
experiment = mse_vs_snr
master_seed = 314159
J = 5
gamma2 = 1.0
channels = 150
blocks_per_channel = 10
N = 100
snr_db = 0,5,10,15,20
scenarios = optimal,suboptimal,training
K = 1
"""

cfg = loads_config(CFG)
print("running paired sweep:", cfg.channels, "channels x", cfg.blocks_per_channel, "blocks ...")
rows = run_mse_sweep(cfg, threads=2)

print(f"\n{'snr':>4} {'estimator':<13}{'scenario':<20}{'empirical':>12}{'predicted':>12}{'ratio':>8}")
for r in rows:
    label = r.scenario + (f" K={r.K}" if r.K else "")
    print(
        f"{r.x:>4.0f} {r.estimator:<13}{label:<20}"
        f"{r.empirical_mse:>12.3e}{r.theory_exact:>12.3e}"
        f"{r.empirical_mse / r.theory_exact:>8.3f}"
    )

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not available; skipping the plot")
    raise SystemExit(0)

curves = defaultdict(lambda: {"x": [], "emp": [], "th": []})
for r in rows:
    key = (r.estimator, r.scenario + (f" K={r.K}" if r.K else ""))
    curves[key]["x"].append(r.x)
    curves[key]["emp"].append(r.empirical_mse)
    curves[key]["th"].append(r.theory_exact)

fig, ax = plt.subplots(figsize=(7, 5))
colors = {"conventional": "tab:blue", "wl": "tab:red"}
for (estimator, label), data in sorted(curves.items()):
    color = colors[estimator]
    ax.semilogy(data["x"], data["th"], "-", color=color, alpha=0.7)
    ax.semilogy(
        data["x"], data["emp"], "o", color=color, markersize=4,
        label=f"{estimator} {label}",
    )
ax.set_xlabel("SNR (dB)")
ax.set_ylabel("average squared estimation error")
ax.set_title("markers: simulation; lines: closed form")
ax.grid(True, which="both", alpha=0.3)
ax.legend(fontsize=8)

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)
out_path = out_dir / "theory_vs_simulation.png"
fig.savefig(out_path, dpi=150, bbox_inches="tight")
print(f"\nplot saved to {out_path}")

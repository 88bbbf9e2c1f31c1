"""Twenty S-DES trials with fresh keys, cumulative averages and an SVG chart.

Writes CSVs and a chart under ./demo_out. Rerunning gives byte-identical CSVs.
"""
from pathlib import Path

from vqaa import bench, plot

out = Path("demo_out")
spec = bench.ExperimentSpec.from_dict({
    "target": {"kind": "cipher", "cipher": "sdes"},
    "ansatz": {"n_qubits": 5, "n_layers": 3},
    "optimizer": {"method": "hyperspherical", "max_iterations": 512},
    "encoding": {"kind": "nonorthogonal", "states": 4},
    "trials": 20,
    "seed": 11,
    "baseline": "brute_force",
    "output": {"dir": str(out), "prefix": "sdes"},
})
result = bench.run_experiment(spec)
s = result.summary()
print(f"success rate {s['success_rate']:.0%}, mean iterations {s['mean_iterations']:.1f}, "
      f"mean measurements {s['mean_measurements']:.0f}, brute force {s['baseline_mean_trials']:.0f} trials")
plot.emit_plot(out / "sdes_cumulative.csv", out / "sdes.svg", baseline=512)
print("wrote", ", ".join(str(p) for p in sorted(out.iterdir())))

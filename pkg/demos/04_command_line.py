"""The same capabilities through the command-line interface.

Writes a scenario config, then drives the four verbs in-process:
`wave` and `riemann` emit profile snapshots, `convexity-map` scans the
Hessian of the isentropic pressure, and `simulate` runs the solver.
Everything is strictly deterministic: running this twice produces
byte-identical CSVs.
"""
import json
from pathlib import Path

from radgas.cli_io import main

out = Path(__file__).parent / "out_command_line"
out.mkdir(parents=True, exist_ok=True)
cfg_path = out / "scenario.json"
cfg_path.write_text(json.dumps({
    "label": "cli-demo",
    "gas": {"R": 1.0, "a": 1e-3, "mu": 0.5, "kappa1": 1.0, "kappa2": 0.5,
            "b": 3.0, "d": 0.5},
    "riemann": {"v_minus": 1.0, "u_minus": 0.0, "theta_minus": 1.0,
                "v_plus": 1.0, "u_plus": 0.2},
    "grid": {"L": 50.0, "n": 256},
    "time": {"t_end": 5.0, "cfl": 0.4, "output_interval": 1.0, "snapshot_times": [5.0]},
    "perturbation": [
        {"field": "v", "shape": "gaussian", "amplitude": 0.1, "center": 0.0, "width": 2.0},
    ],
}, indent=2))

for argv in (
    ["--out", str(out), "wave", str(cfg_path), "--t", "5"],
    ["--out", str(out), "riemann", str(cfg_path), "--t", "5"],
    ["--out", str(out), "convexity-map", str(cfg_path), "--a-list", "0,1e-3,1e-2"],
    ["--out", str(out), "simulate", str(cfg_path)],
):
    code = main(argv)
    print(f"radgas {' '.join(argv[2:])}  -> exit {code}")
    assert code == 0

print(f"\nall outputs in {out}/")

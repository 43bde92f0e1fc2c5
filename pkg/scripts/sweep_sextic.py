"""Run the sextic family over a range of Picard ranks and print a summary table.

    python3 scripts/sweep_sextic.py --n-min 3 --n-max 18 --out sweep.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from ncyorders.scenarios import p2_sextic, run_scenario


@dataclass
class SweepConfig:
    n_min: int = 3
    n_max: int = 18
    list_cap: int = 256
    out: str = ""


def row(n: int, cap: int) -> dict:
    t = time.perf_counter()
    r = run_scenario(p2_sextic(n), cap)
    return {
        "n": n,
        "status": r.status,
        "h1": r.sections["h1"]["group"],
        "orders": r.sections["orders"]["count"],
        "nodal": len(r.check("nodal").detail["nodal"]),
        "tritangents": r.sections["tangent_curves"]["tritangents"],
        "K_A": r.sections["canonical"]["K_A"],
        "seconds": round(time.perf_counter() - t, 3),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(SweepConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = SweepConfig(**vars(p.parse_args()))
    rows = [row(n, cfg.list_cap) for n in range(cfg.n_min, cfg.n_max + 1)]
    print(f"{'n':>3} {'status':6} {'H^1':10} {'orders':>7} {'nodal':>5} {'tri':>4} {'K_A':6} {'sec':>6}")
    for r in rows:
        print(f"{r['n']:>3} {r['status']:6} {r['h1']:10} {r['orders']:>7} {r['nodal']:>5} "
              f"{r['tritangents']:>4} {','.join(r['K_A']):6} {r['seconds']:>6}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()

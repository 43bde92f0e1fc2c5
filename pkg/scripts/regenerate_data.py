"""Rewrite the pinned scenario files and the golden reports from the built-in constructions."""

from pathlib import Path

from ncyorders.scenarios import hirzebruch2, load_scenario, p2_sextic, perturbed_sextic, quadric, run_scenario

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "ncyorders" / "data"
GOLDEN = ROOT / "tests" / "golden"
GOLDEN_NAMES = ["p2-sextic-n3", "p2-sextic-n18", "quadric", "hirzebruch2", "p2-sextic-n3-perturbed"]


def main() -> None:
    DATA.mkdir(exist_ok=True)
    GOLDEN.mkdir(exist_ok=True)
    for sc in [p2_sextic(n) for n in range(3, 19)] + [quadric(), hirzebruch2(), perturbed_sextic()]:
        (DATA / f"{sc.name}.json").write_text(sc.dumps() + "\n")
    for name in GOLDEN_NAMES:
        report = run_scenario(load_scenario(DATA / f"{name}.json"))
        (GOLDEN / f"{name}.json").write_text(report.dumps() + "\n")
        print(f"{name}: {report.status}")


if __name__ == "__main__":
    main()

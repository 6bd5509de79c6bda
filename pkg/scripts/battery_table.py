"""Verdict table of the Hopf characterisation battery over the builtin bialgebras."""
import argparse
import time
from dataclasses import dataclass

from coringlab.bialgebra_hopf import hopf_characterisation_battery
from coringlab.workbench_cli import builtin_example, parse_field_spec

BIALGEBRAS = ("kC2", "kC3", "kS3", "dual_kC2", "sweedler4", "monoid_idem")


@dataclass
class Config:
    names: tuple = BIALGEBRAS
    field: str = "Q"
    probes: tuple = (1, 2)
    skip: tuple = ()


def run(cfg: Config):
    F = parse_field_spec(cfg.field)
    out = []
    for name in cfg.names:
        if name in cfg.skip:
            continue
        H = builtin_example(name, F).bialgebras[name]
        t0 = time.perf_counter()
        rep = hopf_characterisation_battery(H, cfg.probes)
        out.append((name, rep.data["verdicts"], rep.data["hopf"], time.perf_counter() - t0))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=list(BIALGEBRAS))
    ap.add_argument("--field", default="Q")
    ap.add_argument("--probes", type=int, nargs="+", default=[1, 2])
    a = ap.parse_args()
    rows = run(Config(tuple(a.names), a.field, tuple(a.probes)))
    keys = sorted(rows[0][1]) if rows else []
    print(f"{'bialgebra':12s} " + " ".join(f"({k})" for k in keys) + "  verdict    secs")
    for name, v, hopf, secs in rows:
        cells = " ".join(f"{'yes' if v[k] else 'no':>3}" for k in keys)
        verdict = {True: "Hopf", False: "not Hopf", None: "split"}[hopf]
        print(f"{name:12s} {cells}  {verdict:9s} {secs:5.1f}")


if __name__ == "__main__":
    main()

"""Solve for antipodes of the builtin bialgebras over several fields and time the solver."""
import argparse
import time
from dataclasses import dataclass

from coringlab.bialgebra_hopf import find_antipode
from coringlab.workbench_cli import builtin_example, parse_field_spec

from battery_table import BIALGEBRAS


@dataclass
class Config:
    fields: tuple = ("Q", "F2", "F3", "F5")
    names: tuple = BIALGEBRAS


def run(cfg: Config):
    rows = []
    for fs in cfg.fields:
        F = parse_field_spec(fs)
        for name in cfg.names:
            if name == "sweedler4" and F.characteristic == 2:
                continue
            H = builtin_example(name, F).bialgebras[name]
            t0 = time.perf_counter()
            r = find_antipode(H)
            rows.append((fs, name, r.found, r.report.ok, r.info.get("rank"), r.info.get("augmented_rank"),
                         time.perf_counter() - t0))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", nargs="+", default=list(Config.fields))
    a = ap.parse_args()
    print(f"{'field':5s} {'bialgebra':12s} {'found':5s} {'laws':4s} {'rank':>4s} {'aug':>4s} {'secs':>6s}")
    for fs, name, found, ok, rk, ark, secs in run(Config(tuple(a.fields))):
        print(f"{fs:5s} {name:12s} {'yes' if found else 'no':5s} {'ok' if ok else 'FAIL':4s} "
              f"{rk!s:>4s} {ark!s:>4s} {secs:6.2f}")


if __name__ == "__main__":
    main()

"""Smoke test for the `ainf` extension module.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import json
from pathlib import Path

import ainf

SPECS = Path(__file__).resolve().parent.parent / "crates" / "cli" / "specs"


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL {what}")
    print(f"ok   {what}")


def main():
    k = ainf.Algebra.fixture("K")
    check(k.dims == [1] and len(k) == 1, "ground field dims")
    check([k.hc(n, max_weight=8) for n in range(7)] == [1, 0, 1, 0, 1, 0, 1], "HC of the ground field")
    hp0 = k.hp(0, max_weight=8)
    check(hp0["dim"] == 1 and hp0["stable_from"] == 1, "HP0 of the ground field")

    m2 = ainf.Algebra.fixture("M2")
    check(len(m2.traces()) == 1, "M2 has one closed trace")
    check(m2.cohomology(0) == 1 and m2.cohomology(1) == 0, "HH^0, HH^1 of M2")

    dg = ainf.Algebra.from_file(str(SPECS / "dg.json"))
    check(dg.homology_dims() == [1, 0], "homology of the dg fixture")
    report = dg.verify("thm45")
    check(report["status"] == "pass", "main comparison on the dg fixture")
    check(dg.verify("cor42")["status"] == "pass", "Lie derivative vanishes on HP")

    eps = ainf.Algebra.from_file(str(SPECS / "dual_numbers.json"))
    m = eps.structure()
    check(m.degree == -1 and m.bracket(m).is_zero(), "[m, m] = 0")
    d = eps.derivation()
    check(d.is_derivation() and d.differential().is_zero(), "Euler derivation is a cocycle")
    bad = ainf.Cochain(eps, 0, [(["1"], "1", "1")])
    check(not bad.is_derivation(), "identity on 1 is not a derivation")
    obs = eps.obstruction()
    check(obs["hochschild_vanishes"] and obs["cyclic_vanishes"], "second-order obstruction vanishes")

    back = ainf.Algebra.from_json(eps.to_json())
    check(back.labels == eps.labels, "spec round trip")

    try:
        ainf.Algebra.from_file(str(SPECS / "bad.json"))
    except ValueError as e:
        check("Stasheff" in str(e), "invalid algebra is rejected")
    else:
        raise SystemExit("FAIL invalid algebra accepted")

    print(json.dumps({"fixtures": ainf.Algebra.fixture_names()}))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Smoke test for the eprseq_py extension module.

Builds the cdylib with cargo, loads it, and exercises the main entry points.
Run from the repository root:  python3 python/smoke_test.py
"""
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "-p", "eprseq-py", "--release"], cwd=ROOT, check=True
    )
    lib = ROOT / "target" / "release" / "libeprseq_py.so"
    if not lib.exists():  # macOS fallback
        lib = ROOT / "target" / "release" / "libeprseq_py.dylib"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="eprseq-py-"))
    shutil.copy(lib, stage / f"eprseq_py{suffix}")
    sys.path.insert(0, str(stage))
    import eprseq_py

    return eprseq_py


def check(name, cond):
    status = "ok" if cond else "FAIL"
    print(f"  {name}: {status}")
    if not cond:
        sys.exit(1)


def main():
    m = build_and_import()
    print("eprseq_py loaded")

    # fixtures and basic sequence computation
    naaana = m.construct("m-naaana", "3", 6)
    check("epr(M_NAAANA) = NAAANA", naaana.epr() == "NAAANA")
    check("pr(M_NAAANA)", naaana.pr() == "1011101")
    ident = m.construct("identity", "5", 4)
    check("epr(I_4 / GF(5)) = AAAA", ident.epr() == "AAAA")

    # text format round trip
    text = naaana.to_text()
    again = m.Matrix.parse(text)
    check("matrix text round trip", again == naaana and again.to_text() == text)

    # epr invariance under scaling and permutation
    j51 = m.construct("j-minus-ki", "3", 5, 1)
    check("epr(J5 - I5) = NAANA", j51.epr() == "NAANA")
    check("scale invariance", j51.scale(2).epr() == j51.epr())
    check("permute invariance", j51.permute([2, 1, 5, 3, 4]).epr() == j51.epr())

    # extension field arithmetic
    gf9 = m.Matrix.from_entries("3^2", 2, [1, 3, 3, 2])
    check("GF(9) matrix rank", gf9.rank() in (1, 2))

    # enumeration and catalog verification
    rep = m.attainable(3, 3, alphabet_an_only=True)
    check(
        "GF(3) n=3 {A,N} attained",
        sorted(rep["attained"]) == ["AAA", "AAN", "ANA", "ANN", "NAA", "NNN"],
    )
    diff = m.verify_catalog(2, 4, "f2")
    check("F2 catalog at n=4", diff["missing"] == [] and diff["extra"] == [])

    # patterns
    check("pattern match", m.pattern_matches("NAAN(AAN)*A", "NAANAANA"))
    check("pattern no-match", not m.pattern_matches("ASA(SA)*N", "AASN"))
    check("catalog expand", "NAAANA" in m.catalog_expand("f3", 6))

    # theorem checks
    check("forbidden NAN (p=3)", len(m.forbidden_scan("NAN", 3)) == 1)
    check("forbidden NAN (p=2)", len(m.forbidden_scan("NAN", 2)) == 0)
    cs = m.ramsey_constraints("NA", 3, 19)
    check(
        "ramsey constraints NA/GF(3)/n=19",
        [(c[0], c[1]) for c in cs] == [(3, "A"), (4, "NS"), (5, "AS")],
    )

    # codes: GF(2) repetition code of length 3
    rep3 = m.analyze_code("2 1 3\n1 1 1\n")
    check("repetition code distance", rep3["min_distance"] == 3)
    check("repetition code bound", rep3["bound"] <= 2)
    check("spark = distance", rep3["spark"] == 3)

    print("all smoke tests passed")


if __name__ == "__main__":
    main()

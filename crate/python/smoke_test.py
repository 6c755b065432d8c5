"""Loads the compiled extension and checks a handful of values.

Build first with: cargo build --release -p hennings-py
"""
import importlib.util
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def find_library():
    for profile in ("release", "debug"):
        for name in ("libhennings_py.so", "libhennings_py.dylib", "hennings_py.dll"):
            p = ROOT / "target" / profile / name
            if p.exists():
                return p
    sys.exit("extension not built; run: cargo build --release -p hennings-py")


def load():
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "hennings_py.so"
    shutil.copy(find_library(), target)
    spec = importlib.util.spec_from_file_location("hennings_py", target)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    h = load()
    r = h.invariant("dbz", 3, "closed; cup 1; xp 1; cap 1")
    assert r["value"] == "1" and r["integral"], r
    r = h.invariant("A", 3, "closed; cup 1; xp 1; xp 1; xp 1; xp 1; xp 1; cap 1")
    assert r["value"] == "-1", r
    assert h.invariant("dbz", 3, "closed; cup 1; cap 1")["value"] == "0"
    assert h.linking_matrix("closed; cup 1; cup 3; xp 2; xp 2; cap 3; cap 1") == [[0, 1], [1, 0]]
    assert h.homology_order("closed; cup 1; xp 1; xp 1; xp 1; cap 1") == 3
    b = h.balance("G2", 5)
    assert b["rho_tau"] == 112 and b["w"] == 1, b
    assert all(o["pass"] for o in h.verify("lie-table", max_rank=4))
    try:
        h.invariant("A", 5, "closed; cup 1; xp 1; xp 1; xp 1; cap 1", max_crossings=1)
    except h.ResourceError:
        pass
    else:
        raise AssertionError("crossing limit not enforced")
    try:
        h.invariant("dbz", 3, "closed; cup 1")
    except ValueError:
        pass
    else:
        raise AssertionError("bad link accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()

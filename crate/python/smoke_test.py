#!/usr/bin/env python3
"""Import the compiled fibpart_py module and spot-check its surface.

Builds are not triggered here: compile the extension first with
`cargo build -p fibpart-py` (or --release), then run this script.
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def locate_library() -> Path:
    candidates = [
        ROOT / "target" / profile / "libfibpart_py.so"
        for profile in ("release", "debug")
    ]
    existing = [p for p in candidates if p.exists()]
    if not existing:
        sys.exit(
            "libfibpart_py.so not found; run `cargo build -p fibpart-py` first"
        )
    return max(existing, key=lambda p: p.stat().st_mtime)


def main() -> None:
    library = locate_library()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy2(library, Path(tmp) / "fibpart_py.so")
        sys.path.insert(0, tmp)
        import fibpart_py as fp

        assert fp.fibs_upto(100) == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]

        p = fp.phi(10)
        assert p.coeffs() == [0, 0, 1, 1]
        assert str(p) == "t^2 + t^3"
        assert fp.phi(13, window=(4, 5)).coeffs() == [0, 0, 1]

        assert fp.delta([]).coeffs() == [1]
        assert fp.delta([2]).coeffs() == [0, 1, 1]

        t = fp.IntPoly([0, 1])
        assert (t * t).coeffs() == [0, 0, 1]
        assert (t - t).coeffs() == []
        assert fp.IntPoly.parse("1 - t + 3*t^4").coeffs() == [1, -1, 0, 0, 3]
        assert fp.IntPoly([1, 2]).norm() == 3

        image = fp.reduce(fp.IntPoly.parse("1+t^4"))
        assert image == fp.CycloElement(3, [1, 1, 0])
        assert image.is_special()
        assert image.special_reason() == "pairwise-diff-sum-two"
        assert image.in_m_after_shift()
        assert fp.reduce(fp.IntPoly.parse("1+t^4"), d=2).coeffs() == [2, 0]

        e = fp.CycloElement(3, [1, 2, 3])
        assert e.mul_by_t().coeffs() == [3, 1, 2]
        assert (e + (-e)).coeffs() == [0, 0, 0]
        assert (e * fp.CycloElement(3, [1, 0, 0])) == e
        assert e.norm() == 6

        s = fp.s_element([1, 0])
        assert s.d() == 3 and s.coeffs() == [0, 1, -1]
        assert fp.s_element([]).coeffs() == [-1, 1, 0]
        assert fp.k_multiplier([5]) == 1

        assert fp.r_counts(10) == [1, 0, 1]
        assert fp.shallit_check(10) == (True, True, True, [1, 0, 1])

        assert fp.chi(10) == [1, -1, -1, 0, 1, 0, 0, 1, -1, 0, 0]
        assert fp.chi_window_max_abs(4, 5) == 1

        report = json.loads(fp.verify_theorem2(lo=1, hi=1000, timing=False))
        assert report["suite"] == "theorem2"
        assert report["violations"] == 0
        assert "duration_ms" not in report

        report = json.loads(
            fp.verify_theorem1(
                mode="random", max_m=5, entry_bound=10, trials=200, seed=7
            )
        )
        assert report["seed"] == 7
        assert report["violations"] == 0

        records = json.loads(fp.explore_hypothesis2(d=4, bounds=[100]))
        assert records[0]["record"] == {
            "d": 4,
            "n_star": 16,
            "i": 1,
            "j": 3,
            "spread": 2,
        }

        try:
            fp.CycloElement(1, [0])
        except ValueError:
            pass
        else:
            raise AssertionError("modulus 1 must be rejected with ValueError")

        try:
            fp.IntPoly([2**62]) * fp.IntPoly([4])
        except OverflowError:
            pass
        else:
            raise AssertionError("coefficient overflow must raise OverflowError")

        print(f"smoke test passed ({library})")


if __name__ == "__main__":
    main()

"""Compare the compiled reflection kernels against the numpy fallback.

The package selects its integrand kernels at import time: compiled
(numba) versions when numba is importable and ``CASIMIR_DISABLE_NUMBA``
is unset, plain-numpy versions otherwise.  This script times one
representative force workload under both selections by re-running
itself in two subprocesses (the selection is frozen at import, so each
measurement needs a fresh interpreter), then reports the timings and
the relative deviation between the two results.

Usage::

    python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def workload():
    """One pass over a representative mix of force evaluations."""
    from casimir.lifshitz import force_plate_plate, force_sphere_plate
    from casimir.models import Dielectric, IdealMetal, preset

    um = 1e-6
    total = 0.0
    for a_um in (0.1, 0.5, 1.0, 5.0):
        total += force_plate_plate(preset("Al"), "modified-sdm",
                                   a_um * um, 300.0).value * a_um ** 4
        total += force_plate_plate(preset("Al-plasma"), "raw",
                                   a_um * um, 300.0).value * a_um ** 4
    total += force_plate_plate(IdealMetal(), "raw", 1.0 * um, 300.0).value
    total += force_plate_plate(Dielectric(eps0=7.0), "raw", 1.0 * um,
                               300.0).value
    total += force_sphere_plate(preset("Al"), "modified-sdm", 1.0 * um,
                                200.0 * um, 300.0).value * 1e9
    return total


def run_inner(repeats):
    from casimir._kernels import NUMBA_ENABLED

    workload()  # warm-up: trigger compilation / cache loading
    start = time.perf_counter()
    checksum = 0.0
    for _ in range(repeats):
        checksum = workload()
    elapsed = time.perf_counter() - start
    print(json.dumps({"numba": NUMBA_ENABLED,
                      "seconds_per_pass": elapsed / repeats,
                      "checksum": checksum}))


def run_outer(repeats):
    results = {}
    for label, disable in (("compiled", ""), ("numpy-fallback", "1")):
        env = dict(os.environ, CASIMIR_DISABLE_NUMBA=disable)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner",
             "--repeats", str(repeats)],
            capture_output=True, text=True, env=env, check=True)
        results[label] = json.loads(proc.stdout.strip().splitlines()[-1])

    fast = results["compiled"]
    slow = results["numpy-fallback"]
    if not fast["numba"]:
        print("note: numba not importable here; both runs used the "
              "numpy fallback")
    denom = max(abs(fast["checksum"]), abs(slow["checksum"]))
    parity = abs(fast["checksum"] - slow["checksum"]) / denom
    print(f"{'kernel selection':<16} {'s/pass':>10}")
    for label in ("compiled", "numpy-fallback"):
        print(f"{label:<16} {results[label]['seconds_per_pass']:>10.4f}")
    speedup = slow["seconds_per_pass"] / fast["seconds_per_pass"]
    print(f"speedup: {speedup:.2f}x")
    print(f"relative deviation between paths: {parity:.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5,
                        help="workload passes per measurement (default 5)")
    parser.add_argument("--inner", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.inner:
        run_inner(args.repeats)
    else:
        run_outer(args.repeats)


if __name__ == "__main__":
    main()

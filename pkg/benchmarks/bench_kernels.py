"""Compare the pure-Python and Cython kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json PATH]

Times the product search on catalog algebras and the Jacobi eigensolver on
random Hermitian matrices, once per available backend. Results from the two
backends are also compared, so a speedup never hides a disagreement.
"""
import argparse
import json
import platform
import time

import numpy as np

from seaworks import _kernels
from seaworks.ea_construct import boolean, cartesian_product, chain, diamond, horizontal_sum
from seaworks.seq_solver import enumerate_products

ALGEBRAS = [
    ("C3", lambda: chain(2)),
    ("chain(4)", lambda: chain(4)),
    ("D", diamond),
    ("B4", lambda: boolean(2)),
    ("B8", lambda: boolean(3)),
    ("HS(B4,C3)", lambda: horizontal_sum([boolean(2), chain(2)])),
    ("B4xC3", lambda: cartesian_product([boolean(2), chain(2)])),
    ("B16", lambda: boolean(4)),
]
DIMS = [2, 4, 8, 16, 32]


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_search(backends, repeat):
    rows = []
    for name, make in ALGEBRAS:
        E = make()
        row = {"algebra": name, "size": E.n}
        verdicts = set()
        for bname, mod in backends.items():
            t, out = best_of(lambda: enumerate_products(E, backend=mod), repeat)
            row[bname] = t
            verdicts.add((out.verdict, tuple(tb.flat() for tb in out.tables)))
        row["agree"] = len(verdicts) == 1
        row["verdict"] = next(iter(verdicts))[0]
        rows.append(row)
    return rows


def bench_eigh(backends, repeat, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for d in DIMS:
        x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        a = (x + x.conj().T) / 2
        row = {"dim": d}
        spectra = []
        for bname, mod in backends.items():
            t, (w, _) = best_of(lambda: mod.jacobi_eigh(a), repeat)
            row[bname] = t
            spectra.append(np.sort(np.asarray(w)))
        t, _ = best_of(lambda: np.linalg.eigh(a), repeat)
        row["numpy"] = t
        row["agree"] = all(np.allclose(s, spectra[0], atol=1e-12) for s in spectra)
        rows.append(row)
    return rows


def fmt(t):
    return f"{t * 1e3:9.3f} ms"


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--json", help="also write results here")
    args = p.parse_args(argv)

    backends = _kernels.backends()
    print(f"python {platform.python_version()}, backends: {', '.join(backends)}, "
          f"default: {_kernels.BACKEND}, best of {args.repeat}")

    search = bench_search(backends, args.repeat)
    print("\nproduct search")
    head = f"{'algebra':<12}{'n':>4}  {'verdict':<8}" + "".join(f"{b:>13}" for b in backends)
    print(head + ("      speedup" if "cython" in backends else ""))
    for r in search:
        line = f"{r['algebra']:<12}{r['size']:>4}  {r['verdict']:<8}" + \
            "".join(fmt(r[b]).rjust(13) for b in backends)
        if "cython" in backends:
            line += f"{r['python'] / max(r['cython'], 1e-9):12.1f}x"
        print(line + ("" if r["agree"] else "  DISAGREE"))

    eig = bench_eigh(backends, args.repeat)
    print("\nJacobi eigensolver")
    print(f"{'dim':<6}" + "".join(f"{b:>13}" for b in [*backends, "numpy"]))
    for r in eig:
        print(f"{r['dim']:<6}" + "".join(fmt(r[b]).rjust(13) for b in [*backends, "numpy"])
              + ("" if r["agree"] else "  DISAGREE"))

    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"search": search, "eigh": eig, "backends": list(backends)}, fh, indent=2)
    return 0 if all(r["agree"] for r in search + eig) else 1


if __name__ == "__main__":
    raise SystemExit(main())

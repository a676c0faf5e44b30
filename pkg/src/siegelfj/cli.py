"""Command-line interface: ``siegelfj compute | dims | verify | jacobi``.

Exit codes: 0 success, 1 I/O error, 2 usage, 3 verification failure,
4 precision cap reached.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import ParseError, PrecisionCapError, PrecisionError, UnsupportedWeightError
from .formal_fj import (
    SiegelFourier, check_weight, compute_siegel_space, extract_siegel_fourier,
    precision_floor, reduced_universe, solve_fm_space,
)
from .io import (
    JacobiCache, atomic_write, checksum, deserialize_siegel, read_manifest,
    serialize_jacobi_basis, write_space,
)
from .jacobi import cusp_forms, jacobi_basis
from .linalg import combine, echelonize, in_rowspace
from .oracles import dim_siegel_even, saito_kurokawa_lift, siegel_product

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_CAP = 4

log = logging.getLogger("siegelfj")


@dataclass(frozen=True)
class RunConfig:
    weight: int
    out: Path
    precision: int | None = None
    cache_dir: Path | None = None
    max_precision: int = 20
    format: str = "siegelfj-manifest/1"

    def __post_init__(self):
        check_weight(self.weight)
        if self.precision is not None and self.precision < precision_floor(self.weight):
            raise PrecisionError(
                f"-B {self.precision} is below the precision floor "
                f"{precision_floor(self.weight)} for weight {self.weight}")


def _provider(cache_dir):
    return JacobiCache(cache_dir) if cache_dir else None


def cmd_compute(config: RunConfig) -> int:
    fm, prec = compute_siegel_space(config.weight, max_precision=config.max_precision,
                                    start=config.precision, provider=_provider(config.cache_dir))
    manifest = write_space(config.out, config.weight, prec, fm.siegel_basis(),
                           dim_siegel_even(config.weight))
    print(f"weight {config.weight}: dimension {manifest['dimension']} at precision B = {prec}")
    print(f"wrote {len(manifest['elements'])} element file(s) and manifest.json to {config.out}")
    return EXIT_OK


def cmd_dims(kmin: int, kmax: int, out=None) -> int:
    out = out or sys.stdout
    print("k\tdim", file=out)
    for k in range(kmin + kmin % 2, kmax + 1, 2):
        print(f"{k}\t{dim_siegel_even(k)}", file=out)
    return EXIT_OK


def cmd_jacobi(k: int, m: int, prec: int | None, out: Path | None) -> int:
    if prec is None:
        prec = (k + 2 * m) // 12 + 2
    text = serialize_jacobi_basis(jacobi_basis(k, m, prec))
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write(out, text)
    return EXIT_OK


def load_space(manifest_path) -> tuple[dict, list[SiegelFourier], list[str]]:
    """Read a manifest and its element files; returns ``(manifest, elements, problems)``."""
    manifest_path = Path(manifest_path)
    manifest = read_manifest(manifest_path)
    problems = []
    elements = []
    for entry in manifest["elements"]:
        path = manifest_path.parent / entry["file"]
        data = path.read_bytes()
        if checksum(data) != entry["sha256"]:
            problems.append(f"checksum mismatch for {entry['file']}")
        try:
            sf = deserialize_siegel(data.decode("utf-8"))
        except ParseError as exc:
            problems.append(f"{entry['file']}: {exc}")
            continue
        if (sf.weight, sf.precision) != (manifest["weight"], manifest["precision"]):
            problems.append(f"{entry['file']}: header disagrees with the manifest")
        elements.append(sf)
    return manifest, elements, problems


def _mismatches(sf: SiegelFourier, basis) -> list[tuple[int, int, int]]:
    # expand sf along the basis pivots; coordinates that disagree are reported
    expected = combine([sf.coeffs.get(p, 0) for p in basis.pivots], basis.rows)
    return [key for key in basis.order if sf.coeffs.get(key, 0) != expected.get(key, 0)]


def verify_space(manifest_path, against=None, out=None) -> bool:
    out = out or sys.stdout
    ok = True

    def report(passed, message):
        nonlocal ok
        ok = ok and passed
        print(f"{'PASS' if passed else 'FAIL'}  {message}", file=out)

    manifest, elements, problems = load_space(manifest_path)
    k, prec = manifest["weight"], manifest["precision"]
    report(not problems, "checksums and file format" + "".join(f"; {p}" for p in problems))
    target = dim_siegel_even(k)
    report(manifest["dimension"] == target == len(manifest["elements"]),
           f"dimension {manifest['dimension']} (expected {target})")
    if not elements and target:
        return False

    for i, sf in enumerate(elements):
        trunc = sf.to_truncation()
        bad = trunc.symmetry_violations()
        report(not bad, f"element {i}: symmetry scan" + (f" violated at {bad[:5]}" if bad else ""))
        bad_m = [m for m, phi in enumerate(trunc.components)
                 if not in_rowspace(phi.coeffs, jacobi_basis(k, m, prec).basis)[0]]
        report(not bad_m, f"element {i}: Fourier-Jacobi coefficients are Jacobi forms"
               + (f"; fails for m = {bad_m}" if bad_m else ""))

    space = solve_fm_space(k, prec).siegel_basis()
    for i, sf in enumerate(elements):
        member, _ = in_rowspace(sf.coeffs, space)
        detail = "" if member else f"; wrong coefficient(s) at (n, r, m) = {_mismatches(sf, space)[:10]}"
        report(member, f"element {i}: lies in the recomputed space{detail}")

    stored = echelonize([sf.coeffs for sf in elements], reduced_universe(prec))
    if stored.rank != len(elements):
        report(False, "elements are linearly independent")
    if k >= 10 and prec >= 2:
        jprec = max((prec - 1) ** 2 + 1, (k + 2) // 12 + 2)
        for j, phi in enumerate(cusp_forms(jacobi_basis(k, 1, jprec))):
            lift = extract_siegel_fourier(saito_kurokawa_lift(phi, prec))
            report(in_rowspace(lift.coeffs, stored)[0],
                   f"Saito-Kurokawa lift of Jacobi cusp form {j} lies in the span")

    if against is not None:
        other, other_elements, other_problems = load_space(against)
        report(not other_problems, f"second manifest {against} loads cleanly")
        common = min(prec, other["precision"])
        k2 = k + other["weight"]
        fm, _ = compute_siegel_space(k2, start=max(common, precision_floor(k2)))
        target_space = echelonize([s.truncate(common).coeffs for s in fm.siegel_elements()],
                                  reduced_universe(common))
        for i, a in enumerate(elements):
            for j, b in enumerate(other_elements):
                prod = siegel_product(a.truncate(common).to_truncation(),
                                      b.truncate(common).to_truncation())
                report(in_rowspace(extract_siegel_fourier(prod).coeffs, target_space)[0],
                       f"product of element {i} and element {j} lies in weight {k2}")
    return ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="siegelfj", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the space of Siegel modular forms of weight k")
    p.add_argument("-k", "--weight", type=int, required=True)
    p.add_argument("-B", "--precision", type=int)
    p.add_argument("-o", "--out", type=Path)
    p.add_argument("--cache-dir", type=Path)
    p.add_argument("--max-B", type=int, default=20, dest="max_precision")

    p = sub.add_parser("dims", help="print dim M^(2)_k for even k in a range")
    p.add_argument("kmin", type=int)
    p.add_argument("kmax", type=int, nargs="?")

    p = sub.add_parser("verify", help="re-check a computed space")
    p.add_argument("manifest", type=Path)
    p.add_argument("--against", type=Path, help="second manifest for the product check")

    p = sub.add_parser("jacobi", help="dump an echelon basis of J_{k,m}")
    p.add_argument("-k", "--weight", type=int, required=True)
    p.add_argument("-m", "--index", type=int, required=True)
    p.add_argument("-B", "--precision", type=int)
    p.add_argument("-o", "--out", type=Path)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if args.command == "compute":
            config = RunConfig(weight=args.weight, precision=args.precision,
                               out=args.out or Path(f"siegel_k{args.weight}"),
                               cache_dir=args.cache_dir, max_precision=args.max_precision)
            return cmd_compute(config)
        if args.command == "dims":
            kmax = args.kmin if args.kmax is None else args.kmax
            return cmd_dims(args.kmin, kmax)
        if args.command == "jacobi":
            return cmd_jacobi(args.weight, args.index, args.precision, args.out)
        if args.command == "verify":
            return EXIT_OK if verify_space(args.manifest, args.against) else EXIT_VERIFY
    except (UnsupportedWeightError, PrecisionError) as exc:
        print(f"siegelfj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionCapError as exc:
        print(f"siegelfj: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, ValueError) as exc:
        print(f"siegelfj: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Text formats, manifests and the on-disk Jacobi basis cache.

Siegel coefficient files hold one record ``n r m num/den`` per reduced
triple ``0 <= r <= n <= m < B``, in lexicographic ``(m, n, r)`` order,
preceded by a ``# siegel weight K precision B`` header. Jacobi basis files
hold a ``# jacobi ...`` header followed by ``element i`` blocks of
``n r num/den`` records over canonical pairs. Files are UTF-8 with LF line
endings, and the same object always serializes to the same bytes.
"""
from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from fractions import Fraction
from math import gcd
from pathlib import Path

from .errors import ParseError
from .formal_fj import SiegelFourier, reduced_universe
from .jacobi import JacobiBasis, jacobi_basis, jacobi_universe
from .linalg import CoeffVector, EchelonBasis, echelonize

MANIFEST_FORMAT = "siegelfj-manifest/1"

_RATIONAL = re.compile(r"^(-?\d+)/(\d+)$")
_SIEGEL_HEADER = re.compile(r"^# siegel weight (\d+) precision (\d+)$")
_JACOBI_HEADER = re.compile(
    r"^# jacobi weight (\d+) index (\d+) precision (\d+) dimension (\d+)$")


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str, lineno: int = 0) -> Fraction:
    match = _RATIONAL.match(text)
    if not match:
        raise ParseError(lineno, f"malformed rational {text!r}")
    num, den = int(match.group(1)), int(match.group(2))
    if den == 0:
        raise ParseError(lineno, "zero denominator")
    if gcd(num, den) != 1 or (num == 0 and den != 1):
        raise ParseError(lineno, f"rational {text!r} not in lowest terms")
    if match.group(1).startswith("-0"):
        raise ParseError(lineno, f"malformed rational {text!r}")
    return Fraction(num, den)


def serialize_siegel(sf: SiegelFourier) -> str:
    lines = [f"# siegel weight {sf.weight} precision {sf.precision}"]
    for n, r, m in reduced_universe(sf.precision):
        lines.append(f"{n} {r} {m} {format_rational(sf.coeffs.get((n, r, m), 0))}")
    return "\n".join(lines) + "\n"


def _lines(text: str):
    if "\r" in text:
        raise ParseError(1 + text[: text.index("\r")].count("\n"), "CR line ending")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _ints(fields, lineno):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(fields)!r}") from None


def deserialize_siegel(text: str) -> SiegelFourier:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty file")
    header = _SIEGEL_HEADER.match(lines[0])
    if not header:
        raise ParseError(1, f"bad header {lines[0]!r}")
    weight, prec = int(header.group(1)), int(header.group(2))
    expected = reduced_universe(prec)
    records = lines[1:]
    coeffs = {}
    for i, line in enumerate(records):
        lineno = i + 2
        fields = line.split(" ")
        if len(fields) != 4:
            raise ParseError(lineno, f"expected 'n r m num/den', got {line!r}")
        key = tuple(_ints(fields[:3], lineno))
        if i >= len(expected) or key != expected[i]:
            want = expected[i] if i < len(expected) else "end of file"
            raise ParseError(lineno, f"record {key} out of place (expected {want})")
        coeffs[key] = parse_rational(fields[3], lineno)
    if len(records) != len(expected):
        raise ParseError(len(lines) + 1, f"missing records from {expected[len(records)]}")
    return SiegelFourier(weight, prec, CoeffVector(coeffs))


def serialize_jacobi_basis(jb: JacobiBasis) -> str:
    lines = [f"# jacobi weight {jb.weight} index {jb.index} "
             f"precision {jb.precision} dimension {jb.dimension}"]
    universe = jacobi_universe(jb.index, jb.precision)
    for i, row in enumerate(jb.basis.rows):
        lines.append(f"element {i}")
        lines.extend(f"{n} {r} {format_rational(row.get((n, r), 0))}" for n, r in universe)
    return "\n".join(lines) + "\n"


def deserialize_jacobi_basis(text: str) -> JacobiBasis:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty file")
    header = _JACOBI_HEADER.match(lines[0])
    if not header:
        raise ParseError(1, f"bad header {lines[0]!r}")
    k, m, prec, dim = (int(g) for g in header.groups())
    universe = jacobi_universe(m, prec)
    block = len(universe) + 1
    if len(lines) - 1 != dim * block:
        raise ParseError(len(lines), f"expected {dim} elements of {len(universe)} records")
    rows = []
    for e in range(dim):
        start = 1 + e * block
        if lines[start] != f"element {e}":
            raise ParseError(start + 1, f"expected 'element {e}', got {lines[start]!r}")
        vals = {}
        for j, (n, r) in enumerate(universe):
            lineno = start + j + 2
            fields = lines[start + j + 1].split(" ")
            if len(fields) != 3:
                raise ParseError(lineno, "expected 'n r num/den'")
            if tuple(_ints(fields[:2], lineno)) != (n, r):
                raise ParseError(lineno, f"record out of place (expected {(n, r)})")
            vals[(n, r)] = parse_rational(fields[2], lineno)
        rows.append(CoeffVector(vals))
    basis = echelonize(rows, universe)
    if basis.rows != tuple(rows):
        raise ParseError(1, "stored basis is not in reduced row-echelon form")
    return JacobiBasis(k, m, prec, basis)


def checksum(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` (UTF-8, LF) to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(text.encode("utf-8"))
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def dump_manifest(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_space(out_dir, weight: int, precision: int, basis: EchelonBasis,
                target_dimension: int) -> dict:
    """Write one coefficient file per basis row plus ``manifest.json``."""
    out_dir = Path(out_dir)
    elements = []
    for i, row in enumerate(basis.rows):
        name = f"element_{i:03d}.txt"
        text = serialize_siegel(SiegelFourier(weight, precision, row))
        atomic_write(out_dir / name, text)
        elements.append({"file": name, "sha256": checksum(text)})
    manifest = {
        "format": MANIFEST_FORMAT,
        "weight": weight,
        "precision": precision,
        "dimension": basis.rank,
        "target_dimension": target_dimension,
        "elements": elements,
    }
    atomic_write(out_dir / "manifest.json", dump_manifest(manifest))
    return manifest


def read_manifest(path) -> dict:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("format") != MANIFEST_FORMAT:
        raise ValueError(f"{path}: not a {MANIFEST_FORMAT} manifest")
    return data


class JacobiCache:
    """Jacobi basis provider backed by a directory of serialized bases.

    Keys are ``(k, m, B)``; a miss computes the basis and stores it
    atomically, so interrupted runs resume from what is already on disk.
    """

    def __init__(self, directory, compute=jacobi_basis):
        self.directory = Path(directory)
        self.compute = compute
        self.hits = 0
        self.misses = 0

    def path(self, k: int, m: int, prec: int) -> Path:
        return self.directory / f"jacobi_k{k}_m{m}_B{prec}.txt"

    def __call__(self, k: int, m: int, prec: int) -> JacobiBasis:
        path = self.path(k, m, prec)
        if path.exists():
            jb = deserialize_jacobi_basis(path.read_text(encoding="utf-8"))
            if (jb.weight, jb.index, jb.precision) == (k, m, prec):
                self.hits += 1
                return jb
        self.misses += 1
        jb = self.compute(k, m, prec)
        atomic_write(path, serialize_jacobi_basis(jb))
        return jb

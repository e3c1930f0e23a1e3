"""Plain-text density-matrix format.

::

    dims: 2 2
    0 0 0.5 0.0
    1 2 -0.5 0.0
    ...

The first line lists subsystem dimensions. Every following line is one entry
``i j re im`` with 0-based row-major indices; entries not listed are zero.
Blank lines and lines starting with ``#`` are ignored.
"""

from math import prod
from pathlib import Path

import numpy as np

from .errors import DensityFormatError, InvalidDensity
from .states import DensityMatrix


def parse_density(text: str) -> DensityMatrix:
    dims = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dims is None:
            if not line.startswith("dims:"):
                raise DensityFormatError("expected 'dims: d1 d2 ...'", lineno)
            try:
                dims = tuple(int(tok) for tok in line[len("dims:"):].split())
            except ValueError:
                raise DensityFormatError(f"non-integer dimension in {line!r}", lineno) from None
            if not dims or any(d < 2 for d in dims):
                raise DensityFormatError("dimensions must be integers >= 2", lineno)
            n = prod(dims)
            continue
        parts = line.split()
        if len(parts) != 4:
            raise DensityFormatError(f"expected 'i j re im', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            value = complex(float(parts[2]), float(parts[3]))
        except ValueError:
            raise DensityFormatError(f"cannot parse entry {line!r}", lineno) from None
        if not (0 <= i < n and 0 <= j < n):
            raise DensityFormatError(f"index ({i}, {j}) outside {n}x{n}", lineno)
        entries.append((i, j, value))
    if dims is None:
        raise DensityFormatError("missing 'dims:' line", 1)
    mat = np.zeros((n, n), dtype=complex)
    for i, j, value in entries:
        mat[i, j] = value
    try:
        return DensityMatrix(mat, dims)
    except InvalidDensity as exc:
        raise DensityFormatError(f"invalid density matrix: {exc}") from None


def format_density(rho: DensityMatrix) -> str:
    lines = ["dims: " + " ".join(str(d) for d in rho.dims)]
    for (i, j), value in np.ndenumerate(rho.matrix):
        if value != 0:
            lines.append(f"{i} {j} {float(value.real)!r} {float(value.imag)!r}")
    return "\n".join(lines) + "\n"


def read_density(path) -> DensityMatrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DensityFormatError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_density(text)
    except DensityFormatError as exc:
        raise DensityFormatError(f"{path}: {exc}") from None


def write_density(rho: DensityMatrix, path) -> None:
    Path(path).write_text(format_density(rho))

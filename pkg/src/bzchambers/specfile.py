"""Reading and writing manifold spec files.

A spec file is a JSON object.  Rationals are written as JSON integers or as
strings ``"p/q"``; JSON floats are refused because they are not exact.

.. code-block:: json

    {
      "rank": 2,
      "half_dim": 2,
      "fujiki": 3,
      "basis_labels": ["H", "delta"],
      "gram": [[2, 0], [0, -2]],
      "ample": [2, -1],
      "primes": [{"label": "delta", "coords": [0, 1]}],
      "annotations": [{"label": "3H-2delta", "coords": [3, -2], "role": "nef"}]
    }

``basis_labels``, ``primes`` and ``annotations`` are optional.  Annotations
are extra labeled classes carried along for reports and figures (for
instance a known nef boundary ray); they take no part in any computation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import BZError, InputError
from .lattice import RATIONAL_TEXT, ManifoldSpec, Prime
from .zariski import ValidationReport, validate_spec

KEYS = ("rank", "half_dim", "fujiki", "basis_labels", "gram", "ample", "primes", "annotations")
REQUIRED = ("rank", "half_dim", "fujiki", "gram", "ample")


class SpecParseError(InputError):
    """Malformed spec file.  Carries a line/column or a key path when known."""

    def __init__(self, message, line=None, col=None, path=None):
        self.line, self.col, self.path = line, col, path
        where = []
        if line is not None:
            where.append(f"line {line}, column {col}")
        if path:
            where.append(path)
        super().__init__(f"{': '.join(where)}: {message}" if where else message)


class SpecValidationError(BZError):
    """The spec parsed but violates the lattice axioms."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(str(report))


def _rational(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SpecParseError(f"expected an integer or a 'p/q' string, got {json.dumps(x)}", path=path)
    if isinstance(x, str) and not RATIONAL_TEXT.match(x.strip()):
        raise SpecParseError(f"not a rational number: {json.dumps(x)}", path=path)
    try:
        return Fraction(x.strip()) if isinstance(x, str) else Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise SpecParseError(f"not a rational number: {json.dumps(x)}", path=path) from None


def _vector(x, n, path):
    if not isinstance(x, list):
        raise SpecParseError("expected a list", path=path)
    if len(x) != n:
        raise SpecParseError(f"expected {n} entries, got {len(x)}", path=path)
    return tuple(_rational(v, f"{path}[{i}]") for i, v in enumerate(x))


def _positive_int(x, path):
    if isinstance(x, bool) or not isinstance(x, int) or x < 1:
        raise SpecParseError(f"expected a positive integer, got {json.dumps(x)}", path=path)
    return x


def _labeled(items, n, path, with_role=False):
    if not isinstance(items, list):
        raise SpecParseError("expected a list", path=path)
    out = []
    for k, item in enumerate(items):
        p = f"{path}[{k}]"
        if not isinstance(item, dict):
            raise SpecParseError("expected an object with 'label' and 'coords'", path=p)
        allowed = {"label", "coords", "role"} if with_role else {"label", "coords"}
        extra = sorted(set(item) - allowed)
        if extra:
            raise SpecParseError(f"unknown key {extra[0]!r}", path=p)
        if not isinstance(item.get("label"), str) or not item["label"]:
            raise SpecParseError("missing or empty 'label'", path=p)
        if "coords" not in item:
            raise SpecParseError("missing 'coords'", path=p)
        coords = _vector(item["coords"], n, f"{p}.coords")
        if with_role:
            role = item.get("role", "")
            if not isinstance(role, str):
                raise SpecParseError("'role' must be a string", path=f"{p}.role")
            out.append((item["label"], coords, role))
        else:
            out.append(Prime(item["label"], coords))
    return tuple(out)


def spec_from_dict(data) -> ManifoldSpec:
    """Build a spec from parsed JSON, reporting the key path of any error."""
    if not isinstance(data, dict):
        raise SpecParseError("top level must be a JSON object")
    extra = sorted(set(data) - set(KEYS))
    if extra:
        raise SpecParseError(f"unknown key {extra[0]!r}", path=extra[0])
    for key in REQUIRED:
        if key not in data:
            raise SpecParseError(f"missing required key {key!r}", path=key)
    rank = _positive_int(data["rank"], "rank")
    half_dim = _positive_int(data["half_dim"], "half_dim")
    fujiki = _rational(data["fujiki"], "fujiki")
    gram = data["gram"]
    if not isinstance(gram, list) or len(gram) != rank:
        raise SpecParseError(f"expected {rank} rows", path="gram")
    gram = tuple(_vector(row, rank, f"gram[{i}]") for i, row in enumerate(gram))
    ample = _vector(data["ample"], rank, "ample")
    labels = data.get("basis_labels", [f"e{i}" for i in range(rank)])
    if (not isinstance(labels, list) or len(labels) != rank
            or not all(isinstance(s, str) and s for s in labels)):
        raise SpecParseError(f"expected {rank} nonempty strings", path="basis_labels")
    if len(set(labels)) != rank:
        raise SpecParseError("basis labels must be distinct", path="basis_labels")
    primes = _labeled(data.get("primes", []), rank, "primes")
    names = [p.label for p in primes]
    if len(set(names)) != len(names):
        raise SpecParseError("prime labels must be distinct", path="primes")
    notes = _labeled(data.get("annotations", []), rank, "annotations", with_role=True)
    return ManifoldSpec(rank, half_dim, fujiki, gram, ample, primes, tuple(labels), notes)


def loads(text: str, validate: bool = True) -> ManifoldSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, line=exc.lineno, col=exc.colno) from None
    spec = spec_from_dict(data)
    if validate:
        report = validate_spec(spec)
        if not report.ok:
            raise SpecValidationError(report)
    return spec


def load_spec(path, validate: bool = True) -> ManifoldSpec:
    """Parse and (by default) validate a spec file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, validate)


def _num(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else json.dumps(f"{x.numerator}/{x.denominator}")


def _row(xs) -> str:
    return "[" + ", ".join(_num(x) for x in xs) + "]"


def dumps(spec: ManifoldSpec) -> str:
    """Canonical serialization; ``loads(dumps(s)) == s``."""
    lines = [
        "{",
        f'  "rank": {spec.rank},',
        f'  "half_dim": {spec.half_dim},',
        f'  "fujiki": {_num(spec.fujiki)},',
        f'  "basis_labels": {json.dumps(list(spec.basis_labels), ensure_ascii=False)},',
        '  "gram": [' + ", ".join(_row(r) for r in spec.gram) + "],",
        f'  "ample": {_row(spec.ample)},',
    ]
    prime_items = [f'{{"label": {json.dumps(p.label, ensure_ascii=False)}, "coords": {_row(p.coords)}}}'
                   for p in spec.primes]
    note_items = [f'{{"label": {json.dumps(lab, ensure_ascii=False)}, "coords": {_row(c)}, '
                  f'"role": {json.dumps(role, ensure_ascii=False)}}}'
                  for lab, c, role in spec.annotations]
    lines.append('  "primes": [' + _items(prime_items) + "]" + ("," if note_items else ""))
    if note_items:
        lines.append('  "annotations": [' + _items(note_items) + "]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _items(items) -> str:
    if not items:
        return ""
    return "\n    " + ",\n    ".join(items) + "\n  "


def dump_spec(spec: ManifoldSpec, path) -> None:
    Path(path).write_text(dumps(spec), encoding="utf-8")

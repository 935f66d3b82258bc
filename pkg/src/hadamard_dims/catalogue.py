"""Variety description files and the shipped catalogue.

A description file is plain text, one ``key: value`` per line, keys in this
order::

    name: twisted_cubic
    n: 3
    kind: param
    params: s t
    poly: s^3
    poly: s^2*t
    ...
    declared_dim: 1        (implicit only)
    known_point: 1 0 0     (optional)
    note: free text        (optional)

Polynomials use integer coefficients; they are reduced modulo the working
prime only when the spec is built with :meth:`VarietySpec.build`. Files
written by :meth:`VarietySpec.to_text` round-trip byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import VarietyFileError
from .poly import default_variables, parse
from .variety import Implicit, Param, ProjectivePoint, Variety

CATALOGUE_PREFIX = "catalogue:"
_KEYS = ("name", "n", "kind", "params", "poly", "declared_dim", "known_point", "note")


@dataclass(frozen=True)
class VarietySpec:
    name: str
    n: int
    kind: str
    polys: tuple[str, ...]
    params: tuple[str, ...] = ()
    declared_dim: int | None = None
    known_point: tuple[int, ...] | None = None
    note: str | None = None

    @property
    def variables(self) -> tuple[str, ...]:
        return self.params if self.kind == "param" else tuple(default_variables(self.n + 1))

    def build(self, p: int) -> Variety:
        polys = tuple(parse(s, self.variables, p) for s in self.polys)
        if self.kind == "param":
            return Param(self.name, self.n, polys, (len(self.params),), self.params, source=self)
        known = ProjectivePoint(self.known_point, p) if self.known_point else None
        X = Implicit(self.name, self.n, polys, self.declared_dim, known, source=self)
        if known is not None and not X.contains(known.coords):
            raise VarietyFileError(f"{self.name}: known_point is not on the variety mod {p}")
        return X

    def to_text(self) -> str:
        lines = [f"name: {self.name}", f"n: {self.n}", f"kind: {self.kind}"]
        if self.kind == "param":
            lines.append("params: " + " ".join(self.params))
        lines.extend(f"poly: {s}" for s in self.polys)
        if self.declared_dim is not None:
            lines.append(f"declared_dim: {self.declared_dim}")
        if self.known_point is not None:
            lines.append("known_point: " + " ".join(str(c) for c in self.known_point))
        if self.note is not None:
            lines.append(f"note: {self.note}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> VarietySpec:
        fields: dict[str, list[str]] = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            if not raw.strip():
                continue
            key, sep, value = raw.partition(":")
            key = key.strip()
            if not sep or key not in _KEYS:
                raise VarietyFileError(f"line {lineno}: expected 'key: value' with key in {_KEYS}")
            if key != "poly" and key in fields:
                raise VarietyFileError(f"line {lineno}: duplicate key {key!r}")
            fields.setdefault(key, []).append(value.strip())
        for key in ("name", "n", "kind", "poly"):
            if key not in fields:
                raise VarietyFileError(f"missing key {key!r}")
        kind = fields["kind"][0]
        if kind not in ("param", "implicit"):
            raise VarietyFileError(f"kind must be 'param' or 'implicit', got {kind!r}")
        try:
            n = int(fields["n"][0])
            declared = int(fields["declared_dim"][0]) if "declared_dim" in fields else None
            known = tuple(int(c) for c in fields["known_point"][0].split()) if "known_point" in fields else None
        except ValueError as exc:
            raise VarietyFileError(str(exc)) from None
        params = tuple(fields.get("params", [""])[0].split())
        if kind == "param" and not params:
            raise VarietyFileError("param varieties need a 'params' line")
        if kind == "implicit" and declared is None:
            raise VarietyFileError("implicit varieties need 'declared_dim'")
        return cls(
            name=fields["name"][0],
            n=n,
            kind=kind,
            polys=tuple(fields["poly"]),
            params=params,
            declared_dim=declared,
            known_point=known,
            note=fields["note"][0] if "note" in fields else None,
        )


def catalogue_dir():
    return resources.files("hadamard_dims") / "catalogue"


def catalogue_names() -> list[str]:
    return sorted(p.name[:-4] for p in catalogue_dir().iterdir() if p.name.endswith(".var"))


def catalogue_text(name: str) -> str:
    path = catalogue_dir() / f"{name}.var"
    if not path.is_file():
        raise VarietyFileError(f"no catalogue entry {name!r}; known: {', '.join(catalogue_names())}")
    return path.read_text(encoding="utf-8")


def load_spec(ref: str) -> VarietySpec:
    """Resolve ``catalogue:<name>`` or a filesystem path to a spec."""
    if ref.startswith(CATALOGUE_PREFIX):
        return VarietySpec.from_text(catalogue_text(ref[len(CATALOGUE_PREFIX):]))
    path = Path(ref)
    if not path.is_file():
        raise VarietyFileError(f"no such variety file: {ref}")
    return VarietySpec.from_text(path.read_text(encoding="utf-8"))


def catalogue(name: str, p: int) -> Variety:
    return load_spec(CATALOGUE_PREFIX + name).build(p)

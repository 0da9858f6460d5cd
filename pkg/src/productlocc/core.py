"""Exact-integer product states, state sets and the line-oriented state-set file format.

Basis indices are 1-based everywhere a user can see them (labels, files, rendering).
Party indices in the public API are 1-based as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

FAMILIES = ("bipartite", "even", "tripartite", "odd", "external")


class ParameterError(ValueError):
    """Construction parameters violate a documented bound."""


class ShapeMismatchError(ValueError):
    """Two objects that must share a system shape do not."""


class FormatError(ValueError):
    """A state-set file could not be parsed."""


class OrthogonalityError(ValueError):
    """A state set that must be pairwise orthogonal is not."""

    def __init__(self, pairs):
        self.pairs = list(pairs)
        shown = ", ".join(f"({a}, {b})" for a, b in self.pairs[:10])
        more = "" if len(self.pairs) <= 10 else f" ... ({len(self.pairs)} total)"
        super().__init__(f"non-orthogonal pairs: {shown}{more}")


@dataclass(frozen=True)
class SystemShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 2:
            raise ParameterError(f"need at least 2 parties, got {len(dims)}")
        if any(d < 2 for d in dims):
            raise ParameterError(f"every dimension must be >= 2, got {dims}")

    @property
    def parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return math.prod(self.dims)

    def __str__(self):
        return "x".join(f"C{d}" for d in self.dims)


@dataclass(frozen=True)
class LocalKet:
    """Unnormalized single-party ket with integer amplitudes."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not any(coeffs):
            raise ValueError("a LocalKet cannot be the zero vector")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @classmethod
    def basis(cls, d: int, i: int) -> "LocalKet":
        """|i>, 1-based."""
        if not 1 <= i <= d:
            raise ParameterError(f"basis index {i} outside 1..{d}")
        c = [0] * d
        c[i - 1] = 1
        return cls(tuple(c))

    @classmethod
    def diff(cls, d: int, i: int, j: int) -> "LocalKet":
        """|i> - |j>, 1-based, i != j."""
        if i == j:
            raise ParameterError("difference ket needs two distinct indices")
        for k in (i, j):
            if not 1 <= k <= d:
                raise ParameterError(f"basis index {k} outside 1..{d}")
        c = [0] * d
        c[i - 1] = 1
        c[j - 1] = -1
        return cls(tuple(c))

    @classmethod
    def ones(cls, d: int) -> "LocalKet":
        return cls((1,) * d)

    def dot(self, other: "LocalKet") -> int:
        if self.dim != other.dim:
            raise ShapeMismatchError(f"ket dimensions differ: {self.dim} vs {other.dim}")
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    def support(self) -> tuple[int, ...]:
        """1-based indices of nonzero amplitudes."""
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    def scaled(self, k: int) -> "LocalKet":
        return LocalKet(tuple(k * c for c in self.coeffs))

    def permuted(self, perm: Sequence[int]) -> "LocalKet":
        """Relabel basis kets |i> -> |perm[i-1]>."""
        out = [0] * self.dim
        for i, c in enumerate(self.coeffs):
            out[perm[i] - 1] = c
        return LocalKet(tuple(out))


@dataclass(frozen=True)
class ProductState:
    label: str
    factors: tuple[LocalKet, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.label or any(ch in self.label for ch in "|#") or self.label.split() != [self.label]:
            raise ValueError(f"invalid state label {self.label!r}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    def relabeled(self, label: str) -> "ProductState":
        return ProductState(label, self.factors)


@dataclass(frozen=True)
class StateSet:
    shape: SystemShape
    states: tuple[ProductState, ...]
    family_tag: str = "external"
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if self.family_tag not in FAMILIES:
            raise ValueError(f"unknown family tag {self.family_tag!r}")
        seen = set()
        for s in self.states:
            if s.dims != self.shape.dims:
                raise ShapeMismatchError(
                    f"state {s.label} has dims {s.dims}, set shape is {self.shape.dims}"
                )
            if s.label in seen:
                raise ValueError(f"duplicate label {s.label!r}")
            seen.add(s.label)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def by_label(self, label: str) -> ProductState:
        for s in self.states:
            if s.label == label:
                return s
        raise KeyError(label)


def inner_product(a: ProductState, b: ProductState) -> int:
    """Exact <a|b> of two real product states: product of per-party dot products."""
    if a.dims != b.dims:
        raise ShapeMismatchError(f"shapes differ: {a.dims} vs {b.dims}")
    out = 1
    for fa, fb in zip(a.factors, b.factors):
        out *= fa.dot(fb)
        if out == 0:
            return 0
    return out


def check_pairwise_orthogonal(state_set: StateSet) -> list[tuple[str, str]]:
    """All non-orthogonal label pairs, each pair sorted and the list sorted."""
    bad = []
    for a, b in combinations(state_set.states, 2):
        if inner_product(a, b) != 0:
            bad.append(tuple(sorted((a.label, b.label))))
    return sorted(bad)


def tensor_amplitudes(s: ProductState) -> tuple[int, ...]:
    """Kronecker expansion of the factors, party 1 slowest-varying."""
    amps = [1]
    for f in s.factors:
        amps = [a * c for a in amps for c in f.coeffs]
    return tuple(amps)


# -- file format ---------------------------------------------------------------

def format_state_set(state_set: StateSet) -> str:
    lines = ["shape: " + " ".join(str(d) for d in state_set.shape.dims)]
    for s in state_set.states:
        parts = [s.label] + [" ".join(str(c) for c in f.coeffs) for f in s.factors]
        lines.append(" | ".join(parts))
    return "\n".join(lines) + "\n"


def write_state_set(state_set: StateSet, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# family: {state_set.family_tag}\n")
        fh.write(format_state_set(state_set))


def parse_state_set(text: str, family_tag: str = "external") -> StateSet:
    shape = None
    states = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if shape is None:
            if not line.startswith("shape:"):
                raise FormatError(f"line {lineno}: expected 'shape:' header")
            try:
                shape = SystemShape(tuple(int(t) for t in line[len("shape:"):].split()))
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad shape header: {exc}") from exc
            continue
        fields = [p.strip() for p in line.split("|")]
        if len(fields) != shape.parties + 1:
            raise FormatError(
                f"line {lineno}: expected {shape.parties} party fields, got {len(fields) - 1}"
            )
        label = fields[0]
        try:
            factors = []
            for d, chunk in zip(shape.dims, fields[1:]):
                coeffs = tuple(int(t) for t in chunk.split())
                if len(coeffs) != d:
                    raise FormatError(
                        f"line {lineno}: factor has {len(coeffs)} coefficients, party dimension is {d}"
                    )
                factors.append(LocalKet(coeffs))
            states.append(ProductState(label, tuple(factors)))
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    if shape is None:
        raise FormatError("missing 'shape:' header")
    try:
        return StateSet(shape, tuple(states), family_tag)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_state_set(path) -> StateSet:
    with open(path) as fh:
        return parse_state_set(fh.read())


def embed(local: Iterable[LocalKet], position: int, shape: SystemShape, label: str) -> ProductState:
    """Place consecutive factors starting at 0-based party ``position``; pad others with |1>."""
    local = list(local)
    factors = [LocalKet.basis(d, 1) for d in shape.dims]
    for k, f in enumerate(local):
        if f.dim != shape.dims[position + k]:
            raise ShapeMismatchError("embedded factor dimension mismatch")
        factors[position + k] = f
    return ProductState(label, tuple(factors))

"""Generators for the bipartite, even-party, tripartite and odd-party families."""

from __future__ import annotations

from dataclasses import dataclass

from productlocc.core import (
    LocalKet,
    ParameterError,
    ProductState,
    StateSet,
    SystemShape,
    embed,
    tensor_amplitudes,
)

MIN_DIM = 4


class UnsupportedRenderingError(ValueError):
    """Grid rendering only covers two- and three-party sets."""


def delta(i: int) -> int:
    """1 for even i, 0 for odd i."""
    return 1 if i % 2 == 0 else 0


@dataclass(frozen=True)
class BobPermutation:
    n2: int
    mapping: tuple[int, ...]  # mapping[i-1] = image of i
    case: str

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    @property
    def is_identity(self) -> bool:
        return self.mapping == tuple(range(1, self.n2 + 1))


def _require_sorted(dims, floor=MIN_DIM):
    dims = tuple(int(d) for d in dims)
    if any(d < floor for d in dims):
        raise ParameterError(f"every dimension must be >= {floor}, got {dims}")
    if list(dims) != sorted(dims):
        raise ParameterError(f"dimensions must be non-decreasing, got {dims}")
    return dims


def stopper(shape: SystemShape, label: str = "stopper") -> ProductState:
    return ProductState(label, tuple(LocalKet.ones(d) for d in shape.dims))


def upb_lower_bound(shape: SystemShape) -> int:
    return 1 + sum(d - 1 for d in shape.dims)


def expected_count(family: str, dims) -> int:
    dims = tuple(dims)
    if family == "bipartite":
        return 2 * dims[1] - 1
    if family == "tripartite":
        return 2 * (dims[0] + dims[2]) - 3
    if family == "even":
        k = len(dims) // 2
        return 2 * (sum(dims[1::2]) - k) + 1
    if family == "odd":
        k = len(dims) // 2
        return 2 * (sum(dims[0::2]) - k) + 1
    raise ParameterError(f"no count formula for family {family!r}")


def construction_count(family: str, dims) -> int:
    """Number of states the generators actually emit (block sizes summed)."""
    dims = tuple(dims)
    if family in ("bipartite", "tripartite", "even"):
        return expected_count(family, dims)
    if family == "odd":
        return 2 * (dims[0] + dims[2]) - 4 + sum(2 * n - 2 for n in dims[4::2]) + 1
    raise ParameterError(f"no count for family {family!r}")


def count_formula(family: str) -> str:
    return {
        "bipartite": "2n-1",
        "tripartite": "2(n1+n3)-3",
        "even": "2(n2+n4+...+n2k-k)+1",
        "odd": "2(n1+n3+...+n2k+1-k)+1",
    }.get(family, "n/a")


def _bipartite_states(m: int, n: int) -> list[ProductState]:
    A = lambda i: LocalKet.basis(m, i)
    B = lambda j: LocalKet.basis(n, j)
    Ad = lambda i, j: LocalKet.diff(m, i, j)
    Bd = lambda i, j: LocalKet.diff(n, i, j)

    out = {1: (LocalKet.ones(m), LocalKet.ones(n))}
    for i in range(2, m + 1):
        out[i] = (A(i), Bd(1, i))
    # first factor is |1>-|m>; an index n would not exist on the m-dimensional side
    out[m + 1] = (Ad(1, m), B(2))
    for j in range(3, m + 1):
        out[m + j - 1] = (Ad(1, j - 1), B(j))
    for l in range(m + 1, n + 1):
        out[m + l - 1] = (Ad(1, 2), B(l))
    if n > m:
        out[m + n] = (A(m), Bd(3, m + 1))
        for k in range(1, (n - m) // 2 + 1):
            s, t = m + 2 * k - 1, m + 2 * k
            out[n + s] = (A(m - 1), Bd(s, s + 1))
            if t + 1 <= n:
                out[n + t] = (A(m), Bd(t, t + 1))
    return [ProductState(f"phi_{idx}", f) for idx, f in sorted(out.items())]


def build_bipartite(m: int, n: int) -> StateSet:
    """The 2n-1 state set on C^m x C^n, 4 <= m <= n, stopper first as phi_1."""
    if m < MIN_DIM:
        raise ParameterError(f"m must be >= {MIN_DIM}, got m={m}")
    if m > n:
        raise ParameterError(f"need m <= n, got m={m}, n={n}")
    states = _bipartite_states(m, n)
    return StateSet(SystemShape((m, n)), tuple(states), "bipartite")


def bob_base_permutation(n2: int, n3: int) -> BobPermutation:
    if n2 < MIN_DIM or n2 > n3:
        raise ParameterError(f"need {MIN_DIM} <= n2 <= n3, got n2={n2}, n3={n3}")
    mapping = list(range(1, n2 + 1))
    if n2 == n3:
        case = "c"
        mapping[1], mapping[n2 - 2] = n2 - 1, 2
    elif (n3 - n2) % 2 == 1:
        case = "a"
    else:
        case = "b"
        mapping[n2 - 2], mapping[n2 - 1] = n2, n2 - 1
    return BobPermutation(n2, tuple(mapping), case)


def right_surface_row(n1: int, n2: int, i: int) -> int:
    """Bob row (before permutation) of the i-th vertical right-surface state.

    Rows alternate between n2-1 and n2, with i = n1-1 on row n2-1: that is the
    row left free in the last top-view column in every permutation case.
    """
    return n2 - 1 + delta(n1 - i)


def build_tripartite(n1: int, n2: int, n3: int) -> StateSet:
    """Top-surface, right-surface and stopper states on C^n1 x C^n2 x C^n3."""
    if n1 < MIN_DIM:
        raise ParameterError(f"n1 must be >= {MIN_DIM}, got n1={n1}")
    if not n1 <= n2 <= n3:
        raise ParameterError(f"need n1 <= n2 <= n3, got ({n1}, {n2}, {n3})")
    shape = SystemShape((n1, n2, n3))
    pi = bob_base_permutation(n2, n3)

    top = []
    for k, psi in enumerate(_bipartite_states(n2, n3)[1:], 1):
        top.append(ProductState(f"T_{k}", (LocalKet.basis(n1, n1),) + psi.factors))

    horizontal = [
        ProductState(
            f"H_{i}",
            (LocalKet.basis(n1, i), LocalKet.diff(n2, pi(1), pi(2)), LocalKet.basis(n3, n3)),
        )
        for i in range(1, n1 + 1)
    ]
    vertical = [
        ProductState(
            f"V_{i}",
            (
                LocalKet.diff(n1, i, i + 1),
                LocalKet.basis(n2, pi(right_surface_row(n1, n2, i))),
                LocalKet.basis(n3, n3),
            ),
        )
        for i in range(1, n1)
    ]

    seen = {tensor_amplitudes(s) for s in top}
    right = [s for s in horizontal + vertical if tensor_amplitudes(s) not in seen]
    if len(right) != len(horizontal) + len(vertical) - 1:
        raise AssertionError("top and right surfaces must share exactly one state")

    states = [stopper(shape)] + top + right
    return StateSet(shape, tuple(states), "tripartite", {"permutation": pi})


def build_even(dims) -> StateSet:
    dims = tuple(int(d) for d in dims)
    if len(dims) % 2:
        raise ParameterError(f"even family needs an even party count, got {len(dims)}")
    if len(dims) < 4:
        raise ParameterError(f"even family needs k >= 2 (at least 4 parties), got {len(dims)}")
    dims = _require_sorted(dims)
    shape = SystemShape(dims)
    states = [stopper(shape)]
    for s in range(len(dims) // 2):
        block = _bipartite_states(dims[2 * s], dims[2 * s + 1])[1:]
        for psi in block:
            states.append(embed(psi.factors, 2 * s, shape, f"S{s + 1}.{psi.label}"))
    return StateSet(shape, tuple(states), "even")


def build_odd(dims) -> StateSet:
    dims = tuple(int(d) for d in dims)
    if len(dims) % 2 == 0 or len(dims) < 3:
        raise ParameterError(f"odd family needs an odd party count >= 3, got {len(dims)}")
    dims = _require_sorted(dims)
    shape = SystemShape(dims)
    tri = build_tripartite(*dims[:3])
    states = [stopper(shape)]
    for psi in tri.states[1:]:
        states.append(embed(psi.factors, 0, shape, f"S1.{psi.label}"))
    for s in range(2, len(dims) // 2 + 1):
        for psi in _bipartite_states(dims[2 * s - 1], dims[2 * s])[1:]:
            states.append(embed(psi.factors, 2 * s - 1, shape, f"S{s}.{psi.label}"))
    return StateSet(shape, tuple(states), "odd", dict(tri.meta))


def build_family(family: str, dims) -> StateSet:
    dims = tuple(int(d) for d in dims)
    if family == "bipartite":
        if len(dims) != 2:
            raise ParameterError(f"bipartite family needs 2 dimensions, got {len(dims)}")
        return build_bipartite(*dims)
    if family == "tripartite":
        if len(dims) != 3:
            raise ParameterError(f"tripartite family needs 3 dimensions, got {len(dims)}")
        return build_tripartite(*dims)
    if family == "even":
        return build_even(dims)
    if family == "odd":
        return build_odd(dims)
    raise ParameterError(f"unknown family {family!r}")


def block_layout(state_set: StateSet) -> list[tuple[int, ...]]:
    """1-based party tuples of the embedded blocks of an even/odd set."""
    p = state_set.shape.parties
    if state_set.family_tag == "even":
        return [(2 * s + 1, 2 * s + 2) for s in range(p // 2)]
    if state_set.family_tag == "odd":
        return [(1, 2, 3)] + [(2 * s, 2 * s + 1) for s in range(2, p // 2 + 1)]
    raise ParameterError(f"family {state_set.family_tag!r} has no block structure")


# -- ASCII rendering -----------------------------------------------------------

def _grid(rows, cols, cells, row_name, col_name):
    width = max([len(str(cols)), 2] + [len(v) for v in cells.values()]) + 1
    head = " " * 4 + "".join(str(c).rjust(width) for c in range(1, cols + 1))
    lines = [f"rows: {row_name}, columns: {col_name}", head]
    for r in range(1, rows + 1):
        body = "".join(cells.get((r, c), ".").rjust(width) for c in range(1, cols + 1))
        lines.append(str(r).rjust(3) + " " + body)
    return lines


def _mark(cells, key, tag):
    cells[key] = tag if key not in cells else "*"


def _is_stopper(s):
    return all(min(f.coeffs) > 0 and len(f.support()) == f.dim for f in s.factors)


def render_grid(state_set: StateSet) -> str:
    """Tile pictures of state supports, cells tagged by 1-based position in the set.

    Overlapping tiles show '*'; the full-support stopper is listed, not drawn.
    """
    p = state_set.shape.parties
    if p not in (2, 3):
        raise UnsupportedRenderingError(f"rendering supports 2 or 3 parties, got {p}")
    dims = state_set.shape.dims
    indexed = list(enumerate(state_set.states, 1))
    stoppers = [f"{k}:{s.label}" for k, s in indexed if _is_stopper(s)]
    drawn = [(k, s) for k, s in indexed if not _is_stopper(s)]
    lines = []

    if p == 2:
        cells = {}
        for k, s in drawn:
            for r in s.factors[0].support():
                for c in s.factors[1].support():
                    _mark(cells, (r, c), str(k))
        lines += _grid(dims[0], dims[1], cells, "party 1", "party 2")
    else:
        n1, n2, n3 = dims
        top, left, rest = {}, {}, []
        for k, s in drawn:
            placed = False
            if s.factors[0].support() == (n1,):
                for r in s.factors[1].support():
                    for c in s.factors[2].support():
                        _mark(top, (r, c), str(k))
                placed = True
            if s.factors[2].support() == (n3,):
                for r in s.factors[1].support():
                    for c in s.factors[0].support():
                        _mark(left, (r, c), str(k))
                placed = True
            if not placed:
                rest.append(f"{k}:{s.label}")
        lines.append(f"top view (party 1 = {n1})")
        lines += _grid(n2, n3, top, "party 2", "party 3")
        lines.append("")
        lines.append(f"left view of right surface (party 3 = {n3})")
        lines += _grid(n2, n1, left, "party 2", "party 1")
        if rest:
            lines.append("not on either surface: " + ", ".join(rest))
    lines.append("legend: " + ", ".join(f"{k}:{s.label}" for k, s in drawn))
    if stoppers:
        lines.append("full support (not drawn): " + ", ".join(stoppers))
    return "\n".join(lines) + "\n"

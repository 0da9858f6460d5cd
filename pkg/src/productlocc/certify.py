"""Per-party certification that every orthogonality-preserving local measurement is trivial.

For party p with dimension d, a POVM element E = M^dagger M preserves orthogonality of
the set when <psi_j| E_p (x) I |psi_i> = 0 for every pair i < j. E is expanded over
the real d^2-dimensional Hermitian basis; the admissible E form the kernel of the
resulting exact constraint matrix. Identity always lies in it, so kernel dimension 1
means only trivial measurements are possible for that party.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from productlocc.construct import block_layout, build_bipartite, build_tripartite
from productlocc.core import (
    OrthogonalityError,
    ParameterError,
    StateSet,
    check_pairwise_orthogonal,
)
from productlocc.exactlin import (
    HermitianBasis,
    RationalMatrix,
    is_proportional,
    nullspace,
    positive_definite_exact,
)

POSITIVE_LABEL = "certified LOCC-indistinguishable (first-measurement criterion)"
NEGATIVE_LABEL = "not certified by this criterion"


class Verdict(str, enum.Enum):
    TRIVIAL_ONLY = "TrivialOnly"
    NONTRIVIAL_EXISTS = "NontrivialExists"


class Overall(str, enum.Enum):
    CERTIFIED = "CertifiedIndistinguishable"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class Witness:
    """Exact Hermitian operator re + i*im."""

    re: tuple[tuple[Fraction, ...], ...]
    im: tuple[tuple[Fraction, ...], ...]

    @property
    def d(self) -> int:
        return len(self.re)

    def to_numpy(self):
        import numpy as np

        return np.array(
            [[complex(float(a), float(b)) for a, b in zip(ra, rb)] for ra, rb in zip(self.re, self.im)]
        )

    def rows_as_text(self) -> list[str]:
        def fmt(a, b):
            if b == 0:
                return str(a)
            return f"{a}{'+' if b > 0 else '-'}{abs(b)}i"

        return [" ".join(fmt(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.re, self.im)]


@dataclass(frozen=True)
class PartyVerdict:
    party: int
    dim: int
    solution_dim: int
    verdict: Verdict
    witness: Witness | None = None
    kernel: tuple = field(default=(), compare=False, repr=False)

    @property
    def trivial(self) -> bool:
        return self.verdict is Verdict.TRIVIAL_ONLY


@dataclass(frozen=True)
class SetVerdict:
    parties: tuple[PartyVerdict, ...]

    @property
    def overall(self) -> Overall:
        if all(p.trivial for p in self.parties):
            return Overall.CERTIFIED
        return Overall.NOT_CERTIFIED

    @property
    def certified(self) -> bool:
        return self.overall is Overall.CERTIFIED

    @property
    def description(self) -> str:
        return POSITIVE_LABEL if self.certified else NEGATIVE_LABEL

    @property
    def solution_dims(self) -> tuple[int, ...]:
        return tuple(p.solution_dim for p in self.parties)


def _check_party(state_set: StateSet, party: int) -> int:
    if not 1 <= party <= state_set.shape.parties:
        raise ParameterError(f"party {party} outside 1..{state_set.shape.parties}")
    return party - 1


def _require_orthogonal(state_set: StateSet) -> None:
    bad = check_pairwise_orthogonal(state_set)
    if bad:
        raise OrthogonalityError(bad)


def _other_overlap(a, b, p: int) -> int:
    out = 1
    for q, (fa, fb) in enumerate(zip(a.factors, b.factors)):
        if q != p:
            out *= fa.dot(fb)
            if out == 0:
                return 0
    return out


def assemble_constraints(state_set: StateSet, party: int, *, checked: bool = False) -> RationalMatrix:
    """Two rows (real part, imaginary part) per unordered pair i < j, in set order.

    ``party`` is 1-based. Columns follow the HermitianBasis order for that party.
    """
    p = _check_party(state_set, party)
    if not checked:
        _require_orthogonal(state_set)
    basis = HermitianBasis(state_set.shape.dims[p])
    ncols = len(basis)
    zero = [0] * ncols
    rows = []
    for a, b in combinations(state_set.states, 2):
        c = _other_overlap(a, b, p)
        if c == 0:
            rows.append(zero)
            rows.append(zero)
            continue
        re_row, im_row = basis.expectation_row(b.factors[p].coeffs, a.factors[p].coeffs)
        rows.append([c * x for x in re_row])
        rows.append([c * x for x in im_row])
    return RationalMatrix.from_rows(rows, ncols)


def extract_witness(kernel_basis: Sequence[Sequence], d: int) -> Witness:
    """I + X/(r+1) for the first kernel element X not parallel to the identity.

    r bounds every Gershgorin disc of X (row sums of |Re|+|Im|), so the result is
    positive definite.
    """
    basis = HermitianBasis(d)
    ident = basis.identity_vector()
    if len(kernel_basis) < 2:
        raise RuntimeError("a witness needs a kernel of dimension >= 2")
    x = next((v for v in kernel_basis if not is_proportional(v, ident)), None)
    if x is None:
        raise RuntimeError("kernel basis does not contain a non-identity direction")
    re, im = basis.to_matrix(x)
    r = max(sum(abs(a) + abs(b) for a, b in zip(ra, rb)) for ra, rb in zip(re, im))
    s = 1 / (r + 1)
    hre = tuple(tuple(int(i == j) + s * re[i][j] for j in range(d)) for i in range(d))
    him = tuple(tuple(s * im[i][j] for j in range(d)) for i in range(d))
    return Witness(hre, him)


def witness_problems(state_set: StateSet, party: int, w: Witness, audit: bool = False) -> list[str]:
    """Independent exact checks of a witness; empty list means valid."""
    p = _check_party(state_set, party)
    d = state_set.shape.dims[p]
    problems = []
    if w.d != d:
        return [f"witness is {w.d}x{w.d}, party dimension is {d}"]
    for i in range(d):
        for j in range(d):
            if w.re[i][j] != w.re[j][i] or w.im[i][j] != -w.im[j][i]:
                problems.append("not Hermitian")
                break
        else:
            continue
        break
    c0 = w.re[0][0]
    if all(w.re[i][j] == (c0 if i == j else 0) and w.im[i][j] == 0 for i in range(d) for j in range(d)):
        problems.append("proportional to identity")
    # Gershgorin: strict diagonal dominance with |z| <= |Re z| + |Im z|
    for i in range(d):
        off = sum(abs(w.re[i][j]) + abs(w.im[i][j]) for j in range(d) if j != i)
        if w.re[i][i] - off <= 0:
            problems.append(f"Gershgorin certificate fails on row {i + 1}")
            break
    if audit and not positive_definite_exact(w.re, w.im):
        problems.append("leading principal minor check fails")
    for a, b in combinations(state_set.states, 2):
        c = _other_overlap(a, b, p)
        if c == 0:
            continue
        bra, ket = b.factors[p].coeffs, a.factors[p].coeffs
        val_re = sum(bra[i] * w.re[i][j] * ket[j] for i in range(d) for j in range(d))
        val_im = sum(bra[i] * w.im[i][j] * ket[j] for i in range(d) for j in range(d))
        if val_re or val_im:
            problems.append(f"breaks orthogonality of ({a.label}, {b.label})")
            break
    return problems


def _verdict_checked(state_set: StateSet, party: int) -> PartyVerdict:
    d = state_set.shape.dims[party - 1]
    kernel = nullspace(assemble_constraints(state_set, party, checked=True))
    ident = HermitianBasis(d).identity_vector()
    if len(kernel) == 1:
        if not is_proportional(kernel[0], ident):
            raise AssertionError(f"party {party}: one-dimensional kernel not spanned by identity")
        return PartyVerdict(party, d, 1, Verdict.TRIVIAL_ONLY, None, tuple(kernel))
    if not kernel:
        raise AssertionError(f"party {party}: identity missing from the kernel")
    w = extract_witness(kernel, d)
    return PartyVerdict(party, d, len(kernel), Verdict.NONTRIVIAL_EXISTS, w, tuple(kernel))


def verdict_for_party(state_set: StateSet, party: int) -> PartyVerdict:
    _check_party(state_set, party)
    _require_orthogonal(state_set)
    return _verdict_checked(state_set, party)


def certify(state_set: StateSet) -> SetVerdict:
    _require_orthogonal(state_set)
    return SetVerdict(
        tuple(_verdict_checked(state_set, p) for p in range(1, state_set.shape.parties + 1))
    )


def kernel_dim(state_set: StateSet, party: int) -> int:
    return len(nullspace(assemble_constraints(state_set, party)))


def reduced_block_check(state_set: StateSet, block_parties: Sequence[int]) -> bool:
    """Compare kernel dimensions on each block party against the stand-alone block set."""
    block = tuple(int(p) for p in block_parties)
    layout = block_layout(state_set)
    if block not in layout:
        raise ParameterError(f"{block} is not a block of this set; blocks are {layout}")
    if state_set.family_tag == "even" and len(layout) < 2:
        raise ParameterError("even family needs k >= 2 blocks")
    dims = tuple(state_set.shape.dims[p - 1] for p in block)
    local = build_bipartite(*dims) if len(block) == 2 else build_tripartite(*dims)
    return all(
        kernel_dim(state_set, p) == kernel_dim(local, k)
        for k, p in enumerate(block, 1)
    )

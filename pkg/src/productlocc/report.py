"""Certification reports: a human-readable table followed by a JSON section."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from productlocc.certify import SetVerdict, assemble_constraints, certify, witness_problems
from productlocc.construct import count_formula, expected_count, upb_lower_bound
from productlocc.core import StateSet
from productlocc.exactlin import rank_exact, rank_float

JSON_BEGIN = "--- BEGIN JSON ---"
JSON_END = "--- END JSON ---"


@dataclass
class PartyRow:
    party: int
    dim: int
    solution_dim: int
    verdict: str
    rank_exact: int
    rank_float: int
    witness: list[str] | None = None
    witness_problems: list[str] = field(default_factory=list)

    @property
    def oracle_agrees(self) -> bool:
        return self.rank_exact == self.rank_float and self.rank_exact + self.solution_dim == self.dim**2


@dataclass
class Report:
    dims: tuple[int, ...]
    family_tag: str
    state_count: int
    expected_count: int | None
    formula: str
    upb_bound: int
    parties: list[PartyRow]
    overall: str
    description: str
    wall_time: float
    tol: float
    audit: bool

    @property
    def count_matches(self) -> bool | None:
        if self.expected_count is None:
            return None
        return self.expected_count == self.state_count

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "shape": list(self.dims),
            "family": self.family_tag,
            "state_count": self.state_count,
            "expected_count": self.expected_count,
            "formula": self.formula,
            "count_matches_formula": self.count_matches,
            "upb_lower_bound": self.upb_bound,
            "parties": [
                {
                    "party": p.party,
                    "dim": p.dim,
                    "solution_dim": p.solution_dim,
                    "verdict": p.verdict,
                    "rank_exact": p.rank_exact,
                    "rank_float": p.rank_float,
                    "float_oracle_agrees": p.oracle_agrees,
                    "witness": p.witness,
                    "witness_problems": p.witness_problems,
                }
                for p in self.parties
            ],
            "overall": self.overall,
            "description": self.description,
            "tol": self.tol,
            "audit": self.audit,
        }
        if include_time:
            out["wall_time_s"] = round(self.wall_time, 6)
        return out


def build_report(state_set: StateSet, tol: float = 1e-8, audit: bool = False) -> tuple[Report, SetVerdict]:
    t0 = time.perf_counter()
    verdict = certify(state_set)
    rows = []
    for pv in verdict.parties:
        mat = assemble_constraints(state_set, pv.party, checked=True)
        row = PartyRow(
            pv.party, pv.dim, pv.solution_dim, pv.verdict.value, rank_exact(mat), rank_float(mat, tol)
        )
        if pv.witness is not None:
            row.witness = pv.witness.rows_as_text()
            row.witness_problems = witness_problems(state_set, pv.party, pv.witness, audit=audit)
        rows.append(row)
    elapsed = time.perf_counter() - t0
    fam = state_set.family_tag
    exp = None if fam == "external" else expected_count(fam, state_set.shape.dims)
    report = Report(
        dims=state_set.shape.dims,
        family_tag=fam,
        state_count=len(state_set),
        expected_count=exp,
        formula=count_formula(fam),
        upb_bound=upb_lower_bound(state_set.shape),
        parties=rows,
        overall=verdict.overall.value,
        description=verdict.description,
        wall_time=elapsed,
        tol=tol,
        audit=audit,
    )
    return report, verdict


def _yn(flag):
    return "n/a" if flag is None else ("yes" if flag else "no")


def format_report(report: Report) -> str:
    lines = [
        f"shape            {' '.join(map(str, report.dims))}",
        f"family           {report.family_tag}",
        f"states           {report.state_count}",
        f"formula          {report.formula} = {report.expected_count if report.expected_count is not None else 'n/a'}",
        f"count = formula  {_yn(report.count_matches)}",
        f"UPB lower bound  {report.upb_bound}",
        "",
        f"{'party':>5} {'dim':>4} {'sol_dim':>7} {'rank':>5} {'f_rank':>6}  verdict",
    ]
    for p in report.parties:
        lines.append(
            f"{p.party:>5} {p.dim:>4} {p.solution_dim:>7} {p.rank_exact:>5} {p.rank_float:>6}  {p.verdict}"
        )
    for p in report.parties:
        if p.witness:
            status = "valid" if not p.witness_problems else "INVALID: " + "; ".join(p.witness_problems)
            lines.append(f"witness for party {p.party} ({status}):")
            lines.extend("    " + r for r in p.witness)
    lines += [
        "",
        f"overall: {report.overall} ({report.description})",
        f"wall time: {report.wall_time:.3f} s",
        JSON_BEGIN,
        json.dumps(report.to_dict(), indent=2),
        JSON_END,
    ]
    return "\n".join(lines) + "\n"


def parse_json_section(text: str) -> dict:
    start = text.index(JSON_BEGIN) + len(JSON_BEGIN)
    end = text.index(JSON_END, start)
    return json.loads(text[start:end])

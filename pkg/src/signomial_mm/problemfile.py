"""Line-oriented problem files.

A file is a sequence of ``[section]`` blocks; ``#`` starts a comment::

    [problem]
    name = f5
    dimension = 3
    initial = 1 1 1

    [objective]
    1 : 1 1 0
    1 : 1 0 1
    1 : 0 1 1

    [neg-log]
    1 : 1 0 0
    1 : 0 1 0
    1 : 0 0 1

    [options]
    epsilon = 1e-9

Term lines are ``coefficient : exponents``.  ``[log]`` adds ``+ ln p(x)``.
Constraint blocks hold one constraint each and may repeat:
``[equality posynomial]`` (``p(x) = 1``), ``[equality signomial]``
(``s(x) = 0``), ``[inequality posynomial]`` (``p(x) <= 1``) and
``[inequality signomial]`` (``s(x) <= 0``).  A ``[qp]`` block with keys
``Q c A b E d`` (matrix rows separated by ``;``) replaces the objective.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .nnqp import QpProblem
from .penalty import PenaltyProblem
from .signomial import CompositeObjective, Signomial, normalize_constraint

__all__ = [
    "ProblemFileError",
    "RunOptions",
    "Constraint",
    "ProblemSpec",
    "loads",
    "dumps",
    "load",
    "bundled_names",
    "load_bundled",
    "bundled_path",
]

POSYNOMIAL = "posynomial"
SIGNOMIAL = "signomial"

_TERM_SECTIONS = ("objective", "neg-log", "log")
_CONSTRAINT_RE = re.compile(r"^(equality|inequality)\s+(posynomial|signomial)$")


class ProblemFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class RunOptions:
    """Solver settings stored with a problem; ``None`` means the default."""

    epsilon: float | None = None
    max_iterations: int | None = None
    accel: int | None = None
    schedule: tuple[int, int] | None = None
    inner_eps: float | None = None
    inner_iterations: int | None = None
    eps_floor: float | None = None
    stage_iterations: int | None = None


_OPTION_TYPES = {
    "epsilon": float,
    "max_iterations": int,
    "accel": int,
    "schedule": "schedule",
    "inner_eps": float,
    "inner_iterations": int,
    "eps_floor": float,
    "stage_iterations": int,
}


@dataclass(frozen=True)
class Constraint:
    kind: str  # "equality" or "inequality"
    form: str  # POSYNOMIAL or SIGNOMIAL
    body: Signomial

    def penalty_signomial(self) -> Signomial:
        """The signomial driven to zero (equalities) or kept nonpositive."""
        if self.kind == "equality":
            return normalize_constraint(self.body) if self.form == POSYNOMIAL else self.body
        return self.body - 1.0 if self.form == POSYNOMIAL else self.body


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dimension: int
    initial: tuple[float, ...]
    objective: CompositeObjective | None = None
    constraints: tuple[Constraint, ...] = ()
    qp: QpProblem | None = None
    options: RunOptions = field(default_factory=RunOptions)

    def __post_init__(self):
        if (self.objective is None) == (self.qp is None):
            raise ValueError("a problem needs exactly one of a signomial objective and a qp block")
        if len(self.initial) != self.dimension:
            raise ValueError("initial point does not match the dimension")

    @property
    def kind(self) -> str:
        if self.qp is not None:
            return "qp"
        return "constrained" if self.constraints else "unconstrained"

    def penalty_problem(self) -> PenaltyProblem:
        eqs = tuple(c.penalty_signomial() for c in self.constraints if c.kind == "equality")
        ineqs = tuple(c.penalty_signomial() for c in self.constraints if c.kind == "inequality")
        return PenaltyProblem(self.objective, eqs, ineqs)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProblemSpec) and dumps(self) == dumps(other)

    def __hash__(self) -> int:
        return hash(dumps(self))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _parse_float(tok: str, lineno: int, col: int) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise ProblemFileError(f"expected a number, got {tok!r}", lineno, col) from None
    if not math.isfinite(v):
        raise ProblemFileError(f"number must be finite, got {tok!r}", lineno, col)
    return v


def _numbers(text: str, lineno: int, col0: int) -> list[float]:
    out = []
    for m in re.finditer(r"\S+", text):
        out.append(_parse_float(m.group(), lineno, col0 + m.start()))
    return out


def _matrix(text: str, lineno: int, col0: int) -> np.ndarray:
    rows, offset = [], 0
    for chunk in text.split(";"):
        if chunk.strip():
            rows.append(_numbers(chunk, lineno, col0 + offset))
        offset += len(chunk) + 1
    if rows and len({len(r) for r in rows}) != 1:
        raise ProblemFileError("matrix rows have different lengths", lineno, col0)
    return np.array(rows, dtype=float)


def _key_value(line: str, lineno: int) -> tuple[str, str, int]:
    if "=" not in line:
        raise ProblemFileError("expected 'key = value'", lineno, 1)
    key, value = line.split("=", 1)
    col = len(key) + 2 + (len(value) - len(value.lstrip()))
    return key.strip(), value.strip(), col


class _Block:
    def __init__(self, name: str, lineno: int):
        self.name = name
        self.lineno = lineno
        self.lines: list[tuple[int, str]] = []


def _term_lines(block: _Block, dimension: int) -> list[tuple[float, list[float]]]:
    terms = []
    for lineno, line in block.lines:
        if ":" not in line:
            raise ProblemFileError("expected 'coefficient : exponents'", lineno, 1)
        head, tail = line.split(":", 1)
        coef = _parse_float(head.strip(), lineno, 1 + len(head) - len(head.lstrip()))
        exps = _numbers(tail, lineno, len(head) + 2)
        if len(exps) != dimension:
            raise ProblemFileError(f"expected {dimension} exponents, got {len(exps)}", lineno, len(head) + 2)
        terms.append((coef, exps))
    return terms


def loads(text: str) -> ProblemSpec:
    blocks: list[_Block] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ProblemFileError("unterminated section header", lineno, len(line) + 1)
            blocks.append(_Block(" ".join(stripped[1:-1].split()).lower(), lineno))
            continue
        if not blocks:
            raise ProblemFileError("content before the first section header", lineno, 1)
        blocks[-1].lines.append((lineno, stripped))

    header = [b for b in blocks if b.name == "problem"]
    if len(header) != 1:
        raise ProblemFileError("exactly one [problem] section is required", header[1].lineno if header else 1)
    meta = {}
    for lineno, line in header[0].lines:
        key, value, col = _key_value(line, lineno)
        meta[key] = (value, lineno, col)
    if "dimension" not in meta:
        raise ProblemFileError("[problem] needs 'dimension'", header[0].lineno)
    value, lineno, col = meta["dimension"]
    try:
        n = int(value)
    except ValueError:
        raise ProblemFileError(f"dimension must be an integer, got {value!r}", lineno, col) from None
    if n < 1:
        raise ProblemFileError("dimension must be positive", lineno, col)
    name = meta.get("name", ("problem", 0, 0))[0]
    if "initial" in meta:
        value, lineno, col = meta["initial"]
        initial = tuple(_numbers(value, lineno, col))
        if len(initial) != n or min(initial) <= 0:
            raise ProblemFileError(f"initial point needs {n} positive entries", lineno, col)
    else:
        initial = (1.0,) * n

    parts: dict[str, Signomial] = {}
    constraints: list[Constraint] = []
    qp = None
    options = RunOptions()
    seen: set[str] = set()
    for block in blocks:
        if block.name == "problem":
            continue
        if block.name in _TERM_SECTIONS or block.name in ("qp", "options"):
            if block.name in seen:
                raise ProblemFileError(f"duplicate [{block.name}] section", block.lineno)
            seen.add(block.name)
        if block.name in _TERM_SECTIONS:
            parts[block.name] = Signomial.from_terms(_term_lines(block, n), n)
        elif (m := _CONSTRAINT_RE.match(block.name)) is not None:
            body = Signomial.from_terms(_term_lines(block, n), n)
            if m.group(2) == POSYNOMIAL and not body.is_posynomial:
                raise ProblemFileError("posynomial constraint has a nonpositive coefficient", block.lineno)
            constraints.append(Constraint(m.group(1), m.group(2), body))
        elif block.name == "qp":
            qp = _parse_qp(block, n)
        elif block.name == "options":
            options = _parse_options(block)
        else:
            raise ProblemFileError(f"unknown section [{block.name}]", block.lineno, 2)

    objective = None
    if parts:
        if qp is not None:
            raise ProblemFileError("a problem cannot have both an objective and a [qp] block", blocks[0].lineno)
        try:
            objective = CompositeObjective(
                parts.get("objective", Signomial.zero(n)), neg_log=parts.get("neg-log"), log=parts.get("log")
            )
        except ValueError as exc:
            raise ProblemFileError(str(exc), header[0].lineno) from None
    elif qp is None:
        raise ProblemFileError("no [objective] or [qp] section", header[0].lineno)
    if qp is not None and constraints:
        raise ProblemFileError("signomial constraints cannot be combined with a [qp] block", header[0].lineno)
    return ProblemSpec(name, n, initial, objective, tuple(constraints), qp, options)


def _parse_qp(block: _Block, n: int) -> QpProblem:
    data: dict[str, np.ndarray] = {}
    where: dict[str, int] = {}
    for lineno, line in block.lines:
        key, value, col = _key_value(line, lineno)
        if key not in ("Q", "c", "A", "b", "E", "d"):
            raise ProblemFileError(f"unknown qp key {key!r}", lineno, 1)
        data[key] = _matrix(value, lineno, col) if key in ("Q", "A", "E") else np.array(_numbers(value, lineno, col))
        where[key] = lineno
    for key in ("Q", "c"):
        if key not in data:
            raise ProblemFileError(f"[qp] needs {key!r}", block.lineno)
    try:
        return QpProblem(data["Q"], data["c"], data.get("A"), data.get("b"), data.get("E"), data.get("d"))
    except ValueError as exc:
        raise ProblemFileError(str(exc), block.lineno) from None


def _parse_options(block: _Block) -> RunOptions:
    values = {}
    for lineno, line in block.lines:
        key, value, col = _key_value(line, lineno)
        kind = _OPTION_TYPES.get(key)
        if kind is None:
            raise ProblemFileError(f"unknown option {key!r}", lineno, 1)
        if kind == "schedule":
            m = re.fullmatch(r"(-?\d+)\s*:\s*(-?\d+)", value)
            if m is None or int(m.group(1)) > int(m.group(2)):
                raise ProblemFileError("schedule must be 'k0:k1' with k0 <= k1", lineno, col)
            values[key] = (int(m.group(1)), int(m.group(2)))
        elif kind is int:
            try:
                values[key] = int(value)
            except ValueError:
                raise ProblemFileError(f"{key} must be an integer", lineno, col) from None
        else:
            values[key] = _parse_float(value, lineno, col)
    return RunOptions(**values)


def _fmt(v: float) -> str:
    return repr(float(v))


def _terms_text(f: Signomial) -> list[str]:
    return [f"{_fmt(t.coefficient)} : {' '.join(_fmt(e) for e in t.exponents)}" for t in f.terms]


def _row(v) -> str:
    return " ".join(_fmt(x) for x in v)


def dumps(p: ProblemSpec) -> str:
    out = ["[problem]", f"name = {p.name}", f"dimension = {p.dimension}", f"initial = {_row(p.initial)}"]
    if p.objective is not None:
        out += ["", "[objective]", *_terms_text(p.objective.plain)]
        if p.objective.neg_log is not None:
            out += ["", "[neg-log]", *_terms_text(p.objective.neg_log)]
        if p.objective.log is not None:
            out += ["", "[log]", *_terms_text(p.objective.log)]
    for c in p.constraints:
        out += ["", f"[{c.kind} {c.form}]", *_terms_text(c.body)]
    if p.qp is not None:
        out += ["", "[qp]", f"Q = {'; '.join(_row(r) for r in p.qp.Q)}", f"c = {_row(p.qp.c)}"]
        if p.qp.A.shape[0]:
            out += [f"A = {'; '.join(_row(r) for r in p.qp.A)}", f"b = {_row(p.qp.b)}"]
        if p.qp.E.shape[0]:
            out += [f"E = {'; '.join(_row(r) for r in p.qp.E)}", f"d = {_row(p.qp.d)}"]
    opts = []
    for key in _OPTION_TYPES:
        value = getattr(p.options, key)
        if value is None:
            continue
        if key == "schedule":
            opts.append(f"schedule = {value[0]}:{value[1]}")
        elif isinstance(value, float):
            opts.append(f"{key} = {_fmt(value)}")
        else:
            opts.append(f"{key} = {value}")
    if opts:
        out += ["", "[options]", *opts]
    return "\n".join(out) + "\n"


def load(path) -> ProblemSpec:
    return loads(Path(path).read_text())


def _bundle_dir():
    return resources.files("signomial_mm") / "problems"


def bundled_names() -> list[str]:
    return sorted(p.name[: -len(".prob")] for p in _bundle_dir().iterdir() if p.name.endswith(".prob"))


def bundled_path(name: str):
    return _bundle_dir() / f"{name}.prob"


def load_bundled(name: str) -> ProblemSpec:
    path = bundled_path(name)
    if not path.is_file():
        raise FileNotFoundError(f"no bundled problem {name!r}; available: {', '.join(bundled_names())}")
    return loads(path.read_text())

"""Line-oriented text formats for fans, weighted configurations and ideals.

Every file starts with a header::

    format 1
    field Q            # or Qsqrt:D
    gamma 1,1/2        # generators, or `all`
    rank 2
    valuation dense    # or discrete (optional)

A fan file then lists cone blocks (``cone`` or ``cone t=0`` ... ``end``)
with one ``m_1 ... m_n | c`` line per inequality.  A configuration file has
an ``N`` header key and ``N+1`` lines ``m_1 ... m_n | a`` (``inf`` allowed).
An ideal file lists ``u_1 ... u_n | gamma`` lines.  ``#`` starts a comment.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .cones import GammaCone
from .errors import AdmissibilityError, GammaFanError, GammaViolationError, ParseError
from .fans import GammaFan, canonical_cone, cone_sort_key
from .projective import WeightedConfig
from .scalar import format_scalar, is_squarefree, parse_scalar
from .semigroups import MonomialDatum, SemigroupGens
from .valuegroup import ValueGroup

FORMAT_VERSION = "1"
HEADER_KEYS = ("format", "field", "gamma", "rank", "valuation")


@dataclass(frozen=True)
class Session:
    """Header settings shared by all files of one run."""

    radicand: Optional[int] = None
    gamma_text: str = "all"
    rank: int = 0
    discrete: bool = False

    def value_group(self) -> ValueGroup:
        if self.gamma_text == "all":
            return ValueGroup((), whole_field=True, discrete=self.discrete, radicand=self.radicand)
        gens = tuple(parse_scalar(g, self.radicand) for g in self.gamma_text.split(","))
        return ValueGroup(gens, discrete=self.discrete, radicand=self.radicand)

    def field_text(self) -> str:
        return "Q" if self.radicand is None else f"Qsqrt:{self.radicand}"


def parse_field(text: str) -> Optional[int]:
    if text == "Q":
        return None
    if text.startswith("Qsqrt:"):
        try:
            d = int(text[6:])
        except ValueError:
            raise ParseError(f"bad field {text!r}") from None
        if not is_squarefree(d):
            raise ParseError(f"radicand {d} must be square-free and > 1")
        return d
    raise ParseError(f"bad field {text!r}; expected Q or Qsqrt:D")


@dataclass(frozen=True)
class Overrides:
    field: Optional[str] = None
    gamma: Optional[str] = None
    discrete: bool = False


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _read_header(lines, extra=()) -> tuple[Session, dict, list]:
    keys = set(HEADER_KEYS) | set(extra)
    seen = {}
    rest = []
    it = iter(lines)
    for no, line in it:
        parts = line.split(None, 1)
        key = parts[0]
        if key in ("cone", "end") or "|" in line:
            rest.append((no, line))
            rest.extend(it)
            break
        if key not in keys:
            raise ParseError(f"unknown header key {key!r}", no)
        if key in seen:
            raise ParseError(f"duplicate header key {key!r}", no)
        if len(parts) != 2:
            raise ParseError(f"header key {key!r} needs a value", no)
        seen[key] = (no, parts[1].strip())
    for key in ("format", "rank"):
        if key not in seen:
            raise ParseError(f"missing header key {key!r}")
    no, version = seen["format"]
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}", no)
    radicand = parse_field(seen["field"][1]) if "field" in seen else None
    no, rank_text = seen["rank"]
    try:
        rank = int(rank_text)
    except ValueError:
        raise ParseError(f"bad rank {rank_text!r}", no) from None
    if rank < 0:
        raise ParseError("rank must be nonnegative", no)
    discrete = False
    if "valuation" in seen:
        no, v = seen["valuation"]
        if v not in ("dense", "discrete"):
            raise ParseError(f"valuation must be dense or discrete, not {v!r}", no)
        discrete = v == "discrete"
    gamma_text = seen["gamma"][1].replace(" ", "") if "gamma" in seen else "all"
    session = Session(radicand, gamma_text, rank, discrete)
    return session, {k: v for k, v in seen.items() if k in extra}, rest


def _apply(session: Session, over: Optional[Overrides]) -> Session:
    if over is None:
        return session
    if over.field is not None:
        session = replace(session, radicand=parse_field(over.field))
    if over.gamma is not None:
        session = replace(session, gamma_text=over.gamma.replace(" ", ""))
    if over.discrete:
        session = replace(session, discrete=True)
    return session


def _session_gamma(session: Session) -> ValueGroup:
    try:
        return session.value_group()
    except ParseError:
        raise
    except GammaFanError as exc:
        raise ParseError(f"bad gamma {session.gamma_text!r}: {exc}") from None


def _parse_row(no: int, line: str, n: int, radicand, allow_inf: bool = False):
    if line.count("|") != 1:
        raise ParseError("expected `m_1 ... m_n | c`", no)
    left, right = (s.strip() for s in line.split("|"))
    try:
        m = tuple(int(x) for x in left.split())
    except ValueError:
        raise ParseError(f"entries of {left!r} must be integers", no) from None
    if len(m) != n:
        raise ParseError(f"expected {n} integers before `|`, got {len(m)}", no)
    if allow_inf and right == "inf":
        return m, math.inf
    try:
        c = parse_scalar(right, radicand)
    except ParseError as exc:
        raise ParseError(str(exc), no) from None
    return m, c


def parse_fan(text: str, overrides: Optional[Overrides] = None) -> GammaFan:
    """Parse a fan file; cones are kept in file order, unvalidated against each other."""
    session, _, body = _read_header(_lines(text))
    session = _apply(session, overrides)
    gamma = _session_gamma(session)
    n = session.rank
    blocks = []
    current = None
    for no, line in body:
        words = line.split()
        if words[0] == "cone":
            if current is not None:
                raise ParseError("`cone` inside an open cone block", no)
            if words[1:] not in ([], ["t=0"]):
                raise ParseError(f"bad cone line {line!r}", no)
            current = (no, words[1:] == ["t=0"], [])
        elif words[0] == "end":
            if current is None:
                raise ParseError("`end` without `cone`", no)
            blocks.append(current)
            current = None
        else:
            if current is None:
                raise ParseError("inequality outside a cone block", no)
            current[2].append(_parse_row(no, line, n, session.radicand))
    if current is not None:
        raise ParseError("unterminated cone block", current[0])
    if not blocks:
        raise ParseError("no cones")
    cones = []
    for idx, (no, t_eq, rows) in enumerate(blocks):
        try:
            cone = GammaCone(n, tuple(rows), gamma, t_eq)
        except GammaViolationError as exc:
            raise GammaViolationError(f"cone {idx} (line {no}): {exc}") from None
        lin = cone.lineality
        if lin:
            raise AdmissibilityError(
                f"cone {idx} (line {no}) is not admissible: it contains the line spanned by {lin[0]}"
            )
        cones.append(cone)
    return GammaFan(n, gamma, tuple(cones))


def _header(gamma: ValueGroup, n: int, extra: tuple = ()) -> list[str]:
    field = "Q" if gamma.radicand is None else f"Qsqrt:{gamma.radicand}"
    lines = [
        f"format {FORMAT_VERSION}",
        f"field {field}",
        f"gamma {gamma.describe()}",
        f"rank {n}",
        f"valuation {'discrete' if gamma.discrete else 'dense'}",
    ]
    return lines + list(extra)


def _fmt_row(m, c) -> str:
    left = " ".join(str(x) for x in m)
    c = "inf" if c == math.inf else format_scalar(c)
    return f"{left} | {c}" if left else f"| {c}"


def serialize_cone(cone: GammaCone) -> list[str]:
    lines = ["cone t=0" if cone.t_equality else "cone"]
    lines += [_fmt_row(m, c) for m, c in cone.inequalities]
    lines.append("end")
    return lines


def serialize_fan(fan: GammaFan) -> str:
    """Canonical text: each cone in canonical H-rep, cones sorted."""
    cones = sorted((canonical_cone(c) for c in fan.cones), key=cone_sort_key)
    lines = _header(fan.gamma, fan.n)
    for c in cones:
        lines += serialize_cone(c)
    return "\n".join(lines) + "\n"


def parse_config(text: str, overrides: Optional[Overrides] = None) -> WeightedConfig:
    session, extra, body = _read_header(_lines(text), extra=("N",))
    session = _apply(session, overrides)
    gamma = _session_gamma(session)
    if "N" not in extra:
        raise ParseError("missing header key 'N'")
    no, ntext = extra["N"]
    try:
        N = int(ntext)
    except ValueError:
        raise ParseError(f"bad N {ntext!r}", no) from None
    rows = [_parse_row(no, line, session.rank, session.radicand, allow_inf=True) for no, line in body]
    if len(rows) != N + 1:
        raise ParseError(f"expected {N + 1} points, found {len(rows)}")
    if all(a == math.inf for _, a in rows):
        raise ParseError("at least one height must be finite")
    try:
        return WeightedConfig(tuple(m for m, _ in rows), tuple(a for _, a in rows), gamma)
    except GammaFanError as exc:
        raise GammaViolationError(str(exc)) from None


def serialize_config(cfg: WeightedConfig) -> str:
    lines = _header(cfg.gamma, cfg.n, (f"N {len(cfg.A) - 1}",))
    lines += [_fmt_row(m, a) for m, a in zip(cfg.A, cfg.a)]
    return "\n".join(lines) + "\n"


def parse_ideal(text: str, n: int, gamma: ValueGroup) -> SemigroupGens:
    """Generators ``u | gamma``; a header is optional and checked against the chart."""
    lines = list(_lines(text))
    if lines and lines[0][1].split()[0] == "format":
        session, _, lines = _read_header(lines)
        if session.rank != n:
            raise ParseError(f"ideal has rank {session.rank}, chart has rank {n}")
    rows = [_parse_row(no, line, n, gamma.radicand) for no, line in lines]
    if not rows:
        raise ParseError("no generators")
    try:
        return SemigroupGens(tuple(MonomialDatum(m, c) for m, c in rows), n, gamma)
    except GammaFanError as exc:
        raise GammaViolationError(str(exc)) from None


def serialize_gens(gens) -> str:
    return "".join(f"{_fmt_row(e.u, e.gamma)}\n" for e in gens)

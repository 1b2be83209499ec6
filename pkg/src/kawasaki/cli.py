"""Command-line front end.

Jobs are small ``key = value`` files::

    # P(1,2,3) with O(6)
    space = wps(1,2,3)
    bundle = O(6)

Keys: ``space`` (``wps(w0,...,wn)``, ``P<n>`` or ``quot(P<n>; m=<m>; act=t0,...,tn)``),
``bundle`` (a formal sum such as ``O(2) - 3*O(-1)``; quotient bundles may carry a
character as ``O(a;c)``), ``obstruction`` (degrees ``d1, d2`` of E = sum O(d_j))
and ``shift`` (linearization residue for quotients).

Exit codes: 0 success, 1 bad input, 2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from . import engine, oracle
from .classes import KClass, KTerm
from .cyclotomic import promote, rational_value
from .geometry import (
    CyclicQuotient,
    InvariantViolation,
    WeightedProjective,
    enumerate_group_fixed_loci,
    enumerate_sectors,
    fixed_locus,
    normal_data,
)

COMMANDS = ("chi", "chi-fake", "chi-virtual", "chi-virtual-strata", "lefschetz", "sectors", "verify")
KEYS = ("space", "bundle", "obstruction", "shift")


class JobError(ValueError):
    """Malformed or unsupported job description."""


@dataclass(frozen=True)
class Job:
    space: WeightedProjective | CyclicQuotient
    bundle: KClass
    obstruction: tuple[int, ...] | None = None
    shift: int = 0

    @property
    def is_quotient(self) -> bool:
        return isinstance(self.space, CyclicQuotient)


_INT_LIST = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*\s*)?O\(\s*(-?\d+)\s*(?:;\s*(-?\d+)\s*)?\)\s*")


def _int_list(text, what):
    if not _INT_LIST.match(text):
        raise JobError(f"{what}: expected comma-separated integers, got {text.strip()!r}")
    return tuple(int(x) for x in text.split(","))


def parse_space(text: str):
    text = text.strip()
    m = re.fullmatch(r"wps\((.*)\)", text)
    if m:
        weights = _int_list(m.group(1), "wps weights")
        if any(w <= 0 for w in weights):
            raise JobError("weights must be positive")
        return WeightedProjective(weights)
    m = re.fullmatch(r"P(\d+)", text)
    if m:
        return WeightedProjective.projective(int(m.group(1)))
    m = re.fullmatch(r"quot\(\s*P(\d+)\s*;(.*)\)", text)
    if m:
        n = int(m.group(1))
        opts = {}
        for part in m.group(2).split(";"):
            key, sep, value = part.partition("=")
            if not sep:
                raise JobError(f"quot option {part.strip()!r} is not key=value")
            opts[key.strip()] = value
        if set(opts) != {"m", "act"}:
            raise JobError("quot needs exactly the options m and act")
        (order,) = _int_list(opts["m"], "quot m")
        if order < 1:
            raise JobError("group order m must be positive")
        act = _int_list(opts["act"], "quot act")
        if len(act) != n + 1:
            raise JobError(f"quot of P{n} needs {n + 1} action weights, got {len(act)}")
        return CyclicQuotient(order, act)
    raise JobError(f"unrecognized space {text!r}")


def parse_bundle(text: str) -> KClass:
    pos = 0
    terms = []
    text = text.strip()
    if not text:
        raise JobError("empty bundle")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise JobError(f"cannot parse bundle near {text[pos:]!r}")
        sign, coeff, degree, char = m.groups()
        if terms and sign is None:
            raise JobError(f"missing '+' or '-' before {text[pos:m.end()].strip()!r}")
        c = int(coeff) if coeff else 1
        terms.append(KTerm(-c if sign == "-" else c, int(degree), int(char or 0)))
        pos = m.end()
    return KClass(terms)


def parse_job(text: str) -> Job:
    """Parse a job file; errors carry the offending line number."""
    values: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise JobError(f"line {lineno}: expected 'key = value'")
        if key not in KEYS:
            raise JobError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise JobError(f"line {lineno}: duplicate key {key!r}")
        values[key] = (lineno, value.strip())
    return _build_job(values)


def _build_job(values) -> Job:
    def field(key, parser):
        lineno, value = values[key]
        where = f"line {lineno}" if lineno else f"--{key}"
        try:
            return parser(value)
        except ValueError as exc:
            raise JobError(f"{where}: {exc}") from None

    if "space" not in values:
        raise JobError("missing key 'space'")
    space = field("space", parse_space)
    bundle = field("bundle", parse_bundle) if "bundle" in values else KClass.line(0)
    obstruction = None
    if "obstruction" in values:
        obstruction = field("obstruction", lambda v: _int_list(v.strip("[] "), "obstruction"))
        if any(d <= 0 for d in obstruction):
            raise JobError("obstruction degrees must be positive")
    shift = field("shift", lambda v: _int_list(v, "shift")[0]) if "shift" in values else 0
    if isinstance(space, WeightedProjective):
        if shift or any(t.char_shift for t in bundle):
            raise JobError("character shifts only apply to quotient spaces")
    elif obstruction is not None:
        raise JobError("obstruction theories are only supported on weighted projective spaces")
    return Job(space, bundle, obstruction, shift)


# -- rendering ----------------------------------------------------------------


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _breakdown_lines(reports) -> list[str]:
    order = 1
    for r in reports:
        order = order * r.contribution.order // gcd(order, r.contribution.order)
    lines = [f"z = zeta_{order}"]
    for r in reports:
        text = f"{r.label()} contribution={promote(r.contribution, order).format()}"
        if isinstance(r, engine.SectorReport) and (r.fixed_degrees or r.moving_degrees):
            fixed = ",".join(map(str, r.fixed_degrees))
            moving = ",".join(map(str, r.moving_degrees))
            text += f" fixed=[{fixed}] moving=[{moving}]"
        lines.append(text)
    return lines


def _sector_lines(job: Job) -> list[str]:
    lines = []
    if job.is_quotient:
        q = job.space
        for t in range(q.group_order):
            loci = enumerate_group_fixed_loci(q, t)
            parts = " ".join(
                f"v={v}:{{{','.join(map(str, c))}}}" for v, c in loci
            )
            lines.append(f"element t={t} fixed {parts}")
        lines.append(str(q.group_order))
        return lines
    space = job.space
    sectors = enumerate_sectors(space)
    for s in sectors:
        normal = ", ".join(f"(w={w}, char={c})" for w, c in normal_data(s, space))
        lines.append(f"sector {s.label()} locus={fixed_locus(s, space)} normal=[{normal}]")
    lines.append(str(len(sectors)))
    return lines


# -- commands -----------------------------------------------------------------


def _require_wps(job: Job, command: str):
    if job.is_quotient:
        raise JobError(f"{command} needs a weighted projective space")


def _require_obstruction(job: Job, command: str):
    _require_wps(job, command)
    if not job.obstruction:
        raise JobError(f"{command} needs an obstruction")


def _compute(job: Job, command: str):
    """Return (result line, reports) for an evaluation command."""
    if command == "chi-fake":
        if job.is_quotient:
            rep = engine.chi_lefschetz(job.space, job.bundle, job.shift).sectors[0]
            value = rational_value(rep.contribution) / job.space.group_order
            return format_rational(value), ()
        return format_rational(engine.chi_fake(job.space, job.bundle)), ()
    if command == "lefschetz" or (command == "chi" and job.is_quotient):
        if not job.is_quotient:
            raise JobError("lefschetz needs a quotient space")
        result = engine.chi_lefschetz(job.space, job.bundle, job.shift)
    elif command == "chi":
        result = engine.chi_kawasaki(job.space, job.bundle)
    elif command == "chi-virtual":
        _require_obstruction(job, command)
        setup = engine.ObstructionSetup(job.space, job.obstruction)
        result = engine.chi_virtual_direct(setup, job.bundle)
    elif command == "chi-virtual-strata":
        _require_obstruction(job, command)
        setup = engine.ObstructionSetup(job.space, job.obstruction)
        result = engine.chi_virtual_strata(setup, job.bundle)
    else:
        raise JobError(f"unknown command {command!r}")
    return str(result.value), result.sectors


def _oracle_value(job: Job) -> tuple[str, int]:
    if job.is_quotient:
        q = job.space
        total = 0
        for t in job.bundle:
            if t.degree < 0:
                raise JobError("invariant-section oracle needs non-negative degrees")
            total += t.coefficient * oracle.count_invariant_monomials(
                q.group_order, q.action_weights, t.degree, job.shift + t.char_shift
            )
        return "invariant_sections", total
    w = job.space.weights
    if job.obstruction:
        name = "hypersurface_difference" if len(job.obstruction) == 1 else "koszul_count"
        total = sum(t.coefficient * oracle.koszul_chi(w, job.obstruction, t.degree) for t in job.bundle)
        return name, total
    return "weighted_sections", sum(t.coefficient * oracle.chi_weighted(w, t.degree) for t in job.bundle)


def _verify(job: Job, out) -> int:
    name, expected = _oracle_value(job)
    if job.is_quotient:
        commands = ["lefschetz"]
    elif job.obstruction:
        commands = ["chi-virtual", "chi-virtual-strata"]
    else:
        commands = ["chi"]
    ok = True
    for command in commands:
        value, _ = _compute(job, command)
        status = "PASS" if int(value) == expected else "FAIL"
        ok &= status == "PASS"
        out.write(f"{status} {command}={value} {name}={expected}\n")
    out.write(("PASS" if ok else "FAIL") + "\n")
    return 0 if ok else 2


def _run_sweep(out) -> int:
    from . import sweeps

    ok = True
    for label, check in sweeps.CRITERIA:
        cases, failures = check()
        status = "PASS" if not failures else "FAIL"
        ok &= not failures
        out.write(f"{status} {label} ({cases} cases, {len(failures)} failures)\n")
        for f in failures[:5]:
            out.write(f"  {f}\n")
    out.write(("PASS" if ok else "FAIL") + "\n")
    return 0 if ok else 2


def run(job: Job | None, command: str, breakdown: bool = False, out=None, sweep: bool = False) -> int:
    """Execute ``command`` on ``job``, writing to ``out``; returns the exit code."""
    out = out or sys.stdout
    if command == "verify" and sweep:
        return _run_sweep(out)
    if job is None:
        raise JobError("no job given; use --job or --space")
    if command == "sectors":
        out.write("\n".join(_sector_lines(job)) + "\n")
        return 0
    if command == "verify":
        return _verify(job, out)
    value, reports = _compute(job, command)
    if breakdown and reports:
        out.write("\n".join(_breakdown_lines(reports)) + "\n")
    out.write(value + "\n")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kawasaki", description="Exact orbifold Euler characteristics.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--job", type=Path, help="job file")
    parser.add_argument("--space", help="override the job's space")
    parser.add_argument("--bundle", help="override the job's bundle")
    parser.add_argument("--obstruction", help="override the job's obstruction degrees")
    parser.add_argument("--shift", help="override the job's linearization shift")
    parser.add_argument("--breakdown", action="store_true", help="print per-sector contributions")
    parser.add_argument("--sweep", action="store_true", help="with verify: run the full oracle sweep")
    return parser


def _job_from_args(args) -> Job | None:
    values: dict[str, tuple[int, str]] = {}
    if args.job is not None:
        try:
            text = args.job.read_text()
        except OSError as exc:
            raise JobError(f"cannot read job file: {exc}") from None
        parse_job(text)  # reports line-numbered errors before overrides apply
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if line:
                key, _, value = line.partition("=")
                values[key.strip()] = (lineno, value.strip())
    for key in KEYS:
        override = getattr(args, key)
        if override is not None:
            values[key] = (0, override)
    if not values:
        return None
    return _build_job(values)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = _job_from_args(args)
        return run(job, args.command, breakdown=args.breakdown, sweep=args.sweep)
    except JobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except engine.IntegralityError as exc:
        for line in _breakdown_lines(exc.reports):
            print(line)
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    hyperclebsch duals --m 3
    hyperclebsch verify --m 1 --claim C10
    hyperclebsch suite --m 3 --potentials f1,f2,f3,f4,0,0,f7 --format json
    hyperclebsch algebra-table --backend clifford --m 2

Exit status is 0 on success, 1 on a usage error and 2 when the only
outcome is a domain error or an underspecified verdict.  A claim that
fails is a result, not an error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .claims import (
    ConventionConfig,
    Status,
    get_claim,
    registry,
    run_suite,
)
from .hyperalg import UnsupportedDimension, default_algebra, make_algebra, table_rows
from .hyperform import B_VARIANTS, PotentialSet, build_B, extract_duals
from .symexpr import DomainError, ParseError, SymbolOutOfRange, normalize
from .symexpr.canon import Undefined

__all__ = ["CliConfig", "UsageError", "run", "main"]

COMMANDS = ("duals", "verify", "suite", "algebra-table")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would print and exit with status 2; route it through run()
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    command: str
    m: int
    backend: str | None = None
    potentials: tuple | None = None
    coeff_kind: str = "differential"
    mul_order: str = "left"
    b_variant: str = "plain"
    seed: int = 0
    trials: int = 20
    format: str = "text"
    claim: str | None = None
    grid: bool = False
    timing: bool = False

    def convention(self) -> ConventionConfig:
        return ConventionConfig(
            mul_order=self.mul_order,
            coeff_kind=self.coeff_kind,
            b_variant=self.b_variant,
            backend=self.backend,
            seed=self.seed,
            trials=self.trials,
        )

    def potential_set(self) -> PotentialSet:
        if self.potentials is None:
            return PotentialSet.generic(self.m)
        P = PotentialSet.parse(self.m, list(self.potentials))
        for f in P.fs:
            normalize(f)  # raises Undefined on 1/0 and the like
        return P


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--m", type=int, default=1, help="number of imaginary units")
    common.add_argument("--backend", choices=("cayley_dickson", "clifford"), default=None)
    common.add_argument("--format", choices=("text", "json"), default="text")

    conv = _Parser(add_help=False)
    conv.add_argument("--potentials", default=None, help="comma-separated f1..f_{2m+1}")
    conv.add_argument("--coeff-kind", choices=("differential", "function"), default="differential")
    conv.add_argument("--mul-order", choices=("left", "right"), default="left")
    conv.add_argument("--b-variant", choices=B_VARIANTS, default="plain")
    conv.add_argument("--seed", type=int, default=0)
    conv.add_argument("--trials", type=int, default=20)
    conv.add_argument("--timing", action="store_true", help="include wall-clock times")

    parser = _Parser(prog="hyperclebsch", description="Hypercomplex duals of Clebsch one-forms.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("duals", parents=[common, conv], help="print A, its duals and any residue")
    p = sub.add_parser("verify", parents=[common, conv], help="check one claim")
    p.add_argument("--claim", required=True)
    p = sub.add_parser("suite", parents=[common, conv], help="check every applicable claim")
    p.add_argument("--grid", action="store_true", help="run ambiguous claims on every reading")
    p.add_argument("--claim", action="append", default=None, help="restrict to these ids")
    sub.add_parser("algebra-table", parents=[common], help="print the multiplication table")
    return parser


def parse_args(argv) -> CliConfig:
    ns = _build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
    if ns.m < 1:
        raise UsageError(f"--m must be positive, got {ns.m}")
    potentials = getattr(ns, "potentials", None)
    if potentials is not None:
        potentials = tuple(t.strip() for t in potentials.split(","))
        if len(potentials) != 2 * ns.m + 1:
            raise UsageError(
                f"--potentials needs {2 * ns.m + 1} entries for --m {ns.m}, got {len(potentials)}"
            )
    if getattr(ns, "trials", 1) < 1:
        raise UsageError("--trials must be at least 1")
    claim = getattr(ns, "claim", None)
    for cid in [claim] if isinstance(claim, str) else claim or []:
        try:
            get_claim(cid)
        except KeyError:
            known = ", ".join(c.id for c in registry())
            raise UsageError(f"--claim {cid!r} is not one of {known}") from None
    return CliConfig(
        command=ns.command,
        m=ns.m,
        backend=ns.backend,
        potentials=potentials,
        coeff_kind=getattr(ns, "coeff_kind", "differential"),
        mul_order=getattr(ns, "mul_order", "left"),
        b_variant=getattr(ns, "b_variant", "plain"),
        seed=getattr(ns, "seed", 0),
        trials=getattr(ns, "trials", 20),
        format=ns.format,
        claim=tuple(claim) if isinstance(claim, list) else claim,
        grid=getattr(ns, "grid", False),
        timing=getattr(ns, "timing", False),
    )


# ------------------------------------------------------------------ commands


def _algebra(cfg: CliConfig):
    try:
        return make_algebra(cfg.backend, cfg.m) if cfg.backend else default_algebra(cfg.m)
    except UnsupportedDimension as exc:
        flag = "--backend/--m" if cfg.backend else "--m"
        raise UsageError(f"{flag}: {exc}") from None


def _duals(cfg: CliConfig) -> tuple[int, str]:
    algebra = _algebra(cfg)
    P = cfg.potential_set()
    bundle = extract_duals(build_B(P, cfg.b_variant, algebra))
    if cfg.format == "json":
        doc = {
            "m": cfg.m,
            "backend": algebra.backend,
            "b_variant": cfg.b_variant,
            "potentials": [str(f) for f in P.fs],
            "A": bundle.A.to_json(),
            "duals": [d.to_json() for d in bundle.duals],
            "residue": {name: f.to_json() for name, f in bundle.residue.items()},
        }
        return 0, json.dumps(doc, indent=2)
    lines = [f"A = {bundle.A.to_text()}"]
    lines += [f"A~{k} = {d.to_text()}" for k, d in enumerate(bundle.duals, 1)]
    lines += [f"residue {name} = {f.to_text()}" for name, f in bundle.residue.items()]
    return 0, "\n".join(lines)


def _verify(cfg: CliConfig) -> tuple[int, str]:
    _algebra(cfg)
    claim = get_claim(cfg.claim)
    report = run_suite(cfg.convention(), cfg.potential_set(), ids=[claim.id])
    if not report.entries:
        raise UsageError(f"--claim {claim.id} does not apply to --m {cfg.m}")
    return _render(cfg, report)


def _suite(cfg: CliConfig) -> tuple[int, str]:
    _algebra(cfg)
    report = run_suite(cfg.convention(), cfg.potential_set(), grid=cfg.grid, ids=cfg.claim)
    return _render(cfg, report)


def _render(cfg: CliConfig, report) -> tuple[int, str]:
    statuses = {v.status for _, v in report.entries}
    code = 2 if statuses == {Status.UNDERSPECIFIED} else 0
    if cfg.format == "json":
        return code, report.dumps(cfg.timing)
    return code, report.to_text(cfg.timing)


def _table(cfg: CliConfig) -> tuple[int, str]:
    algebra = _algebra(cfg)
    rows = table_rows(algebra)
    names = list(algebra.names)
    if cfg.format == "json":
        doc = {"backend": algebra.backend, "m": algebra.m, "blades": names, "table": rows}
        return 0, json.dumps(doc, indent=2)
    width = max(len(x) for x in names + [c for r in rows for c in r])
    fmt = lambda cells: " ".join(c.rjust(width) for c in cells)  # noqa: E731
    lines = [fmt([""] + names), "-" * ((width + 1) * (len(names) + 1) - 1)]
    lines += [fmt([a] + r) for a, r in zip(names, rows)]
    return 0, "\n".join(lines)


_COMMANDS = {"duals": _duals, "verify": _verify, "suite": _suite, "algebra-table": _table}


def run(argv) -> tuple[int, str]:
    """Parse ``argv`` and run it; returns ``(exit status, output)``.

    Errors are rendered into the output rather than raised.
    """
    try:
        cfg = parse_args(list(argv))
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        return 1, f"usage error: {exc}"
    except SymbolOutOfRange as exc:
        return 1, f"usage error: --potentials: {exc}"
    except ParseError as exc:
        return 1, f"usage error: --potentials: {exc}"
    except (DomainError, Undefined, ZeroDivisionError) as exc:
        return 2, f"domain error: {exc}"


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if code == 1 else sys.stdout
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Python front end for the gapped dg algebra toolkit."""

import json
from dataclasses import dataclass
from typing import Any, Optional

from ._gdga import ParseError, parse_rational
from ._gdga import run as _run

__all__ = ["Result", "ParseError", "parse_rational", "run", "validate", "deform", "solve_bounding_chain",
           "obstruct", "spectral", "pipeline", "replay_certificate"]


@dataclass
class Result:
    exit: int
    report: dict
    certificate: Optional[dict]

    @property
    def status(self) -> str:
        return self.report["status"]


def run(verb: str, project: Optional[str] = None, **options: Any) -> Result:
    cert = options.pop("certificate", None)
    if isinstance(cert, dict):
        cert = json.dumps(cert)
    for key in ("cutoff", "lambda0"):
        if key in options and options[key] is not None:
            options[key] = str(options[key])
    code, report, certificate = _run(verb, project, certificate=cert, **options)
    return Result(code, json.loads(report), json.loads(certificate))


def validate(project=None, **kw): return run("validate", project, **kw)
def deform(project=None, **kw): return run("deform", project, **kw)
def solve_bounding_chain(project=None, **kw): return run("solve-bounding-chain", project, **kw)
def obstruct(project=None, **kw): return run("obstruct", project, **kw)
def spectral(project=None, **kw): return run("spectral", project, **kw)
def pipeline(project=None, **kw): return run("pipeline", project, **kw)


def replay_certificate(project, certificate, **kw):
    return run("replay-certificate", project, certificate=certificate, **kw)

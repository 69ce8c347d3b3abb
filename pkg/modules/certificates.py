import json
from dataclasses import dataclass, field
from typing import *

from pydantic import BaseModel, ValidationError, model_validator

from lib.mediatrix.bounds import (
    UpperBound,
    central_order,
    strict_gap_flag,
    verify_extremal_family_is_plane,
)
from lib.mediatrix.config import MediatrixConfig
from lib.mediatrix.digraph import Digraph, arcs, is_mediated, max_in_degree
from lib.mediatrix.errors import ArgumentError, CertificateError
from lib.mediatrix.families import (
    BlockFamily,
    digraph_from_family,
    family_from_digraph,
    find_sdr,
    is_symmetric,
    is_two_covering,
    mcard,
)

SCHEMA_VERSION = 1


class Certificate(BaseModel):
    schema_version: Literal[1] = SCHEMA_VERSION
    kind: Literal["digraph", "family"]
    n: int
    method: str
    params: Dict[str, Any] = {}
    claimed_max_in_degree: Optional[int] = None
    claimed_mcard: Optional[int] = None
    arcs: Optional[List[Tuple[int, int]]] = None
    blocks: Optional[List[List[int]]] = None

    @model_validator(mode="after")
    def check_kind(self) -> "Certificate":
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.kind == "digraph":
            if self.arcs is None or self.claimed_max_in_degree is None:
                raise ValueError("a digraph certificate needs arcs and claimed_max_in_degree")
        elif self.blocks is None or self.claimed_mcard is None:
            raise ValueError("a family certificate needs blocks and claimed_mcard")
        return self


def certificate_from_bound(
    bound: UpperBound,
    kind: Literal["digraph", "family"] = "digraph",
    config: Optional[MediatrixConfig] = None,
) -> Certificate:
    family = bound.build_family(config)
    common = dict(kind=kind, n=bound.n, method=bound.method, params=bound.params)
    if kind == "family":
        return Certificate(
            **common, claimed_mcard=bound.value + 1, blocks=[list(b) for b in family.blocks]
        )
    return Certificate(
        **common,
        claimed_max_in_degree=bound.value,
        arcs=arcs(digraph_from_family(family)),
    )


def dumps(cert: Certificate) -> str:
    """
    Canonical text: fixed key order, one arc or block per line, so equal
    certificates are byte-identical.
    """
    scalar = lambda v: json.dumps(v, sort_keys=True, separators=(", ", ": "))
    head = [
        ("schema_version", cert.schema_version),
        ("kind", cert.kind),
        ("n", cert.n),
        ("method", cert.method),
        ("params", cert.params),
    ]
    if cert.kind == "digraph":
        head.append(("claimed_max_in_degree", cert.claimed_max_in_degree))
        key, rows = "arcs", [list(a) for a in cert.arcs]
    else:
        head.append(("claimed_mcard", cert.claimed_mcard))
        key, rows = "blocks", cert.blocks

    lines = [f"  {json.dumps(k)}: {scalar(v)}," for k, v in head]
    if rows:
        body = ",\n".join(f"    {scalar(r)}" for r in rows)
        lines.append(f'  "{key}": [\n{body}\n  ]')
    else:
        lines.append(f'  "{key}": []')
    return "{\n" + "\n".join(lines) + "\n}\n"


def write_certificate(cert: Certificate, path: str):
    with open(path, "w", encoding="utf8", newline="\n") as f:
        f.write(dumps(cert))


def loads(text: str) -> Certificate:
    try:
        return Certificate.model_validate_json(text)
    except ValidationError as e:
        raise CertificateError(f"malformed certificate: {e}")


def read_certificate(path: str) -> Certificate:
    try:
        with open(path, "r", encoding="utf8") as f:
            text = f.read()
    except OSError as e:
        raise CertificateError(f"cannot read certificate {path}: {e}")
    return loads(text)


@dataclass
class VerifyReport:
    ok: bool
    kind: str
    n: int
    claimed: int
    actual: Optional[int] = None
    counterexample: Optional[Tuple[int, int]] = None
    messages: List[str] = field(default_factory=list)

    def fail(self, message: str) -> "VerifyReport":
        self.ok = False
        self.messages.append(message)
        return self


def _extremal_checks(report: VerifyReport, family: BlockFamily, size: int):
    # a witness meeting f(n) at n = q^2+q+1 must be a plane of order q
    q = central_order(report.n)
    if q is None or size != q + 1:
        return
    if not verify_extremal_family_is_plane(family, q):
        report.fail(f"witness meets f({report.n}) = {q} but is not a projective plane of order {q}")
    elif strict_gap_flag(report.n):
        report.fail(f"witness would be a projective plane of order {q}, which does not exist")


def _digraph(cert: Certificate) -> Digraph:
    if len(set(map(tuple, cert.arcs))) != len(cert.arcs):
        raise CertificateError("certificate lists an arc twice")
    try:
        return Digraph.from_arcs(cert.n, cert.arcs)
    except ArgumentError as e:
        raise CertificateError(f"invalid arc list: {e}")


def _family(cert: Certificate) -> BlockFamily:
    if any(len(set(b)) != len(b) for b in cert.blocks):
        raise CertificateError("a block lists a point twice")
    try:
        return BlockFamily(cert.n, cert.blocks)
    except ArgumentError as e:
        raise CertificateError(f"invalid block list: {e}")


def verify_certificate(cert: Certificate) -> VerifyReport:
    """
    Checks the witness independently of how it was built. Structural problems
    raise CertificateError; a false claim gives a report with ok=False naming
    the first violated claim.
    """
    if cert.kind == "digraph":
        d = _digraph(cert)
        report = VerifyReport(ok=True, kind=cert.kind, n=cert.n, claimed=cert.claimed_max_in_degree)
        verdict = is_mediated(d)
        if not verdict:
            report.counterexample = verdict.pair
            return report.fail(
                f"not mediated: no closed in-neighbourhood contains the pair {verdict.pair}"
            )
        report.actual = max_in_degree(d)
        if report.actual > report.claimed:
            return report.fail(f"max in-degree {report.actual} exceeds claim {report.claimed}")
        _extremal_checks(report, family_from_digraph(d), report.actual + 1)
        return report

    f = _family(cert)
    report = VerifyReport(ok=True, kind=cert.kind, n=cert.n, claimed=cert.claimed_mcard)
    if not is_symmetric(f):
        return report.fail(f"family has {f.m} blocks on {f.n} points")
    verdict = is_two_covering(f)
    if not verdict:
        report.counterexample = verdict.pair
        return report.fail(f"not 2-covering: no block contains the pair {verdict.pair}")
    if find_sdr(f) is None:
        return report.fail("family has no system of distinct representatives")
    report.actual = mcard(f)
    if report.actual > report.claimed:
        return report.fail(f"largest block has {report.actual} points, exceeds claim {report.claimed}")
    _extremal_checks(report, f, report.actual)
    return report

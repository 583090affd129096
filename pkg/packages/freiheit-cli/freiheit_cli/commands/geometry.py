"""
Numeric commands: certify-schottky and obstruct.
"""

import logging

from freiheit.config import FreiheitConfig
from freiheit.errors import SizeLimitError
from freiheit.models.freeness import SchottkyCertificate
from freiheit.models.hyperbolic import ObstructionReport
from freiheit.services.catalog import get_example
from freiheit.services.freeness import FreenessService
from freiheit.services.hyperbolic import HyperbolicService
from freiheit_cli import payload as io
from freiheit_cli.commands.interface import (
    CommandInfo,
    CommandResult,
    FreiheitCommand,
    verification_result,
)

logger = logging.getLogger(__name__)


def _matrices(payload: dict):
    if "example" in payload:
        mats = get_example(payload["example"]).matrices
        if not mats:
            raise io.PayloadError(f"Example '{payload['example']}' has no matrices", "$.example")
        return mats
    return io.matrices(payload)


class CertifySchottkyCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="certify-schottky",
            description="Certify a Schottky group by pairwise disjoint isometric disks",
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        service = FreenessService(config)
        mats = _matrices(payload)
        if payload.get("retry", True):
            certificate = service.certify_schottky_with_retry(mats, payload.get("margin"))
        else:
            certificate = service.certify_schottky(mats, payload.get("margin"))
        result = certificate.to_dict()
        if len(mats) == 2:
            result["jorgensen"] = service.jorgensen_filter(*mats).to_dict()
        return CommandResult(result=result, positive=certificate.certified)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        try:
            certificate = SchottkyCertificate.from_dict(payload["report"])
        except (KeyError, TypeError, ValueError) as e:
            raise io.PayloadError(f"Not a Schottky certificate: {e}", "$.report") from e
        problems = FreenessService(config).verify_schottky(certificate)
        return verification_result("schottky", problems, certificate.certified)


class ObstructCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="obstruct",
            description="Displacement-sum obstruction to independence, optionally minimized over basepoints",
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        service = HyperbolicService(config)
        mats = _matrices(payload)
        basepoint = io.basepoint(payload)
        if payload.get("minimize", False):
            search = service.minimize_basepoint(mats, basepoint, restarts=payload.get("restarts"))
            result = search.to_dict()
            report = search.best
        else:
            report = service.log2km1_test(mats, basepoint)
            result = report.to_dict()
        try:
            result["short_loop_bound"] = service.short_loop_bound(mats, report.basepoint).to_dict()
        except SizeLimitError as e:
            logger.warning(str(e))
            result["short_loop_bound"] = None
        return CommandResult(result=result, positive=not report.obstructed)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        data = payload["report"]
        if data.get("kind") == "basepoint-search":
            data = data["best"]
        try:
            report = ObstructionReport.from_dict(data)
        except (KeyError, TypeError, ValueError) as e:
            raise io.PayloadError(f"Not an obstruction report: {e}", "$.report") from e
        problems = HyperbolicService(config).verify_obstruction(report, _matrices(payload))
        return verification_result("obstruction", problems, not report.obstructed)

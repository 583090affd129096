"""
Group calculus commands: iof, miof-bound, chibar, theorem-b, quotient-check.
"""

from freiheit.config import FreiheitConfig
from freiheit.models.groups import IofReport, MiofBound
from freiheit.services.catalog import get_example
from freiheit.services.freeness import FreenessService
from freiheit.services.groupcalc import (
    GroupCalcService,
    chibar,
    deficiency,
    miof_lower_bound,
)
from freiheit_cli import payload as io
from freiheit_cli.commands.interface import (
    CommandInfo,
    CommandResult,
    FreiheitCommand,
    verification_result,
)


def _evidence(service: GroupCalcService, payload: dict):
    """iof evidence for words or matrices, plus a Schottky certificate for matrices."""
    if "example" in payload:
        example = get_example(payload["example"])
        words, mats = example.words, example.matrices
    else:
        words, mats = io.words(payload), io.matrices(payload)
    # words win when an example carries both
    if words:
        return service.iof_free(words, payload.get("rank")), None
    if not mats:
        raise io.PayloadError("Give either words or matrices", "$")
    certificate = FreenessService(service.config).certify_schottky_with_retry(mats)
    return service.iof_matrix(mats), certificate


class IofCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="iof",
            description="Index of freedom of a generating set (exact for words, bounds for matrices)",
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        report, _ = _evidence(GroupCalcService(config), payload)
        return CommandResult(result=report.to_dict(), positive=True)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        try:
            report = IofReport.from_dict(payload["report"])
        except (KeyError, TypeError, ValueError) as e:
            raise io.PayloadError(f"Not an iof report: {e}", "$.report") from e
        problems = GroupCalcService(config).verify_iof(report)
        return verification_result("iof", problems, True)


class MiofBoundCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="miof-bound",
            description="Upper bound for miof(F_k) over generating sets within d Nielsen moves",
            uses_depth=True,
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        depth = depth if depth is not None else payload.get("depth", config.groups.max_nielsen_depth)
        bound = GroupCalcService(config).miof_upper_bound(payload["rank"], depth)
        return CommandResult(result=bound.to_dict(), positive=bound.lower <= bound.upper)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        try:
            bound = MiofBound.from_dict(payload["report"])
        except (KeyError, TypeError, ValueError) as e:
            raise io.PayloadError(f"Not a miof bound: {e}", "$.report") from e
        problems = GroupCalcService(config).verify_miof(bound)
        return verification_result("miof-bound", problems, bound.verdict == "consistent")


class ChibarCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="chibar",
            description="chibar, deficiency and the miof lower bound of a group descriptor",
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        group = io.group(payload)
        return CommandResult(
            result={
                "kind": "chibar",
                "group": group.to_dict(),
                "chibar": chibar(group),
                "deficiency": deficiency(group),
                "miof_lower_bound": miof_lower_bound(group),
            },
            positive=True,
        )

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        data = payload["report"]
        recomputed = self.execute({"group": data["group"]}, config).result
        problems = [
            f"{key} is {recomputed[key]}, report says {data.get(key)}"
            for key in ("chibar", "deficiency", "miof_lower_bound")
            if data.get(key) != recomputed[key]
        ]
        return verification_result("chibar", problems, True)


class TheoremBCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="theorem-b",
            description="Check chibar(G) < iof(D) and def(G) <= iof(D) for a generating set D of G",
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        service = GroupCalcService(config)
        if "example" in payload and "group" not in payload:
            group = get_example(payload["example"]).group
        else:
            group = io.group(payload)
        evidence, certificate = _evidence(service, payload)
        report = service.theorem_b_check(group, evidence, certificate)
        return CommandResult(result=report.to_dict(), positive=report.consistent)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        data = payload["report"]
        try:
            group = io.group(data)
            evidence = IofReport.from_dict(data["evidence"])
        except (KeyError, TypeError, ValueError) as e:
            raise io.PayloadError(f"Not a theorem-b report: {e}", "$.report") from e
        service = GroupCalcService(config)
        problems = service.verify_iof(evidence)
        recomputed = service.theorem_b_check(group, evidence)
        if recomputed.verdict != data.get("verdict"):
            problems.append(f"verdict is {recomputed.verdict}, report says {data.get('verdict')}")
        return verification_result("theorem-b", problems, data.get("verdict") == "consistent")


class QuotientCheckCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="quotient-check",
            description="Check iof(eta(D)) <= iof(D) for eta killing some generators",
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        report = GroupCalcService(config).iof_quotient_check(
            io.words(payload), io.generator_indices(payload.get("kill", [])), payload.get("rank")
        )
        return CommandResult(result=report.to_dict(), positive=report.holds)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        data = payload["report"]
        recomputed = self.execute(
            {"words": data["words"], "kill": data["killed"]}, config
        ).result
        problems = [
            f"{key} is {recomputed[key]}, report says {data.get(key)}"
            for key in ("images", "iof_before", "iof_after")
            if data.get(key) != recomputed[key]
        ]
        return verification_result("quotient-check", problems, data.get("verdict") == "consistent")

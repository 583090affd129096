"""
certify-magnus: bounded exact certification of G * <Lambda>.
"""

from freiheit.config import FreiheitConfig
from freiheit.models.magnus import FreeProductCertificate
from freiheit.services.catalog import get_example
from freiheit.services.magnus import MagnusService
from freiheit_cli import payload as io
from freiheit_cli.commands.interface import (
    CommandInfo,
    CommandResult,
    FreiheitCommand,
    verification_result,
)


class CertifyMagnusCommand(FreiheitCommand):
    @property
    def info(self) -> CommandInfo:
        return CommandInfo(
            name="certify-magnus",
            description="Certify <Lambda, G> = G * <Lambda> over Q(i)[X] to a syllable depth",
            uses_depth=True,
        )

    def execute(self, payload: dict, config: FreiheitConfig, depth: int | None = None) -> CommandResult:
        if "example" in payload:
            gens = get_example(payload["example"]).exact
        else:
            gens = io.exact_matrices(payload)
        certificate = MagnusService(config).certify_free_product(
            gens,
            length=payload.get("word_length"),
            depth=depth if depth is not None else payload.get("depth"),
            exponent_bound=payload.get("exponent_bound"),
        )
        return CommandResult(result=certificate.to_dict(), positive=certificate.certified)

    def verify(self, payload: dict, config: FreiheitConfig) -> CommandResult:
        try:
            certificate = FreeProductCertificate.from_dict(payload["report"])
        except (KeyError, TypeError, ValueError) as e:
            raise io.PayloadError(f"Not a free-product certificate: {e}", "$.report") from e
        problems = MagnusService(config).verify_free_product(certificate)
        return verification_result("free-product", problems, certificate.certified)

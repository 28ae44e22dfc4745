"""
Surface registry - build a FrontalSurface from a generator spec
"""
from typing import TYPE_CHECKING, Callable, Dict

from src.errors import WrongGeneratorKind
from src.frontal.surface import FrontalSurface, surface_from_expressions, with_basis
from src.models import Domain
from src.utils.logger import setup_logger

from .false_singularity import gen_false_singularity
from .representation import (
    gen_extendable_K,
    gen_extendable_normal,
    gen_rank0_front,
    gen_rank1_from_h,
    gen_rank1_front,
    gen_vanishing_K,
    rank1_to_nonvanishing,
)

if TYPE_CHECKING:
    from src.utils.run_config import GeneratorSpec

logger = setup_logger("frontal-lab.generators")


def _triple(text: str):
    return [part.strip() for part in text.split(",")]


class SurfaceRegistry:
    """Dispatch generator kinds to their constructors"""

    def __init__(self):
        self.builders: Dict[str, Callable[["GeneratorSpec", Domain], FrontalSurface]] = {
            "explicit": self._explicit,
            "extendable-normal": lambda spec, d: gen_extendable_normal(
                spec.parameters["b"], spec.parameters["h"], spec.parameters["l"], spec.parameters["r"], d
            ),
            "rank1-front": lambda spec, d: gen_rank1_front(
                spec.parameters["lambda_hat"], spec.parameters["f1"], spec.parameters["f2"], d
            ),
            "rank1-from-h": lambda spec, d: gen_rank1_from_h(spec.parameters["h"], d),
            "vanishing-K": lambda spec, d: gen_vanishing_K(
                spec.parameters["r1"], spec.parameters["r2"], spec.constants["c1"], spec.constants["c2"], d
            ),
            "extendable-K-wave": lambda spec, d: gen_extendable_K(
                "wave", spec.constants["c"], d, h1=spec.parameters["h1"], h2=spec.parameters["h2"]
            ),
            "extendable-K-laplace": lambda spec, d: gen_extendable_K(
                "laplace", spec.constants["c"], d, F=spec.parameters["F"]
            ),
            "rank0-front": lambda spec, d: gen_rank0_front(spec.parameters["h"], d),
            "false-singularity": lambda spec, d: gen_false_singularity(
                spec.parameters["immersion"], spec.parameters["m1"], spec.parameters["m2"], d,
                phi=spec.parameters.get("phi"),
            ),
            "rank1-normalized": self._normalized,
        }

    def _explicit(self, spec: "GeneratorSpec", domain: Domain) -> FrontalSurface:
        p = spec.parameters
        return surface_from_expressions(_triple(p["x"]), _triple(p["w1"]), _triple(p["w2"]), domain)

    def _normalized(self, spec: "GeneratorSpec", domain: Domain) -> FrontalSurface:
        if spec.base is None:
            raise WrongGeneratorKind("rank1-normalized needs a base rank1-front spec")
        return rank1_to_nonvanishing(self.build(spec.base, domain))

    def build(self, spec: "GeneratorSpec", domain: Domain = None) -> FrontalSurface:
        """Construct the surface a spec describes

        Args:
            spec: Validated generator spec
            domain: Override for the spec's own domain (used for nested base specs)

        Returns:
            FrontalSurface, with the basis replaced when the spec carries a basis_override
        """
        domain = domain or spec.to_domain()
        try:
            builder = self.builders[spec.kind]
        except KeyError:
            raise WrongGeneratorKind(f"unknown generator kind {spec.kind!r}") from None
        surface = builder(spec, domain)
        if spec.basis_override is not None:
            w1, w2 = spec.basis_override.columns()
            logger.info(f"basis of {spec.kind} surface overridden: w1=({', '.join(w1)}), w2=({', '.join(w2)})")
            surface = with_basis(surface, w1, w2)
        return surface


registry = SurfaceRegistry()


def build_surface(spec: "GeneratorSpec") -> FrontalSurface:
    return registry.build(spec)

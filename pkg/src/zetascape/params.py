"""Evaluation parameters and base-function identifiers."""
from __future__ import annotations

import enum
from dataclasses import dataclass


class EvalMode(enum.Enum):
    ACCELERATED = "accelerated"
    TRUNCATED_ETA = "truncated-eta"


@dataclass(frozen=True)
class EvalParams:
    """Knobs for the series evaluators.

    ``terms`` is the exact term count in TRUNCATED_ETA mode and a lower
    bound in ACCELERATED mode (the accelerated path raises it with the
    imaginary height of the argument, so accuracy does not degrade at
    altitude).  ``deriv_step`` is the finite-difference step used where
    no term-wise derivative is available.
    """

    mode: EvalMode = EvalMode.ACCELERATED
    terms: int = 64
    deriv_step: float = 1e-6

    def __post_init__(self) -> None:
        if self.terms < 1:
            raise ValueError("terms must be >= 1")
        if self.deriv_step <= 0:
            raise ValueError("deriv_step must be positive")


class FunctionTag(enum.Enum):
    ZETA = "zeta"
    ETA = "eta"
    XI = "xi"
    DIRICHLET_L = "dirichlet"
    ROSETTA = "rosetta"      # f(z) = z * exp(-z)
    QUADRATIC = "quadratic"  # f(z) = z**2


# Label prefixes for critical-point naming, one letter per base function.
LABEL_PREFIX = {
    FunctionTag.ZETA: "z",
    FunctionTag.ETA: "e",
    FunctionTag.XI: "x",
    FunctionTag.DIRICHLET_L: "L",
    FunctionTag.ROSETTA: "r",
    FunctionTag.QUADRATIC: "q",
}


@dataclass(frozen=True)
class FunctionId:
    tag: FunctionTag
    modulus: int | None = None
    char_index: int | None = None

    def __post_init__(self) -> None:
        if self.tag is FunctionTag.DIRICHLET_L:
            if self.modulus is None or self.char_index is None:
                raise ValueError("DirichletL requires modulus and char_index")
            if self.modulus < 1:
                raise ValueError("modulus must be >= 1")
            if self.char_index < 1:
                raise ValueError("char_index must be >= 1")
        elif self.modulus is not None or self.char_index is not None:
            raise ValueError("modulus/char_index only valid for DirichletL")

    @property
    def prefix(self) -> str:
        return LABEL_PREFIX[self.tag]

    def __str__(self) -> str:
        if self.tag is FunctionTag.DIRICHLET_L:
            return f"dirichlet:{self.modulus}:{self.char_index}"
        return self.tag.value


ZETA = FunctionId(FunctionTag.ZETA)
ETA = FunctionId(FunctionTag.ETA)
XI = FunctionId(FunctionTag.XI)
ROSETTA = FunctionId(FunctionTag.ROSETTA)
QUADRATIC = FunctionId(FunctionTag.QUADRATIC)


def dirichlet(q: int, k: int) -> FunctionId:
    return FunctionId(FunctionTag.DIRICHLET_L, modulus=q, char_index=k)


def parse_function_id(text: str) -> FunctionId:
    """Parse "zeta", "eta", ..., or "dirichlet:<q>:<k>" (also "L:<q>:<k>")."""
    parts = text.strip().lower().split(":")
    name = parts[0]
    if name in ("dirichlet", "l"):
        if len(parts) != 3:
            raise ValueError(f"expected dirichlet:<q>:<k>, got {text!r}")
        return dirichlet(int(parts[1]), int(parts[2]))
    if len(parts) != 1:
        raise ValueError(f"unexpected arguments in function id {text!r}")
    for tag in FunctionTag:
        if tag.value == name:
            return FunctionId(tag)
    raise ValueError(f"unknown function {text!r}")


def parse_complex(text: str) -> complex:
    """Parse "re,im" (or a bare real) into a complex number."""
    s = text.strip()
    if "," in s:
        re_s, im_s = s.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(float(s), 0.0)

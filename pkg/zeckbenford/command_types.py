"""Definitions for command-line commands."""
from dataclasses import dataclass, field
from typing import List


@dataclass(frozen=True)
class ZeckCommandDescription:
    """Class describing zeckbenford commands."""

    key: str
    name: str = ""
    needs_spec: bool = True
    needs_n: bool = False
    needs_seed: bool = False
    parallel: bool = False
    formats: List = field(default_factory=lambda: ["json", "pretty"])


COMMAND_TYPES = {
    "sequence": ZeckCommandDescription(
        key="sequence",
        name="Sequence terms G_1..G_n",
        needs_n=True,
        formats=["json", "csv", "pretty"],
    ),
    "decompose": ZeckCommandDescription(
        key="decompose",
        name="Legal decomposition of an integer",
    ),
    "check": ZeckCommandDescription(
        key="check",
        name="Check a coefficient string for legality",
    ),
    "blocks": ZeckCommandDescription(
        key="blocks",
        name="Split a legal coefficient string into blocks",
    ),
    "count-superlegal": ZeckCommandDescription(
        key="count-superlegal",
        name="Super-legal counts H_1..H_n",
        needs_n=True,
        parallel=True,
        formats=["json", "csv", "pretty"],
    ),
    "root": ZeckCommandDescription(
        key="root",
        name="Dominant root and Binet constant",
    ),
    "ratio": ZeckCommandDescription(
        key="ratio",
        name="H_n/G_n series",
        needs_n=True,
        formats=["json", "csv", "pretty"],
    ),
    "distribution": ZeckCommandDescription(
        key="distribution",
        name="Coefficient distribution p_{j,k}(n)",
        needs_n=True,
        parallel=True,
        formats=["json", "csv", "pretty"],
    ),
    "block-counts": ZeckCommandDescription(
        key="block-counts",
        name="Block-position counts, formula against oracle",
        needs_n=True,
        parallel=True,
        formats=["json", "csv", "pretty"],
    ),
    "conditional": ZeckCommandDescription(
        key="conditional",
        name="Conditional digit probability",
        needs_n=True,
        parallel=True,
    ),
    "density": ZeckCommandDescription(
        key="density",
        name="Density q(S,n) of a set",
        needs_n=True,
    ),
    "benford": ZeckCommandDescription(
        key="benford",
        name="Leading digits of the sequence or of summands",
        needs_n=True,
        parallel=True,
        formats=["json", "csv", "pretty"],
    ),
    "stats": ZeckCommandDescription(
        key="stats",
        name="Summand statistics X_n and Y_n",
        needs_n=True,
        parallel=True,
    ),
    "concentration": ZeckCommandDescription(
        key="concentration",
        name="Concentration of Y_n/X_n around the density",
        needs_n=True,
        needs_seed=True,
        parallel=True,
        formats=["json", "csv", "pretty"],
    ),
    "oracle": ZeckCommandDescription(
        key="oracle",
        name="Bijection audit of legal strings",
        needs_n=True,
        parallel=True,
    ),
    "selftest": ZeckCommandDescription(
        key="selftest",
        name="Chi-square uniformity check of the sampler",
        needs_n=True,
        needs_seed=True,
        parallel=True,
    ),
}

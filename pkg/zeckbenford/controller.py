"""Zeckbenford Controller."""

import logging
import threading

from .const import DEFAULT_WORKERS, DOMAIN
from .counting import count_super_legal
from .errors import IndexOutOfRange
from .recurrence import (
    RecurrenceSpec,
    SequenceTable,
    extend_table,
    fit_binet_constant,
    generate_sequence,
    dominant_root,
    ratio_profile,
)

_LOGGER = logging.getLogger(__name__)


# ---------------------------
#   ZeckController
# ---------------------------
class ZeckController(object):
    """ZeckController Class."""

    def __init__(self, spec: RecurrenceSpec, workers: int = DEFAULT_WORKERS, budget=None):
        """Initialize ZeckController."""
        self.spec = spec
        self.workers = workers
        self.budget = budget

        self.data = {
            "sequence": None,
            "superlegal": None,
            "binet": None,
        }

        self.lock = threading.Lock()

    # ---------------------------
    #   name
    # ---------------------------
    @property
    def name(self):
        """Return a readable name for the spec."""
        coeffs = ",".join(str(c) for c in self.spec.coeffs)
        return f"{DOMAIN}-{coeffs}"

    # ---------------------------
    #   get_sequence
    # ---------------------------
    def get_sequence(self, count: int):
        """Return a table of exactly count terms, growing the cache."""
        if count < 1:
            raise IndexOutOfRange(f"count = {count}")

        with self.lock:
            if self.data["sequence"] is None:
                self.data["sequence"] = generate_sequence(self.spec, count)
            else:
                self.data["sequence"] = extend_table(self.data["sequence"], count)

            return SequenceTable(self.spec, self.data["sequence"].g_values[:count])

    # ---------------------------
    #   get_superlegal
    # ---------------------------
    def get_superlegal(self, count: int, method: str):
        """Return H_1..H_count by the given method."""
        with self.lock:
            cached = self.data["superlegal"]
            if cached is not None and cached.method == method and len(cached.h_values) >= count:
                return cached

        table = count_super_legal(self.spec, count, method, budget=self.budget, workers=self.workers)
        with self.lock:
            self.data["superlegal"] = table

        return table

    # ---------------------------
    #   get_table_with_h
    # ---------------------------
    def get_table_with_h(self, count: int, method: str):
        """Return a table of count terms carrying H values."""
        h_values = self.get_superlegal(count, method).h_values[:count]
        return self.get_sequence(count).with_h_values(h_values)

    # ---------------------------
    #   get_binet
    # ---------------------------
    def get_binet(self, count: int, tolerance: float):
        """Return the Binet fit and ratio profile on count terms."""
        with self.lock:
            cached = self.data["binet"]
            if cached is not None and cached[0] == (count, tolerance):
                return cached[1]

        table = self.get_sequence(count)
        lambda1 = dominant_root(self.spec, tolerance)
        fit = fit_binet_constant(table, lambda1)
        profile, burn_in = ratio_profile(table, lambda1)
        _LOGGER.info("Fitted A = %s for %s", fit.a_const, self.name)

        with self.lock:
            self.data["binet"] = ((count, tolerance), (fit, profile, burn_in))

        return fit, profile, burn_in

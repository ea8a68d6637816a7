"""Chunked work dispatch with worker-count independent results."""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Sequence

_LOGGER = logging.getLogger(__name__)


# ---------------------------
#   run_chunks
# ---------------------------
def run_chunks(func: Callable, chunks: Sequence, workers: int = 1) -> List:
    """Apply func to every chunk; results come back in chunk order."""
    if workers <= 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]

    _LOGGER.debug("Dispatching %s chunks to %s workers", len(chunks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, chunks))

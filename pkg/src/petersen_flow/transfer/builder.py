"""
Block provider with in-memory and on-disk caching.
"""

import logging

from petersen_flow.combinatorics.amplitudes import YoungDiagram, youngs
from petersen_flow.config.settings import RunConfig, settings
from petersen_flow.transfer.block import TransferBlock, build_block, deflate_trivial
from petersen_flow.transfer.cache import BlockCache

logger = logging.getLogger(__name__)

SYMMETRIC_ONLY_FROM_K = 8


class BlockBuilder:
    """Builds, deflates and caches transfer blocks."""

    def __init__(self, config: RunConfig | None = None, use_disk_cache: bool = True):
        self.config = config or settings
        self.cache = BlockCache(self.config) if use_disk_cache else None
        self._memory: dict[tuple[int, int, YoungDiagram, bool], TransferBlock] = {}

    def block(self, k: int, l: int, lam: YoungDiagram, deflated: bool = True) -> TransferBlock:
        key = (k, l, lam, deflated)
        if key in self._memory:
            return self._memory[key]
        block = self.cache.load(k, l, lam, deflated) if self.cache else None
        if block is None:
            raw = build_block(k, l, lam) if not deflated else self.block(k, l, lam, False)
            block = deflate_trivial(raw) if deflated else raw
            if self.cache:
                self.cache.store(block)
            logger.info(f"Block {block.label()} ready: dimension {block.dimension}")
        self._memory[key] = block
        return block

    def complete_sectors(
        self, k: int, symmetric_only: bool | None = None
    ) -> list[TransferBlock]:
        """Deflated blocks of the complete decomposition: ℓ <= k-1 and (k, (k))."""
        if symmetric_only is None:
            symmetric_only = k >= SYMMETRIC_ONLY_FROM_K
        blocks = []
        for l in range(k):
            for lam in youngs(l):
                if symmetric_only and not lam.is_symmetric_row():
                    continue
                blocks.append(self.block(k, l, lam, deflated=True))
        blocks.append(self.block(k, k, YoungDiagram((k,)), deflated=True))
        return blocks

    def raw_sectors(self, k: int) -> list[TransferBlock]:
        """Undeflated blocks for every ℓ = 0..k+1 and λ ⊢ ℓ."""
        return [
            self.block(k, l, lam, deflated=False) for l in range(k + 2) for lam in youngs(l)
        ]

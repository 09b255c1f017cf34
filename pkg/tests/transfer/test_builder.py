"""Tests for the caching block builder."""
from petersen_flow.combinatorics.amplitudes import YoungDiagram
from petersen_flow.polynomials import TracePolynomial
from petersen_flow.transfer.builder import BlockBuilder
from petersen_flow.transfer.cache import BlockCache, TraceCache, read_document, write_document


def test_complete_sectors_k2(builder):
    """ℓ = 0, 1 blocks plus the symmetric ℓ = 2 block."""
    blocks = builder.complete_sectors(2)
    assert [(b.l, b.lam.label()) for b in blocks] == [(0, "()"), (1, "(1)"), (2, "(2)")]
    assert all(b.deflated for b in blocks)


def test_symmetric_only_filter(builder):
    """Dropping non-row diagrams removes (1,1) at k = 3."""
    full = builder.complete_sectors(3)
    sym = builder.complete_sectors(3, symmetric_only=True)
    assert len(full) == 5
    assert len(sym) == 4


def test_raw_sectors(builder):
    """Every ℓ = 0..k+1 and λ ⊢ ℓ, undeflated."""
    blocks = builder.raw_sectors(1)
    assert len(blocks) == 4
    assert not any(b.deflated for b in blocks)


def test_memory_cache_returns_same_object(builder):
    """Repeated requests hit the in-memory cache."""
    lam = YoungDiagram((1,))
    assert builder.block(2, 1, lam) is builder.block(2, 1, lam)


def test_disk_cache_round_trip(run_config):
    """A second builder loads blocks written by the first."""
    lam = YoungDiagram((2,))
    first = BlockBuilder(run_config).block(2, 2, lam)
    cache = BlockCache(run_config)
    assert cache.path(2, 2, lam, True).exists()
    assert cache.path(2, 2, lam, False).exists()
    second = BlockBuilder(run_config).block(2, 2, lam)
    assert second is not first
    assert second.entries == first.entries
    assert second.origin == first.origin


def test_corrupt_document_is_ignored(cache_dir):
    """Checksum mismatches read as a cache miss."""
    path = cache_dir / "doc.json"
    write_document(path, "block", {"a": 1})
    assert read_document(path, "block") == {"a": 1}
    assert read_document(path, "trace") is None
    path.write_text(path.read_text().replace('"a": 1', '"a": 2'))
    assert read_document(path, "block") is None
    path.write_text("{not json")
    assert read_document(path, "block") is None
    assert read_document(cache_dir / "missing.json", "block") is None


def test_trace_cache(run_config):
    """Trace polynomials are stored per key."""
    cache = TraceCache(run_config)
    trace = TracePolynomial(key=(1, 0, (), 2), coefficients=(4, -4, 1), checksum_points=(4,))
    cache.store(trace, deflated=True)
    loaded = cache.load(trace.key, deflated=True)
    assert loaded == trace
    assert loaded.checksum_points == (4,)
    assert cache.load(trace.key, deflated=False) is None

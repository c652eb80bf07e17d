"""
Parallel chunk encode/decode. Each chunk is one full codeword; results come back in
chunk order.
"""

import concurrent.futures
import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from rsxf.config import worker_count
from rsxf.field_arith import ELEM_DTYPE
from rsxf.rs_codec import DecodeFailure, DecodeResult, ReedSolomonCodec

logger = logging.getLogger("rsxf.pipeline")


def div_ceil(n: int, d: int) -> int:
    """The smallest integer k such that k*d >= n."""
    return (n // d) + (n % d != 0)


def split_message(symbols: np.ndarray, k: int) -> np.ndarray:
    """(chunks, k) view of the symbol stream, zero-padding the last chunk."""
    chunks = div_ceil(symbols.size, k)
    padded = np.zeros(chunks * k, dtype=ELEM_DTYPE)
    padded[: symbols.size] = symbols
    return padded.reshape(chunks, k)


def encode_chunks(codec: ReedSolomonCodec, messages: np.ndarray, workers: Optional[int] = None) -> np.ndarray:
    """Encode every row of ``messages`` (shape (chunks, k)); returns (chunks, n)."""
    chunks = messages.shape[0]
    out = np.zeros((chunks, codec.params.n), dtype=ELEM_DTYPE)
    if chunks == 0:
        return out
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers or worker_count()) as executor:
        for i, word in enumerate(executor.map(codec.encode, messages)):
            out[i] = word.symbols
    logger.info("encoded %d chunks with %r", chunks, codec)
    return out


def decode_chunks(
    codec: ReedSolomonCodec, words: Sequence[np.ndarray], workers: Optional[int] = None
) -> List[Union[DecodeResult, DecodeFailure]]:
    """Decode every received word; a failing chunk yields its DecodeFailure in place."""
    if len(words) == 0:
        return []
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers or worker_count()) as executor:
        results = list(executor.map(codec.decode, words))
    failed = sum(1 for r in results if not r.ok)
    if failed:
        logger.warning("%d of %d chunks failed to decode", failed, len(results))
    else:
        logger.info("decoded %d chunks", len(results))
    return results

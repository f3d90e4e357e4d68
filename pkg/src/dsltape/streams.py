"""Chunked append-only storage for the tape's data streams.

Streams are written strictly forward during recording and read strictly
backward during reverse evaluation.  Storage is a list of fixed-size chunks
(power-of-two entry counts) so appends never reallocate previously written
data; random access is a shift and a mask.
"""

from __future__ import annotations

from array import array

DEFAULT_CHUNK_ENTRIES = 1 << 16


def _check_chunk_size(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"chunk size must be a power of two >= 2, got {n}")
    return n


class IntStream:
    """Append-only stream of fixed-width unsigned integers."""

    __slots__ = ("chunks", "shift", "mask", "_chunk_entries", "_typecode", "_n")

    def __init__(self, typecode: str = "I", chunk_entries: int = DEFAULT_CHUNK_ENTRIES):
        self._chunk_entries = _check_chunk_size(chunk_entries)
        self.shift = self._chunk_entries.bit_length() - 1
        self.mask = self._chunk_entries - 1
        self._typecode = typecode
        self.chunks = [array(typecode)]
        self._n = 0

    def __len__(self) -> int:
        return self._n

    def append(self, value: int) -> None:
        chunk = self.chunks[-1]
        if len(chunk) == self._chunk_entries:
            chunk = array(self._typecode)
            self.chunks.append(chunk)
        chunk.append(value)
        self._n += 1

    def __getitem__(self, idx: int) -> int:
        return self.chunks[idx >> self.shift][idx & self.mask]

    def slice(self, start: int, n: int):
        return [self[i] for i in range(start, start + n)]

    def clear(self) -> None:
        self.chunks = [array(self._typecode)]
        self._n = 0

    @property
    def nbytes(self) -> int:
        return self._n * self.chunks[0].itemsize

    def tobytes(self) -> bytes:
        return b"".join(c.tobytes() for c in self.chunks)


class ByteStream:
    """Append-only byte stream holding variable-size encoded entries.

    Entry boundaries are the writers' business: codecs write
    self-delimiting payloads (fixed size, or with a trailing size/shape
    footer) so they can be read back from the end during the reverse sweep.
    Entries may span chunk boundaries.
    """

    __slots__ = ("chunks", "_chunk_bytes", "shift", "mask", "_n", "entries")

    def __init__(self, chunk_bytes: int = DEFAULT_CHUNK_ENTRIES):
        self._chunk_bytes = _check_chunk_size(chunk_bytes)
        self.shift = self._chunk_bytes.bit_length() - 1
        self.mask = self._chunk_bytes - 1
        self.chunks = [bytearray()]
        self._n = 0
        self.entries = 0

    def __len__(self) -> int:
        return self._n

    @property
    def nbytes(self) -> int:
        return self._n

    def write(self, data: bytes) -> None:
        """Append raw bytes (one call does not have to be one entry)."""
        room = self._chunk_bytes - len(self.chunks[-1])
        if len(data) <= room:
            self.chunks[-1] += data
        else:
            self.chunks[-1] += data[:room]
            pos = room
            while pos < len(data):
                self.chunks.append(bytearray(data[pos:pos + self._chunk_bytes]))
                pos += self._chunk_bytes
        self._n += len(data)

    def read(self, pos: int, n: int) -> bytes:
        """Read n bytes starting at absolute position pos."""
        if pos < 0 or pos + n > self._n:
            raise IndexError(f"byte stream read [{pos}, {pos + n}) out of range 0..{self._n}")
        ci = pos >> self.shift
        off = pos & self.mask
        chunk = self.chunks[ci]
        if off + n <= len(chunk):
            return bytes(chunk[off:off + n])
        parts = [chunk[off:]]
        got = len(parts[0])
        while got < n:
            ci += 1
            take = self.chunks[ci][: n - got]
            parts.append(take)
            got += len(take)
        return b"".join(parts)

    def clear(self) -> None:
        self.chunks = [bytearray()]
        self._n = 0
        self.entries = 0

    def tobytes(self) -> bytes:
        return b"".join(bytes(c) for c in self.chunks)

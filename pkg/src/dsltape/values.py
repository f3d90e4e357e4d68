"""Value bindings for tape-managed object types.

A binding tells the tape how to store one kind of underlying value: how to
serialize it to the shared byte streams (bit-exact round trip, readable
backward during the reverse sweep), how to build a zero adjoint of matching
shape, how to accumulate adjoint contributions, and what alignment the type
wants.  The scalar case is built into the tape; everything else goes through
a binding registered under a name that generated code refers to.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_U32 = struct.Struct("<I")
_U8 = struct.Struct("<B")


class NdArrayF64Codec:
    """float64 ndarray entries: [raw data][u32 dim_i x ndim][u8 ndim].

    The footer makes entries readable from the end of the stream without
    outside shape knowledge.
    """

    fixed_size = None

    def nbytes(self, value) -> int:
        return 8 * value.size + 4 * value.ndim + 1

    def write(self, stream, value) -> None:
        a = np.ascontiguousarray(value, dtype=np.float64)
        stream.write(a.tobytes())
        for d in a.shape:
            stream.write(_U32.pack(d))
        stream.write(_U8.pack(a.ndim))
        stream.entries += 1

    def read_back(self, stream, pos):
        pos -= 1
        ndim = stream.read(pos, 1)[0]
        pos -= 4 * ndim
        raw = stream.read(pos, 4 * ndim)
        shape = tuple(_U32.unpack_from(raw, 4 * i)[0] for i in range(ndim))
        n = 1
        for d in shape:
            n *= d
        pos -= 8 * n
        data = stream.read(pos, 8 * n)
        return pos, np.frombuffer(data, dtype=np.float64).reshape(shape).copy()


class PackF32Codec:
    """Fixed-width lane packs of float32 (stored as Python float tuples)."""

    def __init__(self, lanes: int):
        self.lanes = lanes
        self._s = struct.Struct(f"<{lanes}f")
        self.fixed_size = self._s.size

    def nbytes(self, value) -> int:
        return self.fixed_size

    def write(self, stream, value) -> None:
        stream.write(self._s.pack(*value))
        stream.entries += 1

    def read_back(self, stream, pos):
        pos -= self.fixed_size
        return pos, self._s.unpack(stream.read(pos, self.fixed_size))


@dataclass
class ValueBinding:
    """How the tape stores, zeroes, and accumulates one value type."""

    name: str
    codec: object
    zero_like: Callable
    iadd: Callable  # (acc, delta) -> acc, may mutate acc
    matches: Callable  # value -> bool, for passive overload dispatch
    alignment: int = 8
    on_input: Callable = field(default=lambda v: v)  # defensive copy / precision clamp


def _np_iadd(acc, delta):
    acc += delta
    return acc


_round4 = struct.Struct("<4f")


def _pack4_input(v):
    vals = tuple(float(x) for x in v)
    if len(vals) != 4:
        raise ValueError(f"pack4 values have 4 lanes, got {len(vals)}")
    return _round4.unpack(_round4.pack(*vals))


def _pack4_iadd(acc, delta):
    return (acc[0] + delta[0], acc[1] + delta[1], acc[2] + delta[2], acc[3] + delta[3])


BUILTIN_BINDINGS = {
    "matrix_f64": ValueBinding(
        name="matrix_f64",
        codec=NdArrayF64Codec(),
        zero_like=np.zeros_like,
        iadd=_np_iadd,
        matches=lambda v: isinstance(v, np.ndarray) and v.ndim == 2,
        alignment=8,
        on_input=lambda v: np.array(v, dtype=np.float64, copy=True, order="C"),
    ),
    "vector_f64": ValueBinding(
        name="vector_f64",
        codec=NdArrayF64Codec(),
        zero_like=np.zeros_like,
        iadd=_np_iadd,
        matches=lambda v: isinstance(v, np.ndarray) and v.ndim == 1,
        alignment=8,
        on_input=lambda v: np.array(v, dtype=np.float64, copy=True, order="C"),
    ),
    "array_f64": ValueBinding(
        name="array_f64",
        codec=NdArrayF64Codec(),
        zero_like=np.zeros_like,
        iadd=_np_iadd,
        matches=lambda v: isinstance(v, np.ndarray),
        alignment=8,
        on_input=lambda v: np.array(v, dtype=np.float64, copy=True, order="C"),
    ),
    "float32x4": ValueBinding(
        name="float32x4",
        codec=PackF32Codec(4),
        zero_like=lambda v: (0.0, 0.0, 0.0, 0.0),
        iadd=_pack4_iadd,
        matches=lambda v: isinstance(v, (tuple, list)) and len(v) == 4,
        alignment=16,
        on_input=_pack4_input,
    ),
}

"""Minimal RIFF/WAVE reader and writer for mono 16-bit PCM stems.

Stems are stored uncompressed, one file per track, so the codec is
deliberately strict: PCM format tag, one channel, 16 bits.  The reader
walks the chunk list defensively (every declared size is checked against
the bytes actually present) so arbitrary input yields WavFormatError, never
a crash.
"""

from __future__ import annotations

import struct

import numpy as np

from .model import SlaxError

_FMT_PCM = 1
_HEADER = struct.Struct("<4sI4s")
_CHUNK = struct.Struct("<4sI")


class WavFormatError(SlaxError):
    """The bytes are not a mono 16-bit PCM RIFF/WAVE stream."""


def encode_wav(samples: np.ndarray, sample_rate: int) -> bytes:
    """Serialize int16 samples as a standard 44-byte-header WAV file."""
    if sample_rate <= 0:
        raise ValueError("sample rate must be positive")
    data = np.asarray(samples, dtype="<i2").tobytes()
    fmt = struct.pack("<HHIIHH", _FMT_PCM, 1, sample_rate, sample_rate * 2, 2, 16)
    out = bytearray()
    out += _HEADER.pack(b"RIFF", 4 + 8 + len(fmt) + 8 + len(data), b"WAVE")
    out += _CHUNK.pack(b"fmt ", len(fmt)) + fmt
    out += _CHUNK.pack(b"data", len(data)) + data
    return bytes(out)


def decode_wav(data: bytes) -> tuple[int, np.ndarray]:
    """Parse WAV bytes into (sample_rate, int16 sample array).

    Accepts any chunk ordering and skips unknown chunks (LIST, cue, ...)
    but requires a PCM mono 16-bit fmt chunk and a data chunk.
    """
    if len(data) < _HEADER.size:
        raise WavFormatError("too short for a RIFF header")
    riff, riff_size, wave = _HEADER.unpack_from(data, 0)
    if riff != b"RIFF" or wave != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE stream")
    if riff_size + 8 > len(data):
        raise WavFormatError("RIFF size {} exceeds file size {}".format(riff_size + 8, len(data)))

    sample_rate = None
    samples = None
    offset = _HEADER.size
    while offset < len(data):
        if offset + _CHUNK.size > len(data):
            raise WavFormatError("truncated chunk header at offset {}".format(offset))
        tag, size = _CHUNK.unpack_from(data, offset)
        offset += _CHUNK.size
        if offset + size > len(data):
            raise WavFormatError("chunk {!r} overruns the file".format(tag))
        body = data[offset:offset + size]
        offset += size + (size & 1)  # chunks are word-aligned
        if tag == b"fmt ":
            if size < 16:
                raise WavFormatError("fmt chunk too short")
            fmt_tag, channels, rate, _, _, bits = struct.unpack_from("<HHIIHH", body, 0)
            if fmt_tag != _FMT_PCM:
                raise WavFormatError("unsupported format tag {}".format(fmt_tag))
            if channels != 1:
                raise WavFormatError("expected mono, got {} channels".format(channels))
            if bits != 16:
                raise WavFormatError("expected 16-bit samples, got {}".format(bits))
            if rate <= 0:
                raise WavFormatError("sample rate must be positive")
            sample_rate = rate
        elif tag == b"data":
            if size % 2:
                raise WavFormatError("data chunk has an odd byte count")
            samples = np.frombuffer(body, dtype="<i2")
    if sample_rate is None:
        raise WavFormatError("missing fmt chunk")
    if samples is None:
        raise WavFormatError("missing data chunk")
    return sample_rate, samples

"""Reader/writer for the TNSR binary tensor format.

Layout (all little-endian)::

    b"TNSR"  u32 version (=1)  u32 order d  d x u64 dims  prod(dims) x f64

Values are stored first-index-fastest (Fortran order).
"""
import struct

import numpy as np

from .exceptions import ShapeError

MAGIC = b"TNSR"
VERSION = 1


class TnsrFormatError(ShapeError):
    pass


def to_bytes(X):
    X = np.asarray(X, dtype=np.float64)
    header = MAGIC + struct.pack("<II", VERSION, X.ndim)
    header += struct.pack(f"<{X.ndim}Q", *X.shape)
    return header + X.astype("<f8").ravel(order="F").tobytes()


def from_bytes(buf):
    if len(buf) < 12 or buf[:4] != MAGIC:
        raise TnsrFormatError("not a TNSR file (bad magic)")
    version, order = struct.unpack_from("<II", buf, 4)
    if version != VERSION:
        raise TnsrFormatError(f"unsupported TNSR version {version}")
    offset = 12 + 8 * order
    if len(buf) < offset:
        raise TnsrFormatError("truncated TNSR header")
    shape = struct.unpack_from(f"<{order}Q", buf, 12)
    count = int(np.prod(shape, dtype=np.int64))
    if len(buf) != offset + 8 * count:
        raise TnsrFormatError(f"payload holds {len(buf) - offset} bytes, "
                              f"shape {shape} needs {8 * count}")
    data = np.frombuffer(buf, dtype="<f8", count=count, offset=offset)
    return data.astype(np.float64).reshape(shape, order="F")


def write(path, X):
    with open(path, "wb") as f:
        f.write(to_bytes(X))


def read(path):
    with open(path, "rb") as f:
        return from_bytes(f.read())


MANIFEST = "manifest.json"


def write_factorization(directory, F, method=None):
    """Store ``F`` as ``core.tns``, ``factor_<mode>.tns`` and a JSON manifest.

    Factor file names and ``mode`` entries are 1-based; ``indices`` are
    0-based columns of the corresponding mode unfolding.
    """
    import json
    import os

    os.makedirs(directory, exist_ok=True)
    write(os.path.join(directory, "core.tns"), F.core)
    entries = []
    for mode, f in enumerate(F.factors):
        name = f"factor_{mode + 1}.tns"
        write(os.path.join(directory, name), f.matrix)
        entry = {"mode": mode + 1, "kind": f.kind, "file": name}
        if f.indices is not None:
            entry["indices"] = [int(i) for i in f.indices]
        entries.append(entry)
    manifest = {"version": VERSION, "method": method,
                "source_shape": [int(n) for n in F.source_shape],
                "ranks": [int(r) for r in F.ranks], "core": "core.tns", "factors": entries}
    with open(os.path.join(directory, MANIFEST), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest


def read_factorization(directory):
    import json
    import os

    from .decomp import ModeFactor, TuckerFactorization

    with open(os.path.join(directory, MANIFEST)) as fh:
        manifest = json.load(fh)
    factors = []
    for entry in sorted(manifest["factors"], key=lambda e: e["mode"]):
        indices = entry.get("indices")
        factors.append(ModeFactor(entry["kind"], read(os.path.join(directory, entry["file"])),
                                  None if indices is None else np.asarray(indices)))
    return TuckerFactorization(core=read(os.path.join(directory, manifest["core"])),
                               factors=factors,
                               source_shape=tuple(manifest["source_shape"]))

#!/usr/bin/env python3
"""Rewrites data/catalog/DIGESTS (FNV-1a 64-bit over each .dts file's bytes)."""
import pathlib

catalog = pathlib.Path(__file__).resolve().parent.parent / "data" / "catalog"


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


lines = [f"{p.name[:-4]} {fnv1a64(p.read_bytes()):016x}" for p in sorted(catalog.glob("*.dts"))]
(catalog / "DIGESTS").write_text("\n".join(lines) + "\n")
print("\n".join(lines))

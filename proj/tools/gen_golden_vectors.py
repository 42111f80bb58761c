#!/usr/bin/env python3
"""Writes tests/data/golden_vectors.txt from a hashlib-only reference.

Shares no code with the C++ library. One vector per line, fields separated
by single spaces, "-" for an empty list:

  encode_message  <tag> <idcom> <c> <slot> <encoding>
  commitment_hash <tx|-> <r> <idcom> <slot> <digest>
  merkle_root     <leaf,leaf,...|-> <root>
  vdf             <T> <interval> <x> <y> <checkpoint,...>
  permutation     <seed> <m> <mapping,...|->
"""
import hashlib
import struct
import sys
from pathlib import Path


def H(b: bytes) -> bytes:
    return hashlib.sha256(b).digest()


def be64(v: int) -> bytes:
    return struct.pack(">Q", v)


def label(s: str) -> bytes:
    return H(b"golden/" + s.encode())


def encode_message(tag, idcom, c, slot):
    return bytes([tag]) + idcom + c + be64(slot)


def commitment_hash(tx, r, idcom, slot):
    return H(be64(len(tx)) + tx + r + idcom + be64(slot))


def merkle_root(leaves):
    if not leaves:
        return H(b"\x00")
    level = [H(b"\x00" + x) for x in leaves]
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            nxt.append(H(b"\x01" + level[i] + level[i + 1]))
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def vdf(x, T, interval):
    y, proof = x, []
    for step in range(1, T + 1):
        y = H(y)
        if step % interval == 0 or step == T:
            proof.append(y)
    return y, proof


def words(seed):
    k = 0
    while True:
        block = H(seed + be64(k))
        k += 1
        for off in range(0, 32, 8):
            yield int.from_bytes(block[off:off + 8], "big")


def permutation(seed, m):
    arr = list(range(m))
    stream = words(seed)
    for i in range(m - 1, 0, -1):
        bound = i + 1
        limit = (2**64 // bound) * bound
        while True:
            w = next(stream)
            if w < limit:
                break
        j = w % bound
        arr[i], arr[j] = arr[j], arr[i]
    return arr


def hx(b):
    return b.hex()


def main(out: Path):
    lines = []
    zero = bytes(32)
    for tag, idc, c, slot in [
        (1, zero, zero, 0),
        (2, zero, zero, 0),
        (1, label("id-a"), label("c-a"), 1),
        (2, label("id-b"), label("c-b"), 0x0102030405060708),
        (1, bytes([0xFF] * 32), bytes([0xFF] * 32), 2**64 - 1),
    ]:
        lines.append(f"encode_message {tag} {hx(idc)} {hx(c)} {slot} {hx(encode_message(tag, idc, c, slot))}")

    for tx, r, idc, slot in [
        (b"", zero, zero, 0),
        (b"transfer 10", label("r1"), label("id1"), 5),
        (b"ab", label("r2"), label("id2"), 7),
        (b"a", b"b" + label("r2")[1:], label("id2"), 7),
        (bytes(range(256)) * 3, label("r3"), label("id3"), 2**40),
    ]:
        lines.append(f"commitment_hash {hx(tx) or '-'} {hx(r)} {hx(idc)} {slot} {hx(commitment_hash(tx, r, idc, slot))}")

    for n in [0, 1, 2, 3, 4, 5, 7, 8, 13]:
        leaves = [label(f"leaf{i}")[: (i % 5) * 7 + 1] for i in range(n)]
        field = ",".join(hx(x) for x in leaves) if leaves else "-"
        lines.append(f"merkle_root {field} {hx(merkle_root(leaves))}")

    for T, interval in [(1, 1), (2, 1), (17, 4), (64, 4), (100, 7), (1000, 62)]:
        x = label(f"vdf{T}")
        y, proof = vdf(x, T, interval)
        lines.append(f"vdf {T} {interval} {hx(x)} {hx(y)} {','.join(hx(p) for p in proof)}")

    for i, m in enumerate([0, 1, 2, 3, 4, 5, 8, 8, 16, 31, 64]):
        seed = label(f"perm{i}")
        p = permutation(seed, m)
        lines.append(f"permutation {hx(seed)} {m} {','.join(map(str, p)) if p else '-'}")

    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests/data/golden_vectors.txt"
    main(target)

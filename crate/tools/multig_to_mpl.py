#!/usr/bin/env python3
"""Convert `multig -T` output into multipole text records separated by blank lines."""
import sys

records = []
for line in sys.stdin:
    tok = line.split()
    if not tok:
        continue
    n, m = int(tok[0]), int(tok[1])
    rest = list(map(int, tok[2:]))
    assert len(rest) == 3 * m
    lines = [f"{n} 0 0"]
    for i in range(m):
        u, v, mult = rest[3 * i: 3 * i + 3]
        lines.extend(f"{u} {v}" for _ in range(mult))
    records.append("\n".join(lines))
sys.stdout.write("\n\n".join(records) + ("\n" if records else ""))

"""Regenerate src/glfiber/data/moduli_v1.json (canonical extension moduli)."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from glfiber.ffmatrix.field import MAX_Q, MODULI_SCHEMA, minimal_modulus  # noqa: E402


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def main():
    moduli = {}
    for p in primes_upto(int(MAX_Q**0.5)):
        k = 2
        while p**k <= MAX_Q:
            moduli[f"{p}^{k}"] = list(minimal_modulus(p, k))
            k += 1
    out = Path(__file__).resolve().parents[1] / "src/glfiber/data/moduli_v1.json"
    rows = ",\n".join(f'  "{key}": {json.dumps(val)}' for key, val in moduli.items())
    out.write_text(f'{{"schema": "{MODULI_SCHEMA}",\n "moduli": {{\n{rows}\n }}\n}}\n')
    print(f"wrote {len(moduli)} moduli to {out}")


if __name__ == "__main__":
    main()

"""Picks a deterministic census sample with layeredness flags.

    VEERING_PATH=/path/to/veering python3 fixtures/oracles/census_sample.py
"""

import os

CENSUS = os.path.join(os.environ.get("VEERING_PATH", "/tmp/veering-0.4"), "veering", "data",
                      "veering_census_with_data.txt")
OUT = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "census_sample.txt")


def main():
    layered, other = [], []
    with open(CENSUS) as f:
        for line in f:
            parts = line.split()
            code, flag = parts[0], parts[1]
            ntet = ord(code[0]) - ord("a")
            if ntet > 7:
                continue
            (layered if flag == "F0" else other).append(code)
    pick = layered[::max(1, len(layered) // 35)][:35] + other[::max(1, len(other) // 25)][:25]
    with open(OUT, "w") as f:
        f.write("# census code, layered flag from the census (F0 = layered)\n")
        for code in pick:
            f.write("%s\t%s\n" % (code, "layered" if code in layered else "nonlayered"))
    print(len(layered), len(other), len(pick))


if __name__ == "__main__":
    main()

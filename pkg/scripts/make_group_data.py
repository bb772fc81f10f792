"""Write generator files for the primitive groups used by the Theorem B list.

Each file holds one generator per line in cycle notation, preceded by '# degree order' header.
Run from the repository root: python3 scripts/make_group_data.py
"""
from pathlib import Path

from snmod.perm_groups import Permutation, PermGroup

OUT = Path(__file__).resolve().parents[1] / "src" / "snmod" / "data" / "groups"


# GF(9) = GF(3)[w] with w^2 = w + 1; w has order 8
def gf9():
    elems = [(a, b) for a in range(3) for b in range(3)]   # a + b w

    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    def mul(x, y):
        a, b = x
        c, d = y
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = w + 1
        return ((a * c + b * d) % 3, (a * d + b * c + b * d) % 3)

    return elems, add, mul


def projective_line_group(q_elems, add, mul, maps, zero, one):
    """Permutations of the projective line (field elements + infinity) from Mobius-type maps."""
    pts = list(q_elems) + ["inf"]
    index = {x: k for k, x in enumerate(pts)}
    inv = {}
    for x in q_elems:
        for y in q_elems:
            if mul(x, y) == one:
                inv[x] = y
    perms = []
    for f in maps:
        img = [index[f(x, inv)] for x in pts]
        perms.append(Permutation(tuple(img)))
    return perms


def line_gf9():
    elems, add, mul = gf9()
    zero, one, w = (0, 0), (1, 0), (0, 1)

    def frob(x):
        return mul(mul(x, x), x)

    def t(x, inv):
        return "inf" if x == "inf" else add(x, one)

    def scale(c):
        def f(x, inv):
            return "inf" if x == "inf" else mul(c, x)
        return f

    def neg_inv(x, inv):            # x -> -1/x
        if x == "inf":
            return zero
        if x == zero:
            return "inf"
        y = inv[x]
        return ((-y[0]) % 3, (-y[1]) % 3)

    def recip(x, inv):              # x -> 1/x
        if x == "inf":
            return zero
        return "inf" if x == zero else inv[x]

    def fr(x, inv):
        return "inf" if x == "inf" else frob(x)

    def w_frob(x, inv):             # x -> w x^3, non-square twist of the field automorphism
        return "inf" if x == "inf" else mul(w, frob(x))

    w2 = mul(w, w)
    gens = lambda fs: projective_line_group(elems, add, mul, fs, zero, one)
    return {
        "psl2_9": gens([t, scale(w2), neg_inv]),
        "s6_on_10": gens([t, scale(w2), neg_inv, fr]),
        "m10": gens([t, scale(w2), neg_inv, w_frob]),
        "pgl2_9": gens([t, scale(w), recip]),
        "pgammal2_9": gens([t, scale(w), recip, fr]),
    }


def line_gf5():
    elems = list(range(5))
    add = lambda x, y: (x + y) % 5
    mul = lambda x, y: (x * y) % 5

    def t(x, inv):
        return "inf" if x == "inf" else (x + 1) % 5

    def two(x, inv):
        return "inf" if x == "inf" else (2 * x) % 5

    def neg_inv(x, inv):
        if x == "inf":
            return 0
        return "inf" if x == 0 else (-inv[x]) % 5

    return {"pgl2_5": projective_line_group(elems, add, mul, [t, two, neg_inv], 0, 1)}


def agl1_5():
    return {"agl1_5": [Permutation(tuple((x + 1) % 5 for x in range(5))),
                       Permutation(tuple((2 * x) % 5 for x in range(5)))]}


def m12():
    n = 12
    return {"m12": [
        Permutation.from_cycles(n, [tuple(range(1, 12))]),
        Permutation.from_cycles(n, [(3, 7, 11, 8), (4, 10, 5, 6)]),
        Permutation.from_cycles(n, [(1, 12), (2, 11), (3, 6), (4, 8), (5, 9), (7, 10)]),
    ]}


EXPECTED = {"agl1_5": 20, "pgl2_5": 120, "psl2_9": 360, "s6_on_10": 720, "m10": 720,
            "pgl2_9": 720, "pgammal2_9": 1440, "m12": 95040}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    groups = {}
    for build in (agl1_5, line_gf5, line_gf9, m12):
        groups.update(build())
    for name, gens in groups.items():
        G = PermGroup(gens[0].n, gens, name=name)
        if G.order != EXPECTED[name] or not G.is_primitive():
            raise SystemExit(f"{name}: order {G.order}, expected {EXPECTED[name]}")
        lines = [f"# degree {G.n} order {G.order}"] + [str(g) for g in gens]
        (OUT / f"{name}.txt").write_text("\n".join(lines) + "\n")
        print(name, G.n, G.order)


if __name__ == "__main__":
    main()

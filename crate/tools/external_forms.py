#!/usr/bin/env python3
"""Generate rational weight-2 cusp-form bases for Gamma_Delta(N) with PARI/GP.

The output uses the forms-file format read by `xdelta` (see README). The space
S_2(Gamma_Delta(N)) is the sum of S_2(N, chi) over the even Dirichlet
characters chi mod N that are trivial on Delta; each cyclotomic-valued basis
form is split into its rational coordinate forms, then the span is reduced.

When --match FORMS_FILE is given, the rational basis is replaced by the unique
combinations that agree with the leading coefficients of the file's forms, so published
expansions can be extended to higher precision.

Usage: external_forms.py N r1,r2,... PRECISION [--match FORMS_FILE] > out.forms
"""
import sys
from fractions import Fraction

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)


def rational_basis(level, delta, prec):
    G = pari.znstar(level, 1)
    chars = []
    cyc = [int(c) for c in pari("(G)->G.cyc")(G)]
    # enumerate all characters as exponent vectors on the generators
    def rec(i, cur):
        if i == len(cyc):
            chars.append(list(cur))
            return
        for e in range(cyc[i]):
            rec(i + 1, cur + [e])
    rec(0, [])
    seen_orbits = set()
    forms = []
    for chi in chars:
        chiv = pari.vector(len(chi), chi)
        if any(pari.chareval(G, chiv, d) != 0 for d in delta):
            continue
        if pari.zncharisodd(G, chiv):
            continue
        orbit = int(pari.charorder(G, chiv))
        # one representative per Galois orbit
        key = tuple(sorted(
            tuple(int(x) for x in pari.charpow(G, chiv, k))
            for k in range(1, orbit + 1) if pari.gcd(k, orbit) == 1))
        if key in seen_orbits:
            continue
        seen_orbits.add(key)
        mf = pari.mfinit([level, 2, [G, chiv]], 1)
        if int(pari.mfdim(mf)) == 0:
            continue
        for f in pari.mfbasis(mf):
            coefs = pari.mfcoefs(f, prec)
            deg = 1
            comps = None
            for c in coefs:
                if c.type() == 't_POLMOD':
                    deg = max(deg, int(pari.poldegree(c.mod())))
            comps = [[Fraction(0)] * (prec + 1) for _ in range(deg)]
            for n, c in enumerate(coefs):
                if c.type() == 't_POLMOD':
                    lift = c.lift()
                    for j in range(deg):
                        comps[j][n] = Fraction(str(pari.polcoef(lift, j)))
                else:
                    comps[0][n] = Fraction(str(c))
            forms.extend(comps)
    return echelon_span(forms)


def echelon_span(rows):
    rows = [list(r) for r in rows]
    out = []
    col = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = 1 / piv[col]
        piv = [x * inv for x in piv]
        rows = [[a - r[col] * b for a, b in zip(r, piv)] for r in rows]
        out = [[a - o[col] * b for a, b in zip(o, piv)] for o in out]
        out.append(piv)
        rows = [r for r in rows if any(r)]
    return out


def solve_match(basis, target):
    """Find rational c with sum c_i basis_i == target on target's support."""
    n = len(target)
    mat = [[b[k] for b in basis] + [target[k]] for k in range(n)]
    # reduced row echelon on the augmented system
    rows = mat
    m = len(basis)
    pivots = []
    r = 0
    for c in range(m + 1):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        if c == m:
            raise SystemExit("published expansion is not in the computed space")
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if len(pivots) < m:
        raise SystemExit("published expansion does not determine a unique form")
    return [rows[i][m] for i in range(m)]


def fmt(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def main():
    level = int(sys.argv[1])
    gens = [int(x) for x in sys.argv[2].split(",")]
    prec = int(sys.argv[3])
    delta = sorted({pow(g, k, level) * s % level for g in gens for k in range(level) for s in (1, -1)} | {1, level - 1})
    # closure under products
    changed = True
    while changed:
        changed = False
        for a in list(delta):
            for b in list(delta):
                c = a * b % level
                if c not in delta:
                    delta.append(c)
                    changed = True
    delta = sorted(set(delta))
    basis = rational_basis(level, delta, prec)
    source = "PARI/GP mfinit over the even characters trivial on delta, rational coordinates, echelonized"
    if "--match" in sys.argv:
        path = sys.argv[sys.argv.index("--match") + 1]
        targets = []
        for line in open(path):
            if line.startswith("form "):
                targets.append([Fraction(t) for t in line.split()[1:]])
        if len(targets) != len(basis):
            raise SystemExit(f"expected {len(basis)} published forms, got {len(targets)}")
        matched = []
        for t in targets:
            c = solve_match(basis, t)
            matched.append([sum(ci * b[k] for ci, b in zip(c, basis)) for k in range(prec + 1)])
        basis = matched
        source += "; recombined to agree with the published leading coefficients"
    print(f"# source: {source}")
    print(f"# pari version: {pari.version()}")
    print(f"level {level}")
    print("delta " + " ".join(map(str, delta)))
    print(f"genus {len(basis)}")
    print(f"precision {prec}")
    for b in basis:
        print("form " + " ".join(fmt(x) for x in b))


if __name__ == "__main__":
    main()

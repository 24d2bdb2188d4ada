"""Writes expectations.json from closed formulas and hand-derived curve shapes.

Nothing here calls the Rust engine. Run from this directory:

    python3 make_expectations.py > expectations.json
"""

import json
from fractions import Fraction as F


def fq(x):
    x = F(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cls(lam, deltas):
    """Text of lam*lambda + sum c_i delta_i; `deltas` is a list of (name, coeff)."""
    out = ""
    for c, name in [(F(lam), "lambda")] + [(F(c), n) for n, c in deltas]:
        if c == 0:
            continue
        a = abs(c)
        if out:
            out += " - " if c < 0 else " + "
        elif c < 0:
            out += "-"
        if a != 1:
            out += fq(a) + " "
        out += name
    return out or "0"


def index_line(s, a):
    return f"weight_sum={fq(s)} average={fq(a)} mu={fq(a - s)}"


def curve(genera, nodes, tacnodes, cusps=0, chain="none"):
    g = ",".join(str(x) for x in sorted(genera))
    return f"genera={g} nodes={nodes} tacnodes={tacnodes} cusps={cusps} chain={chain}"


def tac(sign):
    return ",".join(str(sign * k) for k in (4, 3, 2))


E = {}

# Open rosaries: degree-2 and degree-3 sums and averages split by the parity of r.
for g, r in [(5, 2), (6, 2), (6, 3), (7, 4), (8, 5)]:
    if r % 2 == 0:
        E[f"hs-o-ros/g{g}-r{r}/m2"] = index_line(28 * g - 28, 28 * g - 28)
        E[f"hs-o-ros/g{g}-r{r}/m3"] = index_line(66 * g - 66, 66 * g - 66)
    else:
        E[f"hs-o-ros/g{g}-r{r}/m2"] = index_line(28 * g - 41, 28 * g - 42)
        E[f"hs-o-ros/g{g}-r{r}/m3"] = index_line(66 * g - 97, 66 * g - 99)
for r in [2, 3, 4]:
    E[f"hs-o-ros/r{r}/initial2"] = f"count={(9 * r * r - 5 * r) // 2} missing=none extra=none"

# Closed rosaries of even length. The engine also finds x0*x4, which the displayed list omits;
# the displayed count already includes it.
for r in [4, 6, 8]:
    E[f"hss-c-ros/r{r}/m2"] = f"mu=0 standard={7 * r}"
    E[f"hss-c-ros/r{r}/m3"] = f"mu=0 standard={11 * r}"
    E[f"hss-c-ros/r{r}/initial2"] = f"count={(9 * r * r - 11 * r) // 2} missing=none extra=x0*x4"


def broken_bead_initial_count(r):
    top = 3 * r - 1
    n = 1 + (top - 2) + (3 * r - 4 - 2) + 1 + (top - 3)
    for j in range(1, r - 1):
        t = 3 * j
        n += (top - t - 1) + 2 * (top - t - 3)
    return n


# Closed rosary with one broken bead, odd r, genus r + 1.
for r in [3, 5, 7]:
    E[f"hs-cr-1br/r{r}/m2"] = index_line(28 * r - 13, 28 * r - 14)
    E[f"hs-cr-1br/r{r}/m3"] = index_line(66 * r - 31, 66 * r - 33)
    E[f"hs-cr-1br/r{r}/extrapolate"] = "mu=" + ",".join(str(1 - m) for m in range(2, 7))
    E[f"hs-cr-1br/r{r}/chow-sign"] = "0"
E["hs-cr-1br/r3/initial2"] = f"count={broken_bead_initial_count(3)} missing=none extra=none"

# Degree-4 index: zero on closed rosaries, 1 - m on the broken bead.
E["interp/c-ros-r4"] = "mu4=0 extrapolated=0"
E["interp/c-ros-r6"] = "mu4=0 extrapolated=0"
E["interp/cr-1br-r3"] = "mu4=-3 extrapolated=-3"
E["interp/cr-1br-r5"] = "mu4=-3 extrapolated=-3"

# Chow certificates.
E["chow/cusp"] = "lower_bound=25 threshold=24 verdict=unstable"
E["chow/tacnode-s3"] = "lower_bound=18 threshold=16 verdict=unstable"
E["chow/multiple-2"] = "lower_bound=18 threshold=16 verdict=unstable"
for g in range(4, 21):
    lb = 36 + 16 * g - 40
    th = F(16 * g) - F(40, 3)
    assert lb > th
    E[f"chow/tail-g{g:02}"] = f"lower_bound={lb} threshold={fq(th)} verdict=unstable"


# Basins. Open rosary of length r + 1: junction a_i has sign (-1)^(i-1); the ends are nodes.
def open_weights(r, sign=1, prefix=""):
    parts = []
    for i in range(r + 2):
        s = sign * (-1) ** (i - 1 if i > 0 else 1)
        if i in (0, r + 1):
            parts.append(f"{prefix}a{i}={s}")
        else:
            parts.append(f"{prefix}a{i}={tac(s)}")
    return parts


for g, r in [(5, 1), (6, 2), (6, 3), (7, 4)]:
    name = f"basin/o-ros-g{g}-r{r}"
    d = g - r - 1
    E[f"{name}/weights"] = " ".join(open_weights(r))
    if r % 2 == 0:
        k = r // 2
        E[f"{name}/generic"] = curve([1] * k + [d], 1, k, chain=f"weak-elliptic-chain length={k}")
    else:
        k = (r + 1) // 2
        E[f"{name}/generic"] = curve([1] * k + [d], 2, k - 1, chain=f"elliptic-chain length={k}")
E["basin/o-ros-g6-r2/weights-inverse"] = " ".join(open_weights(2, -1))
E["basin/o-ros-g6-r2/generic-inverse"] = curve([1, 3], 1, 1, chain="weak-elliptic-chain length=1")
E["basin/o-ros-g6-r3/weights-inverse"] = " ".join(open_weights(3, -1))
# A chain of length (r-1)/2 meeting the rest in two tacnodes is not an elliptic chain.
E["basin/o-ros-g6-r3/generic-inverse"] = curve([1, 2], 0, 2)

for r in [4, 6]:
    E[f"basin/c-ros-r{r}/weights"] = " ".join(f"a{i}={tac((-1) ** (i - 1))}" for i in range(1, r + 1))
    E[f"basin/c-ros-r{r}/generic"] = curve([1] * (r // 2), 0, r // 2,
                                           chain=f"closed-weak-elliptic-chain length={r // 2}")
for r in [3, 5]:
    # Tacnode parameters listed as (c0, c1, c2).
    parts = ["a0=-2"] + [f"a{i}={tac((-1) ** (i - 1))}" for i in range(1, r + 1)]
    E[f"basin/cr-1br-r{r}/weights"] = " ".join(parts)
    k = (r + 1) // 2
    E[f"basin/cr-1br-r{r}/generic"] = curve([1] * k, 1, k - 1, chain=f"closed-elliptic-chain length={k}")

E["basin/tacnodal-tail-g5/weights"] = "tacnode=-4,-3,-2 node=1 cusp=4,6"
E["basin/tacnodal-tail-g5/generic"] = curve([1, 3], 0, 1)

# Two rosaries of length two on a genus-4 remainder, g = 8.
E["basin/multi-g8-l2-l2-e1-1/weights"] = " ".join(open_weights(1, 1, "b0.") + open_weights(1, 1, "b1."))
E["basin/multi-g8-l2-l2-e1-1/generic"] = curve([1, 1, 4], 4, 0, chain="elliptic-chain length=1")
E["basin/multi-g8-l2-l2-e1-m1/weights"] = " ".join(open_weights(1, 1, "b0.") + open_weights(1, -1, "b1."))
E["basin/multi-g8-l2-l2-e1-m1/generic"] = curve([1, 4], 2, 1, chain="elliptic-chain length=1")


# Divisor classes. lambda_n = (6n^2 - 6n + 1) lambda - C(n,2) delta for n >= 2.
def lam_n(n):
    return (F(1), F(0)) if n == 1 else (F(6 * n * n - 6 * n + 1), -F(n * (n - 1), 2))


def rank(n, g):
    return g if n == 1 else (2 * n - 1) * (g - 1)


def viehweg(n, m, g):
    a, b = lam_n(m * n), lam_n(n)
    return (rank(n, g) * a[0] - m * rank(m * n, g) * b[0], rank(n, g) * a[1] - m * rank(m * n, g) * b[1])


def d(name, pair):
    return cls(pair[0], [(name, pair[1])])


E["divisor/lambda-2-g5"] = d("delta", lam_n(2))
E["divisor/lambda-3-g5"] = d("delta", lam_n(3))
for m, g in [(3, 5), (7, 10)]:
    f = (m - 1) * (g - 1)
    closed = (F(f * (20 * m - 3)), F(-f * 2 * m))
    assert viehweg(2, m, g) == closed
    E[f"divisor/viehweg-n2-m{m}-g{g}"] = d("delta", closed)
E["divisor/viehweg-n1-m2-g4"] = d("delta", viehweg(1, 2, 4))
E["divisor/slope-n2-m7"] = fq(F(20 * 7 - 3, 2 * 7))
# Leading m^2 coefficients.
E["divisor/asymptotic-n1-g9"] = d("delta", (F(4 * 9 + 2), -F(9, 2)))
E["divisor/asymptotic-n2-g5"] = d("delta", (F(20 * 4), F(-2 * 4)))
alpha = F(7, 10)
E["divisor/canonical-alpha-7_10-g5"] = d("delta", (F(13), -2 + alpha))
split = [(f"delta_{i}", -2 + alpha - (9 - 11 * alpha if i == 1 else 0)) for i in range(6 // 2 + 1)]
E["divisor/logdisc-alpha-7_10-g6"] = cls(13, split)
for m in [1, 10, 100]:
    E[f"divisor/epsilon-m{m:03}"] = fq(F(39, 200 * m - 30))
for g in [4, 5, 12, 30]:
    lam = 2 - F(4, g)
    rest = [-1 + F(4 * i * (g - i), g) for i in range(2, g // 2 + 1)]
    E[f"divisor/moriwaki-g{g:02}"] = (
        f"a={fq(F(1, g))} lambda={fq(lam)} delta_1={fq(lam)} "
        f"rest={','.join(fq(x) for x in rest) or 'none'} identity=true positive=true"
    )

# Stability flags, read off the definitions for each fixture.
FLAGS = {
    "smooth": "1 1 1 1 1 1",
    "bridge": "1 1 1 0 0 0",
    "bridge_length_two": "1 1 1 0 0 0",
    "bridge_rep": "0 0 1 0 0 0",
    "three_rosaries": "0 0 1 0 0 0",
    "tacnodal_tail": "0 0 0 0 0 0",
    "closed_rosary_four": "0 0 1 0 1 0",
    "closed_weak_chain": "0 0 1 0 1 0",
    "closed_weak_chain_rep": "0 0 1 0 1 0",
    "h_example_bridge_p1": "0 0 1 0 1 0",
    "h_example_bridge_p1_rep": "0 0 1 0 1 0",
    "h_example_pure": "0 0 1 0 1 0",
    "h_example_pure_rep": "0 0 1 0 1 0",
    "rosary_three": "0 0 1 0 1 0",
}
for name, bits in FLAGS.items():
    b = bits.split()
    E[f"classify/{name}"] = f"dm={b[0]} ps={b[1]} css={b[2]} cst={b[3]} hss={b[4]} hst={b[5]}"


def rep(shape, matches="true"):
    return f"closed=true idempotent=true matches-fixture={matches} {shape}"


# C1 - E - C2 becomes C1 - R1 = R2 - C2.
E["closed-orbit/c/bridge"] = rep(curve([0, 0, 2, 2], 2, 1, chain="elliptic-chain length=1"))
# Both bridges of C1 - E1 - E2 - C2 become length-two rosaries.
E["closed-orbit/c/bridge_length_two"] = rep(curve([0] * 4 + [2, 2], 3, 2, chain="elliptic-chain length=1"), "n/a")
E["closed-orbit/c/three_rosaries"] = rep(curve([0] * 6 + [2], 6, 3, chain="elliptic-chain length=1"))
# C1 - L1 = L2 = L3 - L4 = L5 = L6 - C2; {L3, L4, L5} and {L1, L2} form a weak chain of two links.
h_rep = curve([0] * 6 + [2, 2], 3, 4, chain="weak-elliptic-chain length=2")
E["closed-orbit/h/h_example_bridge_p1"] = rep(h_rep)
E["closed-orbit/h/h_example_pure"] = rep(h_rep)
E["closed-orbit/h/closed_weak_chain"] = rep(curve([0] * 6, 0, 6, chain="closed-weak-elliptic-chain length=3"))
E["closed-orbit/h/rosary_three"] = rep(curve([0, 0, 0, 3], 2, 2, chain="weak-elliptic-chain length=1"))
E["closed-orbit/predicates/three_rosaries"] = "c=true h=false"
E["closed-orbit/predicates/rosary_three"] = "c=false h=true"
E["closed-orbit/predicates/closed_rosary_four"] = "c=false h=true"
E["closed-orbit/predicates/bridge"] = "c=false h=false"

# Generic curves for each choice of smoothing per minimal bridge.
shapes = sorted([curve([1, 2, 2], 2, 0, chain="elliptic-chain length=1"), curve([2, 2], 0, 1)])
E["replacements/bridge"] = "count=2 distinct=2 | " + " | ".join(shapes)
weak = curve([1, 2, 2], 1, 1, chain="weak-elliptic-chain length=1")
shapes = sorted([
    curve([1, 1, 2, 2], 3, 0, chain="elliptic-chain length=1"),
    weak,
    weak,
    curve([0, 2, 2], 0, 2),
])
E["replacements/bridge_length_two"] = "count=4 distinct=3 | " + " | ".join(shapes)

print(json.dumps(dict(sorted(E.items())), indent=2))

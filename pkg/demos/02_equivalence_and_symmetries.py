"""Coorbit equivalence decisions and the three symmetry groups.

Two dilation groups are coorbit equivalent iff their dual orbits agree and,
in the two-component (shearlet) case, their exponents agree.  The script
walks through positive and negative pairs, then checks membership in the
normalizer N_H, the coorbit symmetry group S_H, and the orbit symmetry group
S_O, which always nest: N_H <= S_H <= S_O.
"""

import numpy as np

from coorbit2d import (
    GroupSpec,
    coorbit_equivalent,
    diagonal,
    in_coorbit_symmetry,
    in_normalizer,
    in_orbit_symmetry,
    rotation,
    shearlet,
    similitude,
)

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])

pairs = [
    ("two similitude conjugates",
     GroupSpec(similitude(), rotation(1.0)),
     GroupSpec(similitude(), np.array([[2.0, 1.0], [0.5, 1.0]]))),
    ("diagonal vs swap-conjugated diagonal",
     GroupSpec(diagonal()),
     GroupSpec(diagonal(), SWAP @ np.diag([2.0, -3.0]))),
    ("diagonal vs rotated diagonal",
     GroupSpec(diagonal()),
     GroupSpec(diagonal(), rotation(0.2))),
    ("shearlets with c = 1 vs c = 1.001",
     GroupSpec(shearlet(1.0)),
     GroupSpec(shearlet(1.001))),
]

for label, s1, s2 in pairs:
    verdict = coorbit_equivalent(s1, s2)
    print(f"{label}:")
    print("  equivalent:", verdict.equivalent)
    print("  reason:", verdict.reason)
print()

# Symmetry triples.  For the diagonal group the swap matrix normalizes;
# a small rotation is in none of the three.
spec = GroupSpec(diagonal())
for label, mat in (("swap", SWAP), ("rotation by 0.2", rotation(0.2)),
                   ("diag(2, -3)", np.diag([2.0, -3.0]))):
    print(f"diagonal group vs {label}: "
          f"N_H={in_normalizer(spec, mat)} "
          f"S_H={in_coorbit_symmetry(spec, mat)} "
          f"S_O={in_orbit_symmetry(spec, mat)}")
print()

# The inclusion chain on random matrices (violations would be a bug).
rng = np.random.default_rng(0)
count = 0
for _ in range(500):
    a = rng.normal(size=(2, 2))
    if abs(np.linalg.det(a)) < 0.1:
        continue
    count += 1
    for spec in (GroupSpec(similitude()), GroupSpec(diagonal()),
                 GroupSpec(shearlet(0.5))):
        n_h, s_h, s_o = (in_normalizer(spec, a), in_coorbit_symmetry(spec, a),
                         in_orbit_symmetry(spec, a))
        assert (not n_h or s_h) and (not s_h or s_o)
print(f"inclusion chain N_H <= S_H <= S_O held on {count} random matrices")

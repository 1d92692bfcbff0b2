"""Canonical forms of 2D dilation groups.

Every irreducibly admissible dilation group of the plane is one of three
families up to conjugation: similitudes, diagonal matrices, or shearlets with
an anisotropy exponent c.  Conjugating moves the open dual orbit; the
complement of the orbit (0, 1 or 2 lines through the origin) pins down the
coorbit-equivalence class.  This script builds a few groups and reads off
their canonical forms.
"""

import numpy as np

from coorbit2d import (
    GroupSpec,
    canonicalize,
    component_count,
    diagonal,
    orbit_complement,
    rep_group,
    rotation,
    shear,
    shearlet,
    similitude,
)

# The standard diagonal group: orbit complement is the pair of axes.
spec = GroupSpec(diagonal())
print("standard diagonal group")
print("  components:", component_count(spec))
print("  complement angles:", np.degrees(orbit_complement(spec).angles))
print("  canonical form:", canonicalize(spec))
print()

# Conjugate it by something messy; only the line pair matters.
b = np.array([[1.3, 0.4], [-0.2, 0.9]]) @ rotation(0.5)
conj = GroupSpec(diagonal(), b)
cf = canonicalize(conj)
print("conjugated diagonal group, conjugator =", b.round(3).tolist())
print("  complement angles:", np.degrees(orbit_complement(conj).angles).round(4))
print("  canonical form:", cf)

# The canonical representative reproduces the same complement exactly.
rep = rep_group(cf)
print("  representative complement:",
      np.degrees(orbit_complement(rep).angles).round(4))
print()

# Shearlet groups carry their exponent along; a rotation moves the single
# missing line.
for phi in (0.0, 0.7):
    spec = GroupSpec(shearlet(2.0), rotation(phi))
    print(f"shearlet c=2 rotated by {phi}:", canonicalize(spec))
print()

# Similitude groups forget their conjugator entirely: one equivalence class.
wild = GroupSpec(similitude(), shear(3.0) @ np.diag([5.0, 0.2]))
print("similitude conjugated by a wild matrix:", canonicalize(wild))

"""
Cross-checking the fast paths against brute force
=================================================

"""

# The reduction-based classifiers are fast but intricate.  The oracle
# module re-derives the same answers by exhaustive coefficient scans
# and breadth-first orbit searches, sharing no code with the reduction
# logic.  Agreement on thousands of classes is the best regression net
# the package has.
import json

from latwist import (
    EnumQuery,
    LatticeModel,
    bfs_is_exceptional,
    bfs_is_knull_spherical,
    crosscheck,
    enumerate_classes,
    parse_class,
    print_class,
)

model = LatticeModel.rational(3)

# Scan every class with coefficients in [-2, 2] that has square -1 and
# canonical pairing -1, the numeric profile of an exceptional class.
q = EnumQuery(model, coeff_bound=2, predicate="exceptional")
found = enumerate_classes(q)
print("numeric exceptional candidates, bound 2:")
for x in found:
    print("  " + print_class(x))

# The scan is numeric only.  Whether each candidate is genuinely
# exceptional is settled twice: by Cremona reduction and by a BFS
# through the reflection orbit.  crosscheck runs both and compares.
report = crosscheck(q)
print("checked:", report.checked, "disagreements:", len(report.disagreements))
print("report ok:", report.ok)

# Null spherical classes get the same treatment at a larger bound.
report2 = crosscheck(EnumQuery(model, coeff_bound=3, predicate="knull"))
print("knull scan checked:", report2.checked, "ok:", report2.ok)

# The BFS is usable on its own for single classes.
deep = parse_class("2H-E1-E2-E3-E4-E5-E6", LatticeModel.rational(6))
print("orbit search says knull:", bfs_is_knull_spherical(deep))

stuck = parse_class("3H+E1-E2-E3-E4-E5-E6-E7-E8-E9-E10-E11",
                    LatticeModel.rational(11))
print("stuck class, orbit search:", bfs_is_exceptional(stuck, depth=6))

# Reports serialize for archival or diffing between versions.
blob = json.dumps(report.to_json(), indent=2, sort_keys=True)
print("serialized report:", len(blob), "bytes,",
      json.loads(blob)["summary"]["checked"], "classes checked")

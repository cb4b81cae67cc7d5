"""
Machine-verifying the identity registry
=======================================

Every registered identity carries a parameter plan and an exact checker.
A sweep runs the whole plan, times it, and captures the first failure if
one ever appears.
"""

from stmilnor import REGISTRY, run_case, sweep, verify_all

# the registry and what each entry asserts
for iid in sorted(REGISTRY):
    print(f"{iid:<14} {REGISTRY[iid].summary}")

# one single case, chosen by hand
res = run_case("thm3.1", 3, {"n": 2, "s": 1, "i": 1})
print("\nsingle case thm3.1 n=2 s=1 i=1:", "ok" if res.ok else f"FAIL {res.detail}")

# a filtered sweep: one identity, one prime, part of the plan
rep = sweep("lem2.2", "full", p_filter=3, param_filter={"n": 2})
print(f"lem2.2 at p=3, n=2: {rep.passed}/{rep.total} cases in {rep.seconds:.2f}s")

# the quick profile of everything
print("\nquick profile over the whole registry:")
for rep in verify_all("quick", [3]):
    mark = "ok " if rep.ok else "FAIL"
    print(f"  {mark} {rep.id:<14} {rep.passed}/{rep.total} in {rep.seconds:.2f}s")

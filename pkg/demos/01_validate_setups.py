"""Validate the hypotheses behind the two built-in setups.

Every setup must satisfy four things before any frame identity is worth
testing: the scaling function lives on [0, 1/(4N)] and tends to 1 at 0+,
the refinement relation ties it to the low-pass filter, and the filter
bank's squared moduli sum to 1 on [0, 1/2] (possibly weighted).  This
script runs those checks on both presets and then on a deliberately broken
filter bank to show what failure looks like.
"""

from nuframes import GeneralSetup, TranslationSet, parse, preset, validate_setup


def show(name, rep):
    print(f"{name}: passed={rep.passed}")
    print(f"  refinement residual   {rep.refinement_residual:.3e}")
    print(f"  support leak          {rep.support_leak:.3e}")
    print(f"  limit deviation at 0+ {rep.limit_deviation:.3e}")
    print(f"  filter residual       {rep.uep_residual:.3e}")
    if rep.oep_residual is not None:
        print(f"  weighted residual     {rep.oep_residual:.3e}"
              f"  (min theta {rep.theta_min})")
    for check, good in rep.checks.items():
        print(f"  [{'ok' if good else 'FAIL'}] {check}")


for name in ("ex5.1", "ex5.2"):
    show(name, validate_setup(preset(name), grid_log2=14))
    print()

# Break the complement filter: the squares now sum to 2 on the low band
# and the filter condition check catches it.
broken = GeneralSetup(
    ts=TranslationSet(2, 3),
    psi0_hat=parse("chi[0,1/8]"),
    filters=(parse("chi[0,1/32]"), parse("chi[0,1/32]")),
)
show("broken complement", validate_setup(broken, grid_log2=14))

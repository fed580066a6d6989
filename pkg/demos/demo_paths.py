"""Sample paths of the doubling families on three incommensurable lattices.

Simulates one trajectory per lattice unit k in {1, 2^(1/3), 4^(1/3)} for
both the symmetric (double-or-die) and the increasing (pure-birth) family,
and writes self-contained SVG step plots.  Every visited state is an exact
dyadic point k * m * 2^-s; no two nonzero states from different k can ever
coincide.
"""

import pathlib

from levysym import (
    IncreasingDoublingApprox,
    LatticeUnit,
    SimConfig,
    SymmetricDoublingApprox,
    jump_rule_of,
    simulate_path,
)
from levysym.svgplot import paths_svg

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)

HORIZON = 1.0
TOKENS = ("1", "cbrt2", "cbrt4")

for family, n, log_y in (
    (SymmetricDoublingApprox, 10, False),
    (IncreasingDoublingApprox, 10, True),
):
    series = []
    for i, token in enumerate(TOKENS):
        spec = family(LatticeUnit.parse(token), n)
        rule = jump_rule_of(spec)
        path = simulate_path(
            rule, rule.initial_state(), SimConfig(horizon=HORIZON, seed=2026),
            path_index=i,
        )
        values = [s.value for s in path.states]
        series.append((f"k = {token}", list(path.times), values))
        print(
            f"{family.__name__} k={token}: {len(path.times)} jumps, "
            f"X({HORIZON}) = {values[-1]:.6g}"
        )
    name = f"paths_{family.__name__}.svg"
    (OUT / name).write_text(
        paths_svg(series, HORIZON, title=family.__name__, log_y=log_y)
    )
    print(f"wrote {OUT / name}")

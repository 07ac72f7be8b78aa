"""Verify a submodule the way the architecture is verified: fold it in every
declared environment, classify each fold as a brick, and close the graph.

The glider spacer carries one bit as its height. Entering its band at the
top it exposes 588-587-582-581 below; entering at the bottom it exposes
590-585-584-579. Exits match entries, so the two environments succeed
themselves and the brick automaton closes. Break one rule pair and the
verification reports the environment that no longer folds as declared.

Run:  python demos/04_verify_bricks.py
"""

from pathlib import Path

from oritatami.harness import (
    SubmoduleDef,
    explore_closure,
    fold_in_environment,
    format_automaton,
    parse_environments,
    parse_submodules,
)

HERE = Path(__file__).parent

defs = parse_submodules((HERE / "gspacer.defs").read_text())
envs = parse_environments((HERE / "gspacer_bands.cat").read_text())

for env in envs:
    brick = fold_in_environment(defs["gspacer"], env)
    print(f"{env.name}: brick {brick.name} exits {brick.exit}, "
          f"exposes {'-'.join(brick.exposed)}")

auto = explore_closure(defs, envs)
print()
print(format_automaton(auto))

# Now sabotage the rule set: the harness catches the deviation.
broken = defs["gspacer"]
broken = SubmoduleDef(
    broken.name,
    broken.fragment,
    broken.rules.without("581", "588"),
    broken.delay,
    broken.arity,
    expected=broken.expected,
)
report = explore_closure({"gspacer": broken}, envs)
print("with one rule removed:")
for env_name, message in report.failures:
    print(f"  {env_name}: {message}")

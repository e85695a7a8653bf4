"""Tour of the physics scope: query the oracle, build a periodic shuttle,
sample a scene family, and verify a candidate program end to end.

Run:  python3 demos/bouncing_tour.py
"""

from deltaforge.bounce import (
    SimConfig,
    Simulator,
    construct_periodic_scene,
    oracle_solution_source,
    recurrence_error,
    sample_scene,
    state_at,
)
from deltaforge.bounce.dataset import build_entry
from deltaforge.bounce.runner import ExecPolicy, score_source


def main() -> None:
    # Sample a basic rotating-box scene (placement + 15-unit sanity gate
    # happen inside the sampler).
    scene = sample_scene("ROT_BOX", "basic", seed=42)
    box = scene.containers[0]
    print(f"container: {box.sides}-gon radius {box.radius:.0f} m, "
          f"omega {box.angular.base:+.3f} rad/s")
    print(f"ball: v0 = {scene.balls[0].velocity}, "
          f"sanity deviation {scene.metadata['sanity_deviation']:.3f} units")

    sim = Simulator(scene, SimConfig.truth())
    sim.run_until(4.0)
    print(f"first impacts: {[round(e.t, 3) for e in sim.events[:4]]}")
    sample = state_at(scene, SimConfig.truth(), 2.5)
    print(f"state at t=2.5: pos={tuple(round(v, 2) for v in sample.positions[0])}")

    # A perfectly periodic shuttle between two co-rotating squares.
    periodic, spec = construct_periodic_scene(4, 200.0, 100.0, 100.0, k=1, seed=7)
    print(f"\nperiodic shuttle: omega={spec.omega:.5f} rad/s, "
          f"t_fly={spec.t_fly:.5f} s, T_orient={spec.t_orient:.5f} s")
    defect = recurrence_error(periodic, spec.t_orient)
    print(f"recurrence defect over 2 periods: {defect:.4f} display units")

    # Build a dataset entry and score the oracle's own program-of-record.
    entry = build_entry(scene, scene.metadata["timestamps"])
    score = score_source(oracle_solution_source(entry), entry, ExecPolicy(wall_timeout=30.0))
    print(f"\nentry {entry.id}: {len(entry.tests)} timestamp tests, tolerance {entry.tolerance}")
    print(f"oracle self-score: per_test={score.per_test:.2f} full_pass={score.full_pass}")

    # A lazy candidate that ignores the walls scores only what it earns.
    lazy = (
        "def predict_position(t):\n"
        f"    x0, y0 = {scene.balls[0].position}\n"
        f"    vx, vy = {scene.balls[0].velocity}\n"
        "    return [[round(x0 + vx * t, 2), round(y0 + vy * t, 2)]]\n"
    )
    lazy_score = score_source(lazy, entry, ExecPolicy(wall_timeout=30.0))
    print(f"wall-less candidate: per_test={lazy_score.per_test:.2f} "
          f"full_pass={lazy_score.full_pass}")


if __name__ == "__main__":
    main()

"""Acceptance suite: one test per acceptance criterion, each at its stated
tolerance and runtime bound. Run with `pytest tests/test_acceptance.py -s`
to see the per-criterion PASS lines."""

import itertools
import math
import random
import time

import pytest
from machines import HAS_BRRR_BUGGY, HAS_BRRR_SOLUTION, REJECT_EVERYTHING, fenced
from scene_helpers import seeded_static_scene

from deltaforge.bounce.dataset import emit_scenes, emit_split, load_entries, oracle_solution_source
from deltaforge.bounce.families import FAMILIES, SANITY_THRESHOLD, sample_scene
from deltaforge.bounce.periodic import (
    construct_periodic_scene,
    measure_shuttle_half_period,
    recurrence_error,
)
from deltaforge.bounce.physics import Simulator, sanity_check
from deltaforge.bounce.runner import ExecPolicy, score_entries
from deltaforge.bounce.scene import SimConfig
from deltaforge.manufactoria.datasets import emit_family_split
from deltaforge.manufactoria.dsl import Outcome, RunLimits, parse_program, run_machine
from deltaforge.manufactoria.families import generate_tests, make_instance, spec_eval
from deltaforge.manufactoria.judge import score_submission
from deltaforge.manufactoria.reference import reference_program
from deltaforge.rewards.replay import ReplayStore
from deltaforge.rewards.schedule import RewardSchedule, staged_reward


def report(name: str, detail: str) -> None:
    print(f"[PASS] {name}: {detail}")


def all_tapes_up_to(length: int):
    for n in range(length + 1):
        for tape in itertools.product("RB", repeat=n):
            yield "".join(tape)


class TestAcceptance:
    def test_manufactoria_oracle_equivalence(self):
        """Reference machines agree with spec_eval on all 127 tapes <= 6."""
        started = time.perf_counter()
        cases = [
            ("APPEND", {"pattern": "RBR"}),
            ("EXACT", {"pattern": "RBB"}),
            ("START", {"pattern": "BR"}),
        ]
        tapes = list(all_tapes_up_to(6))
        assert len(tapes) == 127
        for family, params in cases:
            instance = make_instance(family, params)
            program = parse_program(reference_program(instance))
            for tape in tapes:
                expected = spec_eval(instance, tape)
                result = run_machine(program, tape)
                if instance.task_kind == "decision":
                    assert result.accepted == (expected == "accept"), (family, tape)
                else:
                    assert result.accepted and result.final_tape == expected, (family, tape)
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0
        report("manufactoria-oracle-equivalence",
               f"3 basic families x 127 tapes in {elapsed:.2f}s")

    def test_worked_example_machines(self):
        """The known-good substring machine full-passes a HAS(BRRR) suite;
        the prefix-only machine fails the BBRRR accept case."""
        started = time.perf_counter()
        instance = make_instance("HAS", {"pattern": "BRRR"}, seed="acceptance")
        tests = generate_tests(instance, 24, seed=1)
        assert len(tests) >= 20
        good = score_submission(fenced(HAS_BRRR_SOLUTION), instance, tests)
        assert good.full_pass and good.per_test == 1.0

        program = parse_program(HAS_BRRR_BUGGY)
        result = run_machine(program, "BBRRR")
        assert result.outcome is not Outcome.REACHED_END  # wrongly rejected
        bad = score_submission(fenced(HAS_BRRR_BUGGY), instance, tests + [
            type(tests[0])(input="BBRRR", expected="accept", kind="decision")])
        assert not bad.full_pass
        assert any(f.input == "BBRRR" for f in bad.failures)
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0
        report("worked-example-machines", f"good full-pass, buggy rejects BBRRR ({elapsed:.2f}s)")

    def test_split_sizes_and_byte_determinism(self, tmp_path):
        """742/100 tape-machine split and the 1000+100+4x100 explorative
        split, byte-identical across reruns with the same seed."""
        started = time.perf_counter()
        mfa_a = emit_family_split("HAS", 742, 100, seed=7, out_dir=tmp_path / "mfa_a")
        mfa_b = emit_family_split("HAS", 742, 100, seed=7, out_dir=tmp_path / "mfa_b")
        train_bytes = mfa_a["train"].read_bytes()
        test_bytes = mfa_a["test"].read_bytes()
        assert len(train_bytes.splitlines()) == 742
        assert len(test_bytes.splitlines()) == 100
        assert train_bytes == mfa_b["train"].read_bytes()
        assert test_bytes == mfa_b["test"].read_bytes()

        split_a = emit_split("explorative", "ROT_BOX", seed=3, out_dir=tmp_path / "exp_a")
        split_b = emit_split("explorative", "ROT_BOX", seed=3, out_dir=tmp_path / "exp_b")
        expected_counts = {"train": 1000, "test_id": 100, "test_ood_easy": 100,
                           "test_ood_medium": 100, "test_ood_hard": 100,
                           "test_ood_extreme": 100}
        for name, count in expected_counts.items():
            a_bytes = split_a[name].read_bytes()
            assert len(a_bytes.splitlines()) == count, name
            assert a_bytes == split_b[name].read_bytes(), name
        elapsed = time.perf_counter() - started
        report("split-sizes-byte-determinism",
               f"742/100 and 1000+100+4x100 reproduced twice in {elapsed:.1f}s")

    def test_periodicity_theorem_scenes(self):
        """20 seeded periodic constructions, n in {4,6,8}, |k|=1: recurrence
        error <= 1 display unit over a grid spanning 2*T_orient, and the
        measured shuttle half-period within 1% of t_fly."""
        started = time.perf_counter()
        rng = random.Random("acceptance:periodic")
        checked = 0
        for i in range(20):
            sides = (4, 6, 8)[i % 3]
            k = 1 if i % 2 == 0 else -1
            r_outer = rng.uniform(160.0, 300.0)
            r_inner = r_outer * rng.uniform(0.35, 0.5)
            speed = rng.uniform(100.0, 300.0)
            scene, spec = construct_periodic_scene(sides, r_outer, r_inner, speed, k,
                                                   seed=f"acc:{i}")
            defect = recurrence_error(scene, spec.t_orient, span_periods=2)
            assert defect <= 1.0, (i, sides, defect)
            half = measure_shuttle_half_period(scene, 2.2 * spec.t_orient)
            assert abs(half - spec.t_fly) / spec.t_fly <= 0.01, (i, half, spec.t_fly)
            checked += 1
        elapsed = time.perf_counter() - started
        assert elapsed < 60.0
        assert checked == 20
        report("periodicity-theorem", f"20 shuttles verified in {elapsed:.1f}s")

    def test_sanity_check_gate(self):
        """100 accepted basic scenes per family stay under the 15-unit
        two-integrator threshold; a deliberately coarse config exceeds it."""
        started = time.perf_counter()
        for family in FAMILIES:
            for i in range(100):
                scene = sample_scene(family, "basic", seed=f"gate:{i}")
                deviation = scene.metadata["sanity_deviation"]
                assert deviation < SANITY_THRESHOLD, (family, i, deviation)
        coarse_scene = sample_scene("ROT_BOX", "basic", seed="gate:coarse")
        coarse = sanity_check(coarse_scene, coarse_scene.metadata["timestamps"],
                              SimConfig(dt=0.25, max_substeps=0), SimConfig.truth())
        assert not coarse.passed
        assert coarse.max_deviation > SANITY_THRESHOLD
        elapsed = time.perf_counter() - started
        assert elapsed < 600.0
        report("sanity-check-gate",
               f"600 scenes under 15 units, coarse config at "
               f"{coarse.max_deviation:.0f} units, in {elapsed:.1f}s")

    def test_energy_conservation(self):
        """50 zero-gravity static scenes conserve speed within 1e-2 relative
        over at least 20 collisions each."""
        started = time.perf_counter()
        for seed in range(50):
            scene = seeded_static_scene(f"acc:{seed}")
            speed0 = math.hypot(*scene.balls[0].velocity)
            sim = Simulator(scene, SimConfig.truth())
            t = 0.0
            while len(sim.events) < 20 and t < 90.0:
                t += 3.0
                sim.run_until(t)
            assert len(sim.events) >= 20, seed
            final_speed = math.hypot(*sim.probe(t).velocities[0])
            assert abs(final_speed - speed0) / speed0 <= 1e-2, seed
            for event in sim.events:
                assert abs(event.speed_after - event.speed_before) / speed0 <= 1e-3
        elapsed = time.perf_counter() - started
        report("energy-conservation", f"50 scenes x 20+ collisions in {elapsed:.1f}s")

    def test_scoring_contracts(self, tmp_path):
        """full_pass <=> per_test == 1.0 over 1000 randomized submissions;
        the reward switches exactly at warmup_steps; replay serves at most
        the 3 newest traces."""
        started = time.perf_counter()
        rng = random.Random("acceptance:scoring")
        limits = RunLimits(max_steps=2000, max_tape_len=200)
        families = ["EXACT", "START", "ENDS", "HAS", "APPEND", "PREPEND"]
        full_passes = 0
        for i in range(1000):
            family = rng.choice(families)
            instance = make_instance(
                family,
                {"pattern": "".join(rng.choice("RB") for _ in range(rng.randint(2, 4)))},
                seed=f"contract:{i}",
            )
            tests = generate_tests(instance, 8, seed=i)
            roll = rng.random()
            if roll < 0.3 and family in ("EXACT", "START", "APPEND"):
                source = fenced(reference_program(instance))
            elif roll < 0.5:
                source = fenced(REJECT_EVERYTHING)
            elif roll < 0.7:
                source = fenced(_random_program(rng))
            elif roll < 0.85:
                source = fenced("START s:\n    NEXT ghost\nEND end\n")  # parse error
            else:
                source = "no code block at all"
            score = score_submission(source, instance, tests, limits)
            assert score.full_pass == (score.per_test == 1.0), i
            assert score.full_pass == (score.n_passed == score.n_tests), i
            full_passes += score.full_pass

        assert full_passes > 50  # the pool does contain correct solutions

        schedule = RewardSchedule(warmup_steps=37)
        from deltaforge.scoring import Score
        partial = Score(n_tests=4, n_passed=3)
        assert staged_reward(36, schedule, partial) == pytest.approx(0.75)
        assert staged_reward(37, schedule, partial) == 0.0
        full = Score(n_tests=4, n_passed=4)
        assert staged_reward(36, schedule, full) == 1.0
        assert staged_reward(37, schedule, full) == 1.0

        store = ReplayStore(tmp_path / "acc_replay.jsonl")
        for i in range(5):
            store.record_success("prompt", f"trace-{i}", full)
        got = store.fetch_recent("prompt", k=3)
        assert [t.trace for t in got] == ["trace-4", "trace-3", "trace-2"]
        elapsed = time.perf_counter() - started
        report("scoring-contracts",
               f"1000 submissions coupled, reward flips at step 37, "
               f"replay caps at 3 ({elapsed:.1f}s)")

    def test_oracle_self_scoring(self, tmp_path):
        """The engine's own state_at harness full-passes every entry of a
        freshly emitted 100-entry basic split at the default 50-unit
        tolerance."""
        started = time.perf_counter()
        path = emit_scenes("ROT_BOX", "basic", 100, seed="self", out_path=tmp_path / "basic.jsonl")
        entries = load_entries(path)
        assert len(entries) == 100
        assert all(e.tolerance == 50.0 for e in entries)
        pairs = [(oracle_solution_source(e), e) for e in entries]
        scores = score_entries(pairs, ExecPolicy(wall_timeout=30.0), workers=8)
        failed = [e.id for e, s in zip(entries, scores) if not s.full_pass]
        assert not failed, failed
        elapsed = time.perf_counter() - started
        report("oracle-self-scoring", f"100/100 entries full-pass in {elapsed:.1f}s")


def _random_program(rng: random.Random) -> str:
    """Small arbitrary machine; may accept, reject, loop, or paint forever."""
    n = rng.randint(1, 4)
    ids = [f"n{i}" for i in range(n)]
    targets = ids + ["end", "NONE"]
    lines = ["START start:", f"    NEXT {ids[0]}", ""]
    for ident in ids:
        kind = rng.choice(["PULLER_RB", "PULLER_YG", "PAINTER_RED", "PAINTER_BLUE"])
        lines.append(f"{kind} {ident}:")
        if kind.startswith("PULLER"):
            labels = ["R", "B", "EMPTY"] if kind == "PULLER_RB" else ["Y", "G", "EMPTY"]
            for label in labels:
                if rng.random() < 0.8:
                    lines.append(f"    [{label}] {rng.choice(targets)}")
        else:
            lines.append(f"    NEXT {rng.choice(targets)}")
        lines.append("")
    lines.append("END end")
    return "\n".join(lines) + "\n"

"""delta-forge command line.

Dataset generation:
    delta-forge mfa gen --family HAS --count 742 --test 100 --seed 1 --out DIR
    delta-forge bounce gen --axes ROT_BOX --tier basic --count 1000 --seed 1 --out PATH
    delta-forge bounce periodic --sides 4 --outer 200 --inner 100 --speed 100 --k 1 --count 20 --seed 1 --out PATH
    delta-forge split emit --kind explorative --axes ROT_BOX --seed 1 --out DIR

Scoring / reward mirrors of the HTTP API (JSON in, JSON out on stdout):
    delta-forge score manufactoria --response FILE --instance FILE [--tests FILE]
    delta-forge score bouncingsim --source FILE --entry FILE
    delta-forge reward --step N --warmup N --score FILE
    delta-forge replay post PROMPT_ID --trace FILE --score FILE --store PATH
    delta-forge replay get PROMPT_ID --k 3 --store PATH
    delta-forge feedback --score FILE

Service:
    delta-forge serve [--config FILE]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_mfa_gen(args) -> int:
    from deltaforge.manufactoria.datasets import emit_family_split

    written = emit_family_split(
        family=args.family,
        train_count=args.count,
        test_count=args.test,
        seed=args.seed,
        out_dir=args.out,
        tests_per_instance=args.tests_per_instance,
    )
    for split, path in written.items():
        print(f"{split}: {path}")
    return 0


def _cmd_bounce_gen(args) -> int:
    from deltaforge.bounce.dataset import emit_scenes

    path = emit_scenes(
        axes=tuple(args.axes),
        tier=args.tier,
        count=args.count,
        seed=args.seed,
        out_path=args.out,
        tolerance=args.tolerance,
    )
    print(path)
    return 0


def _cmd_bounce_periodic(args) -> int:
    from deltaforge.bounce.dataset import _write_jsonl, build_entry
    from deltaforge.bounce.families import choose_timestamps
    from deltaforge.bounce.periodic import construct_periodic_scene

    entries = []
    for i in range(args.count):
        scene, spec = construct_periodic_scene(
            args.sides, args.outer, args.inner, args.speed, args.k,
            seed=f"{args.seed}:{i}", ball_radius=args.ball_radius,
        )
        timestamps = choose_timestamps(scene, "basic", seed=f"{args.seed}:{i}")
        entries.append(build_entry(scene, timestamps, args.tolerance,
                                   entry_id=f"bounce-periodic-{args.sides}-{i:05d}"))
    path = _write_jsonl(entries, Path(args.out))
    print(path)
    return 0


def _cmd_split_emit(args) -> int:
    from deltaforge.bounce.dataset import emit_split

    written = emit_split(
        kind=args.kind,
        axes=tuple(args.axes) if len(args.axes) > 1 else args.axes[0],
        seed=args.seed,
        out_dir=args.out,
        train_count=args.train,
        test_count=args.test,
    )
    for name, path in written.items():
        print(f"{name}: {path}")
    return 0


def _cmd_score_manufactoria(args) -> int:
    from deltaforge.manufactoria.dsl import RunLimits
    from deltaforge.manufactoria.families import ProblemInstance, TestCase, generate_tests
    from deltaforge.manufactoria.judge import score_submission

    instance = ProblemInstance.from_dict(_read_json(args.instance))
    if args.tests:
        tests = [TestCase.from_dict(t) for t in _read_json(args.tests)]
    else:
        tests = generate_tests(instance, args.test_count, seed=args.test_seed)
    limits = RunLimits(max_steps=args.max_steps, max_tape_len=args.max_tape_len)
    score = score_submission(_read_text(args.response), instance, tests, limits)
    _emit(score.to_dict())
    return 0


def _cmd_score_bouncingsim(args) -> int:
    from deltaforge.bounce.dataset import DatasetEntry
    from deltaforge.bounce.runner import ExecPolicy, score_source

    entry = DatasetEntry.from_dict(_read_json(args.entry))
    policy = ExecPolicy(wall_timeout=args.timeout)
    score = score_source(_read_text(args.source), entry, policy)
    _emit(score.to_dict())
    return 0


def _cmd_reward(args) -> int:
    from deltaforge.rewards.schedule import RewardSchedule, staged_reward
    from deltaforge.scoring import Score

    score = Score.from_dict(_read_json(args.score))
    value = staged_reward(args.step, RewardSchedule(warmup_steps=args.warmup), score)
    _emit({"reward": value})
    return 0


def _cmd_replay_post(args) -> int:
    from deltaforge.rewards.replay import ReplayStore
    from deltaforge.scoring import Score

    store = ReplayStore(args.store)
    stored = store.record_success(args.prompt_id, _read_text(args.trace),
                                  Score.from_dict(_read_json(args.score)))
    _emit({"stored": stored})
    return 0


def _cmd_replay_get(args) -> int:
    from deltaforge.rewards.replay import ReplayStore

    store = ReplayStore(args.store)
    traces = store.fetch_recent(args.prompt_id, args.k)
    _emit({"traces": [t.to_dict() for t in traces]})
    return 0


def _cmd_feedback(args) -> int:
    from deltaforge.rewards.feedback import format_failure_feedback
    from deltaforge.scoring import Score

    text = format_failure_feedback(Score.from_dict(_read_json(args.score)), cap=args.cap)
    _emit({"text": text})
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from deltaforge.service.app import create_app
    from deltaforge.service.config import ServiceConfig

    config = ServiceConfig.load(args.config)
    uvicorn.run(create_app(config), host=config.host, port=config.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delta-forge",
                                     description="dataset generation and verification engine")
    sub = parser.add_subparsers(dest="command", required=True)

    mfa = sub.add_parser("mfa", help="tape-machine problem families")
    mfa_sub = mfa.add_subparsers(dest="mfa_command", required=True)
    gen = mfa_sub.add_parser("gen", help="emit train/test JSONL for one family")
    gen.add_argument("--family", required=True)
    gen.add_argument("--count", type=int, required=True, help="training instances")
    gen.add_argument("--test", type=int, default=100, help="test instances")
    gen.add_argument("--seed", default="0")
    gen.add_argument("--out", required=True)
    gen.add_argument("--tests-per-instance", type=int, default=20)
    gen.set_defaults(fn=_cmd_mfa_gen)

    bounce = sub.add_parser("bounce", help="polygon-collision scenes")
    bounce_sub = bounce.add_subparsers(dest="bounce_command", required=True)
    bgen = bounce_sub.add_parser("gen", help="emit entries for one axis set and tier")
    bgen.add_argument("--axes", nargs="+", required=True)
    bgen.add_argument("--tier", default="basic")
    bgen.add_argument("--count", type=int, required=True)
    bgen.add_argument("--seed", default="0")
    bgen.add_argument("--out", required=True)
    bgen.add_argument("--tolerance", type=float, default=50.0)
    bgen.set_defaults(fn=_cmd_bounce_gen)
    per = bounce_sub.add_parser("periodic", help="emit verified periodic constructions")
    per.add_argument("--sides", type=int, default=4)
    per.add_argument("--outer", type=float, default=200.0)
    per.add_argument("--inner", type=float, default=100.0)
    per.add_argument("--speed", type=float, default=100.0)
    per.add_argument("--k", type=int, default=1)
    per.add_argument("--count", type=int, default=1)
    per.add_argument("--seed", default="0")
    per.add_argument("--ball-radius", type=float, default=10.0)
    per.add_argument("--tolerance", type=float, default=50.0)
    per.add_argument("--out", required=True)
    per.set_defaults(fn=_cmd_bounce_periodic)

    split = sub.add_parser("split", help="generalization splits")
    split_sub = split.add_subparsers(dest="split_command", required=True)
    emit = split_sub.add_parser("emit")
    emit.add_argument("--kind", choices=("explorative", "compositional", "transformative"),
                      required=True)
    emit.add_argument("--axes", nargs="+", default=["ROT_BOX"])
    emit.add_argument("--seed", default="0")
    emit.add_argument("--out", required=True)
    emit.add_argument("--train", type=int, default=1000)
    emit.add_argument("--test", type=int, default=100)
    emit.set_defaults(fn=_cmd_split_emit)

    score = sub.add_parser("score", help="score a submission")
    score_sub = score.add_subparsers(dest="score_command", required=True)
    sm = score_sub.add_parser("manufactoria")
    sm.add_argument("--response", required=True, help="file with the model response text")
    sm.add_argument("--instance", required=True, help="instance JSON file")
    sm.add_argument("--tests", help="test-suite JSON file (list of cases)")
    sm.add_argument("--test-count", type=int, default=20)
    sm.add_argument("--test-seed", default="0")
    sm.add_argument("--max-steps", type=int, default=10_000)
    sm.add_argument("--max-tape-len", type=int, default=1_000)
    sm.set_defaults(fn=_cmd_score_manufactoria)
    sb = score_sub.add_parser("bouncingsim")
    sb.add_argument("--source", required=True, help="file with candidate Python source")
    sb.add_argument("--entry", required=True, help="dataset entry JSON file")
    sb.add_argument("--timeout", type=float, default=10.0)
    sb.set_defaults(fn=_cmd_score_bouncingsim)

    reward = sub.add_parser("reward", help="staged reward for a score")
    reward.add_argument("--step", type=int, required=True)
    reward.add_argument("--warmup", type=int, default=100)
    reward.add_argument("--score", required=True, help="score JSON file")
    reward.set_defaults(fn=_cmd_reward)

    replay = sub.add_parser("replay", help="experience-replay store")
    replay_sub = replay.add_subparsers(dest="replay_command", required=True)
    rp = replay_sub.add_parser("post")
    rp.add_argument("prompt_id")
    rp.add_argument("--trace", required=True)
    rp.add_argument("--score", required=True)
    rp.add_argument("--store", default="replay_store.jsonl")
    rp.set_defaults(fn=_cmd_replay_post)
    rg = replay_sub.add_parser("get")
    rg.add_argument("prompt_id")
    rg.add_argument("--k", type=int, default=3)
    rg.add_argument("--store", default="replay_store.jsonl")
    rg.set_defaults(fn=_cmd_replay_get)

    feedback = sub.add_parser("feedback", help="failure feedback text for a score")
    feedback.add_argument("--score", required=True)
    feedback.add_argument("--cap", type=int, default=3)
    feedback.set_defaults(fn=_cmd_feedback)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--config", help="JSON config file")
    serve.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())

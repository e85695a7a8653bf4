"""Tour of the tape-machine scope: parse a program, run tapes through it,
sample a problem family, and score a submission.

Run:  python3 demos/manufactoria_tour.py
"""

from deltaforge.manufactoria import (
    RunLimits,
    generate_tests,
    parse_program,
    render_prompt,
    run_machine,
    sample_instance,
    score_submission,
)

# A machine that accepts tapes containing the consecutive substring BRRR:
# s0..s3 track how much of the pattern has matched, and the PULLER_YG nodes
# skip stray yellow/green tape by restarting the scan.
DETECTOR = """
START start:
    NEXT s0

PULLER_RB s0:
    [R] s0
    [B] s1
    [EMPTY] yg0

PULLER_YG yg0:
    [Y] s0
    [G] s0
    [EMPTY] s0

PULLER_RB s1:
    [R] s2
    [B] s1
    [EMPTY] yg0

PULLER_RB s2:
    [R] s3
    [B] s1
    [EMPTY] yg0

PULLER_RB s3:
    [R] end
    [B] s1
    [EMPTY] yg0

END end
"""


def main() -> None:
    program = parse_program(DETECTOR)
    print(f"parsed {len(program.nodes)} nodes, start={program.start_id}, end={program.end_id}")

    for tape in ["BRRR", "BBRRR", "BRR", "RYBRRRG", ""]:
        result = run_machine(program, tape, RunLimits())
        print(f"  tape {tape!r:10} -> {result.describe()} in {result.steps_taken} steps")

    # Sample a fresh problem instance and look at its task prompt.
    instance = sample_instance("COMPR", seed=2024)
    print("\nsampled instance:", instance.id)
    print("criterion:", instance.criteria_text)
    prompt = render_prompt(instance)
    print(f"prompt is {len(prompt)} chars; tail:\n...{prompt.rstrip()[-120:]}")

    # Score the detector against a suite it was not built for: partial credit.
    tests = generate_tests(instance, 20, seed=1)
    response = f"Here is my attempt:\n\n```manufactoria\n{DETECTOR}\n```\n"
    score = score_submission(response, instance, tests)
    print(f"\nscore vs {instance.family}: per_test={score.per_test:.2f} "
          f"full_pass={score.full_pass} ({score.n_passed}/{score.n_tests})")
    for failure in score.failures[:3]:
        print(f"  failed {failure.input!r}: expected {failure.expected}, {failure.observed}")


if __name__ == "__main__":
    main()

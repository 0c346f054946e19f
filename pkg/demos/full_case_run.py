"""One claim through the whole pipeline, stage by stage.

Uses the offline demo backend, so the run is deterministic and needs no
network. Prints the stage trace as it happened and the final ruling.
"""

from claimcourt.pipeline import PipelineConfig, run_case

CLAIM = "The non-compete clause is unenforceable against the departing engineer."

CORPUS = {
    "agreement": (
        "The employee agrees not to join a competing firm within two years of "
        "departure anywhere in the state. Consideration for this covenant is "
        "continued employment. The agreement was signed three years after the "
        "employee started work."
    ),
    "statute": (
        "A covenant not to compete is enforceable only if supported by "
        "independent consideration when entered after employment begins, and "
        "only to the extent reasonable in scope, geography, and duration."
    ),
    "deposition": (
        "The engineer testified that no raise, bonus, or promotion accompanied "
        "the signing, and that the covenant was presented as a formality."
    ),
}


def main() -> None:
    config = PipelineConfig(backends={"default": {"kind": "demo", "seed": 7}})
    record = run_case(CLAIM, config, task_id="demo-noncompete", corpus=CORPUS)

    print(f"case {record.case_id}")
    print(f"claim: {record.task.claim}\n")

    print("stage trace:")
    for entry in record.trace:
        stage = entry["stage"]
        detail = {k: v for k, v in entry.items() if k != "stage" and not isinstance(v, (list, dict))}
        print(f"  {stage:16s} {detail}")

    print("\narguments:")
    for argument in record.graph.arguments:
        sigma = record.strengths[argument.id]
        print(f"  [{argument.stance.value:7s}] tau={argument.base_strength:.2f} sigma={sigma:.4f} {argument.author_role}")
        print(f"            {argument.text[:90]}")

    decision = record.decision
    print(f"\nclaim strength: {record.strengths.claim_strength():.4f}")
    route = "final judge" if decision.escalated else "threshold rule"
    print(f"ruling: {decision.answer.value} (via {route})")


if __name__ == "__main__":
    main()

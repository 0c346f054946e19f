"""Contest a finished case: edit the graph, watch the ruling move.

Runs a case with the demo backend, opens a review session, and applies two
human edits. Every edit recomputes the equilibrium and lands in the audit
log with the before/after claim strengths.
"""

from claimcourt.contestation import (
    ContestationType,
    EditKind,
    EditOp,
    apply_edit,
    dashboard,
    open_session,
)
from claimcourt.pipeline import PipelineConfig, run_case

CLAIM = "The landlord's entry without notice breached the lease."

CORPUS = {
    "lease": (
        "Landlord may enter the premises with 24 hours written notice, or "
        "without notice only to address an emergency threatening life or "
        "property. Routine inspections require notice."
    ),
    "incident": (
        "The landlord entered on a Tuesday afternoon to show the unit to a "
        "prospective buyer. No notice was given. A dripping faucet was noted "
        "on the way out."
    ),
}


def main() -> None:
    config = PipelineConfig(backends={"default": {"kind": "demo", "seed": 3}})
    case = run_case(CLAIM, config, task_id="demo-entry", corpus=CORPUS)

    print(f"case {case.case_id}: sigma(claim)={case.strengths.claim_strength():.4f}, "
          f"ruling={case.decision.answer.value}\n")

    session = open_session(case)
    board = dashboard(case)
    target = None
    for card in board["cards"]:
        if card["stance"] == "attack":
            if target is None or card["scores"]["propagated_strength"] > target["scores"]["propagated_strength"]:
                target = card

    if target is None:
        print("no attacker to contest; try another seed")
        return

    print(f"contesting the strongest attacker, {target['id']}:")
    print(f"  {target['influence']}\n")

    rejection = EditOp(
        kind=EditKind.REJECT_ARGUMENT,
        actor="reviewer-demo",
        contestation_type=ContestationType.FACTUAL,
        rationale="The cited entry was for a showing, not an emergency.",
        node_id=target["id"],
    )
    entry = apply_edit(session, rejection)
    print(f"edit 1 (reject): sigma {entry.sigma_phi_before:.4f} -> {entry.sigma_phi_after:.4f}"
          f"{' REVIEW' if entry.review_required else ''}")

    supporter = next(a for a in session.arguments if a.stance.value == "support")
    boost = EditOp(
        kind=EditKind.SET_BASE_STRENGTH,
        actor="reviewer-demo",
        contestation_type=ContestationType.LEGAL_RULE,
        rationale="Notice provision is unambiguous; this point deserves full weight.",
        node_id=supporter.id,
        new_strength=1.0,
    )
    entry = apply_edit(session, boost)
    print(f"edit 2 (boost):  sigma {entry.sigma_phi_before:.4f} -> {entry.sigma_phi_after:.4f}"
          f"{' REVIEW' if entry.review_required else ''}")

    print(f"\nfinal ruling after review: {session.decision.answer.value}")
    print("\naudit log:")
    for audit in session.audit:
        print(f"  #{audit.seq} {audit.edit.kind.value:18s} by {audit.edit.actor}: "
              f"{audit.sigma_phi_before:.4f} -> {audit.sigma_phi_after:.4f}")


if __name__ == "__main__":
    main()

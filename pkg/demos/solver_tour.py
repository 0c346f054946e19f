"""A guided tour of strength propagation on small graphs.

Builds three tiny argument graphs by hand and walks through what the
equilibrium solver does with them: a lone supporter, a balanced standoff,
and a cycle that needs damping to settle.
"""

from claimcourt.qbaf import (
    Argument,
    Edge,
    RelationKind,
    SolverParams,
    Stance,
    build_graph,
    local_equilibrium,
    solve_equilibrium,
)

CLAIM = "The eviction notice was procedurally defective."

# Tighter than the production default so printed values match the closed
# forms to all shown digits.
TIGHT = SolverParams(tolerance=1e-9)


def arg(arg_id: str, stance: Stance, tau: float, text: str) -> Argument:
    return Argument(
        id=arg_id,
        text=text,
        stance=stance,
        author_role="Legal Analyst",
        base_strength=tau,
    )


def show(title: str, graph, result) -> None:
    print(f"\n== {title} ==")
    for node_id in sorted(result.values):
        marker = " (claim)" if node_id == "claim" else ""
        print(f"  sigma({node_id}) = {result[node_id]:.6f}{marker}")
    print(f"  converged={result.converged} after {result.iterations} iterations")


def main() -> None:
    # One supporter at tau 0.8. The claim starts neutral at 0.5 and the
    # supporter's full strength arrives as positive energy.
    lone = build_graph(CLAIM, [arg("a-sup", Stance.SUPPORT, 0.8, "The notice omitted the cure period.")])
    result = solve_equilibrium(lone, TIGHT)
    show("lone supporter", lone, result)
    print(f"  closed form: local_equilibrium(0.5, 0.8) = {local_equilibrium(0.5, 0.8):.6f}")

    # Add an equally strong attacker: the energies cancel and the claim sits
    # exactly where it started.
    balanced = build_graph(
        CLAIM,
        [
            arg("a-sup", Stance.SUPPORT, 0.8, "The notice omitted the cure period."),
            arg("a-att", Stance.ATTACK, 0.8, "The tenant waived the cure period in writing."),
        ],
    )
    show("balanced standoff", balanced, solve_equilibrium(balanced, TIGHT))

    # Two arguments attacking each other form a cycle. There is no evaluation
    # order; the solver iterates to a mutual fixed point instead.
    cyclic = build_graph(
        CLAIM,
        [
            arg("a-sup", Stance.SUPPORT, 0.9, "Service skipped the statutory posting step."),
            arg("a-att", Stance.ATTACK, 0.7, "Posting was excused by the emergency order."),
        ],
        [
            Edge("a-att", "a-sup", RelationKind.ATTACK),
            Edge("a-sup", "a-att", RelationKind.ATTACK),
        ],
    )
    show("mutual attack cycle", cyclic, solve_equilibrium(cyclic, TIGHT))


if __name__ == "__main__":
    main()

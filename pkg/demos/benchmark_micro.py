"""Micro benchmark over a handful of labeled excerpts.

Runs the hearsay task end to end on six inline examples, once per point of
the component on/off grid, and prints the metric table. With the demo
backend the numbers are stable run to run; their absolute level says nothing
about real models, only that the harness plumbing works.
"""

from claimcourt.bench import TASKS, LabeledExample, cr_uae_grid, run_benchmark
from claimcourt.pipeline import PipelineConfig

EXAMPLES = [
    LabeledExample("mx-1", "A neighbor testified that the victim told her the brakes had failed a week earlier.", "yes"),
    LabeledExample("mx-2", "The officer read the defendant's own signed confession into the record.", "no"),
    LabeledExample("mx-3", "Counsel offered a coworker's account of what the supervisor said about the firing.", "yes"),
    LabeledExample("mx-4", "The witness described the skid marks she personally measured at the scene.", "no"),
    LabeledExample("mx-5", "A letter from an absent doctor was offered to prove the diagnosis it stated.", "yes"),
    LabeledExample("mx-6", "The clerk authenticated the timestamped security footage from the lobby.", "no"),
]


def main() -> None:
    base = PipelineConfig(backends={"default": {"kind": "demo", "seed": 4}})
    spec = TASKS["hearsay"]
    reports = run_benchmark(EXAMPLES, spec, cr_uae_grid(base))

    print(f"task: {spec.name} ({len(EXAMPLES)} examples)\n")
    print(f"{'grid point':18s} {'acc':>6s} {'macro-F1':>9s} {'abstained':>10s}")
    for report in reports:
        print(f"{report.label:18s} {report.accuracy:6.2f} {report.macro_f1:9.3f} "
              f"{report.n_abstained:10d}")


if __name__ == "__main__":
    main()

"""Walkthrough: rating two opportunity sets and comparing them.

Generates a very prototypical batch and a highly unusual batch in the
same space, rates both with the mock rater, then runs the rank tests.
Run demos/01_discover_spaces.py first.
"""

from pathlib import Path

from oppgen import ProjectEngine, ProjectStore
from oppgen.evaluation import kruskal_wallis, mann_whitney
from oppgen.generation import GenerationRequest

STORE = Path("./demo-store")


def main() -> None:
    engine = ProjectEngine(ProjectStore(STORE))
    space = engine.store.load_granularity_set("demo", "broad").spaces[0]

    ids = {}
    for level in ("very_prototypical", "highly_unusual"):
        request = GenerationRequest(
            kind="policy", space_ids=(space.space_id,), novelty_level=level
        )
        batch = engine.generate("demo", request)
        ids[level] = [o["opportunity_id"] for o in batch["opportunities"]]
        engine.rate("demo", ids[level], "support seaside towns to regenerate", "policy")

    reports = engine.compare_sets(
        "demo", ids["very_prototypical"], ids["highly_unusual"]
    )
    print("Mann-Whitney, prototypical vs highly unusual:")
    for report in reports:
        print(
            f"  {report.metric:11s} U={report.statistic:6.1f} z={report.z:8.4f} "
            f"p(two-sided)={report.p_value:.5f}"
        )

    # the same statistics are available as plain functions
    demo = mann_whitney([1, 2, 2, 3], [4, 5, 6, 6])
    print(f"\nplain function call: U={demo.U}, z={demo.z:.4f}")
    kw = kruskal_wallis([[1, 2], [3, 4], [5, 6]])
    print(f"three groups: H={kw.H:.4f}, df={kw.df}, p={kw.p:.4f}")


if __name__ == "__main__":
    main()

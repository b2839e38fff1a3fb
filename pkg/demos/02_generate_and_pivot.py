"""Walkthrough: generating opportunities and pivoting on one of them.

Run demos/01_discover_spaces.py first (it creates ./demo-store).
"""

from pathlib import Path

from oppgen import ProjectEngine, ProjectStore
from oppgen.generation import GenerationRequest

STORE = Path("./demo-store")

CUSTOM = (
    "Develop an innovative business opportunity that support seaside towns "
    "to regenerate by attracting new investment linked to new areas of growth"
)


def main() -> None:
    engine = ProjectEngine(ProjectStore(STORE))
    space = engine.store.load_granularity_set("demo", "broad").spaces[0]
    print(f"generating in {space.space_id} ({space.label})\n")

    request = GenerationRequest(
        kind="business",
        space_ids=(space.space_id,),
        novelty_level="highly_unusual",
        qualities=("greener",),
        custom_text=CUSTOM,
    )
    batch = engine.generate("demo", request)
    for record in batch["opportunities"][:3]:
        print(f"  d{record['pivot_depth']}  {record['title']}")
        print(f"      centroid distance {record['centroid_distance']:.3f}")

    parent = batch["opportunities"][0]
    print(f"\npivoting on: {parent['title']}\n")
    pivoted = engine.pivot("demo", parent["opportunity_id"], request)
    for record in pivoted["opportunities"][:3]:
        print(f"  d{record['pivot_depth']}  {record['title']}")
        print(f"      parent {record['parent_opportunity_id']}")

    depths = {}
    for opp in engine.store.list_opportunities("demo"):
        depths[opp.pivot_depth] = depths.get(opp.pivot_depth, 0) + 1
    print(f"\nopportunities by pivot depth: {depths}")


if __name__ == "__main__":
    main()

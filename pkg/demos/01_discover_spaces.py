"""Walkthrough: from raw documents to described opportunity spaces.

Runs entirely offline (hash embeddings + mock text generation). Creates
a throwaway project store under ./demo-store.
"""

import random
import shutil
from pathlib import Path

from oppgen import EngineConfig, ProjectEngine, ProjectStore

STORE = Path("./demo-store")

# six themes, one synthetic "report" per pair of themes
THEMES = {
    "harbour": "pier fishing boats tides moorings quay lighthouse nets catch trawler",
    "streets": "shopfront wayfinding parklet vendor evening signage mural market lane footfall",
    "visitors": "hotel occupancy bookings season pass museums tours festival heritage cookery",
    "skills": "training apprentices chefs rota recruitment wages college placements careers",
    "energy": "solar panels heating insulation retrofit meters storage tariffs efficiency grid",
    "transport": "buses cycling routes parking ferries timetable connections station shuttle fares",
}

SENTENCES = (
    "The working group reviewed progress on {a} and {b} this quarter.",
    "Local partners propose linking {a} with {b} to serve residents better.",
    "Funding for {a} depends on the pilot covering {b} as well.",
    "Visitors asked about {a}, while operators worry about {b}.",
    "A survey ranked {a} above {b} for investment next year.",
    "The council will trial {a} alongside {b} over the winter.",
)


def build_documents(seed: int = 3) -> dict[str, str]:
    rng = random.Random(seed)
    docs: dict[str, str] = {}
    names = list(THEMES)
    for i in range(0, len(names), 2):
        paragraphs = []
        for name in names[i : i + 2]:
            words = THEMES[name].split()
            for _ in range(4):
                sentences = [f"Notes on the {name} programme."]
                while sum(len(s.split()) for s in sentences) < 110:
                    pattern = rng.choice(SENTENCES)
                    sentences.append(
                        pattern.format(a=rng.choice(words), b=rng.choice(words))
                    )
                paragraphs.append(" ".join(sentences))
        docs[f"report_{i // 2}.txt"] = "\n\n".join(paragraphs)
    return docs


def main() -> None:
    if STORE.exists():
        shutil.rmtree(STORE)
    engine = ProjectEngine(ProjectStore(STORE))
    engine.create_project("demo", EngineConfig(seed=1))
    for name, text in build_documents().items():
        engine.upload_asset("demo", name, text.encode("utf-8"))

    print("processing assets ...")
    summary = engine.process_assets("demo")
    print(f"  {summary['total_chunks']} chunks from {summary['assets']} assets")

    print("discovering spaces ...")
    for granularity, info in engine.discover("demo").items():
        marker = (
            "unreachable (corpus too small)"
            if info["unreachable"]
            else f"{info['spaces']} spaces"
        )
        print(f"  {granularity:8s} {marker}")

    print("describing spaces with the mock generator ...")
    engine.describe_spaces("demo")
    gset = engine.store.load_granularity_set("demo", "broad")
    for space in gset.spaces:
        terms = ", ".join(t.term for t in space.topic_terms[:5])
        print(f"\n[{space.space_id}] {space.label}")
        print(f"  top terms: {terms}")
        print(f"  {space.description[:160]}...")


if __name__ == "__main__":
    main()

"""Writes the bundled collaboration-style sample graph (56 vertices, 316 edges).

Edges come from overlapping "papers": small author groups drawn with a
preference for already-active authors, each group contributing a clique.
"""
import random
import sys

VERTICES = 56
EDGES = 316


def build(seed: int = 7) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    activity = [1] * VERTICES
    edges: set[tuple[int, int]] = set()
    # Every author joins through one coauthor first.
    for v in range(1, VERTICES):
        u = rng.randrange(v)
        edges.add((u, v))
        activity[u] += 1
    while len(edges) < EDGES:
        size = rng.choice([2, 2, 3, 3, 3, 4, 4, 5])
        group: set[int] = set()
        while len(group) < size:
            group.add(rng.choices(range(VERTICES), weights=activity)[0])
        members = sorted(group)
        for i, u in enumerate(members):
            activity[u] += 1
            for v in members[i + 1:]:
                if len(edges) < EDGES:
                    edges.add((u, v))
    return sorted(edges)


def main() -> None:
    edges = build()
    out = sys.stdout
    out.write("# Synthetic collaboration-style graph (undirected)\n")
    out.write(f"# Nodes: {VERTICES} Edges: {len(edges)}\n")
    out.write("# FromNodeId\tToNodeId\n")
    for u, v in edges:
        out.write(f"{u}\t{v}\n")


if __name__ == "__main__":
    main()

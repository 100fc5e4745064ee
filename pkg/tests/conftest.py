import random

import pytest

from tildea import Arrow, Quiver


def q(vertex_spec, arrow_spec):
    """Shorthand builder: q("1 2 3", "a:1>2 b:2>3")."""
    vertices = vertex_spec.split()
    arrows = []
    for item in arrow_spec.split():
        aid, rest = item.split(":")
        src, tgt = rest.split(">")
        arrows.append(Arrow(aid, src, tgt))
    return Quiver(vertices, arrows)


def random_quiver(rng, max_vertices=10, max_mult=2, density=0.35):
    """Random loop-free 2-cycle-free quiver with at least one vertex."""
    n = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(n)]
    arrows = []
    counter = 0
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() >= density:
                continue
            src, tgt = (vertices[i], vertices[j]) if rng.random() < 0.5 else (vertices[j], vertices[i])
            for _ in range(rng.randint(1, max_mult)):
                arrows.append(Arrow(f"e{counter}", src, tgt))
                counter += 1
    return Quiver(vertices, arrows)


def relabelled(rng, quiver, prefix="w"):
    labels = [f"{prefix}{i}" for i in range(len(quiver.vertices))]
    rng.shuffle(labels)
    return quiver.relabel(dict(zip(quiver.vertices, labels))), dict(zip(quiver.vertices, labels))


@pytest.fixture
def rng():
    return random.Random(20240811)

import hypothesis.strategies as st

from src.domain.poset import LabeledPoset


@st.composite
def chain_component_posets(draw, min_size: int = 1, max_size: int = 5) -> LabeledPoset:
    size = draw(st.integers(min_value=min_size, max_value=max_size))
    labels = draw(st.permutations(range(1, size + 1)))
    cuts = draw(st.lists(st.booleans(), min_size=max(size - 1, 0), max_size=max(size - 1, 0)))
    groups = [[labels[0]]] if labels else []
    for label, cut in zip(labels[1:], cuts):
        if cut:
            groups.append([label])
        else:
            groups[-1].append(label)
    # each group is read top first
    pairs = [(g[j + 1], g[j]) for g in groups for j in range(len(g) - 1)]
    return LabeledPoset.build(size, pairs)


@st.composite
def permutations(draw, min_size: int = 0, max_size: int = 7) -> tuple[int, ...]:
    size = draw(st.integers(min_value=min_size, max_value=max_size))
    return tuple(draw(st.permutations(range(1, size + 1))))

"""Link-word disambiguation.

Commas and coordinating conjunctions are classified by a small
feed-forward network over one-hot POS windows (half the window before
the link word, half after).  Prepositions are classified by wordform
lookup alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    COMMA_TAG,
    CONJUNCTION_TAG,
    PENN_TAGS,
    PREPOSITION_TAG,
    TAG_INDEX,
    LinkWordRole,
    ROLE_BY_NAME,
)

MODEL_HEADER = "clausecut-roles/1"

COMMA_ROLE_ORDER = (
    LinkWordRole.PROSODIC_COMMA,
    LinkWordRole.LOGICAL_CONJUNCTIVE_COMMA,
    LinkWordRole.CLAUSAL_CONJUNCTIVE_COMMA,
)
CONJUNCTION_ROLE_ORDER = (
    LinkWordRole.LOGICAL_CONJUNCTION,
    LinkWordRole.CLAUSAL_CONJUNCTION,
)

DEFAULT_SUBORDINATING = frozenset({
    "although", "if", "while", "that", "when", "until", "unless",
    "because", "since", "whereas", "before", "after",
})
DEFAULT_GROUP_FORMING = frozenset({"of"})


@dataclass(frozen=True)
class WindowFeatures:
    """0/1 vector with one block of |tagset| inputs per neighbour
    position; exactly one bit set per in-bounds position, padding blocks
    all zero."""

    values: tuple[int, ...]
    window_size: int

    @property
    def set_bits(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.values) if v)

    def block(self, k: int) -> tuple[int, ...]:
        n = len(PENN_TAGS)
        return self.values[k * n:(k + 1) * n]


def extract_window_features(sentence, position: int, window_size: int) -> WindowFeatures:
    """One-hot POS features for the window_size/2 tokens before and
    after ``position``.  Out-of-bounds positions give all-zero blocks."""
    if window_size % 2 != 0 or window_size <= 0:
        raise ValueError(f"window size must be a positive even integer, got {window_size}")
    half = window_size // 2
    n = len(PENN_TAGS)
    values = [0] * (window_size * n)
    offsets = list(range(-half, 0)) + list(range(1, half + 1))
    for block, off in enumerate(offsets):
        j = position + off
        if 0 <= j < len(sentence):
            values[block * n + TAG_INDEX[sentence[j].pos]] = 1
    return WindowFeatures(tuple(values), window_size)


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.5
    epochs: int = 300
    hidden: int = 16
    seed: int = 13


@dataclass(frozen=True)
class RoleClassifier:
    """Single-hidden-layer network with logistic activations and one
    output per role, trained by per-example gradient descent on squared
    error.  Deterministic for a fixed seed and example order; immutable
    once trained."""

    roles: tuple[LinkWordRole, ...]
    window_size: int
    config: TrainConfig
    w1: np.ndarray  # (inputs, hidden)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden, outputs)
    b2: np.ndarray  # (outputs,)

    @property
    def input_size(self) -> int:
        return self.window_size * len(PENN_TAGS)

    def outputs(self, features: WindowFeatures) -> np.ndarray:
        if len(features.values) != self.input_size:
            raise ValueError(
                f"feature length {len(features.values)} does not match "
                f"input layout {self.input_size}"
            )
        hidden = _sigmoid(self.w1[list(features.set_bits)].sum(axis=0) + self.b1)
        return _sigmoid(hidden @ self.w2 + self.b2)

    def predict(self, features: WindowFeatures) -> LinkWordRole:
        out = self.outputs(features)
        best = 0
        for k in range(1, len(self.roles)):
            if out[k] > out[best]:
                best = k
        return self.roles[best]


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def train_classifier(
    examples: list[tuple[WindowFeatures, LinkWordRole]],
    roles: tuple[LinkWordRole, ...],
    config: TrainConfig = TrainConfig(),
) -> RoleClassifier:
    """Fit the network on (features, role) pairs.  Requires at least one
    example of every role in the output layout."""
    if not examples:
        raise ValueError("no training examples")
    seen = {role for _, role in examples}
    missing = [r.value for r in roles if r not in seen]
    if missing:
        raise ValueError("no training examples for roles: " + ", ".join(missing))
    for feats, role in examples:
        if role not in roles:
            raise ValueError(f"example role {role.value} not in output layout")

    input_size = examples[0][0].window_size * len(PENN_TAGS)
    for feats, _ in examples:
        if len(feats.values) != input_size:
            raise ValueError("examples disagree on feature dimensions")

    rng = np.random.RandomState(config.seed)
    w1 = rng.uniform(-0.5, 0.5, (input_size, config.hidden))
    b1 = rng.uniform(-0.5, 0.5, config.hidden)
    w2 = rng.uniform(-0.5, 0.5, (config.hidden, len(roles)))
    b2 = rng.uniform(-0.5, 0.5, len(roles))

    role_pos = {r: k for k, r in enumerate(roles)}
    data = [
        (list(f.set_bits), np.eye(len(roles))[role_pos[r]])
        for f, r in examples
    ]
    lr = config.learning_rate
    for _ in range(config.epochs):
        for idx, target in data:
            h_in = w1[idx].sum(axis=0) + b1
            h = _sigmoid(h_in)
            o = _sigmoid(h @ w2 + b2)
            d_out = (o - target) * o * (1.0 - o)
            d_hid = (d_out @ w2.T) * h * (1.0 - h)
            w2 -= lr * np.outer(h, d_out)
            b2 -= lr * d_out
            # Input is one-hot, so only the active rows of w1 move.
            w1[idx] -= lr * d_hid
            b1 -= lr * d_hid
    return RoleClassifier(
        roles=roles,
        window_size=examples[0][0].window_size,
        config=config,
        w1=w1, b1=b1, w2=w2, b2=b2,
    )


def classify_comma(model: RoleClassifier, sentence, position: int) -> LinkWordRole:
    if sentence[position].pos != COMMA_TAG:
        raise ValueError(
            f"token {position} ({sentence[position].form!r}) is not a comma"
        )
    feats = extract_window_features(sentence, position, model.window_size)
    return model.predict(feats)


def classify_conjunction(model: RoleClassifier, sentence, position: int) -> LinkWordRole:
    if sentence[position].pos != CONJUNCTION_TAG:
        raise ValueError(
            f"token {position} ({sentence[position].form!r}) is not tagged CC"
        )
    feats = extract_window_features(sentence, position, model.window_size)
    return model.predict(feats)


@dataclass(frozen=True)
class PrepositionLexicon:
    """Wordform lists deciding preposition roles.  The two sets are
    disjoint and lowercase."""

    subordinating: frozenset = DEFAULT_SUBORDINATING
    group_forming: frozenset = DEFAULT_GROUP_FORMING

    def __post_init__(self):
        overlap = self.subordinating & self.group_forming
        if overlap:
            raise ValueError(
                "wordforms in both lexicon sets: " + ", ".join(sorted(overlap))
            )
        for word in list(self.subordinating) + list(self.group_forming):
            if word != word.lower():
                raise ValueError(f"lexicon entries must be lowercase: {word!r}")


def classify_preposition(lexicon: PrepositionLexicon, wordform: str) -> LinkWordRole:
    if wordform.lower() in lexicon.subordinating:
        return LinkWordRole.SUBORDINATING_PREPOSITION
    return LinkWordRole.NON_SEGMENTING_PREPOSITION


@dataclass(frozen=True)
class RoleModels:
    """Everything the disambiguation stage needs."""

    comma: RoleClassifier
    conjunction: RoleClassifier
    lexicon: PrepositionLexicon


def disambiguate(models: RoleModels, tokens) -> tuple[LinkWordRole, ...]:
    """Assign exactly one role to every token: classifier roles for
    commas and conjunctions, lexicon roles for prepositions,
    NOT_LINK_WORD for everything else."""
    roles = []
    for i, token in enumerate(tokens):
        if token.pos == COMMA_TAG:
            roles.append(classify_comma(models.comma, tokens, i))
        elif token.pos == CONJUNCTION_TAG:
            roles.append(classify_conjunction(models.conjunction, tokens, i))
        elif token.pos == PREPOSITION_TAG:
            roles.append(classify_preposition(models.lexicon, token.form))
        else:
            roles.append(LinkWordRole.NOT_LINK_WORD)
    return tuple(roles)


def train_from_corpus(
    corpus,
    window_size: int = 8,
    config: TrainConfig = TrainConfig(),
    base_lexicon: PrepositionLexicon | None = None,
) -> RoleModels:
    """Build both classifiers from gold ROLE annotations and extend the
    subordinating lexicon with IN forms labelled as subordinating."""
    comma_examples = []
    conj_examples = []
    subordinating = set(
        (base_lexicon or PrepositionLexicon()).subordinating
    )
    group_forming = set(
        (base_lexicon or PrepositionLexicon()).group_forming
    )
    for sentence in corpus:
        for i, token in enumerate(sentence.tokens):
            role = sentence.roles[i]
            if role is None:
                continue
            feats = None
            if token.pos == COMMA_TAG and role in COMMA_ROLE_ORDER:
                feats = extract_window_features(sentence.tokens, i, window_size)
                comma_examples.append((feats, role))
            elif token.pos == CONJUNCTION_TAG and role in CONJUNCTION_ROLE_ORDER:
                feats = extract_window_features(sentence.tokens, i, window_size)
                conj_examples.append((feats, role))
            elif token.pos == PREPOSITION_TAG:
                form = token.form.lower()
                if role is LinkWordRole.SUBORDINATING_PREPOSITION:
                    subordinating.add(form)
                    group_forming.discard(form)
                elif role is LinkWordRole.NON_SEGMENTING_PREPOSITION:
                    subordinating.discard(form)
    comma = train_classifier(comma_examples, COMMA_ROLE_ORDER, config)
    conjunction = train_classifier(conj_examples, CONJUNCTION_ROLE_ORDER, config)
    lexicon = PrepositionLexicon(frozenset(subordinating), frozenset(group_forming))
    return RoleModels(comma, conjunction, lexicon)


def _write_array(f, name, arr) -> None:
    flat = np.asarray(arr, dtype=float).reshape(-1)
    shape = " ".join(str(d) for d in np.asarray(arr).shape)
    f.write("array\t%s\t%s\n" % (name, shape))
    for v in flat:
        f.write("%s\n" % repr(float(v)))


def _save_classifier(f, kind: str, model: RoleClassifier) -> None:
    f.write("classifier\t%s\n" % kind)
    f.write("roles\t%s\n" % " ".join(r.value for r in model.roles))
    f.write("window_size\t%d\n" % model.window_size)
    f.write("tagset\t%s\n" % " ".join(PENN_TAGS))
    c = model.config
    f.write(
        "config\t%s\t%d\t%d\t%d\n"
        % (repr(c.learning_rate), c.epochs, c.hidden, c.seed)
    )
    _write_array(f, "w1", model.w1)
    _write_array(f, "b1", model.b1)
    _write_array(f, "w2", model.w2)
    _write_array(f, "b2", model.b2)


def save_role_models(models: RoleModels, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(MODEL_HEADER + "\n")
        _save_classifier(f, "comma", models.comma)
        _save_classifier(f, "conjunction", models.conjunction)
        f.write("lexicon\tsubordinating\t%s\n" % " ".join(sorted(models.lexicon.subordinating)))
        f.write("lexicon\tgroup_forming\t%s\n" % " ".join(sorted(models.lexicon.group_forming)))


def _read_array(lines, pos):
    fields = lines[pos].split("\t")
    if fields[0] != "array":
        raise ValueError(f"expected array record, got {lines[pos]!r}")
    shape = tuple(int(d) for d in fields[2].split())
    count = int(np.prod(shape)) if shape else 1
    values = [float(lines[pos + 1 + k]) for k in range(count)]
    return np.array(values, dtype=float).reshape(shape), pos + 1 + count


def _read_classifier(lines, pos):
    roles = tuple(ROLE_BY_NAME[name] for name in lines[pos].split("\t")[1].split())
    window_size = int(lines[pos + 1].split("\t")[1])
    tagset = tuple(lines[pos + 2].split("\t")[1].split())
    if tagset != PENN_TAGS:
        raise ValueError("model tagset does not match this build's tagset")
    cf = lines[pos + 3].split("\t")
    config = TrainConfig(float(cf[1]), int(cf[2]), int(cf[3]), int(cf[4]))
    w1, pos = _read_array(lines, pos + 4)
    b1, pos = _read_array(lines, pos)
    w2, pos = _read_array(lines, pos)
    b2, pos = _read_array(lines, pos)
    return RoleClassifier(roles, window_size, config, w1, b1, w2, b2), pos


def load_role_models(path) -> RoleModels:
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines or lines[0] != MODEL_HEADER:
        raise ValueError(f"not a roles model file: {path}")
    classifiers = {}
    subordinating = DEFAULT_SUBORDINATING
    group_forming = DEFAULT_GROUP_FORMING
    pos = 1
    while pos < len(lines):
        fields = lines[pos].split("\t")
        if fields[0] == "classifier":
            model, pos = _read_classifier(lines, pos + 1)
            classifiers[fields[1]] = model
        elif fields[0] == "lexicon":
            words = frozenset(fields[2].split()) if len(fields) > 2 else frozenset()
            if fields[1] == "subordinating":
                subordinating = words
            else:
                group_forming = words
            pos += 1
        else:
            raise ValueError(f"unknown record {fields[0]!r} in roles model")
    if "comma" not in classifiers or "conjunction" not in classifiers:
        raise ValueError("roles model is missing a classifier section")
    return RoleModels(
        classifiers["comma"],
        classifiers["conjunction"],
        PrepositionLexicon(subordinating, group_forming),
    )

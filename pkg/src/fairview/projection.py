"""Embedding-space to 2D projection for the overview plot."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pipeline import EmbeddingMatrix


class ProjectionError(ValueError):
    pass


@dataclass(frozen=True)
class Point2D:
    comment_id: str
    x: float
    y: float


def _linear_projection(vectors: np.ndarray) -> np.ndarray:
    """Variance-maximizing linear projection (top-2 principal directions).

    Seed-independent by construction. Component signs are pinned so the
    layout is reproducible across runs: the entry of largest magnitude in
    each direction is made positive.
    """
    if vectors.shape[1] < 2:
        raise ProjectionError("linear projection needs embedding dim >= 2")
    centered = vectors - vectors.mean(axis=0, keepdims=True)
    if centered.shape[0] == 1:
        return np.zeros((1, 2))
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = vt[:2].copy()
    if comps.shape[0] < 2:
        comps = np.vstack([comps, np.zeros((2 - comps.shape[0], vectors.shape[1]))])
    for i in range(2):
        j = int(np.argmax(np.abs(comps[i])))
        if comps[i, j] < 0:
            comps[i] = -comps[i]
    return centered @ comps.T


def _neighbor_projection(vectors: np.ndarray, seed: int) -> np.ndarray:
    import umap  # noqa: F401  (optional dependency)

    reducer = umap.UMAP(n_components=2, random_state=seed, metric="cosine")
    return np.asarray(reducer.fit_transform(vectors), dtype=np.float64)


def project_2d(
    embeddings: EmbeddingMatrix, seed: int = 0, method: str = "auto"
) -> list[Point2D]:
    """One finite 2D point per comment, deterministic given (embeddings, seed).

    ``method``: "neighbor" uses the nonlinear neighbor-embedding reducer
    (needs the optional umap package), "linear" the PCA-style fallback,
    "auto" prefers neighbor when importable. The seed only affects the
    neighbor method.
    """
    if len(embeddings.ids) == 0:
        raise ProjectionError("no vectors to project")

    coords = None
    if method in ("auto", "neighbor") and len(embeddings.ids) > 2:
        try:
            coords = _neighbor_projection(embeddings.vectors, seed)
        except ImportError:
            if method == "neighbor":
                raise ProjectionError("neighbor projection requires the umap package")
            coords = None
    if coords is None:
        coords = _linear_projection(embeddings.vectors)

    if not np.all(np.isfinite(coords)):
        raise ProjectionError("projection produced non-finite coordinates")
    return [
        Point2D(cid, float(coords[i, 0]), float(coords[i, 1]))
        for i, cid in enumerate(embeddings.ids)
    ]

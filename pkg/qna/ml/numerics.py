"""
Matrix kernels for similarity maps and topics: truncated SVD, classical MDS,
NMF and PCA
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse
from sklearn.decomposition import PCA
from sklearn.metrics.pairwise import cosine_distances, euclidean_distances
from sklearn.utils.extmath import randomized_svd

from ..errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, sparse.spmatrix]
NMF_EPS = 1e-12


def _dense(m: MatrixLike) -> np.ndarray:
    return m.toarray().astype(float) if sparse.issparse(m) else np.asarray(m, dtype=float)


# ============== Truncated SVD ==============

@dataclass
class SVDResult:
    U: np.ndarray
    s: np.ndarray
    V: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.s) @ self.V.T


def truncated_svd(m: MatrixLike, k: int, seed: int = 0, n_iter: int = 7) -> SVDResult:
    """
    Leading k singular triplets by randomized range finding.

    Singular values come back non-increasing; U and V have orthonormal columns.
    """
    rows, cols = m.shape
    if not 1 <= k <= min(rows, cols):
        raise InvalidArgumentError(f"k must be in [1, {min(rows, cols)}], got {k}")
    matrix = m.astype(float) if sparse.issparse(m) else np.asarray(m, dtype=float)
    U, s, VT = randomized_svd(matrix, n_components=k, n_iter=n_iter, random_state=seed)
    return SVDResult(U=U, s=s, V=VT.T)


# ============== Classical MDS ==============

@dataclass
class EmbeddingMap:
    """Low-dimensional coordinates reproducing a distance matrix"""
    coordinates: np.ndarray
    stress: float
    eigenvalues: np.ndarray = field(default_factory=lambda: np.zeros(0))


def classical_mds(distances: np.ndarray, d: int = 2) -> EmbeddingMap:
    """
    Torgerson scaling: double-center the squared distances and keep the top-d
    eigenvectors scaled by the root eigenvalues.

    Negative eigenvalues are clamped to zero; stress is
    sqrt(sum((D - D_hat)^2) / sum(D^2)), 0 for an all-zero input. Each axis is
    oriented so that its largest-magnitude coordinate is positive.
    """
    D = np.asarray(distances, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise InvalidArgumentError(f"distance matrix must be square, got shape {D.shape}")
    n = D.shape[0]
    if not np.allclose(D, D.T, atol=1e-9):
        raise InvalidArgumentError("distance matrix must be symmetric")
    if np.any(np.abs(np.diag(D)) > 1e-9) or np.any(D < 0):
        raise InvalidArgumentError("distances must be non-negative with a zero diagonal")
    if not 1 <= d <= n - 1:
        raise InvalidArgumentError(f"d must be in [1, {n - 1}], got {d}")

    H = np.eye(n) - np.ones((n, n)) / n
    B = -H @ (D ** 2) @ H / 2
    evals, evecs = np.linalg.eigh((B + B.T) / 2)
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]

    clamped = np.clip(evals[:d], 0, None)
    if np.any(evals[:d] < -1e-9 * max(abs(evals[0]), 1.0)):
        logger.warning("⚠ Negative eigenvalues clamped, distances are not Euclidean")
    coords = evecs[:, :d] * np.sqrt(clamped)
    for j in range(d):
        pivot = np.argmax(np.abs(coords[:, j]))
        if coords[pivot, j] < 0:
            coords[:, j] = -coords[:, j]

    total = np.sum(D ** 2)
    residual = np.sum((D - euclidean_distances(coords)) ** 2)
    stress = float(np.sqrt(residual / total)) if total > 0 else 0.0
    return EmbeddingMap(coordinates=coords, stress=stress, eigenvalues=evals)


def lsa_distance_map(
    counts: MatrixLike,
    n_components: int = 40,
    dims: int = 2,
    seed: int = 0,
) -> Tuple[EmbeddingMap, np.ndarray]:
    """
    Author similarity map: LSA document vectors, cosine distances, then MDS.

    n_components is lowered to what the matrix rank allows. Returns the map
    and the distance matrix it was built from.
    """
    n_docs = counts.shape[0]
    if n_docs < 2:
        raise InvalidArgumentError("a similarity map needs at least two documents")
    k = min(n_components, *counts.shape)
    if k < n_components:
        logger.info(f"LSA components lowered from {n_components} to {k}")
    svd = truncated_svd(counts, k, seed=seed)
    doc_vectors = svd.U * svd.s
    D = cosine_distances(doc_vectors)
    D = np.clip((D + D.T) / 2, 0, None)
    np.fill_diagonal(D, 0.0)
    return classical_mds(D, min(dims, n_docs - 1)), D


# ============== NMF ==============

@dataclass
class TopicModel:
    """NMF factors; doc_topic rows sum to 1"""
    doc_topic: np.ndarray
    topic_term: np.ndarray
    top_terms: List[List[str]]
    doc_weights: np.ndarray
    n_iter: int = 0
    errors: List[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.topic_term.shape[0]

    def reconstruction_error(self, v: MatrixLike) -> float:
        return float(np.linalg.norm(_dense(v) - self.doc_weights @ self.topic_term))


def nmf(
    v: MatrixLike,
    k: int = 20,
    max_iters: int = 500,
    tol: float = 1e-6,
    seed: int = 0,
    terms: Optional[Sequence[str]] = None,
    top_n: int = 20,
    track_errors: bool = False,
) -> TopicModel:
    """
    Frobenius NMF with multiplicative updates.

    Stops after max_iters or when the relative error improvement drops below
    tol. With track_errors the error before the first and after every
    iteration is kept on the result.
    """
    V = _dense(v)
    if V.ndim != 2 or V.size == 0:
        raise InvalidArgumentError("nmf needs a non-empty 2-D matrix")
    if not np.all(np.isfinite(V)):
        raise InvalidArgumentError("matrix contains NaN or infinite values")
    if np.any(V < 0):
        raise InvalidArgumentError("matrix must be non-negative")
    if k < 1:
        raise InvalidArgumentError(f"k must be >= 1, got {k}")

    n, m = V.shape
    rng = np.random.default_rng(seed)
    scale = V.mean() / k
    W = rng.uniform(size=(n, k)) * scale
    H = rng.uniform(size=(k, m)) * scale

    error = np.linalg.norm(V - W @ H)
    errors = [float(error)] if track_errors else []
    iteration = 0
    for iteration in range(1, max_iters + 1):
        H *= (W.T @ V) / (W.T @ W @ H + NMF_EPS)
        W *= (V @ H.T) / (W @ (H @ H.T) + NMF_EPS)
        previous, error = error, np.linalg.norm(V - W @ H)
        if track_errors:
            errors.append(float(error))
        if previous > 0 and (previous - error) / previous < tol:
            break
        if error == 0:
            break

    sums = W.sum(axis=1, keepdims=True)
    doc_topic = np.where(sums > 0, W / np.where(sums > 0, sums, 1), 1.0 / k)

    labels = list(terms) if terms is not None else [str(j) for j in range(m)]
    top = [[labels[j] for j in np.argsort(-H[t], kind="stable")[:top_n]] for t in range(k)]
    logger.info(f"✓ NMF: k={k}, {iteration} iterations, error {error:.6g}")
    return TopicModel(doc_topic=doc_topic, topic_term=H, top_terms=top, doc_weights=W, n_iter=iteration, errors=errors)


def topic_coverage(doc_topic: np.ndarray, threshold: float = 0.01) -> np.ndarray:
    """Number of topics per document whose share exceeds threshold"""
    return (np.asarray(doc_topic) > threshold).sum(axis=1)


# ============== PCA ==============

@dataclass
class PCAResult:
    components: np.ndarray
    explained_variance: np.ndarray
    explained_variance_ratio: np.ndarray
    coordinates: np.ndarray
    mean: np.ndarray


def pca(points: np.ndarray, k: int) -> PCAResult:
    """Principal components of column-centered data; components are rows"""
    X = np.asarray(points, dtype=float)
    if X.ndim != 2:
        raise InvalidArgumentError(f"points must be a 2-D array, got shape {X.shape}")
    n, m = X.shape
    if not 1 <= k <= min(n, m):
        raise InvalidArgumentError(f"k must be in [1, {min(n, m)}], got {k}")
    model = PCA(n_components=k, svd_solver="full")
    coords = model.fit_transform(X)
    return PCAResult(
        components=model.components_,
        explained_variance=model.explained_variance_,
        explained_variance_ratio=model.explained_variance_ratio_,
        coordinates=coords,
        mean=model.mean_,
    )

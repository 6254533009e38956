"""scikit-learn style front end for the recovery pipeline.

All estimators work on a fixed design: ``y`` holds the modulo samples at
``x_i = i/n`` in grid order, so fitting needs no ``X``.

>>> from modrecover import ModuloRecovery
>>> est = ModuloRecovery(denoiser="lp", order=2).fit(y)      # doctest: +SKIP
>>> est.predict([0.25, 0.5])                                  # doctest: +SKIP
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_modulo_samples, check_unit_points
from .knn_denoiser import KnnConfig, knn_denoise
from .lp_denoiser import LpConfig, denoise, practical_bandwidth
from .quasi_interpolant import build_qi
from .signal_model import ModuloSamples, UniformGrid
from .unwrap import unwrap

__all__ = ["LocalPolynomialDenoiser", "KNNDenoiser", "ModuloRecovery"]


class _CircleDenoiserMixin(TransformerMixin):
    def _samples(self, y):
        y = check_modulo_samples(y)
        return ModuloSamples(UniformGrid(y.size), y)

    def _check_length(self, y):
        if y.size != self.n_samples_:
            raise ValueError(f"fitted for n={self.n_samples_} samples, got {y.size}")

    def fit(self, y, _=None):
        self._fit(self._samples(y).grid.n)
        return self

    def denoise(self, y):
        """Full denoising result (raw, projected and phase estimates)."""
        check_is_fitted(self)
        samples = self._samples(y)
        self._check_length(samples.values)
        return self._denoise(samples)

    def transform(self, y):
        """Denoised fractional phases in [0, 1)."""
        return self.denoise(y).phases

    def fit_transform(self, y, _=None, **fit_params):
        return self.fit(y).transform(y)


class LocalPolynomialDenoiser(_CircleDenoiserMixin, BaseEstimator):
    """LP(``order``) smoothing of the circle-lifted samples.

    Parameters
    ----------
    order : int, default=2
        Local polynomial order ``l``.
    bandwidth : float or None
        Kernel bandwidth. When None it is set at fit time to
        ``bandwidth_const * (log n / n) ** (beta / (2 beta + 1))``.
    bandwidth_const, beta : float
        Constants of the default bandwidth rule.
    kernel : {"epanechnikov", "box", "triangular"}
    min_eig_threshold : float
        Floor on the smallest eigenvalue of the local design matrix; lower
        values raise ``IllConditioned``.
    """

    def __init__(self, order=2, bandwidth=None, bandwidth_const=0.1, beta=2.4,
                 kernel="epanechnikov", min_eig_threshold=1e-8):
        self.order = order
        self.bandwidth = bandwidth
        self.bandwidth_const = bandwidth_const
        self.beta = beta
        self.kernel = kernel
        self.min_eig_threshold = min_eig_threshold

    def _fit(self, n):
        b = self.bandwidth if self.bandwidth is not None else practical_bandwidth(n, self.beta, self.bandwidth_const)
        self.config_ = LpConfig(self.order, b, self.kernel, self.min_eig_threshold)
        self.bandwidth_ = b
        self.n_samples_ = n

    def _denoise(self, samples):
        return denoise(samples, self.config_)


class KNNDenoiser(_CircleDenoiserMixin, BaseEstimator):
    """Average of the ``k`` nearest lifted samples, projected to the circle.

    ``k=None`` picks ``ceil(0.09 n^(2/3) (log n)^(1/3))``.
    """

    def __init__(self, k=None):
        self.k = k

    def _fit(self, n):
        self.config_ = KnnConfig(k=self.k, auto_rule=self.k is None)
        self.k_ = self.config_.resolve(n)
        self.n_samples_ = n

    def _denoise(self, samples):
        return knn_denoise(samples, self.config_)


class ModuloRecovery(BaseEstimator):
    """Denoise, unwrap and quasi-interpolate modulo samples.

    After ``fit(y)`` the estimator exposes ``phases_`` (denoised modulo
    values), ``unwrapped_`` (grid estimates up to a global integer) and
    ``recovered_`` (continuous estimate); ``predict`` evaluates the latter.

    Parameters
    ----------
    denoiser : {"lp", "knn"}
    order, bandwidth, bandwidth_const, beta, kernel, min_eig_threshold
        Passed to :class:`LocalPolynomialDenoiser`.
    k : int or None
        Passed to :class:`KNNDenoiser`.
    qi_degree : int or None
        Degree of the quasi-interpolant; defaults to ``order``.
    """

    def __init__(self, denoiser="lp", order=2, bandwidth=None, bandwidth_const=0.1, beta=2.4,
                 kernel="epanechnikov", min_eig_threshold=1e-8, k=None, qi_degree=None):
        self.denoiser = denoiser
        self.order = order
        self.bandwidth = bandwidth
        self.bandwidth_const = bandwidth_const
        self.beta = beta
        self.kernel = kernel
        self.min_eig_threshold = min_eig_threshold
        self.k = k
        self.qi_degree = qi_degree

    def _make_denoiser(self):
        if self.denoiser == "lp":
            return LocalPolynomialDenoiser(self.order, self.bandwidth, self.bandwidth_const, self.beta,
                                           self.kernel, self.min_eig_threshold)
        if self.denoiser == "knn":
            return KNNDenoiser(self.k)
        raise ValueError(f"denoiser must be 'lp' or 'knn', got {self.denoiser!r}")

    def fit(self, y, _=None):
        y = check_modulo_samples(y)
        self.denoiser_ = self._make_denoiser().fit(y)
        self.denoised_ = self.denoiser_.denoise(y)
        self.grid_ = self.denoised_.grid
        self.phases_ = self.denoised_.phases
        self.unwrapped_ = unwrap(self.phases_, self.grid_).values
        degree = self.order if self.qi_degree is None else self.qi_degree
        self.recovered_ = build_qi(self.unwrapped_, degree)
        self.n_samples_ = y.size
        return self

    def predict(self, X):
        """Recovered function at points ``X`` in [0, 1], up to a global integer."""
        check_is_fitted(self)
        return np.asarray(self.recovered_(check_unit_points(X)))

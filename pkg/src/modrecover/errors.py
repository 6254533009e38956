class IllConditioned(ValueError):
    """The local design matrix is too close to singular at ``x``."""

    def __init__(self, min_eig, x=None, threshold=None):
        self.min_eig = float(min_eig)
        self.x = x
        self.threshold = threshold
        where = "" if x is None else f" at x={x:.6g}"
        floor = "" if threshold is None else f" < threshold {threshold:g}"
        super().__init__(f"local design matrix ill-conditioned{where}: min eigenvalue {self.min_eig:.3e}{floor}")


class InsufficientSamples(ValueError):
    """Not enough grid samples for the requested polynomial degree."""

"""Reference computations that do not go through the package's solver."""

import numpy as np


def poisson_disc(u, a, m=8192):
    """Harmonic extension of boundary data ``u(z)`` on the unit circle, at ``a``,
    by trapezoidal quadrature of the Poisson integral."""
    theta = 2 * np.pi * np.arange(m) / m
    z = np.exp(1j * theta)
    kernel = (1 - abs(a) ** 2) / np.abs(z - a) ** 2
    return np.mean(kernel * u(z))


class ConcentricAnnulus:
    """Mode-by-mode Dirichlet solver for ``r_in < |z| < r_out``.

    Each Fourier mode k != 0 is ``A r^k + B r^-k``; mode 0 is ``alpha + beta log r``.
    """

    def __init__(self, r_in, r_out, u_in, u_out, m=512, kmax=48):
        theta = 2 * np.pi * np.arange(m) / m
        Uin = np.fft.fft(u_in(r_in * np.exp(1j * theta))) / m
        Uout = np.fft.fft(u_out(r_out * np.exp(1j * theta))) / m
        modes = np.fft.fftfreq(m, 1.0 / m).astype(int)
        self.terms = []
        for i, k in enumerate(modes):
            if abs(k) > kmax:
                continue
            if k == 0:
                M = np.array([[1, np.log(r_in)], [1, np.log(r_out)]])
            else:
                M = np.array([[r_in ** k, r_in ** -k], [r_out ** k, r_out ** -k]], dtype=float)
            self.terms.append((k, np.linalg.solve(M, [Uin[i], Uout[i]])))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        r, th = np.abs(z), np.angle(z)
        out = np.zeros(z.shape, dtype=complex)
        for k, (A, B) in self.terms:
            if k == 0:
                out += (A + B * np.log(r))
            else:
                out += (A * r ** k + B * r ** -k) * np.exp(1j * k * th)
        return out

    @property
    def log_coefficient(self):
        return dict(self.terms)[0][1]


def dense_winding(F, circle_center, radius, orientation, m=200_000):
    """Winding by numpy's unwrap on a very dense sampling."""
    t = 2 * np.pi * np.arange(m + 1) / m
    z = circle_center + radius * np.exp(1j * orientation * t)
    ph = np.unwrap(np.angle(F(z)))
    return ph[-1] - ph[0]


def random_annulus_points(rng, n, r_in=0.5, r_out=1.0, pad=1e-3):
    r = np.sqrt(rng.uniform((r_in + pad) ** 2, (r_out - pad) ** 2, n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))

"""Pure-Python (numpy) versions of the hot kernels.

Same algorithms, same arithmetic order and same random stream as the compiled
module ``qfano._kernels``; used when the extension is not built.
"""
import numpy as np

EPS = np.finfo(float).eps

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_CHUNK = 1 << 18


def jacobi_eigh(a, max_sweeps):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with unsorted eigenvalues;
    ``sweeps == -1`` signals that the sweep cap was hit.
    """
    a = np.array(a, dtype=np.complex128, order="C")
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    floor = EPS * EPS * max(np.sqrt(np.sum(np.abs(a) ** 2)), 1e-300)
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                mag = abs(b)
                app = a[p, p].real
                aqq = a[q, q].real
                if mag <= floor or mag <= EPS * np.sqrt(abs(app * aqq)):
                    continue
                rotated = True
                ph = b / mag
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                phc = ph.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - (s * phc) * colq
                a[:, q] = s * colp + (c * phc) * colq
                a[p, :] = a[:, p].conjugate()
                a[q, :] = a[:, q].conjugate()
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - (s * phc) * vq
                v[:, q] = s * vp + (c * phc) * vq
        if not rotated:
            return np.diag(a).real.copy(), v, sweep
    return np.diag(a).real.copy(), v, -1


def _uniforms(seed, first, count):
    # splitmix64 output for counter values first+1 .. first+count
    k = np.arange(first + 1, first + count + 1, dtype=np.uint64)
    z = np.uint64(seed) + k * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def count_errors(prior_cdf, row_cdf, seed, start, count):
    """Count trials ``start .. start+count-1`` whose outcome differs from the label."""
    prior_cdf = np.ascontiguousarray(prior_cdf, dtype=np.float64)
    row_cdf = np.ascontiguousarray(row_cdf, dtype=np.float64)
    n_states = prior_cdf.shape[0]
    n_out = row_cdf.shape[1]
    errors = 0
    done = 0
    with np.errstate(over="ignore"):
        while done < count:
            m = min(_CHUNK, count - done)
            u = _uniforms(seed, 2 * (start + done), 2 * m)
            ui = u[0::2]
            uj = u[1::2]
            label = np.minimum(np.searchsorted(prior_cdf, ui, side="right"), n_states - 1)
            for i in range(n_states):
                sel = label == i
                if not sel.any():
                    continue
                out = np.minimum(np.searchsorted(row_cdf[i], uj[sel], side="right"), n_out - 1)
                errors += int(np.count_nonzero(out != i))
            done += m
    return errors

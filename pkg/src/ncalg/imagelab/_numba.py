"""numba-compiled twins of the kernels in _numpy.py."""
import numpy as np
from numba import njit


@njit(cache=True)
def eval_poly(var_vals, coeffs, word_ptr, word_vars, mul, add, scale, one):
    T = var_vals.shape[1]
    out = np.zeros(T, dtype=np.int32)
    for t in range(T):
        acc = 0
        for k in range(coeffs.shape[0]):
            a, b = word_ptr[k], word_ptr[k + 1]
            if a == b:
                cur = one
            else:
                cur = var_vals[word_vars[a], t]
                for q in range(a + 1, b):
                    cur = mul[cur, var_vals[word_vars[q], t]]
            acc = add[acc, scale[coeffs[k], cur]]
        out[t] = acc
    return out


@njit(cache=True)
def sweep_xor_images(word_vals):
    W, T = word_vals.shape
    n = 1 << W
    vals = np.zeros((n, T), dtype=np.uint8)
    out = np.zeros(n, dtype=np.uint64)
    one = np.uint64(1)
    for s in range(1, n):
        low = s & -s
        b = 0
        while (1 << b) != low:
            b += 1
        prev = s ^ low
        code = np.uint64(0)
        for t in range(T):
            v = vals[prev, t] ^ np.uint8(word_vals[b, t])
            vals[s, t] = v
            code |= one << np.uint64(v)
        out[s] = code
    # the zero polynomial takes only the value 0
    out[0] = one
    return out

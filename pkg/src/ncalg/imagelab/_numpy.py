"""Pure numpy kernels. Reference implementation for the numba versions."""
import numpy as np


def eval_poly(var_vals, coeffs, word_ptr, word_vars, mul, add, scale, one):
    """Value ID of a polynomial at every substitution tuple.

    var_vals[v, t] is the ID substituted for variable v in tuple t; term k has
    coefficient coeffs[k] and word word_vars[word_ptr[k]:word_ptr[k+1]].
    """
    T = var_vals.shape[1]
    out = np.zeros(T, dtype=np.int32)
    for k in range(coeffs.shape[0]):
        w = word_vars[word_ptr[k]:word_ptr[k + 1]]
        if w.size == 0:
            cur = np.full(T, one, dtype=np.int32)
        else:
            cur = var_vals[w[0]]
            for v in w[1:]:
                cur = mul[cur, var_vals[v]]
        out = add[out, scale[coeffs[k], cur]]
    return out


def sweep_xor_images(word_vals):
    """Image bitmask of every GF(2) combination of the given word-value rows.

    Row b of word_vals holds the IDs (< 64) taken by word b; polynomial
    number s sums the words whose bit is set in s. Over GF(2) with the base-2
    encoding, adding matrices is XOR of IDs.
    """
    W, T = word_vals.shape
    vals = np.zeros((1 << W, T), dtype=np.uint8)
    for b in range(W):
        h = 1 << b
        vals[h:2 * h] = vals[:h] ^ word_vals[b].astype(np.uint8)
    bits = np.left_shift(np.uint64(1), vals.astype(np.uint64))
    return np.bitwise_or.reduce(bits, axis=1)

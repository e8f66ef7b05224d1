"""Vectorized numpy implementations of the layer kernels.

This is the fallback backend used when the compiled extension is not
available.  Every function here has a matching signature in ``_fast.pyx``;
all arrays are float64 and carry a leading batch dimension.

Kernel conventions:
  dense      x[B, I]          w[I, O]         -> y[B, O]
  conv1d     x[B, L, C]       k[F, C, K]      -> y[B, Lout, F]   (cross-correlation)
  lstm       xs[B, T, I]      w[I+H, 4H]      -> hs[B, T, H]     (gate order i, f, g, o)
  gate_cell  xs[B, T, I]      w[I+H, 2H]      -> hs[B, T, H]     (gate order z, candidate)

The single-gate cell implements h_t = (1 - z_t) * h_{t-1} + z_t * tanh(...)
with z_t = sigmoid(...); both gates read the concatenation [h_{t-1}, x_t].
"""

import numpy as np


def sigmoid(x):
    """Branch-stable logistic function; never overflows for large |x|."""
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    ex = np.exp(-np.abs(x))
    out[pos] = 1.0 / (1.0 + ex[pos])
    out[~pos] = ex[~pos] / (1.0 + ex[~pos])
    return out


def dense_forward(x, w, b):
    return x @ w + b


def dense_backward(x, w, gy):
    gx = gy @ w.T
    gw = x.T @ gy
    gb = gy.sum(axis=0)
    return gx, gw, gb


def _pad(x, padding):
    if padding == 0:
        return x
    return np.pad(x, ((0, 0), (padding, padding), (0, 0)))


def conv1d_forward(x, kernels, bias, stride, padding):
    batch, in_len, _ = x.shape
    n_filters, _, kernel_len = kernels.shape
    out_len = (in_len + 2 * padding - kernel_len) // stride + 1
    xp = _pad(x, padding)
    # im2col: patches[b, i, k, c] = xp[b, i*stride + k, c]
    patches = np.stack(
        [xp[:, i * stride : i * stride + kernel_len, :] for i in range(out_len)],
        axis=1,
    )
    return np.einsum("bikc,fck->bif", patches, kernels) + bias


def conv1d_backward(x, kernels, stride, padding, gy):
    batch, in_len, in_ch = x.shape
    n_filters, _, kernel_len = kernels.shape
    out_len = gy.shape[1]
    xp = _pad(x, padding)
    patches = np.stack(
        [xp[:, i * stride : i * stride + kernel_len, :] for i in range(out_len)],
        axis=1,
    )  # [b, i, k, c]
    gk = np.einsum("bif,bikc->fck", gy, patches)
    gb = gy.sum(axis=(0, 1))
    gxp = np.zeros_like(xp)
    # scatter each output position's contribution back onto the padded input
    contrib = np.einsum("bif,fck->bikc", gy, kernels)
    for i in range(out_len):
        gxp[:, i * stride : i * stride + kernel_len, :] += contrib[:, i]
    if padding:
        gx = gxp[:, padding : padding + in_len, :]
    else:
        gx = gxp
    return gx, gk, gb


def lstm_forward(xs, w, b, h0, c0):
    batch, steps, _ = xs.shape
    hidden = h0.shape[1]
    hs = np.empty((batch, steps, hidden))
    cs = np.empty((batch, steps, hidden))
    gates = np.empty((batch, steps, 4 * hidden))
    h, c = h0, c0
    for t in range(steps):
        a = np.concatenate([h, xs[:, t, :]], axis=1) @ w + b
        i = sigmoid(a[:, :hidden])
        f = sigmoid(a[:, hidden : 2 * hidden])
        g = np.tanh(a[:, 2 * hidden : 3 * hidden])
        o = sigmoid(a[:, 3 * hidden :])
        c = f * c + i * g
        h = o * np.tanh(c)
        hs[:, t, :] = h
        cs[:, t, :] = c
        gates[:, t, :hidden] = i
        gates[:, t, hidden : 2 * hidden] = f
        gates[:, t, 2 * hidden : 3 * hidden] = g
        gates[:, t, 3 * hidden :] = o
    return hs, cs, gates


def lstm_backward(xs, w, h0, c0, hs, cs, gates, ghs):
    batch, steps, in_dim = xs.shape
    hidden = h0.shape[1]
    gxs = np.zeros_like(xs)
    gw = np.zeros_like(w)
    gb = np.zeros(4 * hidden)
    dh_next = np.zeros((batch, hidden))
    dc_next = np.zeros((batch, hidden))
    for t in range(steps - 1, -1, -1):
        i = gates[:, t, :hidden]
        f = gates[:, t, hidden : 2 * hidden]
        g = gates[:, t, 2 * hidden : 3 * hidden]
        o = gates[:, t, 3 * hidden :]
        c = cs[:, t, :]
        c_prev = cs[:, t - 1, :] if t > 0 else c0
        h_prev = hs[:, t - 1, :] if t > 0 else h0
        tc = np.tanh(c)
        dh = ghs[:, t, :] + dh_next
        dc = dc_next + dh * o * (1.0 - tc * tc)
        da = np.empty((batch, 4 * hidden))
        da[:, :hidden] = dc * g * i * (1.0 - i)
        da[:, hidden : 2 * hidden] = dc * c_prev * f * (1.0 - f)
        da[:, 2 * hidden : 3 * hidden] = dc * i * (1.0 - g * g)
        da[:, 3 * hidden :] = dh * tc * o * (1.0 - o)
        concat = np.concatenate([h_prev, xs[:, t, :]], axis=1)
        gw += concat.T @ da
        gb += da.sum(axis=0)
        dconcat = da @ w.T
        dh_next = dconcat[:, :hidden]
        gxs[:, t, :] = dconcat[:, hidden:]
        dc_next = dc * f
    return gxs, gw, gb


def gate_cell_forward(xs, w, b, h0):
    batch, steps, _ = xs.shape
    hidden = h0.shape[1]
    hs = np.empty((batch, steps, hidden))
    gates = np.empty((batch, steps, 2 * hidden))
    h = h0
    for t in range(steps):
        a = np.concatenate([h, xs[:, t, :]], axis=1) @ w + b
        z = sigmoid(a[:, :hidden])
        cand = np.tanh(a[:, hidden:])
        h = (1.0 - z) * h + z * cand
        hs[:, t, :] = h
        gates[:, t, :hidden] = z
        gates[:, t, hidden:] = cand
    return hs, gates


def gate_cell_backward(xs, w, h0, hs, gates, ghs):
    batch, steps, in_dim = xs.shape
    hidden = h0.shape[1]
    gxs = np.zeros_like(xs)
    gw = np.zeros_like(w)
    gb = np.zeros(2 * hidden)
    dh_next = np.zeros((batch, hidden))
    for t in range(steps - 1, -1, -1):
        z = gates[:, t, :hidden]
        cand = gates[:, t, hidden:]
        h_prev = hs[:, t - 1, :] if t > 0 else h0
        dh = ghs[:, t, :] + dh_next
        da = np.empty((batch, 2 * hidden))
        da[:, :hidden] = dh * (cand - h_prev) * z * (1.0 - z)
        da[:, hidden:] = dh * z * (1.0 - cand * cand)
        concat = np.concatenate([h_prev, xs[:, t, :]], axis=1)
        gw += concat.T @ da
        gb += da.sum(axis=0)
        dconcat = da @ w.T
        dh_next = dconcat[:, :hidden] + dh * (1.0 - z)
        gxs[:, t, :] = dconcat[:, hidden:]
    return gxs, gw, gb


def maxpool1d_forward(x, size, stride):
    batch, in_len, channels = x.shape
    out_len = (in_len - size) // stride + 1
    windows = np.stack(
        [x[:, i * stride : i * stride + size, :] for i in range(out_len)], axis=1
    )  # [b, i, k, c]
    arg = windows.argmax(axis=2)
    y = windows.max(axis=2)
    return y, arg


def maxpool1d_backward(x, size, stride, arg, gy):
    gx = np.zeros_like(x)
    batch, out_len, channels = gy.shape
    b_idx = np.arange(batch)[:, None]
    c_idx = np.arange(channels)[None, :]
    for i in range(out_len):
        gx[b_idx, i * stride + arg[:, i, :], c_idx] += gy[:, i, :]
    return gx

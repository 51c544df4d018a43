"""Benchmark the compiled kernels against the pure numpy fallback.

Run from the repo root after an editable install:

    python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from muontomo import DetectorConfig, DetectorPose, PyramidModel
from muontomo.kernels import pure
from muontomo.pose import pixel_world

try:
    from muontomo import _kernels as compiled
except ImportError:
    compiled = None


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_sinogram(backend):
    cfg = DetectorConfig()
    pose = DetectorPose((0.0, -140.165, 0.0))
    cols = np.arange(cfg.nx)
    front = np.ascontiguousarray(pixel_world(cfg, pose, cols, 0, "front")[:, :2])
    back = np.ascontiguousarray(pixel_world(cfg, pose, cols, 0, "back")[:, :2])
    # 22 poses of the two-axis scan plan worth of samples
    return timeit(lambda: [backend.sinogram_row(front, back) for _ in range(22)])


def bench_path_lengths(backend):
    pyr = PyramidModel()
    rng = np.random.default_rng(0)
    n = 230_400  # one full detector row of pixel pairs
    origins = np.column_stack(
        [rng.uniform(-150, 150, n), np.full(n, -140.165), rng.uniform(0, 4, n)]
    )
    d = np.column_stack(
        [rng.uniform(-0.9, 0.9, n), np.ones(n), np.zeros(n)]
    )
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return timeit(lambda: backend.path_lengths(origins, d, pyr.base_side, pyr.height))


def main():
    rows = []
    for name, fn in [
        ("sinogram_row x22 (5.07M samples)", bench_sinogram),
        ("path_lengths (230k rays)", bench_path_lengths),
    ]:
        pure_t = fn(pure)
        if compiled is not None:
            comp_t = fn(compiled)
            rows.append((name, pure_t, comp_t, pure_t / comp_t))
        else:
            rows.append((name, pure_t, None, None))

    print(f"{'kernel':40s} {'pure [s]':>10s} {'cython [s]':>10s} {'speedup':>8s}")
    for name, pure_t, comp_t, speedup in rows:
        if comp_t is None:
            print(f"{name:40s} {pure_t:10.4f} {'n/a':>10s} {'n/a':>8s}")
        else:
            print(f"{name:40s} {pure_t:10.4f} {comp_t:10.4f} {speedup:7.2f}x")


if __name__ == "__main__":
    main()

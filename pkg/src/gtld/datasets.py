"""Built-in reliability datasets used by the fitting and GOF examples.

Both lists are shipped verbatim from their published source.  Note that the
gauge-length data repeats the run 2.809, 2.818, 2.821, 2.848, 2.880 (values
55-59 and 58-62 of the published list) — almost certainly a transcription
artifact in the source, but every published fit statistic was computed from
the 74-value list as printed, so it is reproduced here unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Gauge lengths (20 mm) of carbon-fibre strength tests; n = 74.
_GAUGE = (
    1.312, 1.314, 1.479, 1.552, 1.700, 1.803, 1.861, 1.865, 1.944, 1.958,
    1.966, 1.997, 2.006, 2.021, 2.027, 2.055, 2.063, 2.098, 2.140, 2.179,
    2.224, 2.240, 2.253, 2.270, 2.272, 2.274, 2.301, 2.301, 2.359, 2.382,
    2.382, 2.426, 2.434, 2.435, 2.478, 2.490, 2.511, 2.514, 2.535, 2.554,
    2.566, 2.570, 2.586, 2.629, 2.633, 2.642, 2.648, 2.684, 2.697, 2.726,
    2.770, 2.773, 2.800, 2.809, 2.818, 2.821, 2.848, 2.880, 2.809, 2.818,
    2.821, 2.848, 2.880, 2.954, 3.012, 3.067, 3.084, 3.090, 3.096, 3.128,
    3.233, 3.433, 3.585, 3.585,
)

# Failure times (weeks) of 50 devices put on life test at time zero.
_FAILURE = (
    0.013, 0.065, 0.111, 0.111, 0.163, 0.309, 0.426, 0.535, 0.684, 0.747,
    0.997, 1.284, 1.304, 1.647, 1.829, 2.336, 2.838, 3.269, 3.977, 3.981,
    4.520, 4.789, 4.849, 5.202, 5.291, 5.349, 5.911, 6.018, 6.427, 6.456,
    6.572, 7.023, 7.087, 7.291, 7.787, 8.596, 9.388, 10.261, 10.713, 11.658,
    13.006, 13.388, 13.842, 17.152, 17.283, 19.418, 23.471, 24.777, 32.795,
    48.105,
)


@dataclass(frozen=True)
class Dataset:
    name: str
    values: tuple
    source: str

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


DATASETS = {
    "gauge": Dataset(
        name="gauge",
        values=_GAUGE,
        source=(
            "Strength of single carbon fibres at 20 mm gauge length, n=74; "
            "shipped verbatim, including the repeated 2.809...2.880 run."
        ),
    ),
    "failure": Dataset(
        name="failure",
        values=_FAILURE,
        source="Failure times in weeks of 50 devices on life test, n=50.",
    ),
}


def get_dataset(name: str) -> Dataset:
    try:
        return DATASETS[name]
    except KeyError:
        raise KeyError(
            f"unknown dataset {name!r}; built-ins are {sorted(DATASETS)}"
        ) from None


def load_values(source: str) -> np.ndarray:
    """Resolve a built-in dataset name or a file path to a float array.

    Files may be one-value-per-line text ('#' starts a comment) or a
    single-column CSV with a header row.
    """
    if source in DATASETS:
        return DATASETS[source].as_array()
    values = []
    with open(source, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip().rstrip(",")
            if not line:
                continue
            token = line.split(",")[0].strip()
            try:
                values.append(float(token))
            except ValueError:
                if lineno == 1:  # single-column CSV header
                    continue
                raise ValueError(f"{source}:{lineno}: cannot parse {token!r}")
    if not values:
        raise ValueError(f"{source}: no numeric values found")
    return np.asarray(values, dtype=float)

"""Reproduction presets: named multi-series experiments with plot output."""

import os

from .channels import FULL, SUB
from .errors import UnknownFigure
from .feedback import CORR, RVQ
from .runner import (
    DIGITAL,
    MMWAVE,
    ChannelSpec,
    ResultRow,
    ScenarioConfig,
    Sweep,
    rows_to_csv,
    run_scenario,
)

SNR_WIDE = tuple(range(-10, 31, 5))
SNR_MAIN = tuple(range(0, 26, 5))
M_SWEEP = (32, 64, 128, 256)
# divisors of 120 so the sub-connected constraint holds along the user sweep
K_SWEEP = (2, 3, 4, 5, 6, 8, 10, 12)

MMWAVE_SPEC = ChannelSpec(MMWAVE, 10, 0.5)


def _variants(name, trials, seed, base, series):
    out = []
    for overrides in series:
        out.append(
            ScenarioConfig(
                scenario_id=name,
                trials=trials,
                master_seed=seed,
                **{**base, **overrides},
            )
        )
    return out


def _fig2(name, trials, seed):
    base = dict(m=64, k=4, snr_db=SNR_WIDE, codebook="perfect", precoder="zf")
    return _variants(
        name,
        trials,
        seed,
        base,
        [
            dict(structure=SUB, b1=3),
            dict(structure=FULL, b1=3),
            dict(structure=DIGITAL),
        ],
    )


def _fig3(name, trials, seed):
    base = dict(m=64, k=4, b1=3, b2=10, snr_db=SNR_WIDE, codebook=CORR)
    return _variants(
        name,
        trials,
        seed,
        base,
        [
            dict(structure=st, precoder=pc)
            for st in (SUB, FULL)
            for pc in ("zf", "mrt")
        ],
    )


def _fig4(name, trials, seed):
    base = dict(
        m=120,
        k=K_SWEEP[0],
        b1=3,
        snr_db=(20.0,),
        codebook="perfect",
        precoder="zf",
        sweep=Sweep("k", K_SWEEP),
    )
    return _variants(name, trials, seed, base, [dict(structure=SUB), dict(structure=FULL)])


def _fig5(name, trials, seed):
    base = dict(m=64, k=8, b1=3, b2=6, snr_db=SNR_MAIN, codebook=CORR, precoder="zf")
    return _variants(name, trials, seed, base, [dict(structure=SUB), dict(structure=FULL)])


def _fig6(name, trials, seed):
    base = dict(
        m=M_SWEEP[0],
        k=8,
        b1=3,
        snr_db=(25.0,),
        precoder="zf",
        sweep=Sweep("m", M_SWEEP),
    )
    return _variants(
        name,
        trials,
        seed,
        base,
        [
            dict(structure=st, codebook=cb, b2=b2)
            for st in (SUB, FULL)
            for cb in (CORR, RVQ)
            for b2 in (5, 10)
        ],
    )


def _fig7(name, trials, seed):
    base = dict(
        m=64, k=8, b1=3, b2=10, snr_db=SNR_MAIN, precoder="zf", channel=MMWAVE_SPEC
    )
    return _variants(
        name,
        trials,
        seed,
        base,
        [dict(structure=st, codebook=cb) for st in (SUB, FULL) for cb in (CORR, RVQ)],
    )


def _fig8(name, trials, seed):
    base = dict(
        m=M_SWEEP[0],
        k=8,
        b1=3,
        snr_db=(10.0, 25.0),
        codebook=CORR,
        precoder="zf",
        channel=MMWAVE_SPEC,
        sweep=Sweep("m", M_SWEEP),
    )
    return _variants(
        name,
        trials,
        seed,
        base,
        [dict(structure=st, b2=b2) for st in (SUB, FULL) for b2 in (5, 10)],
    )


PRESETS = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
    "fig8": _fig8,
}

DEFAULT_TRIALS = 2000


def figure_scenarios(name, trials=DEFAULT_TRIALS, seed=0):
    if name not in PRESETS:
        raise UnknownFigure(f"unknown figure {name!r}; known: {sorted(PRESETS)}")
    return PRESETS[name](name, trials, seed)


def reproduce_figure(name, trials=DEFAULT_TRIALS, seed=0, workers=1) -> list[ResultRow]:
    """Run every series of the named preset and concatenate the rows."""
    rows = []
    for sc in figure_scenarios(name, trials, seed):
        rows.extend(run_scenario(sc, workers))
    return rows


def _series_key(row: ResultRow):
    return (row.structure, row.codebook, row.precoder, row.b1, row.b2, row.channel)


def _series_slug(key):
    structure, codebook, precoder, b1, b2, channel = key
    parts = [structure, codebook, precoder]
    parts.append("b1ideal" if b1 is None else f"b1{b1}")
    if b2 is not None:
        parts.append(f"b2{b2}")
    if channel != "rayleigh":
        parts.append(channel)
    return "-".join(parts)


def _x_column(name):
    return {"fig4": "k", "fig6": "m", "fig8": "m"}.get(name, "snr_db")


def write_figure_outputs(name, rows, out_dir) -> list[str]:
    """Emit <name>.csv, per-series .dat files, and a gnuplot script."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    csv_path = os.path.join(out_dir, f"{name}.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))
    written.append(csv_path)

    xcol = _x_column(name)
    series = {}
    for row in rows:
        series.setdefault(_series_key(row), []).append(row)
    dat_files = []
    for key in sorted(series, key=str):
        slug = _series_slug(key)
        dat_path = os.path.join(out_dir, f"{name}__{slug}.dat")
        with open(dat_path, "w", encoding="utf-8") as fh:
            fh.write(f"# {xcol} mean_sum_rate stderr_sum_rate theory_net_or_rate\n")
            for row in series[key]:
                x = getattr(row, xcol)
                theory = row.theory_net_rate
                if theory is None:
                    theory = row.theory_rate
                overlay = "nan" if theory is None else f"{theory * row.k:.9g}"
                fh.write(
                    f"{x:.9g} {row.mean_sum_rate:.9g} {row.stderr_sum_rate:.9g} {overlay}\n"
                )
        dat_files.append((slug, dat_path))
        written.append(dat_path)

    gp_path = os.path.join(out_dir, f"{name}.gnuplot")
    with open(gp_path, "w", encoding="utf-8") as fh:
        fh.write(f'set title "{name}"\n')
        fh.write(f'set xlabel "{xcol}"\n')
        fh.write('set ylabel "sum spectral efficiency (bits/s/Hz)"\n')
        fh.write("set key outside\n")
        plots = [
            f'"{os.path.basename(path)}" using 1:2:3 with yerrorlines title "{slug}"'
            for slug, path in dat_files
        ]
        fh.write("plot \\\n    " + ", \\\n    ".join(plots) + "\n")
    written.append(gp_path)
    return written

"""Parameter sweeps against the asymptotic reference curves, as tables.

Every sweep returns a SweepTable whose rows carry the computed quantity,
the reference it is compared with, and their ratio. Tables render to CSV
or JSON with identical 17-significant-digit numbers.
"""
import csv
import io
import json
import math
import re
from dataclasses import dataclass, field

from . import __version__, kernels
from .graph import TorusSpec, build_torus
from .hydro import DEFAULT_TARGET_ERROR, hydro_integral
from .resistance import average_resistance, max_resistance
from .spectral import average_resistance_spectral, max_resistance_spectral


def fmt_number(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        return format(x, ".17g") if math.isfinite(x) else None
    return x


def ratio(computed, reference):
    if reference is None or reference == 0:
        return None
    return computed / reference


@dataclass
class SweepTable:
    columns: list
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, **row):
        unknown = set(row) - set(self.columns)
        if unknown:
            raise KeyError(f"unknown columns {sorted(unknown)}")
        self.rows.append({c: row.get(c) for c in self.columns})

    def column(self, name):
        return [r[name] for r in self.rows]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow(["" if row[c] is None else _csv_cell(row[c]) for c in self.columns])
        return buf.getvalue()

    def to_json(self):
        return dumps_17g({"metadata": self.metadata, "columns": self.columns, "rows": self.rows})

    def render(self, fmt):
        return self.to_json() + "\n" if fmt == "json" else self.to_csv()


def _csv_cell(value):
    out = fmt_number(value)
    return "" if out is None else str(out)


_FLOAT_TAG = "\x00f:"


def _tag_floats(obj):
    if isinstance(obj, float):
        out = fmt_number(obj)
        return None if out is None else _FLOAT_TAG + out
    if isinstance(obj, dict):
        return {k: _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_tag_floats(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _tag_floats(obj.item())
    return obj


def dumps_17g(obj, indent=2):
    """json.dumps with every float written as a bare 17-significant-digit literal."""
    text = json.dumps(_tag_floats(obj), indent=indent)
    return re.sub(r'"\\u0000f:([^"]*)"', r"\1", text)


def _metadata(command, **params):
    return {
        "command": command,
        "params": params,
        "version": __version__,
        "backend": kernels.BACKEND,
        "summation": kernels.summation_method(),
    }


def sweep_1d(M_list, backend=None):
    """Cycle average resistance against M/12."""
    table = SweepTable(["M", "N", "computed", "reference", "ratio", "closed_form"],
                       metadata=_metadata("sweep-1d", M_list=list(M_list), method="spectral",
                                          reference="M/12"))
    for M in M_list:
        val = average_resistance_spectral(TorusSpec(M, 1), backend=backend)
        ref = M / 12.0
        table.add(M=M, N=M, computed=val, reference=ref, ratio=ratio(val, ref),
                  closed_form=(M * M - 1) / (12.0 * M))
    return table


def sweep_2d(M_list, backend=None, max_terms=None):
    """Square-torus average resistance against log(M) / (2 pi)."""
    table = SweepTable(["M", "N", "computed", "reference", "ratio"],
                       metadata=_metadata("sweep-2d", M_list=list(M_list), method="spectral",
                                          reference="log(M)/(2*pi)"))
    for M in M_list:
        spec = TorusSpec(M, 2)
        kw = {"max_terms": max_terms} if max_terms else {}
        val = average_resistance_spectral(spec, backend=backend, **kw)
        ref = math.log(M) / (2.0 * math.pi)
        table.add(M=M, N=spec.N, computed=val, reference=ref, ratio=ratio(val, ref))
    return table


def sweep_d(d_list, M, target_error=DEFAULT_TARGET_ERROR, backend=None, max_terms=None):
    """Average resistance across dimensions with the 1/(4d), 8/(d+1) and R_hydro(d) references."""
    table = SweepTable(["d", "M", "N", "computed", "lower_1_over_4d", "upper_8_over_d_plus_1",
                        "reference", "ratio", "d_times_computed"],
                       metadata=_metadata("sweep-d", d_list=list(d_list), M=M, method="spectral",
                                          reference="hydro_integral(d), laplace-1d",
                                          target_error=target_error))
    for d in d_list:
        spec = TorusSpec(M, d)
        kw = {"max_terms": max_terms} if max_terms else {}
        val = average_resistance_spectral(spec, backend=backend, **kw)
        ref = hydro_integral(d, "laplace-1d", target_error).value if d >= 3 else None
        table.add(d=d, M=M, N=spec.N, computed=val, lower_1_over_4d=1.0 / (4 * d),
                  upper_8_over_d_plus_1=8.0 / (d + 1), reference=ref, ratio=ratio(val, ref),
                  d_times_computed=d * val)
    return table


def rmax_sweep(d_list, M, method="spectral", threads=1, backend=None, max_vertices=None):
    """Maximum resistance across dimensions; reference 1/d so ratio = d * R_max."""
    table = SweepTable(["d", "M", "N", "computed", "argmax", "reference", "ratio"],
                       metadata=_metadata("rmax", d_list=list(d_list), M=M, method=method,
                                          threads=threads, reference="1/d"))
    for d in d_list:
        spec = TorusSpec(M, d)
        if method == "spectral":
            kw = {"max_vertices": max_vertices} if max_vertices else {}
            val, delta = max_resistance_spectral(spec, threads=threads, backend=backend, **kw)
            where = " ".join(map(str, delta))
        else:
            val, pair = max_resistance(build_torus(spec))
            where = f"{pair[0]} {pair[1]}"
        table.add(d=d, M=M, N=spec.N, computed=val, argmax=where, reference=1.0 / d,
                  ratio=ratio(val, 1.0 / d))
    return table


def rave_table(graph, source, method, spec=None, backend=None, max_terms=None):
    table = SweepTable(["graph", "N", "method", "computed"],
                       metadata=_metadata("rave", graph=source, method=method))
    if method == "spectral":
        kw = {"max_terms": max_terms} if max_terms else {}
        val = average_resistance_spectral(spec, backend=backend, **kw)
        n = spec.N
    else:
        val = average_resistance(graph)
        n = graph.num_vertices
    table.add(graph=source, N=n, method=method, computed=val)
    return table
